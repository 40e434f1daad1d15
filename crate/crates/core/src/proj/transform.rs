use nalgebra::Matrix4;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::line::{line_from_points, ProjLine};
use super::point::ProjPoint;
use crate::error::{Error, Result};
use crate::linalg::{C64, ONE};

/// An invertible projective transformation of CP³, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjTransform {
    matrix: Matrix4<C64>,
}

impl ProjTransform {
    pub fn new(matrix: Matrix4<C64>) -> Result<Self> {
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 || matrix.determinant().norm() < 1e-12 * scale.powi(4) {
            return Err(Error::SingularTransform);
        }
        Ok(ProjTransform { matrix })
    }

    pub fn identity() -> Self {
        ProjTransform { matrix: Matrix4::identity() }
    }

    /// `φ(u, v): [z1, z2, z3, z4] ↦ [u z1, v z2, u z3, v z4]`.
    pub fn phi(u: C64, v: C64) -> Result<Self> {
        Self::new(Matrix4::from_diagonal(&nalgebra::Vector4::new(u, v, u, v)))
    }

    pub fn diagonal(d: [C64; 4]) -> Result<Self> {
        Self::new(Matrix4::from_diagonal(&nalgebra::Vector4::from_column_slice(&d)))
    }

    /// Sends coordinate `i` to position `perm[i]`: `(Tz)_{perm[i]} = z_i`.
    pub fn permutation(perm: [usize; 4]) -> Result<Self> {
        let mut m = Matrix4::<C64>::zeros();
        for (i, &p) in perm.iter().enumerate() {
            m[(p, i)] = ONE;
        }
        Self::new(m)
    }

    /// The involution `z1 ↔ z2, z3 ↔ z4`.
    pub fn swap_pairs() -> Self {
        Self::permutation([1, 0, 3, 2]).expect("permutation matrix")
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    pub fn inverse(&self) -> Self {
        ProjTransform { matrix: self.matrix.try_inverse().expect("validated invertible") }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjTransform) -> Self {
        ProjTransform { matrix: self.matrix * other.matrix }
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::from_vector(&(self.matrix * p.to_vector())).expect("invertible map")
    }

    pub fn apply_line(&self, l: &ProjLine) -> ProjLine {
        let [a, b] = l.span();
        line_from_points(&self.apply(a), &self.apply(b)).expect("invertible map keeps points distinct")
    }
}

/// Frobenius chordal distance between matrices viewed projectively.
pub(crate) fn matrix_projective_distance(a: &Matrix4<C64>, b: &Matrix4<C64>) -> f64 {
    crate::linalg::chordal_distance(a.as_slice(), b.as_slice())
}

impl Serialize for ProjTransform {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: [[C64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| self.matrix[(i, j)]));
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjTransform {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[C64; 4]; 4]>::deserialize(d)?;
        ProjTransform::new(Matrix4::from_fn(|i, j| rows[i][j])).map_err(serde::de::Error::custom)
    }
}
