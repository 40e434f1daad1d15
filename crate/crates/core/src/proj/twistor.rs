//! Twistor structures: fixed-point-free antiholomorphic involutions of CP³.

use nalgebra::Matrix4;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::line::{line_equal, line_from_points, ProjLine};
use super::point::ProjPoint;
use super::transform::{matrix_projective_distance, ProjTransform};
use crate::error::{Error, Result};
use crate::linalg::{C64, ONE};

/// Matrices that agree projectively up to this chordal distance are equal.
pub const STRUCTURE_EQ_TOL: f64 = 1e-9;

/// A twistor structure `𝕛`, stored as the matrix `J` of its antilinear lift
/// `z ↦ J·conj(z)`.
///
/// `J·conj(J) = −c·I` with `c > 0`. The sign of `c` is what rules out fixed
/// points: `J conj(z) = λz` would force `−c = |λ|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistorStructure {
    matrix: Matrix4<C64>,
}

fn conj(m: &Matrix4<C64>) -> Matrix4<C64> {
    m.map(|z| z.conj())
}

impl TwistorStructure {
    pub fn new(matrix: Matrix4<C64>) -> Result<Self> {
        let sq = matrix * conj(&matrix);
        let scale = matrix.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
        if scale == 0.0 {
            return Err(Error::InvalidInput("zero twistor matrix".into()));
        }
        let c = -sq[(0, 0)];
        let off = (sq + Matrix4::identity() * c).norm();
        if off > 1e-9 * scale || c.im.abs() > 1e-9 * scale || c.re <= 1e-9 * scale {
            return Err(Error::InvalidInput(
                "matrix does not lift a fixed-point-free antiholomorphic involution".into(),
            ));
        }
        Ok(TwistorStructure { matrix })
    }

    /// `[z1, z2, z3, z4] ↦ [−z̄2, z̄1, −z̄4, z̄3]`.
    pub fn standard() -> Self {
        let mut m = Matrix4::<C64>::zeros();
        m[(0, 1)] = -ONE;
        m[(1, 0)] = ONE;
        m[(2, 3)] = -ONE;
        m[(3, 2)] = ONE;
        TwistorStructure { matrix: m }
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    /// The scalar `c` in `J·conj(J) = −c·I`.
    pub fn involution_scalar(&self) -> C64 {
        -(self.matrix * conj(&self.matrix))[(0, 0)]
    }

    /// Projective equality of the two involutions.
    pub fn same_as(&self, other: &TwistorStructure) -> bool {
        matrix_projective_distance(&self.matrix, &other.matrix) < STRUCTURE_EQ_TOL
    }
}

pub fn apply_j(j: &TwistorStructure, p: &ProjPoint) -> ProjPoint {
    let v = j.matrix * p.to_vector().map(|z| z.conj());
    ProjPoint::from_vector(&v).expect("J is invertible")
}

pub fn apply_j_line(j: &TwistorStructure, l: &ProjLine) -> ProjLine {
    let [a, b] = l.span();
    line_from_points(&apply_j(j, a), &apply_j(j, b)).expect("antiholomorphic bijection")
}

/// The fibre of the twistor fibration through `p`: the line joining `p` and `𝕛(p)`.
pub fn twistor_fibre_through(j: &TwistorStructure, p: &ProjPoint) -> ProjLine {
    line_from_points(p, &apply_j(j, p)).expect("twistor structures have no fixed points")
}

pub fn is_twistor_fibre(j: &TwistorStructure, l: &ProjLine) -> bool {
    line_equal(&apply_j_line(j, l), l)
}

/// `T ∘ 𝕛 ∘ T⁻¹`, whose lift is `T·J·conj(T)⁻¹`.
pub fn conjugate_structure(t: &ProjTransform, j: &TwistorStructure) -> TwistorStructure {
    let tm = t.matrix();
    let inv = conj(tm).try_inverse().expect("invertible transform");
    TwistorStructure { matrix: tm * j.matrix * inv }
}

/// Whether `T` preserves `𝕛`, i.e. is a conformal transformation of S⁴.
pub fn is_conformal(t: &ProjTransform, j: &TwistorStructure) -> bool {
    conjugate_structure(t, j).same_as(j)
}

impl Serialize for TwistorStructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: [[C64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|k| self.matrix[(i, k)]));
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistorStructure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[C64; 4]; 4]>::deserialize(d)?;
        TwistorStructure::new(Matrix4::from_fn(|i, k| rows[i][k])).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proj::point::point_equal;

    fn e(i: usize) -> ProjPoint {
        let mut x = [0.0; 4];
        x[i] = 1.0;
        ProjPoint::real(x)
    }

    #[test]
    fn standard_structure_on_basis_points() {
        let j = TwistorStructure::standard();
        assert!(point_equal(&apply_j(&j, &e(0)), &e(1)));
        assert!(point_equal(&apply_j(&j, &e(2)), &e(3)));
        let p = ProjPoint::new([ONE, C64::new(2.0, 0.0), C64::new(3.0, 0.0), C64::new(0.0, 4.0)]).unwrap();
        assert!(point_equal(&apply_j(&j, &apply_j(&j, &p)), &p));
        assert!(TwistorStructure::new(*j.matrix()).is_ok());
    }

    #[test]
    fn fibres_of_standard_structure() {
        let j = TwistorStructure::standard();
        let f = twistor_fibre_through(&j, &e(0));
        assert!(line_equal(&f, &line_from_points(&e(0), &e(1)).unwrap()));
        let g = twistor_fibre_through(&j, &e(2));
        assert!(line_equal(&g, &line_from_points(&e(2), &e(3)).unwrap()));
        assert!(is_twistor_fibre(&j, &f));
        let l13 = line_from_points(&e(1), &e(3)).unwrap();
        assert!(!is_twistor_fibre(&j, &l13));
        assert!(line_equal(&apply_j_line(&j, &l13), &line_from_points(&e(0), &e(2)).unwrap()));
    }

    #[test]
    fn conformality_of_phi() {
        let j = TwistorStructure::standard();
        let two = C64::new(2.0, 0.0);
        assert!(is_conformal(&ProjTransform::phi(two, two).unwrap(), &j));
        assert!(!is_conformal(&ProjTransform::phi(two, ONE).unwrap(), &j));
        assert!(is_conformal(&ProjTransform::phi(C64::from_polar(1.0, 0.3), ONE).unwrap(), &j));
        assert!(is_conformal(&ProjTransform::swap_pairs(), &j));
        assert!(conjugate_structure(&ProjTransform::identity(), &j).same_as(&j));
    }

    #[test]
    fn real_structure_rejected() {
        // Complex conjugation has fixed points: J conj(J) = +I.
        assert!(TwistorStructure::new(Matrix4::identity()).is_err());
    }
}
