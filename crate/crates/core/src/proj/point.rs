use nalgebra::Vector4;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{normalized, C64};

/// Tolerance on the 2×2 minors of two unit-normalized representatives.
pub const POINT_EQ_TOL: f64 = 1e-9;

/// A point of complex projective 3-space, stored as a unit-norm representative
/// of its homogeneous coordinates `[z1, z2, z3, z4]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint {
    coords: [C64; 4],
}

impl ProjPoint {
    pub fn new(coords: [C64; 4]) -> Result<Self> {
        normalized(&coords)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| Error::InvalidInput("zero or non-finite homogeneous coordinates".into()))
    }

    /// Convenience constructor from real coordinates; panics on the zero vector.
    pub fn real(x: [f64; 4]) -> Self {
        Self::new(x.map(|r| C64::new(r, 0.0))).expect("nonzero coordinates")
    }

    pub fn from_vector(v: &Vector4<C64>) -> Result<Self> {
        Self::new([v[0], v[1], v[2], v[3]])
    }

    pub fn coords(&self) -> &[C64; 4] {
        &self.coords
    }

    pub fn to_vector(&self) -> Vector4<C64> {
        Vector4::from_column_slice(&self.coords)
    }

    /// Largest 2×2 minor of the stacked unit representatives. Zero iff equal.
    pub fn separation(&self, other: &ProjPoint) -> f64 {
        let (p, q) = (&self.coords, &other.coords);
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in (i + 1)..4 {
                worst = worst.max((p[i] * q[j] - p[j] * q[i]).norm());
            }
        }
        worst
    }
}

/// Projective equality up to [`POINT_EQ_TOL`].
pub fn point_equal(p: &ProjPoint, q: &ProjPoint) -> bool {
    p.separation(q) < POINT_EQ_TOL
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = <[C64; 4]>::deserialize(d)?;
        ProjPoint::new(coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_up_to_scale() {
        assert!(point_equal(&ProjPoint::real([1.0, 0.0, 0.0, 0.0]), &ProjPoint::real([2.0, 0.0, 0.0, 0.0])));
        assert!(!point_equal(&ProjPoint::real([1.0, 0.0, 0.0, 0.0]), &ProjPoint::real([0.0, 1.0, 0.0, 0.0])));
        let i = C64::i();
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let p = ProjPoint::new([one, i, z, z]).unwrap();
        let q = ProjPoint::new([i, -one, z, z]).unwrap();
        assert!(point_equal(&p, &q));
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(ProjPoint::new([C64::new(0.0, 0.0); 4]).is_err());
    }

    #[test]
    fn json_is_array_of_pairs() {
        let p = ProjPoint::real([1.0, 0.0, 0.0, 0.0]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]");
    }
}
