//! The extended complex plane (Riemann sphere) and cross ratios in
//! homogeneous form.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{C64, ONE, ZERO};

/// Threshold on the chordal separation of homogeneous pairs below which two
/// points of the sphere count as equal.
pub const DISTINCT_TOL: f64 = 1e-9;

/// A point of `C ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(C64),
    Infinity,
}

impl ExtComplex {
    pub fn real(x: f64) -> Self {
        ExtComplex::Finite(C64::new(x, 0.0))
    }

    pub fn new(re: f64, im: f64) -> Self {
        ExtComplex::Finite(C64::new(re, im))
    }

    /// Homogeneous representative `(λ : μ)` with `t = λ/μ`, unit-normalized.
    pub fn homogeneous(&self) -> (C64, C64) {
        match *self {
            ExtComplex::Infinity => (ONE, ZERO),
            ExtComplex::Finite(z) => {
                let n = (z.norm_sqr() + 1.0).sqrt();
                (z / n, C64::new(1.0 / n, 0.0))
            }
        }
    }

    /// Inverse of [`homogeneous`](Self::homogeneous). `μ = 0` (relative to
    /// `λ`) maps to infinity.
    pub fn from_homogeneous(l: C64, m: C64) -> Self {
        if m.norm() <= 1e-300 || m.norm() < 1e-15 * l.norm() {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(l / m)
        }
    }

    pub fn conj(&self) -> Self {
        match *self {
            ExtComplex::Finite(z) => ExtComplex::Finite(z.conj()),
            ExtComplex::Infinity => ExtComplex::Infinity,
        }
    }

    pub fn finite(&self) -> Option<C64> {
        match *self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    /// Chordal distance on the Riemann sphere (half the Euclidean distance on
    /// the unit sphere); lies in `[0, 1]`.
    pub fn chordal_distance(&self, other: &ExtComplex) -> f64 {
        let (l1, m1) = self.homogeneous();
        let (l2, m2) = other.homogeneous();
        (l1 * m2 - l2 * m1).norm()
    }
}

impl From<C64> for ExtComplex {
    fn from(z: C64) -> Self {
        ExtComplex::Finite(z)
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtComplex::Infinity => write!(f, "∞"),
            ExtComplex::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl Serialize for ExtComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtComplex::Infinity => s.serialize_str("inf"),
            ExtComplex::Finite(z) => [z.re, z.im].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for ExtComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Pair([f64; 2]),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Pair([re, im]) => Ok(ExtComplex::new(re, im)),
            Raw::Word(w) if w == "inf" || w == "∞" => Ok(ExtComplex::Infinity),
            Raw::Word(w) => Err(serde::de::Error::custom(format!("expected [re, im] or \"inf\", got {w:?}"))),
        }
    }
}

/// `λ_i μ_j − λ_j μ_i` for unit-normalized homogeneous pairs.
fn bracket(p: (C64, C64), q: (C64, C64)) -> C64 {
    p.0 * q.1 - q.0 * p.1
}

fn unit(p: (C64, C64)) -> Result<(C64, C64)> {
    let n = (p.0.norm_sqr() + p.1.norm_sqr()).sqrt();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::DegenerateTuple);
    }
    Ok((p.0 / n, p.1 / n))
}

/// Cross ratio of four points of `CP^1` given homogeneously.
///
/// With `t_i = λ_i/μ_i` the value is `((t1−t3)(t2−t4)) / ((t1−t4)(t2−t3))`,
/// so that `(∞, 0; 1, α) = α`. Pairwise-distinct inputs always give a finite
/// value different from 0 and 1.
pub fn cross_ratio_homogeneous(pts: [(C64, C64); 4]) -> Result<C64> {
    let u = [unit(pts[0])?, unit(pts[1])?, unit(pts[2])?, unit(pts[3])?];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if bracket(u[i], u[j]).norm() < DISTINCT_TOL {
                return Err(Error::DegenerateTuple);
            }
        }
    }
    let num = bracket(u[0], u[2]) * bracket(u[1], u[3]);
    let den = bracket(u[0], u[3]) * bracket(u[1], u[2]);
    Ok(num / den)
}

/// Cross ratio of four points of the Riemann sphere.
pub fn cross_ratio(t: [ExtComplex; 4]) -> Result<C64> {
    cross_ratio_homogeneous([t[0].homogeneous(), t[1].homogeneous(), t[2].homogeneous(), t[3].homogeneous()])
}

/// Sine of the argument of the cross ratio. Zero exactly when the four points
/// lie on a common generalized circle.
pub fn cross_ratio_arg_sine(t: [ExtComplex; 4]) -> Result<f64> {
    let cr = cross_ratio(t)?;
    Ok(cr.im / cr.norm())
}

/// Möbius transformation sending `p0, p1, p2` to `0, 1, ∞` respectively.
#[derive(Debug, Clone, Copy)]
pub struct Mobius {
    /// Matrix `[[a, b], [c, d]]` acting on homogeneous pairs.
    pub m: [[C64; 2]; 2],
}

impl Mobius {
    pub fn normalizing(p0: ExtComplex, p1: ExtComplex, p2: ExtComplex) -> Result<Self> {
        let (h0, h1, h2) = (unit(p0.homogeneous())?, unit(p1.homogeneous())?, unit(p2.homogeneous())?);
        if bracket(h0, h1).norm() < DISTINCT_TOL
            || bracket(h0, h2).norm() < DISTINCT_TOL
            || bracket(h1, h2).norm() < DISTINCT_TOL
        {
            return Err(Error::CoincidentPoints);
        }
        // Row functionals: f(x) = [x, p0] vanishes at p0, g(x) = [x, p2] at p2.
        // z ↦ (f(z)·g(p1)) : (g(z)·f(p1)) sends p1 to 1.
        let g1 = bracket(h1, h2);
        let f1 = bracket(h1, h0);
        let m = [[h0.1 * g1, -h0.0 * g1], [h2.1 * f1, -h2.0 * f1]];
        Ok(Mobius { m })
    }

    pub fn apply_homogeneous(&self, p: (C64, C64)) -> (C64, C64) {
        (self.m[0][0] * p.0 + self.m[0][1] * p.1, self.m[1][0] * p.0 + self.m[1][1] * p.1)
    }

    pub fn apply(&self, t: ExtComplex) -> ExtComplex {
        let (l, m) = self.apply_homogeneous(t.homogeneous());
        ExtComplex::from_homogeneous(l, m)
    }
}
