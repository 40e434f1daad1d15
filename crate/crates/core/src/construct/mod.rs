//! Cubic surfaces through seven lines built from five points on a 2-sphere.
//!
//! Five points `t₁..t₅` of the Riemann sphere give five fibres of the
//! standard twistor fibration, each joining `[0, t, 0, 1]` on
//! `b₅ = {z₁ = z₃ = 0}` to `[t̄, 0, 1, 0]` on `b₆ = {z₂ = z₄ = 0}`. Input order
//! is `(a₁, a₂, c₅₆, a₃, a₄)`; a Möbius transformation lifted to CP³ moves the
//! first three to `0, 1, ∞` while preserving the twistor structure.

mod circle;
mod pencil;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};
use crate::proj::sphere::DISTINCT_TOL;
use crate::proj::{
    cross_ratio, intersection_point, line_equal, line_from_points, lines_meet, twistor_fibre_through, ExtComplex,
    Mobius, ProjLine, ProjPoint, ProjTransform, TwistorStructure,
};
use crate::sampling::complex_gaussian;

pub use circle::{
    admissibility, admissible, concircular, pascal_determinant, six_points_general_position, Admissibility,
    CONCIRCULAR_TOL, MARGINAL_TOL,
};
pub use pencil::{
    pencil_explicit, pencil_nullspace, xi_invariant, xi_invariant_literal, Pencil, C1_MONOMIALS, C2_MONOMIALS,
};

/// Five distinct points of the Riemann sphere, in the order `a₁, a₂, c₅₆, a₃, a₄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FivePointConfig {
    pub points: [ExtComplex; 5],
}

impl FivePointConfig {
    pub fn new(points: [ExtComplex; 5]) -> Result<Self> {
        for i in 0..5 {
            for j in (i + 1)..5 {
                if points[i].chordal_distance(&points[j]) < DISTINCT_TOL {
                    return Err(Error::CoincidentPoints);
                }
            }
        }
        Ok(FivePointConfig { points })
    }

    /// The configuration `(0, 1, ∞, α, β)`.
    pub fn normalized_from(alpha: C64, beta: C64) -> Result<Self> {
        Self::new([
            ExtComplex::real(0.0),
            ExtComplex::real(1.0),
            ExtComplex::Infinity,
            ExtComplex::Finite(alpha),
            ExtComplex::Finite(beta),
        ])
    }

    /// Möbius transformation sending the first three points to `0, 1, ∞`.
    pub fn normalizing_mobius(&self) -> Result<Mobius> {
        Mobius::normalizing(self.points[0], self.points[1], self.points[2])
    }

    /// `(α, β)`: images of the last two points under the normalizing map.
    pub fn normalized(&self) -> Result<(C64, C64)> {
        let m = self.normalizing_mobius()?;
        match (m.apply(self.points[3]), m.apply(self.points[4])) {
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => Ok((a, b)),
            _ => Err(Error::CoincidentPoints),
        }
    }
}

/// Lift of a Möbius transformation `M` of the sphere to CP³: `M` acts on
/// `(z₂, z₄)` and `M̄` on `(z₁, z₃)`. The lift commutes with the standard
/// twistor structure and maps the fibre over `t` to the fibre over `M(t)`.
pub fn mobius_lift(m: &Mobius) -> ProjTransform {
    let mut t = nalgebra::Matrix4::<C64>::zeros();
    let (b5, b6) = ([1, 3], [0, 2]);
    for r in 0..2 {
        for c in 0..2 {
            t[(b5[r], b5[c])] = m.m[r][c];
            t[(b6[r], b6[c])] = m.m[r][c].conj();
        }
    }
    ProjTransform::new(t).expect("Möbius matrices are invertible")
}

/// The point of `b₅` with coordinate `z₂/z₄ = t`.
pub fn b5_point(t: ExtComplex) -> ProjPoint {
    let (l, m) = t.homogeneous();
    ProjPoint::new([ZERO, l, ZERO, m]).expect("unit homogeneous pair")
}

/// The point of `b₆` with coordinate `z₁/z₃ = t`.
pub fn b6_point(t: ExtComplex) -> ProjPoint {
    let (l, m) = t.homogeneous();
    ProjPoint::new([l, ZERO, m, ZERO]).expect("unit homogeneous pair")
}

pub fn standard_b5() -> ProjLine {
    line_from_points(&ProjPoint::real([0.0, 1.0, 0.0, 0.0]), &ProjPoint::real([0.0, 0.0, 0.0, 1.0])).unwrap()
}

pub fn standard_b6() -> ProjLine {
    line_from_points(&ProjPoint::real([1.0, 0.0, 0.0, 0.0]), &ProjPoint::real([0.0, 0.0, 1.0, 0.0])).unwrap()
}

/// Two skew lines `b₅, b₆` and five pairwise skew lines meeting both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SevenLineConfig {
    pub b5: ProjLine,
    pub b6: ProjLine,
    /// `a₁, a₂, a₃, a₄`.
    pub a: [ProjLine; 4],
    pub c56: ProjLine,
}

impl SevenLineConfig {
    pub fn new(b5: ProjLine, b6: ProjLine, a: [ProjLine; 4], c56: ProjLine) -> Result<Self> {
        let cfg = SevenLineConfig { b5, b6, a, c56 };
        if lines_meet(&b5, &b6) {
            return Err(Error::DegenerateConfiguration("b5 and b6 meet".into()));
        }
        let t = cfg.transversals();
        for (i, l) in t.iter().enumerate() {
            if !lines_meet(l, &b5) || !lines_meet(l, &b6) {
                return Err(Error::DegenerateConfiguration(format!("transversal {i} misses b5 or b6")));
            }
            for m in &t[..i] {
                if lines_meet(l, m) {
                    return Err(Error::CoincidentPoints);
                }
            }
        }
        Ok(cfg)
    }

    /// `a₁, a₂, a₃, a₄, c₅₆`.
    pub fn transversals(&self) -> [ProjLine; 5] {
        [self.a[0], self.a[1], self.a[2], self.a[3], self.c56]
    }

    /// `b₅, b₆, a₁, a₂, a₃, a₄, c₅₆`.
    pub fn all_lines(&self) -> [ProjLine; 7] {
        [self.b5, self.b6, self.a[0], self.a[1], self.a[2], self.a[3], self.c56]
    }

    /// Whether `b₅` and `b₆` are the coordinate lines `{z₁=z₃=0}` and `{z₂=z₄=0}`.
    pub fn is_standard_frame(&self) -> bool {
        line_equal(&self.b5, &standard_b5()) && line_equal(&self.b6, &standard_b6())
    }

    /// Image under a projective transformation.
    pub fn transformed(&self, t: &ProjTransform) -> SevenLineConfig {
        SevenLineConfig {
            b5: t.apply_line(&self.b5),
            b6: t.apply_line(&self.b6),
            a: self.a.map(|l| t.apply_line(&l)),
            c56: t.apply_line(&self.c56),
        }
    }
}

/// `α, α′, β, β′`: cross ratios `(c₅₆, a₁; a₂, a₃)` and `(c₅₆, a₁; a₂, a₄)` of
/// the intersection points on `b₅` (unprimed) and `b₆` (primed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossRatioInvariants {
    pub alpha: C64,
    pub alpha_prime: C64,
    pub beta: C64,
    pub beta_prime: C64,
}

impl CrossRatioInvariants {
    /// Invariants of a twistor configuration with normalized points `(0, 1, ∞, α, β)`.
    pub fn twistor(alpha: C64, beta: C64) -> Self {
        CrossRatioInvariants { alpha, alpha_prime: alpha.conj(), beta, beta_prime: beta.conj() }
    }

    /// Whether `α = conj(α′)` and `β = conj(β′)` within `tol` (chordal distance).
    pub fn is_conjugate(&self, tol: f64) -> bool {
        let close = |x: C64, y: C64| ExtComplex::Finite(x).chordal_distance(&ExtComplex::Finite(y.conj())) < tol;
        close(self.alpha, self.alpha_prime) && close(self.beta, self.beta_prime)
    }
}

/// The seven lines determined by five points of the sphere, in the frame
/// where `(a₁, a₂, c₅₆)` sit over `(0, 1, ∞)`. Every transversal is a fibre of
/// the standard twistor structure.
pub fn lines_from_points(cfg: &FivePointConfig) -> Result<SevenLineConfig> {
    let cfg = FivePointConfig::new(cfg.points)?;
    let j = TwistorStructure::standard();
    let lift = mobius_lift(&cfg.normalizing_mobius()?);
    let fibre = |t: ExtComplex| lift.apply_line(&twistor_fibre_through(&j, &b5_point(t)));
    let p = cfg.points;
    SevenLineConfig::new(
        standard_b5(),
        standard_b6(),
        [fibre(p[0]), fibre(p[1]), fibre(p[3]), fibre(p[4])],
        fibre(p[2]),
    )
}

pub fn invariants_from_config(cfg: &SevenLineConfig) -> Result<CrossRatioInvariants> {
    let t = cfg.transversals();
    let on = |l: &ProjLine| -> Result<[ProjPoint; 5]> {
        // order: c56, a1, a2, a3, a4
        let order = [4, 0, 1, 2, 3];
        let mut pts = [ProjPoint::real([1.0, 0.0, 0.0, 0.0]); 5];
        for (k, &i) in order.iter().enumerate() {
            pts[k] = intersection_point(&t[i], l)?;
        }
        Ok(pts)
    };
    let (p, q) = (on(&cfg.b5)?, on(&cfg.b6)?);
    Ok(CrossRatioInvariants {
        alpha: cross_ratio([&p[0], &p[1], &p[2], &p[3]], &cfg.b5)?,
        alpha_prime: cross_ratio([&q[0], &q[1], &q[2], &q[3]], &cfg.b6)?,
        beta: cross_ratio([&p[0], &p[1], &p[2], &p[4]], &cfg.b5)?,
        beta_prime: cross_ratio([&q[0], &q[1], &q[2], &q[4]], &cfg.b6)?,
    })
}

/// Five independent complex Gaussian points, redrawn until admissible and not
/// marginal.
pub fn random_admissible<R: Rng + ?Sized>(rng: &mut R) -> FivePointConfig {
    loop {
        let pts: [ExtComplex; 5] = std::array::from_fn(|_| ExtComplex::Finite(complex_gaussian(rng, 1.0)));
        if let Ok(cfg) = FivePointConfig::new(pts) {
            if admissibility(&cfg).is_ok_and(|a| a.admissible && !a.marginal) {
                return cfg;
            }
        }
    }
}

/// Rejects `α` or `β` in `{0, 1, ∞}` and `α = β`.
pub(crate) fn check_invariants_generic(alpha: C64, beta: C64) -> Result<()> {
    let pts = [
        ExtComplex::real(0.0),
        ExtComplex::real(1.0),
        ExtComplex::Infinity,
        ExtComplex::Finite(alpha),
        ExtComplex::Finite(beta),
    ];
    FivePointConfig::new(pts).map(|_| ())
}
