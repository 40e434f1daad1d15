use nalgebra::{DMatrix, Matrix3};
use serde::{Deserialize, Serialize};

use super::FivePointConfig;
use crate::error::Result;
use crate::linalg::{normalized, C64, ONE, ZERO};
use crate::proj::sphere::cross_ratio_arg_sine;
use crate::proj::ExtComplex;

/// Four points are concircular when the sine of the argument of their cross
/// ratio is below this.
pub const CONCIRCULAR_TOL: f64 = 1e-9;
/// Non-concircular verdicts with a sine below this are flagged as marginal.
pub const MARGINAL_TOL: f64 = 1e-6;
const GENERAL_POSITION_TOL: f64 = 1e-9;

pub fn concircular(t: [ExtComplex; 4]) -> Result<bool> {
    Ok(cross_ratio_arg_sine(t)?.abs() < CONCIRCULAR_TOL)
}

/// `|α|²(β−β̄) − |β|²(α−ᾱ) + αβ̄ − ᾱβ`, which vanishes exactly when
/// `0, 1, α, β` lie on a circle or line. Always purely imaginary.
pub fn pascal_determinant(alpha: C64, beta: C64) -> C64 {
    alpha.norm_sqr() * (beta - beta.conj()) - beta.norm_sqr() * (alpha - alpha.conj()) + alpha * beta.conj()
        - alpha.conj() * beta
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Indices of the first concircular 4-subset, if any.
    pub failing_subset: Option<[usize; 4]>,
    /// Smallest `|sin arg|` of a cross ratio over the 4-subsets.
    pub min_arg_sine: f64,
    /// Admissible, but some 4-subset is within `MARGINAL_TOL` of a circle.
    pub marginal: bool,
}

/// Checks every 4-subset of the five points for concircularity.
pub fn admissibility(cfg: &FivePointConfig) -> Result<Admissibility> {
    let mut failing = None;
    let mut min_sine = f64::INFINITY;
    for skip in (0..5).rev() {
        let idx: Vec<usize> = (0..5).filter(|&i| i != skip).collect();
        let subset = [idx[0], idx[1], idx[2], idx[3]];
        let s = cross_ratio_arg_sine(subset.map(|i| cfg.points[i]))?.abs();
        min_sine = min_sine.min(s);
        if s < CONCIRCULAR_TOL && failing.is_none() {
            failing = Some(subset);
        }
    }
    Ok(Admissibility {
        admissible: failing.is_none(),
        failing_subset: failing,
        min_arg_sine: min_sine,
        marginal: failing.is_none() && min_sine < MARGINAL_TOL,
    })
}

/// No four of the five points lie on a circle.
pub fn admissible(cfg: &FivePointConfig) -> bool {
    admissibility(cfg).map(|a| a.admissible).unwrap_or(false)
}

/// Whether the six plane points `[0,0,1], [1,1,1], [α,ᾱ,1], [β,β̄,1], [1,0,0],
/// [0,1,0]` have no three collinear and do not lie on a conic.
pub fn six_points_general_position(alpha: C64, beta: C64) -> bool {
    let raw = [
        [ZERO, ZERO, ONE],
        [ONE, ONE, ONE],
        [alpha, alpha.conj(), ONE],
        [beta, beta.conj(), ONE],
        [ONE, ZERO, ZERO],
        [ZERO, ONE, ZERO],
    ];
    let pts: Vec<[C64; 3]> = raw.iter().map(|p| normalized(p).expect("nonzero point")).collect();
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                let m = Matrix3::from_fn(|r, c| [pts[i], pts[j], pts[k]][r][c]);
                if m.determinant().norm() < GENERAL_POSITION_TOL {
                    return false;
                }
            }
        }
    }
    let conic = DMatrix::from_fn(6, 6, |r, c| {
        let [x, y, z] = pts[r];
        [x * x, y * y, z * z, x * y, x * z, y * z][c]
    });
    conic.determinant().norm() >= GENERAL_POSITION_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    fn omega() -> C64 {
        C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
    }

    fn e(re: f64, im: f64) -> ExtComplex {
        ExtComplex::new(re, im)
    }

    #[test]
    fn concircular_examples() {
        assert!(concircular([e(0.0, 0.0), e(1.0, 0.0), e(2.0, 0.0), e(3.0, 0.0)]).unwrap());
        assert!(concircular([e(0.0, 0.0), e(1.0, 0.0), e(0.0, 1.0), e(1.0, 1.0)]).unwrap());
        assert!(!concircular([e(0.0, 0.0), e(1.0, 0.0), ExtComplex::Infinity, e(0.0, 1.0)]).unwrap());
    }

    #[test]
    fn pascal_examples() {
        let p = pascal_determinant(omega(), omega() * omega());
        let expected = 3.0 * (omega() * omega() - omega());
        assert!((p - expected).norm() < 1e-12);
        assert!((p - C64::new(0.0, -3.0 * 3f64.sqrt())).norm() < 1e-12);
        assert_eq!(pascal_determinant(C64::new(2.0, 0.0), C64::new(3.0, 0.0)), ZERO);
    }

    #[test]
    fn admissibility_examples() {
        let w = omega();
        let good =
            FivePointConfig::new([e(0.0, 0.0), ExtComplex::Infinity, e(1.0, 0.0), w.into(), w.conj().into()]).unwrap();
        assert!(admissible(&good));
        let bad = FivePointConfig::new([e(0.0, 0.0), e(1.0, 0.0), e(2.0, 0.0), e(3.0, 0.0), e(0.0, 1.0)]).unwrap();
        let a = admissibility(&bad).unwrap();
        assert!(!a.admissible);
        assert_eq!(a.failing_subset, Some([0, 1, 2, 3]));
    }

    #[test]
    fn general_position_examples() {
        assert!(six_points_general_position(omega(), omega() * omega()));
        assert!(!six_points_general_position(C64::new(2.0, 0.0), C64::new(-3.0, 0.0)));
        // 0, 1, α, β on the circle |z − (½ + i)| = √5/2
        let c = C64::new(0.5, 1.0);
        let r = 1.25f64.sqrt();
        let (a, b) = (c + C64::from_polar(r, 0.3), c + C64::from_polar(r, 2.0));
        assert!(!six_points_general_position(a, b));
        assert!(pascal_determinant(a, b).norm() < 1e-12);
    }
}
