//! The Fermat cubic `z₁³ + z₂³ + z₃³ + z₄³`: its lines in closed form, its
//! symmetry count, and the skew pairs singled out in the case analysis.

use serde::{Deserialize, Serialize};

use super::{pair_verdict, PairRecord};
use crate::cubic::CubicSurface;
use crate::linalg::{C64, ONE, ZERO};
use crate::lines27::LineSet27;
use crate::proj::{is_conformal, ProjLine, ProjTransform, TwistorStructure};

fn root(k: usize, n: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % n) as f64 / n as f64)
}

/// Primitive cube root of unity `e^{2πi/3}`.
pub fn omega() -> C64 {
    root(1, 3)
}

/// The line `z_i + η₁ z_j = z_k + η₂ z_l = 0` (0-based indices).
pub fn fermat_line(i: usize, j: usize, eta1: C64, k: usize, l: usize, eta2: C64) -> ProjLine {
    let mut n1 = [ZERO; 4];
    let mut n2 = [ZERO; 4];
    n1[i] = ONE;
    n1[j] = eta1;
    n2[k] = ONE;
    n2[l] = eta2;
    ProjLine::from_planes(n1, n2).expect("independent planes")
}

/// The 27 lines: three ways of pairing the coordinates, times nine pairs of
/// cube roots of unity.
pub fn fermat_lines() -> Vec<ProjLine> {
    let pairings = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)];
    let mut out = Vec::with_capacity(27);
    for &(i, j, k, l) in &pairings {
        for e1 in 0..3 {
            for e2 in 0..3 {
                out.push(fermat_line(i, j, root(e1, 3), k, l, root(e2, 3)));
            }
        }
    }
    out
}

/// Seven Fermat lines `b₅, b₆, a₁, a₂, a₃, a₄, c₅₆` forming a five-fibre
/// configuration for a suitable twistor structure.
pub fn fermat_seven_lines() -> [ProjLine; 7] {
    let w = omega();
    let w2 = w * w;
    [
        fermat_line(0, 1, w, 2, 3, w2),
        fermat_line(0, 1, w2, 2, 3, w),
        fermat_line(0, 1, w, 2, 3, w),
        fermat_line(0, 3, ONE, 1, 2, ONE),
        fermat_line(0, 3, w, 1, 2, w),
        fermat_line(0, 3, w2, 1, 2, w2),
        fermat_line(0, 1, w2, 2, 3, w2),
    ]
}

/// Symmetry counts of the Fermat cubic and of the symmetric five-fibre cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FermatCounts {
    /// Projective symmetries of the Fermat cubic among permutations composed
    /// with diagonal cube-root scalings.
    pub total: usize,
    /// Symmetries of the symmetric five-fibre cubic commuting with the
    /// standard twistor structure.
    pub conformal_stabilizer: usize,
    pub components: usize,
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Monomial transforms `permutation ∘ diag(1, ζ^a, ζ^b, ζ^c)` with `ζ` a
/// primitive `n`-th root of unity; distinct as projective maps.
fn monomial_candidates(n: usize) -> Vec<ProjTransform> {
    let mut out = Vec::new();
    for p in permutations() {
        let perm = ProjTransform::permutation(p).expect("permutation");
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let d = ProjTransform::diagonal([ONE, root(a, n), root(b, n), root(c, n)]).expect("unit diagonal");
                    out.push(perm.compose(&d));
                }
            }
        }
    }
    out
}

/// Enumerates the symmetry counts: all 648 monomial symmetries of the Fermat
/// cubic, and the monomial symmetries (sixth roots of unity) of the symmetric
/// five-fibre cubic that commute with the standard structure.
pub fn fermat_symmetry_count() -> FermatCounts {
    let fermat = CubicSurface::fermat();
    let total = monomial_candidates(3).iter().filter(|t| fermat.pullback(t).same_surface(&fermat, 1e-10)).count();
    let s6 = CubicSurface::symmetric_five_fibre();
    let j = TwistorStructure::standard();
    let conformal_stabilizer = monomial_candidates(6)
        .iter()
        .filter(|t| s6.pullback(t).same_surface(&s6, 1e-10) && is_conformal(t, &j))
        .count();
    FermatCounts { total, conformal_stabilizer, components: total / conformal_stabilizer.max(1) }
}

/// Outcome of the two-line case analysis on the Fermat cubic.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FermatCaseCheck {
    /// `z₁+z₂ = z₃+z₄ = 0` against `z₁+z₃ = z₂+ωz₄ = 0`.
    pub negative: PairRecord,
    /// The labelled pair `b₅, b₆`.
    pub positive: PairRecord,
}

fn index_of(ls: &LineSet27, l: &ProjLine) -> usize {
    ls.lines().iter().position(|m| crate::proj::line_equal(m, l)).expect("line belongs to the Fermat cubic")
}

/// Runs the conjugacy test on the named pair `(z₁+z₂ = z₃+z₄ = 0,
/// z₁+z₃ = z₂+ωz₄ = 0)` and on the labelled `(b₅, b₆)`.
pub fn fermat_case_check(ls: &LineSet27) -> FermatCaseCheck {
    let neg = (index_of(ls, &fermat_line(0, 1, ONE, 2, 3, ONE)), index_of(ls, &fermat_line(0, 2, ONE, 1, 3, omega())));
    let seven = fermat_seven_lines();
    let pos = (index_of(ls, &seven[0]), index_of(ls, &seven[1]));
    FermatCaseCheck { negative: pair_verdict(ls, neg.0, neg.1), positive: pair_verdict(ls, pos.0, pos.1) }
}

/// True when the named pair fails the conjugacy test, as the case analysis
/// requires.
pub fn fermat_negative_case() -> bool {
    let ls = crate::lines27::intersection_graph(&fermat_lines()).expect("Fermat lines form a valid graph");
    !fermat_case_check(&ls).negative.verdict
}
