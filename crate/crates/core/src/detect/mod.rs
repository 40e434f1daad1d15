//! Twistor fibres among the 27 lines, and the search for twistor structures
//! giving a cubic five fibres.
//!
//! Five skew lines are fibres of some structure `𝕛` exactly when their two
//! common transversals `L, L′` are swapped by `𝕛`, which requires an
//! antiholomorphic bijection `L → L′` matching the intersection points. That
//! exists iff the cross ratios on `L′` are the conjugates of those on `L`.

mod fermat;

use nalgebra::{DMatrix, DVector, Matrix4};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::CrossRatioInvariants;
use crate::cubic::CubicSurface;
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::lines27::{
    find_lines, label_from_sextuple, transversals_of_four, Label, LineSet27, LineSolverConfig, SchlafliLabeling,
};
use crate::proj::{
    apply_j_line, conjugate_structure, cross_ratio, intersection_point, is_twistor_fibre, line_equal, ExtComplex,
    ProjLine, ProjPoint, ProjTransform, TwistorStructure, LINE_EQ_TOL,
};

pub use fermat::{
    fermat_case_check, fermat_line, fermat_lines, fermat_negative_case, fermat_seven_lines, fermat_symmetry_count,
    omega, FermatCaseCheck, FermatCounts,
};

/// Chordal tolerance when comparing a cross ratio with a conjugate one.
pub const CONJUGACY_TOL: f64 = 1e-7;

/// Indices of the lines of `ls` that are fibres of `j`.
pub fn twistor_fibres(ls: &LineSet27, j: &TwistorStructure) -> Vec<usize> {
    (0..ls.len()).filter(|&i| is_twistor_fibre(j, &ls.lines()[i])).collect()
}

/// Lines of `c` that are fibres of `j`. At most five for a nonsingular cubic.
pub fn twistor_lines(c: &CubicSurface, j: &TwistorStructure, cfg: &LineSolverConfig) -> Result<Vec<ProjLine>> {
    let ls = find_lines(c, cfg)?;
    Ok(twistor_fibres(&ls, j).into_iter().map(|i| ls.lines()[i]).collect())
}

/// With at least four fibres, checks that `j` exchanges their two common
/// transversals. Vacuously true with fewer.
pub fn j_pairing_check(ls: &LineSet27, j: &TwistorStructure) -> bool {
    let f = twistor_fibres(ls, j);
    if f.len() < 4 {
        return true;
    }
    let l = |k: usize| &ls.lines()[f[k]];
    match transversals_of_four([l(0), l(1), l(2), l(3)]) {
        Ok([t1, t2]) => line_equal(&apply_j_line(j, &t1), &t2),
        Err(_) => false,
    }
}

/// Conjugacy test for one skew pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub pair: [usize; 2],
    /// Common transversals in increasing index order; the first plays the
    /// role of `c₅₆`, the next four of `a₁..a₄`.
    pub transversals: Vec<usize>,
    pub invariants: Option<CrossRatioInvariants>,
    pub verdict: bool,
}

/// Intersection points of the common transversals of `(i, j)` with line `i`
/// and with line `j`.
pub fn transversal_points(ls: &LineSet27, i: usize, j: usize) -> Result<(Vec<ProjPoint>, Vec<ProjPoint>)> {
    let t = ls.common_transversals(&[i, j]);
    let (l, m) = (&ls.lines()[i], &ls.lines()[j]);
    let p = t.iter().map(|&k| intersection_point(&ls.lines()[k], l)).collect::<Result<Vec<_>>>()?;
    let q = t.iter().map(|&k| intersection_point(&ls.lines()[k], m)).collect::<Result<Vec<_>>>()?;
    Ok((p, q))
}

/// Cross ratios `(p₀,p₁;p₂,p₃)`, `(p₀,p₁;p₂,p₄)` and `(p₀,p₁;p₃,p₄)`.
fn three_ratios(p: &[ProjPoint], on: &ProjLine) -> Result<[C64; 3]> {
    Ok([
        cross_ratio([&p[0], &p[1], &p[2], &p[3]], on)?,
        cross_ratio([&p[0], &p[1], &p[2], &p[4]], on)?,
        cross_ratio([&p[0], &p[1], &p[3], &p[4]], on)?,
    ])
}

fn conj_close(x: C64, y: C64) -> bool {
    ExtComplex::Finite(x).chordal_distance(&ExtComplex::Finite(y.conj())) < CONJUGACY_TOL
}

/// Whether the five points on `l` and on `m` have conjugate cross ratios.
pub fn conjugate_ratios(p: &[ProjPoint], l: &ProjLine, q: &[ProjPoint], m: &ProjLine) -> Result<bool> {
    let (r, s) = (three_ratios(p, l)?, three_ratios(q, m)?);
    Ok((0..3).all(|k| conj_close(r[k], s[k])))
}

/// Runs the conjugacy test on the skew pair `(i, j)`.
pub fn pair_verdict(ls: &LineSet27, i: usize, j: usize) -> PairRecord {
    let transversals = ls.common_transversals(&[i, j]);
    let mut rec = PairRecord { pair: [i, j], transversals, invariants: None, verdict: false };
    if rec.transversals.len() != 5 {
        return rec;
    }
    let (l, m) = (&ls.lines()[i], &ls.lines()[j]);
    let Ok((p, q)) = transversal_points(ls, i, j) else {
        return rec;
    };
    if let (Ok(r), Ok(s)) = (three_ratios(&p, l), three_ratios(&q, m)) {
        rec.invariants = Some(CrossRatioInvariants { alpha: r[0], alpha_prime: s[0], beta: r[1], beta_prime: s[1] });
        rec.verdict = (0..3).all(|k| conj_close(r[k], s[k]));
    }
    rec
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionSummary {
    pub skew_pairs: usize,
    pub qualifying_pairs: usize,
    /// Number of fibres among the 27 lines under `structure`.
    pub max_fibre_count: Option<usize>,
    /// A structure built from the first qualifying pair that yields one.
    pub structure: Option<TwistorStructure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    /// Every skew pair, sorted by index.
    pub pairs: Vec<PairRecord>,
    pub summary: DetectionSummary,
}

impl DetectionReport {
    pub fn qualifying(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs.iter().filter(|r| r.verdict)
    }
}

/// Scans all skew pairs for a conjugate matching of the five common
/// transversals. Fails if some skew pair does not have exactly five.
pub fn detect_five(ls: &LineSet27) -> Result<DetectionReport> {
    let pairs: Vec<PairRecord> = ls.skew_pairs().par_iter().map(|&(i, j)| pair_verdict(ls, i, j)).collect();
    if let Some(bad) = pairs.iter().find(|r| r.transversals.len() != 5) {
        return Err(Error::GraphInvariantViolation(format!(
            "skew pair {:?} has {} common transversals",
            bad.pair,
            bad.transversals.len()
        )));
    }
    let structure = pairs.iter().filter(|r| r.verdict).find_map(|r| {
        let t: Vec<&ProjLine> = r.transversals.iter().map(|&k| &ls.lines()[k]).collect();
        construct_structure(&ls.lines()[r.pair[0]], &ls.lines()[r.pair[1]], [t[0], t[1], t[2], t[3], t[4]]).ok()
    });
    let summary = DetectionSummary {
        skew_pairs: pairs.len(),
        qualifying_pairs: pairs.iter().filter(|r| r.verdict).count(),
        max_fibre_count: structure.as_ref().map(|j| twistor_fibres(ls, j).len()),
        structure,
    };
    Ok(DetectionReport { pairs, summary })
}

/// Writes `p₂` as `x·p₀ + y·p₁` and returns `(x·p₀, y·p₁)`.
fn split(p: &[ProjPoint]) -> Result<([C64; 4], [C64; 4])> {
    let a = DMatrix::from_fn(4, 2, |r, c| p[c].coords()[r]);
    let b = DVector::from_column_slice(p[2].coords());
    let x = a.svd(true, true).solve(&b, 1e-14).map_err(|_| Error::NotConjugatePair)?;
    Ok((p[0].coords().map(|z| z * x[0]), p[1].coords().map(|z| z * x[1])))
}

/// A twistor structure exchanging `l` and `lp` for which the five given
/// common transversals are fibres.
///
/// New coordinates put `l` at `{z₁ = z₃ = 0}` and `lp` at `{z₂ = z₄ = 0}`
/// with three of the transversals over `∞, 0, 1` on both lines; the
/// standard structure transported back matches the remaining two points
/// exactly when the cross ratios are conjugate. Every choice of three is
/// tried and the best-conditioned result kept.
pub fn construct_structure(l: &ProjLine, lp: &ProjLine, t: [&ProjLine; 5]) -> Result<TwistorStructure> {
    let p = t.iter().map(|x| intersection_point(x, l)).collect::<Result<Vec<_>>>()?;
    let q = t.iter().map(|x| intersection_point(x, lp)).collect::<Result<Vec<_>>>()?;
    let mut best: Option<(f64, TwistorStructure)> = None;
    for a in 0..5 {
        for b in (a + 1)..5 {
            for c in (b + 1)..5 {
                let Ok(j) = frame_structure([&p[a], &p[b], &p[c]], [&q[a], &q[b], &q[c]]) else {
                    continue;
                };
                let err =
                    t.iter().map(|x| apply_j_line(&j, x).distance(x)).fold(apply_j_line(&j, l).distance(lp), f64::max);
                if best.as_ref().is_none_or(|(e, _)| err < *e) {
                    best = Some((err, j));
                }
            }
        }
    }
    match best {
        Some((err, j)) if err < LINE_EQ_TOL => Ok(j),
        _ => Err(Error::NotConjugatePair),
    }
}

fn frame_structure(p: [&ProjPoint; 3], q: [&ProjPoint; 3]) -> Result<TwistorStructure> {
    let (e2, e4) = split(&[*p[0], *p[1], *p[2]])?;
    let (e1, e3) = split(&[*q[0], *q[1], *q[2]])?;
    let cols = [e1, e2, e3, e4];
    let s = ProjTransform::new(Matrix4::from_fn(|r, c| cols[c][r])).map_err(|_| Error::NotConjugatePair)?;
    Ok(conjugate_structure(&s, &TwistorStructure::standard()))
}

/// Whether some ordering of the five points on `on` has cross ratios
/// `(p₀,p₁;p₂,p₃) = α` and `(p₀,p₁;p₂,p₄) = β` within `tol`.
pub fn matches_up_to_relabeling(p: &[ProjPoint], on: &ProjLine, alpha: C64, beta: C64, tol: f64) -> bool {
    let mut idx = [0, 1, 2, 3, 4];
    let mut found = false;
    permute(&mut idx, 0, &mut |o| {
        if found {
            return;
        }
        let r = (
            cross_ratio([&p[o[0]], &p[o[1]], &p[o[2]], &p[o[3]]], on),
            cross_ratio([&p[o[0]], &p[o[1]], &p[o[2]], &p[o[4]]], on),
        );
        if let (Ok(a), Ok(b)) = r {
            found = (a - alpha).norm() < tol * (1.0 + alpha.norm()) && (b - beta).norm() < tol * (1.0 + beta.norm());
        }
    });
    found
}

fn permute(a: &mut [usize; 5], k: usize, f: &mut impl FnMut(&[usize; 5])) {
    if k == a.len() {
        f(a);
        return;
    }
    for i in k..a.len() {
        a.swap(k, i);
        permute(a, k + 1, f);
        a.swap(k, i);
    }
}

/// A Schläfli labeling in which the given five skew lines carry the labels
/// `a₁, a₂, a₃, a₄, c₅₆` (in some order).
pub fn label_five_fibres(ls: &LineSet27, fibres: &[usize]) -> Result<SchlafliLabeling> {
    if fibres.len() != 5 {
        return Err(Error::LabelingFailed(format!("{} fibres, expected 5", fibres.len())));
    }
    for c in 0..5 {
        let a: Vec<usize> = (0..5).filter(|&k| k != c).map(|k| fibres[k]).collect();
        for sext in ls.skew_sextuples() {
            if !a.iter().all(|x| sext.contains(x)) {
                continue;
            }
            let rest: Vec<usize> = sext.iter().copied().filter(|x| !a.contains(x)).collect();
            let order = [a[0], a[1], a[2], a[3], rest[0], rest[1]];
            if let Ok(lab) = label_from_sextuple(ls, &order) {
                if lab.label(fibres[c]) == Label::C(5, 6) {
                    return Ok(lab);
                }
            }
        }
    }
    Err(Error::LabelingFailed("no labeling puts the fibres at a1..a4, c56".into()))
}
