//! Numerical line finding on a cubic surface by multistart Newton in the six
//! affine charts of the Grassmannian of lines.

use nalgebra::{Matrix4, Vector4};
use rayon::prelude::*;

use crate::cubic::{containment_residual, CubicSurface, Polarization, CONTAINMENT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{C64, ONE, ZERO};
use crate::proj::{line_from_points, ProjLine, ProjPoint};
use crate::sampling::{complex_gaussian_array, rng};

/// Parameters of the line solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSolverConfig {
    pub starts_per_chart: usize,
    /// Scale of the complex Gaussian used for start points.
    pub sigma: f64,
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Plücker chordal distance below which two solutions are the same line.
    pub dedup_tol: f64,
    pub seed: u64,
    /// Extra rounds `find_lines` runs while fewer than 27 lines are found,
    /// each with a fresh seed and twice the previous number of starts.
    pub extra_rounds: usize,
}

impl Default for LineSolverConfig {
    fn default() -> Self {
        LineSolverConfig {
            starts_per_chart: 2000,
            sigma: 2.0,
            newton_tol: 1e-12,
            max_iter: 100,
            dedup_tol: 1e-7,
            seed: 42,
            extra_rounds: 3,
        }
    }
}

/// Chart with pivot coordinates `p < q`: lines spanned by
/// `u = e_p + a e_r + c e_s` and `w = e_q + b e_r + d e_s`.
#[derive(Debug, Clone, Copy)]
struct Chart {
    p: usize,
    q: usize,
    r: usize,
    s: usize,
}

const CHARTS: [Chart; 6] = [
    Chart { p: 0, q: 1, r: 2, s: 3 },
    Chart { p: 0, q: 2, r: 1, s: 3 },
    Chart { p: 0, q: 3, r: 1, s: 2 },
    Chart { p: 1, q: 2, r: 0, s: 3 },
    Chart { p: 1, q: 3, r: 0, s: 2 },
    Chart { p: 2, q: 3, r: 0, s: 1 },
];

impl Chart {
    fn spanning(&self, x: &Vector4<C64>) -> ([C64; 4], [C64; 4]) {
        let mut u = [ZERO; 4];
        let mut w = [ZERO; 4];
        u[self.p] = ONE;
        w[self.q] = ONE;
        u[self.r] = x[0];
        w[self.r] = x[1];
        u[self.s] = x[2];
        w[self.s] = x[3];
        (u, w)
    }
}

fn dot(a: &[C64; 4], b: &[C64; 4]) -> C64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Residual (coefficients of `C(λu + μw)`) and its Jacobian in `(a, b, c, d)`.
fn system(pol: &Polarization, chart: &Chart, x: &Vector4<C64>) -> (Vector4<C64>, Matrix4<C64>) {
    let (u, w) = chart.spanning(x);
    let buu = pol.bilinear(&u, &u);
    let buw = pol.bilinear(&u, &w);
    let bww = pol.bilinear(&w, &w);
    let f = Vector4::new(dot(&buu, &u), 3.0 * dot(&buu, &w), 3.0 * dot(&bww, &u), dot(&bww, &w));
    let (r, s) = (chart.r, chart.s);
    #[rustfmt::skip]
    let jac = Matrix4::new(
        3.0 * buu[r], ZERO,         3.0 * buu[s], ZERO,
        6.0 * buw[r], 3.0 * buu[r], 6.0 * buw[s], 3.0 * buu[s],
        3.0 * bww[r], 6.0 * buw[r], 3.0 * bww[s], 6.0 * buw[s],
        ZERO,         3.0 * bww[r], ZERO,         3.0 * bww[s],
    );
    (f, jac)
}

fn newton(pol: &Polarization, chart: &Chart, start: Vector4<C64>, cfg: &LineSolverConfig) -> Option<Vector4<C64>> {
    let mut x = start;
    for _ in 0..cfg.max_iter {
        let (f, jac) = system(pol, chart, &x);
        let step = jac.lu().solve(&f)?;
        x -= step;
        let xn = x.norm();
        if !xn.is_finite() || xn > 1e8 {
            return None;
        }
        if step.norm() <= cfg.newton_tol * (1.0 + xn) {
            return Some(x);
        }
    }
    // accept slow convergence only if the residual is already tiny
    let (f, _) = system(pol, chart, &x);
    (f.norm() < cfg.newton_tol).then_some(x)
}

/// Phase-fixed Plücker vector used as a deterministic sort key.
fn sort_key(l: &ProjLine) -> Vec<i64> {
    let p = l.plucker();
    let pivot = p.iter().find(|z| z.norm() > 1e-3).copied().unwrap_or(ONE);
    let phase = pivot.conj() / pivot.norm();
    p.iter()
        .flat_map(|z| {
            let w = z * phase;
            [(w.re * 1e6).round() as i64, (w.im * 1e6).round() as i64]
        })
        .collect()
}

/// All distinct lines the solver finds on `c`, sorted canonically. No count
/// check is applied.
pub fn solve_lines(c: &CubicSurface, cfg: &LineSolverConfig) -> Vec<ProjLine> {
    let mut found = Vec::new();
    merge_round(c, cfg, &mut found);
    found.sort_by_cached_key(sort_key);
    found
}

fn merge_round(c: &CubicSurface, cfg: &LineSolverConfig, found: &mut Vec<ProjLine>) {
    let unit = c.normalized();
    let pol = unit.polarization();
    let mut r = rng(cfg.seed);
    let starts: Vec<(usize, Vector4<C64>)> = (0..CHARTS.len())
        .flat_map(|k| (0..cfg.starts_per_chart).map(move |_| k))
        .map(|k| (k, Vector4::from(complex_gaussian_array::<_, 4>(&mut r, cfg.sigma))))
        .collect();
    let candidates: Vec<Option<ProjLine>> = starts
        .par_iter()
        .map(|(k, s)| {
            let chart = &CHARTS[*k];
            let x = newton(&pol, chart, *s, cfg)?;
            let (u, w) = chart.spanning(&x);
            let line = line_from_points(&ProjPoint::new(u).ok()?, &ProjPoint::new(w).ok()?).ok()?;
            (containment_residual(&unit, &line) < CONTAINMENT_TOL).then_some(line)
        })
        .collect();
    for line in candidates.into_iter().flatten() {
        if found.iter().all(|m| m.distance(&line) >= cfg.dedup_tol) {
            found.push(line);
        }
    }
}

/// The 27 lines of a nonsingular cubic. Runs up to `extra_rounds` further
/// rounds while the count is short.
pub fn find_lines(c: &CubicSurface, cfg: &LineSolverConfig) -> Result<super::LineSet27> {
    let mut found = Vec::new();
    let mut round = *cfg;
    for k in 0..=cfg.extra_rounds {
        merge_round(c, &round, &mut found);
        if found.len() >= 27 {
            break;
        }
        round.seed = cfg.seed.wrapping_add(k as u64 + 1);
        round.starts_per_chart *= 2;
    }
    if found.len() != 27 {
        return Err(Error::WrongLineCount { found: found.len() });
    }
    found.sort_by_cached_key(sort_key);
    super::intersection_graph(&found)
}
