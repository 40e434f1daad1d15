//! Heuristic nonsingularity certificate: multistart Newton search for common
//! zeros of the four partial derivatives.

use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;

use super::{gradient_at, CubicSurface, Polarization};
use crate::linalg::{norm, C64, ONE, ZERO};
use crate::proj::{ProjLine, ProjPoint};
use crate::sampling::{complex_gaussian_array, rng};

/// Parameters of the singular-point search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularSearch {
    /// Random starts per affine chart.
    pub starts: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Gradient norm (unit form, unit point) below which a point is singular.
    pub residual_tol: f64,
    pub seed: u64,
}

impl Default for SingularSearch {
    fn default() -> Self {
        SingularSearch { starts: 200, newton_tol: 1e-12, max_iter: 100, residual_tol: 1e-8, seed: 42 }
    }
}

/// Newton on `∂_i C = 0 (i ≠ chart)` in the chart `z_chart = 1`. By Euler's
/// identity the remaining partial vanishes iff `C` does, so a critical point
/// is singular exactly when the full gradient vanishes there.
fn newton_critical_point(pol: &Polarization, chart: usize, start: [C64; 3], cfg: &SingularSearch) -> Option<[C64; 4]> {
    let others: Vec<usize> = (0..4).filter(|&k| k != chart).collect();
    let mut x = Vector3::from_column_slice(&start);
    for _ in 0..cfg.max_iter {
        let mut z = [ZERO; 4];
        z[chart] = ONE;
        for (a, &k) in others.iter().enumerate() {
            z[k] = x[a];
        }
        let q = pol.bilinear(&z, &z);
        let f = Vector3::from_fn(|a, _| 3.0 * q[others[a]]);
        let jac = Matrix3::from_fn(|a, b| {
            let (i, j) = (others[a], others[b]);
            6.0 * (0..4).map(|m| pol.t[i][j][m] * z[m]).sum::<C64>()
        });
        let step = jac.svd(true, true).solve(&f, 1e-14).ok()?;
        x -= step;
        if !x.iter().all(|c| c.re.is_finite() && c.im.is_finite()) || x.norm() > 1e8 {
            return None;
        }
        if step.norm() <= cfg.newton_tol * (1.0 + x.norm()) {
            break;
        }
    }
    let mut z = [ZERO; 4];
    z[chart] = ONE;
    for (a, &k) in others.iter().enumerate() {
        z[k] = x[a];
    }
    Some(z)
}

/// Searches for a singular point of the surface; `None` if none was found.
pub fn find_singular_point(c: &CubicSurface, cfg: &SingularSearch) -> Option<ProjPoint> {
    let unit = c.normalized();
    let pol = unit.polarization();
    let mut r = rng(cfg.seed);
    let starts: Vec<(usize, [C64; 3])> = (0..4)
        .flat_map(|chart| (0..cfg.starts).map(move |_| chart))
        .map(|chart| (chart, complex_gaussian_array(&mut r, 1.0)))
        .collect();
    starts
        .par_iter()
        .map(|(chart, s)| {
            let z = newton_critical_point(&pol, *chart, *s, cfg)?;
            let p = ProjPoint::new(z).ok()?;
            let g = gradient_at(&unit, p.coords());
            (norm(&g) < cfg.residual_tol).then_some(p)
        })
        .find_first(Option::is_some)
        .flatten()
}

/// Heuristic certificate that `c` is nonsingular.
///
/// No singular point may be found by the multistart search. When `lines` is
/// given it must also be a set of exactly 27 distinct lines whose intersection
/// graph has the Schläfli counts.
pub fn certify_nonsingular(c: &CubicSurface, lines: Option<&[ProjLine]>, cfg: &SingularSearch) -> bool {
    if let Some(lines) = lines {
        if crate::lines27::intersection_graph(lines).is_err() {
            return false;
        }
    }
    find_singular_point(c, cfg).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::evaluate;

    #[test]
    fn fermat_is_nonsingular() {
        assert!(certify_nonsingular(&CubicSurface::fermat(), None, &SingularSearch::default()));
    }

    #[test]
    fn plane_union_quadric_is_singular() {
        let one = C64::new(1.0, 0.0);
        let c = CubicSurface::from_terms(&[(one, [1, 1, 1]), (one, [1, 2, 2]), (one, [1, 3, 3]), (one, [1, 4, 4])])
            .unwrap();
        let p = find_singular_point(&c, &SingularSearch::default()).expect("singular conic");
        assert!(evaluate(&c.normalized(), &p).norm() < 1e-8);
        assert!(!certify_nonsingular(&c, None, &SingularSearch::default()));
    }

    #[test]
    fn cone_vertex_found() {
        // z2³ + z3³ + z4³ is a cone with vertex [1,0,0,0].
        let one = C64::new(1.0, 0.0);
        let c = CubicSurface::from_terms(&[(one, [2, 2, 2]), (one, [3, 3, 3]), (one, [4, 4, 4])]).unwrap();
        let p = find_singular_point(&c, &SingularSearch::default()).unwrap();
        assert!(crate::proj::point_equal(&p, &ProjPoint::real([1.0, 0.0, 0.0, 0.0])));
    }
}
