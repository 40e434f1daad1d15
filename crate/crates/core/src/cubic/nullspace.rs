use nalgebra::DMatrix;

use super::{monomial_values, CubicSurface};
use crate::error::{Error, Result};
use crate::linalg::{null_space, C64};
use crate::proj::{ProjLine, ProjPoint};

/// Relative singular-value cutoff for the interpolation systems.
pub const NULLSPACE_REL_TOL: f64 = 1e-9;

/// Sample parameters `(λ:μ)` used to turn a line into four point conditions.
pub const LINE_SAMPLE_PARAMS: [(f64, f64); 4] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0)];

/// A vanishing condition on a cubic form.
#[derive(Debug, Clone, Copy)]
pub enum Constraint {
    Point(ProjPoint),
    Line(ProjLine),
}

impl Constraint {
    fn sample_points(&self) -> Vec<ProjPoint> {
        match self {
            Constraint::Point(p) => vec![*p],
            Constraint::Line(l) => LINE_SAMPLE_PARAMS
                .iter()
                .map(|&(a, b)| l.point_at(C64::new(a, 0.0), C64::new(b, 0.0)).expect("distinct span points"))
                .collect(),
        }
    }
}

/// Orthonormal basis of the cubic forms vanishing on every constraint.
pub fn nullspace_cubics(constraints: &[Constraint]) -> Result<Vec<CubicSurface>> {
    if constraints.is_empty() {
        return Err(Error::InvalidInput("at least one constraint is required".into()));
    }
    let points: Vec<ProjPoint> = constraints.iter().flat_map(Constraint::sample_points).collect();
    let mut a = DMatrix::<C64>::zeros(points.len(), 20);
    for (r, p) in points.iter().enumerate() {
        for (c, v) in monomial_values(p.coords()).iter().enumerate() {
            a[(r, c)] = *v;
        }
    }
    let ns = null_space(&a, NULLSPACE_REL_TOL);
    if ns.is_empty() {
        return Err(Error::EmptyNullspace);
    }
    ns.iter().map(|v| CubicSurface::new(std::array::from_fn(|k| v[k]))).collect()
}
