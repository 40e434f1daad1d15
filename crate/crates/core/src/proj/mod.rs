//! Projective 3-space: points, lines, incidence, cross ratios and twistor
//! structures.

mod line;
mod point;
pub mod sphere;
mod transform;
mod twistor;

pub use line::{
    cross_ratio, intersection_point, line_equal, line_from_points, lines_meet, meet_residual, plucker_pairing,
    plucker_relation, ProjLine, LINE_EQ_TOL, MEET_TOL, ON_LINE_TOL, PLUCKER_PAIRS,
};
pub use point::{point_equal, ProjPoint, POINT_EQ_TOL};
pub use sphere::{ExtComplex, Mobius};
pub use transform::ProjTransform;
pub use twistor::{
    apply_j, apply_j_line, conjugate_structure, is_conformal, is_twistor_fibre, twistor_fibre_through, TwistorStructure,
};
