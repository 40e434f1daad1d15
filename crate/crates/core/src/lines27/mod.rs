//! The 27 lines of a nonsingular cubic: numerical solving, the intersection
//! graph, Schläfli labels, and transversals.

mod graph;
mod schlafli;
mod solver;
mod transversals;

pub use graph::{intersection_graph, LineSet27, LineSetRecord, DOUBLE_SIXES, NEIGHBOURS_PER_LINE, SKEW_SEXTUPLES};
pub use schlafli::{
    label_from_sextuple, labels_meet, roadmap_csv, schlafli_label, verify_schlafli_rules, Label, SchlafliLabeling,
};
pub use solver::{find_lines, solve_lines, LineSolverConfig};
pub use transversals::transversals_of_four;
