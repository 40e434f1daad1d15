use twistor_core::cubic::SingularSearch;
use twistor_core::lines27::LineSolverConfig;

use crate::Failure;

/// Report encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub solver: LineSolverConfig,
    pub singular: SingularSearch,
    pub format: Format,
}

/// Names accepted by `--tol`.
pub const TOLERANCE_NAMES: [&str; 4] = ["newton", "dedup", "singular", "singular_newton"];

impl RunConfig {
    pub fn new(seed: u64, starts: usize, tols: &[String], format: Format) -> Result<Self, Failure> {
        if starts == 0 {
            return Err(Failure::parse("--starts must be at least 1"));
        }
        let mut solver = LineSolverConfig { seed, starts_per_chart: starts, ..LineSolverConfig::default() };
        let mut singular = SingularSearch { seed, ..SingularSearch::default() };
        for t in tols {
            let (name, value) =
                t.split_once('=').ok_or_else(|| Failure::parse(format!("--tol expects name=value, got {t:?}")))?;
            let v: f64 = value.trim().parse().map_err(|_| Failure::parse(format!("bad tolerance value {value:?}")))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Failure::parse(format!("tolerance {name} must be positive")));
            }
            match name.trim() {
                "newton" => solver.newton_tol = v,
                "dedup" => solver.dedup_tol = v,
                "singular" => singular.residual_tol = v,
                "singular_newton" => singular.newton_tol = v,
                other => {
                    return Err(Failure::parse(format!(
                        "unknown tolerance {other:?}; expected one of {}",
                        TOLERANCE_NAMES.join(", ")
                    )))
                }
            }
        }
        Ok(RunConfig { solver, singular, format })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_override_defaults() {
        let cfg = RunConfig::new(7, 100, &["dedup=1e-6".into(), "singular=2e-8".into()], Format::Json).unwrap();
        assert_eq!(cfg.solver.dedup_tol, 1e-6);
        assert_eq!(cfg.singular.residual_tol, 2e-8);
        assert_eq!(cfg.solver.seed, 7);
        assert_eq!(cfg.solver.starts_per_chart, 100);
    }

    #[test]
    fn bad_tolerances_rejected() {
        for t in ["dedup", "dedup=-1", "dedup=x", "speed=1"] {
            assert!(RunConfig::new(1, 10, &[t.into()], Format::Json).is_err(), "{t}");
        }
        assert!(RunConfig::new(1, 0, &[], Format::Json).is_err());
    }
}
