use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use twistor_core::construct::{
    admissibility, invariants_from_config, lines_from_points, pencil_explicit, pencil_nullspace, xi_invariant,
    xi_invariant_literal, CrossRatioInvariants, FivePointConfig, Pencil,
};
use twistor_core::cubic::certify_nonsingular;
use twistor_core::cubic::text::{format_cubic, parse_cubic};
use twistor_core::detect::{
    detect_five, fermat_case_check, fermat_lines, fermat_symmetry_count, j_pairing_check, label_five_fibres, omega,
    twistor_fibres, DetectionReport,
};
use twistor_core::lines27::{find_lines, roadmap_csv, schlafli_label, LineSet27, LineSetRecord};
use twistor_core::{CubicSurface, Error, ExtComplex, TwistorStructure, C64};

use crate::config::{Format, RunConfig};
use crate::{Failure, Outcome, EXIT_CLAIM, EXIT_INADMISSIBLE, EXIT_SHORTFALL};

/// Pencil parameters `t = 10^(-2 + 0.4k)`, `k = 0..=10`.
pub fn xi_grid() -> Vec<f64> {
    (0..=10).map(|k| 10f64.powf(-2.0 + 0.4 * k as f64)).collect()
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))
}

/// A cubic file holds either polynomial text or a JSON array of 20 `[re, im]`
/// coefficients.
pub fn read_cubic(path: &Path) -> Result<CubicSurface, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).map_err(|e| Failure::parse(format!("bad cubic JSON: {e}")))
    } else {
        parse_cubic(&text).map_err(Failure::from)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn cubic_value(c: &CubicSurface) -> Value {
    json!({ "text": format_cubic(c), "coefficients": to_value(c) })
}

fn pencil_value(p: &Pencil) -> Value {
    json!({ "c1": cubic_value(&p.c1), "c2": cubic_value(&p.c2) })
}

fn invariants_value(inv: &CrossRatioInvariants) -> Value {
    json!({
        "alpha": to_value(&inv.alpha),
        "alpha_prime": to_value(&inv.alpha_prime),
        "beta": to_value(&inv.beta),
        "beta_prime": to_value(&inv.beta_prime),
        "conjugate": inv.is_conjugate(1e-7),
    })
}

pub fn construct(points: &Path, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let text = read(points)?;
    let five: FivePointConfig =
        serde_json::from_str(&text).map_err(|e| Failure::parse(format!("bad points JSON: {e}")))?;
    let adm = admissibility(&five)?;
    if !adm.admissible {
        let report = match cfg.format {
            Format::Json => pretty(&json!({ "points": to_value(&five), "admissibility": to_value(&adm) })),
            Format::Csv => {
                let subset = adm.failing_subset.map(|s| s.map(|i| i.to_string()).join(" ")).unwrap_or_default();
                format!(
                    "admissible,min_arg_sine,marginal,failing_subset\nfalse,{:?},{},{subset}\n",
                    adm.min_arg_sine, adm.marginal
                )
            }
        };
        return Ok(Outcome { report, code: EXIT_INADMISSIBLE });
    }
    let seven = lines_from_points(&five)?;
    let inv = invariants_from_config(&seven)?;
    let pencil = pencil_explicit(&inv)?;
    let span = pencil_nullspace(&seven).map(|q| pencil.span_distance(&q));
    let residual = pencil.max_residual(&seven.all_lines());
    let mut sweep = Vec::new();
    for t in xi_grid() {
        let c = pencil.member(ExtComplex::Finite(C64::new(t, 0.0)));
        let xi = xi_invariant(&c).ok();
        let xi_literal = xi_invariant_literal(&c).ok();
        let nonsingular = certify_nonsingular(&c, None, &cfg.singular);
        sweep.push((t, xi, xi_literal, nonsingular));
    }
    let report = match cfg.format {
        Format::Json => pretty(&json!({
            "points": to_value(&five),
            "admissibility": to_value(&adm),
            "normalized": five.normalized().ok().map(|(a, b)| json!({ "alpha": to_value(&a), "beta": to_value(&b) })),
            "invariants": invariants_value(&inv),
            "seven_lines": to_value(&seven),
            "pencil": pencil_value(&pencil),
            "max_line_residual": residual,
            "nullspace_span_distance": span.as_ref().ok(),
            "xi_sweep": sweep.iter().map(|(t, xi, lit, ns)| json!({
                "t": t, "xi": xi, "xi_literal": lit, "nonsingular": ns,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("t,xi,xi_literal,nonsingular\n");
            for (t, xi, lit, ns) in &sweep {
                let f = |x: &Option<f64>| x.map(|v| format!("{v:?}")).unwrap_or_default();
                writeln!(s, "{t:?},{},{},{ns}", f(xi), f(lit)).unwrap();
            }
            s
        }
    };
    Ok(Outcome { report, code: 0 })
}

/// Runs the line solver; on a shortfall returns the report to emit instead.
fn lines_or_shortfall(c: &CubicSurface, cfg: &RunConfig) -> Result<Result<LineSet27, Outcome>, Failure> {
    match find_lines(c, &cfg.solver) {
        Ok(ls) => Ok(Ok(ls)),
        Err(Error::WrongLineCount { found }) => {
            let report = match cfg.format {
                Format::Json => pretty(&json!({ "cubic": cubic_value(c), "lines_found": found, "expected": 27 })),
                Format::Csv => format!("lines_found,expected\n{found},27\n"),
            };
            Ok(Err(Outcome { report, code: EXIT_SHORTFALL }))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn lines(path: &Path, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let c = read_cubic(path)?;
    let ls = match lines_or_shortfall(&c, cfg)? {
        Ok(ls) => ls,
        Err(o) => return Ok(o),
    };
    let lab = schlafli_label(&ls)?;
    let report = match cfg.format {
        Format::Json => pretty(&json!({
            "cubic": cubic_value(&c),
            "nonsingular": certify_nonsingular(&c, Some(ls.lines()), &cfg.singular),
            "counts": {
                "lines": ls.len(),
                "neighbours_per_line": (0..ls.len()).map(|i| ls.adjacency()[i].iter().filter(|b| **b).count()).collect::<Vec<_>>(),
                "skew_sextuples": ls.skew_sextuples().len(),
                "double_sixes": ls.double_sixes().len(),
            },
            "line_set": to_value(&LineSetRecord::new(&ls, Some(&lab))),
        })),
        Format::Csv => roadmap_csv(&ls, &lab),
    };
    Ok(Outcome { report, code: 0 })
}

fn detection_csv(ls: &LineSet27, report: &DetectionReport) -> String {
    let mut s = String::from(
        "line_i,line_j,transversals,verdict,alpha_re,alpha_im,alpha_prime_re,alpha_prime_im,beta_re,beta_im,beta_prime_re,beta_prime_im\n",
    );
    for r in &report.pairs {
        let t = r.transversals.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
        write!(s, "{},{},{t},{}", r.pair[0], r.pair[1], r.verdict).unwrap();
        match &r.invariants {
            Some(inv) => {
                for z in [inv.alpha, inv.alpha_prime, inv.beta, inv.beta_prime] {
                    write!(s, ",{:?},{:?}", z.re, z.im).unwrap();
                }
            }
            None => s.push_str(",,,,,,,,"),
        }
        s.push('\n');
    }
    debug_assert_eq!(report.pairs.len(), ls.skew_pairs().len());
    s
}

pub fn detect(path: &Path, structure: Option<&Path>, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let c = read_cubic(path)?;
    let j: Option<TwistorStructure> = match structure {
        Some(p) => {
            Some(serde_json::from_str(&read(p)?).map_err(|e| Failure::parse(format!("bad structure JSON: {e}")))?)
        }
        None => None,
    };
    let ls = match lines_or_shortfall(&c, cfg)? {
        Ok(ls) => ls,
        Err(o) => return Ok(o),
    };
    let report = detect_five(&ls)?;
    let given = j.as_ref().map(|j| {
        let fibres = twistor_fibres(&ls, j);
        let labels = label_five_fibres(&ls, &fibres)
            .ok()
            .map(|lab| fibres.iter().map(|&i| lab.label(i).to_string()).collect::<Vec<_>>());
        json!({ "fibre_count": fibres.len(), "fibres": fibres, "labels": labels })
    });
    let out = match cfg.format {
        Format::Json => pretty(&json!({
            "cubic": cubic_value(&c),
            "nonsingular": certify_nonsingular(&c, Some(ls.lines()), &cfg.singular),
            "lines": to_value(&LineSetRecord::new(&ls, None)),
            "detection": to_value(&report),
            "given_structure": given,
        })),
        Format::Csv => detection_csv(&ls, &report),
    };
    Ok(Outcome { report: out, code: 0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CaseStudy {
    Fermat,
    Clebsch,
    Symmetric,
}

struct Claim {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn claim(name: &'static str, pass: bool, detail: impl Into<String>) -> Claim {
    Claim { name, pass, detail: detail.into() }
}

fn fermat_claims(cfg: &RunConfig, extra: &mut Value) -> Result<Vec<Claim>, Failure> {
    let ls = find_lines(&CubicSurface::fermat(), &cfg.solver)?;
    let worst = fermat_lines()
        .iter()
        .map(|l| ls.lines().iter().map(|m| m.distance(l)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let counts = fermat_symmetry_count();
    let cases = fermat_case_check(&ls);
    let report = detect_five(&ls)?;
    let standard = twistor_fibres(&ls, &TwistorStructure::standard()).len();
    extra["standard_structure_fibres"] = json!(standard);
    extra["qualifying_pairs"] = json!(report.qualifying().map(|r| r.pair).collect::<Vec<_>>());
    Ok(vec![
        claim("27 lines match the closed form", worst < 1e-7, format!("worst distance {worst:.2e}")),
        claim(
            "symmetry count (648, 12, 54)",
            (counts.total, counts.conformal_stabilizer, counts.components) == (648, 12, 54),
            format!("({}, {}, {})", counts.total, counts.conformal_stabilizer, counts.components),
        ),
        claim(
            "named pair fails the conjugacy test",
            !cases.negative.verdict,
            format!("pair {:?}", cases.negative.pair),
        ),
        claim(
            "pair (b5, b6) passes the conjugacy test",
            cases.positive.verdict,
            format!("pair {:?}", cases.positive.pair),
        ),
        claim(
            "54 qualifying skew pairs",
            report.summary.qualifying_pairs == 54,
            format!("{} of {}", report.summary.qualifying_pairs, report.summary.skew_pairs),
        ),
    ])
}

fn clebsch_claims(cfg: &RunConfig, _extra: &mut Value) -> Result<Vec<Claim>, Failure> {
    let c = CubicSurface::clebsch();
    let ls = find_lines(&c, &cfg.solver)?;
    let report = detect_five(&ls)?;
    Ok(vec![
        claim("nonsingular", certify_nonsingular(&c, Some(ls.lines()), &cfg.singular), "27 lines found"),
        claim(
            "no skew pair qualifies",
            report.summary.qualifying_pairs == 0,
            format!("{} of {}", report.summary.qualifying_pairs, report.summary.skew_pairs),
        ),
    ])
}

fn symmetric_claims(cfg: &RunConfig, extra: &mut Value) -> Result<Vec<Claim>, Failure> {
    let c = CubicSurface::symmetric_five_fibre();
    let xi = xi_invariant(&c)?;
    let w = omega();
    let pencil = pencil_explicit(&CrossRatioInvariants { alpha: w, beta: w * w, alpha_prime: w * w, beta_prime: w })?;
    let d = pencil.distance_to(&c);
    let ls = find_lines(&c, &cfg.solver)?;
    let j = TwistorStructure::standard();
    let fibres = twistor_fibres(&ls, &j);
    let mut labels: Vec<String> = label_five_fibres(&ls, &fibres)
        .map(|lab| fibres.iter().map(|&i| lab.label(i).to_string()).collect())
        .unwrap_or_default();
    labels.sort();
    extra["fibre_labels"] = json!(labels);
    Ok(vec![
        claim("xi = 1", (xi - 1.0).abs() < 1e-9, format!("xi = {xi:?}")),
        claim("member of the cube-root pencil", d < 1e-10, format!("distance {d:.2e}")),
        claim("five fibres under the standard structure", fibres.len() == 5, format!("{} fibres", fibres.len())),
        claim("fibres are a1, a2, a3, a4, c56", labels == ["a1", "a2", "a3", "a4", "c56"], labels.join(" ")),
        claim("structure exchanges b5 and b6", j_pairing_check(&ls, &j), ""),
    ])
}

pub fn casestudy(name: CaseStudy, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let mut extra = json!({});
    let (label, claims) = match name {
        CaseStudy::Fermat => ("fermat", fermat_claims(cfg, &mut extra)?),
        CaseStudy::Clebsch => ("clebsch", clebsch_claims(cfg, &mut extra)?),
        CaseStudy::Symmetric => ("symmetric", symmetric_claims(cfg, &mut extra)?),
    };
    let all = claims.iter().all(|c| c.pass);
    let report = match cfg.format {
        Format::Json => pretty(&json!({
            "case": label,
            "claims": claims.iter().map(|c| json!({ "claim": c.name, "pass": c.pass, "detail": c.detail })).collect::<Vec<_>>(),
            "all_pass": all,
            "data": extra,
        })),
        Format::Csv => {
            let mut s = String::from("claim,pass,detail\n");
            for c in &claims {
                writeln!(s, "{},{},{}", c.name.replace(',', ""), c.pass, c.detail.replace(',', ";")).unwrap();
            }
            s
        }
    };
    Ok(Outcome { report, code: if all { 0 } else { EXIT_CLAIM } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xi_grid_is_logarithmic() {
        let g = xi_grid();
        assert_eq!(g.len(), 11);
        assert!((g[0] - 0.01).abs() < 1e-15 && (g[10] - 100.0).abs() < 1e-9);
        for w in g.windows(2) {
            assert!((w[1] / w[0] - 10f64.powf(0.4)).abs() < 1e-12);
        }
    }
}
