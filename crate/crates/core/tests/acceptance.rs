//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use nalgebra::Matrix4;
use rand::Rng;
use twistor_core::construct::*;
use twistor_core::cubic::{certify_nonsingular, containment_residual, SingularSearch};
use twistor_core::detect::*;
use twistor_core::lines27::*;
use twistor_core::proj::*;
use twistor_core::sampling::{complex_gaussian, rng, SolverRng};
use twistor_core::{CubicSurface, C64};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn solver() -> LineSolverConfig {
    LineSolverConfig::default()
}

fn random_member(r: &mut SolverRng) -> (FivePointConfig, SevenLineConfig, CubicSurface) {
    let cfg = random_admissible(r);
    let seven = lines_from_points(&cfg).unwrap();
    let pencil = pencil_explicit(&invariants_from_config(&seven).unwrap()).unwrap();
    let c = pencil.member(ExtComplex::Finite(complex_gaussian(r, 1.0)));
    (cfg, seven, c)
}

fn graph_counts(ls: &LineSet27) -> (Vec<usize>, usize, usize) {
    let degrees = (0..ls.len()).map(|i| (0..ls.len()).filter(|&j| ls.meet(i, j)).count()).collect();
    (degrees, ls.skew_sextuples().len(), ls.double_sixes().len())
}

fn c1_fermat_oracle() -> Outcome {
    let t = Instant::now();
    let ls = find_lines(&CubicSurface::fermat(), &solver()).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let mut worst: f64 = 0.0;
    for l in fermat_lines() {
        worst = worst.max(ls.lines().iter().map(|m| m.distance(&l)).fold(f64::INFINITY, f64::min));
    }
    ensure(ls.len() == 27, "line count")?;
    ensure(worst < 1e-7, format!("worst Plücker distance {worst:.2e}"))?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("worst distance {worst:.1e}, {:.2}s", elapsed.as_secs_f64()))
}

fn c2_schlafli_counts() -> Outcome {
    let mut r = rng(2);
    let mut cubics = vec![CubicSurface::fermat(), CubicSurface::symmetric_five_fibre()];
    cubics.extend((0..20).map(|_| random_member(&mut r).2));
    for (k, c) in cubics.iter().enumerate() {
        let ls = find_lines(c, &solver()).map_err(|e| format!("cubic {k}: {e}"))?;
        let (deg, sext, ds) = graph_counts(&ls);
        ensure(ls.len() == 27, format!("cubic {k}: {} lines", ls.len()))?;
        ensure(deg.iter().all(|&d| d == 10), format!("cubic {k}: degrees {deg:?}"))?;
        ensure(sext == 72, format!("cubic {k}: {sext} skew sextuples"))?;
        ensure(ds == 36, format!("cubic {k}: {ds} double sixes"))?;
    }
    Ok(format!("{} cubics: 27 lines, 10-regular, 72 sextuples, 36 double sixes", cubics.len()))
}

fn c3_pencil_containment() -> Outcome {
    let mut r = rng(3);
    let (mut worst_res, mut worst_span): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let cfg = random_admissible(&mut r);
        let (a, b) = cfg.normalized().unwrap();
        let seven = lines_from_points(&FivePointConfig::normalized_from(a, b).unwrap()).unwrap();
        let lines = seven.all_lines();
        let p = pencil_explicit(&CrossRatioInvariants::twistor(a, b)).map_err(|e| e.to_string())?;
        worst_res = worst_res.max(p.max_residual(&lines));
        for _ in 0..10 {
            let m = p.member(ExtComplex::Finite(complex_gaussian(&mut r, 2.0)));
            worst_res = worst_res.max(lines.iter().map(|l| containment_residual(&m, l)).fold(0.0, f64::max));
        }
        let q = pencil_nullspace(&seven).map_err(|e| e.to_string())?;
        worst_span = worst_span.max(p.span_distance(&q));
    }
    ensure(worst_res < 1e-9, format!("containment residual {worst_res:.2e}"))?;
    ensure(worst_span < 1e-8, format!("span distance {worst_span:.2e}"))?;
    Ok(format!("residual {worst_res:.1e}, span distance {worst_span:.1e}"))
}

fn c4_cube_roots() -> Outcome {
    let w = omega();
    let inv = CrossRatioInvariants { alpha: w, beta: w * w, alpha_prime: w * w, beta_prime: w };
    let p = pencil_explicit(&inv).map_err(|e| e.to_string())?;
    let one = C64::new(1.0, 0.0);
    let target = Pencil {
        c1: CubicSurface::from_terms(&[(one, [2, 3, 3]), (-one, [1, 1, 4])]).unwrap(),
        c2: CubicSurface::from_terms(&[(one, [2, 2, 3]), (-one, [1, 4, 4])]).unwrap(),
    };
    let d = p.span_distance(&target);
    let s6 = p.distance_to(&CubicSurface::symmetric_five_fibre());
    ensure(d < 1e-10, format!("span distance {d:.2e}"))?;
    ensure(s6 < 1e-10, format!("symmetric cubic off the pencil by {s6:.2e}"))?;
    Ok(format!("span distance {d:.1e}, symmetric cubic distance {s6:.1e}"))
}

fn c5_five_fibres() -> Outcome {
    let ls = find_lines(&CubicSurface::symmetric_five_fibre(), &solver()).map_err(|e| e.to_string())?;
    let j = TwistorStructure::standard();
    let f = twistor_fibres(&ls, &j);
    ensure(f.len() == 5, format!("{} fibres", f.len()))?;
    let lab = label_five_fibres(&ls, &f).map_err(|e| e.to_string())?;
    let mut got: Vec<String> = f.iter().map(|&i| lab.label(i).to_string()).collect();
    got.sort();
    ensure(got == ["a1", "a2", "a3", "a4", "c56"], format!("labels {got:?}"))?;
    ensure(verify_schlafli_rules(&ls, &lab), "labeling breaks the rules")?;
    ensure(j_pairing_check(&ls, &j), "structure does not swap b5 and b6")?;
    Ok(format!("fibres labeled {}", got.join(",")))
}

fn random_structure(r: &mut SolverRng) -> TwistorStructure {
    let t = Matrix4::from_fn(|i, k| {
        complex_gaussian(r, 0.5) + if i == k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
    });
    conjugate_structure(&ProjTransform::new(t).unwrap(), &TwistorStructure::standard())
}

fn c6_bound() -> Outcome {
    let mut r = rng(6);
    let mut corpus = vec![CubicSurface::fermat(), CubicSurface::clebsch(), CubicSurface::symmetric_five_fibre()];
    corpus.extend((0..200).map(|_| random_member(&mut r).2));
    let sing = SingularSearch::default();
    let (mut cubics, mut tested, mut max_seen, mut fives) = (0, 0, 0, 0);
    for (k, c) in corpus.iter().enumerate() {
        let ls = find_lines(c, &solver()).map_err(|e| format!("cubic {k}: {e}"))?;
        if !certify_nonsingular(c, Some(ls.lines()), &sing) {
            return Err(format!("cubic {k} is not certified nonsingular"));
        }
        cubics += 1;
        let mut structures = vec![TwistorStructure::standard()];
        structures.extend((0..3).map(|_| random_structure(&mut r)));
        let report = detect_five(&ls).map_err(|e| e.to_string())?;
        structures.extend(report.summary.structure);
        for j in &structures {
            let n = twistor_fibres(&ls, j).len();
            tested += 1;
            max_seen = max_seen.max(n);
            fives += usize::from(n == 5);
            ensure(n <= 5, format!("cubic {k}: {n} fibres"))?;
        }
    }
    ensure(cubics >= 200, "corpus too small")?;
    Ok(format!("{cubics} cubics, {tested} structures, max {max_seen} fibres ({fives} with 5)"))
}

fn on_circle_through_0_1(r: &mut SolverRng) -> (C64, C64) {
    let y: f64 = r.random_range(-3.0..3.0);
    let centre = C64::new(0.5, y);
    let rad = (0.25 + y * y).sqrt();
    let a = centre + C64::from_polar(rad, r.random_range(0.0..std::f64::consts::TAU));
    let b = centre + C64::from_polar(rad, r.random_range(0.0..std::f64::consts::TAU));
    (a, b)
}

fn c7_circle_criterion() -> Outcome {
    let mut r = rng(7);
    let (mut zeros, mut mismatches) = (0, 0);
    for k in 0..10_000 {
        let (a, b) = match k % 4 {
            0 => on_circle_through_0_1(&mut r),
            1 => (C64::new(r.random_range(-3.0..3.0), 0.0), C64::new(r.random_range(-3.0..3.0), 0.0)),
            _ => (complex_gaussian(&mut r, 2.0), complex_gaussian(&mut r, 2.0)),
        };
        let pts = [ExtComplex::real(0.0), ExtComplex::real(1.0), a.into(), b.into()];
        let Ok(cc) = concircular(pts) else { continue };
        let pz = pascal_determinant(a, b).norm() < 1e-9;
        zeros += usize::from(pz);
        mismatches += usize::from(pz != cc);
    }
    ensure(mismatches == 0, format!("{mismatches} pascal/concircular mismatches"))?;
    let mut gp_mismatch = 0;
    let mut inadmissible = 0;
    for k in 0..1000 {
        let (a, b) = match k % 7 {
            0 => on_circle_through_0_1(&mut r),
            1 => (C64::new(r.random_range(-3.0..3.0), 0.0), complex_gaussian(&mut r, 2.0)),
            2 => (complex_gaussian(&mut r, 2.0), C64::new(r.random_range(-3.0..3.0), 0.0)),
            3 => {
                let b = complex_gaussian(&mut r, 2.0);
                (b * r.random_range(-3.0..3.0), b)
            }
            4 => {
                let b = complex_gaussian(&mut r, 2.0);
                ((b - 1.0) * r.random_range(-3.0..3.0) + 1.0, b)
            }
            _ => (complex_gaussian(&mut r, 2.0), complex_gaussian(&mut r, 2.0)),
        };
        let Ok(cfg) = FivePointConfig::normalized_from(a, b) else { continue };
        let adm = admissible(&cfg);
        inadmissible += usize::from(!adm);
        gp_mismatch += usize::from(six_points_general_position(a, b) != adm);
    }
    ensure(gp_mismatch == 0, format!("{gp_mismatch} general-position/admissibility mismatches"))?;
    Ok(format!("{zeros} concircular of 10000 pairs; {inadmissible} inadmissible of 1000 configs; no mismatches"))
}

fn c8_clebsch() -> Outcome {
    let t = Instant::now();
    let ls = find_lines(&CubicSurface::clebsch(), &solver()).map_err(|e| e.to_string())?;
    let report = detect_five(&ls).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(report.summary.qualifying_pairs == 0, format!("{} qualifying pairs", report.summary.qualifying_pairs))?;
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:?}"))?;
    Ok(format!("0 of {} skew pairs qualify, {:.2}s", report.summary.skew_pairs, elapsed.as_secs_f64()))
}

fn c9_fermat_counting() -> Outcome {
    let c = fermat_symmetry_count();
    ensure((c.total, c.conformal_stabilizer, c.components) == (648, 12, 54), format!("{c:?}"))?;
    ensure(fermat_negative_case(), "named pair passes the conjugacy test")?;
    Ok(format!("({}, {}, {}); named pair fails the conjugacy test", c.total, c.conformal_stabilizer, c.components))
}

fn c10_xi() -> Outcome {
    let mut r = rng(10);
    let rel = |x: f64, y: f64| (x - y).abs() / y.abs().max(f64::MIN_POSITIVE);
    let (mut scale, mut unit, mut ratio): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut distinct = 0;
    for _ in 0..100 {
        let cfg = random_admissible(&mut r);
        let (a, b) = cfg.normalized().unwrap();
        let p = pencil_explicit(&CrossRatioInvariants::twistor(a, b)).unwrap();
        let t = complex_gaussian(&mut r, 1.0);
        let c = p.member(ExtComplex::Finite(t));
        let xi = xi_invariant(&c).map_err(|e| e.to_string())?;
        let s = complex_gaussian(&mut r, 3.0);
        scale = scale.max(rel(xi_invariant(&c.scaled(s).unwrap()).unwrap(), xi));
        let (u, v) = (complex_gaussian(&mut r, 1.0), complex_gaussian(&mut r, 1.0));
        let th = r.random_range(0.0..std::f64::consts::TAU);
        let same = ProjTransform::phi(u, C64::from_polar(u.norm(), th)).unwrap();
        unit = unit.max(rel(xi_invariant(&c.pullback(&same)).unwrap(), xi));
        let phi = ProjTransform::phi(u, v).unwrap();
        ratio = ratio.max(rel(xi_invariant(&c.pullback(&phi)).unwrap(), xi * (u / v).norm()));
        let t2 = t * C64::new(r.random_range(1.1..3.0), 0.0);
        let xi2 = xi_invariant(&p.member(ExtComplex::Finite(t2))).unwrap();
        distinct += usize::from(rel(xi2, xi) > 1e-6);
    }
    ensure(scale < 1e-12, format!("scale error {scale:.2e}"))?;
    ensure(unit < 1e-9, format!("|u|=|v| error {unit:.2e}"))?;
    ensure(ratio < 1e-9, format!("|u/v| error {ratio:.2e}"))?;
    ensure(distinct == 100, format!("only {distinct} of 100 member pairs have distinct xi"))?;
    Ok(format!("scale {scale:.1e}, unit {unit:.1e}, ratio {ratio:.1e}, 100/100 distinct"))
}

fn c11_round_trip() -> Outcome {
    let start = Instant::now();
    let mut r = rng(11);
    for k in 0..50 {
        let (cfg, seven, c) = random_member(&mut r);
        let (alpha, beta) = cfg.normalized().unwrap();
        let t = ProjTransform::new(Matrix4::from_fn(|i, j| {
            complex_gaussian(&mut r, 0.3) + if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
        }))
        .unwrap();
        let moved = c.pullback(&t.inverse());
        let (b5, b6) = (t.apply_line(&seven.b5), t.apply_line(&seven.b6));
        let ls = find_lines(&moved, &solver()).map_err(|e| format!("config {k}: {e}"))?;
        let report = detect_five(&ls).map_err(|e| e.to_string())?;
        let hit = report.qualifying().find(|rec| {
            let (l, m) = (&ls.lines()[rec.pair[0]], &ls.lines()[rec.pair[1]]);
            (line_equal(l, &b5) && line_equal(m, &b6)) || (line_equal(l, &b6) && line_equal(m, &b5))
        });
        let rec = hit.ok_or_else(|| format!("config {k}: (b5, b6) not among qualifying pairs"))?;
        let (p, _) = transversal_points(&ls, rec.pair[0], rec.pair[1]).map_err(|e| e.to_string())?;
        let on = &ls.lines()[rec.pair[0]];
        let (a, b) = if line_equal(on, &b5) { (alpha, beta) } else { (alpha.conj(), beta.conj()) };
        ensure(matches_up_to_relabeling(&p, on, a, b, 1e-7), format!("config {k}: invariants not recovered"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), format!("took {elapsed:?}"))?;
    Ok(format!("50/50 recovered, {:.1}s", elapsed.as_secs_f64()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("27-line oracle", c1_fermat_oracle),
        ("Schlafli counts", c2_schlafli_counts),
        ("pencil containment", c3_pencil_containment),
        ("cube-root pencil", c4_cube_roots),
        ("five fibres, positive", c5_five_fibres),
        ("five fibres, bound", c6_bound),
        ("circle criterion", c7_circle_criterion),
        ("Clebsch negative", c8_clebsch),
        ("Fermat counting", c9_fermat_counting),
        ("xi behavior", c10_xi),
        ("round trip", c11_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({detail})", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
