use proptest::prelude::*;
use twistor_core::cubic::contains_line;
use twistor_core::detect::{fermat_lines, fermat_seven_lines};
use twistor_core::lines27::*;
use twistor_core::proj::{line_equal, lines_meet, ProjLine};
use twistor_core::CubicSurface;

fn fermat_set() -> LineSet27 {
    find_lines(&CubicSurface::fermat(), &LineSolverConfig::default()).unwrap()
}

#[test]
fn numeric_fermat_lines_match_closed_form() {
    let ls = fermat_set();
    let exact = fermat_lines();
    for l in &exact {
        let best = ls.lines().iter().map(|m| m.distance(l)).fold(f64::INFINITY, f64::min);
        assert!(best < 1e-7, "{best}");
    }
    for l in ls.lines() {
        assert!(contains_line(&CubicSurface::fermat(), l));
    }
}

#[test]
fn closed_form_graph_counts() {
    let ls = intersection_graph(&fermat_lines()).unwrap();
    for i in 0..27 {
        assert_eq!((0..27).filter(|&j| ls.meet(i, j)).count(), NEIGHBOURS_PER_LINE);
    }
    assert_eq!(ls.skew_sextuples().len(), SKEW_SEXTUPLES);
    assert_eq!(ls.double_sixes().len(), DOUBLE_SIXES);
}

#[test]
fn same_seed_same_output() {
    let a = serde_json::to_string(&LineSetRecord::new(&fermat_set(), None)).unwrap();
    let b = serde_json::to_string(&LineSetRecord::new(&fermat_set(), None)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn record_round_trip() {
    let ls = fermat_set();
    let lab = schlafli_label(&ls).unwrap();
    let rec = LineSetRecord::new(&ls, Some(&lab));
    let json = serde_json::to_string(&rec).unwrap();
    let back: LineSetRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back.labels.as_ref().unwrap().len(), 27);
    let ls2 = back.into_line_set().unwrap();
    assert_eq!(ls2.adjacency_bits(), ls.adjacency_bits());
}

#[test]
fn labeling_satisfies_rules() {
    let ls = fermat_set();
    let lab = schlafli_label(&ls).unwrap();
    assert!(verify_schlafli_rules(&ls, &lab));
    assert!(!verify_schlafli_rules(&ls, &lab.swapped(Label::A(1), Label::B(1))));
    let csv = roadmap_csv(&ls, &lab);
    assert_eq!(csv.lines().count(), 28);
    assert!(csv.starts_with("label,a1,a2"));
}

#[test]
fn transversals_of_table_lines() {
    let s = fermat_seven_lines();
    let [t1, t2] = transversals_of_four([&s[2], &s[3], &s[4], &s[5]]).unwrap();
    let hit = |x: &ProjLine| line_equal(x, &s[0]) || line_equal(x, &s[1]);
    assert!(hit(&t1) && hit(&t2) && !line_equal(&t1, &t2));
    let [u1, u2] = transversals_of_four([&s[5], &s[3], &s[2], &s[4]]).unwrap();
    assert!((line_equal(&u1, &t1) && line_equal(&u2, &t2)) || (line_equal(&u1, &t2) && line_equal(&u2, &t1)));
}

#[test]
fn ruled_cubic_has_wrong_count() {
    let ruled = CubicSurface::from_terms(&[
        (twistor_core::C64::new(1.0, 0.0), [2, 2, 3]),
        (twistor_core::C64::new(-1.0, 0.0), [1, 4, 4]),
    ])
    .unwrap();
    let cfg = LineSolverConfig { starts_per_chart: 200, extra_rounds: 0, ..Default::default() };
    assert!(matches!(find_lines(&ruled, &cfg), Err(twistor_core::Error::WrongLineCount { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn relabeling_under_permuted_input(perm in Just((0..27usize).collect::<Vec<_>>()).prop_shuffle()) {
        let lines = fermat_lines();
        let shuffled: Vec<ProjLine> = perm.iter().map(|&i| lines[i]).collect();
        let ls = intersection_graph(&shuffled).unwrap();
        let lab = schlafli_label(&ls).unwrap();
        prop_assert!(verify_schlafli_rules(&ls, &lab));
    }

    #[test]
    fn transversals_meet_all_four(choice in prop::sample::subsequence((0..27usize).collect::<Vec<_>>(), 4)) {
        let ls = intersection_graph(&fermat_lines()).unwrap();
        prop_assume!(choice.iter().enumerate().all(|(k, &i)| choice[..k].iter().all(|&j| !ls.meet(i, j))));
        let l: Vec<&ProjLine> = choice.iter().map(|&i| &ls.lines()[i]).collect();
        if let Ok(ts) = transversals_of_four([l[0], l[1], l[2], l[3]]) {
            for t in &ts {
                prop_assert!(l.iter().all(|x| lines_meet(x, t)));
            }
        }
    }
}
