use ellipsoidal_core::linf::linf_wt_t;
use ellipsoidal_core::numerics::int;
use ellipsoidal_core::superpotential::{
    breakpoints, cross_validate, integrality_scan, movable_factor_infinity, path_prefix,
    recursion_on_path, recursion_wt_t, scan_monotonicity, superpotential, tree_terms, tree_wt_t,
    tree_wt_t_infinity, InnerSum, Method, SuperpotentialResult,
};
use ellipsoidal_core::{AspectRatio, Rational};
use num_traits::{Signed, Zero};

fn plus_delta(p: u64, q: u64) -> AspectRatio {
    AspectRatio::plus_delta(p, q).unwrap()
}

fn listed() -> Vec<AspectRatio> {
    let mut v = vec![AspectRatio::Infinity];
    v.extend(
        [(1, 1), (3, 2), (2, 1), (5, 2), (7, 2), (5, 1), (100, 1)].map(|(p, q)| plus_delta(p, q)),
    );
    v
}

#[test]
fn recursion_matches_tree_formula() {
    for a in listed() {
        for d in 1..=7 {
            assert_eq!(
                recursion_wt_t(d, a, InnerSum::Ordered).unwrap(),
                tree_wt_t(d, a).unwrap(),
                "d={d} a={a}"
            );
        }
    }
}

#[test]
fn linf_matches_tree_formula() {
    for a in listed() {
        for d in 1..=4 {
            assert_eq!(
                linf_wt_t(d, a, InnerSum::Ordered).unwrap(),
                tree_wt_t(d, a).unwrap(),
                "d={d} a={a}"
            );
        }
    }
}

#[test]
fn inner_sums_agree() {
    for a in [AspectRatio::Infinity, plus_delta(3, 2), plus_delta(7, 2)] {
        for d in 1..=7 {
            assert_eq!(
                recursion_wt_t(d, a, InnerSum::Ordered).unwrap(),
                recursion_wt_t(d, a, InnerSum::Multiset).unwrap(),
                "d={d} a={a}"
            );
        }
    }
}

#[test]
fn specialization_at_infinity() {
    for d in 1..=10 {
        assert_eq!(
            tree_wt_t_infinity(d).unwrap(),
            tree_wt_t(d, AspectRatio::Infinity).unwrap(),
            "d={d}"
        );
    }
}

#[test]
fn known_values_at_infinity() {
    let want = [2, 5, 32, 286, 3038, 35870, 454880];
    for (d, w) in (1..).zip(want) {
        assert_eq!(tree_wt_t_infinity(d).unwrap(), int(w));
    }
}

#[test]
fn normalization_at_infinity() {
    for d in 1..=8 {
        let r = superpotential(d, AspectRatio::Infinity, Method::Tree, 0).unwrap();
        assert_eq!(r.mult, 3 * d as u64 - 1);
        assert_eq!(&r.t * int(r.mult as i64), r.wt_t);
    }
}

#[test]
fn sign_structure_for_a_at_least_two() {
    for l in 2..=30 {
        assert!(movable_factor_infinity(l).is_positive(), "l={l}");
    }
    for a in [
        AspectRatio::Infinity,
        plus_delta(2, 1),
        plus_delta(5, 2),
        plus_delta(100, 1),
    ] {
        for d in 1..=6 {
            for term in tree_terms(d, a).unwrap() {
                let unmovable = term
                    .tree
                    .vertex_data()
                    .iter()
                    .filter(|v| !v.movable)
                    .count();
                if term.value.is_zero() {
                    continue;
                }
                let expected = if unmovable % 2 == 0 { 1 } else { -1 };
                assert_eq!(term.sign, expected, "{} at a={a}", term.tree);
                assert_eq!(
                    term.value.is_positive(),
                    expected > 0,
                    "{} at a={a}",
                    term.tree
                );
            }
        }
    }
}

#[test]
fn equal_prefixes_give_equal_values() {
    let fractions = [
        (7, 3),
        (12, 5),
        (5, 2),
        (13, 5),
        (18, 7),
        (8, 3),
        (3, 1),
        (31, 10),
    ];
    for d in 1..=5 {
        for &(p, q) in &fractions {
            for &(r, s) in &fractions {
                let (a, b) = (plus_delta(p, q), plus_delta(r, s));
                if path_prefix(a, d) == path_prefix(b, d) {
                    assert_eq!(tree_wt_t(d, a).unwrap(), tree_wt_t(d, b).unwrap());
                    assert_eq!(
                        recursion_wt_t(d, a, InnerSum::Ordered).unwrap(),
                        recursion_wt_t(d, b, InnerSum::Ordered).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn recursion_on_explicit_path() {
    let a = plus_delta(3, 2);
    let path = path_prefix(a, 4);
    assert_eq!(path.len(), 12);
    assert_eq!(
        recursion_on_path(&path, 4, InnerSum::Ordered),
        tree_wt_t(4, a).unwrap()
    );
}

#[test]
fn cross_validation_reports_all_methods() {
    let r = cross_validate(3, AspectRatio::Infinity, 6).unwrap();
    assert_eq!(r.wt_t, int(32));
    assert_eq!(r.runs.len(), 4);
    let r = cross_validate(5, plus_delta(3, 2), 4).unwrap();
    assert_eq!(r.runs.len(), 2);
}

#[test]
fn scan_prefix_invariance_and_shape() {
    for d in 1..=4 {
        let m = scan_monotonicity(d).unwrap();
        assert_eq!(m.intervals.len(), breakpoints(3 * d as u64).len() + 1);
        assert!(m.intervals.iter().all(|iv| iv.probe_agrees), "d={d}");
    }
    let flat = scan_monotonicity(1).unwrap();
    assert!(flat.intervals.iter().all(|iv| iv.t == int(1)));
}

#[test]
fn integrality_reports() {
    for d in 1..=5 {
        let r = integrality_scan(d).unwrap();
        assert!(r.all_nonnegative_integers, "d={d}");
        for row in &r.rows {
            assert_eq!(row.p + row.q, 3 * d as u64);
            assert!(row.p > row.q);
        }
    }
}

#[test]
fn results_round_trip_through_json() {
    for a in [AspectRatio::Infinity, plus_delta(5, 2)] {
        let r = superpotential(4, a, Method::Recursion, 0).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: SuperpotentialResult = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        let t: Rational =
            ellipsoidal_core::numerics::parse_rational(v["T"].as_str().unwrap()).unwrap();
        assert_eq!(t, r.t);
    }
}
