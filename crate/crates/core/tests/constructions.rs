mod common;

use fibshift::builders::{build_lsd, build_msd, lsd_k, msd_state_bound, predicted_lsd_states, shift_interval};
use fibshift::fibword::{FibWordMethod, Morphic};
use fibshift::zeckendorf::is_fibonacci;
use fibshift::Order;
use rayon::prelude::*;

#[test]
fn lsd_c10_matches_reference() {
    let (m, _) = build_lsd(10).unwrap();
    assert!(m.isomorphism(&common::reference_lsd10()).is_some());
    assert_eq!(m.minimize().len(), 13);
    assert_eq!(m.equivalent(&common::reference_lsd10()).unwrap(), None);
    assert_eq!(common::agree_up_to(&m, &common::reference_lsd10(), 10_000), None);
}

#[test]
fn msd_c10_matches_reference() {
    let (m, trace) = build_msd(10).unwrap();
    assert!(common::matches_msd10(&m));
    assert!(m.isomorphism(&common::reference_msd10()).is_some());
    for end in [-11, -12] {
        assert!(trace.partition.has_endpoint(end));
    }
}

#[test]
fn base_cases_match_small_automata() {
    let lsd = build_lsd(0).unwrap().0.minimize();
    let msd = build_msd(0).unwrap().0.minimize();
    assert!(lsd.isomorphism(&common::base_lsd()).is_some());
    assert!(msd.isomorphism(&common::base_msd()).is_some());
}

#[test]
fn distinct_shifts_are_distinguished() {
    let a = build_lsd(0).unwrap().0;
    let b = build_lsd(1).unwrap().0;
    let w = a.equivalent(&b).unwrap().expect("different sequences");
    assert_ne!(a.eval(&w).unwrap(), b.eval(&w).unwrap());
    assert_eq!(w, vec![]);
}

#[test]
fn both_orders_agree_with_the_word() {
    let word = Morphic::new().prefix(400 + 10_000);
    (0..=400u64).into_par_iter().for_each(|c| {
        let lsd = build_lsd(c).unwrap().0;
        let msd = build_msd(c).unwrap().0;
        for n in 0..10_000u64 {
            let want = word[(c + n) as usize];
            assert_eq!(lsd.eval_int(n), want, "lsd c={c} n={n}");
            assert_eq!(msd.eval_int(n), want, "msd c={c} n={n}");
        }
    });
}

#[test]
fn lsd_levels_and_sinks() {
    for c in 0..=2000u64 {
        let (m, trace) = build_lsd(c).unwrap();
        let k = trace.k;
        assert_eq!(k, lsd_k(c));
        assert!(m.len() <= 2 * k + 3, "c={c}");
        assert!(trace.levels.iter().all(|l| l.len() <= 2), "c={c}: {:?}", trace.levels);
        assert!(trace.critical_strings().all(|x| x.len() < k), "c={c}");
    }
}

/// The strings with no intermediate child.
fn leaves(strings: &[&str]) -> Vec<String> {
    strings
        .iter()
        .filter(|x| !strings.iter().any(|y| y.len() == x.len() + 1 && y.starts_with(**x)))
        .map(|x| x.to_string())
        .collect()
}

fn is_zeros(x: &str) -> bool {
    x.bytes().all(|b| b == b'0')
}

fn is_alternating(x: &str) -> bool {
    let rest = x.strip_prefix('0').unwrap_or(x);
    rest.len() % 2 == 0 && rest.as_bytes().chunks(2).all(|p| p == b"10")
}

#[test]
fn one_merge_exactly_when_c_plus_one_is_fibonacci() {
    for c in 5..=2000u64 {
        let (m, trace) = build_lsd(c).unwrap();
        let min = m.minimize();
        assert_eq!(min.len(), predicted_lsd_states(c).unwrap(), "c={c}");
        let merged = m.len() - min.len();
        if is_fibonacci(c as i64 + 1) {
            assert_eq!(merged, 1, "c={c}");
            let strings: Vec<&str> = trace.critical_strings().collect();
            let ends = leaves(&strings);
            assert_eq!(ends.len(), 2, "c={c}: {ends:?}");
            assert!(ends.iter().any(|x| is_zeros(x)), "c={c}: {ends:?}");
            assert!(ends.iter().any(|x| !is_zeros(x) && is_alternating(x)), "c={c}: {ends:?}");
        } else {
            assert_eq!(merged, 0, "c={c}");
        }
    }
}

#[test]
fn lsd_runs_reach_a_sink_within_k_minus_one_digits() {
    for c in [0u64, 5, 10, 12, 100, 987, 2000] {
        let (m, trace) = build_lsd(c).unwrap();
        let first_sink = m.len() - 4;
        for n in 0..5000u64 {
            let mut digits = fibshift::zeckendorf::encode(n).digits().to_vec();
            digits.reverse();
            if digits.len() < trace.k {
                continue;
            }
            let q = m.run(&digits[..trace.k - 1]).unwrap();
            assert!(q >= first_sink, "c={c} n={n}");
        }
    }
}

#[test]
fn msd_state_accounting() {
    for c in 0..=2000u64 {
        let (m, trace) = build_msd(c).unwrap();
        assert_eq!(m.len(), trace.partition.len());
        assert!(m.len() <= msd_state_bound(c).unwrap(), "c={c}");
        assert_eq!(trace.substituted_base, c == 0);
        let reach = m.reachable();
        let unreachable: Vec<usize> = (0..m.len()).filter(|&q| !reach[q]).collect();
        assert_eq!(trace.unreachable, unreachable);
        if c > 0 {
            let jc = shift_interval(c);
            assert!(trace.partition.has_endpoint(jc.left.n()) && trace.partition.has_endpoint(jc.right.n()));
        }
    }
}

#[test]
fn reading_orders_differ_only_in_direction() {
    for c in [3u64, 10, 77] {
        let lsd = build_lsd(c).unwrap().0;
        let msd = build_msd(c).unwrap().0;
        assert_eq!(lsd.order(), Order::Lsd);
        assert_eq!(msd.order(), Order::Msd);
        assert!(lsd.equivalent(&msd).is_err());
    }
}
