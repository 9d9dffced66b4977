use fibshift::{build_lsd, build_msd, Dfao};

#[test]
fn dot_matches_golden_file() {
    let m = build_lsd(10).unwrap().0;
    assert_eq!(m.export_dot(), include_str!("data/lsd_c10.dot"));
    assert_eq!(m.export_dot(), build_lsd(10).unwrap().0.export_dot());
}

#[test]
fn walnut_matches_golden_file() {
    let m = build_msd(10).unwrap().0;
    assert_eq!(m.export_walnut(), include_str!("data/msd_c10.txt"));
    let back = Dfao::parse_walnut(include_str!("data/msd_c10.txt")).unwrap();
    assert_eq!(back.equivalent(&m).unwrap(), None);
}

#[test]
fn walnut_round_trip() {
    for c in (0..=300u64).chain([987, 1596, 4181, 99_999]) {
        for m in [build_lsd(c).unwrap().0, build_msd(c).unwrap().0] {
            let text = m.export_walnut();
            let back = Dfao::parse_walnut(&text).unwrap();
            assert_eq!(back.len(), m.len(), "c={c}");
            assert_eq!(back.order(), m.order());
            assert_eq!(back.equivalent(&m).unwrap(), None, "c={c}");
            assert_eq!(back.export_walnut(), text, "c={c}");
            let min = m.minimize();
            assert_eq!(Dfao::parse_walnut(&min.export_walnut()).unwrap().equivalent(&min).unwrap(), None);
        }
    }
}

#[test]
fn dot_lists_every_state_and_edge() {
    let m = build_msd(10).unwrap().0;
    let dot = m.export_dot();
    assert_eq!(dot.matches("shape=circle").count(), m.len());
    let edges: usize = m.states().iter().map(|s| s.next.iter().flatten().count()).sum();
    assert_eq!(dot.matches("label=\"").count(), m.len() + edges);
}

#[test]
fn malformed_walnut_is_rejected() {
    for bad in ["", "base3\n\n0 0\n", "msd_fib\n\n0 0\n0 -> 7\n", "lsd_fib\n\n0 x\n"] {
        assert!(Dfao::parse_walnut(bad).is_err(), "{bad:?}");
    }
}
