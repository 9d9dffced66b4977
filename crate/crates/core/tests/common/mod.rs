#![allow(dead_code)]

use fibshift::{Dfao, Order, State};

fn s(output: u8, next0: Option<usize>, next1: Option<usize>, label: &str) -> State {
    State::new(output, next0, next1, label)
}

/// Two states reading msd-first: the last digit read.
pub fn base_msd() -> Dfao {
    Dfao::new(Order::Msd, vec![s(0, Some(0), Some(1), "a"), s(1, Some(0), None, "b")], 0).unwrap()
}

/// Five states reading lsd-first: the first digit read.
pub fn base_lsd() -> Dfao {
    Dfao::new(
        Order::Lsd,
        vec![
            s(0, Some(1), Some(2), "e"),
            s(0, Some(1), Some(3), "0"),
            s(1, Some(4), None, "1"),
            s(0, Some(1), None, "01"),
            s(1, Some(4), Some(2), "10"),
        ],
        0,
    )
    .unwrap()
}

/// The thirteen-state lsd automaton for `f(i + 10)`, transcribed by hand.
pub fn reference_lsd10() -> Dfao {
    let (e, q0, q1, q01, q10, q010, q100, q0100, q1000) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    let (a0, a1, r0, r1) = (9, 10, 11, 12);
    Dfao::new(
        Order::Lsd,
        vec![
            s(0, Some(q0), Some(q1), "q_e"),
            s(0, Some(r0), Some(q01), "q_0"),
            s(0, Some(q10), None, "q_1"),
            s(1, Some(q010), None, "q_01"),
            s(0, Some(q100), Some(a1), "q_10"),
            s(1, Some(q0100), Some(a1), "q_010"),
            s(0, Some(q1000), Some(r1), "q_100"),
            s(1, Some(a0), Some(r1), "q_0100"),
            s(0, Some(r0), Some(a1), "q_1000"),
            s(1, Some(a0), Some(a1), "A0"),
            s(1, Some(a0), None, "A1"),
            s(0, Some(r0), Some(r1), "R0"),
            s(0, Some(r0), None, "R1"),
        ],
        e,
    )
    .unwrap()
}

/// The msd automaton for `f(i + 10)` as `(interval label, output, target on 0, target on 1)`.
pub const MSD10_TABLE: [(&str, u8, &str, Option<&str>); 8] = [
    ("[-8phi, -3phi)", 0, "[-5phi, -8phi)", Some("[-1phi, -12phi)")),
    ("[-3phi, -11phi)", 0, "[-2phi, -5phi)", Some("[-1phi, -12phi)")),
    ("[-11phi, -1phi)", 1, "[-2phi, -5phi)", Some("[-1phi, -12phi)")),
    ("[-1phi, -12phi)", 1, "[-11phi, -1phi)", None),
    ("[-12phi, -7phi)", 0, "[-11phi, -1phi)", None),
    ("[-7phi, -2phi)", 0, "[-3phi, -11phi)", None),
    ("[-2phi, -5phi)", 0, "[-8phi, -3phi)", Some("[-7phi, -2phi)")),
    ("[-5phi, -8phi)", 0, "[-5phi, -8phi)", Some("[-12phi, -7phi)")),
];

pub const MSD10_START: &str = "[-5phi, -8phi)";

/// The eight-state msd automaton for `f(i + 10)`, states in table order.
pub fn reference_msd10() -> Dfao {
    let idx = |l: &str| MSD10_TABLE.iter().position(|r| r.0 == l).unwrap();
    let states = MSD10_TABLE
        .iter()
        .map(|&(l, out, t0, t1)| s(out, Some(idx(t0)), t1.map(idx), l))
        .collect();
    Dfao::new(Order::Msd, states, idx(MSD10_START)).unwrap()
}

/// Whether `m` has exactly the states, outputs and transitions of [`MSD10_TABLE`].
pub fn matches_msd10(m: &Dfao) -> bool {
    let label = |q: Option<usize>| q.map(|q| m.states()[q].label.as_str());
    m.len() == 8
        && m.states()[m.initial()].label == MSD10_START
        && MSD10_TABLE.iter().all(|&(l, out, t0, t1)| {
            m.states().iter().position(|s| s.label == l).is_some_and(|q| {
                m.output(q) == out && label(m.step(q, 0)) == Some(t0) && label(m.step(q, 1)) == t1
            })
        })
}

/// Agreement on every `n ≤ limit`.
pub fn agree_up_to(a: &Dfao, b: &Dfao, limit: u64) -> Option<u64> {
    (0..=limit).find(|&n| a.eval_int(n) != b.eval_int(n))
}
