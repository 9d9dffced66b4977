//! Shift automata for `(f(i + c))_{i ≥ 0}`, one per reading order.
//!
//! Both constructions rest on `f(i + c) = 1 ⟺ {iφ} ∈ J_c` with
//! `J_c = [−(c+1)φ, −(c+2)φ) mod 1`.

use std::fmt;

use crate::dfao::{Dfao, Order, State};
use crate::error::{Error, Result};
use crate::fibword::f_sturmian;
use crate::golden::{CircInterval, FracPoint};
use crate::partitions::{combine, lsd_interval, msd_partition, successor_interval, GoldenPartition};
use crate::zeckendorf::{encode, fib};

/// One way of building a shift automaton, selected by name.
pub trait ShiftBuilder: Send + Sync {
    fn name(&self) -> &'static str;

    fn order(&self) -> Order;

    fn build(&self, c: u64) -> Result<Dfao>;
}

pub struct LsdBuilder;

impl ShiftBuilder for LsdBuilder {
    fn name(&self) -> &'static str {
        "lsd"
    }

    fn order(&self) -> Order {
        Order::Lsd
    }

    fn build(&self, c: u64) -> Result<Dfao> {
        build_lsd(c).map(|(m, _)| m)
    }
}

pub struct MsdBuilder;

impl ShiftBuilder for MsdBuilder {
    fn name(&self) -> &'static str {
        "msd"
    }

    fn order(&self) -> Order {
        Order::Msd
    }

    fn build(&self, c: u64) -> Result<Dfao> {
        build_msd(c).map(|(m, _)| m)
    }
}

/// Every registered builder, the interval constructions first.
pub fn builders() -> Vec<Box<dyn ShiftBuilder>> {
    vec![
        Box::new(LsdBuilder),
        Box::new(MsdBuilder),
        Box::new(crate::oracle::BruteBuilder::new(Order::Lsd)),
        Box::new(crate::oracle::BruteBuilder::new(Order::Msd)),
    ]
}

pub fn builder_by_name(name: &str) -> Result<Box<dyn ShiftBuilder>> {
    builders()
        .into_iter()
        .find(|b| b.name().eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::Unknown { kind: "builder", name: name.to_string() })
}

/// `J_c = [−(c+1)φ, −(c+2)φ) mod 1`.
pub fn shift_interval(c: u64) -> CircInterval {
    let c = c as i64;
    CircInterval::half_open(-(c + 1), -(c + 2)).expect("distinct endpoints")
}

/// The `k` with `F_k < c + 2 ≤ F_{k+1}`.
pub fn lsd_k(c: u64) -> usize {
    let c2 = c as i64 + 2;
    (2..).find(|&k| fib(k) < c2 && c2 <= fib(k + 1)).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sink {
    Accept(u8),
    Reject(u8),
}

impl Sink {
    fn index(self) -> usize {
        match self {
            Sink::Accept(a) => a as usize,
            Sink::Reject(a) => 2 + a as usize,
        }
    }
}

impl fmt::Display for Sink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sink::Accept(a) => write!(f, "A{a}"),
            Sink::Reject(a) => write!(f, "R{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsdBuildTrace {
    pub k: usize,
    /// Strings `x` of the intermediate states `q_x`, grouped by length.
    pub levels: Vec<Vec<String>>,
    /// `(x, a, sink)`: reading `a` from `q_x` decides the output.
    pub sink_events: Vec<(String, u8, Sink)>,
}

impl LsdBuildTrace {
    pub fn critical_strings(&self) -> impl Iterator<Item = &str> {
        self.levels.iter().flatten().map(String::as_str)
    }
}

/// The lsd-first construction.
///
/// State `q_x` remembers the low digits `x` read so far, with value `m`.
/// Reading `a` narrows `{iφ}` to `I_{ℓ+1}(m')`; if that lies in `J_c` or
/// its complement the output is settled and we move to a sink, otherwise a
/// new state `q_{xa}` is created with output `[{m'φ} ∈ J_c]`.
/// States: `q_ε`, the intermediates in creation order, then `A0 A1 R0 R1`.
pub fn build_lsd(c: u64) -> Result<(Dfao, LsdBuildTrace)> {
    enum Edge {
        Missing,
        To(usize),
        Sink(Sink),
    }
    let jc = shift_interval(c);
    let outside = jc.complement();
    let mut strings = vec![String::new()];
    let mut values = vec![0u64];
    let mut outputs = vec![f_sturmian(c)];
    let mut edges: Vec<[Edge; 2]> = Vec::new();
    let mut levels: Vec<Vec<String>> = Vec::new();
    let mut sink_events = Vec::new();
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut created = Vec::new();
        for &q in &frontier {
            let x = strings[q].clone();
            let mut out = [Edge::Missing, Edge::Missing];
            for a in 0..2u8 {
                if a == 1 && x.ends_with('1') {
                    continue;
                }
                let m = values[q] + a as u64 * fib(x.len() + 2) as u64;
                let iv = lsd_interval(x.len() + 2, m)?;
                let sink = if iv.within(&jc) {
                    Some(Sink::Accept(a))
                } else if iv.within(&outside) {
                    Some(Sink::Reject(a))
                } else {
                    None
                };
                out[a as usize] = match sink {
                    Some(s) => {
                        sink_events.push((x.clone(), a, s));
                        Edge::Sink(s)
                    }
                    None => {
                        strings.push(format!("{x}{a}"));
                        values.push(m);
                        outputs.push(jc.contains(FracPoint(m as i64)) as u8);
                        created.push(strings.len() - 1);
                        Edge::To(strings.len() - 1)
                    }
                };
            }
            edges.push(out);
        }
        if !created.is_empty() {
            levels.push(created.iter().map(|&q| strings[q].clone()).collect());
        }
        frontier = created;
    }

    // States are created in the order they are expanded, so `edges[q]` belongs to `q`.
    let base = strings.len();
    let resolve = |e: &Edge| match e {
        Edge::Missing => None,
        Edge::To(q) => Some(*q),
        Edge::Sink(s) => Some(base + s.index()),
    };
    let mut states: Vec<State> = (0..base)
        .map(|q| {
            let label = if q == 0 { "q_e".to_string() } else { format!("q_{}", strings[q]) };
            State { output: outputs[q], next: [resolve(&edges[q][0]), resolve(&edges[q][1])], label }
        })
        .collect();
    let (a0, a1, r0, r1) = (base, base + 1, base + 2, base + 3);
    states.push(State::new(1, Some(a0), Some(a1), "A0"));
    states.push(State::new(1, Some(a0), None, "A1"));
    states.push(State::new(0, Some(r0), Some(r1), "R0"));
    states.push(State::new(0, Some(r0), None, "R1"));
    let trace = LsdBuildTrace { k: lsd_k(c), levels, sink_events };
    Ok((Dfao::new(Order::Lsd, states, 0)?, trace))
}

/// `g(c) = 1` iff `f(c−1) = f(c−2) = 0`.
pub fn g(c: u64) -> Result<u8> {
    if c < 2 {
        return Err(Error::OutOfRange { what: "g(c) argument (must be >= 2)", value: c as i64 });
    }
    Ok((f_sturmian(c - 1) == 0 && f_sturmian(c - 2) == 0) as u8)
}

/// Minimal lsd state count `2(|(c)_F| + 1) + 1 − g(c)`, stated for `c ≥ 5`.
pub fn predicted_lsd_states(c: u64) -> Result<usize> {
    if c < 5 {
        return Err(Error::OutOfRange { what: "c for the state-count formula (must be >= 5)", value: c as i64 });
    }
    let len = encode(c).digits().len();
    Ok(2 * (len + 1) + 1 - g(c)? as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MsdBuildTrace {
    pub partition: GoldenPartition,
    /// Index of the interval containing `{0}`.
    pub start: usize,
    pub successors: Vec<[Option<usize>; 2]>,
    /// For `c = 0` the partition `P(−1)` does not exist and `P(−2)` is used alone.
    pub substituted_base: bool,
    pub unreachable: Vec<usize>,
}

fn msd_partition_for(c: u64) -> Result<(GoldenPartition, bool)> {
    let c = c as i64;
    if c == 0 {
        return Ok((msd_partition(-2)?, true));
    }
    Ok((combine(&msd_partition(-(c + 1))?, &msd_partition(-(c + 2))?), false))
}

/// The msd-first construction: one state per interval of
/// `P(−(c+1)) ∪ P(−(c+2))`, moving by `successor_interval`.
pub fn build_msd(c: u64) -> Result<(Dfao, MsdBuildTrace)> {
    let (partition, substituted_base) = msd_partition_for(c)?;
    let ones = CircInterval::open(-(c as i64 + 1), -(c as i64 + 2))?;
    let mut successors = Vec::with_capacity(partition.len());
    let mut states = Vec::with_capacity(partition.len());
    for (idx, iv) in partition.intervals().iter().enumerate() {
        let mut next = [None, None];
        for a in 0..2u8 {
            next[a as usize] = match successor_interval(&partition, idx, a) {
                Ok(t) => Some(t),
                Err(Error::IllegalDigit(_)) => None,
                Err(e) => return Err(e),
            };
        }
        successors.push(next);
        states.push(State { output: iv.within(&ones) as u8, next, label: iv.to_string() });
    }
    let start = partition.locate(FracPoint(0));
    let dfao = Dfao::new(Order::Msd, states, start)?;
    let unreachable = dfao
        .reachable()
        .into_iter()
        .enumerate()
        .filter(|(_, r)| !r)
        .map(|(q, _)| q)
        .collect();
    let trace = MsdBuildTrace { partition, start, successors, substituted_base, unreachable };
    Ok((dfao, trace))
}

/// `|chain(−(c+1))| + |chain(−(c+2))|`, or `|chain(−2)|` for `c = 0`.
pub fn msd_state_bound(c: u64) -> Result<usize> {
    use crate::partitions::msd_chain;
    let c = c as i64;
    if c == 0 {
        return Ok(msd_chain(-2)?.len());
    }
    Ok(msd_chain(-(c + 1))?.len() + msd_chain(-(c + 2))?.len())
}
