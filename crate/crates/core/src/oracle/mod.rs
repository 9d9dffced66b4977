//! Brute-force references: the shifted sequence itself, a Myhill–Nerode
//! automaton learned from it, and bounded checks of the numeric lemmas.

pub mod lemmas;

use std::collections::{HashMap, VecDeque};

use crate::builders::ShiftBuilder;
use crate::dfao::{Dfao, Order, State};
use crate::error::{Error, Result};
use crate::fibword::{methods, FibWordOracle};
use crate::zeckendorf::{encode, fib};

pub use lemmas::{check_lemma, lemma_by_name, lemma_checks, Bounds, LemmaCheck, LemmaReport};

/// `(f(i + c))_{i ≥ 0}`.
#[derive(Debug)]
pub struct SequenceOracle {
    c: u64,
    word: FibWordOracle,
}

impl SequenceOracle {
    pub fn new(c: u64) -> Self {
        Self::with_method(c, "sturmian").expect("sturmian is registered")
    }

    pub fn with_method(c: u64, method: &str) -> Result<Self> {
        Ok(SequenceOracle { c, word: FibWordOracle::by_name(method)? })
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn at(&self, i: u64) -> u8 {
        self.word.shifted(self.c, i)
    }

    pub fn prefix(&self, len: usize) -> Vec<u8> {
        (0..len as u64).map(|i| self.at(i)).collect()
    }

    /// Whether every registered generator gives the same first `len` terms.
    pub fn methods_agree(&self, len: usize) -> bool {
        let all: Vec<Vec<u8>> = methods().iter().map(|m| m.prefix(self.c as usize + len)).collect();
        all.windows(2).all(|w| w[0] == w[1])
    }
}

/// A suffix word summarised by the numbers needed to evaluate `u·s`.
#[derive(Clone, Copy)]
struct Suffix {
    first: Option<u8>,
    last: Option<u8>,
    len: usize,
    /// msd: value of `s`. lsd: `Σ s_j F_{j+2}`.
    a: u64,
    /// msd: value shifted down one place. lsd: `Σ s_j F_{j+1}`.
    b: u64,
}

#[derive(Clone, Copy)]
struct Prefix {
    last: Option<u8>,
    len: usize,
    /// msd: value and value shifted down one place. lsd: value and unused.
    v: u64,
    w: u64,
}

impl Prefix {
    const EMPTY: Prefix = Prefix { last: None, len: 0, v: 0, w: 0 };

    fn push(self, order: Order, a: u8) -> Prefix {
        let a64 = a as u64;
        let (v, w) = match order {
            Order::Msd => (self.v + self.w + a64, self.v + a64),
            Order::Lsd => (self.v + a64 * fib(self.len + 2) as u64, 0),
        };
        Prefix { last: Some(a), len: self.len + 1, v, w }
    }

    fn join(&self, order: Order, s: &Suffix) -> u64 {
        let f = |i: usize| fib(i) as u64;
        match order {
            Order::Msd => self.v * f(s.len + 1) + self.w * f(s.len) + s.a,
            Order::Lsd => self.v + s.a * f(self.len + 1) + s.b * f(self.len),
        }
    }
}

/// All words without `11` of length `≤ horizon`, shortest first.
fn suffixes(order: Order, horizon: usize) -> Vec<Suffix> {
    let empty = Suffix { first: None, last: None, len: 0, a: 0, b: 0 };
    let mut out = vec![empty];
    let mut start = 0;
    for len in 1..=horizon {
        let end = out.len();
        for i in start..end {
            let s = out[i];
            for d in 0..2u8 {
                if d == 1 && s.last == Some(1) {
                    continue;
                }
                let d64 = d as u64;
                let (a, b) = match order {
                    Order::Msd => (s.a + s.b + d64, s.a + d64),
                    Order::Lsd => (s.a + d64 * fib(len + 1) as u64, s.b + d64 * fib(len) as u64),
                };
                out.push(Suffix { first: s.first.or(Some(d)), last: Some(d), len, a, b });
            }
        }
        start = end;
    }
    out
}

const UNDEFINED: u8 = 2;

/// Outputs on every valid length-`≤ L` extension; this is the state's key.
fn signature(oracle: &SequenceOracle, order: Order, sfx: &[Suffix], p: &Prefix) -> Vec<u8> {
    sfx.iter()
        .map(|s| {
            if p.last == Some(1) && s.first == Some(1) {
                UNDEFINED
            } else {
                oracle.at(p.join(order, s))
            }
        })
        .collect()
}

/// Upper limit on the horizon, and on the number of classes, before giving up.
pub const MAX_HORIZON: usize = 40;
const MAX_CLASSES: usize = 4096;

/// The automaton whose states are classes of valid prefixes, two prefixes
/// being equivalent when every valid extension of length `≤ horizon` gives
/// the same output (undefined counting as equal).
pub fn brute_min_dfao(oracle: &SequenceOracle, order: Order, horizon: usize) -> Result<Dfao> {
    let sfx = suffixes(order, horizon);
    let mut class_of: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut reps = vec![Prefix::EMPTY];
    let mut outputs = vec![oracle.at(0)];
    class_of.insert(signature(oracle, order, &sfx, &Prefix::EMPTY), 0);
    let mut next: Vec<[Option<usize>; 2]> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(q) = queue.pop_front() {
        let rep = reps[q];
        let mut out = [None, None];
        for a in 0..2u8 {
            if a == 1 && rep.last == Some(1) {
                continue;
            }
            let child = rep.push(order, a);
            let sig = signature(oracle, order, &sfx, &child);
            let id = match class_of.get(&sig) {
                Some(&id) => id,
                None => {
                    let id = reps.len();
                    if id >= MAX_CLASSES {
                        return Err(Error::NotStabilized(horizon));
                    }
                    outputs.push(sig[0]);
                    class_of.insert(sig, id);
                    reps.push(child);
                    queue.push_back(id);
                    id
                }
            };
            out[a as usize] = Some(id);
        }
        next.push(out);
    }
    let states = (0..reps.len())
        .map(|q| State { output: outputs[q], next: next[q], label: format!("c{q}") })
        .collect();
    Dfao::new(order, states, 0)
}

/// First horizon of the schedule: `|(c)_F| + 4`.
pub fn initial_horizon(c: u64) -> usize {
    encode(c).digits().len() + 4
}

/// Widens the horizon, doubling the step each time (`L, L+1, L+3, L+7, …`),
/// until two successive class counts agree; returns the automaton at the
/// larger horizon and that horizon.
pub fn brute_min_dfao_stable(oracle: &SequenceOracle, order: Order) -> Result<(Dfao, usize)> {
    let mut horizon = initial_horizon(oracle.c());
    let mut step = 1;
    let mut prev = brute_min_dfao(oracle, order, horizon)?;
    loop {
        let wider = horizon + step;
        if wider > MAX_HORIZON {
            return Err(Error::NotStabilized(horizon));
        }
        let cur = brute_min_dfao(oracle, order, wider)?;
        if cur.len() == prev.len() {
            return Ok((cur, wider));
        }
        prev = cur;
        horizon = wider;
        step *= 2;
    }
}

/// The learned automaton as a [`ShiftBuilder`].
pub struct BruteBuilder {
    order: Order,
}

impl BruteBuilder {
    pub fn new(order: Order) -> Self {
        BruteBuilder { order }
    }
}

impl ShiftBuilder for BruteBuilder {
    fn name(&self) -> &'static str {
        match self.order {
            Order::Lsd => "brute-lsd",
            Order::Msd => "brute-msd",
        }
    }

    fn order(&self) -> Order {
        self.order
    }

    fn build(&self, c: u64) -> Result<Dfao> {
        brute_min_dfao_stable(&SequenceOracle::new(c), self.order).map(|(m, _)| m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeckendorf::decode;

    #[test]
    fn oracle_agrees_across_methods() {
        let o = SequenceOracle::new(10);
        assert_eq!(o.prefix(3), vec![0, 0, 1]);
        assert!(o.methods_agree(1000));
        assert!(SequenceOracle::with_method(0, "nosuch").is_err());
    }

    #[test]
    fn suffix_values() {
        for order in [Order::Msd, Order::Lsd] {
            let sfx = suffixes(order, 6);
            assert_eq!(sfx.len(), (fib(10) - 2) as usize);
            let p = Prefix::EMPTY.push(order, 1).push(order, 0);
            for s in &sfx {
                let v = p.join(order, s);
                assert!(s.first.is_none() || v >= 1, "{v}");
            }
        }
        // msd: "10" then "01" is 1001 = F_5 + F_2 = 6.
        let p = Prefix::EMPTY.push(Order::Msd, 1).push(Order::Msd, 0);
        let s = Suffix { first: Some(0), last: Some(1), len: 2, a: 1, b: 1 };
        assert_eq!(p.join(Order::Msd, &s), decode(&[1, 0, 0, 1]));
        // lsd: "01" then "01" is 1010 msd = F_5 + F_3 = 7.
        let p = Prefix::EMPTY.push(Order::Lsd, 0).push(Order::Lsd, 1);
        let s = Suffix { first: Some(0), last: Some(1), len: 2, a: 2, b: 1 };
        assert_eq!(p.join(Order::Lsd, &s), decode(&[1, 0, 1, 0]));
    }

    #[test]
    fn base_counts() {
        let o = SequenceOracle::new(0);
        assert_eq!(brute_min_dfao_stable(&o, Order::Msd).unwrap().0.len(), 2);
        assert_eq!(brute_min_dfao_stable(&o, Order::Lsd).unwrap().0.len(), 5);
    }

    #[test]
    fn c10_counts() {
        let o = SequenceOracle::new(10);
        let (lsd, _) = brute_min_dfao_stable(&o, Order::Lsd).unwrap();
        assert_eq!(lsd.len(), 13);
        for i in 0..3000 {
            assert_eq!(lsd.eval_int(i), o.at(i));
        }
    }
}
