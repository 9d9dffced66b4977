//! Deterministic finite automata with output over `{0, 1}`, with partial
//! transitions: a word that is not a valid Zeckendorf string simply falls off.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::zeckendorf::encode;

/// Reading order of the input digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Msd,
    Lsd,
}

impl Order {
    pub fn walnut_tag(self) -> &'static str {
        match self {
            Order::Msd => "msd_fib",
            Order::Lsd => "lsd_fib",
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::Msd => "msd",
            Order::Lsd => "lsd",
        })
    }
}

impl FromStr for Order {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "msd" | "msd_fib" => Ok(Order::Msd),
            "lsd" | "lsd_fib" => Ok(Order::Lsd),
            _ => Err(Error::Unknown { kind: "order", name: s.to_string() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub output: u8,
    pub next: [Option<usize>; 2],
    /// Free-form description, e.g. the interval or string the state stands for.
    pub label: String,
}

impl State {
    pub fn new(output: u8, next0: Option<usize>, next1: Option<usize>, label: impl Into<String>) -> Self {
        State { output, next: [next0, next1], label: label.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    order: Order,
    states: Vec<State>,
    initial: usize,
}

fn check_digit(a: u8) -> Result<usize> {
    if a > 1 {
        return Err(Error::InvalidDigit(a));
    }
    Ok(a as usize)
}

impl Dfao {
    pub fn new(order: Order, states: Vec<State>, initial: usize) -> Result<Self> {
        let n = states.len();
        if initial >= n {
            return Err(Error::OutOfRange { what: "initial state", value: initial as i64 });
        }
        for s in &states {
            for t in s.next.iter().flatten() {
                if *t >= n {
                    return Err(Error::OutOfRange { what: "transition target", value: *t as i64 });
                }
            }
        }
        Ok(Dfao { order, states, initial })
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn output(&self, q: usize) -> u8 {
        self.states[q].output
    }

    pub fn step(&self, q: usize, a: u8) -> Option<usize> {
        self.states[q].next[a as usize]
    }

    /// The state reached on `word` read as given, or the position where it fell off.
    pub fn run(&self, word: &[u8]) -> Result<usize> {
        let mut q = self.initial;
        for (position, &digit) in word.iter().enumerate() {
            let a = check_digit(digit)?;
            q = self.states[q].next[a].ok_or(Error::Undefined { position, digit })?;
        }
        Ok(q)
    }

    pub fn eval(&self, word: &[u8]) -> Result<u8> {
        self.run(word).map(|q| self.states[q].output)
    }

    /// Output on the canonical representation of `n`, reversed for lsd.
    pub fn eval_int(&self, n: u64) -> u8 {
        let mut digits = encode(n).digits().to_vec();
        if self.order == Order::Lsd {
            digits.reverse();
        }
        self.eval(&digits).expect("canonical representations are accepted")
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for t in self.states[q].next.iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        seen
    }

    /// Moore classes of the completed automaton. Index `len()` is the sink.
    fn moore_classes(&self) -> Vec<usize> {
        let sink = self.states.len();
        let target = |q: usize, a: usize| if q == sink { sink } else { self.states[q].next[a].unwrap_or(sink) };
        let key0 = |q: usize| if q == sink { u16::MAX } else { self.states[q].output as u16 };
        let mut class = renumber((0..=sink).map(key0).collect::<Vec<_>>());
        loop {
            let keys: Vec<_> = (0..=sink).map(|q| (class[q], class[target(q, 0)], class[target(q, 1)])).collect();
            let refined = renumber(keys);
            let done = refined.iter().max() == class.iter().max();
            class = refined;
            if done {
                return class;
            }
        }
    }

    /// The minimal automaton agreeing with this one on every word; states
    /// are numbered in breadth-first order from the initial state.
    pub fn minimize(&self) -> Dfao {
        let class = self.moore_classes();
        let sink_class = class[self.states.len()];
        let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
        for (q, seen) in self.reachable().into_iter().enumerate() {
            if seen {
                members.entry(class[q]).or_default().push(q);
            }
        }
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::from([class[self.initial]]);
        number.insert(class[self.initial], 0);
        while let Some(k) = queue.pop_front() {
            order.push(k);
            let rep = members[&k][0];
            for t in self.states[rep].next.iter().flatten() {
                let tk = class[*t];
                if tk != sink_class && !number.contains_key(&tk) {
                    number.insert(tk, number.len());
                    queue.push_back(tk);
                }
            }
        }
        let states = order
            .iter()
            .map(|k| {
                let group = &members[k];
                let rep = &self.states[group[0]];
                let next = rep.next.map(|t| t.and_then(|t| number.get(&class[t]).copied()));
                let label = group.iter().map(|&q| self.states[q].label.as_str()).collect::<Vec<_>>().join("|");
                State { output: rep.output, next, label }
            })
            .collect();
        Dfao { order: self.order, states, initial: 0 }
    }

    /// Whether two distinct reachable states behave identically.
    pub fn has_equivalent_states(&self) -> bool {
        let class = self.moore_classes();
        let mut seen = std::collections::HashSet::new();
        self.reachable()
            .into_iter()
            .enumerate()
            .any(|(q, r)| r && !seen.insert(class[q]))
    }

    /// A state-numbering bijection preserving initial state, outputs and
    /// transitions, if one exists.
    pub fn isomorphism(&self, other: &Dfao) -> Option<Vec<usize>> {
        if self.order != other.order || self.len() != other.len() {
            return None;
        }
        let mut map: Vec<Option<usize>> = vec![None; self.len()];
        let mut used = vec![false; other.len()];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        map[self.initial] = Some(other.initial);
        used[other.initial] = true;
        while let Some((p, q)) = queue.pop_front() {
            if self.states[p].output != other.states[q].output {
                return None;
            }
            for a in 0..2 {
                match (self.states[p].next[a], other.states[q].next[a]) {
                    (None, None) => {}
                    (Some(s), Some(t)) => match map[s] {
                        Some(m) if m == t => {}
                        Some(_) => return None,
                        None => {
                            if used[t] {
                                return None;
                            }
                            map[s] = Some(t);
                            used[t] = true;
                            queue.push_back((s, t));
                        }
                    },
                    _ => return None,
                }
            }
        }
        map.into_iter().collect()
    }

    /// Compares outputs on every word without two adjacent 1s. Returns a
    /// shortest disagreeing word, or `None` when they agree everywhere.
    /// A word undefined in both counts as agreement.
    pub fn equivalent(&self, other: &Dfao) -> Result<Option<Vec<u8>>> {
        if self.order != other.order {
            return Err(Error::OrderMismatch);
        }
        type Node = (Option<usize>, Option<usize>, u8);
        let out = |m: &Dfao, q: Option<usize>| q.map(|q| m.states[q].output);
        let start: Node = (Some(self.initial), Some(other.initial), 0);
        let mut parent: HashMap<Node, Option<(Node, u8)>> = HashMap::from([(start, None)]);
        let mut queue = VecDeque::from([start]);
        while let Some(node) = queue.pop_front() {
            let (p, q, last) = node;
            if out(self, p) != out(other, q) {
                let mut word = Vec::new();
                let mut cur = node;
                while let Some(Some((prev, a))) = parent.get(&cur) {
                    word.push(*a);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            if p.is_none() && q.is_none() {
                continue;
            }
            for a in 0..2u8 {
                if a == 1 && last == 1 {
                    continue;
                }
                let succ = (p.and_then(|p| self.step(p, a)), q.and_then(|q| other.step(q, a)), a);
                if !parent.contains_key(&succ) {
                    parent.insert(succ, Some((node, a)));
                    queue.push_back(succ);
                }
            }
        }
        Ok(None)
    }

    pub fn export_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph dfao {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  init [shape=point];").unwrap();
        for (i, s) in self.states.iter().enumerate() {
            writeln!(out, "  q{i} [shape=circle, label=\"q{i}/{}\"];", s.output).unwrap();
        }
        writeln!(out, "  init -> q{};", self.initial).unwrap();
        for (i, s) in self.states.iter().enumerate() {
            for (a, t) in s.next.iter().enumerate() {
                if let Some(t) = t {
                    writeln!(out, "  q{i} -> q{t} [label=\"{a}\"];").unwrap();
                }
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }

    /// Walnut word-automaton text. The initial state is written as state 0.
    pub fn export_walnut(&self) -> String {
        let perm = self.initial_first();
        let mut inverse = vec![0; self.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut out = String::new();
        writeln!(out, "{}", self.order.walnut_tag()).unwrap();
        for (new, &old) in perm.iter().enumerate() {
            let s = &self.states[old];
            writeln!(out).unwrap();
            writeln!(out, "{new} {}", s.output).unwrap();
            for (a, t) in s.next.iter().enumerate() {
                if let Some(t) = t {
                    writeln!(out, "{a} -> {}", inverse[*t]).unwrap();
                }
            }
        }
        out
    }

    fn initial_first(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.swap(0, self.initial);
        perm
    }

    /// One row per state: `state,label,output,next0,next1`, `-` for missing.
    pub fn export_csv(&self) -> String {
        let mut out = String::from("state,label,output,next0,next1\n");
        for (i, s) in self.states.iter().enumerate() {
            let t = |x: Option<usize>| x.map_or("-".to_string(), |t| t.to_string());
            writeln!(out, "{i},\"{}\",{},{},{}", s.label, s.output, t(s.next[0]), t(s.next[1])).unwrap();
        }
        out
    }

    pub fn parse_walnut(text: &str) -> Result<Dfao> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (line, tag) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let order: Order = tag.parse().map_err(|_| Error::Parse { line, msg: format!("unknown numeration `{tag}`") })?;
        let mut raw: Vec<(usize, u8, [Option<usize>; 2])> = Vec::new();
        for (line, text) in lines {
            let bad = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            if let Some((lhs, rhs)) = text.split_once("->") {
                let cur = raw.last_mut().ok_or_else(|| bad("transition before any state"))?;
                let a: usize = lhs.trim().parse().map_err(|_| bad("bad input digit"))?;
                if a > 1 {
                    return Err(bad("input digit must be 0 or 1"));
                }
                let t: usize = rhs.trim().parse().map_err(|_| bad("bad target"))?;
                if cur.2[a].replace(t).is_some() {
                    return Err(bad("duplicate transition"));
                }
            } else {
                let mut parts = text.split_whitespace();
                let id = parts.next().and_then(|p| p.parse().ok()).ok_or_else(|| bad("bad state id"))?;
                let output = parts.next().and_then(|p| p.parse().ok()).ok_or_else(|| bad("bad output"))?;
                if parts.next().is_some() {
                    return Err(bad("trailing tokens"));
                }
                raw.push((id, output, [None, None]));
            }
        }
        raw.sort_by_key(|r| r.0);
        if raw.iter().enumerate().any(|(i, r)| r.0 != i) {
            return Err(Error::Parse { line: 0, msg: "state ids are not 0..n".into() });
        }
        let states = raw
            .into_iter()
            .map(|(id, output, next)| State { output, next, label: format!("q{id}") })
            .collect();
        Dfao::new(order, states, 0)
    }
}

fn renumber<K: std::hash::Hash + Eq + Clone>(keys: Vec<K>) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.into_iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k).or_insert(next)
        })
        .collect()
}
