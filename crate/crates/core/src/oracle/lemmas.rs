//! Bounded exhaustive checks of the identities the constructions depend on.
//!
//! Every membership test is exact. The larger sweeps sort a window of
//! integers once by `{nφ}` and then compare ranks.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fibword::{f_morphic, Morphic, FibWordMethod};
use crate::golden::{FracPoint, FracRanking, QuadNum};
use crate::partitions::{lsd_partition, msd_partition, one_region, successor_interval, GoldenPartition};
use crate::zeckendorf::{append_bit, drop_bit, ends_in_one, fib, low_part, MAX_FIB_INDEX};

/// Two sweep limits; what each means depends on the check (see its labels).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub bound: u64,
    pub samples: u64,
}

impl Bounds {
    pub fn new(bound: u64, samples: u64) -> Self {
        Bounds { bound, samples }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: &'static str,
    /// Rendered bounds, e.g. `n<=10000`.
    pub bounds: String,
    pub checked: u64,
    /// Cases skipped because a hypothesis fails.
    pub excluded: u64,
    pub counterexample: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{} {} {status} checked={} excluded={}", self.name, self.bounds, self.checked, self.excluded)?;
        if let Some(cx) = &self.counterexample {
            write!(f, " counterexample: {cx}")?;
        }
        Ok(())
    }
}

pub trait LemmaCheck: Send + Sync {
    fn name(&self) -> &'static str;

    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn default_bounds(&self) -> Bounds;

    fn run(&self, bounds: Bounds) -> LemmaReport;
}

#[derive(Default)]
struct Outcome {
    checked: u64,
    excluded: u64,
    failure: Option<String>,
}

impl Outcome {
    fn fail(&mut self, msg: String) {
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        self.checked += other.checked;
        self.excluded += other.excluded;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
        self
    }
}

struct Check {
    name: &'static str,
    aliases: &'static [&'static str],
    labels: [&'static str; 2],
    defaults: Bounds,
    run: fn(Bounds) -> Outcome,
}

impl LemmaCheck for Check {
    fn name(&self) -> &'static str {
        self.name
    }

    fn aliases(&self) -> &'static [&'static str] {
        self.aliases
    }

    fn default_bounds(&self) -> Bounds {
        self.defaults
    }

    fn run(&self, bounds: Bounds) -> LemmaReport {
        let out = (self.run)(bounds);
        let mut rendered = format!("{}<={}", self.labels[0], bounds.bound);
        if !self.labels[1].is_empty() {
            rendered.push_str(&format!(",{}<={}", self.labels[1], bounds.samples));
        }
        LemmaReport {
            name: self.name,
            bounds: rendered,
            checked: out.checked,
            excluded: out.excluded,
            counterexample: out.failure,
        }
    }
}

/// All checks, in the order `--all` runs them.
pub fn lemma_checks() -> Vec<Box<dyn LemmaCheck>> {
    let c = |name, aliases, labels, defaults, run| -> Box<dyn LemmaCheck> {
        Box::new(Check { name, aliases, labels, defaults, run })
    };
    vec![
        c("fib-frac", &[], ["i", ""], Bounds::new(40, 0), fib_frac),
        c("f-bit", &[], ["i", ""], Bounds::new(1_000_000, 0), f_bit),
        c("shift-bit", &[], ["i", "c"], Bounds::new(1000, 1000), shift_bit),
        c("partition", &["tiling"], ["d", ""], Bounds::new(20, 0), partition),
        c("characterization", &[], ["n", "d"], Bounds::new(100_000, 20), characterization),
        c("refinement", &[], ["d", ""], Bounds::new(20, 0), refinement),
        c("endpoints", &[], ["c", ""], Bounds::new(500, 0), endpoints),
        c("append-drop", &[], ["|n|", ""], Bounds::new(100_000, 0), append_drop),
        c("flip-append", &[], ["-x,-y", "n"], Bounds::new(200, 10_000), flip_append),
        c("flip-append-edge", &[], ["-y", ""], Bounds::new(200, 0), flip_append_remark),
        c("flip-drop", &[], ["-x,-y,-r", ""], Bounds::new(200, 0), flip_drop),
        c("consistency", &[], ["-r", "n"], Bounds::new(500, 10_000), consistency),
    ]
}

pub fn lemma_by_name(name: &str) -> Result<Box<dyn LemmaCheck>> {
    lemma_checks()
        .into_iter()
        .find(|c| c.name().eq_ignore_ascii_case(name) || c.aliases().iter().any(|a| a.eq_ignore_ascii_case(name)))
        .ok_or_else(|| Error::Unknown { kind: "lemma", name: name.to_string() })
}

/// Runs one check, at its default bounds unless given.
pub fn check_lemma(name: &str, bounds: Option<Bounds>) -> Result<LemmaReport> {
    let check = lemma_by_name(name)?;
    let bounds = bounds.unwrap_or(check.default_bounds());
    Ok(check.run(bounds))
}

fn signed_phi_pow(i: u32, negate: bool) -> QuadNum {
    let p = QuadNum::phi_inv().pow(i);
    if negate {
        -&p
    } else {
        p
    }
}

/// `{F_i φ} = {(−1)^{i+1} φ^{−i}}`, while the form with `(−1)^i` never holds.
fn fib_frac(b: Bounds) -> Outcome {
    let mut out = Outcome::default();
    for i in 2..=(b.bound as usize).min(MAX_FIB_INDEX) {
        let lhs = FracPoint(fib(i)).value();
        let corrected = signed_phi_pow(i as u32, i % 2 == 0).fract();
        let literal = signed_phi_pow(i as u32, i % 2 == 1).fract();
        out.checked += 1;
        if lhs != corrected {
            out.fail(format!("i={i}: {{F_i phi}}={lhs}, expected {corrected}"));
        }
        if lhs == literal {
            out.fail(format!("i={i}: sign (-1)^i unexpectedly holds"));
        }
    }
    out
}

/// `f(i) = 1 ⟺ {iφ} ∈ (−φ, −2φ)`.
fn f_bit(b: Bounds) -> Outcome {
    let ones = one_region();
    let word = Morphic::new().prefix(b.bound as usize + 1);
    let mut out = Outcome::default();
    for (i, &bit) in word.iter().enumerate() {
        out.checked += 1;
        if (bit == 1) != ones.contains(FracPoint(i as i64)) {
            out.fail(format!("i={i}: f(i)={bit}"));
            break;
        }
    }
    out
}

/// `f(i + c) = 1 ⟺ {iφ} ∈ (−(c+1)φ, −(c+2)φ)`.
fn shift_bit(b: Bounds) -> Outcome {
    let (ni, nc) = (b.bound as i64, b.samples as i64);
    let rank = FracRanking::new(-(nc + 2), ni);
    let word = Morphic::new().prefix((ni + nc) as usize + 1);
    let mut out = Outcome::default();
    for c in 0..=nc {
        for i in 0..=ni {
            out.checked += 1;
            let inside = rank.in_open(-(c + 1), -(c + 2), i);
            if (word[(i + c) as usize] == 1) != inside {
                out.fail(format!("i={i}, c={c}"));
                return out;
            }
        }
    }
    out
}

/// Each `{I_d(m)}` tiles the circle with total length exactly 1, using
/// `F_d` intervals of length `φ^{−(d−1)}` and `F_{d−1}` of length `φ^{−d}`.
fn partition(b: Bounds) -> Outcome {
    let mut out = Outcome::default();
    for d in 2..=b.bound as usize {
        out.checked += 1;
        let p = match lsd_partition(d) {
            Ok(p) => p,
            Err(e) => {
                out.fail(format!("d={d}: {e}"));
                continue;
            }
        };
        if p.total_length() != QuadNum::one() {
            out.fail(format!("d={d}: total length {}", p.total_length()));
        }
        let long = QuadNum::phi_inv().pow(d as u32 - 1);
        let short = QuadNum::phi_inv().pow(d as u32);
        let lengths: Vec<QuadNum> = p.intervals().iter().map(|iv| iv.length()).collect();
        let n_long = lengths.iter().filter(|l| **l == long).count() as i64;
        let n_short = lengths.iter().filter(|l| **l == short).count() as i64;
        if n_long != fib(d) || n_short != fib(d - 1) {
            out.fail(format!("d={d}: {n_long} long and {n_short} short intervals"));
        }
    }
    out
}

/// `{nφ} ∈ I_d(m) ⟺ n^{[≤d]} = m`.
fn characterization(b: Bounds) -> Outcome {
    (2..=b.samples as usize)
        .into_par_iter()
        .map(|d| {
            let mut out = Outcome::default();
            let p = match lsd_partition(d) {
                Ok(p) => p,
                Err(e) => {
                    out.fail(format!("d={d}: {e}"));
                    return out;
                }
            };
            let labels = p.labels().expect("lsd partitions are labelled");
            for n in 0..=b.bound {
                out.checked += 1;
                let m = labels[p.locate(FracPoint(n as i64))];
                if m != low_part(n, d) {
                    out.fail(format!("n={n}, d={d}: located m={m}, window {}", low_part(n, d)));
                    break;
                }
            }
            out
        })
        .reduce(Outcome::default, Outcome::merge)
}

/// `{I_{d+1}(m)}` refines `{I_d(m)}`.
fn refinement(b: Bounds) -> Outcome {
    let parts: Vec<GoldenPartition> = (2..=b.bound as usize).map(|d| lsd_partition(d).unwrap()).collect();
    let mut out = Outcome::default();
    for (i, w) in parts.windows(2).enumerate() {
        out.checked += 1;
        if !w[1].refines(&w[0]) {
            out.fail(format!("d={}", i + 2));
        }
    }
    out
}

/// For `F_k < c ≤ F_{k+1}`, `{−cφ}` is an endpoint of `{I_d(m)}` iff `d ≥ k`.
fn endpoints(b: Bounds) -> Outcome {
    let k_of = |c: i64| (2..).find(|&k| fib(k) < c && c <= fib(k + 1)).unwrap();
    let top = k_of(b.bound.max(2) as i64) + 2;
    let parts: Vec<GoldenPartition> = (2..=top).map(|d| lsd_partition(d).unwrap()).collect();
    let mut out = Outcome::default();
    for c in 2..=b.bound as i64 {
        let k = k_of(c);
        for d in 2..=(k + 2) {
            out.checked += 1;
            if parts[d - 2].has_endpoint(-c) != (d >= k) {
                out.fail(format!("c={c}, k={k}, d={d}"));
            }
        }
    }
    out
}

/// `a = 1` may follow `n` only if its representation does not end in 1.
fn legal_append(n: i64, a: u8) -> bool {
    a == 0 || !ends_in_one(n)
}

/// `(n^{(a)})′ = n`, except `((−2)^{(1)})′ = −1`.
fn append_drop(b: Bounds) -> Outcome {
    let mut out = Outcome::default();
    let bound = b.bound as i64;
    for n in -bound..=bound {
        for a in 0..2u8 {
            if !legal_append(n, a) {
                out.excluded += 1;
                continue;
            }
            out.checked += 1;
            let back = append_bit(n, a).map(drop_bit);
            let expect = if (n, a) == (-2, 1) { -1 } else { n };
            if back != Ok(expect) {
                out.fail(format!("n={n}, a={a}: got {back:?}, expected {expect}"));
            }
        }
    }
    out
}

#[inline]
fn in_open_ranks(rx: u32, ry: u32, rp: u32) -> bool {
    if rx < ry {
        rx < rp && rp < ry
    } else {
        rp > rx || rp < ry
    }
}

/// Neither `{−φ}` nor `{−2φ}` lies strictly inside `(xφ, yφ)`.
fn avoids_critical(rank: &FracRanking, x: i64, y: i64) -> bool {
    !rank.in_open(x, y, -1) && !rank.in_open(x, y, -2)
}

/// `{nφ} ∈ (xφ, yφ) ⟹ {n^{(a)}φ} ∈ (y^{(a)}φ, x^{(a)}φ)`, and for `x ≠ −1`
/// the image avoids `{−φ}` and `{−2φ}`.
fn flip_append(b: Bounds) -> Outcome {
    let (bound, samples) = (b.bound as i64, b.samples as i64);
    let ends: Vec<[i64; 2]> = (1..=bound).map(|m| [append_bit(-m, 0).unwrap(), append_bit(-m, 1).unwrap()]).collect();
    let appended: Vec<[Option<i64>; 2]> = (0..=samples)
        .map(|n| [append_bit(n, 0).ok(), if legal_append(n, 1) { append_bit(n, 1).ok() } else { None }])
        .collect();
    let lo = ends.iter().flatten().copied().min().unwrap_or(-2).min(-bound);
    let hi = appended.iter().flatten().flatten().copied().max().unwrap_or(0).max(samples);
    let rank = FracRanking::new(lo, hi);
    let r_n: Vec<u32> = (0..=samples).map(|n| rank.rank(n)).collect();
    let r_app: Vec<[Option<u32>; 2]> = appended.iter().map(|a| a.map(|v| v.map(|v| rank.rank(v)))).collect();
    let end = |m: i64, a: usize| ends[(-m - 1) as usize][a];

    (1..=bound)
        .into_par_iter()
        .map(|mx| {
            let x = -mx;
            let mut out = Outcome::default();
            for y in (1..=bound).map(|m| -m) {
                if x == y {
                    continue;
                }
                if !avoids_critical(&rank, x, y) {
                    out.excluded += 1;
                    continue;
                }
                let (rx, ry) = (rank.rank(x), rank.rank(y));
                for a in 0..2 {
                    let (ya, xa) = (end(y, a), end(x, a));
                    if x != -1 && ya != xa && !avoids_critical(&rank, ya, xa) {
                        out.fail(format!("x={x}, y={y}, a={a}: image ({ya}, {xa}) contains a critical point"));
                    }
                    let (rya, rxa) = (rank.rank(ya), rank.rank(xa));
                    for n in 0..=samples as usize {
                        if !in_open_ranks(rx, ry, r_n[n]) {
                            continue;
                        }
                        let Some(rna) = r_app[n][a] else { continue };
                        out.checked += 1;
                        if ya == xa || !in_open_ranks(rya, rxa, rna) {
                            out.fail(format!("x={x}, y={y}, a={a}, n={n}: image ({ya}, {xa})"));
                            break;
                        }
                    }
                }
            }
            out
        })
        .reduce(Outcome::default, Outcome::merge)
}

/// With `x = −1`, `I_0` contains `{−φ}`. Every such `I` lies inside
/// `(−φ, −2φ)`, so no resident takes a 1 and `I_1` is never entered.
fn flip_append_remark(b: Bounds) -> Outcome {
    let ys: Vec<(i64, i64, i64)> = (2..=b.bound as i64)
        .map(|m| (-m, append_bit(-m, 0).unwrap(), append_bit(-m, 1).unwrap()))
        .collect();
    let lo = ys.iter().map(|&(y, y0, y1)| y.min(y0).min(y1)).min().unwrap_or(-2);
    let rank = FracRanking::new(lo, -1);
    let (x0, x1) = (append_bit(-1, 0).unwrap(), append_bit(-1, 1).unwrap());
    let mut out = Outcome::default();
    for (y, y0, y1) in ys {
        if !avoids_critical(&rank, -1, y) {
            out.excluded += 1;
            continue;
        }
        out.checked += 1;
        if !rank.in_open(y0, x0, -1) {
            out.fail(format!("y={y}: I_0=({y0}, {x0}) misses -1"));
        }
        if y != -2 && !rank.in_open(-1, -2, y) {
            out.fail(format!("y={y}: (-1, {y}) reaches outside (-1, -2), I_1=({y1}, {x1})"));
        }
    }
    out
}

/// `{rφ} ∈ (xφ, yφ) ⟹ {r′φ} ∈ (y′φ, x′φ)` for `(x, y) ≠ (−1, −2), (−2, −1)`.
fn flip_drop(b: Bounds) -> Outcome {
    let bound = b.bound as i64;
    let rank = FracRanking::new(-bound, -1);
    let r = |n: i64| rank.rank(n);
    let dropped: Vec<u32> = (1..=bound).map(|m| r(drop_bit(-m))).collect();
    let rd = |n: i64| dropped[(-n - 1) as usize];
    (1..=bound)
        .into_par_iter()
        .map(|mx| {
            let x = -mx;
            let mut out = Outcome::default();
            for y in (1..=bound).map(|m| -m) {
                if x == y {
                    continue;
                }
                if matches!((x, y), (-1, -2) | (-2, -1)) || !avoids_critical(&rank, x, y) {
                    out.excluded += 1;
                    continue;
                }
                let (rx, ry, rxd, ryd) = (r(x), r(y), rd(x), rd(y));
                for p in (1..=bound).map(|m| -m) {
                    if p == x || p == y || !in_open_ranks(rx, ry, r(p)) {
                        continue;
                    }
                    out.checked += 1;
                    if rxd == ryd || !in_open_ranks(ryd, rxd, rd(p)) {
                        out.fail(format!("x={x}, y={y}, r={p}"));
                    }
                }
            }
            out
        })
        .reduce(Outcome::default, Outcome::merge)
}

/// Every `P(r)` sends the interval of `{nφ}` on a legal digit `a` to the
/// interval of `{n^{(a)}φ}`.
fn consistency(b: Bounds) -> Outcome {
    let (bound, samples) = (b.bound as i64, b.samples as i64);
    let appended: Vec<[Option<i64>; 2]> = (0..=samples)
        .map(|n| [append_bit(n, 0).ok(), if legal_append(n, 1) { append_bit(n, 1).ok() } else { None }])
        .collect();
    let hi = appended.iter().flatten().flatten().copied().max().unwrap_or(0).max(samples);
    let rank = FracRanking::new(-bound.max(2), hi);
    let f = |n: i64| f_morphic(n as u64);
    (2..=bound.max(2))
        .into_par_iter()
        .map(|m| {
            let r = -m;
            let mut out = Outcome::default();
            let p = match msd_partition(r) {
                Ok(p) => p,
                Err(e) => {
                    out.fail(format!("r={r}: {e}"));
                    return out;
                }
            };
            let mut succ = Vec::with_capacity(p.len());
            for idx in 0..p.len() {
                let mut row = [None, None];
                for a in 0..2u8 {
                    row[a as usize] = match successor_interval(&p, idx, a) {
                        Ok(t) => Some(t),
                        Err(Error::IllegalDigit(_)) => None,
                        Err(e) => {
                            out.fail(format!("r={r}, interval {}, a={a}: {e}", p.intervals()[idx]));
                            None
                        }
                    };
                }
                succ.push(row);
            }
            let ends: Vec<u32> = p.endpoints().iter().map(|e| rank.rank(e.n())).collect();
            let locate = |v: i64| {
                let after = ends.partition_point(|&e| e <= rank.rank(v));
                if after == 0 {
                    ends.len() - 1
                } else {
                    after - 1
                }
            };
            for n in 0..=samples {
                let idx = locate(n);
                for a in 0..2 {
                    let Some(v) = appended[n as usize][a] else { continue };
                    out.checked += 1;
                    match succ[idx][a] {
                        Some(t) if t == locate(v) => {}
                        got => {
                            out.fail(format!("r={r}, n={n}, a={a}, f(n)={}: successor {got:?}", f(n)));
                            break;
                        }
                    }
                }
            }
            out
        })
        .reduce(Outcome::default, Outcome::merge)
}
