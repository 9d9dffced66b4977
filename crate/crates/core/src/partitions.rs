//! Partitions of the circle whose endpoints are points `{mφ}`.
//!
//! Two families matter here. The lsd partitions `I_d(m)` record which
//! interval `{nφ}` falls in once the digits of `n` at `F_2 … F_d` are known.
//! The msd partitions `P(r)` are cut out by the chain `r, r', r'', …, −1`
//! and are closed under appending a digit.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::golden::{CircInterval, FracPoint, QuadNum};
use crate::zeckendorf::{append_bit, drop_bit, fib};

/// A tiling of `[0, 1)` by half-open arcs `[e_i, e_{i+1})`, stored in
/// circle order starting from the endpoint with the smallest value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenPartition {
    endpoints: Vec<FracPoint>,
    intervals: Vec<CircInterval>,
    labels: Option<Vec<u64>>,
}

impl GoldenPartition {
    /// The partition cut by the given points. Duplicates are an error.
    pub fn from_endpoints(points: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut endpoints = Vec::new();
        for n in points {
            if !seen.insert(n) {
                return Err(Error::DuplicateEndpoint(n));
            }
            endpoints.push(FracPoint(n));
        }
        if endpoints.len() < 2 {
            return Err(Error::NotATiling(format!("{} endpoint(s)", endpoints.len())));
        }
        endpoints.sort();
        let count = endpoints.len();
        let intervals = (0..count)
            .map(|i| CircInterval::half_open(endpoints[i].n(), endpoints[(i + 1) % count].n()))
            .collect::<Result<Vec<_>>>()?;
        Ok(GoldenPartition { endpoints, intervals, labels: None })
    }

    /// Validates that labelled half-open arcs tile the circle exactly:
    /// each right end is the next left end and the lengths sum to 1.
    pub fn from_intervals(pieces: Vec<(CircInterval, u64)>) -> Result<Self> {
        if pieces.len() < 2 {
            return Err(Error::NotATiling(format!("{} interval(s)", pieces.len())));
        }
        let mut pieces = pieces;
        pieces.sort_by_key(|(iv, _)| iv.left);
        let count = pieces.len();
        for i in 0..count {
            let (cur, next) = (&pieces[i].0, &pieces[(i + 1) % count].0);
            if !cur.left_closed || cur.right_closed {
                return Err(Error::NotATiling(format!("{cur} is not half-open")));
            }
            if cur.right != next.left {
                return Err(Error::NotATiling(format!("{cur} is followed by {next}")));
            }
        }
        let total: QuadNum = pieces.iter().map(|(iv, _)| iv.length()).sum();
        if total != QuadNum::one() {
            return Err(Error::NotATiling(format!("total length {total}")));
        }
        let endpoints = pieces.iter().map(|(iv, _)| iv.left).collect();
        let (intervals, labels) = pieces.into_iter().unzip();
        Ok(GoldenPartition { endpoints, intervals, labels: Some(labels) })
    }

    pub fn endpoints(&self) -> &[FracPoint] {
        &self.endpoints
    }

    pub fn intervals(&self) -> &[CircInterval] {
        &self.intervals
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn has_endpoint(&self, n: i64) -> bool {
        self.endpoints.binary_search(&FracPoint(n)).is_ok()
    }

    pub fn total_length(&self) -> QuadNum {
        self.intervals.iter().map(CircInterval::length).sum()
    }

    /// Index of the interval containing `x`, by binary search.
    pub fn locate(&self, x: FracPoint) -> usize {
        let after = self.endpoints.partition_point(|&e| e <= x);
        if after == 0 {
            self.intervals.len() - 1
        } else {
            after - 1
        }
    }

    /// Index of the interval that contains the whole arc, if any.
    pub fn find_containing(&self, arc: &CircInterval) -> Option<usize> {
        self.intervals.iter().position(|iv| arc.within(iv))
    }

    /// Whether every interval here lies in exactly one interval of `coarse`.
    pub fn refines(&self, coarse: &GoldenPartition) -> bool {
        // Coarse intervals are disjoint, so the one holding the left end is the only candidate.
        self.intervals
            .iter()
            .all(|iv| iv.within(&coarse.intervals[coarse.locate(iv.left)]))
    }

    /// One line per interval, `[{a}phi, {b}phi) label`, with decimal
    /// approximations as trailing comments.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, iv) in self.intervals.iter().enumerate() {
            let label = match &self.labels {
                Some(l) => l[i].to_string(),
                None => i.to_string(),
            };
            writeln!(
                out,
                "[{}phi, {}phi) {label}  # {:.6} .. {:.6}",
                iv.left.n(),
                iv.right.n(),
                iv.left.approx(),
                iv.right.approx()
            )
            .unwrap();
        }
        out
    }
}

/// The refinement whose endpoint set is the union of both.
pub fn combine(a: &GoldenPartition, b: &GoldenPartition) -> GoldenPartition {
    let mut seen = HashSet::new();
    let union: Vec<i64> = a
        .endpoints
        .iter()
        .chain(&b.endpoints)
        .map(|e| e.n())
        .filter(|n| seen.insert(*n))
        .collect();
    GoldenPartition::from_endpoints(union).expect("union of two tilings tiles the circle")
}

/// `I_d(m)`: where `{nφ}` lies once `n^{[≤d]} = m` is known.
///
/// With `R = −F_{d+1} + m` and `L = −F_d + m` (`m < F_d`) or
/// `L = −F_{d+2} + m` (`m ≥ F_d`), the interval is `[L, R)` for odd `d` and
/// `[R, L)` for even `d`.
pub fn lsd_interval(d: usize, m: u64) -> Result<CircInterval> {
    if d < 2 {
        return Err(Error::OutOfRange { what: "partition depth", value: d as i64 });
    }
    let m = m as i64;
    if m >= fib(d + 1) {
        return Err(Error::OutOfRange { what: "window value", value: m });
    }
    let r = -fib(d + 1) + m;
    let l = if m < fib(d) { -fib(d) + m } else { -fib(d + 2) + m };
    if d % 2 == 1 {
        CircInterval::half_open(l, r)
    } else {
        CircInterval::half_open(r, l)
    }
}

/// The `F_{d+1}` intervals `I_d(m)`, labelled by `m`.
pub fn lsd_partition(d: usize) -> Result<GoldenPartition> {
    if d < 2 {
        return Err(Error::OutOfRange { what: "partition depth", value: d as i64 });
    }
    let pieces = (0..fib(d + 1) as u64)
        .map(|m| lsd_interval(d, m).map(|iv| (iv, m)))
        .collect::<Result<Vec<_>>>()?;
    GoldenPartition::from_intervals(pieces)
}

/// The `m` with `{nφ} ∈ I_d(m)`, found geometrically.
pub fn locate_lsd(n: u64, d: usize) -> Result<u64> {
    let p = lsd_partition(d)?;
    let idx = p.locate(FracPoint(n as i64));
    Ok(p.labels().expect("lsd partitions are labelled")[idx])
}

/// `r, r', r'', …` down to `−1`.
pub fn msd_chain(r: i64) -> Result<Vec<i64>> {
    if r > -2 {
        return Err(Error::OutOfRange { what: "chain start (must be <= -2)", value: r });
    }
    let mut chain = vec![r];
    while *chain.last().unwrap() != -1 {
        chain.push(drop_bit(*chain.last().unwrap()));
    }
    Ok(chain)
}

/// `P(r)`: the partition cut by the chain of `r`.
pub fn msd_partition(r: i64) -> Result<GoldenPartition> {
    GoldenPartition::from_endpoints(msd_chain(r)?)
}

/// The arc `(−φ, −2φ) mod 1` of points whose last digit is 1.
pub fn one_region() -> CircInterval {
    CircInterval::open(-1, -2).unwrap()
}

/// Image of `(xφ, yφ)` under appending `a`: `(y^{(a)}φ, x^{(a)}φ)`, open.
pub fn flip_image(iv: &CircInterval, a: u8) -> Result<CircInterval> {
    let (x, y) = (iv.left.n(), iv.right.n());
    CircInterval::open(append_bit(y, a)?, append_bit(x, a)?)
}

/// The interval of `p` that receives `{n^{(a)}φ}` for every `n` with
/// `{nφ}` in interval `idx`.
///
/// Appending 1 is rejected where every resident already ends in 1. For the
/// interval starting at `−φ`, appending 0 lands in `(y^{(0)}φ, −φ)`.
pub fn successor_interval(p: &GoldenPartition, idx: usize, a: u8) -> Result<usize> {
    let iv = p.intervals()[idx];
    let (x, y) = (iv.left.n(), iv.right.n());
    if x >= 0 || y >= 0 {
        return Err(Error::OutOfRange { what: "endpoint index (must be negative)", value: x.max(y) });
    }
    if [-1, -2].iter().any(|&c| iv.contains_interior(FracPoint(c))) {
        return Err(Error::Inconsistent(format!("{iv} contains -1phi or -2phi")));
    }
    if a == 1 && iv.within(&one_region()) {
        return Err(Error::IllegalDigit(iv.to_string()));
    }
    let image = if x == -1 && a == 0 {
        CircInterval::open(append_bit(y, 0)?, -1)?
    } else {
        flip_image(&iv, a)?
    };
    p.find_containing(&image)
        .ok_or_else(|| Error::Inconsistent(format!("image {image} of {iv} on {a} straddles an endpoint")))
}
