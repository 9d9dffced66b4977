//! Exact arithmetic in `Q(√5)` and on the circle `R/Z` at the points `{nφ}`.
//!
//! Nothing here touches floating point except the `approx` helpers, which
//! exist only to annotate debug output.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `(p + q·√5) / 2` of `Q(√5)` with `p ≡ q (mod 2)`.
///
/// The parity constraint makes this exactly the ring `Z[φ]`, which holds
/// every integer and every integer multiple of `φ = (1 + √5)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadNum {
    p: BigInt,
    q: BigInt,
}

impl QuadNum {
    /// Builds `(p + q√5)/2`, or `None` if `p` and `q` differ in parity.
    pub fn try_new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Option<Self> {
        let (p, q) = (p.into(), q.into());
        if (&p - &q).is_odd() {
            return None;
        }
        Some(QuadNum { p, q })
    }

    pub fn zero() -> Self {
        QuadNum { p: BigInt::zero(), q: BigInt::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadNum { p: n.into() * 2, q: BigInt::zero() }
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        QuadNum { p: BigInt::one(), q: BigInt::one() }
    }

    /// `φ⁻¹ = φ − 1`.
    pub fn phi_inv() -> Self {
        QuadNum { p: BigInt::from(-1), q: BigInt::one() }
    }

    /// The slope `γ = 2 − φ` of the Fibonacci word.
    pub fn gamma() -> Self {
        QuadNum { p: BigInt::from(3), q: BigInt::from(-1) }
    }

    /// `n·φ`.
    pub fn n_phi(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        QuadNum { p: n.clone(), q: n }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `⌊self⌋`, exact.
    pub fn floor(&self) -> BigInt {
        // q√5 lies strictly between t and t+1 (or -t-1 and -t) for q ≠ 0.
        let t = (&self.q * &self.q * 5u32).sqrt();
        let num = match self.q.sign() {
            num_bigint::Sign::NoSign => self.p.clone(),
            num_bigint::Sign::Plus => &self.p + &t,
            num_bigint::Sign::Minus => &self.p - &t - 1,
        };
        num.div_floor(&BigInt::from(2))
    }

    /// The fractional part `self − ⌊self⌋`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &Self::from_int(self.floor())
    }

    /// Lossy approximation for annotations only.
    pub fn approx(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        (p + q * 5f64.sqrt()) / 2.0
    }
}

/// Orders two field elements without leaving the integers.
pub fn quad_cmp(a: &QuadNum, b: &QuadNum) -> Ordering {
    let dp = &a.p - &b.p;
    let dq = &a.q - &b.q;
    sign_lin_big(&dp, &dq)
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_cmp(self, other)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√5)/2", self.p, self.q)
    }
}

impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { p: &self.p + &rhs.p, q: &self.q + &rhs.q }
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        QuadNum { p: &self.p - &rhs.p, q: &self.q - &rhs.q }
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        // ((p1 + q1√5)(p2 + q2√5))/4; both numerators are even in Z[φ].
        let p = &self.p * &rhs.p + &self.q * &rhs.q * 5u32;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        QuadNum { p: p / 2, q: q / 2 }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { p: -&self.p, q: -&self.q }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadNum {
            type Output = QuadNum;
            fn $m(self, rhs: QuadNum) -> QuadNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for QuadNum {
    fn sum<I: Iterator<Item = QuadNum>>(iter: I) -> Self {
        iter.fold(QuadNum::zero(), |acc, x| &acc + &x)
    }
}

/// Sign of `a + b√5`.
fn sign_lin_big(a: &BigInt, b: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    if b.is_zero() {
        return a.cmp(&zero);
    }
    if a.is_zero() || a.sign() == b.sign() {
        return b.cmp(&zero);
    }
    let mag = (a * a).cmp(&(b * b * 5u32));
    if a.is_positive() {
        mag
    } else {
        mag.reverse()
    }
}

/// Sign of `a + b√5`, with an exact `i128` path and a `BigInt` fallback.
fn sign_lin(a: i128, b: i128) -> Ordering {
    if b == 0 {
        return a.cmp(&0);
    }
    if a == 0 || a.signum() == b.signum() {
        return b.cmp(&0);
    }
    let squares = a
        .checked_mul(a)
        .zip(b.checked_mul(b).and_then(|b2| b2.checked_mul(5)));
    match squares {
        Some((a2, b2)) => {
            let mag = a2.cmp(&b2);
            if a > 0 {
                mag
            } else {
                mag.reverse()
            }
        }
        None => sign_lin_big(&BigInt::from(a), &BigInt::from(b)),
    }
}

/// `⌊nφ⌋`, exact.
pub fn floor_n_phi(n: i64) -> i64 {
    let n128 = n as i128;
    let sq = (n128 * n128).checked_mul(5);
    match sq {
        Some(sq) => {
            let t = (sq as u128).sqrt() as i128;
            let num = if n >= 0 { n128 + t } else { n128 - t - 1 };
            Integer::div_floor(&num, &2) as i64
        }
        None => QuadNum::n_phi(n)
            .floor()
            .to_i64()
            .expect("floor of n*phi fits in i64 only for |n| < 2^62"),
    }
}

/// The point `{nφ}` on the circle, stored symbolically by `n`.
///
/// Distinct `n` give distinct points because `φ` is irrational, so equality
/// is equality of `n` and the ordering by fractional value is total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FracPoint(pub i64);

impl FracPoint {
    pub fn n(self) -> i64 {
        self.0
    }

    /// `{nφ}` as an exact field element.
    pub fn value(self) -> QuadNum {
        let n = self.0 as i128;
        let fl = floor_n_phi(self.0) as i128;
        QuadNum::try_new(n - 2 * fl, n).expect("p = n - 2k has the parity of n")
    }

    pub fn approx(self) -> f64 {
        self.value().approx()
    }
}

impl Ord for FracPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // {xφ} − {yφ} = (x−y)φ − (⌊xφ⌋ − ⌊yφ⌋) = ((x−y) − 2m + (x−y)√5)/2
        let k = self.0 as i128 - other.0 as i128;
        let m = floor_n_phi(self.0) as i128 - floor_n_phi(other.0) as i128;
        let ord = sign_lin(k - 2 * m, k);
        debug_assert_ne!(ord, Ordering::Equal);
        ord
    }
}

impl PartialOrd for FracPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FracPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}phi", self.0)
    }
}

/// `{xφ} < {yφ}`.
pub fn frac_lt(x: FracPoint, y: FracPoint) -> bool {
    x < y
}

/// Offset of `x` measured counter-clockwise from `base`, i.e. `{(x − base)φ}`.
fn offset(base: FracPoint, x: FracPoint) -> FracPoint {
    FracPoint(x.0 - base.0)
}

/// A circular arc from `{left·φ}` to `{right·φ}` taken through increasing
/// residues, wrapping past 1 when the left point is the larger one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CircInterval {
    pub left: FracPoint,
    pub right: FracPoint,
    pub left_closed: bool,
    pub right_closed: bool,
}

impl CircInterval {
    pub fn new(left: i64, right: i64, left_closed: bool, right_closed: bool) -> Result<Self> {
        if left == right {
            return Err(Error::DegenerateInterval(left));
        }
        Ok(CircInterval {
            left: FracPoint(left),
            right: FracPoint(right),
            left_closed,
            right_closed,
        })
    }

    /// `[left·φ, right·φ) mod 1`.
    pub fn half_open(left: i64, right: i64) -> Result<Self> {
        Self::new(left, right, true, false)
    }

    /// `(left·φ, right·φ) mod 1`.
    pub fn open(left: i64, right: i64) -> Result<Self> {
        Self::new(left, right, false, false)
    }

    pub fn wraps(&self) -> bool {
        self.left > self.right
    }

    /// Exact membership honouring the endpoint flags.
    pub fn contains(&self, x: FracPoint) -> bool {
        if x == self.left {
            return self.left_closed;
        }
        if x == self.right {
            return self.right_closed;
        }
        self.contains_interior(x)
    }

    /// Membership in the open arc.
    pub fn contains_interior(&self, x: FracPoint) -> bool {
        if x == self.left || x == self.right {
            return false;
        }
        if self.wraps() {
            x > self.left || x < self.right
        } else {
            self.left < x && x < self.right
        }
    }

    /// Arc length `{(right − left)φ}`.
    pub fn length(&self) -> QuadNum {
        offset(self.left, self.right).value()
    }

    /// Whether this arc lies inside `other` (endpoints may coincide).
    pub fn within(&self, other: &CircInterval) -> bool {
        if self.right == other.left {
            return false;
        }
        let a = offset(other.left, self.left);
        let b = offset(other.left, self.right);
        let d = offset(other.left, other.right);
        a < b && b <= d
    }

    /// The arc with the same endpoints covering the rest of the circle.
    pub fn complement(&self) -> CircInterval {
        CircInterval {
            left: self.right,
            right: self.left,
            left_closed: !self.right_closed,
            right_closed: !self.left_closed,
        }
    }
}

impl fmt::Display for CircInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.left_closed { '[' } else { '(' };
        let close = if self.right_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.left, self.right)
    }
}

/// All integers of a window sorted once by exact fractional value, so that
/// circular membership among them reduces to comparing ranks.
#[derive(Clone, Debug)]
pub struct FracRanking {
    lo: i64,
    rank: Vec<u32>,
}

impl FracRanking {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi);
        let mut order: Vec<i64> = (lo..=hi).collect();
        order.sort_unstable_by_key(|&n| FracPoint(n));
        let mut rank = vec![0u32; order.len()];
        for (r, n) in order.into_iter().enumerate() {
            rank[(n - lo) as usize] = r as u32;
        }
        FracRanking { lo, rank }
    }

    pub fn covers(&self, n: i64) -> bool {
        n >= self.lo && ((n - self.lo) as usize) < self.rank.len()
    }

    pub fn rank(&self, n: i64) -> u32 {
        assert!(self.covers(n), "{n} outside ranking window");
        self.rank[(n - self.lo) as usize]
    }

    /// `{pφ} ∈ (xφ, yφ) mod 1`, open arc.
    pub fn in_open(&self, x: i64, y: i64, p: i64) -> bool {
        if p == x || p == y || x == y {
            return false;
        }
        let (rx, ry, rp) = (self.rank(x), self.rank(y), self.rank(p));
        if rx < ry {
            rx < rp && rp < ry
        } else {
            rp > rx || rp < ry
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q: i64) -> QuadNum {
        QuadNum::try_new(p, q).unwrap()
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(quad_cmp(&QuadNum::phi(), &QuadNum::one()), Ordering::Greater);
        let two_minus_phi = q(3, -1);
        let phi_minus_one = q(-1, 1);
        assert_eq!(quad_cmp(&two_minus_phi, &phi_minus_one), Ordering::Less);
        assert_eq!(quad_cmp(&QuadNum::phi(), &QuadNum::phi()), Ordering::Equal);
    }

    #[test]
    fn parity_is_enforced() {
        assert!(QuadNum::try_new(1, 2).is_none());
        let x = &(&QuadNum::phi() * &QuadNum::phi()) - &QuadNum::phi();
        assert_eq!(x, QuadNum::one());
        assert!(QuadNum::zero().is_zero());
        assert!(!q(2, 0).is_zero());
    }

    #[test]
    fn phi_inverse_and_gamma() {
        assert_eq!(&QuadNum::phi() * &QuadNum::phi_inv(), QuadNum::one());
        assert_eq!(&QuadNum::gamma() + &QuadNum::phi(), QuadNum::from_int(2));
        assert_eq!(QuadNum::phi().pow(0), QuadNum::one());
        // φ^5 = 5φ + 3
        assert_eq!(QuadNum::phi().pow(5), &QuadNum::n_phi(5) + &QuadNum::from_int(3));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_n_phi(0), 0);
        assert_eq!(floor_n_phi(1), 1);
        assert_eq!(floor_n_phi(-5), -9);
        assert_eq!(floor_n_phi(-1), -2);
        assert_eq!(QuadNum::n_phi(-5).floor(), BigInt::from(-9));
    }

    #[test]
    fn floor_matches_quadnum_route_near_overflow() {
        for n in [i64::MAX / 3, -(i64::MAX / 3), 1 << 61, -(1 << 61), 3_000_000_000_000_000_000] {
            assert_eq!(BigInt::from(floor_n_phi(n)), QuadNum::n_phi(n).floor(), "n = {n}");
        }
    }

    #[test]
    fn frac_lt_examples() {
        assert!(frac_lt(FracPoint(-14), FracPoint(-9)));
        assert!(frac_lt(FracPoint(-3), FracPoint(-2)));
        assert!(!frac_lt(FracPoint(7), FracPoint(7)));
    }

    #[test]
    fn contains_examples() {
        let i = CircInterval::open(-1, -2).unwrap();
        assert!(i.contains(FracPoint(1)));
        assert!(!i.contains(FracPoint(0)));
        let start = CircInterval::half_open(-5, -8).unwrap();
        assert!(start.contains(FracPoint(0)));
        let j = CircInterval::half_open(-11, -1).unwrap();
        assert!(j.contains(FracPoint(-11)));
        assert!(!j.contains(FracPoint(-1)));
    }

    #[test]
    fn degenerate_interval_rejected() {
        assert_eq!(CircInterval::open(-3, -3), Err(Error::DegenerateInterval(-3)));
    }

    #[test]
    fn within_and_complement() {
        let outer = CircInterval::half_open(-5, -8).unwrap();
        assert!(outer.within(&outer));
        let inner = CircInterval::half_open(-13, -8).unwrap();
        assert!(inner.within(&outer));
        assert!(!outer.within(&inner));
        let c = outer.complement();
        assert_eq!(&outer.length() + &c.length(), QuadNum::one());
        assert!(!inner.within(&c));
    }

    #[test]
    fn ranking_agrees_with_direct_membership() {
        let r = FracRanking::new(-50, 50);
        for x in -10..0 {
            for y in -10..0 {
                if x == y {
                    continue;
                }
                let arc = CircInterval::open(x, y).unwrap();
                for p in 0..50 {
                    assert_eq!(r.in_open(x, y, p), arc.contains(FracPoint(p)));
                }
            }
        }
    }
}
