//! Zeckendorf (Fibonacci-base) numeration, including the signed form
//! `−n = −F_k + m` with `F_k` the smallest Fibonacci number `≥ n`.
//!
//! Digit words are msd-first slices of `0`/`1` bytes; the rightmost digit is
//! the coefficient of `F_2`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest index with `F_i` representable in `i64`.
pub const MAX_FIB_INDEX: usize = 92;

fn fib_table() -> &'static [i64] {
    static TABLE: OnceLock<Vec<i64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0i64, 1];
        while let Some(next) = t[t.len() - 1].checked_add(t[t.len() - 2]) {
            t.push(next);
        }
        t
    })
}

/// `F_i` with `F_0 = 0`, `F_1 = 1`.
pub fn fib(i: usize) -> i64 {
    match fib_table().get(i) {
        Some(&f) => f,
        None => panic!("F_{i} does not fit in i64 (max index {MAX_FIB_INDEX})"),
    }
}

/// Smallest `k ≥ 2` with `F_k ≥ n`.
pub fn smallest_fib_index_geq(n: i64) -> usize {
    let t = fib_table();
    (2..t.len()).find(|&k| t[k] >= n).expect("n exceeds the Fibonacci table")
}

/// Whether `n` is a Fibonacci number `F_i` with `i ≥ 2`.
pub fn is_fibonacci(n: i64) -> bool {
    n >= 1 && fib(smallest_fib_index_geq(n)) == n
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    NonNeg,
    Neg,
}

/// A Zeckendorf representation. For `Neg` the stored digits follow an
/// implicit leading `−1` worth `−F_k`, `k = digits.len() + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeckRepr {
    sign: Sign,
    digits: Vec<u8>,
}

impl ZeckRepr {
    /// The canonical representation of any integer.
    pub fn of(n: i64) -> Self {
        if n >= 0 {
            encode(n as u64)
        } else {
            encode_neg(n.unsigned_abs()).expect("n >= 1")
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Index `k` of the leading `−F_k` term, for negative forms.
    pub fn leading_index(&self) -> Option<usize> {
        match self.sign {
            Sign::Neg => Some(self.digits.len() + 2),
            Sign::NonNeg => None,
        }
    }

    pub fn value(&self) -> i64 {
        let m = decode(&self.digits) as i64;
        match self.sign {
            Sign::NonNeg => m,
            Sign::Neg => m - fib(self.digits.len() + 2),
        }
    }

    /// Textual form for files: like `Display`, but zero renders as `0`.
    pub fn to_word_string(&self) -> String {
        if self.sign == Sign::NonNeg && self.digits.is_empty() {
            "0".to_string()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for ZeckRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Neg {
            f.write_str("(-1)")?;
        }
        for &d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for ZeckRepr {
    type Err = Error;

    /// Parses `100101`, `0`, or `(-1)001`; rejects non-canonical words.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, body) = match s.strip_prefix("(-1)") {
            Some(rest) => (Sign::Neg, rest),
            None => (Sign::NonNeg, s),
        };
        let digits = parse_digits(body)?;
        let value = match sign {
            Sign::NonNeg => decode(&digits) as i64,
            Sign::Neg => decode(&digits) as i64 - fib(digits.len() + 2),
        };
        let canon = ZeckRepr::of(value);
        let trimmed: Vec<u8> = match sign {
            Sign::NonNeg => digits.iter().copied().skip_while(|&d| d == 0).collect(),
            Sign::Neg => digits,
        };
        if canon.sign != sign || canon.digits != trimmed {
            return Err(Error::Parse { line: 1, msg: format!("`{s}` is not a canonical representation") });
        }
        Ok(canon)
    }
}

/// Parses a word over `{0,1}`.
pub fn parse_digits(s: &str) -> Result<Vec<u8>> {
    s.bytes()
        .map(|b| match b {
            b'0' => Ok(0),
            b'1' => Ok(1),
            _ => Err(Error::Parse { line: 1, msg: format!("bad digit `{}`", b as char) }),
        })
        .collect()
}

/// Whether a digit word avoids `11`.
pub fn is_valid_word(digits: &[u8]) -> bool {
    digits.windows(2).all(|w| !(w[0] == 1 && w[1] == 1))
}

/// Greedy Zeckendorf representation of `n`; zero is the empty word.
pub fn encode(n: u64) -> ZeckRepr {
    let mut digits = Vec::new();
    if n > 0 {
        let n = i64::try_from(n).expect("n fits in i64");
        let mut k = 2;
        while k + 1 < fib_table().len() && fib(k + 1) <= n {
            k += 1;
        }
        let mut rest = n;
        for i in (2..=k).rev() {
            if fib(i) <= rest {
                digits.push(1);
                rest -= fib(i);
            } else {
                digits.push(0);
            }
        }
        debug_assert_eq!(rest, 0);
    }
    ZeckRepr { sign: Sign::NonNeg, digits }
}

/// `Σ x_i F_{i+2}` over an msd-first word; no validity requirement.
pub fn decode(digits: &[u8]) -> u64 {
    digits
        .iter()
        .rev()
        .enumerate()
        .filter(|&(_, &d)| d != 0)
        .map(|(i, _)| fib(i + 2) as u64)
        .fold(0u64, |acc, f| acc.checked_add(f).expect("decoded value overflows u64"))
}

/// Representation of `−n` for `n ≥ 1`.
pub fn encode_neg(n: u64) -> Result<ZeckRepr> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "negated magnitude", value: 0 });
    }
    let n = i64::try_from(n).map_err(|_| Error::OutOfRange { what: "negated magnitude", value: i64::MAX })?;
    let k = smallest_fib_index_geq(n);
    let m = fib(k) - n;
    let body = encode(m as u64).digits;
    let mut digits = vec![0u8; (k - 2) - body.len()];
    digits.extend(body);
    Ok(ZeckRepr { sign: Sign::Neg, digits })
}

/// Whether the representation of `n` ends in the digit `1`.
pub fn ends_in_one(n: i64) -> bool {
    ZeckRepr::of(n).digits.last() == Some(&1)
}

fn check_digit(a: u8) -> Result<()> {
    if a > 1 {
        return Err(Error::InvalidDigit(a));
    }
    Ok(())
}

/// `n^{(a)}`: the integer whose representation is that of `n` with `a`
/// appended on the right.
///
/// For negative `n` the result follows the signed form literally, so it may
/// be non-canonical (e.g. `(−1)^{(1)} = −F_3 + F_2 = −1`); see
/// [`is_canonical_append`].
pub fn append_bit(n: i64, a: u8) -> Result<i64> {
    check_digit(a)?;
    let repr = ZeckRepr::of(n);
    let mut digits = repr.digits.clone();
    digits.push(a);
    match repr.sign {
        Sign::NonNeg => {
            if a == 1 && repr.digits.last() == Some(&1) {
                return Err(Error::InvalidAppend(n));
            }
            Ok(decode(&digits) as i64)
        }
        Sign::Neg => Ok(decode(&digits) as i64 - fib(repr.digits.len() + 3)),
    }
}

/// Whether appending `a` to `n` yields the canonical representation of the
/// resulting integer.
pub fn is_canonical_append(n: i64, a: u8) -> bool {
    let Ok(v) = append_bit(n, a) else { return false };
    let repr = ZeckRepr::of(n);
    let mut expected = repr.digits;
    expected.push(a);
    let got = ZeckRepr::of(v);
    match repr.sign {
        Sign::NonNeg => got.sign == Sign::NonNeg && got.digits == expected.into_iter().skip_while(|&d| d == 0).collect::<Vec<_>>(),
        Sign::Neg => got.sign == Sign::Neg && got.digits == expected,
    }
}

/// `n'`: drop the rightmost digit and shift every index down by one.
/// Total; `(−1)' = −F_1 = −1`.
pub fn drop_bit(n: i64) -> i64 {
    let repr = ZeckRepr::of(n);
    let body = &repr.digits[..repr.digits.len().saturating_sub(1)];
    match repr.sign {
        Sign::NonNeg => decode(body) as i64,
        // k = len + 2, and the new leading term is −F_{k−1}
        Sign::Neg => decode(body) as i64 - fib(repr.digits.len() + 1),
    }
}

/// `n^{[≤d]}`: the part of `n` carried by `F_2 … F_d`.
pub fn low_part(n: u64, d: usize) -> u64 {
    window(n, |i| i <= d)
}

/// `n^{[≥d]}`: the part of `n` carried by `F_i`, `i ≥ max(2, d)`.
pub fn high_part(n: u64, d: usize) -> u64 {
    window(n, |i| i >= d.max(2))
}

fn window(n: u64, keep: impl Fn(usize) -> bool) -> u64 {
    encode(n)
        .digits
        .iter()
        .rev()
        .enumerate()
        .filter(|&(i, &d)| d == 1 && keep(i + 2))
        .map(|(i, _)| fib(i + 2) as u64)
        .sum()
}
