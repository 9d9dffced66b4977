//! Independent generators of the Fibonacci word `f = 0100101001001…`.
//!
//! Each generator implements [`FibWordMethod`] and is registered by name so
//! callers can pick one at runtime and cross-check it against the others.

use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::golden::floor_n_phi;
use crate::zeckendorf::encode;

/// One way of computing `f(i)`.
pub trait FibWordMethod: Send + Sync {
    fn name(&self) -> &'static str;

    fn bit(&self, i: u64) -> u8;

    fn prefix(&self, len: usize) -> Vec<u8> {
        (0..len as u64).map(|i| self.bit(i)).collect()
    }
}

/// Fixed point of the morphism `0 → 01`, `1 → 0`, grown by repeated
/// substitution and cached.
#[derive(Default)]
pub struct Morphic {
    cache: RwLock<Vec<u8>>,
}

impl Morphic {
    pub fn new() -> Self {
        Morphic { cache: RwLock::new(vec![0]) }
    }

    fn ensure(&self, len: usize) {
        if self.cache.read().unwrap().len() >= len {
            return;
        }
        let mut cache = self.cache.write().unwrap();
        if cache.is_empty() {
            cache.push(0);
        }
        while cache.len() < len {
            // The image of a prefix of a fixed point is a longer prefix.
            let grown: Vec<u8> = cache
                .iter()
                .flat_map(|&b| if b == 0 { &[0u8, 1][..] } else { &[0u8][..] })
                .copied()
                .collect();
            *cache = grown;
        }
    }
}

impl FibWordMethod for Morphic {
    fn name(&self) -> &'static str {
        "morphic"
    }

    fn bit(&self, i: u64) -> u8 {
        let i = usize::try_from(i).expect("index fits in memory");
        self.ensure(i + 1);
        self.cache.read().unwrap()[i]
    }

    fn prefix(&self, len: usize) -> Vec<u8> {
        self.ensure(len);
        self.cache.read().unwrap()[..len].to_vec()
    }
}

/// Characteristic Sturmian word of slope `γ = 2 − φ`:
/// `f(i) = ⌊(i+2)γ⌋ − ⌊(i+1)γ⌋`.
#[derive(Default, Clone, Copy)]
pub struct Sturmian;

/// `⌊nγ⌋ = 2n − ⌈nφ⌉`, and `nφ` is never an integer for `n ≠ 0`.
fn floor_n_gamma(n: i64) -> i64 {
    if n == 0 {
        0
    } else {
        2 * n - floor_n_phi(n) - 1
    }
}

impl FibWordMethod for Sturmian {
    fn name(&self) -> &'static str {
        "sturmian"
    }

    fn bit(&self, i: u64) -> u8 {
        let i = i64::try_from(i).expect("index fits in i64");
        (floor_n_gamma(i + 2) - floor_n_gamma(i + 1)) as u8
    }
}

/// Last digit of the Zeckendorf representation of `i`.
#[derive(Default, Clone, Copy)]
pub struct ZeckLastDigit;

impl FibWordMethod for ZeckLastDigit {
    fn name(&self) -> &'static str {
        "zeck"
    }

    fn bit(&self, i: u64) -> u8 {
        encode(i).digits().last().copied().unwrap_or(0)
    }
}

pub const METHOD_NAMES: [&str; 3] = ["morphic", "sturmian", "zeck"];

/// Every registered generator.
pub fn methods() -> Vec<Box<dyn FibWordMethod>> {
    vec![Box::new(Morphic::new()), Box::new(Sturmian), Box::new(ZeckLastDigit)]
}

pub fn method_by_name(name: &str) -> Result<Box<dyn FibWordMethod>> {
    methods()
        .into_iter()
        .find(|m| m.name() == name)
        .ok_or_else(|| Error::Unknown { kind: "Fibonacci word method", name: name.to_string() })
}

/// A generator selected by name.
pub struct FibWordOracle {
    method: Box<dyn FibWordMethod>,
}

impl FibWordOracle {
    pub fn new(method: Box<dyn FibWordMethod>) -> Self {
        FibWordOracle { method }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        method_by_name(name).map(Self::new)
    }

    pub fn method(&self) -> &'static str {
        self.method.name()
    }

    pub fn bit(&self, i: u64) -> u8 {
        self.method.bit(i)
    }

    pub fn prefix(&self, len: usize) -> Vec<u8> {
        self.method.prefix(len)
    }

    /// `f(i + c)`.
    pub fn shifted(&self, c: u64, i: u64) -> u8 {
        self.bit(c + i)
    }
}

impl fmt::Debug for FibWordOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FibWordOracle").field("method", &self.method()).finish()
    }
}

fn shared_morphic() -> &'static Morphic {
    static WORD: OnceLock<Morphic> = OnceLock::new();
    WORD.get_or_init(Morphic::new)
}

pub fn f_morphic(i: u64) -> u8 {
    shared_morphic().bit(i)
}

pub fn f_sturmian(i: u64) -> u8 {
    Sturmian.bit(i)
}

pub fn f_zeck(i: u64) -> u8 {
    ZeckLastDigit.bit(i)
}

/// `f(i + c)`.
pub fn shifted(c: u64, i: u64) -> u8 {
    f_sturmian(c + i)
}
