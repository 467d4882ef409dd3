//! Exponent vectors and the monomial orders used throughout the crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of variables a ring may have: x, y, z and room for auxiliary
/// elimination variables.
pub const MAX_VARS: usize = 7;

/// Exponent vector over at most [`MAX_VARS`] variables with cached total degree.
/// Unused slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn new(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many exponents");
        let mut m = Monomial::default();
        let mut deg = 0u32;
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
            deg += e;
        }
        m.deg = u16::try_from(deg).expect("degree overflow");
        m
    }

    /// x_i
    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.exps[i] = m.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        m.deg = m.deg.checked_add(other.deg).expect("degree overflow");
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = *other;
        for i in 0..MAX_VARS {
            m.exps[i] -= self.exps[i];
        }
        m.deg -= self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::default();
        let mut deg = 0;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            deg += m.exps[i];
        }
        m.deg = deg;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent vector with one entry decremented (for derivatives).
    pub fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.deg -= 1;
        Some(m)
    }

    /// Exponents re-indexed through `map` (old index → new index).
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let mut m = Monomial::default();
        for (old, &new) in map.iter().enumerate() {
            m.exps[new] = self.exps[old];
        }
        m.deg = self.deg;
        m
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    /// Drops the first `k` variables, which must not occur.
    pub(crate) fn shift_down(&self, k: usize) -> Monomial {
        debug_assert!(self.exps[..k].iter().all(|&e| e == 0));
        let mut m = Monomial::default();
        m.exps[..MAX_VARS - k].copy_from_slice(&self.exps[k..]);
        m.deg = self.deg;
        m
    }

    /// Plain lexicographic comparison of exponent vectors, used for tie-breaks.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..])
    }
}

/// A multiplicative total order on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    /// The first `front` variables form a block compared (degrevlex) before
    /// the remaining ones (degrevlex). Eliminates the front block.
    Block { front: usize },
}

impl MonomialOrder {
    /// A byte-comparable key: `key(a).cmp(&key(b)) == self.cmp(a, b)`.
    #[inline]
    pub(crate) fn key(&self, m: &Monomial) -> [u16; MAX_VARS + 2] {
        let mut k = [0u16; MAX_VARS + 2];
        match *self {
            MonomialOrder::DegRevLex => {
                k[0] = m.deg;
                for i in 0..MAX_VARS {
                    k[1 + i] = u16::MAX - m.exps[MAX_VARS - 1 - i];
                }
            }
            MonomialOrder::Lex => k[..MAX_VARS].copy_from_slice(&m.exps),
            MonomialOrder::Block { front } => {
                k[0] = m.exps[..front].iter().sum();
                for i in 0..front {
                    k[1 + i] = u16::MAX - m.exps[front - 1 - i];
                }
                k[front + 1] = m.exps[front..].iter().sum();
                for i in 0..MAX_VARS - front {
                    k[front + 2 + i] = u16::MAX - m.exps[MAX_VARS - 1 - i];
                }
            }
        }
        k
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => grevlex(a, b, 0, MAX_VARS),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Block { front } => {
                grevlex(a, b, 0, front).then_with(|| grevlex(a, b, front, MAX_VARS))
            }
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (da, db): (u32, u32) = if lo == 0 && hi == MAX_VARS {
        (a.deg as u32, b.deg as u32)
    } else {
        (
            a.exps[lo..hi].iter().map(|&e| e as u32).sum(),
            b.exps[lo..hi].iter().map(|&e| e as u32).sum(),
        )
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (lo..hi).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block { front } => write!(f, "block:{front}"),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "degrevlex" | "dp" => Ok(MonomialOrder::DegRevLex),
            "lex" | "lp" => Ok(MonomialOrder::Lex),
            other => other
                .strip_prefix("block:")
                .and_then(|k| k.parse().ok())
                .map(|front| MonomialOrder::Block { front })
                .ok_or_else(|| Error::Invalid(format!("unknown monomial order `{other}`"))),
        }
    }
}
