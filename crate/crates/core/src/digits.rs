//! Base-b digit expansions, digit statistics, digital dominance and
//! carry-free addition.
//!
//! Expansions are little-endian: index `i` holds the coefficient of `b^i`.
//! Zero is represented by the single digit `[0]`. Whenever two expansions
//! are compared digitwise, the shorter one is padded with zeros.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A radix, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Base(u32);

impl Base {
    pub fn new(b: u64) -> Result<Self> {
        match u32::try_from(b) {
            Ok(b) if b >= 2 => Ok(Base(b)),
            _ => Err(Error::InvalidBase(b)),
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for Base {
    type Error = Error;

    fn try_from(b: u64) -> Result<Self> {
        Base::new(b)
    }
}

/// Canonical little-endian base-b expansion.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVec {
    base: Base,
    digits: Vec<u32>,
}

impl DigitVec {
    /// Builds an expansion from little-endian digits. Most-significant zero
    /// digits are stripped; an empty list is read as zero.
    pub fn from_digits(base: Base, mut digits: Vec<u32>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d >= base.get()) {
            return Err(Error::InvalidDigit {
                digit: d as u64,
                base: base.get(),
            });
        }
        while digits.len() > 1 && *digits.last().unwrap() == 0 {
            digits.pop();
        }
        if digits.is_empty() {
            digits.push(0);
        }
        Ok(DigitVec { base, digits })
    }

    pub fn from_biguint(n: &BigUint, base: Base) -> Self {
        if n.is_zero() {
            return DigitVec {
                base,
                digits: vec![0],
            };
        }
        // to_radix_le only emits u8 digits, so wider bases need long division
        if base.get() <= 256 {
            let digits = n
                .to_radix_le(base.get())
                .into_iter()
                .map(u32::from)
                .collect();
            return DigitVec { base, digits };
        }
        let b = BigUint::from(base.get());
        let mut rest = n.clone();
        let mut digits = Vec::new();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem(&b);
            digits.push(r.to_u32().unwrap());
            rest = q;
        }
        DigitVec { base, digits }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Number of digits in the canonical expansion (1 for zero).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digit at position `i`, zero past the end.
    #[inline]
    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    pub fn value(&self) -> BigUint {
        from_digits(self)
    }

    pub fn value_u64(&self) -> Option<u64> {
        let b = self.base.get() as u64;
        self.digits
            .iter()
            .rev()
            .try_fold(0u64, |acc, &d| acc.checked_mul(b)?.checked_add(d as u64))
    }
}

impl fmt::Display for DigitVec {
    /// Most-significant digit first, e.g. `[2,1,1]_3` for 22.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.digits.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]_{}", self.base)
    }
}

/// Fills `out` with the little-endian digits of `n` and returns the count.
/// Used by hot loops that must not allocate.
#[inline]
pub(crate) fn digits_into(mut n: u64, b: u32, out: &mut [u32; 64]) -> usize {
    if n == 0 {
        out[0] = 0;
        return 1;
    }
    let b = b as u64;
    let mut len = 0;
    while n > 0 {
        out[len] = (n % b) as u32;
        n /= b;
        len += 1;
    }
    len
}

pub fn to_digits(n: u64, b: Base) -> DigitVec {
    let mut buf = [0u32; 64];
    let len = digits_into(n, b.get(), &mut buf);
    DigitVec {
        base: b,
        digits: buf[..len].to_vec(),
    }
}

/// Horner evaluation of an expansion.
pub fn from_digits(d: &DigitVec) -> BigUint {
    let b = BigUint::from(d.base.get());
    d.digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &x| acc * &b + BigUint::from(x))
}

/// `s_b(n)`, the sum of the base-b digits of `n`.
pub fn digit_sum(n: u64, b: Base) -> u64 {
    let b = b.get() as u64;
    let mut n = n;
    let mut s = 0;
    while n > 0 {
        s += n % b;
        n /= b;
    }
    s
}

/// Number of positions of the canonical expansion of `n` holding digit `d`.
pub fn digit_count(n: u64, b: Base, d: u32) -> Result<u64> {
    if d >= b.get() {
        return Err(Error::InvalidDigit {
            digit: d as u64,
            base: b.get(),
        });
    }
    Ok(to_digits(n, b).digits.iter().filter(|&&x| x == d).count() as u64)
}

/// Digital dominance `k ≤_b n`: every digit of `k` is at most the matching
/// digit of `n`.
pub fn dominates(n: u64, k: u64, b: Base) -> bool {
    let b = b.get() as u64;
    let (mut n, mut k) = (n, k);
    while k > 0 {
        if k % b > n % b {
            return false;
        }
        k /= b;
        n /= b;
    }
    true
}

/// True iff adding `n` and `m` in base `b` produces no carry.
pub fn carry_free_add(n: u64, m: u64, b: Base) -> bool {
    first_carry(n, m, b).is_none()
}

/// Position of the least significant digit where `n + m` carries.
pub fn first_carry(n: u64, m: u64, b: Base) -> Option<usize> {
    let b = b.get() as u64;
    let (mut n, mut m) = (n, m);
    let mut pos = 0;
    while n > 0 && m > 0 {
        if n % b + m % b >= b {
            return Some(pos);
        }
        n /= b;
        m /= b;
        pos += 1;
    }
    None
}

/// Enumerates `{k : k ≤_b n}` in strictly increasing order.
pub fn dominated_iter(n: u64, b: Base) -> DominatedIter {
    DominatedIter::new(n, b)
}

/// Odometer over the digit boxes `[0, n_i]`, least significant digit
/// turning fastest, which yields the dominated set in increasing order.
#[derive(Debug, Clone)]
pub struct DominatedIter {
    limits: Vec<u64>,
    weights: Vec<u64>,
    current: Vec<u64>,
    value: u64,
    done: bool,
}

impl DominatedIter {
    fn new(n: u64, b: Base) -> Self {
        let dv = to_digits(n, b);
        let mut weights = Vec::with_capacity(dv.len());
        let mut w = 1u64;
        for i in 0..dv.len() {
            weights.push(w);
            if i + 1 < dv.len() {
                w *= b.get() as u64;
            }
        }
        DominatedIter {
            limits: dv.digits.iter().map(|&d| d as u64).collect(),
            current: vec![0; dv.len()],
            weights,
            value: 0,
            done: false,
        }
    }

    /// Number of elements still to be produced is at most this; equals
    /// `Π (n_i + 1)` before iteration starts.
    pub fn total(&self) -> u64 {
        self.limits.iter().map(|&l| l + 1).product()
    }
}

impl Iterator for DominatedIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let out = self.value;
        let mut i = 0;
        loop {
            if i == self.limits.len() {
                self.done = true;
                break;
            }
            if self.current[i] < self.limits[i] {
                self.current[i] += 1;
                self.value += self.weights[i];
                break;
            }
            self.value -= self.current[i] * self.weights[i];
            self.current[i] = 0;
            i += 1;
        }
        Some(out)
    }
}
