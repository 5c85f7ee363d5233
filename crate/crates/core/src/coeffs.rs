//! Classical and base-b binomial coefficients, the base-b factorial,
//! rising factorials and r-step binomials, plus the binomial-family
//! identities that need no kernel machinery.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::digits::{digit_sum, digits_into, dominated_iter, first_carry, Base};
use crate::error::{Error, Result};
use crate::verify::{Param, VerifyResult};

/// `C(n, k)`, zero for `k > n`.
pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` in machine arithmetic, `None` on overflow.
#[inline]
pub(crate) fn binom_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// `C(n, k)_b = Π_i C(n_i, k_i)` over zero-padded expansions.
pub fn binom_b(n: u64, k: u64, b: Base) -> BigUint {
    if let Some(v) = binom_b_u128(n, k, b) {
        return BigUint::from(v);
    }
    let mut nd = [0u32; 64];
    let mut kd = [0u32; 64];
    let nl = digits_into(n, b.get(), &mut nd);
    let kl = digits_into(k, b.get(), &mut kd);
    (0..nl.max(kl)).fold(BigUint::one(), |acc, i| {
        acc * binom(nd[i] as u64, kd[i] as u64)
    })
}

/// Machine-arithmetic `C(n, k)_b`; `None` only on overflow.
#[inline]
pub(crate) fn binom_b_u128(n: u64, k: u64, b: Base) -> Option<u128> {
    let b = b.get() as u64;
    let (mut n, mut k) = (n, k);
    let mut acc: u128 = 1;
    while k > 0 {
        let (nd, kd) = (n % b, k % b);
        if kd > nd {
            return Some(0);
        }
        acc = acc.checked_mul(binom_u128(nd, kd)?)?;
        n /= b;
        k /= b;
    }
    Some(acc)
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `(n!)_b = Π_i n_i!` over the canonical expansion.
pub fn factorial_b(n: u64, b: Base) -> BigUint {
    let mut nd = [0u32; 64];
    let len = digits_into(n, b.get(), &mut nd);
    nd[..len]
        .iter()
        .fold(BigUint::one(), |acc, &d| acc * factorial(d as u64))
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: &BigRational, k: u64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| {
        acc * (x + BigRational::from_integer(BigInt::from(i)))
    })
}

/// r-step binomial `x (x+r) ... (x+(d-1)r) / d!`.
pub fn step_binom(x: &BigRational, r: &BigRational, d: u64) -> BigRational {
    let num = (0..d).fold(BigRational::one(), |acc, i| {
        acc * (x + r * BigRational::from_integer(BigInt::from(i)))
    });
    num / BigRational::from_integer(BigInt::from(factorial(d)))
}

fn chu_vandermonde_sides_u128(n: u64, m: u64, r: u64, b: Base) -> Option<(u128, u128)> {
    let lhs = binom_b_u128(n + m, r, b)?;
    let mut rhs: u128 = 0;
    for k in dominated_iter(r, b) {
        let term = binom_b_u128(n, k, b)?.checked_mul(binom_b_u128(m, r - k, b)?)?;
        rhs = rhs.checked_add(term)?;
    }
    Some((lhs, rhs))
}

fn chu_vandermonde_sides(n: u64, m: u64, r: u64, b: Base) -> (BigUint, BigUint) {
    if let Some((l, r)) = chu_vandermonde_sides_u128(n, m, r, b) {
        return (BigUint::from(l), BigUint::from(r));
    }
    let lhs = binom_b(n + m, r, b);
    let rhs = dominated_iter(r, b)
        .map(|k| binom_b(n, k, b) * binom_b(m, r - k, b))
        .sum();
    (lhs, rhs)
}

fn carry_precondition(n: u64, m: u64, b: Base) -> Result<()> {
    match first_carry(n, m, b) {
        None => Ok(()),
        Some(pos) => Err(Error::Precondition(format!(
            "{n} + {m} carries in base {b} at digit position {pos}"
        ))),
    }
}

/// Base-b Chu-Vandermonde for carry-free `n + m`:
/// `C(n+m, r)_b = Σ_{k ≤_b r} C(n, k)_b C(m, r-k)_b`.
pub fn verify_chu_vandermonde(n: u64, m: u64, r: u64, b: Base) -> Result<VerifyResult> {
    carry_precondition(n, m, b)?;
    let (lhs, rhs) = chu_vandermonde_sides(n, m, r, b);
    Ok(VerifyResult::compare(
        "chu-vandermonde",
        vec![
            Param::new("n", n),
            Param::new("m", m),
            Param::new("r", r),
            Param::new("b", b.get() as u64),
        ],
        lhs,
        rhs,
    ))
}

/// Chu-Vandermonde for one carry-free pair over every `r ≤ n + m`.
pub fn verify_chu_vandermonde_all_r(n: u64, m: u64, b: Base) -> Result<VerifyResult> {
    carry_precondition(n, m, b)?;
    let params = vec![
        Param::new("n", n),
        Param::new("m", m),
        Param::new("b", b.get() as u64),
    ];
    for r in 0..=n + m {
        let pass = match chu_vandermonde_sides_u128(n, m, r, b) {
            Some((l, rr)) => l == rr,
            None => {
                let (l, rr) = chu_vandermonde_sides(n, m, r, b);
                l == rr
            }
        };
        if !pass {
            return verify_chu_vandermonde(n, m, r, b);
        }
    }
    let (l, rr) = chu_vandermonde_sides(n, m, n + m, b);
    Ok(VerifyResult::compare("chu-vandermonde", params, l, rr))
}

fn pow2_rat(e: i64) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    }
}

/// The three power sums `Σ_k C(n,k)_b s_b(k)^j` for `j = 0, 1, 2` against
/// `2^s`, `s 2^{s-1}` and `s (s+1) 2^{s-2}` with `s = s_b(n)`, all exact.
pub fn verify_power_sum_identities(n: u64, b: Base) -> VerifyResult {
    let mut sums = [BigUint::zero(), BigUint::zero(), BigUint::zero()];
    for k in dominated_iter(n, b) {
        let c = binom_b(n, k, b);
        let s = digit_sum(k, b);
        sums[1] += &c * s;
        sums[2] += &c * (s * s);
        sums[0] += c;
    }
    let s = digit_sum(n, b) as i64;
    let sr = BigRational::from_integer(BigInt::from(s));
    let closed = vec![
        pow2_rat(s),
        &sr * pow2_rat(s - 1),
        &sr * (&sr + BigRational::one()) * pow2_rat(s - 2),
    ];
    let lhs: Vec<BigRational> = sums
        .into_iter()
        .map(|v| BigRational::from_integer(BigInt::from(v)))
        .collect();
    VerifyResult::compare(
        "power-sums",
        vec![Param::new("n", n), Param::new("b", b.get() as u64)],
        lhs,
        closed,
    )
}
