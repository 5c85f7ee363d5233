//! Base-b Fibonacci numbers `F^{(b)}_n = Π_i F_{n_i}`.
//!
//! Fibonacci numbers here use the shifted convention `F_0 = F_1 = 1`,
//! `F_{n+1} = F_n + F_{n-1}`, so `F_2 = 2`, `F_3 = 3`, `F_4 = 5`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::coeffs::{binom_b, binom_b_u128};
use crate::digits::{digit_count, digits_into, dominated_iter, Base};
use crate::error::Result;
use crate::series::Series;
use crate::summation::digitwise_series;
use crate::verify::{Param, VerifyResult};

/// `F_0 ..= F_max`.
#[derive(Debug, Clone)]
pub struct FibTable {
    values: Vec<BigUint>,
}

impl FibTable {
    pub fn new(max: u64) -> Self {
        let mut values = vec![BigUint::one(), BigUint::one()];
        for i in 2..=max as usize {
            let next = &values[i - 1] + &values[i - 2];
            values.push(next);
        }
        values.truncate(max as usize + 1);
        FibTable { values }
    }

    /// Table covering every digit of base `b`, plus two entries of headroom
    /// for the block-sum identities.
    pub fn for_base(b: Base) -> Self {
        FibTable::new(b.get() as u64 + 2)
    }

    pub fn get(&self, n: u64) -> &BigUint {
        &self.values[n as usize]
    }

    pub fn fib_b(&self, n: u64, b: Base) -> BigUint {
        let mut nd = [0u32; 64];
        let len = digits_into(n, b.get(), &mut nd);
        nd[..len]
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * self.get(d as u64))
    }
}

pub fn fib(n: u64) -> BigUint {
    FibTable::new(n).get(n).clone()
}

/// `F^{(b)}_n = Π_i F_{n_i}`.
pub fn fib_b(n: u64, b: Base) -> BigUint {
    FibTable::new(b.get() as u64).fib_b(n, b)
}

/// `Σ_{k ≤_b n} C(n-k, k)_b`.
pub fn fib_b_dominated(n: u64, b: Base) -> BigUint {
    let mut total = BigUint::zero();
    for k in dominated_iter(n, b) {
        match binom_b_u128(n - k, k, b) {
            Some(v) => total += v,
            None => total += binom_b(n - k, k, b),
        }
    }
    total
}

/// `Σ_{k=0}^{n} C(n-k, k)_2`, with no dominance restriction on `k`.
pub fn fib_tilde2(n: u64) -> u64 {
    let b = Base::new(2).unwrap();
    (0..=n)
        .map(|k| binom_b_u128(n - k, k, b).expect("base-2 binomials are 0 or 1") as u64)
        .sum()
}

/// Stern's diatomic sequence: `a_0 = 0`, `a_1 = 1`, `a_{2n} = a_n`,
/// `a_{2n+1} = a_n + a_{n+1}`.
pub fn stern(n: u64) -> u64 {
    stern_pair(n).0
}

/// `(a_n, a_{n+1})`, descending through `n / 2`.
fn stern_pair(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let (am, am1) = stern_pair(n / 2);
    if n.is_multiple_of(2) {
        (am, am + am1)
    } else {
        (am + am1, am1)
    }
}

/// Generating series `Π_{i<K} Σ_{d<b} F_d z^{d b^i}` of order `order`.
pub fn fib_b_genfun(b: Base, order: usize) -> Result<Series<BigUint>> {
    let table = FibTable::new(b.get() as u64);
    digitwise_series(b, |d, _| table.get(d as u64).clone(), order)
}

/// `F^{(b)}_n` against the dominated shallow-diagonal sum.
pub fn verify_fib_dominated(n: u64, b: Base) -> VerifyResult {
    VerifyResult::compare(
        "fib-eq41",
        vec![Param::new("n", n), Param::new("b", b.get() as u64)],
        fib_b(n, b),
        fib_b_dominated(n, b),
    )
}

fn int(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

fn signed(sign_exp: i64, v: BigInt) -> BigInt {
    if sign_exp.rem_euclid(2) == 0 {
        v
    } else {
        -v
    }
}

/// The digit-block identities for `F^{(b)}`, one record per sub-identity:
///
/// * `fib-digit-recurrence`: `F_{bn+p} = F_n F_p` for `0 ≤ p < b`;
/// * `fib-block-sum`: `Σ_{k<b} F_{bn+k} = 2F_{bn+b-1} + F_{bn+b-2} - F_n`;
/// * `fib-partial-block-sum`: `Σ_{k=p}^{q} F_{bn+k} = F_{bn+q+2} - F_{bn+p+1}`
///   for `0 ≤ p ≤ q ≤ b-3`;
/// * `fib-cassini`: `F_{bn+q}^2 - F_{bn+q+1} F_{bn+q-1} = (-1)^q F_n^2` for
///   `1 ≤ q ≤ b-2`;
/// * `fib-general-cassini`: `F_{bn+q}^2 - F_{bn+q+r} F_{bn+q-r} =
///   (-1)^{q-r+1} F_{r-1}^2 F_n^2` for `1 ≤ r ≤ q ≤ b-1-r`.
///
/// All `F` with a superscript-free index `p, q, r` are plain Fibonacci
/// numbers; the others are base-b. The last four need `b ≥ 3` and are
/// omitted for `b = 2`.
pub fn verify_fib_identities(n: u64, b: Base) -> Vec<VerifyResult> {
    let table = FibTable::for_base(b);
    let bb = b.get() as u64;
    let f = |m: u64| int(&table.fib_b(m, b));
    let fp = |p: u64| int(table.get(p));
    let fnb = f(n);
    let block = bb * n;
    let base_params = || vec![Param::new("n", n), Param::new("b", bb)];
    let with = |extra: Vec<(&str, u64)>| {
        let mut ps = base_params();
        ps.extend(extra.into_iter().map(|(k, v)| Param::new(k, v)));
        ps
    };

    let mut out = Vec::new();
    out.push(VerifyResult::aggregate(
        "fib-digit-recurrence",
        base_params(),
        (0..bb).map(|p| {
            VerifyResult::compare(
                "fib-digit-recurrence",
                with(vec![("p", p)]),
                f(block + p),
                &fnb * fp(p),
            )
        }),
    ));
    if bb < 3 {
        return out;
    }

    let block_sum: BigInt = (0..bb).map(|k| f(block + k)).sum();
    out.push(VerifyResult::compare(
        "fib-block-sum",
        base_params(),
        block_sum,
        f(block + bb - 1) * 2 + f(block + bb - 2) - &fnb,
    ));

    let mut partial = Vec::new();
    for q in 0..=bb - 3 {
        for p in 0..=q {
            let lhs: BigInt = (p..=q).map(|k| f(block + k)).sum();
            partial.push(VerifyResult::compare(
                "fib-partial-block-sum",
                with(vec![("p", p), ("q", q)]),
                lhs,
                f(block + q + 2) - f(block + p + 1),
            ));
        }
    }
    out.push(VerifyResult::aggregate(
        "fib-partial-block-sum",
        base_params(),
        partial,
    ));

    out.push(VerifyResult::aggregate(
        "fib-cassini",
        base_params(),
        (1..=bb - 2).map(|q| {
            let lhs = f(block + q).pow(2) - f(block + q + 1) * f(block + q - 1);
            VerifyResult::compare(
                "fib-cassini",
                with(vec![("q", q)]),
                lhs,
                signed(q as i64, fnb.pow(2)),
            )
        }),
    ));

    let mut general = Vec::new();
    for r in 1..=(bb - 1) / 2 {
        for q in r..=bb - 1 - r {
            let lhs = f(block + q).pow(2) - f(block + q + r) * f(block + q - r);
            let rhs = signed(q as i64 - r as i64 + 1, fp(r - 1).pow(2) * fnb.pow(2));
            general.push(VerifyResult::compare(
                "fib-general-cassini",
                with(vec![("q", q), ("r", r)]),
                lhs,
                rhs,
            ));
        }
    }
    out.push(VerifyResult::aggregate(
        "fib-general-cassini",
        base_params(),
        general,
    ));
    out
}

/// How often each candidate sign exponent of the generalized Cassini
/// identity matches the data over the block of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CassiniSignTally {
    pub cases: u64,
    /// Matches with sign `(-1)^{q-r+1}`.
    pub q_sign_matches: u64,
    /// Matches with sign `(-1)^{n-r+1}`.
    pub n_sign_matches: u64,
}

pub fn general_cassini_sign_tally(n: u64, b: Base) -> CassiniSignTally {
    let table = FibTable::for_base(b);
    let bb = b.get() as u64;
    let f = |m: u64| int(&table.fib_b(m, b));
    let block = bb * n;
    let mut tally = CassiniSignTally::default();
    for r in 1..=bb.saturating_sub(1) / 2 {
        for q in r..=bb - 1 - r {
            let lhs = f(block + q).pow(2) - f(block + q + r) * f(block + q - r);
            let mag = f(block + r - 1).pow(2);
            tally.cases += 1;
            if lhs == signed(q as i64 - r as i64 + 1, mag.clone()) {
                tally.q_sign_matches += 1;
            }
            if lhs == signed(n as i64 - r as i64 + 1, mag) {
                tally.n_sign_matches += 1;
            }
        }
    }
    tally
}

/// `F^{(3)}_n = 2^{(number of digits 2 in n)}`.
pub fn verify_ternary_count(n: u64) -> VerifyResult {
    let b = Base::new(3).unwrap();
    let twos = digit_count(n, b, 2).expect("2 is a base-3 digit");
    VerifyResult::compare(
        "ternary-count",
        vec![Param::new("n", n)],
        fib_b(n, b),
        BigUint::one() << twos,
    )
}

/// The ternary recurrence `a(3n) = a(n)`, `a(3n+1) = a(n)`, `a(3n+2) = 2a(n)`
/// for `F^{(3)}`, plus the initial values `1, 1, 2`.
pub fn verify_a117592(n: u64) -> VerifyResult {
    let b = Base::new(3).unwrap();
    let a = |m: u64| fib_b(m, b);
    let an = a(n);
    let mut lhs = vec![a(3 * n), a(3 * n + 1), a(3 * n + 2)];
    let mut rhs = vec![an.clone(), an.clone(), an * 2u32];
    if n < 3 {
        lhs.push(a(n));
        rhs.push(BigUint::from([1u32, 1, 2][n as usize]));
    }
    VerifyResult::compare("a117592", vec![Param::new("n", n)], lhs, rhs)
}

/// `F~_n = a_{n+1}` with the diatomic sequence `a` from its own recurrence.
pub fn verify_stern_equivalence(n: u64) -> VerifyResult {
    VerifyResult::compare(
        "stern-equivalence",
        vec![Param::new("n", n)],
        fib_tilde2(n),
        stern(n + 1),
    )
}
