//! Stirling numbers of the second kind and their base-b analogue
//! `{n, k}_b = Π_i S(n, k_i)`, where only `k` is digit-expanded.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeffs::{binom, binom_b, factorial_b};
use crate::digits::{digit_sum, digits_into, dominated_iter, to_digits, Base};
use crate::error::{Error, Result};
use crate::verify::{Param, Value, VerifyResult};

/// Memoized triangle `S(n, k)` for `0 ≤ k ≤ n ≤ n_max`, built once from
/// `S(n, k) = S(n-1, k-1) + k S(n-1, k)`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(n_max: u64) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max as usize + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max as usize {
            let prev = &rows[n - 1];
            let mut row = vec![BigUint::zero(); n + 1];
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                let carry = prev.get(k).map(|v| v * k).unwrap_or_default();
                *slot = &prev[k - 1] + carry;
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn n_max(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    /// `S(n, k)`; zero for `k > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: u64, k: u64) -> BigUint {
        let row = &self.rows[n as usize];
        row.get(k as usize).cloned().unwrap_or_default()
    }

    /// `S(n, k)` with `S(·, -1) = 0`.
    fn get_signed(&self, n: u64, k: i64) -> BigUint {
        if k < 0 {
            BigUint::zero()
        } else {
            self.get(n, k as u64)
        }
    }

    pub fn stirling2_b(&self, n: u64, k: u64, b: Base) -> BigUint {
        let mut kd = [0u32; 64];
        let len = digits_into(k, b.get(), &mut kd);
        kd[..len]
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * self.get(n, d as u64))
    }

    pub fn stirling_tuple(&self, n: u64, ks: &[u64]) -> BigUint {
        ks.iter()
            .fold(BigUint::one(), |acc, &k| acc * self.get(n, k))
    }
}

/// `S(n, k)`.
pub fn stirling2(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    StirlingTable::new(n).get(n, k)
}

/// `{n, k}_b = Π_i S(n, k_i)` over the canonical expansion of `k`.
pub fn stirling2_b(n: u64, k: u64, b: Base) -> BigUint {
    StirlingTable::new(n).stirling2_b(n, k, b)
}

fn int_pow(base: u64, e: u64) -> BigUint {
    // 0^0 = 1
    num_traits::pow(BigUint::from(base), e as usize)
}

/// Explicit alternating sum
/// `(1/(k!)_b) Σ_{j ≤ k} (-1)^{s_b(k)-s_b(j)} C(k,j)_b (Π_i j_i)^n`,
/// with `j` padded to the length of `k` in the digit product. Evaluated in
/// the rationals; a non-integral result is reported as an internal error.
pub fn stirling2_b_explicit(n: u64, k: u64, b: Base) -> Result<BigUint> {
    let mut kd = [0u32; 64];
    let mut jd = [0u32; 64];
    let len = digits_into(k, b.get(), &mut kd);
    let sk = digit_sum(k, b);
    let mut sum = BigInt::zero();
    // terms with j not dominated by k vanish through C(k, j)_b
    for j in dominated_iter(k, b) {
        jd[..len].fill(0);
        digits_into(j, b.get(), &mut jd);
        let digit_product: u64 = jd[..len].iter().map(|&d| d as u64).product();
        let term = BigInt::from(binom_b(k, j, b) * int_pow(digit_product, n));
        if (sk - digit_sum(j, b)).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let value = BigRational::new(sum, BigInt::from(factorial_b(k, b)));
    if !value.is_integer() || value.is_negative() {
        return Err(Error::Internal(format!(
            "explicit base-{b} Stirling sum for n={n}, k={k} is {value}, not a non-negative integer"
        )));
    }
    Ok(value.to_integer().to_biguint().unwrap())
}

/// `Π_i S(n, k_i) = Π_i (S(n-1, k_i - 1) + k_i S(n-1, k_i))`.
pub fn verify_stirling_recurrence(n: u64, k: u64, b: Base) -> Result<VerifyResult> {
    if n == 0 {
        return Err(Error::Precondition(
            "the Stirling recurrence needs n >= 1".into(),
        ));
    }
    let table = StirlingTable::new(n);
    Ok(verify_stirling_recurrence_with(&table, n, k, b))
}

pub(crate) fn verify_stirling_recurrence_with(
    table: &StirlingTable,
    n: u64,
    k: u64,
    b: Base,
) -> VerifyResult {
    let dv = to_digits(k, b);
    let lhs = dv
        .digits()
        .iter()
        .fold(BigUint::one(), |acc, &d| acc * table.get(n, d as u64));
    let rhs = dv.digits().iter().fold(BigUint::one(), |acc, &d| {
        let d = d as i64;
        acc * (table.get_signed(n - 1, d - 1) + table.get_signed(n - 1, d) * d as u64)
    });
    VerifyResult::compare(
        "stirling-recurrence",
        vec![
            Param::new("n", n),
            Param::new("k", k),
            Param::new("b", b.get() as u64),
        ],
        lhs,
        rhs,
    )
}

/// `Π_i S(n, ks_i)` for an arbitrary index tuple.
pub fn stirling_tuple(n: u64, ks: &[u64]) -> BigUint {
    StirlingTable::new(n).stirling_tuple(n, ks)
}

/// Falling factorial `m (m-1) ... (m-k+1)`; zero for `k > m`.
pub fn falling(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    (m - k + 1..=m).fold(BigUint::one(), |acc, v| acc * v)
}

/// The multivariable theta-operator identity applied to the monomial
/// `Π x_i^{m_i}`: `(Π m_i)^n = Σ_{k_0..k_{N-1} ≤ n} Π_i S(n, k_i) (m_i)_{k_i}`
/// with falling factorials on the right.
pub fn verify_theta_identity(n: u64, m: &[u64]) -> VerifyResult {
    let table = StirlingTable::new(n);
    let prod_m: BigUint = m.iter().fold(BigUint::one(), |acc, &v| acc * v);
    let lhs = num_traits::pow(prod_m, n as usize);

    let mut rhs = BigUint::zero();
    let mut ks = vec![0u64; m.len()];
    loop {
        let term = ks
            .iter()
            .zip(m)
            .fold(table.stirling_tuple(n, &ks), |acc, (&k, &mi)| {
                acc * falling(mi, k)
            });
        rhs += term;
        // odometer over [0, n]^N
        let mut i = 0;
        while i < ks.len() && ks[i] == n {
            ks[i] = 0;
            i += 1;
        }
        if i == ks.len() {
            break;
        }
        ks[i] += 1;
    }
    VerifyResult::compare(
        "theta",
        vec![Param::new("n", n), Param::new("m", m.to_vec())],
        lhs,
        rhs,
    )
}

/// Side-by-side evaluation of the product definition and the
/// forward-difference expression `(-1)^{s_b(k)} / (k!)_b · Δ^{s_b(k)} x^n |_{x=0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub params: Vec<Param>,
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
    pub note: String,
}

/// `Δ^m x^n |_{x=0} = Σ_j (-1)^{m-j} C(m, j) j^n`.
pub fn forward_difference_at_zero(m: u64, n: u64) -> BigInt {
    (0..=m).fold(BigInt::zero(), |acc, j| {
        let t = BigInt::from(binom(m, j) * int_pow(j, n));
        if (m - j).is_multiple_of(2) {
            acc + t
        } else {
            acc - t
        }
    })
}

/// Compares `{n, k}_b` with the forward-difference expression and records
/// the outcome; it does not decide which side is right.
pub fn probe_forward_difference(n: u64, k: u64, b: Base) -> DiscrepancyReport {
    let lhs = BigRational::from_integer(BigInt::from(stirling2_b(n, k, b)));
    let s = digit_sum(k, b);
    let sign = if s.is_multiple_of(2) { 1 } else { -1 };
    let rhs = BigRational::new(
        forward_difference_at_zero(s, n) * sign,
        BigInt::from(factorial_b(k, b)),
    );
    let equal = lhs == rhs;
    let note = if equal {
        format!("both sides equal {lhs}")
    } else {
        format!(
            "product of S({n}, k_i) over digits {} is {lhs}; forward difference of order s_b(k) = {s} gives {rhs}",
            to_digits(k, b)
        )
    };
    DiscrepancyReport {
        params: vec![
            Param::new("n", n),
            Param::new("k", k),
            Param::new("b", b.get() as u64),
        ],
        lhs: lhs.into(),
        rhs: rhs.into(),
        equal,
        note,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u64) -> Base {
        Base::new(x).unwrap()
    }

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, i| acc * i)
    }

    /// `(1/k!) Σ_j (-1)^{k-j} C(k, j) j^n`, independent of the table.
    fn alternating_sum(n: u64, k: u64) -> BigUint {
        let total = (0..=k).fold(BigInt::zero(), |acc, j| {
            let t = BigInt::from(binom(k, j) * int_pow(j, n));
            if (k - j).is_multiple_of(2) {
                acc + t
            } else {
                acc - t
            }
        });
        (total / BigInt::from(factorial(k))).to_biguint().unwrap()
    }

    #[test]
    fn stirling2_examples() {
        assert_eq!(stirling2(0, 0), u(1));
        assert_eq!(stirling2(4, 2), u(7));
        assert_eq!(stirling2(3, 5), u(0));
        assert_eq!(stirling2(5, 0), u(0));
    }

    #[test]
    fn table_matches_alternating_sum() {
        let t = StirlingTable::new(12);
        for n in 0..=12 {
            for k in 0..=12 {
                assert_eq!(t.get(n, k), alternating_sum(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn stirling2_b_examples() {
        assert_eq!(stirling2_b(4, 7, b(2)), u(1));
        assert_eq!(stirling2_b(4, 5, b(2)), u(0));
        assert_eq!(stirling2_b(4, 2, b(3)), u(7));
        assert_eq!(stirling2_b(0, 0, b(2)), u(1));
        assert_eq!(stirling2_b(0, 3, b(2)), u(0));
        // digit larger than n
        assert_eq!(stirling2_b(2, 3, b(4)), u(0));
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(stirling2_b_explicit(4, 7, b(2)), Ok(u(1)));
        assert_eq!(stirling2_b_explicit(4, 2, b(3)), Ok(u(7)));
        assert_eq!(stirling2_b_explicit(0, 0, b(2)), Ok(u(1)));
    }

    #[test]
    fn explicit_equals_product() {
        for (base, kmax) in [(3u64, 81u64), (2, 64)] {
            let t = StirlingTable::new(8);
            for n in 0..=8 {
                for k in 0..kmax {
                    assert_eq!(
                        stirling2_b_explicit(n, k, b(base)).unwrap(),
                        t.stirling2_b(n, k, b(base)),
                        "n={n} k={k} b={base}"
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        for k in 0..20 {
            assert!(verify_stirling_recurrence(1, k, b(3)).unwrap().pass());
        }
        let r = verify_stirling_recurrence(5, 7, b(2)).unwrap();
        assert!(r.pass());
        assert_eq!(r.lhs(), &Value::from(1u64));
        let r = verify_stirling_recurrence(5, 8, b(3)).unwrap();
        assert!(r.pass());
        assert_eq!(r.lhs(), &Value::from(225u64));
        assert!(verify_stirling_recurrence(0, 1, b(3)).is_err());
    }

    #[test]
    fn recurrence_sweep() {
        for n in 1..=8 {
            for k in 0..81 {
                assert!(verify_stirling_recurrence(n, k, b(3)).unwrap().pass());
            }
        }
    }

    #[test]
    fn tuple_examples() {
        assert_eq!(stirling_tuple(6, &[]), u(1));
        assert_eq!(stirling_tuple(2, &[1, 2]), u(1));
        assert_eq!(stirling_tuple(4, &[2, 2]), u(49));
    }

    #[test]
    fn falling_examples() {
        assert_eq!(falling(7, 0), u(1));
        assert_eq!(falling(3, 2), u(6));
        assert_eq!(falling(2, 3), u(0));
        assert_eq!(falling(0, 0), u(1));
    }

    #[test]
    fn theta_examples() {
        let r = verify_theta_identity(0, &[3, 0, 2]);
        assert!(r.pass());
        assert_eq!(r.lhs(), &Value::from(1u64));
        let r = verify_theta_identity(2, &[3, 2]);
        assert!(r.pass());
        assert_eq!(r.lhs(), &Value::from(36u64));
        let r = verify_theta_identity(3, &[2]);
        assert!(r.pass());
        assert_eq!(r.rhs(), &Value::from(8u64));
        assert!(verify_theta_identity(3, &[]).pass());
    }

    #[test]
    fn theta_sweep() {
        for n in 0..=4 {
            for len in 0..=3u32 {
                for idx in 0..6u64.pow(len) {
                    let m: Vec<u64> = (0..len).map(|i| (idx / 6u64.pow(i)) % 6).collect();
                    assert!(verify_theta_identity(n, &m).pass(), "n={n} m={m:?}");
                }
            }
        }
    }

    #[test]
    fn alternating_binomial_moment() {
        // Σ_k (-1)^k C(n,k) k^α = (-1)^n n! S(α, n)
        let t = StirlingTable::new(8);
        for n in 0..=8u64 {
            for alpha in 0..=8u64 {
                let lhs = (0..=n).fold(BigInt::zero(), |acc, k| {
                    let v = BigInt::from(binom(n, k) * int_pow(k, alpha));
                    if k % 2 == 0 {
                        acc + v
                    } else {
                        acc - v
                    }
                });
                let mag = BigInt::from(factorial(n) * t.get(alpha, n));
                let rhs = if n % 2 == 0 { mag } else { -mag };
                assert_eq!(lhs, rhs, "n={n} alpha={alpha}");
            }
        }
    }

    #[test]
    fn forward_difference_values() {
        // Δ^m x^n at 0 is m! S(n, m)
        for m in 0..8 {
            for n in 0..8 {
                assert_eq!(
                    forward_difference_at_zero(m, n),
                    BigInt::from(factorial(m) * stirling2(n, m))
                );
            }
        }
    }

    #[test]
    fn probe_examples() {
        let r = probe_forward_difference(3, 3, b(2));
        assert!(!r.equal);
        assert_eq!(r.lhs, Value::from(1u64));
        // Δ²x³ at 0 is 8 - 2 + 0 = 2! S(3, 2)
        assert_eq!(r.rhs, Value::from(6u64));

        let r = probe_forward_difference(0, 0, b(2));
        assert!(r.equal);
        assert_eq!(r.lhs, Value::from(1u64));
    }
}
