//! Digitwise summation: a product of per-digit sums equals a sum over
//! digitally dominated indices, and its generating-series form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffs::{binom_b, pochhammer, step_binom};
use crate::digits::{digit_sum, digits_into, dominated_iter, Base};
use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::series::{Coefficient, Series};
use crate::verify::{Param, Value, VerifyResult};

/// A per-digit weight `f(n_digit, k_digit, position)`.
///
/// Kernels must be total on `0 ≤ k_digit ≤ n_digit < b` and free of side
/// effects; sweeps may call them from several threads.
pub trait DigitKernel<R> {
    fn eval(&self, n_digit: u32, k_digit: u32, position: usize) -> Result<R>;
}

impl<R, F> DigitKernel<R> for F
where
    F: Fn(u32, u32, usize) -> Result<R>,
{
    fn eval(&self, n_digit: u32, k_digit: u32, position: usize) -> Result<R> {
        self(n_digit, k_digit, position)
    }
}

/// `Π_i S(n_i, i)` with `S(d, i) = Σ_{j ≤ d} f(d, j, i)`.
pub fn product_form<R: Coefficient>(n: u64, b: Base, f: &impl DigitKernel<R>) -> Result<R> {
    let mut nd = [0u32; 64];
    let len = digits_into(n, b.get(), &mut nd);
    let mut acc = R::one();
    for (i, &d) in nd[..len].iter().enumerate() {
        let mut s = R::zero();
        for j in 0..=d {
            s = s.add_ref(&f.eval(d, j, i)?);
        }
        acc = acc.mul_ref(&s);
    }
    Ok(acc)
}

/// `Σ_{k ≤_b n} Π_i f(n_i, k_i, i)`, with `k` zero-padded to the length of
/// `n`.
pub fn dominated_sum_form<R: Coefficient>(n: u64, b: Base, f: &impl DigitKernel<R>) -> Result<R> {
    let mut nd = [0u32; 64];
    let mut kd = [0u32; 64];
    let len = digits_into(n, b.get(), &mut nd);
    let mut total = R::zero();
    for k in dominated_iter(n, b) {
        kd[..len].fill(0);
        digits_into(k, b.get(), &mut kd);
        let mut term = R::one();
        for i in 0..len {
            term = term.mul_ref(&f.eval(nd[i], kd[i], i)?);
        }
        total = total.add_ref(&term);
    }
    Ok(total)
}

/// Checks `product_form == dominated_sum_form` for the kernel `f`.
pub fn verify_theorem1<R>(n: u64, b: Base, f: &impl DigitKernel<R>) -> Result<VerifyResult>
where
    R: Coefficient + Into<Value>,
{
    let lhs = product_form(n, b, f)?;
    let rhs = dominated_sum_form(n, b, f)?;
    Ok(VerifyResult::compare(
        "digitwise-sum",
        vec![Param::new("n", n), Param::new("b", b.get() as u64)],
        lhs,
        rhs,
    ))
}

/// Smallest `K ≥ 1` with `b^K ≥ order`.
pub fn digit_depth(b: Base, order: usize) -> usize {
    let b = b.get() as u128;
    let mut k = 1;
    let mut reach = b;
    while reach < order as u128 {
        reach *= b;
        k += 1;
    }
    k
}

/// Truncated product `Π_{i<K} Σ_{d<b} g(d, i) z^{d b^i}` of order `order`,
/// with `K = digit_depth(b, order)`.
///
/// The coefficient of `z^n` is `Π_{i<K} g(n_i, i)` over the expansion of
/// `n` padded to `K` digits; when `g(0, ·) = 1` that is the product over the
/// canonical digits alone.
pub fn digitwise_series<R, G>(b: Base, g: G, order: usize) -> Result<Series<R>>
where
    R: Coefficient,
    G: Fn(u32, usize) -> R,
{
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let depth = digit_depth(b, order);
    let mut acc = Series::one(order)?;
    let mut place: u128 = 1;
    for i in 0..depth {
        let mut factor = vec![R::zero(); order];
        for d in 0..b.get() {
            let pos = d as u128 * place;
            if pos < order as u128 {
                factor[pos as usize] = g(d, i);
            }
        }
        acc = acc.mul(&Series::new(factor, order)?)?;
        place *= b.get() as u128;
    }
    Ok(acc)
}

/// The base-b binomial theorem as an exact polynomial identity:
/// `(X+Y)^{s_b(n)} = Σ_k C(n,k)_b X^{s_b(k)} Y^{s_b(n-k)}`.
pub fn verify_digital_binomial(n: u64, b: Base) -> VerifyResult {
    let lhs = (BivarPoly::x() + BivarPoly::y()).pow(digit_sum(n, b));
    let mut rhs = BivarPoly::zero();
    for k in dominated_iter(n, b) {
        let c = BigRational::from_integer(BigInt::from(binom_b(n, k, b)));
        rhs.add_term(digit_sum(k, b) as u32, digit_sum(n - k, b) as u32, c);
    }
    VerifyResult::compare(
        "digital-binomial",
        vec![Param::new("n", n), Param::new("b", b.get() as u64)],
        lhs,
        rhs,
    )
}

fn rat_int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn factorial_rat(n: u32) -> BigRational {
    (2..=n as u64).fold(BigRational::one(), |acc, i| acc * rat_int(i))
}

/// Kernel `f(n, k) = (X)_k / k! · (Y)_{n-k} / (n-k)!`, whose digit sums are
/// `(X+Y)_n / n!`.
pub fn pochhammer_kernel(
    x: BigRational,
    y: BigRational,
) -> impl Fn(u32, u32, usize) -> Result<BigRational> + Sync {
    move |n, k, _| {
        Ok(
            pochhammer(&x, k as u64) / factorial_rat(k) * pochhammer(&y, (n - k) as u64)
                / factorial_rat(n - k),
        )
    }
}

/// Per-position parameters `(x_i, y_i, r_i)` for the step-binomial kernel;
/// positions past the end reuse the last entry.
#[derive(Debug, Clone)]
pub struct StepParams(Vec<(BigRational, BigRational, BigRational)>);

impl StepParams {
    pub fn new(params: Vec<(BigRational, BigRational, BigRational)>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::Precondition(
                "step-binomial kernel needs at least one parameter triple".into(),
            ));
        }
        Ok(StepParams(params))
    }

    pub fn at(&self, i: usize) -> &(BigRational, BigRational, BigRational) {
        self.0.get(i).unwrap_or_else(|| self.0.last().unwrap())
    }
}

/// Kernel `f(n, k, i) = C(x_i; r_i, k) · C(y_i; r_i, n-k)`.
pub fn step_binom_kernel(
    params: StepParams,
) -> impl Fn(u32, u32, usize) -> Result<BigRational> + Sync {
    move |n, k, i| {
        let (x, y, r) = params.at(i);
        Ok(step_binom(x, r, k as u64) * step_binom(y, r, (n - k) as u64))
    }
}

/// Closed-form check of the rising-factorial extension of the binomial
/// theorem: `Π_i (X+Y)_{n_i} / n_i! = Σ_{k ≤_b n} Π_i (X)_{k_i}/k_i! ·
/// (Y)_{n_i-k_i}/(n_i-k_i)!`.
pub fn verify_pochhammer_extension(
    n: u64,
    b: Base,
    x: &BigRational,
    y: &BigRational,
) -> Result<VerifyResult> {
    let xy = x + y;
    let lhs = to_digits_iter(n, b).fold(BigRational::one(), |acc, d| {
        acc * pochhammer(&xy, d as u64) / factorial_rat(d)
    });
    let rhs = dominated_sum_form(n, b, &pochhammer_kernel(x.clone(), y.clone()))?;
    Ok(VerifyResult::compare(
        "pochhammer-extension",
        vec![
            Param::new("n", n),
            Param::new("b", b.get() as u64),
            Param::new("X", x.clone()),
            Param::new("Y", y.clone()),
        ],
        lhs,
        rhs,
    ))
}

/// Closed-form check of the step-binomial extension:
/// `Π_i C(x_i + y_i; r_i, n_i) = Σ_{k ≤_b n} Π_i C(x_i; r_i, k_i) C(y_i; r_i, n_i - k_i)`.
pub fn verify_step_binomial_extension(
    n: u64,
    b: Base,
    params: &StepParams,
) -> Result<VerifyResult> {
    let lhs = to_digits_iter(n, b)
        .enumerate()
        .fold(BigRational::one(), |acc, (i, d)| {
            let (x, y, r) = params.at(i);
            acc * step_binom(&(x + y), r, d as u64)
        });
    let rhs = dominated_sum_form(n, b, &step_binom_kernel(params.clone()))?;
    Ok(VerifyResult::compare(
        "step-binomial-extension",
        vec![Param::new("n", n), Param::new("b", b.get() as u64)],
        lhs,
        rhs,
    ))
}

fn to_digits_iter(n: u64, b: Base) -> impl Iterator<Item = u32> {
    let mut nd = [0u32; 64];
    let len = digits_into(n, b.get(), &mut nd);
    nd.into_iter().take(len)
}
