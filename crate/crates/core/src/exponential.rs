//! The base-b exponential `e_b(x, w) = Σ_k x^{s_b(k)} w^k / (k!)_b`.
//!
//! Exact work happens on truncated series whose coefficients are
//! polynomials in `x` (and `y`, for the star convolution). Numeric work is
//! restricted to `0 ≤ w < 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::coeffs::factorial_b;
use crate::digits::{digit_sum, dominated_iter, Base};
use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::summation::digitwise_series;
use crate::verify::{Param, VerifyResult};

/// Truncated series in `w` with polynomial coefficients, tagged with the
/// base its exponents refer to.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitalSeries {
    base: Base,
    coeffs: Vec<BivarPoly>,
}

impl DigitalSeries {
    pub fn new(base: Base, coeffs: Vec<BivarPoly>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidOrder(0));
        }
        Ok(DigitalSeries { base, coeffs })
    }

    /// `1 + 0 w + 0 w^2 + ...`, the identity of the star convolution.
    pub fn unit(base: Base, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let mut coeffs = vec![BivarPoly::zero(); order];
        coeffs[0] = BivarPoly::one();
        Ok(DigitalSeries { base, coeffs })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &BivarPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BivarPoly] {
        &self.coeffs
    }
}

fn inv_factorial_b(k: u64, b: Base) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(factorial_b(k, b)))
}

/// Coefficients `x^{s_b(k)} / (k!)_b` for `k < order`.
pub fn exp_b_symbolic(b: Base, order: usize) -> Result<DigitalSeries> {
    exp_b_symbolic_in(b, order, &BivarPoly::x())
}

/// `e_b` with `x` replaced by an arbitrary polynomial `var`.
fn exp_b_symbolic_in(b: Base, order: usize, var: &BivarPoly) -> Result<DigitalSeries> {
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let coeffs = (0..order as u64)
        .map(|k| var.pow(digit_sum(k, b)).scale(&inv_factorial_b(k, b)))
        .collect();
    Ok(DigitalSeries { base: b, coeffs })
}

/// Expands `Π_{i<K} Σ_{d<b} (x w^{b^i})^d / d!` as a series in `w` of order
/// `b^K`.
pub fn exp_b_product_series(b: Base, depth: u32) -> Result<DigitalSeries> {
    let order = (b.get() as u64)
        .checked_pow(depth)
        .filter(|&o| o <= 1 << 20)
        .ok_or_else(|| Error::Domain(format!("b^K too large for b={b}, K={depth}")))?
        as usize;
    let mut inv_fact = vec![BigRational::one()];
    for d in 1..b.get() {
        let prev = inv_fact[d as usize - 1].clone();
        inv_fact.push(prev / BigRational::from_integer(BigInt::from(d)));
    }
    let series = digitwise_series(
        b,
        |d, _| BivarPoly::monomial(inv_fact[d as usize].clone(), d, 0),
        order,
    )?;
    DigitalSeries::new(b, series.into_coeffs())
}

/// Exact coefficient identity between the depth-`K` digit product and the
/// defining series, for all orders below `b^K`.
pub fn verify_exp_coefficients(b: Base, depth: u32) -> Result<VerifyResult> {
    let product = exp_b_product_series(b, depth)?;
    let symbolic = exp_b_symbolic(b, product.order())?;
    let params = vec![
        Param::new("b", b.get() as u64),
        Param::new("K", depth as u64),
    ];
    Ok(VerifyResult::aggregate(
        "exp-coefficients",
        params.clone(),
        (0..product.order()).map(|k| {
            let mut ps = params.clone();
            ps.push(Param::new("k", k as u64));
            VerifyResult::compare(
                "exp-coefficients",
                ps,
                product.coeff(k).clone(),
                symbolic.coeff(k).clone(),
            )
        }),
    ))
}

/// `Σ_{k ≤_b n} a_k(x) b_{n-k}(y)`: coefficients of `lhs` are read in `x`,
/// those of `rhs` with `x` renamed to `y`.
pub fn star_convolve(lhs: &DigitalSeries, rhs: &DigitalSeries) -> Result<DigitalSeries> {
    if lhs.base != rhs.base {
        return Err(Error::Shape(format!(
            "star convolution of base-{} and base-{} series",
            lhs.base, rhs.base
        )));
    }
    if lhs.order() != rhs.order() {
        return Err(Error::Shape(format!(
            "star convolution of orders {} and {}",
            lhs.order(),
            rhs.order()
        )));
    }
    let rhs_y: Vec<BivarPoly> = rhs.coeffs.iter().map(BivarPoly::swap_vars).collect();
    let coeffs = (0..lhs.order() as u64)
        .map(|n| {
            dominated_iter(n, lhs.base).fold(BivarPoly::zero(), |acc, k| {
                acc + &lhs.coeffs[k as usize] * &rhs_y[(n - k) as usize]
            })
        })
        .collect();
    Ok(DigitalSeries {
        base: lhs.base,
        coeffs,
    })
}

/// `e_b(x, w) ⋆ e_b(y, w) = e_b(x + y, w)`, coefficientwise up to `order`.
pub fn verify_exp_convolution(b: Base, order: usize) -> Result<VerifyResult> {
    let e = exp_b_symbolic(b, order)?;
    let lhs = star_convolve(&e, &e)?;
    let rhs = exp_b_symbolic_in(b, order, &(BivarPoly::x() + BivarPoly::y()))?;
    let params = vec![
        Param::new("b", b.get() as u64),
        Param::new("order", order as u64),
    ];
    Ok(VerifyResult::aggregate(
        "exp-convolution",
        params.clone(),
        (0..order).map(|n| {
            let mut ps = params.clone();
            ps.push(Param::new("n", n as u64));
            VerifyResult::compare(
                "exp-convolution",
                ps,
                lhs.coeff(n).clone(),
                rhs.coeff(n).clone(),
            )
        }),
    ))
}

fn check_finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric(format!("{name} is not finite ({v})")))
    }
}

fn check_w(w: f64) -> Result<()> {
    check_finite("w", w)?;
    if !(0.0..1.0).contains(&w) {
        return Err(Error::Domain(format!("w = {w} must satisfy 0 <= w < 1")));
    }
    Ok(())
}

fn check_depth(depth: u32) -> Result<()> {
    if depth == 0 {
        return Err(Error::Domain("product depth must be at least 1".into()));
    }
    Ok(())
}

/// `e^{-z} Σ_{k<a} z^k / k!`, i.e. `Γ(a, z) / Γ(a)` for integer `a ≥ 1`.
pub fn gamma_ratio(a: u32, z: f64) -> Result<f64> {
    check_gamma_args(a, z)?;
    Ok((-z).exp() * partial_exp_sum(a, z))
}

/// `Σ_{k<a} z^k / k!` in a fixed summation order.
fn partial_exp_sum(a: u32, z: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..a {
        term *= z / k as f64;
        sum += term;
    }
    sum
}

fn check_gamma_args(a: u32, z: f64) -> Result<()> {
    if a == 0 {
        return Err(Error::Domain(
            "incomplete gamma needs a positive integer order".into(),
        ));
    }
    check_finite("z", z)?;
    if z < 0.0 {
        return Err(Error::Domain(format!("z = {z} must be non-negative")));
    }
    Ok(())
}

/// Upper incomplete gamma `Γ(a, z) = (a-1)! e^{-z} Σ_{k<a} z^k / k!` for
/// integer `a ≥ 1`, `z ≥ 0`.
pub fn upper_gamma_int(a: u32, z: f64) -> Result<f64> {
    let fact: f64 = (1..a).map(f64::from).product();
    check_finite("Γ(a, z)", fact * gamma_ratio(a, z)?)
}

/// `1 - Γ(a, z) / Γ(a) = e^{-z} Σ_{k≥a} z^k / k!`, summed directly for
/// `z ≤ a` so it keeps full relative precision near `z = 0`.
pub fn gamma_ratio_complement(a: u32, z: f64) -> Result<f64> {
    check_gamma_args(a, z)?;
    if z > a as f64 {
        return Ok(1.0 - gamma_ratio(a, z)?);
    }
    let mut term: f64 = (1..=a).map(|k| z / k as f64).product();
    let mut sum = 0.0;
    let mut k = a;
    while term > sum * (f64::EPSILON / 4.0) {
        sum += term;
        k += 1;
        term *= z / k as f64;
    }
    Ok((-z).exp() * sum)
}

/// `ln(Γ(a, z) / Γ(a))` without forming the ratio, accurate for small `z`.
pub fn ln_gamma_ratio(a: u32, z: f64) -> Result<f64> {
    Ok((-gamma_ratio_complement(a, z)?).ln_1p())
}

/// `x w^{b^i}` for `i < depth`.
fn scaled_powers(x: f64, w: f64, b: Base, depth: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(depth as usize);
    let mut p = w;
    for _ in 0..depth {
        out.push(x * p);
        p = p.powi(b.get() as i32);
    }
    out
}

/// Depth-`K` product `Π_{i<K} Σ_{d<b} (x w^{b^i})^d / d!`.
pub fn exp_b_product(x: f64, w: f64, b: Base, depth: u32) -> Result<f64> {
    check_finite("x", x)?;
    check_w(w)?;
    check_depth(depth)?;
    let v = scaled_powers(x, w, b, depth)
        .into_iter()
        .map(|t| partial_exp_sum(b.get(), t))
        .product();
    check_finite("product", v)
}

/// The same product through `exp(t) Γ(b, t) / (b-1)!` per factor; needs
/// `x ≥ 0`.
pub fn exp_b_product_gamma(x: f64, w: f64, b: Base, depth: u32) -> Result<f64> {
    check_finite("x", x)?;
    check_w(w)?;
    check_depth(depth)?;
    let mut acc = 1.0;
    for t in scaled_powers(x, w, b, depth) {
        acc *= t.exp() * gamma_ratio(b.get(), t)?;
    }
    check_finite("product", acc)
}

/// Partial sum `Σ_{k<M} x^{s_b(k)} w^k / (k!)_b`, accumulated in index order.
pub fn exp_b_series_numeric(x: f64, w: f64, b: Base, terms: usize) -> Result<f64> {
    check_finite("x", x)?;
    check_finite("w", w)?;
    if terms == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let digit_fact: Vec<f64> = (0..b.get())
        .scan(1.0, |f, d| {
            if d > 0 {
                *f *= d as f64;
            }
            Some(*f)
        })
        .collect();
    let bb = b.get() as u64;
    let mut sum = 0.0;
    let mut wk = 1.0;
    for k in 0..terms as u64 {
        let (mut rest, mut s, mut fb) = (k, 0i32, 1.0);
        while rest > 0 {
            let d = rest % bb;
            s += d as i32;
            fb *= digit_fact[d as usize];
            rest /= bb;
        }
        // 0^0 = 1 keeps the k = 0 term when x = 0
        sum += x.powi(s) * wk / fb;
        wk *= w;
    }
    check_finite("series", sum)
}

/// The two closed-form approximations
/// `(exp(x Σ_{i<K} w^{b^i}), exp(x w + x w^b))`.
pub fn exp_b_approx(x: f64, w: f64, b: Base, depth: u32) -> Result<(f64, f64)> {
    check_finite("x", x)?;
    check_w(w)?;
    check_depth(depth)?;
    let lacunary: f64 = scaled_powers(1.0, w, b, depth).into_iter().sum();
    let first = (x * lacunary).exp();
    let second = (x * w + x * w.powi(b.get() as i32)).exp();
    Ok((
        check_finite("approx", first)?,
        check_finite("approx", second)?,
    ))
}

/// Slack applied to the first-order log-gamma bound.
pub const LOG_GAMMA_SLACK: f64 = 2.0;

/// The two sides `(|Σ_{i<K} ln(Γ(b, x w^{b^i}) / Γ(b))|, 2 · (1/b) · w^b / (1 - w))`
/// of the log-gamma bound, for any `x ≥ 0`.
pub fn log_gamma_bound_sides(x: f64, w: f64, b: Base, depth: u32) -> Result<(f64, f64)> {
    check_finite("x", x)?;
    if x < 0.0 {
        return Err(Error::Domain(format!("x = {x} must be non-negative")));
    }
    check_w(w)?;
    check_depth(depth)?;
    let mut total = 0.0;
    for t in scaled_powers(x, w, b, depth) {
        total += ln_gamma_ratio(b.get(), t)?;
    }
    let bound = LOG_GAMMA_SLACK * w.powi(b.get() as i32) / (b.get() as f64 * (1.0 - w));
    Ok((total.abs(), bound))
}

/// `|Σ_{i<K} ln(Γ(b, x w^{b^i}) / Γ(b))| ≤ 2 · (1/b) · w^b / (1 - w)` for
/// `0 ≤ x < 1`, `0 ≤ w < 1`.
pub fn check_log_gamma_bound(x: f64, w: f64, b: Base, depth: u32) -> Result<VerifyResult> {
    check_finite("x", x)?;
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} must satisfy 0 <= x < 1")));
    }
    let (lhs, rhs) = log_gamma_bound_sides(x, w, b, depth)?;
    Ok(VerifyResult::bound(
        "gamma-bound",
        vec![
            Param::new("x", x),
            Param::new("w", w),
            Param::new("b", b.get() as u64),
            Param::new("K", depth as u64),
        ],
        lhs,
        rhs,
    ))
}

/// Product depth at which `w^{b^K}` drops below `1e-300`, capped at 16.
pub fn default_depth(w: f64, b: Base) -> u32 {
    let mut p = w;
    for k in 1..=16 {
        p = p.powi(b.get() as i32);
        if p < 1e-300 {
            return k;
        }
    }
    16
}
