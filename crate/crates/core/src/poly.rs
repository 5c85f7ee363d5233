//! Sparse bivariate polynomials `Σ c_ij x^i y^j` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Zero coefficients are never stored, so structural equality is
/// coefficientwise equality.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivarPoly {
    pub fn monomial(coeff: BigRational, x_pow: u32, y_pow: u32) -> Self {
        let mut p = BivarPoly::default();
        p.add_term(x_pow, y_pow, coeff);
        p
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn add_term(&mut self, x_pow: u32, y_pow: u32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let key = (x_pow, y_pow);
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, x_pow: u32, y_pow: u32) -> BigRational {
        self.terms
            .get(&(x_pow, y_pow))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return BivarPoly::default();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_vars(&self) -> Self {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), v)| ((j, i), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = BivarPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (&(i, j), c)| {
                acc + c * pow_rat(x, i) * pow_rat(y, j)
            })
    }
}

fn pow_rat(v: &BigRational, e: u32) -> BigRational {
    num_traits::pow(v.clone(), e as usize)
}

impl Zero for BivarPoly {
    fn zero() -> Self {
        BivarPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BivarPoly {
    fn one() -> Self {
        BivarPoly::constant(BigRational::one())
    }
}

impl From<BigRational> for BivarPoly {
    fn from(c: BigRational) -> Self {
        BivarPoly::constant(c)
    }
}

impl From<i64> for BivarPoly {
    fn from(c: i64) -> Self {
        BivarPoly::constant(BigRational::from_integer(BigInt::from(c)))
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;

    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;

    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self += &rhs;
        self
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;

    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;

    fn sub(self, rhs: BivarPoly) -> BivarPoly {
        self + (-rhs)
    }
}

impl Mul<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::default();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;

    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

impl fmt::Display for BivarPoly {
    /// Terms in descending `(x, y)` degree order, e.g. `x^2 + 2*x*y + y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let abs = c.abs();
            let mut parts = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                parts.push(format!("{abs}"));
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
