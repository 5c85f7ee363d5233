//! Truncated power series with exact coefficients.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::BivarPoly;

/// Coefficient rings usable in series and digitwise sums. Operations take
/// references so heap-backed values are not cloned per operation.
pub trait Coefficient: Clone + PartialEq + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
}

macro_rules! ref_ring {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            #[inline]
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }

            #[inline]
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
        }
    )*};
}

ref_ring!(BigUint, BigRational, BivarPoly);

/// Power series `c_0 + c_1 z + ... + c_{M-1} z^{M-1}` truncated at order
/// `M`; every product is truncated back to `M` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Coefficient> Series<R> {
    /// Series of order `order`, padded with zeros or truncated.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        coeffs.resize(order, R::zero());
        Ok(Series { coeffs })
    }

    pub fn one(order: usize) -> Result<Self> {
        Self::new(vec![R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_order(rhs)?;
        Ok(self.mul_sparse(rhs))
    }

    /// Truncated Cauchy product, skipping zero entries of either factor.
    fn mul_sparse(&self, rhs: &Self) -> Self {
        let m = self.order();
        let mut out = vec![R::zero(); m];
        let rhs_nz: Vec<usize> = (0..m).filter(|&j| !rhs.coeffs[j].is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &j in &rhs_nz {
                if i + j >= m {
                    break;
                }
                let t = a.mul_ref(&rhs.coeffs[j]);
                out[i + j] = out[i + j].add_ref(&t);
            }
        }
        Series { coeffs: out }
    }

    fn check_order(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(Error::Shape(format!(
                "series orders differ: {} vs {}",
                self.order(),
                rhs.order()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32], m: usize) -> Series<BigUint> {
        Series::new(v.iter().map(|&x| BigUint::from(x)).collect(), m).unwrap()
    }

    #[test]
    fn product_truncates() {
        // (1+z)^2 = 1 + 2z + z^2, truncated at order 2
        let a = s(&[1, 1], 2);
        assert_eq!(a.mul(&a).unwrap(), s(&[1, 2], 2));
        let a = s(&[1, 1], 4);
        assert_eq!(a.mul(&a).unwrap(), s(&[1, 2, 1], 4));
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(
            Series::<BigUint>::new(vec![], 0),
            Err(Error::InvalidOrder(0))
        );
    }

    #[test]
    fn order_mismatch() {
        assert!(s(&[1], 2).mul(&s(&[1], 3)).is_err());
        assert!(s(&[1], 2).add(&s(&[1], 3)).is_err());
    }

    #[test]
    fn one_is_identity() {
        let a = s(&[3, 1, 4, 1, 5], 5);
        assert_eq!(Series::one(5).unwrap().mul(&a).unwrap(), a);
    }
}
