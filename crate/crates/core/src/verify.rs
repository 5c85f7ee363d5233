//! Outcome records shared by all identity checkers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::poly::BivarPoly;

/// An exact (or, for the numeric checks, floating) value carried by a
/// verification record.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Poly(BivarPoly),
    Float(f64),
    List(Vec<Value>),
}

impl From<BigUint> for Value {
    fn from(v: BigUint) -> Self {
        Value::Int(BigInt::from(v))
    }
}

impl From<BigInt> for Value {
    fn from(v: BigInt) -> Self {
        Value::Int(v)
    }
}

impl From<BigRational> for Value {
    fn from(v: BigRational) -> Self {
        if v.is_integer() {
            Value::Int(v.to_integer())
        } else {
            Value::Rat(v)
        }
    }
}

impl From<BivarPoly> for Value {
    fn from(v: BivarPoly) -> Self {
        Value::Poly(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(BigInt::from(v))
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(BigInt::from(v))
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rat(v) => write!(f, "{v}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Float(v) => write!(f, "{v:.15e}"),
            Value::List(vs) => {
                write!(f, "(")?;
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A named parameter of a checked case.
#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: String,
    pub value: Value,
}

impl Param {
    pub fn new(name: impl Into<String>, value: impl Into<Value>) -> Self {
        Param {
            name: name.into(),
            value: value.into(),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.name, self.value)
    }
}

/// Result of checking one identity instance.
///
/// `pass` holds exactly when `counterexample` is `None`. For equality checks
/// it also means `lhs == rhs`; for bound checks it means `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyResult {
    identity: String,
    params: Vec<Param>,
    pass: bool,
    lhs: Value,
    rhs: Value,
    counterexample: Option<Vec<Param>>,
}

impl VerifyResult {
    /// Exact equality check.
    pub fn compare(
        identity: impl Into<String>,
        params: Vec<Param>,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        let pass = lhs == rhs;
        Self::from_parts(identity, params, pass, lhs, rhs)
    }

    /// One-sided check `lhs <= rhs`.
    pub fn bound(identity: impl Into<String>, params: Vec<Param>, lhs: f64, rhs: f64) -> Self {
        let pass = lhs.is_finite() && rhs.is_finite() && lhs <= rhs;
        Self::from_parts(identity, params, pass, Value::Float(lhs), Value::Float(rhs))
    }

    /// Folds a sequence of checks of the same identity into one record: the
    /// first failing case becomes the counterexample, otherwise the last case
    /// is kept as the representative.
    pub fn aggregate(
        identity: impl Into<String>,
        params: Vec<Param>,
        cases: impl IntoIterator<Item = VerifyResult>,
    ) -> Self {
        let identity = identity.into();
        let mut last = None;
        for case in cases {
            if !case.pass {
                return VerifyResult {
                    identity,
                    params,
                    pass: false,
                    counterexample: case.counterexample.clone(),
                    lhs: case.lhs,
                    rhs: case.rhs,
                };
            }
            last = Some(case);
        }
        let (lhs, rhs) = match last {
            Some(c) => (c.lhs, c.rhs),
            None => (Value::List(vec![]), Value::List(vec![])),
        };
        VerifyResult {
            identity,
            params,
            pass: true,
            lhs,
            rhs,
            counterexample: None,
        }
    }

    fn from_parts(
        identity: impl Into<String>,
        params: Vec<Param>,
        pass: bool,
        lhs: Value,
        rhs: Value,
    ) -> Self {
        let counterexample = (!pass).then(|| params.clone());
        VerifyResult {
            identity: identity.into(),
            params,
            pass,
            lhs,
            rhs,
            counterexample,
        }
    }

    pub fn identity(&self) -> &str {
        &self.identity
    }

    pub fn params(&self) -> &[Param] {
        &self.params
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn lhs(&self) -> &Value {
        &self.lhs
    }

    pub fn rhs(&self) -> &Value {
        &self.rhs
    }

    pub fn counterexample(&self) -> Option<&[Param]> {
        self.counterexample.as_deref()
    }
}

impl fmt::Display for VerifyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = |ps: &[Param]| {
            ps.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        if self.pass {
            write!(f, "{} [{}] pass", self.identity, params(&self.params))
        } else {
            write!(
                f,
                "{} [{}] FAIL at [{}]: lhs={} rhs={}",
                self.identity,
                params(&self.params),
                params(self.counterexample.as_deref().unwrap_or(&[])),
                self.lhs,
                self.rhs
            )
        }
    }
}
