//! A complex value that is either exact or known only inside a guard band.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::numeric::ApproxComplex;
use super::scalar::GaussianRational as Q;

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Q),
    Approx(ApproxComplex),
}

impl Value {
    pub fn int(v: i64) -> Self {
        Value::Exact(Q::from_int(v))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Value::Exact(q) => q.to_complex64(),
            Value::Approx(a) => a.value(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn exact(&self) -> Option<&Q> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    pub fn tol(&self) -> f64 {
        match self {
            Value::Exact(_) => 0.0,
            Value::Approx(a) => a.tol,
        }
    }

    fn combine(&self, o: &Value, exact: impl Fn(&Q, &Q) -> Q, approx: impl Fn(Complex64, Complex64) -> Complex64) -> Value {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(exact(a, b)),
            _ => Value::Approx(ApproxComplex::new(approx(self.to_complex(), o.to_complex()), self.tol().max(o.tol()))),
        }
    }

    pub fn add(&self, o: &Value) -> Value {
        self.combine(o, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, o: &Value) -> Value {
        self.combine(o, |a, b| a - b, |a, b| a - b)
    }

    pub fn mul(&self, o: &Value) -> Value {
        self.combine(o, |a, b| a * b, |a, b| a * b)
    }

    /// Caller guarantees a nonzero divisor.
    pub fn div(&self, o: &Value) -> Value {
        self.combine(o, |a, b| a / b, |a, b| a / b)
    }

    /// Exact zero test, or a float test that only makes sense away from
    /// the guard band (the callers only use it on separated values).
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(q) => q.is_zero(),
            Value::Approx(a) => a.value().norm() == 0.0,
        }
    }

    /// Deterministic order: exact values first by (re, im), then approximate.
    pub fn order(&self, o: &Value) -> Ordering {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            (Value::Exact(_), Value::Approx(_)) => Ordering::Less,
            (Value::Approx(_), Value::Exact(_)) => Ordering::Greater,
            (Value::Approx(a), Value::Approx(b)) => a.total_cmp(b),
        }
    }
}

impl From<Q> for Value {
    fn from(q: Q) -> Self {
        Value::Exact(q)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx(a) => write!(f, "{a}"),
        }
    }
}
