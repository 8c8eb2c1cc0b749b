use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact scalars. No floating point anywhere.
pub trait Field: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    /// `"Q"` or `"F2"`, as it appears in JSON files.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn from_int(n: i64) -> Self {
        let mut acc = Self::zero();
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&Self::one());
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2(pub bool);

impl Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Field for F2 {
    const NAME: &'static str = "F2";

    fn zero() -> Self {
        F2(false)
    }

    fn one() -> Self {
        F2(true)
    }

    fn add(&self, other: &Self) -> Self {
        F2(self.0 ^ other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        F2(self.0 & other.0)
    }

    fn neg(&self) -> Self {
        *self
    }

    fn is_zero(&self) -> bool {
        !self.0
    }

    fn to_json(&self) -> Value {
        Value::from(u8::from(self.0))
    }

    fn from_json(v: &Value) -> Result<Self> {
        let n = match v {
            Value::Number(n) => n.as_i64(),
            Value::String(s) => s.trim().parse::<i64>().ok(),
            Value::Bool(b) => Some(i64::from(*b)),
            _ => None,
        };
        n.map(|n| F2(n.rem_euclid(2) == 1))
            .ok_or_else(|| Error::Invalid(format!("`{v}` is not an element of F2")))
    }
}

/// Exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    const NAME: &'static str = "Q";

    fn zero() -> Self {
        Q(BigRational::zero())
    }

    fn one() -> Self {
        Q(BigRational::one())
    }

    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }

    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }

    fn neg(&self) -> Self {
        Q(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn from_int(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    fn to_json(&self) -> Value {
        if self.0.is_integer() {
            if let Ok(n) = i64::try_from(self.0.to_integer()) {
                return Value::from(n);
            }
        }
        Value::from(self.0.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Invalid(format!("`{v}` is not a rational number"));
        match v {
            Value::Number(n) => n.as_i64().map(Q::from_int).ok_or_else(bad),
            Value::String(s) => BigRational::from_str(s.trim()).map(Q).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_arithmetic() {
        assert_eq!(F2::one().add(&F2::one()), F2::zero());
        assert_eq!(F2::from_int(3), F2::one());
        assert_eq!(F2::from_json(&Value::from(-1)).unwrap(), F2::one());
    }

    #[test]
    fn rational_json() {
        let half = Q::new(1, 2);
        assert_eq!(half.to_json(), Value::from("1/2"));
        assert_eq!(Q::from_json(&Value::from("2/4")).unwrap(), half);
        assert_eq!(
            Q::from_json(&Value::from(3)).unwrap().to_json(),
            Value::from(3)
        );
        assert!(Q::from_json(&Value::from(0.5)).is_err());
    }
}
