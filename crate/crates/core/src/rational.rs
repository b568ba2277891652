//! Exact rationals used for thresholds, scalars and vector entries.
//!
//! `Q` wraps a reduced `Ratio<i128>`. Every arithmetic operator is checked;
//! an overflow panics rather than silently wrapping, so a result is either
//! exact or absent.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(Ratio<i128>);

impl Q {
    pub const ZERO: Q = Q(Ratio::new_raw(0, 1));
    pub const ONE: Q = Q(Ratio::new_raw(1, 1));

    pub fn new(numer: i128, denom: i128) -> Q {
        assert!(denom != 0, "zero denominator");
        Q(Ratio::new(numer, denom))
    }

    pub fn int(n: i64) -> Q {
        Q(Ratio::from_integer(n as i128))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Q {
        Q(self.0.abs())
    }

    pub fn floor(&self) -> i128 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn ceil(&self) -> i128 {
        -Integer::div_floor(&(-self.numer()), &self.denom())
    }

    pub fn midpoint(a: Q, b: Q) -> Q {
        (a + b) / Q::int(2)
    }

    pub fn min(self, other: Q) -> Q {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Q) -> Q {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        Q(self.0.checked_add(&rhs.0).expect("rational overflow in add"))
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        Q(self.0.checked_sub(&rhs.0).expect("rational overflow in sub"))
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        Q(self.0.checked_mul(&rhs.0).expect("rational overflow in mul"))
    }
}

impl Div for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(self.0.checked_div(&rhs.0).expect("rational overflow in div"))
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q::ZERO - self
    }
}

impl AddAssign for Q {
    fn add_assign(&mut self, rhs: Q) {
        *self = *self + rhs;
    }
}

impl SubAssign for Q {
    fn sub_assign(&mut self, rhs: Q) {
        *self = *self - rhs;
    }
}

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::ZERO, |a, b| a + b)
    }
}

impl One for Q {
    fn one() -> Q {
        Q::ONE
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;

    /// Accepts `7`, `-3/4` and finite decimals such as `0.25`.
    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let err = || ParseQError(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| err())?;
            let d: i128 = d.trim().parse().map_err(|_| err())?;
            if d == 0 {
                return Err(err());
            }
            return Ok(Q::new(n, d));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
                return Err(err());
            }
            let negative = whole.starts_with('-');
            let whole: i128 = match whole.trim_start_matches(['-', '+']) {
                "" => 0,
                w => w.parse().map_err(|_| err())?,
            };
            let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(err)?;
            let frac: i128 = frac.parse().map_err(|_| err())?;
            let numer = whole
                .checked_mul(scale)
                .and_then(|w| w.checked_add(frac))
                .ok_or_else(err)?;
            let q = Q::new(numer, scale);
            return Ok(if negative { -q } else { q });
        }
        let n: i128 = s.parse().map_err(|_| err())?;
        Ok(Q(Ratio::from_integer(n)))
    }
}

/// Shorthand used throughout the tests: `q(3, 2)` is 3/2.
pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(numer as i128, denom as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<Q>().unwrap(), q(3, 2));
        assert_eq!("-4/6".parse::<Q>().unwrap(), q(-2, 3));
        assert_eq!("0.25".parse::<Q>().unwrap(), q(1, 4));
        assert_eq!("-1.5".parse::<Q>().unwrap(), q(-3, 2));
        assert_eq!(q(-2, 3).to_string(), "-2/3");
        assert_eq!(Q::int(5).to_string(), "5");
        assert!("1/0".parse::<Q>().is_err());
        assert!("x".parse::<Q>().is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(q(7, 2).floor(), 3);
        assert_eq!(q(7, 2).ceil(), 4);
        assert_eq!(q(-7, 2).floor(), -4);
        assert_eq!(q(-7, 2).ceil(), -3);
        assert_eq!(Q::int(3).ceil(), 3);
    }

    #[test]
    #[should_panic(expected = "rational overflow")]
    fn overflow_panics() {
        let big = Q::new(i128::MAX / 2, 1);
        let _ = big * big;
    }
}
