use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Rat {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int(v: i64) -> Rat {
        Rat(BigRational::from_integer(v.into()))
    }

    pub fn from_bigint(v: BigInt) -> Rat {
        Rat(BigRational::from_integer(v))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    /// Exact value of a finite float (every finite `f64` is a dyadic rational).
    pub fn from_f64(v: f64) -> Option<Rat> {
        BigRational::from_float(v).map(Rat)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> Rat {
        Rat(self.0.floor())
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract_pos(&self) -> Rat {
        Rat(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer value when the denominator is 1 and it fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// `self * scale` as an `i64`, if that is an integer that fits.
    pub fn scaled_i64(&self, scale: i64) -> Option<i64> {
        let v = &self.0 * BigRational::from_integer(scale.into());
        if v.is_integer() {
            v.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rat {
    fn from(v: i64) -> Rat {
        Rat::from_int(v)
    }
}

impl From<BigRational> for Rat {
    fn from(v: BigRational) -> Rat {
        Rat(v)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0.$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl std::ops::Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// `p/q`, with the denominator omitted when it is 1.
impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts exactly `-?[0-9]+(/[1-9][0-9]*)?`.
impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Rat, ExactError> {
        let bad = || ExactError::BadRational(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = num.strip_prefix('-').unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let numer: BigInt = num.parse().map_err(|_| bad())?;
        let denom: BigInt = match den {
            None => BigInt::one(),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) || d.starts_with('0') {
                    return Err(bad());
                }
                d.parse().map_err(|_| bad())?
            }
        };
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn normalized(r: &Rat) -> bool {
        r.denom() > &BigInt::zero() && r.numer().gcd(r.denom()) == BigInt::one()
            || (r.numer().is_zero() && r.denom() == &BigInt::one())
    }

    #[test]
    fn parse_and_print() {
        for (s, out) in
            [("0", "0"), ("1", "1"), ("8/21", "8/21"), ("-10/21", "-10/21"), ("6/4", "3/2"), ("-0", "0"), ("4/2", "2")]
        {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), out);
            assert!(normalized(&r));
        }
    }

    #[test]
    fn parse_rejects_grammar_violations() {
        for s in ["", "-", "1/", "/2", "1/0", "1/02", "+1", "1.5", "1/-2", " 1", "a", "--1"] {
            assert!(s.parse::<Rat>().is_err(), "{s:?} should be rejected");
        }
    }

    #[test]
    fn arithmetic_stays_normalized() {
        let a = Rat::new(2, 21);
        let b = Rat::new(11, 21);
        let s = &a + &b;
        assert_eq!(s, Rat::new(13, 21));
        let p = &a * &Rat::from_int(21);
        assert_eq!(p, Rat::from_int(2));
        assert!(normalized(&p));
        let d = &Rat::new(1, 3) - &Rat::new(1, 3);
        assert!(d.is_zero() && normalized(&d));
        assert_eq!(Rat::new(-8, 21).floor(), Rat::from_int(-1));
        assert_eq!(Rat::new(-8, 21).fract_pos(), Rat::new(13, 21));
    }

    #[test]
    fn float_conversion_is_exact_for_dyadics() {
        assert_eq!(Rat::from_f64(-0.5).unwrap(), Rat::new(-1, 2));
        assert_eq!(Rat::from_f64(0.25).unwrap(), Rat::new(1, 4));
        assert!(Rat::from_f64(f64::NAN).is_none());
    }
}
