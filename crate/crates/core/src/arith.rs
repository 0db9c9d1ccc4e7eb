//! Exact rationals on the projective line.
//!
//! A [`Fraction`] is either a reduced `p/q` with `q > 0`, or the single
//! unsigned point at infinity `1/0`. Every tangle invariant in this crate
//! takes values here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: BigInt,
    den: BigInt,
}

impl Fraction {
    /// Builds `p/q` in lowest terms with the sign on the numerator. Any
    /// `q = 0` (with `p != 0`) is the point at infinity.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if q.is_zero() {
            return if p.is_zero() {
                Err(Error::ZeroOverZero)
            } else {
                Ok(Self::infinity())
            };
        }
        let g = p.gcd(&q);
        let (mut num, mut den) = (p / &g, q / &g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok(Self { num, den })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn infinity() -> Self {
        Self {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(n)` when the value is the finite integer `n`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.is_integer().then_some(&self.num)
    }

    /// Sign of a finite value; infinity reports 0 since it carries none.
    pub fn signum(&self) -> i32 {
        if self.is_infinite() || self.num.is_zero() {
            0
        } else if self.num.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn add(&self, other: &Fraction) -> Result<Fraction> {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Err(Error::IndeterminateSum),
            (true, false) | (false, true) => Ok(Self::infinity()),
            (false, false) => Self::new(
                &self.num * &other.den + &other.num * &self.den,
                &self.den * &other.den,
            ),
        }
    }

    pub fn add_integer(&self, n: &BigInt) -> Fraction {
        if self.is_infinite() {
            return Self::infinity();
        }
        Self {
            num: &self.num + n * &self.den,
            den: self.den.clone(),
        }
    }

    pub fn negate(&self) -> Fraction {
        if self.is_infinite() {
            return Self::infinity();
        }
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn reciprocal(&self) -> Fraction {
        if self.num.is_zero() {
            return Self::infinity();
        }
        if self.num.is_negative() {
            Self {
                num: -&self.den,
                den: -&self.num,
            }
        } else {
            Self {
                num: self.den.clone(),
                den: self.num.clone(),
            }
        }
    }

    /// `-1/x`, the rotation of a tangle read on fractions.
    pub fn neg_reciprocal(&self) -> Fraction {
        self.reciprocal().negate()
    }

    /// `1 / (1/x + 1/y)`, the fraction of a tangle product.
    pub fn star(&self, other: &Fraction) -> Result<Fraction> {
        Ok(self.reciprocal().add(&other.reciprocal())?.reciprocal())
    }

    pub fn sub(&self, other: &Fraction) -> Result<Fraction> {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &Fraction) -> Result<Fraction> {
        if self.is_infinite() || other.is_infinite() {
            if self.is_zero() || other.is_zero() {
                return Err(Error::IndeterminateSum);
            }
            return Ok(Self::infinity());
        }
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    /// Smallest integer `>= x` for finite `x`.
    pub fn ceil(&self) -> Option<BigInt> {
        if self.is_infinite() {
            return None;
        }
        Some(self.num.div_ceil(&self.den))
    }

    /// Largest integer `<= x` for finite `x`.
    pub fn floor(&self) -> Option<BigInt> {
        if self.is_infinite() {
            return None;
        }
        Some(self.num.div_floor(&self.den))
    }
}

impl Default for Fraction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigInt> for Fraction {
    fn from(n: BigInt) -> Self {
        Self::integer(n)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::textio::parse_fraction(s)
    }
}

#[derive(Serialize, Deserialize)]
struct FractionRepr {
    num: String,
    den: String,
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FractionRepr {
            num: self.num.to_string(),
            den: self.den.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FractionRepr::deserialize(deserializer)?;
        let num: BigInt = repr.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(D::Error::custom)?;
        Fraction::new(num, den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frac(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn construction_normalizes() {
        let x = frac(46, 28);
        assert_eq!(
            (x.numer().clone(), x.denom().clone()),
            (23.into(), 14.into())
        );
        let inf = frac(-7, 0);
        assert!(inf.is_infinite());
        assert_eq!(inf.numer(), &BigInt::one());
        assert_eq!(frac(0, -5), Fraction::zero());
        assert_eq!(frac(3, -6), frac(-1, 2));
        assert_eq!(Fraction::new(0, 0), Err(Error::ZeroOverZero));
    }

    #[test]
    fn projective_addition() {
        assert_eq!(frac(1, 3).add(&frac(1, 2)).unwrap(), frac(5, 6));
        assert_eq!(
            Fraction::infinity().add(&frac(7, 5)).unwrap(),
            Fraction::infinity()
        );
        assert_eq!(
            Fraction::infinity().add(&Fraction::infinity()),
            Err(Error::IndeterminateSum)
        );
    }

    #[test]
    fn reciprocals_and_rotation() {
        assert_eq!(frac(23, 14).reciprocal(), frac(14, 23));
        assert_eq!(Fraction::zero().reciprocal(), Fraction::infinity());
        assert_eq!(Fraction::infinity().reciprocal(), Fraction::zero());
        assert_eq!(frac(-2, 3).reciprocal(), frac(-3, 2));

        assert_eq!(frac(23, 14).negate(), frac(-23, 14));
        assert_eq!(Fraction::zero().negate(), Fraction::zero());
        assert_eq!(Fraction::infinity().negate(), Fraction::infinity());

        assert_eq!(frac(23, 14).neg_reciprocal(), frac(-14, 23));
        assert_eq!(Fraction::zero().neg_reciprocal(), Fraction::infinity());
        assert_eq!(Fraction::one().neg_reciprocal(), frac(-1, 1));
    }

    #[test]
    fn star_products() {
        assert_eq!(frac(3, 1).star(&frac(-1, 2)).unwrap(), frac(-3, 5));
        assert_eq!(Fraction::infinity().star(&frac(7, 5)).unwrap(), frac(7, 5));
        assert_eq!(
            Fraction::zero().star(&frac(7, 5)).unwrap(),
            Fraction::zero()
        );
        // 1/[5] * [6] * 1/[2] from the worked sum 3 + 1/(5 + 1/6 + 2) - 4
        let inner = frac(1, 5)
            .star(&frac(6, 1).star(&frac(1, 2)).unwrap())
            .unwrap();
        assert_eq!(inner, frac(6, 43));
        // 1/(1/5 + 1/6 + 2)
        let other = frac(5, 1)
            .star(&frac(6, 1).star(&frac(1, 2)).unwrap())
            .unwrap();
        assert_eq!(other, frac(30, 71));
        // [0]*[0] contains a closed loop
        assert_eq!(
            Fraction::zero().star(&Fraction::zero()),
            Err(Error::IndeterminateSum)
        );
    }

    #[test]
    fn text_and_json() {
        assert_eq!(frac(23, 14).to_string(), "23/14");
        assert_eq!(frac(-7, 1).to_string(), "-7");
        assert_eq!(Fraction::infinity().to_string(), "inf");
        let json = serde_json::to_string(&frac(-23, 14)).unwrap();
        assert_eq!(json, r#"{"num":"-23","den":"14"}"#);
        let back: Fraction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, frac(-23, 14));
        let big: Fraction =
            serde_json::from_str(r#"{"num":"123456789012345678901234567890","den":"0"}"#).unwrap();
        assert!(big.is_infinite());
    }

    fn finite() -> impl Strategy<Value = Fraction> {
        (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| frac(p, q))
    }

    fn any_fraction() -> impl Strategy<Value = Fraction> {
        prop_oneof![9 => finite(), 1 => Just(Fraction::infinity())]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn double_reciprocal_is_identity(x in finite()) {
            prop_assert_eq!(x.reciprocal().reciprocal(), x.clone());
            prop_assert_eq!(x.neg_reciprocal().neg_reciprocal(), x);
        }

        #[test]
        fn additive_inverse(x in finite()) {
            prop_assert_eq!(x.add(&x.negate()).unwrap(), Fraction::zero());
        }

        #[test]
        fn star_commutative_associative(x in any_fraction(), y in any_fraction(), z in any_fraction()) {
            prop_assert_eq!(x.star(&y), y.star(&x));
            let left = x.star(&y).and_then(|xy| xy.star(&z));
            let right = y.star(&z).and_then(|yz| x.star(&yz));
            prop_assert_eq!(left, right);
        }
    }
}
