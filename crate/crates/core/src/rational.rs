//! Exact rationals with an inline machine-word fast path.
//!
//! Values are kept in lowest terms with a positive denominator. Arithmetic is
//! carried out in `i128` and promoted to a heap-allocated big rational only
//! when the reduced result does not fit in `i64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub fn int(n: i64) -> Q {
        Q::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Q {
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        if n == 0 {
            return Q::Small(0, 1);
        }
        let g = gcd128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Q::Big(r) => (**r).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn recip(&self) -> Q {
        match self {
            Q::Small(0, _) => panic!("reciprocal of zero"),
            Q::Small(a, b) => Q::from_i128(*b as i128, *a as i128),
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }

    pub fn abs(&self) -> Q {
        match self {
            Q::Small(a, b) => Q::from_i128((*a as i128).abs(), *b as i128),
            Q::Big(r) => Q::from_big(r.abs()),
        }
    }

    fn add_ref(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Q::from_i128(*a as i128 + *c as i128, 1);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                // a*d + c*b fits: each product < 2^126
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul_ref(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg_ref(&self) -> Q {
        match self {
            Q::Small(a, b) => Q::from_i128(-(*a as i128), *b as i128),
            Q::Big(r) => Q::from_big(-(**r).clone()),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            // normalised: a Big value never equals a Small one
            (Q::Big(x), Q::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl std::hash::Hash for Q {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Q::Small(a, b) => (0u8, a, b).hash(h),
            Q::Big(r) => (1u8, r.numer(), r.denom()).hash(h),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Q> for &Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                $body(self, o)
            }
        }
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                $body(&self, &o)
            }
        }
        impl $tr<&Q> for Q {
            type Output = Q;
            fn $m(self, o: &Q) -> Q {
                $body(&self, o)
            }
        }
        impl $tr<Q> for &Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &Q, b: &Q| a.add_ref(b));
binop!(Sub, sub, |a: &Q, b: &Q| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a: &Q, b: &Q| a.mul_ref(b));
binop!(Div, div, |a: &Q, b: &Q| a.mul_ref(&b.recip()));

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        self.neg_ref()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        self.neg_ref()
    }
}

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        *self = self.add_ref(o);
    }
}

impl AddAssign<Q> for Q {
    fn add_assign(&mut self, o: Q) {
        *self = self.add_ref(&o);
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        *self = self.add_ref(&o.neg_ref());
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, o: &Q) {
        *self = self.mul_ref(o);
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::Small(0, 1)
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

impl One for Q {
    fn one() -> Q {
        Q::Small(1, 1)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(a, 1) => write!(f, "{a}"),
            Q::Small(a, b) => write!(f, "{a}/{b}"),
            Q::Big(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseQError(pub String);

impl fmt::Display for ParseQError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a rational number: {}", self.0)
    }
}

impl std::error::Error for ParseQError {}

impl FromStr for Q {
    type Err = ParseQError;
    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let r: BigRational = s.trim().parse().map_err(|_| ParseQError(s.to_string()))?;
        Ok(Q::from_big(r))
    }
}

impl serde::Serialize for Q {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Q::Small(a, 1) => s.serialize_i64(*a),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Q {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Q::int(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_normal_form() {
        let a = Q::new(2, -4);
        assert_eq!(a, Q::new(-1, 2));
        assert_eq!(&a + &Q::new(1, 2), Q::zero());
        assert_eq!(Q::new(3, 4) * Q::new(4, 3), Q::one());
        assert_eq!((Q::new(1, 3) / Q::new(2, 3)).to_string(), "1/2");
        assert!(Q::new(1, 3) < Q::new(1, 2));
    }

    #[test]
    fn promotes_and_demotes() {
        let big = Q::int(i64::MAX) * Q::int(4);
        assert!(matches!(big, Q::Big(_)));
        let back = &big / &Q::int(8);
        assert_eq!(back, Q::new(i64::MAX, 2));
        assert!(matches!(back, Q::Small(..)));
        assert_eq!(big.to_string().parse::<Q>().unwrap(), big);
    }

    #[test]
    fn json() {
        let v = vec![Q::int(3), Q::new(-1, 2)];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[3,"-1/2"]"#);
        let back: Vec<Q> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
