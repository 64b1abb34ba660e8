//! Integer coefficients with an inline machine-word fast path.
//!
//! Gröbner computations spend most of their time on coefficients that fit
//! in a machine word; `Int` keeps those unboxed and promotes to `BigInt`
//! only on overflow. Invariant: the `Big` variant never holds a value that
//! fits in `i64`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    #[inline]
    pub fn zero() -> Self {
        Int::Small(0)
    }

    #[inline]
    pub fn one() -> Self {
        Int::Small(1)
    }

    pub fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => match b.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(r) => Int::Small(r),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(r) = a.checked_add(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() + o.to_big())
    }

    pub fn sub(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(r) = a.checked_sub(*b) {
                return Int::Small(r);
            }
        }
        Int::from_big(self.to_big() - o.to_big())
    }

    pub fn mul(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(r) => Int::Small(r),
                None => Int::Big(BigInt::from(*a) * BigInt::from(*b)),
            },
            (Int::Small(0), _) | (_, Int::Small(0)) => Int::zero(),
            (Int::Small(1), x) | (x, Int::Small(1)) => x.clone(),
            (Int::Small(a), Int::Big(b)) | (Int::Big(b), Int::Small(a)) => Int::from_big(b * a),
            (Int::Big(a), Int::Big(b)) => Int::from_big(a * b),
        }
    }

    /// `self * a - o * b`, the inner step of fraction-free reduction.
    pub fn mul_sub_mul(&self, a: &Int, o: &Int, b: &Int) -> Int {
        if let (Int::Small(x), Int::Small(y), Int::Small(z), Int::Small(w)) = (self, a, o, b) {
            let r = (*x as i128) * (*y as i128) - (*z as i128) * (*w as i128);
            if let Ok(v) = i64::try_from(r) {
                return Int::Small(v);
            }
            return Int::Big(BigInt::from(r));
        }
        self.mul(a).sub(&o.mul(b))
    }

    /// Exact division; the caller guarantees `o | self`.
    pub fn div_exact(&self, o: &Int) -> Int {
        match (self, o) {
            (_, Int::Small(1)) => self.clone(),
            (Int::Small(a), Int::Small(b)) => match a.checked_div(*b) {
                Some(r) => Int::Small(r),
                None => Int::from_big(BigInt::from(*a) / BigInt::from(*b)),
            },
            _ => Int::from_big(self.to_big() / o.to_big()),
        }
    }

    pub fn gcd(&self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => {
                let g = (a.unsigned_abs()).gcd(&b.unsigned_abs());
                match i64::try_from(g) {
                    Ok(v) => Int::Small(v),
                    Err(_) => Int::Big(BigInt::from(g)),
                }
            }
            (Int::Small(a), Int::Big(b)) | (Int::Big(b), Int::Small(a)) => {
                if *a == 0 {
                    return Int::from_big(b.abs());
                }
                let r = (b % BigInt::from(*a)).to_i64().unwrap();
                Int::Small(a.unsigned_abs().gcd(&r.unsigned_abs()) as i64)
            }
            (Int::Big(a), Int::Big(b)) => Int::from_big(a.gcd(b)),
        }
    }

    pub fn from_u128(v: u128) -> Int {
        match i64::try_from(v) {
            Ok(x) => Int::Small(x),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }

    /// Number of bits; used to decide when to strip content mid-reduction.
    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(v) => 64 - v.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl PartialEq for Int {
    fn eq(&self, o: &Int) -> bool {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl PartialOrd for Int {
    fn partial_cmp(&self, o: &Int) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Int {
    fn cmp(&self, o: &Int) -> Ordering {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::Small(0)
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl std::ops::Add for Int {
    type Output = Int;
    fn add(self, o: Int) -> Int {
        Int::add(&self, &o)
    }
}

impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, o: Int) -> Int {
        Int::mul(&self, &o)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::Small(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Int::from(i64::MAX);
        let b = a.add(&Int::one());
        assert!(matches!(b, Int::Big(_)));
        let c = b.sub(&Int::one());
        assert_eq!(c, Int::Small(i64::MAX));
        let m = Int::from(i64::MIN);
        assert!(matches!(m.neg(), Int::Big(_)));
        assert_eq!(m.neg().neg(), m);
    }

    #[test]
    fn gcd_mixed() {
        let big = Int::from_big(BigInt::from(6) * BigInt::from(u64::MAX));
        assert_eq!(big.gcd(&Int::from(4)), Int::from(2));
        assert_eq!(Int::from(0).gcd(&Int::from(-5)), Int::from(5));
        assert_eq!(Int::from(i64::MIN).gcd(&Int::from(0)).to_big(), BigInt::from(i64::MIN).abs());
    }

    #[test]
    fn mul_sub_mul_wide() {
        let x = Int::from(i64::MAX);
        let r = x.mul_sub_mul(&x, &Int::from(1), &Int::from(1));
        assert_eq!(r.to_big(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX) - 1);
    }
}
