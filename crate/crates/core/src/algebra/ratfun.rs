use std::fmt;

use num_traits::{One, Zero};

use super::gcd::{div_exact, gcd};
use super::poly::Polynomial;
use super::Rational;
use crate::error::{Error, Result};

/// Reduced fraction `num / den` of polynomials over Q.
///
/// Canonical form: `gcd(num, den) = 1`, `den` integral, content-free and
/// with positive leading coefficient; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::ContextMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Polynomial::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    /// `1 / g`.
    pub fn reciprocal_of(g: Polynomial) -> Result<Self> {
        let n = g.nvars();
        Self::new(Polynomial::one(n), g)
    }

    fn reduce(num: Polynomial, den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (div_exact(&num, &g).unwrap(), div_exact(&den, &g).unwrap())
        };
        let (s, den) = den.primitive_part();
        RationalFunction { num: num.scale(&s.recip()), den }
    }

    /// `num / den` reduced, where every irreducible factor of `den` is
    /// known to divide `r`. Only gcds against `r` are taken.
    pub fn reduce_with_radical(num: Polynomial, den: Polynomial, r: &Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = num.nvars();
        if num.is_zero() {
            return Ok(Self::zero(n));
        }
        let (mut num, mut den) = (num, den);
        if !r.is_constant() {
            loop {
                let h = gcd(&gcd(&num, r), &den);
                if h.is_constant() {
                    break;
                }
                num = div_exact(&num, &h).expect("common factor");
                den = div_exact(&den, &h).expect("common factor");
            }
        }
        let (s, den) = den.primitive_part();
        Ok(RationalFunction { num: num.scale(&s.recip()), den })
    }

    /// Squarefree part `g / gcd(g, d_1 g, ..., d_n g)`.
    pub fn radical(g: &Polynomial) -> Polynomial {
        if g.is_constant() {
            return Polynomial::one(g.nvars());
        }
        let mut h = g.clone();
        for i in 0..g.nvars() {
            if h.is_constant() {
                break;
            }
            h = gcd(&h, &g.derivative(i));
        }
        div_exact(g, &h).expect("gcd divides").normalized()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        Self::reduce(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        Self::reduce(self.num.mul(p), self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let n = self.nvars();
        let base = if k < 0 { Self::from_poly(Polynomial::one(n)).div(self)? } else { self.clone() };
        let mut r = Self::from_poly(Polynomial::one(n));
        for _ in 0..k.unsigned_abs() {
            r = r.mul(&base);
        }
        Ok(r)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let num = self.num.derivative(i).mul(&self.den).sub(&self.num.mul(&self.den.derivative(i)));
        Self::reduce(num, self.den.mul(&self.den))
    }

    /// Exact equality without relying on canonical forms.
    pub fn cross_eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den && self.num.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RatDisplay<'a> {
        RatDisplay { r: self, names }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

pub struct RatDisplay<'a> {
    r: &'a RationalFunction,
    names: &'a [String],
}

impl fmt::Display for RatDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.r.num.display(self.names).to_string();
        if self.r.den.is_constant() {
            return write!(f, "{num}");
        }
        let num = if self.r.num.len() > 1 { format!("({num})") } else { num };
        write!(f, "{}/({})", num, self.r.den.display(self.names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factor() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let num = x.mul(&x).sub(&y.mul(&y));
        let den = x.sub(&y).scale(&Rational::from_integer((-4).into()));
        let r = RationalFunction::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &x.add(&y).scale(&Rational::new((-1).into(), 4.into())));
    }

    #[test]
    fn derivative_of_reciprocal() {
        let x = Polynomial::var(1, 0);
        let r = RationalFunction::reciprocal_of(x.clone()).unwrap();
        let d = r.derivative(0);
        let expect = RationalFunction::new(Polynomial::one(1).neg(), x.mul(&x)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(Polynomial::one(1), Polynomial::zero(1)),
            Err(Error::DivisionByZero)
        );
    }
}
