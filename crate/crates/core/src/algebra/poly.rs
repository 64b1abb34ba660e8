use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::{KeyOrder, OrderSpec};
use super::Rational;
use crate::error::{Error, Result};

/// Degree-reverse-lexicographic comparison on raw exponent vectors.
pub fn grevlex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept sorted in descending grevlex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic on two polynomials of the same ring.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if a.nvars != b.nvars {
        return Err(Error::ContextMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, vec![(Monomial::var(nvars, i, 1), Rational::one())])
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let n = m.len();
        Self::from_terms(n, vec![(m, c)])
    }

    /// Builds the canonical form: like terms merged, zeros dropped, sorted.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity");
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grevlex_cmp(b.0.exps(), a.0.exps()));
        Polynomial { nvars, terms }
    }

    pub fn from_int_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        Self::from_terms(nvars, terms.into_iter().map(|(m, c)| (m, Rational::from_integer(c))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms[0].1.clone());
        }
        None
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u16> {
        self.terms.iter().map(|(m, _)| m.get(i)).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "ring context");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            match grevlex_cmp(self.terms[i].0.exps(), o.terms[j].0.exps()) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &o.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "ring context");
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * o.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        Self::from_terms(self.nvars, acc)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut r = Polynomial::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.get(i) > 0).map(|(m, c)| {
            let mut e = m.clone();
            let k = e.0[i];
            e.0[i] -= 1;
            (e, c * Rational::from_integer(BigInt::from(k)))
        });
        Self::from_terms(self.nvars, terms)
    }

    /// Substitute `x_i = 0`.
    pub fn set_zero(&self, i: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.get(i) == 0).cloned().collect(),
        }
    }

    /// Re-embed into a ring with `new_nvars` variables; variable `i` goes to `map[i]`.
    pub fn remap(&self, new_nvars: usize, map: &[usize]) -> Polynomial {
        Self::from_terms(
            new_nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = Monomial::one(new_nvars);
                for (i, &x) in m.exps().iter().enumerate() {
                    e.0[map[i]] += x;
                }
                (e, c.clone())
            }),
        )
    }

    /// Least common denominator times the gcd-free integer content sign-fixed:
    /// returns `(s, p)` with `self = s * p`, `p` integral, primitive, positive leading coefficient.
    pub fn primitive_part(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::one(), self.clone());
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&den / c.denom());
            num_gcd = num_gcd.gcd(&v);
        }
        if self.terms[0].1.is_negative() {
            num_gcd = -num_gcd;
        }
        let s = Rational::new(num_gcd, den);
        let inv = s.recip();
        (s, self.scale(&inv))
    }

    /// Integer, content-free, positive-leading form (the output normalization).
    pub fn normalized(&self) -> Polynomial {
        self.primitive_part().1
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Evaluate with every variable given a rational value.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            s += t;
        }
        s
    }

    /// Terms sorted under an arbitrary order (descending).
    pub fn sorted_terms(&self, order: &OrderSpec) -> Vec<(Monomial, Rational)> {
        let k = KeyOrder::from_spec(order, self.nvars);
        let mut t = self.terms.clone();
        t.sort_by(|a, b| k.mono_key(b.0.exps()).cmp(&k.mono_key(a.0.exps())));
        t
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { p: self, names }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

pub struct PolyDisplay<'a> {
    p: &'a Polynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = |m: &Monomial| -> Vec<String> {
            m.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], e) })
                .collect()
        };
        write_terms(f, self.p.terms.iter().map(|(m, c)| (factors(m), c)))
    }
}

/// Shared term printer: `-3*x^2*y + x - 1/2`.
pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Vec<String>, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (factors, c) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let mut parts = Vec::new();
        if !a.is_one() || factors.is_empty() {
            parts.push(a.to_string());
        }
        parts.extend(factors);
        write!(f, "{}", parts.join("*"))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn basic_identities() {
        let x = Polynomial::var(1, 0);
        let one = Polynomial::one(1);
        let p = x.add(&one).mul(&x.sub(&one));
        assert_eq!(p, x.mul(&x).sub(&one));
        assert_eq!(p.add(&Polynomial::zero(1)), p);
        let a = x.scale(&q(2, 3));
        let b = x.scale(&q(3, 2));
        assert_eq!(a.mul(&b), x.pow(2));
    }

    #[test]
    fn context_mismatch() {
        let a = Polynomial::var(1, 0);
        let b = Polynomial::var(2, 0);
        assert_eq!(poly_arith(&a, &b, ArithOp::Add), Err(Error::ContextMismatch));
        assert!(poly_arith(&a, &a, ArithOp::Mul).is_ok());
    }

    #[test]
    fn primitive_part_normalizes() {
        let p = Polynomial::from_terms(
            2,
            vec![(Monomial::from_exps(&[1, 0]), q(-2, 3)), (Monomial::from_exps(&[0, 0]), q(4, 9))],
        );
        let (s, pp) = p.primitive_part();
        assert_eq!(pp.scale(&s), p);
        assert_eq!(pp.terms()[0].1, q(3, 1));
        assert_eq!(pp.terms()[1].1, q(-2, 1));
    }

    #[test]
    fn derivative_and_display() {
        let names = vec!["x".to_string(), "y".to_string()];
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.pow(3).mul(&y).sub(&y.scale(&q(1, 2)));
        assert_eq!(p.display(&names).to_string(), "x^3*y - 1/2*y");
        assert_eq!(p.derivative(0).display(&names).to_string(), "3*x^2*y");
    }
}
