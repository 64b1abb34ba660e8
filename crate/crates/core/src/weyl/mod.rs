//! The Weyl algebra `D = K<x_1..x_n, d_1..d_n>` and its homogenization.
//!
//! Operators are stored normally ordered (every `x` to the left of every
//! `d`) as commutative polynomials in `2n` variables laid out as
//! `[x_1..x_n, d_1..d_n]`; only multiplication differs from the
//! commutative ring.

mod gb;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::{write_terms, Monomial, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

pub use gb::{
    gb_weyl, gb_weyl_with_cofactors, weyl_ideal_contains, weyl_ideals_equal, weyl_module_gb, weyl_normal_form,
    weyl_order, WeylBasis,
};

/// Variable names of `D` and the split into integration variables
/// `x_1..x_m` and parameters `x_{m+1}..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    names: Vec<String>,
    m: usize,
}

impl RingContext {
    pub fn new(names: Vec<String>, m: usize) -> Result<Self> {
        if m > names.len() {
            return Err(Error::Invalid(format!("split {m} exceeds {} variables", names.len())));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate variable {a}")));
            }
        }
        Ok(RingContext { names, m })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Names of all `2n` operator variables: `x..`, then `dx..`.
    pub fn operator_names(&self) -> Vec<String> {
        let mut v = self.names.clone();
        v.extend(self.names.iter().map(|s| format!("d{s}")));
        v
    }

    /// The parameter ring `D'`.
    pub fn parameters(&self) -> RingContext {
        RingContext { names: self.names[self.m..].to_vec(), m: 0 }
    }

    /// The standard weight for integration: one on `x_1..x_m`, zero elsewhere.
    pub fn integration_weight(&self) -> Vec<i64> {
        (0..self.n()).map(|i| if i < self.m { 1 } else { 0 }).collect()
    }
}

/// Normally ordered differential operator `Σ c · x^u d^v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylOperator {
    n: usize,
    poly: Polynomial,
}

/// Product of two operators in normal order.
pub fn weyl_mul(a: &WeylOperator, b: &WeylOperator) -> Result<WeylOperator> {
    if a.n != b.n {
        return Err(Error::ContextMismatch);
    }
    Ok(a.mul(b))
}

fn falling(u: u16, k: u16) -> u64 {
    (0..k).map(|j| (u - j) as u64).product()
}

fn binom(b: u16, k: u16) -> u64 {
    let mut r = 1u64;
    for j in 0..k {
        r = r * (b - j) as u64 / (j + 1) as u64;
    }
    r
}

impl WeylOperator {
    pub fn zero(n: usize) -> Self {
        WeylOperator { n, poly: Polynomial::zero(2 * n) }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        WeylOperator { n, poly: Polynomial::constant(2 * n, c) }
    }

    pub fn x(n: usize, i: usize) -> Self {
        WeylOperator { n, poly: Polynomial::var(2 * n, i) }
    }

    pub fn d(n: usize, i: usize) -> Self {
        WeylOperator { n, poly: Polynomial::var(2 * n, n + i) }
    }

    /// `d^v` for a multi-index `v`.
    pub fn d_monomial(n: usize, v: &[u16]) -> Self {
        let mut e = vec![0u16; 2 * n];
        e[n..].copy_from_slice(v);
        WeylOperator { n, poly: Polynomial::monomial(Monomial::from_exps(&e), Rational::one()) }
    }

    /// Multiplication by a polynomial in `x_1..x_n`.
    pub fn from_coefficient(p: &Polynomial) -> Self {
        let n = p.nvars();
        WeylOperator { n, poly: p.remap(2 * n, &(0..n).collect::<Vec<_>>()) }
    }

    /// Reads a commutative polynomial in `[x.., d..]` as a normally ordered operator.
    pub fn from_normal_polynomial(n: usize, poly: Polynomial) -> Result<Self> {
        if poly.nvars() != 2 * n {
            return Err(Error::Arity { expected: 2 * n, found: poly.nvars() });
        }
        Ok(WeylOperator { n, poly })
    }

    /// Terms `(u, v, c)` meaning `c · x^u d^v`.
    pub fn from_terms<'a>(n: usize, terms: impl IntoIterator<Item = (&'a [u16], &'a [u16], Rational)>) -> Self {
        let poly = Polynomial::from_terms(
            2 * n,
            terms.into_iter().map(|(u, v, c)| {
                let mut e = u.to_vec();
                e.extend_from_slice(v);
                (Monomial::from_exps(&e), c)
            }),
        );
        WeylOperator { n, poly }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    /// The normally ordered symbol as a polynomial in `[x.., d..]`.
    pub fn as_polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &[u16], &Rational)> {
        self.poly.terms().iter().map(move |(m, c)| (&m.exps()[..self.n], &m.exps()[self.n..], c))
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "operator context");
        WeylOperator { n: self.n, poly: self.poly.add(&o.poly) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "operator context");
        WeylOperator { n: self.n, poly: self.poly.sub(&o.poly) }
    }

    pub fn neg(&self) -> Self {
        WeylOperator { n: self.n, poly: self.poly.neg() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WeylOperator { n: self.n, poly: self.poly.scale(c) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "operator context");
        let n = self.n;
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in self.poly.terms() {
            let (ua, va) = ma.exps().split_at(n);
            for (mb, cb) in o.poly.terms() {
                let (ub, vb) = mb.exps().split_at(n);
                let c = ca * cb;
                // x^ua d^va x^ub d^vb = x^ua Π_i Σ_k C(va_i,k) ub_i!/(ub_i-k)! x_i^(ub_i-k) d_i^(va_i-k) d^vb
                let active: Vec<usize> = (0..n).filter(|&i| va[i] > 0 && ub[i] > 0).collect();
                let mut ks = vec![0u16; active.len()];
                loop {
                    let mut e: Vec<u16> = ua.iter().zip(ub).map(|(a, b)| a + b).collect();
                    e.extend(va.iter().zip(vb).map(|(a, b)| a + b));
                    let mut f = c.clone();
                    for (a, &i) in active.iter().enumerate() {
                        let k = ks[a];
                        e[i] -= k;
                        e[n + i] -= k;
                        f *= Rational::from_integer((binom(va[i], k) * falling(ub[i], k)).into());
                    }
                    *acc.entry(Monomial::from_exps(&e)).or_insert_with(Rational::zero) += f;
                    // next multi-index
                    let mut idx = 0;
                    while idx < ks.len() {
                        let i = active[idx];
                        ks[idx] += 1;
                        if ks[idx] <= va[i].min(ub[i]) {
                            break;
                        }
                        ks[idx] = 0;
                        idx += 1;
                    }
                    if idx == ks.len() {
                        break;
                    }
                }
            }
        }
        WeylOperator { n, poly: Polynomial::from_terms(2 * n, acc) }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Order in `d` (the `(0,1)`-order); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms().map(|(_, v, _)| v.iter().map(|&x| x as u32).sum()).max()
    }

    /// Integer, content-free, positive-leading (grevlex) form.
    pub fn normalized(&self) -> Self {
        WeylOperator { n: self.n, poly: self.poly.normalized() }
    }

    /// Keep the terms where every listed `x` has exponent zero,
    /// i.e. substitute `x_i = 0` for `i` in `vars`.
    pub fn substitute_zero(&self, vars: &[usize]) -> Self {
        let mut p = self.poly.clone();
        for &i in vars {
            p = p.set_zero(i);
        }
        WeylOperator { n: self.n, poly: p }
    }

    /// Drop the variables not in `keep` (which must not occur), re-indexing to `keep.len()` variables.
    pub fn restrict_to(&self, keep: &[usize]) -> Result<Self> {
        let k = keep.len();
        let mut terms = Vec::new();
        for (u, v, c) in self.terms() {
            for i in 0..self.n {
                if !keep.contains(&i) && (u[i] > 0 || v[i] > 0) {
                    return Err(Error::Invalid(format!("operator depends on dropped variable {i}")));
                }
            }
            let mut e: Vec<u16> = keep.iter().map(|&i| u[i]).collect();
            e.extend(keep.iter().map(|&i| v[i]));
            terms.push((Monomial::from_exps(&e), c.clone()));
        }
        Ok(WeylOperator { n: k, poly: Polynomial::from_terms(2 * k, terms) })
    }

    /// Embed into `n_new` variables, variable `i` becoming `map[i]`.
    pub fn embed(&self, n_new: usize, map: &[usize]) -> Self {
        let mut full: Vec<usize> = map.to_vec();
        full.extend(map.iter().map(|&j| n_new + j));
        WeylOperator { n: n_new, poly: self.poly.remap(2 * n_new, &full) }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> OperatorDisplay<'a> {
        OperatorDisplay { op: self, names }
    }
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.n).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// Prints `c*x^u*dx^v` terms in the stored (grevlex) order. `names` are the
/// `n` variable names; derivatives print as `d<name>`.
pub struct OperatorDisplay<'a> {
    op: &'a WeylOperator,
    names: &'a [String],
}

impl fmt::Display for OperatorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.op.n;
        let factor = |name: String, e: u16| if e == 1 { name } else { format!("{name}^{e}") };
        let terms = self.op.poly.terms().iter().map(|(m, c)| {
            let e = m.exps();
            let mut fs: Vec<String> = (0..n).filter(|&i| e[i] > 0).map(|i| factor(self.names[i].clone(), e[i])).collect();
            fs.extend((0..n).filter(|&i| e[n + i] > 0).map(|i| factor(format!("d{}", self.names[i]), e[n + i])));
            (fs, c)
        });
        write_terms(f, terms)
    }
}

/// Fourier transform on the first `m` variables: `x_i -> -d_i`, `d_i -> x_i`.
pub fn fourier(p: &WeylOperator, m: usize) -> WeylOperator {
    transform(p, m, true)
}

/// Inverse transform: `d_i -> -x_i`, `x_i -> d_i` for `i < m`.
pub fn fourier_inverse(p: &WeylOperator, m: usize) -> WeylOperator {
    transform(p, m, false)
}

fn transform(p: &WeylOperator, m: usize, forward: bool) -> WeylOperator {
    let n = p.n;
    let mut acc = WeylOperator::zero(n);
    for (u, v, c) in p.terms() {
        // image of x^u (ordered product) times image of d^v
        let mut left = WeylOperator::constant(n, c.clone());
        let mut right = WeylOperator::one(n);
        let mut plain_u = vec![0u16; n];
        let mut plain_v = vec![0u16; n];
        let mut swapped_u = vec![0u16; n];
        let mut swapped_v = vec![0u16; n];
        let mut sign = false;
        for i in 0..n {
            if i < m {
                // x_i^a d_i^b  ->  (±d_i)^a (±x_i)^b
                swapped_v[i] = u[i];
                swapped_u[i] = v[i];
                let odd = if forward { u[i] % 2 == 1 } else { v[i] % 2 == 1 };
                sign ^= odd;
            } else {
                plain_u[i] = u[i];
                plain_v[i] = v[i];
            }
        }
        if sign {
            left = left.neg();
        }
        left = left.mul(&WeylOperator::from_terms(n, [(plain_u.as_slice(), plain_v.as_slice(), Rational::one())]));
        // d^a then x^b in the swapped block: write d^a x^b in normal order
        let zeros = vec![0u16; n];
        let d_part = WeylOperator::from_terms(n, [(zeros.as_slice(), swapped_v.as_slice(), Rational::one())]);
        let x_part = WeylOperator::from_terms(n, [(swapped_u.as_slice(), zeros.as_slice(), Rational::one())]);
        right = right.mul(&d_part).mul(&x_part);
        acc = acc.add(&left.mul(&right));
    }
    acc
}

/// Action of an operator on a rational function in the same variables.
pub fn apply(p: &WeylOperator, phi: &RationalFunction) -> Result<RationalFunction> {
    if phi.nvars() != p.n {
        return Err(Error::ContextMismatch);
    }
    let n = p.n;
    let g = phi.denominator();
    let r = RationalFunction::radical(g);
    let k = p.terms().map(|(_, v, _)| v.iter().map(|&e| e as u32).sum::<u32>()).max().unwrap_or(0);
    // d^v (f/g) = N_v / (g r^|v|) with r the squarefree part of g
    let ctx = DerivativeContext {
        r: r.clone(),
        dr: (0..n).map(|i| r.derivative(i)).collect(),
        a: (0..n)
            .map(|i| crate::algebra::gcd::div_exact(&r.mul(&g.derivative(i)), g).expect("radical clears log-derivative"))
            .collect(),
    };
    let mut cache: HashMap<Vec<u16>, Polynomial> = HashMap::new();
    cache.insert(vec![0; n], phi.numerator().clone());
    let mut acc = Polynomial::zero(n);
    for (u, v, c) in p.terms() {
        let nv = ctx.numerator(&mut cache, v);
        let deg = v.iter().map(|&e| e as u32).sum::<u32>();
        let xu = Polynomial::monomial(Monomial::from_exps(u), c.clone());
        acc = acc.add(&nv.mul(&xu).mul(&r.pow(k - deg)));
    }
    RationalFunction::reduce_with_radical(acc, g.mul(&r.pow(k)), &r)
}

struct DerivativeContext {
    r: Polynomial,
    dr: Vec<Polynomial>,
    /// `r · d_i g / g`.
    a: Vec<Polynomial>,
}

impl DerivativeContext {
    fn numerator(&self, cache: &mut HashMap<Vec<u16>, Polynomial>, v: &[u16]) -> Polynomial {
        if let Some(x) = cache.get(v) {
            return x.clone();
        }
        let i = v.iter().position(|&e| e > 0).unwrap();
        let mut w = v.to_vec();
        w[i] -= 1;
        let prev = self.numerator(cache, &w);
        let k = Rational::from_integer(w.iter().map(|&e| e as i64).sum::<i64>().into());
        let factor = self.a[i].add(&self.dr[i].scale(&k));
        let x = self.r.mul(&prev.derivative(i)).sub(&prev.mul(&factor));
        cache.insert(v.to_vec(), x.clone());
        x
    }
}

fn term_weight(u: &[u16], v: &[u16], w: &[i64]) -> i64 {
    u.iter().zip(v).zip(w).map(|((&a, &b), &wi)| wi * (b as i64 - a as i64)).sum()
}

/// `(-w,w)`-order: the largest `-w·u + w·v` over the terms.
pub fn w_order(p: &WeylOperator, w: &[i64]) -> Result<i64> {
    if w.len() != p.n {
        return Err(Error::Arity { expected: p.n, found: w.len() });
    }
    p.terms().map(|(u, v, _)| term_weight(u, v, w)).max().ok_or(Error::ZeroOperator)
}

/// Sum of the terms attaining the `(-w,w)`-order; zero for zero.
pub fn initial_form(p: &WeylOperator, w: &[i64]) -> Result<WeylOperator> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    let top = w_order(p, w)?;
    let terms = p.poly.terms().iter().filter(|(m, _)| {
        let (u, v) = m.exps().split_at(p.n);
        term_weight(u, v, w) == top
    });
    Ok(WeylOperator { n: p.n, poly: Polynomial::from_terms(2 * p.n, terms.cloned()) })
}

/// Element of the homogenized Weyl algebra: exponents `[x.., d.., h]`
/// with `d_i x_i = x_i d_i + h^2` and `h` central.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogenizedOperator {
    n: usize,
    poly: Polynomial,
}

impl HomogenizedOperator {
    /// Pads every term with `h` up to the top total degree in `(x, d)`.
    pub fn homogenize(p: &WeylOperator) -> Self {
        let n = p.n;
        let top = p.poly.total_degree().unwrap_or(0);
        let terms = p.poly.terms().iter().map(|(m, c)| {
            let mut e = m.exps().to_vec();
            e.push((top - m.degree()) as u16);
            (Monomial::from_exps(&e), c.clone())
        });
        HomogenizedOperator { n, poly: Polynomial::from_terms(2 * n + 1, terms) }
    }

    pub(crate) fn from_polynomial(n: usize, poly: Polynomial) -> Self {
        HomogenizedOperator { n, poly }
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.poly
    }

    /// Set `h = 1`.
    pub fn dehomogenize(&self) -> WeylOperator {
        let n = self.n;
        let terms = self.poly.terms().iter().map(|(m, c)| (Monomial::from_exps(&m.exps()[..2 * n]), c.clone()));
        WeylOperator { n, poly: Polynomial::from_terms(2 * n, terms) }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.poly.terms().iter().map(|(m, _)| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn defining_relation() {
        let x = WeylOperator::x(1, 0);
        let d = WeylOperator::d(1, 0);
        let p = d.mul(&x);
        assert_eq!(p, x.mul(&d).add(&WeylOperator::one(1)));
        assert_eq!(d.commutator(&x), WeylOperator::one(1));
        let x2 = WeylOperator::x(2, 1);
        let x1 = WeylOperator::x(2, 0);
        assert_eq!(x1.mul(&x2), x2.mul(&x1));
    }

    #[test]
    fn second_order_product() {
        let x = WeylOperator::x(1, 0);
        let d = WeylOperator::d(1, 0);
        let p = d.pow(2).mul(&x.pow(2));
        assert_eq!(p.display(&names(&["x"])).to_string(), "x^2*dx^2 + 4*x*dx + 2");
        // oracle: act on x^k
        for k in 0..=4u16 {
            let f = RationalFunction::from_poly(Polynomial::monomial(Monomial::from_exps(&[k]), int(1)));
            let lhs = apply(&p, &f).unwrap();
            let rhs = apply(&d.pow(2), &apply(&x.pow(2), &f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fourier_basics() {
        let n = 3;
        let x1 = WeylOperator::x(n, 0);
        assert_eq!(fourier(&x1, 2), WeylOperator::d(n, 0).neg());
        assert_eq!(fourier(&WeylOperator::d(n, 0), 2), x1);
        assert_eq!(fourier(&WeylOperator::x(n, 2), 2), WeylOperator::x(n, 2));
        let p = x1.mul(&WeylOperator::d(n, 1)).add(&WeylOperator::x(n, 2));
        assert_eq!(fourier_inverse(&fourier(&p, 2), 2), p);
        // x d -> -d x = -x d - 1
        let xd = x1.mul(&WeylOperator::d(n, 0));
        assert_eq!(fourier(&xd, 2), xd.neg().sub(&WeylOperator::one(n)));
    }

    #[test]
    fn action_on_reciprocal() {
        let x = Polynomial::var(1, 0);
        let phi = RationalFunction::reciprocal_of(x.clone()).unwrap();
        let d = WeylOperator::d(1, 0);
        let r = apply(&d, &phi).unwrap();
        assert_eq!(r, RationalFunction::new(Polynomial::one(1).neg(), x.mul(&x)).unwrap());
        let euler = WeylOperator::x(1, 0).mul(&d).add(&WeylOperator::one(1));
        assert!(apply(&euler, &phi).unwrap().is_zero());
    }

    #[test]
    fn weights_and_initial_forms() {
        let t = WeylOperator::x(1, 0);
        let dt = WeylOperator::d(1, 0);
        let p = t.mul(&dt).add(&WeylOperator::one(1));
        assert_eq!(w_order(&p, &[1]).unwrap(), 0);
        assert_eq!(initial_form(&p, &[1]).unwrap(), p);
        assert_eq!(w_order(&dt, &[1]).unwrap(), 1);
        assert_eq!(w_order(&t, &[1]).unwrap(), -1);
        assert_eq!(w_order(&WeylOperator::zero(1), &[1]), Err(Error::ZeroOperator));
        assert!(initial_form(&WeylOperator::zero(1), &[1]).unwrap().is_zero());
        let q = dt.add(&t);
        assert_eq!(initial_form(&q, &[1]).unwrap(), dt);
    }

    #[test]
    fn homogenization_roundtrip() {
        let x = WeylOperator::x(2, 0);
        let d = WeylOperator::d(2, 1);
        let p = x.mul(&d).mul(&d).add(&x).add(&WeylOperator::constant(2, int(3)));
        let h = HomogenizedOperator::homogenize(&p);
        assert!(h.is_homogeneous());
        assert_eq!(h.dehomogenize(), p);
    }
}
