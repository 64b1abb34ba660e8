//! Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::Rational;

/// Exact quotient `a / b`; `None` if `b` does not divide `a`.
pub fn div_exact(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    assert!(!b.is_zero(), "division by zero polynomial");
    let n = a.nvars();
    let (lm, lc) = b.leading().cloned().unwrap();
    let mut q = Vec::new();
    let mut r = a.clone();
    while let Some((m, c)) = r.leading().cloned() {
        let t = m.div(&lm)?;
        let coef = c / &lc;
        r = r.sub(&b.mul_monomial(&t, &coef));
        q.push((t, coef));
    }
    Some(Polynomial::from_terms(n, q))
}

fn coeffs_in(a: &Polynomial, v: usize) -> Vec<Polynomial> {
    let n = a.nvars();
    let d = a.degree_in(v).unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
    for (m, c) in a.terms() {
        let mut e = m.clone();
        let k = e.0[v] as usize;
        e.0[v] = 0;
        buckets[k].push((e, c.clone()));
    }
    buckets.into_iter().map(|t| Polynomial::from_terms(n, t)).collect()
}

fn main_var(p: &Polynomial) -> Option<usize> {
    (0..p.nvars()).rev().find(|&i| p.degree_in(i).unwrap_or(0) > 0)
}

fn content_in(a: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero(a.nvars());
    for c in coeffs_in(a, v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Polynomial::one(a.nvars());
        }
    }
    g
}

fn prem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(v).unwrap_or(0);
    let lb = coeffs_in(b, v).pop().unwrap();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = coeffs_in(&r, v).pop().unwrap();
        let shift = Monomial::var(n, v, dr - db);
        let t = lr.mul(b).mul_monomial(&shift, &Rational::from_integer(1.into()));
        r = lb.mul(&r).sub(&t);
    }
    r
}

fn primitive_in(a: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(a, v);
    div_exact(a, &c).expect("content divides").normalized()
}

/// Greatest common divisor, normalized to integer content-free form with
/// positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    let va = main_var(a).unwrap();
    let vb = main_var(b).unwrap();
    let v = va.max(vb);
    if a.degree_in(v).unwrap_or(0) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if b.degree_in(v).unwrap_or(0) == 0 {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = div_exact(a, &ca).unwrap().normalized();
    let mut q = div_exact(b, &cb).unwrap().normalized();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break q;
        }
        if r.degree_in(v).unwrap_or(0) == 0 {
            break Polynomial::one(n);
        }
        p = q;
        q = primitive_in(&r, v);
    };
    let g = if g.is_constant() { g } else { primitive_in(&g, v) };
    c.mul(&g).normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn gcd_univariate() {
        let a = x(1, 0).pow(2).sub(&Polynomial::one(1));
        let b = x(1, 0).sub(&Polynomial::one(1)).pow(2);
        assert_eq!(gcd(&a, &b), x(1, 0).sub(&Polynomial::one(1)));
    }

    #[test]
    fn gcd_multivariate() {
        let n = 3;
        let f = x(n, 0).mul(&x(n, 1)).add(&x(n, 2)).add(&Polynomial::one(n));
        let g1 = x(n, 0).sub(&x(n, 2).pow(2));
        let g2 = x(n, 1).add(&x(n, 0).pow(3));
        let a = f.mul(&g1).scale(&Rational::from_integer(6.into()));
        let b = f.mul(&g2).mul(&f);
        assert_eq!(gcd(&a, &b), f.normalized());
        assert!(gcd(&g1, &g2).is_constant());
        assert_eq!(gcd(&Polynomial::zero(n), &a), a.normalized());
    }

    #[test]
    fn exact_division() {
        let n = 2;
        let a = x(n, 0).add(&x(n, 1));
        let b = x(n, 0).sub(&x(n, 1));
        assert_eq!(div_exact(&a.mul(&b), &b), Some(a.clone()));
        assert_eq!(div_exact(&a, &b), None);
    }
}
