//! Approximate annihilating ideals by undetermined coefficients.
//!
//! For `P = Σ a_α d^α` with `|α| ≤ i`, the condition `P • f/g = 0` is
//! linear in the unknown polynomials `a_α`: after clearing the common
//! denominator `g^(i+1)` it reads `Σ a_α c_α = 0`, so the admissible
//! coefficient tuples are exactly the syzygies of the `c_α`.

use crate::algebra::{Polynomial, RationalFunction};
use crate::error::Result;
use crate::groebner::{syzygy, GeneratorSet, ModuleElement, SetKind};
use crate::weyl::WeylOperator;

/// The cleared linear condition for operators of order at most `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnsatzTemplate {
    pub order: u32,
    /// Multi-indices `α`, highest total order first, then lexicographically descending.
    pub monomials: Vec<Vec<u16>>,
    /// `c_α = g^(i+1) · (d^α • f/g)`.
    pub coefficients: Vec<Polynomial>,
}

/// All `α ∈ N^n` with `|α| ≤ i` in ansatz order.
fn multi_indices(n: usize, i: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for deg in (0..=i).rev() {
        let mut level = Vec::new();
        fill(n, deg as u16, &mut vec![0; n], 0, &mut level);
        out.extend(level);
    }
    out
}

// lexicographically descending enumeration of exponents summing to `left`
fn fill(n: usize, left: u16, cur: &mut Vec<u16>, k: usize, out: &mut Vec<Vec<u16>>) {
    if k == n - 1 {
        cur[k] = left;
        out.push(cur.clone());
        cur[k] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[k] = e;
        fill(n, left - e, cur, k + 1, out);
    }
    cur[k] = 0;
}

pub fn build_ansatz(phi: &RationalFunction, order: u32) -> AnsatzTemplate {
    let n = phi.nvars();
    let f = phi.numerator();
    let g = phi.denominator();
    let monomials = if n == 0 { vec![vec![]] } else { multi_indices(n, order) };
    let dg: Vec<Polynomial> = (0..n).map(|i| g.derivative(i)).collect();
    // d^α (f/g) = N_α / g^(|α|+1), built by one derivative at a time
    let mut numerators: std::collections::HashMap<Vec<u16>, Polynomial> = std::collections::HashMap::new();
    numerators.insert(vec![0; n], f.clone());
    let mut by_degree: Vec<Vec<u16>> = monomials.clone();
    by_degree.sort_by_key(|a| a.iter().map(|&x| x as u32).sum::<u32>());
    for a in &by_degree {
        if numerators.contains_key(a) {
            continue;
        }
        let i = a.iter().position(|&e| e > 0).unwrap();
        let mut b = a.clone();
        b[i] -= 1;
        let k = b.iter().map(|&x| x as u32).sum::<u32>() + 1;
        let nb = &numerators[&b];
        let k = crate::algebra::int(k as i64);
        let na = g.mul(&nb.derivative(i)).sub(&nb.mul(&dg[i]).scale(&k));
        numerators.insert(a.clone(), na);
    }
    let coefficients = monomials
        .iter()
        .map(|a| {
            let deg = a.iter().map(|&x| x as u32).sum::<u32>();
            numerators[a].mul(&g.pow(order - deg))
        })
        .collect();
    AnsatzTemplate { order, monomials, coefficients }
}

impl AnsatzTemplate {
    /// The operator `Σ a_α d^α` for a coefficient tuple.
    pub fn operator(&self, a: &ModuleElement) -> WeylOperator {
        let n = self.coefficients.first().map(|c| c.nvars()).unwrap_or(0);
        let mut p = WeylOperator::zero(n);
        for (alpha, coef) in self.monomials.iter().zip(&a.entries) {
            if coef.is_zero() {
                continue;
            }
            p = p.add(&WeylOperator::from_coefficient(coef).mul(&WeylOperator::d_monomial(n, alpha)));
        }
        p
    }
}

/// Generators of `Ann^(i)(f/g)`: the syzygies of the ansatz read as operators.
pub fn approx_ann(phi: &RationalFunction, order: u32) -> Result<GeneratorSet<WeylOperator>> {
    if order == 0 {
        return Ok(GeneratorSet::new(SetKind::LeftIdeal, Vec::new()));
    }
    let t = build_ansatz(phi, order);
    let syz = syzygy(&t.coefficients)?;
    let mut ops: Vec<WeylOperator> = syz
        .iter()
        .map(|a| t.operator(a).normalized())
        .filter(|p| !p.is_zero())
        .collect();
    ops.sort_by(|a, b| crate::algebra::grevlex_cmp(lead(a), lead(b)));
    ops.dedup();
    Ok(GeneratorSet::new(SetKind::LeftIdeal, ops))
}

fn lead(p: &WeylOperator) -> &[u16] {
    p.as_polynomial().leading().unwrap().0.exps()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Monomial};
    use crate::weyl::{apply, weyl_ideals_equal};

    fn recip(g: Polynomial) -> RationalFunction {
        RationalFunction::reciprocal_of(g).unwrap()
    }

    #[test]
    fn one_over_x() {
        let x = Polynomial::var(1, 0);
        let t = build_ansatz(&recip(x.clone()), 1);
        assert_eq!(t.monomials, vec![vec![1], vec![0]]);
        assert_eq!(t.coefficients, vec![Polynomial::one(1).neg(), x.clone()]);
        let ann = approx_ann(&recip(x), 1).unwrap();
        let e = WeylOperator::x(1, 0).mul(&WeylOperator::d(1, 0)).add(&WeylOperator::one(1));
        assert!(weyl_ideals_equal(&ann.elements, &[e]).unwrap());
    }

    #[test]
    fn polynomial_function() {
        let x = Polynomial::var(1, 0);
        let t = build_ansatz(&RationalFunction::from_poly(x.clone()), 1);
        assert_eq!(t.coefficients, vec![Polynomial::one(1), x]);
    }

    #[test]
    fn ansatz_order_two_indices() {
        assert_eq!(
            multi_indices(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2], vec![1, 0], vec![0, 1], vec![0, 0]]
        );
    }

    #[test]
    fn generators_annihilate() {
        let n = 2;
        let x = Polynomial::var(n, 0);
        let y = Polynomial::var(n, 1);
        let f = x.pow(3).sub(&y.pow(2));
        let phi = RationalFunction::new(Polynomial::monomial(Monomial::from_exps(&[0, 1]), int(2)), f).unwrap();
        for i in 1..=2 {
            let ann = approx_ann(&phi, i).unwrap();
            assert!(!ann.is_empty());
            for p in ann.iter() {
                assert!(apply(p, &phi).unwrap().is_zero());
            }
        }
        assert!(approx_ann(&phi, 0).unwrap().is_empty());
    }
}
