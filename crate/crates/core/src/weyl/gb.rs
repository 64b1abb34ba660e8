//! Gröbner bases of left ideals and left submodules in the Weyl algebra.
//!
//! Term orders that are well-orders run directly on `D`. Weight orders such
//! as `(-w,w)` are not; those go through the homogenized algebra with the
//! order `[total degree, rows of the requested order]` and are
//! dehomogenized afterwards.

use crate::algebra::{KeyOrder, ModuleOrder, Monomial, OrderSpec, Polynomial, PositionRule, Rational, Row};
use crate::error::{Error, Result};
use crate::groebner::engine::{Algebra, GbOptions, Poly, Ring};
use crate::groebner::{common_denominator, from_engine, to_engine, GeneratorSet, SetKind};

use super::{HomogenizedOperator, WeylOperator};

/// The `(-w,w)` weight order refined by grevlex on `(x, d)` jointly.
pub fn weyl_order(w: &[i64]) -> OrderSpec {
    let mut weight: Vec<i64> = w.iter().map(|x| -x).collect();
    weight.extend_from_slice(w);
    OrderSpec::weighted(weight, OrderSpec::Grevlex)
}

fn context(gens: &[WeylOperator]) -> Result<usize> {
    let n = gens.first().map(|g| g.nvars()).unwrap_or(0);
    if gens.iter().any(|g| g.nvars() != n) {
        return Err(Error::ContextMismatch);
    }
    Ok(n)
}

/// Whether `x^(u-k) d^(v-k)` always sorts below `x^u d^v`, which the
/// product formula needs for leading terms to multiply.
fn check_compatible(order: &OrderSpec, n: usize) -> Result<()> {
    let rows = order.rows(2 * n);
    for i in 0..n {
        let mut ok = false;
        for r in &rows {
            match r {
                Row::Weight(w) => {
                    let s = w[i] + w[n + i];
                    if s > 0 {
                        ok = true;
                        break;
                    }
                    if s < 0 {
                        break;
                    }
                }
                Row::Lex(idx) => {
                    ok = idx.contains(&i) || idx.contains(&(n + i));
                    if ok {
                        break;
                    }
                }
                Row::RevLex(idx) => {
                    if idx.contains(&i) || idx.contains(&(n + i)) {
                        break;
                    }
                }
            }
        }
        if !ok {
            return Err(Error::Invalid("order is not compatible with the Weyl algebra".into()));
        }
    }
    Ok(())
}

fn op_to_engine(ring: &Ring, p: &WeylOperator) -> Poly {
    to_engine(ring, &[(0, p.as_polynomial())])
}

fn op_from_engine(p: &Poly, n: usize) -> WeylOperator {
    WeylOperator::from_normal_polynomial(n, from_engine(p, 2 * n, 1).pop().unwrap()).unwrap()
}

/// A Gröbner basis of a left ideal together with the engine state needed
/// to reduce against it.
pub struct WeylBasis {
    n: usize,
    order: OrderSpec,
    keys: KeyOrder,
    ring: Option<Ring>,
    polys: Vec<Poly>,
    elements: Vec<WeylOperator>,
}

impl WeylBasis {
    pub fn compute(gens: &[WeylOperator], order: &OrderSpec) -> Result<Self> {
        let n = context(gens)?;
        order.validate(2 * n)?;
        let keys = KeyOrder::from_spec(order, 2 * n);
        if order.is_well_order(2 * n) {
            let ring = Ring::new(Algebra::Weyl { n }, keys.clone());
            let input = gens.iter().map(|g| op_to_engine(&ring, g)).collect();
            let polys = ring.groebner(input, &GbOptions::default());
            let elements = polys.iter().map(|p| op_from_engine(p, n)).collect();
            return Ok(WeylBasis { n, order: order.clone(), keys, ring: Some(ring), polys, elements });
        }
        check_compatible(order, n)?;
        let width = 2 * n + 1;
        let mut rows = vec![Row::Weight(vec![1; width])];
        rows.extend(order.rows(2 * n).iter().map(|r| r.shifted(0, width)));
        let ring = Ring::new(Algebra::HomWeyl { n }, KeyOrder::new(rows, None));
        let input =
            gens.iter().map(|g| to_engine(&ring, &[(0, HomogenizedOperator::homogenize(g).as_polynomial())])).collect();
        let hom = ring.groebner(input, &GbOptions::default());
        let ops: Vec<WeylOperator> = hom
            .iter()
            .map(|p| HomogenizedOperator::from_polynomial(n, from_engine(p, width, 1).pop().unwrap()).dehomogenize())
            .collect();
        let elements = minimal(ops, &keys);
        Ok(WeylBasis { n, order: order.clone(), keys, ring: None, polys: Vec::new(), elements })
    }

    pub fn elements(&self) -> &[WeylOperator] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<WeylOperator> {
        self.elements
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    /// Leading exponent `[u, v]` of `p` under this basis' order.
    pub fn leading_exponent(&self, p: &WeylOperator) -> Option<Vec<u16>> {
        leading(p, &self.keys).map(|m| m.exps().to_vec())
    }

    fn well_ordered(&self) -> Result<&Ring> {
        self.ring.as_ref().ok_or(Error::NotWellOrder)
    }

    /// Exact normal form. Only for well-orders.
    pub fn normal_form(&self, p: &WeylOperator) -> Result<WeylOperator> {
        let ring = self.well_ordered()?;
        if p.nvars() != self.n {
            return Err(Error::ContextMismatch);
        }
        let den = common_denominator(std::iter::once(p.as_polynomial()));
        let (nf, num, sden) = ring.normal_form_scaled(op_to_engine(ring, p), &self.polys);
        Ok(op_from_engine(&nf, self.n).scale(&Rational::new(sden.to_big(), num.to_big() * den)))
    }

    /// Left-ideal membership. Only for well-orders.
    pub fn contains(&self, p: &WeylOperator) -> Result<bool> {
        let ring = self.well_ordered()?;
        if p.nvars() != self.n {
            return Err(Error::ContextMismatch);
        }
        Ok(ring.reduces_to_zero(&op_to_engine(ring, p), &self.polys))
    }
}

fn leading(p: &WeylOperator, keys: &KeyOrder) -> Option<Monomial> {
    p.as_polynomial().terms().iter().map(|(m, _)| m).max_by_key(|m| keys.mono_key(m.exps())).cloned()
}

/// Drop elements whose leading monomial is divisible by another's; normalize and sort.
fn minimal(ops: Vec<WeylOperator>, keys: &KeyOrder) -> Vec<WeylOperator> {
    let leads: Vec<Monomial> = ops.iter().map(|p| leading(p, keys).unwrap()).collect();
    let mut keep = vec![true; ops.len()];
    for i in 0..ops.len() {
        for j in 0..ops.len() {
            if i != j && keep[j] && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut out: Vec<(Monomial, WeylOperator)> = ops
        .into_iter()
        .zip(leads)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((p, m), _)| (m, p.normalized()))
        .collect();
    out.sort_by_key(|a| keys.mono_key(a.0.exps()));
    out.into_iter().map(|(_, p)| p).collect()
}

/// Gröbner basis of the left ideal generated by `gens` (`order` is on the
/// `2n` variables `[x.., d..]`).
pub fn gb_weyl(gens: &[WeylOperator], order: &OrderSpec) -> Result<GeneratorSet<WeylOperator>> {
    let b = WeylBasis::compute(gens, order)?;
    Ok(GeneratorSet::new(SetKind::LeftIdeal, b.into_elements()))
}

/// Gröbner basis for a well-order with left cofactors: `gb[i] = Σ_j cof[i][j] · gens[j]`.
pub fn gb_weyl_with_cofactors(
    gens: &[WeylOperator],
    order: &OrderSpec,
) -> Result<(Vec<WeylOperator>, Vec<Vec<WeylOperator>>)> {
    let n = context(gens)?;
    order.validate(2 * n)?;
    if !order.is_well_order(2 * n) {
        return Err(Error::NotWellOrder);
    }
    let k = gens.len();
    let rank: Vec<usize> = std::iter::once(k + 1).chain((0..k).map(|j| k - j)).collect();
    let mo = ModuleOrder { term: order.clone(), position: PositionRule::Pot(rank) };
    let ring = Ring::new(Algebra::Weyl { n }, KeyOrder::from_module(&mo, 2 * n));
    let one = Polynomial::one(2 * n);
    let input = gens
        .iter()
        .enumerate()
        .map(|(j, g)| to_engine(&ring, &[(0, g.as_polynomial()), (j as u32 + 1, &one)]))
        .collect();
    let opts = GbOptions { real_slots: Some(1), ..Default::default() };
    let gb = ring.groebner(input, &opts);
    let mut basis = Vec::new();
    let mut cofs = Vec::new();
    for p in &gb {
        let slots: Vec<WeylOperator> = from_engine(p, 2 * n, k + 1)
            .into_iter()
            .map(|q| WeylOperator::from_normal_polynomial(n, q).unwrap())
            .collect();
        basis.push(slots[0].clone());
        cofs.push(slots[1..].to_vec());
    }
    Ok((basis, cofs))
}

/// Normal form of `p` modulo a Gröbner basis `gb` (well-orders only).
pub fn weyl_normal_form(p: &WeylOperator, gb: &[WeylOperator], order: &OrderSpec) -> Result<WeylOperator> {
    let n = p.nvars();
    if gb.iter().any(|g| g.nvars() != n) {
        return Err(Error::ContextMismatch);
    }
    order.validate(2 * n)?;
    if !order.is_well_order(2 * n) {
        return Err(Error::NotWellOrder);
    }
    let ring = Ring::new(Algebra::Weyl { n }, KeyOrder::from_spec(order, 2 * n));
    let polys: Vec<Poly> = gb.iter().map(|g| op_to_engine(&ring, g)).collect();
    let den = common_denominator(std::iter::once(p.as_polynomial()));
    let (nf, num, sden) = ring.normal_form_scaled(op_to_engine(&ring, p), &polys);
    Ok(op_from_engine(&nf, n).scale(&Rational::new(sden.to_big(), num.to_big() * den)))
}

/// Whether `p` lies in the left ideal generated by `gens`.
pub fn weyl_ideal_contains(gens: &[WeylOperator], p: &WeylOperator) -> Result<bool> {
    let mut all = gens.to_vec();
    all.push(p.clone());
    context(&all)?;
    let b = WeylBasis::compute(gens, &OrderSpec::Grevlex)?;
    b.contains(p)
}

/// Left-ideal equality by comparing reduced grevlex Gröbner bases.
pub fn weyl_ideals_equal(a: &[WeylOperator], b: &[WeylOperator]) -> Result<bool> {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    context(&all)?;
    let ga = gb_weyl(a, &OrderSpec::Grevlex)?;
    let gb = gb_weyl(b, &OrderSpec::Grevlex)?;
    Ok(ga.elements == gb.elements)
}

/// Reduced Gröbner basis of a left submodule of `D^r` (well-ordered term part).
pub fn weyl_module_gb(gens: &[Vec<WeylOperator>], order: &ModuleOrder) -> Result<Vec<Vec<WeylOperator>>> {
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let r = gens[0].len();
    if let Some(g) = gens.iter().find(|g| g.len() != r) {
        return Err(Error::Arity { expected: r, found: g.len() });
    }
    let flat: Vec<WeylOperator> = gens.iter().flatten().cloned().collect();
    let n = context(&flat)?;
    let ranking = match &order.position {
        PositionRule::Pot(v) | PositionRule::Top(v) => v,
    };
    if ranking.len() != r {
        return Err(Error::Arity { expected: r, found: ranking.len() });
    }
    order.term.validate(2 * n)?;
    if !order.term.is_well_order(2 * n) {
        return Err(Error::NotWellOrder);
    }
    let ring = Ring::new(Algebra::Weyl { n }, KeyOrder::from_module(order, 2 * n));
    let input = gens
        .iter()
        .map(|g| {
            let entries: Vec<(u32, &Polynomial)> =
                g.iter().enumerate().map(|(i, p)| (i as u32, p.as_polynomial())).collect();
            to_engine(&ring, &entries)
        })
        .collect();
    let gb = ring.groebner(input, &GbOptions::default());
    Ok(gb
        .iter()
        .map(|p| {
            from_engine(p, 2 * n, r).into_iter().map(|q| WeylOperator::from_normal_polynomial(n, q).unwrap()).collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::initial_form;

    #[test]
    fn single_generators() {
        let d = WeylOperator::d(1, 0);
        let gb = gb_weyl(std::slice::from_ref(&d), &OrderSpec::Grevlex).unwrap();
        assert_eq!(gb.elements, vec![d.clone()]);
        let e = WeylOperator::x(1, 0).mul(&d).add(&WeylOperator::one(1));
        let gb = gb_weyl(std::slice::from_ref(&e), &OrderSpec::Grevlex).unwrap();
        assert_eq!(gb.elements, vec![e]);
    }

    #[test]
    fn weight_order_example() {
        // variables (t, x), w = (1, 0): {t + dx, x t + t dt}
        let n = 2;
        let t = WeylOperator::x(n, 0);
        let x = WeylOperator::x(n, 1);
        let dt = WeylOperator::d(n, 0);
        let dx = WeylOperator::d(n, 1);
        let g1 = t.add(&dx);
        let g2 = x.mul(&t).add(&t.mul(&dt));
        let w = [1, 0];
        let gb = gb_weyl(&[g1.clone(), g2.clone()], &weyl_order(&w)).unwrap();
        let inits: Vec<WeylOperator> = gb.iter().map(|g| initial_form(g, &w).unwrap()).collect();
        let init_basis = WeylBasis::compute(&inits, &OrderSpec::Grevlex).unwrap();
        assert!(init_basis.contains(&dx).unwrap());
        assert!(init_basis.contains(&t.mul(&dt)).unwrap());
        // the basis generates the same ideal
        assert!(weyl_ideals_equal(gb.elements.as_slice(), &[g1, g2]).unwrap());
    }

    #[test]
    fn cofactors() {
        let n = 2;
        let x = WeylOperator::x(n, 0);
        let y = WeylOperator::x(n, 1);
        let dx = WeylOperator::d(n, 0);
        let dy = WeylOperator::d(n, 1);
        let gens = vec![x.mul(&dx).sub(&y.mul(&dy)), dx.mul(&dy).sub(&WeylOperator::one(n))];
        let (gb, cof) = gb_weyl_with_cofactors(&gens, &OrderSpec::Grevlex).unwrap();
        for (g, c) in gb.iter().zip(&cof) {
            let mut s = WeylOperator::zero(n);
            for (cj, gj) in c.iter().zip(&gens) {
                s = s.add(&cj.mul(gj));
            }
            assert_eq!(&s, g);
        }
        let b = WeylBasis::compute(&gens, &OrderSpec::Grevlex).unwrap();
        for g in &gens {
            assert!(b.normal_form(g).unwrap().is_zero());
        }
    }
}
