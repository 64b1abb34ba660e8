//! Commutative Gröbner bases, submodule bases and syzygies.

pub(crate) mod engine;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::algebra::{Exps, Int, KeyOrder, ModuleOrder, Monomial, OrderSpec, Polynomial, PositionRule, Rational};
use crate::error::{Error, Result};
use engine::{Algebra, GbOptions, Poly, Ring, Term};

/// What a generator list presents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    Ideal,
    LeftIdeal,
    Submodule,
}

/// Ordered list of generators. The listing order is kept for
/// reproducibility; it is not part of the ideal's identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet<T> {
    pub kind: SetKind,
    pub elements: Vec<T>,
}

impl<T> GeneratorSet<T> {
    pub fn new(kind: SetKind, elements: Vec<T>) -> Self {
        GeneratorSet { kind, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elements.iter()
    }
}

impl<T> IntoIterator for GeneratorSet<T> {
    type Item = T;
    type IntoIter = std::vec::IntoIter<T>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.into_iter()
    }
}

/// Element of a free module `R^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    pub entries: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn new(entries: Vec<Polynomial>) -> Self {
        ModuleElement { entries }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        ModuleElement { entries: vec![Polynomial::zero(nvars); rank] }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn nvars(&self) -> usize {
        self.entries.first().map(|p| p.nvars()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Slots with a nonzero entry.
    pub fn support(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.entries[i].is_zero()).collect()
    }

    /// `Σ aᵢ gᵢ`.
    pub fn dot(&self, gens: &[Polynomial]) -> Polynomial {
        let n = gens.first().map(|g| g.nvars()).unwrap_or(self.nvars());
        self.entries.iter().zip(gens).fold(Polynomial::zero(n), |acc, (a, g)| acc.add(&a.mul(g)))
    }
}

/// Common integer scaling of a family of rational polynomials.
pub(crate) fn common_denominator<'a>(ps: impl Iterator<Item = &'a Polynomial>) -> BigInt {
    let mut den = BigInt::one();
    for p in ps {
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
    }
    den
}

/// Slot-tagged polynomials into one engine element, cleared to integers.
pub(crate) fn to_engine(ring: &Ring, entries: &[(u32, &Polynomial)]) -> Poly {
    let den = common_denominator(entries.iter().map(|(_, p)| *p));
    let mut terms = Vec::new();
    for (pos, p) in entries {
        for (m, c) in p.terms() {
            let v = c.numer() * (&den / c.denom());
            terms.push(ring.term(*pos, Exps::from_slice(m.exps()), Int::from_big(v)));
        }
    }
    ring.poly(terms)
}

/// Split an engine element back into per-slot polynomials.
pub(crate) fn from_engine(p: &Poly, nvars: usize, rank: usize) -> Vec<Polynomial> {
    let mut slots: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
    for Term { exp, pos, coef, .. } in &p.terms {
        slots[*pos as usize].push((Monomial(exp.clone()), Rational::from_integer(coef.to_big())));
    }
    slots.into_iter().map(|t| Polynomial::from_terms(nvars, t)).collect()
}

fn check_ring(gens: &[Polynomial], order: &OrderSpec) -> Result<usize> {
    let n = gens.first().map(|g| g.nvars()).unwrap_or(0);
    if gens.iter().any(|g| g.nvars() != n) {
        return Err(Error::ContextMismatch);
    }
    order.validate(n)?;
    if !order.is_well_order(n) {
        return Err(Error::NotWellOrder);
    }
    Ok(n)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: &OrderSpec) -> Result<GeneratorSet<Polynomial>> {
    let n = check_ring(gens, order)?;
    let ring = Ring::new(Algebra::Commutative, KeyOrder::from_spec(order, n));
    let input = gens.iter().map(|g| to_engine(&ring, &[(0, g)])).collect();
    let opts = GbOptions { product_criterion: true, ..Default::default() };
    let gb = ring.groebner(input, &opts);
    Ok(GeneratorSet::new(
        SetKind::Ideal,
        gb.iter().map(|p| from_engine(p, n, 1).pop().unwrap()).collect(),
    ))
}

/// Reduced Gröbner basis together with cofactors: `gb[i] = Σⱼ cof[i][j] · gens[j]`.
pub fn buchberger_with_cofactors(
    gens: &[Polynomial],
    order: &OrderSpec,
) -> Result<(Vec<Polynomial>, Vec<Vec<Polynomial>>)> {
    let n = check_ring(gens, order)?;
    let k = gens.len();
    let rank: Vec<usize> = std::iter::once(k + 1).chain((0..k).map(|j| k - j)).collect();
    let mo = ModuleOrder { term: order.clone(), position: PositionRule::Pot(rank) };
    let ring = Ring::new(Algebra::Commutative, KeyOrder::from_module(&mo, n));
    let one = Polynomial::one(n);
    let input = gens
        .iter()
        .enumerate()
        .map(|(j, g)| to_engine(&ring, &[(0, g), (j as u32 + 1, &one)]))
        .collect();
    let opts = GbOptions { real_slots: Some(1), product_criterion: true, ..Default::default() };
    let gb = ring.groebner(input, &opts);
    let mut basis = Vec::new();
    let mut cofs = Vec::new();
    for p in &gb {
        let mut slots = from_engine(p, n, k + 1);
        let cof = slots.split_off(1);
        basis.push(slots.pop().unwrap());
        cofs.push(cof);
    }
    Ok((basis, cofs))
}

/// Generators (a reduced Gröbner basis, grevlex, position-over-term) of the
/// syzygy module `{ a : Σ aᵢ gᵢ = 0 }`.
pub fn syzygy(gens: &[Polynomial]) -> Result<GeneratorSet<ModuleElement>> {
    syzygy_with_order(gens, &OrderSpec::Grevlex)
}

pub fn syzygy_with_order(gens: &[Polynomial], order: &OrderSpec) -> Result<GeneratorSet<ModuleElement>> {
    if gens.is_empty() {
        return Ok(GeneratorSet::new(SetKind::Submodule, Vec::new()));
    }
    let n = check_ring(gens, order)?;
    let k = gens.len();
    let rank: Vec<usize> = std::iter::once(k + 1).chain((0..k).map(|j| k - j)).collect();
    let mo = ModuleOrder { term: order.clone(), position: PositionRule::Pot(rank) };
    let ring = Ring::new(Algebra::Commutative, KeyOrder::from_module(&mo, n));
    let one = Polynomial::one(n);
    let input = gens
        .iter()
        .enumerate()
        .map(|(j, g)| to_engine(&ring, &[(0, g), (j as u32 + 1, &one)]))
        .collect();
    let opts = GbOptions { real_slots: Some(1), keep_syzygies: true, ..Default::default() };
    let gb = ring.groebner(input, &opts);
    let syz = gb
        .iter()
        .filter(|p| p.lead().pos >= 1)
        .map(|p| {
            let mut slots = from_engine(p, n, k + 1);
            ModuleElement::new(slots.split_off(1))
        })
        .collect();
    Ok(GeneratorSet::new(SetKind::Submodule, syz))
}

fn module_ring(gens: &[ModuleElement], order: &ModuleOrder) -> Result<(Ring, usize, usize)> {
    let r = gens.first().map(|g| g.rank()).unwrap_or(0);
    let n = gens.iter().flat_map(|g| g.entries.first()).map(|p| p.nvars()).next().unwrap_or(0);
    if gens.iter().any(|g| g.rank() != r) {
        return Err(Error::Arity { expected: r, found: gens.iter().map(|g| g.rank()).find(|&x| x != r).unwrap() });
    }
    if gens.iter().flat_map(|g| g.entries.iter()).any(|p| p.nvars() != n) {
        return Err(Error::ContextMismatch);
    }
    let ranking = match &order.position {
        PositionRule::Pot(v) | PositionRule::Top(v) => v,
    };
    if ranking.len() != r {
        return Err(Error::Arity { expected: r, found: ranking.len() });
    }
    order.term.validate(n)?;
    if !order.term.is_well_order(n) {
        return Err(Error::NotWellOrder);
    }
    Ok((Ring::new(Algebra::Commutative, KeyOrder::from_module(order, n)), n, r))
}

fn elem_to_engine(ring: &Ring, g: &ModuleElement) -> Poly {
    let entries: Vec<(u32, &Polynomial)> = g.entries.iter().enumerate().map(|(i, p)| (i as u32, p)).collect();
    to_engine(ring, &entries)
}

/// Reduced Gröbner basis of a submodule of `R^r`.
pub fn module_gb(gens: &[ModuleElement], order: &ModuleOrder) -> Result<GeneratorSet<ModuleElement>> {
    if gens.is_empty() {
        return Ok(GeneratorSet::new(SetKind::Submodule, Vec::new()));
    }
    let (ring, n, r) = module_ring(gens, order)?;
    let input = gens.iter().map(|g| elem_to_engine(&ring, g)).collect();
    let gb = ring.groebner(input, &GbOptions::default());
    Ok(GeneratorSet::new(
        SetKind::Submodule,
        gb.iter().map(|p| ModuleElement::new(from_engine(p, n, r))).collect(),
    ))
}

/// Whether `v` lies in the submodule whose Gröbner basis is `gb`.
pub fn module_contains(gb: &[ModuleElement], v: &ModuleElement, order: &ModuleOrder) -> Result<bool> {
    if v.is_zero() {
        return Ok(true);
    }
    let mut all = gb.to_vec();
    all.push(v.clone());
    let (ring, _, _) = module_ring(&all, order)?;
    let basis: Vec<Poly> = gb.iter().map(|g| elem_to_engine(&ring, g)).collect();
    Ok(ring.reduces_to_zero(&elem_to_engine(&ring, v), &basis))
}

/// Full normal form modulo a Gröbner basis.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial], order: &OrderSpec) -> Result<Polynomial> {
    let mut all = gb.to_vec();
    all.push(f.clone());
    let n = check_ring(&all, order)?;
    let ring = Ring::new(Algebra::Commutative, KeyOrder::from_spec(order, n));
    let basis: Vec<Poly> = gb.iter().map(|g| to_engine(&ring, &[(0, g)])).collect();
    let den = common_denominator(std::iter::once(f));
    let (nf, num, sden) = ring.normal_form_scaled(to_engine(&ring, &[(0, f)]), &basis);
    let p = from_engine(&nf, n, 1).pop().unwrap();
    Ok(p.scale(&Rational::new(sden.to_big(), num.to_big() * den)))
}

/// Ideal equality by mutual reduction against reduced Gröbner bases.
pub fn ideals_equal(a: &[Polynomial], b: &[Polynomial], order: &OrderSpec) -> Result<bool> {
    let ga = buchberger(a, order)?;
    let gb = buchberger(b, order)?;
    Ok(ga.elements == gb.elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn lex_example() {
        let x = var(1, 0);
        let one = Polynomial::one(1);
        let f = x.pow(2).sub(&one);
        let g = x.pow(3).sub(&x);
        let gb = buchberger(&[f.clone(), g], &OrderSpec::Lex).unwrap();
        assert_eq!(gb.elements, vec![f]);
    }

    #[test]
    fn trivial_cases() {
        let gb = buchberger(&[var(2, 0), var(2, 1)], &OrderSpec::Grevlex).unwrap();
        assert_eq!(gb.len(), 2);
        let gb = buchberger(&[Polynomial::zero(2)], &OrderSpec::Grevlex).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn koszul_syzygy() {
        let syz = syzygy(&[var(2, 0), var(2, 1)]).unwrap();
        assert_eq!(syz.len(), 1);
        let s = &syz.elements[0];
        assert!(s.dot(&[var(2, 0), var(2, 1)]).is_zero());
        // (y, -x) up to sign
        assert_eq!(s.entries[0].len(), 1);
        assert_eq!(s.entries[0].leading().unwrap().0, Monomial::var(2, 1, 1));
    }

    #[test]
    fn unit_and_empty_syzygy() {
        assert!(syzygy(&[Polynomial::one(2)]).unwrap().is_empty());
        assert!(syzygy(&[]).unwrap().is_empty());
    }

    #[test]
    fn cofactors_recombine() {
        let n = 2;
        let (x, y) = (var(n, 0), var(n, 1));
        let gens = vec![x.pow(2).mul(&y).sub(&Polynomial::one(n)), x.mul(&y.pow(2)).sub(&x)];
        let (gb, cof) = buchberger_with_cofactors(&gens, &OrderSpec::Grevlex).unwrap();
        let plain = buchberger(&gens, &OrderSpec::Grevlex).unwrap();
        assert_eq!(gb.len(), plain.len());
        for (g, c) in gb.iter().zip(&cof) {
            assert_eq!(&ModuleElement::new(c.clone()).dot(&gens), g);
        }
    }

    #[test]
    fn module_pot_elimination() {
        let n = 2;
        let (x, y, one) = (var(n, 0), var(n, 1), Polynomial::one(n));
        let gens = vec![ModuleElement::new(vec![x.clone(), one.clone()]), ModuleElement::new(vec![y.clone(), one])];
        // slot 2 ranked above slot 1: the x⁰-style slot is eliminated
        let order = ModuleOrder { term: OrderSpec::Grevlex, position: PositionRule::Pot(vec![0, 1]) };
        let gb = module_gb(&gens, &order).unwrap();
        let target = ModuleElement::new(vec![x.sub(&y), Polynomial::zero(n)]);
        assert!(gb.iter().any(|g| g.support() == vec![0] && (g == &target || g.entries[0] == y.sub(&x))));
        // with slot 1 on top, (x - y, 0) is still a member
        let order2 = ModuleOrder { term: OrderSpec::Grevlex, position: PositionRule::Pot(vec![1, 0]) };
        let gb2 = module_gb(&gens, &order2).unwrap();
        assert!(module_contains(&gb2.elements, &target, &order2).unwrap());
        assert!(module_gb(&[], &order2).unwrap().is_empty());
    }
}
