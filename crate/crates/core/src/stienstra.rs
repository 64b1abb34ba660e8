//! Rank lower bound from a unimodular triangulation.
//!
//! `R = Q[c_1..c_l] / J` where `J` holds the linear forms given by the rows of
//! `A` and the monomials of the minimal non-faces. The bound is the rank of
//! multiplication by the product of the core variables on `R`.

use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;

use crate::algebra::{grevlex_cmp, int, Monomial, OrderSpec, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::fano::Triangulation;
use crate::groebner::{buchberger, normal_form};
use crate::invariants::AMatrix;

/// Inclusion-minimal index sets in `0..l` that are not faces.
pub fn minimal_nonfaces(t: &Triangulation, l: usize) -> Vec<Vec<usize>> {
    assert!(l < 32);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut masks: Vec<u32> = (1..(1u32 << l)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found: Vec<u32> = Vec::new();
    for m in masks {
        if found.iter().any(|f| f & m == *f) {
            continue;
        }
        let s: Vec<usize> = (0..l).filter(|&i| m >> i & 1 == 1).collect();
        if !t.is_face(&s) {
            found.push(m);
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Intersection of the maximal simplices and the product of its variables
/// (over `l` variables). An empty core gives the constant 1.
pub fn core(t: &Triangulation, l: usize) -> (Vec<usize>, Polynomial) {
    let mut it = t.maximal().iter();
    let mut set: BTreeSet<usize> = it.next().map(|s| s.iter().copied().collect()).unwrap_or_default();
    for s in it {
        set = set.intersection(&s.iter().copied().collect()).copied().collect();
    }
    let mut e = vec![0u16; l];
    for &i in &set {
        e[i] = 1;
    }
    (set.into_iter().collect(), Polynomial::monomial(Monomial::from_exps(&e), int(1)))
}

/// The bound with the data it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBound {
    pub r: u64,
    pub core: Vec<usize>,
    /// Set when the core is empty, so that `c_core = 1`.
    pub empty_core: bool,
    pub nonfaces: Vec<Vec<usize>>,
    /// Dimension of the quotient ring over Q.
    pub quotient_dim: usize,
}

pub fn ring_ideal(a: &AMatrix, t: &Triangulation) -> Vec<Polynomial> {
    let l = a.ncols();
    let mut gens: Vec<Polynomial> = a
        .rows()
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                l,
                row.iter().enumerate().map(|(j, &c)| (Monomial::var(l, j, 1), int(c))),
            )
        })
        .collect();
    for s in minimal_nonfaces(t, l) {
        let mut e = vec![0u16; l];
        for i in s {
            e[i] = 1;
        }
        gens.push(Polynomial::monomial(Monomial::from_exps(&e), int(1)));
    }
    gens
}

/// Monomials not divisible by any lead, or an error if there are infinitely many.
pub fn standard_monomials(leads: &[Monomial], l: usize) -> Result<Vec<Monomial>> {
    for i in 0..l {
        if !leads.iter().any(|m| (0..l).all(|j| j == i || m.get(j) == 0)) {
            return Err(Error::InfiniteQuotient);
        }
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([Monomial::one(l)]);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        if !seen.insert(m.exps().to_vec()) || leads.iter().any(|g| g.divides(&m)) {
            continue;
        }
        for i in 0..l {
            queue.push_back(m.mul(&Monomial::var(l, i, 1)));
        }
        out.push(m);
    }
    out.sort_by(|a, b| grevlex_cmp(a.exps(), b.exps()));
    Ok(out)
}

/// Rank over Q of a dense matrix.
pub fn matrix_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &pivot[col];
            for (x, y) in rows[r].iter_mut().zip(&pivot).skip(col) {
                *x -= &f * y;
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_lower_bound(a: &AMatrix, t: &Triangulation) -> Result<RankBound> {
    let l = a.ncols();
    if t.npoints() != l {
        return Err(Error::Arity { expected: l, found: t.npoints() });
    }
    let gb = buchberger(&ring_ideal(a, t), &OrderSpec::Grevlex)?;
    let leads: Vec<Monomial> = gb
        .iter()
        .filter_map(|p| p.terms().iter().map(|(m, _)| m).max_by(|x, y| grevlex_cmp(x.exps(), y.exps())).cloned())
        .collect();
    let basis = standard_monomials(&leads, l)?;
    let (core_set, c_core) = core(t, l);
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|m| {
            let image = normal_form(&c_core.mul_monomial(m, &int(1)), &gb.elements, &OrderSpec::Grevlex)?;
            Ok(basis.iter().map(|b| image.coefficient(b)).collect())
        })
        .collect::<Result<_>>()?;
    Ok(RankBound {
        r: matrix_rank(rows) as u64,
        empty_core: core_set.is_empty(),
        core: core_set,
        nonfaces: minimal_nonfaces(t, l),
        quotient_dim: basis.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano::{coned_triangulation, load_fano};

    #[test]
    fn nonfaces() {
        let t = coned_triangulation(&load_fano(2, 0).unwrap()).unwrap();
        assert_eq!(minimal_nonfaces(&t, 4), vec![vec![0, 1, 2]]);
        let full = Triangulation::from_maximal(3, vec![vec![0, 1, 2]]).unwrap();
        assert!(minimal_nonfaces(&full, 3).is_empty());
        let two = Triangulation::from_maximal(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(minimal_nonfaces(&two, 4), vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn cores() {
        let t = coned_triangulation(&load_fano(2, 0).unwrap()).unwrap();
        let (s, m) = core(&t, 4);
        assert_eq!(s, vec![3]);
        assert_eq!(m, Polynomial::var(4, 3));
        let single = Triangulation::from_maximal(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(core(&single, 3).0, vec![0, 1, 2]);
        let two = Triangulation::from_maximal(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(core(&two, 4).0.is_empty());
    }

    #[test]
    fn triangle_bound() {
        let p = load_fano(2, 0).unwrap();
        let b = rank_lower_bound(&p.a_matrix(), &coned_triangulation(&p).unwrap()).unwrap();
        assert_eq!(b.quotient_dim, 3);
        assert_eq!(b.r, 2);
        assert!(!b.empty_core);
    }

    #[test]
    fn ranks() {
        let rows = vec![vec![int(1), int(2)], vec![int(2), int(4)], vec![int(0), int(1)]];
        assert_eq!(matrix_rank(rows), 2);
        assert_eq!(matrix_rank(vec![]), 0);
    }
}
