//! Holonomicity, holonomic rank and A-hypergeometric systems.

use std::collections::HashMap;

use num_integer::Integer;

use crate::algebra::{Monomial, OrderSpec, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GeneratorSet, SetKind};
use crate::weyl::{WeylBasis, WeylOperator};

/// Integer matrix whose first row is all ones; columns are the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrix {
    rows: Vec<Vec<i64>>,
}

/// Parameter vector of an A-hypergeometric system, one entry per row of A.
pub type BetaVector = Vec<Rational>;

impl AMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let l = rows.first().map(|r| r.len()).unwrap_or(0);
        if let Some(r) = rows.iter().find(|r| r.len() != l) {
            return Err(Error::Arity { expected: l, found: r.len() });
        }
        Ok(AMatrix { rows })
    }

    /// The homogenized matrix `(1 ... 1; a_1 ... a_l)`.
    pub fn from_points(points: &[Vec<i64>]) -> Result<Self> {
        let d = points.first().map(|p| p.len()).unwrap_or(0);
        let mut rows = vec![vec![1; points.len()]];
        for k in 0..d {
            rows.push(points.iter().map(|p| p[k]).collect());
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map(|r| r.len()).unwrap_or(0)
    }
}

/// `(0,..,0; 1,..,1)` refined by grevlex: leading terms are principal symbols.
fn symbol_order(n: usize) -> OrderSpec {
    let mut w = vec![0; n];
    w.extend(vec![1; n]);
    OrderSpec::weighted(w, OrderSpec::Grevlex)
}

/// An order on `[x.., d..]` comparing `d`-monomials (grevlex) before `x`-monomials.
pub fn d_block_order(n: usize) -> OrderSpec {
    let mut rows = Vec::new();
    let mut r = vec![0; n];
    r.extend(vec![1; n]);
    rows.push(r);
    for i in (1..n).rev() {
        let mut r = vec![0; 2 * n];
        r[n + i] = -1;
        rows.push(r);
    }
    let mut r = vec![1; n];
    r.extend(vec![0; n]);
    rows.push(r);
    OrderSpec::Matrix(rows)
}

/// Krull dimension of the monomial ideal generated by the given exponent
/// vectors in `nv` variables: the size of a largest set of variables
/// containing no generator's support.
pub fn monomial_dimension(gens: &[Vec<u16>], nv: usize) -> usize {
    assert!(nv <= 64);
    let mut supports: Vec<u64> = gens
        .iter()
        .map(|e| e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u64, |s, (i, _)| s | (1 << i)))
        .collect();
    if supports.contains(&0) {
        return 0;
    }
    supports.sort_by_key(|s| s.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|m| m & s == *m) {
            minimal.push(s);
        }
    }
    let all = if nv == 64 { u64::MAX } else { (1u64 << nv) - 1 };
    let mut memo = HashMap::new();
    independent(all, &minimal, &mut memo)
}

fn independent(set: u64, gens: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
    if let Some(&v) = memo.get(&set) {
        return v;
    }
    let best = match gens.iter().find(|&&g| g & set == g) {
        None => set.count_ones() as usize,
        Some(&g) => {
            let mut best = 0;
            let mut bits = g;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                best = best.max(independent(set & !(1 << v), gens, memo));
            }
            best
        }
    };
    memo.insert(set, best);
    best
}

/// Dimension of the characteristic variety of `D/DJ` (`None` for `J = D`).
pub fn characteristic_dimension(gens: &[WeylOperator]) -> Result<Option<usize>> {
    let n = gens.first().map(|g| g.nvars()).unwrap_or(0);
    let b = WeylBasis::compute(gens, &symbol_order(n))?;
    let leads: Vec<Vec<u16>> = b.elements().iter().filter_map(|g| b.leading_exponent(g)).collect();
    if leads.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return Ok(None);
    }
    Ok(Some(monomial_dimension(&leads, 2 * n)))
}

/// Whether the characteristic variety has dimension `n`. `⟨0⟩` is not
/// holonomic; `D` itself is (the zero module).
pub fn is_holonomic(gens: &[WeylOperator]) -> Result<bool> {
    if gens.iter().all(WeylOperator::is_zero) {
        return Ok(false);
    }
    let n = gens[0].nvars();
    Ok(match characteristic_dimension(gens)? {
        None => true,
        Some(d) => d == n,
    })
}

/// Number of monomials outside the monomial ideal; `None` when infinite.
pub fn standard_monomial_count(gens: &[Vec<u16>], nv: usize) -> Option<u64> {
    if gens.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return Some(0);
    }
    let mut bound = vec![0u16; nv];
    for (i, b) in bound.iter_mut().enumerate() {
        let pure =
            gens.iter().filter(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0)).map(|e| e[i]).min()?;
        *b = pure;
    }
    let mut count = 0u64;
    let mut cur = vec![0u16; nv];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&cur).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut k = 0;
        while k < nv {
            cur[k] += 1;
            if cur[k] < bound[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == nv {
            return Some(count);
        }
    }
}

/// Holonomic rank: the dimension of `R/RJ` over the rational functions,
/// where `R` has rational-function coefficients. `None` means infinite.
pub fn holonomic_rank(gens: &[WeylOperator]) -> Result<Option<u64>> {
    if gens.iter().all(WeylOperator::is_zero) {
        return Ok(None);
    }
    let n = gens[0].nvars();
    let b = WeylBasis::compute(gens, &d_block_order(n))?;
    let leads: Vec<Vec<u16>> =
        b.elements().iter().filter_map(|g| b.leading_exponent(g)).map(|e| e[n..].to_vec()).collect();
    if n == 0 {
        return Ok(Some(if leads.is_empty() { 1 } else { 0 }));
    }
    Ok(standard_monomial_count(&leads, n))
}

/// Z-basis of the integer kernel of `A`, by unimodular row reduction of `[A^T | I]`.
pub fn kernel_lattice(a: &AMatrix) -> Vec<Vec<i64>> {
    let l = a.ncols();
    let d = a.nrows();
    let mut rows: Vec<(Vec<i64>, Vec<i64>)> = (0..l)
        .map(|j| {
            let mut e = vec![0; l];
            e[j] = 1;
            ((0..d).map(|i| a.rows()[i][j]).collect(), e)
        })
        .collect();
    let mut top = 0;
    for col in 0..d {
        // gcd-combine all rows below `top` into one pivot
        loop {
            let nz: Vec<usize> = (top..l).filter(|&r| rows[r].0[col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| rows[r].0[col].abs()).unwrap();
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..l {
                let q = Integer::div_floor(&rows[r].0[col], &rows[top].0[col]);
                if q != 0 {
                    let (pa, pb) = rows[top].clone();
                    for (x, y) in rows[r].0.iter_mut().zip(&pa) {
                        *x -= q * y;
                    }
                    for (x, y) in rows[r].1.iter_mut().zip(&pb) {
                        *x -= q * y;
                    }
                }
                if rows[r].0[col] != 0 {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
        if top == l {
            break;
        }
    }
    rows.into_iter().filter(|(a, _)| a.iter().all(|&x| x == 0)).map(|(_, u)| u).collect()
}

fn binomial(u: &[i64]) -> Polynomial {
    let l = u.len();
    let plus: Vec<u16> = u.iter().map(|&x| x.max(0) as u16).collect();
    let minus: Vec<u16> = u.iter().map(|&x| (-x).max(0) as u16).collect();
    Polynomial::from_terms(
        l,
        vec![
            (Monomial::from_exps(&plus), Rational::from_integer(1.into())),
            (Monomial::from_exps(&minus), Rational::from_integer((-1).into())),
        ],
    )
}

/// Toric ideal `I_A` (commutative, one variable per column): the lattice
/// basis binomials saturated by the product of all variables.
pub fn toric_ideal(a: &AMatrix) -> Result<GeneratorSet<Polynomial>> {
    let l = a.ncols();
    let basis = kernel_lattice(a);
    if basis.is_empty() {
        return Ok(GeneratorSet::new(SetKind::Ideal, Vec::new()));
    }
    // I : (x_1 ... x_l)^∞ by eliminating y in I + <y x_1 ... x_l - 1>
    let map: Vec<usize> = (1..=l).collect();
    let mut gens: Vec<Polynomial> = basis.iter().map(|u| binomial(u).remap(l + 1, &map)).collect();
    let e = vec![1u16; l + 1];
    gens.push(Polynomial::from_terms(
        l + 1,
        vec![
            (Monomial::from_exps(&e), Rational::from_integer(1.into())),
            (Monomial::one(l + 1), Rational::from_integer((-1).into())),
        ],
    ));
    let elim = OrderSpec::Elimination { blocks: vec![1, l], inner: vec![OrderSpec::Grevlex, OrderSpec::Grevlex] };
    let gb = buchberger(&gens, &elim)?;
    let kept: Vec<Polynomial> = gb
        .iter()
        .filter(|p| p.degree_in(0) == Some(0))
        .map(|p| {
            Polynomial::from_terms(l, p.terms().iter().map(|(m, c)| (Monomial::from_exps(&m.exps()[1..]), c.clone())))
        })
        .collect();
    buchberger(&kept, &OrderSpec::Grevlex)
}

/// `H_A(β)`: Euler operators `Σ_j A_ij x_j d_j - β_i` and the toric binomials in `d`.
pub fn gkz_system(a: &AMatrix, beta: &[Rational]) -> Result<GeneratorSet<WeylOperator>> {
    if beta.len() != a.nrows() {
        return Err(Error::Arity { expected: a.nrows(), found: beta.len() });
    }
    let l = a.ncols();
    let mut ops = Vec::new();
    for (row, b) in a.rows().iter().zip(beta) {
        let mut e = WeylOperator::constant(l, -b.clone());
        for (j, &c) in row.iter().enumerate() {
            if c != 0 {
                let t = WeylOperator::x(l, j).mul(&WeylOperator::d(l, j));
                e = e.add(&t.scale(&Rational::from_integer(c.into())));
            }
        }
        ops.push(e);
    }
    let shift: Vec<usize> = (l..2 * l).collect();
    for p in toric_ideal(a)?.iter() {
        ops.push(WeylOperator::from_normal_polynomial(l, p.remap(2 * l, &shift))?);
    }
    Ok(GeneratorSet::new(SetKind::LeftIdeal, ops))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::parse::{names, parse_operator};

    #[test]
    fn holonomicity() {
        let v = names("x");
        assert!(is_holonomic(&[parse_operator("x*dx + 1", &v).unwrap()]).unwrap());
        let v = names("x1,x2");
        assert!(!is_holonomic(&[parse_operator("dx1", &v).unwrap()]).unwrap());
        assert!(is_holonomic(&[parse_operator("dx1", &v).unwrap(), parse_operator("dx2", &v).unwrap()]).unwrap());
        assert!(!is_holonomic(&[WeylOperator::zero(2)]).unwrap());
    }

    #[test]
    fn ranks_of_powers() {
        let v = names("x");
        for k in 1..=5 {
            let p = parse_operator(&format!("dx^{k}"), &v).unwrap();
            assert_eq!(holonomic_rank(&[p]).unwrap(), Some(k));
        }
        assert_eq!(holonomic_rank(&[WeylOperator::zero(1)]).unwrap(), None);
        let v = names("x,y");
        assert_eq!(holonomic_rank(&[parse_operator("dx", &v).unwrap()]).unwrap(), None);
    }

    #[test]
    fn dimension_of_monomial_ideals() {
        assert_eq!(monomial_dimension(&[vec![1, 0, 0]], 3), 2);
        assert_eq!(monomial_dimension(&[vec![1, 1, 0], vec![0, 0, 1]], 3), 1);
        assert_eq!(monomial_dimension(&[], 3), 3);
    }

    #[test]
    fn toric_ideals() {
        let a = AMatrix::new(vec![vec![1, 1, 1, 1], vec![1, 0, -1, 0], vec![0, 1, -1, 0]]).unwrap();
        let i = toric_ideal(&a).unwrap();
        assert_eq!(i.len(), 1);
        let d = names("d1,d2,d3,d4");
        assert_eq!(i.elements[0].display(&d).to_string(), "d1*d2*d3 - d4^3");
        let a = AMatrix::new(vec![vec![1, 1]]).unwrap();
        assert_eq!(toric_ideal(&a).unwrap().len(), 1);
        let a = AMatrix::new(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(toric_ideal(&a).unwrap().is_empty());
    }

    #[test]
    fn gkz_single_column() {
        let a = AMatrix::new(vec![vec![1]]).unwrap();
        let h = gkz_system(&a, &[int(0)]).unwrap();
        assert_eq!(h.elements, vec![WeylOperator::x(1, 0).mul(&WeylOperator::d(1, 0))]);
    }
}
