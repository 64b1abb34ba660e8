//! Integration of left ideals of `D` along `x_1..x_m`.
//!
//! The integration ideal `(I + d_1 D + ... + d_m D) ∩ D'` is the
//! restriction of the Fourier-transformed ideal to `x_1 = ... = x_m = 0`:
//! a `(-w,w)` Gröbner basis, the generic b-function, the restriction
//! vectors up to its largest non-negative integer root, and a
//! position-over-term elimination in `(D')^r`.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{ModuleOrder, Monomial, OrderSpec, Polynomial, PositionRule, Rational};
use crate::error::{Error, Result};
use crate::groebner::{GeneratorSet, SetKind};
use crate::weyl::{fourier, initial_form, w_order, weyl_module_gb, weyl_order, WeylBasis, WeylOperator};

/// Largest b-function degree tried before the intersection is declared zero.
pub const MAX_B_DEGREE: u32 = 64;

/// Monic generator of `in_(-w,w)(I) ∩ K[s]`, `s = Σ w_i x_i d_i`; zero when
/// no nonzero element was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFunction {
    /// Univariate polynomial in `s`.
    pub b: Polynomial,
    pub weight: Vec<i64>,
}

impl BFunction {
    pub fn is_zero(&self) -> bool {
        self.b.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.b.total_degree()
    }
}

fn check_weight(w: &[i64], n: usize) -> Result<usize> {
    if w.len() != n {
        return Err(Error::Arity { expected: n, found: w.len() });
    }
    let m = w.iter().take_while(|&&x| x > 0).count();
    if m == 0 || w[m..].iter().any(|&x| x != 0) {
        return Err(Error::Invalid("weight must be positive on x_1..x_m and zero after".into()));
    }
    Ok(m)
}

fn euler(n: usize, w: &[i64]) -> WeylOperator {
    let mut s = WeylOperator::zero(n);
    for (i, &wi) in w.iter().enumerate() {
        if wi != 0 {
            let t = WeylOperator::x(n, i).mul(&WeylOperator::d(n, i));
            s = s.add(&t.scale(&Rational::from_integer(wi.into())));
        }
    }
    s
}

/// Generic b-function of the ideal generated by `gens` along `w`.
pub fn generic_b(gens: &[WeylOperator], w: &[i64]) -> Result<BFunction> {
    let n = gens.first().map(|g| g.nvars()).unwrap_or(w.len());
    check_weight(w, n)?;
    let g = WeylBasis::compute(gens, &weyl_order(w))?;
    generic_b_from_basis(g.elements(), w)
}

/// As [`generic_b`], from a Gröbner basis for an order refining `(-w,w)`.
pub fn generic_b_from_basis(gb: &[WeylOperator], w: &[i64]) -> Result<BFunction> {
    let n = w.len();
    let inits: Vec<WeylOperator> = gb.iter().map(|g| initial_form(g, w)).collect::<Result<_>>()?;
    let h = WeylBasis::compute(&inits, &OrderSpec::Grevlex)?;
    let s = euler(n, w);
    // echelon rows of NF(s^k): pivot monomial -> (vector, combination in K[s])
    let mut rows: Vec<(Polynomial, Polynomial)> = Vec::new();
    let mut pivots: HashMap<Monomial, usize> = HashMap::new();
    let mut power = h.normal_form(&WeylOperator::one(n))?;
    let mut comb = Polynomial::one(1);
    for k in 0..=MAX_B_DEGREE {
        if k > 0 {
            power = h.normal_form(&s.mul(&power))?;
            comb = Polynomial::monomial(Monomial::var(1, 0, k as u16), Rational::one());
        }
        let (v, c) = eliminate(power.as_polynomial().clone(), comb.clone(), &rows, &pivots);
        if v.is_zero() {
            return Ok(BFunction { b: c.make_monic(), weight: w.to_vec() });
        }
        let lead = v.leading().unwrap().0.clone();
        pivots.insert(lead, rows.len());
        rows.push((v, c));
    }
    Ok(BFunction { b: Polynomial::zero(1), weight: w.to_vec() })
}

fn eliminate(
    mut v: Polynomial,
    mut c: Polynomial,
    rows: &[(Polynomial, Polynomial)],
    pivots: &HashMap<Monomial, usize>,
) -> (Polynomial, Polynomial) {
    loop {
        let hit = v.terms().iter().find_map(|(m, a)| pivots.get(m).map(|&r| (m.clone(), a.clone(), r)));
        let Some((m, a, r)) = hit else { break };
        let (rv, rc) = &rows[r];
        let f = a / rv.coefficient(&m);
        v = v.sub(&rv.scale(&f));
        c = c.sub(&rc.scale(&f));
    }
    (v, c)
}

/// Largest integer root `>= 0` of a univariate polynomial, if any.
pub fn max_nonneg_int_root(b: &Polynomial) -> Option<u64> {
    if b.is_zero() {
        return None;
    }
    let p = b.normalized();
    let deg = p.total_degree().unwrap() as usize;
    let mut coef = vec![BigInt::zero(); deg + 1];
    for (m, c) in p.terms() {
        coef[m.get(0) as usize] = c.numer().clone();
    }
    let low = coef.iter().position(|c| !c.is_zero()).unwrap();
    let a0 = coef[low].abs();
    let lead = coef[deg].abs();
    // Cauchy bound on the positive roots
    let mut bound = BigInt::zero();
    for c in &coef[low..deg] {
        let q = c.abs().div_ceil(&lead);
        if q > bound {
            bound = q;
        }
    }
    let bound = (bound + 1u32).min(a0.clone());
    let mut r = bound.to_u64().unwrap_or(u64::MAX);
    while r >= 1 {
        let rb = BigInt::from(r);
        if (&a0 % &rb).is_zero() {
            let mut acc = BigInt::zero();
            for c in coef.iter().rev() {
                acc = acc * &rb + c;
            }
            if acc.is_zero() {
                return Some(r);
            }
        }
        r -= 1;
    }
    if low > 0 {
        Some(0)
    } else {
        None
    }
}

/// Data of the restriction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionData {
    pub s0: u32,
    /// Exponents `β` of `d_1..d_m` with `w·β <= s0`, in slot order:
    /// descending `w`-degree, ties lexicographically descending; `0` last.
    pub basis_monomials: Vec<Vec<u16>>,
    pub r: usize,
    /// `(d^β h_i)|_{x_1..x_m = 0}` in `D`, zeros removed.
    pub restricted: Vec<WeylOperator>,
}

fn weighted_indices(w: &[i64], d: i64) -> Vec<Vec<u16>> {
    let m = w.len();
    let mut out = Vec::new();
    let mut cur = vec![0u16; m];
    fn rec(w: &[i64], d: i64, k: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k == w.len() {
            out.push(cur.clone());
            return;
        }
        let mut e = 0u16;
        loop {
            let used: i64 = (0..k).map(|i| w[i] * cur[i] as i64).sum::<i64>() + w[k] * e as i64;
            if used > d {
                break;
            }
            cur[k] = e;
            rec(w, d, k + 1, cur, out);
            e += 1;
        }
        cur[k] = 0;
    }
    if d >= 0 {
        rec(w, d, 0, &mut cur, &mut out);
    }
    let deg = |b: &Vec<u16>| -> i64 { b.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum() };
    out.sort_by(|a, b| deg(b).cmp(&deg(a)).then_with(|| b.cmp(a)));
    out
}

/// Restriction vectors of a `(-w,w)` Gröbner basis `fgb` for the root `s0`.
/// Basis elements with `ord(h_i) > s0` contribute nothing.
pub fn restriction_data(fgb: &[WeylOperator], w: &[i64], s0: u32) -> Result<RestrictionData> {
    let n = w.len();
    let m = check_weight(w, n)?;
    let wm = &w[..m];
    let basis_monomials = weighted_indices(wm, s0 as i64);
    let r = basis_monomials.len();
    let mut restricted = Vec::new();
    let zero_vars: Vec<usize> = (0..m).collect();
    for h in fgb {
        let mi = w_order(h, w)?;
        for beta in weighted_indices(wm, s0 as i64 - mi) {
            let mut v = vec![0u16; n];
            v[..m].copy_from_slice(&beta);
            let p = WeylOperator::d_monomial(n, &v).mul(h).substitute_zero(&zero_vars);
            if !p.is_zero() && !restricted.contains(&p) {
                restricted.push(p);
            }
        }
    }
    Ok(RestrictionData { s0, basis_monomials, r, restricted })
}

/// Wall-clock seconds of the three integration stages.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StageTimings {
    /// `(-w,w)` Gröbner basis and generic b-function.
    pub gb_w: f64,
    /// Restriction vectors.
    pub base: f64,
    /// Module Gröbner basis and elimination.
    pub gb_final: f64,
}

/// How the integration algorithm finished.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegrationBranch {
    /// The elimination ran; the ideal is the collected slot-0 elements.
    Eliminated,
    /// No non-negative integer root: the integration ideal is `D'`.
    OutputOne,
}

#[derive(Clone, Debug)]
pub struct Integration {
    pub ideal: GeneratorSet<WeylOperator>,
    pub b_function: BFunction,
    pub restriction: Option<RestrictionData>,
    pub branch: IntegrationBranch,
    pub timings: StageTimings,
}

/// Runs the integration algorithm, keeping intermediate data and timings.
pub fn integrate(gens: &[WeylOperator], w: &[i64]) -> Result<Integration> {
    let n = gens.first().map(|g| g.nvars()).unwrap_or(w.len());
    if gens.iter().any(|g| g.nvars() != n) {
        return Err(Error::ContextMismatch);
    }
    let m = check_weight(w, n)?;
    let np = n - m;
    let start = Instant::now();
    let fgens: Vec<WeylOperator> = gens.iter().map(|g| fourier(g, m)).collect();
    let g = WeylBasis::compute(&fgens, &weyl_order(w))?;
    let b = generic_b_from_basis(g.elements(), w)?;
    let mut timings = StageTimings { gb_w: start.elapsed().as_secs_f64(), ..Default::default() };
    if b.is_zero() {
        return Err(Error::NotHolonomic);
    }
    let Some(s0) = max_nonneg_int_root(&b.b) else {
        return Ok(Integration {
            ideal: GeneratorSet::new(SetKind::LeftIdeal, vec![WeylOperator::one(np)]),
            b_function: b,
            restriction: None,
            branch: IntegrationBranch::OutputOne,
            timings,
        });
    };
    let start = Instant::now();
    let data = restriction_data(g.elements(), w, s0 as u32)?;
    let slot: HashMap<&[u16], usize> =
        data.basis_monomials.iter().enumerate().map(|(k, b)| (b.as_slice(), k)).collect();
    let keep: Vec<usize> = (m..n).collect();
    let mut vectors: Vec<Vec<WeylOperator>> = Vec::new();
    for p in &data.restricted {
        // inverse Fourier on the restricted element: d_i^k -> (-x_i)^k, read as slot x^k
        let mut parts: Vec<Vec<(Vec<u16>, Vec<u16>, Rational)>> = vec![Vec::new(); data.r];
        for (u, v, c) in p.terms() {
            let k = *slot
                .get(&v[..m])
                .ok_or_else(|| Error::Invalid("restriction term beyond the b-function root".into()))?;
            let odd = v[..m].iter().map(|&e| e as u32).sum::<u32>() % 2 == 1;
            let c = if odd { -c.clone() } else { c.clone() };
            let mut u2 = u.to_vec();
            let mut v2 = v.to_vec();
            for i in 0..m {
                u2[i] = 0;
                v2[i] = 0;
            }
            parts[k].push((u2, v2, c));
        }
        let vector: Vec<WeylOperator> = parts
            .into_iter()
            .map(|ts| {
                WeylOperator::from_terms(n, ts.iter().map(|(u, v, c)| (u.as_slice(), v.as_slice(), c.clone())))
                    .restrict_to(&keep)
            })
            .collect::<Result<_>>()?;
        vectors.push(vector);
    }
    timings.base = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let r = data.r;
    let order = ModuleOrder {
        term: OrderSpec::Grevlex,
        position: PositionRule::Pot((0..r).map(|k| r - 1 - k).collect()),
    };
    let gb = weyl_module_gb(&vectors, &order)?;
    let mut ideal: Vec<WeylOperator> = gb
        .into_iter()
        .filter(|v| v[..r - 1].iter().all(WeylOperator::is_zero))
        .map(|mut v| v.pop().unwrap().normalized())
        .collect();
    ideal.sort_by(|a, b| {
        crate::algebra::grevlex_cmp(
            a.as_polynomial().leading().unwrap().0.exps(),
            b.as_polynomial().leading().unwrap().0.exps(),
        )
    });
    timings.gb_final = start.elapsed().as_secs_f64();
    Ok(Integration {
        ideal: GeneratorSet::new(SetKind::LeftIdeal, ideal),
        b_function: b,
        restriction: Some(data),
        branch: IntegrationBranch::Eliminated,
        timings,
    })
}

/// Generators of `(I + d_1 D + ... + d_m D) ∩ D'`, where `m` is the number
/// of leading positive entries of `w`.
pub fn integration_ideal(gens: &[WeylOperator], w: &[i64]) -> Result<GeneratorSet<WeylOperator>> {
    integrate(gens, w).map(|r| r.ideal)
}

/// `b(s)` from its coefficients, lowest degree first.
pub fn univariate(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_terms(
        1,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (Monomial::var(1, 0, k as u16), Rational::from_integer(c.into()))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> WeylOperator {
        WeylOperator::x(1, 0)
    }
    fn dt1() -> WeylOperator {
        WeylOperator::d(1, 0)
    }

    #[test]
    fn b_function_fixtures() {
        assert_eq!(generic_b(&[dt1()], &[1]).unwrap().b, univariate(&[0, 1]));
        assert_eq!(generic_b(&[t1()], &[1]).unwrap().b, univariate(&[1, 1]));
        let e = t1().mul(&dt1()).sub(&WeylOperator::constant(1, crate::algebra::int(2)));
        assert_eq!(generic_b(&[e], &[1]).unwrap().b, univariate(&[-2, 1]));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(max_nonneg_int_root(&univariate(&[0, -2, 1])), Some(2));
        assert_eq!(max_nonneg_int_root(&univariate(&[1, 1])), None);
        assert_eq!(max_nonneg_int_root(&univariate(&[3, -7, 2])), Some(3));
        assert_eq!(max_nonneg_int_root(&univariate(&[0, 1])), Some(0));
    }

    #[test]
    fn restriction_of_euler() {
        let h = t1().mul(&dt1());
        let data = restriction_data(&[h], &[1], 0).unwrap();
        assert_eq!(data.r, 1);
        assert!(data.restricted.is_empty());
    }

    #[test]
    fn slot_order() {
        assert_eq!(
            weighted_indices(&[1, 1], 1),
            vec![vec![1, 0], vec![0, 1], vec![0, 0]]
        );
    }

    #[test]
    fn integrate_simple_pole() {
        // 1/(x - t) in variables (t, x)
        let n = 2;
        let (t, x) = (WeylOperator::x(n, 0), WeylOperator::x(n, 1));
        let (dt, dx) = (WeylOperator::d(n, 0), WeylOperator::d(n, 1));
        let i = vec![dt.add(&dx), x.sub(&t).mul(&dt).sub(&WeylOperator::one(n))];
        let j = integration_ideal(&i, &[1, 0]).unwrap();
        assert_eq!(j.elements, vec![WeylOperator::d(1, 0)]);
    }

    #[test]
    fn integrate_to_unit() {
        let n = 2;
        let i = vec![WeylOperator::d(n, 0), WeylOperator::d(n, 1)];
        let r = integrate(&i, &[1, 0]).unwrap();
        assert_eq!(r.branch, IntegrationBranch::OutputOne);
        assert_eq!(r.ideal.elements, vec![WeylOperator::one(1)]);
    }
}
