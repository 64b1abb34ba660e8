//! The Buchberger engine shared by every Gröbner computation in the crate.
//!
//! One loop serves commutative polynomial rings, the Weyl algebra and its
//! homogenization, and free (left) modules over any of them. Coefficients
//! are integers and reduction is fraction-free; each stored basis element is
//! kept primitive.
//!
//! Monomials carry a precomputed order key (see `KeyOrder`), so comparing
//! terms is a slice comparison and the key of a product is a sum of keys.
//!
//! Cofactor tracking and syzygies both use the augmented-module trick: extra
//! slots ranked below every "real" slot under a position-over-term order
//! record how each element was produced from the inputs.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::algebra::{Exps, Int, Key, KeyOrder};

/// Multiplication rule of the underlying algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Algebra {
    Commutative,
    /// Exponent layout `[x_1..x_n, d_1..d_n]`.
    Weyl { n: usize },
    /// Exponent layout `[x_1..x_n, d_1..d_n, h]` with `d_i x_i = x_i d_i + h^2`.
    HomWeyl { n: usize },
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub key: Key,
    pub exp: Exps,
    pub pos: u32,
    pub coef: Int,
}

/// Terms in strictly descending key order, no zero coefficients.
#[derive(Clone, Debug, Default)]
pub(crate) struct Poly {
    pub terms: Vec<Term>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }
}

#[inline]
fn sev(e: &[u16]) -> u64 {
    let mut s = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            s |= 1 << (i & 63);
        }
    }
    s
}

#[inline]
fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

#[inline]
fn add_keys(a: &Key, b: &Key) -> Key {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

pub(crate) struct Ring {
    pub alg: Algebra,
    pub order: KeyOrder,
}

/// Options steering one Buchberger run.
#[derive(Clone, Debug, Default)]
pub(crate) struct GbOptions {
    /// Slots `>= real_slots` are bookkeeping; elements whose leading term
    /// falls there are syzygies.
    pub real_slots: Option<u32>,
    /// Keep syzygy elements in the basis (needed to compute syzygy modules);
    /// otherwise they are dropped as soon as they appear.
    pub keep_syzygies: bool,
    /// Buchberger's coprime-leading-monomial criterion. Only sound for
    /// commutative ideals (a single real slot).
    pub product_criterion: bool,
}

struct Elem {
    poly: Poly,
    lead_exp: Exps,
    lead_pos: u32,
    lead_sev: u64,
    sugar: u32,
    active: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    key: Key,
    sugar: u32,
}

impl Ring {
    pub fn new(alg: Algebra, order: KeyOrder) -> Self {
        Ring { alg, order }
    }

    pub fn term(&self, pos: u32, exp: Exps, coef: Int) -> Term {
        Term { key: self.order.key(pos, &exp), exp, pos, coef }
    }

    /// Canonical polynomial from arbitrary terms.
    pub fn poly(&self, mut terms: Vec<Term>) -> Poly {
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.key == t.key {
                    last.coef = last.coef.add(&t.coef);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coef.is_zero());
        Poly { terms: out }
    }

    pub fn deg(&self, e: &[u16]) -> u32 {
        e.iter().map(|&x| x as u32).sum()
    }

    fn sugar_of(&self, p: &Poly) -> u32 {
        p.terms.iter().map(|t| self.deg(&t.exp)).max().unwrap_or(0)
    }

    /// Left multiplication `x^e · p` with coefficient one.
    pub fn mono_mul(&self, e: &[u16], p: &Poly) -> Poly {
        let shift = self.order.shift(e);
        match self.alg {
            Algebra::Commutative => Poly {
                terms: p
                    .terms
                    .iter()
                    .map(|t| Term {
                        key: add_keys(&t.key, &shift),
                        exp: t.exp.iter().zip(e).map(|(a, b)| a + b).collect(),
                        pos: t.pos,
                        coef: t.coef.clone(),
                    })
                    .collect(),
            },
            Algebra::Weyl { n } => self.weyl_mono_mul(n, false, e, &shift, p),
            Algebra::HomWeyl { n } => self.weyl_mono_mul(n, true, e, &shift, p),
        }
    }

    fn weyl_mono_mul(&self, n: usize, hom: bool, e: &[u16], shift: &Key, p: &Poly) -> Poly {
        let mut out: Vec<Term> = Vec::with_capacity(p.terms.len());
        let mut extra = false;
        for t in &p.terms {
            // leading product term: exponents add
            out.push(Term {
                key: add_keys(&t.key, shift),
                exp: t.exp.iter().zip(e).map(|(a, b)| a + b).collect(),
                pos: t.pos,
                coef: t.coef.clone(),
            });
            let active: SmallVec<[usize; 8]> =
                (0..n).filter(|&i| e[n + i] > 0 && t.exp[i] > 0).collect();
            if active.is_empty() {
                continue;
            }
            extra = true;
            // d_i^b x_i^u = sum_k C(b,k) u!/(u-k)! x^(u-k) d^(b-k)
            let tables: SmallVec<[Vec<Int>; 8]> = active
                .iter()
                .map(|&i| {
                    let (b, u) = (e[n + i] as u128, t.exp[i] as u128);
                    let kmax = b.min(u);
                    let mut v = Vec::with_capacity(kmax as usize + 1);
                    let mut c = Int::one();
                    v.push(c.clone());
                    for k in 1..=kmax {
                        // C(b,k) u!/(u-k)! from the k-1 value
                        c = c.mul(&Int::from_u128((b - k + 1) * (u - k + 1))).div_exact(&Int::from_u128(k));
                        v.push(c.clone());
                    }
                    v
                })
                .collect();
            let mut ks: SmallVec<[usize; 8]> = SmallVec::from_elem(0, active.len());
            loop {
                // next multi-index (skip the all-zero one, already emitted)
                let mut idx = 0;
                loop {
                    if idx == ks.len() {
                        break;
                    }
                    ks[idx] += 1;
                    if ks[idx] < tables[idx].len() {
                        break;
                    }
                    ks[idx] = 0;
                    idx += 1;
                }
                if idx == ks.len() {
                    break;
                }
                let mut exp: Exps = t.exp.iter().zip(e).map(|(a, b)| a + b).collect();
                let mut coef = t.coef.clone();
                let mut ksum = 0u16;
                for (a, &i) in active.iter().enumerate() {
                    let k = ks[a] as u16;
                    exp[i] -= k;
                    exp[n + i] -= k;
                    ksum += k;
                    coef = coef.mul(&tables[a][ks[a]]);
                }
                if hom {
                    exp[2 * n] += 2 * ksum;
                }
                out.push(self.term(t.pos, exp, coef));
            }
        }
        if extra {
            self.poly(out)
        } else {
            Poly { terms: out }
        }
    }

    /// `a·p − b·q`.
    pub fn lin_comb(&self, a: &Int, p: Poly, b: &Int, q: Poly) -> Poly {
        let mut out = Vec::with_capacity(p.terms.len() + q.terms.len());
        let mut pi = p.terms.into_iter().peekable();
        let mut qi = q.terms.into_iter().peekable();
        let nb = b.neg();
        loop {
            let ord = match (pi.peek(), qi.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => x.key.cmp(&y.key),
            };
            match ord {
                Ordering::Greater => {
                    let mut t = pi.next().unwrap();
                    if !a.is_one() {
                        t.coef = t.coef.mul(a);
                    }
                    out.push(t);
                }
                Ordering::Less => {
                    let mut t = qi.next().unwrap();
                    t.coef = t.coef.mul(&nb);
                    out.push(t);
                }
                Ordering::Equal => {
                    let mut t = pi.next().unwrap();
                    let s = qi.next().unwrap();
                    t.coef = t.coef.mul_sub_mul(a, &s.coef, b);
                    if !t.coef.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
        Poly { terms: out }
    }

    pub fn content(terms: &[Term]) -> Int {
        let mut g = Int::zero();
        for t in terms {
            g = g.gcd(&t.coef);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the integer content and make the leading coefficient positive.
    pub fn make_primitive(&self, p: &mut Poly) {
        if p.is_zero() {
            return;
        }
        let mut g = Self::content(&p.terms);
        if p.terms[0].coef.is_negative() {
            g = g.neg();
        }
        if !g.is_one() {
            for t in &mut p.terms {
                t.coef = t.coef.div_exact(&g);
            }
        }
    }

    fn find_divisor(&self, basis: &[Elem], t: &Term, skip: Option<usize>) -> Option<usize> {
        let s = sev(&t.exp);
        basis.iter().enumerate().position(|(i, g)| {
            Some(i) != skip
                && g.lead_pos == t.pos
                && g.lead_sev & !s == 0
                && divides(&g.lead_exp, &t.exp)
        })
    }

    /// Reduce `p` modulo `basis`. With `full`, every term is reduced;
    /// otherwise only the leading term.
    fn reduce(&self, p: Poly, basis: &[Elem], full: bool, skip: Option<usize>) -> Poly {
        self.reduce_scaled(p, basis, full, skip).0
    }

    /// As `reduce`, also returning `(num, den)` with `result = num/den · (true remainder)`.
    fn reduce_scaled(&self, mut p: Poly, basis: &[Elem], full: bool, skip: Option<usize>) -> (Poly, Int, Int) {
        let mut done: Vec<Term> = Vec::new();
        let mut steps = 0usize;
        let (mut num, mut den) = (Int::one(), Int::one());
        while !p.is_zero() {
            let lt = &p.terms[0];
            match self.find_divisor(basis, lt, skip) {
                Some(gi) => {
                    let g = &basis[gi];
                    let e: Exps = lt.exp.iter().zip(&g.lead_exp).map(|(a, b)| a - b).collect();
                    let cg = &g.poly.terms[0].coef;
                    let d = cg.gcd(&lt.coef);
                    let (mut a, mut b) = (cg.div_exact(&d), lt.coef.div_exact(&d));
                    if a.is_negative() {
                        a = a.neg();
                        b = b.neg();
                    }
                    let mg = self.mono_mul(&e, &g.poly);
                    p = self.lin_comb(&a, p, &b, mg);
                    if !a.is_one() {
                        for t in &mut done {
                            t.coef = t.coef.mul(&a);
                        }
                        num = num.mul(&a);
                    }
                    steps += 1;
                    if steps.is_multiple_of(16) {
                        let g = self.strip_content(&mut done, &mut p);
                        if !g.is_one() {
                            den = den.mul(&g);
                            let c = num.gcd(&den);
                            num = num.div_exact(&c);
                            den = den.div_exact(&c);
                        }
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    let mut it = std::mem::take(&mut p.terms).into_iter();
                    done.push(it.next().unwrap());
                    p.terms = it.collect();
                }
            }
        }
        done.extend(p.terms);
        (Poly { terms: done }, num, den)
    }

    /// Divide out a large common content mid-reduction; returns the divisor.
    fn strip_content(&self, done: &mut [Term], p: &mut Poly) -> Int {
        let big = done.iter().chain(p.terms.iter()).any(|t| t.coef.bits() > 62);
        if !big {
            return Int::one();
        }
        let mut g = Self::content(done);
        if g.is_one() {
            return g;
        }
        for t in &p.terms {
            g = g.gcd(&t.coef);
            if g.is_one() {
                return g;
            }
        }
        if g.is_zero() || g.is_one() {
            return Int::one();
        }
        for t in done.iter_mut().chain(p.terms.iter_mut()) {
            t.coef = t.coef.div_exact(&g);
        }
        g
    }

    fn elem(&self, poly: Poly, sugar: u32) -> Elem {
        let lt = poly.lead();
        Elem {
            lead_exp: lt.exp.clone(),
            lead_pos: lt.pos,
            lead_sev: sev(&lt.exp),
            sugar,
            active: true,
            poly,
        }
    }

    fn is_syzygy(&self, p: &Poly, opts: &GbOptions) -> bool {
        opts.real_slots.is_some_and(|r| p.lead().pos >= r)
    }

    fn spoly(&self, f: &Elem, g: &Elem, lcm: &[u16]) -> Poly {
        let ef: Exps = lcm.iter().zip(&f.lead_exp).map(|(a, b)| a - b).collect();
        let eg: Exps = lcm.iter().zip(&g.lead_exp).map(|(a, b)| a - b).collect();
        let cf = &f.poly.terms[0].coef;
        let cg = &g.poly.terms[0].coef;
        let d = cf.gcd(cg);
        let a = cg.div_exact(&d);
        let b = cf.div_exact(&d);
        let pf = self.mono_mul(&ef, &f.poly);
        let pg = self.mono_mul(&eg, &g.poly);
        self.lin_comb(&a, pf, &b, pg)
    }

    /// Reduced Gröbner basis of the (left) submodule generated by `input`.
    pub fn groebner(&self, input: Vec<Poly>, opts: &GbOptions) -> Vec<Poly> {
        let mut inputs: Vec<(Poly, u32)> = input
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|mut p| {
                self.make_primitive(&mut p);
                let s = self.sugar_of(&p);
                (p, s)
            })
            .collect();
        // process small leading terms first among equal sugar
        inputs.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| b.0.lead().key.cmp(&a.0.lead().key)));
        let mut basis: Vec<Elem> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        loop {
            let best_pair = pairs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| {
                    a.sugar.cmp(&b.sugar).then_with(|| a.key.cmp(&b.key)).then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
                })
                .map(|(k, p)| (k, p.sugar, p.key.clone()));
            let take_input = match (inputs.last(), &best_pair) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some((p, s)), Some((_, ps, pk))) => (*s, &p.lead().key) <= (*ps, pk),
            };
            let (s, sugar) = if take_input {
                inputs.pop().unwrap()
            } else {
                let (k, _, _) = best_pair.unwrap();
                let pr = pairs.swap_remove(k);
                let sp = self.spoly(&basis[pr.i], &basis[pr.j], &pr.lcm);
                (sp, pr.sugar)
            };
            let mut h = self.reduce(s, &basis, false, None);
            if h.is_zero() {
                continue;
            }
            if self.is_syzygy(&h, opts) && !opts.keep_syzygies {
                continue;
            }
            self.make_primitive(&mut h);
            let sugar = sugar.max(self.sugar_of(&h));
            let hi = basis.len();
            basis.push(self.elem(h, sugar));
            self.update(&mut basis, &mut pairs, hi, opts);
        }
        self.finalize(basis)
    }

    fn update(&self, basis: &mut [Elem], pairs: &mut Vec<Pair>, hi: usize, opts: &GbOptions) {
        let (h_exp, h_pos, h_sugar) = {
            let h = &basis[hi];
            (h.lead_exp.clone(), h.lead_pos, h.sugar)
        };
        struct Cand {
            j: usize,
            lcm: Exps,
            coprime: bool,
        }
        let mut cands: Vec<Cand> = Vec::new();
        for (j, g) in basis.iter().enumerate().take(hi) {
            if !g.active || g.lead_pos != h_pos {
                continue;
            }
            let lcm: Exps = g.lead_exp.iter().zip(&h_exp).map(|(a, b)| *a.max(b)).collect();
            let coprime =
                opts.product_criterion && g.lead_exp.iter().zip(&h_exp).all(|(a, b)| *a == 0 || *b == 0);
            cands.push(Cand { j, lcm, coprime });
        }
        // Gebauer–Möller: keep one pair per minimal lcm
        let mut kept: Vec<Cand> = Vec::new();
        while !cands.is_empty() {
            let c = cands.remove(0);
            let dominated = !c.coprime
                && cands.iter().chain(kept.iter()).any(|o| divides(&o.lcm, &c.lcm));
            if !dominated {
                kept.push(c);
            }
        }
        pairs.retain(|p| {
            if basis[p.i].lead_pos != h_pos || !divides(&h_exp, &p.lcm) {
                return true;
            }
            let li: Exps = basis[p.i].lead_exp.iter().zip(&h_exp).map(|(a, b)| *a.max(b)).collect();
            let lj: Exps = basis[p.j].lead_exp.iter().zip(&h_exp).map(|(a, b)| *a.max(b)).collect();
            li == p.lcm || lj == p.lcm
        });
        for c in kept.into_iter().filter(|c| !c.coprime) {
            let g = &basis[c.j];
            let dg = self.deg(&c.lcm) - self.deg(&g.lead_exp);
            let dh = self.deg(&c.lcm) - self.deg(&h_exp);
            let sugar = (g.sugar + dg).max(h_sugar + dh);
            let key = self.order.key(h_pos, &c.lcm);
            pairs.push(Pair { i: c.j, j: hi, lcm: c.lcm, key, sugar });
        }
        for g in basis.iter_mut().take(hi) {
            if g.active && g.lead_pos == h_pos && divides(&h_exp, &g.lead_exp) {
                g.active = false;
            }
        }
    }

    fn finalize(&self, basis: Vec<Elem>) -> Vec<Poly> {
        // minimal basis: drop elements whose leading term is divisible by another's
        let n = basis.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                let (a, b) = (&basis[j], &basis[i]);
                if a.lead_pos == b.lead_pos && divides(&a.lead_exp, &b.lead_exp) {
                    // equal leads: keep the earlier element
                    if a.lead_exp != b.lead_exp || j < i {
                        keep[i] = false;
                        break;
                    }
                }
            }
        }
        let minimal: Vec<Elem> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
        let mut out: Vec<Poly> = (0..minimal.len())
            .map(|i| {
                let mut p = self.reduce(minimal[i].poly.clone(), &minimal, true, Some(i));
                self.make_primitive(&mut p);
                p
            })
            .collect();
        out.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));
        out
    }

    /// Full normal form with its scale: `result = num/den · NF(p)`.
    pub fn normal_form_scaled(&self, p: Poly, basis: &[Poly]) -> (Poly, Int, Int) {
        let elems: Vec<Elem> = basis.iter().filter(|b| !b.is_zero()).map(|b| self.elem(b.clone(), 0)).collect();
        self.reduce_scaled(p, &elems, true, None)
    }

    /// Whether every element of `ps` reduces to zero modulo the Gröbner basis `gb`.
    pub fn all_reduce_to_zero(&self, ps: &[Poly], gb: &[Poly]) -> bool {
        let elems: Vec<Elem> = gb.iter().filter(|b| !b.is_zero()).map(|b| self.elem(b.clone(), 0)).collect();
        ps.iter().all(|p| self.reduce(p.clone(), &elems, false, None).is_zero())
    }

    /// Leading-term-only reduction test: `p` lies in the module spanned by `gb`.
    pub fn reduces_to_zero(&self, p: &Poly, gb: &[Poly]) -> bool {
        self.all_reduce_to_zero(std::slice::from_ref(p), gb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{OrderSpec, PositionRule};

    fn ring_comm(n: usize, order: OrderSpec) -> Ring {
        Ring::new(Algebra::Commutative, KeyOrder::from_spec(&order, n))
    }

    fn p(r: &Ring, terms: &[(&[u16], i64)]) -> Poly {
        r.poly(terms.iter().map(|(e, c)| r.term(0, Exps::from_slice(e), Int::from(*c))).collect())
    }

    #[test]
    fn univariate_gb() {
        let r = ring_comm(1, OrderSpec::Lex);
        let f = p(&r, &[(&[2], 1), (&[0], -1)]);
        let g = p(&r, &[(&[3], 1), (&[1], -1)]);
        let gb = r.groebner(vec![f.clone(), g], &GbOptions { product_criterion: true, ..Default::default() });
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].terms.len(), 2);
        assert_eq!(gb[0].lead().exp.as_slice(), &[2]);
    }

    #[test]
    fn weyl_commutator() {
        // d*x = x*d + 1 in one variable: exps [x, d]
        let r = Ring::new(Algebra::Weyl { n: 1 }, KeyOrder::from_spec(&OrderSpec::Grevlex, 2));
        let x = p(&r, &[(&[1, 0], 1)]);
        let prod = r.mono_mul(&[0, 1], &x);
        assert_eq!(prod.terms.len(), 2);
        assert_eq!(prod.terms[0].exp.as_slice(), &[1, 1]);
        assert_eq!(prod.terms[1].exp.as_slice(), &[0, 0]);
        assert!(prod.terms[1].coef.is_one());
        // {x, d} generate the unit ideal
        let d = p(&r, &[(&[0, 1], 1)]);
        let gb = r.groebner(vec![x, d], &GbOptions::default());
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].lead().exp.as_slice(), &[0, 0]);
    }

    #[test]
    fn module_pot() {
        let order = KeyOrder::new(OrderSpec::Grevlex.rows(2), Some(&PositionRule::Pot(vec![1, 0])));
        let r = Ring::new(Algebra::Commutative, order);
        let t = |pos, e: &[u16]| r.term(pos, Exps::from_slice(e), Int::one());
        let a = r.poly(vec![t(0, &[1, 0]), t(1, &[0, 0])]);
        let b = r.poly(vec![t(0, &[0, 1]), t(1, &[0, 0])]);
        let gb = r.groebner(vec![a, b], &GbOptions::default());
        // contains an element supported on slot 1 only: (0, x - y) up to sign
        assert!(gb.iter().any(|g| g.terms.iter().all(|t| t.pos == 1)));
    }
}
