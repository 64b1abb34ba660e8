//! Randomized properties shared by the property suite and the acceptance runner.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

use pfano_core::algebra::{int, rat, Monomial, OrderSpec, Polynomial, Rational, RationalFunction};
use pfano_core::annihilator::approx_ann;
use pfano_core::groebner::{buchberger, normal_form, syzygy};
use pfano_core::integration::{generic_b, univariate};
use pfano_core::weyl::{apply, fourier, fourier_inverse, WeylBasis, WeylOperator};

pub const CASES: u32 = 1000;

pub fn coefficient() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

pub fn polynomial(n: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), coefficient()), 1..=max_terms)
        .prop_map(move |ts| Polynomial::from_terms(n, ts.into_iter().map(|(e, c)| (Monomial::from_exps(&e), c))))
}

pub fn operator(n: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = WeylOperator> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), prop::collection::vec(0..=max_exp, n), coefficient()),
        0..=max_terms,
    )
    .prop_map(move |ts| WeylOperator::from_terms(n, ts.iter().map(|(u, v, c)| (u.as_slice(), v.as_slice(), c.clone()))))
}

fn nonconstant(n: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(n, 2, 3).prop_filter("nonconstant", |p| !p.is_constant())
}

pub fn rational_function(n: usize) -> impl Strategy<Value = RationalFunction> {
    (polynomial(n, 1, 2), nonconstant(n)).prop_map(|(f, g)| RationalFunction::new(f, g).unwrap())
}

fn check(b: bool, msg: &str) -> Result<(), TestCaseError> {
    if b {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg.to_string()))
    }
}

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

pub type Outcome = Result<(), TestError<String>>;

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| match e {
        TestError::Abort(r) => TestError::Abort(r),
        TestError::Fail(r, v) => TestError::Fail(r, format!("{v:?}")),
    })
}

/// `[d_i, x_j] = δ_ij`, commuting coordinates and derivatives, and associativity.
pub fn weyl_relations() -> Outcome {
    let n = 3;
    run((0..n, 0..n, operator(2, 2, 3), operator(2, 2, 3), operator(2, 2, 3)), |(i, j, a, b, c)| {
        let comm = WeylOperator::d(n, i).commutator(&WeylOperator::x(n, j));
        let want = if i == j { WeylOperator::one(n) } else { WeylOperator::zero(n) };
        check(comm == want, "[d_i, x_j]")?;
        check(WeylOperator::x(n, i).commutator(&WeylOperator::x(n, j)).is_zero(), "[x_i, x_j]")?;
        check(WeylOperator::d(n, i).commutator(&WeylOperator::d(n, j)).is_zero(), "[d_i, d_j]")?;
        check(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), "associativity")?;
        check(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), "distributivity")
    })
}

/// `(PQ) • φ = P • (Q • φ)`.
pub fn apply_compatible() -> Outcome {
    run((operator(2, 1, 3), operator(2, 1, 3), rational_function(2)), |(p, q, phi)| {
        let lhs = apply(&p.mul(&q), &phi).unwrap();
        let rhs = apply(&p, &apply(&q, &phi).unwrap()).unwrap();
        check(lhs == rhs, "apply(PQ) = apply(P) apply(Q)")
    })
}

/// The Fourier transform is a ring morphism and its inverse undoes it.
pub fn fourier_morphism() -> Outcome {
    run((0usize..=2, operator(2, 2, 3), operator(2, 2, 3)), |(m, p, q)| {
        check(fourier(&p.mul(&q), m) == fourier(&p, m).mul(&fourier(&q, m)), "multiplicative")?;
        check(fourier(&p.add(&q), m) == fourier(&p, m).add(&fourier(&q, m)), "additive")?;
        check(fourier_inverse(&fourier(&p, m), m) == p, "inverse after forward")?;
        check(fourier(&fourier_inverse(&p, m), m) == p, "forward after inverse")
    })
}

fn grevlex_lead(p: &Polynomial) -> (Monomial, Rational) {
    p.sorted_terms(&OrderSpec::Grevlex)[0].clone()
}

/// Inputs and S-polynomials reduce to zero modulo the commutative basis.
pub fn commutative_gb() -> Outcome {
    run(prop::collection::vec(polynomial(3, 2, 3), 2..=3), |gens| {
        let o = OrderSpec::Grevlex;
        let gb = buchberger(&gens, &o).unwrap().elements;
        for g in &gens {
            check(normal_form(g, &gb, &o).unwrap().is_zero(), "input in ideal")?;
        }
        for (i, f) in gb.iter().enumerate() {
            for g in &gb[i + 1..] {
                let (mf, cf) = grevlex_lead(f);
                let (mg, cg) = grevlex_lead(g);
                let l = mf.lcm(&mg);
                let s = f.mul_monomial(&l.div(&mf).unwrap(), &cg).sub(&g.mul_monomial(&l.div(&mg).unwrap(), &cf));
                check(normal_form(&s, &gb, &o).unwrap().is_zero(), "S-pair reduces to zero")?;
            }
        }
        Ok(())
    })
}

fn coefficient_at(p: &WeylOperator, e: &[u16]) -> Rational {
    let n = p.nvars();
    p.terms().find(|(u, v, _)| *u == &e[..n] && *v == &e[n..]).map(|(_, _, c)| c.clone()).unwrap_or_else(|| int(0))
}

/// Inputs and Weyl S-polynomials reduce to zero modulo the Weyl basis.
pub fn weyl_gb() -> Outcome {
    let n = 2;
    run(prop::collection::vec(operator(n, 1, 3), 2..=2), move |gens| {
        let b = WeylBasis::compute(&gens, &OrderSpec::Grevlex).unwrap();
        for g in &gens {
            check(b.normal_form(g).unwrap().is_zero(), "input in ideal")?;
        }
        let gb = b.elements().to_vec();
        for (i, f) in gb.iter().enumerate() {
            for g in &gb[i + 1..] {
                let ef = b.leading_exponent(f).unwrap();
                let eg = b.leading_exponent(g).unwrap();
                let l: Vec<u16> = ef.iter().zip(&eg).map(|(a, c)| *a.max(c)).collect();
                let shift = |e: &[u16]| -> WeylOperator {
                    let d: Vec<u16> = l.iter().zip(e).map(|(a, c)| a - c).collect();
                    WeylOperator::from_terms(n, [(&d[..n], &d[n..], int(1))])
                };
                let sf = shift(&ef).mul(f);
                let sg = shift(&eg).mul(g);
                let s = sf.scale(&coefficient_at(&sg, &l)).sub(&sg.scale(&coefficient_at(&sf, &l)));
                check(b.normal_form(&s).unwrap().is_zero(), "S-pair reduces to zero")?;
            }
        }
        Ok(())
    })
}

/// Every syzygy `a` satisfies `Σ a_i g_i = 0`.
pub fn syzygy_sound() -> Outcome {
    run(prop::collection::vec(polynomial(3, 2, 3), 2..=3), |gens| {
        for a in syzygy(&gens).unwrap().iter() {
            check(a.dot(&gens).is_zero(), "syzygy relation")?;
        }
        Ok(())
    })
}

/// Every generator of `Ann^(1)` annihilates the function.
pub fn approx_ann_sound() -> Outcome {
    run(rational_function(2), |phi| {
        let ann = approx_ann(&phi, 1).unwrap();
        check(!ann.is_empty(), "nonempty")?;
        for p in ann.iter() {
            check(apply(p, &phi).unwrap().is_zero(), "annihilates")?;
        }
        Ok(())
    })
}

/// `<d_t> -> s`, `<t> -> s + 1` and `<t d_t - k> -> s - k`.
pub fn b_function_fixtures() -> Outcome {
    let t = WeylOperator::x(1, 0);
    let dt = WeylOperator::d(1, 0);
    if generic_b(std::slice::from_ref(&dt), &[1]).unwrap().b != univariate(&[0, 1]) {
        return Err(TestError::Fail("<dt>".into(), String::new()));
    }
    if generic_b(std::slice::from_ref(&t), &[1]).unwrap().b != univariate(&[1, 1]) {
        return Err(TestError::Fail("<t>".into(), String::new()));
    }
    run(-20i64..=20, move |k| {
        let e = t.mul(&dt).sub(&WeylOperator::constant(1, int(k)));
        check(generic_b(&[e], &[1]).unwrap().b == univariate(&[-k, 1]), "Euler b-function")
    })
}

pub const ALL: [(&str, fn() -> Outcome); 8] = [
    ("Weyl relations and associativity", weyl_relations),
    ("apply/mul compatibility", apply_compatible),
    ("Fourier morphism and inverse", fourier_morphism),
    ("commutative GB S-pairs and membership", commutative_gb),
    ("Weyl GB S-pairs and membership", weyl_gb),
    ("syzygy soundness", syzygy_sound),
    ("approx_ann soundness", approx_ann_sound),
    ("b-function fixtures", b_function_fixtures),
];
