//! Exact arithmetic foundation: rationals, monomials, term orders,
//! polynomials, gcds and rational functions.

mod division;
pub mod gcd;
pub mod int;
mod monomial;
mod order;
mod poly;
mod ratfun;

pub use division::divide;
pub use int::Int;
pub use monomial::{Exps, Monomial};
pub use order::{compare, Key, ModuleOrder, OrderSpec, PositionRule};
pub(crate) use order::{KeyOrder, Row};
pub use poly::{grevlex_cmp, poly_arith, ArithOp, Polynomial};
pub(crate) use poly::write_terms;
pub use ratfun::RationalFunction;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
