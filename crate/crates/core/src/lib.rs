//! Exact computer algebra for holonomic systems of period integrals.
//!
//! The crate computes approximate annihilating ideals of rational functions
//! in the Weyl algebra, integrates them with the D-module integration
//! algorithm (Fourier transform, generic b-function, restriction and a
//! module Gröbner elimination), and checks the result against a rank lower
//! bound obtained from a unimodular triangulation of a smooth Fano polytope.

pub mod algebra;
pub mod annihilator;
pub mod error;
pub mod fano;
pub mod groebner;
pub mod integration;
pub mod invariants;
pub mod parse;
pub mod pipeline;
pub mod stienstra;
pub mod weyl;

pub use error::{Error, Result};
