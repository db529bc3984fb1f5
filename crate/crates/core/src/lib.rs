//! Exact umbral calculus over the rationals.
//!
//! Formal power series in `t` act on polynomials in `x` both as linear
//! functionals (the pairing `<f(t) | p(x)>`) and as linear operators
//! (`t^k x^n = (n)_k x^(n-k)`). On top of that sit Appell sequences, the
//! higher-order Bernoulli and Hermite families, the Bernoulli-Hermite hybrid
//! family and a catalog of identity checkers that evaluate both sides of each
//! statement in exact rational arithmetic.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod algebra;
mod error;
pub mod families;
pub mod identities;
pub mod series;
pub mod umbral;

pub use algebra::{binomial, factorial, falling_factorial, parse_rational, Poly, Rational};
pub use error::{Error, Result};
pub use families::{FamilyId, FamilyParams, HKind};
pub use identities::{CheckGrid, CheckReport, IdentityId, Verdict};
pub use series::{NamedSeries, Series};
pub use umbral::AppellSpec;

/// Default truncation guard: `n_max + |a|_max + 4`.
pub fn default_guard(n_max: usize, a_abs_max: usize) -> usize {
    n_max + a_abs_max + 4
}
