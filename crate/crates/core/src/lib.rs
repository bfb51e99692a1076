//! Exact-arithmetic multiplicative number theory: Ramanujan sums, the
//! orbicyclic function E, the gcd-sum function A, their common Apostol-type
//! generalization, counts of constrained linear congruences, and empirical
//! asymptotics for partial sums of the diagonal functions.
//!
//! Every quantity is computed by at least two independent routes (defining
//! sum, convolution over divisors, closed multiplicative form) and the
//! routes are cross-checked in the test and verification suites.

pub mod arith;
pub mod asymptotics;
pub mod congruence;
pub mod error;
pub mod gcdsum;
pub mod orbicyclic;
pub mod ramanujan;
pub mod suites;
pub mod unified;

pub use arith::{ArgTuple, Factorization, MultiplicativeRule, Rational};
pub use error::{Error, Result};
