//! Exact arithmetic for the rational cuspidal divisor class group `C(p^r)` of
//! Drinfeld modular curves `X_0(p^r)` over `F_q(T)`.
//!
//! Everything here is computed over the rationals with big integers; there is
//! no floating point anywhere. The main objects are:
//!
//! - [`params::ParamSpace`]: the validated triple `(q, deg p, r)` of a prime
//!   power `q`, the degree of the prime `p` in `F_q[T]`, and the exponent `r`
//!   of the level `n = p^r`.
//! - [`divisors::CuspidalDivisor`]: integer combinations of the height-class
//!   divisors `(P_{p^i})`, `0 <= i <= r`.
//! - [`lambda::LambdaMatrix`]: the `(r+1) x (r+1)` matrix expressing the
//!   divisors of the discriminant rescalings `Delta_{p^i}` in the height
//!   basis, together with its closed-form rational inverse and an independent
//!   Gaussian-elimination inversion oracle.
//! - [`etaquot::EtaQuotient`]: the image of a degree-0 divisor under the map
//!   `g` sending it to a formal product of `Delta_{p^i}` with rational
//!   exponents, so that `div(g(C)) = C`.
//! - [`cochain`]: van der Put harmonic-cochain values `r(Delta_{p^i})` on the
//!   supported Bruhat-Tits edges, extended linearly to eta quotients.
//! - [`orders`]: the order engine. Lower bounds come from denominators of
//!   cochain evaluations, upper bounds from the maximal-root lemmas for
//!   `Delta / Delta_{p^k}`; an order is reported exact only when the two
//!   bounds coincide.
//! - [`structure`]: the full cyclic decomposition of the prime-to-`(q-1)`
//!   part of `C(T^r)`, certified factor by factor, plus a golden `T^5`
//!   walkthrough.
//!
//! The library is the primary interface; see the `examples/` directory for
//! one runnable example per capability, and the `drinfeld-cuspidal` binary
//! for a table/JSON command-line front end.
//!
//! All types are immutable values and all operations are pure functions, so
//! everything can be shared freely across threads.

// Parity tests and floor/ceil index arithmetic are written out literally so
// they read like the formulas they implement.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod cli;
pub mod cochain;
pub mod divisors;
mod error;
pub mod etaquot;
pub mod lambda;
pub mod orders;
pub mod params;
pub mod rational;
pub mod report;
pub mod selftest;
pub mod structure;

pub use error::Error;
pub use params::ParamSpace;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
