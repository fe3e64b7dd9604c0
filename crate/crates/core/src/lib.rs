//! Exact topological zeta functions computed from embedded-resolution data.
//!
//! The core algebra ([`exactalg`]) is generic over an exact [`Scalar`]; the
//! aliases below fix it to arbitrary-precision rationals, which is what the
//! family generators, the Newton-polyhedron oracle and the witness builder use.

pub mod cli;
pub mod exactalg;
pub mod families;
pub mod newton_oracle;
pub mod resolution;
pub mod witness;

pub use exactalg::{parse_rational, ExactAlgError, LinFactor, Poly, RationalFunction, Scalar};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Polynomial in `s` over [`Rational`].
pub type RatPoly = Poly<Rational>;
/// Rational function in `s` over [`Rational`].
pub type RatFunc = RationalFunction<Rational>;
/// Rational function over 64-bit rationals; fine for small data, panics on overflow.
pub type RatFunc64 = RationalFunction<num_rational::Rational64>;
