//! Exact arithmetic: rational scalars, polynomials in `s`, and rational
//! functions whose denominators stay factored into integer linear terms.

mod poly;
mod ratfunc;
mod scalar;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub use poly::Poly;
pub use ratfunc::{LinFactor, RationalFunction};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactAlgError {
    #[error("cannot evaluate at {0}: it is a pole")]
    EvalAtPole(String),
    #[error("{0} is not a pole")]
    NotAPole(String),
    #[error("invalid rational '{0}': expected p/q or p with an optional leading '-'")]
    BadRational(String),
}

/// Parses `p/q` or `p` with an optional leading `-`. Decimals are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational, ExactAlgError> {
    let bad = || ExactAlgError::BadRational(text.to_string());
    let t = text.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num * sign, den))
}
