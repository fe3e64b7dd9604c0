#![allow(dead_code)]

use proptest::prelude::*;
use topzeta::{LinFactor, RatFunc, RatPoly, Rational, Scalar};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn small_poly() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(small_rational(), 0..=3).prop_map(RatPoly::new)
}

pub fn lin_factor() -> impl Strategy<Value = LinFactor> {
    (1i64..=4, 1i64..=5, 1u32..=2).prop_map(|(n, v, m)| LinFactor::new(n, v, m))
}

/// Random small rational function with a linear-factor denominator.
pub fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
    (small_poly(), prop::collection::vec(lin_factor(), 0..=3))
        .prop_map(|(p, fs)| RatFunc::new(p, fs))
}

/// `s - s0` as a rational function.
pub fn shift(s0: &Rational) -> RatFunc {
    RatFunc::from_poly(RatPoly::linear(Rational::from_i64(1), -s0.clone()))
}
