//! Closed-form `Z_top` of family C obtained from its Newton polyhedron.
//!
//! This is an independent route to the same function the resolution data
//! describes, and serves as an oracle for the alpha-formula residues. The
//! formula is transcribed term by term and only normalized at the end.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactalg::{LinFactor, Poly};
use crate::families::FamilyError;
use crate::{RatFunc, Rational, Scalar};

/// Parameters of family C together with the two linear forms
/// `A = (a+b)s + 1 + b/2 + (n-2)(a+b)/2` and `B = a s + 1 + (n-2)a/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NewtonParams {
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub a_form: LinFactor,
    pub b_form: LinFactor,
}

impl NewtonParams {
    pub fn new(n: u32, a: u32, b: u32) -> Result<Self, FamilyError> {
        if n < 3 || a == 0 || b == 0 || !a.is_multiple_of(2) || !b.is_multiple_of(2) || a == 2 {
            return Err(FamilyError::BadParams(format!(
                "need n >= 3 and a, b positive even with a != 2, got n={n}, a={a}, b={b}"
            )));
        }
        let (n, ai, bi) = (n as i64, a as i64, b as i64);
        Ok(NewtonParams {
            n: n as u32,
            a,
            b,
            a_form: LinFactor::new(ai + bi, 1 + bi / 2 + (n - 2) * (ai + bi) / 2, 1),
            b_form: LinFactor::new(ai, 1 + (n - 2) * ai / 2, 1),
        })
    }

    /// Root of `A`; the target pole of family C.
    pub fn root_a(&self) -> Rational {
        self.a_form.root()
    }

    /// Root of `B`; the candidate pole of `E_{a/2}`.
    pub fn root_b(&self) -> Rational {
        self.b_form.root()
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn big(x: BigInt) -> Rational {
    Rational::from_integer(x)
}

fn pow_neg2(d: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..d {
        acc *= Rational::from_i64(-2);
    }
    acc
}

/// The closed-form topological zeta function of
/// `x1^a (x1^b + x2^2) + x3^2 + ... + xn^2`, normalized.
pub fn zeta_newton_c(n: u32, a: u32, b: u32) -> Result<RatFunc, FamilyError> {
    let p = NewtonParams::new(n, a, b)?;
    let (n, ai, bi) = (n as i64, a as i64, b as i64);
    let inv_a = RatFunc::new(Poly::one(), [p.a_form]);
    let inv_b = RatFunc::new(Poly::one(), [p.b_form]);
    let inv_ab = &inv_a * &inv_b;
    let konst = |x: Rational| RatFunc::constant(x);

    // b/(2AB) and a/(2B)
    let b_over_2ab = inv_ab.scale(&Rational::from_frac(bi, 2));
    let a_over_2b = inv_b.scale(&Rational::from_frac(ai, 2));

    let head = RatFunc::sum([
        &b_over_2ab.scale(&Rational::from_i64(n - 1)),
        &inv_a,
        &a_over_2b.scale(&Rational::from_i64(n - 2)),
    ]);

    let mut bracket = Vec::new();
    let first = &a_over_2b + &b_over_2ab;
    for d in 1..=n - 1 {
        let c = big(binomial(n - 2, d + 1)) * pow_neg2(d);
        bracket.push(&konst(c) * &first);
    }
    for d in 1..=n - 1 {
        let c = big(binomial(n - 1, d)) * pow_neg2(d);
        bracket.push(&konst(c) * &inv_a);
    }
    for d in 1..=n - 2 {
        let c = big(binomial(n - 2, d)) * pow_neg2(d);
        bracket.push(&konst(c) * &b_over_2ab);
    }
    let bracket = RatFunc::sum(&bracket);
    let s_over_s1 = RatFunc::new(Poly::s(), [LinFactor::new(1, 1, 1)]);
    Ok(&head + &(&s_over_s1 * &bracket))
}
