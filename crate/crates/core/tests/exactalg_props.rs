#![allow(clippy::eq_op)]

mod common;

use std::collections::BTreeSet;

use common::{q, shift, small_poly, small_ratfunc, small_rational};
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use topzeta::{parse_rational, LinFactor, Poly, RatFunc, RatFunc64, RatPoly, Rational, Scalar};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

/// The same function over `Ratio<i64>`; only valid for small instances.
fn to_small(x: &RatFunc) -> RatFunc64 {
    let coeffs = x
        .numer()
        .coeffs()
        .iter()
        .map(|c| Rational64::new(c.numer().to_i64().unwrap(), c.denom().to_i64().unwrap()))
        .collect();
    RatFunc64::new(Poly::new(coeffs), x.factors().iter().copied())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn additive_group(x in small_ratfunc(), y in small_ratfunc(), z in small_ratfunc()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x + &RatFunc::zero(), x.clone());
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&(&x - &y) + &y, x);
    }

    #[test]
    fn multiplicative_laws(x in small_ratfunc(), y in small_ratfunc(), z in small_ratfunc()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &RatFunc::one(), x);
    }

    #[test]
    fn normal_form_is_canonical(x in small_ratfunc()) {
        let again = RatFunc::new(x.numer().clone(), x.factors().iter().copied());
        prop_assert_eq!(&again, &x);
        // no factor root annihilates the numerator; roots strictly increase
        for f in x.factors() {
            prop_assert!(!x.numer().eval(&f.root::<Rational>()).is_zero());
        }
        let roots: Vec<Rational> = x.factors().iter().map(LinFactor::root).collect();
        prop_assert!(roots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn residue_is_limit_at_simple_poles(x in small_ratfunc()) {
        for (p, order) in x.poles_with_orders() {
            if order == 1 {
                let r = x.residue_at(&p).unwrap();
                prop_assert_eq!(r, (&shift(&p) * &x).eval(&p).unwrap());
            }
        }
    }

    #[test]
    fn residue_is_linear(x in small_ratfunc(), y in small_ratfunc(), c in small_rational()) {
        let sum = &x + &y.scale(&c);
        let res = |f: &RatFunc, p: &Rational| f.residue_at(p).unwrap_or_else(|_| q(0, 1));
        for p in sum.poles_with_orders().keys() {
            prop_assert_eq!(res(&sum, p), res(&x, p) + c.clone() * res(&y, p));
        }
    }

    #[test]
    fn poles_of_sum_are_operand_roots(x in small_ratfunc(), y in small_ratfunc()) {
        let roots: BTreeSet<Rational> =
            x.factors().iter().chain(y.factors()).map(LinFactor::root).collect();
        for p in (&x + &y).poles_with_orders().keys() {
            prop_assert!(roots.contains(p));
        }
    }

    #[test]
    fn eval_is_a_homomorphism(x in small_ratfunc(), y in small_ratfunc(), t in small_rational()) {
        if let (Ok(a), Ok(b)) = (x.eval(&t), y.eval(&t)) {
            prop_assert_eq!((&x + &y).eval(&t).unwrap(), &a + &b);
            prop_assert_eq!((&x * &y).eval(&t).unwrap(), a * b);
        }
    }

    #[test]
    fn poly_division(p in small_poly(), d in small_poly()) {
        prop_assume!(!d.is_zero());
        let (quot, rem) = p.div_rem(&d);
        prop_assert_eq!(&(&quot * &d) + &rem, p);
        prop_assert!(rem.degree().is_none_or(|r| r < d.degree().unwrap()));
    }

    #[test]
    fn small_scalar_agrees_with_bigrational(x in small_ratfunc(), y in small_ratfunc()) {
        let big = &x + &y;
        let small = &to_small(&x) + &to_small(&y);
        prop_assert_eq!(small.to_string(), big.to_string());
        for f in big.factors() {
            let r = big.residue_at(&f.root()).unwrap();
            let r64 = small.residue_at(&f.root()).unwrap();
            prop_assert_eq!(r64.to_big_rational(), r);
        }
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let x = q(n, d);
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }
}

#[test]
fn higher_order_residue() {
    // 1/(s+1)^2 + 3/(s+1) - 1/(2s+1)
    let x = RatFunc::sum([
        &RatFunc::new(Poly::one(), [LinFactor::new(1, 1, 2)]),
        &RatFunc::reciprocal_linear(1, 1).scale(&q(3, 1)),
        &RatFunc::reciprocal_linear(2, 1).scale(&q(-1, 1)),
    ]);
    assert_eq!(x.pole_order(&q(-1, 1)), 2);
    assert_eq!(x.residue_at(&q(-1, 1)).unwrap(), q(3, 1));
    assert_eq!(x.residue_at(&q(-1, 2)).unwrap(), q(-1, 2));
    let improper = &x + &RatFunc::from_poly(RatPoly::linear(q(1, 1), q(2, 1)));
    assert_eq!(improper.residue_at(&q(-1, 1)).unwrap(), q(3, 1));
    assert_eq!(improper.eval(&q(0, 1)).unwrap(), q(1 + 3 - 1 + 2, 1));
}
