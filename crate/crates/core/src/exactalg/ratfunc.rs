use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::render_int_poly;
use super::{ExactAlgError, Poly, Scalar};

/// `(n_coef*s + v_coef)^multiplicity` with `n_coef >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinFactor {
    pub n_coef: i64,
    pub v_coef: i64,
    pub multiplicity: u32,
}

impl LinFactor {
    pub fn new(n_coef: i64, v_coef: i64, multiplicity: u32) -> Self {
        assert!(n_coef >= 1, "linear factor needs a positive s-coefficient");
        assert!(
            multiplicity >= 1,
            "linear factor multiplicity must be positive"
        );
        LinFactor {
            n_coef,
            v_coef,
            multiplicity,
        }
    }

    pub fn root<T: Scalar>(&self) -> T {
        T::from_frac(-self.v_coef, self.n_coef)
    }

    /// `n_coef*s + v_coef`, ignoring the multiplicity.
    pub fn base_poly<T: Scalar>(&self) -> Poly<T> {
        Poly::linear(T::from_i64(self.n_coef), T::from_i64(self.v_coef))
    }

    fn gcd(&self) -> i64 {
        self.n_coef.gcd(&self.v_coef)
    }

    fn same_base(&self, other: &LinFactor) -> bool {
        self.n_coef == other.n_coef && self.v_coef == other.v_coef
    }

    /// Orders factors by root, ascending.
    fn cmp_root(&self, other: &LinFactor) -> Ordering {
        // -v1/n1 < -v2/n2  <=>  v1*n2 > v2*n1   (n1, n2 > 0)
        let lhs = self.v_coef as i128 * other.n_coef as i128;
        let rhs = other.v_coef as i128 * self.n_coef as i128;
        rhs.cmp(&lhs)
    }
}

impl fmt::Display for LinFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.n_coef == 1 {
            "s".to_string()
        } else {
            format!("{}*s", self.n_coef)
        };
        let body = match self.v_coef.cmp(&0) {
            Ordering::Greater => format!("({s}+{})", self.v_coef),
            Ordering::Less => format!("({s}-{})", -self.v_coef),
            Ordering::Equal => format!("({s})"),
        };
        if self.multiplicity == 1 {
            f.write_str(&body)
        } else {
            write!(f, "{body}^{}", self.multiplicity)
        }
    }
}

/// A rational function in `s` whose denominator is a product of integer
/// linear factors, kept unexpanded.
///
/// Normal form: every factor is primitive (`gcd(n, v) = 1`), factors with the
/// same root are merged, no factor root annihilates the numerator, and the
/// factors are sorted by root. Any constant produced while making factors
/// primitive is folded into the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    numer: Poly<T>,
    factors: Vec<LinFactor>,
}

impl<T: Scalar> RationalFunction<T> {
    /// Builds `numer / prod(factors)` and normalizes it.
    pub fn new(numer: Poly<T>, factors: impl IntoIterator<Item = LinFactor>) -> Self {
        let mut numer = numer;
        let mut merged: Vec<LinFactor> = Vec::new();
        for f in factors {
            let g = f.gcd();
            if g != 1 {
                let inv = T::from_frac(1, g);
                for _ in 0..f.multiplicity {
                    numer = numer.scale(&inv);
                }
            }
            let prim = LinFactor::new(f.n_coef / g, f.v_coef / g, f.multiplicity);
            match merged.iter_mut().find(|m| m.same_base(&prim)) {
                Some(m) => m.multiplicity += prim.multiplicity,
                None => merged.push(prim),
            }
        }
        Self::cancel(numer, merged)
    }

    /// Cancellation to fixpoint; input factors must already be primitive and merged.
    fn cancel(mut numer: Poly<T>, mut factors: Vec<LinFactor>) -> Self {
        if numer.is_zero() {
            return Self::zero();
        }
        for f in factors.iter_mut() {
            let root: T = f.root();
            let inv_n = T::from_frac(1, f.n_coef);
            while f.multiplicity > 0 {
                let (quot, rem) = numer.div_by_root(&root);
                if !rem.is_zero() {
                    break;
                }
                numer = quot.scale(&inv_n);
                f.multiplicity -= 1;
            }
        }
        factors.retain(|f| f.multiplicity > 0);
        factors.sort_by(LinFactor::cmp_root);
        RationalFunction { numer, factors }
    }

    pub fn zero() -> Self {
        RationalFunction {
            numer: Poly::zero(),
            factors: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RationalFunction {
            numer: p,
            factors: Vec::new(),
        }
    }

    pub fn s() -> Self {
        Self::from_poly(Poly::s())
    }

    /// `1 / (n*s + v)`.
    pub fn reciprocal_linear(n: i64, v: i64) -> Self {
        Self::new(Poly::one(), [LinFactor::new(n, v, 1)])
    }

    pub fn numer(&self) -> &Poly<T> {
        &self.numer
    }

    /// Denominator factors in normal form, sorted by root.
    pub fn factors(&self) -> &[LinFactor] {
        &self.factors
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            numer: self.numer.scale(c),
            factors: self.factors.clone(),
        }
    }

    /// Sums many terms. Each term is split into its polynomial part and its
    /// principal parts at every factor root; these are accumulated per root,
    /// so only the surviving poles are ever multiplied out.
    pub fn sum<'a>(terms: impl IntoIterator<Item = &'a Self>) -> Self
    where
        T: 'a,
    {
        let mut poly = Poly::zero();
        let mut parts: BTreeMap<(i64, i64), Vec<T>> = BTreeMap::new();
        for t in terms.into_iter().filter(|t| !t.is_zero()) {
            poly = &poly + &t.polynomial_part();
            for (idx, f) in t.factors.iter().enumerate() {
                let acc = parts.entry((f.n_coef, f.v_coef)).or_default();
                for (j, c) in t.principal_part(idx).into_iter().enumerate() {
                    match acc.get_mut(j) {
                        Some(a) => *a = a.clone() + c,
                        None => acc.push(c),
                    }
                }
            }
        }
        Self::from_parts(poly, parts)
    }

    /// Reassembles `poly + sum_r sum_j c_{r,j} (s - r)^-j`; the key of each
    /// entry is the primitive factor `(n, v)` with root `r`.
    fn from_parts(poly: Poly<T>, parts: BTreeMap<(i64, i64), Vec<T>>) -> Self {
        let mut pieces: Vec<(LinFactor, Vec<T>)> = Vec::new();
        for ((n, v), mut coeffs) in parts {
            while coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
            if !coeffs.is_empty() {
                pieces.push((LinFactor::new(n, v, coeffs.len() as u32), coeffs));
            }
        }
        let power = |f: &LinFactor, e: u32| f.base_poly::<T>().pow(e);
        let mut numer = pieces
            .iter()
            .fold(poly, |acc, (f, _)| &acc * &power(f, f.multiplicity));
        for (k, (f, coeffs)) in pieces.iter().enumerate() {
            let others = pieces
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .fold(Poly::one(), |acc, (_, (g, _))| {
                    &acc * &power(g, g.multiplicity)
                });
            // c (s - r)^-j = c n^j (n s + v)^-j
            let mut scale = T::one();
            let mut local = Poly::zero();
            for (j, c) in coeffs.iter().enumerate() {
                scale = scale * T::from_i64(f.n_coef);
                if !c.is_zero() {
                    let term =
                        power(f, f.multiplicity - 1 - j as u32).scale(&(c.clone() * scale.clone()));
                    local = &local + &term;
                }
            }
            numer = &numer + &(&local * &others);
        }
        if numer.is_zero() {
            return Self::zero();
        }
        let mut factors: Vec<LinFactor> = pieces.into_iter().map(|(f, _)| f).collect();
        factors.sort_by(LinFactor::cmp_root);
        RationalFunction { numer, factors }
    }

    /// Product of every denominator factor except the one at `skip`, expanded.
    fn denominator_without(&self, skip: Option<usize>) -> Poly<T> {
        self.factors
            .iter()
            .enumerate()
            .filter(|&(k, _)| Some(k) != skip)
            .fold(Poly::one(), |acc, (_, f)| {
                &acc * &f.base_poly().pow(f.multiplicity)
            })
    }

    fn polynomial_part(&self) -> Poly<T> {
        let den_deg: u32 = self.factors.iter().map(|f| f.multiplicity).sum();
        match self.numer.degree() {
            Some(d) if d >= den_deg as usize => {
                self.numer.div_rem(&self.denominator_without(None)).0
            }
            _ => Poly::zero(),
        }
    }

    /// Principal part at the root `r` of factor `idx`, of order `m`: entry
    /// `j - 1` is the coefficient of `(s - r)^-j`.
    fn principal_part(&self, idx: usize) -> Vec<T> {
        let pole = self.factors[idx];
        let s0: T = pole.root();
        let order = pole.multiplicity as usize;
        // numer / (n^m (s-s0)^m Q(s)): expand P(s0+t)/Q(s0+t) to order m-1
        let p = self.numer.taylor_shift(&s0);
        let q = self.denominator_without(Some(idx)).taylor_shift(&s0);
        let q0 = q.coeffs()[0].clone();
        let coeff =
            |poly: &Poly<T>, k: usize| poly.coeffs().get(k).cloned().unwrap_or_else(T::zero);
        let mut series: Vec<T> = Vec::with_capacity(order);
        for k in 0..order {
            let mut acc = coeff(&p, k);
            for j in 1..=k {
                acc = acc - coeff(&q, j) * series[k - j].clone();
            }
            series.push(acc / q0.clone());
        }
        let mut lead = T::one();
        for _ in 0..order {
            lead = lead * T::from_i64(pole.n_coef);
        }
        series.into_iter().rev().map(|c| c / lead.clone()).collect()
    }

    pub fn eval(&self, at: &T) -> Result<T, ExactAlgError> {
        let mut den = T::one();
        for f in &self.factors {
            let val = T::from_i64(f.n_coef) * at.clone() + T::from_i64(f.v_coef);
            if val.is_zero() {
                return Err(ExactAlgError::EvalAtPole(at.to_string()));
            }
            for _ in 0..f.multiplicity {
                den = den * val.clone();
            }
        }
        Ok(self.numer.eval(at) / den)
    }

    /// Actual poles (after cancellation) with their orders.
    pub fn poles_with_orders(&self) -> BTreeMap<T, u32> {
        self.factors
            .iter()
            .map(|f| (f.root(), f.multiplicity))
            .collect()
    }

    pub fn pole_order(&self, s0: &T) -> u32 {
        self.factors
            .iter()
            .find(|f| &f.root::<T>() == s0)
            .map_or(0, |f| f.multiplicity)
    }

    /// Coefficient of `(s - s0)^-1` in the Laurent expansion at a pole `s0`.
    pub fn residue_at(&self, s0: &T) -> Result<T, ExactAlgError> {
        let idx = self
            .factors
            .iter()
            .position(|f| &f.root::<T>() == s0)
            .ok_or_else(|| ExactAlgError::NotAPole(s0.to_string()))?;
        Ok(self.principal_part(idx).swap_remove(0))
    }
}

impl<T: Scalar> Add for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn add(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        RationalFunction::sum([self, rhs])
    }
}

impl<T: Scalar> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            numer: -&self.numer,
            factors: self.factors.clone(),
        }
    }
}

impl<T: Scalar> Sub for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn sub(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn mul(self, rhs: &RationalFunction<T>) -> RationalFunction<T> {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut factors = self.factors.clone();
        for f in &rhs.factors {
            match factors.iter_mut().find(|c| c.same_base(f)) {
                Some(c) => c.multiplicity += f.multiplicity,
                None => factors.push(*f),
            }
        }
        RationalFunction::cancel(&self.numer * &rhs.numer, factors)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<T: Scalar> $trait for RationalFunction<T> {
            type Output = RationalFunction<T>;

            fn $method(self, rhs: RationalFunction<T>) -> RationalFunction<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Canonical text form: `(<integer numerator>)/(<const>*<factors>)`, factors
/// sorted by root ascending; a function with trivial denominator renders as
/// its bare numerator.
impl<T: Scalar> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (content, prim) = self.numer.integer_content();
        if content.is_zero() {
            return f.write_str("0");
        }
        let num: Vec<BigInt> = prim.iter().map(|c| c * content.numer()).collect();
        let mut den: Vec<String> = Vec::new();
        if !content.denom().is_one() {
            den.push(content.denom().to_string());
        }
        den.extend(self.factors.iter().map(LinFactor::to_string));
        if den.is_empty() {
            f.write_str(&render_int_poly(&num))
        } else {
            write!(f, "({})/({})", render_int_poly(&num), den.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RatFunc, Rational};
    use num_rational::Ratio;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    fn poly(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| q(x, 1)).collect())
    }

    #[test]
    fn additive_identity() {
        let x = RatFunc::reciprocal_linear(2, 2);
        let y = &x + &RatFunc::zero();
        assert_eq!(y, x);
        assert_eq!(y.to_string(), "(1)/(2*(s+1))");
    }

    #[test]
    fn like_terms() {
        let x = RatFunc::reciprocal_linear(1, 1);
        assert_eq!(&x + &x, RatFunc::new(poly(&[2]), [LinFactor::new(1, 1, 1)]));
        assert_eq!((&x + &x).to_string(), "(2)/((s+1))");
    }

    #[test]
    fn forced_cancellation() {
        let x = RatFunc::new(
            poly(&[1, 1]),
            [LinFactor::new(1, 1, 1), LinFactor::new(3, 2, 1)],
        );
        assert_eq!(x, RatFunc::reciprocal_linear(3, 2));
        assert_eq!(x.to_string(), "(1)/((3*s+2))");
        let poles = x.poles_with_orders();
        assert_eq!(poles.into_iter().collect::<Vec<_>>(), vec![(q(-2, 3), 1)]);
    }

    #[test]
    fn same_root_factors_merge() {
        let x = RatFunc::new(
            Poly::one(),
            [LinFactor::new(2, 2, 1), LinFactor::new(1, 1, 1)],
        );
        assert_eq!(x.factors(), &[LinFactor::new(1, 1, 2)]);
        assert_eq!(x.to_string(), "(1)/(2*(s+1)^2)");
    }

    #[test]
    fn evaluation() {
        assert_eq!(
            RatFunc::reciprocal_linear(2, 2).eval(&q(0, 1)).unwrap(),
            q(1, 2)
        );
        let x = RatFunc::new(poly(&[0, 1]), [LinFactor::new(1, 1, 1)]);
        assert_eq!(x.eval(&q(1, 1)).unwrap(), q(1, 2));
        let z = RatFunc::new(
            poly(&[1, 2, -2]),
            [
                LinFactor::new(1, 1, 1),
                LinFactor::new(3, 1, 1),
                LinFactor::new(4, 1, 1),
            ],
        );
        assert!(matches!(
            z.eval(&q(-1, 3)),
            Err(ExactAlgError::EvalAtPole(_))
        ));
    }

    #[test]
    fn poles_simple() {
        let x = &RatFunc::reciprocal_linear(2, 2) * &RatFunc::reciprocal_linear(3, 1);
        let poles: Vec<_> = x.poles_with_orders().into_iter().collect();
        assert_eq!(poles, vec![(q(-1, 1), 1), (q(-1, 3), 1)]);
    }

    #[test]
    fn residues() {
        assert_eq!(
            RatFunc::reciprocal_linear(2, 2)
                .residue_at(&q(-1, 1))
                .unwrap(),
            q(1, 2)
        );
        let double = RatFunc::new(Poly::one(), [LinFactor::new(1, 1, 2)]);
        assert_eq!(double.residue_at(&q(-1, 1)).unwrap(), q(0, 1));
        // s/(s+1)^2 = 1/(s+1) - 1/(s+1)^2
        let x = RatFunc::new(poly(&[0, 1]), [LinFactor::new(1, 1, 2)]);
        assert_eq!(x.residue_at(&q(-1, 1)).unwrap(), q(1, 1));
        assert!(matches!(
            x.residue_at(&q(1, 1)),
            Err(ExactAlgError::NotAPole(_))
        ));
    }

    #[test]
    fn residue_order_three_with_other_factor() {
        // 1/((s)^3 (s-1)) around 0: -(1 + s + s^2 + ...)/s^3 -> residue -1
        let x = RatFunc::new(
            Poly::one(),
            [LinFactor::new(1, 0, 3), LinFactor::new(1, -1, 1)],
        );
        assert_eq!(x.residue_at(&q(0, 1)).unwrap(), q(-1, 1));
        assert_eq!(x.residue_at(&q(1, 1)).unwrap(), q(1, 1));
    }

    #[test]
    fn small_int_scalar() {
        let x: RationalFunction<Ratio<i64>> =
            &RationalFunction::reciprocal_linear(6, 2) + &RationalFunction::reciprocal_linear(3, 1);
        assert_eq!(x.to_string(), "(3)/(2*(3*s+1))");
        assert_eq!(x.residue_at(&Ratio::new(-1, 3)).unwrap(), Ratio::new(1, 2));
    }

    #[test]
    fn render_mixed_signs() {
        let x = RatFunc::new(
            poly(&[3]),
            [LinFactor::new(2, -1, 1), LinFactor::new(1, 0, 1)],
        );
        assert_eq!(x.to_string(), "(3)/((s)*(2*s-1))");
        assert_eq!(RatFunc::one().to_string(), "1");
        assert_eq!(RatFunc::zero().to_string(), "0");
    }
}
