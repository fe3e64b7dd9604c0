//! Pole witnesses: for a rational `s0` in `[-(n-1)/2, 0)` build a polynomial
//! in `n` variables whose topological zeta function has a pole at `s0`, and
//! record every exact check that confirms it.
//!
//! Routing, in order of preference:
//!
//! 1. `s0 = -(m-1)/2 - 1/i` with `4 <= m <= n`, `i >= 3`: family A in `m` variables.
//! 2. `s0 = -m/2`: the sum of `m` squares.
//! 3. otherwise `s0` lies strictly between `-(m-1)/2` and `-(m-2)/2` for a
//!    unique `m >= 2`; shift by `(m-2)/2` into `(-1/2, 0)`, solve for `(a, b)`
//!    and use the curve family (`m = 2`) or family C (`m >= 3`).
//!
//! The witness is then lifted to `n` variables, which leaves `Z_top` unchanged.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::families::{
    family_a, family_b_curve, family_c, family_polynomial, residue_closed_form_c,
    secondary_contribution_check, sum_of_squares, FamilyData, FamilyError, FamilyKind,
    FamilyParams,
};
use crate::newton_oracle::zeta_newton_c;
use crate::resolution::zeta_from_strata;
use crate::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("{0} is outside the supported range")]
    OutOfRange(String),
    #[error("cannot lift from dimension {from} to {to}")]
    BadDim { from: u32, to: u32 },
    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
}

/// Outcome of one named verification step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub s0: Rational,
    pub dim: u32,
    pub family: FamilyKind,
    pub params: FamilyParams,
    pub base_dim: u32,
    /// The witness polynomial in its base variables `x1..x_base_dim`.
    pub polynomial: String,
    /// Residue of `Z_top` at `s0` (zero exactly when the pole has order > 1).
    pub residue: Rational,
    pub pole_order: u32,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub checks: Vec<Check>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            writeln!(f, "{mark:4} {}: {}", c.name, c.detail)?;
        }
        write!(f, "verified={}", self.ok)
    }
}

impl WitnessCertificate {
    pub fn ring(&self) -> String {
        match self.dim {
            1 => "C[x1]".to_string(),
            d => format!("C[x1,...,x{d}]"),
        }
    }

    fn checks_line(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("{}:{}", c.name, if c.passed { "ok" } else { "fail" }))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Single-line `key=value` form.
    pub fn to_kv_line(&self) -> String {
        format!(
            "s0={} n={} family={} params={} base_dim={} f={} residue={} pole_order={} checks={}",
            self.s0,
            self.dim,
            self.family,
            self.params,
            self.base_dim,
            self.polynomial,
            self.residue,
            self.pole_order,
            self.checks_line()
        )
    }
}

impl fmt::Display for WitnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s0={}", self.s0)?;
        writeln!(f, "n={}", self.dim)?;
        writeln!(f, "family={}", self.family)?;
        writeln!(f, "params={}", self.params)?;
        writeln!(f, "base_dim={}", self.base_dim)?;
        writeln!(f, "f={}", self.polynomial)?;
        writeln!(f, "ring={}", self.ring())?;
        writeln!(f, "residue={}", self.residue)?;
        writeln!(f, "pole_order={}", self.pole_order)?;
        write!(f, "checks={}", self.checks_line())
    }
}

fn half(k: i64) -> Rational {
    Rational::from_frac(k, 2)
}

fn to_i64(x: &BigInt, what: &str) -> Result<i64, WitnessError> {
    x.to_i64()
        .ok_or_else(|| WitnessError::OutOfRange(format!("{what} {x} (too large)")))
}

/// Even `(a, b)`, `a >= 4`, with `-(b+2)/(2a+2b) = t`; the smallest such `a`.
pub fn solve_curve_params(t: &Rational) -> Result<(u32, u32), WitnessError> {
    if !(t.is_negative() && *t > half(-1)) {
        return Err(WitnessError::OutOfRange(format!("{t} (need -1/2 < t < 0)")));
    }
    let p = to_i64(&-t.numer(), "numerator")? as i128;
    let q = to_i64(t.denom(), "denominator")? as i128;
    let d = q - 2 * p;
    let mut a_start = (q / p + 1).max(4);
    if a_start % 2 == 1 {
        a_start += 1;
    }
    let mut a = a_start;
    while a <= a_start + 2 * d {
        let num = p * a - q;
        if num > 0 && num % d == 0 {
            let b = 2 * (num / d);
            let (a32, b32) = (u32::try_from(a), u32::try_from(b));
            return match (a32, b32) {
                (Ok(a), Ok(b)) => Ok((a, b)),
                _ => Err(WitnessError::OutOfRange(format!(
                    "{t} (parameters overflow)"
                ))),
            };
        }
        a += 2;
    }
    Err(WitnessError::InternalVerificationFailure(format!(
        "no even (a, b) found for {t}"
    )))
}

/// `Some(i)` when `x = -1/i` with `i >= min_i`.
fn as_negative_unit_fraction(x: &Rational, min_i: i64) -> Option<i64> {
    if x.is_negative() && (-x.numer()).is_one() {
        let i = x.denom().to_i64()?;
        (i >= min_i).then_some(i)
    } else {
        None
    }
}

fn lower_bound(dim: u32) -> Rational {
    half(-(dim as i64 - 1))
}

/// Base family, parameters and base dimension for `s0`, before lifting to `n`.
fn route(s0: &Rational, n: u32) -> Result<(FamilyKind, FamilyParams, u32), WitnessError> {
    let oor = |why: &str| WitnessError::OutOfRange(format!("s0={s0}, n={n} ({why})"));
    if n < 2 {
        return Err(oor("need n >= 2"));
    }
    if !s0.is_negative() {
        return Err(oor("need s0 < 0"));
    }
    let lower = lower_bound(n);
    if *s0 < lower {
        // below the interval only the discrete poles of family A in dimension n
        if n >= 4 {
            if let Some(i) = as_negative_unit_fraction(&(s0 - &lower), 2) {
                return Ok(a_route(n, i as u32));
            }
        }
        return Err(oor("below -(n-1)/2"));
    }
    for m in 4..=n {
        if let Some(i) = as_negative_unit_fraction(&(s0 - &lower_bound(m)), 3) {
            return Ok(a_route(m, i as u32));
        }
    }
    let twice = s0 * Rational::from_i64(2);
    if twice.is_integer() {
        let m = to_i64(&-twice.to_integer(), "half-integer")? as u32;
        return Ok((FamilyKind::SumOfSquares, FamilyParams::Squares(m), m));
    }
    // -(m-1)/2 < s0 < -(m-2)/2  <=>  m - 2 < -2 s0 < m - 1
    let m = to_i64(&(-twice).floor().to_integer(), "dimension")? + 2;
    let t = s0 + half(m - 2);
    let (a, b) = solve_curve_params(&t)?;
    let m = m as u32;
    if m == 2 {
        Ok((FamilyKind::Curve, FamilyParams::Pair { a, b }, 2))
    } else {
        Ok((FamilyKind::C, FamilyParams::Pair { a, b }, m))
    }
}

fn a_route(m: u32, i: u32) -> (FamilyKind, FamilyParams, u32) {
    if i == 2 {
        (FamilyKind::SumOfSquares, FamilyParams::Squares(m), m)
    } else if i.is_multiple_of(2) {
        (FamilyKind::AEven, FamilyParams::Exponent(i), m)
    } else {
        (FamilyKind::AOdd, FamilyParams::Exponent(i), m)
    }
}

fn build_family(
    kind: FamilyKind,
    params: FamilyParams,
    base_dim: u32,
) -> Result<FamilyData, FamilyError> {
    match (kind, params) {
        (FamilyKind::AEven | FamilyKind::AOdd, FamilyParams::Exponent(i)) => {
            let fam = family_a(base_dim, i)?;
            if fam.kind != kind {
                return Err(FamilyError::BadParams(format!(
                    "i={i} does not belong to {kind}"
                )));
            }
            Ok(fam)
        }
        (FamilyKind::Curve, FamilyParams::Pair { a, b }) if base_dim == 2 => {
            Ok(family_b_curve(a, b)?.family)
        }
        (FamilyKind::C, FamilyParams::Pair { a, b }) => family_c(base_dim, a, b),
        (FamilyKind::SumOfSquares, FamilyParams::Squares(m)) if m == base_dim => sum_of_squares(m),
        _ => Err(FamilyError::BadParams(format!(
            "{kind} with {params} in dimension {base_dim}"
        ))),
    }
}

/// Everything that is recomputed when a certificate is made or re-verified.
struct Evidence {
    residue: Rational,
    pole_order: u32,
    checks: Vec<Check>,
}

fn in_domain(s0: &Rational, dim: u32, kind: FamilyKind, base_dim: u32) -> bool {
    let below_ok = matches!(
        kind,
        FamilyKind::AEven | FamilyKind::AOdd | FamilyKind::SumOfSquares
    ) && base_dim == dim;
    s0.is_negative() && (*s0 >= lower_bound(dim) || below_ok)
}

fn gather_evidence(
    s0: &Rational,
    dim: u32,
    kind: FamilyKind,
    params: FamilyParams,
    base_dim: u32,
) -> Evidence {
    let mut checks = vec![
        Check::new(
            "dimension",
            base_dim >= 1 && base_dim <= dim && dim >= 2,
            format!("base_dim={base_dim} <= n={dim}"),
        ),
        Check::new(
            "in-range",
            in_domain(s0, dim, kind, base_dim),
            format!("s0={s0}, -(n-1)/2={}", lower_bound(dim)),
        ),
    ];
    let fam = match build_family(kind, params, base_dim) {
        Ok(f) => {
            checks.push(Check::new(
                "family-constraints",
                true,
                format!("{kind} {params}"),
            ));
            f
        }
        Err(e) => {
            checks.push(Check::new("family-constraints", false, e.to_string()));
            return Evidence {
                residue: Rational::zero(),
                pole_order: 0,
                checks,
            };
        }
    };
    checks.push(Check::new(
        "target-pole",
        &fam.target_pole == s0,
        format!("-nu/N of E{} = {}", fam.target_id, fam.target_pole),
    ));

    let mut residue = Rational::zero();
    let mut pole_order = 0;
    if fam.complete {
        match zeta_from_strata::<Rational>(&fam.data) {
            Ok(z) => {
                pole_order = z.pole_order(s0);
                checks.push(Check::new(
                    "actual-pole",
                    pole_order >= 1,
                    format!("order {pole_order} in Z_top={z}"),
                ));
                if pole_order >= 1 {
                    residue = z.residue_at(s0).unwrap_or_else(|_| Rational::zero());
                }
                if pole_order == 1 {
                    checks.push(Check::new(
                        "residue-nonzero",
                        !residue.is_zero(),
                        residue.to_string(),
                    ));
                    match fam.residue_via_alpha() {
                        Ok(r) => checks.push(Check::new(
                            "alpha-residue",
                            r == residue,
                            format!("alpha-formula {r}, Laurent {residue}"),
                        )),
                        Err(e) => checks.push(Check::new("alpha-residue", false, e.to_string())),
                    }
                }
            }
            Err(e) => checks.push(Check::new("actual-pole", false, e.to_string())),
        }
    } else {
        match fam.residue_via_alpha() {
            Ok(r) => {
                residue = r;
                pole_order = u32::from(!residue.is_zero());
                checks.push(Check::new(
                    "residue-nonzero",
                    !residue.is_zero(),
                    residue.to_string(),
                ));
            }
            Err(e) => checks.push(Check::new("residue-nonzero", false, e.to_string())),
        }
    }

    if let (FamilyKind::C, FamilyParams::Pair { a, b }) = (kind, params) {
        match residue_closed_form_c(base_dim, a, b) {
            Ok(r) => checks.push(Check::new(
                "closed-form-residue",
                r == residue,
                format!("closed form {r}"),
            )),
            Err(e) => checks.push(Check::new("closed-form-residue", false, e.to_string())),
        }
        match zeta_newton_c(base_dim, a, b) {
            Ok(z) => {
                let order = z.pole_order(s0);
                let r = z.residue_at(s0).ok();
                checks.push(Check::new(
                    "newton-residue",
                    order == 1 && r.as_ref() == Some(&residue),
                    format!(
                        "order {order}, residue {}",
                        r.map_or_else(|| "-".to_string(), |r| r.to_string())
                    ),
                ));
            }
            Err(e) => checks.push(Check::new("newton-residue", false, e.to_string())),
        }
        match secondary_contribution_check(base_dim, a, b) {
            Ok(sc) => checks.push(Check::new(
                "coincident-contribution-zero",
                sc.contribution().is_zero(),
                format!("{sc:?}"),
            )),
            Err(e) => checks.push(Check::new(
                "coincident-contribution-zero",
                false,
                e.to_string(),
            )),
        }
    }

    Evidence {
        residue,
        pole_order,
        checks,
    }
}

/// Builds and verifies a witness for `s0` in dimension `n`.
///
/// Besides `[-(n-1)/2, 0)` this accepts, for `n >= 4`, the values
/// `-(n-1)/2 - 1/i` realized by family A. Never returns an unverified
/// certificate.
pub fn witness_for(s0: &Rational, n: u32) -> Result<WitnessCertificate, WitnessError> {
    let (family, params, base_dim) = route(s0, n)?;
    let ev = gather_evidence(s0, n, family, params, base_dim);
    if let Some(bad) = ev.checks.iter().find(|c| !c.passed) {
        return Err(WitnessError::InternalVerificationFailure(format!(
            "{}: {}",
            bad.name, bad.detail
        )));
    }
    Ok(WitnessCertificate {
        s0: s0.clone(),
        dim: n,
        family,
        params,
        base_dim,
        polynomial: family_polynomial(family, base_dim, params),
        residue: ev.residue,
        pole_order: ev.pole_order,
        checks: ev.checks,
    })
}

/// Views the witness as a polynomial in `n_new` variables.
pub fn lift_dimension(
    cert: &WitnessCertificate,
    n_new: u32,
) -> Result<WitnessCertificate, WitnessError> {
    if n_new < cert.dim {
        return Err(WitnessError::BadDim {
            from: cert.dim,
            to: n_new,
        });
    }
    let mut out = cert.clone();
    out.dim = n_new;
    if n_new != cert.dim {
        out.checks =
            gather_evidence(&cert.s0, n_new, cert.family, cert.params, cert.base_dim).checks;
    }
    Ok(out)
}

/// Re-runs every check from the stored parameters.
pub fn verify_certificate(cert: &WitnessCertificate) -> VerificationReport {
    let ev = gather_evidence(&cert.s0, cert.dim, cert.family, cert.params, cert.base_dim);
    let mut checks = ev.checks;
    checks.push(Check::new(
        "stored-residue",
        ev.residue == cert.residue && ev.pole_order == cert.pole_order,
        format!(
            "stored {} (order {}), recomputed {} (order {})",
            cert.residue, cert.pole_order, ev.residue, ev.pole_order
        ),
    ));
    checks.push(Check::new(
        "pole-evidence",
        cert.pole_order >= 2 || !cert.residue.is_zero(),
        "nonzero residue or pole of order >= 2 in complete data",
    ));
    let expected_poly = family_polynomial(cert.family, cert.base_dim, cert.params);
    checks.push(Check::new(
        "polynomial",
        expected_poly == cert.polynomial,
        expected_poly,
    ));
    VerificationReport {
        ok: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// Reduced rationals `-p/q` in `[lo, 0)` with `q <= max_den`, ascending.
pub fn rationals_in(lo: &Rational, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=max_den {
        let qb = BigInt::from(q);
        let mut p = BigInt::one();
        loop {
            let x = Rational::new(-p.clone(), qb.clone());
            if x < *lo {
                break;
            }
            if p.gcd(&qb).is_one() {
                out.push(x);
            }
            p += 1;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_frac(n, d)
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_curve_params(&q(-1, 3)).unwrap(), (4, 2));
        assert_eq!(solve_curve_params(&q(-2, 5)).unwrap(), (4, 6));
        assert_eq!(solve_curve_params(&q(-1, 4)).unwrap(), (6, 2));
        assert!(matches!(
            solve_curve_params(&q(-1, 2)),
            Err(WitnessError::OutOfRange(_))
        ));
        assert!(matches!(
            solve_curve_params(&q(0, 1)),
            Err(WitnessError::OutOfRange(_))
        ));
    }

    #[test]
    fn solve_round_trip_all_small() {
        for t in rationals_in(&q(-1, 2), 60) {
            if t == q(-1, 2) {
                continue;
            }
            let (a, b) = solve_curve_params(&t).unwrap();
            assert!(a >= 4 && a % 2 == 0 && b >= 2 && b % 2 == 0);
            assert_eq!(q(-(b as i64 + 2), 2 * (a as i64 + b as i64)), t);
        }
    }

    #[test]
    fn routes() {
        let c = witness_for(&q(-1, 3), 2).unwrap();
        assert_eq!(
            (c.family, c.params),
            (FamilyKind::Curve, FamilyParams::Pair { a: 4, b: 2 })
        );
        assert_eq!(c.pole_order, 1);

        let c = witness_for(&q(-5, 6), 3).unwrap();
        assert_eq!(
            (c.family, c.params),
            (FamilyKind::C, FamilyParams::Pair { a: 4, b: 2 })
        );
        assert_eq!(c.residue, q(-35, 6));

        let c = witness_for(&q(-7, 4), 4).unwrap();
        assert_eq!(
            (c.family, c.params),
            (FamilyKind::AEven, FamilyParams::Exponent(4))
        );
        assert_eq!(c.residue, q(-7, 4));

        let c = witness_for(&q(-3, 2), 4).unwrap();
        assert_eq!((c.family, c.base_dim), (FamilyKind::SumOfSquares, 3));
        assert_eq!(c.polynomial, "x1^2+x2^2+x3^2");
        assert_eq!(c.residue, q(-3, 2));

        let c = witness_for(&q(-1, 2), 2).unwrap();
        assert_eq!(
            (c.family, c.base_dim, c.residue.clone()),
            (FamilyKind::SumOfSquares, 1, q(1, 2))
        );

        let c = witness_for(&q(-1, 1), 3).unwrap();
        assert_eq!(
            (c.family, c.base_dim, c.pole_order),
            (FamilyKind::SumOfSquares, 2, 2)
        );

        assert!(matches!(
            witness_for(&q(0, 1), 3),
            Err(WitnessError::OutOfRange(_))
        ));
        assert!(matches!(
            witness_for(&q(-3, 2), 3),
            Err(WitnessError::OutOfRange(_))
        ));
        assert!(matches!(
            witness_for(&q(-1, 3), 1),
            Err(WitnessError::OutOfRange(_))
        ));
    }

    #[test]
    fn deterministic() {
        assert_eq!(witness_for(&q(-7, 10), 3), witness_for(&q(-7, 10), 3));
    }

    #[test]
    fn lift() {
        let c = witness_for(&q(-1, 3), 2).unwrap();
        let l = lift_dimension(&c, 5).unwrap();
        assert_eq!((l.dim, &l.residue, l.pole_order), (5, &c.residue, 1));
        assert!(verify_certificate(&l).ok);
        assert_eq!(lift_dimension(&c, 2).unwrap(), c);
        assert_eq!(
            lift_dimension(&l, 4),
            Err(WitnessError::BadDim { from: 5, to: 4 })
        );
    }

    #[test]
    fn verification_catches_tampering() {
        let c = witness_for(&q(-2, 5), 2).unwrap();
        assert!(verify_certificate(&c).ok);
        let mut bad = c.clone();
        bad.residue = Rational::zero();
        assert!(!verify_certificate(&bad).ok);
        let mut bad = c.clone();
        bad.params = FamilyParams::Pair { a: 2, b: 2 };
        assert!(!verify_certificate(&bad).ok);
        let mut bad = c;
        bad.s0 = q(-3, 7);
        assert!(!verify_certificate(&bad).ok);
    }

    #[test]
    fn rendering() {
        let c = witness_for(&q(-5, 6), 3).unwrap();
        let text = c.to_string();
        assert!(text.starts_with("s0=-5/6\nn=3\nfamily=C\nparams=a=4,b=2\n"));
        assert!(text.contains("residue=-35/6"));
        assert!(c
            .to_kv_line()
            .starts_with("s0=-5/6 n=3 family=C params=a=4,b=2 base_dim=3"));
    }
}
