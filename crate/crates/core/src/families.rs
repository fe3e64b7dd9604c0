//! Resolution data for the polynomial families whose poles are studied:
//!
//! * `x1^i + x2^2 + ... + xn^2` (family A, split by the parity of `i`),
//! * the plane curves `x^a (x^b + y^2)` (family B),
//! * `x1^a (x1^b + x2^2) + x3^2 + ... + xn^2` (family C),
//! * plain sums of squares, the `i = 2` member of family A in any dimension.
//!
//! Only family B and the sums of squares come with a complete stratification.
//! For A and C the data holds the target component, its neighbours and the
//! strata through the target, which is exactly what the alpha-formula needs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::resolution::{
    alpha, component_contribution, curve_strata_from_graph, residue_via_alpha, Component,
    ComponentId, DualGraph, ResolutionData, ResolutionError, Stratum, Variant,
};
use crate::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("alpha of component {id}: tabulated {tabulated}, numerical data gives {derived}")]
    AlphaMismatch {
        id: ComponentId,
        tabulated: String,
        derived: String,
    },
    #[error("target pole: expected {expected}, numerical data gives {derived}")]
    PoleMismatch { expected: String, derived: String },
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    AEven,
    AOdd,
    Curve,
    C,
    SumOfSquares,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::AEven => "A-even",
            FamilyKind::AOdd => "A-odd",
            FamilyKind::Curve => "B",
            FamilyKind::C => "C",
            FamilyKind::SumOfSquares => "sum-of-squares",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyParams {
    /// Exponent `i` of `x1`.
    Exponent(u32),
    /// Exponents `(a, b)` of `x1^a (x1^b + x2^2)`.
    Pair { a: u32, b: u32 },
    /// Number of squares.
    Squares(u32),
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::Exponent(i) => write!(f, "i={i}"),
            FamilyParams::Pair { a, b } => write!(f, "a={a},b={b}"),
            FamilyParams::Squares(m) => write!(f, "m={m}"),
        }
    }
}

/// One row of a blow-up sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpStep {
    pub index: u32,
    pub center: String,
    pub strict_transform: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyData {
    pub kind: FamilyKind,
    pub dim: u32,
    pub params: FamilyParams,
    pub data: ResolutionData,
    pub target_id: ComponentId,
    pub target_pole: Rational,
    /// Tabulated alpha values of the target's neighbours, each checked at
    /// construction against the numerical data.
    pub alphas: BTreeMap<ComponentId, Rational>,
    pub trace: Vec<BlowUpStep>,
    /// Whether `data` holds every nonzero stratum (and so determines `Z_top`).
    pub complete: bool,
}

impl FamilyData {
    pub fn residue_via_alpha(&self) -> Result<Rational, ResolutionError> {
        residue_via_alpha(&self.data, &self.target_pole)
    }

    pub fn polynomial(&self) -> String {
        family_polynomial(self.kind, self.dim, self.params)
    }

    /// File-format rendering with a descriptive header.
    pub fn emit_text(&self) -> String {
        let mut header = vec![format!(
            "family {} n={} {} f={}",
            self.kind,
            self.dim,
            self.params,
            self.polynomial()
        )];
        header.push(format!(
            "target component {} with candidate pole {}",
            self.target_id, self.target_pole
        ));
        if !self.complete {
            header.push("partial: target-pole strata only".to_string());
        }
        self.data.to_text(&header)
    }
}

pub fn family_polynomial(kind: FamilyKind, dim: u32, params: FamilyParams) -> String {
    let squares =
        |from: u32, to: u32| -> Vec<String> { (from..=to).map(|k| format!("x{k}^2")).collect() };
    match (kind, params) {
        (FamilyKind::AEven | FamilyKind::AOdd, FamilyParams::Exponent(i)) => {
            let mut terms = vec![format!("x1^{i}")];
            terms.extend(squares(2, dim));
            terms.join("+")
        }
        (FamilyKind::Curve, FamilyParams::Pair { a, b }) => format!("x1^{a}*(x1^{b}+x2^2)"),
        (FamilyKind::C, FamilyParams::Pair { a, b }) => {
            let mut terms = vec![format!("x1^{a}*(x1^{b}+x2^2)")];
            terms.extend(squares(3, dim));
            terms.join("+")
        }
        (_, FamilyParams::Squares(m)) => squares(1, m).join("+"),
        _ => unreachable!("family kind and parameter shape always agree"),
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn even(x: u32) -> bool {
    x.is_multiple_of(2)
}

fn strata_nonzero(rows: Vec<(Vec<ComponentId>, i64)>) -> Vec<Stratum> {
    rows.into_iter()
        .filter(|(_, chi)| *chi != 0)
        .map(|(m, chi)| Stratum::new(m, chi))
        .collect()
}

struct Draft {
    kind: FamilyKind,
    dim: u32,
    params: FamilyParams,
    components: Vec<Component>,
    strata: Vec<Stratum>,
    target_id: ComponentId,
    expected_pole: Rational,
    alphas: Vec<(ComponentId, Rational)>,
    trace: Vec<BlowUpStep>,
    complete: bool,
}

impl Draft {
    fn finish(self) -> Result<FamilyData, FamilyError> {
        let data = ResolutionData::new(self.dim, Variant::Local, self.components, self.strata)?;
        let target_pole: Rational = data.component(self.target_id)?.candidate_pole();
        if target_pole != self.expected_pole {
            return Err(FamilyError::PoleMismatch {
                expected: self.expected_pole.to_string(),
                derived: target_pole.to_string(),
            });
        }
        for (id, tabulated) in &self.alphas {
            let derived: Rational = alpha(&data, self.target_id, *id)?;
            if &derived != tabulated {
                return Err(FamilyError::AlphaMismatch {
                    id: *id,
                    tabulated: tabulated.to_string(),
                    derived: derived.to_string(),
                });
            }
        }
        Ok(FamilyData {
            kind: self.kind,
            dim: self.dim,
            params: self.params,
            data,
            target_id: self.target_id,
            target_pole,
            alphas: self.alphas.into_iter().collect(),
            trace: self.trace,
            complete: self.complete,
        })
    }
}

/// Euler characteristic of a smooth quadric hypersurface in `P^{m-1}`.
fn smooth_quadric_chi(m: u32) -> i64 {
    let m = m as i64;
    if m % 2 == 0 {
        m
    } else {
        m - 1
    }
}

fn sum_of_squares_draft(m: u32) -> Draft {
    let squares: Vec<String> = (1..=m).map(|k| format!("x{k}^2")).collect();
    if m == 1 {
        // x1^2 needs no blow-up: the non-reduced divisor {x1 = 0} is already a normal crossing
        return Draft {
            kind: FamilyKind::SumOfSquares,
            dim: 1,
            params: FamilyParams::Squares(1),
            components: vec![Component::strict(0, 2, 1)],
            strata: vec![Stratum::new([0], 1)],
            target_id: 0,
            expected_pole: q(-1, 2),
            alphas: vec![],
            trace: vec![],
            complete: true,
        };
    }
    let mi = m as i64;
    let quadric = smooth_quadric_chi(m);
    Draft {
        kind: FamilyKind::SumOfSquares,
        dim: m,
        params: FamilyParams::Squares(m),
        components: vec![Component::exceptional(1, 2, mi), Component::strict(0, 1, 1)],
        // E1 = P^{m-1} meets the strict transform in a smooth quadric; the fiber over 0 is E1
        strata: strata_nonzero(vec![(vec![1], mi - quadric), (vec![1, 0], quadric)]),
        target_id: 1,
        expected_pole: q(-mi, 2),
        alphas: vec![(0, q(2 - mi, 2))],
        trace: vec![BlowUpStep {
            index: 1,
            center: "origin".into(),
            strict_transform: format!("1+{}", squares[1..].join("+")),
        }],
        complete: true,
    }
}

/// `x1^2 + ... + xm^2` for `m >= 1`, resolved by one point blow-up (none for
/// `m = 1`). The data is complete. For `m = 2` the two lines of the strict
/// transform are kept as one component meeting `E1` in two points.
pub fn sum_of_squares(m: u32) -> Result<FamilyData, FamilyError> {
    if m == 0 {
        return Err(FamilyError::BadParams("need at least one square".into()));
    }
    sum_of_squares_draft(m).finish()
}

fn origin_trace(dim: u32, i: u32, steps: u32) -> Vec<BlowUpStep> {
    (1..=steps)
        .map(|k| {
            let e = i as i64 - 2 * k as i64;
            let lead = match e {
                e if e > 1 => format!("x1^{e}"),
                1 => "x1".to_string(),
                _ => "1".to_string(),
            };
            let rest: Vec<String> = (2..=dim).map(|j| format!("x{j}^2")).collect();
            BlowUpStep {
                index: k,
                center: "origin".into(),
                strict_transform: format!("{lead}+{}", rest.join("+")),
            }
        })
        .collect()
}

fn check_a_dim(n: u32) -> Result<(), FamilyError> {
    if n < 4 {
        return Err(FamilyError::BadParams(format!(
            "family A needs n >= 4, got n={n}"
        )));
    }
    Ok(())
}

/// `x1^i + x2^2 + ... + xn^2`, `i` even: `i/2` point blow-ups. Target is the
/// last exceptional component, with candidate pole `-(n-1)/2 - 1/i`.
pub fn family_a_even(n: u32, i: u32) -> Result<FamilyData, FamilyError> {
    check_a_dim(n)?;
    if i < 2 || !even(i) {
        return Err(FamilyError::BadParams(format!(
            "A-even needs even i >= 2, got i={i}"
        )));
    }
    let (ni, ii) = (n as i64, i as i64);
    let expected_pole = q(-(ni - 1), 2) - q(1, ii);
    if i == 2 {
        let mut d = sum_of_squares_draft(n);
        d.kind = FamilyKind::AEven;
        d.params = FamilyParams::Exponent(2);
        return d.finish();
    }
    let last = i / 2;
    let mut components: Vec<Component> = (1..=last)
        .map(|k| {
            let k64 = k as i64;
            Component::exceptional(k, 2 * k64, (ni - 1) * (k64 - 1) + ni)
        })
        .collect();
    components.push(Component::strict(0, 1, 1));
    let chi = if even(n) {
        [-1, 1, 2, ni - 2]
    } else {
        [1, 0, 0, ni - 1]
    };
    let strata = strata_nonzero(vec![
        (vec![last], chi[0]),
        (vec![last, last - 1], chi[1]),
        (vec![last, 0], chi[2]),
        (vec![last, last - 1, 0], chi[3]),
    ]);
    Draft {
        kind: FamilyKind::AEven,
        dim: n,
        params: FamilyParams::Exponent(i),
        components,
        strata,
        target_id: last,
        expected_pole,
        alphas: vec![(0, q(3 - ni, 2) - q(1, ii)), (last - 1, q(2, ii))],
        trace: origin_trace(n, i, last),
        complete: false,
    }
    .finish()
}

/// `x1^i + x2^2 + ... + xn^2`, `i` odd: `(i+1)/2` point blow-ups and one more
/// along the intersection of the last two exceptional components.
pub fn family_a_odd(n: u32, i: u32) -> Result<FamilyData, FamilyError> {
    check_a_dim(n)?;
    if i < 3 || even(i) {
        return Err(FamilyError::BadParams(format!(
            "A-odd needs odd i >= 3, got i={i}"
        )));
    }
    let (ni, ii) = (n as i64, i as i64);
    let low = (i - 1) / 2;
    let high = i.div_ceil(2);
    let target = (i + 3) / 2;
    let mut components: Vec<Component> = (1..=low)
        .map(|k| {
            let k64 = k as i64;
            Component::exceptional(k, 2 * k64, (ni - 1) * (k64 - 1) + ni)
        })
        .collect();
    // the last point blow-up happens where the strict transform is smooth, so N grows by 1
    components.push(Component::exceptional(
        high,
        ii,
        (ni - 1) * (ii - 1) / 2 + ni,
    ));
    components.push(Component::exceptional(target, 2 * ii, (ni - 1) * ii + 2));
    components.push(Component::strict(0, 1, 1));
    let chi = if even(n) {
        [-1, 1, ni - 1, 1, ni - 2]
    } else {
        [0, 0, ni - 1, 0, ni - 1]
    };
    let strata = strata_nonzero(vec![
        (vec![target], chi[0]),
        (vec![target, 0], chi[1]),
        (vec![target, high], chi[2]),
        (vec![target, low], chi[3]),
        (vec![target, low, 0], chi[4]),
    ]);
    let mut trace = origin_trace(n, i, high);
    trace.push(BlowUpStep {
        index: high + 1,
        center: format!("E{high} ∩ E{low}"),
        strict_transform: "normal crossings".into(),
    });
    Draft {
        kind: FamilyKind::AOdd,
        dim: n,
        params: FamilyParams::Exponent(i),
        components,
        strata,
        target_id: target,
        expected_pole: q(-(ni - 1), 2) - q(1, ii),
        alphas: vec![
            (0, q(3 - ni, 2) - q(1, ii)),
            (low, q(1, ii)),
            (high, q(ni - 1, 2)),
        ],
        trace,
        complete: false,
    }
    .finish()
}

/// Dispatches on the parity of `i`.
pub fn family_a(n: u32, i: u32) -> Result<FamilyData, FamilyError> {
    if even(i) {
        family_a_even(n, i)
    } else {
        family_a_odd(n, i)
    }
}

fn check_ab(a: u32, b: u32) -> Result<(), FamilyError> {
    if a == 0 || b == 0 || !even(a) || !even(b) || a == 2 {
        return Err(FamilyError::BadParams(format!(
            "need a, b positive even with a != 2, got a={a}, b={b}"
        )));
    }
    Ok(())
}

/// Plane curve `x^a (x^b + y^2)` with its full dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamilyData {
    pub a: u32,
    pub b: u32,
    pub graph: DualGraph,
    pub family: FamilyData,
}

impl CurveFamilyData {
    pub fn expected_pole(&self) -> Rational {
        q(-(self.b as i64 + 2), 2 * (self.a as i64 + self.b as i64))
    }
}

/// Chain `E_k(a+2k, k+1)`, `k = 1..b/2`; the strict transform of `x = 0`
/// carries `(a, 1)` and meets `E_1`; the two branches of `x^b + y^2` carry
/// `(1, 1)` and meet `E_{b/2}`.
pub fn family_b_curve(a: u32, b: u32) -> Result<CurveFamilyData, FamilyError> {
    check_ab(a, b)?;
    let (ai, bi) = (a as i64, b as i64);
    let last = b / 2;
    let mut vertices: Vec<Component> = (1..=last)
        .map(|k| Component::exceptional(k, ai + 2 * k as i64, k as i64 + 1))
        .collect();
    vertices.push(Component::strict(0, ai, 1));
    vertices.push(Component::strict(last + 1, 1, 1));
    vertices.push(Component::strict(last + 2, 1, 1));
    let mut edges: Vec<(ComponentId, ComponentId)> = (1..last).map(|k| (k, k + 1)).collect();
    edges.extend([(0, 1), (last, last + 1), (last, last + 2)]);
    let graph = DualGraph::new(vertices, edges)?;
    let data = curve_strata_from_graph(&graph)?;
    let trace = (1..=last)
        .map(|k| {
            let e = bi - 2 * k as i64;
            let inner = if e > 0 {
                format!("x1^{e}+x2^2")
            } else {
                "1+x2^2".into()
            };
            BlowUpStep {
                index: k,
                center: "origin".into(),
                strict_transform: inner,
            }
        })
        .collect();
    let target_pole: Rational = data.component(last)?.candidate_pole();
    let expected = q(-(bi + 2), 2 * (ai + bi));
    if target_pole != expected {
        return Err(FamilyError::PoleMismatch {
            expected: expected.to_string(),
            derived: target_pole.to_string(),
        });
    }
    let alphas = graph
        .neighbors(last)
        .into_iter()
        .map(|j| Ok((j, alpha(&data, last, j)?)))
        .collect::<Result<_, ResolutionError>>()?;
    Ok(CurveFamilyData {
        a,
        b,
        family: FamilyData {
            kind: FamilyKind::Curve,
            dim: 2,
            params: FamilyParams::Pair { a, b },
            data,
            target_id: last,
            target_pole,
            alphas,
            trace,
            complete: true,
        },
        graph,
    })
}

fn c_blow_up_trace(n: u32, a: u32, b: u32) -> Vec<BlowUpStep> {
    let squares: Vec<String> = (3..=n).rev().map(|k| format!("x{k}^2")).collect();
    let squares = squares.join("+");
    let line_center = {
        let mut c = vec!["x1".to_string()];
        c.extend((3..=n).map(|k| format!("x{k}")));
        format!("{}=0", c.join("="))
    };
    let power = |e: u32| match e {
        0 => "1".to_string(),
        1 => "x1".to_string(),
        e => format!("x1^{e}"),
    };
    let mut steps = Vec::new();
    for k in 1..=a / 2 {
        let e = a - 2 * k;
        let tail = if e == 0 {
            format!("{}+x2^2", power(b))
        } else {
            format!("{}*({}+x2^2)", power(e), power(b))
        };
        steps.push(BlowUpStep {
            index: k,
            center: line_center.clone(),
            strict_transform: format!("{squares}+{tail}"),
        });
    }
    let origin = format!("({})", vec!["0"; n as usize].join(","));
    for j in 1..=b / 2 {
        steps.push(BlowUpStep {
            index: a / 2 + j,
            center: origin.clone(),
            strict_transform: format!("{squares}+{}+x2^2", power(b - 2 * j)),
        });
    }
    steps
}

/// `x1^a (x1^b + x2^2) + x3^2 + ... + xn^2`: `a/2` blow-ups along a line then
/// `b/2` point blow-ups. Target is `E_{(a+b)/2}` with candidate pole
/// `-(b+2)/(2a+2b) - (n-2)/2`. When `(2+b) | (a+b)` the component
/// `E_{(a+b)/(2+b)}` shares that candidate pole and its strata are included.
pub fn family_c(n: u32, a: u32, b: u32) -> Result<FamilyData, FamilyError> {
    if n < 3 {
        return Err(FamilyError::BadParams(format!(
            "family C needs n >= 3, got n={n}"
        )));
    }
    check_ab(a, b)?;
    let (ni, ai, bi) = (n as i64, a as i64, b as i64);
    let mut components: Vec<Component> = (1..=a / 2)
        .map(|k| Component::exceptional(k, 2 * k as i64, (ni - 2) * k as i64 + 1))
        .collect();
    components.extend((1..=b / 2).map(|j| {
        let j64 = j as i64;
        Component::exceptional(a / 2 + j, ai + 2 * j64, (ni - 2) * (ai / 2 + j64) + j64 + 1)
    }));
    components.push(Component::strict(0, 1, 1));

    let t = (a + b) / 2;
    let chi = if even(n) {
        [-1, 1, 2, ni - 2]
    } else {
        [1, 0, 0, ni - 1]
    };
    let mut rows = vec![
        (vec![t], chi[0]),
        (vec![t, t - 1], chi[1]),
        (vec![t, 0], chi[2]),
        (vec![t, t - 1, 0], chi[3]),
    ];
    if let Some(k) = coincident_component(a, b) {
        let chi4 = if even(n) {
            [0, 0, 0, 0, ni - 2, ni - 2]
        } else {
            [0, 1, 1, 0, ni - 3, ni - 3]
        };
        rows.extend([
            (vec![k], chi4[0]),
            (vec![k, k - 1], chi4[1]),
            (vec![k, k + 1], chi4[2]),
            (vec![k, 0], chi4[3]),
            (vec![k, k - 1, 0], chi4[4]),
            (vec![k, k + 1, 0], chi4[5]),
        ]);
    }
    Draft {
        kind: FamilyKind::C,
        dim: n,
        params: FamilyParams::Pair { a, b },
        components,
        strata: strata_nonzero(rows),
        target_id: t,
        expected_pole: q(-(bi + 2), 2 * ai + 2 * bi) - q(ni - 2, 2),
        alphas: vec![
            (0, q(-((ni - 4) * ai + (ni - 3) * bi + 2), 2 * (ai + bi))),
            (t - 1, q(2 - ai, ai + bi)),
        ],
        trace: c_blow_up_trace(n, a, b),
        complete: false,
    }
    .finish()
}

/// `k = (a+b)/(2+b)` when it is an integer: the chain component sharing the
/// target's candidate pole.
pub fn coincident_component(a: u32, b: u32) -> Option<ComponentId> {
    (a + b).is_multiple_of(2 + b).then_some((a + b) / (2 + b))
}

/// Closed-form residue of family C at its target pole.
pub fn residue_closed_form_c(n: u32, a: u32, b: u32) -> Result<Rational, FamilyError> {
    if n < 3 {
        return Err(FamilyError::BadParams(format!(
            "family C needs n >= 3, got n={n}"
        )));
    }
    check_ab(a, b)?;
    let (n, a, b) = (n as i64, a as i64, b as i64);
    let lead = if n % 2 == 1 {
        -2 + 3 * a + 2 * b
    } else {
        2 + b
    };
    let num = lead * (n * a - 2 * a - b + n * b + 2);
    let den = (-2 + a) * (a + b) * (n * a - 4 * a + 2 + n * b - 3 * b);
    Ok(q(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SecondaryCheck {
    /// `(2+b)` does not divide `(a+b)`: no second component shares the pole.
    NotApplicable,
    Applicable {
        component: ComponentId,
        alpha_below: Rational,
        alpha_above: Rational,
        contribution: Rational,
    },
}

impl SecondaryCheck {
    pub fn contribution(&self) -> Rational {
        match self {
            SecondaryCheck::NotApplicable => Rational::zero(),
            SecondaryCheck::Applicable { contribution, .. } => contribution.clone(),
        }
    }
}

/// Alpha-formula contribution of `E_k`, `k = (a+b)/(2+b)`, to the residue of
/// family C at its target pole. The neighbour alphas are derived from the
/// numerical data and must equal `1/k` and `-1/k`.
pub fn secondary_contribution_check(n: u32, a: u32, b: u32) -> Result<SecondaryCheck, FamilyError> {
    let fam = family_c(n, a, b)?;
    let Some(k) = coincident_component(a, b) else {
        return Ok(SecondaryCheck::NotApplicable);
    };
    let below: Rational = alpha(&fam.data, k, k - 1)?;
    let above: Rational = alpha(&fam.data, k, k + 1)?;
    let kk = k as i64;
    for (id, derived, want) in [(k - 1, &below, q(1, kk)), (k + 1, &above, q(-1, kk))] {
        if *derived != want {
            return Err(FamilyError::AlphaMismatch {
                id,
                tabulated: want.to_string(),
                derived: derived.to_string(),
            });
        }
    }
    let contribution = component_contribution(&fam.data, k, &fam.target_pole)?;
    Ok(SecondaryCheck::Applicable {
        component: k,
        alpha_below: below,
        alpha_above: above,
        contribution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{lct, zeta_from_strata};

    #[test]
    fn a_even_4_4() {
        let f = family_a_even(4, 4).unwrap();
        let labels: Vec<_> = f
            .data
            .components
            .iter()
            .map(|c| (c.id, c.n_mult, c.v_mult))
            .collect();
        assert_eq!(labels, vec![(1, 2, 4), (2, 4, 7), (0, 1, 1)]);
        assert_eq!(f.target_pole, q(-7, 4));
        let chis: Vec<i64> = [vec![2], vec![2, 1], vec![2, 0], vec![2, 1, 0]]
            .into_iter()
            .map(|m| f.data.chi_of(&m.into_iter().collect()))
            .collect();
        assert_eq!(chis, vec![-1, 1, 2, 2]);
        assert_eq!(f.alphas[&0], q(-3, 4));
        assert_eq!(f.alphas[&1], q(1, 2));
        assert_eq!(f.residue_via_alpha().unwrap(), q(-7, 4));
    }

    #[test]
    fn a_even_degenerate_i2() {
        let f = family_a_even(5, 2).unwrap();
        assert_eq!(f.data.components[0].n_mult, 2);
        assert_eq!(f.data.components[0].v_mult, 5);
        assert_eq!(f.target_pole, q(-5, 2));
        assert_eq!(f.alphas[&0], q(-3, 2));
        assert_eq!(f.data.chi_of(&[1].into()), 1);
        let even = family_a_even(4, 2).unwrap();
        assert_eq!(even.data.chi_of(&[1].into()), 0);
        // complete data: the Laurent residue agrees
        let z = zeta_from_strata::<Rational>(&f.data).unwrap();
        assert_eq!(
            z.residue_at(&f.target_pole).unwrap(),
            f.residue_via_alpha().unwrap()
        );
    }

    #[test]
    fn a_bad_params() {
        assert!(matches!(
            family_a_even(4, 3),
            Err(FamilyError::BadParams(_))
        ));
        assert!(matches!(family_a_odd(4, 4), Err(FamilyError::BadParams(_))));
        assert!(matches!(
            family_a_even(3, 4),
            Err(FamilyError::BadParams(_))
        ));
    }

    #[test]
    fn a_odd_values() {
        let f = family_a_odd(4, 3).unwrap();
        let target = f.data.component(3).unwrap();
        assert_eq!((target.n_mult, target.v_mult), (6, 11));
        assert_eq!(f.target_pole, q(-11, 6));
        assert_eq!(f.residue_via_alpha().unwrap(), q(-11, 15));
        let f = family_a_odd(5, 3).unwrap();
        assert_eq!(f.target_pole, q(-7, 3));
        let t = f.data.component(3).unwrap();
        assert_eq!((t.n_mult, t.v_mult), (6, 14));
    }

    #[test]
    fn curve_family() {
        let c = family_b_curve(4, 2).unwrap();
        let z = zeta_from_strata::<Rational>(&c.family.data).unwrap();
        assert_eq!(z.to_string(), "(-2*s^2+2*s+1)/((s+1)*(3*s+1)*(4*s+1))");
        assert_eq!(c.expected_pole(), q(-1, 3));
        assert_eq!(lct::<Rational>(&c.family.data).unwrap(), q(1, 4));

        let c = family_b_curve(4, 4).unwrap();
        assert_eq!(c.family.target_pole, q(-3, 8));
        assert_eq!(c.family.data.chi_of(&[1].into()), 0);
        assert_eq!(c.family.data.chi_of(&[2].into()), -1);
        let z = zeta_from_strata::<Rational>(&c.family.data).unwrap();
        assert_eq!(z.pole_order(&q(-3, 8)), 1);

        assert!(matches!(
            family_b_curve(2, 2),
            Err(FamilyError::BadParams(_))
        ));
    }

    #[test]
    fn curve_chi_bookkeeping() {
        for (a, b) in [(4, 2), (6, 4), (8, 6)] {
            let c = family_b_curve(a, b).unwrap();
            let total: i64 = c.family.data.strata.iter().map(|s| s.chi).sum();
            let expected: i64 = c
                .graph
                .vertices
                .iter()
                .filter(|v| v.kind == crate::resolution::ComponentKind::Exceptional)
                .map(|v| 2 - c.graph.degree(v.id) as i64)
                .sum::<i64>()
                + c.graph.edges.len() as i64;
            assert_eq!(total, expected);
        }
    }

    #[test]
    fn family_c_labels() {
        let f = family_c(3, 4, 2).unwrap();
        let labels: Vec<_> = f
            .data
            .components
            .iter()
            .map(|c| (c.id, c.n_mult, c.v_mult))
            .collect();
        assert_eq!(labels, vec![(1, 2, 2), (2, 4, 3), (3, 6, 5), (0, 1, 1)]);
        assert_eq!(f.target_pole, q(-5, 6));
        assert_eq!(f.residue_via_alpha().unwrap(), q(-35, 6));
        assert_eq!(lct::<Rational>(&f.data).unwrap(), q(3, 4));

        let f = family_c(4, 4, 2).unwrap();
        let t = f.data.component(3).unwrap();
        assert_eq!((t.n_mult, t.v_mult), (6, 8));
        assert_eq!(f.target_pole, q(-4, 3));

        // printed labels E_{a/2+1}(a+2, (n-2)a/2+n) and E_{(a+b)/2}
        for (n, a, b) in [(5, 6, 4), (6, 8, 6), (3, 10, 8)] {
            let f = family_c(n, a, b).unwrap();
            let (ni, ai, bi) = (n as i64, a as i64, b as i64);
            let c = f.data.component(a / 2 + 1).unwrap();
            assert_eq!((c.n_mult, c.v_mult), (ai + 2, (ni - 2) * ai / 2 + ni));
            let c = f.data.component(a / 2).unwrap();
            assert_eq!((c.n_mult, c.v_mult), (ai, (ni - 2) * ai / 2 + 1));
            let c = f.data.component((a + b) / 2).unwrap();
            assert_eq!(
                (c.n_mult, c.v_mult),
                (ai + bi, (ni - 2) * (ai + bi) / 2 + bi / 2 + 1)
            );
        }
        assert!(matches!(family_c(3, 2, 2), Err(FamilyError::BadParams(_))));
        assert!(matches!(family_c(2, 4, 2), Err(FamilyError::BadParams(_))));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(residue_closed_form_c(3, 4, 2).unwrap(), q(-35, 6));
        assert_eq!(residue_closed_form_c(4, 4, 2).unwrap(), q(4, 3));
        assert_eq!(
            family_c(4, 4, 2).unwrap().residue_via_alpha().unwrap(),
            q(4, 3)
        );
    }

    #[test]
    fn secondary_checks() {
        assert_eq!(
            secondary_contribution_check(3, 4, 2).unwrap(),
            SecondaryCheck::NotApplicable
        );
        for n in [3, 4] {
            match secondary_contribution_check(n, 6, 2).unwrap() {
                SecondaryCheck::Applicable {
                    component,
                    alpha_below,
                    alpha_above,
                    contribution,
                } => {
                    assert_eq!(component, 2);
                    assert_eq!(alpha_below, q(1, 2));
                    assert_eq!(alpha_above, q(-1, 2));
                    assert!(contribution.is_zero());
                }
                other => panic!("expected applicable, got {other:?}"),
            }
        }
    }

    #[test]
    fn c_blow_up_rows() {
        let f = family_c(4, 4, 2).unwrap();
        let rows: Vec<_> = f
            .trace
            .iter()
            .map(|s| (s.center.as_str(), s.strict_transform.as_str()))
            .collect();
        assert_eq!(
            rows,
            vec![
                ("x1=x3=x4=0", "x4^2+x3^2+x1^2*(x1^2+x2^2)"),
                ("x1=x3=x4=0", "x4^2+x3^2+x1^2+x2^2"),
                ("(0,0,0,0)", "x4^2+x3^2+1+x2^2"),
            ]
        );
    }

    #[test]
    fn polynomials() {
        assert_eq!(
            family_a_even(4, 4).unwrap().polynomial(),
            "x1^4+x2^2+x3^2+x4^2"
        );
        assert_eq!(
            family_c(4, 6, 2).unwrap().polynomial(),
            "x1^6*(x1^2+x2^2)+x3^2+x4^2"
        );
        assert_eq!(sum_of_squares(1).unwrap().polynomial(), "x1^2");
        assert_eq!(
            family_b_curve(4, 2).unwrap().family.polynomial(),
            "x1^4*(x1^2+x2^2)"
        );
    }

    #[test]
    fn emit_marks_partial() {
        let text = family_c(3, 4, 2).unwrap().emit_text();
        assert!(text.contains("# partial: target-pole strata only"));
        let parsed = ResolutionData::parse(&text).unwrap();
        assert_eq!(parsed, family_c(3, 4, 2).unwrap().data);
        assert!(!family_b_curve(4, 2)
            .unwrap()
            .family
            .emit_text()
            .contains("partial"));
    }
}
