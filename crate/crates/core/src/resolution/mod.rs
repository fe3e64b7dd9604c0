//! Combinatorial data of an embedded resolution and everything computed
//! directly from it: the topological zeta function, candidate poles,
//! the alpha-formula residue, and the log canonical threshold.

mod graph;
mod text;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::exactalg::{LinFactor, Poly, RationalFunction, Scalar};

pub use graph::{curve_strata_from_graph, DualGraph};

pub type ComponentId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("bad resolution data: {0}")]
    BadData(String),
    #[error("unknown component id {0}")]
    UnknownId(ComponentId),
    #[error("pole {0} is not simple: a stratum contains two components with this candidate pole")]
    HigherOrderPole(String),
    #[error("{0} is not a candidate pole of any component")]
    NotACandidate(String),
    #[error("no component meets the fiber over the origin")]
    EmptyFiber,
    #[error("bad dual graph: {0}")]
    BadGraph(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Exceptional,
    Strict,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Exceptional => "exceptional",
            ComponentKind::Strict => "strict",
        })
    }
}

/// One irreducible component `E_i` with numerical data `(N_i, nu_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub id: ComponentId,
    pub n_mult: i64,
    pub v_mult: i64,
    pub kind: ComponentKind,
    pub meets_fiber: bool,
}

impl Component {
    pub fn exceptional(id: ComponentId, n_mult: i64, v_mult: i64) -> Self {
        Component {
            id,
            n_mult,
            v_mult,
            kind: ComponentKind::Exceptional,
            meets_fiber: true,
        }
    }

    pub fn strict(id: ComponentId, n_mult: i64, v_mult: i64) -> Self {
        Component {
            id,
            n_mult,
            v_mult,
            kind: ComponentKind::Strict,
            meets_fiber: true,
        }
    }

    /// `-nu/N`.
    pub fn candidate_pole<T: Scalar>(&self) -> T {
        T::from_frac(-self.v_mult, self.n_mult)
    }

    /// `N*s + nu` as a denominator factor.
    pub fn factor(&self) -> LinFactor {
        LinFactor::new(self.n_mult, self.v_mult, 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Local,
    Global,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Local => "local",
            Variant::Global => "global",
        })
    }
}

/// A subset `I` of components together with the Euler characteristic of its
/// open stratum (intersected with the fiber over 0 in the local variant).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stratum {
    pub members: BTreeSet<ComponentId>,
    pub chi: i64,
}

impl Stratum {
    pub fn new(members: impl IntoIterator<Item = ComponentId>, chi: i64) -> Self {
        Stratum {
            members: members.into_iter().collect(),
            chi,
        }
    }
}

/// Strata with `chi = 0` may be omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionData {
    pub dim: u32,
    pub variant: Variant,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
}

impl ResolutionData {
    pub fn new(
        dim: u32,
        variant: Variant,
        components: Vec<Component>,
        strata: Vec<Stratum>,
    ) -> Result<Self, ResolutionError> {
        let data = ResolutionData {
            dim,
            variant,
            components,
            strata,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<(), ResolutionError> {
        if self.dim == 0 {
            return Err(ResolutionError::BadData(
                "dimension must be positive".into(),
            ));
        }
        let mut ids = BTreeSet::new();
        for c in &self.components {
            if !ids.insert(c.id) {
                return Err(ResolutionError::BadData(format!(
                    "duplicate component id {}",
                    c.id
                )));
            }
            if c.n_mult < 1 || c.v_mult < 1 {
                return Err(ResolutionError::BadData(format!(
                    "component {} has non-positive numerical data ({}, {})",
                    c.id, c.n_mult, c.v_mult
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for st in &self.strata {
            if let Some(id) = st.members.iter().find(|id| !ids.contains(id)) {
                return Err(ResolutionError::BadData(format!(
                    "stratum references unknown component id {id}"
                )));
            }
            if !seen.insert(&st.members) {
                return Err(ResolutionError::BadData(format!(
                    "duplicate stratum {}",
                    members_label(&st.members)
                )));
            }
        }
        Ok(())
    }

    pub fn component(&self, id: ComponentId) -> Result<&Component, ResolutionError> {
        self.components
            .iter()
            .find(|c| c.id == id)
            .ok_or(ResolutionError::UnknownId(id))
    }

    pub fn chi_of(&self, members: &BTreeSet<ComponentId>) -> i64 {
        self.strata
            .iter()
            .find(|s| &s.members == members)
            .map_or(0, |s| s.chi)
    }

    /// Same data with every Euler characteristic multiplied by `k`.
    pub fn scale_chi(&self, k: i64) -> Self {
        let mut out = self.clone();
        for st in &mut out.strata {
            st.chi *= k;
        }
        out
    }
}

pub(crate) fn members_label(members: &BTreeSet<ComponentId>) -> String {
    if members.is_empty() {
        return "empty".to_string();
    }
    members
        .iter()
        .map(ComponentId::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// `sum_I chi_I * prod_{i in I} 1/(N_i s + nu_i)`, normalized.
pub fn zeta_from_strata<T: Scalar>(
    data: &ResolutionData,
) -> Result<RationalFunction<T>, ResolutionError> {
    data.validate()?;
    let mut terms = Vec::with_capacity(data.strata.len());
    for st in data.strata.iter().filter(|s| s.chi != 0) {
        let mut factors = Vec::with_capacity(st.members.len());
        for id in &st.members {
            factors.push(data.component(*id)?.factor());
        }
        terms.push(RationalFunction::new(
            Poly::constant(T::from_i64(st.chi)),
            factors,
        ));
    }
    Ok(RationalFunction::sum(&terms))
}

/// `{ -nu_i/N_i }` over all components.
pub fn candidate_poles<T: Scalar>(data: &ResolutionData) -> BTreeSet<T> {
    data.components
        .iter()
        .map(Component::candidate_pole)
        .collect()
}

/// `alpha_j = nu_j - (nu_t/N_t) N_j`: the factor of `other` evaluated at the
/// candidate pole of `target`.
pub fn alpha<T: Scalar>(
    data: &ResolutionData,
    target: ComponentId,
    other: ComponentId,
) -> Result<T, ResolutionError> {
    let s0: T = data.component(target)?.candidate_pole();
    let j = data.component(other)?;
    Ok(alpha_at(j, &s0))
}

fn alpha_at<T: Scalar>(c: &Component, s0: &T) -> T {
    T::from_i64(c.v_mult) + s0.clone() * T::from_i64(c.n_mult)
}

/// Contribution of a single component with candidate pole `s0` to the residue
/// at `s0`: `(1/N_c) * sum_{I contains c} chi_I * prod_{j in I, j != c} 1/alpha_j`.
pub fn component_contribution<T: Scalar>(
    data: &ResolutionData,
    id: ComponentId,
    s0: &T,
) -> Result<T, ResolutionError> {
    let c = data.component(id)?;
    if &c.candidate_pole::<T>() != s0 {
        return Err(ResolutionError::NotACandidate(format!(
            "{s0} (component {id} has candidate pole {})",
            c.candidate_pole::<T>()
        )));
    }
    let mut sum = T::zero();
    for st in data
        .strata
        .iter()
        .filter(|s| s.chi != 0 && s.members.contains(&id))
    {
        let mut term = T::from_i64(st.chi);
        for other in st.members.iter().filter(|&&j| j != id) {
            let a = alpha_at(data.component(*other)?, s0);
            if a.is_zero() {
                return Err(ResolutionError::HigherOrderPole(s0.to_string()));
            }
            term = term / a;
        }
        sum = sum + term;
    }
    Ok(sum / T::from_i64(c.n_mult))
}

/// Residue at a simple candidate pole via the alpha-formula, summed over every
/// component whose candidate pole equals `s0`.
pub fn residue_via_alpha<T: Scalar>(data: &ResolutionData, s0: &T) -> Result<T, ResolutionError> {
    data.validate()?;
    let contributing: BTreeSet<ComponentId> = data
        .components
        .iter()
        .filter(|c| &c.candidate_pole::<T>() == s0)
        .map(|c| c.id)
        .collect();
    if contributing.is_empty() {
        return Err(ResolutionError::NotACandidate(s0.to_string()));
    }
    let clash = data
        .strata
        .iter()
        .filter(|s| s.chi != 0)
        .any(|s| s.members.intersection(&contributing).count() > 1);
    if clash {
        return Err(ResolutionError::HigherOrderPole(s0.to_string()));
    }
    contributing.iter().try_fold(T::zero(), |acc, id| {
        Ok(acc + component_contribution(data, *id, s0)?)
    })
}

/// Log canonical threshold: `min nu/N` over components meeting the fiber.
pub fn lct<T: Scalar>(data: &ResolutionData) -> Result<T, ResolutionError> {
    data.components
        .iter()
        .filter(|c| c.meets_fiber)
        .map(|c| T::from_frac(c.v_mult, c.n_mult))
        .min()
        .ok_or(ResolutionError::EmptyFiber)
}

/// Order and residue of every actual pole, keyed by pole.
pub fn pole_table<T: Scalar>(z: &RationalFunction<T>) -> BTreeMap<T, (u32, T)> {
    z.poles_with_orders()
        .into_iter()
        .map(|(p, ord)| {
            let r = z.residue_at(&p).expect("pole from poles_with_orders");
            (p, (ord, r))
        })
        .collect()
}
