use std::collections::{BTreeMap, BTreeSet};

use super::{
    Component, ComponentId, ComponentKind, ResolutionData, ResolutionError, Stratum, Variant,
};

/// Dual intersection graph: one vertex per component, one edge per
/// intersection. Edges are stored as `(min, max)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<Component>,
    pub edges: BTreeSet<(ComponentId, ComponentId)>,
}

impl DualGraph {
    pub fn new(
        vertices: Vec<Component>,
        edges: impl IntoIterator<Item = (ComponentId, ComponentId)>,
    ) -> Result<Self, ResolutionError> {
        let ids: BTreeSet<ComponentId> = vertices.iter().map(|v| v.id).collect();
        if ids.len() != vertices.len() {
            return Err(ResolutionError::BadGraph("duplicate vertex id".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(ResolutionError::BadGraph(format!("self-loop at {u}")));
            }
            for w in [u, v] {
                if !ids.contains(&w) {
                    return Err(ResolutionError::BadGraph(format!(
                        "edge to unknown vertex {w}"
                    )));
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(DualGraph {
            vertices,
            edges: set,
        })
    }

    pub fn degree(&self, id: ComponentId) -> usize {
        self.edges
            .iter()
            .filter(|(u, v)| *u == id || *v == id)
            .count()
    }

    pub fn neighbors(&self, id: ComponentId) -> Vec<ComponentId> {
        self.edges
            .iter()
            .filter_map(|&(u, v)| {
                if u == id {
                    Some(v)
                } else if v == id {
                    Some(u)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Local strata of a plane-curve resolution read off its dual graph.
///
/// Each exceptional vertex is a `P^1` so its open part has `chi = 2 - degree`;
/// each edge is a single point with `chi = 1`; strict-transform open parts
/// miss the fiber over the origin and contribute nothing.
pub fn curve_strata_from_graph(g: &DualGraph) -> Result<ResolutionData, ResolutionError> {
    let kinds: BTreeMap<ComponentId, ComponentKind> =
        g.vertices.iter().map(|v| (v.id, v.kind)).collect();
    if !kinds.values().any(|k| *k == ComponentKind::Exceptional) {
        return Err(ResolutionError::BadGraph("no exceptional vertex".into()));
    }
    for (u, v) in &g.edges {
        if kinds[u] == ComponentKind::Strict && kinds[v] == ComponentKind::Strict {
            return Err(ResolutionError::BadGraph(format!(
                "strict components {u} and {v} intersect; not a resolution"
            )));
        }
    }
    let mut strata = Vec::new();
    for v in g
        .vertices
        .iter()
        .filter(|v| v.kind == ComponentKind::Exceptional)
    {
        let chi = 2 - g.degree(v.id) as i64;
        if chi != 0 {
            strata.push(Stratum::new([v.id], chi));
        }
    }
    strata.extend(g.edges.iter().map(|&(u, v)| Stratum::new([u, v], 1)));
    ResolutionData::new(2, Variant::Local, g.vertices.clone(), strata)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_exceptional_vertex() {
        let g = DualGraph::new(vec![Component::exceptional(1, 1, 2)], []).unwrap();
        let d = curve_strata_from_graph(&g).unwrap();
        assert_eq!(d.strata, vec![Stratum::new([1], 2)]);
    }

    #[test]
    fn trivalent_vertex() {
        let g = DualGraph::new(
            vec![
                Component::exceptional(1, 6, 2),
                Component::strict(0, 4, 1),
                Component::strict(2, 1, 1),
                Component::strict(3, 1, 1),
            ],
            [(0, 1), (1, 2), (1, 3)],
        )
        .unwrap();
        let d = curve_strata_from_graph(&g).unwrap();
        assert_eq!(d.chi_of(&[1].into()), -1);
        assert_eq!(d.strata.iter().filter(|s| s.members.len() == 2).count(), 3);
        assert!(d
            .strata
            .iter()
            .filter(|s| s.members.len() == 2)
            .all(|s| s.chi == 1));
        assert_eq!(d.chi_of(&[0].into()), 0);
    }

    #[test]
    fn bad_graphs() {
        let v = vec![Component::exceptional(1, 2, 2), Component::strict(2, 1, 1)];
        assert!(DualGraph::new(v.clone(), [(1, 1)]).is_err());
        assert!(DualGraph::new(v.clone(), [(1, 7)]).is_err());
        let only_strict = DualGraph::new(vec![Component::strict(2, 1, 1)], []).unwrap();
        assert!(curve_strata_from_graph(&only_strict).is_err());
        let two_strict = DualGraph::new(
            vec![
                Component::exceptional(1, 2, 2),
                Component::strict(2, 1, 1),
                Component::strict(3, 1, 1),
            ],
            [(2, 3)],
        )
        .unwrap();
        assert!(curve_strata_from_graph(&two_strict).is_err());
    }
}
