//! Origami templates: a connected multigraph with a Delzant polytope at every
//! node and, at every edge, a facet shared by the two endpoint polytopes.
//!
//! Facet references are `(node, facet index)` pairs; that two references are
//! the same facet is checked geometrically.

mod orbit;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use orbit::{
    facet_classes, induced_template, orbit_poset_as_connected_sum, orbit_poset_glued,
    orbit_posets_agree, AgreementReport, FacetClass, OrbitPoset,
};

use crate::delzant::{
    coincide_near_facet, render_svg_marked, DelzantError, DelzantWitness, PolytopeJson,
    RationalPolytope,
};
use crate::surgery::SurgeryError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TemplateError {
    #[error("malformed template: {0}")]
    Malformed(String),
    #[error(transparent)]
    Delzant(#[from] DelzantError),
    #[error("template is not valid: {0}")]
    Invalid(String),
    #[error("template has a loop at node {node}, so it is not coorientable")]
    NotCooriented { node: usize },
    #[error("template graph is not a tree: {0}")]
    NotATree(String),
    #[error("normals are not constant on a facet class: {0}")]
    InconsistentNormals(String),
    #[error("empty intersection: {0}")]
    EmptyIntersection(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TemplateEdge {
    pub u: usize,
    pub v: usize,
    pub facet_u: usize,
    pub facet_v: usize,
}

impl TemplateEdge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The facet this edge uses at `node`, if `node` is an endpoint.
    pub fn facet_at(&self, node: usize) -> Option<usize> {
        if node == self.u {
            Some(self.facet_u)
        } else if node == self.v {
            Some(self.facet_v)
        } else {
            None
        }
    }
}

/// Nodes are indexed `0..nodes.len()`; `ids` keeps the identifiers of the
/// JSON document. Edge endpoints are node indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrigamiTemplate {
    pub ids: Vec<u64>,
    pub nodes: Vec<RationalPolytope>,
    pub edges: Vec<TemplateEdge>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: u64,
    pub polytope: PolytopeJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<TemplateEdge>,
}

impl OrigamiTemplate {
    /// Nodes get ids `0..`.
    pub fn new(
        nodes: Vec<RationalPolytope>,
        edges: Vec<TemplateEdge>,
    ) -> Result<Self, TemplateError> {
        let t = OrigamiTemplate {
            ids: (0..nodes.len() as u64).collect(),
            nodes,
            edges,
        };
        t.check_shape()?;
        Ok(t)
    }

    fn check_shape(&self) -> Result<(), TemplateError> {
        if self.nodes.is_empty() {
            return Err(TemplateError::Malformed("no nodes".into()));
        }
        if self.ids.len() != self.nodes.len() {
            return Err(TemplateError::Malformed("one id per node".into()));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() && e.facet_u != e.facet_v {
                return Err(TemplateError::Malformed(format!(
                    "edge {i}: a loop folds a single facet"
                )));
            }
            for (node, facet) in [(e.u, e.facet_u), (e.v, e.facet_v)] {
                let p = self
                    .nodes
                    .get(node)
                    .ok_or_else(|| TemplateError::Malformed(format!("edge {i}: no node {node}")))?;
                if facet >= p.facet_count() {
                    return Err(TemplateError::Malformed(format!(
                        "edge {i}: node {node} has no facet {facet}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.nodes[0].dim
    }

    /// Facets used by edges at `node`, with the edge index.
    pub fn fold_facets(&self, node: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == node {
                out.push((i, e.facet_u));
            }
            if e.v == node && !e.is_loop() {
                out.push((i, e.facet_v));
            }
        }
        out
    }

    pub(crate) fn fold_set(&self, node: usize) -> BTreeSet<usize> {
        self.fold_facets(node).into_iter().map(|(_, f)| f).collect()
    }

    pub fn to_json(&self) -> TemplateJson {
        TemplateJson {
            nodes: self
                .ids
                .iter()
                .zip(&self.nodes)
                .map(|(&id, p)| NodeJson {
                    id,
                    polytope: p.to_json(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| TemplateEdge {
                    u: self.ids[e.u] as usize,
                    v: self.ids[e.v] as usize,
                    ..*e
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &TemplateJson) -> Result<Self, TemplateError> {
        let mut index: BTreeMap<u64, usize> = BTreeMap::new();
        let mut nodes = Vec::new();
        let mut ids = Vec::new();
        for n in &doc.nodes {
            if index.insert(n.id, nodes.len()).is_some() {
                return Err(TemplateError::Malformed(format!(
                    "duplicate node id {}",
                    n.id
                )));
            }
            nodes.push(
                RationalPolytope::from_json(&n.polytope).map_err(|e| match e {
                    DelzantError::Malformed(m) => {
                        TemplateError::Malformed(format!("node {}: {m}", n.id))
                    }
                    other => TemplateError::Delzant(other),
                })?,
            );
            ids.push(n.id);
        }
        let look = |id: usize| {
            index.get(&(id as u64)).copied().ok_or_else(|| {
                TemplateError::Malformed(format!("edge refers to unknown node {id}"))
            })
        };
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                Ok(TemplateEdge {
                    u: look(e.u)?,
                    v: look(e.v)?,
                    ..*e
                })
            })
            .collect::<Result<Vec<_>, TemplateError>>()?;
        let t = OrigamiTemplate { ids, nodes, edges };
        t.check_shape()?;
        Ok(t)
    }

    pub fn from_json_str(text: &str) -> Result<Self, TemplateError> {
        let doc: TemplateJson =
            serde_json::from_str(text).map_err(|e| TemplateError::Malformed(e.to_string()))?;
        Self::from_json(&doc)
    }

    fn components(&self) -> usize {
        let n = self.nodes.len();
        let mut uf = crate::poset::UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        (0..n).filter(|&x| uf.find(x) == x).count()
    }
}

/// Two-colourability of the graph.
pub fn is_orientable(t: &OrigamiTemplate) -> bool {
    let n = t.nodes.len();
    let mut side = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let s = side[x].expect("coloured");
            for e in &t.edges {
                let y = if e.u == x {
                    e.v
                } else if e.v == x {
                    e.u
                } else {
                    continue;
                };
                match side[y] {
                    None => {
                        side[y] = Some(!s);
                        stack.push(y);
                    }
                    Some(c) if c == s => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

pub fn is_cooriented(t: &OrigamiTemplate) -> bool {
    t.edges.iter().all(|e| !e.is_loop())
}

/// Connected, without loops or cycles (parallel edges form a cycle).
pub fn graph_is_tree(t: &OrigamiTemplate) -> bool {
    is_cooriented(t) && t.edges.len() + 1 == t.nodes.len() && t.components() == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCheck {
    pub edge: usize,
    pub holds: bool,
    pub reason: Option<String>,
}

/// Two edges at `node` whose facets share `shared_vertices` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointnessWitness {
    pub node: usize,
    pub edges: [usize; 2],
    pub facets: [usize; 2],
    pub shared_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonDelzantNode {
    pub node: usize,
    pub witness: Option<DelzantWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateReport {
    pub nodes: usize,
    pub edges: usize,
    pub dims_agree: bool,
    pub connected: bool,
    pub is_tree: bool,
    pub orientable: bool,
    pub cooriented: bool,
    pub non_delzant: Vec<NonDelzantNode>,
    /// Condition 1, one entry per edge.
    pub condition1: Vec<EdgeCheck>,
    /// Violations of condition 2.
    pub condition2: Vec<DisjointnessWitness>,
    pub valid: bool,
}

impl TemplateReport {
    pub fn condition1_holds(&self) -> bool {
        self.condition1.iter().all(|c| c.holds)
    }

    pub fn condition2_holds(&self) -> bool {
        self.condition2.is_empty()
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.dims_agree {
            out.push("polytopes have different dimensions".into());
        }
        if !self.connected {
            out.push("graph is not connected".into());
        }
        for d in &self.non_delzant {
            out.push(format!("node {} is not Delzant", d.node));
        }
        for c in self.condition1.iter().filter(|c| !c.holds) {
            out.push(format!(
                "edge {}: {}",
                c.edge,
                c.reason.as_deref().unwrap_or("condition 1 fails")
            ));
        }
        for w in &self.condition2 {
            out.push(format!(
                "node {}: facets {} and {} of edges {} and {} meet",
                w.node, w.facets[0], w.facets[1], w.edges[0], w.edges[1]
            ));
        }
        out
    }
}

/// Checks both defining conditions, the Delzant property of every node and
/// connectivity. Never fails; problems are reported.
pub fn validate_template(t: &OrigamiTemplate) -> TemplateReport {
    let dim = t.dim();
    let dims_agree = t.nodes.iter().all(|p| p.dim == dim);
    let non_delzant = t
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(node, p)| {
            let r = p.is_delzant();
            (!r.holds).then_some(NonDelzantNode {
                node,
                witness: r.witness,
            })
        })
        .collect();
    let condition1 = t
        .edges
        .iter()
        .enumerate()
        .map(|(edge, e)| {
            let fail = |reason: String| EdgeCheck {
                edge,
                holds: false,
                reason: Some(reason),
            };
            if e.is_loop() && e.facet_u != e.facet_v {
                return fail("a loop must use a single facet".into());
            }
            match coincide_near_facet(&t.nodes[e.u], e.facet_u, &t.nodes[e.v], e.facet_v) {
                Ok(true) => EdgeCheck {
                    edge,
                    holds: true,
                    reason: None,
                },
                Ok(false) => fail("polytopes differ near the shared facet".into()),
                Err(err) => fail(err.to_string()),
            }
        })
        .collect();
    let mut condition2 = Vec::new();
    for node in 0..t.nodes.len() {
        let folds = t.fold_facets(node);
        let p = &t.nodes[node];
        for i in 0..folds.len() {
            for j in i + 1..folds.len() {
                let (fa, fb) = (folds[i].1, folds[j].1);
                let shared = p.facet_vertices[fa]
                    .iter()
                    .filter(|v| p.facet_vertices[fb].contains(v))
                    .count();
                if shared > 0 {
                    condition2.push(DisjointnessWitness {
                        node,
                        edges: [folds[i].0, folds[j].0],
                        facets: [fa, fb],
                        shared_vertices: shared,
                    });
                }
            }
        }
    }
    let mut r = TemplateReport {
        nodes: t.nodes.len(),
        edges: t.edges.len(),
        dims_agree,
        connected: t.components() == 1,
        is_tree: graph_is_tree(t),
        orientable: is_orientable(t),
        cooriented: is_cooriented(t),
        non_delzant,
        condition1,
        condition2,
        valid: false,
    };
    r.valid = r.problems().is_empty();
    r
}

/// SVG drawing of a 2-dimensional template, fold facets in red.
pub fn render_template_svg(t: &OrigamiTemplate) -> Result<String, TemplateError> {
    if t.nodes.iter().any(|p| p.dim != 2) {
        return Err(TemplateError::Unsupported(
            "rendering needs 2-dimensional polytopes".into(),
        ));
    }
    let items: Vec<(&RationalPolytope, String)> = t
        .nodes
        .iter()
        .zip(&t.ids)
        .map(|(p, id)| (p, id.to_string()))
        .collect();
    let point = |p: &RationalPolytope, v: usize| {
        use num_traits::ToPrimitive;
        let c = &p.vertices[v];
        (c[0].to_f64().unwrap_or(0.0), c[1].to_f64().unwrap_or(0.0))
    };
    let mut marks = Vec::new();
    for e in &t.edges {
        let p = &t.nodes[e.u];
        let vs = &p.facet_vertices[e.facet_u];
        marks.push([point(p, vs[0]), point(p, vs[1])]);
    }
    Ok(render_svg_marked(&items, &marks))
}

/// Templates drawn in the literature and used in tests.
pub mod examples {
    use super::{OrigamiTemplate, TemplateEdge};
    use crate::delzant::examples::{standard_triangle, unit_square};
    use crate::delzant::RationalPolytope;

    fn edge(u: usize, v: usize, facet_u: usize, facet_v: usize) -> TemplateEdge {
        TemplateEdge {
            u,
            v,
            facet_u,
            facet_v,
        }
    }

    /// Two standard triangles folded along the hypotenuse.
    pub fn two_triangles() -> OrigamiTemplate {
        OrigamiTemplate::new(
            vec![standard_triangle(), standard_triangle()],
            vec![edge(0, 1, 2, 2)],
        )
        .expect("valid")
    }

    /// Two unit squares folded along `x = 1`.
    pub fn two_squares() -> OrigamiTemplate {
        OrigamiTemplate::new(vec![unit_square(), unit_square()], vec![edge(0, 1, 2, 2)])
            .expect("valid")
    }

    pub fn single(p: RationalPolytope) -> OrigamiTemplate {
        OrigamiTemplate::new(vec![p], Vec::new()).expect("valid")
    }

    /// Four hexagons in a 4-cycle, folded along their cut corners.
    pub fn four_cycle() -> OrigamiTemplate {
        let hex = |data: &[(&[i64], &str)]| RationalPolytope::from_normals(2, data).expect("valid");
        // facet 0 and facet 1 are the two folds of each hexagon
        let yellow = hex(&[
            (&[-1, -1], "-1"),
            (&[-1, 1], "5"),
            (&[-1, 0], "0"),
            (&[0, -1], "0"),
            (&[1, 0], "2"),
            (&[0, 1], "6"),
        ]);
        let orange = hex(&[
            (&[-1, -1], "-1"),
            (&[1, -1], "5"),
            (&[0, -1], "0"),
            (&[-1, 0], "0"),
            (&[0, 1], "2"),
            (&[1, 0], "6"),
        ]);
        let green = hex(&[
            (&[1, -1], "5"),
            (&[1, 1], "11"),
            (&[1, 0], "6"),
            (&[0, -1], "0"),
            (&[-1, 0], "-4"),
            (&[0, 1], "6"),
        ]);
        let blue = hex(&[
            (&[1, 1], "11"),
            (&[-1, 1], "5"),
            (&[0, 1], "6"),
            (&[0, -1], "-4"),
            (&[-1, 0], "0"),
            (&[1, 0], "6"),
        ]);
        OrigamiTemplate::new(
            vec![yellow, orange, green, blue],
            vec![
                edge(0, 1, 0, 0),
                edge(1, 2, 1, 0),
                edge(2, 3, 1, 0),
                edge(3, 0, 1, 1),
            ],
        )
        .expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::delzant::examples::standard_triangle;

    #[test]
    fn drawn_templates_are_valid() {
        let r = validate_template(&two_triangles());
        assert!(r.valid, "{:?}", r.problems());
        assert!(r.is_tree && r.orientable && r.cooriented);
        let r = validate_template(&four_cycle());
        assert!(r.valid, "{:?}", r.problems());
        assert!(!r.is_tree && r.orientable && r.connected);
        assert!(graph_is_tree(&single(standard_triangle())));
    }

    #[test]
    fn adjacent_fold_facets_break_condition_two() {
        let tri = standard_triangle;
        let t = OrigamiTemplate::new(
            vec![tri(), tri(), tri()],
            vec![
                TemplateEdge {
                    u: 0,
                    v: 1,
                    facet_u: 2,
                    facet_v: 2,
                },
                TemplateEdge {
                    u: 0,
                    v: 2,
                    facet_u: 0,
                    facet_v: 0,
                },
            ],
        )
        .unwrap();
        let r = validate_template(&t);
        assert!(r.condition1_holds());
        assert_eq!(r.condition2.len(), 1);
        assert_eq!(r.condition2[0].shared_vertices, 1);
        assert!(!r.valid);
    }

    #[test]
    fn loops_are_not_coorientable() {
        let t = OrigamiTemplate::new(
            vec![standard_triangle()],
            vec![TemplateEdge {
                u: 0,
                v: 0,
                facet_u: 2,
                facet_v: 2,
            }],
        )
        .unwrap();
        let r = validate_template(&t);
        assert!(r.valid);
        assert!(!r.cooriented && !r.orientable && !r.is_tree);
    }

    #[test]
    fn mismatched_facets_break_condition_one() {
        let t = OrigamiTemplate::new(
            vec![standard_triangle(), crate::delzant::examples::unit_square()],
            vec![TemplateEdge {
                u: 0,
                v: 1,
                facet_u: 2,
                facet_v: 2,
            }],
        )
        .unwrap();
        let r = validate_template(&t);
        assert!(!r.condition1_holds());
        assert!(!r.valid);
    }

    #[test]
    fn json_roundtrip_keeps_ids() {
        let mut t = four_cycle();
        t.ids = vec![10, 20, 30, 40];
        let text = serde_json::to_string(&t.to_json()).unwrap();
        assert!(text.contains("\"u\":10"));
        let back = OrigamiTemplate::from_json_str(&text).unwrap();
        assert_eq!(back, t);
        assert!(OrigamiTemplate::from_json_str(&text.replace("\"u\":10", "\"u\":11")).is_err());
    }

    #[test]
    fn svg_marks_folds() {
        let svg = render_template_svg(&four_cycle()).unwrap();
        assert_eq!(svg.matches("stroke=\"red\"").count(), 4);
    }
}
