//! Connected sums along vertices, slicings and fatness.
//!
//! A slicing is a tree of cell spheres `S_v` with a fold vertex at each end of
//! every tree edge. The tree connected sum removes the open stars of all fold
//! vertices and glues the remaining pieces along the links. The region `R_v`
//! is what is left of `S_v`; border cycles are the glued links.

mod cut;
mod fatness;
mod sum;
mod width;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use cut::cut_along_cycles;
pub use fatness::{fatness_bruteforce, FatnessJson, FatnessOptions, FatnessResult, FatnessStatus};
pub use sum::{connected_sum, tree_connected_sum, weighted_connected_sum};
pub use width::{check_degree_bound, width, DegreeReport, WidthReport};

use crate::poset::{PosetJson, SimplexId, SimplicialPoset};
use crate::weighted::{CharacteristicFunction, CharacteristicJson};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurgeryError {
    #[error("vertex {vertex} of piece {node} is not admissible")]
    NotAdmissible { node: usize, vertex: SimplexId },
    #[error("link mismatch: {0}")]
    LinkMismatch(String),
    #[error("characteristic values differ across the gluing: {0}")]
    WeightMismatch(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("fold vertices {a} and {b} of piece {node} coincide or are adjacent")]
    AdjacentFoldVertices {
        node: usize,
        a: SimplexId,
        b: SimplexId,
    },
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("cycles {a} and {b} are not mutually ordered")]
    NotMutuallyOrdered { a: usize, b: usize },
    #[error("piece {node} is not a sphere: {reason}")]
    ConeNotSphere { node: usize, reason: String },
    #[error("gluing is inconsistent: {0}")]
    InconsistentGluing(String),
    #[error("search budget exceeded; lower bound {}, upper bound {}", .partial.lower, .partial.upper)]
    BudgetExceeded { partial: Box<FatnessResult> },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// A finite graph on nodes `0..nodes`, expected to be a tree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn single() -> Self {
        Tree {
            nodes: 1,
            edges: Vec::new(),
        }
    }

    /// Checks that the graph is a tree (connected, `|E| = |V| − 1`, no loops).
    pub fn validate(&self) -> Result<(), SurgeryError> {
        if self.nodes == 0 {
            return Err(SurgeryError::NotATree("no nodes".into()));
        }
        if self.edges.len() + 1 != self.nodes {
            return Err(SurgeryError::NotATree(format!(
                "{} nodes but {} edges",
                self.nodes,
                self.edges.len()
            )));
        }
        let mut uf = crate::poset::UnionFind::new(self.nodes);
        for &(u, v) in &self.edges {
            if u >= self.nodes || v >= self.nodes {
                return Err(SurgeryError::NotATree(format!(
                    "edge ({u}, {v}) leaves the node range"
                )));
            }
            if uf.find(u) == uf.find(v) {
                return Err(SurgeryError::NotATree(format!(
                    "edge ({u}, {v}) closes a cycle"
                )));
            }
            uf.union(u, v);
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Edges incident to `v`, as `(edge index, side)` with side 0 for `u`, 1 for `v`.
    pub fn incident(&self, node: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            if a == node {
                out.push((k, 0));
            }
            if b == node {
                out.push((k, 1));
            }
        }
        out
    }
}

/// Data filled in by [`tree_connected_sum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicingDerived {
    pub sum: SimplicialPoset,
    pub lambda: Option<CharacteristicFunction>,
    /// Region `R_v` as a set of simplices of the sum (∅ excluded).
    pub regions: Vec<BTreeSet<SimplexId>>,
    /// Border cycle `C_e` as a set of simplices of the sum (∅ excluded).
    pub cycles: Vec<BTreeSet<SimplexId>>,
    /// `embeddings[v][x]` is the image of simplex `x` of `S_v`, if it survives.
    pub embeddings: Vec<Vec<Option<SimplexId>>>,
}

impl SlicingDerived {
    pub fn region_vertices(&self, v: usize) -> BTreeSet<SimplexId> {
        self.regions[v]
            .iter()
            .copied()
            .filter(|&x| self.sum.rank(x) == 1)
            .collect()
    }

    pub fn cycle_vertices(&self, e: usize) -> BTreeSet<SimplexId> {
        self.cycles[e]
            .iter()
            .copied()
            .filter(|&x| self.sum.rank(x) == 1)
            .collect()
    }
}

/// A representation `K = #_Γ S_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slicing {
    pub tree: Tree,
    pub pieces: Vec<SimplicialPoset>,
    /// Characteristic functions of the pieces, for weighted sums.
    pub weights: Option<Vec<CharacteristicFunction>>,
    /// `fold_vertices[e] = [i_u, i_v]` for tree edge `e = (u, v)`.
    pub fold_vertices: Vec<[SimplexId; 2]>,
    /// Optional explicit link isomorphisms `link(S_u, i_u) → link(S_v, i_v)`,
    /// keyed by simplices of `S_u` and valued in `S_v`.
    pub xi: Vec<Option<BTreeMap<SimplexId, SimplexId>>>,
    pub derived: Option<SlicingDerived>,
}

impl Slicing {
    /// The trivial slicing: one piece, no edges.
    pub fn trivial(s: SimplicialPoset) -> Self {
        Slicing {
            tree: Tree::single(),
            pieces: vec![s],
            weights: None,
            fold_vertices: Vec::new(),
            xi: Vec::new(),
            derived: None,
        }
    }

    pub fn derived(&self) -> Result<&SlicingDerived, SurgeryError> {
        self.derived
            .as_ref()
            .ok_or_else(|| SurgeryError::Precondition("slicing has not been summed yet".into()))
    }

    pub fn to_json(&self) -> SlicingJson {
        SlicingJson {
            tree: self.tree.clone(),
            pieces: self.pieces.iter().map(|p| p.to_json()).collect(),
            fold_vertices: self
                .fold_vertices
                .iter()
                .enumerate()
                .map(|(e, f)| (e.to_string(), *f))
                .collect(),
            xi: self
                .xi
                .iter()
                .enumerate()
                .filter_map(|(e, x)| {
                    x.as_ref().map(|m| {
                        (
                            e.to_string(),
                            m.iter().map(|(a, b)| (a.to_string(), *b)).collect(),
                        )
                    })
                })
                .collect(),
            weights: self
                .weights
                .as_ref()
                .map(|w| w.iter().map(|l| l.to_json()).collect()),
            regions: self.derived.as_ref().map(|d| {
                (0..d.regions.len())
                    .map(|v| d.region_vertices(v).into_iter().collect())
                    .collect()
            }),
        }
    }

    /// Reads a slicing document; derived data are not read, call
    /// [`tree_connected_sum`] to recompute them.
    pub fn from_json(doc: &SlicingJson) -> Result<Self, SurgeryError> {
        let mut pieces = Vec::new();
        let mut maps = Vec::new();
        for p in &doc.pieces {
            let (s, m) = SimplicialPoset::from_json_mapped(p)
                .map_err(|e| SurgeryError::Malformed(e.to_string()))?;
            pieces.push(s);
            maps.push(m);
        }
        if pieces.len() != doc.tree.nodes {
            return Err(SurgeryError::Malformed(format!(
                "{} pieces for {} nodes",
                pieces.len(),
                doc.tree.nodes
            )));
        }
        let map_id = |node: usize, raw: SimplexId| -> Result<SimplexId, SurgeryError> {
            maps[node].get(&(raw as u64)).copied().ok_or_else(|| {
                SurgeryError::Malformed(format!("piece {node} has no simplex {raw}"))
            })
        };
        let mut fold_vertices = Vec::new();
        let mut xi = Vec::new();
        for (e, &(u, v)) in doc.tree.edges.iter().enumerate() {
            if u >= pieces.len() || v >= pieces.len() {
                return Err(SurgeryError::NotATree(format!(
                    "edge ({u}, {v}) leaves the node range"
                )));
            }
            let [a, b] = *doc
                .fold_vertices
                .get(&e.to_string())
                .ok_or_else(|| SurgeryError::Malformed(format!("no fold vertices for edge {e}")))?;
            fold_vertices.push([map_id(u, a)?, map_id(v, b)?]);
            xi.push(match doc.xi.get(&e.to_string()) {
                None => None,
                Some(m) => {
                    let mut out = BTreeMap::new();
                    for (k, &val) in m {
                        let k: SimplexId = k
                            .parse()
                            .map_err(|_| SurgeryError::Malformed(format!("bad xi key {k}")))?;
                        out.insert(map_id(u, k)?, map_id(v, val)?);
                    }
                    Some(out)
                }
            });
        }
        let weights = match &doc.weights {
            None => None,
            Some(ws) => {
                let mut out = Vec::new();
                for (node, w) in ws.iter().enumerate() {
                    let l = CharacteristicFunction::from_json(w)
                        .map_err(|e| SurgeryError::Malformed(e.to_string()))?;
                    let mut remapped = CharacteristicFunction::new(l.n());
                    for (&v, c) in l.values() {
                        remapped
                            .insert(map_id(node, v)?, c.clone())
                            .map_err(|e| SurgeryError::Malformed(e.to_string()))?;
                    }
                    out.push(remapped);
                }
                Some(out)
            }
        };
        Ok(Slicing {
            tree: doc.tree.clone(),
            pieces,
            weights,
            fold_vertices,
            xi,
            derived: None,
        })
    }
}

/// `{"tree": {"nodes", "edges"}, "pieces": [...], "fold_vertices": {"e": [i_u, i_v]}}`
/// with optional `"xi"`, `"weights"` and (on output) region vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicingJson {
    pub tree: Tree,
    pub pieces: Vec<PosetJson>,
    pub fold_vertices: BTreeMap<String, [SimplexId; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub xi: BTreeMap<String, BTreeMap<String, SimplexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<CharacteristicJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regions: Option<Vec<Vec<SimplexId>>>,
}
