//! Sphere recognition in dimension ≤ 2.
//!
//! Dimension 1: connected and every vertex lies in exactly two edges.
//! Dimension 2: pure, connected, every edge in exactly two triangles, every
//! vertex link a circle and Euler characteristic 2.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{PosetError, SimplexId, SimplicialPoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereVerdict {
    /// A sphere that is also a simplicial complex.
    ComplexSphere,
    /// A simplicial cell sphere that is not a simplicial complex.
    CellSphere,
    NotSphere,
    /// Dimension outside the supported range; fields still filled where meaningful.
    Withheld,
}

impl SphereVerdict {
    pub fn is_sphere(self) -> bool {
        matches!(
            self,
            SphereVerdict::ComplexSphere | SphereVerdict::CellSphere
        )
    }
}

/// Local shape of the star of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkShape {
    /// Exactly two incident edges (dimension 1).
    TwoPoints,
    /// Incident edges form one cycle under the triangles (dimension 2).
    Circle,
    /// Incident edges form a path (a boundary vertex).
    Path,
    Other(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereCheckReport {
    pub dim: Option<usize>,
    pub is_pure: bool,
    pub is_connected: bool,
    pub euler_characteristic: i64,
    /// Histogram: number of maximal simplices containing a ridge → number of ridges.
    pub edge_triangle_degrees: BTreeMap<usize, usize>,
    pub vertex_link_shapes: BTreeMap<SimplexId, LinkShape>,
    pub verdict: SphereVerdict,
    pub reasons: Vec<String>,
}

impl SphereCheckReport {
    pub fn is_sphere(&self) -> bool {
        self.verdict.is_sphere()
    }
}

fn connected(s: &SimplicialPoset) -> bool {
    let adj = s.adjacency();
    let Some((&start, _)) = adj.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

/// Classifies the star of `v` in a 2-dimensional poset: nodes are incident
/// edges, arcs are incident triangles (each contains exactly two of those edges).
fn star_shape(s: &SimplicialPoset, up: &super::Cofaces, v: SimplexId) -> LinkShape {
    let edges: Vec<SimplexId> = up.of(v).filter(|&e| s.rank(e) == 2).collect();
    if edges.is_empty() {
        return LinkShape::Other("isolated vertex".into());
    }
    let mut deg: BTreeMap<SimplexId, usize> = edges.iter().map(|&e| (e, 0)).collect();
    let mut arcs: Vec<(SimplexId, SimplexId)> = Vec::new();
    let mut tris = BTreeSet::new();
    for &e in &edges {
        for t in up.of(e) {
            tris.insert(t);
        }
    }
    for &t in &tris {
        let at_v: Vec<SimplexId> = s.faces(t).filter(|f| edges.contains(f)).collect();
        if at_v.len() != 2 {
            return LinkShape::Other("triangle meets vertex star irregularly".into());
        }
        *deg.get_mut(&at_v[0]).unwrap() += 1;
        *deg.get_mut(&at_v[1]).unwrap() += 1;
        arcs.push((at_v[0], at_v[1]));
    }
    // connectivity of the link graph
    let mut seen = BTreeSet::from([edges[0]]);
    let mut stack = vec![edges[0]];
    while let Some(x) = stack.pop() {
        for &(a, b) in &arcs {
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    if seen.len() != edges.len() {
        return LinkShape::Other("disconnected link".into());
    }
    let ones = deg.values().filter(|&&d| d == 1).count();
    if deg.values().all(|&d| d == 2) {
        LinkShape::Circle
    } else if ones == 2 && deg.values().all(|&d| d == 1 || d == 2) {
        LinkShape::Path
    } else {
        LinkShape::Other("branched link".into())
    }
}

/// Recognises simplicial cell spheres of dimension 0, 1 and 2.
pub fn is_cell_sphere(s: &SimplicialPoset) -> Result<SphereCheckReport, PosetError> {
    let dim = s.dim();
    let up = s.cofaces();
    let is_pure = s.is_pure();
    let euler = s.euler_characteristic();
    let mut report = SphereCheckReport {
        dim,
        is_pure,
        is_connected: false,
        euler_characteristic: euler,
        edge_triangle_degrees: BTreeMap::new(),
        vertex_link_shapes: BTreeMap::new(),
        verdict: SphereVerdict::NotSphere,
        reasons: Vec::new(),
    };
    let Some(d) = dim else {
        report.reasons.push("empty poset".into());
        return Ok(report);
    };
    for r in s.simplices_of_rank(d) {
        *report.edge_triangle_degrees.entry(up.count(r)).or_default() += 1;
    }
    if d >= 3 {
        report.is_connected = connected(s);
        report.verdict = SphereVerdict::Withheld;
        return Err(PosetError::UnsupportedDimension {
            dim: d,
            partial: Box::new(report),
        });
    }
    if !is_pure {
        report.reasons.push("not pure".into());
    }
    match d {
        0 => {
            report.is_connected = s.vertex_count() == 1;
            if s.vertex_count() != 2 {
                report
                    .reasons
                    .push(format!("{} points, a 0-sphere has 2", s.vertex_count()));
            }
        }
        1 => {
            report.is_connected = connected(s);
            for v in s.vertices() {
                let shape = match up.count(v) {
                    2 => LinkShape::TwoPoints,
                    k => LinkShape::Other(format!("{k} incident edges")),
                };
                if shape != LinkShape::TwoPoints {
                    report.reasons.push(format!("vertex {v}: {shape:?}"));
                }
                report.vertex_link_shapes.insert(v, shape);
            }
            if euler != 0 {
                report
                    .reasons
                    .push(format!("Euler characteristic {euler} ≠ 0"));
            }
        }
        _ => {
            report.is_connected = connected(s);
            for e in s.simplices_of_rank(2) {
                let c = up.count(e);
                if c != 2 {
                    report
                        .reasons
                        .push(format!("edge {e} lies in {c} triangles"));
                    break;
                }
            }
            for v in s.vertices() {
                let shape = star_shape(s, &up, v);
                if shape != LinkShape::Circle && report.reasons.len() < 16 {
                    report.reasons.push(format!("vertex {v}: link {shape:?}"));
                }
                report.vertex_link_shapes.insert(v, shape);
            }
            if euler != 2 {
                report
                    .reasons
                    .push(format!("Euler characteristic {euler} ≠ 2"));
            }
        }
    }
    if !report.is_connected && d > 0 {
        report.reasons.push("not connected".into());
    }
    if report.reasons.is_empty() {
        report.verdict = if s.is_simplicial_complex() {
            SphereVerdict::ComplexSphere
        } else {
            SphereVerdict::CellSphere
        };
    }
    Ok(report)
}
