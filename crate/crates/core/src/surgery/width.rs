//! Width of a slicing and the node-degree bound.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Slicing, SurgeryError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub n: usize,
    /// `2(N − 2)`.
    pub bound: i64,
    /// The bound is a statement about 2-dimensional spheres.
    pub applicable: bool,
    pub degrees: BTreeMap<usize, usize>,
    /// Nodes whose degree exceeds the bound.
    pub witnesses: Vec<usize>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub per_region_vertex_counts: BTreeMap<usize, usize>,
    pub width: usize,
    pub degree_check: DegreeReport,
}

fn region_counts(sl: &Slicing) -> Result<BTreeMap<usize, usize>, SurgeryError> {
    let d = sl.derived()?;
    Ok((0..sl.tree.nodes)
        .map(|v| (v, d.region_vertices(v).len()))
        .collect())
}

/// Vertices per region and their maximum, with the degree bound for `N = width`.
pub fn width(sl: &Slicing) -> Result<WidthReport, SurgeryError> {
    let counts = region_counts(sl)?;
    let w = counts.values().copied().max().unwrap_or(0);
    Ok(WidthReport {
        degree_check: check_degree_bound(sl, w)?,
        per_region_vertex_counts: counts,
        width: w,
    })
}

/// Checks `deg v ≤ 2(N − 2)` for every node; requires `width ≤ N`.
pub fn check_degree_bound(sl: &Slicing, n: usize) -> Result<DegreeReport, SurgeryError> {
    let counts = region_counts(sl)?;
    let w = counts.values().copied().max().unwrap_or(0);
    if w > n {
        return Err(SurgeryError::Precondition(format!(
            "width {w} exceeds N = {n}"
        )));
    }
    let bound = 2 * (n as i64 - 2);
    let applicable = sl.derived()?.sum.dim() == Some(2);
    let degrees: BTreeMap<usize, usize> =
        (0..sl.tree.nodes).map(|v| (v, sl.tree.degree(v))).collect();
    let witnesses: Vec<usize> = degrees
        .iter()
        .filter(|&(_, &d)| d as i64 > bound)
        .map(|(&v, _)| v)
        .collect();
    Ok(DegreeReport {
        n,
        bound,
        applicable,
        holds: !applicable || witnesses.is_empty(),
        degrees,
        witnesses,
    })
}
