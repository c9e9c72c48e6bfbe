//! The equilateral metric on 2-spheres and the isoperimetric inequality chain.
//!
//! Every triangle is a unit equilateral triangle, so lengths and areas reduce
//! to counts: a cycle has length `|ver(C)|` and a region of `T` triangles has
//! area `T·√3/4`.

mod constants;
mod lipschitz;
mod tetra;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use constants::{
    decimal_ceil, decimal_floor, format_sig, isoperimetric_constants, kappa_bounds, parse_rational,
    pi_bounds, sqrt3_bounds, ConstantsJson, ExactForm, ExactFormJson, IsoperimetricConstants,
    DEFAULT_DIGITS,
};
pub use lipschitz::{estimate_lipschitz, LipschitzEstimate};
pub use tetra::{
    base_circumradius, subdivided_tetrahedron, SubdividedTetrahedron, TetraJson, CORNERS,
};

use crate::poset::cycles::{check_cycle, cycle_vertices, side_vertices, sides};
use crate::poset::{is_cell_sphere, Cofaces, SimplexId, SimplicialPoset};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("not a disc: {0}")]
    NotADisc(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degenerate triangle {0}")]
    DegenerateTriangle(SimplexId),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A 2-dimensional cell sphere with unit equilateral triangles.
#[derive(Clone, Copy, Debug)]
pub struct EquilateralGeometry<'a> {
    pub sphere: &'a SimplicialPoset,
}

/// Area of one unit equilateral triangle.
pub fn triangle_area() -> f64 {
    3f64.sqrt() / 4.0
}

impl<'a> EquilateralGeometry<'a> {
    pub fn new(sphere: &'a SimplicialPoset) -> Result<Self, MetricError> {
        let report =
            is_cell_sphere(sphere).map_err(|e| MetricError::Precondition(e.to_string()))?;
        if report.dim != Some(2) || !report.is_sphere() {
            return Err(MetricError::Precondition(
                "expected a 2-dimensional cell sphere".into(),
            ));
        }
        Ok(EquilateralGeometry { sphere })
    }

    pub fn triangle_count(&self) -> usize {
        self.sphere.simplices_of_rank(3).count()
    }

    /// `μ(|K|) = (√3/4)·#triangles`.
    pub fn area(&self) -> f64 {
        triangle_area() * self.triangle_count() as f64
    }

    /// Length of a closed cycle given by its edges: the number of its vertices.
    pub fn cycle_length(&self, edges: &[SimplexId]) -> Result<usize, MetricError> {
        check_cycle(self.sphere, edges).map_err(MetricError::NotACycle)?;
        Ok(cycle_vertices(self.sphere, edges).len())
    }

    /// For a disc made of the given triangles, the vertex count `𝒱₋` and the
    /// bound `(8/√3)·μ = 2·𝒯₋`. Needs at least two triangles.
    pub fn discrete_area_bound(&self, triangles: &[SimplexId]) -> Result<AreaBound, MetricError> {
        let s = self.sphere;
        let set: BTreeSet<SimplexId> = triangles.iter().copied().collect();
        if set.len() != triangles.len() {
            return Err(MetricError::NotADisc("repeated triangle".into()));
        }
        if let Some(&t) = set.iter().find(|&&t| !s.contains(t) || s.rank(t) != 3) {
            return Err(MetricError::NotADisc(format!("{t} is not a triangle")));
        }
        if set.len() < 2 {
            return Err(MetricError::Precondition(
                "the area bound needs a disc of at least two triangles".into(),
            ));
        }
        let up = s.cofaces();
        check_disc(s, &up, &set)?;
        let vertices = set
            .iter()
            .flat_map(|&t| s.vertices_of(t))
            .collect::<BTreeSet<_>>()
            .len();
        let bound = 2 * set.len();
        Ok(AreaBound {
            vertices,
            triangles: set.len(),
            bound,
            holds: vertices <= bound,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaBound {
    pub vertices: usize,
    pub triangles: usize,
    /// `(8/√3)·(√3/4)·triangles`, an integer.
    pub bound: usize,
    pub holds: bool,
}

fn check_disc(
    s: &SimplicialPoset,
    up: &Cofaces,
    set: &BTreeSet<SimplexId>,
) -> Result<(), MetricError> {
    let mut boundary = Vec::new();
    let mut edges = BTreeSet::new();
    for &t in set {
        for e in s.faces(t) {
            edges.insert(e);
        }
    }
    for &e in &edges {
        let inside = up.of(e).filter(|t| set.contains(t)).count();
        if inside == 1 {
            boundary.push(e);
        }
    }
    let region = s.induced(&s.closure(set.iter().copied())).poset;
    let chi = region.euler_characteristic();
    if chi != 1 {
        return Err(MetricError::NotADisc(format!(
            "Euler characteristic {chi} ≠ 1"
        )));
    }
    if boundary.is_empty() {
        return Err(MetricError::NotADisc("no boundary".into()));
    }
    check_cycle(s, &boundary)
        .map_err(|e| MetricError::NotADisc(format!("boundary is not one cycle: {e}")))?;
    // connected across interior edges
    let mut seen = BTreeSet::from([*set.iter().next().expect("nonempty")]);
    let mut stack: Vec<SimplexId> = seen.iter().copied().collect();
    while let Some(t) = stack.pop() {
        for e in s.faces(t) {
            for u in up.of(e) {
                if set.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
    }
    if seen.len() != set.len() {
        return Err(MetricError::NotADisc("not connected".into()));
    }
    Ok(())
}

/// Vertex counts `(𝒱₊, 𝒱₋)` of the two closed sides of a cycle in a 2-sphere,
/// each including the cycle itself.
pub fn side_sizes(
    s: &SimplicialPoset,
    up: &Cofaces,
    edges: &[SimplexId],
) -> Result<(usize, usize), MetricError> {
    check_cycle(s, edges).map_err(MetricError::NotACycle)?;
    let [a, b] =
        sides(s, up, edges).ok_or_else(|| MetricError::NotACycle("does not separate".into()))?;
    Ok((
        side_vertices(s, &a, edges).len(),
        side_vertices(s, &b, edges).len(),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideViolation {
    pub cycle: Vec<SimplexId>,
    pub small_side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallSideReport {
    pub checked: usize,
    pub max_small_side: usize,
    /// `A` rendered as a decimal.
    pub bound: String,
    pub violations: Vec<SideViolation>,
}

impl SmallSideReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `min(𝒱₊, 𝒱₋) ≤ A` on every given cycle. Each cycle must have at most `N` vertices.
pub fn small_side_bound_check(
    t: &SubdividedTetrahedron,
    consts: &IsoperimetricConstants,
    cycles: &[Vec<SimplexId>],
) -> Result<SmallSideReport, MetricError> {
    small_side_bound_check_on(&t.sphere, consts, cycles)
}

/// [`small_side_bound_check`] on an arbitrary 2-sphere.
pub fn small_side_bound_check_on(
    s: &SimplicialPoset,
    consts: &IsoperimetricConstants,
    cycles: &[Vec<SimplexId>],
) -> Result<SmallSideReport, MetricError> {
    let up = s.cofaces();
    let mut report = SmallSideReport {
        checked: 0,
        max_small_side: 0,
        bound: format_sig(consts.a.to_f64(), 10),
        violations: Vec::new(),
    };
    for c in cycles {
        let len = cycle_vertices(s, c).len();
        if len as u64 > consts.n {
            return Err(MetricError::Precondition(format!(
                "cycle has {len} vertices, more than N = {}",
                consts.n
            )));
        }
        let (a, b) = side_sizes(s, &up, c)?;
        let small = a.min(b);
        report.checked += 1;
        report.max_small_side = report.max_small_side.max(small);
        if consts.a.cmp_integer(small as u64) == Ordering::Less {
            report.violations.push(SideViolation {
                cycle: c.clone(),
                small_side: small,
            });
        }
    }
    Ok(report)
}
