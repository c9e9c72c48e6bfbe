//! Exact simple polytopes of dimension at most 3 given by halfspaces
//! `⟨ν, x⟩ ≤ c` with primitive integer outward normals `ν`.

mod svg;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use svg::{render_svg, render_svg_marked};

use crate::metric::parse_rational;
use crate::poset::{SimplexId, SimplicialPoset};
use crate::weighted::lattice::determinant;
use crate::weighted::{CharacteristicFunction, SignClass, WeightedSphere};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DelzantError {
    #[error("polytope is unbounded: {0}")]
    Unbounded(String),
    #[error("polytope is not simple: {0}")]
    NotSimple(String),
    #[error("degenerate system: {0}")]
    Degenerate(String),
    #[error("facets do not match: {0}")]
    FacetMismatch(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    /// Primitive outward normal.
    pub normal: Vec<i64>,
    pub offset: BigRational,
}

impl Halfspace {
    fn value(&self, x: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(x)
            .map(|(&a, b)| BigRational::from_integer(a.into()) * b)
            .fold(BigRational::zero(), |s, t| s + t)
    }
}

/// A bounded, full-dimensional, simple polytope with its vertex–facet incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    pub dim: usize,
    pub halfspaces: Vec<Halfspace>,
    pub vertices: Vec<Vec<BigRational>>,
    /// Facets through each vertex, sorted; exactly `dim` of them.
    pub vertex_facets: Vec<Vec<usize>>,
    /// Vertices of each facet, sorted.
    pub facet_vertices: Vec<Vec<usize>>,
}

fn solve(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let t = &f * &m[col][c];
                    m[r][c] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Normalises `(ν, c)` to a primitive normal, scaling the offset by the same factor.
pub fn primitive_halfspace(normal: &[i64], offset: BigRational) -> Result<Halfspace, DelzantError> {
    let g = normal.iter().fold(0i64, |g, &a| g.gcd(&a));
    if g == 0 {
        return Err(DelzantError::Degenerate("zero normal".into()));
    }
    Ok(Halfspace {
        normal: normal.iter().map(|a| a / g).collect(),
        offset: offset / BigRational::from_integer(BigInt::from(g)),
    })
}

impl RationalPolytope {
    /// Enumerates vertices exactly and checks boundedness and simplicity.
    pub fn build(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, DelzantError> {
        if !(1..=3).contains(&dim) {
            return Err(DelzantError::Malformed(format!(
                "dimension {dim} outside 1..=3"
            )));
        }
        let mut hs = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            if h.normal.len() != dim {
                return Err(DelzantError::Malformed(format!(
                    "normal {:?} has the wrong length",
                    h.normal
                )));
            }
            hs.push(primitive_halfspace(&h.normal, h.offset)?);
        }
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                if hs[i].normal == hs[j].normal {
                    return Err(DelzantError::Degenerate(format!(
                        "halfspaces {i} and {j} are parallel"
                    )));
                }
            }
        }
        let normals: Vec<Vec<BigRational>> = hs
            .iter()
            .map(|h| h.normal.iter().map(|&a| int(a)).collect())
            .collect();
        if rank(&normals) < dim {
            return Err(DelzantError::Unbounded(
                "normals do not span the space".into(),
            ));
        }
        let mut points: BTreeMap<Vec<BigRational>, BTreeSet<usize>> = BTreeMap::new();
        for sub in subsets(hs.len(), dim) {
            let rows: Vec<Vec<BigRational>> = sub.iter().map(|&i| normals[i].clone()).collect();
            let rhs: Vec<BigRational> = sub.iter().map(|&i| hs[i].offset.clone()).collect();
            let Some(x) = solve(&rows, &rhs) else {
                continue;
            };
            if hs.iter().all(|h| h.value(&x) <= h.offset) {
                let tight: BTreeSet<usize> = (0..hs.len())
                    .filter(|&i| hs[i].value(&x) == hs[i].offset)
                    .collect();
                points.insert(x, tight);
            }
        }
        if points.is_empty() {
            return Err(DelzantError::Degenerate("the system is infeasible".into()));
        }
        let vertices: Vec<Vec<BigRational>> = points.keys().cloned().collect();
        let vertex_facets: Vec<Vec<usize>> = points
            .values()
            .map(|t| t.iter().copied().collect())
            .collect();
        for (v, t) in vertex_facets.iter().enumerate() {
            if t.len() != dim {
                return Err(DelzantError::NotSimple(format!(
                    "vertex {v} lies on {} facets",
                    t.len()
                )));
            }
        }
        // every edge leaving a vertex must end at another vertex
        for (v, t) in vertex_facets.iter().enumerate() {
            for &j in t {
                let mut rows: Vec<Vec<BigRational>> = t
                    .iter()
                    .filter(|&&i| i != j)
                    .map(|&i| normals[i].clone())
                    .collect();
                rows.push(normals[j].clone());
                let mut rhs = vec![BigRational::zero(); dim];
                rhs[dim - 1] = int(-1);
                let d = solve(&rows, &rhs).expect("simple vertex has independent normals");
                let dot = |i: usize| -> BigRational {
                    normals[i]
                        .iter()
                        .zip(&d)
                        .map(|(a, b)| a * b)
                        .fold(BigRational::zero(), |s, t| s + t)
                };
                if !(0..hs.len()).any(|i| dot(i).is_positive()) {
                    return Err(DelzantError::Unbounded(format!(
                        "the edge at vertex {v} leaving facet {j} is a ray"
                    )));
                }
            }
        }
        let diffs: Vec<Vec<BigRational>> = vertices[1..]
            .iter()
            .map(|p| p.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
            .collect();
        if vertices.len() < dim + 1 || rank(&diffs) < dim {
            return Err(DelzantError::Degenerate("not full-dimensional".into()));
        }
        let mut facet_vertices = vec![Vec::new(); hs.len()];
        for (v, t) in vertex_facets.iter().enumerate() {
            for &f in t {
                facet_vertices[f].push(v);
            }
        }
        for (f, vs) in facet_vertices.iter().enumerate() {
            if vs.len() < dim {
                return Err(DelzantError::Degenerate(format!(
                    "halfspace {f} does not support a facet"
                )));
            }
        }
        Ok(RationalPolytope {
            dim,
            halfspaces: hs,
            vertices,
            vertex_facets,
            facet_vertices,
        })
    }

    pub fn facet_count(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Checks that the normals at every vertex form a lattice basis.
    pub fn is_delzant(&self) -> DelzantReport {
        for (v, fs) in self.vertex_facets.iter().enumerate() {
            let m: Vec<Vec<i64>> = fs
                .iter()
                .map(|&f| self.halfspaces[f].normal.clone())
                .collect();
            let det = determinant(&m);
            if det.abs() != 1 {
                return DelzantReport {
                    holds: false,
                    witness: Some(DelzantWitness {
                        vertex: v,
                        facets: fs.clone(),
                        determinant: det,
                    }),
                };
            }
        }
        DelzantReport {
            holds: true,
            witness: None,
        }
    }

    /// Vertices in cyclic order (dimension 2 only).
    pub fn polygon_order(&self) -> Vec<usize> {
        assert_eq!(self.dim, 2, "polygon order needs a polygon");
        let mut order = vec![0usize];
        let mut via = self.vertex_facets[0][0];
        while order.len() < self.vertex_count() {
            let cur = *order.last().expect("nonempty");
            let next = self.facet_vertices[via]
                .iter()
                .copied()
                .find(|&w| w != cur)
                .expect("edge has two ends");
            via = self.vertex_facets[next]
                .iter()
                .copied()
                .find(|&f| f != via)
                .expect("two facets");
            order.push(next);
        }
        order
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            dim: self.dim,
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| HalfspaceJson {
                    normal: h.normal.clone(),
                    offset: h.offset.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &PolytopeJson) -> Result<Self, DelzantError> {
        let hs = doc
            .halfspaces
            .iter()
            .map(|h| {
                Ok(Halfspace {
                    normal: h.normal.clone(),
                    offset: parse_rational(&h.offset)
                        .map_err(|e| DelzantError::Malformed(e.to_string()))?,
                })
            })
            .collect::<Result<Vec<_>, DelzantError>>()?;
        Self::build(doc.dim, hs)
    }

    /// Builds from integer normals and rational offsets written as text.
    pub fn from_normals(dim: usize, data: &[(&[i64], &str)]) -> Result<Self, DelzantError> {
        let hs = data
            .iter()
            .map(|(n, c)| {
                Ok(Halfspace {
                    normal: n.to_vec(),
                    offset: parse_rational(c)
                        .map_err(|e| DelzantError::Malformed(e.to_string()))?,
                })
            })
            .collect::<Result<Vec<_>, DelzantError>>()?;
        Self::build(dim, hs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelzantWitness {
    pub vertex: usize,
    pub facets: Vec<usize>,
    pub determinant: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelzantReport {
    pub holds: bool,
    pub witness: Option<DelzantWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceJson {
    pub normal: Vec<i64>,
    /// Rational `"p/q"`.
    pub offset: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub halfspaces: Vec<HalfspaceJson>,
}

/// Boundary of the dual polytope with facet normals as characteristic values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWeightedSphere {
    pub sphere: SimplicialPoset,
    pub nu: CharacteristicFunction,
    /// Vertex of the sphere for each facet of the polytope.
    pub facet_vertex: Vec<SimplexId>,
}

impl DualWeightedSphere {
    /// As a weighted sphere; fails unless the star condition holds.
    pub fn weighted(&self) -> Result<WeightedSphere, crate::weighted::WeightedError> {
        WeightedSphere::new(self.sphere.clone(), self.nu.clone())
    }
}

pub fn dual_weighted_sphere(p: &RationalPolytope) -> DualWeightedSphere {
    let maximal: Vec<Vec<u32>> = p
        .vertex_facets
        .iter()
        .map(|fs| fs.iter().map(|&f| f as u32).collect())
        .collect();
    let sphere =
        SimplicialPoset::build(&maximal, None).expect("vertex figures of a simple polytope");
    let facet_vertex: Vec<SimplexId> = (0..p.facet_count())
        .map(|f| {
            sphere
                .vertices()
                .find(|&v| sphere.label(v) == Some(&f.to_string()))
                .expect("every facet has a vertex")
        })
        .collect();
    let mut nu = CharacteristicFunction::new(p.dim);
    for (f, &v) in facet_vertex.iter().enumerate() {
        nu.insert(
            v,
            SignClass::new(p.halfspaces[f].normal.clone()).expect("primitive"),
        )
        .expect("length dim");
    }
    DualWeightedSphere {
        sphere,
        nu,
        facet_vertex,
    }
}

/// Whether `p1` and `p2` agree near the common facet `f1` of `p1` / `f2` of `p2`:
/// the facets are the same set and every ridge of it has the same second
/// supporting hyperplane in both.
pub fn coincide_near_facet(
    p1: &RationalPolytope,
    f1: usize,
    p2: &RationalPolytope,
    f2: usize,
) -> Result<bool, DelzantError> {
    if p1.dim != p2.dim {
        return Err(DelzantError::FacetMismatch("different dimensions".into()));
    }
    if f1 >= p1.facet_count() || f2 >= p2.facet_count() {
        return Err(DelzantError::FacetMismatch(
            "facet index out of range".into(),
        ));
    }
    if p1.halfspaces[f1] != p2.halfspaces[f2] {
        return Err(DelzantError::FacetMismatch(
            "different supporting halfspaces".into(),
        ));
    }
    let verts = |p: &RationalPolytope, f: usize| -> BTreeSet<Vec<BigRational>> {
        p.facet_vertices[f]
            .iter()
            .map(|&v| p.vertices[v].clone())
            .collect()
    };
    if verts(p1, f1) != verts(p2, f2) {
        return Err(DelzantError::FacetMismatch("different vertex sets".into()));
    }
    // second facet through each ridge, keyed by the ridge's vertex set
    let ridges = |p: &RationalPolytope, f: usize| -> BTreeMap<BTreeSet<Vec<BigRational>>, usize> {
        let mut out = BTreeMap::new();
        for g in 0..p.facet_count() {
            if g == f {
                continue;
            }
            let common: BTreeSet<Vec<BigRational>> = p.facet_vertices[f]
                .iter()
                .filter(|v| p.facet_vertices[g].contains(v))
                .map(|&v| p.vertices[v].clone())
                .collect();
            if common.len() >= p.dim - 1 && !common.is_empty() {
                out.insert(common, g);
            }
        }
        out
    };
    let (r1, r2) = (ridges(p1, f1), ridges(p2, f2));
    if r1.keys().ne(r2.keys()) {
        return Ok(false);
    }
    Ok(r1
        .iter()
        .all(|(k, &g1)| p1.halfspaces[g1] == p2.halfspaces[r2[k]]))
}

/// Named polytopes used in tests and examples.
pub mod examples {
    use super::RationalPolytope;

    pub fn standard_triangle() -> RationalPolytope {
        RationalPolytope::from_normals(2, &[(&[-1, 0], "0"), (&[0, -1], "0"), (&[1, 1], "1")])
            .expect("valid")
    }

    pub fn unit_square() -> RationalPolytope {
        RationalPolytope::from_normals(
            2,
            &[
                (&[-1, 0], "0"),
                (&[0, -1], "0"),
                (&[1, 0], "1"),
                (&[0, 1], "1"),
            ],
        )
        .expect("valid")
    }

    pub fn unit_cube() -> RationalPolytope {
        RationalPolytope::from_normals(
            3,
            &[
                (&[-1, 0, 0], "0"),
                (&[0, -1, 0], "0"),
                (&[0, 0, -1], "0"),
                (&[1, 0, 0], "1"),
                (&[0, 1, 0], "1"),
                (&[0, 0, 1], "1"),
            ],
        )
        .expect("valid")
    }

    pub fn standard_simplex3() -> RationalPolytope {
        RationalPolytope::from_normals(
            3,
            &[
                (&[-1, 0, 0], "0"),
                (&[0, -1, 0], "0"),
                (&[0, 0, -1], "0"),
                (&[1, 1, 1], "1"),
            ],
        )
        .expect("valid")
    }
}
