//! The subdivided tetrahedron `L_(q)`: each face of `∂Δ³` cut into `q²` small
//! regular triangles.
//!
//! Vertices are integer barycentric tuples `(i, j, k, l)` with sum `q` and at
//! least one zero coordinate, numbered in lexicographic order.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::poset::{SimplexId, SimplicialPoset};

/// Corners of a regular tetrahedron with unit edge centred at the origin.
pub const CORNERS: [[f64; 3]; 4] = {
    const S: f64 = 0.353_553_390_593_273_8; // 1/(2√2)
    [[S, S, S], [S, -S, -S], [-S, S, -S], [-S, -S, S]]
};

/// Circumradius `√(3/8)` of the unit-edge tetrahedron.
pub fn base_circumradius() -> f64 {
    (3.0f64 / 8.0).sqrt()
}

#[derive(Clone, Debug)]
pub struct SubdividedTetrahedron {
    pub q: u32,
    pub sphere: SimplicialPoset,
    /// `coords[v - 1]` is the barycentric tuple of vertex `v`; the position is `coords / q`.
    coords: Vec<[u32; 4]>,
}

fn lattice(q: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for i in 0..=q {
        for j in 0..=q - i {
            for k in 0..=q - i - j {
                let t = [i, j, k, q - i - j - k];
                if t.contains(&0) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn lift(m: usize, abc: [u32; 3]) -> [u32; 4] {
    let mut t = [0u32; 4];
    let mut it = abc.into_iter();
    for (c, slot) in t.iter_mut().enumerate() {
        if c != m {
            *slot = it.next().expect("three coordinates");
        }
    }
    t
}

/// Small triangles of big face `m` (the face where coordinate `m` vanishes).
fn face_triangles(q: u32, m: usize) -> Vec<[[u32; 4]; 3]> {
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q - a {
            let c = q - 1 - a - b;
            out.push([
                lift(m, [a + 1, b, c]),
                lift(m, [a, b + 1, c]),
                lift(m, [a, b, c + 1]),
            ]);
        }
    }
    if q >= 2 {
        for a in 0..=q - 2 {
            for b in 0..=q - 2 - a {
                let c = q - 2 - a - b;
                out.push([
                    lift(m, [a, b + 1, c + 1]),
                    lift(m, [a + 1, b, c + 1]),
                    lift(m, [a + 1, b + 1, c]),
                ]);
            }
        }
    }
    out
}

pub fn subdivided_tetrahedron(q: u32) -> SubdividedTetrahedron {
    assert!(q >= 1, "q must be positive");
    let coords = lattice(q);
    let index = |t: &[u32; 4]| -> u32 { coords.binary_search(t).expect("lattice point") as u32 };
    let mut tris = Vec::with_capacity(4 * (q * q) as usize);
    for m in 0..4 {
        for t in face_triangles(q, m) {
            tris.push(t.iter().map(index).collect::<Vec<u32>>());
        }
    }
    let sphere = SimplicialPoset::build(&tris, None).expect("valid triangulation");
    debug_assert_eq!(sphere.vertex_count(), coords.len());
    SubdividedTetrahedron { q, sphere, coords }
}

impl SubdividedTetrahedron {
    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.sphere.simplices_of_rank(3).count()
    }

    /// Barycentric tuple of a vertex (coordinates sum to `q`).
    pub fn barycentric(&self, v: SimplexId) -> [u32; 4] {
        self.coords[v - 1]
    }

    /// Exact barycentric position on the unit-edge tetrahedron.
    pub fn rational_position(&self, v: SimplexId) -> [BigRational; 4] {
        let q = num_bigint::BigInt::from(self.q);
        self.barycentric(v)
            .map(|c| BigRational::new(c.into(), q.clone()))
    }

    /// Cartesian position with small triangles of unit edge (the big tetrahedron has edge `q`).
    pub fn position(&self, v: SimplexId) -> [f64; 3] {
        let t = self.barycentric(v);
        let mut p = [0.0; 3];
        for (c, corner) in t.iter().zip(CORNERS) {
            for k in 0..3 {
                p[k] += *c as f64 * corner[k];
            }
        }
        p
    }

    /// Circumradius in the same units as [`Self::position`].
    pub fn circumradius(&self) -> f64 {
        base_circumradius() * self.q as f64
    }

    /// Vertex with the given barycentric tuple.
    pub fn vertex_at(&self, t: [u32; 4]) -> Option<SimplexId> {
        self.coords.binary_search(&t).ok().map(|i| i + 1)
    }

    /// Triangles lying in big face `m` (coordinate `m` zero).
    pub fn face_triangles(&self, m: usize) -> Vec<SimplexId> {
        self.sphere
            .simplices_of_rank(3)
            .filter(|&t| {
                self.sphere
                    .vertices_of(t)
                    .all(|v| self.barycentric(v)[m] == 0)
            })
            .collect()
    }

    /// Edges of the boundary of big face `m`: `3q` edges.
    pub fn face_boundary(&self, m: usize) -> Vec<SimplexId> {
        self.sphere
            .simplices_of_rank(2)
            .filter(|&e| {
                let ts: Vec<[u32; 4]> = self
                    .sphere
                    .vertices_of(e)
                    .map(|v| self.barycentric(v))
                    .collect();
                ts.iter().all(|t| t[m] == 0)
                    && (0..4).any(|c| c != m && ts.iter().all(|t| t[c] == 0))
            })
            .collect()
    }

    pub fn digest_json(&self) -> TetraJson {
        TetraJson {
            q: self.q,
            vertices: self.coords.clone(),
        }
    }
}

/// Coordinates record written next to the sphere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TetraJson {
    pub q: u32,
    /// Barycentric tuples of vertices `1..=V` in order.
    pub vertices: Vec<[u32; 4]>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{examples::tetrahedron_boundary, is_cell_sphere, isomorphic};

    #[test]
    fn counts() {
        for q in 1..=7u32 {
            let t = subdivided_tetrahedron(q);
            let v = 2 * q * q + 2;
            assert_eq!(t.vertex_count(), v as usize);
            let closed = 4 + 6 * (q - 1) + 4 * (q - 1) * q.saturating_sub(2) / 2;
            assert_eq!(closed, v);
            assert_eq!(t.triangle_count(), (4 * q * q) as usize);
            assert_eq!(t.sphere.euler_characteristic(), 2);
            assert!(t.sphere.is_simplicial_complex());
            assert!(is_cell_sphere(&t.sphere).unwrap().is_sphere());
        }
    }

    #[test]
    fn q1_is_the_tetrahedron() {
        let t = subdivided_tetrahedron(1);
        assert!(isomorphic(&t.sphere, &tetrahedron_boundary()));
    }

    #[test]
    fn positions_and_faces() {
        let t = subdivided_tetrahedron(4);
        assert_eq!(t.face_triangles(2).len(), 16);
        assert_eq!(t.face_boundary(0).len(), 12);
        let r = t.circumradius();
        let corner = t.vertex_at([4, 0, 0, 0]).unwrap();
        let p = t.position(corner);
        let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        assert!((norm - r).abs() < 1e-12);
        // every edge has unit length
        for e in t.sphere.simplices_of_rank(2) {
            let vs: Vec<[f64; 3]> = t.sphere.vertices_of(e).map(|v| t.position(v)).collect();
            let d: f64 = (0..3)
                .map(|k| (vs[0][k] - vs[1][k]).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!((d - 1.0).abs() < 1e-12);
        }
    }
}
