//! Sampled Lipschitz constants of the central projection `|L_(q)| → 𝕊_R`.
//!
//! At a point `x` of a face the differential is `w ↦ (R/|x|)(w − (x̂·w)x̂)`
//! restricted to the face plane. Its singular values give `c1`, `c2` and its
//! determinant gives `c3`, `c4`.

use serde::{Deserialize, Serialize};

use super::tetra::SubdividedTetrahedron;
use super::MetricError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LipschitzEstimate {
    pub q: u32,
    pub depth: u32,
    /// Minimal singular value over samples.
    pub c1: f64,
    /// Maximal singular value over samples.
    pub c2: f64,
    /// Minimal area factor over samples.
    pub c3: f64,
    /// Maximal area factor over samples.
    pub c4: f64,
    pub sample_count: u64,
    pub method: String,
}

impl LipschitzEstimate {
    /// Whether `c2 ≤ c2_bound + tol` and `c3 ≥ c3_bound − tol`.
    pub fn respects(&self, c2_bound: f64, c3_bound: f64, tol: f64) -> bool {
        self.c2 <= c2_bound + tol && self.c3 >= c3_bound - tol
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Barycentric sample weights: the depth-`d` lattice, the edge midpoints and the centroid.
fn sample_weights(depth: u32) -> Vec<[f64; 3]> {
    let d = depth as f64;
    let mut out = Vec::new();
    for i in 0..=depth {
        for j in 0..=depth - i {
            let k = depth - i - j;
            out.push([i as f64 / d, j as f64 / d, k as f64 / d]);
        }
    }
    out.extend([[0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.0, 0.5, 0.5]]);
    out.push([1.0 / 3.0; 3]);
    out
}

/// Singular values and determinant of the projection differential at `x` on
/// the plane spanned by the orthonormal pair `u1`, `u2`.
fn differential(x: [f64; 3], u1: [f64; 3], u2: [f64; 3], radius: f64) -> (f64, f64, f64) {
    let rho = dot(x, x).sqrt();
    let xh = scale(x, 1.0 / rho);
    let f = radius / rho;
    let col = |u: [f64; 3]| scale(sub(u, scale(xh, dot(xh, u))), f);
    let (j1, j2) = (col(u1), col(u2));
    let (a, b, c) = (dot(j1, j1), dot(j1, j2), dot(j2, j2));
    let t = (a + c) / 2.0;
    let s = (((a - c) / 2.0).powi(2) + b * b).sqrt();
    let det = (a * c - b * b).max(0.0).sqrt();
    ((t - s).max(0.0).sqrt(), (t + s).sqrt(), det)
}

/// Samples the differential on every triangle of `t` at the depth-`depth` barycentric lattice.
pub fn estimate_lipschitz(
    t: &SubdividedTetrahedron,
    depth: u32,
) -> Result<LipschitzEstimate, MetricError> {
    if depth == 0 {
        return Err(MetricError::InvalidParams(
            "depth must be at least 1".into(),
        ));
    }
    let weights = sample_weights(depth);
    let radius = t.circumradius();
    let s = &t.sphere;
    let (mut c1, mut c2, mut c3, mut c4) = (f64::INFINITY, 0.0f64, f64::INFINITY, 0.0f64);
    let mut count = 0u64;
    for tri in s.simplices_of_rank(3) {
        let p: Vec<[f64; 3]> = s.vertices_of(tri).map(|v| t.position(v)).collect();
        let e1 = sub(p[1], p[0]);
        let e2 = sub(p[2], p[0]);
        let n1 = dot(e1, e1).sqrt();
        let u1 = scale(e1, 1.0 / n1);
        let w = sub(e2, scale(u1, dot(u1, e2)));
        let nw = dot(w, w).sqrt();
        if n1 < 1e-12 || nw < 1e-12 {
            return Err(MetricError::DegenerateTriangle(tri));
        }
        let u2 = scale(w, 1.0 / nw);
        for b in &weights {
            let x = [0, 1, 2].map(|k| b[0] * p[0][k] + b[1] * p[1][k] + b[2] * p[2][k]);
            let (lo, hi, det) = differential(x, u1, u2, radius);
            c1 = c1.min(lo);
            c2 = c2.max(hi);
            c3 = c3.min(det);
            c4 = c4.max(det);
            count += 1;
        }
    }
    Ok(LipschitzEstimate {
        q: t.q,
        depth,
        c1,
        c2,
        c3,
        c4,
        sample_count: count,
        method: format!(
            "sampled central projection: barycentric lattice of depth {depth} plus edge midpoints and centroid on each of {} triangles",
            t.triangle_count()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::subdivided_tetrahedron;

    #[test]
    fn extremes_are_at_centroid_and_corners() {
        let e = estimate_lipschitz(&subdivided_tetrahedron(1), 16).unwrap();
        assert!((e.c2 - 3.0).abs() < 1e-9, "{e:?}");
        assert!((e.c3 - 1.0 / 3.0).abs() < 1e-9);
        assert!((e.c1 - 1.0 / 3.0).abs() < 1e-9);
        assert!((e.c4 - 9.0).abs() < 1e-9);
        assert!(e.respects(3.0, 1.0 / 3.0, 1e-3));
        assert_eq!(e.sample_count, 4 * (153 + 4));
    }

    #[test]
    fn centroid_is_conformal() {
        let t = subdivided_tetrahedron(1);
        let p: Vec<[f64; 3]> = t.sphere.vertices().take(3).map(|v| t.position(v)).collect();
        let c = [0, 1, 2].map(|k| (p[0][k] + p[1][k] + p[2][k]) / 3.0);
        let e1 = sub(p[1], p[0]);
        let u1 = scale(e1, 1.0 / dot(e1, e1).sqrt());
        let e2 = sub(p[2], p[0]);
        let w = sub(e2, scale(u1, dot(u1, e2)));
        let u2 = scale(w, 1.0 / dot(w, w).sqrt());
        let (lo, hi, _) = differential(c, u1, u2, t.circumradius());
        assert!((lo - hi).abs() < 1e-12);
    }

    #[test]
    fn zero_depth_rejected() {
        assert!(estimate_lipschitz(&subdivided_tetrahedron(1), 0).is_err());
    }
}
