//! Random simplicial 2-spheres for property tests and audits.
//!
//! Spheres are grown from the tetrahedron boundary by stellar subdivision of
//! random triangles, then mixed by random edge flips that keep the result a
//! simplicial complex.

use std::collections::HashMap;

use rand::Rng;

use super::SimplicialPoset;

/// Triangle list of a random simplicial 2-sphere on `vertices ≥ 4` vertices.
pub fn random_triangulation<R: Rng>(rng: &mut R, vertices: usize, flips: usize) -> Vec<[u32; 3]> {
    assert!(
        vertices >= 4,
        "a simplicial 2-sphere has at least 4 vertices"
    );
    let mut tris: Vec<[u32; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    for v in 4..vertices as u32 {
        let k = rng.gen_range(0..tris.len());
        let [a, b, c] = tris.swap_remove(k);
        tris.extend([[a, b, v], [a, c, v], [b, c, v]]);
    }
    if flips > 0 {
        Flipper::new(&mut tris, vertices).run(rng, flips);
    }
    tris
}

fn key(x: u32, y: u32) -> (u32, u32) {
    (x.min(y), x.max(y))
}

/// Edge–triangle incidences kept up to date under flips.
struct Flipper<'a> {
    tris: &'a mut [[u32; 3]],
    at_edge: HashMap<(u32, u32), [usize; 2]>,
    degree: Vec<usize>,
    edges: Vec<(u32, u32)>,
    pos: HashMap<(u32, u32), usize>,
}

impl<'a> Flipper<'a> {
    fn new(tris: &'a mut [[u32; 3]], vertices: usize) -> Self {
        let mut at_edge: HashMap<(u32, u32), [usize; 2]> = HashMap::new();
        for (i, t) in tris.iter().enumerate() {
            for (x, y) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                at_edge
                    .entry(key(x, y))
                    .and_modify(|e| e[1] = i)
                    .or_insert([i, usize::MAX]);
            }
        }
        let mut edges: Vec<(u32, u32)> = at_edge.keys().copied().collect();
        edges.sort_unstable();
        let pos = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut degree = vec![0; vertices];
        for &(a, b) in &edges {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        Flipper {
            tris,
            at_edge,
            degree,
            edges,
            pos,
        }
    }

    fn run<R: Rng>(&mut self, rng: &mut R, flips: usize) {
        for _ in 0..flips {
            let (a, b) = self.edges[rng.gen_range(0..self.edges.len())];
            self.flip(a, b);
        }
    }

    /// Replaces edge `ab` by the opposite diagonal `cd` unless that would
    /// create a double edge or a vertex of degree 2.
    fn flip(&mut self, a: u32, b: u32) {
        let [i, j] = self.at_edge[&(a, b)];
        let apex = |t: &[u32; 3]| *t.iter().find(|&&x| x != a && x != b).expect("triangle");
        let (c, d) = (apex(&self.tris[i]), apex(&self.tris[j]));
        if c == d
            || self.degree[a as usize] <= 3
            || self.degree[b as usize] <= 3
            || self.at_edge.contains_key(&key(c, d))
        {
            return;
        }
        self.tris[i] = [a, c, d];
        self.tris[j] = [b, c, d];
        self.at_edge.remove(&(a, b));
        self.at_edge.insert(key(c, d), [i, j]);
        for (e, from, to) in [(key(a, d), j, i), (key(b, c), i, j)] {
            let slot = self
                .at_edge
                .get_mut(&e)
                .expect("edge of a flipped triangle");
            for t in slot.iter_mut() {
                if *t == from {
                    *t = to;
                }
            }
        }
        let p = self.pos.remove(&(a, b)).expect("listed edge");
        self.edges[p] = key(c, d);
        self.pos.insert(key(c, d), p);
        self.degree[a as usize] -= 1;
        self.degree[b as usize] -= 1;
        self.degree[c as usize] += 1;
        self.degree[d as usize] += 1;
    }
}

/// A random simplicial 2-sphere on `vertices` vertices.
pub fn random_sphere<R: Rng>(rng: &mut R, vertices: usize, flips: usize) -> SimplicialPoset {
    let tris: Vec<Vec<u32>> = random_triangulation(rng, vertices, flips)
        .into_iter()
        .map(|t| t.to_vec())
        .collect();
    SimplicialPoset::build(&tris, None).expect("stacked and flipped spheres are simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::is_cell_sphere;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_spheres_are_spheres() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [4, 5, 9, 30, 80] {
            let s = random_sphere(&mut rng, n, 3 * n);
            assert_eq!(s.vertex_count(), n);
            assert!(s.is_simplicial_complex());
            assert!(is_cell_sphere(&s).unwrap().is_sphere());
        }
    }
}
