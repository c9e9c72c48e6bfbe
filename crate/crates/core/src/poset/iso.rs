//! Rank-preserving order isomorphisms between simplicial posets.
//!
//! Colours are refined jointly on the disjoint union of both posets (rank,
//! optional user colour, then multisets of face and coface colours) and the
//! search individualises one element of the smallest non-trivial cell at a time.

use std::collections::BTreeMap;

use super::{SimplexId, SimplicialPoset};

struct Joint {
    na: usize,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

impl Joint {
    fn new(a: &SimplicialPoset, b: &SimplicialPoset) -> Self {
        let na = a.len();
        let n = na + b.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for (offset, p) in [(0, a), (na, b)] {
            for id in p.ids() {
                for f in p.faces(id) {
                    down[offset + id].push(offset + f);
                    up[offset + f].push(offset + id);
                }
            }
        }
        Joint { na, down, up }
    }

    /// Refines to a stable partition; returns the number of colours.
    fn refine(&self, colors: &mut [u32]) -> usize {
        let mut classes = distinct(colors);
        loop {
            let mut table: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
            let sigs: Vec<Vec<u32>> = (0..colors.len())
                .map(|x| {
                    let mut d: Vec<u32> = self.down[x].iter().map(|&y| colors[y]).collect();
                    let mut u: Vec<u32> = self.up[x].iter().map(|&y| colors[y]).collect();
                    d.sort_unstable();
                    u.sort_unstable();
                    let mut sig = Vec::with_capacity(d.len() + u.len() + 2);
                    sig.push(colors[x]);
                    sig.extend(d);
                    sig.push(u32::MAX);
                    sig.extend(u);
                    sig
                })
                .collect();
            for s in &sigs {
                let next = table.len() as u32;
                table.entry(s.clone()).or_insert(next);
            }
            // Re-number in signature order so colours are canonical across calls.
            let order: BTreeMap<Vec<u32>, u32> = table
                .keys()
                .enumerate()
                .map(|(i, k)| (k.clone(), i as u32))
                .collect();
            for (x, s) in sigs.iter().enumerate() {
                colors[x] = order[s];
            }
            let now = order.len();
            if now == classes {
                return now;
            }
            classes = now;
        }
    }

    fn balanced(&self, colors: &[u32]) -> bool {
        let mut hist: BTreeMap<u32, i64> = BTreeMap::new();
        for (x, &c) in colors.iter().enumerate() {
            *hist.entry(c).or_default() += if x < self.na { 1 } else { -1 };
        }
        hist.values().all(|&v| v == 0)
    }

    fn search(&self, colors: &mut Vec<u32>) -> Option<Vec<usize>> {
        self.refine(colors);
        if !self.balanced(colors) {
            return None;
        }
        let na = self.na;
        let mut cells: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (x, &c) in colors.iter().enumerate() {
            let e = cells.entry(c).or_default();
            if x < na {
                e.0.push(x);
            } else {
                e.1.push(x - na);
            }
        }
        let target = cells
            .iter()
            .filter(|(_, (xa, _))| xa.len() > 1)
            .min_by_key(|(c, (xa, _))| (xa.len(), **c));
        match target {
            None => {
                let mut map = vec![0usize; na];
                for (xa, xb) in cells.values() {
                    map[xa[0]] = xb[0];
                }
                self.verify(&map).then_some(map)
            }
            Some((_, (xa, xb))) => {
                let x = xa[0];
                let fresh = colors.iter().copied().max().unwrap_or(0) + 1;
                for &y in xb {
                    let mut trial = colors.clone();
                    trial[x] = fresh;
                    trial[na + y] = fresh;
                    if let Some(m) = self.search(&mut trial) {
                        return Some(m);
                    }
                }
                None
            }
        }
    }

    fn verify(&self, map: &[usize]) -> bool {
        let na = self.na;
        (0..na).all(|x| {
            let mut fa: Vec<usize> = self.down[x].iter().map(|&f| map[f]).collect();
            let mut fb: Vec<usize> = self.down[na + map[x]].iter().map(|&f| f - na).collect();
            fa.sort_unstable();
            fb.sort_unstable();
            fa == fb
        })
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Finds an isomorphism `a → b` that preserves the given element colours.
///
/// `color_a[i]` / `color_b[j]` are arbitrary labels (for example characteristic
/// values on vertices); the map satisfies `color_b[map[i]] == color_a[i]`.
pub fn find_isomorphism_colored(
    a: &SimplicialPoset,
    b: &SimplicialPoset,
    color_a: &[u64],
    color_b: &[u64],
) -> Option<Vec<SimplexId>> {
    if a.len() != b.len() || a.f_vector() != b.f_vector() {
        return None;
    }
    let joint = Joint::new(a, b);
    let mut keys: Vec<(usize, u64)> = Vec::with_capacity(a.len() + b.len());
    for id in a.ids() {
        keys.push((a.rank(id), color_a.get(id).copied().unwrap_or(0)));
    }
    for id in b.ids() {
        keys.push((b.rank(id), color_b.get(id).copied().unwrap_or(0)));
    }
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let mut colors: Vec<u32> = keys
        .iter()
        .map(|k| sorted.binary_search(k).expect("present") as u32)
        .collect();
    joint.search(&mut colors)
}

/// Finds a rank-preserving order isomorphism `a → b`, if any.
pub fn find_isomorphism(a: &SimplicialPoset, b: &SimplicialPoset) -> Option<Vec<SimplexId>> {
    find_isomorphism_colored(a, b, &[], &[])
}

pub fn isomorphic(a: &SimplicialPoset, b: &SimplicialPoset) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;

    #[test]
    fn relabelled_tetrahedron() {
        let a = tetrahedron_boundary();
        let b = SimplicialPoset::build(
            &[vec![9, 7, 8], vec![8, 7, 5], vec![5, 9, 7], vec![8, 9, 5]],
            None,
        )
        .unwrap();
        let m = find_isomorphism(&a, &b).expect("isomorphic");
        for id in a.ids() {
            assert_eq!(a.rank(id), b.rank(m[id]));
        }
    }

    #[test]
    fn different_spheres() {
        assert!(!isomorphic(&tetrahedron_boundary(), &octahedron_boundary()));
        assert!(!isomorphic(&cycle(3), &cycle(4)));
        assert!(isomorphic(&cycle(7), &cycle(7)));
    }

    #[test]
    fn same_f_vector_different_structure() {
        // Octahedron and the 6-vertex bipyramid over a square share f-vectors.
        let oct = octahedron_boundary();
        let bp = bipyramid_k(4);
        assert!(isomorphic(&oct, &bp));
        // Stacked vs. non-stacked 6-vertex spheres: f = (6, 12, 8) but different degrees.
        let stacked = SimplicialPoset::build(
            &[
                vec![1, 2, 3],
                vec![1, 2, 5],
                vec![1, 3, 5],
                vec![2, 3, 4],
                vec![2, 4, 5],
                vec![3, 4, 6],
                vec![3, 5, 6],
                vec![4, 5, 6],
            ],
            None,
        )
        .unwrap();
        assert_eq!(stacked.f_vector(), oct.f_vector());
        let degrees: Vec<usize> = stacked.adjacency().values().map(Vec::len).collect();
        if degrees.iter().all(|&d| d == 4) {
            assert!(isomorphic(&stacked, &oct));
        } else {
            assert!(!isomorphic(&stacked, &oct));
        }
    }

    #[test]
    fn colours_constrain_the_map() {
        let a = cycle(4);
        let b = cycle(4);
        let mut ca = vec![0u64; a.len()];
        let mut cb = vec![0u64; b.len()];
        // Mark adjacent vertices in a, opposite vertices in b.
        let va: Vec<_> = a.vertices().collect();
        ca[va[0]] = 1;
        ca[va[1]] = 1;
        let vb: Vec<_> = b.vertices().collect();
        let adj = b.adjacency();
        let opposite = vb
            .iter()
            .copied()
            .find(|&w| w != vb[0] && !adj[&vb[0]].contains(&w))
            .unwrap();
        cb[vb[0]] = 1;
        cb[opposite] = 1;
        assert!(find_isomorphism_colored(&a, &b, &ca, &cb).is_none());
        assert!(find_isomorphism_colored(&a, &a, &ca, &ca).is_some());
    }
}
