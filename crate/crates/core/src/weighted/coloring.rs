//! Proper vertex four-colourings of 2-spheres.
//!
//! Vertices are coloured greedily in smallest-last order with the smallest
//! free colour. A vertex whose neighbours already use all four colours is
//! repaired by a Kempe interchange. If no interchange frees a colour, a few
//! shuffled orders are tried, and after that exact DSATUR backtracking.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use super::{CharacteristicFunction, SignClass, WeightedError};
use crate::poset::{is_cell_sphere, SimplexId, SimplicialPoset};

const RETRIES: usize = 64;

/// Vectors assigned to colours 1..=4.
pub const COLOR_VECTORS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

/// A map from vertices to colours in `1..=4`, serialised as `{vertex-id: colour}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    pub colors: BTreeMap<SimplexId, u8>,
}

impl Coloring {
    /// Number of distinct colours used.
    pub fn colors_used(&self) -> usize {
        let mut seen = [false; 256];
        for &c in self.colors.values() {
            seen[c as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    /// Checks range, totality and properness; returns the first offending edge.
    pub fn check_proper(&self, s: &SimplicialPoset) -> Result<(), String> {
        for v in s.vertices() {
            match self.colors.get(&v) {
                None => return Err(format!("vertex {v} is uncoloured")),
                Some(&c) if !(1..=4).contains(&c) => {
                    return Err(format!("vertex {v} has colour {c} outside 1..=4"))
                }
                _ => {}
            }
        }
        for e in s.simplices_of_rank(2) {
            let vs: Vec<SimplexId> = s.vertices_of(e).collect();
            if self.colors[&vs[0]] == self.colors[&vs[1]] {
                return Err(format!("improper coloring at edge ({}, {})", vs[0], vs[1]));
            }
        }
        Ok(())
    }
}

struct Graph {
    ids: Vec<SimplexId>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn of(s: &SimplicialPoset) -> Self {
        let ids: Vec<SimplexId> = s.vertices().collect();
        let mut index = vec![usize::MAX; s.len()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); ids.len()];
        for e in s.simplices_of_rank(2) {
            let vs: Vec<usize> = s.vertices_of(e).map(|v| index[v]).collect();
            adj[vs[0]].push(vs[1]);
            adj[vs[1]].push(vs[0]);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        Graph { ids, adj }
    }
}

/// Order that colours each vertex after at most five of its neighbours
/// (planar graphs are 5-degenerate): repeatedly remove a vertex of least
/// remaining degree, then reverse.
fn smallest_last(g: &Graph) -> Vec<usize> {
    let n = g.adj.len();
    let mut deg: Vec<usize> = g.adj.iter().map(|a| a.len()).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !gone[v])
            .min_by_key(|&v| deg[v])
            .expect("vertex left");
        gone[v] = true;
        order.push(v);
        for &w in &g.adj[v] {
            deg[w] = deg[w].saturating_sub(1);
        }
    }
    order.reverse();
    order
}

fn greedy_kempe(g: &Graph, order: &[usize]) -> Option<Vec<u8>> {
    let n = g.adj.len();
    let mut color = vec![0u8; n];
    let mut mark = vec![0u32; n];
    let mut stamp = 0u32;
    for &v in order {
        let mut used = 0u8;
        for &w in &g.adj[v] {
            if color[w] != 0 {
                used |= 1 << (color[w] - 1);
            }
        }
        if let Some(c) = (1..=4u8).find(|c| used & (1 << (c - 1)) == 0) {
            color[v] = c;
            continue;
        }
        let mut repaired = false;
        'pairs: for a in 1..=4u8 {
            for b in 1..=4u8 {
                if a == b {
                    continue;
                }
                stamp += 1;
                let mut chain = Vec::new();
                let mut queue: VecDeque<usize> = VecDeque::new();
                for &w in &g.adj[v] {
                    if color[w] == a && mark[w] != stamp {
                        mark[w] = stamp;
                        queue.push_back(w);
                    }
                }
                while let Some(x) = queue.pop_front() {
                    chain.push(x);
                    for &y in &g.adj[x] {
                        if mark[y] != stamp && (color[y] == a || color[y] == b) {
                            mark[y] = stamp;
                            queue.push_back(y);
                        }
                    }
                }
                let blocked = g.adj[v].iter().any(|&w| color[w] == b && mark[w] == stamp);
                if blocked {
                    continue;
                }
                for &x in &chain {
                    color[x] = if color[x] == a { b } else { a };
                }
                color[v] = a;
                repaired = true;
                break 'pairs;
            }
        }
        if !repaired {
            return None;
        }
    }
    Some(color)
}

/// Exact DSATUR backtracking with four colours.
fn dsatur(g: &Graph) -> Option<Vec<u8>> {
    let mut color = vec![0u8; g.adj.len()];
    fn pick(g: &Graph, color: &[u8]) -> Option<(usize, u8)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..g.adj.len() {
            if color[v] != 0 {
                continue;
            }
            let mut used = 0u8;
            for &w in &g.adj[v] {
                if color[w] != 0 {
                    used |= 1 << (color[w] - 1);
                }
            }
            let sat = used.count_ones() as usize;
            let deg = g.adj[v].len();
            if best.is_none_or(|(_, s, d)| (sat, deg) > (s, d)) {
                best = Some((v, sat, deg));
            }
        }
        best.map(|(v, _, _)| {
            let mut used = 0u8;
            for &w in &g.adj[v] {
                if color[w] != 0 {
                    used |= 1 << (color[w] - 1);
                }
            }
            (v, used)
        })
    }
    fn rec(g: &Graph, color: &mut Vec<u8>) -> bool {
        let Some((v, used)) = pick(g, color) else {
            return true;
        };
        for c in 1..=4u8 {
            if used & (1 << (c - 1)) == 0 {
                color[v] = c;
                if rec(g, color) {
                    return true;
                }
            }
        }
        color[v] = 0;
        false
    }
    rec(g, &mut color).then_some(color)
}

/// A proper colouring of the 1-skeleton of a 2-dimensional cell sphere with at
/// most four colours, deterministic for a given poset.
pub fn four_color(s: &SimplicialPoset) -> Result<Coloring, WeightedError> {
    if s.dim() != Some(2) {
        return Err(WeightedError::Precondition(format!(
            "four_color expects a 2-sphere, got dimension {:?}",
            s.dim()
        )));
    }
    let report = is_cell_sphere(s).map_err(|e| WeightedError::Precondition(e.to_string()))?;
    if !report.is_sphere() {
        return Err(WeightedError::Precondition(format!(
            "not a 2-sphere: {}",
            report.reasons.join("; ")
        )));
    }
    color_graph(s)
}

/// Colours the 1-skeleton without checking that `s` is a sphere.
pub(crate) fn color_graph(s: &SimplicialPoset) -> Result<Coloring, WeightedError> {
    let g = Graph::of(s);
    let mut order = smallest_last(&g);
    let mut colors = greedy_kempe(&g, &order);
    // the single Kempe swap can get stuck; other orders rarely do
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..RETRIES {
        if colors.is_some() {
            break;
        }
        order.shuffle(&mut rng);
        colors = greedy_kempe(&g, &order);
    }
    let colors = colors
        .or_else(|| dsatur(&g))
        .ok_or(WeightedError::ColoringNotFound)?;
    Ok(Coloring {
        colors: g.ids.iter().copied().zip(colors).collect(),
    })
}

/// Replaces colours by `(1,0,0)`, `(0,1,0)`, `(0,0,1)`, `(1,1,1)`.
pub fn coloring_to_characteristic(c: &Coloring) -> CharacteristicFunction {
    let mut l = CharacteristicFunction::new(3);
    for (&v, &k) in &c.colors {
        assert!((1..=4).contains(&k), "colour {k} outside 1..=4");
        let vec = COLOR_VECTORS[k as usize - 1].to_vec();
        l.insert(v, SignClass::new(vec).expect("primitive"))
            .expect("length 3");
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::examples::*;
    use crate::weighted::check_star_condition;

    #[test]
    fn tetrahedron_needs_four() {
        let s = tetrahedron_boundary();
        let c = four_color(&s).unwrap();
        c.check_proper(&s).unwrap();
        assert_eq!(c.colors_used(), 4);
        let l = coloring_to_characteristic(&c);
        assert_eq!(l.value_count(), 4);
        assert!(check_star_condition(&s, &l, true).unwrap().holds);
    }

    #[test]
    fn octahedron_is_three_colourable() {
        let s = octahedron_boundary();
        let c = four_color(&s).unwrap();
        c.check_proper(&s).unwrap();
        assert!(c.colors_used() <= 4);
        // Exact chromatic number by brute force.
        let g = Graph::of(&s);
        let n = g.adj.len();
        let chi = (1..=4u32)
            .find(|&k| {
                (0..k.pow(n as u32)).any(|mut code| {
                    let mut col = vec![0u32; n];
                    for c in col.iter_mut() {
                        *c = code % k;
                        code /= k;
                    }
                    (0..n).all(|v| g.adj[v].iter().all(|&w| col[v] != col[w]))
                })
            })
            .unwrap();
        assert_eq!(chi, 3);
        let three = Coloring {
            colors: s
                .vertices()
                .map(|v| (v, s.label(v).unwrap().parse::<u8>().unwrap() / 2 + 1))
                .collect(),
        };
        three.check_proper(&s).unwrap();
        let l = coloring_to_characteristic(&three);
        assert_eq!(l.value_count(), 3);
        assert!(check_star_condition(&s, &l, false).unwrap().holds);
    }

    #[test]
    fn dsatur_agrees_on_small_spheres() {
        for s in [
            tetrahedron_boundary(),
            octahedron_boundary(),
            bipyramid_k(5),
            bipyramid_k(7),
        ] {
            let g = Graph::of(&s);
            let col = dsatur(&g).unwrap();
            assert!((0..g.adj.len()).all(|v| g.adj[v].iter().all(|&w| col[v] != col[w])));
        }
    }

    #[test]
    fn corrupted_colouring_is_reported() {
        let s = tetrahedron_boundary();
        let mut c = four_color(&s).unwrap();
        let (a, b) = (1, 2);
        let cb = c.colors[&b];
        c.colors.insert(a, cb);
        let err = c.check_proper(&s).unwrap_err();
        assert!(err.starts_with("improper coloring at edge"));
    }

    #[test]
    fn rejects_non_spheres() {
        assert!(matches!(
            four_color(&triangle()),
            Err(WeightedError::Precondition(_))
        ));
        assert!(matches!(
            four_color(&cycle(4)),
            Err(WeightedError::Precondition(_))
        ));
    }
}
