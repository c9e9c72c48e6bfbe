//! Cutting a sphere along a mutually ordered family of cycles.
//!
//! Every cycle has a side that avoids the lowest facet; call it its disc.
//! The family is mutually ordered exactly when the discs are nested or
//! disjoint. The tree is the containment order of the discs below a root
//! node, and each region is coned off along its border cycles.

use std::collections::{BTreeMap, BTreeSet};

use super::{tree_connected_sum, Slicing, SurgeryError, Tree};
use crate::poset::cycles::{check_cycle, sides};
use crate::poset::{is_cell_sphere, PosetBuilder, SimplexId, SimplicialPoset, EMPTY};

/// Disc of every cycle: the facet set of the side avoiding the lowest facet.
pub(crate) fn discs(
    k: &SimplicialPoset,
    cycles: &[Vec<SimplexId>],
) -> Result<Vec<BTreeSet<SimplexId>>, SurgeryError> {
    let up = k.cofaces();
    let root = k
        .simplices_of_rank(k.max_rank())
        .next()
        .ok_or_else(|| SurgeryError::Precondition("empty sphere".into()))?;
    cycles
        .iter()
        .enumerate()
        .map(|(i, c)| {
            check_cycle(k, c).map_err(|e| SurgeryError::NotACycle(format!("cycle {i}: {e}")))?;
            let [a, b] = sides(k, &up, c)
                .ok_or_else(|| SurgeryError::NotACycle(format!("cycle {i} does not separate")))?;
            Ok(if a.contains(&root) { b } else { a }.into_iter().collect())
        })
        .collect()
}

/// Parent of every cycle in the containment order (`None` for the root node).
/// Fails on a pair of crossing discs.
pub(crate) fn containment(
    discs: &[BTreeSet<SimplexId>],
) -> Result<Vec<Option<usize>>, SurgeryError> {
    for i in 0..discs.len() {
        for j in i + 1..discs.len() {
            let (a, b) = (&discs[i], &discs[j]);
            if !(a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)) {
                return Err(SurgeryError::NotMutuallyOrdered { a: i, b: j });
            }
        }
    }
    let mut order: Vec<usize> = (0..discs.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(discs[i].len()), i));
    let mut parent = vec![None; discs.len()];
    for (pos, &i) in order.iter().enumerate() {
        parent[i] = order[..pos]
            .iter()
            .rev()
            .copied()
            .find(|&j| discs[i].is_subset(&discs[j]));
    }
    Ok(parent)
}

/// Cuts `k` along `cycles` (each a list of ridges) and returns the slicing with
/// derived data filled in. Node 0 holds the lowest facet; node `i + 1` is the
/// region inside cycle `i`, and tree edge `i` is cycle `i`.
pub fn cut_along_cycles(
    k: &SimplicialPoset,
    cycles: &[Vec<SimplexId>],
) -> Result<Slicing, SurgeryError> {
    let d = k.dim().unwrap_or(0);
    if !(1..=2).contains(&d) {
        return Err(SurgeryError::Precondition(format!(
            "cutting needs dimension 1 or 2, got {d}"
        )));
    }
    let discs = discs(k, cycles)?;
    let parent = containment(&discs)?;
    let n = cycles.len() + 1;
    let node_of = |p: Option<usize>| p.map_or(0, |j| j + 1);
    let mut facets: Vec<BTreeSet<SimplexId>> = vec![BTreeSet::new(); n];
    facets[0] = k.simplices_of_rank(d + 1).collect();
    for (i, disc) in discs.iter().enumerate() {
        facets[i + 1] = disc.clone();
    }
    let mut borders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..cycles.len() {
        borders[i + 1].push(i);
    }
    for (i, &p) in parent.iter().enumerate() {
        let pn = node_of(p);
        borders[pn].push(i);
        for f in &discs[i] {
            facets[pn].remove(f);
        }
    }
    let closures: Vec<BTreeSet<SimplexId>> = cycles
        .iter()
        .map(|c| k.closure(c.iter().copied()))
        .collect();

    let mut pieces = Vec::with_capacity(n);
    let mut apex: Vec<[SimplexId; 2]> = vec![[0, 0]; cycles.len()];
    let mut ids: Vec<BTreeMap<SimplexId, SimplexId>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut elems: BTreeSet<SimplexId> = k.closure(facets[v].iter().copied());
        for &c in &borders[v] {
            elems.extend(closures[c].iter().copied());
        }
        let mut b = PosetBuilder::new();
        let mut map: BTreeMap<SimplexId, SimplexId> = BTreeMap::from([(EMPTY, EMPTY)]);
        for &x in &elems {
            if x == EMPTY {
                continue;
            }
            let id = if k.rank(x) == 1 {
                b.add_labeled_vertex(k.label(x).map_or_else(|| x.to_string(), str::to_string))
            } else {
                let fs: Vec<SimplexId> = k.faces(x).map(|f| map[&f]).collect();
                b.add_simplex(&fs)
                    .map_err(|e| SurgeryError::InconsistentGluing(e.to_string()))?
            };
            map.insert(x, id);
        }
        for &c in &borders[v] {
            let a = b.add_labeled_vertex(format!("apex{c}"));
            let mut cone: BTreeMap<SimplexId, SimplexId> = BTreeMap::from([(EMPTY, a)]);
            for &x in closures[c].iter().filter(|&&x| x != EMPTY) {
                let mut fs = vec![map[&x]];
                fs.extend(k.faces(x).map(|f| cone[&f]));
                let id = b
                    .add_simplex(&fs)
                    .map_err(|e| SurgeryError::InconsistentGluing(e.to_string()))?;
                cone.insert(x, id);
            }
            // own cycle is the child side of its edge
            let side = if v == c + 1 { 1 } else { 0 };
            apex[c][side] = a;
        }
        let piece = b
            .finish()
            .map_err(|e| SurgeryError::InconsistentGluing(e.to_string()))?;
        let report = is_cell_sphere(&piece).map_err(|e| SurgeryError::ConeNotSphere {
            node: v,
            reason: e.to_string(),
        })?;
        if !report.is_sphere() {
            return Err(SurgeryError::ConeNotSphere {
                node: v,
                reason: report.reasons.join("; "),
            });
        }
        for &c in &borders[v] {
            let side = if v == c + 1 { 1 } else { 0 };
            if !piece.is_admissible(apex[c][side]).unwrap_or(false) {
                return Err(SurgeryError::NotAdmissible {
                    node: v,
                    vertex: apex[c][side],
                });
            }
        }
        pieces.push(piece);
        ids.push(map);
    }

    let edges: Vec<(usize, usize)> = parent
        .iter()
        .enumerate()
        .map(|(i, &p)| (node_of(p), i + 1))
        .collect();
    let xi = (0..cycles.len())
        .map(|i| {
            let (pu, pv) = edges[i];
            Some(
                closures[i]
                    .iter()
                    .filter(|&&x| x != EMPTY)
                    .map(|x| (ids[pu][x], ids[pv][x]))
                    .collect(),
            )
        })
        .collect();
    let sl = Slicing {
        tree: Tree { nodes: n, edges },
        pieces,
        weights: None,
        fold_vertices: apex,
        xi,
        derived: None,
    };
    tree_connected_sum(&sl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::subdivided_tetrahedron;
    use crate::poset::cycles::{cycle_vertices, simple_cycles};
    use crate::poset::examples::*;
    use crate::poset::isomorphic;

    #[test]
    fn equator_of_bipyramid() {
        let k = bipyramid();
        let eq = simple_cycles(&k, 3)
            .into_iter()
            .find(|c| {
                cycle_vertices(&k, c)
                    .iter()
                    .all(|&v| k.label(v).unwrap() < "3")
            })
            .unwrap();
        let sl = cut_along_cycles(&k, &[eq]).unwrap();
        assert_eq!(sl.pieces.len(), 2);
        for p in &sl.pieces {
            assert!(isomorphic(p, &bipyramid()));
        }
        let d = sl.derived.unwrap();
        assert!(isomorphic(&d.sum, &k));
        assert_eq!(d.region_vertices(0).len(), 4);
        assert_eq!(d.region_vertices(1).len(), 4);
    }

    #[test]
    fn empty_family() {
        let k = octahedron_boundary();
        let sl = cut_along_cycles(&k, &[]).unwrap();
        assert_eq!(sl.tree.nodes, 1);
        assert!(isomorphic(&sl.pieces[0], &k));
    }

    #[test]
    fn nested_cycles_on_l3() {
        let t = subdivided_tetrahedron(3);
        let k = &t.sphere;
        // two nested cycles around corner (3,0,0,0): its link, and the hexagon-like ring further out
        let corner = t.vertex_at([3, 0, 0, 0]).unwrap();
        let near: Vec<SimplexId> = k
            .link(corner)
            .unwrap()
            .to_parent
            .iter()
            .copied()
            .filter(|&x| k.rank(x) == 2)
            .collect();
        let far: Vec<SimplexId> = k
            .simplices_of_rank(2)
            .filter(|&e| k.vertices_of(e).all(|v| t.barycentric(v)[0] == 1))
            .collect();
        let sl = cut_along_cycles(k, &[near, far]).unwrap();
        assert_eq!(sl.tree.nodes, 3);
        let d = sl.derived.as_ref().unwrap();
        assert!(isomorphic(&d.sum, k));
        // corner disc, the annulus between the rings and the rest
        let mut counts: Vec<usize> = (0..3).map(|v| d.region_vertices(v).len()).collect();
        counts.sort_unstable();
        assert_eq!(counts, vec![4, 9, 16]);
        let annulus = (0..3).find(|&v| d.region_vertices(v).len() == 9).unwrap();
        assert_eq!(sl.tree.degree(annulus), 2);
    }

    #[test]
    fn crossing_cycles_rejected() {
        let k = octahedron_boundary();
        let four: Vec<Vec<SimplexId>> = simple_cycles(&k, 4)
            .into_iter()
            .filter(|c| c.len() == 4)
            .collect();
        // two distinct equators cross
        let eqs: Vec<&Vec<SimplexId>> = four
            .iter()
            .filter(|c| crate::poset::cycles::is_full_cycle(&k, c))
            .collect();
        assert!(eqs.len() >= 2);
        assert!(matches!(
            cut_along_cycles(&k, &[eqs[0].clone(), eqs[1].clone()]),
            Err(SurgeryError::NotMutuallyOrdered { .. })
        ));
        let e: Vec<SimplexId> = k.simplices_of_rank(2).take(2).collect();
        assert!(matches!(
            cut_along_cycles(&k, &[e]),
            Err(SurgeryError::NotACycle(_))
        ));
    }

    #[test]
    fn coincident_cycles_give_a_suspension() {
        let k = octahedron_boundary();
        let eq = simple_cycles(&k, 4)
            .into_iter()
            .find(|c| c.len() == 4)
            .unwrap();
        let sl = cut_along_cycles(&k, &[eq.clone(), eq]).unwrap();
        assert_eq!(sl.tree.nodes, 3);
        let d = sl.derived.as_ref().unwrap();
        assert!(isomorphic(&d.sum, &k));
        let between = sl.tree.edges[1].0;
        assert!(isomorphic(&sl.pieces[between], &octahedron_boundary()));
        assert_eq!(
            d.regions[between]
                .iter()
                .filter(|&&x| d.sum.rank(x) == 3)
                .count(),
            0
        );
    }

    #[test]
    fn one_dimensional_diagonals() {
        let k = cycle(6);
        let vs: Vec<SimplexId> = k.vertices().collect();
        let sl = cut_along_cycles(
            &k,
            &[vec![vs[0], vs[2]], vec![vs[2], vs[4]], vec![vs[0], vs[4]]],
        )
        .unwrap();
        let d = sl.derived.as_ref().unwrap();
        assert!(isomorphic(&d.sum, &k));
        let w = (0..sl.tree.nodes)
            .map(|v| d.region_vertices(v).len())
            .max()
            .unwrap();
        assert_eq!(w, 3);
    }
}
