//! Simultaneous connected sum over the edges of a tree.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Slicing, SlicingDerived, SurgeryError, Tree};
use crate::poset::{
    find_isomorphism_colored, Link, PosetBuilder, SimplexId, SimplicialPoset, UnionFind, EMPTY,
};
use crate::weighted::{CharacteristicFunction, SignClass, WeightedSphere};

/// Checks an explicit `xi` between two links and returns it as a map of parent ids.
fn check_xi(
    su: &SimplicialPoset,
    lu: &Link,
    sv: &SimplicialPoset,
    lv: &Link,
    xi: &BTreeMap<SimplexId, SimplexId>,
) -> Result<BTreeMap<SimplexId, SimplexId>, SurgeryError> {
    let from: BTreeSet<SimplexId> = lu
        .to_parent
        .iter()
        .copied()
        .filter(|&x| x != EMPTY)
        .collect();
    let to: BTreeSet<SimplexId> = lv
        .to_parent
        .iter()
        .copied()
        .filter(|&x| x != EMPTY)
        .collect();
    let map: BTreeMap<SimplexId, SimplexId> = xi
        .iter()
        .filter(|(&a, _)| a != EMPTY)
        .map(|(&a, &b)| (a, b))
        .collect();
    if map.keys().copied().collect::<BTreeSet<_>>() != from {
        return Err(SurgeryError::LinkMismatch(
            "xi is not defined exactly on the first link".into(),
        ));
    }
    if map.values().copied().collect::<BTreeSet<_>>() != to || to.len() != from.len() {
        return Err(SurgeryError::LinkMismatch(
            "xi is not a bijection onto the second link".into(),
        ));
    }
    let img = |x: SimplexId| if x == EMPTY { EMPTY } else { map[&x] };
    for (&x, &y) in &map {
        if su.rank(x) != sv.rank(y) {
            return Err(SurgeryError::LinkMismatch(format!(
                "xi changes the rank of {x}"
            )));
        }
        let mut a: Vec<SimplexId> = su.faces(x).map(img).collect();
        let mut b: Vec<SimplexId> = sv.faces(y).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(SurgeryError::LinkMismatch(format!(
                "xi does not preserve the faces of {x}"
            )));
        }
    }
    Ok(map)
}

/// Searches a link isomorphism, preserving characteristic values if given.
fn find_xi(
    lu: &Link,
    lv: &Link,
    weights: Option<(&CharacteristicFunction, &CharacteristicFunction)>,
) -> Result<BTreeMap<SimplexId, SimplexId>, SurgeryError> {
    let (ca, cb) = match weights {
        None => (vec![0; lu.poset.len()], vec![0; lv.poset.len()]),
        Some((wu, wv)) => {
            let mut table: BTreeMap<SignClass, u64> = BTreeMap::new();
            let mut col = |l: &Link, w: &CharacteristicFunction| -> Vec<u64> {
                l.to_parent
                    .iter()
                    .map(|&p| match w.get(p) {
                        Some(c) => {
                            let next = table.len() as u64 + 1;
                            *table.entry(c.clone()).or_insert(next)
                        }
                        None => 0,
                    })
                    .collect()
            };
            let a = col(lu, wu);
            let b = col(lv, wv);
            (a, b)
        }
    };
    match find_isomorphism_colored(&lu.poset, &lv.poset, &ca, &cb) {
        Some(m) => Ok(m
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &j)| (lu.to_parent[k], lv.to_parent[j]))
            .collect()),
        None if weights.is_some() && crate::poset::isomorphic(&lu.poset, &lv.poset) => {
            Err(SurgeryError::WeightMismatch(
                "no link isomorphism preserves the characteristic values".into(),
            ))
        }
        None => Err(SurgeryError::LinkMismatch(
            "links are not isomorphic".into(),
        )),
    }
}

/// Performs the connected sum over all tree edges and fills in regions,
/// border cycles, the induced characteristic function and every `xi`.
pub fn tree_connected_sum(sl: &Slicing) -> Result<Slicing, SurgeryError> {
    let tree: &Tree = &sl.tree;
    tree.validate()?;
    let n = tree.nodes;
    if sl.pieces.len() != n {
        return Err(SurgeryError::Malformed(format!(
            "{} pieces for {n} nodes",
            sl.pieces.len()
        )));
    }
    if sl.fold_vertices.len() != tree.edges.len() {
        return Err(SurgeryError::Malformed(
            "one pair of fold vertices per edge is required".into(),
        ));
    }
    if !sl.xi.is_empty() && sl.xi.len() != tree.edges.len() {
        return Err(SurgeryError::Malformed(
            "xi must be given per edge or not at all".into(),
        ));
    }
    if let Some(ws) = &sl.weights {
        if ws.len() != n {
            return Err(SurgeryError::Malformed(
                "one characteristic function per piece".into(),
            ));
        }
        for (v, w) in ws.iter().enumerate() {
            w.check_total(&sl.pieces[v])
                .map_err(|e| SurgeryError::Malformed(format!("piece {v}: {e}")))?;
            if w.n() != ws[0].n() {
                return Err(SurgeryError::WeightMismatch(
                    "pieces have different ranks".into(),
                ));
            }
        }
    }
    let ups: Vec<_> = sl.pieces.iter().map(|p| p.cofaces()).collect();

    // fold vertices: admissible, pairwise distinct and non-adjacent per node
    let mut folds_at: Vec<Vec<SimplexId>> = vec![Vec::new(); n];
    for (e, &(u, v)) in tree.edges.iter().enumerate() {
        for (side, node) in [(0, u), (1, v)] {
            let f = sl.fold_vertices[e][side];
            let s = &sl.pieces[node];
            if !s.contains(f) || s.rank(f) != 1 {
                return Err(SurgeryError::Malformed(format!(
                    "{f} is not a vertex of piece {node}"
                )));
            }
            if !s.is_admissible_with(&ups[node], f) {
                return Err(SurgeryError::NotAdmissible { node, vertex: f });
            }
            folds_at[node].push(f);
        }
    }
    for (node, fs) in folds_at.iter().enumerate() {
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                if fs[i] == fs[j] || !sl.pieces[node].edges_between(fs[i], fs[j]).is_empty() {
                    return Err(SurgeryError::AdjacentFoldVertices {
                        node,
                        a: fs[i],
                        b: fs[j],
                    });
                }
            }
        }
    }

    // link isomorphisms
    let mut links: Vec<[Link; 2]> = Vec::new();
    let mut xis: Vec<BTreeMap<SimplexId, SimplexId>> = Vec::new();
    for (e, &(u, v)) in tree.edges.iter().enumerate() {
        let [iu, iv] = sl.fold_vertices[e];
        let (su, sv) = (&sl.pieces[u], &sl.pieces[v]);
        let lu = su.link_with(&ups[u], iu);
        let lv = sv.link_with(&ups[v], iv);
        let weights = sl.weights.as_ref().map(|w| (&w[u], &w[v]));
        let xi = match sl.xi.get(e).and_then(|x| x.as_ref()) {
            Some(given) => {
                let m = check_xi(su, &lu, sv, &lv, given)?;
                if let Some((wu, wv)) = weights {
                    for (&a, &b) in &m {
                        if su.rank(a) == 1 && wu.get(a) != wv.get(b) {
                            return Err(SurgeryError::WeightMismatch(format!(
                                "edge {e}: vertex {a} of piece {u} and vertex {b} of piece {v}"
                            )));
                        }
                    }
                }
                m
            }
            None => find_xi(&lu, &lv, weights)?,
        };
        links.push([lu, lv]);
        xis.push(xi);
    }

    // surviving simplices and identifications
    let mut offset = vec![0usize; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + sl.pieces[v].len();
    }
    let mut kept: Vec<Vec<bool>> = sl.pieces.iter().map(|p| vec![true; p.len()]).collect();
    for (node, fs) in folds_at.iter().enumerate() {
        for &f in fs {
            for x in sl.pieces[node].open_star_with(&ups[node], f).members {
                kept[node][x] = false;
            }
        }
    }
    let mut uf = UnionFind::new(offset[n]);
    for (e, &(u, v)) in tree.edges.iter().enumerate() {
        for (&a, &b) in &xis[e] {
            uf.union(offset[u] + a, offset[v] + b);
        }
    }

    // classes in rank order
    let mut classes: BTreeMap<usize, Vec<(usize, SimplexId)>> = BTreeMap::new();
    for v in 0..n {
        for x in sl.pieces[v].ids().skip(1) {
            if kept[v][x] {
                classes
                    .entry(uf.find(offset[v] + x))
                    .or_default()
                    .push((v, x));
            }
        }
    }
    let mut order: Vec<(usize, usize)> = classes
        .iter()
        .map(|(&root, members)| {
            let (v, x) = members[0];
            (sl.pieces[v].rank(x), root)
        })
        .collect();
    order.sort_unstable();
    let mut b = PosetBuilder::new();
    let mut class_id: HashMap<usize, SimplexId> = HashMap::new();
    for &(rank, root) in &order {
        let members = &classes[&root];
        let face_classes =
            |(v, x): (usize, SimplexId), uf: &mut UnionFind| -> Option<Vec<SimplexId>> {
                let mut fs = Vec::new();
                for f in sl.pieces[v].faces(x) {
                    if f == EMPTY {
                        fs.push(EMPTY);
                    } else {
                        fs.push(*class_id.get(&uf.find(offset[v] + f))?);
                    }
                }
                fs.sort_unstable();
                Some(fs)
            };
        let Some(fs) = face_classes(members[0], &mut uf) else {
            return Err(SurgeryError::InconsistentGluing(format!(
                "a face of class {root} was removed"
            )));
        };
        for &m in &members[1..] {
            let (v, x) = m;
            if sl.pieces[v].rank(x) != rank || face_classes(m, &mut uf).as_ref() != Some(&fs) {
                return Err(SurgeryError::InconsistentGluing(format!(
                    "simplex {x} of piece {v} is glued to a simplex with different faces"
                )));
            }
        }
        let id = if rank == 1 {
            let (v, x) = members[0];
            let name = sl.pieces[v]
                .label(x)
                .map_or_else(|| x.to_string(), str::to_string);
            b.add_labeled_vertex(format!("{v}.{name}"))
        } else {
            b.add_simplex(&fs)
                .map_err(|e| SurgeryError::InconsistentGluing(e.to_string()))?
        };
        class_id.insert(root, id);
    }
    let sum = b
        .finish()
        .map_err(|e| SurgeryError::InconsistentGluing(e.to_string()))?;

    let mut embeddings: Vec<Vec<Option<SimplexId>>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut emb = vec![None; sl.pieces[v].len()];
        emb[EMPTY] = Some(EMPTY);
        for x in sl.pieces[v].ids().skip(1) {
            if kept[v][x] {
                emb[x] = Some(class_id[&uf.find(offset[v] + x)]);
            }
        }
        embeddings.push(emb);
    }
    let regions: Vec<BTreeSet<SimplexId>> = embeddings
        .iter()
        .map(|emb| emb.iter().skip(1).flatten().copied().collect())
        .collect();
    let cycles: Vec<BTreeSet<SimplexId>> = tree
        .edges
        .iter()
        .enumerate()
        .map(|(e, &(u, _))| {
            links[e][0]
                .to_parent
                .iter()
                .skip(1)
                .map(|&x| embeddings[u][x].expect("links survive"))
                .collect()
        })
        .collect();

    let lambda = match &sl.weights {
        None => None,
        Some(ws) => {
            let mut l = CharacteristicFunction::new(ws[0].n());
            for v in 0..n {
                for (&x, c) in ws[v].values() {
                    let Some(k) = embeddings[v].get(x).copied().flatten() else {
                        continue;
                    };
                    match l.get(k) {
                        Some(old) if old != c => {
                            return Err(SurgeryError::WeightMismatch(format!(
                                "vertex {k} of the sum receives {old} and {c}"
                            )))
                        }
                        Some(_) => {}
                        None => l.insert(k, c.clone()).expect("same rank"),
                    }
                }
            }
            Some(l)
        }
    };

    let mut out = sl.clone();
    out.xi = xis.into_iter().map(Some).collect();
    out.derived = Some(SlicingDerived {
        sum,
        lambda,
        regions,
        cycles,
        embeddings,
    });
    Ok(out)
}

fn pair(s1: &SimplicialPoset, i1: SimplexId, s2: &SimplicialPoset, i2: SimplexId) -> Slicing {
    Slicing {
        tree: Tree {
            nodes: 2,
            edges: vec![(0, 1)],
        },
        pieces: vec![s1.clone(), s2.clone()],
        weights: None,
        fold_vertices: vec![[i1, i2]],
        xi: Vec::new(),
        derived: None,
    }
}

/// `S₁ #_{i₁,i₂} S₂`. Without `xi` a link isomorphism is searched.
pub fn connected_sum(
    s1: &SimplicialPoset,
    i1: SimplexId,
    s2: &SimplicialPoset,
    i2: SimplexId,
    xi: Option<&BTreeMap<SimplexId, SimplexId>>,
) -> Result<SimplicialPoset, SurgeryError> {
    let mut sl = pair(s1, i1, s2, i2);
    sl.xi = vec![xi.cloned()];
    let out = tree_connected_sum(&sl)?;
    Ok(out.derived.expect("filled").sum)
}

/// Connected sum of weighted spheres along a value-preserving link isomorphism.
pub fn weighted_connected_sum(
    w1: &WeightedSphere,
    i1: SimplexId,
    w2: &WeightedSphere,
    i2: SimplexId,
    xi: Option<&BTreeMap<SimplexId, SimplexId>>,
) -> Result<WeightedSphere, SurgeryError> {
    if w1.rank() != w2.rank() {
        return Err(SurgeryError::WeightMismatch(format!(
            "ranks {} and {}",
            w1.rank(),
            w2.rank()
        )));
    }
    let mut sl = pair(&w1.sphere, i1, &w2.sphere, i2);
    sl.xi = vec![xi.cloned()];
    sl.weights = Some(vec![w1.lambda.clone(), w2.lambda.clone()]);
    let d = tree_connected_sum(&sl)?.derived.expect("filled");
    WeightedSphere::new(d.sum, d.lambda.expect("weighted"))
        .map_err(|e| SurgeryError::InconsistentGluing(format!("star condition lost: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::examples::*;
    use crate::poset::{is_cell_sphere, isomorphic};

    fn first_vertex(s: &SimplicialPoset) -> SimplexId {
        s.vertices().next().unwrap()
    }

    #[test]
    fn cycles_add_lengths_minus_four() {
        for (a, b) in [(3, 3), (3, 4), (4, 5), (6, 6)] {
            let (x, y) = (cycle(a), cycle(b));
            let k = connected_sum(&x, first_vertex(&x), &y, first_vertex(&y), None).unwrap();
            assert!(isomorphic(&k, &cycle(a + b - 4)), "{a} {b}");
        }
    }

    #[test]
    fn two_tetrahedra_give_the_pillow() {
        let t = tetrahedron_boundary();
        let k = connected_sum(&t, 1, &t, 1, None).unwrap();
        assert_eq!(k.f_vector(), vec![1, 3, 3, 2]);
        let r = is_cell_sphere(&k).unwrap();
        assert!(r.is_sphere() && !k.is_simplicial_complex());
    }

    #[test]
    fn two_gon_vertex_is_not_admissible() {
        let g = two_gon();
        let c = cycle(4);
        let v = first_vertex(&g);
        assert!(matches!(
            connected_sum(&g, v, &c, first_vertex(&c), None),
            Err(SurgeryError::NotAdmissible { node: 0, .. })
        ));
    }

    #[test]
    fn explicit_xi_is_checked() {
        let (x, y) = (cycle(4), cycle(4));
        let lx = x.link(1).unwrap();
        let ly = y.link(1).unwrap();
        let good: BTreeMap<SimplexId, SimplexId> = lx.to_parent[1..]
            .iter()
            .copied()
            .zip(ly.to_parent[1..].iter().copied())
            .collect();
        assert!(connected_sum(&x, 1, &y, 1, Some(&good)).is_ok());
        let mut bad = good.clone();
        let k = *bad.keys().next().unwrap();
        bad.insert(k, 0);
        assert!(matches!(
            connected_sum(&x, 1, &y, 1, Some(&bad)),
            Err(SurgeryError::LinkMismatch(_))
        ));
    }

    fn weighted_triangle(values: [[i64; 2]; 3]) -> WeightedSphere {
        let s = cycle(3);
        let l =
            CharacteristicFunction::from_vectors(2, s.vertices().zip(values.map(|v| v.to_vec())))
                .unwrap();
        WeightedSphere::new(s, l).unwrap()
    }

    #[test]
    fn weighted_sum_preserves_star_condition() {
        let a = weighted_triangle([[1, 0], [0, 1], [1, 1]]);
        let b = weighted_triangle([[1, 1], [0, 1], [1, 0]]);
        // vertex 1 of a has neighbours with values (0,1), (1,1); so does vertex 3 of b
        let w = weighted_connected_sum(&a, 1, &b, 3, None).unwrap();
        assert_eq!(w.sphere.vertex_count(), 2);
        assert!(
            crate::weighted::check_star_condition(&w.sphere, &w.lambda, true)
                .unwrap()
                .holds
        );
        let c = weighted_triangle([[1, 0], [0, 1], [1, -1]]);
        assert!(matches!(
            weighted_connected_sum(&a, 1, &c, 3, None),
            Err(SurgeryError::WeightMismatch(_))
        ));
    }

    #[test]
    fn single_node_is_identity() {
        let s = octahedron_boundary();
        let out = tree_connected_sum(&Slicing::trivial(s.clone())).unwrap();
        let d = out.derived.unwrap();
        assert!(isomorphic(&d.sum, &s));
        assert_eq!(d.region_vertices(0).len(), 6);
    }

    #[test]
    fn path_of_tetrahedra_has_adjacent_folds() {
        let t = tetrahedron_boundary();
        let sl = Slicing {
            tree: Tree {
                nodes: 3,
                edges: vec![(0, 1), (1, 2)],
            },
            pieces: vec![t.clone(), t.clone(), t],
            weights: None,
            fold_vertices: vec![[1, 1], [2, 1]],
            xi: Vec::new(),
            derived: None,
        };
        assert!(matches!(
            tree_connected_sum(&sl),
            Err(SurgeryError::AdjacentFoldVertices { node: 1, .. })
        ));
        let mut cyclic = sl.clone();
        cyclic.tree.edges.push((2, 0));
        assert!(matches!(
            tree_connected_sum(&cyclic),
            Err(SurgeryError::NotATree(_))
        ));
    }
}
