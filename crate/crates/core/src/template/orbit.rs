//! Facet classes, the orbit-space poset of a tree template and induced templates.
//!
//! Two non-fold facets at the ends of an edge are elementary neighbours when
//! they meet the fold facet in the same nonempty face. Faces are compared by
//! the coordinates of their vertices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{graph_is_tree, validate_template, OrigamiTemplate, TemplateEdge, TemplateError};
use crate::delzant::{
    dual_weighted_sphere, primitive_halfspace, DualWeightedSphere, Halfspace, RationalPolytope,
};
use crate::poset::{
    find_isomorphism_colored, PosetBuilder, SimplexId, SimplicialPoset, UnionFind, EMPTY,
};
use crate::surgery::{tree_connected_sum, Slicing, Tree};
use crate::weighted::{CharacteristicFunction, SignClass};

type Point = Vec<BigRational>;

/// Non-fold facets glued into one facet of the orbit space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FacetClass {
    /// `(node, facet)` pairs.
    pub members: BTreeSet<(usize, usize)>,
}

/// A weighted poset of the orbit space with, for each vertex, the facets it glues.
#[derive(Clone, Debug)]
pub struct OrbitPoset {
    pub sphere: SimplicialPoset,
    pub nu: CharacteristicFunction,
    pub provenance: BTreeMap<SimplexId, FacetClass>,
}

/// Coordinates of the vertices lying on all of `facets`.
fn face_points(p: &RationalPolytope, facets: &[usize]) -> BTreeSet<Point> {
    (0..p.vertex_count())
        .filter(|&v| facets.iter().all(|f| p.vertex_facets[v].contains(f)))
        .map(|v| p.vertices[v].clone())
        .collect()
}

/// The face `∩ facets` met with `fold`, or `None` when that is empty.
fn meet_fold(p: &RationalPolytope, facets: &[usize], fold: usize) -> Option<BTreeSet<Point>> {
    let mut all = facets.to_vec();
    all.push(fold);
    let pts = face_points(p, &all);
    (!pts.is_empty()).then_some(pts)
}

/// Facet indices of an element of a dual sphere.
fn facets_of(d: &DualWeightedSphere, x: SimplexId) -> Vec<usize> {
    d.sphere
        .vertices_of(x)
        .map(|v| {
            d.sphere
                .label(v)
                .and_then(|l| l.parse().ok())
                .expect("facet label")
        })
        .collect()
}

/// Equivalence classes of non-fold facets under elementary neighbourliness,
/// ordered by their smallest member. Defined for any template.
pub fn facet_classes(t: &OrigamiTemplate) -> Vec<FacetClass> {
    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for node in 0..t.nodes.len() {
        let folds = t.fold_set(node);
        for f in 0..t.nodes[node].facet_count() {
            if !folds.contains(&f) {
                index.insert((node, f), keys.len());
                keys.push((node, f));
            }
        }
    }
    let mut uf = UnionFind::new(keys.len());
    for e in &t.edges {
        let (pu, pv) = (&t.nodes[e.u], &t.nodes[e.v]);
        let mut at_u: BTreeMap<BTreeSet<Point>, usize> = BTreeMap::new();
        for f in 0..pu.facet_count() {
            if let (Some(&k), Some(m)) = (index.get(&(e.u, f)), meet_fold(pu, &[f], e.facet_u)) {
                at_u.insert(m, k);
            }
        }
        for f in 0..pv.facet_count() {
            if let (Some(&k), Some(m)) = (index.get(&(e.v, f)), meet_fold(pv, &[f], e.facet_v)) {
                if let Some(&j) = at_u.get(&m) {
                    uf.union(j, k);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, FacetClass> = BTreeMap::new();
    for (k, &m) in keys.iter().enumerate() {
        classes
            .entry(uf.find(k))
            .or_insert_with(|| FacetClass {
                members: BTreeSet::new(),
            })
            .members
            .insert(m);
    }
    let mut out: Vec<FacetClass> = classes.into_values().collect();
    out.sort();
    out
}

fn require_tree(t: &OrigamiTemplate) -> Result<(), TemplateError> {
    let r = validate_template(t);
    if !r.valid {
        return Err(TemplateError::Invalid(r.problems().join("; ")));
    }
    if let Some(e) = t.edges.iter().find(|e| e.is_loop()) {
        return Err(TemplateError::NotCooriented { node: e.u });
    }
    if !graph_is_tree(t) {
        return Err(TemplateError::NotATree(format!(
            "{} nodes and {} edges; the orbit space is not a disc",
            t.nodes.len(),
            t.edges.len()
        )));
    }
    Ok(())
}

/// Sign classes of the normals of `members`, which must all be equal.
fn class_normal(t: &OrigamiTemplate, class: &FacetClass) -> Result<Halfspace, TemplateError> {
    let mut it = class
        .members
        .iter()
        .map(|&(v, f)| &t.nodes[v].halfspaces[f]);
    let first = it
        .next()
        .ok_or_else(|| TemplateError::EmptyIntersection("facet class without members".into()))?
        .clone();
    if let Some(h) = it.find(|h| **h != first) {
        return Err(TemplateError::InconsistentNormals(format!(
            "{:?} and {:?} in one class",
            first.normal, h.normal
        )));
    }
    Ok(first)
}

/// Faces of the orbit space as glued classes of faces of the node polytopes.
///
/// A face of a node polytope not lying in a fold facet is the intersection of
/// a set of non-fold facets (the whole polytope for the empty set). Faces at
/// the ends of an edge are glued when they meet the fold facet in the same
/// nonempty face. The vertices of the result are the facet classes.
pub fn orbit_poset_glued(t: &OrigamiTemplate) -> Result<OrbitPoset, TemplateError> {
    require_tree(t)?;
    let duals: Vec<DualWeightedSphere> = t.nodes.iter().map(dual_weighted_sphere).collect();
    let folds: Vec<BTreeSet<usize>> = (0..t.nodes.len()).map(|v| t.fold_set(v)).collect();
    let mut offset = vec![0usize; duals.len() + 1];
    for (v, d) in duals.iter().enumerate() {
        offset[v + 1] = offset[v] + d.sphere.len();
    }
    let kept = |v: usize, x: SimplexId| {
        facets_of(&duals[v], x)
            .iter()
            .all(|f| !folds[v].contains(f))
    };
    let mut uf = UnionFind::new(offset[duals.len()]);
    for e in &t.edges {
        let mut at_u: BTreeMap<BTreeSet<Point>, SimplexId> = BTreeMap::new();
        for x in duals[e.u].sphere.ids().filter(|&x| kept(e.u, x)) {
            if let Some(m) = meet_fold(&t.nodes[e.u], &facets_of(&duals[e.u], x), e.facet_u) {
                at_u.insert(m, x);
            }
        }
        for y in duals[e.v].sphere.ids().filter(|&y| kept(e.v, y)) {
            if let Some(m) = meet_fold(&t.nodes[e.v], &facets_of(&duals[e.v], y), e.facet_v) {
                if let Some(&x) = at_u.get(&m) {
                    uf.union(offset[e.u] + x, offset[e.v] + y);
                }
            }
        }
    }

    let mut classes: BTreeMap<usize, Vec<(usize, SimplexId)>> = BTreeMap::new();
    for (v, d) in duals.iter().enumerate() {
        for x in d.sphere.ids().filter(|&x| kept(v, x)) {
            classes
                .entry(uf.find(offset[v] + x))
                .or_default()
                .push((v, x));
        }
    }
    let mut order: Vec<(usize, usize)> = classes
        .iter()
        .map(|(&root, m)| (duals[m[0].0].sphere.rank(m[0].1), root))
        .collect();
    order.sort_unstable();

    let roots: Vec<usize> = (0..offset[duals.len()]).map(|i| uf.find(i)).collect();
    let mut b = PosetBuilder::new();
    let mut new_id: BTreeMap<usize, SimplexId> = BTreeMap::new();
    let mut provenance = BTreeMap::new();
    let mut nu = CharacteristicFunction::new(t.dim());
    for (rank, root) in order {
        let members = &classes[&root];
        let faces_of = |(v, x): (usize, SimplexId)| -> Result<Vec<SimplexId>, TemplateError> {
            let mut fs = duals[v]
                .sphere
                .faces(x)
                .map(|f| {
                    new_id.get(&roots[offset[v] + f]).copied().ok_or_else(|| {
                        TemplateError::Surgery(crate::surgery::SurgeryError::InconsistentGluing(
                            format!("a face of element {x} at node {v} was removed"),
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            fs.sort_unstable();
            Ok(fs)
        };
        let id = match rank {
            0 => EMPTY,
            1 => {
                let class = FacetClass {
                    members: members
                        .iter()
                        .map(|&(v, x)| (v, facets_of(&duals[v], x)[0]))
                        .collect(),
                };
                let h = class_normal(t, &class)?;
                let id = b.add_labeled_vertex(format!("F{}", provenance.len()));
                nu.insert(id, SignClass::new(h.normal).expect("primitive"))
                    .expect("length");
                provenance.insert(id, class);
                id
            }
            _ => {
                let fs = faces_of(members[0])?;
                for &m in &members[1..] {
                    if faces_of(m)? != fs {
                        return Err(TemplateError::Surgery(
                            crate::surgery::SurgeryError::InconsistentGluing(format!(
                                "glued faces at nodes {} and {} have different boundaries",
                                members[0].0, m.0
                            )),
                        ));
                    }
                }
                b.add_simplex(&fs)
                    .map_err(|e| TemplateError::Malformed(e.to_string()))?
            }
        };
        new_id.insert(root, id);
    }
    let sphere = b
        .finish()
        .map_err(|e| TemplateError::Malformed(e.to_string()))?;
    Ok(OrbitPoset {
        sphere,
        nu,
        provenance,
    })
}

/// Geometric link identification across `e`: the element of the link of the
/// fold vertex at `u` goes to the element at `v` meeting the fold in the same face.
fn geometric_xi(
    t: &OrigamiTemplate,
    e: &TemplateEdge,
    du: &DualWeightedSphere,
    dv: &DualWeightedSphere,
) -> Result<BTreeMap<SimplexId, SimplexId>, TemplateError> {
    let link_elems = |d: &DualWeightedSphere, p: &RationalPolytope, fold: usize| {
        let lk = d.sphere.link(d.facet_vertex[fold]).expect("vertex");
        lk.to_parent
            .iter()
            .skip(1)
            .map(|&x| {
                (
                    meet_fold(p, &facets_of(d, x), fold).expect("link elements meet the fold"),
                    x,
                )
            })
            .collect::<BTreeMap<_, _>>()
    };
    let a = link_elems(du, &t.nodes[e.u], e.facet_u);
    let b = link_elems(dv, &t.nodes[e.v], e.facet_v);
    a.iter()
        .map(|(k, &x)| {
            b.get(k).map(|&y| (x, y)).ok_or_else(|| {
                TemplateError::Invalid(format!(
                    "no face at node {} matches face {x} of node {}",
                    e.v, e.u
                ))
            })
        })
        .collect()
}

/// The same weighted poset as a connected sum of the dual spheres along the
/// tree, folding at the vertices dual to the fold facets.
pub fn orbit_poset_as_connected_sum(t: &OrigamiTemplate) -> Result<OrbitPoset, TemplateError> {
    require_tree(t)?;
    let duals: Vec<DualWeightedSphere> = t.nodes.iter().map(dual_weighted_sphere).collect();
    let xi = t
        .edges
        .iter()
        .map(|e| geometric_xi(t, e, &duals[e.u], &duals[e.v]).map(Some))
        .collect::<Result<Vec<_>, _>>()?;
    let sl = Slicing {
        tree: Tree {
            nodes: t.nodes.len(),
            edges: t.edges.iter().map(|e| (e.u, e.v)).collect(),
        },
        pieces: duals.iter().map(|d| d.sphere.clone()).collect(),
        weights: Some(duals.iter().map(|d| d.nu.clone()).collect()),
        fold_vertices: t
            .edges
            .iter()
            .map(|e| {
                [
                    duals[e.u].facet_vertex[e.facet_u],
                    duals[e.v].facet_vertex[e.facet_v],
                ]
            })
            .collect(),
        xi,
        derived: None,
    };
    let done = tree_connected_sum(&sl)?;
    let derived = done.derived.expect("filled by the sum");
    let mut provenance: BTreeMap<SimplexId, FacetClass> = BTreeMap::new();
    for (v, d) in duals.iter().enumerate() {
        for (f, &x) in d.facet_vertex.iter().enumerate() {
            if let Some(y) = derived.embeddings[v][x] {
                provenance
                    .entry(y)
                    .or_insert_with(|| FacetClass {
                        members: BTreeSet::new(),
                    })
                    .members
                    .insert((v, f));
            }
        }
    }
    let nu = derived.lambda.expect("weights were given");
    for class in provenance.values() {
        class_normal(t, class)?;
    }
    Ok(OrbitPoset {
        sphere: derived.sum,
        nu,
        provenance,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    /// A poset isomorphism preserving the characteristic values exists.
    pub weighted_isomorphic: bool,
    /// One exists that also maps each vertex to the vertex with the same facet class.
    pub provenance_preserved: bool,
}

/// Compares the glued orbit poset with the connected-sum construction.
pub fn orbit_posets_agree(t: &OrigamiTemplate) -> Result<AgreementReport, TemplateError> {
    let a = orbit_poset_glued(t)?;
    let b = orbit_poset_as_connected_sum(t)?;
    let colour = |o: &OrbitPoset, by_class: bool, table: &mut BTreeMap<String, u64>| -> Vec<u64> {
        o.sphere
            .ids()
            .map(|x| {
                let key = match (o.nu.get(x), o.provenance.get(&x)) {
                    (Some(_), Some(c)) if by_class => format!("{:?}", c.members),
                    (Some(s), _) => format!("{s:?}"),
                    _ => return 0,
                };
                let next = table.len() as u64 + 1;
                *table.entry(key).or_insert(next)
            })
            .collect()
    };
    let mut report = AgreementReport {
        weighted_isomorphic: false,
        provenance_preserved: false,
    };
    for by_class in [false, true] {
        let mut table = BTreeMap::new();
        let (ca, cb) = (
            colour(&a, by_class, &mut table),
            colour(&b, by_class, &mut table),
        );
        let found = find_isomorphism_colored(&a.sphere, &b.sphere, &ca, &cb).is_some();
        if by_class {
            report.provenance_preserved = found;
        } else {
            report.weighted_isomorphic = found;
        }
    }
    Ok(report)
}

/// Integer `U` with `νᵀU = e₁`: the first column is a point with `⟨ν, x⟩ = 1`
/// and the others are a basis of the lattice `ν^⊥ ∩ Z^n`.
fn unimodular_completion(normal: &[i64]) -> Vec<Vec<i64>> {
    let n = normal.len();
    let mut r = normal.to_vec();
    // columns of U
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| r[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let p = *nonzero
            .iter()
            .min_by_key(|&&i| r[i].abs())
            .expect("nonempty");
        for &j in &nonzero {
            if j != p {
                let q = r[j].div_euclid(r[p]);
                r[j] -= q * r[p];
                let cp = cols[p].clone();
                for (a, b) in cols[j].iter_mut().zip(cp) {
                    *a -= q * b;
                }
            }
        }
    }
    let p = (0..n).find(|&i| r[i] != 0).expect("nonzero normal");
    cols.swap(0, p);
    r.swap(0, p);
    if r[0] < 0 {
        for a in cols[0].iter_mut() {
            *a = -*a;
        }
    }
    cols
}

/// The induced template on the hyperplane of `class`: the nodes carrying a
/// member, the edges across which members are elementary neighbours, each
/// polytope cut with the hyperplane and written in lattice coordinates on it.
pub fn induced_template(
    t: &OrigamiTemplate,
    class: &FacetClass,
) -> Result<OrigamiTemplate, TemplateError> {
    let n = t.dim();
    if n < 2 {
        return Err(TemplateError::Unsupported(
            "facets of 1-dimensional templates are points".into(),
        ));
    }
    if let Some(&(v, f)) = class
        .members
        .iter()
        .find(|&&(v, f)| v >= t.nodes.len() || f >= t.nodes[v].facet_count())
    {
        return Err(TemplateError::Malformed(format!(
            "no facet {f} at node {v}"
        )));
    }
    let h = class_normal(t, class)?;
    let member_at: BTreeMap<usize, usize> = class.members.iter().copied().collect();
    if member_at.len() != class.members.len() {
        return Err(TemplateError::Malformed("two members at one node".into()));
    }
    let u = unimodular_completion(&h.normal);
    let x0: Vec<BigRational> = u[0]
        .iter()
        .map(|&a| BigRational::from_integer(BigInt::from(a)) * &h.offset)
        .collect();
    let basis = &u[1..];

    let nodes: Vec<usize> = member_at.keys().copied().collect();
    let local: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut polytopes = Vec::new();
    let mut facet_map: Vec<BTreeMap<usize, usize>> = Vec::new();
    for &v in &nodes {
        let p = &t.nodes[v];
        let f = member_at[&v];
        let mut hs = Vec::new();
        let mut map = BTreeMap::new();
        for g in 0..p.facet_count() {
            if g == f
                || !p.facet_vertices[g]
                    .iter()
                    .any(|x| p.facet_vertices[f].contains(x))
            {
                continue;
            }
            let ng = &p.halfspaces[g];
            let w: Vec<i64> = basis
                .iter()
                .map(|b| b.iter().zip(&ng.normal).map(|(a, c)| a * c).sum())
                .collect();
            let shift = ng
                .normal
                .iter()
                .zip(&x0)
                .map(|(&a, x)| BigRational::from_integer(BigInt::from(a)) * x)
                .fold(BigRational::zero(), |s, t| s + t);
            map.insert(g, hs.len());
            hs.push(primitive_halfspace(&w, &ng.offset - shift)?);
        }
        if hs.is_empty() {
            return Err(TemplateError::EmptyIntersection(format!(
                "facet {f} of node {v} meets no other facet"
            )));
        }
        polytopes.push(RationalPolytope::build(n - 1, hs)?);
        facet_map.push(map);
    }
    let mut edges = Vec::new();
    for e in &t.edges {
        let (Some(&fu), Some(&fv)) = (member_at.get(&e.u), member_at.get(&e.v)) else {
            continue;
        };
        let (Some(mu), Some(mv)) = (
            meet_fold(&t.nodes[e.u], &[fu], e.facet_u),
            meet_fold(&t.nodes[e.v], &[fv], e.facet_v),
        ) else {
            continue;
        };
        if mu != mv {
            continue;
        }
        let (iu, iv) = (local[&e.u], local[&e.v]);
        edges.push(TemplateEdge {
            u: iu,
            v: iv,
            facet_u: facet_map[iu][&e.facet_u],
            facet_v: facet_map[iv][&e.facet_v],
        });
    }
    Ok(OrigamiTemplate {
        ids: nodes.iter().map(|&v| t.ids[v]).collect(),
        nodes: polytopes,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::*;
    use crate::delzant::examples::*;
    use crate::poset::examples::{cycle, two_gon};
    use crate::poset::{is_cell_sphere, isomorphic};

    #[test]
    fn two_triangles_give_the_two_gon() {
        let t = two_triangles();
        let classes = facet_classes(&t);
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.members.len() == 2));
        let o = orbit_poset_glued(&t).unwrap();
        assert!(isomorphic(&o.sphere, &two_gon()));
        assert_eq!(o.provenance.len(), 2);
        let r = orbit_posets_agree(&t).unwrap();
        assert!(r.weighted_isomorphic && r.provenance_preserved);
    }

    #[test]
    fn two_squares_give_a_four_cycle() {
        let t = two_squares();
        let classes = facet_classes(&t);
        // bottom and top merge; the two far sides stay apart
        assert_eq!(
            classes.iter().map(|c| c.members.len()).collect::<Vec<_>>(),
            vec![1, 2, 2, 1]
        );
        let o = orbit_poset_glued(&t).unwrap();
        assert!(isomorphic(&o.sphere, &cycle(4)));
        assert!(is_cell_sphere(&o.sphere).unwrap().is_sphere());
        let r = orbit_posets_agree(&t).unwrap();
        assert!(r.weighted_isomorphic && r.provenance_preserved);
    }

    #[test]
    fn single_node_is_the_dual_sphere() {
        for p in [
            standard_triangle(),
            unit_square(),
            unit_cube(),
            standard_simplex3(),
        ] {
            let t = single(p.clone());
            let o = orbit_poset_glued(&t).unwrap();
            assert!(isomorphic(&o.sphere, &dual_weighted_sphere(&p).sphere));
            assert!(orbit_posets_agree(&t).unwrap().provenance_preserved);
            assert_eq!(facet_classes(&t).len(), p.facet_count());
        }
    }

    #[test]
    fn cube_path_in_dimension_three() {
        let t = OrigamiTemplate::new(
            vec![unit_cube(), unit_cube(), unit_cube()],
            vec![
                TemplateEdge {
                    u: 0,
                    v: 1,
                    facet_u: 3,
                    facet_v: 3,
                },
                TemplateEdge {
                    u: 1,
                    v: 2,
                    facet_u: 0,
                    facet_v: 0,
                },
            ],
        )
        .unwrap();
        assert!(validate_template(&t).valid);
        let o = orbit_poset_glued(&t).unwrap();
        // four side classes run through all cubes, two end facets stay
        assert_eq!(o.sphere.vertex_count(), 6);
        assert!(orbit_posets_agree(&t).unwrap().provenance_preserved);
    }

    #[test]
    fn cycles_and_loops_are_refused() {
        assert!(matches!(
            orbit_poset_glued(&four_cycle()),
            Err(TemplateError::NotATree(_))
        ));
        let looped = OrigamiTemplate::new(
            vec![standard_triangle()],
            vec![TemplateEdge {
                u: 0,
                v: 0,
                facet_u: 2,
                facet_v: 2,
            }],
        )
        .unwrap();
        assert!(matches!(
            orbit_poset_glued(&looped),
            Err(TemplateError::NotCooriented { node: 0 })
        ));
        // four outer sides run around the annulus; the four inner sides touch no fold
        let sizes: Vec<usize> = facet_classes(&four_cycle())
            .iter()
            .map(|c| c.members.len())
            .collect();
        assert_eq!(sizes.iter().filter(|&&k| k == 1).count(), 4);
        assert_eq!(sizes.iter().sum::<usize>(), 16);
    }

    #[test]
    fn induced_templates() {
        let t = two_triangles();
        for c in facet_classes(&t) {
            let ind = induced_template(&t, &c).unwrap();
            assert_eq!((ind.nodes.len(), ind.edges.len()), (2, 1));
            assert!(ind
                .nodes
                .iter()
                .all(|p| p.dim == 1 && p.vertex_count() == 2));
            assert!(validate_template(&ind).valid);
        }
        let t = two_squares();
        let long = facet_classes(&t)
            .into_iter()
            .find(|c| c.members.len() == 2)
            .unwrap();
        let ind = induced_template(&t, &long).unwrap();
        assert_eq!((ind.nodes.len(), ind.edges.len()), (2, 1));
        assert!(validate_template(&ind).valid);
        let short = facet_classes(&t)
            .into_iter()
            .find(|c| c.members.len() == 1)
            .unwrap();
        let ind = induced_template(&t, &short).unwrap();
        assert_eq!((ind.nodes.len(), ind.edges.len()), (1, 0));
        for c in facet_classes(&four_cycle()) {
            assert!(validate_template(&induced_template(&four_cycle(), &c).unwrap()).valid);
        }
    }

    #[test]
    fn induced_facet_of_the_cube_is_a_square() {
        let t = single(unit_cube());
        let c = &facet_classes(&t)[0];
        let ind = induced_template(&t, c).unwrap();
        assert_eq!(ind.nodes[0].vertex_count(), 4);
        assert!(ind.nodes[0].is_delzant().holds);
    }

    #[test]
    fn lattice_completion() {
        for nu in [
            vec![0, -1],
            vec![2, 3],
            vec![-3, 5, 7],
            vec![1, 1, 1],
            vec![0, 0, -1],
        ] {
            let u = unimodular_completion(&nu);
            let dot = |a: &[i64]| a.iter().zip(&nu).map(|(x, y)| x * y).sum::<i64>();
            assert_eq!(dot(&u[0]), 1);
            assert!(u[1..].iter().all(|b| dot(b) == 0));
            let m: Vec<Vec<i64>> = u.clone();
            assert_eq!(crate::weighted::lattice::determinant(&m).abs(), 1);
        }
    }
}
