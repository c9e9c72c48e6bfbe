//! Generators shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use toric_origami::delzant::examples::{
    standard_simplex3, standard_triangle, unit_cube, unit_square,
};
use toric_origami::delzant::RationalPolytope;
use toric_origami::poset::cycles::{check_cycle, simple_cycles};
use toric_origami::poset::random::random_sphere;
use toric_origami::surgery::{cut_along_cycles, width};
use toric_origami::template::examples::{four_cycle, single, two_squares, two_triangles};
use toric_origami::template::{OrigamiTemplate, TemplateEdge};
use toric_origami::{SimplexId, SimplicialPoset};

/// Edges of the link of `v` in a 2-sphere.
pub fn link_cycle(s: &SimplicialPoset, v: SimplexId) -> Vec<SimplexId> {
    let up = s.cofaces();
    let mut out: BTreeSet<SimplexId> = BTreeSet::new();
    for e in up.of(v) {
        for t in up.of(e) {
            out.extend(s.faces(t).filter(|&f| !s.vertices_of(f).any(|x| x == v)));
        }
    }
    out.into_iter().collect()
}

/// Boundary of a disc grown from a random triangle, if it is a simple cycle.
pub fn grown_disc_boundary<R: Rng>(
    rng: &mut R,
    s: &SimplicialPoset,
    steps: usize,
) -> Option<Vec<SimplexId>> {
    let up = s.cofaces();
    let tris: Vec<SimplexId> = s.simplices_of_rank(3).collect();
    let mut region: BTreeSet<SimplexId> = BTreeSet::from([*tris.choose(rng)?]);
    for _ in 0..steps {
        let frontier: Vec<SimplexId> = region
            .iter()
            .flat_map(|&t| s.faces(t))
            .flat_map(|e| up.of(e).collect::<Vec<_>>())
            .filter(|t| !region.contains(t))
            .collect();
        let Some(&next) = frontier.choose(rng) else {
            break;
        };
        region.insert(next);
    }
    let boundary: Vec<SimplexId> = s
        .simplices_of_rank(2)
        .filter(|&e| up.of(e).filter(|t| region.contains(t)).count() == 1)
        .collect();
    (check_cycle(s, &boundary).is_ok() && region.len() < tris.len()).then_some(boundary)
}

/// A random sphere with a mutually ordered family of cycles: vertex links and
/// grown disc boundaries, each kept only if the family can still be cut.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
) -> (SimplicialPoset, Vec<Vec<SimplexId>>) {
    if rng.gen_bool(0.15) {
        let k = rng.gen_range(3..=12);
        let s = toric_origami::poset::examples::cycle(k);
        let mut pairs = simple_cycles(&s, 2);
        pairs.shuffle(rng);
        let mut family: Vec<Vec<SimplexId>> = Vec::new();
        for p in pairs.into_iter().take(6) {
            family.push(p);
            if cut_along_cycles(&s, &family).is_err() {
                family.pop();
            }
        }
        return (s, family);
    }
    let n = rng.gen_range(4..=max_vertices);
    let s = random_sphere(rng, n, 3 * n);
    let mut family: Vec<Vec<SimplexId>> = Vec::new();
    let attempts = rng.gen_range(1..=5);
    for _ in 0..attempts {
        let c = if rng.gen_bool(0.5) {
            let vs: Vec<SimplexId> = s.vertices().collect();
            Some(link_cycle(&s, *vs.choose(rng).expect("vertices")))
        } else {
            let steps = rng.gen_range(0..2 * n);
            grown_disc_boundary(rng, &s, steps)
        };
        let Some(c) = c else { continue };
        family.push(c);
        if cut_along_cycles(&s, &family).is_err() {
            family.pop();
        }
    }
    (s, family)
}

/// Fatness by enumerating every subset of simple cycles that can be cut
/// along, independent of the search in the library. A subset that cannot be
/// cut has no cuttable superset, so the enumeration grows subsets one cycle
/// at a time.
pub fn subset_fatness(s: &SimplicialPoset) -> usize {
    fn grow(
        s: &SimplicialPoset,
        cycles: &[Vec<SimplexId>],
        from: usize,
        chosen: &mut Vec<Vec<SimplexId>>,
        best: &mut usize,
    ) {
        for i in from..cycles.len() {
            chosen.push(cycles[i].clone());
            if let Ok(sl) = cut_along_cycles(s, chosen) {
                *best = (*best).min(width(&sl).expect("derived").width);
                grow(s, cycles, i + 1, chosen, best);
            }
            chosen.pop();
        }
    }
    let cycles = simple_cycles(s, s.vertex_count());
    let mut best = s.vertex_count();
    grow(s, &cycles, 0, &mut Vec::new(), &mut best);
    best
}

fn poly(dim: usize, data: &[(&[i64], &str)]) -> RationalPolytope {
    RationalPolytope::from_normals(dim, data).expect("valid polytope")
}

fn edge(u: usize, v: usize, facet_u: usize, facet_v: usize) -> TemplateEdge {
    TemplateEdge {
        u,
        v,
        facet_u,
        facet_v,
    }
}

/// A Hirzebruch trapezoid; facet 3 is the slanted side.
pub fn trapezoid() -> RationalPolytope {
    poly(
        2,
        &[
            (&[-1, 0], "0"),
            (&[0, -1], "0"),
            (&[0, 1], "1"),
            (&[1, 1], "2"),
        ],
    )
}

/// Triangle times interval; facets 3 and 4 are the bottom and top.
pub fn prism() -> RationalPolytope {
    poly(
        3,
        &[
            (&[-1, 0, 0], "0"),
            (&[0, -1, 0], "0"),
            (&[1, 1, 0], "1"),
            (&[0, 0, -1], "0"),
            (&[0, 0, 1], "1"),
        ],
    )
}

/// Tree templates with known geometry.
pub fn tree_templates() -> Vec<(String, OrigamiTemplate)> {
    let hex = four_cycle();
    let sub = |keep: &[usize]| {
        OrigamiTemplate::new(
            hex.nodes.clone(),
            keep.iter().map(|&i| hex.edges[i]).collect(),
        )
        .expect("valid")
    };
    let mut out = vec![
        ("two triangles".to_string(), two_triangles()),
        ("two squares".into(), two_squares()),
        ("triangle".into(), single(standard_triangle())),
        ("square".into(), single(unit_square())),
        ("cube".into(), single(unit_cube())),
        ("tetrahedron".into(), single(standard_simplex3())),
        ("hexagon path of 4".into(), sub(&[0, 1, 2])),
        ("hexagon path of 4, other cut".into(), sub(&[1, 2, 3])),
        (
            "three squares".into(),
            OrigamiTemplate::new(
                vec![unit_square(), unit_square(), unit_square()],
                vec![edge(0, 1, 2, 2), edge(1, 2, 0, 0)],
            )
            .expect("valid"),
        ),
        (
            "two trapezoids".into(),
            OrigamiTemplate::new(vec![trapezoid(), trapezoid()], vec![edge(0, 1, 3, 3)])
                .expect("valid"),
        ),
        (
            "three cubes".into(),
            OrigamiTemplate::new(
                vec![unit_cube(), unit_cube(), unit_cube()],
                vec![edge(0, 1, 3, 3), edge(1, 2, 0, 0)],
            )
            .expect("valid"),
        ),
        (
            "two prisms".into(),
            OrigamiTemplate::new(vec![prism(), prism()], vec![edge(0, 1, 4, 4)]).expect("valid"),
        ),
    ];
    out.push((
        "square folded on both sides".into(),
        OrigamiTemplate::new(
            vec![unit_square(); 3],
            vec![edge(0, 1, 0, 0), edge(0, 2, 2, 2)],
        )
        .expect("valid"),
    ));
    out
}
