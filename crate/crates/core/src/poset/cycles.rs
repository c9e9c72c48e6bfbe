//! Codimension-one cycles in spheres of dimension 1 and 2.
//!
//! A cycle is given by its ridges: edges for a 2-sphere, two vertices for a
//! 1-sphere. Its sides are the facet components left after cutting along it.

use std::collections::{BTreeSet, HashSet};

use super::{is_cell_sphere, Cofaces, SimplexId, SimplicialPoset};

/// Checks that `ridges` form a 1-sphere in a 2-dimensional poset, or a pair of
/// distinct vertices in a 1-dimensional one.
pub fn check_cycle(s: &SimplicialPoset, ridges: &[SimplexId]) -> Result<(), String> {
    let d = s.dim().ok_or("empty poset")?;
    let set: BTreeSet<SimplexId> = ridges.iter().copied().collect();
    if set.len() != ridges.len() {
        return Err("repeated ridge".into());
    }
    if let Some(&r) = ridges.iter().find(|&&r| !s.contains(r) || s.rank(r) != d) {
        return Err(format!("{r} is not a ridge of this {d}-dimensional poset"));
    }
    match d {
        1 => {
            if ridges.len() == 2 {
                Ok(())
            } else {
                Err(format!("a 0-sphere has 2 points, got {}", ridges.len()))
            }
        }
        2 => {
            let c = s.induced(&s.closure(set.iter().copied())).poset;
            match is_cell_sphere(&c) {
                Ok(r) if r.is_sphere() && r.dim == Some(1) => Ok(()),
                Ok(r) => Err(format!("not a closed cycle: {}", r.reasons.join("; "))),
                Err(e) => Err(e.to_string()),
            }
        }
        _ => Err(format!(
            "cycles are supported in dimension 1 and 2, not {d}"
        )),
    }
}

/// Facet components of `s` after cutting along `ridges`, lowest facet first.
/// Returns `None` unless there are exactly two.
pub fn sides(
    s: &SimplicialPoset,
    up: &Cofaces,
    ridges: &[SimplexId],
) -> Option<[Vec<SimplexId>; 2]> {
    let d = s.dim()?;
    let cut: HashSet<SimplexId> = ridges.iter().copied().collect();
    let facets: Vec<SimplexId> = s.simplices_of_rank(d + 1).collect();
    let mut comp = vec![usize::MAX; s.len()];
    let mut parts: Vec<Vec<SimplexId>> = Vec::new();
    for &f in &facets {
        if comp[f] != usize::MAX {
            continue;
        }
        let k = parts.len();
        let mut part = vec![f];
        comp[f] = k;
        let mut i = 0;
        while i < part.len() {
            let x = part[i];
            i += 1;
            for r in s.faces(x) {
                if cut.contains(&r) {
                    continue;
                }
                for y in up.of(r) {
                    if comp[y] == usize::MAX {
                        comp[y] = k;
                        part.push(y);
                    }
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    if parts.len() != 2 {
        return None;
    }
    let b = parts.pop().expect("two parts");
    let a = parts.pop().expect("two parts");
    Some([a, b])
}

/// Vertices of the closed side spanned by `facets` together with the cycle.
pub fn side_vertices(
    s: &SimplicialPoset,
    facets: &[SimplexId],
    ridges: &[SimplexId],
) -> BTreeSet<SimplexId> {
    facets
        .iter()
        .chain(ridges)
        .flat_map(|&x| s.vertices_of(x))
        .collect()
}

/// Vertices of a cycle.
pub fn cycle_vertices(s: &SimplicialPoset, ridges: &[SimplexId]) -> BTreeSet<SimplexId> {
    ridges.iter().flat_map(|&r| s.vertices_of(r)).collect()
}

/// All simple cycles with at most `max_len` vertices, each as a sorted ridge list.
///
/// In dimension 2 these are simple cycles of the 1-skeleton (parallel edges
/// give distinct cycles, including 2-cycles); in dimension 1 every pair of
/// distinct vertices is a 0-sphere.
pub fn simple_cycles(s: &SimplicialPoset, max_len: usize) -> Vec<Vec<SimplexId>> {
    match s.dim() {
        Some(1) => {
            let vs: Vec<SimplexId> = s.vertices().collect();
            let mut out = Vec::new();
            if max_len >= 2 {
                for i in 0..vs.len() {
                    for j in i + 1..vs.len() {
                        out.push(vec![vs[i], vs[j]]);
                    }
                }
            }
            out
        }
        Some(2) => skeleton_cycles(s, max_len),
        _ => Vec::new(),
    }
}

fn skeleton_cycles(s: &SimplicialPoset, max_len: usize) -> Vec<Vec<SimplexId>> {
    // incidence: vertex -> (neighbour, edge)
    let mut inc: Vec<Vec<(SimplexId, SimplexId)>> = vec![Vec::new(); s.len()];
    for e in s.simplices_of_rank(2) {
        let vs: Vec<SimplexId> = s.vertices_of(e).collect();
        inc[vs[0]].push((vs[1], e));
        inc[vs[1]].push((vs[0], e));
    }
    let mut seen: HashSet<Vec<SimplexId>> = HashSet::new();
    let mut out = Vec::new();
    let mut on_path = vec![false; s.len()];
    let mut edges: Vec<SimplexId> = Vec::new();
    struct Ctx<'a> {
        inc: &'a [Vec<(SimplexId, SimplexId)>],
        max_len: usize,
        start: SimplexId,
    }
    fn dfs(
        ctx: &Ctx,
        v: SimplexId,
        depth: usize,
        on_path: &mut [bool],
        edges: &mut Vec<SimplexId>,
        seen: &mut HashSet<Vec<SimplexId>>,
        out: &mut Vec<Vec<SimplexId>>,
    ) {
        for &(w, e) in &ctx.inc[v] {
            if w == ctx.start && depth >= 2 && edges.last() != Some(&e) {
                let mut cyc = edges.clone();
                cyc.push(e);
                cyc.sort_unstable();
                if seen.insert(cyc.clone()) {
                    out.push(cyc);
                }
                continue;
            }
            if w <= ctx.start || on_path[w] || depth >= ctx.max_len {
                continue;
            }
            on_path[w] = true;
            edges.push(e);
            dfs(ctx, w, depth + 1, on_path, edges, seen, out);
            edges.pop();
            on_path[w] = false;
        }
    }
    for start in s.vertices() {
        let ctx = Ctx {
            inc: &inc,
            max_len,
            start,
        };
        on_path[start] = true;
        dfs(
            &ctx,
            start,
            1,
            &mut on_path,
            &mut edges,
            &mut seen,
            &mut out,
        );
        on_path[start] = false;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Whether the cycle is an induced subcomplex: no edge of `s` joins two of its
/// vertices except the cycle's own edges (in dimension 1: the two points are
/// not joined by an edge).
pub fn is_full_cycle(s: &SimplicialPoset, ridges: &[SimplexId]) -> bool {
    let verts = cycle_vertices(s, ridges);
    let own: HashSet<SimplexId> = ridges.iter().copied().collect();
    match s.dim() {
        Some(1) => {
            let v: Vec<SimplexId> = verts.into_iter().collect();
            v.len() == 2 && s.edges_between(v[0], v[1]).is_empty()
        }
        _ => s
            .simplices_of_rank(2)
            .all(|e| own.contains(&e) || !s.vertices_of(e).all(|x| verts.contains(&x))),
    }
}
