//! Simplicial posets.
//!
//! A simplicial poset has a unique minimal element `∅` and every lower interval
//! `[∅, I]` is a Boolean lattice. Simplices carry stable integer identifiers;
//! two simplices may share a vertex set, so vertex sets never identify a simplex.
//! Identifier `0` is always the empty simplex and every simplex is numbered after
//! all of its faces.

pub mod cycles;
mod iso;
mod json;
pub mod random;
mod sphere;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

pub use iso::{find_isomorphism, find_isomorphism_colored, isomorphic};
pub use json::{PosetJson, SimplexJson};
pub use sphere::{is_cell_sphere, LinkShape, SphereCheckReport, SphereVerdict};

/// Identifier of a simplex inside one [`SimplicialPoset`].
pub type SimplexId = usize;

/// The empty simplex of every poset.
pub const EMPTY: SimplexId = 0;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("inconsistent gluing: {0}")]
    InconsistentGluing(String),
    #[error("unknown simplex {0}")]
    UnknownSimplex(SimplexId),
    #[error("sphere recognition is only available in dimension ≤ 2 (got {dim})")]
    UnsupportedDimension {
        dim: usize,
        partial: Box<SphereCheckReport>,
    },
    #[error("malformed poset document: {0}")]
    Malformed(String),
}

/// Incremental constructor that enforces "faces before cofaces".
#[derive(Clone, Debug)]
pub struct PosetBuilder {
    ranks: Vec<u8>,
    face_start: Vec<u32>,
    faces: Vec<u32>,
    labels: BTreeMap<SimplexId, String>,
}

impl Default for PosetBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl PosetBuilder {
    pub fn new() -> Self {
        PosetBuilder {
            ranks: vec![0],
            face_start: vec![0, 0],
            faces: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rank(&self, id: SimplexId) -> usize {
        self.ranks[id] as usize
    }

    pub fn add_vertex(&mut self) -> SimplexId {
        self.push(1, &[EMPTY])
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> SimplexId {
        let id = self.add_vertex();
        self.labels.insert(id, label.into());
        id
    }

    /// Adds a simplex of rank `faces.len()` with the given facets. Facets must
    /// already exist and have rank `faces.len() - 1`; the Boolean-interval
    /// condition is checked in [`PosetBuilder::finish`].
    pub fn add_simplex(&mut self, faces: &[SimplexId]) -> Result<SimplexId, PosetError> {
        let rank = faces.len();
        if rank < 2 {
            return Err(PosetError::InconsistentGluing(
                "simplices of rank ≥ 2 need at least two facets".into(),
            ));
        }
        for &f in faces {
            if f >= self.ranks.len() {
                return Err(PosetError::UnknownSimplex(f));
            }
            if self.ranks[f] as usize != rank - 1 {
                return Err(PosetError::InconsistentGluing(format!(
                    "facet {f} has rank {} but a rank-{rank} simplex needs rank {}",
                    self.ranks[f],
                    rank - 1
                )));
            }
        }
        Ok(self.push(rank, faces))
    }

    fn push(&mut self, rank: usize, faces: &[SimplexId]) -> SimplexId {
        let id = self.ranks.len();
        self.ranks.push(rank as u8);
        self.faces.extend(faces.iter().map(|&f| f as u32));
        self.face_start.push(self.faces.len() as u32);
        id
    }

    pub fn set_label(&mut self, vertex: SimplexId, label: impl Into<String>) {
        self.labels.insert(vertex, label.into());
    }

    pub fn finish(self) -> Result<SimplicialPoset, PosetError> {
        SimplicialPoset::from_parts(self.ranks, self.face_start, self.faces, self.labels)
    }
}

/// A finite simplicial poset stored in compressed row form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPoset {
    ranks: Vec<u8>,
    face_start: Vec<u32>,
    faces: Vec<u32>,
    vert_start: Vec<u32>,
    verts: Vec<u32>,
    labels: BTreeMap<SimplexId, String>,
}

/// Upward covering relation, computed on demand.
#[derive(Clone, Debug)]
pub struct Cofaces {
    start: Vec<u32>,
    list: Vec<u32>,
}

impl Cofaces {
    pub fn of(&self, id: SimplexId) -> impl Iterator<Item = SimplexId> + '_ {
        self.list[self.start[id] as usize..self.start[id + 1] as usize]
            .iter()
            .map(|&c| c as usize)
    }

    pub fn count(&self, id: SimplexId) -> usize {
        (self.start[id + 1] - self.start[id]) as usize
    }
}

/// Subset of a poset that is closed downward (a subcomplex) or upward (an open star).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubPoset {
    pub members: BTreeSet<SimplexId>,
    pub closure: Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    Downward,
    Upward,
}

impl SubPoset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        self.members.contains(&id)
    }

    /// Whether the closure flag matches the actual closure property in `parent`.
    pub fn is_consistent(&self, parent: &SimplicialPoset) -> bool {
        match self.closure {
            Closure::Downward => self
                .members
                .iter()
                .all(|&m| parent.faces(m).all(|f| self.members.contains(&f))),
            Closure::Upward => {
                let up = parent.cofaces();
                self.members
                    .iter()
                    .all(|&m| up.of(m).all(|c| self.members.contains(&c)))
            }
        }
    }
}

/// The link of a simplex together with its embedding back into the parent poset.
#[derive(Clone, Debug)]
pub struct Link {
    pub poset: SimplicialPoset,
    /// `to_parent[k]` is the parent simplex `J ∖ I` represented by link element `k`.
    pub to_parent: Vec<SimplexId>,
}

impl SimplicialPoset {
    fn from_parts(
        ranks: Vec<u8>,
        face_start: Vec<u32>,
        faces: Vec<u32>,
        labels: BTreeMap<SimplexId, String>,
    ) -> Result<Self, PosetError> {
        let n = ranks.len();
        if n == 0 || ranks[0] != 0 {
            return Err(PosetError::InconsistentGluing(
                "missing minimal element".into(),
            ));
        }
        let mut vert_start = Vec::with_capacity(n + 1);
        let mut verts: Vec<u32> = Vec::new();
        vert_start.push(0u32);
        // ∅ has no vertices.
        vert_start.push(0);
        let mut scratch: Vec<u32> = Vec::new();
        let mut below: HashSet<u32> = HashSet::new();
        for id in 1..n {
            let rank = ranks[id] as usize;
            let fs = &faces[face_start[id] as usize..face_start[id + 1] as usize];
            if rank == 0 {
                return Err(PosetError::InconsistentGluing(format!(
                    "simplex {id} is a second minimal element"
                )));
            }
            if rank == 1 {
                if fs != [0] {
                    return Err(PosetError::InconsistentGluing(format!(
                        "vertex {id} must cover only the empty simplex"
                    )));
                }
                verts.push(id as u32);
                vert_start.push(verts.len() as u32);
                continue;
            }
            if fs.len() != rank {
                return Err(PosetError::InconsistentGluing(format!(
                    "simplex {id} of rank {rank} has {} facets",
                    fs.len()
                )));
            }
            scratch.clear();
            for &f in fs {
                let f = f as usize;
                if f >= id || ranks[f] as usize != rank - 1 {
                    return Err(PosetError::InconsistentGluing(format!(
                        "facet {f} of simplex {id} is not a preceding simplex of rank {}",
                        rank - 1
                    )));
                }
                scratch
                    .extend_from_slice(&verts[vert_start[f] as usize..vert_start[f + 1] as usize]);
            }
            scratch.sort_unstable();
            scratch.dedup();
            if scratch.len() != rank {
                return Err(PosetError::InconsistentGluing(format!(
                    "simplex {id} of rank {rank} spans {} vertices",
                    scratch.len()
                )));
            }
            // Facets must be the `rank` distinct codimension-one faces, and the
            // codimension-two level must be shared: this forces a Boolean interval.
            below.clear();
            for &f in fs {
                let f = f as usize;
                for &g in &faces[face_start[f] as usize..face_start[f + 1] as usize] {
                    below.insert(g);
                }
            }
            let mut missing: BTreeSet<u32> = scratch.iter().copied().collect();
            for &f in fs {
                let f = f as usize;
                let fv = &verts[vert_start[f] as usize..vert_start[f + 1] as usize];
                let absent: Vec<u32> = scratch
                    .iter()
                    .filter(|v| !fv.contains(v))
                    .copied()
                    .collect();
                if absent.len() != 1 || !missing.remove(&absent[0]) {
                    return Err(PosetError::InconsistentGluing(format!(
                        "facets of simplex {id} do not form a Boolean interval"
                    )));
                }
            }
            if below.len() != rank * (rank - 1) / 2 {
                return Err(PosetError::InconsistentGluing(format!(
                    "lower interval of simplex {id} is not Boolean ({} faces of codimension two)",
                    below.len()
                )));
            }
            verts.extend_from_slice(&scratch);
            vert_start.push(verts.len() as u32);
        }
        for &v in labels.keys() {
            if v >= n || ranks[v] != 1 {
                return Err(PosetError::Malformed(format!(
                    "label attached to non-vertex {v}"
                )));
            }
        }
        Ok(SimplicialPoset {
            ranks,
            face_start,
            faces,
            vert_start,
            verts,
            labels,
        })
    }

    /// Builds a poset from maximal simplices given as vertex-label tuples.
    ///
    /// Vertices are identified by label and numbered in label order. Without explicit identifications every
    /// proper face is identified by its vertex set, while maximal simplices keep
    /// their multiplicity. With identifications, faces of rank ≥ 2 are glued only
    /// where a [`FaceGlue`] says so (together with all of their faces).
    pub fn build<L>(
        maximal: &[Vec<L>],
        identifications: Option<&[FaceGlue<L>]>,
    ) -> Result<Self, PosetError>
    where
        L: Clone + Ord + std::fmt::Display,
    {
        if maximal.is_empty() {
            return Err(PosetError::InconsistentGluing(
                "no maximal simplices".into(),
            ));
        }
        let mut label_ids: BTreeMap<L, usize> = BTreeMap::new();
        let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(maximal.len());
        for (k, tuple) in maximal.iter().enumerate() {
            if tuple.is_empty() {
                return Err(PosetError::InconsistentGluing(format!(
                    "maximal simplex {k} is empty"
                )));
            }
            let mut ids: Vec<usize> = Vec::with_capacity(tuple.len());
            for l in tuple {
                let next = label_ids.len();
                ids.push(*label_ids.entry(l.clone()).or_insert(next));
            }
            let mut sorted = ids.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != ids.len() {
                return Err(PosetError::InconsistentGluing(format!(
                    "maximal simplex {k} repeats a vertex"
                )));
            }
            tuples.push(sorted);
        }

        // Each face is keyed by (owner class, vertex set). Owner classes come from
        // a union-find over (maximal simplex, vertex subset) pairs.
        let explicit = identifications.is_some();
        let mut uf = UnionFind::new(0);
        let mut key_of: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        for (k, t) in tuples.iter().enumerate() {
            for subset in subsets(t) {
                if subset.len() < 2 {
                    continue;
                }
                let idx = uf.push();
                key_of.insert((k, subset), idx);
            }
        }
        if explicit {
            for glue in identifications.unwrap_or(&[]) {
                let a = glue.simplex_a;
                let b = glue.simplex_b;
                if a >= tuples.len() || b >= tuples.len() {
                    return Err(PosetError::InconsistentGluing(format!(
                        "gluing refers to missing maximal simplex ({a}, {b})"
                    )));
                }
                let mut face: Vec<usize> = Vec::new();
                for l in &glue.face {
                    match label_ids.get(l) {
                        Some(&id) => face.push(id),
                        None => {
                            return Err(PosetError::InconsistentGluing(format!(
                                "gluing uses unknown vertex {l}"
                            )))
                        }
                    }
                }
                face.sort_unstable();
                face.dedup();
                if face.len() < 2 {
                    continue;
                }
                for sub in subsets(&face) {
                    if sub.len() < 2 {
                        continue;
                    }
                    let ka = key_of.get(&(a, sub.clone()));
                    let kb = key_of.get(&(b, sub.clone()));
                    match (ka, kb) {
                        (Some(&x), Some(&y)) => uf.union(x, y),
                        _ => {
                            return Err(PosetError::InconsistentGluing(format!(
                                "face {:?} is not shared by maximal simplices {a} and {b}",
                                glue.face.iter().map(|l| l.to_string()).collect::<Vec<_>>()
                            )))
                        }
                    }
                }
            }
        } else {
            // Identify proper faces by vertex set; maximal simplices stay distinct.
            let mut first: HashMap<Vec<usize>, usize> = HashMap::new();
            for (k, t) in tuples.iter().enumerate() {
                for subset in subsets(t) {
                    if subset.len() < 2 || subset.len() == t.len() {
                        continue;
                    }
                    let idx = key_of[&(k, subset.clone())];
                    match first.get(&subset) {
                        Some(&j) => uf.union(idx, j),
                        None => {
                            first.insert(subset, idx);
                        }
                    }
                }
            }
            // A maximal simplex that is also a proper face elsewhere is that face.
            for (k, t) in tuples.iter().enumerate() {
                if t.len() >= 2 {
                    if let Some(&j) = first.get(t) {
                        uf.union(key_of[&(k, t.clone())], j);
                    }
                }
            }
        }

        let mut b = PosetBuilder::new();
        // Vertices are numbered in label order.
        let mut vertex_simplex = vec![0usize; label_ids.len()];
        for (l, &id) in &label_ids {
            vertex_simplex[id] = b.add_labeled_vertex(l.to_string());
        }
        // Create classes rank by rank.
        let max_rank = tuples.iter().map(|t| t.len()).max().unwrap_or(1);
        let mut class_simplex: HashMap<usize, SimplexId> = HashMap::new();
        let mut keys_by_rank: Vec<Vec<(usize, Vec<usize>, usize)>> = vec![Vec::new(); max_rank + 1];
        for ((k, subset), &idx) in &key_of {
            keys_by_rank[subset.len()].push((*k, subset.clone(), idx));
        }
        for r in 2..=max_rank {
            keys_by_rank[r].sort();
            for (k, subset, idx) in keys_by_rank[r].clone() {
                let root = uf.find(idx);
                if class_simplex.contains_key(&root) {
                    continue;
                }
                let mut fs: Vec<SimplexId> = Vec::with_capacity(r);
                for skip in 0..subset.len() {
                    let sub: Vec<usize> = subset
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    let f = if sub.len() == 1 {
                        vertex_simplex[sub[0]]
                    } else {
                        let fidx = key_of[&(k, sub)];
                        class_simplex[&uf.find(fidx)]
                    };
                    fs.push(f);
                }
                let id = b.add_simplex(&fs)?;
                class_simplex.insert(root, id);
            }
        }
        b.finish()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.len() <= 1
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        id < self.ranks.len()
    }

    pub fn rank(&self, id: SimplexId) -> usize {
        self.ranks[id] as usize
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0) as usize
    }

    /// Dimension `max rank - 1`; `None` for the poset consisting of `∅` only.
    pub fn dim(&self) -> Option<usize> {
        self.max_rank().checked_sub(1)
    }

    pub fn faces(&self, id: SimplexId) -> impl Iterator<Item = SimplexId> + '_ {
        self.faces[self.face_start[id] as usize..self.face_start[id + 1] as usize]
            .iter()
            .map(|&f| f as usize)
    }

    /// Sorted vertex ids of a simplex.
    pub fn vertices_of(&self, id: SimplexId) -> impl Iterator<Item = SimplexId> + '_ {
        self.vertex_slice(id).iter().map(|&v| v as usize)
    }

    pub(crate) fn vertex_slice(&self, id: SimplexId) -> &[u32] {
        &self.verts[self.vert_start[id] as usize..self.vert_start[id + 1] as usize]
    }

    pub fn ids(&self) -> std::ops::Range<SimplexId> {
        0..self.ranks.len()
    }

    pub fn simplices_of_rank(&self, rank: usize) -> impl Iterator<Item = SimplexId> + '_ {
        self.ids().filter(move |&i| self.ranks[i] as usize == rank)
    }

    pub fn vertices(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices_of_rank(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().count()
    }

    pub fn label(&self, vertex: SimplexId) -> Option<&str> {
        self.labels.get(&vertex).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<SimplexId, String> {
        &self.labels
    }

    /// Number of simplices of each rank; index `k` holds the rank-`k` count.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.max_rank() + 1];
        for &r in &self.ranks {
            f[r as usize] += 1;
        }
        f
    }

    /// `Σ_k (-1)^k #{simplices of dimension k}`, the empty simplex excluded.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(r, &c)| if r % 2 == 1 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn cofaces(&self) -> Cofaces {
        let n = self.len();
        let mut count = vec![0u32; n + 1];
        for &f in &self.faces {
            count[f as usize + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let start = count.clone();
        let mut fill = count;
        let mut list = vec![0u32; self.faces.len()];
        for id in 0..n {
            for f in self.faces(id) {
                list[fill[f] as usize] = id as u32;
                fill[f] += 1;
            }
        }
        Cofaces { start, list }
    }

    pub fn maximal_simplices(&self) -> Vec<SimplexId> {
        let up = self.cofaces();
        self.ids().filter(|&i| up.count(i) == 0).collect()
    }

    pub fn is_pure(&self) -> bool {
        let r = self.max_rank();
        self.maximal_simplices().iter().all(|&m| self.rank(m) == r)
    }

    fn check(&self, id: SimplexId) -> Result<(), PosetError> {
        if id < self.len() {
            Ok(())
        } else {
            Err(PosetError::UnknownSimplex(id))
        }
    }

    /// Whether `lower ≤ upper` in the face order.
    pub fn is_face_of(&self, lower: SimplexId, upper: SimplexId) -> bool {
        if lower == upper {
            return true;
        }
        if self.rank(lower) >= self.rank(upper) {
            return false;
        }
        let lv = self.vertex_slice(lower);
        let uv = self.vertex_slice(upper);
        if !lv.iter().all(|v| uv.contains(v)) {
            return false;
        }
        let wanted: Vec<u32> = lv.to_vec();
        self.face_with_vertices(upper, &wanted) == Some(lower)
    }

    /// The unique face of `id` whose vertex set is `wanted` (sorted).
    pub fn face_with_vertices(&self, id: SimplexId, wanted: &[u32]) -> Option<SimplexId> {
        let mut cur = id;
        loop {
            let cv = self.vertex_slice(cur);
            if cv.len() == wanted.len() {
                return (cv == wanted).then_some(cur);
            }
            if wanted.is_empty() {
                return Some(EMPTY);
            }
            let drop = cv.iter().find(|v| !wanted.contains(v))?;
            cur = self
                .faces(cur)
                .find(|&f| !self.vertex_slice(f).contains(drop))?;
        }
    }

    /// The open star `{J | J ≥ I}`.
    pub fn open_star(&self, id: SimplexId) -> Result<SubPoset, PosetError> {
        self.check(id)?;
        let up = self.cofaces();
        Ok(self.open_star_with(&up, id))
    }

    pub(crate) fn open_star_with(&self, up: &Cofaces, id: SimplexId) -> SubPoset {
        let mut members = BTreeSet::new();
        let mut stack = vec![id];
        members.insert(id);
        while let Some(x) = stack.pop() {
            for c in up.of(x) {
                if members.insert(c) {
                    stack.push(c);
                }
            }
        }
        SubPoset {
            members,
            closure: Closure::Upward,
        }
    }

    /// Complement `J ∖ I` of a face `I ≤ J` inside the Boolean interval of `J`.
    pub fn complement(&self, upper: SimplexId, lower: SimplexId) -> Option<SimplexId> {
        let lv = self.vertex_slice(lower);
        let wanted: Vec<u32> = self
            .vertex_slice(upper)
            .iter()
            .filter(|v| !lv.contains(v))
            .copied()
            .collect();
        self.face_with_vertices(upper, &wanted)
    }

    /// The link `{J ∖ I | J ≥ I}` as a standalone poset.
    pub fn link(&self, id: SimplexId) -> Result<Link, PosetError> {
        self.check(id)?;
        let up = self.cofaces();
        Ok(self.link_with(&up, id))
    }

    pub(crate) fn link_with(&self, up: &Cofaces, id: SimplexId) -> Link {
        let star = self.open_star_with(up, id);
        let elems: BTreeSet<SimplexId> = star
            .members
            .iter()
            .filter_map(|&j| self.complement(j, id))
            .collect();
        self.induced(&elems)
    }

    /// Standalone copy of a downward-closed set of simplices.
    pub fn induced(&self, elems: &BTreeSet<SimplexId>) -> Link {
        let mut b = PosetBuilder::new();
        let mut map: HashMap<SimplexId, SimplexId> = HashMap::new();
        let mut to_parent = vec![EMPTY];
        map.insert(EMPTY, EMPTY);
        for &e in elems {
            if e == EMPTY {
                continue;
            }
            let id = if self.rank(e) == 1 {
                let v = b.add_vertex();
                if let Some(l) = self.label(e) {
                    b.set_label(v, l);
                }
                v
            } else {
                let fs: Vec<SimplexId> = self.faces(e).map(|f| map[&f]).collect();
                b.add_simplex(&fs)
                    .expect("downward-closed subset of a valid poset")
            };
            map.insert(e, id);
            to_parent.push(e);
        }
        Link {
            poset: b.finish().expect("downward-closed subset of a valid poset"),
            to_parent,
        }
    }

    /// Whether `J ↦ J ∖ I` is injective on the open star of `I`.
    pub fn is_admissible(&self, id: SimplexId) -> Result<bool, PosetError> {
        self.check(id)?;
        let up = self.cofaces();
        Ok(self.is_admissible_with(&up, id))
    }

    pub(crate) fn is_admissible_with(&self, up: &Cofaces, id: SimplexId) -> bool {
        let star = self.open_star_with(up, id);
        let mut seen = HashSet::new();
        star.members
            .iter()
            .all(|&j| self.complement(j, id).is_some_and(|c| seen.insert(c)))
    }

    /// True iff every vertex set supports at most one simplex.
    pub fn is_simplicial_complex(&self) -> bool {
        let mut seen: HashSet<&[u32]> = HashSet::with_capacity(self.len());
        self.ids()
            .skip(1)
            .all(|i| seen.insert(self.vertex_slice(i)))
    }

    /// Downward closure of a set of simplices.
    pub fn closure<I: IntoIterator<Item = SimplexId>>(&self, ids: I) -> BTreeSet<SimplexId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<SimplexId> = ids.into_iter().collect();
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(self.faces(x));
            }
        }
        out
    }

    /// Vertex adjacency lists of the 1-skeleton (parallel edges collapsed).
    pub fn adjacency(&self) -> BTreeMap<SimplexId, Vec<SimplexId>> {
        let mut adj: BTreeMap<SimplexId, BTreeSet<SimplexId>> =
            self.vertices().map(|v| (v, BTreeSet::new())).collect();
        for e in self.simplices_of_rank(2) {
            let vs = self.vertex_slice(e);
            let (a, b) = (vs[0] as usize, vs[1] as usize);
            adj.get_mut(&a).map(|s| s.insert(b));
            adj.get_mut(&b).map(|s| s.insert(a));
        }
        adj.into_iter()
            .map(|(k, v)| (k, v.into_iter().collect()))
            .collect()
    }

    /// Edges (rank-2 simplices) joining two vertices.
    pub fn edges_between(&self, a: SimplexId, b: SimplexId) -> Vec<SimplexId> {
        let (lo, hi) = if a < b {
            (a as u32, b as u32)
        } else {
            (b as u32, a as u32)
        };
        self.simplices_of_rank(2)
            .filter(|&e| self.vertex_slice(e) == [lo, hi])
            .collect()
    }
}

/// Explicit identification of a common face of two maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceGlue<L> {
    pub simplex_a: usize,
    pub simplex_b: usize,
    pub face: Vec<L>,
}

fn subsets(t: &[usize]) -> Vec<Vec<usize>> {
    let n = t.len();
    (1u32..(1 << n))
        .map(|mask| {
            t.iter()
                .enumerate()
                .filter(|&(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn push(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Small named examples used throughout the tests and the CLI.
pub mod examples {
    use super::*;

    /// Boundary of the tetrahedron on vertices `1..=4`.
    pub fn tetrahedron_boundary() -> SimplicialPoset {
        SimplicialPoset::build(
            &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
            None,
        )
        .expect("valid")
    }

    /// Boundary of the octahedron with antipodal pairs (0,1), (2,3), (4,5).
    pub fn octahedron_boundary() -> SimplicialPoset {
        let mut tris = Vec::new();
        for &a in &[0, 1] {
            for &b in &[2, 3] {
                for &c in &[4, 5] {
                    tris.push(vec![a, b, c]);
                }
            }
        }
        SimplicialPoset::build(&tris, None).expect("valid")
    }

    /// Cycle graph `C_k` on vertices `0..k`.
    pub fn cycle(k: usize) -> SimplicialPoset {
        assert!(k >= 2);
        if k == 2 {
            return two_gon();
        }
        let edges: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
        SimplicialPoset::build(&edges, None).expect("valid")
    }

    /// Two vertices `a`, `b` joined by two distinct edges.
    pub fn two_gon() -> SimplicialPoset {
        SimplicialPoset::build(&[vec!["a", "b"], vec!["a", "b"]], None).expect("valid")
    }

    /// Suspension of the 3-cycle: the bipyramid over a triangle.
    pub fn bipyramid() -> SimplicialPoset {
        let mut tris = Vec::new();
        for i in 0..3 {
            let j = (i + 1) % 3;
            tris.push(vec![i, j, 3]);
            tris.push(vec![i, j, 4]);
        }
        SimplicialPoset::build(&tris, None).expect("valid")
    }

    /// A single triangle with its faces.
    pub fn triangle() -> SimplicialPoset {
        SimplicialPoset::build(&[vec![1, 2, 3]], None).expect("valid")
    }

    /// Boundary of the `k`-gonal bipyramid (`k ≥ 3`): equator `0..k`, poles `k`, `k+1`.
    pub fn bipyramid_k(k: usize) -> SimplicialPoset {
        let mut tris = Vec::new();
        for i in 0..k {
            let j = (i + 1) % k;
            tris.push(vec![i, j, k]);
            tris.push(vec![i, j, k + 1]);
        }
        SimplicialPoset::build(&tris, None).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn vertex_by_label(s: &SimplicialPoset, l: &str) -> SimplexId {
        s.vertices().find(|&v| s.label(v) == Some(l)).unwrap()
    }

    #[test]
    fn tetrahedron_boundary_counts() {
        let s = tetrahedron_boundary();
        assert_eq!(s.f_vector(), vec![1, 4, 6, 4]);
        assert!(s.is_simplicial_complex());
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn two_edges_on_same_pair() {
        let s = two_gon();
        assert_eq!(s.f_vector(), vec![1, 2, 2]);
        assert!(!s.is_simplicial_complex());
        let a = vertex_by_label(&s, "a");
        assert!(!s.is_admissible(a).unwrap());
        let star = s.open_star(a).unwrap();
        assert_eq!(star.len(), 3);
        let link = s.link(a).unwrap();
        // ∅ and the single vertex b
        assert_eq!(link.poset.f_vector(), vec![1, 1]);
        assert_eq!(link.to_parent[1], vertex_by_label(&s, "b"));
    }

    #[test]
    fn vertex_link_of_tetrahedron_is_triangle() {
        let s = tetrahedron_boundary();
        let v = vertex_by_label(&s, "1");
        let link = s.link(v).unwrap();
        assert_eq!(link.poset.f_vector(), vec![1, 3, 3]);
        let star = s.open_star(v).unwrap();
        assert_eq!(star.len(), 7);
        assert!(star.is_consistent(&s));
        let labels: BTreeSet<Vec<String>> = star
            .members
            .iter()
            .map(|&j| {
                s.vertices_of(j)
                    .map(|x| s.label(x).unwrap().to_string())
                    .collect()
            })
            .collect();
        assert!(labels.contains(&vec!["1".to_string(), "3".to_string(), "4".to_string()]));
        assert!(s.is_admissible(v).unwrap());
    }

    #[test]
    fn link_and_star_of_empty() {
        let s = tetrahedron_boundary();
        assert_eq!(s.open_star(EMPTY).unwrap().len(), s.len());
        let link = s.link(EMPTY).unwrap();
        assert!(isomorphic(&link.poset, &s));
    }

    #[test]
    fn unknown_simplex() {
        let s = tetrahedron_boundary();
        assert!(matches!(s.link(99), Err(PosetError::UnknownSimplex(99))));
        assert!(matches!(
            s.open_star(99),
            Err(PosetError::UnknownSimplex(99))
        ));
        assert!(matches!(
            s.is_admissible(99),
            Err(PosetError::UnknownSimplex(99))
        ));
    }

    #[test]
    fn repeated_vertex_is_rejected() {
        let r = SimplicialPoset::build(&[vec![1, 1, 2]], None);
        assert!(matches!(r, Err(PosetError::InconsistentGluing(_))));
    }

    #[test]
    fn explicit_gluing_keeps_parallel_edges() {
        // Two triangles on {p, a, b} sharing the edges pa and pb but not ab.
        let glue = vec![
            FaceGlue {
                simplex_a: 0,
                simplex_b: 1,
                face: vec!["p", "a"],
            },
            FaceGlue {
                simplex_a: 0,
                simplex_b: 1,
                face: vec!["p", "b"],
            },
        ];
        let s = SimplicialPoset::build(&[vec!["p", "a", "b"], vec!["p", "a", "b"]], Some(&glue))
            .unwrap();
        assert_eq!(s.f_vector(), vec![1, 3, 4, 2]);
        let p = vertex_by_label(&s, "p");
        assert!(s.is_admissible(p).unwrap());
    }

    #[test]
    fn builder_rejects_non_boolean_interval() {
        let mut b = PosetBuilder::new();
        let a = b.add_vertex();
        let c = b.add_vertex();
        let e1 = b.add_simplex(&[a, c]).unwrap();
        let e2 = b.add_simplex(&[a, c]).unwrap();
        // A "triangle" bounded by two edges on the same pair plus a third edge.
        let x = b.add_vertex();
        let _ = x;
        let t = b.add_simplex(&[e1, e2, e1]);
        assert!(t.is_ok());
        assert!(matches!(b.finish(), Err(PosetError::InconsistentGluing(_))));
    }

    #[test]
    fn admissibility_matches_star_link_sizes() {
        for s in [
            tetrahedron_boundary(),
            octahedron_boundary(),
            two_gon(),
            cycle(5),
            bipyramid(),
        ] {
            let up = s.cofaces();
            for id in s.ids() {
                let star = s.open_star_with(&up, id).len();
                let link = s.link_with(&up, id).poset.len();
                assert!(star >= link);
                assert_eq!(star == link, s.is_admissible_with(&up, id));
            }
        }
    }

    #[test]
    fn face_order() {
        let s = tetrahedron_boundary();
        let v1 = vertex_by_label(&s, "1");
        for t in s.simplices_of_rank(3) {
            let has = s.vertices_of(t).any(|x| x == v1);
            assert_eq!(s.is_face_of(v1, t), has);
            assert!(s.is_face_of(EMPTY, t));
        }
    }
}
