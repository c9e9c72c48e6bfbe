//! Characteristic functions into `Z^n / ±`, the unimodularity (star) condition,
//! four-colourings of 2-spheres and suspension.

mod coloring;
pub mod lattice;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{PosetBuilder, SimplexId, SimplicialPoset, EMPTY};

pub use coloring::{coloring_to_characteristic, four_color, Coloring, COLOR_VECTORS};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightedError {
    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("poset has rank {rank} but the characteristic function has n = {n}")]
    DimensionMismatch { rank: usize, n: usize },
    #[error("vertex {0} has no characteristic value")]
    MissingValue(SimplexId),
    #[error("{0} is not a vertex")]
    NotAVertex(SimplexId),
    #[error("star condition fails at simplex {}", .0.simplex)]
    StarConditionFails(Box<StarViolation>),
    #[error("no proper four-colouring found")]
    ColoringNotFound,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed document: {0}")]
    Malformed(String),
}

/// A primitive integer vector up to sign, stored with its first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignClass(Vec<i64>);

impl SignClass {
    pub fn new(v: Vec<i64>) -> Result<Self, WeightedError> {
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        if v.is_empty() || g != 1 {
            return Err(WeightedError::NotPrimitive(v));
        }
        let first = v.iter().copied().find(|&x| x != 0).unwrap_or(1);
        Ok(SignClass(if first < 0 {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        }))
    }

    /// The `i`-th standard basis vector of `Z^n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        SignClass(v)
    }

    pub fn rep(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The class of `(v, 0)` in `Z^{n+1}`.
    pub fn extended(&self) -> Self {
        let mut v = self.0.clone();
        v.push(0);
        SignClass(v)
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A map from vertices to sign classes in `Z^n / ±`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicFunction {
    n: usize,
    values: BTreeMap<SimplexId, SignClass>,
}

impl CharacteristicFunction {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "ambient rank must be positive");
        CharacteristicFunction {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn from_vectors<I>(n: usize, values: I) -> Result<Self, WeightedError>
    where
        I: IntoIterator<Item = (SimplexId, Vec<i64>)>,
    {
        let mut l = Self::new(n);
        for (v, x) in values {
            l.insert(v, SignClass::new(x)?)?;
        }
        Ok(l)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, vertex: SimplexId, value: SignClass) -> Result<(), WeightedError> {
        if value.len() != self.n {
            return Err(WeightedError::WrongLength {
                expected: self.n,
                got: value.len(),
            });
        }
        self.values.insert(vertex, value);
        Ok(())
    }

    pub fn get(&self, vertex: SimplexId) -> Option<&SignClass> {
        self.values.get(&vertex)
    }

    pub fn values(&self) -> &BTreeMap<SimplexId, SignClass> {
        &self.values
    }

    /// Number of distinct sign classes taken.
    pub fn value_count(&self) -> usize {
        self.values.values().collect::<BTreeSet<_>>().len()
    }

    /// Checks that every vertex of `s`, and nothing else, carries a value.
    pub fn check_total(&self, s: &SimplicialPoset) -> Result<(), WeightedError> {
        for &k in self.values.keys() {
            if !s.contains(k) || s.rank(k) != 1 {
                return Err(WeightedError::NotAVertex(k));
            }
        }
        match s.vertices().find(|v| !self.values.contains_key(v)) {
            Some(v) => Err(WeightedError::MissingValue(v)),
            None => Ok(()),
        }
    }

    /// Dense colour index per simplex id (vertices only, others 0), for
    /// colour-preserving isomorphism search.
    pub fn color_indices(
        &self,
        s: &SimplicialPoset,
        table: &mut BTreeMap<SignClass, u64>,
    ) -> Vec<u64> {
        let mut out = vec![0u64; s.len()];
        for (&v, c) in &self.values {
            if v < out.len() {
                let next = table.len() as u64 + 1;
                out[v] = *table.entry(c.clone()).or_insert(next);
            }
        }
        out
    }

    pub fn to_json(&self) -> CharacteristicJson {
        CharacteristicJson {
            n: self.n,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.to_string(), v.0.clone()))
                .collect(),
        }
    }

    pub fn from_json(doc: &CharacteristicJson) -> Result<Self, WeightedError> {
        if doc.n == 0 {
            return Err(WeightedError::Malformed("n must be positive".into()));
        }
        let mut l = Self::new(doc.n);
        for (k, v) in &doc.values {
            let id: SimplexId = k
                .parse()
                .map_err(|_| WeightedError::Malformed(format!("vertex key {k} is not an id")))?;
            l.insert(id, SignClass::new(v.clone())?)?;
        }
        Ok(l)
    }
}

/// `{"n": n, "values": {vertex-id: [ints]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacteristicJson {
    pub n: usize,
    pub values: BTreeMap<String, Vec<i64>>,
}

/// A simplex on which the characteristic vectors fail to span a direct summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarViolation {
    pub simplex: SimplexId,
    pub vertices: Vec<SimplexId>,
    /// Determinant for full-rank simplices.
    pub determinant: Option<i128>,
    pub smith_invariants: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarReport {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<StarViolation>,
}

/// Checks the star condition: on every maximal simplex the `n` vertex vectors
/// form a lattice basis. With `strict`, every nonempty simplex must span a
/// direct summand.
pub fn check_star_condition(
    s: &SimplicialPoset,
    lambda: &CharacteristicFunction,
    strict: bool,
) -> Result<StarReport, WeightedError> {
    lambda.check_total(s)?;
    let n = lambda.n();
    let maximal = s.maximal_simplices();
    if let Some(&bad) = maximal.iter().find(|&&m| s.rank(m) != n) {
        return Err(WeightedError::DimensionMismatch {
            rank: s.rank(bad),
            n,
        });
    }
    let targets: Vec<SimplexId> = if strict {
        s.ids().filter(|&i| i != EMPTY).collect()
    } else {
        maximal
    };
    let mut checked = 0;
    for id in targets {
        checked += 1;
        let vs: Vec<SimplexId> = s.vertices_of(id).collect();
        let rows: Vec<Vec<i64>> = vs.iter().map(|v| lambda.values[v].0.clone()).collect();
        let (ok, det) = if rows.len() == n {
            let d = lattice::determinant(&rows);
            (d.abs() == 1, Some(d))
        } else {
            (lattice::spans_direct_summand(&rows), None)
        };
        if !ok {
            return Ok(StarReport {
                holds: false,
                checked,
                witness: Some(StarViolation {
                    simplex: id,
                    vertices: vs,
                    determinant: det,
                    smith_invariants: lattice::smith_invariants(&rows),
                }),
            });
        }
    }
    Ok(StarReport {
        holds: true,
        checked,
        witness: None,
    })
}

/// A cell sphere with a characteristic function satisfying the star condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSphere {
    pub sphere: SimplicialPoset,
    pub lambda: CharacteristicFunction,
}

impl WeightedSphere {
    pub fn new(
        sphere: SimplicialPoset,
        lambda: CharacteristicFunction,
    ) -> Result<Self, WeightedError> {
        let report = check_star_condition(&sphere, &lambda, false)?;
        if let Some(w) = report.witness {
            return Err(WeightedError::StarConditionFails(Box::new(w)));
        }
        Ok(WeightedSphere { sphere, lambda })
    }

    pub fn rank(&self) -> usize {
        self.lambda.n()
    }

    pub fn value_count(&self) -> usize {
        self.lambda.value_count()
    }
}

/// Join of `W` with two new vertices `p+`, `p-`; old simplex ids are preserved,
/// `p+` and `p-` both receive `e_{n+1}` and old vectors get a trailing zero.
pub fn suspend(w: &WeightedSphere) -> WeightedSphere {
    let s = &w.sphere;
    let mut b = PosetBuilder::new();
    for id in s.ids().skip(1) {
        let nid = if s.rank(id) == 1 {
            match s.label(id) {
                Some(l) => b.add_labeled_vertex(l),
                None => b.add_vertex(),
            }
        } else {
            let fs: Vec<SimplexId> = s.faces(id).collect();
            b.add_simplex(&fs).expect("copy of a valid poset")
        };
        debug_assert_eq!(nid, id);
    }
    let poles = [b.add_labeled_vertex("p+"), b.add_labeled_vertex("p-")];
    let mut order: Vec<SimplexId> = s.ids().skip(1).collect();
    order.sort_by_key(|&i| (s.rank(i), i));
    let mut cone: [Vec<SimplexId>; 2] = [vec![0; s.len()], vec![0; s.len()]];
    for (k, &p) in poles.iter().enumerate() {
        cone[k][EMPTY] = p;
    }
    for &id in &order {
        for k in 0..2 {
            let mut fs = vec![id];
            fs.extend(s.faces(id).map(|f| cone[k][f]));
            cone[k][id] = b.add_simplex(&fs).expect("join of a valid poset");
        }
    }
    let sphere = b.finish().expect("join of a valid poset");
    let n = w.lambda.n();
    let mut lambda = CharacteristicFunction::new(n + 1);
    for (&v, c) in w.lambda.values() {
        lambda.insert(v, c.extended()).expect("length n + 1");
    }
    for p in poles {
        lambda
            .insert(p, SignClass::basis(n + 1, n))
            .expect("length n + 1");
    }
    WeightedSphere { sphere, lambda }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::examples::*;
    use crate::poset::is_cell_sphere;

    fn tetra_lambda(s: &SimplicialPoset, vecs: &[[i64; 3]]) -> CharacteristicFunction {
        CharacteristicFunction::from_vectors(3, s.vertices().zip(vecs.iter().map(|v| v.to_vec())))
            .unwrap()
    }

    #[test]
    fn sign_class_canonical() {
        assert_eq!(SignClass::new(vec![0, -1, 2]).unwrap().rep(), &[0, 1, -2]);
        assert_eq!(
            SignClass::new(vec![-1, 0]).unwrap(),
            SignClass::new(vec![1, 0]).unwrap()
        );
        assert!(matches!(
            SignClass::new(vec![2, 4]),
            Err(WeightedError::NotPrimitive(_))
        ));
        assert!(SignClass::new(vec![0, 0]).is_err());
    }

    #[test]
    fn colour_vectors_on_tetrahedron() {
        let s = tetrahedron_boundary();
        let l = tetra_lambda(&s, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        let r = check_star_condition(&s, &l, true).unwrap();
        assert!(r.holds);
        assert_eq!(l.value_count(), 4);
    }

    #[test]
    fn singular_triple_has_witness() {
        let s = tetrahedron_boundary();
        let l = tetra_lambda(&s, &[[1, 0, 0], [0, 1, 0], [2, 1, 0], [0, 0, 1]]);
        let r = check_star_condition(&s, &l, false).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.determinant, Some(0));
        let first_three: Vec<SimplexId> = s.vertices().take(3).collect();
        assert_eq!(w.vertices, first_three);
    }

    #[test]
    fn triangle_in_rank_two() {
        let s = cycle(3);
        let l = CharacteristicFunction::from_vectors(
            2,
            s.vertices().zip([vec![1, 0], vec![0, 1], vec![1, 1]]),
        )
        .unwrap();
        assert!(check_star_condition(&s, &l, false).unwrap().holds);
        let bad = CharacteristicFunction::from_vectors(3, s.vertices().map(|v| (v, vec![1, 0, 0])))
            .unwrap();
        assert!(matches!(
            check_star_condition(&s, &bad, false),
            Err(WeightedError::DimensionMismatch { rank: 2, n: 3 })
        ));
    }

    #[test]
    fn index_two_edge_reports_smith_invariants() {
        let s = cycle(3);
        let l = CharacteristicFunction::from_vectors(
            2,
            s.vertices().zip([vec![1, 1], vec![1, -1], vec![1, 0]]),
        )
        .unwrap();
        let r = check_star_condition(&s, &l, true).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().smith_invariants, vec![1, 2]);
    }

    #[test]
    fn value_count_ignores_sign() {
        let s = cycle(2);
        let l =
            CharacteristicFunction::from_vectors(2, s.vertices().zip([vec![1, 2], vec![-1, -2]]))
                .unwrap();
        assert_eq!(l.value_count(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let s = tetrahedron_boundary();
        let l = tetra_lambda(&s, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
        let text = serde_json::to_string(&l.to_json()).unwrap();
        let back: CharacteristicJson = serde_json::from_str(&text).unwrap();
        assert_eq!(CharacteristicFunction::from_json(&back).unwrap(), l);
    }

    #[test]
    fn suspension_of_weighted_triangle() {
        let s = cycle(3);
        let l = CharacteristicFunction::from_vectors(
            2,
            s.vertices().zip([vec![1, 0], vec![0, 1], vec![1, 1]]),
        )
        .unwrap();
        let w = WeightedSphere::new(s.clone(), l).unwrap();
        let sw = suspend(&w);
        assert_eq!(sw.sphere.f_vector(), vec![1, 5, 9, 6]);
        assert!(isomorphic_to_bipyramid(&sw.sphere));
        assert!(
            check_star_condition(&sw.sphere, &sw.lambda, true)
                .unwrap()
                .holds
        );
        assert_eq!(sw.value_count(), w.value_count() + 1);
        assert!(is_cell_sphere(&sw.sphere).unwrap().is_sphere());
        for id in s.ids() {
            assert_eq!(sw.sphere.rank(id), s.rank(id));
        }
    }

    fn isomorphic_to_bipyramid(s: &SimplicialPoset) -> bool {
        crate::poset::isomorphic(s, &bipyramid())
    }
}
