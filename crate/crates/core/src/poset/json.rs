//! JSON document for simplicial posets:
//! `{"dim": d, "simplices": [{"id", "rank", "faces": [ids]}], "labels": {...}}`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{PosetBuilder, PosetError, SimplexId, SimplicialPoset, EMPTY};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson {
    pub id: u64,
    pub rank: usize,
    pub faces: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub dim: i64,
    pub simplices: Vec<SimplexJson>,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
}

impl SimplicialPoset {
    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            dim: self.dim().map_or(-1, |d| d as i64),
            simplices: self
                .ids()
                .map(|id| SimplexJson {
                    id: id as u64,
                    rank: self.rank(id),
                    faces: self.faces(id).map(|f| f as u64).collect(),
                })
                .collect(),
            labels: self
                .labels()
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    /// Rebuilds a poset from its JSON document. Identifiers are renumbered so
    /// that faces precede cofaces; the relative order of equal-rank ids is kept.
    pub fn from_json(doc: &PosetJson) -> Result<Self, PosetError> {
        Self::from_json_mapped(doc).map(|(p, _)| p)
    }

    /// Like [`Self::from_json`], also returning the map from document ids to poset ids.
    pub fn from_json_mapped(
        doc: &PosetJson,
    ) -> Result<(Self, HashMap<u64, SimplexId>), PosetError> {
        let mut order: Vec<&SimplexJson> = doc.simplices.iter().collect();
        order.sort_by_key(|s| (s.rank, s.id));
        let empties = order.iter().filter(|s| s.rank == 0).count();
        if empties != 1 {
            return Err(PosetError::Malformed(format!(
                "expected exactly one rank-0 element, found {empties}"
            )));
        }
        let mut map: HashMap<u64, SimplexId> = HashMap::new();
        let mut b = PosetBuilder::new();
        for s in order {
            if map.contains_key(&s.id) {
                return Err(PosetError::Malformed(format!("duplicate id {}", s.id)));
            }
            let id = match s.rank {
                0 => {
                    if !s.faces.is_empty() {
                        return Err(PosetError::Malformed("∅ cannot have faces".into()));
                    }
                    EMPTY
                }
                1 => {
                    if s.faces.iter().any(|f| map.get(f) != Some(&EMPTY)) {
                        return Err(PosetError::Malformed(format!(
                            "vertex {} must have ∅ as its only face",
                            s.id
                        )));
                    }
                    b.add_vertex()
                }
                _ => {
                    let fs = s
                        .faces
                        .iter()
                        .map(|f| {
                            map.get(f).copied().ok_or_else(|| {
                                PosetError::Malformed(format!("unknown face {f} of {}", s.id))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    b.add_simplex(&fs)?
                }
            };
            map.insert(s.id, id);
        }
        for (k, v) in &doc.labels {
            let raw: u64 = k
                .parse()
                .map_err(|_| PosetError::Malformed(format!("label key {k} is not an id")))?;
            let id = *map
                .get(&raw)
                .ok_or_else(|| PosetError::Malformed(format!("label for unknown id {k}")))?;
            b.set_label(id, v.clone());
        }
        let poset = b.finish()?;
        let dim = poset.dim().map_or(-1, |d| d as i64);
        if dim != doc.dim {
            return Err(PosetError::Malformed(format!(
                "declared dimension {} but simplices have dimension {dim}",
                doc.dim
            )));
        }
        Ok((poset, map))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serialisable")
    }

    pub fn from_json_str(text: &str) -> Result<Self, PosetError> {
        let doc: PosetJson =
            serde_json::from_str(text).map_err(|e| PosetError::Malformed(e.to_string()))?;
        Self::from_json(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::super::examples::*;
    use super::super::isomorphic;
    use super::*;

    #[test]
    fn roundtrip_preserves_isomorphism_type() {
        for s in [
            tetrahedron_boundary(),
            two_gon(),
            octahedron_boundary(),
            cycle(6),
        ] {
            let text = s.to_json_string();
            let back = SimplicialPoset::from_json_str(&text).unwrap();
            assert!(isomorphic(&s, &back));
            assert_eq!(back.labels(), s.labels());
        }
    }

    #[test]
    fn shuffled_ids_are_accepted() {
        let text = r#"{"dim":1,"simplices":[
            {"id":10,"rank":2,"faces":[3,4]},
            {"id":11,"rank":2,"faces":[3,4]},
            {"id":3,"rank":1,"faces":[0]},
            {"id":4,"rank":1,"faces":[0]},
            {"id":0,"rank":0,"faces":[]}],
            "labels":{"3":"a","4":"b"}}"#;
        let s = SimplicialPoset::from_json_str(text).unwrap();
        assert!(isomorphic(&s, &two_gon()));
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let mut doc = cycle(4).to_json();
        doc.dim = 2;
        assert!(matches!(
            SimplicialPoset::from_json(&doc),
            Err(PosetError::Malformed(_))
        ));
    }
}
