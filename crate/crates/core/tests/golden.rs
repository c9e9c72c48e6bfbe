//! Golden outputs and JSON round trips of the data files.

use std::path::PathBuf;

use serde_json::Value;

use toric_origami::poset::{isomorphic, PosetJson};
use toric_origami::surgery::{cut_along_cycles, fatness_bruteforce, width, FatnessOptions};
use toric_origami::template::{validate_template, OrigamiTemplate};
use toric_origami::weighted::{check_star_condition, CharacteristicFunction, CharacteristicJson};
use toric_origami::SimplicialPoset;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn octahedron_fatness_matches_golden() {
    let golden: Value = serde_json::from_str(&data("octahedron_fatness.golden.json")).unwrap();
    let s = SimplicialPoset::from_json_str(&data("octahedron.json")).unwrap();
    let r = fatness_bruteforce(&s, &FatnessOptions::default()).unwrap();
    let sl = cut_along_cycles(&s, &r.best_cycles).unwrap();
    let strict = r.strict.unwrap();
    let got = serde_json::json!({
        "fatness": r.value().unwrap(),
        "lower": r.lower,
        "upper": r.upper,
        "status": r.status,
        "strict": [strict.0, strict.1],
        "width_of_best": width(&sl).unwrap().width,
    });
    assert_eq!(got, golden);
}

#[test]
fn sphere_files_round_trip() {
    for (name, f) in [
        ("octahedron.json", [1, 6, 12, 8]),
        ("tetrahedron.json", [1, 4, 6, 4]),
    ] {
        let text = data(name);
        let s = SimplicialPoset::from_json_str(&text).unwrap();
        assert_eq!(s.f_vector(), f, "{name}");
        let back = SimplicialPoset::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let doc: PosetJson = serde_json::from_str(&text).unwrap();
        let (mapped, ids) = SimplicialPoset::from_json_mapped(&doc).unwrap();
        assert!(isomorphic(&mapped, &s));
        assert_eq!(ids.len(), s.len());
    }
}

#[test]
fn lambda_file_reads() {
    let s = SimplicialPoset::from_json_str(&data("tetrahedron.json")).unwrap();
    let doc: CharacteristicJson = serde_json::from_str(&data("tetrahedron_lambda.json")).unwrap();
    let l = CharacteristicFunction::from_json(&doc).unwrap();
    assert_eq!(l.value_count(), 4);
    assert_eq!(CharacteristicFunction::from_json(&l.to_json()).unwrap(), l);
    assert!(check_star_condition(&s, &l, false).unwrap().holds);
}

#[test]
fn template_files_round_trip() {
    let expect = [
        ("two_triangles.json", true),
        ("two_squares.json", true),
        ("four_hexagons.json", true),
        ("adjacent_folds.json", false),
    ];
    for (name, valid) in expect {
        let t = OrigamiTemplate::from_json_str(&data(name)).unwrap();
        assert_eq!(
            OrigamiTemplate::from_json(&t.to_json()).unwrap(),
            t,
            "{name}"
        );
        assert_eq!(validate_template(&t).valid, valid, "{name}");
    }
}
