//! Loading the shipped algebras, objects and fixtures, and document round trips.

use std::path::PathBuf;

use ghostforge::algebra::standard::{a2, dual_numbers};
use ghostforge::complex::random::{random_chain_map, random_map};
use ghostforge::ghost::basic_modules;
use ghostforge::ghost::verify::{case_rng, random_test_complex};
use ghostforge::io::{
    chain_map_spec, complex_spec, document_json, load_algebra, load_document, map_spec, module_spec, parse_algebra,
    parse_document, resolve, Body, Object,
};
use ghostforge::Error;

fn data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn files(dir: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(data().join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_file())
        .collect();
    out.sort();
    out
}

#[test]
fn shipped_algebras_are_valid() {
    let names: Vec<String> = files("algebras")
        .iter()
        .map(|p| {
            let a = load_algebra(p).unwrap();
            let r = a.algebra.check().unwrap();
            assert!(r.associative && r.unital, "{}", p.display());
            assert!(a.indecomposables_complete);
            r.name
        })
        .collect();
    for n in ["F", "D", "A2", "FxF", "M2"] {
        assert!(names.iter().any(|m| m == n), "missing {n}");
    }
}

#[test]
fn shipped_algebras_match_the_builtins() {
    let d = load_algebra(&data().join("algebras/dualnumbers_f2.toml")).unwrap();
    assert_eq!(d.algebra.dim(), dual_numbers(2).dim());
    let a = load_algebra(&data().join("algebras/a2_quiver.toml")).unwrap();
    assert_eq!(a.algebra.dim(), a2(2).dim());
}

#[test]
fn shipped_objects_load() {
    let objects = files("objects");
    assert!(!objects.is_empty());
    for p in objects {
        let loaded = load_document(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert!(!loaded.bytes.is_empty());
    }
}

#[test]
fn fixtures_are_ghost_composites() {
    for (name, n) in [("a2_ghost_n1.json", 1), ("d_ghost_composite_n2.json", 2), ("d_ghost_composite_n3.json", 3)] {
        match load_document(&data().join("fixtures").join(name)).unwrap().object {
            Object::GhostComposite(f) => assert_eq!(f.len(), n),
            other => panic!("{name}: unexpected {}", other.kind()),
        }
    }
}

#[test]
fn documents_round_trip() {
    let alg = a2(2);
    let pool = basic_modules(&alg).unwrap();
    for i in 0..40 {
        let mut rng = case_rng(7, i);
        let x = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let y = random_test_complex(&mut rng, &alg, &pool).unwrap();
        let f = random_chain_map(&mut rng, &x, &y);
        let m = &pool[i as usize % pool.len()];
        let g = random_map(&mut rng, m, &pool[(i as usize + 1) % pool.len()]);

        let doc = parse_document(&document_json("a.toml", Body::Complex(complex_spec(&x)))).unwrap();
        assert!(matches!(resolve(&alg, &doc.body).unwrap(), Object::Complex(c) if c == x));
        let doc = parse_document(&document_json("a.toml", Body::ChainMap(chain_map_spec(&f)))).unwrap();
        assert!(matches!(resolve(&alg, &doc.body).unwrap(), Object::ChainMap(c) if c == f));
        let doc = parse_document(&document_json("a.toml", Body::Map(map_spec(&g)))).unwrap();
        assert!(matches!(resolve(&alg, &doc.body).unwrap(), Object::Map(h) if h == g));
        let doc = parse_document(&document_json("a.toml", Body::Module { module: module_spec(m) })).unwrap();
        assert!(matches!(resolve(&alg, &doc.body).unwrap(), Object::Module(n) if n == *m));
    }
}

#[test]
fn malformed_input_is_an_input_error() {
    let bad_schema = r#"{"schema": "other/9", "algebra": "a.toml", "kind": "module", "module": {"named": "regular"}}"#;
    assert!(parse_document(bad_schema).unwrap_err().is_input_error());
    assert!(parse_document("{").unwrap_err().is_input_error());
    let err = load_document(&data().join("objects/does_not_exist.json")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    let not_assoc = r#"
schema = "ghostforge-algebra/1"
name = "bad"
field = 2
[structure]
labels = ["1", "x", "y"]
unit = [1, 0, 0]
products = [
  [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  [[0, 1, 0], [0, 0, 1], [0, 1, 0]],
  [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
]
"#;
    assert!(parse_algebra(not_assoc).unwrap_err().is_input_error());
    let bad_field = "schema = \"ghostforge-algebra/1\"\nname = \"x\"\nfield = 4\n[quiver]\nvertices = [\"1\"]\narrows = []\nrelations = []\n";
    assert!(parse_algebra(bad_field).unwrap_err().is_input_error());
}
