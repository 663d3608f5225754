use std::path::{Path, PathBuf};

use symtensor_core::ffpoly::{parse_poly, parse_poly_in};
use symtensor_core::scenarios::Operation;
use symtensor_core::variety::BUILTIN_NAMES;
use symtensor_core::{ModelSpec, PrimeField, Rationals, Scenario};

fn repo(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn shipped_models_match_builtins() {
    for name in BUILTIN_NAMES {
        let loaded = ModelSpec::load(&repo(&format!("models/{name}.json"))).unwrap();
        assert_eq!(loaded, ModelSpec::builtin(name).unwrap());
        loaded.validate().unwrap();
    }
    assert_eq!(json_files(&repo("models")).len(), BUILTIN_NAMES.len());
}

#[test]
fn shipped_scenarios_parse_and_resolve() {
    let dir = repo("scenarios");
    let files = json_files(&dir);
    assert!(files.len() >= 15);
    let mut names = Vec::new();
    for path in &files {
        let s = Scenario::load(path).unwrap();
        assert_eq!(path.file_stem().unwrap().to_str().unwrap(), s.name);
        match &s.model {
            Some(m) => {
                ModelSpec::resolve(m, Some(&dir)).unwrap().validate().unwrap();
            }
            None => assert_eq!(s.operation, Operation::Plurigenera),
        }
        names.push(s.name);
    }
    for op in ["dimension", "trisecant", "zak", "envelope", "plurigenera", "prop18", "trisecant_equality"] {
        let found = files.iter().any(|p| std::fs::read_to_string(p).unwrap().contains(&format!("\"operation\": \"{op}\"")));
        assert!(found, "no scenario exercises {op}");
    }
}

#[test]
fn model_json_rejects_bad_input() {
    assert!(ModelSpec::from_json("{").is_err());
    assert!(ModelSpec::from_json(r#"{"name":"x","ambient":2,"dim":1}"#).is_err());
    let wrong_vars = ModelSpec::from_json(r#"{"name":"x","ambient":2,"dim":1,"forms":["z0*z5"]}"#).unwrap();
    assert!(wrong_vars.validate().is_err());
    let inhomogeneous = ModelSpec::from_json(r#"{"name":"x","ambient":2,"dim":1,"forms":["z0^2 + z1"]}"#).unwrap();
    assert!(inhomogeneous.validate().is_err());
    assert!(ModelSpec::resolve("builtin:nope", None).is_err());
}

#[test]
fn polynomial_text_round_trips() {
    let f = PrimeField::new(13).unwrap();
    for text in ["z0^3 + z1^3 + z2^3", "2*z0*z1 - z2^2", "-z3 + 5", "(z0 + z1)^2 - z0*(z0 + 2*z1)"] {
        let p = parse_poly_in(&f, text, 4).unwrap();
        let again = parse_poly_in(&f, &p.to_string(), 4).unwrap();
        assert_eq!(p, again, "{text}");
        let q = parse_poly_in(&Rationals, text, 4).unwrap();
        assert_eq!(parse_poly_in(&Rationals, &q.to_string(), 4).unwrap(), q);
    }
    assert!(parse_poly_in(&f, "(z0 + z1)^2 - z0*(z0 + 2*z1)", 4).unwrap().to_string() == "z1^2");
    assert!(parse_poly_in(&f, "z0 +", 2).is_err());
    assert!(parse_poly_in(&f, "z9", 2).is_err());
    assert_eq!(parse_poly("z0*z2 - z1^2", None).unwrap().nvars(), 3);
}
