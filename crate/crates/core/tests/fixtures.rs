use std::fs;
use std::path::PathBuf;

use gentle_silt::algebra::AlgebraJson;
use gentle_silt::fixtures::{type_a, type_a_orientations, type_a_tilde, TILDE_FIXTURES};
use gentle_silt::silting::{verify_with_jobs, Mode, SiltingEngine};
use gentle_silt::GentlePresentation;

fn corpus() -> Vec<(String, GentlePresentation)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut out: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let j: AlgebraJson = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
            (name, GentlePresentation::from_json(&j).unwrap())
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn corpus_matches_generators() {
    let files = corpus();
    for (name, p) in &files {
        let expected = if let Some(rest) = name.strip_prefix("atilde_") {
            let (a, b) = rest.split_once('_').unwrap();
            type_a_tilde(a.parse().unwrap(), b.parse().unwrap())
        } else {
            let (_, w) = name.split_once('_').unwrap();
            type_a(if w == "pt" { "" } else { w })
        };
        assert_eq!(p, &expected, "{name}");
        assert!(p.validate_gentle().is_ok(), "{name}");
    }
    for n in 1..=5 {
        for w in type_a_orientations(n) {
            let name = format!("a{n}_{}", if w.is_empty() { "pt" } else { &w });
            assert!(files.iter().any(|f| f.0 == name), "{name} missing");
        }
    }
    for (p, q) in TILDE_FIXTURES {
        assert!(files.iter().any(|f| f.0 == format!("atilde_{p}_{q}")));
    }
}

#[test]
fn worker_count_does_not_change_reports() {
    for p in [type_a("rlr"), type_a_tilde(2, 1)] {
        let mut e = SiltingEngine::new(&p).unwrap();
        let mode = if e.ambient.is_type_a() { Mode::Exhaustive } else { Mode::depth(4) };
        let one = e.verify(mode).unwrap();
        assert_eq!(verify_with_jobs(&p, mode, 3).unwrap(), one);
    }
}
