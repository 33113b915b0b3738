//! Browser bindings: each entry point takes and returns JSON text.

use std::collections::BTreeMap;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use gentle_silt::algebra::AlgebraJson;
use gentle_silt::curves::CurveJson;
use gentle_silt::embed::complex_to_json;
use gentle_silt::fixtures::{type_a, type_a_tilde};
use gentle_silt::silting::{verify_no_strictly_shod, Mode, SiltingEngine, Verdict};
use gentle_silt::surface::surfaces_from_algebra;
use gentle_silt::GentlePresentation;

const MAX_LETTERS: usize = 6;
const DEMO_DEPTH: usize = 5;

#[derive(Serialize)]
struct Summary {
    algebra_id: String,
    count: usize,
    bound_exceeded: usize,
    max_gldim: Option<usize>,
    passed: bool,
    /// number of silted algebras per structural form
    forms: BTreeMap<u8, usize>,
    failures: Vec<String>,
}

fn parse_algebra(text: &str) -> Result<GentlePresentation, String> {
    let j: AlgebraJson = serde_json::from_str(text).map_err(|e| format!("algebra: {e}"))?;
    let p = GentlePresentation::from_json(&j).map_err(|e| e.to_string())?;
    let d = p.validate_gentle();
    if let Some(v) = d.violations.first() {
        return Err(format!("not gentle: {}", v.witness));
    }
    Ok(p)
}

fn algebra_of_spec(spec: &str) -> Result<GentlePresentation, String> {
    let spec = spec.trim();
    if let Some((p, q)) = spec.split_once(',') {
        let p: usize = p.trim().parse().map_err(|_| format!("bad cycle spec `{spec}`"))?;
        let q: usize = q.trim().parse().map_err(|_| format!("bad cycle spec `{spec}`"))?;
        if p == 0 || q == 0 || p + q > MAX_LETTERS {
            return Err(format!("need p, q >= 1 and p + q <= {MAX_LETTERS}"));
        }
        return Ok(type_a_tilde(p, q));
    }
    if spec.len() >= MAX_LETTERS || spec.chars().any(|c| c != 'r' && c != 'l') {
        return Err(format!("orientation words use `r` and `l`, at most {} letters", MAX_LETTERS - 1));
    }
    Ok(type_a(spec))
}

/// Verifies the algebra named by an orientation word (`rl`, `rrl`, ...) or a
/// cycle `p,q`, returning a summary.
pub fn summarize(spec: &str) -> Result<String, String> {
    let p = algebra_of_spec(spec)?;
    let e = SiltingEngine::new(&p).map_err(|e| e.to_string())?;
    let mode = if e.ambient.is_type_a() { Mode::Exhaustive } else { Mode::depth(DEMO_DEPTH) };
    let r = verify_no_strictly_shod(&p, mode).map_err(|e| e.to_string())?;
    let mut forms = BTreeMap::new();
    for rec in &r.records {
        if let Some(c) = &rec.classification {
            *forms.entry(c.form).or_insert(0) += 1;
        }
    }
    let s = Summary {
        algebra_id: r.algebra_id,
        count: r.count,
        bound_exceeded: r.bound_exceeded,
        max_gldim: r.max_gldim_linear,
        passed: r.verdict == Verdict::Pass,
        forms,
        failures: r.failures.iter().map(|f| format!("{}: {}", f.check, f.detail)).collect(),
    };
    serde_json::to_string_pretty(&s).map_err(|e| e.to_string())
}

/// The marked ribbon surface of a gentle algebra.
pub fn surface_json(algebra: &str) -> Result<String, String> {
    let p = parse_algebra(algebra)?;
    let s = surfaces_from_algebra(&p).map_err(|e| e.to_string())?;
    let out = match s.as_slice() {
        [one] => serde_json::to_string_pretty(&one.to_json()),
        many => serde_json::to_string_pretty(&many.iter().map(|s| s.to_json()).collect::<Vec<_>>()),
    };
    out.map_err(|e| e.to_string())
}

/// The 2-term complex attached to a permissible curve.
pub fn embed_json(algebra: &str, curve: &str) -> Result<String, String> {
    let p = parse_algebra(algebra)?;
    let e = SiltingEngine::new(&p).map_err(|e| e.to_string())?;
    let j: CurveJson = serde_json::from_str(curve).map_err(|e| format!("curve: {e}"))?;
    let c = e.model.curve_from_json(&j).map_err(|e| e.to_string())?;
    let ac = e.model.embed_curve(&c).map_err(|e| e.to_string())?;
    let x = e.model.complex_of_admissible(&e.alg, &ac).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&complex_to_json(&e.alg, &x)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn verify(spec: &str) -> Result<String, JsValue> {
    summarize(spec).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn surface(algebra: &str) -> Result<String, JsValue> {
    surface_json(algebra).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn embed(algebra: &str, curve: &str) -> Result<String, JsValue> {
    embed_json(algebra, curve).map_err(|e| JsValue::from_str(&e))
}
