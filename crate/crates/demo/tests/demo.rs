use gentle_silt_demo::{embed_json, summarize, surface_json};
use serde_json::{json, Value};

const A2: &str = r#"{"vertices":["1","2"],"arrows":[{"id":"a","source":"1","target":"2"}]}"#;

#[test]
fn summary_of_a3() {
    let v: Value = serde_json::from_str(&summarize("rl").unwrap()).unwrap();
    assert_eq!(v["count"], 14);
    assert_eq!(v["passed"], true);
    assert_eq!(v["max_gldim"], 2);
}

#[test]
fn summary_of_kronecker() {
    let v: Value = serde_json::from_str(&summarize("1,1").unwrap()).unwrap();
    assert_eq!(v["algebra_id"], "Ã1,1");
    assert_eq!(v["passed"], true);
}

#[test]
fn rejects_bad_specs() {
    assert!(summarize("rx").is_err());
    assert!(summarize("rrrrrr").is_err());
    assert!(summarize("0,1").is_err());
    assert!(surface_json("{").is_err());
}

#[test]
fn surface_and_embedding() {
    let s: Value = serde_json::from_str(&surface_json(A2).unwrap()).unwrap();
    assert_eq!(s["topology"]["kind"], "disk");
    let curve = r#"{"start":{"kind":"marked","point":"o2"},"crossings":["1"],"end":{"kind":"extra","point":"o0"}}"#;
    let c: Value = serde_json::from_str(&embed_json(A2, curve).unwrap()).unwrap();
    assert_eq!(c, json!({"P1": ["2"], "P0": ["1"], "d": [[[{"path": ["a"], "coef": 1}]]]}));
}
