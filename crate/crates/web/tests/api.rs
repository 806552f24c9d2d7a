use serde_json::Value;
use wordstat_web::{analyze_json, classify_json, profile_json, MAX_LENGTH};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn analyze_literal_word() {
    let v = parse(analyze_json(r#"{"word": "0101"}"#).unwrap());
    assert_eq!(v["sigma"], "16");
    assert_eq!(v["lambda"], "128");
    assert_eq!(v["lemma1_slack"], "640");
}

#[test]
fn analyze_empty_word() {
    let v = parse(analyze_json(r#"{"word": ""}"#).unwrap());
    assert_eq!(v["sigma"], "0");
    assert!(v["lambda"].is_null());
}

#[test]
fn profile_of_constant_word() {
    let v = parse(profile_json(r#"{"kind": "periodic", "eta": "0", "length": 3, "checkpoints": "dense"}"#).unwrap());
    assert_eq!(v["n"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["sigma"], serde_json::json!(["1", "5", "14"]));
}

#[test]
fn profile_sparse_with_fractional_ratio() {
    let v = parse(profile_json(r#"{"kind": "sparse", "k1": 3, "ratio": "5/2", "length": 5000}"#).unwrap());
    let n = v["n"].as_array().unwrap();
    assert_eq!(n.last().unwrap(), 5000);
    assert_eq!(n.len(), v["sigma_over_n3"].as_array().unwrap().len());
}

#[test]
fn classify_periodic() {
    let v = parse(classify_json(r#"{"kind": "periodic", "eta": "011", "length": 30000}"#).unwrap());
    assert_eq!(v["label"], "eventually-periodic");
    assert_eq!(v["estimated_period"], 3);
}

#[test]
fn classify_short_word_is_an_error() {
    let e = classify_json(r#"{"kind": "random", "length": 100}"#).unwrap_err();
    assert!(e.contains("shorter"));
    assert!(classify_json(r#"{"kind": "random", "length": 100, "min_length": 50}"#).is_ok());
}

#[test]
fn rejects_bad_requests() {
    assert!(analyze_json(r#"{"word": "01a"}"#).unwrap_err().contains("byte offset 2"));
    assert!(analyze_json(r#"{"word": "01", "kind": "random"}"#).is_err());
    assert!(analyze_json(r#"{"kind": "file", "length": 3}"#).is_err());
    assert!(analyze_json(r#"{"kind": "random", "length": 1, "bogus": 1}"#).is_err());
    let too_long = format!(r#"{{"kind": "random", "length": {}}}"#, MAX_LENGTH + 1);
    assert!(profile_json(&too_long).is_err());
    assert!(profile_json(r#"{"kind": "random", "length": 10, "checkpoints": "list:11"}"#).is_err());
}
