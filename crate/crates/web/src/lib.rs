//! WebAssembly entry points for the browser demo. Each takes a JSON request
//! and returns a JSON string; the `*_json` functions are the same operations
//! callable natively.

use serde::Deserialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use wordstat::asymptotics::{classify, ClassifierConfig};
use wordstat::sigma::sigma_profile;
use wordstat::{lambda, sigma, CheckpointScheme, GeneratorKind, GeneratorSpec, Ratio, Word};

/// Longest word the demo will build, to keep the page responsive.
pub const MAX_LENGTH: usize = 1 << 18;

/// A word given either literally or by generator parameters.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    #[serde(default)]
    pub word: Option<String>,
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub eta: String,
    #[serde(default)]
    pub zeta: String,
    #[serde(default = "one")]
    pub k1: u64,
    #[serde(default = "two")]
    pub ratio: String,
    #[serde(default = "one")]
    pub seed: u64,
    #[serde(default)]
    pub length: usize,
    #[serde(default)]
    pub checkpoints: Option<String>,
    #[serde(default)]
    pub min_length: Option<usize>,
}

fn one() -> u64 {
    1
}

fn two() -> String {
    "2".into()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

impl Request {
    fn parse(text: &str) -> Result<Request, String> {
        serde_json::from_str(text).map_err(|e| format!("bad request: {e}"))
    }

    fn word(&self) -> Result<Word, String> {
        let w = match (&self.word, self.kind.as_deref()) {
            (Some(text), None) => Word::parse_ascii(text.as_bytes()).map_err(err)?,
            (None, Some(kind)) => {
                if self.length > MAX_LENGTH {
                    return Err(format!("length {} exceeds the demo limit {MAX_LENGTH}", self.length));
                }
                let kind = match kind {
                    "periodic" => GeneratorKind::Periodic { eta: self.eta.clone(), zeta: self.zeta.clone() },
                    "sparse" => GeneratorKind::Sparse {
                        k1: self.k1,
                        ratio: self.ratio.parse::<Ratio>().map_err(err)?,
                    },
                    "random" => GeneratorKind::Random { seed: self.seed },
                    "fibonacci" => GeneratorKind::Fibonacci,
                    other => return Err(format!("unknown kind {other:?}")),
                };
                GeneratorSpec { kind, length: self.length }.generate().map_err(err)?
            }
            _ => return Err("give exactly one of \"word\" or \"kind\"".into()),
        };
        if w.len() > MAX_LENGTH {
            return Err(format!("word of length {} exceeds the demo limit {MAX_LENGTH}", w.len()));
        }
        Ok(w)
    }
}

/// Σ/n² and Σ/n³ at the requested checkpoints (geometric by default).
pub fn profile_json(request: &str) -> Result<String, String> {
    let req = Request::parse(request)?;
    let w = req.word()?;
    let scheme: CheckpointScheme = req.checkpoints.as_deref().unwrap_or("geometric").parse().map_err(err)?;
    let checkpoints = scheme.resolve(w.len()).map_err(err)?;
    let p = sigma_profile(&w, &checkpoints).map_err(err)?;
    let sigma: Vec<String> = p.values.iter().map(|v| v.to_string()).collect();
    Ok(json!({
        "n": p.checkpoints,
        "sigma": sigma,
        "sigma_over_n2": p.normalized(2),
        "sigma_over_n3": p.normalized(3),
    })
    .to_string())
}

/// Σ, Λ and the normalized values for a single word. Exact integers are
/// returned as decimal strings since they may exceed 2⁵³.
pub fn analyze_json(request: &str) -> Result<String, String> {
    let w = Request::parse(request)?.word()?;
    let n = w.len();
    let s = sigma(&w);
    let l = if n == 0 { None } else { Some(lambda(&w).map_err(err)?) };
    let ratio = |v: u128, e: i32| (n > 0).then(|| v as f64 / (n as f64).powi(e));
    Ok(json!({
        "n": n,
        "sigma": s.to_string(),
        "lambda": l.map(|l| l.to_string()),
        "sigma_over_n2": ratio(s, 2),
        "sigma_over_n3": ratio(s, 3),
        "lambda_over_n3": l.and_then(|l| ratio(l, 3)),
        "lemma1_slack": l.map(|l| (48 * s as i128 - l as i128).to_string()),
    })
    .to_string())
}

/// The eventual-periodicity verdict with default thresholds.
pub fn classify_json(request: &str) -> Result<String, String> {
    let req = Request::parse(request)?;
    let w = req.word()?;
    let mut config = ClassifierConfig::default();
    if let Some(m) = req.min_length {
        config.min_length = m;
    }
    let verdict = classify(&w, &config).map_err(err)?;
    let value: Value = serde_json::to_value(verdict).map_err(err)?;
    Ok(value.to_string())
}

#[wasm_bindgen]
pub fn profile(request: &str) -> Result<String, JsValue> {
    profile_json(request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(request: &str) -> Result<String, JsValue> {
    analyze_json(request).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = classify)]
pub fn classify_word(request: &str) -> Result<String, JsValue> {
    classify_json(request).map_err(|e| JsValue::from_str(&e))
}
