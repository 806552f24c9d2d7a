//! Limit estimates from Σ/Λ profiles and the eventual-periodicity classifier.
//!
//! An infinite binary word is eventually periodic iff Σ(x₁⋯xₙ)/n³ converges
//! to a positive limit, and that limit is 1/(3k) for minimal period k. On a
//! finite prefix the classifier can only look at a tail window of
//! checkpoints, so every threshold here is a calibrated heuristic:
//!
//! * (a) the ratios over the tail window vary by at most `1 + eps_osc`,
//! * (b) the tail level L (median) is at least `theta_pos`,
//! * (c) k = round(1/(3L)) lies in `1..=k_max`,
//! * (d) the prefix has period k on at least its last `confirm_tail` symbols.
//!
//! Failing (a) or (b) means not eventually periodic. Passing both but failing
//! (c) or (d) is inconclusive, as is disagreement with the factor-complexity
//! criterion (some k with p(k) ≤ k).

use serde::{Deserialize, Serialize};

use crate::automaton::SuffixAutomaton;
use crate::error::{invalid, Result};
use crate::lambda::square_witness_profile;
use crate::sigma::{sigma_profile, CheckpointScheme, Profile, DEFAULT_GEOMETRIC_RATIO};
use crate::word::{periodic_tail_start, Word};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioSeries {
    pub checkpoints: Vec<usize>,
    pub ratios: Vec<f64>,
    pub exponent: i32,
}

/// Pointwise `value / n^exponent`.
pub fn ratio_series(profile: &Profile, exponent: i32) -> Result<RatioSeries> {
    if profile.is_empty() {
        return invalid("ratio series of an empty profile");
    }
    if !(exponent == 2 || exponent == 3) {
        return invalid(format!("exponent must be 2 or 3, got {exponent}"));
    }
    Ok(RatioSeries {
        checkpoints: profile.checkpoints.clone(),
        ratios: profile.normalized(exponent),
        exponent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailStats {
    pub min: f64,
    pub max: f64,
    /// max/min, infinite when min is 0.
    pub oscillation: f64,
}

impl TailStats {
    fn of(values: &[f64]) -> Self {
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let oscillation = if min > 0.0 { max / min } else { f64::INFINITY };
        TailStats { min, max, oscillation }
    }
}

/// Min, max and max/min of the ratios at checkpoints
/// n ≥ (1 − tail_fraction)·n_max.
pub fn tail_oscillation(series: &RatioSeries, tail_fraction: f64) -> Result<TailStats> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return invalid(format!("tail fraction {tail_fraction} outside (0, 1]"));
    }
    let Some(&n_max) = series.checkpoints.last() else {
        return invalid("empty series");
    };
    let cut = (1.0 - tail_fraction) * n_max as f64;
    let tail: Vec<f64> = series
        .checkpoints
        .iter()
        .zip(&series.ratios)
        .filter(|(&n, _)| n as f64 >= cut)
        .map(|(_, &r)| r)
        .collect();
    if tail.len() < 4 {
        return invalid(format!("only {} checkpoints in the tail, need 4", tail.len()));
    }
    Ok(TailStats::of(&tail))
}

/// Number of distinct factors of length `k`.
pub fn factor_complexity(w: &Word, k: usize) -> Result<usize> {
    if k == 0 || k > w.len() {
        return invalid(format!("factor length {k} outside 1..={}", w.len()));
    }
    Ok(SuffixAutomaton::build(w.bits()).distinct_factors_of_length(k))
}

/// Smallest k ≤ k_max (clipped to |w|/2) with p(k) ≤ k.
pub fn morse_hedlund_check(w: &Word, k_max: usize) -> Option<usize> {
    let k_max = k_max.min(w.len() / 2);
    if k_max == 0 {
        return None;
    }
    let sa = SuffixAutomaton::build(w.bits());
    (1..=k_max).find(|&k| sa.distinct_factors_of_length(k) <= k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominantPower {
    pub n: usize,
    pub exponent: usize,
    pub eta_length: usize,
}

/// Per checkpoint, the highest-scoring power with exponent ≥ 2 in the prefix.
pub fn dominant_power_evidence(w: &Word, checkpoints: &[usize]) -> Result<Vec<Option<DominantPower>>> {
    let witnesses = square_witness_profile(w, checkpoints)?;
    Ok(checkpoints
        .iter()
        .zip(witnesses)
        .map(|(&n, wit)| {
            wit.map(|x| DominantPower {
                n,
                exponent: x.exponent,
                eta_length: x.eta_length,
            })
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    pub eps_osc: f64,
    pub theta_pos: f64,
    pub k_max: usize,
    pub min_length: usize,
    /// Share of the (geometric) checkpoints forming the tail window.
    pub tail_share: f64,
    /// The period scan must cover at least this share of the word's end.
    pub confirm_tail_share: f64,
    pub checkpoint_ratio: f64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            eps_osc: 0.05,
            theta_pos: 1.0 / (3.0 * 64.0),
            k_max: 64,
            min_length: 1 << 14,
            tail_share: 0.25,
            confirm_tail_share: 0.25,
            checkpoint_ratio: DEFAULT_GEOMETRIC_RATIO,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    EventuallyPeriodic,
    NotEventuallyPeriodic,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub tail_min: f64,
    pub tail_max: f64,
    pub oscillation: f64,
    pub morse_hedlund_k: Option<usize>,
    pub dominant_power: Option<DominantPower>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub label: Label,
    pub estimated_limit: f64,
    pub estimated_period: Option<usize>,
    pub evidence: Evidence,
    pub config: ClassifierConfig,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Tail window of a Σ/n³ series: its level (median) and spread.
pub fn tail_level(series: &RatioSeries, tail_share: f64) -> (f64, TailStats) {
    let len = series.ratios.len();
    let take = ((len as f64 * tail_share).ceil() as usize).clamp(len.min(4), len);
    let tail = &series.ratios[len - take..];
    (median(tail), TailStats::of(tail))
}

pub fn classify(w: &Word, config: &ClassifierConfig) -> Result<Verdict> {
    let n = w.len();
    if n < config.min_length.max(1) {
        return invalid(format!(
            "word of length {n} is shorter than the classifier minimum {}",
            config.min_length
        ));
    }
    let checkpoints = CheckpointScheme::Geometric(config.checkpoint_ratio).resolve(n)?;
    let profile = sigma_profile(w, &checkpoints)?;
    let series = ratio_series(&profile, 3)?;
    let (level, tail) = tail_level(&series, config.tail_share);

    let flat = tail.oscillation <= 1.0 + config.eps_osc;
    let positive = level >= config.theta_pos;
    let mut period = None;
    let mut label = if !(flat && positive) {
        Label::NotEventuallyPeriodic
    } else {
        let k = (1.0 / (3.0 * level)).round() as usize;
        let confirm = (n as f64 * config.confirm_tail_share).floor() as usize;
        if (1..=config.k_max).contains(&k) && periodic_tail_start(w.bits(), k) <= n - confirm {
            period = Some(k);
            Label::EventuallyPeriodic
        } else {
            Label::Inconclusive
        }
    };

    let mh = morse_hedlund_check(w, config.k_max);
    let disagree = match label {
        Label::EventuallyPeriodic => mh.is_none(),
        Label::NotEventuallyPeriodic => mh.is_some(),
        Label::Inconclusive => false,
    };
    if disagree {
        label = Label::Inconclusive;
        period = None;
    }
    let dominant = dominant_power_evidence(w, &[n])?[0];

    Ok(Verdict {
        label,
        estimated_limit: level,
        estimated_period: period,
        evidence: Evidence {
            tail_min: tail.min,
            tail_max: tail.max,
            oscillation: tail.oscillation,
            morse_hedlund_k: mh,
            dominant_power: dominant,
        },
        config: config.clone(),
    })
}
