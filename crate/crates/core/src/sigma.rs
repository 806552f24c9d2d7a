//! The complexity functional Σ: the sum over every nonempty factor of its
//! squared occurrence count, plus prefix profiles of it.
//!
//! [`sigma`] reads Σ off a suffix automaton in linear time; [`sigma_naive`]
//! enumerates factor occurrences and is kept as the oracle.

use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automaton::SuffixAutomaton;
use crate::error::{invalid, Error, Result};
use crate::word::Word;

/// Exact Σ and Λ values. Σ(w) ≤ n(n+1)(2n+1)/6, which leaves 64 bits near
/// n ≈ 3·10⁶.
pub type BigCount = u128;

/// Number of start positions `i` with `xi` occurring at `w[i..]`.
pub fn factor_count(w: &Word, xi: &Word) -> Result<usize> {
    if xi.is_empty() {
        return invalid("factor_count needs a nonempty factor");
    }
    if xi.len() > w.len() {
        return Ok(0);
    }
    Ok(w.bits().windows(xi.len()).filter(|f| *f == xi.bits()).count())
}

/// Occurrences of `xi` in `w` that end within the last `m` positions.
pub fn suffix_window_count(w: &Word, xi: &Word, m: usize) -> Result<usize> {
    let (n, k) = (w.len(), xi.len());
    if m == 0 || m > n {
        return invalid(format!("window {m} outside 1..={n}"));
    }
    if k == 0 || k > n {
        return invalid("window count needs 1 <= |xi| <= |w|");
    }
    // start positions i with n - m - k + 1 <= i <= n - k
    let lo = (n + 1).saturating_sub(m + k);
    Ok((lo..=n - k).filter(|&i| w.bits()[i..i + k] == *xi.bits()).count())
}

fn factor_counts(w: &[u8]) -> HashMap<&[u8], u64> {
    let mut counts = HashMap::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            *counts.entry(&w[i..j]).or_insert(0) += 1;
        }
    }
    counts
}

/// Σ(w) by enumerating all O(n²) factor occurrences, one length at a time:
/// the occurrences of each length are sorted and equal runs counted.
pub fn sigma_naive(w: &Word) -> BigCount {
    let b = w.bits();
    let n = b.len();
    let mut total: BigCount = 0;
    let mut slices: Vec<&[u8]> = Vec::with_capacity(n);
    for k in 1..=n {
        slices.clear();
        slices.extend((0..=n - k).map(|i| &b[i..i + k]));
        slices.sort_unstable();
        for group in slices.chunk_by(|x, y| x == y) {
            let c = group.len() as BigCount;
            total += c * c;
        }
    }
    total
}

/// Σ(w) via the suffix automaton: Σ over states of occ² × class size.
pub fn sigma(w: &Word) -> BigCount {
    SuffixAutomaton::build(w.bits()).sum_squared_counts()
}

/// Z-array: `z[i]` is the longest common prefix of `s` and `s[i..]`, with
/// `z[0] = |s|`.
pub fn z_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = z[i - l].min(r - i);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

fn suffix_occurrence_sum_bits(w: &[u8]) -> BigCount {
    let reversed: Vec<u8> = w.iter().rev().copied().collect();
    z_array(&reversed).iter().map(|&z| z as BigCount).sum()
}

/// Σ over the nonempty suffixes ξ of `w` of `|w|_ξ`. Equivalently the sum
/// over end positions of the longest common suffix with `w`.
pub fn suffix_occurrence_sum(w: &Word) -> Result<BigCount> {
    if w.is_empty() {
        return invalid("suffix occurrence sum of the empty word");
    }
    Ok(suffix_occurrence_sum_bits(w.bits()))
}

/// How prefix lengths are sampled for a profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CheckpointScheme {
    Dense,
    Geometric(f64),
    List(Vec<usize>),
}

impl Default for CheckpointScheme {
    fn default() -> Self {
        CheckpointScheme::Geometric(DEFAULT_GEOMETRIC_RATIO)
    }
}

/// 2^(1/8).
pub const DEFAULT_GEOMETRIC_RATIO: f64 = 1.090_507_732_665_257_7;

impl CheckpointScheme {
    /// Increasing checkpoints in `1..=n_max`.
    pub fn resolve(&self, n_max: usize) -> Result<Vec<usize>> {
        match self {
            CheckpointScheme::Dense => Ok((1..=n_max).collect()),
            CheckpointScheme::Geometric(r) => geometric_checkpoints(n_max, *r),
            CheckpointScheme::List(list) => {
                if list.windows(2).any(|p| p[0] >= p[1]) {
                    return invalid("checkpoint list must be strictly increasing");
                }
                if let Some(&bad) = list.iter().find(|&&n| n == 0 || n > n_max) {
                    return invalid(format!("checkpoint {bad} outside 1..={n_max}"));
                }
                Ok(list.clone())
            }
        }
    }
}

impl FromStr for CheckpointScheme {
    type Err = Error;

    /// `dense`, `geometric:<ratio>` or `list:<n1,n2,…>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad checkpoint scheme {s:?}"));
        if s == "dense" {
            return Ok(CheckpointScheme::Dense);
        }
        if s == "geometric" {
            return Ok(CheckpointScheme::default());
        }
        if let Some(r) = s.strip_prefix("geometric:") {
            let r: f64 = r.parse().map_err(|_| bad())?;
            if !(r > 1.0 && r.is_finite()) {
                return Err(bad());
            }
            return Ok(CheckpointScheme::Geometric(r));
        }
        if let Some(list) = s.strip_prefix("list:") {
            let ns = list
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(CheckpointScheme::List(ns));
        }
        Err(bad())
    }
}

/// `⌈n_max · ratio^(-j)⌉` for j = 0, 1, … down to 1, deduplicated, ascending.
pub fn geometric_checkpoints(n_max: usize, ratio: f64) -> Result<Vec<usize>> {
    if !(ratio > 1.0 && ratio.is_finite()) {
        return invalid(format!("geometric ratio must exceed 1, got {ratio}"));
    }
    let mut out = Vec::new();
    if n_max == 0 {
        return Ok(out);
    }
    let mut j = 0;
    loop {
        let n = (n_max as f64 * ratio.powi(-j)).ceil() as usize;
        if out.last() != Some(&n) {
            out.push(n);
        }
        if n <= 1 {
            break;
        }
        j += 1;
    }
    out.reverse();
    Ok(out)
}

/// Exact values of a functional at increasing prefix lengths.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub checkpoints: Vec<usize>,
    pub values: Vec<BigCount>,
}

impl Profile {
    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    /// `value / n^exponent` as floating point, one per checkpoint.
    pub fn normalized(&self, exponent: i32) -> Vec<f64> {
        self.checkpoints
            .iter()
            .zip(&self.values)
            .map(|(&n, &v)| v as f64 / (n as f64).powi(exponent))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, BigCount)> + '_ {
        self.checkpoints.iter().copied().zip(self.values.iter().copied())
    }
}

pub(crate) fn check_checkpoints(w: &Word, checkpoints: &[usize]) -> Result<()> {
    if checkpoints.windows(2).any(|p| p[0] >= p[1]) {
        return invalid("checkpoints must be strictly increasing");
    }
    if let Some(&bad) = checkpoints.iter().find(|&&n| n > w.len()) {
        return invalid(format!("checkpoint {bad} exceeds word length {}", w.len()));
    }
    Ok(())
}

/// Above this many checkpoints the one-step recurrence (quadratic in n) is
/// the only practical route, so longer dense requests are refused.
pub const MAX_DENSE_CHECKPOINTS: usize = 100_000;

/// Σ of the prefix at every checkpoint.
///
/// Chooses between rebuilding an automaton per checkpoint (cost ∝ Σ n) and
/// walking the one-step recurrence Σₙ − Σₙ₋₁ = 2·S(prefixₙ) − n (cost ∝
/// n_max²/2); both are exact.
pub fn sigma_profile(w: &Word, checkpoints: &[usize]) -> Result<Profile> {
    check_checkpoints(w, checkpoints)?;
    let Some(&n_max) = checkpoints.last() else {
        return Ok(Profile::default());
    };
    if checkpoints.len() > MAX_DENSE_CHECKPOINTS {
        return invalid(format!(
            "at most {MAX_DENSE_CHECKPOINTS} checkpoints supported; use a geometric scheme"
        ));
    }
    // an automaton step costs roughly 16 Z-array steps
    let direct_cost: u128 = checkpoints.iter().map(|&n| 16 * n as u128).sum();
    let recurrence_cost = (n_max as u128 * n_max as u128) / 2;
    if direct_cost <= recurrence_cost {
        sigma_profile_direct(w, checkpoints)
    } else {
        sigma_profile_recurrence(w, checkpoints)
    }
}

/// Profile by one automaton per checkpoint.
pub fn sigma_profile_direct(w: &Word, checkpoints: &[usize]) -> Result<Profile> {
    check_checkpoints(w, checkpoints)?;
    let values = checkpoints
        .iter()
        .map(|&n| SuffixAutomaton::build(&w.bits()[..n]).sum_squared_counts())
        .collect();
    Ok(Profile {
        checkpoints: checkpoints.to_vec(),
        values,
    })
}

/// Profile by accumulating 2·S(prefixₙ) − n over every n up to the last
/// checkpoint.
pub fn sigma_profile_recurrence(w: &Word, checkpoints: &[usize]) -> Result<Profile> {
    check_checkpoints(w, checkpoints)?;
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    let mut total: BigCount = 0;
    let mut reversed = Vec::with_capacity(checkpoints.last().copied().unwrap_or(0));
    if next.peek() == Some(&&0) {
        values.push(0);
        next.next();
    }
    for (idx, &c) in w.bits().iter().enumerate() {
        let Some(&&target) = next.peek() else { break };
        let n = idx + 1;
        reversed.insert(0, c);
        let s: BigCount = z_array(&reversed).iter().map(|&z| z as BigCount).sum();
        total += 2 * s - n as BigCount;
        if n == target {
            values.push(total);
            next.next();
        }
    }
    Ok(Profile {
        checkpoints: checkpoints.to_vec(),
        values,
    })
}

/// Evaluates both sides of
/// Σ(ωη) − Σ(ω) = Σ_ξ 2·|ωη|_{ξ,m}·|ω|_ξ + |ωη|²_{ξ,m}, m = |η|,
/// by direct enumeration and reports whether they agree.
pub fn sigma_increment_identity_check(omega: &Word, eta: &Word) -> bool {
    let joined = omega.concat(eta);
    let m = eta.len();
    let lhs = sigma_naive(&joined) as i128 - sigma_naive(omega) as i128;
    let whole = factor_counts(joined.bits());
    let prefix = factor_counts(omega.bits());
    let n = joined.len();
    let rhs: i128 = whole
        .keys()
        .map(|xi| {
            let k = xi.len();
            let lo = (n + 1).saturating_sub(m + k);
            let window = (lo..=n - k)
                .filter(|&i| joined.bits()[i..i + k] == **xi)
                .count() as i128;
            let before = prefix.get(xi).copied().unwrap_or(0) as i128;
            2 * window * before + window * window
        })
        .sum();
    lhs == rhs
}

/// n(n+1)(2n+1)/6, the value of Σ on a constant word of length n.
pub fn sigma_upper_bound(n: usize) -> BigCount {
    let n = n as BigCount;
    n * (n + 1) * (2 * n + 1) / 6
}
