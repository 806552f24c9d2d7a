//! The power functional Λ(w) = max { |η|²(ℓ+1)³ : η^ℓ occurs in w }.
//!
//! Every factor is a first power of itself, so Λ(w) ≥ 8n² (take η = w).
//! A power with ℓ = 1 scores 8|η|² ≤ 8n², so only powers with ℓ ≥ 2 can
//! beat that floor. Such a power η^ℓ has period |η| and length ≥ 2|η|, so
//! its minimal period p divides |η| and it sits inside a run of period p.
//! Conversely, for a run of length L and period p, every multiple q of p
//! with q ≤ L gives the power (run prefix of length q)^⌊L/q⌋. Λ is therefore
//! the maximum of 8n² and q²(⌊L/q⌋+1)³ over runs and multiples of their
//! period.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::sigma::{check_checkpoints, sigma, BigCount, Profile};
use crate::suffix_array::Lce;
use crate::word::{is_prime_word, Word};

/// A maximal repetition `w[start..=end]` (1-based, inclusive) with minimal
/// period `period` and length at least `2 * period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An occurrence of η^ℓ at 1-based `position` with `|η| = eta_length`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerWitness {
    pub eta_length: usize,
    pub exponent: usize,
    pub position: usize,
    pub score: BigCount,
}

impl PowerWitness {
    pub fn new(eta_length: usize, exponent: usize, position: usize) -> Self {
        PowerWitness {
            eta_length,
            exponent,
            position,
            score: power_score(eta_length, exponent),
        }
    }

    /// Re-checks by direct comparison that the factor at `position` really is
    /// an `exponent`-th power of its length-`eta_length` prefix.
    pub fn verify(&self, w: &Word) -> bool {
        let (k, l) = (self.eta_length, self.exponent);
        if k == 0 || l == 0 || self.position == 0 {
            return false;
        }
        let start = self.position - 1;
        let Some(f) = w.bits().get(start..start + k * l) else {
            return false;
        };
        self.score == power_score(k, l) && (k..f.len()).all(|i| f[i] == f[i - k])
    }

    // higher score wins; ties go to the shorter eta, then the earlier position
    fn beats(&self, other: &PowerWitness) -> bool {
        (self.score, std::cmp::Reverse(self.eta_length), std::cmp::Reverse(self.position))
            > (other.score, std::cmp::Reverse(other.eta_length), std::cmp::Reverse(other.position))
    }
}

/// k²(ℓ+1)³.
pub fn power_score(eta_length: usize, exponent: usize) -> BigCount {
    let k = eta_length as BigCount;
    let l = exponent as BigCount + 1;
    k * k * l * l * l
}

/// Right-to-left scan for the longest Lyndon word starting at each position,
/// where `rank` orders the suffixes: it ends at the next suffix ranked lower.
fn lyndon_ends(rank: &[usize]) -> Vec<usize> {
    let n = rank.len();
    let mut ends = vec![n; n];
    let mut stack: Vec<usize> = Vec::new();
    for i in (0..n).rev() {
        while let Some(&top) = stack.last() {
            if rank[top] > rank[i] {
                stack.pop();
            } else {
                break;
            }
        }
        ends[i] = stack.last().copied().unwrap_or(n);
        stack.push(i);
    }
    ends
}

/// All maximal repetitions of `w`, sorted by (start, period).
///
/// Every run has a Lyndon root under one of the two symbol orders; each
/// longest Lyndon word `w[i..j)` is extended left and right with LCE
/// queries and kept when the extension reaches length 2(j−i).
pub fn runs(w: &Word) -> Vec<Run> {
    let n = w.len();
    if n < 2 {
        return Vec::new();
    }
    let text = w.bits();
    let forward = Lce::new(text);
    let reversed: Vec<u8> = text.iter().rev().copied().collect();
    let backward = Lce::new(&reversed);
    let flipped = Lce::new(w.complement().bits());

    // common suffix length of w[..a] and w[..b]
    let lcs = |a: usize, b: usize| -> usize {
        if a == 0 || b == 0 {
            0
        } else {
            backward.lce(n - a, n - b)
        }
    };

    let mut found = Vec::new();
    for rank in [forward.rank(), flipped.rank()] {
        for (i, j) in lyndon_ends(rank).into_iter().enumerate() {
            let p = j - i;
            let right = forward.lce(i, j);
            let left = lcs(i, j);
            if left + right >= p {
                found.push(Run {
                    start: i - left + 1,
                    end: j + right,
                    period: p,
                });
            }
        }
    }
    found.sort_unstable();
    found.dedup();
    found
}

/// Runs of a word by checking every factor's minimal period. Cubic; the
/// reference semantics for [`runs`].
pub fn runs_naive(w: &Word) -> Vec<Run> {
    let b = w.bits();
    let n = b.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let f = &b[i..=j];
            let p = (1..=f.len())
                .find(|&p| (p..f.len()).all(|x| f[x] == f[x - p]))
                .unwrap();
            if f.len() < 2 * p {
                continue;
            }
            let left_ok = i == 0 || b[i - 1] != b[i - 1 + p];
            let right_ok = j + 1 == n || b[j + 1] != b[j + 1 - p];
            if left_ok && right_ok {
                out.push(Run {
                    start: i + 1,
                    end: j + 1,
                    period: p,
                });
            }
        }
    }
    out.sort_unstable();
    out
}

/// Best witness among powers with exponent ≥ 2 lying in `runs` clipped to
/// the prefix of length `n`.
fn best_square_witness(runs: &[Run], n: usize) -> Option<PowerWitness> {
    let mut best: Option<PowerWitness> = None;
    for r in runs {
        if r.start > n {
            continue;
        }
        let len = r.end.min(n) + 1 - r.start;
        if len < 2 * r.period {
            continue;
        }
        let mut q = r.period;
        while 2 * q <= len {
            let cand = PowerWitness::new(q, len / q, r.start);
            if best.as_ref().is_none_or(|b| cand.beats(b)) {
                best = Some(cand);
            }
            q += r.period;
        }
    }
    best
}

fn best_witness(runs: &[Run], n: usize) -> PowerWitness {
    let floor = PowerWitness::new(n, 1, 1);
    match best_square_witness(runs, n) {
        Some(sq) if sq.beats(&floor) => sq,
        _ => floor,
    }
}

/// Λ(w) with the witness achieving it.
pub fn lambda_with_witness(w: &Word) -> Result<PowerWitness> {
    if w.is_empty() {
        return invalid("lambda of the empty word");
    }
    Ok(best_witness(&runs(w), w.len()))
}

/// Λ(w) from runs plus the 8n² floor.
pub fn lambda(w: &Word) -> Result<BigCount> {
    Ok(lambda_with_witness(w)?.score)
}

/// Λ(w) and its witness by brute force over every start position, every η
/// length, and the maximal exponent there (ℓ = 1 included).
pub fn lambda_naive_with_witness(w: &Word) -> Result<PowerWitness> {
    if w.is_empty() {
        return invalid("lambda of the empty word");
    }
    let b = w.bits();
    let n = b.len();
    let mut best = PowerWitness::new(1, 1, 1);
    for k in 1..=n {
        for i in 0..=n - k {
            let mut ext = 0;
            while i + k + ext < n && b[i + ext] == b[i + k + ext] {
                ext += 1;
            }
            let cand = PowerWitness::new(k, 1 + ext / k, i + 1);
            if cand.beats(&best) {
                best = cand;
            }
        }
    }
    Ok(best)
}

pub fn lambda_naive(w: &Word) -> Result<BigCount> {
    Ok(lambda_naive_with_witness(w)?.score)
}

/// Λ of each checkpoint prefix with its witness.
///
/// The runs of a prefix are exactly the runs of the whole word clipped to it
/// that still have length ≥ 2p, so runs are computed once.
pub fn lambda_profile(w: &Word, checkpoints: &[usize]) -> Result<(Profile, Vec<PowerWitness>)> {
    check_checkpoints(w, checkpoints)?;
    if checkpoints.first() == Some(&0) {
        return invalid("lambda is undefined on the empty prefix");
    }
    let all = runs(w);
    let witnesses: Vec<PowerWitness> = checkpoints.iter().map(|&n| best_witness(&all, n)).collect();
    let profile = Profile {
        checkpoints: checkpoints.to_vec(),
        values: witnesses.iter().map(|x| x.score).collect(),
    };
    Ok((profile, witnesses))
}

/// Per checkpoint, the best power with exponent ≥ 2 in the prefix (if any).
pub fn square_witness_profile(w: &Word, checkpoints: &[usize]) -> Result<Vec<Option<PowerWitness>>> {
    check_checkpoints(w, checkpoints)?;
    let all = runs(w);
    Ok(checkpoints.iter().map(|&n| best_square_witness(&all, n)).collect())
}

/// R(ℓ) = Σ(ωη^{ℓ+2}) − 2Σ(ωη^{ℓ+1}) + Σ(ωη^ℓ) − 2k²ℓ for each ℓ, which lies in
/// [0, 2k⁴ + 3k) whenever η is primitive, ω and η end in different symbols,
/// and η^ℓ occurs exactly once in ωη^ℓ.
pub fn second_difference_residuals(omega: &Word, eta: &Word, ell_values: &[usize]) -> Result<Vec<i128>> {
    if omega.is_empty() || eta.is_empty() {
        return invalid("omega and eta must be nonempty");
    }
    if !is_prime_word(eta)? {
        return Err(Error::Precondition(format!("eta {eta} is not primitive")));
    }
    if omega.last() == eta.last() {
        return Err(Error::Precondition(format!(
            "omega {omega} and eta {eta} end in the same symbol"
        )));
    }
    let k = eta.len() as i128;
    ell_values
        .iter()
        .map(|&ell| {
            if ell < 2 {
                return Err(Error::Precondition(format!("ell = {ell} must be at least 2")));
            }
            let power = eta.pow(ell);
            let base = omega.concat(&power);
            let occurrences = base.bits().windows(power.len()).filter(|f| *f == power.bits()).count();
            if occurrences != 1 {
                return Err(Error::Precondition(format!(
                    "eta^{ell} occurs {occurrences} times in omega eta^{ell}, expected once"
                )));
            }
            let s0 = sigma(&base) as i128;
            let s1 = sigma(&base.concat(eta)) as i128;
            let s2 = sigma(&base.concat(&eta.pow(2))) as i128;
            Ok(s2 - 2 * s1 + s0 - 2 * k * k * ell as i128)
        })
        .collect()
}

/// Exclusive upper bound 2k⁴ + 3k on the residuals.
pub fn residual_bound(k: usize) -> i128 {
    let k = k as i128;
    2 * k * k * k * k + 3 * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma::sigma;
    use crate::word::make_random;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn runs_examples() {
        let r = |s, e, p| Run { start: s, end: e, period: p };
        assert_eq!(runs(&w("0101")), vec![r(1, 4, 2)]);
        assert_eq!(runs(&w("0011")), vec![r(1, 2, 1), r(3, 4, 1)]);
        assert_eq!(runs(&w("010")), vec![]);
        assert_eq!(runs(&w("0")), vec![]);
        assert_eq!(runs_naive(&w("0011")), runs(&w("0011")));
    }

    #[test]
    fn runs_match_naive_exhaustively() {
        for len in 0..=14 {
            for code in 0..1u64 << len {
                let x = Word::from_code(code, len);
                assert_eq!(runs(&x), runs_naive(&x), "{x}");
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_naive(&w("01")).unwrap(), 32);
        assert_eq!(lambda_naive(&w("0000")).unwrap(), 128);
        assert_eq!(lambda_naive(&w("00000")).unwrap(), 216);
        assert_eq!(lambda(&w("0000")).unwrap(), 128);
        assert_eq!(lambda(&w("00000")).unwrap(), 216);
        assert_eq!(lambda(&w("0101")).unwrap(), 128);
        assert!(lambda(&Word::empty()).is_err());
        assert!(lambda_naive(&Word::empty()).is_err());
    }

    #[test]
    fn profile_examples() {
        let (p, wit) = lambda_profile(&w("00000"), &[4, 5]).unwrap();
        assert_eq!(p.values, vec![128, 216]);
        assert_eq!((wit[1].eta_length, wit[1].exponent), (1, 5));
        let (p, _) = lambda_profile(&w("0101"), &[4]).unwrap();
        assert_eq!(p.values, vec![128]);
        for s in ["0", "1", "0110", "1000"] {
            let (p, _) = lambda_profile(&w(s), &[1]).unwrap();
            assert_eq!(p.values, vec![8]);
        }
        assert!(lambda_profile(&w("01"), &[3]).is_err());
    }

    #[test]
    fn residual_examples() {
        assert_eq!(second_difference_residuals(&w("1"), &w("0"), &[2]).unwrap(), vec![3]);
        let r = second_difference_residuals(&w("1"), &w("0"), &[3]).unwrap()[0];
        assert!((0..5).contains(&r));
        assert!(matches!(
            second_difference_residuals(&w("0"), &w("0"), &[2]),
            Err(Error::Precondition(_))
        ));
        assert!(second_difference_residuals(&w("1"), &w("00"), &[2]).is_err());
        assert!(second_difference_residuals(&w("1"), &w("0"), &[1]).is_err());
        // "0" inside omega makes "00" occur twice in omega·00
        assert!(second_difference_residuals(&w("001"), &w("0"), &[2]).is_err());
    }

    #[test]
    fn lambda_and_witness_match_naive_to_12() {
        for len in 1..=12 {
            for code in 0..1u64 << len {
                let x = Word::from_code(code, len);
                let fast = lambda_with_witness(&x).unwrap();
                assert_eq!(fast, lambda_naive_with_witness(&x).unwrap(), "{x}");
                assert!(fast.verify(&x));
                assert!(fast.score >= 8 * (len as BigCount).pow(2));
                assert!(48 * sigma(&x) >= fast.score);
            }
        }
    }

    #[test]
    fn prefix_profile_matches_per_prefix_lambda() {
        let x = make_random(21, 120);
        let cps: Vec<usize> = (1..=120).collect();
        let (p, wit) = lambda_profile(&x, &cps).unwrap();
        for (i, &n) in cps.iter().enumerate() {
            let expect = lambda_naive_with_witness(&x.prefix(n)).unwrap();
            assert_eq!(wit[i], expect);
            assert!(wit[i].verify(&x));
        }
        assert!(p.values.windows(2).all(|v| v[0] <= v[1]));
    }

    proptest::proptest! {
        #[test]
        fn runs_match_naive(bits in proptest::collection::vec(0u8..2, 0..40)) {
            let x = Word::from_bits(bits).unwrap();
            proptest::prop_assert_eq!(runs(&x), runs_naive(&x));
        }

        #[test]
        fn lambda_matches_naive(bits in proptest::collection::vec(0u8..2, 1..80)) {
            let x = Word::from_bits(bits).unwrap();
            proptest::prop_assert_eq!(lambda(&x).unwrap(), lambda_naive(&x).unwrap());
        }
    }
}
