//! Suffix array (SA-IS), LCP array and constant-ish-time longest common
//! extension queries.

const NONE: usize = usize::MAX;

/// Suffix array of `text` over symbols `0..alphabet`. A proper prefix sorts
/// before its extensions.
pub fn suffix_array(text: &[u8], alphabet: usize) -> Vec<usize> {
    let mut s: Vec<usize> = text.iter().map(|&c| c as usize + 1).collect();
    s.push(0);
    let sa = sais(&s, alphabet + 1);
    sa[1..].to_vec()
}

fn bucket_bounds(s: &[usize], k: usize) -> (Vec<usize>, Vec<usize>) {
    let mut count = vec![0; k];
    for &c in s {
        count[c] += 1;
    }
    let mut starts = vec![0; k];
    let mut ends = vec![0; k];
    let mut sum = 0;
    for c in 0..k {
        starts[c] = sum;
        sum += count[c];
        ends[c] = sum;
    }
    (starts, ends)
}

// `s` must end with a unique 0 sentinel.
fn sais(s: &[usize], k: usize) -> Vec<usize> {
    let n = s.len();
    if n == 1 {
        return vec![0];
    }
    let mut stype = vec![false; n];
    stype[n - 1] = true;
    for i in (0..n - 1).rev() {
        stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];
    let (starts, ends) = bucket_bounds(s, k);

    let induce = |lms: &[usize]| -> Vec<usize> {
        let mut sa = vec![NONE; n];
        let mut tail = ends.clone();
        for &i in lms.iter().rev() {
            tail[s[i]] -= 1;
            sa[tail[s[i]]] = i;
        }
        let mut head = starts.clone();
        for r in 0..n {
            let j = sa[r];
            if j != NONE && j > 0 && !stype[j - 1] {
                sa[head[s[j - 1]]] = j - 1;
                head[s[j - 1]] += 1;
            }
        }
        let mut tail = ends.clone();
        for r in (0..n).rev() {
            let j = sa[r];
            if j != NONE && j > 0 && stype[j - 1] {
                tail[s[j - 1]] -= 1;
                sa[tail[s[j - 1]]] = j - 1;
            }
        }
        sa
    };

    let lms_positions: Vec<usize> = (1..n).filter(|&i| is_lms(i)).collect();
    let sa = induce(&lms_positions);

    // name LMS substrings in sorted order
    let mut names = vec![NONE; n];
    let mut name = 0;
    let mut prev = NONE;
    for &p in sa.iter().filter(|&&p| is_lms(p)) {
        if prev != NONE && !lms_substrings_equal(s, &stype, prev, p) {
            name += 1;
        }
        names[p] = name;
        prev = p;
    }
    let name_count = name + 1;
    let reduced: Vec<usize> = lms_positions.iter().map(|&p| names[p]).collect();

    let reduced_sa = if name_count < reduced.len() {
        sais(&reduced, name_count)
    } else {
        let mut out = vec![0; reduced.len()];
        for (i, &c) in reduced.iter().enumerate() {
            out[c] = i;
        }
        out
    };
    let sorted_lms: Vec<usize> = reduced_sa.iter().map(|&r| lms_positions[r]).collect();
    induce(&sorted_lms)
}

fn lms_substrings_equal(s: &[usize], stype: &[bool], a: usize, b: usize) -> bool {
    let n = s.len();
    let is_lms = |i: usize| i > 0 && stype[i] && !stype[i - 1];
    let mut d = 0;
    loop {
        if a + d >= n || b + d >= n {
            return false;
        }
        if s[a + d] != s[b + d] || stype[a + d] != stype[b + d] {
            return false;
        }
        if d > 0 {
            match (is_lms(a + d), is_lms(b + d)) {
                (true, true) => return true,
                (false, false) => {}
                _ => return false,
            }
        }
        d += 1;
    }
}

/// Kasai: `lcp[r]` = lcp of the suffixes ranked `r - 1` and `r`; `lcp[0] = 0`.
pub fn lcp_array(text: &[u8], sa: &[usize], rank: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] == 0 {
            h = 0;
            continue;
        }
        let j = sa[rank[i] - 1];
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[rank[i]] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

pub fn inverse(sa: &[usize]) -> Vec<usize> {
    let mut rank = vec![0; sa.len()];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    rank
}

const BLOCK: usize = 32;

/// Range-minimum over a fixed array: sparse table over block minima plus
/// short in-block scans.
struct RangeMin {
    values: Vec<u32>,
    table: Vec<Vec<u32>>,
}

impl RangeMin {
    fn new(values: Vec<u32>) -> Self {
        let blocks: Vec<u32> = values
            .chunks(BLOCK)
            .map(|c| *c.iter().min().unwrap())
            .collect();
        let mut table = vec![blocks];
        let mut width = 1;
        while 2 * width <= table[0].len() {
            let prev = table.last().unwrap();
            let next: Vec<u32> = (0..prev.len() - width)
                .map(|i| prev[i].min(prev[i + width]))
                .collect();
            table.push(next);
            width *= 2;
        }
        RangeMin { values, table }
    }

    /// Minimum of `values[lo..=hi]`.
    fn query(&self, lo: usize, hi: usize) -> u32 {
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bh <= bl + 1 {
            return *self.values[lo..=hi].iter().min().unwrap();
        }
        let head = *self.values[lo..(bl + 1) * BLOCK].iter().min().unwrap();
        let tail = *self.values[bh * BLOCK..=hi].iter().min().unwrap();
        let (a, b) = (bl + 1, bh - 1);
        let level = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
        let mid = self.table[level][a].min(self.table[level][b + 1 - (1 << level)]);
        head.min(tail).min(mid)
    }
}

/// Longest common extension queries on one text.
pub struct Lce {
    rank: Vec<usize>,
    lcp: RangeMin,
}

impl Lce {
    pub fn new(text: &[u8]) -> Self {
        let sa = suffix_array(text, 2);
        let rank = inverse(&sa);
        let lcp = lcp_array(text, &sa, &rank);
        Lce {
            lcp: RangeMin::new(lcp.into_iter().map(|x| x as u32).collect()),
            rank,
        }
    }

    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    /// Length of the longest common prefix of `text[i..]` and `text[j..]`;
    /// positions equal to the text length denote the empty suffix.
    pub fn lce(&self, i: usize, j: usize) -> usize {
        let n = self.rank.len();
        if i >= n || j >= n {
            return 0;
        }
        if i == j {
            return n - i;
        }
        let (a, b) = (self.rank[i], self.rank[j]);
        let (lo, hi) = if a < b { (a + 1, b) } else { (b + 1, a) };
        self.lcp.query(lo, hi) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::make_random;

    fn naive_sa(text: &[u8]) -> Vec<usize> {
        let mut sa: Vec<usize> = (0..text.len()).collect();
        sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
        sa
    }

    #[test]
    fn matches_sorting_oracle() {
        for len in 0..=10 {
            for code in 0..1u32 << len {
                let t: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
                assert_eq!(suffix_array(&t, 2), naive_sa(&t), "{t:?}");
            }
        }
        for seed in 0..20 {
            let w = make_random(seed, 500);
            assert_eq!(suffix_array(w.bits(), 2), naive_sa(w.bits()));
        }
        let zeros = vec![0u8; 300];
        assert_eq!(suffix_array(&zeros, 2), naive_sa(&zeros));
    }

    #[test]
    fn lce_matches_scan() {
        let w = make_random(11, 300);
        let t = w.bits();
        let lce = Lce::new(t);
        for i in (0..300).step_by(7) {
            for j in (0..300).step_by(5) {
                let scan = t[i..].iter().zip(&t[j..]).take_while(|(a, b)| a == b).count();
                assert_eq!(lce.lce(i, j), scan, "{i} {j}");
            }
        }
        assert_eq!(lce.lce(3, 300), 0);
    }
}
