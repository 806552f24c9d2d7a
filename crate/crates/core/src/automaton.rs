//! Suffix automaton over the binary alphabet with per-state occurrence counts.

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
pub struct State {
    pub max_length: u32,
    pub suffix_link: u32,
    pub next: [u32; 2],
    pub occurrences: u64,
}

/// Minimal automaton of the factors of a word. State 0 is the initial state.
#[derive(Clone, Debug)]
pub struct SuffixAutomaton {
    states: Vec<State>,
    last: u32,
}

impl SuffixAutomaton {
    pub fn build(word: &[u8]) -> Self {
        let mut sa = SuffixAutomaton {
            states: Vec::with_capacity(2 * word.len() + 1),
            last: 0,
        };
        sa.states.push(State {
            max_length: 0,
            suffix_link: NONE,
            next: [NONE; 2],
            occurrences: 0,
        });
        for &c in word {
            sa.extend(c as usize);
        }
        sa.count_occurrences();
        sa
    }

    fn extend(&mut self, c: usize) {
        let cur = self.states.len() as u32;
        self.states.push(State {
            max_length: self.states[self.last as usize].max_length + 1,
            suffix_link: NONE,
            next: [NONE; 2],
            occurrences: 1,
        });
        let mut p = self.last;
        while p != NONE && self.states[p as usize].next[c] == NONE {
            self.states[p as usize].next[c] = cur;
            p = self.states[p as usize].suffix_link;
        }
        if p == NONE {
            self.states[cur as usize].suffix_link = 0;
        } else {
            let q = self.states[p as usize].next[c];
            if self.states[p as usize].max_length + 1 == self.states[q as usize].max_length {
                self.states[cur as usize].suffix_link = q;
            } else {
                let clone = self.states.len() as u32;
                let mut cloned = self.states[q as usize];
                cloned.max_length = self.states[p as usize].max_length + 1;
                cloned.occurrences = 0;
                self.states.push(cloned);
                while p != NONE && self.states[p as usize].next[c] == q {
                    self.states[p as usize].next[c] = clone;
                    p = self.states[p as usize].suffix_link;
                }
                self.states[q as usize].suffix_link = clone;
                self.states[cur as usize].suffix_link = clone;
            }
        }
        self.last = cur;
    }

    // Each non-clone state marks one end position; summing up the suffix-link
    // tree in decreasing max_length order gives |endpos| per state.
    fn count_occurrences(&mut self) {
        let max_len = self.states[self.last as usize].max_length as usize;
        let mut bucket = vec![0usize; max_len + 2];
        for s in &self.states {
            bucket[s.max_length as usize + 1] += 1;
        }
        for i in 1..bucket.len() {
            bucket[i] += bucket[i - 1];
        }
        let mut order = vec![0u32; self.states.len()];
        for (i, s) in self.states.iter().enumerate() {
            let slot = &mut bucket[s.max_length as usize];
            order[*slot] = i as u32;
            *slot += 1;
        }
        for &v in order.iter().rev() {
            let link = self.states[v as usize].suffix_link;
            if link != NONE {
                let occ = self.states[v as usize].occurrences;
                self.states[link as usize].occurrences += occ;
            }
        }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn transition_count(&self) -> usize {
        self.states
            .iter()
            .map(|s| s.next.iter().filter(|&&t| t != NONE).count())
            .sum()
    }

    /// Number of factors represented by state `v`.
    pub fn class_size(&self, v: usize) -> u32 {
        let s = &self.states[v];
        s.max_length - self.states[s.suffix_link as usize].max_length
    }

    /// Sum over all nonempty factors of the squared occurrence count.
    pub fn sum_squared_counts(&self) -> u128 {
        (1..self.states.len())
            .map(|v| {
                let occ = self.states[v].occurrences as u128;
                occ * occ * self.class_size(v) as u128
            })
            .sum()
    }

    /// Number of distinct factors of length `k`.
    pub fn distinct_factors_of_length(&self, k: usize) -> usize {
        let k = k as u32;
        (1..self.states.len())
            .filter(|&v| {
                let s = &self.states[v];
                let lo = self.states[s.suffix_link as usize].max_length;
                lo < k && k <= s.max_length
            })
            .count()
    }

    /// Occurrence count of `pattern` (0 if absent).
    pub fn count(&self, pattern: &[u8]) -> u64 {
        let mut v = 0u32;
        for &c in pattern {
            v = self.states[v as usize].next[c as usize];
            if v == NONE {
                return 0;
            }
        }
        if pattern.is_empty() {
            0
        } else {
            self.states[v as usize].occurrences
        }
    }
}
