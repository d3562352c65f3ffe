//! Permutations in one-line notation and Lehmer codes.
//!
//! A [`Permutation`] stores the word exactly as it was given, but comparison and
//! hashing ignore trailing fixed points, so `4132` and `41325` are the same
//! element of the infinite symmetric group.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// The six patterns whose avoidance characterizes Schubert polynomials that are
/// forest polynomials.
pub const FORBIDDEN_PATTERNS: [&[u32]; 6] = [
    &[1, 4, 3, 2],
    &[2, 4, 1, 3],
    &[2, 4, 3, 1],
    &[1, 4, 5, 2, 3],
    &[3, 2, 1, 5, 4],
    &[3, 4, 1, 2, 6, 5],
];

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, Debug)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            let idx = v as usize;
            if idx == 0 || idx > n {
                return Err(Error::InvalidPermutation {
                    word,
                    reason: format!("value {v} is outside 1..={n}"),
                });
            }
            if std::mem::replace(&mut seen[idx - 1], true) {
                return Err(Error::InvalidPermutation {
                    word,
                    reason: format!("value {v} appears twice"),
                });
            }
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    /// The longest element `n n-1 ... 1` of `S_n`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).rev().collect(),
        }
    }

    /// Every permutation of `S_n`, in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n as u32).permutations(n).map(|word| Permutation { word })
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// The word with trailing fixed points removed.
    pub fn stripped(&self) -> &[u32] {
        let mut end = self.word.len();
        while end > 0 && self.word[end - 1] as usize == end {
            end -= 1;
        }
        &self.word[..end]
    }

    /// `w(i)` for a 1-based position; positions past the word are fixed.
    pub fn get(&self, i: usize) -> u32 {
        assert!(i >= 1, "positions are 1-based");
        self.word.get(i - 1).copied().unwrap_or(i as u32)
    }

    pub fn is_identity(&self) -> bool {
        self.stripped().is_empty()
    }

    /// The same permutation written as an element of `S_m`, `m >= n`.
    pub fn padded(&self, m: usize) -> Permutation {
        let mut word = self.stripped().to_vec();
        let start = word.len() as u32 + 1;
        word.extend(start..=m.max(word.len()) as u32);
        Permutation { word }
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word }
    }

    pub fn inversions(&self) -> usize {
        self.lehmer_code().total()
    }

    pub fn lehmer_code(&self) -> LehmerCode {
        let entries = self
            .word
            .iter()
            .enumerate()
            .map(|(i, &wi)| self.word[i + 1..].iter().filter(|&&wj| wj < wi).count() as u32)
            .collect();
        LehmerCode::new(entries)
    }

    /// Inverse of [`Permutation::lehmer_code`]. The size is the smallest `n`
    /// with `L(i) <= n - i` for every position, and at least 1.
    pub fn from_code(code: &LehmerCode) -> Permutation {
        let n = code
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &l)| i + 1 + l as usize)
            .max()
            .unwrap_or(1);
        let mut unused: Vec<u32> = (1..=n as u32).collect();
        let word = (1..=n).map(|i| unused.remove(code.get(i) as usize)).collect();
        Permutation { word }
    }

    /// Positions swapped by right multiplication with `s_a`: entries `a` and `a+1`.
    /// Returns `false` (and leaves `self` untouched) when the swap would not
    /// lengthen the permutation.
    pub(crate) fn try_ascend(&mut self, a: usize) -> bool {
        if self.word.len() < a + 1 {
            let start = self.word.len() as u32 + 1;
            self.word.extend(start..=a as u32 + 1);
        }
        if self.word[a - 1] > self.word[a] {
            return false;
        }
        self.word.swap(a - 1, a);
        true
    }

    /// Finds the lexicographically first occurrence of `pattern` and returns
    /// its 1-based positions.
    pub fn find_pattern(&self, pattern: &[u32]) -> Option<Vec<usize>> {
        let k = pattern.len();
        if k > self.word.len() {
            return None;
        }
        let mut chosen = Vec::with_capacity(k);
        self.extend_match(pattern, 0, &mut chosen)
            .then(|| chosen.iter().map(|&i| i + 1).collect())
    }

    fn extend_match(&self, pattern: &[u32], from: usize, chosen: &mut Vec<usize>) -> bool {
        let depth = chosen.len();
        if depth == pattern.len() {
            return true;
        }
        let last_start = self.word.len() - (pattern.len() - depth);
        for idx in from..=last_start {
            let v = self.word[idx];
            let consistent = chosen
                .iter()
                .zip(pattern)
                .all(|(&c, &p)| (self.word[c] < v) == (p < pattern[depth]));
            if consistent {
                chosen.push(idx);
                if self.extend_match(pattern, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        self.find_pattern(&pattern.word).is_some()
    }

    /// The first forbidden pattern (in [`FORBIDDEN_PATTERNS`] order) occurring
    /// in `self`, with the positions of its first occurrence.
    pub fn first_forbidden(&self) -> Option<(Permutation, Vec<usize>)> {
        FORBIDDEN_PATTERNS.iter().find_map(|p| {
            self.find_pattern(p)
                .map(|at| (Permutation::from_word_unchecked(p.to_vec()), at))
        })
    }

    pub fn avoids_forbidden(&self) -> bool {
        self.first_forbidden().is_none()
    }

    /// Inserts value `k` at 1-based position `i`, shifting every value `>= k`
    /// up by one.
    pub fn insert(&self, i: usize, k: u32) -> Result<Permutation> {
        let max = self.n() + 1;
        if i == 0 || i > max || k == 0 || k as usize > max {
            return Err(Error::InsertOutOfRange {
                index: i,
                value: k,
                max,
            });
        }
        let mut word: Vec<u32> = self.word.iter().map(|&v| if v >= k { v + 1 } else { v }).collect();
        word.insert(i - 1, k);
        Ok(Permutation { word })
    }

    /// Removes position `i` and renormalizes the remaining values.
    pub fn remove(&self, i: usize) -> Permutation {
        assert!(i >= 1 && i <= self.n(), "position {i} out of range");
        let k = self.word[i - 1];
        let word = self
            .word
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i - 1)
            .map(|(_, &v)| if v > k { v - 1 } else { v })
            .collect();
        Permutation { word }
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.stripped() == other.stripped()
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.stripped().hash(state);
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.word.iter().join(","))
        }
    }
}

/// Bare digits for `n <= 9` (`"4132"`), comma separated otherwise.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.into(),
        };
        if s.is_empty() {
            return Err(parse_err("empty permutation"));
        }
        let word = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| parse_err(&e.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| parse_err("expected digits")))
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(word)
    }
}

/// A finitely supported vector of nonnegative integers, `L(1), L(2), ...`.
/// Trailing zeros are dropped on construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LehmerCode {
    entries: Vec<u32>,
}

impl LehmerCode {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        LehmerCode { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `L(i)` for a 1-based index; zero past the support.
    pub fn get(&self, i: usize) -> u32 {
        assert!(i >= 1, "code indices are 1-based");
        self.entries.get(i - 1).copied().unwrap_or(0)
    }

    /// Index of the last nonzero entry (0 for the zero code).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|&l| l as usize).sum()
    }

    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.entries.clone();
        v.resize(n.max(v.len()), 0);
        v
    }
}

impl From<Vec<u32>> for LehmerCode {
    fn from(entries: Vec<u32>) -> Self {
        LehmerCode::new(entries)
    }
}

impl fmt::Display for LehmerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

/// Comma separated entries; the empty string is the zero code.
impl FromStr for LehmerCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(LehmerCode::default());
        }
        s.split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(LehmerCode::new)
            .map_err(|e| Error::Parse {
                input: s.to_string(),
                reason: e.to_string(),
            })
    }
}
