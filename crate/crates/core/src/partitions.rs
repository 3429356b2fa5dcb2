//! Integer partitions and the index combinatorics used throughout the crate.
//!
//! A partition is a weakly decreasing sequence of positive integers; trailing
//! zeros are normalised away at construction, so `(2,1)` and `(2,1,0)` are
//! the same value.  Partitions index both the Schur basis of the symmetric
//! functions and the basis of each charge component of the Fock space.

use std::fmt;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Immutable value with structural equality.  Parts are stored as `i64`
/// because they combine freely with (possibly negative) basis indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    /// Builds a partition from a part sequence, dropping trailing zeros.
    ///
    /// Rejects negative parts and sequences that are not weakly decreasing.
    pub fn new(parts: impl IntoIterator<Item = i64>) -> Result<Self> {
        let raw: Vec<i64> = parts.into_iter().collect();
        if raw.iter().any(|&p| p < 0) {
            return Err(Error::Negative(raw));
        }
        if raw.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NonMonotone(raw));
        }
        let mut parts = raw;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from parts already known to be valid.
    ///
    /// Panics if the input is invalid; reserved for internal construction
    /// sites where validity is structural.
    pub(crate) fn from_valid(parts: Vec<i64>) -> Self {
        Partition::new(parts).expect("internal partition construction must be valid")
    }

    /// The column `(1^j)`: `j` parts equal to one.
    pub fn column(j: usize) -> Self {
        Partition { parts: vec![1; j] }
    }

    /// The row `(k)`, or the empty partition when `k = 0`.
    pub fn row(k: i64) -> Self {
        assert!(k >= 0, "row length must be non-negative");
        if k == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![k] }
        }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Number of (nonzero) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// The `k`-th part with 1-based indexing; zero beyond the length.
    pub fn part(&self, k: usize) -> i64 {
        if k == 0 {
            panic!("parts are 1-indexed");
        }
        self.parts.get(k - 1).copied().unwrap_or(0)
    }

    /// Removes the `i`-th part (1-based).  Removing a part beyond the length
    /// removes a zero and leaves the partition unchanged.
    pub fn remove_part(&self, i: usize) -> Self {
        assert!(i >= 1, "parts are 1-indexed");
        if i > self.parts.len() {
            return self.clone();
        }
        let mut parts = self.parts.clone();
        parts.remove(i - 1);
        Partition { parts }
    }

    /// Adds the column `(1^j)`: the first `j` parts grow by one; parts beyond
    /// the current length become one.
    pub fn add_column(&self, j: usize) -> Self {
        let mut parts = self.parts.clone();
        while parts.len() < j {
            parts.push(0);
        }
        for p in parts.iter_mut().take(j) {
            *p += 1;
        }
        Partition { parts }
    }

    /// True if the Young diagram of `other` is contained in that of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        (1..=other.len()).all(|k| self.part(k) >= other.part(k))
    }

    /// All partitions with weight at most `max_weight` and length at most
    /// `max_length`, each exactly once, in graded reverse-lexicographic
    /// order: weight ascending, and within a weight lexicographically
    /// descending (missing parts read as zero).
    pub fn enumerate_bounded(max_weight: i64, max_length: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        for w in 0..=max_weight.max(0) {
            let mut grade = Vec::new();
            enumerate_weight(w, max_length, w, &mut Vec::new(), &mut grade);
            out.extend(grade);
        }
        out
    }
}

fn enumerate_weight(
    remaining: i64,
    max_len: usize,
    cap: i64,
    prefix: &mut Vec<i64>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    if max_len == 0 {
        return;
    }
    // Descending first part yields lexicographically descending output.
    let mut p = cap.min(remaining);
    while p >= 1 {
        prefix.push(p);
        enumerate_weight(remaining - p, max_len - 1, p, prefix, out);
        prefix.pop();
        p -= 1;
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}
