//! Bit-packed subsets of `{0, .., n-1}`.

use std::fmt;

use crate::bits;
use crate::error::{domain, Result};

/// A subset of the vertex set `{0, .., universe-1}` of some `K_N`.
///
/// All density and regularity queries take their vertex sets in this form;
/// set algebra works word-by-word and cardinality is a popcount.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; bits::words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            universe,
            words: bits::full(universe),
        }
    }

    /// Builds a set from vertex indices; duplicates are ignored.
    pub fn from_indices<I>(universe: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::empty(universe);
        for v in indices {
            if v >= universe {
                return domain(format!("vertex {v} outside universe of size {universe}"));
            }
            bits::set(&mut s.words, v);
        }
        Ok(s)
    }

    /// The half-open range `lo..hi` as a set.
    pub fn range(universe: usize, lo: usize, hi: usize) -> Result<Self> {
        Self::from_indices(universe, lo..hi)
    }

    pub(crate) fn from_words(universe: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), bits::words_for(universe));
        VertexSet { universe, words }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        bits::count(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && bits::test(&self.words, v)
    }

    pub fn insert(&mut self, v: usize) -> Result<()> {
        if v >= self.universe {
            return domain(format!("vertex {v} outside universe of size {}", self.universe));
        }
        bits::set(&mut self.words, v);
        Ok(())
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            bits::clear(&mut self.words, v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        bits::ones(&self.words)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        Self::full(self.universe).difference(self)
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        bits::and_count(&self.words, &other.words)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(
            self.universe, other.universe,
            "vertex sets over different universes"
        );
        VertexSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Parses a comma-separated vertex list such as `0,1,5` or a range `3..7`.
    pub fn parse_list(universe: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((lo, hi)) = text.split_once("..") {
            let lo = parse_index(lo)?;
            let hi = parse_index(hi)?;
            if lo > hi {
                return domain(format!("empty range {text}"));
            }
            return Self::range(universe, lo, hi);
        }
        let mut ids = Vec::new();
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            ids.push(parse_index(part)?);
        }
        Self::from_indices(universe, ids)
    }
}

fn parse_index(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .or_else(|_| domain(format!("not a vertex index: {s:?}")))
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}
