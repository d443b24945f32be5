//! Red/blue edge colorings of `K_N` and the density primitives built on them.

use std::fmt;
use std::str::FromStr;

use crate::bits;
use crate::error::{domain, Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "red" | "r" => Ok(Color::Red),
            "blue" | "b" => Ok(Color::Blue),
            _ => domain(format!("unknown color {s:?} (expected red or blue)")),
        }
    }
}

/// A two-coloring of the edges of `K_n`.
///
/// Both color classes are stored as full symmetric adjacency rows so that
/// neighbourhood intersections in either color are a word-wise AND. The value
/// is never mutated after construction except through the crate-private
/// `flip_mut` used by the search loop on its own scratch copy.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TwoColoring {
    n: usize,
    words: usize,
    red: Vec<u64>,
    blue: Vec<u64>,
}

impl TwoColoring {
    /// Builds a coloring from a predicate on unordered pairs; `f(i, j)` is
    /// only called with `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Color) -> Result<Self> {
        let mut c = Self::monochromatic(n, Color::Red)?;
        for i in 0..n {
            for j in i + 1..n {
                if f(i, j) == Color::Blue {
                    c.set_pair(i, j, Color::Blue);
                }
            }
        }
        Ok(c)
    }

    pub fn monochromatic(n: usize, color: Color) -> Result<Self> {
        if n == 0 {
            return domain("a coloring needs at least one vertex");
        }
        let words = bits::words_for(n);
        let mut full = vec![0u64; n * words];
        let mask = bits::full(n);
        for v in 0..n {
            let row = &mut full[v * words..(v + 1) * words];
            row.copy_from_slice(&mask);
            bits::clear(row, v);
        }
        let empty = vec![0u64; n * words];
        let (red, blue) = match color {
            Color::Red => (full, empty),
            Color::Blue => (empty, full),
        };
        Ok(TwoColoring { n, words, red, blue })
    }

    /// Builds a coloring from upper-triangle blue indicators in row-major
    /// order: pair `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
    pub fn from_upper_blue(n: usize, blue: impl IntoIterator<Item = bool>) -> Result<Self> {
        let mut it = blue.into_iter();
        let mut c = Self::monochromatic(n, Color::Red)?;
        for i in 0..n {
            for j in i + 1..n {
                match it.next() {
                    Some(true) => c.set_pair(i, j, Color::Blue),
                    Some(false) => {}
                    None => return domain("too few pair indicators"),
                }
            }
        }
        if it.next().is_some() {
            return domain("too many pair indicators");
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` in `color`, as packed words.
    pub fn row(&self, v: usize, color: Color) -> &[u64] {
        let m = match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        };
        &m[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize, color: Color) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v, color).to_vec())
    }

    pub fn degree(&self, v: usize, color: Color) -> usize {
        bits::count(self.row(v, color))
    }

    /// Color of the edge `{u, v}`.
    pub fn color(&self, u: usize, v: usize) -> Result<Color> {
        if u >= self.n || v >= self.n {
            return domain(format!("vertex out of range for n = {}", self.n));
        }
        if u == v {
            return domain(format!("no edge from vertex {u} to itself"));
        }
        Ok(self.color_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn color_unchecked(&self, u: usize, v: usize) -> Color {
        if bits::test(self.row(u, Color::Blue), v) {
            Color::Blue
        } else {
            Color::Red
        }
    }

    #[inline]
    pub fn is_blue(&self, u: usize, v: usize) -> bool {
        bits::test(self.row(u, Color::Blue), v)
    }

    pub fn edge_count(&self, color: Color) -> usize {
        (0..self.n).map(|v| self.degree(v, color)).sum::<usize>() / 2
    }

    /// Upper-triangle blue indicators in row-major order.
    pub fn upper_blue(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| self.is_blue(i, j)))
    }

    /// The coloring with every edge recolored.
    pub fn swapped(&self) -> Self {
        TwoColoring {
            n: self.n,
            words: self.words,
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }

    /// A copy with the edge `{u, v}` recolored.
    pub fn with_flipped(&self, u: usize, v: usize) -> Result<Self> {
        let now = self.color(u, v)?;
        let mut c = self.clone();
        c.set_pair(u, v, now.other());
        Ok(c)
    }

    /// A copy with the vertex order permuted: vertex `v` of `self` becomes
    /// vertex `perm[v]` of the result.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return domain("permutation length differs from n");
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return domain("not a permutation of the vertex set");
            }
        }
        let mut c = Self::monochromatic(self.n, Color::Red)?;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.is_blue(i, j) {
                    c.set_pair(perm[i], perm[j], Color::Blue);
                }
            }
        }
        Ok(c)
    }

    /// Adds a new vertex `n` joined to every existing vertex in `color`.
    pub fn with_apex(&self, color: Color) -> Self {
        let n = self.n + 1;
        TwoColoring::from_fn(n, |i, j| {
            if j == self.n {
                color
            } else {
                self.color_unchecked(i, j)
            }
        })
        .expect("n >= 1")
    }

    /// Induced coloring on the vertices of `s`, relabelled `0..|s|` in
    /// increasing order.
    pub fn induced(&self, s: &VertexSet) -> Result<Self> {
        let vs = s.to_vec();
        Self::from_fn(vs.len(), |i, j| self.color_unchecked(vs[i], vs[j]))
    }

    pub(crate) fn set_pair(&mut self, u: usize, v: usize, color: Color) {
        let w = self.words;
        let (on, off) = match color {
            Color::Red => (&mut self.red, &mut self.blue),
            Color::Blue => (&mut self.blue, &mut self.red),
        };
        bits::set(&mut on[u * w..(u + 1) * w], v);
        bits::set(&mut on[v * w..(v + 1) * w], u);
        bits::clear(&mut off[u * w..(u + 1) * w], v);
        bits::clear(&mut off[v * w..(v + 1) * w], u);
    }

    pub(crate) fn flip_mut(&mut self, u: usize, v: usize) {
        let c = self.color_unchecked(u, v);
        self.set_pair(u, v, c.other());
    }
}

impl fmt::Debug for TwoColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TwoColoring(n={})", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                let ch = if i == j {
                    '.'
                } else if self.is_blue(i, j) {
                    'B'
                } else {
                    'R'
                };
                write!(f, "{ch}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Edge counts between two vertex sets over ordered pairs `(x, y)` with
/// `x != y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityReport {
    pub pair_count: u64,
    pub blue_edges: u64,
    pub red_edges: u64,
    pub d_blue: f64,
    pub d_red: f64,
}

impl DensityReport {
    pub fn edges(&self, color: Color) -> u64 {
        match color {
            Color::Red => self.red_edges,
            Color::Blue => self.blue_edges,
        }
    }

    pub fn density(&self, color: Color) -> f64 {
        match color {
            Color::Red => self.d_red,
            Color::Blue => self.d_blue,
        }
    }
}

/// Number of ordered pairs `(x, y)` with `x` in `xs`, `y` in `ys`, `x != y`,
/// joined in `color`.
pub(crate) fn edges_between(c: &TwoColoring, xs: &VertexSet, ys: &VertexSet, color: Color) -> u64 {
    xs.iter()
        .map(|x| bits::and_count(c.row(x, color), ys.words()) as u64)
        .sum()
}

/// Densities of the pair `(X, Y)`.
///
/// When `X` and `Y` overlap the diagonal pairs `(x, x)` are dropped, so
/// `density(c, X, X)` is the internal edge density of `X`.
pub fn density(c: &TwoColoring, xs: &VertexSet, ys: &VertexSet) -> Result<DensityReport> {
    if xs.universe() != c.n() || ys.universe() != c.n() {
        return domain("vertex set universe does not match the coloring");
    }
    if xs.is_empty() || ys.is_empty() {
        return domain("density of an empty vertex set");
    }
    let pair_count = (xs.len() * ys.len() - xs.intersection_len(ys)) as u64;
    if pair_count == 0 {
        return domain("density over zero vertex pairs");
    }
    let blue_edges = edges_between(c, xs, ys, Color::Blue);
    let red_edges = pair_count - blue_edges;
    Ok(DensityReport {
        pair_count,
        blue_edges,
        red_edges,
        d_blue: blue_edges as f64 / pair_count as f64,
        d_red: red_edges as f64 / pair_count as f64,
    })
}

/// Vertices outside `s` joined to every vertex of `s` in `color`.
pub fn common_neighborhood(c: &TwoColoring, s: &VertexSet, color: Color) -> Result<VertexSet> {
    if s.universe() != c.n() {
        return domain("vertex set universe does not match the coloring");
    }
    if s.is_empty() {
        return domain("common neighborhood of the empty set");
    }
    let mut acc = bits::full(c.n());
    for v in s.iter() {
        bits::and_assign(&mut acc, c.row(v, color));
    }
    Ok(VertexSet::from_words(c.n(), acc))
}
