//! Exact extreme densities over all large subset pairs of `(X, Y)`.
//!
//! Subsets of the smaller side are enumerated outright. For a fixed subset
//! `S` the other side is optimised exactly: a vertex `b` contributes its
//! `color`-degree into `S` to the edge count and `|S| - [b ∈ S]` to the pair
//! count, so once the number `j` of chosen vertices inside `S` and the number
//! `m` outside it are fixed, the extreme densities come from the `j` and `m`
//! extreme weights of each group.

use itertools::Itertools;
use rayon::prelude::*;

use crate::bits;
use crate::coloring::{Color, TwoColoring};
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// Smallest subset size allowed by a fraction `frac` of a set of size `len`.
pub(crate) fn threshold(frac: f64, len: usize) -> usize {
    ((frac * len as f64 - 1e-9).ceil() as usize).clamp(1, len.max(1))
}

/// A candidate sub-pair `(X', Y')` with edge count `num` over `den` ordered
/// pairs.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub num: u64,
    pub den: u64,
}

impl Candidate {
    pub fn density(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Extreme {
    Min,
    Max,
}

pub(crate) struct Scanner<'a> {
    c: &'a TwoColoring,
    color: Color,
    /// The enumerated side and the optimised side.
    small: Vec<usize>,
    big: Vec<usize>,
    t_small: usize,
    t_big: usize,
    /// Whether `small` is the `X` argument.
    small_is_x: bool,
    masks: Vec<u32>,
}

impl<'a> Scanner<'a> {
    pub fn new(
        c: &'a TwoColoring,
        xs: &VertexSet,
        ys: &VertexSet,
        frac_x: f64,
        frac_y: f64,
        color: Color,
        cap: usize,
    ) -> Result<Self> {
        let small_is_x = xs.len() <= ys.len();
        let (small_set, big_set, fs, fb) = if small_is_x {
            (xs, ys, frac_x, frac_y)
        } else {
            (ys, xs, frac_y, frac_x)
        };
        let cap = cap.min(super::MAX_SUBSET_CAP);
        if small_set.len() > cap {
            return Err(Error::CapExceeded {
                what: "regularity subset scan (smaller side)",
                size: small_set.len(),
                cap,
                hint: "shrink the smaller side or raise the cap",
            });
        }
        let small = small_set.to_vec();
        let big = big_set.to_vec();
        let t_small = threshold(fs, small.len());
        let t_big = threshold(fb, big.len());
        // Largest subsets first, lexicographic within a size.
        let mut masks = Vec::new();
        for size in (t_small..=small.len()).rev() {
            for combo in (0..small.len()).combinations(size) {
                masks.push(combo.iter().fold(0u32, |m, &i| m | 1 << i));
            }
        }
        Ok(Scanner {
            c,
            color,
            small,
            big,
            t_small,
            t_big,
            small_is_x,
            masks,
        })
    }

    pub fn subsets(&self) -> usize {
        self.masks.len()
    }

    /// Extreme candidate for one enumerated subset, or `None` when every
    /// choice on the other side has zero pairs.
    fn extreme_for(&self, mask: u32, which: Extreme) -> Option<Candidate> {
        let s: Vec<usize> = (0..self.small.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.small[i])
            .collect();
        let sv = VertexSet::from_indices(self.c.n(), s.iter().copied()).expect("in range");
        let size = s.len() as u64;
        let mut inside: Vec<(u64, usize)> = Vec::new();
        let mut outside: Vec<(u64, usize)> = Vec::new();
        for &b in &self.big {
            let w = bits::and_count(self.c.row(b, self.color), sv.words()) as u64;
            if sv.contains(b) {
                inside.push((w, b));
            } else {
                outside.push((w, b));
            }
        }
        let key = |p: &(u64, usize)| match which {
            Extreme::Min => (p.0 as i64, p.1),
            Extreme::Max => (-(p.0 as i64), p.1),
        };
        inside.sort_by_key(key);
        outside.sort_by_key(key);
        let prefix = |v: &[(u64, usize)]| {
            let mut p = vec![0u64; v.len() + 1];
            for (i, e) in v.iter().enumerate() {
                p[i + 1] = p[i] + e.0;
            }
            p
        };
        let pin = prefix(&inside);
        let pout = prefix(&outside);
        let mut best: Option<(u64, u64, usize, usize)> = None;
        for j in 0..=inside.len() {
            let m_lo = self.t_big.saturating_sub(j);
            for m in m_lo..=outside.len() {
                let den = size * (j + m) as u64 - j as u64;
                if den == 0 {
                    continue;
                }
                let num = pin[j] + pout[m];
                let better = match best {
                    None => true,
                    // num/den against b.0/b.1, cross-multiplied.
                    Some(b) => match which {
                        Extreme::Min => (num as u128) * (b.1 as u128) < (b.0 as u128) * (den as u128),
                        Extreme::Max => (num as u128) * (b.1 as u128) > (b.0 as u128) * (den as u128),
                    },
                };
                if better {
                    best = Some((num, den, j, m));
                }
            }
        }
        let (num, den, j, m) = best?;
        let mut other: Vec<usize> = inside[..j].iter().chain(&outside[..m]).map(|p| p.1).collect();
        other.sort_unstable();
        let (x, y) = if self.small_is_x { (s, other) } else { (other, s) };
        Some(Candidate { x, y, num, den })
    }

    /// The first enumerated subset (in scan order) whose extreme candidate
    /// satisfies `violates`, checking the minimum and then the maximum.
    pub fn first_violation<F>(&self, need_min: bool, need_max: bool, violates: F) -> Option<Candidate>
    where
        F: Fn(&Candidate) -> bool + Sync,
    {
        self.masks.par_iter().find_map_first(|&mask| {
            [(need_min, Extreme::Min), (need_max, Extreme::Max)]
                .into_iter()
                .filter(|p| p.0)
                .filter_map(|(_, which)| self.extreme_for(mask, which))
                .find(|cand| violates(cand))
        })
    }

    pub fn thresholds(&self) -> (usize, usize) {
        if self.small_is_x {
            (self.t_small, self.t_big)
        } else {
            (self.t_big, self.t_small)
        }
    }
}
