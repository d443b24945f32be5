//! Monochromatic cliques, book extensions and the counting identities that
//! relate them.
//!
//! A monochromatic `K_k` spine `Q` of color `χ` is extended by every vertex
//! `u ∉ Q` joined to all of `Q` in `χ`; `ext(Q)` is the number of such
//! vertices, so `Q` spans a monochromatic book `B_ext(Q)^(k)`. Extensions are
//! only ever counted in the spine's own color.
//!
//! For `k = 1` every single vertex is both a red and a blue `K_1`, and its
//! extensions are its red and blue neighbours respectively.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bits;
use crate::coloring::{Color, TwoColoring};
use crate::error::{domain, parse_err, Result};
use crate::vertex_set::VertexSet;

/// A sorted vertex set spanning a `K_k` of one color.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoClique {
    pub vertices: Vec<usize>,
    pub color: Color,
}

impl MonoClique {
    /// Checks that `vertices` are distinct, in range and pairwise `color`.
    pub fn new(c: &TwoColoring, mut vertices: Vec<usize>, color: Color) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return domain("a clique needs at least one vertex");
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return domain("repeated vertex in clique");
        }
        if let Some(&v) = vertices.last().filter(|&&v| v >= c.n()) {
            return domain(format!("vertex {v} out of range for n = {}", c.n()));
        }
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                if c.color_unchecked(a, b) != color {
                    return domain(format!("edge {{{a},{b}}} is not {color}"));
                }
            }
        }
        Ok(MonoClique { vertices, color })
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }
}

/// Depth-first enumeration of `color` cliques of size `k` whose vertices all
/// lie in `within`. The visitor receives the clique (ascending) and the
/// common `color` neighbourhood of the clique over the whole vertex set.
fn enumerate<F>(c: &TwoColoring, k: usize, color: Color, within: &[u64], first: Option<usize>, visit: &mut F)
where
    F: FnMut(&[usize], &[u64]),
{
    let w = c.words();
    // Level d holds the common neighbourhood of the first d clique vertices
    // (all of V at level 0) and the candidates above the last vertex.
    let mut common = vec![0u64; (k + 1) * w];
    let mut cand = vec![0u64; (k + 1) * w];
    common[..w].copy_from_slice(&bits::full(c.n()));
    cand[..w].copy_from_slice(within);
    let mut clique = Vec::with_capacity(k);

    fn rec<F: FnMut(&[usize], &[u64])>(
        c: &TwoColoring,
        k: usize,
        color: Color,
        w: usize,
        depth: usize,
        common: &mut [u64],
        cand: &mut [u64],
        clique: &mut Vec<usize>,
        only: Option<usize>,
        visit: &mut F,
    ) {
        if depth == k {
            visit(clique, &common[depth * w..(depth + 1) * w]);
            return;
        }
        // Not enough candidates left to finish the clique.
        if bits::count(&cand[depth * w..(depth + 1) * w]) < k - depth {
            return;
        }
        let level: Vec<usize> = match only {
            Some(v) if depth == 0 => {
                if bits::test(&cand[..w], v) {
                    vec![v]
                } else {
                    vec![]
                }
            }
            _ => bits::ones(&cand[depth * w..(depth + 1) * w]).collect(),
        };
        for v in level {
            let row = c.row(v, color);
            let (lo, hi) = common.split_at_mut((depth + 1) * w);
            let next = &mut hi[..w];
            next.copy_from_slice(&lo[depth * w..]);
            bits::and_assign(next, row);
            let (lo, hi) = cand.split_at_mut((depth + 1) * w);
            let next = &mut hi[..w];
            next.copy_from_slice(&lo[depth * w..]);
            bits::and_assign(next, row);
            bits::clear_through(next, v);
            clique.push(v);
            rec(c, k, color, w, depth + 1, common, cand, clique, None, visit);
            clique.pop();
        }
    }

    rec(c, k, color, w, 0, &mut common, &mut cand, &mut clique, first, visit);
}

fn check_k(c: &TwoColoring, k: usize) -> Result<()> {
    if k == 0 || k > c.n() {
        return domain(format!("clique size k = {k} outside 1..={}", c.n()));
    }
    Ok(())
}

/// Calls `visit(clique, ext)` for every `color` clique of size `k`, in
/// lexicographic order of the sorted vertex lists.
pub fn for_each_mono_clique<F>(c: &TwoColoring, k: usize, color: Color, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize], u64),
{
    check_k(c, k)?;
    let all = bits::full(c.n());
    enumerate(c, k, color, &all, None, &mut |q, common| {
        visit(q, bits::count(common) as u64)
    });
    Ok(())
}

fn count_in(c: &TwoColoring, k: usize, color: Color, within: &[u64]) -> u64 {
    if k == 0 {
        return 1;
    }
    let mut total = 0u64;
    enumerate(c, k, color, within, None, &mut |_, _| total += 1);
    total
}

fn count_parallel(c: &TwoColoring, k: usize, color: Color) -> u64 {
    let all = bits::full(c.n());
    (0..c.n())
        .into_par_iter()
        .map(|v| {
            let mut t = 0u64;
            enumerate(c, k, color, &all, Some(v), &mut |_, _| t += 1);
            t
        })
        .sum()
}

/// Number of `color` cliques of size `k` inside `s`; one (the empty clique)
/// when `k = 0`.
pub fn count_cliques_within(c: &TwoColoring, k: usize, color: Color, s: &VertexSet) -> u64 {
    count_in(c, k, color, s.words())
}

/// Lexicographically first `color` clique of size `k` inside `s`.
pub fn first_clique_within(c: &TwoColoring, k: usize, color: Color, s: &VertexSet) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let mut first = None;
    enumerate(c, k, color, s.words(), None, &mut |q, _| {
        if first.is_none() {
            first = Some(q.to_vec());
        }
    });
    first
}

/// Calls `visit(ext)` for every `color` clique of size `k` that contains
/// `u` but not `skip`.
pub(crate) fn for_each_clique_through<F>(c: &TwoColoring, k: usize, color: Color, u: usize, skip: Option<usize>, mut visit: F)
where
    F: FnMut(u64),
{
    let row = c.row(u, color);
    let mut within = row.to_vec();
    if let Some(s) = skip {
        bits::clear(&mut within, s);
    }
    enumerate(c, k - 1, color, &within, None, &mut |_, common| {
        visit(bits::and_count(common, row) as u64)
    });
}

/// Numbers of red and blue `K_k`.
pub fn count_mono_cliques(c: &TwoColoring, k: usize) -> Result<(u64, u64)> {
    check_k(c, k)?;
    Ok((count_parallel(c, k, Color::Red), count_parallel(c, k, Color::Blue)))
}

/// Red plus blue `K_k`; zero when `k > n`.
pub fn total_mono_cliques(c: &TwoColoring, k: usize) -> Result<u64> {
    if k == 0 {
        return domain("clique size k must be at least 1");
    }
    if k > c.n() {
        return Ok(0);
    }
    let (r, b) = count_mono_cliques(c, k)?;
    Ok(r + b)
}

/// Number of monochromatic copies of `K_{k+2}` minus an edge, counted as
/// pairs (vertex set, missing pair) in which every other pair has one common
/// color. Computed pair by pair: for each `{a, b}` and color `χ`, the copies
/// missing `{a, b}` are the `χ`-cliques `K_k` inside the common
/// `χ`-neighbourhood of `a` and `b`.
pub fn count_mono_near_cliques(c: &TwoColoring, k: usize) -> Result<u64> {
    if k == 0 {
        return domain("clique size k must be at least 1");
    }
    let n = c.n();
    let w = c.words();
    Ok((0..n)
        .into_par_iter()
        .map(|a| {
            let mut buf = vec![0u64; w];
            let mut t = 0u64;
            for b in a + 1..n {
                for color in Color::BOTH {
                    buf.copy_from_slice(c.row(a, color));
                    bits::and_assign(&mut buf, c.row(b, color));
                    if bits::count(&buf) >= k {
                        t += count_in(c, k, color, &buf);
                    }
                }
            }
            t
        })
        .sum())
}

/// Extensions of `q`: vertices outside `q` joined to all of it in its color.
pub fn extension_count(c: &TwoColoring, q: &MonoClique) -> Result<u64> {
    let checked = MonoClique::new(c, q.vertices.clone(), q.color)?;
    let mut acc = bits::full(c.n());
    for &v in &checked.vertices {
        bits::and_assign(&mut acc, c.row(v, q.color));
    }
    Ok(bits::count(&acc) as u64)
}

/// Aggregates of an extension histogram. `mono_k1` and `near_cliques` are
/// counted independently of the per-clique extensions, so the identities
/// `sum_ext = (k+1) mono_k1` and `sum_ext_choose_2 = near_cliques` are real
/// checks rather than restatements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistogramTotals {
    pub mono_k_red: u64,
    pub mono_k_blue: u64,
    pub mono_k1: u64,
    pub near_cliques: u64,
    pub sum_ext: u64,
    pub sum_ext_choose_2: u64,
    pub max_ext: u64,
}

impl HistogramTotals {
    pub fn mono_k(&self) -> u64 {
        self.mono_k_red + self.mono_k_blue
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Per-clique extension counts for every monochromatic `K_k`.
#[derive(Clone, Debug)]
pub struct ExtensionHistogram {
    pub n: usize,
    pub k: usize,
    pub per_clique: Vec<(MonoClique, u64)>,
    pub counts_by_value: BTreeMap<u64, u64>,
    pub totals: HistogramTotals,
}

/// Builds the full histogram. For `k > n` there are no cliques and every
/// total is zero.
pub fn extension_histogram(c: &TwoColoring, k: usize) -> Result<ExtensionHistogram> {
    if k == 0 {
        return domain("clique size k must be at least 1");
    }
    let mut per_clique = Vec::new();
    let (mut red, mut blue) = (0u64, 0u64);
    if k <= c.n() {
        for color in Color::BOTH {
            for_each_mono_clique(c, k, color, |q, ext| {
                per_clique.push((MonoClique { vertices: q.to_vec(), color }, ext));
                match color {
                    Color::Red => red += 1,
                    Color::Blue => blue += 1,
                }
            })?;
        }
    }
    let mut counts_by_value = BTreeMap::new();
    let (mut sum_ext, mut sum_c2, mut max_ext) = (0u64, 0u64, 0u64);
    for (_, e) in &per_clique {
        *counts_by_value.entry(*e).or_insert(0) += 1;
        sum_ext += e;
        sum_c2 += e * e.saturating_sub(1) / 2;
        max_ext = max_ext.max(*e);
    }
    let totals = HistogramTotals {
        mono_k_red: red,
        mono_k_blue: blue,
        mono_k1: total_mono_cliques(c, k + 1)?,
        near_cliques: count_mono_near_cliques(c, k)?,
        sum_ext,
        sum_ext_choose_2: sum_c2,
        max_ext,
    };
    Ok(ExtensionHistogram {
        n: c.n(),
        k,
        per_clique,
        counts_by_value,
        totals,
    })
}

impl ExtensionHistogram {
    /// `Σ_Q ext(Q) = (k+1) M(K_{k+1})`: each monochromatic `K_{k+1}` is seen
    /// once from each of its `k+1` spines.
    pub fn identity_i1(&self) -> IdentityCheck {
        let rhs = (self.k as u64 + 1) * self.totals.mono_k1;
        IdentityCheck {
            name: "I1 sum_ext = (k+1) M(K_{k+1})",
            lhs: self.totals.sum_ext as f64,
            rhs: rhs as f64,
            holds: self.totals.sum_ext == rhs,
        }
    }

    /// `Σ_Q C(ext(Q), 2) = M(K_{k+2} - e)`.
    pub fn identity_i2(&self) -> IdentityCheck {
        IdentityCheck {
            name: "I2 sum C(ext,2) = M(K_{k+2}-e)",
            lhs: self.totals.sum_ext_choose_2 as f64,
            rhs: self.totals.near_cliques as f64,
            holds: self.totals.sum_ext_choose_2 == self.totals.near_cliques,
        }
    }

    pub fn summary(&self) -> HistogramSummary {
        HistogramSummary {
            n: self.n,
            k: self.k,
            mono_k_red: self.totals.mono_k_red,
            mono_k_blue: self.totals.mono_k_blue,
            max_book: self.totals.max_ext,
            counts: self.counts_by_value.clone(),
        }
    }
}

/// Largest `n` such that `c` contains a monochromatic `B_n^(k)`; zero when
/// there is no monochromatic `K_k` at all.
pub fn max_book(c: &TwoColoring, k: usize) -> Result<u64> {
    check_k(c, k)?;
    let all = bits::full(c.n());
    Ok(Color::BOTH
        .par_iter()
        .flat_map(|&color| (0..c.n()).into_par_iter().map(move |v| (color, v)))
        .map(|(color, v)| {
            let mut best = 0u64;
            enumerate(c, k, color, &all, Some(v), &mut |_, common| {
                best = best.max(bits::count(common) as u64)
            });
            best
        })
        .max()
        .unwrap_or(0))
}

/// Goodman's count of monochromatic triangles from the degree sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodmanReport {
    pub count: u64,
    /// `M - C(N,3)/4`
    pub centered: f64,
    /// `-C(N,2)/4 + (1/2) Σ_v (deg_R(v) - (N-1)/2)^2`
    pub centered_formula: f64,
    /// The centered identity holds exactly (checked in integers scaled by 8).
    pub centered_holds: bool,
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn choose3(x: u64) -> u64 {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

/// `M = (Σ_v [C(deg_B(v),2) + C(deg_R(v),2)] - C(N,3)) / 2`.
pub fn goodman_triangles(c: &TwoColoring) -> Result<GoodmanReport> {
    let n = c.n() as u64;
    if n < 3 {
        return domain("Goodman's formula needs n >= 3");
    }
    let mut cherries = 0u64;
    let mut sq = 0i128;
    for v in 0..c.n() {
        let r = c.degree(v, Color::Red) as u64;
        let b = c.degree(v, Color::Blue) as u64;
        cherries += choose2(r) + choose2(b);
        let d = 2 * r as i128 - (n as i128 - 1);
        sq += d * d;
    }
    let count = (cherries - choose3(n)) / 2;
    let lhs8 = 8 * count as i128 - 2 * choose3(n) as i128;
    let rhs8 = -2 * choose2(n) as i128 + sq;
    Ok(GoodmanReport {
        count,
        centered: count as f64 - choose3(n) as f64 / 4.0,
        centered_formula: -(choose2(n) as f64) / 4.0 + sq as f64 / 8.0,
        centered_holds: lhs8 == rhs8,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum MarkovOutcome {
    /// The selected cliques average fewer than `xi N` extensions.
    Inapplicable { mean_ext: f64, threshold: f64 },
    /// `qualifying = #{Q : ext(Q) >= nu N}` against `required = (xi - nu) m`.
    Checked { cliques: u64, qualifying: u64, required: f64, holds: bool },
}

/// If the selected cliques have mean extension at least `xi N`, at least a
/// `(xi - nu)` fraction of them have `nu N` extensions or more.
///
/// `subset` selects cliques by index into `h.per_clique`; `None` uses all.
pub fn markov_extension_check(
    h: &ExtensionHistogram,
    xi: f64,
    nu: f64,
    subset: Option<&[usize]>,
) -> Result<MarkovOutcome> {
    if !(0.0 < nu && nu < xi && xi < 1.0) {
        return domain(format!("need 0 < nu < xi < 1, got nu = {nu}, xi = {xi}"));
    }
    let exts: Vec<u64> = match subset {
        Some(idx) => idx
            .iter()
            .map(|&i| {
                h.per_clique
                    .get(i)
                    .map(|p| p.1)
                    .ok_or_else(|| crate::Error::Domain(format!("clique index {i} out of range")))
            })
            .collect::<Result<_>>()?,
        None => h.per_clique.iter().map(|p| p.1).collect(),
    };
    let n = h.n as f64;
    let m = exts.len() as u64;
    let mean = if m == 0 {
        0.0
    } else {
        exts.iter().sum::<u64>() as f64 / m as f64
    };
    let threshold = xi * n;
    if m == 0 || mean < threshold - 1e-12 * threshold.max(1.0) {
        return Ok(MarkovOutcome::Inapplicable { mean_ext: mean, threshold });
    }
    let qualifying = exts.iter().filter(|&&e| e as f64 >= nu * n - 1e-12).count() as u64;
    let required = (xi - nu) * m as f64;
    Ok(MarkovOutcome::Checked {
        cliques: m,
        qualifying,
        required,
        holds: qualifying as f64 >= required - 1e-9 * m as f64,
    })
}

/// The plain-text histogram report: header fields plus `ext count` rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistogramSummary {
    pub n: usize,
    pub k: usize,
    pub mono_k_red: u64,
    pub mono_k_blue: u64,
    pub max_book: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl HistogramSummary {
    /// Renders the report. `config` lines are echoed first as `# ` comments.
    pub fn to_text(&self, config: &[String], tsv: bool) -> String {
        let sep = if tsv { '\t' } else { ' ' };
        let mut out = String::new();
        for line in config {
            let _ = writeln!(out, "# {line}");
        }
        let _ = writeln!(out, "n={}", self.n);
        let _ = writeln!(out, "k={}", self.k);
        let _ = writeln!(out, "mono_k_red={}", self.mono_k_red);
        let _ = writeln!(out, "mono_k_blue={}", self.mono_k_blue);
        let _ = writeln!(out, "max_book={}", self.max_book);
        let _ = writeln!(out, "ext_value{sep}count");
        for (e, m) in &self.counts {
            let _ = writeln!(out, "{e}{sep}{m}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut fields: BTreeMap<&str, u64> = BTreeMap::new();
        let mut counts = BTreeMap::new();
        let mut in_table = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let loc = || format!("line {}", i + 1);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if !in_table {
                if line.split_whitespace().eq(["ext_value", "count"]) {
                    in_table = true;
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| parse_err(loc(), "expected key=value"))?;
                let value = value
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(loc(), format!("bad integer for {key}")))?;
                fields.insert(key.trim(), value);
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(e), Some(m), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(parse_err(loc(), "expected `ext count`"));
            };
            let e: u64 = e.parse().map_err(|_| parse_err(loc(), "bad ext value"))?;
            let m: u64 = m.parse().map_err(|_| parse_err(loc(), "bad count"))?;
            if counts.insert(e, m).is_some() {
                return Err(parse_err(loc(), format!("duplicate ext value {e}")));
            }
        }
        if !in_table {
            return Err(parse_err("end of input", "missing `ext_value count` table"));
        }
        let get = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| parse_err("header", format!("missing field {key}")))
        };
        Ok(HistogramSummary {
            n: get("n")? as usize,
            k: get("k")? as usize,
            mono_k_red: get("mono_k_red")?,
            mono_k_blue: get("mono_k_blue")?,
            max_book: get("max_book")?,
            counts,
        })
    }
}
