//! Cut deviation and the moment statistics of extension counts.
//!
//! A coloring of `K_N` is θ-quasirandom when every pair of disjoint vertex
//! sets `X, Y` satisfies `|e_B(X,Y) - |X||Y|/2| <= θ N²`. The least such θ is
//! `theta_star`; it is color-symmetric since `e_R = |X||Y| - e_B`.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::books::{extension_histogram, goodman_triangles, ExtensionHistogram};
use crate::coloring::{Color, TwoColoring};
use crate::error::{domain, Error, Result};
use crate::vertex_set::VertexSet;

pub const DEFAULT_EXACT_LIMIT: usize = 15;
/// Exact scans keep `X` as a `u32` mask.
pub const MAX_EXACT_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub enum QuasiMode {
    Exact,
    Heuristic { iterations: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiReport {
    pub n: usize,
    pub theta_star: f64,
    /// `|e_B(X,Y) - |X||Y|/2|` at the witness.
    pub deviation: f64,
    pub witness_x: VertexSet,
    pub witness_y: VertexSet,
    pub mode: QuasiMode,
}

impl QuasiReport {
    fn new(n: usize, doubled: u64, x: VertexSet, y: VertexSet, mode: QuasiMode) -> Self {
        let deviation = doubled as f64 / 2.0;
        QuasiReport {
            n,
            theta_star: deviation / (n * n) as f64,
            deviation,
            witness_x: x,
            witness_y: y,
            mode,
        }
    }
}

/// `|e_B(X,Y) - |X||Y|/2|` for disjoint nonempty `X, Y`.
pub fn cut_deviation(c: &TwoColoring, xs: &VertexSet, ys: &VertexSet) -> Result<f64> {
    if !xs.is_disjoint(ys) {
        return domain("cut deviation needs disjoint sets");
    }
    let d = crate::coloring::density(c, xs, ys)?;
    Ok((d.blue_edges as f64 - d.pair_count as f64 / 2.0).abs())
}

/// Exact `theta_star` with the default size limit.
pub fn theta_exact(c: &TwoColoring) -> Result<QuasiReport> {
    theta_exact_with_limit(c, DEFAULT_EXACT_LIMIT)
}

/// Exact `theta_star` over all disjoint nonempty `X, Y`.
///
/// For a fixed `X` the deviation is linear in the indicator of `Y`: vertex
/// `y ∉ X` contributes `w_y = 2 e_B(y, X) - |X|` to twice the signed
/// deviation, so the best `Y` is either every `y` with `w_y > 0` or every `y`
/// with `w_y < 0`. Scanning all `2^n` choices of `X` is therefore exact. The
/// witness is the first maximiser in increasing mask order of `X`.
pub fn theta_exact_with_limit(c: &TwoColoring, limit: usize) -> Result<QuasiReport> {
    let n = c.n();
    let limit = limit.min(MAX_EXACT_LIMIT);
    if n > limit {
        return Err(Error::CapExceeded {
            what: "exact quasirandomness scan",
            size: n,
            cap: limit,
            hint: "use the heuristic scan instead",
        });
    }
    if n < 2 {
        return domain("quasirandomness needs n >= 2");
    }
    let blue: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| c.is_blue(u, v)).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let full = (1u32 << n) - 1;
    let best = (1..full)
        .into_par_iter()
        .map(|xm| {
            let size = xm.count_ones() as i64;
            let (mut pos, mut neg) = (0i64, 0i64);
            for (y, &row) in blue.iter().enumerate() {
                if xm >> y & 1 == 0 {
                    let w = 2 * (row & xm).count_ones() as i64 - size;
                    if w > 0 {
                        pos += w;
                    } else {
                        neg -= w;
                    }
                }
            }
            (pos.max(neg) as u64, xm)
        })
        .reduce(|| (0, u32::MAX), |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a });
    let (doubled, xm) = best;
    let size = xm.count_ones() as i64;
    let ws: Vec<(usize, i64)> = (0..n)
        .filter(|&y| xm >> y & 1 == 0)
        .map(|y| (y, 2 * (blue[y] & xm).count_ones() as i64 - size))
        .collect();
    let pos: i64 = ws.iter().filter(|p| p.1 > 0).map(|p| p.1).sum();
    let neg: i64 = ws.iter().filter(|p| p.1 < 0).map(|p| -p.1).sum();
    let ys: Vec<usize> = if pos == 0 && neg == 0 {
        vec![ws[0].0]
    } else if pos >= neg {
        ws.iter().filter(|p| p.1 > 0).map(|p| p.0).collect()
    } else {
        ws.iter().filter(|p| p.1 < 0).map(|p| p.0).collect()
    };
    let x = VertexSet::from_indices(n, (0..n).filter(|&v| xm >> v & 1 == 1))?;
    let y = VertexSet::from_indices(n, ys)?;
    Ok(QuasiReport::new(n, doubled, x, y, QuasiMode::Exact))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Out,
    X,
    Y,
}

struct LocalSearch<'a> {
    n: usize,
    sign: &'a [i8],
    side: Vec<Side>,
    gx: Vec<i64>,
    gy: Vec<i64>,
    nx: usize,
    ny: usize,
    d: i64,
}

impl<'a> LocalSearch<'a> {
    fn new(n: usize, sign: &'a [i8], side: Vec<Side>) -> Self {
        let mut s = LocalSearch {
            n,
            sign,
            side,
            gx: vec![0; n],
            gy: vec![0; n],
            nx: 0,
            ny: 0,
            d: 0,
        };
        for v in 0..n {
            match s.side[v] {
                Side::X => s.nx += 1,
                Side::Y => s.ny += 1,
                Side::Out => {}
            }
            for u in 0..n {
                let sv = sign[v * n + u] as i64;
                match s.side[u] {
                    Side::X => s.gx[v] += sv,
                    Side::Y => s.gy[v] += sv,
                    Side::Out => {}
                }
            }
        }
        s.d = (0..n).filter(|&v| s.side[v] == Side::X).map(|v| s.gy[v]).sum();
        s
    }

    fn delta(&self, v: usize, to: Side) -> i64 {
        let leave = match self.side[v] {
            Side::X => -self.gy[v],
            Side::Y => -self.gx[v],
            Side::Out => 0,
        };
        let join = match to {
            Side::X => self.gy[v],
            Side::Y => self.gx[v],
            Side::Out => 0,
        };
        leave + join
    }

    fn allowed(&self, v: usize, to: Side) -> bool {
        let from = self.side[v];
        from != to && !(from == Side::X && self.nx == 1) && !(from == Side::Y && self.ny == 1)
    }

    fn apply(&mut self, v: usize, to: Side) {
        self.d += self.delta(v, to);
        let from = self.side[v];
        for u in 0..self.n {
            let s = self.sign[u * self.n + v] as i64;
            match from {
                Side::X => self.gx[u] -= s,
                Side::Y => self.gy[u] -= s,
                Side::Out => {}
            }
            match to {
                Side::X => self.gx[u] += s,
                Side::Y => self.gy[u] += s,
                Side::Out => {}
            }
        }
        match from {
            Side::X => self.nx -= 1,
            Side::Y => self.ny -= 1,
            Side::Out => {}
        }
        match to {
            Side::X => self.nx += 1,
            Side::Y => self.ny += 1,
            Side::Out => {}
        }
        self.side[v] = to;
    }

    /// Steepest ascent on `|d|` until no single move improves it.
    fn climb(&mut self) {
        loop {
            let mut best: Option<(i64, usize, Side)> = None;
            for v in 0..self.n {
                for to in [Side::Out, Side::X, Side::Y] {
                    if !self.allowed(v, to) {
                        continue;
                    }
                    let val = (self.d + self.delta(v, to)).abs();
                    if val > self.d.abs() && best.is_none_or(|b| val > b.0) {
                        best = Some((val, v, to));
                    }
                }
            }
            match best {
                Some((_, v, to)) => self.apply(v, to),
                None => return,
            }
        }
    }
}

fn restart_rng(seed: u64, index: usize) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Lower bound on `theta_star` by steepest-ascent local search over
/// single-vertex moves between `X`, `Y` and neither, from `iterations`
/// random starting assignments. Deterministic per `seed`; restarts run in
/// parallel and the first best restart (lowest index) is reported.
pub fn theta_heuristic(c: &TwoColoring, iterations: usize, seed: u64) -> Result<QuasiReport> {
    let n = c.n();
    if n < 2 {
        return domain("quasirandomness needs n >= 2");
    }
    if iterations == 0 {
        return domain("at least one restart is required");
    }
    let mut sign = vec![0i8; n * n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                sign[u * n + v] = if c.is_blue(u, v) { 1 } else { -1 };
            }
        }
    }
    let (doubled, side) = (0..iterations)
        .into_par_iter()
        .map(|idx| {
            let mut rng = restart_rng(seed, idx);
            let mut side: Vec<Side> = (0..n)
                .map(|_| match rng.random_range(0..3) {
                    0 => Side::Out,
                    1 => Side::X,
                    _ => Side::Y,
                })
                .collect();
            if !side.contains(&Side::X) {
                side[0] = Side::X;
            }
            if !side.contains(&Side::Y) {
                let v = side.iter().position(|&s| s != Side::X).unwrap_or(n - 1);
                side[v] = Side::Y;
            }
            let mut ls = LocalSearch::new(n, &sign, side);
            ls.climb();
            (ls.d.unsigned_abs(), idx, ls.side)
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .map(|(d, _, s)| (d, s))
        .expect("iterations >= 1");
    let pick = |t: Side| VertexSet::from_indices(n, (0..n).filter(|&v| side[v] == t));
    Ok(QuasiReport::new(
        n,
        doubled,
        pick(Side::X)?,
        pick(Side::Y)?,
        QuasiMode::Heuristic { iterations, seed },
    ))
}

/// `E = Σ_Q (ext(Q) - 2^{-k} N)²` with its expansion in subgraph counts.
#[derive(Clone, Debug, PartialEq)]
pub struct EReport {
    pub k: usize,
    pub n: usize,
    pub e: f64,
    /// `2 M(K_{k+2}-e) + (1 - 2^{1-k} N)(k+1) M(K_{k+1}) + 2^{-2k} N² M(K_k)`
    pub decomposition: f64,
    /// Both sides scaled by `4^k` agree as integers.
    pub exact_match: bool,
    /// `|E - D| <= 1e-6 max(|E|, |D|, 1)`.
    pub holds: bool,
}

pub fn e_statistic(c: &TwoColoring, k: usize) -> Result<EReport> {
    if k < 2 {
        return domain("the E-statistic needs k >= 2");
    }
    Ok(e_statistic_from(&extension_histogram(c, k)?))
}

/// The E-statistic of an existing histogram; the decomposition uses the
/// histogram's independently counted `M(K_{k+1})` and `M(K_{k+2} - e)`.
pub fn e_statistic_from(h: &ExtensionHistogram) -> EReport {
    let k = h.k as u32;
    let n = h.n as i128;
    let p = 1i128 << k;
    let scaled_e: i128 = h
        .per_clique
        .iter()
        .map(|(_, e)| {
            let d = p * *e as i128 - n;
            d * d
        })
        .sum();
    let t = &h.totals;
    let mk = t.mono_k() as i128;
    let scaled_d = p * p * 2 * t.near_cliques as i128
        + (p * p - 2 * p * n) * (h.k as i128 + 1) * t.mono_k1 as i128
        + n * n * mk;
    let q = (p * p) as f64;
    let e = scaled_e as f64 / q;
    let nf = h.n as f64;
    let decomposition = 2.0 * t.near_cliques as f64
        + (1.0 - 2f64.powi(1 - k as i32) * nf) * (h.k as f64 + 1.0) * t.mono_k1 as f64
        + 2f64.powi(-2 * k as i32) * nf * nf * mk as f64;
    EReport {
        k: h.k,
        n: h.n,
        e,
        decomposition,
        exact_match: scaled_e == scaled_d,
        holds: (e - decomposition).abs() <= 1e-6 * e.abs().max(decomposition.abs()).max(1.0),
    }
}

/// `S = Σ_{red uv} (codeg_R(u,v) - (N-2)/4)_+ + Σ_{blue uv} (codeg_B(u,v) - (N-2)/4)_+`
/// together with the inequality `S/3 >= M - C(N,3)/4`, `M` the number of
/// monochromatic triangles.
#[derive(Clone, Debug, PartialEq)]
pub struct SReport {
    pub s: f64,
    pub mono_triangles: u64,
    /// `M - C(N,3)/4`
    pub rhs: f64,
    /// `4S >= 12M - 3C(N,3)`, checked in integers.
    pub holds: bool,
}

pub fn s_statistic(c: &TwoColoring) -> Result<SReport> {
    let n = c.n();
    if n < 3 {
        return domain("the S-statistic needs n >= 3");
    }
    let threshold4 = n as i64 - 2;
    let s4: i64 = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut t = 0i64;
            for v in u + 1..n {
                let col = c.color_unchecked(u, v);
                let cod = crate::bits::and_count(c.row(u, col), c.row(v, col)) as i64;
                t += (4 * cod - threshold4).max(0);
            }
            t
        })
        .sum();
    let m = goodman_triangles(c)?.count;
    let c3 = (n * (n - 1) * (n - 2) / 6) as i64;
    Ok(SReport {
        s: s4 as f64 / 4.0,
        mono_triangles: m,
        rhs: m as f64 - c3 as f64 / 4.0,
        holds: s4 >= 12 * m as i64 - 3 * c3,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodegreeReport {
    /// `Σ_{u<v} |codeg_R(u,v) - (N-3)/4|`
    pub codeg_dev: f64,
    /// `Σ_v |deg_R(v) - (N-1)/2|`
    pub deg_dev: f64,
}

pub fn codegree_deviation(c: &TwoColoring) -> Result<CodegreeReport> {
    let n = c.n();
    if n < 3 {
        return domain("codegree deviation needs n >= 3");
    }
    let center4 = n as i64 - 3;
    let codeg4: i64 = (0..n)
        .into_par_iter()
        .map(|u| {
            (u + 1..n)
                .map(|v| {
                    let cod = crate::bits::and_count(c.row(u, Color::Red), c.row(v, Color::Red)) as i64;
                    (4 * cod - center4).abs()
                })
                .sum::<i64>()
        })
        .sum();
    let deg2: i64 = (0..n)
        .map(|v| (2 * c.degree(v, Color::Red) as i64 - (n as i64 - 1)).abs())
        .sum();
    Ok(CodegreeReport {
        codeg_dev: codeg4 as f64 / 4.0,
        deg_dev: deg2 as f64 / 2.0,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentStats {
    pub e: f64,
    pub s: f64,
    pub codeg_dev: f64,
    pub deg_dev: f64,
}

/// All four moment statistics; `S` and the deviations are the `k = 2`
/// quantities regardless of `k`.
pub fn moment_stats(c: &TwoColoring, k: usize) -> Result<MomentStats> {
    let e = e_statistic(c, k)?.e;
    let s = s_statistic(c)?.s;
    let cd = codegree_deviation(c)?;
    Ok(MomentStats {
        e,
        s,
        codeg_dev: cd.codeg_dev,
        deg_dev: cd.deg_dev,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevCheck {
    pub c: f64,
    /// `#{Q : |ext(Q) - 2^{-k} N| >= cN}`
    pub far: u64,
    /// `E / (cN)²`
    pub bound: f64,
    pub holds: bool,
}

pub fn chebyshev_check(h: &ExtensionHistogram, e: f64, c: f64) -> Result<ChebyshevCheck> {
    if !(c > 0.0) {
        return domain("Chebyshev radius must be positive");
    }
    let n = h.n as f64;
    let center = n / 2f64.powi(h.k as i32);
    let far = h
        .per_clique
        .iter()
        .filter(|(_, x)| (*x as f64 - center).abs() >= c * n)
        .count() as u64;
    let bound = e / (c * n).powi(2);
    Ok(ChebyshevCheck {
        c,
        far,
        bound,
        holds: far as f64 <= bound * (1.0 + 1e-12) + 1e-12,
    })
}
