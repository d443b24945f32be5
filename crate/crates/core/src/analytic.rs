//! Numerical checks of the real-variable inequalities behind the book bounds.
//!
//! The central function is
//!
//! ```text
//! F(x_1, .., x_k) = Π x_i + (1/k) Σ (1 - x_i)^k,    x ∈ [0,1]^k,
//! ```
//!
//! whose minimum over the cube is `2^{1-k}`, attained at the centre for
//! `k >= 3`. Along the curve `x_i = z^{1/k}` it reduces to
//! `ψ(z) = z + (1 - z^{1/k})^k`.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};

/// Largest grid `min_f_grid` and `delta0_estimate` will evaluate.
pub const MAX_GRID_POINTS: u64 = 100_000_000;

fn check_unit(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return domain("F needs at least one coordinate");
    }
    if let Some(v) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return domain(format!("coordinate {v} outside [0, 1]"));
    }
    Ok(())
}

#[inline]
fn f_unchecked(x: &[f64]) -> f64 {
    let k = x.len() as i32;
    let prod: f64 = x.iter().product();
    let sum: f64 = x.iter().map(|v| (1.0 - v).powi(k)).sum();
    prod + sum / k as f64
}

pub fn f_value(x: &[f64]) -> Result<f64> {
    check_unit(x)?;
    Ok(f_unchecked(x))
}

/// `∂F/∂x_i = Π_{j≠i} x_j - (1 - x_i)^{k-1}`
pub fn grad_f(x: &[f64]) -> Result<Vec<f64>> {
    check_unit(x)?;
    let k = x.len();
    Ok((0..k)
        .map(|i| {
            let others: f64 = x.iter().enumerate().filter(|p| p.0 != i).map(|p| p.1).product();
            others - (1.0 - x[i]).powi(k as i32 - 1)
        })
        .collect())
}

pub fn psi(z: f64, k: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) || k == 0 {
        return domain(format!("psi needs z in [0, 1] and k >= 1, got z = {z}, k = {k}"));
    }
    Ok(z + (1.0 - z.powf(1.0 / k as f64)).powi(k as i32))
}

/// `ψ'(z) = 1 - (1 - z^{1/k})^{k-1} z^{-(k-1)/k}` on `(0, 1]`.
pub fn psi_prime(z: f64, k: usize) -> Result<f64> {
    if !(z > 0.0 && z <= 1.0) || k == 0 {
        return domain(format!("psi' needs z in (0, 1] and k >= 1, got z = {z}"));
    }
    let kf = k as f64;
    Ok(1.0 - (1.0 - z.powf(1.0 / kf)).powi(k as i32 - 1) * z.powf(-(kf - 1.0) / kf))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridMin {
    pub k: usize,
    /// Grid resolution: coordinates are `i / m`, `0 <= i <= m`.
    pub m: usize,
    pub value: f64,
    pub argmin: Vec<f64>,
    /// Minimum over grid points with some coordinate equal to 0 or 1.
    pub boundary_value: f64,
}

fn grid_resolution(k: usize, step: f64) -> Result<usize> {
    if !(2..=6).contains(&k) {
        return domain(format!("grid search supports k in 2..=6, got {k}"));
    }
    if !(step > 0.0 && step <= 0.1) {
        return domain(format!("step {step} outside (0, 0.1]"));
    }
    let m = (1.0 / step).round() as usize;
    let points = (m as u64 + 1).checked_pow(k as u32).unwrap_or(u64::MAX);
    if points > MAX_GRID_POINTS {
        return Err(Error::CapExceeded {
            what: "analytic grid (points)",
            size: points.min(usize::MAX as u64) as usize,
            cap: MAX_GRID_POINTS as usize,
            hint: "use a coarser step",
        });
    }
    Ok(m)
}

fn decode(mut idx: u64, k: usize, m: usize, out: &mut [usize]) {
    for slot in out.iter_mut().take(k).rev() {
        *slot = (idx % (m as u64 + 1)) as usize;
        idx /= m as u64 + 1;
    }
}

/// Minimum of `F` over the grid points satisfying `keep`, with the
/// lowest linear index winning ties (first coordinate most significant).
fn grid_scan<P>(k: usize, m: usize, keep: P) -> Option<(f64, u64, f64)>
where
    P: Fn(&[usize]) -> bool + Sync,
{
    let total = (m as u64 + 1).pow(k as u32);
    let chunk = (m as u64 + 1).pow(k as u32 - 1);
    let better = |a: (f64, u64), b: (f64, u64)| b.0 < a.0 || (b.0 == a.0 && b.1 < a.1);
    let (best, bidx, bmin) = (0..total / chunk)
        .into_par_iter()
        .map(|block| {
            let mut idx = vec![0usize; k];
            let mut x = vec![0.0f64; k];
            let mut best = (f64::INFINITY, u64::MAX);
            let mut bmin = f64::INFINITY;
            for lin in block * chunk..(block + 1) * chunk {
                decode(lin, k, m, &mut idx);
                if !keep(&idx) {
                    continue;
                }
                for (xi, &ii) in x.iter_mut().zip(&idx) {
                    *xi = ii as f64 / m as f64;
                }
                let v = f_unchecked(&x);
                if better(best, (v, lin)) {
                    best = (v, lin);
                }
                if idx.iter().any(|&i| i == 0 || i == m) {
                    bmin = bmin.min(v);
                }
            }
            (best.0, best.1, bmin)
        })
        .reduce(
            || (f64::INFINITY, u64::MAX, f64::INFINITY),
            |a, b| {
                let bm = a.2.min(b.2);
                if better((a.0, a.1), (b.0, b.1)) {
                    (b.0, b.1, bm)
                } else {
                    (a.0, a.1, bm)
                }
            },
        );
    (bidx != u64::MAX).then_some((best, bidx, bmin))
}

/// Minimum of `F` over `{0, 1/m, .., 1}^k` with `m = round(1/step)`.
pub fn min_f_grid(k: usize, step: f64) -> Result<GridMin> {
    let m = grid_resolution(k, step)?;
    let (value, lin, boundary_value) = grid_scan(k, m, |_| true).expect("grid is nonempty");
    let mut idx = vec![0; k];
    decode(lin, k, m, &mut idx);
    Ok(GridMin {
        k,
        m,
        value,
        argmin: idx.iter().map(|&i| i as f64 / m as f64).collect(),
        boundary_value,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Delta0Estimate {
    pub k: usize,
    pub eps0: f64,
    pub m: usize,
    /// `min F - 2^{1-k}` over grid points with some `|x_j - 1/2| >= eps0`.
    pub value: f64,
    pub argmin: Vec<f64>,
}

/// Grid estimate of the stability gap: how far `F` stays above `2^{1-k}`
/// once some coordinate is at least `eps0` away from `1/2`. Positive for
/// `k >= 3`; zero for `k = 2`, where the minimum is attained along the whole
/// line `x_1 + x_2 = 1`. The gap is expected to scale like `eps0²`.
pub fn delta0_estimate(k: usize, eps0: f64, step: f64) -> Result<Delta0Estimate> {
    if !(eps0 > 0.0 && eps0 < 0.5) {
        return domain(format!("eps0 = {eps0} outside (0, 1/2)"));
    }
    let m = grid_resolution(k, step)?;
    let need = eps0 * m as f64 - 1e-9;
    let half = m as f64 / 2.0;
    let (value, lin, _) = grid_scan(k, m, |idx| idx.iter().any(|&i| (i as f64 - half).abs() >= need))
        .ok_or_else(|| Error::Domain("no grid point is eps0 away from the centre".into()))?;
    let mut idx = vec![0; k];
    decode(lin, k, m, &mut idx);
    Ok(Delta0Estimate {
        k,
        eps0,
        m,
        value: value - 2f64.powi(1 - k as i32),
        argmin: idx.iter().map(|&i| i as f64 / m as f64).collect(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalValue {
    /// `G` is `F` with the last coordinate fixed at 1, `H` with the last two.
    pub label: &'static str,
    pub k: usize,
    pub point: Vec<f64>,
    pub value: f64,
}

fn golden_section<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - r * (hi - lo);
    let mut b = lo + r * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa <= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - r * (hi - lo);
            fa = f(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + r * (hi - lo);
            fb = f(b);
        }
    }
    (lo + hi) / 2.0
}

/// Coordinate descent on `x -> F(x, 1, .., 1)` (with `fixed` trailing ones)
/// from `start`, one golden-section line search per coordinate per sweep,
/// until no coordinate moves by more than `1e-9`.
fn restricted_minimum(k: usize, fixed: usize, start: &[f64]) -> (Vec<f64>, f64) {
    let eval = |free: &[f64]| {
        let mut x = free.to_vec();
        x.extend(std::iter::repeat_n(1.0, fixed));
        f_unchecked(&x)
    };
    let mut x = start.to_vec();
    for _ in 0..10_000 {
        let mut moved = 0.0f64;
        for i in 0..x.len() {
            let mut trial = x.clone();
            let best = golden_section(
                |t| {
                    trial[i] = t;
                    eval(&trial)
                },
                0.0,
                1.0,
                1e-12,
            );
            moved = moved.max((best - x[i]).abs());
            x[i] = best;
        }
        if moved < 1e-9 {
            break;
        }
    }
    debug_assert_eq!(x.len() + fixed, k);
    let v = eval(&x);
    (x, v)
}

/// Local minima of `F` restricted to the faces where coordinates equal 1:
/// for `k = 3`, `G(x_1,x_2) = F(x_1,x_2,1)` near `((3-√5)/2, (3-√5)/2)`
/// (value ≈ 0.303); for `k = 4`, `G(x_1,x_2,x_3) = F(x_1,x_2,x_3,1)` near
/// `(0.43, 0.43, 0.43)` (≈ 0.159) and `H(x_1,x_2) = F(x_1,x_2,1,1)` near
/// `(0.32, 0.32)` (≈ 0.209).
pub fn boundary_critical_values(k: usize) -> Result<Vec<CriticalValue>> {
    let runs: &[(&'static str, usize, &[f64])] = match k {
        3 => &[("G", 1, &[0.4, 0.4])],
        4 => &[("G", 1, &[0.43, 0.43, 0.43]), ("H", 2, &[0.32, 0.32])],
        _ => return domain(format!("boundary critical values are tabulated for k = 3, 4, not {k}")),
    };
    Ok(runs
        .iter()
        .map(|&(label, fixed, start)| {
            let (point, value) = restricted_minimum(k, fixed, start);
            CriticalValue { label, k, point, value }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Phi {
    /// `φ(y) = y²`, `φ'' = 2`.
    Square,
    /// `φ(y) = (1 - e^y)^k`, convex on `(ln(1/k), 0)`.
    ExpPower(usize),
}

impl Phi {
    pub fn eval(&self, y: f64) -> f64 {
        match *self {
            Phi::Square => y * y,
            Phi::ExpPower(k) => (1.0 - y.exp()).powi(k as i32),
        }
    }

    /// `φ''(y)`; for the exponential family `k e^y (1-e^y)^{k-2} (k e^y - 1)`.
    pub fn second_derivative(&self, y: f64) -> f64 {
        match *self {
            Phi::Square => 2.0,
            Phi::ExpPower(k) => {
                let (kf, e) = (k as f64, y.exp());
                kf * e * (1.0 - e).powi(k as i32 - 2) * (kf * e - 1.0)
            }
        }
    }
}

fn curvature_grid_min(phi: Phi, y0: f64, y1: f64) -> f64 {
    const POINTS: usize = 10_000;
    (0..POINTS)
        .map(|i| phi.second_derivative(y0 + (y1 - y0) * i as f64 / (POINTS - 1) as f64))
        .fold(f64::INFINITY, f64::min)
}

/// A curvature bound usable on `[y0, y1]`: 0.99 times the minimum of `φ''`
/// over a 10⁴-point grid.
pub fn curvature_bound(phi: Phi, y0: f64, y1: f64) -> Result<f64> {
    validate_interval(phi, y0, y1)?;
    Ok(0.99 * curvature_grid_min(phi, y0, y1))
}

fn validate_interval(phi: Phi, y0: f64, y1: f64) -> Result<()> {
    if !(y0 <= y1) {
        return domain("empty interval");
    }
    if let Phi::ExpPower(k) = phi {
        if k < 2 {
            return domain("exp_power needs k >= 2");
        }
        let lo = (1.0 / k as f64).ln();
        if !(y0 > lo && y1 < 0.0) {
            return domain(format!("interval [{y0}, {y1}] not inside (ln(1/{k}), 0) = ({lo}, 0)"));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct HolderReport {
    /// `(1/k) Σ φ(y_i) - φ(μ)`
    pub lhs: f64,
    /// `m σ² / 2`
    pub rhs: f64,
    pub holds: bool,
}

/// Checks `(1/k) Σ φ(y_i) - φ(μ) >= m σ²/2` for a curvature bound `m` that
/// must be valid on the hull of the points.
pub fn holder_defect_check(phi: Phi, points: &[f64], m: f64) -> Result<HolderReport> {
    if points.is_empty() {
        return domain("no points");
    }
    if !(m > 0.0) {
        return domain("curvature bound must be positive");
    }
    let y0 = points.iter().copied().fold(f64::INFINITY, f64::min);
    let y1 = points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    validate_interval(phi, y0, y1)?;
    let grid_min = curvature_grid_min(phi, y0, y1);
    if m > grid_min {
        return domain(format!("m = {m} exceeds the curvature minimum {grid_min} on [{y0}, {y1}]"));
    }
    let k = points.len() as f64;
    let mu = points.iter().sum::<f64>() / k;
    let var = points.iter().map(|y| (y - mu).powi(2)).sum::<f64>() / k;
    let lhs = points.iter().map(|&y| phi.eval(y)).sum::<f64>() / k - phi.eval(mu);
    let rhs = m * var / 2.0;
    Ok(HolderReport {
        lhs,
        rhs,
        holds: lhs >= rhs - 1e-12 * lhs.abs().max(1.0),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct JensenReport {
    pub accepted: usize,
    pub rejected: usize,
    /// Smallest `(1/k) Σ (1-x_i)^k - (1 - z^{1/k})^k` over accepted samples.
    pub min_gap: f64,
    pub holds: bool,
}

/// Samples `x ∈ (1/k, 1)^k` with `Π x_i = z` (the first `k-1` coordinates
/// uniform on `(max(1/k, z), 1)`, since every coordinate exceeds `z`; the
/// last solved for, out-of-range solutions rejected) and checks
/// `(1/k) Σ (1-x_i)^k >= (1 - z^{1/k})^k` on each.
pub fn mult_jensen_check(k: usize, z: f64, samples: usize, seed: u64) -> Result<JensenReport> {
    if k < 2 {
        return domain("k must be at least 2");
    }
    let a = 1.0 / k as f64;
    if !(z > a.powi(k as i32) && z < 1.0) {
        return domain(format!("z = {z} outside (k^-k, 1)"));
    }
    let target = (1.0 - z.powf(a)).powi(k as i32);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let (mut accepted, mut rejected) = (0, 0);
    let mut min_gap = f64::INFINITY;
    let lo = a.max(z);
    let mut x = vec![0.0; k];
    while accepted < samples {
        for xi in x.iter_mut().take(k - 1) {
            *xi = rng.random_range(lo..1.0);
        }
        let last = z / x[..k - 1].iter().product::<f64>();
        if !(last > a && last < 1.0) {
            rejected += 1;
            // Give up rather than spin when the feasible region is tiny.
            if rejected > 1000 * samples.max(1) {
                break;
            }
            continue;
        }
        x[k - 1] = last;
        let lhs = x.iter().map(|v| (1.0 - v).powi(k as i32)).sum::<f64>() / k as f64;
        min_gap = min_gap.min(lhs - target);
        accepted += 1;
    }
    Ok(JensenReport {
        accepted,
        rejected,
        min_gap,
        holds: min_gap >= -1e-12,
    })
}
