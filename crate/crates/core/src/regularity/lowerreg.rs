//! The red-book / lower-regular-pair dichotomy, run as an explicit
//! shrinking procedure with every step's bookkeeping checked.
//!
//! Starting from `A_0 = A`, `B_0 = B`: while `(A_l, B_l)` is not
//! lower-(λ,γ)-regular in blue, take the first violating `(X, Y)` in scan
//! order, let `Y'` be the `⌈γ|B_l|⌉` vertices of `Y` with fewest blue edges
//! to `X` (ties to the lower index), set `A_{l+1}` to the `x ∈ X` with
//! `e_B(x, Y') < 2λ|Y'|` and `B_{l+1} = B_l \ Y'`. After
//! `l* = ⌈-ln(1-β')/γ⌉` steps a red `K_k` in `A_{l*}` has at least `β|B|`
//! red extensions in `B`.

use super::scan::threshold;
use super::{check_eps_regular, check_regularity, RegularityKind, DEFAULT_SUBSET_CAP};
use crate::bits;
use crate::books::first_clique_within;
use crate::coloring::{density, Color, TwoColoring};
use crate::error::{domain, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerRegParams {
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub eta: f64,
    pub k: usize,
}

impl LowerRegParams {
    /// `β' = β / (1 - 2kλ)`
    pub fn beta_prime(&self) -> f64 {
        self.beta / (1.0 - 2.0 * self.k as f64 * self.lambda)
    }

    /// `ρ = (γ/2)^{1 - ln(1-β')/γ}`
    pub fn rho(&self) -> f64 {
        (self.gamma / 2.0).powf(1.0 - (1.0 - self.beta_prime()).ln() / self.gamma)
    }

    /// `l* = ⌈-ln(1-β')/γ⌉`
    pub fn ell_star(&self) -> usize {
        (-(1.0 - self.beta_prime()).ln() / self.gamma - 1e-12).ceil().max(0.0) as usize
    }

    fn check(&self) -> std::result::Result<(), String> {
        let k = self.k as f64;
        if self.k < 2 {
            return Err("k must be at least 2".into());
        }
        if !(self.beta > 0.0 && self.beta <= 0.5) {
            return Err(format!("beta = {} outside (0, 1/2]", self.beta));
        }
        if !(self.gamma > 0.0 && self.gamma < 0.2) {
            return Err(format!("gamma = {} outside (0, 1/5)", self.gamma));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0 / (12.0 * k)) {
            return Err(format!("lambda = {} outside (0, 1/(12k))", self.lambda));
        }
        let eta_max = self.rho() / 2f64.powi(2 * (self.k * self.k) as i32);
        if !(self.eta > 0.0 && self.eta < eta_max) {
            return Err(format!("eta = {} outside (0, rho/2^(2k^2) = {eta_max:e})", self.eta));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    pub step: usize,
    pub a_size: usize,
    pub b_size: usize,
    /// `|A_l| >= (γ/2)^l |A|`
    pub a_size_ok: bool,
    /// `(1-γ)^l |B| - l <= |B_l| <= (1-γ)^l |B|`
    pub b_size_ok: bool,
    /// Every vertex of `A_l` has at most `2λ|B \ B_l|` blue neighbours in
    /// `B \ B_l`.
    pub degree_ok: bool,
    /// The irregular pair `(X, Y')` used to shrink, with `d_B(X, Y')`.
    pub step_witness: Option<(VertexSet, VertexSet, f64)>,
}

impl IterationRecord {
    pub fn properties_hold(&self) -> bool {
        self.a_size_ok && self.b_size_ok && self.degree_ok
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LowerRegResult {
    /// A red `K_k` in `A` and its red extensions in `B`.
    RedBook { clique: Vec<usize>, pages: VertexSet },
    /// `(A', B')` lower-(λ,γ)-regular in blue.
    LowerRegularPair { a: VertexSet, b: VertexSet },
    Inapplicable(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerRegOutcome {
    pub params: LowerRegParams,
    pub beta_prime: f64,
    pub rho: f64,
    pub ell_star: usize,
    pub iterations: Vec<IterationRecord>,
    pub result: LowerRegResult,
    /// The returned branch meets its size bounds and every iteration record
    /// satisfied its properties.
    pub postcondition_holds: bool,
}

/// Runs the procedure on `(A, B)`; unmet preconditions yield
/// [`LowerRegResult::Inapplicable`] naming the failed condition.
pub fn lower_regularize(c: &TwoColoring, a: &VertexSet, b: &VertexSet, params: LowerRegParams) -> Result<LowerRegOutcome> {
    let mut out = LowerRegOutcome {
        params,
        beta_prime: params.beta_prime(),
        rho: params.rho(),
        ell_star: 0,
        iterations: Vec::new(),
        result: LowerRegResult::Inapplicable(String::new()),
        postcondition_holds: false,
    };
    let inapplicable = |mut out: LowerRegOutcome, why: String| {
        out.result = LowerRegResult::Inapplicable(why);
        Ok(out)
    };
    if a.universe() != c.n() || b.universe() != c.n() {
        return domain("vertex set universe does not match the coloring");
    }
    if let Err(why) = params.check() {
        return inapplicable(out, why);
    }
    out.ell_star = params.ell_star();
    if a.len() < 2 || b.is_empty() {
        return inapplicable(out, "A needs at least two vertices and B at least one".into());
    }
    if !a.is_disjoint(b) {
        return inapplicable(out, "A and B overlap".into());
    }
    let gamma = params.gamma;
    let lambda = params.lambda;
    if (b.len() as f64) < gamma.powi(-3) - 1e-9 {
        return inapplicable(out, format!("|B| = {} is below gamma^-3 = {:.1}", b.len(), gamma.powi(-3)));
    }
    let d_red = density(c, a, a)?.d_red;
    if d_red < 1.0 / 3.0 {
        return inapplicable(out, format!("red density of A is {d_red:.4} < 1/3"));
    }
    if !check_eps_regular(c, a, a, params.eta, Color::Red)?.is_regular() {
        return inapplicable(out, format!("A is not {}-regular", params.eta));
    }

    let (na, nb) = (a.len() as f64, b.len() as f64);
    let mut a_l = a.clone();
    let mut b_l = b.clone();
    let mut all_ok = true;
    for step in 0..=out.ell_star {
        let l = step as i32;
        let outside = b.difference(&b_l);
        let degree_ok = a_l.iter().all(|v| {
            let blue = bits::and_count(c.row(v, Color::Blue), outside.words()) as f64;
            blue <= 2.0 * lambda * outside.len() as f64 + 1e-9
        });
        let upper = (1.0 - gamma).powi(l) * nb;
        let mut record = IterationRecord {
            step,
            a_size: a_l.len(),
            b_size: b_l.len(),
            a_size_ok: a_l.len() as f64 >= (gamma / 2.0).powi(l) * na - 1e-9,
            b_size_ok: (b_l.len() as f64) <= upper + 1e-9 && b_l.len() as f64 >= upper - step as f64 - 1e-9,
            degree_ok,
            step_witness: None,
        };
        all_ok &= record.properties_hold();

        if step == out.ell_star {
            out.iterations.push(record);
            let Some(clique) = first_clique_within(c, params.k, Color::Red, &a_l) else {
                return inapplicable(out, format!("degenerate: A_{step} spans no red K_{}", params.k));
            };
            let mut pages = b.words().to_vec();
            for &v in &clique {
                bits::and_assign(&mut pages, c.row(v, Color::Red));
            }
            let pages = VertexSet::from_words(c.n(), pages);
            out.postcondition_holds = all_ok && pages.len() as f64 >= params.beta * nb - 1e-9;
            out.result = LowerRegResult::RedBook { clique, pages };
            return Ok(out);
        }

        let kind = RegularityKind::Lower { lambda, gamma };
        let w = check_regularity(c, &a_l, &b_l, kind, Color::Blue, DEFAULT_SUBSET_CAP)?;
        let Some(v) = w.violating_pair else {
            out.iterations.push(record);
            out.postcondition_holds = all_ok
                && a_l.len() as f64 >= out.rho * na - 1e-9
                && b_l.len() as f64 >= (1.0 - gamma) * (1.0 - out.beta_prime).powf(1.0 + gamma) * nb - 1e-9;
            out.result = LowerRegResult::LowerRegularPair { a: a_l, b: b_l };
            return Ok(out);
        };
        let x = v.x;
        let t = threshold(gamma, b_l.len());
        let mut ys: Vec<(usize, usize)> = v
            .y
            .iter()
            .map(|y| (bits::and_count(c.row(y, Color::Blue), x.words()), y))
            .collect();
        ys.sort_unstable();
        let y_prime = VertexSet::from_indices(c.n(), ys[..t].iter().map(|p| p.1))?;
        let d_xy = density(c, &x, &y_prime)?.d_blue;
        all_ok &= d_xy < lambda;
        let cut = 2.0 * lambda * y_prime.len() as f64;
        let x1 = VertexSet::from_indices(
            c.n(),
            x.iter()
                .filter(|&v| (bits::and_count(c.row(v, Color::Blue), y_prime.words()) as f64) < cut),
        )?;
        record.step_witness = Some((x, y_prime.clone(), d_xy));
        out.iterations.push(record);
        a_l = x1;
        b_l = b_l.difference(&y_prime);
    }
    unreachable!("the loop returns at step l*")
}
