//! Verifiers for the counting lemma, the random-clique extension bound,
//! good/great configurations, the extension bound for lower-regular pairs,
//! partition certificates of quasirandomness and the random-subset probe.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use super::{check_eps_regular, check_lower_regular, check_p_eps_regular, RegularityWitness};
use crate::bits;
use crate::coloring::{density, Color, TwoColoring};
use crate::error::{domain, Error, Result};
use crate::quasi::{theta_exact_with_limit, DEFAULT_EXACT_LIMIT};
use crate::vertex_set::VertexSet;

fn binom2(k: usize) -> f64 {
    (k * k.saturating_sub(1) / 2) as f64
}

/// Labelled `color` cliques `(v_1, .., v_k)` with `v_i ∈ parts[i]`, optionally
/// restricted to the common `color` neighbourhood `within`.
fn labelled_transversal_cliques(c: &TwoColoring, parts: &[VertexSet], color: Color, within: Option<&[u64]>) -> u64 {
    fn rec(c: &TwoColoring, parts: &[VertexSet], color: Color, depth: usize, allowed: &[u64]) -> u64 {
        if depth == parts.len() {
            return 1;
        }
        let mut cand = parts[depth].words().to_vec();
        bits::and_assign(&mut cand, allowed);
        let mut total = 0;
        for v in bits::ones(&cand) {
            let mut next = allowed.to_vec();
            bits::and_assign(&mut next, c.row(v, color));
            total += rec(c, parts, color, depth + 1, &next);
        }
        total
    }
    let all = bits::full(c.n());
    rec(c, parts, color, 0, within.unwrap_or(&all))
}

fn certify_pairs(c: &TwoColoring, parts: &[VertexSet], eps: f64, color: Color) -> Result<Vec<RegularityWitness>> {
    let mut out = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let w = check_eps_regular(c, &parts[i], &parts[j], eps, color)?;
            if !w.is_regular() {
                return Err(Error::Precondition(format!("pair ({i},{j}) is not {eps}-regular")));
            }
            out.push(w);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingLemmaReport {
    pub count: u64,
    pub lower: f64,
    pub upper: f64,
    pub holds: bool,
}

/// Checks that the number of labelled `color` copies of `K_k` with `i`-th
/// vertex in `V_i` lies in `(Π d(V_i,V_j) ± ε C(k,2)) Π |V_i|`, after
/// certifying every pair `(V_i, V_j)`, `i < j`, ε-regular.
pub fn verify_counting_lemma(c: &TwoColoring, parts: &[VertexSet], eps: f64, color: Color) -> Result<CountingLemmaReport> {
    if parts.len() < 2 {
        return domain("the counting lemma needs at least two parts");
    }
    certify_pairs(c, parts, eps, color)?;
    let mut prod_d = 1.0;
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            prod_d *= density(c, &parts[i], &parts[j])?.density(color);
        }
    }
    let size: f64 = parts.iter().map(|p| p.len() as f64).product();
    let slack = eps * binom2(parts.len());
    let lower = (prod_d - slack) * size;
    let upper = (prod_d + slack) * size;
    let count = labelled_transversal_cliques(c, parts, color, None);
    let x = count as f64;
    Ok(CountingLemmaReport {
        count,
        lower,
        upper,
        holds: x >= lower - 1e-9 && x <= upper + 1e-9,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum RandomCliqueOutcome {
    Inapplicable(String),
    /// `probability` of `u` extending a uniformly random transversal clique,
    /// against `bound = Π d(u, U_i) - 4δ`.
    Checked { probability: f64, bound: f64, holds: bool },
}

/// For a uniformly random labelled `color` clique `Q` with one vertex in each
/// `U_i`, checks `Pr(u extends Q) >= Π d(u, U_i) - 4δ`. Preconditions (every
/// pair η-regular, `Π d(U_i,U_j) >= δ`, `η <= δ³/k²`) are evaluated and an
/// unmet one is reported rather than asserted.
pub fn verify_random_clique_bound(
    c: &TwoColoring,
    parts: &[VertexSet],
    u: usize,
    eta: f64,
    delta: f64,
    color: Color,
) -> Result<RandomCliqueOutcome> {
    let k = parts.len();
    if k < 2 {
        return domain("need at least two parts");
    }
    if u >= c.n() {
        return domain(format!("vertex {u} out of range"));
    }
    if !(eta > 0.0 && eta < 1.0 && delta > 0.0 && delta < 1.0) {
        return domain("eta and delta must lie in (0, 1)");
    }
    if eta > delta.powi(3) / (k * k) as f64 {
        return Ok(RandomCliqueOutcome::Inapplicable(format!("eta = {eta} exceeds delta^3/k^2")));
    }
    if let Err(Error::Precondition(msg)) = certify_pairs(c, parts, eta, color) {
        return Ok(RandomCliqueOutcome::Inapplicable(msg));
    }
    let mut prod = 1.0;
    for i in 0..k {
        for j in i + 1..k {
            prod *= density(c, &parts[i], &parts[j])?.density(color);
        }
    }
    if prod < delta {
        return Ok(RandomCliqueOutcome::Inapplicable(format!("product of pair densities {prod} is below delta")));
    }
    let single = VertexSet::from_indices(c.n(), [u])?;
    let mut bound = 1.0;
    for p in parts {
        match density(c, &single, p) {
            Ok(d) => bound *= d.density(color),
            Err(_) => return Ok(RandomCliqueOutcome::Inapplicable(format!("part {p} has no vertex other than u"))),
        }
    }
    bound -= 4.0 * delta;
    let total = labelled_transversal_cliques(c, parts, color, None);
    if total == 0 {
        return Ok(RandomCliqueOutcome::Inapplicable("no transversal clique".into()));
    }
    let extended = labelled_transversal_cliques(c, parts, color, Some(c.row(u, color)));
    let probability = extended as f64 / total as f64;
    Ok(RandomCliqueOutcome::Checked {
        probability,
        bound,
        holds: probability >= bound - 1e-12,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfigGrade {
    Great,
    Good,
    Neither,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartEvidence {
    pub red_density: f64,
    pub regular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairEvidence {
    pub i: usize,
    pub j: usize,
    pub blue_density: f64,
    pub regular: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoodConfig {
    pub parts: Vec<VertexSet>,
    pub eta: f64,
    pub delta: f64,
    pub grade: ConfigGrade,
    pub good: bool,
    pub great: bool,
    pub part_evidence: Vec<PartEvidence>,
    pub pair_evidence: Vec<PairEvidence>,
}

/// Grades `C_1, .., C_k`. Good: every `C_i` is η-regular with red density at
/// least δ and every `(C_i, C_j)` is η-regular with blue density at least δ.
/// Great: same regularity, `d_R(C_i)^{C(k,2)} >= δ` and
/// `Π_{i<j} d_B(C_i, C_j) >= δ`. A great configuration is reported as Great.
pub fn check_good_config(c: &TwoColoring, parts: &[VertexSet], eta: f64, delta: f64) -> Result<GoodConfig> {
    let k = parts.len();
    if k < 2 {
        return domain("a configuration needs k >= 2 parts");
    }
    for i in 0..k {
        for j in i + 1..k {
            if !parts[i].is_disjoint(&parts[j]) {
                return domain(format!("parts {i} and {j} overlap"));
            }
        }
    }
    let mut part_evidence = Vec::new();
    for p in parts {
        let red_density = density(c, p, p)?.d_red;
        let regular = check_eps_regular(c, p, p, eta, Color::Red)?.is_regular();
        part_evidence.push(PartEvidence { red_density, regular });
    }
    let mut pair_evidence = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let blue_density = density(c, &parts[i], &parts[j])?.d_blue;
            let regular = check_eps_regular(c, &parts[i], &parts[j], eta, Color::Blue)?.is_regular();
            pair_evidence.push(PairEvidence { i, j, blue_density, regular });
        }
    }
    let all_regular = part_evidence.iter().all(|p| p.regular) && pair_evidence.iter().all(|p| p.regular);
    let good = all_regular
        && part_evidence.iter().all(|p| p.red_density >= delta)
        && pair_evidence.iter().all(|p| p.blue_density >= delta);
    let exponent = binom2(k) as i32;
    let great = all_regular
        && part_evidence.iter().all(|p| p.red_density.powi(exponent) >= delta)
        && pair_evidence.iter().map(|p| p.blue_density).product::<f64>() >= delta;
    let grade = if great {
        ConfigGrade::Great
    } else if good {
        ConfigGrade::Good
    } else {
        ConfigGrade::Neither
    };
    Ok(GoodConfig {
        parts: parts.to_vec(),
        eta,
        delta,
        grade,
        good,
        great,
        part_evidence,
        pair_evidence,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionBoundReport {
    /// Pairs `(a, f)`, `a ∈ A`, `f` a `color` `K_r` in `B`, with `a` joined
    /// to all of `f` in `color`.
    pub extensions: u64,
    pub cliques: u64,
    /// `λ^r |A| (|F| - rγ/λ^{r-1} |B|^r)`
    pub bound: f64,
    pub holds: bool,
}

/// Counts extensions of the `color` `K_r` inside `B` into `A`, after
/// certifying `(A, B)` lower-(λ,γ)-regular in `color`.
pub fn verify_extension_bound(
    c: &TwoColoring,
    a: &VertexSet,
    b: &VertexSet,
    lambda: f64,
    gamma: f64,
    r: usize,
    color: Color,
) -> Result<ExtensionBoundReport> {
    if r == 0 {
        return domain("r must be at least 1");
    }
    if !(lambda > 0.0 && lambda < 1.0) || !(gamma > 0.0 && gamma < lambda.powi(r as i32)) {
        return domain("need 0 < lambda < 1 and 0 < gamma < lambda^r");
    }
    if !a.is_disjoint(b) {
        return domain("A and B must be disjoint");
    }
    if !check_lower_regular(c, a, b, lambda, gamma, color)?.is_regular() {
        return Err(Error::Precondition(format!(
            "(A, B) is not lower-({lambda},{gamma})-regular in {color}"
        )));
    }
    let copies = |within: &[u64]| -> u64 {
        let mut set = b.words().to_vec();
        bits::and_assign(&mut set, within);
        let vs = VertexSet::from_words(c.n(), set);
        crate::books::count_cliques_within(c, r, color, &vs)
    };
    let cliques = copies(&bits::full(c.n()));
    let extensions: u64 = a.iter().map(|v| copies(c.row(v, color))).sum();
    let lr = lambda.powi(r as i32);
    let bound = lr
        * a.len() as f64
        * (cliques as f64 - r as f64 * gamma / lambda.powi(r as i32 - 1) * (b.len() as f64).powi(r as i32));
    Ok(ExtensionBoundReport {
        extensions,
        cliques,
        bound,
        holds: extensions as f64 >= bound - 1e-9 * bound.abs().max(1.0),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum PartitionOutcome {
    Inapplicable(String),
    Checked { theta_star: f64, theta: f64, holds: bool },
}

/// Given parts `A_1, .., A_l` and a remainder `A_{l+1}` (the last entry of
/// `parts`), checks the certificate (ε <= θ/2, a partition of the vertex set,
/// each `(A_i, V)` (1/2, ε)-regular in blue, `|A_{l+1}| <= εN`) and then that
/// the exact cut deviation is at most θ.
pub fn check_partition_quasirandom(c: &TwoColoring, parts: &[VertexSet], eps: f64, theta: f64) -> Result<PartitionOutcome> {
    let n = c.n();
    if parts.len() < 2 {
        return domain("need at least one part and a remainder");
    }
    if !(eps > 0.0 && eps <= theta / 2.0) {
        return Ok(PartitionOutcome::Inapplicable(format!("eps = {eps} exceeds theta/2 = {}", theta / 2.0)));
    }
    let mut seen = VertexSet::empty(n);
    for p in parts {
        if p.universe() != n {
            return domain("part over the wrong universe");
        }
        if !p.is_disjoint(&seen) {
            return Ok(PartitionOutcome::Inapplicable("parts overlap".into()));
        }
        seen = seen.union(p);
    }
    if seen.len() != n {
        return Ok(PartitionOutcome::Inapplicable("parts do not cover the vertex set".into()));
    }
    let (rest, main) = parts.split_last().expect("len >= 2");
    if rest.len() as f64 > eps * n as f64 + 1e-9 {
        return Ok(PartitionOutcome::Inapplicable(format!(
            "remainder has {} vertices, above eps N = {}",
            rest.len(),
            eps * n as f64
        )));
    }
    let all = VertexSet::full(n);
    for (i, p) in main.iter().enumerate() {
        if p.is_empty() {
            return Ok(PartitionOutcome::Inapplicable(format!("part {i} is empty")));
        }
        if !check_p_eps_regular(c, p, &all, 0.5, eps, Color::Blue)?.is_regular() {
            return Ok(PartitionOutcome::Inapplicable(format!("(A_{i}, V) is not (1/2, {eps})-regular")));
        }
    }
    let q = theta_exact_with_limit(c, DEFAULT_EXACT_LIMIT)?;
    Ok(PartitionOutcome::Checked {
        theta_star: q.theta_star,
        theta,
        holds: q.theta_star <= theta + 1e-12,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub trials: usize,
    pub regular: usize,
    pub rate: f64,
    /// `(10ε)^{1/3}`
    pub eps_prime: f64,
}

/// Fraction of uniformly random `t`-subsets `U ⊆ W` that are
/// `(10ε)^{1/3}`-regular, for `W` certified ε-regular in `color`.
/// A diagnostic only: no rate is guaranteed at these sizes.
pub fn random_subset_regularity_probe(
    c: &TwoColoring,
    w: &VertexSet,
    t: usize,
    eps: f64,
    trials: usize,
    seed: u64,
    color: Color,
) -> Result<ProbeReport> {
    if t < 2 || t > w.len() {
        return domain(format!("subset size t = {t} must lie in 2..={}", w.len()));
    }
    if !check_eps_regular(c, w, w, eps, color)?.is_regular() {
        return Err(Error::Precondition(format!("W is not {eps}-regular")));
    }
    let eps_prime = (10.0 * eps).cbrt().min(1.0);
    let members = w.to_vec();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut regular = 0;
    for _ in 0..trials {
        let idx = sample(&mut rng, members.len(), t);
        let u = VertexSet::from_indices(c.n(), idx.iter().map(|i| members[i]))?;
        if check_eps_regular(c, &u, &u, eps_prime, color)?.is_regular() {
            regular += 1;
        }
    }
    Ok(ProbeReport {
        trials,
        regular,
        rate: if trials == 0 { 0.0 } else { regular as f64 / trials as f64 },
        eps_prime,
    })
}
