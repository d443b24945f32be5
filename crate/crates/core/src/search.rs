//! Searching for colorings without large monochromatic books.
//!
//! [`anneal`] runs single-edge-flip simulated annealing on the score
//! `(max_book, number of cliques attaining it)`, compared lexicographically.
//! [`exhaustive_book_ramsey`] settles tiny cases by scanning every coloring.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::books::{for_each_clique_through, for_each_mono_clique, max_book};
use crate::coloring::{Color, TwoColoring};
use crate::error::{domain, Error, Result};
use crate::io::{self, Format};

/// `(max_book, cliques attaining it)`; smaller is better.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Score {
    pub max_book: u64,
    pub attaining: u64,
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} attaining)", self.max_book, self.attaining)
    }
}

/// Score computed from scratch.
pub fn score(c: &TwoColoring, k: usize) -> Result<Score> {
    if k == 0 || k > c.n() {
        return domain(format!("clique size k = {k} outside 1..={}", c.n()));
    }
    let mut hist = BTreeMap::new();
    for color in Color::BOTH {
        for_each_mono_clique(c, k, color, |_, ext| *hist.entry(ext).or_insert(0u64) += 1)?;
    }
    Ok(score_of(&hist))
}

fn score_of(hist: &BTreeMap<u64, u64>) -> Score {
    hist.iter()
        .next_back()
        .map(|(&max_book, &attaining)| Score { max_book, attaining })
        .unwrap_or(Score { max_book: 0, attaining: 0 })
}

/// A coloring together with the histogram of extension counts over its
/// monochromatic `K_k`, updated locally when an edge is flipped.
#[derive(Clone, Debug)]
pub struct IncrementalScorer {
    coloring: TwoColoring,
    k: usize,
    hist: BTreeMap<u64, u64>,
}

impl IncrementalScorer {
    pub fn new(coloring: TwoColoring, k: usize) -> Result<Self> {
        if k == 0 || k > coloring.n() {
            return domain(format!("clique size k = {k} outside 1..={}", coloring.n()));
        }
        let mut hist = BTreeMap::new();
        for color in Color::BOTH {
            for_each_mono_clique(&coloring, k, color, |_, ext| *hist.entry(ext).or_insert(0u64) += 1)?;
        }
        Ok(IncrementalScorer { coloring, k, hist })
    }

    pub fn coloring(&self) -> &TwoColoring {
        &self.coloring
    }

    pub fn into_coloring(self) -> TwoColoring {
        self.coloring
    }

    pub fn score(&self) -> Score {
        score_of(&self.hist)
    }

    // Only cliques through u or v see the pair {u, v}, either inside the
    // clique or between the clique and an extension.
    fn adjust(&mut self, u: usize, v: usize, add: bool) {
        let hist = &mut self.hist;
        let mut touch = |ext: u64| {
            if add {
                *hist.entry(ext).or_insert(0) += 1;
            } else {
                let e = hist.get_mut(&ext).expect("clique was counted");
                *e -= 1;
                if *e == 0 {
                    hist.remove(&ext);
                }
            }
        };
        for color in Color::BOTH {
            for_each_clique_through(&self.coloring, self.k, color, u, None, &mut touch);
            for_each_clique_through(&self.coloring, self.k, color, v, Some(u), &mut touch);
        }
    }

    /// Flips the pair `{u, v}` and returns the new score.
    pub fn flip(&mut self, u: usize, v: usize) -> Result<Score> {
        let n = self.coloring.n();
        if u >= n || v >= n || u == v {
            return domain(format!("pair ({u}, {v}) is not an edge of K_{n}"));
        }
        self.adjust(u, v, false);
        self.coloring.flip_mut(u, v);
        self.adjust(u, v, true);
        Ok(self.score())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub t0: f64,
    /// Temperature multiplier per iteration.
    pub alpha: f64,
    pub t_min: f64,
    /// Iterations without a new best after which the temperature resets to `t0`.
    pub reheat_after: u64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            t0: 1.0,
            alpha: 0.999,
            t_min: 1e-3,
            reheat_after: 5_000,
        }
    }
}

impl Schedule {
    fn check(&self) -> Result<()> {
        if !(self.t0 > 0.0 && self.alpha > 0.0 && self.alpha <= 1.0 && self.t_min > 0.0 && self.reheat_after > 0) {
            return domain(format!("bad schedule {self:?}"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchState {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub schedule: Schedule,
    pub current: TwoColoring,
    pub current_score: Score,
    pub best: TwoColoring,
    pub best_score: Score,
    /// Iteration at which `best` was first reached.
    pub best_iteration: u64,
    pub iterations: u64,
}

/// Reported to observers whenever the best score improves.
#[derive(Clone, Debug)]
pub struct Improvement<'a> {
    pub iteration: u64,
    pub score: Score,
    pub coloring: &'a TwoColoring,
}

fn chain_seed(seed: u64, chain: usize) -> u64 {
    seed ^ (chain as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Scalar energy consistent with the lexicographic score order.
fn energy(s: Score, scale: f64) -> f64 {
    s.max_book as f64 + s.attaining as f64 / scale
}

struct Chain {
    scorer: IncrementalScorer,
    rng: Xoshiro256PlusPlus,
    temperature: f64,
    best: TwoColoring,
    best_score: Score,
    best_iteration: u64,
    since_best: u64,
}

impl Chain {
    fn new(n: usize, k: usize, seed: u64, schedule: &Schedule) -> Result<Self> {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        let start = TwoColoring::from_fn(n, |_, _| if rng.random::<bool>() { Color::Blue } else { Color::Red })?;
        let scorer = IncrementalScorer::new(start.clone(), k)?;
        let best_score = scorer.score();
        Ok(Chain {
            scorer,
            rng,
            temperature: schedule.t0,
            best: start,
            best_score,
            best_iteration: 0,
            since_best: 0,
        })
    }

    /// Runs iterations `from..to`, calling `improved` on each new best.
    fn run<F: FnMut(u64, Score, &TwoColoring)>(&mut self, from: u64, to: u64, schedule: &Schedule, scale: f64, mut improved: F) {
        let n = self.scorer.coloring().n();
        for it in from..to {
            let u = self.rng.random_range(0..n);
            let mut v = self.rng.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let before = self.scorer.score();
            let after = self.scorer.flip(u, v).expect("valid pair");
            let delta = energy(after, scale) - energy(before, scale);
            let accept = delta <= 0.0 || self.rng.random::<f64>() < (-delta / self.temperature).exp();
            if !accept {
                self.scorer.flip(u, v).expect("valid pair");
            } else if after < self.best_score {
                self.best_score = after;
                self.best = self.scorer.coloring().clone();
                self.best_iteration = it + 1;
                self.since_best = 0;
                improved(it + 1, after, &self.best);
            }
            self.since_best += 1;
            self.temperature = (self.temperature * schedule.alpha).max(schedule.t_min);
            if self.since_best >= schedule.reheat_after {
                self.temperature = schedule.t0;
                self.since_best = 0;
            }
        }
    }
}

fn check_args(n: usize, k: usize, budget: u64) -> Result<()> {
    if k == 0 || n < k + 1 {
        return domain(format!("annealing needs n >= k + 1 and k >= 1, got n = {n}, k = {k}"));
    }
    if budget == 0 {
        return domain("iteration budget must be at least 1");
    }
    Ok(())
}

fn clique_scale(n: usize, k: usize) -> f64 {
    let mut c = 1.0f64;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    2.0 * c + 1.0
}

/// Single-chain annealing from a seeded random coloring.
pub fn anneal(n: usize, k: usize, budget: u64, seed: u64, schedule: Schedule) -> Result<SearchState> {
    anneal_observed(n, k, budget, seed, schedule, |_| {})
}

/// As [`anneal`], reporting each improvement of the best score.
pub fn anneal_observed<F>(n: usize, k: usize, budget: u64, seed: u64, schedule: Schedule, mut observe: F) -> Result<SearchState>
where
    F: FnMut(&Improvement<'_>),
{
    check_args(n, k, budget)?;
    schedule.check()?;
    let mut chain = Chain::new(n, k, seed, &schedule)?;
    observe(&Improvement {
        iteration: 0,
        score: chain.best_score,
        coloring: &chain.best,
    });
    chain.run(0, budget, &schedule, clique_scale(n, k), |iteration, score, coloring| {
        observe(&Improvement { iteration, score, coloring })
    });
    Ok(SearchState {
        n,
        k,
        seed,
        schedule,
        current_score: chain.scorer.score(),
        current: chain.scorer.into_coloring(),
        best: chain.best,
        best_score: chain.best_score,
        best_iteration: chain.best_iteration,
        iterations: budget,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelConfig {
    pub chains: usize,
    /// Iterations between exchanges.
    pub exchange_every: u64,
}

/// Independent chains run in rounds on the thread pool. After each round
/// the coordinator (the only writer of the global best) collects every
/// chain's best, and the chain with the worst current score restarts from
/// the global best. Ties go to the lowest chain index, so results depend only
/// on the inputs, not on scheduling.
pub fn anneal_parallel<F>(
    n: usize,
    k: usize,
    budget: u64,
    seed: u64,
    schedule: Schedule,
    config: ParallelConfig,
    mut observe: F,
) -> Result<SearchState>
where
    F: FnMut(&Improvement<'_>),
{
    check_args(n, k, budget)?;
    schedule.check()?;
    if config.chains == 0 || config.exchange_every == 0 {
        return domain("need at least one chain and a positive exchange interval");
    }
    let scale = clique_scale(n, k);
    let mut chains = (0..config.chains)
        .map(|i| Chain::new(n, k, chain_seed(seed, i), &schedule))
        .collect::<Result<Vec<_>>>()?;
    let pick = |chains: &[Chain]| {
        (0..chains.len())
            .min_by_key(|&i| (chains[i].best_score, chains[i].best_iteration, i))
            .expect("at least one chain")
    };
    let first = pick(&chains);
    let mut best = chains[first].best.clone();
    let mut best_score = chains[first].best_score;
    let mut best_iteration = 0;
    observe(&Improvement {
        iteration: 0,
        score: best_score,
        coloring: &best,
    });
    let mut done = 0u64;
    while done < budget {
        let to = (done + config.exchange_every).min(budget);
        chains.par_iter_mut().for_each(|ch| ch.run(done, to, &schedule, scale, |_, _, _| {}));
        done = to;
        let i = pick(&chains);
        if chains[i].best_score < best_score {
            best_score = chains[i].best_score;
            best = chains[i].best.clone();
            best_iteration = chains[i].best_iteration;
            observe(&Improvement {
                iteration: best_iteration,
                score: best_score,
                coloring: &best,
            });
        }
        if done < budget && chains.len() > 1 {
            let worst = (0..chains.len())
                .max_by_key(|&j| (chains[j].scorer.score(), std::cmp::Reverse(j)))
                .expect("at least one chain");
            if worst != i {
                chains[worst].scorer = IncrementalScorer::new(best.clone(), k)?;
            }
        }
    }
    let lead = pick(&chains);
    let ch = chains.swap_remove(lead);
    Ok(SearchState {
        n,
        k,
        seed,
        schedule,
        current_score: ch.scorer.score(),
        current: ch.scorer.into_coloring(),
        best,
        best_score,
        best_iteration,
        iterations: budget,
    })
}

/// Writes `best.clr` (binary coloring), `best.meta` and `history.tsv` into a
/// directory, rewriting the first two and appending to the history on every
/// improvement.
#[derive(Debug)]
pub struct Checkpointer {
    dir: PathBuf,
    seed: u64,
    k: usize,
}

impl Checkpointer {
    pub fn create(dir: impl AsRef<Path>, seed: u64, k: usize) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        fs::write(dir.join("history.tsv"), "iteration\tmax_book\tattaining\n")?;
        Ok(Checkpointer { dir, seed, k })
    }

    pub fn record(&self, imp: &Improvement<'_>) -> Result<()> {
        io::save(imp.coloring, self.dir.join("best.clr"), Format::Binary)?;
        let meta = format!(
            "seed={}\niteration={}\nn={}\nk={}\nmax_book={}\nattaining={}\n",
            self.seed,
            imp.iteration,
            imp.coloring.n(),
            self.k,
            imp.score.max_book,
            imp.score.attaining
        );
        fs::write(self.dir.join("best.meta"), meta)?;
        let mut h = fs::OpenOptions::new().append(true).open(self.dir.join("history.tsv"))?;
        writeln!(h, "{}\t{}\t{}", imp.iteration, imp.score.max_book, imp.score.attaining)?;
        Ok(())
    }
}

/// True iff `c` has no monochromatic `B_pages^(k)`, i.e. `max_book < pages`.
pub fn certify_book_free(c: &TwoColoring, k: usize, pages: u64) -> Result<bool> {
    if k == 0 {
        return domain("clique size k must be at least 1");
    }
    if k > c.n() {
        return Ok(true);
    }
    Ok(max_book(c, k)? < pages)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExhaustiveOutcome {
    /// Every coloring of `K_n` has a monochromatic `B_pages^(k)`.
    AllContain,
    /// A coloring with `max_book < pages`.
    Witness(TwoColoring),
}

/// Default limit on `C(n, 2)`: 2^21 colorings.
pub const EXHAUSTIVE_PAIR_CAP: usize = 21;
/// Limit even when the cap is lifted.
pub const EXHAUSTIVE_PAIR_HARD_CAP: usize = 36;

fn has_book(c: &TwoColoring, k: usize, pages: u64) -> bool {
    let mut found = false;
    for color in Color::BOTH {
        if found {
            break;
        }
        for_each_mono_clique(c, k, color, |_, ext| found |= ext >= pages).expect("k checked");
    }
    found
}

/// Scans all colorings of `K_n` with the pair `{0, 1}` red (colour swapping
/// preserves books), in parallel over blocks of the coloring index. The
/// witness, if any, is the first in index order, so the result is
/// deterministic.
pub fn exhaustive_book_ramsey(n: usize, k: usize, pages: u64, lift_cap: bool) -> Result<ExhaustiveOutcome> {
    if n < 2 || k == 0 {
        return domain(format!("need n >= 2 and k >= 1, got n = {n}, k = {k}"));
    }
    let pairs = n * (n - 1) / 2;
    let cap = if lift_cap { EXHAUSTIVE_PAIR_HARD_CAP } else { EXHAUSTIVE_PAIR_CAP };
    if pairs > cap {
        return Err(Error::CapExceeded {
            what: "exhaustive search (pairs of K_n)",
            size: pairs,
            cap,
            hint: if lift_cap { "too large for exhaustive search" } else { "pass the allow-large flag to lift the default cap" },
        });
    }
    if k > n {
        return Ok(ExhaustiveOutcome::Witness(TwoColoring::monochromatic(n, Color::Red)?));
    }
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    // Pair 0 is {0, 1}; it stays red, so only the other pairs vary.
    let free = pairs - 1;
    let total = 1u64 << free;
    let block = 1u64 << free.min(12);
    let witness = (0..total / block).into_par_iter().find_map_first(|b| {
        let mut c = TwoColoring::monochromatic(n, Color::Red).expect("n >= 2");
        let mut prev = 0u64;
        for mask in b * block..(b + 1) * block {
            // Only pairs whose bit changed are rewritten.
            let mut diff = if mask == b * block { mask | (u64::MAX >> (64 - free.max(1))) } else { mask ^ prev };
            while diff != 0 {
                let bit = diff.trailing_zeros() as usize;
                diff &= diff - 1;
                if bit >= free {
                    continue;
                }
                let (i, j) = upper[bit + 1];
                let color = if mask >> bit & 1 == 1 { Color::Blue } else { Color::Red };
                c.set_pair(i, j, color);
            }
            prev = mask;
            if !has_book(&c, k, pages) {
                return Some(c.clone());
            }
        }
        None
    });
    Ok(match witness {
        Some(c) => ExhaustiveOutcome::Witness(c),
        None => ExhaustiveOutcome::AllContain,
    })
}
