//! Exact certification of regular pairs and executable checks of the lemmas
//! that consume them.
//!
//! A pair `(X, Y)` (possibly with `X = Y`) is
//!
//! - ε-regular if `|d(X',Y') - d(X,Y)| <= ε` for all `X' ⊆ X`, `Y' ⊆ Y` with
//!   `|X'| >= ε|X|`, `|Y'| >= ε|Y|`;
//! - lower-(λ,γ)-regular if `d(X',Y') >= λ` whenever `|X'| >= γ|X|`,
//!   `|Y'| >= γ|Y|`;
//! - (p,ε)-regular if `|d(X',Y') - p| <= ε` on the same subsets as ε-regularity.
//!
//! Densities use the ordered-pair convention of [`crate::density`]. Size
//! thresholds are `max(1, ⌈frac · |X|⌉)`. Every check is an exhaustive scan:
//! subsets of the smaller side are enumerated (at most `cap` vertices) and the
//! other side is optimised exactly, so the larger side may be big. Nothing is
//! sampled; oversized inputs are refused.

mod lemmas;
mod lowerreg;
mod scan;

pub use lemmas::{
    check_good_config, check_partition_quasirandom, random_subset_regularity_probe,
    verify_counting_lemma, verify_extension_bound, verify_random_clique_bound, ConfigGrade,
    CountingLemmaReport, ExtensionBoundReport, GoodConfig, PairEvidence, PartEvidence,
    PartitionOutcome, ProbeReport, RandomCliqueOutcome,
};
pub use lowerreg::{lower_regularize, IterationRecord, LowerRegOutcome, LowerRegParams, LowerRegResult};

use crate::coloring::{density, Color, TwoColoring};
use crate::error::{domain, Result};
use crate::vertex_set::VertexSet;
use scan::{threshold, Scanner};

/// Default bound on the size of the enumerated (smaller) side.
pub const DEFAULT_SUBSET_CAP: usize = 14;
/// Subsets are held as `u32` masks.
pub const MAX_SUBSET_CAP: usize = 24;

/// Slack applied in favour of a Regular verdict when comparing densities
/// against real thresholds.
const TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RegularityKind {
    Eps { eps: f64 },
    Lower { lambda: f64, gamma: f64 },
    PEps { p: f64, eps: f64 },
}

impl RegularityKind {
    /// Fraction of each side a sub-pair must keep.
    pub fn fraction(&self) -> f64 {
        match *self {
            RegularityKind::Eps { eps } | RegularityKind::PEps { eps, .. } => eps,
            RegularityKind::Lower { gamma, .. } => gamma,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = |v: f64| v > 0.0 && v <= 1.0;
        match *self {
            RegularityKind::Eps { eps } if ok(eps) => Ok(()),
            RegularityKind::Lower { lambda, gamma } if (0.0..=1.0).contains(&lambda) && ok(gamma) => Ok(()),
            RegularityKind::PEps { p, eps } if (0.0..=1.0).contains(&p) && ok(eps) => Ok(()),
            _ => domain(format!("regularity parameters out of range: {self:?}")),
        }
    }

    /// Whether a sub-pair density `d` breaks the condition, given the full
    /// pair density `d0`.
    pub fn violated_by(&self, d: f64, d0: f64) -> bool {
        match *self {
            RegularityKind::Eps { eps } => (d - d0).abs() > eps + TOL,
            RegularityKind::Lower { lambda, .. } => d < lambda - TOL,
            RegularityKind::PEps { p, eps } => (d - p).abs() > eps + TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Irregular,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ViolatingPair {
    pub x: VertexSet,
    pub y: VertexSet,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityWitness {
    pub verdict: Verdict,
    pub violating_pair: Option<ViolatingPair>,
    pub kind: RegularityKind,
    pub color: Color,
    /// `d(X, Y)` in `color`.
    pub pair_density: f64,
    /// Minimum sizes of `X'` and `Y'`.
    pub thresholds: (usize, usize),
    /// Number of subsets of the smaller side examined by a complete scan.
    pub subsets_scanned: usize,
}

impl RegularityWitness {
    pub fn is_regular(&self) -> bool {
        self.verdict == Verdict::Regular
    }

    /// Re-measures the violating pair with [`density`] and confirms it lies in
    /// `(X, Y)`, meets the size thresholds and breaks the condition. A Regular
    /// verdict rechecks trivially.
    pub fn recheck(&self, c: &TwoColoring, xs: &VertexSet, ys: &VertexSet) -> Result<bool> {
        let Some(v) = &self.violating_pair else {
            return Ok(self.verdict == Verdict::Regular);
        };
        let d0 = density(c, xs, ys)?.density(self.color);
        let d = density(c, &v.x, &v.y)?.density(self.color);
        let f = self.kind.fraction();
        Ok(v.x.is_subset(xs)
            && v.y.is_subset(ys)
            && v.x.len() >= threshold(f, xs.len())
            && v.y.len() >= threshold(f, ys.len())
            && (d - v.density).abs() < 1e-12
            && self.kind.violated_by(d, d0))
    }
}

/// Exhaustive regularity check of `(X, Y)` in `color`.
pub fn check_regularity(
    c: &TwoColoring,
    xs: &VertexSet,
    ys: &VertexSet,
    kind: RegularityKind,
    color: Color,
    cap: usize,
) -> Result<RegularityWitness> {
    kind.validate()?;
    let d0 = density(c, xs, ys)?.density(color);
    let f = kind.fraction();
    let scanner = Scanner::new(c, xs, ys, f, f, color, cap)?;
    let (need_min, need_max) = match kind {
        RegularityKind::Lower { .. } => (true, false),
        _ => (true, true),
    };
    let found = scanner.first_violation(need_min, need_max, |cand| kind.violated_by(cand.density(), d0));
    let n = c.n();
    let violating_pair = match found {
        Some(cand) => Some(ViolatingPair {
            density: cand.density(),
            x: VertexSet::from_indices(n, cand.x)?,
            y: VertexSet::from_indices(n, cand.y)?,
        }),
        None => None,
    };
    Ok(RegularityWitness {
        verdict: if violating_pair.is_some() {
            Verdict::Irregular
        } else {
            Verdict::Regular
        },
        violating_pair,
        kind,
        color,
        pair_density: d0,
        thresholds: scanner.thresholds(),
        subsets_scanned: scanner.subsets(),
    })
}

pub fn check_eps_regular(c: &TwoColoring, xs: &VertexSet, ys: &VertexSet, eps: f64, color: Color) -> Result<RegularityWitness> {
    check_regularity(c, xs, ys, RegularityKind::Eps { eps }, color, DEFAULT_SUBSET_CAP)
}

pub fn check_lower_regular(
    c: &TwoColoring,
    xs: &VertexSet,
    ys: &VertexSet,
    lambda: f64,
    gamma: f64,
    color: Color,
) -> Result<RegularityWitness> {
    check_regularity(c, xs, ys, RegularityKind::Lower { lambda, gamma }, color, DEFAULT_SUBSET_CAP)
}

pub fn check_p_eps_regular(
    c: &TwoColoring,
    xs: &VertexSet,
    ys: &VertexSet,
    p: f64,
    eps: f64,
    color: Color,
) -> Result<RegularityWitness> {
    check_regularity(c, xs, ys, RegularityKind::PEps { p, eps }, color, DEFAULT_SUBSET_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_blue_join;

    #[test]
    fn homogeneous_pairs() {
        let b = TwoColoring::monochromatic(8, Color::Blue).unwrap();
        let x = VertexSet::range(8, 0, 4).unwrap();
        let y = VertexSet::range(8, 4, 8).unwrap();
        assert!(check_eps_regular(&b, &x, &y, 0.1, Color::Blue).unwrap().is_regular());
        assert!(check_lower_regular(&b, &x, &y, 1.0, 0.5, Color::Blue).unwrap().is_regular());
        assert!(check_p_eps_regular(&b, &x, &y, 1.0, 0.01, Color::Blue).unwrap().is_regular());
        let w = check_p_eps_regular(&b, &x, &y, 0.5, 0.4, Color::Blue).unwrap();
        assert_eq!(w.verdict, Verdict::Irregular);
        assert!(w.recheck(&b, &x, &y).unwrap());
        let w = check_lower_regular(&b, &x, &y, 0.1, 0.5, Color::Red).unwrap();
        assert_eq!(w.violating_pair.as_ref().unwrap().density, 0.0);
        assert_eq!(w.violating_pair.as_ref().unwrap().x, x);
    }

    #[test]
    fn two_red_cliques_in_blue() {
        let r = TwoColoring::monochromatic(4, Color::Red).unwrap();
        let j = gen_blue_join(&r, &r);
        let v = VertexSet::full(8);
        let w = check_eps_regular(&j, &v, &v, 0.3, Color::Blue).unwrap();
        assert_eq!(w.verdict, Verdict::Irregular);
        assert!(w.recheck(&j, &v, &v).unwrap());
        let d = w.violating_pair.unwrap().density;
        assert!((d - w.pair_density).abs() > 0.3);
        let clique1 = VertexSet::range(8, 0, 4).unwrap();
        let clique2 = VertexSet::range(8, 4, 8).unwrap();
        assert_eq!(density(&j, &clique1, &clique2).unwrap().d_blue, 1.0);
    }

    #[test]
    fn cap_is_enforced_on_smaller_side() {
        let b = TwoColoring::monochromatic(40, Color::Blue).unwrap();
        let x = VertexSet::range(40, 0, 15).unwrap();
        let y = VertexSet::range(40, 15, 40).unwrap();
        assert!(check_eps_regular(&b, &x, &y, 0.2, Color::Blue).is_err());
        let x = VertexSet::range(40, 0, 10).unwrap();
        assert!(check_eps_regular(&b, &x, &y, 0.2, Color::Blue).unwrap().is_regular());
    }
}
