//! Random, Paley, blue-join and monochromatic colorings.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::coloring::{Color, TwoColoring};
use crate::error::{domain, Result};

/// A recipe for one of the standard colorings.
#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    Random { n: usize, p_blue: f64, seed: u64 },
    Paley { q: usize },
    BlueJoin { left: Box<GenSpec>, right: Box<GenSpec> },
    Monochromatic { n: usize, color: Color },
}

impl GenSpec {
    pub fn n(&self) -> usize {
        match self {
            GenSpec::Random { n, .. } | GenSpec::Monochromatic { n, .. } => *n,
            GenSpec::Paley { q } => *q,
            GenSpec::BlueJoin { left, right } => left.n() + right.n(),
        }
    }

    pub fn generate(&self) -> Result<TwoColoring> {
        match self {
            GenSpec::Random { n, p_blue, seed } => gen_random(*n, *p_blue, *seed),
            GenSpec::Paley { q } => gen_paley(*q),
            GenSpec::BlueJoin { left, right } => Ok(gen_blue_join(&left.generate()?, &right.generate()?)),
            GenSpec::Monochromatic { n, color } => TwoColoring::monochromatic(*n, *color),
        }
    }
}

/// Uniform double in `[0, 1)` from the top 53 bits of a 64-bit draw.
#[inline]
pub fn unit_from_u64(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Independent random coloring.
///
/// The stream is SplitMix64 with state initialised to `seed`; pairs are
/// visited in upper-triangle row-major order and pair `(i, j)` is blue iff
/// `unit_from_u64(next_u64()) < p_blue`. Any language with a SplitMix64
/// reproduces the same bits.
pub fn gen_random(n: usize, p_blue: f64, seed: u64) -> Result<TwoColoring> {
    if !(0.0..=1.0).contains(&p_blue) {
        return domain(format!("p_blue = {p_blue} is not a probability"));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    TwoColoring::from_fn(n, |_, _| {
        if unit_from_u64(rng.next_u64()) < p_blue {
            Color::Blue
        } else {
            Color::Red
        }
    })
}

pub fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_paley_order(q: usize) -> Result<()> {
    if !is_prime(q) {
        return domain(format!("Paley order {q} is not prime"));
    }
    if q % 4 != 1 {
        return domain(format!("Paley order {q} is not 1 mod 4"));
    }
    Ok(())
}

/// Indicator of the nonzero squares mod `q`.
pub fn quadratic_residues(q: usize) -> Vec<bool> {
    let mut qr = vec![false; q];
    for x in 1..q {
        qr[x * x % q] = true;
    }
    qr
}

/// Paley coloring of `K_q`: `{u, v}` is red iff `u - v` is a nonzero square
/// mod `q`. Requires `q` prime with `q = 1 mod 4`, which makes `-1` a square
/// and the rule symmetric.
pub fn gen_paley(q: usize) -> Result<TwoColoring> {
    check_paley_order(q)?;
    let qr = quadratic_residues(q);
    TwoColoring::from_fn(q, |i, j| if qr[j - i] { Color::Red } else { Color::Blue })
}

/// Disjoint union of `left` and `right` with every cross edge blue; the
/// vertices of `right` are shifted up by `left.n()`.
pub fn gen_blue_join(left: &TwoColoring, right: &TwoColoring) -> TwoColoring {
    let a = left.n();
    TwoColoring::from_fn(a + right.n(), |i, j| {
        if j < a {
            left.color_unchecked(i, j)
        } else if i >= a {
            right.color_unchecked(i - a, j - a)
        } else {
            Color::Blue
        }
    })
    .expect("both parts are nonempty")
}

/// The map `x -> g x mod q` for the least quadratic non-residue `g`, which
/// sends the red graph of `gen_paley(q)` onto its blue graph.
pub fn paley_self_complement_map(q: usize) -> Result<Vec<usize>> {
    check_paley_order(q)?;
    let qr = quadratic_residues(q);
    let g = (2..q).find(|&g| !qr[g]).expect("a prime q > 2 has non-residues");
    Ok((0..q).map(|x| g * x % q).collect())
}
