//! Brute-force reference implementations, written directly from the
//! definitions and sharing no code with the library beyond `TwoColoring`
//! accessors.

#![allow(dead_code)]

use bookram_core::{Color, TwoColoring};

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn is_mono(c: &TwoColoring, vs: &[usize], color: Color) -> bool {
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if c.color(vs[i], vs[j]).unwrap() != color {
                return false;
            }
        }
    }
    true
}

pub fn naive_cliques(c: &TwoColoring, k: usize, color: Color) -> Vec<Vec<usize>> {
    combinations(c.n(), k).into_iter().filter(|q| is_mono(c, q, color)).collect()
}

pub fn naive_ext(c: &TwoColoring, q: &[usize], color: Color) -> u64 {
    (0..c.n())
        .filter(|u| !q.contains(u) && q.iter().all(|&v| c.color(*u, v).unwrap() == color))
        .count() as u64
}

pub fn naive_triangles(c: &TwoColoring) -> u64 {
    let n = c.n();
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                let x = c.color(a, b).unwrap();
                if c.color(a, d).unwrap() == x && c.color(b, d).unwrap() == x {
                    t += 1;
                }
            }
        }
    }
    t
}

/// Monochromatic `K_{k+2}` minus an edge: scan `(k+2)`-subsets and each
/// missing pair position.
pub fn naive_near_cliques(c: &TwoColoring, k: usize) -> u64 {
    let mut t = 0;
    for s in combinations(c.n(), k + 2) {
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                for color in Color::BOTH {
                    let mut ok = true;
                    'outer: for a in 0..s.len() {
                        for b in a + 1..s.len() {
                            if (a, b) == (i, j) {
                                continue;
                            }
                            if c.color(s[a], s[b]).unwrap() != color {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                    if ok {
                        t += 1;
                    }
                }
            }
        }
    }
    t
}

pub fn naive_max_book(c: &TwoColoring, k: usize) -> u64 {
    let mut best = 0;
    for color in Color::BOTH {
        for q in naive_cliques(c, k, color) {
            best = best.max(naive_ext(c, &q, color));
        }
    }
    best
}

/// Blue edges between two vertex lists over ordered pairs `(x, y)`, `x != y`,
/// and the number of such pairs.
pub fn naive_density(c: &TwoColoring, xs: &[usize], ys: &[usize], color: Color) -> Option<f64> {
    let mut num = 0u64;
    let mut den = 0u64;
    for &x in xs {
        for &y in ys {
            if x == y {
                continue;
            }
            den += 1;
            if c.color(x, y).unwrap() == color {
                num += 1;
            }
        }
    }
    (den > 0).then(|| num as f64 / den as f64)
}

/// Maximum of `|e_B(X,Y) - |X||Y|/2| / n²` over disjoint nonempty `X, Y`,
/// by walking all `3^n` assignments as base-3 counters.
pub fn ternary_theta(c: &TwoColoring) -> f64 {
    let n = c.n();
    let mut digits = vec![0u8; n];
    let mut best = 0.0f64;
    loop {
        let xs: Vec<usize> = (0..n).filter(|&i| digits[i] == 1).collect();
        let ys: Vec<usize> = (0..n).filter(|&i| digits[i] == 2).collect();
        if !xs.is_empty() && !ys.is_empty() {
            let mut blue = 0i64;
            for &x in &xs {
                for &y in &ys {
                    if c.is_blue(x, y) {
                        blue += 1;
                    }
                }
            }
            let dev = (2 * blue - (xs.len() * ys.len()) as i64).abs() as f64 / 2.0;
            best = best.max(dev / (n * n) as f64);
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn subsets_at_least(items: &[usize], min: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << items.len()) {
        if (mask.count_ones() as usize) >= min {
            out.push((0..items.len()).filter(|&i| mask >> i & 1 == 1).map(|i| items[i]).collect());
        }
    }
    out
}

fn ceil_frac(frac: f64, len: usize) -> usize {
    ((frac * len as f64 - 1e-9).ceil() as usize).clamp(1, len)
}

/// Full enumeration of both sides; `deviates(d, d0)` decides a violation.
pub fn brute_regular<F: Fn(f64, f64) -> bool>(
    c: &TwoColoring,
    xs: &[usize],
    ys: &[usize],
    frac: f64,
    color: Color,
    deviates: F,
) -> bool {
    let d0 = naive_density(c, xs, ys, color).unwrap();
    let sx = subsets_at_least(xs, ceil_frac(frac, xs.len()));
    let sy = subsets_at_least(ys, ceil_frac(frac, ys.len()));
    for a in &sx {
        for b in &sy {
            if let Some(d) = naive_density(c, a, b, color) {
                if deviates(d, d0) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn brute_eps_regular(c: &TwoColoring, xs: &[usize], ys: &[usize], eps: f64, color: Color) -> bool {
    brute_regular(c, xs, ys, eps, color, |d, d0| (d - d0).abs() > eps + 1e-12)
}

pub fn brute_lower_regular(c: &TwoColoring, xs: &[usize], ys: &[usize], lambda: f64, gamma: f64, color: Color) -> bool {
    brute_regular(c, xs, ys, gamma, color, |d, _| d < lambda - 1e-12)
}

pub fn brute_p_eps_regular(c: &TwoColoring, xs: &[usize], ys: &[usize], p: f64, eps: f64, color: Color) -> bool {
    brute_regular(c, xs, ys, eps, color, |d, _| (d - p).abs() > eps + 1e-12)
}

/// A small xorshift stream for test-side randomness independent of the
/// library's generators.
pub struct Xs(pub u64);

impl Xs {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}

pub fn xs_coloring(n: usize, p_blue: f64, seed: u64) -> TwoColoring {
    let mut r = Xs(seed.wrapping_mul(0x2545_f491_4f6c_dd1d) | 1);
    TwoColoring::from_fn(n, |_, _| if r.unit() < p_blue { Color::Blue } else { Color::Red }).unwrap()
}
