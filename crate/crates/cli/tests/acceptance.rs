//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! if any criterion fails. Every check compares library output against an
//! independent brute-force or numerical oracle.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use bookram_core::analytic::{boundary_critical_values, delta0_estimate, f_value, grad_f, min_f_grid, psi, psi_prime};
use bookram_core::books::{count_mono_cliques, extension_histogram, goodman_triangles, max_book};
use bookram_core::constructions::{gen_blue_join, gen_paley, gen_random, paley_self_complement_map};
use bookram_core::io;
use bookram_core::quasi::{chebyshev_check, e_statistic_from, s_statistic, theta_exact, theta_heuristic};
use bookram_core::regularity::{
    check_partition_quasirandom, check_regularity, lower_regularize, verify_counting_lemma, verify_extension_bound,
    verify_random_clique_bound, LowerRegParams, LowerRegResult, PartitionOutcome, RandomCliqueOutcome,
    RegularityKind, DEFAULT_SUBSET_CAP,
};
use bookram_core::search::{certify_book_free, exhaustive_book_ramsey, ExhaustiveOutcome};
use bookram_core::{Color, Error, TwoColoring, VertexSet};
use common::{
    naive_cliques, naive_ext, naive_max_book, naive_near_cliques, naive_triangles, ternary_theta,
    xs_coloring, Xs,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || format!("{what} took {:.2}s, limit {limit_s}s", elapsed.as_secs_f64()))
}

fn split(n: usize, sizes: &[usize]) -> Vec<VertexSet> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let v = VertexSet::range(n, start, start + s).unwrap();
            start += s;
            v
        })
        .collect()
}

fn ac1() -> Outcome {
    let t = Instant::now();
    for seed in 0..100u64 {
        let n = 3 + seed as usize % 28;
        let c = gen_random(n, 0.5, seed).map_err(|e| e.to_string())?;
        let g = goodman_triangles(&c).map_err(|e| e.to_string())?;
        let brute = naive_triangles(&c);
        ensure(g.count == brute, || format!("seed {seed} n {n}: {} vs {brute}", g.count))?;
        ensure(g.centered_holds, || format!("seed {seed}: centered form"))?;
    }
    within(t.elapsed(), 10.0, "100 colorings")?;
    Ok(format!("100/100 exact, {:.2}s", t.elapsed().as_secs_f64()))
}

fn ac2() -> Outcome {
    for k in [2usize, 3] {
        for seed in 0..50u64 {
            let n = 4 + seed as usize % 17;
            let c = gen_random(n, 0.5, 1000 * k as u64 + seed).unwrap();
            let h = extension_histogram(&c, k).unwrap();
            let mk1 = naive_cliques(&c, k + 1, Color::Red).len() + naive_cliques(&c, k + 1, Color::Blue).len();
            let (r, b) = count_mono_cliques(&c, k + 1).unwrap();
            ensure(r + b == mk1 as u64, || format!("k {k} seed {seed}: M(K_k+1) {} vs {mk1}", r + b))?;
            ensure(h.totals.sum_ext == (k as u64 + 1) * mk1 as u64, || format!("I1 k {k} seed {seed}"))?;
        }
    }
    for seed in 0..25u64 {
        let n = 4 + seed as usize % 11;
        let c = gen_random(n, 0.5, 5000 + seed).unwrap();
        let h = extension_histogram(&c, 2).unwrap();
        let near = naive_near_cliques(&c, 2);
        let lhs: u64 = h.per_clique.iter().map(|(_, e)| e * e.saturating_sub(1) / 2).sum();
        ensure(lhs == near, || format!("I2 seed {seed}: {lhs} vs {near}"))?;
    }
    Ok("I1 100/100, I2 25/25".into())
}

/// E and its subgraph-count expansion, from brute-force clique lists.
fn oracle_e(c: &TwoColoring, k: usize) -> (f64, f64) {
    let n = c.n() as f64;
    let centre = n / 2f64.powi(k as i32);
    let mut e = 0.0;
    let mut mk = 0.0;
    for color in Color::BOTH {
        for q in naive_cliques(c, k, color) {
            let d = naive_ext(c, &q, color) as f64 - centre;
            e += d * d;
            mk += 1.0;
        }
    }
    let mk1 = (naive_cliques(c, k + 1, Color::Red).len() + naive_cliques(c, k + 1, Color::Blue).len()) as f64;
    let near = naive_near_cliques(c, k) as f64;
    let d = 2.0 * near + (1.0 - 2f64.powi(1 - k as i32) * n) * (k as f64 + 1.0) * mk1 + 2f64.powi(-2 * k as i32) * n * n * mk;
    (e, d)
}

fn ac3() -> Outcome {
    let mut checked = 0;
    for (k, seeds, nmax) in [(2usize, 50u64, 20usize), (3, 50, 20)] {
        for seed in 0..seeds {
            let n = 4 + seed as usize % (nmax - 3);
            let c = gen_random(n, 0.5, 1000 * k as u64 + seed).unwrap();
            let h = extension_histogram(&c, k).unwrap();
            let r = e_statistic_from(&h);
            let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
            ensure(rel(r.e, r.decomposition) <= 1e-6, || format!("k {k} seed {seed}: {} vs {}", r.e, r.decomposition))?;
            if n <= 14 {
                let (oe, od) = oracle_e(&c, k);
                ensure(rel(r.e, oe) <= 1e-9 && rel(r.decomposition, od) <= 1e-9, || format!("k {k} seed {seed}: oracle"))?;
            }
            let nf = n as f64;
            let centre = nf / 2f64.powi(k as i32);
            for cc in [0.05, 0.1, 0.2] {
                let ch = chebyshev_check(&h, r.e, cc).unwrap();
                let far = h.per_clique.iter().filter(|(_, x)| (*x as f64 - centre).abs() >= cc * nf).count() as f64;
                let bound = r.e / (cc * nf).powi(2);
                ensure(ch.holds && far <= bound, || format!("Chebyshev k {k} seed {seed} c {cc}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} instances, rel 1e-6, Chebyshev at c = 0.05, 0.1, 0.2"))
}

fn oracle_s(c: &TwoColoring) -> f64 {
    let n = c.n();
    let t = (n as f64 - 2.0) / 4.0;
    let mut s = 0.0;
    for u in 0..n {
        for v in u + 1..n {
            let col = c.color(u, v).unwrap();
            let cod = (0..n)
                .filter(|&w| w != u && w != v && c.color(u, w).unwrap() == col && c.color(v, w).unwrap() == col)
                .count() as f64;
            s += (cod - t).max(0.0);
        }
    }
    s
}

fn ac4() -> Outcome {
    for seed in 0..50u64 {
        let n = 3 + seed as usize % 18;
        let c = gen_random(n, 0.5, 7000 + seed).unwrap();
        let r = s_statistic(&c).unwrap();
        let s = oracle_s(&c);
        let m = naive_triangles(&c) as f64;
        let c3 = (n * (n - 1) * (n - 2) / 6) as f64;
        ensure(r.s == s, || format!("seed {seed}: S {} vs {s}", r.s))?;
        ensure(s / 3.0 >= m - c3 / 4.0 && r.holds, || format!("seed {seed}: inequality"))?;
    }
    let red6 = TwoColoring::monochromatic(6, Color::Red).unwrap();
    let r = s_statistic(&red6).unwrap();
    ensure(r.s / 3.0 == 15.0 && r.rhs == 15.0 && oracle_s(&red6) == 45.0, || format!("all-red K6: {} vs {}", r.s / 3.0, r.rhs))?;
    Ok("50/50 hold; all-red K6 gives 15 = 15".into())
}

fn ac5() -> Outcome {
    for (k, step) in [(3usize, 0.01), (4, 0.02)] {
        let g = min_f_grid(k, step).map_err(|e| e.to_string())?;
        let floor = 2f64.powi(1 - k as i32);
        ensure(g.value >= floor - 1e-12, || format!("k {k}: min {} below {floor}", g.value))?;
        ensure(g.argmin.iter().all(|x| (x - 0.5).abs() <= step + 1e-12), || format!("k {k}: argmin {:?}", g.argmin))?;
        // Independent check of the grid value at the centre.
        ensure((f_value(&vec![0.5; k]).unwrap() - floor).abs() <= 1e-12, || format!("k {k}: F(centre)"))?;
    }
    for k in 2..=6usize {
        let z = 2f64.powi(-(k as i32));
        ensure((psi(z, k).unwrap() - 2f64.powi(1 - k as i32)).abs() <= 1e-12, || format!("psi value k {k}"))?;
        ensure(psi_prime(z, k).unwrap().abs() <= 1e-9, || format!("psi' k {k}"))?;
        if k >= 3 {
            let h = 1e-3 * z;
            ensure(psi_prime(z - h, k).unwrap() * psi_prime(z + h, k).unwrap() < 0.0, || format!("psi' sign change k {k}"))?;
        }
    }
    let three = boundary_critical_values(3).unwrap();
    let four = boundary_critical_values(4).unwrap();
    let find = |v: &[bookram_core::analytic::CriticalValue], l: &str| v.iter().find(|c| c.label == l).map(|c| c.value);
    let got = [find(&three, "G"), find(&four, "G"), find(&four, "H")];
    for (g, want) in got.iter().zip([0.303, 0.159, 0.209]) {
        let g = g.ok_or("missing critical value")?;
        ensure((g - want).abs() <= 0.002, || format!("critical {g} vs {want}"))?;
    }
    let mut rng = Xs(424242);
    for i in 0..100 {
        let k = 2 + i % 5;
        let x: Vec<f64> = (0..k).map(|_| 0.01 + 0.98 * rng.unit()).collect();
        let g = grad_f(&x).unwrap();
        for j in 0..k {
            let h = 1e-6;
            let (mut lo, mut hi) = (x.clone(), x.clone());
            lo[j] -= h;
            hi[j] += h;
            let fd = (f_value(&hi).unwrap() - f_value(&lo).unwrap()) / (2.0 * h);
            ensure((fd - g[j]).abs() <= 1e-6, || format!("gradient at {x:?} coord {j}: {fd} vs {}", g[j]))?;
        }
    }
    Ok(format!(
        "grid minima at centre; critical values {:.4} {:.4} {:.4}; 100 gradients",
        got[0].unwrap(),
        got[1].unwrap(),
        got[2].unwrap()
    ))
}

fn ac6() -> Outcome {
    let d3 = delta0_estimate(3, 0.1, 0.005).map_err(|e| e.to_string())?;
    let d2 = delta0_estimate(2, 0.1, 0.005).map_err(|e| e.to_string())?;
    ensure(d3.value > 1e-6, || format!("k 3: {}", d3.value))?;
    ensure(d2.value <= 1e-12, || format!("k 2: {}", d2.value))?;
    Ok(format!("delta0(3) = {:.6e}, delta0(2) = {:.1e}", d3.value, d2.value))
}

fn ac7() -> Outcome {
    let t = Instant::now();
    for q in [5usize, 13, 17, 29] {
        let c = gen_paley(q).unwrap();
        ensure((0..q).all(|v| c.degree(v, Color::Red) == (q - 1) / 2), || format!("q {q}: degree"))?;
        let map = paley_self_complement_map(q).unwrap();
        let swapped = (0..q).all(|u| (u + 1..q).all(|v| c.color(map[u], map[v]).unwrap() != c.color(u, v).unwrap()));
        ensure(swapped, || format!("q {q}: map does not swap colours"))?;
        let brute = naive_max_book(&c, 2);
        let fast = max_book(&c, 2).unwrap();
        ensure(brute == (q as u64 - 5) / 4 && fast == brute, || format!("q {q}: max_book {fast}, brute {brute}"))?;
    }
    ensure(certify_book_free(&gen_paley(5).unwrap(), 2, 1).unwrap(), || "Paley(5) not book-free".into())?;
    within(t.elapsed(), 5.0, "Paley checks")?;
    Ok(format!("q = 5, 13, 17, 29 in {:.2}s", t.elapsed().as_secs_f64()))
}

fn ac8() -> Outcome {
    let t = Instant::now();
    let six = exhaustive_book_ramsey(6, 2, 1, false).map_err(|e| e.to_string())?;
    ensure(six == ExhaustiveOutcome::AllContain, || "K6 has a book-free colouring".into())?;
    let five = exhaustive_book_ramsey(5, 2, 1, false).map_err(|e| e.to_string())?;
    let ExhaustiveOutcome::Witness(w) = five else {
        return Err("no witness for n = 5".into());
    };
    ensure(w.n() == 5 && naive_max_book(&w, 2) == 0, || "witness has a book".into())?;
    ensure(certify_book_free(&w, 2, 1).unwrap(), || "witness fails certification".into())?;
    within(t.elapsed(), 2.0, "exhaustive search")?;
    Ok(format!("K6 all contain, K5 witness re-certifies, {:.2}s", t.elapsed().as_secs_f64()))
}

/// Parts with homogeneous blue cross pairs and a vertex outside the parts.
fn planted(sizes: &[usize], seed: u64) -> (TwoColoring, Vec<VertexSet>, usize) {
    let n: usize = sizes.iter().sum::<usize>() + 1;
    let parts = split(n, sizes);
    let part_of = |v: usize| parts.iter().position(|p| p.contains(v));
    let mut rng = Xs(seed | 1);
    let c = TwoColoring::from_fn(n, |i, j| match (part_of(i), part_of(j)) {
        (Some(a), Some(b)) if a != b => Color::Blue,
        _ => {
            if rng.unit() < 0.5 {
                Color::Blue
            } else {
                Color::Red
            }
        }
    })
    .unwrap();
    (c, parts, n - 1)
}

fn lower_regular_oracle(c: &TwoColoring, a: &VertexSet, b: &VertexSet, lambda: f64, gamma: f64) -> bool {
    let av = a.to_vec();
    let ta = ((gamma * av.len() as f64 - 1e-9).ceil() as usize).max(1);
    let tb = ((gamma * b.len() as f64 - 1e-9).ceil() as usize).max(1);
    for mask in 1u32..(1 << av.len()) {
        if (mask.count_ones() as usize) < ta {
            continue;
        }
        let xs: Vec<usize> = (0..av.len()).filter(|&i| mask >> i & 1 == 1).map(|i| av[i]).collect();
        let mut degs: Vec<usize> = b.iter().map(|y| xs.iter().filter(|&&x| c.is_blue(x, y)).count()).collect();
        degs.sort_unstable();
        let e: usize = degs[..tb].iter().sum();
        if (e as f64) < lambda * (xs.len() * tb) as f64 - 1e-12 {
            return false;
        }
    }
    true
}

fn ac9() -> Outcome {
    // Counting lemma on certified triples.
    let (mut counting, mut seed) = (0, 0u64);
    while counting < 50 {
        seed += 1;
        ensure(seed < 20_000, || format!("only {counting} certified counting instances"))?;
        let c = xs_coloring(12, 0.9, seed);
        let parts = split(12, &[4, 4, 4]);
        match verify_counting_lemma(&c, &parts, 0.5, Color::Blue) {
            Ok(r) => {
                let mut brute = 0u64;
                for a in parts[0].iter() {
                    for b in parts[1].iter() {
                        for d in parts[2].iter() {
                            brute += u64::from(c.is_blue(a, b) && c.is_blue(a, d) && c.is_blue(b, d));
                        }
                    }
                }
                ensure(r.count == brute && r.holds, || format!("counting seed {seed}: {r:?}"))?;
                counting += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    // Random-clique bound on planted instances.
    let mut clique = 0;
    for seed in 0..50u64 {
        let k = 2 + seed as usize % 2;
        let sizes: Vec<usize> = (0..k).map(|i| 3 + (seed as usize + i) % 4).collect();
        let (c, parts, u) = planted(&sizes, seed);
        let delta = 0.5;
        let eta = delta * delta * delta / (k * k) as f64;
        match verify_random_clique_bound(&c, &parts, u, eta, delta, Color::Blue).map_err(|e| e.to_string())? {
            RandomCliqueOutcome::Checked { probability, holds, .. } => {
                let prod: f64 = parts
                    .iter()
                    .map(|p| p.iter().filter(|&v| c.is_blue(u, v)).count() as f64 / p.len() as f64)
                    .product();
                ensure(holds && (probability - prod).abs() < 1e-12, || format!("clique seed {seed}"))?;
                clique += 1;
            }
            other => return Err(format!("clique seed {seed}: {other:?}")),
        }
    }
    // Extension bound on certified pairs.
    let (mut ext, mut seed) = (0, 0u64);
    while ext < 50 {
        seed += 1;
        ensure(seed < 20_000, || format!("only {ext} certified extension instances"))?;
        let r = 2 + seed as usize % 2;
        let (lambda, gamma) = if r == 2 { (0.5, 0.2) } else { (0.5, 0.1) };
        let c = xs_coloring(12, 0.85, seed);
        let parts = split(12, &[6, 6]);
        match verify_extension_bound(&c, &parts[0], &parts[1], lambda, gamma, r, Color::Blue) {
            Ok(rep) => {
                let cliques: Vec<Vec<usize>> = naive_cliques(&c, r, Color::Blue)
                    .into_iter()
                    .filter(|q| q.iter().all(|&v| parts[1].contains(v)))
                    .collect();
                let brute: usize = parts[0]
                    .iter()
                    .map(|a| cliques.iter().filter(|q| q.iter().all(|&v| c.is_blue(a, v))).count())
                    .sum();
                ensure(rep.extensions == brute as u64 && rep.holds, || format!("extension seed {seed}: {rep:?}"))?;
                ext += 1;
            }
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    // Irregular witnesses re-validate.
    let mut rng = Xs(99);
    let mut irregular = 0;
    for trial in 0..200u64 {
        let c = xs_coloring(16, rng.unit(), trial);
        let x = VertexSet::from_indices(16, (0..16).filter(|_| rng.unit() < 0.5)).unwrap();
        let y = VertexSet::from_indices(16, (0..16).filter(|v| !x.contains(*v))).unwrap();
        if x.is_empty() || y.is_empty() {
            continue;
        }
        let kind = match trial % 3 {
            0 => RegularityKind::Eps { eps: 0.2 + 0.3 * rng.unit() },
            1 => RegularityKind::Lower { lambda: rng.unit(), gamma: 0.2 + 0.3 * rng.unit() },
            _ => RegularityKind::PEps { p: rng.unit(), eps: 0.2 + 0.3 * rng.unit() },
        };
        let w = check_regularity(&c, &x, &y, kind, Color::Blue, DEFAULT_SUBSET_CAP).map_err(|e| e.to_string())?;
        if !w.is_regular() {
            irregular += 1;
            ensure(w.recheck(&c, &x, &y).unwrap(), || format!("witness of trial {trial} does not re-validate"))?;
        }
    }
    ensure(irregular >= 50, || format!("only {irregular} irregular witnesses"))?;
    // Lower-regularization postconditions.
    let params = LowerRegParams { beta: 0.5, gamma: 0.19, lambda: 0.04, eta: 1e-12, k: 2 };
    let mut lowerreg = 0;
    for seed in 0..40u64 {
        let na = 6 + seed as usize % 4;
        let nb = 146 + seed as usize % 10;
        let n = na + nb;
        let p = [0.02, 0.5, 0.9, 0.97, 0.995][seed as usize % 5];
        let mut rng = Xs(seed * 31 + 7);
        let c = TwoColoring::from_fn(n, |i, j| {
            let blue = if j < na {
                false
            } else if i < na {
                rng.unit() < p
            } else {
                rng.unit() < 0.5
            };
            if blue {
                Color::Blue
            } else {
                Color::Red
            }
        })
        .unwrap();
        let a = VertexSet::range(n, 0, na).unwrap();
        let b = VertexSet::range(n, na, n).unwrap();
        let out = lower_regularize(&c, &a, &b, params).map_err(|e| e.to_string())?;
        let ok = match &out.result {
            LowerRegResult::RedBook { clique, pages } => {
                let expect: Vec<usize> = b.iter().filter(|&v| clique.iter().all(|&q| !c.is_blue(q, v))).collect();
                pages.to_vec() == expect && pages.len() as f64 >= 0.5 * nb as f64
            }
            LowerRegResult::LowerRegularPair { a: a2, b: b2 } => {
                a2.is_subset(&a) && b2.is_subset(&b) && lower_regular_oracle(&c, a2, b2, 0.04, 0.19)
            }
            LowerRegResult::Inapplicable(_) => continue,
        };
        ensure(ok && out.postcondition_holds && out.iterations.iter().all(|r| r.properties_hold()), || {
            format!("lowerreg seed {seed}")
        })?;
        lowerreg += 1;
        if lowerreg == 20 {
            break;
        }
    }
    ensure(lowerreg == 20, || format!("only {lowerreg} lower-regularization instances"))?;
    Ok(format!(
        "counting {counting}/50, random clique {clique}/50, extension {ext}/50, {irregular} witnesses, lowerreg {lowerreg}/20"
    ))
}

fn ac10() -> Outcome {
    for seed in 0..50u64 {
        let n = 4 + seed as usize % 9;
        let c = gen_random(n, 0.5, 9000 + seed).unwrap();
        let exact = theta_exact(&c).unwrap().theta_star;
        ensure(exact == ternary_theta(&c), || format!("seed {seed}: exact vs ternary oracle"))?;
        let h = theta_heuristic(&c, 8, seed).unwrap().theta_star;
        ensure(h <= exact, || format!("seed {seed}: heuristic {h} > exact {exact}"))?;
    }
    let b8 = TwoColoring::monochromatic(8, Color::Blue).unwrap();
    let t8 = theta_exact(&b8).unwrap().theta_star;
    ensure(t8 == 0.125, || format!("all-blue K8: {t8}"))?;
    let r10 = TwoColoring::monochromatic(10, Color::Red).unwrap();
    let tj = theta_heuristic(&gen_blue_join(&r10, &r10), 8, 1).unwrap().theta_star;
    ensure(tj >= 0.12, || format!("blue join: {tj}"))?;
    let mut confirmed = 0;
    for seed in 0..200u64 {
        let c = xs_coloring(12, 0.5, seed);
        let mut parts = split(12, &[4, 4, 4]);
        parts.push(VertexSet::empty(12));
        if let PartitionOutcome::Checked { theta_star, holds, .. } =
            check_partition_quasirandom(&c, &parts, 0.45, 0.9).map_err(|e| e.to_string())?
        {
            ensure(holds && theta_star == ternary_theta(&c), || format!("certificate seed {seed}"))?;
            confirmed += 1;
            if confirmed == 5 {
                break;
            }
        }
    }
    ensure(confirmed == 5, || format!("only {confirmed} certificates"))?;
    Ok(format!("50/50 heuristic <= exact; K8 0.125; join {tj:.4}; {confirmed} certificates"))
}

fn bookram(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_bookram"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn bookram")
}

fn ac11(suite_start: Instant) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    for (format, name) in [("text", "a.clr"), ("binary", "a.bin")] {
        let o = bookram(&["gen", "--kind", "random", "--n", "37", "--seed", "3", "--format", format, "-o", name], d);
        ensure(o.status.code() == Some(0), || format!("gen {format} failed"))?;
        let bytes = fs::read(d.join(name)).map_err(|e| e.to_string())?;
        let c = io::read_any(&bytes).map_err(|e| e.to_string())?;
        ensure(io::write(&c, format.parse().unwrap()) == bytes, || format!("{format} round trip differs"))?;
    }
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let p13 = fixtures.join("p13.clr");
    let p13 = p13.to_str().unwrap();
    let code = |args: &[&str]| bookram(args, d).status.code();
    let clean = code(&["verify", "identities", p13, "-k", "2"]);
    let a_clean = code(&["verify", "identities", "a.bin", "-k", "3"]);
    let good = fixtures.join("p13_books_k2.txt");
    let with_good = code(&["verify", "identities", p13, "-k", "2", "--histogram", good.to_str().unwrap()]);
    let bad = fixtures.join("p13_books_k2_corrupted.txt");
    let with_bad = code(&["verify", "identities", p13, "-k", "2", "--histogram", bad.to_str().unwrap()]);
    ensure(clean == Some(0) && a_clean == Some(0) && with_good == Some(0), || "clean input did not exit 0".into())?;
    ensure(with_bad == Some(1), || format!("corrupted histogram exited {with_bad:?}"))?;
    within(suite_start.elapsed(), 120.0, "acceptance suite")?;
    Ok(format!("round trips identical; exit 0 clean, 1 corrupted; suite {:.1}s", suite_start.elapsed().as_secs_f64()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: Vec<(&str, &str, Box<dyn Fn() -> Outcome>)> = vec![
        ("AC-1", "Goodman exactness", Box::new(ac1)),
        ("AC-2", "counting identities I1, I2", Box::new(ac2)),
        ("AC-3", "E-decomposition and Chebyshev bound", Box::new(ac3)),
        ("AC-4", "S-inequality", Box::new(ac4)),
        ("AC-5", "analytic minimum, psi, critical values, gradient", Box::new(ac5)),
        ("AC-6", "stability gap", Box::new(ac6)),
        ("AC-7", "Paley structure", Box::new(ac7)),
        ("AC-8", "exhaustive book Ramsey", Box::new(ac8)),
        ("AC-9", "regularity verifiers", Box::new(ac9)),
        ("AC-10", "quasirandomness", Box::new(ac10)),
        ("AC-11", "CLI round trip and exit codes", Box::new(move || ac11(start))),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check) in &criteria {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {id} {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id} {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
