use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use bookram_core::analytic::{boundary_critical_values, delta0_estimate, min_f_grid};
use bookram_core::books::{
    count_mono_cliques, extension_histogram, goodman_triangles, HistogramSummary, IdentityCheck,
};
use bookram_core::constructions::{gen_blue_join, gen_paley, gen_random};
use bookram_core::io::{self, Format};
use bookram_core::quasi::{
    chebyshev_check, codegree_deviation, e_statistic_from, s_statistic, theta_exact_with_limit,
    theta_heuristic, QuasiReport,
};
use bookram_core::regularity::{
    check_regularity, lower_regularize, LowerRegParams, LowerRegResult, RegularityKind,
};
use bookram_core::search::{
    anneal_parallel, exhaustive_book_ramsey, Checkpointer, ExhaustiveOutcome, ParallelConfig,
    Schedule,
};
use bookram_core::{Color, TwoColoring, VertexSet};

use crate::report::Report;
use crate::{
    Analytic, Analyze, Cli, ColorArg, Command, FormatArg, GenArgs, GenKind, KindArg, Regularity,
    Search, Verify,
};

pub struct Outcome {
    pub text: String,
    /// False when a mathematical verification failed.
    pub verified: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, verified: true }
    }
}

impl From<ColorArg> for Color {
    fn from(c: ColorArg) -> Self {
        match c {
            ColorArg::Red => Color::Red,
            ColorArg::Blue => Color::Blue,
        }
    }
}

fn color_name(c: Color) -> &'static str {
    match c {
        Color::Red => "red",
        Color::Blue => "blue",
    }
}

fn load(path: &Path) -> Result<TwoColoring> {
    io::load(path).with_context(|| format!("reading {}", path.display()))
}

fn list(s: &VertexSet) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    v.join(",")
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let tsv = cli.tsv;
    match &cli.command {
        Command::Gen(args) => gen(args, tsv).map(Outcome::ok),
        Command::Analyze(a) => analyze(a, tsv).map(Outcome::ok),
        Command::Regularity(r) => regularity(r, tsv).map(Outcome::ok),
        Command::Analytic(a) => analytic(a, tsv).map(Outcome::ok),
        Command::Search(s) => search(s, tsv).map(Outcome::ok),
        Command::Verify(Verify::Identities { file, k, histogram }) => {
            verify_identities(file, *k, histogram.as_deref(), tsv)
        }
    }
}

fn gen(args: &GenArgs, tsv: bool) -> Result<String> {
    let mut r = Report::new("gen", tsv);
    let c = match args.kind {
        GenKind::Random => {
            let n = args.n.context("--kind random needs --n")?;
            let seed = args.seed.context("--kind random needs an explicit --seed")?;
            r.config("kind", "random").config("n", n).config("p", args.p).config("seed", seed);
            gen_random(n, args.p, seed)?
        }
        GenKind::Paley => {
            let q = args.q.context("--kind paley needs --q")?;
            r.config("kind", "paley").config("q", q);
            gen_paley(q)?
        }
        GenKind::Join => {
            let (Some(left), Some(right)) = (&args.left, &args.right) else {
                bail!("--kind join needs --left and --right");
            };
            r.config("kind", "join")
                .config("left", left.display())
                .config("right", right.display());
            gen_blue_join(&load(left)?, &load(right)?)
        }
        GenKind::Mono => {
            let n = args.n.context("--kind mono needs --n")?;
            let color: Color = args.color.into();
            r.config("kind", "mono").config("n", n).config("color", color_name(color));
            TwoColoring::monochromatic(n, color)?
        }
    };
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Binary => Format::Binary,
    };
    io::save(&c, &args.output, format).with_context(|| format!("writing {}", args.output.display()))?;
    r.config("output", args.output.display());
    r.kv("n", c.n()).kv("red_edges", c.edge_count(Color::Red)).kv("blue_edges", c.edge_count(Color::Blue));
    Ok(r.finish())
}

fn quasi_lines(r: &mut Report, q: &QuasiReport) {
    r.kv("theta_star", q.theta_star)
        .kv("deviation", q.deviation)
        .kv("witness_x", list(&q.witness_x))
        .kv("witness_y", list(&q.witness_y));
}

fn analyze(a: &Analyze, tsv: bool) -> Result<String> {
    match a {
        Analyze::Books { file, k } => {
            let c = load(file)?;
            let mut r = Report::new("analyze books", tsv);
            r.config("file", file.display()).config("k", k);
            let h = extension_histogram(&c, *k)?;
            Ok(h.summary().to_text(&r.config_lines(), tsv))
        }
        Analyze::Quasi { file, exact: _, heuristic, iters, seed, exact_limit } => {
            let c = load(file)?;
            let mut r = Report::new("analyze quasi", tsv);
            r.config("file", file.display());
            let q = if *heuristic {
                let seed = seed.context("--heuristic needs --seed")?;
                r.config("mode", "heuristic").config("iters", iters).config("seed", seed);
                theta_heuristic(&c, *iters, seed)?
            } else {
                r.config("mode", "exact").config("exact_limit", exact_limit);
                theta_exact_with_limit(&c, *exact_limit)?
            };
            r.kv("n", c.n());
            quasi_lines(&mut r, &q);
            Ok(r.finish())
        }
        Analyze::Stats { file, k } => {
            let c = load(file)?;
            let mut r = Report::new("analyze stats", tsv);
            r.config("file", file.display()).config("k", k);
            let h = extension_histogram(&c, *k)?;
            r.kv("n", c.n());
            if *k >= 2 {
                let e = e_statistic_from(&h);
                r.kv("E", e.e).kv("E_decomposition", e.decomposition);
                r.row(["c", "far", "bound"]);
                for cc in [0.05, 0.1, 0.2] {
                    let ch = chebyshev_check(&h, e.e, cc)?;
                    r.row([cc.to_string(), ch.far.to_string(), ch.bound.to_string()]);
                }
            }
            let s = s_statistic(&c)?;
            let cd = codegree_deviation(&c)?;
            r.kv("S", s.s)
                .kv("mono_triangles", s.mono_triangles)
                .kv("codeg_dev", cd.codeg_dev)
                .kv("deg_dev", cd.deg_dev);
            Ok(r.finish())
        }
        Analyze::Goodman { file } => {
            let c = load(file)?;
            let mut r = Report::new("analyze goodman", tsv);
            r.config("file", file.display());
            let g = goodman_triangles(&c)?;
            let (red, blue) = count_mono_cliques(&c, 3)?;
            r.kv("n", c.n())
                .kv("goodman_count", g.count)
                .kv("enumerated_red", red)
                .kv("enumerated_blue", blue)
                .kv("centered", g.centered)
                .kv("centered_formula", g.centered_formula)
                .kv("agrees", g.count == red + blue && g.centered_holds);
            Ok(r.finish())
        }
    }
}

fn kind_text(kind: &RegularityKind) -> String {
    match kind {
        RegularityKind::Eps { eps } => format!("eps eps={eps}"),
        RegularityKind::Lower { lambda, gamma } => format!("lower lambda={lambda} gamma={gamma}"),
        RegularityKind::PEps { p, eps } => format!("peps p={p} eps={eps}"),
    }
}

fn regularity(reg: &Regularity, tsv: bool) -> Result<String> {
    match reg {
        Regularity::Check { file, kind, x, y, eps, lambda, gamma, p, color, cap } => {
            let c = load(file)?;
            let xs = VertexSet::parse_list(c.n(), x)?;
            let ys = VertexSet::parse_list(c.n(), y)?;
            let need = |v: Option<f64>, name: &str| v.with_context(|| format!("this kind needs --{name}"));
            let kind = match kind {
                KindArg::Eps => RegularityKind::Eps { eps: need(*eps, "eps")? },
                KindArg::Lower => RegularityKind::Lower {
                    lambda: need(*lambda, "lambda")?,
                    gamma: need(*gamma, "gamma")?,
                },
                KindArg::Peps => RegularityKind::PEps { p: need(*p, "p")?, eps: need(*eps, "eps")? },
            };
            let color: Color = (*color).into();
            let mut r = Report::new("regularity check", tsv);
            r.config("file", file.display())
                .config("kind", kind_text(&kind))
                .config("x", list(&xs))
                .config("y", list(&ys))
                .config("color", color_name(color))
                .config("cap", cap);
            let w = check_regularity(&c, &xs, &ys, kind, color, *cap)?;
            r.kv("pair_density", w.pair_density)
                .kv("thresholds", format!("{},{}", w.thresholds.0, w.thresholds.1))
                .kv("subsets_scanned", w.subsets_scanned)
                .kv("verdict", if w.is_regular() { "regular" } else { "irregular" });
            if let Some(v) = &w.violating_pair {
                r.kv("witness_x", list(&v.x)).kv("witness_y", list(&v.y)).kv("witness_density", v.density);
            }
            Ok(r.finish())
        }
        Regularity::Lowerreg { file, a, b, beta, gamma, lambda, eta, k } => {
            let c = load(file)?;
            let av = VertexSet::parse_list(c.n(), a)?;
            let bv = VertexSet::parse_list(c.n(), b)?;
            let params = LowerRegParams { beta: *beta, gamma: *gamma, lambda: *lambda, eta: *eta, k: *k };
            let mut r = Report::new("regularity lowerreg", tsv);
            r.config("file", file.display())
                .config("a", list(&av))
                .config("b", list(&bv))
                .config("beta", beta)
                .config("gamma", gamma)
                .config("lambda", lambda)
                .config("eta", eta)
                .config("k", k);
            let out = lower_regularize(&c, &av, &bv, params)?;
            r.kv("beta_prime", out.beta_prime).kv("rho", out.rho).kv("ell_star", out.ell_star);
            r.row(["step", "a_size", "b_size", "properties"]);
            for it in &out.iterations {
                r.row([
                    it.step.to_string(),
                    it.a_size.to_string(),
                    it.b_size.to_string(),
                    it.properties_hold().to_string(),
                ]);
            }
            match &out.result {
                LowerRegResult::RedBook { clique, pages } => {
                    let cl: Vec<String> = clique.iter().map(|v| v.to_string()).collect();
                    r.kv("result", "red_book").kv("clique", cl.join(",")).kv("pages", list(pages));
                }
                LowerRegResult::LowerRegularPair { a, b } => {
                    r.kv("result", "lower_regular_pair").kv("a_prime", list(a)).kv("b_prime", list(b));
                }
                LowerRegResult::Inapplicable(reason) => {
                    r.kv("result", "inapplicable").kv("reason", reason);
                }
            }
            r.kv("postcondition", out.postcondition_holds);
            Ok(r.finish())
        }
    }
}

fn point(x: &[f64]) -> String {
    let v: Vec<String> = x.iter().map(|t| format!("{t:.6}")).collect();
    v.join(",")
}

fn analytic(a: &Analytic, tsv: bool) -> Result<String> {
    match a {
        Analytic::MinF { k, step } => {
            let mut r = Report::new("analytic min-F", tsv);
            r.config("k", k).config("step", step);
            let g = min_f_grid(*k, *step)?;
            r.kv("grid_points_per_axis", g.m + 1)
                .kv("min_value", g.value)
                .kv("argmin", point(&g.argmin))
                .kv("boundary_min", g.boundary_value)
                .kv("floor", 2f64.powi(1 - *k as i32));
            Ok(r.finish())
        }
        Analytic::Delta0 { k, eps0, step } => {
            let mut r = Report::new("analytic delta0", tsv);
            r.config("k", k).config("eps0", eps0).config("step", step);
            let d = delta0_estimate(*k, *eps0, *step)?;
            r.kv("delta0", d.value).kv("argmin", point(&d.argmin));
            Ok(r.finish())
        }
        Analytic::Critical { k } => {
            let mut r = Report::new("analytic critical", tsv);
            r.config("k", k);
            r.row(["label", "free_coords", "point", "value"]);
            for cv in boundary_critical_values(*k)? {
                r.row([cv.label.to_string(), cv.point.len().to_string(), point(&cv.point), format!("{:.9}", cv.value)]);
            }
            Ok(r.finish())
        }
    }
}

fn search(s: &Search, tsv: bool) -> Result<String> {
    match s {
        Search::Anneal { n, k, iters, seed, out, chains, exchange, t0, alpha, t_min, reheat } => {
            let schedule = Schedule { t0: *t0, alpha: *alpha, t_min: *t_min, reheat_after: *reheat };
            let mut r = Report::new("search anneal", tsv);
            r.config("n", n)
                .config("k", k)
                .config("iters", iters)
                .config("seed", seed)
                .config("chains", chains)
                .config("exchange", exchange)
                .config("t0", t0)
                .config("alpha", alpha)
                .config("t_min", t_min)
                .config("reheat", reheat)
                .config("out", out.display());
            let cp = Checkpointer::create(out, *seed, *k)?;
            let mut failure = None;
            let cfg = ParallelConfig { chains: *chains, exchange_every: *exchange };
            let state = anneal_parallel(*n, *k, *iters, *seed, schedule, cfg, |imp| {
                if failure.is_none() {
                    if let Err(e) = cp.record(imp) {
                        failure = Some(e);
                    }
                }
            })?;
            if let Some(e) = failure {
                return Err(e).context("writing checkpoint");
            }
            r.kv("best_max_book", state.best_score.max_book)
                .kv("best_attaining", state.best_score.attaining)
                .kv("best_iteration", state.best_iteration)
                .kv("iterations", state.iterations);
            Ok(r.finish())
        }
        Search::Exhaustive { n, k, pages, allow_large } => {
            let mut r = Report::new("search exhaustive", tsv);
            r.config("n", n).config("k", k).config("pages", pages).config("allow_large", allow_large);
            match exhaustive_book_ramsey(*n, *k, *pages, *allow_large)? {
                ExhaustiveOutcome::AllContain => {
                    r.kv("result", "all_contain");
                }
                ExhaustiveOutcome::Witness(c) => {
                    r.kv("result", "witness").raw(&io::write_text(&c));
                }
            }
            Ok(r.finish())
        }
    }
}

fn check_line(r: &mut Report, ok: &mut bool, c: &IdentityCheck) {
    *ok &= c.holds;
    r.row([
        if c.holds { "PASS" } else { "FAIL" }.to_string(),
        c.name.to_string(),
        format!("lhs={}", c.lhs),
        format!("rhs={}", c.rhs),
    ]);
}

fn verify_identities(file: &Path, k: usize, histogram: Option<&Path>, tsv: bool) -> Result<Outcome> {
    let c = load(file)?;
    let mut r = Report::new("verify identities", tsv);
    r.config("file", file.display()).config("k", k);
    if let Some(h) = histogram {
        r.config("histogram", h.display());
    }
    let h = extension_histogram(&c, k)?;
    let mut ok = true;
    if c.n() >= 3 {
        let g = goodman_triangles(&c)?;
        let m = count_mono_cliques(&c, 3)?;
        let direct = m.0 + m.1;
        check_line(
            &mut r,
            &mut ok,
            &IdentityCheck {
                name: "Goodman M = enumerated triangles",
                lhs: g.count as f64,
                rhs: direct as f64,
                holds: g.count == direct && g.centered_holds,
            },
        );
    }
    check_line(&mut r, &mut ok, &h.identity_i1());
    check_line(&mut r, &mut ok, &h.identity_i2());
    if k >= 2 {
        let e = e_statistic_from(&h);
        check_line(
            &mut r,
            &mut ok,
            &IdentityCheck { name: "E decomposition", lhs: e.e, rhs: e.decomposition, holds: e.exact_match && e.holds },
        );
    }
    if c.n() >= 3 {
        let s = s_statistic(&c)?;
        check_line(
            &mut r,
            &mut ok,
            &IdentityCheck { name: "S/3 >= M - C(N,3)/4", lhs: s.s / 3.0, rhs: s.rhs, holds: s.holds },
        );
    }
    if let Some(path) = histogram {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let saved = HistogramSummary::from_text(&text).with_context(|| format!("parsing {}", path.display()))?;
        let t = &h.totals;
        let sum_ext: u64 = saved.counts.iter().map(|(e, m)| e * m).sum();
        let sum_c2: u64 = saved.counts.iter().map(|(e, m)| e * e.saturating_sub(1) / 2 * m).sum();
        let cliques: u64 = saved.counts.values().sum();
        let i1 = (saved.k as u64 + 1) * t.mono_k1;
        let checks = [
            IdentityCheck {
                name: "histogram I1 sum_ext = (k+1) M(K_{k+1})",
                lhs: sum_ext as f64,
                rhs: i1 as f64,
                holds: saved.k == k && sum_ext == i1,
            },
            IdentityCheck {
                name: "histogram I2 sum C(ext,2) = M(K_{k+2}-e)",
                lhs: sum_c2 as f64,
                rhs: t.near_cliques as f64,
                holds: saved.k == k && sum_c2 == t.near_cliques,
            },
            IdentityCheck {
                name: "histogram clique total = M(K_k)",
                lhs: cliques as f64,
                rhs: t.mono_k() as f64,
                holds: cliques == t.mono_k() && cliques == saved.mono_k_red + saved.mono_k_blue,
            },
            IdentityCheck {
                name: "histogram fields match the coloring",
                lhs: f64::from(u8::from(saved == h.summary())),
                rhs: 1.0,
                holds: saved == h.summary(),
            },
        ];
        for chk in &checks {
            check_line(&mut r, &mut ok, chk);
        }
    }
    r.kv("verdict", if ok { "pass" } else { "fail" });
    Ok(Outcome { text: r.finish(), verified: ok })
}
