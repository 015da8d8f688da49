//! `meancycle`: sample instances, solve them, and run the Monte Carlo and
//! analytic reproductions.
//!
//! Every `c` value is on the scaled convention: `c` stands for the weight
//! `c / n`. All logarithms are natural.

mod parse;
mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use meancycle::analytic::{
    expected_uniform_light_count, limit_cdf, supercritical_bounds, tail_asymptote,
    variance_ratio_bound, LimitLaw, Objective, PmfEvaluator, SupercriticalParams,
};
use meancycle::experiments::{
    compare_to_limit, emit, emit_string, poisson_check, run_trials,
    supercritical_length_experiment, walk_band_experiment, ExperimentConfig, Format, Table,
    Tabular, TrialLog,
};
use meancycle::instances::{read_instance, sample_complete, write_binary, write_csv};
use meancycle::solvers::{SolverKind, BRUTE_FORCE_MAX_N};
use meancycle::{GraphInstance, Orientation};

const AFTER_HELP: &str = "Units: every c is a scaled weight (c stands for weight c/n). \
Logarithms are natural. The seed resolves as --seed, then MEANCYCLE_SEED, then 0.";

#[derive(Parser, Debug)]
#[command(name = "meancycle", version, about, after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one sampled (or loaded) instance.
    #[command(after_help = AFTER_HELP)]
    Solve(SolveArgs),
    /// Sample an instance and write it out.
    #[command(after_help = AFTER_HELP)]
    Sample(SampleArgs),
    /// Count c-light cycles per length in one instance.
    #[command(after_help = AFTER_HELP)]
    Census(CensusArgs),
    /// Limiting length probabilities p_k with their tail asymptotes.
    #[command(name = "analytic-table", after_help = AFTER_HELP)]
    AnalyticTable(TableArgs),
    /// Limiting CDF curves Pr[n * optimum <= c].
    #[command(name = "cdf-curve", after_help = AFTER_HELP)]
    CdfCurve(CurveArgs),
    /// Monte Carlo trials compared with the limit law.
    #[command(after_help = AFTER_HELP)]
    Experiment(ExperimentArgs),
    /// Light-cycle counts against a Poisson law.
    #[command(after_help = AFTER_HELP)]
    Poisson(PoissonArgs),
    /// Uniform lightness of random cycles and the Brownian band.
    #[command(after_help = AFTER_HELP)]
    Walkband(WalkArgs),
    /// Behaviour above the threshold 1/e, simulated and analytic.
    #[command(after_help = AFTER_HELP)]
    Supercritical(SuperArgs),
}

#[derive(Args, Debug, Clone)]
struct SeedArg {
    /// Base seed (also read from MEANCYCLE_SEED).
    #[arg(long, env = "MEANCYCLE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct OrientArgs {
    /// Directed complete graph (default).
    #[arg(long, conflicts_with = "undirected")]
    directed: bool,
    /// Undirected complete graph.
    #[arg(long)]
    undirected: bool,
}

impl OrientArgs {
    fn get(&self) -> Orientation {
        if self.undirected {
            Orientation::Undirected
        } else {
            Orientation::Directed
        }
    }
}

#[derive(Args, Debug, Clone)]
struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OutFormat {
    Csv,
    Json,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SolverArg {
    Karp,
    Howard,
    BruteForce,
    Pruned,
    Light,
    Minmax,
    All,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Number of vertices.
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    orient: OrientArgs,
    #[arg(long, value_enum, default_value_t = SolverArg::All)]
    solver: SolverArg,
    /// Read the instance from a CSV or binary file instead of sampling.
    #[arg(long, conflicts_with = "n")]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum InstanceOut {
    Csv,
    Binary,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    orient: OrientArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InstanceOut::Csv)]
    format: InstanceOut,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    orient: OrientArgs,
    /// Lightness level: mean weight at most c/n.
    #[arg(long)]
    c: f64,
    #[arg(long)]
    kmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Variant(s), e.g. directed-mean; all four when omitted.
    #[arg(long, value_delimiter = ',')]
    variant: Vec<String>,
    /// Lengths, e.g. 2..10,100.
    #[arg(long, default_value = "2..10,100", value_parser = parse::k_list)]
    k: std::vec::Vec<usize>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long, value_delimiter = ',')]
    variant: Vec<String>,
    /// Grid a:b:step in scaled units; default 0:0.5:0.01 (mean) or 0:1.2:0.01 (max).
    #[arg(long, value_parser = parse::grid)]
    grid: Option<std::vec::Vec<f64>>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    orient: OrientArgs,
    #[arg(long, default_value = "mean")]
    objective: Objective,
    /// CDF grid a:b:step in scaled units (or a single --c value).
    #[arg(long, value_parser = parse::grid, conflicts_with = "c")]
    grid: Option<std::vec::Vec<f64>>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = 10)]
    kmax: usize,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Also write the per-trial records here (JSON if the name ends in .json, else CSV).
    #[arg(long)]
    records: Option<PathBuf>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct PoissonArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    orient: OrientArgs,
    /// Lightness level c0.
    #[arg(long)]
    c: f64,
    #[arg(long)]
    kmax: usize,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct WalkArgs {
    /// Cycle length.
    #[arg(long = "L")]
    l: usize,
    /// Uniformity slack; defaults to sqrt(L).
    #[arg(long = "A")]
    a: Option<f64>,
    #[arg(long)]
    trials: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct SuperArgs {
    /// Vertex counts, comma separated (each >= 16).
    #[arg(long, value_parser = parse::n_list)]
    n: std::vec::Vec<usize>,
    /// Trials per n; 0 prints only the analytic bounds.
    #[arg(long, default_value_t = 0)]
    trials: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    orient: OrientArgs,
    /// Uniformity slack A for the expected-count evaluation.
    #[arg(long = "A", requires_all = ["delta", "l"])]
    a: Option<f64>,
    /// Relative excess over 1/e.
    #[arg(long)]
    delta: Option<f64>,
    /// Window end L2 (the window is (L2 - 1, L2]).
    #[arg(long = "L")]
    l: Option<u64>,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[command(flatten)]
    out: OutArgs,
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn announce(config: serde_json::Value) {
    eprintln!("config: {config}");
}

fn run(cmd: Command) -> AnyResult<()> {
    match cmd {
        Command::Solve(a) => solve(a),
        Command::Sample(a) => sample(a),
        Command::Census(a) => census(a),
        Command::AnalyticTable(a) => analytic_table(a),
        Command::CdfCurve(a) => cdf_curve(a),
        Command::Experiment(a) => experiment(a),
        Command::Poisson(a) => poisson(a),
        Command::Walkband(a) => walkband(a),
        Command::Supercritical(a) => supercritical(a),
    }
}

fn write_text(out: Option<&Path>, text: &str) -> AnyResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| meancycle::Error::Io {
            path: p.to_path_buf(),
            source: e,
        })?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn report<R: Tabular + ?Sized>(r: &R, out: &OutArgs) -> AnyResult<()> {
    let format = match out.format {
        OutFormat::Csv => Format::Csv,
        OutFormat::Json => Format::Json,
        OutFormat::Svg => return Err("svg output is only available for cdf-curve".into()),
    };
    match &out.out {
        Some(p) => {
            for f in emit(r, p, format)? {
                eprintln!("wrote {}", f.display());
            }
        }
        None => write_text(None, &emit_string(r, format)?)?,
    }
    Ok(())
}

fn variants(names: &[String]) -> AnyResult<Vec<LimitLaw>> {
    if names.is_empty() {
        return Ok(LimitLaw::ALL.to_vec());
    }
    Ok(names.iter().map(|s| s.parse()).collect::<Result<_, _>>()?)
}

fn solve(a: SolveArgs) -> AnyResult<()> {
    let g: GraphInstance = match &a.input {
        Some(p) => read_instance(p)?,
        None => sample_complete(a.n.expect("clap requires n"), a.orient.get(), a.seed.seed)?,
    };
    let kinds: Vec<SolverKind> = match a.solver {
        SolverArg::Karp => vec![SolverKind::Karp],
        SolverArg::Howard => vec![SolverKind::Howard],
        SolverArg::BruteForce => vec![SolverKind::BruteForce],
        SolverArg::Pruned => vec![SolverKind::PrunedKarp],
        SolverArg::Light => vec![SolverKind::LightSearch],
        SolverArg::Minmax => vec![SolverKind::ThresholdProcess],
        SolverArg::All if g.n() <= BRUTE_FORCE_MAX_N => {
            vec![SolverKind::Karp, SolverKind::Howard, SolverKind::BruteForce]
        }
        SolverArg::All => vec![SolverKind::Karp, SolverKind::Howard, SolverKind::PrunedKarp],
    };
    announce(json!({
        "command": "solve", "n": g.n(), "orientation": g.orientation(), "seed": g.seed(),
        "input": a.input, "solvers": kinds,
    }));
    let results = kinds
        .iter()
        .map(|k| k.solve(&g))
        .collect::<Result<Vec<_>, _>>()?;
    let text = if results.len() == 1 {
        serde_json::to_string_pretty(&results[0])?
    } else {
        serde_json::to_string_pretty(&results)?
    };
    write_text(a.out.as_deref(), &(text + "\n"))
}

fn sample(a: SampleArgs) -> AnyResult<()> {
    let g = sample_complete(a.n, a.orient.get(), a.seed.seed)?;
    announce(json!({
        "command": "sample", "n": a.n, "orientation": g.orientation(), "seed": a.seed.seed,
        "format": format!("{:?}", a.format).to_lowercase(),
    }));
    let mut buf = Vec::new();
    match a.format {
        InstanceOut::Csv => write_csv(&g, &mut buf)?,
        InstanceOut::Binary => write_binary(&g, &mut buf)?,
    }
    match &a.out {
        Some(p) => std::fs::write(p, &buf).map_err(|e| meancycle::Error::Io {
            path: p.clone(),
            source: e,
        })?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

fn census(a: CensusArgs) -> AnyResult<()> {
    let o = a.orient.get();
    announce(json!({
        "command": "census", "n": a.n, "orientation": o, "seed": a.seed.seed,
        "c": a.c, "kmax": a.kmax,
    }));
    let g = sample_complete(a.n, o, a.seed.seed)?;
    let c = meancycle::solvers::count_light_cycles(&g, a.c, a.kmax)?;
    let v = json!({
        "n": a.n, "orientation": o, "seed": a.seed.seed, "c": c.c, "k_max": c.k_max,
        "total": c.total(), "counts": c.counts,
    });
    write_text(
        a.out.as_deref(),
        &(serde_json::to_string_pretty(&v)? + "\n"),
    )
}

#[derive(serde::Serialize)]
struct AnalyticRow {
    variant: LimitLaw,
    k: usize,
    p_k: f64,
    tail_asymptote: f64,
    abs_diff: f64,
}

#[derive(serde::Serialize)]
struct AnalyticTable {
    rows: Vec<AnalyticRow>,
}

impl Tabular for AnalyticTable {
    fn tables(&self) -> Vec<Table> {
        let mut t = Table::new(
            "analytic",
            &["variant", "k", "p_k", "tail_asymptote", "abs_diff"],
        );
        for r in &self.rows {
            t.push(vec![
                r.variant.as_str().into(),
                r.k.into(),
                r.p_k.into(),
                r.tail_asymptote.into(),
                r.abs_diff.into(),
            ]);
        }
        vec![t]
    }
}

fn analytic_table(a: TableArgs) -> AnyResult<()> {
    let vs = variants(&a.variant)?;
    announce(json!({"command": "analytic-table", "variants": vs, "k": a.k}));
    let mut ev = PmfEvaluator::new();
    let mut rows = Vec::new();
    for &v in &vs {
        for &k in a.k.iter().filter(|&&k| k >= v.k_min()) {
            let p_k = ev.pmf(k, v)?;
            let tail = tail_asymptote(k, v)?;
            rows.push(AnalyticRow {
                variant: v,
                k,
                p_k,
                tail_asymptote: tail,
                abs_diff: (p_k - tail).abs(),
            });
        }
    }
    report(&AnalyticTable { rows }, &a.out)
}

#[derive(serde::Serialize)]
struct CurvePoint {
    variant: LimitLaw,
    c: f64,
    analytic: f64,
}

#[derive(serde::Serialize)]
struct Curve {
    points: Vec<CurvePoint>,
}

impl Tabular for Curve {
    fn tables(&self) -> Vec<Table> {
        use meancycle::experiments::Table as T;
        let mut t = T::new("cdf", &["variant", "c", "empirical", "stderr", "analytic"]);
        for p in &self.points {
            t.push(vec![
                p.variant.as_str().into(),
                p.c.into(),
                None.into(),
                None.into(),
                p.analytic.into(),
            ]);
        }
        vec![t]
    }
}

fn default_grid(v: LimitLaw) -> Vec<f64> {
    let top = match v.objective() {
        Objective::Mean => 0.5,
        Objective::Max => 1.2,
    };
    parse::grid(&format!("0:{top}:0.01")).expect("static grid")
}

fn cdf_curve(a: CurveArgs) -> AnyResult<()> {
    let vs = variants(&a.variant)?;
    announce(json!({"command": "cdf-curve", "variants": vs, "grid": a.grid}));
    let mut points = Vec::new();
    let mut series = Vec::new();
    for &v in &vs {
        let grid = a.grid.clone().unwrap_or_else(|| default_grid(v));
        let mut line = Vec::new();
        for &c in &grid {
            let f = limit_cdf(c, v)?;
            points.push(CurvePoint {
                variant: v,
                c,
                analytic: f,
            });
            line.push((c, f));
        }
        series.push((v.as_str().to_string(), line));
    }
    if a.out.format == OutFormat::Svg {
        return write_text(a.out.out.as_deref(), &svg::plot(&series));
    }
    report(&Curve { points }, &a.out)
}

fn experiment(a: ExperimentArgs) -> AnyResult<()> {
    let orientation = a.orient.get();
    let variant = LimitLaw::new(orientation, a.objective);
    let mut cfg = ExperimentConfig::new(a.n, a.trials, orientation, a.objective);
    cfg.base_seed = a.seed.seed;
    cfg.k_max = a.kmax;
    cfg.workers = a.workers;
    cfg.c_grid = match (a.grid, a.c) {
        (Some(g), _) => g,
        (None, Some(c)) => vec![c],
        (None, None) => default_grid(variant),
    };
    announce(json!({"command": "experiment", "config": cfg, "variant": variant}));
    let records = run_trials(&cfg)?;
    let rep = compare_to_limit(&records, &cfg, variant)?;
    if let Some(p) = &a.records {
        let json = p.extension().is_some_and(|e| e == "json");
        let format = if json { Format::Json } else { Format::Csv };
        emit(&TrialLog::new(&cfg, records), p, format)?;
        eprintln!("wrote {}", p.display());
    }
    report(&rep, &a.out)
}

fn poisson(a: PoissonArgs) -> AnyResult<()> {
    let o = a.orient.get();
    announce(json!({
        "command": "poisson", "n": a.n, "trials": a.trials, "seed": a.seed.seed,
        "orientation": o, "c0": a.c, "kmax": a.kmax, "workers": a.workers,
    }));
    let r = poisson_check(a.n, a.c, a.kmax, a.trials, a.seed.seed, o, a.workers)?;
    report(&r, &a.out)
}

fn walkband(a: WalkArgs) -> AnyResult<()> {
    let slack = a.a.unwrap_or((a.l as f64).sqrt());
    announce(json!({
        "command": "walkband", "L": a.l, "A": slack, "trials": a.trials,
        "seed": a.seed.seed, "workers": a.workers,
    }));
    let r = walk_band_experiment(a.l, slack, a.trials, a.seed.seed, a.workers)?;
    report(&r, &a.out)
}

#[derive(serde::Serialize)]
struct Bounds {
    rows: Vec<serde_json::Value>,
}

impl Tabular for Bounds {
    fn tables(&self) -> Vec<Table> {
        let cols = [
            "n",
            "weight_upper",
            "length_lower",
            "expected_count",
            "variance_ratio",
            "variance_precondition",
        ];
        let mut t = Table::new("bounds", &cols);
        for r in &self.rows {
            t.push(
                cols.iter()
                    .map(|c| match &r[*c] {
                        serde_json::Value::Number(x) if x.is_u64() => {
                            (x.as_u64().unwrap() as usize).into()
                        }
                        serde_json::Value::Number(x) => x.as_f64().unwrap().into(),
                        serde_json::Value::Bool(b) => {
                            (if *b { "holds" } else { "violated" }).into()
                        }
                        _ => None.into(),
                    })
                    .collect(),
            );
        }
        vec![t]
    }
}

fn supercritical(a: SuperArgs) -> AnyResult<()> {
    let o = a.orient.get();
    announce(json!({
        "command": "supercritical", "n": a.n, "trials": a.trials, "seed": a.seed.seed,
        "orientation": o, "A": a.a, "delta": a.delta, "L": a.l, "workers": a.workers,
    }));
    if a.trials > 0 {
        let reps = supercritical_length_experiment(&a.n, a.trials, a.seed.seed, o, a.workers)?;
        return report(&reps, &a.out);
    }
    let mut rows = Vec::new();
    for &n in &a.n {
        let b = supercritical_bounds(n as u64)?;
        let mut row =
            json!({"n": n, "weight_upper": b.weight_upper, "length_lower": b.length_lower});
        if let (Some(slack), Some(delta), Some(l2)) = (a.a, a.delta, a.l) {
            let p = SupercriticalParams::new(slack, delta, l2.saturating_sub(1), l2, o)?;
            let v = variance_ratio_bound(&p, n as f64);
            row["expected_count"] = json!(expected_uniform_light_count(&p));
            row["variance_ratio"] = json!(v.ratio);
            row["variance_precondition"] = json!(v.precondition_holds);
        }
        rows.push(row);
    }
    report(&Bounds { rows }, &a.out)
}
