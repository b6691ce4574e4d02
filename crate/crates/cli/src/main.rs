//! `entnet` — parameter sweeps, figure data, and golden-value reports
//! for entanglement distribution on Werner-state networks.
//!
//! Exit codes: 0 on success, 2 on flag errors, 3 on numerical or I/O
//! failures.

mod ranges;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use entnet::critical::{self, CriticalConstants};
use entnet::graph::{self, Regime};
use entnet::mc::{self, Estimator, McConfig};
use entnet::spp;
use entnet::werner::NoiseModel;
use report::{num, Format, RunMeta, Table};

#[derive(Parser)]
#[command(
    name = "entnet",
    version,
    about = "Entanglement distribution on Werner-state networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form protocol analysis: extremal points, multiple
    /// purifications, noisy-operation maxima.
    Analyze(AnalyzeArgs),
    /// Monte Carlo sweeps over Erdős–Rényi networks.
    Simulate(SimulateArgs),
    /// Critical-point analytics: the constant A, h(s), the discrete
    /// gain sum.
    Critical(CriticalArgs),
    /// Re-execute a recorded manifest; outputs are bit-identical.
    Rerun(RerunArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Report the extremal points of the single purification protocol.
    #[arg(long)]
    spp_extremals: bool,
    /// Report good-interval bounds for n equal purified segments.
    #[arg(long)]
    multipur: bool,
    /// Report the noisy-operation gain maximum for a noise model.
    #[arg(long)]
    noisy: bool,
    /// Purified fraction of the path (with --multipur).
    #[arg(long)]
    alpha: Option<f64>,
    /// Number of purified segments, or "inf" (with --multipur).
    #[arg(long = "n")]
    n_segments: Option<String>,
    /// One-qubit gate reliability (with --noisy).
    #[arg(long, default_value_t = 1.0)]
    p1: f64,
    /// Two-qubit gate reliability (with --noisy).
    #[arg(long)]
    p2: Option<f64>,
    /// Measurement reliability (with --noisy).
    #[arg(long)]
    eta: Option<f64>,
    /// csv prints a plain-text report; json a machine-readable one.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SimulateArgs {
    /// Which figure's data to produce: eta322, gain-surface, eta-over-g.
    #[arg(long)]
    fig: String,
    /// Run at the critical density p = 1/N.
    #[arg(long)]
    critical: bool,
    /// Node count, or a comma-separated list of counts.
    #[arg(long = "N", default_value = "200")]
    n_nodes: String,
    /// Edge probability: single value or lo:hi:step range.
    #[arg(long)]
    p: Option<String>,
    /// Werner parameter: single value or lo:hi:step range.
    #[arg(long)]
    x: Option<String>,
    /// Trials per grid point.
    #[arg(long)]
    trials: Option<u64>,
    /// Base RNG seed; trial t uses substream (seed, t).
    #[arg(long, default_value_t = 12345)]
    seed: u64,
    /// Longest shortest-path length considered.
    #[arg(long = "Lmax")]
    l_max: Option<u32>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Cap on worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct CriticalArgs {
    /// Compute the asymptotic constant A with a step-halving check.
    #[arg(long = "A")]
    big_a: bool,
    /// Emit the (s, h(s)) curve.
    #[arg(long)]
    hfunc: bool,
    /// Emit the (y, f(y)) curve.
    #[arg(long)]
    ffunc: bool,
    /// Emit the discrete gain sum against the asymptote.
    #[arg(long)]
    sum: bool,
    #[arg(long = "Lmax", default_value_t = 300)]
    l_max: u32,
    /// Node count entering the 1/N^2 density (accepts 1e6).
    #[arg(long = "N", default_value = "1e6")]
    n_nodes: String,
    /// eps = 1 - x grid for the sum: single value or lo:hi:step.
    #[arg(long, default_value = "0.01:0.05:0.005")]
    eps: String,
    /// Curve resolution for --hfunc/--ffunc.
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct RerunArgs {
    /// Path to a manifest.json written by a previous run.
    manifest: PathBuf,
    /// Output directory for the reproduced files.
    #[arg(long, default_value = "out-rerun")]
    out: PathBuf,
}

enum CliError {
    Flags(String),
    Run(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Flags(_) => 2,
            CliError::Run(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Flags(m) | CliError::Run(m) => m,
        }
    }
}

fn flags(msg: impl Into<String>) -> CliError {
    CliError::Flags(msg.into())
}

impl From<entnet::Error> for CliError {
    fn from(e: entnet::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Run(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Critical(args) => cmd_critical(&args),
        Command::Rerun(args) => cmd_rerun(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn limit_threads(threads: Option<usize>) {
    if let Some(t) = threads {
        // ignore failure: the global pool can only be set once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
}

// ---------------------------------------------------------------- analyze

fn cmd_analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    if !(args.spp_extremals || args.multipur || args.noisy) {
        return Err(flags(
            "analyze needs at least one of --spp-extremals, --multipur, --noisy",
        ));
    }
    let mut json = serde_json::Map::new();

    if args.spp_extremals {
        let e = spp::extremals();
        let (z_star, dp) = spp::delta_p_max();
        if args.format == Format::Csv {
            println!("single purification protocol extremals");
            println!(
                "  max gain              {:<20} at y = 1/3, b = 0",
                num(e.max_gain)
            );
            println!("  a at max gain         {}", num(e.a_at_max_gain));
            println!("  lowest lower bound    {}", num(e.y_lo_min));
            println!("  a at lowest bound     {}", num(e.a_at_y_lo_min));
            println!("  highest upper bound   {}", num(e.y_hi_max));
            println!("  largest usable b      {}", num(e.b_max));
            println!("  max parameter gain    {} at z = {}", num(dp), num(z_star));
        } else {
            json.insert(
                "spp_extremals".into(),
                serde_json::json!({
                    "max_gain": e.max_gain,
                    "a_at_max_gain": e.a_at_max_gain,
                    "y_lo_min": e.y_lo_min,
                    "a_at_y_lo_min": e.a_at_y_lo_min,
                    "y_hi_max": e.y_hi_max,
                    "b_max": e.b_max,
                    "delta_p_max": dp,
                    "z_at_delta_p_max": z_star,
                }),
            );
        }
    }

    if args.multipur {
        let alpha = args
            .alpha
            .ok_or_else(|| flags("--multipur needs --alpha"))?;
        let n_text = args
            .n_segments
            .as_deref()
            .ok_or_else(|| flags("--multipur needs --n <count|inf>"))?;
        let (label, (y_lo, y_hi)) = if n_text == "inf" {
            ("inf".to_string(), spp::multipur_bounds_inf(alpha)?)
        } else {
            let n: u32 = n_text
                .parse()
                .map_err(|_| flags(format!("bad --n value '{n_text}'")))?;
            (n_text.to_string(), spp::multipur_bounds(n, alpha)?)
        };
        if args.format == Format::Csv {
            println!(
                "multiple purifications: n = {label}, alpha = {}",
                num(alpha)
            );
            println!("  y_lo                  {}", num(y_lo));
            println!("  y_hi                  {}", num(y_hi));
        } else {
            json.insert(
                "multipur".into(),
                serde_json::json!({ "n": label, "alpha": alpha, "y_lo": y_lo, "y_hi": y_hi }),
            );
        }
    }

    if args.noisy {
        let p2 = args.p2.ok_or_else(|| flags("--noisy needs --p2"))?;
        let eta = args.eta.ok_or_else(|| flags("--noisy needs --eta"))?;
        let noise = NoiseModel::new(args.p1, p2, eta)?;
        let c = noise.swap_attenuation();
        let dc_max = spp::noisy_delta_c_max(&noise);
        let y_max = 1.0 / (3.0 * c);
        let delta = noise.delta();
        let a_max = (2.0 * (1.0 - delta) / (1.0 - 2.0 * delta) * y_max).ln() / y_max.ln();
        // derived-vs-transcribed comparison on both branches of the
        // published closed form, each at the gain-optimal subpath
        // fraction for its y
        let a_opt = |y: f64| (2.0 * (1.0 - delta) / (1.0 - 2.0 * delta) * y).ln() / y.ln();
        let y_low = 0.9 * y_max;
        let y_high = (0.4 / c).min(0.999);
        let mut comparison = Vec::new();
        for (label, y, a) in [
            ("lower-branch", y_low, a_opt(y_low)),
            ("at-maximum", y_max, a_max),
            ("upper-branch", y_high, a_opt(y_high)),
        ] {
            let derived = spp::noisy_delta_c_spp(y, a, &noise)?;
            let transcribed = spp::noisy_delta_c_spp_transcribed(y, a, &noise);
            comparison.push((label, y, a, derived, transcribed));
        }
        if args.format == Format::Csv {
            println!(
                "noisy operations: p1 = {}, p2 = {}, eta = {}",
                num(args.p1),
                num(p2),
                num(eta)
            );
            println!("  delta                 {}", num(noise.delta()));
            println!("  alpha                 {}", num(noise.alpha()));
            println!("  swap attenuation c    {}", num(c));
            println!("  max gain              {}", num(dc_max));
            println!("  normalized to ideal   {}", num(dc_max * 36.0));
            println!("  attained at y = {}, a = {}", num(y_max), num(a_max));
            println!("  derived vs transcribed closed form:");
            for (label, y, a, derived, transcribed) in &comparison {
                println!(
                    "    {label:<13} y = {:<22} a = {:<22} derived = {:<22} transcribed = {}",
                    num(*y),
                    num(*a),
                    num(*derived),
                    num(*transcribed)
                );
            }
        } else {
            let rows: Vec<serde_json::Value> = comparison
                .iter()
                .map(|(label, y, a, derived, transcribed)| {
                    serde_json::json!({
                        "case": label, "y": y, "a": a,
                        "derived": derived, "transcribed": transcribed,
                    })
                })
                .collect();
            json.insert(
                "noisy".into(),
                serde_json::json!({
                    "p1": args.p1, "p2": p2, "eta": eta,
                    "delta": noise.delta(), "alpha": noise.alpha(),
                    "swap_attenuation": c,
                    "delta_c_max": dc_max,
                    "normalized": dc_max * 36.0,
                    "y_max": y_max, "a_max": a_max,
                    "comparison": rows,
                }),
            );
        }
    }

    if args.format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Object(json)).unwrap()
        );
    }
    Ok(())
}

// --------------------------------------------------------------- simulate

fn cmd_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    limit_threads(args.threads);
    match args.fig.as_str() {
        "eta322" => simulate_eta322(args),
        "gain-surface" => simulate_gain_surface(args),
        "eta-over-g" => simulate_eta_over_g(args),
        other => Err(flags(format!(
            "unknown --fig '{other}' (expected eta322, gain-surface, eta-over-g)"
        ))),
    }
}

fn warn_if_unreliable(trials: u64) {
    if trials < mc::DensityEstimate::MIN_RELIABLE_TRIALS {
        eprintln!("warning: {trials} trials is too few for the error bars to be reliable");
    }
}

fn single_count(text: &str) -> Result<usize, CliError> {
    let list = ranges::parse_counts(text).map_err(flags)?;
    if list.len() != 1 {
        return Err(flags("this figure takes a single --N value"));
    }
    Ok(list[0] as usize)
}

fn simulate_eta322(args: &SimulateArgs) -> Result<(), CliError> {
    let n = single_count(&args.n_nodes)?;
    let p_text = args.p.as_deref().unwrap_or("0.005:0.25:0.005");
    let p_values = ranges::parse_float_range(p_text).map_err(flags)?;
    let trials = args.trials.unwrap_or(2000);
    warn_if_unreliable(trials);

    let mut rows = Vec::new();
    for &p in &p_values {
        let est = mc::run(&McConfig {
            n_trials: trials,
            seed: args.seed,
            n_nodes: n,
            p,
            estimator: Estimator::EtaExists {
                path_len: 3,
                subpath_len: 2,
                alt_len: 2,
            },
        })?;
        let low = graph::eta_analytic(3, 2, 2, n, p, Regime::LowP)?;
        let high = graph::eta_analytic(3, 2, 2, n, p, Regime::HighP)?;
        rows.push(vec![
            num(p),
            num(est.mean),
            num(est.stderr),
            est.n_trials.to_string(),
            args.seed.to_string(),
            num(low),
            num(high),
        ]);
    }

    let meta = RunMeta {
        command: "simulate",
        args: vec![
            "--fig".into(),
            "eta322".into(),
            "--N".into(),
            n.to_string(),
            "--p".into(),
            p_text.into(),
            "--trials".into(),
            trials.to_string(),
            "--seed".into(),
            args.seed.to_string(),
        ],
        seed: Some(args.seed),
        params: vec![
            ("N".into(), n.to_string()),
            ("trials".into(), trials.to_string()),
            ("estimator".into(), "eta_exists(3,2,2)".into()),
        ],
    };
    let table = Table {
        name: "eta322",
        columns: vec![
            "p",
            "mean",
            "stderr",
            "n_trials",
            "seed",
            "eta_low_p",
            "eta_high_p",
        ],
        rows,
    };
    let written = report::write_outputs(&args.out, &meta, &[table], args.format)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn simulate_gain_surface(args: &SimulateArgs) -> Result<(), CliError> {
    let n = single_count(&args.n_nodes)?;
    let p_text = args.p.as_deref().unwrap_or("0.02:0.3:0.04");
    let x_text = args.x.as_deref().unwrap_or("0.55:0.95:0.05");
    let p_values = ranges::parse_float_range(p_text).map_err(flags)?;
    let x_values = ranges::parse_float_range(x_text).map_err(flags)?;
    let trials = args.trials.unwrap_or(100);
    warn_if_unreliable(trials);
    let l_max = args.l_max.unwrap_or(7);

    let mut rows = Vec::new();
    for &p in &p_values {
        for &x in &x_values {
            let est = mc::run(&McConfig {
                n_trials: trials,
                seed: args.seed,
                n_nodes: n,
                p,
                estimator: Estimator::NetworkGain { x, l_max },
            })?;
            rows.push(vec![
                num(p),
                num(x),
                num(est.mean),
                num(est.stderr),
                est.n_trials.to_string(),
                args.seed.to_string(),
            ]);
        }
    }

    let meta = RunMeta {
        command: "simulate",
        args: vec![
            "--fig".into(),
            "gain-surface".into(),
            "--N".into(),
            n.to_string(),
            "--p".into(),
            p_text.into(),
            "--x".into(),
            x_text.into(),
            "--trials".into(),
            trials.to_string(),
            "--seed".into(),
            args.seed.to_string(),
            "--Lmax".into(),
            l_max.to_string(),
        ],
        seed: Some(args.seed),
        params: vec![
            ("N".into(), n.to_string()),
            ("trials".into(), trials.to_string()),
            ("Lmax".into(), l_max.to_string()),
            ("estimator".into(), "network_gain".into()),
        ],
    };
    let table = Table {
        name: "gain_surface",
        columns: vec!["p", "x", "mean", "stderr", "n_trials", "seed"],
        rows,
    };
    let written = report::write_outputs(&args.out, &meta, &[table], args.format)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Geometries tracked for the critical-point collapse, m' = n.
const COLLAPSE_GEOMETRIES: [(u32, u32); 7] =
    [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (6, 3), (7, 3)];

fn simulate_eta_over_g(args: &SimulateArgs) -> Result<(), CliError> {
    if !args.critical && args.p.is_none() {
        return Err(flags(
            "eta-over-g needs --critical (p = 1/N) or an explicit --p",
        ));
    }
    let n_list = ranges::parse_counts(&args.n_nodes).map_err(flags)?;
    let trials = args.trials.unwrap_or(10_000);
    warn_if_unreliable(trials);

    let mut rows = Vec::new();
    for &n in &n_list {
        let n = n as usize;
        let p = match args.p.as_deref() {
            Some(text) if !args.critical => {
                let v = ranges::parse_float_range(text).map_err(flags)?;
                if v.len() != 1 {
                    return Err(flags("eta-over-g takes a single --p per run"));
                }
                v[0]
            }
            _ => 1.0 / n as f64,
        };
        for &(l, sub) in &COLLAPSE_GEOMETRIES {
            let est = mc::run(&McConfig {
                n_trials: trials,
                seed: args.seed,
                n_nodes: n,
                p,
                estimator: Estimator::EtaConfigs {
                    path_len: l,
                    subpath_len: sub,
                    alt_len: sub,
                },
            })?;
            let g = graph::g_degeneracy(l, sub, sub);
            rows.push(vec![
                n.to_string(),
                l.to_string(),
                sub.to_string(),
                sub.to_string(),
                num(p),
                num(est.mean),
                num(est.stderr),
                est.n_trials.to_string(),
                args.seed.to_string(),
                num(est.mean / g),
            ]);
        }
    }

    let mut meta_args = vec![
        "--fig".into(),
        "eta-over-g".into(),
        "--N".into(),
        args.n_nodes.clone(),
        "--trials".into(),
        trials.to_string(),
        "--seed".into(),
        args.seed.to_string(),
    ];
    if args.critical {
        meta_args.push("--critical".into());
    } else if let Some(p) = &args.p {
        meta_args.extend(["--p".into(), p.clone()]);
    }
    let meta = RunMeta {
        command: "simulate",
        args: meta_args,
        seed: Some(args.seed),
        params: vec![
            ("N".into(), args.n_nodes.clone()),
            ("trials".into(), trials.to_string()),
            ("estimator".into(), "eta_configs, m' = n".into()),
        ],
    };
    let table = Table {
        name: "eta_over_g",
        columns: vec![
            "N",
            "L",
            "n_sub",
            "m_prime",
            "p",
            "mean",
            "stderr",
            "n_trials",
            "seed",
            "eta_over_g",
        ],
        rows,
    };
    let written = report::write_outputs(&args.out, &meta, &[table], args.format)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

// --------------------------------------------------------------- critical

fn cmd_critical(args: &CriticalArgs) -> Result<(), CliError> {
    if !(args.big_a || args.hfunc || args.ffunc || args.sum) {
        return Err(flags(
            "critical needs at least one of --A, --hfunc, --ffunc, --sum",
        ));
    }
    limit_threads(args.threads);

    let mut tables = Vec::new();

    if args.big_a {
        let constants = CriticalConstants::compute()?;
        let coarse = critical::big_a_fixed_steps(64);
        let fine = critical::big_a_fixed_steps(128);
        let rel = (fine - coarse).abs() / fine.abs();
        println!("A = {}", num(constants.big_a));
        println!(
            "integration limits: s in [{}, {}]",
            num(constants.s_lo),
            num(constants.s_hi)
        );
        println!(
            "step-halving: {} -> {} (relative change {})",
            num(coarse),
            num(fine),
            num(rel)
        );
    }

    if args.hfunc {
        let rows = critical::h_curve(args.points)
            .into_iter()
            .map(|(s, h)| vec![num(s), num(h)])
            .collect();
        tables.push(Table {
            name: "hfunc",
            columns: vec!["s", "h"],
            rows,
        });
    }

    if args.ffunc {
        let rows = critical::f_curve(args.points)
            .into_iter()
            .map(|(y, f)| vec![num(y), num(f)])
            .collect();
        tables.push(Table {
            name: "ffunc",
            columns: vec!["y", "f"],
            rows,
        });
    }

    if args.sum {
        let n_nodes = ranges::parse_count(&args.n_nodes).map_err(flags)? as f64;
        let eps_values = ranges::parse_float_range(&args.eps).map_err(flags)?;
        let constants = CriticalConstants::compute()?;
        let rows = eps_values
            .iter()
            .map(|&eps| {
                let n2 = critical::n2_gain_sum(1.0 - eps, args.l_max);
                vec![
                    num(eps),
                    num(n2),
                    num(constants.big_a / eps.powi(4)),
                    num(n2 / (n_nodes * n_nodes)),
                ]
            })
            .collect();
        tables.push(Table {
            name: "gain_sum",
            columns: vec!["eps", "n2_gain", "asymptote", "gain"],
            rows,
        });
        if eps_values.len() >= 2 {
            let slope = critical::gain_sum_loglog_slope(&eps_values, args.l_max);
            println!("log-log slope over the eps grid: {}", num(slope));
        }
    }

    if !tables.is_empty() {
        let meta = RunMeta {
            command: "critical",
            args: vec![
                "--Lmax".into(),
                args.l_max.to_string(),
                "--N".into(),
                args.n_nodes.clone(),
                "--eps".into(),
                args.eps.clone(),
                "--points".into(),
                args.points.to_string(),
            ]
            .into_iter()
            .chain(args.hfunc.then(|| "--hfunc".to_string()))
            .chain(args.ffunc.then(|| "--ffunc".to_string()))
            .chain(args.sum.then(|| "--sum".to_string()))
            .collect(),
            seed: None,
            params: vec![
                ("Lmax".into(), args.l_max.to_string()),
                ("N".into(), args.n_nodes.clone()),
            ],
        };
        let written = report::write_outputs(&args.out, &meta, &tables, args.format)?;
        for path in written {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ rerun

fn cmd_rerun(args: &RerunArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.manifest)?;
    let manifest: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Run(format!("bad manifest: {e}")))?;
    let command = manifest["command"]
        .as_str()
        .ok_or_else(|| CliError::Run("manifest lacks a command".into()))?;
    let recorded: Vec<String> = manifest["args"]
        .as_array()
        .ok_or_else(|| CliError::Run("manifest lacks an args list".into()))?
        .iter()
        .map(|v| v.as_str().map(str::to_owned))
        .collect::<Option<_>>()
        .ok_or_else(|| CliError::Run("manifest args must be strings".into()))?;

    let mut argv = vec!["entnet".to_string(), command.to_string()];
    argv.extend(recorded);
    argv.push("--out".into());
    argv.push(args.out.display().to_string());

    let cli = Cli::try_parse_from(&argv)
        .map_err(|e| CliError::Run(format!("manifest does not re-parse: {e}")))?;
    match cli.command {
        Command::Analyze(a) => cmd_analyze(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Critical(a) => cmd_critical(&a),
        Command::Rerun(_) => Err(CliError::Run("manifest cannot record a rerun".into())),
    }
}
