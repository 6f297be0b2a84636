//! Command-line surface.
//!
//! Six subcommands: `construct`, `spectrum`, `census`, `optimize`,
//! `converge`, `sweep`. Every file-producing run also writes a JSON run
//! manifest next to the primary output with the resolved settings, the
//! master seed and SHA-256 checksums of all outputs; re-running the recorded
//! command line reproduces the outputs byte-identically (the manifest's
//! timestamp fields aside).
//!
//! All angles are radians. Complex values are serialized as two columns
//! (re, im) with 17 significant digits; matrices as row-major records
//! (row, col, re, im). Config files are flat `key = value` text whose keys
//! mirror the long flags; explicit flags win.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::construction::{parse_word_list, GeneratorSet, GeneratorWord, ParamPoint};
use crate::group::{builtin_group, census_summary, closure, CensusOptions, Flag, FiniteMatrixGroup};
use crate::mat::CMat;
use crate::optimize::{Coordinate, OptimizationProblem};
use crate::spectral::{analyze, bound_prefactor, distances_to_twirl};
use crate::{Error, TOL};

#[derive(Parser, Debug)]
#[command(
    name = "ruo",
    version,
    about = "Random unitary operations preparing Werner states: spectra, censuses, convergence and rate optimization"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the generator matrices and the lifted Kraus set for a word list
    Construct(ConstructArgs),
    /// Eigenvalues, sigma1 membership and a summary report for one channel
    Spectrum(SpectrumArgs),
    /// Generator census of a finite matrix group
    Census(CensusArgs),
    /// Multi-start minimization of the convergence rate
    Optimize(OptimizeArgs),
    /// Distance to the twirling projector per iteration, with the a-priori bound
    Converge(ConvergeArgs),
    /// Objective along one or two coordinates
    Sweep(SweepArgs),
}

/// Flags shared by every channel-building subcommand. Angles in radians.
#[derive(Args, Debug, Clone)]
struct ChannelArgs {
    /// Subsystem dimension d (the channel acts on d^2)
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated generator words over h, U, V (e.g. "h,UV^-2,V")
    #[arg(long)]
    words: Option<String>,
    /// Flat key = value parameter file; explicit flags override it
    #[arg(long)]
    params: Option<PathBuf>,
    /// Global phase of V
    #[arg(long)]
    phi: Option<f64>,
    /// |alpha| in [0, 1]
    #[arg(long = "alpha-abs")]
    alpha_abs: Option<f64>,
    /// arg(alpha)
    #[arg(long = "alpha-arg")]
    alpha_arg: Option<f64>,
    /// arg(beta)
    #[arg(long = "beta-arg")]
    beta_arg: Option<f64>,
    /// Comma-separated weights p1,...,p_{k-1}; the last weight is implied
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Output CSV path; the summary JSON lands next to it
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Group spec: q8 | sl23 | d2-order192 | closure:<words>@<key=value,...>
    #[arg(long)]
    group: String,
    /// Tuple size (1, 2 or 3)
    #[arg(long)]
    size: usize,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OptimizeArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Feasible samples per repetition
    #[arg(long = "n-ran", default_value_t = 300)]
    n_ran: usize,
    /// Number of repetitions
    #[arg(long = "n-opt", default_value_t = 50)]
    n_opt: usize,
    /// Master seed; repetition streams are derived from it by counter
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Largest iteration count
    #[arg(long = "n-max", default_value_t = 30)]
    n_max: usize,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    /// Grid spec "<coord>=<start>:<stop>:<count>"; two comma-joined specs
    /// sweep a 2-coordinate grid. Coordinates: phi, alpha-abs, alpha-arg,
    /// beta-arg, p1, p2, ...
    #[arg(long)]
    grid: String,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Everything a run resolved from flags and config, for the manifest.
#[derive(Debug, Default, Clone, Serialize)]
struct ConfigSnapshot(BTreeMap<String, String>);

impl ConfigSnapshot {
    fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.to_string(), value.to_string());
    }
}

#[derive(Debug, Serialize)]
struct RunManifest {
    command_line: Vec<String>,
    config: ConfigSnapshot,
    master_seed: Option<u64>,
    tool_version: String,
    timestamp_unix_seconds: u64,
    wall_clock_seconds: f64,
    outputs: BTreeMap<String, String>,
}

/// Entry point used by the `ruo` binary and by the integration tests.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(argv.iter()) {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/version through this path
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let started = std::time::Instant::now();
    let mut outputs: Vec<(PathBuf, String)> = Vec::new();
    let mut snapshot = ConfigSnapshot::default();
    let mut seed: Option<u64> = None;
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a, &mut snapshot, &mut outputs),
        Command::Spectrum(a) => cmd_spectrum(a, &mut snapshot, &mut outputs),
        Command::Census(a) => cmd_census(a, &mut snapshot, &mut outputs),
        Command::Optimize(a) => {
            seed = Some(a.seed);
            cmd_optimize(a, &mut snapshot, &mut outputs)
        }
        Command::Converge(a) => cmd_converge(a, &mut snapshot, &mut outputs),
        Command::Sweep(a) => cmd_sweep(a, &mut snapshot, &mut outputs),
    };
    match result {
        Ok(()) => {
            if let Err(e) = write_outputs(&argv, snapshot, seed, started, &outputs) {
                return fail(&e);
            }
            0
        }
        Err(e) => fail(&e),
    }
}

/// Error category and exit code, machine parsable on stderr.
fn error_category(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Parse { .. } => ("parse", 2),
        Error::InfeasibleParams(_)
        | Error::DimensionTooSmall(_)
        | Error::WeightSum { .. }
        | Error::WeightRange { .. }
        | Error::UnknownCoordinate(_)
        | Error::EmptyGrid => ("infeasible", 3),
        Error::NotStationary => ("not-stationary", 4),
        Error::EigFailure(_) | Error::NonFinite | Error::ClosureInconsistent => ("numeric", 6),
        Error::ClosureCap(_) | Error::CensusTooLarge { .. } => ("too-large", 7),
        _ => ("error", 1),
    }
}

fn fail(e: &Error) -> i32 {
    let (category, code) = error_category(e);
    eprintln!("error[{category}]: {e}");
    code
}

fn write_outputs(
    argv: &[String],
    config: ConfigSnapshot,
    master_seed: Option<u64>,
    started: std::time::Instant,
    outputs: &[(PathBuf, String)],
) -> crate::Result<()> {
    if outputs.is_empty() {
        return Ok(());
    }
    let io_err = |e: std::io::Error| Error::InfeasibleParams(format!("io: {e}"));
    let mut checksums = BTreeMap::new();
    for (path, content) in outputs {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent).map_err(io_err)?;
            }
        }
        std::fs::write(path, content).map_err(io_err)?;
        let digest = Sha256::digest(content.as_bytes());
        let hex: String = digest.iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
        checksums.insert(path.display().to_string(), hex);
    }
    let manifest = RunManifest {
        command_line: argv.to_vec(),
        config,
        master_seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp_unix_seconds: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        outputs: checksums,
    };
    let manifest_path = manifest_path(&outputs[0].0);
    let body = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::InfeasibleParams(format!("manifest: {e}")))?;
    std::fs::write(&manifest_path, body).map_err(io_err)?;
    Ok(())
}

fn manifest_path(primary: &Path) -> PathBuf {
    let mut os = primary.as_os_str().to_owned();
    os.push(".manifest.json");
    PathBuf::from(os)
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Resolved channel description: dimension, words and parameter point.
struct ResolvedChannel {
    d: usize,
    words: Vec<GeneratorWord>,
    words_text: String,
    point: ParamPoint,
}

fn read_config(path: &Path) -> crate::Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InfeasibleParams(format!("config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

fn parse_config_text(text: &str) -> crate::Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse {
                column: lineno + 1,
                message: format!("config line {} is not key = value", lineno + 1),
            });
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_f64(key: &str, text: &str) -> crate::Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::InfeasibleParams(format!("{key}: cannot parse {text:?} as a number")))
}

fn parse_weights(text: &str) -> crate::Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| parse_f64("weights", t))
        .collect()
}

fn resolve_channel(args: &ChannelArgs, snapshot: &mut ConfigSnapshot) -> crate::Result<ResolvedChannel> {
    let file = match &args.params {
        Some(path) => read_config(path)?,
        None => BTreeMap::new(),
    };
    let get = |key: &str| file.get(key).map(String::as_str);

    let d = match (args.d, get("d")) {
        (Some(d), _) => d,
        (None, Some(text)) => text
            .parse()
            .map_err(|_| Error::InfeasibleParams(format!("d: cannot parse {text:?}")))?,
        (None, None) => return Err(Error::InfeasibleParams("missing --d (or d in the params file)".into())),
    };
    let words_text = match (&args.words, get("words")) {
        (Some(w), _) => w.clone(),
        (None, Some(w)) => w.to_string(),
        (None, None) => {
            return Err(Error::InfeasibleParams("missing --words (or words in the params file)".into()))
        }
    };
    let words = parse_word_list(&words_text)?;

    let num = |flag: Option<f64>, key: &str, default: f64| -> crate::Result<f64> {
        match (flag, get(key)) {
            (Some(v), _) => Ok(v),
            (None, Some(text)) => parse_f64(key, text),
            (None, None) => Ok(default),
        }
    };
    let phi = num(args.phi, "phi", 0.0)?;
    let alpha_abs = num(args.alpha_abs, "alpha-abs", std::f64::consts::FRAC_1_SQRT_2)?;
    let alpha_arg = num(args.alpha_arg, "alpha-arg", 0.0)?;
    let beta_arg = num(args.beta_arg, "beta-arg", 0.0)?;
    let weights = match (&args.weights, get("weights")) {
        (Some(text), _) => parse_weights(text)?,
        (None, Some(text)) => parse_weights(text)?,
        (None, None) => {
            let k = words.len();
            vec![1.0 / k as f64; k - 1]
        }
    };
    let point = ParamPoint::new(phi, alpha_abs, alpha_arg, beta_arg, weights)?;

    snapshot.set("d", d);
    snapshot.set("words", &words_text);
    snapshot.set("phi", fmt_f(point.phi));
    snapshot.set("alpha-abs", fmt_f(point.alpha_abs));
    snapshot.set("alpha-arg", fmt_f(point.alpha_arg));
    snapshot.set("beta-arg", fmt_f(point.beta_arg));
    snapshot.set(
        "weights",
        point.weights.iter().map(|w| fmt_f(*w)).collect::<Vec<_>>().join(","),
    );
    Ok(ResolvedChannel { d, words, words_text, point })
}

fn emit(out: &Option<PathBuf>, content: String, outputs: &mut Vec<(PathBuf, String)>) {
    match out {
        Some(path) => outputs.push((path.clone(), content)),
        None => print!("{content}"),
    }
}

fn matrix_csv(body: &mut String, name: &str, m: &CMat) {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[[i, j]];
            let _ = writeln!(body, "{name},{i},{j},{},{}", fmt_f(z.re), fmt_f(z.im));
        }
    }
}

fn cmd_construct(
    args: &ConstructArgs,
    snapshot: &mut ConfigSnapshot,
    outputs: &mut Vec<(PathBuf, String)>,
) -> crate::Result<()> {
    let resolved = resolve_channel(&args.channel, snapshot)?;
    let set = GeneratorSet::new(resolved.d, &resolved.point)?;
    let mut body = String::from("matrix,row,col,re,im\n");
    for word in &resolved.words {
        let m = set.realize(word);
        matrix_csv(&mut body, &word.to_string(), &m);
    }
    let t = crate::construction::standard_ruo(resolved.d, &resolved.words, &resolved.point)?;
    for (k, (_, u)) in t.kraus().iter().enumerate() {
        matrix_csv(&mut body, &format!("kraus{}", k + 1), u);
    }
    emit(&args.out, body, outputs);
    Ok(())
}

#[derive(Debug, Serialize)]
struct SpectrumSummary {
    d: usize,
    words: String,
    lambda_max: f64,
    stationary: bool,
    diagonalizable: Option<bool>,
    fixed_space_dim: usize,
    sigma1_count: usize,
}

fn cmd_spectrum(
    args: &SpectrumArgs,
    snapshot: &mut ConfigSnapshot,
    outputs: &mut Vec<(PathBuf, String)>,
) -> crate::Result<()> {
    let resolved = resolve_channel(&args.channel, snapshot)?;
    let t = crate::construction::standard_ruo(resolved.d, &resolved.words, &resolved.point)?;
    let report = analyze(&t, TOL)?;
    let mut body = String::from("re,im,modulus,in_sigma1\n");
    for l in &report.eigenvalues {
        let in_sigma1 = l.norm() >= 1.0 - TOL;
        let _ = writeln!(body, "{},{},{},{}", fmt_f(l.re), fmt_f(l.im), fmt_f(l.norm()), in_sigma1);
    }
    let summary = SpectrumSummary {
        d: resolved.d,
        words: resolved.words_text.clone(),
        lambda_max: report.lambda_max,
        stationary: report.stationary,
        diagonalizable: report.diagonalizable,
        fixed_space_dim: report.fixed_space_dim,
        sigma1_count: report.sigma1.len(),
    };
    let summary_json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::InfeasibleParams(format!("summary: {e}")))?;
    match &args.out {
        Some(path) => {
            outputs.push((path.clone(), body));
            outputs.push((path.with_extension("summary.json"), summary_json));
        }
        None => {
            print!("{body}");
            println!("{summary_json}");
        }
    }
    Ok(())
}

fn parse_group_spec(spec: &str, snapshot: &mut ConfigSnapshot) -> crate::Result<FiniteMatrixGroup> {
    if let Some(rest) = spec.strip_prefix("closure:") {
        let (words_text, params_text) = rest.split_once('@').ok_or_else(|| {
            Error::InfeasibleParams("closure spec needs the form closure:<words>@<key=value,...>".into())
        })?;
        let words = parse_word_list(words_text)?;
        let mut map = BTreeMap::new();
        for piece in params_text.split(',') {
            let (k, v) = piece.split_once('=').ok_or_else(|| {
                Error::InfeasibleParams(format!("closure parameter {piece:?} is not key=value"))
            })?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        let d: usize = map
            .get("d")
            .ok_or_else(|| Error::InfeasibleParams("closure spec needs d=<dim>".into()))?
            .parse()
            .map_err(|_| Error::InfeasibleParams("closure spec: bad d".into()))?;
        let fetch = |key: &str, default: f64| -> crate::Result<f64> {
            map.get(key).map(|t| parse_f64(key, t)).unwrap_or(Ok(default))
        };
        let point = ParamPoint::new(
            fetch("phi", 0.0)?,
            fetch("alpha-abs", std::f64::consts::FRAC_1_SQRT_2)?,
            fetch("alpha-arg", 0.0)?,
            fetch("beta-arg", 0.0)?,
            Vec::new(),
        )?;
        let set = GeneratorSet::new(d, &point)?;
        let generators: Vec<CMat> = words.iter().map(|w| set.realize(w)).collect();
        snapshot.set("group", spec);
        match closure(&generators, 100_000, TOL)? {
            crate::group::ClosureOutcome::Group(g) => Ok(g),
            crate::group::ClosureOutcome::Infinite => Err(Error::ClosureCap(100_000)),
        }
    } else {
        snapshot.set("group", spec);
        builtin_group(spec)
    }
}

fn cmd_census(
    args: &CensusArgs,
    snapshot: &mut ConfigSnapshot,
    outputs: &mut Vec<(PathBuf, String)>,
) -> crate::Result<()> {
    let group = parse_group_spec(&args.group, snapshot)?;
    snapshot.set("size", args.size);
    if group.order() > 256 {
        return Err(Error::CensusTooLarge { order: group.order(), size: args.size });
    }
    // the per-pair weight optimization is only affordable for small groups
    let options = CensusOptions { lift: true, optimize_rate: args.size == 2 && group.order() <= 32 };
    let records = group.census(args.size, options)?;
    let summary = census_summary(&records);

    let mut body = String::new();
    let idx_cols: Vec<String> = (1..=args.size).map(|k| format!("idx{k}")).collect();
    let _ = writeln!(
        body,
        "{},generates,stationary,diagonalizable,optimal_lambda_max",
        idx_cols.join(",")
    );
    for r in &records {
        let idx = r.tuple.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let st = r.stationary.map(|b| b.to_string()).unwrap_or_default();
        let di = match r.diagonalizable {
            Some(Flag::Yes) => "true".to_string(),
            Some(Flag::No) => "false".to_string(),
            Some(Flag::Undetermined) => "undetermined".to_string(),
            None => String::new(),
        };
        let opt = r.optimal_lambda_max.map(fmt_f).unwrap_or_default();
        let _ = writeln!(body, "{idx},{},{st},{di},{opt}", r.generates);
    }
    let _ = writeln!(
        body,
        "# summary: order={} tuples={} generating={} stationary={} nonstationary={} diagonalizable={}",
        group.order(),
        summary.tuples,
        summary.generating,
        summary.stationary,
        summary.non_stationary,
        summary.diagonalizable
    );
    println!(
        "order={} generating={} stationary={} nonstationary={} diagonalizable={}",
        group.order(),
        summary.generating,
        summary.stationary,
        summary.non_stationary,
        summary.diagonalizable
    );
    emit(&args.out, body, outputs);
    Ok(())
}

fn cmd_optimize(
    args: &OptimizeArgs,
    snapshot: &mut ConfigSnapshot,
    outputs: &mut Vec<(PathBuf, String)>,
) -> crate::Result<()> {
    let resolved = resolve_channel(&args.channel, snapshot)?;
    snapshot.set("n-ran", args.n_ran);
    snapshot.set("n-opt", args.n_opt);
    snapshot.set("seed", args.seed);
    let problem = OptimizationProblem::words(resolved.d, resolved.words.clone())?;
    let result = problem.multistart(args.n_ran, args.n_opt, args.seed)?;
    let p = &result.best_point;
    let weights = p.full_weights();
    let mut body = String::from("d,words,lambda_max,phi,alpha_abs,alpha_arg,beta_arg,p1,p2\n");
    let p1 = p.weights.first().map(|w| fmt_f(*w)).unwrap_or_default();
    let p2 = p.weights.get(1).map(|w| fmt_f(*w)).unwrap_or_default();
    let _ = writeln!(
        body,
        "{},\"{}\",{},{},{},{},{},{p1},{p2}",
        resolved.d,
        resolved.words_text,
        fmt_f(result.best_lambda_max),
        fmt_f(p.phi),
        fmt_f(p.alpha_abs),
        fmt_f(p.alpha_arg),
        fmt_f(p.beta_arg),
    );
    let _ = weights;
    println!(
        "best lambda_max = {:.8} after {} restarts (seed {})",
        result.best_lambda_max,
        result.history.len(),
        result.seed
    );
    emit(&args.out, body, outputs);
    Ok(())
}

fn cmd_converge(
    args: &ConvergeArgs,
    snapshot: &mut ConfigSnapshot,
    outputs: &mut Vec<(PathBuf, String)>,
) -> crate::Result<()> {
    let resolved = resolve_channel(&args.channel, snapshot)?;
    snapshot.set("n-max", args.n_max);
    let t = crate::construction::standard_ruo(resolved.d, &resolved.words, &resolved.point)?;
    let report = analyze(&t, TOL)?;
    if !report.stationary {
        return Err(Error::NotStationary);
    }
    let distances = distances_to_twirl(&t, args.n_max)?;
    let prefactor = bound_prefactor(resolved.d);
    let mut body = String::from("n,distance,bound\n");
    for (n, dist) in distances.iter().enumerate() {
        let bound = prefactor * report.lambda_max.powi(n as i32);
        let _ = writeln!(body, "{n},{},{}", fmt_f(*dist), fmt_f(bound));
    }
    emit(&args.out, body, outputs);
    Ok(())
}

fn parse_grid_spec(spec: &str) -> crate::Result<(Coordinate, Vec<f64>)> {
    let (coord_text, range_text) = spec.split_once('=').ok_or_else(|| {
        Error::InfeasibleParams(format!("grid spec {spec:?} is not <coord>=<start>:<stop>:<count>"))
    })?;
    let coordinate: Coordinate = coord_text.trim().parse()?;
    let parts: Vec<&str> = range_text.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InfeasibleParams(format!(
            "grid range {range_text:?} is not <start>:<stop>:<count>"
        )));
    }
    let start = parse_f64("grid start", parts[0])?;
    let stop = parse_f64("grid stop", parts[1])?;
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::InfeasibleParams(format!("grid count {:?}", parts[2])))?;
    if count == 0 {
        return Err(Error::EmptyGrid);
    }
    let values = if count == 1 {
        vec![start]
    } else {
        (0..count)
            .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
            .collect()
    };
    Ok((coordinate, values))
}

fn cmd_sweep(
    args: &SweepArgs,
    snapshot: &mut ConfigSnapshot,
    outputs: &mut Vec<(PathBuf, String)>,
) -> crate::Result<()> {
    let resolved = resolve_channel(&args.channel, snapshot)?;
    snapshot.set("grid", &args.grid);
    let problem = OptimizationProblem::words(resolved.d, resolved.words.clone())?;
    let specs: Vec<&str> = args.grid.split(',').collect();
    let mut body = String::new();
    match specs.as_slice() {
        [single] => {
            let (coordinate, values) = parse_grid_spec(single)?;
            let curve = problem.sweep(coordinate, &values, &resolved.point)?;
            let _ = writeln!(body, "value,lambda_max");
            for (value, rate) in curve {
                let _ = writeln!(body, "{},{}", fmt_f(value), fmt_f(rate));
            }
        }
        [first, second] => {
            let (c1, v1) = parse_grid_spec(first)?;
            let (c2, v2) = parse_grid_spec(second)?;
            let surface = problem.sweep_pair((c1, c2), (&v1, &v2), &resolved.point)?;
            let _ = writeln!(body, "value1,value2,lambda_max");
            for (a, b, rate) in surface {
                let _ = writeln!(body, "{},{},{}", fmt_f(a), fmt_f(b), fmt_f(rate));
            }
        }
        _ => {
            return Err(Error::InfeasibleParams(
                "grid takes one or two comma-joined specs".into(),
            ))
        }
    }
    emit(&args.out, body, outputs);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let map = parse_config_text("d = 3\nwords = h,UV\n# comment\nphi = 1.5 # trailing\n").unwrap();
        assert_eq!(map.get("d").unwrap(), "3");
        assert_eq!(map.get("words").unwrap(), "h,UV");
        assert_eq!(map.get("phi").unwrap(), "1.5");
        assert!(parse_config_text("nonsense line").is_err());
    }

    #[test]
    fn grid_spec_parsing() {
        let (c, v) = parse_grid_spec("p1=0.1:0.9:5").unwrap();
        assert_eq!(c, Coordinate::Weight(0));
        assert_eq!(v.len(), 5);
        assert!((v[0] - 0.1).abs() < 1e-15);
        assert!((v[4] - 0.9).abs() < 1e-15);
        assert!(parse_grid_spec("p1=0:1:0").is_err());
        assert!(parse_grid_spec("p1=0:1").is_err());
        assert!(parse_grid_spec("bogus").is_err());
    }

    #[test]
    fn error_categories_are_stable() {
        assert_eq!(error_category(&Error::NotStationary).1, 4);
        assert_eq!(error_category(&Error::Parse { column: 1, message: String::new() }).1, 2);
        assert_eq!(error_category(&Error::EmptyGrid).1, 3);
    }
}
