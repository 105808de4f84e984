use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use opsys::experiments::{Experiment, ExperimentConfig, SizeRange, Summary};
use opsys::json::{
    CertificateJson, GraphJson, MatrixJson, ProjectionJson, QuantumGraphJson, SearchParamsJson, SystemJson,
};
use opsys_core::constructions::{
    anticlique_lowdim, diagonal_system, graph_operator_system, rowcolumn_system, two_clique,
};
use opsys_core::{
    certify, find_clique_or_anticlique, general_find, generalized_certify, random_system, Certificate, Kind,
    OperatorSystem, Projection, QuantumGraph, SearchParams, Tolerance,
};

const EXIT_NOT_FOUND: u8 = 2;

#[derive(Parser)]
#[command(name = "opsys", version, about = "Quantum clique and anticlique search in operator systems")]
struct Cli {
    /// Relative singular-value cutoff used while searching.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_rank: f64,
    /// Relative cutoff used when issuing certificates.
    #[arg(long, global = true, default_value_t = 1e-11)]
    tol_cert: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an operator system as JSON.
    Gen(GenArgs),
    /// Search for a clique or anticlique and write its certificate.
    Find(FindArgs),
    /// Certify a given projection against an operator system.
    Verify(VerifyArgs),
    /// Run a batch experiment and write CSV rows.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    Diagonal,
    Graph,
    Rowcolumn,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    #[arg(long)]
    n: Option<usize>,
    /// Dimension of a random system.
    #[arg(long)]
    dim: Option<usize>,
    /// Graph JSON for `--kind graph`.
    #[arg(long = "graph-file", alias = "graph")]
    graph_file: Option<PathBuf>,
    #[arg(long, env = "OPSYS_SEED", default_value_t = 0)]
    seed: u64,
    /// Output path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Clique,
    Anticlique,
    TwoClique,
}

#[derive(Args)]
struct FindArgs {
    /// Operator system or quantum graph JSON.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Search parameters JSON; individual flags override it.
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    orbit_threshold: Option<usize>,
    #[arg(long)]
    phase1_steps: Option<usize>,
    #[arg(long)]
    phase2_steps: Option<usize>,
    #[arg(long)]
    retry_budget: Option<usize>,
    #[arg(long, env = "OPSYS_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Operator system or quantum graph JSON.
    #[arg(long)]
    input: PathBuf,
    /// Certificate, projection frame or projection matrix JSON.
    #[arg(long)]
    projection: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentKind {
    DichotomyScan,
    TwoCliqueRate,
    DiagonalTrichotomy,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    experiment: ExperimentKind,
    /// Matrix size or range `a:b`; samples cycle through it.
    #[arg(long)]
    n: SizeRange,
    #[arg(long, default_value = "2")]
    k: SizeRange,
    /// System dimension range; each sample draws uniformly from it.
    #[arg(long)]
    dim: Option<SizeRange>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, env = "OPSYS_SEED", default_value_t = 0)]
    seed: u64,
    /// Leave the wall_time_ms column empty, making output byte-reproducible.
    #[arg(long)]
    no_timing: bool,
    /// CSV path; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Input accepted by `find` and `verify`.
enum Target {
    System(OperatorSystem),
    Graph(QuantumGraph),
}

impl Target {
    fn load(path: &Path, tol: &Tolerance) -> Result<Self> {
        let value = read_json(path)?;
        if value.get("algebra").is_some() {
            let q: QuantumGraphJson = serde_json::from_value(value).context("parsing quantum graph")?;
            Ok(Target::Graph(q.decode(tol)?))
        } else {
            let s: SystemJson = serde_json::from_value(value).context("parsing operator system")?;
            Ok(Target::System(s.decode(tol)?))
        }
    }

    fn n(&self) -> usize {
        match self {
            Target::System(v) => v.n(),
            Target::Graph(q) => q.system().n(),
        }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing standard output"),
    }
}

fn cmd_gen(args: &GenArgs, tol: &Tolerance) -> Result<ExitCode> {
    if args.dim.is_some() && !matches!(args.kind, GenKind::Random) {
        bail!("--dim only applies to --kind random");
    }
    if args.graph_file.is_some() && !matches!(args.kind, GenKind::Graph) {
        bail!("--graph-file only applies to --kind graph");
    }
    let need_n = || args.n.context("--n is required for this kind");
    let v = match args.kind {
        GenKind::Random => {
            let dim = args.dim.context("--kind random needs --dim")?;
            random_system(need_n()?, dim, args.seed)?
        }
        GenKind::Diagonal => diagonal_system(need_n()?)?,
        GenKind::Rowcolumn => rowcolumn_system(need_n()?)?,
        GenKind::Graph => {
            let path = args.graph_file.as_deref().context("--kind graph needs --graph-file")?;
            let g: GraphJson = serde_json::from_value(read_json(path)?).context("parsing graph")?;
            let g = g.decode()?;
            if let Some(n) = args.n {
                if n != g.n_vertices() {
                    bail!("--n {n} disagrees with the graph's {} vertices", g.n_vertices());
                }
            }
            graph_operator_system(&g)?
        }
    };
    write_json(args.out.as_deref(), &SystemJson::encode(&v).with_tol(tol))?;
    Ok(ExitCode::SUCCESS)
}

fn search_params(args: &FindArgs) -> Result<SearchParams> {
    let mut p = match &args.params {
        Some(path) => {
            let j: SearchParamsJson = serde_json::from_value(read_json(path)?).context("parsing search parameters")?;
            j.decode()?
        }
        None => SearchParams::desk_scale(args.k),
    };
    if let Some(x) = args.orbit_threshold {
        p.orbit_threshold = x;
    }
    if let Some(x) = args.phase1_steps {
        p.phase1_steps = x;
    }
    if let Some(x) = args.phase2_steps {
        p.phase2_steps = x;
    }
    if let Some(x) = args.retry_budget {
        p.retry_budget = x;
    }
    if let Some(x) = args.seed {
        p.seed = x;
    }
    p.validate()?;
    Ok(p)
}

/// Whether `cert` is what `mode` asked for. A rank-one projection counts as
/// both a clique and an anticlique.
fn satisfies(mode: Mode, cert: &Certificate) -> bool {
    match mode {
        Mode::Auto => cert.is_success(),
        Mode::Clique | Mode::TwoClique => cert.kind == Kind::Clique,
        Mode::Anticlique => cert.kind == Kind::Anticlique || (cert.kind == Kind::Clique && cert.k == 1),
    }
}

fn run_search(target: &Target, args: &FindArgs, tol: &Tolerance) -> opsys_core::Result<Certificate> {
    let params = search_params(args).map_err(|e| opsys_core::Error::InvalidArgument(e.to_string()))?;
    let k = args.k;
    match target {
        Target::Graph(q) => general_find(q, k, &params, tol),
        Target::System(v) => {
            let (n, d) = (v.n(), v.dim());
            match args.mode {
                Mode::TwoClique => two_clique(v, params.seed, tol).map(|c| c.with_seed(params.seed)),
                Mode::Clique if k == 2 && d >= 4 => two_clique(v, params.seed, tol).map(|c| c.with_seed(params.seed)),
                Mode::Anticlique if k >= 2 && d * (k - 1) + k <= n => {
                    anticlique_lowdim(v, k, params.seed, tol).map(|c| c.with_seed(params.seed))
                }
                _ => find_clique_or_anticlique(v, k, &params, tol),
            }
        }
    }
}

fn cmd_find(args: &FindArgs, tol: &Tolerance) -> Result<ExitCode> {
    let target = Target::load(&args.input, tol)?;
    let n = target.n();
    if args.k == 0 || args.k > n {
        bail!("--k must satisfy 1 <= k <= n = {n}");
    }
    if args.mode == Mode::TwoClique {
        match &target {
            Target::System(v) if args.k == 2 && v.dim() >= 4 => {}
            Target::System(v) => bail!("two-clique mode needs k = 2 and dim >= 4 (k = {}, dim = {})", args.k, v.dim()),
            Target::Graph(_) => bail!("two-clique mode applies to operator systems, not quantum graphs"),
        }
    }
    let mut cert = match run_search(&target, args, tol) {
        Ok(c) => c,
        Err(e @ (opsys_core::Error::SearchExhausted { .. } | opsys_core::Error::ToleranceAmbiguous { .. })) => {
            eprintln!("not found: {e}");
            for line in e.trace() {
                eprintln!("  {line}");
            }
            return Ok(ExitCode::from(EXIT_NOT_FOUND));
        }
        Err(e) => return Err(e.into()),
    };
    let ok = satisfies(args.mode, &cert);
    if !ok && cert.is_success() {
        cert.note(format!("requested a {} but the certified projection is a {}", mode_name(args.mode), cert.kind));
    }
    write_json(args.out.as_deref(), &CertificateJson::encode(&cert))?;
    eprintln!("{} (compressed_dim {}, rank {})", cert.kind, cert.compressed_dim, cert.projection.rank());
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_NOT_FOUND) })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Auto => "clique or anticlique",
        Mode::Clique | Mode::TwoClique => "clique",
        Mode::Anticlique => "anticlique",
    }
}

fn load_projection(path: &Path, tol: &Tolerance) -> Result<Projection> {
    let value = read_json(path)?;
    let p = if let Some(inner) = value.get("projection") {
        let f: ProjectionJson = serde_json::from_value(inner.clone()).context("parsing certificate projection")?;
        f.decode(tol)?
    } else if value.get("frame").is_some() {
        let f: ProjectionJson = serde_json::from_value(value).context("parsing projection frame")?;
        f.decode(tol)?
    } else {
        let m: MatrixJson = serde_json::from_value(value).context("parsing projection matrix")?;
        Projection::from_matrix(&m.decode()?, tol)?
    };
    Ok(p)
}

fn cmd_verify(args: &VerifyArgs, tol: &Tolerance) -> Result<ExitCode> {
    let target = Target::load(&args.input, tol)?;
    let p = load_projection(&args.projection, tol)?;
    if p.n() != target.n() {
        bail!("projection acts on C^{} but the system lives in M_{}", p.n(), target.n());
    }
    if p.rank() != args.k {
        bail!("projection has rank {} but --k is {}", p.rank(), args.k);
    }
    let cert = match &target {
        Target::System(v) => certify(v, &p, args.k, tol)?,
        Target::Graph(q) => generalized_certify(q, &p, args.k, tol)?,
    };
    println!("kind: {}", cert.kind);
    println!("compressed_dim: {}", cert.compressed_dim);
    for line in &cert.trace {
        println!("note: {line}");
    }
    Ok(if cert.is_success() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_NOT_FOUND) })
}

fn cmd_experiment(args: &ExperimentArgs, tol: &Tolerance) -> Result<ExitCode> {
    let experiment = match args.experiment {
        ExperimentKind::DichotomyScan => Experiment::DichotomyScan,
        ExperimentKind::TwoCliqueRate => Experiment::TwoCliqueRate,
        ExperimentKind::DiagonalTrichotomy => Experiment::DiagonalTrichotomy,
    };
    let config = ExperimentConfig {
        experiment,
        n: args.n,
        k: args.k,
        dim: args.dim,
        samples: args.samples,
        seed: args.seed,
        timing: !args.no_timing,
        tol: *tol,
    };
    let rows = config.run().map_err(anyhow::Error::msg)?;
    let sink: Box<dyn Write> = match &args.out {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    eprintln!("{} (rank_rel {:e}, cert_rel {:e})", Summary::of(&rows), tol.rank_rel, tol.cert_rel);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Tolerance::new(cli.tol_rank, cli.tol_cert)
        .map_err(anyhow::Error::from)
        .and_then(|tol| match &cli.command {
            Command::Gen(a) => cmd_gen(a, &tol),
            Command::Find(a) => cmd_find(a, &tol),
            Command::Verify(a) => cmd_verify(a, &tol),
            Command::Experiment(a) => cmd_experiment(a, &tol),
        });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
