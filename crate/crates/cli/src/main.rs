use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args as ClapArgs, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wcontact::io::fam::parse_fam;
use wcontact::io::format::{to_pretty, to_text};
use wcontact::io::job::{parse_job, run_job, task_entry, RunOptions};
use wcontact::io::ops::{self, ring_for, Arg, Args, Env};
use wcontact::io::parse::split_list;
use wcontact::par::Exec;
use wcontact::Error;

#[derive(Parser)]
#[command(name = "wcontact", version, about = "Exact computations for w-contact curve families")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks (overrides a job's `seed` line).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Starting truncation order for local computations.
    #[arg(long, global = true)]
    trunc: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Record wall-clock time per task (reports are then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

/// Inputs shared by the operation subcommands. Expressions may name the
/// family file's variables and parameters.
#[derive(ClapArgs, Default)]
struct OpArgs {
    /// `.fam` file with the family.
    #[arg(long)]
    family: Option<PathBuf>,
    /// `.fam` file with an interior family (for `star`).
    #[arg(long = "interior-family")]
    interior_family: Option<PathBuf>,
    #[arg(long)]
    poly: Option<String>,
    /// Comma-separated generators.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long = "interior-ideal")]
    interior_ideal: Option<String>,
    /// Term order, e.g. `lex y>x` or `degrevlex`.
    #[arg(long)]
    order: Option<String>,
    /// Monomial generators of a chart.
    #[arg(long)]
    chart: Option<String>,
    /// Chart coordinate names.
    #[arg(long)]
    names: Option<String>,
    /// Geometric variables of a chart.
    #[arg(long)]
    geo: Option<String>,
    /// Explicit monic chart generators (for `hilb-eq`).
    #[arg(long)]
    generators: Option<String>,
    #[arg(long)]
    vars: Option<String>,
    /// Parameters, when no family file declares them.
    #[arg(long)]
    params: Option<String>,
    /// Coordinates, or `name=value` assignments (`?` draws a random value).
    #[arg(long)]
    point: Option<String>,
    #[arg(long)]
    codim: Option<usize>,
    /// Equations to compare a singular locus with.
    #[arg(long)]
    compare: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    unit: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    branches: Option<u32>,
    /// `contact` or `interior`, for inline families given by `--poly`.
    #[arg(long)]
    kind: Option<String>,
    /// Substitutions `v=numerator, ...` (for `pullback`).
    #[arg(long)]
    subs: Option<String>,
    #[arg(long)]
    denom: Option<String>,
    /// Contact order the family must have.
    #[arg(long)]
    w: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis.
    Gb(OpArgs),
    /// Normal form modulo an ideal.
    Nf(OpArgs),
    /// Colength of an ideal in the local ring at the origin.
    Colength(OpArgs),
    /// Weierstrass preparation of a family in x.
    Prepare(OpArgs),
    /// The map d/dλ (f/g) into O/I.
    Phi(OpArgs),
    /// The map d/dλ E into O/I.
    Delta(OpArgs),
    /// Image of the reparametrization correction in O/I.
    Psi(OpArgs),
    /// Stacked surjectivity criterion.
    Star(OpArgs),
    /// Surjectivity modulo the reparametrization correction.
    Relaxed(OpArgs),
    /// Gröbner stratum chart of a monomial ideal.
    Chart(OpArgs),
    /// Relative Hilbert scheme equations on a chart.
    HilbEq(OpArgs),
    /// Lift an ideal by the graph relation f - z g.
    Lift(OpArgs),
    /// Lift an ideal by the graph relation z - E.
    LiftPrime(OpArgs),
    /// Seeded check of the membership correspondence under lifting.
    VerifyCorr(OpArgs),
    /// Singular locus by Jacobian minors.
    Sing(OpArgs),
    /// Zariski tangent space dimension at a rational point.
    Tangent(OpArgs),
    /// Equality of varieties by radical membership.
    VarietyEq(OpArgs),
    /// Milnor number: colength of the Jacobian ideal.
    Milnor(OpArgs),
    /// Tjurina number: colength of the function plus its Jacobian ideal.
    Tjurina(OpArgs),
    /// Delta invariant from the Milnor number and branch count.
    DeltaInv(OpArgs),
    /// A locus described inside its linear span.
    Nested(OpArgs),
    /// Ideal equality after inverting a unit.
    LocalizedEq(OpArgs),
    /// Substitute v -> numerator/denom and clear denominators.
    Pullback(OpArgs),
    /// Pairwise equality of polynomial lists up to scalars.
    SameUpToScalar(OpArgs),
    /// Run a job file.
    Run { job: PathBuf },
}

impl Command {
    fn op(&self) -> Option<(&'static str, &OpArgs)> {
        use Command::*;
        Some(match self {
            Gb(a) => ("gb", a),
            Nf(a) => ("nf", a),
            Colength(a) => ("colength", a),
            Prepare(a) => ("prepare", a),
            Phi(a) => ("phi", a),
            Delta(a) => ("delta", a),
            Psi(a) => ("psi", a),
            Star(a) => ("star", a),
            Relaxed(a) => ("relaxed", a),
            Chart(a) => ("chart", a),
            HilbEq(a) => ("hilb-eq", a),
            Lift(a) => ("lift", a),
            LiftPrime(a) => ("lift-prime", a),
            VerifyCorr(a) => ("verify-corr", a),
            Sing(a) => ("sing", a),
            Tangent(a) => ("tangent", a),
            VarietyEq(a) => ("variety-eq", a),
            Milnor(a) => ("milnor", a),
            Tjurina(a) => ("tjurina", a),
            DeltaInv(a) => ("delta-inv", a),
            Nested(a) => ("nested", a),
            LocalizedEq(a) => ("localized-eq", a),
            Pullback(a) => ("pullback", a),
            SameUpToScalar(a) => ("same-up-to-scalar", a),
            Run { .. } => return None,
        })
    }
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Task(Value),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::InvalidOrder(_)
            | Error::InvalidArgument(_)
            | Error::Job(_)
    )
}

fn build_env(a: &OpArgs, cli: &Cli) -> Result<(Env, Args)> {
    let fam = a.family.as_deref().map(read).transpose()?.map(|t| parse_fam(&t)).transpose()?;
    let ifam = a.interior_family.as_deref().map(read).transpose()?.map(|t| parse_fam(&t)).transpose()?;

    let mut texts: Vec<&str> = Vec::new();
    for s in [
        &a.poly,
        &a.ideal,
        &a.interior_ideal,
        &a.chart,
        &a.generators,
        &a.compare,
        &a.a,
        &a.b,
        &a.unit,
        &a.denom,
    ]
    .into_iter()
    .flatten()
    {
        texts.extend(split_list(s));
    }
    let subs_parts: Vec<String> = a
        .subs
        .iter()
        .flat_map(|s| s.split([',', '=']).map(str::to_string))
        .collect();
    texts.extend(subs_parts.iter().map(String::as_str));
    let mut extra: Vec<String> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    for f in fam.iter().chain(ifam.iter()) {
        texts.push(&f.expr);
        extra.extend(f.vars.iter().cloned());
        for p in &f.params {
            if !params.contains(p) {
                params.push(p.clone());
            }
        }
    }
    if let Some(p) = &a.params {
        for n in p.split(',').map(str::trim).filter(|n| !n.is_empty()) {
            if !params.contains(&n.to_string()) {
                params.push(n.to_string());
            }
        }
    }
    for n in a.vars.iter().flat_map(|v| v.split(',')) {
        extra.push(n.trim().to_string());
    }
    extra.extend(params.iter().cloned());
    extra.retain(|n| !n.is_empty());

    let mut env = Env::new(ring_for(texts, &extra)?);
    env.params = params;
    env.seed = cli.seed.unwrap_or(0);
    if let Some(t) = cli.trunc {
        env.trunc = t;
    }
    env.exec = if cli.sequential { Exec::Sequential } else { Exec::default() };

    let mut args = Args::new();
    let mut text = |k: &str, v: &Option<String>| {
        if let Some(v) = v {
            args.insert(k.to_string(), Arg::Text(v.clone()));
        }
    };
    text("poly", &a.poly);
    text("ideal", &a.ideal);
    text("interior-ideal", &a.interior_ideal);
    text("order", &a.order);
    text("chart", &a.chart);
    text("names", &a.names);
    text("geo", &a.geo);
    text("generators", &a.generators);
    text("vars", &a.vars);
    text("point", &a.point);
    text("compare", &a.compare);
    text("a", &a.a);
    text("b", &a.b);
    text("unit", &a.unit);
    text("kind", &a.kind);
    text("subs", &a.subs);
    text("denom", &a.denom);
    text("codim", &a.codim.map(|c| c.to_string()));
    text("samples", &a.samples.map(|c| c.to_string()));
    text("branches", &a.branches.map(|c| c.to_string()));
    text("w", &a.w.map(|c| c.to_string()));

    if let Some(f) = &fam {
        env.declare_family("family", &f.kind, &f.expr)?;
        args.insert("family".into(), Arg::Text("family".into()));
    } else if let Some(p) = &a.poly {
        // an inline family for the operations that need one
        args.insert("family".into(), Arg::Text(p.clone()));
    }
    if let Some(f) = &ifam {
        env.declare_family("interior-family", &f.kind, &f.expr)?;
        args.insert("interior-family".into(), Arg::Text("interior-family".into()));
    }
    env.finalize()?;
    Ok((env, args))
}

fn execute(cli: &Cli) -> std::result::Result<Value, Failure> {
    let usage = |e: anyhow::Error| Failure::Usage(e);
    match &cli.command {
        Command::Run { job } => {
            let text = read(job).map_err(usage)?;
            let job = parse_job(&text).map_err(|e| usage(e.into()))?;
            let opts = RunOptions {
                seed: cli.seed,
                trunc: cli.trunc,
                exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
                timing: cli.timing,
            };
            let rep = run_job(&job, &opts).map_err(|e| usage(e.into()))?;
            if rep.ok() {
                Ok(rep.to_json())
            } else {
                Err(Failure::Task(rep.to_json()))
            }
        }
        cmd => {
            let (op, a) = cmd.op().expect("every other command is an operation");
            let (env, args) = build_env(a, cli).map_err(usage)?;
            let start = std::time::Instant::now();
            let result = ops::run(op, &args, &env, env.seed);
            if let Err(e) = &result {
                if is_usage(e) {
                    return Err(Failure::Usage(anyhow::anyhow!("{op}: {e}")));
                }
            }
            let mut v = task_entry(op, &result, cli.timing.then(|| start.elapsed().as_millis()));
            v["seed"] = json!(env.seed);
            if result.is_ok() {
                Ok(v)
            } else {
                Err(Failure::Task(v))
            }
        }
    }
}

fn emit(cli: &Cli, v: &Value) -> Result<()> {
    let s = match cli.format {
        OutFormat::Json => to_pretty(v),
        OutFormat::Text => to_text(v),
    };
    match &cli.out {
        Some(p) => fs::write(p, s).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match execute(&cli) {
        Ok(v) => (v, 0),
        Err(Failure::Task(v)) => (v, 1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &value) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if code == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(code)
    }
}
