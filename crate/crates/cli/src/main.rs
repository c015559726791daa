//! `spca-lab`: generators, the clique reduction, solvers, deciders and
//! verification suites from the command line.
//!
//! Exit codes: 0 success or positive decision, 1 usage or parse error,
//! 2 enumeration guard exceeded, 3 negative decision or failed verification.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use spca_lab::experiment::{run_experiment, ExperimentConfig};
use spca_lab::graph::{
    gen_clique_minus_edge, gen_complete, gen_erdos_renyi, gen_planted_clique, gen_two_graph_family,
    has_k_clique_bruteforce, TwoGraphParams,
};
use spca_lab::hardness::{decide_clique_via_gap, distinguish, reduce_clique_to_spca};
use spca_lab::spectral::{eps_star, eps_star_leading_term};
use spca_lab::{
    suites, CliqueInstance, Declared, DistinguishConfig64, Error, Graph, Guard, Settings64,
    SolverKind, SpcaInstance64, SpcaSolver,
};

const GUARD_ENV: &str = "SPCA_LAB_GUARD";

#[derive(Debug, Parser)]
#[command(name = "spca-lab", version, about = "Sparse PCA hardness workbench")]
struct Cli {
    /// RNG seed; all randomness derives from it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Relative eigensolver tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Absolute guard band for decisions.
    #[arg(long, global = true)]
    tau: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = SolverArg::Exact)]
    solver: SolverArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Output path (standard output when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolverArg {
    Exact,
    Greedy,
    Threshold,
}

impl From<SolverArg> for SolverKind {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Exact => SolverKind::Exact,
            SolverArg::Greedy => SolverKind::Greedy,
            SolverArg::Threshold => SolverKind::Threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate graphs as edge lists.
    Gen(GenArgs),
    /// Reduce a clique instance to a sparse PCA instance.
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Solve a sparse PCA instance; exit 3 when the instance's M is not met.
    Solve { instance: PathBuf },
    /// Decide K-clique through the spectral gap.
    Decide {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Declare which of two graphs holds the l-clique.
    Distinguish {
        first: PathBuf,
        second: PathBuf,
        #[arg(long = "l")]
        ell: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Run a self-verification suite.
    Verify(VerifyArgs),
    /// Run an experiment described by a JSON config file.
    Experiment { config: PathBuf },
    /// Tabulate eps*(r) and the gap threshold.
    Eps {
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 20)]
        to: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    CliqueMinusEdge,
    ErdosRenyi,
    PlantedClique,
    TwoGraph,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long = "l")]
    ell: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, default_value_t = TwoGraphParams::DEFAULT_RETRIES)]
    retries: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Lemma1,
    Eqstar,
    Hong,
    Reduction,
    All,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Largest clique size (lemma1: 6, eqstar: 64).
    #[arg(long = "max-l")]
    max_l: Option<usize>,
    /// Largest r for the threshold identity.
    #[arg(long = "max-r", default_value_t = 1000)]
    max_r: usize,
    /// Random instances for hong (500) and reduction (200).
    #[arg(long)]
    count: Option<usize>,
}

/// Outcome of a command that succeeded.
enum Outcome {
    Positive,
    Negative,
}

fn settings(cli: &Cli) -> anyhow::Result<Settings64> {
    let mut s = Settings64::default();
    if let Some(tol) = cli.tol {
        s.tol = tol;
    }
    if let Some(tau) = cli.tau {
        s.tau = tau;
    }
    if let Ok(raw) = std::env::var(GUARD_ENV) {
        let limit = raw
            .trim()
            .parse()
            .with_context(|| format!("{GUARD_ENV}={raw:?} is not an integer"))?;
        s.guard = Guard(limit);
    }
    Ok(s)
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        return Ok(buf);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = read_input(path)?;
    text.parse()
        .with_context(|| format!("parsing edge list {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn required<T>(value: Option<T>, flag: &str, family: &str) -> anyhow::Result<T> {
    value.with_context(|| format!("family {family} needs --{flag}"))
}

/// Metadata goes to stdout when the graph went to a file, else to stderr.
fn metadata(cli: &Cli, value: serde_json::Value) {
    let text = json(&value);
    if cli.out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
}

fn cmd_gen(cli: &Cli, args: &GenArgs, s: &Settings64) -> anyhow::Result<Outcome> {
    let out = cli.out.as_deref();
    match args.family {
        Family::Complete => {
            let l = required(args.ell, "l", "complete")?;
            if l == 0 {
                bail!("complete graph needs l >= 1");
            }
            let g = gen_complete(l);
            emit(out, &g.to_edge_list())?;
            metadata(
                cli,
                serde_json::json!({"family": "complete", "n": g.n(), "m": g.edge_count()}),
            );
        }
        Family::CliqueMinusEdge => {
            let g = gen_clique_minus_edge(required(args.ell, "l", "clique-minus-edge")?)?;
            emit(out, &g.to_edge_list())?;
            metadata(
                cli,
                serde_json::json!({"family": "clique-minus-edge", "n": g.n(), "m": g.edge_count(), "removed": [0, 1]}),
            );
        }
        Family::ErdosRenyi => {
            let n = required(args.n, "n", "erdos-renyi")?;
            let p = required(args.p, "p", "erdos-renyi")?;
            let g = gen_erdos_renyi(n, p, cli.seed)?;
            emit(out, &g.to_edge_list())?;
            metadata(
                cli,
                serde_json::json!({"family": "erdos-renyi", "n": n, "p": p, "seed": cli.seed, "m": g.edge_count()}),
            );
        }
        Family::PlantedClique => {
            let n = required(args.n, "n", "planted-clique")?;
            let k = required(args.k, "k", "planted-clique")?;
            let (g, support) = gen_planted_clique(n, k, cli.seed)?;
            emit(out, &g.to_edge_list())?;
            metadata(
                cli,
                serde_json::json!({"family": "planted-clique", "n": n, "k": k, "seed": cli.seed,
                                   "m": g.edge_count(), "planted": support}),
            );
        }
        Family::TwoGraph => {
            let n = required(args.n, "n", "two-graph")?;
            let l = required(args.ell, "l", "two-graph")?;
            let delta = required(args.delta, "delta", "two-graph")?;
            let prefix = out.context("family two-graph needs --out PREFIX (writes PREFIX.clique.edges and PREFIX.sparse.edges)")?;
            let params = TwoGraphParams {
                retries: args.retries,
                ..TwoGraphParams::new(n, l, delta, cli.seed)
            };
            let fam = gen_two_graph_family(params, s.guard)?;
            let clique_path = with_suffix(prefix, "clique.edges");
            let sparse_path = with_suffix(prefix, "sparse.edges");
            fs::write(&clique_path, fam.with_clique.to_edge_list())?;
            fs::write(&sparse_path, fam.sparse.to_edge_list())?;
            let clique_ok = has_k_clique_bruteforce(
                &CliqueInstance::new(fam.with_clique.clone(), l)?,
                s.guard,
            )?;
            print!(
                "{}",
                json(&serde_json::json!({
                    "family": "two-graph", "n": n, "l": l, "delta": delta, "seed": cli.seed,
                    "clique_file": clique_path, "sparse_file": sparse_path,
                    "planted": fam.planted, "sparse_attempts": fam.attempts,
                    "clique_certified": clique_ok, "density_certified": true,
                }))
            );
        }
    }
    Ok(Outcome::Positive)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_reduce(cli: &Cli, graph: &Path, k: usize) -> anyhow::Result<Outcome> {
    let inst = CliqueInstance::new(read_graph(graph)?, k)?;
    let reduced: SpcaInstance64 = reduce_clique_to_spca(&inst);
    emit(cli.out.as_deref(), &json(&reduced))?;
    Ok(Outcome::Positive)
}

fn cmd_solve(cli: &Cli, path: &Path, s: &Settings64) -> anyhow::Result<Outcome> {
    let text = read_input(path)?;
    let inst: SpcaInstance64 = serde_json::from_str(&text)
        .with_context(|| format!("parsing instance {}", path.display()))?;
    if inst.r > inst.matrix.n() {
        bail!("sparsity r = {} exceeds n = {}", inst.r, inst.matrix.n());
    }
    let solver = SolverKind::from(cli.solver);
    let sol = solver.solve(&inst.matrix, inst.r, s)?;
    emit(cli.out.as_deref(), &json(&sol))?;
    Ok(match inst.m {
        Some(m) if sol.value < m - s.tau => Outcome::Negative,
        _ => Outcome::Positive,
    })
}

fn cmd_decide(cli: &Cli, graph: &Path, k: usize, s: &Settings64) -> anyhow::Result<Outcome> {
    let inst = CliqueInstance::new(read_graph(graph)?, k)?;
    let decision = decide_clique_via_gap(&inst, &SolverKind::from(cli.solver), s)?;
    emit(cli.out.as_deref(), &json(&decision))?;
    Ok(if decision.has_clique {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn cmd_distinguish(
    cli: &Cli,
    first: &Path,
    second: &Path,
    cfg: DistinguishConfig64,
    s: &Settings64,
) -> anyhow::Result<Outcome> {
    let (a, b) = (read_graph(first)?, read_graph(second)?);
    let res = distinguish(&a, &b, &cfg, &SolverKind::from(cli.solver), s)?;
    emit(cli.out.as_deref(), &json(&res))?;
    Ok(match res.declared {
        Declared::First => Outcome::Positive,
        Declared::Second => Outcome::Negative,
    })
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs, s: &Settings64) -> anyhow::Result<Outcome> {
    let outcomes = match args.suite {
        Suite::Lemma1 => vec![suites::lemma1(args.max_l.unwrap_or(6), s)?],
        Suite::Eqstar => vec![suites::eqstar(args.max_l.unwrap_or(64), args.max_r, s)?],
        Suite::Hong => vec![suites::hong(args.count.unwrap_or(500), 12, cli.seed, s)?],
        Suite::Reduction => vec![suites::reduction(args.count.unwrap_or(200), cli.seed, s)?],
        Suite::All => suites::all(s)?,
    };
    let mut table = String::new();
    if cli.format == Format::Json {
        table = json(&outcomes);
    } else {
        table.push_str(&format!(
            "{:<10} {:>8} {:>8}  status\n",
            "suite", "checks", "failed"
        ));
        for o in &outcomes {
            let status = if o.passed() { "PASS" } else { "FAIL" };
            table.push_str(&format!(
                "{:<10} {:>8} {:>8}  {status}\n",
                o.suite, o.checks, o.failures
            ));
            if let Some(first) = &o.first_failure {
                table.push_str(&format!("  first failure: {first}\n"));
            }
        }
    }
    emit(cli.out.as_deref(), &table)?;
    Ok(if outcomes.iter().all(|o| o.passed()) {
        Outcome::Positive
    } else {
        Outcome::Negative
    })
}

fn cmd_experiment(cli: &Cli, config: &Path, s: &Settings64) -> anyhow::Result<Outcome> {
    let text = read_input(config)?;
    let cfg: ExperimentConfig = serde_json::from_str(&text)
        .with_context(|| format!("parsing experiment config {}", config.display()))?;
    let report = run_experiment(&cfg, s)?;
    let body = match cli.format {
        Format::Csv => report.to_csv()?,
        Format::Json => {
            let mut j = report.to_json();
            j.push('\n');
            j
        }
    };
    emit(cli.out.as_deref(), &body)?;
    Ok(Outcome::Positive)
}

#[derive(Serialize)]
struct EpsRow {
    r: usize,
    eps_star: f64,
    threshold: f64,
    leading_term: f64,
}

fn cmd_eps(cli: &Cli, from: usize, to: usize) -> anyhow::Result<Outcome> {
    if from < 2 || from > to {
        bail!("need 2 <= --from <= --to, got {from}..{to}");
    }
    let rows = (from..=to)
        .map(|r| {
            let g = eps_star::<f64>(r)?;
            Ok(EpsRow {
                r,
                eps_star: g.eps_star,
                threshold: g.threshold,
                leading_term: eps_star_leading_term(r),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let body = match cli.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("r,eps_star,threshold,leading_term\n");
            for row in &rows {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    row.r, row.eps_star, row.threshold, row.leading_term
                ));
            }
            s
        }
    };
    emit(cli.out.as_deref(), &body)?;
    Ok(Outcome::Positive)
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let s = settings(cli)?;
    match &cli.command {
        Command::Gen(args) => cmd_gen(cli, args, &s),
        Command::Reduce { graph, k } => cmd_reduce(cli, graph, *k),
        Command::Solve { instance } => cmd_solve(cli, instance, &s),
        Command::Decide { graph, k } => cmd_decide(cli, graph, *k, &s),
        Command::Distinguish {
            first,
            second,
            ell,
            alpha,
            delta,
        } => {
            let cfg = DistinguishConfig64::new(*ell, *alpha, *delta)?;
            cmd_distinguish(cli, first, second, cfg, &s)
        }
        Command::Verify(args) => cmd_verify(cli, args, &s),
        Command::Experiment { config } => cmd_experiment(cli, config, &s),
        Command::Eps { from, to } => cmd_eps(cli, *from, *to),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(3),
        Err(err) => {
            eprintln!("error: {err:#}");
            let guard = err
                .chain()
                .any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::GuardExceeded { .. })));
            ExitCode::from(if guard { 2 } else { 1 })
        }
    }
}
