//! The `vecchoose` command line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::constructions::{
    adversarial_assignment, check_k_partitioned, cycle_bad_assignment, projective_plane_partition,
    random_edge_partition, write_edge_partition, Adversarial, CheckMode, PartitionVerdict,
};
use crate::engine::{
    decide_cycle_over_reals, find_choice, verify_choice, Choice, SearchCertificate, SearchOptions, SubspaceAssignment,
    Verdict,
};
use crate::error::Error;
use crate::fields::FieldSpec;
use crate::graphs::{
    parse_dimension_map, parse_graph, write_dimension_map, write_graph, write_graph_dot, write_labels, Graph,
};
use crate::hardness::{
    amplify_to_k, build_exists_graph, build_reduction, claim4_assignment, gadget_forcing_assignment, parse_dimacs,
    reduction_unsat_assignment,
};
use crate::linalg::Subspace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "vecchoose",
    version,
    about = "Vector choosability: constructions, exhaustive checks, 3SAT reduction"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Prime `p` or `Q`.
    #[arg(long, global = true, default_value = "2")]
    pub field: FieldSpec,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    #[arg(long, global = true, default_value_t = 300)]
    pub budget_seconds: u64,
    /// Output directory; reports go to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the forcing assignment (`reduce`).
    #[arg(long, global = true)]
    pub with_assignment: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exhaustive search (finite fields) or the real-root test on cycles (Q).
    Check { graph: PathBuf, assignment: PathBuf },
    /// Write an explicit graph and subspace assignment.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Compile a DIMACS 3-CNF into `G_φ`, its `f`-map and labels.
    Reduce { cnf: PathBuf },
    /// Seeded sweeps.
    Experiment {
        #[command(subcommand)]
        kind: ExperimentKind,
    },
    /// Check a choice against an assignment.
    Verify {
        graph: PathBuf,
        assignment: PathBuf,
        choice: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// Planes on `C_l` with no valid choice.
    Cycle { len: usize },
    /// Four-cycle forcing vertex 0 onto `e_x`, `x` in {6, 7}.
    Claim4 { x: usize },
    /// `K_{k, n^k}` over coordinate blocks of `F^{nk}`.
    CoordinateBlocks { n: usize, k: usize },
    /// `K_{k, k(n-1)+1}` from the Vandermonde family.
    Vandermonde { n: usize, k: usize },
    /// `K_{k,m}` from projective point representatives.
    ProjectiveReps { n: usize, k: usize },
    /// `K_{m,m}` on the `k`-subsets of `[2k-1]`.
    Ksubsets { k: usize },
    /// `K_{2,n}`, `n` even, from blocks of the bad square.
    EvenBlock { n: usize },
    /// Partitioned graph from PG(2, q); writes graph and edge partition.
    Projective {
        q: u64,
        #[arg(default_value_t = 0)]
        removed: usize,
    },
    /// ∃-graph `H(n1, n2)` with its `f`-map and forcing assignment.
    Gadget {
        n1: usize,
        n2: usize,
        #[arg(long, default_value_t = 8)]
        ambient: usize,
        #[arg(long, default_value_t = 8)]
        j: usize,
    },
    /// Seeded random assignment of `dim`-subspaces of `F^ambient` on a graph.
    Random { graph: PathBuf, ambient: usize, dim: usize },
    /// The `k`-uniform lift of a `{2,3}`-valued `f`-map.
    Amplify { graph: PathBuf, fmap: PathBuf, k: usize },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentKind {
    /// Random edge partitions checked for the partitioned property.
    Partitions {
        graph: PathBuf,
        k: usize,
        seeds: u64,
        /// Randomized refutation trials instead of the exhaustive check.
        #[arg(long)]
        trials: Option<u64>,
    },
}

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: crate::error::Result<T>) -> CliResult<T> {
    r.map_err(|e| {
        let mut c = CliError::from(e);
        c.message = format!("{}: {}", path.display(), c.message);
        c
    })
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, content: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)
}

struct Sink<'a> {
    cfg: &'a RunConfig,
    stdout: String,
}

impl Sink<'_> {
    /// Files always go to `--out` (default `.`).
    fn file(&self, name: &str, content: &str) -> CliResult<()> {
        let dir = self.cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
        let path = dir.join(name);
        write_atomic(&path, content).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }

    /// Reports go to `--out/<name>` when given, else to stdout.
    fn report(&mut self, name: &str, content: &str) -> CliResult<()> {
        if self.cfg.out.is_some() {
            self.file(name, content)
        } else {
            self.stdout.push_str(content);
            Ok(())
        }
    }

    fn graph(&self, stem: &str, g: &Graph) -> CliResult<()> {
        self.file(&format!("{stem}.txt"), &write_graph(g))?;
        if self.cfg.format == Format::Dot {
            self.file(&format!("{stem}.dot"), &write_graph_dot(g))?;
        }
        Ok(())
    }

    fn assignment(&self, name: &str, a: &SubspaceAssignment) -> CliResult<()> {
        self.file(name, &format!("# seed {}\n{}", self.cfg.seed, a.to_text()))
    }
}

/// Runs a parsed command line; returns the exit code and the stdout text.
pub fn run(cli: &Cli) -> CliResult<(i32, String)> {
    let cfg = &cli.config;
    if cfg.budget_seconds == 0 || cfg.budget_nodes == Some(0) {
        return Err(CliError::usage("budgets must be positive"));
    }
    let mut sink = Sink {
        cfg,
        stdout: String::new(),
    };
    let code = match &cli.command {
        Command::Check { graph, assignment } => check(&mut sink, graph, assignment)?,
        Command::Construct { kind } => construct(&mut sink, kind)?,
        Command::Reduce { cnf } => reduce(&mut sink, cnf)?,
        Command::Experiment {
            kind:
                ExperimentKind::Partitions {
                    graph,
                    k,
                    seeds,
                    trials,
                },
        } => partitions(&mut sink, graph, *k, *seeds, *trials)?,
        Command::Verify {
            graph,
            assignment,
            choice,
        } => verify(&mut sink, graph, assignment, choice)?,
    };
    Ok((code, sink.stdout))
}

fn load_assignment(graph: &Path, assignment: &Path) -> CliResult<SubspaceAssignment> {
    let g = in_file(graph, parse_graph(&read(graph)?))?;
    in_file(assignment, SubspaceAssignment::parse(g, &read(assignment)?))
}

fn certificate_text(cert: &SearchCertificate, format: Format) -> String {
    if format != Format::Csv {
        return cert.to_text();
    }
    let verdict = match &cert.verdict {
        Verdict::Choosable(_) => "choosable".to_string(),
        Verdict::NoChoice => "no_choice".to_string(),
        Verdict::Inconclusive(why) => format!("inconclusive {why}"),
    };
    format!(
        "verdict,field,seed,order,nodes\n{verdict},{},{},{},{}\n",
        cert.field, cert.seed, cert.order, cert.nodes
    )
}

fn check(sink: &mut Sink, graph: &Path, assignment: &Path) -> CliResult<i32> {
    let a = load_assignment(graph, assignment)?;
    let cfg = sink.cfg;
    let cert = if a.field().is_finite() {
        let opts = SearchOptions {
            node_budget: cfg.budget_nodes,
            time_budget: Some(Duration::from_secs(cfg.budget_seconds)),
            seed: cfg.seed,
            ..SearchOptions::default()
        };
        find_choice(&a, &opts)?
    } else {
        let d = decide_cycle_over_reals(&a)
            .map_err(|e| CliError::usage(format!("over Q only cycles of planes are decided ({e})")))?;
        let verdict = match (d.real_choice_exists, d.rational_witness) {
            (false, _) => Verdict::NoChoice,
            (true, Some(w)) => Verdict::Choosable(w),
            (true, None) => Verdict::Inconclusive("real_choice_without_rational_witness".into()),
        };
        SearchCertificate {
            verdict,
            field: a.field(),
            nodes: 0,
            order: "cycle/sturm".into(),
            seed: cfg.seed,
        }
    };
    let name = if cfg.format == Format::Csv {
        "certificate.csv"
    } else {
        "certificate.txt"
    };
    sink.report(name, &certificate_text(&cert, cfg.format))?;
    Ok(match cert.verdict {
        Verdict::Inconclusive(_) => EXIT_BUDGET,
        _ => EXIT_OK,
    })
}

fn construct(sink: &mut Sink, kind: &ConstructKind) -> CliResult<i32> {
    let field = sink.cfg.field;
    let adversarial = |k: Adversarial| -> CliResult<SubspaceAssignment> { Ok(adversarial_assignment(&k, field)?) };
    let a = match kind {
        ConstructKind::Cycle { len } => cycle_bad_assignment(*len, field)?,
        ConstructKind::Claim4 { x } => claim4_assignment(field, *x)?,
        ConstructKind::CoordinateBlocks { n, k } => adversarial(Adversarial::CoordinateBlocks { n: *n, k: *k })?,
        ConstructKind::Vandermonde { n, k } => adversarial(Adversarial::Vandermonde { n: *n, k: *k })?,
        ConstructKind::ProjectiveReps { n, k } => adversarial(Adversarial::ProjectiveReps { n: *n, k: *k })?,
        ConstructKind::Ksubsets { k } => adversarial(Adversarial::KSubsets { k: *k })?,
        ConstructKind::EvenBlock { n } => adversarial(Adversarial::EvenBlock { n: *n })?,
        ConstructKind::Projective { q, removed } => {
            let (g, p, cert) = projective_plane_partition(*q, *removed)?;
            sink.graph("graph", &g)?;
            sink.file("partition.txt", &write_edge_partition(&p))?;
            let summary = format!(
                "q {}\nvertices {}\nlines_used {}\ncertified {}\n",
                cert.q,
                cert.vertices,
                cert.lines_used,
                cert.certifies()
            );
            sink.file("certificate.txt", &summary)?;
            return Ok(EXIT_OK);
        }
        ConstructKind::Gadget { n1, n2, ambient, j } => {
            let h = build_exists_graph(*n1, *n2);
            let a = gadget_forcing_assignment(&h, field, *ambient, *j)?;
            sink.graph("graph", &h.graph)?;
            sink.file("f.txt", &write_dimension_map(&h.f))?;
            sink.assignment("assignment.txt", &a)?;
            return Ok(EXIT_OK);
        }
        ConstructKind::Random { graph, ambient, dim } => {
            let g = in_file(graph, parse_graph(&read(graph)?))?;
            let subs = (0..g.n())
                .map(|v| {
                    Subspace::random(
                        field,
                        *ambient,
                        *dim,
                        sink.cfg.seed.wrapping_mul(1_000_003).wrapping_add(v as u64),
                    )
                })
                .collect::<crate::error::Result<Vec<_>>>()?;
            SubspaceAssignment::new(g, field, *ambient, subs)?
        }
        ConstructKind::Amplify { graph, fmap, k } => {
            let g = in_file(graph, parse_graph(&read(graph)?))?;
            let f = in_file(fmap, parse_dimension_map(&read(fmap)?, g.n()))?;
            sink.graph("graph", &amplify_to_k(&g, &f, *k)?)?;
            return Ok(EXIT_OK);
        }
    };
    sink.graph("graph", a.graph())?;
    sink.assignment("assignment.txt", &a)?;
    Ok(EXIT_OK)
}

fn reduce(sink: &mut Sink, cnf: &Path) -> CliResult<i32> {
    let phi = in_file(cnf, parse_dimacs(&read(cnf)?))?;
    let r = build_reduction(&phi);
    sink.graph("graph", &r.graph)?;
    sink.file("f.txt", &write_dimension_map(&r.f))?;
    sink.file("labels.txt", &write_labels(&r.graph))?;
    if sink.cfg.with_assignment {
        sink.assignment("assignment.txt", &reduction_unsat_assignment(&r, sink.cfg.field)?)?;
    }
    sink.stdout.push_str(&format!(
        "vertices {}\nedges {}\nambient {}\n",
        r.graph.n(),
        r.graph.num_edges(),
        r.ambient()
    ));
    Ok(EXIT_OK)
}

fn partitions(sink: &mut Sink, graph: &Path, k: usize, seeds: u64, trials: Option<u64>) -> CliResult<i32> {
    let g = in_file(graph, parse_graph(&read(graph)?))?;
    let base = sink.cfg.seed;
    let mut csv = String::from("seed,verdict\n");
    let mut text = String::new();
    let mut yes = 0u64;
    for i in 0..seeds {
        let seed = base.wrapping_add(i);
        let p = random_edge_partition(&g, k, seed)?;
        let mode = match trials {
            Some(trials) => CheckMode::Randomized { seed, trials },
            None => CheckMode::Exhaustive {
                budget: sink.cfg.budget_nodes.unwrap_or(CheckMode::DEFAULT_BUDGET),
            },
        };
        let verdict = match check_k_partitioned(&p, mode)? {
            PartitionVerdict::CertifiedYes => {
                yes += 1;
                "certified_yes"
            }
            PartitionVerdict::Refuted(_) => "refuted",
            PartitionVerdict::Inconclusive => "inconclusive",
        };
        writeln!(csv, "{seed},{verdict}").unwrap();
        writeln!(text, "seed {seed} {verdict}").unwrap();
    }
    writeln!(text, "certified_yes {yes} of {seeds}").unwrap();
    match sink.cfg.format {
        Format::Csv => sink.report("partitions.csv", &csv)?,
        _ => sink.report("partitions.txt", &text)?,
    }
    Ok(EXIT_OK)
}

fn verify(sink: &mut Sink, graph: &Path, assignment: &Path, choice: &Path) -> CliResult<i32> {
    let a = load_assignment(graph, assignment)?;
    let (field, ambient, c) = in_file(choice, Choice::parse(&read(choice)?, a.graph().n()))?;
    if field != a.field() || ambient != a.ambient() {
        return Err(CliError::usage(format!(
            "{}: choice is over {field}^{ambient}, assignment over {}^{}",
            choice.display(),
            a.field(),
            a.ambient()
        )));
    }
    let (report, code) = match verify_choice(&a, &c)? {
        None => ("valid\n".to_string(), EXIT_OK),
        Some(v) => (format!("invalid {v}\n"), EXIT_REFUTED),
    };
    sink.report("verify.txt", &report)?;
    Ok(code)
}
