//! Command-line front end. Every command writes one JSON report and exits
//! with 0 on success, 1 when a counterexample was found and 2 on usage,
//! document or budget errors.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::involutions::{generated_group_order, verify_adjacency_transvection, verify_lemma_3_1, verify_prop_3_1};
use crate::maps::{automorphism_group_order, grassmann_graph, Mode};
use crate::matrix::Matrix;
use crate::report::{Params, Report};
use crate::rset::{degree_search, find_associated_basis, is_exact, maximal_rsets_containing, RSet};
use crate::subspace::{Space, Subspace};

/// `{"field": {...}, "n": int, "k": int, "subspaces": [matrix, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RSetDocument {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub subspaces: Vec<Vec<Vec<u64>>>,
}

impl RSetDocument {
    pub fn new(space: &Space, k: usize, members: &[Subspace]) -> RSetDocument {
        RSetDocument {
            field: space.field().spec(),
            n: space.n(),
            k,
            subspaces: members
                .iter()
                .map(|m| m.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect())
                .collect(),
        }
    }

    /// Parse and canonicalize; every member must have dimension `k`.
    pub fn load(&self) -> Result<(Space, RSet)> {
        let field = self.field.build()?;
        let space = Space::new(field, self.n);
        let mut members = Vec::with_capacity(self.subspaces.len());
        for rows in &self.subspaces {
            let m = Matrix::from_rows_checked(space.field(), self.n, rows)?;
            let s = space.from_matrix(m);
            if s.dim() != self.k {
                return Err(Error::Document(format!(
                    "member of dimension {} in a document with k = {}",
                    s.dim(),
                    self.k
                )));
            }
            members.push(s);
        }
        Ok((space, RSet::new(self.k, members)?))
    }
}

#[derive(Debug, Parser)]
#[command(name = "grassmann", version, about = "R-sets, degrees of inexactness and Grassmannian maps over small finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recognize an R-set document.
    Check(InputArgs),
    /// Degree of inexactness of an R-set document.
    Deg(InputArgs),
    /// Whether an R-set document is contained in exactly one maximal R-set.
    Exact(InputArgs),
    /// Sweep the standard frame for degree-two families.
    VerifyThm21(SpaceArgs),
    /// Sweep the standard frame above the exactness threshold.
    VerifyThm23(SpaceArgs),
    /// Automorphism group order of the Grassmann graph.
    GraphAut(GraphArgs),
    /// Pairwise commuting involutions versus R-sets of pairs.
    VerifyProp31(SpaceArgs),
    /// Commuting with an involution versus preserving its eigenspaces.
    VerifyLemma31(SpaceArgs),
    /// Adjacent involutions versus transvection products.
    VerifyAdjacency(SpaceArgs),
    /// Order of the group generated by involutions of one signature.
    GroupOrder(SpaceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Budget override `name=value`; may be repeated.
    #[arg(long)]
    pub budget: Vec<String>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Report path; the report goes to standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Also write the graph as an edge list.
    #[arg(long)]
    pub edges: Option<PathBuf>,
}

impl RunArgs {
    fn budget(&self) -> Result<Budget> {
        let mut b = Budget::default();
        for o in &self.budget {
            b.set(o)?;
        }
        Ok(b)
    }

    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Sampled => Mode::Sampled { samples: self.samples, seed: self.seed },
        }
    }
}

impl SpaceArgs {
    fn space(&self) -> Result<Space> {
        let field = Field::new(self.p, self.e)?;
        if self.n == 0 {
            return Err(Error::OutOfRange("n must be positive".into()));
        }
        if self.k > self.n {
            return Err(Error::OutOfRange(format!("k = {} exceeds n = {}", self.k, self.n)));
        }
        Ok(Space::new(field, self.n))
    }
}

fn run_args(command: &Command) -> &RunArgs {
    match command {
        Command::Check(a) | Command::Deg(a) | Command::Exact(a) => &a.run,
        Command::GraphAut(g) => &g.space.run,
        Command::VerifyThm21(a)
        | Command::VerifyThm23(a)
        | Command::VerifyProp31(a)
        | Command::VerifyLemma31(a)
        | Command::VerifyAdjacency(a)
        | Command::GroupOrder(a) => &a.run,
    }
}

fn load_document(path: &PathBuf) -> Result<(Space, RSet)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    let doc: RSetDocument = serde_json::from_str(&text).map_err(|e| Error::Document(e.to_string()))?;
    doc.load()
}

fn rows(s: &Subspace) -> serde_json::Value {
    json!(s.to_rows())
}

/// Build the report for a parsed command.
pub fn execute(command: &Command) -> Result<Report> {
    let run = run_args(command);
    let budget = run.budget()?;
    let started = Instant::now();
    let mode = run.mode();
    let with_mode = |params: Params| match mode {
        Mode::Exhaustive => params.with_mode("exhaustive"),
        Mode::Sampled { seed, .. } => params.with_mode("sampled").with_seed(seed),
    };
    let report = match command {
        Command::Check(a) => {
            let (space, r) = load_document(&a.input)?;
            let mut report = Report::new("rset_check", Params::new(space.field(), space.n(), r.k()));
            let basis = find_associated_basis(&space, r.members());
            report.detail("is_rset", basis.is_some());
            report.detail("members", r.len());
            if let Some(b) = basis {
                report.detail("coordinate_system", json!(b.lines().iter().map(|l| space.line_vector(l).to_vec()).collect::<Vec<_>>()));
            }
            report.finish(started)
        }
        Command::Deg(a) => {
            let (space, r) = load_document(&a.input)?;
            let search = degree_search(&space, &r, &budget)?;
            let mut report = Report::new("degree_of_inexactness", Params::new(space.field(), space.n(), r.k()));
            report.count_degree(search.degree);
            report.detail("degree", search.degree);
            report.detail("frames", search.frames.len());
            report.detail(
                "minimal_supersets",
                json!(search
                    .minimal_supersets
                    .iter()
                    .map(|m| m.added.iter().map(rows).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            );
            report.finish(started)
        }
        Command::Exact(a) => {
            let (space, r) = load_document(&a.input)?;
            let exact = is_exact(&space, &r, &budget)?;
            let frames = maximal_rsets_containing(&space, &r, &budget)?.len();
            let mut report = Report::new("exactness", Params::new(space.field(), space.n(), r.k()));
            report.detail("is_exact", exact);
            report.detail("frames", frames);
            report.finish(started)
        }
        Command::VerifyThm21(a) => crate::rset::verify_theorem_2_1(&a.space()?, a.k, &budget)?,
        Command::VerifyThm23(a) => crate::rset::verify_theorem_2_3(&a.space()?, a.k, &budget)?,
        Command::GraphAut(g) => {
            let space = g.space.space()?;
            let (index, graph) = grassmann_graph(&space, g.space.k, &budget)?;
            let order = automorphism_group_order(&graph, &budget)?;
            if let Some(path) = &g.edges {
                std::fs::write(path, graph.edge_list()).map_err(|e| Error::Document(e.to_string()))?;
            }
            let mut report = Report::new("grassmann_graph_automorphisms", Params::new(space.field(), space.n(), g.space.k));
            report.detail("vertices", index.len());
            report.detail("edges", graph.edge_count());
            report.detail("aut_order", order.to_string().parse::<u64>().map(serde_json::Value::from).unwrap_or_else(|_| json!(order.to_string())));
            report.finish(started)
        }
        Command::VerifyProp31(a) => verify_prop_3_1(&a.space()?, a.k, mode, &budget)?,
        Command::VerifyLemma31(a) => verify_lemma_3_1(&a.space()?, a.k, &budget)?,
        Command::VerifyAdjacency(a) => verify_adjacency_transvection(&a.space()?, a.k, mode, &budget)?,
        Command::GroupOrder(a) => {
            let space = a.space()?;
            let order = generated_group_order(&space, a.k, &budget)?;
            let mut report = Report::new("involution_generated_group", with_mode(Params::new(space.field(), space.n(), a.k)));
            report.detail("group_order", order);
            report.finish(started)
        }
    };
    Ok(report)
}

fn summary(report: &Report) -> String {
    let p = &report.params;
    let mut line = format!(
        "{} n={} k={} q={}^{}: {}",
        report.theorem,
        p.n,
        p.k,
        p.p,
        p.e,
        if report.passed { "pass" } else { "FAIL" }
    );
    for key in ["is_rset", "is_exact", "degree", "aut_order", "group_order"] {
        if let Some(v) = report.details.get(key) {
            line.push_str(&format!(" {key}={v}"));
        }
    }
    if !report.counts_by_degree.is_empty() {
        line.push_str(&format!(" counts_by_degree={:?}", report.counts_by_degree));
    }
    if !report.counterexamples.is_empty() {
        line.push_str(&format!(" counterexamples={}", report.counterexamples.len()));
    }
    line
}

/// Parse `argv`, run the command and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let run = run_args(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(run.workers.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let report = match pool.install(|| execute(&cli.command)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = report.to_json();
    match &run.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
            println!("{}", summary(&report));
        }
        None => println!("{text}"),
    }
    if report.passed {
        0
    } else {
        1
    }
}
