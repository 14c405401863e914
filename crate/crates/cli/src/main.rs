use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use widthforge_core::gen::{random_graph, random_uqc};
use widthforge_core::harness::{self, Status, VerificationOutcome};
use widthforge_core::reductions::{self, Gadget};
use widthforge_core::uqc::solve_caterpillar_order;
use widthforge_core::widths::{decide_width_leq, decomposition_width, exact_width, Budget, Decision, ExactWidth};
use widthforge_core::{solve_uqc, BranchDecomposition, CutKind, Graph, UqcInstance, WidthParam};

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;

#[derive(Parser)]
#[command(name = "widthforge", version, about = "Exact induced-matching widths, quartet consistency and gadget checks")]
struct Cli {
    /// Worker threads for exact searches
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Mim,
    Sim,
    Omim,
    #[value(name = "Omim")]
    OmimMax,
}

impl From<Param> for CutKind {
    fn from(p: Param) -> Self {
        match p {
            Param::Mim => CutKind::Mim,
            Param::Sim => CutKind::Sim,
            Param::Omim => CutKind::Omim,
            Param::OmimMax => CutKind::OmimMax,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    Sim,
    Mim,
    #[value(name = "mimH")]
    MimH,
}

impl From<GadgetArg> for Gadget {
    fn from(g: GadgetArg) -> Self {
        match g {
            GadgetArg::Sim => Gadget::Sim,
            GadgetArg::Mim => Gadget::Mim,
            GadgetArg::MimH => Gadget::MimH,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Sim,
    Mim,
    Structure,
}

#[derive(clap::Args)]
struct Limits {
    /// Time budget in seconds
    #[arg(long, env = "WIDTHFORGE_BUDGET_SECS", default_value_t = 900)]
    budget: u64,

    /// Node budget
    #[arg(long, default_value_t = 1_000_000_000)]
    max_nodes: u64,
}

impl Limits {
    fn budget(&self, threads: usize) -> Budget {
        Budget::default()
            .with_time(Duration::from_secs(self.budget))
            .with_nodes(self.max_nodes)
            .with_threads(threads)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Width of a given decomposition
    WidthEval {
        graph: PathBuf,
        /// Newick file
        tree: PathBuf,
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long)]
        linear: bool,
    },
    /// Exact width with a witness decomposition
    WidthExact {
        graph: PathBuf,
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long)]
        linear: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Decide whether the width is at most W
    Decide {
        graph: PathBuf,
        #[arg(long, value_enum)]
        param: Param,
        #[arg(long)]
        w: usize,
        #[arg(long)]
        linear: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Build a gadget graph from a quartet file
    Reduce {
        quartets: PathBuf,
        #[arg(long, value_enum)]
        gadget: GadgetArg,
        /// Write the graph here and the role map next to it instead of printing
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the role map to this file
        #[arg(long)]
        roles: Option<PathBuf>,
    },
    /// Quartet consistency
    SolveUqc {
        quartets: PathBuf,
        /// Only accept caterpillars
        #[arg(long)]
        caterpillar: bool,
    },
    /// Run a verification suite on a quartet instance
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        quartets: PathBuf,
        #[command(flatten)]
        limits: Limits,
    },
    /// Seeded random instances
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    RandomGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    RandomUqc {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        quartets: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn load_instance(path: &Path) -> Result<UqcInstance> {
    UqcInstance::parse(&read(path)?).with_context(|| format!("parsing quartets {}", path.display()))
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn verify_exit(outcomes: &[VerificationOutcome]) -> u8 {
    match harness::overall(outcomes) {
        Status::Verified => EXIT_OK,
        Status::Refuted => EXIT_REFUTED,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let threads = cli.threads.max(1);
    match cli.command {
        Command::WidthEval { graph, tree, param, linear } => {
            let g = load_graph(&graph)?;
            let t: BranchDecomposition = read(&tree)?
                .trim()
                .parse()
                .with_context(|| format!("parsing tree {}", tree.display()))?;
            let report = decomposition_width(&g, &t, WidthParam::new(param.into(), linear))?;
            print_json(&report)?;
            Ok(EXIT_OK)
        }
        Command::WidthExact { graph, param, linear, limits } => {
            let g = load_graph(&graph)?;
            let r = exact_width(&g, WidthParam::new(param.into(), linear), &limits.budget(threads));
            print_json(&r)?;
            Ok(match r {
                ExactWidth::Solved(_) => EXIT_OK,
                ExactWidth::Inconclusive { .. } => EXIT_INCONCLUSIVE,
            })
        }
        Command::Decide { graph, param, w, linear, limits } => {
            let g = load_graph(&graph)?;
            let d = decide_width_leq(&g, WidthParam::new(param.into(), linear), w, &limits.budget(threads));
            print_json(&d)?;
            Ok(match d {
                Decision::Inconclusive { .. } => EXIT_INCONCLUSIVE,
                _ => EXIT_OK,
            })
        }
        Command::Reduce { quartets, gadget, out, roles } => {
            let inst = load_instance(&quartets)?;
            let red = reductions::build(&inst, gadget.into())?;
            let role_json = serde_json::to_string_pretty(&red.roles)?;
            if let Some(path) = &roles {
                fs::write(path, &role_json).with_context(|| format!("writing {}", path.display()))?;
            }
            match out {
                Some(path) => {
                    fs::write(&path, red.graph.to_text()).with_context(|| format!("writing {}", path.display()))?;
                    let mut sidecar = path.clone().into_os_string();
                    sidecar.push(".roles.json");
                    let sidecar = PathBuf::from(sidecar);
                    fs::write(&sidecar, &role_json).with_context(|| format!("writing {}", sidecar.display()))?;
                    print_json(&json!({
                        "graph": path,
                        "roles": sidecar,
                        "vertices": red.graph.vertex_count(),
                        "edges": red.graph.edge_count(),
                    }))?;
                }
                None => emit(&red.graph.to_text())?,
            }
            Ok(EXIT_OK)
        }
        Command::SolveUqc { quartets, caterpillar } => {
            let inst = load_instance(&quartets)?;
            let order = if caterpillar { solve_caterpillar_order(&inst) } else { None };
            let tree = solve_uqc(&inst, caterpillar);
            print_json(&json!({
                "satisfiable": tree.is_some(),
                "caterpillar": caterpillar,
                "tree_newick": tree.map(|t| t.to_newick()),
                "order": order,
            }))?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, quartets, limits } => {
            let inst = load_instance(&quartets)?;
            let budget = limits.budget(threads);
            let outcomes = match suite {
                Suite::Sim => harness::verify_sim_proposition(&inst, &budget)?,
                Suite::Mim => harness::verify_mim_proposition(&inst, &budget)?,
                Suite::Structure => harness::verify_structure(&inst)?,
            };
            print_json(&json!({
                "status": harness::overall(&outcomes),
                "outcomes": outcomes,
            }))?;
            Ok(verify_exit(&outcomes))
        }
        Command::Gen(GenCommand::RandomGraph { n, p, seed }) => {
            emit(&random_graph(n, p, seed)?.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Gen(GenCommand::RandomUqc { points, quartets, seed }) => {
            emit(&random_uqc(points, quartets, seed)?.to_text())?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_REFUTED } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_REFUTED)
        }
    }
}
