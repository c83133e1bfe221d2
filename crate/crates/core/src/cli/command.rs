use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    check_base, flip_experiment, flip_script, run_on_base, summarize_base, write_json, BaseSource, CliError, FlipTarget, FormSource, PipelineConfig, Verdict,
};
use crate::affine_base::{validate_base, BaseComplex};
use crate::lattice::IntMatrix3;
use crate::mirror_square::{betti_via_square, square_matrix, Hypotheses, Route};
use crate::monodromy::{component_orbits, euler_characteristic, local_negative_edge_analysis, negative_edge_rep, vertex_generators, vertex_rep, Side};
use crate::sheaf::{assemble_les, build_local_system, cone_complex, random_stellar_subdivisions, sheaf_cohomology, CellularSheaf, SheafLabel};

#[derive(Debug, Parser)]
#[command(name = "rlag", version, about = "Mod-2 cohomology of real Lagrangians over integral affine 3-spheres")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for JSON reports and matrices.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized refinements.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write β and Square matrices as text (needs --out).
    #[arg(long, global = true)]
    emit_matrices: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build, flip or validate a base.
    #[command(subcommand)]
    Base(BaseCommand),
    /// Monodromy tables, real-locus components and Euler characteristic.
    #[command(subcommand)]
    Mono(MonoCommand),
    /// Cohomology of one constructible sheaf on the base.
    Cohomology {
        #[command(flatten)]
        base: BaseArg,
        /// R1f, R2f, R1fdual, R2fdual, cover, coverdual, quotient, quotientdual or const.
        #[arg(long, default_value = "cover")]
        sheaf: SheafLabel,
        /// Random stellar subdivisions of the cone complex applied before computing.
        #[arg(long, default_value_t = 0)]
        refine: usize,
    },
    /// The long exact sequence of one side with its exactness audit.
    Les {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, default_value = "f")]
        side: Side,
    },
    /// Rank and kernel of the squaring matrix of a form.
    Square {
        #[command(flatten)]
        base: BaseArg,
        /// Form file, `cube:N`, or `derived`.
        #[arg(long)]
        form: FormSource,
        /// Side whose mirror the form describes (used by `derived`).
        #[arg(long, default_value = "f")]
        side: Side,
        /// Also report Betti numbers for this value of h¹(B, R¹).
        #[arg(long)]
        h1_base: Option<usize>,
        #[arg(long, default_value_t = 2)]
        components: usize,
        #[command(flatten)]
        assume: Assumptions,
    },
    /// Every requested route on every requested side, with an agreement verdict.
    Run(RunArgs),
    /// Runs the pipeline before and after a sequence of flips.
    FlipExperiment {
        #[command(flatten)]
        run: RunArgs,
        /// Flips as FACE:A-B; when absent, `--steps` flips are chosen in `--face`.
        #[arg(long = "flip")]
        flips: Vec<FlipTarget>,
        #[arg(long, default_value_t = 0)]
        face: usize,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
}

#[derive(Debug, Subcommand)]
enum BaseCommand {
    Build {
        #[command(flatten)]
        base: BaseArg,
    },
    Flip {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long)]
        face: usize,
        /// Face-local point indices, e.g. `3,7`.
        #[arg(long, value_delimiter = ',')]
        edge: Vec<usize>,
    },
    Validate {
        #[command(flatten)]
        base: BaseArg,
    },
}

#[derive(Debug, Subcommand)]
enum MonoCommand {
    Table {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, default_value = "f")]
        side: Side,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    Components {
        #[command(flatten)]
        base: BaseArg,
        #[arg(long, default_value = "f")]
        side: Side,
        /// Also analyse the ball around this refinement edge.
        #[arg(long)]
        edge: Option<usize>,
    },
    Euler {
        #[command(flatten)]
        base: BaseArg,
    },
}

#[derive(Debug, Args)]
struct BaseArg {
    /// Base file; the quintic preset when absent.
    #[arg(long = "base")]
    file: Option<PathBuf>,
}

impl BaseArg {
    fn source(&self) -> BaseSource {
        self.file.clone().map_or(BaseSource::Preset, BaseSource::File)
    }
}

#[derive(Debug, Args)]
struct Assumptions {
    /// Declare H¹(X̌, Z₂) = 0.
    #[arg(long)]
    assume_simply_connected: bool,
    /// Declare rank H²(X̌, Z) = 1 with no 2-torsion in H³.
    #[arg(long)]
    assume_rank_one: bool,
}

impl Assumptions {
    fn hypotheses(&self) -> Hypotheses {
        Hypotheses { simply_connected_mirror: self.assume_simply_connected, rank_one_torsion_free: self.assume_rank_one }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    base: BaseArg,
    /// f, fdual or both.
    #[arg(long, default_value = "both")]
    side: String,
    /// Comma-separated: direct, les, square, or all.
    #[arg(long, default_value = "direct,les", value_delimiter = ',')]
    routes: Vec<String>,
    /// Form for the square route: SOURCE applies to every side, SIDE=SOURCE to one.
    #[arg(long = "form")]
    forms: Vec<String>,
    #[command(flatten)]
    assume: Assumptions,
}

impl RunArgs {
    fn config(&self, cli: &Cli) -> Result<PipelineConfig, CliError> {
        let sides = match self.side.as_str() {
            "both" => vec![Side::F, Side::FDual],
            s => vec![s.parse::<Side>().map_err(CliError::Input)?],
        };
        let mut routes = Vec::new();
        for r in &self.routes {
            let add: &[Route] = match r.as_str() {
                "direct" | "direct-sheaf" => &[Route::DirectSheafRoute],
                "les" => &[Route::LesRoute],
                "square" => &[Route::SquareRoute],
                "all" => &[Route::DirectSheafRoute, Route::LesRoute, Route::SquareRoute],
                other => return Err(CliError::Input(format!("unknown route {other:?}"))),
            };
            for &x in add {
                if !routes.contains(&x) {
                    routes.push(x);
                }
            }
        }
        let mut forms = Vec::new();
        for f in &self.forms {
            let (which, source) = match f.split_once('=') {
                Some((s, src)) => (vec![s.parse::<Side>().map_err(CliError::Input)?], src),
                None => (sides.clone(), f.as_str()),
            };
            let source: FormSource = source.parse().map_err(CliError::Input)?;
            for s in which {
                forms.retain(|(x, _)| *x != s);
                forms.push((s, source.clone()));
            }
        }
        Ok(PipelineConfig {
            base: self.base.source(),
            sides,
            routes,
            forms,
            hypotheses: self.assume.hypotheses(),
            flips: Vec::new(),
            out: cli.out.clone(),
            emit_matrices: cli.emit_matrices,
        })
    }
}

#[derive(Serialize)]
struct TableRow {
    label: String,
    n: [i64; 3],
    d: [i64; 3],
    matrix: IntMatrix3,
    action: String,
}

#[derive(Serialize)]
struct EulerReport {
    positive: usize,
    negative: usize,
    euler_characteristic: i64,
}

#[derive(Serialize)]
struct CohomologyReport {
    sheaf: String,
    refinements: usize,
    seed: u64,
    cells: Vec<usize>,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct SquareReport {
    form: String,
    provenance: Option<String>,
    dim: usize,
    rank: usize,
    kernel: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    betti: Option<crate::mirror_square::BettiReport>,
}

/// Parses `args` and runs the command; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, name: &str, value: &impl Serialize) -> Result<(), CliError> {
    let text = write_json(cli.out.as_deref(), name, value)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Base(BaseCommand::Build { base }) => {
            let b = base.source().load()?;
            if let Some(dir) = &cli.out {
                write_json(Some(dir), "base.json", &b.to_file())?;
            }
            emit(cli, "base-summary.json", &summarize_base(&b)?)?;
        }
        Command::Base(BaseCommand::Flip { base, face, edge }) => {
            let &[a, c] = edge.as_slice() else {
                return Err(CliError::Input("--edge takes two point indices".into()));
            };
            let flipped = base.source().load()?.flip(*face, [a, c])?;
            if let Some(dir) = &cli.out {
                write_json(Some(dir), "base.json", &flipped.to_file())?;
            }
            emit(cli, "base-summary.json", &summarize_base(&flipped)?)?;
        }
        Command::Base(BaseCommand::Validate { base }) => {
            let b = base.source().load()?;
            emit(cli, "validation.json", &validate_base(&b))?;
            check_base(&b)?;
        }
        Command::Mono(MonoCommand::Table { base, side, vertex }) => {
            let b = base.source().load()?;
            let mut rows = Vec::new();
            for g in vertex_generators(&b, *vertex)? {
                let action = crate::monodromy::torsion_action(&g.matrix, *side)?.to_string();
                rows.push(TableRow { label: g.label, n: g.n, d: g.d, matrix: g.matrix, action });
            }
            emit(cli, "mono-table.json", &rows)?;
        }
        Command::Mono(MonoCommand::Components { base, side, edge }) => {
            let b = base.source().load()?;
            let global = component_orbits(&vertex_rep(&b, 0, *side)?);
            let local = match edge {
                Some(e) => Some(local_negative_edge_analysis(&negative_edge_rep(&b, *e, *side)?)?),
                None => None,
            };
            emit(cli, "components.json", &serde_json::json!({ "side": side, "global": global, "local": local }))?;
        }
        Command::Mono(MonoCommand::Euler { base }) => {
            let b = base.source().load()?;
            let g = b.discriminant();
            let report = EulerReport {
                positive: g.count(crate::affine_base::VertexSign::Positive),
                negative: g.count(crate::affine_base::VertexSign::Negative),
                euler_characteristic: euler_characteristic(g)?,
            };
            emit(cli, "euler.json", &report)?;
        }
        Command::Cohomology { base, sheaf, refine } => {
            let b = base.source().load()?;
            let cells = refined(&b, *refine, cli.seed)?;
            let s = CellularSheaf::build(Arc::clone(&cells), &build_local_system(&b, *sheaf)?)?;
            let report = CohomologyReport {
                sheaf: sheaf.name().into(),
                refinements: *refine,
                seed: cli.seed,
                cells: (0..=cells.top_dim()).map(|d| cells.count(d)).collect(),
                dims: sheaf_cohomology(&s)?,
            };
            emit(cli, "cohomology.json", &report)?;
        }
        Command::Les { base, side } => {
            let b = base.source().load()?;
            let report = assemble_les(&b, *side)?;
            if cli.emit_matrices {
                let dir = cli.out.as_ref().ok_or_else(|| CliError::Input("--emit-matrices needs --out".into()))?;
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("beta-{}.txt", side.name())), report.beta_matrix.to_text())?;
            }
            emit(cli, "les.json", &report)?;
            if !report.exactness.passed {
                return Err(CliError::Validation("exactness audit failed".into()));
            }
        }
        Command::Square { base, form, side, h1_base, components, assume } => {
            let f = form.load(&base.source().load()?, *side)?;
            let m = square_matrix(&f);
            let rank = m.rank();
            if cli.emit_matrices {
                let dir = cli.out.as_ref().ok_or_else(|| CliError::Input("--emit-matrices needs --out".into()))?;
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("square.txt"), m.to_text())?;
            }
            let betti = match h1_base {
                Some(h) => Some(betti_via_square(*h, &f, assume.hypotheses(), *components)?),
                None => None,
            };
            let report = SquareReport { form: form.to_string(), provenance: f.provenance().map(String::from), dim: f.dim(), rank, kernel: f.dim() - rank, betti };
            emit(cli, "square.json", &report)?;
        }
        Command::Run(args) => {
            let cfg = args.config(cli)?;
            cfg.validate()?;
            let base = cfg.base.load()?;
            let report = run_on_base(&base, cfg.base.describe(), &cfg)?;
            eprint!("{}", report.summary());
            emit(cli, "run.json", &report)?;
            if report.agreement == Verdict::Fail {
                return Err(CliError::Disagreement("see run report".into()));
            }
        }
        Command::FlipExperiment { run, flips, face, steps } => {
            let mut cfg = run.config(cli)?;
            cfg.validate()?;
            cfg.flips = if flips.is_empty() { flip_script(&cfg.base.load()?, *face, *steps)? } else { flips.clone() };
            let exp = flip_experiment(&cfg)?;
            emit(cli, "flip-experiment.json", &exp)?;
            let mismatch = std::iter::once(&exp.initial).chain(exp.steps.iter().map(|s| &s.report)).any(|r| r.agreement == Verdict::Fail);
            if mismatch {
                return Err(CliError::Disagreement("routes disagree at some step".into()));
            }
            if !exp.h1_constant {
                let changed: Vec<String> = exp.h1.iter().filter(|s| !s.constant).map(|s| format!("{} {:?}", s.side.name(), s.values)).collect();
                return Err(CliError::Validation(format!("h¹ changed across flips: {}", changed.join(", "))));
            }
        }
    }
    Ok(0)
}

fn refined(base: &BaseComplex, count: usize, seed: u64) -> Result<Arc<crate::affine_base::CellComplex>, CliError> {
    if count == 0 {
        return Ok(base.shared_cells());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Arc::new(random_stellar_subdivisions(&cone_complex(base), count, &mut rng)?))
}
