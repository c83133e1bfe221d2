//! End-to-end runs: build a base, compute the mod-2 Betti numbers of the
//! real Lagrangian along several routes, compare them, and repeat the whole
//! computation across a sequence of flips.

mod command;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

pub use command::{run_cli, Cli};

use crate::affine_base::{build_quintic_base, validate_base, BaseComplex, BaseError, BaseFile, VertexSign};
use crate::mirror_square::{betti_via_square, load_intersection_form, mirror_form_from_base, square_matrix, BettiReport, Hypotheses, IntersectionForm, MirrorError, Route};
use crate::monodromy::{component_orbits, euler_characteristic, local_negative_edge_analysis, negative_edge_rep, vertex_rep, ComponentReport, MonodromyError, Side};
use crate::sheaf::{assemble_les, build_local_system, sheaf_cohomology, CellularSheaf, LESReport, SheafError, SheafLabel};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("routes disagree: {0}")]
    Disagreement(String),
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 route disagreement, 3 validation failure, 4 input error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Disagreement(_) => 2,
            CliError::Validation(_) | CliError::Monodromy(_) | CliError::Sheaf(_) => 3,
            CliError::Mirror(MirrorError::DegeneratePairing | MirrorError::Sheaf(_)) => 3,
            CliError::Input(_) | CliError::Base(_) | CliError::Mirror(_) | CliError::Io(_) => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseSource {
    Preset,
    File(PathBuf),
}

impl BaseSource {
    pub fn load(&self) -> Result<BaseComplex, CliError> {
        match self {
            BaseSource::Preset => Ok(build_quintic_base()),
            BaseSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                let file: BaseFile = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                Ok(BaseComplex::from_file(&file)?)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            BaseSource::Preset => "preset:quintic".into(),
            BaseSource::File(p) => p.display().to_string(),
        }
    }
}

/// Where the square route gets its intersection form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSource {
    File(PathBuf),
    /// The rank-one form with the given cube.
    Cube(i64),
    /// Triple cup products computed on the base itself.
    Derived,
}

impl FromStr for FormSource {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "derived" {
            return Ok(FormSource::Derived);
        }
        if let Some(c) = s.strip_prefix("cube:") {
            return c.parse().map(FormSource::Cube).map_err(|e| format!("bad cube {c:?}: {e}"));
        }
        if s.is_empty() {
            return Err("empty form source".into());
        }
        Ok(FormSource::File(PathBuf::from(s)))
    }
}

impl fmt::Display for FormSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormSource::File(p) => write!(f, "{}", p.display()),
            FormSource::Cube(c) => write!(f, "cube:{c}"),
            FormSource::Derived => write!(f, "derived"),
        }
    }
}

impl FormSource {
    pub fn load(&self, base: &BaseComplex, side: Side) -> Result<IntersectionForm, CliError> {
        Ok(match self {
            FormSource::File(p) => load_intersection_form(p)?,
            FormSource::Cube(c) => IntersectionForm::rank_one(*c),
            FormSource::Derived => mirror_form_from_base(base, side)?.form,
        })
    }
}

/// An interior edge of a face triangulation, in face-local point indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FlipTarget {
    pub face: usize,
    pub edge: [usize; 2],
}

impl FromStr for FlipTarget {
    type Err = String;
    /// `face:a-b`
    fn from_str(s: &str) -> Result<Self, String> {
        let err = || format!("bad flip target {s:?}, expected FACE:A-B");
        let (face, edge) = s.split_once(':').ok_or_else(err)?;
        let (a, b) = edge.split_once('-').ok_or_else(err)?;
        let n = |x: &str| x.trim().parse::<usize>().map_err(|_| err());
        Ok(FlipTarget { face: n(face)?, edge: [n(a)?, n(b)?] })
    }
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub base: BaseSource,
    pub sides: Vec<Side>,
    pub routes: Vec<Route>,
    /// Form for the square route, per side.
    pub forms: Vec<(Side, FormSource)>,
    pub hypotheses: Hypotheses,
    pub flips: Vec<FlipTarget>,
    pub out: Option<PathBuf>,
    pub emit_matrices: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            base: BaseSource::Preset,
            sides: vec![Side::F, Side::FDual],
            routes: vec![Route::DirectSheafRoute, Route::LesRoute],
            forms: Vec::new(),
            hypotheses: Hypotheses::default(),
            flips: Vec::new(),
            out: None,
            emit_matrices: false,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.sides.is_empty() {
            return Err(CliError::Input("no side selected".into()));
        }
        if self.routes.is_empty() {
            return Err(CliError::Input("no route selected".into()));
        }
        if self.routes.contains(&Route::SquareRoute) {
            for &s in &self.sides {
                if self.form_for(s).is_none() {
                    return Err(CliError::Input(format!("square route on side {} needs a form", s.name())));
                }
            }
        }
        if self.emit_matrices && self.out.is_none() {
            return Err(CliError::Input("--emit-matrices needs --out".into()));
        }
        Ok(())
    }

    pub fn form_for(&self, side: Side) -> Option<&FormSource> {
        self.forms.iter().find(|(s, _)| *s == side).map(|(_, f)| f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareSummary {
    pub source: String,
    pub provenance: Option<String>,
    pub dim: usize,
    pub rank: usize,
    pub kernel: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SideReport {
    pub side: Side,
    pub routes: Vec<BettiReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub les: Option<LESReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square: Option<SquareSummary>,
    pub components: ComponentReport,
    pub agreement: Verdict,
}

impl SideReport {
    pub fn h(&self) -> Option<[usize; 4]> {
        self.routes.first().map(|r| r.h)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub base: String,
    pub cells: Vec<usize>,
    pub sides: Vec<SideReport>,
    pub agreement: Verdict,
    #[serde(skip)]
    pub timing: Vec<(String, Duration)>,
}

impl RunReport {
    pub fn side(&self, side: Side) -> Option<&SideReport> {
        self.sides.iter().find(|s| s.side == side)
    }

    pub fn summary(&self) -> String {
        let mut out = format!("base {} cells {:?}\n", self.base, self.cells);
        for s in &self.sides {
            for r in &s.routes {
                let route = serde_json::to_value(r.route).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                out += &format!("  {:<6} {:<18} h = {:?}\n", s.side.name(), route, r.h);
            }
        }
        for (name, t) in &self.timing {
            out += &format!("  {name}: {:.2?}\n", t);
        }
        out += &format!("agreement: {:?}\n", self.agreement);
        out
    }
}

fn components_for(base: &BaseComplex, side: Side) -> Result<ComponentReport, CliError> {
    Ok(component_orbits(&vertex_rep(base, 0, side)?))
}

fn sheaf_dims(base: &BaseComplex, label: SheafLabel) -> Result<Vec<usize>, CliError> {
    let sheaf = CellularSheaf::build(base.shared_cells(), &build_local_system(base, label)?)?;
    Ok(sheaf_cohomology(&sheaf)?)
}

fn to_h(dims: &[usize]) -> [usize; 4] {
    std::array::from_fn(|i| dims.get(i).copied().unwrap_or(0))
}

fn run_side(base: &BaseComplex, side: Side, cfg: &PipelineConfig, timing: &mut Vec<(String, Duration)>) -> Result<SideReport, CliError> {
    let mut clock = Instant::now();
    let mut lap = |name: String, timing: &mut Vec<(String, Duration)>| {
        timing.push((name, clock.elapsed()));
        clock = Instant::now();
    };
    let components = components_for(base, side)?;
    let h1_base = sheaf_dims(base, SheafLabel::r1(side))?[1];
    lap(format!("{} monodromy and R1", side.name()), timing);

    let mut routes = Vec::new();
    let mut les = None;
    let mut square = None;
    for &route in &cfg.routes {
        match route {
            Route::DirectSheafRoute => {
                let h = to_h(&sheaf_dims(base, SheafLabel::Cover(side))?);
                routes.push(BettiReport { route, h, h1_base, square_kernel: None, delta: None, hypotheses: cfg.hypotheses });
            }
            Route::LesRoute => {
                let report = assemble_les(base, side)?;
                if !report.exactness.passed {
                    return Err(CliError::Validation(format!("exactness audit failed on side {}", side.name())));
                }
                routes.push(BettiReport {
                    route,
                    h: to_h(&report.h_real),
                    h1_base: report.r1[1],
                    square_kernel: Some(report.beta_kernel),
                    delta: None,
                    hypotheses: cfg.hypotheses,
                });
                les = Some(report);
            }
            Route::SquareRoute => {
                let source = cfg.form_for(side).ok_or_else(|| CliError::Input("square route without a form".into()))?;
                let form = source.load(base, side)?;
                let m = square_matrix(&form);
                let rank = m.rank();
                square = Some(SquareSummary {
                    source: source.to_string(),
                    provenance: form.provenance().map(String::from),
                    dim: form.dim(),
                    rank,
                    kernel: form.dim() - rank,
                });
                if cfg.emit_matrices {
                    if let Some(dir) = &cfg.out {
                        std::fs::write(dir.join(format!("square-{}.txt", side.name())), m.to_text())?;
                    }
                }
                routes.push(betti_via_square(h1_base, &form, cfg.hypotheses, components.count())?);
            }
        }
        lap(format!("{} {}", side.name(), route_name(route)), timing);
    }
    if cfg.emit_matrices {
        if let (Some(dir), Some(l)) = (&cfg.out, &les) {
            std::fs::write(dir.join(format!("beta-{}.txt", side.name())), l.beta_matrix.to_text())?;
        }
    }
    let first = routes.first().map(|r| r.h);
    let agreement = if routes.iter().all(|r| Some(r.h) == first) { Verdict::Pass } else { Verdict::Fail };
    Ok(SideReport { side, routes, les, square, components, agreement })
}

pub fn route_name(route: Route) -> &'static str {
    match route {
        Route::SquareRoute => "square-route",
        Route::DirectSheafRoute => "direct-sheaf-route",
        Route::LesRoute => "les-route",
    }
}

/// Runs every requested route on every requested side of an already built base.
pub fn run_on_base(base: &BaseComplex, source: String, cfg: &PipelineConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    if let Some(dir) = &cfg.out {
        std::fs::create_dir_all(dir)?;
    }
    let mut timing = Vec::new();
    let mut sides = Vec::new();
    for &side in &cfg.sides {
        sides.push(run_side(base, side, cfg, &mut timing)?);
    }
    let agreement = if sides.iter().all(|s| s.agreement == Verdict::Pass) { Verdict::Pass } else { Verdict::Fail };
    let cells = (0..=base.cells().top_dim()).map(|d| base.cells().count(d)).collect();
    Ok(RunReport { base: source, cells, sides, agreement, timing })
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let base = cfg.base.load()?;
    run_on_base(&base, cfg.base.describe(), cfg)
}

/// Components of the real locus of `f̌` over a ball around a flipped edge.
#[derive(Clone, Debug, Serialize)]
pub struct LocalFlipReport {
    pub components: ComponentReport,
    pub solid_tori: usize,
    pub balls: usize,
}

pub fn local_flip_report(base: &BaseComplex, edge: usize) -> Result<LocalFlipReport, CliError> {
    let components = local_negative_edge_analysis(&negative_edge_rep(base, edge, Side::FDual)?)?;
    let solid_tori = components.components.iter().filter(|c| c.boundary_euler == Some(0)).count();
    let balls = components.components.iter().filter(|c| c.boundary_euler == Some(2)).count();
    Ok(LocalFlipReport { components, solid_tori, balls })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipStep {
    pub step: usize,
    pub target: FlipTarget,
    pub global_edge: usize,
    pub local: LocalFlipReport,
    pub report: RunReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipExperiment {
    pub initial: RunReport,
    pub steps: Vec<FlipStep>,
    /// `h¹` per side, at the start and after each flip.
    pub h1: Vec<H1Series>,
    pub h1_constant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct H1Series {
    pub side: Side,
    pub values: Vec<usize>,
    pub constant: bool,
}

impl FlipExperiment {
    pub fn series(&self, side: Side) -> Option<&H1Series> {
        self.h1.iter().find(|s| s.side == side)
    }
}

fn global_edge(base: &BaseComplex, t: FlipTarget) -> Result<usize, CliError> {
    if t.face >= base.faces().len() {
        return Err(BaseError::UnknownFace(t.face).into());
    }
    let n = base.triangulation(t.face).points().len();
    if t.edge.iter().any(|&p| p >= n) {
        return Err(BaseError::EdgeNotFound(t.edge[0], t.edge[1]).into());
    }
    let (p, q) = (base.global_point(t.face, t.edge[0]), base.global_point(t.face, t.edge[1]));
    base.edge_between(p, q).ok_or_else(|| BaseError::EdgeNotFound(t.edge[0], t.edge[1]).into())
}

/// `count` successive valid flips inside one face, never undoing the previous one.
pub fn flip_script(base: &BaseComplex, face: usize, count: usize) -> Result<Vec<FlipTarget>, CliError> {
    if face >= base.faces().len() {
        return Err(BaseError::UnknownFace(face).into());
    }
    let mut current = base.clone();
    let mut script = Vec::new();
    let mut last: Option<[usize; 2]> = None;
    while script.len() < count {
        let next = current
            .flippable_edges()
            .into_iter()
            .filter(|&(f, e)| f == face && Some(sorted(e)) != last)
            .find_map(|(f, e)| current.flip(f, e).ok().map(|b| (FlipTarget { face: f, edge: e }, b)));
        let Some((target, flipped)) = next else {
            return Err(CliError::Input(format!("face {face} has only {} successive valid flips", script.len())));
        };
        last = Some(flipped_edge(&current, target));
        script.push(target);
        current = flipped;
    }
    Ok(script)
}

fn sorted(e: [usize; 2]) -> [usize; 2] {
    [e[0].min(e[1]), e[0].max(e[1])]
}

/// The diagonal created by flipping `t`: the two apexes of the triangles on `t`.
fn flipped_edge(base: &BaseComplex, t: FlipTarget) -> [usize; 2] {
    let tri = base.triangulation(t.face);
    let apex: Vec<usize> = tri
        .triangles()
        .iter()
        .filter(|x| x.contains(&t.edge[0]) && x.contains(&t.edge[1]))
        .filter_map(|x| x.iter().copied().find(|v| !t.edge.contains(v)))
        .collect();
    sorted([apex[0], apex[1]])
}

/// Runs the pipeline, then applies each flip of the script and runs it
/// again, recording the local component analysis at every flipped edge.
pub fn flip_experiment(cfg: &PipelineConfig) -> Result<FlipExperiment, CliError> {
    cfg.validate()?;
    if cfg.flips.is_empty() {
        return Err(CliError::Input("empty flip script".into()));
    }
    let mut base = cfg.base.load()?;
    let initial = run_on_base(&base, cfg.base.describe(), cfg)?;
    let mut h1: Vec<H1Series> =
        initial.sides.iter().map(|s| H1Series { side: s.side, values: vec![s.h().map_or(0, |h| h[1])], constant: true }).collect();
    let mut steps = Vec::new();
    for (i, &target) in cfg.flips.iter().enumerate() {
        let next = base.flip(target.face, target.edge)?;
        let e = global_edge(&base, target)?;
        let local = local_flip_report(&base, e)?;
        base = next;
        let report = run_on_base(&base, format!("{} after {} flips", cfg.base.describe(), i + 1), cfg)?;
        for series in &mut h1 {
            let v = report.side(series.side).and_then(SideReport::h).map_or(0, |h| h[1]);
            series.constant &= v == series.values[0];
            series.values.push(v);
        }
        steps.push(FlipStep { step: i + 1, target, global_edge: e, local, report });
    }
    let h1_constant = h1.iter().all(|s| s.constant);
    Ok(FlipExperiment { initial, steps, h1, h1_constant })
}

/// Counts that identify a base at a glance.
#[derive(Clone, Debug, Serialize)]
pub struct BaseSummary {
    pub polytope_cells: [usize; 4],
    pub lattice_points: usize,
    pub refinement_cells: Vec<usize>,
    pub delta_positive: usize,
    pub delta_negative: usize,
    pub euler_characteristic: i64,
    pub flippable_edges: usize,
}

pub fn summarize_base(base: &BaseComplex) -> Result<BaseSummary, CliError> {
    let g = base.discriminant();
    Ok(BaseSummary {
        polytope_cells: [5, base.polytope_edges().len(), base.faces().len(), base.facets().len()],
        lattice_points: base.points().len(),
        refinement_cells: (0..=base.cells().top_dim()).map(|d| base.cells().count(d)).collect(),
        delta_positive: g.count(VertexSign::Positive),
        delta_negative: g.count(VertexSign::Negative),
        euler_characteristic: euler_characteristic(g)?,
        flippable_edges: base.flippable_edges().len(),
    })
}

/// Fails with a validation error unless every structural check passes.
pub fn check_base(base: &BaseComplex) -> Result<(), CliError> {
    let d = validate_base(base);
    if d.all_pass() {
        Ok(())
    } else {
        Err(CliError::Validation(d.failures.join("; ")))
    }
}

pub(crate) fn write_json(dir: Option<&Path>, name: &str, value: &impl Serialize) -> Result<String, CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(name), format!("{text}\n"))?;
    }
    Ok(text)
}
