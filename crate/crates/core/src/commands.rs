//! The commands behind the `ncdef` binary. Each one loads a problem file,
//! runs one computation and fills a [`Report`].

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde_json::json;

use crate::artin::{
    dimension_signature, duality_check, end_algebra, flatness_check, socle_and_gorenstein, spherical_permutation,
    verify_pointed_artin, AlgebraModule, EndAlgebra, Side,
};
use crate::homext::{common_extension, ext1_space, extension_of, hom_space, ExtClass, ExtSpace};
use crate::linalg::Scalar;
use crate::problem::{Problem, ProblemError};
use crate::quiver::{is_isomorphic, IsoVerdict, Representation};
use crate::report::{cocycle_view, grid_text, list_text, module_view, morphism_view, Report};
use crate::tower::{
    check_simple_collection, random_maximal_sequence, run_custom_sequence, run_tower_observed, ClassSelector,
    Collection, CustomRun, ExtensionStep, StepRecord, TowerOptions, TowerResult, TowerStatus,
};
use crate::Error;

pub const DEFAULT_MAX_STEPS: usize = 10;
pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_SEED: u64 = 0;
/// Largest `F⁽ᴺ⁾` whose endomorphism algebra `end-algebra` extracts from a tower that did not terminate.
pub const TRUNCATED_ALGEBRA_DIM_LIMIT: usize = 64;
/// Tower summands up to this total dimension are written out in full.
const SUMMAND_VIEW_LIMIT: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Check dim Hom(F_i, F_j) = δ_ij for a collection
    CheckCollection,
    /// Hom space between two modules (--modules A,B)
    Hom,
    /// Ext¹(A, B) with basis cocycles (--modules A,B)
    Ext1,
    /// Middle term of 0 → B → E → A → 0 for a class (--modules A,B [--class c1,c2,..])
    Extend,
    /// Common extension of two classes over G (--modules G,F0,F1 [--class ..] [--class ..])
    CommonExt,
    /// Universal extension tower of a collection
    Tower,
    /// Iterated single extensions (--steps i:j[:k],.. or seeded random), compared with the tower
    CustomSequence,
    /// End(F⁽ᴺ⁾) as an r-pointed Artin algebra with its radical filtration
    EndAlgebra,
    /// Socles of the deformation algebra and the Gorenstein verdict
    Gorenstein,
    /// dim Hom_R(m, R) = dim m for the simple and regular right modules
    Duality,
    /// The spherical permutation σ
    Spherical,
    /// Flatness of F⁽ᴺ⁾ over its endomorphism algebra
    FlatCheck,
    /// Randomized isomorphism test (--modules A,B)
    Iso,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    /// Problem file (JSON)
    #[arg(long)]
    pub input: PathBuf,
    /// Collection to use when the file defines several
    #[arg(long)]
    pub collection: Option<String>,
    /// Comma-separated module names
    #[arg(long, value_delimiter = ',')]
    pub modules: Vec<String>,
    /// Tower cutoff (default: options.max_steps, then 10)
    #[arg(long)]
    pub max_steps: Option<usize>,
    /// Seed for randomized steps (default: options.seed, then 0)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random trials for isomorphism tests (default: options.trials, then 20)
    #[arg(long)]
    pub trials: Option<usize>,
    /// Write the full report as JSON to this path
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Class coordinates in the Ext¹ basis, e.g. 1,-2; repeat for common-ext
    #[arg(long = "class", allow_hyphen_values = true)]
    pub classes: Vec<String>,
    /// custom-sequence steps i:j or i:j:k (collection positions and basis index, all 1-based)
    #[arg(long, value_delimiter = ',')]
    pub steps: Vec<String>,
}

impl Flags {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        Flags {
            input: input.into(),
            ..Flags::default()
        }
    }

    fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("input".into(), self.input.display().to_string());
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                m.insert(k.into(), v);
            }
        };
        put("collection", self.collection.clone());
        put("modules", (!self.modules.is_empty()).then(|| self.modules.join(",")));
        put("max_steps", self.max_steps.map(|n| n.to_string()));
        put("seed", self.seed.map(|n| n.to_string()));
        put("trials", self.trials.map(|n| n.to_string()));
        put("class", (!self.classes.is_empty()).then(|| self.classes.join(";")));
        put("steps", (!self.steps.is_empty()).then(|| self.steps.join(",")));
        m
    }
}

enum Failure {
    Problem(ProblemError),
    Usage(String),
    Lib(Error),
}

impl From<ProblemError> for Failure {
    fn from(e: ProblemError) -> Self {
        Failure::Problem(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

struct Ctx<'a> {
    problem: &'a Problem,
    flags: &'a Flags,
    max_steps: usize,
    seed: u64,
    trials: usize,
}

/// Loads the problem file and runs `command`. Never panics on bad input; errors land in the report.
pub fn run(command: Command, flags: &Flags) -> Report {
    let start = Instant::now();
    let mut report = Report::new(&command.name(), flags.echo());
    match Problem::load(&flags.input) {
        Err(e) => report.error(e.exit_code(), e.to_string()),
        Ok(problem) => {
            report.problem = problem.echo();
            let opts = problem.file.options;
            let ctx = Ctx {
                problem: &problem,
                flags,
                max_steps: flags.max_steps.or(opts.max_steps).unwrap_or(DEFAULT_MAX_STEPS),
                seed: flags.seed.or(opts.seed).unwrap_or(DEFAULT_SEED),
                trials: flags.trials.or(opts.trials).unwrap_or(DEFAULT_TRIALS),
            };
            if let Err(f) = dispatch(command, &ctx, &mut report) {
                match f {
                    Failure::Problem(e) => report.error(e.exit_code(), e.to_string()),
                    Failure::Usage(msg) => report.error(2, msg),
                    Failure::Lib(e @ Error::Invariant(_)) => report.error(1, e.to_string()),
                    Failure::Lib(e) => report.error(4, e.to_string()),
                }
            }
        }
    }
    report.elapsed = Some(start.elapsed());
    report
}

fn dispatch(command: Command, ctx: &Ctx, report: &mut Report) -> Outcome {
    match command {
        Command::CheckCollection => check_collection(ctx, report),
        Command::Hom => hom(ctx, report),
        Command::Ext1 => ext1(ctx, report),
        Command::Extend => extend(ctx, report),
        Command::CommonExt => common_ext(ctx, report),
        Command::Tower => tower(ctx, report),
        Command::CustomSequence => custom_sequence(ctx, report),
        Command::EndAlgebra => algebra(ctx, report),
        Command::Gorenstein => gorenstein(ctx, report),
        Command::Duality => duality(ctx, report),
        Command::Spherical => spherical(ctx, report),
        Command::FlatCheck => flat_check(ctx, report),
        Command::Iso => iso(ctx, report),
    }
}

impl Ctx<'_> {
    fn modules(&self, count: usize, what: &str) -> Outcome<Vec<&Representation>> {
        if self.flags.modules.len() != count {
            return Err(Failure::Usage(format!("expected --modules {what}")));
        }
        Ok(self
            .flags
            .modules
            .iter()
            .map(|m| self.problem.module(m))
            .collect::<Result<_, _>>()?)
    }

    fn collection(&self) -> Outcome<Collection> {
        Ok(self.problem.collection(self.flags.collection.as_deref())?)
    }

    fn tower_options(&self) -> TowerOptions {
        TowerOptions {
            max_steps: self.max_steps,
            ..TowerOptions::default()
        }
    }

    fn class(&self, k: usize, space: &Arc<ExtSpace>, default_basis: usize) -> Outcome<ExtClass> {
        match self.flags.classes.get(k) {
            Some(text) => {
                let coords = text
                    .split(',')
                    .map(|s| self.problem.field().parse(s))
                    .collect::<Result<Vec<Scalar>, _>>()
                    .map_err(|e| Failure::Usage(format!("--class {text}: {e}")))?;
                Ok(ExtClass::new(space, coords)?)
            }
            None if default_basis < space.dim() => Ok(ExtClass::basis(space, default_basis)?),
            None => Err(Error::Precondition(format!(
                "Ext¹ has dimension {}; no basis class {}",
                space.dim(),
                default_basis + 1
            ))
            .into()),
        }
    }
}

fn check_collection(ctx: &Ctx, report: &mut Report) -> Outcome {
    let c = ctx.collection()?;
    let simple = check_simple_collection(&c)?;
    report.line(format!("r = {}", c.r()));
    report.line(format!("dim Hom(F_i, F_j) = {}", grid_text(&simple.hom_dims)));
    if simple.pass {
        report.line("simple collection: yes");
    } else {
        let pairs: Vec<String> = simple
            .offending
            .iter()
            .map(|(i, j)| format!("({}, {})", i + 1, j + 1))
            .collect();
        report.line(format!("simple collection: no, offending pairs {}", pairs.join(", ")));
        report.fail();
    }
    report.result = json!(simple);
    Ok(())
}

fn hom(ctx: &Ctx, report: &mut Report) -> Outcome {
    let m = ctx.modules(2, "A,B")?;
    let h = hom_space(m[0], m[1])?;
    report.line(format!(
        "dim Hom({}, {}) = {}",
        ctx.flags.modules[0],
        ctx.flags.modules[1],
        h.dim()
    ));
    let basis: Vec<_> = h.basis().iter().map(morphism_view).collect();
    report.result = json!({"dim": h.dim(), "basis": basis});
    Ok(())
}

fn ext1(ctx: &Ctx, report: &mut Report) -> Outcome {
    let m = ctx.modules(2, "A,B")?;
    let space = ext1_space(m[0], m[1])?;
    report.line(format!(
        "dim Ext¹({}, {}) = {}",
        ctx.flags.modules[0],
        ctx.flags.modules[1],
        space.dim()
    ));
    let basis: Vec<_> = (0..space.dim())
        .map(|i| cocycle_view(m[0], &space.cocycle(i)))
        .collect();
    report.result = json!({
        "dim": space.dim(),
        "coboundary_rank": space.coboundary_rank(),
        "basis_cocycles": basis,
    });
    Ok(())
}

fn extend(ctx: &Ctx, report: &mut Report) -> Outcome {
    let m = ctx.modules(2, "A,B")?;
    let space = Arc::new(ext1_space(m[0], m[1])?);
    let class = ctx.class(0, &space, 0)?;
    let e = extension_of(&class)?;
    let split = class.is_zero();
    report.line(format!(
        "0 → {} → E → {} → 0 with class {}",
        ctx.flags.modules[1],
        ctx.flags.modules[0],
        list_text(class.coordinates())
    ));
    report.line(format!("dim E = {}", list_text(e.middle.dims())));
    report.line(format!("split: {}", if split { "yes" } else { "no" }));
    report.result = json!({
        "class": class.coordinates(),
        "split": split,
        "middle": module_view(&e.middle),
        "inclusion": morphism_view(&e.inclusion),
        "projection": morphism_view(&e.projection),
    });
    Ok(())
}

fn common_ext(ctx: &Ctx, report: &mut Report) -> Outcome {
    let m = ctx.modules(3, "G,F0,F1")?;
    let names = &ctx.flags.modules;
    let s0 = Arc::new(ext1_space(m[0], m[1])?);
    let s1 = if names[1] == names[2] {
        Arc::clone(&s0)
    } else {
        Arc::new(ext1_space(m[0], m[2])?)
    };
    let xi0 = ctx.class(0, &s0, 0)?;
    let xi1 = ctx.class(1, &s1, usize::from(names[1] == names[2]))?;
    let ce = common_extension(&xi0, &xi1)?;
    report.line(format!(
        "ξ₀ = {} in Ext¹({}, {})",
        list_text(xi0.coordinates()),
        names[0],
        names[1]
    ));
    report.line(format!(
        "ξ₁ = {} in Ext¹({}, {})",
        list_text(xi1.coordinates()),
        names[0],
        names[2]
    ));
    report.line(format!(
        "dim G₀ = {}, dim G₁ = {}, dim H = {}",
        list_text(ce.middles[0].middle.dims()),
        list_text(ce.middles[1].middle.dims()),
        list_text(ce.h.dims())
    ));
    let nontrivial = ce.is_nontrivial();
    report.line(format!(
        "pulled-back classes {} and {}: {}",
        list_text(ce.pulled_back[0].coordinates()),
        list_text(ce.pulled_back[1].coordinates()),
        if nontrivial { "both non-trivial" } else { "trivial" }
    ));
    if !nontrivial {
        report.fail();
    }
    report.result = json!({
        "xi": [xi0.coordinates(), xi1.coordinates()],
        "g_dims": [ce.middles[0].middle.dims(), ce.middles[1].middle.dims()],
        "h": module_view(&ce.h),
        "pulled_back": [ce.pulled_back[0].coordinates(), ce.pulled_back[1].coordinates()],
        "nontrivial": nontrivial,
    });
    Ok(())
}

fn status_text(s: &TowerStatus) -> String {
    match s {
        TowerStatus::Terminated { level } => format!("Terminated({level})"),
        TowerStatus::CutoffReached { max_steps } => format!("CutoffReached({max_steps})"),
        TowerStatus::DimensionLimit {
            level,
            next_total_dim,
            limit,
        } => format!("DimensionLimit(level {level}: next total dimension {next_total_dim} exceeds {limit})"),
    }
}

fn run_tower_logged(ctx: &Ctx, c: &Collection, report: &mut Report) -> Outcome<(TowerResult, Vec<StepRecord>)> {
    let mut records = Vec::new();
    let t = run_tower_observed(c, &ctx.tower_options(), |rec| records.push(rec.clone()))?;
    for rec in &records {
        let dims: Vec<String> = rec.summand_dims.iter().map(|d| list_text(d)).collect();
        report.line(format!("level {}: r = {}, dims {}", rec.level, rec.r, dims.join(" ")));
    }
    report.line(format!("status: {}", status_text(&t.status)));
    report.line(format!("r-sequence: {}", list_text(t.state.r_sequence())));
    Ok((t, records))
}

fn tower(ctx: &Ctx, report: &mut Report) -> Outcome {
    let c = ctx.collection()?;
    let (t, records) = run_tower_logged(ctx, &c, report)?;
    report.line(format!("filtration dims: {}", list_text(&t.state.filtration_dims())));
    let summands: Option<Vec<_>> =
        (t.state.total_dim() <= SUMMAND_VIEW_LIMIT).then(|| t.state.summands().iter().map(module_view).collect());
    report.result = json!({
        "status": t.status,
        "r_sequence": t.state.r_sequence(),
        "multiplicities": t.state.multiplicities(),
        "filtration_dims": t.state.filtration_dims(),
        "levels": records,
        "summands": summands,
    });
    Ok(())
}

fn parse_step(text: &str) -> Result<ExtensionStep, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let index = |s: &str| -> Result<usize, String> {
        match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n - 1),
            _ => Err(format!("bad step {text:?}: positions are 1-based integers")),
        }
    };
    match parts.as_slice() {
        [i, j] => Ok(ExtensionStep {
            i: index(i)?,
            j: index(j)?,
            selector: ClassSelector::Basis(0),
        }),
        [i, j, k] => Ok(ExtensionStep {
            i: index(i)?,
            j: index(j)?,
            selector: ClassSelector::Basis(index(k)?),
        }),
        _ => Err(format!("bad step {text:?}: expected i:j or i:j:k")),
    }
}

fn custom_sequence(ctx: &Ctx, report: &mut Report) -> Outcome {
    let c = ctx.collection()?;
    let run: CustomRun = if ctx.flags.steps.is_empty() {
        report.seed = Some(ctx.seed);
        random_maximal_sequence(&c, ctx.seed, ctx.max_steps * c.r() * 8)?
    } else {
        let steps = ctx
            .flags
            .steps
            .iter()
            .map(|s| parse_step(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(Failure::Usage)?;
        run_custom_sequence(&c, &steps, steps.len())?
    };
    for (n, (i, j, coords)) in run.steps.iter().enumerate() {
        report.line(format!(
            "step {}: extend G_{} by F_{} with class {}",
            n + 1,
            i + 1,
            j + 1,
            list_text(coords)
        ));
    }
    let last = run.last();
    let dims: Vec<String> = last.iter().map(|g| list_text(g.dims())).collect();
    report.line(format!("final summand dims: {}", dims.join(" ")));
    report.line(format!("maximal: {}", if run.maximal { "yes" } else { "no" }));
    let mut comparison = serde_json::Value::Null;
    if run.maximal {
        let t = crate::tower::run_tower(&c, &ctx.tower_options())?;
        if t.terminated() {
            report.seed = Some(ctx.seed);
            let mut all = true;
            for (g, f) in last.iter().zip(t.state.summands()) {
                all &= is_isomorphic(g, f, ctx.trials, ctx.seed)?.is_iso();
            }
            report.line(format!(
                "isomorphic to F⁽ᴺ⁾ summandwise: {}",
                if all { "yes" } else { "no witness found" }
            ));
            if !all {
                report.fail();
            }
            comparison = json!({"isomorphic": all, "trials": ctx.trials});
        }
    }
    let steps: Vec<_> = run
        .steps
        .iter()
        .map(|(i, j, coords)| json!({"i": i + 1, "j": j + 1, "class": coords}))
        .collect();
    report.result = json!({
        "steps": steps,
        "final_dims": last.iter().map(|g| g.dims().to_vec()).collect::<Vec<_>>(),
        "maximal": run.maximal,
        "tower_comparison": comparison,
    });
    Ok(())
}

/// Runs the tower and extracts its algebra; `require_terminated` turns a cutoff into a precondition failure.
fn tower_algebra(
    ctx: &Ctx,
    report: &mut Report,
    require_terminated: bool,
) -> Outcome<(Collection, TowerResult, EndAlgebra)> {
    let c = ctx.collection()?;
    let (t, _) = run_tower_logged(ctx, &c, report)?;
    if !t.terminated() {
        if require_terminated {
            return Err(
                Error::Precondition(format!("the tower did not terminate ({})", status_text(&t.status))).into(),
            );
        }
        if t.state.total_dim() > TRUNCATED_ALGEBRA_DIM_LIMIT {
            return Err(Error::Precondition(format!(
                "the tower did not terminate and dim F⁽ᴺ⁾ = {} exceeds {TRUNCATED_ALGEBRA_DIM_LIMIT}; lower --max-steps",
                t.state.total_dim()
            ))
            .into());
        }
    }
    let end = end_algebra(&t)?;
    Ok((c, t, end))
}

fn algebra(ctx: &Ctx, report: &mut Report) -> Outcome {
    let (_, t, end) = tower_algebra(ctx, report, false)?;
    let a = &end.algebra;
    let artin = verify_pointed_artin(a);
    let sum_r: usize = t.state.r_sequence().iter().sum();
    if !t.terminated() {
        report.line("truncated: End of the last computed level");
    }
    report.line(format!("dim R = {} (sum of r-sequence {})", a.dim(), sum_r));
    report.line(format!(
        "r = {}, commutative: {}",
        a.r(),
        if artin.commutative { "yes" } else { "no" }
    ));
    report.line(format!("Art_r axioms: {}", if artin.pass { "pass" } else { "FAIL" }));
    let signature = match artin.nilpotency_index {
        Some(index) => {
            report.line(format!("nilpotency index: {index}"));
            let sig = dimension_signature(a)?;
            for (m, grid) in sig.grids.iter().enumerate() {
                report.line(format!("dim e_j M^{m} e_i = {}", grid_text(grid)));
            }
            Some(sig)
        }
        None => {
            report.line("augmentation ideal is not nilpotent");
            None
        }
    };
    if !artin.pass || a.dim() != sum_r {
        report.fail();
    }
    report.result = json!({
        "terminated": t.terminated(),
        "r_sequence": t.state.r_sequence(),
        "dim_equals_sum_r": a.dim() == sum_r,
        "artin": artin,
        "signature": signature,
        "algebra": a,
    });
    Ok(())
}

fn gorenstein(ctx: &Ctx, report: &mut Report) -> Outcome {
    let (_, _, end) = tower_algebra(ctx, report, true)?;
    let g = socle_and_gorenstein(&end.algebra)?;
    report.line(format!(
        "right socle: dim {}, colors {}",
        g.right_socle.len(),
        list_text(&g.right_socle_colors)
    ));
    report.line(format!(
        "left socle: dim {}, colors {}",
        g.left_socle.len(),
        list_text(&g.left_socle_colors)
    ));
    report.line(format!("Gorenstein: {}", if g.gorenstein { "yes" } else { "no" }));
    if !g.gorenstein {
        report.fail();
    }
    report.result = json!(g);
    Ok(())
}

fn duality(ctx: &Ctx, report: &mut Report) -> Outcome {
    let (_, _, end) = tower_algebra(ctx, report, true)?;
    let a = &end.algebra;
    let mut rows = Vec::new();
    let mut all = true;
    for i in 0..a.r() {
        let d = duality_check(a, &AlgebraModule::simple_right(a, i))?;
        report.line(format!(
            "dim Hom_R(R/M_{}, R) = {} (dim {})",
            i + 1,
            d.hom_dim,
            d.module_dim
        ));
        all &= d.pass;
        rows.push(json!({"module": format!("R/M_{}", i + 1), "report": d}));
    }
    let d = duality_check(a, &AlgebraModule::regular(a, Side::Right))?;
    report.line(format!("dim Hom_R(R, R) = {} (dim {})", d.hom_dim, d.module_dim));
    all &= d.pass;
    rows.push(json!({"module": "R", "report": d}));
    report.line(format!("duality: {}", if all { "pass" } else { "FAIL" }));
    if !all {
        report.fail();
    }
    report.result = json!({"checks": rows, "pass": all});
    Ok(())
}

fn spherical(ctx: &Ctx, report: &mut Report) -> Outcome {
    let c = ctx.collection()?;
    let (t, _) = run_tower_logged(ctx, &c, report)?;
    let s = spherical_permutation(&t, &c)?;
    report.line(format!("dim Hom(F_i, F⁽ᴺ⁾_j) = {}", grid_text(&s.hom_dims)));
    match &s.sigma {
        Some(sigma) if s.pass => {
            let images: Vec<usize> = sigma.iter().map(|j| j + 1).collect();
            report.line(format!("σ = {}", list_text(&images)));
        }
        _ => {
            report.line("no spherical permutation");
            report.fail();
        }
    }
    report.result = json!(s);
    Ok(())
}

fn flat_check(ctx: &Ctx, report: &mut Report) -> Outcome {
    let (c, t, end) = tower_algebra(ctx, report, true)?;
    report.seed = Some(ctx.seed);
    let f = flatness_check(&end, t.state.summands(), &c, ctx.trials, ctx.seed)?;
    report.line(format!(
        "dimension identity: {} (actual {}, expected {})",
        if f.dimension_identity { "pass" } else { "FAIL" },
        grid_text(&f.actual_dims),
        grid_text(&f.expected_dims)
    ));
    report.line(format!(
        "fiber identity: {} ({})",
        if f.fiber_identity { "pass" } else { "FAIL" },
        f.fiber_note
    ));
    if !f.pass {
        report.fail();
    }
    report.result = json!(f);
    Ok(())
}

fn iso(ctx: &Ctx, report: &mut Report) -> Outcome {
    let m = ctx.modules(2, "A,B")?;
    report.seed = Some(ctx.seed);
    let verdict = is_isomorphic(m[0], m[1], ctx.trials, ctx.seed)?;
    match &verdict {
        IsoVerdict::Iso(w) => {
            report.line("Iso");
            report.result = json!({"verdict": "Iso", "witness": morphism_view(w), "trials": ctx.trials});
        }
        IsoVerdict::LikelyNot(why) => {
            report.line(format!("LikelyNot: {why}"));
            report.result = json!({"verdict": "LikelyNot", "reason": why, "trials": ctx.trials});
            report.fail();
        }
    }
    Ok(())
}
