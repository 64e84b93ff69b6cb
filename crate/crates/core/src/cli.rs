//! Command-line front end: parses a problem file, runs one stage of the
//! pipeline and writes JSON/DOT artifacts.
//!
//! Exit codes: 0 when every verdict of the command holds, 1 when one fails
//! (details in `certificate.json`), 2 when the input cannot be read or is not
//! JSON.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::AlgebraWithBasis;
use crate::error::{Error, Result};
use crate::homological::{hypothesis_check, Workspace};
use crate::orbit::{build_subrings, BlockAlgebra, BlockDim, SequenceData};
use crate::presentation::{global_dimension_within, invariants_compare, present_basic, Dimension, InvariantPanel, PanelComparison};
use crate::problem::{parse_unvalidated, target_algebra, ArrowSpec, Instance, ProblemSpec};
use crate::rep::check_exact_triple;
use crate::scalar::Scalar;
use crate::tilting::{run_pipeline, verify_equivalence, EquivalenceCertificate, VerifyInput};

#[derive(Parser, Debug)]
#[command(name = "tiltlab", version, about = "Derived equivalences from exact sequences, exactly")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct CommonArgs {
    /// Problem file (JSON).
    pub problem: PathBuf,
    /// Directory for artifacts.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Overrides `phi`, e.g. `--phi 0,3,4`.
    #[arg(long, value_delimiter = ',')]
    pub phi: Option<Vec<usize>>,
    /// Overrides `options.gldim_cap`.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Runs the pipeline even when Ext-vanishing fails.
    #[arg(long)]
    pub allow_unchecked_hypotheses: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Exactness, add(M) witness, admissibility and Ext-vanishing.
    Check(CommonArgs),
    /// Block dimensions and presentations of the subrings.
    Subrings(CommonArgs),
    /// Full equivalence certificate.
    Verify(CommonArgs),
    /// Presentation of one algebra (all subrings when omitted).
    Present {
        #[command(flatten)]
        args: CommonArgs,
        /// Lambda1, Lambda2, Gamma, Lambda or EndT.
        algebra: Option<String>,
    },
    /// Global dimensions of Lambda1 and Lambda2 and the bound between them.
    Gldim(CommonArgs),
}

impl Command {
    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Check(a) | Command::Subrings(a) | Command::Verify(a) | Command::Gldim(a) => a,
            Command::Present { args, .. } => args,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Check(_) => "check",
            Command::Subrings(_) => "subrings",
            Command::Verify(_) => "verify",
            Command::Present { .. } => "present",
            Command::Gldim(_) => "gldim",
        }
    }
}

/// What a run produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: bool,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            0
        } else {
            1
        }
    }
}

/// `certificate.json` for every command except `verify`.
#[derive(Clone, Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub input_digest: Option<String>,
    pub field: String,
    pub phi: Vec<usize>,
    pub checks: BTreeMap<String, bool>,
    pub details: BTreeMap<String, Value>,
    pub errors: Vec<String>,
    pub verdict: bool,
}

impl CommandReport {
    fn new(command: &str, spec: &ProblemSpec) -> Self {
        CommandReport {
            command: command.to_string(),
            input_digest: Some(spec.digest()),
            field: spec.field.to_string(),
            phi: spec.phi.clone(),
            checks: BTreeMap::new(),
            details: BTreeMap::new(),
            errors: Vec::new(),
            verdict: false,
        }
    }

    fn finish(&mut self) {
        self.verdict = self.errors.is_empty() && self.checks.values().all(|&b| b);
    }
}

/// Contents of `presentation_<name>.json`.
#[derive(Clone, Debug, Serialize)]
pub struct PresentationArtifact {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub blocks: Vec<BlockDim>,
    pub panel: InvariantPanel,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
    pub relations: Vec<String>,
    pub paths_span_radical: bool,
    pub target: Option<TargetComparison>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetComparison {
    pub panel: InvariantPanel,
    pub comparison: PanelComparison,
    pub matches: bool,
}

pub fn write_json<T: Serialize>(path: &FsPath, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses `argv`, runs, prints a one-line summary and returns the exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli.command) {
        Ok(o) => {
            println!(
                "{}: verdict {} ({} artifacts in {})",
                cli.command.name(),
                o.verdict,
                o.files.len(),
                cli.command.args().out.display()
            );
            o.exit_code()
        }
        Err(e) => {
            eprintln!("tiltlab: {e}");
            2
        }
    }
}

/// Runs a command. Only unreadable or non-JSON input is an `Err`;
/// mathematical failures are recorded in the artifacts.
pub fn run(cmd: &Command) -> Result<Outcome> {
    let args = cmd.args();
    let text = fs::read_to_string(&args.problem).map_err(|e| Error::Io(format!("{}: {e}", args.problem.display())))?;
    fs::create_dir_all(&args.out).map_err(|e| Error::Io(format!("{}: {e}", args.out.display())))?;
    let mut spec = match parse_unvalidated(&text) {
        Ok(s) => s,
        Err(e @ Error::Validation { .. }) => return fail_early(cmd, None, &[], e),
        Err(e) => return Err(e),
    };
    if let Some(phi) = &args.phi {
        spec.phi = phi.clone();
    }
    if let Some(cap) = args.cap {
        spec.options.gldim_cap = cap;
    }
    if args.allow_unchecked_hypotheses {
        spec.options.allow_unchecked_hypotheses = true;
    }
    if let Err(e) = spec.validate() {
        return fail_early(cmd, Some(&spec), &spec.phi.clone(), e);
    }
    let field = spec.field.clone();
    crate::with_scalar!(
        field,
        S => run_typed::<S>(cmd, &spec),
        fail_early(cmd, Some(&spec), &spec.phi.clone(), Error::UnsupportedCharacteristic(spec.field.to_string()))
    )
}

fn fail_early(cmd: &Command, spec: Option<&ProblemSpec>, phi: &[usize], e: Error) -> Result<Outcome> {
    let path = cmd.args().out.join("certificate.json");
    let field = spec.map(|s| s.field.to_string()).unwrap_or_default();
    let digest = spec.map(|s| s.digest());
    match cmd {
        Command::Verify(_) => write_json(&path, &EquivalenceCertificate::failed(&field, phi, digest, e.to_string()))?,
        _ => {
            let mut r = CommandReport {
                command: cmd.name().to_string(),
                input_digest: digest,
                field,
                phi: phi.to_vec(),
                checks: BTreeMap::new(),
                details: BTreeMap::new(),
                errors: vec![e.to_string()],
                verdict: false,
            };
            r.finish();
            write_json(&path, &r)?;
        }
    }
    Ok(Outcome {
        verdict: false,
        files: vec![path],
    })
}

fn run_typed<S: Scalar>(cmd: &Command, spec: &ProblemSpec) -> Result<Outcome> {
    let out = cmd.args().out.clone();
    let mut files = Vec::new();
    let mut inst = match Instance::<S>::new(spec) {
        Ok(i) => i,
        Err(e) => return fail_early(cmd, Some(spec), &spec.phi, e),
    };
    let cert_path = out.join("certificate.json");
    let verdict = match cmd {
        Command::Verify(_) => {
            let cert = verify(&mut inst, &out, &mut files)?;
            write_json(&cert_path, &cert)?;
            cert.verdict
        }
        _ => {
            let mut report = CommandReport::new(cmd.name(), spec);
            match cmd {
                Command::Check(_) => check(&mut inst, &mut report),
                Command::Subrings(_) => subrings(&mut inst, &mut report, &out, &mut files)?,
                Command::Present { algebra, .. } => present(&mut inst, &mut report, algebra.as_deref(), &out, &mut files)?,
                Command::Gldim(_) => gldim(&mut inst, &mut report),
                Command::Verify(_) => unreachable!(),
            }
            report.finish();
            write_json(&cert_path, &report)?;
            report.verdict
        }
    };
    files.insert(0, cert_path);
    Ok(Outcome { verdict, files })
}

/// Splits an instance into its workspace and the pipeline input.
fn split<S: Scalar>(inst: &mut Instance<S>) -> (&mut Workspace<S>, VerifyInput<'_, S>) {
    let Instance {
        spec,
        ws,
        triple,
        x,
        y,
        m_ids,
        phi,
        ..
    } = inst;
    let input = VerifyInput {
        triple,
        x: *x,
        y: *y,
        m_ids,
        phi: phi.clone(),
        allow_unchecked_hypotheses: spec.options.allow_unchecked_hypotheses,
        input_digest: Some(spec.digest()),
        field: spec.field.to_string(),
    };
    (ws, input)
}

fn verify<S: Scalar>(inst: &mut Instance<S>, out: &FsPath, files: &mut Vec<PathBuf>) -> Result<EquivalenceCertificate> {
    let spec = inst.spec.clone();
    let (ws, input) = split(inst);
    let mut cert = verify_equivalence(ws, input);
    if cert.exact && cert.errors.is_empty() {
        let mut panels = BTreeMap::new();
        if let Ok(sd) = SequenceData::new(&mut inst.ws, &inst.triple, inst.x, inst.y, &inst.m_ids, inst.phi.clone()) {
            if let Ok((sub, _)) = build_subrings(&mut inst.ws, &sd) {
                for a in [&sub.lambda1, &sub.lambda2] {
                    let v = match emit_block_presentation(&spec, a, out, files) {
                        Ok(art) => serde_json::to_value(&art.panel).expect("panels serialize"),
                        Err(e) => json!({ "error": e.to_string() }),
                    };
                    panels.insert(a.name.clone(), v);
                }
            }
        }
        cert.presentation = Some(json!(panels));
    }
    Ok(cert)
}

fn check<S: Scalar>(inst: &mut Instance<S>, r: &mut CommandReport) {
    r.checks.insert("admissible".into(), true);
    let summands = inst.m_summands();
    match check_exact_triple(inst.ws.algebra(), &inst.triple, &summands) {
        Ok(()) => {
            r.checks.insert("exact".into(), true);
            r.checks.insert("add_witness".into(), true);
        }
        Err(e @ Error::NotInAddM(_)) => {
            r.checks.insert("exact".into(), true);
            r.checks.insert("add_witness".into(), false);
            r.errors.push(e.to_string());
        }
        Err(e) => {
            r.checks.insert("exact".into(), false);
            r.errors.push(e.to_string());
        }
    }
    match hypothesis_check(&mut inst.ws, inst.x, inst.y, &inst.m_ids, inst.phi.elements()) {
        Ok(h) => {
            r.checks.insert("hypotheses".into(), h.passed());
            r.details
                .insert("hypothesis_report".into(), serde_json::to_value(&h).expect("reports serialize"));
        }
        Err(e) => {
            r.checks.insert("hypotheses".into(), false);
            r.errors.push(e.to_string());
        }
    }
}

fn block_summary<S: Scalar>(a: &BlockAlgebra<S>) -> Value {
    json!({
        "dim": a.dim(),
        "atoms": a.atom_names,
        "blocks": a.block_dims,
        "associative_unital": a.algebra.validate().passed(),
    })
}

fn subrings<S: Scalar>(inst: &mut Instance<S>, r: &mut CommandReport, out: &FsPath, files: &mut Vec<PathBuf>) -> Result<()> {
    let sd = match SequenceData::new(&mut inst.ws, &inst.triple, inst.x, inst.y, &inst.m_ids, inst.phi.clone()) {
        Ok(s) => s,
        Err(e) => {
            r.errors.push(e.to_string());
            return Ok(());
        }
    };
    let (sub, hats) = match build_subrings(&mut inst.ws, &sd) {
        Ok(s) => s,
        Err(e) => {
            r.errors.push(e.to_string());
            return Ok(());
        }
    };
    r.details.insert(
        "hatted_dims".into(),
        json!({
            "end_x": hats.end_x.dims(),
            "end_y": hats.end_y.dims(),
            "x_to_y": hats.x_to_y.dims(),
            "x_to_m": hats.x_to_m.iter().map(|h| h.dims()).collect::<Vec<_>>(),
            "m_to_y": hats.m_to_y.iter().map(|h| h.dims()).collect::<Vec<_>>(),
        }),
    );
    let spec = inst.spec.clone();
    for a in [&sub.lambda1, &sub.lambda2, &sub.gamma, &sub.lambda3] {
        r.checks
            .insert(format!("{}_associative_unital", a.name), a.algebra.validate().passed());
        r.details.insert(a.name.clone(), block_summary(a));
        record_presentation(r, emit_block_presentation(&spec, a, out, files), &a.name);
    }
    Ok(())
}

fn record_presentation(r: &mut CommandReport, res: Result<PresentationArtifact>, name: &str) {
    match res {
        Ok(art) => {
            r.checks.insert(format!("{name}_presented"), art.paths_span_radical);
            if let Some(t) = &art.target {
                r.details.insert(
                    format!("{name}_target"),
                    serde_json::to_value(t).expect("comparisons serialize"),
                );
            }
        }
        Err(e) => {
            r.checks.insert(format!("{name}_presented"), false);
            r.errors.push(format!("{name}: {e}"));
        }
    }
}

fn emit_block_presentation<S: Scalar>(
    spec: &ProblemSpec,
    a: &BlockAlgebra<S>,
    out: &FsPath,
    files: &mut Vec<PathBuf>,
) -> Result<PresentationArtifact> {
    emit_presentation(spec, &a.name, &a.algebra, a.block_dims.clone(), out, files)
}

/// Presents `a`, compares against a target of the same name if the problem
/// has one, and writes the JSON and DOT files.
pub fn emit_presentation<S: Scalar>(
    spec: &ProblemSpec,
    name: &str,
    a: &AlgebraWithBasis<S>,
    blocks: Vec<BlockDim>,
    out: &FsPath,
    files: &mut Vec<PathBuf>,
) -> Result<PresentationArtifact> {
    let art = presentation_artifact(spec, name, a, blocks)?;
    let json_path = out.join(format!("presentation_{name}.json"));
    write_json(&json_path, &art)?;
    let dot_path = out.join(format!("quiver_{name}.dot"));
    let q = crate::problem::quiver_of(&crate::problem::QuiverSpec {
        vertices: art.vertices.clone(),
        arrows: art.arrows.clone(),
    })?;
    fs::write(&dot_path, q.to_dot(name)).map_err(|e| Error::Io(format!("{}: {e}", dot_path.display())))?;
    files.push(json_path);
    files.push(dot_path);
    Ok(art)
}

pub fn presentation_artifact<S: Scalar>(
    spec: &ProblemSpec,
    name: &str,
    a: &AlgebraWithBasis<S>,
    blocks: Vec<BlockDim>,
) -> Result<PresentationArtifact> {
    let p = present_basic(a, spec.options.max_rel_deg)?;
    let panel = p.panel();
    let target = match spec.targets.get(name) {
        Some(t) => {
            let ta = target_algebra::<S>(t)?;
            let tp = present_basic(ta.algebra(), spec.options.max_rel_deg)?.panel();
            let comparison = invariants_compare(&panel, &tp);
            Some(TargetComparison {
                matches: comparison.all(),
                panel: tp,
                comparison,
            })
        }
        None => None,
    };
    let q = &p.quiver;
    Ok(PresentationArtifact {
        name: name.to_string(),
        field: spec.field.to_string(),
        dim: a.dim(),
        blocks,
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|ar| ArrowSpec {
                name: ar.name.clone(),
                source: q.vertices()[ar.source].clone(),
                target: q.vertices()[ar.target].clone(),
            })
            .collect(),
        relations: p.relation_strings(),
        paths_span_radical: p.paths_span_radical,
        panel,
        target,
    })
}

const ALGEBRA_NAMES: [&str; 5] = ["Lambda1", "Lambda2", "Gamma", "Lambda", "EndT"];

fn present<S: Scalar>(
    inst: &mut Instance<S>,
    r: &mut CommandReport,
    which: Option<&str>,
    out: &FsPath,
    files: &mut Vec<PathBuf>,
) -> Result<()> {
    if let Some(w) = which {
        if !ALGEBRA_NAMES.contains(&w) {
            r.errors
                .push(Error::validation("algebra", format!("{w:?} is not one of {ALGEBRA_NAMES:?}")).to_string());
            return Ok(());
        }
    }
    let spec = inst.spec.clone();
    if which == Some("EndT") {
        let (ws, mut input) = split(inst);
        input.allow_unchecked_hypotheses = true;
        let mut cert = EquivalenceCertificate::failed("", &[], None, String::new());
        cert.errors.clear();
        match run_pipeline(ws, &input, &mut cert) {
            Ok(Some((_, end))) => {
                let res = emit_presentation(&spec, "EndT", &end.algebra, Vec::new(), out, files);
                record_presentation(r, res, "EndT");
            }
            Ok(None) => r.errors.push("EndT: pipeline stopped before End(T) was built".into()),
            Err(e) => r.errors.push(format!("EndT: {e}")),
        }
        return Ok(());
    }
    let sd = match SequenceData::new(&mut inst.ws, &inst.triple, inst.x, inst.y, &inst.m_ids, inst.phi.clone()) {
        Ok(s) => s,
        Err(e) => {
            r.errors.push(e.to_string());
            return Ok(());
        }
    };
    let sub = match build_subrings(&mut inst.ws, &sd) {
        Ok((s, _)) => s,
        Err(e) => {
            r.errors.push(e.to_string());
            return Ok(());
        }
    };
    for a in [&sub.lambda1, &sub.lambda2, &sub.gamma, &sub.lambda3] {
        if which.is_none_or(|w| w == a.name) {
            r.details.insert(a.name.clone(), block_summary(a));
            record_presentation(r, emit_block_presentation(&spec, a, out, files), &a.name);
        }
    }
    Ok(())
}

fn dimension_json(d: &std::result::Result<Dimension, String>) -> Value {
    match d {
        Ok(d) => serde_json::to_value(d).expect("dimensions serialize"),
        Err(e) => json!({ "error": e }),
    }
}

/// `|gldim Λ₁ - gldim Λ₂| <= 1` when both are known; `None` otherwise.
pub fn gldim_bound(a: Dimension, b: Dimension) -> Option<bool> {
    match (a, b) {
        (Dimension::Exact(x), Dimension::Exact(y)) => Some(x.abs_diff(y) <= 1),
        (Dimension::Exact(x), Dimension::AtLeast(y)) | (Dimension::AtLeast(y), Dimension::Exact(x)) if y > x + 1 => Some(false),
        _ => None,
    }
}

fn gldim<S: Scalar>(inst: &mut Instance<S>, r: &mut CommandReport) {
    let (cap, budget) = (inst.spec.options.gldim_cap, inst.spec.options.gldim_max_module_dim);
    let sub = SequenceData::new(&mut inst.ws, &inst.triple, inst.x, inst.y, &inst.m_ids, inst.phi.clone())
        .and_then(|sd| build_subrings(&mut inst.ws, &sd));
    let sub = match sub {
        Ok((s, _)) => s,
        Err(e) => {
            r.errors.push(e.to_string());
            return;
        }
    };
    let d1 = global_dimension_within(&sub.lambda1.algebra, cap, budget).map_err(|e| e.to_string());
    let d2 = global_dimension_within(&sub.lambda2.algebra, cap, budget).map_err(|e| e.to_string());
    r.details.insert("cap".into(), json!(cap));
    r.details.insert("max_module_dim".into(), json!(budget));
    r.details.insert("Lambda1".into(), dimension_json(&d1));
    r.details.insert("Lambda2".into(), dimension_json(&d2));
    let bound = match (&d1, &d2) {
        (Ok(a), Ok(b)) => match gldim_bound(*a, *b) {
            Some(true) => "holds",
            Some(false) => "violated",
            None => "undetermined",
        },
        _ => "undetermined",
    };
    r.details.insert("bound".into(), json!(bound));
    r.checks.insert("gldim_bound".into(), bound != "violated");
}
