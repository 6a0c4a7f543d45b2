//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! Reports are plain `key: value` lines so identical inputs give byte-identical
//! output. Exit codes: 0 success, 2 claim refuted, 3 no admissible sequence,
//! 4 parse or invariant error, 5 oracle scale exceeded, 1 anything else.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use crate::certalg::{
    BoundClaim, CombineOp, LimitCertificate, LimitKind, ModelRef, ModelRegistry, MonotoneMap, Prover, VerificationLevel,
};
use crate::error::{Error, Result};
use crate::format::{load_path, render, Document};
use crate::funlim::{
    almost_constant_check, cluster_values_estimate, local_spread, region_defect_estimate, weak_region_defect_estimate,
    FunctionModel, GridSchedule, RegionEstimate,
};
use crate::omegalim::{accepts, inf_states, run, weak_limit_states, AutomatonSpec, LassoWord};
use crate::oracle::{oracle_accepts, oracle_fn_defect, oracle_inf_states, oracle_seq_defect};
use crate::scalar::{fmt_rational, fmt_with_hint, parse_rational, Interval, Scalar, XScalar};
use crate::seqlim::{
    convergence_radius, defect_of, display_membership, interleave, r_limit_set, set_defect, SequenceSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Terse,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "fuzzylim", version, about = "Fuzzy limits of sequences, functions and automaton runs")]
pub struct Cli {
    /// `full` adds per-level estimator traces and derivation trees.
    #[arg(long, value_enum, default_value = "terse", global = true)]
    pub format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

fn rational(s: &str) -> std::result::Result<Scalar, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub a: Scalar,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub q: Scalar,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub r: Scalar,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub b: Scalar,
    /// Check the weak (partial) limit instead of the strong one.
    #[arg(long)]
    pub weak: bool,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub lo: Scalar,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub hi: Scalar,
    /// Estimator schedule file; defaults to eight halving levels of 33 samples.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Widen,
    Plus,
    Minus,
    Scale,
    Squeeze,
    Cov,
    LowerBound,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Defect of convergence of a sequence (or sequence set) at a point.
    SeqDefect {
        file: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Scalar,
        #[arg(long, value_parser = rational)]
        r: Option<Scalar>,
        /// Also report the display membership `max(0, 1 - defect/scale)`.
        #[arg(long, value_parser = rational)]
        scale: Option<Scalar>,
    },
    /// The set of r-limits and the least achievable r.
    SeqRlimits {
        file: PathBuf,
        #[arg(long, value_parser = rational)]
        r: Scalar,
    },
    /// Interleave a sequence set into one sequence.
    SeqInterleave { file: PathBuf },
    /// Check a (q,r)-limit claim for a function file and emit a certificate.
    FnQrlimit {
        file: PathBuf,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Per-level defect estimates of `b` over a region.
    FnRegion {
        file: PathBuf,
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        b: Scalar,
        #[arg(long)]
        weak: bool,
    },
    /// Clusters of values near a region, and whether the function is constant on it.
    FnCluster {
        file: PathBuf,
        #[command(flatten)]
        region: RegionArgs,
    },
    /// `f(a)` and the largest deviation from it within a radius.
    FnSpread {
        file: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Scalar,
        #[arg(long, value_parser = rational)]
        radius: Scalar,
        #[arg(long, default_value_t = 65)]
        samples: usize,
    },
    /// Check a claim for a model reference built from registered models.
    CertCheck {
        /// `name=path`, repeatable.
        #[arg(long = "model", required = true)]
        models: Vec<String>,
        /// Model reference such as `sum(f, g)`; defaults to the only model.
        #[arg(long = "ref")]
        model_ref: Option<String>,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Apply a derivation rule to certificate files.
    CertDerive {
        #[arg(long = "model", required = true)]
        models: Vec<String>,
        #[arg(long, value_enum)]
        rule: RuleArg,
        /// Parent certificate files, in rule order.
        #[arg(long = "cert", required = true)]
        certs: Vec<PathBuf>,
        /// New q for `widen`.
        #[arg(long, value_parser = rational)]
        u: Option<Scalar>,
        /// New r for `widen`.
        #[arg(long, value_parser = rational)]
        v: Option<Scalar>,
        /// Factor for `scale`.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        k: Option<Scalar>,
        /// Squeezed model reference for `squeeze`.
        #[arg(long)]
        target: Option<String>,
        /// Monotone map `pl(...)` for `cov`.
        #[arg(long)]
        map: Option<String>,
        /// Bound for `lower-bound`.
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        d: Option<Scalar>,
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Re-check a certificate file and its whole derivation tree.
    CertVerify {
        #[arg(long = "model", required = true)]
        models: Vec<String>,
        #[arg(long = "cert")]
        cert: PathBuf,
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Run an automaton on a lasso word `prefix | cycle`.
    AutAccept {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Prefix-limsup reference for `seq-defect`.
    OracleSeqDefect {
        file: PathBuf,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        a: Scalar,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
    /// Subset-enumeration reference for `fn-qrlimit` on tables.
    OracleFnQrlimit {
        file: PathBuf,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Long-simulation reference for `aut-accept`.
    OracleAutAccept {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

/// Finished report text and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ClaimRefuted { .. } => 2,
        Error::NoAdmissibleSequence => 3,
        Error::Parse { .. } | Error::InvariantViolation(_) | Error::InvalidParameter(_) | Error::InvalidWord(_) => 4,
        Error::OracleScaleExceeded(_) => 5,
        _ => 1,
    }
}

fn status_name(e: &Error) -> &'static str {
    match e {
        Error::InvalidParameter(_) => "invalid-parameter",
        Error::UnsupportedInfiniteTarget => "unsupported-infinite-target",
        Error::NoAdmissibleSequence => "no-admissible-sequence",
        Error::EmptySample => "empty-sample",
        Error::PointNotInDomain(_) => "point-not-in-domain",
        Error::PointNotInRange(_) => "point-not-in-range",
        Error::ClaimRefuted { .. } => "claim-refuted",
        Error::InvalidWidening(_) => "invalid-widening",
        Error::IncompatibleCertificates(_) => "incompatible-certificates",
        Error::DominationFailure(_) => "domination-failure",
        Error::BoundNotImplied => "bound-not-implied",
        Error::UnknownModel(_) => "unknown-model",
        Error::DerivationRejected { .. } => "derivation-rejected",
        Error::InvalidWord(_) => "invalid-word",
        Error::Parse { .. } => "parse-error",
        Error::InvariantViolation(_) => "invariant-violation",
        Error::OracleScaleExceeded(_) => "oracle-scale-exceeded",
        Error::Io(_) => "io-error",
    }
}

/// Accumulates `key: value` lines.
#[derive(Debug, Default)]
struct Report {
    lines: Vec<String>,
}

impl Report {
    fn new(verb: &str) -> Self {
        Report { lines: vec![format!("verb: {verb}")] }
    }

    fn kv(&mut self, key: &str, value: impl AsRef<str>) -> &mut Self {
        self.lines.push(format!("{key}: {}", value.as_ref()));
        self
    }

    fn num(&mut self, key: &str, v: &Scalar) -> &mut Self {
        self.kv(key, fmt_with_hint(&XScalar::Finite(v.clone())))
    }

    fn xnum(&mut self, key: &str, v: &XScalar) -> &mut Self {
        self.kv(key, fmt_with_hint(v))
    }

    fn block(&mut self, key: &str, text: &str) -> &mut Self {
        self.lines.push(format!("{key}:"));
        self.lines.extend(text.lines().map(|l| format!("  {l}")));
        self
    }

    fn finish(mut self, status: &str) -> String {
        self.lines.push(format!("status: {status}"));
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn show_path(p: &Path) -> String {
    p.display().to_string()
}

fn load_sequence_like(path: &Path) -> Result<Document> {
    match load_path(path)? {
        d @ (Document::Sequence(_) | Document::SequenceSet(_)) => Ok(d),
        other => Err(Error::InvariantViolation(format!("expected a sequence file, found a {} file", other.kind()))),
    }
}

fn load_function(path: &Path) -> Result<FunctionModel> {
    match load_path(path)? {
        Document::Function(f) => Ok(f),
        other => Err(Error::InvariantViolation(format!("expected a function file, found a {} file", other.kind()))),
    }
}

fn load_automaton(path: &Path) -> Result<AutomatonSpec> {
    match load_path(path)? {
        Document::Automaton(a) => Ok(a),
        other => Err(Error::InvariantViolation(format!("expected an automaton file, found a {} file", other.kind()))),
    }
}

/// The indented `certificate:` block of a saved report.
fn certificate_block(report: &str) -> Option<String> {
    let mut lines = report.lines().skip_while(|l| *l != "certificate:").skip(1);
    let block: Vec<&str> = lines.by_ref().take_while(|l| l.starts_with("  ")).map(|l| &l[2..]).collect();
    (!block.is_empty()).then(|| block.join("\n") + "\n")
}

/// Reads a certificate export, or the certificate inside a saved report.
fn load_certificate(path: &Path) -> Result<LimitCertificate> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    if text.starts_with("verb:") {
        let block = certificate_block(&text)
            .ok_or_else(|| Error::InvariantViolation(format!("{} holds no certificate", path.display())))?;
        return LimitCertificate::import(&block);
    }
    match crate::format::load(&text)? {
        Document::Certificate(c) => Ok(*c),
        other => Err(Error::InvariantViolation(format!("expected a certificate file, found a {} file", other.kind()))),
    }
}

fn load_schedule(path: Option<&PathBuf>) -> Result<GridSchedule> {
    match path {
        None => Ok(GridSchedule::default()),
        Some(p) => match load_path(p)? {
            Document::Schedule(s) => Ok(s),
            other => Err(Error::InvariantViolation(format!("expected a schedule file, found a {} file", other.kind()))),
        },
    }
}

fn registry(specs: &[String], rep: &mut Report) -> Result<ModelRegistry> {
    let mut reg = ModelRegistry::new();
    for spec in specs {
        let (name, path) = spec
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("--model expects name=path, got `{spec}`")))?;
        ModelRef::parse(name)?;
        rep.kv("model", format!("{name} = {path}"));
        reg.insert(name, load_function(Path::new(path))?);
    }
    Ok(reg)
}

fn kind_of(weak: bool) -> LimitKind {
    if weak {
        LimitKind::Weak
    } else {
        LimitKind::Strong
    }
}

fn echo_point(rep: &mut Report, p: &PointArgs) {
    rep.num("a", &p.a).num("q", &p.q).num("r", &p.r).num("b", &p.b).kv("kind", kind_of(p.weak).name());
}

fn trace(rep: &mut Report, est: &RegionEstimate, full: bool) {
    if full {
        for (i, l) in est.levels.iter().enumerate() {
            rep.kv(
                &format!("level {}", i + 1),
                format!(
                    "margin {} samples {} estimate {}",
                    fmt_rational(&l.margin),
                    l.samples,
                    fmt_with_hint(&XScalar::Finite(l.value.clone()))
                ),
            );
        }
    }
}

fn cert_summary(rep: &mut Report, c: &LimitCertificate, full: bool) {
    rep.kv("claim", c.to_string()).kv("hash", c.hash());
    if let Some(rule) = c.rule() {
        rep.kv("rule", rule.name()).kv("tree-size", c.tree_size().to_string());
    }
    if full {
        rep.block("certificate", &c.export());
    }
}

fn bound_summary(rep: &mut Report, b: &BoundClaim) {
    rep.num("bound", &b.bound)
        .kv("region", b.region.to_string())
        .kv(
            "verification",
            match b.level {
                VerificationLevel::Exhaustive => "exhaustive",
                VerificationLevel::Sampled => "sampled",
            },
        )
        .kv("points-checked", b.points_checked.to_string());
    match &b.violation {
        None => rep.kv("scan", "confirmed"),
        Some(x) => rep.kv("scan", format!("violated at {}", fmt_rational(x))),
    };
}

/// Runs one command; errors are rendered into the report with their status.
pub fn execute(cli: &Cli) -> Outcome {
    let full = cli.format == OutputFormat::Full;
    let verb = verb_name(&cli.command);
    let mut rep = Report::new(verb);
    match dispatch(&cli.command, full, &mut rep) {
        Ok(status) => {
            // A certificate or bound that fails its re-check is a refuted claim.
            let code = if status == "rejected" { 2 } else { 0 };
            Outcome { text: rep.finish(status), code }
        }
        Err(e) => {
            if let Error::ClaimRefuted { defect } | Error::DerivationRejected { defect } = &e {
                rep.xnum("defect", defect);
            }
            rep.kv("reason", e.to_string());
            Outcome { text: rep.finish(status_name(&e)), code: exit_code(&e) }
        }
    }
}

fn verb_name(c: &Command) -> &'static str {
    match c {
        Command::SeqDefect { .. } => "seq-defect",
        Command::SeqRlimits { .. } => "seq-rlimits",
        Command::SeqInterleave { .. } => "seq-interleave",
        Command::FnQrlimit { .. } => "fn-qrlimit",
        Command::FnRegion { .. } => "fn-region",
        Command::FnCluster { .. } => "fn-cluster",
        Command::FnSpread { .. } => "fn-spread",
        Command::CertCheck { .. } => "cert-check",
        Command::CertDerive { .. } => "cert-derive",
        Command::CertVerify { .. } => "cert-verify",
        Command::AutAccept { .. } => "aut-accept",
        Command::OracleSeqDefect { .. } => "oracle-seq-defect",
        Command::OracleFnQrlimit { .. } => "oracle-fn-qrlimit",
        Command::OracleAutAccept { .. } => "oracle-aut-accept",
    }
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::invalid(format!("this rule needs --{flag}")))
}

/// Returns the final status word: `ok`, `accept`, `reject` or `rejected`.
fn dispatch(cmd: &Command, full: bool, rep: &mut Report) -> Result<&'static str> {
    match cmd {
        Command::SeqDefect { file, a, r, scale } => {
            rep.kv("input", show_path(file)).num("a", a);
            let defect = match load_sequence_like(file)? {
                Document::Sequence(s) => defect_of(a, &s),
                Document::SequenceSet(set) => set_defect(a, &set),
                _ => unreachable!(),
            };
            rep.xnum("defect", &defect);
            if let Some(r) = r {
                if r.is_negative() {
                    return Err(Error::invalid("r must be non-negative"));
                }
                rep.num("r", r).kv("r-limit", yes_no(defect.le(r)));
            }
            if let Some(s) = scale {
                rep.num("membership", &display_membership(&defect, s)?);
            }
            Ok("ok")
        }
        Command::SeqRlimits { file, r } => {
            rep.kv("input", show_path(file)).num("r", r);
            let Document::Sequence(s) = load_sequence_like(file)? else {
                return Err(Error::InvariantViolation("seq-rlimits needs a single sequence".into()));
            };
            match r_limit_set(r, &s)? {
                Some(i) => rep.kv("r-limits", i.to_string()),
                None => rep.kv("r-limits", "empty"),
            };
            let (radius, center) = convergence_radius(&s)?;
            rep.num("least-r", &radius).num("center", &center);
            Ok("ok")
        }
        Command::SeqInterleave { file } => {
            rep.kv("input", show_path(file));
            let Document::SequenceSet(set) = load_sequence_like(file)? else {
                return Err(Error::InvariantViolation("seq-interleave needs a sequence set".into()));
            };
            let merged: SequenceSpec = interleave(&set);
            rep.kv("members", set.members().len().to_string());
            rep.block("sequence", &render(&Document::Sequence(merged.clone())));
            if let Ok((radius, center)) = convergence_radius(&merged) {
                rep.num("least-r", &radius).num("center", &center);
                rep.xnum("set-defect-at-center", &set_defect(&center, &set));
            }
            Ok("ok")
        }
        Command::FnQrlimit { file, point, schedule } => {
            rep.kv("input", show_path(file));
            echo_point(rep, point);
            let reg = ModelRegistry::new().with("f", load_function(file)?);
            let prover = Prover::new(reg, load_schedule(schedule.as_ref())?);
            let c = prover.check(
                ModelRef::named("f"),
                point.a.clone(),
                point.q.clone(),
                point.r.clone(),
                point.b.clone(),
                kind_of(point.weak),
            )?;
            let crate::certalg::Provenance::Checked(ev) = &c.provenance else { unreachable!() };
            rep.num("defect", ev.defect());
            rep.block("certificate", &c.export());
            Ok("ok")
        }
        Command::FnRegion { file, region, b, weak } => {
            rep.kv("input", show_path(file));
            let f = load_function(file)?;
            let sched = load_schedule(region.schedule.as_ref())?;
            let reg = Interval::new(region.lo.clone(), region.hi.clone())?;
            rep.kv("region", reg.to_string()).num("b", b).kv("kind", kind_of(*weak).name());
            let est = if *weak {
                weak_region_defect_estimate(&f, &reg, b, &sched)?
            } else {
                region_defect_estimate(&f, &reg, b, &sched)?
            };
            trace(rep, &est, full);
            rep.num("estimate", est.final_estimate());
            rep.kv("stable-from-level", (est.stabilized_at(&Scalar::new(1.into(), 1000.into())) + 1).to_string());
            Ok("ok")
        }
        Command::FnCluster { file, region } => {
            rep.kv("input", show_path(file));
            let f = load_function(file)?;
            let sched = load_schedule(region.schedule.as_ref())?;
            let reg = Interval::new(region.lo.clone(), region.hi.clone())?;
            rep.kv("region", reg.to_string());
            let report = cluster_values_estimate(&f, &reg, &sched)?;
            if full {
                for (i, l) in report.trace.iter().enumerate() {
                    let spans: Vec<String> = l
                        .spans
                        .iter()
                        .map(|s| format!("[{}, {}]", fmt_rational(&s.lo), fmt_rational(&s.hi)))
                        .collect();
                    rep.kv(
                        &format!("level {}", i + 1),
                        format!("margin {} samples {} spans {}", fmt_rational(&l.margin), l.samples, spans.join(" ")),
                    );
                }
            }
            for c in &report.clusters {
                let stable = c.stable_from.map_or("never".to_string(), |k| format!("level {}", k + 1));
                rep.kv(
                    "cluster",
                    format!(
                        "{} span [{}, {}] stable-from {} converged {}",
                        fmt_with_hint(&XScalar::Finite(c.value.clone())),
                        fmt_rational(&c.lo),
                        fmt_rational(&c.hi),
                        stable,
                        yes_no(c.converged)
                    ),
                );
            }
            let ac = almost_constant_check(&f, &reg, &sched)?;
            match &ac.value {
                Some(v) => rep.num("constant-value", v),
                None => rep.kv("constant-value", "none"),
            };
            rep.kv("constant-samples", ac.samples.to_string());
            Ok("ok")
        }
        Command::FnSpread { file, a, radius, samples } => {
            rep.kv("input", show_path(file)).num("a", a).num("radius", radius);
            let f = load_function(file)?;
            let s = local_spread(&f, a, radius, *samples)?;
            rep.num("value", &s.value_at_point).xnum("spread", &s.spread).kv("samples", s.samples.to_string());
            Ok("ok")
        }
        Command::CertCheck { models, model_ref, point, schedule } => {
            let reg = registry(models, rep)?;
            let mref = match model_ref {
                Some(src) => ModelRef::parse(src)?,
                None => {
                    let names: Vec<&str> = reg.names().collect();
                    if names.len() != 1 {
                        return Err(Error::invalid("--ref is required with several models"));
                    }
                    ModelRef::named(names[0])
                }
            };
            rep.kv("ref", mref.to_string());
            echo_point(rep, point);
            let prover = Prover::new(reg, load_schedule(schedule.as_ref())?);
            let c = prover.check(mref, point.a.clone(), point.q.clone(), point.r.clone(), point.b.clone(), kind_of(point.weak))?;
            let crate::certalg::Provenance::Checked(ev) = &c.provenance else { unreachable!() };
            rep.num("defect", ev.defect());
            rep.block("certificate", &c.export());
            Ok("ok")
        }
        Command::CertDerive { models, rule, certs, u, v, k, target, map, d, schedule } => {
            let reg = registry(models, rep)?;
            let prover = Prover::new(reg, load_schedule(schedule.as_ref())?);
            let parents = certs.iter().map(|p| load_certificate(p)).collect::<Result<Vec<_>>>()?;
            for (p, c) in certs.iter().zip(&parents) {
                rep.kv("parent", format!("{} {}", show_path(p), c.hash()));
            }
            let arity = match rule {
                RuleArg::Plus | RuleArg::Minus | RuleArg::Squeeze => 2,
                _ => 1,
            };
            if parents.len() != arity {
                return Err(Error::invalid(format!("this rule takes {arity} --cert file(s)")));
            }
            let derived = match rule {
                RuleArg::Widen => prover.widen(&parents[0], need(u, "u")?.clone(), need(v, "v")?.clone())?,
                RuleArg::Plus => prover.combine(&parents[0], &parents[1], CombineOp::Plus)?,
                RuleArg::Minus => prover.combine(&parents[0], &parents[1], CombineOp::Minus)?,
                RuleArg::Scale => prover.scale(&parents[0], need(k, "k")?.clone())?,
                RuleArg::Squeeze => prover.squeeze(&parents[0], &parents[1], ModelRef::parse(need(target, "target")?)?)?,
                RuleArg::Cov => prover.change_of_variable(&parents[0], MonotoneMap::parse(need(map, "map")?)?)?,
                RuleArg::LowerBound => {
                    let claim = prover.lower_bound(&parents[0], need(d, "d")?.clone())?;
                    bound_summary(rep, &claim);
                    return Ok(if claim.holds() { "ok" } else { "rejected" });
                }
            };
            rep.kv("claim", derived.to_string()).kv("hash", derived.hash());
            rep.block("certificate", &derived.export());
            Ok("ok")
        }
        Command::CertVerify { models, cert, schedule } => {
            let reg = registry(models, rep)?;
            let prover = Prover::new(reg, load_schedule(schedule.as_ref())?);
            let c = load_certificate(cert)?;
            rep.kv("input", show_path(cert));
            cert_summary(rep, &c, full);
            let node = prover.verify(&c)?;
            let tree = prover.verify_tree(&c)?;
            rep.kv("verified", yes_no(node)).kv("tree-verified", yes_no(tree));
            Ok(if node && tree { "ok" } else { "rejected" })
        }
        Command::AutAccept { file, word } => {
            let aut = load_automaton(file)?;
            let w = LassoWord::parse(word)?;
            rep.kv("input", show_path(file)).kv("word", w.to_string());
            let r = run(&aut, &w)?;
            if full {
                rep.kv("run-prefix", r.prefix.join(" ")).kv("run-cycle", r.cycle.join(" "));
            }
            let inf: Vec<String> = inf_states(&r).into_iter().collect();
            let weak: Vec<String> = weak_limit_states(aut.states(), &r)?.into_iter().collect();
            rep.kv("inf-states", format!("{{{}}}", inf.join(", ")));
            rep.kv("weak-limit-states", format!("{{{}}}", weak.join(", ")));
            Ok(if accepts(&aut, &w)? { "accept" } else { "reject" })
        }
        Command::OracleSeqDefect { file, a, n } => {
            rep.kv("input", show_path(file)).num("a", a).kv("n", n.to_string());
            let Document::Sequence(s) = load_sequence_like(file)? else {
                return Err(Error::InvariantViolation("the oracle takes a single sequence".into()));
            };
            rep.num("defect", &oracle_seq_defect(&s, a, *n)?);
            Ok("ok")
        }
        Command::OracleFnQrlimit { file, point } => {
            rep.kv("input", show_path(file));
            echo_point(rep, point);
            let f = load_function(file)?;
            let table = f
                .finite_points()
                .ok_or_else(|| Error::invalid("the oracle needs a finite table"))?;
            let defect = oracle_fn_defect(table, &point.a, &point.q, &point.b, point.weak)?;
            rep.num("defect", &defect);
            if defect > point.r {
                return Err(Error::ClaimRefuted { defect: XScalar::Finite(defect) });
            }
            Ok("ok")
        }
        Command::OracleAutAccept { file, word } => {
            let aut = load_automaton(file)?;
            let w = LassoWord::parse(word)?;
            rep.kv("input", show_path(file)).kv("word", w.to_string());
            let inf: Vec<String> = oracle_inf_states(&aut, &w)?.into_iter().collect();
            rep.kv("inf-states", format!("{{{}}}", inf.join(", ")));
            Ok(if oracle_accepts(&aut, &w)? { "accept" } else { "reject" })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            return Outcome { text: e.render().to_string(), code };
        }
    };
    let outcome = execute(&cli);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.text) {
            let e = Error::Io(format!("{}: {e}", path.display()));
            return Outcome { text: format!("status: io-error\nreason: {e}\n"), code: 1 };
        }
        return Outcome { text: String::new(), code: outcome.code };
    }
    outcome
}
