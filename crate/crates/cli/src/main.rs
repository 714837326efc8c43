//! Command-line front end: batch computations over JSON job manifests,
//! deterministic JSON reports on standard output.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tdual::codec::{DynDoc, Manifest, TripleDoc, WitnessDoc};
use tdual::sample::SelftestReport;
use tdual::{
    beta_eval, cohomology_group, cup3, dual_hom, dualize, dyn_to_triple, exists_triple,
    is_cohomologous_dyn, lhat_star, order_change, schur_multiplier, solve_coboundary, sqcup,
    strictify, triple_to_dyn, validate_dyn, validate_triple, Cochain, FiniteGroup, Side, TorusHom,
};

const EXIT_SCHEMA: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_UNKNOWN_COMMAND: u8 = 64;

#[derive(Parser)]
#[command(
    name = "tdual",
    version,
    about = "Exact invariants of equivariant torus duality for finite group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Job manifest path, or "-" for standard input.
    #[arg(default_value = "-")]
    manifest: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Include wall-clock timing in the report (breaks byte-stability).
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors of H²(Γ, U(1)).
    Schur(Common),
    /// Invariant factors of H^k(Γ, U(1)) for the manifest degree.
    Cohomology(Common),
    /// The integer 2-cocycle of the lift defect of χ.
    Bockstein(Common),
    /// Decide whether the cup 3-class of (χ, χ̂) is trivial.
    Cup(Common),
    /// The product-module 2-cocycle χ⊔χ̂ in standard form.
    Sqcup(Common),
    /// Evaluate the β potential at one rational point.
    Beta(Common),
    /// The dual of a dynamical cocycle.
    Dualize(Common),
    /// Decide whether two dynamical cocycles are cohomologous.
    IsCohomologous(Common),
    /// Construct an order-L triple extending (χ, χ̂), when one exists.
    TripleExists(Common),
    /// Validate a triple and report the class-equation witness.
    TripleValidate(Common),
    /// Rescale a triple's characters along (K, L).
    OrderChange(Common),
    /// Push an order-L triple to order 1 with homs (χ, Lχ̂).
    LhatStar(Common),
    /// The order-1 triple of a dynamical cocycle.
    DynToTriple(Common),
    /// The dynamical cocycle of a (strictified) triple.
    TripleToDyn(Common),
    /// Run the seeded randomized suite.
    Selftest {
        #[command(flatten)]
        common: Common,
        /// Seed override (default: manifest seed, then 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Samples per case (default: manifest samples, then 25).
        #[arg(long)]
        samples: Option<usize>,
        /// Worker threads for the sweep.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Schur(c)
            | Command::Cohomology(c)
            | Command::Bockstein(c)
            | Command::Cup(c)
            | Command::Sqcup(c)
            | Command::Beta(c)
            | Command::Dualize(c)
            | Command::IsCohomologous(c)
            | Command::TripleExists(c)
            | Command::TripleValidate(c)
            | Command::OrderChange(c)
            | Command::LhatStar(c)
            | Command::DynToTriple(c)
            | Command::TripleToDyn(c)
            | Command::Selftest { common: c, .. } => c,
        }
    }
}

#[derive(Debug)]
enum CliError {
    /// Malformed manifest, schema violation or invalid mathematical input.
    Input(String),
    /// A library invariant failed to re-verify.
    Internal(String),
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> CliError {
        CliError::Input(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// The deterministic report printed for every command.
#[derive(Serialize, Default)]
struct Report {
    command: String,
    version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant_factors: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<BTreeMap<String, Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constants: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cocycle: Option<DynDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    triple: Option<TripleDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    selftest: Option<SelftestReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u128>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            ..Report::default()
        }
    }
}

fn read_manifest(path: &str) -> CliResult<Manifest> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(CliError::input)?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(CliError::input)?
    };
    serde_json::from_str(&text).map_err(CliError::input)
}

fn need<T>(field: Option<T>, name: &str) -> CliResult<T> {
    field.ok_or_else(|| CliError::Input(format!("manifest field {name:?} is required")))
}

struct Job {
    manifest: Manifest,
    group: FiniteGroup,
}

impl Job {
    fn load(path: &str) -> CliResult<Job> {
        let manifest = read_manifest(path)?;
        let group = manifest.group.build().map_err(CliError::input)?;
        Ok(Job { manifest, group })
    }

    fn chi(&self) -> CliResult<TorusHom> {
        need(self.manifest.chi.as_ref(), "chi")?
            .build(&self.group, Side::Torus)
            .map_err(CliError::input)
    }

    fn chihat(&self) -> CliResult<TorusHom> {
        need(self.manifest.chihat.as_ref(), "chihat")?
            .build(&self.group, Side::DualTorus)
            .map_err(CliError::input)
    }

    fn cocycle(&self) -> CliResult<tdual::DynCocycle> {
        let d = need(self.manifest.cocycle.as_ref(), "cocycle")?
            .build(&self.group)
            .map_err(CliError::input)?;
        validate_dyn(&d).map_err(CliError::input)?;
        Ok(d)
    }

    fn triple(&self) -> CliResult<tdual::TopTriple> {
        need(self.manifest.triple.as_ref(), "triple")?
            .build(&self.group)
            .map_err(CliError::input)
    }
}

fn sparse_int_table(table: &tdual::group::Table2<tdual::ZVec>) -> BTreeMap<String, Vec<i64>> {
    table
        .pairs()
        .filter(|(_, _, v)| !v.is_zero())
        .map(|(a, b, v)| (format!("({a},{b})"), v.entries().to_vec()))
        .collect()
}

/// Witness of a degree-3 solve: a pair cochain, flattened to "(a,b)" keys.
fn witness2_from_cochain(w: &Cochain, group: &FiniteGroup) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for a in group.elements() {
        for b in group.elements() {
            let value = w.get(&[a, b]);
            if !value.c.is_zero() {
                out.insert(format!("({a},{b})"), value.c.to_string());
            }
        }
    }
    out
}

fn run_command(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Schur(common) => {
            let job = Job::load(&common.manifest)?;
            let mut report = Report::new("schur");
            let h2 = schur_multiplier(&job.group).map_err(CliError::input)?;
            report.invariant_factors = Some(h2.invariant_factors);
            Ok(report)
        }
        Command::Cohomology(common) => {
            let job = Job::load(&common.manifest)?;
            let degree = need(job.manifest.degree, "degree")?;
            let mut report = Report::new("cohomology");
            let h = cohomology_group(&job.group, degree).map_err(CliError::input)?;
            report.invariant_factors = Some(h.invariant_factors);
            Ok(report)
        }
        Command::Bockstein(common) => {
            let job = Job::load(&common.manifest)?;
            let chi = job.chi()?;
            let mut report = Report::new("bockstein");
            report.table = Some(sparse_int_table(&tdual::bockstein(&chi)));
            Ok(report)
        }
        Command::Cup(common) => {
            let job = Job::load(&common.manifest)?;
            let (chi, chihat) = (job.chi()?, job.chihat()?);
            let cup = cup3(&chi, &chihat).map_err(CliError::input)?;
            let mut report = Report::new("cup");
            match solve_coboundary(&job.group, &cup).map_err(CliError::input)? {
                Some(w) => {
                    report.verdict = Some("trivial".into());
                    report.constants = Some(witness2_from_cochain(&w, &job.group));
                }
                None => report.verdict = Some("nontrivial".into()),
            }
            Ok(report)
        }
        Command::Sqcup(common) => {
            let job = Job::load(&common.manifest)?;
            let (chi, chihat) = (job.chi()?, job.chihat()?);
            let bi = sqcup(&chi, &chihat).map_err(CliError::input)?;
            if !bi.is_cocycle() {
                return Err(CliError::Internal(
                    "sqcup output failed the cocycle check".into(),
                ));
            }
            let mut report = Report::new("sqcup");
            report.constants = Some(
                bi.g.pairs()
                    .filter(|(_, _, v)| !v.is_zero())
                    .map(|(a, b, v)| (format!("({a},{b})"), v.to_string()))
                    .collect(),
            );
            let mut table = BTreeMap::new();
            for (a, b, v) in bi.u.pairs().filter(|(_, _, v)| !v.is_zero()) {
                table.insert(format!("u({a},{b})"), v.entries().to_vec());
            }
            for (a, b, v) in bi.v.pairs().filter(|(_, _, v)| !v.is_zero()) {
                table.insert(format!("v({a},{b})"), v.entries().to_vec());
            }
            report.table = Some(table);
            Ok(report)
        }
        Command::Beta(common) => {
            let job = Job::load(&common.manifest)?;
            let (chi, chihat) = (job.chi()?, job.chihat()?);
            let element = need(job.manifest.element, "element")?;
            if element >= job.group.size() {
                return Err(CliError::Input(format!("element {element} out of range")));
            }
            let z = job
                .manifest
                .point(&job.manifest.z, chi.rank())
                .map_err(CliError::input)?;
            let zhat = job
                .manifest
                .point(&job.manifest.zhat, chi.rank())
                .map_err(CliError::input)?;
            let value = beta_eval(&chi, &chihat, element, &z, &zhat).map_err(CliError::input)?;
            let mut report = Report::new("beta");
            report.value = Some(value.to_string());
            Ok(report)
        }
        Command::Dualize(common) => {
            let job = Job::load(&common.manifest)?;
            let d = job.cocycle()?;
            let dual = dualize(&d);
            if validate_dyn(&dual).is_err() || dual_hom(&dual).images() != d.hom().images() {
                return Err(CliError::Internal(
                    "dualize output failed validation".into(),
                ));
            }
            let mut report = Report::new("dualize");
            report.cocycle = Some(DynDoc::from_dyn(&dual));
            Ok(report)
        }
        Command::IsCohomologous(common) => {
            let job = Job::load(&common.manifest)?;
            let d1 = job.cocycle()?;
            let d2 = need(job.manifest.other.as_ref(), "other")?
                .build(&job.group)
                .map_err(CliError::input)?;
            validate_dyn(&d2).map_err(CliError::input)?;
            let mut report = Report::new("is-cohomologous");
            match is_cohomologous_dyn(&d1, &d2).map_err(CliError::input)? {
                Some(w) => {
                    if d1.apply_coboundary(&w.k, &w.t) != d2 {
                        return Err(CliError::Internal("witness failed to re-verify".into()));
                    }
                    report.verdict = Some("cohomologous".into());
                    report.witness = Some(WitnessDoc::from_dyn_witness(&w));
                }
                None => report.verdict = Some("distinct".into()),
            }
            Ok(report)
        }
        Command::TripleExists(common) => {
            let job = Job::load(&common.manifest)?;
            let (chi, chihat) = (job.chi()?, job.chihat()?);
            let order = need(job.manifest.order, "order")?;
            let mut report = Report::new("triple-exists");
            report.order = Some(order);
            match exists_triple(&chi, &chihat, order).map_err(CliError::input)? {
                Some(t) => {
                    if validate_triple(&t).is_err() {
                        return Err(CliError::Internal(
                            "existence witness failed validation".into(),
                        ));
                    }
                    report.verdict = Some("exists".into());
                    report.triple = Some(TripleDoc::from_triple(&t));
                }
                None => report.verdict = Some("none".into()),
            }
            Ok(report)
        }
        Command::TripleValidate(common) => {
            let job = Job::load(&common.manifest)?;
            let t = job.triple()?;
            let mut report = Report::new("triple-validate");
            match validate_triple(&t) {
                Ok(w) => {
                    report.verdict = Some("valid".into());
                    report.witness = Some(WitnessDoc::from_triple_witness(&w));
                }
                Err(e) => {
                    report.verdict = Some("invalid".into());
                    report.value = Some(e.to_string());
                }
            }
            Ok(report)
        }
        Command::OrderChange(common) => {
            let job = Job::load(&common.manifest)?;
            let t = job.triple()?;
            validate_triple(&t).map_err(CliError::input)?;
            let (chi, chihat) = (job.chi()?, job.chihat()?);
            let k = need(job.manifest.k_factor, "k_factor")?;
            let l = need(job.manifest.l_factor, "l_factor")?;
            let out = order_change(k, l, &t, &chi, &chihat).map_err(CliError::input)?;
            if validate_triple(&out).is_err() {
                return Err(CliError::Internal(
                    "order-change output failed validation".into(),
                ));
            }
            let mut report = Report::new("order-change");
            report.order = Some(out.order);
            report.triple = Some(TripleDoc::from_triple(&out));
            Ok(report)
        }
        Command::LhatStar(common) => {
            let job = Job::load(&common.manifest)?;
            let t = job.triple()?;
            validate_triple(&t).map_err(CliError::input)?;
            let strict = strictify(&t).map_err(CliError::input)?;
            let out = lhat_star(&strict).map_err(CliError::input)?;
            if validate_triple(&out).is_err() {
                return Err(CliError::Internal(
                    "lhat-star output failed validation".into(),
                ));
            }
            let mut report = Report::new("lhat-star");
            report.order = Some(out.order);
            report.triple = Some(TripleDoc::from_triple(&out));
            Ok(report)
        }
        Command::DynToTriple(common) => {
            let job = Job::load(&common.manifest)?;
            let d = job.cocycle()?;
            let t = dyn_to_triple(&d);
            if validate_triple(&t).is_err() {
                return Err(CliError::Internal(
                    "dyn-to-triple output failed validation".into(),
                ));
            }
            let mut report = Report::new("dyn-to-triple");
            report.order = Some(t.order);
            report.triple = Some(TripleDoc::from_triple(&t));
            Ok(report)
        }
        Command::TripleToDyn(common) => {
            let job = Job::load(&common.manifest)?;
            let t = job.triple()?;
            validate_triple(&t).map_err(CliError::input)?;
            let strict = strictify(&t).map_err(CliError::input)?;
            let d = triple_to_dyn(&strict).map_err(CliError::input)?;
            if validate_dyn(&d).is_err() {
                return Err(CliError::Internal(
                    "triple-to-dyn output failed validation".into(),
                ));
            }
            let mut report = Report::new("triple-to-dyn");
            report.cocycle = Some(DynDoc::from_dyn(&d));
            Ok(report)
        }
        Command::Selftest {
            common,
            seed,
            samples,
            jobs,
        } => {
            let job = Job::load(&common.manifest)?;
            let seed = seed.or(job.manifest.seed).unwrap_or(0);
            let samples = samples.or(job.manifest.samples).unwrap_or(25);
            let sizes = job.manifest.sizes.clone().unwrap_or_default();
            let result = tdual::sample::run_selftest(seed, samples, &sizes, (*jobs).max(1));
            let all_pass = result.all_pass;
            let mut report = Report::new("selftest");
            report.verdict = Some(if all_pass { "pass" } else { "fail" }.to_string());
            report.selftest = Some(result);
            if !all_pass {
                let text = render(&report)?;
                emit(&text, common)?;
                return Err(CliError::Internal("selftest cases failed".into()));
            }
            Ok(report)
        }
    }
}

fn render(report: &Report) -> CliResult<String> {
    serde_json::to_string_pretty(report).map_err(|e| CliError::Internal(e.to_string()))
}

fn emit(text: &str, common: &Common) -> CliResult<()> {
    match &common.output {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(CliError::input),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Ok(()) => Ok(()),
                // a closed pipe downstream is not our error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError::input(e)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            ErrorKind::InvalidSubcommand | ErrorKind::UnknownArgument => {
                let _ = e.print();
                return ExitCode::from(EXIT_UNKNOWN_COMMAND);
            }
            _ => {
                let _ = e.print();
                return ExitCode::from(EXIT_SCHEMA);
            }
        },
    };
    let started = Instant::now();
    let common = cli.command.common();
    match run_command(&cli.command) {
        Ok(mut report) => {
            if common.timings {
                report.timing_ms = Some(started.elapsed().as_millis());
            }
            match render(&report).and_then(|text| emit(&text, common)) {
                Ok(()) => ExitCode::SUCCESS,
                Err(_) => ExitCode::from(EXIT_INTERNAL),
            }
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_SCHEMA)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal invariant breach: {message}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
