//! Command-line front end for the `lietriv` verification suite.

pub mod render;
pub mod suite;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use lietriv::exactalg::PolyScalar;
use lietriv::liecore::{parse_label, Element, LieType};
use lietriv::report::{CheckOutcome, Status};
use lietriv::slice_triv::{gamma, generic_point, phi, TrivializedPoint};
use lietriv::{Error, Result};

use suite::{aggregate_status, run_module, Context, Module, Params, DEFAULT_ALGEBRAS};

/// Environment variable naming the directory for report files.
pub const OUTPUT_DIR_ENV: &str = "LIETRIV_OUTPUT_DIR";

/// Version tag of the JSON report layout.
pub const REPORT_SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(
    name = "lietriv",
    version,
    about = "Exact checks for principal slices and their trivializations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampled points per randomized check.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Truncation order N (default max(h + 2, 6)).
    #[arg(long)]
    order: Option<u32>,
    /// Record per-check wall-clock times in the report.
    #[arg(long)]
    timings: bool,
    /// Write the JSON report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// Cartan type: A, B, C or D.
    #[arg(long = "type")]
    kind: String,
    #[arg(long)]
    rank: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure of a classical Lie algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Principal triple, grading, isotypic decomposition and splittings.
    Principal {
        #[command(subcommand)]
        action: PrincipalAction,
    },
    /// Kostant slice checks.
    Kostant {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Trivialization of the universal centraliser.
    Centraliser {
        #[command(subcommand)]
        action: CentraliserAction,
    },
    /// The toy dgla attached to the principal triple.
    Dgla {
        #[command(subcommand)]
        action: VerifyAction,
    },
    /// Aggregate runs over several algebras.
    Report {
        #[command(subcommand)]
        action: ReportAction,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraAction {
    /// Dimension, exponents and Coxeter number.
    Info {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Structure constants and forms as JSON.
    Dump {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum PrincipalAction {
    /// Triple, grading and components.
    Show {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
    /// Run this module's checks on one algebra.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyAction {
    /// Run this module's checks on one algebra.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum CentraliserAction {
    /// Run this module's checks on one algebra.
    Verify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        common: Common,
        /// Also display Gamma at the generic point.
        #[arg(long)]
        generic: bool,
    },
}

#[derive(Subcommand, Debug)]
enum ReportAction {
    /// Every check over a list of algebras.
    All {
        /// Comma-separated labels such as A1,B2.
        #[arg(long, value_delimiter = ',')]
        algebras: Option<Vec<String>>,
        /// Comma-separated check groups; an empty value selects none.
        #[arg(long)]
        checks: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Everything that determines a report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub algebras: Vec<String>,
    pub checks: Vec<Module>,
    pub order: Option<u32>,
    pub samples: usize,
    pub seed: u64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Versions {
    pub lietriv: &'static str,
    pub report_schema: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub config: RunConfig,
    pub versions: Versions,
    /// Truncation order used per algebra.
    pub truncation: BTreeMap<String, u32>,
    /// Microseconds per `algebra/module/check`, present only on request.
    pub timings: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub results: Vec<CheckOutcome>,
}

impl Report {
    pub fn status(&self) -> Status {
        aggregate_status(&self.results)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Runs `config.checks` on every algebra in order.
pub fn build_report(config: &RunConfig, timings: bool) -> Result<Report> {
    let params = Params {
        seed: config.seed,
        samples: config.samples,
        order: config.order,
    };
    let mut contexts = Vec::new();
    for label in &config.algebras {
        let (kind, rank) = parse_label(label)?;
        contexts.push((label.clone(), kind, rank));
    }
    let mut results = Vec::new();
    let mut times = BTreeMap::new();
    let mut truncation = BTreeMap::new();
    for (label, kind, rank) in contexts {
        if config.checks.is_empty() {
            continue;
        }
        let mut ctx = match Context::new(kind, rank) {
            Ok(c) => c,
            Err(e) => {
                results.push(CheckOutcome::from_error("liecore", "structure", &label, &e));
                continue;
            }
        };
        truncation.insert(label.clone(), ctx.order(&params));
        for &m in &config.checks {
            for t in run_module(m, &mut ctx, &params) {
                times.insert(
                    format!(
                        "{}/{}/{}",
                        t.outcome.algebra, t.outcome.module, t.outcome.check
                    ),
                    t.elapsed.as_micros() as u64,
                );
                results.push(t.outcome);
            }
        }
    }
    let meta = Meta {
        config: config.clone(),
        versions: Versions {
            lietriv: env!("CARGO_PKG_VERSION"),
            report_schema: REPORT_SCHEMA_VERSION,
        },
        truncation,
        timings: timings.then_some(times),
    };
    Ok(Report { meta, results })
}

fn exit_code(status: Status) -> i32 {
    match status {
        Status::Pass => 0,
        Status::Fail | Status::Error => 1,
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

/// Resolves the report path against the output directory variable.
fn output_path(explicit: Option<&PathBuf>, default_name: Option<&str>) -> Option<PathBuf> {
    let dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    match (explicit, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(d)) => default_name.map(|n| d.join(n)),
        (None, None) => None,
    }
}

fn write_report(report: &Report, path: Option<PathBuf>, err: &mut dyn Write) -> i32 {
    let Some(path) = path else { return 0 };
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        if let Err(e) = std::fs::create_dir_all(parent) {
            let _ = writeln!(err, "cannot create {}: {e}", parent.display());
            return 2;
        }
    }
    match std::fs::write(&path, report.to_json()) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "cannot write {}: {e}", path.display());
            2
        }
    }
}

fn emit(
    report: &Report,
    common: &Common,
    default_name: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Table => render::results_table(&report.results),
    };
    let _ = out.write_all(text.as_bytes());
    let w = write_report(
        report,
        output_path(common.output.as_ref(), default_name),
        err,
    );
    if w != 0 {
        return w;
    }
    exit_code(report.status())
}

fn config_for(
    command: &str,
    algebras: Vec<String>,
    checks: Vec<Module>,
    common: &Common,
) -> RunConfig {
    RunConfig {
        command: command.into(),
        algebras,
        checks,
        order: common.order,
        samples: common.samples,
        seed: common.seed,
        format: common.format,
        output: common.output.clone(),
    }
}

fn target_context(target: &Target) -> Result<Context> {
    let kind: LieType = target.kind.trim().parse()?;
    Context::new(kind, target.rank)
}

/// `Gamma` at the generic point, written in the triple's names where the
/// basis allows; for rank one this is `Gamma(alpha x, xi y)`.
pub fn gamma_display(ctx: &Context) -> Result<(String, bool)> {
    let (alg, p) = (&ctx.alg, &ctx.principal);
    let rename = |s: String| -> String {
        let mut s = s;
        for (e, name) in [(&p.triple.x, "x"), (&p.triple.y, "y"), (&p.triple.h, "h")] {
            let nz: Vec<usize> = (0..e.dim()).filter(|&k| !e.coords()[k].is_zero()).collect();
            if nz.len() == 1 && e.coords()[nz[0]] == lietriv::exactalg::Scalar::from_int(1) {
                let label = &alg.basis_labels()[nz[0]];
                s = s
                    .split(" + ")
                    .map(|t| {
                        if let Some(c) = t.strip_suffix(&format!("*{label}")) {
                            format!("{c}*{name}")
                        } else if t == label {
                            name.to_string()
                        } else {
                            t.to_string()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ");
            }
        }
        s
    };
    if alg.rank() == 1 {
        let (alpha, xi) = (PolyScalar::var("alpha"), PolyScalar::var("xi"));
        let x: Element<PolyScalar> = p.triple.x.lift();
        let y: Element<PolyScalar> = p.triple.y.lift();
        let t = TrivializedPoint {
            h: x.scale_by(&alpha),
            v: y.scale_by(&xi),
        };
        let c = gamma(alg, p, &t)?;
        let slice = c.slice_point(&p.triple.y);
        let ok = slice == &y + &x.scale_by(&alpha)
            && c.u == &y.scale_by(&xi) + &x.scale_by(&(&alpha * &xi))
            && phi(alg, p, &c)? == t;
        let text = format!(
            "Gamma(alpha*x, xi*y) = ({}, {})",
            rename(alg.format_element(&slice)),
            rename(alg.format_element(&c.u))
        );
        return Ok((text, ok));
    }
    let (names, t) = generic_point(p)?;
    let c = gamma(alg, p, &t)?;
    let ok = phi(alg, p, &c)? == t;
    let text = format!(
        "Gamma at ({}):\n  slice point = {}\n  centraliser = {}",
        names.join(", "),
        rename(alg.format_element(&c.slice_point(&p.triple.y))),
        rename(alg.format_element(&c.u))
    );
    Ok((text, ok))
}

fn module_verify(
    module: Module,
    command: &str,
    target: &Target,
    common: &Common,
    generic: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let mut ctx = target_context(target)?;
    let config = config_for(command, vec![ctx.label.clone()], vec![module], common);
    let params = Params {
        seed: common.seed,
        samples: common.samples,
        order: common.order,
    };
    let mut results = Vec::new();
    let mut times = BTreeMap::new();
    if generic {
        let start = std::time::Instant::now();
        let row = match gamma_display(&ctx) {
            Ok((text, ok)) => {
                if common.format == Format::Table {
                    let _ = writeln!(out, "{text}");
                }
                CheckOutcome::new(
                    module.name(),
                    "gamma_display",
                    &ctx.label,
                    ok,
                    serde_json::json!({ "display": text }),
                )
            }
            Err(e) => CheckOutcome::from_error(module.name(), "gamma_display", &ctx.label, &e),
        };
        times.insert(
            format!("{}/{}/gamma_display", ctx.label, module.name()),
            start.elapsed().as_micros() as u64,
        );
        results.push(row);
    }
    for t in run_module(module, &mut ctx, &params) {
        times.insert(
            format!(
                "{}/{}/{}",
                t.outcome.algebra, t.outcome.module, t.outcome.check
            ),
            t.elapsed.as_micros() as u64,
        );
        results.push(t.outcome);
    }
    let meta = Meta {
        truncation: BTreeMap::from([(ctx.label.clone(), ctx.order(&params))]),
        config,
        versions: Versions {
            lietriv: env!("CARGO_PKG_VERSION"),
            report_schema: REPORT_SCHEMA_VERSION,
        },
        timings: common.timings.then_some(times),
    };
    Ok(emit(&Report { meta, results }, common, None, out, err))
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Algebra {
            action: AlgebraAction::Info { target, common },
        } => {
            let ctx = target_context(&target)?;
            render::algebra_info(&ctx, common.format, out)?;
            Ok(0)
        }
        Command::Algebra {
            action: AlgebraAction::Dump { target, common: _ },
        } => {
            let ctx = target_context(&target)?;
            let text = serde_json::to_string_pretty(&ctx.alg.dump()).expect("dump serializes");
            let _ = writeln!(out, "{text}");
            Ok(0)
        }
        Command::Principal {
            action: PrincipalAction::Show { target, common },
        } => {
            let ctx = target_context(&target)?;
            render::principal_show(&ctx, common.format, out)?;
            Ok(0)
        }
        Command::Principal {
            action: PrincipalAction::Verify { target, common },
        } => module_verify(
            Module::Principal,
            "principal verify",
            &target,
            &common,
            false,
            out,
            err,
        ),
        Command::Kostant {
            action: VerifyAction::Verify { target, common },
        } => module_verify(
            Module::Kostant,
            "kostant verify",
            &target,
            &common,
            false,
            out,
            err,
        ),
        Command::Centraliser {
            action:
                CentraliserAction::Verify {
                    target,
                    common,
                    generic,
                },
        } => module_verify(
            Module::SliceTriv,
            "centraliser verify",
            &target,
            &common,
            generic,
            out,
            err,
        ),
        Command::Dgla {
            action: VerifyAction::Verify { target, common },
        } => module_verify(
            Module::Dgla,
            "dgla verify",
            &target,
            &common,
            false,
            out,
            err,
        ),
        Command::Report {
            action:
                ReportAction::All {
                    algebras,
                    checks,
                    common,
                },
        } => {
            let algebras: Vec<String> = match algebras {
                Some(list) => list
                    .into_iter()
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect(),
                None => DEFAULT_ALGEBRAS.iter().map(|s| s.to_string()).collect(),
            };
            for a in &algebras {
                parse_label(a)?;
            }
            let checks = match checks {
                None => Module::ALL.to_vec(),
                Some(s) => s
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(str::parse)
                    .collect::<Result<Vec<Module>>>()?,
            };
            let config = config_for("report all", algebras, checks, &common);
            let report = build_report(&config, common.timings)?;
            Ok(emit(&report, &common, Some("report.json"), out, err))
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to the given streams. Returns the process exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            error_code(&e)
        }
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
