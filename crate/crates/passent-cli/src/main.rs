//! Command-line front-end for the passent toolkit.
//!
//! Subcommands: `check` | `entangle` | `apply` | `report` | `oracle` |
//! `make`. Exit codes are a stable contract:
//!
//! * 0 — state is entanglable by passive optics (or plain success for
//!   `apply`/`make`; for `report`, the state is entangled as it stands),
//! * 1 — not entanglable (for `report`: not entangled),
//! * 2 — invalid input (unreadable file, bad format, unphysical matrix,
//!   bad partition or parameters),
//! * 3 — criterion/oracle disagreement in `oracle`.

mod error;
mod files;
mod report;

use clap::{Args, Parser, Subcommand};
use error::{CliError, Result};
use passent::gaussian::make_state;
use passent::{
    apply_passive, entangle_optimally_detailed, entanglement_report, entanglement_report_for_modes,
    squeezing_report, verdict, verify_criterion, CovarianceMatrix, EntanglingPowerVerdict,
    ModePartition, PassiveTransform, SearchConfig, StateSpec,
};
use report::{AchievedSummary, OracleSummary, PlanSummary, Report, SqueezingSummary,
    ValiditySummary, VerdictSummary};
use std::path::PathBuf;
use std::process::ExitCode;

/// Refinement steps used by the oracle subcommand; fixed because the CLI
/// surface only exposes `--samples` and `--seed`.
const ORACLE_REFINE_ITERS: usize = 2000;

#[derive(Parser)]
#[command(
    name = "passent",
    version,
    about = "Decide and realize the entangling power of passive optics on Gaussian states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether passive optics can entangle the state.
    Check(StateArgs),
    /// Build the optimal passive entangling procedure and write it out.
    Entangle(EntangleArgs),
    /// Apply a stored passive transform to a state.
    Apply(ApplyArgs),
    /// Report the entanglement of the state as it stands.
    Report(StateArgs),
    /// Cross-check the criterion against a randomized unitary search.
    Oracle(OracleArgs),
    /// Write one of the reference states.
    Make(MakeArgs),
}

#[derive(Args)]
struct StateArgs {
    /// State file: JSON `{ "n", "ordering": "qqpp", "matrix" }`.
    file: PathBuf,
    /// Bipartition as 1-indexed mode lists `1,3:2,4` or as sizes `a:b`;
    /// default splits the modes first half vs second half.
    #[arg(long)]
    partition: Option<String>,
    /// Emit the machine-readable report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EntangleArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Where to write the transform file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ApplyArgs {
    /// State file to transform.
    state_file: PathBuf,
    /// Transform file produced by `entangle`.
    transform_file: PathBuf,
    /// Where to write the transformed state (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Number of random passive transforms to sample.
    #[arg(long, default_value_t = 5000)]
    samples: usize,
    /// Seed for the deterministic search.
    #[arg(long, default_value_t = 17)]
    seed: u64,
}

#[derive(Args)]
struct MakeArgs {
    #[command(subcommand)]
    kind: MakeKind,
    /// Where to write the state file (stdout if omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MakeKind {
    /// Vacuum on `n` modes.
    Vacuum {
        /// Number of modes.
        #[arg(long)]
        n: usize,
    },
    /// One thermal mode with isotropic noise `b >= 1` (1 = vacuum).
    Thermal {
        #[arg(long)]
        b: f64,
    },
    /// One squeezed mode.
    Squeezed {
        /// Squeezing strength.
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        /// Squeezing axis angle in radians.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phase: f64,
    },
    /// Two-mode normal form with block parameters a, b, c, d.
    Simon {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
    },
    /// Two-mode squeezed vacuum.
    Tms {
        /// Squeezing strength.
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
    },
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Entangle(args) => cmd_entangle(args),
        Command::Apply(args) => cmd_apply(args),
        Command::Report(args) => cmd_report(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Make(args) => cmd_make(args),
    }
}

/// A resolved `--partition` argument: party sizes, plus the concrete mode
/// order when an explicit list rearranges the modes.
struct Partition {
    part: ModePartition,
    /// 0-indexed modes of party A followed by party B; `None` when the
    /// split is already contiguous in the given order.
    order: Option<Vec<usize>>,
    label: String,
}

fn partition_for(text: Option<&String>, n: usize) -> Result<Partition> {
    match text {
        Some(t) => parse_partition(t, n),
        None => default_partition(n),
    }
}

fn default_partition(n: usize) -> Result<Partition> {
    if n < 2 {
        return Err(CliError::Partition {
            text: "(default)".into(),
            reason: format!("cannot bipartition a {n}-mode state"),
        });
    }
    let part = ModePartition::new(n / 2, n - n / 2)?;
    Ok(Partition { part, order: None, label: part.to_string() })
}

/// Parse `--partition`. The primary reading is a pair of 1-indexed mode
/// lists, `A-modes:B-modes`, that together cover every mode exactly once.
/// When that reading fails and both sides are single numbers summing to
/// `n`, they are taken as party sizes over the modes in order.
fn parse_partition(text: &str, n: usize) -> Result<Partition> {
    let err = |reason: String| CliError::Partition { text: text.into(), reason };
    let (a_text, b_text) = text
        .split_once(':')
        .ok_or_else(|| err("expected `A-modes:B-modes`".into()))?;
    let parse_side = |side: &str| -> Result<Vec<usize>> {
        side.split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<usize>()
                    .map_err(|_| err(format!("`{}` is not a mode index", tok.trim())))
            })
            .collect()
    };
    let a = parse_side(a_text)?;
    let b = parse_side(b_text)?;

    let mut seen = vec![false; n];
    let mut lists_ok = !a.is_empty() && !b.is_empty();
    for &m in a.iter().chain(&b) {
        if m == 0 || m > n || seen[m - 1] {
            lists_ok = false;
            break;
        }
        seen[m - 1] = true;
    }
    lists_ok = lists_ok && seen.iter().all(|&s| s);
    if lists_ok {
        let part = ModePartition::new(a.len(), b.len())?;
        let order: Vec<usize> = a.iter().chain(&b).map(|&m| m - 1).collect();
        let contiguous = order.iter().copied().eq(0..n);
        return Ok(Partition {
            part,
            order: if contiguous { None } else { Some(order) },
            label: text.to_string(),
        });
    }
    if a.len() == 1 && b.len() == 1 && a[0] >= 1 && b[0] >= 1 && a[0] + b[0] == n {
        let part = ModePartition::new(a[0], b[0])?;
        return Ok(Partition { part, order: None, label: part.to_string() });
    }
    Err(err(format!(
        "mode lists must cover 1..={n} exactly once, or give party sizes `a:b` with a+b = {n}"
    )))
}

/// Relabel the modes so party A occupies the leading block, when an
/// explicit mode list asks for a non-contiguous split.
fn canonicalize(
    gamma: &CovarianceMatrix,
    p: &Partition,
) -> Result<(CovarianceMatrix, Option<PassiveTransform>)> {
    match &p.order {
        None => Ok((gamma.clone(), None)),
        Some(order) => {
            let perm = PassiveTransform::from_mode_permutation(order)?;
            Ok((apply_passive(gamma, &perm)?, Some(perm)))
        }
    }
}

/// Validate the state and assemble the sections common to every report:
/// digest, validity, squeezing, and the entangling-power verdict.
fn base_report(
    gamma: &CovarianceMatrix,
    digest: String,
    p: &Partition,
) -> Result<(Report, EntanglingPowerVerdict)> {
    let min_eig = gamma.validate().into_result()?;
    let squeezing = squeezing_report(gamma)?;
    let v = verdict(gamma, p.part)?;
    let report = Report {
        input_digest: digest,
        modes: gamma.n(),
        validity: ValiditySummary { valid: true, min_uncertainty_eig: min_eig },
        squeezing: SqueezingSummary::from(&squeezing),
        verdict: VerdictSummary::new(&v, &p.label),
        plan: None,
        achieved: None,
        oracle: None,
    };
    Ok((report, v))
}

fn emit(report: &Report, json: bool) {
    if json {
        let text =
            serde_json::to_string_pretty(report).expect("report serialization cannot fail");
        println!("{text}");
    } else {
        print!("{}", report::render_human(report));
    }
}

fn cmd_check(args: &StateArgs) -> Result<u8> {
    let (gamma, digest) = files::load_state(&args.file)?;
    let p = partition_for(args.partition.as_ref(), gamma.n())?;
    let (report, v) = base_report(&gamma, digest, &p)?;
    emit(&report, args.json);
    Ok(if v.can_entangle { 0 } else { 1 })
}

fn cmd_report(args: &StateArgs) -> Result<u8> {
    let (gamma, digest) = files::load_state(&args.file)?;
    let p = partition_for(args.partition.as_ref(), gamma.n())?;
    let (mut report, _) = base_report(&gamma, digest, &p)?;
    let achieved = match &p.order {
        None => entanglement_report(&gamma, p.part)?,
        Some(order) => entanglement_report_for_modes(&gamma, &order[..p.part.n_a()])?,
    };
    let entangled = achieved.is_nppt;
    report.achieved = Some(AchievedSummary::new(&achieved, p.part));
    emit(&report, args.json);
    Ok(if entangled { 0 } else { 1 })
}

fn cmd_entangle(args: &EntangleArgs) -> Result<u8> {
    let (gamma, digest) = files::load_state(&args.state.file)?;
    let p = partition_for(args.state.partition.as_ref(), gamma.n())?;
    let (mut report, v) = base_report(&gamma, digest, &p)?;
    let (canonical, perm) = canonicalize(&gamma, &p)?;
    let detail = entangle_optimally_detailed(&canonical, p.part)?;
    // The emitted transform acts on the original mode order: relabel
    // first (if the partition asked for one), then run the procedure.
    // A non-entanglable state gets the plain identity.
    let total = if !v.can_entangle {
        PassiveTransform::identity(gamma.n())
    } else {
        match &perm {
            None => detail.transform.clone(),
            Some(perm) => perm.compose(&detail.transform)?,
        }
    };
    report.plan = Some(PlanSummary::from(&detail.plan));
    report.achieved = Some(AchievedSummary::new(&detail.report, p.part));
    if let Some(out) = &args.out {
        files::save_transform(out, &total)?;
    }
    if !v.can_entangle {
        eprintln!(
            "warning: no passive transform can entangle this state \
             (lambda1*lambda2 >= 1); emitting the identity"
        );
    }
    emit(&report, args.state.json);
    Ok(if v.can_entangle { 0 } else { 1 })
}

fn cmd_apply(args: &ApplyArgs) -> Result<u8> {
    let (gamma, _) = files::load_state(&args.state_file)?;
    gamma.validate().into_result()?;
    let k = files::load_transform(&args.transform_file)?;
    let transformed = apply_passive(&gamma, &k)?;
    match &args.out {
        Some(path) => files::save_state(path, &transformed)?,
        None => println!("{}", files::state_to_json(&transformed)),
    }
    Ok(0)
}

fn cmd_oracle(args: &OracleArgs) -> Result<u8> {
    let (gamma, digest) = files::load_state(&args.state.file)?;
    let p = partition_for(args.state.partition.as_ref(), gamma.n())?;
    let (mut report, v) = base_report(&gamma, digest, &p)?;
    let (canonical, _) = canonicalize(&gamma, &p)?;
    let cfg = SearchConfig {
        samples: args.samples,
        refine_iters: ORACLE_REFINE_ITERS,
        seed: args.seed,
        n: canonical.n(),
        partition: p.part,
    };
    let check = verify_criterion(&canonical, &cfg)?;
    let pass = check.pass;
    report.oracle = Some(OracleSummary::new(&cfg, &check));
    emit(&report, args.state.json);
    if !pass {
        eprintln!(
            "error: oracle found {} bits against criterion product {}",
            check.oracle_best_bits, check.product
        );
        return Ok(3);
    }
    Ok(if v.can_entangle { 0 } else { 1 })
}

fn cmd_make(args: &MakeArgs) -> Result<u8> {
    let spec = match args.kind {
        MakeKind::Vacuum { n } => StateSpec::Vacuum { modes: n },
        MakeKind::Thermal { b } => StateSpec::Thermal { b },
        MakeKind::Squeezed { r, phase } => StateSpec::Squeezed { r, phase },
        MakeKind::Simon { a, b, c, d } => StateSpec::Simon { a, b, c, d },
        MakeKind::Tms { r } => StateSpec::TwoModeSqueezed { r },
    };
    let gamma = make_state(&spec)?;
    match &args.out {
        Some(path) => files::save_state(path, &gamma)?,
        None => println!("{}", files::state_to_json(&gamma)),
    }
    Ok(0)
}
