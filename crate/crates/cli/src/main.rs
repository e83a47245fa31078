// SPDX-License-Identifier: Apache-2.0

//! `bfpp`: seeded property checks and small demos for fixed-point-free
//! nonexpansive maps.

use std::io::Write;
use std::process::ExitCode;

use bfpp_core::dynamics::{
    alternating_samples, discrepancy_witness, forced_sign_values, gap_fixed_point,
    minimal_bad_limit,
};
use bfpp_core::harness::{self, FixedPointOp, NonexpansiveOp, Suite, SuiteConfig};
use bfpp_core::{OperatorDescriptor, ParseError, Report, StepFn};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "bfpp",
    version,
    about = "Exact checks of fixed-point-free nonexpansive maps on sup-norm balls",
    after_help = "Exit status: 0 if every property held, 1 on a property violation, \
                  2 on a usage or parse error.\n\
                  The default seed is read from BFPP_SEED when --seed is not given."
)]
struct Cli {
    /// Output format for reports and demos.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Run a property suite with an explicit output format.
    Report {
        #[command(subcommand)]
        target: ReportTarget,
    },
    /// Small worked examples.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Subcommand)]
enum ReportTarget {
    /// Run a property suite.
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Args, Clone)]
struct TrialArgs {
    /// Number of random trials.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Master seed; each trial draws from its own stream of it.
    #[arg(long, env = "BFPP_SEED", default_value_t = 0)]
    seed: u64,
    /// Draw ordinal keys up to w^(w+1) instead of below w^3.
    #[arg(long)]
    wide: bool,
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Nonexpansiveness and ball invariance of an operator.
    Nonexpansive {
        #[arg(long, value_enum)]
        op: NonexpansiveArg,
        /// Fixed weight for the gap and ppoint operators, in step function text form.
        #[arg(long, value_parser = parse_stepfn_arg)]
        g: Option<StepFn>,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// A verified discrepancy witness for every trial input.
    NoFixedPoint {
        #[arg(long, value_enum)]
        op: FixedPointArg,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// The sup formula lies in every ball of a pairwise intersecting family.
    Helly {
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Sampling after interpolation is the identity on sequences.
    Retraction {
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Ordinal arithmetic laws against an independent model.
    OrdinalLaws {
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Shift values at limit places against the inf-sup and sup-inf formulas.
    LimitOracle {
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// sign(g) is an exact fixed point of the gap map.
    GapFixedPoint {
        #[arg(long, value_parser = parse_stepfn_arg)]
        g: Option<StepFn>,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// The support indicator of g is an exact fixed point of (1 - g) f + g.
    PpointFixedPoint {
        #[arg(long, value_parser = parse_stepfn_arg)]
        g: Option<StepFn>,
        #[command(flatten)]
        trials: TrialArgs,
    },
    /// Every suite with the same trials and seed.
    All {
        #[command(flatten)]
        trials: TrialArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NonexpansiveArg {
    DoubleShift,
    SingleShift,
    Gap,
    Ppoint,
    ClampShift,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixedPointArg {
    DoubleShift,
    #[value(name = "single-shift0")]
    SingleShift0,
    ClampShift,
}

#[derive(Subcommand)]
enum DemoCmd {
    /// Iterate the double shift and show where each iterate moves.
    Shift {
        #[arg(long, value_parser = parse_stepfn_arg)]
        input: StepFn,
        #[arg(long, default_value_t = 2)]
        steps: u32,
    },
    /// sign(g) and the identity g = sign(g) |g|.
    Sign {
        #[arg(long, value_parser = parse_stepfn_arg)]
        g: StepFn,
    },
    /// Forced sign values along g(x_n) = (-1)^n / n.
    Obstruction {
        #[arg(long)]
        n: u64,
    },
}

/// The token starting at the error position, for diagnostics.
fn offending_token(s: &str, position: usize) -> &str {
    let rest = s.get(position..).unwrap_or("");
    let end = rest
        .find(|c: char| c.is_whitespace() || matches!(c, ',' | ';' | ':' | ']' | '['))
        .unwrap_or(rest.len());
    match &rest[..end] {
        "" => rest.get(..1).unwrap_or("<end of input>"),
        token => token,
    }
}

fn describe_parse_error(s: &str, e: &ParseError) -> String {
    format!(
        "offending token `{}` at position {}: {}",
        offending_token(s, e.position),
        e.position,
        e.message
    )
}

fn parse_stepfn_arg(s: &str) -> Result<StepFn, String> {
    s.parse().map_err(|e| describe_parse_error(s, &e))
}

fn suite_of(cmd: &CheckCmd) -> (Vec<Suite>, SuiteConfig) {
    let (suites, args, g) = match cmd {
        CheckCmd::Nonexpansive { op, g, trials } => {
            let op = match op {
                NonexpansiveArg::DoubleShift => NonexpansiveOp::DoubleShift,
                NonexpansiveArg::SingleShift => NonexpansiveOp::SingleShift,
                NonexpansiveArg::Gap => NonexpansiveOp::Gap,
                NonexpansiveArg::Ppoint => NonexpansiveOp::PPoint,
                NonexpansiveArg::ClampShift => NonexpansiveOp::ClampShift,
            };
            (vec![Suite::Nonexpansive(op)], trials, g.clone())
        }
        CheckCmd::NoFixedPoint { op, trials } => {
            let op = match op {
                FixedPointArg::DoubleShift => FixedPointOp::DoubleShift,
                FixedPointArg::SingleShift0 => FixedPointOp::SingleShift0,
                FixedPointArg::ClampShift => FixedPointOp::ClampShift,
            };
            (vec![Suite::NoFixedPoint(op)], trials, None)
        }
        CheckCmd::Helly { trials } => (vec![Suite::Helly], trials, None),
        CheckCmd::Retraction { trials } => (vec![Suite::Retraction], trials, None),
        CheckCmd::OrdinalLaws { trials } => (vec![Suite::OrdinalLaws], trials, None),
        CheckCmd::LimitOracle { trials } => (vec![Suite::LimitOracle], trials, None),
        CheckCmd::GapFixedPoint { g, trials } => (vec![Suite::GapFixedPoint], trials, g.clone()),
        CheckCmd::PpointFixedPoint { g, trials } => {
            (vec![Suite::PPointFixedPoint], trials, g.clone())
        }
        CheckCmd::All { trials } => (Suite::all(), trials, None),
    };
    let config = SuiteConfig {
        trials: args.trials,
        seed: args.seed,
        wide: args.wide,
        g,
    };
    (suites, config)
}

fn print_text_report(out: &mut impl Write, suite: Suite, report: &Report) -> std::io::Result<()> {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    write!(
        out,
        "{status} {}: {} trials, seed {}, {} ms",
        report.suite, report.trials, report.seed, report.elapsed_millis
    )?;
    match suite {
        Suite::NoFixedPoint(_) => {
            let found = report.trials - report.failures.len() as u64;
            writeln!(out, ", {found} witnesses found")?;
        }
        _ => writeln!(out, ", {} failures", report.failures.len())?,
    }
    for f in &report.failures {
        writeln!(out, "  inputs:   {}", f.inputs.join(" | "))?;
        writeln!(out, "  witness:  {}", f.witness)?;
        writeln!(out, "  expected: {}", f.expected)?;
        writeln!(out, "  actual:   {}", f.actual)?;
    }
    Ok(())
}

fn run_check(cmd: &CheckCmd, format: Format) -> Result<u8, String> {
    let (suites, config) = suite_of(cmd);
    let mut reports = Vec::with_capacity(suites.len());
    for suite in &suites {
        let report = harness::run(*suite, &config).map_err(|e| e.to_string())?;
        reports.push((*suite, report));
    }
    let mut out = std::io::stdout().lock();
    match format {
        Format::Text => {
            for (suite, report) in &reports {
                print_text_report(&mut out, *suite, report).map_err(|e| e.to_string())?;
            }
        }
        Format::Json => {
            let text = if let [(_, single)] = reports.as_slice() {
                serde_json::to_string_pretty(single)
            } else {
                let all: Vec<&Report> = reports.iter().map(|(_, r)| r).collect();
                serde_json::to_string_pretty(&all)
            }
            .map_err(|e| e.to_string())?;
            writeln!(out, "{text}").map_err(|e| e.to_string())?;
        }
    }
    Ok(exit_code(reports.iter().map(|(_, r)| r)))
}

fn exit_code<'a>(mut reports: impl Iterator<Item = &'a Report>) -> u8 {
    if reports.all(Report::passed) {
        0
    } else {
        EXIT_VIOLATION
    }
}

fn demo_shift(input: &StepFn, steps: u32, format: Format) -> Result<u8, String> {
    let op = OperatorDescriptor::double_shift();
    if !op.in_domain(input) {
        return Err(format!("input {input} lies outside the unit ball"));
    }
    let mut orbit = vec![input.clone()];
    let mut witnesses = Vec::new();
    for _ in 0..steps {
        let f = orbit.last().expect("orbit starts with the input");
        let w = discrepancy_witness(&op, f).map_err(|e| e.to_string())?;
        let next = op.apply(f);
        let moved = (f.eval(&w).to_string(), next.eval(&w).to_string());
        witnesses.push((w, moved));
        orbit.push(next);
    }
    let bad_limit = minimal_bad_limit(input);
    match format {
        Format::Text => {
            println!("f = {input}");
            for (i, (f, (w, (before, after)))) in orbit[1..].iter().zip(&witnesses).enumerate() {
                let k = i + 1;
                let label = if k == 1 {
                    "Tf".to_string()
                } else {
                    format!("T^{k}f")
                };
                println!("{label} = {f}");
                println!("  moved at {w}: {before} -> {after}");
            }
            println!("minimal bad limit of f: {bad_limit}");
        }
        Format::Json => {
            let value = json!({
                "input": input.to_string(),
                "orbit": orbit[1..].iter().map(ToString::to_string).collect::<Vec<_>>(),
                "witnesses": witnesses.iter().map(|(w, (before, after))| json!({
                    "at": w.to_string(),
                    "before": before,
                    "after": after,
                })).collect::<Vec<_>>(),
                "minimalBadLimit": bad_limit.to_string(),
            });
            println!("{value:#}");
        }
    }
    Ok(0)
}

fn demo_sign(g: &StepFn, format: Format) -> Result<u8, String> {
    let s = g.sign();
    let identity = s.mul(&g.abs()) == *g;
    let gap = gap_fixed_point(g);
    let gap_status = match &gap {
        Ok(_) => "verified".to_string(),
        Err(e) => format!("not applicable ({e})"),
    };
    match format {
        Format::Text => {
            println!("g = {g}");
            println!("sign(g) = {s}");
            println!(
                "g = sign(g) |g|: {}",
                if identity { "verified" } else { "FAILED" }
            );
            println!("sign(g) fixed by (1 - |g|) f + g: {gap_status}");
        }
        Format::Json => {
            let value = json!({
                "g": g.to_string(),
                "sign": s.to_string(),
                "identity": identity,
                "gapFixedPoint": gap.is_ok(),
            });
            println!("{value:#}");
        }
    }
    Ok(if identity { 0 } else { EXIT_VIOLATION })
}

fn demo_obstruction(n: u64, format: Format) -> Result<u8, String> {
    let samples = alternating_samples(n);
    let forced = forced_sign_values(&samples);
    match format {
        Format::Text => {
            for ((label, g), (_, sign)) in samples.iter().zip(&forced.values) {
                println!("{label}: g = {g}, forced f = {sign}");
            }
            if forced.obstruction {
                println!("obstruction: forced values have no limit");
            } else {
                println!("no obstruction among {n} samples");
            }
        }
        Format::Json => {
            let value = json!({
                "samples": samples.iter().zip(&forced.values).map(|((label, g), (_, sign))| json!({
                    "at": label,
                    "g": g.to_string(),
                    "forced": sign.as_i8(),
                })).collect::<Vec<_>>(),
                "obstruction": forced.obstruction,
            });
            println!("{value:#}");
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Check(cmd) => run_check(cmd, cli.format),
        Command::Report {
            target: ReportTarget::Check(cmd),
        } => run_check(cmd, cli.format),
        Command::Demo(DemoCmd::Shift { input, steps }) => demo_shift(input, *steps, cli.format),
        Command::Demo(DemoCmd::Sign { g }) => demo_sign(g, cli.format),
        Command::Demo(DemoCmd::Obstruction { n }) => demo_obstruction(*n, cli.format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
