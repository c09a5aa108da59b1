//! Command handlers for the `kummer-kit` binary.

pub mod report;

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use thiserror::Error;

use kummer_core::algebra::{parse_rational_function, ParseError, RatFunc};
use kummer_core::engine::{verdict, EngineError};
use kummer_core::jet::{AnyJet, JetError};
use kummer_core::ode::{from_potential, symmetric_power_2};
use kummer_core::schwarzian::kummer_build;
use kummer_numeric::{CheckContext, CheckRegistry, CheckReport, NumericError, NumericPath, VerifierConfig};

pub use report::{Report, VerifyJson, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "kummer-kit", version, about = "Minimality of the Kummer groupoid of ψ'' = −(R/2)ψ")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify R and report whether the Kummer groupoid is minimal.
    Verdict {
        /// Potential R(λ) as a rational expression in `l`, e.g. "-2*(1+l^2)".
        #[arg(short = 'R', allow_hyphen_values = true)]
        r: String,
        /// Run numeric checks and embed their residuals.
        #[arg(long)]
        verify: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
        /// Waypoints, e.g. "0,1,1+i". Chosen automatically when absent.
        #[arg(long, allow_hyphen_values = true)]
        path: Option<String>,
        /// Comma-separated check names.
        #[arg(long, default_value = "projective,closure")]
        checks: String,
        /// Residual threshold for the numeric checks.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Print the second symmetric power f''' + 2Rf' + R'f = 0.
    Sympow {
        /// Potential R(λ) as a rational expression in `l`, e.g. "-2*(1+l^2)".
        #[arg(short = 'R', allow_hyphen_values = true)]
        r: String,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Print the Kummer residual, or its linearization at the identity.
    Kummer {
        /// Potential R(λ) as a rational expression in `l`, e.g. "-2*(1+l^2)".
        #[arg(short = 'R', allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        linearize: bool,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    /// Jet arithmetic on `source,target;c1,c2,…`.
    Jet {
        #[command(subcommand)]
        op: JetOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum JetOp {
    /// g ∘ f
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
    Invert {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Machine-readable output.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Input(_) => 2,
            CliError::Engine(EngineError::UnsupportedField(_)) => 3,
            CliError::Verification(_) => 4,
            _ => 1,
        }
    }
}

impl From<JetError> for CliError {
    fn from(e: JetError) -> Self {
        match e {
            JetError::Parse(m) => CliError::Input(m),
            other => CliError::Other(other.to_string()),
        }
    }
}

fn parse_r(src: &str) -> Result<RatFunc, CliError> {
    Ok(parse_rational_function(src)?)
}

fn json_line(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Other(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Runs one command. Output goes to `out`; the error carries the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Verdict { r, verify, json, path, checks, threshold } => {
            let opts = VerifyOptions { enabled: verify, path, checks, threshold };
            cmd_verdict(&r, &opts, json, out)
        }
        Command::Sympow { r, json } => {
            let rf = parse_r(&r)?;
            let ode = symmetric_power_2(&from_potential(&rf)).map_err(|e| CliError::Other(e.to_string()))?;
            if json {
                let coeffs: Vec<String> = ode.coeffs().iter().map(|c| c.to_string()).collect();
                json_line(out, &serde_json::json!({ "schema": SCHEMA, "R": rf.to_string(), "coeffs": coeffs, "equation": ode.to_string() }))
            } else {
                writeln!(out, "{ode}")?;
                Ok(())
            }
        }
        Command::Kummer { r, linearize, json } => {
            let rf = parse_r(&r)?;
            let sys = kummer_build(&rf).map_err(|e| CliError::Other(e.to_string()))?;
            let text = if linearize { sys.linearized.to_string() } else { format!("{} = 0", sys.residual) };
            if json {
                json_line(out, &serde_json::json!({ "schema": SCHEMA, "R": rf.to_string(), "linearize": linearize, "equation": text }))
            } else {
                writeln!(out, "{text}")?;
                Ok(())
            }
        }
        Command::Jet { op } => {
            let (res, json) = match op {
                JetOp::Compose { f, g, json } => (AnyJet::compose(&AnyJet::parse(&g)?, &AnyJet::parse(&f)?)?, json),
                JetOp::Invert { f, json } => (AnyJet::parse(&f)?.invert()?, json),
            };
            if json {
                json_line(out, &res.to_json())
            } else {
                writeln!(out, "{}", res.to_text())?;
                Ok(())
            }
        }
    }
}

pub struct VerifyOptions {
    pub enabled: bool,
    pub path: Option<String>,
    pub checks: String,
    pub threshold: Option<f64>,
}

/// Builds the report; with verification enabled, also returns every check
/// that ran.
pub fn build_report(input: &str, opts: &VerifyOptions) -> Result<(Report, Vec<CheckReport>), CliError> {
    let rf = parse_r(input)?;
    let t0 = Instant::now();
    let engine = verdict(&rf)?;
    let classify_ms = t0.elapsed().as_secs_f64() * 1e3;
    let mut report = Report::from_engine(input, &engine);
    report.timings_ms.insert("classify".into(), classify_ms);
    if !opts.enabled {
        return Ok((report, Vec::new()));
    }

    let mut config = VerifierConfig::from_env();
    if let Some(t) = opts.threshold {
        config = config.with_threshold(t);
    }
    let path = match &opts.path {
        Some(p) => NumericPath::parse(p)?,
        None => NumericPath::default_for(&rf, config.exclusion_radius)?,
    };
    let names: Vec<&str> = opts.checks.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let registry = CheckRegistry::standard();
    if let Some(bad) = names.iter().find(|n| registry.get(n).is_none()) {
        return Err(CliError::Input(format!("unknown check '{bad}'; available: {}", registry.names().join(","))));
    }
    let t1 = Instant::now();
    let ctx = CheckContext { r: rf, path, config };
    let results = registry.run(&names, &ctx)?;
    report.timings_ms.insert("verify".into(), t1.elapsed().as_secs_f64() * 1e3);
    let value = |name: &str| results.iter().find(|c| c.name == name).map(|c| c.value);
    report.verify = Some(VerifyJson { projective_residual: value("projective"), closure_residual: value("closure") });
    Ok((report, results))
}

fn cmd_verdict(input: &str, opts: &VerifyOptions, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let (report, checks) = build_report(input, opts)?;
    if json {
        json_line(out, &report)?;
    } else {
        write_summary(out, &report, &checks)?;
    }
    let failed: Vec<String> =
        checks.iter().filter(|c| !c.passed()).map(|c| format!("{} = {:.3e} (threshold {:.1e})", c.name, c.value, c.threshold)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join("; ")))
    }
}

fn write_summary(out: &mut dyn Write, rep: &Report, checks: &[CheckReport]) -> std::io::Result<()> {
    writeln!(out, "R = {}", rep.r)?;
    let galois = rep.galois.as_deref().map(|g| format!(", galois {g}")).unwrap_or_default();
    writeln!(out, "verdict: {} ({}{galois})", rep.minimality(), rep.case)?;
    if let Some(c) = &rep.certificate {
        writeln!(out, "certificate ({}): {}", c.kind, c.value)?;
    }
    match rep.equivalences {
        Some(e) => writeln!(
            out,
            "equivalences: riccati={} groupoid={} galois_sl2={} strong_minimality={} liouvillian={}",
            e.riccati, e.groupoid, e.galois_sl2, e.strong_minimality, e.liouvillian
        )?,
        None => writeln!(out, "equivalences: undecided")?,
    }
    if rep.inconclusive {
        writeln!(out, "inconclusive: the finite-group case could not be excluded")?;
    }
    for c in checks {
        let cmp = if c.higher_is_better { ">=" } else { "<=" };
        let mark = if c.passed() { "ok" } else { "FAIL" };
        writeln!(out, "check {}: {:.3e} ({cmp} {:.1e}) {mark}", c.name, c.value, c.threshold)?;
    }
    Ok(())
}
