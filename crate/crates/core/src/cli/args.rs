use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use super::{
    cmd_alexander, cmd_genus, cmd_pi1, cmd_selftest, cmd_sw_family, cmd_x9, BaseSw, CertificationReport, CliError,
    EXIT_INPUT_ERROR, X9_DEFAULT_WINDOW,
};
use crate::fpgroups::DEFAULT_MAX_COSETS;
use crate::knots::{self, Knot};
use crate::lcurve::Window;

#[derive(Parser, Debug)]
#[command(name = "rimcert", version, about = "Exact certificates for rim-surgered surfaces in the plane")]
pub struct Cli {
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    pub json: bool,

    /// Append the report to text output; `sw-family` also cross-checks
    /// surgery with Δ(K#K) against Δ(K) applied twice.
    #[arg(long, short, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalized Alexander polynomial of a knot spec.
    Alexander {
        /// unknot | torus:p,q | twist:n | seifert:[[..],..] | sum(K,K)
        knot: String,
    },
    /// Certify the fundamental group of a rim-surgered maximal nest.
    Pi1 {
        degree: usize,
        #[arg(long, default_value_t = 1)]
        membrane: usize,
        #[arg(long, env = "RIMCERT_MAX_COSETS", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Certify pairwise-distinct invariants for a knot family.
    SwFamily {
        /// `k3`, a JSON term list, or `@path` to a JSON file.
        #[arg(long, default_value = "k3")]
        base: String,
        #[arg(long, default_value_t = 2)]
        cover_degree: usize,
        /// Append T(2,3), T(2,5), …, T(2,2n+1).
        #[arg(long)]
        family: Option<usize>,
        /// Use each knot as given instead of K # K.
        #[arg(long)]
        raw: bool,
        knots: Vec<String>,
    },
    /// Genus (d-1)(d-2)/2 of a smooth plane curve of degree d.
    Genus { degree: u64 },
    /// Extract the ovals of the perturbed X9 singularity.
    X9 {
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-7)]
        delta: f64,
        #[arg(long, default_value_t = 512)]
        resolution: usize,
        #[arg(long, default_value_t = X9_DEFAULT_WINDOW.0, allow_negative_numbers = true)]
        window_lo: f64,
        #[arg(long, default_value_t = X9_DEFAULT_WINDOW.1, allow_negative_numbers = true)]
        window_hi: f64,
        /// Write the extracted curves as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Seeded randomized checks of the core invariants.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long, env = "RIMCERT_MAX_COSETS", default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
}

/// Output of one invocation.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stderr: text, ..Default::default() }
            } else {
                Outcome { code, stdout: text, ..Default::default() }
            };
        }
    };
    match execute(&cli) {
        Ok(o) => o,
        Err(e) => Outcome { code: EXIT_INPUT_ERROR, stderr: format!("error: {e}\n"), ..Default::default() },
    }
}

fn report_outcome(cli: &Cli, report: CertificationReport) -> Outcome {
    let stdout = if cli.json {
        report.to_json(true) + "\n"
    } else {
        let mut s = format!("{}: {}  {}\n", report.command, report.verdict.as_str(), report.summary);
        if cli.verbose {
            s.push_str(&report.to_json(false));
            s.push('\n');
        }
        s
    };
    Outcome { code: report.exit_code(), stdout, stderr: String::new() }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Alexander { knot } => {
            let r = cmd_alexander(knot)?;
            let stdout = if cli.json {
                serde_json::to_string_pretty(&r).expect("serializes") + "\n"
            } else {
                format!("{}\ndegree span: {}\n", r.display, r.degree_span)
            };
            Ok(Outcome { code: 0, stdout, stderr: String::new() })
        }
        Command::Genus { degree } => {
            let g = cmd_genus(*degree)?;
            let stdout = if cli.json {
                serde_json::to_string_pretty(&json!({ "degree": degree, "genus": g })).expect("serializes") + "\n"
            } else {
                format!("{g}\n")
            };
            Ok(Outcome { code: 0, stdout, stderr: String::new() })
        }
        Command::Pi1 { degree, membrane, max_cosets } => {
            Ok(report_outcome(cli, cmd_pi1(*degree, *membrane, *max_cosets)?))
        }
        Command::SwFamily { base, cover_degree, family, raw, knots: specs } => {
            let base = match base.strip_prefix('@') {
                Some(path) => BaseSw::Json(
                    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?,
                ),
                None => base.parse().expect("infallible"),
            };
            let mut list: Vec<Knot> = specs.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            if let Some(n) = family {
                list.extend(knots::torus_family(*n)?);
            }
            Ok(report_outcome(cli, cmd_sw_family(&base, *cover_degree, &list, !raw, cli.verbose)?))
        }
        Command::X9 { epsilon, delta, resolution, window_lo, window_hi, svg } => {
            let w = Window::square(*window_lo, *window_hi);
            Ok(report_outcome(cli, cmd_x9(*epsilon, *delta, w, *resolution, svg.as_deref())?))
        }
        Command::Selftest { seed, cases, max_cosets } => {
            Ok(report_outcome(cli, cmd_selftest(*seed, *cases, *max_cosets)))
        }
    }
}
