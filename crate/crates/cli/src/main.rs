use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use bpz2_core::plj::{
    p0_by_surjections, p_by_division, p_by_system, p_closed_ell_eq_k, p_closed_k3, PljTable, DEFAULT_BUDGET,
};
use bpz2_core::verify::{run_suite, Bounds, Suite, SuiteReport, DEFAULT_SEED};
use bpz2_core::zmodule::{IndexTuple, VAction};
use bpz2_core::{F2Poly, PljQuery};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

#[derive(Parser)]
#[command(
    name = "bpz2",
    version,
    about = "Action polynomials, v_j-actions and Dickson identities over F2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the action polynomial p_{l,j} in k variables.
    Plj {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, value_enum, default_value_t = Method::Division)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply v_j to each index tuple read from a file (or stdin), one tuple per line.
    Act {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        j: u32,
        /// Path to the input, or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run identity suites and print one PASS/FAIL line per check.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        ell: Option<u32>,
        /// Cap on the number of matrices enumerated by the parity census.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Division,
    System,
    Thm2,
    Thm3,
    Thm4,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Pdef,
    System,
    Thm2,
    Thm3,
    Thm4,
    Biglem,
    Dickson,
    Steenrod,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Pdef => vec![Suite::Pdef],
            SuiteArg::System => vec![Suite::System],
            SuiteArg::Thm2 => vec![Suite::Thm2],
            SuiteArg::Thm3 => vec![Suite::Thm3],
            SuiteArg::Thm4 => vec![Suite::Thm4],
            SuiteArg::Biglem => vec![Suite::Biglem],
            SuiteArg::Dickson => vec![Suite::Dickson],
            SuiteArg::Steenrod => vec![Suite::Steenrod],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Plj {
            k,
            ell,
            j,
            method,
            format,
        } => cmd_plj(k, ell, j, method, format),
        Command::Act { k, j, input, format } => cmd_act(k, j, &input, format),
        Command::Verify {
            suite,
            k_max,
            k,
            ell,
            budget,
            seed,
        } => cmd_verify(
            suite,
            Bounds {
                k_max,
                k,
                ell,
                budget,
                seed,
            },
        ),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("bpz2: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn cmd_plj(k: usize, ell: u32, j: u32, method: Method, format: Format) -> Result<u8, String> {
    let q = PljQuery::new(k, ell, j).map_err(|e| e.to_string())?;
    let p: F2Poly = match method {
        Method::Division => p_by_division(q),
        Method::System => p_by_system(k, ell).map(|mut ps| ps.swap_remove(j as usize)),
        Method::Thm2 => {
            if k != 3 {
                return Err(format!("method thm2 requires k = 3, got k = {k}"));
            }
            p_closed_k3(ell, j)
        }
        Method::Thm3 => {
            if ell != k as u32 {
                return Err(format!("method thm3 requires ell = k, got ell = {ell}, k = {k}"));
            }
            p_closed_ell_eq_k(k, j)
        }
        Method::Thm4 => {
            if j != 0 {
                return Err(format!("method thm4 requires j = 0, got j = {j}"));
            }
            p0_by_surjections(k, ell)
        }
    }
    .map_err(|e| e.to_string())?;
    match format {
        Format::Text => println!("{p}"),
        Format::Json => println!("{}", p.to_json()),
    }
    Ok(0)
}

fn cmd_act(k: usize, j: u32, input: &str, format: Format) -> Result<u8, String> {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(input).map_err(|e| format!("reading {input}: {e}"))?
    };
    let action = VAction::new(k).map_err(|e| e.to_string())?;
    if j as usize >= k {
        return Err(format!("j must be below k = {k}, got j = {j}"));
    }
    let mut tuples = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let index: IndexTuple = line.parse().map_err(|e| format!("line {}: {e}", n + 1))?;
        if index.k() != k {
            return Err(format!("line {}: expected {k} entries, got {}", n + 1, index.k()));
        }
        tuples.push(index);
    }
    let out = io::stdout();
    let mut out = out.lock();
    for index in &tuples {
        let v = action.vj_action(j, index).map_err(|e| e.to_string())?;
        let line = match format {
            Format::Text => v.to_string(),
            Format::Json => v.to_json(),
        };
        writeln!(out, "{line}").map_err(|e| e.to_string())?;
    }
    Ok(0)
}

fn cmd_verify(suite: SuiteArg, bounds: Bounds) -> Result<u8, String> {
    let table = PljTable::new();
    let reports: Vec<_> = suite
        .suites()
        .into_par_iter()
        .map(|s| (s, run_suite(s, &bounds, &table)))
        .collect();
    let stdout = io::stdout();
    let code = write_reports(&mut stdout.lock(), &reports).map_err(|e| e.to_string())?;
    for (s, r) in &reports {
        if let Ok(r) = r {
            eprintln!("suite {s}: {:.2?}", r.elapsed);
        }
    }
    match reports.iter().find_map(|(_, r)| r.as_ref().err()) {
        Some(e) => Err(e.to_string()),
        None => Ok(code),
    }
}

/// Prints reports in the given order and returns the exit code for the
/// checks (errored suites are reported by the caller).
fn write_reports(out: &mut impl Write, reports: &[(Suite, bpz2_core::Result<SuiteReport>)]) -> io::Result<u8> {
    let mut failed = false;
    for (s, report) in reports {
        let report = match report {
            Ok(r) => r,
            Err(e) => {
                writeln!(out, "ERROR {s}: {e}")?;
                continue;
            }
        };
        for c in &report.checks {
            writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, s, c.name)?;
            if !c.detail.is_empty() {
                writeln!(out, "    {}", c.detail)?;
            }
        }
        let passed = report.checks.iter().filter(|c| c.passed).count();
        writeln!(out, "suite {s}: {passed}/{} passed", report.checks.len())?;
        failed |= !report.passed();
    }
    Ok(if failed { EXIT_FAIL } else { 0 })
}

#[cfg(test)]
mod tests {
    use std::time::Duration;

    use bpz2_core::verify::Check;

    use super::*;

    fn report(suite: Suite, results: &[(&str, bool)]) -> (Suite, bpz2_core::Result<SuiteReport>) {
        let checks = results
            .iter()
            .map(|&(name, passed)| Check {
                name: name.into(),
                passed,
                detail: String::new(),
            })
            .collect();
        (
            suite,
            Ok(SuiteReport {
                suite,
                checks,
                elapsed: Duration::ZERO,
            }),
        )
    }

    #[test]
    fn failing_check_gives_exit_1() {
        let mut buf = Vec::new();
        let reports = [
            report(Suite::Pdef, &[("a k=1 l=1 j=0", true)]),
            report(Suite::Thm2, &[("b k=3 l=4 j=2", false)]),
        ];
        assert_eq!(write_reports(&mut buf, &reports).unwrap(), EXIT_FAIL);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "PASS pdef: a k=1 l=1 j=0\nsuite pdef: 1/1 passed\nFAIL thm2: b k=3 l=4 j=2\nsuite thm2: 0/1 passed\n"
        );
    }

    #[test]
    fn all_passing_gives_exit_0() {
        let mut buf = Vec::new();
        assert_eq!(
            write_reports(&mut buf, &[report(Suite::Thm3, &[("c", true)])]).unwrap(),
            0
        );
    }
}
