//! Command-line interface: classical and operator-valued Burau matrices,
//! determinant estimates, torsion of braid closures, and verification
//! suites. Machine-readable output goes to stdout (or `--out`), human
//! tables to stderr. Exit codes: 0 success, 2 verification failure,
//! 1 any other error.

mod config;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use l2burau::io::{GammaDto, LaurentMatrixDto, OperatorMatrixDto};
use l2burau::{
    burau, l2_burau, parse_positive_rational, reduced_l2_burau, torsion_determinant, BraidWord,
    DetParams, Error, GammaMap,
};
use serde::{Deserialize, Serialize};

use crate::config::resolve_gamma;
use crate::output::{csv_table, Format, Rendered};

#[derive(Parser)]
#[command(
    name = "l2burau",
    version,
    about = "Burau matrices of braids, operator-valued Burau matrices, determinant estimates, and torsion of braid closures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical Burau matrix over integer Laurent polynomials.
    Burau(BraidArgs),
    /// Symbolic operator matrix of the full map under a choice of gamma.
    L2(MapArgs),
    /// Symbolic operator matrix of the reduced map.
    Reduced(MapArgs),
    /// Determinant and torsion estimates of a braid closure on a t-grid.
    Torsion(TorsionArgs),
    /// Built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write the machine-readable payload here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Payload format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BraidArgs {
    /// Braid word as signed generator indices: "1 -2 1", "1,-2,1", or
    /// "s1 -s2 s1". The empty string is the trivial braid.
    #[arg(long, allow_hyphen_values = true)]
    braid: String,
    /// Number of strands.
    #[arg(long)]
    strands: u32,
    #[command(flatten)]
    output: OutputArgs,
}

impl BraidArgs {
    fn parse(&self) -> anyhow::Result<BraidWord> {
        Ok(BraidWord::parse(&self.braid.replace(',', " "), self.strands)?)
    }
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    braid: BraidArgs,
    /// `id`, `abelianization`, or a config file providing gamma images.
    #[arg(long)]
    gamma: Option<String>,
    /// Group config file (oracle kind, parameters, weights, gamma images);
    /// used when --gamma is not itself a file.
    #[arg(long)]
    group: Option<PathBuf>,
}

impl MapArgs {
    fn gamma(&self, strands: u32) -> anyhow::Result<GammaMap> {
        resolve_gamma(self.gamma.as_deref(), self.group.as_deref(), strands)
    }
}

#[derive(Args)]
struct TorsionArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Comma-separated positive rationals, e.g. "1/2,2" or "0.25,4".
    #[arg(long, default_value = "1/2,2", allow_hyphen_values = true)]
    t: String,
    /// Truncation ball radius; the default depends on the oracle.
    #[arg(long)]
    radius: Option<u32>,
    /// Power-series order of the cross-check estimator.
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: longpaton, cocycle, theta, prop23, unknot, unlink, trefoil,
    /// or all.
    #[arg(default_value = "all")]
    suite: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Serialize, Deserialize)]
struct BurauResult {
    braid: String,
    strands: u32,
    matrix: LaurentMatrixDto,
}

#[derive(Serialize, Deserialize)]
struct OperatorResult {
    braid: String,
    strands: u32,
    gamma: GammaDto,
    matrix: OperatorMatrixDto,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    // Exit code 2 is reserved for verification failures, so argument errors
    // must not use clap's default exit path.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print()?;
            return Ok(ExitCode::from(code));
        }
    };
    match cli.command {
        Command::Burau(args) => cmd_burau(args),
        Command::L2(args) => cmd_operator(args, false),
        Command::Reduced(args) => cmd_operator(args, true),
        Command::Torsion(args) => cmd_torsion(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn aligned_rows(rows: usize, cols: usize, cell: impl Fn(usize, usize) -> String) -> Vec<String> {
    let grid: Vec<Vec<String>> = (0..rows)
        .map(|i| (0..cols).map(|j| cell(i, j)).collect())
        .collect();
    let widths: Vec<usize> = (0..cols)
        .map(|j| grid.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    grid.iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            format!("[ {} ]", cells.join("  "))
        })
        .collect()
}

fn cmd_burau(args: BraidArgs) -> anyhow::Result<ExitCode> {
    let b = args.parse()?;
    let m = burau(&b);
    let result = BurauResult {
        braid: b.display(),
        strands: b.strands(),
        matrix: LaurentMatrixDto::from(&m),
    };
    let csv = csv_table(
        "row,col,entry",
        (0..m.rows()).flat_map(|i| {
            let m = &m;
            (0..m.cols())
                .map(move |j| vec![i.to_string(), j.to_string(), m.get(i, j).display('T')])
        }),
    );
    let mut table = vec![format!(
        "Burau matrix of `{}` on {} strands:",
        b.display(),
        b.strands()
    )];
    table.extend(aligned_rows(m.rows(), m.cols(), |i, j| m.get(i, j).display('T')));
    Rendered::new(&result, csv, table)?.emit(args.output.format, args.output.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_operator(args: MapArgs, reduced: bool) -> anyhow::Result<ExitCode> {
    let b = args.braid.parse()?;
    let gamma = args.gamma(b.strands())?;
    let m = if reduced {
        reduced_l2_burau(&b, &gamma)?
    } else {
        l2_burau(&b, &gamma)?
    };
    let result = OperatorResult {
        braid: b.display(),
        strands: b.strands(),
        gamma: GammaDto::from(&gamma),
        matrix: OperatorMatrixDto::encode(&m)?,
    };
    let csv = csv_table(
        "row,col,entry",
        (0..m.rows()).flat_map(|i| {
            let m = &m;
            (0..m.cols())
                .map(move |j| vec![i.to_string(), j.to_string(), m.entry(i, j).display('x')])
        }),
    );
    let kind = if reduced { "Reduced operator" } else { "Operator" };
    let mut table = vec![format!(
        "{kind} matrix of `{}` over {}:",
        b.display(),
        gamma.target().describe()
    )];
    table.extend(aligned_rows(m.rows(), m.cols(), |i, j| {
        m.entry(i, j).display('x')
    }));
    Rendered::new(&result, csv, table)?
        .emit(args.braid.output.format, args.braid.output.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_torsion(args: TorsionArgs) -> anyhow::Result<ExitCode> {
    let b = args.map.braid.parse()?;
    let gamma = args.map.gamma(b.strands())?;
    let ts = args
        .t
        .split(',')
        .map(parse_positive_rational)
        .collect::<Result<Vec<_>, _>>()?;
    let mut params = DetParams::default();
    params.radius = args.radius;
    if let Some(order) = args.order {
        params.series_order = order;
    }
    let report = match torsion_determinant(&b, &gamma, &ts, &params) {
        Ok(r) => r,
        Err(Error::RelatorNotPreserved(msg)) => {
            eprintln!("verification failure: the map does not kill the closure relators: {msg}");
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.into()),
    };
    let csv = csv_table(
        "t,t_value,det,torsion",
        report.points.iter().map(|p| {
            vec![
                p.t.clone(),
                p.t_value.to_string(),
                p.det.to_string(),
                p.torsion.to_string(),
            ]
        }),
    );
    let mut table = vec![
        format!(
            "Torsion of the closure of `{}` over {}:",
            report.braid, report.oracle
        ),
        format!("{:>8}  {:>14}  {:>14}", "t", "det", "torsion"),
    ];
    for p in &report.points {
        table.push(format!("{:>8}  {:>14.6e}  {:>14.6e}", p.t, p.det, p.torsion));
    }
    table.push("torsion = det / max(1,t)^n, defined up to a power of t".to_string());
    Rendered::new(&report, csv, table)?.emit(
        args.map.braid.output.format,
        args.map.braid.output.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let report = verify::run(&args.suite)?;
    let csv = csv_table(
        "suite,check,passed",
        report.suites.iter().flat_map(|s| {
            s.checks
                .iter()
                .map(move |c| vec![s.suite.clone(), c.name.clone(), c.passed.to_string()])
        }),
    );
    let mut table = Vec::new();
    for s in &report.suites {
        for c in &s.checks {
            table.push(format!(
                "{} {}/{}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                s.suite,
                c.name,
                c.detail
            ));
        }
    }
    table.push(if report.passed {
        "all checks passed".to_string()
    } else {
        "some checks FAILED".to_string()
    });
    Rendered::new(&report, csv, table)?.emit(args.output.format, args.output.out.as_deref())?;
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
