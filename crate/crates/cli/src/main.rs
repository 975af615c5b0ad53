//! `besselsum`: evaluate `P_mu(x)` by series, closed form or Meijer-G contour,
//! tabulate it over grids, and run the cross-validation suites.
//!
//! Exit codes: 0 success, 1 evaluation error or failed check, 2 bad flags.

mod format;
mod grid;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use besselsum_core::{
    run_suite, ClosedFormConfig, EvalRequest, EvalSettings, MeijerConfig, ParamGrid, QuadSpec,
    Suite, TruncationPolicy,
};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use format::{Format, Row};
use grid::{GridSpec, Method};

#[derive(Parser, Debug)]
#[command(name = "besselsum", version, about = "Sums of Bessel functions times their order derivatives")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate P_mu(x) at the given points
    Eval(GridCmd),
    /// Tabulate P_mu(x) over a grid (same flags as eval, series by default)
    Table(GridCmd),
    /// Run a verification suite and write its report
    Verify(VerifyCmd),
}

#[derive(Args, Debug)]
struct GridCmd {
    /// Orders: list `1,2,-3`, inclusive range `1:4`, or a mixture
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    /// Explicit x values, comma separated
    #[arg(long, allow_hyphen_values = true, group = "xs")]
    x: Option<String>,
    /// Geometric x range `start:stop:count`
    #[arg(long, group = "xs")]
    x_geom: Option<String>,
    /// Linear x range `start:stop:count`
    #[arg(long, group = "xs")]
    x_lin: Option<String>,
    #[arg(long, value_enum, default_value_t = Method::Series)]
    method: Method,
    #[command(flatten)]
    out: OutputArgs,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args, Debug)]
struct VerifyCmd {
    /// lemma1, lemma2, prop_routes, reflection, asymptotics, constant_c, meijer_routes or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Override the suite's mu axis
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Override the suite's nu axis (lemma1 only)
    #[arg(long)]
    nu: Option<String>,
    /// Override the suite's x axis
    #[arg(long)]
    x: Option<String>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    threads: Option<usize>,
    /// Report elapsed_us as 0 so output is byte-reproducible
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct TolArgs {
    /// Series: stop after `streak` terms below abs_floor * max(1, |sum|)
    #[arg(long, default_value_t = TruncationPolicy::DEFAULT_FLOOR)]
    abs_floor: f64,
    #[arg(long, default_value_t = TruncationPolicy::DEFAULT_STREAK)]
    streak: usize,
    /// Series: hard term limit
    #[arg(long, default_value_t = TruncationPolicy::DEFAULT_N_MAX)]
    n_max: usize,
    /// Quadrature relative tolerance
    #[arg(long, default_value_t = QuadSpec::default().rel_tol)]
    rel_tol: f64,
    /// Quadrature absolute tolerance
    #[arg(long, default_value_t = QuadSpec::default().abs_tol)]
    abs_tol: f64,
    /// Analytic tail starts at factor * max(x, 30)
    #[arg(long, default_value_t = QuadSpec::default().split_point_factor)]
    split_factor: f64,
    #[arg(long, default_value_t = QuadSpec::default().max_panels)]
    max_panels: usize,
    /// Meijer-G contour half-height
    #[arg(long, default_value_t = MeijerConfig::default().contour_height)]
    contour_height: f64,
    /// Meijer-G contour nodes (odd)
    #[arg(long, default_value_t = MeijerConfig::default().nodes)]
    nodes: usize,
    /// Contour crosses the real axis at min(b1, b2, b3) - sigma_offset
    #[arg(long, default_value_t = MeijerConfig::default().sigma_offset)]
    sigma_offset: f64,
    /// Contour curvature (default min(0.1, 0.5/x))
    #[arg(long)]
    curvature: Option<f64>,
}

impl TolArgs {
    fn settings(&self) -> EvalSettings {
        let quad = QuadSpec {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            split_point_factor: self.split_factor,
            max_panels: self.max_panels,
        };
        let meijer = MeijerConfig {
            contour_height: self.contour_height,
            nodes: self.nodes,
            sigma_offset: self.sigma_offset,
            curvature: self.curvature,
            ..MeijerConfig::default()
        };
        EvalSettings {
            policy: None,
            closed: ClosedFormConfig::new(quad),
            meijer,
        }
    }

    fn policy(&self, mu: i32, x: f64) -> TruncationPolicy {
        let mut p = TruncationPolicy::for_args(mu, x).with_floor(self.abs_floor);
        p.streak = self.streak;
        p.n_max = self.n_max.max(p.n_min);
        p
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err("--threads must be >= 1".into());
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| e.to_string())
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn build_grid(cmd: &GridCmd) -> Result<GridSpec, String> {
    let mus = grid::parse_mu_list(&cmd.mu)?;
    // reject mu = 0 before complaining about anything else
    grid::check_mu(&mus, cmd.method)?;
    let xs = if let Some(s) = &cmd.x {
        grid::parse_x_list(s)?
    } else if let Some(s) = &cmd.x_geom {
        let (a, b, n) = grid::parse_range(s)?;
        grid::geometric(a, b, n)?
    } else if let Some(s) = &cmd.x_lin {
        let (a, b, n) = grid::parse_range(s)?;
        grid::linear(a, b, n)
    } else {
        Vec::new()
    };
    GridSpec::new(mus, xs, cmd.method)
}

fn cmd_grid(cmd: GridCmd) -> ExitCode {
    let grid = match build_grid(&cmd) {
        Ok(g) => g,
        Err(e) => return usage_error(&e),
    };
    let pool = match pool(cmd.out.threads) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let settings = cmd.tol.settings();
    let jobs = grid.jobs();
    let no_timing = cmd.out.no_timing;
    let rows: Vec<Row> = pool.install(|| {
        jobs.par_iter()
            .map(|&(mu, x, route)| {
                let mut s = settings.clone();
                s.policy = Some(cmd.tol.policy(mu, x));
                let start = Instant::now();
                let r = EvalRequest::new(mu, x, route).evaluate(&s);
                let elapsed_us = if no_timing {
                    0
                } else {
                    start.elapsed().as_micros() as u64
                };
                match r {
                    Ok(v) => Row {
                        mu,
                        x,
                        method: route,
                        value: Some(v.value),
                        err_bound: Some(v.tail_bound),
                        work_units: v.terms_used,
                        elapsed_us,
                        error: None,
                    },
                    Err(e) => Row {
                        mu,
                        x,
                        method: route,
                        value: None,
                        err_bound: None,
                        work_units: 0,
                        elapsed_us,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    let failed: Vec<&Row> = rows.iter().filter(|r| r.error.is_some()).collect();
    for r in &failed {
        eprintln!(
            "error: mu={} x={} {}: {}",
            r.mu,
            r.x,
            r.method,
            r.error.as_deref().unwrap_or("")
        );
    }
    let written = open_output(&cmd.out.out)
        .and_then(|out| format::write_rows(out, &rows, cmd.out.format));
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(1);
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(cmd: VerifyCmd) -> ExitCode {
    let suite: Suite = match cmd.suite.parse() {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let ints = |s: &Option<String>| s.as_deref().map(grid::parse_mu_list).transpose();
    let grid = match (ints(&cmd.mu), ints(&cmd.nu)) {
        (Ok(mus), Ok(nus)) => {
            let xs = match cmd.x.as_deref().map(grid::parse_x_list).transpose() {
                Ok(xs) => xs,
                Err(e) => return usage_error(&e),
            };
            ParamGrid { mus, nus, xs }
        }
        (Err(e), _) | (_, Err(e)) => return usage_error(&e),
    };
    let pool = match pool(cmd.out.threads) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    // suites run concurrently, reports are concatenated in the fixed suite order
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let results: Vec<_> = pool.install(|| suites.par_iter().map(|&s| run_suite(s, &grid)).collect());
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(v) => reports.extend(v),
            Err(e) => return usage_error(&e.to_string()),
        }
    }
    if cmd.out.no_timing {
        for r in &mut reports {
            r.elapsed_us = 0;
        }
    }
    let written = open_output(&cmd.out.out)
        .and_then(|out| format::write_checks(out, &reports, cmd.out.format));
    if let Err(e) = written {
        eprintln!("error: writing report: {e}");
        return ExitCode::from(1);
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    for r in &failed {
        eprintln!(
            "FAIL {} mu={:?} nu={:?} x={:?}: observed {} expected {} tol {}{}",
            r.check_id,
            r.mu,
            r.nu,
            r.x,
            r.observed,
            r.expected,
            r.tolerance,
            r.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
        );
    }
    eprintln!("{}/{} checks passed", reports.len() - failed.len(), reports.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval(c) | Command::Table(c) => cmd_grid(c),
        Command::Verify(c) => cmd_verify(c),
    }
}
