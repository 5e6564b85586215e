#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod campaign;

use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use jacobs_ladder::bessel::j1_zeros;
use jacobs_ladder::gram::{classify_points, count_admissible_in_cell, gram_points, spacing_prediction};
use jacobs_ladder::ladder::{build_ladder, lag_prediction, LadderOrder, LadderTable};
use jacobs_ladder::oracle::{default_fixture_dir, oracle_check};
use jacobs_ladder::{j1, BesselZeroTable};

use args::*;
use campaign::CampaignSpec;

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numerical(_) => 2,
        }
    }
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Numerical(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            print_nearest_help(&argv);
            return ExitCode::from(1);
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("usage error: {m}"),
                Failure::Numerical(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

/// Help of the deepest subcommand named on the command line.
fn print_nearest_help(argv: &[String]) {
    let mut cmd = Cli::command();
    cmd.build();
    let mut path = Vec::new();
    {
        let mut cur = &cmd;
        for a in argv.iter().skip(1) {
            match cur.find_subcommand(a) {
                Some(sub) => {
                    path.push(a.clone());
                    cur = sub;
                }
                None if a.starts_with('-') => continue,
                None => break,
            }
        }
    }
    let mut cur = &mut cmd;
    for p in &path {
        cur = cur.find_subcommand_mut(p).expect("path was found above");
    }
    eprintln!();
    let _ = cur.write_help(&mut io::stderr());
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Gram(GramCommand::List(a)) => gram_list(a),
        Command::Gram(GramCommand::Cells(a)) => gram_cells(a),
        Command::Bessel(BesselCommand::Zeros(a)) => bessel_zeros(a),
        Command::Ladder(LadderCommand::Build(a)) => ladder_build(a),
        Command::Ladder(LadderCommand::Series(a)) => ladder_series(a),
        Command::Verify(v) => CampaignSpec::from_command(v)?.run(),
        Command::OracleCheck(a) => oracle(a),
    }
}

pub fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn gram_list(a: GramListArgs) -> CliResult {
    if a.from < 1 || a.from > a.to {
        return Err(Failure::Usage(format!(
            "need 1 <= from <= to, got [{}, {}]",
            a.from, a.to
        )));
    }
    let points = gram_points(a.from, a.to + 1)?;
    let zeros = BesselZeroTable::covering(points[points.len() - 1].t);
    let mut out = open_output(a.output.out.as_deref())?;
    writeln!(
        out,
        "nu,t,spacing,residual,admissible,cell_index,sin_magnitude,spacing_prediction,theta_residual,inside_bessel_cell,clears_exclusion"
    )?;
    for w in points.windows(2) {
        let (g, next) = (&w[0], &w[1]);
        let spacing = next.t - g.t;
        let prediction = spacing_prediction(g.t);
        let c = classify_points(
            g.nu,
            g.t,
            next.t,
            a.admissibility.epsilon,
            &zeros,
            a.admissibility.mode.into(),
        )?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            g.nu,
            num(g.t),
            num(spacing),
            num(spacing - prediction),
            c.admissible,
            c.containing_bessel_index.map(|n| n.to_string()).unwrap_or_default(),
            num(c.sin_magnitude),
            num(prediction),
            num(g.theta_residual),
            c.inside_bessel_cell,
            c.clears_exclusion_zone
        )?;
    }
    out.flush()?;
    Ok(())
}

fn gram_cells(a: GramCellsArgs) -> CliResult {
    if a.from < 1 || a.from > a.to {
        return Err(Failure::Usage(format!(
            "need 1 <= from <= to, got [{}, {}]",
            a.from, a.to
        )));
    }
    let mut out = open_output(a.output.out.as_deref())?;
    writeln!(out, "n,mu_lo,mu_hi,wholly_inside,admissible,t_mid,ratio")?;
    for n in a.from..=a.to {
        let c = count_admissible_in_cell(n, a.admissibility.epsilon, a.admissibility.mode.into())?;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.n,
            num(c.mu_lo),
            num(c.mu_hi),
            c.wholly_inside,
            c.admissible,
            num(c.t_mid),
            num(c.ratio)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn bessel_zeros(a: BesselZerosArgs) -> CliResult {
    if a.count == 0 {
        return Err(Failure::Usage("count must be at least 1".into()));
    }
    let table = j1_zeros(a.count);
    let mut out = open_output(a.output.out.as_deref())?;
    writeln!(out, "n,mu,j1_residual,spacing")?;
    let mut prev = None;
    for (i, &mu) in table.zeros().iter().enumerate() {
        let spacing = prev.map(|p: f64| num(mu - p)).unwrap_or_default();
        writeln!(out, "{},{},{},{}", i + 1, num(mu), num(j1(mu)?), spacing)?;
        prev = Some(mu);
    }
    out.flush()?;
    Ok(())
}

fn ladder_build(a: LadderBuildArgs) -> CliResult {
    let order = LadderOrder::from_number(a.order).map_err(|e| Failure::Usage(e.to_string()))?;
    let table = build_ladder(order, a.t_min, a.t_max, a.tol).map_err(|e| match e {
        jacobs_ladder::Error::Precondition(m) => Failure::Usage(m),
        other => Failure::Numerical(other.to_string()),
    })?;
    table.save(&a.out)?;
    let (t0, t1) = table.t_range();
    let (p0, p1) = table.phi_range();
    let summary = serde_json::json!({
        "file": a.out.display().to_string(),
        "order": a.order,
        "derivative_def": table.derivative_def(),
        "nodes": table.nodes().len(),
        "t_range": [t0, t1],
        "phi_range": [p0, p1],
        "anchor": [table.anchor().0, table.anchor().1],
        "lag_ratio_at_t_max": table.lag_ratio(t1)?,
        "lags_everywhere": table.lags_everywhere(),
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

fn ladder_series(a: LadderSeriesArgs) -> CliResult {
    if a.every == 0 {
        return Err(Failure::Usage("--every must be at least 1".into()));
    }
    let table = LadderTable::load(&a.ladder)?;
    let mut out = open_output(a.output.out.as_deref())?;
    writeln!(out, "t,phi,phi_prime,lag,lag_prediction,lag_ratio")?;
    for n in table.nodes().iter().step_by(a.every) {
        let lag = (n.t - n.phi) - n.phi_lo;
        let pred = lag_prediction(n.t)?;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            num(n.t),
            num(n.phi),
            num(n.dphi),
            num(lag),
            num(pred),
            num(lag / pred)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn oracle(a: OracleArgs) -> CliResult {
    let dir = a.fixtures.unwrap_or_else(default_fixture_dir);
    let report = oracle_check(&dir)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    for c in &report.checks {
        eprintln!(
            "{:<14} {:>4} rows  max deviation {:.3e}  worst/tolerance {:.3}  {}",
            c.name,
            c.rows,
            c.max_deviation,
            c.worst_ratio,
            if c.passed() { "ok" } else { "FAILED" }
        );
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Numerical("fixture values outside tolerance".into()))
    }
}
