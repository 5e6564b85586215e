use std::io::Write;
use std::path::{Path, PathBuf};

use jacobs_ladder::gram::{gram_point, ExclusionMode};
use jacobs_ladder::ladder::{LadderOrder, LadderTable, MAX_T};
use jacobs_ladder::verify::{
    run_campaign, summarize, write_records_csv, Campaign, CampaignOutcome, Thm1Options, Thm2Limits, Thm2Options,
};

use crate::args::VerifyCommand;
use crate::{open_output, CliResult, Failure};

#[derive(Debug, Clone, PartialEq)]
pub enum CampaignKind {
    Thm1 {
        nu_from: u64,
        nu_to: u64,
        epsilon: f64,
        mode: ExclusionMode,
        force: bool,
        ladder: PathBuf,
    },
    Thm2 {
        t: f64,
        u: f64,
        ladder: PathBuf,
        phi1_ladder: Option<PathBuf>,
    },
    Chain {
        nu_from: u64,
        nu_to: u64,
    },
}

/// One validated `verify` invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSpec {
    pub kind: CampaignKind,
    pub rel_tol: f64,
    pub out: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

fn check_nu_range(from: u64, to: u64) -> CliResult {
    if from < 1 || from > to {
        return Err(Failure::Usage(format!(
            "need 1 <= nu-from <= nu-to, got [{from}, {to}]"
        )));
    }
    // θ(1e6)/π ≈ 1.76e6 bounds the supported index range.
    if to >= 1_700_000 {
        return Err(Failure::Usage(format!(
            "nu-to = {to} is beyond the supported range t <= {MAX_T}"
        )));
    }
    Ok(())
}

fn check_writable(path: Option<&Path>) -> CliResult {
    if let Some(p) = path {
        let parent = p
            .parent()
            .filter(|d| !d.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        if !parent.is_dir() {
            return Err(Failure::Usage(format!(
                "output directory {} does not exist",
                parent.display()
            )));
        }
    }
    Ok(())
}

fn check_tol(rel_tol: f64) -> CliResult {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Failure::Usage(format!("rel-tol must lie in (0, 1), got {rel_tol}")));
    }
    Ok(())
}

fn load_ladder(path: &Path, order: LadderOrder) -> CliResult<LadderTable> {
    let table = LadderTable::load(path).map_err(|e| Failure::Numerical(format!("{}: {e}", path.display())))?;
    if table.order() != order {
        return Err(Failure::Usage(format!(
            "{} holds an order-{} ladder, this command needs order {}",
            path.display(),
            table.order().as_number(),
            order.as_number()
        )));
    }
    Ok(table)
}

impl CampaignSpec {
    pub fn from_command(cmd: VerifyCommand) -> CliResult<CampaignSpec> {
        let spec = match cmd {
            VerifyCommand::Thm1(a) => {
                check_nu_range(a.nu_from, a.nu_to)?;
                if !(a.admissibility.epsilon > 0.0) {
                    return Err(Failure::Usage(format!(
                        "epsilon must be positive, got {}",
                        a.admissibility.epsilon
                    )));
                }
                CampaignSpec {
                    kind: CampaignKind::Thm1 {
                        nu_from: a.nu_from,
                        nu_to: a.nu_to,
                        epsilon: a.admissibility.epsilon,
                        mode: a.admissibility.mode.into(),
                        force: a.force,
                        ladder: a.ladder,
                    },
                    rel_tol: a.rel_tol,
                    out: a.output.out,
                    summary: a.output.summary,
                }
            }
            VerifyCommand::Thm2(a) => {
                if !(a.t >= 10.0 && a.t < MAX_T && a.u >= 0.0 && a.u <= a.t / a.t.ln()) {
                    return Err(Failure::Usage(format!(
                        "need 10 <= T < {MAX_T} and 0 <= U <= T/ln T, got T = {}, U = {}",
                        a.t, a.u
                    )));
                }
                CampaignSpec {
                    kind: CampaignKind::Thm2 {
                        t: a.t,
                        u: a.u,
                        ladder: a.ladder,
                        phi1_ladder: a.phi1_ladder,
                    },
                    rel_tol: a.rel_tol,
                    out: a.output.out,
                    summary: a.output.summary,
                }
            }
            VerifyCommand::Chain(a) => {
                check_nu_range(a.nu_from, a.nu_to)?;
                CampaignSpec {
                    kind: CampaignKind::Chain {
                        nu_from: a.nu_from,
                        nu_to: a.nu_to,
                    },
                    rel_tol: 1.0e-9,
                    out: a.output.out,
                    summary: a.output.summary,
                }
            }
        };
        check_tol(spec.rel_tol)?;
        check_writable(spec.out.as_deref())?;
        check_writable(spec.summary.as_deref())?;
        Ok(spec)
    }

    pub fn run(&self) -> CliResult {
        let outcome = match &self.kind {
            CampaignKind::Thm1 {
                nu_from,
                nu_to,
                epsilon,
                mode,
                force,
                ladder,
            } => {
                let table = load_ladder(ladder, LadderOrder::First)?;
                let need_lo = gram_point(*nu_from)?.t;
                let need_hi = gram_point(nu_to + 1)?.t;
                let (lo, hi) = table.phi_range();
                if need_lo < lo || need_hi > hi {
                    return Err(Failure::Numerical(format!(
                        "ladder {} covers phi in [{lo}, {hi}], the campaign needs [{need_lo}, {need_hi}] \
                         (t_nu for nu = {nu_from} ..= {})",
                        ladder.display(),
                        nu_to + 1
                    )));
                }
                run_campaign(&Campaign::Thm1 {
                    ladder: &table,
                    nu_from: *nu_from,
                    nu_to: *nu_to,
                    epsilon: *epsilon,
                    mode: *mode,
                    options: Thm1Options {
                        rel_tol: self.rel_tol,
                        force: *force,
                    },
                })
            }
            CampaignKind::Thm2 {
                t,
                u,
                ladder,
                phi1_ladder,
            } => {
                let table = load_ladder(ladder, LadderOrder::Second)?;
                let first = phi1_ladder
                    .as_deref()
                    .map(|p| load_ladder(p, LadderOrder::First))
                    .transpose()?;
                let (lo, hi) = table.phi_range();
                if *t < lo || t + u > hi {
                    return Err(Failure::Numerical(format!(
                        "ladder {} covers phi in [{lo}, {hi}], the window needs [{t}, {}]",
                        ladder.display(),
                        t + u
                    )));
                }
                let limits = match &first {
                    Some(l1) => Thm2Limits::FirstOrder(l1),
                    None => Thm2Limits::SecondOrder,
                };
                run_campaign(&Campaign::Thm2 {
                    ladder: &table,
                    windows: vec![(*t, *u)],
                    options: Thm2Options {
                        rel_tol: self.rel_tol,
                        limits,
                    },
                })
            }
            CampaignKind::Chain { nu_from, nu_to } => run_campaign(&Campaign::Chain {
                nu_from: *nu_from,
                nu_to: *nu_to,
            }),
        };
        self.write(&outcome)
    }

    fn write(&self, outcome: &CampaignOutcome) -> CliResult {
        let mut out = open_output(self.out.as_deref())?;
        write_records_csv(&outcome.records, &mut out)?;
        out.flush()?;
        if let Some(path) = &self.summary {
            let mut w = open_output(Some(path))?;
            serde_json::to_writer_pretty(&mut w, &summarize(outcome))?;
            writeln!(w)?;
            w.flush()?;
        }
        eprintln!(
            "{} records, {} skipped as inadmissible, {} failed",
            outcome.records.len(),
            outcome.skipped,
            outcome.failures.len()
        );
        for f in &outcome.failures {
            eprintln!("  {}: {}", f.parameter, f.message);
        }
        if outcome.failures.is_empty() {
            Ok(())
        } else {
            Err(Failure::Numerical(format!(
                "{} verifications failed",
                outcome.failures.len()
            )))
        }
    }
}
