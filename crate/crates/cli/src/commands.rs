use pblab_core::blowup::{verify_blowup_smooth, ChartOutcome};
use pblab_core::chow::{
    chern_from_sequence, cubic_equiv_search, cubic_form, h0_bundle, stability_verdict, xi_top, BundleSeq, ChowContext,
};
use pblab_core::geometry::{smoothness_report, validate_triple, SectionCounts, SectionTriple};

use crate::config::{Command, RunConfig};
use crate::input::{parse_triple_file, standard_triple};
use crate::regress::{run_scenarios, RegressHooks};
use crate::report::{ChowBlock, CubicFormsBlock, HypersurfaceBlock, RegressBlock, Report, TripleBlock};
use crate::sample::{sample, SampleMode};
use crate::CliError;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Error = 1,
    /// Invalid triple, non-smooth blow-up or failed regression.
    Rejected = 2,
}

pub const CUBIC_SEARCH_BOUND: i64 = 5;

fn load_triple(cfg: &RunConfig) -> Result<SectionTriple, CliError> {
    match &cfg.input_path {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            Ok(parse_triple_file(&text)?)
        }
        None => Ok(standard_triple(cfg.n)),
    }
}

pub fn chow_block(n: u32) -> Result<ChowBlock, CliError> {
    let seq = BundleSeq::for_degree(i64::from(n));
    let chern = chern_from_sequence(&seq);
    let pe = cubic_form(&ChowContext::rank2_over_plane(chern_from_sequence(&BundleSeq::for_degree(2))))?;
    let scroll = cubic_form(&ChowContext::split_over_line(&[2, 0, 0]))?;
    let equivalence = cubic_equiv_search(&pe, &scroll, CUBIC_SEARCH_BOUND);
    let evidence = match equivalence {
        Some(_) => "the cubic forms are equivalent under an integral substitution".to_string(),
        None => format!(
            "bounded evidence: no integral substitution with entries in [-{b}, {b}] maps one cubic form to the other",
            b = CUBIC_SEARCH_BOUND
        ),
    };
    Ok(ChowBlock {
        n,
        sequence: seq,
        chern,
        h0: SectionCounts {
            h0_v: h0_bundle(&seq),
            h0_v_minus1: h0_bundle(&seq.twisted(-1)),
        },
        stability: stability_verdict(&seq),
        xi_top: xi_top(&ChowContext::rank2_over_plane(chern))?,
        cubic_form: cubic_form(&ChowContext::rank2_over_plane(chern))?.to_string(),
        cubic_forms: CubicFormsBlock {
            projective_bundle: pe.to_string(),
            scroll: scroll.to_string(),
            search_bound: CUBIC_SEARCH_BOUND,
            equivalence,
            evidence,
        },
    })
}

fn fail(report: &mut Report, stage: &str, e: impl std::fmt::Display) -> Exit {
    report.failed_stage = Some(stage.into());
    report.error = Some(e.to_string());
    Exit::Error
}

/// Validate → hypersurface → blow-up → chow, stopping after `last`.
fn triple_stages(cfg: &RunConfig, report: &mut Report, last: Command) -> Exit {
    let opts = cfg.gb_options();
    let triple = match load_triple(cfg) {
        Ok(t) => t,
        Err(e) => return fail(report, "input", e),
    };
    let n = triple.n;
    let tr = match validate_triple(&triple, &opts) {
        Ok(r) => r,
        Err(e) => return fail(report, "validate", e),
    };
    let valid = tr.is_valid();
    report.triple = Some(TripleBlock {
        input: triple.clone(),
        valid,
        report: tr,
    });
    if !valid {
        if last != Command::Validate {
            report.failed_stage = Some("validate".into());
        }
        return Exit::Rejected;
    }
    if last == Command::Validate {
        return Exit::Success;
    }

    let f = triple.hypersurface();
    if last != Command::Blowup {
        match smoothness_report(&f, &opts) {
            Ok(s) => report.hypersurface = Some(HypersurfaceBlock { polynomial: f.clone(), smoothness: s }),
            Err(e) => return fail(report, "hypersurface", e),
        }
        if last == Command::Hypersurface {
            return Exit::Success;
        }
    }

    let blowup = match verify_blowup_smooth(&f, &opts) {
        Ok(b) => b,
        Err(e) => return fail(report, "blowup", e),
    };
    let over_budget = blowup
        .charts
        .iter()
        .any(|c| matches!(c.verdict, ChartOutcome::BudgetExceeded { .. }));
    let all_smooth = blowup.all_smooth;
    report.blowup = Some(blowup);
    if over_budget {
        return fail(report, "blowup", "S-pair budget exceeded on a chart");
    }
    let mut exit = if all_smooth { Exit::Success } else { Exit::Rejected };

    if last == Command::Pipeline {
        match chow_block(n) {
            Ok(c) => report.chow = Some(c),
            Err(e) => exit = fail(report, "chow", e),
        }
    }
    exit
}

/// Runs one command; the report is complete even on failure.
pub fn run(cfg: &RunConfig) -> (Report, Exit) {
    run_with_hooks(cfg, &RegressHooks::default())
}

pub fn run_with_hooks(cfg: &RunConfig, hooks: &RegressHooks) -> (Report, Exit) {
    let mut report = Report::new(cfg);
    if let Err(e) = cfg.check() {
        return finish(report, "config", e);
    }
    let exit = match cfg.command {
        Command::Validate | Command::Hypersurface | Command::Blowup | Command::Pipeline => {
            triple_stages(cfg, &mut report, cfg.command)
        }
        Command::Chow => {
            let n = match load_triple(cfg) {
                Ok(t) if cfg.input_path.is_some() => t.n,
                Ok(_) => cfg.n,
                Err(e) => return finish(report, "input", e),
            };
            match chow_block(n) {
                Ok(c) => {
                    report.chow = Some(c);
                    Exit::Success
                }
                Err(e) => fail(&mut report, "chow", e),
            }
        }
        Command::Sample => {
            match sample(cfg.seed, cfg.n, cfg.coeff_bound, cfg.trials, SampleMode::Random, &cfg.gb_options()) {
                Ok(s) => {
                    report.sample = Some(s);
                    Exit::Success
                }
                Err(e) => fail(&mut report, "sample", e),
            }
        }
        Command::Regress => {
            let results = run_scenarios(hooks, &cfg.gb_options());
            let passed = results.iter().filter(|r| r.passed).count();
            let failed = results.len() - passed;
            report.regress = Some(RegressBlock { passed, failed, results });
            if failed == 0 {
                Exit::Success
            } else {
                Exit::Rejected
            }
        }
    };
    (report, exit)
}

fn finish(mut report: Report, stage: &str, e: impl std::fmt::Display) -> (Report, Exit) {
    let exit = fail(&mut report, stage, e);
    (report, exit)
}
