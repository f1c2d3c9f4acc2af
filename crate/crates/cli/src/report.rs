use std::fmt::Write;

use pblab_core::blowup::{BlowupReport, ChartOutcome};
use pblab_core::chow::{BundleSeq, ChernPair, StabilityVerdict};
use pblab_core::geometry::{SectionCounts, SectionTriple, SmoothnessReport, TripleReport};
use pblab_core::Poly;
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::regress::ScenarioResult;
use crate::sample::SampleStats;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: Command,
    pub n: u32,
    pub input: Option<String>,
    pub seed: u64,
    pub trials: u32,
    pub bound: u32,
    pub budget: usize,
}

impl From<&RunConfig> for ConfigEcho {
    fn from(cfg: &RunConfig) -> Self {
        ConfigEcho {
            command: cfg.command,
            n: cfg.n,
            input: cfg.input_path.clone(),
            seed: cfg.seed,
            trials: cfg.trials,
            bound: cfg.coeff_bound,
            budget: cfg.spair_budget,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleBlock {
    pub input: SectionTriple,
    pub valid: bool,
    pub report: TripleReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct HypersurfaceBlock {
    pub polynomial: Poly,
    pub smoothness: SmoothnessReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CubicFormsBlock {
    pub projective_bundle: String,
    pub scroll: String,
    pub search_bound: i64,
    pub equivalence: Option<[[i64; 2]; 2]>,
    /// A search that finds nothing is bounded evidence, not a proof.
    pub evidence: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChowBlock {
    pub n: u32,
    pub sequence: BundleSeq,
    pub chern: ChernPair,
    pub h0: SectionCounts,
    pub stability: StabilityVerdict,
    pub xi_top: i64,
    pub cubic_form: String,
    pub cubic_forms: CubicFormsBlock,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegressBlock {
    pub passed: usize,
    pub failed: usize,
    pub results: Vec<ScenarioResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<TripleBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypersurface: Option<HypersurfaceBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup: Option<BlowupReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chow: Option<ChowBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regress: Option<RegressBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(cfg: &RunConfig) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            config: cfg.into(),
            triple: None,
            hypersurface: None,
            blowup: None,
            chow: None,
            sample: None,
            regress: None,
            failed_stage: None,
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        if let Some(t) = &self.triple {
            let r = &t.report;
            let _ = writeln!(w, "triple (n = {}): f = {}, g = {}, h = {}", t.input.n, t.input.f, t.input.g, t.input.h);
            let _ = writeln!(w, "  {}", if t.valid { "valid" } else { "invalid" });
            if !r.degrees_ok {
                let _ = writeln!(w, "  degrees do not match (n, n-1, n-1)");
            }
            if let Some(p) = r.witness_point {
                let _ = writeln!(w, "  common zero: ({}, {}, {})", p[0], p[1], p[2]);
            }
            if let Some(m) = &r.base_locus {
                if !m.empty {
                    let _ = writeln!(w, "  base locus dimension {}", m.dimension);
                }
            }
            if let Some(m) = &r.gh_metrics {
                let length = m.length.map_or("-".to_string(), |l| l.to_string());
                let _ = writeln!(w, "  Z(g, h): dimension {}, length {}", m.dimension, length);
            }
        }
        if let Some(h) = &self.hypersurface {
            let s = &h.smoothness;
            let _ = writeln!(w, "hypersurface F = {}", h.polynomial);
            let _ = writeln!(w, "  smooth: {}", s.is_smooth);
            let _ = writeln!(w, "  contains line: {}", s.contains_line);
            let _ = writeln!(w, "  singular locus contains line: {}", s.singular_contains_line);
            let _ = writeln!(w, "  singular locus equals line (as a set): {}", s.singular_equals_line);
            let _ = writeln!(w, "  multiplicity along line: {}", s.multiplicity_along_line);
        }
        if let Some(b) = &self.blowup {
            let _ = writeln!(w, "blow-up along the line: all charts smooth = {}", b.all_smooth);
            for c in &b.charts {
                let verdict = match &c.verdict {
                    ChartOutcome::Smooth => "smooth".to_string(),
                    ChartOutcome::Singular { .. } => "singular".to_string(),
                    ChartOutcome::BudgetExceeded { limit } => format!("budget of {limit} S-pairs exceeded"),
                };
                let _ = writeln!(w, "  [{}] m = {}: {}  ({verdict})", c.chart, c.multiplicity, c.strict);
            }
        }
        if let Some(c) = &self.chow {
            let _ = writeln!(w, "bundle V_{}: c1 = {}, c2 = {}", c.n, c.chern.c1, c.chern.c2);
            let _ = writeln!(w, "  h0(V) = {}, h0(V(-1)) = {}", c.h0.h0_v, c.h0.h0_v_minus1);
            let _ = writeln!(
                w,
                "  stability: {} (normalized by {}, h0 = {}, h0(-1) = {})",
                serde_json::to_value(c.stability.verdict).expect("enum").as_str().unwrap_or("?"),
                c.stability.normal_twist,
                c.stability.h0_norm,
                c.stability.h0_norm_minus1
            );
            let _ = writeln!(w, "  xi^3 = {}", c.xi_top);
            let _ = writeln!(w, "  cubic form: {}", c.cubic_form);
            let f = &c.cubic_forms;
            let _ = writeln!(w, "  quadric bundle vs scroll: {} vs {}", f.projective_bundle, f.scroll);
            let _ = writeln!(w, "  {}", f.evidence);
        }
        if let Some(s) = &self.sample {
            let _ = writeln!(
                w,
                "sample (n = {}): {} of {} valid ({}), {} invalid, {} over budget",
                s.n, s.valid, s.trials, s.fraction, s.invalid, s.budget_exceeded
            );
            let _ = writeln!(w, "  distribution: {}", s.distribution);
            let _ = writeln!(w, "  generator: {}", s.generator);
        }
        if let Some(r) = &self.regress {
            for s in &r.results {
                let _ = writeln!(w, "{:<24} {}  {}", s.name, if s.passed { "PASS" } else { "FAIL" }, s.detail);
            }
            let _ = writeln!(w, "{} passed, {} failed", r.passed, r.failed);
        }
        if let Some(stage) = &self.failed_stage {
            let _ = writeln!(w, "stopped at stage: {stage}");
        }
        out
    }
}
