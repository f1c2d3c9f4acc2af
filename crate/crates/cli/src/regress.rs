//! Golden scenarios. Each returns `Ok(detail)` or `Err(reason)`.

use pblab_core::blowup::{chart_atlas, chart_smoothness, strict_transform, verify_blowup_smooth, ChartVerdict};
use pblab_core::chow::{
    chern_from_sequence, cubic_equiv_search, cubic_form, h0_bundle, stability_verdict, xi_top, BundleSeq,
    ChernPair, ChowContext, CubicForm, Stability,
};
use pblab_core::exactpoly::{parse_poly, Rational};
use pblab_core::geometry::{build_hypersurface, smoothness_report, validate_triple};
use pblab_core::groebner::scheme_metrics;
use pblab_core::{GbOptions, Ideal, VarRing};
use serde::Serialize;

use crate::input::standard_triple;

/// Replaceable pieces, so a harness can check that a broken formula is caught.
#[derive(Clone, Copy)]
pub struct RegressHooks {
    pub chern: fn(&BundleSeq) -> ChernPair,
}

impl Default for RegressHooks {
    fn default() -> Self {
        RegressHooks {
            chern: chern_from_sequence,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quadric_chern(hooks: &RegressHooks, _: &GbOptions) -> Outcome {
    let c = (hooks.chern)(&BundleSeq::for_degree(2));
    check(c == ChernPair { c1: 2, c2: 2 }, || format!("expected (2, 2), got ({}, {})", c.c1, c.c2))?;
    Ok("c1 = 2, c2 = 2".into())
}

fn degree_identity(hooks: &RegressHooks, _: &GbOptions) -> Outcome {
    for n in 2..=6 {
        let c = (hooks.chern)(&BundleSeq::for_degree(n));
        let top = xi_top(&ChowContext::rank2_over_plane(c)).map_err(|e| e.to_string())?;
        check(top == n, || format!("xi^3 = {top} for n = {n}, expected {n}"))?;
    }
    Ok("xi^3 = n for n = 2..6 (xi^3 = 2 for the quadric)".into())
}

fn section_counts(_: &RegressHooks, _: &GbOptions) -> Outcome {
    for n in 2..=6 {
        let h = h0_bundle(&BundleSeq::for_degree(n));
        check(h == 5, || format!("h0(V_{n}) = {h}, expected 5"))?;
        let h = h0_bundle(&BundleSeq::for_degree(n).twisted(-1));
        check(h == 1, || format!("h0(V_{n}(-1)) = {h}, expected 1"))?;
    }
    Ok("h0(V_n) = 5, h0(V_n(-1)) = 1 for n = 2..6".into())
}

fn stability(_: &RegressHooks, _: &GbOptions) -> Outcome {
    let v = stability_verdict(&BundleSeq::for_degree(2)).verdict;
    check(v == Stability::SemistableNotStable, || format!("n = 2: {v:?}"))?;
    for n in 3..=5 {
        let v = stability_verdict(&BundleSeq::for_degree(n)).verdict;
        check(v == Stability::Stable, || format!("n = {n}: {v:?}"))?;
    }
    Ok("n = 2 semistable not stable; n = 3, 4, 5 stable".into())
}

fn zero_scheme_length(_: &RegressHooks, opts: &GbOptions) -> Outcome {
    let ring = VarRing::plane();
    for n in 2..=5i64 {
        let e = n - 1;
        let ideal = Ideal::from_text(&ring, &[&format!("X1^{e}"), &format!("X2^{e}")]).map_err(|e| e.to_string())?;
        let m = scheme_metrics(&ideal, opts).map_err(|e| e.to_string())?;
        check(m.dimension == 0 && m.length == Some(e * e), || format!("n = {n}: {m:?}"))?;
    }
    Ok("length (n-1)^2 for n = 2..5".into())
}

fn quadric_pipeline(_: &RegressHooks, opts: &GbOptions) -> Outcome {
    let t = standard_triple(2);
    let r = validate_triple(&t, opts).map_err(|e| e.to_string())?;
    check(r.is_valid(), || "triple rejected".into())?;
    let f = build_hypersurface(&t, opts).map_err(|e| e.to_string())?;
    check(f.to_string() == "X0^2 + X1*U + X2*W", || format!("F = {f}"))?;
    let s = smoothness_report(&f, opts).map_err(|e| e.to_string())?;
    check(s.is_smooth, || "quadric reported singular".into())?;
    let b = verify_blowup_smooth(&f, opts).map_err(|e| e.to_string())?;
    check(b.all_smooth && b.charts.len() == 9, || "blow-up not smooth on all charts".into())?;
    Ok("F = X0^2 + X1*U + X2*W smooth; strict transform smooth on 9 charts".into())
}

fn degree_n_pipeline(_: &RegressHooks, opts: &GbOptions) -> Outcome {
    for n in 3..=4 {
        let t = standard_triple(n);
        let r = validate_triple(&t, opts).map_err(|e| e.to_string())?;
        check(r.is_valid(), || format!("n = {n}: triple rejected"))?;
        let f = build_hypersurface(&t, opts).map_err(|e| e.to_string())?;
        let s = smoothness_report(&f, opts).map_err(|e| e.to_string())?;
        check(s.singular_contains_line, || format!("n = {n}: singular locus misses the line"))?;
        check(s.multiplicity_along_line == n - 1, || format!("n = {n}: m = {}", s.multiplicity_along_line))?;
        let b = verify_blowup_smooth(&f, opts).map_err(|e| e.to_string())?;
        check(b.all_smooth, || format!("n = {n}: blow-up not smooth"))?;
    }
    Ok("n = 3, 4: singular along the line, m = n-1, strict transform smooth".into())
}

fn cone_strict_transform(_: &RegressHooks, opts: &GbOptions) -> Outcome {
    let ring = VarRing::new("P4x", &["X0", "X1", "X2", "X3", "X4"]).map_err(|e| e.to_string())?;
    let f = parse_poly("X0*X1 - X2*X3", &ring).map_err(|e| e.to_string())?;
    let atlas = chart_atlas(&ring).map_err(|e| e.to_string())?;
    let chart = atlas.iter().find(|c| c.a == 0 && c.c == 4).ok_or("missing chart")?;
    let tr = strict_transform(&f, chart).map_err(|e| e.to_string())?;
    let expected = parse_poly("X0*Y1 - X3*Y2", &chart.ring).map_err(|e| e.to_string())?;
    check(tr.strict == expected && tr.multiplicity == 1, || format!("strict = {}, m = {}", tr.strict, tr.multiplicity))?;
    match chart_smoothness(&tr, opts).map_err(|e| e.to_string())? {
        ChartVerdict::Singular { witness } => {
            let origin = vec![Rational::from_integer(0.into()); 4];
            check(witness.iter().all(|w| w.eval(&origin) == Rational::from_integer(0.into())), || {
                "origin not in singular locus".into()
            })?;
        }
        ChartVerdict::Smooth => return Err("cone chart reported smooth".into()),
    }
    Ok(format!("strict = {}, m = 1, singular at the origin", tr.strict))
}

fn cubic_forms(hooks: &RegressHooks, _: &GbOptions) -> Outcome {
    let c = (hooks.chern)(&BundleSeq::for_degree(2));
    let pe = cubic_form(&ChowContext::rank2_over_plane(c)).map_err(|e| e.to_string())?;
    let scroll = cubic_form(&ChowContext::split_over_line(&[2, 0, 0])).map_err(|e| e.to_string())?;
    check(pe == CubicForm([0, 3, 6, 2]), || format!("bundle form {pe}"))?;
    check(scroll == CubicForm([0, 0, 3, 2]), || format!("scroll form {scroll}"))?;
    check(cubic_equiv_search(&pe, &scroll, 5).is_none(), || "forms equivalent within bound 5".into())?;
    Ok(format!("{pe} vs {scroll}: no equivalence within bound 5"))
}

type Scenario = (&'static str, fn(&RegressHooks, &GbOptions) -> Outcome);

pub const SCENARIOS: &[Scenario] = &[
    ("quadric_chern", quadric_chern),
    ("degree_identity", degree_identity),
    ("section_counts", section_counts),
    ("stability", stability),
    ("zero_scheme_length", zero_scheme_length),
    ("cone_strict_transform", cone_strict_transform),
    ("quadric_pipeline", quadric_pipeline),
    ("degree_n_pipeline", degree_n_pipeline),
    ("cubic_forms", cubic_forms),
];

pub fn run_scenarios(hooks: &RegressHooks, opts: &GbOptions) -> Vec<ScenarioResult> {
    SCENARIOS
        .iter()
        .map(|(name, run)| {
            let (passed, detail) = match run(hooks, opts) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            ScenarioResult { name, passed, detail }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tampered(seq: &BundleSeq) -> ChernPair {
        let c = chern_from_sequence(seq);
        ChernPair { c1: c.c1, c2: c.c2 + 1 }
    }

    #[test]
    fn all_pass() {
        let results = run_scenarios(&RegressHooks::default(), &GbOptions::default());
        assert!(results.iter().all(|r| r.passed), "{results:?}");
    }

    #[test]
    fn tampered_chern_is_caught() {
        let results = run_scenarios(&RegressHooks { chern: tampered }, &GbOptions::default());
        let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
        assert!(failed.contains(&"degree_identity"));
        assert!(failed.contains(&"quadric_chern"));
    }
}
