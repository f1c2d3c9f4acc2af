use pblab_core::blowup::verify_blowup_smooth;
use pblab_core::geometry::{build_hypersurface, smoothness_report, validate_triple, SectionTriple};
use pblab_core::GbOptions;

fn power_triple(n: u32) -> SectionTriple {
    SectionTriple::from_text(n, &format!("X0^{n}"), &format!("X1^{}", n - 1), &format!("X2^{}", n - 1)).unwrap()
}

#[test]
fn smooth_quadric() {
    let opts = GbOptions::default();
    let t = power_triple(2);
    assert!(validate_triple(&t, &opts).unwrap().is_valid());
    let f = build_hypersurface(&t, &opts).unwrap();
    assert_eq!(f.to_string(), "X0^2 + X1*U + X2*W");
    let s = smoothness_report(&f, &opts).unwrap();
    assert!(s.is_smooth && s.contains_line);
    assert_eq!(s.multiplicity_along_line, 1);
    let b = verify_blowup_smooth(&f, &opts).unwrap();
    assert!(b.all_smooth && b.multiplicities_agree);
    assert_eq!(b.charts.len(), 9);
}

#[test]
fn singular_along_line_for_higher_degree() {
    let opts = GbOptions::default();
    for n in 3..=5 {
        let t = power_triple(n);
        let report = validate_triple(&t, &opts).unwrap();
        assert!(report.is_valid());
        let gh = report.gh_metrics.unwrap();
        assert_eq!((gh.dimension, gh.length), (0, Some(((n - 1) * (n - 1)) as i64)));
        let f = build_hypersurface(&t, &opts).unwrap();
        let s = smoothness_report(&f, &opts).unwrap();
        assert!(!s.is_smooth && s.singular_contains_line && s.singular_equals_line, "n = {n}");
        assert_eq!(s.multiplicity_along_line, n - 1);
        let b = verify_blowup_smooth(&f, &opts).unwrap();
        assert!(b.all_smooth && b.multiplicities_agree, "n = {n}");
        assert_eq!(b.multiplicity_along_line, n - 1);
    }
}

#[test]
fn generic_quartic_triple() {
    let opts = GbOptions::default();
    let t = SectionTriple::from_text(
        4,
        "3*X0^4 - 2*X0^2*X1*X2 + X1^4 - 3*X1*X2^3 + 2*X2^4 + X0*X1^3",
        "X0^3 - 2*X1^2*X2 + 3*X2^3 + X0*X1*X2 - X1^3",
        "-X0^2*X1 + 2*X0*X2^2 + 3*X1^3 - X2^3 + X0^3",
    )
    .unwrap();
    let report = validate_triple(&t, &opts).unwrap();
    assert!(report.is_valid());
    let f = build_hypersurface(&t, &opts).unwrap();
    let s = smoothness_report(&f, &opts).unwrap();
    assert!(s.singular_contains_line);
    assert_eq!(s.multiplicity_along_line, 3);
    let b = verify_blowup_smooth(&f, &opts).unwrap();
    assert!(b.all_smooth);
}
