//! Section triples `(f, g, h)` on the plane, the hypersurface
//! `F = f + U·g + W·h` of P⁴ they define, and its singularities relative to
//! the line `ℓ = Z(X0, X1, X2)`.
//!
//! The line is always cut out by the first three coordinates of a
//! five-variable ring; for [`VarRing::p4`] these are `X0, X1, X2`.

use serde::Serialize;
use thiserror::Error;

use crate::chow::{chern_from_sequence, h0_bundle, stability_verdict, BundleSeq, ChernPair, StabilityVerdict};
use crate::exactpoly::{parse_poly, Homogeneity, Monomial, Poly, PolyError, Rational, RingRef, VarRing};
use crate::groebner::{
    buchberger, hilbert_series, saturate_by, scheme_metrics, scheme_metrics_with, GbOptions, GroebnerError, Ideal, SchemeMetrics,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("section triple must live in the plane ring X0,X1,X2 (got {0})")]
    WrongRing(String),
    #[error("degree n must be at least 2 (got {0})")]
    DegreeTooSmall(u32),
    #[error("invalid section triple: {0}")]
    InvalidTriple(String),
    #[error("expected a nonzero homogeneous polynomial")]
    NotHomogeneous,
    #[error("expected a polynomial in five variables (got {0})")]
    NotP4(String),
}

/// The datum `1 ↦ (f, g, h)` with `deg f = n` and `deg g = deg h = n − 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionTriple {
    pub n: u32,
    pub f: Poly,
    pub g: Poly,
    pub h: Poly,
}

fn is_plane(ring: &RingRef) -> bool {
    ring.vars() == ["X0", "X1", "X2"]
}

impl SectionTriple {
    pub fn new(n: u32, f: Poly, g: Poly, h: Poly) -> Result<SectionTriple, GeometryError> {
        if n < 2 {
            return Err(GeometryError::DegreeTooSmall(n));
        }
        for p in [&f, &g, &h] {
            if !is_plane(p.ring()) {
                return Err(GeometryError::WrongRing(p.ring().to_string()));
            }
        }
        Ok(SectionTriple { n, f, g, h })
    }

    pub fn from_text(n: u32, f: &str, g: &str, h: &str) -> Result<SectionTriple, GeometryError> {
        let ring = VarRing::plane();
        SectionTriple::new(n, parse_poly(f, &ring)?, parse_poly(g, &ring)?, parse_poly(h, &ring)?)
    }

    /// Declared degrees hold. The zero polynomial is accepted in any degree.
    pub fn degrees_ok(&self) -> bool {
        let fits = |p: &Poly, d: u32| match p.homogeneity() {
            Homogeneity::Zero => true,
            Homogeneity::Homogeneous(e) => e == d,
            Homogeneity::NotHomogeneous => false,
        };
        fits(&self.f, self.n) && fits(&self.g, self.n - 1) && fits(&self.h, self.n - 1)
    }

    /// Presentation `0 → O(1−n) → O(1) ⊕ O ⊕ O → V_n → 0` of the bundle.
    pub fn bundle(&self) -> BundleSeq {
        BundleSeq::for_degree(self.n as i64)
    }

    /// `F = f + U·g + W·h` in [`VarRing::p4`], without validity checks.
    pub fn hypersurface(&self) -> Poly {
        let p4 = VarRing::p4();
        let lift = |p: &Poly| p.embed_into(&p4).expect("plane variables exist in P4");
        let u = Poly::var(&p4, "U").expect("U");
        let w = Poly::var(&p4, "W").expect("W");
        &(&lift(&self.f) + &(&u * &lift(&self.g))) + &(&w * &lift(&self.h))
    }
}

/// Section counts of `V_n` and `V_n(−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SectionCounts {
    pub h0_v: i64,
    pub h0_v_minus1: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub n: u32,
    pub degrees_ok: bool,
    /// `Z(f, g, h) = ∅`.
    pub base_locus_empty: bool,
    /// Metrics of `Z(f, g, h)`; absent when the degrees are wrong.
    pub base_locus: Option<SchemeMetrics>,
    /// A small integer point of `Z(f, g, h)` when one was found.
    pub witness_point: Option<[i64; 3]>,
    /// Metrics of `Z(g, h)`, the zero scheme of the section of `V_n(−1)`.
    pub gh_metrics: Option<SchemeMetrics>,
    pub chern: ChernPair,
    pub h0: SectionCounts,
    pub stability: StabilityVerdict,
}

impl TripleReport {
    pub fn is_valid(&self) -> bool {
        self.degrees_ok && self.base_locus_empty
    }
}

/// Primitive integer points of P² with coordinates in `[−bound, bound]`,
/// normalized so the first nonzero coordinate is positive.
fn small_points(bound: i64) -> impl Iterator<Item = [i64; 3]> {
    let r = move || -bound..=bound;
    r().flat_map(move |a| r().flat_map(move |b| r().map(move |c| [a, b, c])))
        .filter(|p| {
            let first = p.iter().find(|x| **x != 0);
            matches!(first, Some(x) if *x > 0)
                && num_integer::gcd(num_integer::gcd(p[0], p[1]), p[2]) == 1
        })
}

fn find_common_zero(polys: &[&Poly]) -> Option<[i64; 3]> {
    let mut pts: Vec<[i64; 3]> = small_points(3).collect();
    pts.sort_by_key(|p| (p.iter().map(|x| x.abs()).max(), p.iter().map(|x| x.abs()).sum::<i64>(), std::cmp::Reverse(*p)));
    pts.into_iter().find(|p| {
        let q: Vec<Rational> = p.iter().map(|&x| Rational::from_integer(x.into())).collect();
        polys.iter().all(|f| f.eval(&q) == Rational::from_integer(0.into()))
    })
}

/// Degree check, emptiness of `Z(f, g, h)`, the zero scheme `Z(g, h)` and the
/// bundle invariants of the attached presentation.
pub fn validate_triple(t: &SectionTriple, opts: &GbOptions) -> Result<TripleReport, GeometryError> {
    let ring = t.f.ring().clone();
    let degrees_ok = t.degrees_ok();
    let (base_locus, gh_metrics) = if degrees_ok {
        let base = Ideal::new(&ring, vec![t.f.clone(), t.g.clone(), t.h.clone()])?;
        let gh = Ideal::new(&ring, vec![t.g.clone(), t.h.clone()])?;
        (Some(scheme_metrics(&base, opts)?), Some(scheme_metrics(&gh, opts)?))
    } else {
        (None, None)
    };
    let base_locus_empty = base_locus.as_ref().is_some_and(|m| m.empty);
    let witness_point = if degrees_ok && !base_locus_empty {
        find_common_zero(&[&t.f, &t.g, &t.h])
    } else {
        None
    };
    let seq = t.bundle();
    Ok(TripleReport {
        n: t.n,
        degrees_ok,
        base_locus_empty,
        base_locus,
        witness_point,
        gh_metrics,
        chern: chern_from_sequence(&seq),
        h0: SectionCounts {
            h0_v: h0_bundle(&seq),
            h0_v_minus1: h0_bundle(&seq.twisted(-1)),
        },
        stability: stability_verdict(&seq),
    })
}

/// `F = f + U·g + W·h` for a valid triple.
pub fn build_hypersurface(t: &SectionTriple, opts: &GbOptions) -> Result<Poly, GeometryError> {
    let report = validate_triple(t, opts)?;
    if !report.degrees_ok {
        return Err(GeometryError::InvalidTriple("degree mismatch".into()));
    }
    if !report.base_locus_empty {
        return Err(GeometryError::InvalidTriple("f, g, h have a common zero".into()));
    }
    Ok(t.hypersurface())
}

fn require_p4_form(f: &Poly) -> Result<u32, GeometryError> {
    if f.ring().nvars() != 5 {
        return Err(GeometryError::NotP4(f.ring().to_string()));
    }
    match f.homogeneity() {
        Homogeneity::Homogeneous(d) => Ok(d),
        _ => Err(GeometryError::NotHomogeneous),
    }
}

/// Ideal `(x0, x1, x2)^m` of the ring's first three coordinates.
fn line_power_ideal(ring: &RingRef, m: u32) -> Ideal {
    let mut gens = Vec::new();
    for a in 0..=m {
        for b in 0..=m - a {
            let mono = Monomial::from_exponents(&[a, b, m - a - b]);
            gens.push(Poly::monomial(ring, mono, Rational::from_integer(1.into())));
        }
    }
    Ideal::new(ring, gens).expect("same ring")
}

/// Largest `m` with `F ∈ (x0, x1, x2)^m`.
pub fn multiplicity_along_line(f: &Poly, opts: &GbOptions) -> Result<u32, GeometryError> {
    let degree = require_p4_form(f)?;
    let mut m = 0;
    while m < degree {
        let gb = buchberger(&line_power_ideal(f.ring(), m + 1), opts)?;
        if !gb.contains(f)? {
            break;
        }
        m += 1;
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub is_smooth: bool,
    /// `(F, ∂F/∂x0, …, ∂F/∂x4)`.
    pub singular_ideal: Ideal,
    pub singular_metrics: SchemeMetrics,
    pub contains_line: bool,
    pub singular_contains_line: bool,
    /// The singular locus equals `ℓ` as a set.
    pub singular_equals_line: bool,
    /// The Hilbert polynomials of the singular scheme and of `ℓ` agree,
    /// i.e. the singular scheme is `ℓ` with its reduced structure.
    pub hilbert_matches_line: bool,
    /// First degree where the Hilbert functions of the singular scheme and of
    /// `ℓ` differ.
    pub hilbert_first_difference: Option<u32>,
    pub multiplicity_along_line: u32,
}

/// Jacobian analysis of a hypersurface of P⁴.
pub fn smoothness_report(f: &Poly, opts: &GbOptions) -> Result<SmoothnessReport, GeometryError> {
    require_p4_form(f)?;
    let ring = f.ring().clone();
    let mut gens = vec![f.clone()];
    gens.extend((0..5).map(|i| f.derivative_at(i)));
    let singular_ideal = Ideal::new(&ring, gens.clone())?;
    let sing_hs = hilbert_series(&singular_ideal, opts)?;
    let singular_metrics = scheme_metrics_with(&singular_ideal, &sing_hs, opts)?;

    let line = line_power_ideal(&ring, 1);
    let line_gb = buchberger(&line, opts)?;
    let contains_line = line_gb.contains(f)?;
    let mut singular_contains_line = true;
    for g in &gens {
        singular_contains_line &= line_gb.contains(g)?;
    }

    // Z(J) ⊆ ℓ iff every saturation J : x_i^∞ (i < 3) cuts out the empty set
    let mut singular_equals_line = singular_contains_line;
    if singular_equals_line {
        for v in &ring.vars()[..3] {
            let sat = saturate_by(&singular_ideal, v, opts)?;
            if hilbert_series(&sat, opts)?.krull_dimension() > 0 {
                singular_equals_line = false;
                break;
            }
        }
    }

    let line_hs = hilbert_series(&line, opts)?;
    let horizon = sing_hs.polynomial_from().max(line_hs.polynomial_from()) + 5;
    let hilbert_first_difference = (0..=horizon).find(|&d| sing_hs.value(d) != line_hs.value(d));
    let hilbert_matches_line = (horizon - 5..=horizon).all(|d| sing_hs.value(d) == line_hs.value(d));

    Ok(SmoothnessReport {
        is_smooth: singular_metrics.empty,
        singular_ideal,
        singular_metrics,
        contains_line,
        singular_contains_line,
        singular_equals_line,
        hilbert_matches_line,
        hilbert_first_difference,
        multiplicity_along_line: multiplicity_along_line(f, opts)?,
    })
}
