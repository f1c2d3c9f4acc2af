//! Blow-up of P⁴ along `ℓ = Z(x0, x1, x2)` as a subvariety of P⁴ × P²
//! cut out by `x_i·Y_j = x_j·Y_i`, covered by nine affine charts.
//!
//! Chart `(a, c)` takes the patch `Y_a = 1` of P² and the patch `x_c = 1` of
//! P⁴ with `c ∈ {a, 3, 4}`. On `Y_a ≠ 0` the incidence relations give
//! `x_i = x_a·Y_i`, so `x_a = 0` forces `x0 = x1 = x2 = 0`; then one of the
//! last two coordinates is nonzero. Hence the nine charts cover the blow-up.
//! In chart `(a, c)` with `c ≠ a` the exceptional divisor is `x_a = 0`; the
//! charts `(a, a)` do not meet it.

use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{Homogeneity, Poly, PolyError, RingRef, VarRing};
use crate::geometry::{multiplicity_along_line, GeometryError};
use crate::groebner::{buchberger, saturate_by, GbOptions, GroebnerError, Ideal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlowupError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("ambient ring must have exactly five coordinates (got {0})")]
    AmbientSize(usize),
    #[error("the zero polynomial has no strict transform")]
    ZeroInput,
    #[error("expected a homogeneous polynomial vanishing on the line")]
    NotOnLine,
}

/// One affine chart of the blow-up.
#[derive(Debug, Clone)]
pub struct Chart {
    /// Index of the P² patch `Y_a = 1`.
    pub a: usize,
    /// Index of the ambient coordinate set to one.
    pub c: usize,
    pub ambient: RingRef,
    pub ring: RingRef,
    /// Image in `ring` of each ambient coordinate.
    pub substitution: Vec<Poly>,
    /// Chart variable cutting out the exceptional divisor, when the chart
    /// meets it.
    pub exceptional: Option<usize>,
}

impl Chart {
    pub fn id(&self) -> String {
        format!("Y{}=1,{}=1", self.a, self.ambient.vars()[self.c])
    }

    /// Chart coordinates of the blow-up point over `x` (homogeneous, off the
    /// line) when it lies in this chart.
    pub fn coordinates_of(&self, x: &[crate::exactpoly::Rational]) -> Option<Vec<crate::exactpoly::Rational>> {
        use num_traits::Zero;
        if x[self.a].is_zero() || x[self.c].is_zero() {
            return None;
        }
        let scale = x[self.c].clone();
        let xs: Vec<_> = x.iter().map(|v| v / &scale).collect();
        let coords = self
            .ring
            .vars()
            .iter()
            .map(|name| {
                if let Some(i) = name.strip_prefix('Y').and_then(|s| s.parse::<usize>().ok()) {
                    if self.ambient.index_of(name).is_none() {
                        return &xs[i] / &xs[self.a];
                    }
                }
                xs[self.ambient.index_of(name).expect("ambient coordinate")].clone()
            })
            .collect();
        Some(coords)
    }
}

/// The nine charts, ordered by `(a, c)`.
pub fn chart_atlas(ambient: &RingRef) -> Result<Vec<Chart>, BlowupError> {
    if ambient.nvars() != 5 {
        return Err(BlowupError::AmbientSize(ambient.nvars()));
    }
    let names = ambient.vars();
    let mut charts = Vec::with_capacity(9);
    for a in 0..3 {
        for c in [a, 3, 4] {
            let mut vars: Vec<String> = Vec::new();
            if c != a {
                vars.push(names[a].clone());
            }
            vars.extend((3..5).filter(|&j| j != c).map(|j| names[j].clone()));
            vars.extend((0..3).filter(|&i| i != a).map(|i| format!("Y{i}")));
            let ring = VarRing::from_names(format!("chart(Y{a}=1,{}=1)", names[c]), vars)?;
            let xa = if c == a {
                Poly::one(&ring)
            } else {
                Poly::var(&ring, &names[a])?
            };
            let substitution = (0..5)
                .map(|i| -> Result<Poly, PolyError> {
                    Ok(if i == c {
                        Poly::one(&ring)
                    } else if i == a {
                        xa.clone()
                    } else if i < 3 {
                        &xa * &Poly::var(&ring, &format!("Y{i}"))?
                    } else {
                        Poly::var(&ring, &names[i])?
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let exceptional = (c != a).then_some(0);
            charts.push(Chart {
                a,
                c,
                ambient: ambient.clone(),
                ring,
                substitution,
                exceptional,
            });
        }
    }
    Ok(charts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformResult {
    pub chart: String,
    pub total: Poly,
    pub strict: Poly,
    /// Power of the exceptional coordinate divided out.
    pub multiplicity: u32,
}

pub fn strict_transform(f: &Poly, chart: &Chart) -> Result<TransformResult, BlowupError> {
    if f.is_zero() {
        return Err(BlowupError::ZeroInput);
    }
    crate::exactpoly::check_ring(f.ring(), &chart.ambient)?;
    let total = f.substitute_all(&chart.substitution, &chart.ring);
    let (strict, multiplicity) = match chart.exceptional {
        Some(e) => {
            let m = total.var_power_dividing(e);
            (total.div_var_power(e, m).expect("divisible"), m)
        }
        None => (total.clone(), 0),
    };
    Ok(TransformResult {
        chart: chart.id(),
        total,
        strict,
        multiplicity,
    })
}

/// Strict transform recomputed as `(total) : E^∞`. Agrees with
/// [`strict_transform`] up to a nonzero scalar.
pub fn strict_transform_by_saturation(
    f: &Poly,
    chart: &Chart,
    opts: &GbOptions,
) -> Result<Poly, BlowupError> {
    let tr = strict_transform(f, chart)?;
    let Some(e) = chart.exceptional else {
        return Ok(tr.total);
    };
    let name = chart.ring.vars()[e].clone();
    let sat = saturate_by(&Ideal::new(&chart.ring, vec![tr.total])?, &name, opts)?;
    match sat.gens() {
        [g] => Ok(g.clone()),
        gens => Err(GroebnerError::Poly(PolyError::InvalidRing(format!(
            "saturation of a principal ideal returned {} generators",
            gens.len()
        )))
        .into()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartVerdict {
    Smooth,
    /// Reduced Gröbner basis of the affine singular locus.
    Singular { witness: Vec<Poly> },
}

/// Affine Jacobian criterion on the chart: the strict transform is smooth
/// there iff `(s, ∂s/∂v₁, …, ∂s/∂v₄)` is the unit ideal.
pub fn chart_smoothness(tr: &TransformResult, opts: &GbOptions) -> Result<ChartVerdict, BlowupError> {
    let s = &tr.strict;
    if s.is_zero() {
        return Err(BlowupError::ZeroInput);
    }
    let ring = s.ring().clone();
    let mut gens = vec![s.clone()];
    gens.extend((0..ring.nvars()).map(|i| s.derivative_at(i)));
    let gb = buchberger(&Ideal::new(&ring, gens)?, opts)?;
    Ok(if gb.is_unit() {
        ChartVerdict::Smooth
    } else {
        ChartVerdict::Singular {
            witness: gb.basis().to_vec(),
        }
    })
}

/// Per-chart result of [`verify_blowup_smooth`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChartOutcome {
    Smooth,
    Singular { witness: Vec<Poly> },
    BudgetExceeded { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    pub chart: String,
    pub a: usize,
    pub c: usize,
    pub multiplicity: u32,
    pub strict: Poly,
    /// Saturating the total transform by the exceptional coordinate gives the
    /// same polynomial up to a scalar.
    pub saturation_agrees: bool,
    pub verdict: ChartOutcome,
}

impl ChartReport {
    pub fn is_smooth(&self) -> bool {
        self.verdict == ChartOutcome::Smooth
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub all_smooth: bool,
    pub multiplicity_along_line: u32,
    /// Every chart meeting the exceptional divisor divided out exactly
    /// `multiplicity_along_line` factors.
    pub multiplicities_agree: bool,
    pub charts: Vec<ChartReport>,
}

fn same_up_to_scalar(a: &Poly, b: &Poly) -> bool {
    a.monic() == b.monic()
}

/// Strict transform and chart smoothness over the whole atlas.
pub fn verify_blowup_smooth(f: &Poly, opts: &GbOptions) -> Result<BlowupReport, BlowupError> {
    if !matches!(f.homogeneity(), Homogeneity::Homogeneous(_)) {
        return Err(BlowupError::NotOnLine);
    }
    let m = multiplicity_along_line(f, opts)?;
    if m == 0 {
        return Err(BlowupError::NotOnLine);
    }
    let atlas = chart_atlas(f.ring())?;
    let mut charts = Vec::with_capacity(atlas.len());
    for chart in &atlas {
        let tr = strict_transform(f, chart)?;
        let saturation_agrees = match strict_transform_by_saturation(f, chart, opts) {
            Ok(s) => same_up_to_scalar(&s, &tr.strict),
            Err(_) => false,
        };
        let verdict = match chart_smoothness(&tr, opts) {
            Ok(ChartVerdict::Smooth) => ChartOutcome::Smooth,
            Ok(ChartVerdict::Singular { witness }) => ChartOutcome::Singular { witness },
            Err(BlowupError::Groebner(GroebnerError::Budget { limit })) => ChartOutcome::BudgetExceeded { limit },
            Err(e) => return Err(e),
        };
        charts.push(ChartReport {
            chart: tr.chart,
            a: chart.a,
            c: chart.c,
            multiplicity: tr.multiplicity,
            strict: tr.strict,
            saturation_agrees,
            verdict,
        });
    }
    let multiplicities_agree = atlas
        .iter()
        .zip(&charts)
        .filter(|(c, _)| c.exceptional.is_some())
        .all(|(_, r)| r.multiplicity == m);
    Ok(BlowupReport {
        all_smooth: charts.iter().all(ChartReport::is_smooth),
        multiplicity_along_line: m,
        multiplicities_agree,
        charts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Rational};

    fn opts() -> GbOptions {
        GbOptions::default()
    }

    fn cone_ring() -> RingRef {
        VarRing::new("P4x", &["X0", "X1", "X2", "X3", "X4"]).unwrap()
    }

    fn chart<'a>(atlas: &'a [Chart], a: usize, c: usize) -> &'a Chart {
        atlas.iter().find(|ch| ch.a == a && ch.c == c).unwrap()
    }

    #[test]
    fn atlas_shape() {
        let atlas = chart_atlas(&cone_ring()).unwrap();
        assert_eq!(atlas.len(), 9);
        assert_eq!(chart(&atlas, 0, 4).ring.vars(), ["X0", "X3", "Y1", "Y2"]);
        let p4_atlas = chart_atlas(&VarRing::p4()).unwrap();
        assert_eq!(chart(&p4_atlas, 0, 3).ring.vars(), ["X0", "W", "Y1", "Y2"]);
        assert_eq!(chart(&p4_atlas, 1, 1).ring.vars(), ["U", "W", "Y0", "Y2"]);
        let order: Vec<(usize, usize)> = p4_atlas.iter().map(|c| (c.a, c.c)).collect();
        assert_eq!(order, [(0, 0), (0, 3), (0, 4), (1, 1), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4)]);
        assert!(chart_atlas(&VarRing::plane()).is_err());
    }

    #[test]
    fn incidence_relations_hold() {
        for ch in chart_atlas(&VarRing::p4()).unwrap() {
            let y = |i: usize| {
                if i == ch.a {
                    Poly::one(&ch.ring)
                } else {
                    Poly::var(&ch.ring, &format!("Y{i}")).unwrap()
                }
            };
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let rel = &(&ch.substitution[i] * &y(j)) - &(&ch.substitution[j] * &y(i));
                assert!(rel.is_zero(), "{} relation {i}{j}", ch.id());
            }
        }
    }

    #[test]
    fn cone_strict_transform() {
        let ring = cone_ring();
        let atlas = chart_atlas(&ring).unwrap();
        let f = parse_poly("X0*X1 - X2*X3", &ring).unwrap();
        let tr = strict_transform(&f, chart(&atlas, 0, 4)).unwrap();
        assert_eq!(tr.total.to_string(), "X0^2*Y1 - X0*X3*Y2");
        assert_eq!(tr.strict.to_string(), "X0*Y1 - X3*Y2");
        assert_eq!(tr.multiplicity, 1);
        match chart_smoothness(&tr, &opts()).unwrap() {
            ChartVerdict::Singular { witness } => {
                let origin = vec![Rational::from_integer(0.into()); 4];
                assert!(witness.iter().all(|w| w.eval(&origin) == Rational::from_integer(0.into())));
            }
            ChartVerdict::Smooth => panic!("cone chart must be singular"),
        }
    }

    #[test]
    fn quadric_and_cubic_transforms() {
        let p4 = VarRing::p4();
        let atlas = chart_atlas(&p4).unwrap();
        let ch = chart(&atlas, 0, 3);
        let tr = strict_transform(&parse_poly("X0^2 + U*X1 + W*X2", &p4).unwrap(), ch).unwrap();
        assert_eq!(tr.strict, parse_poly("X0 + Y1 + W*Y2", &ch.ring).unwrap());
        assert_eq!(tr.multiplicity, 1);
        assert_eq!(chart_smoothness(&tr, &opts()).unwrap(), ChartVerdict::Smooth);

        let tr = strict_transform(&parse_poly("X0^3 + U*X1^2 + W*X2^2", &p4).unwrap(), ch).unwrap();
        assert_eq!(tr.strict, parse_poly("X0 + Y1^2 + W*Y2^2", &ch.ring).unwrap());
        assert_eq!(tr.multiplicity, 2);
        assert_eq!(chart_smoothness(&tr, &opts()).unwrap(), ChartVerdict::Smooth);
    }

    #[test]
    fn zero_input_rejected() {
        let p4 = VarRing::p4();
        let atlas = chart_atlas(&p4).unwrap();
        assert_eq!(strict_transform(&Poly::zero(&p4), &atlas[0]).unwrap_err(), BlowupError::ZeroInput);
    }

    #[test]
    fn sweeps() {
        let p4 = VarRing::p4();
        let q = verify_blowup_smooth(&parse_poly("X0^2 + U*X1 + W*X2", &p4).unwrap(), &opts()).unwrap();
        assert!(q.all_smooth && q.multiplicities_agree);
        assert!(q.charts.iter().all(|c| c.saturation_agrees));
        let c = verify_blowup_smooth(&parse_poly("X0^3 + U*X1^2 + W*X2^2", &p4).unwrap(), &opts()).unwrap();
        assert!(c.all_smooth && c.multiplicities_agree);
        assert_eq!(c.multiplicity_along_line, 2);

        let ring = cone_ring();
        let cone = verify_blowup_smooth(&parse_poly("X0*X1 - X2*X3", &ring).unwrap(), &opts()).unwrap();
        assert!(!cone.all_smooth);
        assert!(cone.charts.iter().all(|c| c.saturation_agrees));
    }

    #[test]
    fn off_line_input_rejected() {
        let p4 = VarRing::p4();
        let f = parse_poly("U^2 + X0*W", &p4).unwrap();
        assert_eq!(verify_blowup_smooth(&f, &opts()).unwrap_err(), BlowupError::NotOnLine);
    }
}
