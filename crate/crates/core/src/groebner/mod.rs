//! Homogeneous ideal engine: reduced Gröbner bases under graded reverse
//! lexicographic order, normal forms, saturation, Hilbert series of the
//! quotient and projective zero-locus metrics.

mod buchberger;
mod hilbert;
mod metrics;
mod saturate;

pub use buchberger::buchberger;
pub use hilbert::HilbertSeries;
pub use metrics::{hilbert_function, hilbert_series, scheme_metrics, scheme_metrics_with, SchemeMetrics};
pub use saturate::saturate_by;

use serde::Serialize;
use thiserror::Error;

use crate::exactpoly::{parse_poly, Homogeneity, Poly, PolyError, RingRef, VarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("S-pair budget of {limit} reductions exceeded")]
    Budget { limit: usize },
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Knobs for Gröbner computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbOptions {
    /// Maximum number of S-pair reductions before giving up with
    /// [`GroebnerError::Budget`].
    pub spair_budget: usize,
}

impl GbOptions {
    pub const DEFAULT_BUDGET: usize = 50_000;

    pub fn with_budget(spair_budget: usize) -> Self {
        GbOptions { spair_budget }
    }
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            spair_budget: Self::DEFAULT_BUDGET,
        }
    }
}

/// Finitely generated ideal. Zero generators are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ideal {
    #[serde(skip)]
    ring: RingRef,
    gens: Vec<Poly>,
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Ideal, GroebnerError> {
        for g in &gens {
            crate::exactpoly::check_ring(g.ring(), ring)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn from_text(ring: &RingRef, gens: &[&str]) -> Result<Ideal, GroebnerError> {
        let polys = gens
            .iter()
            .map(|t| parse_poly(t, ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, polys)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens
            .iter()
            .all(|g| matches!(g.homogeneity(), Homogeneity::Homogeneous(_)))
    }

    /// Ideal generated by the current generators and `extra`.
    pub fn extended(&self, extra: impl IntoIterator<Item = Poly>) -> Result<Ideal, GroebnerError> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Sets `var = 1`, landing in the ring of the remaining variables.
    pub fn dehomogenize(&self, var: &str) -> Result<Ideal, GroebnerError> {
        let idx = self.ring.require_index(var)?;
        let rest: Vec<String> = self
            .ring
            .vars()
            .iter()
            .filter(|v| *v != var)
            .cloned()
            .collect();
        let target = VarRing::from_names(format!("{}|{}=1", self.ring.name(), var), rest)?;
        let images: Vec<Poly> = (0..self.ring.nvars())
            .map(|i| {
                if i == idx {
                    Poly::one(&target)
                } else {
                    let name = &self.ring.vars()[i];
                    Poly::var(&target, name).expect("remaining variable")
                }
            })
            .collect();
        let gens = self.gens.iter().map(|g| g.substitute_all(&images, &target)).collect();
        Ideal::new(&target, gens)
    }
}

/// Reduced Gröbner basis: minimal, auto-reduced, monic, sorted by
/// ascending degree of the leading monomial and then descending order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ideal: Ideal,
    basis: Vec<Poly>,
    spairs_reduced: usize,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &RingRef {
        self.ideal.ring()
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    /// Number of S-pairs reduced while computing the basis.
    pub fn spairs_reduced(&self) -> usize {
        self.spairs_reduced
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<crate::exactpoly::Monomial> {
        self.basis.iter().filter_map(|g| g.leading_monomial()).collect()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, GroebnerError> {
        crate::exactpoly::check_ring(p.ring(), self.ring())?;
        let reducers: Vec<&Poly> = self.basis.iter().collect();
        Ok(buchberger::reduce(p, &reducers))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

/// `p ∈ ideal`, via the normal form against a fresh Gröbner basis.
pub fn ideal_member(p: &Poly, ideal: &Ideal, opts: &GbOptions) -> Result<bool, GroebnerError> {
    crate::exactpoly::check_ring(p.ring(), ideal.ring())?;
    buchberger(ideal, opts)?.contains(p)
}
