//! Seeded random section triples.
//!
//! Trial `i` of a run with parameters `(seed, n, bound)` draws from a
//! ChaCha8 stream whose 32-byte key is `seed` (u64 LE) ‖ `n` (u32 LE) ‖
//! `bound` (u32 LE) ‖ 16 zero bytes and whose stream id is `i`. Coefficients
//! are drawn uniformly from `[−bound, bound]` for each monomial of `f`
//! (degree `n`), then `g` and `h` (degree `n − 1`), monomials in descending
//! lexicographic order of exponent vectors. Trials never share a stream, so
//! adding trials leaves earlier ones unchanged.

use num_integer::Integer;
use pblab_core::exactpoly::{Monomial, Rational};
use pblab_core::geometry::{validate_triple, GeometryError, SectionTriple};
use pblab_core::{GbOptions, GroebnerError, Poly, VarRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DISTRIBUTION: &str = "uniform integers on [-bound, bound] per monomial coefficient, zero allowed";
pub const GENERATOR: &str =
    "ChaCha8 (rand_chacha 0.3); key = seed u64 LE, n u32 LE, bound u32 LE, 16 zero bytes; stream = trial index";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    Random,
    /// `g` and `h` forced to zero; every trial has a base curve.
    ZeroGh,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub reason: String,
    pub point: Option<[i64; 3]>,
    pub base_locus_dimension: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub offset: u64,
    pub valid: bool,
    pub budget_exceeded: bool,
    pub witness: Option<FailureWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleStats {
    pub n: u32,
    pub trials: u32,
    pub valid: u32,
    pub invalid: u32,
    pub budget_exceeded: u32,
    /// `valid / trials` in lowest terms, `"p/q"`.
    pub fraction: String,
    pub distribution: &'static str,
    pub generator: &'static str,
    pub per_trial: Vec<TrialRecord>,
}

fn plane_monomials(degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push(Monomial::from_exponents(&[a, b, degree - a - b]));
        }
    }
    out
}

pub fn trial_rng(seed: u64, n: u32, bound: u32, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..12].copy_from_slice(&n.to_le_bytes());
    key[12..16].copy_from_slice(&bound.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

/// The random triple of trial `trial`.
pub fn sample_triple(seed: u64, n: u32, bound: u32, trial: u64, mode: SampleMode) -> SectionTriple {
    let ring = VarRing::plane();
    let mut rng = trial_rng(seed, n, bound, trial);
    let b = i64::from(bound);
    let mut draw = |degree: u32| {
        let terms: Vec<(Monomial, Rational)> = plane_monomials(degree)
            .into_iter()
            .map(|m| (m, Rational::from_integer(rng.gen_range(-b..=b).into())))
            .collect();
        Poly::from_terms(&ring, terms)
    };
    let f = draw(n);
    let (g, h) = match mode {
        SampleMode::Random => (draw(n - 1), draw(n - 1)),
        SampleMode::ZeroGh => (Poly::zero(&ring), Poly::zero(&ring)),
    };
    SectionTriple::new(n, f, g, h).expect("plane ring, n ≥ 2")
}

fn run_trial(seed: u64, n: u32, bound: u32, trial: u64, mode: SampleMode, opts: &GbOptions) -> Result<TrialRecord, GeometryError> {
    let triple = sample_triple(seed, n, bound, trial, mode);
    match validate_triple(&triple, opts) {
        Ok(r) => {
            let valid = r.is_valid();
            let witness = (!valid).then(|| FailureWitness {
                reason: if r.degrees_ok { "common zero of f, g, h" } else { "degree mismatch" }.into(),
                point: r.witness_point,
                base_locus_dimension: r.base_locus.as_ref().map(|m| m.dimension),
            });
            Ok(TrialRecord {
                offset: trial,
                valid,
                budget_exceeded: false,
                witness,
            })
        }
        Err(GeometryError::Groebner(GroebnerError::Budget { .. })) => Ok(TrialRecord {
            offset: trial,
            valid: false,
            budget_exceeded: true,
            witness: None,
        }),
        Err(e) => Err(e),
    }
}

/// Runs `trials` seeded trials in parallel; records are kept in trial order.
pub fn sample(seed: u64, n: u32, bound: u32, trials: u32, mode: SampleMode, opts: &GbOptions) -> Result<SampleStats, GeometryError> {
    let per_trial = (0..u64::from(trials))
        .into_par_iter()
        .map(|i| run_trial(seed, n, bound, i, mode, opts))
        .collect::<Result<Vec<_>, _>>()?;
    let valid = per_trial.iter().filter(|t| t.valid).count() as u32;
    let budget_exceeded = per_trial.iter().filter(|t| t.budget_exceeded).count() as u32;
    let g = valid.gcd(&trials);
    Ok(SampleStats {
        n,
        trials,
        valid,
        invalid: trials - valid - budget_exceeded,
        budget_exceeded,
        fraction: format!("{}/{}", valid / g, trials / g),
        distribution: DISTRIBUTION,
        generator: GENERATOR,
        per_trial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        for d in 0..6 {
            assert_eq!(plane_monomials(d).len() as u32, (d + 1) * (d + 2) / 2);
        }
        assert_eq!(plane_monomials(1), [Monomial::var(0), Monomial::var(1), Monomial::var(2)]);
    }

    #[test]
    fn streams_are_per_trial() {
        let a = sample_triple(7, 3, 3, 4, SampleMode::Random);
        let b = sample_triple(7, 3, 3, 4, SampleMode::Random);
        assert_eq!(a, b);
        assert_ne!(a, sample_triple(7, 3, 3, 5, SampleMode::Random));
        assert_ne!(a, sample_triple(8, 3, 3, 4, SampleMode::Random));
    }

    #[test]
    fn coefficients_within_bound() {
        for trial in 0..20 {
            let t = sample_triple(1, 2, 2, trial, SampleMode::Random);
            for p in [&t.f, &t.g, &t.h] {
                assert!(p.terms().all(|(_, c)| c.numer().magnitude() <= &2u32.into() && c.is_integer()));
            }
        }
    }

    #[test]
    fn zero_gh_is_invalid() {
        let stats = sample(3, 2, 3, 1, SampleMode::ZeroGh, &GbOptions::default()).unwrap();
        assert_eq!((stats.trials, stats.valid, stats.invalid), (1, 0, 1));
        assert_eq!(stats.fraction, "0/1");
    }
}
