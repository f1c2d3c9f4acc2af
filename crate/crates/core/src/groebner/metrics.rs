use serde::Serialize;

use super::{buchberger, GbOptions, GroebnerError, HilbertSeries, Ideal};
use crate::exactpoly::Poly;

/// Invariants of the projective zero scheme of a homogeneous ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchemeMetrics {
    pub empty: bool,
    /// Projective dimension, −1 when empty.
    pub dimension: i64,
    /// Degree of the scheme (leading Hilbert-polynomial coefficient times
    /// `dimension!`); 0 when empty.
    pub degree: i64,
    /// Present exactly when `dimension == 0`.
    pub length: Option<i64>,
    /// Present exactly when `dimension == 0`.
    pub reduced: Option<bool>,
}

/// Hilbert series of `R / I`, read off the leading-term ideal of the reduced
/// Gröbner basis.
pub fn hilbert_series(ideal: &Ideal, opts: &GbOptions) -> Result<HilbertSeries, GroebnerError> {
    if !ideal.is_homogeneous() {
        return Err(GroebnerError::NotHomogeneous);
    }
    let gb = buchberger(ideal, opts)?;
    Ok(HilbertSeries::of_monomial_ideal(&gb.leading_monomials(), ideal.ring().nvars()))
}

/// Dimension of the degree-`d` piece of `R / I`.
pub fn hilbert_function(ideal: &Ideal, d: u32, opts: &GbOptions) -> Result<i64, GroebnerError> {
    Ok(hilbert_series(ideal, opts)?.value(d))
}

/// Emptiness, dimension, length and reducedness of the projective scheme
/// cut out by a homogeneous ideal.
///
/// Reducedness of a zero-dimensional scheme in `P^{k}` is decided by the
/// Jacobian criterion: the scheme is reduced iff adding all `k × k` minors
/// of the Jacobian of the generators leaves an empty scheme.
pub fn scheme_metrics(ideal: &Ideal, opts: &GbOptions) -> Result<SchemeMetrics, GroebnerError> {
    let hs = hilbert_series(ideal, opts)?;
    scheme_metrics_with(ideal, &hs, opts)
}

/// [`scheme_metrics`] with the Hilbert series of `ideal` already at hand.
pub fn scheme_metrics_with(
    ideal: &Ideal,
    hs: &HilbertSeries,
    opts: &GbOptions,
) -> Result<SchemeMetrics, GroebnerError> {
    let krull = hs.krull_dimension() as i64;
    let dimension = krull - 1;
    let (length, reduced) = if dimension == 0 {
        (Some(hs.multiplicity()), Some(is_reduced_point_scheme(ideal, opts)?))
    } else {
        (None, None)
    };
    Ok(SchemeMetrics {
        empty: dimension < 0,
        dimension,
        degree: if dimension < 0 { 0 } else { hs.multiplicity() },
        length,
        reduced,
    })
}

fn is_reduced_point_scheme(ideal: &Ideal, opts: &GbOptions) -> Result<bool, GroebnerError> {
    let n = ideal.ring().nvars();
    let codim = n - 1;
    let gens = ideal.gens();
    if gens.len() < codim {
        return Ok(false);
    }
    let jac: Vec<Vec<Poly>> = gens
        .iter()
        .map(|g| (0..n).map(|v| g.derivative_at(v)).collect())
        .collect();
    let mut minors = Vec::new();
    for rows in subsets(gens.len(), codim) {
        for cols in subsets(n, codim) {
            let sub: Vec<Vec<Poly>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            minors.push(determinant(&sub, ideal.ring()));
        }
    }
    let augmented = ideal.extended(minors)?;
    let hs = hilbert_series(&augmented, opts)?;
    Ok(hs.krull_dimension() == 0)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Laplace expansion along the first row.
pub(crate) fn determinant(m: &[Vec<Poly>], ring: &crate::exactpoly::RingRef) -> Poly {
    match m.len() {
        0 => Poly::one(ring),
        1 => m[0][0].clone(),
        size => {
            let mut acc = Poly::zero(ring);
            for j in 0..size {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}
