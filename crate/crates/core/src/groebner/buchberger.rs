use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GbOptions, GroebnerBasis, GroebnerError, Ideal};
use crate::exactpoly::{Monomial, Poly, Rational, RingRef, MAX_VARS};

/// Full reduction (leading and tail terms) of `p` by monic `reducers`. The
/// first reducer, in slice order, whose leading monomial divides the current
/// term is used.
pub(crate) fn reduce(p: &Poly, reducers: &[&Poly]) -> Poly {
    let ring = p.ring().clone();
    let lms: Vec<Monomial> = reducers.iter().map(|g| g.leading_monomial().expect("nonzero reducer")).collect();
    let mut work: BTreeMap<Monomial, Rational> = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    let mut rem = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let Some(k) = lms.iter().position(|lm| lm.divides(&m)) else {
            rem.push((m, c));
            continue;
        };
        let g = reducers[k];
        debug_assert!(g.leading_coefficient().is_some_and(|lc| *lc == Rational::from_integer(1.into())));
        let q = m.checked_div(&lms[k]).expect("divisor");
        for (t, a) in g.terms().skip(1) {
            let delta = &c * a;
            match work.entry(t.mul(&q)) {
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
    }
    Poly::from_sorted_terms(&ring, rem)
}

/// Integer polynomial with terms in descending order, kept primitive with a
/// positive leading coefficient.
#[derive(Clone)]
struct IPoly(Vec<(Monomial, BigInt)>);

impl IPoly {
    fn from_poly(p: &Poly) -> IPoly {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p.terms().map(|(m, c)| (*m, c.numer() * (&den / c.denom()))).collect();
        IPoly(terms).primitive()
    }

    fn primitive(mut self) -> IPoly {
        let content = self.0.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let content = match self.0.first() {
            Some((_, lc)) if lc.is_negative() => -content,
            _ => content,
        };
        if !content.is_zero() && !content.is_one() {
            for (_, c) in &mut self.0 {
                *c /= &content;
            }
        }
        self
    }

    fn lm(&self) -> Monomial {
        self.0[0].0
    }

    fn is_constant(&self) -> bool {
        self.0.len() == 1 && self.0[0].0.is_one()
    }

    /// A single term in `var` alone; becomes a constant once `var` is set to 1.
    fn is_power_of(&self, var: Option<usize>) -> bool {
        match var {
            Some(v) => self.0.len() == 1 && self.0[0].0.with_exp(v, 0).is_one(),
            None => self.is_constant(),
        }
    }

    fn to_monic(&self, ring: &RingRef) -> Poly {
        let lc = &self.0[0].1;
        let terms = self.0.iter().map(|(m, c)| (*m, Rational::new(c.clone(), lc.clone()))).collect();
        Poly::from_sorted_terms(ring, terms)
    }
}

/// Fraction-free reduction: `p` is rescaled by integers instead of dividing by
/// leading coefficients. With `full = false` only the leading term is reduced.
fn reduce_int(p: &IPoly, reducers: &[&IPoly], full: bool) -> IPoly {
    let lms: Vec<Monomial> = reducers.iter().map(|g| g.lm()).collect();
    let mut work: BTreeMap<Monomial, BigInt> = p.0.iter().cloned().collect();
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut scalings = 0u32;
    while let Some((m, c)) = work.pop_last() {
        let Some(k) = lms.iter().position(|lm| lm.divides(&m)) else {
            rem.push((m, c));
            if !full {
                rem.extend(std::mem::take(&mut work).into_iter().rev());
            }
            continue;
        };
        let g = reducers[k];
        let a = &g.0[0].1;
        let d = c.gcd(a);
        let (sa, sc) = (a / &d, &c / &d);
        if !sa.is_one() {
            for v in work.values_mut() {
                *v *= &sa;
            }
            for (_, v) in &mut rem {
                *v *= &sa;
            }
            scalings += 1;
        }
        let q = m.checked_div(&lms[k]).expect("divisor");
        for (t, b) in &g.0[1..] {
            let delta = &sc * b;
            match work.entry(t.mul(&q)) {
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= delta;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(-delta);
                }
            }
        }
        if scalings >= 8 {
            scalings = 0;
            let content = work.values().chain(rem.iter().map(|(_, v)| v)).fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if content > BigInt::one() {
                for v in work.values_mut() {
                    *v /= &content;
                }
                for (_, v) in &mut rem {
                    *v /= &content;
                }
            }
        }
    }
    IPoly(rem).primitive()
}

fn s_polynomial(f: &IPoly, g: &IPoly) -> IPoly {
    let ((mf, a), (mg, b)) = (&f.0[0], &g.0[0]);
    let l = mf.lcm(mg);
    let d = a.gcd(b);
    let (sf, sg) = (b / &d, a / &d);
    let (qf, qg) = (l.checked_div(mf).unwrap(), l.checked_div(mg).unwrap());
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (t, c) in &f.0[1..] {
        *acc.entry(t.mul(&qf)).or_default() += &sf * c;
    }
    for (t, c) in &g.0[1..] {
        *acc.entry(t.mul(&qg)).or_default() -= &sg * c;
    }
    IPoly(acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect()).primitive()
}

struct Engine {
    polys: Vec<IPoly>,
    lms: Vec<Monomial>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<(usize, usize)>,
}

impl Engine {
    fn active_polys(&self) -> Vec<&IPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Adds a new basis element and updates the pair set with the
    /// Gebauer–Möller criteria.
    fn insert(&mut self, h: IPoly, sugar: u32) {
        let hm = h.lm();
        let hi = self.polys.len();

        let mut candidates: Vec<usize> = (0..hi).filter(|&i| self.active[i]).collect();
        let mut kept: Vec<usize> = Vec::new();
        while !candidates.is_empty() {
            let g1 = candidates.remove(0);
            let l1 = hm.lcm(&self.lms[g1]);
            let redundant = !hm.is_coprime(&self.lms[g1])
                && candidates
                    .iter()
                    .chain(kept.iter())
                    .any(|&g2| hm.lcm(&self.lms[g2]).divides(&l1));
            if !redundant {
                kept.push(g1);
            }
        }
        let fresh: Vec<(usize, usize)> = kept
            .into_iter()
            .filter(|&g| !hm.is_coprime(&self.lms[g]))
            .map(|g| (g, hi))
            .collect();

        let lms = &self.lms;
        self.pairs.retain(|&(a, b)| {
            let l = lms[a].lcm(&lms[b]);
            !(hm.divides(&l) && lms[a].lcm(&hm) != l && lms[b].lcm(&hm) != l)
        });
        self.pairs.extend(fresh);

        for i in 0..hi {
            if self.active[i] && hm.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(hm);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    fn pair_sugar(&self, a: usize, b: usize) -> u32 {
        let l = self.lms[a].lcm(&self.lms[b]).degree();
        (self.sugar[a] + l - self.lms[a].degree()).max(self.sugar[b] + l - self.lms[b].degree())
    }

    /// Sugar selection: smallest sugar degree, then smallest lcm degree, then
    /// smallest pair indices. For homogeneous input this is normal selection.
    fn next_pair(&mut self) -> Option<(usize, usize, u32)> {
        let lms = &self.lms;
        let (pos, _) = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(a, b))| (self.pair_sugar(a, b), lms[a].lcm(&lms[b]).degree(), a, b))?;
        let (a, b) = self.pairs.swap_remove(pos);
        Some((a, b, self.pair_sugar(a, b)))
    }
}

fn unit_basis(ideal: &Ideal, spairs: usize) -> GroebnerBasis {
    GroebnerBasis {
        ideal: ideal.clone(),
        basis: vec![Poly::one(ideal.ring())],
        spairs_reduced: spairs,
    }
}

enum Run {
    Unit(usize),
    Basis(Vec<IPoly>, usize),
}

/// Buchberger loop. Stops as soon as an element is a power of `unit_var`
/// (a constant when `unit_var` is `None`).
fn run_engine(gens: Vec<IPoly>, unit_var: Option<usize>, opts: &GbOptions) -> Result<Run, GroebnerError> {
    let mut engine = Engine {
        polys: Vec::new(),
        lms: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let sugar = g.0.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let h = reduce_int(&g, &engine.active_polys(), true);
        if h.0.is_empty() {
            continue;
        }
        if h.is_power_of(unit_var) {
            return Ok(Run::Unit(0));
        }
        engine.insert(h, sugar);
    }

    let mut spairs = 0usize;
    while let Some((a, b, sugar)) = engine.next_pair() {
        spairs += 1;
        if spairs > opts.spair_budget {
            return Err(GroebnerError::Budget {
                limit: opts.spair_budget,
            });
        }
        let s = s_polynomial(&engine.polys[a], &engine.polys[b]);
        let h = reduce_int(&s, &engine.active_polys(), true);
        if h.0.is_empty() {
            continue;
        }
        if h.is_power_of(unit_var) {
            return Ok(Run::Unit(spairs));
        }
        engine.insert(h, sugar);
    }
    let basis = engine.active_polys().into_iter().cloned().collect();
    Ok(Run::Basis(basis, spairs))
}

/// Homogenizes with an extra last variable. Under grevlex with that variable
/// last, dehomogenizing a Gröbner basis of the homogenized ideal keeps
/// leading monomials, so it is a Gröbner basis of the original ideal.
fn run_homogenized(gens: Vec<IPoly>, nvars: usize, opts: &GbOptions) -> Result<Run, GroebnerError> {
    let hom: Vec<IPoly> = gens
        .into_iter()
        .map(|g| {
            let d = g.0.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
            let mut terms: Vec<(Monomial, BigInt)> = g
                .0
                .into_iter()
                .map(|(m, c)| (m.with_exp(nvars, d - m.degree()), c))
                .collect();
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            IPoly(terms)
        })
        .collect();
    Ok(match run_engine(hom, Some(nvars), opts)? {
        Run::Basis(basis, spairs) => {
            let mut deh = Vec::with_capacity(basis.len());
            for g in basis {
                let terms: Vec<(Monomial, BigInt)> = g.0.into_iter().map(|(m, c)| (m.with_exp(nvars, 0), c)).collect();
                let p = IPoly(terms);
                if p.is_constant() {
                    return Ok(Run::Unit(spairs));
                }
                deh.push(p);
            }
            Run::Basis(deh, spairs)
        }
        unit => unit,
    })
}

/// Reduced Gröbner basis of a homogeneous `ideal`, or `None` as soon as a
/// pure power of variable `var` is found to lie in it.
pub(crate) fn buchberger_unless_power(
    ideal: &Ideal,
    var: usize,
    opts: &GbOptions,
) -> Result<Option<GroebnerBasis>, GroebnerError> {
    debug_assert!(ideal.is_homogeneous());
    let gens: Vec<IPoly> = ideal.gens().iter().map(IPoly::from_poly).collect();
    match run_engine(gens, Some(var), opts)? {
        Run::Unit(_) => Ok(None),
        Run::Basis(basis, spairs) => Ok(Some(finish(ideal, basis, spairs))),
    }
}

/// Reduced Gröbner basis of `ideal` under graded reverse lexicographic order.
///
/// Inhomogeneous ideals are homogenized internally when a variable slot is
/// free; the S-pair count then refers to the homogenized computation.
pub fn buchberger(ideal: &Ideal, opts: &GbOptions) -> Result<GroebnerBasis, GroebnerError> {
    let gens: Vec<IPoly> = ideal.gens().iter().map(IPoly::from_poly).collect();
    let nvars = ideal.ring().nvars();
    let run = if !ideal.is_homogeneous() && nvars < MAX_VARS {
        run_homogenized(gens, nvars, opts)?
    } else {
        run_engine(gens, None, opts)?
    };
    Ok(match run {
        Run::Unit(spairs) => unit_basis(ideal, spairs),
        Run::Basis(basis, spairs) => finish(ideal, basis, spairs),
    })
}

/// Minimal, tail-reduced, monic and sorted basis from a Gröbner basis.
fn finish(ideal: &Ideal, active: Vec<IPoly>, spairs: usize) -> GroebnerBasis {

    // minimal basis: drop elements whose leading monomial is a multiple of an
    // earlier-kept one
    let mut minimal: Vec<&IPoly> = Vec::new();
    let mut order: Vec<&IPoly> = active.iter().collect();
    order.sort_by(|a, b| a.lm().degree().cmp(&b.lm().degree()).then(b.lm().cmp(&a.lm())));
    for g in order {
        if !minimal.iter().any(|o| o.lm().divides(&g.lm())) {
            minimal.push(g);
        }
    }

    let ring = ideal.ring();
    let mut basis: Vec<Poly> = minimal
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let others: Vec<&IPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, o)| *o)
                .collect();
            reduce_int(g, &others, true).to_monic(ring)
        })
        .collect();
    basis.sort_by(|a, b| {
        let (la, lb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        la.degree().cmp(&lb.degree()).then(lb.cmp(&la))
    });

    GroebnerBasis {
        ideal: ideal.clone(),
        basis,
        spairs_reduced: spairs,
    }
}
