use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::{Monomial, PolyError, Rational, RingRef};

/// Homogeneity of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// Every term has this total degree.
    Homogeneous(u32),
    /// The zero polynomial (degree −∞).
    Zero,
    NotHomogeneous,
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are stored leading term first in graded reverse lexicographic
/// order; no stored coefficient is zero.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<(Monomial, Rational)>,
}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_ring(a: &RingRef, b: &RingRef) -> Result<(), PolyError> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(PolyError::RingMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Poly {
        Poly::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Poly {
        Poly::monomial(ring, Monomial::ONE, c)
    }

    pub fn from_int(ring: &RingRef, c: i64) -> Poly {
        Poly::constant(ring, Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rational) -> Poly {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &RingRef, name: &str) -> Result<Poly, PolyError> {
        let i = ring.require_index(name)?;
        Ok(Poly::var_at(ring, i))
    }

    pub fn var_at(ring: &RingRef, index: usize) -> Poly {
        assert!(index < ring.nvars(), "variable index out of range");
        Poly::monomial(ring, Monomial::var(index), Rational::one())
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms, collecting like monomials.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(m.exponents(crate::exactpoly::MAX_VARS)[ring.nvars()..]
                .iter()
                .all(|&e| e == 0));
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Poly::from_map(ring, acc)
    }

    pub(crate) fn from_map(ring: &RingRef, map: BTreeMap<Monomial, Rational>) -> Poly {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms sorted in descending order; caller guarantees canonical form.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, Rational)>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Terms, leading term first.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|(m, _)| *m)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Maximum total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degrees = self.terms.iter().map(|(m, _)| m.degree());
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Homogeneous(d),
            Some(_) => Homogeneity::NotHomogeneous,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        !matches!(self.homogeneity(), Homogeneity::NotHomogeneous)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// `c · m · self`
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        // multiplication by a monomial preserves the term order
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let signed = |c: &Rational| if negate { -c } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ma, ca)), Some((mb, cb))) => match ma.cmp(mb) {
                    Ordering::Greater => {
                        out.push((*ma, ca.clone()));
                        a.next();
                    }
                    Ordering::Less => {
                        out.push((*mb, signed(cb)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = if negate { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((*ma, c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ma, ca)), None) => {
                    out.push((*ma, ca.clone()));
                    a.next();
                }
                (None, Some((mb, cb))) => {
                    out.push((*mb, signed(cb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        Poly::from_sorted_terms(&self.ring, out)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Poly::from_map(&self.ring, acc)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly, PolyError> {
        let i = self.ring.require_index(var)?;
        Ok(self.derivative_at(i))
    }

    pub fn derivative_at(&self, index: usize) -> Poly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exp(index);
            (e > 0).then(|| (m.with_exp(index, e - 1), c * Rational::from_integer(BigInt::from(e))))
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Composes with a substitution. Each variable of `self` is sent to the
    /// image under its name in `images`; a variable without an explicit image
    /// is sent to the variable of the same name in `target`, if present.
    pub fn substitute(&self, images: &HashMap<String, Poly>, target: &RingRef) -> Result<Poly, PolyError> {
        for (name, img) in images {
            self.ring.require_index(name)?;
            check_ring(&img.ring, target)?;
        }
        let resolved = self
            .ring
            .vars()
            .iter()
            .map(|v| match images.get(v) {
                Some(img) => Ok(img.clone()),
                None => target
                    .index_of(v)
                    .map(|j| Poly::var_at(target, j))
                    .ok_or_else(|| PolyError::MissingImage(v.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.substitute_all(&resolved, target))
    }

    /// Substitution by variable index; `images[i]` is the image of variable
    /// `i` and must live in `target`.
    pub fn substitute_all(&self, images: &[Poly], target: &RingRef) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(target), p.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, cache) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while cache.len() <= e {
                    let next = cache.last().unwrap().mul_unchecked(&images[i]);
                    cache.push(next);
                }
                if e > 0 {
                    term = term.mul_unchecked(&cache[e]);
                }
            }
            acc = acc.merge(&term, false);
        }
        acc
    }

    /// Moves the polynomial into `target`, matching variables by name. Every
    /// variable of `self` that actually occurs must exist in `target`.
    pub fn embed_into(&self, target: &RingRef) -> Result<Poly, PolyError> {
        let mut index_map = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            index_map.push(target.index_of(v));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, slot) in index_map.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match slot {
                    Some(j) => exps[*j] = e,
                    None => return Err(PolyError::MissingImage(self.ring.vars()[i].clone())),
                }
            }
            terms.push((Monomial::from_exponents(&exps), c.clone()));
        }
        Ok(Poly::from_terms(target, terms))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "point dimension");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest `k` such that `var^k` divides every term; 0 for the zero
    /// polynomial.
    pub fn var_power_dividing(&self, index: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(index)).min().unwrap_or(0)
    }

    /// Exact quotient by `var^k`, `None` if not divisible.
    pub fn div_var_power(&self, index: usize, k: u32) -> Option<Poly> {
        let d = Monomial::var(index).pow(k);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| m.checked_div(&d).map(|q| (q, c.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::from_sorted_terms(&self.ring, terms))
    }

    /// Smallest total degree, within the variables flagged in `mask`, over all
    /// terms. `None` for zero.
    pub fn min_partial_degree(&self, mask: &[bool]) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| m.exp(i)).sum())
            .min()
    }

    fn fmt_monomial(&self, m: &Monomial, out: &mut String) {
        let mut first = true;
        for (i, v) in self.ring.vars().iter().enumerate() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(v);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let a = c.abs();
            if m.is_one() {
                out.push_str(&fmt_rational(&a));
            } else {
                if !a.is_one() {
                    out.push_str(&fmt_rational(&a));
                    out.push('*');
                }
                self.fmt_monomial(m, &mut out);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({} in {})", self, self.ring.name())
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on ring mismatch; use the `checked_*` form for fallible code.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Poly::from_sorted_terms(&self.ring, terms)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Parses a substitution map given as `(variable, image text)` pairs, with
/// every image read in `target`.
pub fn images_from_text(
    pairs: &[(&str, &str)],
    target: &RingRef,
) -> Result<HashMap<String, Poly>, PolyError> {
    pairs
        .iter()
        .map(|(v, text)| Ok((v.to_string(), super::parse_poly(text, target)?)))
        .collect()
}
