//! Intersection-theory calculator for rank-2 bundles on the plane given by a
//! presentation `0 → O(a+k) → O(b1+k) ⊕ O(b2+k) ⊕ O(b3+k) → V(k) → 0`.
//!
//! Section counts use `h⁰(O(d)) = (d+2)(d+1)/2` for `d ≥ 0` and 0 otherwise,
//! together with the vanishing of `H¹` of every line bundle on the plane:
//! taking cohomology of the presentation then gives
//! `h⁰(V(k)) = Σ h⁰(O(bᵢ+k)) − h⁰(O(a+k))` exactly. This vanishing is a fact
//! about the plane, so the formula is not configurable.
//!
//! Chow rings are handled for exactly two 3-fold shapes:
//!
//! - `P(E)` for `E` of rank 2 over P², with `A* = Z[h, ξ]/(h³, ξ² − c₁hξ + c₂h²)`
//!   and point class `h²ξ = 1`;
//! - `P(G)` for `G` of rank 3 over P¹, with `A* = Z[h, ξ]/(h², ξ³ − c₁hξ²)`
//!   and point class `hξ² = 1`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("unsupported Chow context: {0}")]
    UnsupportedContext(String),
}

/// Line-bundle presentation of a rank-2 bundle on the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BundleSeq {
    pub kernel_deg: i64,
    pub middle_degs: [i64; 3],
    pub twist: i64,
}

impl BundleSeq {
    /// `0 → O(1−n) → O(1) ⊕ O ⊕ O → V_n → 0`, the bundle attached to a
    /// section triple of degree `n`. For `n = 2` this is the quadric case.
    pub fn for_degree(n: i64) -> BundleSeq {
        BundleSeq {
            kernel_deg: 1 - n,
            middle_degs: [1, 0, 0],
            twist: 0,
        }
    }

    pub fn twisted(self, by: i64) -> BundleSeq {
        BundleSeq {
            twist: self.twist + by,
            ..self
        }
    }
}

/// Chern classes `(c₁, c₂)` as multiples of `[h]` and `[h²]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChernPair {
    pub c1: i64,
    pub c2: i64,
}

impl ChernPair {
    /// Chern classes of the bundle tensored with `O(k)`.
    pub fn twist(self, k: i64) -> ChernPair {
        ChernPair {
            c1: self.c1 + 2 * k,
            c2: self.c2 + k * self.c1 + k * k,
        }
    }
}

/// Total Chern class `c(V(k)) = Π(1 + (bᵢ+k)h) / (1 + (a+k)h)` mod `h³`.
pub fn chern_from_sequence(seq: &BundleSeq) -> ChernPair {
    let k = seq.twist;
    // numerator 1 + e1 h + e2 h^2
    let b: Vec<i64> = seq.middle_degs.iter().map(|d| d + k).collect();
    let e1: i64 = b.iter().sum();
    let e2 = b[0] * b[1] + b[0] * b[2] + b[1] * b[2];
    // 1/(1 + a h) = 1 − a h + a² h²
    let a = seq.kernel_deg + k;
    ChernPair {
        c1: e1 - a,
        c2: e2 - a * e1 + a * a,
    }
}

/// `h⁰(O(d))` on the plane.
pub fn h0_line(d: i64) -> i64 {
    if d < 0 {
        0
    } else {
        (d + 2) * (d + 1) / 2
    }
}

pub fn h0_bundle(seq: &BundleSeq) -> i64 {
    let k = seq.twist;
    seq.middle_degs.iter().map(|b| h0_line(b + k)).sum::<i64>() - h0_line(seq.kernel_deg + k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    SemistableNotStable,
    Unstable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub verdict: Stability,
    /// Twist taking the bundle to its normalization (`c₁ ∈ {0, −1}`).
    pub normal_twist: i64,
    pub h0_norm: i64,
    pub h0_norm_minus1: i64,
}

/// Stability of a rank-2 bundle on the plane from sections of its
/// normalization: stable iff `h⁰(V_norm) = 0`; semistable but not stable iff
/// `h⁰(V_norm) ≥ 1` and `h⁰(V_norm(−1)) = 0`.
pub fn stability_verdict(seq: &BundleSeq) -> StabilityVerdict {
    let c1 = chern_from_sequence(seq).c1;
    // even c1 → −c1/2, odd c1 → −(c1+1)/2
    let normal_twist = -(c1 + c1.rem_euclid(2)) / 2;
    let h0_norm = h0_bundle(&seq.twisted(normal_twist));
    let h0_norm_minus1 = h0_bundle(&seq.twisted(normal_twist - 1));
    let verdict = if h0_norm == 0 {
        Stability::Stable
    } else if h0_norm_minus1 == 0 {
        Stability::SemistableNotStable
    } else {
        Stability::Unstable
    };
    StabilityVerdict {
        verdict,
        normal_twist,
        h0_norm,
        h0_norm_minus1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Base {
    P1,
    P2,
}

/// A projective bundle `P(G)` over `base` with `rank(G) = rank` and Chern
/// classes `chern = [c₁, c₂, …]` (missing entries are zero).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChowContext {
    pub base: Base,
    pub rank: u32,
    pub chern: Vec<i64>,
}

impl ChowContext {
    pub fn rank2_over_plane(c: ChernPair) -> ChowContext {
        ChowContext {
            base: Base::P2,
            rank: 2,
            chern: vec![c.c1, c.c2],
        }
    }

    /// `P(O(a1) ⊕ … ⊕ O(ar))` over P¹.
    pub fn split_over_line(degrees: &[i64]) -> ChowContext {
        ChowContext {
            base: Base::P1,
            rank: degrees.len() as u32,
            chern: vec![degrees.iter().sum()],
        }
    }

    fn check(&self) -> Result<(), ChowError> {
        match (self.base, self.rank) {
            (Base::P2, 2) | (Base::P1, 3) => Ok(()),
            (base, rank) => Err(ChowError::UnsupportedContext(format!(
                "rank {rank} over {base:?} (only rank 2 over P2 and rank 3 over P1 are 3-folds handled here)"
            ))),
        }
    }

    fn c(&self, i: usize) -> i64 {
        self.chern.get(i - 1).copied().unwrap_or(0)
    }

    fn base_dim(&self) -> u32 {
        match self.base {
            Base::P1 => 1,
            Base::P2 => 2,
        }
    }

    /// Basis monomial representing the point class.
    fn point(&self) -> (u32, u32) {
        match self.base {
            Base::P2 => (2, 1),
            Base::P1 => (1, 2),
        }
    }
}

/// Integer combination of monomials `h^i ξ^j` in a Chow context. Keys are
/// `(i, j)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowExpr {
    context: ChowContext,
    coeffs: BTreeMap<(u32, u32), i64>,
}

impl ChowExpr {
    pub fn new(context: &ChowContext, terms: impl IntoIterator<Item = ((u32, u32), i64)>) -> Result<ChowExpr, ChowError> {
        context.check()?;
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            *coeffs.entry(k).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(ChowExpr {
            context: context.clone(),
            coeffs,
        })
    }

    pub fn h(context: &ChowContext) -> Result<ChowExpr, ChowError> {
        ChowExpr::new(context, [((1, 0), 1)])
    }

    pub fn xi(context: &ChowContext) -> Result<ChowExpr, ChowError> {
        ChowExpr::new(context, [((0, 1), 1)])
    }

    pub fn context(&self) -> &ChowContext {
        &self.context
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), i64> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &ChowExpr) -> ChowExpr {
        assert_eq!(self.context, other.context, "context mismatch");
        let terms = self.coeffs.iter().chain(&other.coeffs).map(|(k, c)| (*k, *c));
        ChowExpr::new(&self.context, terms).expect("checked context")
    }

    pub fn scale(&self, s: i64) -> ChowExpr {
        ChowExpr::new(&self.context, self.coeffs.iter().map(|(k, c)| (*k, c * s))).expect("checked context")
    }

    /// Product, without reduction.
    pub fn mul(&self, other: &ChowExpr) -> ChowExpr {
        assert_eq!(self.context, other.context, "context mismatch");
        let mut terms = Vec::new();
        for ((i1, j1), c1) in &self.coeffs {
            for ((i2, j2), c2) in &other.coeffs {
                terms.push(((i1 + i2, j1 + j2), c1 * c2));
            }
        }
        ChowExpr::new(&self.context, terms).expect("checked context")
    }

    pub fn pow(&self, k: u32) -> ChowExpr {
        let mut out = ChowExpr::new(&self.context, [((0, 0), 1)]).expect("checked context");
        for _ in 0..k {
            out = chow_reduce(&out.mul(self)).expect("checked context");
        }
        out
    }

    /// Coefficient of the point class after reduction.
    pub fn degree(&self) -> i64 {
        let (i, j) = self.context.point();
        chow_reduce(self).expect("checked context").coeff(i, j)
    }
}

/// Canonical representative on the basis `h^i ξ^j` with `i ≤ dim base` and
/// `j < rank`.
pub fn chow_reduce(e: &ChowExpr) -> Result<ChowExpr, ChowError> {
    let ctx = &e.context;
    ctx.check()?;
    let hmax = ctx.base_dim();
    let r = ctx.rank;
    let mut pending: BTreeMap<(u32, u32), i64> = e.coeffs.clone();
    let mut done: BTreeMap<(u32, u32), i64> = BTreeMap::new();
    // ξ^r = Σ_{i=1..r} (−1)^{i+1} c_i h^i ξ^{r−i}; highest ξ-power first
    while let Some(((i, j), c)) = pop_highest_xi(&mut pending) {
        if c == 0 || i > hmax {
            continue;
        }
        if j < r {
            *done.entry((i, j)).or_insert(0) += c;
            continue;
        }
        for t in 1..=r {
            let ct = ctx.c(t as usize);
            if ct == 0 {
                continue;
            }
            let sign = if t % 2 == 1 { 1 } else { -1 };
            *pending.entry((i + t, j - t)).or_insert(0) += sign * ct * c;
        }
    }
    done.retain(|_, c| *c != 0);
    Ok(ChowExpr {
        context: ctx.clone(),
        coeffs: done,
    })
}

fn pop_highest_xi(map: &mut BTreeMap<(u32, u32), i64>) -> Option<((u32, u32), i64)> {
    let key = *map.keys().max_by_key(|(i, j)| (*j, *i))?;
    map.remove(&key).map(|c| (key, c))
}

/// `ξ³` as a multiple of the point class.
pub fn xi_top(context: &ChowContext) -> Result<i64, ChowError> {
    context.check()?;
    Ok(ChowExpr::xi(context)?.pow(3).degree())
}

/// Coefficients `(e₃₀, e₂₁, e₁₂, e₀₃)` of `e₃₀a³ + e₂₁a²b + e₁₂ab² + e₀₃b³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CubicForm(pub [i64; 4]);

impl CubicForm {
    pub fn eval(&self, a: i64, b: i64) -> i64 {
        let [e30, e21, e12, e03] = self.0;
        e30 * a * a * a + e21 * a * a * b + e12 * a * b * b + e03 * b * b * b
    }

    /// The form `(a, b) ↦ f(p·a + q·b, r·a + s·b)` for `m = [[p, q], [r, s]]`.
    pub fn substitute(&self, m: [[i64; 2]; 2]) -> CubicForm {
        let [[p, q], [r, s]] = m;
        // expand each monomial (pa+qb)^i (ra+sb)^j with i + j = 3
        let lin = |x: i64, y: i64| [x, y];
        let mul = |u: &[i64], v: [i64; 2]| -> Vec<i64> {
            let mut out = vec![0; u.len() + 1];
            for (k, c) in u.iter().enumerate() {
                out[k] += c * v[0];
                out[k + 1] += c * v[1];
            }
            out
        };
        let mut total = [0i64; 4];
        for (idx, coef) in self.0.iter().enumerate() {
            let i = 3 - idx; // power of the first variable
            let mut acc = vec![1i64];
            for _ in 0..i {
                acc = mul(&acc, lin(p, q));
            }
            for _ in 0..(3 - i) {
                acc = mul(&acc, lin(r, s));
            }
            for (k, c) in acc.iter().enumerate() {
                total[k] += coef * c;
            }
        }
        CubicForm(total)
    }
}

impl std::fmt::Display for CubicForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = ["a^3", "a^2*b", "a*b^2", "b^3"];
        let mut first = true;
        for (c, n) in self.0.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            if first {
                if *c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if *c < 0 { " - " } else { " + " })?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            f.write_str(n)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Intersection form `(a·h + b·ξ)³` on `A¹` of a 3-fold context.
pub fn cubic_form(context: &ChowContext) -> Result<CubicForm, ChowError> {
    context.check()?;
    let mut out = [0i64; 4];
    for (idx, slot) in out.iter_mut().enumerate() {
        // coefficient of a^{3-idx} b^{idx} is C(3, idx) · h^{3-idx} ξ^{idx}
        let binom = [1, 3, 3, 1][idx];
        let mono = ChowExpr::new(context, [((3 - idx as u32, idx as u32), 1)])?;
        *slot = binom * mono.degree();
    }
    Ok(CubicForm(out))
}

/// Integer 2×2 matrices with entries in `[−bound, bound]` in the scan order
/// used by [`cubic_equiv_search`]: by entry magnitude sum, then by the number
/// of entries differing from the identity, then entrywise with `0 < 1 < −1 <
/// 2 < −2 < …`.
fn scan_order(bound: i64) -> Vec<[[i64; 2]; 2]> {
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut all = Vec::new();
    for &p in &range {
        for &q in &range {
            for &r in &range {
                for &s in &range {
                    all.push([[p, q], [r, s]]);
                }
            }
        }
    }
    let key = |m: &[[i64; 2]; 2]| {
        let e = [m[0][0], m[0][1], m[1][0], m[1][1]];
        let id = [1, 0, 0, 1];
        let abs_sum: i64 = e.iter().map(|x| x.abs()).sum();
        let off_identity = e.iter().zip(id).filter(|(x, y)| **x != *y).count();
        let entry_keys: Vec<(i64, bool)> = e.iter().map(|x| (x.abs(), *x < 0)).collect();
        (abs_sum, off_identity, entry_keys)
    };
    all.sort_by_key(key);
    all
}

/// Searches for an integer unimodular `m` with entries in `[−bound, bound]`
/// such that `f1.substitute(m) == f2`. `None` means no witness within the
/// bound, which is evidence, not proof, of inequivalence.
pub fn cubic_equiv_search(f1: &CubicForm, f2: &CubicForm, bound: i64) -> Option<[[i64; 2]; 2]> {
    assert!(bound >= 1, "bound must be positive");
    scan_order(bound).into_iter().find(|m| {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        det.abs() == 1 && f1.substitute(*m) == *f2
    })
}
