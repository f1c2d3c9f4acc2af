use serde::Serialize;

use crate::exactpoly::Monomial;

/// Hilbert series `N(t) / (1 - t)^n` of `k[x1..xn] / M` for a monomial
/// ideal `M`, stored through its numerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: Vec<i64>,
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

/// `1 - t^d`
fn one_minus_power(d: u32) -> Vec<i64> {
    if d == 0 {
        return Vec::new();
    }
    let mut p = vec![0i64; d as usize + 1];
    p[0] = 1;
    p[d as usize] = -1;
    p
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    // ascending order: a divisor always precedes its multiples
    for m in gens {
        if !out.iter().any(|d| d.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens
            .iter()
            .fold(vec![1], |acc, m| poly_mul(&acc, &one_minus_power(m.degree())));
    }
    // pivot on the variable shared by the most generators
    let pivot = (0..nvars)
        .max_by_key(|&i| (gens.iter().filter(|m| m.exp(i) > 0).count(), std::cmp::Reverse(i)))
        .expect("at least one variable");
    let x = Monomial::var(pivot);
    // N(M) = N(M + (x)) + t · N(M : x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(pivot) == 0).copied().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| m.checked_div(&x).unwrap_or(*m))
        .collect();
    let mut shifted = vec![0];
    shifted.extend(numerator(colon, nvars));
    poly_add(&numerator(plus, nvars), &shifted)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

impl HilbertSeries {
    pub fn of_monomial_ideal(gens: &[Monomial], nvars: usize) -> HilbertSeries {
        HilbertSeries {
            nvars,
            numerator: numerator(gens.to_vec(), nvars),
        }
    }

    /// Numerator coefficients, constant term first.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Dimension of the degree-`d` piece of the quotient.
    pub fn value(&self, d: u32) -> i64 {
        let n = self.nvars as i64;
        self.numerator
            .iter()
            .enumerate()
            .filter(|(j, _)| *j as u32 <= d)
            .map(|(j, c)| c * binomial(d as i64 - j as i64 + n - 1, n - 1))
            .sum()
    }

    /// Writes the numerator as `(1 - t)^k · Q(t)` with `Q(1) != 0`.
    fn split_at_one(&self) -> (usize, Vec<i64>) {
        let mut q = self.numerator.clone();
        let mut k = 0;
        while !q.is_empty() && q.iter().sum::<i64>() == 0 {
            // q / (1 - t): prefix sums
            let mut acc = 0;
            let mut next = Vec::with_capacity(q.len() - 1);
            for c in &q[..q.len() - 1] {
                acc += c;
                next.push(acc);
            }
            q = trim(next);
            k += 1;
        }
        (k, q)
    }

    /// Krull dimension of the quotient ring (0 when the quotient is finite
    /// dimensional, including the zero ring).
    pub fn krull_dimension(&self) -> usize {
        if self.numerator.is_empty() {
            return 0;
        }
        self.nvars - self.split_at_one().0
    }

    /// Multiplicity (degree) of the quotient; 0 for the zero ring.
    pub fn multiplicity(&self) -> i64 {
        if self.numerator.is_empty() {
            return 0;
        }
        self.split_at_one().1.iter().sum()
    }

    /// From this degree on the Hilbert function agrees with the Hilbert
    /// polynomial.
    pub fn polynomial_from(&self) -> u32 {
        self.numerator.len() as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    /// Counts standard monomials of degree `d` directly.
    fn brute_force(gens: &[Monomial], nvars: usize, d: u32) -> i64 {
        fn rec(prefix: &mut Vec<u32>, left: usize, rem: u32, gens: &[Monomial], count: &mut i64) {
            if left == 1 {
                prefix.push(rem);
                let mono = Monomial::from_exponents(prefix);
                if !gens.iter().any(|g| g.divides(&mono)) {
                    *count += 1;
                }
                prefix.pop();
                return;
            }
            for e in 0..=rem {
                prefix.push(e);
                rec(prefix, left - 1, rem - e, gens, count);
                prefix.pop();
            }
        }
        let mut count = 0;
        rec(&mut Vec::new(), nvars, d, gens, &mut count);
        count
    }

    #[test]
    fn matches_staircase_count() {
        let cases: Vec<(Vec<Monomial>, usize)> = vec![
            (vec![], 3),
            (vec![m(&[0, 1, 0]), m(&[0, 0, 1])], 3),
            (vec![m(&[0, 2, 0]), m(&[0, 0, 2])], 3),
            (vec![m(&[0, 2, 0]), m(&[0, 1, 1]), m(&[0, 0, 3])], 3),
            (vec![m(&[2, 1, 0, 0, 0]), m(&[0, 1, 1, 1, 0]), m(&[1, 0, 0, 0, 2]), m(&[0, 0, 3, 0, 0])], 5),
            (vec![m(&[0, 0, 0])], 3),
        ];
        for (gens, n) in cases {
            let hs = HilbertSeries::of_monomial_ideal(&gens, n);
            for d in 0..9 {
                assert_eq!(hs.value(d), brute_force(&gens, n, d), "{gens:?} at {d}");
            }
        }
    }

    #[test]
    fn dimension_and_degree() {
        let line = HilbertSeries::of_monomial_ideal(&[m(&[1, 0, 0, 0, 0]), m(&[0, 1, 0, 0, 0]), m(&[0, 0, 1, 0, 0])], 5);
        assert_eq!(line.krull_dimension(), 2);
        assert_eq!(line.multiplicity(), 1);

        let fat = HilbertSeries::of_monomial_ideal(&[m(&[0, 3, 0]), m(&[0, 0, 3])], 3);
        assert_eq!(fat.krull_dimension(), 1);
        assert_eq!(fat.multiplicity(), 9);

        let unit = HilbertSeries::of_monomial_ideal(&[Monomial::ONE], 3);
        assert_eq!(unit.krull_dimension(), 0);
        assert_eq!(unit.value(0), 0);

        let empty_proj = HilbertSeries::of_monomial_ideal(&[m(&[2, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])], 3);
        assert_eq!(empty_proj.krull_dimension(), 0);
        assert_eq!(empty_proj.value(1), 1);
        assert_eq!(empty_proj.value(2), 0);
    }
}
