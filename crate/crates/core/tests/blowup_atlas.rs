use num_bigint::BigInt;
use num_traits::{One, Zero};
use pblab_core::blowup::{chart_atlas, strict_transform, Chart};
use pblab_core::exactpoly::{Monomial, Rational};
use pblab_core::geometry::multiplicity_along_line;
use pblab_core::{GbOptions, Poly, RingRef, VarRing};
use proptest::prelude::*;

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=degree).rev() {
        for mut rest in monomials(nvars - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn form(ring: &RingRef, nvars: usize, degree: u32, coeffs: &[i64]) -> Poly {
    let terms = monomials(nvars, degree)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .map(|(e, &c)| (Monomial::from_exponents(&e), q(c)));
    Poly::from_terms(ring, terms.collect::<Vec<_>>())
}

/// `Σ x^α·q_α` over the degree-`m` monomials `x^α` in `X0, X1, X2`, with
/// random forms `q_α` of degree `d − m` in all five coordinates.
fn in_line_power(m: u32, d: u32, coeffs: &[i64]) -> Poly {
    let ring = VarRing::p4();
    let mut out = Poly::zero(&ring);
    for (k, e) in monomials(3, m).into_iter().enumerate() {
        let lead = Poly::monomial(&ring, Monomial::from_exponents(&e), q(1));
        let rot: Vec<i64> = coeffs.iter().cycle().skip(3 * k + 1).take(coeffs.len()).copied().collect();
        out = &out + &(&lead * &form(&ring, 5, d - m, &rot));
    }
    out
}

/// Chart coordinates of the blow-up point `(x, [y])` with `x = (t·y, u, w)`.
fn chart_point(ch: &Chart, t: &Rational, y: &[Rational; 3], uw: &[Rational; 2]) -> Option<Vec<Rational>> {
    let x: Vec<Rational> = y.iter().map(|v| t * v).chain(uw.iter().cloned()).collect();
    if y[ch.a].is_zero() || x[ch.c].is_zero() {
        return None;
    }
    let names = ch.ambient.vars();
    Some(
        ch.ring
            .vars()
            .iter()
            .map(|v| match names.iter().position(|n| n == v) {
                Some(i) => &x[i] / &x[ch.c],
                None => {
                    let i: usize = v[1..].parse().unwrap();
                    &y[i] / &y[ch.a]
                }
            })
            .collect(),
    )
}

fn pow(r: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transforms_glue_across_charts(
        m in 1u32..=3,
        extra in 0u32..=1,
        coeffs in prop::collection::vec(-3i64..=3, 12),
        t in -2i64..=2,
        y in prop::array::uniform3(-3i64..=3),
        uw in prop::array::uniform2(-3i64..=3),
    ) {
        let d = m + extra;
        let f = in_line_power(m, d, &coeffs);
        prop_assume!(!f.is_zero());
        prop_assume!(y.iter().any(|&v| v != 0) && uw.iter().any(|&v| v != 0));
        let m_line = multiplicity_along_line(&f, &GbOptions::default()).unwrap();
        let (t, y, uw) = (q(t), y.map(q), uw.map(q));
        let x: Vec<Rational> = y.iter().map(|v| &t * v).chain(uw.iter().cloned()).collect();
        let mut phi: Option<Rational> = None;
        for ch in chart_atlas(&VarRing::p4()).unwrap() {
            let tr = strict_transform(&f, &ch).unwrap();
            let Some(p) = chart_point(&ch, &t, &y, &uw) else { continue };
            let value = tr.strict.eval(&p);
            if ch.exceptional.is_some() {
                prop_assert_eq!(tr.multiplicity, m_line);
                let normalized = value * pow(&x[ch.c], d - m_line) * pow(&y[ch.a], m_line);
                match &phi {
                    Some(prev) => prop_assert_eq!(prev, &normalized, "chart {}", ch.id()),
                    None => phi = Some(normalized),
                }
            } else if !t.is_zero() {
                prop_assert_eq!(value * pow(&x[ch.c], d), f.eval(&x));
            }
        }
    }

    #[test]
    fn points_off_line_lift_once(
        n in 2u32..=4,
        coeffs in prop::collection::vec(-3i64..=3, 15),
        x012 in prop::array::uniform3(-3i64..=3),
        w in -3i64..=3,
    ) {
        prop_assume!(x012.iter().any(|&v| v != 0));
        let plane = VarRing::plane();
        let f = form(&plane, 3, n, &coeffs);
        let g = form(&plane, 3, n - 1, &coeffs[5..]);
        let h = form(&plane, 3, n - 1, &coeffs[9..]);
        let p: Vec<Rational> = x012.iter().map(|&v| q(v)).collect();
        let gv = g.eval(&p);
        prop_assume!(!gv.is_zero());
        let w = q(w);
        let u = -(f.eval(&p) + &w * h.eval(&p)) / &gv;
        let p4 = VarRing::p4();
        let big_f = &(&f.embed_into(&p4).unwrap() + &(&Poly::var(&p4, "U").unwrap() * &g.embed_into(&p4).unwrap()))
            + &(&Poly::var(&p4, "W").unwrap() * &h.embed_into(&p4).unwrap());
        let x: Vec<Rational> = p.iter().cloned().chain([u.clone(), w.clone()]).collect();
        prop_assert!(big_f.eval(&x).is_zero());

        let y = [p[0].clone(), p[1].clone(), p[2].clone()];
        let mut hits = 0;
        for ch in chart_atlas(&p4).unwrap() {
            let Some(coords) = chart_point(&ch, &Rational::one(), &y, &[u.clone(), w.clone()]) else { continue };
            prop_assert_eq!(ch.coordinates_of(&x), Some(coords.clone()));
            let back: Vec<Rational> = ch.substitution.iter().map(|s| s.eval(&coords)).collect();
            let scale = &x[ch.c];
            prop_assert!(back.iter().zip(&x).all(|(b, xi)| b * scale == *xi));
            let tr = strict_transform(&big_f, &ch).unwrap();
            prop_assert!(tr.strict.eval(&coords).is_zero(), "chart {}", ch.id());
            hits += 1;
        }
        prop_assert!(hits >= 1);
    }
}

#[test]
fn chart_coordinates_of_points() {
    let atlas = chart_atlas(&VarRing::p4()).unwrap();
    let x = [q(2), q(4), q(-6), q(1), q(3)];
    let ch = &atlas[1];
    assert_eq!((ch.a, ch.c), (0, 3));
    assert_eq!(ch.coordinates_of(&x), Some(vec![q(2), q(3), q(2), q(-3)]));
    let origin = [q(0), q(4), q(-6), q(1), q(3)];
    assert_eq!(ch.coordinates_of(&origin), None);
}
