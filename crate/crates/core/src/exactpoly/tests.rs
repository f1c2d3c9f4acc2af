use std::collections::HashMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use super::*;

fn p4(text: &str) -> Poly {
    parse_poly(text, &VarRing::p4()).unwrap()
}

fn plane(text: &str) -> Poly {
    parse_poly(text, &VarRing::plane()).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn parse_example_quadric() {
    let f = p4("X0^2 + U*X1 + W*X2");
    assert_eq!(f.len(), 3);
    assert_eq!(f.homogeneity(), Homogeneity::Homogeneous(2));
    assert_eq!(f.to_string(), "X0^2 + X1*U + X2*W");
}

#[test]
fn parse_zero_and_cancellation() {
    assert!(p4("0").is_zero());
    assert!(plane("1/2*X0 - 1/2*X0").is_zero());
    assert_eq!(plane("0").to_string(), "0");
}

#[test]
fn parse_errors() {
    let ring = VarRing::plane();
    assert!(matches!(parse_poly("X0 +", &ring), Err(PolyError::Syntax { .. })));
    assert!(matches!(parse_poly("X0 ** X1", &ring), Err(PolyError::Syntax { pos: 4, .. })));
    assert!(matches!(parse_poly("", &ring), Err(PolyError::Syntax { .. })));
    assert!(matches!(parse_poly("X0 + Z", &ring), Err(PolyError::UnknownVariable { .. })));
    assert!(matches!(parse_poly("3/0*X1", &ring), Err(PolyError::DivisionByZero { pos: 2 })));
}

#[test]
fn parse_coefficients_and_signs() {
    let f = plane("-2/4*X0*X1^2 + 3 - X2 + X0*3");
    assert_eq!(f.to_string(), "-1/2*X0*X1^2 + 3*X0 - X2 + 3");
    assert_eq!(f.coefficient(&Monomial::ONE), q(3, 1));
    assert_eq!(plane("X1^2*X1").to_string(), "X1^3");
}

#[test]
fn arithmetic_examples() {
    assert!((&plane("X0") + &plane("-X0")).is_zero());
    assert_eq!(&plane("X0+X1") * &plane("X0-X1"), plane("X0^2 - X1^2"));
    // repeated multiplication oracle for the cube
    let s = plane("X0 + X1");
    let cubed = &(&s * &s) * &s;
    assert_eq!(s.pow(3), cubed);
    assert_eq!(s.pow(3), plane("X0^3 + 3*X0^2*X1 + 3*X0*X1^2 + X1^3"));
    assert_eq!(s.pow(0), Poly::one(s.ring()));
}

#[test]
fn ring_mismatch_rejected() {
    let a = plane("X0");
    let b = p4("X0");
    assert!(matches!(a.checked_add(&b), Err(PolyError::RingMismatch { .. })));
    assert!(matches!(a.checked_mul(&b), Err(PolyError::RingMismatch { .. })));
}

#[test]
fn duplicate_variable_rejected() {
    assert!(VarRing::new("bad", &["X", "X"]).is_err());
    assert!(VarRing::new("big", &["a", "b", "c", "d", "e", "f", "g"]).is_err());
}

#[test]
fn substitute_chart_relation() {
    let src = VarRing::new("A", &["X0", "X1", "X2", "X3"]).unwrap();
    let chart = VarRing::new("C", &["X0", "X3", "Y1", "Y2"]).unwrap();
    let f = parse_poly("X0*X1 - X2*X3", &src).unwrap();
    let images = images_from_text(&[("X1", "X0*Y1"), ("X2", "X0*Y2")], &chart).unwrap();
    let g = f.substitute(&images, &chart).unwrap();
    assert_eq!(g, parse_poly("X0^2*Y1 - X0*Y2*X3", &chart).unwrap());
}

#[test]
fn substitute_identity_and_expansion() {
    let ring = VarRing::plane();
    let f = plane("X0^2 - 1/3*X1*X2");
    assert_eq!(f.substitute(&HashMap::new(), &ring).unwrap(), f);

    let images = images_from_text(&[("X0", "X1 + X2")], &ring).unwrap();
    let g = plane("X0^2").substitute(&images, &ring).unwrap();
    assert_eq!(g, plane("X1^2 + 2*X1*X2 + X2^2"));
}

#[test]
fn substitute_missing_image() {
    let target = VarRing::new("T", &["Y"]).unwrap();
    let err = plane("X0 + X1").substitute(&HashMap::new(), &target).unwrap_err();
    assert_eq!(err, PolyError::MissingImage("X0".into()));
    let images = images_from_text(&[("Q", "Y")], &target).unwrap();
    assert!(matches!(
        plane("X0").substitute(&images, &target),
        Err(PolyError::UnknownVariable { .. })
    ));
}

#[test]
fn derivative_examples() {
    let f = p4("X0^2 + U*X1 + W*X2");
    assert_eq!(f.partial_derivative("U").unwrap(), p4("X1"));
    assert!(p4("7").partial_derivative("X0").unwrap().is_zero());
    assert_eq!(p4("X0^3").partial_derivative("X0").unwrap(), p4("3*X0^2"));
    assert!(matches!(f.partial_derivative("Z"), Err(PolyError::UnknownVariable { .. })));
}

#[test]
fn homogeneity_examples() {
    assert_eq!(p4("X0^2 + U*X1").homogeneity(), Homogeneity::Homogeneous(2));
    assert_eq!(p4("X0 + X1^2").homogeneity(), Homogeneity::NotHomogeneous);
    assert_eq!(p4("0").homogeneity(), Homogeneity::Zero);
    assert_eq!(p4("X0^4 + U*X1^3 + W*X2^3").homogeneity(), Homogeneity::Homogeneous(4));
}

#[test]
fn eval_and_division_helpers() {
    let f = plane("X0^2*X1 - 2*X0*X2^2");
    assert_eq!(f.eval(&[q(1, 2), q(3, 1), q(-1, 1)]), q(3, 4) - q(1, 1));
    assert_eq!(f.var_power_dividing(0), 1);
    assert_eq!(f.div_var_power(0, 1).unwrap(), plane("X0*X1 - 2*X2^2"));
    assert!(f.div_var_power(0, 2).is_none());
}

fn arb_poly(ring: RingRef, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    let n = ring.nvars();
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(e, a, b)| (Monomial::from_exponents(&e), q(a, b))),
        )
    })
}

fn arb_homogeneous(ring: RingRef, degree: u32) -> impl Strategy<Value = Poly> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0..=degree, n), -9i64..=9), 0..6).prop_map(move |terms| {
        let mono = terms.into_iter().filter_map(|(e, c)| {
            // rescale a random exponent vector onto the degree simplex
            let mut e = e;
            let mut total: u32 = e.iter().sum();
            while total > degree {
                let i = e.iter().position(|&x| x > 0).unwrap();
                e[i] -= 1;
                total -= 1;
            }
            e[n - 1] += degree - total;
            Some((Monomial::from_exponents(&e), q(c, 1)))
        });
        Poly::from_terms(&ring, mono)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in arb_poly(VarRing::p4(), 5, 2),
                   b in arb_poly(VarRing::p4(), 5, 2),
                   c in arb_poly(VarRing::p4(), 5, 2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn print_parse_roundtrip(a in arb_poly(VarRing::p4(), 6, 3)) {
        let text = a.to_string();
        prop_assert_eq!(parse_poly(&text, a.ring()).unwrap(), a);
    }

    #[test]
    fn mixed_partials_commute(a in arb_poly(VarRing::p4(), 6, 3), i in 0usize..5, j in 0usize..5) {
        prop_assert_eq!(a.derivative_at(i).derivative_at(j), a.derivative_at(j).derivative_at(i));
    }

    #[test]
    fn euler_identity(p in (0u32..5).prop_flat_map(|d| arb_homogeneous(VarRing::p4(), d))) {
        let ring = p.ring().clone();
        let d = p.total_degree().unwrap_or(0);
        let mut lhs = Poly::zero(&ring);
        for i in 0..ring.nvars() {
            lhs = &lhs + &(&Poly::var_at(&ring, i) * &p.derivative_at(i));
        }
        prop_assert_eq!(lhs, p.scale(&q(d as i64, 1)));
    }
}
