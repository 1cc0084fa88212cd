use super::*;
use crate::families::family;
use crate::picardfuchs::{derive_ode, SingKind};
use crate::polyalg::RationalFunction;

fn q(a: i64, b: i64, den: i64, d: i64) -> QuadNum {
    QuadNum::from_ints(a, b, den, d)
}

fn op(fm_d: i64, eps: u8, i: usize) -> FuchsOp {
    derive_ode(&family(fm_d, eps).unwrap(), i).unwrap()
}

fn jpoly(d: i64, cs: &[Rational]) -> Poly<QuadNum> {
    Poly::new(d, cs.iter().map(|c| QuadNum::new(c.clone(), Rational::from_integer(0.into()), d)).collect())
}

fn r(n: i64, den: i64) -> Rational {
    Rational::new(n.into(), den.into())
}

#[test]
fn recursion_shapes_17() {
    let l1 = op(17, 1, 1);
    let rec = build_recursion(&l1).unwrap();
    assert_eq!(rec.coeff_polys.len(), 4);
    assert_eq!(rec.order, 3);
    assert!(rec.m.is_one() || rec.m.neg().is_one(), "M = {}", rec.m);
    assert_eq!(rec.gamma, Some(r(3, 2)));
    // D_2(j) = (j - 1/2)^2.
    assert_eq!(rec.coeff_polys[3], jpoly(17, &[r(1, 4), r(-1, 1), r(1, 1)]));

    let rec2 = build_recursion(&op(17, 1, 2)).unwrap();
    assert_eq!(rec2.coeff_polys.len(), 6);
    assert!(rec2.m.is_one() || rec2.m.neg().is_one(), "M = {}", rec2.m);
    assert_eq!(rec2.gamma, Some(r(1, 2)));
}

#[test]
fn boundary_identities() {
    for (d, eps, i) in [(17, 1, 1), (17, 1, 2), (13, 0, 1), (13, 0, 2)] {
        let rec = build_recursion(&op(d, eps, i)).unwrap();
        let gamma = QuadNum::new(rec.gamma.clone().unwrap(), Rational::from_integer(0.into()), d);
        let top = rec.top();
        for j in 0..=500i64 {
            let jq = QuadNum::int(j + 1, d);
            assert_eq!(rec.coeff(-1, j), rec.m.mul(&jq).mul(&jq));
            let s = QuadNum::int(j - top, d).add(&gamma);
            assert_eq!(rec.coeff(top, j), s.mul(&s));
        }
    }
}

#[test]
fn printed_prefixes_17() {
    let u1 = holomorphic_solution(&op(17, 1, 1), 3).unwrap();
    assert_eq!(
        u1.coeffs(),
        &[
            QuadNum::int(1, 17),
            q(81, -15, 16, 17),
            q(4845, -1155, 64, 17),
            q(3200225, -775495, 2048, 17),
        ]
    );
    assert_eq!(printed_prefix(17, 1, 1).unwrap(), u1.coeffs());
    let u2 = holomorphic_solution(&op(17, 1, 2), 3).unwrap();
    assert_eq!(
        u2.coeffs(),
        &[
            QuadNum::int(1, 17),
            q(23, -5, 8, 17),
            q(5561, -1343, 128, 17),
            q(452759, -109793, 512, 17),
        ]
    );
    assert_eq!(printed_prefix(17, 1, 2).unwrap(), u2.coeffs());
    let c = holomorphic_solution(&op(17, 0, 2), 3).unwrap();
    assert_eq!(printed_prefix(17, 0, 2).unwrap(), c.coeffs());
}

#[test]
fn conjugate_component_gives_conjugate_series() {
    let u1 = holomorphic_solution(&op(17, 1, 1), 10).unwrap();
    let u0 = holomorphic_solution(&op(17, 0, 1), 10).unwrap();
    for (a, b) in u1.coeffs().iter().zip(u0.coeffs()) {
        assert_eq!(a.conj(), *b);
    }
}

#[test]
fn prefix_annihilated() {
    let n = 30;
    for (d, eps, i) in [(17, 1, 1), (13, 0, 2)] {
        let l = op(d, eps, i);
        let u = holomorphic_solution(&l, n).unwrap().to_poly();
        let res = apply_cleared(&l, &u);
        for k in 0..=(n - 2) {
            assert!(res.coeff(k).is_zero(), "D = {d}, i = {i}, t^{k}");
        }
    }
}

fn toy_gauss(d: i64) -> FuchsOp {
    let t1t = Poly::from_i64s(&d, &[0, 1, -1]);
    let a = RationalFunction::new(Poly::from_i64s(&d, &[1, -2]), t1t.clone());
    let b = RationalFunction::new(Poly::constant(q(-1, 0, 4, d)), t1t);
    FuchsOp::new(a, b, &[], SingKind::Other).unwrap()
}

#[test]
fn hypergeometric_against_closed_form() {
    let u = holomorphic_solution(&toy_gauss(5), 12).unwrap();
    // ((1/2)_n / n!)^2
    let mut c = r(1, 1);
    for (n, x) in u.coeffs().iter().enumerate() {
        assert_eq!(x.as_rational(), Some(&(c.clone() * c.clone())), "n = {n}");
        c = c * r(2 * n as i64 + 1, 2 * (n as i64 + 1));
    }
    assert_eq!(u.coeff(2), &q(9, 0, 64, 5));
}

#[test]
fn toy_first_order_log() {
    // u'' + u'/t: only constants are holomorphic.
    let d = 17;
    let a = RationalFunction::new(Poly::one(&d), Poly::from_i64s(&d, &[0, 1]));
    let b = RationalFunction::from_int(&d, &0.into());
    let l = FuchsOp::new(a, b, &[], SingKind::Other).unwrap();
    let rec = build_recursion(&l).unwrap();
    assert_eq!(rec.coeff_polys[0], Poly::from_i64s(&d, &[1, 2, 1]));
    let u = holomorphic_solution(&l, 5).unwrap();
    assert!(u.coeff(0).is_one() && u.coeffs()[1..].iter().all(|c| c.is_zero()));
}

#[test]
fn exponent_normalization_required() {
    let d = 17;
    let l = op(d, 1, 1);
    let t = RationalFunction::from_poly(Poly::from_i64s(&d, &[0, 1]));
    let shifted = crate::picardfuchs::gauge_transform(&l, &t).unwrap();
    assert_eq!(build_recursion(&shifted), Err(SeriesError::ExponentNormalization));
}

#[test]
fn integrality_small() {
    let l1 = op(17, 1, 1);
    let rep = integrality_report(&l1, &[2, 17], 60).unwrap();
    assert!(rep.violations.is_empty());
    assert_eq!(rep.denominator_primes, vec![2]);
    // Monotone in S: dropping 17 costs nothing here.
    assert!(integrality_report(&l1, &[2], 60).unwrap().violations.is_empty());
    let rep13 = integrality_report(&op(13, 0, 2), &[2, 3, 13], 60).unwrap();
    assert!(rep13.violations.is_empty());
    assert!(rep13.denominator_primes.iter().all(|p| [2, 3].contains(p)));
    // With S empty the powers of 2 are reported.
    let bad = integrality_report(&l1, &[], 5).unwrap();
    assert!(bad.violations.iter().all(|v| v.primes == vec![2]));
    assert!(!bad.violations.is_empty());
}
