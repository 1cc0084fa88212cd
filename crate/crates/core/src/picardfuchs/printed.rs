//! Operators as printed in the literature, for comparison with the derived
//! ones.

use serde::Serialize;

use crate::families::{family, Cusp, FamilyModel};
use crate::numring::{QuadNum, Ring};
use crate::polyalg::{Poly, RationalFunction};

use super::ode::{FuchsOp, SingKind};
use super::PfError;

fn q(a: i64, b: i64, den: i64, d: i64) -> QuadNum {
    QuadNum::from_ints(a, b, den, d)
}

fn poly(d: i64, cs: &[(i64, i64)]) -> Poly<QuadNum> {
    Poly::new(d, cs.iter().map(|&(a, b)| q(a, b, 1, d)).collect())
}

fn cusp_polys(fm: &FamilyModel) -> Vec<Poly<QuadNum>> {
    fm.cusps
        .iter()
        .filter_map(|c| match c {
            Cusp::Finite(p) => Some(p.minpoly().clone()),
            Cusp::Infinity => None,
        })
        .collect()
}

/// Sum of `m'/m` over the finite cusps.
fn log_derivative_sum(ms: &[Poly<QuadNum>], d: i64) -> RationalFunction {
    ms.iter().fold(RationalFunction::zero(&d), |acc, m| {
        acc.add(&RationalFunction::new(m.derivative(), m.clone()))
    })
}

/// Monic quadratic whose roots are the extra singularities of `L_2`.
pub fn ks_quadratic(d: i64) -> Poly<QuadNum> {
    match d {
        17 => poly(17, &[(128, 0), (137, -95), (128, 0)]).monic(),
        13 => Poly::new(13, vec![q(1, 0, 1, 13), q(5, 28, 48, 13), q(1, 0, 1, 13)]),
        _ => panic!("D = 13 or 17"),
    }
}

/// Printed `B` numerator and the scalar in its denominator.
fn b_data(d: i64, i: usize) -> (Poly<QuadNum>, i64) {
    match (d, i) {
        (17, 1) => (poly(17, &[(1296, -240), (-4557, 891), (576, 0)]), 1 << 8),
        (17, 2) => (
            poly(
                17,
                &[
                    (47104, -10240),
                    (-177536, 38528),
                    (-260375, 69633),
                    (35616, -12768),
                    (4096, 0),
                ],
            ),
            1 << 14,
        ),
        (13, 1) => (poly(13, &[(192, -120), (-576, 333), (1152, 0)]), 1 << 9),
        (13, 2) => (
            poly(
                13,
                &[
                    (-80181, 21234),
                    (0, 0),
                    (698944, 5744),
                    (67584, 135936),
                    (98304, 0),
                ],
            ),
            3 << 17,
        ),
        _ => panic!("D = 13 or 17, i = 1 or 2"),
    }
}

/// Printed operator for `ω_i` on the family `(D, eps)`; the `eps = 0`
/// operator for `D = 17` is the conjugate of the printed one.
pub fn printed_operator(d: i64, eps: u8, i: usize) -> Result<FuchsOp, PfError> {
    if !(1..=2).contains(&i) {
        return Err(PfError::BadForm);
    }
    let fm = family(d, 1).map_err(|_| PfError::BadForm)?;
    let cusps = cusp_polys(&fm);
    let pi = cusps.iter().fold(Poly::one(&d), |acc: Poly<QuadNum>, m| acc.mul(m));
    let (num, scalar) = b_data(d, i);
    let mut a = log_derivative_sum(&cusps, d);
    let mut den = pi.mul_scalar(&QuadNum::int(scalar, d));
    if i == 2 {
        let ks = ks_quadratic(d);
        a = a.sub(&RationalFunction::new(ks.derivative(), ks.clone()));
        den = den.mul(&ks);
    }
    let b = RationalFunction::new(num, den);
    let known: Vec<_> = fm
        .cusps
        .iter()
        .filter_map(|c| match c {
            Cusp::Finite(p) => Some((p.clone(), SingKind::Cusp)),
            Cusp::Infinity => None,
        })
        .collect();
    let op = FuchsOp::new(a, b, &known, SingKind::KsZero)?;
    Ok(if d == 17 && eps == 0 { op.conj() } else { op })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PrintedComparison {
    pub a_equal: bool,
    pub b_equal: bool,
    /// Numerator of the derived `B` in the printed normalization, when it
    /// is a polynomial there.
    pub b_numerator_derived: Option<Poly<QuadNum>>,
    pub b_numerator_printed: Poly<QuadNum>,
    /// Powers of `t` where the two numerators differ.
    pub mismatched_powers: Vec<usize>,
}

pub fn compare_printed(derived: &FuchsOp, d: i64, eps: u8, i: usize) -> Result<PrintedComparison, PfError> {
    let printed = printed_operator(d, eps, i)?;
    // Printed B = numerator / (scalar * Π * ks); recover the numerator.
    let (mut num_p, scalar) = b_data(d, i);
    let fm = family(d, 1).map_err(|_| PfError::BadForm)?;
    let mut den = cusp_polys(&fm)
        .iter()
        .fold(Poly::one(&d), |acc: Poly<QuadNum>, m| acc.mul(m))
        .mul_scalar(&QuadNum::int(scalar, d));
    if i == 2 {
        den = den.mul(&ks_quadratic(d));
    }
    let conj = |p: &Poly<QuadNum>| p.map(d, |c| c.conj());
    if d == 17 && eps == 0 {
        num_p = conj(&num_p);
        den = conj(&den);
    }
    let scaled = derived.b.mul(&RationalFunction::from_poly(den));
    let num_d = scaled.den().is_one().then(|| scaled.num().clone());
    let mismatched = match &num_d {
        Some(n) => (0..=n.deg().max(num_p.deg()).max(0) as usize)
            .filter(|&k| n.coeff(k) != num_p.coeff(k))
            .collect(),
        None => vec![],
    };
    Ok(PrintedComparison {
        a_equal: derived.a == printed.a,
        b_equal: derived.b == printed.b,
        b_numerator_derived: num_d,
        b_numerator_printed: num_p,
        mismatched_powers: mismatched,
    })
}
