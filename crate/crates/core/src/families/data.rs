//! Hard-coded coefficients of the universal families over `Q(sqrt D)[t]`.

use crate::numring::{QAlgebra, QuadNum, Rational};
use crate::polyalg::Poly;

/// `a + b sqrt D` with integer parts.
fn q(a: i64, b: i64, d: i64) -> QuadNum {
    QuadNum::from_ints(a, b, 1, d)
}

/// Polynomial in `t` from `(rational part, sqrt part)` pairs, constant term
/// first, scaled by `1/den`.
fn poly(d: i64, den: i64, cs: &[(i64, i64)]) -> Poly<QuadNum> {
    let s = Rational::new(1.into(), den.into());
    Poly::new(d, cs.iter().map(|&(a, b)| q(a, b, d).scale(&s)).collect())
}

/// Component `eps = 1` of discriminant 17.
pub(super) fn coefficients_17() -> Vec<Poly<QuadNum>> {
    let d = 17;
    let c0a = (1755475, 425765);
    let c0b = (-5289173, -1282803);
    let c0c = (3533762, 857038);
    let c1a = (331187, 80325);
    let c1b = (-1281964, -310964);
    let c1c = (1901714, 461278);
    let c2a = (-15783, -3825);
    let c2b = (15687, 3825);
    let c3a = (-4551, -1105);
    vec![
        poly(d, 1, &[c0a, c0b, c0c, c0c, c0b, c0a]),
        poly(d, 2, &[c1a, c1b, c1c, c1b, c1a]),
        poly(d, 4, &[c2a, c2b, c2b, c2a]),
        poly(d, 8, &[c3a, (8918, 2210), c3a]),
        poly(d, 1, &[(3, 0), (3, 0)]),
        poly(d, 1, &[(1, 0)]),
    ]
}

/// The constant term of `c_2` as it is usually printed. It breaks the
/// reciprocity `t^3 c_2(1/t) = c_2(t)`.
pub(super) fn c2_printed_constant_17() -> QuadNum {
    q(-15783, 3825, 17).scale(&Rational::new(1.into(), 4.into()))
}

pub(super) fn coefficients_13() -> Vec<Poly<QuadNum>> {
    let d = 13;
    let c0a = (5717606400, -1585778688);
    let c0b = (-17158488768, 4758908544);
    let c0c = (11440882287, -3173129856);
    let c1a = (114041088, -31629312);
    let c1b = (-448550784, 124405632);
    let c1c = (669019797, -185552640);
    let c2a = (-27000, 7488);
    let c2b = (26991, -7488);
    let c3a = (-14992, 4160);
    vec![
        poly(d, 1 << 15, &[c0a, c0b, c0c, c0c, c0b, c0a]),
        poly(d, 1 << 12, &[c1a, c1b, c1c, c1b, c1a]),
        poly(d, 1 << 5, &[c2a, c2b, c2b, c2a]),
        poly(d, 1 << 6, &[c3a, (30011, -8320), c3a]),
        poly(d, 1, &[(1, 0), (1, 0)]),
        poly(d, 1, &[(1, 0)]),
    ]
}

/// `τ = (31 - 7 sqrt 17)/2`.
pub(super) fn tau_17() -> QuadNum {
    QuadNum::from_ints(31, -7, 2, 17)
}

/// `τ^{-1} = (31 + 7 sqrt 17)/64`.
pub(super) fn tau_inv_17() -> QuadNum {
    QuadNum::from_ints(31, 7, 64, 17)
}

/// `t^2 + (71 sqrt 13/128) t + 1`, the minimal polynomial of the cusp pair.
pub(super) fn rho_minpoly_13() -> Poly<QuadNum> {
    Poly::new(
        13,
        vec![
            QuadNum::int(1, 13),
            QuadNum::from_ints(0, 71, 128, 13),
            QuadNum::int(1, 13),
        ],
    )
}
