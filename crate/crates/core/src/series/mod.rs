//! Holomorphic solutions at `t = 0` through the coefficient recursion of a
//! Fuchsian operator with exponents `(0, 0)` there.

use serde::Serialize;
use thiserror::Error;

use crate::numring::{factor_small, s_integral, Field, QAlgebra, QuadNum, Rational, Ring};
use crate::picardfuchs::{local_exponents, FuchsOp, SingPoint};
use crate::polyalg::{Poly, SeriesPrefix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("local exponents at t = 0 are not (0, 0)")]
    ExponentNormalization,
    #[error("operator is not Fuchsian at t = 0")]
    NotFuchsian,
}

/// `sum_k D_k(j) u_{j-k} = 0` for `k = -1 ..= top`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Recursion {
    /// Number of terms minus one (`r - 2` for `r` singular points).
    pub order: usize,
    /// `D_k(j)` for `k = -1, 0, ..., order - 1`.
    pub coeff_polys: Vec<Poly<QuadNum>>,
    /// `D_{-1}(j) = m (j + 1)^2`.
    pub m: QuadNum,
    /// `D_top(j) = (j + gamma - top)^2` when the top polynomial is a square.
    #[serde(serialize_with = "opt_rational")]
    pub gamma: Option<Rational>,
}

fn opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    q.as_ref().map(crate::numring::rational_to_string).serialize(s)
}

impl Recursion {
    /// `D_k(j)` evaluated at an integer `j`.
    pub fn coeff(&self, k: i64, j: i64) -> QuadNum {
        let p = &self.coeff_polys[(k + 1) as usize];
        p.eval(&QuadNum::int(j, *p.scalar_ctx()))
    }

    /// Largest offset `k`.
    pub fn top(&self) -> i64 {
        self.coeff_polys.len() as i64 - 2
    }
}

/// Falling factorial `j (j-1) ... (j-d+1)` as a polynomial in `j`.
fn falling(d: i64, deg: usize) -> Poly<QuadNum> {
    (0..deg).fold(Poly::one(&d), |acc: Poly<QuadNum>, i| {
        acc.mul(&Poly::new(d, vec![QuadNum::int(-(i as i64), d), QuadNum::int(1, d)]))
    })
}

pub fn build_recursion(l: &FuchsOp) -> Result<Recursion, SeriesError> {
    let d = *l.a.num().scalar_ctx();
    let zero = Rational::from_integer(0.into());
    match local_exponents(l, &SingPoint::rational(&QuadNum::int(0, d))) {
        Ok(e) if e == (zero.clone(), zero.clone()) => {}
        Ok(_) => return Err(SeriesError::ExponentNormalization),
        Err(_) => return Err(SeriesError::NotFuchsian),
    }
    let ps = l.cleared();
    // F_s(j) = sum_d p_{d, s+d} j^(d falling); coefficient of t^n in the
    // cleared operator applied to u is sum_s F_s(n - s) u_{n-s}.
    let smax = (0..3)
        .map(|dd| ps[dd].deg() - dd as i64)
        .max()
        .unwrap()
        .max(-1);
    let f = |s: i64| {
        (0..3usize).fold(Poly::zero(&d), |acc: Poly<QuadNum>, dd| {
            let k = s + dd as i64;
            if k < 0 {
                return acc;
            }
            acc.add(&falling(d, dd).mul_scalar(&ps[dd].coeff(k as usize)))
        })
    };
    if !f(-2).is_zero() {
        return Err(SeriesError::NotFuchsian);
    }
    // D_k(j) = F_k(j - k).
    let coeff_polys: Vec<_> = (-1..=smax)
        .map(|k| f(k).compose(&Poly::new(d, vec![QuadNum::int(-k, d), QuadNum::int(1, d)])))
        .collect();
    let m = ps[2].coeff(1);
    let top = coeff_polys.last().unwrap();
    let gamma = (top.deg() == 2 && top.coeff(2).is_one())
        .then(|| top.coeff(1).scale(&Rational::new(1.into(), 2.into())))
        .filter(|h| h.mul(h) == top.coeff(0))
        .and_then(|h| h.as_rational().cloned())
        .map(|h| h + Rational::from_integer(smax.into()));
    Ok(Recursion {
        order: coeff_polys.len() - 1,
        coeff_polys,
        m,
        gamma,
    })
}

/// The solution `u` with `u_0 = 1`, to order `n`.
pub fn holomorphic_solution(l: &FuchsOp, n: usize) -> Result<SeriesPrefix<QuadNum>, SeriesError> {
    let rec = build_recursion(l)?;
    Ok(solve_recursion(&rec, n))
}

pub fn solve_recursion(rec: &Recursion, n: usize) -> SeriesPrefix<QuadNum> {
    let d = rec.m.disc();
    let mut u = vec![QuadNum::int(1, d)];
    for j in 0..n as i64 {
        // D_{-1}(j) u_{j+1} = -sum_{k >= 0} D_k(j) u_{j-k}.
        let rhs = (0..=rec.top().min(j)).fold(QuadNum::int(0, d), |acc, k| {
            acc.sub(&rec.coeff(k, j).mul(&u[(j - k) as usize]))
        });
        let lead = rec.coeff(-1, j);
        u.push(rhs.div(&lead).expect("D_{-1}(j) = m (j+1)^2 is nonzero"));
    }
    SeriesPrefix::new(u)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    /// Primes outside `S` in the denominator; `0` stands for an
    /// unfactored cofactor.
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionReport {
    pub prefix: SeriesPrefix<QuadNum>,
    pub s_used: Vec<u64>,
    pub max_checked: usize,
    pub violations: Vec<Violation>,
    /// Primes occurring in any denominator.
    pub denominator_primes: Vec<u64>,
}

fn denominator_primes(x: &QuadNum) -> Vec<u64> {
    let (fs, rest) = factor_small(&x.denominator(), 1 << 20);
    let mut ps: Vec<u64> = fs.into_iter().map(|(p, _)| p).collect();
    if rest != 1.into() {
        ps.push(0);
    }
    ps
}

pub fn integrality_report(l: &FuchsOp, s: &[u64], n: usize) -> Result<SolutionReport, SeriesError> {
    let prefix = holomorphic_solution(l, n)?;
    let mut violations = Vec::new();
    let mut all = std::collections::BTreeSet::new();
    for (j, c) in prefix.coeffs().iter().enumerate() {
        let ps = denominator_primes(c);
        all.extend(ps.iter().copied());
        if !s_integral(c, s) {
            let mut bad: Vec<u64> = ps.into_iter().filter(|p| !s.contains(p)).collect();
            if bad.is_empty() {
                bad.push(2);
            }
            violations.push(Violation { index: j, primes: bad });
        }
    }
    Ok(SolutionReport {
        prefix,
        s_used: s.to_vec(),
        max_checked: n,
        violations,
        denominator_primes: all.into_iter().collect(),
    })
}

/// First four published coefficients of `u_i` for `D = 17`.
pub fn printed_prefix(d: i64, eps: u8, i: usize) -> Option<Vec<QuadNum>> {
    if d != 17 {
        return None;
    }
    let q = |a, b, den| QuadNum::from_ints(a, b, den, 17);
    let coeffs = match i {
        1 => vec![q(1, 0, 1), q(81, -15, 16), q(4845, -1155, 64), q(3200225, -775495, 2048)],
        2 => vec![q(1, 0, 1), q(23, -5, 8), q(5561, -1343, 128), q(452759, -109793, 512)],
        _ => return None,
    };
    Some(if eps == 0 {
        coeffs.iter().map(QuadNum::conj).collect()
    } else {
        coeffs
    })
}

/// `P_2 u'' + P_1 u' + P_0 u` for a polynomial `u`.
pub fn apply_cleared(l: &FuchsOp, u: &Poly<QuadNum>) -> Poly<QuadNum> {
    let [p0, p1, p2] = l.cleared();
    let du = u.derivative();
    p2.mul(&du.derivative()).add(&p1.mul(&du)).add(&p0.mul(u))
}

#[cfg(test)]
mod tests;
