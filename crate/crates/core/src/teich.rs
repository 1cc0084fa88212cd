//! Splitting prototypes, spin, cusp normal forms and stratum constants of
//! genus-2 Teichmüller curves.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::numring::{
    is_square, rational_serde, squarefree_decomposition_int, Field, QAlgebra, QuadNum, Rational,
    Ring,
};
use crate::polyalg::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TeichError {
    #[error("D = {0} is not a discriminant (D >= 5, D = 0 or 1 mod 4)")]
    BadDiscriminant(i64),
    #[error("W_D empty for D <= 4 (D = {0})")]
    EmptyLocus(i64),
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// Splitting prototype `(a, b, c, e)` of discriminant `D = e^2 + 4bc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Prototype {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub e: i64,
    #[serde(rename = "D")]
    pub d: i64,
}

impl Prototype {
    pub fn new(a: i64, b: i64, c: i64, e: i64) -> Self {
        Prototype {
            a,
            b,
            c,
            e,
            d: e * e + 4 * b * c,
        }
    }

    pub fn is_valid(&self) -> bool {
        let g = self.b.gcd(&self.c);
        self.d == self.e * self.e + 4 * self.b * self.c
            && self.b > 0
            && self.c > 0
            && 0 <= self.a
            && self.a < g
            && self.c + self.e < self.b
            && g.gcd(&self.a).gcd(&self.e) == 1
    }

    /// `λ = (e + sqrt D)/2`.
    pub fn lambda(&self) -> QuadNum {
        QuadNum::from_ints(self.e, 1, 2, self.d)
    }
}

fn check_discriminant(d: i64) -> Result<(), TeichError> {
    if d.rem_euclid(4) > 1 {
        return Err(TeichError::BadDiscriminant(d));
    }
    if d <= 4 {
        return Err(TeichError::EmptyLocus(d));
    }
    Ok(())
}

/// All prototypes of discriminant `D`, sorted by `(e, b, c, a)`.
pub fn enumerate_prototypes(d: i64) -> Result<Vec<Prototype>, TeichError> {
    check_discriminant(d)?;
    let mut out = Vec::new();
    let emax = (d as f64).sqrt() as i64 + 1;
    for e in -emax..=emax {
        if e * e >= d || (d - e * e) % 4 != 0 {
            continue;
        }
        let bc = (d - e * e) / 4;
        for b in 1..=bc {
            if bc % b != 0 {
                continue;
            }
            let c = bc / b;
            for a in 0..b.gcd(&c) {
                let pt = Prototype::new(a, b, c, e);
                if pt.is_valid() {
                    out.push(pt);
                }
            }
        }
    }
    out.sort_by_key(|p| (p.e, p.b, p.c, p.a));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Spin {
    /// Raw value of the spin formula.
    pub value: u8,
    /// `false` unless `D = 1 mod 8` (the invariant then does not separate
    /// components).
    pub separating: bool,
}

/// `ε = (e - F)/2 + (c + 1)(a + b + ab) mod 2` with `D = E F^2`.
pub fn spin(pt: &Prototype) -> Spin {
    let (_, f) = squarefree_decomposition_int(pt.d);
    let raw = (pt.e - f).div_euclid(2) + (pt.c + 1) * (pt.a + pt.b + pt.a * pt.b);
    Spin {
        value: raw.rem_euclid(2) as u8,
        separating: pt.d.rem_euclid(8) == 1 && !is_square(&pt.d.into()),
    }
}

/// Normal form `y^2 = (x-μ)(x-μ-b^2)^2(x-μ-λ^2)^2` of the cusp.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspNormalForm {
    pub prototype: Prototype,
    pub mu: QuadNum,
    pub lambda_sq: QuadNum,
    pub b_sq: QuadNum,
    pub quintic: Poly<QuadNum>,
}

impl CuspNormalForm {
    /// The three distinct roots `μ, μ + b^2, μ + λ^2`.
    pub fn roots(&self) -> [QuadNum; 3] {
        [
            self.mu.clone(),
            self.mu.add(&self.b_sq),
            self.mu.add(&self.lambda_sq),
        ]
    }

    pub fn conj(&self) -> CuspNormalForm {
        CuspNormalForm {
            prototype: self.prototype,
            mu: self.mu.conj(),
            lambda_sq: self.lambda_sq.conj(),
            b_sq: self.b_sq.clone(),
            quintic: self.quintic.map(self.prototype.d, |c| c.conj()),
        }
    }
}

/// `μ = λ b (b + c) / sqrt D`.
pub fn normal_form_mu(pt: &Prototype) -> QuadNum {
    let d = pt.d;
    let inv_sqrt = QuadNum::from_ints(0, 1, d, d);
    pt.lambda()
        .mul(&QuadNum::int(pt.b * (pt.b + pt.c), d))
        .mul(&inv_sqrt)
}

pub fn normal_form(pt: &Prototype) -> CuspNormalForm {
    let d = pt.d;
    let lambda = pt.lambda();
    let mu = normal_form_mu(pt);
    let lambda_sq = lambda.mul(&lambda);
    let b_sq = QuadNum::int(pt.b * pt.b, d);
    let lin = |r: &QuadNum| Poly::linear_root(r);
    let quintic = lin(&mu)
        .mul(&lin(&mu.add(&b_sq)).pow(2))
        .mul(&lin(&mu.add(&lambda_sq)).pow(2));
    CuspNormalForm {
        prototype: *pt,
        mu,
        lambda_sq,
        b_sq,
        quintic,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaloisCertificate {
    #[serde(rename = "D")]
    pub d: i64,
    pub conj_lambda_sq_ok: bool,
    pub conj_mu_ok: bool,
    pub mu_ratio: QuadNum,
    pub mu_ratio_matches_closed_form: bool,
    pub lambda_sq_over_b_sq: QuadNum,
    /// `4(1+sqrt D)^2/(D-1)^2`, the exact value.
    pub lambda_sq_over_b_sq_exact_form: QuadNum,
    /// `4(1+sqrt D)^2/(D-1)`, as printed in the literature.
    pub lambda_sq_over_b_sq_printed_form: QuadNum,
    /// `(λ_1^2/b^2) / (μ_1/μ_{-1})`; the certificate needs it `!= 1`.
    pub obstruction_ratio: QuadNum,
    pub passes: bool,
}

pub fn galois_spin_swap_certificate(d: i64) -> Result<GaloisCertificate, TeichError> {
    if d.rem_euclid(8) != 1 || is_square(&d.into()) || d < 9 {
        return Err(TeichError::NotApplicable(format!(
            "D = {d} must be a non-square with D = 1 mod 8"
        )));
    }
    let b = (d - 1) / 4;
    let p1 = Prototype::new(0, b, 1, 1);
    let pm = Prototype::new(0, b, 1, -1);
    let (n1, nm) = (normal_form(&p1), normal_form(&pm));
    let conj_lambda_sq_ok = n1.lambda_sq.conj() == nm.lambda_sq;
    let conj_mu_ok = n1.mu.conj() == nm.mu;
    let mu_ratio = n1.mu.div(&nm.mu).expect("μ_{-1} != 0");
    let one_plus = QuadNum::from_ints(1, 1, 1, d);
    let sq = one_plus.mul(&one_plus);
    let closed = sq.scale(&Rational::new(1.into(), (d - 1).into()));
    let lambda_ratio = p1.lambda().div(&pm.lambda()).unwrap();
    let lambda_sq_over_b_sq = n1.lambda_sq.div(&n1.b_sq).unwrap();
    let exact = sq.scale(&Rational::new(4.into(), ((d - 1) * (d - 1)).into()));
    let printed = sq.scale(&Rational::new(4.into(), (d - 1).into()));
    let obstruction_ratio = lambda_sq_over_b_sq.div(&mu_ratio).unwrap();
    let mu_ratio_matches_closed_form = mu_ratio == closed && mu_ratio == lambda_ratio;
    let passes = conj_lambda_sq_ok
        && conj_mu_ok
        && mu_ratio_matches_closed_form
        && lambda_sq_over_b_sq == exact
        && !obstruction_ratio.is_one();
    Ok(GaloisCertificate {
        d,
        conj_lambda_sq_ok,
        conj_mu_ok,
        mu_ratio,
        mu_ratio_matches_closed_form,
        lambda_sq_over_b_sq,
        lambda_sq_over_b_sq_exact_form: exact,
        lambda_sq_over_b_sq_printed_form: printed,
        obstruction_ratio,
        passes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Stratum {
    /// One double zero.
    #[serde(rename = "ΩM2(2)")]
    DoubleZero,
    /// Two simple zeros.
    #[serde(rename = "ΩM2(1,1)")]
    SimpleZeros,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StratumConstants {
    pub stratum: Stratum,
    #[serde(serialize_with = "rational_serde::pair")]
    pub lyapunov: (Rational, Rational),
    pub r1: u32,
    #[serde(with = "rational_serde")]
    pub gamma1: Rational,
    #[serde(with = "rational_serde")]
    pub gamma2: Rational,
    #[serde(rename = "M1")]
    pub m1: Option<QuadNum>,
    #[serde(rename = "M2")]
    pub m2: Option<QuadNum>,
}

pub fn stratum_constants(stratum: Stratum, r1: u32) -> StratumConstants {
    assert!(r1 >= 3, "at least three cusps");
    let lambda2 = match stratum {
        Stratum::DoubleZero => Rational::new(1.into(), 3.into()),
        Stratum::SimpleZeros => Rational::new(1.into(), 2.into()),
    };
    let gamma1 = Rational::new((r1 as i64 - 2).into(), 2.into());
    StratumConstants {
        stratum,
        lyapunov: (Rational::from_integer(1.into()), lambda2.clone()),
        r1,
        gamma2: &lambda2 * &gamma1,
        gamma1,
        m1: None,
        m2: None,
    }
}

fn cyclotomic(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = exact_div_int(&p, &cyclotomic(d));
        }
    }
    p
}

fn exact_div_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let (da, db) = (a.len() - 1, b.len() - 1);
    let mut q = vec![0i64; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db] / b[db];
        q[k] = c;
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= c * bc;
        }
    }
    q
}

/// Fundamental discriminant of `Q(sqrt D)`.
pub fn fundamental_discriminant(d: i64) -> i64 {
    let (e, _) = squarefree_decomposition_int(d);
    if e.rem_euclid(4) == 1 {
        e
    } else {
        4 * e
    }
}

/// Fundamental discriminants of the real quadratic fields
/// `Q(ζ_n + ζ_n^{-1})`.
pub fn quadratic_real_cyclotomic_discriminants() -> Vec<i64> {
    let mut out = Vec::new();
    for n in 1..=64u64 {
        let phi = cyclotomic(n);
        if phi.len() != 5 {
            continue;
        }
        // Palindromic x^4 + a x^3 + b x^2 + a x + 1 = x^2 (y^2 + a y + b - 2)
        // with y = x + 1/x.
        let (a, b) = (phi[3], phi[2]);
        let disc = a * a - 4 * (b - 2);
        let f = fundamental_discriminant(disc);
        if !out.contains(&f) {
            out.push(f);
        }
    }
    out.sort();
    out
}

/// Whether the trace field `Q(sqrt D)` can arise from a triangle group
/// `Δ(n, m, ∞)`, i.e. equals some `Q(ζ_n + ζ_n^{-1}, ζ_m + ζ_m^{-1})`.
pub fn triangle_obstruction(d: i64) -> bool {
    if is_square(&d.into()) || d <= 1 {
        return false;
    }
    quadratic_real_cyclotomic_discriminants().contains(&fundamental_discriminant(d))
}
