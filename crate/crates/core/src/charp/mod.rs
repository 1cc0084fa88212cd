//! Reduction modulo `p^n`: expansion-coefficient polynomials of
//! `g^{(p^n-1)/2}`, their congruences, Cartier vanishing, polynomial
//! solutions and p-curvature.

mod dense;
mod pcurv;

pub use pcurv::{honda_bound, honda_test, honda_witness, p_curvature, PCurvature};

use serde::Serialize;
use thiserror::Error;

use crate::families::{Cusp, FamilyModel};
use crate::numring::{legendre, NumError, PadicQuad, PrimeContext, QuadNum, Rational, Ring};
use crate::picardfuchs::FuchsOp;
use crate::polyalg::{Poly, SeriesPrefix};
use crate::series::build_recursion;

use dense::Dense;

/// Polynomial in `t` over `O_D / p^n`.
pub type ModPoly = Poly<PadicQuad>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharpError {
    #[error("p = {0} is exceptional for this family")]
    ExceptionalPrime(u64),
    #[error("coefficient {0} has a denominator divisible by p")]
    BadDenominator(String),
    #[error("constant term of the expansion polynomial is not a unit")]
    ConstantTermNotUnit,
    #[error("recursion unavailable: {0}")]
    Recursion(String),
    #[error(transparent)]
    Num(NumError),
}

impl From<NumError> for CharpError {
    fn from(e: NumError) -> Self {
        match e {
            NumError::BadDenominator { value, .. } => CharpError::BadDenominator(value),
            e => CharpError::Num(e),
        }
    }
}

/// Context for `p^n`, refusing primes in the family's exceptional set.
pub fn prime_context(fm: &FamilyModel, p: u64, n: u32) -> Result<PrimeContext, CharpError> {
    if fm.s_exceptional.contains(&p) || p == 2 || legendre(fm.d, p) == 0 {
        return Err(CharpError::ExceptionalPrime(p));
    }
    Ok(PrimeContext::new(fm.d, p, n)?)
}

fn e_of(ctx: &PrimeContext) -> u64 {
    (ctx.modulus() - 1) / 2
}

/// `g^{(p^n-1)/2}` modulo `p^n`, as polynomials in `t` indexed by the power
/// of `x`.
pub fn frob_power(fm: &FamilyModel, ctx: &PrimeContext) -> Result<Vec<ModPoly>, CharpError> {
    check_prime(fm, ctx)?;
    let e = e_of(ctx);
    let h = Dense::from_family(fm, ctx)?.pow_trunc(e, 5 * e as usize);
    Ok((0..=h.x_degree()).map(|k| h.coeff_x(k)).collect())
}

fn check_prime(fm: &FamilyModel, ctx: &PrimeContext) -> Result<(), CharpError> {
    if fm.s_exceptional.contains(&ctx.p()) || ctx.disc() != fm.d {
        return Err(CharpError::ExceptionalPrime(ctx.p()));
    }
    Ok(())
}

/// Coefficients of `x^{p^n-1}`, `x^{2p^n-1}`, `x^{p^n-2}`, `x^{2p^n-2}` in
/// `g^{(p^n-1)/2}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionPolys {
    pub p: u64,
    pub n: u32,
    pub b1: ModPoly,
    pub b2: ModPoly,
    pub c1: ModPoly,
    pub c2: ModPoly,
}

impl ExpansionPolys {
    pub fn b(&self, k: usize) -> &ModPoly {
        if k == 1 {
            &self.b1
        } else {
            &self.b2
        }
    }

    pub fn c(&self, k: usize) -> &ModPoly {
        if k == 1 {
            &self.c1
        } else {
            &self.c2
        }
    }

    /// Reduction to precision `p^m`.
    pub fn truncate(&self, m: u32) -> Self {
        let tr = |f: &ModPoly| truncate_poly(f, m);
        ExpansionPolys {
            p: self.p,
            n: self.n,
            b1: tr(&self.b1),
            b2: tr(&self.b2),
            c1: tr(&self.c1),
            c2: tr(&self.c2),
        }
    }
}

pub fn truncate_poly(f: &ModPoly, m: u32) -> ModPoly {
    let ctx = f.scalar_ctx().with_precision(m);
    Poly::new(ctx, f.coeffs().iter().map(|c| c.truncate(m)).collect())
}

pub fn extract_bc(fm: &FamilyModel, ctx: &PrimeContext) -> Result<ExpansionPolys, CharpError> {
    check_prime(fm, ctx)?;
    let q = ctx.modulus() as usize;
    let e = e_of(ctx);
    let h = Dense::from_family(fm, ctx)?.pow_trunc(e, 2 * q - 1);
    Ok(ExpansionPolys {
        p: ctx.p(),
        n: ctx.n(),
        b1: h.coeff_x(q - 1),
        b2: h.coeff_x(2 * q - 1),
        c1: h.coeff_x(q - 2),
        c2: h.coeff_x(2 * q - 2),
    })
}

/// Conjugation `sqrt D -> -sqrt D` on residues (the Frobenius of the
/// residue field when `p` is inert).
fn conj_elem(c: &PadicQuad) -> PadicQuad {
    c.context().elem(c.c0(), 0).sub(&c.context().elem(0, c.c1()))
}

/// `f^σ(t^q)` for the Frobenius `σ` of `F_{p^k}`, applied `j` times.
pub fn frobenius_twist(f: &ModPoly, j: u32) -> ModPoly {
    let ctx = *f.scalar_ctx();
    let q = ctx.p().pow(j) as usize;
    let mut coeffs = vec![PadicQuad::zero(&ctx); f.coeffs().len().saturating_sub(1) * q + 1];
    for (i, c) in f.coeffs().iter().enumerate() {
        coeffs[i * q] = if j % 2 == 1 { conj_elem(c) } else { *c };
    }
    Poly::new(ctx, coeffs)
}

/// The four expansion polynomials at level `n`, modulo `p`, from the
/// digit expansion of `g^{(p^n-1)/2} = prod_j (g^{(p-1)/2})^{p^j}` in
/// characteristic `p`.
pub fn expansion_mod_p(fm: &FamilyModel, p: u64, n: u32) -> Result<ExpansionPolys, CharpError> {
    let ctx = prime_context(fm, p, 1)?;
    let gpow = frob_power(fm, &ctx)?;
    let amax = gpow.len() - 1;
    let twisted: Vec<Vec<ModPoly>> = (0..n)
        .map(|j| gpow.iter().map(|f| frobenius_twist(f, j)).collect())
        .collect();
    fn digits(tw: &[Vec<ModPoly>], amax: usize, p: u64, j: usize, rest: u64, ctx: &PrimeContext) -> ModPoly {
        if j == tw.len() {
            return if rest == 0 { Poly::one(ctx) } else { Poly::zero(ctx) };
        }
        let mut acc = Poly::zero(ctx);
        let mut a = rest % p;
        while a as usize <= amax && a <= rest {
            let f = &tw[j][a as usize];
            if !f.is_zero() {
                let tail = digits(tw, amax, p, j + 1, (rest - a) / p, ctx);
                acc = acc.add(&f.mul(&tail));
            }
            a += p;
        }
        acc
    }
    let q = p.pow(n);
    let coeff = |k: u64| digits(&twisted, amax, p, 0, k, &ctx);
    Ok(ExpansionPolys {
        p,
        n,
        b1: coeff(q - 1),
        b2: coeff(2 * q - 1),
        c1: coeff(q - 2),
        c2: coeff(2 * q - 2),
    })
}

/// Reduction of the cleared operator `[P_0, P_1, P_2]` modulo `p^n`.
pub fn reduce_operator(l: &FuchsOp, ctx: &PrimeContext) -> Result<[ModPoly; 3], CharpError> {
    let ps = l.cleared();
    let red = |f: &Poly<QuadNum>| -> Result<ModPoly, CharpError> {
        Ok(Poly::new(
            *ctx,
            f.coeffs()
                .iter()
                .map(|c| PadicQuad::reduce(c, ctx))
                .collect::<Result<Vec<_>, _>>()?,
        ))
    };
    Ok([red(&ps[0])?, red(&ps[1])?, red(&ps[2])?])
}

pub fn apply_mod(ops: &[ModPoly; 3], f: &ModPoly) -> ModPoly {
    let df = f.derivative();
    ops[2]
        .mul(&df.derivative())
        .add(&ops[1].mul(&df))
        .add(&ops[0].mul(f))
}

/// Whether the cleared `L` annihilates `f` modulo `p^n`.
pub fn verify_mod_solution(l: &FuchsOp, f: &ModPoly) -> Result<bool, CharpError> {
    let ops = reduce_operator(l, f.scalar_ctx())?;
    Ok(apply_mod(&ops, f).is_zero())
}

/// Indices `(k_B, k_C)` of the expansion polynomials that do not vanish
/// modulo `p`: `(1, 2)` for split `p`; for inert `p` they alternate with
/// the parity of `n`, since the Cartier matrix is antidiagonal.
pub fn nonvanishing_indices(ctx: &PrimeContext) -> (usize, usize) {
    if ctx.is_split() || ctx.n() % 2 == 0 {
        (1, 2)
    } else {
        (2, 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspValue {
    pub cusp: String,
    /// `B` (resp. `C`) has no common root with the cusp's minimal
    /// polynomial modulo `p`.
    pub b_nonzero: bool,
    pub c_nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CartierReport {
    pub p: u64,
    pub split: bool,
    /// `B_{1,2} = C_{1,1} = 0` when split, `B_{1,1} = C_{1,2} = 0` when inert.
    pub vanishing_ok: bool,
    /// The complementary pair is nonzero.
    pub complementary_nonzero: bool,
    pub cusps: Vec<CuspValue>,
    pub ok: bool,
}

/// `gcd(f, m) = 1` over the residue field.
fn coprime(f: &ModPoly, m: &ModPoly) -> bool {
    !f.is_zero() && f.gcd(m).deg() == 0
}

fn reduce_poly(f: &Poly<QuadNum>, ctx: &PrimeContext) -> Result<ModPoly, CharpError> {
    Ok(Poly::new(
        *ctx,
        f.coeffs()
            .iter()
            .map(|c| PadicQuad::reduce(c, ctx))
            .collect::<Result<Vec<_>, _>>()?,
    ))
}

pub fn cartier_pattern(fm: &FamilyModel, p: u64) -> Result<CartierReport, CharpError> {
    let ctx = prime_context(fm, p, 1)?;
    let bc = extract_bc(fm, &ctx)?;
    let split = ctx.is_split();
    let (vanish, keep) = if split {
        ([&bc.b2, &bc.c1], [&bc.b1, &bc.c2])
    } else {
        ([&bc.b1, &bc.c2], [&bc.b2, &bc.c1])
    };
    let vanishing_ok = vanish.iter().all(|f| f.is_zero());
    let complementary_nonzero = keep.iter().all(|f| !f.is_zero());
    let mut cusps = Vec::new();
    for c in &fm.cusps {
        if let Cusp::Finite(pt) = c {
            let m = reduce_poly(pt.minpoly(), &ctx)?;
            cusps.push(CuspValue {
                cusp: pt.to_string(),
                b_nonzero: coprime(keep[0], &m),
                c_nonzero: coprime(keep[1], &m),
            });
        }
    }
    let ok = vanishing_ok
        && complementary_nonzero
        && cusps.iter().all(|c| c.b_nonzero && c.c_nonzero);
    Ok(CartierReport {
        p,
        split,
        vanishing_ok,
        complementary_nonzero,
        cusps,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CongruenceReport {
    pub p: u64,
    pub n: u32,
    pub split: bool,
    /// `X_{n+1,k} = X_{n,1}^p Y_{1,k} + X_{n,2}^p ...` in the four
    /// combinations, from `g^{(p^{n+1}-1)/2} = (g^p)^{(p^n-1)/2} g^{(p-1)/2}`.
    pub general: Vec<Identity>,
    /// The split or inert specializations and their closed forms.
    pub specialized: Vec<Identity>,
    /// The alternative inert forms `B_{n+1,2} = C_{n,1}^p B_{1,2}` and
    /// `C_{n+1,1} = B_{n,2}^p C_{1,1}`; `None` for split `p`.
    pub alternative_inert_forms: Option<bool>,
    pub ok: bool,
}

/// Expansion polynomials at level `m` modulo `p`: direct powering for
/// `p^m` within reach, the digit expansion otherwise.
fn level_mod_p(fm: &FamilyModel, p: u64, m: u32) -> Result<ExpansionPolys, CharpError> {
    if p.pow(m) <= 400 {
        Ok(extract_bc(fm, &prime_context(fm, p, m)?)?.truncate(1))
    } else {
        expansion_mod_p(fm, p, m)
    }
}

pub fn congruence_check(fm: &FamilyModel, p: u64, n: u32) -> Result<CongruenceReport, CharpError> {
    let ctx = prime_context(fm, p, 1)?;
    let split = ctx.is_split();
    let one = extract_bc(fm, &ctx)?;
    let lvl = level_mod_p(fm, p, n)?;
    let next = level_mod_p(fm, p, n + 1)?;
    let fr = |f: &ModPoly| Ring::pow(f, p);
    let id = |name: &str, holds: bool| Identity {
        name: name.to_string(),
        holds,
    };
    let general = vec![
        id("B[n+1,1] = B[n,1]^p B[1,1] + C[n,1]^p B[1,2]",
            next.b1 == fr(&lvl.b1).mul(&one.b1).add(&fr(&lvl.c1).mul(&one.b2))),
        id("B[n+1,2] = B[n,2]^p B[1,1] + C[n,2]^p B[1,2]",
            next.b2 == fr(&lvl.b2).mul(&one.b1).add(&fr(&lvl.c2).mul(&one.b2))),
        id("C[n+1,1] = B[n,1]^p C[1,1] + C[n,1]^p C[1,2]",
            next.c1 == fr(&lvl.b1).mul(&one.c1).add(&fr(&lvl.c1).mul(&one.c2))),
        id("C[n+1,2] = B[n,2]^p C[1,1] + C[n,2]^p C[1,2]",
            next.c2 == fr(&lvl.b2).mul(&one.c1).add(&fr(&lvl.c2).mul(&one.c2))),
    ];
    let geometric: u64 = (0..n).map(|j| p.pow(j)).sum();
    let (specialized, alternative) = if split {
        (
            vec![
                id("B[n+1,1] = B[n,1]^p B[1,1]", next.b1 == fr(&lvl.b1).mul(&one.b1)),
                id("C[n+1,2] = C[n,2]^p C[1,2]", next.c2 == fr(&lvl.c2).mul(&one.c2)),
                id("B[n,1] = B[1,1]^(1+p+...+p^(n-1))", lvl.b1 == Ring::pow(&one.b1, geometric)),
                id("C[n,2] = C[1,2]^(1+p+...+p^(n-1))", lvl.c2 == Ring::pow(&one.c2, geometric)),
            ],
            None,
        )
    } else {
        let alt = next.b2 == fr(&lvl.c1).mul(&one.b2) && next.c1 == fr(&lvl.b2).mul(&one.c1);
        (
            vec![
                id("B[n+1,1] = C[n,1]^p B[1,2]", next.b1 == fr(&lvl.c1).mul(&one.b2)),
                id("B[n+1,2] = C[n,2]^p B[1,2]", next.b2 == fr(&lvl.c2).mul(&one.b2)),
                id("C[n+1,1] = B[n,1]^p C[1,1]", next.c1 == fr(&lvl.b1).mul(&one.c1)),
                id("C[n+1,2] = B[n,2]^p C[1,1]", next.c2 == fr(&lvl.b2).mul(&one.c1)),
            ],
            Some(alt),
        )
    };
    let ok = general.iter().chain(&specialized).all(|i| i.holds);
    Ok(CongruenceReport {
        p,
        n,
        split,
        general,
        specialized,
        alternative_inert_forms: alternative,
        ok,
    })
}

/// `d_{n,k}` and `e_{n,k}` for `r_1 = 5`: the `t`-degree bounds of `B_{n,k}`
/// and `C_{n,k}`.
pub fn degree_bounds(q: u64) -> ([u64; 2], [u64; 2]) {
    ([3 * (q - 1) / 2, (q - 3) / 2], [(3 * q - 1) / 2, (q - 1) / 2])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    pub p: u64,
    pub n: u32,
    pub k_b: usize,
    pub k_c: usize,
    pub deg_b: i64,
    pub bound_b: u64,
    pub deg_c: i64,
    pub bound_c: u64,
    /// All four polynomials respect their bounds.
    pub bounds_ok: bool,
    pub attained: bool,
}

pub fn degree_report(fm: &FamilyModel, ctx: &PrimeContext) -> Result<DegreeReport, CharpError> {
    let bc = extract_bc(fm, ctx)?;
    let (db, dc) = degree_bounds(ctx.modulus());
    let (kb, kc) = nonvanishing_indices(ctx);
    let bounds_ok = (1..=2).all(|k| {
        bc.b(k).deg() <= db[k - 1] as i64 && bc.c(k).deg() <= dc[k - 1] as i64
    });
    let (deg_b, deg_c) = (bc.b(kb).deg(), bc.c(kc).deg());
    Ok(DegreeReport {
        p: ctx.p(),
        n: ctx.n(),
        k_b: kb,
        k_c: kc,
        deg_b,
        bound_b: db[kb - 1],
        deg_c,
        bound_c: dc[kc - 1],
        bounds_ok,
        attained: deg_b == db[kb - 1] as i64 && deg_c == dc[kc - 1] as i64,
    })
}

/// Result of the window scan for `β_n` (form 1) or `γ_n` (form 2).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaReport {
    pub i: usize,
    pub p: u64,
    pub n: u32,
    /// Index `k` of the expansion polynomial used.
    pub k: usize,
    pub beta: u64,
    /// Length of the zero window, `r_i - 2`.
    pub window: usize,
    /// `-γ_i modulo p^{ceil(n/2)}` as a residue.
    pub target: u64,
    pub congruence_ok: bool,
    pub lower_bound: u64,
    pub bound_ok: bool,
    /// Unit-normalized coefficients up to `β`.
    pub normalized: ModPoly,
}

/// `β_n`/`γ_n` for form `i` of `fm` modulo `p^n`.
pub fn beta_n(fm: &FamilyModel, l: &FuchsOp, i: usize, ctx: &PrimeContext) -> Result<BetaReport, CharpError> {
    let rec = build_recursion(l).map_err(|e| CharpError::Recursion(e.to_string()))?;
    let gamma = rec
        .gamma
        .clone()
        .ok_or_else(|| CharpError::Recursion("exponents at infinity are not equal".into()))?;
    let window = rec.coeff_polys.len() - 1;
    let bc = extract_bc(fm, ctx)?;
    let (kb, kc) = nonvanishing_indices(ctx);
    let (k, f) = if i == 1 { (kb, bc.b(kb)) } else { (kc, bc.c(kc)) };
    let c0 = f.coeff(0);
    let inv = crate::numring::Field::inv(&c0).ok_or(CharpError::ConstantTermNotUnit)?;
    let v = f.mul_scalar(&inv);
    let coeffs = v.coeffs();
    let zero_at = |j: usize| coeffs.get(j).is_none_or(|c| c.is_zero());
    let beta = (0..)
        .find(|&b: &usize| (b + 1..=b + window).all(zero_at))
        .unwrap();
    let big_n = ctx.n().div_ceil(2);
    let small = ctx.with_precision(big_n);
    let target = small.reduce_rational(&-gamma.clone())?;
    let congruence_ok = beta as u64 % small.modulus() == target;
    // β ≥ (p^N - 2γ)/2.
    let two_gamma = (gamma.clone() * Rational::from_integer(2.into()))
        .to_integer()
        .try_into()
        .unwrap_or(0u64);
    let lower_bound = small.modulus().saturating_sub(two_gamma) / 2;
    Ok(BetaReport {
        i,
        p: ctx.p(),
        n: ctx.n(),
        k,
        beta: beta as u64,
        window,
        target,
        congruence_ok,
        lower_bound,
        bound_ok: beta as u64 >= lower_bound,
        normalized: v.truncate(beta + 1),
    })
}

/// Whether `u mod p^n` agrees with the unit-normalized expansion
/// polynomial up to index `β_n`.
pub fn prefix_agreement(u: &SeriesPrefix<QuadNum>, report: &BetaReport) -> Result<bool, CharpError> {
    Ok(prefix_comparison(u, report)?.agree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixComparison {
    /// Agreement modulo `p^n` on `0..=β`.
    pub agree: bool,
    pub first_mismatch: Option<usize>,
    /// Agreement modulo `p` on `0..=β`.
    pub agree_mod_p: bool,
}

/// Compares `u mod p^n` with the normalized expansion polynomial on `0..=β`.
pub fn prefix_comparison(u: &SeriesPrefix<QuadNum>, report: &BetaReport) -> Result<PrefixComparison, CharpError> {
    let ctx = *report.normalized.scalar_ctx();
    let mut first_mismatch = None;
    let mut agree_mod_p = true;
    for j in 0..=report.beta as usize {
        let Some(c) = u.coeffs().get(j) else {
            return Err(CharpError::Recursion(format!("series prefix shorter than {}", report.beta + 1)));
        };
        let x = PadicQuad::reduce(c, &ctx)?;
        let v = report.normalized.coeff(j);
        if x != v {
            first_mismatch.get_or_insert(j);
            if x.truncate(1) != v.truncate(1) {
                agree_mod_p = false;
            }
        }
    }
    Ok(PrefixComparison {
        agree: first_mismatch.is_none(),
        first_mismatch,
        agree_mod_p,
    })
}
