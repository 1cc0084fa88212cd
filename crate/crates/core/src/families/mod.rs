//! Explicit universal families `y^2 = g(x, t)` for discriminants 13 and 17:
//! cusp matching, discriminants, reduction behaviour and the cusp
//! configuration's j-invariant.

mod data;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numring::{
    factor_small, rational_to_string, Field, QAlgebra, QuadNum, Rational, Ring, Zmod,
};
use crate::polyalg::{
    discriminant, discriminant_x, eval_poly_at_algebraic, AlgebraicPoint, BiPoly, Poly,
    QuotElem,
};
use crate::teich::{enumerate_prototypes, normal_form, spin, CuspNormalForm, Prototype};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("no explicit family for D = {0} (only 13 and 17)")]
    UnsupportedDiscriminant(i64),
    #[error("fiber does not match the normal form: {0}")]
    NoMatch(String),
    #[error("congruence fails: {0}")]
    CongruenceFails(String),
}

/// A cusp of the parameter curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cusp {
    Infinity,
    /// A rational point or a conjugate pair given by its minimal polynomial.
    Finite(AlgebraicPoint),
}

impl Cusp {
    fn point(a: QuadNum) -> Self {
        Cusp::Finite(AlgebraicPoint::rational(&a))
    }

    /// Number of geometric points.
    pub fn count(&self) -> usize {
        match self {
            Cusp::Infinity => 1,
            Cusp::Finite(p) => p.degree(),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Cusp::Infinity => Cusp::Infinity,
            Cusp::Finite(p) => Cusp::Finite(p.conj()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyModel {
    #[serde(rename = "D")]
    pub d: i64,
    /// Spin component; `None` when the locus is irreducible.
    pub eps: Option<u8>,
    /// `c_0 .. c_5`, polynomials in `t`.
    pub c: Vec<Poly<QuadNum>>,
    pub cusps: Vec<Cusp>,
    #[serde(rename = "S_exceptional")]
    pub s_exceptional: Vec<u64>,
}

impl FamilyModel {
    /// `g(x, t) = sum c_k(t) x^k`.
    pub fn g(&self) -> BiPoly<QuadNum> {
        Poly::new(self.d, self.c.clone())
    }

    fn conj(&self) -> Self {
        FamilyModel {
            d: self.d,
            eps: self.eps.map(|e| 1 - e),
            c: self.c.iter().map(|p| p.map(self.d, |x| x.conj())).collect(),
            cusps: self.cusps.iter().map(Cusp::conj).collect(),
            s_exceptional: self.s_exceptional.clone(),
        }
    }

    /// `c_5 = 1`, `deg c_k = 5 - k` and `t^{5-k} c_k(1/t) = c_k(t)`.
    pub fn check_invariants(&self) -> bool {
        self.c.len() == 6
            && self.c[5].is_one()
            && self
                .c
                .iter()
                .enumerate()
                .all(|(k, ck)| ck.deg() == 5 - k as i64 && ck.reciprocal_check(5 - k))
    }
}

pub fn family(d: i64, eps: u8) -> Result<FamilyModel, FamilyError> {
    match d {
        17 => {
            let base = FamilyModel {
                d,
                eps: Some(1),
                c: data::coefficients_17(),
                cusps: vec![
                    Cusp::point(QuadNum::int(0, d)),
                    Cusp::point(QuadNum::int(1, d)),
                    Cusp::Infinity,
                    Cusp::point(data::tau_17()),
                    Cusp::point(data::tau_inv_17()),
                ],
                s_exceptional: vec![2, 17],
            };
            Ok(if eps == 1 { base } else { base.conj() })
        }
        13 => Ok(FamilyModel {
            d,
            eps: None,
            c: data::coefficients_13(),
            cusps: vec![
                Cusp::point(QuadNum::int(0, d)),
                Cusp::point(QuadNum::int(1, d)),
                Cusp::Infinity,
                Cusp::Finite(AlgebraicPoint::new(data::rho_minpoly_13()).expect("irreducible")),
            ],
            s_exceptional: vec![2, 3, 13],
        }),
        _ => Err(FamilyError::UnsupportedDiscriminant(d)),
    }
}

/// The printed constant term of `c_2` for `D = 17`, kept for comparison.
pub fn c2_printed_constant_17() -> QuadNum {
    data::c2_printed_constant_17()
}

/// `g(x, t0)`.
pub fn fiber(fm: &FamilyModel, t0: &QuadNum) -> Poly<QuadNum> {
    fm.g().map(fm.d, |c| c.eval(t0))
}

/// `g(x, t0)` at a quadratic point, with coefficients in `K[t]/(m)`.
pub fn fiber_at(fm: &FamilyModel, pt: &AlgebraicPoint) -> Poly<QuotElem<QuadNum>> {
    let ctx = pt.quot_ctx();
    fm.g().map(ctx.clone(), |c| eval_poly_at_algebraic(c, pt))
}

/// Finds `ρ != 0` and `σ` with `fiber(ρ x + σ)` proportional to the normal
/// form with roots `roots` (simple root first, then the two double roots).
fn match_affine<F: Field>(fiber: &Poly<F>, roots: &[F; 3]) -> Result<(F, F), FamilyError> {
    if fiber.deg() != 5 {
        return Err(FamilyError::NoMatch("fiber is not a quintic".into()));
    }
    let parts = fiber.monic().squarefree_yun();
    if parts.len() != 2 || parts[0].deg() != 1 || parts[1].deg() != 2 {
        return Err(FamilyError::NoMatch(
            "root multiplicities are not (1, 2, 2)".into(),
        ));
    }
    let simple = parts[0].coeff(0).neg();
    let (e1, e2) = (roots[1].sub(&roots[0]), roots[2].sub(&roots[0]));
    // Sum of the double roots: 2 s + ρ (e1 + e2).
    let two_s = simple.add(&simple);
    let rho = parts[1]
        .coeff(1)
        .neg()
        .sub(&two_s)
        .div(&e1.add(&e2))
        .filter(|r| !r.is_zero())
        .ok_or_else(|| FamilyError::NoMatch("zero scaling".into()))?;
    let expected = Poly::linear_root(&simple.add(&rho.mul(&e1)))
        .mul(&Poly::linear_root(&simple.add(&rho.mul(&e2))));
    if expected == parts[1] {
        let sigma = simple.sub(&rho.mul(&roots[0]));
        Ok((rho, sigma))
    } else {
        Err(FamilyError::NoMatch("root differences are not proportional".into()))
    }
}

/// Affine change `x -> ρ x + σ` taking the normal form to the fiber.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineMatch {
    pub rho: QuadNum,
    pub sigma: QuadNum,
}

pub fn match_normal_form(
    fiber: &Poly<QuadNum>,
    nf: &CuspNormalForm,
) -> Result<AffineMatch, FamilyError> {
    match_affine(fiber, &nf.roots()).map(|(rho, sigma)| AffineMatch { rho, sigma })
}

/// Scaling factor in the residue field of a cusp.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Point(AffineMatch),
    /// `ρ = u_ρ + v_ρ t` and `σ = u_σ + v_σ t` in `K[t]/(m)`.
    Algebraic {
        rho: (QuadNum, QuadNum),
        sigma: (QuadNum, QuadNum),
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspMatch {
    pub cusp: Cusp,
    pub prototype: Prototype,
    pub change: Scale,
}

/// Matches the fiber over `cusp` against a single normal form.
pub fn match_cusp(
    fm: &FamilyModel,
    cusp: &Cusp,
    nf: &CuspNormalForm,
) -> Result<Scale, FamilyError> {
    let pt = match cusp {
        Cusp::Infinity => return Err(FamilyError::NoMatch("cusp at infinity".into())),
        Cusp::Finite(p) => p,
    };
    match pt.as_rational() {
        Some(a) => match_normal_form(&fiber(fm, &a), nf).map(Scale::Point),
        None => {
            let ctx = pt.quot_ctx();
            let roots = nf.roots().map(|r| ctx.embed(&r));
            let (rho, sigma) = match_affine(&fiber_at(fm, pt), &roots)?;
            Ok(Scale::Algebraic {
                rho: (rho.u().clone(), rho.v().clone()),
                sigma: (sigma.u().clone(), sigma.v().clone()),
            })
        }
    }
}

/// Every (finite cusp, prototype) pair whose normal form matches the fiber.
pub fn match_cusps(fm: &FamilyModel) -> Vec<CuspMatch> {
    let protos = enumerate_prototypes(fm.d).expect("valid discriminant");
    let mut out = Vec::new();
    for cusp in &fm.cusps {
        for pt in &protos {
            if let Ok(rho) = match_cusp(fm, cusp, &normal_form(pt)) {
                out.push(CuspMatch {
                    cusp: cusp.clone(),
                    prototype: *pt,
                    change: rho,
                });
            }
        }
    }
    out
}

/// Relation between the component label and the raw spin formula,
/// found from the prototype matching the fiber over `t = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpinCalibration {
    pub eps: u8,
    pub prototype_at_zero: Prototype,
    pub raw_spin: u8,
    /// `true` when the label is `1 - raw_spin`.
    pub flipped: bool,
}

pub fn spin_calibration(eps: u8) -> Result<SpinCalibration, FamilyError> {
    let fm = family(17, eps)?;
    let zero = Cusp::point(QuadNum::int(0, 17));
    let m = match_cusps(&fm)
        .into_iter()
        .find(|m| m.cusp == zero)
        .ok_or_else(|| FamilyError::NoMatch("no prototype at t = 0".into()))?;
    let raw = spin(&m.prototype).value;
    Ok(SpinCalibration {
        eps,
        prototype_at_zero: m.prototype,
        raw_spin: raw,
        flipped: raw != eps,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscFactor {
    /// Monic irreducible factor in `t`.
    pub factor: Poly<QuadNum>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub discriminant: Poly<QuadNum>,
    pub factors: Vec<DiscFactor>,
    /// Constant left after removing the cusp factors.
    pub unit: QuadNum,
    #[serde(serialize_with = "crate::numring::rational_serde::serialize")]
    pub unit_norm: Rational,
    /// Primes dividing the numerator or denominator of the unit's norm.
    pub unit_norm_primes: Vec<u64>,
    /// Multiplicities counted with the number of geometric points.
    pub pattern: Vec<usize>,
    pub pattern_ok: bool,
    /// `unit / printed unit`, with the printed factors made monic.
    pub ratio_to_printed: QuadNum,
}

fn cusp_factors(fm: &FamilyModel) -> Vec<Poly<QuadNum>> {
    fm.cusps
        .iter()
        .filter_map(|c| match c {
            Cusp::Finite(p) => Some(p.minpoly().clone()),
            Cusp::Infinity => None,
        })
        .collect()
}

fn printed_unit(d: i64) -> QuadNum {
    let q = |a, b, den| QuadNum::from_ints(a, b, den, d);
    let r = |n: BigInt, m: BigInt| QuadNum::from_rational(Rational::new(n, m), d);
    let pow2 = |k: u32| BigInt::from(2).pow(k);
    match d {
        17 => r(-BigInt::from(17).pow(10), pow2(12))
            .mul(&q(4, 1, 1).pow(19))
            .mul(&q(5, 1, 2))
            .mul(&q(5, -1, 2).pow(18))
            .mul(&QuadNum::int(8 * 64 * 64 * 64, d)),
        13 => r(-BigInt::from(3).pow(12) * BigInt::from(13).pow(10), pow2(60))
            .mul(&q(-3, 1, 2).pow(30))
            .mul(&q(1, 1, 2).pow(6))
            .mul(&r(pow2(28), BigInt::one())),
        _ => QuadNum::int(1, d),
    }
}

fn rational_primes(q: &Rational) -> Vec<u64> {
    let mut out = Vec::new();
    for n in [q.numer(), q.denom()] {
        let (fs, rest) = factor_small(n, 100_000);
        assert!(rest.is_one(), "norm has a large prime factor");
        out.extend(fs.into_iter().map(|(p, _)| p));
    }
    out.sort();
    out.dedup();
    out
}

pub fn discriminant_report(fm: &FamilyModel) -> DiscriminantReport {
    let disc = discriminant_x(&fm.g());
    let mut rest = disc.clone();
    let mut factors = Vec::new();
    for f in cusp_factors(fm) {
        let mut k = 0;
        loop {
            let (q, r) = rest.div_rem(&f);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        factors.push(DiscFactor {
            factor: f,
            multiplicity: k,
        });
    }
    assert_eq!(rest.deg(), 0, "discriminant has non-cusp factors");
    let unit = rest.coeff(0);
    let unit_norm = unit.norm();
    let mut pattern: Vec<usize> = factors
        .iter()
        .flat_map(|f| std::iter::repeat(f.multiplicity).take(f.factor.deg() as usize))
        .collect();
    pattern.sort_by(|a, b| b.cmp(a));
    let expected: &[usize] = if fm.d == 17 { &[5, 4, 3, 3] } else { &[4, 4, 4, 4] };
    DiscriminantReport {
        unit_norm_primes: rational_primes(&unit_norm),
        ratio_to_printed: {
            // The published unit belongs to the eps = 1 component.
            let printed = printed_unit(fm.d);
            let printed = if fm.eps == Some(0) { printed.conj() } else { printed };
            unit.div(&printed).expect("nonzero")
        },
        pattern_ok: pattern == expected,
        pattern,
        discriminant: disc,
        factors,
        unit,
        unit_norm,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionStatus {
    Good,
    BadModel,
    PotentiallyGood,
    NotPotentiallyGood,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionReport {
    pub p: u64,
    pub status: ReductionStatus,
    pub evidence: Vec<String>,
}

fn divides(p: u64, n: &BigInt) -> bool {
    (n % BigInt::from(p)).is_zero()
}

/// `true` iff `p` divides the numerator or denominator of `q`.
fn touches(p: u64, q: &Rational) -> bool {
    !q.is_zero() && (divides(p, q.numer()) || divides(p, q.denom()))
}

fn cusp_collisions(fm: &FamilyModel, p: u64) -> Vec<String> {
    let mut out = Vec::new();
    let finite: Vec<&AlgebraicPoint> = fm
        .cusps
        .iter()
        .filter_map(|c| match c {
            Cusp::Finite(a) => Some(a),
            Cusp::Infinity => None,
        })
        .collect();
    for (i, a) in finite.iter().enumerate() {
        let m = a.minpoly();
        if m.coeffs().iter().any(|c| divides(p, &c.denominator())) {
            out.push(format!("cusp {a} meets infinity"));
        }
        if a.degree() == 2 {
            let disc = discriminant(m);
            if touches(p, &disc.norm()) {
                out.push(format!("conjugate cusps of {a} collide"));
            }
        }
        for b in &finite[i + 1..] {
            let collide = match (a.as_rational(), b.as_rational()) {
                (Some(x), Some(y)) => touches(p, &x.sub(&y).norm()),
                (Some(x), None) => touches(p, &b.minpoly().eval(&x).norm()),
                (None, Some(y)) => touches(p, &m.eval(&y).norm()),
                (None, None) => true,
            };
            if collide {
                out.push(format!("cusps {a} and {b} collide"));
            }
        }
    }
    out
}

/// Whether the stored model has good reduction at every prime above `p`.
pub fn good_reduction(fm: &FamilyModel, p: u64) -> ReductionReport {
    good_reduction_with(fm, &discriminant_report(fm), p)
}

pub fn good_reduction_with(fm: &FamilyModel, disc: &DiscriminantReport, p: u64) -> ReductionReport {
    let mut evidence = Vec::new();
    if p == 2 {
        evidence.push("p = 2 is excluded".to_string());
    }
    if p as i64 == fm.d {
        evidence.push(format!("p = {p} ramifies in Q(sqrt {})", fm.d));
    }
    for (k, ck) in fm.c.iter().enumerate() {
        if ck.coeffs().iter().any(|x| divides(p, &x.denominator())) {
            evidence.push(format!("c_{k} is not {p}-integral"));
        }
    }
    if disc.unit_norm_primes.contains(&p) {
        evidence.push(format!(
            "{p} divides the norm {} of the discriminant's unit part",
            rational_to_string(&disc.unit_norm)
        ));
    }
    evidence.extend(cusp_collisions(fm, p));
    let status = if evidence.is_empty() {
        evidence.push("discriminant unit is a p-unit; cusps stay distinct".into());
        ReductionStatus::Good
    } else {
        ReductionStatus::BadModel
    };
    ReductionReport { p, status, evidence }
}

/// Model verdict refined at `p = D`, where a base change gives good
/// reduction.
pub fn reduction_verdict(fm: &FamilyModel, disc: &DiscriminantReport, p: u64) -> ReductionReport {
    let mut r = good_reduction_with(fm, disc, p);
    if r.status == ReductionStatus::BadModel && p as i64 == fm.d {
        match potentially_good_at_d(fm) {
            Ok(pg) if pg.squarefree_generic => {
                r.status = ReductionStatus::PotentiallyGood;
                r.evidence.push(
                    "smooth special fiber after x = z - c_4/5, z = sqrt(p) w".into(),
                );
            }
            Ok(_) => r.evidence.push("transformed fiber is singular".into()),
            Err(e) => r.evidence.push(e.to_string()),
        }
    }
    if fm.d == 13 && p == 3 {
        r.evidence
            .push("stable reduction at 3 is two elliptic curves (documented, not certified)".into());
    }
    r
}

/// Reports for all odd primes up to `pmax`.
pub fn reduction_scan(fm: &FamilyModel, pmax: u64) -> Vec<ReductionReport> {
    let disc = discriminant_report(fm);
    crate::numring::primes_up_to(pmax)
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| reduction_verdict(fm, &disc, p))
        .collect()
}

fn rational_mod(q: &Rational, p: u64) -> Option<Zmod> {
    let m = BigInt::from(p);
    let den = q.denom().mod_floor(&m).to_u64()?;
    let num = Zmod::from_int(&p, q.numer());
    num.div(&Zmod::new(den, p))
}

/// Image of `x` in `O/(sqrt p) = F_p`; requires `v(x) >= 0`.
fn reduce_ramified(x: &QuadNum, p: u64) -> Option<Zmod> {
    if x.is_zero() {
        return Some(Zmod::new(0, p));
    }
    if x.valuation_ramified(p)? < 0 {
        return None;
    }
    rational_mod(x.a(), p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PotentiallyGoodReport {
    pub p: u64,
    /// `c_4/5 mod (sqrt p)`, so that `g = (x + shift)^5 mod (sqrt p)`.
    pub shift_mod_p: Poly<Zmod>,
    /// Coefficients of `w^0 .. w^5` of the transformed quintic mod `(sqrt p)`.
    pub g_hat: Vec<Poly<Zmod>>,
    pub w_coefficient_nonzero: bool,
    pub squarefree_generic: bool,
}

/// `x = z - c_4/5`, `z = sqrt(p) w`, divided by `p^{5/2}` and reduced
/// modulo `(sqrt p)`.
pub fn potentially_good_at_d(fm: &FamilyModel) -> Result<PotentiallyGoodReport, FamilyError> {
    let d = fm.d;
    let p = d as u64;
    let fifth = Rational::new(1.into(), 5.into());
    let alpha = fm.c[4].scale(&fifth);
    let shift_mod_p = alpha
        .try_map(p, |c| reduce_ramified(c, p).ok_or(()))
        .map_err(|_| FamilyError::CongruenceFails("c_4/5 is not integral".into()))?;
    let inner: BiPoly<QuadNum> = Poly::new(d, vec![alpha.neg(), Poly::one(&d)]);
    let h = fm.g().compose(&inner);
    let sqrt_p = QuadNum::sqrt_d(d);
    let mut g_hat = Vec::new();
    for k in 0..=5usize {
        let hk = h.coeff(k);
        let need = 5 - k as i64;
        for x in hk.coeffs() {
            if let Some(v) = x.valuation_ramified(p) {
                if k < 5 && v < 1 {
                    return Err(FamilyError::CongruenceFails(format!(
                        "g is not a fifth power mod sqrt({p}) (z^{k})"
                    )));
                }
                if v < need {
                    return Err(FamilyError::CongruenceFails(format!(
                        "z^{k} coefficient has valuation {v}/2 < {need}/2"
                    )));
                }
            }
        }
        let div = sqrt_p.pow(need as u64);
        let scaled = hk.map(d, |x| x.div(&div).expect("nonzero"));
        let red = scaled
            .try_map(p, |x| reduce_ramified(x, p).ok_or(()))
            .expect("valuation checked");
        g_hat.push(red);
    }
    let poly_ring_ctx = p;
    let ghat_poly: BiPoly<Zmod> = Poly::new(poly_ring_ctx, g_hat.clone());
    let disc = discriminant(&ghat_poly);
    Ok(PotentiallyGoodReport {
        p,
        shift_mod_p,
        w_coefficient_nonzero: !g_hat[1].is_zero(),
        squarefree_generic: !disc.is_zero(),
        g_hat,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspJInvariant {
    #[serde(rename = "D")]
    pub d: i64,
    /// Finite fourth point of `{1, -1, ∞, s}`.
    pub s: QuadNum,
    pub chi: QuadNum,
    pub j: QuadNum,
    /// All six cross-ratios give the same `j`.
    pub orbit_consistent: bool,
    pub rational: bool,
}

/// `256 (χ^2 - χ + 1)^3 / (χ^2 (χ - 1)^2)`.
pub fn j_of_cross_ratio(chi: &QuadNum) -> QuadNum {
    let d = chi.disc();
    let one = QuadNum::int(1, d);
    let num = chi.mul(chi).sub(chi).add(&one).pow(3).mul(&QuadNum::int(256, d));
    let den = chi.mul(chi).mul(&chi.sub(&one).pow(2));
    num.div(&den).expect("cross-ratio is not 0 or 1")
}

/// j-invariant of `{1, -1, ∞, s}` with `s` a finite point.
pub fn j_of_points(s: &QuadNum) -> CuspJInvariant {
    let d = s.disc();
    let one = QuadNum::int(1, d);
    let chi = s.add(&one).div(&s.sub(&one)).expect("s != 1");
    let j = j_of_cross_ratio(&chi);
    let inv = |x: &QuadNum| x.inv().expect("nonzero");
    let orbit = [
        one.sub(&chi),
        inv(&chi),
        inv(&one.sub(&chi)),
        chi.div(&chi.sub(&one)).unwrap(),
        chi.sub(&one).div(&chi).unwrap(),
    ];
    CuspJInvariant {
        d,
        s: s.clone(),
        orbit_consistent: orbit.iter().all(|c| j_of_cross_ratio(c) == j),
        rational: j.conj() == j,
        chi,
        j,
    }
}

/// The cusps together with the elliptic point on the quotient by
/// `t -> 1/t`, in the coordinate `s = (t + 1/t)/2`.
pub fn cusp_j_invariant(d: i64) -> Result<CuspJInvariant, FamilyError> {
    let half = Rational::new(1.into(), 2.into());
    let s = match d {
        17 => data::tau_17().add(&data::tau_inv_17()).scale(&half),
        13 => data::rho_minpoly_13().coeff(1).neg().scale(&half),
        _ => return Err(FamilyError::UnsupportedDiscriminant(d)),
    };
    Ok(j_of_points(&s))
}

#[cfg(test)]
mod tests;
