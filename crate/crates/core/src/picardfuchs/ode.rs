use std::fmt;

use serde::Serialize;

use crate::families::{Cusp, FamilyModel};
use crate::numring::{rational_serde, Field, QAlgebra, QuadNum, Rational, Ring};
use crate::polyalg::{eval_at_algebraic, AlgebraicPoint, Poly, PolyError, RationalFunction};

use super::{GaussManin, H1Class, PfError};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingPoint {
    Finite(AlgebraicPoint),
    Infinity,
}

impl SingPoint {
    /// Number of geometric points.
    pub fn degree(&self) -> usize {
        match self {
            SingPoint::Finite(p) => p.degree(),
            SingPoint::Infinity => 1,
        }
    }

    pub fn rational(a: &QuadNum) -> Self {
        SingPoint::Finite(AlgebraicPoint::rational(a))
    }
}

impl fmt::Display for SingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingPoint::Finite(p) => write!(f, "{p}"),
            SingPoint::Infinity => write!(f, "infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingKind {
    Cusp,
    KsZero,
    Infinity,
    Other,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Singularity {
    pub point: SingPoint,
    #[serde(serialize_with = "rational_serde::pair")]
    pub exponents: (Rational, Rational),
    pub kind: SingKind,
}

/// `u'' + A u' + B u`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuchsOp {
    #[serde(rename = "A")]
    pub a: RationalFunction,
    #[serde(rename = "B")]
    pub b: RationalFunction,
    pub singularities: Vec<Singularity>,
}

fn divides(m: &Poly<QuadNum>, f: &Poly<QuadNum>) -> bool {
    f.rem(m).is_zero()
}

/// Points where a squarefree polynomial of degree at most 2 vanishes.
fn split_points(f: &Poly<QuadNum>) -> Result<Vec<AlgebraicPoint>, PfError> {
    match f.deg() {
        0 => Ok(vec![]),
        1 => Ok(vec![AlgebraicPoint::new(f.clone()).unwrap()]),
        2 => match AlgebraicPoint::new(f.clone()) {
            Ok(p) => Ok(vec![p]),
            Err(_) => {
                let m = f.monic();
                let (b, c) = (m.coeff(1), m.coeff(0));
                let d = b.disc();
                let s = b
                    .mul(&b)
                    .sub(&c.mul(&QuadNum::int(4, d)))
                    .sqrt()
                    .expect("reducible quadratic");
                let half = Rational::new((-1).into(), 2.into());
                Ok(vec![
                    AlgebraicPoint::rational(&b.add(&s).scale(&half)),
                    AlgebraicPoint::rational(&b.sub(&s).scale(&half)),
                ])
            }
        },
        n => Err(PfError::UnsupportedFactor(n as usize)),
    }
}

impl FuchsOp {
    /// Bare operator without singularity records, for operators that need
    /// not be Fuchsian.
    pub fn unchecked(a: RationalFunction, b: RationalFunction) -> Self {
        FuchsOp {
            a,
            b,
            singularities: Vec::new(),
        }
    }

    /// Builds the operator and its singularity records. Poles at the
    /// `known` points get the given kinds, remaining poles get
    /// `extra_kind`; infinity is always listed.
    pub fn new(
        a: RationalFunction,
        b: RationalFunction,
        known: &[(AlgebraicPoint, SingKind)],
        extra_kind: SingKind,
    ) -> Result<Self, PfError> {
        let d = *a.num().scalar_ctx();
        let poles = a.den().mul(b.den());
        let mut rest = poles
            .squarefree_yun()
            .into_iter()
            .fold(Poly::one(&d), |acc: Poly<QuadNum>, f| acc.mul(&f))
            .monic();
        let mut points = Vec::new();
        for (p, kind) in known {
            if divides(p.minpoly(), &rest) {
                rest = rest.div_rem(p.minpoly()).0;
                points.push((SingPoint::Finite(p.clone()), *kind));
            }
        }
        let mut extra = Vec::new();
        for f in rest.squarefree_yun() {
            if f.deg() > 0 {
                extra.extend(split_points(&f)?);
            }
        }
        for p in extra {
            points.push((SingPoint::Finite(p), extra_kind));
        }
        points.push((SingPoint::Infinity, SingKind::Infinity));
        let mut op = FuchsOp {
            a,
            b,
            singularities: vec![],
        };
        for (point, kind) in points {
            let exponents = local_exponents(&op, &point)?;
            op.singularities.push(Singularity {
                point,
                exponents,
                kind,
            });
        }
        Ok(op)
    }

    pub fn conj(&self) -> Self {
        let c = |f: &RationalFunction| {
            let d = *f.num().scalar_ctx();
            RationalFunction::new(f.num().map(d, |x| x.conj()), f.den().map(d, |x| x.conj()))
        };
        FuchsOp {
            a: c(&self.a),
            b: c(&self.b),
            singularities: self
                .singularities
                .iter()
                .map(|s| Singularity {
                    point: match &s.point {
                        SingPoint::Finite(p) => SingPoint::Finite(p.conj()),
                        SingPoint::Infinity => SingPoint::Infinity,
                    },
                    ..s.clone()
                })
                .collect(),
        }
    }

    /// `[P_0, P_1, P_2]` with `P_2 u'' + P_1 u' + P_0 u = P_2 L(u)` and
    /// `P_2` the monic common denominator of `A` and `B`.
    pub fn cleared(&self) -> [Poly<QuadNum>; 3] {
        let (da, db) = (self.a.den(), self.b.den());
        let p2 = da.mul(&db.div_rem(&da.gcd(db)).0).monic();
        let part = |f: &RationalFunction| f.num().mul(&p2.div_rem(f.den()).0);
        [part(&self.b), part(&self.a), p2]
    }

    pub fn singularity(&self, pt: &SingPoint) -> Option<&Singularity> {
        self.singularities.iter().find(|s| &s.point == pt)
    }

    fn known_points(&self) -> Vec<(AlgebraicPoint, SingKind)> {
        self.singularities
            .iter()
            .filter_map(|s| match &s.point {
                SingPoint::Finite(p) => Some((p.clone(), s.kind)),
                SingPoint::Infinity => None,
            })
            .collect()
    }
}

fn rational_roots_of_indicial(a0: &QuadNum, b0: &QuadNum, at: &str) -> Result<(Rational, Rational), PfError> {
    let d = a0.disc();
    let p = a0.sub(&QuadNum::int(1, d));
    let disc = p.mul(&p).sub(&b0.mul(&QuadNum::int(4, d)));
    let bad = || PfError::NonRationalExponents(at.to_string());
    let s = disc.sqrt().ok_or_else(bad)?;
    let half = Rational::new(1.into(), 2.into());
    let r1 = p.neg().sub(&s).scale(&half);
    let r2 = p.neg().add(&s).scale(&half);
    let (r1, r2) = (r1.as_rational().ok_or_else(bad)?.clone(), r2.as_rational().ok_or_else(bad)?.clone());
    Ok(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}

/// Limit of `t^k f(t)` as `t -> infinity`, `None` if it diverges.
fn limit_at_infinity(f: &RationalFunction, k: i64) -> Option<QuadNum> {
    let d = *f.num().scalar_ctx();
    if f.is_zero() {
        return Some(QuadNum::int(0, d));
    }
    let excess = f.num().deg() + k - f.den().deg();
    match excess {
        e if e > 0 => None,
        0 => f.num().lc().unwrap().div(f.den().lc().unwrap()),
        _ => Some(QuadNum::int(0, d)),
    }
}

/// Roots of `ρ^2 + (a_0 - 1) ρ + b_0` with `a_0 = res A`, `b_0` the
/// leading coefficient of `B` (in the local parameter; `t -> 1/t` at
/// infinity). Regular points give `(0, 1)`.
pub fn local_exponents(l: &FuchsOp, pt: &SingPoint) -> Result<(Rational, Rational), PfError> {
    let name = pt.to_string();
    let irregular = || PfError::IrregularSingularity(name.clone());
    let (a0, b0) = match pt {
        SingPoint::Infinity => {
            let d = *l.a.num().scalar_ctx();
            let lim_a = limit_at_infinity(&l.a, 1).ok_or_else(irregular)?;
            let lim_b = limit_at_infinity(&l.b, 2).ok_or_else(irregular)?;
            (QuadNum::int(2, d).sub(&lim_a), lim_b)
        }
        SingPoint::Finite(p) => {
            let m = RationalFunction::from_poly(p.minpoly().clone());
            let dm = p.minpoly().derivative();
            let eval = |f: &RationalFunction| match eval_at_algebraic(f, p) {
                Ok(v) => Ok(v),
                Err(PolyError::PoleAtPoint) => Err(irregular()),
                Err(_) => unreachable!(),
            };
            let dm_at = eval(&RationalFunction::from_poly(dm))?;
            let a0 = eval(&l.a.mul(&m))?.div(&dm_at).unwrap();
            let b0 = eval(&l.b.mul(&m).mul(&m))?
                .div(&dm_at.mul(&dm_at))
                .unwrap();
            let constant = |x: &crate::polyalg::QuotElem<QuadNum>| {
                x.as_constant()
                    .cloned()
                    .ok_or_else(|| PfError::NonRationalExponents(name.clone()))
            };
            (constant(&a0)?, constant(&b0)?)
        }
    };
    rational_roots_of_indicial(&a0, &b0, &name)
}

/// Operator annihilating `f u` for every solution `u` of `L`:
/// `A - 2h`, `B - A h + h^2 - h'` with `h = f'/f`.
pub fn gauge_transform(l: &FuchsOp, f: &RationalFunction) -> Result<FuchsOp, PfError> {
    let h = f.derivative().div(f).expect("f != 0");
    let two = RationalFunction::from_int(&l.a.ctx(), &2.into());
    let a = l.a.sub(&two.mul(&h));
    let b = l.b.sub(&l.a.mul(&h)).add(&h.mul(&h)).sub(&h.derivative());
    FuchsOp::new(a, b, &l.known_points(), SingKind::Other)
}

/// Sum of all exponents equals `r - 2`, `r` the number of singular points.
pub fn fuchs_relation_check(l: &FuchsOp) -> bool {
    let mut r = 0i64;
    let mut sum = Rational::from_integer(0.into());
    for s in &l.singularities {
        let k = s.point.degree() as i64;
        r += k;
        sum += (&s.exponents.0 + &s.exponents.1) * Rational::from_integer(k.into());
    }
    sum == Rational::from_integer((r - 2).into())
}

fn finite_cusps(fm: &FamilyModel) -> Vec<(AlgebraicPoint, SingKind)> {
    fm.cusps
        .iter()
        .filter_map(|c| match c {
            Cusp::Finite(p) => Some((p.clone(), SingKind::Cusp)),
            Cusp::Infinity => None,
        })
        .collect()
}

/// Second-order operator annihilating `ω_i`. The four coordinate
/// equations are checked exactly, which certifies the result.
pub fn derive_ode(fm: &FamilyModel, i: usize) -> Result<FuchsOp, PfError> {
    let gm = GaussManin::new(fm)?;
    let (a, b) = derive_coefficients(&gm, i)?;
    FuchsOp::new(a, b, &finite_cusps(fm), SingKind::KsZero)
}

pub(super) fn derive_coefficients(
    gm: &GaussManin,
    i: usize,
) -> Result<(RationalFunction, RationalFunction), PfError> {
    // v1 = N1 / c, v2 = N2 / e.
    let v1 = gm.reduced(i, 1)?;
    let v2 = gm.reduced(i, 2)?;
    let (n1, n2, c, e) = (&v1.num, &v2.num, &v1.den, &v2.den);
    let k = i - 1;
    let j = (0..4)
        .find(|&j| j != k && !n1.coeff(j).is_zero())
        .ok_or(PfError::NotRankTwo)?;
    let (n1j, n2j) = (n1.coeff(j), n2.coeff(j));
    for l in (0..4).filter(|&l| l != k && l != j) {
        if n2.coeff(l).mul(&n1j) != n2j.mul(&n1.coeff(l)) {
            return Err(PfError::NotRankTwo);
        }
    }
    // A = -v2_j / v1_j, B = -(v2_k + A v1_k).
    let a = RationalFunction::new(n2j.neg().mul(c), e.mul(&n1j));
    let b = RationalFunction::new(
        n2j.mul(&n1.coeff(k)).sub(&n2.coeff(k).mul(&n1j)),
        e.mul(&n1j),
    );
    Ok((a, b))
}

/// Class of `ω_i'' + A ω_i' + B ω_i`; zero iff `L` annihilates `ω_i`.
pub fn exactness_certificate(fm: &FamilyModel, l: &FuchsOp, i: usize) -> Result<H1Class, PfError> {
    let gm = GaussManin::new(fm)?;
    let v0 = H1Class::basis(fm.d, i - 1);
    let v1 = gm.class(i, 1)?;
    let v2 = gm.class(i, 2)?;
    Ok(H1Class {
        coords: std::array::from_fn(|j| {
            v2.coords[j]
                .add(&l.a.mul(&v1.coords[j]))
                .add(&l.b.mul(&v0.coords[j]))
        }),
    })
}
