use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::numring::{Field, QAlgebra, QuadNum, Rational, Ring};

use super::{Poly, PolyError, RatFun};

/// Presentation of `F[t]/(m)` for a monic `m` of degree 1 or 2.
///
/// Degree 2: `m = t^2 + beta t + gamma`. Degree 1: `m = t + beta`, and
/// every element is a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotCtx<F: Field> {
    base: F::Ctx,
    beta: F,
    gamma: F,
    quadratic: bool,
}

/// Element `u + v t` of `F[t]/(m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotElem<F: Field> {
    ctx: QuotCtx<F>,
    u: F,
    v: F,
}

impl<F: Field> QuotCtx<F> {
    pub fn from_minpoly(m: &Poly<F>) -> Self {
        let base = m.scalar_ctx().clone();
        let m = m.monic();
        match m.degree() {
            Some(1) => QuotCtx {
                beta: m.coeff(0),
                gamma: F::zero(&base),
                base,
                quadratic: false,
            },
            Some(2) => QuotCtx {
                beta: m.coeff(1),
                gamma: m.coeff(0),
                base,
                quadratic: true,
            },
            _ => panic!("minimal polynomial must have degree 1 or 2"),
        }
    }

    pub fn base(&self) -> &F::Ctx {
        &self.base
    }

    /// The class of `t`.
    pub fn generator(&self) -> QuotElem<F> {
        if self.quadratic {
            self.elem(F::zero(&self.base), F::one(&self.base))
        } else {
            self.elem(self.beta.neg(), F::zero(&self.base))
        }
    }

    pub fn embed(&self, c: &F) -> QuotElem<F> {
        self.elem(c.clone(), F::zero(&self.base))
    }

    pub fn elem(&self, u: F, v: F) -> QuotElem<F> {
        QuotElem {
            ctx: self.clone(),
            u,
            v,
        }
    }
}

impl<F: Field> QuotElem<F> {
    pub fn u(&self) -> &F {
        &self.u
    }

    pub fn v(&self) -> &F {
        &self.v
    }

    /// `Some(c)` if the element is the constant `c`.
    pub fn as_constant(&self) -> Option<&F> {
        self.v.is_zero().then_some(&self.u)
    }

    /// Norm to `F`: `u^2 - beta u v + gamma v^2`.
    pub fn norm(&self) -> F {
        if !self.ctx.quadratic {
            return self.u.clone();
        }
        self.u
            .mul(&self.u)
            .sub(&self.ctx.beta.mul(&self.u).mul(&self.v))
            .add(&self.ctx.gamma.mul(&self.v).mul(&self.v))
    }
}

impl<F: Field> Ring for QuotElem<F> {
    type Ctx = QuotCtx<F>;

    fn ctx(&self) -> QuotCtx<F> {
        self.ctx.clone()
    }
    fn zero(ctx: &QuotCtx<F>) -> Self {
        ctx.elem(F::zero(&ctx.base), F::zero(&ctx.base))
    }
    fn one(ctx: &QuotCtx<F>) -> Self {
        ctx.elem(F::one(&ctx.base), F::zero(&ctx.base))
    }
    fn from_int(ctx: &QuotCtx<F>, n: &BigInt) -> Self {
        ctx.elem(F::from_int(&ctx.base, n), F::zero(&ctx.base))
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.ctx.elem(self.u.add(&rhs.u), self.v.add(&rhs.v))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.ctx.elem(self.u.sub(&rhs.u), self.v.sub(&rhs.v))
    }
    fn mul(&self, rhs: &Self) -> Self {
        let vv = self.v.mul(&rhs.v);
        let u = self.u.mul(&rhs.u).sub(&self.ctx.gamma.mul(&vv));
        let v = self
            .u
            .mul(&rhs.v)
            .add(&self.v.mul(&rhs.u))
            .sub(&self.ctx.beta.mul(&vv));
        self.ctx.elem(u, v)
    }
    fn neg(&self) -> Self {
        self.ctx.elem(self.u.neg(), self.v.neg())
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl<F: Field> Field for QuotElem<F> {
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        if !self.ctx.quadratic {
            return Some(self.ctx.elem(n, F::zero(&self.ctx.base)));
        }
        let u = self.u.sub(&self.ctx.beta.mul(&self.v));
        Some(self.ctx.elem(u.mul(&n), self.v.neg().mul(&n)))
    }
}

impl<F: Field + QAlgebra> QAlgebra for QuotElem<F> {
    fn scale(&self, q: &Rational) -> Self {
        self.ctx.elem(self.u.scale(q), self.v.scale(q))
    }
}

impl<F: Field + fmt::Display> fmt::Display for QuotElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{} + ({})*t", self.u, self.v)
        }
    }
}

/// A point of `P^1` over `Q(sqrt D)` given by a monic irreducible
/// polynomial of degree 1 or 2. Quadratic points are never split.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraicPoint {
    minpoly: Poly<QuadNum>,
}

impl AlgebraicPoint {
    pub fn new(minpoly: Poly<QuadNum>) -> Result<Self, PolyError> {
        let m = minpoly.monic();
        match m.degree() {
            Some(1) => Ok(AlgebraicPoint { minpoly: m }),
            Some(2) => {
                let (b, c) = (m.coeff(1), m.coeff(0));
                let disc = b.mul(&b).sub(&c.mul(&QuadNum::int(4, c.disc())));
                if disc.sqrt().is_some() {
                    Err(PolyError::Reducible)
                } else {
                    Ok(AlgebraicPoint { minpoly: m })
                }
            }
            _ => Err(PolyError::Reducible),
        }
    }

    pub fn rational(a: &QuadNum) -> Self {
        AlgebraicPoint {
            minpoly: Poly::linear_root(a),
        }
    }

    pub fn minpoly(&self) -> &Poly<QuadNum> {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg() as usize
    }

    pub fn as_rational(&self) -> Option<QuadNum> {
        (self.degree() == 1).then(|| self.minpoly.coeff(0).neg())
    }

    pub fn quot_ctx(&self) -> QuotCtx<QuadNum> {
        QuotCtx::from_minpoly(&self.minpoly)
    }

    pub fn conj(&self) -> Self {
        AlgebraicPoint {
            minpoly: self.minpoly.map(self.minpoly.scalar_ctx().clone(), |c| c.conj()),
        }
    }
}

impl fmt::Display for AlgebraicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(a) => write!(f, "{a}"),
            None => write!(f, "root of {}", self.minpoly),
        }
    }
}

pub fn eval_poly_at_algebraic(f: &Poly<QuadNum>, pt: &AlgebraicPoint) -> QuotElem<QuadNum> {
    let ctx = pt.quot_ctx();
    f.eval_with(&ctx.generator(), |c| ctx.embed(c))
}

/// Image of `f` in the quotient algebra at `pt`.
pub fn eval_at_algebraic(
    f: &RatFun<QuadNum>,
    pt: &AlgebraicPoint,
) -> Result<QuotElem<QuadNum>, PolyError> {
    let d = eval_poly_at_algebraic(f.den(), pt);
    let dinv = d.inv().ok_or(PolyError::PoleAtPoint)?;
    Ok(eval_poly_at_algebraic(f.num(), pt).mul(&dinv))
}

/// A root of a polynomial over `Q(sqrt D)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Root {
    Point(QuadNum),
    Algebraic(AlgebraicPoint),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootDecomposition {
    /// Roots of multiplicity at least two.
    pub multiple: Vec<(Root, usize)>,
    /// Simple roots coming from linear or split quadratic factors.
    pub simple: Vec<Root>,
    /// Degree of the simple part not split into roots.
    pub simple_unsplit_degree: usize,
}

fn split_factor(a: &Poly<QuadNum>) -> Option<Vec<Root>> {
    match a.degree()? {
        1 => Some(vec![Root::Point(a.coeff(0).neg().div(a.lc()?)?)]),
        2 => {
            let m = a.monic();
            let (b, c) = (m.coeff(1), m.coeff(0));
            let d = b.disc();
            let disc = b.mul(&b).sub(&c.mul(&QuadNum::int(4, d)));
            let half = Rational::new((-1).into(), 2.into());
            match disc.sqrt() {
                Some(s) => Some(vec![
                    Root::Point(b.add(&s).scale(&half)),
                    Root::Point(b.sub(&s).scale(&half)),
                ]),
                None => Some(vec![Root::Algebraic(AlgebraicPoint { minpoly: m })]),
            }
        }
        _ => None,
    }
}

/// Multiple roots (with multiplicity) and split simple roots of `f`.
pub fn squarefree_multiple_roots(f: &Poly<QuadNum>) -> Result<RootDecomposition, PolyError> {
    let mut out = RootDecomposition {
        multiple: vec![],
        simple: vec![],
        simple_unsplit_degree: 0,
    };
    for (i, a) in f.squarefree_yun().iter().enumerate() {
        let mult = i + 1;
        if a.deg() <= 0 {
            continue;
        }
        match (split_factor(a), mult) {
            (Some(roots), 1) => out.simple.extend(roots),
            (Some(roots), m) => out.multiple.extend(roots.into_iter().map(|r| (r, m))),
            (None, 1) => out.simple_unsplit_degree += a.deg() as usize,
            (None, _) => return Err(PolyError::UnsplittableFactor(a.deg() as usize)),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64], d: i64) -> Poly<QuadNum> {
        Poly::from_i64s(&d, cs)
    }

    #[test]
    fn quotient_examples() {
        let pt = AlgebraicPoint::new(p(&[1, 0, 1], 17)).unwrap();
        let t2 = p(&[0, 0, 1], 17);
        let v = eval_poly_at_algebraic(&t2, &pt);
        assert_eq!(v.as_constant(), Some(&QuadNum::int(-1, 17)));

        let beta = QuadNum::from_ints(0, 71, 128, 13);
        let m = Poly::new(13, vec![QuadNum::int(1, 13), beta.clone(), QuadNum::int(1, 13)]);
        let pt = AlgebraicPoint::new(m).unwrap();
        let inv_t = RatFun::new(p(&[1], 13), p(&[0, 1], 13));
        let v = eval_at_algebraic(&inv_t, &pt).unwrap();
        assert_eq!(v.u(), &beta.neg());
        assert_eq!(v.v(), &QuadNum::int(-1, 13));
    }

    #[test]
    fn pole_is_reported() {
        let pt = AlgebraicPoint::new(p(&[1, 0, 1], 17)).unwrap();
        let f = RatFun::new(p(&[1], 17), p(&[1, 0, 1], 17).mul(&p(&[3, 1], 17)));
        assert_eq!(eval_at_algebraic(&f, &pt), Err(PolyError::PoleAtPoint));
    }

    #[test]
    fn reducible_quadratic_rejected() {
        assert_eq!(AlgebraicPoint::new(p(&[-17, 0, 1], 17)), Err(PolyError::Reducible));
        assert!(AlgebraicPoint::new(p(&[-13, 0, 1], 17)).is_ok());
    }

    #[test]
    fn multiple_roots() {
        let f = p(&[-1, 1], 17).pow(2).mul(&p(&[-2, 1], 17));
        let r = squarefree_multiple_roots(&f).unwrap();
        assert_eq!(r.multiple, vec![(Root::Point(QuadNum::int(1, 17)), 2)]);
        assert_eq!(r.simple, vec![Root::Point(QuadNum::int(2, 17))]);

        let r = squarefree_multiple_roots(&p(&[1, 0, 1], 17)).unwrap();
        assert!(r.multiple.is_empty());
        assert!(matches!(r.simple[0], Root::Algebraic(_)));

        let cubic = p(&[2, 0, 0, 1], 17).pow(2);
        assert_eq!(squarefree_multiple_roots(&cubic), Err(PolyError::UnsplittableFactor(3)));
    }

    #[test]
    fn quotient_field_inverse() {
        let pt = AlgebraicPoint::new(p(&[3, 1, 1], 17)).unwrap();
        let ctx = pt.quot_ctx();
        let x = ctx.elem(QuadNum::from_ints(2, 1, 3, 17), QuadNum::int(-5, 17));
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }
}
