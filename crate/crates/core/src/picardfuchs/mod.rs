//! Picard–Fuchs operators of the eigenforms `dx/y` and `x dx/y`:
//! de Rham reduction, Gauss–Manin derivatives, local exponents and gauge
//! changes.

mod ode;
mod printed;
mod reduce;

pub use ode::{
    derive_ode, exactness_certificate, fuchs_relation_check, gauge_transform, local_exponents,
    FuchsOp, SingKind, SingPoint, Singularity,
};
pub use printed::{compare_printed, printed_operator, PrintedComparison};
pub use reduce::{ReducedClass, Reducer};

use serde::Serialize;
use thiserror::Error;

use crate::families::FamilyModel;
use crate::numring::{QAlgebra, QuadNum, Rational, Ring};
use crate::polyalg::{partial_t, BiPoly, Poly, RationalFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PfError {
    #[error("fiber is singular: gcd(g, g') is nontrivial")]
    SingularFiber,
    #[error("g must be a monic quintic in x")]
    NotMonicQuintic,
    #[error("derivatives of the form do not span a rank-two system")]
    NotRankTwo,
    #[error("irregular singularity at {0}")]
    IrregularSingularity(String),
    #[error("local exponents at {0} are not rational")]
    NonRationalExponents(String),
    #[error("denominator factor of degree {0} cannot be split into points")]
    UnsupportedFactor(usize),
    #[error("form index must be 1 or 2")]
    BadForm,
}

/// Class of `sum_i a_i x^i dx/y`, `i = 0..3`, with coefficients in
/// `Q(sqrt D)(t)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct H1Class {
    pub coords: [RationalFunction; 4],
}

impl H1Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn from_reduced(r: &ReducedClass<Poly<QuadNum>>) -> Self {
        let den = r.den.clone();
        H1Class {
            coords: std::array::from_fn(|i| RationalFunction::new(r.num.coeff(i), den.clone())),
        }
    }

    pub fn basis(d: i64, i: usize) -> Self {
        H1Class {
            coords: std::array::from_fn(|j| {
                RationalFunction::from_int(&d, &((j == i) as i64).into())
            }),
        }
    }

    pub fn conj(&self) -> Self {
        let c = |f: &RationalFunction| {
            let d = *f.num().scalar_ctx();
            RationalFunction::new(f.num().map(d, |x| x.conj()), f.den().map(d, |x| x.conj()))
        };
        H1Class {
            coords: std::array::from_fn(|i| c(&self.coords[i])),
        }
    }
}

/// Reduction of `P dx/y^m` where `P` has coefficients in `Q(sqrt D)(t)`.
pub fn dr_reduce(
    p: &Poly<RationalFunction>,
    m: u32,
    g: &BiPoly<QuadNum>,
) -> Result<H1Class, PfError> {
    let d = *g.scalar_ctx();
    let red = Reducer::new(g.clone())?;
    let den = p
        .coeffs()
        .iter()
        .fold(Poly::one(&d), |acc: Poly<QuadNum>, c| {
            let gcd = acc.gcd(c.den());
            acc.mul(&c.den().div_rem(&gcd).0)
        });
    let num: BiPoly<QuadNum> = p.map(d, |c| c.num().mul(&den.div_rem(c.den()).0));
    let r = red.reduce(&num, m);
    Ok(H1Class::from_reduced(&ReducedClass {
        num: r.num,
        den: r.den.mul(&den),
    }))
}

/// Gauss–Manin data of a family, with the reducer built once.
pub struct GaussManin {
    d: i64,
    red: Reducer<Poly<QuadNum>>,
    gt: BiPoly<QuadNum>,
    gtt: BiPoly<QuadNum>,
}

impl GaussManin {
    pub fn new(fm: &FamilyModel) -> Result<Self, PfError> {
        let g = fm.g();
        let gt = partial_t(&g);
        let gtt = partial_t(&gt);
        Ok(GaussManin {
            d: fm.d,
            red: Reducer::new(g)?,
            gt,
            gtt,
        })
    }

    /// Reduced class of `∇^order ω_i` with the common denominator kept.
    pub fn reduced(&self, i: usize, order: u32) -> Result<ReducedClass<Poly<QuadNum>>, PfError> {
        if !(1..=2).contains(&i) {
            return Err(PfError::BadForm);
        }
        let d = self.d;
        let xi: BiPoly<QuadNum> = Poly::monomial(Poly::one(&d), i - 1);
        let half = Rational::new((-1).into(), 2.into());
        Ok(match order {
            0 => self.red.reduce(&xi, 1),
            1 => self.red.reduce(&self.gt.mul(&xi).scale(&half), 3),
            2 => {
                let a = self
                    .gt
                    .mul(&self.gt)
                    .mul(&xi)
                    .scale(&Rational::new(3.into(), 4.into()));
                let b = self.gtt.mul(&xi).scale(&half);
                let (r5, r3) = (self.red.reduce(&a, 5), self.red.reduce(&b, 3));
                let c = self.red.cofactors().2;
                ReducedClass {
                    num: r5.num.add(&r3.num.mul_scalar(c)),
                    den: r5.den,
                }
            }
            _ => panic!("orders 0, 1, 2 only"),
        })
    }

    pub fn class(&self, i: usize, order: u32) -> Result<H1Class, PfError> {
        Ok(H1Class::from_reduced(&self.reduced(i, order)?))
    }
}

/// Class of `∇(∂/∂t)^order ω_i` for `ω_1 = dx/y`, `ω_2 = x dx/y`.
pub fn gauss_manin(fm: &FamilyModel, i: usize, order: u32) -> Result<H1Class, PfError> {
    GaussManin::new(fm)?.class(i, order)
}
