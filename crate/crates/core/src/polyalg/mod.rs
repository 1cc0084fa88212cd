//! Polynomials, rational functions, truncated power series and quadratic
//! quotient algebras over the scalar rings of [`crate::numring`].

mod algebraic;
pub mod linalg;
mod poly;
mod ratfun;
mod resultant;
mod series;

pub use algebraic::{
    eval_at_algebraic, eval_poly_at_algebraic, squarefree_multiple_roots, AlgebraicPoint,
    QuotCtx, QuotElem, Root, RootDecomposition,
};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use resultant::{discriminant, resultant, resultant_cofactors};
pub use series::SeriesPrefix;

use thiserror::Error;

use crate::numring::{QuadNum, Ring};

/// Rational functions in `t` over `Q(sqrt D)`.
pub type RationalFunction = RatFun<QuadNum>;

/// Polynomials in `x` whose coefficients are polynomials in `t`.
pub type BiPoly<R> = Poly<Poly<R>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("denominator vanishes at the point")]
    PoleAtPoint,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("multiple-root factor of degree {0} does not split over the base field")]
    UnsplittableFactor(usize),
    #[error("polynomial is reducible or of unsupported degree")]
    Reducible,
}

/// Discriminant in `x` of a bivariate polynomial, as a polynomial in `t`.
pub fn discriminant_x<R: Ring>(g: &BiPoly<R>) -> Poly<R> {
    discriminant(g)
}

/// `∂g/∂t`, coefficientwise.
pub fn partial_t<R: Ring>(g: &BiPoly<R>) -> BiPoly<R> {
    g.map(g.scalar_ctx().clone(), |c| c.derivative())
}

/// `g(x, t0)`.
pub fn specialize_t<R: Ring>(g: &BiPoly<R>, t0: &R) -> Poly<R> {
    g.map(g.scalar_ctx().clone(), |c| c.eval(t0))
}

/// `true` iff `t^w c(1/t) = c(t)`.
pub fn reciprocal_check<R: Ring>(c: &Poly<R>, w: usize) -> bool {
    c.reciprocal_check(w)
}
