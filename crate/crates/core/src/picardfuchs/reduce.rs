use num_bigint::BigInt;

use crate::numring::{QAlgebra, Rational, Ring};
use crate::polyalg::{resultant_cofactors, Poly};

use super::PfError;

/// Reduction of `P dx / y^m` on `y^2 = g(x)` to the span of
/// `x^i dx / y`, `i = 0..3`, over a coefficient domain `R`.
///
/// Denominators are tracked as a single element of `R`, so for `R = K[t]`
/// no rational-function arithmetic is needed.
#[derive(Clone, Debug)]
pub struct Reducer<R: QAlgebra> {
    g: Poly<R>,
    dg: Poly<R>,
    u: Poly<R>,
    v: Poly<R>,
    c: R,
}

/// `num / den` with `deg num <= 3`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedClass<R: QAlgebra> {
    pub num: Poly<R>,
    pub den: R,
}

impl<R: QAlgebra> ReducedClass<R> {
    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return ReducedClass {
                num: self.num.add(&rhs.num),
                den: self.den.clone(),
            };
        }
        ReducedClass {
            num: self
                .num
                .mul_scalar(&rhs.den)
                .add(&rhs.num.mul_scalar(&self.den)),
            den: self.den.mul(&rhs.den),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl<R: QAlgebra> Reducer<R> {
    /// `g` must be monic of degree 5 with `gcd(g, g') = 1`.
    pub fn new(g: Poly<R>) -> Result<Self, PfError> {
        if g.deg() != 5 || !g.lc().is_some_and(|c| c.is_one()) {
            return Err(PfError::NotMonicQuintic);
        }
        let dg = g.derivative();
        let (u, v, c) = resultant_cofactors(&g, &dg).ok_or(PfError::SingularFiber)?;
        Ok(Reducer { g, dg, u, v, c })
    }

    pub fn g(&self) -> &Poly<R> {
        &self.g
    }

    /// `u g + v g' = c`.
    pub fn cofactors(&self) -> (&Poly<R>, &Poly<R>, &R) {
        (&self.u, &self.v, &self.c)
    }

    /// One step `P/y^m -> P'/(c y^{m-2})` for odd `m >= 3`, using
    /// `W g'/y^m = (2/(m-2)) W'/y^{m-2}` modulo exact forms.
    fn step_down(&self, p: &Poly<R>, m: u32) -> Poly<R> {
        let (quo, rem) = p.mul(&self.v).div_rem_monic(&self.g);
        let lower = p.mul(&self.u).add(&quo.mul(&self.dg));
        lower.add(&rem.derivative().scale(&q(2, m as i64 - 2)))
    }

    /// Reduces `P dx/y` to degree at most 3 with
    /// `d(x^b y) = (b x^{b-1} g + x^b g'/2) dx/y`.
    fn reduce_degree(&self, p: &Poly<R>) -> Poly<R> {
        let mut p = p.clone();
        let ctx = self.g.scalar_ctx().clone();
        while p.deg() > 3 {
            let k = p.deg() as usize;
            let b = k - 4;
            let lead = p.lc().unwrap().clone();
            // Leading coefficient of d(x^b y) is (b + 5/2).
            let factor = q(2, 2 * b as i64 + 5);
            let mut exact = self.dg.mul_x_pow(b).scale(&q(1, 2));
            if b > 0 {
                exact = exact.add(
                    &self
                        .g
                        .mul_x_pow(b - 1)
                        .mul_scalar(&R::from_i64(&ctx, b as i64)),
                );
            }
            p = p.sub(&exact.mul_scalar(&lead).scale(&factor));
            debug_assert!(p.deg() < k as i64);
        }
        p
    }

    /// Class of `P dx / y^m`, `m` odd and positive.
    pub fn reduce(&self, p: &Poly<R>, m: u32) -> ReducedClass<R> {
        assert!(m % 2 == 1, "odd power of y");
        let ctx = self.g.scalar_ctx().clone();
        let mut num = p.clone();
        let mut den = R::one(&ctx);
        let mut m = m;
        while m >= 3 {
            num = self.step_down(&num, m);
            den = den.mul(&self.c);
            m -= 2;
        }
        ReducedClass {
            num: self.reduce_degree(&num),
            den,
        }
    }
}
