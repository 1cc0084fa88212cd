use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::numring::{Field, QAlgebra, Rational, Ring};

use super::Poly;

/// Quotient `num / den` of polynomials over a field, with `den` monic and
/// `gcd(num, den) = 1`.
#[derive(Clone, PartialEq)]
pub struct RatFun<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFun<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let ctx = num.scalar_ctx().clone();
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::one(&ctx),
            };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.deg() > 0 {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        } else {
            (num, den)
        };
        let l = d.lc().unwrap().inv().expect("unit");
        n = n.mul_scalar(&l);
        d = d.mul_scalar(&l);
        RatFun { num: n, den: d }
    }

    /// Builds without the gcd step. The caller guarantees coprimality.
    pub fn new_coprime(num: Poly<F>, den: Poly<F>) -> Self {
        let l = den.lc().expect("zero denominator").inv().expect("unit");
        RatFun {
            num: num.mul_scalar(&l),
            den: den.mul_scalar(&l),
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let ctx = p.scalar_ctx().clone();
        RatFun {
            num: p,
            den: Poly::one(&ctx),
        }
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFun::new(n, self.den.mul(&self.den))
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        self.num.eval(x).div(&d)
    }

    /// Order of vanishing along the irreducible polynomial `q`
    /// (negative at poles). `None` for the zero function.
    pub fn order_at(&self, q: &Poly<F>) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        let count = |p: &Poly<F>| {
            let mut p = p.clone();
            let mut k = 0;
            loop {
                let (qq, r) = p.div_rem(q);
                if !r.is_zero() {
                    return k;
                }
                p = qq;
                k += 1;
            }
        };
        Some(count(&self.num) - count(&self.den))
    }

    /// Order at infinity: `deg den - deg num`.
    pub fn order_at_infinity(&self) -> Option<i64> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.den.deg() - self.num.deg())
        }
    }
}

impl<F: Field> Ring for RatFun<F> {
    type Ctx = F::Ctx;

    fn ctx(&self) -> F::Ctx {
        self.num.scalar_ctx().clone()
    }
    fn zero(ctx: &F::Ctx) -> Self {
        RatFun::from_poly(Poly::zero(ctx))
    }
    fn one(ctx: &F::Ctx) -> Self {
        RatFun::from_poly(Poly::one(ctx))
    }
    fn from_int(ctx: &F::Ctx, n: &BigInt) -> Self {
        RatFun::from_poly(Poly::from_int(ctx, n))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFun::new(self.num.add(&rhs.num), self.den.clone());
        }
        RatFun::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFun::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl<F: Field> Field for RatFun<F> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(RatFun::new_coprime(self.den.clone(), self.num.clone()))
    }
}

impl<F: Field + QAlgebra> QAlgebra for RatFun<F> {
    fn scale(&self, q: &Rational) -> Self {
        RatFun::new_coprime(self.num.scale(q), self.den.clone())
    }
}

impl<F: Field + fmt::Debug> fmt::Debug for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl<F: Field + fmt::Display> fmt::Display for RatFun<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl<F: Field + Serialize> Serialize for RatFun<F> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalFunction", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}
