//! Exact scalar arithmetic.
//!
//! Everything in this crate is generic over [`Ring`]: the real quadratic
//! field `Q(sqrt D)` ([`QuadNum`]), the truncated completions
//! `O_D / p^n` ([`PadicQuad`]), prime residue fields ([`Zmod`]) and the
//! polynomial and quotient rings built on top of them in `polyalg`.

mod arith;
mod padic;
mod quad;
mod zmod;

pub use arith::{
    factor_small, hensel_sqrt, is_prime, is_square, legendre, mod_inv, mod_pow, primes_up_to,
    squarefree_decomposition_int, tonelli_shanks,
};
pub use padic::{PadicQuad, PrimeContext};
pub use quad::{parse_rational, rational_serde, rational_to_string, s_integral, QuadNum, Rational};
pub use zmod::Zmod;

use std::fmt::Debug;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("elements of Q(sqrt {0}) and Q(sqrt {1}) are not composable")]
    DiscMismatch(i64, i64),
    #[error("{d} is not a quadratic residue modulo {p}")]
    NotResidue { d: i64, p: u64 },
    #[error("denominator of {value} is divisible by {p}")]
    BadDenominator { value: String, p: u64 },
    #[error("p = {0} is not an odd prime")]
    BadPrime(u64),
    #[error("p = {p} divides the discriminant {d}")]
    RamifiedPrime { p: u64, d: i64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Commutative ring with an explicit context.
///
/// Elements carry enough information to rebuild their context (the
/// discriminant for `Q(sqrt D)`, the prime data for `O_D/p^n`), so that
/// zero and one can be created anywhere a polynomial needs them.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: &BigInt) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Exact quotient `self / rhs`, or `None` if `rhs` does not divide `self`.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self {
        Self::from_int(ctx, &BigInt::from(n))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element that is a unit can be inverted.
///
/// For genuine fields `inv` succeeds on every nonzero element; for the
/// truncated rings `Z/p^n` it fails on non-units.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Rings containing `Q`, so that rational constants act by scaling.
pub trait QAlgebra: Ring {
    fn scale(&self, q: &Rational) -> Self;

    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self {
        Self::one(ctx).scale(q)
    }
}
