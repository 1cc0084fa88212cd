use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::arith::{hensel_sqrt, is_prime, legendre, mod_inv, mul_mod};
use super::quad::{rational_to_string, QuadNum, Rational};
use super::{Field, NumError, Ring};

/// Reduction data for a prime `p` of good residue behaviour in `Q(sqrt D)`.
///
/// `k = 1` when `D` is a square mod `p`; then `sqrt D` is sent to the
/// canonical Hensel lift. For `k = 2` the ring is `(Z/p^n)[s]/(s^2 - D)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeContext {
    p: u64,
    n: u32,
    modulus: u64,
    d: i64,
    d_mod: u64,
    sqrt_d: Option<u64>,
}

impl PrimeContext {
    pub fn new(d: i64, p: u64, n: u32) -> Result<Self, NumError> {
        if p == 2 || !is_prime(p) {
            return Err(NumError::BadPrime(p));
        }
        if n == 0 {
            return Err(NumError::BadPrime(p));
        }
        if legendre(d, p) == 0 {
            return Err(NumError::RamifiedPrime { p, d });
        }
        let modulus = p
            .checked_pow(n)
            .filter(|&m| m < (1 << 62))
            .ok_or(NumError::BadPrime(p))?;
        let sqrt_d = if legendre(d, p) == 1 {
            Some(hensel_sqrt(d, p, n)?)
        } else {
            None
        };
        Ok(PrimeContext {
            p,
            n,
            modulus,
            d,
            d_mod: (d as i128).rem_euclid(modulus as i128) as u64,
            sqrt_d,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn disc(&self) -> i64 {
        self.d
    }

    /// Residue degree: 1 if `D` is a square mod `p`, 2 otherwise.
    pub fn k(&self) -> u8 {
        if self.sqrt_d.is_some() {
            1
        } else {
            2
        }
    }

    pub fn is_split(&self) -> bool {
        self.sqrt_d.is_some()
    }

    pub fn sqrt_d_rep(&self) -> Option<u64> {
        self.sqrt_d
    }

    pub(crate) fn d_mod(&self) -> u64 {
        self.d_mod
    }

    /// The same prime at a different precision.
    pub fn with_precision(&self, n: u32) -> PrimeContext {
        PrimeContext::new(self.d, self.p, n).expect("valid context stays valid")
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits")
    }

    pub fn reduce_rational(&self, q: &Rational) -> Result<u64, NumError> {
        let den = self.reduce_int(q.denom());
        let inv = mod_inv(den, self.modulus).ok_or_else(|| NumError::BadDenominator {
            value: rational_to_string(q),
            p: self.p,
        })?;
        Ok(mul_mod(self.reduce_int(q.numer()), inv, self.modulus))
    }

    pub fn elem(&self, c0: u64, c1: u64) -> PadicQuad {
        debug_assert!(self.k() == 2 || c1 == 0);
        PadicQuad {
            ctx: *self,
            c0: c0 % self.modulus,
            c1: c1 % self.modulus,
        }
    }
}

/// Element of `O_D / p^n` (or of `Z/p^n` after substituting `sqrt D` when
/// `D` splits): `c0 + c1 s` with `s^2 = D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicQuad {
    ctx: PrimeContext,
    c0: u64,
    c1: u64,
}

impl PadicQuad {
    pub fn context(&self) -> &PrimeContext {
        &self.ctx
    }

    pub fn c0(&self) -> u64 {
        self.c0
    }

    pub fn c1(&self) -> u64 {
        self.c1
    }

    /// Image of `x` under `O_D[1/m] -> O_D / p^n`, `p` not dividing `m`.
    pub fn reduce(x: &QuadNum, ctx: &PrimeContext) -> Result<PadicQuad, NumError> {
        if x.disc() != ctx.d {
            return Err(NumError::DiscMismatch(x.disc(), ctx.d));
        }
        let a = ctx.reduce_rational(x.a())?;
        let b = ctx.reduce_rational(x.b())?;
        Ok(match ctx.sqrt_d {
            Some(r) => ctx.elem((a + mul_mod(b, r, ctx.modulus)) % ctx.modulus, 0),
            None => ctx.elem(a, b),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.norm_residue() % self.ctx.p != 0
    }

    fn norm_residue(&self) -> u64 {
        let m = self.ctx.modulus;
        let a2 = mul_mod(self.c0, self.c0, m);
        let b2 = mul_mod(mul_mod(self.c1, self.c1, m), self.ctx.d_mod, m);
        (a2 + m - b2) % m
    }

    /// Reduction to a lower precision `p^m`, `m <= n`.
    pub fn truncate(&self, m: u32) -> PadicQuad {
        let ctx = self.ctx.with_precision(m);
        ctx.elem(self.c0, self.c1)
    }
}

impl Ring for PadicQuad {
    type Ctx = PrimeContext;

    fn ctx(&self) -> PrimeContext {
        self.ctx
    }
    fn zero(ctx: &PrimeContext) -> Self {
        ctx.elem(0, 0)
    }
    fn one(ctx: &PrimeContext) -> Self {
        ctx.elem(1, 0)
    }
    fn from_int(ctx: &PrimeContext, n: &BigInt) -> Self {
        ctx.elem(ctx.reduce_int(n), 0)
    }
    fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        let m = self.ctx.modulus;
        self.ctx.elem((self.c0 + rhs.c0) % m, (self.c1 + rhs.c1) % m)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let m = self.ctx.modulus;
        self.ctx
            .elem((self.c0 + m - rhs.c0) % m, (self.c1 + m - rhs.c1) % m)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let m = self.ctx.modulus;
        if self.ctx.sqrt_d.is_some() {
            return self.ctx.elem(mul_mod(self.c0, rhs.c0, m), 0);
        }
        let a = (mul_mod(self.c0, rhs.c0, m)
            + mul_mod(mul_mod(self.c1, rhs.c1, m), self.ctx.d_mod, m))
            % m;
        let b = (mul_mod(self.c0, rhs.c1, m) + mul_mod(self.c1, rhs.c0, m)) % m;
        self.ctx.elem(a, b)
    }
    fn neg(&self) -> Self {
        let m = self.ctx.modulus;
        self.ctx.elem((m - self.c0) % m, (m - self.c1) % m)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl Field for PadicQuad {
    fn inv(&self) -> Option<Self> {
        let m = self.ctx.modulus;
        let ninv = mod_inv(self.norm_residue(), m)?;
        Some(
            self.ctx
                .elem(mul_mod(self.c0, ninv, m), mul_mod((m - self.c1) % m, ninv, m)),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct PadicRepr {
    p: u64,
    n: u32,
    k: u8,
    c0: String,
    c1: String,
}

impl Serialize for PadicQuad {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PadicRepr {
            p: self.ctx.p,
            n: self.ctx.n,
            k: self.ctx.k(),
            c0: self.c0.to_string(),
            c1: self.c1.to_string(),
        }
        .serialize(s)
    }
}
