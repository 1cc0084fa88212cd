use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::numring::{Field, QAlgebra, Rational, Ring};

const KARATSUBA_THRESHOLD: usize = 64;

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `x^i`.
///
/// The scalar context is stored so that the zero polynomial still knows
/// its ring.
#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    ctx: R::Ctx,
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(ctx: R::Ctx, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { ctx, coeffs }
    }

    pub fn from_i64s(ctx: &R::Ctx, cs: &[i64]) -> Self {
        Poly::new(ctx.clone(), cs.iter().map(|&c| R::from_i64(ctx, c)).collect())
    }

    pub fn constant(c: R) -> Self {
        Poly::new(c.ctx(), vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![R::zero(&ctx); k];
        coeffs.push(c);
        Poly::new(ctx, coeffs)
    }

    pub fn x(ctx: &R::Ctx) -> Self {
        Poly::monomial(R::one(ctx), 1)
    }

    /// `x - a`.
    pub fn linear_root(a: &R) -> Self {
        let ctx = a.ctx();
        Poly::new(ctx.clone(), vec![a.neg(), R::one(&ctx)])
    }

    pub fn scalar_ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| R::zero(&self.ctx))
    }

    pub fn mul_scalar(&self, c: &R) -> Self {
        Poly::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::new(self.ctx.clone(), coeffs)
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(
            self.ctx.clone(),
            self.coeffs.iter().take(n).cloned().collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.ctx.clone(),
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_i64(&self.ctx, i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluates at a point of an `R`-algebra `S`, embedding coefficients
    /// with `embed`.
    pub fn eval_with<S: Ring>(&self, pt: &S, embed: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero(&pt.ctx());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(pt).add(&embed(c));
        }
        acc
    }

    pub fn compose(&self, inner: &Poly<R>) -> Poly<R> {
        let mut acc = Poly::new(self.ctx.clone(), vec![]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(ctx, self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<S: Ring, E>(
        &self,
        ctx: S::Ctx,
        f: impl Fn(&R) -> Result<S, E>,
    ) -> Result<Poly<S>, E> {
        Ok(Poly::new(
            ctx,
            self.coeffs.iter().map(f).collect::<Result<_, _>>()?,
        ))
    }

    /// `x^w f(1/x)`; requires `w >= deg f`.
    pub fn reversed(&self, w: usize) -> Self {
        assert!(self.coeffs.len() <= w + 1, "weight below degree");
        let mut coeffs = vec![R::zero(&self.ctx); w + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[w - i] = c.clone();
        }
        Poly::new(self.ctx.clone(), coeffs)
    }

    /// `true` iff `x^w f(1/x) = f(x)`.
    pub fn reciprocal_check(&self, w: usize) -> bool {
        self.coeffs.len() <= w + 1 && self.reversed(w) == *self
    }

    /// Pseudo-division: returns `(q, r)` with
    /// `lc(b)^(deg a - deg b + 1) a = q b + r`, `deg r < deg b`.
    pub fn pseudo_div_rem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("pseudo-division by zero");
        let lb = b.lc().unwrap().clone();
        let zero = R::zero(&self.ctx);
        let Some(da) = self.degree().filter(|&d| d >= db) else {
            return (Poly::new(self.ctx.clone(), vec![]), self.clone());
        };
        let mut r = self.coeffs.clone();
        let mut q = vec![zero.clone(); da - db + 1];
        for k in (0..=da - db).rev() {
            let lead = r[k + db].clone();
            for qc in q.iter_mut() {
                *qc = qc.mul(&lb);
            }
            q[k] = lead.clone();
            for rc in r.iter_mut().take(k + db) {
                *rc = rc.mul(&lb);
            }
            r[k + db] = zero.clone();
            if !lead.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate().take(db) {
                    r[k + i] = r[k + i].sub(&lead.mul(bc));
                }
            }
        }
        (
            Poly::new(self.ctx.clone(), q),
            Poly::new(self.ctx.clone(), r),
        )
    }

    pub fn pseudo_rem(&self, b: &Self) -> Self {
        self.pseudo_div_rem(b).1
    }

    /// Division by a polynomial with unit leading coefficient `1`
    /// (monic divisor) over any ring.
    pub fn div_rem_monic(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero");
        assert!(b.lc().unwrap().is_one(), "divisor must be monic");
        let Some(da) = self.degree().filter(|&d| d >= db) else {
            return (Poly::new(self.ctx.clone(), vec![]), self.clone());
        };
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(&self.ctx); da - db + 1];
        for k in (0..=da - db).rev() {
            let lead = std::mem::replace(&mut r[k + db], R::zero(&self.ctx));
            if lead.is_zero() {
                continue;
            }
            for (i, bc) in b.coeffs.iter().enumerate().take(db) {
                r[k + i] = r[k + i].sub(&lead.mul(bc));
            }
            q[k] = lead;
        }
        (
            Poly::new(self.ctx.clone(), q),
            Poly::new(self.ctx.clone(), r),
        )
    }

    /// Exact quotient `self / b` using exact division of coefficients.
    pub fn div_exact_poly(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        if self.coeffs.is_empty() {
            return Some(self.clone());
        }
        let da = self.degree()?;
        if da < db {
            return None;
        }
        let lb = b.lc().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![R::zero(&self.ctx); da - db + 1];
        for k in (0..=da - db).rev() {
            let lead = r[k + db].div_exact(lb)?;
            if !lead.is_zero() {
                for (i, bc) in b.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].sub(&lead.mul(bc));
                }
            }
            q[k] = lead;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::new(self.ctx.clone(), q))
    }

    fn add_into(acc: &mut Vec<R>, other: &[R], ctx: &R::Ctx) {
        if acc.len() < other.len() {
            acc.resize(other.len(), R::zero(ctx));
        }
        for (a, b) in acc.iter_mut().zip(other) {
            *a = a.add(b);
        }
    }
}

fn schoolbook<R: Ring>(a: &[R], b: &[R], ctx: &R::Ctx) -> Vec<R> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![R::zero(ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

fn karatsuba<R: Ring>(a: &[R], b: &[R], ctx: &R::Ctx) -> Vec<R> {
    if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(a, b, ctx);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = karatsuba(a0, b0, ctx);
    let z2 = karatsuba(a1, b1, ctx);
    let sum = |x: &[R], y: &[R]| {
        let mut s = x.to_vec();
        Poly::<R>::add_into(&mut s, y, ctx);
        s
    };
    let mut z1 = karatsuba(&sum(a0, a1), &sum(b0, b1), ctx);
    for (i, c) in z0.iter().enumerate() {
        z1[i] = z1[i].sub(c);
    }
    for (i, c) in z2.iter().enumerate() {
        z1[i] = z1[i].sub(c);
    }
    let mut out = vec![R::zero(ctx); a.len() + b.len() - 1];
    for (i, c) in z0.into_iter().enumerate() {
        out[i] = out[i].add(&c);
    }
    for (i, c) in z1.into_iter().enumerate() {
        if i + m < out.len() {
            out[i + m] = out[i + m].add(&c);
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        out[i + 2 * m] = out[i + 2 * m].add(&c);
    }
    out
}

impl<R: Ring> Ring for Poly<R> {
    type Ctx = R::Ctx;

    fn ctx(&self) -> R::Ctx {
        self.ctx.clone()
    }
    fn zero(ctx: &R::Ctx) -> Self {
        Poly::new(ctx.clone(), vec![])
    }
    fn one(ctx: &R::Ctx) -> Self {
        Poly::new(ctx.clone(), vec![R::one(ctx)])
    }
    fn from_int(ctx: &R::Ctx, n: &BigInt) -> Self {
        Poly::new(ctx.clone(), vec![R::from_int(ctx, n)])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut c = self.coeffs.clone();
        Poly::add_into(&mut c, &rhs.coeffs, &self.ctx);
        Poly::new(self.ctx.clone(), c)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::new(
            self.ctx.clone(),
            karatsuba(&self.coeffs, &rhs.coeffs, &self.ctx),
        )
    }
    fn neg(&self) -> Self {
        Poly::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|c| c.neg()).collect(),
        )
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.div_exact_poly(rhs)
    }
}

impl<R: QAlgebra> QAlgebra for Poly<R> {
    fn scale(&self, q: &Rational) -> Self {
        Poly::new(
            self.ctx.clone(),
            self.coeffs.iter().map(|c| c.scale(q)).collect(),
        )
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division over a field.
    pub fn div_rem(&self, b: &Self) -> (Self, Self) {
        let inv = b
            .lc()
            .expect("division by zero polynomial")
            .inv()
            .expect("leading coefficient must be a unit");
        let (q, r) = self.mul_scalar(&inv).div_rem_monic(&b.mul_scalar(&inv));
        (q, r.mul_scalar(b.lc().unwrap()))
    }

    pub fn rem(&self, b: &Self) -> Self {
        self.div_rem(b).1
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(l) => self.mul_scalar(&l.inv().expect("unit leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: returns `a_1, a_2, ...` (monic)
    /// with `self = lc * a_1 a_2^2 a_3^3 ...`. Characteristic zero.
    pub fn squarefree_yun(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            out.push(a);
        }
        while out.last().is_some_and(|a| a.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Returns `(s, t, g)` with `s a + t b = g`, `g` the monic gcd.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let ctx = self.ctx.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(&ctx), Poly::zero(&ctx));
        let (mut t0, mut t1) = (Poly::zero(&ctx), Poly::one(&ctx));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            (r0, r1) = (r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            (s0, s1) = (s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            (t0, t1) = (t1, t2);
        }
        match r0.lc().cloned() {
            Some(l) => {
                let inv = l.inv().expect("unit");
                (s0.mul_scalar(&inv), t0.mul_scalar(&inv), r0.mul_scalar(&inv))
            }
            None => (s0, t0, r0),
        }
    }
}

impl<R: Ring + fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})*x")?,
                _ => write!(f, "({c:?})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<R: Ring + Serialize> Serialize for Poly<R> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numring::QuadNum;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> QuadNum {
        QuadNum::from_ints(a, b, 1, 17)
    }

    fn p(cs: &[(i64, i64)]) -> Poly<QuadNum> {
        Poly::new(17, cs.iter().map(|&(a, b)| q(a, b)).collect())
    }

    #[test]
    fn basic_arithmetic() {
        let f = Poly::<QuadNum>::from_i64s(&17, &[1, 1]);
        let g = Poly::<QuadNum>::from_i64s(&17, &[1, -1]);
        assert_eq!(f.mul(&g), Poly::from_i64s(&17, &[1, 0, -1]));
        assert_eq!(f.sub(&f), Poly::zero(&17));
        assert_eq!(f.mul(&g).derivative(), Poly::from_i64s(&17, &[0, -2]));
    }

    #[test]
    fn reciprocal() {
        assert!(Poly::<QuadNum>::from_i64s(&17, &[3, 3]).reciprocal_check(1));
        assert!(Poly::<QuadNum>::from_i64s(&17, &[1, 0, 1]).reciprocal_check(2));
        assert!(!Poly::<QuadNum>::from_i64s(&17, &[2, 1]).reciprocal_check(1));
    }

    #[test]
    fn yun_decomposition() {
        let a = Poly::<QuadNum>::from_i64s(&17, &[-1, 1]);
        let b = Poly::<QuadNum>::from_i64s(&17, &[-2, 1]);
        let f = a.mul(&a).mul(&b);
        let parts = f.squarefree_yun();
        assert_eq!(parts, vec![b, a]);
    }

    #[test]
    fn xgcd_bezout() {
        let f = p(&[(1, 1), (0, 2), (3, 0), (1, 0)]);
        let g = p(&[(2, 0), (-1, 1), (1, 0)]);
        let (s, t, d) = f.xgcd(&g);
        assert_eq!(s.mul(&f).add(&t.mul(&g)), d);
        assert!(d.is_one());
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = Poly<QuadNum>> {
        prop::collection::vec((-20i64..20, -20i64..20), 0..max_len).prop_map(|v| p(&v))
    }

    proptest! {
        #[test]
        fn karatsuba_matches_schoolbook(a in arb_poly(150), b in arb_poly(150)) {
            let fast = a.mul(&b);
            let slow = Poly::new(17, schoolbook(a.coeffs(), b.coeffs(), &17));
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn pseudo_division_identity(a in arb_poly(8), b in arb_poly(5)) {
            prop_assume!(!b.is_zero());
            let (qq, r) = a.pseudo_div_rem(&b);
            let e = (a.deg() - b.deg() + 1).max(0) as u64;
            let lhs = a.mul_scalar(&b.lc().unwrap().pow(e));
            prop_assert_eq!(lhs, qq.mul(&b).add(&r));
            prop_assert!(r.deg() < b.deg());
        }

        #[test]
        fn exact_division_roundtrip(a in arb_poly(6), b in arb_poly(6)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact_poly(&b), Some(a));
        }
    }
}
