use serde::Serialize;

use crate::numring::{Field, Ring};

use super::{Poly, PolyError};

/// Power series known to order `N`: coefficients `c_0 .. c_N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "R: Serialize")]
pub struct SeriesPrefix<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> SeriesPrefix<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a prefix has at least c_0");
        SeriesPrefix { coeffs }
    }

    pub fn from_poly(p: &Poly<R>, order: usize) -> Self {
        SeriesPrefix::new((0..=order).map(|i| p.coeff(i)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &R {
        &self.coeffs[j]
    }

    pub fn to_poly(&self) -> Poly<R> {
        Poly::new(self.coeffs[0].ctx(), self.coeffs.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        SeriesPrefix::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        SeriesPrefix::new((0..=n).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let ctx = self.coeffs[0].ctx();
        let mut out = vec![R::zero(&ctx); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        SeriesPrefix::new(out)
    }

    /// Derivative; the order drops by one.
    pub fn derivative(&self) -> Self {
        let ctx = self.coeffs[0].ctx();
        if self.order() == 0 {
            return SeriesPrefix::new(vec![R::zero(&ctx)]);
        }
        SeriesPrefix::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_i64(&ctx, i as i64)))
                .collect(),
        )
    }

    /// `self(p(t))` for a polynomial with `p(0) = 0`; same order.
    pub fn compose(&self, p: &Poly<R>) -> Self {
        assert!(p.coeff(0).is_zero(), "inner polynomial must vanish at 0");
        let n = self.order();
        let inner = SeriesPrefix::from_poly(p, n);
        let ctx = self.coeffs[0].ctx();
        let mut acc = SeriesPrefix::new(vec![R::zero(&ctx); n + 1]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }
}

impl<F: Field> SeriesPrefix<F> {
    pub fn inverse(&self) -> Result<Self, PolyError> {
        let inv0 = self.coeffs[0].inv().ok_or(PolyError::NonUnitConstantTerm)?;
        let n = self.order();
        let mut out = vec![inv0.clone()];
        for k in 1..=n {
            let mut s = F::zero(&inv0.ctx());
            for j in 1..=k {
                s = s.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out.push(s.neg().mul(&inv0));
        }
        Ok(SeriesPrefix::new(out))
    }
}
