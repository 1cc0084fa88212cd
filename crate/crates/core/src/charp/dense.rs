//! Dense bivariate arithmetic over `O_D / p^n` for the large powers
//! `g^{(p^n - 1)/2}`. Residues are small, so products are accumulated in
//! `u64` and reduced once per outer row.

use crate::families::FamilyModel;
use crate::numring::{PadicQuad, PrimeContext};
use crate::polyalg::Poly;

use super::{CharpError, ModPoly};

#[derive(Clone, Debug, Default)]
struct Row {
    a: Vec<u64>,
    /// `sqrt D` part; empty when `D` splits.
    b: Vec<u64>,
}

/// `sum_i rows[i](t) x^i`.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    ctx: PrimeContext,
    rows: Vec<Row>,
}

/// Largest modulus for which a row of lazy products cannot overflow.
const LAZY_LIMIT: u64 = 1 << 20;

fn conv_acc(out: &mut Vec<u64>, a: &[u64], b: &[u64]) {
    if a.is_empty() || b.is_empty() {
        return;
    }
    if out.len() < a.len() + b.len() - 1 {
        out.resize(a.len() + b.len() - 1, 0);
    }
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (o, &y) in out[i..].iter_mut().zip(b) {
            *o += x * y;
        }
    }
}

fn reduce_vec(v: &mut [u64], m: u64) {
    for x in v.iter_mut() {
        *x %= m;
    }
}

impl Dense {
    pub(crate) fn from_family(fm: &FamilyModel, ctx: &PrimeContext) -> Result<Self, CharpError> {
        let split = ctx.is_split();
        let rows = fm
            .c
            .iter()
            .map(|ck| {
                let mut row = Row::default();
                for c in ck.coeffs() {
                    let r = PadicQuad::reduce(c, ctx)?;
                    row.a.push(r.c0());
                    if !split {
                        row.b.push(r.c1());
                    }
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>, CharpError>>()?;
        Ok(Dense { ctx: *ctx, rows })
    }

    fn one(ctx: &PrimeContext) -> Self {
        Dense {
            ctx: *ctx,
            rows: vec![Row {
                a: vec![1],
                b: if ctx.is_split() { vec![] } else { vec![0] },
            }],
        }
    }

    pub(crate) fn x_degree(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    /// Product with terms of `x`-degree above `xmax` dropped.
    fn mul_trunc(&self, rhs: &Dense, xmax: usize) -> Dense {
        let m = self.ctx.modulus();
        assert!(m < LAZY_LIMIT, "modulus too large for dense powering");
        let split = self.ctx.is_split();
        let len = (self.rows.len() + rhs.rows.len()).saturating_sub(1).min(xmax + 1);
        let mut aa = vec![Vec::new(); len];
        let mut bb = vec![Vec::new(); len];
        let mut ab = vec![Vec::new(); len];
        for (i, f) in self.rows.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, g) in rhs.rows.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                conv_acc(&mut aa[k], &f.a, &g.a);
                if !split {
                    conv_acc(&mut bb[k], &f.b, &g.b);
                    conv_acc(&mut ab[k], &f.a, &g.b);
                    conv_acc(&mut ab[k], &f.b, &g.a);
                }
            }
            // Each entry received at most two products per inner step.
            for k in i..len.min(i + rhs.rows.len()) {
                reduce_vec(&mut aa[k], m);
                if !split {
                    reduce_vec(&mut bb[k], m);
                    reduce_vec(&mut ab[k], m);
                }
            }
        }
        let d = self.ctx.d_mod();
        let rows = (0..len)
            .map(|k| {
                let mut a = std::mem::take(&mut aa[k]);
                if !split {
                    let bbk = &bb[k];
                    if a.len() < bbk.len() {
                        a.resize(bbk.len(), 0);
                    }
                    for (x, y) in a.iter_mut().zip(bbk) {
                        *x = (*x + y * d % m) % m;
                    }
                }
                Row {
                    a,
                    b: std::mem::take(&mut ab[k]),
                }
            })
            .collect();
        Dense { ctx: self.ctx, rows }
    }

    /// `self^e`, truncated at `x^xmax`.
    pub(crate) fn pow_trunc(&self, mut e: u64, xmax: usize) -> Dense {
        let mut base = self.clone();
        let mut acc = Dense::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, xmax);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, xmax);
            }
        }
        acc
    }

    /// Coefficient of `x^k` as a polynomial in `t`.
    pub(crate) fn coeff_x(&self, k: usize) -> ModPoly {
        let Some(row) = self.rows.get(k) else {
            return Poly::new(self.ctx, vec![]);
        };
        let coeffs = (0..row.a.len().max(row.b.len()))
            .map(|i| {
                self.ctx
                    .elem(row.a.get(i).copied().unwrap_or(0), row.b.get(i).copied().unwrap_or(0))
            })
            .collect();
        Poly::new(self.ctx, coeffs)
    }
}
