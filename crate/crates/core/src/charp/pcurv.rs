use serde::Serialize;

use crate::numring::{PrimeContext, Ring};
use crate::picardfuchs::FuchsOp;
use crate::polyalg::{linalg, Poly};

use super::{apply_mod, reduce_operator, CharpError, ModPoly};

/// Default degree bound `d_{1,1} + p` for polynomial solutions.
pub fn honda_bound(p: u64) -> usize {
    (3 * (p as usize - 1)) / 2 + p as usize
}

/// A nonzero polynomial solution of `L` modulo `p` of degree at most
/// `bound`, found by linear algebra over the residue field.
pub fn honda_witness(l: &FuchsOp, ctx: &PrimeContext, bound: usize) -> Result<Option<ModPoly>, CharpError> {
    let ops = reduce_operator(l, &ctx.with_precision(1))?;
    let ctx = *ops[0].scalar_ctx();
    let columns: Vec<ModPoly> = (0..=bound)
        .map(|j| apply_mod(&ops, &Poly::monomial(Ring::one(&ctx), j)))
        .collect();
    let nrows = columns.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    if nrows == 0 {
        return Ok(Some(Poly::one(&ctx)));
    }
    let rows: Vec<Vec<_>> = (0..nrows)
        .map(|i| columns.iter().map(|c| c.coeff(i)).collect())
        .collect();
    Ok(linalg::kernel_vector(&rows, bound + 1, &ctx).map(|v| Poly::new(ctx, v)))
}

/// Whether `L mod p` has a nonzero polynomial solution of degree at most
/// `bound` (default `d_{1,1} + p`).
pub fn honda_test(l: &FuchsOp, ctx: &PrimeContext, bound: Option<usize>) -> Result<bool, CharpError> {
    let bound = bound.unwrap_or_else(|| honda_bound(ctx.p()));
    Ok(honda_witness(l, ctx, bound)?.is_some())
}

/// `Ψ = N / P_2^p` with `N` a polynomial matrix over the residue field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PCurvature {
    pub p: u64,
    pub k: u8,
    pub psi_num: [[ModPoly; 2]; 2],
    pub psi_den: ModPoly,
    pub trace_zero: bool,
    pub det_zero: bool,
    pub nilpotent: bool,
    pub zero: bool,
}

type Mat = [[ModPoly; 2]; 2];

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j])))
    })
}

/// p-curvature of the companion system `Y' = M Y`,
/// `M = [[0, 1], [-B, -A]]`, via `A_1 = M`, `A_{k+1} = A_k' + A_k M`.
pub fn p_curvature(l: &FuchsOp, ctx: &PrimeContext) -> Result<PCurvature, CharpError> {
    let [p0, p1, p2] = reduce_operator(l, &ctx.with_precision(1))?;
    let rctx = *p0.scalar_ctx();
    let zero = Poly::zero(&rctx);
    // P_2 M, polynomial.
    let mt: Mat = [[zero.clone(), p2.clone()], [p0.neg(), p1.neg()]];
    let dp2 = p2.derivative();
    let mut nk = mt.clone();
    for k in 1..ctx.p() {
        // N_{k+1} = N_k' P_2 - k P_2' N_k + N_k (P_2 M).
        let kk = ModPoly::from_int(&rctx, &k.into());
        let prod = mat_mul(&nk, &mt);
        nk = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                nk[i][j]
                    .derivative()
                    .mul(&p2)
                    .sub(&dp2.mul(&kk).mul(&nk[i][j]))
                    .add(&prod[i][j])
            })
        });
    }
    let trace = nk[0][0].add(&nk[1][1]);
    let det = nk[0][0].mul(&nk[1][1]).sub(&nk[0][1].mul(&nk[1][0]));
    let zero_psi = nk.iter().flatten().all(|f| f.is_zero());
    Ok(PCurvature {
        p: ctx.p(),
        k: ctx.k(),
        psi_den: p2.pow(ctx.p()),
        trace_zero: trace.is_zero(),
        det_zero: det.is_zero(),
        nilpotent: trace.is_zero() && det.is_zero(),
        zero: zero_psi,
        psi_num: nk,
    })
}
