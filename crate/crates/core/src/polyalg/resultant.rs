use crate::numring::Ring;

use super::Poly;

/// Resultant by the subresultant PRS. Works over any integral domain whose
/// `div_exact` is exact, in particular over polynomial rings.
pub fn resultant<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> R {
    let ctx = f.scalar_ctx().clone();
    if f.is_zero() || g.is_zero() {
        return R::zero(&ctx);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut negate = false;
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        negate = (a.deg() * b.deg()) % 2 == 1;
    }
    if b.deg() == 0 {
        let r = b.lc().unwrap().pow(a.deg() as u64);
        return if negate { r.neg() } else { r };
    }
    let mut gg = R::one(&ctx);
    let mut h = R::one(&ctx);
    loop {
        let delta = (a.deg() - b.deg()) as u64;
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            negate = !negate;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return R::zero(&ctx);
        }
        let divisor = gg.mul(&h.pow(delta));
        a = b;
        b = r.div_exact_poly(&Poly::constant(divisor)).expect("subresultant division");
        gg = a.lc().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            gg.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant h update")
        };
        if b.deg() == 0 {
            let da = a.deg() as u64;
            let lb = b.lc().unwrap().pow(da);
            let res = if da == 0 {
                h
            } else {
                lb.div_exact(&h.pow(da - 1)).expect("final subresultant")
            };
            return if negate { res.neg() } else { res };
        }
    }
}

/// Cofactors `(u, v, c)` with `u f + v g = c`, `c` a nonzero constant in
/// the coefficient domain, obtained from the subresultant chain.
/// Returns `None` when `f` and `g` have a common factor.
pub fn resultant_cofactors<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Option<(Poly<R>, Poly<R>, R)> {
    let ctx = f.scalar_ctx().clone();
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let one = Poly::<R>::one(&ctx);
    let zero = Poly::<R>::zero(&ctx);
    let (mut a, mut ua, mut va) = (f.clone(), one.clone(), zero.clone());
    let (mut b, mut ub, mut vb) = (g.clone(), zero, one);
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut ua, &mut ub);
        std::mem::swap(&mut va, &mut vb);
    }
    let mut gg = R::one(&ctx);
    let mut h = R::one(&ctx);
    while b.deg() > 0 {
        let delta = (a.deg() - b.deg()) as u64;
        let (q, r) = a.pseudo_div_rem(&b);
        if r.is_zero() {
            return None;
        }
        let scale = b.lc().unwrap().pow(delta + 1);
        let ur = ua.mul_scalar(&scale).sub(&q.mul(&ub));
        let vr = va.mul_scalar(&scale).sub(&q.mul(&vb));
        let divisor = Poly::constant(gg.mul(&h.pow(delta)));
        a = b;
        ua = ub;
        va = vb;
        b = r.div_exact_poly(&divisor)?;
        ub = ur.div_exact_poly(&divisor)?;
        vb = vr.div_exact_poly(&divisor)?;
        gg = a.lc().unwrap().clone();
        if delta > 0 {
            h = gg.pow(delta).div_exact(&h.pow(delta - 1))?;
        }
    }
    let c = b.lc()?.clone();
    Some((ub, vb, c))
}

/// Discriminant `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant<R: Ring>(f: &Poly<R>) -> R {
    let d = f.deg();
    assert!(d >= 1, "discriminant of a constant");
    let r = resultant(f, &f.derivative());
    let r = r.div_exact(f.lc().unwrap()).expect("lc divides Res(f, f')");
    if (d * (d - 1) / 2) % 2 == 1 {
        r.neg()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numring::QuadNum;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly<QuadNum> {
        Poly::from_i64s(&17, cs)
    }

    /// Sylvester determinant by fraction-free elimination over `Q(sqrt D)`.
    fn sylvester_oracle(f: &Poly<QuadNum>, g: &Poly<QuadNum>) -> QuadNum {
        let (m, n) = (f.deg() as usize, g.deg() as usize);
        let size = m + n;
        let zero = QuadNum::int(0, 17);
        let mut mat = vec![vec![zero.clone(); size]; size];
        for i in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        let mut det = QuadNum::int(1, 17);
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return zero;
            };
            if piv != col {
                mat.swap(piv, col);
                det = det.neg();
            }
            let inv = crate::numring::Field::inv(&mat[col][col]).unwrap();
            det = det.mul(&mat[col][col]);
            for r in col + 1..size {
                let factor = mat[r][col].mul(&inv);
                for c in col..size {
                    let v = mat[col][c].mul(&factor);
                    mat[r][c] = mat[r][c].sub(&v);
                }
            }
        }
        det
    }

    #[test]
    fn examples() {
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])), QuadNum::int(3, 17));
        assert_eq!(discriminant(&p(&[0, 0, 1]).sub(&p(&[5]))), QuadNum::int(20, 17));
        let ctx = 17;
        let t = Poly::<QuadNum>::x(&ctx);
        // y^2 = x^2 - t has discriminant 4t.
        let f = Poly::new(17, vec![t.neg(), Poly::zero(&ctx), Poly::one(&ctx)]);
        assert_eq!(discriminant(&f), t.mul_scalar(&QuadNum::int(4, 17)));
    }

    fn arb(max: usize) -> impl Strategy<Value = Poly<QuadNum>> {
        prop::collection::vec((-9i64..9, -3i64..3), 1..max).prop_map(|v| {
            Poly::new(17, v.into_iter().map(|(a, b)| QuadNum::from_ints(a, b, 1, 17)).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_sylvester(f in arb(7), g in arb(6)) {
            prop_assume!(f.deg() >= 1 && g.deg() >= 1);
            prop_assert_eq!(resultant(&f, &g), sylvester_oracle(&f, &g));
        }

        #[test]
        fn antisymmetry(f in arb(7), g in arb(6)) {
            prop_assume!(f.deg() >= 0 && g.deg() >= 0);
            let s = if (f.deg() * g.deg()) % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(resultant(&f, &g), resultant(&g, &f).mul(&QuadNum::int(s, 17)));
        }

        #[test]
        fn disc_of_product_with_simple_factor(f in arb(6), c in -20i64..20) {
            prop_assume!(f.deg() >= 2);
            let c = QuadNum::int(c, 17);
            let lin = Poly::linear_root(&c);
            let lhs = discriminant(&f.mul(&lin));
            let fc = f.eval(&c);
            let rhs = discriminant(&f).mul(&fc).mul(&fc);
            prop_assert!(lhs == rhs || lhs == rhs.neg());
        }

        #[test]
        fn cofactors_are_bezout(f in arb(6), g in arb(5)) {
            prop_assume!(f.deg() >= 1 && g.deg() >= 1);
            if let Some((u, v, c)) = resultant_cofactors(&f, &g) {
                prop_assert_eq!(u.mul(&f).add(&v.mul(&g)), Poly::constant(c));
            } else {
                prop_assert!(resultant(&f, &g).is_zero());
            }
        }

        #[test]
        fn bivariate_resultant_specializes(a in arb(4), b in arb(4), c in arb(3), t0 in -5i64..5) {
            // f(x) = x^3 + a(t) x + b(t), g = f' style pair over K[t].
            let ctx = 17;
            let f = Poly::new(ctx, vec![b.clone(), a.clone(), Poly::zero(&ctx), Poly::one(&ctx)]);
            let g = Poly::new(ctx, vec![c.clone(), Poly::one(&ctx)]);
            let r = resultant(&f, &g);
            let t0 = QuadNum::int(t0, 17);
            let spec = |p: &Poly<Poly<QuadNum>>| p.map(ctx, |c| c.eval(&t0));
            prop_assert_eq!(r.eval(&t0), resultant(&spec(&f), &spec(&g)));
        }
    }
}
