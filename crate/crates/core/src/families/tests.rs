use super::*;

fn q(a: i64, b: i64, den: i64, d: i64) -> QuadNum {
    QuadNum::from_ints(a, b, den, d)
}

#[test]
fn stored_models_satisfy_invariants() {
    for (d, e) in [(17, 1), (17, 0), (13, 0)] {
        let fm = family(d, e).unwrap();
        assert!(fm.check_invariants(), "D = {d}, eps = {e}");
        let points: usize = fm.cusps.iter().map(Cusp::count).sum();
        assert_eq!(points, 5);
    }
    assert_eq!(family(21, 0), Err(FamilyError::UnsupportedDiscriminant(21)));
}

#[test]
fn printed_c2_constant_breaks_reciprocity() {
    let fm = family(17, 1).unwrap();
    let mut c2 = fm.c[2].coeffs().to_vec();
    c2[0] = c2_printed_constant_17();
    assert!(!Poly::new(17, c2).reciprocal_check(3));
}

#[test]
fn coefficient_examples() {
    let fm = family(17, 1).unwrap();
    assert_eq!(fm.c[4], Poly::from_i64s(&17, &[3, 3]));
    let c3 = Poly::new(17, vec![q(-4551, -1105, 8, 17), q(8918, 2210, 8, 17), q(-4551, -1105, 8, 17)]);
    assert_eq!(fm.c[3], c3);
    let fm0 = family(17, 0).unwrap();
    assert_eq!(fm0.c[3], c3.map(17, |c| c.conj()));
    let fm13 = family(13, 0).unwrap();
    assert_eq!(fm13.c[2].coeff(3), q(-27000, 7488, 32, 13));
    assert_eq!(fm13.c[4], Poly::from_i64s(&13, &[1, 1]));
}

#[test]
fn fibers() {
    let fm = family(17, 1).unwrap();
    let f1 = fiber(&fm, &QuadNum::int(1, 17));
    assert_eq!(f1.coeff(4), QuadNum::int(6, 17));
    assert_eq!(f1.deg(), 5);
    let f0 = fiber(&fm, &QuadNum::int(0, 17));
    for k in 0..6 {
        assert_eq!(f0.coeff(k), fm.c[k].coeff(0));
    }
    let fm13 = family(13, 0).unwrap();
    assert_eq!(fiber(&fm13, &QuadNum::int(0, 13)).coeff(4), QuadNum::int(1, 13));
}

#[test]
fn tau_product() {
    assert!(data::tau_17().mul(&data::tau_inv_17()).is_one());
}

/// Prototypes matched on one component, restricted to the spin class of
/// the match at `t = 0`.
fn class_of(fm: &FamilyModel) -> Vec<(Cusp, Prototype)> {
    let matches = match_cusps(fm);
    let zero = Cusp::point(QuadNum::int(0, fm.d));
    let s0 = spin(&matches.iter().find(|m| m.cusp == zero).unwrap().prototype).value;
    matches
        .into_iter()
        .filter(|m| spin(&m.prototype).value == s0)
        .map(|m| (m.cusp, m.prototype))
        .collect()
}

#[test]
fn cusp_matching_17() {
    for eps in [1u8, 0] {
        let fm = family(17, eps).unwrap();
        let class = class_of(&fm);
        for c in fm.cusps.iter().filter(|c| **c != Cusp::Infinity) {
            let here: Vec<_> = class.iter().filter(|(cc, _)| cc == c).collect();
            assert_eq!(here.len(), 1, "eps = {eps}, cusp {c:?}");
        }
        let at = |c: Cusp| class.iter().find(|(cc, _)| *cc == c).unwrap().1;
        let p0 = at(Cusp::point(QuadNum::int(0, 17)));
        let p1 = at(Cusp::point(QuadNum::int(1, 17)));
        let tau = if eps == 1 { data::tau_17() } else { data::tau_17().conj() };
        let pt = at(Cusp::point(tau));
        // The printed coefficients (eps = 1) land in raw spin class 1.
        let expected = if eps == 1 {
            [(0, 4, 1, -1), (0, 2, 2, -1), (0, 1, 2, -3)]
        } else {
            [(0, 4, 1, 1), (1, 2, 2, -1), (0, 2, 1, -3)]
        };
        let got = [p0, p1, pt].map(|p| (p.a, p.b, p.c, p.e));
        assert_eq!(got, expected, "eps = {eps}");
        let mut protos: Vec<_> = class.iter().map(|(_, p)| *p).collect();
        protos.sort();
        protos.dedup();
        assert_eq!(protos.len(), 3);
        assert!(protos.iter().all(|p| spin(p).value == eps));
    }
}

#[test]
fn generic_fiber_does_not_match() {
    let fm = family(17, 1).unwrap();
    let nf = normal_form(&Prototype::new(0, 4, 1, 1));
    let f = fiber(&fm, &QuadNum::int(5, 17));
    assert!(matches!(match_normal_form(&f, &nf), Err(FamilyError::NoMatch(_))));
}

#[test]
fn cusp_matching_13() {
    let fm = family(13, 0).unwrap();
    let matches = match_cusps(&fm);
    for c in fm.cusps.iter().filter(|c| **c != Cusp::Infinity) {
        assert!(matches.iter().any(|m| &m.cusp == c), "cusp {c:?}");
    }
    let mut protos: Vec<_> = matches.iter().map(|m| m.prototype).collect();
    protos.sort();
    protos.dedup();
    assert_eq!(protos, enumerate_prototypes(13).unwrap());
}

#[test]
fn spin_labels() {
    let c1 = spin_calibration(1).unwrap();
    let c0 = spin_calibration(0).unwrap();
    assert_eq!(c1.prototype_at_zero, Prototype::new(0, 4, 1, -1));
    assert_eq!(c0.prototype_at_zero, Prototype::new(0, 4, 1, 1));
    assert!(!c1.flipped && !c0.flipped);
}

#[test]
fn discriminant_17() {
    let fm = family(17, 1).unwrap();
    let r = discriminant_report(&fm);
    assert!(r.pattern_ok, "{:?}", r.pattern);
    assert_eq!(r.discriminant.deg(), 5 + 4 + 3 + 3);
    assert!(r.unit_norm_primes.iter().all(|p| [2, 17].contains(p)), "{:?}", r.unit_norm_primes);
    let ratio = &r.ratio_to_printed;
    assert!(ratio.is_one() || ratio.neg().is_one(), "{ratio}");
    let r0 = discriminant_report(&family(17, 0).unwrap());
    assert!(r0.pattern_ok);
    assert!(r0.ratio_to_printed.is_one() || r0.ratio_to_printed.neg().is_one());
    // Norms of the printed unit factors.
    assert_eq!(q(4, 1, 1, 17).norm(), Rational::from_integer((-1).into()));
    assert_eq!(q(5, 1, 2, 17).norm(), Rational::from_integer(2.into()));
    assert_eq!(q(5, -1, 2, 17).norm(), Rational::from_integer(2.into()));
}

#[test]
fn discriminant_13() {
    let fm = family(13, 0).unwrap();
    let r = discriminant_report(&fm);
    assert!(r.pattern_ok, "{:?}", r.pattern);
    assert!(r.unit_norm_primes.iter().all(|p| [2, 3, 13].contains(p)));
    assert!(r.unit_norm_primes.contains(&3));
    let ratio = &r.ratio_to_printed;
    assert!(ratio.is_one() || ratio.neg().is_one(), "{ratio}");
}

#[test]
fn reduction_examples() {
    let fm = family(17, 1).unwrap();
    assert_eq!(good_reduction(&fm, 5).status, ReductionStatus::Good);
    assert_eq!(good_reduction(&fm, 17).status, ReductionStatus::BadModel);
    let fm13 = family(13, 0).unwrap();
    assert_eq!(good_reduction(&fm13, 3).status, ReductionStatus::BadModel);
}

#[test]
fn reduction_scans() {
    for (d, bad) in [(17i64, vec![17u64]), (13, vec![3, 13])] {
        let fm = family(d, 1).unwrap();
        let disc = discriminant_report(&fm);
        for p in crate::numring::primes_up_to(100).into_iter().filter(|&p| p != 2) {
            let r = good_reduction_with(&fm, &disc, p);
            let expect = if bad.contains(&p) { ReductionStatus::BadModel } else { ReductionStatus::Good };
            assert_eq!(r.status, expect, "D = {d}, p = {p}: {:?}", r.evidence);
        }
        let scan = reduction_scan(&fm, 100);
        let at_d = scan.iter().find(|r| r.p == d as u64).unwrap();
        assert_eq!(at_d.status, ReductionStatus::PotentiallyGood);
    }
}

#[test]
fn potentially_good_17() {
    let z = |v: u64| Zmod::new(v, 17);
    let pz = |cs: &[u64]| Poly::new(17u64, cs.iter().map(|&c| z(c)).collect());
    for eps in [1, 0] {
        let r = potentially_good_at_d(&family(17, eps).unwrap()).unwrap();
        assert_eq!(r.shift_mod_p, pz(&[4, 4]));
        let a = pz(&[1, 3, 1]);
        let b = pz(&[1, 7, 1]);
        let target = [
            pz(&[]),
            a.mul(&b).mul_scalar(&z(3)),
            pz(&[]),
            a.mul_scalar(&z(5)),
            pz(&[]),
            pz(&[1]),
        ];
        for k in [1, 3, 4, 5] {
            assert_eq!(r.g_hat[k], target[k], "w^{k}");
        }
        // The model gives nonzero even terms; they flip sign with eps.
        let sign = if eps == 1 { z(1) } else { z(16) };
        assert_eq!(r.g_hat[2], pz(&[3, 14, 14, 3]).mul_scalar(&sign));
        assert_eq!(r.g_hat[0], pz(&[11, 8, 15, 15, 8, 11]).mul_scalar(&sign));
        assert!(r.squarefree_generic);
    }
}

#[test]
fn potentially_good_13() {
    let r = potentially_good_at_d(&family(13, 0).unwrap()).unwrap();
    assert!(r.w_coefficient_nonzero);
    assert!(r.squarefree_generic);
    assert_eq!(r.g_hat[5], Poly::one(&13));
}

#[test]
fn j_invariants() {
    let j17 = cusp_j_invariant(17).unwrap();
    assert_eq!(j17.s, q(1023, -217, 128, 17));
    assert!(j17.orbit_consistent);
    assert!(!j17.rational);
    let j13 = cusp_j_invariant(13).unwrap();
    assert_eq!(j13.s, q(0, -71, 256, 13));
    assert!(j13.orbit_consistent);
    assert!(j13.rational);
    let jr = j_of_points(&QuadNum::from_ints(3, 0, 7, 17));
    assert!(jr.rational && jr.orbit_consistent);
}
