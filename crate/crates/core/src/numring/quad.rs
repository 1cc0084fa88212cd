use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, NumError, QAlgebra, Ring};

pub type Rational = BigRational;

/// `a + b sqrt(D)` in the real quadratic field `Q(sqrt D)`.
///
/// `D` is kept as given (13, 17, ...), not reduced to its square-free
/// kernel. Arithmetic between different discriminants panics; use the
/// `try_*` variants to get a [`NumError::DiscMismatch`] instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNum {
    a: Rational,
    b: Rational,
    d: i64,
}

impl QuadNum {
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        assert!(d > 0, "discriminant must be positive");
        QuadNum { a, b, d }
    }

    /// `(a + b sqrt D) / den` from integers.
    pub fn from_ints(a: i64, b: i64, den: i64, d: i64) -> Self {
        let den = BigInt::from(den);
        QuadNum::new(
            Rational::new(BigInt::from(a), den.clone()),
            Rational::new(BigInt::from(b), den),
            d,
        )
    }

    pub fn from_rational(a: Rational, d: i64) -> Self {
        QuadNum::new(a, Rational::zero(), d)
    }

    pub fn int(n: i64, d: i64) -> Self {
        QuadNum::from_rational(Rational::from_integer(n.into()), d)
    }

    pub fn sqrt_d(d: i64) -> Self {
        QuadNum::new(Rational::zero(), Rational::one(), d)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn disc(&self) -> i64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// Galois conjugate `a - b sqrt D`.
    pub fn conj(&self) -> Self {
        QuadNum::new(self.a.clone(), -&self.b, self.d)
    }

    /// `a^2 - D b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.into())
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    fn check(&self, rhs: &Self) -> Result<(), NumError> {
        if self.d == rhs.d {
            Ok(())
        } else {
            Err(NumError::DiscMismatch(self.d, rhs.d))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, NumError> {
        self.check(rhs)?;
        Ok(QuadNum::new(&self.a + &rhs.a, &self.b + &rhs.b, self.d))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, NumError> {
        self.check(rhs)?;
        Ok(QuadNum::new(&self.a - &rhs.a, &self.b - &rhs.b, self.d))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, NumError> {
        self.check(rhs)?;
        let dd = Rational::from_integer(self.d.into());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(QuadNum::new(a, b, self.d))
    }

    pub fn try_inv(&self) -> Result<Self, NumError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(QuadNum::new(&self.a / &n, -&self.b / &n, self.d))
    }

    /// Least common denominator of `a` and `b`.
    pub fn denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    /// A square root inside `Q(sqrt D)`, if one exists.
    pub fn sqrt(&self) -> Option<QuadNum> {
        let d = self.d;
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QuadNum::from_rational(r, d));
            }
            let over_d = &self.a / Rational::from_integer(d.into());
            return rational_sqrt(&over_d).map(|r| QuadNum::new(Rational::zero(), r, d));
        }
        let n = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(2.into());
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let r = QuadNum::new(x, y, d);
                if r.try_mul(&r).ok().as_ref() == Some(self) {
                    return Some(r);
                }
            }
        }
        None
    }

    /// Valuation at the ramified prime `(sqrt D)` above `p | D`, counted in
    /// units of `v(sqrt p) = 1`. Requires `p` to divide `D` exactly once.
    pub fn valuation_ramified(&self, p: u64) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let va = rational_valuation(&self.a, p).map(|v| 2 * v);
        let vb = rational_valuation(&self.b, p).map(|v| 2 * v + 1);
        match (va, vb) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) => Some(x),
            (None, Some(y)) => Some(y),
            (None, None) => None,
        }
    }
}

/// `v_p(q)`, `None` for `q = 0`.
pub(crate) fn rational_valuation(q: &Rational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let bp = BigInt::from(p);
    let count = |n: &BigInt| {
        let mut n = n.abs();
        let mut k = 0i64;
        loop {
            let (qq, r) = n.div_rem(&bp);
            if !r.is_zero() {
                return k;
            }
            n = qq;
            k += 1;
        }
    };
    Some(count(q.numer()) - count(q.denom()))
}

pub(crate) fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// `true` iff every prime dividing the denominator of `x` (as an element
/// of the order `O_D`, localized away from `S`) lies in `S`.
pub fn s_integral(x: &QuadNum, s: &[u64]) -> bool {
    let mut rest = x.denominator();
    for &p in s {
        let bp = BigInt::from(p);
        while (&rest % &bp).is_zero() {
            rest /= &bp;
        }
    }
    if rest.is_one() {
        return true;
    }
    let two = BigInt::from(2);
    while (&rest % &two).is_zero() {
        rest /= &two;
    }
    if !rest.is_one() {
        return false;
    }
    // Only 2 remains and 2 is not in S: x must lie in O_D = Z[(D + sqrt D)/2]
    // locally at 2, i.e. 2a, 2b are 2-integral and 2a = D*2b mod 2.
    let two = Rational::from_integer(two);
    let a2 = &x.a * &two;
    let b2 = &x.b * &two;
    let integral_at_2 = |q: &Rational| rational_valuation(q, 2).is_none_or(|v| v >= 0);
    if !integral_at_2(&a2) || !integral_at_2(&b2) {
        return false;
    }
    let diff = a2 - b2 * Rational::from_integer(x.d.into());
    rational_valuation(&diff, 2).is_none_or(|v| v >= 1)
}

impl std::ops::Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        self.try_add(rhs).expect("discriminant mismatch")
    }
}

impl std::ops::Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        self.try_sub(rhs).expect("discriminant mismatch")
    }
}

impl std::ops::Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        self.try_mul(rhs).expect("discriminant mismatch")
    }
}

impl std::ops::Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum::new(-&self.a, -&self.b, self.d)
    }
}

impl Ring for QuadNum {
    type Ctx = i64;

    fn ctx(&self) -> i64 {
        self.d
    }
    fn zero(d: &i64) -> Self {
        QuadNum::int(0, *d)
    }
    fn one(d: &i64) -> Self {
        QuadNum::int(1, *d)
    }
    fn from_int(d: &i64, n: &BigInt) -> Self {
        QuadNum::from_rational(Rational::from_integer(n.clone()), *d)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.try_inv().ok().map(|r| self * &r)
    }
}

impl Field for QuadNum {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl QAlgebra for QuadNum {
    fn scale(&self, q: &Rational) -> Self {
        QuadNum::new(&self.a * q, &self.b * q, self.d)
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn rational_to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational, NumError> {
    let bad = || NumError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.d;
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt({d})", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*sqrt({d})", self.a, -&self.b)
                } else {
                    write!(f, "{} + {}*sqrt({d})", self.a, self.b)
                }
            }
        }
    }
}

impl fmt::Debug for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct QuadNumRepr {
    a: String,
    b: String,
    #[serde(rename = "D")]
    d: i64,
}

impl Serialize for QuadNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuadNumRepr {
            a: rational_to_string(&self.a),
            b: rational_to_string(&self.b),
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadNum {
    fn deserialize<De: Deserializer<'de>>(de: De) -> Result<Self, De::Error> {
        let r = QuadNumRepr::deserialize(de)?;
        let a = parse_rational(&r.a).map_err(serde::de::Error::custom)?;
        let b = parse_rational(&r.b).map_err(serde::de::Error::custom)?;
        if r.d <= 0 {
            return Err(serde::de::Error::custom("D must be positive"));
        }
        Ok(QuadNum::new(a, b, r.d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64, den: i64) -> QuadNum {
        QuadNum::from_ints(a, b, den, 17)
    }

    #[test]
    fn conj_examples() {
        assert_eq!(q(4, 1, 1).conj(), q(4, -1, 1));
        assert_eq!(q(31, -7, 2).conj(), q(31, 7, 2));
        let three = QuadNum::int(3, 13);
        assert_eq!(three.conj(), three);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(q(5, 1, 2).norm(), Rational::from_integer(2.into()));
        assert_eq!(
            QuadNum::from_ints(1, 1, 2, 13).norm(),
            Rational::from_integer((-3).into())
        );
        assert_eq!(q(4, 1, 1).norm(), Rational::from_integer((-1).into()));
    }

    #[test]
    fn tau_times_inverse_is_one() {
        assert!((&q(31, -7, 2) * &q(31, 7, 64)).is_one());
    }

    #[test]
    fn mixed_disc_is_an_error() {
        let x = QuadNum::int(1, 13);
        let y = QuadNum::int(1, 17);
        assert_eq!(x.try_add(&y), Err(NumError::DiscMismatch(13, 17)));
    }

    #[test]
    #[should_panic(expected = "discriminant mismatch")]
    fn mixed_disc_operator_panics() {
        let _ = &QuadNum::int(1, 13) * &QuadNum::int(1, 17);
    }

    #[test]
    fn s_integral_examples() {
        assert!(s_integral(&q(81, -15, 16), &[2, 17]));
        assert!(!s_integral(&QuadNum::from_ints(1, 0, 3, 17), &[2, 17]));
        assert!(s_integral(&QuadNum::from_ints(5, 7, 1, 13), &[]));
        // (1 + sqrt 17)/2 is an algebraic integer, 1/2 is not.
        assert!(s_integral(&q(1, 1, 2), &[]));
        assert!(!s_integral(&q(1, 0, 2), &[]));
    }

    #[test]
    fn square_roots() {
        let x = q(3, 5, 4);
        let sq = &x * &x;
        let r = sq.sqrt().unwrap();
        assert!(r == x || r == -&x);
        assert_eq!(QuadNum::int(17, 17).sqrt(), Some(QuadNum::sqrt_d(17)));
        assert_eq!(QuadNum::int(2, 17).sqrt(), None);
        assert_eq!(q(1, 1, 1).sqrt(), None);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(q(81, -15, 16)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"a": "81/16", "b": "-15/16", "D": 17})
        );
        let back: QuadNum = serde_json::from_value(v).unwrap();
        assert_eq!(back, q(81, -15, 16));
    }

    fn arb_quad() -> impl Strategy<Value = QuadNum> {
        (-500i64..500, -500i64..500, 1i64..40, -500i64..500, 1i64..40).prop_map(
            |(an, bn, ad, _, bd)| {
                QuadNum::new(
                    Rational::new(an.into(), ad.into()),
                    Rational::new(bn.into(), bd.into()),
                    17,
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn conj_is_involution(x in arb_quad()) {
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn norm_is_multiplicative(x in arb_quad(), y in arb_quad()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert_eq!(QuadNum::from_rational(x.norm(), 17), &x * &x.conj());
        }
    }
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub mod rational_serde {
    use super::{rational_to_string, Rational};
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(q))
    }

    pub fn pair<S: Serializer>(q: &(Rational, Rational), s: S) -> Result<S::Ok, S::Error> {
        [rational_to_string(&q.0), rational_to_string(&q.1)].serialize(s)
    }
}
