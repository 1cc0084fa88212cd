use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::NumError;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Deterministic for all 64-bit inputs.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

fn residue_i64(d: i64, p: u64) -> u64 {
    (d as i128).rem_euclid(p as i128) as u64
}

/// Quadratic residue symbol `(D / p)` for an odd prime `p`.
pub fn legendre(d: i64, p: u64) -> i8 {
    let r = residue_i64(d, p);
    if r == 0 {
        return 0;
    }
    if mod_pow(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// A square root of the quadratic residue `a` modulo the odd prime `p`.
pub fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Square root of `D` modulo `p^n`, lifting the smaller of the two roots
/// modulo `p` by Newton iteration.
pub fn hensel_sqrt(d: i64, p: u64, n: u32) -> Result<u64, NumError> {
    if p == 2 || !is_prime(p) {
        return Err(NumError::BadPrime(p));
    }
    if legendre(d, p) != 1 {
        return Err(NumError::NotResidue { d, p });
    }
    let r = tonelli_shanks(residue_i64(d, p), p).expect("residue has a root");
    let mut root = r.min(p - r);
    let modulus = p
        .checked_pow(n)
        .ok_or(NumError::BadPrime(p))?;
    let dm = residue_i64(d, modulus);
    let mut prec = p;
    while prec < modulus {
        prec = prec.saturating_mul(prec).min(modulus);
        // root <- root - (root^2 - D) / (2 root)  (mod prec)
        let f = (mul_mod(root, root, prec) + prec - dm % prec) % prec;
        let inv = mod_inv(mul_mod(2, root, prec), prec).expect("2r is a unit");
        root = (root + prec - mul_mod(f, inv, prec)) % prec;
    }
    Ok(root % modulus)
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Writes `D = E F^2` with `E` square-free (sign carried by `E`).
pub fn squarefree_decomposition_int(d: i64) -> (i64, i64) {
    let sign = if d < 0 { -1 } else { 1 };
    let mut rest = d.unsigned_abs();
    let (mut e, mut f) = (1u64, 1u64);
    let mut q = 2u64;
    while q * q <= rest {
        let mut k = 0;
        while rest % q == 0 {
            rest /= q;
            k += 1;
        }
        f *= q.pow(k / 2);
        if k % 2 == 1 {
            e *= q;
        }
        q += 1;
    }
    e *= rest;
    (sign * e as i64, f as i64)
}

/// Trial division of `n` by primes up to `bound`. Returns the prime
/// factorization found together with the unfactored cofactor (1 if `n`
/// factored completely).
pub fn factor_small(n: &BigInt, bound: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut rest = n.abs();
    let mut out = Vec::new();
    if rest.is_zero() {
        return (out, rest);
    }
    for p in primes_up_to(bound) {
        let bp = BigInt::from(p);
        let mut k = 0;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        if rest.is_one() {
            break;
        }
    }
    if let Some(small) = rest.to_u64() {
        if small > 1 && is_prime(small) {
            out.push((small, 1));
            rest = BigInt::one();
        }
    }
    (out, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(17, 13), 1);
        assert_eq!(legendre(17, 5), -1);
        assert_eq!(legendre(17, 17), 0);
        assert_eq!(legendre(13, 7), -1);
    }

    #[test]
    fn legendre_agrees_with_enumeration() {
        for p in primes_up_to(60).into_iter().filter(|&p| p > 2) {
            for d in -30i64..60 {
                let r = residue_i64(d, p);
                let brute = if r == 0 {
                    0
                } else if (1..p).any(|x| x * x % p == r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(d, p), brute, "d={d} p={p}");
            }
        }
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_sqrt(17, 13, 1).unwrap(), 2);
        let r = hensel_sqrt(17, 13, 2).unwrap();
        assert_eq!(r % 13, 2);
        assert_eq!(r * r % 169, 17);
        assert_eq!(hensel_sqrt(13, 3, 1).unwrap(), 1);
        assert!(matches!(
            hensel_sqrt(17, 5, 1),
            Err(NumError::NotResidue { .. })
        ));
        assert!(matches!(hensel_sqrt(17, 2, 1), Err(NumError::BadPrime(2))));
    }

    #[test]
    fn hensel_lifts_are_compatible() {
        for &(d, p) in &[(17i64, 13u64), (13, 17), (17, 19), (13, 23), (2, 7)] {
            let top = hensel_sqrt(d, p, 5).unwrap();
            for m in 1..=5 {
                assert_eq!(top % p.pow(m), hensel_sqrt(d, p, m).unwrap());
            }
        }
    }

    #[test]
    fn tonelli_covers_p_1_mod_8() {
        let p = 17;
        for a in 1..p {
            if legendre(a as i64, p) == 1 {
                let r = tonelli_shanks(a, p).unwrap();
                assert_eq!(r * r % p, a);
            }
        }
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decomposition_int(17), (17, 1));
        assert_eq!(squarefree_decomposition_int(45), (5, 3));
        assert_eq!(squarefree_decomposition_int(8), (2, 2));
        assert_eq!(squarefree_decomposition_int(12), (3, 2));
    }

    #[test]
    fn trial_division() {
        let (f, rest) = factor_small(&BigInt::from(2i64.pow(10) * 17 * 17 * 3), 100);
        assert_eq!(f, vec![(2, 10), (3, 1), (17, 2)]);
        assert!(rest.is_one());
    }
}
