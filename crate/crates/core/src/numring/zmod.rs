use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::arith::{mod_inv, mul_mod};
use super::{Field, Ring};

/// Residue `v mod m`. Used for residue fields at ramified primes, where no
/// [`super::PrimeContext`] exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    m: u64,
    v: u64,
}

impl Zmod {
    pub fn new(v: u64, m: u64) -> Self {
        Zmod { m, v: v % m }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
}

impl serde::Serialize for Zmod {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(self.v)
    }
}

impl Ring for Zmod {
    type Ctx = u64;

    fn ctx(&self) -> u64 {
        self.m
    }
    fn zero(m: &u64) -> Self {
        Zmod::new(0, *m)
    }
    fn one(m: &u64) -> Self {
        Zmod::new(1, *m)
    }
    fn from_int(m: &u64, n: &BigInt) -> Self {
        Zmod::new(n.mod_floor(&BigInt::from(*m)).to_u64().unwrap(), *m)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Zmod::new(self.v + rhs.v, self.m)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Zmod::new(self.v + self.m - rhs.v, self.m)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Zmod::new(mul_mod(self.v, rhs.v, self.m), self.m)
    }
    fn neg(&self) -> Self {
        Zmod::new(self.m - self.v, self.m)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl Field for Zmod {
    fn inv(&self) -> Option<Self> {
        mod_inv(self.v, self.m).map(|v| Zmod::new(v, self.m))
    }
}
