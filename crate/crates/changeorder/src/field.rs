//! Arithmetic in the prime field K = Z/pZ for word-sized primes.
//!
//! Moduli are restricted to 2 < p < 2^31 so that the product of two reduced
//! values fits in a `u64` without overflow, and every element is kept fully
//! reduced in `[0, p)` — the canonical representative used by all file
//! formats. Elements carry their field, so mixing moduli is caught at the
//! first arithmetic operation.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::{Error, Result};

/// The prime field Z/pZ. Copyable; two handles denote the same field iff the
/// moduli are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u64,
}

impl PrimeField {
    /// Constructs the field, rejecting moduli outside `2 < p < 2^31` and
    /// composites (deterministic Miller-Rabin witness set for this range).
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus <= 2 || modulus >= (1u64 << 31) || !is_prime(modulus) {
            return Err(Error::BadModulus(modulus));
        }
        Ok(PrimeField { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The element congruent to `value`, reduced into `[0, p)`.
    pub fn element(&self, value: i64) -> FieldElement {
        FieldElement {
            value: value.rem_euclid(self.modulus as i64) as u64,
            field: *self,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: 0, field: *self }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { value: 1, field: *self }
    }

    // Raw `u64` arithmetic on reduced representatives. These back the dense
    // inner loops (polynomial and matrix kernels) where carrying a field tag
    // per coefficient would be wasteful.

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus { s - self.modulus } else { s }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.modulus - b }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        // a, b < 2^31, so the product fits in a u64.
        (a * b) % self.modulus
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.modulus - a }
    }

    /// Modular inverse by the extended Euclidean algorithm.
    pub(crate) fn inv_raw(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let p = self.modulus as i64;
        let (mut r0, mut r1) = (p, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "gcd(a, p) must be 1 for prime p and a != 0");
        Ok(t0.rem_euclid(p) as u64)
    }

    #[inline]
    pub(crate) fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.modulus as i64) as u64
    }
}

/// An element of a [`PrimeField`], always fully reduced.
///
/// The arithmetic operators panic when the operands belong to different
/// fields; that is a programming error, not a data condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl FieldElement {
    /// The canonical representative in `[0, p)`.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            value: self.field.inv_raw(self.value)?,
            field: self.field,
        })
    }

    /// Exponentiation by squaring.
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.field.mul_raw(acc, base);
            }
            base = self.field.mul_raw(base, base);
            e >>= 1;
        }
        FieldElement { value: acc, field: self.field }
    }
}

fn check_same_field(a: &FieldElement, b: &FieldElement) {
    assert_eq!(
        a.field.modulus, b.field.modulus,
        "field elements from different fields (moduli {} and {})",
        a.field.modulus, b.field.modulus
    );
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        check_same_field(&self, &rhs);
        FieldElement { value: self.field.add_raw(self.value, rhs.value), field: self.field }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        check_same_field(&self, &rhs);
        FieldElement { value: self.field.sub_raw(self.value, rhs.value), field: self.field }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        check_same_field(&self, &rhs);
        FieldElement { value: self.field.mul_raw(self.value, rhs.value), field: self.field }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: self.field.neg_raw(self.value), field: self.field }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Deterministic Miller-Rabin. The witness set {2, 3, 5, 7} is exact for all
/// n < 3_215_031_751, which covers the whole supported modulus range.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x * x) % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    a %= n;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc * a) % n;
        }
        a = (a * a) % n;
        e >>= 1;
    }
    acc
}
