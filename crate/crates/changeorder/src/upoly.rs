//! Dense univariate polynomials over a prime field — the ring K[y] in which
//! all module and matrix computations take place.
//!
//! The representation is a coefficient vector with the invariant that the
//! last stored coefficient is nonzero; the zero polynomial stores nothing and
//! its degree is `None` (a genuine "minus infinity", never -1 arithmetic).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::field::{FieldElement, PrimeField};
use crate::{Error, Result};

/// Crossover below which the optional Karatsuba path falls back to schoolbook
/// multiplication.
pub const KARATSUBA_CROSSOVER: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    field: PrimeField,
    /// coeffs[i] is the (reduced) coefficient of y^i; no trailing zeros.
    coeffs: Vec<u64>,
}

impl UPoly {
    pub fn zero(field: PrimeField) -> UPoly {
        UPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> UPoly {
        UPoly { field, coeffs: vec![1] }
    }

    pub fn constant(field: PrimeField, c: i64) -> UPoly {
        UPoly::from_coeffs(field, &[c])
    }

    /// `c * y^deg`.
    pub fn monomial(field: PrimeField, c: i64, deg: usize) -> UPoly {
        let c = field.reduce_i64(c);
        if c == 0 {
            return UPoly::zero(field);
        }
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        UPoly { field, coeffs }
    }

    /// Builds from signed coefficients, index = degree; reduces and trims.
    pub fn from_coeffs(field: PrimeField, coeffs: &[i64]) -> UPoly {
        let mut v: Vec<u64> = coeffs.iter().map(|&c| field.reduce_i64(c)).collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        UPoly { field, coeffs: v }
    }

    pub(crate) fn from_raw(field: PrimeField, mut coeffs: Vec<u64>) -> UPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UPoly { field, coeffs }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of y^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.element(*self.coeffs.get(i).unwrap_or(&0) as i64)
    }

    pub(crate) fn coeff_raw(&self, i: usize) -> u64 {
        *self.coeffs.get(i).unwrap_or(&0)
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().map(|&c| self.field.element(c as i64))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// True iff the leading coefficient is 1.
    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_field(&self, other: &UPoly) {
        assert_eq!(
            self.field.modulus(),
            other.field.modulus(),
            "polynomials over different fields"
        );
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.field.add_raw(self.coeff_raw(i), other.coeff_raw(i));
        }
        UPoly::from_raw(self.field, out)
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.check_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.field.sub_raw(self.coeff_raw(i), other.coeff_raw(i));
        }
        UPoly::from_raw(self.field, out)
    }

    pub fn neg(&self) -> UPoly {
        let out = self.coeffs.iter().map(|&c| self.field.neg_raw(c)).collect();
        UPoly::from_raw(self.field, out)
    }

    /// Product. With the `karatsuba` feature enabled, inputs above
    /// [`KARATSUBA_CROSSOVER`] take the subquadratic path; the result is
    /// identical either way.
    pub fn mul(&self, other: &UPoly) -> UPoly {
        self.check_field(other);
        #[cfg(feature = "karatsuba")]
        {
            if self.coeffs.len().min(other.coeffs.len()) > KARATSUBA_CROSSOVER {
                return self.mul_karatsuba(other);
            }
        }
        self.mul_schoolbook(other)
    }

    /// Quadratic reference multiplication; the oracle every other product
    /// path is tested against.
    pub fn mul_schoolbook(&self, other: &UPoly) -> UPoly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.field);
        }
        let p = self.field.modulus();
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let slot = &mut out[i + j];
                *slot = (*slot + a * b) % p;
            }
        }
        UPoly::from_raw(self.field, out)
    }

    /// Karatsuba multiplication (always compiled so the equality test does
    /// not depend on feature flags; `mul` only dispatches here behind the
    /// `karatsuba` feature).
    pub fn mul_karatsuba(&self, other: &UPoly) -> UPoly {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(self.field);
        }
        fn rec(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
            if a.len().min(b.len()) <= KARATSUBA_CROSSOVER {
                let p = field.modulus();
                let mut out = vec![0u64; a.len() + b.len() - 1];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        let slot = &mut out[i + j];
                        *slot = (*slot + x * y) % p;
                    }
                }
                return out;
            }
            let m = a.len().max(b.len()) / 2;
            let (a0, a1) = a.split_at(m.min(a.len()));
            let (b0, b1) = b.split_at(m.min(b.len()));
            let z0 = rec(field, a0, b0);
            let z2 = if a1.is_empty() || b1.is_empty() { Vec::new() } else { rec(field, a1, b1) };
            let asum = add_slices(field, a0, a1);
            let bsum = add_slices(field, b0, b1);
            let mut z1 = rec(field, &asum, &bsum);
            for (i, &v) in z0.iter().enumerate() {
                z1[i] = field.sub_raw(z1[i], v);
            }
            for (i, &v) in z2.iter().enumerate() {
                z1[i] = field.sub_raw(z1[i], v);
            }
            let mut out = vec![0u64; a.len() + b.len() - 1];
            for (i, &v) in z0.iter().enumerate() {
                out[i] = field.add_raw(out[i], v);
            }
            for (i, &v) in z1.iter().enumerate() {
                out[i + m] = field.add_raw(out[i + m], v);
            }
            for (i, &v) in z2.iter().enumerate() {
                out[i + 2 * m] = field.add_raw(out[i + 2 * m], v);
            }
            out
        }
        fn add_slices(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| field.add_raw(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect()
        }
        let out = rec(self.field, &self.coeffs, &other.coeffs);
        UPoly::from_raw(self.field, out)
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: FieldElement) -> UPoly {
        assert_eq!(self.field.modulus(), c.field().modulus(), "polynomials over different fields");
        let out = self.coeffs.iter().map(|&a| self.field.mul_raw(a, c.value())).collect();
        UPoly::from_raw(self.field, out)
    }

    /// Multiplies by y^k.
    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u64; self.coeffs.len() + k];
        out[k..].copy_from_slice(&self.coeffs);
        UPoly { field: self.field, coeffs: out }
    }

    /// Euclidean division: `f = q*g + r` with `deg r < deg g`.
    pub fn divrem(&self, g: &UPoly) -> Result<(UPoly, UPoly)> {
        self.check_field(g);
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.degree().unwrap();
        if self.coeffs.len() < g.coeffs.len() {
            return Ok((UPoly::zero(self.field), self.clone()));
        }
        let f = self.field;
        let lg_inv = f.inv_raw(*g.coeffs.last().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dg];
        for i in (dg..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = f.mul_raw(c, lg_inv);
            quot[i - dg] = q;
            // rem -= q * y^(i-dg) * g
            for (j, &gc) in g.coeffs.iter().enumerate() {
                rem[i - dg + j] = f.sub_raw(rem[i - dg + j], f.mul_raw(q, gc));
            }
            debug_assert_eq!(rem[i], 0);
        }
        rem.truncate(dg);
        Ok((UPoly::from_raw(f, quot), UPoly::from_raw(f, rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, g: &UPoly) -> Result<UPoly> {
        let (q, r) = self.divrem(g)?;
        if !r.is_zero() {
            return Err(Error::Inconsistency("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Extended gcd: returns `(d, u, v)` with `u*f + v*g = d`, `d` monic.
    /// Errors when both inputs are zero.
    pub fn gcd_ext(&self, g: &UPoly) -> Result<(UPoly, UPoly, UPoly)> {
        self.check_field(g);
        if self.is_zero() && g.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let field = self.field;
        let (mut r0, mut r1) = (self.clone(), g.clone());
        let (mut s0, mut s1) = (UPoly::one(field), UPoly::zero(field));
        let (mut t0, mut t1) = (UPoly::zero(field), UPoly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        // Normalize so the gcd is monic.
        let lc_inv = r0.leading_coeff().unwrap().inv()?;
        Ok((r0.scale(lc_inv), s0.scale(lc_inv), t0.scale(lc_inv)))
    }

    /// Rescales to leading coefficient 1. Panics on the zero polynomial —
    /// callers (Hermite diagonals, gcds) have already excluded it.
    pub fn monic(&self) -> UPoly {
        let lc = self
            .leading_coeff()
            .expect("monic() called on the zero polynomial");
        if lc.is_one() {
            return self.clone();
        }
        self.scale(lc.inv().expect("nonzero leading coefficient"))
    }

    /// Horner evaluation at a point.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        assert_eq!(self.field.modulus(), x.field().modulus(), "point from a different field");
        let f = self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add_raw(f.mul_raw(acc, x.value()), c);
        }
        f.element(acc as i64)
    }

    /// Canonical text form: `c0 + c1*y + ... + cd*y^d`, zero terms omitted,
    /// increasing degree. The zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let part = match i {
                0 => format!("{c}"),
                1 if c == 1 => "y".to_string(),
                1 => format!("{c}*y"),
                _ if c == 1 => format!("y^{i}"),
                _ => format!("{c}*y^{i}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    /// Parses the text form; accepts terms in any order, optional `*`,
    /// optional exponents, and `-` signs.
    pub fn parse(field: PrimeField, text: &str) -> Result<UPoly> {
        let err = |msg: &str| Error::Parse { line: 0, msg: format!("{msg}: {text:?}") };
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut coeffs: Vec<(usize, i64)> = Vec::new();
        let bytes = cleaned.as_bytes();
        let mut pos = 0;
        let mut sign = 1i64;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = if bytes[0] == b'-' { -1 } else { 1 };
            pos = 1;
        }
        while pos < bytes.len() {
            // One term: [number] [*] [y [^ number]]
            let start = pos;
            let mut coeff: Option<u64> = None;
            let mut deg: Option<usize> = None;
            let mut num_end = pos;
            while num_end < bytes.len() && bytes[num_end].is_ascii_digit() {
                num_end += 1;
            }
            if num_end > pos {
                let v: u64 = cleaned[pos..num_end]
                    .parse()
                    .map_err(|_| err("coefficient out of range"))?;
                coeff = Some(v % field.modulus());
                pos = num_end;
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                }
            }
            if pos < bytes.len() && bytes[pos] == b'y' {
                pos += 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let mut e = pos;
                    while e < bytes.len() && bytes[e].is_ascii_digit() {
                        e += 1;
                    }
                    if e == pos {
                        return Err(err("missing exponent after '^'"));
                    }
                    deg = Some(cleaned[pos..e].parse().map_err(|_| err("exponent out of range"))?);
                    pos = e;
                } else {
                    deg = Some(1);
                }
            }
            if pos == start {
                return Err(err("unexpected character"));
            }
            let c = coeff.unwrap_or(1);
            coeffs.push((deg.unwrap_or(0), sign * c as i64));
            if pos < bytes.len() {
                sign = match bytes[pos] {
                    b'+' => 1,
                    b'-' => -1,
                    _ => return Err(err("expected '+' or '-' between terms")),
                };
                pos += 1;
                if pos == bytes.len() {
                    return Err(err("trailing sign"));
                }
            }
        }
        let top = coeffs.iter().map(|&(d, _)| d).max().unwrap_or(0);
        let mut acc = vec![0i64; top + 1];
        for (d, c) in coeffs {
            acc[d] = (acc[d] + c).rem_euclid(field.modulus() as i64);
        }
        Ok(UPoly::from_coeffs(field, &acc))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        UPoly::add(self, rhs)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        UPoly::sub(self, rhs)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        UPoly::mul(self, rhs)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
