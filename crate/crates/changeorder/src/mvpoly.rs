//! Multivariate monomials and polynomials, the DRL and LEX orders, and
//! multivariate division (normal forms).
//!
//! Variable convention: a monomial over n variables stores its exponents as a
//! vector of length n where slot k < n−1 belongs to x_{k+1} and the **last**
//! slot belongs to y. Both supported orders make y the smallest variable, so
//! y ≺ x_{n−1} ≺ … ≺ x_1; keeping y in the last slot makes that literal.
//!
//! Term storage is order-agnostic (one canonical map per polynomial);
//! leading-term queries scan the support with the requested comparator, which
//! is plenty at the scale this crate targets.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::{FieldElement, PrimeField};
use crate::{Error, Result};

/// A monomial: exponent vector of fixed length n (last slot = y).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    /// The constant monomial 1 over n variables.
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: vec![0; nvars] }
    }

    /// The single variable in slot `idx` (0-based; slot n−1 is y).
    pub fn var(nvars: usize, idx: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    fn check_len(&self, other: &Monomial) {
        assert_eq!(
            self.exps.len(),
            other.exps.len(),
            "monomials over different variable counts"
        );
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.check_len(other);
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.check_len(other);
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, or None when not divisible.
    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        self.check_len(divisor);
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.check_len(other);
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.check_len(other);
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Exponent of y (the last slot).
    pub fn y_exponent(&self) -> u32 {
        *self.exps.last().expect("monomial over zero variables")
    }

    pub fn is_y_free(&self) -> bool {
        self.y_exponent() == 0
    }

    /// Splits into the y-free part and the y exponent.
    pub fn strip_y(&self) -> (Monomial, u32) {
        let mut exps = self.exps.clone();
        let e = *exps.last().unwrap();
        *exps.last_mut().unwrap() = 0;
        (Monomial { exps }, e)
    }

    /// Multiplies by y^k.
    pub fn mul_y(&self, k: u32) -> Monomial {
        let mut exps = self.exps.clone();
        *exps.last_mut().unwrap() += k;
        Monomial { exps }
    }

    /// True iff the monomial is a positive pure power of the variable in
    /// slot `idx` (so 1 itself does not count).
    pub fn is_pure_power_of(&self, idx: usize) -> bool {
        self.exps[idx] > 0
            && self.exps.iter().enumerate().all(|(k, &e)| k == idx || e == 0)
    }
}

/// The two monomial orders in play. Both have 1 minimal, are compatible with
/// multiplication, and order the variables y ≺ x_{n−1} ≺ … ≺ x_1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic: higher total degree wins; on ties the
    /// rightmost nonzero entry of the exponent difference decides, negative
    /// meaning greater.
    Drl,
    /// Lexicographic: the leftmost nonzero entry of the exponent difference
    /// decides, positive meaning greater.
    Lex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.check_len(b);
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(&b.exps) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Drl => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    match x.cmp(y) {
                        // Rightmost difference: the smaller exponent wins.
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Drl => "drl",
            MonomialOrder::Lex => "lex",
        }
    }

    pub fn from_name(s: &str) -> Option<MonomialOrder> {
        match s {
            "drl" => Some(MonomialOrder::Drl),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    /// Encodes a monomial as a vector whose plain lexicographic `Ord`
    /// agrees with this monomial order, so an ordered map keyed by it finds
    /// the leading term in logarithmic time instead of a full scan.
    /// LEX is the exponent vector itself; DRL prepends the total degree and
    /// complements the reversed exponents (rightmost-smallest wins ties).
    pub(crate) fn sort_key(&self, m: &Monomial) -> Vec<u32> {
        match self {
            MonomialOrder::Lex => m.exps.clone(),
            MonomialOrder::Drl => {
                let deg = m.total_degree();
                debug_assert!(deg < u32::MAX as u64, "degree exceeds key range");
                let mut key = Vec::with_capacity(m.exps.len() + 1);
                key.push(deg as u32);
                key.extend(m.exps.iter().rev().map(|&e| u32::MAX - e));
                key
            }
        }
    }

    /// Inverse of `sort_key`.
    pub(crate) fn monomial_from_key(&self, key: &[u32], nvars: usize) -> Monomial {
        match self {
            MonomialOrder::Lex => Monomial::new(key.to_vec()),
            MonomialOrder::Drl => {
                debug_assert_eq!(key.len(), nvars + 1);
                let exps: Vec<u32> = key[1..].iter().rev().map(|&k| u32::MAX - k).collect();
                Monomial::new(exps)
            }
        }
    }
}

/// A multivariate polynomial: canonical map from monomials to nonzero
/// reduced coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvPoly {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl MvPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> MvPoly {
        MvPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(field: PrimeField, nvars: usize, terms: &[(Monomial, i64)]) -> MvPoly {
        let mut out = MvPoly::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            out.add_term_raw(m.clone(), field.reduce_i64(*c));
        }
        out
    }

    /// The monomial `m` with coefficient 1.
    pub fn from_monomial(field: PrimeField, m: Monomial) -> MvPoly {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        MvPoly { field, nvars, terms }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.field.element(*self.terms.get(m).unwrap_or(&0) as i64)
    }

    /// Iterates over (monomial, coefficient) in the canonical storage order
    /// (not a monomial order; use [`MvPoly::leading_term`] for that).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, &c)| (m, self.field.element(c as i64)))
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    fn check_compat(&self, other: &MvPoly) {
        assert_eq!(self.field.modulus(), other.field.modulus(), "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable counts");
    }

    /// self[m] += c, removing the entry when it cancels.
    fn add_term_raw(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add_raw(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MvPoly) -> MvPoly {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term_raw(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MvPoly) -> MvPoly {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term_raw(m.clone(), self.field.neg_raw(c));
        }
        out
    }

    pub fn neg(&self) -> MvPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| (m.clone(), self.field.neg_raw(c)))
            .collect();
        MvPoly { field: self.field, nvars: self.nvars, terms }
    }

    /// `self * c * m` for a scalar c and monomial m.
    pub fn mul_term(&self, c: FieldElement, m: &Monomial) -> MvPoly {
        assert_eq!(self.field.modulus(), c.field().modulus(), "scalar from a different field");
        assert_eq!(m.nvars(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return MvPoly::zero(self.field, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, &v)| (k.mul(m), self.field.mul_raw(v, c.value())))
            .collect();
        MvPoly { field: self.field, nvars: self.nvars, terms }
    }

    /// In-place `self += c * m * other`; the workhorse of division.
    pub(crate) fn add_scaled_shifted(&mut self, other: &MvPoly, c: u64, m: &Monomial) {
        if c == 0 {
            return;
        }
        let field = self.field;
        for (k, &v) in &other.terms {
            self.add_term_raw(k.mul(m), field.mul_raw(v, c));
        }
    }

    pub fn mul(&self, other: &MvPoly) -> MvPoly {
        self.check_compat(other);
        let mut out = MvPoly::zero(self.field, self.nvars);
        for (m, &c) in &self.terms {
            out.add_scaled_shifted(other, c, m);
        }
        out
    }

    /// Scales by a field element.
    pub fn scale(&self, c: FieldElement) -> MvPoly {
        self.mul_term(c, &Monomial::one(self.nvars))
    }

    /// The maximal (monomial, coefficient) under `order`; None for zero.
    /// Linear scan over the support.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, FieldElement)> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = match best {
                None => Some(m),
                Some(b) => {
                    if order.compare(m, b) == Ordering::Greater {
                        Some(m)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best.map(|m| (m, self.field.element(self.terms[m] as i64)))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<Monomial> {
        self.leading_term(order).map(|(m, _)| m.clone())
    }

    /// Rescales to leading coefficient 1 (no-op on zero).
    pub fn monic(&self, order: MonomialOrder) -> MvPoly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, lc)) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.scale(lc.inv().expect("nonzero leading coefficient"))
                }
            }
        }
    }

    /// True when every monomial of the support is a pure power of y.
    pub fn is_univariate_in_y(&self) -> bool {
        self.terms.keys().all(|m| {
            let (xpart, _) = m.strip_y();
            xpart.is_one()
        })
    }

    /// Converts a polynomial supported on powers of y to a UPoly.
    pub fn to_upoly(&self) -> Result<crate::upoly::UPoly> {
        let mut coeffs: Vec<(usize, u64)> = Vec::new();
        for (m, &c) in &self.terms {
            let (xpart, e) = m.strip_y();
            if !xpart.is_one() {
                return Err(Error::NotInModule { exponents: m.exps().to_vec() });
            }
            coeffs.push((e as usize, c));
        }
        let top = coeffs.iter().map(|&(d, _)| d).max().unwrap_or(0);
        let mut raw = vec![0u64; top + 1];
        for (d, c) in coeffs {
            raw[d] = c;
        }
        Ok(crate::upoly::UPoly::from_raw(self.field, raw))
    }

    /// Embeds a UPoly as a polynomial in y over n variables.
    pub fn from_upoly(p: &crate::upoly::UPoly, nvars: usize) -> MvPoly {
        let mut out = MvPoly::zero(p.field(), nvars);
        if let Some(d) = p.degree() {
            for i in 0..=d {
                let c = p.coeff_raw(i);
                if c != 0 {
                    out.terms.insert(Monomial::one(nvars).mul_y(i as u32), c);
                }
            }
        }
        out
    }
}

/// Multivariate division: the normal form of `f` modulo `reducers` under
/// `order`. Repeatedly reduces the order-maximal reducible monomial, using
/// the earliest reducer in the list whose leading term divides it; monomials
/// with no divisor are committed to the remainder. When `reducers` is a
/// Groebner basis for `order`, the result is the unique normal form with
/// support disjoint from the leading-term ideal.
pub fn normal_form(f: &MvPoly, reducers: &[MvPoly], order: MonomialOrder) -> MvPoly {
    if order == MonomialOrder::Lex {
        if let Some(r) = reduce_packed(f, reducers) {
            return r;
        }
    }
    reduce_generic(f, reducers, order)
}

/// Fast path for LEX with at most eight variables and every exponent below
/// 2^15: a monomial packs into one u128 of 16-bit fields (leftmost variable
/// most significant) whose integer order equals LEX. Monomial products
/// become plain additions (fields cannot carry into their neighbours while
/// the top guard bit of each field stays clear) and divisibility one masked
/// subtraction. Returns None when any input or intermediate exponent leaves
/// the packable range; the caller falls back to the generic path.
fn reduce_packed(f: &MvPoly, reducers: &[MvPoly]) -> Option<MvPoly> {
    let nvars = f.nvars();
    if nvars == 0 || nvars > 8 {
        return None;
    }
    let field = f.field();
    let mut guard = 0u128;
    for _ in 0..nvars {
        guard = (guard << 16) | 0x8000;
    }
    let pack = |m: &Monomial| -> Option<u128> {
        let mut k = 0u128;
        for &e in m.exps() {
            if e >= 1 << 15 {
                return None;
            }
            k = (k << 16) | e as u128;
        }
        Some(k)
    };
    let unpack = |mut k: u128| -> Monomial {
        let mut exps = vec![0u32; nvars];
        for slot in exps.iter_mut().rev() {
            *slot = (k & 0xFFFF) as u32;
            k >>= 16;
        }
        Monomial::new(exps)
    };
    struct PackedRed {
        lt: u128,
        lc_inv: u64,
        tail: Vec<(u128, u64)>,
    }
    let mut reds: Vec<PackedRed> = Vec::with_capacity(reducers.len());
    for g in reducers {
        if g.is_zero() {
            continue;
        }
        let (lt, lc) = g.leading_term(MonomialOrder::Lex).unwrap();
        let lt_key = pack(lt)?;
        let mut tail = Vec::with_capacity(g.terms.len().saturating_sub(1));
        for (m, &c) in &g.terms {
            if m != lt {
                tail.push((pack(m)?, c));
            }
        }
        reds.push(PackedRed {
            lt: lt_key,
            lc_inv: field.inv_raw(lc.value()).expect("nonzero leading coefficient"),
            tail,
        });
    }
    let mut work: BTreeMap<u128, u64> = BTreeMap::new();
    for (m, &c) in &f.terms {
        work.insert(pack(m)?, c);
    }
    let mut remainder = MvPoly::zero(field, nvars);
    while let Some((key, c)) = work.pop_last() {
        // lt divides key iff no 16-bit field borrows in key - lt; seeding
        // the guard bits keeps each field's borrow from escaping, so the
        // guard bit survives exactly on the borrow-free fields.
        match reds.iter().find(|r| ((key | guard) - r.lt) & guard == guard) {
            Some(r) => {
                let shift = key - r.lt;
                let scale = field.neg_raw(field.mul_raw(c, r.lc_inv));
                for &(tk, tv) in &r.tail {
                    let nk = tk + shift;
                    if nk & guard != 0 {
                        return None;
                    }
                    match work.entry(nk) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(field.mul_raw(tv, scale));
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            let s = field.add_raw(*o.get(), field.mul_raw(tv, scale));
                            if s == 0 {
                                o.remove();
                            } else {
                                *o.get_mut() = s;
                            }
                        }
                    }
                }
            }
            None => {
                remainder.terms.insert(unpack(key), c);
            }
        }
    }
    Some(remainder)
}

fn reduce_generic(f: &MvPoly, reducers: &[MvPoly], order: MonomialOrder) -> MvPoly {
    let field = f.field();
    let nvars = f.nvars();
    struct Red<'a> {
        lt: Monomial,
        lc_inv: u64,
        poly: &'a MvPoly,
    }
    let reds: Vec<Red> = reducers
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (lt, lc) = g.leading_term(order).unwrap();
            Red {
                lt: lt.clone(),
                lc_inv: field.inv_raw(lc.value()).expect("nonzero leading coefficient"),
                poly: g,
            }
        })
        .collect();
    // Workspace keyed by the order's sort key, so the current maximum is a
    // last-entry lookup rather than a scan over the whole support.
    let mut work: BTreeMap<Vec<u32>, u64> = f
        .terms
        .iter()
        .map(|(m, &c)| (order.sort_key(m), c))
        .collect();
    let mut remainder = MvPoly::zero(field, nvars);
    // Top-down sweep: the current overall maximum either reduces (strictly
    // smaller terms flow in) or is irreducible and moves to the remainder,
    // where nothing can touch it again.
    while let Some((key, c)) = work.pop_last() {
        let m = order.monomial_from_key(&key, nvars);
        match reds.iter().find(|r| r.lt.divides(&m)) {
            Some(r) => {
                // Pop the maximum and fold in the reducer's scaled tail;
                // the leading terms cancel by construction.
                let shift = m.checked_div(&r.lt).unwrap();
                let scale = field.neg_raw(field.mul_raw(c, r.lc_inv));
                for (tm, &tv) in &r.poly.terms {
                    if *tm == r.lt {
                        continue;
                    }
                    let k = order.sort_key(&tm.mul(&shift));
                    match work.entry(k) {
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(field.mul_raw(tv, scale));
                        }
                        std::collections::btree_map::Entry::Occupied(mut o) => {
                            let s = field.add_raw(*o.get(), field.mul_raw(tv, scale));
                            if s == 0 {
                                o.remove();
                            } else {
                                *o.get_mut() = s;
                            }
                        }
                    }
                }
            }
            None => {
                remainder.terms.insert(m, c);
            }
        }
    }
    remainder
}

/// Formats with the given variable names, terms in decreasing `order`.
/// Coefficient 1 is omitted on non-constant terms; exponent 1 prints bare.
pub fn format_poly(f: &MvPoly, var_names: &[String], order: MonomialOrder) -> String {
    assert_eq!(var_names.len(), f.nvars(), "variable name count mismatch");
    if f.is_zero() {
        return "0".to_string();
    }
    let mut monos: Vec<&Monomial> = f.terms.keys().collect();
    monos.sort_by(|a, b| order.compare(b, a));
    let mut parts = Vec::new();
    for m in monos {
        let c = f.terms[m];
        let mut factors = Vec::new();
        for (idx, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(var_names[idx].clone()),
                _ => factors.push(format!("{}^{}", var_names[idx], e)),
            }
        }
        let term = if factors.is_empty() {
            format!("{c}")
        } else if c == 1 {
            factors.join("*")
        } else {
            format!("{c}*{}", factors.join("*"))
        };
        parts.push(term);
    }
    parts.join(" + ")
}

/// Parses the term grammar `c*x1^a1*...*y^e` with terms joined by `+`/`-`.
/// `*` is optional, exponent 1 may be omitted, unknown identifiers error.
pub fn parse_poly(field: PrimeField, var_names: &[String], text: &str) -> Result<MvPoly> {
    let err = |msg: String| Error::Parse { line: 0, msg };
    let nvars = var_names.len();
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err(format!("empty polynomial in {text:?}")));
    }
    let bytes = cleaned.as_bytes();
    let mut pos = 0;
    let mut sign = 1i64;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign = if bytes[0] == b'-' { -1 } else { 1 };
        pos = 1;
    }
    let mut out = MvPoly::zero(field, nvars);
    while pos < bytes.len() {
        let mut coeff = 1u64;
        let mut exps = vec![0u32; nvars];
        let mut saw_factor = false;
        loop {
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let v: u64 = cleaned[start..pos]
                    .parse()
                    .map_err(|_| err(format!("coefficient out of range in {text:?}")))?;
                coeff = field.mul_raw(coeff, v % field.modulus());
                saw_factor = true;
            } else if pos < bytes.len() && (bytes[pos].is_ascii_alphabetic() || bytes[pos] == b'_') {
                // Longest variable name prefixing the rest of the input, so
                // implicit products like `12x1y` split as x1 * y.
                let rest = &cleaned[pos..];
                let idx = var_names
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| rest.starts_with(v.as_str()))
                    .max_by_key(|(_, v)| v.len())
                    .map(|(i, _)| i)
                    .ok_or_else(|| {
                        let end = rest
                            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
                            .unwrap_or(rest.len());
                        err(format!("unknown variable {:?} in {text:?}", &rest[..end]))
                    })?;
                pos += var_names[idx].len();
                let mut e: u32 = 1;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let estart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if pos == estart {
                        return Err(err(format!("missing exponent after '^' in {text:?}")));
                    }
                    e = cleaned[estart..pos]
                        .parse()
                        .map_err(|_| err(format!("exponent out of range in {text:?}")))?;
                }
                exps[idx] += e;
                saw_factor = true;
            } else {
                break;
            }
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            // Implicit product only between a number and an identifier.
            if pos < bytes.len() && (bytes[pos].is_ascii_alphabetic() || bytes[pos] == b'_') {
                continue;
            }
            break;
        }
        if !saw_factor {
            return Err(err(format!(
                "unexpected character {:?} in {text:?}",
                cleaned[pos..].chars().next().unwrap()
            )));
        }
        let signed = if sign < 0 { field.neg_raw(coeff) } else { coeff };
        out.add_term_raw(Monomial::new(exps), signed);
        if pos < bytes.len() {
            sign = match bytes[pos] {
                b'+' => 1,
                b'-' => -1,
                other => {
                    return Err(err(format!(
                        "expected '+' or '-', found {:?} in {text:?}",
                        other as char
                    )))
                }
            };
            pos += 1;
            if pos == bytes.len() {
                return Err(err(format!("trailing sign in {text:?}")));
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Monomial {
    /// Debug-oriented display with generic slot names; file formats use
    /// [`format_poly`] with real variable names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let n = self.nvars();
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if i + 1 == n {
                write!(f, "y")?;
            } else {
                write!(f, "x{}", i + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn packed_lex_reduction_matches_the_generic_path() {
        let field = PrimeField::new(536870923).unwrap();
        let mut state = 11u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for nvars in 1..=4usize {
            for round in 0..20 {
                let rand_poly = |next: &mut dyn FnMut() -> u64, max_exp: u32, terms: usize| {
                    let pairs: Vec<(Monomial, i64)> = (0..terms)
                        .map(|_| {
                            let exps: Vec<u32> =
                                (0..nvars).map(|_| (next() % (max_exp as u64 + 1)) as u32).collect();
                            (Monomial::new(exps), (next() % 97) as i64 + 1)
                        })
                        .collect();
                    MvPoly::from_terms(field, nvars, &pairs)
                };
                let reducers: Vec<MvPoly> =
                    (0..3).map(|_| rand_poly(&mut next, 3, 4 + round % 3)).collect();
                let reducers: Vec<MvPoly> =
                    reducers.into_iter().filter(|g| !g.is_zero()).collect();
                let f = rand_poly(&mut next, 6, 10);
                assert_eq!(
                    reduce_packed(&f, &reducers).expect("exponents are small"),
                    reduce_generic(&f, &reducers, MonomialOrder::Lex),
                );
            }
        }
    }

    #[test]
    fn packed_lex_reduction_declines_out_of_range_input() {
        let field = PrimeField::new(101).unwrap();
        let big = MvPoly::from_terms(field, 1, &[(Monomial::new(vec![40000]), 1)]);
        assert!(reduce_packed(&big, &[]).is_none());
        let wide = MvPoly::from_terms(field, 9, &[(Monomial::new(vec![1; 9]), 1)]);
        assert!(reduce_packed(&wide, &[]).is_none());
        // The public entry point still reduces both via the generic path.
        assert_eq!(normal_form(&big, &[], MonomialOrder::Lex), big);
        assert_eq!(normal_form(&wide, &[], MonomialOrder::Lex), wide);
    }

    #[test]
    fn sort_keys_agree_with_the_comparators() {
        // The keyed reduction workspace is only sound if plain Ord on the
        // keys reproduces the monomial order exactly.
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for order in [MonomialOrder::Drl, MonomialOrder::Lex] {
            for nvars in 1..=4 {
                for _ in 0..200 {
                    let a = Monomial::new((0..nvars).map(|_| (next() % 7) as u32).collect());
                    let b = Monomial::new((0..nvars).map(|_| (next() % 7) as u32).collect());
                    assert_eq!(
                        order.sort_key(&a).cmp(&order.sort_key(&b)),
                        order.compare(&a, &b),
                        "{order:?} key order diverges on {a} vs {b}"
                    );
                    assert_eq!(order.monomial_from_key(&order.sort_key(&a), nvars), a);
                }
            }
        }
    }

    use super::*;

    fn f29() -> PrimeField {
        PrimeField::new(29).unwrap()
    }

    fn names3() -> Vec<String> {
        vec!["x1".into(), "x2".into(), "y".into()]
    }

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn drl_examples() {
        let drl = MonomialOrder::Drl;
        // x2^2 > x1*y: the leading term of x2^2 + 12x1y + ... under DRL.
        assert_eq!(drl.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        // Total degree dominates.
        assert_eq!(drl.compare(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
        // 1 is minimal.
        assert_eq!(drl.compare(&m(&[0, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
        // Same degree: y^2 < x2*y < x1*y < x2^2 < x1*x2 < x1^2.
        let deg2 = [
            m(&[0, 0, 2]),
            m(&[0, 1, 1]),
            m(&[1, 0, 1]),
            m(&[0, 2, 0]),
            m(&[1, 1, 0]),
            m(&[2, 0, 0]),
        ];
        for w in deg2.windows(2) {
            assert_eq!(drl.compare(&w[0], &w[1]), Ordering::Less);
        }
    }

    #[test]
    fn lex_examples() {
        let lex = MonomialOrder::Lex;
        assert_eq!(lex.compare(&m(&[1, 0, 0]), &m(&[0, 7, 9])), Ordering::Greater);
        assert_eq!(lex.compare(&m(&[0, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
        assert_eq!(lex.compare(&m(&[0, 1, 0]), &m(&[0, 0, 9])), Ordering::Greater);
        // 1 < y < y^2 < ... < x2 < x2*y < ... < x1.
        let chain = [
            m(&[0, 0, 0]),
            m(&[0, 0, 1]),
            m(&[0, 0, 5]),
            m(&[0, 1, 0]),
            m(&[0, 1, 3]),
            m(&[0, 2, 0]),
            m(&[1, 0, 0]),
        ];
        for w in chain.windows(2) {
            assert_eq!(lex.compare(&w[0], &w[1]), Ordering::Less);
        }
    }

    #[test]
    fn drl_agrees_with_reference_comparator() {
        // Reference: compare total degrees; on ties find the last index where
        // the exponents differ — the monomial with the smaller exponent there
        // is the larger one.
        fn reference(a: &Monomial, b: &Monomial) -> Ordering {
            match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {}
                o => return o,
            }
            for i in (0..a.nvars()).rev() {
                if a.exp(i) != b.exp(i) {
                    return b.exp(i).cmp(&a.exp(i));
                }
            }
            Ordering::Equal
        }
        let mut state = 11u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 58) as u32
        };
        for _ in 0..10_000 {
            let a = m(&[next(), next(), next(), next()]);
            let b = m(&[next(), next(), next(), next()]);
            assert_eq!(MonomialOrder::Drl.compare(&a, &b), reference(&a, &b));
        }
    }

    #[test]
    fn orders_compatible_with_multiplication() {
        let mut state = 3u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 59) as u32
        };
        for order in [MonomialOrder::Drl, MonomialOrder::Lex] {
            for _ in 0..2000 {
                let a = m(&[next(), next(), next()]);
                let b = m(&[next(), next(), next()]);
                let c = m(&[next(), next(), next()]);
                let ab = order.compare(&a, &b);
                assert_eq!(order.compare(&a.mul(&c), &b.mul(&c)), ab);
                // 1 is minimal.
                assert_ne!(
                    order.compare(&Monomial::one(3), &a),
                    Ordering::Greater
                );
            }
        }
    }

    #[test]
    fn monomial_arithmetic() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 0, 3]);
        assert_eq!(a.mul(&b), m(&[3, 1, 3]));
        assert_eq!(a.lcm(&b), m(&[2, 1, 3]));
        assert!(m(&[1, 0, 0]).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.checked_div(&m(&[1, 1, 0])), Some(m(&[1, 0, 0])));
        assert_eq!(a.checked_div(&b), None);
        assert!(m(&[0, 2, 0]).is_coprime_with(&m(&[1, 0, 1])));
        assert!(!a.is_coprime_with(&b));
        assert_eq!(b.strip_y(), (m(&[1, 0, 0]), 3));
        assert!(m(&[0, 2, 0]).is_pure_power_of(1));
        assert!(!m(&[0, 2, 1]).is_pure_power_of(1));
        assert!(!Monomial::one(3).is_pure_power_of(1));
    }

    #[test]
    fn leading_term_scan_matches_sort() {
        let f29 = f29();
        let mut state = 17u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        for order in [MonomialOrder::Drl, MonomialOrder::Lex] {
            for _ in 0..200 {
                let terms: Vec<(Monomial, i64)> = (0..8)
                    .map(|_| {
                        let mono = m(&[
                            (next() >> 60) as u32,
                            (next() >> 60) as u32,
                            (next() >> 60) as u32,
                        ]);
                        (mono, (next() >> 40) as i64)
                    })
                    .collect();
                let f = MvPoly::from_terms(f29, 3, &terms);
                if f.is_zero() {
                    continue;
                }
                let mut monos: Vec<Monomial> = f.support().cloned().collect();
                monos.sort_by(|a, b| order.compare(a, b));
                let brute = monos.last().unwrap();
                assert_eq!(f.leading_term(order).unwrap().0, brute);
            }
        }
    }

    #[test]
    fn single_term_leading() {
        let f = MvPoly::from_terms(f29(), 3, &[(m(&[1, 2, 3]), 5)]);
        let (lm, lc) = f.leading_term(MonomialOrder::Drl).unwrap();
        assert_eq!(lm, &m(&[1, 2, 3]));
        assert_eq!(lc, f29().element(5));
        assert!(MvPoly::zero(f29(), 3).leading_term(MonomialOrder::Lex).is_none());
    }

    #[test]
    fn ring_arithmetic() {
        let f = f29();
        let x1 = MvPoly::from_monomial(f, m(&[1, 0, 0]));
        let y = MvPoly::from_monomial(f, m(&[0, 0, 1]));
        let sum = x1.add(&y);
        let diff = x1.sub(&y);
        let prod = sum.mul(&diff);
        let expect = MvPoly::from_terms(f, 3, &[(m(&[2, 0, 0]), 1), (m(&[0, 0, 2]), -1)]);
        assert_eq!(prod, expect);
        assert!(sum.sub(&sum).is_zero());
        assert_eq!(sum.neg().neg(), sum);
    }

    #[test]
    fn normal_form_examples() {
        let f = f29();
        let names = names3();
        let gb = vec![
            parse_poly(f, &names, "x1^2 - 1").unwrap(),
            parse_poly(f, &names, "y - 2").unwrap(),
        ];
        // Leading terms x1^2 and y are coprime, so this is a Groebner basis.
        let probe = parse_poly(f, &names, "x1^3 + y").unwrap();
        let nf = normal_form(&probe, &gb, MonomialOrder::Drl);
        assert_eq!(nf, parse_poly(f, &names, "x1 + 2").unwrap());
        // Polynomials supported outside <LT> are untouched.
        let outside = parse_poly(f, &names, "x1*x2 + 7").unwrap();
        assert_eq!(normal_form(&outside, &gb, MonomialOrder::Drl), outside);
        // Members reduce to zero.
        let member = probe.sub(&nf);
        assert!(normal_form(&member, &gb, MonomialOrder::Drl).is_zero());
        // Empty reducer list: f comes back unchanged.
        assert_eq!(normal_form(&probe, &[], MonomialOrder::Drl), probe);
    }

    #[test]
    fn normal_form_idempotent_and_linear() {
        let f = f29();
        let names = names3();
        let gb = vec![
            parse_poly(f, &names, "x1^2 + x2").unwrap(),
            parse_poly(f, &names, "x2^2 + y").unwrap(),
            parse_poly(f, &names, "y^2 + 1").unwrap(),
        ];
        let mut state = 23u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        for order in [MonomialOrder::Drl, MonomialOrder::Lex] {
            for _ in 0..50 {
                let mk = |next: &mut dyn FnMut() -> u64| {
                    let terms: Vec<(Monomial, i64)> = (0..6)
                        .map(|_| {
                            (
                                m(&[
                                    (next() >> 61) as u32,
                                    (next() >> 61) as u32,
                                    (next() >> 61) as u32,
                                ]),
                                (next() >> 40) as i64,
                            )
                        })
                        .collect();
                    MvPoly::from_terms(f, 3, &terms)
                };
                let a = mk(&mut next);
                let b = mk(&mut next);
                let na = normal_form(&a, &gb, order);
                let nb = normal_form(&b, &gb, order);
                assert_eq!(normal_form(&na, &gb, order), na, "idempotence");
                assert_eq!(
                    normal_form(&a.add(&b), &gb, order),
                    na.add(&nb),
                    "additivity"
                );
            }
        }
    }

    #[test]
    fn parse_and_format_round_trip() {
        let f = f29();
        let names = names3();
        let cases = [
            "x2^2 + 12*x1*y + 26*x2*y + 5*y^2 + 9*x1 + 6*x2 + 8*y + 6",
            "x1*x2 + 10*x2^2 + 10*x1*y + 9*y^2 + 2*x1 + 14*x2 + y + 13",
            "y^4 + 3*y^3 + 15*x1*y + 23*x2*y + 3*y^2 + 26*x2 + 22*y",
            "0",
            "17",
            "y",
        ];
        for c in cases {
            let p = parse_poly(f, &names, c).unwrap();
            let text = format_poly(&p, &names, MonomialOrder::Drl);
            assert_eq!(parse_poly(f, &names, &text).unwrap(), p);
        }
        // Signs, implicit '*', shuffled terms.
        assert_eq!(
            parse_poly(f, &names, "12x1y - x2 + 3").unwrap(),
            parse_poly(f, &names, "3 + 28*x2 + 12*x1*y").unwrap()
        );
        assert!(parse_poly(f, &names, "z + 1").is_err());
        assert!(parse_poly(f, &names, "x1 +").is_err());
        assert!(parse_poly(f, &names, "").is_err());
    }

    #[test]
    fn format_orders_terms_by_active_order() {
        let f = f29();
        let names = names3();
        let p = parse_poly(f, &names, "x2^2 + 12*x1*y + 1").unwrap();
        // DRL leading term is x2^2; LEX leading term is x1*y.
        assert!(format_poly(&p, &names, MonomialOrder::Drl).starts_with("x2^2"));
        assert!(format_poly(&p, &names, MonomialOrder::Lex).starts_with("12*x1*y"));
    }

    #[test]
    fn to_upoly_round_trip() {
        let f = f29();
        let names = names3();
        let p = parse_poly(f, &names, "y^4 + 3*y^3 + 22*y").unwrap();
        let u = p.to_upoly().unwrap();
        assert_eq!(u, crate::upoly::UPoly::from_coeffs(f, &[0, 22, 0, 3, 1]));
        assert_eq!(MvPoly::from_upoly(&u, 3), p);
        let bad = parse_poly(f, &names, "x1 + y").unwrap();
        assert!(bad.to_upoly().is_err());
    }
}
