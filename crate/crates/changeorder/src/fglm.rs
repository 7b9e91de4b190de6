//! Multiplication matrix of y and the sparse change-of-order baseline.
//!
//! With the quotient basis grouped in y-power runs per C-monomial, the
//! matrix of "multiply by y" has companion blocks on the diagonal: rows
//! whose product stays inside the staircase are unit vectors, and under
//! stability the at most t remaining rows — one per block end — are the
//! negated tails of basis elements read straight off the DRL basis, no
//! division needed. Compressing each block column to a polynomial
//! reconstructs the module basis matrix P, which ties the two viewpoints
//! together and gives a free cross-check.
//!
//! The sparse path projects Krylov sequences s_k = u·M^k·v and recovers h
//! as their minimal recurrence via Berlekamp–Massey; when deg h = D the
//! quotient is cyclic, the ideal is in shape position, and each
//! parametrization g_i solves a Hankel system in the same projections.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::field::{FieldElement, PrimeField};
use crate::groebner::{check_stability, GroebnerBasis, StaircaseProfile};
use crate::lexgb::ShapeLexBasis;
use crate::mvpoly::{Monomial, MvPoly};
use crate::polymat::PolyMatrix;
use crate::upoly::UPoly;
use crate::{Error, Result};

/// The matrix of the multiply-by-y endomorphism of R/I on the grouped
/// quotient basis. Row i holds the coordinates of NF(y·b_i) on B, so
/// coordinate rows transform by right multiplication: coords(y·f) =
/// coords(f)·M.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationMatrix {
    field: PrimeField,
    basis: Vec<Monomial>,
    rows: Vec<Vec<FieldElement>>,
    /// `unit[i] = Some(j)` when row i is the j-th unit vector; lets
    /// vector-matrix products skip to the dense rows.
    unit: Vec<Option<usize>>,
}

impl MultiplicationMatrix {
    pub fn new(field: PrimeField, basis: Vec<Monomial>, rows: Vec<Vec<FieldElement>>) -> Self {
        let d = basis.len();
        assert_eq!(rows.len(), d, "row count must match the basis");
        assert!(rows.iter().all(|r| r.len() == d), "rows must be square");
        let unit = rows.iter().map(|r| unit_index(r)).collect();
        MultiplicationMatrix { field, basis, rows, unit }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> FieldElement {
        self.rows[i][j]
    }

    /// Indices of the rows where multiplication by y leaves the staircase
    /// — the at most t structurally dense rows, one per block end. (A
    /// border row's content can coincidentally equal a unit vector, e.g.
    /// y² ≡ 1; this classifies by the basis, not the entries.)
    pub fn border_rows(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let yb = self.basis[i].mul_y(1);
                !self.basis.contains(&yb)
            })
            .collect()
    }

    /// Right action on a coordinate row: w ↦ w·M, accumulated as a sum of
    /// scaled matrix rows so unit rows cost O(1) each.
    pub fn apply_row(&self, w: &[FieldElement]) -> Vec<FieldElement> {
        let d = self.dim();
        assert_eq!(w.len(), d, "vector length must match the dimension");
        let mut out = vec![self.field.zero(); d];
        for i in 0..d {
            if w[i].is_zero() {
                continue;
            }
            match self.unit[i] {
                Some(j) => out[j] += w[i],
                None => {
                    for j in 0..d {
                        out[j] += w[i] * self.rows[i][j];
                    }
                }
            }
        }
        out
    }

    /// Serializes as a `D modulus` header plus D rows of D integers.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.dim(), self.field.modulus());
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| c.value().to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the `to_text` format; the basis is not serialized, so the
    /// caller supplies it (typically from the staircase).
    pub fn parse(text: &str, basis: Vec<Monomial>) -> Result<MultiplicationMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty multiplication matrix text".into(),
        })?;
        let mut it = header.split_whitespace();
        let bad = |ln: usize, msg: &str| Error::Parse { line: ln + 1, msg: msg.into() };
        let d: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(ln, "expected dimension"))?;
        let p: u64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad(ln, "expected modulus"))?;
        if d != basis.len() {
            return Err(bad(ln, "dimension does not match the supplied basis"));
        }
        let field = PrimeField::new(p)?;
        let mut rows = Vec::with_capacity(d);
        for _ in 0..d {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| bad(0, "fewer rows than the header declares"))?;
            let row: Vec<FieldElement> = line
                .split_whitespace()
                .map(|s| s.parse::<i64>().map(|v| field.element(v)))
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(ln, "bad integer entry"))?;
            if row.len() != d {
                return Err(bad(ln, "row width does not match the dimension"));
            }
            rows.push(row);
        }
        Ok(MultiplicationMatrix::new(field, basis, rows))
    }
}

fn unit_index(row: &[FieldElement]) -> Option<usize> {
    let mut found = None;
    for (j, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_one() || found.is_some() {
            return None;
        }
        found = Some(j);
    }
    found
}

/// Builds M_y from a stable DRL basis without any polynomial division: a
/// basis monomial either stays in the staircase under multiplication by y
/// (unit row) or exits through a border monomial that stability forces to
/// be the leading term of a basis element, whose negated tail is the row.
pub fn build_mult_matrix(
    gb: &GroebnerBasis,
    prof: &StaircaseProfile,
) -> Result<MultiplicationMatrix> {
    if let crate::groebner::Stability::Unstable { monomial, var_slot } = check_stability(gb) {
        return Err(Error::Structure(format!(
            "leading-term ideal is not stable (witness {monomial} under variable slot {var_slot}); \
             build the multiplication matrix by normal forms instead"
        )));
    }
    let field = gb.field();
    let d = prof.dimension();
    let mut rows = Vec::with_capacity(d);
    for b in prof.basis() {
        let yb = b.mul_y(1);
        let mut row = vec![field.zero(); d];
        if let Some(j) = prof.index_of(&yb) {
            row[j] = field.one();
        } else {
            let f = gb
                .polys()
                .iter()
                .find(|f| f.leading_monomial(gb.order()) == Some(yb.clone()))
                .ok_or_else(|| {
                    Error::Structure(format!(
                        "border monomial {yb} is not a leading term; stability audit missed it"
                    ))
                })?;
            for (m, c) in f.terms() {
                if *m == yb {
                    continue;
                }
                let idx = prof.index_of(m).ok_or_else(|| {
                    Error::Structure(format!("reduced-basis tail monomial {m} escapes the staircase"))
                })?;
                row[idx] = -c;
            }
        }
        rows.push(row);
    }
    Ok(MultiplicationMatrix::new(field, prof.basis().to_vec(), rows))
}

/// The generic construction of M_y: row i is the coordinate vector of
/// NF(y·b_i). Works for any zero-dimensional DRL basis; the oracle for the
/// free construction and the fallback when stability fails.
pub fn build_mult_matrix_nf(gb: &GroebnerBasis, prof: &StaircaseProfile) -> MultiplicationMatrix {
    let field = gb.field();
    let d = prof.dimension();
    let mut rows = Vec::with_capacity(d);
    for b in prof.basis() {
        let yb = MvPoly::from_monomial(field, b.mul_y(1));
        let nf = gb.normal_form(&yb);
        let mut row = vec![field.zero(); d];
        for (m, c) in nf.terms() {
            let idx = prof
                .index_of(m)
                .expect("normal form lies in the span of the staircase");
            row[idx] = c;
        }
        rows.push(row);
    }
    MultiplicationMatrix::new(field, prof.basis().to_vec(), rows)
}

/// Rebuilds the module basis matrix P from M_y by compressing each block
/// column to a polynomial: P(i,j) = y^{e_i}·δ_{ij} − Σ_k M[end_i][start_j+k]·y^k,
/// reading only the block-end rows.
pub fn compress_to_polymatrix(
    m: &MultiplicationMatrix,
    prof: &StaircaseProfile,
) -> Result<PolyMatrix> {
    if m.dim() != prof.dimension() || m.basis() != prof.basis() {
        return Err(Error::Structure(
            "multiplication matrix basis does not match the staircase grouping".into(),
        ));
    }
    let field = m.field();
    let t = prof.num_blocks();
    let e = prof.exponents();
    let mut out = PolyMatrix::zero(field, t, t);
    for i in 0..t {
        let end = prof.block_start(i) + e[i] as usize - 1;
        for j in 0..t {
            let start = prof.block_start(j);
            let mut raw: Vec<u64> = (0..e[j] as usize)
                .map(|k| (-m.entry(end, start + k)).value())
                .collect();
            if i == j {
                raw.push(1);
            }
            out.set(i, j, UPoly::from_raw(field, raw));
        }
    }
    Ok(out)
}

/// Minimal connection polynomial of a linearly recurrent sequence by
/// Berlekamp–Massey: the monic h of least degree L with
/// Σ_j h_j·s_{k+j} = 0 for all k + L < len(s).
pub fn berlekamp_massey(field: PrimeField, s: &[FieldElement]) -> UPoly {
    // c holds the current connection polynomial C(x) with C(0) = 1, so the
    // recurrence reads Σ_i c_i·s_{k−i} = 0; b is the previous candidate.
    let mut c = vec![field.one()];
    let mut b = vec![field.one()];
    let mut l: usize = 0;
    let mut m: usize = 1;
    let mut bb = field.one();
    for k in 0..s.len() {
        let mut delta = s[k];
        for i in 1..=l.min(c.len() - 1) {
            delta += c[i] * s[k - i];
        }
        if delta.is_zero() {
            m += 1;
        } else if 2 * l <= k {
            let t = c.clone();
            let coef = delta * bb.inv().expect("last discrepancy is nonzero");
            if c.len() < b.len() + m {
                c.resize(b.len() + m, field.zero());
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + m] -= coef * bi;
            }
            l = k + 1 - l;
            b = t;
            bb = delta;
            m = 1;
        } else {
            let coef = delta * bb.inv().expect("last discrepancy is nonzero");
            if c.len() < b.len() + m {
                c.resize(b.len() + m, field.zero());
            }
            for (i, &bi) in b.iter().enumerate() {
                c[i + m] -= coef * bi;
            }
            m += 1;
        }
    }
    // h(y) = y^L·C(1/y): coefficient of y^{L−i} is c_i.
    let mut raw = vec![0u64; l + 1];
    for (i, &ci) in c.iter().enumerate().take(l + 1) {
        raw[l - i] = ci.value();
    }
    UPoly::from_raw(field, raw)
}

/// Solves the square system a·x = rhs by Gaussian elimination; None when
/// the matrix is singular.
fn solve_dense(
    mut a: Vec<Vec<FieldElement>>,
    mut rhs: Vec<FieldElement>,
) -> Option<Vec<FieldElement>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = a[col][col].inv().ok()?;
        for j in col..n {
            a[col][j] = a[col][j] * inv;
        }
        rhs[col] = rhs[col] * inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for j in col..n {
                let v = a[col][j];
                a[r][j] -= f * v;
            }
            let v = rhs[col];
            rhs[r] -= f * v;
        }
    }
    Some(rhs)
}

/// Wiedemann-style change of order for the shape case: project Krylov
/// sequences of M_y through a random vector u, recover h by
/// Berlekamp–Massey, and — when deg h = D certifies a cyclic quotient —
/// solve one Hankel system per variable for its parametrization. Returns
/// None after one retry with a fresh projection when the degree check
/// fails (unlucky projection or genuinely non-shape ideal).
pub fn sparse_fglm_shape(
    m: &MultiplicationMatrix,
    prof: &StaircaseProfile,
    gb: &GroebnerBasis,
    seed: u64,
) -> Result<Option<ShapeLexBasis>> {
    let field = m.field();
    let d = m.dim();
    let n = gb.nvars();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let v0 = coordinate_vector(&Monomial::one(n), m, prof, gb);

    let mut chosen: Option<(Vec<FieldElement>, Vec<FieldElement>, UPoly)> = None;
    for _attempt in 0..2 {
        let u: Vec<FieldElement> = (0..d).map(|_| random_element(field, &mut rng)).collect();
        let mut s = Vec::with_capacity(2 * d);
        let mut w = v0.clone();
        for _ in 0..2 * d {
            s.push(dot(&w, &u));
            w = m.apply_row(&w);
        }
        let h = berlekamp_massey(field, &s);
        if h.degree() == Some(d) {
            chosen = Some((u, s, h));
            break;
        }
    }
    let Some((u, s, h)) = chosen else {
        return Ok(None);
    };

    // Hankel matrix [s_{k+j}] is nonsingular exactly when the recurrence
    // order is D, which the degree check certified.
    let hankel: Vec<Vec<FieldElement>> = (0..d).map(|k| s[k..k + d].to_vec()).collect();
    let mut g = Vec::with_capacity(n - 1);
    for v in 0..n - 1 {
        let vi = coordinate_vector(&Monomial::var(n, v), m, prof, gb);
        let mut rhs = Vec::with_capacity(d);
        let mut w = vi;
        for _ in 0..d {
            rhs.push(dot(&w, &u));
            w = m.apply_row(&w);
        }
        let sol = solve_dense(hankel.clone(), rhs).ok_or_else(|| {
            Error::Inconsistency(
                "Hankel system singular although the minimal polynomial has full degree".into(),
            )
        })?;
        g.push(UPoly::from_raw(field, sol.iter().map(|c| c.value()).collect()));
    }
    Ok(Some(ShapeLexBasis { h, g }))
}

/// Coordinates of NF(m) on the staircase basis: a unit vector when the
/// monomial itself is standard, otherwise the reduced normal form's
/// coordinate vector.
fn coordinate_vector(
    mono: &Monomial,
    m: &MultiplicationMatrix,
    prof: &StaircaseProfile,
    gb: &GroebnerBasis,
) -> Vec<FieldElement> {
    let field = m.field();
    let mut out = vec![field.zero(); m.dim()];
    if let Some(idx) = prof.index_of(mono) {
        out[idx] = field.one();
        return out;
    }
    let nf = gb.normal_form(&MvPoly::from_monomial(field, mono.clone()));
    for (t, c) in nf.terms() {
        let idx = prof
            .index_of(t)
            .expect("normal form lies in the span of the staircase");
        out[idx] = c;
    }
    out
}

fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = a[0].field().zero();
    for (x, y) in a.iter().zip(b) {
        acc += *x * *y;
    }
    acc
}

/// Uniform field element by rejection sampling on the 64-bit stream.
pub(crate) fn random_element(field: PrimeField, rng: &mut ChaCha12Rng) -> FieldElement {
    let p = field.modulus();
    let zone = u64::MAX - (u64::MAX % p);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return field.element((x % p) as i64);
        }
    }
}

/// Monic characteristic polynomial of M by Hessenberg reduction and the
/// leading-minor recurrence — exact over the prime field.
pub fn char_poly(m: &MultiplicationMatrix) -> UPoly {
    let field = m.field();
    let d = m.dim();
    if d == 0 {
        return UPoly::from_raw(field, vec![1]);
    }
    let mut a: Vec<Vec<FieldElement>> = (0..d).map(|i| m.row(i).to_vec()).collect();
    // Similarity reduction to upper Hessenberg form.
    for col in 0..d.saturating_sub(2) {
        let Some(pivot) = (col + 1..d).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if pivot != col + 1 {
            a.swap(pivot, col + 1);
            for row in a.iter_mut() {
                row.swap(pivot, col + 1);
            }
        }
        let inv = a[col + 1][col].inv().unwrap();
        for r in col + 2..d {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col] * inv;
            for j in 0..d {
                let v = a[col + 1][j];
                a[r][j] -= f * v;
            }
            // Inverse column operation keeps the matrix similar.
            for row in a.iter_mut() {
                let v = row[r];
                row[col + 1] += f * v;
            }
        }
    }
    // p_m(y) = (y − a_mm)·p_{m−1} − Σ_i a_im·(∏ subdiagonals)·p_{i−1}.
    let y = UPoly::from_raw(field, vec![0, 1]);
    let mut p: Vec<UPoly> = vec![UPoly::from_raw(field, vec![1])];
    for mm in 0..d {
        let shift = &y - &UPoly::from_raw(field, vec![a[mm][mm].value()]);
        let mut next = shift.mul(&p[mm]);
        let mut prod = field.one();
        for i in (0..mm).rev() {
            prod = prod * a[i + 1][i];
            if prod.is_zero() {
                break;
            }
            let c = a[i][mm] * prod;
            if !c.is_zero() {
                next = &next - &p[i].scale(c);
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}
