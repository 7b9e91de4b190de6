//! Matrices over K[y]: products, determinants, Hermite normal form with its
//! unimodular transform, and left kernel bases.
//!
//! The Hermite normal form used throughout is lower triangular with monic
//! diagonal entries, and in every column the diagonal entry strictly
//! dominates the degree of each off-diagonal entry. For a nonsingular square
//! matrix it is the unique basis of that shape for the row space, which is
//! what makes golden-value tests bit-exact.
//!
//! The elimination is the classical cubic one: columns are processed left to
//! right, the pivot is chosen among candidate rows by minimal degree (ties
//! to the lowest row index), and entries below the pivot are cleared with
//! 2x2 unimodular transforms built from an extended gcd. A final pass makes
//! the diagonal monic and reduces each off-diagonal entry modulo its
//! column's diagonal. Asymptotically faster HNF algorithms exist; they are
//! deliberately out of scope.

use crate::field::PrimeField;
use crate::upoly::UPoly;
use crate::{Error, Result};

/// A dense row-major matrix over K[y].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    entries: Vec<UPoly>,
}

impl PolyMatrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            field,
            rows,
            cols,
            entries: vec![UPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, UPoly::one(field));
        }
        m
    }

    /// Builds from a row-major closure.
    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> UPoly,
    ) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.field().modulus(), field.modulus(), "entry from a different field");
                entries.push(e);
            }
        }
        PolyMatrix { field, rows, cols, entries }
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<UPoly>>) -> PolyMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            for e in row {
                assert_eq!(e.field().modulus(), field.modulus(), "entry from a different field");
                entries.push(e);
            }
        }
        PolyMatrix { field, rows: r, cols: c, entries }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &UPoly {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: UPoly) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        assert_eq!(v.field().modulus(), self.field.modulus(), "entry from a different field");
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[UPoly] {
        assert!(i < self.rows, "row out of bounds");
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// New matrix keeping the listed columns, in the listed order.
    pub fn select_columns(&self, idx: &[usize]) -> PolyMatrix {
        assert!(idx.iter().all(|&j| j < self.cols), "column index out of bounds");
        PolyMatrix::from_fn(self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    /// The leading principal `n x n` submatrix.
    pub fn leading_principal(&self, n: usize) -> PolyMatrix {
        assert!(n <= self.rows && n <= self.cols, "submatrix larger than matrix");
        PolyMatrix::from_fn(self.field, n, n, |i, j| self.get(i, j).clone())
    }

    /// Largest entry degree in column j, or None for a zero column.
    pub fn column_degree(&self, j: usize) -> Option<usize> {
        (0..self.rows).filter_map(|i| self.get(i, j).degree()).max()
    }

    /// Matrix product. Panics on inner-dimension or field mismatch — those
    /// are programming errors, not data conditions.
    pub fn mat_mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions disagree");
        assert_eq!(self.field.modulus(), other.field.modulus(), "matrices over different fields");
        PolyMatrix::from_fn(self.field, self.rows, other.cols, |i, j| {
            let mut acc = UPoly::zero(self.field);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination: every
    /// intermediate quantity is a minor of the input, and the divisions are
    /// exact in K[y]. Independent of the Hermite code so the two can be
    /// cross-checked.
    pub fn determinant(&self) -> Result<UPoly> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(UPoly::one(self.field));
        }
        let mut m: Vec<Vec<UPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = UPoly::one(self.field);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(UPoly::zero(self.field)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.div_exact(&prev)?;
                }
                m[i][k] = UPoly::zero(self.field);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }

    /// Hermite normal form of a square nonsingular matrix, together with the
    /// unimodular transform: `u * self = h`. Rectangular or singular inputs
    /// are rejected — the pipeline never produces them legitimately.
    pub fn hermite_normal_form(&self) -> Result<HermiteResult> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut e = Elimination::new(self);
        // Columns right to left, pivots settling on the diagonal from the
        // bottom up: rows above each pivot are cleared, so the result is
        // lower triangular. Rows below a settled pivot are never touched
        // again, which keeps their zero tails intact.
        for col in (0..n).rev() {
            if !e.eliminate_column(col, 0, col + 1, col) {
                return Err(Error::SingularMatrix);
            }
        }
        e.normalize_square();
        Ok(HermiteResult {
            h: e.target(),
            u: e.transform(),
            rank: n,
        })
    }

    /// A left kernel basis of a tall full-column-rank matrix: returns K of
    /// shape (r−c) x r with `K * self = 0`, rows spanning the whole left
    /// kernel. The rows come from the unimodular transform of the same
    /// triangularization engine as the Hermite form: rows of U facing zero
    /// rows of the triangularization are exactly the kernel.
    pub fn left_kernel_basis(&self) -> Result<PolyMatrix> {
        let (r, c) = (self.rows, self.cols);
        if r <= c {
            return Err(Error::NoKernel { rows: r, cols: c });
        }
        let mut e = Elimination::new(self);
        let mut pivot_row = 0;
        for col in 0..c {
            if e.eliminate_column(col, pivot_row, r, pivot_row) {
                pivot_row += 1;
            }
        }
        if pivot_row < c {
            return Err(Error::RankDeficient);
        }
        let u = e.transform();
        Ok(PolyMatrix::from_fn(self.field, r - c, r, |i, j| {
            u.get(c + i, j).clone()
        }))
    }

    /// Residue of a row vector after back-substitution against a lower
    /// triangular matrix with nonzero diagonal (e.g. a Hermite form): the
    /// vector lies in the row space iff the residue is all zero.
    pub fn reduce_row_triangular(&self, row: &[UPoly]) -> Vec<UPoly> {
        assert!(self.is_square(), "triangular reduction needs a square matrix");
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let n = self.cols;
        let mut v: Vec<UPoly> = row.to_vec();
        for j in (0..n).rev() {
            if v[j].is_zero() {
                continue;
            }
            let diag = self.get(j, j);
            debug_assert!(!diag.is_zero(), "zero diagonal in triangular reduction");
            let (q, _r) = v[j].divrem(diag).expect("nonzero diagonal");
            if q.is_zero() {
                continue;
            }
            for k in 0..=j {
                v[k] = v[k].sub(&q.mul(self.get(j, k)));
            }
        }
        v
    }

    /// Matrix text form: first line `rows cols modulus`, then one entry per
    /// line, row-major.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.field.modulus());
        for e in &self.entries {
            out.push_str(&e.to_text());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<PolyMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (lno, header) = lines
            .next()
            .ok_or(Error::Parse { line: 0, msg: "empty matrix file".into() })?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                line: lno,
                msg: format!("expected `rows cols modulus`, found {header:?}"),
            });
        }
        let parse_int = |s: &str| -> Result<u64> {
            s.parse().map_err(|_| Error::Parse {
                line: lno,
                msg: format!("bad integer {s:?} in header"),
            })
        };
        let rows = parse_int(parts[0])? as usize;
        let cols = parse_int(parts[1])? as usize;
        let field = PrimeField::new(parse_int(parts[2])?)?;
        let mut entries = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let (lno, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("expected {} entries, file ended early", rows * cols),
            })?;
            let p = UPoly::parse(field, line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: lno, msg },
                other => other,
            })?;
            entries.push(p);
        }
        if let Some((lno, extra)) = lines.next() {
            return Err(Error::Parse {
                line: lno,
                msg: format!("unexpected trailing content {extra:?}"),
            });
        }
        Ok(PolyMatrix { field, rows, cols, entries })
    }
}

/// Result of [`PolyMatrix::hermite_normal_form`]: `u * input = h`, with
/// `det(u)` a nonzero constant and `rank` the (full) row count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteResult {
    pub h: PolyMatrix,
    pub u: PolyMatrix,
    pub rank: usize,
}

/// Row-elimination state shared by the Hermite form and the kernel
/// computation: every operation applied to the working matrix is mirrored on
/// an identity-seeded transform, so `transform * input = target` throughout.
struct Elimination {
    field: PrimeField,
    t: Vec<Vec<UPoly>>,
    u: Vec<Vec<UPoly>>,
}

impl Elimination {
    fn new(a: &PolyMatrix) -> Elimination {
        let field = a.field();
        let t: Vec<Vec<UPoly>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
        let n = a.rows();
        let mut u: Vec<Vec<UPoly>> = vec![vec![UPoly::zero(field); n]; n];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = UPoly::one(field);
        }
        Elimination { field, t, u }
    }

    /// Clears column `col` within the active row range `lo..hi`, settling
    /// the pivot at row `dest` (which must lie in the range) and zeroing the
    /// column in every other active row. Rows outside the range are left
    /// untouched. Returns false when the column has no nonzero entry in the
    /// range (no pivot available).
    fn eliminate_column(&mut self, col: usize, lo: usize, hi: usize, dest: usize) -> bool {
        debug_assert!(lo <= dest && dest < hi && hi <= self.t.len());
        // Pivot choice: minimal degree, ties to the lowest row index. Fully
        // deterministic so outputs are reproducible.
        let mut pivot: Option<(usize, usize)> = None; // (degree, row)
        for r in lo..hi {
            if let Some(d) = self.t[r][col].degree() {
                match pivot {
                    None => pivot = Some((d, r)),
                    Some((bd, _)) if d < bd => pivot = Some((d, r)),
                    _ => {}
                }
            }
        }
        let Some((_, prow)) = pivot else {
            return false;
        };
        if prow != dest {
            self.t.swap(prow, dest);
            self.u.swap(prow, dest);
        }
        for r in lo..hi {
            if r == dest || self.t[r][col].is_zero() {
                continue;
            }
            let f = self.t[dest][col].clone();
            let g = self.t[r][col].clone();
            let (d, s, v) = f.gcd_ext(&g).expect("pivot entry is nonzero");
            let fq = f.div_exact(&d).expect("gcd divides");
            let gq = g.div_exact(&d).expect("gcd divides");
            // (row_d, row_r) <- (s*row_d + v*row_r, -gq*row_d + fq*row_r):
            // determinant s*fq + v*gq = 1, and the new (r, col) entry is
            // -gq*f + fq*g = 0.
            self.combine(dest, r, &s, &v, &gq.neg(), &fq);
            debug_assert!(self.t[r][col].is_zero());
        }
        true
    }

    /// (row_a, row_b) <- (p*row_a + q*row_b, r*row_a + s*row_b), applied to
    /// both the working matrix and the transform.
    fn combine(&mut self, a: usize, b: usize, p: &UPoly, q: &UPoly, r: &UPoly, s: &UPoly) {
        for grid in [&mut self.t, &mut self.u] {
            let cols = grid[a].len();
            for j in 0..cols {
                let ta = grid[a][j].clone();
                let tb = grid[b][j].clone();
                grid[a][j] = p.mul(&ta).add(&q.mul(&tb));
                grid[b][j] = r.mul(&ta).add(&s.mul(&tb));
            }
        }
    }

    fn row_sub_mul(&mut self, i: usize, j: usize, q: &UPoly) {
        for grid in [&mut self.t, &mut self.u] {
            let cols = grid[i].len();
            for k in 0..cols {
                let sub = q.mul(&grid[j][k]);
                grid[i][k] = grid[i][k].sub(&sub);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: crate::field::FieldElement) {
        for grid in [&mut self.t, &mut self.u] {
            for e in grid[i].iter_mut() {
                *e = e.scale(c);
            }
        }
    }

    /// Monic diagonal, then off-diagonal reduction for a full-rank square
    /// triangularization.
    fn normalize_square(&mut self) {
        let n = self.t.len();
        for i in 0..n {
            let lc = self.t[i][i].leading_coeff().expect("nonsingular diagonal");
            if !lc.is_one() {
                self.scale_row(i, lc.inv().expect("nonzero leading coefficient"));
            }
        }
        for i in 1..n {
            // Right-to-left so already-reduced entries stay reduced: row j
            // only touches columns <= j.
            for j in (0..i).rev() {
                let (q, _) = self.t[i][j].divrem(&self.t[j][j]).expect("monic diagonal");
                if !q.is_zero() {
                    self.row_sub_mul(i, j, &q);
                }
            }
        }
    }

    fn target(&self) -> PolyMatrix {
        PolyMatrix::from_rows(self.field, self.t.clone())
    }

    fn transform(&self) -> PolyMatrix {
        PolyMatrix::from_rows(self.field, self.u.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f29() -> PrimeField {
        PrimeField::new(29).unwrap()
    }

    fn up(coeffs: &[i64]) -> UPoly {
        UPoly::from_coeffs(f29(), coeffs)
    }

    /// Deterministic small PRNG for seeded matrices.
    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            self.0 >> 33
        }
        fn poly(&mut self, max_deg: usize) -> UPoly {
            let len = (self.next() as usize) % (max_deg + 2); // may be zero
            let coeffs: Vec<i64> = (0..len).map(|_| self.next() as i64).collect();
            UPoly::from_coeffs(f29(), &coeffs)
        }
        fn matrix(&mut self, n: usize, max_deg: usize) -> PolyMatrix {
            PolyMatrix::from_fn(f29(), n, n, |_, _| self.poly(max_deg))
        }
    }

    #[test]
    fn mat_mul_identity_and_1x1() {
        let mut rng = Rng(1);
        let a = rng.matrix(3, 4);
        let id = PolyMatrix::identity(f29(), 3);
        assert_eq!(a.mat_mul(&id), a);
        assert_eq!(id.mat_mul(&a), a);
        let p = up(&[1, 2]);
        let q = up(&[3, 0, 5]);
        let m1 = PolyMatrix::from_rows(f29(), vec![vec![p.clone()]]);
        let m2 = PolyMatrix::from_rows(f29(), vec![vec![q.clone()]]);
        assert_eq!(m1.mat_mul(&m2).get(0, 0), &p.mul(&q));
    }

    #[test]
    fn mat_mul_matches_dot_product_oracle() {
        let mut rng = Rng(2);
        let a = rng.matrix(3, 3);
        let b = rng.matrix(3, 3);
        let c = a.mat_mul(&b);
        for i in 0..3 {
            for j in 0..3 {
                let mut dot = UPoly::zero(f29());
                for k in 0..3 {
                    dot = dot.add(&a.get(i, k).mul(b.get(k, j)));
                }
                assert_eq!(c.get(i, j), &dot);
            }
        }
    }

    #[test]
    #[should_panic(expected = "inner dimensions")]
    fn mat_mul_dimension_mismatch_panics() {
        let a = PolyMatrix::zero(f29(), 2, 3);
        let b = PolyMatrix::zero(f29(), 2, 3);
        let _ = a.mat_mul(&b);
    }

    /// Recursive expansion by minors: the independent determinant oracle.
    fn det_minors(m: &PolyMatrix) -> UPoly {
        let n = m.rows();
        if n == 0 {
            return UPoly::one(m.field());
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = UPoly::zero(m.field());
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor = PolyMatrix::from_fn(m.field(), n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j).mul(&det_minors(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    #[test]
    fn determinant_trivia() {
        assert_eq!(
            PolyMatrix::identity(f29(), 4).determinant().unwrap(),
            UPoly::one(f29())
        );
        // det(diag(y^4, y^2, y^2)) = y^8.
        let mut d = PolyMatrix::zero(f29(), 3, 3);
        d.set(0, 0, UPoly::monomial(f29(), 1, 4));
        d.set(1, 1, UPoly::monomial(f29(), 1, 2));
        d.set(2, 2, UPoly::monomial(f29(), 1, 2));
        assert_eq!(d.determinant().unwrap(), UPoly::monomial(f29(), 1, 8));
        assert!(PolyMatrix::zero(f29(), 2, 2).determinant().unwrap().is_zero());
        assert!(matches!(
            PolyMatrix::zero(f29(), 2, 3).determinant(),
            Err(Error::NonSquare { .. })
        ));
    }

    #[test]
    fn determinant_matches_minor_expansion() {
        let mut rng = Rng(3);
        for n in 1..=4 {
            for _ in 0..10 {
                let m = rng.matrix(n, 3);
                assert_eq!(m.determinant().unwrap(), det_minors(&m));
            }
        }
    }

    #[test]
    fn hermite_of_identity() {
        let id = PolyMatrix::identity(f29(), 3);
        let res = id.hermite_normal_form().unwrap();
        assert_eq!(res.h, id);
        assert_eq!(res.u, id);
        assert_eq!(res.rank, 3);
    }

    #[test]
    fn hermite_rejects_singular_and_rectangular() {
        let mut rng = Rng(4);
        let a = rng.matrix(3, 3);
        // Duplicate a row: singular.
        let mut rows: Vec<Vec<UPoly>> = (0..3).map(|i| a.row(i).to_vec()).collect();
        rows[2] = rows[1].clone();
        let sing = PolyMatrix::from_rows(f29(), rows);
        assert_eq!(sing.hermite_normal_form().unwrap_err(), Error::SingularMatrix);
        assert!(matches!(
            PolyMatrix::zero(f29(), 2, 3).hermite_normal_form(),
            Err(Error::NonSquare { .. })
        ));
    }

    fn is_hermite_shape(h: &PolyMatrix) -> bool {
        let n = h.rows();
        for i in 0..n {
            for j in 0..n {
                let e = h.get(i, j);
                if j > i && !e.is_zero() {
                    return false;
                }
                if i == j && !e.is_monic() {
                    return false;
                }
                if j < i && !e.is_zero() {
                    let dd = h.get(j, j).degree().unwrap();
                    if e.degree().unwrap() >= dd {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Left-multiplies by a seeded random unimodular matrix (elementary row
    /// operations: swaps, nonzero scalings, polynomial row additions).
    fn scramble(a: &PolyMatrix, rng: &mut Rng) -> PolyMatrix {
        let n = a.rows();
        let mut rows: Vec<Vec<UPoly>> = (0..n).map(|i| a.row(i).to_vec()).collect();
        for _ in 0..12 {
            match rng.next() % 3 {
                0 => {
                    let i = (rng.next() as usize) % n;
                    let j = (rng.next() as usize) % n;
                    rows.swap(i, j);
                }
                1 => {
                    let i = (rng.next() as usize) % n;
                    let c = f29().element(1 + (rng.next() % 28) as i64);
                    for e in rows[i].iter_mut() {
                        *e = e.scale(c);
                    }
                }
                _ => {
                    let i = (rng.next() as usize) % n;
                    let mut j = (rng.next() as usize) % n;
                    if i == j {
                        j = (j + 1) % n;
                    }
                    let q = rng.poly(2);
                    for k in 0..n {
                        let add = q.mul(&rows[j][k]);
                        rows[i][k] = rows[i][k].add(&add);
                    }
                }
            }
        }
        PolyMatrix::from_rows(f29(), rows)
    }

    #[test]
    fn hermite_invariants_on_seeded_matrices() {
        let mut rng = Rng(5);
        let mut done = 0;
        while done < 10 {
            let a = rng.matrix(4, 3);
            let res = match a.hermite_normal_form() {
                Ok(r) => r,
                Err(_) => continue, // singular sample; try another
            };
            done += 1;
            assert!(is_hermite_shape(&res.h));
            // Transform validity.
            assert_eq!(res.u.mat_mul(&a), res.h);
            let det_u = res.u.determinant().unwrap();
            assert_eq!(det_u.degree(), Some(0), "det(u) must be a nonzero constant");
            // Degree conservation: deg det = sum of diagonal degrees.
            let diag_sum: usize = (0..4).map(|i| res.h.get(i, i).degree().unwrap()).sum();
            assert_eq!(a.determinant().unwrap().degree(), Some(diag_sum));
            // Idempotence.
            let again = res.h.hermite_normal_form().unwrap();
            assert_eq!(again.h, res.h);
            // Uniqueness under unimodular scrambling.
            let scrambled = scramble(&a, &mut rng);
            assert_eq!(scrambled.hermite_normal_form().unwrap().h, res.h);
            // Row-space preservation: every row of a reduces to zero.
            for i in 0..4 {
                let residue = res.h.reduce_row_triangular(a.row(i));
                assert!(residue.iter().all(|p| p.is_zero()));
            }
        }
    }

    #[test]
    fn kernel_of_padded_identity() {
        // a = [0; I_c]: kernel picks out the leading zero rows.
        let (r, c) = (5, 2);
        let mut a = PolyMatrix::zero(f29(), r, c);
        for j in 0..c {
            a.set(r - c + j, j, UPoly::one(f29()));
        }
        let k = a.left_kernel_basis().unwrap();
        assert_eq!((k.rows(), k.cols()), (r - c, r));
        let prod = k.mat_mul(&a);
        assert!((0..prod.rows()).all(|i| prod.row(i).iter().all(|p| p.is_zero())));
    }

    #[test]
    fn kernel_of_y_column() {
        // a = (y, y^2)^T: kernel spanned by (y, -1).
        let a = PolyMatrix::from_rows(
            f29(),
            vec![vec![up(&[0, 1])], vec![up(&[0, 0, 1])]],
        );
        let k = a.left_kernel_basis().unwrap();
        assert_eq!((k.rows(), k.cols()), (1, 2));
        let prod = k.mat_mul(&a);
        assert!(prod.get(0, 0).is_zero());
        // Minimal up to a unit: degrees (1, 0).
        assert_eq!(k.get(0, 0).degree(), Some(1));
        assert_eq!(k.get(0, 1).degree(), Some(0));
    }

    #[test]
    fn kernel_errors() {
        assert!(matches!(
            PolyMatrix::zero(f29(), 2, 3).left_kernel_basis(),
            Err(Error::NoKernel { .. })
        ));
        // Rank-deficient columns: second column = y * first.
        let a = PolyMatrix::from_rows(
            f29(),
            vec![
                vec![up(&[1]), up(&[0, 1])],
                vec![up(&[0, 1]), up(&[0, 0, 1])],
                vec![up(&[1, 1]), up(&[0, 1, 1])],
            ],
        );
        assert_eq!(a.left_kernel_basis().unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn kernel_spans_whole_left_kernel_on_seeded_tall_matrices() {
        let mut rng = Rng(6);
        for _ in 0..10 {
            let a = PolyMatrix::from_fn(f29(), 5, 3, |_, _| rng.poly(2));
            let k = match a.left_kernel_basis() {
                Ok(k) => k,
                Err(_) => continue,
            };
            let prod = k.mat_mul(&a);
            assert!((0..prod.rows()).all(|i| prod.row(i).iter().all(|p| p.is_zero())));
        }
    }

    #[test]
    fn text_round_trip() {
        let mut rng = Rng(7);
        let a = rng.matrix(3, 4);
        let text = a.to_text();
        assert_eq!(PolyMatrix::parse(&text).unwrap(), a);
        assert!(PolyMatrix::parse("").is_err());
        assert!(PolyMatrix::parse("2 2").is_err());
        assert!(PolyMatrix::parse("1 1 29\n").is_err()); // missing entry
    }
}
