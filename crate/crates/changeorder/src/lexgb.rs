//! From the Hermite form to the reduced LEX basis.
//!
//! With C sorted LEX-increasing, row i of the Hermite form H expands to
//! f = f_1·μ_1 + … + f_i·μ_i whose LEX leading term is y^(deg f_i)·μ_i —
//! the diagonal carries the leading data, so the candidate basis falls out
//! of H with no polynomial reduction at all. Minimal filtering then drops
//! the rows whose leading monomials are multiples of others', and a final
//! tail reduction produces the reduced basis.
//!
//! Shape position is visible directly in H: diagonal (h, 1, …, 1) with
//! every later row supported on column 1 and its own diagonal. In that case
//! the parametrization x_i = g_i(y) is the negated column-1 entry of the
//! x_i row.
//!
//! When t > n, a kernel shortcut avoids the full t×t Hermite computation:
//! permute C so (1, x_{n−1}, …, x_1) come first, kill the right block with
//! a left kernel basis K, and take the Hermite form of K times the left
//! block — exactly the n×n leading principal submatrix of the full
//! column-permuted Hermite form.

use crate::groebner::GroebnerBasis;
use crate::modbasis::{expand_on_c, ModuleBasis};
use crate::mvpoly::{Monomial, MonomialOrder, MvPoly};
use crate::polymat::PolyMatrix;
use crate::upoly::UPoly;
use crate::{Error, Result};

/// Result of the change of order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexOutput {
    pub lex_gb: GroebnerBasis,
    pub shape: Option<ShapeLexBasis>,
    pub used_kernel_shortcut: bool,
}

/// Shape-position parametrization: the variety is {(g_1(λ), …, g_{n−1}(λ),
/// λ) : h(λ) = 0}, with the lex basis {h, x_{n−1} − g_{n−1}, …, x_1 − g_1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeLexBasis {
    /// Monic univariate of degree D.
    pub h: UPoly,
    /// g[i] parametrizes x_{i+1}; deg g[i] < deg h.
    pub g: Vec<UPoly>,
}

impl ShapeLexBasis {
    /// The lex basis polynomials {h, x_i − g_i} in the polynomial ring.
    pub fn to_polys(&self, nvars: usize) -> Vec<MvPoly> {
        let field = self.h.field();
        let mut out = vec![MvPoly::from_upoly(&self.h, nvars)];
        for (v, g) in self.g.iter().enumerate() {
            let xi = MvPoly::from_monomial(field, Monomial::var(nvars, v));
            out.push(xi.sub(&MvPoly::from_upoly(g, nvars)));
        }
        out
    }
}

impl LexOutput {
    /// Serializes as a basis file, with the shape parametrization appended
    /// as a trailer block when present.
    pub fn to_text(&self, var_names: &[String]) -> String {
        let mut out = crate::groebner::write_gb_text(&self.lex_gb, var_names);
        if let Some(shape) = &self.shape {
            out.push_str("shape:\n");
            out.push_str(&format!("h = {};\n", shape.h.to_text()));
            for (v, g) in shape.g.iter().enumerate() {
                out.push_str(&format!("{} = {};\n", var_names[v], g.to_text()));
            }
        }
        out
    }
}

/// Expands the rows of a Hermite form over the LEX-increasing monomial list
/// `c` into the reduced LEX basis. When `lt_lex` is given (the known LEX
/// leading terms), only the rows realizing them are expanded; otherwise all
/// rows are expanded and minimally filtered.
pub fn read_off_lex(
    h_mat: &PolyMatrix,
    c: &[Monomial],
    lt_lex: Option<&[Monomial]>,
) -> LexOutput {
    assert_eq!(h_mat.rows(), c.len(), "Hermite form does not match C");
    let field = h_mat.field();
    let mut candidates: Vec<MvPoly> = Vec::with_capacity(c.len());
    for i in 0..h_mat.rows() {
        let f = expand_on_c(field, h_mat.row(i), c);
        debug_assert_eq!(
            f.leading_monomial(MonomialOrder::Lex),
            h_mat.get(i, i).degree().map(|d| c[i].mul_y(d as u32)),
            "row leading term must sit on the diagonal"
        );
        candidates.push(f);
    }
    if let Some(known) = lt_lex {
        candidates.retain(|f| {
            let lt = f.leading_monomial(MonomialOrder::Lex).unwrap();
            known.contains(&lt)
        });
    }
    // Distinctness of the diagonal leading terms y^(deg f_i)·μ_i is
    // structural (the μ_i are pairwise distinct), so filtering cannot hit a
    // duplicate.
    let lex_gb = minimal_filter(candidates)
        .expect("Hermite rows have pairwise distinct leading monomials");
    let shape = detect_shape(h_mat, c);
    LexOutput { lex_gb, shape, used_kernel_shortcut: false }
}

/// Keeps the candidates whose LEX leading monomials minimally generate the
/// leading-term ideal, then tail-reduces the survivors into the reduced
/// basis. Rejects duplicate leading monomials — the read-off construction
/// never produces them, so a duplicate means the input is not one of ours.
pub fn minimal_filter(candidates: Vec<MvPoly>) -> Result<GroebnerBasis> {
    assert!(!candidates.is_empty(), "minimal_filter needs at least one candidate");
    assert!(
        candidates.iter().all(|f| !f.is_zero()),
        "zero candidate polynomial"
    );
    let order = MonomialOrder::Lex;
    let mut tagged: Vec<(Monomial, MvPoly)> = candidates
        .into_iter()
        .map(|f| (f.leading_monomial(order).unwrap(), f))
        .collect();
    tagged.sort_by(|a, b| order.compare(&a.0, &b.0));
    for w in tagged.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicateLeadingMonomial {
                exponents: w[0].0.exps().to_vec(),
            });
        }
    }
    // Increasing scan: divisors precede multiples in any monomial order.
    let mut kept: Vec<MvPoly> = Vec::new();
    let mut kept_lts: Vec<Monomial> = Vec::new();
    for (lt, f) in tagged {
        if kept_lts.iter().any(|k| k.divides(&lt)) {
            continue;
        }
        kept_lts.push(lt);
        kept.push(f);
    }
    // Tail reduction against the other survivors.
    for i in 0..kept.len() {
        let others: Vec<MvPoly> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        kept[i] = crate::mvpoly::normal_form(&kept[i], &others, order).monic(order);
    }
    Ok(GroebnerBasis::from_polys(order, kept))
}

/// Extracts the shape parametrization from a reduced LEX basis of the
/// {h, x_i − g_i} form — the inverse of `ShapeLexBasis::to_polys`, used to
/// report the parametrization when the basis came from a direct engine.
pub fn shape_from_lex_gb(gb: &GroebnerBasis) -> Option<ShapeLexBasis> {
    if !crate::groebner::is_shape_position(gb) {
        return None;
    }
    let n = gb.nvars();
    let mut h = None;
    let mut g: Vec<Option<UPoly>> = vec![None; n - 1];
    for f in gb.polys() {
        if f.is_univariate_in_y() {
            h = Some(f.to_upoly().ok()?);
            continue;
        }
        let lt = f.leading_monomial(MonomialOrder::Lex)?;
        let v = (0..n - 1).find(|&v| lt == Monomial::var(n, v))?;
        let tail = f.sub(&MvPoly::from_monomial(gb.field(), lt));
        g[v] = Some(tail.neg().to_upoly().ok()?);
    }
    Some(ShapeLexBasis { h: h?, g: g.into_iter().collect::<Option<Vec<_>>>()? })
}

/// Inspects a Hermite form for the shape-position pattern: diagonal
/// (h, 1, …, 1) and every row past the first supported only on column 1 and
/// its own diagonal. Returns the parametrization when the pattern holds and
/// `c` contains 1 and every x-variable.
pub fn detect_shape(h_mat: &PolyMatrix, c: &[Monomial]) -> Option<ShapeLexBasis> {
    let t = h_mat.rows();
    if t == 0 || c.len() != t {
        return None;
    }
    let n = c[0].nvars();
    if !c[0].is_one() {
        return None;
    }
    let h = h_mat.get(0, 0);
    if !h.is_monic() || h.degree() == Some(0) {
        return None;
    }
    for i in 1..t {
        if !h_mat.get(i, i).is_one() {
            return None;
        }
        for j in 1..i {
            if !h_mat.get(i, j).is_zero() {
                return None;
            }
        }
    }
    let mut g: Vec<UPoly> = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n - 1 {
        let var = Monomial::var(n, v);
        let row = c.iter().position(|m| *m == var)?;
        let entry = h_mat.get(row, 0);
        debug_assert!(
            entry.degree().map_or(true, |d| d < h.degree().unwrap()),
            "Hermite dominance bounds the parametrization degree"
        );
        g.push(entry.neg());
    }
    Some(ShapeLexBasis { h: h.clone(), g })
}

/// The column order for the kernel shortcut: (1, x_{n−1}, …, x_1) first —
/// which is itself LEX-increasing — then the remaining members of C in
/// their original relative order. Fails when C misses 1 or a variable.
pub fn shortcut_column_order(c: &[Monomial]) -> Result<Vec<usize>> {
    let n = c.first().map(|m| m.nvars()).unwrap_or(0);
    if n == 0 {
        return Err(Error::Structure("empty monomial list".into()));
    }
    let mut head: Vec<usize> = Vec::with_capacity(n);
    let mut want: Vec<Monomial> = vec![Monomial::one(n)];
    for v in (0..n - 1).rev() {
        want.push(Monomial::var(n, v));
    }
    for m in &want {
        let pos = c.iter().position(|x| x == m).ok_or_else(|| {
            Error::Structure(format!(
                "kernel shortcut needs 1 and every variable in C; missing {m}"
            ))
        })?;
        head.push(pos);
    }
    let mut order = head.clone();
    for i in 0..c.len() {
        if !head.contains(&i) {
            order.push(i);
        }
    }
    Ok(order)
}

/// The monomials (1, x_{n−1}, …, x_1) that the shortcut's output columns
/// stand for.
pub fn shortcut_c_monomials(nvars: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    for v in (0..nvars - 1).rev() {
        out.push(Monomial::var(nvars, v));
    }
    out
}

/// Computes the n×n leading principal submatrix of the Hermite form of the
/// column-permuted P without triangularizing all t columns: a left kernel
/// basis K of the right t×(t−n) block satisfies K·P_right = 0, so the
/// Hermite form of K·P_left is the sought corner. Degenerate when t = n
/// (empty right block): the full Hermite form.
pub fn kernel_shortcut(p: &ModuleBasis, nvars: usize) -> Result<PolyMatrix> {
    let t = p.rank();
    let order = shortcut_column_order(p.c_monomials())?;
    let permuted = p.matrix().select_columns(&order);
    if t == nvars {
        return Ok(permuted.hermite_normal_form()?.h);
    }
    let left = permuted.select_columns(&(0..nvars).collect::<Vec<_>>());
    let right = permuted.select_columns(&(nvars..t).collect::<Vec<_>>());
    let k = right.left_kernel_basis()?;
    let compressed = k.mat_mul(&left);
    Ok(compressed.hermite_normal_form()?.h)
}

/// Runs the shortcut and reads the lex data off its n×n output. Complete
/// exactly in the shape case; otherwise the n expanded rows need not
/// exhaust the basis, so the output is advisory and `shape` decides.
pub fn read_off_from_kernel_shortcut(p: &ModuleBasis, nvars: usize) -> Result<LexOutput> {
    let corner = kernel_shortcut(p, nvars)?;
    let c = shortcut_c_monomials(nvars);
    let mut out = read_off_lex(&corner, &c, None);
    out.used_kernel_shortcut = true;
    Ok(out)
}
