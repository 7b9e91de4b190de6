//! The K[y]-module sitting between the ideal and its lex basis: polynomials
//! of the ideal supported on monomials y^k·μ with μ in the y-free list C.
//! This module is free of rank t = |C|, and a basis matrix P over K[y] is
//! cheap to construct from a Gröbner basis — one row per μ_i, shaped
//! diag(y^{e_1},…,y^{e_t}) + R with column j of R of degree below e_j.
//!
//! Two constructions are provided. When the leading-term ideal is stable
//! under the (x_i/y)-shifts, the rows are literally the Gröbner basis
//! elements whose leading term is divisible by y — no arithmetic at all.
//! In general, row i is y^{e_i}·μ_i minus its normal form, one reduction
//! per row.

use crate::field::PrimeField;
use crate::groebner::{check_stability, GroebnerBasis, StaircaseProfile};
use crate::mvpoly::{Monomial, MvPoly};
use crate::polymat::PolyMatrix;
use crate::upoly::UPoly;
use crate::{Error, Result};

/// How a [`ModuleBasis`] was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Read directly off a stable Gröbner basis.
    FromStableGB,
    /// Built from border normal forms y^{e_i}μ_i − NF(y^{e_i}μ_i).
    FromBorderNF,
}

/// A basis of the module on C: row i of `matrix` holds the coordinates
/// (over K[y]) of the i-th basis polynomial on the monomials of C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasis {
    c_monomials: Vec<Monomial>,
    matrix: PolyMatrix,
    provenance: Provenance,
}

impl ModuleBasis {
    pub fn c_monomials(&self) -> &[Monomial] {
        &self.c_monomials
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// The module rank t = |C|.
    pub fn rank(&self) -> usize {
        self.c_monomials.len()
    }

    /// True when C contains 1 and every x-variable — the hypothesis under
    /// which the lex basis can be read off the Hermite form of this matrix.
    /// When it fails, downstream must take the filtering fallback.
    pub fn readoff_certified(&self) -> bool {
        let n = self
            .c_monomials
            .first()
            .map(|m| m.nvars())
            .unwrap_or(0);
        if n == 0 {
            return false;
        }
        self.c_monomials.contains(&Monomial::one(n))
            && (0..n - 1).all(|v| self.c_monomials.contains(&Monomial::var(n, v)))
    }

    /// The i-th basis polynomial, expanded back to the polynomial ring.
    pub fn row_poly(&self, i: usize) -> MvPoly {
        expand_on_c(self.matrix.field(), self.matrix.row(i), &self.c_monomials)
    }

    /// Serializes as a `C:` line naming the module's monomials followed by
    /// the matrix text format.
    pub fn to_text(&self, var_names: &[String]) -> String {
        let n = var_names.len();
        let order = crate::mvpoly::MonomialOrder::Lex;
        let mut out = String::from("C: ");
        let names: Vec<String> = self
            .c_monomials
            .iter()
            .map(|m| {
                let p = MvPoly::from_monomial(self.matrix.field(), m.clone());
                assert_eq!(m.nvars(), n, "variable count mismatch");
                crate::mvpoly::format_poly(&p, var_names, order)
            })
            .collect();
        out.push_str(&names.join(", "));
        out.push('\n');
        out.push_str(&self.matrix.to_text());
        out
    }

    /// Parses the `to_text` format. `var_names` supplies the monomial
    /// alphabet (the matrix header supplies the field).
    pub fn parse(text: &str, var_names: &[String]) -> Result<ModuleBasis> {
        let mut lines = text.splitn(2, '\n');
        let header = lines.next().unwrap_or("");
        let rest = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "module basis file ended after the C line".into(),
        })?;
        let c_line = header.trim().strip_prefix("C:").ok_or(Error::Parse {
            line: 1,
            msg: "expected a `C:` line listing the module monomials".into(),
        })?;
        let matrix = PolyMatrix::parse(rest)?;
        let field = matrix.field();
        let mut c_monomials = Vec::new();
        for part in c_line.split(',') {
            let p = crate::mvpoly::parse_poly(field, var_names, part.trim())?;
            let m = p
                .support()
                .next()
                .cloned()
                .filter(|_| p.num_terms() == 1)
                .ok_or(Error::Parse {
                    line: 1,
                    msg: format!("C entry {:?} is not a single monomial", part.trim()),
                })?;
            c_monomials.push(m);
        }
        if matrix.rows() != c_monomials.len() || matrix.cols() != c_monomials.len() {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "matrix is {}x{} but C lists {} monomials",
                    matrix.rows(),
                    matrix.cols(),
                    c_monomials.len()
                ),
            });
        }
        Ok(ModuleBasis { c_monomials, matrix, provenance: Provenance::FromBorderNF })
    }
}

/// Coordinates of `f` on the y-free monomial list C: the vector (f_1..f_t)
/// of univariate polynomials with f = Σ f_j(y)·μ_j. Fails with the
/// offending monomial when some term of `f` is not a y-power times a member
/// of C.
pub fn module_vector(f: &MvPoly, c: &[Monomial]) -> Result<Vec<UPoly>> {
    let field = f.field();
    let mut raw: Vec<Vec<u64>> = vec![Vec::new(); c.len()];
    for (m, coeff) in f.terms() {
        let (x_part, k) = m.strip_y();
        let j = c
            .iter()
            .position(|mu| *mu == x_part)
            .ok_or_else(|| Error::NotInModule { exponents: m.exps().to_vec() })?;
        let k = k as usize;
        if raw[j].len() <= k {
            raw[j].resize(k + 1, 0);
        }
        raw[j][k] = coeff.value();
    }
    Ok(raw.into_iter().map(|v| UPoly::from_raw(field, v)).collect())
}

/// Inverse of [`module_vector`]: Σ coeffs[j](y)·c[j].
pub fn expand_on_c(field: PrimeField, coeffs: &[UPoly], c: &[Monomial]) -> MvPoly {
    assert_eq!(coeffs.len(), c.len(), "coordinate/monomial count mismatch");
    let nvars = c.first().map(|m| m.nvars()).expect("C must be nonempty");
    let mut terms: Vec<(Monomial, i64)> = Vec::new();
    for (f, mu) in coeffs.iter().zip(c) {
        for k in 0..=f.degree().unwrap_or(0) {
            let v = f.coeff(k).value();
            if v != 0 {
                terms.push((mu.mul_y(k as u32), v as i64));
            }
        }
    }
    MvPoly::from_terms(field, nvars, &terms)
}

/// Reads the module basis directly off a stable Gröbner basis: the s
/// elements whose leading term is divisible by y are exactly the basis
/// polynomials, one per border exit y^{e_i}·μ_i.
pub fn basis_from_stable_gb(gb: &GroebnerBasis, prof: &StaircaseProfile) -> Result<ModuleBasis> {
    if !check_stability(gb).is_stable() {
        return Err(Error::Structure(
            "leading-term ideal is not shift-stable; use the border construction".into(),
        ));
    }
    let c = prof.c_monomials();
    let t = c.len();
    let mut rows: Vec<Option<Vec<UPoly>>> = vec![None; t];
    let mut s = 0usize;
    for p in gb.polys() {
        let lt = p.leading_monomial(gb.order()).unwrap();
        if lt.y_exponent() == 0 {
            continue;
        }
        s += 1;
        let (x_part, k) = lt.strip_y();
        let i = c
            .iter()
            .position(|mu| *mu == x_part)
            .filter(|&i| prof.exponents()[i] == k)
            .ok_or_else(|| {
                Error::Structure(format!(
                    "leading term {lt} is divisible by y but is not a border exit y^e_i·mu_i"
                ))
            })?;
        let vec = module_vector(p, c).map_err(|e| {
            Error::Structure(format!(
                "stable-basis element escapes the module span: {e}"
            ))
        })?;
        if rows[i].replace(vec).is_some() {
            return Err(Error::Structure(format!(
                "two basis elements share the border exit for {}",
                c[i]
            )));
        }
    }
    if s != t {
        return Err(Error::Structure(format!(
            "{s} basis elements have y-divisible leading terms but C has {t} monomials"
        )));
    }
    let rows: Vec<Vec<UPoly>> = rows.into_iter().map(|r| r.unwrap()).collect();
    let matrix = PolyMatrix::from_rows(gb.field(), rows);
    debug_assert!(degree_profile_holds(&matrix, prof.exponents()));
    Ok(ModuleBasis {
        c_monomials: c.to_vec(),
        matrix,
        provenance: Provenance::FromStableGB,
    })
}

/// General construction via border normal forms: row i encodes
/// y^{e_i}·μ_i − NF(y^{e_i}·μ_i), which lies in the ideal by construction
/// and in the module span because normal forms live on the staircase.
/// `prof` must be the staircase of `gb`.
pub fn basis_from_border(gb: &GroebnerBasis, prof: &StaircaseProfile) -> Result<ModuleBasis> {
    let c = prof.c_monomials();
    let field = gb.field();
    let mut rows: Vec<Vec<UPoly>> = Vec::with_capacity(c.len());
    for (mu, &e) in c.iter().zip(prof.exponents()) {
        let exit = MvPoly::from_monomial(field, mu.mul_y(e));
        let nf = gb.normal_form(&exit);
        let row_poly = exit.sub(&nf);
        rows.push(module_vector(&row_poly, c)?);
    }
    let matrix = PolyMatrix::from_rows(field, rows);
    debug_assert!(degree_profile_holds(&matrix, prof.exponents()));
    Ok(ModuleBasis {
        c_monomials: c.to_vec(),
        matrix,
        provenance: Provenance::FromBorderNF,
    })
}

/// diag(y^{e_i}) + R with column j of R of degree < e_j.
fn degree_profile_holds(m: &PolyMatrix, exponents: &[u32]) -> bool {
    let t = m.rows();
    for i in 0..t {
        for j in 0..t {
            let e = m.get(i, j);
            let bound = exponents[j] as usize;
            match e.degree() {
                None => {
                    if i == j {
                        return false;
                    }
                }
                Some(d) => {
                    if i == j {
                        if d != bound || !e.is_monic() {
                            return false;
                        }
                    } else if d >= bound {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Verdict of the determinant-based rank check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankCertificate {
    /// Nonsingular with deg det = D, the quotient dimension.
    FullRank(usize),
    Deficient,
}

/// Certifies that the basis matrix is nonsingular and reports the degree of
/// its determinant (which equals the quotient dimension D).
pub fn rank_certificate(mb: &ModuleBasis) -> RankCertificate {
    let det = mb
        .matrix
        .determinant()
        .expect("module basis matrices are square");
    match det.degree() {
        None => RankCertificate::Deficient,
        Some(d) => RankCertificate::FullRank(d),
    }
}
