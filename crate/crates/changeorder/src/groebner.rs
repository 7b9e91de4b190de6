//! Reduced Gröbner bases via Buchberger's algorithm, staircase extraction
//! for zero-dimensional ideals, the leading-term stability check that gates
//! the fast module-basis construction, and shape-position detection.
//!
//! The Buchberger engine implements the Gebauer–Möller pair update (the
//! product and chain criteria) with the normal selection strategy. It is a
//! desk-scale oracle: correct and deterministic, with no pretension of
//! competing with matrix-reduction engines.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::field::PrimeField;
use crate::mvpoly::{normal_form, parse_poly, Monomial, MonomialOrder, MvPoly};
use crate::{Error, Result};

/// A reduced Gröbner basis: monic elements sorted by increasing leading
/// monomial, no leading monomial dividing another, every trailing monomial
/// outside the leading-term ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<MvPoly>,
}

impl GroebnerBasis {
    /// Wraps a list already known to be a reduced basis (e.g. parsed from a
    /// file produced by this crate). The structural invariants are
    /// re-established by sorting; mathematical reducedness is the caller's
    /// claim and can be audited with [`GroebnerBasis::is_reduced`].
    pub fn from_polys(order: MonomialOrder, mut polys: Vec<MvPoly>) -> GroebnerBasis {
        assert!(!polys.is_empty(), "a Groebner basis needs at least one polynomial");
        let field = polys[0].field();
        let nvars = polys[0].nvars();
        assert!(
            polys.iter().all(|p| !p.is_zero()),
            "zero polynomial in a Groebner basis"
        );
        for p in polys.iter_mut() {
            *p = p.monic(order);
        }
        polys.sort_by(|a, b| {
            order.compare(
                &a.leading_monomial(order).unwrap(),
                &b.leading_monomial(order).unwrap(),
            )
        });
        GroebnerBasis { field, nvars, order, polys }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[MvPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Leading monomials, in basis order (increasing).
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| p.leading_monomial(self.order).expect("basis elements are nonzero"))
            .collect()
    }

    /// True when some leading monomial divides `m`, i.e. `m` lies in the
    /// leading-term ideal.
    pub fn lt_ideal_contains(&self, m: &Monomial) -> bool {
        self.polys
            .iter()
            .any(|p| p.leading_monomial(self.order).unwrap().divides(m))
    }

    /// Normal form of `f` against this basis — the ideal-membership oracle:
    /// `f` lies in the ideal iff the normal form is zero.
    pub fn normal_form(&self, f: &MvPoly) -> MvPoly {
        normal_form(f, &self.polys, self.order)
    }

    /// Audits the reducedness invariants (pairwise minimal leading terms,
    /// fully reduced tails, monic, sorted).
    pub fn is_reduced(&self) -> bool {
        let lts = self.leading_monomials();
        for (i, lt) in lts.iter().enumerate() {
            for (j, other) in lts.iter().enumerate() {
                if i != j && other.divides(lt) {
                    return false;
                }
            }
        }
        for (k, p) in self.polys.iter().enumerate() {
            if !p
                .leading_term(self.order)
                .map(|(_, c)| c.is_one())
                .unwrap_or(false)
            {
                return false;
            }
            for m in p.support() {
                if m != &lts[k] && lts.iter().any(|lt| lt.divides(m)) {
                    return false;
                }
            }
        }
        lts.windows(2)
            .all(|w| self.order.compare(&w[0], &w[1]) == std::cmp::Ordering::Less)
    }
}

/// The monomial basis of the quotient ring, organized for the change of
/// order: `c_monomials` lists the y-free basis monomials μ_1 < … < μ_t in
/// increasing LEX order, `exponents[i]` is the least e with y^e·μ_i in the
/// leading-term ideal, and `basis` lists all D basis monomials grouped as
/// (μ_1, μ_1 y, …, μ_1 y^{e_1−1}, μ_2, …) — block i runs over the pure
/// y-shifts of μ_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseProfile {
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    c_monomials: Vec<Monomial>,
    exponents: Vec<u32>,
}

impl StaircaseProfile {
    /// All basis monomials in grouped order.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// The quotient dimension D.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// The y-free basis monomials, LEX-increasing.
    pub fn c_monomials(&self) -> &[Monomial] {
        &self.c_monomials
    }

    /// The y-border exits e_1..e_t.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_blocks(&self) -> usize {
        self.c_monomials.len()
    }

    /// Position of a monomial in the grouped basis.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Start offset of block i in the grouped basis.
    pub fn block_start(&self, i: usize) -> usize {
        self.exponents[..i].iter().map(|&e| e as usize).sum()
    }

    /// The basis monomials re-sorted under `order` (the grouped layout is
    /// the native one; this view serves consumers that want the usual
    /// order-increasing enumeration).
    pub fn basis_sorted(&self, order: MonomialOrder) -> Vec<Monomial> {
        let mut b = self.basis.clone();
        b.sort_by(|a, m| order.compare(a, m));
        b
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`
/// under `order`. Panics when every generator is zero — callers validate
/// their inputs; an all-zero system is a programming error here.
pub fn buchberger(gens: &[MvPoly], order: MonomialOrder) -> GroebnerBasis {
    let nonzero: Vec<&MvPoly> = gens.iter().filter(|p| !p.is_zero()).collect();
    assert!(
        !nonzero.is_empty(),
        "buchberger needs at least one nonzero generator"
    );
    let field = nonzero[0].field();
    let nvars = nonzero[0].nvars();

    let mut basis: Vec<MvPoly> = Vec::new();
    let mut sugars: Vec<u64> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for f in nonzero {
        let r = normal_form(f, &basis, order);
        if !r.is_zero() {
            let s = r.terms().map(|(m, _)| m.total_degree()).max().unwrap();
            update_pairs(&mut basis, &mut sugars, &mut pairs, r.monic(order), s, order);
        }
    }

    while !pairs.is_empty() {
        // Sugar strategy: lowest phantom-homogenization degree first, ties
        // broken by the normal strategy (smallest lcm under the active
        // order), then by index pair. Deterministic; under elimination
        // orders this avoids the catastrophic intermediate blowup the plain
        // normal strategy suffers.
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then(order.compare(&a.lcm, &b.lcm))
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order);
        let r = normal_form(&s, &basis, order);
        if !r.is_zero() {
            update_pairs(&mut basis, &mut sugars, &mut pairs, r.monic(order), pair.sugar, order);
        }
    }

    let polys = interreduce(basis, order);
    GroebnerBasis { field, nvars, order, polys }
}

/// A critical pair (i, j) with i < j and the lcm of the leading monomials.
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// The S-polynomial of two monic polynomials.
fn s_polynomial(f: &MvPoly, g: &MvPoly, order: MonomialOrder) -> MvPoly {
    let lt_f = f.leading_monomial(order).unwrap();
    let lt_g = g.leading_monomial(order).unwrap();
    let lcm = lt_f.lcm(&lt_g);
    let one = f.field().one();
    let a = f.mul_term(one, &lcm.checked_div(&lt_f).unwrap());
    let b = g.mul_term(one, &lcm.checked_div(&lt_g).unwrap());
    a.sub(&b)
}

/// Gebauer–Möller pair update: adds `h` to the basis, pruning the new pairs
/// with the product criterion (coprime leading terms) and the lcm
/// divisibility/duplication rules, and the old pairs with the chain
/// criterion.
fn update_pairs(
    basis: &mut Vec<MvPoly>,
    sugars: &mut Vec<u64>,
    pairs: &mut Vec<Pair>,
    h: MvPoly,
    sugar_h: u64,
    order: MonomialOrder,
) {
    let t = basis.len();
    let lt_h = h.leading_monomial(order).unwrap();
    let lts: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(order).unwrap())
        .collect();
    let lcms: Vec<Monomial> = lts.iter().map(|lt| lt.lcm(&lt_h)).collect();

    // Rule 1: drop the candidate (i, t) when another candidate's lcm
    // properly divides its lcm — the dropped S-polynomial lies in the span
    // of the survivors.
    let survives: Vec<usize> = (0..t)
        .filter(|&i| {
            !(0..t).any(|j| j != i && lcms[j] != lcms[i] && lcms[j].divides(&lcms[i]))
        })
        .collect();

    // Rule 2: among candidates sharing one lcm, a single representative
    // carries all the information — and none is needed at all if any member
    // has coprime leading terms (its S-polynomial reduces to zero, and
    // equality of lcms transfers that to the whole class).
    let mut classes: BTreeMap<Monomial, Vec<usize>> = BTreeMap::new();
    for &i in &survives {
        classes.entry(lcms[i].clone()).or_default().push(i);
    }
    let mut fresh: Vec<Pair> = Vec::new();
    for (lcm, members) in classes {
        if members.iter().any(|&i| lts[i].is_coprime_with(&lt_h)) {
            continue;
        }
        let i = *members.iter().min().unwrap();
        // Phantom-homogenization degree: what the S-polynomial's total
        // degree would be had the inputs been homogeneous.
        let sugar = (sugars[i] + lcm.total_degree() - lts[i].total_degree())
            .max(sugar_h + lcm.total_degree() - lt_h.total_degree());
        fresh.push(Pair { i, j: t, lcm, sugar });
    }

    // Rule 3 (chain criterion) on the old pairs: (i, j) is redundant when
    // lt(h) divides lcm(i, j) strictly finer than both mixed lcms.
    pairs.retain(|p| {
        if !lt_h.divides(&p.lcm) {
            return true;
        }
        lts[p.i].lcm(&lt_h) == p.lcm || lts[p.j].lcm(&lt_h) == p.lcm
    });

    pairs.extend(fresh);
    basis.push(h);
    sugars.push(sugar_h);
}

/// Minimalizes (drops elements whose leading monomial is divisible by
/// another's) and then fully reduces each survivor against the others.
/// Returns monic polynomials sorted by increasing leading monomial.
fn interreduce(polys: Vec<MvPoly>, order: MonomialOrder) -> Vec<MvPoly> {
    let mut tagged: Vec<(Monomial, usize, MvPoly)> = polys
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p.leading_monomial(order).unwrap(), i, p))
        .collect();
    tagged.sort_by(|a, b| order.compare(&a.0, &b.0).then(a.1.cmp(&b.1)));

    // Increasing scan: any divisor of a leading monomial precedes it, so a
    // single pass finds the minimal generators (equal leading monomials
    // keep the earliest element).
    let mut minimal: Vec<MvPoly> = Vec::new();
    let mut kept_lts: Vec<Monomial> = Vec::new();
    for (lt, _, p) in tagged {
        if kept_lts.iter().any(|k| k.divides(&lt)) {
            continue;
        }
        kept_lts.push(lt);
        minimal.push(p);
    }

    // Tail reduction: leading terms are pairwise minimal, so reducing each
    // element against all the others only rewrites its tail; one sweep with
    // in-place updates reaches the fully reduced basis.
    for i in 0..minimal.len() {
        let others: Vec<MvPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = normal_form(&minimal[i], &others, order);
        debug_assert!(!r.is_zero(), "minimal element reduced to zero");
        minimal[i] = r.monic(order);
    }
    minimal
}

/// Extracts the quotient-basis staircase from a reduced Gröbner basis of a
/// zero-dimensional ideal.
pub fn staircase(gb: &GroebnerBasis) -> Result<StaircaseProfile> {
    let n = gb.nvars();
    let lts = gb.leading_monomials();
    if lts.iter().any(|m| m.is_one()) {
        return Err(Error::Structure(
            "the ideal is the whole ring (basis contains a nonzero constant); \
             the quotient has no monomial basis"
                .into(),
        ));
    }
    for v in 0..n {
        if !lts.iter().any(|m| m.is_pure_power_of(v)) {
            return Err(Error::NotZeroDimensional { var_index: v });
        }
    }

    // y-free standard monomials: breadth-first expansion from 1 over the
    // x-variables. The standard set is closed under division, so pruning at
    // the first non-standard monomial is exhaustive, and zero-dimensionality
    // bounds the search.
    let mut c_set: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue: VecDeque<Monomial> = VecDeque::new();
    let one = Monomial::one(n);
    if !lts.iter().any(|lt| lt.divides(&one)) {
        c_set.insert(one.clone());
        queue.push_back(one);
    }
    while let Some(m) = queue.pop_front() {
        for v in 0..n.saturating_sub(1) {
            let next = m.mul(&Monomial::var(n, v));
            if c_set.contains(&next) || lts.iter().any(|lt| lt.divides(&next)) {
                continue;
            }
            c_set.insert(next.clone());
            queue.push_back(next);
        }
    }
    let mut c_monomials: Vec<Monomial> = c_set.into_iter().collect();
    c_monomials.sort_by(|a, b| MonomialOrder::Lex.compare(a, b));

    let mut exponents: Vec<u32> = Vec::with_capacity(c_monomials.len());
    let mut basis: Vec<Monomial> = Vec::new();
    for mu in &c_monomials {
        let mut e = 1u32;
        while !lts.iter().any(|lt| lt.divides(&mu.mul_y(e))) {
            e += 1;
        }
        for k in 0..e {
            basis.push(mu.mul_y(k));
        }
        exponents.push(e);
    }
    let index: BTreeMap<Monomial, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(StaircaseProfile { basis, index, c_monomials, exponents })
}

/// Outcome of the leading-term stability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    Stable,
    /// A witness of failure: `monomial` is a minimal generator of the
    /// leading-term ideal divisible by y whose shift (x_{var_slot+1}/y)·μ
    /// escapes the ideal.
    Unstable { monomial: Monomial, var_slot: usize },
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

/// Checks stability of the leading-term ideal: for every minimal generator
/// μ divisible by y and every x-variable, (x_i/y)·μ must stay inside the
/// ideal. When this holds, the module basis of the change of order can be
/// read directly off the Gröbner basis.
pub fn check_stability(gb: &GroebnerBasis) -> Stability {
    let n = gb.nvars();
    let lts = gb.leading_monomials();
    for mu in &lts {
        if mu.y_exponent() == 0 {
            continue;
        }
        let (x_part, k) = mu.strip_y();
        let shifted_base = x_part.mul_y(k - 1);
        for v in 0..n.saturating_sub(1) {
            let candidate = shifted_base.mul(&Monomial::var(n, v));
            if !lts.iter().any(|lt| lt.divides(&candidate)) {
                return Stability::Unstable { monomial: mu.clone(), var_slot: v };
            }
        }
    }
    Stability::Stable
}

/// True when a reduced LEX basis has the shape-position form
/// {h(y), x_{n−1} − g_{n−1}(y), …, x_1 − g_1(y)} with every deg g_i < deg h.
pub fn is_shape_position(lex_gb: &GroebnerBasis) -> bool {
    assert_eq!(
        lex_gb.order(),
        MonomialOrder::Lex,
        "shape position is a property of LEX bases"
    );
    let n = lex_gb.nvars();
    if lex_gb.len() != n {
        return false;
    }
    let mut h_degree: Option<usize> = None;
    let mut seen_var = vec![false; n.saturating_sub(1)];
    for p in lex_gb.polys() {
        if p.is_univariate_in_y() {
            match h_degree {
                Some(_) => return false,
                None => {
                    let u = p.to_upoly().expect("univariate by construction");
                    match u.degree() {
                        Some(d) if d >= 1 => h_degree = Some(d),
                        _ => return false,
                    }
                }
            }
        }
    }
    let Some(dh) = h_degree else {
        return false;
    };
    for p in lex_gb.polys() {
        if p.is_univariate_in_y() {
            continue;
        }
        let lt = p.leading_monomial(MonomialOrder::Lex).unwrap();
        // Leading term must be a bare x-variable...
        let slot = (0..n - 1).find(|&v| lt == Monomial::var(n, v));
        let Some(slot) = slot else {
            return false;
        };
        if seen_var[slot] {
            return false;
        }
        seen_var[slot] = true;
        // ...and the tail univariate in y of degree below deg h.
        let tail = p.sub(&MvPoly::from_monomial(p.field(), lt));
        if !tail.is_univariate_in_y() {
            return false;
        }
        if let Ok(g) = tail.to_upoly() {
            if let Some(dg) = g.degree() {
                if dg >= dh {
                    return false;
                }
            }
        } else {
            return false;
        }
    }
    seen_var.iter().all(|&s| s)
}

/// Serializes a basis in the polynomial-file format: `field:`, `vars:`,
/// `order:` headers, then one `;`-terminated polynomial per line.
pub fn write_gb_text(gb: &GroebnerBasis, var_names: &[String]) -> String {
    assert_eq!(var_names.len(), gb.nvars(), "variable name count mismatch");
    let mut out = String::new();
    out.push_str(&format!("field: {}\n", gb.field().modulus()));
    out.push_str(&format!("vars: {}\n", var_names.join(",")));
    out.push_str(&format!("order: {}\n", gb.order().name()));
    for p in gb.polys() {
        out.push_str(&crate::mvpoly::format_poly(p, var_names, gb.order()));
        out.push_str(";\n");
    }
    out
}

/// A parsed polynomial file: headers plus the polynomial list. The `order`
/// header is optional for plain generator systems and required for Gröbner
/// basis files.
#[derive(Debug)]
pub struct PolyFile {
    pub field: PrimeField,
    pub var_names: Vec<String>,
    pub order: Option<MonomialOrder>,
    pub polys: Vec<MvPoly>,
}

/// Parses the polynomial-file format shared by generator systems and basis
/// files. Recognized lines: `field: p`, `vars: a,b,c`, `order: drl|lex`,
/// `#`-comments, and `;`-terminated polynomials (which may span lines).
/// Parsing stops at a `shape:` line — the shape block trailer emitted after
/// a solved system is informational.
pub fn parse_poly_file(text: &str) -> Result<PolyFile> {
    let mut field: Option<PrimeField> = None;
    let mut var_names: Option<Vec<String>> = None;
    let mut order: Option<MonomialOrder> = None;
    let mut polys: Vec<MvPoly> = Vec::new();
    let mut pending = String::new();
    let mut pending_line = 0usize;

    for (lno, raw) in text.lines().enumerate() {
        let lno = lno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "shape:" || line.starts_with("shape:") {
            break;
        }
        if pending.is_empty() {
            if let Some(rest) = line.strip_prefix("field:") {
                let p: u64 = rest.trim().parse().map_err(|_| Error::Parse {
                    line: lno,
                    msg: format!("bad modulus {:?}", rest.trim()),
                })?;
                field = Some(PrimeField::new(p)?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("vars:") {
                let names: Vec<String> = rest
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                if names.is_empty() {
                    return Err(Error::Parse {
                        line: lno,
                        msg: "empty variable list".into(),
                    });
                }
                var_names = Some(names);
                continue;
            }
            if let Some(rest) = line.strip_prefix("order:") {
                let name = rest.trim();
                order = Some(MonomialOrder::from_name(name).ok_or(Error::Parse {
                    line: lno,
                    msg: format!("unknown order {name:?} (expected drl or lex)"),
                })?);
                continue;
            }
            pending_line = lno;
        }
        pending.push_str(line);
        if pending.trim_end().ends_with(';') {
            let f = field.ok_or(Error::Parse {
                line: pending_line,
                msg: "polynomial before `field:` header".into(),
            })?;
            let names = var_names.as_ref().ok_or(Error::Parse {
                line: pending_line,
                msg: "polynomial before `vars:` header".into(),
            })?;
            let body = pending.trim_end().trim_end_matches(';');
            let p = parse_poly(f, names, body).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: pending_line, msg },
                other => other,
            })?;
            polys.push(p);
            pending.clear();
        } else {
            pending.push(' ');
        }
    }
    if !pending.trim().is_empty() {
        return Err(Error::Parse {
            line: pending_line,
            msg: "unterminated polynomial (missing `;`)".into(),
        });
    }
    let field = field.ok_or(Error::Parse { line: 0, msg: "missing `field:` header".into() })?;
    let var_names = var_names.ok_or(Error::Parse { line: 0, msg: "missing `vars:` header".into() })?;
    Ok(PolyFile { field, var_names, order, polys })
}

/// Parses a Gröbner basis file: the `order:` header and at least one
/// polynomial are required.
pub fn parse_gb_text(text: &str) -> Result<(GroebnerBasis, Vec<String>)> {
    let file = parse_poly_file(text)?;
    let order = file.order.ok_or(Error::Parse {
        line: 0,
        msg: "missing `order:` header in basis file".into(),
    })?;
    if file.polys.is_empty() {
        return Err(Error::Parse { line: 0, msg: "basis file has no polynomials".into() });
    }
    if file.polys.iter().any(|p| p.is_zero()) {
        return Err(Error::Parse { line: 0, msg: "zero polynomial in basis file".into() });
    }
    Ok((GroebnerBasis::from_polys(order, file.polys), file.var_names))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f29() -> PrimeField {
        PrimeField::new(29).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        let mut v: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
        v.push("y".into());
        v
    }

    fn poly(n: usize, text: &str) -> MvPoly {
        parse_poly(f29(), &names(n), text).unwrap()
    }

    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            self.0 >> 33
        }
        /// Random polynomial in `n` vars with total degree ≤ `d`.
        fn poly(&mut self, n: usize, d: u32, terms: usize) -> MvPoly {
            let mut acc: Vec<(Monomial, i64)> = Vec::new();
            for _ in 0..terms {
                let mut exps = vec![0u32; n];
                let mut budget = d;
                for e in exps.iter_mut() {
                    let pick = (self.next() % (budget as u64 + 1)) as u32;
                    *e = pick;
                    budget -= pick;
                }
                acc.push((Monomial::new(exps), (self.next() % 29) as i64));
            }
            MvPoly::from_terms(f29(), n, &acc)
        }
    }

    #[test]
    fn buchberger_returns_reduced_input_unchanged() {
        let gens = vec![poly(2, "x1^2 - 1"), poly(2, "y - 2")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        assert_eq!(gb.len(), 2);
        assert_eq!(gb.polys()[0], poly(2, "y - 2"));
        assert_eq!(gb.polys()[1], poly(2, "x1^2 - 1"));
        assert!(gb.is_reduced());
    }

    #[test]
    fn buchberger_linear_system() {
        // ⟨x1 + y, y − 3⟩: reduced DRL basis {y − 3, x1 + 3·... } — eliminate:
        // x1 + y reduces to x1 + 3.
        let gens = vec![poly(2, "x1 + y"), poly(2, "y - 3")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        assert_eq!(gb.polys()[0], poly(2, "y - 3"));
        assert_eq!(gb.polys()[1], poly(2, "x1 + 3"));
    }

    #[test]
    fn buchberger_textbook_two_vars() {
        // ⟨x1^2 − y, x1^3 − x1⟩ under DRL: closes to {x1^2 − y, x1y − x1,
        // y^2 − y} (classic example with one nontrivial S-polynomial chain).
        let gens = vec![poly(2, "x1^2 - y"), poly(2, "x1^3 - x1")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        let expect = vec![
            poly(2, "y^2 - y"),
            poly(2, "x1*y - x1"),
            poly(2, "x1^2 - y"),
        ];
        assert_eq!(gb.polys(), &expect[..]);
        assert!(gb.is_reduced());
    }

    #[test]
    fn buchberger_output_is_confluent_and_reduced() {
        let mut rng = Rng(11);
        for _ in 0..8 {
            let gens = vec![
                poly(2, "x1^2").add(&rng.poly(2, 1, 3)),
                poly(2, "y^2").add(&rng.poly(2, 1, 3)),
            ];
            for order in [MonomialOrder::Drl, MonomialOrder::Lex] {
                let gb = buchberger(&gens, order);
                assert!(gb.is_reduced());
                for i in 0..gb.len() {
                    for j in i + 1..gb.len() {
                        let s = s_polynomial(&gb.polys()[i], &gb.polys()[j], order);
                        assert!(gb.normal_form(&s).is_zero(), "S-polynomial must reduce to 0");
                    }
                }
            }
        }
    }

    #[test]
    fn normal_form_is_membership_oracle() {
        let mut rng = Rng(12);
        let gens = vec![poly(2, "x1^2 + y - 1"), poly(2, "y^2 + x1")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        for _ in 0..10 {
            // Random combination of the generators lies in the ideal.
            let mut f = MvPoly::zero(f29(), 2);
            for g in &gens {
                f = f.add(&rng.poly(2, 2, 3).mul(g));
            }
            assert!(gb.normal_form(&f).is_zero());
            // Adding 1 escapes it (the ideal is proper: no constant in the GB).
            let shifted = f.add(&poly(2, "1"));
            assert!(!gb.normal_form(&shifted).is_zero());
        }
    }

    #[test]
    fn staircase_trivial_maximal_ideal() {
        // ⟨x1, x2, y⟩: B = {1}, C = (1), e = (1), D = 1.
        let gens = vec![poly(3, "x1"), poly(3, "x2"), poly(3, "y")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        let prof = staircase(&gb).unwrap();
        assert_eq!(prof.dimension(), 1);
        assert_eq!(prof.basis(), &[Monomial::one(3)]);
        assert_eq!(prof.c_monomials(), &[Monomial::one(3)]);
        assert_eq!(prof.exponents(), &[1]);
    }

    #[test]
    fn staircase_rejects_positive_dimension() {
        // ⟨x1⟩ in 2 vars: y has no pure power among the leading terms.
        let gens = vec![poly(2, "x1")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        assert_eq!(
            staircase(&gb).unwrap_err(),
            Error::NotZeroDimensional { var_index: 1 }
        );
    }

    #[test]
    fn staircase_rejects_unit_ideal() {
        let gens = vec![poly(2, "x1"), poly(2, "x1 + 1")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        assert!(matches!(staircase(&gb).unwrap_err(), Error::Structure(_)));
    }

    #[test]
    fn staircase_grouped_layout() {
        // LT ideal ⟨y^2, x1y, x1^2⟩ (e.g. from {y^2 − 1, x1y − 1, x1^2 − 1}
        // suitably perturbed): B grouped = (1, y, x1), C = (1, x1), e = (2, 1).
        let gens = vec![poly(2, "y^2"), poly(2, "x1*y"), poly(2, "x1^2")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        let prof = staircase(&gb).unwrap();
        assert_eq!(prof.dimension(), 3);
        assert_eq!(prof.c_monomials().len(), 2);
        assert_eq!(prof.exponents(), &[2, 1]);
        let b: Vec<String> = prof.basis().iter().map(|m| format!("{m}")).collect();
        assert_eq!(b, vec!["1", "y", "x1"]);
        assert_eq!(prof.index_of(&Monomial::var(2, 1)), Some(1));
        assert_eq!(prof.block_start(1), 2);
    }

    /// Brute-force dimension oracle: count monomials under the pure-power
    /// box that no leading term divides.
    fn dimension_by_divisor_scan(gb: &GroebnerBasis) -> usize {
        let n = gb.nvars();
        let lts = gb.leading_monomials();
        let mut bounds = vec![0u32; n];
        for v in 0..n {
            bounds[v] = lts
                .iter()
                .filter(|m| m.is_pure_power_of(v))
                .map(|m| m.exp(v))
                .min()
                .expect("zero-dimensional input");
        }
        let mut count = 0usize;
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::new(exps.clone());
            if !lts.iter().any(|lt| lt.divides(&m)) {
                count += 1;
            }
            let mut carry = 0;
            loop {
                if carry == n {
                    return count;
                }
                exps[carry] += 1;
                if exps[carry] >= bounds[carry] {
                    exps[carry] = 0;
                    carry += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn staircase_dimension_matches_divisor_scan() {
        let mut rng = Rng(13);
        let mut checked = 0;
        while checked < 6 {
            let gens = vec![
                poly(2, "x1^3").add(&rng.poly(2, 2, 4)),
                poly(2, "y^3").add(&rng.poly(2, 2, 4)),
            ];
            let gb = buchberger(&gens, MonomialOrder::Drl);
            let prof = match staircase(&gb) {
                Ok(p) => p,
                Err(_) => continue,
            };
            checked += 1;
            assert_eq!(prof.dimension(), dimension_by_divisor_scan(&gb));
            let total: u32 = prof.exponents().iter().sum();
            assert_eq!(total as usize, prof.dimension());
            // Border invariant: y^{e_i−1}·μ_i in B, y^{e_i}·μ_i outside.
            for (mu, &e) in prof.c_monomials().iter().zip(prof.exponents()) {
                assert!(prof.index_of(&mu.mul_y(e - 1)).is_some());
                assert!(prof.index_of(&mu.mul_y(e)).is_none());
                assert!(gb.lt_ideal_contains(&mu.mul_y(e)));
            }
        }
    }

    #[test]
    fn stability_vacuous_when_no_leading_term_involves_y() {
        let gens = vec![poly(2, "x1^2 + y"), poly(2, "y^3 + 1")];
        // LT(x1^2 + y) = x1^2 under DRL; LT(y^3 + 1) = y^3... y^3 has y.
        // Build instead a basis with y-free leading terms only: ⟨x1 − 1⟩ in
        // one x variable plus y-free check is impossible for 0-dim; use the
        // direct definition: a basis whose LTs are x-powers only is vacuous.
        let gb = GroebnerBasis::from_polys(
            MonomialOrder::Drl,
            vec![poly(2, "x1^2 + x1 + 1")],
        );
        assert!(check_stability(&gb).is_stable());
        let _ = gens;
    }

    #[test]
    fn stability_counterexample_with_witness() {
        // LT set {x1^2, y^2}: shifting y^2 by x1/y gives x1·y, outside.
        let gens = vec![poly(2, "x1^2"), poly(2, "y^2")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        match check_stability(&gb) {
            Stability::Unstable { monomial, var_slot } => {
                assert_eq!(monomial, Monomial::new(vec![0, 2]));
                assert_eq!(var_slot, 0);
            }
            Stability::Stable => panic!("expected instability"),
        }
    }

    #[test]
    fn stability_positive_example() {
        // LT set {y^2, x1y, x1^2} is stable: (x1/y)·y^2 = x1y ∈, and for
        // μ = x1y: (x1/y)·x1y = x1^2 ∈.
        let gens = vec![poly(2, "y^2"), poly(2, "x1*y"), poly(2, "x1^2")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        assert!(check_stability(&gb).is_stable());
    }

    /// Exhaustive scan over the border of B: the definition of stability
    /// restricted to the finitely many monomials that matter.
    fn stability_by_border_scan(gb: &GroebnerBasis) -> bool {
        let n = gb.nvars();
        let prof = staircase(gb).expect("zero-dimensional");
        let mut border: BTreeSet<Monomial> = BTreeSet::new();
        for b in prof.basis() {
            for v in 0..n {
                let m = b.mul(&Monomial::var(n, v));
                if prof.index_of(&m).is_none() {
                    border.insert(m);
                }
            }
        }
        for m in border {
            if m.y_exponent() == 0 {
                continue;
            }
            let (x_part, k) = m.strip_y();
            let base = x_part.mul_y(k - 1);
            for v in 0..n - 1 {
                if !gb.lt_ideal_contains(&base.mul(&Monomial::var(n, v))) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn stability_agrees_with_border_scan() {
        let mut rng = Rng(14);
        let mut seen_stable = false;
        let mut seen_unstable = false;
        let mut checked = 0;
        let mut attempts = 0;
        while (checked < 10 || !(seen_stable && seen_unstable)) && attempts < 80 {
            attempts += 1;
            let gens = vec![
                poly(2, "x1^2").add(&rng.poly(2, 1, 2)),
                poly(2, "y^2").add(&rng.poly(2, 1, 2)),
                rng.poly(2, 2, 2),
            ];
            let gb = buchberger(&gens, MonomialOrder::Drl);
            if staircase(&gb).is_err() {
                continue;
            }
            checked += 1;
            let fast = check_stability(&gb).is_stable();
            assert_eq!(fast, stability_by_border_scan(&gb));
            seen_stable |= fast;
            seen_unstable |= !fast;
        }
        // The sweep must exercise both verdicts; if this ever fails,
        // reseed rather than weaken the assertion.
        assert!(seen_stable && seen_unstable);
    }

    #[test]
    fn shape_position_examples() {
        let shape = GroebnerBasis::from_polys(
            MonomialOrder::Lex,
            vec![poly(2, "y - 3"), poly(2, "x1 - 5")],
        );
        assert!(is_shape_position(&shape));

        let not_shape = GroebnerBasis::from_polys(
            MonomialOrder::Lex,
            vec![poly(2, "y"), poly(2, "x1^2")],
        );
        assert!(!is_shape_position(&not_shape));

        // Tail with a mixed monomial breaks shape.
        let mixed = GroebnerBasis::from_polys(
            MonomialOrder::Lex,
            vec![poly(3, "y^2 - 2"), poly(3, "x2 - y"), poly(3, "x1 - x2*y")],
        );
        assert!(!is_shape_position(&mixed));

        // deg g must stay below deg h... here g = y^2 against deg h = 2
        // cannot arise from a reduced basis, so check the detector directly
        // on a handcrafted non-reduced list.
        let too_big = GroebnerBasis::from_polys(
            MonomialOrder::Lex,
            vec![poly(2, "y^2 - 2"), poly(2, "x1 - y^2")],
        );
        assert!(!is_shape_position(&too_big));
    }

    #[test]
    fn gb_text_round_trip() {
        let gens = vec![poly(2, "x1^2 - y"), poly(2, "x1^3 - x1")];
        let gb = buchberger(&gens, MonomialOrder::Drl);
        let text = write_gb_text(&gb, &names(2));
        let (back, vars) = parse_gb_text(&text).unwrap();
        assert_eq!(back, gb);
        assert_eq!(vars, names(2));
        // Shape trailer is ignored.
        let with_shape = format!("{text}shape:\nh = y^2 - y;\n");
        let (back2, _) = parse_gb_text(&with_shape).unwrap();
        assert_eq!(back2, gb);
        // Missing order header is an error for basis files.
        assert!(parse_gb_text("field: 29\nvars: x1,y\nx1;\n").is_err());
    }

    #[test]
    fn poly_file_parse_errors() {
        assert!(matches!(
            parse_poly_file("vars: x1,y\nx1;\n").unwrap_err(),
            Error::Parse { .. }
        ));
        assert!(matches!(
            parse_poly_file("field: 29\nvars: x1,y\nx1 + y\n").unwrap_err(),
            Error::Parse { .. }
        ));
        let multi = "field: 29\nvars: x1,y\nx1 +\n  y;\n";
        let file = parse_poly_file(multi).unwrap();
        assert_eq!(file.polys.len(), 1);
        assert_eq!(file.polys[0], poly(2, "x1 + y"));
    }
}
