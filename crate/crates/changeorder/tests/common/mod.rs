//! The worked F_29 example threaded through the whole test suite: three
//! dense quadrics in x1, x2, y whose DRL basis, staircase, module basis
//! matrix P, Hermite form H, lex basis, and multiplication matrix are all
//! pinned here as golden values (hand-checked against one another).

#![allow(dead_code)]

use changeorder::groebner::GroebnerBasis;
use changeorder::mvpoly::{parse_poly, MonomialOrder, MvPoly};
use changeorder::polymat::PolyMatrix;
use changeorder::{PrimeField, UPoly};

pub const MODULUS: u64 = 29;

pub fn field() -> PrimeField {
    PrimeField::new(MODULUS).unwrap()
}

pub fn var_names() -> Vec<String> {
    vec!["x1".into(), "x2".into(), "y".into()]
}

/// The three input generators.
pub const GENERATORS: [&str; 3] = [
    "x2^2 + 12*x1*y + 26*x2*y + 5*y^2 + 9*x1 + 6*x2 + 8*y + 6",
    "x1*x2 + 10*x2^2 + 10*x1*y + 9*y^2 + 2*x1 + 14*x2 + y + 13",
    "x1^2 + 7*x1*x2 + 17*x2^2 + 15*x1*y + 24*x2*y + 3*y^2 + 4*x1 + 28*x2 + 18*y + 26",
];

/// The reduced DRL basis, sorted by increasing leading monomial
/// (x2^2, x1x2, x1^2, x2y^2, x1y^2, y^4).
pub const DRL_GB: [&str; 6] = [
    "x2^2 + 12*x1*y + 26*x2*y + 5*y^2 + 9*x1 + 6*x2 + 8*y + 6",
    "x1*x2 + 6*x1*y + x2*y + 17*y^2 + 28*x1 + 12*x2 + 8*y + 11",
    "x1^2 + x1*y + 10*x2*y + 2*y^2 + 3*x1 + 16*x2 + 21",
    "x2*y^2 + 5*x1*y + 28*x2*y + 3*y^2 + 19*x1 + 15*x2 + 17",
    "x1*y^2 + 18*y^3 + 24*x1*y + 27*x2*y + 19*y^2 + 2*x1 + 9*y + 3",
    "y^4 + 3*y^3 + 15*x1*y + 23*x2*y + 3*y^2 + 26*x2 + 22*y",
];

/// The reduced LEX basis: shape position {h(y), x2 − g2(y), x1 − g1(y)},
/// sorted by increasing leading monomial (y^8, x2, x1).
pub const LEX_GB: [&str; 3] = [
    "y^8 + 26*y^7 + 8*y^6 + 17*y^5 + 19*y^4 + y^3 + 28*y^2 + 20*y + 18",
    "x2 + 28*y^7 + 23*y^6 + 17*y^5 + 25*y^4 + 24*y^3 + 17*y^2 + 14*y + 4",
    "x1 + 6*y^7 + 13*y^6 + 22*y^5 + 12*y^4 + 28*y^3 + 24*y^2 + 26*y + 14",
];

/// Shape parametrization: h, then g1, g2 with x_i = g_i(y) on the variety.
pub const SHAPE_H: &str = "18 + 20*y + 28*y^2 + y^3 + 19*y^4 + 17*y^5 + 8*y^6 + 26*y^7 + y^8";
pub const SHAPE_G1: &str = "15 + 3*y + 5*y^2 + y^3 + 17*y^4 + 7*y^5 + 16*y^6 + 23*y^7";
pub const SHAPE_G2: &str = "25 + 15*y + 12*y^2 + 5*y^3 + 4*y^4 + 12*y^5 + 6*y^6 + y^7";

/// The module basis matrix P on C = (1, x2, x1), univariate entries written
/// in increasing degree.
pub const P_ROWS: [[&str; 3]; 3] = [
    ["22*y + 3*y^2 + 3*y^3 + y^4", "26 + 23*y", "15*y"],
    ["17 + 3*y^2", "15 + 28*y + y^2", "19 + 5*y"],
    ["3 + 9*y + 19*y^2 + 18*y^3", "27*y", "2 + 24*y + y^2"],
];

/// The Hermite normal form of P.
pub const H_ROWS: [[&str; 3]; 3] = [
    [
        "18 + 20*y + 28*y^2 + y^3 + 19*y^4 + 17*y^5 + 8*y^6 + 26*y^7 + y^8",
        "0",
        "0",
    ],
    [
        "4 + 14*y + 17*y^2 + 24*y^3 + 25*y^4 + 17*y^5 + 23*y^6 + 28*y^7",
        "1",
        "0",
    ],
    [
        "14 + 26*y + 24*y^2 + 28*y^3 + 12*y^4 + 22*y^5 + 13*y^6 + 6*y^7",
        "0",
        "1",
    ],
];

/// The multiplication-by-y matrix on the grouped basis
/// (1, y, y^2, y^3, x2, x2y, x1, x1y): row i holds the coordinates of
/// y·b_i.
pub const MY_ROWS: [[i64; 8]; 8] = [
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 7, 26, 26, 3, 6, 0, 14],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [12, 0, 26, 0, 14, 1, 10, 24],
    [0, 0, 0, 0, 0, 0, 0, 1],
    [26, 20, 10, 11, 0, 2, 27, 5],
];

/// Grouped quotient basis, C list, and border exits.
pub const BASIS_GROUPED: [&str; 8] = ["1", "y", "y^2", "y^3", "x2", "x2*y", "x1", "x1*y"];
pub const C_LIST: [&str; 3] = ["1", "x2", "x1"];
pub const EXPONENTS: [u32; 3] = [4, 2, 2];
pub const DIMENSION: usize = 8;

pub fn parse_mv(text: &str) -> MvPoly {
    parse_poly(field(), &var_names(), text).unwrap()
}

pub fn generators() -> Vec<MvPoly> {
    GENERATORS.iter().map(|s| parse_mv(s)).collect()
}

pub fn drl_gb() -> GroebnerBasis {
    GroebnerBasis::from_polys(
        MonomialOrder::Drl,
        DRL_GB.iter().map(|s| parse_mv(s)).collect(),
    )
}

pub fn lex_gb() -> GroebnerBasis {
    GroebnerBasis::from_polys(
        MonomialOrder::Lex,
        LEX_GB.iter().map(|s| parse_mv(s)).collect(),
    )
}

pub fn parse_u(text: &str) -> UPoly {
    UPoly::parse(field(), text).unwrap()
}

pub fn p_matrix() -> PolyMatrix {
    PolyMatrix::from_fn(field(), 3, 3, |i, j| parse_u(P_ROWS[i][j]))
}

pub fn h_matrix() -> PolyMatrix {
    PolyMatrix::from_fn(field(), 3, 3, |i, j| parse_u(H_ROWS[i][j]))
}

pub fn my_matrix() -> Vec<Vec<i64>> {
    MY_ROWS.iter().map(|r| r.to_vec()).collect()
}
