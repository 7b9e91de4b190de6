//! Change of monomial order for zero-dimensional polynomial ideals.
//!
//! Starting from a degree-reverse-lexicographic (DRL) Groebner basis of a
//! zero-dimensional ideal I over a prime field, this crate computes the
//! lexicographic (LEX) Groebner basis by linear algebra over the univariate
//! ring K[y] instead of rerunning a Groebner engine:
//!
//! 1. extract the staircase of the DRL basis and the y-free monomial list C;
//! 2. build a square basis matrix P over K[y] for the module M = I ∩ R_C,
//!    either read off the DRL basis for free (when the leading-term ideal is
//!    stable) or through border normal forms;
//! 3. bring P to Hermite normal form H;
//! 4. read the reduced LEX basis off the rows of H, detecting the common
//!    "shape" case {h(y), x_i − g_i(y)} where the output is a univariate
//!    parametrization of the solution set.
//!
//! A Buchberger engine ([`groebner`]) and a Wiedemann-style sparse change of
//! order ([`fglm`]) are included as independent cross-checking paths; the
//! command-line front end ([`cli`]) wires everything together.

pub mod field;
pub mod upoly;
pub mod polymat;
pub mod mvpoly;
pub mod groebner;
pub mod modbasis;
pub mod lexgb;
pub mod fglm;
pub mod cli;

pub use field::{FieldElement, PrimeField};
pub use upoly::UPoly;

/// Crate-wide error type.
///
/// Data-driven failures (bad input files, singular matrices, structural
/// assumptions that do not hold for a particular ideal) are reported through
/// this enum. Programmer errors — mixing elements of different fields,
/// dimension mismatches in matrix products — panic instead, as documented on
/// the operations concerned.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in the supported range 2 < p < 2^31")]
    BadModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("kernel computation needs more rows than columns, got {rows}x{cols}")]
    NoKernel { rows: usize, cols: usize },
    #[error("ideal is not zero-dimensional: no pure power of variable {var_index} among the leading terms")]
    NotZeroDimensional { var_index: usize },
    #[error("polynomial does not lie in the module: monomial with exponents {exponents:?} is not y^e * mu for any mu in C")]
    NotInModule { exponents: Vec<u32> },
    #[error("structural assumption violated: {0}")]
    Structure(String),
    #[error("duplicate leading monomial with exponents {exponents:?} among read-off candidates")]
    DuplicateLeadingMonomial { exponents: Vec<u32> },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

// The user guide's code samples double as doc-tests so the book can never
// drift from the API. `cargo test --doc` compiles and runs every fenced Rust
// block in book/src.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/prime-fields.md")]
    pub mod prime_fields {}
    #[doc = include_str!("../../../book/src/univariate.md")]
    pub mod univariate {}
    #[doc = include_str!("../../../book/src/orders-and-division.md")]
    pub mod orders_and_division {}
    #[doc = include_str!("../../../book/src/groebner-and-staircase.md")]
    pub mod groebner_and_staircase {}
    #[doc = include_str!("../../../book/src/module-basis.md")]
    pub mod module_basis {}
    #[doc = include_str!("../../../book/src/hermite.md")]
    pub mod hermite {}
    #[doc = include_str!("../../../book/src/reading-off-lex.md")]
    pub mod reading_off_lex {}
    #[doc = include_str!("../../../book/src/sparse-path.md")]
    pub mod sparse_path {}
    #[doc = include_str!("../../../book/src/cli-and-formats.md")]
    pub mod cli_and_formats {}
}
