//! Batch front door: parse generator systems, run the change of order end
//! to end, generate seeded random instances, audit basis files, and emit
//! per-stage benchmark tables.
//!
//! Exit codes: 0 on success, 2 when a structural fallback fired (stability
//! failed so the border route was used, or no shape was detected so the
//! output is the minimally filtered basis), 1 on errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::ChaCha12Rng;
use rand_core::SeedableRng;

use crate::field::PrimeField;
use crate::fglm::{build_mult_matrix, build_mult_matrix_nf, sparse_fglm_shape};
use crate::groebner::{
    buchberger, check_stability, parse_gb_text, parse_poly_file, staircase, GroebnerBasis,
    Stability, StaircaseProfile,
};
use crate::lexgb::{read_off_lex, shape_from_lex_gb, LexOutput};
use crate::modbasis::{basis_from_border, basis_from_stable_gb, ModuleBasis};
use crate::mvpoly::{format_poly, Monomial, MonomialOrder, MvPoly};
use crate::{Error, Result};

/// 30-bit prime used when no modulus is given.
pub const DEFAULT_MODULUS: u64 = 536_870_923;

/// Hard ceiling on the quotient dimension for benchmark entries; the
/// direct-engine agreement oracle additionally caps itself at 512.
pub const BENCH_DIM_CAP: usize = 4096;
pub const ORACLE_DIM_CAP: usize = 512;

#[derive(Parser, Debug)]
#[command(name = "changeorder", version, about = "Exact DRL-to-LEX change of order for zero-dimensional polynomial systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the reduced LEX basis of a generator system.
    Solve {
        /// Generator system file.
        #[arg(long)]
        input: PathBuf,
        /// Change-of-order engine.
        #[arg(long, value_enum)]
        method: Method,
        /// Precomputed DRL basis file; skips the first Buchberger run.
        #[arg(long)]
        gb_drl: Option<PathBuf>,
        /// Seed for the sparse projections.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination for the LEX basis.
        #[arg(long)]
        output: PathBuf,
    },
    /// Print a seeded random dense square system to stdout.
    Random {
        /// Number of variables (the last one is y).
        #[arg(long)]
        n: usize,
        /// Total degree of every generator.
        #[arg(long)]
        d: u32,
        /// Prime modulus.
        #[arg(long, default_value_t = DEFAULT_MODULUS)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report structural facts about a basis file.
    Check {
        /// Basis file to audit.
        #[arg(long)]
        gb: PathBuf,
    },
    /// Time the pipeline stages over an n:d grid and print CSV.
    Bench {
        /// Grid entries, e.g. "2:4,3:2".
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = DEFAULT_MODULUS)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Repetitions per grid entry.
        #[arg(long, default_value_t = 1)]
        reps: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Module basis + Hermite form route.
    Hnf,
    /// Sparse projection route.
    Fglm,
    /// Direct engine in the target order.
    Buchberger,
}

/// A generator system: a prime field, named variables (the last is the
/// distinguished y), and the generators.
#[derive(Debug, Clone)]
pub struct SystemFile {
    pub field: PrimeField,
    pub var_names: Vec<String>,
    pub generators: Vec<MvPoly>,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<SystemFile> {
        let pf = parse_poly_file(text)?;
        if pf.polys.is_empty() {
            return Err(Error::Structure("system file has no generators".into()));
        }
        Ok(SystemFile { field: pf.field, var_names: pf.var_names, generators: pf.polys })
    }

    pub fn read(path: &Path) -> Result<SystemFile> {
        SystemFile::parse(&read_file(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("field: {}\n", self.field.modulus()));
        out.push_str(&format!("vars: {}\n", self.var_names.join(",")));
        for f in &self.generators {
            out.push_str(&format_poly(f, &self.var_names, MonomialOrder::Drl));
            out.push_str(";\n");
        }
        out
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn verbose() -> bool {
    std::env::var("CHANGEORDER_LOG")
        .map(|v| !v.is_empty() && v != "0" && !v.eq_ignore_ascii_case("off"))
        .unwrap_or(false)
}

fn vlog(msg: &str) {
    if verbose() {
        eprintln!("[changeorder] {msg}");
    }
}

/// Variable names x1, …, x_{n−1}, y.
pub fn default_var_names(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
    v.push("y".into());
    v
}

pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve { input, method, gb_drl, seed, output } => {
            cmd_solve(&input, method, gb_drl.as_deref(), seed, &output)
        }
        Command::Random { n, d, p, seed } => {
            let sys = cmd_random(n, d, p, seed)?;
            print!("{}", sys.to_text());
            Ok(0)
        }
        Command::Check { gb } => {
            let report = cmd_check(&gb)?;
            print!("{report}");
            Ok(0)
        }
        Command::Bench { grid, p, seed, reps } => {
            let entries = parse_grid(&grid)?;
            let csv = cmd_bench(&entries, p, seed, reps)?;
            print!("{csv}");
            Ok(0)
        }
    }
}

/// Loads a precomputed DRL basis and audits it against the system: same
/// field and variables, reduced, and every generator reduces to zero.
fn load_drl_gb(path: &Path, sys: &SystemFile) -> Result<GroebnerBasis> {
    let (gb, var_names) = parse_gb_text(&read_file(path)?)?;
    if gb.order() != MonomialOrder::Drl {
        return Err(Error::Structure("precomputed basis must use the drl order".into()));
    }
    if var_names != sys.var_names || gb.field() != sys.field {
        return Err(Error::Structure(
            "precomputed basis does not match the system's field or variables".into(),
        ));
    }
    if !gb.is_reduced() {
        return Err(Error::Structure("precomputed basis is not reduced".into()));
    }
    for g in &sys.generators {
        if !gb.normal_form(g).is_zero() {
            return Err(Error::Inconsistency(
                "a generator does not reduce to zero against the precomputed basis".into(),
            ));
        }
    }
    Ok(gb)
}

/// The direct engine in the target order, packaged with its shape
/// parametrization when it has one, so all methods serialize identically.
fn direct_lex(gens: &[MvPoly]) -> LexOutput {
    let lex_gb = buchberger(gens, MonomialOrder::Lex);
    let shape = shape_from_lex_gb(&lex_gb);
    LexOutput { lex_gb, shape, used_kernel_shortcut: false }
}

fn module_basis_for(
    gb: &GroebnerBasis,
    prof: &StaircaseProfile,
    stable: bool,
) -> Result<ModuleBasis> {
    if stable {
        basis_from_stable_gb(gb, prof)
    } else {
        basis_from_border(gb, prof)
    }
}

pub fn cmd_solve(
    input: &Path,
    method: Method,
    gb_drl: Option<&Path>,
    seed: u64,
    output: &Path,
) -> Result<i32> {
    let sys = SystemFile::read(input)?;
    let n = sys.var_names.len();
    let drl = match gb_drl {
        Some(path) => load_drl_gb(path, &sys)?,
        None => {
            vlog("computing the DRL basis");
            buchberger(&sys.generators, MonomialOrder::Drl)
        }
    };
    let prof = staircase(&drl)?;
    vlog(&format!(
        "dimension D = {}, blocks t = {}",
        prof.dimension(),
        prof.num_blocks()
    ));
    let mut fallback = false;

    let out = match method {
        Method::Buchberger => direct_lex(&sys.generators),
        Method::Hnf => {
            let stable = check_stability(&drl).is_stable();
            if !stable {
                eprintln!("warning: leading terms not stable; using the border route");
                fallback = true;
            }
            let mb = module_basis_for(&drl, &prof, stable)?;
            if !mb.readoff_certified() {
                // C misses 1 or a variable, so the module cannot see the
                // whole LEX basis; delegate to the direct engine. Not a
                // structural fallback: the method is simply out of scope.
                vlog("C misses a variable; the module route cannot apply, using the direct engine");
                direct_lex(&sys.generators)
            } else {
                let hnf = mb.matrix().hermite_normal_form()?;
                let out = read_off_lex(&hnf.h, mb.c_monomials(), None);
                if out.shape.is_none() {
                    fallback = true;
                    eprintln!("warning: no shape detected; writing the minimally filtered basis");
                    if prof.dimension() <= ORACLE_DIM_CAP {
                        let oracle = direct_lex(&sys.generators);
                        if oracle.lex_gb == out.lex_gb {
                            eprintln!("note: the direct engine confirms the filtered basis is complete");
                        } else {
                            eprintln!(
                                "note: the filtered basis is INCOMPLETE ({} of {} elements); \
                                 rerun with --method buchberger for the full basis",
                                out.lex_gb.len(),
                                oracle.lex_gb.len()
                            );
                        }
                    }
                }
                out
            }
        }
        Method::Fglm => {
            let stable = check_stability(&drl).is_stable();
            let m = if stable {
                build_mult_matrix(&drl, &prof)?
            } else {
                eprintln!("warning: leading terms not stable; building the matrix by normal forms");
                fallback = true;
                build_mult_matrix_nf(&drl, &prof)
            };
            match sparse_fglm_shape(&m, &prof, &drl, seed)? {
                Some(shape) => {
                    let lex_gb =
                        GroebnerBasis::from_polys(MonomialOrder::Lex, shape.to_polys(n));
                    LexOutput { lex_gb, shape: Some(shape), used_kernel_shortcut: false }
                }
                None => {
                    eprintln!("warning: no shape detected; using the direct engine");
                    fallback = true;
                    direct_lex(&sys.generators)
                }
            }
        }
    };

    write_file(output, &out.to_text(&sys.var_names))?;
    Ok(if fallback { 2 } else { 0 })
}

/// All monomials in `nvars` variables of total degree at most `d`.
fn monomials_up_to_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(slot: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if slot + 1 == exps.len() {
            for e in 0..=left {
                exps[slot] = e;
                out.push(Monomial::new(exps.clone()));
            }
            exps[slot] = 0;
            return;
        }
        for e in 0..=left {
            exps[slot] = e;
            rec(slot + 1, left - e, exps, out);
        }
        exps[slot] = 0;
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    rec(0, d, &mut exps, &mut out);
    out
}

/// Generates n dense polynomials of total degree d with seeded uniform
/// coefficients; resamples a polynomial if its top-degree slice vanishes,
/// so the system is honestly of degree d. Deterministic per seed.
pub fn cmd_random(n: usize, d: u32, p: u64, seed: u64) -> Result<SystemFile> {
    if n == 0 || d == 0 {
        return Err(Error::Structure("need n ≥ 1 variables and degree d ≥ 1".into()));
    }
    let field = PrimeField::new(p)?;
    let var_names = default_var_names(n);
    let monos = monomials_up_to_degree(n, d);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut generators = Vec::with_capacity(n);
    for _ in 0..n {
        loop {
            let terms: Vec<(Monomial, i64)> = monos
                .iter()
                .map(|m| (m.clone(), crate::fglm::random_element(field, &mut rng).value() as i64))
                .collect();
            let top_alive = terms
                .iter()
                .any(|(m, c)| m.total_degree() == d as u64 && *c != 0);
            if top_alive {
                generators.push(MvPoly::from_terms(field, n, &terms));
                break;
            }
        }
    }
    Ok(SystemFile { field, var_names, generators })
}

pub fn cmd_check(gb_path: &Path) -> Result<String> {
    let (gb, var_names) = parse_gb_text(&read_file(gb_path)?)?;
    let mut out = String::new();
    out.push_str(&format!("order: {}\n", gb.order().name()));
    out.push_str(&format!("elements: {}\n", gb.len()));
    out.push_str(&format!("reduced: {}\n", gb.is_reduced()));
    match staircase(&gb) {
        Err(Error::NotZeroDimensional { var_index }) => {
            out.push_str(&format!(
                "zero-dimensional: false (no pure power of {} among the leading terms)\n",
                var_names[var_index - 1]
            ));
            return Ok(out);
        }
        Err(e) => return Err(e),
        Ok(prof) => {
            out.push_str("zero-dimensional: true\n");
            out.push_str(&format!("dimension D: {}\n", prof.dimension()));
            out.push_str(&format!("blocks t: {}\n", prof.num_blocks()));
            let e: Vec<String> = prof.exponents().iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("exponent profile e: ({})\n", e.join(", ")));
        }
    }
    match check_stability(&gb) {
        Stability::Stable => out.push_str("stable: true\n"),
        Stability::Unstable { monomial, var_slot } => {
            out.push_str(&format!(
                "stable: false (witness: shifting {monomial} from y to {} leaves the leading-term ideal)\n",
                var_names[var_slot]
            ));
        }
    }
    if gb.order() == MonomialOrder::Lex {
        out.push_str(&format!(
            "shape position: {}\n",
            crate::groebner::is_shape_position(&gb)
        ));
    }
    Ok(out)
}

/// Parses "n:d,n:d" grid syntax.
pub fn parse_grid(s: &str) -> Result<Vec<(usize, u32)>> {
    let mut out = Vec::new();
    for (i, part) in s.split(',').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let bad = || Error::Parse {
            line: i + 1,
            msg: format!("grid entry '{part}' is not of the form n:d"),
        };
        let (n, d) = part.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let d: u32 = d.trim().parse().map_err(|_| bad())?;
        if n == 0 || d == 0 {
            return Err(bad());
        }
        out.push((n, d));
    }
    Ok(out)
}

/// One benchmark row: instance shape, per-stage wall times in seconds, and
/// whether every computed route produced the same reduced LEX basis.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub n: usize,
    pub d: u32,
    pub dim: usize,
    pub t: usize,
    pub buchberger_drl: f64,
    pub build_p: f64,
    pub hnf: f64,
    pub read_off: f64,
    pub sparse_fglm: f64,
    pub agreement: bool,
}

pub const BENCH_HEADER: &str = "n,d,D,t,buchberger_drl,build_P,hnf,read_off,sparse_fglm,agreement";

impl BenchRecord {
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{}",
            self.n,
            self.d,
            self.dim,
            self.t,
            self.buchberger_drl,
            self.build_p,
            self.hnf,
            self.read_off,
            self.sparse_fglm,
            self.agreement
        )
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Runs the full pipeline once and times every stage.
pub fn bench_one(n: usize, d: u32, p: u64, seed: u64) -> Result<BenchRecord> {
    let sys = cmd_random(n, d, p, seed)?;

    let t0 = Instant::now();
    let drl = buchberger(&sys.generators, MonomialOrder::Drl);
    let buchberger_drl = t0.elapsed().as_secs_f64();

    let t0 = Instant::now();
    let prof = staircase(&drl)?;
    let stable = check_stability(&drl).is_stable();
    let mb = module_basis_for(&drl, &prof, stable)?;
    let build_p = t0.elapsed().as_secs_f64();
    let dim = prof.dimension();
    let t = prof.num_blocks();

    let t0 = Instant::now();
    let hnf = mb.matrix().hermite_normal_form()?;
    let hnf_time = t0.elapsed().as_secs_f64();

    let t0 = Instant::now();
    let hnf_out = if mb.readoff_certified() {
        Some(read_off_lex(&hnf.h, mb.c_monomials(), None))
    } else {
        None
    };
    let read_off = t0.elapsed().as_secs_f64();

    let t0 = Instant::now();
    let m = if stable { build_mult_matrix(&drl, &prof)? } else { build_mult_matrix_nf(&drl, &prof) };
    let sparse = sparse_fglm_shape(&m, &prof, &drl, splitmix64(seed))?;
    let sparse_fglm = t0.elapsed().as_secs_f64();

    // Agreement across every route that produced a certified basis.
    let mut bases: Vec<GroebnerBasis> = Vec::new();
    if let Some(out) = &hnf_out {
        if out.shape.is_some() {
            bases.push(out.lex_gb.clone());
        }
    }
    if let Some(shape) = &sparse {
        bases.push(GroebnerBasis::from_polys(MonomialOrder::Lex, shape.to_polys(n)));
    }
    if dim <= ORACLE_DIM_CAP {
        bases.push(buchberger(&sys.generators, MonomialOrder::Lex));
        // The uncertified-shape HNF output joins only against the oracle.
        if let Some(out) = &hnf_out {
            if out.shape.is_none() {
                let oracle = bases.last().unwrap();
                if out.lex_gb != *oracle {
                    vlog(&format!(
                        "(n={n}, d={d}) filtered basis incomplete: {} of {}",
                        out.lex_gb.len(),
                        oracle.len()
                    ));
                }
            }
        }
    }
    let agreement = bases.windows(2).all(|w| w[0] == w[1]);

    Ok(BenchRecord {
        n,
        d,
        dim,
        t,
        buchberger_drl,
        build_p,
        hnf: hnf_time,
        read_off,
        sparse_fglm,
        agreement,
    })
}

pub fn cmd_bench(grid: &[(usize, u32)], p: u64, seed: u64, reps: usize) -> Result<String> {
    for &(n, d) in grid {
        let bound = (d as f64).powi(n as i32);
        if bound > BENCH_DIM_CAP as f64 {
            return Err(Error::Structure(format!(
                "grid entry {n}:{d} expects dimension {bound} beyond the desk-scale cap {BENCH_DIM_CAP}"
            )));
        }
    }
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for &(n, d) in grid {
        for rep in 0..reps {
            let instance_seed =
                splitmix64(seed ^ splitmix64((n as u64) << 32 | (d as u64) << 8 | rep as u64));
            let rec = bench_one(n, d, p, instance_seed)?;
            vlog(&format!("bench n={n} d={d} rep={rep}: D={} t={}", rec.dim, rec.t));
            out.push_str(&rec.to_csv_row());
            out.push('\n');
        }
    }
    Ok(out)
}
