//! Command-line front end. [`run`] takes the argument list and two writers
//! and returns the exit status: 0 success, 1 theorem or identity failure,
//! 2 usage or input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{commutator_symbol, hyponormality_witness, isometry_defect};
use crate::error::{Error, Result};
use crate::lattice::{IndexBox, SlantOrder};
use crate::operator::{Engine, Mutant};
use crate::suite::{run_suite, Mode, SuiteConfig, TheoremTag, ENGINE_VERSION, FORMAT_VERSION};
use crate::symbol::LaurentSymbol;
use crate::word_syntax::WordExpr;

pub const MODE_ENV: &str = "SLANT_HANKEL_MODE";

fn long_version() -> &'static str {
    concat!(
        env!("CARGO_PKG_VERSION"),
        " (engine ",
        env!("CARGO_PKG_VERSION"),
        ", symbol format 1, word format 1, report format 1)"
    )
}

#[derive(Debug, Parser)]
#[command(name = "slant-hankel", version = long_version(), about = "Exact slant Hankel and slant Toeplitz operator workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Apply an operator word to a vector.
    Apply(ApplyArgs),
    /// Export a matrix window of an operator word.
    Matrix(MatrixArgs),
    /// Search for a hyponormality or isometry witness.
    Witness(WitnessArgs),
    /// Evaluate the product and commutation criteria for two symbols.
    SymbolCheck(SymbolCheckArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2, value_parser = parse_order)]
    pub k: u32,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
    pub cases: u64,
    /// Support radius of random symbols.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub radius: u32,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    pub coeff_bound: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_terms: u64,
    #[arg(long, env = MODE_ENV, default_value = "exact", value_parser = parse_mode)]
    pub mode: Mode,
    /// Comma-separated tags, short (`T2.1`) or full (`T2.1-product-formula`), or `all`.
    #[arg(long, default_value = "all")]
    pub theorems: String,
    /// Inject an engine fault to check that the suite detects it.
    #[arg(long, value_enum)]
    pub mutant: Option<MutantArg>,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MutantArg {
    VSignFlip,
    VIgnoresDivisibility,
    VAdjointWrongDirection,
    VOffByUnit,
    ConjugateKeepsIndex,
}

impl From<MutantArg> for Mutant {
    fn from(m: MutantArg) -> Self {
        match m {
            MutantArg::VSignFlip => Mutant::VSignFlip,
            MutantArg::VIgnoresDivisibility => Mutant::VIgnoresDivisibility,
            MutantArg::VAdjointWrongDirection => Mutant::VAdjointWrongDirection,
            MutantArg::VOffByUnit => Mutant::VOffByUnit,
            MutantArg::ConjugateKeepsIndex => Mutant::ConjugateKeepsIndex,
        }
    }
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    /// Word file.
    #[arg(long)]
    pub word: PathBuf,
    /// Vector in symbol file format.
    #[arg(long)]
    pub vector: PathBuf,
    /// Dimension, needed only when both files leave it open.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[arg(long)]
    pub word: PathBuf,
    /// Output indices `m'`, e.g. "(-2,-2)..(2,2)".
    #[arg(long, allow_hyphen_values = true, value_parser = parse_box)]
    pub rows: IndexBox,
    /// Input indices `m`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_box)]
    pub cols: IndexBox,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
    pub format: MatrixFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Hyponormal,
    Isometry,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, value_enum)]
    pub property: Property,
    #[arg(long)]
    pub symbol: PathBuf,
    #[arg(long, value_parser = parse_order)]
    pub k: u32,
    #[arg(long = "box", allow_hyphen_values = true, value_parser = parse_box)]
    pub search: IndexBox,
}

#[derive(Debug, Args)]
pub struct SymbolCheckArgs {
    #[arg(long)]
    pub phi: PathBuf,
    #[arg(long)]
    pub psi: PathBuf,
    #[arg(long, value_parser = parse_order)]
    pub k: u32,
}

fn parse_order(s: &str) -> std::result::Result<u32, String> {
    let v: i64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{s:?} is not an integer"))?;
    SlantOrder::new(v)
        .map(SlantOrder::get)
        .map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_box(s: &str) -> std::result::Result<IndexBox, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Apply(a) => cmd_apply(a, out),
        Command::Matrix(a) => cmd_matrix(a, out),
        Command::Witness(a) => cmd_witness(a, out),
        Command::SymbolCheck(a) => cmd_symbol_check(a, out),
    }
}

pub fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = SuiteConfig {
        k: a.k,
        n: a.n as usize,
        seed: a.seed,
        cases: a.cases as usize,
        support_radius: a.radius,
        coeff_bound: a.coeff_bound,
        max_terms: a.max_terms as usize,
        mode: a.mode,
        theorems: TheoremTag::parse_list(&a.theorems)?,
        mutant: a.mutant.map(Mutant::from),
    };
    let report = run_suite(&cfg)?;
    if let Some(path) = &a.out {
        std::fs::write(path, report.to_json())
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    if a.json {
        write!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.to_table())?;
    }
    Ok(report.exit_code())
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_symbol(path: &Path, dim_hint: Option<usize>) -> Result<LaurentSymbol> {
    LaurentSymbol::parse(&read_file(path)?, dim_hint)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_word(path: &Path, dim_hint: Option<usize>) -> Result<crate::operator::OperatorWord> {
    let text = read_file(path)?;
    WordExpr::parse(&text)
        .and_then(|w| w.bind(dim_hint, path.parent()))
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn symbol_dim(path: &Path) -> Result<Option<usize>> {
    let terms = crate::symbol::parse_symbol_terms(&read_file(path)?)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    Ok(terms.first().map(|(m, _, _)| m.dim()))
}

pub fn cmd_apply(a: ApplyArgs, out: &mut dyn Write) -> Result<i32> {
    let hint = match (a.n, symbol_dim(&a.vector)?) {
        (Some(n), Some(d)) if n != d => {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d,
            })
        }
        (Some(n), _) => Some(n),
        (None, d) => d,
    };
    let word = read_word(&a.word, hint)?;
    let v = read_symbol(&a.vector, Some(word.dim()))?;
    let image = Engine::exact().apply(&word, &v)?;
    write!(out, "{}", image.to_symbol_text())?;
    Ok(0)
}

pub fn cmd_matrix(a: MatrixArgs, out: &mut dyn Write) -> Result<i32> {
    Error::check_dim(a.rows.dim(), a.cols.dim())?;
    let word = read_word(&a.word, Some(a.rows.dim()))?;
    let wnd = Engine::exact().matrix_window(&word, &a.rows, &a.cols)?;
    match a.format {
        MatrixFormat::Csv => write!(out, "{}", wnd.to_csv()?)?,
        MatrixFormat::Json => writeln!(out, "{}", wnd.to_json())?,
    }
    Ok(0)
}

pub fn cmd_witness(a: WitnessArgs, out: &mut dyn Write) -> Result<i32> {
    let k = SlantOrder::new(i64::from(a.k))?;
    let phi = read_symbol(&a.symbol, Some(a.search.dim()))?;
    let engine = Engine::exact();
    match a.property {
        Property::Hyponormal => {
            match hyponormality_witness(&engine, &phi, k, &a.search)? {
                Some(w) => writeln!(
                    out,
                    "witness m={}  |S* e_m|^2={}  |S e_m|^2={}",
                    w.m, w.adjoint_norm_sq, w.norm_sq
                )?,
                None => writeln!(out, "none in box {}", a.search)?,
            }
            Ok(0)
        }
        Property::Isometry => {
            let r = isometry_defect(&engine, &phi, k, &a.search)?;
            writeln!(
                out,
                "max defect {} at m={}  |S e_m|^2={}",
                r.max_defect, r.at, r.norm_sq_at
            )?;
            if let Some(g) = &r.gram {
                writeln!(
                    out,
                    "non-orthogonal images: <S e_{}, S e_{}> = {}",
                    g.m1, g.m2, g.inner
                )?;
            }
            if r.isometric_on_box() {
                writeln!(out, "none in box {}", a.search)?;
            }
            writeln!(
                out,
                "identity S S* = M_V(|phi|^2): {}",
                if r.identity.holds { "holds" } else { "fails" }
            )?;
            if let Some(v) = &r.identity.violation {
                writeln!(
                    out,
                    "  at m={} m'={}: {} vs {}",
                    v.m.as_ref().map(ToString::to_string).unwrap_or_default(),
                    v.m_prime
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    v.lhs,
                    v.rhs
                )?;
            }
            Ok(if r.identity.holds { 0 } else { 1 })
        }
    }
}

pub fn cmd_symbol_check(a: SymbolCheckArgs, out: &mut dyn Write) -> Result<i32> {
    let k = SlantOrder::new(i64::from(a.k))?;
    let hint = symbol_dim(&a.phi)?.or(symbol_dim(&a.psi)?);
    let phi = read_symbol(&a.phi, hint)?;
    let psi = read_symbol(&a.psi, hint)?;
    let product = phi.substitute_neg_k(k).checked_mul(&psi)?;
    let sigma = commutator_symbol(&phi, &psi, k)?;
    writeln!(
        out,
        "product criterion phi(z^-k) psi = 0: {}",
        if product.is_zero() { "holds" } else { "fails" }
    )?;
    writeln!(out, "  residual: {product}")?;
    writeln!(
        out,
        "commutation criterion phi(z^-k) psi = psi(z^-k) phi: {}",
        if sigma.is_zero() { "holds" } else { "fails" }
    )?;
    writeln!(out, "  residual: {sigma}")?;
    Ok(0)
}

/// Engine, format and report versions.
pub fn versions() -> (&'static str, &'static str) {
    (ENGINE_VERSION, FORMAT_VERSION)
}
