//! The `nodalseq` command: argument parsing, sequence files and reports.
//!
//! Exit codes: 0 success, 1 a check failed (round-trip violation or
//! diverging sequences), 2 insufficient prefix, 3 inconsistent sequence,
//! 4 usage, domain, parse or I/O error.

mod file;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use file::{Header, Row, SequenceFile, FORMAT_TAG};

use crate::error::{Error, Result};
use crate::lattice::{canonical_dual_2d, enumerate_values, is_isometric_2d, GramMatrix};
use crate::rational::Rational;
use crate::reconstruct::{
    basic_positions, compare_nodal_sequences, ratio_landmarks, reconstruct_basic_spectrum, reconstruct_flat_torus_2d,
    reconstruct_klein, reconstruct_rectangle, reconstruct_separable_torus, Bracket, Comparison, Landmark,
    ReconstructionResult, DEFAULT_DENOM_MAX,
};
use crate::spectra::{
    generate_flat_torus_with, generate_separable_with, nodal_count_klein, nodal_count_lattice, nodal_count_rectangle,
    nodal_count_separable_torus, strip, GenerateOptions, ManifoldClass, NodalSequence, SpectralSequence,
};

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INSUFFICIENT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

const DECIMALS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "nodalseq", version, about = "Nodal sequences of flat manifolds and shape reconstruction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a spectrum and write it as a sequence file.
    Generate(GenerateArgs),
    /// Recover the shape parameter from a sequence file.
    Reconstruct(ReconstructArgs),
    /// Generate, strip, reconstruct and check the result contains the input.
    Roundtrip(RoundtripArgs),
    /// Tabulate bracket width against landmark index as CSV.
    Convergence(ConvergenceArgs),
    /// Find the first position where two sequence files differ.
    Compare(CompareArgs),
    /// Nodal domain count of a single eigenfunction.
    Count(CountArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ManifoldArgs {
    #[arg(long)]
    pub class: ManifoldClass,
    /// Aspect parameter α² as "p/q" (rectangle, torus, klein).
    #[arg(long)]
    pub alpha2: Option<Rational>,
    /// Dual-lattice Gram matrix as "a,b;b,c" (flat tori).
    #[arg(long)]
    pub gram: Option<GramMatrix>,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub manifold: ManifoldArgs,
    #[arg(long)]
    pub cutoff: Rational,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include parameters, eigenvalues and witnesses.
    #[arg(long)]
    pub disclose: bool,
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Basic eigenvalues to bracket for flat tori.
    #[arg(long, default_value_t = 12)]
    pub basics: usize,
    /// Largest denominator tried when snapping basic values.
    #[arg(long, default_value_t = DEFAULT_DENOM_MAX)]
    pub denom_max: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ReconstructArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub fit: FitArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub manifold: ManifoldArgs,
    #[arg(long)]
    pub cutoff: Rational,
    #[command(flatten)]
    pub fit: FitArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub manifold: ManifoldArgs,
    /// Landmark indices (h, k or m), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub landmarks: Vec<u64>,
    /// Defaults to a cutoff that resolves the largest landmark.
    #[arg(long)]
    pub cutoff: Option<Rational>,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub class: ManifoldClass,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<i64>,
    /// Lattice coefficient vector, comma separated (flat tori).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub q: Vec<i64>,
}

/// Exit code for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InsufficientPrefix(_) => EXIT_INSUFFICIENT,
        Error::InconsistentSequence(_) => EXIT_INCONSISTENT,
        Error::Domain(_) | Error::Overflow(_) | Error::Parse { .. } | Error::Io(_) => EXIT_INPUT,
    }
}

/// Parse `args` (including the program name), run the command and return
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Generate(a) => run_generate(a, out).map(|_| 0),
        Command::Reconstruct(a) => run_reconstruct(&a.input, &a.fit, out).map(|_| 0),
        Command::Roundtrip(a) => run_roundtrip(a, out).map(|pass| if pass { 0 } else { EXIT_CHECK_FAILED }),
        Command::Convergence(a) => run_convergence(a, out).map(|_| 0),
        Command::Compare(a) => run_compare(&a.a, &a.b, out).map(|c| match c {
            Comparison::EqualOnPrefix { .. } => 0,
            Comparison::FirstDivergence(_) => EXIT_CHECK_FAILED,
        }),
        Command::Count(a) => run_count(a, out).map(|_| 0),
    }
}

/// Spectrum for the manifold described on the command line.
pub fn build_spectrum(m: &ManifoldArgs, cutoff: &Rational, opts: GenerateOptions) -> Result<SpectralSequence> {
    match m.class {
        ManifoldClass::FlatTorus(dim) => {
            let gram = m
                .gram
                .as_ref()
                .ok_or_else(|| Error::Domain(format!("{} needs --gram", m.class)))?;
            if gram.dim() != dim as usize {
                return Err(Error::Domain(format!("{} needs a {dim}x{dim} Gram matrix, got {}x{}", m.class, gram.dim(), gram.dim())));
            }
            if m.alpha2.is_some() {
                return Err(Error::Domain("--alpha2 does not apply to flat tori".into()));
            }
            generate_flat_torus_with(gram, cutoff, opts)
        }
        class => {
            let alpha2 = m
                .alpha2
                .as_ref()
                .ok_or_else(|| Error::Domain(format!("{class} needs --alpha2")))?;
            if m.gram.is_some() {
                return Err(Error::Domain(format!("--gram does not apply to {class}")));
            }
            generate_separable_with(class, alpha2, cutoff, opts)
        }
    }
}

pub fn run_generate(a: &GenerateArgs, out: &mut dyn Write) -> Result<SequenceFile> {
    let spectrum = build_spectrum(&a.manifold, &a.cutoff, GenerateOptions { witnesses: a.disclose })?;
    let file = SequenceFile::from_spectrum(&spectrum, a.disclose);
    match &a.out {
        Some(path) => {
            file.write_to(BufWriter::new(File::create(path)?))?;
            writeln!(out, "wrote {} entries to {}", file.rows.len(), path.display())?;
        }
        None => file.write_to(&mut *out)?,
    }
    Ok(file)
}

pub fn read_sequence_file(path: &Path) -> Result<SequenceFile> {
    SequenceFile::read_from(BufReader::new(File::open(path)?))
}

/// Separable-class reconstruction dispatch.
pub fn reconstruct_separable(ns: &NodalSequence) -> Result<ReconstructionResult> {
    match ns.class() {
        ManifoldClass::Rectangle => reconstruct_rectangle(ns),
        ManifoldClass::SeparableTorus => reconstruct_separable_torus(ns),
        ManifoldClass::KleinBottle => reconstruct_klein(ns),
        other => Err(Error::Domain(format!("{other} has no aspect parameter"))),
    }
}

/// Largest `n ≤ wanted` for which all of the first `n` basic eigenvalues
/// can be bracketed.
fn usable_basics(ns: &NodalSequence, wanted: usize) -> Result<usize> {
    let pf = basic_positions(ns)?;
    let n = wanted.min(pf.basic().len());
    Ok((1..n).find(|&j| ratio_landmarks(&pf, 0, j).is_empty()).unwrap_or(n))
}

pub fn run_reconstruct(input: &Path, fit: &FitArgs, out: &mut dyn Write) -> Result<()> {
    let file = read_sequence_file(input)?;
    let ns = file.nodal_sequence()?;
    writeln!(out, "class: {}", ns.class())?;
    writeln!(out, "entries: {}", ns.len())?;
    match ns.class() {
        ManifoldClass::FlatTorus(dim) => {
            let basics = report_basics(&ns, fit.basics, out)?;
            if dim == 2 {
                let gram = reconstruct_flat_torus_2d(&ns, basics.len(), fit.denom_max)?;
                writeln!(out, "gram: {}", gram.to_spec_string())?;
            }
        }
        _ => {
            let res = reconstruct_separable(&ns)?;
            report_result(&res, out)?;
        }
    }
    Ok(())
}

fn report_basics(ns: &NodalSequence, wanted: usize, out: &mut dyn Write) -> Result<Vec<Bracket>> {
    let n = usable_basics(ns, wanted)?;
    let brackets = reconstruct_basic_spectrum(ns, n)?;
    writeln!(out, "target: ratio")?;
    writeln!(out, "basics: {n}")?;
    for (i, b) in brackets.iter().enumerate() {
        writeln!(out, "basic[{i}]: {}", describe(b))?;
    }
    Ok(brackets)
}

fn describe(b: &Bracket) -> String {
    if b.exact {
        format!("Exact {} ({})", b.lo, b.lo.to_decimal(DECIMALS))
    } else {
        format!("[{}, {}] ({}, {})", b.lo, b.hi, b.lo.to_decimal(DECIMALS), b.hi.to_decimal(DECIMALS))
    }
}

fn report_result(res: &ReconstructionResult, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "target: {}", res.target)?;
    writeln!(out, "bracket: {}", describe(&res.bracket))?;
    if res.target != crate::reconstruct::Target::Alpha2 {
        if let Some(a) = res.alpha2_bracket() {
            writeln!(out, "alpha2: {}", describe(&a))?;
        }
    }
    writeln!(out, "exact: {}", res.bracket.exact)?;
    let w = res.bracket.width();
    writeln!(out, "width: {} ({})", w, w.to_decimal(DECIMALS))?;
    writeln!(out, "landmark: {}", res.landmark_index)?;
    writeln!(out, "dropped_leading: {}", res.dropped_leading)?;
    if let Some(w) = &res.warning {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

/// Normalized basic eigenvalues `λ̃_i / λ̃_1` of a flat torus, computed
/// from the Gram matrix directly.
pub fn true_basics(gram: &GramMatrix, count: usize) -> Result<Vec<Rational>> {
    let mut cutoff = crate::lattice::min_value(gram) * Rational::from(count as i64 + 4);
    loop {
        let basics: Vec<Rational> = enumerate_values(gram, &cutoff)?
            .into_iter()
            .filter(|(_, g)| g.contains(&1))
            .map(|(v, _)| v)
            .collect();
        if basics.len() >= count {
            let first = basics[0].clone();
            return Ok(basics[..count].iter().map(|v| v / &first).collect());
        }
        cutoff = &cutoff * &Rational::from(2);
    }
}

pub fn run_roundtrip(a: &RoundtripArgs, out: &mut dyn Write) -> Result<bool> {
    let spectrum = build_spectrum(&a.manifold, &a.cutoff, GenerateOptions { witnesses: false })?;
    let ns = strip(&spectrum);
    writeln!(out, "class: {}", ns.class())?;
    writeln!(out, "entries: {}", ns.len())?;
    let pass = match ns.class() {
        ManifoldClass::FlatTorus(dim) => {
            let gram = a.manifold.gram.as_ref().expect("checked by build_spectrum");
            let brackets = report_basics(&ns, a.fit.basics, out)?;
            let truth = true_basics(gram, brackets.len())?;
            let mut pass = brackets.iter().zip(&truth).all(|(b, t)| b.contains(t));
            writeln!(out, "basics_contained: {pass}")?;
            if dim == 2 {
                let fitted = reconstruct_flat_torus_2d(&ns, brackets.len(), a.fit.denom_max)?;
                let expected = canonical_dual_2d(gram).to_gram();
                let iso = is_isometric_2d(&fitted, &expected);
                writeln!(out, "gram: {}", fitted.to_spec_string())?;
                writeln!(out, "expected: {}", expected.to_spec_string())?;
                writeln!(out, "isometric: {iso}")?;
                pass &= iso;
            }
            pass
        }
        _ => {
            let alpha2 = a.manifold.alpha2.as_ref().expect("checked by build_spectrum");
            let res = reconstruct_separable(&ns)?;
            report_result(&res, out)?;
            res.alpha2_bracket().is_some_and(|b| b.contains(alpha2))
        }
    };
    writeln!(out, "result: {}", if pass { "pass" } else { "FAIL" })?;
    Ok(pass)
}

/// Cutoff that resolves landmark `h` for a separable class.
pub fn convergence_cutoff(alpha2: &Rational, h: u64) -> Rational {
    let one = Rational::one();
    let big = if *alpha2 > one { alpha2.clone() } else { one };
    let h2 = Rational::from(((h + 2) * (h + 2)) as i64);
    Rational::from(4) * h2 * big
}

pub fn run_convergence(a: &ConvergenceArgs, out: &mut dyn Write) -> Result<Vec<Landmark>> {
    let h_max = *a.landmarks.iter().max().expect("clap requires at least one landmark");
    let opts = GenerateOptions { witnesses: false };
    let history: Vec<Landmark> = match a.manifold.class {
        ManifoldClass::FlatTorus(_) => {
            let gram = a.manifold.gram.as_ref().ok_or_else(|| Error::Domain("flat tori need --gram".into()))?;
            let cutoff = match &a.cutoff {
                Some(c) => c.clone(),
                None => {
                    let second = true_basics(gram, 2)?[1].clone() * crate::lattice::min_value(gram);
                    Rational::from(((h_max + 2) * (h_max + 2)) as i64) * second
                }
            };
            let ns = strip(&build_spectrum(&a.manifold, &cutoff, opts)?);
            ratio_landmarks(&basic_positions(&ns)?, 0, 1)
        }
        _ => {
            let alpha2 = a.manifold.alpha2.as_ref().ok_or_else(|| Error::Domain("--alpha2 is required".into()))?;
            let cutoff = a.cutoff.clone().unwrap_or_else(|| convergence_cutoff(alpha2, h_max));
            let ns = strip(&build_spectrum(&a.manifold, &cutoff, opts)?);
            reconstruct_separable(&ns)?.history
        }
    };
    let mut rows = Vec::new();
    for &h in &a.landmarks {
        let lm = history.iter().find(|l| l.index == h).ok_or_else(|| {
            Error::InsufficientPrefix(format!("landmark {h} is not resolvable in the generated prefix"))
        })?;
        rows.push(lm.clone());
    }
    match &a.csv {
        Some(path) => {
            write_convergence_csv(&rows, File::create(path)?)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        None => write_convergence_csv(&rows, &mut *out)?,
    }
    Ok(rows)
}

pub fn write_convergence_csv(rows: &[Landmark], w: impl Write) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    let io = |e: csv::Error| Error::Io(e.into());
    csv.write_record(["h", "lo", "hi", "width", "lo_dec", "hi_dec", "width_dec"]).map_err(io)?;
    for lm in rows {
        let b = &lm.bracket;
        let width = b.width();
        csv.write_record([
            lm.index.to_string(),
            b.lo.to_string(),
            b.hi.to_string(),
            width.to_string(),
            b.lo.to_decimal(DECIMALS),
            b.hi.to_decimal(DECIMALS),
            width.to_decimal(DECIMALS),
        ])
        .map_err(io)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn run_compare(a: &Path, b: &Path, out: &mut dyn Write) -> Result<Comparison> {
    let (fa, fb) = (read_sequence_file(a)?, read_sequence_file(b)?);
    let (na, nb) = (fa.nodal_sequence()?, fb.nodal_sequence()?);
    let cmp = compare_nodal_sequences(&na, &nb)?;
    match cmp {
        Comparison::EqualOnPrefix { len_a, len_b } => {
            writeln!(out, "equal on prefix: {} entries (lengths {len_a} and {len_b})", len_a.min(len_b))?;
        }
        Comparison::FirstDivergence(i) => {
            writeln!(out, "first divergence at index {i}")?;
            writeln!(out, "a: {:?}", na.entries()[i])?;
            writeln!(out, "b: {:?}", nb.entries()[i])?;
        }
    }
    Ok(cmp)
}

pub fn run_count(a: &CountArgs, out: &mut dyn Write) -> Result<u64> {
    let pair = || -> Result<(i64, i64)> {
        match (a.m, a.n) {
            (Some(m), Some(n)) => Ok((m, n)),
            _ => Err(Error::Domain(format!("{} needs --m and --n", a.class))),
        }
    };
    let unsigned = |v: i64| {
        u64::try_from(v).map_err(|_| Error::Domain(format!("{} quantum numbers must be non-negative, got {v}", a.class)))
    };
    let nu = match a.class {
        ManifoldClass::Rectangle => {
            let (m, n) = pair()?;
            nodal_count_rectangle(unsigned(m)?, unsigned(n)?)?
        }
        ManifoldClass::SeparableTorus => {
            let (m, n) = pair()?;
            nodal_count_separable_torus(unsigned(m)?, unsigned(n)?)
        }
        ManifoldClass::KleinBottle => {
            let (m, n) = pair()?;
            nodal_count_klein(m, n)?
        }
        ManifoldClass::FlatTorus(dim) => {
            if a.q.len() != dim as usize {
                return Err(Error::Domain(format!("{} needs --q with {dim} components", a.class)));
            }
            nodal_count_lattice(&a.q)?
        }
    };
    writeln!(out, "{nu}")?;
    Ok(nu)
}
