//! Ordered Laplace spectra with exact degeneracy grouping and nodal-count
//! sets, for Dirichlet rectangles, separable flat tori, flat Klein bottles
//! and flat tori of dimension 2 and 3.
//!
//! Eigenvalues drop the `π²` / `4π²` prefactor: a rectangle line with value
//! `v` stands for `π²·v`, every other class for `4π²·v`.

mod counts;

use std::fmt;

use num_integer::Roots;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

pub use counts::{
    klein_admissible, nodal_count_klein, nodal_count_lattice, nodal_count_rectangle,
    nodal_count_separable_torus,
};

use crate::error::{Error, Result};
use crate::lattice::{gcd_of, scaled_points, GramMatrix};
use crate::rational::Rational;

/// The family a manifold belongs to. Carries no shape parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ManifoldClass {
    Rectangle,
    SeparableTorus,
    KleinBottle,
    /// Flat torus of the given dimension (2 or 3).
    FlatTorus(u8),
}

impl ManifoldClass {
    /// Command-line / file tag.
    pub fn tag(&self) -> &'static str {
        match self {
            ManifoldClass::Rectangle => "rectangle",
            ManifoldClass::SeparableTorus => "torus",
            ManifoldClass::KleinBottle => "klein",
            ManifoldClass::FlatTorus(2) => "flat-torus-2d",
            ManifoldClass::FlatTorus(_) => "flat-torus-3d",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Ok(match tag {
            "rectangle" => ManifoldClass::Rectangle,
            "torus" => ManifoldClass::SeparableTorus,
            "klein" => ManifoldClass::KleinBottle,
            "flat-torus-2d" => ManifoldClass::FlatTorus(2),
            "flat-torus-3d" => ManifoldClass::FlatTorus(3),
            other => return Err(Error::Domain(format!("unknown manifold class {other:?}"))),
        })
    }

    /// Whether the spectrum contains the constant eigenfunction.
    pub fn has_zero_mode(&self) -> bool {
        !matches!(self, ManifoldClass::Rectangle)
    }
}

impl std::str::FromStr for ManifoldClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ManifoldClass::from_tag(s)
    }
}

impl fmt::Display for ManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Labels of one eigenfunction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantumNumbers {
    /// `(m, n)` of a separable class.
    Pair(i64, i64),
    /// Dual-lattice coefficient vector of a flat torus.
    Vector(Vec<i64>),
}

/// Nodal counts attained within one eigenspace: sorted, distinct, nonempty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountSet(Vec<u64>);

impl CountSet {
    pub fn new(counts: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = counts.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::Domain("nodal count set must be nonempty".into()));
        }
        if v[0] == 0 {
            return Err(Error::Domain("nodal counts are positive".into()));
        }
        Ok(CountSet(v))
    }

    pub fn single(c: u64) -> Self {
        assert!(c > 0);
        CountSet(vec![c])
    }

    pub fn contains(&self, c: u64) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for CountSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

/// Shape parameter that generated a spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameters {
    Alpha2(Rational),
    Gram(GramMatrix),
}

/// One distinct eigenvalue with its count set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralLine {
    /// Eigenvalue times the sequence's common denominator.
    key: u128,
    pub counts: CountSet,
    pub witnesses: Option<Vec<QuantumNumbers>>,
}

/// Ordered spectrum up to (and including) a cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence {
    class: ManifoldClass,
    params: Parameters,
    cutoff: Rational,
    /// Every eigenvalue is `key / scale`.
    scale: u128,
    lines: Vec<SpectralLine>,
}

impl SpectralSequence {
    pub fn class(&self) -> ManifoldClass {
        self.class
    }

    pub fn params(&self) -> &Parameters {
        &self.params
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    pub fn lines(&self) -> &[SpectralLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Exact eigenvalue of line `i`.
    pub fn value(&self, i: usize) -> Rational {
        Rational::from_bigints(self.lines[i].key.into(), self.scale.into())
    }

    pub fn values(&self) -> impl Iterator<Item = Rational> + '_ {
        (0..self.lines.len()).map(|i| self.value(i))
    }

    /// Number of quantum-number labels enumerated (sum of witness counts).
    pub fn witness_count(&self) -> Option<usize> {
        self.lines.iter().map(|l| l.witnesses.as_ref().map(Vec::len)).sum()
    }
}

/// Generation switches.
#[derive(Clone, Copy, Debug)]
pub struct GenerateOptions {
    /// Keep the quantum numbers of every line. On by default; large
    /// reconstruction runs turn it off.
    pub witnesses: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { witnesses: true }
    }
}

/// Spectrum of a rectangle, separable torus or Klein bottle with aspect
/// parameter `alpha2 = α²`, up to `cutoff`.
pub fn generate_separable(class: ManifoldClass, alpha2: &Rational, cutoff: &Rational) -> Result<SpectralSequence> {
    generate_separable_with(class, alpha2, cutoff, GenerateOptions::default())
}

pub fn generate_separable_with(
    class: ManifoldClass,
    alpha2: &Rational,
    cutoff: &Rational,
    opts: GenerateOptions,
) -> Result<SpectralSequence> {
    if !alpha2.is_positive() {
        return Err(Error::Domain(format!("alpha2 must be positive, got {alpha2}")));
    }
    match class {
        ManifoldClass::Rectangle | ManifoldClass::SeparableTorus if *alpha2 > Rational::one() => {
            return Err(Error::Domain(format!("{class} requires alpha2 ≤ 1, got {alpha2}")));
        }
        ManifoldClass::FlatTorus(_) => {
            return Err(Error::Domain("flat tori are generated from a Gram matrix".into()));
        }
        _ => {}
    }
    if !cutoff.is_positive() {
        return Err(Error::Domain(format!("cutoff must be positive, got {cutoff}")));
    }

    // λ = m² + (p/q) n²  ⇒  q·λ = q m² + p n², an integer key.
    let overflow = |what: &str| Error::Overflow(format!("{what} exceeds 128 bits"));
    let p = alpha2.numer().to_u128().ok_or_else(|| overflow("alpha2 numerator"))?;
    let q = alpha2.denom().to_u128().ok_or_else(|| overflow("alpha2 denominator"))?;
    let limit = (cutoff * &Rational::from_integer(alpha2.denom().clone()))
        .floor()
        .to_u128()
        .ok_or_else(|| overflow("cutoff key"))?;

    let m_start: u64 = if class == ManifoldClass::Rectangle { 1 } else { 0 };
    let m_max = (limit / q).sqrt() as u64;
    let mut entries: Vec<(u128, u64, u64)> = (m_start..=m_max)
        .into_par_iter()
        .flat_map_iter(|m| {
            let qm2 = q * (m as u128) * (m as u128);
            let n_max = ((limit - qm2) / p).sqrt() as u64;
            let n_start = match class {
                ManifoldClass::Rectangle => 1,
                ManifoldClass::KleinBottle if m % 2 == 1 => 1,
                _ => 0,
            };
            (n_start..=n_max).map(move |n| (qm2 + p * (n as u128) * (n as u128), m, n))
        })
        .collect();
    entries.par_sort_unstable();

    let count = |m: u64, n: u64| -> u64 {
        match class {
            ManifoldClass::Rectangle => m * n,
            ManifoldClass::SeparableTorus => nodal_count_separable_torus(m, n),
            _ => nodal_count_klein(m as i64, n as i64).expect("enumerated pairs are admissible"),
        }
    };
    let lines = group_lines(&entries, |&(key, m, n)| {
        (key, count(m, n), QuantumNumbers::Pair(m as i64, n as i64))
    }, opts);

    Ok(SpectralSequence {
        class,
        params: Parameters::Alpha2(alpha2.clone()),
        cutoff: cutoff.clone(),
        scale: q,
        lines,
    })
}

/// Spectrum `{qᵀGq}` of the flat torus whose dual lattice has Gram matrix
/// `gram`, up to `cutoff`, including the constant mode.
pub fn generate_flat_torus(gram: &GramMatrix, cutoff: &Rational) -> Result<SpectralSequence> {
    generate_flat_torus_with(gram, cutoff, GenerateOptions::default())
}

pub fn generate_flat_torus_with(gram: &GramMatrix, cutoff: &Rational, opts: GenerateOptions) -> Result<SpectralSequence> {
    if !cutoff.is_positive() {
        return Err(Error::Domain(format!("cutoff must be positive, got {cutoff}")));
    }
    let dim = gram.dim();
    let (scale, points) = scaled_points(gram, cutoff)?;
    let lines = group_lines(&points, |p| {
        let q = &p.q[..dim];
        let nu = match gcd_of(q) {
            0 => 1,
            g => 2 * g,
        };
        (p.key, nu, QuantumNumbers::Vector(q.to_vec()))
    }, opts);
    Ok(SpectralSequence {
        class: ManifoldClass::FlatTorus(dim as u8),
        params: Parameters::Gram(gram.clone()),
        cutoff: cutoff.clone(),
        scale,
        lines,
    })
}

/// Fold key-sorted entries into lines of equal key.
fn group_lines<T>(
    sorted: &[T],
    label: impl Fn(&T) -> (u128, u64, QuantumNumbers),
    opts: GenerateOptions,
) -> Vec<SpectralLine> {
    let mut lines: Vec<SpectralLine> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    let mut witnesses: Vec<QuantumNumbers> = Vec::new();
    let mut current: Option<u128> = None;
    let flush = |key: u128, counts: &mut Vec<u64>, witnesses: &mut Vec<QuantumNumbers>, lines: &mut Vec<SpectralLine>| {
        lines.push(SpectralLine {
            key,
            counts: CountSet::new(counts.drain(..)).expect("every line has a witness"),
            witnesses: opts.witnesses.then(|| std::mem::take(witnesses)),
        });
        witnesses.clear();
    };
    for item in sorted {
        let (key, nu, qn) = label(item);
        if current.is_some_and(|k| k != key) {
            flush(current.unwrap(), &mut counts, &mut witnesses, &mut lines);
        }
        current = Some(key);
        counts.push(nu);
        if opts.witnesses {
            witnesses.push(qn);
        }
    }
    if let Some(k) = current {
        flush(k, &mut counts, &mut witnesses, &mut lines);
    }
    lines
}

/// Reconstruction input: the ordered count sets and nothing else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalSequence {
    class: ManifoldClass,
    entries: Vec<CountSet>,
}

impl NodalSequence {
    pub fn new(class: ManifoldClass, entries: Vec<CountSet>) -> Self {
        NodalSequence { class, entries }
    }

    pub fn class(&self) -> ManifoldClass {
        self.class
    }

    pub fn entries(&self) -> &[CountSet] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The first `len` entries.
    pub fn prefix(&self, len: usize) -> NodalSequence {
        NodalSequence { class: self.class, entries: self.entries[..len.min(self.entries.len())].to_vec() }
    }
}

/// Discard eigenvalues, parameters and witnesses, keeping only the ordered
/// count sets.
pub fn strip(s: &SpectralSequence) -> NodalSequence {
    NodalSequence {
        class: s.class,
        entries: s.lines.iter().map(|l| l.counts.clone()).collect(),
    }
}

impl SpectralSequence {
    /// Whether the first line is the constant mode at value 0.
    pub fn starts_with_zero_mode(&self) -> bool {
        self.lines.first().is_some_and(|l| l.key.is_zero() && l.counts == CountSet::single(1))
    }
}
