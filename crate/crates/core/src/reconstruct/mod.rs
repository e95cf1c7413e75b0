//! Inverse algorithms: recover the shape parameter of a rectangle, separable
//! torus or Klein bottle, or the basic spectrum and lattice of a flat torus,
//! from a [`NodalSequence`] alone.
//!
//! Every routine here takes a `NodalSequence`, which holds count sets and
//! nothing else, so no code path can consult eigenvalues or witnesses.
//!
//! The common idea: a nodal count that only a few quantum numbers can
//! produce pins down which closed-form eigenvalue sits at a position
//! ("landmark"). Comparing positions of two interleaved landmark families
//! gives integer thresholds, which in turn give rational bounds on the
//! parameter that shrink as the landmark index grows.

mod compare;
mod flat_torus;
mod klein;
mod rectangle;
mod torus;

use std::collections::HashMap;
use std::fmt;

pub use compare::{compare_nodal_sequences, Comparison};
pub use flat_torus::{
    basic_positions, ratio_bracket, ratio_landmarks, reconstruct_basic_spectrum, reconstruct_flat_torus_2d,
    PositionFamily, DEFAULT_DENOM_MAX,
};
pub use klein::{
    klein_four_test, klein_quarter_test, klein_regime, reconstruct_klein, FourTest, QuarterTest, RegimeDecision,
};
pub use rectangle::{locate_rectangle_landmarks, reconstruct_rectangle, LandmarkTable};
pub use torus::reconstruct_separable_torus;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::spectra::{ManifoldClass, NodalSequence};

/// Closed rational interval `[lo, hi]`; `exact` means `lo == hi` was derived
/// from a coincidence of positions rather than squeezed by bounds.
#[derive(Clone, PartialEq, Eq)]
pub struct Bracket {
    pub lo: Rational,
    pub hi: Rational,
    pub exact: bool,
}

impl Bracket {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "bracket lower end {lo} exceeds upper end {hi}");
        Bracket { lo, hi, exact: false }
    }

    pub fn exact(v: Rational) -> Self {
        Bracket { lo: v.clone(), hi: v, exact: true }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn intersect(&self, other: &Bracket) -> Option<Bracket> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Bracket { lo, hi, exact: self.exact || other.exact })
    }

    /// Bracket on the reciprocal; `None` when the lower end is not positive.
    pub fn reciprocal(&self) -> Option<Bracket> {
        self.lo.is_positive().then(|| Bracket { lo: self.hi.recip(), hi: self.lo.recip(), exact: self.exact })
    }
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "Exact({})", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// Which quantity a bracket bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Alpha2,
    InverseAlpha2,
    Ratio,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Alpha2 => "alpha2",
            Target::InverseAlpha2 => "inverse_alpha2",
            Target::Ratio => "ratio",
        })
    }
}

/// One step of a bracketing sweep: landmark index `index` (h, k or m),
/// thresholds `lower`/`upper` (h∓, k∓, or m_max and m_max+1) and the
/// resulting bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Landmark {
    pub index: u64,
    pub lower: u64,
    pub upper: u64,
    pub bracket: Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub target: Target,
    pub bracket: Bracket,
    /// Largest landmark index the result rests on.
    pub landmark_index: u64,
    /// Every landmark evaluated, ascending in index.
    pub history: Vec<Landmark>,
    /// Leading history entries discarded as not yet asymptotic.
    pub dropped_leading: usize,
    pub warning: Option<String>,
}

impl ReconstructionResult {
    fn exact(target: Target, value: Rational, landmark_index: u64, history: Vec<Landmark>) -> Self {
        ReconstructionResult {
            target,
            bracket: Bracket::exact(value),
            landmark_index,
            history,
            dropped_leading: 0,
            warning: None,
        }
    }

    /// Bracket for α² regardless of which quantity was bounded.
    pub fn alpha2_bracket(&self) -> Option<Bracket> {
        match self.target {
            Target::Alpha2 => Some(self.bracket.clone()),
            Target::InverseAlpha2 => self.bracket.reciprocal(),
            Target::Ratio => None,
        }
    }

    /// Bracket at landmark `index`, if that landmark was evaluated.
    pub fn bracket_at(&self, index: u64) -> Option<&Bracket> {
        self.history.iter().find(|l| l.index == index).map(|l| &l.bracket)
    }
}

/// Result from a finished sweep where every bracket is rigorous: the
/// largest-index bracket, or Exact if any landmark hit a coincidence.
fn finish_rigorous(target: Target, history: Vec<Landmark>) -> Result<ReconstructionResult> {
    if let Some(hit) = history.iter().find(|l| l.bracket.exact) {
        return Ok(ReconstructionResult::exact(target, hit.bracket.lo.clone(), hit.index, history));
    }
    let last = history.last().expect("caller checked the sweep is nonempty");
    let warning = history
        .iter()
        .any(|l| l.bracket.intersect(&last.bracket).is_none())
        .then(|| "earlier brackets are disjoint from the final one; the prefix may be truncated".to_string());
    Ok(ReconstructionResult {
        target,
        bracket: last.bracket.clone(),
        landmark_index: last.index,
        dropped_leading: 0,
        warning,
        history,
    })
}

/// Result from a sweep whose landmark identifications only hold for large
/// indices: drop the shortest leading run of brackets whose removal makes
/// the rest share a common point, report the largest-index bracket, and
/// accept an exact hit only if it lies in every retained bracket.
fn finish_asymptotic(target: Target, history: Vec<Landmark>) -> Result<ReconstructionResult> {
    let n = history.len();
    assert!(n > 0);
    // Suffix intersections, computed from the back.
    let mut common: Vec<Option<Bracket>> = vec![None; n];
    let mut acc = Some(history[n - 1].bracket.clone());
    common[n - 1] = acc.clone();
    for i in (0..n - 1).rev() {
        acc = acc.and_then(|a| a.intersect(&history[i].bracket));
        common[i] = acc.clone();
    }
    let start = (0..n).find(|&i| common[i].is_some()).expect("last suffix is nonempty");
    let kept = common[start].clone().expect("found above");
    let warning = (start > 0).then(|| format!("dropped {start} leading pre-asymptotic brackets"));
    if let Some(hit) = history[start..].iter().rev().find(|l| l.bracket.exact && kept.contains(&l.bracket.lo)) {
        let mut res = ReconstructionResult::exact(target, hit.bracket.lo.clone(), hit.index, history);
        res.dropped_leading = start;
        res.warning = warning;
        return Ok(res);
    }
    let last = &history[n - 1];
    Ok(ReconstructionResult {
        target,
        bracket: last.bracket.clone(),
        landmark_index: last.index,
        dropped_leading: start,
        warning,
        history,
    })
}

/// `(a² - 1) / (b² - 1)` for `b ≥ 2`.
pub(crate) fn square_ratio(a: u64, b: u64) -> Rational {
    let (a, b) = (a as i64, b as i64);
    Rational::new(a * a - 1, b * b - 1)
}

/// Positions of every count, ascending.
pub(crate) struct CountIndex {
    map: HashMap<u64, Vec<usize>>,
}

impl CountIndex {
    pub fn new(ns: &NodalSequence) -> Self {
        let mut map: HashMap<u64, Vec<usize>> = HashMap::new();
        for (pos, set) in ns.entries().iter().enumerate() {
            for c in set.iter() {
                map.entry(c).or_default().push(pos);
            }
        }
        CountIndex { map }
    }

    pub fn positions(&self, count: u64) -> &[usize] {
        self.map.get(&count).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn counts(&self) -> impl Iterator<Item = u64> + '_ {
        self.map.keys().copied()
    }
}

pub(crate) fn require_class(ns: &NodalSequence, class: ManifoldClass) -> Result<()> {
    if ns.class() != class {
        return Err(Error::Domain(format!("expected a {class} nodal sequence, got {}", ns.class())));
    }
    Ok(())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn divisor_count(n: u64) -> u64 {
    let mut count = 0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            count += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    count
}
