use std::collections::{BTreeMap, BTreeSet};

use super::{finish_rigorous, is_prime, require_class, square_ratio, Bracket, CountIndex, Landmark, ReconstructionResult, Target};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::spectra::{ManifoldClass, NodalSequence};

/// Where the two landmark families of a rectangle with `α < 1` sit.
///
/// For a prime `p`, count `p` comes only from `(1, p)` at `1 + α²p²` and
/// `(p, 1)` at `p² + α²`, so it occupies exactly two positions.
/// `pos_sq_plus` extends to every `N` up to the largest such prime as the
/// last position containing `N`, which is where `N² + α²` lands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LandmarkTable {
    /// Position of `1 + α²p²` for each two-position prime `p`.
    pub pos_one_plus: BTreeMap<u64, usize>,
    /// Position of `N² + α²` for `1 ≤ N ≤` the largest two-position prime.
    pub pos_sq_plus: BTreeMap<u64, usize>,
    /// Primes whose two landmarks coincide (`α = 1`).
    pub merged: BTreeSet<u64>,
}

impl LandmarkTable {
    fn largest_prime(&self) -> Option<u64> {
        self.pos_one_plus.keys().next_back().copied()
    }
}

fn is_trivial_rectangle_prefix(ns: &NodalSequence) -> bool {
    ns.entries().iter().enumerate().all(|(i, s)| s.as_slice() == [i as u64 + 1])
}

pub fn locate_rectangle_landmarks(ns: &NodalSequence) -> Result<LandmarkTable> {
    require_class(ns, ManifoldClass::Rectangle)?;
    let idx = CountIndex::new(ns);
    let mut primes: Vec<u64> = idx.counts().filter(|&c| is_prime(c)).collect();
    primes.sort_unstable();

    let mut table = LandmarkTable::default();
    let mut single = Vec::new();
    for &p in &primes {
        match *idx.positions(p) {
            [lo, _] => {
                table.pos_one_plus.insert(p, lo);
            }
            [_] => single.push(p),
            ref more => {
                return Err(Error::InconsistentSequence(format!(
                    "prime count {p} appears at {} positions; a rectangle allows at most 2",
                    more.len()
                )))
            }
        }
    }

    let Some(p_max) = table.largest_prime() else {
        if !is_trivial_rectangle_prefix(ns) {
            table.merged = single.into_iter().collect();
        }
        return Ok(table);
    };

    if let Some(&p) = single.iter().find(|&&p| p < p_max) {
        return Err(Error::InconsistentSequence(format!(
            "prime {p} appears once although the larger prime {p_max} appears twice"
        )));
    }
    let mut prev = None;
    for n in 1..=p_max {
        let Some(pos) = hi_of(&idx, n) else {
            return Err(Error::InconsistentSequence(format!(
                "count {n} is missing although {p_max}² + α² lies in the prefix"
            )));
        };
        if prev.is_some_and(|q| q >= pos) {
            return Err(Error::InconsistentSequence(format!(
                "the last position of count {n} does not increase with {n}"
            )));
        }
        prev = Some(pos);
        table.pos_sq_plus.insert(n, pos);
    }
    for (&p, &lo) in &table.pos_one_plus {
        if lo >= table.pos_sq_plus[&p] {
            return Err(Error::InconsistentSequence(format!("landmarks of prime {p} are out of order")));
        }
    }
    Ok(table)
}

fn hi_of(idx: &CountIndex, n: u64) -> Option<usize> {
    idx.positions(n).last().copied()
}

/// Bracket `α²` for a rectangle with `α ≤ 1` from its nodal sequence.
///
/// For each two-position prime `h`, `h∓` are the largest `i` with
/// `i² + α²` below `1 + α²h²` and the next one above, giving
/// `(h∓² - 1)/(h² - 1)` as bounds. Equal positions give the value exactly.
pub fn reconstruct_rectangle(ns: &NodalSequence) -> Result<ReconstructionResult> {
    let table = locate_rectangle_landmarks(ns)?;
    let Some(p_max) = table.largest_prime() else {
        if let Some(&p) = table.merged.first() {
            return Ok(ReconstructionResult::exact(Target::Alpha2, Rational::one(), p, Vec::new()));
        }
        return Err(Error::InsufficientPrefix(format!(
            "no prime count occurs at two positions among {} entries; the largest prime landmark attempted is absent",
            ns.len()
        )));
    };

    let sq: Vec<usize> = (1..=p_max).map(|n| table.pos_sq_plus[&n]).collect();
    let mut history = Vec::new();
    for (&h, &target) in &table.pos_one_plus {
        // sq[i - 1] is the position of i² + α², increasing in i.
        let h_minus = sq.partition_point(|&p| p < target) as u64;
        let next = h_minus + 1;
        let landmark = if sq[next as usize - 1] == target {
            let v = square_ratio(next, h);
            Landmark { index: h, lower: next, upper: next, bracket: Bracket::exact(v) }
        } else {
            Landmark {
                index: h,
                lower: h_minus,
                upper: next,
                bracket: Bracket::new(square_ratio(h_minus, h), square_ratio(next, h)),
            }
        };
        history.push(landmark);
    }
    finish_rigorous(Target::Alpha2, history)
}
