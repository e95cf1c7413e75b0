//! Klein bottle reconstruction.
//!
//! With eigenvalues `m² + α²n²`, count `2i` comes from `(0, 2i-1)`,
//! `(2i, 0)` and the `τ(i)` factorisations `mn = i`, so a complete and
//! unmerged count-`2i` set has `τ(i) + 2` positions. Odd counts `n + 1`
//! come only from `(0, n)`. Which member of the count-`2i` set is `i² + α²`
//! (or `1 + α²i²`) depends on the regime, so the regime is settled first.

use std::collections::BTreeMap;

use super::{
    divisor_count, finish_asymptotic, is_prime, require_class, square_ratio, Bracket, CountIndex, Landmark,
    ReconstructionResult, Target,
};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::spectra::{ManifoldClass, NodalSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegimeDecision {
    Less1,
    Greater1,
    Exact(Rational),
}

/// Position of α² relative to 1/4 when α < 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuarterTest {
    Above1_4,
    AtMost1_4,
}

/// Position of α² relative to 4 when α > 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FourTest {
    Above4,
    Below4,
    Exact(Rational),
}

fn single_position(idx: &CountIndex, count: u64) -> Result<Option<usize>> {
    match *idx.positions(count) {
        [] => Ok(None),
        [p] => Ok(Some(p)),
        ref more => Err(Error::InconsistentSequence(format!(
            "count {count} appears at {} positions; a Klein bottle has it at one",
            more.len()
        ))),
    }
}

/// Decide α < 1, α > 1 or an exact value from where count 3 (at `4α²`)
/// falls among the count-2 positions (`α²`, `1 + α²`, `4`).
pub fn klein_regime(ns: &NodalSequence) -> Result<RegimeDecision> {
    require_class(ns, ManifoldClass::KleinBottle)?;
    let idx = CountIndex::new(ns);
    klein_regime_idx(&idx)
}

fn klein_regime_idx(idx: &CountIndex) -> Result<RegimeDecision> {
    let p_star = single_position(idx, 3)?
        .ok_or_else(|| Error::InsufficientPrefix("count 3 (the (0, 2) line) is not in the prefix".into()))?;
    let s = idx.positions(2);
    if s.len() > 3 {
        return Err(Error::InconsistentSequence(format!("count 2 appears at {} positions, at most 3 allowed", s.len())));
    }
    let insufficient = || {
        Error::InsufficientPrefix(format!(
            "count 2 appears at {} positions and count 3 at position {p_star}; the regime is undetermined",
            s.len()
        ))
    };
    let below_p_star = |p: usize| p < p_star;
    match *s {
        [s0, s1, s2] => Ok(if p_star > s2 {
            RegimeDecision::Greater1
        } else if p_star == s2 {
            RegimeDecision::Exact(Rational::one())
        } else if p_star > s1 {
            RegimeDecision::Less1
        } else if p_star == s1 {
            RegimeDecision::Exact(Rational::new(1, 3))
        } else if p_star > s0 {
            RegimeDecision::Less1
        } else {
            return Err(Error::InconsistentSequence("count 3 precedes every count-2 position".into()));
        }),
        [s0, s1] => {
            if p_star > s1 {
                // Two count-2 lines merged (α² = 3 or 4), or the prefix stops
                // before 4. Only the first puts a count 4 at or before 4α².
                if idx.positions(4).iter().any(|&p| p <= p_star) {
                    Ok(RegimeDecision::Greater1)
                } else {
                    Err(insufficient())
                }
            } else if p_star == s1 {
                Ok(RegimeDecision::Exact(Rational::new(1, 3)))
            } else if below_p_star(s0) {
                Ok(RegimeDecision::Less1)
            } else {
                Err(Error::InconsistentSequence("count 3 precedes every count-2 position".into()))
            }
        }
        _ => Err(insufficient()),
    }
}

/// For α < 1: compare α² with 1/4. For prime `k` the count-`2k` set has
/// four positions and `k² + α²` lies below `4α²k²` (count `2k+1`) only
/// when `α² > k²/(4k²-1) > 1/4`.
pub fn klein_quarter_test(ns: &NodalSequence) -> Result<QuarterTest> {
    require_class(ns, ManifoldClass::KleinBottle)?;
    klein_quarter_test_idx(&CountIndex::new(ns))
}

fn klein_quarter_test_idx(idx: &CountIndex) -> Result<QuarterTest> {
    let mut usable = 0;
    for k in prime_counts(idx) {
        let set = idx.positions(2 * k);
        if set.len() != 4 {
            continue;
        }
        let Some(odd) = single_position(idx, 2 * k + 1)? else { continue };
        usable += 1;
        if set.iter().filter(|&&p| p < odd).count() >= 3 {
            return Ok(QuarterTest::Above1_4);
        }
    }
    if usable == 0 {
        return Err(Error::InsufficientPrefix(
            "no prime k has a complete count-2k set together with count 2k+1".into(),
        ));
    }
    Ok(QuarterTest::AtMost1_4)
}

/// For α > 1: compare α² with 4 by counting count-4 positions (at `9α²`,
/// `16`, `1 + 4α²`, `4 + α²`) below count 3 (at `4α²`).
pub fn klein_four_test(ns: &NodalSequence) -> Result<FourTest> {
    require_class(ns, ManifoldClass::KleinBottle)?;
    klein_four_test_idx(&CountIndex::new(ns))
}

fn klein_four_test_idx(idx: &CountIndex) -> Result<FourTest> {
    let p_star = single_position(idx, 3)?
        .ok_or_else(|| Error::InsufficientPrefix("count 3 is not in the prefix".into()))?;
    let fours = idx.positions(4);
    let below = fours.iter().filter(|&&p| p < p_star).count();
    let at = fours.contains(&p_star);
    Ok(match (below, at) {
        (1, true) => FourTest::Exact(Rational::from(4)),
        (0, true) => FourTest::Exact(Rational::new(4, 3)),
        (2, _) => FourTest::Above4,
        (0 | 1, false) => FourTest::Below4,
        _ => {
            return Err(Error::InconsistentSequence(format!(
                "{below} count-4 positions precede count 3; at most 2 can"
            )))
        }
    })
}

fn prime_counts(idx: &CountIndex) -> Vec<u64> {
    let mut ks: Vec<u64> = idx.counts().filter(|c| c % 2 == 0 && is_prime(c / 2)).map(|c| c / 2).collect();
    ks.sort_unstable();
    ks
}

/// Bracket α² (α < 1) or α⁻² (α > 1) for a flat Klein bottle.
///
/// The member of each complete count-`2i` set at rank `r` from the top is
/// taken as `i² + α²` (α < 1; `r` is 3 above 1/4, 2 below) or `1 + α²i²`
/// (α > 1; `r` is 2 above 4, 3 below). For prime `k` the smallest member
/// of the count-`2k` set is `1 + α²k²` or `k² + α²` respectively. These
/// identifications hold for large indices only, so leading brackets that
/// contradict the tail are dropped and reported.
pub fn reconstruct_klein(ns: &NodalSequence) -> Result<ReconstructionResult> {
    require_class(ns, ManifoldClass::KleinBottle)?;
    let idx = CountIndex::new(ns);
    let (target, rank) = match klein_regime_idx(&idx)? {
        RegimeDecision::Exact(v) => return Ok(ReconstructionResult::exact(Target::Alpha2, v, 1, Vec::new())),
        RegimeDecision::Less1 => match klein_quarter_test_idx(&idx)? {
            QuarterTest::Above1_4 => (Target::Alpha2, 3),
            QuarterTest::AtMost1_4 => (Target::Alpha2, 2),
        },
        RegimeDecision::Greater1 => match klein_four_test_idx(&idx)? {
            FourTest::Exact(v) => return Ok(ReconstructionResult::exact(Target::Alpha2, v, 2, Vec::new())),
            FourTest::Above4 => (Target::InverseAlpha2, 2),
            FourTest::Below4 => (Target::InverseAlpha2, 3),
        },
    };

    // Identified interleaving family: i -> position.
    let mut family: BTreeMap<u64, usize> = BTreeMap::new();
    for c in idx.counts().filter(|c| c % 2 == 0) {
        let i = c / 2;
        let set = idx.positions(c);
        if set.len() as u64 == divisor_count(i) + 2 {
            family.insert(i, set[set.len() - rank]);
        }
    }

    let mut history = Vec::new();
    for k in prime_counts(&idx) {
        let set = idx.positions(2 * k);
        if set.len() != 4 {
            continue;
        }
        let pos = set[0];
        let Some(k_minus) = family.iter().filter(|(_, &p)| p < pos).map(|(&i, _)| i).max() else { continue };
        let Some(&next_pos) = family.get(&(k_minus + 1)) else { continue };
        let next = k_minus + 1;
        let landmark = if next_pos == pos {
            Landmark { index: k, lower: next, upper: next, bracket: Bracket::exact(square_ratio(next, k)) }
        } else {
            Landmark {
                index: k,
                lower: k_minus,
                upper: next,
                bracket: Bracket::new(square_ratio(k_minus, k), square_ratio(next, k)),
            }
        };
        history.push(landmark);
    }
    if history.is_empty() {
        return Err(Error::InsufficientPrefix(format!(
            "no prime landmark could be bracketed among {} entries",
            ns.len()
        )));
    }
    finish_asymptotic(target, history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{generate_separable, strip};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ns(alpha2: &str, cutoff: &str) -> NodalSequence {
        strip(&generate_separable(ManifoldClass::KleinBottle, &r(alpha2), &r(cutoff)).unwrap())
    }

    #[test]
    fn regimes() {
        assert_eq!(klein_regime(&ns("1/5", "40")).unwrap(), RegimeDecision::Less1);
        assert_eq!(klein_regime(&ns("1/2", "40")).unwrap(), RegimeDecision::Less1);
        assert_eq!(klein_regime(&ns("1/3", "40")).unwrap(), RegimeDecision::Exact(r("1/3")));
        assert_eq!(klein_regime(&ns("1", "40")).unwrap(), RegimeDecision::Exact(r("1")));
        assert_eq!(klein_regime(&ns("2", "40")).unwrap(), RegimeDecision::Greater1);
        assert_eq!(klein_regime(&ns("3", "60")).unwrap(), RegimeDecision::Greater1);
        assert_eq!(klein_regime(&ns("4", "80")).unwrap(), RegimeDecision::Greater1);
    }

    #[test]
    fn quarter_and_four_tests() {
        assert_eq!(klein_quarter_test(&ns("1/2", "400")).unwrap(), QuarterTest::Above1_4);
        assert_eq!(klein_quarter_test(&ns("1/5", "400")).unwrap(), QuarterTest::AtMost1_4);
        assert_eq!(klein_four_test(&ns("9", "200")).unwrap(), FourTest::Above4);
        assert_eq!(klein_four_test(&ns("2", "200")).unwrap(), FourTest::Below4);
        assert_eq!(klein_four_test(&ns("4", "200")).unwrap(), FourTest::Exact(r("4")));
        assert_eq!(klein_four_test(&ns("4/3", "200")).unwrap(), FourTest::Exact(r("4/3")));
    }

    #[test]
    fn brackets_contain_truth() {
        for a in ["1/2", "2/7", "5/3", "7"] {
            let res = reconstruct_klein(&ns(a, "20000")).unwrap();
            let b = res.alpha2_bracket().unwrap();
            assert!(b.contains(&r(a)), "{a}: {b:?}");
        }
    }
}
