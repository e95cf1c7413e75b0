use super::{finish_rigorous, require_class, Bracket, CountIndex, Landmark, ReconstructionResult, Target};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::spectra::{ManifoldClass, NodalSequence};

/// `[{1}, {2}, {4}, {6}, ...]`, the start of every sequence with α² small
/// enough that only `(0, n)` lines have appeared.
fn is_trivial_torus_prefix(ns: &NodalSequence) -> bool {
    ns.entries().iter().enumerate().all(|(i, s)| {
        let expected = if i == 0 { 1 } else { 2 * i as u64 };
        s.as_slice() == [expected]
    })
}

/// Bracket `α²` for a separable torus with `α ≤ 1`.
///
/// For odd `k`, count `2k` comes only from `(0, k)` at `α²k²` and `(k, 0)`
/// at `k²`. Comparing where `α²h²` falls among the `i²` (odd `i`) gives
/// `(h∓/h)²` as bounds.
pub fn reconstruct_separable_torus(ns: &NodalSequence) -> Result<ReconstructionResult> {
    require_class(ns, ManifoldClass::SeparableTorus)?;
    let idx = CountIndex::new(ns);

    // (low, high) positions for odd k = 1, 3, 5, ... while both are present.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut k = 1u64;
    loop {
        match *idx.positions(2 * k) {
            [lo, hi] => pairs.push((lo, hi)),
            [] | [_] => break,
            ref more => {
                return Err(Error::InconsistentSequence(format!(
                    "count {} appears at {} positions; a separable torus allows at most 2",
                    2 * k,
                    more.len()
                )))
            }
        }
        k += 2;
    }
    if pairs.is_empty() {
        if idx.positions(2).len() == 1 && !is_trivial_torus_prefix(ns) {
            return Ok(ReconstructionResult::exact(Target::Alpha2, Rational::one(), 1, Vec::new()));
        }
        return Err(Error::InsufficientPrefix(format!(
            "count 2 does not occur at two positions among {} entries; no odd landmark is available",
            ns.len()
        )));
    }

    let k_max = 2 * pairs.len() as u64 - 1;
    let max_count = idx.counts().max().unwrap_or(0);
    if let Some(stray) = (k_max + 2..)
        .step_by(2)
        .take_while(|&k| 2 * k <= max_count)
        .find(|&k| idx.positions(2 * k).len() == 2)
    {
        return Err(Error::InconsistentSequence(format!(
            "count {} appears twice although count {} does not",
            2 * stray,
            2 * (k_max + 2)
        )));
    }

    let highs: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    if highs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InconsistentSequence("positions of k² are not increasing in k".into()));
    }
    let odd = |c: usize| 2 * c as u64 + 1;
    let sq_ratio = |i: u64, h: u64| Rational::new((i * i) as i64, (h * h) as i64);

    let mut history = Vec::new();
    for (n, &(target, _)) in pairs.iter().enumerate() {
        let h = odd(n);
        let c = highs.partition_point(|&p| p < target);
        let h_minus = if c == 0 { 0 } else { odd(c - 1) };
        let next = odd(c);
        let landmark = if highs[c] == target {
            Landmark { index: h, lower: next, upper: next, bracket: Bracket::exact(sq_ratio(next, h)) }
        } else {
            Landmark {
                index: h,
                lower: h_minus,
                upper: next,
                bracket: Bracket::new(sq_ratio(h_minus, h), sq_ratio(next, h)),
            }
        };
        history.push(landmark);
    }
    finish_rigorous(Target::Alpha2, history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{generate_separable, strip};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn ns(alpha2: &str, cutoff: &str) -> NodalSequence {
        strip(&generate_separable(ManifoldClass::SeparableTorus, &r(alpha2), &r(cutoff)).unwrap())
    }

    #[test]
    fn square_torus_is_exact() {
        let res = reconstruct_separable_torus(&ns("1", "30")).unwrap();
        assert_eq!(res.bracket, Bracket::exact(r("1")));
    }

    #[test]
    fn ninth_is_exact_from_coincidence() {
        // α²·3² = 1²
        let res = reconstruct_separable_torus(&ns("1/9", "200")).unwrap();
        assert_eq!(res.bracket, Bracket::exact(r("1/9")));
    }

    #[test]
    fn bracket_contains_truth() {
        let res = reconstruct_separable_torus(&ns("2/7", "3000")).unwrap();
        assert!(res.bracket.contains(&r("2/7")), "{:?}", res.bracket);
        assert!(res.bracket.width() < r("1/20"));
    }

    #[test]
    fn tiny_prefix_is_insufficient() {
        let err = reconstruct_separable_torus(&ns("1/2", "1/4")).unwrap_err();
        assert!(matches!(err, Error::InsufficientPrefix(_)));
    }
}
