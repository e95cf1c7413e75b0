//! Independent oracles: brute-force spectra, definitional thresholds and
//! nodal-domain counting on sample grids. None of this calls into the
//! generator or reconstruction code it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nodalseq::{GramMatrix, ManifoldClass, Rational};
use rand::Rng;

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn ri(n: i64) -> Rational {
    Rational::from(n)
}

pub type Lines = Vec<(Rational, Vec<u64>)>;

fn collect(map: BTreeMap<Rational, BTreeSet<u64>>) -> Lines {
    map.into_iter().map(|(v, c)| (v, c.into_iter().collect())).collect()
}

/// Closed-form counts, restated per class.
pub fn count_formula(class: ManifoldClass, m: u64, n: u64) -> u64 {
    match class {
        ManifoldClass::Rectangle => m * n,
        ManifoldClass::SeparableTorus => {
            let f = |k| if k == 0 { 1 } else { 2 * k };
            f(m) * f(n)
        }
        ManifoldClass::KleinBottle => match (m, n) {
            (0, n) => n + 1,
            (m, 0) => m,
            (m, n) => 2 * m * n,
        },
        ManifoldClass::FlatTorus(_) => unreachable!(),
    }
}

/// Spectrum of a separable class by direct enumeration, `n` outermost,
/// values compared as exact rationals.
pub fn oracle_separable(class: ManifoldClass, alpha2: &Rational, cutoff: &Rational) -> Lines {
    let mut map: BTreeMap<Rational, BTreeSet<u64>> = BTreeMap::new();
    let start = if class == ManifoldClass::Rectangle { 1 } else { 0 };
    let mut n = start;
    while &(alpha2 * &ri(n * n)) <= cutoff {
        let mut m = start;
        loop {
            let v = ri(m * m) + alpha2 * &ri(n * n);
            if &v > cutoff {
                break;
            }
            let admissible = class != ManifoldClass::KleinBottle || m % 2 == 0 || n != 0;
            if admissible {
                map.entry(v).or_default().insert(count_formula(class, m as u64, n as u64));
            }
            m += 1;
        }
        n += 1;
    }
    collect(map)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Gram entries over a common denominator, so values are compared as
/// integers `qᵀ(L·G)q` against `L·cutoff`.
fn integer_form(g: &GramMatrix) -> (i128, Vec<i128>) {
    let dens: Vec<i128> = g.entries().iter().map(|e| e.denom().to_string().parse().unwrap()).collect();
    let l = dens.iter().fold(1i128, |acc, &d| acc / gcd128(acc, d) * d);
    let ints = g
        .entries()
        .iter()
        .map(|e| {
            let n: i128 = e.numer().to_string().parse().unwrap();
            let d: i128 = e.denom().to_string().parse().unwrap();
            n * (l / d)
        })
        .collect();
    (l, ints)
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd128(b, a % b)
    }
}

fn eval_int(m: &[i128], q: &[i64]) -> i128 {
    let d = q.len();
    let mut acc = 0;
    for i in 0..d {
        for j in 0..d {
            acc += m[i * d + j] * (q[i] * q[j]) as i128;
        }
    }
    acc
}

/// All integer vectors with sup-norm exactly `r`.
fn shell(dim: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let range = || -r..=r;
    if dim == 2 {
        for x in range() {
            for y in range() {
                if x.abs().max(y.abs()) == r {
                    out.push(vec![x, y]);
                }
            }
        }
    } else {
        for x in range() {
            for y in range() {
                for z in range() {
                    if x.abs().max(y.abs()).max(z.abs()) == r {
                        out.push(vec![x, y, z]);
                    }
                }
            }
        }
    }
    out
}

/// Flat torus spectrum by growing sup-norm shells until two consecutive
/// shells lie entirely above the cutoff.
pub fn oracle_flat(g: &GramMatrix, cutoff: &Rational) -> Lines {
    let dim = g.dim();
    let (l, m) = integer_form(g);
    let limit = (cutoff * &Rational::from(l as i64)).floor().to_string().parse::<i128>().unwrap();
    let mut map: BTreeMap<i128, BTreeSet<u64>> = BTreeMap::new();
    map.entry(0).or_default().insert(1);
    let mut above = 0;
    let mut radius = 1;
    while above < 2 {
        let mut any = false;
        for q in shell(dim, radius) {
            let v = eval_int(&m, &q);
            if v <= limit {
                any = true;
                let d = q.iter().fold(0, |acc, &x| gcd(acc, x)) as u64;
                map.entry(v).or_default().insert(2 * d);
            }
        }
        above = if any { 0 } else { above + 1 };
        radius += 1;
    }
    map.into_iter()
        .map(|(k, c)| (Rational::new(k as i64, l as i64), c.into_iter().collect()))
        .collect()
}

/// Basic eigenvalues (values of primitive vectors) divided by the first.
pub fn oracle_basics(g: &GramMatrix, count: usize) -> Vec<Rational> {
    let mut cutoff = ri(4) * g.get(0, 0).clone().max(g.get(1, 1).clone());
    loop {
        let lines = oracle_flat(g, &cutoff);
        let basics: Vec<Rational> = lines.iter().filter(|(_, c)| c.contains(&2)).map(|(v, _)| v.clone()).collect();
        if basics.len() >= count {
            let first = basics[0].clone();
            return basics[..count].iter().map(|v| v / &first).collect();
        }
        cutoff = cutoff * ri(2);
    }
}

/// `(lower, upper, exact)` from scanning `i = 1, 2, ...` for the first
/// `value(i)` that reaches `target`; `lower = 0` when none is below.
fn threshold(target: &Rational, step: u64, first: u64, value: impl Fn(u64) -> Rational) -> (u64, u64, bool) {
    let mut lower = 0;
    let mut i = first;
    loop {
        let v = value(i);
        if &v == target {
            return (i, i, true);
        }
        if &v > target {
            return (lower, i, false);
        }
        lower = i;
        i += step;
    }
}

/// Rectangle `h∓`: largest `i` with `i² + α² < 1 + α²h²` and the next one.
pub fn rect_thresholds(alpha2: &Rational, h: u64) -> (u64, u64, bool) {
    let target = ri(1) + alpha2 * &ri((h * h) as i64);
    threshold(&target, 1, 1, |i| ri((i * i) as i64) + alpha2.clone())
}

/// Torus `h∓` over odd `i`: `i²` against `α²h²`.
pub fn torus_thresholds(alpha2: &Rational, h: u64) -> (u64, u64, bool) {
    let target = alpha2 * &ri((h * h) as i64);
    threshold(&target, 2, 1, |i| ri((i * i) as i64))
}

/// Klein `k∓` for α < 1: `i² + α²` against `1 + α²k²`.
pub fn klein_less_thresholds(alpha2: &Rational, k: u64) -> (u64, u64, bool) {
    rect_thresholds(alpha2, k)
}

/// Klein `k∓` for α > 1: `1 + α²i²` against `k² + α²`.
pub fn klein_greater_thresholds(alpha2: &Rational, k: u64) -> (u64, u64, bool) {
    let target = ri((k * k) as i64) + alpha2.clone();
    threshold(&target, 1, 1, |i| ri(1) + alpha2 * &ri((i * i) as i64))
}

/// Flat torus `m_max`: largest `k` with `k²λ_i ≤ m²λ_j`.
pub fn flat_m_max(ratio: &Rational, m: u64) -> u64 {
    let target = ratio * &ri((m * m) as i64);
    let mut k = 1;
    while ri(((k + 1) * (k + 1)) as i64) <= target {
        k += 1;
    }
    k
}

/// Values of the count-`2i` set of a Klein bottle, ascending, with the
/// quantum numbers that produce them.
pub fn klein_set(alpha2: &Rational, i: u64) -> Vec<(Rational, (u64, u64))> {
    let mut v = vec![
        (alpha2 * &ri(((2 * i - 1) * (2 * i - 1)) as i64), (0, 2 * i - 1)),
        (ri((4 * i * i) as i64), (2 * i, 0)),
    ];
    for m in 1..=i {
        if i.is_multiple_of(m) {
            let n = i / m;
            v.push((ri((m * m) as i64) + alpha2 * &ri((n * n) as i64), (m, n)));
        }
    }
    v.sort();
    v
}

/// Random `p/q` in `(0, max]` with `q ≤ max_den`.
pub fn random_alpha2(rng: &mut impl Rng, max: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(2..=max_den);
    let p = rng.gen_range(1..=max * q);
    Rational::new(p, q)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Connected sign regions of `f` sampled on an `nx × ny` grid. `wrap`
/// joins opposite edges; `glue` maps a grid index to another that
/// represents the same point of the manifold.
pub fn grid_domains(
    nx: usize,
    ny: usize,
    wrap: bool,
    f: impl Fn(usize, usize) -> f64,
    glue: Option<&dyn Fn(usize, usize) -> (usize, usize)>,
) -> usize {
    let id = |x: usize, y: usize| x * ny + y;
    let mut parent: Vec<usize> = (0..nx * ny).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
        }
    };
    let sign: Vec<bool> = (0..nx * ny).map(|k| f(k / ny, k % ny) > 0.0).collect();
    for x in 0..nx {
        for y in 0..ny {
            let mut nbrs = Vec::new();
            if x + 1 < nx {
                nbrs.push((x + 1, y));
            } else if wrap {
                nbrs.push((0, y));
            }
            if y + 1 < ny {
                nbrs.push((x, y + 1));
            } else if wrap {
                nbrs.push((x, 0));
            }
            if let Some(g) = glue {
                nbrs.push(g(x, y));
            }
            for (a, b) in nbrs {
                if sign[id(x, y)] == sign[id(a, b)] {
                    union(&mut parent, id(x, y), id(a, b));
                }
            }
        }
    }
    (0..nx * ny).filter(|&k| find(&mut parent, k) == k).count()
}

/// Outcome of comparing nodal-only thresholds with the definitional ones.
#[derive(Debug, Default)]
pub struct OracleReport {
    pub compared: usize,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    fn check(&mut self, what: String, got: (u64, u64), want: (u64, u64)) {
        self.compared += 1;
        if got != want {
            self.mismatches.push(format!("{what}: nodal {got:?}, definitional {want:?}"));
        }
    }
}

fn exact_or((lower, upper, exact): (u64, u64, bool)) -> (u64, u64) {
    if exact {
        (upper, upper)
    } else {
        (lower, upper)
    }
}

fn nodal(class: ManifoldClass, alpha2: &Rational, cutoff: i64) -> nodalseq::NodalSequence {
    nodalseq::spectra::strip(&nodalseq::spectra::generate_separable(class, alpha2, &ri(cutoff)).unwrap())
}

pub fn rectangle_oracle(alpha2: &Rational, cutoff: i64) -> OracleReport {
    let res = nodalseq::reconstruct::reconstruct_rectangle(&nodal(ManifoldClass::Rectangle, alpha2, cutoff)).unwrap();
    let mut rep = OracleReport::default();
    for l in &res.history {
        rep.check(format!("α²={alpha2} h={}", l.index), (l.lower, l.upper), exact_or(rect_thresholds(alpha2, l.index)));
        let h2 = (l.index * l.index) as i64 - 1;
        let sq = |i: u64| Rational::new((i * i) as i64 - 1, h2);
        if (l.bracket.lo.clone(), l.bracket.hi.clone()) != (sq(l.lower), sq(l.upper)) {
            rep.mismatches.push(format!("α²={alpha2} h={}: bracket {:?}", l.index, l.bracket));
        }
    }
    rep
}

pub fn torus_oracle(alpha2: &Rational, cutoff: i64) -> OracleReport {
    let res = nodalseq::reconstruct::reconstruct_separable_torus(&nodal(ManifoldClass::SeparableTorus, alpha2, cutoff))
        .unwrap();
    let mut rep = OracleReport::default();
    for l in &res.history {
        rep.check(format!("α²={alpha2} h={}", l.index), (l.lower, l.upper), exact_or(torus_thresholds(alpha2, l.index)));
        let sq = |i: u64| Rational::new((i * i) as i64, (l.index * l.index) as i64);
        if (l.bracket.lo.clone(), l.bracket.hi.clone()) != (sq(l.lower), sq(l.upper)) {
            rep.mismatches.push(format!("α²={alpha2} h={}: bracket {:?}", l.index, l.bracket));
        }
    }
    rep
}

fn klein_rank(alpha2: &Rational) -> usize {
    match (alpha2 < &ri(1), alpha2 > &r("1/4"), alpha2 > &ri(4)) {
        (true, true, _) | (false, _, false) => 3,
        _ => 2,
    }
}

/// Member of the count-`2i` set the sweep takes as `i² + α²` (α < 1) or
/// `1 + α²i²` (α > 1); `None` when two members coincide.
pub fn klein_identified(alpha2: &Rational, i: u64) -> Option<(Rational, (u64, u64))> {
    let set = klein_set(alpha2, i);
    if set.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    Some(set[set.len() - klein_rank(alpha2)].clone())
}

/// Whether that member really is `i² + α²` or `1 + α²i²`.
pub fn klein_rank_holds(alpha2: &Rational, i: u64) -> bool {
    let want = if alpha2 < &ri(1) { (i, 1) } else { (1, i) };
    klein_identified(alpha2, i).is_some_and(|(_, q)| q == want)
}

/// Whether the smallest member of a prime set is `1 + α²k²` or `k² + α²`.
pub fn klein_smallest_holds(alpha2: &Rational, k: u64) -> bool {
    let want = if alpha2 < &ri(1) { (1, k) } else { (k, 1) };
    klein_set(alpha2, k)[0].1 == want
}

/// Klein landmarks are compared where the identifications hold at the
/// true parameter: the prime set's smallest member is the expected one,
/// `k∓` obey the rank rule, and no complete set puts its identified
/// member on the wrong side of the landmark.
pub fn klein_oracle(alpha2: &Rational, cutoff: i64) -> OracleReport {
    let res = nodalseq::reconstruct::reconstruct_klein(&nodal(ManifoldClass::KleinBottle, alpha2, cutoff)).unwrap();
    let complete = |i: u64| klein_set(alpha2, i).last().unwrap().0 <= ri(cutoff);
    let mut rep = OracleReport::default();
    for l in &res.history {
        let want = if alpha2 < &ri(1) {
            klein_less_thresholds(alpha2, l.index)
        } else {
            klein_greater_thresholds(alpha2, l.index)
        };
        let (lo, hi, exact) = want;
        let target = klein_set(alpha2, l.index)[0].0.clone();
        let mut valid = klein_smallest_holds(alpha2, l.index)
            && klein_rank_holds(alpha2, hi)
            && (lo == 0 || exact || klein_rank_holds(alpha2, lo));
        let mut i = 1;
        while valid && complete(i) {
            if let Some((v, _)) = klein_identified(alpha2, i) {
                valid = if exact && i == hi { v == target } else { (v < target) == (i <= lo) && v != target };
            }
            i += 1;
        }
        if valid {
            rep.check(format!("α²={alpha2} k={}", l.index), (l.lower, l.upper), exact_or(want));
        }
    }
    rep
}
