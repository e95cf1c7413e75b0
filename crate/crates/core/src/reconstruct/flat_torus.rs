//! Flat torus reconstruction.
//!
//! Count `2k` marks the eigenvalues `k²λ̃` with `λ̃` a basic eigenvalue
//! (value of a primitive dual vector), so the positions `P_k` of count `2k`
//! list `k²λ̃_1 < k²λ̃_2 < ...` in order. Interleaving `P_k` against `P_m`
//! bounds `λ̃_j/λ̃_i` between consecutive squares over `m²`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{require_class, Bracket, CountIndex, Landmark};
use crate::error::{Error, Result};
use crate::lattice::{canonical_dual_2d, enumerate_values, GramMatrix, ReducedGram2D};
use crate::rational::Rational;
use crate::spectra::{generate_flat_torus_with, strip, GenerateOptions, ManifoldClass, NodalSequence};

/// Largest denominator tried when snapping basic-value brackets to rationals.
pub const DEFAULT_DENOM_MAX: u64 = 1000;

/// `P_k` for every `k` with count `2k` present.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositionFamily {
    families: BTreeMap<u64, Vec<usize>>,
}

impl PositionFamily {
    /// Positions of count `2k`, ascending; empty if absent.
    pub fn get(&self, k: u64) -> &[usize] {
        self.families.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Positions of the basic eigenvalues.
    pub fn basic(&self) -> &[usize] {
        self.get(1)
    }

    pub fn position(&self, k: u64, i: usize) -> Option<usize> {
        self.get(k).get(i).copied()
    }

    pub fn max_multiple(&self) -> u64 {
        self.families.keys().next_back().copied().unwrap_or(0)
    }
}

fn is_flat_torus(ns: &NodalSequence) -> Result<()> {
    match ns.class() {
        ManifoldClass::FlatTorus(_) => Ok(()),
        other => Err(Error::Domain(format!("expected a flat torus nodal sequence, got {other}"))),
    }
}

pub fn basic_positions(ns: &NodalSequence) -> Result<PositionFamily> {
    is_flat_torus(ns)?;
    let idx = CountIndex::new(ns);
    let families = idx
        .counts()
        .filter(|c| c % 2 == 0)
        .map(|c| (c / 2, idx.positions(c).to_vec()))
        .collect();
    Ok(PositionFamily { families })
}

/// One landmark per multiple `m` for which `m_max + 1` is resolvable:
/// `m_max = max{k : P_k[i] ≤ P_m[j]}` bounds `λ̃_j/λ̃_i` in
/// `[m_max²/m², (m_max+1)²/m²]`, exactly when the positions coincide.
/// Requires `i < j`.
pub fn ratio_landmarks(pf: &PositionFamily, i: usize, j: usize) -> Vec<Landmark> {
    assert!(i < j, "ratio_landmarks needs i < j");
    let mut out = Vec::new();
    let mut k = 1u64;
    for m in 1.. {
        let Some(target) = pf.position(m, j) else { break };
        while pf.position(k + 1, i).is_some_and(|p| p <= target) {
            k += 1;
        }
        if pf.position(k + 1, i).is_none() {
            // m_max + 1 lies beyond the prefix; larger m only make it worse.
            break;
        }
        let sq = |a: u64| Rational::new((a * a) as i64, (m * m) as i64);
        let bracket = if pf.position(k, i) == Some(target) {
            Bracket::exact(sq(k))
        } else {
            Bracket::new(sq(k), sq(k + 1))
        };
        out.push(Landmark { index: m, lower: k, upper: k + 1, bracket });
    }
    out
}

/// Bracket on `λ̃_j / λ̃_i` (zero-based indices into the basic spectrum)
/// from the largest usable multiple.
pub fn ratio_bracket(ns: &NodalSequence, i: usize, j: usize) -> Result<Bracket> {
    let pf = basic_positions(ns)?;
    let needed = i.max(j) + 1;
    if pf.basic().len() < needed {
        return Err(Error::InsufficientPrefix(format!(
            "need {needed} basic eigenvalues, the prefix has {}",
            pf.basic().len()
        )));
    }
    if i == j {
        return Ok(Bracket::exact(Rational::one()));
    }
    let (lo, hi) = (i.min(j), i.max(j));
    let lms = ratio_landmarks(&pf, lo, hi);
    let last = lms.last().ok_or_else(|| {
        Error::InsufficientPrefix(format!("no multiple m resolves the ratio of basic eigenvalues {hi} and {lo}"))
    })?;
    let b = lms.iter().find(|l| l.bracket.exact).unwrap_or(last).bracket.clone();
    Ok(if i < j { b } else { b.reciprocal().expect("ratios are positive") })
}

/// Brackets on `λ̃_i / λ̃_1` for the first `count` basic eigenvalues, each
/// the intersection over every usable multiple.
pub fn reconstruct_basic_spectrum(ns: &NodalSequence, count: usize) -> Result<Vec<Bracket>> {
    let pf = basic_positions(ns)?;
    basic_spectrum_from(&pf, count)
}

fn basic_spectrum_from(pf: &PositionFamily, count: usize) -> Result<Vec<Bracket>> {
    if pf.basic().len() < count {
        return Err(Error::InsufficientPrefix(format!(
            "need {count} basic eigenvalues, the prefix has {}",
            pf.basic().len()
        )));
    }
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        if j == 0 {
            out.push(Bracket::exact(Rational::one()));
            continue;
        }
        let lms = ratio_landmarks(pf, 0, j);
        if lms.is_empty() {
            return Err(Error::InsufficientPrefix(format!(
                "no multiple m resolves basic eigenvalue {j}; use a longer prefix or fewer basics"
            )));
        }
        if let Some(hit) = lms.iter().find(|l| l.bracket.exact) {
            out.push(hit.bracket.clone());
            continue;
        }
        let mut acc = lms[0].bracket.clone();
        for l in &lms[1..] {
            acc = acc.intersect(&l.bracket).ok_or_else(|| {
                Error::InconsistentSequence(format!("ratio brackets for basic eigenvalue {j} do not overlap"))
            })?;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Rationals in `b` with denominator exactly `q`.
fn with_denominator(b: &Bracket, q: u64) -> Vec<Rational> {
    let qb = BigInt::from(q);
    let qr = Rational::from_integer(qb.clone());
    let mut p = (&b.lo * &qr).ceil();
    let last = (&b.hi * &qr).floor();
    let mut out = Vec::new();
    while p <= last {
        if p.gcd(&qb).is_one() {
            out.push(Rational::from_bigints(p.clone(), qb.clone()));
        }
        p += 1;
    }
    out
}

/// Recover the canonical dual Gram matrix of a 2-D flat torus from its
/// nodal sequence.
///
/// The first `count` basic eigenvalues are bracketed; for a reduced form
/// `[[1, b], [b, c]]` the second and third basic values are `c` and
/// `1 + c - 2b` (or coincide with 1 or with `c`). Rational candidates for
/// those two values are tried in order of increasing denominator up to
/// `denom_max`; a candidate is accepted when all `count` of its basic
/// values land in their brackets and it regenerates the input prefix
/// exactly. The result is rescaled so the shortest primal vector has unit
/// length and then reduced.
pub fn reconstruct_flat_torus_2d(ns: &NodalSequence, count: usize, denom_max: u64) -> Result<GramMatrix> {
    require_class(ns, ManifoldClass::FlatTorus(2))?;
    if count < 4 {
        return Err(Error::Domain(format!("need at least 4 basic eigenvalues for a lattice fit, got {count}")));
    }
    let pf = basic_positions(ns)?;
    let brackets = basic_spectrum_from(&pf, count)
        .map_err(|e| match e {
            Error::InsufficientPrefix(m) => Error::InsufficientPrefix(format!("insufficient prefix for lattice fit: {m}")),
            other => other,
        })?;

    // Seeds: reduced forms `[[1, b], [b, c]]` whose basic values fit the
    // brackets, with `c` and `w = 1 + c - 2b` drawn from the brackets of the
    // second and third basic values (either may coincide with 1 or with `c`)
    // in order of increasing denominator. Each seed fixes which primitive
    // vector sits at the first `count` basic positions. Every order relation
    // between identified lines is a half-plane in `(b, c)`; the polygon they
    // cut out identifies further basic vectors, and is finally searched for
    // the simplest form that regenerates the input.
    let one = Bracket::exact(Rational::one());
    let cases: [(&Bracket, Option<&Bracket>); 4] = [
        (&one, Some(&one)),
        (&one, Some(&brackets[1])),
        (&brackets[1], None),
        (&brackets[1], Some(&brackets[2])),
    ];

    let mut tried: HashSet<ReducedGram2D> = HashSet::new();
    let mut searched: Vec<(Vec<(i64, i64)>, Region)> = Vec::new();
    let mut seen_c: Vec<Vec<Rational>> = vec![Vec::new(); cases.len()];
    let mut seen_w: Vec<Vec<Rational>> = vec![Vec::new(); cases.len()];
    for q in 1..=denom_max {
        for (n, &(c_src, w_src)) in cases.iter().enumerate() {
            let new_c = with_denominator(c_src, q);
            let new_w = w_src.map(|w| with_denominator(w, q)).unwrap_or_default();
            let pairs = fresh_pairs(&seen_c[n], &new_c, w_src.map(|_| (&seen_w[n], &new_w)));
            seen_c[n].extend(new_c);
            seen_w[n].extend(new_w);

            for (c, w) in pairs {
                let Some(seed) = from_c_w(c, w) else { continue };
                if !tried.insert(seed.clone()) {
                    continue;
                }
                let Some(vectors) = basic_vectors(&seed, &brackets) else { continue };
                if searched.iter().any(|(v, r)| *v == vectors && r.contains(&seed)) {
                    continue;
                }
                let region = Region::cut(&vectors, &pf, &brackets[1].hi);
                if region.is_empty() {
                    continue;
                }
                if let Some(found) = search_region(&region, &brackets, ns, denom_max, &mut tried)? {
                    return Ok(canonical_dual_2d(&found.to_gram()).to_gram());
                }
                searched.push((vectors, region));
            }
        }
    }
    Err(Error::InsufficientPrefix(format!(
        "insufficient prefix for lattice fit: no Gram matrix with basic values of denominator ≤ {denom_max} \
         reproduces the {} entries",
        ns.len()
    )))
}

/// Pairs `(c, w)` whose larger denominator is the one just added.
fn fresh_pairs(
    seen_c: &[Rational],
    new_c: &[Rational],
    w: Option<(&Vec<Rational>, &Vec<Rational>)>,
) -> Vec<(Rational, Rational)> {
    let Some((seen_w, new_w)) = w else {
        return new_c.iter().map(|c| (c.clone(), c.clone())).collect();
    };
    let mut pairs = Vec::new();
    for c in new_c {
        for w in seen_w.iter().chain(new_w) {
            pairs.push((c.clone(), w.clone()));
        }
    }
    for c in seen_c {
        for w in new_w {
            pairs.push((c.clone(), w.clone()));
        }
    }
    pairs
}

fn from_c_w(c: Rational, w: Rational) -> Option<ReducedGram2D> {
    let b = &(&(Rational::one() + &c) - &w) / &Rational::from(2);
    let cand = ReducedGram2D { a: Rational::one(), b, c };
    cand.is_reduced().then_some(cand)
}

/// One primitive vector per basic value of `cand`, in ascending order,
/// provided those values fit `brackets`.
fn basic_vectors(cand: &ReducedGram2D, brackets: &[Bracket]) -> Option<Vec<(i64, i64)>> {
    let limit = &brackets.last().expect("count ≥ 4").hi;
    // For a reduced form with a = 1, Q(x, y) ≥ (x² + y²)/2.
    let r = (limit * &Rational::from(2)).floor_sqrt().to_i64()? + 1;
    let mut found: Vec<(Rational, (i64, i64))> = Vec::new();
    for x in 0..=r {
        for y in -r..=r {
            if (x == 0 && y <= 0) || x.gcd(&y) != 1 {
                continue;
            }
            let v = quadratic(cand, (x, y));
            if &v <= limit {
                found.push((v, (x, y)));
            }
        }
    }
    found.sort();
    found.dedup_by(|later, first| later.0 == first.0);
    (found.len() >= brackets.len() && brackets.iter().zip(&found).all(|(b, (v, _))| b.contains(v)))
        .then(|| found.into_iter().take(brackets.len()).map(|(_, q)| q).collect())
}

fn quadratic(cand: &ReducedGram2D, (x, y): (i64, i64)) -> Rational {
    let (x, y) = (Rational::from(x), Rational::from(y));
    &(&x * &x) + &(&(&(&cand.b * &(&x * &Rational::from(2))) + &(&cand.c * &y)) * &y)
}

/// `k0 + kb·b + kc·c ≥ 0`.
#[derive(Clone, Debug)]
struct HalfPlane {
    k0: Rational,
    kb: Rational,
    kc: Rational,
}

impl HalfPlane {
    /// `s·Q(u) - t·Q(v) ≥ 0` with `Q(x, y) = x² + 2bxy + cy²`.
    fn difference(s: u64, u: (i64, i64), t: u64, v: (i64, i64)) -> Self {
        let coeffs = |(x, y): (i64, i64)| (x * x, 2 * x * y, y * y);
        let (u0, ub, uc) = coeffs(u);
        let (v0, vb, vc) = coeffs(v);
        let (s, t) = (s as i64, t as i64);
        HalfPlane {
            k0: Rational::from(s * u0 - t * v0),
            kb: Rational::from(s * ub - t * vb),
            kc: Rational::from(s * uc - t * vc),
        }
    }

    fn eval(&self, (b, c): &(Rational, Rational)) -> Rational {
        &(&self.k0 + &(&self.kb * b)) + &(&self.kc * c)
    }
}

/// `(x, y)` with `x > 0`, or `x = 0` and `y > 0`, and `gcd = 1`: one of
/// each `±` pair of primitive vectors.
fn primitive_half(r: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in 0..=r {
        for y in -r..=r {
            if !(x == 0 && y <= 0) && x.gcd(&y) == 1 {
                out.push((x, y));
            }
        }
    }
    out
}

fn quadratic_at(v: (i64, i64), (b, c): &(Rational, Rational)) -> Rational {
    let (x, y) = v;
    &(&Rational::from(x * x) + &(b * &Rational::from(2 * x * y))) + &(c * &Rational::from(y * y))
}

/// Convex polygon in the `(b, c)` plane together with the half-planes
/// that cut it out.
struct Region {
    vertices: Vec<(Rational, Rational)>,
    planes: Vec<HalfPlane>,
}

impl Region {
    /// Polygon of reduced forms `[[1, b], [b, c]]`, `c ≤ c_max`, that order
    /// the lines of `pf` as observed, given basic vectors `seed` for the
    /// first basic values and identifying the rest while the polygon
    /// determines them.
    fn cut(seed: &[(i64, i64)], pf: &PositionFamily, c_max: &Rational) -> Self {
        let zero = Rational::zero();
        let half = Rational::new(1, 2);
        let one = Rational::one();
        let c_max = c_max.max(&one).clone();
        let mut region = Region {
            vertices: vec![
                (zero.clone(), one.clone()),
                (half.clone(), one.clone()),
                (half, c_max.clone()),
                (zero, c_max),
            ],
            planes: Vec::new(),
        };
        let mut placed: BTreeMap<usize, (u64, (i64, i64))> = BTreeMap::new();
        let mut assigned: HashSet<(i64, i64)> = seed.iter().copied().collect();
        let mut radius = 4;
        let mut last = (1, 0);
        for j in 0..pf.basic().len() {
            let v = match seed.get(j) {
                Some(&v) => v,
                None => match region.next_basic(&mut assigned, &mut radius, last) {
                    Some(v) => v,
                    None => break,
                },
            };
            last = v;
            for k in 1..=pf.max_multiple() {
                if let Some(pos) = pf.position(k, j) {
                    region.place(&mut placed, pos, k, v);
                    if region.is_empty() {
                        return region;
                    }
                }
            }
        }
        region
    }

    /// Record `k²Q(v)` at `pos`: equal to whatever already sits there, and
    /// between its identified neighbours.
    fn place(&mut self, placed: &mut BTreeMap<usize, (u64, (i64, i64))>, pos: usize, k: u64, v: (i64, i64)) {
        if let Some(&(k2, v2)) = placed.get(&pos) {
            self.add(HalfPlane::difference(k * k, v, k2 * k2, v2));
            self.add(HalfPlane::difference(k2 * k2, v2, k * k, v));
            return;
        }
        if let Some((_, &(kp, vp))) = placed.range(..pos).next_back() {
            self.add(HalfPlane::difference(k * k, v, kp * kp, vp));
        }
        if let Some((_, &(kn, vn))) = placed.range(pos + 1..).next() {
            self.add(HalfPlane::difference(kn * kn, vn, k * k, v));
        }
        placed.insert(pos, (k, v));
    }

    fn add(&mut self, h: HalfPlane) {
        if !self.vertices.is_empty() {
            self.vertices = clip(&self.vertices, &h);
        }
        self.planes.push(h);
    }

    /// The unassigned primitive vector with the smallest value, if that is
    /// the same vector everywhere in the polygon and its value exceeds that
    /// of `last` throughout. Vectors whose value equals an assigned one
    /// throughout the polygon lie on an identified line and are marked
    /// assigned.
    fn next_basic(
        &self,
        assigned: &mut HashSet<(i64, i64)>,
        radius: &mut i64,
        last: (i64, i64),
    ) -> Option<(i64, i64)> {
        let verts_f: Vec<(f64, f64)> = self.vertices.iter().map(|(b, c)| (b.to_f64(), c.to_f64())).collect();
        let range_f = |(x, y): (i64, i64)| {
            let (x, y) = (x as f64, y as f64);
            verts_f.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (b, c)| {
                let q = x * x + 2.0 * b * x * y + c * y * y;
                (lo.min(q), hi.max(q))
            })
        };
        loop {
            let pool: Vec<((i64, i64), (f64, f64))> = primitive_half(*radius)
                .into_iter()
                .filter(|v| !assigned.contains(v))
                .map(|v| (v, range_f(v)))
                .collect();
            let best = pool.iter().min_by(|a, b| a.1 .1.total_cmp(&b.1 .1));
            // Outside the box Q ≥ (x² + y²)/2 > radius²/2.
            let bound = (*radius * *radius) as f64 / 2.0;
            let Some(&(best, (_, best_hi))) = best.filter(|b| b.1 .1 * (1.0 + 1e-9) < bound) else {
                *radius *= 2;
                continue;
            };
            // A vector tied with an assigned one throughout the polygon lies
            // on a line already identified.
            let close = |u: (i64, i64)| (range_f(u).1 - best_hi).abs() <= 1e-9 * best_hi.max(1.0);
            let tied = assigned.iter().any(|&u| {
                close(u) && self.vertices.iter().all(|p| quadratic_at(u, p) == quadratic_at(best, p))
            });
            assigned.insert(best);
            if tied {
                continue;
            }
            let slack = 1e-9 * best_hi.max(1.0);
            let rivals: Vec<(i64, i64)> =
                pool.iter().filter(|(v, (lo, _))| *v != best && *lo <= best_hi + slack).map(|(v, _)| *v).collect();
            for w in rivals {
                let diffs: Vec<Rational> =
                    self.vertices.iter().map(|p| &quadratic_at(w, p) - &quadratic_at(best, p)).collect();
                if diffs.iter().all(|d| d.is_zero()) {
                    assigned.insert(w);
                } else if !diffs.iter().all(|d| d.is_positive()) {
                    return None;
                }
            }
            let above = self.vertices.iter().all(|p| quadratic_at(best, p) > quadratic_at(last, p));
            return above.then_some(best);
        }
    }

    fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn contains(&self, cand: &ReducedGram2D) -> bool {
        let p = (cand.b.clone(), cand.c.clone());
        let v = &self.vertices;
        let cross = |o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)| {
            &(&(&a.0 - &o.0) * &(&b.1 - &o.1)) - &(&(&a.1 - &o.1) * &(&b.0 - &o.0))
        };
        let area: Rational = (1..v.len().saturating_sub(1)).map(|i| cross(&v[0], &v[i], &v[i + 1])).fold(Rational::zero(), |s, x| &s + &x);
        if area.is_zero() {
            // Segment or point: fall back to the defining half-planes.
            return !self.is_empty() && self.planes.iter().all(|h| !h.eval(&p).is_negative());
        }
        (0..v.len()).all(|i| {
            let side = cross(&v[i], &v[(i + 1) % v.len()], &p);
            side.is_zero() || side.is_positive() == area.is_positive()
        })
    }

    /// Ranges of `c` and `w = 1 + c - 2b` over the polygon.
    fn c_w_ranges(&self) -> (Bracket, Bracket) {
        let w_of = |(b, c): &(Rational, Rational)| &(Rational::one() + c) - &(b * &Rational::from(2));
        let cs = self.vertices.iter().map(|(_, c)| c.clone());
        let ws = self.vertices.iter().map(w_of);
        let span = |it: Vec<Rational>| {
            Bracket::new(it.iter().min().expect("nonempty").clone(), it.iter().max().expect("nonempty").clone())
        };
        (span(cs.collect()), span(ws.collect()))
    }
}

/// Sutherland–Hodgman step: the part of a convex polygon where `h ≥ 0`.
fn clip(poly: &[(Rational, Rational)], h: &HalfPlane) -> Vec<(Rational, Rational)> {
    let n = poly.len();
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(n + 1);
    let vals: Vec<Rational> = poly.iter().map(|p| h.eval(p)).collect();
    if vals.iter().all(|v| !v.is_negative()) {
        return poly.to_vec();
    }
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        let (fp, fq) = (&vals[i], &vals[(i + 1) % n]);
        if !fp.is_negative() {
            out.push(p.clone());
        }
        if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
            let t = fp / &(fp - fq);
            out.push((&p.0 + &(&t * &(&q.0 - &p.0)), &p.1 + &(&t * &(&q.1 - &p.1))));
        }
    }
    out.dedup();
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Simplest form in `region`, by the larger denominator of `c` and `w`,
/// whose basic values fit and which regenerates `ns`.
fn search_region(
    region: &Region,
    brackets: &[Bracket],
    ns: &NodalSequence,
    denom_max: u64,
    tried: &mut HashSet<ReducedGram2D>,
) -> Result<Option<ReducedGram2D>> {
    let (c_range, w_range) = region.c_w_ranges();
    let (mut seen_c, mut seen_w) = (Vec::new(), Vec::new());
    for q in 1..=denom_max {
        let new_c = with_denominator(&c_range, q);
        let new_w = with_denominator(&w_range, q);
        let pairs = fresh_pairs(&seen_c, &new_c, Some((&seen_w, &new_w)));
        seen_c.extend(new_c);
        seen_w.extend(new_w);
        for (c, w) in pairs {
            let Some(cand) = from_c_w(c, w) else { continue };
            if !region.contains(&cand) {
                continue;
            }
            tried.insert(cand.clone());
            if basics_fit(&cand, brackets) && regenerates(&cand, ns)? {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

fn basics_fit(cand: &ReducedGram2D, brackets: &[Bracket]) -> bool {
    let limit = &brackets.last().expect("count ≥ 4").hi;
    let Ok(values) = enumerate_values(&cand.to_gram(), limit) else { return false };
    let basics: Vec<&Rational> = values.iter().filter(|(_, g)| g.contains(&1)).map(|(v, _)| v).collect();
    basics.len() >= brackets.len() && brackets.iter().zip(&basics).all(|(b, v)| b.contains(v))
}

fn regenerates(cand: &ReducedGram2D, ns: &NodalSequence) -> Result<bool> {
    let gram = cand.to_gram();
    let opts = GenerateOptions { witnesses: false };
    let mut cutoff = Rational::from(4);
    loop {
        let got = strip(&generate_flat_torus_with(&gram, &cutoff, opts)?);
        if got.len() >= ns.len() {
            return Ok(got.prefix(ns.len()) == *ns);
        }
        cutoff = &cutoff * &Rational::from(2);
    }
}
