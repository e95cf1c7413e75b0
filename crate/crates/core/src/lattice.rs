//! Exact rational lattice utilities: Gram matrices, duality, 2-D reduction
//! and isometry, value enumeration, and recovery of a 2-D Gram matrix from
//! its value spectrum.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A symmetric positive-definite rational matrix of dimension 2 or 3,
/// describing a lattice up to isometry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl GramMatrix {
    /// Row-major construction. Rejects non-square, asymmetric or
    /// non-positive-definite input (leading principal minors must be > 0).
    pub fn new(dim: usize, entries: Vec<Rational>) -> Result<Self> {
        if !(2..=3).contains(&dim) {
            return Err(Error::Domain(format!("Gram dimension must be 2 or 3, got {dim}")));
        }
        if entries.len() != dim * dim {
            return Err(Error::Domain(format!(
                "Gram matrix of dimension {dim} needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let g = GramMatrix { dim, entries };
        for i in 0..dim {
            for j in 0..i {
                if g.get(i, j) != g.get(j, i) {
                    return Err(Error::Domain("Gram matrix is not symmetric".into()));
                }
            }
        }
        for k in 1..=dim {
            if !leading_minor(&g, k).is_positive() {
                return Err(Error::Domain(format!(
                    "Gram matrix is not positive definite (leading minor {k} ≤ 0)"
                )));
            }
        }
        Ok(g)
    }

    pub fn from_rows(rows: &[&[Rational]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Domain("Gram matrix rows must be square".into()));
        }
        GramMatrix::new(dim, rows.iter().flat_map(|r| r.iter().cloned()).collect())
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim * dim)
            .map(|k| if k / dim == k % dim { Rational::one() } else { Rational::zero() })
            .collect();
        GramMatrix { dim, entries }
    }

    pub fn diagonal(diag: &[Rational]) -> Result<Self> {
        let dim = diag.len();
        let entries = (0..dim * dim)
            .map(|k| if k / dim == k % dim { diag[k / dim].clone() } else { Rational::zero() })
            .collect();
        GramMatrix::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn scaled(&self, factor: &Rational) -> GramMatrix {
        assert!(factor.is_positive(), "scale factor must be positive");
        GramMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn determinant(&self) -> Rational {
        leading_minor(self, self.dim)
    }

    /// `qᵀ G q`.
    pub fn eval(&self, q: &[i64]) -> Rational {
        assert_eq!(q.len(), self.dim);
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if q[i] != 0 && q[j] != 0 {
                    acc = acc + self.get(i, j) * &Rational::from(q[i] * q[j]);
                }
            }
        }
        acc
    }

    /// `Uᵀ G U` for an integer matrix `U` (row-major).
    pub fn transform(&self, u: &[i64]) -> GramMatrix {
        let n = self.dim;
        assert_eq!(u.len(), n * n);
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = Rational::zero();
                for k in 0..n {
                    for l in 0..n {
                        let c = u[k * n + i] * u[l * n + j];
                        if c != 0 {
                            acc = acc + self.get(k, l) * &Rational::from(c);
                        }
                    }
                }
                out[i * n + j] = acc;
            }
        }
        GramMatrix { dim: n, entries: out }
    }

    /// Serialized form `"a,b;b,c"` (rows separated by `;`).
    pub fn to_spec_string(&self) -> String {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl FromStr for GramMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = s
            .split(';')
            .map(|row| row.split(',').map(str::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let refs: Vec<&[Rational]> = rows.iter().map(Vec::as_slice).collect();
        GramMatrix::from_rows(&refs)
    }
}

impl fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_spec_string())
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spec_string())
    }
}

fn leading_minor(g: &GramMatrix, k: usize) -> Rational {
    let m: Vec<Vec<Rational>> =
        (0..k).map(|i| (0..k).map(|j| g.get(i, j).clone()).collect()).collect();
    determinant(m)
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det = det * &m[col][col];
        for r in col + 1..n {
            let factor = &m[r][col] / &m[col][col];
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
    }
    det
}

/// Gram matrix of the dual basis: the exact inverse `G⁻¹`.
pub fn dual_gram(g: &GramMatrix) -> GramMatrix {
    let n = g.dim;
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        g.get(i, j).clone()
                    } else if j - n == i {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("positive-definite Gram matrix is invertible");
        a.swap(pivot, col);
        let inv = a[col][col].recip();
        for c in 0..2 * n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &a[col][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
        }
    }
    let entries = (0..n * n).map(|k| a[k / n][n + k % n].clone()).collect();
    GramMatrix { dim: n, entries }
}

/// A lattice point inside the enumeration ball, scaled to an integer key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct ScaledPoint {
    pub key: u128,
    pub q: [i64; 3],
}

/// Every `q ∈ ℤ^dim` (zero included) with `qᵀGq ≤ cutoff`, as integer keys
/// `D·qᵀGq` where `D` is the common denominator of the entries. Sorted by
/// `(key, q)`, so the output does not depend on the thread count.
pub(crate) fn scaled_points(g: &GramMatrix, cutoff: &Rational) -> Result<(u128, Vec<ScaledPoint>)> {
    let n = g.dim;
    let denom = g
        .entries
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let scale = denom
        .to_u128()
        .ok_or_else(|| Error::Overflow("Gram denominators exceed 128 bits".into()))?;
    let int_entries: Vec<i128> = g
        .entries
        .iter()
        .map(|e| {
            (e.numer() * (&denom / e.denom()))
                .to_i128()
                .ok_or_else(|| Error::Overflow("scaled Gram entry exceeds 128 bits".into()))
        })
        .collect::<Result<_>>()?;
    let limit = (cutoff * &Rational::from_integer(denom.clone())).floor();
    if limit < BigInt::zero() {
        return Ok((scale, Vec::new()));
    }
    let limit = limit
        .to_u128()
        .ok_or_else(|| Error::Overflow("cutoff times Gram denominator exceeds 128 bits".into()))?;

    // |q_i| ≤ √(cutoff · (G⁻¹)_ii) is the exact extent of the ellipsoid along
    // coordinate i.
    let inv = dual_gram(g);
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            (cutoff * inv.get(i, i))
                .floor_sqrt()
                .to_i64()
                .ok_or_else(|| Error::Overflow("enumeration box too large".into()))
        })
        .collect::<Result<_>>()?;

    let quad = |q: &[i64; 3]| -> Option<u128> {
        let mut acc: i128 = 0;
        for i in 0..n {
            for j in 0..n {
                let t = int_entries[i * n + j]
                    .checked_mul(q[i] as i128)?
                    .checked_mul(q[j] as i128)?;
                acc = acc.checked_add(t)?;
            }
        }
        u128::try_from(acc).ok()
    };

    let b0 = bounds[0];
    let rows: Vec<Result<Vec<ScaledPoint>>> = (-b0..=b0)
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            let (b1, b2) = (bounds[1], if n == 3 { bounds[2] } else { 0 });
            for y in -b1..=b1 {
                for z in -b2..=b2 {
                    let q = [x, y, z];
                    let key = quad(&q)
                        .ok_or_else(|| Error::Overflow("quadratic form value exceeds 128 bits".into()))?;
                    if key <= limit {
                        out.push(ScaledPoint { key, q });
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut points = Vec::new();
    for r in rows {
        points.extend(r?);
    }
    points.par_sort_unstable();
    Ok((scale, points))
}

pub(crate) fn gcd_of(q: &[i64]) -> u64 {
    q.iter().fold(0u64, |acc, &x| acc.gcd(&x.unsigned_abs()))
}

/// Distinct nonzero values `qᵀGq ≤ cutoff` in ascending order, each with the
/// set of coefficient gcds among its representation vectors.
pub fn enumerate_values(g: &GramMatrix, cutoff: &Rational) -> Result<Vec<(Rational, BTreeSet<u64>)>> {
    let (scale, points) = scaled_points(g, cutoff)?;
    let mut out: Vec<(u128, BTreeSet<u64>)> = Vec::new();
    for p in points.iter().filter(|p| p.key != 0) {
        let gcd = gcd_of(&p.q[..g.dim]);
        match out.last_mut() {
            Some((k, set)) if *k == p.key => {
                set.insert(gcd);
            }
            _ => out.push((p.key, BTreeSet::from([gcd]))),
        }
    }
    Ok(out
        .into_iter()
        .map(|(k, s)| (Rational::from_bigints(k.into(), scale.into()), s))
        .collect())
}

/// Smallest nonzero value of the quadratic form.
pub fn min_value(g: &GramMatrix) -> Rational {
    if g.dim == 2 {
        return reduce_gram_2d(g).a;
    }
    // The minimum never exceeds the smallest diagonal entry.
    let bound = (0..g.dim).map(|i| g.get(i, i).clone()).min().expect("nonempty");
    enumerate_values(g, &bound)
        .expect("enumeration below the smallest diagonal entry")
        .into_iter()
        .next()
        .map(|(v, _)| v)
        .expect("diagonal vectors are enumerated")
}

/// Lagrange-reduced binary form `[[a, b], [b, c]]` with `0 ≤ 2b ≤ a ≤ c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedGram2D {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl ReducedGram2D {
    pub fn is_reduced(&self) -> bool {
        let two_b = &self.b * &Rational::from(2);
        !self.b.is_negative() && two_b <= self.a && self.a <= self.c && self.a.is_positive()
    }

    pub fn to_gram(&self) -> GramMatrix {
        GramMatrix {
            dim: 2,
            entries: vec![self.a.clone(), self.b.clone(), self.b.clone(), self.c.clone()],
        }
    }

    pub fn scaled(&self, factor: &Rational) -> ReducedGram2D {
        ReducedGram2D { a: &self.a * factor, b: &self.b * factor, c: &self.c * factor }
    }
}

/// Canonical representative of the isometry class of a 2-D lattice.
pub fn reduce_gram_2d(g: &GramMatrix) -> ReducedGram2D {
    assert_eq!(g.dim, 2, "reduce_gram_2d needs a 2x2 Gram matrix");
    let (mut a, mut b, mut c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
    loop {
        // Shear e2 -> e2 - t e1 with t the integer nearest b/a.
        let t = Rational::from_integer((&b / &a).round_half_up());
        if !t.is_zero() {
            let two_tb = &(&t * &b) * &Rational::from(2);
            c = &(&c - &two_tb) + &(&(&t * &t) * &a);
            b = &b - &(&t * &a);
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            continue;
        }
        break;
    }
    if b.is_negative() {
        b = -b;
    }
    ReducedGram2D { a, b, c }
}

pub fn is_isometric_2d(g1: &GramMatrix, g2: &GramMatrix) -> bool {
    reduce_gram_2d(g1) == reduce_gram_2d(g2)
}

/// Divide by the shortest nonzero value so the shortest vector has length 1.
pub fn scale_to_unit_shortest(g: &GramMatrix) -> GramMatrix {
    g.scaled(&min_value(g).recip())
}

/// Canonical dual Gram of a 2-D torus: rescale the primal lattice so its
/// shortest vector has unit length, then reduce the dual.
pub fn canonical_dual_2d(dual: &GramMatrix) -> ReducedGram2D {
    let primal = scale_to_unit_shortest(&dual_gram(dual));
    reduce_gram_2d(&dual_gram(&primal))
}

/// Recover the reduced Gram matrix from an ascending prefix of distinct
/// nonzero values `{qᵀGq}` of a 2-D lattice.
pub fn fit_gram_2d(values: &[Rational]) -> Result<ReducedGram2D> {
    let last = values
        .last()
        .ok_or_else(|| Error::InsufficientPrefix("empty value list".into()))?;
    let margin = last * &Rational::new(3, 4);
    let expected: Vec<Rational> = values.iter().filter(|v| **v <= margin).cloned().collect();
    fit_gram_2d_with(values, |cand| {
        matches!(enumerate_values(&cand.to_gram(), &margin),
            Ok(vals) if vals.len() == expected.len() && vals.iter().zip(&expected).all(|((v, _), e)| v == e))
    })
}

/// Candidate search shared by [`fit_gram_2d`] and the nodal reconstruction:
/// `a` is the first value, `c` and `a + c - 2b` are drawn from the list, and
/// the first reduced candidate (lexicographic in the list indices) accepted
/// by `verify` wins.
pub fn fit_gram_2d_with(
    values: &[Rational],
    mut verify: impl FnMut(&ReducedGram2D) -> bool,
) -> Result<ReducedGram2D> {
    for cand in fit_candidates(values)? {
        if verify(&cand) {
            return Ok(cand);
        }
    }
    Err(Error::InconsistentSequence("not a 2-D flat-torus spectrum prefix".into()))
}

/// Every reduced triple the candidate search would try, in order.
pub fn fit_candidates(values: &[Rational]) -> Result<Vec<ReducedGram2D>> {
    if values.len() < 4 {
        return Err(Error::InsufficientPrefix(format!(
            "need at least 4 distinct values to fit a 2-D Gram matrix, got {}",
            values.len()
        )));
    }
    let a = values[0].clone();
    let c_bound = &values[3] + &values[0];
    let two = Rational::from(2);
    let mut out = Vec::new();
    for c in values.iter().filter(|c| **c >= a && **c <= c_bound) {
        for w in values.iter().filter(|w| *w >= c) {
            let b = &(&(&a + c) - w) / &two;
            let cand = ReducedGram2D { a: a.clone(), b, c: c.clone() };
            if cand.is_reduced() {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn g(s: &str) -> GramMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_non_spd_and_asymmetric() {
        assert!(matches!("1,2;2,1".parse::<GramMatrix>(), Err(Error::Domain(_))));
        assert!(matches!("1,0;1,1".parse::<GramMatrix>(), Err(Error::Domain(_))));
        assert!(matches!("1,0,0;0,1,0;0,0,0".parse::<GramMatrix>(), Err(Error::Domain(_))));
        assert!("1".parse::<GramMatrix>().is_err());
    }

    #[test]
    fn dual_of_hexagonal() {
        assert_eq!(dual_gram(&g("1,1/2;1/2,1")), g("4/3,-2/3;-2/3,4/3"));
        assert_eq!(dual_gram(&GramMatrix::identity(2)), GramMatrix::identity(2));
        let m = g("2,1/3,0;1/3,1,1/5;0,1/5,3");
        assert_eq!(dual_gram(&dual_gram(&m)), m);
    }

    #[test]
    fn enumerate_identity() {
        let v = enumerate_values(&GramMatrix::identity(2), &r("2")).unwrap();
        assert_eq!(v, vec![(r("1"), BTreeSet::from([1])), (r("2"), BTreeSet::from([1]))]);
        let v = enumerate_values(&GramMatrix::identity(2), &r("4")).unwrap();
        assert_eq!(v.last().unwrap(), &(r("4"), BTreeSet::from([2])));
    }

    #[test]
    fn reduce_known_forms() {
        // 5x² + 6xy + 2y² is equivalent to x² + y².
        assert_eq!(
            reduce_gram_2d(&g("5,3;3,2")),
            ReducedGram2D { a: r("1"), b: r("0"), c: r("1") }
        );
        let hex = reduce_gram_2d(&g("1,1/2;1/2,1"));
        assert_eq!(hex, ReducedGram2D { a: r("1"), b: r("1/2"), c: r("1") });
        assert_eq!(reduce_gram_2d(&g("1,-1/2;-1/2,1")), hex);
        assert_eq!(reduce_gram_2d(&hex.to_gram()), hex);
    }

    #[test]
    fn isometry_is_not_similarity() {
        let a = g("1,1/4;1/4,2");
        assert!(is_isometric_2d(&a, &a.transform(&[2, 1, 1, 1])));
        assert!(!is_isometric_2d(&GramMatrix::identity(2), &g("1,1/2;1/2,1")));
        assert!(!is_isometric_2d(&a, &a.scaled(&r("2"))));
    }

    #[test]
    fn unit_shortest() {
        assert_eq!(scale_to_unit_shortest(&GramMatrix::identity(2)), GramMatrix::identity(2));
        assert_eq!(scale_to_unit_shortest(&GramMatrix::identity(2).scaled(&r("9"))), GramMatrix::identity(2));
        assert_eq!(scale_to_unit_shortest(&g("4,1;1,4")), g("1,1/4;1/4,1"));
        assert_eq!(min_value(&g("2,1,0;1,2,0;0,0,5")), r("2"));
    }

    #[test]
    fn fit_square_and_hexagonal() {
        let sq: Vec<Rational> = ["1", "2", "4", "5", "8", "9", "10", "13", "16", "17", "18", "20"]
            .iter()
            .map(|s| r(s))
            .collect();
        assert_eq!(fit_gram_2d(&sq).unwrap().to_gram(), GramMatrix::identity(2));
        let hex: Vec<Rational> =
            ["1", "3", "4", "7", "9", "12", "13", "16", "19", "21", "25"].iter().map(|s| r(s)).collect();
        assert_eq!(fit_gram_2d(&hex).unwrap().to_gram(), g("1,1/2;1/2,1"));
        assert!(matches!(fit_gram_2d(&sq[..3]), Err(Error::InsufficientPrefix(_))));
    }

    #[test]
    fn fit_rejects_foreign_prefix() {
        // Values 1, 2, 3, 5, 7, ... are not the spectrum of any binary form
        // with these small cells.
        let bad: Vec<Rational> = ["1", "2", "3", "5", "7", "11", "13", "17"].iter().map(|s| r(s)).collect();
        assert!(matches!(fit_gram_2d(&bad), Err(Error::InconsistentSequence(_))));
    }
}
