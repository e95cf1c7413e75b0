//! Closed-form nodal domain counts of the separable eigenfunctions.

use crate::error::{Error, Result};
use crate::lattice::gcd_of;

/// Dirichlet rectangle: the nodal lines form an `m × n` checkerboard.
pub fn nodal_count_rectangle(m: u64, n: u64) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "rectangle quantum numbers must be positive, got ({m}, {n}): the eigenfunction vanishes identically"
        )));
    }
    Ok(m * n)
}

/// Separable flat torus: `(2m + [m=0])(2n + [n=0])`.
pub fn nodal_count_separable_torus(m: u64, n: u64) -> u64 {
    let f = |k: u64| if k == 0 { 1 } else { 2 * k };
    f(m) * f(n)
}

/// Whether `(m, n)` labels a Klein bottle eigenfunction: `m` even with
/// `n ≥ 0`, or `m` odd with `n ≠ 0`.
pub fn klein_admissible(m: i64, n: i64) -> bool {
    if m % 2 == 0 {
        n >= 0
    } else {
        n != 0
    }
}

/// Flat Klein bottle: `2|mn| + [m=0](|n|+1) + |m|[n=0]`.
pub fn nodal_count_klein(m: i64, n: i64) -> Result<u64> {
    if !klein_admissible(m, n) {
        let rule = if m % 2 == 0 { "m even requires n ≥ 0" } else { "m odd requires n ≠ 0" };
        return Err(Error::Domain(format!("inadmissible Klein bottle pair ({m}, {n}): {rule}")));
    }
    let (am, an) = (m.unsigned_abs(), n.unsigned_abs());
    let mut nu = 2 * am * an;
    if m == 0 {
        nu += an + 1;
    }
    if n == 0 {
        nu += am;
    }
    Ok(nu)
}

/// Flat torus: `2·gcd(q)` for a nonzero dual-lattice coefficient vector and
/// 1 for the constant mode.
pub fn nodal_count_lattice(q: &[i64]) -> Result<u64> {
    if !(2..=3).contains(&q.len()) {
        return Err(Error::Domain(format!("lattice vector must have length 2 or 3, got {}", q.len())));
    }
    Ok(match gcd_of(q) {
        0 => 1,
        g => 2 * g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle() {
        assert_eq!(nodal_count_rectangle(1, 1).unwrap(), 1);
        assert_eq!(nodal_count_rectangle(2, 3).unwrap(), 6);
        assert_eq!(nodal_count_rectangle(4, 5).unwrap(), 20);
        assert!(matches!(nodal_count_rectangle(0, 3), Err(Error::Domain(_))));
        assert!(nodal_count_rectangle(3, 0).is_err());
    }

    #[test]
    fn torus() {
        assert_eq!(nodal_count_separable_torus(0, 0), 1);
        assert_eq!(nodal_count_separable_torus(0, 3), 6);
        assert_eq!(nodal_count_separable_torus(2, 2), 16);
    }

    #[test]
    fn klein() {
        assert_eq!(nodal_count_klein(0, 2).unwrap(), 3);
        assert_eq!(nodal_count_klein(2, 0).unwrap(), 2);
        assert_eq!(nodal_count_klein(1, 1).unwrap(), 2);
        assert_eq!(nodal_count_klein(-1, -1).unwrap(), 2);
        let err = nodal_count_klein(1, 0).unwrap_err().to_string();
        assert!(err.contains("m odd requires n ≠ 0"), "{err}");
        assert!(nodal_count_klein(2, -1).is_err());
    }

    #[test]
    fn lattice() {
        assert_eq!(nodal_count_lattice(&[2, 4]).unwrap(), 4);
        assert_eq!(nodal_count_lattice(&[0, 0]).unwrap(), 1);
        assert_eq!(nodal_count_lattice(&[3, 5, 7]).unwrap(), 2);
        assert_eq!(nodal_count_lattice(&[-6, 0, 9]).unwrap(), 6);
        assert!(nodal_count_lattice(&[1]).is_err());
    }
}
