//! Incremental reduced row echelon form over the rationals.
//!
//! The pivot of a row is its *last* nonzero column, so for a column order
//! that lists larger monomials first, pivots sit on the smallest monomials
//! and the non-pivot columns keep the large ones.

use num::{One, Zero};

use crate::exactpoly::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    ncols: usize,
    // sorted by pivot; each pivot column is zero in every other row
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    /// `v` minus its projection onto the row space; zero at every pivot.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols, "vector length");
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
        }
        v
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().rposition(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for c in v.iter_mut() {
            *c *= &inv;
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (a, b) in row.iter_mut().zip(&v) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        debug_assert!(self.rows[at][p].is_one());
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coefficients expressing `v` in the rows, if `v` lies in the row space.
    pub fn express(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank(vectors: &[Vec<Rational>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Solves `Σ c_i basis_i = target` for a linearly independent `basis`.
pub fn solve_in_basis(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = target.len();
    // augment each basis vector with a unit tag to read off coefficients
    let k = basis.len();
    let mut e = Echelon::new(n + k);
    for (i, b) in basis.iter().enumerate() {
        let mut row: Vec<Rational> = vec![Rational::zero(); k];
        row[i] = Rational::one();
        row.extend(b.iter().cloned());
        e.insert(&row);
    }
    let mut t: Vec<Rational> = vec![Rational::zero(); k];
    t.extend(target.iter().cloned());
    let r = e.reduce(&t);
    if r[k..].iter().any(|c| !c.is_zero()) {
        return None;
    }
    // r = t - Σ c_i (e_i, b_i) has zero data part, so its tag part is -c
    Some(r[..k].iter().map(|c| -c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn pivot_is_last_nonzero_column() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[1, -2, 1])));
        assert_eq!(e.pivots(), &[2]);
        assert_eq!(e.free_columns(), vec![0, 1]);
        // y^2 ≡ 2xy − x^2
        assert_eq!(e.reduce(&v(&[0, 0, 1])), v(&[-1, 2, 0]));
        assert!(!e.insert(&v(&[2, -4, 2])));
    }

    #[test]
    fn stays_reduced() {
        let mut e = Echelon::new(4);
        e.insert(&v(&[1, 1, 0, 1]));
        e.insert(&v(&[0, 1, 1, 1]));
        e.insert(&v(&[1, 0, 0, 0]));
        assert_eq!(e.rank(), 3);
        for (i, &p) in e.pivots().iter().enumerate() {
            for (j, row) in e.rows().iter().enumerate() {
                assert_eq!(row[p], if i == j { rat(1) } else { rat(0) });
            }
        }
        assert!(e.pivots().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn express_gives_certificate() {
        let mut e = Echelon::new(3);
        e.insert(&v(&[1, 0, 1]));
        e.insert(&v(&[0, 1, 1]));
        let target = v(&[2, 3, 5]);
        let coeffs = e.express(&target).unwrap();
        let mut sum = v(&[0, 0, 0]);
        for (c, row) in coeffs.iter().zip(e.rows()) {
            for (s, r) in sum.iter_mut().zip(row) {
                *s += c * r;
            }
        }
        assert_eq!(sum, target);
        assert!(e.express(&v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn solve_in_basis_recovers_coefficients() {
        let basis = vec![v(&[1, 1, 0]), v(&[0, 1, 1])];
        assert_eq!(solve_in_basis(&basis, &v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(solve_in_basis(&basis, &v(&[1, 0, 0])), None);
        assert_eq!(rank(&basis, 3), 2);
    }
}
