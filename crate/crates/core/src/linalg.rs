//! Exact rational linear algebra: Gaussian elimination, rank, solving,
//! inversion, kernels.
//!
//! Everything here is fraction-exact; a returned solution always satisfies
//! its system identically, with no tolerance anywhere.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Dense matrix of rationals, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        Self {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let p = a * &other[(k, c)];
                    out[(r, c)] += p;
                }
            }
        }
        out
    }

    /// Reduced row echelon form, in place. Returns the pivot column of each
    /// pivot row (so the rank is the length of the returned list).
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            let Some(nz) = (pr..self.rows).find(|&r| !self[(r, pc)].is_zero()) else {
                continue;
            };
            self.swap_rows(pr, nz);
            let inv = self[(pr, pc)].recip();
            for c in pc..self.cols {
                let v = &self[(pr, c)] * &inv;
                self[(pr, c)] = v;
            }
            for r in 0..self.rows {
                if r != pr && !self[(r, pc)].is_zero() {
                    let f = self[(r, pc)].clone();
                    for c in pc..self.cols {
                        let v = &self[(r, c)] - &f * &self[(pr, c)];
                        self[(r, c)] = v;
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rat::one();
        for p in 0..n {
            let Some(nz) = (p..n).find(|&r| !m[(r, p)].is_zero()) else {
                return Rat::zero();
            };
            if nz != p {
                m.swap_rows(p, nz);
                det = -det;
            }
            det *= &m[(p, p)].clone();
            let inv = m[(p, p)].recip();
            for r in p + 1..n {
                if m[(r, p)].is_zero() {
                    continue;
                }
                let f = &m[(r, p)] * &inv;
                for c in p..n {
                    let v = &m[(r, c)] - &f * &m[(p, c)];
                    m[(r, c)] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rat::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// A basis of the right kernel `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<usize> = pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (pr, &pc) in pivot_set.iter().enumerate() {
                v[pc] = -m[(pr, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

/// Outcome of solving `A x = b`: the rank of `A`, and one exact solution when
/// the system is consistent (`None` reports inconsistency).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub rank: usize,
    pub solution: Option<Vec<Rat>>,
}

/// Exact Gaussian elimination on the augmented system. Free variables of an
/// underdetermined consistent system are set to zero in the returned
/// particular solution.
pub fn solve_linear(a: &QMatrix, b: &[Rat]) -> Result<SolveReport> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.len(),
        });
    }
    let mut aug = QMatrix::zeros(a.nrows(), a.ncols() + 1);
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            aug[(r, c)] = a[(r, c)].clone();
        }
        aug[(r, a.ncols())] = b[r].clone();
    }
    let pivots = aug.rref_in_place();
    // A pivot in the augmented column means 0 = 1 somewhere: inconsistent.
    if pivots.last() == Some(&a.ncols()) {
        return Ok(SolveReport {
            rank: pivots.len() - 1,
            solution: None,
        });
    }
    let mut x = vec![Rat::zero(); a.ncols()];
    for (pr, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[(pr, a.ncols())].clone();
    }
    Ok(SolveReport {
        rank: pivots.len(),
        solution: Some(x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn solve_identity() {
        let a = QMatrix::identity(3);
        let b = vec![rat_int(1), rat_int(2), rat_int(3)];
        let rep = solve_linear(&a, &b).unwrap();
        assert_eq!(rep.rank, 3);
        assert_eq!(rep.solution.unwrap(), b);
    }

    #[test]
    fn solve_singular_consistent() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let b = vec![rat_int(1), rat_int(2)];
        let rep = solve_linear(&a, &b).unwrap();
        assert_eq!(rep.rank, 1);
        let x = rep.solution.unwrap();
        // Any returned solution must satisfy the system exactly.
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let b = vec![rat_int(0), rat_int(1)];
        let rep = solve_linear(&a, &b).unwrap();
        assert_eq!(rep.rank, 1);
        assert!(rep.solution.is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn det_values() {
        assert_eq!(m(&[&[1, 1], &[2, 2]]).det(), rat_int(0));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), rat_int(-1));
        assert_eq!(m(&[&[1, 1, 0], &[2, 0, 2], &[3, 0, 0]]).det(), rat_int(6));
        assert_eq!(m(&[&[2, 0], &[0, 3]]).det() * rat(1, 6), rat_int(1));
    }
}
