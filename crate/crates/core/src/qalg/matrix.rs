//! Dense matrices over the rationals with exact Gaussian elimination.
//!
//! The only serious consumer is the linear-condition solver for
//! Riemann-Roch spaces, which needs ranks and kernel bases that are
//! exact, deterministic, and canonically scaled.

use std::fmt;

use super::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.at(row, col).recip();
            for j in col..m.cols {
                let v = m.at(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in col..m.cols {
                    let v = m.at(r, j) - &factor * m.at(row, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel.  One vector per free column, ordered
    /// by that column, each rescaled so its first nonzero coordinate
    /// is 1.  The result is canonical for a given matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.at(prow, free);
            }
            let lead = v
                .iter()
                .find(|c| !c.is_zero())
                .expect("kernel vector is nonzero")
                .clone();
            for c in &mut v {
                *c = &*c * &lead.recip();
            }
            basis.push(v);
        }
        basis
    }

    /// Any solution of `self * x = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| Rat::from_int(c)).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = m(&[&[1, 1], &[2, 2]]).kernel_basis();
        assert_eq!(k, vec![vec![Rat::one(), Rat::from_int(-1)]]);
    }

    #[test]
    fn kernel_scaling_is_canonical() {
        // rref pivot at col 1; kernel vector starts with coordinate 1
        let k = m(&[&[0, 3, 6]]).kernel_basis();
        assert_eq!(
            k,
            vec![
                vec![Rat::one(), Rat::zero(), Rat::zero()],
                vec![Rat::zero(), Rat::one(), Rat::new(-1, 2)],
            ]
        );
        for v in &k {
            let lead = v.iter().find(|c| !c.is_zero()).unwrap();
            assert!(lead.is_one());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let x = a.solve(&[Rat::from_int(5), Rat::from_int(11)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![Rat::from_int(5), Rat::from_int(11)]);
        let sing = m(&[&[1, 1], &[1, 1]]);
        assert!(sing
            .solve(&[Rat::from_int(0), Rat::from_int(1)])
            .is_none());
    }

    #[test]
    fn full_rank_kernel_is_empty() {
        assert!(QMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::zeros(2, 3).rank(), 0);
        assert_eq!(QMatrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    // brute-force rank via minors, used as an oracle below
    fn det(rows: &[Vec<Rat>]) -> Rat {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = Rat::zero();
        for (k, row) in rows.iter().enumerate() {
            if row[0].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rat>> = rows
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, r)| r[1..].to_vec())
                .collect();
            let term = &row[0] * &det(&minor);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn minor_rank(a: &QMatrix) -> usize {
        for k in (1..=a.rows().min(a.cols())).rev() {
            for ri in subsets(a.rows(), k) {
                for ci in subsets(a.cols(), k) {
                    let sub: Vec<Vec<Rat>> = ri
                        .iter()
                        .map(|&i| ci.iter().map(|&j| a.at(i, j).clone()).collect())
                        .collect();
                    if !det(&sub).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    proptest! {
        #[test]
        fn rank_matches_minor_oracle(
            rows in 1usize..=4,
            cols in 1usize..=4,
            seed in proptest::collection::vec(-3i64..=3, 16),
        ) {
            let data: Vec<Rat> = seed[..rows * cols].iter().map(|&c| Rat::from_int(c)).collect();
            let a = QMatrix::new(rows, cols, data);
            prop_assert_eq!(a.rank(), minor_rank(&a));
            prop_assert_eq!(a.rank() + a.kernel_basis().len(), cols);
            for v in a.kernel_basis() {
                let img = a.mul_vec(&v);
                prop_assert!(img.iter().all(Rat::is_zero));
            }
        }
    }
}
