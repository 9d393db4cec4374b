//! Dense exact linear algebra over the prime field `F_p`.
//!
//! Small matrices only (the change-of-basis systems of this crate are at most
//! ~40x40), so plain Gaussian elimination is plenty.

/// Row-major matrix with entries in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u32>,
}

impl FpMat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    fn inv_scalar(&self, a: u32) -> u32 {
        // p is small; brute inverse keeps this dependency-free
        debug_assert!(!a.is_multiple_of(self.p));
        (1..self.p).find(|&b| (a * b) % self.p == 1).unwrap()
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self[(r, col)] != 0) else {
                continue;
            };
            for c in 0..self.cols {
                let t = self[(row, c)];
                self[(row, c)] = self[(pr, c)];
                self[(pr, c)] = t;
            }
            let inv = self.inv_scalar(self[(row, col)]);
            for c in 0..self.cols {
                self[(row, c)] = (self[(row, c)] * inv) % p;
            }
            for r in 0..self.rows {
                if r != row && self[(r, col)] != 0 {
                    let f = self[(r, col)];
                    for c in 0..self.cols {
                        let sub = (f * self[(row, c)]) % p;
                        self[(r, c)] = (self[(r, c)] + p - sub) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<FpMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = FpMat::zeros(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)];
            }
            aug[(r, n + r)] = 1;
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = FpMat::zeros(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = aug[(r, n + c)];
            }
        }
        Some(inv)
    }

    /// `self * v` for a column vector.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0u32; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                acc += (self[(r, c)] as u64) * (v[c] as u64);
            }
            out[r] = (acc % self.p as u64) as u32;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for FpMat {
    type Output = u32;
    fn index(&self, (r, c): (usize, usize)) -> &u32 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FpMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u32 {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip_f2() {
        let mut m = FpMat::zeros(2, 3, 3);
        // [[1,1,0],[0,1,1],[1,0,1]] is singular over F_2 (rows sum to 0)
        m[(0, 0)] = 1;
        m[(0, 1)] = 1;
        m[(1, 1)] = 1;
        m[(1, 2)] = 1;
        m[(2, 0)] = 1;
        m[(2, 2)] = 1;
        assert_eq!(m.rank(), 2);
        assert!(m.inverse().is_none());

        m[(2, 2)] = 0; // [[1,1,0],[0,1,1],[1,0,0]] is invertible
        let inv = m.inverse().unwrap();
        for v in [[1u32, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]] {
            let w = inv.mul_vec(&m.mul_vec(&v));
            assert_eq!(w, v.to_vec());
        }
    }

    #[test]
    fn inverse_round_trip_f5() {
        let mut m = FpMat::zeros(5, 2, 2);
        m[(0, 0)] = 2;
        m[(0, 1)] = 3;
        m[(1, 0)] = 1;
        m[(1, 1)] = 3;
        let inv = m.inverse().unwrap();
        let id = FpMat::identity(5, 2);
        let mut prod = FpMat::zeros(5, 2, 2);
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = 0;
                for k in 0..2 {
                    acc = (acc + m[(r, k)] * inv[(k, c)]) % 5;
                }
                prod[(r, c)] = acc;
            }
        }
        assert_eq!(prod, id);
    }
}
