//! Dense complex matrices and the handful of factorizations the crate needs.
//!
//! Everything here operates on hom-space dimensions, which stay small (a few
//! hundred at the very worst), so the implementations favour clarity over
//! asymptotics: partial-pivot LU, column-pivot elimination for rank and null
//! spaces, and a damped normal-equation solve for least squares.

use crate::num::{c64, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x += *y;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(other.data.iter()) {
            *x -= *y;
        }
        out
    }

    pub fn scale(&self, s: C64) -> CMat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x *= s;
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Solve `self * X = B` by partial-pivot LU. Returns `None` when the
    /// matrix is numerically singular.
    pub fn solve(&self, b: &CMat) -> Option<CMat> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(self.rows, b.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.clone();
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm();
            for r in col + 1..n {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-13 {
                return None;
            }
            if piv != col {
                for j in 0..n {
                    a.data.swap(col * n + j, piv * n + j);
                }
                for j in 0..x.cols {
                    x.data.swap(col * x.cols + j, piv * x.cols + j);
                }
            }
            let d = a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] / d;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
                for j in 0..x.cols {
                    let v = x[(col, j)];
                    x[(r, j)] -= f * v;
                }
            }
        }
        for col in (0..n).rev() {
            let d = a[(col, col)];
            for j in 0..x.cols {
                x[(col, j)] /= d;
            }
            for r in 0..col {
                let f = a[(r, col)];
                for j in 0..x.cols {
                    let v = x[(col, j)];
                    x[(r, j)] -= f * v;
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<CMat> {
        self.solve(&CMat::identity(self.rows))
    }

    /// Rough condition estimate `‖A‖_max · ‖A⁻¹‖_max · n`; used only for the
    /// invertibility thresholds on fusion-operator matrices.
    pub fn condition_estimate(&self) -> Option<f64> {
        let inv = self.inverse()?;
        Some(self.max_abs() * inv.max_abs() * self.rows as f64)
    }

    /// Numerical rank by column-pivoted Gaussian elimination.
    pub fn rank(&self, tol: f64) -> usize {
        let (r, _) = self.row_echelon(tol);
        r
    }

    fn row_echelon(&self, tol: f64) -> (usize, CMat) {
        let mut a = self.clone();
        let scale = self.max_abs().max(1.0);
        let mut rank = 0;
        for col in 0..a.cols {
            if rank == a.rows {
                break;
            }
            let mut piv = rank;
            let mut best = a[(rank, col)].norm();
            for r in rank + 1..a.rows {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best <= tol * scale {
                continue;
            }
            if piv != rank {
                for j in 0..a.cols {
                    a.data.swap(rank * a.cols + j, piv * a.cols + j);
                }
            }
            let d = a[(rank, col)];
            for r in 0..a.rows {
                if r == rank {
                    continue;
                }
                let f = a[(r, col)] / d;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..a.cols {
                    let v = a[(rank, j)];
                    a[(r, j)] -= f * v;
                }
            }
            rank += 1;
        }
        (rank, a)
    }

    /// Orthonormal-ish basis of the null space of `self` (columns of the
    /// returned matrix), via elimination with back substitution.
    pub fn nullspace(&self, tol: f64) -> CMat {
        let m = self.rows;
        let n = self.cols;
        let mut a = self.clone();
        let scale = self.max_abs().max(1.0);
        let mut pivot_of_row: Vec<usize> = Vec::new();
        let mut is_pivot = vec![false; n];
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let mut piv = row;
            let mut best = a[(row, col)].norm();
            for r in row + 1..m {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best <= tol * scale {
                continue;
            }
            if piv != row {
                for j in 0..n {
                    a.data.swap(row * n + j, piv * n + j);
                }
            }
            let d = a[(row, col)];
            for r in 0..m {
                if r == row {
                    continue;
                }
                let f = a[(r, col)] / d;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let v = a[(row, j)];
                    a[(r, j)] -= f * v;
                }
            }
            pivot_of_row.push(col);
            is_pivot[col] = true;
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut basis = CMat::zeros(n, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis[(fc, k)] = c64(1.0, 0.0);
            for (r, &pc) in pivot_of_row.iter().enumerate() {
                basis[(pc, k)] = -a[(r, fc)] / a[(r, pc)];
            }
        }
        basis
    }

    /// Damped least squares: minimizes `‖A x - b‖² + λ‖x‖²` through the
    /// normal equations. `b` must be a column vector.
    pub fn lstsq_damped(&self, b: &CMat, lambda: f64) -> Option<CMat> {
        let at = self.adjoint();
        let mut ata = at.matmul(self);
        for i in 0..ata.rows {
            ata[(i, i)] += c64(lambda, 0.0);
        }
        let atb = at.matmul(b);
        ata.solve(&atb)
    }

    /// Column-space basis: indices of pivot columns plus the projector pair
    /// `(inclusion, projection)` with `proj * incl = I` onto the column span.
    pub fn column_space(&self, tol: f64) -> Vec<usize> {
        let mut a = self.clone();
        let scale = self.max_abs().max(1.0);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let mut piv = row;
            let mut best = a[(row, col)].norm();
            for r in row + 1..a.rows {
                let v = a[(r, col)].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best <= tol * scale {
                continue;
            }
            if piv != row {
                for j in 0..a.cols {
                    a.data.swap(row * a.cols + j, piv * a.cols + j);
                }
            }
            let d = a[(row, col)];
            for r in 0..a.rows {
                if r == row {
                    continue;
                }
                let f = a[(r, col)] / d;
                for j in 0..a.cols {
                    let v = a[(row, j)];
                    a[(r, j)] -= f * v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}
