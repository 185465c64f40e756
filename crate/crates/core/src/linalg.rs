//! Dense complex row reduction with partial pivoting.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivots smaller than this times the largest matrix entry are rejected.
pub const PIVOT_RELATIVE_THRESHOLD: f64 = 1e-13;

/// Systems whose reciprocal 1-norm condition number falls below this are
/// reported as numerically singular.
pub const RCOND_THRESHOLD: f64 = 1e-13;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn norm1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `PA = LU` factorization; `L` has unit diagonal and shares storage with `U`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: Matrix,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn factor(matrix: &Matrix) -> Result<Self> {
        let n = matrix.dim();
        let threshold = PIVOT_RELATIVE_THRESHOLD * matrix.max_abs();
        let mut lu = matrix.clone();
        let mut perm: Vec<usize> = (0..n).collect();

        for col in 0..n {
            let (pivot_row, pivot_mag) =
                (col..n)
                    .map(|r| (r, lu.get(r, col).norm()))
                    .fold(
                        (col, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if !(pivot_mag >= threshold) || pivot_mag == 0.0 {
                return Err(Error::SingularMatrix {
                    column: col,
                    pivot: pivot_mag,
                    threshold,
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.data.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
            }
            let pivot = lu.get(col, col);
            for r in col + 1..n {
                let factor = lu.get(r, col) / pivot;
                lu.set(r, col, factor);
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in col + 1..n {
                    let v = lu.get(r, j) - factor * lu.get(col, j);
                    lu.set(r, j, v);
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.dim();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let dot: Complex64 = row[..i].iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= dot;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let dot: Complex64 = row[i + 1..]
                .iter()
                .zip(&x[i + 1..])
                .map(|(a, b)| a * b)
                .sum();
            x[i] = (x[i] - dot) / row[i];
        }
        x
    }

    /// Exact `‖A⁻¹‖₁`, one solve per column.
    pub fn inverse_norm1(&self) -> f64 {
        let n = self.lu.dim();
        let mut unit = vec![Complex64::new(0.0, 0.0); n];
        let mut best = 0.0f64;
        for j in 0..n {
            unit[j] = Complex64::new(1.0, 0.0);
            let col = self.solve(&unit);
            unit[j] = Complex64::new(0.0, 0.0);
            best = best.max(col.iter().map(|z| z.norm()).sum());
        }
        best
    }
}

/// Solves `A x = b`, rejecting singular and hopelessly ill-conditioned
/// systems. Returns the solution and the reciprocal condition number.
pub fn solve_checked(matrix: &Matrix, rhs: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let factors = LuFactors::factor(matrix)?;
    let rcond = 1.0 / (matrix.norm1() * factors.inverse_norm1());
    if !(rcond >= RCOND_THRESHOLD) {
        return Err(Error::IllConditioned {
            rcond,
            threshold: RCOND_THRESHOLD,
        });
    }
    Ok((factors.solve(rhs), rcond))
}
