//! Banded symmetric positive-definite solver.
//!
//! Frame meshes with consecutive node numbering assemble into a stiffness
//! matrix whose half-bandwidth is a small constant, so Cholesky on the
//! band solves them in O(n * hb^2) instead of O(n^3).

use crate::error::ModelError;
use crate::scalar::Scalar;

/// Symmetric matrix stored by its lower band: entry `(i, j)` with
/// `0 <= i - j <= hb` lives at `data[(i - j) * n + j]`.
#[derive(Debug, Clone)]
pub struct BandedSpd<T> {
    n: usize,
    hb: usize,
    data: Vec<T>,
}

/// Cholesky factor of a [`BandedSpd`], same band layout.
#[derive(Debug, Clone)]
pub struct BandedCholesky<T> {
    n: usize,
    hb: usize,
    data: Vec<T>,
}

impl<T: Scalar> BandedSpd<T> {
    /// Zero matrix of size `n` with half-bandwidth `hb`.
    pub fn new(n: usize, hb: usize) -> Self {
        assert!(n > 0, "matrix must be non-empty");
        BandedSpd {
            n,
            hb,
            data: vec![T::zero(); (hb + 1) * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_bandwidth(&self) -> usize {
        self.hb
    }

    /// Accumulates `v` into entry `(i, j)`. Upper-triangle calls are
    /// dropped so symmetric element matrices can be assembled untriaged;
    /// the mirrored lower entry carries the value.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        if i < j {
            return;
        }
        assert!(
            i - j <= self.hb && i < self.n,
            "entry ({i}, {j}) outside the band (hb = {})",
            self.hb
        );
        self.data[(i - j) * self.n + j] = self.data[(i - j) * self.n + j] + v;
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> T {
        let (lo, hi) = if i >= j { (j, i) } else { (i, j) };
        if hi - lo > self.hb {
            return T::zero();
        }
        self.data[(hi - lo) * self.n + lo]
    }

    /// Replaces row and column `i` by the identity's, decoupling the DOF.
    pub fn clamp_dof(&mut self, i: usize) {
        assert!(i < self.n);
        self.data[i] = T::one();
        for k in 1..=self.hb {
            if i + k < self.n {
                self.data[k * self.n + i] = T::zero();
            }
            if i >= k {
                self.data[k * self.n + (i - k)] = T::zero();
            }
        }
    }

    /// Factors the matrix; fails on a non-positive pivot.
    pub fn cholesky(mut self) -> Result<BandedCholesky<T>, ModelError> {
        let (n, hb) = (self.n, self.hb);
        for j in 0..n {
            let start = j.saturating_sub(hb);
            let mut diag = self.data[j];
            for p in start..j {
                let l_jp = self.data[(j - p) * n + p];
                diag = diag - l_jp * l_jp;
            }
            if !(diag > T::zero()) || !diag.is_finite() {
                return Err(ModelError::SingularStiffness { pivot: j });
            }
            let l_jj = diag.sqrt();
            self.data[j] = l_jj;
            let last = (j + hb).min(n - 1);
            for i in (j + 1)..=last {
                let mut v = self.data[(i - j) * n + j];
                for p in i.saturating_sub(hb).max(start)..j {
                    v = v - self.data[(i - p) * n + p] * self.data[(j - p) * n + p];
                }
                self.data[(i - j) * n + j] = v / l_jj;
            }
        }
        Ok(BandedCholesky {
            n,
            hb,
            data: self.data,
        })
    }
}

impl<T: Scalar> BandedCholesky<T> {
    /// Solves `A x = rhs` in place using the stored factor.
    pub fn solve_in_place(&self, rhs: &mut [T]) {
        assert_eq!(rhs.len(), self.n, "rhs length must match the matrix");
        let (n, hb) = (self.n, self.hb);
        for i in 0..n {
            let mut v = rhs[i];
            for p in i.saturating_sub(hb)..i {
                v = v - self.data[(i - p) * n + p] * rhs[p];
            }
            rhs[i] = v / self.data[i];
        }
        for i in (0..n).rev() {
            let mut v = rhs[i];
            let last = (i + hb).min(n - 1);
            for q in (i + 1)..=last {
                v = v - self.data[(q - i) * n + i] * rhs[q];
            }
            rhs[i] = v / self.data[i];
        }
    }

    /// Convenience wrapper returning a fresh solution vector.
    pub fn solve(&self, rhs: &[T]) -> Vec<T> {
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}
