//! Catalecticant (Hankel) matrices of binary forms and their numerical rank.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::form::BinaryForm;
use crate::linalg::{norm, svd_right};
use crate::special::binomial;
use crate::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.entries[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// True when every anti-diagonal is constant (exact comparison).
    pub fn is_hankel(&self) -> bool {
        (0..self.rows)
            .all(|r| (0..self.cols).all(|c| r == 0 || c + 1 == self.cols || self.get(r, c) == self.get(r - 1, c + 1)))
    }
}

/// Outcome of a singular-value rank decision.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub numerical_rank: usize,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub tolerance_used: f64,
    /// Orthonormal basis of the right null space of the rank-truncated matrix.
    pub kernel_basis: Vec<Vec<Complex64>>,
}

/// The `(N-r+1) × (r+1)` catalecticant `C_{N-r,r}(p)` with entries `a_{k+j}` (0-based).
pub fn catalecticant(p: &BinaryForm, r: usize) -> Result<ComplexMatrix> {
    let n = p.degree();
    if r > n {
        return Err(Error::OrderOutOfRange { order: r, degree: n });
    }
    let rows = n - r + 1;
    let cols = r + 1;
    let a = p.coeffs();
    let entries = (0..rows).flat_map(|k| (0..cols).map(move |j| a[k + j])).collect();
    ComplexMatrix::new(rows, cols, entries)
}

/// `C_{N-r,r}(p)` with entry `(k, j)` scaled by `sqrt(C(N-r, k) C(r, j))`.
///
/// The scaling is diagonal on both sides, so rank and kernel dimension are
/// those of [`catalecticant`]; its singular values are unchanged by unitary
/// substitutions of `(x, y)`. A kernel vector `v` of this matrix maps to the
/// kernel vector `u_j = sqrt(C(r, j)) v_j` of the plain catalecticant.
pub fn weighted_catalecticant(p: &BinaryForm, r: usize) -> Result<ComplexMatrix> {
    let m = catalecticant(p, r)?;
    let n = p.degree();
    let row_w: Vec<f64> = (0..m.rows).map(|k| binomial(n - r, k).sqrt()).collect();
    let col_w: Vec<f64> = (0..m.cols).map(|j| binomial(r, j).sqrt()).collect();
    let entries = m
        .entries
        .iter()
        .enumerate()
        .map(|(idx, &a)| a * (row_w[idx / m.cols] * col_w[idx % m.cols]))
        .collect();
    ComplexMatrix::new(m.rows, m.cols, entries)
}

/// Rank of the weighted catalecticant and a kernel basis of the plain one.
pub(crate) fn weighted_kernel(p: &BinaryForm, r: usize, tol: f64) -> Result<(usize, Vec<Vec<Complex64>>)> {
    let rep = numerical_rank(&weighted_catalecticant(p, r)?, tol)?;
    let col_w: Vec<f64> = (0..=r).map(|j| binomial(r, j).sqrt()).collect();
    let basis = rep
        .kernel_basis
        .into_iter()
        .map(|v| {
            let u: Vec<Complex64> = v.iter().zip(&col_w).map(|(&z, &w)| z * w).collect();
            let nu = norm(&u);
            u.into_iter().map(|z| z / nu).collect()
        })
        .collect();
    Ok((rep.numerical_rank, basis))
}

/// Counts singular values above `tol · σ_max`; the kernel basis spans the
/// trailing right singular vectors.
pub fn numerical_rank(m: &ComplexMatrix, tol: f64) -> Result<RankReport> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::Empty);
    }
    let svd = svd_right(m.rows, m.cols, &m.entries)?;
    let sigma_max = svd.singular_values.first().copied().unwrap_or(0.0);
    let numerical_rank = if sigma_max.is_zero() {
        0
    } else {
        svd.singular_values.iter().filter(|&&s| s > tol * sigma_max).count()
    };
    let kernel_basis = svd.right_vectors[numerical_rank..].to_vec();
    Ok(RankReport {
        numerical_rank,
        singular_values: svd.singular_values,
        tolerance_used: tol,
        kernel_basis,
    })
}
