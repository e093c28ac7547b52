//! Thin wrappers over nalgebra's complex SVD and Schur decompositions.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::linalg::{Schur, QR, SVD};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::{Error, Result};

const MAX_SWEEPS: usize = 10_000;

pub(crate) struct SortedSvd {
    /// Descending; length `min(rows, cols)` of the unpadded matrix.
    pub singular_values: Vec<f64>,
    /// Right singular vectors, one per column of the input, ordered to match
    /// descending singular values (padding zeros last).
    pub right_vectors: Vec<Vec<Complex64>>,
}

/// SVD with a full set of right singular vectors, even for wide matrices.
pub(crate) fn svd_right(rows: usize, cols: usize, entries: &[Complex64]) -> Result<SortedSvd> {
    let padded = rows.max(cols);
    let mut m = DMatrix::<Complex64>::zeros(padded, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = entries[r * cols + c];
        }
    }
    let svd = SVD::try_new(m, false, true, f64::EPSILON, MAX_SWEEPS).ok_or(Error::SvdNotConverged)?;
    let v_t = svd.v_t.as_ref().ok_or(Error::SvdNotConverged)?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let right_vectors = order
        .iter()
        .map(|&i| (0..cols).map(|c| v_t[(i, c)].conj()).collect())
        .collect();
    let singular_values = order
        .iter()
        .take(rows.min(cols))
        .map(|&i| svd.singular_values[i])
        .collect();
    Ok(SortedSvd {
        singular_values,
        right_vectors,
    })
}

pub(crate) struct LeastSquares {
    pub solution: Vec<Complex64>,
    pub condition: f64,
}

/// Least-squares solution of `A x = b`, `A` given column by column. Full
/// column rank systems are solved by Householder QR; rank-deficient ones fall
/// back to the minimum-norm SVD solution.
pub(crate) fn least_squares(columns: &[Vec<Complex64>], rhs: &[Complex64]) -> Result<LeastSquares> {
    let rows = rhs.len();
    let cols = columns.len();
    let a = DMatrix::from_fn(rows, cols, |r, c| columns[c][r]);
    let b = DVector::from_column_slice(rhs);
    let sv = SVD::try_new(a.clone(), false, false, f64::EPSILON, MAX_SWEEPS).ok_or(Error::SvdNotConverged)?;
    let s_max = sv.singular_values.iter().cloned().fold(0.0, f64::max);
    let s_min = sv.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if cols > rows || s_min == 0.0 {
        f64::INFINITY
    } else {
        s_max / s_min
    };
    if condition < 1e12 {
        let qr = QR::new(a);
        let qtb = qr.q().adjoint() * b;
        let r = qr.r();
        let mut x = vec![Complex64::zero(); cols];
        for i in (0..cols).rev() {
            let mut acc = qtb[i];
            for j in i + 1..cols {
                acc -= r[(i, j)] * x[j];
            }
            x[i] = acc / r[(i, i)];
        }
        return Ok(LeastSquares { solution: x, condition });
    }
    let svd = SVD::try_new(a, true, true, f64::EPSILON, MAX_SWEEPS).ok_or(Error::SvdNotConverged)?;
    let x = svd.solve(&b, s_max * 1e-15).map_err(|_| Error::SvdNotConverged)?;
    Ok(LeastSquares {
        solution: x.iter().cloned().collect(),
        condition,
    })
}

/// Eigenvalues of a square complex matrix via the Schur form.
pub(crate) fn eigenvalues(n: usize, entries: &[Complex64]) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(alloc::vec![entries[0]]);
    }
    let m = DMatrix::from_row_slice(n, n, entries);
    let schur = Schur::try_new(m, f64::EPSILON, MAX_SWEEPS).ok_or(Error::EigenNotConverged)?;
    let (_, t) = schur.unpack();
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && !t[(i + 1, i)].is_zero() {
            // Unreduced 2x2 block.
            let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let half_tr = (a + d) * 0.5;
            let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
            out.push(half_tr + disc);
            out.push(half_tr - disc);
            i += 2;
        } else {
            out.push(t[(i, i)]);
            i += 1;
        }
    }
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::EigenNotConverged);
    }
    Ok(out)
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn least_squares_with_clustered_singular_values() {
        // Powers of three nearly equispaced unit directions: singular values agree to ~1e-16.
        let n = 13usize;
        let w: Vec<f64> = (0..=n).map(|i| crate::special::binomial(n, i).sqrt()).collect();
        let cols: Vec<Vec<Complex64>> = (0..3)
            .map(|j| {
                let b = Complex64::from_polar(1.0 + 1e-14, 2.0 * core::f64::consts::PI * j as f64 / 3.0);
                (0..=n).map(|i| b.powi((n - i) as i32) * w[i]).collect()
            })
            .collect();
        let x0 = [c(0.5, -0.5), c(0.5, -0.5), c(0.2, 0.8)];
        let rhs: Vec<Complex64> = (0..=n).map(|i| (0..3).map(|k| cols[k][i] * x0[k]).sum()).collect();
        let ls = least_squares(&cols, &rhs).unwrap();
        assert!(ls.condition < 1.001);
        for (x, y) in ls.solution.iter().zip(&x0) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn wide_matrix_has_full_right_basis() {
        // [0, 1/2, 0] has a two-dimensional kernel.
        let svd = svd_right(1, 3, &[c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(svd.singular_values.len(), 1);
        assert!((svd.singular_values[0] - 0.5).abs() < 1e-15);
        assert_eq!(svd.right_vectors.len(), 3);
        for v in &svd.right_vectors[1..] {
            assert!(v[1].norm() < 1e-14);
        }
    }

    #[test]
    fn eigenvalues_of_companion_of_roots_of_unity() {
        // z^3 - 1
        let n = 3;
        let mut m = alloc::vec![c(0.0, 0.0); 9];
        m[3] = c(1.0, 0.0);
        m[2 * 3 + 1] = c(1.0, 0.0);
        m[2] = c(1.0, 0.0);
        let ev = eigenvalues(n, &m).unwrap();
        for z in ev {
            assert!(((z * z * z) - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn least_squares_recovers_exact_solution() {
        let cols = alloc::vec![
            alloc::vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            alloc::vec![c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)],
        ];
        let rhs = [c(2.0, 0.0), c(0.0, -3.0), c(-1.0, 0.0)];
        let ls = least_squares(&cols, &rhs).unwrap();
        assert!((ls.solution[0] - c(2.0, 0.0)).norm() < 1e-13);
        assert!((ls.solution[1] - c(-3.0, 0.0)).norm() < 1e-13);
        assert!(ls.condition >= 1.0);
    }
}
