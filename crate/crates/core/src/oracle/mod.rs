//! Exact rank decisions over the Gaussian rationals `Q(i)`.
//!
//! Everything here is tolerance-free: catalecticant ranks come from
//! fraction-free elimination and square-freeness from an exact polynomial gcd.
//! The floating-point path in [`crate::sylvester`] is validated against it.

mod scalar;

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

pub use scalar::ExactScalar;
use scalar::GaussInt;

use crate::form::BinaryForm;
use crate::{Error, Result};

/// Default cap on the bit length of intermediate elimination entries.
pub const DEFAULT_BIT_CAP: u64 = 1 << 16;

/// Dense row-major matrix over `Q(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactScalar>) -> Result<Self> {
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

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn to_complex(&self) -> crate::ComplexMatrix {
        crate::ComplexMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(ExactScalar::to_complex).collect(),
        )
        .expect("same shape")
    }
}

/// Binary form over `Q(i)` in the binomial convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactForm {
    coeffs: Vec<ExactScalar>,
}

impl ExactForm {
    pub fn from_binomial_coeffs(coeffs: Vec<ExactScalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { coeffs })
    }

    /// `m_i` is the coefficient of `x^i y^(N-i)`.
    pub fn from_monomial_coeffs(m: Vec<ExactScalar>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Empty);
        }
        let n = m.len() - 1;
        let coeffs = m
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.checked_div(&ExactScalar::new(binomial_big(n, i).into(), Default::default()))
                    .expect("binomials are nonzero")
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn to_monomial_coeffs(&self) -> Vec<ExactScalar> {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.scale_int(&binomial_big(n, i)))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_zero)
    }

    pub fn to_float(&self) -> BinaryForm {
        BinaryForm::from_binomial_coeffs(self.coeffs.iter().map(ExactScalar::to_complex).collect()).expect("nonempty")
    }
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Exact `C_{N-r,r}(p)`.
pub fn exact_catalecticant(p: &ExactForm, r: usize) -> Result<ExactMatrix> {
    let n = p.degree();
    if r > n {
        return Err(Error::OrderOutOfRange { order: r, degree: n });
    }
    let (rows, cols) = (n - r + 1, r + 1);
    let entries = (0..rows)
        .flat_map(|k| (0..cols).map(move |j| p.coeffs[k + j].clone()))
        .collect();
    ExactMatrix::new(rows, cols, entries)
}

/// Rank by fraction-free elimination with the default bit cap.
pub fn exact_rank(m: &ExactMatrix) -> Result<usize> {
    exact_rank_with_cap(m, DEFAULT_BIT_CAP)
}

/// Rank by Bareiss elimination over the Gaussian integers. Each row is first
/// cleared of denominators; fails with [`Error::BitLengthExceeded`] once an
/// intermediate entry grows past `bit_cap` bits.
pub fn exact_rank_with_cap(m: &ExactMatrix, bit_cap: u64) -> Result<usize> {
    if m.rows == 0 || m.cols == 0 {
        return Err(Error::Empty);
    }
    let mut a: Vec<Vec<GaussInt>> = (0..m.rows)
        .map(|r| {
            let row = &m.entries[r * m.cols..(r + 1) * m.cols];
            let l = row.iter().fold(BigInt::one(), |acc, x| {
                num_integer::Integer::lcm(&acc, &x.denominator_lcm())
            });
            row.iter().map(|x| x.to_gaussian_integer(&l)).collect()
        })
        .collect();
    let mut prev = GaussInt::one();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(pivot) = (rank..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..m.rows {
            for c in col + 1..m.cols {
                let v = a[rank][col].mul(&a[r][c]).sub(&a[r][col].mul(&a[rank][c]));
                let v = v.div_exact(&prev);
                if v.bits() > bit_cap {
                    return Err(Error::BitLengthExceeded { cap: bit_cap });
                }
                a[r][c] = v;
            }
            a[r][col] = GaussInt {
                re: 0.into(),
                im: 0.into(),
            };
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    Ok(rank)
}

/// Smallest `r ≥ 1` with `rank C_{N-r,r}(p) ≤ r`, decided exactly.
pub fn exact_border_rank(p: &ExactForm) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = p.degree();
    if n == 0 {
        return Ok(1);
    }
    for r in 1..=n {
        if exact_rank(&exact_catalecticant(p, r)?)? <= r {
            return Ok(r);
        }
    }
    unreachable!("C_{{0,N}} has a single row")
}

/// Exact symmetric and border rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSymmetricRank {
    pub sr: usize,
    pub sbr: usize,
    /// Square-free kernel polynomial when `sr = sbr`, otherwise the first kernel basis element.
    pub kernel_poly: ExactForm,
}

/// `sr = sbr` iff some element of the exact kernel of `C_{N-sbr,sbr}` is
/// square-free. Kernels of dimension one and two are searched exhaustively:
/// in a pencil `a u + b v` the non-square-free members are the roots of a
/// discriminant of degree `2 sbr - 2` in `(a : b)`, so `2 sbr` distinct ratios
/// decide the question. Larger kernels are probed along a moment curve and
/// report [`Error::InconclusiveKernelSearch`] when every probe fails.
pub fn exact_symmetric_rank(p: &ExactForm) -> Result<ExactSymmetricRank> {
    let sbr = exact_border_rank(p)?;
    let n = p.degree();
    if n == 0 {
        return Ok(ExactSymmetricRank {
            sr: 1,
            sbr: 1,
            kernel_poly: ExactForm::from_monomial_coeffs(vec![ExactScalar::zero(), ExactScalar::one()])?,
        });
    }
    let basis = exact_kernel(&exact_catalecticant(p, sbr)?);
    let probes = 2 * sbr + 1;
    let mut candidates: Vec<Vec<ExactScalar>> = basis.clone();
    if basis.len() >= 2 {
        for j in 0..probes as i64 {
            let coef: Vec<ExactScalar> = (0..basis.len() as u32)
                .map(|e| ExactScalar::from_integer(j.pow(e)))
                .collect();
            candidates.push(combine(&basis, &coef));
        }
    }
    for u in &candidates {
        let q = ExactForm::from_monomial_coeffs(u.clone())?;
        if exact_square_free(&q) {
            return Ok(ExactSymmetricRank {
                sr: sbr,
                sbr,
                kernel_poly: q,
            });
        }
    }
    if basis.len() > 2 {
        return Err(Error::InconclusiveKernelSearch { order: sbr });
    }
    Ok(ExactSymmetricRank {
        sr: n - sbr + 2,
        sbr,
        kernel_poly: ExactForm::from_monomial_coeffs(basis[0].clone())?,
    })
}

fn combine(basis: &[Vec<ExactScalar>], coef: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut v = vec![ExactScalar::zero(); basis[0].len()];
    for (b, c) in basis.iter().zip(coef) {
        for (o, x) in v.iter_mut().zip(b) {
            *o = &*o + &(c * x);
        }
    }
    v
}

/// Basis of the right null space read off the reduced row echelon form: one
/// vector per free column, with a one in that column.
pub fn exact_kernel(m: &ExactMatrix) -> Vec<Vec<ExactScalar>> {
    let mut a: Vec<Vec<ExactScalar>> = (0..m.rows)
        .map(|r| m.entries[r * m.cols..(r + 1) * m.cols].to_vec())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let piv = a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = x.checked_div(&piv).expect("nonzero pivot");
        }
        let pivot_row = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let f = target[col].clone();
            for (x, p) in target.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * p);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..m.cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![ExactScalar::zero(); m.cols];
            v[free] = ExactScalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[r][free];
            }
            v
        })
        .collect()
}

/// True iff `q` has no repeated projective root. Roots at `(0 : 1)` and
/// `(1 : 0)` are counted from the vanishing end coefficients; the remaining
/// affine part is square-free iff `gcd(f, f')` is constant. The zero form is
/// not square-free.
pub fn exact_square_free(q: &ExactForm) -> bool {
    let m = q.to_monomial_coeffs();
    let Some(lo) = m.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let hi = m.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    if lo > 1 || m.len() - 1 - hi > 1 {
        return false;
    }
    let f: Vec<ExactScalar> = m[lo..=hi].to_vec();
    if f.len() <= 2 {
        return true;
    }
    let df: Vec<ExactScalar> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale_int(&BigInt::from(i)))
        .collect();
    poly_gcd(f, df).len() == 1
}

/// Monic gcd of two polynomials (ascending coefficients) over `Q(i)`.
fn poly_gcd(mut a: Vec<ExactScalar>, mut b: Vec<ExactScalar>) -> Vec<ExactScalar> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().expect("gcd of nonzero polynomials");
    a.iter().map(|c| c.checked_div(&lead).expect("nonzero lead")).collect()
}

fn poly_rem(a: &[ExactScalar], b: &[ExactScalar]) -> Vec<ExactScalar> {
    let mut r = a.to_vec();
    let lead = b.last().expect("nonzero divisor");
    while r.len() >= b.len() {
        let f = r.last().expect("nonempty").checked_div(lead).expect("nonzero lead");
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&f * c);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn trim(p: &mut Vec<ExactScalar>) {
    while p.last().is_some_and(ExactScalar::is_zero) {
        p.pop();
    }
}
