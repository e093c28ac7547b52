//! Symmetric border rank, symmetric rank and Waring decompositions of binary
//! forms via Sylvester's catalecticant algorithm.
//!
//! The border rank is the smallest `r` with `rank C_{N-r,r}(p) ≤ r`. A kernel
//! vector `u` of that catalecticant defines the kernel polynomial
//! `Q(α, β) = Σ_j u_j α^j β^(r-j)`; `Q` vanishes at `(α : β)` exactly when
//! `(α x + β y)^N` is apolar-compatible with `p`, so its roots are the linear
//! forms of a decomposition. If some kernel element has distinct roots the
//! symmetric rank equals the border rank, otherwise it is `N - r + 2` and the
//! decomposition comes from the kernel at that larger order.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalecticant::weighted_kernel;
use crate::form::{expand_linear_power, form_distance, BinaryForm, LinearForm};
use crate::linalg::{least_squares, norm};
use crate::roots::{cluster_roots, is_square_free, roots_of_binary_form, ProjectiveRoot};
use crate::special::binomial;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative singular-value cutoff for rank decisions.
    pub rank: f64,
    /// Chordal distance below which two roots count as equal.
    pub root: f64,
    /// Maximum relative re-expansion residual of a decomposition.
    pub residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 1e-8,
            root: 1e-6,
            residual: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SylvesterConfig {
    pub tolerances: Tolerances,
    /// Seed for the random kernel combinations tried when the kernel is not one-dimensional.
    pub seed: u64,
    pub random_candidates: usize,
}

impl Default for SylvesterConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            seed: 0x5eed,
            random_candidates: 32,
        }
    }
}

impl SylvesterConfig {
    fn validate(&self) -> Result<()> {
        for t in [self.tolerances.rank, self.tolerances.root, self.tolerances.residual] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidTolerance(t));
            }
        }
        Ok(())
    }
}

/// Smallest `r ≥ 1` with `rank C_{N-r,r}(p) ≤ r`. Constants have border rank 1.
pub fn border_rank(p: &BinaryForm, rank_tol: f64) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = p.degree();
    if n == 0 {
        return Ok(1);
    }
    let pn = p.normalized();
    for r in 1..=n {
        if weighted_kernel(&pn, r, rank_tol)?.0 <= r {
            return Ok(r);
        }
    }
    unreachable!("C_{{0,N}} has a single row")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricRank {
    pub sr: usize,
    pub sbr: usize,
    /// Kernel polynomial of degree `sbr`; monomial coefficient of `x^j y^(r-j)` is `u_j`.
    pub kernel_poly: BinaryForm,
    /// Minimum chordal root separation of `kernel_poly`.
    pub separation: f64,
    /// Dimension of the catalecticant kernel at order `sbr`.
    pub kernel_dimension: usize,
}

/// Border rank, symmetric rank and the deciding kernel polynomial.
pub fn symmetric_rank(p: &BinaryForm, cfg: &SylvesterConfig) -> Result<SymmetricRank> {
    cfg.validate()?;
    if p.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = p.degree();
    if n == 0 {
        return Ok(SymmetricRank {
            sr: 1,
            sbr: 1,
            kernel_poly: BinaryForm::monomial(1, 0),
            separation: f64::INFINITY,
            kernel_dimension: 1,
        });
    }
    let pn = p.normalized();
    let sbr = border_rank(&pn, cfg.tolerances.rank)?;
    let (_, kernel) = weighted_kernel(&pn, sbr, cfg.tolerances.rank)?;
    let candidates = kernel_candidates(&kernel, cfg);
    let mut indeterminate: Option<f64> = None;
    let mut first = None;
    for u in candidates {
        let q = kernel_form(&u);
        let sf = is_square_free(&q, &cfg.tolerances)?;
        if sf.square_free {
            return Ok(SymmetricRank {
                sr: sbr,
                sbr,
                kernel_poly: q,
                separation: sf.min_separation,
                kernel_dimension: kernel.len(),
            });
        }
        if sf.indeterminate(&cfg.tolerances) {
            indeterminate = Some(indeterminate.map_or(sf.min_separation, |s: f64| s.max(sf.min_separation)));
        }
        if first.is_none() {
            first = Some((q, sf.min_separation));
        }
    }
    if let Some(separation) = indeterminate {
        return Err(Error::IndeterminateRoots { separation });
    }
    let (kernel_poly, separation) = first.expect("kernel is nonempty at the border rank");
    Ok(SymmetricRank {
        sr: n - sbr + 2,
        sbr,
        kernel_poly,
        separation,
        kernel_dimension: kernel.len(),
    })
}

/// One weighted power `λ (α x + β y)^N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub lambda: Complex64,
    pub form: LinearForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub terms: Vec<Term>,
    pub sr: usize,
    pub sbr: usize,
    /// Relative re-expansion residual against the input form.
    pub residual: f64,
    /// Roots of the kernel polynomial the terms were read from.
    pub kernel_poly_roots: Vec<(ProjectiveRoot, usize)>,
    /// Condition number of the weight solve.
    pub condition: f64,
}

impl Decomposition {
    /// `Σ λ_k (α_k x + β_k y)^N`.
    pub fn expand(&self, degree: usize) -> BinaryForm {
        expand_terms(&self.terms, degree)
    }
}

pub fn expand_terms(terms: &[Term], degree: usize) -> BinaryForm {
    terms.iter().fold(BinaryForm::zero(degree), |acc, t| {
        &acc + &expand_linear_power(&t.form, degree).scale(t.lambda)
    })
}

/// Explicit decomposition `p = Σ_{k=1}^{sr} λ_k (α_k x + β_k y)^N`.
pub fn decompose(p: &BinaryForm, cfg: &SylvesterConfig) -> Result<Decomposition> {
    let rank = symmetric_rank(p, cfg)?;
    let n = p.degree();
    if n == 0 {
        let form = LinearForm::new(Complex64::new(1.0, 0.0), Complex64::zero())?;
        return Ok(Decomposition {
            terms: vec![Term {
                lambda: p.coeffs()[0],
                form,
            }],
            sr: 1,
            sbr: 1,
            residual: 0.0,
            kernel_poly_roots: vec![(ProjectiveRoot::infinity(), 1)],
            condition: 1.0,
        });
    }
    let pn = p.normalized();
    let level = rank.sr;
    let (_, kernel) = weighted_kernel(&pn, level, cfg.tolerances.rank)?;
    let mut ranked = Vec::new();
    for u in kernel_candidates(&kernel, cfg) {
        let q = kernel_form(&u);
        let sf = is_square_free(&q, &cfg.tolerances)?;
        if sf.square_free {
            ranked.push((sf.min_separation, q));
        }
    }
    if ranked.is_empty() {
        return Err(Error::NoDistinctRootKernel {
            order: level,
            attempts: candidate_count(kernel.len(), cfg),
        });
    }
    // Widest-separated roots first: they give the best-conditioned weight solve.
    ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(core::cmp::Ordering::Equal));
    let mut best_failure = (f64::INFINITY, f64::INFINITY);
    for (_, q) in ranked {
        let roots = roots_of_binary_form(&q)?;
        let forms: Vec<LinearForm> = roots.iter().map(|(r, _)| r.to_linear_form().canonical().1).collect();
        let (lambdas, condition) = solve_weights(p, &forms)?;
        let terms: Vec<Term> = forms
            .iter()
            .zip(&lambdas)
            .map(|(&form, &lambda)| Term { lambda, form })
            .collect();
        let residual = form_distance(p, &expand_terms(&terms, n))?;
        if residual <= cfg.tolerances.residual {
            return Ok(Decomposition {
                terms,
                sr: rank.sr,
                sbr: rank.sbr,
                residual,
                kernel_poly_roots: roots,
                condition,
            });
        }
        if residual < best_failure.1 {
            best_failure = (condition, residual);
        }
    }
    Err(Error::IllConditioned {
        condition: best_failure.0,
        residual: best_failure.1,
    })
}

/// Least-squares weights for `p ≈ Σ λ_k l_k^N`, solved on `sqrt(C(N, i))`-scaled
/// coefficients, where the columns have norm `‖l_k‖^N`.
fn solve_weights(p: &BinaryForm, forms: &[LinearForm]) -> Result<(Vec<Complex64>, f64)> {
    let n = p.degree();
    let weight: Vec<f64> = (0..=n).map(|i| binomial(n, i).sqrt()).collect();
    let columns: Vec<Vec<Complex64>> = forms
        .iter()
        .map(|l| {
            expand_linear_power(l, n)
                .coeffs()
                .iter()
                .zip(&weight)
                .map(|(&a, &w)| a * w)
                .collect()
        })
        .collect();
    solve_scaled(p, &columns, &weight)
}

fn solve_scaled(p: &BinaryForm, columns: &[Vec<Complex64>], weight: &[f64]) -> Result<(Vec<Complex64>, f64)> {
    let rhs: Vec<Complex64> = p.coeffs().iter().zip(weight).map(|(&a, &w)| a * w).collect();
    let ls = least_squares(columns, &rhs)?;
    Ok((ls.solution, ls.condition))
}

/// One term `l^power · F` of a generalized decomposition, with `deg F = s - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedTerm {
    pub linear: LinearForm,
    pub power: usize,
    pub cofactor: BinaryForm,
}

impl GeneralizedTerm {
    /// Root multiplicity `s` of the underlying kernel polynomial root.
    pub fn multiplicity(&self) -> usize {
        self.cofactor.degree() + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedDecomposition {
    pub terms: Vec<GeneralizedTerm>,
    pub sr: usize,
    pub sbr: usize,
    pub residual: f64,
}

impl GeneralizedDecomposition {
    pub fn expand(&self, degree: usize) -> BinaryForm {
        self.terms.iter().fold(BinaryForm::zero(degree), |acc, t| {
            &acc + &expand_linear_power(&t.linear, t.power).multiply(&t.cofactor)
        })
    }
}

/// `p = Σ_k l_k^(N - s_k + 1) F_k`, with `l_k` the distinct roots of the
/// border-rank kernel polynomial, `s_k` their multiplicities and `F_k` forms of
/// degree `s_k - 1`. Forms whose kernel polynomial has distinct roots get the
/// ordinary decomposition with constant cofactors.
pub fn generalized_decompose(p: &BinaryForm, cfg: &SylvesterConfig) -> Result<GeneralizedDecomposition> {
    let rank = symmetric_rank(p, cfg)?;
    let n = p.degree();
    if rank.sr == rank.sbr {
        let d = decompose(p, cfg)?;
        let terms = d
            .terms
            .iter()
            .map(|t| GeneralizedTerm {
                linear: t.form,
                power: n,
                cofactor: BinaryForm::from_binomial_coeffs(vec![t.lambda]).expect("nonempty"),
            })
            .collect();
        return Ok(GeneralizedDecomposition {
            terms,
            sr: d.sr,
            sbr: d.sbr,
            residual: d.residual,
        });
    }
    let clusters = cluster_roots(&rank.kernel_poly, &cfg.tolerances)?;
    let weight: Vec<f64> = (0..=n).map(|i| binomial(n, i).sqrt()).collect();
    let mut columns = Vec::new();
    let mut layout = Vec::new();
    for (root, s) in &clusters {
        let linear = root.to_linear_form().canonical().1;
        let power = n + 1 - s;
        let base = expand_linear_power(&linear, power);
        for i in 0..*s {
            let col = base.multiply(&BinaryForm::monomial(s - 1, i));
            columns.push(col.coeffs().iter().zip(&weight).map(|(&a, &w)| a * w).collect());
        }
        layout.push((linear, power, *s));
    }
    let (coeffs, condition) = solve_scaled(p, &columns, &weight)?;
    let mut offset = 0;
    let terms: Vec<GeneralizedTerm> = layout
        .into_iter()
        .map(|(linear, power, s)| {
            let cofactor = BinaryForm::from_monomial_coeffs(coeffs[offset..offset + s].to_vec()).expect("s >= 1");
            offset += s;
            GeneralizedTerm {
                linear,
                power,
                cofactor,
            }
        })
        .collect();
    let mut out = GeneralizedDecomposition {
        terms,
        sr: rank.sr,
        sbr: rank.sbr,
        residual: 0.0,
    };
    out.residual = form_distance(p, &out.expand(n))?;
    if out.residual > cfg.tolerances.residual {
        return Err(Error::IllConditioned {
            condition,
            residual: out.residual,
        });
    }
    Ok(out)
}

/// Kernel polynomial with monomial coefficients `u` (index = power of `x`).
fn kernel_form(u: &[Complex64]) -> BinaryForm {
    BinaryForm::from_monomial_coeffs(u.to_vec()).expect("kernel vectors are nonempty")
}

fn candidate_count(dim: usize, cfg: &SylvesterConfig) -> usize {
    if dim <= 1 {
        dim
    } else {
        dim + 3 + cfg.random_candidates
    }
}

/// Kernel elements to test, in a fixed order: the reduced-echelon basis of the
/// kernel, then `b_first - b_last`, the alternating and the plain sum of that
/// basis, then seeded random unit combinations.
fn kernel_candidates(basis: &[Vec<Complex64>], cfg: &SylvesterConfig) -> Vec<Vec<Complex64>> {
    if basis.len() <= 1 {
        return basis.to_vec();
    }
    let echelon = reduced_echelon(basis);
    let len = echelon[0].len();
    let combine = |coef: &dyn Fn(usize) -> Complex64| -> Vec<Complex64> {
        let mut v = vec![Complex64::zero(); len];
        for (k, b) in echelon.iter().enumerate() {
            let c = coef(k);
            for (o, x) in v.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        v
    };
    let last = echelon.len() - 1;
    let mut out = echelon.clone();
    out.push(combine(&|k| {
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else if k == last {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::zero()
        }
    }));
    out.push(combine(&|k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0)));
    out.push(combine(&|_| Complex64::new(1.0, 0.0)));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_candidates {
        let coefs: Vec<Complex64> = (0..echelon.len())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let v = combine(&|k| coefs[k]);
        let nv = norm(&v);
        out.push(v.into_iter().map(|x| x / nv).collect());
    }
    out
}

/// Canonical basis of the span of `basis`: reduced row echelon form with
/// partial pivoting, pivots scaled to one. Independent of which orthonormal
/// basis the SVD happened to return.
fn reduced_echelon(basis: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let mut rows: Vec<Vec<Complex64>> = basis.to_vec();
    let cols = rows[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let (best, mag) = (pivot_row..rows.len())
            .map(|i| (i, rows[i][col].norm()))
            .fold((pivot_row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if mag <= 1e-10 {
            continue;
        }
        rows.swap(pivot_row, best);
        let piv = rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x /= piv;
        }
        rows[pivot_row][col] = Complex64::new(1.0, 0.0);
        let pivot = rows[pivot_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[col];
            if i == pivot_row || f.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x -= f * p;
            }
            row[col] = Complex64::zero();
        }
        pivot_row += 1;
    }
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            if x.norm() <= 1e-14 {
                *x = Complex64::zero();
            }
        }
    }
    rows
}
