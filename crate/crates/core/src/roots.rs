//! Roots of binary forms on the projective line.
//!
//! A root `(t0 : t1)` of `q` satisfies `q(t0, t1) = 0`. Distances between roots
//! use the chordal metric `|a0 b1 - a1 b0| / (‖a‖ ‖b‖)`, which treats the
//! point at infinity `(1 : 0)` like any other point.
//!
//! Repeated roots are detected from the numerical rank of the Sylvester matrix
//! of the two partial derivatives: for a binary form the common factor of
//! `∂q/∂x` and `∂q/∂y` has degree `Σ (s_k - 1)` over root multiplicities
//! `s_k`. Companion eigenvalues of an `s`-fold root scatter by `ε^(1/s)`, so
//! root separation alone cannot certify multiplicity beyond `s = 2`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::catalecticant::{numerical_rank, ComplexMatrix};
use crate::form::{BinaryForm, LinearForm};
use crate::linalg::eigenvalues;
use crate::sylvester::Tolerances;
use crate::{Error, Result};

/// Point `(t0 : t1)` of the complex projective line, scaled to unit norm with
/// its first nonzero coordinate real positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveRoot {
    t0: Complex64,
    t1: Complex64,
}

impl ProjectiveRoot {
    pub fn new(t0: Complex64, t1: Complex64) -> Result<Self> {
        let n = (t0.norm_sqr() + t1.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroLinearForm);
        }
        let lead = if !t0.is_zero() { t0 } else { t1 };
        let phase = lead.conj() / lead.norm();
        Ok(Self {
            t0: t0 * phase / n,
            t1: t1 * phase / n,
        })
    }

    /// The point `(1 : 0)`.
    pub fn infinity() -> Self {
        Self {
            t0: Complex64::new(1.0, 0.0),
            t1: Complex64::zero(),
        }
    }

    pub fn t0(&self) -> Complex64 {
        self.t0
    }

    pub fn t1(&self) -> Complex64 {
        self.t1
    }

    pub fn chordal_distance(&self, other: &Self) -> f64 {
        chordal_distance((self.t0, self.t1), (other.t0, other.t1))
    }

    /// The linear form `t0 x + t1 y`. Roots of a kernel polynomial (see
    /// [`crate::sylvester`]) are read off as linear forms this way.
    pub fn to_linear_form(&self) -> LinearForm {
        LinearForm {
            alpha: self.t0,
            beta: self.t1,
        }
    }
}

pub fn chordal_distance(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    let na = (a.0.norm_sqr() + a.1.norm_sqr()).sqrt();
    let nb = (b.0.norm_sqr() + b.1.norm_sqr()).sqrt();
    (a.0 * b.1 - a.1 * b.0).norm() / (na * nb)
}

/// All roots with multiplicity; the multiplicities sum to the degree.
///
/// Exactly vanishing coefficients of `y^r, x y^(r-1), ..` give the root
/// `(0 : 1)`; exactly vanishing coefficients of `x^r, x^(r-1) y, ..` (the
/// trailing monomial coefficients) give `(1 : 0)`. The remaining roots come
/// from companion-matrix eigenvalues of the dehomogenized polynomial and are
/// reported with multiplicity one each.
pub fn roots_of_binary_form(q: &BinaryForm) -> Result<Vec<(ProjectiveRoot, usize)>> {
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    let m = q.to_monomial_coeffs();
    let r = q.degree();
    let low = m.iter().take_while(|c| c.is_zero()).count();
    let high = m.iter().rev().take_while(|c| c.is_zero()).count();
    let mut out = Vec::new();
    if low > 0 {
        out.push((ProjectiveRoot::new(Complex64::zero(), Complex64::new(1.0, 0.0))?, low));
    }
    if high > 0 {
        out.push((ProjectiveRoot::infinity(), high));
    }
    let middle = &m[low..=r - high];
    let d = middle.len() - 1;
    if d == 0 {
        return Ok(out);
    }
    // In the chart z = t0/t1 the polynomial is Σ middle[i] z^i; switch to
    // w = t1/t0 when that keeps the leading coefficient the larger one.
    let flip = middle[d].norm() < middle[0].norm();
    let coeffs: Vec<Complex64> = if flip {
        middle.iter().rev().cloned().collect()
    } else {
        middle.to_vec()
    };
    for z in polynomial_roots(&coeffs)? {
        let root = if flip {
            ProjectiveRoot::new(Complex64::new(1.0, 0.0), z)?
        } else {
            ProjectiveRoot::new(z, Complex64::new(1.0, 0.0))?
        };
        out.push((root, 1));
    }
    Ok(out)
}

/// Roots of `Σ c_i z^i` with `c_0, c_d ≠ 0`, from the companion matrix of the
/// polynomial rescaled by the geometric mean root modulus.
fn polynomial_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    let scale = (c[0].norm() / c[d].norm()).powf(1.0 / d as f64);
    let lead = c[d];
    // z = scale·w; monic in w after dividing by lead·scale^d.
    let mut monic: Vec<Complex64> = (0..d).map(|i| c[i] * scale.powi(i as i32 - d as i32) / lead).collect();
    monic.push(Complex64::new(1.0, 0.0));
    match companion_roots(&monic) {
        Ok(w) => Ok(w.into_iter().map(|w| w * scale).collect()),
        Err(Error::EigenNotConverged) => {
            // QR stalls on cyclic companions such as w^d - 1; moving the origin breaks the symmetry.
            let shift = Complex64::new(0.3711, 0.2129);
            let shifted = taylor_shift(&monic, shift);
            Ok(companion_roots(&shifted)?
                .into_iter()
                .map(|w| (w + shift) * scale)
                .collect())
        }
        Err(e) => Err(e),
    }
}

/// Eigenvalues of the companion matrix of a monic polynomial (ascending coefficients).
fn companion_roots(monic: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = monic.len() - 1;
    let mut comp = vec![Complex64::zero(); d * d];
    for j in 0..d {
        comp[j] = -monic[d - 1 - j];
    }
    for i in 1..d {
        comp[i * d + i - 1] = Complex64::new(1.0, 0.0);
    }
    eigenvalues(d, &comp)
}

/// Coefficients of `f(w + s)` (ascending order).
fn taylor_shift(f: &[Complex64], s: Complex64) -> Vec<Complex64> {
    let mut a = f.to_vec();
    let d = a.len() - 1;
    for k in 0..d {
        for j in (k..d).rev() {
            let t = a[j + 1] * s;
            a[j] += t;
        }
    }
    a
}

/// Square-freeness certificate for a binary form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareFreeReport {
    pub square_free: bool,
    /// Minimum pairwise chordal distance between computed roots (infinite
    /// when there are fewer than two, zero when a root is exactly repeated).
    pub min_separation: f64,
    /// Numerical degree of the repeated part `Σ (s_k - 1)`.
    pub repeated_factor_degree: usize,
}

impl SquareFreeReport {
    /// The two certificates disagree: no repeated factor at the rank
    /// tolerance, but roots closer than the root tolerance.
    pub fn indeterminate(&self, tol: &Tolerances) -> bool {
        self.repeated_factor_degree == 0 && self.min_separation <= tol.root
    }
}

/// Decides whether `q` has distinct roots: no repeated factor is confirmed
/// (partial-derivative Sylvester matrix rank-deficient at `tol.rank` and the
/// roots clustered accordingly) and every pair of roots is more than
/// `tol.root` apart in the chordal metric.
pub fn is_square_free(q: &BinaryForm, tol: &Tolerances) -> Result<SquareFreeReport> {
    let roots = roots_of_binary_form(q)?;
    let mut points = Vec::new();
    let mut min_separation = f64::INFINITY;
    for (root, mult) in &roots {
        if *mult > 1 {
            min_separation = 0.0;
        }
        points.push(*root);
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            min_separation = min_separation.min(points[i].chordal_distance(&points[j]));
        }
    }
    let repeated_factor_degree = confirmed_repeated_degree(q, &roots, tol.rank)?;
    Ok(SquareFreeReport {
        square_free: repeated_factor_degree == 0 && min_separation > tol.root,
        min_separation,
        repeated_factor_degree,
    })
}

/// Numerical degree of `gcd(∂q/∂x, ∂q/∂y)`.
pub(crate) fn repeated_factor_degree(q: &BinaryForm, rank_tol: f64) -> Result<usize> {
    let r = q.degree();
    if r < 2 {
        return Ok(0);
    }
    let qn = q.normalized();
    let m = qn.to_monomial_coeffs();
    // Both partials have degree r - 1, ascending powers of x.
    let dx: Vec<Complex64> = (0..r).map(|j| m[j + 1] * (j + 1) as f64).collect();
    let dy: Vec<Complex64> = (0..r).map(|i| m[i] * (r - i) as f64).collect();
    let size = 2 * (r - 1);
    let mut entries = vec![Complex64::zero(); size * size];
    for shift in 0..r - 1 {
        for (j, &c) in dx.iter().enumerate() {
            entries[shift * size + shift + j] = c;
        }
        for (j, &c) in dy.iter().enumerate() {
            entries[(shift + r - 1) * size + shift + j] = c;
        }
    }
    let syl = ComplexMatrix::new(size, size, entries)?;
    let rep = numerical_rank(&syl, rank_tol)?;
    Ok(size - rep.numerical_rank)
}

type Cluster = Vec<(ProjectiveRoot, usize)>;

fn link(a: &[(ProjectiveRoot, usize)], b: &[(ProjectiveRoot, usize)]) -> f64 {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.0.chordal_distance(&y.0)))
        .fold(f64::INFINITY, f64::min)
}

/// Single-linkage merging down to `target` clusters. Also returns the widest
/// merge performed and the closest remaining inter-cluster distance.
fn agglomerate(roots: Vec<(ProjectiveRoot, usize)>, target: usize) -> (Vec<Cluster>, f64, f64) {
    let mut clusters: Vec<Cluster> = roots.into_iter().map(|x| vec![x]).collect();
    let mut widest_merge = 0.0f64;
    while clusters.len() > target {
        let mut best = (0, 1, f64::INFINITY);
        for i in 0..clusters.len() {
            for j in i + 1..clusters.len() {
                let d = link(&clusters[i], &clusters[j]);
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        widest_merge = widest_merge.max(best.2);
        let merged = clusters.remove(best.1);
        clusters[best.0].extend(merged);
    }
    let mut closest_pair = f64::INFINITY;
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            closest_pair = closest_pair.min(link(&clusters[i], &clusters[j]));
        }
    }
    (clusters, widest_merge, closest_pair)
}

/// Largest chordal spread a cluster of total multiplicity `m` may have and
/// still be read as one `m`-fold root. A kernel polynomial decided at relative
/// tolerance `rank_tol` carries coefficient errors up to about
/// `ε / rank_tol`, and an `m`-fold root splits by the `m`-th root of that.
fn split_radius(m: usize, rank_tol: f64) -> f64 {
    const CONDITIONING: f64 = 4.0;
    CONDITIONING * (f64::EPSILON / rank_tol).min(1.0).powf(1.0 / m as f64)
}

fn diameter(members: &[(ProjectiveRoot, usize)]) -> f64 {
    let mut d = 0.0f64;
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            d = d.max(members[i].0.chordal_distance(&members[j].0));
        }
    }
    d
}

/// Numerical degree of the repeated part of `q`: the rank-deficiency of the
/// partial-derivative Sylvester matrix, kept only if the roots actually form
/// a tight cluster of the implied multiplicity. Distinct but crowded roots
/// can make that matrix nearly singular without any root being repeated.
fn confirmed_repeated_degree(q: &BinaryForm, roots: &[(ProjectiveRoot, usize)], rank_tol: f64) -> Result<usize> {
    let deficiency = repeated_factor_degree(q, rank_tol)?;
    if deficiency == 0 {
        return Ok(0);
    }
    let target = q.degree().saturating_sub(deficiency).max(1);
    let (clusters, _, _) = agglomerate(roots.to_vec(), target);
    let tight = clusters.iter().any(|c| {
        let m: usize = c.iter().map(|x| x.1).sum();
        m > 1 && diameter(c) <= split_radius(m, rank_tol)
    });
    Ok(if tight { deficiency } else { 0 })
}

/// Roots grouped into distinct clusters with multiplicities, the number of
/// clusters fixed by the confirmed repeated-factor degree. Each cluster is
/// represented by the multiplicity-weighted mean of its members.
pub(crate) fn cluster_roots(q: &BinaryForm, tol: &Tolerances) -> Result<Vec<(ProjectiveRoot, usize)>> {
    let roots = roots_of_binary_form(q)?;
    let target = q.degree() - confirmed_repeated_degree(q, &roots, tol.rank)?;
    if roots.len() < target {
        return Err(Error::AmbiguousClustering);
    }
    let (clusters, widest_merge, closest_pair) = agglomerate(roots, target);
    if widest_merge >= closest_pair {
        return Err(Error::AmbiguousClustering);
    }
    clusters
        .iter()
        .map(|members| {
            let total: usize = members.iter().map(|m| m.1).sum();
            Ok((centroid(members)?, total))
        })
        .collect()
}

fn centroid(members: &[(ProjectiveRoot, usize)]) -> Result<ProjectiveRoot> {
    let first = members[0].0;
    let finite_chart = first.t0.norm() <= first.t1.norm();
    let mut sum = Complex64::zero();
    let mut count = 0.0;
    for (root, mult) in members {
        let z = if finite_chart {
            root.t0 / root.t1
        } else {
            root.t1 / root.t0
        };
        sum += z * *mult as f64;
        count += *mult as f64;
    }
    let mean = sum / count;
    if finite_chart {
        ProjectiveRoot::new(mean, Complex64::new(1.0, 0.0))
    } else {
        ProjectiveRoot::new(Complex64::new(1.0, 0.0), mean)
    }
}
