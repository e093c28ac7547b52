//! Coherent, spin-squeezed and Fock states of `N` two-level bosons, with the
//! closed-form rank and decomposition predictions for them.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::form::{expand_linear_power, form_distance, state_to_form, BinaryForm, LinearForm, ManyBodyState};
use crate::linalg::{least_squares, norm};
use crate::roots::ProjectiveRoot;
use crate::special::{binomial, generic_rank, ln_factorial};
use crate::sylvester::{expand_terms, symmetric_rank, Decomposition, SylvesterConfig, Term};
use crate::{Error, Result};

/// One-axis twisting strength `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SqueezingParameter {
    /// `μ = 2π p / q` with `gcd(p, q) = 1` and `0 ≤ p < q`.
    Rational {
        p: i64,
        q: u64,
    },
    Real(f64),
}

impl SqueezingParameter {
    /// Reduces `p/q` to lowest terms and `p` modulo `q`.
    pub fn rational(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroDenominator);
        }
        let q_signed = i64::try_from(q).map_err(|_| Error::NotCoprime { p, q })?;
        let g = p.gcd(&q_signed);
        let (p, q) = (p / g, q_signed / g);
        Ok(Self::Rational {
            p: p.rem_euclid(q),
            q: q as u64,
        })
    }

    pub fn real(mu: f64) -> Self {
        Self::Real(mu)
    }

    pub fn value(&self) -> f64 {
        match *self {
            Self::Rational { p, q } => 2.0 * PI * p as f64 / q as f64,
            Self::Real(mu) => mu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankPrediction {
    pub sbr: usize,
    pub sr: usize,
    pub g_n: usize,
}

/// `|coh: θ, φ⟩` with `c_k = sqrt(C(N,k)) cos(θ/2)^(N-k) (e^{iφ} sin(θ/2))^k`.
pub fn coherent_spin_state(theta: f64, phi: f64, n: usize) -> ManyBodyState {
    let (s, c) = (theta / 2.0).sin_cos();
    let amplitudes = (0..=n)
        .map(|k| {
            let up = n - k;
            let magnitude = if (up > 0 && c == 0.0) || (k > 0 && s == 0.0) {
                0.0
            } else {
                let ln_binom = ln_factorial(n) - ln_factorial(k) - ln_factorial(up);
                let ln_c = if up > 0 { up as f64 * c.abs().ln() } else { 0.0 };
                let ln_s = if k > 0 { k as f64 * s.abs().ln() } else { 0.0 };
                (0.5 * ln_binom + ln_c + ln_s).exp()
            };
            let sign = if (c < 0.0 && up % 2 == 1) != (s < 0.0 && k % 2 == 1) {
                -1.0
            } else {
                1.0
            };
            Complex64::from_polar(sign * magnitude, k as f64 * phi)
        })
        .collect();
    ManyBodyState::new(amplitudes).expect("N+1 amplitudes")
}

/// `exp(-i μ S_z² / 2) |coh: π/2, 0⟩`, i.e. `c_k = sqrt(C(N,k) / 2^N) e^{-iμ(k - N/2)²/2}`.
/// Rational `μ` phases are reduced with integer arithmetic.
pub fn spin_squeezed_state(mu: &SqueezingParameter, n: usize) -> ManyBodyState {
    let ln_norm = ln_factorial(n) - n as f64 * core::f64::consts::LN_2;
    let amplitudes = (0..=n)
        .map(|k| {
            let magnitude = (0.5 * (ln_norm - ln_factorial(k) - ln_factorial(n - k))).exp();
            let d = 2 * k as i128 - n as i128;
            let angle = match *mu {
                // μ(k - N/2)²/2 = π p (2k - N)² / (4q), taken modulo 2π.
                SqueezingParameter::Rational { p, q } => {
                    let modulus = 8 * q as i128;
                    let r = (p as i128 * (d * d).rem_euclid(modulus)).rem_euclid(modulus);
                    -PI * r as f64 / (4.0 * q as f64)
                }
                SqueezingParameter::Real(mu) => -mu * (d * d) as f64 / 8.0,
            };
            Complex64::from_polar(magnitude, angle)
        })
        .collect();
    ManyBodyState::new(amplitudes).expect("N+1 amplitudes")
}

/// `|N-k, k⟩`: exactly `k` particles down.
pub fn fock_state(n: usize, k: usize) -> Result<ManyBodyState> {
    if k > n {
        return Err(Error::FockIndex { n, k });
    }
    let mut amplitudes = alloc::vec![Complex64::zero(); n + 1];
    amplitudes[k] = Complex64::new(1.0, 0.0);
    ManyBodyState::new(amplitudes)
}

fn check_coprime(p: i64, q: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::ZeroDenominator);
    }
    if p.unsigned_abs().gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

/// `sbr = sr = min(q, g_N)` for `μ = 2π p / q`.
pub fn predict_sss_ranks(p: i64, q: u64, n: usize) -> Result<RankPrediction> {
    check_coprime(p, q)?;
    let g_n = generic_rank(n);
    let r = g_n.min(usize::try_from(q).unwrap_or(usize::MAX));
    Ok(RankPrediction { sbr: r, sr: r, g_n })
}

/// Weighted coherent spin state `w |coh: θ, φ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CssTerm {
    pub weight: Complex64,
    pub theta: f64,
    pub phi: f64,
}

/// Cat-state decomposition of a spin-squeezed state on `q` equatorial directions.
#[derive(Debug, Clone, PartialEq)]
pub struct SssCatPrediction {
    pub phi0: f64,
    pub terms: Vec<CssTerm>,
    /// Norm of the state-space difference after the weight solve.
    pub residual: f64,
}

/// Phase offset of the equatorial directions: `π/q` when `p` and `q + N` are
/// both odd, otherwise `0`.
pub fn cat_phase_offset(p: i64, q: u64, n: usize) -> f64 {
    if p.rem_euclid(2) == 1 && (q as u128 + n as u128) % 2 == 1 {
        PI / q as f64
    } else {
        0.0
    }
}

/// `|SSS: 2πp/q⟩ = Σ_j w_j |coh: π/2, φ₀ + 2πj/q⟩` for `q ≤ g_N`. The
/// directions are predicted; the weights come from a least-squares solve.
pub fn predict_sss_decomposition(p: i64, q: u64, n: usize) -> Result<SssCatPrediction> {
    check_coprime(p, q)?;
    let g_n = generic_rank(n);
    if q > g_n as u64 {
        return Err(Error::BeyondGenericRank { q, generic: g_n });
    }
    let target = spin_squeezed_state(&SqueezingParameter::rational(p, q)?, n);
    let phi0 = cat_phase_offset(p, q, n);
    let phis: Vec<f64> = (0..q).map(|j| phi0 + 2.0 * PI * j as f64 / q as f64).collect();
    let columns: Vec<Vec<Complex64>> = phis
        .iter()
        .map(|&phi| coherent_spin_state(PI / 2.0, phi, n).amplitudes().to_vec())
        .collect();
    let ls = least_squares(&columns, target.amplitudes())?;
    let mut diff: Vec<Complex64> = target.amplitudes().to_vec();
    for (col, w) in columns.iter().zip(&ls.solution) {
        for (d, c) in diff.iter_mut().zip(col) {
            *d -= w * c;
        }
    }
    let terms = phis
        .iter()
        .zip(&ls.solution)
        .map(|(&phi, &weight)| CssTerm {
            weight,
            theta: PI / 2.0,
            phi,
        })
        .collect();
    Ok(SssCatPrediction {
        phi0,
        terms,
        residual: norm(&diff),
    })
}

/// Rewrites each `λ (α x + β y)^N` as `w |coh: θ, φ⟩`, so that the terms sum
/// to `form_to_state` of the decomposed form.
pub fn css_terms(d: &Decomposition, n: usize) -> Vec<CssTerm> {
    d.terms.iter().map(|t| css_term(t, n)).collect()
}

fn css_term(t: &Term, n: usize) -> CssTerm {
    let (a, b) = (t.form.alpha, t.form.beta);
    let rho = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let theta = 2.0 * b.norm().atan2(a.norm());
    let (chi, phi) = if a.is_zero() {
        (0.0, b.arg())
    } else {
        (
            a.arg(),
            num_traits::Euclid::rem_euclid(&(b.arg() - a.arg()), &(2.0 * PI)),
        )
    };
    let ln_mag = t.lambda.norm().ln() + n as f64 * rho.ln() + 0.5 * ln_factorial(n);
    let weight = Complex64::from_polar(ln_mag.exp(), t.lambda.arg() + n as f64 * chi);
    CssTerm { weight, theta, phi }
}

/// `Σ_j w_j |coh: θ_j, φ_j⟩`.
pub fn css_superposition(terms: &[CssTerm], n: usize) -> ManyBodyState {
    let mut acc = alloc::vec![Complex64::zero(); n + 1];
    for t in terms {
        let s = coherent_spin_state(t.theta, t.phi, n);
        for (a, c) in acc.iter_mut().zip(s.amplitudes()) {
            *a += t.weight * c;
        }
    }
    ManyBodyState::new(acc).expect("N+1 amplitudes")
}

fn check_fock_order(n: usize, k: usize) -> Result<()> {
    if k == 0 || 2 * k > n {
        return Err(Error::FockIndex { n, k });
    }
    Ok(())
}

/// `x^(N-k) y^k = 1/(M C(N,k)) Σ_{j<M} ω^{-jk} (x + ω^j y)^N` with
/// `M = N - k + 1`, `ω = e^{2πi/M}`, for `1 ≤ k ≤ N/2`.
pub fn fock_exact_decomposition(n: usize, k: usize) -> Result<Decomposition> {
    check_fock_order(n, k)?;
    let m = n - k + 1;
    let scale = 1.0 / (m as f64 * binomial(n, k));
    let mut terms = Vec::with_capacity(m);
    let mut roots = Vec::with_capacity(m);
    for j in 0..m {
        let angle = 2.0 * PI * ((j * k) % m) as f64 / m as f64;
        let omega_j = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
        let form = LinearForm::new(Complex64::new(1.0, 0.0), omega_j)?;
        terms.push(Term {
            lambda: Complex64::from_polar(scale, -angle),
            form,
        });
        roots.push((ProjectiveRoot::new(form.alpha, form.beta)?, 1));
    }
    let target = BinaryForm::monomial(n, n - k);
    let weight: Vec<f64> = (0..=n).map(|i| binomial(n, i).sqrt()).collect();
    let columns: Vec<Vec<Complex64>> = terms
        .iter()
        .map(|t| {
            expand_linear_power(&t.form, n)
                .coeffs()
                .iter()
                .zip(&weight)
                .map(|(&a, &w)| a * w)
                .collect()
        })
        .collect();
    let rhs: Vec<Complex64> = target.coeffs().iter().zip(&weight).map(|(&a, &w)| a * w).collect();
    let condition = least_squares(&columns, &rhs)?.condition;
    let residual = form_distance(&target, &expand_terms(&terms, n))?;
    Ok(Decomposition {
        terms,
        sr: m,
        sbr: k + 1,
        residual,
        kernel_poly_roots: roots,
        condition,
    })
}

/// Border-rank approximant of `x^(N-k) y^k` by `k + 1` powers.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitDecomposition {
    pub terms: Vec<Term>,
    pub approximant: BinaryForm,
    /// Relative distance from the approximant to `x^(N-k) y^k`.
    pub error: f64,
}

/// `1/(k C(N,k) ε^k) [Σ_{j<k} (x + ε ζ^j y)^N - k x^N]` with `ζ = e^{2πi/k}`,
/// which tends to `x^(N-k) y^k` as `ε → 0` with error `O(ε^k)`.
pub fn fock_limit_decomposition(n: usize, k: usize, eps: f64) -> Result<LimitDecomposition> {
    check_fock_order(n, k)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    let base = 1.0 / (binomial(n, k) * eps.powi(k as i32));
    let one = Complex64::new(1.0, 0.0);
    let mut terms = Vec::with_capacity(k + 1);
    for j in 0..k {
        let zeta_j = Complex64::from_polar(eps, 2.0 * PI * j as f64 / k as f64);
        terms.push(Term {
            lambda: Complex64::new(base / k as f64, 0.0),
            form: LinearForm::new(one, zeta_j)?,
        });
    }
    terms.push(Term {
        lambda: Complex64::new(-base, 0.0),
        form: LinearForm::new(one, Complex64::zero())?,
    });
    let approximant = expand_terms(&terms, n);
    let error = form_distance(&BinaryForm::monomial(n, n - k), &approximant)?;
    Ok(LimitDecomposition {
        terms,
        approximant,
        error,
    })
}

/// One point of a `(μ, N)` rank sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub mu: SqueezingParameter,
    pub n: usize,
    pub sbr: usize,
    pub sr: usize,
}

/// Every reduced `p/q` in `[0, 1)` with `q ≤ q_max`, ordered by `q` then `p`,
/// followed by `samples` seeded uniform draws of `μ ∈ (0, 2π)` in ascending order.
pub fn sweep_parameters(q_max: u64, samples: usize, seed: u64) -> Vec<SqueezingParameter> {
    let mut out = Vec::new();
    for q in 1..=q_max {
        for p in 0..q {
            if p.gcd(&q) == 1 {
                out.push(SqueezingParameter::Rational { p: p as i64, q });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reals: Vec<f64> = (0..samples)
        .map(|_| loop {
            let mu: f64 = rng.gen_range(0.0..2.0 * PI);
            if mu > 0.0 {
                break mu;
            }
        })
        .collect();
    reals.sort_by(f64::total_cmp);
    out.extend(reals.into_iter().map(SqueezingParameter::Real));
    out
}

/// Ranks of `|SSS: μ⟩` with `N` particles.
pub fn sweep_row(mu: SqueezingParameter, n: usize, cfg: &SylvesterConfig) -> Result<SweepRow> {
    let form = state_to_form(&spin_squeezed_state(&mu, n));
    let r = symmetric_rank(&form, cfg)?;
    Ok(SweepRow {
        mu,
        n,
        sbr: r.sbr,
        sr: r.sr,
    })
}
