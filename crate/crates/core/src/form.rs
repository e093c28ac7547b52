//! Binary forms, many-body states of two-level bosons, and the maps between them.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::special::{binomial, inv_sqrt_factorial_pair};
use crate::{Error, Result};

/// Homogeneous polynomial of degree `N` in `x, y`, stored as binomial-convention
/// coefficients `a_0..a_N` with `p = Σ C(N, i) a_i x^i y^(N-i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    coeffs: Vec<Complex64>,
}

impl BinaryForm {
    pub fn from_binomial_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { coeffs })
    }

    /// Builds a form from its monomial coefficients: `m[i]` multiplies `x^i y^(N-i)`.
    pub fn from_monomial_coeffs(m: Vec<Complex64>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Empty);
        }
        let n = m.len() - 1;
        let coeffs = m.into_iter().enumerate().map(|(i, c)| c / binomial(n, i)).collect();
        Ok(Self { coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![Complex64::zero(); degree + 1],
        }
    }

    /// The monomial `x^i y^(N-i)` with unit coefficient.
    pub fn monomial(degree: usize, x_power: usize) -> Self {
        let mut m = vec![Complex64::zero(); degree + 1];
        m[x_power] = Complex64::new(1.0, 0.0);
        Self::from_monomial_coeffs(m).expect("nonempty")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Binomial-convention coefficients.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn to_monomial_coeffs(&self) -> Vec<Complex64> {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| a * binomial(n, i))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Euclidean norm of the monomial coefficients.
    pub fn norm(&self) -> f64 {
        crate::linalg::norm(&self.to_monomial_coeffs())
    }

    /// Rescaled to unit monomial-coefficient norm; the zero form is returned as is.
    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Complex64 {
        self.to_monomial_coeffs()
            .iter()
            .enumerate()
            .map(|(i, &m)| m * x.powu(i as u32) * y.powu((self.degree() - i) as u32))
            .sum()
    }

    /// `p(a x + b y, c x + d y)`.
    pub fn substitute(&self, a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        let n = self.degree();
        let mut out = vec![Complex64::zero(); n + 1];
        let first = [b, a];
        let second = [d, c];
        for (i, &m) in self.to_monomial_coeffs().iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let mut poly = vec![m];
            for _ in 0..i {
                poly = poly_mul(&poly, &first);
            }
            for _ in 0..(n - i) {
                poly = poly_mul(&poly, &second);
            }
            for (o, p) in out.iter_mut().zip(poly) {
                *o += p;
            }
        }
        Self::from_monomial_coeffs(out).expect("nonempty")
    }

    /// Product of two forms.
    pub fn multiply(&self, other: &Self) -> Self {
        let prod = poly_mul(&self.to_monomial_coeffs(), &other.to_monomial_coeffs());
        Self::from_monomial_coeffs(prod).expect("nonempty")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

/// Product of polynomials given by coefficient vectors in ascending powers of `x`.
fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::zero(); p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    fn add(self, rhs: Self) -> BinaryForm {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;
    fn sub(self, rhs: Self) -> BinaryForm {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &BinaryForm {
    type Output = BinaryForm;
    fn neg(self) -> BinaryForm {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: Complex64) -> BinaryForm {
        self.scale(rhs)
    }
}

/// State of `N` two-level bosons in the normalized Fock basis `|N-k, k⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyBodyState {
    amplitudes: Vec<Complex64>,
}

impl ManyBodyState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { amplitudes })
    }

    pub fn particles(&self) -> usize {
        self.amplitudes.len() - 1
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        crate::linalg::norm(&self.amplitudes)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= 1e-12
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            return self.clone();
        }
        Self {
            amplitudes: self.amplitudes.iter().map(|&c| c / n).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

impl Add for &ManyBodyState {
    type Output = ManyBodyState;
    fn add(self, rhs: Self) -> ManyBodyState {
        assert_eq!(self.particles(), rhs.particles(), "particle number mismatch");
        ManyBodyState {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&rhs.amplitudes)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// The linear form `α x + β y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearForm {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl LinearForm {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if alpha.is_zero() && beta.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        Ok(Self { alpha, beta })
    }

    /// Returns `(c, l)` with `self = c · l`, where `l` has `max(|α|, |β|) = 1`
    /// and its larger entry (α on ties) real positive.
    pub fn canonical(&self) -> (Complex64, LinearForm) {
        let lead = if self.alpha.norm() >= self.beta.norm() * (1.0 - 1e-12) {
            self.alpha
        } else {
            self.beta
        };
        let l = LinearForm {
            alpha: self.alpha / lead,
            beta: self.beta / lead,
        };
        (lead, l)
    }

    pub fn norm(&self) -> f64 {
        (self.alpha.norm_sqr() + self.beta.norm_sqr()).sqrt()
    }
}

/// Form from monomial coefficients (`m[i]` multiplies `x^i y^(N-i)`).
pub fn from_monomial_coeffs(m: Vec<Complex64>) -> Result<BinaryForm> {
    BinaryForm::from_monomial_coeffs(m)
}

/// Maps `Σ c_k |N-k, k⟩` to the form whose monomial coefficient of
/// `x^(N-k) y^k` is `c_k / sqrt((N-k)! k!)`.
pub fn state_to_form(s: &ManyBodyState) -> BinaryForm {
    let n = s.particles();
    let mut m = vec![Complex64::zero(); n + 1];
    for (k, &c) in s.amplitudes().iter().enumerate() {
        m[n - k] = c * inv_sqrt_factorial_pair(n - k, k);
    }
    BinaryForm::from_monomial_coeffs(m).expect("nonempty")
}

/// Inverse of [`state_to_form`].
pub fn form_to_state(p: &BinaryForm) -> ManyBodyState {
    let n = p.degree();
    let m = p.to_monomial_coeffs();
    let amplitudes = (0..=n).map(|k| m[n - k] / inv_sqrt_factorial_pair(n - k, k)).collect();
    ManyBodyState { amplitudes }
}

/// `(α x + β y)^N`; in the binomial convention `a_i = α^i β^(N-i)`.
pub fn expand_linear_power(l: &LinearForm, n: usize) -> BinaryForm {
    let coeffs = (0..=n)
        .map(|i| l.alpha.powu(i as u32) * l.beta.powu((n - i) as u32))
        .collect();
    BinaryForm { coeffs }
}

/// Relative distance `‖p - q‖ / ‖p‖` on monomial coefficients (absolute when `p = 0`).
pub fn form_distance(p: &BinaryForm, q: &BinaryForm) -> Result<f64> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    let diff = crate::linalg::norm(&(p - q).to_monomial_coeffs());
    let base = p.norm();
    Ok(if base == 0.0 { diff } else { diff / base })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
    }

    #[test]
    fn monomial_convention_conversion() {
        let xy = from_monomial_coeffs(vec![c(0., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        assert_eq!(xy.coeffs(), &[c(0., 0.), c(0.5, 0.), c(0., 0.)]);
        let x3 = from_monomial_coeffs(vec![c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]).unwrap();
        assert_eq!(x3.coeffs(), &[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
        let z = from_monomial_coeffs(vec![c(0., 0.); 4]).unwrap();
        assert!(z.is_zero());
        assert_eq!(from_monomial_coeffs(vec![]), Err(Error::Empty));
    }

    #[test]
    fn state_form_examples() {
        let up = ManyBodyState::new(vec![c(1., 0.), c(0., 0.)]).unwrap();
        assert_eq!(state_to_form(&up).to_monomial_coeffs(), vec![c(0., 0.), c(1., 0.)]);
        let pair = ManyBodyState::new(vec![c(0., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        let f = state_to_form(&pair);
        assert!((f.to_monomial_coeffs()[1] - c(1., 0.)).norm() < 1e-15);
        assert_eq!(form_to_state(&f), pair);
        let x = BinaryForm::monomial(1, 1);
        assert_eq!(form_to_state(&x), up);
    }

    #[test]
    fn linear_power_examples() {
        let e = |a, b, n| expand_linear_power(&LinearForm::new(a, b).unwrap(), n);
        assert_eq!(
            e(c(1., 0.), c(0., 0.), 4).coeffs(),
            &[c(0., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]
        );
        assert_eq!(e(c(1., 0.), c(1., 0.), 2).coeffs(), &[c(1., 0.); 3]);
        assert_eq!(
            e(c(1., 0.), c(1., 0.), 2).to_monomial_coeffs(),
            vec![c(1., 0.), c(2., 0.), c(1., 0.)]
        );
        assert_eq!(
            e(c(1., 0.), c(-1., 0.), 2).coeffs(),
            &[c(1., 0.), c(-1., 0.), c(1., 0.)]
        );
        assert_eq!(LinearForm::new(c(0., 0.), c(0., 0.)), Err(Error::ZeroLinearForm));
    }

    #[test]
    fn distance_examples() {
        let xy = BinaryForm::monomial(2, 1);
        assert_eq!(form_distance(&xy, &xy).unwrap(), 0.0);
        assert_eq!(form_distance(&xy, &BinaryForm::zero(2)).unwrap(), 1.0);
        let d = form_distance(&xy, &xy.scale(c(1.0 + 1e-9, 0.))).unwrap();
        assert!((d - 1e-9).abs() < 1e-15);
        assert_eq!(
            form_distance(&xy, &BinaryForm::zero(3)),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        );
        assert_eq!(
            form_distance(&BinaryForm::zero(1), &BinaryForm::monomial(1, 0)).unwrap(),
            1.0
        );
    }

    #[test]
    fn canonical_linear_form() {
        let l = LinearForm::new(c(0., 2.), c(1., 0.)).unwrap();
        let (s, k) = l.canonical();
        assert!((k.alpha - c(1., 0.)).norm() < 1e-15);
        assert!((k.beta.norm() - 0.5).abs() < 1e-15);
        assert!((k.alpha * s - l.alpha).norm() < 1e-15);
        assert!((k.beta * s - l.beta).norm() < 1e-15);
    }

    #[test]
    fn substitution_matches_pointwise_evaluation() {
        let p = from_monomial_coeffs(vec![c(1., 2.), c(-0.5, 0.), c(0., 0.), c(3., -1.)]).unwrap();
        let (a, b, cc, d) = (c(0.3, 0.1), c(-1.0, 0.4), c(0.2, 0.9), c(1.1, -0.2));
        let s = p.substitute(a, b, cc, d);
        let (x, y) = (c(0.7, -0.3), c(-0.2, 1.3));
        let direct = p.evaluate(a * x + b * y, cc * x + d * y);
        assert!((s.evaluate(x, y) - direct).norm() < 1e-12);
    }

    fn arb_c() -> impl Strategy<Value = Complex64> {
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(r, i)| Complex64::new(r, i))
    }

    proptest! {
        #[test]
        fn monomial_round_trip(m in prop::collection::vec(arb_c(), 1..16)) {
            let p = from_monomial_coeffs(m.clone()).unwrap();
            prop_assert!(close(&p.to_monomial_coeffs(), &m, 1e-12));
        }

        #[test]
        fn isomorphism_round_trip(a in prop::collection::vec(arb_c(), 1..22)) {
            let s = ManyBodyState::new(a.clone()).unwrap();
            let back = form_to_state(&state_to_form(&s));
            prop_assert!(close(back.amplitudes(), &a, 1e-12));
        }

        #[test]
        fn state_map_is_linear(
            a in prop::collection::vec(arb_c(), 9),
            b in prop::collection::vec(arb_c(), 9),
        ) {
            let (s1, s2) = (ManyBodyState::new(a).unwrap(), ManyBodyState::new(b).unwrap());
            let lhs = state_to_form(&(&s1 + &s2));
            let rhs = &state_to_form(&s1) + &state_to_form(&s2);
            prop_assert!(close(lhs.coeffs(), rhs.coeffs(), 1e-12));
        }

        #[test]
        fn linear_power_matches_pointwise(
            alpha in arb_c(), beta in arb_c(), x in arb_c(), y in arb_c(), n in 0usize..12,
        ) {
            prop_assume!(alpha.norm() + beta.norm() > 1e-3);
            let l = LinearForm::new(alpha, beta).unwrap();
            let p = expand_linear_power(&l, n);
            let direct = (alpha * x + beta * y).powu(n as u32);
            let scale = (alpha.norm() + beta.norm()).powi(n as i32) * (x.norm() + y.norm()).powi(n as i32);
            prop_assert!((p.evaluate(x, y) - direct).norm() <= 1e-12 * scale.max(1e-300) + 1e-300);
        }
    }
}
