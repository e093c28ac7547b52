//! JSON documents read and written by the command line tool.
//!
//! Forms: `{"degree": N, "convention": "monomial" | "binomial", "coeffs": [c_0, …, c_N]}`
//! where `c_i` belongs to `x^i y^(N-i)`. States: `{"particles": N, "amplitudes": [c_0, …, c_N]}`
//! where `c_k` belongs to the Fock state with `k` particles down. Each complex
//! entry is `{"re": …, "im": …}`, and each component is either a JSON number
//! or an exact rational `{"num": …, "den": …}` (integers or decimal strings).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use waring_core::oracle::{ExactForm, ExactScalar};
use waring_core::{BinaryForm, Complex64, ManyBodyState, RankReport};

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Monomial,
    Binomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntDoc {
    Small(i64),
    Big(String),
}

impl IntDoc {
    fn to_bigint(&self) -> LabResult<BigInt> {
        match self {
            Self::Small(n) => Ok(BigInt::from(*n)),
            Self::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| LabError::input(format!("'{s}' is not an integer"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComponentDoc {
    Float(f64),
    Rational { num: IntDoc, den: IntDoc },
}

impl ComponentDoc {
    pub fn to_exact(&self) -> LabResult<BigRational> {
        match self {
            Self::Float(x) => {
                BigRational::from_float(*x).ok_or_else(|| LabError::input(format!("{x} is not a finite number")))
            }
            Self::Rational { num, den } => {
                let den = den.to_bigint()?;
                if den.is_zero() {
                    return Err(LabError::input("rational component with zero denominator"));
                }
                Ok(BigRational::new(num.to_bigint()?, den))
            }
        }
    }

    pub fn to_f64(&self) -> LabResult<f64> {
        let x = match self {
            Self::Float(x) => *x,
            Self::Rational { .. } => self.to_exact()?.to_f64().unwrap_or(f64::NAN),
        };
        if x.is_finite() {
            Ok(x)
        } else {
            Err(LabError::input("component is not a finite double"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: ComponentDoc,
    pub im: ComponentDoc,
}

impl ComplexDoc {
    pub fn to_complex(&self) -> LabResult<Complex64> {
        Ok(Complex64::new(self.re.to_f64()?, self.im.to_f64()?))
    }

    pub fn to_exact(&self) -> LabResult<ExactScalar> {
        Ok(ExactScalar::new(self.re.to_exact()?, self.im.to_exact()?))
    }
}

impl From<Complex64> for ComplexDoc {
    fn from(z: Complex64) -> Self {
        Self {
            re: ComponentDoc::Float(z.re),
            im: ComponentDoc::Float(z.im),
        }
    }
}

/// Plain `{re, im}` pair for output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C64 {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn to_c64s(v: &[Complex64]) -> Vec<C64> {
    v.iter().copied().map(C64::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub degree: usize,
    pub convention: Convention,
    pub coeffs: Vec<ComplexDoc>,
}

impl FormDoc {
    pub fn from_form(p: &BinaryForm, convention: Convention) -> Self {
        let coeffs = match convention {
            Convention::Monomial => p.to_monomial_coeffs(),
            Convention::Binomial => p.coeffs().to_vec(),
        };
        Self {
            degree: p.degree(),
            convention,
            coeffs: coeffs.into_iter().map(ComplexDoc::from).collect(),
        }
    }

    fn check_len(&self) -> LabResult<()> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(LabError::input(format!(
                "degree {} needs {} coefficients, found {}",
                self.degree,
                self.degree + 1,
                self.coeffs.len()
            )));
        }
        Ok(())
    }

    pub fn to_form(&self) -> LabResult<BinaryForm> {
        self.check_len()?;
        let c = self
            .coeffs
            .iter()
            .map(ComplexDoc::to_complex)
            .collect::<LabResult<Vec<_>>>()?;
        Ok(match self.convention {
            Convention::Monomial => BinaryForm::from_monomial_coeffs(c)?,
            Convention::Binomial => BinaryForm::from_binomial_coeffs(c)?,
        })
    }

    pub fn to_exact(&self) -> LabResult<ExactForm> {
        self.check_len()?;
        let c = self
            .coeffs
            .iter()
            .map(ComplexDoc::to_exact)
            .collect::<LabResult<Vec<_>>>()?;
        Ok(match self.convention {
            Convention::Monomial => ExactForm::from_monomial_coeffs(c)?,
            Convention::Binomial => ExactForm::from_binomial_coeffs(c)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDoc {
    pub particles: usize,
    pub amplitudes: Vec<ComplexDoc>,
}

impl StateDoc {
    pub fn from_state(s: &ManyBodyState) -> Self {
        Self {
            particles: s.particles(),
            amplitudes: s.amplitudes().iter().copied().map(ComplexDoc::from).collect(),
        }
    }

    pub fn to_state(&self) -> LabResult<ManyBodyState> {
        if self.amplitudes.len() != self.particles + 1 {
            return Err(LabError::input(format!(
                "{} particles need {} amplitudes, found {}",
                self.particles,
                self.particles + 1,
                self.amplitudes.len()
            )));
        }
        let c = self
            .amplitudes
            .iter()
            .map(ComplexDoc::to_complex)
            .collect::<LabResult<Vec<_>>>()?;
        Ok(ManyBodyState::new(c)?)
    }
}

/// Either document kind, told apart by its keys.
#[derive(Debug, Clone, PartialEq)]
pub enum InputDoc {
    Form(FormDoc),
    State(StateDoc),
}

impl InputDoc {
    pub fn from_json(text: &str) -> LabResult<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let obj = value
            .as_object()
            .ok_or_else(|| LabError::input("input document must be a JSON object"))?;
        if obj.contains_key("coeffs") {
            Ok(Self::Form(serde_json::from_value(value)?))
        } else if obj.contains_key("amplitudes") {
            Ok(Self::State(serde_json::from_value(value)?))
        } else {
            Err(LabError::input(
                "input document needs either \"coeffs\" or \"amplitudes\"",
            ))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub lambda: ComplexDoc,
    pub alpha: ComplexDoc,
    pub beta: ComplexDoc,
}

/// A decomposition as read back by `verify`; extra fields are ignored.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct DecompositionInput {
    #[serde(default)]
    pub degree: Option<usize>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermOut {
    pub lambda: C64,
    pub alpha: C64,
    pub beta: C64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootOut {
    pub t0: C64,
    pub t1: C64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CssTermOut {
    pub weight: C64,
    pub theta: f64,
    pub phi: f64,
}

impl From<&waring_core::states::CssTerm> for CssTermOut {
    fn from(t: &waring_core::states::CssTerm) -> Self {
        Self {
            weight: t.weight.into(),
            theta: t.theta,
            phi: t.phi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatPredictionOut {
    pub phi0: f64,
    pub terms: Vec<CssTermOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionOut {
    pub input: String,
    pub degree: usize,
    pub sr: usize,
    pub sbr: usize,
    pub residual: f64,
    pub condition: f64,
    pub terms: Vec<TermOut>,
    pub kernel_roots: Vec<RootOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub css_terms: Option<Vec<CssTermOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cat_prediction: Option<CatPredictionOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedTermOut {
    pub alpha: C64,
    pub beta: C64,
    pub power: usize,
    pub multiplicity: usize,
    pub cofactor: FormDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedOut {
    pub input: String,
    pub degree: usize,
    pub sr: usize,
    pub sbr: usize,
    pub residual: f64,
    pub multiplicity_sum: usize,
    pub terms: Vec<GeneralizedTermOut>,
}

/// Singular-value rank decision; infinities and NaNs serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReportOut {
    pub order: usize,
    pub rows: usize,
    pub cols: usize,
    pub numerical_rank: usize,
    pub tolerance_used: f64,
    pub threshold: f64,
    pub singular_values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_basis: Option<Vec<Vec<C64>>>,
}

impl RankReportOut {
    pub fn new(order: usize, rows: usize, cols: usize, rep: &RankReport, with_kernel: bool) -> Self {
        let sigma_max = rep.singular_values.first().copied().unwrap_or(0.0);
        Self {
            order,
            rows,
            cols,
            numerical_rank: rep.numerical_rank,
            tolerance_used: rep.tolerance_used,
            threshold: rep.tolerance_used * sigma_max,
            singular_values: rep.singular_values.clone(),
            kernel_basis: with_kernel.then(|| rep.kernel_basis.iter().map(|v| to_c64s(v)).collect()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TolerancesOut {
    pub rank: f64,
    pub root: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictionOut {
    pub sbr: usize,
    pub sr: usize,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankOut {
    pub input: String,
    pub degree: usize,
    pub sbr: usize,
    pub sr: usize,
    pub g_n: usize,
    pub kernel_dimension: usize,
    pub root_separation: f64,
    pub tolerances: TolerancesOut,
    pub seed: u64,
    pub catalecticant: Vec<RankReportOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<PredictionOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplainOut {
    pub sbr: usize,
    pub sr: usize,
    pub catalecticant: Vec<RankReportOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOut {
    pub input: String,
    pub degree: usize,
    pub terms: usize,
    pub residual: f64,
    pub residual_tol: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explain: Option<ExplainOut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankPair {
    pub sbr: usize,
    pub sr: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleOut {
    pub input: String,
    pub degree: usize,
    pub float: RankPair,
    pub exact: RankPair,
    pub agree: bool,
}

/// One sweep row; rational `μ = 2π p/q` fills the integer columns, real `μ`
/// fills `mu_real`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRowOut {
    pub mu_numerator: Option<i64>,
    pub mu_denominator: Option<u64>,
    pub mu_real: Option<f64>,
    #[serde(rename = "N")]
    pub n: usize,
    pub sbr: usize,
    pub sr: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_components_parse() {
        let doc: FormDoc = serde_json::from_str(
            r#"{"degree":1,"convention":"monomial","coeffs":[{"re":{"num":1,"den":3},"im":0},{"re":0.5,"im":{"num":"-7","den":"2"}}]}"#,
        )
        .unwrap();
        let e = doc.to_exact().unwrap();
        let c = e.to_monomial_coeffs();
        assert_eq!(
            c[0],
            ExactScalar::from_fractions(1.into(), 3.into(), 0.into(), 1.into()).unwrap()
        );
        assert_eq!(
            c[1],
            ExactScalar::from_fractions(1.into(), 2.into(), (-7).into(), 2.into()).unwrap()
        );
    }

    #[test]
    fn float_text_round_trips() {
        let p = BinaryForm::from_monomial_coeffs(vec![
            Complex64::new(0.1, 1.0 / 3.0),
            Complex64::new(-2.0f64.sqrt(), 1e-300),
            Complex64::new(std::f64::consts::PI, -0.0),
        ])
        .unwrap();
        for conv in [Convention::Monomial, Convention::Binomial] {
            let text = serde_json::to_string(&FormDoc::from_form(&p, conv)).unwrap();
            let back = match InputDoc::from_json(&text).unwrap() {
                InputDoc::Form(f) => f.to_form().unwrap(),
                InputDoc::State(_) => panic!("form expected"),
            };
            if conv == Convention::Binomial {
                assert_eq!(back.coeffs(), p.coeffs());
            } else {
                assert_eq!(back.to_monomial_coeffs(), p.to_monomial_coeffs());
            }
        }
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(InputDoc::from_json("[1,2]").is_err());
        assert!(InputDoc::from_json(r#"{"degree":1}"#).is_err());
        let short = InputDoc::from_json(r#"{"degree":2,"convention":"monomial","coeffs":[{"re":1,"im":0}]}"#).unwrap();
        match short {
            InputDoc::Form(f) => assert!(f.to_form().is_err()),
            InputDoc::State(_) => panic!("form expected"),
        }
        let zero_den = r#"{"degree":0,"convention":"monomial","coeffs":[{"re":{"num":1,"den":0},"im":0}]}"#;
        match InputDoc::from_json(zero_den).unwrap() {
            InputDoc::Form(f) => assert!(f.to_exact().is_err()),
            InputDoc::State(_) => panic!("form expected"),
        }
    }

    #[test]
    fn infinities_serialize_as_null() {
        let row = RankReportOut {
            order: 1,
            rows: 1,
            cols: 2,
            numerical_rank: 1,
            tolerance_used: 1e-8,
            threshold: f64::INFINITY,
            singular_values: vec![f64::NAN],
            kernel_basis: None,
        };
        let text = serde_json::to_string(&row).unwrap();
        assert!(text.contains("\"threshold\":null"));
        assert!(text.contains("[null]"));
    }
}
