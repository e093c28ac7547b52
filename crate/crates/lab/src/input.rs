//! Resolution of `--fock`, `--sss`, `--css`, `--inline` and `--input` into forms.

use std::collections::BTreeMap;
use std::path::Path;

use waring_core::oracle::{ExactForm, ExactScalar};
use waring_core::states::{coherent_spin_state, fock_state, spin_squeezed_state, SqueezingParameter};
use waring_core::{form_to_state, state_to_form, BinaryForm, ManyBodyState};

use crate::error::{LabError, LabResult};
use crate::inline::parse_form;
use crate::schema::InputDoc;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Fock { n: usize, k: usize },
    Sss { mu: SqueezingParameter, n: usize },
    Css { theta: f64, phi: f64, n: usize },
    Inline,
    FormFile,
    StateFile,
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub label: String,
    pub source: Source,
    pub form: BinaryForm,
    /// Present for inputs with exact Gaussian-rational coefficients.
    pub exact: Option<ExactForm>,
}

impl Resolved {
    pub fn degree(&self) -> usize {
        self.form.degree()
    }

    pub fn is_state(&self) -> bool {
        !matches!(self.source, Source::Inline | Source::FormFile)
    }

    pub fn state(&self) -> ManyBodyState {
        form_to_state(&self.form)
    }

    fn from_state(label: String, source: Source, s: &ManyBodyState) -> Self {
        Self {
            label,
            source,
            form: state_to_form(s),
            exact: None,
        }
    }
}

/// Exactly one of these is set; clap enforces that on the command line.
#[derive(Debug, Clone, Default)]
pub struct InputSpec<'a> {
    pub fock: Option<&'a str>,
    pub sss: Option<&'a str>,
    pub css: Option<&'a str>,
    pub inline: Option<&'a str>,
    pub input: Option<&'a Path>,
}

pub fn resolve(spec: &InputSpec<'_>) -> LabResult<Resolved> {
    let given = [
        spec.fock.is_some(),
        spec.sss.is_some(),
        spec.css.is_some(),
        spec.inline.is_some(),
        spec.input.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(LabError::input(
            "give exactly one of --fock, --sss, --css, --inline, --input",
        ));
    }
    if let Some(s) = spec.fock {
        resolve_fock(s)
    } else if let Some(s) = spec.sss {
        resolve_sss(s)
    } else if let Some(s) = spec.css {
        resolve_css(s)
    } else if let Some(s) = spec.inline {
        let exact = parse_form(s)?;
        Ok(Resolved {
            label: format!("inline {}", s.trim()),
            source: Source::Inline,
            form: exact.to_float(),
            exact: Some(exact),
        })
    } else {
        resolve_file(spec.input.expect("one source is set"))
    }
}

/// `key=value` pairs separated by commas.
pub fn parse_pairs(spec: &str, allowed: &[&str]) -> LabResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| LabError::input(format!("expected key=value, got '{part}'")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(LabError::input(format!(
                "unknown key '{k}' (expected one of {})",
                allowed.join(", ")
            )));
        }
        if out.insert(k.to_string(), v.trim().to_string()).is_some() {
            return Err(LabError::input(format!("key '{k}' given twice")));
        }
    }
    Ok(out)
}

fn take<T: std::str::FromStr>(pairs: &BTreeMap<String, String>, key: &str) -> LabResult<T> {
    let raw = pairs
        .get(key)
        .ok_or_else(|| LabError::input(format!("missing key '{key}'")))?;
    raw.parse()
        .map_err(|_| LabError::input(format!("bad value '{raw}' for '{key}'")))
}

fn take_finite(pairs: &BTreeMap<String, String>, key: &str) -> LabResult<f64> {
    let x: f64 = take(pairs, key)?;
    if !x.is_finite() {
        return Err(LabError::input(format!("'{key}' must be finite")));
    }
    Ok(x)
}

fn resolve_fock(s: &str) -> LabResult<Resolved> {
    let pairs = parse_pairs(s, &["N", "k"])?;
    let n: usize = take(&pairs, "N")?;
    let k: usize = take(&pairs, "k")?;
    let state = fock_state(n, k)?;
    let mut coeffs = vec![ExactScalar::zero(); n + 1];
    coeffs[n - k] = ExactScalar::one();
    let mut r = Resolved::from_state(format!("fock N={n},k={k}"), Source::Fock { n, k }, &state);
    r.exact = Some(ExactForm::from_monomial_coeffs(coeffs)?);
    Ok(r)
}

fn resolve_sss(s: &str) -> LabResult<Resolved> {
    let pairs = parse_pairs(s, &["p", "q", "mu", "N"])?;
    let n: usize = take(&pairs, "N")?;
    let (mu, label) = match (
        pairs.contains_key("p") || pairs.contains_key("q"),
        pairs.contains_key("mu"),
    ) {
        (true, false) => {
            let p: i64 = take(&pairs, "p")?;
            let q: u64 = take(&pairs, "q")?;
            let mu = SqueezingParameter::rational(p, q)?;
            let SqueezingParameter::Rational { p, q } = mu else {
                unreachable!("rational constructor")
            };
            (mu, format!("sss p={p},q={q},N={n}"))
        }
        (false, true) => {
            let mu = take_finite(&pairs, "mu")?;
            (SqueezingParameter::real(mu), format!("sss mu={mu},N={n}"))
        }
        _ => return Err(LabError::input("--sss needs either p=,q= or mu=")),
    };
    let state = spin_squeezed_state(&mu, n);
    Ok(Resolved::from_state(label, Source::Sss { mu, n }, &state))
}

fn resolve_css(s: &str) -> LabResult<Resolved> {
    let pairs = parse_pairs(s, &["theta", "phi", "N"])?;
    let theta = take_finite(&pairs, "theta")?;
    let phi = take_finite(&pairs, "phi")?;
    let n: usize = take(&pairs, "N")?;
    let state = coherent_spin_state(theta, phi, n);
    Ok(Resolved::from_state(
        format!("css theta={theta},phi={phi},N={n}"),
        Source::Css { theta, phi, n },
        &state,
    ))
}

fn resolve_file(path: &Path) -> LabResult<Resolved> {
    let text = std::fs::read_to_string(path)?;
    let label = format!("file {}", path.display());
    match InputDoc::from_json(&text)? {
        InputDoc::Form(doc) => Ok(Resolved {
            label,
            source: Source::FormFile,
            form: doc.to_form()?,
            exact: Some(doc.to_exact()?),
        }),
        InputDoc::State(doc) => Ok(Resolved::from_state(label, Source::StateFile, &doc.to_state()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_reject_unknown_and_duplicate_keys() {
        assert!(parse_pairs("N=3,k=1", &["N", "k"]).is_ok());
        assert!(parse_pairs("N=3,z=1", &["N", "k"]).is_err());
        assert!(parse_pairs("N=3,N=4", &["N", "k"]).is_err());
        assert!(parse_pairs("N3", &["N"]).is_err());
    }

    #[test]
    fn sss_reduces_the_fraction() {
        let spec = InputSpec {
            sss: Some("p=4,q=6,N=8"),
            ..Default::default()
        };
        let r = resolve(&spec).unwrap();
        assert_eq!(r.label, "sss p=2,q=3,N=8");
        assert!(r.is_state());
    }

    #[test]
    fn fock_exact_form_is_the_monomial() {
        let r = resolve(&InputSpec {
            fock: Some("N=5,k=2"),
            ..Default::default()
        })
        .unwrap();
        let exact = r.exact.unwrap().to_monomial_coeffs();
        assert_eq!(exact[3], ExactScalar::one());
        assert!(r.form.to_monomial_coeffs()[3].norm() > 0.0);
    }

    #[test]
    fn sources_are_exclusive() {
        let spec = InputSpec {
            fock: Some("N=3,k=1"),
            inline: Some("xy"),
            ..Default::default()
        };
        assert!(resolve(&spec).is_err());
        assert!(resolve(&InputSpec::default()).is_err());
    }
}
