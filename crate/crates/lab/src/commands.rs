//! Subcommand implementations. Each returns the rendered output plus an
//! optional verification failure, so that reports are still written when the
//! exit code is 1.

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use waring_core::oracle::{exact_border_rank, exact_symmetric_rank};
use waring_core::states::{
    css_terms, predict_sss_decomposition, predict_sss_ranks, sweep_parameters, sweep_row, SqueezingParameter,
};
use waring_core::{
    decompose, form_distance, generalized_decompose, generic_rank, numerical_rank, symmetric_rank,
    weighted_catalecticant, BinaryForm, LinearForm, SylvesterConfig, Tolerances,
};

use crate::error::{LabError, LabResult};
use crate::input::{Resolved, Source};
use crate::schema::*;

/// Environment variable capping sweep worker threads.
pub const THREADS_ENV: &str = "WARING_LAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> LabResult<()> {
        let t = self.tolerances;
        for (name, v) in [
            ("--tol", t.rank),
            ("--root-tol", t.root),
            ("--residual-tol", t.residual),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(LabError::input(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(())
    }

    pub fn sylvester(&self) -> SylvesterConfig {
        SylvesterConfig {
            tolerances: self.tolerances,
            seed: self.seed,
            ..SylvesterConfig::default()
        }
    }

    fn tolerances_out(&self) -> TolerancesOut {
        TolerancesOut {
            rank: self.tolerances.rank,
            root: self.tolerances.root,
            residual: self.tolerances.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    /// Set when the output was produced but a verification check failed.
    pub failure: Option<String>,
}

impl Report {
    fn ok(text: String) -> Self {
        Self { text, failure: None }
    }
}

fn json<T: Serialize>(value: &T) -> LabResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_text<T: Serialize>(header: Option<&[&str]>, rows: &[T]) -> LabResult<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(header.is_none())
        .from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writes utf-8"))
}

fn catalecticant_reports(
    p: &BinaryForm,
    orders: impl Iterator<Item = usize>,
    tol: f64,
    kernels: bool,
) -> LabResult<Vec<RankReportOut>> {
    let pn = p.normalized();
    orders
        .map(|r| {
            let m = weighted_catalecticant(&pn, r)?;
            let rep = numerical_rank(&m, tol)?;
            Ok(RankReportOut::new(r, m.rows(), m.cols(), &rep, kernels))
        })
        .collect()
}

fn prediction(input: &Resolved) -> LabResult<Option<(usize, usize)>> {
    Ok(match input.source {
        Source::Fock { n, k } => {
            let k = k.min(n - k);
            Some(if k == 0 { (1, 1) } else { (k + 1, n - k + 1) })
        }
        Source::Sss {
            mu: SqueezingParameter::Rational { p, q },
            n,
        } => {
            let pr = predict_sss_ranks(p, q, n)?;
            Some((pr.sbr, pr.sr))
        }
        Source::Css { .. } => Some((1, 1)),
        _ => None,
    })
}

pub fn rank(input: &Resolved, cfg: &RunConfig) -> LabResult<Report> {
    let r = symmetric_rank(&input.form, &cfg.sylvester())?;
    let n = input.degree();
    let orders = if n == 0 {
        0..0
    } else {
        r.sbr.saturating_sub(1).max(1)..r.sbr + 1
    };
    let out = RankOut {
        input: input.label.clone(),
        degree: n,
        sbr: r.sbr,
        sr: r.sr,
        g_n: generic_rank(n),
        kernel_dimension: r.kernel_dimension,
        root_separation: r.separation,
        tolerances: cfg.tolerances_out(),
        seed: cfg.seed,
        catalecticant: catalecticant_reports(&input.form, orders, cfg.tolerances.rank, false)?,
        prediction: prediction(input)?.map(|(sbr, sr)| PredictionOut {
            sbr,
            sr,
            agrees: (sbr, sr) == (r.sbr, r.sr),
        }),
    };
    Ok(Report::ok(match cfg.format {
        Format::Json => json(&out)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                input: &'a str,
                #[serde(rename = "N")]
                n: usize,
                sbr: usize,
                sr: usize,
                #[serde(rename = "g_N")]
                g_n: usize,
            }
            csv_text(
                None,
                &[Row {
                    input: &out.input,
                    n,
                    sbr: out.sbr,
                    sr: out.sr,
                    g_n: out.g_n,
                }],
            )?
        }
    }))
}

fn residual_check(residual: f64, tol: f64) -> Option<String> {
    if residual <= tol {
        None
    } else {
        Some(format!("re-expansion residual {residual:e} exceeds {tol:e}"))
    }
}

pub fn decompose_cmd(input: &Resolved, cfg: &RunConfig, generalized: bool) -> LabResult<Report> {
    if generalized {
        return generalized_cmd(input, cfg);
    }
    let d = decompose(&input.form, &cfg.sylvester())?;
    let n = input.degree();
    let residual = form_distance(&input.form, &d.expand(n))?;
    let cat_prediction = match input.source {
        Source::Sss {
            mu: SqueezingParameter::Rational { p, q },
            n,
        } if q as usize <= generic_rank(n) => {
            let pred = predict_sss_decomposition(p, q, n)?;
            Some(CatPredictionOut {
                phi0: pred.phi0,
                terms: pred.terms.iter().map(CssTermOut::from).collect(),
            })
        }
        _ => None,
    };
    let out = DecompositionOut {
        input: input.label.clone(),
        degree: n,
        sr: d.sr,
        sbr: d.sbr,
        residual,
        condition: d.condition,
        terms: d
            .terms
            .iter()
            .map(|t| TermOut {
                lambda: t.lambda.into(),
                alpha: t.form.alpha.into(),
                beta: t.form.beta.into(),
            })
            .collect(),
        kernel_roots: d
            .kernel_poly_roots
            .iter()
            .map(|(r, m)| RootOut {
                t0: r.t0().into(),
                t1: r.t1().into(),
                multiplicity: *m,
            })
            .collect(),
        css_terms: input
            .is_state()
            .then(|| css_terms(&d, n).iter().map(CssTermOut::from).collect()),
        cat_prediction,
    };
    let text = match cfg.format {
        Format::Json => json(&out)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                lambda_re: f64,
                lambda_im: f64,
                alpha_re: f64,
                alpha_im: f64,
                beta_re: f64,
                beta_im: f64,
            }
            let rows: Vec<Row> = out
                .terms
                .iter()
                .map(|t| Row {
                    lambda_re: t.lambda.re,
                    lambda_im: t.lambda.im,
                    alpha_re: t.alpha.re,
                    alpha_im: t.alpha.im,
                    beta_re: t.beta.re,
                    beta_im: t.beta.im,
                })
                .collect();
            csv_text(None, &rows)?
        }
    };
    Ok(Report {
        text,
        failure: residual_check(residual, cfg.tolerances.residual),
    })
}

fn generalized_cmd(input: &Resolved, cfg: &RunConfig) -> LabResult<Report> {
    let g = generalized_decompose(&input.form, &cfg.sylvester())?;
    let n = input.degree();
    let residual = form_distance(&input.form, &g.expand(n))?;
    let out = GeneralizedOut {
        input: input.label.clone(),
        degree: n,
        sr: g.sr,
        sbr: g.sbr,
        residual,
        multiplicity_sum: g.terms.iter().map(|t| t.multiplicity()).sum(),
        terms: g
            .terms
            .iter()
            .map(|t| GeneralizedTermOut {
                alpha: t.linear.alpha.into(),
                beta: t.linear.beta.into(),
                power: t.power,
                multiplicity: t.multiplicity(),
                cofactor: FormDoc::from_form(&t.cofactor, Convention::Monomial),
            })
            .collect(),
    };
    let text = match cfg.format {
        Format::Json => json(&out)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                term: usize,
                alpha_re: f64,
                alpha_im: f64,
                beta_re: f64,
                beta_im: f64,
                power: usize,
                multiplicity: usize,
                cofactor_x_power: usize,
                cofactor_re: f64,
                cofactor_im: f64,
            }
            let mut rows = Vec::new();
            for (idx, t) in g.terms.iter().enumerate() {
                for (i, c) in t.cofactor.to_monomial_coeffs().iter().enumerate() {
                    rows.push(Row {
                        term: idx,
                        alpha_re: t.linear.alpha.re,
                        alpha_im: t.linear.alpha.im,
                        beta_re: t.linear.beta.re,
                        beta_im: t.linear.beta.im,
                        power: t.power,
                        multiplicity: t.multiplicity(),
                        cofactor_x_power: i,
                        cofactor_re: c.re,
                        cofactor_im: c.im,
                    });
                }
            }
            csv_text(None, &rows)?
        }
    };
    Ok(Report {
        text,
        failure: residual_check(residual, cfg.tolerances.residual),
    })
}

pub fn verify(input: &Resolved, decomposition: &Path, explain: bool, cfg: &RunConfig) -> LabResult<Report> {
    let text = std::fs::read_to_string(decomposition)?;
    let doc: DecompositionInput = serde_json::from_str(&text)?;
    let n = input.degree();
    if let Some(d) = doc.degree {
        if d != n {
            return Err(LabError::input(format!(
                "decomposition has degree {d}, input has degree {n}"
            )));
        }
    }
    let mut expansion = BinaryForm::zero(n);
    for t in &doc.terms {
        let l = LinearForm::new(t.alpha.to_complex()?, t.beta.to_complex()?)?;
        let power = waring_core::expand_linear_power(&l, n).scale(t.lambda.to_complex()?);
        expansion = &expansion + &power;
    }
    let residual = form_distance(&input.form, &expansion)?;
    let explain = if explain {
        let r = symmetric_rank(&input.form, &cfg.sylvester())?;
        let orders = if n == 0 { 0..0 } else { 1..r.sbr + 1 };
        Some(ExplainOut {
            sbr: r.sbr,
            sr: r.sr,
            catalecticant: catalecticant_reports(&input.form, orders, cfg.tolerances.rank, true)?,
        })
    } else {
        None
    };
    let failure = residual_check(residual, cfg.tolerances.residual);
    let out = VerifyOut {
        input: input.label.clone(),
        degree: n,
        terms: doc.terms.len(),
        residual,
        residual_tol: cfg.tolerances.residual,
        passed: failure.is_none(),
        explain,
    };
    let text = match cfg.format {
        Format::Json => json(&out)?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                #[serde(rename = "N")]
                n: usize,
                terms: usize,
                residual: f64,
                residual_tol: f64,
                passed: bool,
            }
            csv_text(
                None,
                &[Row {
                    n,
                    terms: out.terms,
                    residual,
                    residual_tol: out.residual_tol,
                    passed: out.passed,
                }],
            )?
        }
    };
    Ok(Report { text, failure })
}

pub fn oracle_check(input: &Resolved, cfg: &RunConfig) -> LabResult<Report> {
    let exact = input.exact.as_ref().ok_or_else(|| {
        LabError::input(format!(
            "'{}' has no exact Gaussian-rational coefficients; oracle-check takes --inline, --fock or a form file",
            input.label
        ))
    })?;
    if exact.is_zero() {
        return Err(waring_core::Error::ZeroForm.into());
    }
    let float = symmetric_rank(&exact.to_float(), &cfg.sylvester())?;
    let sbr = exact_border_rank(exact)?;
    let esr = exact_symmetric_rank(exact)?;
    debug_assert_eq!(sbr, esr.sbr);
    let out = OracleOut {
        input: input.label.clone(),
        degree: exact.degree(),
        float: RankPair {
            sbr: float.sbr,
            sr: float.sr,
        },
        exact: RankPair { sbr, sr: esr.sr },
        agree: float.sbr == sbr && float.sr == esr.sr,
    };
    let failure = (!out.agree).then(|| {
        format!(
            "floating (sbr, sr) = ({}, {}) but exact (sbr, sr) = ({}, {})",
            out.float.sbr, out.float.sr, out.exact.sbr, out.exact.sr
        )
    });
    let text = match cfg.format {
        Format::Json => json(&out)?,
        Format::Csv => csv_text(
            Some(&["N", "float_sbr", "float_sr", "exact_sbr", "exact_sr", "agree"]),
            &[(
                out.degree,
                out.float.sbr,
                out.float.sr,
                out.exact.sbr,
                out.exact.sr,
                out.agree,
            )],
        )?,
    };
    Ok(Report { text, failure })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub particles: Vec<usize>,
    pub q_max: u64,
    pub samples: usize,
}

/// Worker cap from [`THREADS_ENV`]; `None` when unset.
pub fn thread_cap() -> LabResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(LabError::input(format!("{THREADS_ENV}: {e}"))),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(LabError::input(format!(
                "{THREADS_ENV} must be a positive integer, got '{v}'"
            ))),
        },
    }
}

/// Rows ordered by `N`, then rationals by `q` and `p`, then real `μ` ascending.
pub fn sweep_rows(spec: &SweepSpec, cfg: &RunConfig, threads: Option<usize>) -> LabResult<Vec<SweepRowOut>> {
    if spec.particles.is_empty() {
        return Err(LabError::input("sweep needs at least one particle number"));
    }
    if let Some(&n) = spec.particles.iter().find(|&&n| n < 2) {
        return Err(LabError::input(format!("sweep needs N >= 2, got {n}")));
    }
    if spec.q_max == 0 {
        return Err(LabError::input("--q-max must be at least 1"));
    }
    let mus = sweep_parameters(spec.q_max, spec.samples, cfg.seed);
    let jobs: Vec<(usize, SqueezingParameter)> = spec
        .particles
        .iter()
        .flat_map(|&n| mus.iter().map(move |&mu| (n, mu)))
        .collect();
    let syl = cfg.sylvester();
    let work = || -> LabResult<Vec<SweepRowOut>> {
        jobs.par_iter()
            .map(|&(n, mu)| {
                let row = sweep_row(mu, n, &syl)?;
                let (mu_numerator, mu_denominator, mu_real) = match row.mu {
                    SqueezingParameter::Rational { p, q } => (Some(p), Some(q), None),
                    SqueezingParameter::Real(x) => (None, None, Some(x)),
                };
                Ok(SweepRowOut {
                    mu_numerator,
                    mu_denominator,
                    mu_real,
                    n: row.n,
                    sbr: row.sbr,
                    sr: row.sr,
                })
            })
            .collect()
    };
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| LabError::input(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}

pub fn sweep(spec: &SweepSpec, cfg: &RunConfig) -> LabResult<Report> {
    let mut particles = spec.particles.clone();
    particles.sort_unstable();
    particles.dedup();
    let spec = SweepSpec {
        particles,
        ..spec.clone()
    };
    let rows = sweep_rows(&spec, cfg, thread_cap()?)?;
    Ok(Report::ok(match cfg.format {
        Format::Csv => csv_text(None, &rows)?,
        Format::Json => json(&rows)?,
    }))
}
