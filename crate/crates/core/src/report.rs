//! Per-graph analysis: validate, dualise, solve the T-join, build the
//! transversal and independent set, and evaluate every bound.

use std::time::Instant;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exec::Execution;
use crate::graph::{self, write_planar_code, EmbeddedGraph, FullereneError, FullereneGraph};
use crate::moats::{greedy_packing, verify_packing, Certificate, CertificateError};
use crate::refine::refine;
use crate::spectra::{self, ShellVerdict, SpectraError};
use crate::transversal::{
    bounds_report, independent_set, odd_cycle_transversal_with, TransversalError, Verdict,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("not a fullerene: {0}")]
    Fullerene(#[from] FullereneError),
    #[error(transparent)]
    Transversal(#[from] TransversalError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Certificate(#[from] CertificateError),
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub spectra: bool,
    pub eig_tol: f64,
    /// Checked against every graph whose dual it was issued for.
    pub certificate: Option<Certificate>,
    /// Also verify the greedy disk packing of the refined dual.
    pub greedy_certificate: bool,
    pub timings: bool,
    pub exec: Execution,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            spectra: false,
            eig_tol: spectra::DEFAULT_TOLERANCE,
            certificate: None,
            greedy_certificate: false,
            timings: false,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub transversal_ms: f64,
    pub independent_set_ms: f64,
    pub bounds_ms: f64,
    pub spectra_ms: Option<f64>,
}

/// One line of `analyze` output. Every field is always present; analyses
/// that were not run are `null`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub index: usize,
    pub graph_sha256: String,
    pub n: usize,
    pub m: usize,
    pub tau_odd: usize,
    /// `5·tau_odd²`, compared exactly with `12n`.
    pub tau_squared_times_5: usize,
    pub twelve_n: usize,
    pub tau_bound: f64,
    pub tau_verdict: Verdict,
    pub cui_wang_bound: f64,
    pub cui_wang_verdict: Verdict,
    pub hopkins_staton_bound: f64,
    pub hopkins_staton_verdict: Verdict,
    pub is_matching: bool,
    pub independent_set_size: usize,
    pub exact_alpha: Option<usize>,
    pub independence_bound: usize,
    pub independence_verdict: Verdict,
    pub three_eighths_bound: usize,
    pub three_eighths_verdict: Verdict,
    pub diameter: usize,
    pub diameter_bound: f64,
    pub diameter_verdict: Verdict,
    pub graffiti_lhs: usize,
    pub graffiti_verdict: Verdict,
    pub lambda_min: Option<f64>,
    pub lambda_min_bound: Option<f64>,
    pub lambda_min_verdict: Option<Verdict>,
    pub mu_max: Option<f64>,
    pub maxcut_cut: Option<usize>,
    pub maxcut_bound: Option<f64>,
    pub maxcut_verdict: Option<Verdict>,
    pub closed_shell: Option<ShellVerdict>,
    /// Exact rational, e.g. `"8"` or `"17/3"`.
    pub certificate_value: Option<String>,
    /// Certificate value compared with `tau_odd` (value ≤ tau).
    pub certificate_vs_tau: Option<Verdict>,
    pub greedy_certificate_value: Option<String>,
    pub greedy_vs_tau: Option<Verdict>,
    pub timings: Option<Timings>,
    pub error: Option<String>,
}

impl AnalysisReport {
    pub fn verdicts(&self) -> Vec<Verdict> {
        let mut v = vec![
            self.tau_verdict,
            self.cui_wang_verdict,
            self.hopkins_staton_verdict,
            self.independence_verdict,
            self.three_eighths_verdict,
            self.diameter_verdict,
            self.graffiti_verdict,
        ];
        v.extend(
            [self.lambda_min_verdict, self.maxcut_verdict, self.certificate_vs_tau, self.greedy_vs_tau]
                .into_iter()
                .flatten(),
        );
        v
    }

    pub fn any_violated(&self) -> bool {
        self.verdicts().contains(&Verdict::Violated)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

/// A report line for a graph that could not be analysed: every key present,
/// all null except `index` and `error`.
pub fn error_line(index: usize, message: &str) -> Value {
    let template = AnalysisReport {
        index,
        graph_sha256: String::new(),
        n: 0,
        m: 0,
        tau_odd: 0,
        tau_squared_times_5: 0,
        twelve_n: 0,
        tau_bound: 0.0,
        tau_verdict: Verdict::Holds,
        cui_wang_bound: 0.0,
        cui_wang_verdict: Verdict::Holds,
        hopkins_staton_bound: 0.0,
        hopkins_staton_verdict: Verdict::Holds,
        is_matching: false,
        independent_set_size: 0,
        exact_alpha: None,
        independence_bound: 0,
        independence_verdict: Verdict::Holds,
        three_eighths_bound: 0,
        three_eighths_verdict: Verdict::Holds,
        diameter: 0,
        diameter_bound: 0.0,
        diameter_verdict: Verdict::Holds,
        graffiti_lhs: 0,
        graffiti_verdict: Verdict::Holds,
        lambda_min: None,
        lambda_min_bound: None,
        lambda_min_verdict: None,
        mu_max: None,
        maxcut_cut: None,
        maxcut_bound: None,
        maxcut_verdict: None,
        closed_shell: None,
        certificate_value: None,
        certificate_vs_tau: None,
        greedy_certificate_value: None,
        greedy_vs_tau: None,
        timings: None,
        error: None,
    };
    let Value::Object(mut map) = template.to_json() else { unreachable!() };
    for (key, value) in map.iter_mut() {
        *value = match key.as_str() {
            "index" => Value::from(index),
            "error" => Value::from(message),
            _ => Value::Null,
        };
    }
    Value::Object(map)
}

pub fn sha256_of(g: &EmbeddedGraph) -> String {
    hex::encode(Sha256::digest(write_planar_code([g]).expect("graph fits planar_code")))
}

fn ratio_string(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs the whole pipeline on one fullerene.
pub fn analyze(f: &FullereneGraph, index: usize, opts: &AnalysisOptions) -> Result<AnalysisReport, AnalysisError> {
    let g = f.graph();
    let n = f.n();
    let t0 = Instant::now();
    let tr = odd_cycle_transversal_with(f, opts.exec)?;
    let transversal_ms = ms(t0);
    let t1 = Instant::now();
    let isr = independent_set(f, &tr)?;
    let independent_set_ms = ms(t1);
    let t2 = Instant::now();
    let b = bounds_report(f, &tr, &isr, opts.exec);
    let bounds_ms = ms(t2);
    let tau = tr.len();

    let mut report = AnalysisReport {
        index,
        graph_sha256: sha256_of(g),
        n,
        m: g.m(),
        tau_odd: tau,
        tau_squared_times_5: 5 * tau * tau,
        twelve_n: 12 * n,
        tau_bound: b.tau_bound,
        tau_verdict: b.tau_verdict,
        cui_wang_bound: b.cui_wang_bound,
        cui_wang_verdict: b.cui_wang_verdict,
        hopkins_staton_bound: b.hopkins_staton_bound,
        hopkins_staton_verdict: b.hopkins_staton_verdict,
        is_matching: tr.is_matching,
        independent_set_size: isr.size(),
        exact_alpha: b.exact_alpha,
        independence_bound: b.independence_bound,
        independence_verdict: b.independence_verdict,
        three_eighths_bound: b.three_eighths_bound,
        three_eighths_verdict: b.three_eighths_verdict,
        diameter: b.diameter,
        diameter_bound: b.diameter_bound,
        diameter_verdict: b.diameter_verdict,
        graffiti_lhs: b.graffiti_lhs,
        graffiti_verdict: b.graffiti_verdict,
        lambda_min: None,
        lambda_min_bound: None,
        lambda_min_verdict: None,
        mu_max: None,
        maxcut_cut: None,
        maxcut_bound: None,
        maxcut_verdict: None,
        closed_shell: None,
        certificate_value: None,
        certificate_vs_tau: None,
        greedy_certificate_value: None,
        greedy_vs_tau: None,
        timings: None,
        error: None,
    };

    let mut spectra_ms = None;
    if opts.spectra {
        let t3 = Instant::now();
        let adj = spectra::adjacency_spectrum_tol(g, opts.eig_tol)?;
        let bound = spectra::lambda_min_bound(n);
        report.lambda_min = Some(adj.min());
        report.lambda_min_bound = Some(bound);
        report.lambda_min_verdict = Some(spectra::float_verdict(adj.min(), bound, opts.eig_tol));
        let cut = spectra::maxcut_spectral_check(f, &tr)?;
        report.mu_max = Some(cut.mu_max);
        report.maxcut_cut = Some(cut.cut);
        report.maxcut_bound = Some(cut.bound);
        report.maxcut_verdict = Some(if cut.holds {
            spectra::float_verdict(cut.cut as f64, cut.bound, 1e-6)
        } else {
            Verdict::Violated
        });
        report.closed_shell = Some(spectra::closed_shell_check(g, &isr.vertices, opts.eig_tol)?.verdict);
        spectra_ms = Some(ms(t3));
    }

    let tau_ratio = Ratio::from_integer(tau as i64);
    let compare = |value: Ratio<i64>| Verdict::at_most(value, tau_ratio);
    if opts.certificate.is_some() || opts.greedy_certificate {
        let (tri, _) = graph::dual(f)?;
        if let Some(cert) = &opts.certificate {
            if cert.graph_sha256.eq_ignore_ascii_case(&crate::moats::graph_sha256(&tri)) {
                let value = cert.value(&tri)?;
                report.certificate_value = Some(ratio_string(value));
                report.certificate_vs_tau = Some(compare(value));
            }
        }
        if opts.greedy_certificate {
            let rt = refine(&tri);
            let stats = verify_packing(&rt, &greedy_packing(&rt)).expect("greedy packings verify");
            report.greedy_certificate_value = Some(ratio_string(stats.value));
            report.greedy_vs_tau = Some(compare(stats.value));
        }
    }

    if opts.timings {
        report.timings = Some(Timings { transversal_ms, independent_set_ms, bounds_ms, spectra_ms });
    }
    Ok(report)
}

/// Validates and analyses every graph; results keep input order.
pub fn analyze_batch(graphs: &[EmbeddedGraph], opts: &AnalysisOptions) -> Vec<Result<AnalysisReport, AnalysisError>> {
    let inner = AnalysisOptions { exec: Execution::Sequential, ..opts.clone() };
    opts.exec.map_range(graphs.len(), |i| {
        let f = FullereneGraph::validate(graphs[i].clone())?;
        analyze(&f, i, &inner)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldberg::{dodecahedron, icosahedral_fullerene, GeodesicSpec};
    use crate::graph::samples::k4;

    #[test]
    fn c60_report() {
        let f = icosahedral_fullerene(GeodesicSpec::new(1).unwrap());
        let opts = AnalysisOptions { spectra: true, greedy_certificate: true, ..Default::default() };
        let r = analyze(&f, 0, &opts).unwrap();
        assert_eq!((r.n, r.tau_odd, r.independent_set_size), (60, 12, 24));
        assert_eq!(r.tau_verdict, Verdict::Equality);
        assert_eq!(r.greedy_certificate_value.as_deref(), Some("12"));
        assert_eq!(r.greedy_vs_tau, Some(Verdict::Equality));
        assert!(!r.any_violated());
        assert!(r.timings.is_none());
    }

    #[test]
    fn error_lines_share_the_key_set() {
        let f = dodecahedron();
        let ok = analyze(&f, 0, &AnalysisOptions::default()).unwrap().to_json();
        let bad = error_line(3, "boom");
        let keys = |v: &Value| v.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
        assert_eq!(keys(&ok), keys(&bad));
        assert_eq!(bad["index"], 3);
        assert_eq!(bad["n"], Value::Null);
    }

    #[test]
    fn batch_keeps_order_and_reports_failures() {
        let graphs = vec![dodecahedron().into_graph(), k4(), icosahedral_fullerene(GeodesicSpec::new(1).unwrap()).into_graph()];
        for exec in [Execution::Sequential, Execution::Parallel] {
            let out = analyze_batch(&graphs, &AnalysisOptions { exec, ..Default::default() });
            assert_eq!(out[0].as_ref().unwrap().n, 20);
            assert!(matches!(out[1], Err(AnalysisError::Fullerene(_))));
            assert_eq!(out[2].as_ref().unwrap().index, 2);
        }
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(ratio_string(Ratio::new(16, 2)), "8");
        assert_eq!(ratio_string(Ratio::new(17, 3)), "17/3");
    }
}
