//! End-to-end evaluation: pick a method, get a report.

use crate::data::{CompetingRiskSample, Definition, Horizon};
use crate::error::Error;
use crate::ipcw::{
    fit_censoring_cox, fit_censoring_km, ipcw_metrics, ipcw_roc_curve, ipcw_sensitivity,
    ipcw_specificity, ipcw_weights, CensoringModel,
};
use crate::kernel::{case_weights_with_policy, UndefinedWeightPolicy};
use crate::metrics::{
    abs_err, auc_concordance_with_pairing, brier, kullback_leibler_with_clips, roc_curve,
    sensitivity, specificity, AccuracyReport, AucPairing, RocCurve,
};
use crate::data::KernelSpec;

/// Estimation method for the time-dependent accuracy metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Method {
    /// Conditional-probability weighting with kernel-smoothed curves.
    Proposed,
    /// IPCW with a Kaplan-Meier censoring model (ignores the risk score).
    IpcwKm,
    /// IPCW with a Cox censoring model on the risk score.
    IpcwCox,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Proposed, Method::IpcwKm, Method::IpcwCox];

    pub fn parse(s: &str) -> Option<Method> {
        match s.trim().to_ascii_lowercase().as_str() {
            "proposed" => Some(Method::Proposed),
            "ipcw-km" | "ipcw.km" | "ipcw_km" => Some(Method::IpcwKm),
            "ipcw-cox" | "ipcw.cox" | "ipcw_cox" => Some(Method::IpcwCox),
            _ => None,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Proposed => write!(f, "proposed"),
            Method::IpcwKm => write!(f, "ipcw-km"),
            Method::IpcwCox => write!(f, "ipcw-cox"),
        }
    }
}

/// Options shared by the pipeline entry points.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    /// Smoothing for the proposed method (ignored by the IPCW methods).
    pub kernel: KernelSpec,
    /// What to do with unidentified censored-case probabilities.
    pub policy: UndefinedWeightPolicy,
    /// Pairing mode of the concordance AUC for the proposed method.
    pub pairing: AucPairing,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            kernel: KernelSpec::default(),
            policy: UndefinedWeightPolicy::Exclude,
            pairing: AucPairing::CaseControl,
        }
    }
}

impl EvalOptions {
    pub fn with_kernel(kernel: KernelSpec) -> Self {
        Self {
            kernel,
            ..Self::default()
        }
    }
}

/// Metric picked out of a report, for bootstrap and scenario summaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricId {
    AucA,
    AucB,
    Brier,
    KullbackLeibler,
    AbsErr,
    SensitivityAt(f64),
    SpecificityAt { threshold: f64, definition: Definition },
}

fn censoring_model(sample: &CompetingRiskSample, method: Method) -> Result<CensoringModel, Error> {
    match method {
        Method::IpcwKm => Ok(fit_censoring_km(sample)),
        Method::IpcwCox => Ok(fit_censoring_cox(sample)?),
        Method::Proposed => unreachable!("proposed method has no censoring model"),
    }
}

/// Full accuracy report for one method at one horizon.
pub fn accuracy_report(
    sample: &CompetingRiskSample,
    tau: Horizon,
    method: Method,
    opts: &EvalOptions,
) -> Result<AccuracyReport, Error> {
    match method {
        Method::Proposed => {
            let w = case_weights_with_policy(sample, tau, &opts.kernel, opts.policy)?;
            let scores = sample.scores();
            let auc_a =
                auc_concordance_with_pairing(&w, &scores, Definition::A, opts.pairing)?;
            let auc_b =
                auc_concordance_with_pairing(&w, &scores, Definition::B, opts.pairing)?;
            let brier_v = brier(&w, &scores)?;
            let (kl_v, clipped) = kullback_leibler_with_clips(&w, &scores)?;
            let abs_v = abs_err(&w, &scores)?;
            Ok(AccuracyReport {
                tau: tau.value(),
                auc_a,
                auc_b,
                brier: brier_v,
                kl: kl_v,
                abs_err: abs_v,
                n_undefined_weights: w.n_undefined(),
                n_kl_clipped: clipped,
            })
        }
        Method::IpcwKm | Method::IpcwCox => {
            let model = censoring_model(sample, method)?;
            let weights = ipcw_weights(&model, sample, tau)?;
            Ok(ipcw_metrics(sample, &weights)?)
        }
    }
}

/// ROC curve for one method, horizon, and control definition.
pub fn roc_for_method(
    sample: &CompetingRiskSample,
    tau: Horizon,
    method: Method,
    opts: &EvalOptions,
    definition: Definition,
) -> Result<RocCurve, Error> {
    match method {
        Method::Proposed => {
            let w = case_weights_with_policy(sample, tau, &opts.kernel, opts.policy)?;
            let scores = sample.scores();
            Ok(roc_curve(&w, &scores, definition)?)
        }
        Method::IpcwKm | Method::IpcwCox => {
            let model = censoring_model(sample, method)?;
            let weights = ipcw_weights(&model, sample, tau)?;
            Ok(ipcw_roc_curve(sample, &weights, definition)?)
        }
    }
}

/// One scalar metric for one method; the narrow entry point the bootstrap
/// resamples.
pub fn evaluate_metric(
    sample: &CompetingRiskSample,
    tau: Horizon,
    method: Method,
    opts: &EvalOptions,
    metric: MetricId,
) -> Result<f64, Error> {
    match method {
        Method::Proposed => {
            let w = case_weights_with_policy(sample, tau, &opts.kernel, opts.policy)?;
            let scores = sample.scores();
            let v = match metric {
                MetricId::AucA => {
                    auc_concordance_with_pairing(&w, &scores, Definition::A, opts.pairing)?
                }
                MetricId::AucB => {
                    auc_concordance_with_pairing(&w, &scores, Definition::B, opts.pairing)?
                }
                MetricId::Brier => brier(&w, &scores)?,
                MetricId::KullbackLeibler => kullback_leibler_with_clips(&w, &scores)?.0,
                MetricId::AbsErr => abs_err(&w, &scores)?,
                MetricId::SensitivityAt(c) => sensitivity(&w, &scores, c)?,
                MetricId::SpecificityAt {
                    threshold,
                    definition,
                } => specificity(&w, &scores, threshold, definition)?,
            };
            Ok(v)
        }
        Method::IpcwKm | Method::IpcwCox => {
            let model = censoring_model(sample, method)?;
            let weights = ipcw_weights(&model, sample, tau)?;
            let v = match metric {
                MetricId::SensitivityAt(c) => ipcw_sensitivity(sample, &weights, c)?,
                MetricId::SpecificityAt {
                    threshold,
                    definition,
                } => ipcw_specificity(sample, &weights, threshold, definition)?,
                _ => {
                    let report = ipcw_metrics(sample, &weights)?;
                    match metric {
                        MetricId::AucA => report.auc_a,
                        MetricId::AucB => report.auc_b,
                        MetricId::Brier => report.brier,
                        MetricId::KullbackLeibler => report.kl,
                        MetricId::AbsErr => report.abs_err,
                        _ => unreachable!(),
                    }
                }
            };
            Ok(v)
        }
    }
}
