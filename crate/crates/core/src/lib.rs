//! Time-dependent predictive accuracy for right-censored competing-risks data.
//!
//! Given a validation sample of observed times, status codes, and scalar risk
//! scores, this crate estimates discrimination (time-dependent sensitivity,
//! specificity, ROC, AUC under two control definitions) and calibration
//! (Brier, Kullback-Leibler, absolute prediction error) at a prediction
//! horizon. Censored subjects are handled by weighting each subject with its
//! conditional probability of being a case, estimated by kernel-weighted
//! Kaplan-Meier / Aalen-Johansen curves on the risk-score axis. IPCW
//! comparators (Kaplan-Meier and Cox censoring models), bootstrap confidence
//! intervals, and a Fine-Gray simulation harness round out the toolkit.

pub mod bootstrap;
pub mod data;
mod error;
pub mod ipcw;
pub mod kernel;
pub mod metrics;
pub mod pipeline;
pub mod sim;
pub mod util;

pub use bootstrap::{bootstrap_ci, BootstrapError, BootstrapResult};
pub use data::{
    validate_sample, CompetingRiskSample, DataError, Definition, Horizon, Kernel, KernelSpec,
    SubjectRecord,
};
pub use error::Error;
pub use ipcw::{
    fit_censoring_cox, fit_censoring_km, ipcw_auc, ipcw_metrics, ipcw_roc_curve,
    ipcw_sensitivity, ipcw_specificity, ipcw_weights, CensoringModel, CensoringModelKind,
    IpcwError, IpcwWeights,
};
pub use kernel::{
    case_weights, case_weights_with_policy, conditional_cif, conditional_curves,
    conditional_survival, kernel_weights, CaseWeightMatrix, ConditionalCurves, KernelError,
    UndefinedWeightPolicy,
};
pub use metrics::{
    abs_err, auc_concordance, auc_concordance_with_pairing, brier, kullback_leibler,
    kullback_leibler_with_clips, roc_curve, sensitivity, specificity, AccuracyReport, AucPairing,
    MetricsError, RocCurve, RocPoint,
};
pub use pipeline::{
    accuracy_report, evaluate_metric, roc_for_method, EvalOptions, Method, MetricId,
};
pub use sim::{
    calibrate_censoring, generate_dataset, generate_dataset_with_rng, run_scenario, select_tau,
    true_values, CensoringConfig, CensoringLevel, CensoringMechanism, FineGrayConfig,
    LatentSubject, MethodSummary, MetricSummary, ScenarioConfig, ScenarioResult, SimError,
    TauRule, TrueValues,
};
