//! Inverse-probability-of-censoring-weighting comparators.
//!
//! The censoring survival function `G(t) = P(C > t)` is estimated either by
//! the reverse Kaplan-Meier estimator (censoring treated as the event,
//! ignoring the risk score) or by a univariate Cox proportional hazards model
//! on the risk score (Breslow ties and baseline). Uncensored subjects with an
//! event by the horizon are reweighted by `1/G(T-)`, survivors past the
//! horizon by `1/G(tau-)`, and subjects censored before the horizon get
//! weight zero.

use crate::data::{CompetingRiskSample, Definition, Horizon};
use crate::metrics::{weighted_auc, weighted_roc, AccuracyReport, MassItem, MetricsError, RocCurve};
use thiserror::Error;

/// Errors raised while fitting censoring models or evaluating IPCW weights.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IpcwError {
    #[error("censoring Cox fit is singular: {0}")]
    SingularFit(&'static str),
    #[error(
        "censoring Cox fit did not converge within {iterations} iterations (|grad| = {gradient:e})"
    )]
    NonConvergence { iterations: usize, gradient: f64 },
    #[error("censoring survival is numerically zero at the evaluation time for subject {subject}")]
    ZeroCensoringProbability { subject: usize },
}

/// Which censoring model backs the IPCW weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensoringModelKind {
    /// Reverse Kaplan-Meier, ignoring the risk score.
    KaplanMeier,
    /// Cox proportional hazards on the risk score.
    CoxOnScore,
}

/// Fitted censoring-survival model, evaluable at any time (and score).
#[derive(Debug, Clone)]
pub struct CensoringModel {
    kind: CensoringModelKind,
    /// Times where the model steps. For `KaplanMeier` the paired value is
    /// G(t); for `CoxOnScore` it is the Breslow baseline cumulative hazard.
    step_times: Vec<f64>,
    step_values: Vec<f64>,
    coefficient: Option<f64>,
    coefficient_se: Option<f64>,
}

impl CensoringModel {
    pub fn kind(&self) -> CensoringModelKind {
        self.kind
    }

    /// Cox log-hazard-ratio of censoring per unit of score.
    pub fn coefficient(&self) -> Option<f64> {
        self.coefficient
    }

    pub fn coefficient_se(&self) -> Option<f64> {
        self.coefficient_se
    }

    fn step_at(&self, t: f64, strict: bool) -> f64 {
        let idx = if strict {
            self.step_times.partition_point(|&s| s < t)
        } else {
            self.step_times.partition_point(|&s| s <= t)
        };
        if idx == 0 {
            match self.kind {
                CensoringModelKind::KaplanMeier => 1.0,
                CensoringModelKind::CoxOnScore => 0.0,
            }
        } else {
            self.step_values[idx - 1]
        }
    }

    /// G(t) or G(t | score), right-continuous.
    pub fn survival(&self, t: f64, score: f64) -> f64 {
        match self.kind {
            CensoringModelKind::KaplanMeier => self.step_at(t, false),
            CensoringModelKind::CoxOnScore => {
                let cumhaz = self.step_at(t, false);
                (-cumhaz * exp_clamped(self.coefficient.unwrap_or(0.0) * score)).exp()
            }
        }
    }

    /// The left limit G(t-) or G(t- | score).
    pub fn survival_before(&self, t: f64, score: f64) -> f64 {
        match self.kind {
            CensoringModelKind::KaplanMeier => self.step_at(t, true),
            CensoringModelKind::CoxOnScore => {
                let cumhaz = self.step_at(t, true);
                (-cumhaz * exp_clamped(self.coefficient.unwrap_or(0.0) * score)).exp()
            }
        }
    }
}

fn exp_clamped(x: f64) -> f64 {
    x.clamp(-700.0, 700.0).exp()
}

/// Reverse Kaplan-Meier estimate of the censoring survival function.
///
/// Censoring (status 0) is the event; observed events of any cause act as
/// censorings. At tied times the actual events happen first, so subjects with
/// an event at `t` remain in the risk set for censorings at `t`. A sample
/// with no censored subjects yields the degenerate G = 1.
pub fn fit_censoring_km(sample: &CompetingRiskSample) -> CensoringModel {
    let records = sample.records();
    let n = records.len();
    let mut step_times = Vec::new();
    let mut step_values = Vec::new();
    let mut g = 1.0f64;
    let mut i = 0;
    while i < n {
        let t = records[i].time;
        let at_risk = (n - i) as f64;
        let mut censored_here = 0usize;
        let mut j = i;
        while j < n && records[j].time == t {
            if records[j].is_censored() {
                censored_here += 1;
            }
            j += 1;
        }
        if censored_here > 0 {
            g *= 1.0 - censored_here as f64 / at_risk;
            step_times.push(t);
            step_values.push(g);
        }
        i = j;
    }
    CensoringModel {
        kind: CensoringModelKind::KaplanMeier,
        step_times,
        step_values,
        coefficient: None,
        coefficient_se: None,
    }
}

const COX_TOL: f64 = 1e-8;
const COX_MAX_ITER: usize = 50;

/// Cox proportional hazards model for the censoring time on the risk score.
///
/// Newton-Raphson on the Breslow partial likelihood with censoring as the
/// event; the Breslow baseline cumulative hazard completes the model so that
/// `G(t | U) = exp(-Lambda0(t) * exp(theta * U))`.
///
/// A sample with no censored subjects returns the degenerate G = 1 model.
/// One censored subject, or censored subjects with no score variation, make
/// the fit singular.
pub fn fit_censoring_cox(sample: &CompetingRiskSample) -> Result<CensoringModel, IpcwError> {
    let records = sample.records();
    let n = records.len();
    let n_censored = sample.n_censored();
    if n_censored == 0 {
        return Ok(CensoringModel {
            kind: CensoringModelKind::CoxOnScore,
            step_times: Vec::new(),
            step_values: Vec::new(),
            coefficient: Some(0.0),
            coefficient_se: None,
        });
    }
    if n_censored < 2 {
        return Err(IpcwError::SingularFit("fewer than 2 censored subjects"));
    }
    let censored_scores: Vec<f64> = records
        .iter()
        .filter(|r| r.is_censored())
        .map(|r| r.score)
        .collect();
    let first = censored_scores[0];
    if censored_scores.iter().all(|&s| s == first) {
        return Err(IpcwError::SingularFit(
            "no score variation among censored subjects",
        ));
    }

    // Censoring-event groups: (start index of the tied-time group, count of
    // censorings, sum of their scores). The at-risk set at the group's time is
    // the suffix from the group start.
    let mut groups: Vec<(usize, f64, f64)> = Vec::new();
    let mut i = 0;
    while i < n {
        let t = records[i].time;
        let mut d = 0.0;
        let mut sum_u = 0.0;
        let mut j = i;
        while j < n && records[j].time == t {
            if records[j].is_censored() {
                d += 1.0;
                sum_u += records[j].score;
            }
            j += 1;
        }
        if d > 0.0 {
            groups.push((i, d, sum_u));
        }
        i = j;
    }

    // Breslow partial log-likelihood, gradient, and Hessian at theta.
    let loglik_parts = |theta: f64| -> (f64, f64, f64) {
        let mut s0 = vec![0.0f64; n + 1];
        let mut s1 = vec![0.0f64; n + 1];
        let mut s2 = vec![0.0f64; n + 1];
        for idx in (0..n).rev() {
            let u = records[idx].score;
            let e = exp_clamped(theta * u);
            s0[idx] = s0[idx + 1] + e;
            s1[idx] = s1[idx + 1] + u * e;
            s2[idx] = s2[idx + 1] + u * u * e;
        }
        let mut ll = 0.0;
        let mut grad = 0.0;
        let mut hess = 0.0;
        for &(start, d, sum_u) in &groups {
            let denom = s0[start];
            let mean = s1[start] / denom;
            ll += theta * sum_u - d * denom.ln();
            grad += sum_u - d * mean;
            hess -= d * (s2[start] / denom - mean * mean);
        }
        (ll, grad, hess)
    };

    let mut theta = 0.0f64;
    let (mut ll, mut grad, mut hess) = loglik_parts(theta);
    let mut converged = grad.abs() < COX_TOL;
    let mut iterations = 0;
    while !converged && iterations < COX_MAX_ITER {
        iterations += 1;
        if hess >= -1e-300 {
            return Err(IpcwError::SingularFit("non-negative Hessian"));
        }
        let mut step = -grad / hess;
        // Step-halving keeps the likelihood nondecreasing.
        let mut accepted = false;
        for _ in 0..30 {
            let candidate = theta + step;
            let (ll_new, grad_new, hess_new) = loglik_parts(candidate);
            if ll_new.is_finite() && ll_new >= ll - 1e-12 {
                theta = candidate;
                ll = ll_new;
                grad = grad_new;
                hess = hess_new;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            return Err(IpcwError::NonConvergence {
                iterations,
                gradient: grad.abs(),
            });
        }
        // A monotone partial likelihood (separated data) has no finite
        // maximizer; the coefficient runs away instead of converging.
        if theta.abs() > 100.0 {
            return Err(IpcwError::NonConvergence {
                iterations,
                gradient: grad.abs(),
            });
        }
        converged = grad.abs() < COX_TOL;
    }
    if !converged {
        return Err(IpcwError::NonConvergence {
            iterations,
            gradient: grad.abs(),
        });
    }
    let se = if hess < 0.0 {
        Some((-1.0 / hess).sqrt())
    } else {
        None
    };

    // Breslow baseline cumulative hazard at the fitted coefficient.
    let mut s0 = vec![0.0f64; n + 1];
    for idx in (0..n).rev() {
        s0[idx] = s0[idx + 1] + exp_clamped(theta * records[idx].score);
    }
    let mut step_times = Vec::with_capacity(groups.len());
    let mut step_values = Vec::with_capacity(groups.len());
    let mut cumhaz = 0.0;
    for &(start, d, _) in &groups {
        cumhaz += d / s0[start];
        step_times.push(records[start].time);
        step_values.push(cumhaz);
    }

    Ok(CensoringModel {
        kind: CensoringModelKind::CoxOnScore,
        step_times,
        step_values,
        coefficient: Some(theta),
        coefficient_se: se,
    })
}

/// Per-subject IPCW weights at the horizon.
///
/// Subjects with an observed event at `T <= tau` carry `1/G(T-)`; survivors
/// past `tau` carry `1/G(tau-)`; subjects censored before `tau` carry 0.
#[derive(Debug, Clone)]
pub struct IpcwWeights {
    tau: f64,
    values: Vec<f64>,
}

impl IpcwWeights {
    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

const G_FLOOR: f64 = 1e-12;

/// Evaluate the IPCW weights of every subject under a fitted censoring model.
pub fn ipcw_weights(
    model: &CensoringModel,
    sample: &CompetingRiskSample,
    tau: Horizon,
) -> Result<IpcwWeights, IpcwError> {
    let tau_v = tau.value();
    let mut values = Vec::with_capacity(sample.len());
    for (i, r) in sample.records().iter().enumerate() {
        let w = if r.time <= tau_v && !r.is_censored() {
            let g = model.survival_before(r.time, r.score);
            if g < G_FLOOR {
                return Err(IpcwError::ZeroCensoringProbability { subject: i });
            }
            1.0 / g
        } else if r.time > tau_v {
            let g = model.survival_before(tau_v, r.score);
            if g < G_FLOOR {
                return Err(IpcwError::ZeroCensoringProbability { subject: i });
            }
            1.0 / g
        } else {
            0.0
        };
        values.push(w);
    }
    Ok(IpcwWeights { tau: tau_v, values })
}

fn is_case(r: &crate::data::SubjectRecord, k_star: u32, tau: f64) -> bool {
    r.time <= tau && r.status == k_star
}

fn is_competing(r: &crate::data::SubjectRecord, k_star: u32, tau: f64) -> bool {
    r.time <= tau && r.status != 0 && r.status != k_star
}

/// (score, case mass, control mass) items for the IPCW estimators.
pub(crate) fn ipcw_mass_items(
    sample: &CompetingRiskSample,
    weights: &IpcwWeights,
    definition: Definition,
) -> Vec<MassItem> {
    let k_star = sample.cause_of_interest();
    let tau = weights.tau;
    sample
        .records()
        .iter()
        .zip(&weights.values)
        .map(|(r, &w)| {
            let case = if is_case(r, k_star, tau) { w } else { 0.0 };
            let survivor = r.time > tau;
            let ctrl = match definition {
                Definition::A => {
                    if survivor || is_competing(r, k_star, tau) {
                        w
                    } else {
                        0.0
                    }
                }
                Definition::B => {
                    if survivor {
                        w
                    } else {
                        0.0
                    }
                }
            };
            (r.score, case, ctrl)
        })
        .collect()
}

/// IPCW sensitivity at threshold `c`.
pub fn ipcw_sensitivity(
    sample: &CompetingRiskSample,
    weights: &IpcwWeights,
    c: f64,
) -> Result<f64, MetricsError> {
    let items = ipcw_mass_items(sample, weights, Definition::A);
    let num: f64 = items.iter().filter(|it| it.0 > c).map(|it| it.1).sum();
    let den: f64 = items.iter().map(|it| it.1).sum();
    if den <= 0.0 {
        return Err(MetricsError::NoCases);
    }
    Ok(num / den)
}

/// IPCW specificity at threshold `c` under the given control definition.
pub fn ipcw_specificity(
    sample: &CompetingRiskSample,
    weights: &IpcwWeights,
    c: f64,
    definition: Definition,
) -> Result<f64, MetricsError> {
    let items = ipcw_mass_items(sample, weights, definition);
    let num: f64 = items.iter().filter(|it| it.0 <= c).map(|it| it.2).sum();
    let den: f64 = items.iter().map(|it| it.2).sum();
    if den <= 0.0 {
        return Err(MetricsError::NoControls { definition });
    }
    Ok(num / den)
}

/// IPCW ROC curve under the given control definition.
pub fn ipcw_roc_curve(
    sample: &CompetingRiskSample,
    weights: &IpcwWeights,
    definition: Definition,
) -> Result<RocCurve, MetricsError> {
    let items = ipcw_mass_items(sample, weights, definition);
    weighted_roc(&items, definition, weights.tau)
}

/// IPCW concordance AUC under the given control definition.
pub fn ipcw_auc(
    sample: &CompetingRiskSample,
    weights: &IpcwWeights,
    definition: Definition,
) -> Result<f64, MetricsError> {
    let items = ipcw_mass_items(sample, weights, definition);
    weighted_auc(&items)
}

const KL_CLIP: f64 = 1e-12;

/// Full IPCW accuracy report: AUC under both definitions plus the weighted
/// Brier, KL, and absolute-error scores.
pub fn ipcw_metrics(
    sample: &CompetingRiskSample,
    weights: &IpcwWeights,
) -> Result<AccuracyReport, MetricsError> {
    let auc_a = ipcw_auc(sample, weights, Definition::A)?;
    let auc_b = ipcw_auc(sample, weights, Definition::B)?;

    let k_star = sample.cause_of_interest();
    let tau = weights.tau;
    let n = sample.len() as f64;
    let mut brier = 0.0;
    let mut kl = 0.0;
    let mut abs_err = 0.0;
    let mut clipped = 0usize;
    for (i, (r, &w)) in sample.records().iter().zip(&weights.values).enumerate() {
        if w == 0.0 {
            continue;
        }
        let u = r.score;
        if !(0.0..=1.0).contains(&u) {
            return Err(MetricsError::RawMarkerNotAllowed { index: i, value: u });
        }
        let y = if is_case(r, k_star, tau) { 1.0 } else { 0.0 };
        brier += (y - u) * (y - u) * w;
        abs_err += (y - u).abs() * w;
        if u < KL_CLIP || u > 1.0 - KL_CLIP {
            clipped += 1;
        }
        let uc = u.clamp(KL_CLIP, 1.0 - KL_CLIP);
        kl -= (y * uc.ln() + (1.0 - y) * (1.0 - uc).ln()) * w;
    }
    Ok(AccuracyReport {
        tau,
        auc_a,
        auc_b,
        brier: brier / n,
        kl: (kl / n).max(0.0),
        abs_err: abs_err / n,
        n_undefined_weights: 0,
        n_kl_clipped: clipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{validate_sample, SubjectRecord};

    fn rec(time: f64, status: u32, score: f64) -> SubjectRecord {
        SubjectRecord::new(time, status, score)
    }

    #[test]
    fn reverse_km_hand_computation() {
        // (1,1),(2,0),(3,1): G = 1 before 2, 1/2 from 2 on.
        let s = validate_sample(
            vec![rec(1.0, 1, 0.3), rec(2.0, 0, 0.5), rec(3.0, 1, 0.7)],
            2,
            1,
        )
        .unwrap();
        let g = fit_censoring_km(&s);
        assert_eq!(g.survival(1.0, 0.0), 1.0);
        assert_eq!(g.survival(1.9, 0.0), 1.0);
        assert!((g.survival(2.0, 0.0) - 0.5).abs() < 1e-15);
        assert!((g.survival(10.0, 0.0) - 0.5).abs() < 1e-15);
        // Left limit at the censoring time.
        assert_eq!(g.survival_before(2.0, 0.0), 1.0);
    }

    #[test]
    fn reverse_km_without_censoring_is_one() {
        let s = validate_sample(vec![rec(1.0, 1, 0.3), rec(2.0, 2, 0.5)], 2, 1).unwrap();
        let g = fit_censoring_km(&s);
        for t in [0.0, 1.0, 5.0] {
            assert_eq!(g.survival(t, 0.0), 1.0);
        }
    }

    #[test]
    fn reverse_km_ties_keep_events_at_risk() {
        // Censoring tied with an event: the event subject is still at risk
        // for the censoring, so the drop is 1/2, not 1/1.
        let s = validate_sample(vec![rec(2.0, 1, 0.3), rec(2.0, 0, 0.5)], 2, 1).unwrap();
        let g = fit_censoring_km(&s);
        assert!((g.survival(2.0, 0.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ipcw_weights_no_censoring_are_one() {
        let s = validate_sample(
            vec![rec(1.0, 1, 0.3), rec(2.0, 2, 0.5), rec(9.0, 1, 0.7)],
            2,
            1,
        )
        .unwrap();
        let tau = Horizon::new(5.0).unwrap();
        let model = fit_censoring_km(&s);
        let w = ipcw_weights(&model, &s, tau).unwrap();
        assert_eq!(w.values(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn ipcw_weight_is_reciprocal_of_g() {
        // (1,1),(2,0),(3,1): G(2-) = 1, G(2) = 1/2, so the event at 3 gets
        // weight 1 / G(3-) = 2.
        let s = validate_sample(
            vec![rec(1.0, 1, 0.3), rec(2.0, 0, 0.5), rec(3.0, 1, 0.7)],
            2,
            1,
        )
        .unwrap();
        let tau = Horizon::new(5.0).unwrap();
        let model = fit_censoring_km(&s);
        let w = ipcw_weights(&model, &s, tau).unwrap();
        assert_eq!(w.values()[0], 1.0); // event before the censoring
        assert_eq!(w.values()[1], 0.0); // censored before tau
        assert!((w.values()[2] - 2.0).abs() < 1e-15);

        // With a survivor past tau: at-risk at the censoring time is 3, so
        // G drops to 2/3 and the survivor carries 1 / G(tau-) = 1.5.
        let s = validate_sample(
            vec![
                rec(1.0, 1, 0.3),
                rec(2.0, 0, 0.5),
                rec(3.0, 1, 0.7),
                rec(6.0, 2, 0.9),
            ],
            2,
            1,
        )
        .unwrap();
        let w = ipcw_weights(&fit_censoring_km(&s), &s, tau).unwrap();
        assert!((w.values()[2] - 1.5).abs() < 1e-15);
        assert!((w.values()[3] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn cox_fit_degenerate_and_singular_cases() {
        // No censoring: degenerate G = 1.
        let s = validate_sample(vec![rec(1.0, 1, 0.3), rec(2.0, 2, 0.5)], 2, 1).unwrap();
        let m = fit_censoring_cox(&s).unwrap();
        assert_eq!(m.survival(10.0, 0.9), 1.0);

        // Single censored subject.
        let s = validate_sample(
            vec![rec(1.0, 1, 0.3), rec(2.0, 0, 0.5), rec(3.0, 2, 0.7)],
            2,
            1,
        )
        .unwrap();
        assert!(matches!(
            fit_censoring_cox(&s),
            Err(IpcwError::SingularFit(_))
        ));

        // Two censored subjects with identical scores.
        let s = validate_sample(
            vec![
                rec(1.0, 1, 0.3),
                rec(2.0, 0, 0.5),
                rec(3.0, 0, 0.5),
                rec(4.0, 2, 0.7),
            ],
            2,
            1,
        )
        .unwrap();
        assert!(matches!(
            fit_censoring_cox(&s),
            Err(IpcwError::SingularFit(_))
        ));
    }

    #[test]
    fn cox_fit_maximizes_partial_likelihood() {
        // Independent check: the fitted coefficient is a local maximum of a
        // brute-force evaluation of the Breslow partial likelihood. Censored
        // scores are interleaved with the rest to keep the maximizer finite.
        let records = vec![
            rec(0.5, 1, 0.2),
            rec(1.0, 0, 0.8),
            rec(1.5, 2, 0.9),
            rec(2.0, 0, 0.3),
            rec(2.5, 1, 0.7),
            rec(3.0, 0, 0.6),
            rec(3.5, 0, 0.1),
            rec(4.0, 1, 0.5),
        ];
        let s = validate_sample(records.clone(), 2, 1).unwrap();
        let m = fit_censoring_cox(&s).unwrap();
        let theta = m.coefficient().unwrap();

        let brute_ll = |th: f64| -> f64 {
            let mut ll = 0.0;
            for r in s.records() {
                if !r.is_censored() {
                    continue;
                }
                let denom: f64 = s
                    .records()
                    .iter()
                    .filter(|x| x.time >= r.time)
                    .map(|x| (th * x.score).exp())
                    .sum();
                ll += th * r.score - denom.ln();
            }
            ll
        };
        let at = brute_ll(theta);
        assert!(at >= brute_ll(theta + 0.01));
        assert!(at >= brute_ll(theta - 0.01));
        assert!(m.coefficient_se().unwrap() > 0.0);
    }

    #[test]
    fn cox_survival_is_monotone_and_proper() {
        let records = vec![
            rec(0.5, 1, 0.9),
            rec(1.0, 0, 0.3),
            rec(1.5, 2, 0.6),
            rec(2.0, 0, 0.7),
            rec(2.5, 1, 0.4),
            rec(3.0, 0, 0.2),
            rec(3.5, 1, 0.8),
        ];
        let s = validate_sample(records, 2, 1).unwrap();
        let m = fit_censoring_cox(&s).unwrap();
        for score in [0.1, 0.5, 0.9] {
            assert_eq!(m.survival_before(0.0, score), 1.0);
            let mut prev = 1.0;
            for t in [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0] {
                let g = m.survival(t, score);
                assert!(g <= prev + 1e-15);
                assert!((0.0..=1.0).contains(&g));
                prev = g;
            }
        }
    }

    #[test]
    fn ipcw_metrics_on_uncensored_match_empirical() {
        // Without censoring all weights are 1, so the IPCW report equals the
        // plain empirical quantities.
        let s = validate_sample(
            vec![
                rec(1.0, 1, 0.9),
                rec(2.0, 2, 0.6),
                rec(7.0, 1, 0.4),
                rec(8.0, 2, 0.2),
            ],
            2,
            1,
        )
        .unwrap();
        let tau = Horizon::new(5.0).unwrap();
        let model = fit_censoring_km(&s);
        let w = ipcw_weights(&model, &s, tau).unwrap();
        let report = ipcw_metrics(&s, &w).unwrap();
        // One case (0.9), controls under A: 0.6 (competing), 0.4, 0.2.
        assert!((report.auc_a - 1.0).abs() < 1e-15);
        assert!((report.auc_b - 1.0).abs() < 1e-15);
        let expected_brier =
            ((1.0f64 - 0.9).powi(2) + 0.6f64.powi(2) + 0.4f64.powi(2) + 0.2f64.powi(2)) / 4.0;
        assert!((report.brier - expected_brier).abs() < 1e-15);
        let expected_abs = (0.1 + 0.6 + 0.4 + 0.2) / 4.0;
        assert!((report.abs_err - expected_abs).abs() < 1e-15);
    }
}
