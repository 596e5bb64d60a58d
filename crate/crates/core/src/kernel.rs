//! Kernel-weighted conditional survival, conditional cause-specific cumulative
//! incidence, and the per-subject case-probability weights built from them.
//!
//! For an anchor subject `i` the neighborhood is defined on the risk-score
//! axis: either the `ceil(n * span)` nearest subjects in score rank (uniform
//! kernel, invariant to monotone transformations of the score) or a metric
//! kernel with fixed bandwidth. A weighted product-limit estimator over the
//! pooled event grid gives the conditional overall survival, and the matching
//! weighted Aalen-Johansen sum gives each cause's conditional CIF.
//!
//! The case weight of subject `i` for cause `k` at horizon `tau` is the
//! conditional probability of being a cause-`k` case by `tau` given the
//! subject's observed data: 1 for observed cause-`k` events before `tau`,
//! 0 for survivors past `tau` and for other observed events, and the ratio
//! `(F_k(tau|U_i) - F_k(T_i|U_i)) / S(T_i|U_i)` for subjects censored before
//! `tau`.

use crate::data::{CompetingRiskSample, Horizon, KernelMode, KernelSpec};
use thiserror::Error;

/// Errors raised by the kernel-weighted estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error(
        "span neighborhood around subject {anchor} selects only {selected} subject(s); \
         widen the span"
    )]
    DegenerateNeighborhood { anchor: usize, selected: usize },
    #[error(
        "conditional survival at the censoring time is numerically zero for {} subject(s) \
         (first index {}); widen the span or shorten the horizon",
        .subjects.len(),
        .subjects.first().copied().unwrap_or(0)
    )]
    UndefinedWeight { subjects: Vec<usize> },
    #[error("weight row {subject} is not a sub-probability vector over causes")]
    InvalidWeightRow { subject: usize },
}

/// How to treat subjects whose censored-case probability is unidentified
/// (conditional survival at their censoring time is numerically zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndefinedWeightPolicy {
    /// Fail with [`KernelError::UndefinedWeight`] listing the subjects.
    Error,
    /// Drop the affected subjects from every weighted sum and report how many
    /// were dropped.
    Exclude,
}

/// Conditional survival and CIF step functions for one anchor subject,
/// evaluated on the pooled grid of distinct uncensored times.
#[derive(Debug, Clone)]
pub struct ConditionalCurves {
    anchor: usize,
    grid: Vec<f64>,
    survival: Vec<f64>,
    cifs: Vec<Vec<f64>>,
}

impl ConditionalCurves {
    pub fn anchor(&self) -> usize {
        self.anchor
    }

    /// Ascending distinct uncensored times.
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Survival values at the grid points (right-continuous).
    pub fn survival_values(&self) -> &[f64] {
        &self.survival
    }

    /// CIF values for `cause` (1-based) at the grid points.
    pub fn cif_values(&self, cause: u32) -> &[f64] {
        &self.cifs[(cause - 1) as usize]
    }

    pub fn n_causes(&self) -> u32 {
        self.cifs.len() as u32
    }

    fn step_at(grid: &[f64], values: &[f64], t: f64, init: f64) -> f64 {
        let idx = grid.partition_point(|&g| g <= t);
        if idx == 0 {
            init
        } else {
            values[idx - 1]
        }
    }

    /// S(t | U_anchor), right-continuous.
    pub fn survival_at(&self, t: f64) -> f64 {
        Self::step_at(&self.grid, &self.survival, t, 1.0)
    }

    /// F_k(t | U_anchor), right-continuous.
    pub fn cif_at(&self, cause: u32, t: f64) -> f64 {
        Self::step_at(&self.grid, self.cif_values(cause), t, 0.0)
    }

    /// S(t- | U_anchor), the left limit.
    pub fn survival_before(&self, t: f64) -> f64 {
        let idx = self.grid.partition_point(|&g| g < t);
        if idx == 0 {
            1.0
        } else {
            self.survival[idx - 1]
        }
    }
}

/// Per-subject, per-cause case probabilities at the horizon.
///
/// Entry `(i, k)` estimates `P(T_i <= tau, cause = k | observed data of i)`.
/// Rows of subjects whose status at `tau` is observed are exact 0/1
/// indicators; censored-before-`tau` rows are conditional probabilities and
/// sum to at most 1.
#[derive(Debug, Clone)]
pub struct CaseWeightMatrix {
    tau: f64,
    n_causes: u32,
    cause_of_interest: u32,
    weights: Vec<f64>,
    included: Vec<bool>,
    n_undefined: usize,
    max_pre_clamp_excess: f64,
}

impl CaseWeightMatrix {
    pub fn n(&self) -> usize {
        self.included.len()
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn n_causes(&self) -> u32 {
        self.n_causes
    }

    pub fn cause_of_interest(&self) -> u32 {
        self.cause_of_interest
    }

    /// W_ki for subject `i` and `cause` (1-based).
    pub fn weight(&self, i: usize, cause: u32) -> f64 {
        self.weights[i * self.n_causes as usize + (cause - 1) as usize]
    }

    /// W for the cause of interest.
    pub fn case_weight(&self, i: usize) -> f64 {
        self.weight(i, self.cause_of_interest)
    }

    /// Sum over causes of W_ki.
    pub fn row_sum(&self, i: usize) -> f64 {
        let k = self.n_causes as usize;
        self.weights[i * k..(i + 1) * k].iter().sum()
    }

    /// False for subjects dropped under [`UndefinedWeightPolicy::Exclude`].
    pub fn is_included(&self, i: usize) -> bool {
        self.included[i]
    }

    /// Number of subjects whose censored-case probability was unidentified.
    pub fn n_undefined(&self) -> usize {
        self.n_undefined
    }

    /// Largest amount by which any raw ratio fell outside [0, 1] or any row
    /// sum exceeded 1 before clamping. Diagnostic; analytically this is
    /// floating-point dust.
    pub fn max_pre_clamp_excess(&self) -> f64 {
        self.max_pre_clamp_excess
    }

    /// Build a matrix from explicit rows, `rows[i][k-1] = W_ki`.
    ///
    /// Useful when case probabilities come from an external model. Every row
    /// must be a sub-probability vector: entries in [0, 1] summing to at most
    /// 1 (a small tolerance absorbs floating-point dust).
    pub fn from_rows(
        tau: f64,
        cause_of_interest: u32,
        rows: &[Vec<f64>],
    ) -> Result<Self, KernelError> {
        let k = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut weights = Vec::with_capacity(rows.len() * k);
        for (subject, row) in rows.iter().enumerate() {
            let bad = row.len() != k
                || row.len() < cause_of_interest as usize
                || row.iter().any(|w| !(0.0..=1.0).contains(w))
                || row.iter().sum::<f64>() > 1.0 + 1e-9;
            if bad {
                return Err(KernelError::InvalidWeightRow { subject });
            }
            weights.extend_from_slice(row);
        }
        Ok(Self {
            tau,
            n_causes: k as u32,
            cause_of_interest,
            weights,
            included: vec![true; rows.len()],
            n_undefined: 0,
            max_pre_clamp_excess: 0.0,
        })
    }
}

/// Score positions 0..n-1 after a stable sort by (score, index). Rank
/// distances computed from these positions depend only on the score ordering,
/// which makes span-mode output invariant to monotone score transformations.
pub(crate) fn score_positions(sample: &CompetingRiskSample) -> Vec<usize> {
    let records = sample.records();
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| records[a].score.total_cmp(&records[b].score).then(a.cmp(&b)));
    let mut pos = vec![0usize; records.len()];
    for (rank, &idx) in order.iter().enumerate() {
        pos[idx] = rank;
    }
    pos
}

fn span_weights(
    positions: &[usize],
    anchor: usize,
    fraction: f64,
) -> Result<Vec<f64>, KernelError> {
    let n = positions.len();
    let target = ((n as f64) * fraction).ceil() as usize;
    let target = target.clamp(1, n);
    let pa = positions[anchor];

    // Count how many subjects sit at each rank distance from the anchor:
    // one at distance 0, up to two at each d >= 1 (one on each side).
    let mut cum = 1usize; // distance 0: the anchor itself
    let mut d = 0usize;
    while cum < target {
        d += 1;
        if pa >= d {
            cum += 1;
        }
        if pa + d < n {
            cum += 1;
        }
    }
    let selected = cum;
    if selected < 2 {
        return Err(KernelError::DegenerateNeighborhood { anchor, selected });
    }
    let weights = positions
        .iter()
        .map(|&p| {
            if p.abs_diff(pa) <= d {
                1.0
            } else {
                0.0
            }
        })
        .collect();
    Ok(weights)
}

fn bandwidth_weights(sample: &CompetingRiskSample, anchor: usize, h: f64, kernel: crate::data::Kernel) -> Vec<f64> {
    let records = sample.records();
    let u0 = records[anchor].score;
    records
        .iter()
        .map(|r| kernel.eval((r.score - u0) / h) / h)
        .collect()
}

/// Kernel weights of every subject relative to the `anchor` subject.
///
/// Span mode returns 0/1 indicator weights over the nearest-rank
/// neighborhood (ties in rank distance are all included, so the neighborhood
/// may slightly exceed `ceil(n * span)`). Bandwidth mode returns
/// `K((U_j - U_anchor)/h) / h`.
pub fn kernel_weights(
    sample: &CompetingRiskSample,
    anchor: usize,
    spec: &KernelSpec,
) -> Result<Vec<f64>, KernelError> {
    match spec.mode {
        KernelMode::Span(fraction) => {
            let positions = score_positions(sample);
            span_weights(&positions, anchor, fraction)
        }
        KernelMode::Bandwidth { h, kernel } => Ok(bandwidth_weights(sample, anchor, h, kernel)),
    }
}

/// Weighted product-limit / Aalen-Johansen sweep over the pooled event grid.
///
/// A grid point with zero weighted risk mass contributes no hazard: the curve
/// freezes there instead of dividing by zero.
pub(crate) fn curves_from_weights(
    sample: &CompetingRiskSample,
    weights: &[f64],
    anchor: usize,
) -> ConditionalCurves {
    let records = sample.records();
    let n = records.len();
    let k = sample.n_causes() as usize;

    // Records are sorted by time, so the at-risk mass at the time of
    // records[i] is the suffix weight sum from i.
    let mut suffix = vec![0.0f64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + weights[i];
    }

    let mut grid = Vec::new();
    let mut survival = Vec::new();
    let mut cifs: Vec<Vec<f64>> = vec![Vec::new(); k];

    let mut surv = 1.0f64;
    let mut cif_now = vec![0.0f64; k];
    let mut event_mass = vec![0.0f64; k];

    let mut i = 0;
    while i < n {
        let t = records[i].time;
        let risk = suffix[i];
        let mut any_event = false;
        event_mass.iter_mut().for_each(|m| *m = 0.0);
        let mut j = i;
        while j < n && records[j].time == t {
            let s = records[j].status;
            if s != 0 {
                any_event = true;
                event_mass[(s - 1) as usize] += weights[j];
            }
            j += 1;
        }
        if any_event {
            if risk > 0.0 {
                let total: f64 = event_mass.iter().sum();
                let prev_surv = surv;
                for (c, mass) in event_mass.iter().enumerate() {
                    cif_now[c] += prev_surv * mass / risk;
                }
                surv *= (1.0 - total / risk).max(0.0);
            }
            grid.push(t);
            survival.push(surv);
            for c in 0..k {
                cifs[c].push(cif_now[c]);
            }
        }
        i = j;
    }

    ConditionalCurves {
        anchor,
        grid,
        survival,
        cifs,
    }
}

/// Conditional survival and CIFs around one anchor subject.
pub fn conditional_curves(
    sample: &CompetingRiskSample,
    anchor: usize,
    spec: &KernelSpec,
) -> Result<ConditionalCurves, KernelError> {
    let weights = kernel_weights(sample, anchor, spec)?;
    Ok(curves_from_weights(sample, &weights, anchor))
}

/// The kernel-weighted Kaplan-Meier estimate S(. | U_anchor), as
/// `(grid, values)` step-function data.
pub fn conditional_survival(
    sample: &CompetingRiskSample,
    anchor: usize,
    spec: &KernelSpec,
) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    let curves = conditional_curves(sample, anchor, spec)?;
    Ok((curves.grid.clone(), curves.survival))
}

/// The kernel-weighted CIF estimate F_k(. | U_anchor) for `cause` (1-based).
pub fn conditional_cif(
    sample: &CompetingRiskSample,
    anchor: usize,
    cause: u32,
    spec: &KernelSpec,
) -> Result<(Vec<f64>, Vec<f64>), KernelError> {
    let curves = conditional_curves(sample, anchor, spec)?;
    let values = curves.cif_values(cause).to_vec();
    Ok((curves.grid, values))
}

const SURVIVAL_FLOOR: f64 = 1e-12;

/// Per-subject, per-cause case probabilities at horizon `tau`.
pub fn case_weights(
    sample: &CompetingRiskSample,
    tau: Horizon,
    spec: &KernelSpec,
) -> Result<CaseWeightMatrix, KernelError> {
    case_weights_with_policy(sample, tau, spec, UndefinedWeightPolicy::Error)
}

/// [`case_weights`] with an explicit policy for unidentified censored rows.
pub fn case_weights_with_policy(
    sample: &CompetingRiskSample,
    tau: Horizon,
    spec: &KernelSpec,
    policy: UndefinedWeightPolicy,
) -> Result<CaseWeightMatrix, KernelError> {
    case_weights_impl(sample, tau, spec, policy, SURVIVAL_FLOOR)
}

fn case_weights_impl(
    sample: &CompetingRiskSample,
    tau: Horizon,
    spec: &KernelSpec,
    policy: UndefinedWeightPolicy,
    survival_floor: f64,
) -> Result<CaseWeightMatrix, KernelError> {
    let records = sample.records();
    let n = records.len();
    let k = sample.n_causes() as usize;
    let tau_v = tau.value();

    let mut weights = vec![0.0f64; n * k];
    let mut included = vec![true; n];
    let mut undefined: Vec<usize> = Vec::new();
    let mut max_excess = 0.0f64;

    // Positions are shared by every span-mode anchor.
    let positions = if spec.is_span() {
        Some(score_positions(sample))
    } else {
        None
    };

    for i in 0..n {
        let r = &records[i];
        if r.time > tau_v {
            continue; // all zeros: no event of any cause by tau
        }
        if r.status != 0 {
            weights[i * k + (r.status - 1) as usize] = 1.0;
            continue;
        }
        // Censored at or before tau: impute from the conditional curves.
        let w = match (&spec.mode, &positions) {
            (KernelMode::Span(fraction), Some(pos)) => span_weights(pos, i, *fraction)?,
            (KernelMode::Bandwidth { h, kernel }, _) => bandwidth_weights(sample, i, *h, *kernel),
            _ => unreachable!(),
        };
        let curves = curves_from_weights(sample, &w, i);
        let s_at_censoring = curves.survival_at(r.time);
        if s_at_censoring < survival_floor {
            undefined.push(i);
            included[i] = false;
            continue;
        }
        let mut row_sum = 0.0;
        for cause in 1..=k as u32 {
            let raw =
                (curves.cif_at(cause, tau_v) - curves.cif_at(cause, r.time)) / s_at_censoring;
            max_excess = max_excess.max(-raw).max(raw - 1.0);
            let clamped = raw.clamp(0.0, 1.0);
            weights[i * k + (cause - 1) as usize] = clamped;
            row_sum += clamped;
        }
        if row_sum > 1.0 {
            max_excess = max_excess.max(row_sum - 1.0);
            let scale = 1.0 / row_sum;
            for c in 0..k {
                weights[i * k + c] *= scale;
            }
        }
    }

    if !undefined.is_empty() && policy == UndefinedWeightPolicy::Error {
        return Err(KernelError::UndefinedWeight {
            subjects: undefined,
        });
    }

    Ok(CaseWeightMatrix {
        tau: tau_v,
        n_causes: sample.n_causes(),
        cause_of_interest: sample.cause_of_interest(),
        weights,
        included,
        n_undefined: undefined.len(),
        max_pre_clamp_excess: max_excess,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{validate_sample, Kernel, SubjectRecord};

    fn rec(time: f64, status: u32, score: f64) -> SubjectRecord {
        SubjectRecord::new(time, status, score)
    }

    fn sample(records: Vec<SubjectRecord>) -> CompetingRiskSample {
        validate_sample(records, 2, 1).unwrap()
    }

    #[test]
    fn span_window_selects_nearest_ranks() {
        // n = 10 distinct scores; anchor in the middle, span 0.5 -> exactly 5.
        let records: Vec<_> = (0..10)
            .map(|i| rec(1.0 + i as f64, if i == 0 { 1 } else { 0 }, i as f64 / 10.0))
            .collect();
        let s = sample(records);
        let spec = KernelSpec::span(0.5).unwrap();
        // Anchor with score 0.5 sits at rank 5.
        let anchor = s.records().iter().position(|r| r.score == 0.5).unwrap();
        let w = kernel_weights(&s, anchor, &spec).unwrap();
        let selected: Vec<usize> = (0..10).filter(|&j| w[j] > 0.0).collect();
        assert_eq!(selected.len(), 5);
        let pos = score_positions(&s);
        for &j in &selected {
            assert!(pos[j].abs_diff(pos[anchor]) <= 2);
        }
    }

    #[test]
    fn span_one_weights_everyone() {
        let records: Vec<_> = (0..7).map(|i| rec(i as f64, 1 + (i % 2) as u32, i as f64)).collect();
        let s = sample(records);
        let w = kernel_weights(&s, 3, &KernelSpec::span(1.0).unwrap()).unwrap();
        assert!(w.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn constant_scores_gaussian_equals_span_one() {
        let records: Vec<_> = (0..6)
            .map(|i| rec(1.0 + i as f64, if i < 3 { 1 } else { 2 }, 0.4))
            .collect();
        let s = sample(records);
        let bw = conditional_curves(&s, 2, &KernelSpec::bandwidth(0.7, Kernel::Gaussian).unwrap())
            .unwrap();
        let full = conditional_curves(&s, 2, &KernelSpec::span(1.0).unwrap()).unwrap();
        assert_eq!(bw.grid(), full.grid());
        for (a, b) in bw.survival_values().iter().zip(full.survival_values()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn degenerate_neighborhood_errors() {
        let records = vec![rec(1.0, 1, 0.2), rec(2.0, 2, 0.8)];
        let s = sample(records);
        // ceil(2 * 0.01) = 1 subject: too few.
        let err = kernel_weights(&s, 0, &KernelSpec::span(0.01).unwrap()).unwrap_err();
        assert!(matches!(err, KernelError::DegenerateNeighborhood { selected: 1, .. }));
    }

    #[test]
    fn km_three_point_hand_computation() {
        // (1,1),(2,0),(3,2) with uniform weights: S(1)=2/3, S(2)=2/3, S(3)=0.
        let s = sample(vec![rec(1.0, 1, 0.9), rec(2.0, 0, 0.5), rec(3.0, 2, 0.1)]);
        let curves = conditional_curves(&s, 0, &KernelSpec::span(1.0).unwrap()).unwrap();
        assert_eq!(curves.grid(), &[1.0, 3.0]);
        assert!((curves.survival_at(1.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((curves.survival_at(2.0) - 2.0 / 3.0).abs() < 1e-15);
        assert!((curves.survival_at(3.0) - 0.0).abs() < 1e-15);
        assert!((curves.survival_before(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn aalen_johansen_three_point_hand_computation() {
        // (1,1),(2,2),(3,0): F1(3)=1/3, F2(3)=(2/3)*(1/2)=1/3.
        let s = sample(vec![rec(1.0, 1, 0.9), rec(2.0, 2, 0.5), rec(3.0, 0, 0.1)]);
        let curves = conditional_curves(&s, 0, &KernelSpec::span(1.0).unwrap()).unwrap();
        assert!((curves.cif_at(1, 3.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((curves.cif_at(2, 3.0) - 1.0 / 3.0).abs() < 1e-15);
        // Identity at grid points.
        for (i, &t) in curves.grid().iter().enumerate() {
            let total = curves.survival_values()[i]
                + curves.cif_at(1, t)
                + curves.cif_at(2, t);
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn all_censored_neighborhood_freezes_survival() {
        // Neighborhood weights hit only censored subjects: S stays 1 on the grid.
        let s = validate_sample(
            vec![
                rec(1.0, 0, 0.10),
                rec(2.0, 0, 0.12),
                rec(3.0, 0, 0.14),
                rec(9.0, 1, 0.90),
                rec(9.5, 2, 0.95),
            ],
            2,
            1,
        )
        .unwrap();
        let spec = KernelSpec::bandwidth(0.05, Kernel::Uniform).unwrap();
        let curves = conditional_curves(&s, 0, &spec).unwrap();
        for &v in curves.survival_values() {
            assert_eq!(v, 1.0);
        }
        assert_eq!(curves.cif_at(1, 10.0), 0.0);
    }

    #[test]
    fn case_weights_observed_rows_are_indicators() {
        let s = sample(vec![
            rec(2.0, 1, 0.9),
            rec(3.0, 2, 0.7),
            rec(6.0, 0, 0.5),
            rec(1.0, 1, 0.3),
        ]);
        let tau = Horizon::new(5.0).unwrap();
        let w = case_weights(&s, tau, &KernelSpec::span(1.0).unwrap()).unwrap();
        for i in 0..s.len() {
            let r = &s.records()[i];
            if r.time > 5.0 {
                assert_eq!(w.row_sum(i), 0.0);
            } else {
                assert_eq!(w.weight(i, r.status), 1.0);
                assert_eq!(w.row_sum(i), 1.0);
            }
        }
        assert_eq!(w.n_undefined(), 0);
    }

    #[test]
    fn censored_row_matches_curve_ratio() {
        // Subject censored at t=2; with span 1.0 the curves are the pooled
        // KM/AJ, so the weight is a direct ratio of those values.
        let s = sample(vec![
            rec(1.0, 1, 0.2),
            rec(2.0, 0, 0.5),
            rec(3.0, 1, 0.4),
            rec(4.0, 2, 0.6),
            rec(5.0, 0, 0.8),
        ]);
        let tau = Horizon::new(4.5).unwrap();
        let spec = KernelSpec::span(1.0).unwrap();
        let w = case_weights(&s, tau, &spec).unwrap();
        let censored_idx = 1;
        assert_eq!(s.records()[censored_idx].status, 0);
        let curves = conditional_curves(&s, censored_idx, &spec).unwrap();
        let expect_1 = (curves.cif_at(1, 4.5) - curves.cif_at(1, 2.0)) / curves.survival_at(2.0);
        let expect_2 = (curves.cif_at(2, 4.5) - curves.cif_at(2, 2.0)) / curves.survival_at(2.0);
        assert!((w.weight(censored_idx, 1) - expect_1).abs() < 1e-15);
        assert!((w.weight(censored_idx, 2) - expect_2).abs() < 1e-15);
        assert!(w.row_sum(censored_idx) <= 1.0 + 1e-12);
    }

    #[test]
    fn undefined_weight_error_and_exclude_policy() {
        // The anchor keeps its own risk set alive, so the conditional survival
        // at a censoring time is bounded below by roughly 1/n and the 1e-12
        // floor cannot fire at test sizes. Raise the floor to exercise the
        // error and exclusion plumbing.
        let s = sample(vec![
            rec(1.0, 1, 0.2),
            rec(2.0, 1, 0.4),
            rec(3.0, 1, 0.6),
            rec(4.0, 0, 0.8),
        ]);
        let tau = Horizon::new(5.0).unwrap();
        let spec = KernelSpec::span(1.0).unwrap();
        // Pooled KM at t=4 is 1/4; a floor of 0.5 marks the subject undefined.
        let err = case_weights_impl(&s, tau, &spec, UndefinedWeightPolicy::Error, 0.5)
            .unwrap_err();
        assert_eq!(
            err,
            KernelError::UndefinedWeight {
                subjects: vec![3]
            }
        );
        let w = case_weights_impl(&s, tau, &spec, UndefinedWeightPolicy::Exclude, 0.5).unwrap();
        assert_eq!(w.n_undefined(), 1);
        assert!(!w.is_included(3));
        assert_eq!(w.row_sum(3), 0.0);
        // At the real floor the same sample is fully identified: no cause-1
        // mass remains between t=4 and tau, so the weight is exactly zero.
        let w = case_weights(&s, tau, &spec).unwrap();
        assert_eq!(w.n_undefined(), 0);
        assert_eq!(w.weight(3, 1), 0.0);
    }
}
