//! Time-dependent sensitivity, specificity, ROC curves, AUC, and the weighted
//! calibration scores (Brier, Kullback-Leibler, absolute prediction error).
//!
//! Every metric is a weighted empirical quantity: each subject contributes
//! case mass and control mass at the horizon, taken from a
//! [`CaseWeightMatrix`]. Two control definitions are supported:
//!
//! * Definition A: controls are subjects free of the cause of interest at the
//!   horizon, including those who had a competing event (control mass
//!   `1 - W_k*`).
//! * Definition B: controls are event-free subjects only (control mass
//!   `1 - sum_k W_k`).

use crate::data::Definition;
use crate::kernel::CaseWeightMatrix;
use serde::Serialize;
use thiserror::Error;

/// Errors raised by the weighted accuracy metrics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("total case mass is zero: no subjects with the event of interest by the horizon")]
    NoCases,
    #[error("total control mass is zero under definition {definition}")]
    NoControls { definition: Definition },
    #[error("no case-control pairs: case or control mass is zero")]
    NoPairs,
    #[error("calibration metrics require risk scores in [0, 1]; found {value} at subject {index}")]
    RawMarkerNotAllowed { index: usize, value: f64 },
    #[error("scores length {scores} does not match weight matrix size {weights}")]
    LengthMismatch { scores: usize, weights: usize },
}

/// One ROC point: the operating characteristics at threshold `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RocPoint {
    pub threshold: f64,
    pub sensitivity: f64,
    pub specificity: f64,
}

/// A time-dependent ROC curve with its trapezoidal AUC.
///
/// Points are ordered by decreasing threshold, starting at `+inf` (Se 0,
/// Sp 1) and ending at `-inf` (Se 1, Sp 0), with one point per distinct
/// observed score in between. Sensitivity is nondecreasing and specificity
/// nonincreasing along the curve.
#[derive(Debug, Clone, Serialize)]
pub struct RocCurve {
    pub definition: Definition,
    pub tau: f64,
    pub points: Vec<RocPoint>,
    pub auc_trapezoid: f64,
}

/// Which masses enter each pair of the concordance AUC.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AucPairing {
    /// Case mass from subject `i`, control mass from subject `j`. This is the
    /// pairing implied by the concordance definition of the AUC.
    CaseControl,
    /// Both factors from subject `i` (the product `W_i * (1 - W_i)` weights
    /// the pair regardless of `j`). Provided for comparison; not recommended.
    SelfWeighted,
}

/// Per-metric summary of one sample at one horizon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AccuracyReport {
    pub tau: f64,
    pub auc_a: f64,
    pub auc_b: f64,
    pub brier: f64,
    pub kl: f64,
    pub abs_err: f64,
    /// Subjects whose censored-case probability was unidentified and were
    /// dropped from every weighted sum.
    pub n_undefined_weights: usize,
    /// Scores clipped away from {0, 1} before taking logs in the KL score.
    pub n_kl_clipped: usize,
}

// ---------------------------------------------------------------------------
// Mass-vector internals shared by the proposed and IPCW estimators.
// ---------------------------------------------------------------------------

/// (score, case mass, control mass) per subject, excluded subjects dropped.
pub(crate) type MassItem = (f64, f64, f64);

/// Distinct scores ascending with aggregated case/control mass per score.
struct GroupedMasses {
    scores: Vec<f64>,
    case: Vec<f64>,
    ctrl: Vec<f64>,
    total_case: f64,
    total_ctrl: f64,
}

fn group_by_score(items: &[MassItem]) -> GroupedMasses {
    let mut sorted: Vec<MassItem> = items.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut scores = Vec::new();
    let mut case = Vec::new();
    let mut ctrl = Vec::new();
    let mut total_case = 0.0;
    let mut total_ctrl = 0.0;
    for &(s, a, b) in &sorted {
        if scores.last().is_some_and(|&last: &f64| last == s) {
            *case.last_mut().unwrap() += a;
            *ctrl.last_mut().unwrap() += b;
        } else {
            scores.push(s);
            case.push(a);
            ctrl.push(b);
        }
        total_case += a;
        total_ctrl += b;
    }
    GroupedMasses {
        scores,
        case,
        ctrl,
        total_case,
        total_ctrl,
    }
}

/// Weighted Mann-Whitney statistic over all ordered (i, j) pairs:
/// `sum_ij a_i * b_j * [1(U_i > U_j) + 0.5 * 1(U_i = U_j)] / (sum_i a_i * sum_j b_j)`.
pub(crate) fn weighted_auc(items: &[MassItem]) -> Result<f64, MetricsError> {
    let g = group_by_score(items);
    let denom = g.total_case * g.total_ctrl;
    if denom <= 0.0 {
        return Err(MetricsError::NoPairs);
    }
    let mut ctrl_below = 0.0;
    let mut num = 0.0;
    for i in 0..g.scores.len() {
        num += g.case[i] * (ctrl_below + 0.5 * g.ctrl[i]);
        ctrl_below += g.ctrl[i];
    }
    Ok(num / denom)
}

/// ROC curve over the distinct-score threshold grid plus infinite sentinels.
pub(crate) fn weighted_roc(
    items: &[MassItem],
    definition: Definition,
    tau: f64,
) -> Result<RocCurve, MetricsError> {
    let g = group_by_score(items);
    if g.total_case <= 0.0 {
        return Err(MetricsError::NoCases);
    }
    if g.total_ctrl <= 0.0 {
        return Err(MetricsError::NoControls { definition });
    }
    let m = g.scores.len();
    let mut points = Vec::with_capacity(m + 2);
    points.push(RocPoint {
        threshold: f64::INFINITY,
        sensitivity: 0.0,
        specificity: 1.0,
    });
    // Thresholds in decreasing score order. At c = scores[i], a case counts
    // when its score is strictly above c, a control when its score is <= c.
    let mut case_above = 0.0;
    let mut ctrl_up_to = g.total_ctrl;
    for i in (0..m).rev() {
        points.push(RocPoint {
            threshold: g.scores[i],
            sensitivity: case_above / g.total_case,
            specificity: ctrl_up_to / g.total_ctrl,
        });
        case_above += g.case[i];
        ctrl_up_to -= g.ctrl[i];
    }
    points.push(RocPoint {
        threshold: f64::NEG_INFINITY,
        sensitivity: 1.0,
        specificity: 0.0,
    });
    let auc_trapezoid = trapezoid_area(&points);
    Ok(RocCurve {
        definition,
        tau,
        points,
        auc_trapezoid,
    })
}

fn trapezoid_area(points: &[RocPoint]) -> f64 {
    let mut area = 0.0;
    for w in points.windows(2) {
        let x0 = 1.0 - w[0].specificity;
        let x1 = 1.0 - w[1].specificity;
        area += (x1 - x0) * (w[0].sensitivity + w[1].sensitivity) * 0.5;
    }
    area
}

// ---------------------------------------------------------------------------
// Public metrics on a CaseWeightMatrix.
// ---------------------------------------------------------------------------

fn check_len(weights: &CaseWeightMatrix, scores: &[f64]) -> Result<(), MetricsError> {
    if scores.len() != weights.n() {
        return Err(MetricsError::LengthMismatch {
            scores: scores.len(),
            weights: weights.n(),
        });
    }
    Ok(())
}

fn control_mass(weights: &CaseWeightMatrix, i: usize, definition: Definition) -> f64 {
    match definition {
        Definition::A => (1.0 - weights.case_weight(i)).max(0.0),
        Definition::B => (1.0 - weights.row_sum(i)).max(0.0),
    }
}

fn mass_items(
    weights: &CaseWeightMatrix,
    scores: &[f64],
    definition: Definition,
) -> Vec<MassItem> {
    (0..weights.n())
        .filter(|&i| weights.is_included(i))
        .map(|i| {
            (
                scores[i],
                weights.case_weight(i),
                control_mass(weights, i, definition),
            )
        })
        .collect()
}

/// Weighted sensitivity at threshold `c`: the case-mass fraction with score
/// strictly above `c`.
pub fn sensitivity(
    weights: &CaseWeightMatrix,
    scores: &[f64],
    c: f64,
) -> Result<f64, MetricsError> {
    check_len(weights, scores)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..weights.n() {
        if !weights.is_included(i) {
            continue;
        }
        let w = weights.case_weight(i);
        den += w;
        if scores[i] > c {
            num += w;
        }
    }
    if den <= 0.0 {
        return Err(MetricsError::NoCases);
    }
    Ok(num / den)
}

/// Weighted specificity at threshold `c` under the given control definition:
/// the control-mass fraction with score at or below `c`.
pub fn specificity(
    weights: &CaseWeightMatrix,
    scores: &[f64],
    c: f64,
    definition: Definition,
) -> Result<f64, MetricsError> {
    check_len(weights, scores)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..weights.n() {
        if !weights.is_included(i) {
            continue;
        }
        let m = control_mass(weights, i, definition);
        den += m;
        if scores[i] <= c {
            num += m;
        }
    }
    if den <= 0.0 {
        return Err(MetricsError::NoControls { definition });
    }
    Ok(num / den)
}

/// Full ROC curve with trapezoidal AUC.
pub fn roc_curve(
    weights: &CaseWeightMatrix,
    scores: &[f64],
    definition: Definition,
) -> Result<RocCurve, MetricsError> {
    check_len(weights, scores)?;
    let items = mass_items(weights, scores, definition);
    weighted_roc(&items, definition, weights.tau())
}

/// Concordance-form AUC (weighted Mann-Whitney with 0.5 tie credit).
pub fn auc_concordance(
    weights: &CaseWeightMatrix,
    scores: &[f64],
    definition: Definition,
) -> Result<f64, MetricsError> {
    auc_concordance_with_pairing(weights, scores, definition, AucPairing::CaseControl)
}

/// Concordance AUC with an explicit pairing mode.
pub fn auc_concordance_with_pairing(
    weights: &CaseWeightMatrix,
    scores: &[f64],
    definition: Definition,
    pairing: AucPairing,
) -> Result<f64, MetricsError> {
    check_len(weights, scores)?;
    match pairing {
        AucPairing::CaseControl => {
            let items = mass_items(weights, scores, definition);
            weighted_auc(&items)
        }
        AucPairing::SelfWeighted => {
            // Pair mass W_i * (1 - W_i) carried entirely by subject i; the
            // partner j enters unweighted.
            let items: Vec<MassItem> = (0..weights.n())
                .filter(|&i| weights.is_included(i))
                .map(|i| {
                    let mass = weights.case_weight(i) * control_mass(weights, i, definition);
                    (scores[i], mass, 1.0)
                })
                .collect();
            weighted_auc(&items)
        }
    }
}

fn check_probability_scores(
    weights: &CaseWeightMatrix,
    scores: &[f64],
) -> Result<(), MetricsError> {
    for i in 0..weights.n() {
        if weights.is_included(i) && !(0.0..=1.0).contains(&scores[i]) {
            return Err(MetricsError::RawMarkerNotAllowed {
                index: i,
                value: scores[i],
            });
        }
    }
    Ok(())
}

/// Weighted Brier score: mean of `W*(1-U)^2 + (1-W)*U^2`.
pub fn brier(weights: &CaseWeightMatrix, scores: &[f64]) -> Result<f64, MetricsError> {
    check_len(weights, scores)?;
    check_probability_scores(weights, scores)?;
    let mut sum = 0.0;
    let mut n = 0usize;
    for i in 0..weights.n() {
        if !weights.is_included(i) {
            continue;
        }
        let w = weights.case_weight(i);
        let u = scores[i];
        sum += w * (1.0 - u) * (1.0 - u) + (1.0 - w) * u * u;
        n += 1;
    }
    Ok(sum / n as f64)
}

const KL_CLIP: f64 = 1e-12;

/// Weighted Kullback-Leibler score with the number of scores clipped away
/// from {0, 1} before taking logs.
pub fn kullback_leibler_with_clips(
    weights: &CaseWeightMatrix,
    scores: &[f64],
) -> Result<(f64, usize), MetricsError> {
    check_len(weights, scores)?;
    check_probability_scores(weights, scores)?;
    let mut sum = 0.0;
    let mut n = 0usize;
    let mut clipped = 0usize;
    for i in 0..weights.n() {
        if !weights.is_included(i) {
            continue;
        }
        let w = weights.case_weight(i);
        let u = scores[i];
        if u < KL_CLIP || u > 1.0 - KL_CLIP {
            clipped += 1;
        }
        let u = u.clamp(KL_CLIP, 1.0 - KL_CLIP);
        sum -= w * u.ln() + (1.0 - w) * (1.0 - u).ln();
        n += 1;
    }
    Ok(((sum / n as f64).max(0.0), clipped))
}

/// Weighted Kullback-Leibler score.
pub fn kullback_leibler(weights: &CaseWeightMatrix, scores: &[f64]) -> Result<f64, MetricsError> {
    kullback_leibler_with_clips(weights, scores).map(|(v, _)| v)
}

/// Weighted absolute prediction error: mean of `W*(1-U) + (1-W)*U`.
pub fn abs_err(weights: &CaseWeightMatrix, scores: &[f64]) -> Result<f64, MetricsError> {
    check_len(weights, scores)?;
    check_probability_scores(weights, scores)?;
    let mut sum = 0.0;
    let mut n = 0usize;
    for i in 0..weights.n() {
        if !weights.is_included(i) {
            continue;
        }
        let w = weights.case_weight(i);
        let u = scores[i];
        sum += w * (1.0 - u) + (1.0 - w) * u;
        n += 1;
    }
    Ok(sum / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// W_1 = (1, 0.5, 0, 0) over scores (0.9, 0.6, 0.4, 0.2): one observed
    /// case, one half-imputed censored subject, one competing event, one
    /// survivor.
    fn example_matrix() -> (CaseWeightMatrix, Vec<f64>) {
        let rows = vec![
            vec![1.0, 0.0],
            vec![0.5, 0.5],
            vec![0.0, 1.0],
            vec![0.0, 0.0],
        ];
        let w = CaseWeightMatrix::from_rows(6.0, 1, &rows).unwrap();
        (w, vec![0.9, 0.6, 0.4, 0.2])
    }

    #[test]
    fn from_rows_rejects_bad_rows() {
        assert!(CaseWeightMatrix::from_rows(6.0, 1, &[vec![1.2, 0.0]]).is_err());
        assert!(CaseWeightMatrix::from_rows(6.0, 1, &[vec![0.7, 0.6]]).is_err());
        assert!(CaseWeightMatrix::from_rows(6.0, 3, &[vec![0.5, 0.2]]).is_err());
    }

    #[test]
    fn sensitivity_weighted_count() {
        let (w, scores) = example_matrix();
        // (1 + 0.5) / 1.5 = 1.0: all case mass sits above 0.5.
        let se = sensitivity(&w, &scores, 0.5).unwrap();
        assert!((se - 1.0).abs() < 1e-15);
        assert_eq!(sensitivity(&w, &scores, f64::NEG_INFINITY).unwrap(), 1.0);
        assert_eq!(sensitivity(&w, &scores, f64::INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn specificity_definition_a_weighted_count() {
        let (w, scores) = example_matrix();
        // Control masses (0, 0.5, 1, 1); scores <= 0.5 are (0.4, 0.2):
        // (1 + 1) / 2.5 = 0.8.
        let sp = specificity(&w, &scores, 0.5, Definition::A).unwrap();
        assert!((sp - 0.8).abs() < 1e-15);
        assert_eq!(
            specificity(&w, &scores, f64::INFINITY, Definition::A).unwrap(),
            1.0
        );
        assert_eq!(
            specificity(&w, &scores, f64::NEG_INFINITY, Definition::A).unwrap(),
            0.0
        );
    }

    #[test]
    fn competing_event_controls_differ_between_definitions() {
        let (w, _) = example_matrix();
        // Subject 2 had a competing event before tau: full control under A,
        // zero control mass under B.
        assert_eq!(super::control_mass(&w, 2, Definition::A), 1.0);
        assert_eq!(super::control_mass(&w, 2, Definition::B), 0.0);
        // The survivor subject 3 is a control under both.
        assert_eq!(super::control_mass(&w, 3, Definition::A), 1.0);
        assert_eq!(super::control_mass(&w, 3, Definition::B), 1.0);
    }

    #[test]
    fn roc_endpoints_and_monotonicity() {
        let (w, scores) = example_matrix();
        for def in [Definition::A, Definition::B] {
            let roc = roc_curve(&w, &scores, def).unwrap();
            let first = roc.points.first().unwrap();
            let last = roc.points.last().unwrap();
            assert_eq!((first.sensitivity, first.specificity), (0.0, 1.0));
            assert_eq!((last.sensitivity, last.specificity), (1.0, 0.0));
            for pair in roc.points.windows(2) {
                assert!(pair[1].sensitivity >= pair[0].sensitivity - 1e-15);
                assert!(pair[1].specificity <= pair[0].specificity + 1e-15);
            }
            assert_eq!(roc.points.len(), 4 + 2);
        }
    }

    #[test]
    fn perfect_separation_has_auc_one() {
        let (w, scores) = example_matrix();
        // Under definition B the only control mass sits at the lowest score,
        // strictly below all case mass.
        let auc = auc_concordance(&w, &scores, Definition::B).unwrap();
        assert!((auc - 1.0).abs() < 1e-15);
        let roc = roc_curve(&w, &scores, Definition::B).unwrap();
        assert!((roc.auc_trapezoid - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tied_scores_give_half() {
        let rows = vec![
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 0.0],
        ];
        let w = CaseWeightMatrix::from_rows(5.0, 1, &rows).unwrap();
        let scores = vec![0.5; 4];
        for def in [Definition::A, Definition::B] {
            let auc = auc_concordance(&w, &scores, def).unwrap();
            assert!((auc - 0.5).abs() < 1e-15);
            let roc = roc_curve(&w, &scores, def).unwrap();
            assert!((roc.auc_trapezoid - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn trapezoid_matches_concordance() {
        let (w, scores) = example_matrix();
        for def in [Definition::A, Definition::B] {
            let roc = roc_curve(&w, &scores, def).unwrap();
            let auc = auc_concordance(&w, &scores, def).unwrap();
            assert!(
                (roc.auc_trapezoid - auc).abs() < 1e-12,
                "def {def}: {} vs {auc}",
                roc.auc_trapezoid
            );
        }
    }

    #[test]
    fn self_weighted_pairing_stays_in_range() {
        let (w, scores) = example_matrix();
        let auc =
            auc_concordance_with_pairing(&w, &scores, Definition::A, AucPairing::SelfWeighted)
                .unwrap();
        assert!((0.0..=1.0).contains(&auc));
    }

    #[test]
    fn constant_half_scores_calibration_values() {
        let rows = vec![
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 0.0],
            vec![0.0, 1.0],
        ];
        let w = CaseWeightMatrix::from_rows(5.0, 1, &rows).unwrap();
        let scores = vec![0.5; 4];
        assert!((brier(&w, &scores).unwrap() - 0.25).abs() < 1e-15);
        assert!((kullback_leibler(&w, &scores).unwrap() - 2.0f64.ln()).abs() < 1e-12);
        assert!((abs_err(&w, &scores).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn perfect_oracle_scores_have_zero_loss() {
        let rows = vec![
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, 0.0],
        ];
        let w = CaseWeightMatrix::from_rows(5.0, 1, &rows).unwrap();
        let scores = vec![1.0, 1.0, 0.0, 0.0];
        assert_eq!(brier(&w, &scores).unwrap(), 0.0);
        assert_eq!(abs_err(&w, &scores).unwrap(), 0.0);
        let (kl, clipped) = kullback_leibler_with_clips(&w, &scores).unwrap();
        // Boundary scores are clipped; the result is zero up to clip epsilon.
        assert_eq!(clipped, 4);
        assert!(kl.abs() < 1e-10);
    }

    #[test]
    fn raw_marker_scores_rejected_by_calibration() {
        let (w, mut scores) = example_matrix();
        scores[0] = 1.7;
        let err = brier(&w, &scores).unwrap_err();
        assert!(matches!(err, MetricsError::RawMarkerNotAllowed { index: 0, .. }));
        assert!(kullback_leibler(&w, &scores).is_err());
        assert!(abs_err(&w, &scores).is_err());
        // Discrimination still works on the raw marker.
        assert!(auc_concordance(&w, &scores, Definition::A).is_ok());
    }

    #[test]
    fn no_cases_error() {
        let rows = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]];
        let w = CaseWeightMatrix::from_rows(5.0, 1, &rows).unwrap();
        let scores = vec![0.9, 0.5, 0.1];
        assert_eq!(sensitivity(&w, &scores, 0.5).unwrap_err(), MetricsError::NoCases);
        assert_eq!(
            auc_concordance(&w, &scores, Definition::A).unwrap_err(),
            MetricsError::NoPairs
        );
        assert_eq!(
            roc_curve(&w, &scores, Definition::A).unwrap_err(),
            MetricsError::NoCases
        );
    }

    #[test]
    fn length_mismatch_detected() {
        let (w, _) = example_matrix();
        let err = sensitivity(&w, &[0.5, 0.4], 0.3).unwrap_err();
        assert!(matches!(err, MetricsError::LengthMismatch { .. }));
    }
}
