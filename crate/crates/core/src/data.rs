//! Observed-data representation shared by every estimator in the crate.
//!
//! A subject contributes an observed time (event or censoring, whichever came
//! first), a status code (0 = censored, `k >= 1` = event of cause `k`), and a
//! scalar risk score interpreted as the predicted cumulative incidence of the
//! cause of interest at the prediction horizon.

use thiserror::Error;

/// Errors raised while validating observed competing-risks data or the
/// estimator configuration built on top of it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DataError {
    #[error("sample must contain at least one record")]
    EmptySample,
    #[error("record {index}: status code {status} outside 0..={n_causes}")]
    InvalidStatusCode {
        index: usize,
        status: u32,
        n_causes: u32,
    },
    #[error("record {index}: {field} must be finite (got {value})")]
    NonFiniteValue {
        index: usize,
        field: &'static str,
        value: f64,
    },
    #[error("record {index}: observed time must be >= 0 (got {value})")]
    NegativeTime { index: usize, value: f64 },
    #[error("sample has no records with status equal to the cause of interest ({cause})")]
    NoEventsOfInterest { cause: u32 },
    #[error("n_causes must be >= 2 (got {0})")]
    TooFewCauses(u32),
    #[error("cause_of_interest {cause} outside 1..={n_causes}")]
    CauseOutOfRange { cause: u32, n_causes: u32 },
    #[error("prediction horizon must be positive and finite (got {0})")]
    InvalidHorizon(f64),
    #[error("span fraction must lie in (0, 1] (got {0})")]
    InvalidSpan(f64),
    #[error("bandwidth must be positive and finite (got {0})")]
    InvalidBandwidth(f64),
}

/// One subject's observed time, status code, and risk score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubjectRecord {
    /// Observed time to the event or censoring, whichever came first.
    pub time: f64,
    /// 0 = censored, `k >= 1` = event of cause `k`.
    pub status: u32,
    /// Predicted cumulative incidence of the cause of interest at the horizon.
    /// Values outside [0, 1] flag the sample as a raw marker: discrimination
    /// metrics stay valid, calibration metrics are rejected.
    pub score: f64,
}

impl SubjectRecord {
    pub fn new(time: f64, status: u32, score: f64) -> Self {
        Self {
            time,
            status,
            score,
        }
    }

    pub fn is_censored(&self) -> bool {
        self.status == 0
    }
}

/// A validated collection of subject records.
///
/// Records are stored sorted by observed time ascending with events preceding
/// censorings at tied times (the product-limit convention: a subject censored
/// at `t` is still at risk for an event at `t`). Immutable after validation,
/// so it can be shared freely across concurrent estimator invocations.
#[derive(Debug, Clone, PartialEq)]
pub struct CompetingRiskSample {
    records: Vec<SubjectRecord>,
    n_causes: u32,
    cause_of_interest: u32,
    raw_marker: bool,
}

/// Validate raw records into a [`CompetingRiskSample`].
///
/// Sorting is a permutation of the input (stable sort), so validating an
/// already-validated sample reproduces it exactly.
pub fn validate_sample(
    records: Vec<SubjectRecord>,
    n_causes: u32,
    cause_of_interest: u32,
) -> Result<CompetingRiskSample, DataError> {
    if records.is_empty() {
        return Err(DataError::EmptySample);
    }
    if n_causes < 2 {
        return Err(DataError::TooFewCauses(n_causes));
    }
    if cause_of_interest == 0 || cause_of_interest > n_causes {
        return Err(DataError::CauseOutOfRange {
            cause: cause_of_interest,
            n_causes,
        });
    }
    let mut raw_marker = false;
    let mut any_of_interest = false;
    for (index, r) in records.iter().enumerate() {
        if !r.time.is_finite() {
            return Err(DataError::NonFiniteValue {
                index,
                field: "time",
                value: r.time,
            });
        }
        if r.time < 0.0 {
            return Err(DataError::NegativeTime {
                index,
                value: r.time,
            });
        }
        if !r.score.is_finite() {
            return Err(DataError::NonFiniteValue {
                index,
                field: "score",
                value: r.score,
            });
        }
        if r.status > n_causes {
            return Err(DataError::InvalidStatusCode {
                index,
                status: r.status,
                n_causes,
            });
        }
        if r.status == cause_of_interest {
            any_of_interest = true;
        }
        if r.score < 0.0 || r.score > 1.0 {
            raw_marker = true;
        }
    }
    if !any_of_interest {
        return Err(DataError::NoEventsOfInterest {
            cause: cause_of_interest,
        });
    }
    let mut records = records;
    // Events before censorings at tied times; stable within each group.
    records.sort_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then_with(|| u8::from(a.is_censored()).cmp(&u8::from(b.is_censored())))
    });
    Ok(CompetingRiskSample {
        records,
        n_causes,
        cause_of_interest,
        raw_marker,
    })
}

impl CompetingRiskSample {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[SubjectRecord] {
        &self.records
    }

    pub fn n_causes(&self) -> u32 {
        self.n_causes
    }

    pub fn cause_of_interest(&self) -> u32 {
        self.cause_of_interest
    }

    /// True when any risk score lies outside [0, 1]. Calibration metrics
    /// (Brier, KL, absolute error) reject such samples.
    pub fn is_raw_marker(&self) -> bool {
        self.raw_marker
    }

    pub fn scores(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.score).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.time).collect()
    }

    pub fn max_time(&self) -> f64 {
        // Records are sorted, so the last one carries the largest time.
        self.records.last().map(|r| r.time).unwrap_or(0.0)
    }

    pub fn n_censored(&self) -> usize {
        self.records.iter().filter(|r| r.is_censored()).count()
    }
}

/// The prediction horizon tau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horizon(f64);

impl Horizon {
    pub fn new(tau: f64) -> Result<Self, DataError> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(DataError::InvalidHorizon(tau));
        }
        Ok(Self(tau))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// A horizon beyond the last observed time is legal but worth a warning:
    /// every curve is frozen past the data.
    pub fn exceeds_follow_up(self, sample: &CompetingRiskSample) -> bool {
        self.0 > sample.max_time()
    }
}

/// Control-group definition for the time-dependent ROC.
///
/// Cases are always subjects with the event of interest by the horizon.
/// Definition A counts subjects with a competing event before the horizon as
/// controls; definition B restricts controls to event-free subjects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Definition {
    A,
    B,
}

impl std::fmt::Display for Definition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Definition::A => write!(f, "A"),
            Definition::B => write!(f, "B"),
        }
    }
}

/// Kernel function for bandwidth-mode smoothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Kernel {
    Uniform,
    Epanechnikov,
    Gaussian,
}

impl Kernel {
    /// K(u), the unscaled kernel density.
    pub fn eval(self, u: f64) -> f64 {
        match self {
            Kernel::Uniform => {
                if u.abs() <= 1.0 {
                    0.5
                } else {
                    0.0
                }
            }
            Kernel::Epanechnikov => {
                if u.abs() <= 1.0 {
                    0.75 * (1.0 - u * u)
                } else {
                    0.0
                }
            }
            Kernel::Gaussian => {
                const INV_SQRT_2PI: f64 = 0.3989422804014327;
                (-0.5 * u * u).exp() * INV_SQRT_2PI
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub(crate) enum KernelMode {
    /// Uniform weight over the `ceil(n * fraction)` nearest subjects in score
    /// rank. Invariant to monotone transformations of the score.
    Span(f64),
    /// Metric kernel `K((u - u0)/h) / h` on the score scale.
    Bandwidth { h: f64, kernel: Kernel },
}

/// Smoothing configuration for the conditional survival/CIF estimators.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct KernelSpec {
    pub(crate) mode: KernelMode,
}

impl KernelSpec {
    /// Rank-neighborhood mode: include the `ceil(n * fraction)` subjects
    /// nearest to the anchor in score rank, with a uniform kernel.
    pub fn span(fraction: f64) -> Result<Self, DataError> {
        if !fraction.is_finite() || fraction <= 0.0 || fraction > 1.0 {
            return Err(DataError::InvalidSpan(fraction));
        }
        Ok(Self {
            mode: KernelMode::Span(fraction),
        })
    }

    /// Metric-kernel mode with fixed bandwidth `h` on the score scale.
    pub fn bandwidth(h: f64, kernel: Kernel) -> Result<Self, DataError> {
        if !h.is_finite() || h <= 0.0 {
            return Err(DataError::InvalidBandwidth(h));
        }
        Ok(Self {
            mode: KernelMode::Bandwidth { h, kernel },
        })
    }

    pub fn is_span(&self) -> bool {
        matches!(self.mode, KernelMode::Span(_))
    }

    pub fn span_fraction(&self) -> Option<f64> {
        match self.mode {
            KernelMode::Span(f) => Some(f),
            KernelMode::Bandwidth { .. } => None,
        }
    }
}

impl Default for KernelSpec {
    /// Span 0.05, the default neighborhood for the proposed estimators.
    fn default() -> Self {
        Self {
            mode: KernelMode::Span(0.05),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(time: f64, status: u32, score: f64) -> SubjectRecord {
        SubjectRecord::new(time, status, score)
    }

    #[test]
    fn valid_sample_keeps_sorted_order() {
        let records = vec![rec(1.0, 1, 0.9), rec(2.0, 0, 0.5), rec(3.0, 2, 0.1)];
        let sample = validate_sample(records.clone(), 2, 1).unwrap();
        assert_eq!(sample.records(), records.as_slice());
        assert!(!sample.is_raw_marker());
    }

    #[test]
    fn status_above_k_rejected() {
        let records = vec![rec(1.0, 1, 0.9), rec(2.0, 3, 0.5)];
        let err = validate_sample(records, 2, 1).unwrap_err();
        assert_eq!(
            err,
            DataError::InvalidStatusCode {
                index: 1,
                status: 3,
                n_causes: 2
            }
        );
    }

    #[test]
    fn tied_event_precedes_censoring() {
        let records = vec![rec(2.0, 0, 0.5), rec(2.0, 1, 0.9)];
        let sample = validate_sample(records, 2, 1).unwrap();
        assert_eq!(sample.records()[0], rec(2.0, 1, 0.9));
        assert_eq!(sample.records()[1], rec(2.0, 0, 0.5));
    }

    #[test]
    fn validation_is_idempotent() {
        let records = vec![
            rec(3.0, 0, 0.2),
            rec(1.0, 2, 0.7),
            rec(1.0, 0, 0.4),
            rec(2.0, 1, 0.9),
        ];
        let once = validate_sample(records, 2, 1).unwrap();
        let twice = validate_sample(once.records().to_vec(), 2, 1).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn empty_and_missing_cause_rejected() {
        assert_eq!(validate_sample(vec![], 2, 1).unwrap_err(), DataError::EmptySample);
        let err = validate_sample(vec![rec(1.0, 2, 0.5)], 2, 1).unwrap_err();
        assert_eq!(err, DataError::NoEventsOfInterest { cause: 1 });
    }

    #[test]
    fn non_finite_values_rejected() {
        let err = validate_sample(vec![rec(f64::NAN, 1, 0.5)], 2, 1).unwrap_err();
        assert!(matches!(err, DataError::NonFiniteValue { field: "time", .. }));
        let err = validate_sample(vec![rec(1.0, 1, f64::INFINITY)], 2, 1).unwrap_err();
        assert!(matches!(err, DataError::NonFiniteValue { field: "score", .. }));
        let err = validate_sample(vec![rec(-0.5, 1, 0.5)], 2, 1).unwrap_err();
        assert!(matches!(err, DataError::NegativeTime { .. }));
    }

    #[test]
    fn raw_marker_flagged() {
        let sample = validate_sample(vec![rec(1.0, 1, 2.5), rec(2.0, 0, -1.0)], 2, 1).unwrap();
        assert!(sample.is_raw_marker());
    }

    #[test]
    fn horizon_bounds() {
        assert!(Horizon::new(0.0).is_err());
        assert!(Horizon::new(f64::NAN).is_err());
        let tau = Horizon::new(5.0).unwrap();
        let sample = validate_sample(vec![rec(1.0, 1, 0.5), rec(2.0, 2, 0.4)], 2, 1).unwrap();
        assert!(tau.exceeds_follow_up(&sample));
        assert!(!Horizon::new(1.5).unwrap().exceeds_follow_up(&sample));
    }

    #[test]
    fn kernel_spec_bounds() {
        assert!(KernelSpec::span(0.0).is_err());
        assert!(KernelSpec::span(1.5).is_err());
        assert!(KernelSpec::span(1.0).is_ok());
        assert!(KernelSpec::bandwidth(0.0, Kernel::Gaussian).is_err());
        assert!(KernelSpec::bandwidth(0.3, Kernel::Epanechnikov).is_ok());
        assert_eq!(KernelSpec::default().span_fraction(), Some(0.05));
    }
}
