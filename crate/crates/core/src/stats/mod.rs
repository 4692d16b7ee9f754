//! Total variation, the pairwise discrimination test, and sample-size bounds.

mod bounds;
mod discrimination;
mod interval;
mod tv;

pub use bounds::{
    coverage_failure_bound, nonasymptotic_bound, required_inference_samples, theorem_thresholds,
    BoundInputs, FailureBound, ThresholdSet, DELTA_BUDGET,
};
pub use discrimination::{
    discriminate, sign_of, signed_count, test_statistic_phi, verdict, TestStatistic, Verdict,
};
pub use interval::{wilson, RateInterval, Z95};
pub use tv::{expected_statistics, tv_exact, DistributionPair, PrefixPair, TablePair};

pub use crate::support::Contrast;
