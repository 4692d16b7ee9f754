//! Closed-form sample-size thresholds and failure bounds.

use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};

/// Failure budget the training-task and inference thresholds are sized for.
pub const DELTA_BUDGET: f64 = 0.02;

fn check_margin(name: &str, v: f64) -> Result<()> {
    if v.is_nan() || v <= 0.0 {
        return Err(ArcError::Domain(format!("{name} must be positive")));
    }
    if v > 1.0 {
        return Err(ArcError::Domain(format!("{name} must be at most 1")));
    }
    Ok(())
}

fn check_count(name: &str, v: u64) -> Result<()> {
    if v == 0 {
        return Err(ArcError::Domain(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `⌈2 ln(1/δ) / c²⌉`, at least 1.
pub fn required_inference_samples(c: f64, delta: f64) -> Result<u64> {
    check_margin("margin", c)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(ArcError::Domain("delta must lie strictly between 0 and 1".into()));
    }
    let n = (2.0 * (1.0 / delta).ln() / (c * c)).ceil();
    Ok((n as u64).max(1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSet {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "T")]
    pub t: u64,
    pub n_theta_min: u64,
    pub ell_min: u64,
    pub delta_budget: f64,
    pub c_used: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_used: Option<f64>,
}

/// `n_θ = ⌈D ln(100 D T)⌉` training tasks and `ℓ = ⌈2 ln(100 T n_θ) / c²⌉`
/// inference demonstrations, for a total failure probability of 0.02.
pub fn theorem_thresholds(d: u64, t: u64, c: f64) -> Result<ThresholdSet> {
    check_count("D", d)?;
    check_count("T", t)?;
    check_margin("margin", c)?;
    let (df, tf) = (d as f64, t as f64);
    let n_theta = (df * (100.0 * df * tf).ln()).ceil().max(1.0) as u64;
    let ell = (2.0 * (100.0 * tf * n_theta as f64).ln() / (c * c)).ceil().max(1.0) as u64;
    Ok(ThresholdSet {
        d,
        t,
        n_theta_min: n_theta,
        ell_min: ell,
        delta_budget: DELTA_BUDGET,
        c_used: c,
        r_used: None,
    })
}

/// `D T e^{-n_θ / D}`: probability that `n_θ` uniform tasks miss some subtask.
/// Not clamped to 1.
pub fn coverage_failure_bound(d: u64, t: u64, n_theta: u64) -> f64 {
    let df = d as f64;
    df * t as f64 * (-(n_theta as f64) / df).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureBound {
    pub coverage: f64,
    pub inference: f64,
    pub training: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "H")]
    pub h: u64,
    pub c: f64,
    pub r: f64,
    pub n_theta: u64,
    pub ell: u64,
    pub n_x: u64,
}

/// `D T e^{-n_θ/D} + n_θ T e^{-c²ℓ/2} + n_θ T H e^{-r² n_x/2}`.
pub fn nonasymptotic_bound(inputs: &BoundInputs) -> Result<FailureBound> {
    let BoundInputs { d, t, h, c, r, n_theta, ell, n_x } = *inputs;
    check_count("D", d)?;
    check_count("T", t)?;
    check_count("H", h)?;
    check_margin("margin", c)?;
    check_margin("r", r)?;
    let (nt, tf) = (n_theta as f64, t as f64);
    let coverage = coverage_failure_bound(d, t, n_theta);
    let inference = nt * tf * (-c * c * ell as f64 / 2.0).exp();
    let training = nt * tf * h as f64 * (-r * r * n_x as f64 / 2.0).exp();
    Ok(FailureBound {
        coverage,
        inference,
        training,
        total: coverage + inference + training,
    })
}
