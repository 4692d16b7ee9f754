use serde::{Deserialize, Serialize};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// An empirical rate with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateInterval {
    pub successes: u64,
    pub n: u64,
    pub rate: f64,
    pub low: f64,
    pub high: f64,
}

impl RateInterval {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.high - self.low)
    }
}

/// Wilson score interval at 95%. For `n = 0` the interval is `[0, 1]`.
pub fn wilson(successes: u64, n: u64) -> RateInterval {
    if n == 0 {
        return RateInterval {
            successes,
            n,
            rate: 0.0,
            low: 0.0,
            high: 1.0,
        };
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = Z95 * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    RateInterval {
        successes,
        n,
        rate: p,
        low: if successes == 0 { 0.0 } else { (center - half).max(0.0) },
        high: if successes >= n { 1.0 } else { (center + half).min(1.0) },
    }
}
