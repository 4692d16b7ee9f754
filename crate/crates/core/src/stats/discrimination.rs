//! The sign test that tells two known distributions apart from samples.
//!
//! `φ = (1/n) Σ (-1)^{1[P(s) < Q(s)]}` concentrates around `mu_p` under `P`
//! and `mu_q` under `Q`, and `|mu_p - mu_q| = 2 TV(P, Q)`. The test reports
//! whichever expectation `φ` lands closer to; by Hoeffding it errs with
//! probability at most `exp(-n TV² / 2)`.

use serde::{Deserialize, Serialize};

use super::tv::DistributionPair;
use crate::error::{ArcError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestStatistic {
    pub phi: f64,
    pub mu_p: f64,
    pub mu_q: f64,
    pub n: usize,
    /// `n φ`, an integer in `[-n, n]`.
    pub signed_count: i64,
}

impl TestStatistic {
    /// `|φ - mu_p|` and `|φ - mu_q|`.
    pub fn distances(&self) -> (f64, f64) {
        ((self.phi - self.mu_p).abs(), (self.phi - self.mu_q).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PChosen,
    QChosen,
}

/// `+1` unless `P(s) < Q(s)`. Exact comparison; family pmfs are dyadic.
#[inline]
pub fn sign_of(p: f64, q: f64) -> i64 {
    if p < q {
        -1
    } else {
        1
    }
}

/// Signed count over the samples without the expectations.
pub fn signed_count<'s, P, I>(pair: &P, samples: I) -> (i64, usize)
where
    P: DistributionPair,
    P::Sample: 's,
    I: IntoIterator<Item = &'s P::Sample>,
{
    let mut count = 0i64;
    let mut n = 0usize;
    for s in samples {
        let (p, q) = pair.probs(s);
        count += sign_of(p, q);
        n += 1;
    }
    (count, n)
}

pub fn test_statistic_phi<'s, P, I>(pair: &P, samples: I) -> Result<TestStatistic>
where
    P: DistributionPair,
    P::Sample: 's,
    I: IntoIterator<Item = &'s P::Sample>,
{
    let (count, n) = signed_count(pair, samples);
    if n == 0 {
        return Err(ArcError::EmptySample);
    }
    let c = pair.contrast()?;
    Ok(TestStatistic {
        phi: count as f64 / n as f64,
        mu_p: c.mu_p,
        mu_q: c.mu_q,
        n,
        signed_count: count,
    })
}

/// `P` iff `|φ - mu_p| < |φ - mu_q|`; ties go to `Q`.
pub fn verdict(stat: &TestStatistic) -> Verdict {
    let (dp, dq) = stat.distances();
    if dp < dq {
        Verdict::PChosen
    } else {
        Verdict::QChosen
    }
}

/// Runs the test. Pairs with zero TV are rejected.
pub fn discriminate<'s, P, I>(pair: &P, samples: I) -> Result<Verdict>
where
    P: DistributionPair,
    P::Sample: 's,
    I: IntoIterator<Item = &'s P::Sample>,
{
    if pair.contrast()?.tv == 0.0 {
        return Err(ArcError::ZeroTotalVariation);
    }
    Ok(verdict(&test_statistic_phi(pair, samples)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::TablePair;

    #[test]
    fn point_mass_versus_uniform() {
        let pair = TablePair::point_mass_vs_uniform(2).unwrap();
        let c = pair.contrast().unwrap();
        assert_eq!((c.mu_p, c.mu_q, c.tv), (1.0, 0.0, 0.5));

        let all_zero = [0usize; 4];
        let stat = test_statistic_phi(&pair, &all_zero).unwrap();
        assert_eq!(stat.phi, 1.0);
        assert_eq!(discriminate(&pair, &all_zero).unwrap(), Verdict::PChosen);

        let alternating = [0usize, 1, 0, 1];
        assert_eq!(test_statistic_phi(&pair, &alternating).unwrap().phi, 0.0);
        assert_eq!(discriminate(&pair, &alternating).unwrap(), Verdict::QChosen);
    }

    #[test]
    fn ties_go_to_q() {
        let stat = TestStatistic { phi: 0.5, mu_p: 1.0, mu_q: 0.0, n: 2, signed_count: 1 };
        assert_eq!(verdict(&stat), Verdict::QChosen);
    }

    #[test]
    fn errors() {
        let same = TablePair::new(vec![0.5, 0.5], vec![0.5, 0.5]).unwrap();
        assert!(matches!(discriminate(&same, &[0usize]), Err(ArcError::ZeroTotalVariation)));
        let pair = TablePair::point_mass_vs_uniform(2).unwrap();
        let none: [usize; 0] = [];
        assert!(matches!(test_statistic_phi(&pair, &none), Err(ArcError::EmptySample)));
    }
}
