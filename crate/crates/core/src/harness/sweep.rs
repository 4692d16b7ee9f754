use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::experiment::{resolve_margins, run_experiment, ExperimentReport};
use super::trial::ExperimentConfig;
use crate::error::{ArcError, Result};
use crate::families::FamilyConfig;
use crate::stats::theorem_thresholds;

/// The axis a sweep varies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axis", content = "values", rename_all = "kebab-case")]
pub enum SweepGrid {
    NTheta(Vec<usize>),
    /// Subtasks per step: parity `d`, translation language count.
    D(Vec<u32>),
    /// Steps: parity `k`, arithmetic `d - 1`, translation steps.
    T(Vec<u32>),
}

impl SweepGrid {
    pub fn axis(&self) -> &'static str {
        match self {
            SweepGrid::NTheta(_) => "n_theta",
            SweepGrid::D(_) => "D",
            SweepGrid::T(_) => "T",
        }
    }

    fn len(&self) -> usize {
        match self {
            SweepGrid::NTheta(v) => v.len(),
            SweepGrid::D(v) => v.len(),
            SweepGrid::T(v) => v.len(),
        }
    }
}

/// How `n_θ` is set at each grid point (ignored on an `n_theta` axis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum NThetaRule {
    /// Keep the base config's value.
    Fixed,
    /// `⌈multiplier · D ln D⌉`.
    DLnD { multiplier: f64 },
    /// `⌈D ln(100 D T)⌉`.
    Theorem,
}

/// How `ℓ` is set at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum EllRule {
    Fixed,
    /// `⌈2 ln(100 T n_θ) / c²⌉` with the class margin.
    Theorem,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub grid_value: u64,
    pub n_theta: usize,
    pub ell: usize,
    pub failure_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub axis: String,
    pub rows: Vec<SweepRow>,
    pub reports: Vec<ExperimentReport>,
}

impl SweepReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("grid_value,n_theta,failure_rate,ci_low,ci_high,bound\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{:.6e}",
                r.grid_value, r.n_theta, r.failure_rate, r.ci_low, r.ci_high, r.bound
            );
        }
        out
    }
}

fn with_d(family: &FamilyConfig, d: u32) -> Result<FamilyConfig> {
    let mut f = family.clone();
    match &mut f {
        FamilyConfig::Parity(p) => p.d = d,
        FamilyConfig::Translation(t) => {
            t.languages = d;
            t.lexicons = None;
        }
        FamilyConfig::Arithmetic(_) => {
            return Err(ArcError::Unsupported("varying D (fixed at 2 operators)".into()))
        }
    }
    Ok(f)
}

fn with_t(family: &FamilyConfig, t: u32) -> FamilyConfig {
    let mut f = family.clone();
    match &mut f {
        FamilyConfig::Parity(p) => p.k = t,
        FamilyConfig::Arithmetic(a) => a.d = t + 1,
        FamilyConfig::Translation(tr) => tr.steps = t,
    }
    f
}

/// One experiment per grid point. Point `j` uses master seed `base + j`.
pub fn sweep(
    base: &ExperimentConfig,
    grid: &SweepGrid,
    n_theta_rule: NThetaRule,
    ell_rule: EllRule,
    workers: Option<usize>,
) -> Result<SweepReport> {
    if grid.len() == 0 {
        return Err(ArcError::InvalidConfig("sweep grid is empty".into()));
    }
    let points: Vec<(u64, ExperimentConfig)> = match grid {
        SweepGrid::NTheta(v) => v
            .iter()
            .map(|&n| {
                let mut c = base.clone();
                c.n_theta = n;
                (n as u64, c)
            })
            .collect(),
        SweepGrid::D(v) => v
            .iter()
            .map(|&d| {
                let mut c = base.clone();
                c.family = with_d(&base.family, d)?;
                Ok((d as u64, c))
            })
            .collect::<Result<_>>()?,
        SweepGrid::T(v) => v
            .iter()
            .map(|&t| {
                let mut c = base.clone();
                c.family = with_t(&base.family, t);
                (t as u64, c)
            })
            .collect(),
    };

    let mut rows = Vec::with_capacity(points.len());
    let mut reports = Vec::with_capacity(points.len());
    for (j, (value, mut cfg)) in points.into_iter().enumerate() {
        let class = cfg.family.build()?;
        let (d, t) = (class.subtasks_per_step() as u64, class.steps() as u64);
        if !matches!(grid, SweepGrid::NTheta(_)) {
            match n_theta_rule {
                NThetaRule::Fixed => {}
                NThetaRule::DLnD { multiplier } => {
                    cfg.n_theta = (multiplier * d as f64 * (d as f64).ln()).ceil().max(1.0) as usize;
                }
                NThetaRule::Theorem => {
                    cfg.n_theta = theorem_thresholds(d, t, 1.0)?.n_theta_min as usize;
                }
            }
        }
        if let EllRule::Theorem = ell_rule {
            let c = resolve_margins(&class, &cfg).0.ok_or_else(|| {
                ArcError::Unsupported("a theorem-sized ell without a known margin".into())
            })?;
            let n_theta = (cfg.n_theta as f64).max(1.0);
            cfg.ell = (2.0 * (100.0 * t as f64 * n_theta).ln() / (c * c)).ceil() as usize;
        }
        cfg.master_seed = base.master_seed.wrapping_add(j as u64);
        let report = run_experiment(&cfg, workers)?;
        rows.push(SweepRow {
            grid_value: value,
            n_theta: cfg.n_theta,
            ell: cfg.ell,
            failure_rate: report.failure.rate,
            ci_low: report.failure.low,
            ci_high: report.failure.high,
            bound: report.bounds.headline(),
        });
        reports.push(report);
    }
    Ok(SweepReport {
        axis: grid.axis().to_string(),
        rows,
        reports,
    })
}
