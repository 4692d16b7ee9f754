use serde::{Deserialize, Serialize};

use super::{IdentifiedFamilies, Learner};
use crate::dataset::Dataset;
use crate::error::{ArcError, Result};
use crate::stats::sign_of;
use crate::subtask::HypothesisDescriptor;

/// Outcome of the tournament at one step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepSelection {
    pub id: u32,
    pub descriptor: HypothesisDescriptor,
    /// Contests actually run (duplicates and zero-TV pairs are skipped).
    pub contests: usize,
    /// Smallest `| |φ - mu_champion| - |φ - mu_challenger| |` over the contests.
    pub min_gap: Option<f64>,
}

/// `(ζ_1, .., ζ_T)` chosen at inference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectedTask {
    pub steps: Vec<StepSelection>,
}

impl SelectedTask {
    pub fn ids(&self) -> Vec<u32> {
        self.steps.iter().map(|s| s.id).collect()
    }
}

pub(super) fn infer_with(learner: &Learner<'_>, ident: &IdentifiedFamilies, data: &Dataset) -> Result<SelectedTask> {
    let class = learner.class();
    ident.validate(class)?;
    if data.is_empty() {
        return Err(ArcError::EmptyDataset);
    }
    let mut zeta: Vec<u32> = Vec::with_capacity(class.steps());
    let mut steps = Vec::with_capacity(class.steps());
    for t in 0..class.steps() {
        let members = &ident.steps[t];
        let mut champion = members[0].id;
        let mut contests = 0usize;
        let mut min_gap: Option<f64> = None;
        let mut pc = zeta.clone();
        pc.push(champion);
        let mut pk = pc.clone();
        for m in &members[1..] {
            let challenger = m.id;
            if challenger == champion {
                continue;
            }
            // P = champion, Q = challenger; the indicator is 1[P < Q].
            let c = learner.contrast(&zeta, champion, challenger)?;
            if c.tv == 0.0 {
                continue;
            }
            pc[t] = champion;
            pk[t] = challenger;
            let mut count = 0i64;
            for d in data.iter() {
                count += sign_of(class.joint_prob(&pc, &d.x, &d.y), class.joint_prob(&pk, &d.x, &d.y));
            }
            let phi = count as f64 / data.len() as f64;
            let (keep, take) = ((phi - c.mu_p).abs(), (phi - c.mu_q).abs());
            contests += 1;
            let gap = (keep - take).abs();
            min_gap = Some(min_gap.map_or(gap, |g: f64| g.min(gap)));
            if take < keep {
                champion = challenger;
            }
        }
        zeta.push(champion);
        steps.push(StepSelection {
            id: champion,
            descriptor: class.hypothesis(t, champion).descriptor(),
            contests,
            min_gap,
        });
    }
    Ok(SelectedTask { steps })
}
