use std::collections::HashSet;

use rayon::prelude::*;

use super::{IdentifiedFamilies, IdentifiedMember, Learner, TrainingMode};
use crate::dataset::Dataset;
use crate::error::{ArcError, Result};
use crate::space::Token;
use crate::stats::sign_of;
use crate::support::for_each_support_point;

/// `θ̂^i` for one training dataset, step by step under the identified prefix.
fn identify_task(learner: &Learner<'_>, data: &Dataset, task: usize) -> Result<Vec<u32>> {
    let class = learner.class();
    if data.is_empty() {
        return Err(ArcError::EmptyDataset);
    }
    let mut path: Vec<u32> = Vec::with_capacity(class.steps());
    for t in 0..class.steps() {
        let xi = class.hypotheses(t).len() as u32;
        let chosen = match learner.config().mode {
            TrainingMode::MleStrict => {
                let observed: HashSet<(u64, &[Token])> = data
                    .iter()
                    .map(|d| (class.input_space().index_of(&d.x), &d.y[..=t]))
                    .collect();
                let mut kept = Vec::new();
                for id in 0..xi {
                    path.push(id);
                    let mut size = 0usize;
                    let mut inside = true;
                    for_each_support_point(class, &path, |x, y, _| {
                        size += 1;
                        inside &= observed.contains(&(class.input_space().index_of(x), y));
                    })?;
                    path.pop();
                    if inside && size == observed.len() {
                        kept.push(id);
                    }
                }
                argmax_likelihood(learner, data, &mut path, &kept)
            }
            TrainingMode::MleContainment => {
                let kept: Vec<u32> = (0..xi)
                    .filter(|&id| {
                        path.push(id);
                        let ok = data.iter().all(|d| class.joint_prob(&path, &d.x, &d.y) > 0.0);
                        path.pop();
                        ok
                    })
                    .collect();
                argmax_likelihood(learner, data, &mut path, &kept)
            }
            TrainingMode::Discrimination => Some(champion_over(learner, data, &path, 0..xi)?),
        };
        match chosen {
            Some(id) => path.push(id),
            None => return Err(ArcError::EmptyCandidates { step: t + 1, task }),
        }
    }
    Ok(path)
}

/// Highest summed log-likelihood among `kept`; ties go to the lowest id.
fn argmax_likelihood(learner: &Learner<'_>, data: &Dataset, path: &mut Vec<u32>, kept: &[u32]) -> Option<u32> {
    let class = learner.class();
    let mut best: Option<(u32, f64)> = None;
    for &id in kept {
        path.push(id);
        let score: f64 = data.iter().map(|d| class.joint_log_prob(path, &d.x, &d.y)).sum();
        path.pop();
        if score > f64::NEG_INFINITY && best.is_none_or(|(_, s)| score > s) {
            best = Some((id, score));
        }
    }
    best.map(|(id, _)| id)
}

/// Sequential champion/challenger tournament over `candidates` at step
/// `prefix.len()`. A challenger replaces the champion only when `φ` is
/// strictly closer to the challenger's expectation. Zero-TV contests keep
/// the champion.
pub(super) fn champion_over<I>(learner: &Learner<'_>, data: &Dataset, prefix: &[u32], candidates: I) -> Result<u32>
where
    I: IntoIterator<Item = u32>,
{
    let class = learner.class();
    let mut iter = candidates.into_iter();
    let mut champion = iter.next().ok_or(ArcError::EmptySample)?;
    let mut pc = prefix.to_vec();
    pc.push(champion);
    let mut pk = prefix.to_vec();
    pk.push(champion);
    let t = prefix.len();
    for challenger in iter {
        if challenger == champion {
            continue;
        }
        let c = learner.contrast(prefix, champion, challenger)?;
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
        if (phi - c.mu_q).abs() < (phi - c.mu_p).abs() {
            champion = challenger;
        }
    }
    Ok(champion)
}

pub(super) fn train_with(learner: &Learner<'_>, data: &[Dataset]) -> Result<IdentifiedFamilies> {
    let class = learner.class();
    if data.is_empty() {
        return Err(ArcError::EmptyDataset);
    }
    let per_task: Vec<Vec<u32>> = data
        .par_iter()
        .enumerate()
        .map(|(i, d)| identify_task(learner, d, i))
        .collect::<Result<_>>()?;
    let steps = (0..class.steps())
        .map(|t| {
            per_task
                .iter()
                .enumerate()
                .map(|(i, path)| IdentifiedMember {
                    id: path[t],
                    descriptor: class.hypothesis(t, path[t]).descriptor(),
                    sources: vec![i],
                })
                .collect()
        })
        .collect();
    Ok(IdentifiedFamilies {
        steps,
        per_task,
        dedup_applied: false,
    })
}
