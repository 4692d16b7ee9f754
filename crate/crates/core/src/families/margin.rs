use serde::{Deserialize, Serialize};

use crate::class::{FamilyTag, TaskAdmission, TaskClass};
use crate::error::{ArcError, Result};
use crate::support::contrast;

/// A pair and prefix attaining a minimum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginWitness {
    /// 0-based step.
    pub step: usize,
    /// 0-based ids of the shared prefix.
    pub prefix: Vec<u32>,
    pub a: u32,
    pub b: u32,
    pub tv: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepMargin {
    pub step: usize,
    pub c: Option<f64>,
    pub r: Option<f64>,
}

/// Identifiability margins.
///
/// `c` is the minimum TV between distinct truth members after a shared
/// reachable prefix; `r` also admits any other member of `Ξ_t` as the second
/// argument. Either is `None` when no qualifying pair exists (e.g. `D = 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub c: Option<f64>,
    pub r: Option<f64>,
    pub per_step: Vec<StepMargin>,
    pub c_witness: Option<MarginWitness>,
    pub r_witness: Option<MarginWitness>,
    /// Number of steps examined.
    pub depth: usize,
    pub analytic: bool,
}

/// Truth ids that extend `prefix` to a reachable prefix of length `prefix.len() + 1`.
pub(crate) fn next_members(class: &TaskClass, prefix: &[u32]) -> std::ops::RangeInclusive<u32> {
    let d = class.subtasks_per_step() as u32;
    match class.admission() {
        TaskAdmission::Product => 0..=d - 1,
        TaskAdmission::StrictlyIncreasing => {
            let t = prefix.len() as u32;
            let k = class.steps() as u32;
            let lo = prefix.last().map_or(0, |&v| v + 1);
            lo..=d - k + t
        }
    }
}

/// All reachable truth prefixes of length `len`, in lexicographic order.
pub(crate) fn reachable_prefixes(class: &TaskClass, len: usize) -> Vec<Vec<u32>> {
    fn walk(class: &TaskClass, len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for id in next_members(class, cur) {
            cur.push(id);
            walk(class, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(class, len, &mut Vec::with_capacity(len), &mut out);
    out
}

fn update(best: &mut Option<MarginWitness>, candidate: MarginWitness) {
    if best.as_ref().is_none_or(|b| candidate.tv < b.tv) {
        *best = Some(candidate);
    }
}

/// Exact margins by brute force over the first `max_depth` steps.
pub fn estimate_margin(class: &TaskClass, max_depth: usize) -> Result<MarginReport> {
    class.input_space().exact_len()?;
    let depth = max_depth.min(class.steps());
    let mut per_step = Vec::with_capacity(depth);
    let mut c_best: Option<MarginWitness> = None;
    let mut r_best: Option<MarginWitness> = None;

    for t in 0..depth {
        let mut c_step: Option<MarginWitness> = None;
        let mut r_step: Option<MarginWitness> = None;
        let xi = class.hypotheses(t).len() as u32;
        for prefix in reachable_prefixes(class, t) {
            let truths: Vec<u32> = next_members(class, &prefix).collect();
            for &a in &truths {
                for b in 0..xi {
                    // A truth member unreachable after this prefix still
                    // competes as a hypothesis, so it only counts towards r.
                    let both_truth = truths.contains(&b);
                    if b == a || (both_truth && b < a) {
                        continue;
                    }
                    let tv = contrast(class, &prefix, a, b)?.tv;
                    if tv == 0.0 {
                        return Err(ArcError::NotIdentifiable {
                            step: t + 1,
                            prefix: prefix.iter().map(|v| v + 1).collect(),
                            a: a + 1,
                            b: b + 1,
                        });
                    }
                    let witness = MarginWitness {
                        step: t,
                        prefix: prefix.clone(),
                        a,
                        b,
                        tv,
                    };
                    if both_truth {
                        update(&mut c_step, witness.clone());
                    }
                    update(&mut r_step, witness);
                }
            }
        }
        per_step.push(StepMargin {
            step: t,
            c: c_step.as_ref().map(|w| w.tv),
            r: r_step.as_ref().map(|w| w.tv),
        });
        if let Some(w) = c_step {
            update(&mut c_best, w);
        }
        if let Some(w) = r_step {
            update(&mut r_best, w);
        }
    }

    Ok(MarginReport {
        c: c_best.as_ref().map(|w| w.tv),
        r: r_best.as_ref().map(|w| w.tv),
        per_step,
        c_witness: c_best,
        r_witness: r_best,
        depth,
        analytic: false,
    })
}

/// The closed-form parity margins: `c = 1/2`, and `r = 1/2` without decoys.
/// With decoys, `r` comes from [`estimate_margin`].
pub fn parity_margin(class: &TaskClass) -> Result<MarginReport> {
    if class.family() != FamilyTag::Parity {
        return Err(ArcError::Unsupported("the closed-form parity margin".into()));
    }
    let c = class.analytic_margin().unwrap_or(0.5);
    let has_decoys = class.max_hypotheses() > class.subtasks_per_step();
    let (r, r_witness) = if has_decoys {
        let est = estimate_margin(class, class.steps())?;
        (est.r, est.r_witness)
    } else {
        (Some(c), None)
    };
    Ok(MarginReport {
        c: Some(c),
        r,
        per_step: (0..class.steps())
            .map(|step| StepMargin {
                step,
                c: Some(c),
                r: if has_decoys { None } else { Some(c) },
            })
            .collect(),
        c_witness: None,
        r_witness,
        depth: class.steps(),
        analytic: true,
    })
}
