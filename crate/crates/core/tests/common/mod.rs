//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the library's support enumeration, contrast, pmf, or
//! margin code. Subtasks are recomputed from their descriptors and joint
//! probabilities are built over the full product `X × 𝒴^t`.
#![allow(dead_code)]

use std::collections::HashMap;

use arc_lab::families::FamilyConfig;
use arc_lab::subtask::{ArithOp, HypothesisDescriptor};
use arc_lab::{Input, TaskClass};

/// Running XOR over `indices`, `y_t = x_{s_1} ⊕ .. ⊕ x_{s_t}`.
pub fn parity_chain(bits: u64, indices: &[u32]) -> Vec<u32> {
    let mut acc = 0u32;
    indices
        .iter()
        .map(|&i| {
            acc ^= ((bits >> i) & 1) as u32;
            acc
        })
        .collect()
}

/// `((x_0 op_1 x_1) op_2 x_2) ..`, recording every partial value.
pub fn arithmetic_chain(bits: u64, ops: &[char]) -> Vec<u32> {
    let bit = |i: usize| ((bits >> i) & 1) as u32;
    let mut acc = bit(0);
    ops.iter()
        .enumerate()
        .map(|(s, op)| {
            acc = match op {
                '+' => acc + bit(s + 1),
                'x' => acc * bit(s + 1),
                _ => unreachable!(),
            };
            acc
        })
        .collect()
}

/// Surface tokens of `meaning` along `targets`, token = `language · M + perm[language][meaning]`.
pub fn translation_chain(perms: &[Vec<u32>], meaning: u32, targets: &[u32]) -> Vec<u32> {
    let m = perms[0].len() as u32;
    targets
        .iter()
        .map(|&l| l * m + perms[l as usize][meaning as usize])
        .collect()
}

fn lexicons(class: &TaskClass) -> Option<Vec<Vec<u32>>> {
    match class.config() {
        FamilyConfig::Translation(t) => Some(t.resolved_lexicons()),
        _ => None,
    }
}

/// `P(y | x, prefix)` for the member `id` at `step`, from its descriptor.
pub fn oracle_pmf(class: &TaskClass, step: usize, id: u32, x: &Input, prefix: &[u32], y: u32) -> f64 {
    let prev = prefix.last().copied();
    let bit = |i: u32| match x {
        Input::Bits(b) => ((b >> i) & 1) as u32,
        Input::Word { .. } => panic!("bit of a word input"),
    };
    let det = |out: u32| (out == y) as u8 as f64;
    match class.hypothesis(step, id).descriptor() {
        HypothesisDescriptor::Xor { index } => det(prev.unwrap_or(0) ^ bit(index)),
        HypothesisDescriptor::NegatedXor { index } => det(1 ^ prev.unwrap_or(0) ^ bit(index)),
        HypothesisDescriptor::FreshBit { index } => det(bit(index)),
        HypothesisDescriptor::NoisyXor { index, flip_log2 } => {
            let flip = 0.5f64.powi(flip_log2 as i32);
            if y == prev.unwrap_or(0) ^ bit(index) {
                1.0 - flip
            } else if y == 1 ^ prev.unwrap_or(0) ^ bit(index) {
                flip
            } else {
                0.0
            }
        }
        HypothesisDescriptor::Arithmetic { op } => {
            let (lhs, rhs) = match prev {
                None => (bit(0), bit(1)),
                Some(v) => (v, bit(step as u32 + 1)),
            };
            det(match op {
                ArithOp::Add => lhs + rhs,
                ArithOp::Mul => lhs * rhs,
            })
        }
        HypothesisDescriptor::Translate { target } => {
            let perms = lexicons(class).expect("translation config");
            let m = perms[0].len() as u32;
            let meaning = match (prev, x) {
                (None, Input::Word { meaning, .. }) => *meaning,
                (Some(tok), _) => {
                    let lang = tok / m;
                    perms[lang as usize].iter().position(|&v| v == tok % m).unwrap() as u32
                }
                _ => panic!("translation of a bit input"),
            };
            det(target * m + perms[target as usize][meaning as usize])
        }
    }
}

/// Every input of a small class.
pub fn all_inputs(class: &TaskClass) -> Vec<Input> {
    match *class.input_space() {
        arc_lab::InputSpace::Binary { d } => (0..1u64 << d).map(Input::Bits).collect(),
        arc_lab::InputSpace::Words { languages, meanings } => (0..languages)
            .flat_map(|language| (0..meanings).map(move |meaning| Input::Word { language, meaning }))
            .collect(),
    }
}

/// Every `y ∈ 𝒴^t`.
pub fn all_sequences(alphabet: usize, t: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|y| {
                (0..alphabet as u32).map(move |a| {
                    let mut z = y.clone();
                    z.push(a);
                    z
                })
            })
            .collect();
    }
    out
}

/// `P_{path}(x, y)` on the positive part of `X × 𝒴^t`, keyed by `(input index, y)`.
pub fn joint_table(class: &TaskClass, path: &[u32]) -> HashMap<(usize, Vec<u32>), f64> {
    let inputs = all_inputs(class);
    let px = 1.0 / inputs.len() as f64;
    let ys = all_sequences(class.alphabet().size(), path.len());
    let mut out = HashMap::new();
    for (i, x) in inputs.iter().enumerate() {
        for y in &ys {
            let mut p = px;
            for (t, &id) in path.iter().enumerate() {
                p *= oracle_pmf(class, t, id, x, &y[..t], y[t]);
                if p == 0.0 {
                    break;
                }
            }
            if p > 0.0 {
                out.insert((i, y.clone()), p);
            }
        }
    }
    out
}

/// `(TV, mu_P, mu_Q)` for `P = (prefix, a)`, `Q = (prefix, b)` by brute force.
pub fn brute_contrast(class: &TaskClass, prefix: &[u32], a: u32, b: u32) -> (f64, f64, f64) {
    let mut pa = prefix.to_vec();
    pa.push(a);
    let mut pb = prefix.to_vec();
    pb.push(b);
    let p = joint_table(class, &pa);
    let q = joint_table(class, &pb);
    let mut keys: Vec<_> = p.keys().chain(q.keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    let (mut tv, mut mu_p, mut mu_q) = (0.0, 0.0, 0.0);
    for k in keys {
        let (pv, qv) = (p.get(&k).copied().unwrap_or(0.0), q.get(&k).copied().unwrap_or(0.0));
        let s = if pv < qv { -1.0 } else { 1.0 };
        tv += 0.5 * (pv - qv).abs();
        mu_p += s * pv;
        mu_q += s * qv;
    }
    (tv, mu_p, mu_q)
}

/// Brute-force `(c, r)`: minimum TV over distinct truth pairs `(a, b)` that
/// both extend some admitted prefix, and over a truth extension `a` against
/// any other member of `Ξ_t`.
pub fn brute_margins(class: &TaskClass) -> (f64, f64) {
    let tasks = class.enumerate_tasks(1 << 20).unwrap();
    let (mut c, mut r) = (f64::INFINITY, f64::INFINITY);
    for t in 0..class.steps() {
        let mut prefixes: Vec<Vec<u32>> = tasks.iter().map(|task| task.ids()[..t].to_vec()).collect();
        prefixes.sort();
        prefixes.dedup();
        let xi = class.hypotheses(t).len() as u32;
        for prefix in prefixes {
            let mut nexts: Vec<u32> = tasks
                .iter()
                .filter(|task| task.ids()[..t] == prefix[..])
                .map(|task| task.ids()[t])
                .collect();
            nexts.sort();
            nexts.dedup();
            for &a in &nexts {
                for b in (0..xi).filter(|&b| b != a) {
                    let tv = brute_contrast(class, &prefix, a, b).0;
                    r = r.min(tv);
                    if nexts.contains(&b) {
                        c = c.min(tv);
                    }
                }
            }
        }
    }
    (c, r)
}

/// `⌈x⌉` as an integer, for threshold oracles.
pub fn ceil(x: f64) -> u64 {
    x.ceil() as u64
}
