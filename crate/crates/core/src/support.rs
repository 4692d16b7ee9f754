//! Exact enumeration of joint supports `P_{θ_{1:t}}(x, y_{1:t})` and of the
//! pairwise quantities (TV, expected test statistics) built on them.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::class::TaskClass;
use crate::error::Result;
use crate::space::{Input, InputSpace, Token};
use crate::subtask::SubtaskHypothesis;

/// One support point with its joint probability.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportPoint {
    pub x: Input,
    pub y: Vec<Token>,
    pub prob: f64,
}

/// Calls `f(y_{<t}, p)` for every prefix `y_{<t}` with positive conditional
/// probability `p` under `path` (without the `P(x)` factor).
pub(crate) fn for_each_prefix<F>(class: &TaskClass, path: &[u32], x: &Input, buf: &mut Vec<Token>, f: &mut F)
where
    F: FnMut(&[Token], f64),
{
    fn walk<F: FnMut(&[Token], f64)>(
        class: &TaskClass,
        path: &[u32],
        x: &Input,
        buf: &mut Vec<Token>,
        p: f64,
        f: &mut F,
    ) {
        let t = buf.len();
        if t == path.len() {
            f(buf, p);
            return;
        }
        let h = class.hypothesis(t, path[t]);
        if let Some(token) = h.deterministic_output(x, buf) {
            buf.push(token);
            walk(class, path, x, buf, p, f);
            buf.pop();
            return;
        }
        for &(token, q) in h.outcomes(x, buf).as_slice() {
            if q > 0.0 {
                buf.push(token);
                walk(class, path, x, buf, p * q, f);
                buf.pop();
            }
        }
    }
    buf.clear();
    walk(class, path, x, buf, 1.0, f);
}

/// Streams every support point of `P_{path}` with its joint probability.
pub fn for_each_support_point<F>(class: &TaskClass, path: &[u32], mut f: F) -> Result<()>
where
    F: FnMut(&Input, &[Token], f64),
{
    class.validate_path(path)?;
    let space = class.input_space();
    let n = space.exact_len()?;
    let px = space.prob();
    let mut buf = Vec::with_capacity(path.len());
    for i in 0..n {
        let x = space.input_at(i);
        for_each_prefix(class, path, &x, &mut buf, &mut |y, p| f(&x, y, px * p));
    }
    Ok(())
}

/// The full support of `P_{path}` as a list.
pub fn enumerate_support(class: &TaskClass, path: &[u32]) -> Result<Vec<SupportPoint>> {
    let mut out = Vec::new();
    for_each_support_point(class, path, |x, y, prob| {
        out.push(SupportPoint {
            x: *x,
            y: y.to_vec(),
            prob,
        })
    })?;
    Ok(out)
}

/// TV and the expected test statistics of a pair `P = (prefix, a)`,
/// `Q = (prefix, b)` at step `t = prefix.len()`.
///
/// With `s(z) = -1` when `P(z) < Q(z)` and `+1` otherwise,
/// `mu_p = Σ P(z) s(z)` and `mu_q = Σ Q(z) s(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contrast {
    pub tv: f64,
    pub mu_p: f64,
    pub mu_q: f64,
}

#[inline]
fn sign(p: f64, q: f64) -> f64 {
    if p < q {
        -1.0
    } else {
        1.0
    }
}

/// The inputs a set of hypotheses can tell apart, with the mass of each.
///
/// On `{0,1}^d` only the coordinates some hypothesis reads matter; the rest
/// factor out of every joint probability, so sums over the reduced cube with
/// mass `2^-m` equal the full sums exactly.
enum Inputs {
    Full { n: u64, px: f64 },
    Cube { mask: u64, px: f64 },
}

impl Inputs {
    fn new(class: &TaskClass, hyps: &[&SubtaskHypothesis]) -> Result<Self> {
        let space = class.input_space();
        if let InputSpace::Binary { d } = *space {
            let mask = hyps.iter().try_fold(0u64, |m, h| h.input_mask().map(|v| m | v));
            if let Some(mask) = mask.filter(|m| m.count_ones() < d) {
                return Ok(Inputs::Cube {
                    mask,
                    px: (-(mask.count_ones() as f64)).exp2(),
                });
            }
        }
        Ok(Inputs::Full {
            n: space.exact_len()?,
            px: space.prob(),
        })
    }

    fn px(&self) -> f64 {
        match *self {
            Inputs::Full { px, .. } | Inputs::Cube { px, .. } => px,
        }
    }

    fn count(&self) -> u64 {
        match *self {
            Inputs::Full { n, .. } => n,
            Inputs::Cube { mask, .. } => 1 << mask.count_ones(),
        }
    }

    fn for_each(&self, space: &InputSpace, mut f: impl FnMut(Input)) {
        match *self {
            Inputs::Full { n, .. } => (0..n).for_each(|i| f(space.input_at(i))),
            Inputs::Cube { mask, .. } => {
                // every submask of `mask`
                let mut sub = 0u64;
                loop {
                    f(Input::Bits(sub));
                    sub = sub.wrapping_sub(mask) & mask;
                    if sub == 0 {
                        break;
                    }
                }
            }
        }
    }
}

/// Exact [`Contrast`] by enumeration of the union of both supports.
pub fn contrast(class: &TaskClass, prefix: &[u32], a: u32, b: u32) -> Result<Contrast> {
    let t = prefix.len();
    let mut full_a = prefix.to_vec();
    full_a.push(a);
    let mut full_b = prefix.to_vec();
    full_b.push(b);
    class.validate_path(&full_a)?;
    class.validate_path(&full_b)?;

    let space = class.input_space();
    let ha = class.hypothesis(t, a);
    let hb = class.hypothesis(t, b);
    let steps: Vec<_> = prefix.iter().enumerate().map(|(s, &id)| class.hypothesis(s, id)).collect();
    let mut all = steps.clone();
    all.extend([ha, hb]);
    let inputs = Inputs::new(class, &all)?;
    let px = inputs.px();
    let mut buf = Vec::with_capacity(t + 1);

    if all.iter().all(|h| h.is_deterministic()) {
        // One support point per input on each side: count agreements and
        // scale once, which is exact for dyadic input masses.
        let mut disagree = 0u64;
        inputs.for_each(space, |x| {
            buf.clear();
            for h in &steps {
                let y = h.deterministic_output(&x, &buf).expect("deterministic hypothesis");
                buf.push(y);
            }
            disagree += (ha.deterministic_output(&x, &buf) != hb.deterministic_output(&x, &buf)) as u64;
        });
        let n = inputs.count();
        let agree = n - disagree;
        return Ok(Contrast {
            tv: disagree as f64 * px,
            mu_p: n as f64 * px,
            mu_q: (agree as f64 - disagree as f64) * px,
        });
    }

    let (mut tv, mut mu_p, mut mu_q) = (0.0, 0.0, 0.0);
    inputs.for_each(space, |x| {
        for_each_prefix(class, prefix, &x, &mut buf, &mut |y, pp| {
            let base = px * pp;
            match (ha.deterministic_output(&x, y), hb.deterministic_output(&x, y)) {
                (Some(ya), Some(yb)) => {
                    if ya == yb {
                        mu_p += base;
                        mu_q += base;
                    } else {
                        // P(z_a) = base > Q(z_a) = 0; P(z_b) = 0 < Q(z_b) = base.
                        tv += base;
                        mu_p += base;
                        mu_q -= base;
                    }
                }
                _ => {
                    let oa = ha.outcomes(&x, y);
                    let ob = hb.outcomes(&x, y);
                    let mut visit = |token: Token| {
                        let p = base * oa.prob(token);
                        let q = base * ob.prob(token);
                        let s = sign(p, q);
                        tv += 0.5 * (p - q).abs();
                        mu_p += p * s;
                        mu_q += q * s;
                    };
                    for &(token, _) in oa.as_slice() {
                        visit(token);
                    }
                    for &(token, _) in ob.as_slice() {
                        if !oa.as_slice().iter().any(|(u, _)| *u == token) {
                            visit(token);
                        }
                    }
                }
            }
        });
    });
    Ok(Contrast { tv, mu_p, mu_q })
}

/// Monte Carlo estimate of a [`Contrast`] from `samples` draws of each side.
/// Only the expectations are estimated; `tv` is `|mu_p - mu_q| / 2`.
pub fn estimate_contrast<R: RngCore + ?Sized>(
    class: &TaskClass,
    prefix: &[u32],
    a: u32,
    b: u32,
    samples: usize,
    rng: &mut R,
) -> Result<Contrast> {
    if samples == 0 {
        return Err(crate::error::ArcError::EmptySample);
    }
    let mut full_a = prefix.to_vec();
    full_a.push(a);
    let mut full_b = prefix.to_vec();
    full_b.push(b);
    class.validate_path(&full_a)?;
    class.validate_path(&full_b)?;
    let space = class.input_space();
    let side = |path: &[u32], rng: &mut R| {
        let mut acc = 0.0;
        for _ in 0..samples {
            let x = space.sample(rng);
            let y = class.sample_path(path, &x, rng);
            acc += sign(class.joint_prob(&full_a, &x, &y), class.joint_prob(&full_b, &x, &y));
        }
        acc / samples as f64
    };
    let mu_p = side(&full_a, rng);
    let mu_q = side(&full_b, rng);
    Ok(Contrast {
        tv: 0.5 * (mu_p - mu_q).abs(),
        mu_p,
        mu_q,
    })
}
