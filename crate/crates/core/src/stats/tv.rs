use crate::class::TaskClass;
use crate::dataset::Demonstration;
use crate::error::{ArcError, Result};
use crate::support::{contrast, Contrast};

/// Two distributions over a common sample type, with exact expectations.
pub trait DistributionPair {
    type Sample: ?Sized;

    /// `(P(s), Q(s))`.
    fn probs(&self, s: &Self::Sample) -> (f64, f64);

    /// TV and `(mu_p, mu_q)` under the sign rule `-1` iff `P(s) < Q(s)`.
    fn contrast(&self) -> Result<Contrast>;
}

/// Two pmfs on `0..len` given as tables.
#[derive(Debug, Clone, PartialEq)]
pub struct TablePair {
    p: Vec<f64>,
    q: Vec<f64>,
}

impl TablePair {
    pub fn new(p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        if p.len() != q.len() || p.is_empty() {
            return Err(ArcError::InvalidInput("pmf tables must have the same positive length".into()));
        }
        for table in [&p, &q] {
            if table.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
                return Err(ArcError::InvalidInput("pmf entries must lie in [0, 1]".into()));
            }
            let total: f64 = table.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(ArcError::InvalidInput(format!("pmf sums to {total}, not 1")));
            }
        }
        Ok(Self { p, q })
    }

    /// Point mass on 0 versus uniform, both over `{0, .., len-1}`.
    pub fn point_mass_vs_uniform(len: usize) -> Result<Self> {
        let mut p = vec![0.0; len];
        if let Some(first) = p.first_mut() {
            *first = 1.0;
        }
        Self::new(p, vec![1.0 / len as f64; len])
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// The pair with roles exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q.clone(),
            q: self.p.clone(),
        }
    }
}

impl DistributionPair for TablePair {
    type Sample = usize;

    fn probs(&self, s: &usize) -> (f64, f64) {
        (
            self.p.get(*s).copied().unwrap_or(0.0),
            self.q.get(*s).copied().unwrap_or(0.0),
        )
    }

    fn contrast(&self) -> Result<Contrast> {
        let (mut tv, mut mu_p, mut mu_q) = (0.0, 0.0, 0.0);
        for (&p, &q) in self.p.iter().zip(&self.q) {
            let s = if p < q { -1.0 } else { 1.0 };
            tv += 0.5 * (p - q).abs();
            mu_p += p * s;
            mu_q += q * s;
        }
        Ok(Contrast { tv, mu_p, mu_q })
    }
}

/// `P = P_{prefix, a}` and `Q = P_{prefix, b}` on `(x, y_{1:t})`.
///
/// Samples are demonstrations; only their first `t` tokens are read.
#[derive(Debug, Clone)]
pub struct PrefixPair<'a> {
    class: &'a TaskClass,
    path_p: Vec<u32>,
    path_q: Vec<u32>,
    known: Option<Contrast>,
}

impl<'a> PrefixPair<'a> {
    pub fn new(class: &'a TaskClass, prefix: &[u32], a: u32, b: u32) -> Result<Self> {
        let mut path_p = prefix.to_vec();
        path_p.push(a);
        let mut path_q = prefix.to_vec();
        path_q.push(b);
        class.validate_path(&path_p)?;
        class.validate_path(&path_q)?;
        Ok(Self {
            class,
            path_p,
            path_q,
            known: None,
        })
    }

    /// Attaches a contrast computed elsewhere (e.g. from a cache).
    pub fn with_contrast(mut self, known: Contrast) -> Self {
        self.known = Some(known);
        self
    }

    /// 1-based step the pair is compared at.
    pub fn step(&self) -> usize {
        self.path_p.len()
    }
}

impl DistributionPair for PrefixPair<'_> {
    type Sample = Demonstration;

    #[inline]
    fn probs(&self, s: &Demonstration) -> (f64, f64) {
        (
            self.class.joint_prob(&self.path_p, &s.x, &s.y),
            self.class.joint_prob(&self.path_q, &s.x, &s.y),
        )
    }

    fn contrast(&self) -> Result<Contrast> {
        if let Some(c) = self.known {
            return Ok(c);
        }
        let t = self.path_p.len() - 1;
        contrast(self.class, &self.path_p[..t], self.path_p[t], self.path_q[t])
    }
}

/// `TV(P_{prefix,a}, P_{prefix,b})` by exact enumeration.
pub fn tv_exact(class: &TaskClass, prefix: &[u32], a: u32, b: u32) -> Result<f64> {
    Ok(contrast(class, prefix, a, b)?.tv)
}

/// `(mu_p, mu_q)` for `P = (prefix, a)`, `Q = (prefix, b)`.
pub fn expected_statistics(class: &TaskClass, prefix: &[u32], a: u32, b: u32) -> Result<(f64, f64)> {
    let c = contrast(class, prefix, a, b)?;
    Ok((c.mu_p, c.mu_q))
}
