//! Subtask hypotheses: the per-step conditional distributions `P(y_t | x, y_<t)`.

use std::sync::Arc;

use rand::{Rng as _, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};
use crate::space::{Input, Token};

/// Binary operator of the arithmetic family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArithOp {
    Add,
    Mul,
}

impl ArithOp {
    #[inline]
    pub fn apply(self, a: Token, b: Token) -> Token {
        match self {
            ArithOp::Add => a + b,
            ArithOp::Mul => a * b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ArithOp::Add => "+",
            ArithOp::Mul => "x",
        }
    }
}

/// `languages` bijections from meaning ids onto pairwise disjoint surface tokens.
///
/// Language `l` owns tokens `l*M .. (l+1)*M`; within that block the meaning
/// `m` is written as `l*M + perm_l[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    meanings: u32,
    permutations: Vec<Vec<u32>>,
    inverse: Vec<u32>,
}

impl Lexicon {
    pub fn new(permutations: Vec<Vec<u32>>) -> Result<Self> {
        let Some(first) = permutations.first() else {
            return Err(ArcError::InvalidConfig("lexicon needs at least one language".into()));
        };
        let meanings = first.len() as u32;
        if meanings == 0 {
            return Err(ArcError::InvalidConfig("lexicon needs at least one meaning".into()));
        }
        let mut inverse = vec![0u32; permutations.len() * meanings as usize];
        for (lang, perm) in permutations.iter().enumerate() {
            if perm.len() as u32 != meanings {
                return Err(ArcError::InvalidConfig(format!(
                    "lexicon {lang} has {} entries, expected {meanings}",
                    perm.len()
                )));
            }
            let mut hit = vec![false; meanings as usize];
            for (meaning, &slot) in perm.iter().enumerate() {
                if slot >= meanings || hit[slot as usize] {
                    return Err(ArcError::InvalidConfig(format!(
                        "lexicon {lang} is not a bijection"
                    )));
                }
                hit[slot as usize] = true;
                inverse[lang * meanings as usize + slot as usize] = meaning as u32;
            }
        }
        Ok(Self {
            meanings,
            permutations,
            inverse,
        })
    }

    pub fn languages(&self) -> u32 {
        self.permutations.len() as u32
    }

    pub fn meanings(&self) -> u32 {
        self.meanings
    }

    pub fn permutations(&self) -> &[Vec<u32>] {
        &self.permutations
    }

    /// Surface token of `meaning` in `language`.
    #[inline]
    pub fn surface(&self, language: u32, meaning: u32) -> Token {
        language * self.meanings + self.permutations[language as usize][meaning as usize]
    }

    /// `(language, meaning)` of a surface token.
    #[inline]
    pub fn decode(&self, token: Token) -> (u32, u32) {
        (token / self.meanings, self.inverse[token as usize])
    }
}

/// The conditional distribution a hypothesis realizes.
#[derive(Debug, Clone)]
pub enum Subtask {
    /// Step 1: `y = x_i`; later steps: `y = y_{t-1} xor x_i`.
    Xor { index: u32 },
    /// Complement of [`Subtask::Xor`] at the same index.
    NegatedXor { index: u32 },
    /// `y = x_i`, ignoring the previous token.
    FreshBit { index: u32 },
    /// [`Subtask::Xor`] flipped with probability `2^-flip_log2`.
    NoisyXor { index: u32, flip_log2: u8 },
    /// Step 1: `b_1 op b_2`; step `t`: `y_{t-1} op b_{t+1}`.
    Arithmetic { op: ArithOp },
    /// Translates the previous word (or the input word at step 1) into `target`.
    Translate { target: u32, lexicon: Arc<Lexicon> },
}

/// Serializable description of a hypothesis, independent of class internals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HypothesisDescriptor {
    Xor { index: u32 },
    NegatedXor { index: u32 },
    FreshBit { index: u32 },
    NoisyXor { index: u32, flip_log2: u8 },
    Arithmetic { op: ArithOp },
    Translate { target: u32 },
}

/// Up to two weighted outcomes of one conditional draw.
#[derive(Debug, Clone, Copy)]
pub struct Outcomes {
    items: [(Token, f64); 2],
    len: u8,
}

impl Outcomes {
    #[inline]
    pub fn one(token: Token) -> Self {
        Self {
            items: [(token, 1.0), (0, 0.0)],
            len: 1,
        }
    }

    #[inline]
    fn two(a: (Token, f64), b: (Token, f64)) -> Self {
        Self { items: [a, b], len: 2 }
    }

    #[inline]
    pub fn as_slice(&self) -> &[(Token, f64)] {
        &self.items[..self.len as usize]
    }

    #[inline]
    pub fn prob(&self, token: Token) -> f64 {
        self.as_slice()
            .iter()
            .find(|(t, _)| *t == token)
            .map_or(0.0, |(_, p)| *p)
    }
}

/// One member of a subtask family or hypothesis class.
#[derive(Debug, Clone)]
pub struct SubtaskHypothesis {
    id: u32,
    step: usize,
    kind: Subtask,
}

impl SubtaskHypothesis {
    pub fn new(id: u32, step: usize, kind: Subtask) -> Self {
        Self { id, step, kind }
    }

    /// Index within its step's hypothesis class.
    pub fn id(&self) -> u32 {
        self.id
    }

    /// 0-based step.
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn kind(&self) -> &Subtask {
        &self.kind
    }

    pub fn is_deterministic(&self) -> bool {
        !matches!(self.kind, Subtask::NoisyXor { .. })
    }

    pub fn descriptor(&self) -> HypothesisDescriptor {
        match &self.kind {
            Subtask::Xor { index } => HypothesisDescriptor::Xor { index: *index },
            Subtask::NegatedXor { index } => HypothesisDescriptor::NegatedXor { index: *index },
            Subtask::FreshBit { index } => HypothesisDescriptor::FreshBit { index: *index },
            Subtask::NoisyXor { index, flip_log2 } => HypothesisDescriptor::NoisyXor {
                index: *index,
                flip_log2: *flip_log2,
            },
            Subtask::Arithmetic { op } => HypothesisDescriptor::Arithmetic { op: *op },
            Subtask::Translate { target, .. } => HypothesisDescriptor::Translate { target: *target },
        }
    }

    /// Binary coordinates the output can depend on, besides the prefix.
    /// `None` for word inputs.
    pub fn input_mask(&self) -> Option<u64> {
        match &self.kind {
            Subtask::Xor { index }
            | Subtask::NegatedXor { index }
            | Subtask::FreshBit { index }
            | Subtask::NoisyXor { index, .. } => Some(1 << index),
            // step s folds in bit s + 1 (and step 0 also reads bit 0)
            Subtask::Arithmetic { .. } => Some(if self.step == 0 { 0b11 } else { 1 << (self.step + 1) }),
            Subtask::Translate { .. } => None,
        }
    }

    /// Short human-readable name, 1-indexed where the kind has an index.
    pub fn label(&self) -> String {
        match &self.kind {
            Subtask::Xor { index } => format!("xor[{}]", index + 1),
            Subtask::NegatedXor { index } => format!("not-xor[{}]", index + 1),
            Subtask::FreshBit { index } => format!("bit[{}]", index + 1),
            Subtask::NoisyXor { index, flip_log2 } => {
                format!("noisy-xor[{}]/2^{flip_log2}", index + 1)
            }
            Subtask::Arithmetic { op } => op.symbol().to_string(),
            Subtask::Translate { target, .. } => format!("to-L{}", target + 1),
        }
    }

    /// The token emitted given `(x, y_<t)`, when the hypothesis is deterministic.
    #[inline]
    pub fn deterministic_output(&self, x: &Input, prefix: &[Token]) -> Option<Token> {
        let prev = prefix.last().copied();
        Some(match &self.kind {
            Subtask::Xor { index } => prev.unwrap_or(0) ^ x.bit(*index),
            Subtask::NegatedXor { index } => 1 ^ prev.unwrap_or(0) ^ x.bit(*index),
            Subtask::FreshBit { index } => x.bit(*index),
            Subtask::NoisyXor { .. } => return None,
            Subtask::Arithmetic { op } => {
                let (lhs, operand) = match prev {
                    None => (x.bit(0), 1),
                    Some(y) => (y, self.step as u32 + 1),
                };
                op.apply(lhs, x.bit(operand))
            }
            Subtask::Translate { target, lexicon } => {
                let meaning = match (prev, x) {
                    (Some(y), _) => lexicon.decode(y).1,
                    (None, Input::Word { meaning, .. }) => *meaning,
                    (None, Input::Bits(_)) => return None,
                };
                lexicon.surface(*target, meaning)
            }
        })
    }

    /// The support of `P(. | x, y_<t)` with probabilities.
    #[inline]
    pub fn outcomes(&self, x: &Input, prefix: &[Token]) -> Outcomes {
        match &self.kind {
            Subtask::NoisyXor { index, flip_log2 } => {
                let clean = prefix.last().copied().unwrap_or(0) ^ x.bit(*index);
                let flip = (-(*flip_log2 as f64)).exp2();
                if flip >= 1.0 {
                    Outcomes::one(1 ^ clean)
                } else {
                    Outcomes::two((clean, 1.0 - flip), (1 ^ clean, flip))
                }
            }
            _ => Outcomes::one(
                self.deterministic_output(x, prefix)
                    .expect("deterministic hypothesis applied to a mismatched input"),
            ),
        }
    }

    #[inline]
    pub fn pmf(&self, x: &Input, prefix: &[Token], y: Token) -> f64 {
        match self.deterministic_output(x, prefix) {
            Some(out) => (out == y) as u8 as f64,
            None => self.outcomes(x, prefix).prob(y),
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, x: &Input, prefix: &[Token], rng: &mut R) -> Token {
        if let Some(out) = self.deterministic_output(x, prefix) {
            return out;
        }
        let outcomes = self.outcomes(x, prefix);
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for &(token, p) in outcomes.as_slice() {
            acc += p;
            if u < acc {
                return token;
            }
        }
        outcomes.as_slice().last().map(|(t, _)| *t).unwrap_or(0)
    }
}

/// Role a family plays in a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyRole {
    Truth,
    HypothesisClass,
}

/// The members available at one step.
#[derive(Debug, Clone)]
pub struct SubtaskFamily {
    step: usize,
    role: FamilyRole,
    members: Vec<SubtaskHypothesis>,
}

impl SubtaskFamily {
    pub fn new(step: usize, role: FamilyRole, members: Vec<SubtaskHypothesis>) -> Self {
        debug_assert!(members.iter().enumerate().all(|(i, m)| m.id as usize == i));
        Self { step, role, members }
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn role(&self) -> FamilyRole {
        self.role
    }

    pub fn members(&self) -> &[SubtaskHypothesis] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, id: u32) -> Option<&SubtaskHypothesis> {
        self.members.get(id as usize)
    }

    pub(crate) fn push(&mut self, kind: Subtask) -> u32 {
        let id = self.members.len() as u32;
        self.members.push(SubtaskHypothesis::new(id, self.step, kind));
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyp(step: usize, kind: Subtask) -> SubtaskHypothesis {
        SubtaskHypothesis::new(0, step, kind)
    }

    #[test]
    fn xor_chain() {
        let x = Input::Bits(0b1101); // x1=1, x2=0, x3=1, x4=1
        let step1 = hyp(0, Subtask::Xor { index: 0 });
        let step2 = hyp(1, Subtask::Xor { index: 2 });
        assert_eq!(step1.deterministic_output(&x, &[]), Some(1));
        assert_eq!(step2.deterministic_output(&x, &[1]), Some(0));
        assert_eq!(hyp(1, Subtask::NegatedXor { index: 2 }).deterministic_output(&x, &[1]), Some(1));
        assert_eq!(hyp(1, Subtask::FreshBit { index: 1 }).deterministic_output(&x, &[1]), Some(0));
    }

    #[test]
    fn arithmetic_operands_follow_step() {
        // b = (1,1,1,0), S = (+, x, +)
        let x = Input::Bits(0b0111);
        let add0 = hyp(0, Subtask::Arithmetic { op: ArithOp::Add });
        let mul1 = hyp(1, Subtask::Arithmetic { op: ArithOp::Mul });
        let add2 = hyp(2, Subtask::Arithmetic { op: ArithOp::Add });
        let y1 = add0.deterministic_output(&x, &[]).unwrap();
        let y2 = mul1.deterministic_output(&x, &[y1]).unwrap();
        let y3 = add2.deterministic_output(&x, &[y1, y2]).unwrap();
        assert_eq!((y1, y2, y3), (2, 2, 2));
    }

    #[test]
    fn noisy_xor_is_normalized() {
        let h = hyp(1, Subtask::NoisyXor { index: 0, flip_log2: 2 });
        let x = Input::Bits(1);
        let total: f64 = (0..2).map(|y| h.pmf(&x, &[0], y)).sum();
        assert_eq!(total, 1.0);
        assert_eq!(h.pmf(&x, &[0], 1), 0.75);
        assert!(!h.is_deterministic());
    }

    #[test]
    fn lexicon_rejects_non_bijections() {
        assert!(Lexicon::new(vec![vec![0, 0, 1]]).is_err());
        assert!(Lexicon::new(vec![vec![0, 1], vec![1]]).is_err());
        let lex = Lexicon::new(vec![vec![1, 0, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(lex.surface(0, 0), 1);
        assert_eq!(lex.surface(1, 0), 5);
        assert_eq!(lex.decode(5), (1, 0));
        assert_eq!(lex.decode(1), (0, 0));
    }
}
