//! Input spaces, inputs, and output alphabets.

use rand::{Rng as _, RngCore};
use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};

/// Output token. Its meaning is given by the class's [`OutputAlphabet`].
pub type Token = u32;

/// Exact enumeration (support, TV, expected statistics) refuses spaces larger than this.
pub const EXACT_ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputKind {
    BinaryVector,
    WordToken,
}

/// The finite input space, always carrying the uniform input measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputSpace {
    /// `{0,1}^d`, `1 <= d <= 64`.
    Binary { d: u32 },
    /// `(language, meaning)` pairs.
    Words { languages: u32, meanings: u32 },
}

/// One input. Binary inputs pack bit `i` at position `i` of the word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Input {
    Bits(u64),
    Word { language: u32, meaning: u32 },
}

impl Input {
    /// Coordinate `i` (0-based) of a binary input; 0 for word inputs.
    #[inline]
    pub fn bit(&self, i: u32) -> Token {
        match *self {
            Input::Bits(b) => ((b >> i) & 1) as Token,
            Input::Word { .. } => 0,
        }
    }
}

impl InputSpace {
    pub fn binary(d: u32) -> Result<Self> {
        if d == 0 || d > 64 {
            return Err(ArcError::InvalidConfig(format!(
                "binary dimension must be in 1..=64, got {d}"
            )));
        }
        Ok(InputSpace::Binary { d })
    }

    pub fn words(languages: u32, meanings: u32) -> Result<Self> {
        if languages == 0 || meanings == 0 {
            return Err(ArcError::InvalidConfig(
                "word space needs at least one language and one meaning".into(),
            ));
        }
        Ok(InputSpace::Words { languages, meanings })
    }

    pub fn kind(&self) -> InputKind {
        match self {
            InputSpace::Binary { .. } => InputKind::BinaryVector,
            InputSpace::Words { .. } => InputKind::WordToken,
        }
    }

    /// `|X|`.
    pub fn cardinality(&self) -> u128 {
        match *self {
            InputSpace::Binary { d } => 1u128 << d,
            InputSpace::Words { languages, meanings } => languages as u128 * meanings as u128,
        }
    }

    /// Number of integers in the serialized form of one input.
    pub fn width(&self) -> usize {
        match *self {
            InputSpace::Binary { d } => d as usize,
            InputSpace::Words { .. } => 2,
        }
    }

    /// `|X|` as a count usable for enumeration, or `SpaceTooLarge`.
    pub fn exact_len(&self) -> Result<u64> {
        let size = self.cardinality();
        if size > EXACT_ENUMERATION_CAP as u128 {
            return Err(ArcError::SpaceTooLarge {
                size,
                cap: EXACT_ENUMERATION_CAP,
            });
        }
        Ok(size as u64)
    }

    /// Uniform input probability `1/|X|`.
    pub fn prob(&self) -> f64 {
        match *self {
            InputSpace::Binary { d } => (-(d as f64)).exp2(),
            InputSpace::Words { languages, meanings } => 1.0 / (languages as f64 * meanings as f64),
        }
    }

    pub fn log_prob(&self) -> f64 {
        match *self {
            InputSpace::Binary { d } => -(d as f64) * std::f64::consts::LN_2,
            InputSpace::Words { languages, meanings } => {
                -((languages as f64) * (meanings as f64)).ln()
            }
        }
    }

    /// The `index`-th input in enumeration order.
    #[inline]
    pub fn input_at(&self, index: u64) -> Input {
        match *self {
            InputSpace::Binary { .. } => Input::Bits(index),
            InputSpace::Words { meanings, .. } => Input::Word {
                language: (index / meanings as u64) as u32,
                meaning: (index % meanings as u64) as u32,
            },
        }
    }

    pub fn index_of(&self, x: &Input) -> u64 {
        match (*self, *x) {
            (InputSpace::Binary { .. }, Input::Bits(b)) => b,
            (InputSpace::Words { meanings, .. }, Input::Word { language, meaning }) => {
                language as u64 * meanings as u64 + meaning as u64
            }
            _ => panic!("input shape does not match its space"),
        }
    }

    pub fn validate(&self, x: &Input) -> Result<()> {
        match (*self, *x) {
            (InputSpace::Binary { d }, Input::Bits(b)) => {
                if d < 64 && b >> d != 0 {
                    return Err(ArcError::InvalidInput(format!(
                        "bit vector has bits set beyond dimension {d}"
                    )));
                }
                Ok(())
            }
            (InputSpace::Words { languages, meanings }, Input::Word { language, meaning }) => {
                if language >= languages || meaning >= meanings {
                    return Err(ArcError::InvalidInput(format!(
                        "word ({language}, {meaning}) outside {languages} languages x {meanings} meanings"
                    )));
                }
                Ok(())
            }
            _ => Err(ArcError::InvalidInput("input kind does not match the space".into())),
        }
    }

    /// Draws an input uniformly. Binary inputs take the low `d` bits of one
    /// 64-bit word; word inputs draw a uniform index.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Input {
        match *self {
            InputSpace::Binary { d } => {
                let word = rng.next_u64();
                Input::Bits(if d == 64 { word } else { word & ((1u64 << d) - 1) })
            }
            InputSpace::Words { languages, meanings } => {
                let n = languages as u64 * meanings as u64;
                self.input_at(rng.random_range(0..n))
            }
        }
    }

    /// Serialized integer form: bit list for binary inputs, `[language, meaning]` for words.
    pub fn to_ints(&self, x: &Input) -> Vec<u64> {
        match (*self, *x) {
            (InputSpace::Binary { d }, Input::Bits(b)) => (0..d).map(|i| (b >> i) & 1).collect(),
            (InputSpace::Words { .. }, Input::Word { language, meaning }) => {
                vec![language as u64, meaning as u64]
            }
            _ => panic!("input shape does not match its space"),
        }
    }

    pub fn from_ints(&self, ints: &[u64]) -> Result<Input> {
        let x = match *self {
            InputSpace::Binary { d } => {
                if ints.len() != d as usize {
                    return Err(ArcError::InvalidInput(format!(
                        "expected {d} bits, got {}",
                        ints.len()
                    )));
                }
                let mut b = 0u64;
                for (i, &v) in ints.iter().enumerate() {
                    match v {
                        0 => {}
                        1 => b |= 1 << i,
                        other => {
                            return Err(ArcError::InvalidInput(format!(
                                "bit {i} has value {other}"
                            )))
                        }
                    }
                }
                Input::Bits(b)
            }
            InputSpace::Words { .. } => {
                let [language, meaning] = ints else {
                    return Err(ArcError::InvalidInput(
                        "word input needs [language, meaning]".into(),
                    ));
                };
                let language = u32::try_from(*language)
                    .map_err(|_| ArcError::InvalidInput("language id out of range".into()))?;
                let meaning = u32::try_from(*meaning)
                    .map_err(|_| ArcError::InvalidInput("meaning id out of range".into()))?;
                Input::Word { language, meaning }
            }
        };
        self.validate(&x)?;
        Ok(x)
    }
}

/// The output alphabet `Y` with a label per token.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputAlphabet {
    labels: Vec<String>,
}

impl OutputAlphabet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(ArcError::InvalidConfig(
                "output alphabet needs at least two symbols".into(),
            ));
        }
        Ok(Self { labels })
    }

    /// Alphabet `{0, 1, ..., max}` labelled by the integers themselves.
    pub fn integers(max: u32) -> Result<Self> {
        Self::new((0..=max).map(|v| v.to_string()).collect())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, token: Token) -> Option<&str> {
        self.labels.get(token as usize).map(String::as_str)
    }

    pub fn contains(&self, token: Token) -> bool {
        (token as usize) < self.labels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    /// Returns the same word forever.
    struct Fixed(u64);

    impl rand::RngCore for Fixed {
        fn next_u32(&mut self) -> u32 {
            self.0 as u32
        }
        fn next_u64(&mut self) -> u64 {
            self.0
        }
        fn fill_bytes(&mut self, dst: &mut [u8]) {
            dst.iter_mut().for_each(|b| *b = self.0 as u8);
        }
    }

    #[test]
    fn cardinalities() {
        assert_eq!(InputSpace::binary(10).unwrap().cardinality(), 1024);
        assert_eq!(InputSpace::binary(64).unwrap().cardinality(), 1u128 << 64);
        assert_eq!(InputSpace::words(4, 12).unwrap().cardinality(), 48);
        assert!(InputSpace::binary(0).is_err());
        assert!(InputSpace::binary(65).is_err());
        assert!(InputSpace::words(0, 3).is_err());
    }

    #[test]
    fn single_bit_draw_takes_low_bit() {
        let space = InputSpace::binary(1).unwrap();
        let mut rng = Fixed(0b1011);
        assert_eq!(space.sample(&mut rng), Input::Bits(1));
        assert_eq!(space.to_ints(&Input::Bits(1)), vec![1]);
    }

    #[test]
    fn binary_marginals_are_half() {
        let space = InputSpace::binary(10).unwrap();
        let mut rng = rng_from_seed(7);
        let n = 100_000usize;
        let mut counts = [0usize; 10];
        for _ in 0..n {
            let x = space.sample(&mut rng);
            for (i, c) in counts.iter_mut().enumerate() {
                *c += x.bit(i as u32) as usize;
            }
        }
        let sigma = (n as f64 * 0.25).sqrt();
        for c in counts {
            assert!((c as f64 - n as f64 / 2.0).abs() <= 3.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn word_space_hits_every_pair() {
        let space = InputSpace::words(4, 12).unwrap();
        let mut rng = rng_from_seed(5);
        let mut seen = [false; 48];
        for _ in 0..10_000 {
            let x = space.sample(&mut rng);
            seen[space.index_of(&x) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn exact_cap_is_enforced() {
        assert!(InputSpace::binary(24).unwrap().exact_len().is_ok());
        assert!(matches!(
            InputSpace::binary(25).unwrap().exact_len(),
            Err(ArcError::SpaceTooLarge { .. })
        ));
    }

    #[test]
    fn int_roundtrip_and_validation() {
        let space = InputSpace::binary(4).unwrap();
        let x = space.from_ints(&[1, 0, 1, 1]).unwrap();
        assert_eq!(x, Input::Bits(0b1101));
        assert_eq!(space.to_ints(&x), vec![1, 0, 1, 1]);
        assert!(space.from_ints(&[1, 2, 0, 0]).is_err());
        assert!(space.from_ints(&[1, 0]).is_err());

        let words = InputSpace::words(3, 5).unwrap();
        assert!(words.from_ints(&[2, 4]).is_ok());
        assert!(words.from_ints(&[3, 0]).is_err());
    }

    #[test]
    fn alphabet_needs_two_symbols() {
        assert!(OutputAlphabet::new(vec!["a".into()]).is_err());
        let a = OutputAlphabet::integers(4).unwrap();
        assert_eq!(a.size(), 5);
        assert_eq!(a.label(4), Some("4"));
    }
}
