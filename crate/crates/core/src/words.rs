//! Words in the free monoid on `d` letters.
//!
//! Letters are the integers `1..=d`; the empty word is the unit. Words are
//! ordered degree-lexicographically (shorter words first, then letter by
//! letter with `1 < 2 < ... < d`), which is also the order of the canonical
//! basis of every truncated Fock space in this crate. Because of that order,
//! the words of length at most `n` always form a prefix of the words of
//! length at most `n + 1`, and positions can be computed arithmetically.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u8;

/// A finite word `i_1 i_2 ... i_n` over the letters `1..=d`.
///
/// The alphabet size is not stored here; containers carry it and check words
/// at their boundary.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1), "letters start at 1");
        Word(letters)
    }

    pub fn letter(k: Letter) -> Self {
        Word::new(vec![k])
    }

    /// `k` repeated `times` times.
    pub fn power(k: Letter, times: usize) -> Self {
        Word::new(vec![k; times])
    }

    /// Digit shorthand such as `"121"`; the empty string is the unit. Only
    /// usable for alphabets with at most nine letters.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c.to_digit(10) {
                Some(v) if v >= 1 => Ok(v as Letter),
                _ => Err(Error::Parse(format!("invalid letter `{c}` in word `{s}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn contains(&self, k: Letter) -> bool {
        self.0.contains(&k)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `k` followed by this word.
    pub fn prepend(&self, k: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(k);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// This word followed by `k`.
    pub fn append(&self, k: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(k);
        Word(letters)
    }

    /// Letter reversal `i_1 ... i_n -> i_n ... i_1`.
    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// If `self = prefix · rest`, returns `rest`.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.letters()).map(|r| Word(r.to_vec()))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn check_alphabet(&self, d: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || l as usize > d) {
            Some(&l) => Err(Error::InvalidLetter { letter: l as u32, d }),
            None => Ok(()),
        }
    }

    /// Position of this word in the degree-lexicographic enumeration.
    pub fn index(&self, d: usize) -> usize {
        let within = self
            .0
            .iter()
            .fold(0usize, |acc, &l| acc * d + (l as usize - 1));
        words_up_to(d, self.len() as isize - 1) + within
    }

    /// Inverse of [`Word::index`].
    pub fn from_index(d: usize, mut index: usize) -> Word {
        let mut len = 0;
        let mut block = 1usize;
        while index >= block {
            index -= block;
            block *= d;
            len += 1;
        }
        let mut letters = vec![0; len];
        for slot in letters.iter_mut().rev() {
            *slot = (index % d) as Letter + 1;
            index /= d;
        }
        Word(letters)
    }
}

/// Number of words of length at most `max_len` (zero when `max_len < 0`).
fn words_up_to(d: usize, max_len: isize) -> usize {
    if max_len < 0 {
        return 0;
    }
    let mut total = 0;
    let mut block = 1;
    for _ in 0..=max_len {
        total += block;
        block *= d;
    }
    total
}

/// Number of words of length at most `max_len` over `d` letters.
pub fn word_count(d: usize, max_len: usize) -> usize {
    words_up_to(d, max_len as isize)
}

/// All words of length `<= max_len`, in degree-lexicographic order. Index 0
/// is the empty word.
pub fn enumerate_words(d: usize, max_len: usize) -> Vec<Word> {
    assert!(d >= 1, "alphabet must be non-empty");
    let mut out = vec![Word::empty()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for k in 1..=d {
                let w = out[i].append(k as Letter);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        if self.0.iter().all(|&l| l <= 9) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            f.write_str(&parts.join("."))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct WordVisitor;

        impl<'de> Visitor<'de> for WordVisitor {
            type Value = Word;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of positive letters or a digit string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Word, E> {
                Word::parse(v).map_err(E::custom)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Word, A::Error> {
                let mut letters = Vec::new();
                while let Some(l) = seq.next_element::<u64>()? {
                    if l == 0 || l > Letter::MAX as u64 {
                        return Err(de::Error::custom(format!("invalid letter {l}")));
                    }
                    letters.push(l as Letter);
                }
                Ok(Word(letters))
            }
        }

        deserializer.deserialize_any(WordVisitor)
    }
}

/// Outcome of collapsing `L^{α*} L^β` using that the shifts are isometries
/// with pairwise orthogonal ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Unit,
    /// `L^γ` with `γ` non-empty.
    Analytic(Word),
    /// `L^{δ*}` with `δ` non-empty.
    CoAnalytic(Word),
    Zero,
}

impl Reduction {
    /// Builds a reduction, normalizing an empty analytic or co-analytic word
    /// to [`Reduction::Unit`].
    pub fn analytic(w: Word) -> Self {
        if w.is_empty() {
            Reduction::Unit
        } else {
            Reduction::Analytic(w)
        }
    }

    pub fn coanalytic(w: Word) -> Self {
        if w.is_empty() {
            Reduction::Unit
        } else {
            Reduction::CoAnalytic(w)
        }
    }

    /// Length of the surviving monomial, if any.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Reduction::Unit => Some(0),
            Reduction::Analytic(w) | Reduction::CoAnalytic(w) => Some(w.len()),
            Reduction::Zero => None,
        }
    }
}

/// Reduces `L^{α*} L^β` to one of `I`, `L^γ`, `L^{δ*}` or `0`.
pub fn reduce_adjoint_product(alpha: &Word, beta: &Word) -> Reduction {
    if let Some(gamma) = beta.strip_prefix(alpha) {
        Reduction::analytic(gamma)
    } else if let Some(delta) = alpha.strip_prefix(beta) {
        Reduction::coanalytic(delta)
    } else {
        Reduction::Zero
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(enumerate_words(1, 2), vec![w(""), w("1"), w("11")]);
        assert_eq!(enumerate_words(2, 1), vec![w(""), w("1"), w("2")]);
        assert_eq!(
            enumerate_words(2, 2),
            vec![w(""), w("1"), w("2"), w("11"), w("12"), w("21"), w("22")]
        );
        assert_eq!(enumerate_words(3, 3).len(), (81 - 1) / 2);
        assert_eq!(word_count(1, 5), 6);
        assert_eq!(word_count(2, 8), 511);
    }

    #[test]
    fn enumeration_is_sorted_and_indexed() {
        for d in 1..=3 {
            let words = enumerate_words(d, 4);
            assert!(words.windows(2).all(|p| p[0] < p[1]));
            for (i, word) in words.iter().enumerate() {
                assert_eq!(word.index(d), i);
                assert_eq!(&Word::from_index(d, i), word);
            }
        }
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_adjoint_product(&w(""), &w("12")), Reduction::Analytic(w("12")));
        assert_eq!(reduce_adjoint_product(&w("12"), &w("11")), Reduction::Zero);
        assert_eq!(reduce_adjoint_product(&w("112"), &w("1")), Reduction::CoAnalytic(w("12")));
        assert_eq!(reduce_adjoint_product(&w("21"), &w("21")), Reduction::Unit);
        assert_eq!(Reduction::analytic(Word::empty()), Reduction::Unit);
        assert_eq!(Reduction::coanalytic(Word::empty()), Reduction::Unit);
    }

    #[test]
    fn alphabet_check() {
        assert!(w("123").check_alphabet(3).is_ok());
        assert!(matches!(
            w("13").check_alphabet(2),
            Err(Error::InvalidLetter { letter: 3, d: 2 })
        ));
        assert!(Word::parse("1a").is_err());
        assert!(Word::parse("10").is_err());
    }

    #[test]
    fn serde_forms() {
        let word: Word = serde_json::from_str("[1,2,1]").unwrap();
        assert_eq!(word, w("121"));
        let word: Word = serde_json::from_str("\"121\"").unwrap();
        assert_eq!(word, w("121"));
        let empty: Word = serde_json::from_str("[]").unwrap();
        assert!(empty.is_empty());
        let empty: Word = serde_json::from_str("\"\"").unwrap();
        assert!(empty.is_empty());
        assert_eq!(serde_json::to_string(&w("21")).unwrap(), "[2,1]");
        assert!(serde_json::from_str::<Word>("[0]").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(w("").to_string(), "∅");
        assert_eq!(w("212").to_string(), "212");
        assert_eq!(Word::new(vec![1, 12]).to_string(), "1.12");
    }
}
