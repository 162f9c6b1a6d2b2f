//! Words in a free group on `k` generators: free and cyclic reduction,
//! canonical conjugacy-class representatives, and class enumeration.
//!
//! Letters are ordered `g1 < g1^-1 < g2 < g2^-1 < ...`; the canonical form of
//! a conjugacy class is the lexicographically least rotation of its cyclically
//! reduced spelling. Inverse classes are not identified.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One generator or its inverse. Ordering is by generator index, plain
/// letter before inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Self { index, inverse }
    }

    pub fn inverse(self) -> Self {
        Self {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// Position in the letter list `g1, g1^-1, g2, g2^-1, ...`.
    pub fn code(self) -> usize {
        2 * self.index + usize::from(self.inverse)
    }

    pub fn from_code(code: usize) -> Self {
        Self {
            index: code / 2,
            inverse: code % 2 == 1,
        }
    }

    /// All `2k` letters of a rank-`k` free group, in order.
    pub fn alphabet(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank).map(Letter::from_code)
    }

    fn to_char(self) -> char {
        let base = if self.inverse { b'A' } else { b'a' };
        (base + self.index as u8) as char
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Self::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Some(Self::new(c as usize - 'A' as usize, true)),
            _ => None,
        }
    }
}

/// A word in the free group, spelled as a letter sequence. Lowercase letters
/// in the text form are generators, uppercase their inverses: `"aB"` is
/// `g1 g2^-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free reduction: cancel adjacent inverse pairs until none remain.
    pub fn reduced(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word::new(stack)
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Cyclic reduction: freely reduce, then strip inverse first/last pairs.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().letters;
        while w.len() >= 2 && *w.first().unwrap() == w.last().unwrap().inverse() {
            w.pop();
            w.remove(0);
        }
        Word::new(w)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && (self.len() < 2 || self.letters[0] != self.letters[self.len() - 1].inverse())
    }

    pub fn inverse(&self) -> Word {
        Word::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word::new(letters)
    }

    /// The primitive root of a cyclically reduced word: the shortest word
    /// whose power it is. Canonical classes of powers are powers of the
    /// canonical primitive class.
    pub fn primitive_root(&self) -> Word {
        let letters = &self.letters;
        let n = letters.len();
        for d in 1..n {
            if n.is_multiple_of(d) && (0..n).all(|i| letters[i] == letters[i % d]) {
                return Word::new(letters[..d].to_vec());
            }
        }
        self.clone()
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().len() == self.len()
    }

    /// Canonical conjugacy-class representative: the lexicographically least
    /// rotation of the cyclically reduced spelling.
    pub fn canonical_class(&self) -> Word {
        let core = self.cyclically_reduced();
        if core.len() <= 1 {
            return core;
        }
        let letters = &core.letters;
        let n = letters.len();
        let mut best: Option<Vec<Letter>> = None;
        for start in 0..n {
            let rotation: Vec<Letter> = (0..n).map(|i| letters[(start + i) % n]).collect();
            if best.as_ref().is_none_or(|b| rotation < *b) {
                best = Some(rotation);
            }
        }
        Word::new(best.unwrap())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| format!("invalid letter {c:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Word::new)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One canonical representative per conjugacy class of cyclically reduced
/// length between 1 and `max_len`, sorted by (length, spelling).
pub fn enumerate_conjugacy_classes(rank: usize, max_len: usize) -> Vec<Word> {
    let mut classes: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut scratch: Vec<Letter> = Vec::with_capacity(max_len);
    for len in 1..=max_len {
        extend(rank, len, &mut scratch, &mut classes);
    }
    let mut out: Vec<Word> = classes.into_iter().map(Word::new).collect();
    out.sort_by(|a, b| (a.len(), a.letters()).cmp(&(b.len(), b.letters())));
    out
}

fn extend(rank: usize, target: usize, word: &mut Vec<Letter>, out: &mut BTreeSet<Vec<Letter>>) {
    if word.len() == target {
        let w = Word::new(word.clone());
        if w.is_cyclically_reduced() {
            out.insert(w.canonical_class().letters.clone());
        }
        return;
    }
    for l in Letter::alphabet(rank) {
        if word.last() == Some(&l.inverse()) {
            continue;
        }
        word.push(l);
        extend(rank, target, word, out);
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_cancels_inverse_pairs() {
        assert_eq!(w("aAb").reduced(), w("b"));
        assert_eq!(w("abBA").reduced(), Word::empty());
        assert_eq!(w("abA").reduced(), w("abA"));
    }

    #[test]
    fn cyclic_reduction_strips_conjugation() {
        assert_eq!(w("abA").cyclically_reduced(), w("b"));
        assert_eq!(w("abcBA").cyclically_reduced(), w("c"));
        assert!(w("ab").is_cyclically_reduced());
        assert!(!w("abA").is_cyclically_reduced());
    }

    #[test]
    fn canonical_class_is_least_rotation() {
        assert_eq!(w("ba").canonical_class(), w("ab"));
        assert_eq!(w("bab").canonical_class(), w("abb"));
        // Letter order: a < A < b < B.
        assert_eq!(w("bA").canonical_class(), w("Ab"));
    }

    #[test]
    fn words_round_trip_through_text() {
        for s in ["a", "aB", "abAB", "1"] {
            assert_eq!(w(s).to_string(), s);
        }
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w("aB").inverse(), w("bA"));
        assert_eq!(w("aB").concat(&w("aB").inverse()).reduced(), Word::empty());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(w("abab").primitive_root(), w("ab"));
        assert_eq!(w("aaa").primitive_root(), w("a"));
        assert_eq!(w("aab").primitive_root(), w("aab"));
        assert!(w("ab").is_primitive());
        assert!(!w("abab").is_primitive());
    }

    #[test]
    fn class_counts_rank_two() {
        // Oracle: brute force over all strings with free/cyclic reduction
        // (see the acceptance suite for the full comparison).
        assert_eq!(enumerate_conjugacy_classes(2, 1).len(), 4);
        assert_eq!(enumerate_conjugacy_classes(2, 2).len(), 12);
        assert_eq!(enumerate_conjugacy_classes(2, 3).len(), 24);
        assert_eq!(enumerate_conjugacy_classes(2, 4).len(), 50);
        assert_eq!(enumerate_conjugacy_classes(2, 5).len(), 102);
        assert_eq!(enumerate_conjugacy_classes(2, 6).len(), 234);
    }

    #[test]
    fn classes_are_canonical_and_distinct() {
        let classes = enumerate_conjugacy_classes(2, 4);
        for c in &classes {
            assert!(c.is_cyclically_reduced());
            assert_eq!(c, &c.canonical_class());
        }
        let set: BTreeSet<_> = classes.iter().cloned().collect();
        assert_eq!(set.len(), classes.len());
    }

    #[test]
    fn enumeration_is_monotone_in_length() {
        let small = enumerate_conjugacy_classes(2, 3);
        let large = enumerate_conjugacy_classes(2, 5);
        let set: BTreeSet<_> = large.into_iter().collect();
        assert!(small.iter().all(|c| set.contains(c)));
    }
}
