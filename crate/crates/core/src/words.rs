//! Freely reduced words: the elements of a free group of finite rank.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest supported alphabet; generators display as `a..z`.
pub const MAX_RANK: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("operation undefined on the identity word")]
    IdentityWord,
    #[error("rank {0} outside 1..={MAX_RANK}")]
    BadRank(usize),
}

/// A generator or its formal inverse.
///
/// Letters order as `a < a^-1 < b < b^-1 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u8,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        assert!(generator < 256, "generator index out of range");
        Letter { generator: generator as u8, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> usize {
        self.generator as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// +1 for a generator, -1 for an inverse.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    pub fn name(self) -> String {
        generator_name(self.generator())
    }
}

pub fn generator_name(g: usize) -> String {
    if g < MAX_RANK {
        ((b'a' + g as u8) as char).to_string()
    } else {
        format!("x{g}")
    }
}

/// A freely reduced word. The empty word is the identity.
///
/// Ordered shortlex: shorter words first, then lexicographically by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn generator(g: usize) -> Self {
        Word::letter(Letter::pos(g))
    }

    /// `g^n` for a single generator.
    pub fn generator_power(g: usize, n: i64) -> Self {
        let l = Letter::new(g, n < 0);
        Word { letters: vec![l; n.unsigned_abs() as usize] }
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last().is_some_and(|&last| last.cancels(l)) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Highest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator()).max()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// True when the concatenation `self · other` needs no cancellation.
    pub fn joins_reduced(&self, other: &Word) -> bool {
        match (self.last(), other.first()) {
            (Some(x), Some(y)) => !x.cancels(y),
            _ => true,
        }
    }

    /// `self` is an initial segment of `w` (identity and `w` itself included).
    pub fn is_prefix_of(&self, w: &Word) -> bool {
        w.letters.starts_with(&self.letters)
    }

    pub fn is_suffix_of(&self, w: &Word) -> bool {
        w.letters.ends_with(&self.letters)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { letters: self.letters[..len].to_vec() }
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word { letters: self.letters[self.letters.len() - len..].to_vec() }
    }

    /// All prefixes, shortest first, from `1` to `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |k| self.prefix(k))
    }

    /// All suffixes, shortest first, from `1` to `self`.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |k| self.suffix(k))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => !f.cancels(l),
            _ => true,
        }
    }

    /// Writes `self = p^-1 · s · p` with `s` cyclically reduced and `p` maximal.
    pub fn cyclic_decomposition(&self) -> Result<(Word, Word), WordError> {
        if self.is_identity() {
            return Err(WordError::IdentityWord);
        }
        let n = self.len();
        let mut k = 0;
        while 2 * (k + 1) < n + 1 && self.letters[k].cancels(self.letters[n - 1 - k]) {
            k += 1;
        }
        let p = self.suffix(k);
        let s = Word { letters: self.letters[k..n - k].to_vec() };
        Ok((p, s))
    }

    /// Returns `(r, m)` with `self = r^m`, `m > 0` maximal.
    pub fn primitive_root(&self) -> Result<(Word, u32), WordError> {
        let (p, s) = self.cyclic_decomposition()?;
        let n = s.len();
        let period = (1..=n)
            .find(|&d| n % d == 0 && (d..n).all(|i| s.letters[i] == s.letters[i - d]))
            .expect("full length is always a period");
        let core = s.prefix(period);
        let root = p.inverse().mul(&core).mul(&p);
        Ok((root, (n / period) as u32))
    }

    /// Exponent vector in the abelianization, length `rank`.
    pub fn abelianize(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for l in &self.letters {
            v[l.generator()] += l.sign();
        }
        v
    }
}

impl fmt::Display for Word {
    /// Canonical text: runs of one letter collapse to `x^n`, inverses use `^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64 * l.sign();
            if run == 1 {
                write!(f, "{}", l.name())?;
            } else {
                write!(f, "{}^{}", l.name(), run)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Ambient alphabet of a given rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    rank: usize,
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet { rank: 2 }
    }
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self, WordError> {
        if rank == 0 || rank > MAX_RANK {
            return Err(WordError::BadRank(rank));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Letters in their canonical order.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.rank).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }

    /// Every reduced word of length at most `max_len`, in shortlex order.
    pub fn words_up_to(self, max_len: usize) -> Vec<Word> {
        let mut all = vec![Word::identity()];
        let mut layer = vec![Word::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for l in self.letters() {
                    if w.last().is_some_and(|last| last.cancels(l)) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(Word { letters });
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }
}
