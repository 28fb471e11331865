//! Free-group words: free reduction, shortlex enumeration, and evaluation
//! into any group given by generator images.
//!
//! Text syntax: generator `k` is the `k`-th lowercase letter, its inverse the
//! matching uppercase letter, so `"abA"` is `a·b·a⁻¹`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{ParseError, WordError};
use crate::exact::{Matrix, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    /// Position in the letter order `a < b < … < A < B < …`.
    pub fn key(self, rank: usize) -> usize {
        if self.inverse {
            rank + self.generator
        } else {
            self.generator
        }
    }

    fn from_key(key: usize, rank: usize) -> Self {
        if key < rank {
            Letter::new(key, false)
        } else {
            Letter::new(key - rank, true)
        }
    }

    pub fn to_char(self) -> char {
        let base = if self.inverse { b'A' } else { b'a' };
        (base + self.generator as u8) as char
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'a'..='z' => Some(Letter::new(c as usize - 'a' as usize, false)),
            'A'..='Z' => Some(Letter::new(c as usize - 'A' as usize, true)),
            _ => None,
        }
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord::default()
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

    /// Largest generator index used plus one.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// The formal inverse: reversed, each letter inverted.
    pub fn inverse(&self) -> Self {
        ReducedWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &ReducedWord) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reducing(&mut letters, l);
        }
        ReducedWord { letters }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let letters = text
            .chars()
            .map(|c| {
                Letter::from_char(c)
                    .ok_or_else(|| ParseError::Word(text.to_string(), format!("bad letter {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = Vec::with_capacity(letters.len());
        for l in letters {
            push_reducing(&mut out, l);
        }
        Ok(ReducedWord { letters: out })
    }

    /// Parses and additionally insists the text was already reduced.
    pub fn parse_reduced(text: &str) -> Result<Self, ParseError> {
        let w = Self::parse(text)?;
        if w.len() != text.chars().count() {
            return Err(ParseError::Word(text.to_string(), "word is not reduced".into()));
        }
        Ok(w)
    }

    pub fn to_text(&self) -> String {
        self.letters.iter().map(|l| l.to_char()).collect()
    }

    /// Shortlex comparison for the given rank.
    pub fn shortlex_cmp(&self, other: &Self, rank: usize) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let a = self.letters.iter().map(|l| l.key(rank));
            let b = other.letters.iter().map(|l| l.key(rank));
            a.cmp(b)
        })
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&self.to_text())
        }
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ReducedWord({self})")
    }
}

fn push_reducing(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inv()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// Freely reduces a raw letter sequence over an alphabet of the given rank.
pub fn reduce(letters: &[Letter], rank: usize) -> Result<ReducedWord, WordError> {
    let mut out = Vec::with_capacity(letters.len());
    for &l in letters {
        if l.generator >= rank {
            return Err(WordError::GeneratorOutOfRange { index: l.generator, rank });
        }
        push_reducing(&mut out, l);
    }
    Ok(ReducedWord { letters: out })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new(names: Vec<String>) -> Result<Self, WordError> {
        if names.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(WordError::DuplicateName(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// `a, b, c, …` for the given rank (at most 26).
    pub fn standard(rank: usize) -> Result<Self, WordError> {
        if rank == 0 {
            return Err(WordError::EmptyAlphabet);
        }
        if rank > 26 {
            return Err(WordError::GeneratorOutOfRange { index: rank - 1, rank: 26 });
        }
        Ok(Alphabet {
            names: (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Human-readable rendering using the alphabet's names, e.g. `x y x⁻¹`.
    pub fn render(&self, w: &ReducedWord) -> String {
        w.letters()
            .iter()
            .map(|l| {
                let name = &self.names[l.generator];
                if l.inverse {
                    format!("{name}⁻¹")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Number of nonempty reduced words of length exactly `len` over `rank` generators.
pub fn reduced_count(rank: usize, len: usize) -> u128 {
    if len == 0 {
        return 1;
    }
    let r = rank as u128;
    2 * r * (2 * r - 1).pow(len as u32 - 1)
}

/// Reduced words of one fixed length, in shortlex order.
#[derive(Clone, Debug)]
pub struct FixedLengthWords {
    rank: usize,
    keys: Option<Vec<usize>>,
}

impl FixedLengthWords {
    pub fn new(rank: usize, len: usize) -> Self {
        let keys = if rank == 0 || len == 0 {
            None
        } else {
            let mut keys = Vec::with_capacity(len);
            for j in 0..len {
                keys.push(Self::least_after(rank, keys.get(j.wrapping_sub(1)).copied(), 0));
            }
            Some(keys)
        };
        FixedLengthWords { rank, keys }
    }

    fn inverse_key(rank: usize, key: usize) -> usize {
        if key < rank {
            key + rank
        } else {
            key - rank
        }
    }

    /// Least key `>= from` that does not cancel against `prev`.
    fn least_after(rank: usize, prev: Option<usize>, from: usize) -> usize {
        let banned = prev.map(|p| Self::inverse_key(rank, p));
        if Some(from) == banned {
            from + 1
        } else {
            from
        }
    }

    fn advance(&mut self) {
        let rank = self.rank;
        let Some(keys) = self.keys.as_mut() else {
            return;
        };
        let len = keys.len();
        for i in (0..len).rev() {
            let prev = if i == 0 { None } else { Some(keys[i - 1]) };
            let next = Self::least_after(rank, prev, keys[i] + 1);
            if next < 2 * rank {
                keys[i] = next;
                for j in i + 1..len {
                    keys[j] = Self::least_after(rank, Some(keys[j - 1]), 0);
                }
                return;
            }
        }
        self.keys = None;
    }
}

impl Iterator for FixedLengthWords {
    type Item = ReducedWord;

    fn next(&mut self) -> Option<ReducedWord> {
        let keys = self.keys.as_ref()?;
        let word = ReducedWord {
            letters: keys.iter().map(|&k| Letter::from_key(k, self.rank)).collect(),
        };
        self.advance();
        Some(word)
    }
}

/// Every nonempty reduced word of length `<= max_len`, in shortlex order.
pub fn enumerate_reduced(rank: usize, max_len: usize) -> impl Iterator<Item = ReducedWord> {
    (1..=max_len).flat_map(move |len| FixedLengthWords::new(rank, len))
}

/// Elements of a group closed under composition and inversion.
pub trait GroupElement: Clone {
    /// `self ∘ rhs`, i.e. apply `rhs` first.
    fn compose(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// The identity of the group this element lives in.
    fn identity_like(&self) -> Self;
}

impl<T: Scalar> GroupElement for Matrix<T> {
    fn compose(&self, rhs: &Self) -> Self {
        self * rhs
    }

    /// Panics on singular matrices; callers validate generator images first.
    fn inverse(&self) -> Self {
        Matrix::inverse(self).expect("group element must be invertible")
    }

    fn identity_like(&self) -> Self {
        Matrix::identity(self.rows())
    }
}

/// Generator images together with their inverses.
#[derive(Clone, Debug)]
pub struct Images<E> {
    forward: Vec<E>,
    backward: Vec<E>,
}

impl<E: GroupElement> Images<E> {
    pub fn new(images: Vec<E>) -> Result<Self, WordError> {
        if images.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        let backward = images.iter().map(GroupElement::inverse).collect();
        Ok(Images { forward: images, backward })
    }

    pub fn rank(&self) -> usize {
        self.forward.len()
    }

    pub fn letter(&self, l: Letter) -> &E {
        if l.inverse {
            &self.backward[l.generator]
        } else {
            &self.forward[l.generator]
        }
    }

    pub fn identity(&self) -> E {
        self.forward[0].identity_like()
    }

    pub fn evaluate(&self, w: &ReducedWord) -> Result<E, WordError> {
        let mut acc = self.identity();
        for &l in w.letters() {
            if l.generator >= self.rank() {
                return Err(WordError::GeneratorOutOfRange { index: l.generator, rank: self.rank() });
            }
            acc = acc.compose(self.letter(l));
        }
        Ok(acc)
    }
}

/// Homomorphic image of `w` under generator `images`.
pub fn evaluate<E: GroupElement>(w: &ReducedWord, images: &[E]) -> Result<E, WordError> {
    Images::new(images.to_vec())?.evaluate(w)
}

/// Shortlex stream of `(word, value)` pairs, each value built from the value
/// of its prefix with one multiplication.
pub struct WordValues<E> {
    images: Images<E>,
    max_len: usize,
    level: Vec<(ReducedWord, E)>,
    pos: usize,
    len: usize,
}

impl<E: GroupElement> WordValues<E> {
    pub fn new(images: Images<E>, max_len: usize) -> Self {
        WordValues { images, max_len, level: Vec::new(), pos: 0, len: 0 }
    }

    fn next_level(&mut self) {
        let rank = self.images.rank();
        let mut next = Vec::with_capacity(self.level.len().max(1) * (2 * rank));
        if self.len == 0 {
            for key in 0..2 * rank {
                let l = Letter::from_key(key, rank);
                next.push((ReducedWord { letters: vec![l] }, self.images.letter(l).clone()));
            }
        } else {
            for (w, v) in &self.level {
                let last = *w.letters.last().expect("nonempty level");
                for key in 0..2 * rank {
                    let l = Letter::from_key(key, rank);
                    if l == last.inv() {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push((ReducedWord { letters }, v.compose(self.images.letter(l))));
                }
            }
        }
        self.level = next;
        self.pos = 0;
        self.len += 1;
    }
}

impl<E: GroupElement> Iterator for WordValues<E> {
    type Item = (ReducedWord, E);

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos == self.level.len() {
            if self.len == self.max_len {
                return None;
            }
            self.next_level();
        }
        let item = self.level[self.pos].clone();
        self.pos += 1;
        Some(item)
    }
}

/// Shortlex-first nonempty word of length `<= max_len` whose value satisfies
/// `pred`. Each length is searched depth-first, split across threads by
/// two-letter prefix; the result does not depend on scheduling.
pub fn find_first<E, P>(images: &Images<E>, max_len: usize, pred: P) -> Option<(ReducedWord, E)>
where
    E: GroupElement + Send + Sync,
    P: Fn(&ReducedWord, &E) -> bool + Sync,
{
    use rayon::prelude::*;

    let rank = images.rank();
    for len in 1..=max_len {
        let prefixes: Vec<ReducedWord> = FixedLengthWords::new(rank, len.min(2)).collect();
        let hits: Vec<Option<(ReducedWord, E)>> = prefixes
            .par_iter()
            .map(|prefix| {
                let value = images.evaluate(prefix).expect("prefix over the same rank");
                let mut word = prefix.letters.clone();
                search_from(images, len, &mut word, value, &pred)
            })
            .collect();
        if let Some(hit) = hits.into_iter().flatten().next() {
            return Some(hit);
        }
    }
    None
}

fn search_from<E, P>(
    images: &Images<E>,
    len: usize,
    word: &mut Vec<Letter>,
    value: E,
    pred: &P,
) -> Option<(ReducedWord, E)>
where
    E: GroupElement,
    P: Fn(&ReducedWord, &E) -> bool,
{
    if word.len() == len {
        let w = ReducedWord { letters: word.clone() };
        return pred(&w, &value).then_some((w, value));
    }
    let rank = images.rank();
    let last = *word.last().expect("search starts from a nonempty prefix");
    for key in 0..2 * rank {
        let l = Letter::from_key(key, rank);
        if l == last.inv() {
            continue;
        }
        word.push(l);
        let next = value.compose(images.letter(l));
        let found = search_from(images, len, word, next, pred);
        word.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
