//! Alphabets with formal inversion, words, free reduction and symmetrized
//! presentations.

mod file;

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::{Error, Result};

pub use file::{parse_group_file, GroupFile};

/// Index of a generator in its [`Alphabet`]. The derived order is the
/// alphabet order used for shortlex comparisons.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    pub fn new(index: usize) -> Self {
        Letter(u16::try_from(index).expect("alphabet index exceeds u16"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite sequence of letters. Words carry no reference to their alphabet;
/// rendering and inversion go through [`Alphabet`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn appended(&self, letter: Letter) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.extend_from_slice(&self.0);
        out.push(letter);
        Word(out)
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(other);
        Word(out)
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut out = Vec::with_capacity(self.0.len());
        out.extend_from_slice(&self.0[k..]);
        out.extend_from_slice(&self.0[..k]);
        Word(out)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    /// Shortlex comparison: shorter words first, then lexicographic in the
    /// alphabet order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// An ordered set of generator tokens with a formal inversion.
///
/// The inversion is a fixed-point-free involution on the letters that have a
/// declared inverse. Alphabets used by groups, presentations and stacking
/// structures are *symmetric* (every letter is paired); a partial pairing is
/// only tolerated on the input side of a rewriting system, before
/// minimization closes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    inverse: Vec<Option<Letter>>,
    index: HashMap<String, Letter>,
}

fn check_token(token: &str) -> Result<()> {
    if token.is_empty() {
        return Err(Error::InvalidAlphabet("empty token".into()));
    }
    if token.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(Error::InvalidAlphabet(format!(
            "token `{token}` contains whitespace or '#'"
        )));
    }
    if token == "->" {
        return Err(Error::InvalidAlphabet("`->` is reserved".into()));
    }
    Ok(())
}

impl Alphabet {
    /// Builds an alphabet from tokens (in shortlex order) and declared inverse
    /// pairs. Tokens without a pair are allowed; see [`Alphabet::is_symmetric`].
    pub fn new<T, P>(tokens: T, pairs: P) -> Result<Self>
    where
        T: IntoIterator,
        T::Item: Into<String>,
        P: IntoIterator<Item = (String, String)>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(tokens.len());
        for (i, tok) in tokens.iter().enumerate() {
            check_token(tok)?;
            if index.insert(tok.clone(), Letter::new(i)).is_some() {
                return Err(Error::InvalidAlphabet(format!("duplicate token `{tok}`")));
            }
        }
        let mut inverse = vec![None; tokens.len()];
        for (x, y) in pairs {
            let lx = *index.get(&x).ok_or_else(|| Error::UnknownToken(x.clone()))?;
            let ly = *index.get(&y).ok_or_else(|| Error::UnknownToken(y.clone()))?;
            if lx == ly {
                return Err(Error::InvalidAlphabet(format!(
                    "`{x}` cannot be its own inverse"
                )));
            }
            for (l, tok) in [(lx, &x), (ly, &y)] {
                if inverse[l.index()].is_some() {
                    return Err(Error::InvalidAlphabet(format!(
                        "`{tok}` has more than one inverse"
                    )));
                }
            }
            inverse[lx.index()] = Some(ly);
            inverse[ly.index()] = Some(lx);
        }
        Ok(Alphabet {
            tokens,
            inverse,
            index,
        })
    }

    /// Symmetric alphabet from inverse pairs; tokens are ordered
    /// `x0, y0, x1, y1, ...` in the order the pairs are given.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<Self> {
        let tokens: Vec<String> = pairs
            .iter()
            .flat_map(|(x, y)| [x.to_string(), y.to_string()])
            .collect();
        Alphabet::new(
            tokens,
            pairs.iter().map(|(x, y)| (x.to_string(), y.to_string())),
        )
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone + '_ {
        (0..self.tokens.len()).map(Letter::new)
    }

    pub fn token(&self, letter: Letter) -> &str {
        &self.tokens[letter.index()]
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn letter(&self, token: &str) -> Option<Letter> {
        self.index.get(token).copied()
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.tokens.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.inverse.iter().all(Option::is_some)
    }

    pub fn try_inverse(&self, letter: Letter) -> Option<Letter> {
        self.inverse[letter.index()]
    }

    /// Formal inverse of a letter.
    ///
    /// Panics if the letter has no declared inverse; symmetric alphabets never
    /// hit this.
    pub fn inverse(&self, letter: Letter) -> Letter {
        self.inverse[letter.index()].unwrap_or_else(|| {
            panic!("letter `{}` has no declared inverse", self.token(letter))
        })
    }

    /// Pairs `(x, x^-1)` with `x` the first of the two in alphabet order.
    pub fn inverse_pairs(&self) -> Vec<(Letter, Letter)> {
        self.letters()
            .filter_map(|a| match self.try_inverse(a) {
                Some(b) if a < b => Some((a, b)),
                _ => None,
            })
            .collect()
    }

    /// Parses a whitespace-separated token sequence.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|tok| {
                self.letter(tok)
                    .ok_or_else(|| Error::UnknownToken(tok.to_string()))
            })
            .collect()
    }

    pub fn render(&self, word: &[Letter]) -> String {
        let mut out = String::new();
        for (i, &l) in word.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.token(l));
        }
        out
    }

    pub fn display<'a>(&'a self, word: &'a [Letter]) -> impl fmt::Display + 'a {
        struct Show<'a>(&'a Alphabet, &'a [Letter]);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.render(self.1))
            }
        }
        Show(self, word)
    }

    /// Reverses the word and inverts every letter.
    pub fn formal_inverse(&self, word: &[Letter]) -> Word {
        word.iter().rev().map(|&l| self.inverse(l)).collect()
    }

    pub fn are_inverse(&self, x: Letter, y: Letter) -> bool {
        self.try_inverse(x) == Some(y)
    }

    /// Deletes adjacent pairs `x x^-1` until none remain.
    pub fn free_reduce(&self, word: &[Letter]) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(word.len());
        for &l in word {
            match out.last() {
                Some(&prev) if self.are_inverse(prev, l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self, word: &[Letter]) -> bool {
        word.windows(2).all(|w| !self.are_inverse(w[0], w[1]))
    }

    /// Closure of a set of words under formal inversion, cyclic conjugation
    /// and free reduction, with the empty word discarded.
    pub fn symmetric_closure<'a, I>(&self, words: I) -> BTreeSet<Word>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut closed = BTreeSet::new();
        let mut pending: Vec<Word> = words.into_iter().cloned().collect();
        while let Some(w) = pending.pop() {
            if w.is_empty() || closed.contains(&w) {
                continue;
            }
            let inv = self.formal_inverse(&w);
            let reduced = self.free_reduce(&w);
            for k in 1..w.len() {
                pending.push(w.rotated(k));
            }
            pending.push(inv);
            pending.push(reduced);
            closed.insert(w);
        }
        closed
    }

    /// Returns the alphabet restricted to `keep` (in alphabet order) and the
    /// old-to-new letter map.
    pub fn restricted(&self, keep: &[Letter]) -> Result<(Alphabet, Vec<Option<Letter>>)> {
        let mut kept: Vec<Letter> = keep.to_vec();
        kept.sort();
        kept.dedup();
        let mut map = vec![None; self.len()];
        for (new, &old) in kept.iter().enumerate() {
            map[old.index()] = Some(Letter::new(new));
        }
        let tokens: Vec<String> = kept.iter().map(|&l| self.token(l).to_string()).collect();
        let pairs: Vec<(String, String)> = self
            .inverse_pairs()
            .into_iter()
            .filter(|(x, y)| map[x.index()].is_some() && map[y.index()].is_some())
            .map(|(x, y)| (self.token(x).to_string(), self.token(y).to_string()))
            .collect();
        Ok((Alphabet::new(tokens, pairs)?, map))
    }
}

/// `⟨A | R⟩` with a symmetric alphabet.
#[derive(Clone, Debug)]
pub struct Presentation {
    alphabet: Arc<Alphabet>,
    relators: BTreeSet<Word>,
}

impl Presentation {
    pub fn new(alphabet: Arc<Alphabet>, relators: impl IntoIterator<Item = Word>) -> Result<Self> {
        if !alphabet.is_symmetric() {
            return Err(Error::InvalidAlphabet(
                "a presentation needs every generator paired with an inverse".into(),
            ));
        }
        let relators: BTreeSet<Word> = relators.into_iter().collect();
        for r in &relators {
            if r.is_empty() {
                return Err(Error::Precondition("relators must be nonempty".into()));
            }
            if let Some(l) = r.iter().find(|l| !alphabet.contains(**l)) {
                return Err(Error::Precondition(format!(
                    "relator uses letter index {} outside the alphabet",
                    l.index()
                )));
            }
        }
        Ok(Presentation { alphabet, relators })
    }

    pub fn from_file(file: &GroupFile) -> Result<Self> {
        Presentation::new(Arc::new(file.alphabet.clone()), file.relators.iter().cloned())
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn relators(&self) -> &BTreeSet<Word> {
        &self.relators
    }

    /// Closes the relators under inversion, cyclic conjugation and free
    /// reduction, dropping empty words.
    pub fn symmetrize(&self) -> Presentation {
        Presentation {
            alphabet: Arc::clone(&self.alphabet),
            relators: self.alphabet.symmetric_closure(&self.relators),
        }
    }

    pub fn is_symmetrized(&self) -> bool {
        self.alphabet.symmetric_closure(&self.relators) == self.relators
    }
}
