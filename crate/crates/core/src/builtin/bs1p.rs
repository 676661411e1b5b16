//! The solvable Baumslag-Solitar groups `BS(1,p) = <a, t | t a t^-1 = a^p>`
//! with normal forms `t^-i a^m t^k`, where `p` does not divide `m` unless
//! `i = 0` or `k = 0`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::cayley::{EdgeClass, NormalFormOracle};
use crate::stacking::StackingStructure;
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

/// The element `t^-i a^m t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bs1pElement {
    pub i: u64,
    pub m: BigInt,
    pub k: u64,
}

impl Bs1pElement {
    pub fn identity() -> Self {
        Bs1pElement {
            i: 0,
            m: BigInt::zero(),
            k: 0,
        }
    }

    fn normalize(&mut self, p: &BigInt) {
        while self.i > 0 && self.k > 0 && self.m.is_multiple_of(p) {
            self.m /= p;
            self.i -= 1;
            self.k -= 1;
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Gen {
    A,
    AInv,
    T,
    TInv,
}

/// The stacking structure on `BS(1,p)` over `{a, A, t, T}` (capitals are
/// inverses).
#[derive(Clone, Debug)]
pub struct Bs1p {
    p: u64,
    big_p: BigInt,
    alphabet: Arc<Alphabet>,
    letters: [Letter; 4],
}

impl Bs1p {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::Precondition(format!("BS(1,p) needs p >= 2, got {p}")));
        }
        let alphabet = Alphabet::from_pairs(&[("a", "A"), ("t", "T")])?;
        let l = |t: &str| alphabet.letter(t).expect("builtin token");
        let letters = [l("a"), l("A"), l("t"), l("T")];
        Ok(Bs1p {
            p,
            big_p: BigInt::from(p),
            alphabet: Arc::new(alphabet),
            letters,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn gen(&self, l: Letter) -> Gen {
        match self.letters.iter().position(|&x| x == l) {
            Some(0) => Gen::A,
            Some(1) => Gen::AInv,
            Some(2) => Gen::T,
            _ => Gen::TInv,
        }
    }

    fn letter(&self, g: Gen) -> Letter {
        self.letters[g as usize]
    }

    /// Right multiplication by a generator.
    pub fn multiply(&self, g: &mut Bs1pElement, l: Letter) {
        match self.gen(l) {
            Gen::A => g.m += self.big_p.pow(g.k as u32),
            Gen::AInv => g.m -= self.big_p.pow(g.k as u32),
            Gen::T => g.k += 1,
            Gen::TInv => {
                if g.k > 0 {
                    g.k -= 1;
                } else {
                    g.i += 1;
                    g.m *= &self.big_p;
                }
            }
        }
        g.normalize(&self.big_p);
    }

    pub fn evaluate(&self, w: &[Letter]) -> Bs1pElement {
        let mut g = Bs1pElement::identity();
        for &l in w {
            self.multiply(&mut g, l);
        }
        g
    }

    /// Reads a normal form word back into its exponents.
    pub fn parse_normal_form(&self, w: &[Letter]) -> Option<Bs1pElement> {
        let mut pos = 0;
        let count = |pos: &mut usize, g: Gen| {
            let start = *pos;
            while *pos < w.len() && self.gen(w[*pos]) == g {
                *pos += 1;
            }
            (*pos - start) as u64
        };
        let i = count(&mut pos, Gen::TInv);
        let up = count(&mut pos, Gen::A);
        let down = if up == 0 { count(&mut pos, Gen::AInv) } else { 0 };
        let k = count(&mut pos, Gen::T);
        if pos != w.len() {
            return None;
        }
        let g = Bs1pElement {
            i,
            m: BigInt::from(up) - BigInt::from(down),
            k,
        };
        let valid = g.i == 0 || g.k == 0 || !g.m.is_multiple_of(&self.big_p);
        valid.then_some(g)
    }

    pub fn render(&self, g: &Bs1pElement) -> Word {
        let mut out = Vec::new();
        out.extend(std::iter::repeat_n(self.letter(Gen::TInv), g.i as usize));
        let count = g.m.magnitude().to_usize().expect("exponent fits in memory");
        let a = if g.m.is_negative() { Gen::AInv } else { Gen::A };
        out.extend(std::iter::repeat_n(self.letter(a), count));
        out.extend(std::iter::repeat_n(self.letter(Gen::T), g.k as usize));
        Word::from(out)
    }

    fn power(&self, g: Gen, n: u64) -> impl Iterator<Item = Letter> {
        std::iter::repeat_n(self.letter(g), n as usize)
    }

    /// The closed-form image for an edge matching the pattern of case (1)
    /// (`y = t^-i a^m`, `m != 0`, `b = t^η`, `-i + η <= 0`) or case (2)
    /// (`y = t^-i a^m t^k`, `k > 0`, `b = a^η`), whether or not the edge is
    /// recursive.
    pub fn formula_image(&self, source: &Word, b: Letter) -> Option<Word> {
        let g = self.parse_normal_form(source)?;
        let p = self.p;
        match self.gen(b) {
            Gen::T | Gen::TInv if g.k == 0 && !g.m.is_zero() => {
                let eta_pos = self.gen(b) == Gen::T;
                if eta_pos && g.i == 0 {
                    return None;
                }
                let nu_pos = g.m.is_positive();
                let (up, down) = if nu_pos { (Gen::A, Gen::AInv) } else { (Gen::AInv, Gen::A) };
                // (a^{-νp} t a^ν)^η
                let word: Vec<Letter> = if eta_pos {
                    self.power(down, p)
                        .chain([self.letter(Gen::T), self.letter(up)])
                        .collect()
                } else {
                    [self.letter(down), self.letter(Gen::TInv)]
                        .into_iter()
                        .chain(self.power(up, p))
                        .collect()
                };
                Some(Word::from(word))
            }
            Gen::A | Gen::AInv if g.k > 0 => {
                let word: Vec<Letter> = std::iter::once(self.letter(Gen::TInv))
                    .chain(self.power(self.gen(b), p))
                    .chain([self.letter(Gen::T)])
                    .collect();
                Some(Word::from(word))
            }
            _ => None,
        }
    }

    /// Case (1) recursive edges, η = 1, need `p | m`: otherwise `t^-i a^m t`
    /// is itself a normal form and the edge is degenerate.
    fn is_recursive(&self, g: &Bs1pElement, b: Letter) -> bool {
        match self.gen(b) {
            Gen::T => g.k == 0 && g.i >= 1 && !g.m.is_zero() && g.m.is_multiple_of(&self.big_p),
            Gen::TInv => g.k == 0 && !g.m.is_zero(),
            Gen::A | Gen::AInv => g.k > 0,
        }
    }
}

impl NormalFormOracle for Bs1p {
    fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    fn normal_form(&self, w: &[Letter]) -> Result<Word> {
        if let Some(l) = w.iter().find(|l| !self.alphabet.contains(**l)) {
            return Err(Error::Precondition(format!("letter index {} is not in {{a, A, t, T}}", l.index())));
        }
        Ok(self.render(&self.evaluate(w)))
    }

    fn extend(&self, y: &Word, a: Letter) -> Result<Word> {
        let mut g = self
            .parse_normal_form(y)
            .unwrap_or_else(|| self.evaluate(y));
        self.multiply(&mut g, a);
        Ok(self.render(&g))
    }
}

impl StackingStructure for Bs1p {
    fn describe(&self) -> String {
        format!("bs1p:{}", self.p)
    }

    fn bound(&self) -> usize {
        self.p as usize + 2
    }

    fn classify(&self, source: &Word, label: Letter) -> Result<EdgeClass> {
        let g = self
            .parse_normal_form(source)
            .ok_or_else(|| Error::Structure(format!("`{}` is not a normal form", self.alphabet.render(source))))?;
        Ok(if self.is_recursive(&g, label) {
            EdgeClass::Recursive
        } else {
            EdgeClass::Degenerate
        })
    }

    fn stacking_map(&self, source: &Word, label: Letter) -> Result<Word> {
        if self.classify(source, label)? != EdgeClass::Recursive {
            return Err(Error::Structure(format!(
                "edge ({}, {}) is degenerate",
                self.alphabet.render(source),
                self.alphabet.token(label)
            )));
        }
        self.formula_image(source, label)
            .ok_or_else(|| Error::Structure("recursive edge outside both cases".into()))
    }

    /// `φ(e) b^-1` for each sign choice in both cases.
    fn relator_schema(&self) -> Option<Vec<Word>> {
        let p = self.p;
        let (a, ai, t, ti) = (
            self.letter(Gen::A),
            self.letter(Gen::AInv),
            self.letter(Gen::T),
            self.letter(Gen::TInv),
        );
        let pw = |l: Letter| self.power(if l == a { Gen::A } else { Gen::AInv }, p);
        let mut out = Vec::new();
        for (up, down) in [(a, ai), (ai, a)] {
            // case (1), η = 1 and η = -1, followed by b^-1
            out.push(pw(down).chain([t, up, ti]).collect());
            out.push([down, ti].into_iter().chain(pw(up)).chain([t]).collect());
            // case (2) followed by a^-η
            out.push(std::iter::once(ti).chain(pw(up)).chain([t, down]).collect());
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &Bs1p, t: &str) -> Word {
        s.alphabet().parse_word(t).unwrap()
    }

    #[test]
    fn normal_forms() {
        let s = Bs1p::new(2).unwrap();
        assert_eq!(s.normal_form(&w(&s, "t a T")).unwrap(), w(&s, "a a"));
        assert_eq!(s.normal_form(&w(&s, "t a T A A")).unwrap(), Word::empty());
        assert_eq!(s.normal_form(&w(&s, "T a a t")).unwrap(), w(&s, "a"));
        assert_eq!(s.normal_form(&w(&s, "T a t")).unwrap(), w(&s, "T a t"));
        assert_eq!(s.normal_form(&w(&s, "a T")).unwrap(), w(&s, "T a a"));
    }

    #[test]
    fn normal_form_words_parse_back() {
        let s = Bs1p::new(3).unwrap();
        for t in ["", "T T a a t", "A A", "t t", "T a a a"] {
            let g = s.evaluate(&w(&s, t));
            assert_eq!(s.parse_normal_form(&s.render(&g)), Some(g));
        }
        assert_eq!(s.parse_normal_form(&w(&s, "T a a a t")), None);
        assert_eq!(s.parse_normal_form(&w(&s, "a T")), None);
    }

    #[test]
    fn stacking_images() {
        let s = Bs1p::new(2).unwrap();
        let (a, t) = (w(&s, "a")[0], w(&s, "t")[0]);
        assert_eq!(s.stacking_map(&w(&s, "t"), a).unwrap(), w(&s, "T a a t"));
        assert_eq!(s.stacking_map(&w(&s, "T a a"), t).unwrap(), w(&s, "A A t a"));
        assert_eq!(s.stacking_map(&w(&s, "A"), w(&s, "T")[0]).unwrap(), w(&s, "a T A A"));
        assert_eq!(s.bound(), 4);
    }

    #[test]
    fn case_one_with_p_not_dividing_m_is_degenerate() {
        let s = Bs1p::new(2).unwrap();
        let t = w(&s, "t")[0];
        let source = w(&s, "T a");
        assert_eq!(s.classify(&source, t).unwrap(), EdgeClass::Degenerate);
        assert_eq!(s.extend(&source, t).unwrap(), w(&s, "T a t"));
        assert_eq!(s.formula_image(&source, t), Some(w(&s, "A A t a")));
        assert!(s.stacking_map(&source, t).is_err());
    }

    #[test]
    fn classification_matches_normal_form_set() {
        use crate::cayley::classify_edge;
        let s = Bs1p::new(2).unwrap();
        let ball = crate::Ball::build(&s, 5, 100_000).unwrap();
        for e in ball.edges() {
            let y = &ball.element(e.source).canonical;
            let target = s.extend(y, e.label).unwrap();
            let generic = classify_edge(y, e.label, &target, s.alphabet());
            assert_eq!(s.classify(y, e.label).unwrap(), generic);
        }
    }

    #[test]
    fn schema_words_are_relators() {
        for p in [2, 3] {
            let s = Bs1p::new(p).unwrap();
            let schema = s.relator_schema().unwrap();
            assert_eq!(schema.len(), 6);
            for r in schema {
                assert_eq!(r.len(), p as usize + 3);
                assert!(s.normal_form(&r).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn rejects_small_p() {
        assert!(Bs1p::new(1).is_err());
    }
}
