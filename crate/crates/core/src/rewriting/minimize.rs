//! Minimization of a complete system: reduced rules, no letters representing
//! the identity, and an inverse-closed alphabet.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::RewritingSystem;
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

impl RewritingSystem {
    /// Returns an equivalent minimal system with the same irreducible words.
    ///
    /// Refuses unless [`RewritingSystem::check_complete`] passes up to
    /// `check_len`. Letters representing the identity are removed. Letters
    /// without a declared inverse are paired with another letter when one
    /// represents their inverse; otherwise a new letter `x^-1` is added with
    /// the rule `x^-1 -> z`, `z` the shortlex least irreducible word
    /// representing the inverse of `x`.
    pub fn minimize(&self, check_len: usize) -> Result<RewritingSystem> {
        let report = self.check_complete(check_len);
        if !report.passed() {
            return Err(Error::NotComplete(report.summary(self.alphabet())));
        }
        let al = self.alphabet();
        for (x, y) in al.inverse_pairs() {
            if !self.reduce(&[x, y])?.is_empty() || !self.reduce(&[y, x])?.is_empty() {
                return Err(Error::Precondition(format!(
                    "declared inverses `{}` and `{}` do not cancel",
                    al.token(x),
                    al.token(y)
                )));
            }
        }

        // Drop rules whose left side contains another left side properly (or
        // repeats an earlier one), then reduce every right side.
        let rules = self.rules();
        let mut kept: Vec<(Word, Word)> = Vec::new();
        let mut seen: BTreeSet<&Word> = BTreeSet::new();
        for (i, r) in rules.iter().enumerate() {
            let redundant = rules.iter().enumerate().any(|(j, s)| {
                i != j && s.lhs.len() < r.lhs.len() && contains(&r.lhs, &s.lhs)
            });
            if redundant || !seen.insert(&r.lhs) {
                continue;
            }
            kept.push((r.lhs.clone(), self.reduce(&r.rhs)?));
        }

        // Remove letters that represent the identity together with their
        // rules `x -> 1`; no other kept rule can mention them.
        let identity: BTreeSet<Letter> = al
            .letters()
            .filter(|&x| kept.iter().any(|(l, r)| l[..] == [x] && r.is_empty()))
            .collect();
        let keep: Vec<Letter> = al.letters().filter(|x| !identity.contains(x)).collect();
        let (restricted, map) = al.restricted(&keep)?;
        let remap = |w: &Word| -> Word { w.iter().map(|l| map[l.index()].expect("kept letter")).collect() };
        let reduced_rules: Vec<(Word, Word)> = kept
            .iter()
            .filter(|(l, _)| !l.iter().any(|x| identity.contains(x)))
            .map(|(l, r)| (remap(l), remap(r)))
            .collect();
        let base = RewritingSystem::new(Arc::new(restricted), reduced_rules)?.with_budget(self.budget());

        base.close_under_inversion()
    }

    fn close_under_inversion(self) -> Result<RewritingSystem> {
        let al = self.alphabet().clone();
        let mut pairs: Vec<(Letter, Letter)> = al.inverse_pairs();
        let mut unpaired: Vec<Letter> = al.letters().filter(|&x| al.try_inverse(x).is_none()).collect();
        let mut lonely = Vec::new();
        while let Some(x) = unpaired.first().copied() {
            unpaired.remove(0);
            let partner = unpaired.iter().position(|&y| {
                matches!(self.reduce(&[x, y]), Ok(w) if w.is_empty())
                    && matches!(self.reduce(&[y, x]), Ok(w) if w.is_empty())
            });
            match partner {
                Some(p) => pairs.push((x, unpaired.remove(p))),
                None => lonely.push(x),
            }
        }
        if lonely.is_empty() && pairs.len() == al.inverse_pairs().len() {
            return Ok(self);
        }

        let mut tokens: Vec<String> = al.tokens().to_vec();
        let mut token_pairs: Vec<(String, String)> = pairs
            .iter()
            .map(|&(x, y)| (al.token(x).to_string(), al.token(y).to_string()))
            .collect();
        let mut rules: Vec<(Word, Word)> = self
            .rules()
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect();
        for &x in &lonely {
            let z = self.inverse_representative(x)?;
            let mut name = format!("{}^-1", al.token(x));
            while tokens.contains(&name) {
                name.push('\'');
            }
            let new = Letter::new(tokens.len());
            tokens.push(name.clone());
            token_pairs.push((al.token(x).to_string(), name));
            rules.push((Word::single(new), z));
        }
        let alphabet = Alphabet::new(tokens, token_pairs)?;
        Ok(RewritingSystem::new(Arc::new(alphabet), rules)?.with_budget(self.budget()))
    }

    /// Shortlex least irreducible word `z` with `x z` reducing to the empty
    /// word. Irreducible words are prefix closed, so the search only extends
    /// irreducible words.
    fn inverse_representative(&self, x: Letter) -> Result<Word> {
        let letters: Vec<Letter> = self.alphabet().letters().collect();
        let mut layer = vec![Word::empty()];
        let mut visited = 0usize;
        loop {
            for z in &layer {
                if self.reduce(&Word::single(x).concat(z))?.is_empty() {
                    return Ok(z.clone());
                }
            }
            let mut next = Vec::new();
            for z in &layer {
                for &l in &letters {
                    let cand = z.appended(l);
                    if self.is_irreducible(&cand) {
                        next.push(cand);
                    }
                }
            }
            visited += next.len();
            if next.is_empty() || visited > self.budget() {
                return Err(Error::Structure(format!(
                    "no irreducible word represents the inverse of `{}`",
                    self.alphabet().token(x)
                )));
            }
            layer = next;
        }
    }
}

fn contains(haystack: &[Letter], needle: &[Letter]) -> bool {
    needle.is_empty() || haystack.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::super::tests::Z2;
    use super::*;

    #[test]
    fn z2_is_already_minimal() {
        let s = RewritingSystem::parse(Z2).unwrap();
        let m = s.minimize(5).unwrap();
        assert_eq!(m.rules(), s.rules());
        assert_eq!(m.alphabet(), s.alphabet());
        assert!(m.is_minimal());
    }

    #[test]
    fn identity_letter_is_removed() {
        let text = format!("{}e ->\ne a -> a\n", Z2.replace("a A b B\n", "a A b B e\n"));
        let s = RewritingSystem::parse(&text).unwrap();
        let m = s.minimize(4).unwrap();
        assert_eq!(m.alphabet().tokens(), ["a", "A", "b", "B"]);
        assert!(m.alphabet().is_symmetric());
        assert_eq!(m.rules().len(), 8);
        assert!(m.is_minimal());
    }

    #[test]
    fn redundant_rules_are_dropped_and_rhs_reduced() {
        // `b a A -> b` is implied by `a A ->`; `b b a -> b a b` has a reducible
        // right side.
        let text = format!("{Z2}b a A -> b\nb b a -> b a b\n");
        let s = RewritingSystem::parse(&text).unwrap();
        let m = s.minimize(4).unwrap();
        assert_eq!(m.rules().len(), 8);
        assert!(m.is_minimal());
    }

    #[test]
    fn missing_inverse_letter_is_added() {
        // Z x Z/3 with the torsion generator b given without an inverse.
        let text = "[generators]\na A b\n[inverses]\na A\n[rules]\n\
                    a A ->\nA a ->\nb b b ->\nb a -> a b\nb A -> A b\n";
        let s = RewritingSystem::parse(text).unwrap();
        let m = s.minimize(5).unwrap();
        let al = m.alphabet();
        assert!(al.is_symmetric());
        assert_eq!(al.tokens(), ["a", "A", "b", "b^-1"]);
        let last = m.rules().last().unwrap();
        assert_eq!(m.render_rule(last), "b^-1 -> b b");
        assert!(m.is_minimal());
        assert!(m.check_complete(4).passed());
    }

    #[test]
    fn unpaired_inverse_letters_are_paired() {
        let text = "[generators]\na A\n[rules]\na A ->\nA a ->\n";
        let m = RewritingSystem::parse(text).unwrap().minimize(4).unwrap();
        assert!(m.alphabet().is_symmetric());
        assert_eq!(m.alphabet().len(), 2);
    }

    #[test]
    fn incomplete_system_is_refused() {
        let s = RewritingSystem::parse("[generators]\na b\n[rules]\na b -> b a\nb a -> a b\n")
            .unwrap();
        assert!(matches!(s.minimize(3), Err(Error::NotComplete(_))));
    }
}
