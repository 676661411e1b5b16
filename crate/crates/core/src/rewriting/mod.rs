//! Finite string rewriting systems over an [`Alphabet`].

mod complete;
mod minimize;

use std::sync::Arc;

use crate::words::{Alphabet, GroupFile, Letter, Word};
use crate::{Error, Result, DEFAULT_BUDGET};

pub use complete::{CompletenessReport, CriticalPairFailure};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Word,
}

/// A finite rewriting system. Rewriting is deterministic: the leftmost
/// occurrence of any left-hand side is rewritten, using the rule listed first
/// when several left-hand sides start at that position.
#[derive(Clone, Debug)]
pub struct RewritingSystem {
    alphabet: Arc<Alphabet>,
    rules: Vec<RewriteRule>,
    by_first: Vec<Vec<usize>>,
    by_last: Vec<Vec<usize>>,
    max_lhs: usize,
    budget: usize,
}

impl RewritingSystem {
    pub fn new(alphabet: Arc<Alphabet>, rules: Vec<(Word, Word)>) -> Result<Self> {
        let mut out = Vec::with_capacity(rules.len());
        for (lhs, rhs) in rules {
            if lhs.is_empty() {
                return Err(Error::Precondition("rule with empty left-hand side".into()));
            }
            if lhs == rhs {
                return Err(Error::Precondition(format!(
                    "rule `{}` rewrites a word to itself",
                    alphabet.render(&lhs)
                )));
            }
            if lhs.iter().chain(rhs.iter()).any(|l| !alphabet.contains(*l)) {
                return Err(Error::Precondition("rule uses a letter outside the alphabet".into()));
            }
            out.push(RewriteRule { lhs, rhs });
        }
        let mut by_first = vec![Vec::new(); alphabet.len()];
        let mut by_last = vec![Vec::new(); alphabet.len()];
        for (i, r) in out.iter().enumerate() {
            by_first[r.lhs[0].index()].push(i);
            by_last[r.lhs[r.lhs.len() - 1].index()].push(i);
        }
        let max_lhs = out.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        Ok(RewritingSystem {
            alphabet,
            rules: out,
            by_first,
            by_last,
            max_lhs,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn from_file(file: &GroupFile) -> Result<Self> {
        RewritingSystem::new(Arc::new(file.alphabet.clone()), file.rules.clone())
    }

    /// Parses the `[generators]`, `[inverses]` and `[rules]` sections of a
    /// group file.
    pub fn parse(text: &str) -> Result<Self> {
        RewritingSystem::from_file(&crate::words::parse_group_file(text)?)
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget.max(1);
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn max_lhs_len(&self) -> usize {
        self.max_lhs
    }

    /// Lowest-index rule whose left-hand side occurs in `w` at `pos`.
    fn rule_at(&self, w: &[Letter], pos: usize) -> Option<usize> {
        self.by_first[w[pos].index()]
            .iter()
            .copied()
            .find(|&i| w[pos..].starts_with(&self.rules[i].lhs))
    }

    /// Lowest-index rule whose left-hand side is a suffix of `w`.
    pub fn rule_ending(&self, w: &[Letter]) -> Option<usize> {
        let last = *w.last()?;
        self.by_last[last.index()]
            .iter()
            .copied()
            .find(|&i| w.ends_with(&self.rules[i].lhs))
    }

    /// Leftmost occurrence of a left-hand side at or after `from`.
    pub fn find_occurrence(&self, w: &[Letter], from: usize) -> Option<(usize, usize)> {
        (from..w.len()).find_map(|pos| self.rule_at(w, pos).map(|r| (pos, r)))
    }

    /// All `(position, rule)` pairs at which a rule applies.
    pub fn occurrences(&self, w: &[Letter]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for &i in &self.by_first[w[pos].index()] {
                if w[pos..].starts_with(&self.rules[i].lhs) {
                    out.push((pos, i));
                }
            }
        }
        out
    }

    pub fn apply(&self, w: &[Letter], pos: usize, rule: usize) -> Word {
        let r = &self.rules[rule];
        let mut out = Vec::with_capacity(w.len() + r.rhs.len());
        out.extend_from_slice(&w[..pos]);
        out.extend_from_slice(&r.rhs);
        out.extend_from_slice(&w[pos + r.lhs.len()..]);
        Word::from(out)
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        self.find_occurrence(w, 0).is_none()
    }

    /// Rewrites `w` to an irreducible word, counting the rewrites.
    pub fn reduce_counted(&self, w: &[Letter]) -> Result<(Word, usize)> {
        let mut cur: Vec<Letter> = w.to_vec();
        let mut from = 0;
        let mut steps = 0;
        while let Some((pos, i)) = self.find_occurrence(&cur, from) {
            if steps == self.budget {
                return Err(Error::budget(
                    "rewriting did not terminate (system not terminating within budget)",
                    self.budget,
                ));
            }
            steps += 1;
            let r = &self.rules[i];
            cur.splice(pos..pos + r.lhs.len(), r.rhs.iter().copied());
            // Earlier positions held no occurrence; only ones overlapping the
            // new right-hand side can have appeared.
            from = pos.saturating_sub(self.max_lhs - 1);
        }
        Ok((Word::from(cur), steps))
    }

    pub fn reduce(&self, w: &[Letter]) -> Result<Word> {
        self.reduce_counted(w).map(|(w, _)| w)
    }

    /// One step of prefix rewriting: rewrites the shortest reducible prefix.
    pub fn prefix_rewrite_step(&self, w: &[Letter]) -> Result<Word> {
        for end in 1..=w.len() {
            if let Some(i) = self.rule_ending(&w[..end]) {
                return Ok(self.apply(w, end - self.rules[i].lhs.len(), i));
            }
        }
        Err(Error::Precondition(format!(
            "nothing to rewrite: `{}` is irreducible",
            self.alphabet.render(w)
        )))
    }

    /// Number of prefix rewriting steps needed to reach an irreducible word.
    ///
    /// The irreducible prefix is kept on a stack, so each step only inspects
    /// suffixes of the stack.
    pub fn prefix_rewrite_length(&self, w: &[Letter]) -> Result<usize> {
        self.prefix_rewrite(w).map(|(_, n)| n)
    }

    /// Prefix rewriting to the irreducible form, with the number of steps.
    pub fn prefix_rewrite(&self, w: &[Letter]) -> Result<(Word, usize)> {
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
        let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
        let mut steps = 0;
        while let Some(l) = pending.pop() {
            stack.push(l);
            if let Some(i) = self.rule_ending(&stack) {
                if steps == self.budget {
                    return Err(Error::budget("prefix rewriting", self.budget));
                }
                steps += 1;
                let r = &self.rules[i];
                stack.truncate(stack.len() - r.lhs.len());
                pending.extend(r.rhs.iter().rev());
            }
        }
        Ok((Word::from(stack), steps))
    }

    pub fn word_problem(&self, u: &[Letter], v: &[Letter]) -> Result<bool> {
        Ok(self.reduce(u)? == self.reduce(v)?)
    }

    /// Every right-hand side and every proper subword of every left-hand side
    /// is irreducible.
    pub fn is_minimal(&self) -> bool {
        self.rules.iter().all(|r| {
            let n = r.lhs.len();
            self.is_irreducible(&r.rhs)
                && self.is_irreducible(&r.lhs[1..])
                && self.is_irreducible(&r.lhs[..n - 1])
        })
    }

    pub fn render_rule(&self, rule: &RewriteRule) -> String {
        format!(
            "{} -> {}",
            self.alphabet.render(&rule.lhs),
            self.alphabet.render(&rule.rhs)
        )
    }

    /// Serializes the system in the group file format.
    pub fn to_file_text(&self) -> String {
        let al = &self.alphabet;
        let mut out = String::from("[generators]\n");
        out.push_str(&al.tokens().join(" "));
        out.push_str("\n[inverses]\n");
        for (x, y) in al.inverse_pairs() {
            out.push_str(&format!("{} {}\n", al.token(x), al.token(y)));
        }
        out.push_str("[rules]\n");
        for r in &self.rules {
            out.push_str(self.render_rule(r).trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const Z2: &str = "[generators]\na A b B\n[inverses]\na A\nb B\n[rules]\n\
        a A ->\nA a ->\nb B ->\nB b ->\nb a -> a b\nb A -> A b\nB a -> a B\nB A -> A B\n";

    fn z2() -> RewritingSystem {
        RewritingSystem::parse(Z2).unwrap()
    }

    fn w(s: &RewritingSystem, t: &str) -> Word {
        s.alphabet().parse_word(t).unwrap()
    }

    #[test]
    fn irreducibility() {
        let s = z2();
        assert!(s.is_irreducible(&w(&s, "a b")));
        assert!(!s.is_irreducible(&w(&s, "b a")));
        assert!(s.is_irreducible(&Word::empty()));
    }

    #[test]
    fn reduce_examples() {
        let s = z2();
        assert_eq!(s.reduce(&w(&s, "b a")).unwrap(), w(&s, "a b"));
        assert_eq!(s.reduce(&w(&s, "a A")).unwrap(), Word::empty());
        assert_eq!(s.reduce(&w(&s, "a a B")).unwrap(), w(&s, "a a B"));
        assert_eq!(s.reduce(&w(&s, "B b B a A a b")).unwrap(), w(&s, "a"));
    }

    #[test]
    fn prefix_rewriting_examples() {
        let s = z2();
        assert_eq!(s.prefix_rewrite_step(&w(&s, "b a b")).unwrap(), w(&s, "a b b"));
        assert_eq!(s.prefix_rewrite_step(&w(&s, "a A b")).unwrap(), w(&s, "b"));
        assert_eq!(s.prefix_rewrite_step(&w(&s, "b B a A")).unwrap(), w(&s, "a A"));
        assert!(s.prefix_rewrite_step(&w(&s, "a b")).is_err());
        assert_eq!(s.prefix_rewrite_length(&w(&s, "a b")).unwrap(), 0);
        assert_eq!(s.prefix_rewrite_length(&w(&s, "b a")).unwrap(), 1);
        assert_eq!(s.prefix_rewrite_length(&w(&s, "b a a")).unwrap(), 2);
    }

    #[test]
    fn prefix_rewrite_length_matches_naive_iteration() {
        let s = z2();
        let words = ["b a b A B a", "B B a a b A", "a b B A b a", ""];
        for t in words {
            let mut cur = w(&s, t);
            let mut n = 0;
            while !s.is_irreducible(&cur) {
                cur = s.prefix_rewrite_step(&cur).unwrap();
                n += 1;
            }
            let (irr, len) = s.prefix_rewrite(&w(&s, t)).unwrap();
            assert_eq!(len, n, "{t}");
            assert_eq!(irr, cur);
        }
    }

    #[test]
    fn word_problem_examples() {
        let s = z2();
        assert!(s.word_problem(&w(&s, "a b"), &w(&s, "b a")).unwrap());
        assert!(!s.word_problem(&w(&s, "a"), &w(&s, "b")).unwrap());
        assert!(s.word_problem(&w(&s, "B a"), &w(&s, "B a")).unwrap());
    }

    #[test]
    fn budget_stops_cycles() {
        let s = RewritingSystem::parse("[generators]\na b\n[rules]\na b -> b a\nb a -> a b\n")
            .unwrap()
            .with_budget(100);
        let err = s.reduce(&s.alphabet().parse_word("a b").unwrap()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn z2_is_minimal() {
        assert!(z2().is_minimal());
    }

    #[test]
    fn file_text_round_trips() {
        let s = z2();
        let t = RewritingSystem::parse(&s.to_file_text()).unwrap();
        assert_eq!(t.rules(), s.rules());
        assert_eq!(t.alphabet(), s.alphabet());
    }
}
