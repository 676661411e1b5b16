//! Desk-scale completeness check: termination and uniqueness of irreducible
//! descendants over all rewriting orders for short words, plus critical pairs.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::RewritingSystem;
use crate::words::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPairFailure {
    /// The overlap or containment word.
    pub word: Word,
    pub left: Word,
    pub right: Word,
}

#[derive(Clone, Debug, Default)]
pub struct CompletenessReport {
    pub max_len: usize,
    pub words_checked: usize,
    pub critical_pairs: usize,
    /// Words from which some rewriting order cycles or exceeds the budget.
    pub termination_failures: Vec<Word>,
    /// Critical pairs whose two sides reduce to different irreducibles.
    pub confluence_failures: Vec<CriticalPairFailure>,
    /// Words with more than one irreducible descendant.
    pub uniqueness_failures: Vec<(Word, Vec<Word>)>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.termination_failures.is_empty()
            && self.confluence_failures.is_empty()
            && self.uniqueness_failures.is_empty()
    }

    pub fn summary(&self, alphabet: &Alphabet) -> String {
        let mut out = format!(
            "termination: {} failures; confluence: {} of {} critical pairs fail; \
             uniqueness: {} failures (words up to length {}: {})",
            self.termination_failures.len(),
            self.confluence_failures.len(),
            self.critical_pairs,
            self.uniqueness_failures.len(),
            self.max_len,
            self.words_checked,
        );
        if let Some(w) = self.termination_failures.first() {
            out.push_str(&format!("\n  non-terminating from `{}`", alphabet.render(w)));
        }
        if let Some(f) = self.confluence_failures.first() {
            out.push_str(&format!(
                "\n  critical pair `{}` resolves to `{}` and `{}`",
                alphabet.render(&f.word),
                alphabet.render(&f.left),
                alphabet.render(&f.right)
            ));
        }
        if let Some((w, irr)) = self.uniqueness_failures.first() {
            let shown: Vec<String> = irr.iter().map(|x| format!("`{}`", alphabet.render(x))).collect();
            out.push_str(&format!(
                "\n  `{}` reaches {}",
                alphabet.render(w),
                shown.join(", ")
            ));
        }
        out
    }
}

#[derive(Clone)]
enum Node {
    Open,
    Done(Rc<BTreeSet<Word>>),
    Failed,
}

struct Frame {
    word: Word,
    children: Vec<Word>,
    next: usize,
    acc: BTreeSet<Word>,
}

/// Explores every rewriting order from a word. Shared across start words.
struct Explorer<'a> {
    system: &'a RewritingSystem,
    memo: HashMap<Word, Node>,
    budget: usize,
}

impl Explorer<'_> {
    fn children(&self, w: &Word) -> Vec<Word> {
        let mut out: Vec<Word> = self
            .system
            .occurrences(w)
            .into_iter()
            .map(|(pos, i)| self.system.apply(w, pos, i))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Irreducible descendants of `start`, or `None` when some order cycles
    /// or the node budget runs out.
    fn explore(&mut self, start: &Word) -> Option<Rc<BTreeSet<Word>>> {
        match self.memo.get(start) {
            Some(Node::Done(set)) => return Some(Rc::clone(set)),
            Some(Node::Failed) => return None,
            _ => {}
        }
        let mut stack = vec![self.open(start.clone())];
        let mut result: Option<Rc<BTreeSet<Word>>> = None;
        while let Some(top) = stack.last_mut() {
            if top.next < top.children.len() {
                let child = top.children[top.next].clone();
                top.next += 1;
                match self.memo.get(&child) {
                    Some(Node::Done(set)) => top.acc.extend(set.iter().cloned()),
                    Some(Node::Open) | Some(Node::Failed) => {
                        for f in stack.drain(..) {
                            self.memo.insert(f.word, Node::Failed);
                        }
                        return None;
                    }
                    None => {
                        if self.memo.len() >= self.budget {
                            for f in stack.drain(..) {
                                self.memo.insert(f.word, Node::Failed);
                            }
                            return None;
                        }
                        let frame = self.open(child);
                        stack.push(frame);
                    }
                }
                continue;
            }
            let mut done = stack.pop().expect("nonempty stack");
            if done.children.is_empty() {
                done.acc.insert(done.word.clone());
            }
            let set = Rc::new(done.acc);
            self.memo.insert(done.word, Node::Done(Rc::clone(&set)));
            match stack.last_mut() {
                Some(parent) => parent.acc.extend(set.iter().cloned()),
                None => result = Some(set),
            }
        }
        result
    }

    fn open(&mut self, word: Word) -> Frame {
        self.memo.insert(word.clone(), Node::Open);
        Frame {
            children: self.children(&word),
            word,
            next: 0,
            acc: BTreeSet::new(),
        }
    }
}

impl RewritingSystem {
    /// Checks termination and uniqueness over all rewriting orders for every
    /// word of length at most `max_len`, and local confluence of all critical
    /// pairs. Failures are collected in the report.
    pub fn check_complete(&self, max_len: usize) -> CompletenessReport {
        let mut report = CompletenessReport {
            max_len,
            ..Default::default()
        };
        let mut explorer = Explorer {
            system: self,
            memo: HashMap::new(),
            budget: self.budget(),
        };
        let letters: Vec<_> = self.alphabet().letters().collect();
        let mut layer = vec![Word::empty()];
        for len in 0..=max_len {
            for w in &layer {
                report.words_checked += 1;
                match explorer.explore(w) {
                    None => report.termination_failures.push(w.clone()),
                    Some(set) if set.len() > 1 => report
                        .uniqueness_failures
                        .push((w.clone(), set.iter().cloned().collect())),
                    Some(_) => {}
                }
            }
            if len < max_len {
                layer = layer
                    .iter()
                    .flat_map(|w| letters.iter().map(move |&l| w.appended(l)))
                    .collect();
            }
        }
        self.check_critical_pairs(&mut report);
        report
    }

    fn check_critical_pairs(&self, report: &mut CompletenessReport) {
        let rules = self.rules();
        let mut pairs: Vec<(Word, Word, Word)> = Vec::new();
        for (i, r1) in rules.iter().enumerate() {
            for (j, r2) in rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                // Proper overlaps: a suffix of l1 equals a prefix of l2.
                for ov in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - ov..] == l2[..ov] {
                        let word = l1.concat(&l2[ov..]);
                        let left = r1.rhs.concat(&l2[ov..]);
                        let right = Word::from(&l1[..l1.len() - ov]).concat(&r2.rhs);
                        pairs.push((word, left, right));
                    }
                }
                // Containment of l2 in l1.
                if i != j && l2.len() <= l1.len() {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] == l2[..] {
                            let right = self.apply(l1, p, j);
                            pairs.push((l1.clone(), r1.rhs.clone(), right));
                        }
                    }
                }
            }
        }
        report.critical_pairs = pairs.len();
        for (word, left, right) in pairs {
            match (self.reduce(&left), self.reduce(&right)) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(a), Ok(b)) => report.confluence_failures.push(CriticalPairFailure {
                    word,
                    left: a,
                    right: b,
                }),
                _ => {
                    if !report.termination_failures.contains(&word) {
                        report.termination_failures.push(word);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::Z2;
    use super::*;

    #[test]
    fn z2_passes() {
        let s = RewritingSystem::parse(Z2).unwrap();
        let report = s.check_complete(6);
        assert!(report.passed(), "{}", report.summary(s.alphabet()));
        assert_eq!(report.words_checked, (0..=6).map(|n| 4usize.pow(n)).sum::<usize>());
    }

    #[test]
    fn two_cycle_fails_termination() {
        let s = RewritingSystem::parse("[generators]\na b\n[rules]\na b -> b a\nb a -> a b\n")
            .unwrap();
        let report = s.check_complete(3);
        assert!(!report.termination_failures.is_empty());
        assert!(!report.passed());
    }

    #[test]
    fn empty_rule_set_passes() {
        let s = RewritingSystem::parse("[generators]\na A\n[inverses]\na A\n").unwrap();
        assert!(s.check_complete(4).passed());
    }

    #[test]
    fn non_confluent_system_is_caught() {
        // Two rules from `a b c` disagree.
        let s = RewritingSystem::parse("[generators]\na b c\n[rules]\na b -> a\nb c -> b\n")
            .unwrap();
        let report = s.check_complete(3);
        assert!(!report.confluence_failures.is_empty());
        assert!(!report.uniqueness_failures.is_empty());
    }

    #[test]
    fn growing_rules_hit_the_budget_not_the_stack() {
        let s = RewritingSystem::parse("[generators]\na\n[rules]\na -> a a\n")
            .unwrap()
            .with_budget(200);
        let report = s.check_complete(1);
        assert!(!report.termination_failures.is_empty());
    }
}
