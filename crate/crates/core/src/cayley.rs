//! Finite balls of the Cayley graph built from a normal-form oracle.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::rewriting::RewritingSystem;
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

/// Maps words to normal forms. Two words represent the same group element
/// exactly when their normal forms agree, and the empty word is its own
/// normal form.
pub trait NormalFormOracle: Send + Sync {
    fn alphabet(&self) -> &Arc<Alphabet>;

    fn normal_form(&self, w: &[Letter]) -> Result<Word>;

    /// Normal form of `y a` for a normal form `y`. Implementations may
    /// override this with something cheaper than a full reduction.
    fn extend(&self, y: &Word, a: Letter) -> Result<Word> {
        self.normal_form(&y.appended(a))
    }
}

impl NormalFormOracle for RewritingSystem {
    fn alphabet(&self) -> &Arc<Alphabet> {
        RewritingSystem::alphabet(self)
    }

    fn normal_form(&self, w: &[Letter]) -> Result<Word> {
        self.reduce(w)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    Degenerate,
    Recursive,
}

impl EdgeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeClass::Degenerate => "degenerate",
            EdgeClass::Recursive => "recursive",
        }
    }
}

/// An edge `e_{g,a}` is degenerate when `y_g a = y_{ga}` or
/// `y_g = y_{ga} a^-1` as words.
pub fn classify_edge(y_g: &[Letter], a: Letter, y_ga: &[Letter], alphabet: &Alphabet) -> EdgeClass {
    let forward = y_ga.len() == y_g.len() + 1 && y_ga.starts_with(y_g) && y_ga[y_g.len()] == a;
    let backward = y_g.len() == y_ga.len() + 1
        && y_g.starts_with(y_ga)
        && y_g[y_ga.len()] == alphabet.inverse(a);
    if forward || backward {
        EdgeClass::Degenerate
    } else {
        EdgeClass::Recursive
    }
}

/// A directed Cayley-graph edge given by the normal forms of its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    pub source: Word,
    pub label: Letter,
    pub target: Word,
    pub class: EdgeClass,
}

impl DirectedEdge {
    pub fn new(oracle: &(impl NormalFormOracle + ?Sized), source: Word, label: Letter) -> Result<Self> {
        let target = oracle.extend(&source, label)?;
        let class = classify_edge(&source, label, &target, oracle.alphabet());
        Ok(DirectedEdge {
            source,
            label,
            target,
            class,
        })
    }

    pub fn reversed(&self, alphabet: &Alphabet) -> DirectedEdge {
        DirectedEdge {
            source: self.target.clone(),
            label: alphabet.inverse(self.label),
            target: self.source.clone(),
            class: self.class,
        }
    }
}

/// Edge weight `(d(1,g) + d(1,ga)) / 2`, stored doubled.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub u64);

impl HalfInt {
    pub fn average(x: usize, y: usize) -> Self {
        HalfInt((x + y) as u64)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub canonical: Word,
    pub distance: usize,
}

/// An edge between two ball elements, by element index.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BallEdge {
    pub source: usize,
    pub label: Letter,
    pub target: usize,
    pub class: EdgeClass,
}

/// The ball `B(n)` with every edge between its elements.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    alphabet: Arc<Alphabet>,
    elements: Vec<GroupElement>,
    index: HashMap<Word, usize>,
    adjacency: Vec<Vec<Option<usize>>>,
    classes: Vec<Vec<Option<EdgeClass>>>,
}

impl Ball {
    /// Breadth-first enumeration of `B(radius)`. Elements are ordered
    /// shortlex by normal form, so the identity has index 0.
    pub fn build<O: NormalFormOracle + ?Sized>(oracle: &O, radius: usize, cap: usize) -> Result<Ball> {
        let alphabet = Arc::clone(oracle.alphabet());
        let letters: Vec<Letter> = alphabet.letters().collect();
        let root = oracle.normal_form(&[])?;
        if !root.is_empty() {
            return Err(Error::Structure("the identity must have the empty normal form".into()));
        }
        let mut found: Vec<GroupElement> = vec![GroupElement {
            canonical: root.clone(),
            distance: 0,
        }];
        let mut seen: HashMap<Word, usize> = HashMap::from([(root, 0)]);
        let mut raw_adj: Vec<Vec<Option<Word>>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (canonical, distance) = (found[i].canonical.clone(), found[i].distance);
            let mut row = Vec::with_capacity(letters.len());
            for &a in &letters {
                let nb = oracle.extend(&canonical, a)?;
                if !seen.contains_key(&nb) && distance < radius {
                    if found.len() >= cap {
                        return Err(Error::MemoryCap(cap));
                    }
                    seen.insert(nb.clone(), found.len());
                    queue.push_back(found.len());
                    found.push(GroupElement {
                        canonical: nb.clone(),
                        distance: distance + 1,
                    });
                }
                row.push(Some(nb));
            }
            if raw_adj.len() <= i {
                raw_adj.resize(i + 1, Vec::new());
            }
            raw_adj[i] = row;
        }

        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&x, &y| found[x].canonical.shortlex_cmp(&found[y].canonical));
        let elements: Vec<GroupElement> = order.iter().map(|&o| found[o].clone()).collect();
        let index: HashMap<Word, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.canonical.clone(), i))
            .collect();
        let mut adjacency = Vec::with_capacity(elements.len());
        let mut classes = Vec::with_capacity(elements.len());
        for (i, &o) in order.iter().enumerate() {
            let row: Vec<Option<usize>> = raw_adj[o]
                .iter()
                .map(|nb| nb.as_ref().and_then(|w| index.get(w).copied()))
                .collect();
            let class_row = row
                .iter()
                .zip(&letters)
                .map(|(t, &a)| {
                    t.map(|t| {
                        classify_edge(&elements[i].canonical, a, &elements[t].canonical, &alphabet)
                    })
                })
                .collect();
            adjacency.push(row);
            classes.push(class_row);
        }
        Ok(Ball {
            radius,
            alphabet,
            elements,
            index,
            adjacency,
            classes,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn lookup(&self, canonical: &[Letter]) -> Option<usize> {
        self.index.get(canonical).copied()
    }

    pub fn distance(&self, i: usize) -> usize {
        self.elements[i].distance
    }

    pub fn neighbor(&self, i: usize, a: Letter) -> Option<usize> {
        self.adjacency[i][a.index()]
    }

    pub fn class(&self, i: usize, a: Letter) -> Option<EdgeClass> {
        self.classes[i][a.index()]
    }

    pub fn sphere(&self, n: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].distance == n).collect()
    }

    /// Every directed edge with both endpoints in the ball.
    pub fn edges(&self) -> impl Iterator<Item = BallEdge> + '_ {
        (0..self.len()).flat_map(move |i| {
            self.alphabet.letters().filter_map(move |a| {
                self.neighbor(i, a).map(|t| BallEdge {
                    source: i,
                    label: a,
                    target: t,
                    class: self.classes[i][a.index()].expect("edge has a class"),
                })
            })
        })
    }

    pub fn directed_edge(&self, e: BallEdge) -> DirectedEdge {
        DirectedEdge {
            source: self.elements[e.source].canonical.clone(),
            label: e.label,
            target: self.elements[e.target].canonical.clone(),
            class: e.class,
        }
    }

    pub fn alpha(&self, e: BallEdge) -> HalfInt {
        HalfInt::average(self.distance(e.source), self.distance(e.target))
    }

    /// Parent of `i` in the tree of degenerate edges: the element reached by
    /// dropping the last letter of its normal form, when that lies in the
    /// ball.
    pub fn tree_parent(&self, i: usize) -> Option<(usize, Letter)> {
        let y = &self.elements[i].canonical;
        let (&last, prefix) = y.split_last()?;
        self.lookup(prefix).map(|p| (p, last))
    }

    /// Reads the normal form of `i` off the tree path from the identity.
    pub fn tree_path(&self, i: usize) -> Result<Word> {
        let mut letters = Vec::new();
        let mut cur = i;
        while cur != 0 {
            let (p, a) = self.tree_parent(cur).ok_or_else(|| {
                Error::OutsideDomain(format!(
                    "tree path of `{}`",
                    self.alphabet.render(&self.elements[i].canonical)
                ))
            })?;
            if self.neighbor(p, a) != Some(cur) {
                return Err(Error::Structure("tree edge missing from the ball".into()));
            }
            letters.push(a);
            cur = p;
        }
        letters.reverse();
        Ok(Word::from(letters))
    }

    /// Whether every prefix of every normal form in the ball is itself the
    /// normal form of a ball element.
    pub fn is_prefix_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|e| (0..e.canonical.len()).all(|n| self.index.contains_key(&e.canonical[..n])))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let al = &self.alphabet;
        let elements: Vec<_> = self
            .elements
            .iter()
            .map(|e| json!({"word": al.render(&e.canonical), "distance": e.distance}))
            .collect();
        let edges: Vec<_> = self
            .edges()
            .map(|e| {
                json!({
                    "source": al.render(&self.elements[e.source].canonical),
                    "label": al.token(e.label),
                    "target": al.render(&self.elements[e.target].canonical),
                    "classification": e.class.as_str(),
                })
            })
            .collect();
        json!({"radius": self.radius, "elements": elements, "edges": edges})
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: &str = "[generators]\na A b B\n[inverses]\na A\nb B\n[rules]\n\
        a A ->\nA a ->\nb B ->\nB b ->\nb a -> a b\nb A -> A b\nB a -> a B\nB A -> A B\n";

    fn z2() -> RewritingSystem {
        RewritingSystem::parse(Z2).unwrap()
    }

    #[test]
    fn ball_sizes() {
        let s = z2();
        assert_eq!(Ball::build(&s, 0, 100).unwrap().len(), 1);
        assert_eq!(Ball::build(&s, 0, 100).unwrap().edges().count(), 0);
        let b1 = Ball::build(&s, 1, 100).unwrap();
        assert_eq!(b1.len(), 5);
        assert_eq!(b1.sphere(1).len(), 4);
        for n in 0..=6 {
            assert_eq!(Ball::build(&s, n, 1000).unwrap().len(), 2 * n * n + 2 * n + 1);
        }
    }

    #[test]
    fn memory_cap_is_enforced() {
        assert!(matches!(Ball::build(&z2(), 5, 10), Err(Error::MemoryCap(10))));
    }

    #[test]
    fn classification_examples() {
        let s = z2();
        let al = s.alphabet().clone();
        let w = |t: &str| al.parse_word(t).unwrap();
        let a = al.letter("a").unwrap();
        assert_eq!(DirectedEdge::new(&s, Word::empty(), a).unwrap().class, EdgeClass::Degenerate);
        let e = DirectedEdge::new(&s, w("b"), a).unwrap();
        assert_eq!(e.target, w("a b"));
        assert_eq!(e.class, EdgeClass::Recursive);
        assert_eq!(e.reversed(&al).class, EdgeClass::Recursive);
    }

    #[test]
    fn alpha_values() {
        let s = z2();
        let ball = Ball::build(&s, 4, 1000).unwrap();
        let al = s.alphabet();
        let w = |t: &str| ball.lookup(&al.parse_word(t).unwrap()).unwrap();
        let a = al.letter("a").unwrap();
        let b = al.letter("b").unwrap();
        let e = ball.edges().find(|e| e.source == 0 && e.label == a).unwrap();
        assert_eq!(ball.alpha(e).to_string(), "1/2");
        let e = ball.edges().find(|e| e.source == w("a a") && e.label == b).unwrap();
        assert_eq!(ball.alpha(e).to_string(), "5/2");
        let e = ball.edges().find(|e| e.source == w("a a a") && e.label == b).unwrap();
        assert_eq!(ball.distance(e.target), 4);
    }

    #[test]
    fn tree_paths_and_prefix_closure() {
        let s = z2();
        let ball = Ball::build(&s, 4, 1000).unwrap();
        let al = s.alphabet();
        assert_eq!(ball.tree_path(0).unwrap(), Word::empty());
        let ab = al.parse_word("a b").unwrap();
        assert_eq!(ball.tree_path(ball.lookup(&ab).unwrap()).unwrap(), ab);
        assert!(ball.is_prefix_closed());
        for i in 0..ball.len() {
            assert_eq!(ball.tree_path(i).unwrap(), ball.element(i).canonical);
        }
    }

    #[test]
    fn degenerate_edges_are_exactly_tree_edges() {
        let s = z2();
        let ball = Ball::build(&s, 4, 1000).unwrap();
        let al = s.alphabet();
        for e in ball.edges() {
            let tree = ball.tree_parent(e.target) == Some((e.source, e.label))
                || ball.tree_parent(e.source) == Some((e.target, al.inverse(e.label)));
            assert_eq!(tree, e.class == EdgeClass::Degenerate);
            assert!(ball.distance(e.source).abs_diff(ball.distance(e.target)) <= 1);
            let back = ball.neighbor(e.target, al.inverse(e.label)).unwrap();
            assert_eq!(back, e.source);
            assert_eq!(ball.class(e.target, al.inverse(e.label)), Some(e.class));
        }
    }

    #[test]
    fn json_dump_lists_everything() {
        let ball = Ball::build(&z2(), 1, 100).unwrap();
        let v = ball.to_json();
        assert_eq!(v["elements"].as_array().unwrap().len(), 5);
        assert_eq!(v["edges"].as_array().unwrap().len(), 8);
        assert_eq!(v["radius"], 1);
    }
}
