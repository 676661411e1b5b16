//! Stacking structures, their flow functions, the stacking reduction and the
//! word problem.

mod verify;

use std::collections::BTreeSet;

use crate::cayley::{classify_edge, EdgeClass, NormalFormOracle};
use crate::words::{Letter, Word};
use crate::{Error, Result};

pub use verify::{
    verify_flow_properties, verify_geodesic_stacking, verify_structure, EdgeRef, FlowReport,
    GeodesicReport,
};

/// A prefix-closed normal form set together with a stacking map.
///
/// Edges are named by the normal form of their source and their label. The
/// stacking map is only consulted on recursive edges; its image must
/// represent the label, differ from it, and have length at most
/// [`StackingStructure::bound`].
pub trait StackingStructure: NormalFormOracle {
    /// Short human-readable name, e.g. `bs1p:2`.
    fn describe(&self) -> String;

    fn bound(&self) -> usize;

    /// `φ(e_{g,a})` for the recursive edge leaving the element with normal
    /// form `source` along `label`.
    fn stacking_map(&self, source: &Word, label: Letter) -> Result<Word>;

    fn classify(&self, source: &Word, label: Letter) -> Result<EdgeClass> {
        let target = self.extend(source, label)?;
        Ok(classify_edge(source, label, &target, self.alphabet()))
    }

    /// Finitely many words whose symmetrized closure is the stacking
    /// relation set, when the structure knows them in closed form.
    fn relator_schema(&self) -> Option<Vec<Word>> {
        None
    }

    /// Radius of the ball outside of which the structure is undefined, for
    /// structures that are only computed on a finite region.
    fn domain_radius(&self) -> Option<usize> {
        None
    }
}

/// A path `δ(g, w)`: start vertex, label, and the normal forms of its
/// vertices (including both ends).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowPath {
    pub label: Word,
    pub vertices: Vec<Word>,
}

impl FlowPath {
    pub fn start(&self) -> &Word {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Word {
        self.vertices.last().expect("path has a start vertex")
    }
}

/// The bounded flow function induced by a stacking structure: identity on
/// degenerate edges and `δ(g, φ(e))` on recursive ones.
#[derive(Clone, Copy)]
pub struct FlowFunction<'a> {
    structure: &'a dyn StackingStructure,
}

impl<'a> FlowFunction<'a> {
    pub fn new(structure: &'a dyn StackingStructure) -> Self {
        FlowFunction { structure }
    }

    pub fn structure(&self) -> &'a dyn StackingStructure {
        self.structure
    }

    /// Label of `Φ(e)`.
    pub fn label(&self, source: &Word, a: Letter) -> Result<Word> {
        match self.structure.classify(source, a)? {
            EdgeClass::Degenerate => Ok(Word::single(a)),
            EdgeClass::Recursive => self.structure.stacking_map(source, a),
        }
    }

    pub fn evaluate(&self, source: &Word, a: Letter) -> Result<FlowPath> {
        let label = self.label(source, a)?;
        let mut vertices = Vec::with_capacity(label.len() + 1);
        vertices.push(source.clone());
        for &l in label.iter() {
            let next = self.structure.extend(vertices.last().expect("nonempty"), l)?;
            vertices.push(next);
        }
        Ok(FlowPath { label, vertices })
    }
}

/// Result of the stacking reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub word: Word,
    /// Number of replacements `a -> φ(e)` performed.
    pub steps: usize,
}

/// Normal form of `w` by the stacking reduction: repeatedly replace the
/// leftmost letter that traverses a recursive edge by its stacking image,
/// then freely reduce.
///
/// The prefix before the rewritten position is unchanged by a replacement,
/// so the scan keeps the normal form of the processed prefix and resumes at
/// the rewritten position.
pub fn stacking_reduce(s: &(impl StackingStructure + ?Sized), w: &[Letter], budget: usize) -> Result<Reduction> {
    let alphabet = s.alphabet();
    let mut done: Vec<Letter> = Vec::with_capacity(w.len());
    let mut pending: Vec<Letter> = w.iter().rev().copied().collect();
    let mut current = Word::empty();
    let mut steps = 0usize;
    while let Some(a) = pending.pop() {
        let target = s.extend(&current, a)?;
        match classify_edge(&current, a, &target, alphabet) {
            EdgeClass::Degenerate => {
                done.push(a);
                current = target;
            }
            EdgeClass::Recursive => {
                if steps == budget {
                    return Err(Error::budget(
                        "stacking reduction (well-foundedness violated within budget)",
                        budget,
                    ));
                }
                steps += 1;
                let image = s.stacking_map(&current, a)?;
                pending.extend(image.iter().rev());
            }
        }
    }
    let word = alphabet.free_reduce(&done);
    if word != current {
        return Err(Error::Structure(format!(
            "stacking reduction gave `{}` but the normal form is `{}`",
            alphabet.render(&word),
            alphabet.render(&current)
        )));
    }
    Ok(Reduction { word, steps })
}

/// Whether `w` represents the identity.
pub fn word_problem(s: &(impl StackingStructure + ?Sized), w: &[Letter], budget: usize) -> Result<bool> {
    Ok(stacking_reduce(s, w, budget)?.word.is_empty())
}

/// Closure of `{φ(e) a^-1}` over the recursive edges among `edges` under
/// inversion, cyclic conjugation and free reduction, without the empty word.
pub fn stacking_relation_set(
    s: &(impl StackingStructure + ?Sized),
    edges: &[(Word, Letter)],
) -> Result<BTreeSet<Word>> {
    let alphabet = s.alphabet();
    let mut base = Vec::new();
    for (source, a) in edges {
        if s.classify(source, *a)? == EdgeClass::Recursive {
            let image = s.stacking_map(source, *a)?;
            base.push(image.appended(alphabet.inverse(*a)));
        }
    }
    Ok(alphabet.symmetric_closure(&base))
}

/// Symmetrized closure of the structure's relator schema.
pub fn schema_relators(s: &(impl StackingStructure + ?Sized)) -> Option<BTreeSet<Word>> {
    s.relator_schema()
        .map(|words| s.alphabet().symmetric_closure(&words))
}

/// Membership of `(w, a, x)` in the decision set: `x = a` on degenerate
/// edges and `x = φ(e_{w,a})` on recursive ones.
pub fn s_phi_membership(s: &(impl StackingStructure + ?Sized), w: &[Letter], a: Letter, x: &[Letter]) -> Result<bool> {
    let y = s.normal_form(w)?;
    Ok(match s.classify(&y, a)? {
        EdgeClass::Degenerate => x == [a],
        EdgeClass::Recursive => s.stacking_map(&y, a)?[..] == *x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{Bs1p, CrsStructure};
    use crate::rewriting::RewritingSystem;

    const Z2: &str = "[generators]\na A b B\n[inverses]\na A\nb B\n[rules]\n\
        a A ->\nA a ->\nb B ->\nB b ->\nb a -> a b\nb A -> A b\nB a -> a B\nB A -> A B\n";

    fn z2() -> CrsStructure {
        CrsStructure::new(RewritingSystem::parse(Z2).unwrap(), 4).unwrap()
    }

    fn w(s: &dyn StackingStructure, t: &str) -> Word {
        s.alphabet().parse_word(t).unwrap()
    }

    #[test]
    fn flow_examples() {
        let bs = Bs1p::new(2).unwrap();
        let flow = FlowFunction::new(&bs);
        let a = bs.alphabet().letter("a").unwrap();
        let t = bs.alphabet().letter("t").unwrap();
        assert_eq!(flow.label(&Word::empty(), a).unwrap(), w(&bs, "a"));
        let path = flow.evaluate(&w(&bs, "T a a"), t).unwrap();
        assert_eq!(path.label, w(&bs, "A A t a"));
        assert_eq!(path.end(), &bs.extend(&w(&bs, "T a a"), t).unwrap());

        let z = z2();
        let flow = FlowFunction::new(&z);
        let a = z.alphabet().letter("a").unwrap();
        let path = flow.evaluate(&w(&z, "b"), a).unwrap();
        assert_eq!(path.label, w(&z, "B a b"));
        assert_eq!(path.end(), &w(&z, "a b"));
    }

    #[test]
    fn reduction_examples() {
        let bs = Bs1p::new(2).unwrap();
        assert_eq!(stacking_reduce(&bs, &w(&bs, "t a T"), 1000).unwrap().word, w(&bs, "a a"));
        let nf = w(&bs, "T a t");
        let r = stacking_reduce(&bs, &nf, 1000).unwrap();
        assert_eq!((r.word, r.steps), (nf, 0));
        let z = z2();
        assert_eq!(stacking_reduce(&z, &w(&z, "b a"), 1000).unwrap().word, w(&z, "a b"));
    }

    #[test]
    fn word_problem_examples() {
        let bs = Bs1p::new(2).unwrap();
        assert!(word_problem(&bs, &w(&bs, "a A"), 1000).unwrap());
        assert!(word_problem(&bs, &w(&bs, "t a T A A"), 1000).unwrap());
        assert!(!word_problem(&bs, &w(&bs, "t a T A"), 1000).unwrap());
        assert_eq!(stacking_reduce(&bs, &w(&bs, "t a T A"), 1000).unwrap().word, w(&bs, "a"));
    }

    #[test]
    fn relation_set_examples() {
        let bs = Bs1p::new(2).unwrap();
        assert!(stacking_relation_set(&bs, &[]).unwrap().is_empty());
        let a = bs.alphabet().letter("a").unwrap();
        let set = stacking_relation_set(&bs, &[(w(&bs, "t"), a)]).unwrap();
        assert_eq!(set.len(), 10);
        assert!(set.contains(&w(&bs, "T a a t A")));

        let z = z2();
        let (a, b) = (z.alphabet().letter("a").unwrap(), z.alphabet().letter("b").unwrap());
        let (ai, bi) = (z.alphabet().inverse(a), z.alphabet().inverse(b));
        let edges: Vec<(Word, Letter)> = [(b, a), (b, ai), (bi, a), (bi, ai)]
            .iter()
            .map(|&(x, y)| (Word::single(x), y))
            .collect();
        let set = stacking_relation_set(&z, &edges).unwrap();
        assert!(set.contains(&w(&z, "B A b a")));
        assert!(set.contains(&w(&z, "B a b A")));
        for r in &set {
            assert_eq!(r.len(), 4);
            assert!(z.normal_form(r).unwrap().is_empty());
        }
    }

    #[test]
    fn s_phi_examples() {
        let bs = Bs1p::new(2).unwrap();
        let a = bs.alphabet().letter("a").unwrap();
        assert!(s_phi_membership(&bs, &[], a, &[a]).unwrap());
        assert!(s_phi_membership(&bs, &w(&bs, "t"), a, &w(&bs, "T a a t")).unwrap());
        assert!(!s_phi_membership(&bs, &w(&bs, "t"), a, &[a]).unwrap());
        // Any word for the source element works, not only its normal form.
        assert!(s_phi_membership(&bs, &w(&bs, "t a A"), a, &w(&bs, "T a a t")).unwrap());
    }
}
