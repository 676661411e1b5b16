//! The stacking structure of a minimal finite complete rewriting system.
//!
//! Normal forms are the irreducible words. For a recursive edge `e_{g,a}` the
//! word `y_g a` is reducible while `y_g` is not, so exactly one rule
//! `ũ a -> v` has its left side as a suffix of `y_g a`, and `φ(e) = ũ^-1 v`.

use std::sync::Arc;

use crate::cayley::{EdgeClass, NormalFormOracle};
use crate::rewriting::RewritingSystem;
use crate::stacking::StackingStructure;
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct CrsStructure {
    system: RewritingSystem,
    name: String,
}

impl CrsStructure {
    /// Minimizes `system` (which checks completeness on words up to
    /// `check_len`) and wraps the result.
    pub fn new(system: RewritingSystem, check_len: usize) -> Result<Self> {
        let system = system.minimize(check_len)?;
        Ok(CrsStructure {
            system,
            name: "crs".into(),
        })
    }

    /// Wraps a system that is already minimal over a symmetric alphabet,
    /// without the desk-scale completeness check.
    pub fn from_minimal(system: RewritingSystem) -> Result<Self> {
        if !system.alphabet().is_symmetric() || !system.is_minimal() {
            return Err(Error::Precondition(
                "system must be minimal over an inverse-closed alphabet".into(),
            ));
        }
        Ok(CrsStructure {
            system,
            name: "crs".into(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }

    /// The unique rule `ũ a -> v` with `y a` ending in `ũ a`.
    fn factor(&self, source: &Word, a: Letter) -> Result<usize> {
        self.system.rule_ending(&source.appended(a)).ok_or_else(|| {
            Error::Structure(format!(
                "no rule applies at the end of `{} {}` (system not minimal or complete)",
                self.system.alphabet().render(source),
                self.system.alphabet().token(a)
            ))
        })
    }

    /// Prefix rewriting length of `y_g a`, the measure that decreases along
    /// flow paths.
    pub fn edge_prl(&self, source: &Word, a: Letter) -> Result<usize> {
        self.system.prefix_rewrite_length(&source.appended(a))
    }
}

impl NormalFormOracle for CrsStructure {
    fn alphabet(&self) -> &Arc<Alphabet> {
        self.system.alphabet()
    }

    fn normal_form(&self, w: &[Letter]) -> Result<Word> {
        self.system.reduce(w)
    }
}

impl StackingStructure for CrsStructure {
    fn describe(&self) -> String {
        self.name.clone()
    }

    fn bound(&self) -> usize {
        self.system
            .rules()
            .iter()
            .map(|r| r.lhs.len() + r.rhs.len())
            .max()
            .unwrap_or(1)
    }

    /// Degenerate exactly when `y_g a` or `y_{ga} a^-1` is irreducible.
    fn classify(&self, source: &Word, label: Letter) -> Result<EdgeClass> {
        let ya = source.appended(label);
        if self.system.is_irreducible(&ya) {
            return Ok(EdgeClass::Degenerate);
        }
        let target = self.system.reduce(&ya)?;
        let back = target.appended(self.alphabet().inverse(label));
        Ok(if self.system.is_irreducible(&back) {
            EdgeClass::Degenerate
        } else {
            EdgeClass::Recursive
        })
    }

    fn stacking_map(&self, source: &Word, label: Letter) -> Result<Word> {
        let rule = &self.system.rules()[self.factor(source, label)?];
        let u_tilde = &rule.lhs[..rule.lhs.len() - 1];
        Ok(self.alphabet().formal_inverse(u_tilde).concat(&rule.rhs))
    }

    fn relator_schema(&self) -> Option<Vec<Word>> {
        let al = self.alphabet();
        Some(
            self.system
                .rules()
                .iter()
                .map(|r| {
                    let (&a, u_tilde) = r.lhs.split_last().expect("nonempty lhs");
                    al.formal_inverse(u_tilde).concat(&r.rhs).appended(al.inverse(a))
                })
                .filter(|w| !al.free_reduce(w).is_empty())
                .collect(),
        )
    }
}
