//! Named constructors for stacking structures.
//!
//! A structure spec is `name` or `name:args`; the registry looks up the
//! factory for `name` and hands it the rest.

use std::path::Path;

use crate::builtin::{Bs1p, CrsStructure, ShortlexAc};
use crate::rewriting::RewritingSystem;
use crate::stacking::StackingStructure;
use crate::{Error, Result};

/// Resource limits shared by all factories.
#[derive(Clone, Debug)]
pub struct BuildContext {
    pub budget: usize,
    /// Maximum word length for the desk-scale completeness check of
    /// rewriting systems.
    pub check_len: usize,
    pub cap: usize,
}

impl Default for BuildContext {
    fn default() -> Self {
        BuildContext {
            budget: crate::DEFAULT_BUDGET,
            check_len: 6,
            cap: crate::DEFAULT_MEMORY_CAP,
        }
    }
}

pub trait StructureFactory: Send + Sync {
    fn name(&self) -> &'static str;

    /// Spec syntax, e.g. `bs1p:<p>`.
    fn usage(&self) -> &'static str;

    fn build(&self, args: &str, ctx: &BuildContext) -> Result<Box<dyn StackingStructure>>;
}

fn load_system(path: &str, ctx: &BuildContext) -> Result<RewritingSystem> {
    let text = std::fs::read_to_string(Path::new(path))?;
    Ok(RewritingSystem::parse(&text)?.with_budget(ctx.budget))
}

fn parse_usize(what: &str, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Precondition(format!("{what} must be a non-negative integer, got `{s}`")))
}

struct Bs1pFactory;

impl StructureFactory for Bs1pFactory {
    fn name(&self) -> &'static str {
        "bs1p"
    }

    fn usage(&self) -> &'static str {
        "bs1p:<p>"
    }

    fn build(&self, args: &str, _: &BuildContext) -> Result<Box<dyn StackingStructure>> {
        let p = args
            .parse()
            .map_err(|_| Error::Precondition(format!("p must be an integer >= 2, got `{args}`")))?;
        Ok(Box::new(Bs1p::new(p)?))
    }
}

struct CrsFactory;

impl StructureFactory for CrsFactory {
    fn name(&self) -> &'static str {
        "crs"
    }

    fn usage(&self) -> &'static str {
        "crs:<file>"
    }

    fn build(&self, args: &str, ctx: &BuildContext) -> Result<Box<dyn StackingStructure>> {
        let system = load_system(args, ctx)?;
        Ok(Box::new(
            CrsStructure::new(system, ctx.check_len)?.with_name(format!("crs:{args}")),
        ))
    }
}

struct ShortlexAcFactory;

impl StructureFactory for ShortlexAcFactory {
    fn name(&self) -> &'static str {
        "shortlex-ac"
    }

    fn usage(&self) -> &'static str {
        "shortlex-ac:<file>:<radius>:<k>"
    }

    /// The file holds a complete rewriting system whose irreducible words
    /// serve as the normal-form oracle for shortlex distances.
    fn build(&self, args: &str, ctx: &BuildContext) -> Result<Box<dyn StackingStructure>> {
        let mut parts = args.rsplitn(3, ':');
        let (k, radius, file) = match (parts.next(), parts.next(), parts.next()) {
            (Some(k), Some(r), Some(f)) => (k, r, f),
            _ => return Err(Error::Precondition(format!("expected {}", self.usage()))),
        };
        let k = parse_usize("k", k)?;
        let radius = parse_usize("radius", radius)?;
        let system = load_system(file, ctx)?;
        let report = system.check_complete(ctx.check_len);
        if !report.passed() {
            return Err(Error::NotComplete(report.summary(system.alphabet())));
        }
        Ok(Box::new(
            ShortlexAc::new(Box::new(system), radius, k, ctx.cap)?.with_name(format!("shortlex-ac:{args}")),
        ))
    }
}

struct ThompsonFactory;

impl StructureFactory for ThompsonFactory {
    fn name(&self) -> &'static str {
        "thompson-f"
    }

    fn usage(&self) -> &'static str {
        "thompson-f"
    }

    fn build(&self, _: &str, _: &BuildContext) -> Result<Box<dyn StackingStructure>> {
        Err(Error::Precondition(
            "thompson-f provides a normal-form recognizer only (see the thompson-nf command), \
             not a stacking map"
                .into(),
        ))
    }
}

/// Factories keyed by name, in registration order.
pub struct StructureRegistry {
    factories: Vec<Box<dyn StructureFactory>>,
}

impl Default for StructureRegistry {
    fn default() -> Self {
        StructureRegistry::with_builtins()
    }
}

impl StructureRegistry {
    pub fn empty() -> Self {
        StructureRegistry { factories: Vec::new() }
    }

    pub fn with_builtins() -> Self {
        let mut r = StructureRegistry::empty();
        r.register(Box::new(Bs1pFactory));
        r.register(Box::new(CrsFactory));
        r.register(Box::new(ShortlexAcFactory));
        r.register(Box::new(ThompsonFactory));
        r
    }

    /// Adds a factory; a later registration under the same name replaces
    /// the earlier one.
    pub fn register(&mut self, factory: Box<dyn StructureFactory>) {
        self.factories.retain(|f| f.name() != factory.name());
        self.factories.push(factory);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.factories.iter().map(|f| f.name()).collect()
    }

    pub fn usages(&self) -> Vec<&'static str> {
        self.factories.iter().map(|f| f.usage()).collect()
    }

    pub fn build(&self, spec: &str, ctx: &BuildContext) -> Result<Box<dyn StackingStructure>> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let factory = self
            .factories
            .iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownStructure(spec.to_string()))?;
        factory.build(args, ctx)
    }
}
