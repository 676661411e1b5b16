//! Concrete structures: Baumslag-Solitar groups, complete rewriting
//! systems, almost convex groups on a ball, and the normal-form language of
//! Thompson's group `F`.

mod bs1p;
mod crs;
mod shortlex_ac;
mod thompson;

pub use bs1p::{Bs1p, Bs1pElement};
pub use crs::CrsStructure;
pub use shortlex_ac::{almost_convexity_check, AcReport, AcWitness, ShortlexAc};
pub use thompson::{ControlState, PdaState, ThompsonF};
