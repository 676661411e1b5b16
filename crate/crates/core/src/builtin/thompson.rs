//! The normal-form language of Thompson's group `F` over
//! `{x0, X0, x1, X1}` (capitals are inverses): words avoiding the subwords
//! `x0 X0`, `X0 x0`, `x1 X1`, `X1 x1`, `x0 x0 x1`, `x0 x0 X1` whose prefixes
//! all have `x0`-exponent sum at most zero.
//!
//! Membership is decided by a deterministic pushdown automaton: a finite
//! automaton for the forbidden subwords runs in product with a one-symbol
//! stack that holds one `X0` per unit of negative exponent sum.

use std::sync::Arc;

use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Sym {
    X0,
    X0Inv,
    X1,
    X1Inv,
}

/// Finite-control state: the relevant suffix of the input read so far.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Control {
    Start,
    /// last letter X0
    AfterX0Inv,
    /// last letter x1
    AfterX1,
    /// last letter X1
    AfterX1Inv,
    /// last letter x0, the one before it not x0
    AfterX0,
    /// last two letters x0 x0
    AfterX0X0,
}

/// State of the recognizer after a prefix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PdaState {
    Running {
        control: ControlState,
        /// Number of `X0` symbols above the bottom marker.
        stack: u64,
    },
    Fail,
}

/// Opaque finite-control component of [`PdaState`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ControlState(Control);

impl PdaState {
    pub fn initial() -> Self {
        PdaState::Running {
            control: ControlState(Control::Start),
            stack: 0,
        }
    }

    fn step(self, s: Sym) -> Self {
        let PdaState::Running { control, stack } = self else {
            return PdaState::Fail;
        };
        use Control::*;
        let next = match (control.0, s) {
            (AfterX0 | AfterX0X0, Sym::X0Inv) | (AfterX0Inv, Sym::X0) => return PdaState::Fail,
            (AfterX1, Sym::X1Inv) | (AfterX1Inv, Sym::X1) => return PdaState::Fail,
            (AfterX0X0, Sym::X1 | Sym::X1Inv) => return PdaState::Fail,
            (AfterX0 | AfterX0X0, Sym::X0) => AfterX0X0,
            (_, Sym::X0) => AfterX0,
            (_, Sym::X0Inv) => AfterX0Inv,
            (_, Sym::X1) => AfterX1,
            (_, Sym::X1Inv) => AfterX1Inv,
        };
        let stack = match s {
            Sym::X0Inv => stack + 1,
            Sym::X0 if stack == 0 => return PdaState::Fail,
            Sym::X0 => stack - 1,
            _ => stack,
        };
        PdaState::Running {
            control: ControlState(next),
            stack,
        }
    }

    pub fn accepting(self) -> bool {
        matches!(self, PdaState::Running { .. })
    }
}

/// Recognizer for the normal forms of Thompson's group `F`.
#[derive(Clone, Debug)]
pub struct ThompsonF {
    alphabet: Arc<Alphabet>,
}

impl Default for ThompsonF {
    fn default() -> Self {
        ThompsonF::new()
    }
}

impl ThompsonF {
    pub fn new() -> Self {
        let alphabet = Alphabet::from_pairs(&[("x0", "X0"), ("x1", "X1")]).expect("builtin alphabet");
        ThompsonF {
            alphabet: Arc::new(alphabet),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    fn sym(&self, l: Letter) -> Result<Sym> {
        Ok(match l.index() {
            0 => Sym::X0,
            1 => Sym::X0Inv,
            2 => Sym::X1,
            3 => Sym::X1Inv,
            _ => {
                return Err(Error::Precondition(format!(
                    "letter index {} is not in {{x0, X0, x1, X1}}",
                    l.index()
                )))
            }
        })
    }

    /// Runs the pushdown automaton on `w`.
    pub fn run(&self, w: &[Letter]) -> Result<PdaState> {
        let mut state = PdaState::initial();
        for &l in w {
            state = state.step(self.sym(l)?);
        }
        Ok(state)
    }

    pub fn in_c(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.run(w)?.accepting())
    }

    /// Parses tokens first, so words over another alphabet are rejected with
    /// an error rather than misread.
    pub fn in_c_str(&self, text: &str) -> Result<bool> {
        self.in_c(&self.alphabet.parse_word(text)?)
    }

    pub fn expsum_x0(&self, w: &[Letter]) -> Result<i64> {
        w.iter().try_fold(0i64, |acc, &l| {
            Ok(acc
                + match self.sym(l)? {
                    Sym::X0 => 1,
                    Sym::X0Inv => -1,
                    _ => 0,
                })
        })
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let f = ThompsonF::new();
        assert!(f.in_c_str("X0 x1").unwrap());
        assert!(!f.in_c_str("x0").unwrap());
        assert!(!f.in_c_str("x1 X1").unwrap());
        assert!(f.in_c_str("").unwrap());
        assert!(f.in_c_str("X0 X0 x1 x0 x0").unwrap());
        assert!(!f.in_c_str("X0 X0 x1 x0 x0 x1").unwrap());
        assert!(!f.in_c_str("X0 x0").unwrap());
        assert!(f.in_c_str("X0 x1 x0").unwrap());
    }

    #[test]
    fn wrong_alphabet_is_an_error() {
        let f = ThompsonF::new();
        assert!(f.in_c_str("a").is_err());
        assert!(f.in_c(&[Letter::new(7)]).is_err());
    }

    #[test]
    fn exponent_sum() {
        let f = ThompsonF::new();
        let w = f.parse_word("X0 x1 X0 x0").unwrap();
        assert_eq!(f.expsum_x0(&w).unwrap(), -1);
    }
}
