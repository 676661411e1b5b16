//! The sectioned text format shared by presentations and rewriting systems.
//!
//! ```text
//! # Z^2
//! [generators]
//! a A b B
//! [inverses]
//! a A
//! b B
//! [relators]
//! a b A B
//! [rules]
//! b a -> a b
//! a A ->
//! ```

use super::{Alphabet, Word};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
    pub rules: Vec<(Word, Word)>,
}

#[derive(Copy, Clone, PartialEq, Eq)]
enum Section {
    Generators,
    Inverses,
    Relators,
    Rules,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut section = None;
    let mut generators: Vec<String> = Vec::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut relator_lines: Vec<(usize, &str)> = Vec::new();
    let mut rule_lines: Vec<(usize, &str)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            section = Some(match line {
                "[generators]" => Section::Generators,
                "[inverses]" => Section::Inverses,
                "[relators]" => Section::Relators,
                "[rules]" => Section::Rules,
                other => return Err(parse_error(lineno, format!("unknown section {other}"))),
            });
            continue;
        }
        match section {
            None => return Err(parse_error(lineno, "content before the first section")),
            Some(Section::Generators) => {
                generators.extend(line.split_whitespace().map(str::to_string))
            }
            Some(Section::Inverses) => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(parse_error(
                        lineno,
                        "an [inverses] line must hold exactly two tokens",
                    ));
                }
                pairs.push((toks[0].to_string(), toks[1].to_string()));
            }
            Some(Section::Relators) => relator_lines.push((lineno, line)),
            Some(Section::Rules) => rule_lines.push((lineno, line)),
        }
    }

    let alphabet = Alphabet::new(generators, pairs)?;
    let word = |lineno: usize, s: &str| -> Result<Word> {
        alphabet.parse_word(s).map_err(|e| parse_error(lineno, e.to_string()))
    };
    let relators = relator_lines
        .iter()
        .map(|&(n, l)| word(n, l))
        .collect::<Result<Vec<_>>>()?;
    let mut rules = Vec::with_capacity(rule_lines.len());
    for &(n, l) in &rule_lines {
        let (lhs, rhs) = l
            .split_once("->")
            .ok_or_else(|| parse_error(n, "a rule must have the form `lhs -> rhs`"))?;
        let lhs = word(n, lhs)?;
        if lhs.is_empty() {
            return Err(parse_error(n, "rule left-hand side is empty"));
        }
        rules.push((lhs, word(n, rhs)?));
    }
    Ok(GroupFile {
        alphabet,
        relators,
        rules,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_sections() {
        let text = "# comment\n[generators]\na A b B   # trailing\n\n[inverses]\na A\nb B\n\
                    [relators]\na b A B\n[rules]\nb a -> a b\na A ->\n";
        let f = parse_group_file(text).unwrap();
        assert_eq!(f.alphabet.len(), 4);
        assert!(f.alphabet.is_symmetric());
        assert_eq!(f.relators.len(), 1);
        assert_eq!(f.rules.len(), 2);
        assert!(f.rules[1].1.is_empty());
    }

    #[test]
    fn unpaired_generators_are_allowed() {
        let f = parse_group_file("[generators]\na A e\n[inverses]\na A\n").unwrap();
        assert!(!f.alphabet.is_symmetric());
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_group_file("a A\n").is_err());
        assert!(parse_group_file("[generators]\na A\n[inverses]\na\n").is_err());
        assert!(parse_group_file("[generators]\na A\n[inverses]\na a\n").is_err());
        assert!(parse_group_file("[generators]\na\n[rules]\na a\n").is_err());
        assert!(parse_group_file("[generators]\na\n[rules]\n -> a\n").is_err());
        assert!(parse_group_file("[generators]\na\n[relators]\nb\n").is_err());
        assert!(parse_group_file("[stuff]\n").is_err());
    }
}
