//! Oracles shared by the integration tests. Nothing here calls into the
//! stacking machinery: each oracle is an independent way to get the answer.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use stackable::{Alphabet, Letter, Word};

/// Every word over `n` letters of length at most `max_len`, shortest first.
pub fn all_words(n: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for l in 0..n {
                let mut v: Vec<Letter> = w.clone();
                v.push(Letter::new(l));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `BS(1,p)` acting on `Q` by `a: x -> x + 1`, `t: x -> p x`, composed as
/// `ρ(uv) = ρ(u) ∘ ρ(v)`. The action is faithful, so two words are equal in
/// the group exactly when their maps agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub scale: BigRational,
    pub shift: BigRational,
}

impl Affine {
    pub fn identity() -> Self {
        Affine {
            scale: BigRational::one(),
            shift: BigRational::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scale.is_one() && self.shift.is_zero()
    }
}

/// Evaluates a word over the tokens `a A t T`.
pub fn affine(p: i64, alphabet: &Alphabet, w: &[Letter]) -> Affine {
    let p = BigRational::from_integer(BigInt::from(p));
    let mut f = Affine::identity();
    for &l in w {
        match alphabet.token(l) {
            "a" => f.shift += &f.scale,
            "A" => f.shift -= &f.scale,
            "t" => f.scale *= &p,
            "T" => f.scale /= &p,
            other => panic!("unexpected token {other}"),
        }
    }
    f
}

pub fn cyclic_reduce(al: &Alphabet, w: &[Letter]) -> Vec<Letter> {
    let mut v = al.free_reduce(w).into_vec();
    while v.len() >= 2 && al.are_inverse(v[0], *v.last().unwrap()) {
        v.pop();
        v.remove(0);
    }
    v
}

fn canonical_cyclic(w: &[Letter]) -> Vec<Letter> {
    (0..w.len().max(1))
        .map(|k| {
            let mut r = w[k.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..k.min(w.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// Minimal number of faces of a van Kampen diagram for `w`, if at most
/// `max_faces`.
///
/// In a diagram with a cyclically reduced nonempty boundary some face shares
/// an arc with the boundary; cutting that face off along the arc replaces a
/// cyclic subword `u` of `w` by `v^-1` for some relator `u v`. Searching over
/// all such cuts, with free reduction after each, is therefore exhaustive.
pub fn min_area(al: &Alphabet, relators: &BTreeSet<Word>, w: &[Letter], max_faces: usize) -> Option<usize> {
    let start = canonical_cyclic(&cyclic_reduce(al, w));
    let mut failed: HashSet<(Vec<Letter>, usize)> = HashSet::new();
    (0..=max_faces).find(|&n| area_at_most(al, relators, &start, n, &mut failed))
}

fn area_at_most(
    al: &Alphabet,
    relators: &BTreeSet<Word>,
    w: &[Letter],
    n: usize,
    failed: &mut HashSet<(Vec<Letter>, usize)>,
) -> bool {
    if w.is_empty() {
        return true;
    }
    if n == 0 || failed.contains(&(w.to_vec(), n)) {
        return false;
    }
    for i in 0..w.len() {
        let mut rot = w[i..].to_vec();
        rot.extend_from_slice(&w[..i]);
        for r in relators {
            for len in 1..=r.len().min(rot.len()) {
                if rot[..len] != r[..len] {
                    break;
                }
                let mut next = al.formal_inverse(&r[len..]).into_vec();
                next.extend_from_slice(&rot[len..]);
                let next = canonical_cyclic(&cyclic_reduce(al, &next));
                if area_at_most(al, relators, &next, n - 1, failed) {
                    return true;
                }
            }
        }
    }
    failed.insert((w.to_vec(), n));
    false
}

/// A word equal to the identity, built from the empty word by inserting
/// cancelling pairs and cyclic conjugates of relators (or their inverses) at
/// random positions, never exceeding `max_len`.
pub fn random_trivial_word<R: Rng>(rng: &mut R, al: &Alphabet, relators: &[Word], max_len: usize) -> Word {
    let letters: Vec<Letter> = al.letters().collect();
    let mut w: Vec<Letter> = Vec::new();
    let insertions = rng.gen_range(1..=6);
    for _ in 0..insertions {
        let piece: Vec<Letter> = if rng.gen_bool(0.5) {
            let l = letters[rng.gen_range(0..letters.len())];
            vec![l, al.inverse(l)]
        } else {
            let r = &relators[rng.gen_range(0..relators.len())];
            let r = if rng.gen_bool(0.5) { r.clone() } else { al.formal_inverse(r) };
            r.rotated(rng.gen_range(0..r.len())).into_vec()
        };
        if w.len() + piece.len() > max_len {
            continue;
        }
        let at = rng.gen_range(0..=w.len());
        w.splice(at..at, piece);
    }
    Word::from(w)
}
