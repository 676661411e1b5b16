//! Geodesic stacking from almost convexity, computed on a finite ball.
//!
//! Normal forms are shortlex least geodesics. A path lies *in* `B(n)` when
//! all its vertices are within distance `n` and none of its edges joins two
//! vertices of the sphere `S(n)` (such an edge has its midpoint outside the
//! ball).

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cayley::{Ball, EdgeClass, NormalFormOracle};
use crate::stacking::StackingStructure;
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

/// Shortlex least geodesic words for every element of `ball`, by element
/// index. Assumes `ball` is ordered so that BFS distances are exact.
fn shortlex_forms(ball: &Ball) -> Vec<Word> {
    let al = ball.alphabet();
    let mut order: Vec<usize> = (0..ball.len()).collect();
    order.sort_by_key(|&i| ball.distance(i));
    let mut forms: Vec<Option<Word>> = vec![None; ball.len()];
    forms[0] = Some(Word::empty());
    for &g in &order[1..] {
        let d = ball.distance(g);
        let mut best: Option<Word> = None;
        for b in al.letters() {
            // g = h b with h one step closer
            let Some(h) = ball.neighbor(g, al.inverse(b)) else {
                continue;
            };
            if ball.distance(h) + 1 != d {
                continue;
            }
            let cand = forms[h].as_ref().expect("closer elements come first").appended(b);
            if best.as_ref().is_none_or(|x| cand < *x) {
                best = Some(cand);
            }
        }
        forms[g] = best;
    }
    forms.into_iter().map(|f| f.expect("every element is reached")).collect()
}

/// Shortlex least word of length at most `max_len` labeling a path in
/// `B(n)` from `from` to `to`. Iterative deepening keeps the enumeration in
/// shortlex order.
fn shortlex_in_ball_path(ball: &Ball, from: usize, to: usize, n: usize, max_len: usize) -> Option<Word> {
    fn dfs(ball: &Ball, cur: usize, to: usize, n: usize, left: usize, path: &mut Vec<Letter>) -> bool {
        if left == 0 {
            return cur == to;
        }
        for a in ball.alphabet().letters() {
            let Some(next) = ball.neighbor(cur, a) else { continue };
            let (dc, dn) = (ball.distance(cur), ball.distance(next));
            if dn > n || (dc == n && dn == n) {
                continue;
            }
            path.push(a);
            if dfs(ball, next, to, n, left - 1, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    (0..=max_len).find_map(|len| {
        let mut path = Vec::with_capacity(len);
        dfs(ball, from, to, n, len, &mut path).then(|| Word::from(path))
    })
}

/// The shortlex structure of an almost convex pair `(G, A)` restricted to
/// `B(radius)`, with the stacking map of Cases I, II and III.
pub struct ShortlexAc {
    alphabet: Arc<Alphabet>,
    oracle: Box<dyn NormalFormOracle>,
    radius: usize,
    k: usize,
    ball: Ball,
    forms: Vec<Word>,
    by_form: HashMap<Word, usize>,
    phi: HashMap<(usize, Letter), Word>,
    name: String,
}

impl ShortlexAc {
    /// Computes shortlex forms on `B(radius + 1)` and the stacking image of
    /// every recursive edge leaving `B(radius)`.
    pub fn new(oracle: Box<dyn NormalFormOracle>, radius: usize, k: usize, cap: usize) -> Result<Self> {
        let alphabet = Arc::clone(oracle.alphabet());
        if !alphabet.is_symmetric() {
            return Err(Error::InvalidAlphabet("generating set must be inverse-closed".into()));
        }
        let ball = Ball::build(oracle.as_ref(), radius + 1, cap)?;
        let forms = shortlex_forms(&ball);
        let by_form = forms.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut s = ShortlexAc {
            alphabet,
            oracle,
            radius,
            k,
            ball,
            forms,
            by_form,
            phi: HashMap::new(),
            name: format!("shortlex-ac:{radius}:{k}"),
        };
        s.compute_phi()?;
        Ok(s)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ac_constant(&self) -> usize {
        self.k
    }

    fn refuted(&self, n: usize, from: usize, to: usize) -> Error {
        Error::AlmostConvexityRefuted {
            radius: n,
            k: self.k,
            from: self.alphabet.render(&self.forms[from]),
            to: self.alphabet.render(&self.forms[to]),
        }
    }

    fn compute_phi(&mut self) -> Result<()> {
        let al = Arc::clone(&self.alphabet);
        let mut phi = HashMap::new();
        for g in 0..self.ball.len() {
            let dg = self.ball.distance(g);
            if dg > self.radius {
                continue;
            }
            for a in al.letters() {
                let ga = self.ball.neighbor(g, a).expect("neighbors of B(r) lie in B(r+1)");
                if self.class_of(g, a, ga) == EdgeClass::Degenerate {
                    continue;
                }
                let dga = self.ball.distance(ga);
                let image = if dg == dga {
                    // Case I
                    shortlex_in_ball_path(&self.ball, g, ga, dg, self.k)
                        .ok_or_else(|| self.refuted(dg, g, ga))?
                } else if dga == dg + 1 {
                    // Case II: z_{ga} = z_h b
                    let (&b, prefix) = self.forms[ga].split_last().expect("nonempty form");
                    let h = self.by_form[prefix];
                    let x = shortlex_in_ball_path(&self.ball, g, h, dg, self.k)
                        .ok_or_else(|| self.refuted(dg, g, h))?;
                    x.appended(b)
                } else {
                    // Case III: z_g = z_{g'} c
                    let (&c, prefix) = self.forms[g].split_last().expect("nonempty form");
                    let g1 = self.by_form[prefix];
                    let y = shortlex_in_ball_path(&self.ball, g1, ga, dga, self.k)
                        .ok_or_else(|| self.refuted(dga, g1, ga))?;
                    Word::single(al.inverse(c)).concat(&y)
                };
                phi.insert((g, a), image);
            }
        }
        self.phi = phi;
        Ok(())
    }

    fn class_of(&self, g: usize, a: Letter, ga: usize) -> EdgeClass {
        crate::cayley::classify_edge(&self.forms[g], a, &self.forms[ga], &self.alphabet)
    }

    fn index_of(&self, y: &[Letter]) -> Result<usize> {
        self.by_form.get(y).copied().ok_or_else(|| {
            Error::OutsideDomain(self.alphabet.render(y))
        })
    }
}

impl NormalFormOracle for ShortlexAc {
    fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    fn normal_form(&self, w: &[Letter]) -> Result<Word> {
        let canonical = self.oracle.normal_form(w)?;
        let i = self
            .ball
            .lookup(&canonical)
            .ok_or_else(|| Error::OutsideDomain(self.alphabet.render(w)))?;
        Ok(self.forms[i].clone())
    }

    fn extend(&self, y: &Word, a: Letter) -> Result<Word> {
        let g = match self.by_form.get(&y[..]) {
            Some(&g) => g,
            None => return self.normal_form(&y.appended(a)),
        };
        let ga = self
            .ball
            .neighbor(g, a)
            .ok_or_else(|| Error::OutsideDomain(self.alphabet.render(&y.appended(a))))?;
        Ok(self.forms[ga].clone())
    }
}

impl StackingStructure for ShortlexAc {
    fn describe(&self) -> String {
        self.name.clone()
    }

    fn bound(&self) -> usize {
        self.k + 1
    }

    fn stacking_map(&self, source: &Word, label: Letter) -> Result<Word> {
        let g = self.index_of(source)?;
        self.phi.get(&(g, label)).cloned().ok_or_else(|| {
            if self.ball.distance(g) > self.radius {
                Error::OutsideDomain(format!(
                    "edge ({}, {})",
                    self.alphabet.render(source),
                    self.alphabet.token(label)
                ))
            } else {
                Error::Structure("stacking map requested on a degenerate edge".into())
            }
        })
    }

    fn relator_schema(&self) -> Option<Vec<Word>> {
        let mut keys: Vec<_> = self.phi.keys().copied().collect();
        keys.sort();
        Some(
            keys.into_iter()
                .map(|(g, a)| self.phi[&(g, a)].appended(self.alphabet.inverse(a)))
                .collect(),
        )
    }

    fn domain_radius(&self) -> Option<usize> {
        Some(self.radius)
    }
}

/// A pair of sphere points with no short in-ball path between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcWitness {
    pub radius: usize,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AcReport {
    pub n_max: usize,
    pub k: usize,
    pub pairs_checked: usize,
    pub failures: Vec<AcWitness>,
}

impl AcReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "almost convexity with k = {} up to n = {}: {} ({} pairs checked, {} failures)",
            self.k,
            self.n_max,
            if self.passed() { "pass" } else { "FAIL" },
            self.pairs_checked,
            self.failures.len()
        );
        if let Some(w) = self.failures.first() {
            out.push_str(&format!(
                "\n  witness: `{}` and `{}` in S({}) have no path of length <= {} inside B({})",
                w.from, w.to, w.radius, self.k, w.radius
            ));
        }
        out
    }
}

/// For every `n <= n_max` and every pair `g != h` in `S(n)` at distance at
/// most 2, searches for a path of length at most `k` inside `B(n)`.
pub fn almost_convexity_check<O: NormalFormOracle + ?Sized>(
    oracle: &O,
    n_max: usize,
    k: usize,
    cap: usize,
) -> Result<AcReport> {
    let ball = Ball::build(oracle, n_max + 1, cap)?;
    let al = ball.alphabet();
    let mut report = AcReport {
        n_max,
        k,
        pairs_checked: 0,
        failures: Vec::new(),
    };
    for n in 0..=n_max {
        for g in ball.sphere(n) {
            let mut near: Vec<usize> = Vec::new();
            for a in al.letters() {
                let Some(x) = ball.neighbor(g, a) else { continue };
                near.push(x);
                for b in al.letters() {
                    if let Some(y) = ball.neighbor(x, b) {
                        near.push(y);
                    }
                }
            }
            near.sort_unstable();
            near.dedup();
            for h in near {
                if h <= g || ball.distance(h) != n {
                    continue;
                }
                report.pairs_checked += 1;
                if shortlex_in_ball_path(&ball, g, h, n, k).is_none() {
                    report.failures.push(AcWitness {
                        radius: n,
                        from: al.render(&ball.element(g).canonical),
                        to: al.render(&ball.element(h).canonical),
                    });
                }
            }
        }
    }
    Ok(report)
}
