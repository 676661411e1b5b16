//! Independent validation of a diagram against a relator set and a
//! normal-form oracle.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{Dart, VanKampenDiagram};
use crate::cayley::NormalFormOracle;
use crate::words::{Letter, Word};

const MAX_LISTED: usize = 10;

/// Outcome of one check; only the first few failures are kept verbatim.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, detail: impl Into<String>) {
        self.failed += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(detail.into());
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// (i) the boundary is a closed walk at the basepoint reading `w`.
    pub boundary_label: CheckOutcome,
    /// (ii) every face is a closed walk labeled by a relator, up to rotation
    /// and inversion.
    pub face_labels: CheckOutcome,
    /// (iii) `V - E + F = 1` and the 1-skeleton is connected.
    pub euler: CheckOutcome,
    /// (iv) vertex words are normal forms consistent along edges, and each
    /// labels a path from the basepoint inside the diagram.
    pub vertex_words: CheckOutcome,
    /// (v) faces and the reversed boundary use every edge once in each
    /// direction.
    pub edge_pairing: CheckOutcome,
}

impl DiagramReport {
    pub fn checks(&self) -> [&CheckOutcome; 5] {
        [
            &self.boundary_label,
            &self.face_labels,
            &self.euler,
            &self.vertex_words,
            &self.edge_pairing,
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed())
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "diagram: {} vertices, {} edges, {} faces\n",
            self.vertices, self.edges, self.faces
        );
        for c in self.checks() {
            let status = if c.passed() { "ok" } else { "FAILED" };
            out.push_str(&format!("  {:<14} {status}\n", c.name));
            for f in &c.failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out
    }
}

fn matches_relator(label: &Word, inverse: &Word, relators: &BTreeSet<Word>) -> bool {
    (0..label.len().max(1)).any(|k| relators.contains(&label.rotated(k)) || relators.contains(&inverse.rotated(k)))
}

/// Runs the five checks. Never fails: problems are recorded in the report.
pub fn validate_diagram(
    d: &VanKampenDiagram,
    relators: &BTreeSet<Word>,
    w: &[Letter],
    oracle: &(impl NormalFormOracle + ?Sized),
) -> DiagramReport {
    let al = d.alphabet();
    let mut report = DiagramReport {
        vertices: d.vertices().len(),
        edges: d.edges().len(),
        faces: d.faces().len(),
        boundary_label: CheckOutcome::new("boundary"),
        face_labels: CheckOutcome::new("faces"),
        euler: CheckOutcome::new("euler"),
        vertex_words: CheckOutcome::new("vertex-words"),
        edge_pairing: CheckOutcome::new("edge-pairing"),
    };

    // Reference integrity first; nothing else is meaningful without it.
    let nv = d.vertices().len();
    let ne = d.edges().len();
    let mut malformed = Vec::new();
    if d.basepoint() >= nv {
        malformed.push(format!("basepoint {} out of range", d.basepoint()));
    }
    for (i, e) in d.edges().iter().enumerate() {
        if e.from >= nv || e.to >= nv || !al.contains(e.label) {
            malformed.push(format!("edge {} has a dangling endpoint or label", i + 1));
        }
    }
    let all_darts = d.faces().iter().flatten().chain(d.boundary());
    if let Some(bad) = all_darts.clone().find(|x| x.edge >= ne) {
        malformed.push(format!("dart {} refers to a missing edge", bad.signed()));
    }
    if !malformed.is_empty() {
        for c in [
            &mut report.boundary_label,
            &mut report.face_labels,
            &mut report.euler,
            &mut report.vertex_words,
            &mut report.edge_pairing,
        ] {
            for m in &malformed {
                c.fail(format!("malformed: {m}"));
            }
        }
        return report;
    }

    let closed_walk = |walk: &[Dart], start: Option<usize>| -> Option<String> {
        let first = match (walk.first(), start) {
            (None, _) => return None,
            (Some(&x), None) => d.source(x),
            (Some(&x), Some(s)) => {
                if d.source(x) != s {
                    return Some(format!("starts at vertex {} instead of {s}", d.source(x)));
                }
                s
            }
        };
        for pair in walk.windows(2) {
            if d.target(pair[0]) != d.source(pair[1]) {
                return Some(format!("darts {} and {} do not meet", pair[0].signed(), pair[1].signed()));
            }
        }
        let last = d.target(*walk.last().expect("nonempty"));
        (last != first).then(|| format!("ends at vertex {last}, not at {first}"))
    };

    // (i)
    if let Some(problem) = closed_walk(d.boundary(), Some(d.basepoint())) {
        report.boundary_label.fail(format!("boundary {problem}"));
    }
    let bw = d.boundary_word();
    if bw[..] != *w {
        report
            .boundary_label
            .fail(format!("boundary reads `{}`, expected `{}`", al.render(&bw), al.render(w)));
    }

    // (ii)
    for (i, face) in d.faces().iter().enumerate() {
        if face.is_empty() {
            report.face_labels.fail(format!("face {i} is empty"));
            continue;
        }
        if let Some(problem) = closed_walk(face, None) {
            report.face_labels.fail(format!("face {i} {problem}"));
        }
        let label = d.face_label(i);
        if !matches_relator(&label, &al.formal_inverse(&label), relators) {
            report
                .face_labels
                .fail(format!("face {i} reads `{}`, not a relator", al.render(&label)));
        }
    }

    // (iii)
    let chi = d.euler_characteristic();
    if chi != 1 {
        report.euler.fail(format!("V - E + F = {chi}"));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in d.edges() {
        adj[e.from].push(e.to);
        adj[e.to].push(e.from);
    }
    let mut seen = vec![false; nv];
    let mut stack = vec![d.basepoint()];
    seen[d.basepoint()] = true;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    let unreached = seen.iter().filter(|s| !**s).count();
    if unreached > 0 {
        report.euler.fail(format!("{unreached} vertices not connected to the basepoint"));
    }

    // (iv)
    let words = d.vertices();
    if !words[d.basepoint()].is_empty() {
        report.vertex_words.fail("basepoint is not labeled by the empty word");
    }
    for (v, y) in words.iter().enumerate() {
        match oracle.normal_form(y) {
            Ok(nf) if nf == *y => {}
            Ok(nf) => report.vertex_words.fail(format!(
                "vertex {v} word `{}` is not a normal form (`{}`)",
                al.render(y),
                al.render(&nf)
            )),
            Err(e) => report.vertex_words.fail(format!("vertex {v}: {e}")),
        }
    }
    for (i, e) in d.edges().iter().enumerate() {
        match oracle.extend(&words[e.from], e.label) {
            Ok(z) if z == words[e.to] => {}
            Ok(z) => report.vertex_words.fail(format!(
                "edge {} from `{}` by {} should reach `{}`, reaches `{}`",
                i + 1,
                al.render(&words[e.from]),
                al.token(e.label),
                al.render(&z),
                al.render(&words[e.to])
            )),
            Err(err) => report.vertex_words.fail(format!("edge {}: {err}", i + 1)),
        }
    }
    let mut step: HashMap<(usize, Letter), Vec<usize>> = HashMap::new();
    for i in 0..ne {
        for x in [Dart::forward(i), Dart::forward(i).inv()] {
            step.entry((d.source(x), d.label(x))).or_default().push(d.target(x));
        }
    }
    for (v, y) in words.iter().enumerate() {
        let mut here: BTreeSet<usize> = BTreeSet::from([d.basepoint()]);
        for &l in y.iter() {
            here = here
                .iter()
                .filter_map(|&u| step.get(&(u, l)))
                .flatten()
                .copied()
                .collect();
        }
        if !here.contains(&v) {
            report.vertex_words.fail(format!(
                "no path labeled `{}` from the basepoint to vertex {v}",
                al.render(y)
            ));
        }
    }

    // (v)
    let mut uses = vec![[0usize; 2]; ne];
    let reversed = d.boundary().iter().map(|x| x.inv());
    for x in d.faces().iter().flatten().copied().chain(reversed) {
        uses[x.edge][usize::from(x.forward)] += 1;
    }
    for (i, [back, fwd]) in uses.iter().enumerate() {
        if *back != 1 || *fwd != 1 {
            report.edge_pairing.fail(format!(
                "edge {} used {fwd} times forward and {back} times backward",
                i + 1
            ));
        }
    }
    report
}
