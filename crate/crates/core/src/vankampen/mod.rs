//! Van Kampen diagrams as combinatorial maps, built by the stacking
//! recursion and the seashell procedure.
//!
//! A diagram is a list of vertices (each carrying the normal form of the
//! group element it represents), a list of labeled directed edges, a list of
//! faces and a boundary walk. Faces and the boundary are sequences of
//! [`Dart`]s. Faces are read counterclockwise and so is the boundary, which
//! means that faces together with the *reversed* boundary use every edge
//! exactly once in each direction.

mod export;
mod validate;

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::cayley::EdgeClass;
use crate::stacking::{stacking_reduce, FlowFunction, StackingStructure};
use crate::words::{Alphabet, Letter, Word};
use crate::{Error, Result};

pub use export::{export_diagram, import_json, ExportFormat};
pub use validate::{validate_diagram, CheckOutcome, DiagramReport};

/// An edge traversed in one of its two directions.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn forward(edge: usize) -> Self {
        Dart { edge, forward: true }
    }

    pub fn inv(self) -> Self {
        Dart {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    /// `k` for edge `k - 1` read forward, `-k` read backward.
    pub fn signed(self) -> i64 {
        let k = self.edge as i64 + 1;
        if self.forward {
            k
        } else {
            -k
        }
    }

    pub fn from_signed(id: i64) -> Option<Self> {
        if id == 0 {
            return None;
        }
        Some(Dart {
            edge: (id.unsigned_abs() - 1) as usize,
            forward: id > 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: Letter,
}

#[derive(Clone, Debug)]
pub struct VanKampenDiagram {
    alphabet: Arc<Alphabet>,
    basepoint: usize,
    vertices: Vec<Word>,
    edges: Vec<Edge>,
    faces: Vec<Vec<Dart>>,
    boundary: Vec<Dart>,
}

impl PartialEq for VanKampenDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet.tokens() == other.alphabet.tokens()
            && self.basepoint == other.basepoint
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.faces == other.faces
            && self.boundary == other.boundary
    }
}

impl VanKampenDiagram {
    /// The diagram of the empty word: one vertex, nothing else.
    pub fn single_vertex(alphabet: Arc<Alphabet>) -> Self {
        VanKampenDiagram {
            alphabet,
            basepoint: 0,
            vertices: vec![Word::empty()],
            edges: Vec::new(),
            faces: Vec::new(),
            boundary: Vec::new(),
        }
    }

    /// Assembles a diagram from raw parts without checking anything; see
    /// [`validate_diagram`].
    pub fn from_parts(
        alphabet: Arc<Alphabet>,
        basepoint: usize,
        vertices: Vec<Word>,
        edges: Vec<Edge>,
        faces: Vec<Vec<Dart>>,
        boundary: Vec<Dart>,
    ) -> Self {
        VanKampenDiagram {
            alphabet,
            basepoint,
            vertices,
            edges,
            faces,
            boundary,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn boundary(&self) -> &[Dart] {
        &self.boundary
    }

    /// Number of faces.
    pub fn area(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn source(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge];
        if d.forward {
            e.from
        } else {
            e.to
        }
    }

    pub fn target(&self, d: Dart) -> usize {
        self.source(d.inv())
    }

    pub fn label(&self, d: Dart) -> Letter {
        let l = self.edges[d.edge].label;
        if d.forward {
            l
        } else {
            self.alphabet.inverse(l)
        }
    }

    pub fn walk_label(&self, darts: &[Dart]) -> Word {
        darts.iter().map(|&d| self.label(d)).collect()
    }

    pub fn boundary_word(&self) -> Word {
        self.walk_label(&self.boundary)
    }

    pub fn face_label(&self, i: usize) -> Word {
        self.walk_label(&self.faces[i])
    }

    /// Mirror image: the same complex with boundary and faces read the other
    /// way round, so the boundary word becomes its formal inverse.
    pub fn mirror(&self) -> Self {
        let rev = |ds: &[Dart]| ds.iter().rev().map(|d| d.inv()).collect::<Vec<_>>();
        VanKampenDiagram {
            alphabet: self.alphabet.clone(),
            basepoint: self.basepoint,
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            faces: self.faces.iter().map(|f| rev(f)).collect(),
            boundary: rev(&self.boundary),
        }
    }

    fn add_vertex(&mut self, word: Word) -> usize {
        self.vertices.push(word);
        self.vertices.len() - 1
    }

    fn add_edge(&mut self, from: usize, to: usize, label: Letter) -> Dart {
        self.edges.push(Edge { from, to, label });
        Dart::forward(self.edges.len() - 1)
    }

    /// Path diagram along the normal form `y`, read out and back.
    fn spur(alphabet: Arc<Alphabet>, y: &Word) -> Self {
        let mut d = VanKampenDiagram::single_vertex(alphabet);
        let mut at = d.basepoint;
        let mut out = Vec::with_capacity(y.len());
        for i in 0..y.len() {
            let v = d.add_vertex(y.prefix(i + 1));
            out.push(d.add_edge(at, v, y[i]));
            at = v;
        }
        d.boundary = out.iter().copied().chain(out.iter().rev().map(|d| d.inv())).collect();
        d
    }

    /// Vertices visited by a walk of darts from the basepoint, including the
    /// basepoint itself.
    fn boundary_vertices(&self, darts: impl Iterator<Item = Dart>) -> Vec<usize> {
        let mut out = vec![self.basepoint];
        for d in darts {
            out.push(self.target(d));
        }
        out
    }
}

/// Normal-form diagram of a degenerate edge: a segment with no faces whose
/// boundary reads `y_g a y_{ga}^-1`.
pub fn degenerate_diagram(s: &(impl StackingStructure + ?Sized), source: &Word, a: Letter) -> Result<VanKampenDiagram> {
    if s.classify(source, a)? != EdgeClass::Degenerate {
        return Err(Error::Precondition(format!(
            "edge ({}, {}) is not degenerate",
            s.alphabet().render(source),
            s.alphabet().token(a)
        )));
    }
    let target = s.extend(source, a)?;
    let alphabet = s.alphabet().clone();
    Ok(if target.len() > source.len() {
        VanKampenDiagram::spur(alphabet, &target)
    } else {
        VanKampenDiagram::spur(alphabet, source)
    })
}

/// Folds `d2` onto `d1` along the path labeled `shared` that leaves both
/// basepoints: `d1`'s boundary must end with `shared^-1` and `d2`'s boundary
/// must begin with `shared`. The result's boundary is `d1`'s with that tail
/// removed followed by `d2`'s with that head removed.
pub fn seashell_glue(d1: &VanKampenDiagram, d2: &VanKampenDiagram, shared: &[Letter]) -> Result<VanKampenDiagram> {
    let s = shared.len();
    let n1 = d1.boundary.len();
    if n1 < s || d2.boundary.len() < s {
        return Err(Error::Glue(format!("boundary shorter than the shared path ({s} letters)")));
    }
    let alphabet = d1.alphabet.clone();
    // Path from the basepoint of d1 along `shared`.
    let path1: Vec<Dart> = d1.boundary[n1 - s..].iter().rev().map(|d| d.inv()).collect();
    let path2 = &d2.boundary[..s];
    if d1.walk_label(&path1)[..] != *shared || d2.walk_label(path2)[..] != *shared {
        return Err(Error::Glue(format!(
            "boundaries do not carry `{}` at the fold",
            alphabet.render(shared)
        )));
    }
    let verts1 = d1.boundary_vertices(path1.iter().copied());
    let verts2 = d2.boundary_vertices(path2.iter().copied());
    for verts in [&verts1, &verts2] {
        if verts.iter().collect::<HashSet<_>>().len() != verts.len() {
            return Err(Error::Glue(format!(
                "shared path `{}` is not simple",
                alphabet.render(shared)
            )));
        }
    }

    let mut out = d1.clone();
    let mut vmap: Vec<Option<usize>> = vec![None; d2.vertices.len()];
    for (&v2, &v1) in verts2.iter().zip(&verts1) {
        vmap[v2] = Some(v1);
    }
    // Edge map: d2 edge -> (d1 edge, same orientation?).
    let mut emap: Vec<Option<(usize, bool)>> = vec![None; d2.edges.len()];
    for (p2, p1) in path2.iter().zip(&path1) {
        emap[p2.edge] = Some((p1.edge, p2.forward == p1.forward));
    }
    for (v, slot) in vmap.iter_mut().enumerate() {
        if slot.is_none() {
            *slot = Some(out.add_vertex(d2.vertices[v].clone()));
        }
    }
    for (e, slot) in emap.iter_mut().enumerate() {
        if slot.is_none() {
            let edge = &d2.edges[e];
            let d = out.add_edge(
                vmap[edge.from].expect("mapped"),
                vmap[edge.to].expect("mapped"),
                edge.label,
            );
            *slot = Some((d.edge, true));
        }
    }
    let map = |d: &Dart| {
        let (edge, same) = emap[d.edge].expect("mapped");
        Dart {
            edge,
            forward: d.forward == same,
        }
    };
    out.faces.extend(d2.faces.iter().map(|f| f.iter().map(map).collect()));
    out.boundary.truncate(n1 - s);
    out.boundary.extend(d2.boundary[s..].iter().map(map));
    Ok(out)
}

/// Attaches a face with boundary `a · label(arc)^-1` to a diagram whose
/// boundary reads `y φ z^-1`, replacing the `φ` arc by one new edge `a`.
fn attach_face(d: &mut VanKampenDiagram, y_len: usize, phi_len: usize, a: Letter) {
    let from = if y_len == 0 {
        d.basepoint
    } else {
        d.target(d.boundary[y_len - 1])
    };
    let arc: Vec<Dart> = d.boundary[y_len..y_len + phi_len].to_vec();
    let to = match arc.last() {
        Some(&last) => d.target(last),
        None => from,
    };
    let new = d.add_edge(from, to, a);
    let mut face = vec![new];
    face.extend(arc.iter().rev().map(|x| x.inv()));
    d.faces.push(face);
    d.boundary.splice(y_len..y_len + phi_len, [new]);
}

/// Undirected edge key: the lexicographically smaller of the two
/// orientations.
fn undirected(source: &Word, a: Letter, target: &Word, inv_a: Letter) -> ((Word, Letter), bool) {
    let fwd = (source.clone(), a);
    let bwd = (target.clone(), inv_a);
    if fwd <= bwd {
        (fwd, true)
    } else {
        (bwd, false)
    }
}

/// Builds normal-form diagrams of edges and filling diagrams of trivial
/// words, memoizing the diagram of every recursive edge (one orientation per
/// undirected edge; the other is its mirror).
pub struct DiagramBuilder<'a> {
    flow: FlowFunction<'a>,
    budget: usize,
    memo: BTreeMap<(Word, Letter), VanKampenDiagram>,
    relators: Vec<Word>,
}

impl<'a> DiagramBuilder<'a> {
    pub fn new(structure: &'a dyn StackingStructure, budget: usize) -> Self {
        DiagramBuilder {
            flow: FlowFunction::new(structure),
            budget,
            memo: BTreeMap::new(),
            relators: Vec::new(),
        }
    }

    pub fn structure(&self) -> &'a dyn StackingStructure {
        self.flow.structure()
    }

    /// Face labels `φ(e) a^-1` of every recursive edge whose diagram was
    /// built so far.
    pub fn relators_used(&self) -> &[Word] {
        &self.relators
    }

    /// Normal-form diagram of the edge leaving `source` along `a`, with
    /// boundary `y_g a y_{ga}^-1`.
    pub fn edge_diagram(&mut self, source: &Word, a: Letter) -> Result<VanKampenDiagram> {
        let s = self.structure();
        match s.classify(source, a)? {
            EdgeClass::Degenerate => degenerate_diagram(s, source, a),
            EdgeClass::Recursive => self.recursive_diagram(source, a),
        }
    }

    fn lookup(&self, source: &Word, a: Letter, target: &Word) -> Option<VanKampenDiagram> {
        let inv = self.structure().alphabet().inverse(a);
        let (key, fwd) = undirected(source, a, target, inv);
        self.memo.get(&key).map(|d| if fwd { d.clone() } else { d.mirror() })
    }

    fn store(&mut self, source: &Word, a: Letter, target: &Word, d: VanKampenDiagram) {
        let inv = self.structure().alphabet().inverse(a);
        let (key, fwd) = undirected(source, a, target, inv);
        self.memo.insert(key, if fwd { d } else { d.mirror() });
    }

    /// Normal-form diagram of a recursive edge: the diagrams of the edges of
    /// `Φ(e)` glued in sequence, closed off by one face labeled
    /// `a λ(Φ(e))^-1`.
    ///
    /// Sub-edges are resolved with an explicit stack. Reaching an edge that
    /// is already on the stack means the flow relation has a cycle, which is
    /// reported as an exhausted budget since no finite budget suffices.
    pub fn recursive_diagram(&mut self, source: &Word, a: Letter) -> Result<VanKampenDiagram> {
        let s = self.structure();
        if s.classify(source, a)? != EdgeClass::Recursive {
            return Err(Error::Precondition(format!(
                "edge ({}, {}) is not recursive",
                s.alphabet().render(source),
                s.alphabet().token(a)
            )));
        }
        let target = s.extend(source, a)?;
        if let Some(d) = self.lookup(source, a, &target) {
            return Ok(d);
        }
        let inv = |l| s.alphabet().inverse(l);
        let mut stack: Vec<(Word, Letter, Word)> = vec![(source.clone(), a, target)];
        let mut on_stack: HashSet<(Word, Letter)> = HashSet::new();
        on_stack.insert(undirected(source, a, &stack[0].2, inv(a)).0);
        let mut work = 0usize;
        while let Some((y, b, z)) = stack.last().cloned() {
            work += 1;
            if work > self.budget {
                return Err(Error::budget("van Kampen recursion", self.budget));
            }
            let path = self.flow.evaluate(&y, b)?;
            let mut pending = None;
            for (j, &l) in path.label.iter().enumerate() {
                let (u, v) = (&path.vertices[j], &path.vertices[j + 1]);
                if s.classify(u, l)? == EdgeClass::Recursive && self.lookup(u, l, v).is_none() {
                    pending = Some((u.clone(), l, v.clone()));
                    break;
                }
            }
            if let Some((u, l, v)) = pending {
                let key = undirected(&u, l, &v, inv(l)).0;
                if !on_stack.insert(key) {
                    return Err(Error::budget(
                        format!(
                            "van Kampen recursion (flow cycle through ({}, {}))",
                            s.alphabet().render(&u),
                            s.alphabet().token(l)
                        ),
                        self.budget,
                    ));
                }
                stack.push((u, l, v));
                continue;
            }
            let mut d: Option<VanKampenDiagram> = None;
            for (j, &l) in path.label.iter().enumerate() {
                let u = &path.vertices[j];
                let part = match self.lookup(u, l, &path.vertices[j + 1]) {
                    Some(p) => p,
                    None => degenerate_diagram(s, u, l)?,
                };
                d = Some(match d {
                    None => part,
                    Some(acc) => seashell_glue(&acc, &part, u)?,
                });
            }
            let mut d = d.ok_or_else(|| Error::Structure("empty stacking image".into()))?;
            attach_face(&mut d, y.len(), path.label.len(), b);
            self.relators.push(path.label.appended(inv(b)));
            self.store(&y, b, &z, d);
            on_stack.remove(&undirected(&y, b, &z, inv(b)).0);
            stack.pop();
        }
        Ok(self.lookup(source, a, &s.extend(source, a)?).expect("just built"))
    }

    /// Filling diagram of a word that represents the identity: the
    /// normal-form diagrams of the edges read by `w` from the basepoint,
    /// glued along the normal forms of the prefixes of `w`.
    pub fn fill(&mut self, w: &[Letter]) -> Result<VanKampenDiagram> {
        let s = self.structure();
        let alphabet = s.alphabet().clone();
        if let Some(&bad) = w.iter().find(|l| !alphabet.contains(**l)) {
            return Err(Error::Precondition(format!("letter index {} is not in the alphabet", bad.index())));
        }
        if !stacking_reduce(s, w, self.budget)?.word.is_empty() {
            return Err(Error::Precondition(format!(
                "`{}` does not represent the identity",
                alphabet.render(w)
            )));
        }
        let mut d = VanKampenDiagram::single_vertex(alphabet);
        let mut y = Word::empty();
        for &a in w {
            let part = self.edge_diagram(&y, a)?;
            d = seashell_glue(&d, &part, &y)?;
            y = s.extend(&y, a)?;
        }
        Ok(d)
    }
}

/// Filling diagram of `w` with a fresh builder.
pub fn build_filling_diagram(s: &dyn StackingStructure, w: &[Letter], budget: usize) -> Result<VanKampenDiagram> {
    DiagramBuilder::new(s, budget).fill(w)
}
