//! Finite checks of the flow-function axioms and of geodesic stacking on a
//! Cayley ball.
//!
//! (F2r) cannot be decided on a finite region. What is checked is that the
//! relation `e' -> e` (recursive `e'` on the flow path of recursive `e`)
//! restricted to the ball has no cycle: a cycle refutes (F2r), acyclicity is
//! only evidence for it.

use std::collections::HashMap;

use serde::Serialize;

use super::{FlowFunction, StackingStructure};
use crate::cayley::{Ball, BallEdge, EdgeClass, HalfInt};
use crate::words::Letter;
use crate::{Error, Result};

/// An edge named by the normal form of its source and its label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRef {
    pub source: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: &'static str,
    pub edge: EdgeRef,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub checked: usize,
    pub failed: usize,
}

impl CheckCount {
    fn record(&mut self, ok: bool) -> bool {
        self.checked += 1;
        if !ok {
            self.failed += 1;
        }
        ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowReport {
    pub structure: String,
    pub radius: usize,
    pub explored_radius: usize,
    pub k: usize,
    pub edges: usize,
    pub recursive_edges: usize,
    /// Every edge `g -a-> h` of the ball has its inverse `h -a^-1-> g`.
    pub inverse_edges: CheckCount,
    pub f1: CheckCount,
    pub f2d: CheckCount,
    pub bounded: CheckCount,
    /// Recursive edges whose flow path is a single edge, plus cycles of the
    /// flow relation on the ball.
    pub f2r: CheckCount,
    pub inconclusive: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl FlowReport {
    pub fn passed(&self) -> bool {
        [self.inverse_edges, self.f1, self.f2d, self.bounded, self.f2r]
            .iter()
            .all(|c| c.failed == 0)
    }

    pub fn summary(&self) -> String {
        let line = |name: &str, c: CheckCount| {
            format!(
                "{name}: {} ({} checked, {} failed)",
                if c.failed == 0 { "pass" } else { "FAIL" },
                c.checked,
                c.failed
            )
        };
        let mut out = vec![
            format!(
                "flow verification of {} on B({}) explored to radius {}, k = {}",
                self.structure, self.radius, self.explored_radius, self.k
            ),
            format!("edges: {} ({} recursive)", self.edges, self.recursive_edges),
            line("inverse edges", self.inverse_edges),
            line("F1", self.f1),
            line("F2d", self.f2d),
            line("bounded", self.bounded),
            line("F2r (acyclic on ball)", self.f2r),
            format!("inconclusive: {}", self.inconclusive),
        ];
        for c in self.counterexamples.iter().take(10) {
            out.push(format!(
                "  {} counterexample: edge ({}, {}): {}",
                c.check, c.edge.source, c.edge.label, c.detail
            ));
        }
        out.join("\n")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeodesicReport {
    pub structure: String,
    pub radius: usize,
    pub geodesic_normal_forms: CheckCount,
    pub alpha_decreasing: CheckCount,
    pub inconclusive: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl GeodesicReport {
    pub fn passed(&self) -> bool {
        self.geodesic_normal_forms.failed == 0 && self.alpha_decreasing.failed == 0
    }

    pub fn summary(&self) -> String {
        let mut out = vec![
            format!("geodesic stacking of {} on B({})", self.structure, self.radius),
            format!(
                "geodesic normal forms: {} ({} checked, {} failed)",
                if self.geodesic_normal_forms.failed == 0 { "pass" } else { "FAIL" },
                self.geodesic_normal_forms.checked,
                self.geodesic_normal_forms.failed
            ),
            format!(
                "alpha decreasing along flow: {} ({} checked, {} failed)",
                if self.alpha_decreasing.failed == 0 { "pass" } else { "FAIL" },
                self.alpha_decreasing.checked,
                self.alpha_decreasing.failed
            ),
            format!("inconclusive: {}", self.inconclusive),
        ];
        for c in self.counterexamples.iter().take(10) {
            let at = if c.edge.label.is_empty() {
                format!("`{}`", c.edge.source)
            } else {
                format!("({}, {})", c.edge.source, c.edge.label)
            };
            out.push(format!("  {} counterexample at {at}: {}", c.check, c.detail));
        }
        out.join("\n")
    }
}

/// A recursive edge inside the explored ball.
type Node = (usize, Letter);

struct Walk {
    end: Option<usize>,
    recursive: Vec<Node>,
    label_len: usize,
}

fn walk(flow: &FlowFunction<'_>, explored: &Ball, start: usize, a: Letter) -> Result<(Walk, bool)> {
    let source = &explored.element(start).canonical;
    let label = flow.label(source, a)?;
    let single = label[..] == [a];
    let mut cur = start;
    let mut recursive = Vec::new();
    for &l in label.iter() {
        match explored.neighbor(cur, l) {
            Some(next) => {
                if explored.class(cur, l) == Some(EdgeClass::Recursive) {
                    recursive.push((cur, l));
                }
                cur = next;
            }
            None => {
                return Ok((
                    Walk {
                        end: None,
                        recursive,
                        label_len: label.len(),
                    },
                    single,
                ))
            }
        }
    }
    Ok((
        Walk {
            end: Some(cur),
            recursive,
            label_len: label.len(),
        },
        single,
    ))
}

fn edge_ref(ball: &Ball, source: usize, a: Letter) -> EdgeRef {
    let al = ball.alphabet();
    EdgeRef {
        source: al.render(&ball.element(source).canonical),
        label: al.token(a).to_string(),
    }
}

fn explored_index(ball: &Ball, explored: &Ball, i: usize) -> Result<usize> {
    explored.lookup(&ball.element(i).canonical).ok_or_else(|| {
        Error::Precondition("the explored region must contain the verification ball".into())
    })
}

/// Checks (F1), (F2d), boundedness and acyclicity of the flow relation for
/// every edge of `ball`, walking flow paths through `explored`.
pub fn verify_flow_properties(flow: &FlowFunction<'_>, ball: &Ball, explored: &Ball) -> Result<FlowReport> {
    let s = flow.structure();
    let al = ball.alphabet();
    let k = s.bound();
    let mut report = FlowReport {
        structure: s.describe(),
        radius: ball.radius(),
        explored_radius: explored.radius(),
        k,
        edges: 0,
        recursive_edges: 0,
        inverse_edges: CheckCount::default(),
        f1: CheckCount::default(),
        f2d: CheckCount::default(),
        bounded: CheckCount::default(),
        f2r: CheckCount::default(),
        inconclusive: 0,
        counterexamples: Vec::new(),
    };
    let mut depends: HashMap<Node, Vec<Node>> = HashMap::new();
    let edges: Vec<BallEdge> = ball.edges().collect();
    for e in &edges {
        report.edges += 1;
        let start = explored_index(ball, explored, e.source)?;
        let target = explored_index(ball, explored, e.target)?;
        let here = edge_ref(ball, e.source, e.label);

        let back = ball.neighbor(e.target, al.inverse(e.label));
        if !report.inverse_edges.record(back == Some(e.source)) {
            report.counterexamples.push(Counterexample {
                check: "inverse-edges",
                edge: here.clone(),
                detail: format!(
                    "target `{}` does not lead back along `{}`",
                    al.render(&ball.element(e.target).canonical),
                    al.token(al.inverse(e.label))
                ),
            });
        }

        let (w, single) = walk(flow, explored, start, e.label)?;
        match e.class {
            EdgeClass::Degenerate => {
                if !report.f2d.record(single) {
                    report.counterexamples.push(Counterexample {
                        check: "F2d",
                        edge: here.clone(),
                        detail: "degenerate edge is not its own flow path".into(),
                    });
                }
            }
            EdgeClass::Recursive => {
                report.recursive_edges += 1;
                if !report.bounded.record(w.label_len <= k) {
                    report.counterexamples.push(Counterexample {
                        check: "bounded",
                        edge: here.clone(),
                        detail: format!("flow path has length {} > {k}", w.label_len),
                    });
                }
                if !report.f2r.record(!single) {
                    report.counterexamples.push(Counterexample {
                        check: "F2r",
                        edge: here.clone(),
                        detail: "stacking image is the edge label itself".into(),
                    });
                }
                if w.end.is_some() {
                    depends.insert((start, e.label), w.recursive.clone());
                }
            }
        }
        match w.end {
            None => report.inconclusive += 1,
            Some(end) => {
                if !report.f1.record(end == target) {
                    report.counterexamples.push(Counterexample {
                        check: "F1",
                        edge: here,
                        detail: format!(
                            "flow path ends at `{}` instead of `{}`",
                            explored.alphabet().render(&explored.element(end).canonical),
                            al.render(&ball.element(e.target).canonical)
                        ),
                    });
                }
            }
        }
    }

    for cycle in find_cycles(&depends) {
        report.f2r.failed += 1;
        let shown: Vec<String> = cycle
            .iter()
            .map(|&(v, l)| {
                let r = edge_ref(explored, v, l);
                format!("({}, {})", r.source, r.label)
            })
            .collect();
        let (v, l) = cycle[0];
        report.counterexamples.push(Counterexample {
            check: "F2r",
            edge: edge_ref(explored, v, l),
            detail: format!("flow relation cycle {}", shown.join(" > ")),
        });
    }
    Ok(report)
}

/// One cycle per back edge found by a depth-first search over the
/// dependency graph (self-loops included).
fn find_cycles(depends: &HashMap<Node, Vec<Node>>) -> Vec<Vec<Node>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        Gray,
        Black,
    }
    let mut color: HashMap<Node, Color> = HashMap::new();
    let mut cycles = Vec::new();
    let mut roots: Vec<&Node> = depends.keys().collect();
    roots.sort();
    for &root in roots {
        if color.contains_key(&root) {
            continue;
        }
        let mut stack: Vec<(Node, usize)> = vec![(root, 0)];
        color.insert(root, Color::Gray);
        while let Some((node, next)) = stack.last().copied() {
            let children = depends.get(&node).map(Vec::as_slice).unwrap_or(&[]);
            if next < children.len() {
                stack.last_mut().expect("nonempty").1 += 1;
                let child = children[next];
                match color.get(&child) {
                    None => {
                        color.insert(child, Color::Gray);
                        stack.push((child, 0));
                    }
                    Some(Color::Gray) => {
                        let from = stack.iter().position(|(n, _)| *n == child).expect("on stack");
                        cycles.push(stack[from..].iter().map(|(n, _)| *n).collect());
                    }
                    Some(Color::Black) => {}
                }
            } else {
                color.insert(node, Color::Black);
                stack.pop();
            }
        }
    }
    cycles
}

/// Checks that the normal forms in `ball` are geodesic and that the weight
/// `α` strictly decreases from each recursive edge to the recursive edges on
/// its flow path.
pub fn verify_geodesic_stacking(flow: &FlowFunction<'_>, ball: &Ball, explored: &Ball) -> Result<GeodesicReport> {
    let s = flow.structure();
    let al = ball.alphabet();
    let mut report = GeodesicReport {
        structure: s.describe(),
        radius: ball.radius(),
        geodesic_normal_forms: CheckCount::default(),
        alpha_decreasing: CheckCount::default(),
        inconclusive: 0,
        counterexamples: Vec::new(),
    };
    for (i, el) in ball.elements().iter().enumerate() {
        if !report.geodesic_normal_forms.record(el.canonical.len() == el.distance) {
            report.counterexamples.push(Counterexample {
                check: "geodesic",
                edge: EdgeRef {
                    source: al.render(&ball.element(i).canonical),
                    label: String::new(),
                },
                detail: format!(
                    "normal form has length {} but the element is at distance {}",
                    el.canonical.len(),
                    el.distance
                ),
            });
        }
    }
    let alpha = |v: usize, l: Letter| -> Option<HalfInt> {
        explored
            .neighbor(v, l)
            .map(|t| HalfInt::average(explored.distance(v), explored.distance(t)))
    };
    for e in ball.edges().filter(|e| e.class == EdgeClass::Recursive) {
        let start = explored_index(ball, explored, e.source)?;
        let (w, _) = walk(flow, explored, start, e.label)?;
        if w.end.is_none() {
            report.inconclusive += 1;
        }
        let a_e = ball.alpha(e);
        for (v, l) in w.recursive {
            let a_prime = alpha(v, l).expect("walked edge exists");
            if !report.alpha_decreasing.record(a_prime < a_e) {
                report.counterexamples.push(Counterexample {
                    check: "alpha",
                    edge: edge_ref(ball, e.source, e.label),
                    detail: format!(
                        "recursive edge ({}, {}) on the flow path has weight {a_prime}, not below {a_e}",
                        explored.alphabet().render(&explored.element(v).canonical),
                        explored.alphabet().token(l)
                    ),
                });
            }
        }
    }
    Ok(report)
}

/// Builds `B(radius)` and an explored ball of radius `radius + k` (clamped to
/// the structure's domain) and runs both verifiers.
pub fn verify_structure(
    s: &dyn StackingStructure,
    radius: usize,
    cap: usize,
) -> Result<(FlowReport, GeodesicReport)> {
    let mut explored_radius = radius + s.bound();
    if let Some(domain) = s.domain_radius() {
        if radius > domain {
            return Err(Error::OutsideDomain(format!(
                "B({radius}) (structure defined on B({domain}))"
            )));
        }
        explored_radius = explored_radius.min(domain);
    }
    let explored = Ball::build(s, explored_radius, cap)?;
    let ball = Ball::build(s, radius, cap)?;
    let flow = FlowFunction::new(s);
    let flow_report = verify_flow_properties(&flow, &ball, &explored)?;
    let geodesic = verify_geodesic_stacking(&flow, &ball, &explored)?;
    Ok((flow_report, geodesic))
}
