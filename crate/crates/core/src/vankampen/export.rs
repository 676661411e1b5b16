//! JSON, DOT and SVG renderings of a diagram.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Dart, Edge, VanKampenDiagram};
use crate::words::Alphabet;
use crate::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
    Svg,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            "svg" => Ok(ExportFormat::Svg),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    id: usize,
    word: String,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    id: usize,
    from: usize,
    to: usize,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct JsonFace {
    id: usize,
    boundary: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct JsonDiagram {
    basepoint: usize,
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
    faces: Vec<JsonFace>,
    boundary: Vec<i64>,
}

fn signed(ds: &[Dart]) -> Vec<i64> {
    ds.iter().map(|d| d.signed()).collect()
}

fn to_json(d: &VanKampenDiagram) -> JsonDiagram {
    let al = d.alphabet();
    JsonDiagram {
        basepoint: d.basepoint(),
        vertices: d
            .vertices()
            .iter()
            .enumerate()
            .map(|(id, w)| JsonVertex {
                id,
                word: al.render(w),
            })
            .collect(),
        edges: d
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| JsonEdge {
                id: i + 1,
                from: e.from,
                to: e.to,
                label: al.token(e.label).to_string(),
            })
            .collect(),
        faces: d
            .faces()
            .iter()
            .enumerate()
            .map(|(id, f)| JsonFace {
                id,
                boundary: signed(f),
            })
            .collect(),
        boundary: signed(d.boundary()),
    }
}

/// Reads a diagram written by [`export_diagram`] in JSON format. Vertex ids
/// must be `0..V` and edge ids `1..=E`, in order.
pub fn import_json(text: &str, alphabet: Arc<Alphabet>) -> Result<VanKampenDiagram> {
    let raw: JsonDiagram = serde_json::from_str(text)?;
    let bad = |m: String| Error::Precondition(format!("diagram JSON: {m}"));
    let mut vertices = Vec::with_capacity(raw.vertices.len());
    for (i, v) in raw.vertices.iter().enumerate() {
        if v.id != i {
            return Err(bad(format!("vertex id {} at position {i}", v.id)));
        }
        vertices.push(alphabet.parse_word(&v.word)?);
    }
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (i, e) in raw.edges.iter().enumerate() {
        if e.id != i + 1 {
            return Err(bad(format!("edge id {} at position {}", e.id, i + 1)));
        }
        let label = alphabet
            .letter(&e.label)
            .ok_or_else(|| Error::UnknownToken(e.label.clone()))?;
        edges.push(Edge {
            from: e.from,
            to: e.to,
            label,
        });
    }
    let darts = |ids: &[i64]| -> Result<Vec<Dart>> {
        ids.iter()
            .map(|&id| Dart::from_signed(id).ok_or_else(|| bad("edge id 0".into())))
            .collect()
    };
    let mut faces = Vec::with_capacity(raw.faces.len());
    for (i, f) in raw.faces.iter().enumerate() {
        if f.id != i {
            return Err(bad(format!("face id {} at position {i}", f.id)));
        }
        faces.push(darts(&f.boundary)?);
    }
    let boundary = darts(&raw.boundary)?;
    Ok(VanKampenDiagram::from_parts(
        alphabet,
        raw.basepoint,
        vertices,
        edges,
        faces,
        boundary,
    ))
}

pub fn export_diagram(d: &VanKampenDiagram, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&to_json(d)).expect("plain data serializes");
            s.push('\n');
            s
        }
        ExportFormat::Dot => to_dot(d),
        ExportFormat::Svg => to_svg(d),
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn to_dot(d: &VanKampenDiagram) -> String {
    let al = d.alphabet();
    let mut out = String::from("graph vankampen {\n  node [shape=circle, fontsize=10];\n");
    for (i, w) in d.vertices().iter().enumerate() {
        let word = if w.is_empty() { "ε".to_string() } else { al.render(w) };
        let extra = if i == d.basepoint() { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  v{i} [label=\"{}\"{extra}];", word.replace('"', "\\\""));
    }
    for e in d.edges() {
        let _ = writeln!(
            out,
            "  v{} -- v{} [label=\"{}\", dir=forward];",
            e.from,
            e.to,
            al.token(e.label).replace('"', "\\\"")
        );
    }
    out.push_str("}\n");
    out
}

/// Tutte layout: boundary vertices on the unit circle in order of first
/// appearance, every other vertex at the average of its neighbours.
fn layout(d: &VanKampenDiagram) -> Vec<(f64, f64)> {
    let n = d.vertices().len();
    let mut pos = vec![(0.0f64, 0.0f64); n];
    let mut fixed = vec![false; n];
    let mut ring = Vec::new();
    let walk = std::iter::once(d.basepoint()).chain(d.boundary().iter().map(|&x| d.target(x)));
    for v in walk {
        if !fixed[v] {
            fixed[v] = true;
            ring.push(v);
        }
    }
    let m = ring.len();
    for (i, &v) in ring.iter().enumerate() {
        let theta = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * i as f64 / m.max(1) as f64;
        pos[v] = if m == 1 { (0.0, 0.0) } else { (theta.cos(), theta.sin()) };
    }
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in d.edges() {
        if e.from != e.to {
            nbrs[e.from].push(e.to);
            nbrs[e.to].push(e.from);
        }
    }
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for v in 0..n {
            if fixed[v] || nbrs[v].is_empty() {
                continue;
            }
            let k = nbrs[v].len() as f64;
            let (sx, sy) = nbrs[v]
                .iter()
                .fold((0.0, 0.0), |(x, y), &u| (x + pos[u].0, y + pos[u].1));
            let next = (sx / k, sy / k);
            moved = moved.max((next.0 - pos[v].0).abs() + (next.1 - pos[v].1).abs());
            pos[v] = next;
        }
        if moved < 1e-9 {
            break;
        }
    }
    pos
}

fn to_svg(d: &VanKampenDiagram) -> String {
    const SIZE: f64 = 600.0;
    const MARGIN: f64 = 40.0;
    let al = d.alphabet();
    let scale = (SIZE - 2.0 * MARGIN) / 2.0;
    let px: Vec<(f64, f64)> = layout(d)
        .into_iter()
        .map(|(x, y)| (MARGIN + (x + 1.0) * scale, MARGIN + (1.0 - y) * scale))
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for face in d.faces() {
        let points: Vec<String> = face
            .iter()
            .map(|&x| {
                let (a, b) = px[d.source(x)];
                format!("{a:.3},{b:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"#cfe0f5\" fill-opacity=\"0.6\" stroke=\"none\"/>",
            points.join(" ")
        );
    }
    let mut parallel: HashMap<(usize, usize), usize> = HashMap::new();
    for e in d.edges() {
        let (x1, y1) = px[e.from];
        let (x2, y2) = px[e.to];
        let key = (e.from.min(e.to), e.from.max(e.to));
        let copy = parallel.entry(key).or_insert(0);
        let offset = 8.0 * *copy as f64;
        *copy += 1;
        let _ = writeln!(
            out,
            "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"black\"/>"
        );
        let (mx, my) = ((x1 + x2) / 2.0 + offset, (y1 + y2) / 2.0 - 4.0 - offset);
        let _ = writeln!(
            out,
            "<text x=\"{mx:.3}\" y=\"{my:.3}\" font-size=\"11\" fill=\"#a03020\">{}</text>",
            escape(al.token(e.label))
        );
    }
    for (i, &(x, y)) in px.iter().enumerate() {
        let fill = if i == d.basepoint() { "#202020" } else { "#606060" };
        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"{fill}\"/>");
    }
    out.push_str("</svg>\n");
    out
}
