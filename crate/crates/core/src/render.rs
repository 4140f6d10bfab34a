//! Module diagrams: nodes are basis monomials, edges are nonzero matrix
//! entries of `Le`, `Lf`, `Lh`, `S` or `can`. Diagrams are emitted as DOT or
//! as an ASCII grid with one row per `s`-degree and one column per weight.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dmodules::{
    act, can, op_matrix, weight_space_basis, DModError, Element, MapKind, ModuleFamily, Monomial,
    OpName, WeightWindow,
};
use crate::filtration::{monodromy, FiltrationError};
use crate::linalg::{image, LinalgError};
use crate::scalar::{fmt_rational, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("empty window")]
    EmptyWindow,
    #[error("unknown diagram kind {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    DModule(#[from] DModError),
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagramKind {
    DualVerma,
    Verma,
    DeformedDualVerma,
    DeformedVerma,
    MaxExt,
    Monodromy,
    Comparison,
}

impl DiagramKind {
    pub fn parse(name: &str) -> Result<Self, RenderError> {
        Ok(match name {
            "dual-verma" => DiagramKind::DualVerma,
            "verma" => DiagramKind::Verma,
            "deformed-dual-verma" => DiagramKind::DeformedDualVerma,
            "deformed-verma" => DiagramKind::DeformedVerma,
            "max-ext" => DiagramKind::MaxExt,
            "monodromy" => DiagramKind::Monodromy,
            "comparison" => DiagramKind::Comparison,
            _ => return Err(RenderError::UnknownKind(name.to_string())),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            DiagramKind::DualVerma => "dual-verma",
            DiagramKind::Verma => "verma",
            DiagramKind::DeformedDualVerma => "deformed-dual-verma",
            DiagramKind::DeformedVerma => "deformed-verma",
            DiagramKind::MaxExt => "max-ext",
            DiagramKind::Monodromy => "monodromy",
            DiagramKind::Comparison => "comparison",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Dot,
    Ascii,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSpec {
    pub kind: DiagramKind,
    pub slice_min: i64,
    pub slice_max: i64,
    pub window: WeightWindow,
    /// Truncation order of the deformed families.
    pub n: usize,
}

impl DiagramSpec {
    pub fn single(kind: DiagramKind, slice: i64, window: WeightWindow, n: usize) -> Self {
        DiagramSpec {
            kind,
            slice_min: slice,
            slice_max: slice,
            window,
            n,
        }
    }
}

/// Spec of the numbered figure, if there is one.
pub fn figure_spec(which: u8) -> Option<DiagramSpec> {
    use DiagramKind::*;
    let wide = |kind| DiagramSpec {
        kind,
        slice_min: -2,
        slice_max: 2,
        window: WeightWindow::new(-6, 2),
        n: 3,
    };
    let one = |kind| DiagramSpec::single(kind, 0, WeightWindow::new(-6, 0), 3);
    Some(match which {
        1 => wide(DualVerma),
        2 => wide(Verma),
        3 => one(DeformedDualVerma),
        4 => one(DeformedVerma),
        5 => wide(MaxExt),
        6 => one(MaxExt),
        7 => one(Monodromy),
        8 => one(Comparison),
        _ => return None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Highlight {
    None,
    Grey,
    Blue,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub family: String,
    pub monomial: Monomial,
    pub label: String,
    pub slice: i64,
    pub weight: i64,
    pub m: u32,
    pub highlight: Highlight,
    /// Monodromy degree: least `r` with the node in `μ^r`.
    pub layer: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeOp {
    Le,
    Lf,
    Lh,
    S,
    #[serde(rename = "can")]
    Can,
}

impl EdgeOp {
    fn color(self) -> &'static str {
        match self {
            EdgeOp::Le => "green",
            EdgeOp::Lf => "red",
            EdgeOp::Lh => "blue",
            EdgeOp::S => "black",
            EdgeOp::Can => "gray40",
        }
    }

    fn name(self) -> &'static str {
        match self {
            EdgeOp::Le => "Le",
            EdgeOp::Lf => "Lf",
            EdgeOp::Lh => "Lh",
            EdgeOp::S => "S",
            EdgeOp::Can => "can",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: String,
    pub target: String,
    pub op: EdgeOp,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
    /// The target lies outside the window and is not a node.
    pub stub: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub title: String,
    pub spec: DiagramSpec,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

fn node_id(prefix: &str, m: &Monomial) -> String {
    format!("{prefix}{}_{}_{}", m.k, m.l, m.m)
}

fn family_prefix(f: ModuleFamily) -> &'static str {
    match f {
        ModuleFamily::Plus => "p",
        ModuleFamily::Shriek => "q",
        ModuleFamily::DefPlus(_) => "dp",
        ModuleFamily::DefShriek(_) => "dq",
        ModuleFamily::MaxExt => "x",
    }
}

struct Panel {
    family: ModuleFamily,
    ops: Vec<EdgeOp>,
}

fn edge_op_name(op: EdgeOp) -> Option<OpName> {
    match op {
        EdgeOp::Le => Some(OpName::Le),
        EdgeOp::Lf => Some(OpName::Lf),
        EdgeOp::Lh => Some(OpName::Lh),
        EdgeOp::S => Some(OpName::S),
        EdgeOp::Can => None,
    }
}

/// Image of one node under an edge operator.
fn image_of(op: EdgeOp, family: ModuleFamily, mono: Monomial) -> Result<Element, DModError> {
    let v = Element::monomial(family, mono)?;
    match edge_op_name(op) {
        Some(name) => Ok(act(name, &v)),
        None => can(&v),
    }
}

pub fn build_diagram(spec: &DiagramSpec) -> Result<Diagram, RenderError> {
    if spec.window.is_empty() || spec.slice_min > spec.slice_max {
        return Err(RenderError::EmptyWindow);
    }
    use EdgeOp::*;
    let n = spec.n;
    let panels = match spec.kind {
        DiagramKind::DualVerma => vec![Panel {
            family: ModuleFamily::Plus,
            ops: vec![Le, Lf, Lh],
        }],
        DiagramKind::Verma => vec![Panel {
            family: ModuleFamily::Shriek,
            ops: vec![Le, Lf, Lh],
        }],
        DiagramKind::DeformedDualVerma => vec![Panel {
            family: ModuleFamily::DefPlus(n),
            ops: vec![Le, Lf, Lh, S],
        }],
        DiagramKind::DeformedVerma => vec![Panel {
            family: ModuleFamily::DefShriek(n),
            ops: vec![Le, Lf, Lh, S],
        }],
        DiagramKind::MaxExt | DiagramKind::Monodromy => {
            vec![Panel {
                family: ModuleFamily::MaxExt,
                ops: vec![Le, Lf, Lh, S],
            }]
        }
        DiagramKind::Comparison => vec![
            Panel {
                family: ModuleFamily::DefShriek(n),
                ops: vec![Le, Lf, Can],
            },
            Panel {
                family: ModuleFamily::DefPlus(n),
                ops: vec![Le, Lf],
            },
        ],
    };
    if panels.iter().any(|p| p.family.order() == 0) {
        return Err(DModError::ZeroOrder.into());
    }

    let mut nodes = Vec::new();
    for panel in &panels {
        for slice in spec.slice_min..=spec.slice_max {
            for w in spec.window.weights(slice) {
                for mono in weight_space_basis(panel.family, slice, w) {
                    nodes.push(Node {
                        id: node_id(family_prefix(panel.family), &mono),
                        family: panel.family.to_string(),
                        monomial: mono,
                        label: mono.text(panel.family),
                        slice,
                        weight: w,
                        m: mono.m,
                        highlight: Highlight::None,
                        layer: None,
                    });
                }
            }
        }
    }
    let ids: BTreeSet<String> = nodes.iter().map(|n| n.id.clone()).collect();

    let mut edges = Vec::new();
    for panel in &panels {
        let own: Vec<Monomial> = nodes
            .iter()
            .filter(|n| n.family == panel.family.to_string())
            .map(|n| n.monomial)
            .collect();
        for mono in own {
            for &op in &panel.ops {
                let img = image_of(op, panel.family, mono)?;
                let target_prefix = if op == Can {
                    family_prefix(ModuleFamily::DefPlus(n))
                } else {
                    family_prefix(panel.family)
                };
                for (t, c) in img.terms() {
                    let target = node_id(target_prefix, t);
                    edges.push(Edge {
                        source: node_id(family_prefix(panel.family), &mono),
                        stub: !ids.contains(&target),
                        target,
                        op,
                        coeff: c.clone(),
                    });
                }
            }
        }
    }

    match spec.kind {
        DiagramKind::Monodromy => annotate_monodromy(spec, &mut nodes)?,
        DiagramKind::Comparison => annotate_comparison(spec, &mut nodes)?,
        _ => {}
    }
    edges.sort();
    let title = match (spec.kind, spec.slice_min == spec.slice_max) {
        (_, true) => format!("{} slice {}", spec.kind.name(), spec.slice_min),
        _ => format!(
            "{} slices {}..{}",
            spec.kind.name(),
            spec.slice_min,
            spec.slice_max
        ),
    };
    Ok(Diagram {
        title,
        spec: *spec,
        nodes,
        edges,
    })
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::from_integer(0.into()); dim];
    v[i] = Rational::from_integer(1.into());
    v
}

fn annotate_monodromy(spec: &DiagramSpec, nodes: &mut [Node]) -> Result<(), RenderError> {
    for slice in spec.slice_min..=spec.slice_max {
        for w in spec.window.weights(slice) {
            let om = op_matrix(MapKind::Op(OpName::S), ModuleFamily::MaxExt, slice, w)?;
            if om.source.is_empty() {
                continue;
            }
            let f = monodromy(&om.matrix)?;
            for (i, mono) in om.source.iter().enumerate() {
                let v = unit(om.source.len(), i);
                let mut layer = None;
                for r in f.r_min()..=f.r_max() {
                    if f.get(r).contains(&v)? {
                        layer = Some(r);
                        break;
                    }
                }
                let id = node_id(family_prefix(ModuleFamily::MaxExt), mono);
                if let Some(node) = nodes.iter_mut().find(|n| n.id == id) {
                    node.layer = layer;
                }
            }
        }
    }
    Ok(())
}

/// Grey: `im(s ∘ can)` on the right. Blue: `s`-degree 0 on the left, and the
/// monomials spanning `ker S` on `MaxExt` on the right.
fn annotate_comparison(spec: &DiagramSpec, nodes: &mut [Node]) -> Result<(), RenderError> {
    let n = spec.n;
    let right = family_prefix(ModuleFamily::DefPlus(n));
    let left = family_prefix(ModuleFamily::DefShriek(n));
    for slice in spec.slice_min..=spec.slice_max {
        for w in spec.window.weights(slice) {
            let s1 = op_matrix(MapKind::S1n, ModuleFamily::DefShriek(n), slice, w)?;
            let im = image(&s1.matrix);
            let s_max = op_matrix(MapKind::Op(OpName::S), ModuleFamily::MaxExt, slice, w)?;
            for (i, mono) in s1.target.iter().enumerate() {
                let id = node_id(right, mono);
                let grey = im.contains(&unit(s1.target.len(), i))?;
                let in_ker = s_max
                    .source
                    .iter()
                    .position(|x| x == mono)
                    .is_some_and(|j| {
                        (0..s_max.matrix.rows())
                            .all(|r| s_max.matrix.get(r, j) == &Rational::from_integer(0.into()))
                    });
                if let Some(node) = nodes.iter_mut().find(|x| x.id == id) {
                    node.highlight = if grey {
                        Highlight::Grey
                    } else if in_ker {
                        Highlight::Blue
                    } else {
                        Highlight::None
                    };
                }
            }
            for mono in &s1.source {
                if mono.m == 0 {
                    let id = node_id(left, mono);
                    if let Some(node) = nodes.iter_mut().find(|x| x.id == id) {
                        node.highlight = Highlight::Blue;
                    }
                }
            }
        }
    }
    Ok(())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit(d: &Diagram, format: Format) -> String {
    match format {
        Format::Dot => emit_dot(d),
        Format::Ascii => emit_ascii(d),
        Format::Json => serde_json::to_string_pretty(d).expect("diagram serializes") + "\n",
    }
}

pub fn emit_dot(d: &Diagram) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&d.title)).unwrap();
    if d.nodes.is_empty() && d.edges.is_empty() {
        out.push_str("}\n");
        return out;
    }
    out.push_str("  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
    let mut clusters: BTreeMap<(String, i64), Vec<&Node>> = BTreeMap::new();
    for node in &d.nodes {
        clusters
            .entry((node.family.clone(), node.slice))
            .or_default()
            .push(node);
    }
    for ((family, slice), members) in &clusters {
        let name = format!("cluster_{}_{}", family.replace(['(', ')'], ""), slice);
        writeln!(out, "  subgraph {} {{", quote(&name)).unwrap();
        writeln!(
            out,
            "    label={};",
            quote(&format!("{family} slice {slice}"))
        )
        .unwrap();
        for node in members {
            let mut attrs = vec![format!("label={}", quote(&node.label))];
            match node.highlight {
                Highlight::Grey => attrs.push("style=filled, fillcolor=grey80".into()),
                Highlight::Blue => attrs.push("style=filled, fillcolor=lightblue".into()),
                Highlight::None => {}
            }
            if let Some(r) = node.layer {
                attrs.push(format!("xlabel={}", quote(&format!("μ{r}"))));
            }
            writeln!(out, "    {} [{}];", quote(&node.id), attrs.join(", ")).unwrap();
        }
        out.push_str("  }\n");
    }
    let stubs: BTreeSet<&str> = d
        .edges
        .iter()
        .filter(|e| e.stub)
        .map(|e| e.target.as_str())
        .collect();
    for stub in stubs {
        writeln!(out, "  {} [shape=point, style=dashed];", quote(stub)).unwrap();
    }
    for e in &d.edges {
        let mut attrs = vec![
            format!("color={}", e.op.color()),
            format!("label={}", quote(&fmt_rational(&e.coeff))),
            format!("op={}", e.op.name()),
        ];
        if e.op == EdgeOp::Can || e.stub {
            attrs.push("style=dashed".into());
        }
        writeln!(
            out,
            "  {} -> {} [{}];",
            quote(&e.source),
            quote(&e.target),
            attrs.join(", ")
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// One block per (family, slice) in node order; rows are `s`-degrees from the top, columns
/// are weights in increasing order. `*` marks grey nodes, `+` blue ones and
/// `@r` the monodromy degree.
pub fn emit_ascii(d: &Diagram) -> String {
    let mut out = format!("{}\n", d.title);
    let mut blocks: Vec<((String, i64), Vec<&Node>)> = Vec::new();
    for node in &d.nodes {
        let key = (node.family.clone(), node.slice);
        match blocks.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(node),
            None => blocks.push((key, vec![node])),
        }
    }
    for ((family, slice), members) in &blocks {
        let weights: BTreeSet<i64> = members.iter().map(|n| n.weight).collect();
        let top = members.iter().map(|n| n.m).max().unwrap_or(0);
        let cell = |n: &Node| {
            let mut s = n.label.clone();
            match n.highlight {
                Highlight::Grey => s.push('*'),
                Highlight::Blue => s.push('+'),
                Highlight::None => {}
            }
            if let Some(r) = n.layer {
                s.push_str(&format!("@{r}"));
            }
            s
        };
        let width = members
            .iter()
            .map(|n| cell(n).chars().count())
            .max()
            .unwrap_or(1)
            .max(4);
        writeln!(out, "\n{family} slice {slice}").unwrap();
        for m in (0..=top).rev() {
            let mut line = format!("m={m} |");
            for w in &weights {
                let text = members
                    .iter()
                    .find(|n| n.m == m && n.weight == *w)
                    .map_or(".".to_string(), |n| cell(n));
                line.push_str(&format!(" {text:^width$} |"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let mut axis = "    |".to_string();
        for w in &weights {
            axis.push_str(&format!(" {:^width$} |", format!("w={w}")));
        }
        out.push_str(axis.trim_end());
        out.push('\n');
    }
    out
}

/// Same node set and same edge multiset, coefficients included.
pub fn structural_equal(a: &Diagram, b: &Diagram) -> bool {
    let nodes = |d: &Diagram| d.nodes.iter().cloned().collect::<BTreeSet<_>>();
    let edges = |d: &Diagram| {
        let mut e = d.edges.clone();
        e.sort();
        e
    };
    nodes(a) == nodes(b) && edges(a) == edges(b)
}

/// Recomputes every edge coefficient from `act`/`can`; returns the edges that
/// disagree.
pub fn revalidate(d: &Diagram) -> Result<Vec<Edge>, RenderError> {
    let by_id: BTreeMap<&str, &Node> = d.nodes.iter().map(|n| (n.id.as_str(), n)).collect();
    let n = d.spec.n;
    let mut bad = Vec::new();
    for e in &d.edges {
        let Some(src) = by_id.get(e.source.as_str()) else {
            bad.push(e.clone());
            continue;
        };
        let family = parse_family_label(&src.family, n)?;
        let img = image_of(e.op, family, src.monomial)?;
        let target_family = if e.op == EdgeOp::Can {
            ModuleFamily::DefPlus(n)
        } else {
            family
        };
        let found = img
            .terms()
            .find(|(t, _)| node_id(family_prefix(target_family), t) == e.target)
            .map(|(_, c)| c.clone());
        if found.as_ref() != Some(&e.coeff) {
            bad.push(e.clone());
        }
    }
    Ok(bad)
}

fn parse_family_label(label: &str, n: usize) -> Result<ModuleFamily, RenderError> {
    let tag = label.split('(').next().unwrap_or(label);
    Ok(ModuleFamily::parse(tag, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn dual_verma_edges() {
        let d = build_diagram(&figure_spec(1).unwrap()).unwrap();
        assert!(d.nodes.iter().all(|n| n.monomial.m == 0));
        for e in d.edges.iter().filter(|e| e.op == EdgeOp::Le) {
            let src = d.nodes.iter().find(|n| n.id == e.source).unwrap();
            assert_eq!(e.coeff, rat(-i64::from(src.monomial.k)));
        }
        assert!(revalidate(&d).unwrap().is_empty());
        assert!(d.edges.iter().any(|e| e.stub));
    }

    #[test]
    fn max_ext_s_edges() {
        let d = build_diagram(&figure_spec(6).unwrap()).unwrap();
        for e in d.edges.iter().filter(|e| e.op == EdgeOp::S) {
            let src = d.nodes.iter().find(|n| n.id == e.source).unwrap();
            assert_eq!(src.m, 0);
            assert!(src.monomial.l < 0);
        }
        assert_eq!(d.edges.iter().filter(|e| e.op == EdgeOp::S).count(), 3);
    }

    #[test]
    fn comparison_highlights() {
        let d = build_diagram(&figure_spec(8).unwrap()).unwrap();
        assert!(d.edges.iter().any(|e| e.op == EdgeOp::Can));
        let grey: Vec<&Node> = d
            .nodes
            .iter()
            .filter(|n| n.highlight == Highlight::Grey)
            .collect();
        assert!(grey.iter().all(|n| n.family == "DefPlus(3)"));
        // s x2^0 at the top weight is in im(s can); s x1 x2^-1 is not, s^2 x1 x2^-1 is
        assert!(grey.iter().any(|n| n.monomial == Monomial::new(0, 0, 1)));
        assert!(grey.iter().any(|n| n.monomial == Monomial::new(1, -1, 2)));
        assert!(!grey.iter().any(|n| n.monomial == Monomial::new(1, -1, 1)));
        let blue_right: BTreeSet<Monomial> = d
            .nodes
            .iter()
            .filter(|n| n.highlight == Highlight::Blue && n.family == "DefPlus(3)")
            .map(|n| n.monomial)
            .collect();
        assert_eq!(
            blue_right,
            BTreeSet::from([
                Monomial::new(0, 0, 0),
                Monomial::new(1, -1, 1),
                Monomial::new(2, -2, 1),
                Monomial::new(3, -3, 1)
            ])
        );
        assert!(revalidate(&d).unwrap().is_empty());
    }

    #[test]
    fn monodromy_layers() {
        let d = build_diagram(&figure_spec(7).unwrap()).unwrap();
        let layer = |k, l, m| {
            d.nodes
                .iter()
                .find(|n| n.monomial == Monomial::new(k, l, m))
                .unwrap()
                .layer
        };
        assert_eq!(layer(0, 0, 0), Some(0));
        assert_eq!(layer(1, -1, 1), Some(-1));
        assert_eq!(layer(1, -1, 0), Some(1));
    }

    #[test]
    fn emit_small_cases() {
        let spec = DiagramSpec::single(DiagramKind::Verma, 0, WeightWindow::new(0, 0), 1);
        let mut d = build_diagram(&spec).unwrap();
        let dot = emit_dot(&d);
        assert!(dot.starts_with("digraph \"verma slice 0\" {"));
        assert_eq!(dot.matches("[label=").count(), 1);
        d.nodes.clear();
        d.edges.clear();
        assert_eq!(emit_dot(&d), "digraph \"verma slice 0\" {\n}\n");
        let empty = DiagramSpec::single(DiagramKind::Verma, 0, WeightWindow::new(0, -2), 1);
        assert_eq!(build_diagram(&empty), Err(RenderError::EmptyWindow));
    }

    #[test]
    fn structural_equality() {
        let spec = figure_spec(3).unwrap();
        let a = build_diagram(&spec).unwrap();
        let b = build_diagram(&spec).unwrap();
        assert!(structural_equal(&a, &a));
        assert!(structural_equal(&a, &b));
        assert_eq!(emit_dot(&a), emit_dot(&b));
        let mut c = a.clone();
        c.edges[0].coeff += rat(1);
        assert!(!structural_equal(&a, &c));
        assert_eq!(revalidate(&c).unwrap().len(), 1);
        let mut r = a.clone();
        r.edges.reverse();
        assert!(structural_equal(&a, &r));
    }

    #[test]
    fn ascii_layout() {
        let text = emit_ascii(&build_diagram(&figure_spec(6).unwrap()).unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines
            .iter()
            .any(|l| l.starts_with("m=1 |") && l.contains("x1 x2^-1 s")));
        assert!(lines
            .iter()
            .any(|l| l.starts_with("m=0 |") && l.contains("x1^3 x2^-3")));
    }

    #[test]
    fn json_roundtrip() {
        let d = build_diagram(&figure_spec(4).unwrap()).unwrap();
        let text = emit(&d, Format::Json);
        let back: Diagram = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }
}
