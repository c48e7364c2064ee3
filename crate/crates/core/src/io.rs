//! JSON files for graphs, lists, colorings and reports, plus DOT export.
//!
//! Every file carries `"format": 1`. Maps are keyed by vertex id and come
//! out in ascending order, so equal values serialize to equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::coloring::{self, Color, Coloring, ListAssignment, Metrics, MonoComponent};
use crate::error::{Error, Result};
use crate::families::MarkedGraph;
use crate::graph::{PlanarGraph, Vertex};

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub format: u32,
    pub vertices: Vec<Vertex>,
    /// Counterclockwise neighbors. When absent, `edges` is embedded afresh.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<Vertex, Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(Vertex, Vertex)>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub marks: BTreeMap<String, Vertex>,
}

impl GraphFile {
    pub fn from_graph(g: &PlanarGraph, marks: &BTreeMap<String, Vertex>) -> Self {
        GraphFile {
            format: FORMAT,
            vertices: g.vertices().collect(),
            rotation: Some(g.vertices().map(|v| (v, g.neighbors(v).to_vec())).collect()),
            edges: None,
            marks: marks.clone(),
        }
    }

    pub fn to_marked(&self) -> Result<MarkedGraph> {
        check_format(self.format)?;
        let graph = match (&self.rotation, &self.edges) {
            (Some(rot), edges) => {
                let edges = edges.clone().unwrap_or_else(|| edges_of(rot));
                PlanarGraph::build(self.vertices.iter().copied(), &edges, Some(rot))?
            }
            (None, Some(edges)) => PlanarGraph::from_edges(self.vertices.iter().copied(), edges)?,
            (None, None) => PlanarGraph::from_edges(self.vertices.iter().copied(), &[])?,
        };
        for (name, &v) in &self.marks {
            if !graph.contains(v) {
                return Err(Error::Format(format!("mark {name} names unknown vertex {v}")));
            }
        }
        Ok(MarkedGraph {
            graph,
            marks: self.marks.clone(),
        })
    }
}

fn edges_of(rot: &BTreeMap<Vertex, Vec<Vertex>>) -> Vec<(Vertex, Vertex)> {
    rot.iter()
        .flat_map(|(&v, nbrs)| nbrs.iter().filter(move |&&w| v < w).map(move |&w| (v, w)))
        .collect()
}

fn check_format(format: u32) -> Result<()> {
    if format == FORMAT {
        Ok(())
    } else {
        Err(Error::Format(format!("unsupported format {format}, expected {FORMAT}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsFile {
    pub format: u32,
    pub lists: BTreeMap<Vertex, Vec<Color>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub format: u32,
    pub colors: BTreeMap<Vertex, Color>,
}

/// Outcome of checking a coloring against a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub format: u32,
    pub max_len: usize,
    pub good: bool,
    /// First vertex that is uncolored or colored off its list.
    pub list_violation: Option<Vertex>,
    pub metrics: Metrics,
    /// A monochromatic component that is not a path of at most `max_len` edges.
    pub witness: Option<MonoComponent>,
}

pub fn verify(g: &PlanarGraph, c: &Coloring, lists: Option<&ListAssignment>, max_len: usize) -> Result<VerifyReport> {
    let list_violation = match lists {
        Some(l) => c.list_violation(g, l),
        None => c.first_uncolored(g),
    };
    if let Some(v) = list_violation.filter(|&v| !c.is_colored(v)) {
        return Err(Error::UncoloredVertex(v));
    }
    let witness = coloring::bad_component(g, c, max_len)?;
    Ok(VerifyReport {
        format: FORMAT,
        max_len,
        good: witness.is_none() && list_violation.is_none(),
        list_violation,
        metrics: coloring::metrics(g, c)?,
        witness,
    })
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(format!("{what}: {e}")))
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn graph_from_json(text: &str) -> Result<MarkedGraph> {
    parse::<GraphFile>(text, "graph")?.to_marked()
}

pub fn graph_to_json(g: &PlanarGraph, marks: &BTreeMap<String, Vertex>) -> String {
    render(&GraphFile::from_graph(g, marks))
}

pub fn lists_from_json(text: &str) -> Result<ListAssignment> {
    let f: ListsFile = parse(text, "lists")?;
    check_format(f.format)?;
    Ok(ListAssignment::from_map(f.lists))
}

pub fn lists_to_json(lists: &ListAssignment) -> String {
    render(&ListsFile {
        format: FORMAT,
        lists: lists.to_map(),
    })
}

pub fn coloring_from_json(text: &str) -> Result<Coloring> {
    let f: ColoringFile = parse(text, "coloring")?;
    check_format(f.format)?;
    Ok(Coloring::from_map(&f.colors))
}

pub fn coloring_to_json(c: &Coloring) -> String {
    render(&ColoringFile {
        format: FORMAT,
        colors: c.to_map(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    render(value)
}

/// Undirected DOT; colored vertices are filled and monochromatic edges drawn bold.
pub fn to_dot(g: &PlanarGraph, c: Option<&Coloring>) -> String {
    const FILL: [&str; 5] = ["lightblue", "salmon", "palegreen", "khaki", "plum"];
    let mut s = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        match c.and_then(|c| c.get(v)) {
            Some(col) => {
                let fill = FILL[col.rem_euclid(FILL.len() as Color) as usize];
                let _ = writeln!(s, "  {v} [style=filled, fillcolor={fill}, xlabel=\"{col}\"];");
            }
            None => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for (u, w) in g.edges() {
        let mono = c.is_some_and(|c| c.get(u).is_some() && c.get(u) == c.get(w));
        let _ = writeln!(s, "  {u} -- {w}{};", if mono { " [penwidth=3]" } else { "" });
    }
    s.push_str("}\n");
    s
}
