//! Charges along a path system and the vertex of negative final charge.

use crate::error::{Error, Result};
use crate::graph::{PlanarGraph, Vertex};
use crate::paths::PathSystem;

/// Charges in half-units, indexed by vertex id (zero for absent vertices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeMap {
    /// `2 (deg - 3)`.
    pub initial: Vec<i64>,
    /// Initial charge plus indegree minus outdegree.
    pub after: Vec<i64>,
}

impl ChargeMap {
    pub fn initial_sum(&self) -> i64 {
        self.initial.iter().sum()
    }

    pub fn after_sum(&self) -> i64 {
        self.after.iter().sum()
    }
}

/// How a negative vertex `w0` sends its charge away.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Degree 4 or 5 and every incident edge starts a path.
    AllOutgoing,
    /// Degree 4, three outgoing paths and no incoming one.
    ThreeOutgoing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discharge {
    pub charges: ChargeMap,
    /// Smallest vertex with negative final charge.
    pub w0: Vertex,
    pub case: Case,
    /// All vertices with negative final charge, ascending.
    pub negative: Vec<Vertex>,
}

pub fn charges(g: &PlanarGraph, x: &PathSystem) -> ChargeMap {
    let mut initial = vec![0; g.capacity()];
    let mut after = vec![0; g.capacity()];
    for v in g.vertices() {
        let ch = 2 * (g.degree(v) as i64 - 3);
        initial[v as usize] = ch;
        after[v as usize] = ch + x.indeg(v) as i64 - x.outdeg(v) as i64;
    }
    ChargeMap { initial, after }
}

/// Which case applies to a vertex of negative charge.
pub fn classify(g: &PlanarGraph, x0: &PathSystem, w: Vertex) -> Result<Case> {
    let (d, i, o) = (g.degree(w), x0.indeg(w), x0.outdeg(w));
    match (d, i, o) {
        (4 | 5, _, o) if o == d => Ok(Case::AllOutgoing),
        (4, 0, 3) => Ok(Case::ThreeOutgoing),
        _ => Err(Error::assumption(
            "negative-charge-cases",
            format!("vertex {w} has degree {d}, indegree {i}, outdegree {o}"),
        )),
    }
}

/// Moves half a unit of charge along every path and picks the smallest
/// vertex left negative.
pub fn discharge(g: &PlanarGraph, x0: &PathSystem) -> Result<Discharge> {
    let charges = charges(g, x0);
    let expected = 2 * (2 * g.edge_count() as i64 - 3 * g.vertex_count() as i64);
    if charges.initial_sum() != expected || charges.after_sum() != expected {
        return Err(Error::assumption(
            "charge-conservation",
            format!(
                "sums {} and {}, expected {expected}",
                charges.initial_sum(),
                charges.after_sum()
            ),
        ));
    }
    for v in g.vertices() {
        let d = g.degree(v);
        if (d <= 3 || d >= 6) && charges.after[v as usize] < 0 {
            return Err(Error::assumption(
                "nonnegative-charge",
                format!(
                    "vertex {v} of degree {d} ends with charge {}/2",
                    charges.after[v as usize]
                ),
            ));
        }
    }
    let negative: Vec<Vertex> = g.vertices().filter(|&v| charges.after[v as usize] < 0).collect();
    let Some(&w0) = negative.first() else {
        return Err(Error::assumption(
            "negative-charge",
            format!("no negative vertex, total {expected}/2"),
        ));
    };
    let case = classify(g, x0, w0)?;
    Ok(Discharge {
        charges,
        w0,
        case,
        negative,
    })
}
