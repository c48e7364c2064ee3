//! Small reductions around degree-2 vertices on a face.

use crate::coloring::{Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{FaceId, PlanarGraph, Vertex};

use super::{check_local, pick_avoiding, Adjacency};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// A face whose cycle has exactly one degree-2 vertex, all others of degree 3.
    FaceCycle {
        face: FaceId,
        cycle: Vec<Vertex>,
        low: Vertex,
    },
    /// A facial path between two degree-2 vertices whose inner vertices have degree 3.
    Degree2Path { face: FaceId, path: Vec<Vertex> },
}

impl Reduction {
    pub fn vertices(&self) -> &[Vertex] {
        match self {
            Reduction::FaceCycle { cycle, .. } => cycle,
            Reduction::Degree2Path { path, .. } => path,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Reduction::FaceCycle { .. } => "face-cycle",
            Reduction::Degree2Path { .. } => "degree2-path",
        }
    }
}

/// The first reduction in face order.
pub fn find_reduction(g: &PlanarGraph) -> Option<Reduction> {
    find_reductions(g).into_iter().next()
}

/// Every reduction, faces in id order; within a face, by start position on the walk.
/// Faces must be cycles.
pub fn find_reductions(g: &PlanarGraph) -> Vec<Reduction> {
    let mut out = Vec::new();
    for (face, f) in g.faces().iter().enumerate() {
        let walk = f.walk();
        let k = walk.len();
        if k < 3 {
            continue;
        }
        let deg: Vec<usize> = walk.iter().map(|&v| g.degree(v)).collect();
        let lows: Vec<usize> = (0..k).filter(|&i| deg[i] == 2).collect();
        if lows.len() == 1 && (0..k).all(|i| deg[i] == 2 || deg[i] == 3) {
            out.push(Reduction::FaceCycle {
                face,
                cycle: walk.to_vec(),
                low: walk[lows[0]],
            });
            continue;
        }
        for &i in &lows {
            let mut s = 1;
            while s < k && deg[(i + s) % k] == 3 {
                s += 1;
            }
            // a path around the whole face would leave its ends adjacent
            if s + 1 < k && deg[(i + s) % k] == 2 {
                let path = (0..=s).map(|t| walk[(i + t) % k]).collect();
                out.push(Reduction::Degree2Path { face, path });
            }
        }
    }
    out
}

/// Colors the vertices of a reduction on top of a coloring of the rest.
///
/// Every vertex avoids the color of its unique neighbor outside the
/// reduction; on a face cycle the degree-2 vertex breaks a monochromatic cycle.
pub fn apply_reduction_extension<A: Adjacency>(
    adj: &A,
    r: &Reduction,
    c: &mut Coloring,
    lists: &ListAssignment,
) -> Result<()> {
    let set = r.vertices();
    let low = match r {
        Reduction::FaceCycle { low, .. } => Some(*low),
        Reduction::Degree2Path { .. } => None,
    };
    for &v in set {
        if Some(v) == low {
            continue;
        }
        let outside: Vec<Vertex> = adj.neighbors(v).iter().copied().filter(|w| !set.contains(w)).collect();
        if outside.len() != 1 {
            return Err(Error::precondition(
                "reduction-extension",
                format!("vertex {v} has {} neighbors outside {set:?}", outside.len()),
            ));
        }
        let avoid = c.get(outside[0]).ok_or(Error::UncoloredVertex(outside[0]))?;
        c.set(v, pick_avoiding(lists, v, &[avoid])?);
    }
    if let Some(low) = low {
        let others: Vec<_> = set.iter().filter(|&&v| v != low).map(|&v| c.get(v)).collect();
        let col = match others.first() {
            Some(&first) if others.iter().all(|&x| x == first) => pick_avoiding(lists, low, &[first.unwrap()])?,
            _ => pick_avoiding(lists, low, &[])?,
        };
        c.set(low, col);
    }
    check_local(adj, set, c, 14).map_err(|w| Error::assumption("reduction-extension", w))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_good;

    /// A hexagon 0..6 with a pendant path hung on each of the vertices 1..6 and
    /// the far ends joined into one more vertex, so 0 has degree 2 and 1..6 degree 3.
    fn hexagon_with_spokes() -> PlanarGraph {
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        for i in 1..6 {
            edges.push((i, 5 + i));
            edges.push((5 + i, 11));
        }
        PlanarGraph::from_edges(0..12, &edges).unwrap()
    }

    #[test]
    fn face_cycle_is_found_and_extends() {
        let g = hexagon_with_spokes();
        let r = find_reductions(&g)
            .into_iter()
            .find(|r| matches!(r, Reduction::FaceCycle { low: 0, .. }))
            .expect("the hexagon is a face-cycle reduction");
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        // color the rest monochromatically: spokes and hub
        let mut c = Coloring::new();
        for v in 6..12 {
            c.set(v, 1);
        }
        apply_reduction_extension(&g, &r, &mut c, &lists).unwrap();
        for v in 1..6 {
            assert_eq!(c.get(v), Some(0));
        }
        assert_eq!(c.get(0), Some(1));
        let sub = g.delete_vertices(&[11]).unwrap();
        assert!(is_good(&sub, &c, 14).unwrap());
    }

    #[test]
    fn degree2_path_between_adjacent_low_vertices() {
        let g = crate::families::cycle(6).unwrap();
        let Some(Reduction::Degree2Path { face: 0, path }) = find_reduction(&g) else {
            panic!("expected a degree-2 path on the first face");
        };
        assert_eq!(path.len(), 2);
        assert!(g.has_edge(path[0], path[1]));
    }

    #[test]
    fn no_reduction_when_high_degree_separates() {
        let g = super::super::tests::subdivided_octahedron();
        assert_eq!(g.girth(), Some(6));
        assert_eq!(find_reduction(&g), None);
    }
}
