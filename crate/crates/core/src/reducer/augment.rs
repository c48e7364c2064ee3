//! Girth-preserving edge insertion until no face admits another edge.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{face_walks, insert_in_corner, NearSearch, PlanarGraph, Vertex};
use crate::paths::check_face_structure;

/// Adds in-face edges between vertices at distance at least 5 until none is
/// possible, then checks that every face is a chordless cycle of length at most 9.
pub fn augment_to_maximal(g: &PlanarGraph) -> Result<PlanarGraph> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 2) {
        return Err(Error::precondition(
            "augmentation",
            format!("vertex {v} has degree {}", g.degree(v)),
        ));
    }
    if let Some(len) = g.cycle_shorter_than(6) {
        return Err(Error::GirthTooSmall(len));
    }
    let mut rotation = g.rotation_table().to_vec();
    let present: Vec<bool> = (0..g.capacity()).map(|v| g.contains(v as Vertex)).collect();
    augment_tables(&mut rotation, &present, &mut NearSearch::default());
    let out = PlanarGraph::from_tables(rotation, present);
    check_face_structure(&out).map_err(|w| Error::assumption("maximal-faces", w))?;
    Ok(out)
}

/// Saturates the rotation tables in place; returns the number of added edges.
///
/// Faces are visited in id order; within a face the pairs five steps apart
/// come first, then all other pairs. Split faces are revisited at once. A face
/// that admits no edge never will later, since distances only shrink.
pub(crate) fn augment_tables(rotation: &mut [Vec<Vertex>], present: &[bool], near: &mut NearSearch) -> usize {
    let mut work: VecDeque<Vec<Vertex>> = face_walks(rotation, present)
        .into_iter()
        .filter(|w| w.len() >= 10)
        .collect();
    let mut added = 0;
    while let Some(walk) = work.pop_front() {
        let Some((i, j)) = find_pair(rotation, &walk, near) else {
            continue;
        };
        let (u, v) = (walk[i], walk[j]);
        insert_in_corner(rotation, &walk, i, v);
        insert_in_corner(rotation, &walk, j, u);
        added += 1;
        let k = walk.len();
        let first: Vec<Vertex> = std::iter::once(u)
            .chain((0..(i + k - j) % k).map(|s| walk[(j + s) % k]))
            .collect();
        let second: Vec<Vertex> = std::iter::once(v)
            .chain((0..(j + k - i) % k).map(|s| walk[(i + s) % k]))
            .collect();
        for w in [second, first] {
            if w.len() >= 10 {
                work.push_front(w);
            }
        }
    }
    added
}

fn find_pair(rotation: &[Vec<Vertex>], walk: &[Vertex], near: &mut NearSearch) -> Option<(usize, usize)> {
    let k = walk.len();
    let ok = |i: usize, j: usize, near: &mut NearSearch| {
        let (a, b) = (walk[i], walk[j]);
        a != b && !near.within(rotation, a, b, 4)
    };
    if let Some(i) = (0..k).find(|&i| ok(i, (i + 5) % k, near)) {
        return Some((i, (i + 5) % k));
    }
    for i in 0..k {
        for j in i + 2..k {
            if ok(i, j, near) {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, hex_patch};

    #[test]
    fn twelve_cycle_gets_short_faces() {
        let g = augment_to_maximal(&cycle(12).unwrap()).unwrap();
        assert!(g.edge_count() > 12);
        assert!(g.faces().iter().all(|f| (6..=9).contains(&f.len())));
        assert_eq!(g.girth(), Some(6));
        assert!(g.check_invariants().is_ok());
    }

    #[test]
    fn maximal_graph_is_unchanged() {
        let g = cycle(6).unwrap();
        let h = augment_to_maximal(&g).unwrap();
        assert!(h.same_embedding(&g));
        let p = augment_to_maximal(&hex_patch(3, 3).unwrap()).unwrap();
        let again = augment_to_maximal(&p).unwrap();
        assert!(again.same_embedding(&p));
    }

    #[test]
    fn preconditions() {
        let path = PlanarGraph::from_edges(0..3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            augment_to_maximal(&path),
            Err(Error::PreconditionViolated { .. })
        ));
        assert_eq!(augment_to_maximal(&cycle(5).unwrap()), Err(Error::GirthTooSmall(5)));
    }
}
