//! Embedded planar graphs stored as rotation systems.
//!
//! Every vertex keeps its neighbors in counterclockwise order. Faces are
//! recovered by half-edge traversal: from the dart `u -> v` the walk continues
//! with `v -> w` where `w` is the clockwise-next neighbor of `v` after `u`.
//! This way every face walk runs counterclockwise with the face on its left.

mod embed;

use std::collections::{hash_map, BTreeMap, HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type FaceId = usize;

/// A closed boundary walk. `walk[i] -> walk[i + 1]` are the darts of the face.
///
/// The face of an isolated vertex has the single-vertex walk `[v]` and no
/// darts; the face of the empty graph has an empty walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    walk: Vec<Vertex>,
}

impl Face {
    pub fn walk(&self) -> &[Vertex] {
        &self.walk
    }

    /// Number of darts (edges counted with multiplicity) on the walk.
    pub fn len(&self) -> usize {
        if self.walk.len() <= 1 {
            0
        } else {
            self.walk.len()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when the walk is a simple cycle.
    pub fn is_cycle(&self) -> bool {
        if self.walk.len() < 3 {
            return false;
        }
        let mut seen: Vec<Vertex> = self.walk.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn darts(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let k = self.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.walk.contains(&v)
    }
}

#[derive(Debug, Clone)]
struct FaceTable {
    faces: Vec<Face>,
    // dart_face[v][i] is the face of the dart v -> rotation[v][i]
    dart_face: Vec<Vec<FaceId>>,
}

/// An immutable simple graph embedded on the sphere.
///
/// Vertex ids are dense integers; deleting vertices never renumbers the rest.
#[derive(Debug, Clone, Default)]
pub struct PlanarGraph {
    rotation: Vec<Vec<Vertex>>,
    present: Vec<bool>,
    vertex_count: usize,
    edge_count: usize,
    faces: OnceLock<FaceTable>,
    girth: OnceLock<Option<usize>>,
}

/// Equality of vertex and edge sets; see [`PlanarGraph::same_embedding`] for rotations.
impl PartialEq for PlanarGraph {
    fn eq(&self, other: &Self) -> bool {
        let sorted = |g: &Self, v: Vertex| {
            let mut n = g.neighbors(v).to_vec();
            n.sort_unstable();
            n
        };
        self.vertices().eq(other.vertices()) && self.vertices().all(|v| sorted(self, v) == sorted(other, v))
    }
}

impl Eq for PlanarGraph {}

impl PlanarGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    fn from_parts(mut rotation: Vec<Vec<Vertex>>, mut present: Vec<bool>) -> Self {
        while present.last() == Some(&false) {
            present.pop();
        }
        rotation.truncate(present.len());
        let vertex_count = present.iter().filter(|&&p| p).count();
        let edge_count = rotation.iter().map(Vec::len).sum::<usize>() / 2;
        PlanarGraph {
            rotation,
            present,
            vertex_count,
            edge_count,
            faces: OnceLock::new(),
            girth: OnceLock::new(),
        }
    }

    /// Builds a graph from explicit counterclockwise rotations.
    ///
    /// Fails unless the rotations describe a simple graph embedded on the sphere.
    pub fn from_rotation<I>(rotation: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vec<Vertex>)>,
    {
        let entries: Vec<(Vertex, Vec<Vertex>)> = rotation.into_iter().collect();
        let cap = entries.iter().map(|(v, _)| *v as usize + 1).max().unwrap_or(0);
        let mut rot = vec![Vec::new(); cap];
        let mut present = vec![false; cap];
        for (v, nbrs) in entries {
            if present[v as usize] {
                return Err(Error::InconsistentRotation(format!("vertex {v} listed twice")));
            }
            present[v as usize] = true;
            rot[v as usize] = nbrs;
        }
        for v in 0..cap {
            if !present[v] {
                continue;
            }
            let mut sorted = rot[v].clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InconsistentRotation(format!("repeated neighbor at {v}")));
            }
            for &w in &rot[v] {
                if w as usize == v {
                    return Err(Error::InconsistentRotation(format!("loop at {v}")));
                }
                if w as usize >= cap || !present[w as usize] {
                    return Err(Error::InconsistentRotation(format!("{v} lists unknown neighbor {w}")));
                }
                if !rot[w as usize].contains(&(v as Vertex)) {
                    return Err(Error::InconsistentRotation(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        let g = Self::from_parts(rot, present);
        g.euler_check().map_err(Error::InconsistentRotation)?;
        Ok(g)
    }

    /// Builds a graph from an edge list, computing a planar embedding.
    pub fn from_edges<V>(vertices: V, edges: &[(Vertex, Vertex)]) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
    {
        let adjacency = simple_adjacency(vertices, edges)?;
        let ids: Vec<Vertex> = adjacency.keys().copied().collect();
        let local: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<usize>> = adjacency
            .values()
            .map(|nbrs| nbrs.iter().map(|w| local[w]).collect())
            .collect();
        let rot = embed::planar_rotation(&adj).ok_or(Error::NotPlanar)?;
        let rotation = rot
            .into_iter()
            .enumerate()
            .map(|(i, nbrs)| (ids[i], nbrs.into_iter().map(|j| ids[j]).collect()));
        Self::from_rotation(rotation)
            .map_err(|e| Error::InconsistentRotation(format!("embedding self-check failed: {e}")))
    }

    /// Builds a graph from edges and an optional rotation system that must agree with them.
    pub fn build<V>(
        vertices: V,
        edges: &[(Vertex, Vertex)],
        rotation: Option<&BTreeMap<Vertex, Vec<Vertex>>>,
    ) -> Result<Self>
    where
        V: IntoIterator<Item = Vertex>,
    {
        let Some(rotation) = rotation else {
            return Self::from_edges(vertices, edges);
        };
        let adjacency = simple_adjacency(vertices, edges)?;
        if adjacency.len() != rotation.len() {
            return Err(Error::InconsistentRotation(
                "rotation covers a different vertex set".into(),
            ));
        }
        for (v, nbrs) in &adjacency {
            let mut listed = rotation
                .get(v)
                .ok_or_else(|| Error::InconsistentRotation(format!("no rotation for {v}")))?
                .clone();
            listed.sort_unstable();
            if &listed != nbrs {
                return Err(Error::InconsistentRotation(format!(
                    "rotation of {v} disagrees with edges"
                )));
            }
        }
        Self::from_rotation(rotation.iter().map(|(v, r)| (*v, r.clone())))
    }

    /// Builds a graph from a straight-line drawing; rotations follow the angles.
    pub fn from_positions(positions: &BTreeMap<Vertex, (f64, f64)>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let adjacency = simple_adjacency(positions.keys().copied(), edges)?;
        let rotation = adjacency.into_iter().map(|(v, mut nbrs)| {
            let (x0, y0) = positions[&v];
            nbrs.sort_by(|a, b| {
                let (xa, ya) = positions[a];
                let (xb, yb) = positions[b];
                let ta = (ya - y0).atan2(xa - x0);
                let tb = (yb - y0).atan2(xb - x0);
                ta.total_cmp(&tb)
            });
            (v, nbrs)
        });
        Self::from_rotation(rotation)
    }

    /// One past the largest vertex id.
    pub fn capacity(&self) -> usize {
        self.present.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v as usize).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(|(v, _)| v as Vertex)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbors of `v` in counterclockwise order (empty for unknown vertices).
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.rotation.get(v as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in self.vertices() {
            let mut nbrs: Vec<Vertex> = self.neighbors(u).iter().copied().filter(|&w| w > u).collect();
            nbrs.sort_unstable();
            out.extend(nbrs.into_iter().map(|w| (u, w)));
        }
        out
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn face_table(&self) -> &FaceTable {
        self.faces.get_or_init(|| compute_faces(&self.rotation, &self.present))
    }

    /// All faces, ordered by their first dart (ascending vertex, then rotation index).
    pub fn faces(&self) -> &[Face] {
        &self.face_table().faces
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces().get(id)
    }

    /// The face lying to the left of the dart `u -> v`.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<FaceId> {
        let i = self.neighbors(u).iter().position(|&w| w == v)?;
        Some(self.face_table().dart_face[u as usize][i])
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        *self
            .girth
            .get_or_init(|| shortest_cycle(&self.rotation, &self.present, usize::MAX))
    }

    /// Length of some cycle shorter than `bound`, if any exists.
    pub fn cycle_shorter_than(&self, bound: usize) -> Option<usize> {
        if let Some(g) = self.girth.get() {
            return g.filter(|&g| g < bound);
        }
        shortest_cycle(&self.rotation, &self.present, bound)
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(bounded_distance(&self.rotation, u, v, usize::MAX))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.capacity()];
        let mut out: Vec<Vec<Vertex>> = Vec::new();
        for s in self.vertices() {
            if comp[s as usize] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s as usize] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                i += 1;
                for &y in self.neighbors(x) {
                    if comp[y as usize] == usize::MAX {
                        comp[y as usize] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Removes a vertex set, keeping the induced embedding.
    pub fn delete_vertices(&self, set: &[Vertex]) -> Result<Self> {
        let mut gone = vec![false; self.capacity()];
        for &v in set {
            self.check_vertex(v)?;
            gone[v as usize] = true;
        }
        Ok(self.without(&gone))
    }

    /// Keeps only the given vertices.
    pub fn induced(&self, keep: &[Vertex]) -> Result<Self> {
        let mut gone = self.present.to_vec();
        for &v in keep {
            self.check_vertex(v)?;
            gone[v as usize] = false;
        }
        Ok(self.without(&gone))
    }

    pub(crate) fn without(&self, gone: &[bool]) -> Self {
        let present: Vec<bool> = self
            .present
            .iter()
            .enumerate()
            .map(|(v, &p)| p && !gone.get(v).copied().unwrap_or(false))
            .collect();
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                if present[v] {
                    nbrs.iter().copied().filter(|&w| present[w as usize]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Self::from_parts(rotation, present)
    }

    /// Inserts the edge `uv` inside face `face`, splitting it in two.
    ///
    /// When a vertex occurs several times on the walk its first occurrence is used.
    pub fn add_edge_in_face(&self, face: FaceId, u: Vertex, v: Vertex) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let walk = self
            .face(face)
            .ok_or_else(|| Error::BadParameter(format!("no face {face}")))?
            .walk();
        let pu = walk
            .iter()
            .position(|&x| x == u)
            .ok_or(Error::NotOnFace { face, vertex: u })?;
        let pv = walk
            .iter()
            .position(|&x| x == v)
            .ok_or(Error::NotOnFace { face, vertex: v })?;
        if u == v {
            return Err(Error::BadParameter("loops are not allowed".into()));
        }
        if self.has_edge(u, v) {
            return Err(Error::AlreadyAdjacent(u, v));
        }
        let mut rotation = self.rotation.clone();
        insert_in_corner(&mut rotation, walk, pu, v);
        insert_in_corner(&mut rotation, walk, pv, u);
        Ok(Self::from_parts(rotation, self.present.clone()))
    }

    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(Error::BadParameter(format!("no edge {u}-{v}")));
        }
        let mut rotation = self.rotation.clone();
        rotation[u as usize].retain(|&x| x != v);
        rotation[v as usize].retain(|&x| x != u);
        Ok(Self::from_parts(rotation, self.present.clone()))
    }

    /// Relabels vertices to `0..n` in ascending order; returns the old id of each new id.
    pub fn compact(&self) -> (Self, Vec<Vertex>) {
        let old: Vec<Vertex> = self.vertices().collect();
        let mut new_id = vec![Vertex::MAX; self.capacity()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v as usize] = i as Vertex;
        }
        let rotation = old
            .iter()
            .map(|&v| self.neighbors(v).iter().map(|&w| new_id[w as usize]).collect())
            .collect();
        (Self::from_parts(rotation, vec![true; old.len()]), old)
    }

    /// True if both graphs have the same vertices and rotations up to cyclic shifts.
    pub fn same_embedding(&self, other: &Self) -> bool {
        self.vertices().eq(other.vertices())
            && self
                .vertices()
                .all(|v| cyclic_eq(self.neighbors(v), other.neighbors(v)))
    }

    /// Checks rotation consistency, face coverage and the Euler relation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for v in self.vertices() {
            for &w in self.neighbors(v) {
                if w == v || !self.contains(w) || !self.has_edge(w, v) {
                    return Err(format!("bad adjacency at {v}-{w}"));
                }
            }
            let mut s = self.neighbors(v).to_vec();
            s.sort_unstable();
            if s.windows(2).any(|p| p[0] == p[1]) {
                return Err(format!("multi-edge at {v}"));
            }
        }
        self.euler_check()
    }

    fn euler_check(&self) -> std::result::Result<(), String> {
        let table = compute_faces(&self.rotation, &self.present);
        let darts: usize = table.faces.iter().map(Face::len).sum();
        if darts != 2 * self.edge_count {
            return Err(format!(
                "face walks cover {darts} darts, expected {}",
                2 * self.edge_count
            ));
        }
        if self.vertex_count == 0 {
            return Ok(());
        }
        let components = self.components().len() as i64;
        let chi = self.vertex_count as i64 - self.edge_count as i64 + table.faces.len() as i64;
        if chi != 2 * components {
            return Err(format!(
                "Euler characteristic {chi} over {components} components: not a sphere embedding"
            ));
        }
        Ok(())
    }

    pub(crate) fn rotation_table(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub(crate) fn from_tables(rotation: Vec<Vec<Vertex>>, present: Vec<bool>) -> Self {
        Self::from_parts(rotation, present)
    }
}

fn simple_adjacency<V>(vertices: V, edges: &[(Vertex, Vertex)]) -> Result<BTreeMap<Vertex, Vec<Vertex>>>
where
    V: IntoIterator<Item = Vertex>,
{
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = vertices.into_iter().map(|v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        if u == v {
            return Err(Error::BadParameter(format!("loop at {u}")));
        }
        for x in [u, v] {
            if !adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        adj.get_mut(&u).unwrap().push(v);
        adj.get_mut(&v).unwrap().push(u);
    }
    for (v, nbrs) in adj.iter_mut() {
        nbrs.sort_unstable();
        if nbrs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadParameter(format!("parallel edges at {v}")));
        }
    }
    Ok(adj)
}

fn cyclic_eq(a: &[Vertex], b: &[Vertex]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let Some(shift) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()])
}

/// Clockwise-next neighbor of `v` after `u`: the successor dart of `u -> v`.
#[inline]
pub(crate) fn next_after(rotation: &[Vec<Vertex>], u: Vertex, v: Vertex) -> Vertex {
    let nbrs = &rotation[v as usize];
    let i = nbrs.iter().position(|&x| x == u).expect("dart endpoints adjacent");
    nbrs[(i + nbrs.len() - 1) % nbrs.len()]
}

/// Inserts `x` into the rotation of `walk[pos]` inside the corner the walk passes there.
pub(crate) fn insert_in_corner(rotation: &mut [Vec<Vertex>], walk: &[Vertex], pos: usize, x: Vertex) {
    let k = walk.len();
    let c = walk[pos];
    let prev = walk[(pos + k - 1) % k];
    let nbrs = &mut rotation[c as usize];
    // the corner sits counterclockwise-before `prev`
    let i = nbrs.iter().position(|&y| y == prev).expect("walk follows rotation");
    nbrs.insert(i, x);
}

fn compute_faces(rotation: &[Vec<Vertex>], present: &[bool]) -> FaceTable {
    let mut dart_face: Vec<Vec<FaceId>> = rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut faces = Vec::new();
    for v in 0..rotation.len() {
        if !present[v] {
            continue;
        }
        if rotation[v].is_empty() {
            faces.push(Face {
                walk: vec![v as Vertex],
            });
            continue;
        }
        for i in 0..rotation[v].len() {
            if dart_face[v][i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut a, mut b) = (v as Vertex, rotation[v][i]);
            let mut idx = i;
            loop {
                dart_face[a as usize][idx] = id;
                walk.push(a);
                let c = next_after(rotation, a, b);
                a = b;
                b = c;
                idx = rotation[a as usize].iter().position(|&x| x == b).unwrap();
                if dart_face[a as usize][idx] != usize::MAX {
                    break;
                }
            }
            faces.push(Face { walk });
        }
    }
    if faces.is_empty() {
        faces.push(Face { walk: Vec::new() });
    }
    FaceTable { faces, dart_face }
}

/// BFS from every vertex; stops exploring once no cycle shorter than the
/// current best (or `bound`) can be found.
fn shortest_cycle(rotation: &[Vec<Vertex>], present: &[bool], bound: usize) -> Option<usize> {
    let n = rotation.len();
    let mut best = bound;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![Vertex::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for r in 0..n {
        if !present[r] || rotation[r].len() < 2 {
            continue;
        }
        dist[r] = 0;
        touched.push(r);
        queue.push_back(r as Vertex);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            if 2 * dx + 1 >= best {
                break;
            }
            for &y in &rotation[x as usize] {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dx + 1;
                    parent[y as usize] = x;
                    touched.push(y as usize);
                    queue.push_back(y);
                } else if parent[x as usize] != y {
                    best = best.min(dx + dist[y as usize] + 1);
                }
            }
        }
        for &t in &touched {
            dist[t] = usize::MAX;
            parent[t] = Vertex::MAX;
        }
        touched.clear();
        queue.clear();
        if best == 3 {
            break;
        }
    }
    (best < bound).then_some(best)
}

/// Shortest `u`-`v` distance if it is at most `limit`.
pub(crate) fn bounded_distance(rotation: &[Vec<Vertex>], u: Vertex, v: Vertex, limit: usize) -> Option<usize> {
    if u == v {
        return Some(0);
    }
    let mut seen = HashMap::new();
    seen.insert(u, 0usize);
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        if d >= limit {
            continue;
        }
        for &y in &rotation[x as usize] {
            if y == v {
                return Some(d + 1);
            }
            if let hash_map::Entry::Vacant(e) = seen.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    None
}

/// Face walks of raw rotation tables, in the order used by [`PlanarGraph::faces`].
pub(crate) fn face_walks(rotation: &[Vec<Vertex>], present: &[bool]) -> Vec<Vec<Vertex>> {
    compute_faces(rotation, present)
        .faces
        .into_iter()
        .map(|f| f.walk)
        .collect()
}

/// Bounded breadth-first search with reusable marks.
#[derive(Debug, Default)]
pub(crate) struct NearSearch {
    mark: Vec<u32>,
    stamp: u32,
    frontier: Vec<Vertex>,
    next: Vec<Vertex>,
}

impl NearSearch {
    /// True iff `v` is within distance `limit` of `u`.
    pub(crate) fn within(&mut self, rotation: &[Vec<Vertex>], u: Vertex, v: Vertex, limit: usize) -> bool {
        if u == v {
            return true;
        }
        if self.mark.len() < rotation.len() {
            self.mark.resize(rotation.len(), 0);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        self.mark[u as usize] = self.stamp;
        self.frontier.clear();
        self.frontier.push(u);
        for _ in 0..limit {
            self.next.clear();
            for &x in &self.frontier {
                for &y in &rotation[x as usize] {
                    if y == v {
                        return true;
                    }
                    if self.mark[y as usize] != self.stamp {
                        self.mark[y as usize] = self.stamp;
                        self.next.push(y);
                    }
                }
            }
            if self.next.is_empty() {
                return false;
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_edges(n: u32) -> Vec<(Vertex, Vertex)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn hexagon_has_two_faces_of_length_six() {
        let g = PlanarGraph::from_edges(0..6, &cycle_edges(6)).unwrap();
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.len() == 6 && f.is_cycle()));
        assert_eq!(g.girth(), Some(6));
        assert_eq!(g.distance(0, 3).unwrap(), Some(3));
    }

    #[test]
    fn k5_and_k33_are_rejected() {
        let k5: Vec<_> = (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
        assert_eq!(PlanarGraph::from_edges(0..5, &k5), Err(Error::NotPlanar));
        let k33: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        assert_eq!(PlanarGraph::from_edges(0..6, &k33), Err(Error::NotPlanar));
    }

    #[test]
    fn single_vertex_and_empty_graph() {
        let g = PlanarGraph::from_edges([7], &[]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.girth(), None);
        let e = g.delete_vertices(&[7]).unwrap();
        assert_eq!(e.vertex_count(), 0);
        assert_eq!(e.faces().len(), 1);
        assert!(e.check_invariants().is_ok());
    }

    #[test]
    fn tree_has_one_face_walking_each_edge_twice() {
        let g = PlanarGraph::from_edges(0..4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces()[0].len(), 6);
    }

    #[test]
    fn faces_run_counterclockwise_with_ccw_rotations() {
        // unit square a=0 (0,0), b=1 (1,0), c=2 (1,1), d=3 (0,1) plus a pendant east of b
        let pos: BTreeMap<Vertex, (f64, f64)> = [
            (0, (0.0, 0.0)),
            (1, (1.0, 0.0)),
            (2, (1.0, 1.0)),
            (3, (0.0, 1.0)),
            (4, (2.0, 0.0)),
        ]
        .into();
        let g = PlanarGraph::from_positions(&pos, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4)]).unwrap();
        let inner = g.face_of_dart(0, 1).unwrap();
        assert_eq!(g.face(inner).unwrap().walk(), &[0, 1, 2, 3]);
    }

    #[test]
    fn hexagon_minus_vertex_is_a_path() {
        let g = PlanarGraph::from_edges(0..6, &cycle_edges(6)).unwrap();
        let p = g.delete_vertices(&[2]).unwrap();
        assert_eq!(p.vertex_count(), 5);
        assert_eq!(p.edge_count(), 4);
        assert_eq!(p.girth(), None);
        assert_eq!(p.distance(3, 1).unwrap(), Some(4));
        assert_eq!(p.distance(3, 2), Err(Error::UnknownVertex(2)));
    }

    #[test]
    fn chord_in_ten_cycle_splits_into_two_hexagons() {
        let g = PlanarGraph::from_edges(0..10, &cycle_edges(10)).unwrap();
        let h = g.add_edge_in_face(0, 0, 5).unwrap();
        assert!(h.check_invariants().is_ok());
        let mut lens: Vec<_> = h.faces().iter().map(Face::len).collect();
        lens.sort_unstable();
        assert_eq!(lens, vec![6, 6, 10]);
        assert_eq!(h.girth(), Some(6));
        let back = h.delete_edge(0, 5).unwrap();
        assert!(back.same_embedding(&g));
    }

    #[test]
    fn chord_errors() {
        let g = PlanarGraph::from_edges(0..6, &cycle_edges(6)).unwrap();
        assert_eq!(g.add_edge_in_face(0, 0, 1), Err(Error::AlreadyAdjacent(0, 1)));
        let h = g.add_edge_in_face(0, 0, 3).unwrap();
        assert_eq!(h.girth(), Some(4));
        let tri = PlanarGraph::from_edges(0..7, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        let f = tri.face_of_dart(0, 1).unwrap();
        assert_eq!(
            tri.add_edge_in_face(f, 0, 4),
            Err(Error::NotOnFace { face: f, vertex: 4 })
        );
    }

    #[test]
    fn inconsistent_rotation_is_rejected() {
        let asym = PlanarGraph::from_rotation([(0, vec![1]), (1, vec![])]);
        assert!(matches!(asym, Err(Error::InconsistentRotation(_))));
        // K4 with a rotation of genus 1
        let k4 = PlanarGraph::from_rotation([
            (0, vec![1, 2, 3]),
            (1, vec![0, 2, 3]),
            (2, vec![0, 1, 3]),
            (3, vec![0, 1, 2]),
        ]);
        assert!(matches!(k4, Err(Error::InconsistentRotation(_))));
    }

    #[test]
    fn build_checks_rotation_against_edges() {
        let rot: BTreeMap<Vertex, Vec<Vertex>> = [(0, vec![1]), (1, vec![0]), (2, vec![])].into();
        assert!(PlanarGraph::build(0..3, &[(0, 1)], Some(&rot)).is_ok());
        assert!(matches!(
            PlanarGraph::build(0..3, &[(1, 2)], Some(&rot)),
            Err(Error::InconsistentRotation(_))
        ));
    }

    #[test]
    fn embedder_handles_dense_planar_graphs() {
        // octahedron and a wheel
        let oct = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
        ];
        let g = PlanarGraph::from_edges(0..6, &oct).unwrap();
        assert_eq!(g.faces().len(), 8);
        let mut wheel: Vec<_> = (1..9).map(|i| (0, i)).collect();
        wheel.extend((1..9).map(|i| (i, i % 8 + 1)));
        let w = PlanarGraph::from_edges(0..9, &wheel).unwrap();
        assert_eq!(w.faces().len(), 9);
    }

    #[test]
    fn compact_relabels_in_order() {
        let g = PlanarGraph::from_edges([3, 8, 9], &[(3, 9), (9, 8)]).unwrap();
        let (c, old) = g.compact();
        assert_eq!(old, vec![3, 8, 9]);
        assert_eq!(c.edges(), vec![(0, 2), (1, 2)]);
    }
}
