//! Directed facial paths and systems of them.
//!
//! A facial path runs along the counterclockwise walk of one face, from its
//! out-endvertex to its in-endvertex, and all its inner vertices have degree 3.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{FaceId, PlanarGraph, Vertex};

pub type Edge = (Vertex, Vertex);

fn undirected(a: Vertex, b: Vertex) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacialPath {
    pub face: FaceId,
    /// From the out-endvertex to the in-endvertex.
    pub vertices: Vec<Vertex>,
}

impl FacialPath {
    pub fn new(face: FaceId, vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.len() >= 2);
        FacialPath { face, vertices }
    }

    pub fn out_end(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn in_end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn inner(&self) -> &[Vertex] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Undirected edges in path order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| undirected(w[0], w[1]))
    }

    pub fn first_edge(&self) -> Edge {
        undirected(self.vertices[0], self.vertices[1])
    }

    pub fn last_edge(&self) -> Edge {
        let k = self.vertices.len();
        undirected(self.vertices[k - 2], self.vertices[k - 1])
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

impl fmt::Display for FacialPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "face:{} out:{}", self.face, self.out_end())?;
        for v in self.inner() {
            write!(f, " {v}")?;
        }
        write!(f, " in:{}", self.in_end())
    }
}

/// A set of facial paths, kept in canonical sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathSystem {
    paths: Vec<FacialPath>,
    edge_uses: HashMap<Edge, u32>,
    indeg: HashMap<Vertex, u32>,
    outdeg: HashMap<Vertex, u32>,
}

impl FromIterator<FacialPath> for PathSystem {
    fn from_iter<I: IntoIterator<Item = FacialPath>>(iter: I) -> Self {
        let mut s = PathSystem::default();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl PathSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a path; returns false if it was already present.
    pub fn insert(&mut self, p: FacialPath) -> bool {
        let Err(pos) = self.paths.binary_search(&p) else {
            return false;
        };
        for e in p.edges() {
            *self.edge_uses.entry(e).or_default() += 1;
        }
        *self.outdeg.entry(p.out_end()).or_default() += 1;
        *self.indeg.entry(p.in_end()).or_default() += 1;
        self.paths.insert(pos, p);
        true
    }

    pub fn paths(&self) -> &[FacialPath] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn contains(&self, p: &FacialPath) -> bool {
        self.paths.binary_search(p).is_ok()
    }

    pub fn indeg(&self, v: Vertex) -> usize {
        self.indeg.get(&v).copied().unwrap_or(0) as usize
    }

    pub fn outdeg(&self, v: Vertex) -> usize {
        self.outdeg.get(&v).copied().unwrap_or(0) as usize
    }

    /// Number of paths using the undirected edge `ab`.
    pub fn edge_uses(&self, a: Vertex, b: Vertex) -> usize {
        self.edge_uses.get(&undirected(a, b)).copied().unwrap_or(0) as usize
    }

    /// True iff the first or last edge of `p` lies on some path of the system.
    pub fn occupies(&self, p: &FacialPath) -> bool {
        self.edge_uses.contains_key(&p.first_edge()) || self.edge_uses.contains_key(&p.last_edge())
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.paths.iter().flat_map(|p| p.vertices.iter().copied()).collect()
    }

    pub fn endvertices(&self) -> BTreeSet<Vertex> {
        self.paths.iter().flat_map(|p| [p.out_end(), p.in_end()]).collect()
    }

    pub fn inner_vertices(&self) -> BTreeSet<Vertex> {
        self.paths.iter().flat_map(|p| p.inner().iter().copied()).collect()
    }

    /// Undirected edges covered by the system.
    pub fn edges(&self) -> BTreeSet<Edge> {
        self.edge_uses.keys().copied().collect()
    }

    fn successors(&self) -> HashMap<Vertex, Vec<Vertex>> {
        let mut succ: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
        for p in &self.paths {
            succ.entry(p.out_end()).or_default().push(p.in_end());
        }
        succ
    }

    /// Vertices reachable from `u` along at least one path.
    fn reachable_from(&self, u: Vertex, succ: &HashMap<Vertex, Vec<Vertex>>) -> BTreeSet<Vertex> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<Vertex> = succ.get(&u).cloned().unwrap_or_default();
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                if let Some(next) = succ.get(&x) {
                    stack.extend(next.iter().copied());
                }
            }
        }
        seen
    }

    /// `u` reaches `v` through a nonempty sequence of paths.
    pub fn reaches(&self, u: Vertex, v: Vertex) -> bool {
        self.reachable_from(u, &self.successors()).contains(&v)
    }

    /// No two distinct vertices reach each other.
    pub fn is_acyclic(&self) -> bool {
        self.cycle_witness().is_none()
    }

    /// Two distinct vertices that reach each other, if any.
    pub fn cycle_witness(&self) -> Option<(Vertex, Vertex)> {
        let succ = self.successors();
        // Kahn's algorithm on the endpoint digraph without self-loops
        let mut indeg: HashMap<Vertex, usize> = HashMap::new();
        for (&u, next) in &succ {
            indeg.entry(u).or_default();
            for &v in next.iter().filter(|&&v| v != u) {
                *indeg.entry(v).or_default() += 1;
            }
        }
        let mut ready: Vec<Vertex> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut removed = 0;
        while let Some(u) = ready.pop() {
            removed += 1;
            for &v in succ.get(&u).into_iter().flatten().filter(|&&v| v != u) {
                let d = indeg.get_mut(&v).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(v);
                }
            }
        }
        if removed == indeg.len() {
            return None;
        }
        let mut stuck: Vec<Vertex> = indeg.iter().filter(|(_, &d)| d > 0).map(|(&v, _)| v).collect();
        stuck.sort_unstable();
        for &u in &stuck {
            let from_u = self.reachable_from(u, &succ);
            if let Some(&v) = from_u
                .iter()
                .find(|&&v| v != u && self.reachable_from(v, &succ).contains(&u))
            {
                return Some((u, v));
            }
        }
        unreachable!("a vertex left by Kahn's algorithm lies on a cycle")
    }

    /// All paths whose out-endvertex is `w` or reachable from `w`.
    pub fn forward_closure(&self, w: Vertex) -> PathSystem {
        let mut from = self.reachable_from(w, &self.successors());
        from.insert(w);
        self.paths
            .iter()
            .filter(|p| from.contains(&p.out_end()))
            .cloned()
            .collect()
    }

    /// Union of two systems.
    pub fn union(&self, other: &PathSystem) -> PathSystem {
        self.paths.iter().chain(other.paths.iter()).cloned().collect()
    }

    /// Checks the degree conditions on all vertices.
    pub fn check_nice(&self, g: &PlanarGraph) -> NiceReport {
        self.check_degree_conditions(g, None)
    }

    /// Checks the degree conditions on all vertices except `root`.
    pub fn check_almost_nice(&self, g: &PlanarGraph, root: Vertex) -> NiceReport {
        self.check_degree_conditions(g, Some(root))
    }

    fn check_degree_conditions(&self, g: &PlanarGraph, root: Option<Vertex>) -> NiceReport {
        let mut violations = Vec::new();
        let skip = |v: Vertex| Some(v) == root;
        for (&(a, b), &uses) in &self.edge_uses {
            if uses >= 2 && !(skip(a) || skip(b)) && (g.degree(a) != 3 || g.degree(b) != 3) {
                violations.push(Violation::SharedEdgeAtNonCubic(a, b));
            }
        }
        for v in self.endvertices() {
            if skip(v) {
                continue;
            }
            let (i, o) = (self.indeg(v), self.outdeg(v));
            match g.degree(v) {
                2 if o > 0 => violations.push(Violation::OutgoingAtDegree2(v)),
                3 if i > 0 || o > 0 => violations.push(Violation::EndpointOfDegree3(v)),
                4 if i > 0 && o != 3 => violations.push(Violation::IncomingAtDegree4(v)),
                d if d >= 5 && i > 0 => violations.push(Violation::IncomingAtHighDegree(v)),
                _ => {}
            }
        }
        violations.sort();
        NiceReport { violations }
    }

    /// Checks the defining conditions of a path system in `g`.
    pub fn validate(&self, g: &PlanarGraph) -> Result<()> {
        let ends = self.endvertices();
        for p in &self.paths {
            if p.vertices.len() < 2 {
                return Err(Error::precondition("path-system", format!("short path {p}")));
            }
            for w in p.vertices.windows(2) {
                if g.face_of_dart(w[0], w[1]) != Some(p.face) {
                    return Err(Error::precondition(
                        "path-system",
                        format!("{p} leaves its face at {}-{}", w[0], w[1]),
                    ));
                }
            }
            for &v in p.inner() {
                if g.degree(v) != 3 {
                    return Err(Error::precondition(
                        "path-system",
                        format!("inner vertex {v} of {p} has degree {}", g.degree(v)),
                    ));
                }
                if ends.contains(&v) {
                    return Err(Error::precondition(
                        "path-system",
                        format!("{v} is inner in {p} and an endvertex elsewhere"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// One line per path, `face:<id> out:<v> <inner..> in:<v>`.
    pub fn dump(&self) -> String {
        self.paths.iter().map(|p| format!("{p}\n")).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// An edge on two paths has an endpoint whose degree is not 3.
    SharedEdgeAtNonCubic(Vertex, Vertex),
    /// A degree-2 vertex is an out-endvertex.
    OutgoingAtDegree2(Vertex),
    /// A degree-3 vertex is an endvertex.
    EndpointOfDegree3(Vertex),
    /// A degree-4 vertex is an in-endvertex without outdegree 3.
    IncomingAtDegree4(Vertex),
    /// A vertex of degree at least 5 is an in-endvertex.
    IncomingAtHighDegree(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NiceReport {
    pub violations: Vec<Violation>,
}

impl NiceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every face is a chordless cycle of length at most 9 and that
/// the minimum degree is at least 2.
pub fn check_face_structure(g: &PlanarGraph) -> std::result::Result<(), String> {
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 2) {
        return Err(format!("vertex {v} has degree {}", g.degree(v)));
    }
    for (id, f) in g.faces().iter().enumerate() {
        if !f.is_cycle() {
            return Err(format!("face {id} is not a cycle: {:?}", f.walk()));
        }
        if f.len() > 9 {
            return Err(format!("face {id} has length {}: {:?}", f.len(), f.walk()));
        }
        let walk = f.walk();
        let k = walk.len();
        for (i, &a) in walk.iter().enumerate() {
            for (j, &b) in walk.iter().enumerate().skip(i + 2) {
                if (i == 0 && j == k - 1) || !g.has_edge(a, b) {
                    continue;
                }
                return Err(format!("face {id} has chord {a}-{b}"));
            }
        }
    }
    Ok(())
}

/// Splits every face with at least two vertices of degree other than 3 into
/// counterclockwise paths between consecutive such vertices, keeping those
/// with in-endvertex of degree 2 or 4 and out-endvertex of degree at least 4.
pub fn build_p(g: &PlanarGraph) -> Result<PathSystem> {
    check_face_structure(g).map_err(|e| Error::precondition("facial-paths", e))?;
    let mut out = PathSystem::new();
    for (id, f) in g.faces().iter().enumerate() {
        let walk = f.walk();
        let k = walk.len();
        let marks: Vec<usize> = (0..k).filter(|&i| g.degree(walk[i]) != 3).collect();
        if marks.len() < 2 {
            continue;
        }
        for (n, &i) in marks.iter().enumerate() {
            let j = marks[(n + 1) % marks.len()];
            let span = (j + k - i) % k;
            let vertices: Vec<Vertex> = (0..=span).map(|s| walk[(i + s) % k]).collect();
            let (d_out, d_in) = (g.degree(vertices[0]), g.degree(vertices[span]));
            if (d_in == 2 || d_in == 4) && d_out >= 4 {
                out.insert(FacialPath::new(id, vertices));
            }
        }
    }
    Ok(out)
}

/// Greedy selection from `p`: first for every degree-2 vertex, then for every
/// degree-4 vertex whose outdegree is 3, add each path ending there that is
/// not yet occupied. The second pass repeats until nothing changes.
/// Vertices go by ascending id, paths by face.
pub fn build_x0(g: &PlanarGraph, p: &PathSystem) -> Result<PathSystem> {
    let mut by_in: HashMap<Vertex, Vec<&FacialPath>> = HashMap::new();
    for path in p.paths() {
        by_in.entry(path.in_end()).or_default().push(path);
    }
    let mut x0 = PathSystem::new();
    let add_into = |x0: &mut PathSystem, v: Vertex| {
        let mut added = false;
        for &path in by_in.get(&v).into_iter().flatten() {
            if !x0.occupies(path) {
                added |= x0.insert(path.clone());
            }
        }
        added
    };
    for v in g.vertices().filter(|&v| g.degree(v) == 2) {
        add_into(&mut x0, v);
    }
    // repeat until stable: a vertex may reach outdegree 3 after its turn
    loop {
        let mut changed = false;
        for v in g.vertices().filter(|&v| g.degree(v) == 4) {
            if x0.outdeg(v) == 3 {
                changed |= add_into(&mut x0, v);
            }
        }
        if !changed {
            break;
        }
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 2 && x0.indeg(v) != 2) {
        return Err(Error::assumption(
            "degree-2-coverage",
            format!("degree-2 vertex {v} has indegree {}", x0.indeg(v)),
        ));
    }
    Ok(x0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(face: FaceId, v: &[Vertex]) -> FacialPath {
        FacialPath::new(face, v.to_vec())
    }

    #[test]
    fn degrees_and_occupation() {
        let empty = PathSystem::new();
        assert_eq!((empty.indeg(3), empty.outdeg(3)), (0, 0));
        assert!(!empty.occupies(&fp(0, &[1, 2, 3])));
        let x: PathSystem = [fp(0, &[1, 2, 3, 4]), fp(1, &[9, 3, 2, 8])].into_iter().collect();
        assert_eq!((x.outdeg(1), x.indeg(4), x.indeg(8)), (1, 1, 1));
        assert_eq!((x.indeg(2), x.outdeg(2)), (0, 0));
        assert!(x.occupies(&x.paths()[0].clone()));
        // shares only the middle edge 2-3
        assert!(!x.occupies(&fp(2, &[7, 2, 3, 6])));
        assert!(x.occupies(&fp(2, &[4, 3, 5])));
    }

    #[test]
    fn reachability_and_cycles() {
        let x: PathSystem = [fp(0, &[1, 5, 2])].into_iter().collect();
        assert!(x.reaches(1, 2));
        assert!(!x.reaches(2, 1));
        assert!(x.is_acyclic());
        let y: PathSystem = [fp(0, &[1, 5, 2]), fp(1, &[2, 6, 1])].into_iter().collect();
        assert!(!y.is_acyclic());
        assert_eq!(y.cycle_witness(), Some((1, 2)));
    }

    #[test]
    fn closure_follows_chains() {
        let x: PathSystem = [fp(0, &[1, 5, 2]), fp(1, &[2, 6, 3]), fp(2, &[7, 8, 9])]
            .into_iter()
            .collect();
        let c = x.forward_closure(1);
        assert_eq!(c.len(), 2);
        assert!(x.forward_closure(3).is_empty());
    }

    #[test]
    fn dump_format() {
        let x: PathSystem = [fp(4, &[1, 5, 6, 2])].into_iter().collect();
        assert_eq!(x.dump(), "face:4 out:1 5 6 in:2\n");
    }

    #[test]
    fn degree_conditions_report_witnesses() {
        // a star with center 0 of degree 5 and leaves of degree 1 is enough for degree lookups
        let edges: Vec<_> = (1..6).map(|i| (0, i)).collect();
        let g = PlanarGraph::from_edges(0..6, &edges).unwrap();
        let x: PathSystem = [fp(0, &[1, 0])].into_iter().collect();
        assert_eq!(x.check_nice(&g).violations, vec![Violation::IncomingAtHighDegree(0)]);
        assert!(x.check_almost_nice(&g, 0).passed());
    }
}
