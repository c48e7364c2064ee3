//! List assignments, colorings, monochromatic components and coloring metrics.

use std::collections::{btree_map::Entry, BTreeMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{PlanarGraph, Vertex};

pub type Color = i64;

/// A list of admissible colors per vertex, stored as sorted sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    /// The same list on every vertex of `g`.
    pub fn uniform(g: &PlanarGraph, colors: &[Color]) -> Self {
        let mut list = colors.to_vec();
        list.sort_unstable();
        list.dedup();
        let mut lists = vec![Vec::new(); g.capacity()];
        for v in g.vertices() {
            lists[v as usize] = list.clone();
        }
        ListAssignment { lists }
    }

    pub fn from_map(map: BTreeMap<Vertex, Vec<Color>>) -> Self {
        let cap = map.keys().next_back().map_or(0, |&v| v as usize + 1);
        let mut lists = vec![Vec::new(); cap];
        for (v, mut list) in map {
            list.sort_unstable();
            list.dedup();
            lists[v as usize] = list;
        }
        ListAssignment { lists }
    }

    /// The list of `v`; empty when `v` has none.
    pub fn get(&self, v: Vertex) -> &[Color] {
        self.lists.get(v as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn set(&mut self, v: Vertex, mut list: Vec<Color>) {
        list.sort_unstable();
        list.dedup();
        if self.lists.len() <= v as usize {
            self.lists.resize(v as usize + 1, Vec::new());
        }
        self.lists[v as usize] = list;
    }

    /// Checks that every vertex of `g` has at least two colors.
    pub fn validate(&self, g: &PlanarGraph) -> Result<()> {
        for v in g.vertices() {
            let n = self.get(v).len();
            if n < 2 {
                return Err(Error::InvalidLists(format!(
                    "vertex {v} has {n} colors, at least 2 required"
                )));
            }
        }
        Ok(())
    }

    /// True if every vertex of `g` has the same list.
    pub fn is_uniform_on(&self, g: &PlanarGraph) -> bool {
        let mut it = g.vertices();
        let Some(first) = it.next() else { return true };
        it.all(|v| self.get(v) == self.get(first))
    }

    pub fn to_map(&self) -> BTreeMap<Vertex, Vec<Color>> {
        self.lists
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_empty())
            .map(|(v, l)| (v as Vertex, l.clone()))
            .collect()
    }
}

/// A (possibly partial) color assignment.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        Coloring { colors: vec![None; n] }
    }

    pub fn from_map(map: &BTreeMap<Vertex, Color>) -> Self {
        let mut c = Coloring::new();
        for (&v, &col) in map {
            c.set(v, col);
        }
        c
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(v as usize).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, col: Color) {
        if self.colors.len() <= v as usize {
            self.colors.resize(v as usize + 1, None);
        }
        self.colors[v as usize] = Some(col);
    }

    pub fn unset(&mut self, v: Vertex) {
        if let Some(slot) = self.colors.get_mut(v as usize) {
            *slot = None;
        }
    }

    pub fn is_colored(&self, v: Vertex) -> bool {
        self.get(v).is_some()
    }

    /// Colored vertices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v as Vertex, c)))
    }

    pub fn len(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_map(&self) -> BTreeMap<Vertex, Color> {
        self.iter().collect()
    }

    /// The first vertex of `g` without a color.
    pub fn first_uncolored(&self, g: &PlanarGraph) -> Option<Vertex> {
        g.vertices().find(|&v| !self.is_colored(v))
    }

    /// The first vertex of `g` whose color is missing or outside its list.
    pub fn list_violation(&self, g: &PlanarGraph, lists: &ListAssignment) -> Option<Vertex> {
        g.vertices().find(|&v| match self.get(v) {
            Some(c) => !lists.get(v).contains(&c),
            None => true,
        })
    }

    pub fn respects(&self, g: &PlanarGraph, lists: &ListAssignment) -> bool {
        self.list_violation(g, lists).is_none()
    }
}

/// Keeps the colors of the vertices of `sub` only.
pub fn restrict(c: &Coloring, sub: &PlanarGraph) -> Coloring {
    let mut out = Coloring::with_capacity(sub.capacity());
    for v in sub.vertices() {
        if let Some(col) = c.get(v) {
            out.set(v, col);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Path { length: usize },
    Cycle,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoComponent {
    pub color: Color,
    pub vertices: Vec<Vertex>,
    pub edges: usize,
    pub max_degree: usize,
    pub shape: Shape,
}

fn require_colored(g: &PlanarGraph, c: &Coloring) -> Result<()> {
    match c.first_uncolored(g) {
        Some(v) => Err(Error::UncoloredVertex(v)),
        None => Ok(()),
    }
}

fn mono_neighbors<'a>(g: &'a PlanarGraph, c: &'a Coloring, v: Vertex) -> impl Iterator<Item = Vertex> + 'a {
    let col = c.get(v);
    g.neighbors(v).iter().copied().filter(move |&w| c.get(w) == col)
}

/// Components of the subgraphs induced by each color class, ordered by smallest vertex.
pub fn mono_components(g: &PlanarGraph, c: &Coloring) -> Result<Vec<MonoComponent>> {
    require_colored(g, c)?;
    let mut seen = vec![false; g.capacity()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut members = vec![s];
        let mut i = 0;
        let mut degree_sum = 0;
        let mut max_degree = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            let mut d = 0;
            for y in mono_neighbors(g, c, x) {
                d += 1;
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            degree_sum += d;
            max_degree = max_degree.max(d);
        }
        members.sort_unstable();
        let edges = degree_sum / 2;
        let shape = if max_degree <= 2 && edges + 1 == members.len() {
            Shape::Path { length: edges }
        } else if max_degree == 2 && edges == members.len() {
            Shape::Cycle
        } else {
            Shape::Other
        };
        out.push(MonoComponent {
            color: c.get(s).unwrap(),
            vertices: members,
            edges,
            max_degree,
            shape,
        });
    }
    Ok(out)
}

/// The first monochromatic component that is not a path with at most `max_len` edges.
pub fn bad_component(g: &PlanarGraph, c: &Coloring, max_len: usize) -> Result<Option<MonoComponent>> {
    Ok(mono_components(g, c)?
        .into_iter()
        .find(|m| !matches!(m.shape, Shape::Path { length } if length <= max_len)))
}

/// True iff every monochromatic component is a path with at most `max_len` edges.
pub fn is_good(g: &PlanarGraph, c: &Coloring, max_len: usize) -> Result<bool> {
    Ok(bad_component(g, c, max_len)?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub max_mono_degree: usize,
    pub max_component_order: usize,
    pub max_mono_path_order: usize,
    /// False when a component was too tangled to search exhaustively;
    /// `max_mono_path_order` is then a lower bound.
    pub path_order_exact: bool,
}

const PATH_SEARCH_BUDGET: u64 = 2_000_000;

pub fn metrics(g: &PlanarGraph, c: &Coloring) -> Result<Metrics> {
    let comps = mono_components(g, c)?;
    let mut m = Metrics {
        max_mono_degree: 0,
        max_component_order: 0,
        max_mono_path_order: 0,
        path_order_exact: true,
    };
    for comp in &comps {
        m.max_mono_degree = m.max_mono_degree.max(comp.max_degree);
        m.max_component_order = m.max_component_order.max(comp.vertices.len());
        let (order, exact) = match comp.shape {
            Shape::Path { length } => (length + 1, true),
            Shape::Cycle => (comp.vertices.len(), true),
            Shape::Other if comp.edges + 1 == comp.vertices.len() => (tree_diameter_order(g, c, comp), true),
            Shape::Other => longest_path_order(g, c, comp, PATH_SEARCH_BUDGET),
        };
        m.max_mono_path_order = m.max_mono_path_order.max(order);
        m.path_order_exact &= exact;
    }
    Ok(m)
}

fn farthest(g: &PlanarGraph, c: &Coloring, s: Vertex) -> (Vertex, usize) {
    let mut dist = BTreeMap::from([(s, 0usize)]);
    let mut queue = std::collections::VecDeque::from([s]);
    let mut best = (s, 0);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d > best.1 {
            best = (x, d);
        }
        for y in mono_neighbors(g, c, x) {
            if let Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    best
}

fn tree_diameter_order(g: &PlanarGraph, c: &Coloring, comp: &MonoComponent) -> usize {
    let (a, _) = farthest(g, c, comp.vertices[0]);
    farthest(g, c, a).1 + 1
}

/// Longest simple path by exhaustive search from every start vertex.
fn longest_path_order(g: &PlanarGraph, c: &Coloring, comp: &MonoComponent, budget: u64) -> (usize, bool) {
    let mut on_path = vec![false; g.capacity()];
    let mut best = 1;
    let mut steps = 0u64;
    for &s in &comp.vertices {
        let mut stack: Vec<(Vertex, usize)> = vec![(s, 0)];
        on_path[s as usize] = true;
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            let nbrs = g.neighbors(x);
            let mut advanced = false;
            while *next < nbrs.len() {
                let y = nbrs[*next];
                *next += 1;
                if c.get(y) == c.get(x) && !on_path[y as usize] {
                    on_path[y as usize] = true;
                    stack.push((y, 0));
                    best = best.max(stack.len());
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                on_path[x as usize] = false;
                stack.pop();
            }
            steps += 1;
            if steps > budget {
                for &(v, _) in &stack {
                    on_path[v as usize] = false;
                }
                return (best, false);
            }
        }
    }
    (best, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> PlanarGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        PlanarGraph::from_edges(0..n, &edges).unwrap()
    }

    fn cycle(n: u32) -> PlanarGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        PlanarGraph::from_edges(0..n, &edges).unwrap()
    }

    fn constant(g: &PlanarGraph, col: Color) -> Coloring {
        let mut c = Coloring::new();
        g.vertices().for_each(|v| c.set(v, col));
        c
    }

    fn alternating(g: &PlanarGraph) -> Coloring {
        let mut c = Coloring::new();
        g.vertices().for_each(|v| c.set(v, (v % 2) as Color));
        c
    }

    #[test]
    fn c6_shapes() {
        let g = cycle(6);
        let comps = mono_components(&g, &constant(&g, 1)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, Shape::Cycle);
        let comps = mono_components(&g, &alternating(&g)).unwrap();
        assert_eq!(comps.len(), 6);
        assert!(comps.iter().all(|m| m.shape == Shape::Path { length: 0 }));
    }

    #[test]
    fn star_is_other() {
        let g = PlanarGraph::from_edges(0..4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let c = constant(&g, 1);
        let comps = mono_components(&g, &c).unwrap();
        assert_eq!(comps[0].shape, Shape::Other);
        let m = metrics(&g, &c).unwrap();
        assert_eq!(
            (m.max_mono_degree, m.max_component_order, m.max_mono_path_order),
            (3, 4, 3)
        );
    }

    #[test]
    fn goodness_threshold() {
        let long = path(16);
        let c = constant(&long, 0);
        assert!(!is_good(&long, &c, 14).unwrap());
        assert_eq!(
            bad_component(&long, &c, 14).unwrap().unwrap().shape,
            Shape::Path { length: 15 }
        );
        let ok = path(15);
        assert!(is_good(&ok, &constant(&ok, 0), 14).unwrap());
        let cyc = cycle(7);
        assert!(!is_good(&cyc, &constant(&cyc, 3), 100).unwrap());
    }

    #[test]
    fn uncolored_vertex_is_reported() {
        let g = path(3);
        let mut c = Coloring::new();
        c.set(0, 0);
        c.set(2, 0);
        assert_eq!(is_good(&g, &c, 14), Err(Error::UncoloredVertex(1)));
    }

    #[test]
    fn proper_coloring_metrics() {
        let g = cycle(6);
        let m = metrics(&g, &alternating(&g)).unwrap();
        assert_eq!(
            (m.max_mono_degree, m.max_component_order, m.max_mono_path_order),
            (0, 1, 1)
        );
        assert!(m.path_order_exact);
    }

    #[test]
    fn c5_always_has_a_mono_edge() {
        let g = cycle(5);
        for mask in 0u32..32 {
            let mut c = Coloring::new();
            (0..5).for_each(|v| c.set(v, ((mask >> v) & 1) as Color));
            assert!(metrics(&g, &c).unwrap().max_mono_path_order >= 2);
        }
    }

    #[test]
    fn longest_path_in_theta_graph() {
        // two vertices joined by three paths of length 2, 3 and 4
        let edges = [(0, 2), (2, 1), (0, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 7), (7, 1)];
        let g = PlanarGraph::from_edges(0..8, &edges).unwrap();
        let m = metrics(&g, &constant(&g, 0)).unwrap();
        assert_eq!(m.max_mono_path_order, 8);
        assert!(m.path_order_exact);
    }

    #[test]
    fn restriction_to_subpath_stays_good() {
        let g = path(15);
        let c = constant(&g, 0);
        let sub = g.delete_vertices(&[0, 1, 2]).unwrap();
        let r = restrict(&c, &sub);
        assert_eq!(r.len(), 12);
        assert!(is_good(&sub, &r, 14).unwrap());
        let empty = g.delete_vertices(&g.vertices().collect::<Vec<_>>()).unwrap();
        assert!(is_good(&empty, &restrict(&c, &empty), 14).unwrap());
    }

    #[test]
    fn lists_validate_and_respect() {
        let g = path(3);
        let mut lists = ListAssignment::uniform(&g, &[1, 0]);
        assert_eq!(lists.get(2), &[0, 1]);
        assert!(lists.validate(&g).is_ok());
        assert!(alternating(&g).respects(&g, &lists));
        lists.set(1, vec![5, 5]);
        assert!(matches!(lists.validate(&g), Err(Error::InvalidLists(_))));
        assert_eq!(alternating(&g).list_violation(&g, &lists), Some(1));
    }
}
