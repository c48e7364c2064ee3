//! Deterministic graph families and a seeded random girth-6 generator.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::ListAssignment;
use crate::error::{Error, Result};
use crate::graph::{bounded_distance, PlanarGraph, Vertex};
use crate::oracle::{self, Mode, Property, Query, SearchOptions};

/// A graph with named special vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedGraph {
    pub graph: PlanarGraph,
    pub marks: BTreeMap<String, Vertex>,
}

impl MarkedGraph {
    fn new(graph: PlanarGraph, marks: impl IntoIterator<Item = (&'static str, Vertex)>) -> Self {
        let marks = marks.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        MarkedGraph { graph, marks }
    }
}

pub fn cycle(n: usize) -> Result<PlanarGraph> {
    if n < 3 {
        return Err(Error::BadParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let pos: BTreeMap<Vertex, (f64, f64)> = (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            (i as Vertex, (a.cos(), a.sin()))
        })
        .collect();
    let edges: Vec<_> = (0..n).map(|i| (i as Vertex, ((i + 1) % n) as Vertex)).collect();
    PlanarGraph::from_positions(&pos, &edges)
}

/// A honeycomb patch with `rows` x `cols` hexagons, drawn as a brick wall.
///
/// Has `(2 rows + 2)(cols + 1) - 2` vertices.
pub fn hex_patch(rows: usize, cols: usize) -> Result<PlanarGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::BadParameter(format!(
            "hex patch needs positive size, got {rows}x{cols}"
        )));
    }
    let height = 2 * rows + 2;
    let removed = [(0, height - 1), (cols, (height - 1) * (cols % 2))];
    let mut id = BTreeMap::new();
    for i in 0..=cols {
        for j in 0..height {
            if !removed.contains(&(i, j)) {
                let next = id.len() as Vertex;
                id.insert((i, j), next);
            }
        }
    }
    let mut edges = Vec::new();
    let mut link = |a: (usize, usize), b: (usize, usize)| {
        if let (Some(&x), Some(&y)) = (id.get(&a), id.get(&b)) {
            edges.push((x, y));
        }
    };
    for i in 0..=cols {
        for j in 0..height - 1 {
            link((i, j), (i, j + 1));
        }
    }
    for i in 0..cols {
        for j in 0..height {
            if i % 2 == j % 2 {
                link((i, j), (i + 1, j));
            }
        }
    }
    let pos = id.iter().map(|(&(i, j), &v)| (v, (i as f64, j as f64))).collect();
    PlanarGraph::from_positions(&pos, &edges)
}

/// Edges of a path `0..t` whose vertices alternate between the specials.
fn gadget_a_edges(path: &[Vertex], u: Vertex, w: Vertex) -> Vec<(Vertex, Vertex)> {
    let mut edges: Vec<_> = path.windows(2).map(|p| (p[0], p[1])).collect();
    for (i, &v) in path.iter().enumerate() {
        edges.push((v, if i % 2 == 0 { u } else { w }));
    }
    edges
}

/// A path on `t` vertices (ids `0..t`) joined alternately to `u = t` and `w = t + 1`.
pub fn gadget_a(t: usize) -> Result<MarkedGraph> {
    if t < 2 {
        return Err(Error::BadParameter(format!("gadget needs t >= 2, got {t}")));
    }
    let (u, w) = (t as Vertex, t as Vertex + 1);
    let path: Vec<Vertex> = (0..t as Vertex).collect();
    let mid = (t as f64 - 1.0) / 2.0;
    let mut pos: BTreeMap<Vertex, (f64, f64)> = path.iter().map(|&v| (v, (v as f64, 0.0))).collect();
    pos.insert(u, (mid, 1.0));
    pos.insert(w, (mid, -1.0));
    let g = PlanarGraph::from_positions(&pos, &gadget_a_edges(&path, u, w))?;
    Ok(MarkedGraph::new(g, [("u", u), ("w", w)]))
}

/// Vertex count of [`gadget_b`].
pub fn gadget_b_order(t: usize) -> usize {
    t + 2 + t.div_ceil(2) * t
}

/// The path of every copy inside [`gadget_b`], main copy first.
pub fn gadget_b_paths(t: usize) -> Vec<Vec<Vertex>> {
    let copies = 1 + t.div_ceil(2);
    let mut out = vec![(0..t as Vertex).collect::<Vec<_>>()];
    for k in 1..copies {
        let base = (t + 2 + (k - 1) * t) as Vertex;
        out.push((base..base + t as Vertex).collect());
    }
    out
}

fn gadget_b_edges(t: usize) -> Vec<(Vertex, Vertex)> {
    let (u, w) = (t as Vertex, t as Vertex + 1);
    let paths = gadget_b_paths(t);
    let mut edges = gadget_a_edges(&paths[0], u, w);
    let attach: Vec<Vertex> = paths[0].iter().copied().step_by(2).collect();
    for (copy, &v) in paths[1..].iter().zip(&attach) {
        edges.extend(gadget_a_edges(copy, v, w));
    }
    edges
}

/// A main gadget plus one extra gadget per neighbor `v` of `u`, whose specials
/// are `v` and `w`.
pub fn gadget_b(t: usize) -> Result<MarkedGraph> {
    if t < 2 {
        return Err(Error::BadParameter(format!("gadget needs t >= 2, got {t}")));
    }
    let g = PlanarGraph::from_edges(0..gadget_b_order(t) as Vertex, &gadget_b_edges(t))?;
    Ok(MarkedGraph::new(g, [("u", t as Vertex), ("w", t as Vertex + 1)]))
}

/// Lower-bound graph: the 5-cycle for `t = 2`; otherwise the graph for `t - 1`
/// with two double gadgets hung on every edge `xy`, one with `w = x, u = y` and
/// one with `u = x, w = y`.
pub fn lower_bound_g(t: usize) -> Result<PlanarGraph> {
    if t < 2 {
        return Err(Error::BadParameter(format!("lower bound graph needs t >= 2, got {t}")));
    }
    let edges = lower_bound_edges(t);
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    PlanarGraph::from_edges(0..n, &edges)
}

fn lower_bound_edges(t: usize) -> Vec<(Vertex, Vertex)> {
    if t == 2 {
        return (0..5).map(|i| (i, (i + 1) % 5)).collect();
    }
    let prev = lower_bound_edges(t - 1);
    let mut next = prev.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap();
    let gadget = gadget_b_edges(t);
    let (gu, gw) = (t as Vertex, t as Vertex + 1);
    let mut edges = prev.clone();
    for &(x, y) in &prev {
        for (u, w) in [(y, x), (x, y)] {
            let base = next;
            let map = |v: Vertex| {
                if v == gu {
                    u
                } else if v == gw {
                    w
                } else if v < gu {
                    base + v
                } else {
                    base + v - 2
                }
            };
            edges.extend(gadget.iter().map(|&(a, b)| (map(a), map(b))));
            next += gadget_b_order(t) as Vertex - 2;
        }
    }
    edges
}

/// A planar graph of girth 5 in which every 2-coloring has a monochromatic
/// path on three vertices.
///
/// Built on a 5-cycle; every cycle edge `uv` carries three arches
/// `u - u_i - w_i - v_i - v` linked by the path `w_1 w_2 w_3`. The marks name
/// the arches on the edge `0 1`. The property is re-checked by exhaustive
/// search on first use.
pub fn girth5_example() -> Result<MarkedGraph> {
    static CACHE: OnceLock<Result<MarkedGraph>> = OnceLock::new();
    CACHE.get_or_init(build_girth5_example).clone()
}

fn build_girth5_example() -> Result<MarkedGraph> {
    let mut edges: Vec<(Vertex, Vertex)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let mut marks = Vec::new();
    let mut next = 5;
    for (u, v) in (0..5).map(|i| (i, (i + 1) % 5)) {
        let us = [next, next + 1, next + 2];
        let vs = [next + 3, next + 4, next + 5];
        let ws = [next + 6, next + 7, next + 8];
        next += 9;
        for i in 0..3 {
            edges.extend([(u, us[i]), (v, vs[i]), (us[i], ws[i]), (vs[i], ws[i])]);
        }
        edges.extend([(ws[0], ws[1]), (ws[1], ws[2])]);
        if u == 0 {
            const NAMES: [[&str; 3]; 3] = [["u1", "u2", "u3"], ["v1", "v2", "v3"], ["w1", "w2", "w3"]];
            marks.extend([("u", u), ("v", v)]);
            for (names, ids) in NAMES.iter().zip([us, vs, ws]) {
                marks.extend(names.iter().copied().zip(ids));
            }
        }
    }
    let g = PlanarGraph::from_edges(0..next, &edges)?;
    if g.girth() != Some(5) {
        return Err(Error::ReconstructionUnavailable(format!("girth is {:?}", g.girth())));
    }
    let lists = ListAssignment::uniform(&g, &[0, 1]);
    let q = Query {
        property: Property::PkFree { k: 3 },
        mode: Mode::Forall,
    };
    let out = oracle::search(
        &g,
        &lists,
        q,
        SearchOptions {
            budget: 10_000_000,
            ..SearchOptions::default()
        },
    )
    .map_err(|e| Error::ReconstructionUnavailable(e.to_string()))?;
    if !out.holds(Mode::Forall) {
        return Err(Error::ReconstructionUnavailable(
            "found a 2-coloring without a monochromatic P3".into(),
        ));
    }
    Ok(MarkedGraph::new(g, marks))
}

/// A connected planar graph of girth at least 6 on `n` vertices.
///
/// Grows a random region of a honeycomb from one hexagon, drops about a tenth
/// of its edges while staying connected and cyclic, then adds random in-face
/// chords between vertices at distance at least 5.
pub fn random_planar_girth6(n: usize, seed: u64) -> Result<PlanarGraph> {
    if n < 6 {
        return Err(Error::BadParameter(format!("random graph needs n >= 6, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = ((2 * n) as f64).sqrt().ceil() as usize + 2;
    let lattice = hex_patch(side, side)?;

    // grow a region from a hexagon near the middle
    // the vertex at column side/2, row side; one corner of column 0 is absent
    let centre = ((side / 2) * (2 * side + 2) + side - 1) as Vertex;
    let hexagons: Vec<&[Vertex]> = lattice
        .faces()
        .iter()
        .filter(|f| f.len() == 6 && f.contains(centre))
        .map(|f| f.walk())
        .collect();
    let start = hexagons.choose(&mut rng).expect("interior vertex lies on a hexagon");
    let mut chosen = vec![false; lattice.capacity()];
    let mut region: Vec<Vertex> = start.to_vec();
    let mut frontier = Vec::new();
    for &v in &region {
        chosen[v as usize] = true;
    }
    let push_frontier = |v: Vertex, chosen: &[bool], frontier: &mut Vec<Vertex>| {
        for &w in lattice.neighbors(v) {
            if !chosen[w as usize] && !frontier.contains(&w) {
                frontier.push(w);
            }
        }
    };
    for &v in &region {
        push_frontier(v, &chosen, &mut frontier);
    }
    while region.len() < n {
        let i = rng.gen_range(0..frontier.len());
        let v = frontier.swap_remove(i);
        chosen[v as usize] = true;
        region.push(v);
        push_frontier(v, &chosen, &mut frontier);
    }
    let (mut g, _) = lattice.induced(&region)?.compact();

    // thin out edges
    let mut edges = g.edges();
    edges.shuffle(&mut rng);
    for &(a, b) in edges.iter().take(g.edge_count() / 10) {
        if g.edge_count() <= g.vertex_count() {
            break;
        }
        let h = g.delete_edge(a, b)?;
        if h.is_connected() {
            g = h;
        }
    }

    // chords
    while rng.gen_bool(0.85) {
        for _ in 0..30 {
            let faces = g.faces();
            let f = rng.gen_range(0..faces.len());
            let walk = faces[f].walk();
            if walk.len() < 10 {
                continue;
            }
            let (a, b) = (walk[rng.gen_range(0..walk.len())], walk[rng.gen_range(0..walk.len())]);
            if a == b || g.has_edge(a, b) || bounded_distance(g.rotation_table(), a, b, 4).is_some() {
                continue;
            }
            g = g.add_edge_in_face(f, a, b)?;
            break;
        }
    }
    Ok(g)
}

/// A random stacked triangulation on `base` vertices, or its vertex-face
/// incidence graph, with every edge subdivided once or twice and then some
/// single subdivisions undone where girth 6 survives.
///
/// Some triangulation edges between vertices of degree at least 4 are
/// dropped before subdividing; the drop and double-subdivision rates are
/// drawn from the seed too.
pub fn random_subdivided(base: usize, seed: u64) -> Result<PlanarGraph> {
    if base < 3 {
        return Err(Error::BadParameter(format!(
            "subdivided graph needs base >= 3, got {base}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let drop = rng.gen_range(0.0..0.4);
    let double = rng.gen_range(0.0..0.6);
    let (mut edges, faces) = stacked_triangulation(base, &mut rng);
    // half the time use the vertex-face incidence graph instead, whose
    // 4-faces leave room for unsubdivided edges
    let base = if rng.gen_bool(0.5) {
        edges = faces
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.map(|v| (v, (base + i) as Vertex)))
            .collect();
        base + faces.len()
    } else {
        base
    };
    let mut degree = vec![0usize; base];
    for &(a, b) in &edges {
        degree[a as usize] += 1;
        degree[b as usize] += 1;
    }
    edges.shuffle(&mut rng);
    let mut kept = Vec::with_capacity(edges.len());
    for (a, b) in edges {
        if degree[a as usize] >= 4 && degree[b as usize] >= 4 && rng.gen_bool(drop) {
            degree[a as usize] -= 1;
            degree[b as usize] -= 1;
        } else {
            kept.push((a, b));
        }
    }
    kept.sort_unstable();
    let mut next = base as Vertex;
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); base];
    let mut singles = Vec::new();
    for (a, b) in kept {
        let inner = if rng.gen_bool(double) { 2 } else { 1 };
        let chain: Vec<Vertex> = std::iter::once(a)
            .chain(next..next + inner)
            .chain(std::iter::once(b))
            .collect();
        if inner == 1 {
            singles.push((a, next, b));
        }
        next += inner;
        adj.resize(next as usize, Vec::new());
        for w in chain.windows(2) {
            adj[w[0] as usize].push(w[1]);
            adj[w[1] as usize].push(w[0]);
        }
    }
    // replace some a-s-b by a direct edge when no cycle shorter than 6 appears
    let contract = rng.gen_range(0.0..0.5);
    singles.shuffle(&mut rng);
    let mut gone = vec![false; next as usize];
    for (a, m, b) in singles {
        if rng.gen_bool(contract) && !within(&adj, a, b, m, 4) {
            adj[a as usize].retain(|&x| x != m);
            adj[b as usize].retain(|&x| x != m);
            adj[m as usize].clear();
            adj[a as usize].push(b);
            adj[b as usize].push(a);
            gone[m as usize] = true;
        }
    }
    let keep: Vec<Vertex> = (0..next).filter(|&v| !gone[v as usize]).collect();
    let edges: Vec<(Vertex, Vertex)> = keep
        .iter()
        .flat_map(|&u| adj[u as usize].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    let (g, _) = PlanarGraph::from_edges(keep, &edges)?.compact();
    Ok(g)
}

/// Edges and faces of a triangulation grown by inserting vertices into random faces.
fn stacked_triangulation(base: usize, rng: &mut ChaCha8Rng) -> (Vec<(Vertex, Vertex)>, Vec<[Vertex; 3]>) {
    let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1), (1, 2), (0, 2)];
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..base as Vertex {
        let [a, b, c] = faces.swap_remove(rng.gen_range(0..faces.len()));
        edges.extend([(a, v), (b, v), (c, v)]);
        faces.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    (edges, faces)
}

/// The medial graph of a random stacked triangulation on `base` vertices,
/// every edge subdivided once or twice, then up to `chords` in-face edges
/// between degree-2 vertices at distance at least 5.
///
/// Degrees stay in 2..=4 and degree-3 vertices sit next to degree-4 ones,
/// which is where the discharging configurations live.
pub fn random_medial(base: usize, chords: usize, seed: u64) -> Result<PlanarGraph> {
    // on a single triangle both faces give the same medial edges
    if base < 4 {
        return Err(Error::BadParameter(format!("medial graph needs base >= 4, got {base}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (edges, _) = stacked_triangulation(base, &mut rng);
    let t = PlanarGraph::from_edges(0..base as Vertex, &edges)?;
    let tedges = t.edges();
    let id: BTreeMap<(Vertex, Vertex), Vertex> = tedges.iter().enumerate().map(|(i, &e)| (e, i as Vertex)).collect();
    let key = |a: Vertex, b: Vertex| id[&(a.min(b), a.max(b))];
    // medial vertices are triangulation edges, adjacent when consecutive on a face
    let mut medial = Vec::new();
    for f in t.faces() {
        let w = f.walk();
        for i in 0..w.len() {
            medial.push((
                key(w[i], w[(i + 1) % w.len()]),
                key(w[(i + 1) % w.len()], w[(i + 2) % w.len()]),
            ));
        }
    }
    medial.sort_unstable();
    let double = rng.gen_range(0.0..0.5);
    let mut next = tedges.len() as Vertex;
    let mut edges = Vec::new();
    for (a, b) in medial {
        let inner = if rng.gen_bool(double) { 2 } else { 1 };
        let chain: Vec<Vertex> = std::iter::once(a)
            .chain(next..next + inner)
            .chain(std::iter::once(b))
            .collect();
        next += inner;
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    let mut g = PlanarGraph::from_edges(0..next, &edges)?;
    for _ in 0..chords {
        let f = rng.gen_range(0..g.faces().len());
        let low: Vec<Vertex> = g.faces()[f]
            .walk()
            .iter()
            .copied()
            .filter(|&v| g.degree(v) == 2)
            .collect();
        let (Some(&a), Some(&b)) = (low.choose(&mut rng), low.choose(&mut rng)) else {
            continue;
        };
        if a == b || bounded_distance(g.rotation_table(), a, b, 4).is_some() {
            continue;
        }
        g = g.add_edge_in_face(f, a, b)?;
    }
    Ok(g)
}

/// Is `b` within `limit` steps of `a` without passing through `skip`?
fn within(adj: &[Vec<Vertex>], a: Vertex, b: Vertex, skip: Vertex, limit: usize) -> bool {
    let mut frontier = vec![a];
    let mut seen = vec![a, skip];
    for _ in 0..limit {
        let mut next = Vec::new();
        for &u in &frontier {
            for &x in &adj[u as usize] {
                if x == b {
                    return true;
                }
                if !seen.contains(&x) {
                    seen.push(x);
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    false
}

/// A connected planar graph of girth at least 6 on `n` vertices: a random
/// tree plus random extra edges, each kept only if it closes no cycle
/// shorter than 6 and the graph stays planar.
pub fn random_sparse_girth6(n: usize, seed: u64) -> Result<PlanarGraph> {
    if n == 0 {
        return Err(Error::BadParameter("sparse graph needs at least one vertex".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for v in 1..n as Vertex {
        let u = rng.gen_range(0..v);
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        edges.push((u, v));
    }
    let mut g = PlanarGraph::from_edges(0..n as Vertex, &edges)?;
    let tries = rng.gen_range(0..=2 * n);
    for _ in 0..tries {
        let (a, b) = (rng.gen_range(0..n as Vertex), rng.gen_range(0..n as Vertex));
        if a == b || adj[a as usize].contains(&b) || within(&adj, a, b, a, 4) {
            continue;
        }
        edges.push((a, b));
        match PlanarGraph::from_edges(0..n as Vertex, &edges) {
            Ok(h) => {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
                g = h;
            }
            Err(Error::NotPlanar) => {
                edges.pop();
            }
            Err(e) => return Err(e),
        }
    }
    Ok(g)
}

/// Each vertex gets a random 2-subset of `0..palette`.
pub fn random_lists(g: &PlanarGraph, palette: usize, seed: u64) -> Result<ListAssignment> {
    if palette < 2 {
        return Err(Error::BadParameter(format!(
            "palette needs at least 2 colors, got {palette}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists = ListAssignment::default();
    for v in g.vertices() {
        let pick = rand::seq::index::sample(&mut rng, palette, 2);
        lists.set(v, pick.iter().map(|c| c as crate::coloring::Color).collect());
    }
    Ok(lists)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdivided_triangulations() {
        for seed in 0..5 {
            let g = random_subdivided(30, seed).unwrap();
            assert!(g.girth().unwrap() >= 6);
            assert!(g.is_connected());
            assert!(g.min_degree().unwrap() >= 2);
            assert!(g.same_embedding(&random_subdivided(30, seed).unwrap()));
        }
        assert!(random_subdivided(2, 0).is_err());
    }

    #[test]
    fn small_families() {
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.girth(), Some(5));
        assert_eq!(lower_bound_g(2).unwrap(), c5);
        let c6 = cycle(6).unwrap();
        assert_eq!((c6.girth(), c6.faces().len()), (Some(6), 2));
        assert_eq!(cycle(2), Err(Error::BadParameter("cycle needs n >= 3, got 2".into())));
    }

    #[test]
    fn hex_patch_counts_and_faces() {
        for (r, c) in [(1, 1), (2, 2), (3, 5), (4, 1)] {
            let g = hex_patch(r, c).unwrap();
            assert_eq!(g.vertex_count(), (2 * r + 2) * (c + 1) - 2);
            assert_eq!(g.girth(), Some(6));
            assert!(g.is_connected());
            let sixes = g.faces().iter().filter(|f| f.len() == 6).count();
            assert_eq!(sixes, r * c + usize::from(r * c == 1));
        }
    }

    #[test]
    fn gadget_a_shape() {
        let a2 = gadget_a(2).unwrap();
        assert_eq!(a2.graph.vertex_count(), 4);
        assert_eq!(a2.graph.edge_count(), 3);
        assert_eq!(a2.graph.girth(), None);
        let a3 = gadget_a(3).unwrap();
        assert_eq!(a3.graph.degree(a3.marks["u"]), 2);
        let a5 = gadget_a(5).unwrap();
        assert_eq!((a5.graph.vertex_count(), a5.graph.girth()), (7, Some(4)));
    }

    #[test]
    fn gadget_b_shape() {
        for t in 2..=8 {
            let b = gadget_b(t).unwrap();
            assert_eq!(b.graph.vertex_count(), gadget_b_order(t));
            assert_eq!(b.graph.distance(b.marks["u"], b.marks["w"]).unwrap(), Some(3));
            if t >= 3 {
                assert_eq!(b.graph.girth(), Some(4), "t={t}");
            }
        }
        assert_eq!(gadget_b(3).unwrap().graph.vertex_count(), 11);
        // the smallest double gadget has a 5-cycle v1 v2 w a2 a1 and no 4-cycle
        assert_eq!(gadget_b(2).unwrap().graph.girth(), Some(5));
    }

    #[test]
    fn lower_bound_graph_grows_from_the_previous_one() {
        let g3 = lower_bound_g(3).unwrap();
        assert_eq!(g3.vertex_count(), 95);
        assert_eq!(g3.girth(), Some(4));
        let g2 = lower_bound_g(2).unwrap();
        assert!(g2.edges().iter().all(|&(a, b)| g3.has_edge(a, b)));
    }

    #[test]
    fn random_graphs_are_deterministic_girth_six() {
        for seed in 0..20 {
            let n = 6 + (seed as usize * 37) % 200;
            let g = random_planar_girth6(n, seed).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert!(g.is_connected());
            assert!(g.girth().is_some_and(|x| x >= 6));
            assert!(g.check_invariants().is_ok());
            assert!(g.same_embedding(&random_planar_girth6(n, seed).unwrap()));
        }
        assert_eq!(random_planar_girth6(6, 3).unwrap().girth(), Some(6));
    }

    #[test]
    fn random_lists_are_distinct_pairs() {
        let g = hex_patch(3, 3).unwrap();
        let lists = random_lists(&g, 5, 7).unwrap();
        lists.validate(&g).unwrap();
        for v in g.vertices() {
            let l = lists.get(v);
            assert_eq!(l.len(), 2);
            assert!(l[0] != l[1] && l.iter().all(|&c| (0..5).contains(&c)));
        }
        assert_eq!(lists, random_lists(&g, 5, 7).unwrap());
        assert!(!lists.is_uniform_on(&g));
        assert!(random_lists(&g, 1, 0).is_err());
    }

    #[test]
    fn medial_graphs_have_low_degrees_and_girth_6() {
        for seed in 0..20 {
            let g = random_medial(4 + seed as usize, 4 * seed as usize, seed).unwrap();
            assert!(g.girth().unwrap() >= 6);
            assert!(g.is_connected());
            assert!(g.vertices().all(|v| (2..=4).contains(&g.degree(v))));
            assert_eq!(g, random_medial(4 + seed as usize, 4 * seed as usize, seed).unwrap());
        }
        assert!(random_medial(3, 0, 0).is_err());
    }

    #[test]
    fn sparse_graphs_are_connected_with_girth_6() {
        let mut cyclic = 0;
        for seed in 0..200 {
            let n = 1 + (seed % 12) as usize;
            let g = random_sparse_girth6(n, seed).unwrap();
            assert_eq!(g.vertex_count(), n);
            assert!(g.is_connected());
            assert!(g.girth().is_none_or(|k| k >= 6));
            cyclic += g.girth().is_some() as usize;
        }
        assert!(cyclic > 20);
        assert!(random_sparse_girth6(0, 0).is_err());
    }
}
