//! Coloring a removed configuration on top of a coloring of the rest.

use std::collections::{BTreeMap, BTreeSet};

use crate::coloring::{Color, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::paths::Edge;

use super::configuration::Configuration;
use super::{check_local, pick_avoiding, Adjacency};

/// Vertex classes of a configuration, computed from its adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub v1: BTreeSet<Vertex>,
    /// Endvertices of the system.
    pub w: BTreeSet<Vertex>,
    /// Vertices with a neighbor outside `v1`.
    pub a: BTreeSet<Vertex>,
    /// Induced edges on no path, except the special edge.
    pub e1: BTreeSet<Edge>,
    /// Inner vertices not in `a`, not on `e1` and not the special edge's far end.
    pub b: BTreeSet<Vertex>,
    /// For each endvertex, its predecessors on the paths that end there.
    pub s: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Boundary {
    pub fn new<A: Adjacency>(adj: &A, conf: &Configuration) -> Boundary {
        let x = &conf.system;
        let v1 = x.vertices();
        let w = x.endvertices();
        let a: BTreeSet<Vertex> = v1
            .iter()
            .copied()
            .filter(|&v| adj.neighbors(v).iter().any(|u| !v1.contains(u)))
            .collect();
        let on_paths = x.edges();
        let mut e1 = BTreeSet::new();
        for &u in &v1 {
            for &v in adj.neighbors(u) {
                let e = (u.min(v), u.max(v));
                if u < v
                    && v1.contains(&v)
                    && !on_paths.contains(&e)
                    && conf.special.map(|(p, q)| (p.min(q), p.max(q))) != Some(e)
                {
                    e1.insert(e);
                }
            }
        }
        let touched: BTreeSet<Vertex> = e1.iter().flat_map(|&(p, q)| [p, q]).collect();
        let b = v1
            .iter()
            .copied()
            .filter(|v| !a.contains(v) && !touched.contains(v) && !w.contains(v) && Some(*v) != conf.u_star())
            .collect();
        let mut s: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for p in x.paths() {
            s.entry(p.in_end())
                .or_default()
                .insert(p.vertices[p.vertices.len() - 2]);
        }
        if let Some(u) = conf.u_star() {
            s.entry(u).or_default().insert(conf.root);
        }
        Boundary { v1, w, a, e1, b, s }
    }
}

/// Extends `c` from the rest of the graph to the configuration's vertices.
///
/// `adj` must hold the neighborhoods of the configuration at the time it
/// was removed; every vertex outside it that it touches must be colored.
pub fn extend_coloring<A: Adjacency>(
    adj: &A,
    conf: &Configuration,
    c: &mut Coloring,
    lists: &ListAssignment,
) -> Result<Extension> {
    let bd = Boundary::new(adj, conf);
    let r = conf.root;
    if bd.s.get(&r).is_some_and(|s| !s.is_empty()) {
        return Err(Error::assumption(
            "configuration-extension",
            format!("root {r} ends a path"),
        ));
    }

    for &v in &bd.a {
        let outside: Vec<Vertex> = adj
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| !bd.v1.contains(u))
            .collect();
        let [o] = outside[..] else {
            return Err(Error::assumption(
                "configuration-extension",
                format!("{v} has neighbors {outside:?} outside"),
            ));
        };
        let avoid = c.get(o).ok_or(Error::UncoloredVertex(o))?;
        c.set(v, pick_avoiding(lists, v, &[avoid])?);
    }

    if bd.e1.iter().any(|&(p, q)| p == r || q == r) {
        if !c.is_colored(r) {
            c.set(r, pick_avoiding(lists, r, &[])?);
        }
        let cr = c.get(r).unwrap();
        for &(p, q) in &bd.e1 {
            let other = if p == r {
                q
            } else if q == r {
                p
            } else {
                continue;
            };
            if !c.is_colored(other) {
                c.set(other, pick_avoiding(lists, other, &[cr])?);
            }
        }
    }
    for &(p, q) in &bd.e1 {
        match (c.get(p), c.get(q)) {
            (Some(_), Some(_)) => {}
            (Some(cp), None) => c.set(q, pick_avoiding(lists, q, &[cp])?),
            (None, Some(cq)) => c.set(p, pick_avoiding(lists, p, &[cq])?),
            (None, None) => {
                let cp = pick_avoiding(lists, p, &[])?;
                c.set(p, cp);
                c.set(q, pick_avoiding(lists, q, &[cp])?);
            }
        }
    }

    for path in conf.system.paths() {
        let vs = &path.vertices;
        for t in 1..vs.len() - 1 {
            let u = vs[t];
            if !bd.b.contains(&u) || c.is_colored(u) {
                continue;
            }
            let off: Vec<Vertex> = adj
                .neighbors(u)
                .iter()
                .copied()
                .filter(|&x| x != vs[t - 1] && x != vs[t + 1])
                .collect();
            let avoid: Vec<Color> = off.iter().filter_map(|&x| c.get(x)).collect();
            c.set(u, pick_avoiding(lists, u, &avoid)?);
        }
    }

    let order: Vec<Vertex> =
        bd.w.iter()
            .copied()
            .chain(conf.u_star())
            .filter(|&v| !c.is_colored(v))
            .collect();
    let mut open: BTreeSet<Vertex> = order.iter().copied().collect();
    while !open.is_empty() {
        let (u, col) = rule_three_alike(adj, &open, c, lists)
            .or_else(|| rule_predecessor(adj, &bd, &open, c, lists))
            .or_else(|| rule_root(adj, r, &open, c, lists))
            .ok_or_else(|| Error::RuleDeadlock(open.iter().copied().collect()))?;
        c.set(u, col?);
        open.remove(&u);
    }

    let Err(why) = check_extension(adj, conf, &bd, c, lists) else {
        return Ok(Extension::Rules);
    };
    // the rules can paint themselves into a corner: search the endvertices,
    // then everything not pinned by an outside neighbor
    let seen = local_colors(adj, &bd, c);
    let mut free: Vec<Vertex> = bd.e1.iter().flat_map(|&(p, q)| [p, q]).collect();
    free.extend(
        conf.system
            .paths()
            .iter()
            .flat_map(|p| p.inner().iter().copied())
            .filter(|v| bd.b.contains(v)),
    );
    free.extend(order.iter().copied());
    let mut placed = BTreeSet::new();
    free.retain(|v| !bd.a.contains(v) && placed.insert(*v));
    for vs in [&order, &free] {
        for &u in vs.iter() {
            c.unset(u);
        }
        let mut budget = SEARCH_BUDGET;
        if search(adj, conf, &bd, vs, c, lists, &mut budget) {
            return Ok(Extension::Search);
        }
    }
    let witness = format!(
        "{why}; search over {} free vertices failed; {} rooted at {r}; paths {}; colors {seen}",
        free.len(),
        conf.kind,
        conf.system
            .paths()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    Err(Error::assumption("configuration-extension", witness))
}

/// `v:color[n1:color ...]` for every vertex of the configuration.
fn local_colors<A: Adjacency>(adj: &A, bd: &Boundary, c: &Coloring) -> String {
    let show = |v: Vertex| c.get(v).map_or("-".to_string(), |x| x.to_string());
    bd.v1
        .iter()
        .map(|&v| {
            let nb: Vec<String> = adj.neighbors(v).iter().map(|&u| format!("{u}:{}", show(u))).collect();
            format!("{v}:{}[{}]", show(v), nb.join(" "))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// How the endvertices got their colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Rules,
    Search,
}

const SEARCH_BUDGET: usize = 1 << 18;

fn search<A: Adjacency>(
    adj: &A,
    conf: &Configuration,
    bd: &Boundary,
    order: &[Vertex],
    c: &mut Coloring,
    lists: &ListAssignment,
    budget: &mut usize,
) -> bool {
    let Some((&u, rest)) = order.split_first() else {
        return check_extension(adj, conf, bd, c, lists).is_ok();
    };
    for &col in lists.get(u) {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        c.set(u, col);
        let crowded = std::iter::once(u).chain(adj.neighbors(u).iter().copied()).any(|x| {
            c.get(x)
                .is_some_and(|cx| adj.neighbors(x).iter().filter(|&&y| c.get(y) == Some(cx)).count() > 2)
        });
        if !crowded && search(adj, conf, bd, rest, c, lists, budget) {
            return true;
        }
    }
    c.unset(u);
    false
}

type Pick = Option<(Vertex, Result<Color>)>;

/// Some color shows up on three colored neighbors.
fn rule_three_alike<A: Adjacency>(adj: &A, open: &BTreeSet<Vertex>, c: &Coloring, lists: &ListAssignment) -> Pick {
    open.iter().find_map(|&u| {
        let counts = color_counts(adj.neighbors(u), c);
        let (&a, _) = counts.iter().find(|(_, &n)| n >= 3)?;
        Some((u, pick_avoiding(lists, u, &[a])))
    })
}

/// A predecessor on an incoming path is colored.
///
/// When predecessors carry different colors, any color differing from one
/// of them will do; prefer one that gives no neighbor a third neighbor of
/// its own color.
fn rule_predecessor<A: Adjacency>(
    adj: &A,
    bd: &Boundary,
    open: &BTreeSet<Vertex>,
    c: &Coloring,
    lists: &ListAssignment,
) -> Pick {
    open.iter().find_map(|&u| {
        let seen: BTreeSet<Color> = bd.s.get(&u)?.iter().filter_map(|&p| c.get(p)).collect();
        if seen.is_empty() {
            return None;
        }
        let allowed: Vec<Color> = lists
            .get(u)
            .iter()
            .copied()
            .filter(|b| seen.iter().any(|a| a != b))
            .collect();
        let pick = allowed
            .iter()
            .copied()
            .find(|&b| !overloads(adj, c, u, b))
            .or(allowed.first().copied())
            .ok_or(Error::ListTooSmall(u));
        Some((u, pick))
    })
}

/// Would coloring `u` with `b` give some neighbor of color `b` three such neighbors?
fn overloads<A: Adjacency>(adj: &A, c: &Coloring, u: Vertex, b: Color) -> bool {
    adj.neighbors(u).iter().any(|&x| {
        c.get(x) == Some(b)
            && adj
                .neighbors(x)
                .iter()
                .filter(|&&y| y != u && c.get(y) == Some(b))
                .count()
                >= 2
    })
}

/// The root avoids the most frequent color around it.
fn rule_root<A: Adjacency>(adj: &A, r: Vertex, open: &BTreeSet<Vertex>, c: &Coloring, lists: &ListAssignment) -> Pick {
    if !open.contains(&r) {
        return None;
    }
    let counts = color_counts(adj.neighbors(r), c);
    let most = counts
        .iter()
        .max_by(|x, y| x.1.cmp(y.1).then(y.0.cmp(x.0)))
        .map(|(&a, _)| a);
    Some((r, pick_avoiding(lists, r, &most.into_iter().collect::<Vec<_>>())))
}

fn color_counts(nbrs: &[Vertex], c: &Coloring) -> BTreeMap<Color, usize> {
    let mut counts = BTreeMap::new();
    for &x in nbrs {
        if let Some(col) = c.get(x) {
            *counts.entry(col).or_insert(0) += 1;
        }
    }
    counts
}

/// Boundary and special edge proper; every monochromatic component inside
/// the configuration is a path covered by at most two of its paths.
fn check_extension<A: Adjacency>(
    adj: &A,
    conf: &Configuration,
    bd: &Boundary,
    c: &Coloring,
    lists: &ListAssignment,
) -> std::result::Result<(), String> {
    let set: Vec<Vertex> = bd.v1.iter().copied().collect();
    for &v in &set {
        match c.get(v) {
            None => return Err(format!("{v} left uncolored")),
            Some(col) if !lists.get(v).contains(&col) => return Err(format!("{v} colored {col} outside its list")),
            _ => {}
        }
    }
    if let Some((p, q)) = conf.special {
        if c.get(p) == c.get(q) {
            return Err(format!("special edge {p}-{q} is monochromatic"));
        }
    }
    check_local(adj, &set, c, 14)?;
    // monochromatic components inside the configuration
    let mut seen = BTreeSet::new();
    for &s in &set {
        if !seen.insert(s) {
            continue;
        }
        let col = c.get(s);
        let mut comp_edges = Vec::new();
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &x in adj.neighbors(u) {
                if bd.v1.contains(&x) && c.get(x) == col {
                    if u < x {
                        comp_edges.push((u, x));
                    }
                    if seen.insert(x) {
                        stack.push(x);
                    }
                }
            }
        }
        if comp_edges.is_empty() {
            continue;
        }
        let paths = conf.system.paths();
        let touching: Vec<BTreeSet<Edge>> = paths
            .iter()
            .map(|p| p.edges().collect::<BTreeSet<Edge>>())
            .filter(|es| comp_edges.iter().any(|e| es.contains(e)))
            .collect();
        let covered = (0..touching.len()).any(|i| {
            (i..touching.len()).any(|j| {
                comp_edges
                    .iter()
                    .all(|e| touching[i].contains(e) || touching[j].contains(e))
            })
        });
        if !covered {
            return Err(format!("component {comp_edges:?} is not covered by two paths"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_good;
    use crate::paths::{build_p, build_x0};
    use crate::reducer::configuration::build_configuration;

    #[test]
    fn saturated_star_extends_against_outside_colors() {
        let g = super::super::tests::subdivided_octahedron();
        let x0 = build_x0(&g, &build_p(&g).unwrap()).unwrap();
        let conf = build_configuration(&g, &x0, 0).unwrap();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let inside = conf.vertices();
        let rest = g.delete_vertices(&inside).unwrap();
        for seed in 0..4u32 {
            let mut c = Coloring::new();
            for v in rest.vertices() {
                c.set(v, ((v + seed) % 2) as Color);
            }
            extend_coloring(&g, &conf, &mut c, &lists).unwrap();
            for &v in &inside {
                for &u in g.neighbors(v) {
                    if !inside.contains(&u) {
                        assert_ne!(c.get(u), c.get(v));
                    }
                }
            }
            let bd = Boundary::new(&g, &conf);
            assert_eq!(bd.a.len(), 4);
            assert!(bd.e1.is_empty() && bd.b.is_empty());
            // root gets the color not repeated three times or more
            let sub = g.induced(&inside).unwrap();
            assert!(is_good(&sub, &c, 14).unwrap());
        }
    }

    #[test]
    fn rule_root_avoids_majority() {
        let g = super::super::tests::subdivided_octahedron();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let mut c = Coloring::new();
        for (i, &u) in g.neighbors(0).iter().enumerate() {
            c.set(u, if i == 0 { 0 } else { 1 });
        }
        let open: BTreeSet<Vertex> = [0].into();
        let (v, col) = rule_root(&g, 0, &open, &c, &lists).unwrap();
        assert_eq!((v, col.unwrap()), (0, 0));
    }
}
