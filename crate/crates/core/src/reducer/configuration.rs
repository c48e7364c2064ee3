//! Rooted path systems grown from a vertex of negative charge.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{PlanarGraph, Vertex};
use crate::paths::{Edge, FacialPath, PathSystem};

use super::discharge::{classify, Case};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConfigKind {
    /// Everything reachable from a vertex all of whose edges start paths.
    Saturated,
    /// Two closures joined by the facial path through the free edge.
    Joined,
    /// A closure whose root has a chord-like free edge to one of its inner vertices.
    Chorded,
    /// A closure plus the initial piece of the facial path through the free edge.
    Extended,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 4] = [
        ConfigKind::Saturated,
        ConfigKind::Joined,
        ConfigKind::Chorded,
        ConfigKind::Extended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigKind::Saturated => "saturated",
            ConfigKind::Joined => "joined",
            ConfigKind::Chorded => "chorded",
            ConfigKind::Extended => "extended",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub kind: ConfigKind,
    pub system: PathSystem,
    pub root: Vertex,
    /// The free edge `(root, u*)` that stays proper (chorded kind only).
    pub special: Option<Edge>,
}

impl Configuration {
    pub fn vertices(&self) -> Vec<Vertex> {
        self.system.vertices().into_iter().collect()
    }

    /// The other end of the special edge.
    pub fn u_star(&self) -> Option<Vertex> {
        self.special.map(|(_, u)| u)
    }
}

/// Builds the configuration for the negative vertex `w0` of `x0` and checks it.
pub fn build_configuration(g: &PlanarGraph, x0: &PathSystem, w0: Vertex) -> Result<Configuration> {
    let conf = match classify(g, x0, w0)? {
        Case::AllOutgoing => Configuration {
            kind: ConfigKind::Saturated,
            system: x0.forward_closure(w0),
            root: w0,
            special: None,
        },
        Case::ThreeOutgoing => three_outgoing(g, x0, w0)?,
    };
    check_clauses(g, &conf)
        .map_err(|w| Error::assumption("configuration-clauses", format!("{} at {w0}: {w}", conf.kind)))?;
    Ok(conf)
}

fn three_outgoing(g: &PlanarGraph, x0: &PathSystem, w0: Vertex) -> Result<Configuration> {
    let fail = |w: String| Error::assumption("free-edge-walk", format!("at {w0}: {w}"));
    let free: Vec<Vertex> = g
        .neighbors(w0)
        .iter()
        .copied()
        .filter(|&y| x0.edge_uses(w0, y) == 0)
        .collect();
    let [y] = free[..] else {
        return Err(fail(format!("{} free edges", free.len())));
    };
    let face = g
        .face_of_dart(y, w0)
        .ok_or_else(|| fail(format!("no face on dart {y}->{w0}")))?;
    let walk = g.faces()[face].walk();
    let k = walk.len();
    let at = walk.iter().position(|&x| x == w0).unwrap();
    // the path leaving w0 along this face must belong to the system
    let after = walk[(at + 1) % k];
    if !x0
        .paths()
        .iter()
        .any(|p| p.face == face && p.out_end() == w0 && p.vertices[1] == after)
    {
        return Err(fail(format!("edge {w0}-{after} on face {face} starts no path")));
    }
    // w_0, w_1 = y, ... backwards along the face until the degree is not 3
    let mut w = vec![w0];
    loop {
        let next = walk[(at + k - w.len()) % k];
        w.push(next);
        if g.degree(next) != 3 || w.len() > k {
            break;
        }
    }
    let v = *w.last().unwrap();
    let kk = w.len() - 1;
    if v == w0 || !matches!(g.degree(v), 2 | 4) {
        return Err(fail(format!("walk ends at {v} of degree {}", g.degree(v))));
    }
    let e2 = (w[kk], w[kk - 1]);
    let covered = x0
        .paths()
        .iter()
        .any(|p| p.in_end() == v && p.last_edge() == undirected(e2.0, e2.1));
    if !covered {
        return Err(fail(format!("edge {}-{} lies on no path into {v}", e2.0, e2.1)));
    }
    if kk < 2 {
        return Err(fail(format!("walk to {v} has no inner vertex")));
    }
    let p: Vec<Vertex> = w.iter().rev().copied().collect();
    if !x0.reaches(w0, v) {
        let mut system = x0.forward_closure(v).union(&x0.forward_closure(w0));
        system.insert(FacialPath::new(face, p));
        return Ok(Configuration {
            kind: ConfigKind::Joined,
            system,
            root: v,
            special: None,
        });
    }
    let closure = x0.forward_closure(w0);
    let on = closure.vertices();
    let i = (1..=kk)
        .find(|&i| w[i] != w0 && on.contains(&w[i]))
        .expect("v lies on the closure");
    if i == 1 {
        return Ok(Configuration {
            kind: ConfigKind::Chorded,
            system: closure,
            root: w0,
            special: Some((w0, w[1])),
        });
    }
    let mut system = closure;
    system.insert(FacialPath::new(face, w[..i].iter().rev().copied().collect()));
    Ok(Configuration {
        kind: ConfigKind::Extended,
        system,
        root: w[i - 1],
        special: None,
    })
}

fn undirected(a: Vertex, b: Vertex) -> Edge {
    (a.min(b), a.max(b))
}

/// Acyclicity, the kind-specific degree conditions, and the degree profile
/// of endvertices, inner vertices and outside neighbors.
pub fn check_clauses(g: &PlanarGraph, conf: &Configuration) -> std::result::Result<(), String> {
    let x = &conf.system;
    let r = conf.root;
    x.validate(g).map_err(|e| e.to_string())?;
    if let Some((a, b)) = x.cycle_witness() {
        return Err(format!("cycle through {a} and {b}"));
    }
    if let Some(p) = x.paths().iter().find(|p| p.len() > 8) {
        return Err(format!("path {p} has {} edges", p.len()));
    }
    let (i, o) = (x.indeg(r), x.outdeg(r));
    let report = match conf.kind {
        ConfigKind::Saturated => x.check_nice(g),
        ConfigKind::Joined => match g.degree(r) {
            4 => x.check_nice(g),
            2 if o == 1 => x.check_almost_nice(g, r),
            d => return Err(format!("root {r} of degree {d} with outdegree {o}")),
        },
        ConfigKind::Chorded if o == 3 && i == 0 => x.check_almost_nice(g, r),
        ConfigKind::Extended if o == 1 && i == 0 => x.check_almost_nice(g, r),
        _ => return Err(format!("root {r} has indegree {i}, outdegree {o}")),
    };
    if !report.passed() {
        return Err(format!("degree conditions fail: {:?}", report.violations));
    }
    let v1: BTreeSet<Vertex> = x.vertices();
    for &w in &x.endvertices() {
        let d = g.degree(w);
        if w == r && !(2..=5).contains(&d) || w != r && d != 2 && d != 4 {
            return Err(format!("endvertex {w} has degree {d}"));
        }
    }
    if !x.endvertices().contains(&r) {
        return Err(format!("root {r} is not an endvertex"));
    }
    for &u in &x.inner_vertices() {
        if g.degree(u) != 3 {
            return Err(format!("inner vertex {u} has degree {}", g.degree(u)));
        }
    }
    for &u in &v1 {
        let out = g.neighbors(u).iter().filter(|w| !v1.contains(w)).count();
        if out > 1 {
            return Err(format!("{u} has {out} neighbors outside"));
        }
    }
    if let Some((a, b)) = conf.special {
        if a != r || !g.has_edge(a, b) || x.edge_uses(a, b) > 0 || !x.inner_vertices().contains(&b) {
            return Err(format!(
                "special edge {a}-{b} is not a free edge from the root to an inner vertex"
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{build_p, build_x0};
    use crate::reducer::discharge::discharge;

    #[test]
    fn subdivided_octahedron_gives_a_checked_configuration() {
        let g = super::super::tests::subdivided_octahedron();
        let p = build_p(&g).unwrap();
        let x0 = build_x0(&g, &p).unwrap();
        assert!(x0.check_nice(&g).passed());
        assert!(x0.is_acyclic());
        let d = discharge(&g, &x0).unwrap();
        for &w in &d.negative {
            let conf = build_configuration(&g, &x0, w).unwrap();
            assert!(check_clauses(&g, &conf).is_ok());
            assert!(conf.system.vertices().contains(&conf.root));
        }
    }

    #[test]
    fn octahedron_vertices_are_saturated() {
        let g = super::super::tests::subdivided_octahedron();
        let x0 = build_x0(&g, &build_p(&g).unwrap()).unwrap();
        let conf = build_configuration(&g, &x0, 0).unwrap();
        assert_eq!(conf.kind, ConfigKind::Saturated);
        assert_eq!(conf.system.len(), 4);
        assert_eq!(conf.vertices().len(), 5);
        let mut broken = conf.clone();
        broken.kind = ConfigKind::Chorded;
        assert!(check_clauses(&g, &broken).is_err());
    }
}
