//! Exact backtracking search over list colorings.
//!
//! Vertices are assigned in degree-descending order. Every assignment is
//! checked incrementally against the property, and uncolored vertices near the
//! change are re-examined: a vertex with no admissible color left kills the
//! branch, a vertex with one admissible color is forced immediately.

use serde::Serialize;

use crate::coloring::{self, Color, Coloring, ListAssignment, Shape};
use crate::error::{Error, Result};
use crate::families;
use crate::graph::{PlanarGraph, Vertex};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "LINFOREST_ORACLE_BUDGET";

/// Property every monochromatic component must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
pub enum Property {
    /// A path with at most `max_len` edges.
    Good { max_len: usize },
    /// No path on `k` vertices.
    PkFree { k: usize },
    /// At most `k` vertices.
    Fragmented { k: usize },
    /// Maximum degree at most `k`.
    Defective { k: usize },
}

impl Property {
    fn validate(self) -> Result<()> {
        match self {
            Property::PkFree { k: 0 } | Property::Fragmented { k: 0 } => {
                Err(Error::BadParameter("k must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    /// Checks a complete coloring through the coloring module.
    pub fn holds(self, g: &PlanarGraph, c: &Coloring) -> Result<bool> {
        Ok(match self {
            Property::Good { max_len } => coloring::is_good(g, c, max_len)?,
            Property::Fragmented { k } => coloring::metrics(g, c)?.max_component_order <= k,
            Property::Defective { k } => coloring::metrics(g, c)?.max_mono_degree <= k,
            Property::PkFree { k } => {
                let m = coloring::metrics(g, c)?;
                if !m.path_order_exact && m.max_mono_path_order < k {
                    return Err(Error::BudgetExceeded(0));
                }
                m.max_mono_path_order < k
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Look for a coloring with the property.
    Exists,
    /// Try to refute "every coloring violates the property"; a witness is a counterexample.
    Forall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub property: Property,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Disable incremental checks and propagation; every leaf is checked from scratch.
    pub unpruned: bool,
    pub symmetry_breaking: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: budget_from_env(),
            unpruned: false,
            symmetry_breaking: true,
        }
    }
}

/// Reads the node budget from the environment, falling back to the default.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// A coloring with the property, if one exists.
    pub witness: Option<Coloring>,
    pub nodes: u64,
}

impl Outcome {
    /// Reading of the result under `mode`: true when an exists query found a
    /// witness or a forall query found none.
    pub fn holds(&self, mode: Mode) -> bool {
        match mode {
            Mode::Exists => self.witness.is_some(),
            Mode::Forall => self.witness.is_none(),
        }
    }
}

pub fn search(g: &PlanarGraph, lists: &ListAssignment, q: Query, opts: SearchOptions) -> Result<Outcome> {
    q.property.validate()?;
    lists.validate(g)?;
    let order = branching_order(g);
    let symmetric = opts.symmetry_breaking && lists.is_uniform_on(g);
    if opts.unpruned {
        return enumerate(g, lists, q.property, &order, opts.budget);
    }
    let mut s = State::new(g, lists, q.property);
    let mut nodes = 0u64;
    struct Frame {
        pos: usize,
        options: Vec<Color>,
        next: usize,
        mark: usize,
    }
    let mut stack: Vec<Frame> = Vec::new();
    let mut cursor = 0;
    loop {
        while cursor < order.len() && s.color[order[cursor] as usize].is_some() {
            cursor += 1;
        }
        if cursor == order.len() {
            return Ok(Outcome {
                witness: Some(s.coloring()),
                nodes,
            });
        }
        let v = order[cursor];
        let mut options = s.admissible(v);
        if symmetric && stack.is_empty() {
            options.truncate(1);
        }
        stack.push(Frame {
            pos: cursor,
            options,
            next: 0,
            mark: s.trail.len(),
        });
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(Outcome { witness: None, nodes });
            };
            s.undo_to(top.mark);
            if top.next == top.options.len() {
                stack.pop();
                continue;
            }
            let col = top.options[top.next];
            top.next += 1;
            nodes += 1;
            if nodes > opts.budget {
                return Err(Error::BudgetExceeded(opts.budget));
            }
            cursor = top.pos;
            if s.assign_and_propagate(order[top.pos], col) {
                break;
            }
        }
    }
}

/// Replays a complete coloring through the incremental checker.
pub fn check(g: &PlanarGraph, lists: &ListAssignment, property: Property, c: &Coloring) -> Result<bool> {
    property.validate()?;
    let mut s = State::new(g, lists, property);
    for v in g.vertices() {
        let col = c.get(v).ok_or(Error::UncoloredVertex(v))?;
        if !lists.get(v).contains(&col) || !s.feasible(v, col) {
            return Ok(false);
        }
        s.commit(v, col);
    }
    Ok(true)
}

fn branching_order(g: &PlanarGraph) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn enumerate(g: &PlanarGraph, lists: &ListAssignment, p: Property, order: &[Vertex], budget: u64) -> Result<Outcome> {
    let mut idx = vec![0usize; order.len()];
    let mut nodes = 0u64;
    loop {
        nodes += 1;
        if nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let mut c = Coloring::with_capacity(g.capacity());
        for (i, &v) in order.iter().enumerate() {
            c.set(v, lists.get(v)[idx[i]]);
        }
        if p.holds(g, &c)? {
            return Ok(Outcome {
                witness: Some(c),
                nodes,
            });
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == order.len() {
                return Ok(Outcome { witness: None, nodes });
            }
            idx[i] += 1;
            if idx[i] < lists.get(order[i]).len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

enum Undo {
    Color(Vertex),
    Degree(Vertex),
    Union { child: Vertex, root: Vertex },
}

struct State<'a> {
    g: &'a PlanarGraph,
    lists: &'a ListAssignment,
    property: Property,
    color: Vec<Option<Color>>,
    mono_deg: Vec<u32>,
    parent: Vec<Vertex>,
    size: Vec<u32>,
    trail: Vec<Undo>,
    scratch: Vec<u32>,
    stamp: u32,
}

impl<'a> State<'a> {
    fn new(g: &'a PlanarGraph, lists: &'a ListAssignment, property: Property) -> Self {
        let n = g.capacity();
        State {
            g,
            lists,
            property,
            color: vec![None; n],
            mono_deg: vec![0; n],
            parent: (0..n as Vertex).collect(),
            size: vec![1; n],
            trail: Vec::new(),
            scratch: vec![0; n],
            stamp: 0,
        }
    }

    fn coloring(&self) -> Coloring {
        let mut c = Coloring::with_capacity(self.color.len());
        for (v, col) in self.color.iter().enumerate() {
            if let Some(col) = col {
                c.set(v as Vertex, *col);
            }
        }
        c
    }

    fn find(&self, mut v: Vertex) -> Vertex {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    fn same_colored(&self, v: Vertex, col: Color) -> impl Iterator<Item = Vertex> + '_ {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| self.color[w as usize] == Some(col))
    }

    /// Whether giving `v` the color `col` keeps the property on the colored part.
    fn feasible(&mut self, v: Vertex, col: Color) -> bool {
        let nbrs: Vec<Vertex> = self.same_colored(v, col).collect();
        let d = nbrs.len() as u32;
        match self.property {
            Property::Defective { k } => {
                let k = k as u32;
                d <= k && nbrs.iter().all(|&w| self.mono_deg[w as usize] < k)
            }
            Property::PkFree { k: 1 } => false,
            Property::PkFree { k: 2 } => d == 0,
            Property::PkFree { k: 3 } => d == 0 || (d == 1 && self.mono_deg[nbrs[0] as usize] == 0),
            Property::PkFree { k } => {
                if d == 0 {
                    return true;
                }
                self.longest_path_through(v, col, k) < k
            }
            Property::Fragmented { k } => {
                let mut roots: Vec<Vertex> = nbrs.iter().map(|&w| self.find(w)).collect();
                roots.sort_unstable();
                roots.dedup();
                roots.iter().map(|&r| self.size[r as usize] as usize).sum::<usize>() < k
            }
            Property::Good { max_len } => {
                if d > 2 || nbrs.iter().any(|&w| self.mono_deg[w as usize] >= 2) {
                    return false;
                }
                let roots: Vec<Vertex> = nbrs.iter().map(|&w| self.find(w)).collect();
                if roots.len() == 2 && roots[0] == roots[1] {
                    return false;
                }
                roots.iter().map(|&r| self.size[r as usize] as usize).sum::<usize>() <= max_len
            }
        }
    }

    /// Vertex count of a longest path through `v` if `v` took color `col`,
    /// stopping early once `cap` is reached.
    fn longest_path_through(&mut self, v: Vertex, col: Color, cap: usize) -> usize {
        self.stamp += 1;
        let stamp = self.stamp;
        self.scratch[v as usize] = stamp;
        let starts: Vec<Vertex> = self.same_colored(v, col).collect();
        // longest arm from v through each first neighbor, then the best pair of disjoint arms
        let mut best = 1;
        for (i, &a) in starts.iter().enumerate() {
            let mut arm = Vec::new();
            self.arms(a, col, stamp, &mut arm, &mut |s, first| {
                // try to extend with a second arm avoiding the first
                let mut second = 0;
                for &b in &starts[i + 1..] {
                    if s.scratch[b as usize] != stamp {
                        second = second.max(s.max_arm(b, col, stamp));
                    }
                }
                let total = 1 + first + second;
                best = best.max(total);
                best >= cap
            });
            if best >= cap {
                break;
            }
        }
        self.scratch[v as usize] = 0;
        best
    }

    /// Enumerates simple arms starting at `x`, calling `f(state, arm_len)` at each
    /// maximal extension; stops when `f` returns true.
    fn arms(
        &mut self,
        x: Vertex,
        col: Color,
        stamp: u32,
        arm: &mut Vec<Vertex>,
        f: &mut dyn FnMut(&mut Self, usize) -> bool,
    ) -> bool {
        self.scratch[x as usize] = stamp;
        arm.push(x);
        let nexts: Vec<Vertex> = self
            .same_colored(x, col)
            .filter(|&y| self.scratch[y as usize] != stamp)
            .collect();
        let mut stop = f(self, arm.len());
        if !stop {
            for y in nexts {
                if self.arms(y, col, stamp, arm, f) {
                    stop = true;
                    break;
                }
            }
        }
        arm.pop();
        self.scratch[x as usize] = 0;
        stop
    }

    fn max_arm(&mut self, x: Vertex, col: Color, stamp: u32) -> usize {
        self.scratch[x as usize] = stamp;
        let nexts: Vec<Vertex> = self
            .same_colored(x, col)
            .filter(|&y| self.scratch[y as usize] != stamp)
            .collect();
        let mut best = 1;
        for y in nexts {
            best = best.max(1 + self.max_arm(y, col, stamp));
        }
        self.scratch[x as usize] = 0;
        best
    }

    fn commit(&mut self, v: Vertex, col: Color) {
        let nbrs: Vec<Vertex> = self.same_colored(v, col).collect();
        self.color[v as usize] = Some(col);
        self.trail.push(Undo::Color(v));
        for &w in &nbrs {
            self.mono_deg[w as usize] += 1;
            self.mono_deg[v as usize] += 1;
            self.trail.push(Undo::Degree(w));
            self.trail.push(Undo::Degree(v));
            let (a, b) = (self.find(v), self.find(w));
            if a != b {
                let (child, root) = if self.size[a as usize] <= self.size[b as usize] {
                    (a, b)
                } else {
                    (b, a)
                };
                self.parent[child as usize] = root;
                self.size[root as usize] += self.size[child as usize];
                self.trail.push(Undo::Union { child, root });
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Color(v) => self.color[v as usize] = None,
                Undo::Degree(v) => self.mono_deg[v as usize] -= 1,
                Undo::Union { child, root } => {
                    self.parent[child as usize] = child;
                    self.size[root as usize] -= self.size[child as usize];
                }
            }
        }
    }

    fn admissible(&mut self, v: Vertex) -> Vec<Color> {
        let list = self.lists.get(v).to_vec();
        list.into_iter().filter(|&c| self.feasible(v, c)).collect()
    }

    /// Uncolored vertices whose admissible colors may have changed after coloring `v`.
    fn affected(&mut self, v: Vertex) -> Vec<Vertex> {
        let col = self.color[v as usize].unwrap();
        let local = matches!(
            self.property,
            Property::Defective { .. } | Property::PkFree { k: 1..=3 }
        );
        let mut region = vec![v];
        if local {
            region.extend(self.same_colored(v, col));
        } else {
            self.stamp += 1;
            let stamp = self.stamp;
            self.scratch[v as usize] = stamp;
            let mut i = 0;
            while i < region.len() {
                let x = region[i];
                i += 1;
                let next: Vec<Vertex> = self.same_colored(x, col).collect();
                for y in next {
                    if self.scratch[y as usize] != stamp {
                        self.scratch[y as usize] = stamp;
                        region.push(y);
                    }
                }
            }
            for &x in &region {
                self.scratch[x as usize] = 0;
            }
        }
        let mut out: Vec<Vertex> = region
            .iter()
            .flat_map(|&x| self.g.neighbors(x).iter().copied())
            .filter(|&y| self.color[y as usize].is_none())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn assign_and_propagate(&mut self, v: Vertex, col: Color) -> bool {
        let mut queue = vec![(v, col)];
        while let Some((x, c)) = queue.pop() {
            match self.color[x as usize] {
                Some(existing) if existing == c => continue,
                Some(_) => return false,
                None => {}
            }
            if !self.feasible(x, c) {
                return false;
            }
            self.commit(x, c);
            for y in self.affected(x) {
                let options = self.admissible(y);
                match options.len() {
                    0 => return false,
                    1 => queue.push((y, options[0])),
                    _ => {}
                }
            }
        }
        true
    }
}

/// Exhaustively checks the disjunction used by the inductive lower-bound
/// argument over all 2-colorings of the double gadget with parameter `t`.
///
/// Whenever the specials `u` and `w` share a color `a`, one of the following holds:
/// some copy's `t`-vertex path is monochromatic; `w` has a neighbor of color `a`;
/// some neighbor `v` of `u` with color `a` has a neighbor `v' ∉ {u, w}` of color `a`.
pub fn verify_gadget_lemma(t: usize) -> Result<bool> {
    verify_gadget_lemma_with_budget(t, budget_from_env())
}

pub fn verify_gadget_lemma_with_budget(t: usize, budget: u64) -> Result<bool> {
    let b = families::gadget_b(t)?;
    let g = &b.graph;
    let n = g.vertex_count();
    if n >= 64 || (1u64 << n) > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let (u, w) = (b.marks["u"], b.marks["w"]);
    let bit = |v: Vertex| 1u64 << v;
    let mask_of = |vs: &[Vertex]| vs.iter().fold(0u64, |m, &v| m | bit(v));
    let paths: Vec<u64> = families::gadget_b_paths(t).iter().map(|p| mask_of(p)).collect();
    let nw = mask_of(g.neighbors(w));
    let nu: Vec<(Vertex, u64)> = g
        .neighbors(u)
        .iter()
        .map(|&v| {
            let others: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&x| x != u && x != w).collect();
            (v, mask_of(&others))
        })
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for ones in 0..=all {
        let cu = ones & bit(u) != 0;
        let cw = ones & bit(w) != 0;
        if cu != cw {
            continue;
        }
        // `same` marks the vertices colored like u and w
        let same = if cu { ones } else { !ones & all };
        let path_mono = paths.iter().any(|&p| p & ones == p || p & ones == 0);
        let w_hit = same & nw != 0;
        let u_hit = nu.iter().any(|&(v, others)| same & bit(v) != 0 && same & others != 0);
        if !(path_mono || w_hit || u_hit) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convenience wrapper for the shape of the first bad component, used in diagnostics.
pub fn describe_failure(g: &PlanarGraph, c: &Coloring, max_len: usize) -> Result<Option<String>> {
    Ok(coloring::bad_component(g, c, max_len)?.map(|m| {
        let shape = match m.shape {
            Shape::Path { length } => format!("path of length {length}"),
            Shape::Cycle => "cycle".to_string(),
            Shape::Other => format!("component with max degree {}", m.max_degree),
        };
        format!("color {} {} on {:?}", m.color, shape, m.vertices)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle, hex_patch};

    fn opts() -> SearchOptions {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            unpruned: false,
            symmetry_breaking: true,
        }
    }

    fn exists(g: &PlanarGraph, p: Property) -> Option<Coloring> {
        let lists = ListAssignment::uniform(g, &[0, 1]);
        search(
            g,
            &lists,
            Query {
                property: p,
                mode: Mode::Exists,
            },
            opts(),
        )
        .unwrap()
        .witness
    }

    #[test]
    fn odd_cycle_has_no_proper_two_coloring() {
        let c5 = cycle(5).unwrap();
        assert!(exists(&c5, Property::PkFree { k: 2 }).is_none());
        let c6 = cycle(6).unwrap();
        let w = exists(&c6, Property::PkFree { k: 2 }).unwrap();
        assert!(check(
            &c6,
            &ListAssignment::uniform(&c6, &[0, 1]),
            Property::PkFree { k: 2 },
            &w
        )
        .unwrap());
    }

    #[test]
    fn witnesses_pass_the_independent_checker() {
        let g = hex_patch(2, 2).unwrap();
        for p in [
            Property::Good { max_len: 1 },
            Property::PkFree { k: 3 },
            Property::PkFree { k: 4 },
            Property::Fragmented { k: 2 },
            Property::Defective { k: 1 },
        ] {
            let w = exists(&g, p).unwrap();
            assert!(p.holds(&g, &w).unwrap(), "{p:?}");
        }
    }

    #[test]
    fn pruned_and_unpruned_agree_on_small_graphs() {
        for n in 3..=9 {
            let g = cycle(n).unwrap();
            let lists = ListAssignment::uniform(&g, &[0, 1]);
            for p in [
                Property::Good { max_len: 0 },
                Property::Good { max_len: 1 },
                Property::PkFree { k: 3 },
                Property::PkFree { k: 4 },
                Property::Fragmented { k: 2 },
                Property::Defective { k: 0 },
            ] {
                let q = Query {
                    property: p,
                    mode: Mode::Exists,
                };
                let a = search(&g, &lists, q, opts()).unwrap();
                let b = search(
                    &g,
                    &lists,
                    q,
                    SearchOptions {
                        unpruned: true,
                        ..opts()
                    },
                )
                .unwrap();
                assert_eq!(a.witness.is_some(), b.witness.is_some(), "n={n} {p:?}");
            }
        }
    }

    #[test]
    fn non_uniform_lists_disable_symmetry() {
        let g = cycle(4).unwrap();
        let mut lists = ListAssignment::uniform(&g, &[0, 1]);
        lists.set(0, vec![1, 2]);
        lists.set(2, vec![1, 3]);
        let q = Query {
            property: Property::PkFree { k: 2 },
            mode: Mode::Exists,
        };
        let w = search(&g, &lists, q, opts()).unwrap().witness.unwrap();
        assert!(w.respects(&g, &lists));
        assert!(check(&g, &lists, Property::PkFree { k: 2 }, &w).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let g = hex_patch(3, 3).unwrap();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let q = Query {
            property: Property::PkFree { k: 2 },
            mode: Mode::Exists,
        };
        let r = search(
            &g,
            &lists,
            q,
            SearchOptions {
                budget: 1,
                unpruned: true,
                symmetry_breaking: true,
            },
        );
        assert_eq!(r, Err(Error::BudgetExceeded(1)));
    }

    #[test]
    fn gadget_lemma_small_cases() {
        assert!(verify_gadget_lemma_with_budget(2, 1 << 20).unwrap());
        assert!(verify_gadget_lemma_with_budget(3, 1 << 20).unwrap());
        assert_eq!(
            verify_gadget_lemma_with_budget(5, 1 << 10),
            Err(Error::BudgetExceeded(1 << 10))
        );
    }
}
