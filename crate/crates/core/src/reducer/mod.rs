//! The constructive solver: peel, split, saturate, reduce, recurse, extend.

mod augment;
pub mod configuration;
pub mod discharge;
pub mod extend;
pub mod reduction;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::coloring::{self, Color, Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{NearSearch, PlanarGraph, Vertex};
use crate::oracle::{self, Mode, Property, Query, SearchOptions};
use crate::paths::{build_p, build_x0, check_face_structure};

pub use augment::augment_to_maximal;
pub use configuration::{build_configuration, check_clauses, ConfigKind, Configuration};
pub use discharge::{discharge, Case, ChargeMap, Discharge};
pub use extend::{extend_coloring, Boundary, Extension};
pub use reduction::{apply_reduction_extension, find_reduction, find_reductions, Reduction};

/// The bound on monochromatic path length.
pub const MAX_PATH_LEN: usize = 14;

/// Read access to neighborhoods, either of a live graph or of a snapshot
/// taken when vertices were removed.
pub trait Adjacency {
    fn neighbors(&self, v: Vertex) -> &[Vertex];
}

impl Adjacency for PlanarGraph {
    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        PlanarGraph::neighbors(self, v)
    }
}

/// Neighborhoods of removed vertices, frozen at removal time.
#[derive(Debug, Clone, Default)]
pub struct Snapshot {
    adj: HashMap<Vertex, Vec<Vertex>>,
}

impl Snapshot {
    fn take(rotation: &[Vec<Vertex>], set: &[Vertex]) -> Snapshot {
        Snapshot {
            adj: set.iter().map(|&v| (v, rotation[v as usize].clone())).collect(),
        }
    }
}

impl Adjacency for Snapshot {
    fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Smallest color of `v`'s list not in `avoid`.
pub fn pick_avoiding(lists: &ListAssignment, v: Vertex, avoid: &[Color]) -> Result<Color> {
    lists
        .get(v)
        .iter()
        .copied()
        .find(|x| !avoid.contains(x))
        .ok_or(Error::ListTooSmall(v))
}

/// Checks that `set` is colored, that no edge leaving it is monochromatic
/// and that monochromatic components inside it are paths with at most
/// `max_len` edges.
pub fn check_local<A: Adjacency>(
    adj: &A,
    set: &[Vertex],
    c: &Coloring,
    max_len: usize,
) -> std::result::Result<(), String> {
    let inside: HashSet<Vertex> = set.iter().copied().collect();
    for &v in set {
        let cv = c.get(v).ok_or_else(|| format!("{v} is uncolored"))?;
        for &u in adj.neighbors(v) {
            if !inside.contains(&u) && c.get(u) == Some(cv) {
                return Err(format!("edge {v}-{u} leaves the set monochromatic"));
            }
        }
    }
    let mut seen = HashSet::new();
    for &s in set {
        if !seen.insert(s) {
            continue;
        }
        let col = c.get(s);
        let (mut order, mut edges, mut max_deg) = (0usize, 0usize, 0usize);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            order += 1;
            let same: Vec<Vertex> = adj
                .neighbors(u)
                .iter()
                .copied()
                .filter(|x| inside.contains(x) && c.get(*x) == col)
                .collect();
            max_deg = max_deg.max(same.len());
            edges += same.len();
            for x in same {
                if seen.insert(x) {
                    stack.push(x);
                }
            }
        }
        edges /= 2;
        if max_deg > 2 || edges + 1 != order || edges > max_len {
            return Err(format!(
                "component at {s} has {order} vertices, {edges} edges, degree {max_deg}"
            ));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Components with at most this many vertices go to the exact search.
    pub threshold: usize,
    pub oracle_budget: u64,
    pub trace: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            threshold: 14,
            oracle_budget: oracle::budget_from_env(),
            trace: false,
        }
    }
}

/// Counters collected during one solve.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub rounds: usize,
    pub peeled: usize,
    pub oracle_components: usize,
    pub oracle_vertices: usize,
    pub oracle_nodes: u64,
    pub augment_edges: usize,
    pub face_cycles: usize,
    pub degree2_paths: usize,
    /// Configurations by kind: saturated, joined, chorded, extended.
    pub configurations: [usize; 4],
    /// Path systems checked for degree conditions and acyclicity.
    pub x0_checked: usize,
    /// Charge maps checked for conservation and sign.
    pub charges_checked: usize,
    /// Largest doubled total charge seen; always at most -12.
    pub max_charge_total: Option<i64>,
    /// Configurations built and checked, by kind, whether used or not.
    pub clauses_checked: [usize; 4],
    /// Extensions whose postconditions were verified.
    pub extensions_checked: usize,
    /// Of those, extensions where the rules failed and a search over the endvertices took over.
    pub extensions_searched: usize,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub coloring: Coloring,
    pub report: SolveReport,
    /// One line per removal step, when tracing is on.
    pub trace: Vec<String>,
}

enum Step {
    Leaf { v: Vertex, nb: Option<Vertex> },
    Reduction { r: Reduction, snap: Snapshot },
    Config { conf: Configuration, snap: Snapshot },
}

/// Colors `g` from `lists` so that every monochromatic component is a path
/// with at most 14 edges.
pub fn solve(g: &PlanarGraph, lists: &ListAssignment) -> Result<Coloring> {
    solve_with(g, lists, SolverOptions::default()).map(|s| s.coloring)
}

pub fn solve_with(g: &PlanarGraph, lists: &ListAssignment, opts: SolverOptions) -> Result<Solution> {
    lists.validate(g)?;
    if let Some(len) = g.cycle_shorter_than(6) {
        return Err(Error::GirthTooSmall(len));
    }
    let mut s = Solver {
        rot: g.rotation_table().to_vec(),
        present: (0..g.capacity()).map(|v| g.contains(v as Vertex)).collect(),
        lists,
        opts,
        coloring: Coloring::with_capacity(g.capacity()),
        steps: Vec::new(),
        report: SolveReport::default(),
        trace: Vec::new(),
        near: NearSearch::default(),
        left: g.vertex_count(),
    };
    s.run()?;
    s.unwind()?;
    let Solver {
        coloring,
        report,
        trace,
        ..
    } = s;
    if let Some(v) = coloring.list_violation(g, lists) {
        return Err(Error::assumption(
            "final-check",
            format!("vertex {v} is uncolored or off its list"),
        ));
    }
    if let Some(bad) = coloring::bad_component(g, &coloring, MAX_PATH_LEN)? {
        return Err(Error::assumption(
            "final-check",
            format!("bad component {:?}", bad.vertices),
        ));
    }
    Ok(Solution {
        coloring,
        report,
        trace,
    })
}

struct Solver<'a> {
    rot: Vec<Vec<Vertex>>,
    present: Vec<bool>,
    lists: &'a ListAssignment,
    opts: SolverOptions,
    coloring: Coloring,
    steps: Vec<Step>,
    report: SolveReport,
    trace: Vec<String>,
    near: NearSearch,
    left: usize,
}

impl Solver<'_> {
    fn run(&mut self) -> Result<()> {
        loop {
            loop {
                self.small_components()?;
                if self.peel() == 0 {
                    break;
                }
            }
            if self.left == 0 {
                return Ok(());
            }
            self.report.rounds += 1;
            self.report.augment_edges += augment::augment_tables(&mut self.rot, &self.present, &mut self.near);
            let g = PlanarGraph::from_tables(self.rot.clone(), self.present.clone());
            check_face_structure(&g).map_err(|w| Error::assumption("maximal-faces", w))?;
            let reductions = find_reductions(&g);
            if !reductions.is_empty() {
                let mut blocked = HashSet::new();
                for r in reductions {
                    if self.accept(&mut blocked, r.vertices()) {
                        match r {
                            Reduction::FaceCycle { .. } => self.report.face_cycles += 1,
                            Reduction::Degree2Path { .. } => self.report.degree2_paths += 1,
                        }
                        let set = r.vertices().to_vec();
                        self.remove_batch(&set, |snap| Step::Reduction { r, snap }, "");
                    }
                }
                continue;
            }
            self.configurations(&g)?;
        }
    }

    fn configurations(&mut self, g: &PlanarGraph) -> Result<()> {
        let p = build_p(g)?;
        let x0 = build_x0(g, &p)?;
        x0.validate(g)?;
        let nice = x0.check_nice(g);
        if !nice.passed() {
            return Err(Error::assumption("path-system-nice", format!("{:?}", nice.violations)));
        }
        if let Some((a, b)) = x0.cycle_witness() {
            return Err(Error::assumption(
                "path-system-acyclic",
                format!("{a} and {b} reach each other"),
            ));
        }
        self.report.x0_checked += 1;
        let d = discharge(g, &x0)?;
        let total = d.charges.after_sum();
        if total > -12 {
            return Err(Error::assumption("charge-total", format!("doubled total {total}")));
        }
        self.report.charges_checked += 1;
        self.report.max_charge_total = Some(self.report.max_charge_total.map_or(total, |m| m.max(total)));
        let mut blocked = HashSet::new();
        let mut any = false;
        for &w in &d.negative {
            let conf = build_configuration(g, &x0, w)?;
            self.report.clauses_checked[conf.kind.index()] += 1;
            let set = conf.vertices();
            if self.accept(&mut blocked, &set) {
                any = true;
                self.report.configurations[conf.kind.index()] += 1;
                let label = format!(" root={}", conf.root);
                let kind = conf.kind;
                self.remove_batch(&set, |snap| Step::Config { conf, snap }, &label);
                debug_assert!(matches!(self.steps.last(), Some(Step::Config { conf, .. }) if conf.kind == kind));
            }
        }
        debug_assert!(any);
        Ok(())
    }

    /// Accepts `set` if it avoids the closed neighborhoods of everything accepted before.
    fn accept(&self, blocked: &mut HashSet<Vertex>, set: &[Vertex]) -> bool {
        if set.iter().any(|v| blocked.contains(v)) {
            return false;
        }
        for &v in set {
            blocked.insert(v);
            blocked.extend(self.rot[v as usize].iter().copied());
        }
        true
    }

    fn remove_batch(&mut self, set: &[Vertex], make: impl FnOnce(Snapshot) -> Step, label: &str) {
        let snap = Snapshot::take(&self.rot, set);
        let step = make(snap);
        if self.opts.trace {
            let kind = match &step {
                Step::Leaf { .. } => "leaf".to_string(),
                Step::Reduction { r, .. } => r.kind().to_string(),
                Step::Config { conf, .. } => format!("config-{}", conf.kind),
            };
            self.trace_line(&kind, set, label);
        }
        self.steps.push(step);
        self.remove(set);
    }

    fn trace_line(&mut self, kind: &str, set: &[Vertex], label: &str) {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        let list: Vec<String> = sorted.iter().map(|v| v.to_string()).collect();
        let line = format!(
            "step={} kind={kind} removed=[{}]{label}",
            self.trace.len(),
            list.join(",")
        );
        self.trace.push(line);
    }

    fn remove(&mut self, set: &[Vertex]) {
        let gone: HashSet<Vertex> = set.iter().copied().collect();
        for &v in set {
            self.present[v as usize] = false;
            for u in std::mem::take(&mut self.rot[v as usize]) {
                if !gone.contains(&u) {
                    self.rot[u as usize].retain(|&x| x != v);
                }
            }
        }
        self.left -= set.len();
    }

    /// Removes vertices of degree at most one until none is left; returns how many.
    fn peel(&mut self) -> usize {
        let mut work: Vec<Vertex> = (0..self.rot.len() as Vertex)
            .filter(|&v| self.present[v as usize] && self.rot[v as usize].len() <= 1)
            .collect();
        let mut removed = Vec::new();
        while let Some(v) = work.pop() {
            if !self.present[v as usize] || self.rot[v as usize].len() > 1 {
                continue;
            }
            let nb = self.rot[v as usize].first().copied();
            self.steps.push(Step::Leaf { v, nb });
            self.remove(&[v]);
            removed.push(v);
            if let Some(u) = nb {
                if self.rot[u as usize].len() <= 1 {
                    work.push(u);
                }
            }
        }
        self.report.peeled += removed.len();
        if self.opts.trace && !removed.is_empty() {
            self.trace_line("leaf", &removed, "");
        }
        removed.len()
    }

    /// Colors every component with at most `threshold` vertices by exact search.
    fn small_components(&mut self) -> Result<()> {
        if self.opts.threshold == 0 {
            return Ok(());
        }
        let mut comp = vec![u32::MAX; self.rot.len()];
        for s in 0..self.rot.len() {
            if !self.present[s] || comp[s] != u32::MAX {
                continue;
            }
            let mut members = vec![s as Vertex];
            comp[s] = s as u32;
            let mut i = 0;
            while i < members.len() && members.len() <= self.opts.threshold {
                let u = members[i];
                i += 1;
                for &x in &self.rot[u as usize] {
                    if comp[x as usize] == u32::MAX {
                        comp[x as usize] = s as u32;
                        members.push(x);
                    }
                }
            }
            if members.len() <= self.opts.threshold {
                self.solve_exactly(&members)?;
            } else {
                // finish marking so this component is skipped
                while i < members.len() {
                    let u = members[i];
                    i += 1;
                    for &x in &self.rot[u as usize] {
                        if comp[x as usize] == u32::MAX {
                            comp[x as usize] = s as u32;
                            members.push(x);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn solve_exactly(&mut self, members: &[Vertex]) -> Result<()> {
        let index: HashMap<Vertex, Vertex> = members.iter().enumerate().map(|(i, &v)| (v, i as Vertex)).collect();
        let rotation: Vec<Vec<Vertex>> = members
            .iter()
            .map(|&v| self.rot[v as usize].iter().map(|u| index[u]).collect())
            .collect();
        let h = PlanarGraph::from_tables(rotation, vec![true; members.len()]);
        let lists = ListAssignment::from_map(
            members
                .iter()
                .enumerate()
                .map(|(i, &v)| (i as Vertex, self.lists.get(v).to_vec()))
                .collect::<BTreeMap<_, _>>(),
        );
        let opts = SearchOptions {
            budget: self.opts.oracle_budget,
            ..SearchOptions::default()
        };
        let q = Query {
            property: Property::Good { max_len: MAX_PATH_LEN },
            mode: Mode::Exists,
        };
        let out = oracle::search(&h, &lists, q, opts)?;
        self.report.oracle_nodes += out.nodes;
        let witness = out
            .witness
            .ok_or_else(|| Error::assumption("small-component", format!("no good coloring of {members:?}")))?;
        for (i, &v) in members.iter().enumerate() {
            self.coloring
                .set(v, witness.get(i as Vertex).expect("witness colors every vertex"));
        }
        self.report.oracle_components += 1;
        self.report.oracle_vertices += members.len();
        if self.opts.trace {
            self.trace_line("small-component", members, "");
        }
        self.remove(members);
        Ok(())
    }

    /// Replays the removal steps backwards, extending the coloring each time.
    fn unwind(&mut self) -> Result<()> {
        while let Some(step) = self.steps.pop() {
            match step {
                Step::Leaf { v, nb } => {
                    let avoid: Vec<Color> = nb.and_then(|u| self.coloring.get(u)).into_iter().collect();
                    let col = pick_avoiding(self.lists, v, &avoid)?;
                    self.coloring.set(v, col);
                }
                Step::Reduction { r, snap } => apply_reduction_extension(&snap, &r, &mut self.coloring, self.lists)?,
                Step::Config { conf, snap } => {
                    if extend_coloring(&snap, &conf, &mut self.coloring, self.lists)? == Extension::Search {
                        self.report.extensions_searched += 1;
                    }
                    self.report.extensions_checked += 1;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::families::{cycle, hex_patch, random_planar_girth6};

    /// The octahedron with every edge subdivided once.
    pub(crate) fn subdivided_octahedron() -> PlanarGraph {
        let oct = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
            (5, 1),
            (5, 2),
            (5, 3),
            (5, 4),
        ];
        let mut edges = Vec::new();
        for (i, &(a, b)) in oct.iter().enumerate() {
            let m = 6 + i as Vertex;
            edges.push((a, m));
            edges.push((m, b));
        }
        PlanarGraph::from_edges(0..18, &edges).unwrap()
    }

    fn no_oracle() -> SolverOptions {
        SolverOptions {
            threshold: 0,
            trace: true,
            ..SolverOptions::default()
        }
    }

    #[test]
    fn hexagon() {
        let g = cycle(6).unwrap();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let c = solve(&g, &lists).unwrap();
        assert!(coloring::is_good(&g, &c, 14).unwrap());
        let s = solve_with(&g, &lists, no_oracle()).unwrap();
        assert!(coloring::is_good(&g, &s.coloring, 14).unwrap());
    }

    #[test]
    fn tree_needs_only_peeling() {
        let edges: Vec<_> = (1..30).map(|v| ((v - 1) / 3, v)).collect();
        let g = PlanarGraph::from_edges(0..30, &edges).unwrap();
        let lists = ListAssignment::uniform(&g, &[3, 7]);
        let s = solve_with(&g, &lists, no_oracle()).unwrap();
        assert_eq!(s.report.peeled, 30);
        assert_eq!(s.report.rounds, 0);
        assert!(coloring::is_good(&g, &s.coloring, 14).unwrap());
    }

    #[test]
    fn octahedron_uses_configurations() {
        let g = subdivided_octahedron();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let s = solve_with(&g, &lists, no_oracle()).unwrap();
        assert!(s.report.configurations[ConfigKind::Saturated.index()] >= 1);
        assert!(s.trace.iter().any(|l| l.contains("kind=config-saturated")));
        assert!(coloring::is_good(&g, &s.coloring, 14).unwrap());
    }

    #[test]
    fn medial_graphs_reach_every_configuration_kind() {
        // seeds found by sweeping the medial family
        let cases = [
            (12, 96, 8, ConfigKind::Joined),
            (24, 192, 6702, ConfigKind::Chorded),
            (28, 224, 830, ConfigKind::Extended),
        ];
        for (base, chords, seed, kind) in cases {
            let g = crate::families::random_medial(base, chords, seed).unwrap();
            let lists = ListAssignment::uniform(&g, &[0, 1]);
            let s = solve_with(&g, &lists, no_oracle()).unwrap();
            assert!(
                s.report.configurations[kind.index()] >= 1,
                "{kind} at seed {seed}: {:?}",
                s.report
            );
            assert!(s.trace.iter().any(|l| l.contains(&format!("kind=config-{kind}"))));
            assert_eq!(
                s.report.extensions_checked,
                s.report.configurations.iter().sum::<usize>()
            );
            assert!(coloring::is_good(&g, &s.coloring, 14).unwrap());
        }
    }

    #[test]
    fn search_takes_over_when_the_rules_fail() {
        let g = crate::families::random_medial(31, 62, 41847).unwrap();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let s = solve_with(&g, &lists, no_oracle()).unwrap();
        assert!(s.report.extensions_searched >= 1, "{:?}", s.report);
        assert!(coloring::is_good(&g, &s.coloring, 14).unwrap());
    }

    #[test]
    fn hex_patch_and_random_graphs() {
        let g = hex_patch(4, 4).unwrap();
        let lists = ListAssignment::uniform(&g, &[0, 1]);
        let c = solve(&g, &lists).unwrap();
        assert!(coloring::metrics(&g, &c).unwrap().max_mono_path_order <= 15);
        for seed in 1..20 {
            let g = random_planar_girth6(60 + 10 * seed as usize, seed).unwrap();
            let lists = ListAssignment::uniform(&g, &[0, 1]);
            for opts in [SolverOptions::default(), no_oracle()] {
                let s = solve_with(&g, &lists, opts).unwrap();
                assert!(coloring::is_good(&g, &s.coloring, 14).unwrap());
            }
        }
    }

    #[test]
    fn rejects_short_cycles_and_small_lists() {
        let g = cycle(5).unwrap();
        assert_eq!(
            solve(&g, &ListAssignment::uniform(&g, &[0, 1])).unwrap_err(),
            Error::GirthTooSmall(5)
        );
        let h = cycle(6).unwrap();
        assert!(matches!(
            solve(&h, &ListAssignment::uniform(&h, &[0])),
            Err(Error::InvalidLists(_))
        ));
    }

    #[test]
    fn local_check_catches_boundary_conflicts() {
        let g = cycle(6).unwrap();
        let mut c = Coloring::new();
        for v in 0..6 {
            c.set(v, 0);
        }
        assert!(check_local(&g, &[0, 1], &c, 14).is_err());
        c.set(2, 1);
        c.set(5, 1);
        assert!(check_local(&g, &[0, 1], &c, 14).is_ok());
        assert!(check_local(&g, &[0, 1], &c, 0).is_err());
    }
}
