//! Left-right planarity test with embedding construction.
//!
//! Works on a dense local graph (`0..n`) given by adjacency lists and returns
//! a rotation system (cyclic neighbor order per vertex) or `None` when the
//! graph is not planar.

use std::collections::HashMap;

type EdgeId = usize;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn new(low: EdgeId, high: EdgeId) -> Self {
        Interval {
            low: Some(low),
            high: Some(high),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }

    fn conflicting(&self, b: EdgeId, lowpt: &[usize]) -> bool {
        match self.high {
            Some(h) => !self.is_empty() && lowpt[h] > lowpt[b],
            None => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }

    fn lowest(&self, lowpt: &[usize]) -> usize {
        if self.left.is_empty() {
            return lowpt[self.right.low.expect("non-empty pair")];
        }
        if self.right.is_empty() {
            return lowpt[self.left.low.expect("non-empty pair")];
        }
        lowpt[self.left.low.unwrap()].min(lowpt[self.right.low.unwrap()])
    }
}

struct LrState<'a> {
    adj: &'a [Vec<usize>],
    height: Vec<usize>,
    parent_edge: Vec<Option<EdgeId>>,
    // oriented edges (source, target)
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    lowpt_edge: Vec<EdgeId>,
    reference: Vec<Option<EdgeId>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<Option<ConflictPair>>,
    roots: Vec<usize>,
}

/// Computes a planar rotation system for the graph, or `None` if it has none.
pub(crate) fn planar_rotation(adj: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    let m: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut st = LrState {
        adj,
        height: vec![NONE; n],
        parent_edge: vec![None; n],
        edges: Vec::with_capacity(m),
        edge_index: HashMap::with_capacity(m),
        out_edges: vec![Vec::new(); n],
        lowpt: Vec::with_capacity(m),
        lowpt2: Vec::with_capacity(m),
        nesting_depth: Vec::with_capacity(m),
        lowpt_edge: Vec::new(),
        reference: Vec::new(),
        side: Vec::new(),
        stack: Vec::new(),
        stack_bottom: Vec::new(),
        roots: Vec::new(),
    };
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            st.roots.push(v);
            st.orient(v);
        }
    }
    let m = st.edges.len();
    st.lowpt_edge = vec![NONE; m];
    st.reference = vec![None; m];
    st.side = vec![1; m];
    st.stack_bottom = vec![None; m];

    let mut ordered: Vec<Vec<EdgeId>> = st.out_edges.clone();
    for list in &mut ordered {
        list.sort_by_key(|&e| st.nesting_depth[e]);
    }
    for &r in &st.roots.clone() {
        if !st.test(r, &ordered) {
            return None;
        }
    }

    for e in 0..m {
        let s = st.sign(e);
        st.nesting_depth[e] *= s;
    }
    for list in &mut ordered {
        list.sort_by_key(|&e| st.nesting_depth[e]);
    }

    let mut emb = Embedding::new(n);
    for (v, list) in ordered.iter().enumerate() {
        let mut previous = None;
        for &e in list {
            let w = st.edges[e].1;
            emb.add_cw(v, w, previous);
            previous = Some(w);
        }
    }
    let mut left_ref = vec![NONE; n];
    let mut right_ref = vec![NONE; n];
    for &r in &st.roots {
        st.embed(r, &ordered, &mut emb, &mut left_ref, &mut right_ref);
    }
    Some(emb.rotation)
}

impl LrState<'_> {
    fn orient(&mut self, v: usize) {
        let e = self.parent_edge[v];
        for &w in &self.adj[v] {
            if self.edge_index.contains_key(&(v, w)) || self.edge_index.contains_key(&(w, v)) {
                continue;
            }
            let vw = self.edges.len();
            self.edges.push((v, w));
            self.edge_index.insert((v, w), vw);
            self.out_edges[v].push(vw);
            self.lowpt.push(self.height[v]);
            self.lowpt2.push(self.height[v]);
            self.nesting_depth.push(0);
            if self.height[w] == NONE {
                self.parent_edge[w] = Some(vw);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[vw] = self.height[w];
            }
            self.nesting_depth[vw] = 2 * self.lowpt[vw] as i64;
            if self.lowpt2[vw] < self.height[v] {
                self.nesting_depth[vw] += 1;
            }
            if let Some(e) = e {
                if self.lowpt[vw] < self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                    self.lowpt[e] = self.lowpt[vw];
                } else if self.lowpt[vw] > self.lowpt[e] {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                } else {
                    self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                }
            }
        }
    }

    fn test(&mut self, v: usize, ordered: &[Vec<EdgeId>]) -> bool {
        let e = self.parent_edge[v];
        let first = ordered[v].first().copied();
        for &ei in &ordered[v] {
            let w = self.edges[ei].1;
            self.stack_bottom[ei] = self.stack.last().copied();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w, ordered) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = ei;
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval::new(ei, ei),
                });
            }
            if self.lowpt[ei] < self.height[v] {
                let e = e.expect("return edge below the root");
                if Some(ei) == first {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges are stacked");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else if let Some(pl) = p.right.low {
                    self.reference[pl] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[q_low] = Some(self.lowpt_edge[e]);
            }
            if self.stack.last().copied() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(top.left.conflicting(ei, &self.lowpt) || top.right.conflicting(ei, &self.lowpt)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if q.right.conflicting(ei, &self.lowpt) {
                q.swap();
            }
            if q.right.conflicting(ei, &self.lowpt) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.reference[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left.high = q.left.high;
            } else if let Some(pl) = p.left.low {
                self.reference[pl] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.edges[e].0;
        while let Some(top) = self.stack.last() {
            if top.lowest(&self.lowpt) != self.height[u] {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.edges[h].1 != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.edges[h].1 != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < self.height[u] {
            let top = self.stack.last().expect("return edge pending");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                (Some(l), None) => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: EdgeId) -> i64 {
        // iterative form of the recursive sign resolution
        let mut chain = vec![e];
        while let Some(r) = self.reference[*chain.last().unwrap()] {
            chain.push(r);
        }
        for i in (0..chain.len() - 1).rev() {
            let (x, r) = (chain[i], chain[i + 1]);
            self.side[x] *= self.side[r];
            self.reference[x] = None;
        }
        self.side[e]
    }

    fn embed(
        &self,
        v: usize,
        ordered: &[Vec<EdgeId>],
        emb: &mut Embedding,
        left_ref: &mut [usize],
        right_ref: &mut [usize],
    ) {
        for &ei in &ordered[v] {
            let w = self.edges[ei].1;
            if self.parent_edge[w] == Some(ei) {
                emb.add_first(w, v);
                left_ref[v] = w;
                right_ref[v] = w;
                self.embed(w, ordered, emb, left_ref, right_ref);
            } else if self.side[ei] == 1 {
                emb.add_cw(w, v, Some(right_ref[w]));
            } else {
                emb.add_ccw(w, v, Some(left_ref[w]));
                left_ref[w] = v;
            }
        }
    }
}

/// Cyclic neighbor lists with a distinguished first neighbor per vertex.
struct Embedding {
    rotation: Vec<Vec<usize>>,
    first: Vec<usize>,
}

impl Embedding {
    fn new(n: usize) -> Self {
        Embedding {
            rotation: vec![Vec::new(); n],
            first: vec![NONE; n],
        }
    }

    fn position(&self, v: usize, w: usize) -> usize {
        self.rotation[v]
            .iter()
            .position(|&x| x == w)
            .expect("reference neighbor present")
    }

    /// Inserts `end` directly after `reference` in the cyclic order of `start`.
    fn add_cw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.rotation[start].push(end);
                self.first[start] = end;
            }
            Some(r) => {
                let p = self.position(start, r);
                self.rotation[start].insert(p + 1, end);
            }
        }
    }

    /// Inserts `end` directly before `reference`.
    fn add_ccw(&mut self, start: usize, end: usize, reference: Option<usize>) {
        match reference {
            None => {
                self.rotation[start].push(end);
                self.first[start] = end;
            }
            Some(r) => {
                let p = self.position(start, r);
                self.rotation[start].insert(p, end);
                if self.first[start] == r {
                    self.first[start] = end;
                }
            }
        }
    }

    fn add_first(&mut self, start: usize, end: usize) {
        let reference = (self.first[start] != NONE).then_some(self.first[start]);
        self.add_ccw(start, end, reference);
    }
}
