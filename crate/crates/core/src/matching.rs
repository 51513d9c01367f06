//! Maximum matchings and minimum edge covers.

use std::collections::VecDeque;

/// Bipartite graph with `left` and `right` vertex counts. Adjacency lists are
/// kept sorted so augmenting searches are deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph { left, right, adj: vec![Vec::new(); left] }
    }

    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(left, right);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.left && v < self.right, "edge ({u}, {v}) out of range");
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
        }
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Matching {
    /// Matched `(left, right)` pairs, sorted by left vertex.
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Maximum bipartite matching by repeated augmenting paths.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    max_matching_without(g, None)
}

/// Maximum matching of `g` with left vertex `skip` deleted.
pub fn max_matching_without(g: &BipartiteGraph, skip: Option<usize>) -> Matching {
    let mut mate_right: Vec<Option<usize>> = vec![None; g.right];
    for u in 0..g.left {
        if Some(u) == skip {
            continue;
        }
        let mut seen = vec![false; g.right];
        augment(g, u, &mut seen, &mut mate_right);
    }
    let mut pairs: Vec<(usize, usize)> =
        mate_right.iter().enumerate().filter_map(|(v, m)| m.map(|u| (u, v))).collect();
    pairs.sort_unstable();
    Matching { pairs }
}

fn augment(g: &BipartiteGraph, u: usize, seen: &mut [bool], mate_right: &mut [Option<usize>]) -> bool {
    for &v in &g.adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if mate_right[v].is_none_or(|w| augment(g, w, seen, mate_right)) {
            mate_right[v] = Some(u);
            return true;
        }
    }
    false
}

/// True when deleting left vertex `u` lowers the maximum matching size.
pub fn is_critical_left(g: &BipartiteGraph, u: usize) -> bool {
    max_matching(g).len() > max_matching_without(g, Some(u)).len()
}

/// Undirected general graph given by an edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize) -> Self {
        Graph { vertices, edges: Vec::new() }
    }

    /// Adds an edge and returns its index. Self-loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(u != v && u < self.vertices && v < self.vertices, "bad edge ({u}, {v})");
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }
}

const NONE: usize = usize::MAX;

/// Maximum matching in a general graph (Edmonds' blossom algorithm).
/// Returns the mate of each vertex.
pub fn max_matching_general(g: &Graph) -> Vec<Option<usize>> {
    let mut b = Blossom::new(g.adjacency());
    for v in 0..g.vertices {
        if b.mate[v] == NONE {
            if let Some(mut w) = b.find_path(v) {
                while w != NONE {
                    let pv = b.parent[w];
                    let next = b.mate[pv];
                    b.mate[w] = pv;
                    b.mate[pv] = w;
                    w = next;
                }
            }
        }
    }
    b.mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl Blossom {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for k in 0..self.adj[v].len() {
                let to = self.adj[v][k];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    queue.push_back(m);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeCoverResult {
    /// Indices into the graph's edge list.
    pub edges: Vec<usize>,
    /// Vertices with no incident edge.
    pub isolated: Vec<usize>,
}

/// Minimum edge cover of the coverable vertices: a maximum matching, then
/// the lowest-index incident edge for each unmatched vertex.
pub fn min_edge_cover(g: &Graph) -> EdgeCoverResult {
    let mate = max_matching_general(g);
    let mut chosen = vec![false; g.edges.len()];
    let mut covered = vec![false; g.vertices];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if mate[u] == Some(v) && !covered[u] {
            chosen[i] = true;
            covered[u] = true;
            covered[v] = true;
        }
    }
    let mut first_edge = vec![None; g.vertices];
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        first_edge[u].get_or_insert(i);
        first_edge[v].get_or_insert(i);
    }
    let mut isolated = Vec::new();
    for v in 0..g.vertices {
        if covered[v] {
            continue;
        }
        match first_edge[v] {
            Some(i) => {
                chosen[i] = true;
                covered[v] = true;
            }
            None => isolated.push(v),
        }
    }
    EdgeCoverResult { edges: (0..g.edges.len()).filter(|&i| chosen[i]).collect(), isolated }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_bipartite() {
        assert!(max_matching(&BipartiteGraph::new(0, 0)).is_empty());
    }

    #[test]
    fn k23() {
        let edges: Vec<_> = (0..2).flat_map(|u| (0..3).map(move |v| (u, v))).collect();
        assert_eq!(max_matching(&BipartiteGraph::from_edges(2, 3, &edges)).len(), 2);
    }

    #[test]
    fn criticality() {
        // Lefts 0 and 2 compete for right 0; left 1 alone reaches right 1.
        let g = BipartiteGraph::from_edges(3, 2, &[(0, 0), (2, 0), (1, 1)]);
        assert!(!is_critical_left(&g, 0));
        assert!(is_critical_left(&g, 1));
    }

    #[test]
    fn odd_cycle_matching() {
        let mut g = Graph::new(5);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
        }
        assert_eq!(max_matching_general(&g).iter().flatten().count(), 4);
    }

    #[test]
    fn blossom_needed() {
        // Triangle 0-1-2 with tails 2-3 and 0-4... perfect matching of 6 exists.
        let mut g = Graph::new(6);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (2, 3), (0, 4), (1, 5)] {
            g.add_edge(u, v);
        }
        assert_eq!(max_matching_general(&g).iter().flatten().count(), 6);
    }

    #[test]
    fn edge_cover_examples() {
        let mut single = Graph::new(2);
        single.add_edge(0, 1);
        assert_eq!(min_edge_cover(&single), EdgeCoverResult { edges: vec![0], isolated: vec![] });
        let mut path = Graph::new(4);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        let c = min_edge_cover(&path);
        assert_eq!(c.edges.len(), 2);
        assert_eq!(c.isolated, vec![3]);
    }
}
