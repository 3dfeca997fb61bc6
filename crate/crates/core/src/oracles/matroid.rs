//! Union of `k` graphic matroids by augmenting paths.
//!
//! Edges are inserted one at a time. An edge whose endpoints are separated
//! in some forest goes straight in. Otherwise a breadth-first search runs
//! over the exchange graph: from an edge `g` and a forest `F_j` not holding
//! it, every edge on the `F_j`-path between `g`'s endpoints can be swapped
//! out for `g`. The search stops at the first edge that fits into a forest
//! where its endpoints are separated, and the shortest path found is
//! applied as a chain of swaps.
//!
//! A swap `F_j − f + g` with `f` on the cycle of `g` leaves the components
//! of `F_j` unchanged, so per-forest connectivity only ever merges and a
//! union-find per forest answers it.

use crate::graph::{QueryGraph, Vertex};

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Joins the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

const NONE: usize = usize::MAX;

/// `k` edge-disjoint forests grown by matroid-union augmentation.
pub struct ForestUnion {
    k: usize,
    edges: Vec<(Vertex, Vertex)>,
    /// Forest holding each edge, or `NONE`.
    home: Vec<usize>,
    /// Per forest, per vertex: `(neighbor, edge id)`.
    adjacency: Vec<Vec<Vec<(Vertex, usize)>>>,
    components: Vec<DisjointSets>,
    /// Vertex sets already spanned by all `k` forests; no further edge
    /// inside one of them can ever be covered.
    saturated: DisjointSets,
    covered: usize,
    // Scratch space reused across searches.
    label: Vec<usize>,
    labeled: Vec<usize>,
    seen: Vec<u32>,
    via: Vec<(Vertex, usize)>,
    stamp: u32,
}

impl ForestUnion {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(k >= 1, "need at least one forest");
        Self {
            k,
            edges: Vec::new(),
            home: Vec::new(),
            adjacency: vec![vec![Vec::new(); n]; k],
            components: vec![DisjointSets::new(n); k],
            saturated: DisjointSets::new(n),
            covered: 0,
            label: Vec::new(),
            labeled: Vec::new(),
            seen: vec![0; n],
            via: vec![(0, 0); n],
            stamp: 0,
        }
    }

    /// Number of edges covered so far.
    pub fn covered(&self) -> usize {
        self.covered
    }

    /// Forest index (0-based) of every inserted edge, `None` if uncovered.
    pub fn assignment(&self) -> impl Iterator<Item = ((Vertex, Vertex), Option<usize>)> + '_ {
        self.edges
            .iter()
            .zip(&self.home)
            .map(|(&e, &h)| (e, (h != NONE).then_some(h)))
    }

    /// Tries to cover `(u, v)`; returns whether the union grew.
    pub fn insert(&mut self, u: Vertex, v: Vertex) -> bool {
        let id = self.edges.len();
        self.edges.push((u, v));
        self.home.push(NONE);
        self.label.push(NONE);
        if self.saturated.same(u, v) {
            return false;
        }
        for i in 0..self.k {
            if !self.components[i].same(u, v) {
                self.place(id, i);
                self.components[i].union(u, v);
                self.covered += 1;
                return true;
            }
        }
        let found = self.search(id);
        let chain = found.map(|(h, forest)| {
            let mut chain = vec![h];
            while *chain.last().unwrap() != id {
                chain.push(self.label[*chain.last().unwrap()]);
            }
            (chain, forest)
        });
        for &e in &self.labeled {
            self.label[e] = NONE;
        }
        match chain {
            Some((chain, forest)) => {
                self.augment(&chain, forest);
                self.covered += 1;
                true
            }
            None => {
                for idx in 0..self.labeled.len() {
                    let (a, b) = self.edges[self.labeled[idx]];
                    self.saturated.union(a, b);
                }
                false
            }
        }
    }

    /// Breadth-first search of the exchange graph from `root`. Leaves the
    /// parent labels in `self.label` for the augmentation.
    fn search(&mut self, root: usize) -> Option<(usize, usize)> {
        self.labeled.clear();
        self.labeled.push(root);
        self.label[root] = root;
        let mut head = 0;
        let mut path = Vec::new();
        while head < self.labeled.len() {
            let g = self.labeled[head];
            head += 1;
            let (x, y) = self.edges[g];
            for j in 0..self.k {
                if self.home[g] == j {
                    continue;
                }
                if !self.components[j].same(x, y) {
                    return Some((g, j));
                }
                self.forest_path(j, x, y, &mut path);
                for &f in &path {
                    if self.label[f] == NONE {
                        self.label[f] = g;
                        self.labeled.push(f);
                    }
                }
            }
        }
        None
    }

    /// Applies a swap chain `h = chain[0], …, root`: `chain[0]` moves into
    /// `forest`, and each later edge takes the place its predecessor left.
    fn augment(&mut self, chain: &[usize], mut forest: usize) {
        let (x, y) = self.edges[chain[0]];
        self.components[forest].union(x, y);
        for &h in chain {
            let old = self.home[h];
            if old != NONE {
                self.unplace(h, old);
            }
            self.place(h, forest);
            forest = old;
        }
    }

    fn place(&mut self, id: usize, forest: usize) {
        let (u, v) = self.edges[id];
        self.home[id] = forest;
        self.adjacency[forest][u].push((v, id));
        self.adjacency[forest][v].push((u, id));
    }

    fn unplace(&mut self, id: usize, forest: usize) {
        let (u, v) = self.edges[id];
        for w in [u, v] {
            let list = &mut self.adjacency[forest][w];
            let pos = list.iter().position(|&(_, e)| e == id).expect("edge is in forest");
            list.swap_remove(pos);
        }
    }

    /// Edge ids on the path from `x` to `y` in forest `j`; they must be connected.
    fn forest_path(&mut self, j: usize, x: Vertex, y: Vertex, out: &mut Vec<usize>) {
        out.clear();
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        self.seen[x] = stamp;
        let mut queue = std::collections::VecDeque::from([x]);
        'bfs: while let Some(a) = queue.pop_front() {
            for &(b, e) in &self.adjacency[j][a] {
                if self.seen[b] != stamp {
                    self.seen[b] = stamp;
                    self.via[b] = (a, e);
                    if b == y {
                        break 'bfs;
                    }
                    queue.push_back(b);
                }
            }
        }
        let mut cur = y;
        while cur != x {
            let (prev, e) = self.via[cur];
            out.push(e);
            cur = prev;
        }
    }
}

/// Maximum number of edges coverable by `k` edge-disjoint forests.
pub fn max_forest_union(graph: &QueryGraph, k: usize) -> usize {
    assert!(k >= 1, "alpha must be at least 1");
    let mut union = ForestUnion::new(graph.n(), k);
    for (u, v) in graph.edges() {
        union.insert(u, v);
    }
    union.covered()
}

/// Whether `k` forests cover every edge; stops at the first failure.
pub fn covers_all(graph: &QueryGraph, k: usize) -> bool {
    let mut union = ForestUnion::new(graph.n(), k);
    graph.edges().all(|(u, v)| union.insert(u, v))
}
