//! Labeled trees: validation, generators, path queries, and line-graph blocks.
//!
//! Vertices are labeled `1..=n`. Edges keep the position they had in the input
//! sequence; edge `e_i` is stored at index `i - 1` for the lifetime of the tree,
//! since bases and row orders of the pair matrices depend on that order.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::collections::BinaryHeap;
use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::ExactMatrix;

pub type Vertex = usize;

/// Largest `n` accepted by [`enumerate_labeled_trees`].
pub const ENUMERATION_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree needs at least {min} vertices, got {n}")]
    SizeTooSmall { n: usize, min: usize },
    #[error("vertex label {label} outside 1..={n}")]
    BadLabel { label: usize, n: usize },
    #[error("pair needs two distinct vertices, got {{{0}, {0}}}")]
    RepeatedVertex(Vertex),
    #[error("expected {expected} edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("edge {{{0}, {1}}} closes a cycle")]
    CycleDetected(Vertex, Vertex),
    #[error("edge list does not connect all vertices")]
    DisconnectedInput,
    #[error("bad Pruefer sequence: {0}")]
    BadPruferSeq(String),
    #[error("tree has no internal vertex")]
    NoInternalVertex,
    #[error("exhaustive enumeration is capped at n = {cap}, got {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cannot parse edge list: {0}")]
    Parse(String),
}

pub type Result<T, E = TreeError> = std::result::Result<T, E>;

/// Unordered pair of distinct vertices, stored smaller label first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexPair {
    lo: Vertex,
    hi: Vertex,
}

impl VertexPair {
    pub fn new(i: Vertex, j: Vertex) -> Result<Self> {
        if i == j {
            return Err(TreeError::RepeatedVertex(i));
        }
        if i == 0 || j == 0 {
            return Err(TreeError::BadLabel { label: 0, n: i.max(j) });
        }
        Ok(VertexPair {
            lo: i.min(j),
            hi: i.max(j),
        })
    }

    pub fn lo(&self) -> Vertex {
        self.lo
    }

    pub fn hi(&self) -> Vertex {
        self.hi
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoints not shared by two edges meeting at a vertex.
    pub fn symmetric_difference(&self, other: &VertexPair) -> Option<VertexPair> {
        let shared = [self.lo, self.hi].into_iter().find(|&v| other.contains(v))?;
        let a = if self.lo == shared { self.hi } else { self.lo };
        let b = if other.lo == shared { other.hi } else { other.lo };
        VertexPair::new(a, b).ok()
    }

    /// CSV/JSON label `"i-j"`.
    pub fn label(&self) -> String {
        format!("{}-{}", self.lo, self.hi)
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// All pairs `{i,j}` of `1..=n` in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<VertexPair> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(VertexPair { lo: i, hi: j });
        }
    }
    out
}

/// Position of `p` in [`all_pairs`]`(n)`.
pub fn pair_position(n: usize, p: VertexPair) -> Option<usize> {
    if p.hi > n {
        return None;
    }
    let i = p.lo - 1;
    // pairs starting with 1..=i come first
    Some(i * (2 * n - i - 1) / 2 + (p.hi - p.lo - 1))
}

/// Set of edge indices, as a bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(edge_count: usize) -> Self {
        EdgeSet {
            words: vec![0; edge_count.div_ceil(64).max(1)],
        }
    }

    pub fn insert(&mut self, e: usize) {
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn contains(&self, e: usize) -> bool {
        self.words.get(e / 64).is_some_and(|w| w >> (e % 64) & 1 == 1)
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Size of the symmetric difference.
    pub fn hamming(&self, other: &EdgeSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// The clique of edges around one internal vertex, i.e. one block of the line graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineGraphBlock {
    pub center: Vertex,
    /// Edge indices (0-based), ascending.
    pub edges: Vec<usize>,
}

impl LineGraphBlock {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// A validated labeled tree. Immutable once built.
#[derive(Clone)]
pub struct Tree {
    n: usize,
    edges: Vec<VertexPair>,
    // adjacency[v] = (neighbor, edge index); index 0 unused
    adjacency: Vec<Vec<(Vertex, usize)>>,
    // rooted at vertex 1
    parent: Vec<Vertex>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
    distances: Vec<u32>,
}

impl Tree {
    /// Validates `edges` as a tree on `1..=n`.
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if n < 2 {
            return Err(TreeError::SizeTooSmall { n, min: 2 });
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            for label in [i, j] {
                if label == 0 || label > n {
                    return Err(TreeError::BadLabel { label, n });
                }
            }
            pairs.push(VertexPair::new(i, j)?);
        }
        if pairs.len() > n - 1 {
            return Err(TreeError::WrongEdgeCount {
                expected: n - 1,
                found: pairs.len(),
            });
        }
        let mut uf = UnionFind::new(n + 1);
        for p in &pairs {
            if !uf.union(p.lo, p.hi) {
                return Err(TreeError::CycleDetected(p.lo, p.hi));
            }
        }
        if pairs.len() < n - 1 {
            return Err(TreeError::DisconnectedInput);
        }
        Ok(Self::from_valid_edges(n, pairs))
    }

    fn from_valid_edges(n: usize, edges: Vec<VertexPair>) -> Self {
        let mut adjacency = vec![Vec::new(); n + 1];
        for (idx, e) in edges.iter().enumerate() {
            adjacency[e.lo].push((e.hi, idx));
            adjacency[e.hi].push((e.lo, idx));
        }
        let mut parent = vec![0; n + 1];
        let mut parent_edge = vec![usize::MAX; n + 1];
        let mut depth = vec![0; n + 1];
        let mut order = vec![1];
        let mut seen = vec![false; n + 1];
        seen[1] = true;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &(w, e) in &adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = u;
                    parent_edge[w] = e;
                    depth[w] = depth[u] + 1;
                    order.push(w);
                }
            }
        }
        let mut tree = Tree {
            n,
            edges,
            adjacency,
            parent,
            parent_edge,
            depth,
            distances: Vec::new(),
        };
        tree.distances = (1..=n).flat_map(|s| tree.bfs_from(s)).collect();
        tree
    }

    fn bfs_from(&self, source: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n];
        dist[source - 1] = 0;
        let mut queue = vec![source];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &(w, _) in &self.adjacency[u] {
                if dist[w - 1] == u32::MAX {
                    dist[w - 1] = dist[u - 1] + 1;
                    queue.push(w);
                }
            }
        }
        dist
    }

    /// Parses the edge-list text format: `n` on the first line, then `n - 1`
    /// lines `i j`. Blank lines and `#` comments are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| TreeError::Parse("empty input".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| TreeError::Parse(format!("bad vertex count {header:?}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let nums: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = nums.as_slice() else {
                return Err(TreeError::Parse(format!("expected `i j`, got {line:?}")));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| TreeError::Parse(format!("bad label {s:?}")))
            };
            edges.push((parse(a)?, parse(b)?));
        }
        Tree::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for e in &self.edges {
            s.push_str(&format!("{} {}\n", e.lo, e.hi));
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `e_{idx+1}`.
    pub fn edge(&self, idx: usize) -> VertexPair {
        self.edges[idx]
    }

    pub fn edges(&self) -> &[VertexPair] {
        &self.edges
    }

    pub fn edge_index(&self, p: VertexPair) -> Option<usize> {
        self.edges.iter().position(|&e| e == p)
    }

    pub fn is_edge(&self, p: VertexPair) -> bool {
        self.edge_index(p).is_some()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n {
            Err(TreeError::BadLabel { label: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_pair(&self, p: VertexPair) -> Result<()> {
        self.check_vertex(p.hi)
    }

    /// Tree distance `d(i, j)`.
    pub fn distance(&self, i: Vertex, j: Vertex) -> u32 {
        self.distances[(i - 1) * self.n + (j - 1)]
    }

    pub fn pair_distance(&self, p: VertexPair) -> u32 {
        self.distance(p.lo, p.hi)
    }

    /// The `n x n` distance matrix.
    pub fn distance_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, self.n, |i, j| {
            BigRational::from_integer(self.distances[i * self.n + j].into())
        })
    }

    /// Indices of the edges on the unique path between the two vertices of `p`.
    pub fn path_edge_set(&self, p: VertexPair) -> EdgeSet {
        let mut set = EdgeSet::empty(self.edge_count());
        let (mut a, mut b) = (p.lo, p.hi);
        while self.depth[a] > self.depth[b] {
            set.insert(self.parent_edge[a]);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            set.insert(self.parent_edge[b]);
            b = self.parent[b];
        }
        while a != b {
            set.insert(self.parent_edge[a]);
            set.insert(self.parent_edge[b]);
            a = self.parent[a];
            b = self.parent[b];
        }
        set
    }

    pub fn leaves(&self) -> Vec<Vertex> {
        (1..=self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn leaf_count(&self) -> usize {
        (1..=self.n).filter(|&v| self.degree(v) == 1).count()
    }

    pub fn is_pendant_edge(&self, idx: usize) -> bool {
        let e = self.edges[idx];
        self.degree(e.lo) == 1 || self.degree(e.hi) == 1
    }

    /// One block per internal vertex, ordered by vertex label.
    pub fn line_graph_blocks(&self) -> Result<Vec<LineGraphBlock>> {
        let blocks: Vec<LineGraphBlock> = (1..=self.n)
            .filter(|&v| self.degree(v) >= 2)
            .map(|v| {
                let mut edges: Vec<usize> = self.adjacency[v].iter().map(|&(_, e)| e).collect();
                edges.sort_unstable();
                LineGraphBlock { center: v, edges }
            })
            .collect();
        if blocks.is_empty() {
            return Err(TreeError::NoInternalVertex);
        }
        Ok(blocks)
    }

    /// Canonical edge set, for comparing trees irrespective of edge order.
    pub fn edge_set(&self) -> BTreeSet<VertexPair> {
        self.edges.iter().copied().collect()
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Tree families the generators know about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path(usize),
    Star(usize),
    /// `S_{1,n-3}`: `v_0 - v_1 - v_2` with `n - 3` leaves on `v_2`.
    Bistar(usize),
    Prufer(Vec<Vertex>),
    Random {
        n: usize,
        seed: u64,
    },
}

impl Family {
    pub fn generate(&self) -> Result<Tree> {
        match *self {
            Family::Path(n) => path(n),
            Family::Star(n) => star(n),
            Family::Bistar(n) => bistar(n),
            Family::Prufer(ref seq) => prufer_decode(seq, seq.len() + 2),
            Family::Random { n, seed } => random_tree(n, seed),
        }
    }
}

/// `P_n` with `e_i = {i, i+1}`.
pub fn path(n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(TreeError::SizeTooSmall { n, min: 2 });
    }
    Tree::new(n, &(1..n).map(|i| (i, i + 1)).collect::<Vec<_>>())
}

/// `S_n` with center 1 and `e_i = {1, i+1}`.
pub fn star(n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(TreeError::SizeTooSmall { n, min: 2 });
    }
    Tree::new(n, &(2..=n).map(|i| (1, i)).collect::<Vec<_>>())
}

/// Label of bi-star vertex `v_k`.
pub fn bistar_label(k: usize) -> Vertex {
    k + 1
}

/// `S_{1,n-3}`: `e_1 = {v_0,v_1}`, `e_2 = {v_1,v_2}`, `e_i = {v_2,v_i}` for
/// `3 <= i <= n-1`, with `v_k` labeled `k + 1`.
pub fn bistar(n: usize) -> Result<Tree> {
    if n < 4 {
        return Err(TreeError::SizeTooSmall { n, min: 4 });
    }
    let v = bistar_label;
    let mut edges = vec![(v(0), v(1)), (v(1), v(2))];
    edges.extend((3..n).map(|i| (v(2), v(i))));
    Tree::new(n, &edges)
}

/// Standard Pruefer decoding; edges come out in decoding order.
pub fn prufer_decode(seq: &[Vertex], n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(TreeError::SizeTooSmall { n, min: 2 });
    }
    if seq.len() != n - 2 {
        return Err(TreeError::BadPruferSeq(format!(
            "length {} but n - 2 = {}",
            seq.len(),
            n - 2
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&a| a == 0 || a > n) {
        return Err(TreeError::BadPruferSeq(format!("label {bad} outside 1..={n}")));
    }
    let mut degree = vec![1usize; n + 1];
    for &a in seq {
        degree[a] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> = (1..=n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, a));
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().expect("two vertices remain");
    let Reverse(w) = leaves.pop().expect("two vertices remain");
    edges.push((u, w));
    Tree::new(n, &edges)
}

/// Uniform labeled tree from a seeded Pruefer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree> {
    if n < 2 {
        return Err(TreeError::SizeTooSmall { n, min: 2 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    prufer_decode(&seq, n)
}

/// Every labeled tree on `n` vertices, via Pruefer sequences in lexicographic order.
pub fn enumerate_labeled_trees(n: usize) -> Result<LabeledTrees> {
    if n < 2 {
        return Err(TreeError::SizeTooSmall { n, min: 2 });
    }
    if n > ENUMERATION_CAP {
        return Err(TreeError::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(LabeledTrees {
        n,
        seq: vec![1; n - 2],
        done: false,
    })
}

/// Iterator returned by [`enumerate_labeled_trees`].
#[derive(Debug, Clone)]
pub struct LabeledTrees {
    n: usize,
    seq: Vec<Vertex>,
    done: bool,
}

impl LabeledTrees {
    /// Total count `n^(n-2)`.
    pub fn total(&self) -> usize {
        self.n.pow((self.n - 2) as u32)
    }
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = prufer_decode(&self.seq, self.n).expect("odometer keeps labels in range");
        // advance the odometer
        let mut pos = self.seq.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.seq[pos] < self.n {
                self.seq[pos] += 1;
                break;
            }
            self.seq[pos] = 1;
        }
        Some(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn pair(i: usize, j: usize) -> VertexPair {
        VertexPair::new(i, j).unwrap()
    }

    pub(crate) fn five_vertex_tree() -> Tree {
        Tree::new(5, &[(1, 2), (2, 4), (2, 3), (4, 5)]).unwrap()
    }

    #[test]
    fn smallest_tree() {
        let t = Tree::new(2, &[(1, 2)]).unwrap();
        assert_eq!(t.edge_count(), 1);
        assert_eq!(t.leaves(), vec![1, 2]);
        assert_eq!(t.line_graph_blocks().unwrap_err(), TreeError::NoInternalVertex);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Tree::new(4, &[(1, 2), (3, 4)]).unwrap_err(),
            TreeError::DisconnectedInput
        );
        assert_eq!(
            Tree::new(3, &[(1, 2), (2, 1)]).unwrap_err(),
            TreeError::CycleDetected(1, 2)
        );
        assert_eq!(
            Tree::new(3, &[(1, 2), (2, 3), (1, 3)]).unwrap_err(),
            TreeError::WrongEdgeCount { expected: 2, found: 3 }
        );
        assert_eq!(
            Tree::new(3, &[(1, 2), (2, 4)]).unwrap_err(),
            TreeError::BadLabel { label: 4, n: 3 }
        );
        assert_eq!(
            Tree::new(3, &[(1, 1), (2, 3)]).unwrap_err(),
            TreeError::RepeatedVertex(1)
        );
        assert_eq!(Tree::new(1, &[]).unwrap_err(), TreeError::SizeTooSmall { n: 1, min: 2 });
        assert_eq!(
            Tree::new(5, &[(1, 2), (2, 3), (3, 1), (4, 5)]).unwrap_err(),
            TreeError::CycleDetected(1, 3)
        );
    }

    #[test]
    fn five_vertex_tree_paths() {
        let t = five_vertex_tree();
        assert_eq!(t.path_edge_set(pair(1, 4)).iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(t.path_edge_set(pair(3, 5)).iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(t.distance(1, 5), 3);
        assert_eq!(t.path_edge_set(pair(1, 5)).iter().collect::<Vec<_>>(), vec![0, 1, 3]);
        for (idx, &e) in t.edges().iter().enumerate() {
            assert_eq!(t.path_edge_set(e).iter().collect::<Vec<_>>(), vec![idx]);
        }
    }

    #[test]
    fn families() {
        let s = star(4).unwrap();
        assert_eq!(s.edges(), &[pair(1, 2), pair(1, 3), pair(1, 4)]);
        assert_eq!(path(3).unwrap().distance(1, 3), 2);
        for i in 2..=6 {
            for j in i + 1..=6 {
                assert_eq!(star(6).unwrap().distance(i, j), 2);
            }
        }
        let b = bistar(6).unwrap();
        assert_eq!(b.edges(), &[pair(1, 2), pair(2, 3), pair(3, 4), pair(3, 5), pair(3, 6)]);
        assert_eq!(b.leaf_count(), 4);
        assert!(matches!(bistar(3), Err(TreeError::SizeTooSmall { .. })));
    }

    #[test]
    fn path_and_star_on_three_vertices_are_isomorphic() {
        // both have one vertex of degree 2 and two leaves
        for t in [path(3).unwrap(), star(3).unwrap()] {
            let mut degs: Vec<usize> = (1..=3).map(|v| t.degree(v)).collect();
            degs.sort();
            assert_eq!(degs, vec![1, 1, 2]);
        }
    }

    #[test]
    fn leaves_of_families() {
        for n in 2..10 {
            assert_eq!(path(n).unwrap().leaf_count(), 2);
        }
        for n in 3..10 {
            assert_eq!(star(n).unwrap().leaf_count(), n - 1);
        }
        for n in 5..10 {
            assert_eq!(bistar(n).unwrap().leaf_count(), n - 2);
        }
    }

    #[test]
    fn blocks_of_families() {
        let b = star(7).unwrap().line_graph_blocks().unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].size(), 6);
        let p = path(7).unwrap().line_graph_blocks().unwrap();
        assert_eq!(p.len(), 5);
        assert!(p.iter().all(|b| b.size() == 2));
        assert_eq!(p.iter().map(|b| b.center).collect::<Vec<_>>(), vec![2, 3, 4, 5, 6]);
        let bs = bistar(7).unwrap().line_graph_blocks().unwrap();
        assert_eq!(bs.iter().map(|b| b.size()).collect::<Vec<_>>(), vec![2, 5]);
    }

    /// Independent decoder: repeatedly strip the smallest leaf by scanning.
    fn naive_prufer(seq: &[usize], n: usize) -> BTreeSet<VertexPair> {
        let mut alive: Vec<bool> = vec![true; n + 1];
        let mut rest = seq.to_vec();
        let mut out = BTreeSet::new();
        for _ in 0..seq.len() {
            let leaf = (1..=n).find(|&v| alive[v] && !rest.contains(&v)).unwrap();
            out.insert(pair(leaf, rest[0]));
            alive[leaf] = false;
            rest.remove(0);
        }
        let remaining: Vec<usize> = (1..=n).filter(|&v| alive[v]).collect();
        out.insert(pair(remaining[0], remaining[1]));
        out
    }

    #[test]
    fn prufer_star_center_two() {
        let t = prufer_decode(&[2, 2], 4).unwrap();
        assert_eq!(t.degree(2), 3);
        assert_eq!(t.edge_set(), naive_prufer(&[2, 2], 4));
        assert!(matches!(prufer_decode(&[2], 4), Err(TreeError::BadPruferSeq(_))));
        assert!(matches!(prufer_decode(&[5, 1], 4), Err(TreeError::BadPruferSeq(_))));
    }

    #[test]
    fn prufer_matches_naive_decoder() {
        for n in 3..=6 {
            for t_seq in enumerate_sequences(n) {
                let t = prufer_decode(&t_seq, n).unwrap();
                assert_eq!(t.edge_set(), naive_prufer(&t_seq, n));
            }
        }
    }

    fn enumerate_sequences(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n - 2 {
            out = out
                .into_iter()
                .flat_map(|s| {
                    (1..=n).map(move |a| {
                        let mut s = s.clone();
                        s.push(a);
                        s
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn enumeration_counts() {
        for (n, count) in [(2, 1), (3, 3), (4, 16), (5, 125), (6, 1296)] {
            let it = enumerate_labeled_trees(n).unwrap();
            assert_eq!(it.total(), count);
            let sets: HashSet<BTreeSet<VertexPair>> = it.map(|t| t.edge_set()).collect();
            assert_eq!(sets.len(), count);
        }
        assert_eq!(
            enumerate_labeled_trees(9).unwrap_err(),
            TreeError::CapExceeded { n: 9, cap: 8 }
        );
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_tree(12, 42).unwrap();
        let b = random_tree(12, 42).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.edge_count(), 11);
    }

    #[test]
    fn parse_round_trip() {
        let t = five_vertex_tree();
        let back = Tree::parse_edge_list(&t.to_edge_list()).unwrap();
        assert_eq!(back.edges(), t.edges());
        assert!(matches!(Tree::parse_edge_list("3\n1 2 3\n"), Err(TreeError::Parse(_))));
        assert!(matches!(Tree::parse_edge_list(""), Err(TreeError::Parse(_))));
        let commented = "# fig\n3\n1 2\n\n2 3 # tail\n";
        assert_eq!(Tree::parse_edge_list(commented).unwrap().edge_count(), 2);
    }

    #[test]
    fn pair_positions_are_lexicographic() {
        for n in 2..9 {
            for (idx, p) in all_pairs(n).into_iter().enumerate() {
                assert_eq!(pair_position(n, p), Some(idx));
            }
        }
        assert_eq!(pair_position(3, pair(2, 4)), None);
    }

    #[test]
    fn path_lengths_and_four_point_condition() {
        for n in 2..=7 {
            for t in enumerate_labeled_trees(n).unwrap() {
                for p in all_pairs(n) {
                    assert_eq!(t.path_edge_set(p).len() as u32, t.pair_distance(p));
                }
                let d = |a, b| t.distance(a, b);
                for i in 1..=n {
                    for j in 1..=n {
                        for k in 1..=n {
                            for l in 1..=n {
                                let mut s = [d(i, l) + d(j, k), d(i, k) + d(j, l), d(i, j) + d(k, l)];
                                s.sort();
                                assert_eq!(s[1], s[2]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn four_point_condition_random_n9() {
        for seed in 0..50 {
            let t = random_tree(9, seed).unwrap();
            let d = |a, b| t.distance(a, b);
            for i in 1..=9 {
                for j in 1..=9 {
                    for k in 1..=9 {
                        for l in 1..=9 {
                            let mut s = [d(i, l) + d(j, k), d(i, k) + d(j, l), d(i, j) + d(k, l)];
                            s.sort();
                            assert_eq!(s[1], s[2]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn block_sizes_sum_to_internal_degrees() {
        for n in 3..=7 {
            for t in enumerate_labeled_trees(n).unwrap() {
                let blocks = t.line_graph_blocks().unwrap();
                assert_eq!(blocks.len(), n - t.leaf_count());
                let total: usize = blocks.iter().map(|b| b.size()).sum();
                let internal: usize = (1..=n).filter(|&v| t.degree(v) >= 2).map(|v| t.degree(v)).sum();
                assert_eq!(total, internal);
                assert!(blocks.iter().all(|b| b.size() >= 2));
            }
        }
    }
}
