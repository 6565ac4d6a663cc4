//! Simple undirected graphs: parsing, simple-cycle enumeration, chords and
//! cycle intersections.
//!
//! Vertices and edges carry dense indices. Edges are sorted by
//! `(min endpoint, max endpoint)` so that edge indices, and everything derived
//! from them (crossing-change variables, equation constants), are stable
//! across runs.

use std::collections::HashMap;

use thiserror::Error;

use crate::bits::BitSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected two vertex labels, got {text:?}")]
    Unparsable { line: usize, text: String },
    #[error("line {line}: loop at vertex {label:?}")]
    Loop { line: usize, label: String },
    #[error("line {line}: duplicate edge {u:?}-{v:?}")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("loop at vertex {0}")]
    LoopIndex(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateIndex(usize, usize),
    #[error("adjacency matrix: {0}")]
    Matrix(String),
}

/// A finite simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Sorted `(neighbor, edge index)` lists.
    adj: Vec<Vec<(usize, usize)>>,
    labels: Vec<String>,
}

impl Graph {
    /// Builds a graph on vertices `0..n`. Endpoint order within an edge is
    /// irrelevant; edge indices are assigned after sorting.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::LoopIndex(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateIndex(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for (i, &(u, v)) in list.iter().enumerate() {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            labels: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = labels;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `(neighbor, edge index)` pairs, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let a = &self.adj[u];
        a.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| a[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    pub fn edges_adjacent(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    /// SHA-256 over the dense edge list; identifies the graph a certificate
    /// was computed for.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(format!("{}\n", self.n));
        for &(u, v) in &self.edges {
            h.update(format!("{u} {v}\n"));
        }
        hex::encode(h.finalize())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = match l.find('#') {
            Some(p) => &l[..p],
            None => l,
        }
        .trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses whitespace-separated edge-list text.
///
/// Labels that are all non-negative integers are indexed in numeric order;
/// otherwise labels are indexed in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut raw = Vec::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(GraphError::Unparsable { line, text: l.to_string() });
        }
        if toks[0] == toks[1] {
            return Err(GraphError::Loop { line, label: toks[0].to_string() });
        }
        raw.push((line, toks[0], toks[1]));
    }

    let mut order: Vec<&str> = Vec::new();
    let mut seen = HashMap::new();
    for &(_, a, b) in &raw {
        for t in [a, b] {
            if !seen.contains_key(t) {
                seen.insert(t, order.len());
                order.push(t);
            }
        }
    }
    if order.iter().all(|t| t.parse::<u64>().is_ok()) {
        order.sort_by_key(|t| t.parse::<u64>().unwrap());
    }
    let index: HashMap<&str, usize> = order.iter().enumerate().map(|(i, &t)| (t, i)).collect();

    let mut pairs = HashMap::new();
    let mut edges = Vec::with_capacity(raw.len());
    for &(line, a, b) in &raw {
        let (u, v) = (index[a], index[b]);
        let key = (u.min(v), u.max(v));
        if pairs.insert(key, line).is_some() {
            return Err(GraphError::DuplicateEdge { line, u: a.to_string(), v: b.to_string() });
        }
        edges.push(key);
    }
    let labels = order.iter().map(|s| s.to_string()).collect();
    Ok(Graph::new(order.len(), edges)?.with_labels(labels))
}

/// Parses `n` lines of `n` characters in `{0,1}` (whitespace between
/// characters is ignored).
pub fn parse_adjacency_matrix(text: &str) -> Result<Graph, GraphError> {
    let rows: Vec<(usize, Vec<u8>)> = content_lines(text)
        .map(|(line, l)| (line, l.bytes().filter(|c| !c.is_ascii_whitespace()).collect()))
        .collect();
    let n = rows.len();
    let mut edges = Vec::new();
    for (i, (line, row)) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(GraphError::Matrix(format!("line {line}: expected {n} entries, got {}", row.len())));
        }
        for (j, &c) in row.iter().enumerate() {
            let bit = match c {
                b'0' => false,
                b'1' => true,
                _ => return Err(GraphError::Matrix(format!("line {line}: invalid character {:?}", c as char))),
            };
            let mirror = rows[j].1.get(i).copied() == Some(b'1');
            if bit != mirror {
                return Err(GraphError::Matrix(format!("not symmetric at ({i}, {j})")));
            }
            if bit && i == j {
                return Err(GraphError::LoopIndex(i));
            }
            if bit && i < j {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges)
}

/// Heuristic format detection: a matrix has only `0`/`1` rows whose length
/// (ignoring whitespace) equals the number of rows.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let rows: Vec<String> = content_lines(text)
        .map(|(_, l)| l.chars().filter(|c| !c.is_whitespace()).collect())
        .collect();
    let looks_like_matrix = rows.len() > 2
        && rows.iter().all(|r| r.len() == rows.len() && r.bytes().all(|c| c == b'0' || c == b'1'));
    if looks_like_matrix {
        parse_adjacency_matrix(text)
    } else {
        parse_edge_list(text)
    }
}

/// A simple cycle with its canonical traversal.
///
/// `vertices` starts at the cycle's minimum vertex and continues toward the
/// smaller of its two cycle neighbors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub id: usize,
    pub vertices: Vec<usize>,
    /// Edge indices paired with `+1` when the traversal runs from the lower
    /// to the higher endpoint and `-1` otherwise; sorted by edge index.
    pub edge_signs: Vec<(usize, i8)>,
    pub vertex_mask: BitSet,
    pub edge_mask: BitSet,
}

impl Cycle {
    /// Builds a cycle from a closed vertex walk, canonicalizing rotation and
    /// direction. Returns `None` if the walk is not a simple cycle of `g`.
    pub fn from_vertices(g: &Graph, walk: &[usize]) -> Option<Cycle> {
        let k = walk.len();
        if k < 3 {
            return None;
        }
        let mut mask = BitSet::new(g.vertex_count());
        for &v in walk {
            if v >= g.vertex_count() || mask.contains(v) {
                return None;
            }
            mask.insert(v);
        }
        let start = (0..k).min_by_key(|&i| walk[i]).unwrap();
        let next = walk[(start + 1) % k];
        let prev = walk[(start + k - 1) % k];
        let seq: Vec<usize> = if next < prev {
            (0..k).map(|i| walk[(start + i) % k]).collect()
        } else {
            (0..k).map(|i| walk[(start + k - i) % k]).collect()
        };
        Self::from_canonical(g, seq, 0)
    }

    fn from_canonical(g: &Graph, vertices: Vec<usize>, id: usize) -> Option<Cycle> {
        let k = vertices.len();
        let mut edge_signs = Vec::with_capacity(k);
        let mut edge_mask = BitSet::new(g.edge_count());
        let mut vertex_mask = BitSet::new(g.vertex_count());
        for i in 0..k {
            let (u, v) = (vertices[i], vertices[(i + 1) % k]);
            let e = g.edge_between(u, v)?;
            edge_signs.push((e, if u < v { 1 } else { -1 }));
            edge_mask.insert(e);
            vertex_mask.insert(u);
        }
        edge_signs.sort_unstable();
        Some(Cycle { id, vertices, edge_signs, vertex_mask, edge_mask })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edge_signs.iter().map(|&(e, _)| e)
    }

    pub fn is_disjoint(&self, other: &Cycle) -> bool {
        !self.vertex_mask.intersects(&other.vertex_mask)
    }
}

/// All simple cycles of `g`, sorted by `(length, vertex sequence)` with ids
/// assigned in that order.
pub fn enumerate_cycles(g: &Graph) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::new();

    fn extend(
        g: &Graph,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        found: &mut Vec<Vec<usize>>,
    ) {
        let v = *path.last().unwrap();
        for &(w, _) in g.neighbors(v) {
            if w == start {
                // each cycle is reported once: its second vertex is smaller than its last
                if path.len() >= 3 && path[1] < v {
                    found.push(path.clone());
                }
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                extend(g, start, path, on_path, found);
                path.pop();
                on_path[w] = false;
            }
        }
    }

    for s in 0..n {
        on_path[s] = true;
        path.push(s);
        extend(g, s, &mut path, &mut on_path, &mut found);
        path.pop();
        on_path[s] = false;
    }

    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .enumerate()
        .map(|(id, seq)| Cycle::from_canonical(g, seq, id).expect("walk follows graph edges"))
        .collect()
}

/// True iff no edge of `g` joins two vertices of `c` without lying on `c`.
pub fn is_chordless(g: &Graph, c: &Cycle) -> bool {
    c.vertices.iter().all(|&v| {
        g.neighbors(v)
            .iter()
            .all(|&(w, e)| !c.vertex_mask.contains(w) || c.edge_mask.contains(e))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntersectionClass {
    Empty,
    NonemptyConnected,
    NonemptyDisconnected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intersection {
    pub class: IntersectionClass,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Classifies the shared subgraph of two cycles.
pub fn intersection_class(a: &Cycle, b: &Cycle) -> IntersectionClass {
    let nv = a.vertex_mask.intersection_count(&b.vertex_mask);
    if nv == 0 {
        return IntersectionClass::Empty;
    }
    // the shared subgraph of two distinct cycles is a forest
    let ne = a.edge_mask.intersection_count(&b.edge_mask);
    if nv == ne + 1 {
        IntersectionClass::NonemptyConnected
    } else {
        IntersectionClass::NonemptyDisconnected
    }
}

pub fn cycle_intersection(a: &Cycle, b: &Cycle) -> Intersection {
    Intersection {
        class: intersection_class(a, b),
        vertices: a.vertex_mask.intersection(&b.vertex_mask).iter().collect(),
        edges: a.edge_mask.intersection(&b.edge_mask).iter().collect(),
    }
}

/// The crossing-change variables: unordered pairs of vertex-disjoint edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePairs {
    pairs: Vec<(usize, usize)>,
    m: usize,
    index: HashMap<(usize, usize), usize>,
}

impl EdgePairs {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Variable index of the pair `{k, l}` (either order).
    pub fn index_of(&self, k: usize, l: usize) -> Option<usize> {
        self.index.get(&(k.min(l), k.max(l))).copied()
    }
}

/// All unordered pairs of nonadjacent edges `(k, l)`, `k < l`, in
/// lexicographic order.
pub fn nonadjacent_edge_pairs(g: &Graph) -> EdgePairs {
    let m = g.edge_count();
    let mut pairs = Vec::new();
    for k in 0..m {
        for l in k + 1..m {
            if !g.edges_adjacent(k, l) {
                pairs.push((k, l));
            }
        }
    }
    let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    EdgePairs { pairs, m, index }
}
