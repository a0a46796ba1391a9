//! Immutable simple graphs on dense `0..n` vertex labels.

mod generators;
mod io;

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub use generators::{
    gen_complete, gen_cycle, gen_path, gen_random_bipartite, gen_random_graph, gen_random_tree,
    gen_star, prufer_decode, SeededRng,
};
pub use io::{parse_edge_list, to_dot, to_edge_list};

/// Simple undirected graph. Neighbour lists are sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Where a vertex of a derived graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// An original vertex of the source graph.
    Vertex(usize),
    /// A vertex inserted on the given source edge.
    Edge(usize, usize),
}

/// Maps every vertex of a derived graph back to the source graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct VertexProvenance {
    origin: Vec<Origin>,
}

impl VertexProvenance {
    pub fn from_vertices(vertices: impl IntoIterator<Item = usize>) -> Self {
        Self {
            origin: vertices.into_iter().map(Origin::Vertex).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_vertices(0..n)
    }

    pub fn len(&self) -> usize {
        self.origin.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origin.is_empty()
    }

    pub fn origin(&self, v: usize) -> Origin {
        self.origin[v]
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origin
    }

    /// Source vertex of `v`, or `None` for inserted vertices.
    pub fn source_vertex(&self, v: usize) -> Option<usize> {
        match self.origin[v] {
            Origin::Vertex(s) => Some(s),
            Origin::Edge(..) => None,
        }
    }

    /// Provenance of `self` expressed against the source of `earlier`.
    pub fn compose(&self, earlier: &VertexProvenance) -> VertexProvenance {
        let origin = self
            .origin
            .iter()
            .map(|o| match *o {
                Origin::Vertex(v) => earlier.origin[v],
                Origin::Edge(a, b) => match (earlier.origin[a], earlier.origin[b]) {
                    (Origin::Vertex(x), Origin::Vertex(y)) => Origin::Edge(x, y),
                    _ => Origin::Edge(a, b),
                },
            })
            .collect();
        VertexProvenance { origin }
    }
}

/// Two-colouring with the edges between the classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteDecomposition {
    /// Class containing the lowest-labelled vertex of each component.
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    /// `|V1| × |V2|` biadjacency matrix over the sorted classes.
    pub s: Matrix<num_bigint::BigInt>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, w) in edges {
            for v in [u, w] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if u == w {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(w);
            adj[w].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(pair) = list.windows(2).find(|p| p[0] == p[1]) {
                return Err(Error::DuplicateEdge(u.min(pair[0]), u.max(pair[0])));
            }
        }
        Ok(Self {
            adj,
            m: edges.len(),
        })
    }

    /// Builds from neighbour lists already known to be valid.
    fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Self { adj, m }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&w).is_ok()
    }

    /// Edges as `(u, w)` with `u < w`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
    }

    /// Non-adjacent pairs `(u, w)`, `u < w`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&w| !self.has_edge(u, w))
                .map(move |w| (u, w))
        })
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.first_internal_edge(set).is_none()
    }

    /// Lexicographically first edge with both ends in `set`.
    pub fn first_internal_edge(&self, set: &[usize]) -> Option<(usize, usize)> {
        let mut member = vec![false; self.n()];
        for &v in set {
            member[v] = true;
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.iter().find_map(|&u| {
            self.adj[u]
                .iter()
                .find(|&&w| w > u && member[w])
                .map(|&w| (u, w))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Subgraph induced on `keep`, relabelled in ascending order of survivors.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<(Graph, VertexProvenance)> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut new_label = vec![usize::MAX; self.n()];
        for (i, &v) in sorted.iter().enumerate() {
            self.check_vertex(v)?;
            new_label[v] = i;
        }
        let adj = sorted
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| new_label[w] != usize::MAX)
                    .map(|&w| new_label[w])
                    .collect()
            })
            .collect();
        Ok((
            Graph::from_adjacency(adj),
            VertexProvenance::from_vertices(sorted),
        ))
    }

    pub fn delete_vertices(&self, removed: &[usize]) -> Result<(Graph, VertexProvenance)> {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<(Graph, VertexProvenance)> {
        self.delete_vertices(&[v])
    }

    pub fn add_edge(&self, u: usize, w: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(Error::SelfLoop(u));
        }
        if self.has_edge(u, w) {
            return Err(Error::EdgeExists(u.min(w), u.max(w)));
        }
        let mut adj = self.adj.clone();
        for (a, b) in [(u, w), (w, u)] {
            let pos = adj[a].binary_search(&b).unwrap_err();
            adj[a].insert(pos, b);
        }
        Ok(Graph { adj, m: self.m + 1 })
    }

    pub fn delete_edge(&self, u: usize, w: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(Error::SelfLoop(u));
        }
        if !self.has_edge(u, w) {
            return Err(Error::EdgeMissing(u.min(w), u.max(w)));
        }
        let mut adj = self.adj.clone();
        for (a, b) in [(u, w), (w, u)] {
            let pos = adj[a].binary_search(&b).unwrap();
            adj[a].remove(pos);
        }
        Ok(Graph { adj, m: self.m - 1 })
    }

    /// Inserts one new vertex on every edge. Original vertices keep labels
    /// `0..n`; the vertex on the `k`-th edge (lexicographic) gets `n + k`.
    pub fn subdivision(&self) -> Result<(Graph, VertexProvenance)> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let n = self.n();
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let mut adj = vec![Vec::new(); n + edges.len()];
        let mut origin: Vec<Origin> = (0..n).map(Origin::Vertex).collect();
        for (k, &(u, w)) in edges.iter().enumerate() {
            let x = n + k;
            adj[u].push(x);
            adj[w].push(x);
            adj[x] = vec![u, w];
            origin.push(Origin::Edge(u, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok((Graph::from_adjacency(adj), VertexProvenance { origin }))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph on zero vertices is not considered connected.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.m + 1 == self.n()
    }

    /// The unique cycle of a connected graph with `m = n`, starting at its
    /// minimum vertex and continuing towards the smaller of its two cycle
    /// neighbours.
    pub fn is_unicyclic(&self) -> Option<Vec<usize>> {
        if !self.is_connected() || self.m != self.n() {
            return None;
        }
        // strip leaves until only the cycle remains
        let mut deg: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        let mut alive = vec![true; self.n()];
        let mut stack: Vec<usize> = (0..self.n()).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = stack.pop() {
            alive[v] = false;
            for &w in &self.adj[v] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
        let start = (0..self.n()).find(|&v| alive[v])?;
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = *self.adj[start].iter().find(|&&w| alive[w])?;
        while cur != start {
            cycle.push(cur);
            let next = *self.adj[cur]
                .iter()
                .find(|&&w| alive[w] && w != prev)?;
            prev = cur;
            cur = next;
        }
        Some(cycle)
    }

    /// Proper two-colouring, or `None` if an odd cycle exists.
    pub fn is_bipartite(&self) -> Option<BipartiteDecomposition> {
        let colour = self.two_colouring()?;
        let v1: Vec<usize> = (0..self.n()).filter(|&v| !colour[v]).collect();
        let v2: Vec<usize> = (0..self.n()).filter(|&v| colour[v]).collect();
        let s = Matrix::from_fn(v1.len(), v2.len(), |i, j| {
            if self.has_edge(v1[i], v2[j]) {
                1.into()
            } else {
                0.into()
            }
        });
        Some(BipartiteDecomposition { v1, v2, s })
    }

    /// `false` marks the class of each component's lowest vertex.
    fn two_colouring(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &w in &self.adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    pub fn adjacency_matrix<T: Scalar>(&self) -> Matrix<T> {
        Matrix::from_fn(self.n(), self.n(), |i, j| {
            if self.has_edge(i, j) {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// `n × m` vertex–edge incidence matrix over lexicographically ordered edges.
    pub fn incidence_matrix<T: Scalar>(&self) -> Matrix<T> {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        Matrix::from_fn(self.n(), edges.len(), |v, k| {
            if edges[k].0 == v || edges[k].1 == v {
                T::one()
            } else {
                T::zero()
            }
        })
    }

    /// End vertices (degree one), ascending.
    pub fn end_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) == 1).collect()
    }
}
