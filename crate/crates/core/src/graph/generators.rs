//! Deterministic graph generators. Randomness comes from a splitmix64 stream
//! so identical `(n, seed)` inputs give identical graphs on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::Graph;
use crate::error::{Error, Result};

/// splitmix64 stream with an unbiased-enough multiply-shift range reduction.
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform value in `0..bound` via `(x * bound) >> 64`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    /// Uniform value in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as usize
    }

    /// `true` with probability `num / den`.
    pub fn bernoulli(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}

fn require_vertices(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

pub fn gen_path(n: usize) -> Result<Graph> {
    require_vertices(n)?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "a simple cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((0, n - 1));
    Graph::from_edges(n, &edges)
}

/// Star `K_{1,n-1}` on `n` vertices with centre 0.
pub fn gen_star(n: usize) -> Result<Graph> {
    require_vertices(n)?;
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    require_vertices(n)?;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
        .collect();
    Graph::from_edges(n, &edges)
}

/// Decodes a Prüfer sequence of length `n - 2` into a labelled tree on `n`
/// vertices, always joining the smallest current leaf.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<Graph> {
    require_vertices(n)?;
    if n == 1 {
        return Ok(Graph::empty(1));
    }
    if seq.len() != n - 2 || seq.iter().any(|&x| x >= n) {
        return Err(Error::InvalidArgument(format!(
            "Prüfer sequence for {n} vertices must have length {} with entries < {n}",
            n - 2
        )));
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let u = leaves.pop_first().unwrap();
    let w = leaves.pop_first().unwrap();
    edges.push((u, w));
    Graph::from_edges(n, &edges)
}

/// Uniform labelled tree on `n` vertices from a seeded Prüfer sequence.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    require_vertices(n)?;
    let mut rng = SeededRng::new(seed);
    let seq: Vec<usize> = (0..n.saturating_sub(2))
        .map(|_| rng.below(n as u64) as usize)
        .collect();
    prufer_decode(n, &seq)
}

/// Erdős–Rényi graph: each pair `(u, w)`, `u < w`, in lexicographic order is
/// an edge with probability `p_num / p_den`.
pub fn gen_random_graph(n: usize, p_num: u64, p_den: u64, seed: u64) -> Result<Graph> {
    require_vertices(n)?;
    if p_den == 0 || p_num > p_den {
        return Err(Error::InvalidArgument(format!(
            "edge probability {p_num}/{p_den} is not in [0, 1]"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for w in u + 1..n {
            if rng.bernoulli(p_num, p_den) {
                edges.push((u, w));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random bipartite graph with classes `0..n1` and `n1..n1+n2`.
pub fn gen_random_bipartite(n1: usize, n2: usize, p_num: u64, p_den: u64, seed: u64) -> Result<Graph> {
    require_vertices(n1 + n2)?;
    if p_den == 0 || p_num > p_den {
        return Err(Error::InvalidArgument(format!(
            "edge probability {p_num}/{p_den} is not in [0, 1]"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for w in n1..n1 + n2 {
            if rng.bernoulli(p_num, p_den) {
                edges.push((u, w));
            }
        }
    }
    Graph::from_edges(n1 + n2, &edges)
}
