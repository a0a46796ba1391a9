//! Tree machinery: pendant-pair reduction, matching number, subdivision
//! recognition and the rank identities that hold for trees.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::analysis::{classify_vertices, core_split, nullity, CoreLabelling};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexProvenance};
use crate::minimal_config::is_minimal_configuration;

/// Record of repeatedly deleting an end vertex together with its neighbour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    /// `(end_vertex, unique_neighbour)` in removal order.
    pub steps: Vec<(usize, usize)>,
    /// Vertices left isolated once no edge remains.
    #[serde(rename = "isolated")]
    pub isolated_remainder: Vec<usize>,
    /// Matching number: the removed pairs form a maximum matching.
    pub t: usize,
}

fn require_tree(g: &Graph) -> Result<()> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(Error::NotATree)
    }
}

/// Pendant-pair reduction of a forest, always taking the lowest-labelled end
/// vertex of the current forest.
pub fn pendant_reduction(g: &Graph) -> Result<ReductionTrace> {
    if !g.is_forest() {
        return Err(Error::HasCycle);
    }
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut steps = Vec::new();
    while let Some(w) = leaves.pop_first() {
        let u = *g
            .neighbours(w)
            .iter()
            .find(|&&x| alive[x])
            .expect("an end vertex has one live neighbour");
        alive[w] = false;
        alive[u] = false;
        leaves.remove(&u);
        for &x in g.neighbours(u) {
            if !alive[x] {
                continue;
            }
            degree[x] -= 1;
            match degree[x] {
                1 => {
                    leaves.insert(x);
                }
                0 => {
                    leaves.remove(&x);
                }
                _ => {}
            }
        }
        steps.push((w, u));
    }
    let isolated_remainder = (0..n).filter(|&v| alive[v]).collect();
    let t = steps.len();
    Ok(ReductionTrace {
        steps,
        isolated_remainder,
        t,
    })
}

/// Maximum matching size of a forest.
pub fn matching_number(g: &Graph) -> Result<usize> {
    Ok(pendant_reduction(g)?.t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNullityIdentity {
    pub by_reduction: usize,
    pub by_rank: usize,
    pub n_minus_2t: usize,
    pub all_equal: bool,
}

/// Nullity of a tree three ways: isolated vertices left by pendant
/// reduction, exact rank, and `n − 2t`.
pub fn tree_nullity_identity(g: &Graph) -> Result<TreeNullityIdentity> {
    require_tree(g)?;
    let trace = pendant_reduction(g)?;
    let by_reduction = trace.isolated_remainder.len();
    let by_rank = nullity(g);
    let n_minus_2t = g.n() - 2 * trace.t;
    Ok(TreeNullityIdentity {
        by_reduction,
        by_rank,
        n_minus_2t,
        all_equal: by_reduction == by_rank && by_rank == n_minus_2t,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndVertexCores {
    pub vertices: Vec<usize>,
    pub non_singular: bool,
}

/// End vertices that are core vertices. Non-singular trees give an empty
/// list with `non_singular` set.
pub fn end_vertex_core_vertices(g: &Graph) -> Result<EndVertexCores> {
    require_tree(g)?;
    let (kernel, split) = core_split(g);
    if kernel.is_empty() {
        return Ok(EndVertexCores {
            vertices: Vec::new(),
            non_singular: true,
        });
    }
    let vertices = g
        .end_vertices()
        .into_iter()
        .filter(|v| split.cv.binary_search(v).is_ok())
        .collect();
    Ok(EndVertexCores {
        vertices,
        non_singular: false,
    })
}

/// Perfect matching of the forest induced on the remote core-forbidden
/// vertices, in original labels, or `None` if that forest has none.
pub fn cfvr_perfect_matching(g: &Graph) -> Result<Option<Vec<(usize, usize)>>> {
    require_tree(g)?;
    let (_, split) = core_split(g);
    let (forest, prov) = g.induced_subgraph(&split.cfvr)?;
    let trace = pendant_reduction(&forest)?;
    if !trace.isolated_remainder.is_empty() {
        return Ok(None);
    }
    let back = |v: usize| prov.source_vertex(v).expect("induced subgraph");
    Ok(Some(
        trace
            .steps
            .into_iter()
            .map(|(w, u)| (back(w), back(u)))
            .collect(),
    ))
}

/// Recovers `T` from a tree `T'` that is the subdivision of `T`.
///
/// The inserted vertices must form the colour class that is one smaller than
/// the other and consists of degree-2 vertices only. The result is labelled
/// by the ascending order of the surviving class; provenance maps back to
/// `T'`.
pub fn inverse_subdivision(g: &Graph) -> Result<Option<(Graph, VertexProvenance)>> {
    require_tree(g)?;
    let bip = g.is_bipartite().expect("trees are bipartite");
    let (original, inserted) = if bip.v1.len() == bip.v2.len() + 1 {
        (bip.v1, bip.v2)
    } else if bip.v2.len() == bip.v1.len() + 1 {
        (bip.v2, bip.v1)
    } else {
        return Ok(None);
    };
    if inserted.iter().any(|&x| g.degree(x) != 2) {
        return Ok(None);
    }
    let mut label = vec![usize::MAX; g.n()];
    for (i, &v) in original.iter().enumerate() {
        label[v] = i;
    }
    let edges: Vec<(usize, usize)> = inserted
        .iter()
        .map(|&x| {
            let nb = g.neighbours(x);
            (label[nb[0]], label[nb[1]])
        })
        .collect();
    let t = Graph::from_edges(original.len(), &edges)?;
    Ok(Some((t, VertexProvenance::from_vertices(original))))
}

/// Both characterizations of a minimal-configuration tree, side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McTreeVerdict {
    /// Minimal configuration by definition.
    pub by_definition: bool,
    /// Subdivision of another tree.
    pub by_subdivision: bool,
    pub matching_number: usize,
    pub ncv: usize,
    /// `t = |N(CV)|`.
    pub matching_equals_ncv: bool,
    /// `Q` of the core-labelling has independent columns.
    pub q_full_column_rank: bool,
    pub is_mc: bool,
}

impl McTreeVerdict {
    pub fn characterizations_agree(&self) -> bool {
        self.by_definition == self.by_subdivision
    }
}

pub fn is_mc_tree(g: &Graph) -> Result<McTreeVerdict> {
    require_tree(g)?;
    let by_definition = is_minimal_configuration(g).is_mc;
    let by_subdivision = inverse_subdivision(g)?.is_some();
    let t = matching_number(g)?;
    let (_, split) = core_split(g);
    let lab = CoreLabelling::from_split(g, &split)?;
    let q_full_column_rank = lab.q.rank() == split.ncv.len();
    let matching_equals_ncv = t == split.ncv.len();
    Ok(McTreeVerdict {
        by_definition,
        by_subdivision,
        matching_number: t,
        ncv: split.ncv.len(),
        matching_equals_ncv,
        q_full_column_rank,
        is_mc: by_definition && by_subdivision && matching_equals_ncv && q_full_column_rank,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceRankCheck {
    pub rank_b: usize,
    pub m: usize,
    pub subdivision_nullity: usize,
    pub holds: bool,
}

/// The incidence matrix of a tree has rank `m = n − 1` and the subdivision
/// has nullity one.
pub fn incidence_rank_check(g: &Graph) -> Result<IncidenceRankCheck> {
    require_tree(g)?;
    let rank_b = g.incidence_matrix::<BigInt>().rank();
    let (s, _) = g.subdivision()?;
    let subdivision_nullity = nullity(&s);
    Ok(IncidenceRankCheck {
        rank_b,
        m: g.m(),
        subdivision_nullity,
        holds: rank_b == g.m() && subdivision_nullity == 1,
    })
}

/// Checks `φ(S, λ) = λ^{n−m} · det(λ²I − BᵀB)` for the subdivision `S` of a
/// connected graph with incidence matrix `B`.
pub fn subdivision_char_poly_identity(g: &Graph) -> Result<bool> {
    let (s, _) = g.subdivision()?;
    let lhs = s.adjacency_matrix::<BigInt>().char_poly()?;
    let b = g.incidence_matrix::<BigInt>();
    let gram = b.transpose().mul(&b)?;
    let inner = gram.char_poly()?.substitute_square();
    let (n, m) = (g.n(), g.m());
    Ok(if n >= m {
        lhs == inner.shift(n - m)
    } else {
        lhs.shift(m - n) == inner
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PendantPairCheck {
    pub end_vertex: usize,
    pub neighbour: usize,
    pub nullity_preserved: bool,
    pub types_preserved: bool,
}

/// Deletes end vertex `w` and its neighbour and compares nullity and the
/// class of every remaining vertex with the original graph.
pub fn pendant_pair_check(g: &Graph, w: usize) -> Result<PendantPairCheck> {
    if w >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: w,
            n: g.n(),
        });
    }
    if g.degree(w) != 1 {
        return Err(Error::InvalidArgument(format!("vertex {w} is not an end vertex")));
    }
    let u = g.neighbours(w)[0];
    let before = classify_vertices(g);
    let (h, prov) = g.delete_vertices(&[u, w])?;
    let after = classify_vertices(&h);
    let types_preserved = (0..h.n()).all(|v| {
        let old = prov.source_vertex(v).expect("induced subgraph");
        after.classes[v] == before.classes[old]
    });
    Ok(PendantPairCheck {
        end_vertex: w,
        neighbour: u,
        nullity_preserved: after.nullity == before.nullity,
        types_preserved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_path, gen_star};

    fn p7_with_tail() -> Graph {
        Graph::from_edges(
            9,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 7), (7, 8)],
        )
        .unwrap()
    }

    #[test]
    fn reduction_examples() {
        let tr = pendant_reduction(&gen_path(7).unwrap()).unwrap();
        assert_eq!(tr.steps, vec![(0, 1), (2, 3), (4, 5)]);
        assert_eq!(tr.isolated_remainder, vec![6]);
        assert_eq!(tr.t, 3);

        let tr = pendant_reduction(&gen_path(2).unwrap()).unwrap();
        assert_eq!((tr.t, tr.isolated_remainder.len()), (1, 0));

        let tr = pendant_reduction(&gen_star(4).unwrap()).unwrap();
        assert_eq!(tr.steps, vec![(1, 0)]);
        assert_eq!(tr.isolated_remainder, vec![2, 3]);

        assert_eq!(
            pendant_reduction(&crate::graph::gen_cycle(3).unwrap()),
            Err(Error::HasCycle)
        );
    }

    #[test]
    fn trace_json_shape() {
        let tr = pendant_reduction(&gen_path(3).unwrap()).unwrap();
        let v = serde_json::to_value(&tr).unwrap();
        assert_eq!(v, serde_json::json!({"steps": [[0, 1]], "isolated": [2], "t": 1}));
    }

    #[test]
    fn nullity_identity_examples() {
        let id = tree_nullity_identity(&gen_path(7).unwrap()).unwrap();
        assert_eq!((id.by_reduction, id.by_rank, id.n_minus_2t, id.all_equal), (1, 1, 1, true));
        let id = tree_nullity_identity(&gen_path(4).unwrap()).unwrap();
        assert_eq!((id.by_reduction, id.by_rank, id.n_minus_2t, id.all_equal), (0, 0, 0, true));
        assert_eq!(
            tree_nullity_identity(&Graph::empty(2)),
            Err(Error::NotATree)
        );
    }

    #[test]
    fn end_vertex_cores() {
        let r = end_vertex_core_vertices(&gen_path(7).unwrap()).unwrap();
        assert_eq!(r.vertices, vec![0, 6]);
        let r = end_vertex_core_vertices(&gen_star(4).unwrap()).unwrap();
        assert_eq!(r.vertices, vec![1, 2, 3]);
        let r = end_vertex_core_vertices(&gen_path(4).unwrap()).unwrap();
        assert!(r.non_singular && r.vertices.is_empty());
    }

    #[test]
    fn cfvr_matching_examples() {
        assert_eq!(cfvr_perfect_matching(&gen_path(7).unwrap()).unwrap(), Some(vec![]));
        assert_eq!(cfvr_perfect_matching(&p7_with_tail()).unwrap(), Some(vec![(7, 8)]));
    }

    #[test]
    fn inverse_subdivision_examples() {
        let (t, prov) = inverse_subdivision(&gen_path(7).unwrap()).unwrap().unwrap();
        assert_eq!(t, gen_path(4).unwrap());
        assert_eq!(prov.source_vertex(3), Some(6));
        assert!(inverse_subdivision(&gen_path(4).unwrap()).unwrap().is_none());
        // P3 smooths to K2 through its middle vertex
        let (t, _) = inverse_subdivision(&gen_path(3).unwrap()).unwrap().unwrap();
        assert_eq!(t, gen_path(2).unwrap());
        // a star has the right class sizes only for K_{1,2}
        assert!(inverse_subdivision(&gen_star(5).unwrap()).unwrap().is_none());
    }

    #[test]
    fn mc_tree_examples() {
        let v = is_mc_tree(&gen_path(7).unwrap()).unwrap();
        assert!(v.is_mc);
        assert_eq!((v.matching_number, v.ncv), (3, 3));
        let v = is_mc_tree(&gen_path(5).unwrap()).unwrap();
        assert!(v.is_mc && v.characterizations_agree());
        let v = is_mc_tree(&gen_path(2).unwrap()).unwrap();
        assert!(!v.is_mc && v.characterizations_agree());
        let v = is_mc_tree(&Graph::empty(1)).unwrap();
        assert!(v.is_mc);
    }

    #[test]
    fn incidence_rank_examples() {
        let c = incidence_rank_check(&gen_path(4).unwrap()).unwrap();
        assert_eq!((c.rank_b, c.subdivision_nullity, c.holds), (3, 1, true));
        let c = incidence_rank_check(&Graph::empty(1)).unwrap();
        assert_eq!((c.rank_b, c.m, c.subdivision_nullity, c.holds), (0, 0, 1, true));
    }

    #[test]
    fn char_poly_identity_on_small_graphs() {
        assert!(subdivision_char_poly_identity(&gen_path(4).unwrap()).unwrap());
        assert!(subdivision_char_poly_identity(&gen_star(5).unwrap()).unwrap());
        // holds for connected graphs with m > n as well
        assert!(subdivision_char_poly_identity(&crate::graph::gen_complete(4).unwrap()).unwrap());
    }

    #[test]
    fn pendant_pair_preserves_types() {
        let g = p7_with_tail();
        for w in g.end_vertices() {
            let c = pendant_pair_check(&g, w).unwrap();
            assert!(c.nullity_preserved && c.types_preserved, "{c:?}");
        }
        assert!(pendant_pair_check(&g, 1).is_err());
    }
}
