//! Nullspace vertex partition: core vertices, their neighbours and the remote
//! core-forbidden vertices, plus the block structure of a core-labelled
//! adjacency matrix.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexProvenance};
use crate::linalg::KernelBasis;
use crate::report::int_json;
use crate::IntMatrix;

/// Deletion class of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VertexClass {
    /// Deleting the vertex lowers the nullity by one.
    #[serde(rename = "cv")]
    Core,
    /// Core-forbidden; deletion leaves the nullity unchanged.
    #[serde(rename = "cfv_mid")]
    CfvMid,
    /// Core-forbidden; deletion raises the nullity by one.
    #[serde(rename = "cfv_upp")]
    CfvUpp,
}

impl VertexClass {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexClass::Core => "cv",
            VertexClass::CfvMid => "cfv_mid",
            VertexClass::CfvUpp => "cfv_upp",
        }
    }

    pub fn is_core(self) -> bool {
        self == VertexClass::Core
    }
}

/// Part of the three-way split `CV ∪ N(CV) ∪ CFV_R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Part {
    #[serde(rename = "cv")]
    Cv,
    #[serde(rename = "ncv")]
    Ncv,
    #[serde(rename = "cfvr")]
    Cfvr,
}

/// The split of `V` induced by the core vertex set alone (no deletions).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoreSplit {
    pub cv: Vec<usize>,
    /// Core-forbidden vertices with at least one core neighbour.
    pub ncv: Vec<usize>,
    /// Core-forbidden vertices with no core neighbour.
    pub cfvr: Vec<usize>,
    pub independent_cv: bool,
}

impl CoreSplit {
    pub fn from_core(g: &Graph, cv: Vec<usize>) -> Self {
        let mut is_cv = vec![false; g.n()];
        for &v in &cv {
            is_cv[v] = true;
        }
        let (ncv, cfvr) = (0..g.n())
            .filter(|&v| !is_cv[v])
            .partition(|&v| g.neighbours(v).iter().any(|&w| is_cv[w]));
        let independent_cv = g.is_independent(&cv);
        Self {
            cv,
            ncv,
            cfvr,
            independent_cv,
        }
    }

    pub fn part_of(&self, v: usize) -> Part {
        if self.cv.binary_search(&v).is_ok() {
            Part::Cv
        } else if self.ncv.binary_search(&v).is_ok() {
            Part::Ncv
        } else {
            Part::Cfvr
        }
    }
}

/// Full classification of every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    pub nullity: usize,
    pub classes: Vec<VertexClass>,
    pub cv: Vec<usize>,
    pub ncv: Vec<usize>,
    pub cfvr: Vec<usize>,
    pub independent_cv: bool,
}

impl VertexPartition {
    pub fn split(&self) -> CoreSplit {
        CoreSplit {
            cv: self.cv.clone(),
            ncv: self.ncv.clone(),
            cfvr: self.cfvr.clone(),
            independent_cv: self.independent_cv,
        }
    }

    /// `cv`/`ncv`/`cfvr` for graphs with independent core vertices,
    /// otherwise the deletion class.
    pub fn part_label(&self, v: usize) -> &'static str {
        if self.classes[v].is_core() {
            "cv"
        } else if !self.independent_cv {
            self.classes[v].as_str()
        } else if self.ncv.binary_search(&v).is_ok() {
            "ncv"
        } else {
            "cfvr"
        }
    }

    pub fn cfv(&self) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&v| !self.classes[v].is_core())
            .collect()
    }
}

pub fn kernel_basis(g: &Graph) -> KernelBasis {
    g.adjacency_matrix::<BigInt>().nullspace_basis()
}

pub fn nullity(g: &Graph) -> usize {
    g.n() - g.adjacency_matrix::<BigInt>().rank()
}

/// Core vertices and the induced split, from one nullspace computation.
pub fn core_split(g: &Graph) -> (KernelBasis, CoreSplit) {
    let kernel = kernel_basis(g);
    let split = CoreSplit::from_core(g, kernel.support());
    (kernel, split)
}

/// `η(G − v) − η(G)`, always in `{−1, 0, 1}`.
pub fn deletion_delta(g: &Graph, eta: usize, v: usize) -> Result<i64> {
    let (h, _) = g.delete_vertex(v)?;
    Ok(nullity(&h) as i64 - eta as i64)
}

/// Core vertices found by deleting each vertex in turn.
pub fn core_vertices_by_deletion(g: &Graph) -> Vec<usize> {
    let eta = nullity(g);
    (0..g.n())
        .filter(|&v| deletion_delta(g, eta, v).expect("vertex in range") == -1)
        .collect()
}

/// Classifies every vertex. Core vertices come from the kernel support; the
/// remaining vertices are split into mid/upper by deleting them.
pub fn classify_vertices(g: &Graph) -> VertexPartition {
    let (kernel, split) = core_split(g);
    let eta = kernel.nullity();
    let mut classes = vec![VertexClass::Core; g.n()];
    for v in (0..g.n()).filter(|v| split.cv.binary_search(v).is_err()) {
        classes[v] = match deletion_delta(g, eta, v).expect("vertex in range") {
            0 => VertexClass::CfvMid,
            1 => VertexClass::CfvUpp,
            d => panic!("core-forbidden vertex {v} changed nullity by {d}"),
        };
    }
    VertexPartition {
        nullity: eta,
        classes,
        cv: split.cv,
        ncv: split.ncv,
        cfvr: split.cfvr,
        independent_cv: split.independent_cv,
    }
}

/// Vertices adjacent to exactly one core vertex. Always empty for a correct
/// core set, since every row of `A·x = 0` sums neighbour weights to zero.
pub fn single_core_neighbour_violations(g: &Graph, cv: &[usize]) -> Vec<usize> {
    let mut is_cv = vec![false; g.n()];
    for &v in cv {
        is_cv[v] = true;
    }
    (0..g.n())
        .filter(|&v| g.neighbours(v).iter().filter(|&&w| is_cv[w]).count() == 1)
        .collect()
}

/// Vertex order `CV, N(CV), CFV_R` (each ascending) and the blocks of the
/// permuted adjacency matrix
///
/// ```text
///     [ 0   Q   0 ]
/// A = [ Qᵀ  N   R ]
///     [ 0   Rᵀ  M ]
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreLabelling {
    /// `order[new] = old`.
    pub order: Vec<usize>,
    /// `position[old] = new`.
    pub position: Vec<usize>,
    pub cv_len: usize,
    pub ncv_len: usize,
    pub cfvr_len: usize,
    pub q: IntMatrix,
    pub n: IntMatrix,
    pub r: IntMatrix,
    pub m: IntMatrix,
}

impl CoreLabelling {
    pub fn from_split(g: &Graph, split: &CoreSplit) -> Result<Self> {
        if let Some((u, w)) = g.first_internal_edge(&split.cv) {
            return Err(Error::NonIndependentCore(u, w));
        }
        let a = g.adjacency_matrix::<BigInt>();
        let order: Vec<usize> = split
            .cv
            .iter()
            .chain(&split.ncv)
            .chain(&split.cfvr)
            .copied()
            .collect();
        let mut position = vec![0; g.n()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        Ok(Self {
            q: a.select(&split.cv, &split.ncv),
            n: a.select(&split.ncv, &split.ncv),
            r: a.select(&split.ncv, &split.cfvr),
            m: a.select(&split.cfvr, &split.cfvr),
            order,
            position,
            cv_len: split.cv.len(),
            ncv_len: split.ncv.len(),
            cfvr_len: split.cfvr.len(),
        })
    }

    /// Rebuilds the full block matrix from `Q`, `N`, `R`, `M`.
    pub fn reassemble(&self) -> IntMatrix {
        let (c, k) = (self.cv_len, self.ncv_len);
        let size = self.order.len();
        IntMatrix::from_fn(size, size, |i, j| {
            let block = |x: usize| {
                if x < c {
                    0
                } else if x < c + k {
                    1
                } else {
                    2
                }
            };
            match (block(i), block(j)) {
                (0, 1) => self.q.get(i, j - c).clone(),
                (1, 0) => self.q.get(j, i - c).clone(),
                (1, 1) => self.n.get(i - c, j - c).clone(),
                (1, 2) => self.r.get(i - c, j - c - k).clone(),
                (2, 1) => self.r.get(j - c, i - c - k).clone(),
                (2, 2) => self.m.get(i - c - k, j - c - k).clone(),
                _ => BigInt::zero(),
            }
        })
    }

    /// `P·A·Pᵀ` computed directly from the graph.
    pub fn permuted_adjacency(&self, g: &Graph) -> IntMatrix {
        IntMatrix::from_fn(g.n(), g.n(), |i, j| {
            if g.has_edge(self.order[i], self.order[j]) {
                BigInt::from(1)
            } else {
                BigInt::zero()
            }
        })
    }
}

pub fn core_labelling(g: &Graph) -> Result<CoreLabelling> {
    let (_, split) = core_split(g);
    CoreLabelling::from_split(g, &split)
}

/// One evaluated claim with the quantities it was decided on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Value,
}

impl TheoremCheck {
    pub fn new(name: &str, holds: bool, witness: Value) -> Self {
        Self {
            name: name.to_string(),
            holds,
            witness,
        }
    }
}

/// Evaluates the block-matrix claims for a singular graph with independent
/// core vertices. Verdicts are returned, never asserted.
pub fn verify_block_theorems(g: &Graph) -> Result<Vec<TheoremCheck>> {
    let (kernel, split) = core_split(g);
    let eta = kernel.nullity();
    if eta == 0 {
        return Err(Error::NonSingular);
    }
    let labelling = CoreLabelling::from_split(g, &split)?;
    Ok(block_checks(eta, &labelling))
}

pub(crate) fn block_checks(eta: usize, lab: &CoreLabelling) -> Vec<TheoremCheck> {
    let cv = lab.cv_len;
    let ncv = lab.ncv_len;
    let ker_qt = lab.q.transpose().nullspace_basis().nullity();
    let rank_q = lab.q.rank();
    let det_m = lab.m.det().expect("M is square");
    let full_column_rank = rank_q == ncv;
    let gap_identity = eta as i64 == cv as i64 - ncv as i64;
    vec![
        TheoremCheck::new(
            "kernel_of_q_transpose_matches_nullity",
            ker_qt == eta,
            json!({ "nullity": eta, "ker_qt_dim": ker_qt }),
        ),
        TheoremCheck::new(
            "rank_q_below_core_size",
            rank_q < cv,
            json!({ "rank_q": rank_q, "cv": cv }),
        ),
        TheoremCheck::new(
            "nullity_is_core_size_minus_rank_q",
            eta + rank_q == cv,
            json!({ "nullity": eta, "cv": cv, "rank_q": rank_q }),
        ),
        TheoremCheck::new(
            "q_full_column_rank_iff_nullity_is_cv_minus_ncv",
            full_column_rank == gap_identity,
            json!({
                "nullity": eta, "cv": cv, "ncv": ncv, "rank_q": rank_q,
                "full_column_rank": full_column_rank,
            }),
        ),
        TheoremCheck::new(
            "remote_block_nonsingular",
            !det_m.is_zero(),
            json!({ "cfvr": lab.cfvr_len, "det_m": int_json(&det_m) }),
        ),
    ]
}

/// Connected, singular, independent core vertices and no remote vertices.
pub fn is_slim(g: &Graph) -> bool {
    let (kernel, split) = core_split(g);
    g.is_connected() && kernel.nullity() > 0 && split.independent_cv && split.cfvr.is_empty()
}

/// Deletes the remote core-forbidden vertices and checks that nullity and
/// every surviving vertex's class are unchanged.
pub fn slim_reduce(g: &Graph) -> Result<(Graph, VertexProvenance)> {
    let before = classify_vertices(g);
    if let Some((u, w)) = g.first_internal_edge(&before.cv) {
        return Err(Error::NonIndependentCore(u, w));
    }
    let (h, prov) = g.delete_vertices(&before.cfvr)?;
    let after = classify_vertices(&h);
    if after.nullity != before.nullity {
        return Err(Error::SlimReductionFailed(format!(
            "the nullity from {} to {}",
            before.nullity, after.nullity
        )));
    }
    for v in 0..h.n() {
        let old = prov.source_vertex(v).expect("induced subgraph");
        if after.classes[v] != before.classes[old] {
            return Err(Error::SlimReductionFailed(format!(
                "the class of vertex {old} from {} to {}",
                before.classes[old].as_str(),
                after.classes[v].as_str()
            )));
        }
    }
    Ok((h, prov))
}

/// Singular with every vertex a core vertex.
pub fn is_core_graph(g: &Graph) -> bool {
    let (kernel, split) = core_split(g);
    kernel.nullity() > 0 && split.cv.len() == g.n()
}

/// Bipartite with one colour class equal to `CV` and the other to `CFV`.
pub fn is_half_core(g: &Graph) -> bool {
    let Some(bip) = g.is_bipartite() else {
        return false;
    };
    let (kernel, split) = core_split(g);
    if kernel.nullity() == 0 {
        return false;
    }
    let mut cfv = split.ncv.clone();
    cfv.extend(&split.cfvr);
    cfv.sort_unstable();
    (bip.v1 == split.cv && bip.v2 == cfv) || (bip.v2 == split.cv && bip.v1 == cfv)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UnicyclicReport {
    pub cycle: Vec<usize>,
    pub length: usize,
    pub length_mod_4: usize,
    pub cycle_classes: Vec<VertexClass>,
    pub nullity: usize,
    pub independent_cv: bool,
    pub checks: Vec<TheoremCheck>,
}

/// Evaluates the cycle-length claims for a unicyclic graph. Each check holds
/// vacuously when its hypothesis is not met.
pub fn unicyclic_analysis(g: &Graph) -> Result<UnicyclicReport> {
    let cycle = g.is_unicyclic().ok_or(Error::NotUnicyclic)?;
    let part = classify_vertices(g);
    let r = cycle.len();
    let cycle_classes: Vec<VertexClass> = cycle.iter().map(|&v| part.classes[v]).collect();
    let all_core = cycle_classes.iter().all(|c| c.is_core());
    let divisible = r % 4 == 0;
    let conditional = |name: &str, hypothesis: bool, conclusion: bool| {
        TheoremCheck::new(
            name,
            !hypothesis || conclusion,
            json!({
                "hypothesis_met": hypothesis,
                "cycle_length": r,
                "nullity": part.nullity,
                "independent_cv": part.independent_cv,
            }),
        )
    };
    let checks = vec![
        conditional(
            "cfv_on_4k_cycle_gives_independent_core",
            divisible && !all_core,
            part.independent_cv,
        ),
        conditional(
            "all_core_4k_cycle_has_nullity_at_least_two",
            divisible && all_core,
            part.nullity >= 2,
        ),
        conditional(
            "non_4k_cycle_gives_independent_core",
            !divisible,
            part.independent_cv,
        ),
    ];
    Ok(UnicyclicReport {
        length: r,
        length_mod_4: r % 4,
        cycle,
        cycle_classes,
        nullity: part.nullity,
        independent_cv: part.independent_cv,
        checks,
    })
}

/// Everything known about one graph's nullspace partition.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub n: usize,
    pub m: usize,
    pub nullity: usize,
    pub partition: VertexPartition,
    pub kernel: KernelBasis,
    /// Present exactly when the core vertices are independent.
    pub labelling: Option<CoreLabelling>,
    pub checks: Vec<TheoremCheck>,
}

pub fn analyze(g: &Graph) -> AnalysisReport {
    let partition = classify_vertices(g);
    let kernel = kernel_basis(g);
    let labelling = CoreLabelling::from_split(g, &partition.split()).ok();
    let mut checks = Vec::new();
    if partition.nullity > 0 {
        let lonely = single_core_neighbour_violations(g, &partition.cv);
        checks.push(TheoremCheck::new(
            "no_vertex_with_single_core_neighbour",
            lonely.is_empty(),
            json!({ "violations": lonely }),
        ));
        if let Some(lab) = &labelling {
            checks.extend(block_checks(partition.nullity, lab));
        }
    }
    AnalysisReport {
        n: g.n(),
        m: g.m(),
        nullity: partition.nullity,
        partition,
        kernel,
        labelling,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_cycle, gen_path, Graph};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity(&gen_path(4).unwrap()), 0);
        assert_eq!(nullity(&gen_cycle(4).unwrap()), 2);
        for k in 1..=3 {
            assert_eq!(nullity(&gen_cycle(4 * k).unwrap()), 2);
        }
        assert_eq!(nullity(&Graph::empty(0)), 0);
    }

    #[test]
    fn p7_partition() {
        let p = classify_vertices(&gen_path(7).unwrap());
        assert_eq!(p.nullity, 1);
        assert_eq!(p.cv, vec![0, 2, 4, 6]);
        assert_eq!(p.ncv, vec![1, 3, 5]);
        assert!(p.cfvr.is_empty());
        for v in [1, 3, 5] {
            assert_eq!(p.classes[v], VertexClass::CfvUpp);
        }
        assert_eq!(
            kernel_basis(&gen_path(7).unwrap()).vectors(),
            &[big(&[1, 0, -1, 0, 1, 0, -1])]
        );
    }

    #[test]
    fn c6_and_k1_partitions() {
        let p = classify_vertices(&gen_cycle(6).unwrap());
        assert_eq!(p.nullity, 0);
        assert!(p.classes.iter().all(|&c| c == VertexClass::CfvUpp));
        let p = classify_vertices(&Graph::empty(1));
        assert_eq!(p.cv, vec![0]);
        assert_eq!(p.nullity, 1);
    }

    #[test]
    fn core_labelling_examples() {
        let p7 = gen_path(7).unwrap();
        let lab = core_labelling(&p7).unwrap();
        assert_eq!(lab.order, vec![0, 2, 4, 6, 1, 3, 5]);
        assert_eq!((lab.q.rows(), lab.q.cols()), (4, 3));
        // each column of Q is an inserted vertex joining two consecutive cores
        let q = lab.q.row_vecs();
        assert_eq!(q[0], big(&[1, 0, 0]));
        assert_eq!(q[1], big(&[1, 1, 0]));
        assert_eq!(q[3], big(&[0, 0, 1]));
        assert_eq!(lab.m.rows(), 0);
        assert_eq!(lab.reassemble(), lab.permuted_adjacency(&p7));

        assert!(matches!(
            core_labelling(&gen_cycle(4).unwrap()),
            Err(Error::NonIndependentCore(0, 1))
        ));

        let lab = core_labelling(&Graph::empty(1)).unwrap();
        assert_eq!((lab.cv_len, lab.ncv_len, lab.cfvr_len), (1, 0, 0));
        assert_eq!((lab.q.rows(), lab.q.cols()), (1, 0));
    }

    #[test]
    fn block_theorems_on_p7() {
        let checks = verify_block_theorems(&gen_path(7).unwrap()).unwrap();
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        let formula = &checks[2];
        assert_eq!(formula.witness["rank_q"], 3);
        assert_eq!(formula.witness["cv"], 4);
        assert!(matches!(
            verify_block_theorems(&gen_cycle(4).unwrap()),
            Err(Error::NonIndependentCore(..))
        ));
        assert_eq!(
            verify_block_theorems(&gen_path(4).unwrap()),
            Err(Error::NonSingular)
        );
    }

    #[test]
    fn slim_examples() {
        let p7 = gen_path(7).unwrap();
        let (h, _) = slim_reduce(&p7).unwrap();
        assert_eq!(h, p7);
        // a pendant P2 hung on vertex 1 of P7
        let g = Graph::from_edges(
            9,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 7), (7, 8)],
        )
        .unwrap();
        let p = classify_vertices(&g);
        assert_eq!(p.cfvr, vec![7, 8]);
        let (h, prov) = slim_reduce(&g).unwrap();
        assert_eq!(h, p7);
        assert_eq!(prov.source_vertex(6), Some(6));
        let (k1, _) = slim_reduce(&Graph::empty(1)).unwrap();
        assert_eq!(k1, Graph::empty(1));
        assert!(is_slim(&p7));
        assert!(!is_slim(&g));
    }

    #[test]
    fn core_and_half_core() {
        assert!(is_core_graph(&gen_cycle(4).unwrap()));
        assert!(!is_core_graph(&gen_path(7).unwrap()));
        assert!(is_half_core(&gen_path(7).unwrap()));
        assert!(!is_half_core(&gen_cycle(4).unwrap()));
    }

    #[test]
    fn unicyclic_examples() {
        let r = unicyclic_analysis(&gen_cycle(4).unwrap()).unwrap();
        assert_eq!((r.length, r.length_mod_4, r.nullity), (4, 0, 2));
        assert!(r.cycle_classes.iter().all(|c| c.is_core()));
        assert!(r.checks.iter().all(|c| c.holds));
        assert_eq!(r.checks[1].witness["hypothesis_met"], true);

        let r = unicyclic_analysis(&gen_cycle(6).unwrap()).unwrap();
        assert_eq!((r.length_mod_4, r.nullity), (2, 0));
        assert!(r.independent_cv);
        assert!(r.checks.iter().all(|c| c.holds));

        let r = unicyclic_analysis(&gen_cycle(8).unwrap()).unwrap();
        assert_eq!(r.nullity, 2);
        assert!(r.cycle_classes.iter().all(|c| c.is_core()));
        assert!(r.checks.iter().all(|c| c.holds));

        assert_eq!(
            unicyclic_analysis(&gen_path(4).unwrap()).unwrap_err(),
            Error::NotUnicyclic
        );
    }

    #[test]
    fn lemma_on_single_core_neighbours() {
        let g = gen_path(7).unwrap();
        assert!(single_core_neighbour_violations(&g, &[0, 2, 4, 6]).is_empty());
        // a wrong core set is caught
        assert_eq!(single_core_neighbour_violations(&g, &[0]), vec![1]);
    }
}
