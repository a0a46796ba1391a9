//! Minimal configurations and the structure of bipartite graphs of nullity one.

use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{core_split, is_slim, nullity, CoreLabelling};
use crate::error::{Error, Result};
use crate::graph::{BipartiteDecomposition, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    pub is_mc: bool,
    pub nullity: usize,
    /// Subgraph induced on the core vertices.
    pub core_subgraph: Graph,
    /// Vertices outside the core.
    pub periphery: Vec<usize>,
    pub periphery_independent: bool,
    /// Nullity of the core subgraph.
    pub core_nullity: usize,
    /// `|periphery| + 1 = core_nullity`.
    pub size_identity: bool,
    pub failures: Vec<String>,
}

impl McReport {
    pub fn to_json(&self) -> Value {
        json!({
            "is_mc": self.is_mc,
            "nullity": self.nullity,
            "periphery": self.periphery,
            "eta_core": self.core_nullity,
            "failures": self.failures,
        })
    }
}

/// Decides whether `g` is a minimal configuration: either `K1`, or a graph
/// on at least three vertices of nullity one whose periphery is independent
/// and one smaller than the nullity of the core subgraph.
pub fn is_minimal_configuration(g: &Graph) -> McReport {
    let n = g.n();
    let (kernel, split) = core_split(g);
    let eta = kernel.nullity();
    let (core_subgraph, _) = g
        .induced_subgraph(&split.cv)
        .expect("core vertices are in range");
    let core_nullity = nullity(&core_subgraph);
    let periphery: Vec<usize> = (0..n).filter(|v| split.cv.binary_search(v).is_err()).collect();
    let internal = g.first_internal_edge(&periphery);
    let periphery_independent = internal.is_none();
    let size_identity = periphery.len() + 1 == core_nullity;

    let mut failures = Vec::new();
    if n == 1 {
        return McReport {
            is_mc: true,
            nullity: eta,
            core_subgraph,
            periphery,
            periphery_independent,
            core_nullity,
            size_identity,
            failures,
        };
    }
    match n {
        0 => failures.push("graph has no vertices".to_string()),
        2 => failures.push("definition excludes |V|=2".to_string()),
        _ => {}
    }
    if eta != 1 {
        failures.push(format!("nullity is {eta}, not 1"));
    }
    if let Some((u, w)) = internal {
        failures.push(format!("periphery contains the edge ({u}, {w})"));
    }
    if !size_identity {
        failures.push(format!(
            "|P| + 1 = {} but the core has nullity {core_nullity}",
            periphery.len() + 1
        ));
    }
    McReport {
        is_mc: failures.is_empty(),
        nullity: eta,
        core_subgraph,
        periphery,
        periphery_independent,
        core_nullity,
        size_identity,
        failures,
    }
}

/// Colour classes ordered as (larger, smaller), ties keeping the
/// decomposition's own order.
fn ordered_classes(bip: &BipartiteDecomposition) -> (Vec<usize>, Vec<usize>) {
    if bip.v2.len() > bip.v1.len() {
        (bip.v2.clone(), bip.v1.clone())
    } else {
        (bip.v1.clone(), bip.v2.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteNullityOne {
    pub n: usize,
    pub larger_class: Vec<usize>,
    pub smaller_class: Vec<usize>,
    pub cv: Vec<usize>,
    pub n_odd: bool,
    /// The larger class has exactly one more vertex, namely `(n + 1) / 2`.
    pub class_sizes_hold: bool,
    pub cv_in_larger_class: bool,
    pub core_labelling_admissible: bool,
}

impl BipartiteNullityOne {
    pub fn holds(&self) -> bool {
        self.n_odd && self.class_sizes_hold && self.cv_in_larger_class && self.core_labelling_admissible
    }
}

/// Structure of a bipartite graph of nullity one: odd order, classes of
/// sizes `(n + 1) / 2` and `(n − 1) / 2`, core vertices inside the larger
/// class.
pub fn bipartite_nullity1_structure(g: &Graph) -> Result<BipartiteNullityOne> {
    let bip = g.is_bipartite().ok_or(Error::NotBipartite)?;
    let (kernel, split) = core_split(g);
    if kernel.nullity() != 1 {
        return Err(Error::WrongNullity {
            expected: 1,
            found: kernel.nullity(),
        });
    }
    let n = g.n();
    let (larger, smaller) = ordered_classes(&bip);
    let class_sizes_hold = larger.len() == smaller.len() + 1 && smaller.len() == (n - 1) / 2;
    let cv_in_larger_class = split.cv.iter().all(|v| larger.binary_search(v).is_ok());
    let core_labelling_admissible = CoreLabelling::from_split(g, &split).is_ok();
    Ok(BipartiteNullityOne {
        n,
        larger_class: larger,
        smaller_class: smaller,
        cv: split.cv,
        n_odd: n % 2 == 1,
        class_sizes_hold,
        cv_in_larger_class,
        core_labelling_admissible,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McSlimEquivalence {
    /// The colour classes differ in size.
    pub hypothesis_met: bool,
    /// Minimal configuration.
    pub lhs: bool,
    /// Slim, nullity one, and the core is the larger class.
    pub rhs: bool,
    pub equal: bool,
}

/// Compares "minimal configuration" with "slim of nullity one whose core is
/// the larger colour class" on a bipartite graph.
pub fn bipartite_mc_slim_equivalence(g: &Graph) -> Result<McSlimEquivalence> {
    let bip = g.is_bipartite().ok_or(Error::NotBipartite)?;
    let hypothesis_met = bip.v1.len() != bip.v2.len();
    let (larger, _) = ordered_classes(&bip);
    let lhs = is_minimal_configuration(g).is_mc;
    let (kernel, split) = core_split(g);
    let rhs = is_slim(g) && kernel.nullity() == 1 && split.cv == larger;
    Ok(McSlimEquivalence {
        hypothesis_met,
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteParity {
    pub n: usize,
    pub rank_s: usize,
    pub rank_a: usize,
    /// `n − 2·rank(S)`.
    pub nullity: usize,
    pub rank_doubles: bool,
    pub same_parity: bool,
}

impl BipartiteParity {
    pub fn holds(&self) -> bool {
        self.rank_doubles && self.same_parity
    }
}

/// Nullity and order of a bipartite graph have the same parity, with the
/// nullity taken as `n − 2·rank(S)` from the biadjacency block `S`.
pub fn bipartite_parity_check(g: &Graph) -> Result<BipartiteParity> {
    let bip = g.is_bipartite().ok_or(Error::NotBipartite)?;
    let n = g.n();
    let rank_s = bip.s.rank();
    let rank_a = g.adjacency_matrix::<num_bigint::BigInt>().rank();
    let eta = n - 2 * rank_s;
    Ok(BipartiteParity {
        n,
        rank_s,
        rank_a,
        nullity: eta,
        rank_doubles: rank_a == 2 * rank_s,
        same_parity: eta % 2 == n % 2,
    })
}
