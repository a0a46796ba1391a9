//! Single-edge perturbations: classify candidate additions by the parts of
//! their endpoints, apply them, and measure which nullspace data survives.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{core_split, CoreSplit, Part};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{KernelBasis, RationalVector};
use crate::report::int_rows_json;

/// Unordered pair of endpoint parts, smaller part first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypePair {
    CvCv,
    CvNcv,
    CvCfvr,
    NcvNcv,
    NcvCfvr,
    CfvrCfvr,
}

impl TypePair {
    pub fn from_parts(a: Part, b: Part) -> Self {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match (lo, hi) {
            (Part::Cv, Part::Cv) => TypePair::CvCv,
            (Part::Cv, Part::Ncv) => TypePair::CvNcv,
            (Part::Cv, Part::Cfvr) => TypePair::CvCfvr,
            (Part::Ncv, Part::Ncv) => TypePair::NcvNcv,
            (Part::Ncv, Part::Cfvr) => TypePair::NcvCfvr,
            _ => TypePair::CfvrCfvr,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TypePair::CvCv => "CV-CV",
            TypePair::CvNcv => "CV-NCV",
            TypePair::CvCfvr => "CV-CFVR",
            TypePair::NcvNcv => "NCV-NCV",
            TypePair::NcvCfvr => "NCV-CFVR",
            TypePair::CfvrCfvr => "CFVR-CFVR",
        }
    }

    /// Both endpoints are core-forbidden.
    pub fn is_cfv_pair(self) -> bool {
        matches!(self, TypePair::NcvNcv | TypePair::NcvCfvr | TypePair::CfvrCfvr)
    }
}

impl fmt::Display for TypePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeCandidate {
    pub u: usize,
    pub w: usize,
    pub type_pair: TypePair,
}

/// Tags a non-adjacent pair with the parts of its endpoints in `g`.
pub fn candidate(g: &Graph, u: usize, w: usize) -> Result<EdgeCandidate> {
    let n = g.n();
    for v in [u, w] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if u == w {
        return Err(Error::InvalidCandidate(u, w, "endpoints coincide".into()));
    }
    if g.has_edge(u, w) {
        return Err(Error::EdgeExists(u.min(w), u.max(w)));
    }
    let (_, split) = core_split(g);
    Ok(tag(&split, u.min(w), u.max(w)))
}

fn tag(split: &CoreSplit, u: usize, w: usize) -> EdgeCandidate {
    EdgeCandidate {
        u,
        w,
        type_pair: TypePair::from_parts(split.part_of(u), split.part_of(w)),
    }
}

/// Every non-edge of `g`, tagged and sorted by endpoints.
pub fn candidate_edges(g: &Graph) -> Vec<EdgeCandidate> {
    let (_, split) = core_split(g);
    g.non_edges().map(|(u, w)| tag(&split, u, w)).collect()
}

/// Nullspace data of one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub nullity: usize,
    pub kernel: KernelBasis,
    pub split: CoreSplit,
}

impl Snapshot {
    pub fn of(g: &Graph) -> Self {
        let (kernel, split) = core_split(g);
        Self {
            nullity: kernel.nullity(),
            kernel,
            split,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Preserved {
    pub nullity: bool,
    pub cv_set: bool,
    pub nullspace: bool,
    /// Same core set, still independent, same `N(CV)` / `CFV_R` split.
    pub core_labelling: bool,
}

impl Preserved {
    pub fn between(before: &Snapshot, after: &Snapshot) -> Self {
        let cv_set = before.split.cv == after.split.cv;
        Self {
            nullity: before.nullity == after.nullity,
            cv_set,
            nullspace: before.kernel == after.kernel,
            core_labelling: cv_set
                && after.split.independent_cv
                && before.split.ncv == after.split.ncv
                && before.split.cfvr == after.split.cfvr,
        }
    }

    pub fn get(&self, mode: PreserveMode) -> bool {
        match mode {
            PreserveMode::Nullity => self.nullity,
            PreserveMode::CvSet => self.cv_set,
            PreserveMode::Nullspace => self.nullspace,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PreserveMode {
    Nullity,
    CvSet,
    Nullspace,
}

impl PreserveMode {
    pub fn as_str(self) -> &'static str {
        match self {
            PreserveMode::Nullity => "nullity",
            PreserveMode::CvSet => "cv",
            PreserveMode::Nullspace => "nullspace",
        }
    }
}

impl FromStr for PreserveMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nullity" => Ok(PreserveMode::Nullity),
            "cv" | "cv_set" => Ok(PreserveMode::CvSet),
            "nullspace" => Ok(PreserveMode::Nullspace),
            other => Err(Error::InvalidArgument(format!(
                "unknown preserve mode {other:?}, expected nullity, cv or nullspace"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeChange {
    Addition,
    Deletion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationReport {
    pub change: EdgeChange,
    pub edge: (usize, usize),
    /// Endpoint parts in the graph before the change.
    pub type_pair: TypePair,
    pub before: Snapshot,
    pub after: Snapshot,
    pub preserved: Preserved,
    /// For additions between core-forbidden vertices: nullity is preserved
    /// exactly when the core set is.
    pub nullity_iff_cv: Option<bool>,
    /// For additions between core-forbidden vertices: preserved nullity
    /// implies an identical canonical kernel basis and core-labelling.
    pub nullity_implies_same_nullspace: Option<bool>,
}

impl PerturbationReport {
    pub fn eta_before(&self) -> usize {
        self.before.nullity
    }

    pub fn eta_after(&self) -> usize {
        self.after.nullity
    }

    /// A single edge is a rank-two update, so nullity moves by at most two.
    pub fn within_rank_two_bound(&self) -> bool {
        self.before.nullity.abs_diff(self.after.nullity) <= 2
    }

    /// The report is internally consistent: no conditional claim failed and
    /// the nullity bound holds.
    pub fn consistent(&self) -> bool {
        self.within_rank_two_bound()
            && self.nullity_iff_cv != Some(false)
            && self.nullity_implies_same_nullspace != Some(false)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "edge": [self.edge.0, self.edge.1],
            "type": self.type_pair.as_str(),
            "eta": [self.before.nullity, self.after.nullity],
            "cv": [self.before.split.cv, self.after.split.cv],
            "preserved": self.preserved,
        })
    }
}

/// Adds the candidate edge and compares the nullspace data before and after.
pub fn apply_and_report(g: &Graph, e: &EdgeCandidate) -> Result<PerturbationReport> {
    let before = Snapshot::of(g);
    let (u, w) = (e.u.min(e.w), e.u.max(e.w));
    if u == w {
        return Err(Error::InvalidCandidate(u, w, "endpoints coincide".into()));
    }
    let h = g.add_edge(u, w)?;
    let actual = tag(&before.split, u, w).type_pair;
    if actual != e.type_pair {
        return Err(Error::InvalidCandidate(
            u,
            w,
            format!("tagged {} but endpoints are {}", e.type_pair, actual),
        ));
    }
    Ok(report(EdgeChange::Addition, &h, before, (u, w), actual))
}

/// Adds `{u, w}` to `g` and reports, tagging the pair from `g`'s partition.
pub fn add_and_report(g: &Graph, u: usize, w: usize) -> Result<PerturbationReport> {
    let e = candidate(g, u, w)?;
    apply_and_report(g, &e)
}

/// Deletes `{u, w}` and reports the same flags. No claims are evaluated for
/// deletions.
pub fn delete_and_report(g: &Graph, u: usize, w: usize) -> Result<PerturbationReport> {
    let before = Snapshot::of(g);
    let h = g.delete_edge(u, w)?;
    let (u, w) = (u.min(w), u.max(w));
    let type_pair = tag(&before.split, u, w).type_pair;
    Ok(report(EdgeChange::Deletion, &h, before, (u, w), type_pair))
}

fn report(
    change: EdgeChange,
    h: &Graph,
    before: Snapshot,
    edge: (usize, usize),
    type_pair: TypePair,
) -> PerturbationReport {
    let after = Snapshot::of(h);
    let preserved = Preserved::between(&before, &after);
    let evaluate = change == EdgeChange::Addition && type_pair.is_cfv_pair();
    let nullity_iff_cv = evaluate.then_some(preserved.nullity == preserved.cv_set);
    let nullity_implies_same_nullspace = evaluate
        .then_some(!preserved.nullity || (preserved.nullspace && preserved.core_labelling));
    PerturbationReport {
        change,
        edge,
        type_pair,
        before,
        after,
        preserved,
        nullity_iff_cv,
        nullity_implies_same_nullspace,
    }
}

/// Outcome of adding an edge between a core vertex and a neighbour of the core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CvNcvReport {
    pub edge: (usize, usize),
    /// Endpoint of the edge lying in the core.
    pub core_endpoint: usize,
    /// The core-labelling survived the addition.
    pub hypothesis_met: bool,
    pub nullity_preserved: bool,
    /// Canonical kernel vector of `G`, non-zero at the core endpoint, that
    /// the new adjacency matrix does not annihilate.
    pub leaving: Option<Vec<BigInt>>,
    /// Canonical kernel vector of `G + e`, non-zero at the core endpoint,
    /// that the old adjacency matrix does not annihilate.
    pub entering: Option<Vec<BigInt>>,
}

impl CvNcvReport {
    /// Vacuously true when the labelling was not preserved.
    pub fn holds(&self) -> bool {
        !self.hypothesis_met
            || (self.nullity_preserved && self.leaving.is_some() && self.entering.is_some())
    }

    pub fn to_json(&self) -> Value {
        let rows = |v: &Option<Vec<BigInt>>| match v {
            Some(x) => int_rows_json(std::slice::from_ref(x))[0].clone(),
            None => Value::Null,
        };
        json!({
            "edge": [self.edge.0, self.edge.1],
            "hypothesis_met": self.hypothesis_met,
            "nullity_preserved": self.nullity_preserved,
            "leaving": rows(&self.leaving),
            "entering": rows(&self.entering),
        })
    }
}

fn escaping_vector(
    basis: &KernelBasis,
    at: usize,
    other: &crate::IntMatrix,
) -> Option<Vec<BigInt>> {
    basis
        .vectors()
        .iter()
        .filter(|v| v[at] != BigInt::from(0))
        .find(|v| {
            !other
                .mat_vec(&RationalVector::from_integers(v))
                .expect("dimensions agree")
                .is_zero()
        })
        .cloned()
}

/// Adds a CV–NCV edge. When the core-labelling survives, the nullity must
/// be unchanged while the kernel itself moves: some old kernel vector leaves
/// and some new one enters, both exhibited with exact products.
pub fn verify_cv_ncv_theorem(g: &Graph, e: &EdgeCandidate) -> Result<CvNcvReport> {
    if e.type_pair != TypePair::CvNcv {
        return Err(Error::InvalidCandidate(
            e.u,
            e.w,
            format!("expected a CV-NCV pair, got {}", e.type_pair),
        ));
    }
    let before = Snapshot::of(g);
    if let Some((a, b)) = g.first_internal_edge(&before.split.cv) {
        return Err(Error::NonIndependentCore(a, b));
    }
    let r = apply_and_report(g, e)?;
    let core_endpoint = if before.split.part_of(r.edge.0) == Part::Cv {
        r.edge.0
    } else {
        r.edge.1
    };
    let hypothesis_met = r.preserved.core_labelling;
    let (mut leaving, mut entering) = (None, None);
    if hypothesis_met {
        let h = g.add_edge(r.edge.0, r.edge.1)?;
        let a_old = g.adjacency_matrix::<BigInt>();
        let a_new = h.adjacency_matrix::<BigInt>();
        leaving = escaping_vector(&r.before.kernel, core_endpoint, &a_new);
        entering = escaping_vector(&r.after.kernel, core_endpoint, &a_old);
    }
    Ok(CvNcvReport {
        edge: r.edge,
        core_endpoint,
        hypothesis_met,
        nullity_preserved: r.preserved.nullity,
        leaving,
        entering,
    })
}

/// Core-forbidden candidate additions that keep the requested property.
/// Pairs touching a core vertex are never offered.
pub fn safe_additions(g: &Graph, mode: PreserveMode) -> Vec<EdgeCandidate> {
    candidate_edges(g)
        .into_iter()
        .filter(|e| e.type_pair.is_cfv_pair())
        .filter(|e| {
            apply_and_report(g, e)
                .expect("candidates are valid")
                .preserved
                .get(mode)
        })
        .collect()
}

fn first_safe_addition(g: &Graph, mode: PreserveMode) -> Option<EdgeCandidate> {
    candidate_edges(g)
        .into_iter()
        .filter(|e| e.type_pair.is_cfv_pair())
        .find(|e| {
            apply_and_report(g, e)
                .expect("candidates are valid")
                .preserved
                .get(mode)
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Densified {
    pub graph: Graph,
    pub added: Vec<(usize, usize)>,
    /// First step (1-based) after which the property differed from the
    /// input's; densifying stops there.
    pub violated_at: Option<usize>,
}

/// Repeatedly adds the lexicographically first safe edge until none is
/// left. The property is compared against the input after every step.
pub fn greedy_densify(g: &Graph, mode: PreserveMode) -> Densified {
    let origin = Snapshot::of(g);
    let mut current = g.clone();
    let mut added = Vec::new();
    while let Some(e) = first_safe_addition(&current, mode) {
        current = current.add_edge(e.u, e.w).expect("candidate is a non-edge");
        added.push((e.u, e.w));
        if !Preserved::between(&origin, &Snapshot::of(&current)).get(mode) {
            let violated_at = Some(added.len());
            return Densified {
                graph: current,
                added,
                violated_at,
            };
        }
    }
    Densified {
        graph: current,
        added,
        violated_at: None,
    }
}
