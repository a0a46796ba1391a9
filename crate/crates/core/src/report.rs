//! JSON views of the analysis results. Field names are stable.

use serde_json::{json, Value};

use crate::analysis::AnalysisReport;
use crate::scalar::Scalar;
use crate::IntMatrix;

/// Integer as a JSON number when it fits in `i64`, else as a decimal string.
pub fn int_json<T: Scalar>(x: &T) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn int_rows_json<T: Scalar>(rows: &[Vec<T>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(int_json).collect()))
            .collect(),
    )
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    int_rows_json(&m.row_vecs())
}

impl AnalysisReport {
    pub fn to_json(&self) -> Value {
        let p = &self.partition;
        let blocks = self.labelling.as_ref().map_or(Value::Null, |lab| {
            json!({
                "Q": matrix_json(&lab.q),
                "N": matrix_json(&lab.n),
                "R": matrix_json(&lab.r),
                "M": matrix_json(&lab.m),
            })
        });
        json!({
            "n": self.n,
            "m": self.m,
            "nullity": self.nullity,
            "classes": p.classes,
            "cv": p.cv,
            "ncv": p.ncv,
            "cfvr": p.cfvr,
            "independent_cv": p.independent_cv,
            "core_graph": self.nullity > 0 && p.cv.len() == self.n,
            "kernel_basis": int_rows_json(self.kernel.vectors()),
            "blocks": blocks,
            "checks": self.checks,
        })
    }
}
