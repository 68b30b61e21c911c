//! JSON fragments shared by the command reports. Objects are `serde_json`
//! maps with sorted keys, so equal inputs give byte-identical output.

use poset_cohomology::abelian::GroupStructure;
use poset_cohomology::complex::{CohomologyResult, FreeCochainComplex};
use poset_cohomology::global::{GlobalCoveringFamily, GlobalViolation, InequalityReport};
use poset_cohomology::linalg::IntMatrix;
use poset_cohomology::poset::GradedPoset;
use serde::Serialize;
use serde_json::{json, Value};

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report data")
}

pub fn group(g: &GroupStructure) -> Value {
    json!({ "betti": g.free_rank, "torsion": g.torsion, "group": g.to_string() })
}

/// Per-degree groups with their degree.
pub fn groups(gs: &[GroupStructure]) -> Value {
    Value::Array(
        gs.iter()
            .enumerate()
            .map(|(n, g)| {
                let mut v = group(g);
                v["degree"] = json!(n);
                v
            })
            .collect(),
    )
}

pub fn cohomology(h: &CohomologyResult) -> Value {
    groups(&h.groups)
}

pub fn matrix(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

pub fn complex(c: &FreeCochainComplex) -> Value {
    json!({
        "ranks": c.ranks,
        "differentials": c.differentials.iter().map(matrix).collect::<Vec<_>>(),
    })
}

pub fn ids(poset: &GradedPoset, objects: &[usize]) -> Vec<String> {
    objects.iter().map(|&p| poset.id(p).to_string()).collect()
}

pub fn poset_summary(poset: &GradedPoset) -> Value {
    json!({
        "objects": poset.len(),
        "degree_counts": poset.degree_counts(),
        "hasse_edges": poset.poset().hasse_edge_count(),
    })
}

pub fn global_family(
    poset: &GradedPoset,
    k: &GlobalCoveringFamily,
    violations: &[GlobalViolation],
    betti: &[i64],
) -> Value {
    json!({
        "K": k.to_ids(poset),
        "valid": violations.is_empty(),
        "violations": violations.iter().map(|v| {
            let mut x = to_value(v);
            x["message"] = json!(v.to_string());
            x
        }).collect::<Vec<_>>(),
        "family_betti": betti,
    })
}

pub fn inequalities(r: &InequalityReport) -> Value {
    json!({ "weak": r.weak, "strong": r.strong, "hold": r.holds() })
}

/// A failure report: the message plus structured witness data.
pub fn error(command: &str, message: impl ToString, witness: Value) -> Value {
    json!({ "command": command, "status": "invalid", "error": message.to_string(), "witness": witness })
}
