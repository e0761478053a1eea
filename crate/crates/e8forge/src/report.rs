//! JSON report schemas emitted by the command-line front end. All numeric
//! values are exact `num/den` strings; orderings are stable.

use serde::Serialize;

use crate::assemble::GradedAlgebra;
use crate::export::ComponentRecord;
use crate::ideal::SimplicityReport;
use crate::killing::KillingReport;
use crate::models::Violation;
use crate::scalar::format_scalar;
use crate::verify::{GradingReport, IsoReport, JacobiReport};

#[derive(Serialize, Debug)]
pub struct DimsJson {
    pub model: String,
    pub group: Vec<u8>,
    pub dimension: usize,
    pub components: Vec<ComponentRecord>,
}

impl DimsJson {
    pub fn new(alg: &GradedAlgebra) -> Self {
        DimsJson {
            model: alg.model.clone(),
            group: alg.group().moduli().to_vec(),
            dimension: alg.dim(),
            components: alg
                .components()
                .iter()
                .map(|c| ComponentRecord {
                    degree: c.degree.residues().to_vec(),
                    dim: c.dim(),
                    basis_range: [c.range.start, c.range.end],
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct FailingTripleJson {
    pub triple: [usize; 3],
    /// Nonzero residual as (basis index, value) pairs.
    pub residual: Vec<(usize, String)>,
}

#[derive(Serialize, Debug)]
pub struct JacobiJson {
    pub mode: String,
    pub checked: u64,
    pub failure_count_capped: bool,
    pub failures: Vec<FailingTripleJson>,
    pub passed: bool,
}

impl JacobiJson {
    pub fn new(r: &JacobiReport) -> Self {
        JacobiJson {
            mode: r.mode.clone(),
            checked: r.checked,
            failure_count_capped: r.truncated,
            failures: r
                .failures
                .iter()
                .map(|f| FailingTripleJson {
                    triple: [f.triple.0, f.triple.1, f.triple.2],
                    residual: f
                        .residual
                        .iter()
                        .map(|(i, c)| (i, format_scalar(c)))
                        .collect(),
                })
                .collect(),
            passed: r.passed(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct PairFullnessJson {
    pub alpha: Vec<u8>,
    pub beta: Vec<u8>,
    pub target: Vec<u8>,
    pub expected_dim: usize,
    pub rank: usize,
}

#[derive(Serialize, Debug)]
pub struct GradingJson {
    pub closure_violations: Vec<[usize; 3]>,
    pub pairs: Vec<PairFullnessJson>,
    pub passed: bool,
}

impl GradingJson {
    pub fn new(alg: &GradedAlgebra, r: &GradingReport) -> Self {
        let comps = alg.components();
        GradingJson {
            closure_violations: r
                .closure_violations
                .iter()
                .map(|&(i, j, k)| [i, j, k])
                .collect(),
            pairs: r
                .pairs
                .iter()
                .map(|p| PairFullnessJson {
                    alpha: comps[p.alpha].degree.residues().to_vec(),
                    beta: comps[p.beta].degree.residues().to_vec(),
                    target: comps[p.target].degree.residues().to_vec(),
                    expected_dim: p.expected,
                    rank: p.rank,
                })
                .collect(),
            passed: r.passed(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct VerifyJson {
    pub model: String,
    pub jacobi: JacobiJson,
    pub grading: GradingJson,
    pub passed: bool,
}

/// Constraint report entry: `{id, lhs_value, rhs_value}`; the report itself
/// is the JSON list of these.
#[derive(Serialize, Debug)]
pub struct ViolationJson {
    pub id: String,
    pub lhs_value: String,
    pub rhs_value: String,
}

pub fn violations_json(violations: &[Violation]) -> Vec<ViolationJson> {
    violations
        .iter()
        .map(|v| ViolationJson {
            id: v.id.clone(),
            lhs_value: format_scalar(&v.lhs),
            rhs_value: format_scalar(&v.rhs),
        })
        .collect()
}

#[derive(Serialize, Debug)]
pub struct KillingJson {
    pub model: String,
    pub dimension: usize,
    pub rank: usize,
    pub symmetric_checked: u64,
    pub symmetric_ok: bool,
    pub invariant_checked: u64,
    pub invariant_ok: bool,
    pub passed: bool,
}

impl KillingJson {
    pub fn new(model: &str, r: &KillingReport) -> Self {
        KillingJson {
            model: model.to_string(),
            dimension: r.dim,
            rank: r.rank,
            symmetric_checked: r.symmetric_checked,
            symmetric_ok: r.symmetric_ok,
            invariant_checked: r.invariant_checked,
            invariant_ok: r.invariant_ok,
            passed: r.passed(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct IdealJson {
    pub model: String,
    pub dimension: usize,
    pub seeds_checked: usize,
    pub min_dimension: usize,
    pub failures: Vec<(usize, usize)>,
    pub passed: bool,
}

impl IdealJson {
    pub fn new(model: &str, r: &SimplicityReport) -> Self {
        IdealJson {
            model: model.to_string(),
            dimension: r.dim,
            seeds_checked: r.seeds_checked,
            min_dimension: r.min_dimension,
            failures: r.failures.clone(),
            passed: r.passed(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct IsoJson {
    pub pairs_checked: u64,
    pub failures: Vec<[usize; 2]>,
    pub passed: bool,
}

impl IsoJson {
    pub fn new(r: &IsoReport) -> Self {
        IsoJson {
            pairs_checked: r.pairs_checked,
            failures: r.failures.iter().map(|f| [f.i, f.j]).collect(),
            passed: r.passed(),
        }
    }
}

/// Stable pretty rendering with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization");
    s.push('\n');
    s
}
