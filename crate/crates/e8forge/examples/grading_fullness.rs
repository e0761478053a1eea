//! Grading closure and fullness: every constant lands in the right
//! component, and the bracket of two components spans its full target.
//!
//!     cargo run --release --example grading_fullness [model]

use e8forge::assemble;
use e8forge::models::{canonical_scalars, model_spec, ModelId};
use e8forge::verify::verify_grading;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "z4".to_string());
    let id = ModelId::parse(&name).expect("model name");
    let alg = assemble(&model_spec(id, canonical_scalars(id)).unwrap()).unwrap();
    let report = verify_grading(&alg);
    println!(
        "{}: closure violations: {}",
        id.name(),
        report.closure_violations.len()
    );
    let comps = alg.components();
    for p in &report.pairs {
        let mark = if p.rank == p.expected { "ok " } else { "BAD" };
        println!(
            "  {mark} [{}, {}] -> {}  rank {}/{}",
            comps[p.alpha].degree.label(),
            comps[p.beta].degree.label(),
            comps[p.target].degree.label(),
            p.rank,
            p.expected
        );
    }
    println!(
        "inverse pairs land in the sl-slots acting nontrivially, everything else fills its component"
    );
}
