//! Exhaustive Jacobi verification of one model: all 2,573,000 unordered
//! basis triples, in exact arithmetic.
//!
//!     cargo run --release --example verify_jacobi [model]

use std::time::Instant;

use e8forge::assemble;
use e8forge::models::{canonical_scalars, model_spec, ModelId};
use e8forge::verify::{verify_jacobi, JacobiMode};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "z5".to_string());
    let id = ModelId::parse(&name).expect("model name");
    let alg = assemble(&model_spec(id, canonical_scalars(id)).unwrap()).unwrap();
    let start = Instant::now();
    let report = verify_jacobi(&alg, JacobiMode::Exhaustive, 5);
    println!(
        "{}: checked {} triples in {:.2}s -> {}",
        id.name(),
        report.checked,
        start.elapsed().as_secs_f64(),
        if report.passed() {
            "all Jacobi identities hold"
        } else {
            "FAILED"
        }
    );
    for f in &report.failures {
        println!("  failing triple {:?}", f.triple);
    }
}
