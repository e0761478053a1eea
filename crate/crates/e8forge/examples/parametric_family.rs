//! The 7-parameter solution family of the Z2 x Z4 model: free parameters in,
//! a complete checked assignment out, all the way to a sampled Jacobi run.
//!
//!     cargo run --release --example parametric_family

use e8forge::assemble;
use e8forge::models::{
    check, free_names, model_spec, parametric_assignment, ModelId, ScalarAssignment,
};
use e8forge::scalar::rat;
use e8forge::verify::{verify_jacobi, JacobiMode};

fn main() {
    let id = ModelId::Z2Z4;
    println!("free parameters: {:?}", free_names(id));

    let values: &[(i64, i64)] = &[(1, 1), (2, 1), (1, 3), (-1, 1), (3, 2), (1, 1), (-5, 7)];
    let mut free = ScalarAssignment::new();
    for (name, (num, den)) in free_names(id).iter().zip(values) {
        free.insert(name.to_string(), rat(*num, *den));
    }
    let scalars = parametric_assignment(id, &free).unwrap();
    println!("derived assignment ({} scalars):", scalars.len());
    for (name, value) in &scalars {
        println!("  {name} = {}", e8forge::format_scalar(value));
    }
    let violations = check(id, &scalars).unwrap();
    println!("constraint check: {} violations", violations.len());
    assert!(violations.is_empty());

    let alg = assemble(&model_spec(id, scalars).unwrap()).unwrap();
    let report = verify_jacobi(
        &alg,
        JacobiMode::Sampled {
            count: 10_000,
            seed: 7,
        },
        3,
    );
    println!(
        "sampled Jacobi on the assembled algebra: {} triples, {}",
        report.checked,
        if report.passed() {
            "all zero"
        } else {
            "FAILED"
        }
    );
}
