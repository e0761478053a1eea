//! The scalar constraint systems: canonical solutions pass, and a one-scalar
//! perturbation is caught both by the checker and by the Jacobi identity.
//!
//!     cargo run --release --example constraint_check

use e8forge::assemble;
use e8forge::models::{canonical_scalars, check, constraints, model_spec, ModelId};
use e8forge::scalar::int;
use e8forge::verify::{verify_jacobi, JacobiMode};

fn main() {
    for id in ModelId::ALL {
        let n = constraints(id).len();
        let ok = check(id, &canonical_scalars(id)).unwrap().is_empty();
        println!(
            "{:>5}: {} equations, canonical solution {}",
            id.name(),
            n,
            if ok { "passes" } else { "FAILS" }
        );
    }

    // Break the single Z3 equation a11*a22 + b1 = 0.
    let mut scalars = canonical_scalars(ModelId::Z3);
    scalars.insert("b_1".into(), int(1));
    println!();
    println!("z3 with b_1 = 1:");
    for v in check(ModelId::Z3, &scalars).unwrap() {
        println!(
            "  violated {}  (lhs = {}, rhs = {})",
            v.id,
            e8forge::format_scalar(&v.lhs),
            e8forge::format_scalar(&v.rhs)
        );
    }
    let alg = assemble(&model_spec(ModelId::Z3, scalars).unwrap()).unwrap();
    let report = verify_jacobi(
        &alg,
        JacobiMode::Sampled {
            count: 50_000,
            seed: 1,
        },
        1,
    );
    match report.failures.first() {
        Some(f) => println!(
            "  Jacobi witness: triple {:?} with nonzero residual of {} terms",
            f.triple,
            f.residual.len()
        ),
        None => println!("  no witness found in {} samples", report.checked),
    }
}
