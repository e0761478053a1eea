//! Simplicity probe: the ideal generated by each basis vector saturates the
//! full 248 dimensions; a deliberately broken bracket leaves a proper ideal.
//!
//!     cargo run --release --example simplicity_probe [model]

use e8forge::assemble::{assemble, Element};
use e8forge::ideal::{ideal_closure, simplicity_probe};
use e8forge::models::{canonical_scalars, model_spec, ModelId};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "z6".to_string());
    let id = ModelId::parse(&name).expect("model name");
    let alg = assemble(&model_spec(id, canonical_scalars(id)).unwrap()).unwrap();

    let report = simplicity_probe(&alg);
    println!(
        "{}: ideal closure of each of the {} basis seeds -> min dimension {}",
        id.name(),
        report.seeds_checked,
        report.min_dimension
    );

    // Negative control: drop the constants between two inverse components of
    // the Z3 model. L_1 + L_2 becomes a proper ideal of the broken algebra.
    let alg = assemble(&model_spec(ModelId::Z3, canonical_scalars(ModelId::Z3)).unwrap()).unwrap();
    let broken = alg.zero_component_pair(1, 2);
    let seed = Element::basis(broken.components()[1].range.start);
    let dim = ideal_closure(&broken, &seed).unwrap();
    println!("z3 with [L_1, L_2] zeroed: closure of a graded seed = {dim} < 248");
}
