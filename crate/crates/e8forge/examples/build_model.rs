//! Assembles all six graded models with their canonical scalars and prints
//! the component dimension tables.
//!
//!     cargo run --release --example build_model

use e8forge::assemble;
use e8forge::models::{canonical_scalars, model_spec, ModelId};

fn main() {
    for id in ModelId::ALL {
        let spec = model_spec(id, canonical_scalars(id)).expect("canonical scalars bind");
        let alg = assemble(&spec).expect("assembly");
        let dims: Vec<String> = alg
            .components()
            .iter()
            .map(|c| format!("{}:{}", c.degree.label(), c.dim()))
            .collect();
        println!(
            "{:>5}  dim {}  components {}",
            id.name(),
            alg.dim(),
            dims.join(" ")
        );
        // A sample basis label and the first nonzero action on it.
        let g1 = alg.components()[1].range.start;
        let h = (0..alg.components()[0].dim())
            .find(|&h| !alg.bracket_basis(h, g1).is_empty())
            .unwrap();
        let rendered: Vec<String> = alg
            .bracket_basis(h, g1)
            .iter()
            .map(|(k, c)| {
                format!(
                    "{} {}",
                    e8forge::format_scalar(c),
                    alg.basis_label(*k as usize)
                )
            })
            .collect();
        println!(
            "       e.g. [{}, {}] = {}",
            alg.basis_label(h),
            alg.basis_label(g1),
            rendered.join(" + ")
        );
    }
}
