//! Killing form of an assembled model: exact symmetry and invariance spot
//! checks, a few sample values, and the exact rank.
//!
//!     cargo run --release --example killing_form [model]

use e8forge::assemble;
use e8forge::assemble::Element;
use e8forge::killing::{verify_killing, Killing};
use e8forge::models::{canonical_scalars, model_spec, ModelId};
use num_traits::Zero;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "z3".to_string());
    let id = ModelId::parse(&name).expect("model name");
    let alg = assemble(&model_spec(id, canonical_scalars(id)).unwrap()).unwrap();

    let killing = Killing::new(&alg);
    println!("{}: sample Killing values", id.name());
    // kappa pairs a component only with its inverse; show one nonzero entry
    // per component alongside a cross-component zero.
    for comp in alg.components() {
        let i = comp.range.start;
        let j = (0..alg.dim())
            .find(|&j| !killing.basis_entry(i, j).is_zero())
            .unwrap();
        println!(
            "  k({}, {}) = {}",
            alg.basis_label(i),
            alg.basis_label(j),
            e8forge::format_scalar(killing.basis_entry(i, j))
        );
    }
    println!(
        "  k({}, {}) = {}  (components do not pair)",
        alg.basis_label(0),
        alg.basis_label(alg.components()[1].range.start),
        e8forge::format_scalar(killing.basis_entry(0, alg.components()[1].range.start))
    );
    let x = Element::basis(3);
    let y = Element::basis(200);
    println!(
        "  k(b_3, b_200) = {} = k(b_200, b_3) = {}",
        e8forge::format_scalar(&killing.eval(&x, &y)),
        e8forge::format_scalar(&killing.eval(&y, &x))
    );

    let report = verify_killing(&alg, 1_000, 42);
    println!(
        "symmetry on {} samples: {}; invariance on {} samples: {}; rank = {}",
        report.symmetric_checked,
        report.symmetric_ok,
        report.invariant_checked,
        report.invariant_ok,
        report.rank
    );
}
