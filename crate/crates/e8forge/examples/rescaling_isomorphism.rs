//! Diagonal rescaling between scalar solutions of the Z5 model: transform
//! the canonical scalars along per-component multipliers and verify that the
//! diagonal map preserves every basis bracket.
//!
//!     cargo run --release --example rescaling_isomorphism

use std::collections::BTreeMap;

use e8forge::models::{canonical_scalars, check, rescaling_map, ModelId, RescalingMap};
use e8forge::scalar::int;
use e8forge::verify::verify_isomorphism;

fn main() {
    let id = ModelId::Z5;
    let group = id.group();
    let src = canonical_scalars(id);

    // alpha_i = 2^i on the nonzero components, alpha_0 = 1.
    let mut mult = BTreeMap::new();
    for g in group.nonzero_elements() {
        let i = g.residues()[0] as u32;
        mult.insert(g, int(1i64 << i));
    }
    let alphas = RescalingMap::new(id, mult).unwrap();
    let dst = rescaling_map(id, &src, &alphas).unwrap();

    println!("transformed scalars (dst = src * a_i a_j / a_{{i+j}}):");
    for (name, value) in &dst {
        println!("  {name} = {}", e8forge::format_scalar(value));
    }
    let violations = check(id, &dst).unwrap();
    println!("constraint check on dst: {} violations", violations.len());

    let report = verify_isomorphism(id, &src, &dst, &alphas).unwrap();
    println!(
        "bracket preservation of x -> a_deg(x) x on {} basis pairs: {}",
        report.pairs_checked,
        if report.passed() { "exact" } else { "FAILED" }
    );

    // Identity multipliers verify each model against itself.
    for id in ModelId::ALL {
        let src = canonical_scalars(id);
        let r = verify_isomorphism(id, &src, &src, &RescalingMap::identity(id)).unwrap();
        println!(
            "{:>5}: identity map {}",
            id.name(),
            if r.passed() { "ok" } else { "FAILED" }
        );
    }
}
