//! Tour of the exterior-algebra products the whole construction is built
//! from: wedge, volume-form dual, contraction, star, the scalar form and the
//! sl(V)-valued bracket.
//!
//!     cargo run --example exterior_products

use e8forge::scalar::int;
use e8forge::{
    contract, dual_bracket, form, sl_action, star, tilde, wedge, MultiVector, SlElement,
};

fn basis(n: u8, idx: &[u8]) -> MultiVector {
    MultiVector::basis(n, idx).unwrap()
}

fn main() {
    let n = 5;
    let e1 = basis(n, &[1]);
    let e2 = basis(n, &[2]);
    let e12 = basis(n, &[1, 2]);
    let e123 = basis(n, &[1, 2, 3]);
    let e345 = basis(n, &[3, 4, 5]);
    let e2345 = basis(n, &[2, 3, 4, 5]);

    println!("ambient dimension n = {n}, volume normalized by phi(e_12345) = 1");
    println!();
    println!(
        "wedge:       e_1 ^ e_2             = {}",
        wedge(&e1, &e2).unwrap()
    );
    println!(
        "wedge:       e_2 ^ e_1             = {}",
        wedge(&e2, &e1).unwrap()
    );
    println!(
        "tilde:       ~e_123                = {}",
        tilde(&e123).unwrap()
    );
    println!(
        "tilde:       ~e_13                 = {}",
        tilde(&basis(n, &[1, 3])).unwrap()
    );
    println!(
        "contract:    e_123 . e^2           = {}",
        contract(&e123, &MultiVector::term(n, int(1), &[2], true).unwrap()).unwrap()
    );
    println!(
        "star (low):  e_1 * e_2             = {}",
        star(&e1, &e2).unwrap()
    );
    println!(
        "star (high): e_123 * e_345         = {}",
        star(&e123, &e345).unwrap()
    );
    println!(
        "form:        (e_12, e_345)         = {}",
        form(&e12, &e345).unwrap()
    );
    println!(
        "form:        (e_1, e_2345)         = {}",
        form(&e1, &e2345).unwrap()
    );
    println!();

    let br = dual_bracket(&e12, &e345).unwrap();
    println!("dualized bracket [e_12, e_345] (a traceless 5x5 matrix):");
    for i in 1..=n {
        let row: Vec<String> = (1..=n)
            .map(|j| e8forge::format_scalar(br.entry(i, j)))
            .collect();
        println!("  [{}]", row.join(", "));
    }
    println!();

    // Its defining property: tr(f . [x, y]) = (f.x, y) for all traceless f.
    let f = SlElement::e(n, 2, 4);
    let lhs = f.trace_product(&br);
    let rhs = form(&sl_action(&f, &e12).unwrap(), &e345).unwrap();
    println!(
        "defining identity with f = E_2_4: tr(f.[x,y]) = {} = (f.x, y) = {}",
        e8forge::format_scalar(&lhs),
        e8forge::format_scalar(&rhs)
    );
}
