//! Structural invariants of the assembled algebras beyond the acceptance
//! criteria: irreducibility of each graded component under the neutral
//! part, and skew-consistency of the bracket rules on diagonal component
//! pairs, recomputed here straight from the exterior products.

use e8forge::assemble::{assemble, Element, GradedAlgebra};
use e8forge::grading::BracketRule;
use e8forge::ideal::neutral_module_closure;
use e8forge::models::{canonical_scalars, model_spec, ModelId};
use e8forge::scalar::{int, Scalar};
use e8forge::{dual_bracket, star, Blade, ModelSpec, MultiVector, SlElement};
use rayon::prelude::*;

fn canonical(id: ModelId) -> GradedAlgebra {
    assemble(&model_spec(id, canonical_scalars(id)).unwrap()).unwrap()
}

fn masks_for(deg: u8, n: u8) -> Vec<u16> {
    (0u16..(1 << n))
        .filter(|m| m.count_ones() as u8 == deg)
        .collect()
}

/// All blade tuples of a component shape.
fn tuples(spec: &ModelSpec, shape: &[u8]) -> Vec<Vec<u16>> {
    let mut out: Vec<Vec<u16>> = vec![Vec::new()];
    for (&d, &n) in shape.iter().zip(&spec.slot_dims) {
        let masks = masks_for(d, n);
        let mut next = Vec::with_capacity(out.len() * masks.len());
        for prefix in &out {
            for &m in &masks {
                let mut t = prefix.clone();
                t.push(m);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

#[test]
fn every_graded_component_is_irreducible_under_the_neutral_part() {
    // The neutral submodule generated by any single basis vector of a
    // non-neutral component spans that whole component (exact rank).
    for id in ModelId::ALL {
        let alg = canonical(id);
        for comp in &alg.components()[1..] {
            let dims: Vec<usize> = comp
                .range
                .clone()
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|i| neutral_module_closure(&alg, &Element::basis(i)).unwrap())
                .collect();
            for (off, d) in dims.iter().enumerate() {
                assert_eq!(
                    *d,
                    comp.dim(),
                    "{}: component {} seed {} generated a {}-dim submodule",
                    id.name(),
                    comp.degree.label(),
                    comp.range.start + off,
                    d
                );
            }
        }
    }
}

/// Star rule on one pair of blade tuples: target masks and the total
/// coefficient, or `None` when some slot star vanishes.
fn star_output(spec: &ModelSpec, name: &str, xm: &[u16], ym: &[u16]) -> Option<(Vec<u16>, Scalar)> {
    let mut coeff = spec.scalar(name).unwrap().clone();
    let mut target = Vec::new();
    for (s, &n) in spec.slot_dims.iter().enumerate() {
        let x = MultiVector::from_blade(Blade::new(n, xm[s], false).unwrap());
        let y = MultiVector::from_blade(Blade::new(n, ym[s], false).unwrap());
        let r = star(&x, &y).unwrap();
        let term = r.iter().next().map(|(b, c)| (b.mask(), c.clone()))?;
        coeff *= term.1;
        target.push(term.0);
    }
    Some((target, coeff))
}

/// Dual-sum rule on one pair of blade tuples: one sl matrix per slot
/// (zero for unnamed slots).
fn dual_sum_output(
    spec: &ModelSpec,
    coeffs: &[Option<String>],
    xm: &[u16],
    ym: &[u16],
) -> Vec<SlElement> {
    let mut out = Vec::new();
    for (s, name) in coeffs.iter().enumerate() {
        let n = spec.slot_dims[s];
        let Some(name) = name else {
            out.push(SlElement::zero(n));
            continue;
        };
        let mut weight = spec.scalar(name).unwrap().clone();
        for (r, &nr) in spec.slot_dims.iter().enumerate() {
            if r == s {
                continue;
            }
            let x = MultiVector::from_blade(Blade::new(nr, xm[r], false).unwrap());
            let y = MultiVector::from_blade(Blade::new(nr, ym[r], false).unwrap());
            weight *= star(&x, &y).unwrap().scalar_part();
        }
        let x = MultiVector::from_blade(Blade::new(n, xm[s], false).unwrap());
        let y = MultiVector::from_blade(Blade::new(n, ym[s], false).unwrap());
        out.push(dual_bracket(&x, &y).unwrap().scale(&weight));
    }
    out
}

#[test]
fn diagonal_star_rules_are_skew() {
    // On a diagonal pair (g, g) the star rule must satisfy
    // rule(y, x) = -rule(x, y) and rule(x, x) = 0; exhausted over all blade
    // tuple pairs of the component.
    for id in ModelId::ALL {
        let spec = model_spec(id, canonical_scalars(id)).unwrap();
        for ((a, b), rule) in spec.rules() {
            if a != b {
                continue;
            }
            let BracketRule::Star { coeff } = rule else {
                continue;
            };
            let shape = spec.shape(a).degrees().to_vec();
            let all = tuples(&spec, &shape);
            for xm in &all {
                assert!(
                    star_output(&spec, coeff, xm, xm).is_none(),
                    "{}: rule on ({0:?}, {0:?}) is nonzero",
                    id.name()
                );
                for ym in &all {
                    match (
                        star_output(&spec, coeff, xm, ym),
                        star_output(&spec, coeff, ym, xm),
                    ) {
                        (None, None) => {}
                        (Some((tf, cf)), Some((tb, cb))) => {
                            assert_eq!(tf, tb);
                            assert_eq!(
                                cf,
                                -cb,
                                "{}: pair ({}, {})",
                                id.name(),
                                a.label(),
                                b.label()
                            );
                        }
                        (f, bwd) => panic!(
                            "{}: asymmetric vanishing on ({}, {}): {f:?} vs {bwd:?}",
                            id.name(),
                            a.label(),
                            b.label()
                        ),
                    }
                }
            }
        }
    }
}

#[test]
fn diagonal_dual_sum_rules_are_skew() {
    // Same skewness statement for the dual-sum rules of components that are
    // their own inverse, slot by slot.
    for id in ModelId::ALL {
        let spec = model_spec(id, canonical_scalars(id)).unwrap();
        for ((a, b), rule) in spec.rules() {
            if a != b {
                continue;
            }
            let BracketRule::DualSum { coeffs } = rule else {
                continue;
            };
            let shape = spec.shape(a).degrees().to_vec();
            let all = tuples(&spec, &shape);
            for xm in &all {
                let same = dual_sum_output(&spec, coeffs, xm, xm);
                for (s, f) in same.iter().enumerate() {
                    assert!(
                        f.is_zero(),
                        "{}: slot {s} of ({}, {}) on equal tuples",
                        id.name(),
                        a.label(),
                        b.label()
                    );
                }
                for ym in &all {
                    let fwd = dual_sum_output(&spec, coeffs, xm, ym);
                    let bwd = dual_sum_output(&spec, coeffs, ym, xm);
                    for (s, (f, g)) in fwd.iter().zip(&bwd).enumerate() {
                        assert_eq!(
                            *f,
                            g.scale(&int(-1)),
                            "{}: dual pair ({}, {}), slot {s}",
                            id.name(),
                            a.label(),
                            b.label()
                        );
                    }
                }
            }
        }
    }
}
