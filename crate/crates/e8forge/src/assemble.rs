//! Assembly of a graded Lie algebra from a model specification: canonical
//! basis enumeration and the sparse structure-constant tensor.
//!
//! Basis order is deterministic: the neutral component first (slot-major,
//! each slot in canonical sl-basis order), then the non-neutral components
//! with group elements sorted lexicographically and per-slot blades sorted by
//! mask value. The tensor is stored for all ordered pairs with
//! c_{ji} = -c_{ij} materialized and zero diagonal.

use std::collections::BTreeMap;
use std::ops::Range;

use num_traits::Zero;

use crate::exterior::{dual_bracket, sl_action, star, Blade, MultiVector, SlElement};
use crate::grading::{BracketRule, ComponentShape, GradingGroup, GroupElement, ModelSpec};
use crate::scalar::Scalar;
use crate::Error;

/// One homogeneous component of the assembled algebra.
#[derive(Clone, Debug)]
pub struct Component {
    pub degree: GroupElement,
    pub range: Range<usize>,
    /// Per-slot exterior degrees; empty for the neutral component.
    pub shape: Vec<u8>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.range.end - self.range.start
    }
}

/// Identity of one basis vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisVectorId {
    /// sl-basis element `index` of slot `slot` inside the neutral component.
    Neutral { slot: usize, index: usize },
    /// Tensor-product blade monomial of a non-neutral component.
    Graded {
        degree: GroupElement,
        masks: Vec<u16>,
    },
}

/// Sparse element in the basis of an assembled algebra.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<u32, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(i: usize) -> Self {
        let mut e = Element::zero();
        e.add_term(i as u32, crate::scalar::int(1));
        e
    }

    pub fn add_term(&mut self, i: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(i).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.terms.iter().map(|(&i, c)| (i as usize, c))
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.terms
            .get(&(i as u32))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c.clone();
        }
        out
    }
}

/// An assembled graded Lie algebra: indexed basis plus the sparse
/// structure-constant tensor, immutable after construction.
pub struct GradedAlgebra {
    pub model: String,
    group: GradingGroup,
    slot_dims: Vec<u8>,
    components: Vec<Component>,
    basis: Vec<BasisVectorId>,
    /// Component index of each basis vector.
    comp_of: Vec<u16>,
    /// Row (i, j) at index i * dim + j; entries sorted by target index.
    rows: Vec<Vec<(u32, Scalar)>>,
    dim: usize,
}

impl GradedAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn slot_dims(&self) -> &[u8] {
        &self.slot_dims
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, i: usize) -> usize {
        self.comp_of[i] as usize
    }

    pub fn degree_of(&self, i: usize) -> &GroupElement {
        &self.components[self.comp_of[i] as usize].degree
    }

    pub fn component_index(&self, g: &GroupElement) -> usize {
        self.components
            .iter()
            .position(|c| &c.degree == g)
            .expect("component of group element")
    }

    pub fn basis_id(&self, i: usize) -> &BasisVectorId {
        &self.basis[i]
    }

    /// Human-readable label, e.g. `sl[1].E_1_3` or `(1,2)|e_1|e_24|1`.
    pub fn basis_label(&self, i: usize) -> String {
        match &self.basis[i] {
            BasisVectorId::Neutral { slot, index } => {
                let n = self.slot_dims[*slot];
                format!("sl[{slot}].{}", SlElement::basis_label(n, *index))
            }
            BasisVectorId::Graded { degree, masks } => {
                let mut parts = vec![degree.label()];
                for (s, &mask) in masks.iter().enumerate() {
                    let blade = Blade::new(self.slot_dims[s], mask, false).unwrap();
                    parts.push(blade.label());
                }
                parts.join("|")
            }
        }
    }

    /// Structure constants of [b_i, b_j], sorted by target index.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, Scalar)] {
        &self.rows[i * self.dim + j]
    }

    /// Bilinear extension of the constant tensor.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, Error> {
        for (i, _) in x.iter().chain(y.iter()) {
            if i >= self.dim {
                return Err(Error::IndexOutOfRange(i, self.dim));
            }
        }
        let mut out = Element::zero();
        for (i, xc) in x.iter() {
            for (j, yc) in y.iter() {
                let prod = xc.clone() * yc.clone();
                for (k, c) in self.bracket_basis(i, j) {
                    out.add_term(*k, c.clone() * prod.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn component_dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim()).collect()
    }

    /// Copy with every constant between two components (both orders) dropped,
    /// as if the rule's scalar were zero. A negative-control utility: the
    /// result is generally not a Lie algebra.
    pub fn zero_component_pair(&self, a: usize, b: usize) -> GradedAlgebra {
        let mut rows = self.rows.clone();
        let ra = self.components[a].range.clone();
        let rb = self.components[b].range.clone();
        for i in ra.clone() {
            for j in rb.clone() {
                rows[i * self.dim + j].clear();
                rows[j * self.dim + i].clear();
            }
        }
        GradedAlgebra {
            model: self.model.clone(),
            group: self.group.clone(),
            slot_dims: self.slot_dims.clone(),
            components: self.components.clone(),
            basis: self.basis.clone(),
            comp_of: self.comp_of.clone(),
            rows,
            dim: self.dim,
        }
    }
}

/// Sorted masks of the given popcount within an n-bit space.
fn masks_of_degree(n: u8, degree: u8) -> Vec<u16> {
    (0u16..(1 << n))
        .filter(|m| m.count_ones() as u8 == degree)
        .collect()
}

struct ComponentLayout {
    /// Per-slot sorted mask lists.
    slot_masks: Vec<Vec<u16>>,
    /// Per-slot mask -> position lookup.
    slot_pos: Vec<Vec<usize>>,
    start: usize,
}

impl ComponentLayout {
    fn new(shape: &ComponentShape, slot_dims: &[u8], start: usize) -> Self {
        let slot_masks: Vec<Vec<u16>> = shape
            .degrees()
            .iter()
            .zip(slot_dims)
            .map(|(&d, &n)| masks_of_degree(n, d))
            .collect();
        let slot_pos = slot_masks
            .iter()
            .map(|masks| {
                let mut pos = vec![usize::MAX; 1 << 10];
                for (t, &m) in masks.iter().enumerate() {
                    pos[m as usize] = t;
                }
                pos
            })
            .collect();
        ComponentLayout {
            slot_masks,
            slot_pos,
            start,
        }
    }

    fn dim(&self) -> usize {
        self.slot_masks.iter().map(|m| m.len()).product()
    }

    /// Global basis index of a mask tuple.
    fn index_of(&self, masks: &[u16]) -> usize {
        let mut idx = 0usize;
        for (s, &m) in masks.iter().enumerate() {
            let pos = self.slot_pos[s][m as usize];
            debug_assert!(pos != usize::MAX);
            idx = idx * self.slot_masks[s].len() + pos;
        }
        self.start + idx
    }

    /// All mask tuples in index order (rightmost slot fastest).
    fn tuples(&self) -> Vec<Vec<u16>> {
        let mut out: Vec<Vec<u16>> = vec![Vec::new()];
        for masks in &self.slot_masks {
            let mut next = Vec::with_capacity(out.len() * masks.len());
            for prefix in &out {
                for &m in masks {
                    let mut t = prefix.clone();
                    t.push(m);
                    next.push(t);
                }
            }
            out = next;
        }
        out
    }
}

/// Computes the full structure-constant tensor of a model specification.
///
/// Constants come from three sources: the componentwise matrix commutator on
/// the neutral part, the slotwise Leibniz action of the neutral part on each
/// graded component, and the model's rule table between graded components.
pub fn assemble(spec: &ModelSpec) -> Result<GradedAlgebra, Error> {
    let slot_dims = spec.slot_dims.clone();
    let nonzero = spec.group.nonzero_elements();

    // Basis layout.
    let mut components = Vec::with_capacity(1 + nonzero.len());
    let mut basis = Vec::new();
    let neutral_dim = spec.neutral_dim();
    components.push(Component {
        degree: spec.group.identity(),
        range: 0..neutral_dim,
        shape: Vec::new(),
    });
    let mut slot_offset = Vec::with_capacity(slot_dims.len());
    {
        let mut at = 0usize;
        for (slot, &n) in slot_dims.iter().enumerate() {
            slot_offset.push(at);
            let count = SlElement::basis_len(n);
            for index in 0..count {
                basis.push(BasisVectorId::Neutral { slot, index });
            }
            at += count;
        }
        debug_assert_eq!(at, neutral_dim);
    }

    let mut layouts: BTreeMap<GroupElement, ComponentLayout> = BTreeMap::new();
    let mut at = neutral_dim;
    for g in &nonzero {
        let layout = ComponentLayout::new(spec.shape(g), &slot_dims, at);
        let dim = layout.dim();
        for masks in layout.tuples() {
            basis.push(BasisVectorId::Graded {
                degree: g.clone(),
                masks,
            });
        }
        components.push(Component {
            degree: g.clone(),
            range: at..at + dim,
            shape: spec.shape(g).degrees().to_vec(),
        });
        at += dim;
        layouts.insert(g.clone(), layout);
    }
    let dim = at;

    let mut comp_of = vec![0u16; dim];
    for (ci, comp) in components.iter().enumerate() {
        for i in comp.range.clone() {
            comp_of[i] = ci as u16;
        }
    }

    let mut rows: Vec<Vec<(u32, Scalar)>> = vec![Vec::new(); dim * dim];
    let push = |rows: &mut Vec<Vec<(u32, Scalar)>>, i: usize, j: usize, k: usize, c: Scalar| {
        if !c.is_zero() {
            rows[i * dim + j].push((k as u32, c));
        }
    };

    // Neutral x neutral: componentwise commutator, expanded over each slot's
    // canonical sl basis. Different slots commute.
    let sl_bases: Vec<Vec<SlElement>> = slot_dims.iter().map(|&n| SlElement::basis(n)).collect();
    for (slot, sl_basis) in sl_bases.iter().enumerate() {
        for a in 0..sl_basis.len() {
            for b in a + 1..sl_basis.len() {
                let fa = &sl_basis[a];
                let fb = &sl_basis[b];
                let comm = fa
                    .compose(fb)
                    .add(&fb.compose(fa).scale(&crate::scalar::int(-1)));
                let i = slot_offset[slot] + a;
                let j = slot_offset[slot] + b;
                for (t, c) in comm.expand_in_basis().into_iter().enumerate() {
                    push(&mut rows, i, j, slot_offset[slot] + t, c);
                }
            }
        }
    }

    // Neutral x graded: the slotwise Leibniz action.
    for g in &nonzero {
        let layout = &layouts[g];
        let g_start = layout.start;
        let tuples = layout.tuples();
        for (slot, sl_basis) in sl_bases.iter().enumerate() {
            let n = slot_dims[slot];
            for (t, f) in sl_basis.iter().enumerate() {
                let i = slot_offset[slot] + t;
                for (v_off, masks) in tuples.iter().enumerate() {
                    let blade = Blade::new(n, masks[slot], false)?;
                    let image = sl_action(f, &MultiVector::from_blade(blade))?;
                    for (b, c) in image.iter() {
                        let mut target = masks.clone();
                        target[slot] = b.mask();
                        let k = layout.index_of(&target);
                        push(&mut rows, i, g_start + v_off, k, c.clone());
                    }
                }
            }
        }
    }

    // Graded x graded through the rule table, canonical pair order.
    for (gi, g) in nonzero.iter().enumerate() {
        for h in &nonzero[gi..] {
            let (rule, swapped) = spec.rule(g, h);
            debug_assert!(!swapped);
            let sum = spec.group.add(g, h);
            let lg = &layouts[g];
            let lh = &layouts[h];
            let g_tuples = lg.tuples();
            let h_tuples = lh.tuples();
            for (xo, xm) in g_tuples.iter().enumerate() {
                let i = lg.start + xo;
                let j_from = if g == h { xo + 1 } else { 0 };
                for (yo, ym) in h_tuples.iter().enumerate().skip(j_from) {
                    let j = lh.start + yo;
                    debug_assert!(i < j);
                    apply_rule(
                        spec,
                        rule,
                        &slot_dims,
                        &slot_offset,
                        &layouts,
                        &sum,
                        g,
                        h,
                        xm,
                        ym,
                        |k, c| push(&mut rows, i, j, k, c),
                    )?;
                }
            }
        }
    }

    // Finalize: merge duplicate targets, sort, and materialize antisymmetry.
    for i in 0..dim {
        for j in i + 1..dim {
            let row = &mut rows[i * dim + j];
            if row.is_empty() {
                continue;
            }
            row.sort_by_key(|&(k, _)| k);
            let mut merged: Vec<(u32, Scalar)> = Vec::with_capacity(row.len());
            for (k, c) in row.drain(..) {
                match merged.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc += c,
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            let neg: Vec<(u32, Scalar)> = merged.iter().map(|(k, c)| (*k, -c.clone())).collect();
            rows[i * dim + j] = merged;
            rows[j * dim + i] = neg;
        }
    }

    Ok(GradedAlgebra {
        model: spec.name.clone(),
        group: spec.group.clone(),
        slot_dims,
        components,
        basis,
        comp_of,
        rows,
        dim,
    })
}

/// Applies one bracket rule to a pair of blade tuples, emitting (target,
/// coefficient) constants.
#[allow(clippy::too_many_arguments)]
fn apply_rule(
    spec: &ModelSpec,
    rule: &BracketRule,
    slot_dims: &[u8],
    slot_offset: &[usize],
    layouts: &BTreeMap<GroupElement, ComponentLayout>,
    sum: &GroupElement,
    g: &GroupElement,
    h: &GroupElement,
    xm: &[u16],
    ym: &[u16],
    mut emit: impl FnMut(usize, Scalar),
) -> Result<(), Error> {
    match rule {
        BracketRule::Star { coeff } => {
            let a = spec.scalar(coeff)?.clone();
            let target_layout = &layouts[sum];
            let expected = spec.shape(sum).degrees();
            let mut acc = a;
            let mut target = Vec::with_capacity(slot_dims.len());
            for (s, &n) in slot_dims.iter().enumerate() {
                let x = MultiVector::from_blade(Blade::new(n, xm[s], false)?);
                let y = MultiVector::from_blade(Blade::new(n, ym[s], false)?);
                let r = star(&x, &y)?;
                if r.degree() != expected[s] {
                    return Err(Error::WrongDegree(g.label(), h.label()));
                }
                let term = r.iter().next().map(|(b, c)| (b.mask(), c.clone()));
                match term {
                    None => return Ok(()),
                    Some((mask, c)) => {
                        acc *= c;
                        target.push(mask);
                    }
                }
            }
            emit(target_layout.index_of(&target), acc);
            Ok(())
        }
        BracketRule::DualSum { coeffs } => {
            // Pairing factor of every slot; the star of complementary (or
            // zero) degrees lands in degree 0.
            let mut factors = Vec::with_capacity(slot_dims.len());
            for (s, &n) in slot_dims.iter().enumerate() {
                let x = MultiVector::from_blade(Blade::new(n, xm[s], false)?);
                let y = MultiVector::from_blade(Blade::new(n, ym[s], false)?);
                let r = star(&x, &y)?;
                debug_assert_eq!(r.degree(), 0);
                factors.push(r.scalar_part());
            }
            for (s, name) in coeffs.iter().enumerate() {
                let Some(name) = name else { continue };
                let b = spec.scalar(name)?.clone();
                let mut weight = b;
                for (r, f) in factors.iter().enumerate() {
                    if r != s {
                        if f.is_zero() {
                            weight = Scalar::zero();
                            break;
                        }
                        weight *= f.clone();
                    }
                }
                if weight.is_zero() {
                    continue;
                }
                let n = slot_dims[s];
                let x = MultiVector::from_blade(Blade::new(n, xm[s], false)?);
                let y = MultiVector::from_blade(Blade::new(n, ym[s], false)?);
                let br = dual_bracket(&x, &y)?;
                for (t, c) in br.expand_in_basis().into_iter().enumerate() {
                    if !c.is_zero() {
                        emit(slot_offset[s] + t, c * weight.clone());
                    }
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{canonical_scalars, model_spec, ModelId};
    use crate::scalar::int;

    #[test]
    fn masks_are_sorted() {
        let m = masks_of_degree(4, 2);
        assert_eq!(m, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
    }

    #[test]
    fn inconsistent_shape_map_is_caught_at_assembly() {
        // A shape map whose target degree disagrees with the star product:
        // components (1) -> degree 3 and (2) -> degree 5 over one slot of
        // dimension 9. The (1,1) rule produces degree 6, not 5.
        use crate::grading::{ComponentShape, GradingGroup};
        use std::collections::BTreeMap;
        let group = GradingGroup::new(vec![3]);
        let g1 = group.element(&[1]);
        let g2 = group.element(&[2]);
        let mut shapes = BTreeMap::new();
        shapes.insert(g1.clone(), ComponentShape::new(vec![3]));
        shapes.insert(g2.clone(), ComponentShape::new(vec![5]));
        let mut rules = BTreeMap::new();
        rules.insert(
            (g1.clone(), g1.clone()),
            crate::grading::BracketRule::Star { coeff: "a".into() },
        );
        rules.insert(
            (g1.clone(), g2.clone()),
            crate::grading::BracketRule::DualSum {
                coeffs: vec![Some("b".into())],
            },
        );
        rules.insert(
            (g2.clone(), g2.clone()),
            crate::grading::BracketRule::Star { coeff: "a".into() },
        );
        let mut scalars = BTreeMap::new();
        scalars.insert("a".to_string(), int(1));
        scalars.insert("b".to_string(), int(-1));
        let spec =
            crate::grading::ModelSpec::new("broken".into(), group, vec![9], shapes, rules, scalars)
                .unwrap();
        match assemble(&spec) {
            Err(crate::Error::WrongDegree(a, b)) => {
                assert_eq!(a, "(1)");
                assert_eq!(b, "(1)");
            }
            Err(other) => panic!("expected a wrong-degree error, got {other:?}"),
            Ok(_) => panic!("expected a wrong-degree error, assembly succeeded"),
        }
    }

    #[test]
    fn z5_dimensions() {
        let spec = model_spec(ModelId::Z5, canonical_scalars(ModelId::Z5)).unwrap();
        let alg = assemble(&spec).unwrap();
        assert_eq!(alg.dim(), 248);
        assert_eq!(alg.component_dims(), vec![48, 50, 50, 50, 50]);
    }

    #[test]
    fn antisymmetry_and_zero_diagonal() {
        let spec = model_spec(ModelId::Z4, canonical_scalars(ModelId::Z4)).unwrap();
        let alg = assemble(&spec).unwrap();
        for i in 0..alg.dim() {
            assert!(alg.bracket_basis(i, i).is_empty());
            for j in (i + 1)..alg.dim() {
                let fwd = alg.bracket_basis(i, j);
                let bwd = alg.bracket_basis(j, i);
                assert_eq!(fwd.len(), bwd.len());
                for ((k1, c1), (k2, c2)) in fwd.iter().zip(bwd) {
                    assert_eq!(k1, k2);
                    assert_eq!(c1.clone() + c2.clone(), int(0));
                }
            }
        }
    }

    #[test]
    fn bracket_of_element_with_itself_vanishes() {
        let spec = model_spec(ModelId::Z3, canonical_scalars(ModelId::Z3)).unwrap();
        let alg = assemble(&spec).unwrap();
        for i in [0usize, 40, 100, 200, 247] {
            let x = Element::basis(i);
            assert!(alg.bracket(&x, &x).unwrap().is_zero());
        }
        let mut x = Element::basis(3);
        x.add_term(150, crate::scalar::rat(2, 7));
        assert!(alg.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn neutral_action_stays_in_component() {
        let spec = model_spec(ModelId::Z6, canonical_scalars(ModelId::Z6)).unwrap();
        let alg = assemble(&spec).unwrap();
        let neutral = &alg.components()[0];
        for h in neutral.range.clone().step_by(7) {
            for comp in &alg.components()[1..] {
                for x in comp.range.clone().step_by(11) {
                    for (k, _) in alg.bracket_basis(h, x) {
                        assert_eq!(alg.component_of(*k as usize), alg.component_of(x));
                    }
                }
            }
        }
    }

    #[test]
    fn z4_bracket_example() {
        // [f_1 (x) e_12, f_2 (x) e_34] = -(1 (x) e_1234) at canonical scalars.
        let spec = model_spec(ModelId::Z4, canonical_scalars(ModelId::Z4)).unwrap();
        let alg = assemble(&spec).unwrap();
        let l1 = &alg.components()[1];
        assert_eq!(l1.degree.residues(), &[1]);
        // Slot masks: U-slot e_1 is mask 0b01, e_2 is 0b10; W-slot e_12 is
        // 0b0011, e_34 is 0b1100.
        let find = |masks: &[u16]| {
            (l1.range.clone())
                .find(|&i| matches!(alg.basis_id(i), BasisVectorId::Graded { masks: m, .. } if m == masks))
                .unwrap()
        };
        let x = find(&[0b01, 0b0011]);
        let y = find(&[0b10, 0b1100]);
        let row = alg.bracket_basis(x, y);
        assert_eq!(row.len(), 1);
        let (k, c) = &row[0];
        assert_eq!(c, &int(-1));
        match alg.basis_id(*k as usize) {
            BasisVectorId::Graded { degree, masks } => {
                assert_eq!(degree.residues(), &[2]);
                assert_eq!(masks, &vec![0b00u16, 0b1111]);
            }
            other => panic!("unexpected target {other:?}"),
        }
    }
}
