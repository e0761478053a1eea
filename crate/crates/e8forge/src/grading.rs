//! Grading specifications: the abelian group, the per-component tensor
//! shapes, and the per-pair bracket rules that assemble into a Lie algebra.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Scalar;
use crate::Error;

/// Element of a finite abelian group, a tuple of residues reduced into
/// [0, modulus) per cyclic factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement(Vec<u8>);

impl GroupElement {
    pub fn residues(&self) -> &[u8] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    /// Rendered as `(i)` or `(i,j)`.
    pub fn label(&self) -> String {
        let body: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        format!("({})", body.join(","))
    }

    /// Compact form without punctuation, e.g. `12` for (1,2); used in scalar
    /// names for the two-factor groups.
    pub fn compact(&self) -> String {
        self.0.iter().map(|r| r.to_string()).collect()
    }
}

/// Product of cyclic groups Z_{m1} x ... x Z_{mk}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradingGroup {
    moduli: Vec<u8>,
}

impl GradingGroup {
    pub fn new(moduli: Vec<u8>) -> Self {
        assert!(!moduli.is_empty() && moduli.iter().all(|&m| m >= 2));
        GradingGroup { moduli }
    }

    pub fn moduli(&self) -> &[u8] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    /// Builds an element, reducing each residue modulo its factor.
    pub fn element(&self, residues: &[i64]) -> GroupElement {
        assert_eq!(residues.len(), self.moduli.len());
        GroupElement(
            residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &m)| (r.rem_euclid(m as i64)) as u8)
                .collect(),
        )
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        )
    }

    pub fn double(&self, a: &GroupElement) -> GroupElement {
        self.add(a, a)
    }

    /// All elements in lexicographic order, identity first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![GroupElement(vec![0; self.moduli.len()])];
        loop {
            let mut next = out.last().unwrap().0.clone();
            let mut pos = next.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if next[pos] + 1 < self.moduli[pos] {
                    next[pos] += 1;
                    for r in next.iter_mut().skip(pos + 1) {
                        *r = 0;
                    }
                    break;
                }
            }
            out.push(GroupElement(next));
        }
    }

    pub fn nonzero_elements(&self) -> Vec<GroupElement> {
        self.elements()
            .into_iter()
            .filter(|g| !g.is_identity())
            .collect()
    }

    /// Canonical storage order for rule pairs: lexicographic.
    pub fn ordered_pair(
        &self,
        a: &GroupElement,
        b: &GroupElement,
    ) -> (GroupElement, GroupElement, bool) {
        if a <= b {
            (a.clone(), b.clone(), false)
        } else {
            (b.clone(), a.clone(), true)
        }
    }
}

fn binomial(n: u8, k: u8) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for t in 0..k as usize {
        acc = acc * (n as usize - t) / (t + 1);
    }
    acc
}

/// Per-slot exterior degrees of one non-neutral homogeneous component: slot s
/// carries Lambda^{d_s} of a space of dimension n_s.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentShape {
    degrees: Vec<u8>,
}

impl ComponentShape {
    pub fn new(degrees: Vec<u8>) -> Self {
        ComponentShape { degrees }
    }

    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    pub fn dim(&self, slot_dims: &[u8]) -> usize {
        self.degrees
            .iter()
            .zip(slot_dims)
            .map(|(&d, &n)| binomial(n, d))
            .product()
    }
}

/// How one pair of non-neutral components multiplies.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BracketRule {
    /// Slotwise star product with a single global coefficient.
    Star { coeff: String },
    /// Into the neutral component: sum over slots of
    /// `b^(s) [x_s, y_s] prod_{r != s} (x_r, y_r)`. Slots whose degree pair
    /// is (0, 0) contribute only their pairing factor and carry no name.
    DualSum { coeffs: Vec<Option<String>> },
}

impl BracketRule {
    pub fn scalar_names(&self) -> Vec<&str> {
        match self {
            BracketRule::Star { coeff } => vec![coeff.as_str()],
            BracketRule::DualSum { coeffs } => {
                coeffs.iter().flatten().map(|s| s.as_str()).collect()
            }
        }
    }
}

/// A complete graded-model specification: group, slot dimensions, component
/// shapes, rule table over canonically ordered pairs, and the scalar binding.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    pub group: GradingGroup,
    pub slot_dims: Vec<u8>,
    shapes: BTreeMap<GroupElement, ComponentShape>,
    rules: BTreeMap<(GroupElement, GroupElement), BracketRule>,
    pub scalars: BTreeMap<String, Scalar>,
}

impl ModelSpec {
    pub fn new(
        name: String,
        group: GradingGroup,
        slot_dims: Vec<u8>,
        shapes: BTreeMap<GroupElement, ComponentShape>,
        rules: BTreeMap<(GroupElement, GroupElement), BracketRule>,
        scalars: BTreeMap<String, Scalar>,
    ) -> Result<Self, Error> {
        let spec = ModelSpec {
            name,
            group,
            slot_dims,
            shapes,
            rules,
            scalars,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn shape(&self, g: &GroupElement) -> &ComponentShape {
        &self.shapes[g]
    }

    /// Rule for the ordered pair (a, b); the flag says whether the stored
    /// canonical order was swapped, in which case the bracket is negated.
    pub fn rule(&self, a: &GroupElement, b: &GroupElement) -> (&BracketRule, bool) {
        let (lo, hi, swapped) = self.group.ordered_pair(a, b);
        (&self.rules[&(lo, hi)], swapped)
    }

    pub fn rules(&self) -> impl Iterator<Item = (&(GroupElement, GroupElement), &BracketRule)> {
        self.rules.iter()
    }

    pub fn scalar(&self, name: &str) -> Result<&Scalar, Error> {
        self.scalars
            .get(name)
            .ok_or_else(|| Error::UnboundScalar(name.to_string()))
    }

    pub fn neutral_dim(&self) -> usize {
        self.slot_dims
            .iter()
            .map(|&n| (n as usize) * (n as usize) - 1)
            .sum()
    }

    pub fn total_dim(&self) -> usize {
        self.neutral_dim()
            + self
                .shapes
                .values()
                .map(|shape| shape.dim(&self.slot_dims))
                .sum::<usize>()
    }

    fn validate(&self) -> Result<(), Error> {
        let nonzero = self.group.nonzero_elements();
        for g in &nonzero {
            let shape = self.shapes.get(g).ok_or_else(|| {
                Error::Degree(format!("shape map misses component {}", g.label()))
            })?;
            if shape.degrees().len() != self.slot_dims.len() {
                return Err(Error::Dimension(format!(
                    "shape of {} has wrong slot count",
                    g.label()
                )));
            }
            for (&d, &n) in shape.degrees().iter().zip(&self.slot_dims) {
                if d > n {
                    return Err(Error::Degree(format!(
                        "shape of {} has degree {d} over dimension {n}",
                        g.label()
                    )));
                }
            }
        }
        for a in &nonzero {
            for b in &nonzero {
                if a > b {
                    continue;
                }
                let rule = self.rules.get(&(a.clone(), b.clone())).ok_or_else(|| {
                    Error::Degree(format!(
                        "rule table misses pair ({}, {})",
                        a.label(),
                        b.label()
                    ))
                })?;
                let is_dual_pair = self.group.add(a, b).is_identity();
                match rule {
                    BracketRule::Star { .. } if is_dual_pair => {
                        return Err(Error::Degree(format!(
                            "pair ({}, {}) sums to the identity but has a star rule",
                            a.label(),
                            b.label()
                        )));
                    }
                    BracketRule::DualSum { coeffs } => {
                        if !is_dual_pair {
                            return Err(Error::Degree(format!(
                                "pair ({}, {}) does not sum to the identity but has a dual-sum rule",
                                a.label(),
                                b.label()
                            )));
                        }
                        if coeffs.len() != self.slot_dims.len() {
                            return Err(Error::Dimension(format!(
                                "dual-sum rule for ({}, {}) has wrong slot count",
                                a.label(),
                                b.label()
                            )));
                        }
                        let da = self.shape(a).degrees();
                        for (s, c) in coeffs.iter().enumerate() {
                            if (da[s] == 0) != c.is_none() {
                                return Err(Error::Degree(format!(
                                    "dual-sum rule for ({}, {}): slot {s} name presence must match a nonzero degree",
                                    a.label(),
                                    b.label()
                                )));
                            }
                        }
                    }
                    _ => {}
                }
                for name in rule.scalar_names() {
                    let value = self.scalar(name)?;
                    if value.is_zero() {
                        return Err(Error::ZeroScalar(name.to_string()));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_arithmetic() {
        let g = GradingGroup::new(vec![2, 4]);
        assert_eq!(g.order(), 8);
        let a = g.element(&[1, 3]);
        let b = g.element(&[1, 2]);
        assert_eq!(g.add(&a, &b), g.element(&[0, 1]));
        assert_eq!(g.neg(&a), g.element(&[1, 1]));
        assert_eq!(g.element(&[-1, 7]), g.element(&[1, 3]));
        assert!(g.identity().is_identity());
    }

    #[test]
    fn elements_are_lex_sorted() {
        let g = GradingGroup::new(vec![3, 3]);
        let els = g.elements();
        assert_eq!(els.len(), 9);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(els[0], g.identity());
        assert_eq!(els[4].residues(), &[1, 1]);
    }

    #[test]
    fn shape_dims() {
        let shape = ComponentShape::new(vec![1, 2]);
        assert_eq!(shape.dim(&[5, 5]), 50);
        let shape = ComponentShape::new(vec![0, 4]);
        assert_eq!(shape.dim(&[2, 8]), 70);
    }
}
