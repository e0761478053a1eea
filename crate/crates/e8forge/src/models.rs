//! The six concrete graded models of e8: component shapes, bracket-rule
//! tables, scalar constraint systems, canonical and parametric solutions, and
//! the diagonal rescaling maps between solutions.
//!
//! Scalar names are ASCII: `a_11`, `b1_2` (superscript after the underscore),
//! `ap_23` / `app_03` for primed and double-primed families, and
//! `a_01_10` / `b_01_2` for the two-factor groups where subscripts are group
//! elements written as digit pairs.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::grading::{BracketRule, ComponentShape, GradingGroup, GroupElement, ModelSpec};
use crate::scalar::{int, Scalar};
use crate::Error;

/// Map from scalar name to its exact rational value. Every bound value must
/// be nonzero.
pub type ScalarAssignment = BTreeMap<String, Scalar>;

/// The six graded models, named by grading group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelId {
    /// Z3 grading with neutral part sl(9).
    Z3,
    /// Z4 grading with neutral part sl(2) + sl(8).
    Z4,
    /// Z5 grading with neutral part sl(5) + sl(5).
    Z5,
    /// Z6 grading with neutral part sl(2) + sl(3) + sl(6).
    Z6,
    /// Z3 x Z3 grading with neutral part 4 sl(3).
    Z3Sq,
    /// Z2 x Z4 grading with neutral part 2 sl(2) + 2 sl(4).
    Z2Z4,
}

impl ModelId {
    pub const ALL: [ModelId; 6] = [
        ModelId::Z3,
        ModelId::Z4,
        ModelId::Z5,
        ModelId::Z6,
        ModelId::Z3Sq,
        ModelId::Z2Z4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Z3 => "z3",
            ModelId::Z4 => "z4",
            ModelId::Z5 => "z5",
            ModelId::Z6 => "z6",
            ModelId::Z3Sq => "z3sq",
            ModelId::Z2Z4 => "z2z4",
        }
    }

    pub fn parse(name: &str) -> Result<Self, Error> {
        match name {
            "z3" => Ok(ModelId::Z3),
            "z4" => Ok(ModelId::Z4),
            "z5" => Ok(ModelId::Z5),
            "z6" => Ok(ModelId::Z6),
            "z3sq" => Ok(ModelId::Z3Sq),
            "z2z4" => Ok(ModelId::Z2Z4),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }

    pub fn group(self) -> GradingGroup {
        match self {
            ModelId::Z3 => GradingGroup::new(vec![3]),
            ModelId::Z4 => GradingGroup::new(vec![4]),
            ModelId::Z5 => GradingGroup::new(vec![5]),
            ModelId::Z6 => GradingGroup::new(vec![6]),
            ModelId::Z3Sq => GradingGroup::new(vec![3, 3]),
            ModelId::Z2Z4 => GradingGroup::new(vec![2, 4]),
        }
    }

    pub fn slot_dims(self) -> Vec<u8> {
        match self {
            ModelId::Z3 => vec![9],
            ModelId::Z4 => vec![2, 8],
            ModelId::Z5 => vec![5, 5],
            ModelId::Z6 => vec![2, 3, 6],
            ModelId::Z3Sq => vec![3, 3, 3, 3],
            ModelId::Z2Z4 => vec![2, 2, 4, 4],
        }
    }

    /// Per-slot exterior degrees of the component at g.
    fn shape_degrees(self, g: &GroupElement) -> Vec<u8> {
        let r = g.residues();
        match self {
            ModelId::Z3 => vec![((3 * r[0] as u32) % 9) as u8],
            ModelId::Z4 => vec![r[0] % 2, ((2 * r[0] as u32) % 8) as u8],
            ModelId::Z5 => vec![r[0] % 5, ((2 * r[0] as u32) % 5) as u8],
            ModelId::Z6 => vec![r[0] % 2, r[0] % 3, r[0] % 6],
            ModelId::Z3Sq => {
                let (i, j) = (r[0] as u32, r[1] as u32);
                vec![
                    (i % 3) as u8,
                    ((i + j) % 3) as u8,
                    ((i + 2 * j) % 3) as u8,
                    (j % 3) as u8,
                ]
            }
            ModelId::Z2Z4 => {
                let (i, j) = (r[0] as u32, r[1] as u32);
                vec![
                    (i % 2) as u8,
                    ((i + j) % 2) as u8,
                    ((2 * i + j) % 4) as u8,
                    (j % 4) as u8,
                ]
            }
        }
    }

    /// Scalar name of the star rule at the canonically ordered pair (a, b).
    fn star_name(self, a: &GroupElement, b: &GroupElement) -> String {
        match self {
            ModelId::Z3 | ModelId::Z4 | ModelId::Z5 | ModelId::Z6 => {
                format!("a_{}{}", a.residues()[0], b.residues()[0])
            }
            ModelId::Z3Sq => format!("a_{}_{}", a.compact(), b.compact()),
            ModelId::Z2Z4 => {
                let (x, y) = (a.residues(), b.residues());
                match (x[0], y[0]) {
                    (0, 0) => format!("a_{}{}", x[1], y[1]),
                    (0, 1) => format!("ap_{}{}", x[1], y[1]),
                    (1, 1) => format!("app_{}{}", x[1], y[1]),
                    _ => unreachable!("pairs are stored in lex order"),
                }
            }
        }
    }

    /// Scalar name of the slot-s coefficient of the dual-sum rule whose
    /// canonical representative component is a.
    fn dual_name(self, a: &GroupElement, slot: usize) -> String {
        match self {
            ModelId::Z3 => format!("b_{}", a.residues()[0]),
            ModelId::Z4 | ModelId::Z5 | ModelId::Z6 => {
                format!("b{}_{}", a.residues()[0], slot + 1)
            }
            ModelId::Z3Sq => format!("b_{}_{}", a.compact(), slot + 1),
            ModelId::Z2Z4 => {
                let r = a.residues();
                if r[0] == 0 {
                    format!("b{}_{}", r[1], slot + 1)
                } else {
                    format!("bp{}_{}", r[1], slot + 1)
                }
            }
        }
    }
}

/// Builds the full model specification with the given scalar binding.
/// Fails if a referenced scalar is missing or zero.
pub fn model_spec(id: ModelId, scalars: ScalarAssignment) -> Result<ModelSpec, Error> {
    let group = id.group();
    let slot_dims = id.slot_dims();
    let nonzero = group.nonzero_elements();

    let mut shapes = BTreeMap::new();
    for g in &nonzero {
        shapes.insert(g.clone(), ComponentShape::new(id.shape_degrees(g)));
    }

    let mut rules = BTreeMap::new();
    for (i, a) in nonzero.iter().enumerate() {
        for b in &nonzero[i..] {
            let rule = if group.add(a, b).is_identity() {
                let degrees = id.shape_degrees(a);
                let coeffs = degrees
                    .iter()
                    .enumerate()
                    .map(|(s, &d)| {
                        if d == 0 {
                            None
                        } else {
                            Some(id.dual_name(a, s))
                        }
                    })
                    .collect();
                BracketRule::DualSum { coeffs }
            } else {
                BracketRule::Star {
                    coeff: id.star_name(a, b),
                }
            };
            rules.insert((a.clone(), b.clone()), rule);
        }
    }

    ModelSpec::new(
        id.name().to_string(),
        group,
        slot_dims,
        shapes,
        rules,
        scalars,
    )
}

/// All scalar names a model binds, in sorted order.
pub fn scalar_names(id: ModelId) -> Vec<String> {
    let group = id.group();
    let nonzero = group.nonzero_elements();
    let mut names = std::collections::BTreeSet::new();
    for (i, a) in nonzero.iter().enumerate() {
        for b in &nonzero[i..] {
            if group.add(a, b).is_identity() {
                for (s, &d) in id.shape_degrees(a).iter().enumerate() {
                    if d != 0 {
                        names.insert(id.dual_name(a, s));
                    }
                }
            } else {
                names.insert(id.star_name(a, b));
            }
        }
    }
    names.into_iter().collect()
}

/// The canonical solution of each model's constraint system.
pub fn canonical_scalars(id: ModelId) -> ScalarAssignment {
    let mut out = ScalarAssignment::new();
    let mut set = |names: &[&str], v: i64| {
        for n in names {
            out.insert(n.to_string(), int(v));
        }
    };
    match id {
        ModelId::Z3 => {
            set(&["a_11", "a_22"], 1);
            set(&["b_1"], -1);
        }
        ModelId::Z4 => {
            set(&["a_11", "a_12", "a_23", "a_33"], 1);
            set(&["b1_1", "b1_2", "b2_2"], -1);
        }
        ModelId::Z5 => {
            set(
                &[
                    "a_11", "a_22", "a_33", "a_34", "a_44", "a_12", "a_13", "a_24",
                ],
                1,
            );
            set(&["b1_1", "b1_2", "b2_1", "b2_2"], -1);
        }
        ModelId::Z6 => {
            set(
                &[
                    "a_11", "a_13", "a_22", "a_23", "a_25", "a_34", "a_44", "a_45", "b3_1", "b3_3",
                ],
                1,
            );
            set(
                &[
                    "a_12", "a_14", "a_35", "a_55", "b1_1", "b1_2", "b1_3", "b2_2", "b2_3",
                ],
                -1,
            );
        }
        ModelId::Z3Sq => {
            for name in scalar_names(id) {
                let v = if name.starts_with("b_") {
                    -1
                } else {
                    // Diagonal a_g_g scalars are -1, cross scalars 1.
                    let body = name.trim_start_matches("a_");
                    let (lo, hi) = body.split_once('_').unwrap();
                    if lo == hi {
                        -1
                    } else {
                        1
                    }
                };
                out.insert(name, int(v));
            }
        }
        ModelId::Z2Z4 => {
            set(
                &[
                    "a_11", "a_12", "ap_10", "ap_11", "ap_12", "ap_13", "ap_20", "ap_22", "ap_30",
                    "ap_31", "ap_32", "ap_33", "app_01", "app_12", "app_33", "b1_2", "b1_3",
                    "b1_4", "b2_3", "b2_4", "bp0_1", "bp0_2", "bp0_3",
                ],
                1,
            );
            set(
                &[
                    "a_23", "ap_21", "ap_23", "a_33", "app_02", "app_03", "app_11", "app_23",
                    "bp1_1", "bp1_3", "bp1_4", "bp2_1", "bp2_2", "bp2_4",
                ],
                -1,
            );
        }
    }
    out
}

/// A signed product of scalar names.
#[derive(Clone, Debug)]
pub struct Monomial {
    pub sign: i8,
    pub factors: Vec<String>,
}

impl Monomial {
    fn new(sign: i8, factors: &[&str]) -> Self {
        Monomial {
            sign,
            factors: factors.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn eval(&self, scalars: &ScalarAssignment) -> Result<Scalar, Error> {
        let mut acc = int(self.sign as i64);
        for f in &self.factors {
            let v = scalars
                .get(f)
                .ok_or_else(|| Error::UnboundScalar(f.clone()))?;
            acc *= v.clone();
        }
        Ok(acc)
    }

    pub fn render(&self) -> String {
        let body = self.factors.join("*");
        if self.sign < 0 {
            format!("-{body}")
        } else {
            body
        }
    }

    pub fn names(&self) -> &[String] {
        &self.factors
    }
}

/// One quadratic equation of a model's scalar constraint system,
/// `left = right`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub id: String,
    pub left: Monomial,
    pub right: Monomial,
}

impl Constraint {
    fn new(left: Monomial, right: Monomial) -> Self {
        let id = format!("{}={}", left.render(), right.render());
        Constraint { id, left, right }
    }

    pub fn holds(&self, scalars: &ScalarAssignment) -> Result<bool, Error> {
        Ok(self.left.eval(scalars)? == self.right.eval(scalars)?)
    }

    pub fn scalar_names(&self) -> Vec<&str> {
        self.left
            .names()
            .iter()
            .chain(self.right.names())
            .map(|s| s.as_str())
            .collect()
    }
}

/// A violated constraint with both evaluated sides.
#[derive(Clone, Debug)]
pub struct Violation {
    pub id: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

fn chain(out: &mut Vec<Constraint>, monomials: &[Monomial]) {
    for w in monomials.windows(2) {
        out.push(Constraint::new(w[0].clone(), w[1].clone()));
    }
}

fn m(sign: i8, factors: &[&str]) -> Monomial {
    Monomial::new(sign, factors)
}

/// The model's scalar constraint system, equivalent to the Jacobi identity
/// for nonzero scalars.
pub fn constraints(id: ModelId) -> Vec<Constraint> {
    let mut out = Vec::new();
    match id {
        ModelId::Z3 => {
            out.push(Constraint {
                id: "a11*a22+b1=0".to_string(),
                left: m(1, &["a_11", "a_22"]),
                right: m(-1, &["b_1"]),
            });
        }
        ModelId::Z4 => {
            chain(
                &mut out,
                &[
                    m(1, &["b1_1"]),
                    m(1, &["b1_2"]),
                    m(-1, &["a_11", "a_23"]),
                    m(-1, &["a_12", "a_33"]),
                ],
            );
            chain(&mut out, &[m(1, &["b2_2"]), m(-1, &["a_12", "a_23"])]);
        }
        ModelId::Z5 => {
            chain(
                &mut out,
                &[
                    m(1, &["b1_1"]),
                    m(1, &["b1_2"]),
                    m(-1, &["a_11", "a_24"]),
                    m(-1, &["a_12", "a_34"]),
                    m(-1, &["a_13", "a_44"]),
                ],
            );
            chain(
                &mut out,
                &[
                    m(1, &["b2_1"]),
                    m(1, &["b2_2"]),
                    m(-1, &["a_12", "a_33"]),
                    m(-1, &["a_22", "a_34"]),
                    m(-1, &["a_13", "a_24"]),
                ],
            );
        }
        ModelId::Z6 => {
            chain(
                &mut out,
                &[
                    m(1, &["b1_1"]),
                    m(1, &["b1_2"]),
                    m(1, &["b1_3"]),
                    m(-1, &["a_11", "a_25"]),
                    m(-1, &["a_12", "a_35"]),
                    m(-1, &["a_13", "a_45"]),
                    m(-1, &["a_14", "a_55"]),
                ],
            );
            chain(
                &mut out,
                &[
                    m(1, &["b2_2"]),
                    m(1, &["b2_3"]),
                    m(1, &["a_12", "a_34"]),
                    m(1, &["a_14", "a_25"]),
                    m(-1, &["a_22", "a_44"]),
                    m(-1, &["a_23", "a_45"]),
                ],
            );
            chain(
                &mut out,
                &[m(1, &["b3_1"]), m(1, &["b3_3"]), m(1, &["a_13", "a_34"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_11", "a_22"]), m(-1, &["a_12", "a_13"])],
            );
        }
        ModelId::Z3Sq => {
            out = z3sq_constraints();
        }
        ModelId::Z2Z4 => {
            chain(
                &mut out,
                &[
                    m(1, &["b1_2"]),
                    m(1, &["b1_3"]),
                    m(1, &["b1_4"]),
                    m(-1, &["a_11", "a_23"]),
                    m(1, &["ap_10", "ap_31"]),
                ],
            );
            chain(
                &mut out,
                &[m(1, &["b2_3"]), m(1, &["b2_4"]), m(-1, &["a_12", "a_23"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_11", "ap_20"]), m(1, &["ap_10", "ap_11"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_11", "ap_21"]), m(-1, &["ap_11", "ap_12"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_11", "ap_22"]), m(1, &["ap_12", "ap_13"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_11", "ap_23"]), m(-1, &["ap_10", "ap_13"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_12", "a_33"]), m(1, &["a_11", "a_23"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_12", "ap_30"]), m(1, &["ap_12", "ap_20"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_12", "ap_31"]), m(-1, &["ap_13", "ap_21"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_12", "ap_32"]), m(1, &["ap_10", "ap_22"])],
            );
            chain(
                &mut out,
                &[m(1, &["a_12", "ap_33"]), m(-1, &["ap_11", "ap_23"])],
            );
            chain(
                &mut out,
                &[
                    m(1, &["ap_10", "app_11"]),
                    m(1, &["ap_11", "app_02"]),
                    m(-1, &["a_11", "app_01"]),
                ],
            );
            chain(
                &mut out,
                &[
                    m(1, &["ap_10", "app_12"]),
                    m(-1, &["a_12", "app_02"]),
                    m(-1, &["ap_12", "app_03"]),
                ],
            );
            chain(
                &mut out,
                &[
                    m(1, &["bp0_1"]),
                    m(1, &["bp0_2"]),
                    m(1, &["bp0_3"]),
                    m(1, &["ap_10", "app_01"]),
                ],
            );
            chain(
                &mut out,
                &[
                    m(1, &["bp1_1"]),
                    m(1, &["bp1_3"]),
                    m(1, &["bp1_4"]),
                    m(1, &["ap_31", "app_03"]),
                    m(1, &["ap_11", "app_23"]),
                ],
            );
            chain(
                &mut out,
                &[
                    m(1, &["bp2_1"]),
                    m(1, &["bp2_2"]),
                    m(1, &["bp2_4"]),
                    m(-1, &["app_12", "ap_32"]),
                ],
            );
            chain(
                &mut out,
                &[m(1, &["ap_12", "app_33"]), m(-1, &["app_23", "a_11"])],
            );
        }
    }
    out
}

fn z3sq_constraints() -> Vec<Constraint> {
    let id = ModelId::Z3Sq;
    let group = id.group();
    let nonzero = group.nonzero_elements();
    let a_name = |x: &GroupElement, y: &GroupElement| -> String {
        let (lo, hi, _) = group.ordered_pair(x, y);
        id.star_name(&lo, &hi)
    };
    let b_rep = |x: &GroupElement| -> GroupElement {
        let d = group.double(x);
        if *x <= d {
            x.clone()
        } else {
            d
        }
    };
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    // -b_a^{(i)} = a_{a,a} a_{2a,2a}, one equation per stored b name.
    for a in &nonzero {
        let rep = b_rep(a);
        if rep != *a {
            continue;
        }
        let two_a = group.double(a);
        let diag = a_name(a, a);
        let diag2 = a_name(&two_a, &two_a);
        for (s, &d) in id.shape_degrees(a).iter().enumerate() {
            if d == 0 {
                continue;
            }
            let b = id.dual_name(a, s);
            out.push(Constraint::new(m(-1, &[&b]), m(1, &[&diag, &diag2])));
        }
    }
    for a in &nonzero {
        let two_a = group.double(a);
        for b in &nonzero {
            if b == a || *b == two_a {
                continue;
            }
            let apb = group.add(a, b);
            let ap2b = group.add(&apb, b);
            // -a_{a,a} a_{2a,b} = a_{a,b} a_{a,a+b}
            let c = Constraint::new(
                m(-1, &[&a_name(a, a), &a_name(&two_a, b)]),
                m(1, &[&a_name(a, b), &a_name(a, &apb)]),
            );
            if seen.insert(c.id.clone()) {
                out.push(c);
            }
            // -a_{a,b} a_{a+b,a+b} = a_{b,a+b} a_{a+2b,a}
            let c = Constraint::new(
                m(-1, &[&a_name(a, b), &a_name(&apb, &apb)]),
                m(1, &[&a_name(b, &apb), &a_name(&ap2b, a)]),
            );
            if seen.insert(c.id.clone()) {
                out.push(c);
            }
            // -b_a^{(i)} = a_{a,b} a_{a+b,2a}; one instance per (a, b) using
            // the first stored coefficient name of the pair {a, 2a}.
            let rep = b_rep(a);
            let slot = id.shape_degrees(&rep).iter().position(|&d| d != 0).unwrap();
            let b_name = id.dual_name(&rep, slot);
            let c = Constraint::new(
                m(-1, &[&b_name]),
                m(1, &[&a_name(a, b), &a_name(&apb, &two_a)]),
            );
            if seen.insert(c.id.clone()) {
                out.push(c);
            }
        }
    }
    out
}

/// Evaluates the constraint system on an assignment; the returned list is
/// empty exactly when every equation holds.
pub fn check(id: ModelId, scalars: &ScalarAssignment) -> Result<Vec<Violation>, Error> {
    let mut out = Vec::new();
    for c in constraints(id) {
        let lhs = c.left.eval(scalars)?;
        let rhs = c.right.eval(scalars)?;
        if lhs != rhs {
            out.push(Violation { id: c.id, lhs, rhs });
        }
    }
    Ok(out)
}

/// Free parameter names of each model's solution family.
pub fn free_names(id: ModelId) -> Vec<&'static str> {
    match id {
        ModelId::Z3 => vec!["a_11", "a_22"],
        ModelId::Z4 => vec!["a_11", "a_12", "a_23"],
        ModelId::Z5 => vec!["a_11", "a_12", "a_13", "a_24"],
        ModelId::Z6 => vec!["a_11", "a_12", "a_13", "a_14", "a_25"],
        // The solution family is the rescaling orbit of the canonical
        // solution: one multiplier per nonzero component.
        ModelId::Z3Sq => vec![
            "t_01", "t_02", "t_10", "t_11", "t_12", "t_20", "t_21", "t_22",
        ],
        ModelId::Z2Z4 => {
            vec!["a_11", "a_12", "ap_10", "ap_11", "ap_12", "ap_13", "app_01"]
        }
    }
}

/// Completes a full solution of the constraint system from its free
/// parameters. Exactly the names in [`free_names`] must be bound, all
/// nonzero.
pub fn parametric_assignment(
    id: ModelId,
    free: &ScalarAssignment,
) -> Result<ScalarAssignment, Error> {
    let names = free_names(id);
    let get = |n: &str| -> Result<Scalar, Error> {
        let v = free
            .get(n)
            .ok_or_else(|| Error::MissingFree(n.to_string()))?;
        if v.is_zero() {
            return Err(Error::ZeroScalar(n.to_string()));
        }
        Ok(v.clone())
    };
    for extra in free.keys() {
        if !names.contains(&extra.as_str()) {
            return Err(Error::UnknownScalar(extra.clone()));
        }
    }
    let mut out = ScalarAssignment::new();
    let put = |out: &mut ScalarAssignment, name: &str, v: Scalar| {
        out.insert(name.to_string(), v);
    };
    match id {
        ModelId::Z3 => {
            let a11 = get("a_11")?;
            let a22 = get("a_22")?;
            put(&mut out, "a_11", a11.clone());
            put(&mut out, "a_22", a22.clone());
            put(&mut out, "b_1", -a11 * a22);
        }
        ModelId::Z4 => {
            let a11 = get("a_11")?;
            let a12 = get("a_12")?;
            let a23 = get("a_23")?;
            put(&mut out, "a_11", a11.clone());
            put(&mut out, "a_12", a12.clone());
            put(&mut out, "a_23", a23.clone());
            put(&mut out, "a_33", a11.clone() * a23.clone() / a12.clone());
            let b1 = -(a11 * a23.clone());
            put(&mut out, "b1_1", b1.clone());
            put(&mut out, "b1_2", b1);
            put(&mut out, "b2_2", -(a12 * a23));
        }
        ModelId::Z5 => {
            let a11 = get("a_11")?;
            let a12 = get("a_12")?;
            let a13 = get("a_13")?;
            let a24 = get("a_24")?;
            put(&mut out, "a_11", a11.clone());
            put(&mut out, "a_12", a12.clone());
            put(&mut out, "a_13", a13.clone());
            put(&mut out, "a_24", a24.clone());
            put(&mut out, "a_22", a12.clone() * a13.clone() / a11.clone());
            put(&mut out, "a_33", a13.clone() * a24.clone() / a12.clone());
            put(&mut out, "a_34", a11.clone() * a24.clone() / a12.clone());
            put(&mut out, "a_44", a11.clone() * a24.clone() / a13.clone());
            let b1 = -(a11 * a24.clone());
            let b2 = -(a13 * a24);
            put(&mut out, "b1_1", b1.clone());
            put(&mut out, "b1_2", b1);
            put(&mut out, "b2_1", b2.clone());
            put(&mut out, "b2_2", b2);
        }
        ModelId::Z6 => {
            let a11 = get("a_11")?;
            let a12 = get("a_12")?;
            let a13 = get("a_13")?;
            let a14 = get("a_14")?;
            let a25 = get("a_25")?;
            put(&mut out, "a_11", a11.clone());
            put(&mut out, "a_12", a12.clone());
            put(&mut out, "a_13", a13.clone());
            put(&mut out, "a_14", a14.clone());
            put(&mut out, "a_25", a25.clone());
            put(&mut out, "a_22", -(a12.clone() * a13.clone() / a11.clone()));
            put(&mut out, "a_23", -(a13.clone() * a14.clone() / a11.clone()));
            put(&mut out, "a_34", a14.clone() * a25.clone() / a12.clone());
            put(&mut out, "a_35", a11.clone() * a25.clone() / a12.clone());
            put(
                &mut out,
                "a_44",
                a11.clone() * a14.clone() * a25.clone() / (a12.clone() * a13.clone()),
            );
            put(&mut out, "a_45", a11.clone() * a25.clone() / a13.clone());
            put(&mut out, "a_55", a11.clone() * a25.clone() / a14.clone());
            let b1 = -(a11 * a25.clone());
            let b2 = a14.clone() * a25.clone();
            let b3 = a13 * a14 * a25 / a12;
            for s in ["b1_1", "b1_2", "b1_3"] {
                put(&mut out, s, b1.clone());
            }
            for s in ["b2_2", "b2_3"] {
                put(&mut out, s, b2.clone());
            }
            for s in ["b3_1", "b3_3"] {
                put(&mut out, s, b3.clone());
            }
        }
        ModelId::Z3Sq => {
            let group = id.group();
            let mut t = BTreeMap::new();
            for g in group.nonzero_elements() {
                t.insert(g.clone(), get(&format!("t_{}", g.compact()))?);
            }
            let canonical = canonical_scalars(id);
            out = rescale_by_component(id, &canonical, &|g: &GroupElement| t[g].clone())?;
        }
        ModelId::Z2Z4 => {
            let a11 = get("a_11")?;
            let a12 = get("a_12")?;
            let p0 = get("ap_10")?;
            let p1 = get("ap_11")?;
            let p2 = get("ap_12")?;
            let p3 = get("ap_13")?;
            let q = get("app_01")?;
            let prod = p0.clone() * p1.clone() * p2.clone() * p3.clone();
            put(&mut out, "a_11", a11.clone());
            put(&mut out, "a_12", a12.clone());
            put(&mut out, "ap_10", p0.clone());
            put(&mut out, "ap_11", p1.clone());
            put(&mut out, "ap_12", p2.clone());
            put(&mut out, "ap_13", p3.clone());
            put(&mut out, "app_01", q.clone());
            let b1 = prod.clone() / (a11.clone() * a12.clone());
            let b2 = prod.clone() / (a11.clone() * a11.clone());
            for s in ["b1_2", "b1_3", "b1_4"] {
                put(&mut out, s, b1.clone());
            }
            for s in ["b2_3", "b2_4"] {
                put(&mut out, s, b2.clone());
            }
            put(
                &mut out,
                "a_23",
                -(prod.clone() / (a11.clone() * a11.clone() * a12.clone())),
            );
            put(
                &mut out,
                "a_33",
                -(prod.clone() / (a11.clone() * a12.clone() * a12.clone())),
            );
            put(&mut out, "ap_20", p0.clone() * p1.clone() / a11.clone());
            put(&mut out, "ap_21", -(p1.clone() * p2.clone() / a11.clone()));
            put(&mut out, "ap_22", p2.clone() * p3.clone() / a11.clone());
            put(&mut out, "ap_23", -(p0.clone() * p3.clone() / a11.clone()));
            let a1112 = a11.clone() * a12.clone();
            put(
                &mut out,
                "ap_30",
                p0.clone() * p1.clone() * p2.clone() / a1112.clone(),
            );
            put(
                &mut out,
                "ap_31",
                p1.clone() * p2.clone() * p3.clone() / a1112.clone(),
            );
            put(
                &mut out,
                "ap_32",
                p0.clone() * p2.clone() * p3.clone() / a1112.clone(),
            );
            put(
                &mut out,
                "ap_33",
                p0.clone() * p1.clone() * p3.clone() / a1112.clone(),
            );
            let bp0 = p0.clone() * q.clone();
            for s in ["bp0_1", "bp0_2", "bp0_3"] {
                put(&mut out, s, bp0.clone());
            }
            put(&mut out, "app_02", -(a11.clone() * q.clone() / p1.clone()));
            put(
                &mut out,
                "app_03",
                -(a1112.clone() * q.clone() / (p1.clone() * p2.clone())),
            );
            put(&mut out, "app_11", -(a11.clone() * q.clone() / p0.clone()));
            put(
                &mut out,
                "app_12",
                a1112 * q.clone() / (p0.clone() * p1.clone()),
            );
            let bp1 = -(p3.clone() * q.clone());
            for s in ["bp1_1", "bp1_3", "bp1_4"] {
                put(&mut out, s, bp1.clone());
            }
            let bp2 = -(p2.clone() * p3.clone() * q.clone() / p1.clone());
            for s in ["bp2_1", "bp2_2", "bp2_4"] {
                put(&mut out, s, bp2.clone());
            }
            put(&mut out, "app_23", -(p3.clone() * q.clone() / p1.clone()));
            put(&mut out, "app_33", a11 * p3 * q / (p1 * p2));
        }
    }
    Ok(out)
}

/// Per-component rescaling multipliers; the identity component always maps
/// by 1.
#[derive(Clone, Debug)]
pub struct RescalingMap {
    multipliers: BTreeMap<GroupElement, Scalar>,
}

impl RescalingMap {
    pub fn new(id: ModelId, multipliers: BTreeMap<GroupElement, Scalar>) -> Result<Self, Error> {
        for g in id.group().nonzero_elements() {
            let v = multipliers
                .get(&g)
                .ok_or_else(|| Error::ZeroMultiplier(g.label()))?;
            if v.is_zero() {
                return Err(Error::ZeroMultiplier(g.label()));
            }
        }
        Ok(RescalingMap { multipliers })
    }

    pub fn identity(id: ModelId) -> Self {
        let multipliers = id
            .group()
            .nonzero_elements()
            .into_iter()
            .map(|g| (g, Scalar::one()))
            .collect();
        RescalingMap { multipliers }
    }

    pub fn get(&self, g: &GroupElement) -> Scalar {
        if g.is_identity() {
            Scalar::one()
        } else {
            self.multipliers[g].clone()
        }
    }
}

fn rescale_by_component(
    id: ModelId,
    src: &ScalarAssignment,
    alpha: &dyn Fn(&GroupElement) -> Scalar,
) -> Result<ScalarAssignment, Error> {
    let group = id.group();
    let nonzero = group.nonzero_elements();
    let mut out = ScalarAssignment::new();
    for (i, a) in nonzero.iter().enumerate() {
        for b in &nonzero[i..] {
            let sum = group.add(a, b);
            if sum.is_identity() {
                for (s, &d) in id.shape_degrees(a).iter().enumerate() {
                    if d == 0 {
                        continue;
                    }
                    let name = id.dual_name(a, s);
                    let v = src
                        .get(&name)
                        .ok_or_else(|| Error::UnboundScalar(name.clone()))?;
                    out.insert(name, v.clone() * alpha(a) * alpha(b));
                }
            } else {
                let name = id.star_name(a, b);
                let v = src
                    .get(&name)
                    .ok_or_else(|| Error::UnboundScalar(name.clone()))?;
                out.insert(name, v.clone() * alpha(a) * alpha(b) / alpha(&sum));
            }
        }
    }
    Ok(out)
}

/// Transforms an assignment along a diagonal rescaling: the scalar bound to
/// the rule at (a, b) is multiplied by alpha_a alpha_b / alpha_{a+b}.
pub fn rescaling_map(
    id: ModelId,
    src: &ScalarAssignment,
    alphas: &RescalingMap,
) -> Result<ScalarAssignment, Error> {
    rescale_by_component(id, src, &|g: &GroupElement| alphas.get(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn canonical_scalars_satisfy_their_systems() {
        for id in ModelId::ALL {
            let violations = check(id, &canonical_scalars(id)).unwrap();
            assert!(violations.is_empty(), "{}: {violations:?}", id.name());
        }
    }

    #[test]
    fn canonical_binds_every_name() {
        for id in ModelId::ALL {
            let scalars = canonical_scalars(id);
            for name in scalar_names(id) {
                assert!(scalars.contains_key(&name), "{}: {name} unbound", id.name());
            }
            assert_eq!(scalars.len(), scalar_names(id).len(), "{}", id.name());
        }
    }

    #[test]
    fn every_model_spec_has_total_dimension_248() {
        for id in ModelId::ALL {
            let spec = model_spec(id, canonical_scalars(id)).unwrap();
            assert_eq!(spec.total_dim(), 248, "{}", id.name());
        }
    }

    #[test]
    fn scalar_name_counts() {
        assert_eq!(scalar_names(ModelId::Z3).len(), 3);
        assert_eq!(scalar_names(ModelId::Z4).len(), 7);
        assert_eq!(scalar_names(ModelId::Z5).len(), 12);
        assert_eq!(scalar_names(ModelId::Z6).len(), 19);
        assert_eq!(scalar_names(ModelId::Z3Sq).len(), 44);
        assert_eq!(scalar_names(ModelId::Z2Z4).len(), 37);
    }

    #[test]
    fn z3_violation_report() {
        let mut scalars = canonical_scalars(ModelId::Z3);
        scalars.insert("b_1".into(), int(1));
        let violations = check(ModelId::Z3, &scalars).unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].id, "a11*a22+b1=0");
        assert_eq!(violations[0].lhs, int(1));
        assert_eq!(violations[0].rhs, int(-1));
    }

    #[test]
    fn z5_perturbation_hits_exactly_the_equations_with_that_name() {
        let mut scalars = canonical_scalars(ModelId::Z5);
        scalars.insert("a_11".into(), int(2));
        let violated: Vec<String> = check(ModelId::Z5, &scalars)
            .unwrap()
            .into_iter()
            .map(|v| v.id)
            .collect();
        let expected: Vec<String> = constraints(ModelId::Z5)
            .into_iter()
            .filter(|c| c.scalar_names().contains(&"a_11"))
            .map(|c| c.id)
            .collect();
        assert_eq!(violated, expected);
        assert!(!violated.is_empty());
    }

    #[test]
    fn parametric_all_ones_is_canonical_for_z2z4() {
        let mut free = ScalarAssignment::new();
        for n in free_names(ModelId::Z2Z4) {
            free.insert(n.to_string(), int(1));
        }
        let assignment = parametric_assignment(ModelId::Z2Z4, &free).unwrap();
        assert_eq!(assignment, canonical_scalars(ModelId::Z2Z4));
    }

    #[test]
    fn parametric_families_pass_check() {
        let samples: &[i64] = &[1, 2, -3, 5];
        for id in ModelId::ALL {
            let mut free = ScalarAssignment::new();
            for (t, n) in free_names(id).iter().enumerate() {
                free.insert(
                    n.to_string(),
                    rat(samples[t % samples.len()], 1 + (t as i64 % 2)),
                );
            }
            let assignment = parametric_assignment(id, &free).unwrap();
            let violations = check(id, &assignment).unwrap();
            assert!(violations.is_empty(), "{}: {violations:?}", id.name());
            // And the completed assignment must assemble.
            model_spec(id, assignment).unwrap();
        }
    }

    #[test]
    fn z3_example_parametric_values() {
        let mut free = ScalarAssignment::new();
        free.insert("a_11".into(), int(5));
        free.insert("a_22".into(), int(5));
        let a = parametric_assignment(ModelId::Z3, &free).unwrap();
        assert_eq!(a["b_1"], int(-25));
    }

    #[test]
    fn parametric_rejects_bad_free_sets() {
        let mut free = ScalarAssignment::new();
        free.insert("a_11".into(), int(1));
        assert!(matches!(
            parametric_assignment(ModelId::Z3, &free),
            Err(Error::MissingFree(_))
        ));
        free.insert("a_22".into(), int(0));
        assert!(matches!(
            parametric_assignment(ModelId::Z3, &free),
            Err(Error::ZeroScalar(_))
        ));
        free.insert("a_22".into(), int(1));
        free.insert("nope".into(), int(1));
        assert!(matches!(
            parametric_assignment(ModelId::Z3, &free),
            Err(Error::UnknownScalar(_))
        ));
    }

    #[test]
    fn rescaled_assignment_still_checks() {
        for id in ModelId::ALL {
            let group = id.group();
            let mut mult = BTreeMap::new();
            for (t, g) in group.nonzero_elements().into_iter().enumerate() {
                mult.insert(g, rat(2 + t as i64, 3));
            }
            let alphas = RescalingMap::new(id, mult).unwrap();
            let dst = rescaling_map(id, &canonical_scalars(id), &alphas).unwrap();
            let violations = check(id, &dst).unwrap();
            assert!(violations.is_empty(), "{}: {violations:?}", id.name());
        }
    }

    #[test]
    fn identity_rescaling_is_identity() {
        for id in ModelId::ALL {
            let src = canonical_scalars(id);
            let dst = rescaling_map(id, &src, &RescalingMap::identity(id)).unwrap();
            assert_eq!(src, dst);
        }
    }

    #[test]
    fn model_spec_rejects_missing_and_zero_scalars() {
        let mut scalars = canonical_scalars(ModelId::Z4);
        scalars.remove("a_23");
        assert!(matches!(
            model_spec(ModelId::Z4, scalars),
            Err(Error::UnboundScalar(_))
        ));
        let mut scalars = canonical_scalars(ModelId::Z4);
        scalars.insert("a_23".into(), int(0));
        assert!(matches!(
            model_spec(ModelId::Z4, scalars),
            Err(Error::ZeroScalar(_))
        ));
    }
}
