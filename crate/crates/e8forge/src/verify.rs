//! Verifiers over an assembled algebra: the Jacobi identity (exhaustive,
//! sampled, and component-restricted), grading closure and fullness, and
//! bracket preservation of diagonal rescaling maps.
//!
//! The Jacobi hot path clears denominators once and works in machine
//! integers with wide accumulators; a scaled residual vanishes exactly when
//! the rational one does. Assignments whose constants do not fit the bound
//! fall back to full rational arithmetic. Either way the check is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::assemble::{assemble, Element, GradedAlgebra};
use crate::grading::ModelSpec;
use crate::models::{model_spec, ModelId, RescalingMap, ScalarAssignment};
use crate::rank::{fp_of_scalar, FpEchelon, IntEchelon};
use crate::scalar::Scalar;
use crate::Error;

const MAX_SCALED: i64 = 1 << 40;

/// Structure constants scaled to integers by the global lcm of their
/// denominators. `None` when some scaled constant would exceed the bound
/// that keeps triple products inside the wide accumulator.
pub(crate) struct IntTensor {
    dim: usize,
    scale: BigInt,
    rows: Vec<Vec<(u32, i64)>>,
}

impl IntTensor {
    pub(crate) fn build(alg: &GradedAlgebra) -> Option<IntTensor> {
        let dim = alg.dim();
        let mut l = BigInt::one();
        for i in 0..dim {
            for j in i + 1..dim {
                for (_, c) in alg.bracket_basis(i, j) {
                    l = l.lcm(c.denom());
                }
            }
        }
        if l > BigInt::from(MAX_SCALED) {
            return None;
        }
        let mut rows = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                let mut row = Vec::with_capacity(alg.bracket_basis(i, j).len());
                for (k, c) in alg.bracket_basis(i, j) {
                    let scaled: BigInt = c.numer() * (&l / c.denom());
                    let scaled: i64 = scaled.try_into().ok()?;
                    if scaled.abs() > MAX_SCALED {
                        return None;
                    }
                    row.push((*k, scaled));
                }
                rows[i * dim + j] = row;
            }
        }
        Some(IntTensor {
            dim,
            scale: l,
            rows,
        })
    }

    #[inline]
    pub(crate) fn row(&self, i: usize, j: usize) -> &[(u32, i64)] {
        &self.rows[i * self.dim + j]
    }

    /// Constants are stored multiplied by this scale.
    pub(crate) fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Checks J(b_i, b_j, b_k) = 0 using the scratch accumulator.
    fn jacobi_is_zero(&self, i: usize, j: usize, k: usize, scratch: &mut Scratch) -> bool {
        scratch.clear();
        self.accumulate(i, j, k, scratch);
        self.accumulate(j, k, i, scratch);
        self.accumulate(k, i, j, scratch);
        scratch.is_zero()
    }

    #[inline]
    fn accumulate(&self, a: usize, b: usize, c: usize, scratch: &mut Scratch) {
        for &(m, c1) in self.row(a, b) {
            for &(l, c2) in self.row(m as usize, c) {
                scratch.add(l as usize, c1 as i128 * c2 as i128);
            }
        }
    }
}

struct Scratch {
    acc: Vec<i128>,
    touched: Vec<u32>,
}

impl Scratch {
    fn new(dim: usize) -> Self {
        Scratch {
            acc: vec![0; dim],
            touched: Vec::with_capacity(64),
        }
    }

    #[inline]
    fn add(&mut self, idx: usize, v: i128) {
        if self.acc[idx] == 0 && v != 0 {
            self.touched.push(idx as u32);
        }
        self.acc[idx] += v;
    }

    fn is_zero(&self) -> bool {
        self.touched.iter().all(|&t| self.acc[t as usize] == 0)
    }

    fn clear(&mut self) {
        for &t in &self.touched {
            self.acc[t as usize] = 0;
        }
        self.touched.clear();
    }
}

/// Exact Jacobi residual of a basis triple in rational arithmetic.
pub fn jacobi_residual(alg: &GradedAlgebra, i: usize, j: usize, k: usize) -> Element {
    let mut out = Element::zero();
    let add = |a: usize, b: usize, c: usize, out: &mut Element| {
        for (m, c1) in alg.bracket_basis(a, b) {
            for (l, c2) in alg.bracket_basis(*m as usize, c) {
                out.add_term(*l, c1.clone() * c2.clone());
            }
        }
    };
    add(i, j, k, &mut out);
    add(j, k, i, &mut out);
    add(k, i, j, &mut out);
    out
}

#[derive(Clone, Debug)]
pub enum JacobiMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct FailingTriple {
    pub triple: (usize, usize, usize),
    pub residual: Element,
}

#[derive(Debug)]
pub struct JacobiReport {
    pub mode: String,
    pub checked: u64,
    pub failures: Vec<FailingTriple>,
    /// True when more failures exist than were recorded.
    pub truncated: bool,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && !self.truncated
    }
}

fn collect_failures(
    alg: &GradedAlgebra,
    mut triples: Vec<(usize, usize, usize)>,
    checked: u64,
    mode: String,
    max_failures: usize,
) -> JacobiReport {
    triples.sort();
    triples.dedup();
    let truncated = triples.len() > max_failures;
    triples.truncate(max_failures);
    let failures = triples
        .into_iter()
        .map(|(i, j, k)| FailingTriple {
            triple: (i, j, k),
            residual: jacobi_residual(alg, i, j, k),
        })
        .collect();
    JacobiReport {
        mode,
        checked,
        failures,
        truncated,
    }
}

/// Verifies J(x,y,z) = 0 over basis triples, exhaustively or by seeded
/// sampling. Reports at most `max_failures` failing triples with their
/// exact residuals.
pub fn verify_jacobi(alg: &GradedAlgebra, mode: JacobiMode, max_failures: usize) -> JacobiReport {
    match mode {
        JacobiMode::Exhaustive => {
            let dim = alg.dim();
            let tensor = IntTensor::build(alg);
            let bad: Vec<(usize, usize, usize)> = match &tensor {
                Some(t) => (0..dim)
                    .into_par_iter()
                    .map_init(
                        || Scratch::new(dim),
                        |scratch, i| {
                            let mut local = Vec::new();
                            for j in i..dim {
                                for k in j..dim {
                                    if !t.jacobi_is_zero(i, j, k, scratch) {
                                        local.push((i, j, k));
                                    }
                                }
                            }
                            local
                        },
                    )
                    .flatten()
                    .collect(),
                None => (0..dim)
                    .into_par_iter()
                    .map(|i| {
                        let mut local = Vec::new();
                        for j in i..dim {
                            for k in j..dim {
                                if !jacobi_residual(alg, i, j, k).is_zero() {
                                    local.push((i, j, k));
                                }
                            }
                        }
                        local
                    })
                    .flatten()
                    .collect(),
            };
            let n = dim as u64;
            let checked = n * (n + 1) * (n + 2) / 6;
            collect_failures(alg, bad, checked, "exhaustive".into(), max_failures)
        }
        JacobiMode::Sampled { count, seed } => {
            let dim = alg.dim();
            let tensor = IntTensor::build(alg);
            let mut scratch = Scratch::new(dim);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = Vec::new();
            for _ in 0..count {
                let mut t = [
                    rng.gen_range(0..dim),
                    rng.gen_range(0..dim),
                    rng.gen_range(0..dim),
                ];
                t.sort_unstable();
                let ok = match &tensor {
                    Some(tt) => tt.jacobi_is_zero(t[0], t[1], t[2], &mut scratch),
                    None => jacobi_residual(alg, t[0], t[1], t[2]).is_zero(),
                };
                if !ok {
                    bad.push((t[0], t[1], t[2]));
                    if bad.len() >= max_failures {
                        break;
                    }
                }
            }
            collect_failures(
                alg,
                bad,
                count,
                format!("sampled({count},{seed})"),
                max_failures,
            )
        }
    }
}

/// Component-index triples whose Jacobi identities can involve any rule that
/// references one of the given scalar names. Outside this set the constants
/// are untouched by those scalars, so a restricted exhaustive scan is a
/// complete check for a perturbation of them.
pub fn dependent_component_triples(
    spec: &ModelSpec,
    alg: &GradedAlgebra,
    names: &[&str],
) -> Vec<(usize, usize, usize)> {
    let group = &spec.group;
    let mut affected = std::collections::BTreeSet::new();
    for ((a, b), rule) in spec.rules() {
        if rule.scalar_names().iter().any(|n| names.contains(n)) {
            affected.insert((a.clone(), b.clone()));
        }
    }
    let comps = alg.components();
    let mut out = Vec::new();
    for c1 in 1..comps.len() {
        for c2 in c1..comps.len() {
            for c3 in c2..comps.len() {
                let degs = [&comps[c1].degree, &comps[c2].degree, &comps[c3].degree];
                let mut hit = false;
                for (x, y, z) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
                    let (lo, hi, _) = group.ordered_pair(degs[x], degs[y]);
                    if affected.contains(&(lo, hi)) {
                        hit = true;
                        break;
                    }
                    let sum = group.add(degs[x], degs[y]);
                    if !sum.is_identity() {
                        let (lo, hi, _) = group.ordered_pair(&sum, degs[z]);
                        if affected.contains(&(lo, hi)) {
                            hit = true;
                            break;
                        }
                    }
                }
                if hit {
                    out.push((c1, c2, c3));
                }
            }
        }
    }
    out
}

/// Seeded sampling of basis triples drawn from the given component triples.
pub fn verify_jacobi_biased(
    alg: &GradedAlgebra,
    comp_triples: &[(usize, usize, usize)],
    count: u64,
    seed: u64,
    max_failures: usize,
) -> JacobiReport {
    let tensor = IntTensor::build(alg);
    let mut scratch = Scratch::new(alg.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    if comp_triples.is_empty() {
        return JacobiReport {
            mode: "biased(empty)".into(),
            checked: 0,
            failures: vec![],
            truncated: false,
        };
    }
    for _ in 0..count {
        let (c1, c2, c3) = comp_triples[rng.gen_range(0..comp_triples.len())];
        let comps = alg.components();
        let mut t = [
            rng.gen_range(comps[c1].range.clone()),
            rng.gen_range(comps[c2].range.clone()),
            rng.gen_range(comps[c3].range.clone()),
        ];
        t.sort_unstable();
        let ok = match &tensor {
            Some(tt) => tt.jacobi_is_zero(t[0], t[1], t[2], &mut scratch),
            None => jacobi_residual(alg, t[0], t[1], t[2]).is_zero(),
        };
        if !ok {
            bad.push((t[0], t[1], t[2]));
            if bad.len() >= max_failures {
                break;
            }
        }
    }
    collect_failures(
        alg,
        bad,
        count,
        format!("biased({count},{seed})"),
        max_failures,
    )
}

/// Exhaustive scan restricted to the given component triples.
pub fn verify_jacobi_restricted(
    alg: &GradedAlgebra,
    comp_triples: &[(usize, usize, usize)],
    max_failures: usize,
) -> JacobiReport {
    let tensor = IntTensor::build(alg);
    let comps = alg.components();
    let mut checked = 0u64;
    let mut bad = Vec::new();
    let mut scratch = Scratch::new(alg.dim());
    'outer: for &(c1, c2, c3) in comp_triples {
        for i in comps[c1].range.clone() {
            for j in comps[c2].range.clone() {
                if j < i {
                    continue;
                }
                for k in comps[c3].range.clone() {
                    if k < j {
                        continue;
                    }
                    checked += 1;
                    let ok = match &tensor {
                        Some(tt) => tt.jacobi_is_zero(i, j, k, &mut scratch),
                        None => jacobi_residual(alg, i, j, k).is_zero(),
                    };
                    if !ok {
                        bad.push((i, j, k));
                        if bad.len() >= max_failures {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    collect_failures(alg, bad, checked, "restricted".into(), max_failures)
}

#[derive(Clone, Debug)]
pub struct PairFullness {
    pub alpha: usize,
    pub beta: usize,
    pub target: usize,
    pub expected: usize,
    pub rank: usize,
}

#[derive(Debug)]
pub struct GradingReport {
    /// (i, j, k) with a constant landing outside the component of
    /// deg(i) + deg(j).
    pub closure_violations: Vec<(usize, usize, usize)>,
    pub pairs: Vec<PairFullness>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.closure_violations.is_empty() && self.pairs.iter().all(|p| p.rank == p.expected)
    }
}

/// Checks grading closure of every constant, and fullness
/// [L_a, L_b] = L_{a+b} by exact rank for every component pair with
/// a + b != 0.
///
/// For a dual pair (a, -a) the bracket lands in the neutral component, whose
/// expected image excludes the sl-slots acting trivially on L_a (the slots
/// of exterior degree zero): those slots are Killing-orthogonal to
/// [L_a, L_{-a}], so the exact expectation there is the sum of the acting
/// slots' sl dimensions. Pairs within the neutral component span all of it.
pub fn verify_grading(alg: &GradedAlgebra) -> GradingReport {
    let dim = alg.dim();
    let group = alg.group().clone();
    let mut closure_violations = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let sum = group.add(alg.degree_of(i), alg.degree_of(j));
            let target = alg.component_index(&sum);
            for (k, _) in alg.bracket_basis(i, j) {
                if alg.component_of(*k as usize) != target {
                    closure_violations.push((i, j, *k as usize));
                    if closure_violations.len() >= 20 {
                        return GradingReport {
                            closure_violations,
                            pairs: vec![],
                        };
                    }
                }
            }
        }
    }

    let comps = alg.components().to_vec();
    let pairs: Vec<PairFullness> = (0..comps.len())
        .flat_map(|a| (a..comps.len()).map(move |b| (a, b)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(a, b)| {
            let sum = group.add(&comps[a].degree, &comps[b].degree);
            let target = alg.component_index(&sum);
            let expected = if !sum.is_identity() || (a == 0 && b == 0) {
                comps[target].dim()
            } else {
                comps[a]
                    .shape
                    .iter()
                    .zip(alg.slot_dims())
                    .filter(|(&d, _)| d != 0)
                    .map(|(_, &n)| (n as usize) * (n as usize) - 1)
                    .sum()
            };
            let rank = bracket_image_rank(alg, a, b, target, comps[target].dim());
            PairFullness {
                alpha: a,
                beta: b,
                target,
                expected,
                rank,
            }
        })
        .collect();
    GradingReport {
        closure_violations,
        pairs,
    }
}

/// Exact rank of span{[b_i, b_j]} inside the target component. The modular
/// echelon proves rank `cap` when it reaches it; otherwise the rank is
/// recomputed in exact integer arithmetic.
fn bracket_image_rank(alg: &GradedAlgebra, a: usize, b: usize, target: usize, cap: usize) -> usize {
    let comps = alg.components();
    let t_range = comps[target].range.clone();
    let width = t_range.end - t_range.start;
    let mut fp = FpEchelon::new(width);
    let mut row_fp = vec![0u64; width];
    for i in comps[a].range.clone() {
        for j in comps[b].range.clone() {
            if a == b && j <= i {
                continue;
            }
            let entries = alg.bracket_basis(i, j);
            if entries.is_empty() {
                continue;
            }
            row_fp.iter_mut().for_each(|v| *v = 0);
            for (k, c) in entries {
                row_fp[*k as usize - t_range.start] = fp_of_scalar(c);
            }
            fp.insert(row_fp.clone());
            if fp.rank() == cap {
                return cap;
            }
        }
    }
    // Rank fell short modulo p: settle it exactly.
    let mut exact = IntEchelon::new(width);
    let mut row = vec![Scalar::zero(); width];
    for i in comps[a].range.clone() {
        for j in comps[b].range.clone() {
            if a == b && j <= i {
                continue;
            }
            let entries = alg.bracket_basis(i, j);
            if entries.is_empty() {
                continue;
            }
            row.iter_mut().for_each(|v| *v = Scalar::zero());
            for (k, c) in entries {
                row[*k as usize - t_range.start] = c.clone();
            }
            exact.insert_rational(&row);
            if exact.rank() == cap {
                return cap;
            }
        }
    }
    exact.rank()
}

#[derive(Clone, Debug)]
pub struct IsoFailure {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug)]
pub struct IsoReport {
    pub pairs_checked: u64,
    pub failures: Vec<IsoFailure>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the diagonal map x -> alpha_{deg x} x is an isomorphism from
/// the algebra assembled over `dst` onto the one assembled over `src` (the
/// direction produced by [`crate::models::rescaling_map`]), bracket by
/// bracket: alpha_i alpha_j cSRC_{ij}^k = alpha_{deg k} cDST_{ij}^k for
/// every basis pair. The identity map verifies src against dst unchanged.
pub fn verify_isomorphism(
    id: ModelId,
    src: &ScalarAssignment,
    dst: &ScalarAssignment,
    alphas: &RescalingMap,
) -> Result<IsoReport, Error> {
    let a = assemble(&model_spec(id, src.clone())?)?;
    let b = assemble(&model_spec(id, dst.clone())?)?;
    let dim = a.dim();
    let mut failures = Vec::new();
    let mut pairs_checked = 0u64;
    for i in 0..dim {
        let ai = alphas.get(a.degree_of(i));
        for j in i + 1..dim {
            pairs_checked += 1;
            let aj = alphas.get(a.degree_of(j));
            let weight = ai.clone() * aj;
            let ra = a.bracket_basis(i, j);
            let rb = b.bracket_basis(i, j);
            let mut ok = ra.len() == rb.len();
            if ok {
                for ((ka, ca), (kb, cb)) in ra.iter().zip(rb) {
                    if ka != kb {
                        ok = false;
                        break;
                    }
                    let ak = alphas.get(a.degree_of(*ka as usize));
                    if weight.clone() * ca.clone() != ak * cb.clone() {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                failures.push(IsoFailure { i, j });
                if failures.len() >= 10 {
                    return Ok(IsoReport {
                        pairs_checked,
                        failures,
                    });
                }
            }
        }
    }
    Ok(IsoReport {
        pairs_checked,
        failures,
    })
}
