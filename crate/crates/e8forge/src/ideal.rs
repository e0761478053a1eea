//! Simplicity probe: the dimension of the ideal generated by a seed element,
//! by span growth under bracketing with every basis vector until a fixed
//! point.
//!
//! The fixed point is first grown modulo a word-sized prime; reaching the
//! full dimension there already proves the rational statement, since the
//! modular span never exceeds the rational one. Anything smaller is redone
//! in exact arithmetic and that exact dimension is returned.

use std::collections::VecDeque;

use num_traits::Zero;
use rayon::prelude::*;

use crate::assemble::{Element, GradedAlgebra};
use crate::rank::{
    clear_denominators, fp_add, fp_mul, fp_of_scalar, FpEchelon, I128Echelon, IntEchelon,
};
use crate::scalar::Scalar;
use crate::Error;

/// Constants reduced mod p, built once and shared across seeds.
struct FpTensor {
    dim: usize,
    rows: Vec<Vec<(u32, u64)>>,
}

impl FpTensor {
    fn build(alg: &GradedAlgebra) -> Self {
        let dim = alg.dim();
        let mut rows = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if i == j {
                    continue;
                }
                rows[i * dim + j] = alg
                    .bracket_basis(i, j)
                    .iter()
                    .map(|(k, c)| (*k, fp_of_scalar(c)))
                    .collect();
            }
        }
        FpTensor { dim, rows }
    }

    #[inline]
    fn row(&self, i: usize, j: usize) -> &[(u32, u64)] {
        &self.rows[i * self.dim + j]
    }
}

/// Dimension of the smallest ideal containing the seed.
pub fn ideal_closure(alg: &GradedAlgebra, seed: &Element) -> Result<usize, Error> {
    if seed.is_zero() {
        return Err(Error::Degree("ideal_closure: zero seed".into()));
    }
    let tensor = FpTensor::build(alg);
    Ok(closure_with(alg, &tensor, seed, 0..alg.dim(), alg.dim()))
}

/// Dimension of the neutral-component submodule generated by the seed: span
/// growth under bracketing with the neutral basis only. For a seed inside
/// one graded component this probes the component's irreducibility; the
/// closure stays inside that component, so its dimension is certified as
/// soon as the modular span reaches it.
pub fn neutral_module_closure(alg: &GradedAlgebra, seed: &Element) -> Result<usize, Error> {
    if seed.is_zero() {
        return Err(Error::Degree("neutral_module_closure: zero seed".into()));
    }
    let tensor = FpTensor::build(alg);
    let neutral = alg.components()[0].range.clone();
    let cap = match seed.iter().next() {
        Some((i, _))
            if seed
                .iter()
                .all(|(j, _)| alg.component_of(j) == alg.component_of(i)) =>
        {
            alg.components()[alg.component_of(i)].dim()
        }
        _ => alg.dim(),
    };
    Ok(closure_with(alg, &tensor, seed, neutral, cap))
}

fn closure_with(
    alg: &GradedAlgebra,
    tensor: &FpTensor,
    seed: &Element,
    generators: std::ops::Range<usize>,
    cap: usize,
) -> usize {
    let fp_dim = fp_closure(tensor, seed, generators.clone(), cap);
    if fp_dim == cap {
        return cap;
    }
    exact_closure(alg, seed, generators, cap)
}

fn fp_closure(
    t: &FpTensor,
    seed: &Element,
    generators: std::ops::Range<usize>,
    cap: usize,
) -> usize {
    let dim = t.dim;
    let mut ech = FpEchelon::new(dim);
    let mut queue: VecDeque<Vec<u64>> = VecDeque::new();
    let mut v0 = vec![0u64; dim];
    for (i, c) in seed.iter() {
        v0[i] = fp_of_scalar(c);
    }
    if ech.insert(v0.clone()) {
        queue.push_back(v0);
    }
    while let Some(v) = queue.pop_front() {
        if ech.rank() == cap {
            break;
        }
        for b in generators.clone() {
            let mut w = vec![0u64; dim];
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                for &(k, c) in t.row(b, j) {
                    w[k as usize] = fp_add(w[k as usize], fp_mul(vj, c));
                }
            }
            if w.iter().any(|&x| x != 0) && ech.insert(w.clone()) {
                queue.push_back(w);
                if ech.rank() == cap {
                    return cap;
                }
            }
        }
    }
    ech.rank()
}

/// Exact closure over the integers after clearing denominators; machine
/// i128 echelon with a big-integer fallback should any row update overflow.
fn exact_closure(
    alg: &GradedAlgebra,
    seed: &Element,
    generators: std::ops::Range<usize>,
    cap: usize,
) -> usize {
    let dim = alg.dim();
    let mut ech = I128Echelon::new(dim);
    let mut queue: VecDeque<Vec<Scalar>> = VecDeque::new();
    let mut v0 = vec![Scalar::zero(); dim];
    for (i, c) in seed.iter() {
        v0[i] = c.clone();
    }
    let as_i128 = |row: &[Scalar]| -> Option<Vec<i128>> {
        clear_denominators(row)
            .into_iter()
            .map(|v| i128::try_from(v).ok())
            .collect()
    };
    let Some(r0) = as_i128(&v0) else {
        return exact_closure_bigint(alg, seed, generators, cap);
    };
    match ech.insert(r0) {
        None => return exact_closure_bigint(alg, seed, generators, cap),
        Some(true) => queue.push_back(v0),
        Some(false) => {}
    }
    while let Some(v) = queue.pop_front() {
        if ech.rank() == cap {
            break;
        }
        for b in generators.clone() {
            let mut w = vec![Scalar::zero(); dim];
            let mut nonzero = false;
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (k, c) in alg.bracket_basis(b, j) {
                    let add = vj.clone() * c.clone();
                    if !add.is_zero() {
                        w[*k as usize] += add;
                        nonzero = true;
                    }
                }
            }
            if !nonzero || w.iter().all(|x| x.is_zero()) {
                continue;
            }
            let Some(wi) = as_i128(&w) else {
                return exact_closure_bigint(alg, seed, generators, cap);
            };
            match ech.insert(wi) {
                None => return exact_closure_bigint(alg, seed, generators.clone(), cap),
                Some(true) => {
                    queue.push_back(w);
                    if ech.rank() == cap {
                        return cap;
                    }
                }
                Some(false) => {}
            }
        }
    }
    ech.rank()
}

fn exact_closure_bigint(
    alg: &GradedAlgebra,
    seed: &Element,
    generators: std::ops::Range<usize>,
    cap: usize,
) -> usize {
    let dim = alg.dim();
    let mut ech = IntEchelon::new(dim);
    let mut queue: VecDeque<Vec<Scalar>> = VecDeque::new();
    let mut v0 = vec![Scalar::zero(); dim];
    for (i, c) in seed.iter() {
        v0[i] = c.clone();
    }
    if ech.insert_rational(&v0) {
        queue.push_back(v0);
    }
    while let Some(v) = queue.pop_front() {
        if ech.rank() == cap {
            break;
        }
        for b in generators.clone() {
            let mut w = vec![Scalar::zero(); dim];
            let mut nonzero = false;
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (k, c) in alg.bracket_basis(b, j) {
                    let add = vj.clone() * c.clone();
                    if !add.is_zero() {
                        w[*k as usize] += add;
                        nonzero = true;
                    }
                }
            }
            if nonzero && ech.insert_rational(&w) {
                queue.push_back(w);
                if ech.rank() == cap {
                    return cap;
                }
            }
        }
    }
    ech.rank()
}

#[derive(Debug)]
pub struct SimplicityReport {
    pub dim: usize,
    pub seeds_checked: usize,
    pub min_dimension: usize,
    /// Basis seeds whose ideal closure fell short of the full dimension.
    pub failures: Vec<(usize, usize)>,
}

impl SimplicityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.min_dimension == self.dim
    }
}

/// Runs the ideal closure from every basis vector.
pub fn simplicity_probe(alg: &GradedAlgebra) -> SimplicityReport {
    let dim = alg.dim();
    let tensor = FpTensor::build(alg);
    let dims: Vec<usize> = (0..dim)
        .into_par_iter()
        .map(|i| closure_with(alg, &tensor, &Element::basis(i), 0..dim, dim))
        .collect();
    let min_dimension = dims.iter().copied().min().unwrap_or(0);
    let failures = dims
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != dim)
        .map(|(i, &d)| (i, d))
        .collect();
    SimplicityReport {
        dim,
        seeds_checked: dim,
        min_dimension,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assemble::assemble;
    use crate::models::{canonical_scalars, model_spec, ModelId};
    use crate::scalar::int;

    #[test]
    fn whole_algebra_closes_immediately() {
        let alg =
            assemble(&model_spec(ModelId::Z3, canonical_scalars(ModelId::Z3)).unwrap()).unwrap();
        let mut all = Element::zero();
        for i in 0..alg.dim() {
            all.add_term(i as u32, int(1));
        }
        assert_eq!(ideal_closure(&alg, &all).unwrap(), 248);
    }

    #[test]
    fn single_basis_seed_generates_everything() {
        let alg =
            assemble(&model_spec(ModelId::Z5, canonical_scalars(ModelId::Z5)).unwrap()).unwrap();
        for i in [0usize, 48, 100, 247] {
            assert_eq!(ideal_closure(&alg, &Element::basis(i)).unwrap(), 248);
        }
    }

    #[test]
    fn zero_seed_is_rejected() {
        let alg =
            assemble(&model_spec(ModelId::Z3, canonical_scalars(ModelId::Z3)).unwrap()).unwrap();
        assert!(ideal_closure(&alg, &Element::zero()).is_err());
    }

    #[test]
    fn zeroed_dual_pair_leaves_a_proper_ideal() {
        // With [L_1, L_2] forced to zero, L_1 + L_2 is a proper ideal, so a
        // graded seed must close below the full dimension.
        let alg =
            assemble(&model_spec(ModelId::Z3, canonical_scalars(ModelId::Z3)).unwrap()).unwrap();
        let broken = alg.zero_component_pair(1, 2);
        let seed = Element::basis(broken.components()[1].range.start);
        let dim = ideal_closure(&broken, &seed).unwrap();
        assert_eq!(dim, 168);
    }
}
