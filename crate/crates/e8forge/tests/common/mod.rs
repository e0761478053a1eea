//! Independent oracles used by the integration and acceptance tests. These
//! deliberately avoid the library's closed-form blade kernels: the pairing
//! is a determinant expanded over permutations, the contraction is the
//! shuffle sum, and the dualized bracket is solved from its trace-defining
//! property over an sl basis.

// Each test binary uses its own subset of the oracles.
#![allow(dead_code)]

use e8forge::scalar::{int, Scalar};
use e8forge::{form, sl_action, MultiVector, SlElement};
use num_traits::Zero;

/// All degree-k basis blades of an n-dimensional space as index lists.
pub fn blade_lists(n: u8, k: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 1u8)];
    while let Some((prefix, next)) = stack.pop() {
        if prefix.len() == k as usize {
            out.push(prefix);
            continue;
        }
        for i in next..=n {
            let mut p = prefix.clone();
            p.push(i);
            stack.push((p, i + 1));
        }
    }
    out.sort();
    out
}

pub fn primal(n: u8, indices: &[u8]) -> MultiVector {
    MultiVector::basis(n, indices).unwrap()
}

pub fn dual(n: u8, indices: &[u8]) -> MultiVector {
    MultiVector::term(n, int(1), indices, true).unwrap()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..k {
            let mut p = rest.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut swaps = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                swaps += 1;
            }
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// <e_x, e^a> as det(phi_i(v_j)) expanded over the symmetric group.
pub fn pairing_det_oracle(x: &[u8], a: &[u8]) -> Scalar {
    assert_eq!(x.len(), a.len());
    let r = x.len();
    let mut acc = int(0);
    for p in permutations(r) {
        let mut term = int(perm_sign(&p));
        for i in 0..r {
            // phi_{a[i]} evaluated on v_{x[p(i)]}.
            if a[i] != x[p[i]] {
                term = int(0);
                break;
            }
        }
        acc += term;
    }
    acc
}

/// e_x contract e^a by the shuffle sum over permutations that keep the order
/// of the trailing q slots.
pub fn contract_shuffle_oracle(n: u8, x: &[u8], a: &[u8]) -> MultiVector {
    let total = x.len();
    let p = a.len();
    let q = total - p;
    let mut acc = MultiVector::zero(n, q as u8, false);
    for perm in permutations(total) {
        if !perm[p..].windows(2).all(|w| w[0] < w[1]) {
            continue;
        }
        let mut coeff = int(perm_sign(&perm));
        for t in 0..p {
            if a[t] != x[perm[t]] {
                coeff = int(0);
                break;
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let tail: Vec<u8> = perm[p..].iter().map(|&t| x[t]).collect();
        let term = MultiVector::term(n, coeff, &tail, false).unwrap();
        acc = acc.add(&term).unwrap();
    }
    acc
}

/// Solves tr(f . X) = (f.x, y) for the unique traceless X over the canonical
/// sl basis: off-diagonal entries directly, the diagonal from the h-basis
/// differences plus the zero-trace condition.
pub fn dual_bracket_trace_oracle(x: &MultiVector, y: &MultiVector) -> SlElement {
    let n = x.n();
    let mut out = SlElement::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let f = SlElement::e(n, i, j);
            let v = form(&sl_action(&f, x).unwrap(), y).unwrap();
            *out.entry_mut(j, i) = v;
        }
    }
    let mut t = Vec::new();
    for i in 1..n {
        let f = SlElement::h(n, i);
        t.push(form(&sl_action(&f, x).unwrap(), y).unwrap());
    }
    // d_i - d_{i+1} = t_i with sum d_i = 0.
    let mut d1 = Scalar::zero();
    for (k, tk) in t.iter().enumerate() {
        d1 += tk.clone() * int((n as i64) - (k as i64) - 1);
    }
    d1 /= int(n as i64);
    let mut d = d1;
    *out.entry_mut(1, 1) = d.clone();
    for i in 2..=n {
        d -= t[(i - 2) as usize].clone();
        *out.entry_mut(i, i) = d.clone();
    }
    out
}

/// The alternating form on a 2-dimensional space with phi(e_1, e_2) = 1.
pub fn symplectic(u: &MultiVector, v: &MultiVector) -> Scalar {
    assert_eq!(u.n(), 2);
    let u1 = u.coeff(0b01);
    let u2 = u.coeff(0b10);
    let v1 = v.coeff(0b01);
    let v2 = v.coeff(0b10);
    u1 * v2 - u2 * v1
}

/// phi_{u,v} = phi(u, -) v + phi(v, -) u in sl(2).
pub fn symplectic_phi_uv(u: &MultiVector, v: &MultiVector) -> SlElement {
    let mut out = SlElement::zero(2);
    for j in 1..=2u8 {
        let ej = primal(2, &[j]);
        // Column j of the matrix: the image of e_j.
        let image_coeff = |w: &MultiVector, scale: &Scalar| -> Vec<Scalar> {
            vec![w.coeff(0b01) * scale.clone(), w.coeff(0b10) * scale.clone()]
        };
        let s1 = symplectic(u, &ej);
        let s2 = symplectic(v, &ej);
        let col: Vec<Scalar> = image_coeff(v, &s1)
            .into_iter()
            .zip(image_coeff(u, &s2))
            .map(|(a, b)| a + b)
            .collect();
        *out.entry_mut(1, j) = col[0].clone();
        *out.entry_mut(2, j) = col[1].clone();
    }
    out
}
