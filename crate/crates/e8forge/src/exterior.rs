//! Exterior-algebra primitives over a fixed basis: wedge, pairing against the
//! dual, volume-form dual, contraction, the star product, the scalar form and
//! the sl(V)-valued dualized bracket.
//!
//! Index sets are n-bit masks (bit i-1 set means basis index i is present)
//! and all permutation signs come from popcount-based inversion counting.
//! The volume map is fixed to phi(e_{1..n}) = 1 throughout.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::scalar::{int, rat, sign_scalar, Scalar};
use crate::Error;

pub const MAX_DIM: u8 = 9;

/// Sign of sorting the concatenation (a ascending, b ascending) into one
/// ascending list, for disjoint masks: parity of #{(x,y) in a x b : x > y}.
fn shuffle_sign(a: u16, b: u16) -> i8 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        swaps += (a >> (y + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn full_mask(n: u8) -> u16 {
    (1u16 << n) - 1
}

/// A basis wedge monomial: an ascending index subset of {1..n}, primal
/// (`e_{i1..ik}`) or dual (`e^{i1..ik}`). The empty set is 1 in degree 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Blade {
    n: u8,
    mask: u16,
    dual: bool,
}

impl Blade {
    pub fn new(n: u8, mask: u16, dual: bool) -> Result<Self, Error> {
        if !(2..=MAX_DIM).contains(&n) {
            return Err(Error::Dimension(format!(
                "ambient dimension {n} out of range 2..=9"
            )));
        }
        if mask & !full_mask(n) != 0 {
            return Err(Error::Dimension(format!(
                "blade mask {mask:#b} exceeds dimension {n}"
            )));
        }
        Ok(Blade { n, mask, dual })
    }

    /// Builds a blade from possibly unordered 1-based indices, returning the
    /// permutation sign that sorts them. `None` on a repeated index (the
    /// monomial is zero).
    pub fn from_indices(n: u8, indices: &[u8], dual: bool) -> Result<Option<(i8, Self)>, Error> {
        let mut mask = 0u16;
        for &i in indices {
            if i < 1 || i > n {
                return Err(Error::Dimension(format!("index {i} out of range 1..={n}")));
            }
            if mask & (1 << (i - 1)) != 0 {
                return Ok(None);
            }
            mask |= 1 << (i - 1);
        }
        let mut swaps = 0usize;
        for a in 0..indices.len() {
            for b in a + 1..indices.len() {
                if indices[a] > indices[b] {
                    swaps += 1;
                }
            }
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Ok(Some((sign, Blade::new(n, mask, dual)?)))
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    pub fn dual(&self) -> bool {
        self.dual
    }

    pub fn degree(&self) -> u8 {
        self.mask.count_ones() as u8
    }

    /// Ascending 1-based indices.
    pub fn indices(&self) -> Vec<u8> {
        (1..=self.n)
            .filter(|i| self.mask & (1 << (i - 1)) != 0)
            .collect()
    }

    pub fn label(&self) -> String {
        if self.mask == 0 {
            return "1".to_string();
        }
        let body: String = self.indices().iter().map(|i| i.to_string()).collect();
        if self.dual {
            format!("e^{body}")
        } else {
            format!("e_{body}")
        }
    }
}

/// Homogeneous exact-rational element of Lambda^k V (or its dual): a sparse
/// combination of blades of one degree, duality and ambient dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiVector {
    n: u8,
    degree: u8,
    dual: bool,
    terms: BTreeMap<u16, Scalar>,
}

impl MultiVector {
    pub fn zero(n: u8, degree: u8, dual: bool) -> Self {
        MultiVector {
            n,
            degree,
            dual,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_blade(blade: Blade) -> Self {
        let mut mv = MultiVector::zero(blade.n, blade.degree(), blade.dual);
        mv.terms.insert(blade.mask, int(1));
        mv
    }

    /// Single term with the given coefficient and (possibly unordered)
    /// indices; the sort sign is folded into the coefficient.
    pub fn term(n: u8, coeff: Scalar, indices: &[u8], dual: bool) -> Result<Self, Error> {
        match Blade::from_indices(n, indices, dual)? {
            None => Ok(MultiVector::zero(n, indices.len() as u8, dual)),
            Some((sign, blade)) => {
                let mut mv = MultiVector::zero(n, blade.degree(), dual);
                mv.add_term(blade.mask, coeff * sign_scalar(sign));
                Ok(mv)
            }
        }
    }

    pub fn basis(n: u8, indices: &[u8]) -> Result<Self, Error> {
        MultiVector::term(n, int(1), indices, false)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn dual(&self) -> bool {
        self.dual
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: u16) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Blade, &Scalar)> + '_ {
        self.terms.iter().map(move |(&mask, c)| {
            (
                Blade {
                    n: self.n,
                    mask,
                    dual: self.dual,
                },
                c,
            )
        })
    }

    fn add_term(&mut self, mask: u16, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &MultiVector) -> Result<MultiVector, Error> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (&mask, c) in &other.terms {
            out.add_term(mask, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiVector {
        if c.is_zero() {
            return MultiVector::zero(self.n, self.degree, self.dual);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c.clone();
        }
        out
    }

    pub fn neg(&self) -> MultiVector {
        self.scale(&int(-1))
    }

    /// Value of a degree-0 multivector as a plain scalar.
    pub fn scalar_part(&self) -> Scalar {
        self.coeff(0)
    }

    fn check_same_space(&self, other: &MultiVector) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.n, other.n
            )));
        }
        if self.degree != other.degree || self.dual != other.dual {
            return Err(Error::Degree(format!(
                "degree/duality mismatch: ({},{}) vs ({},{})",
                self.degree, self.dual, other.degree, other.dual
            )));
        }
        Ok(())
    }
}

impl fmt::Display for MultiVector {
    /// Debug dump format: `p/q e_{i1..ik}` terms joined by ` + `, indices
    /// ascending, terms ordered lexicographically by index sequence.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(Vec<u8>, &Scalar)> =
            self.iter().map(|(b, c)| (b.indices(), c)).collect();
        terms.sort();
        let rendered: Vec<String> = terms
            .into_iter()
            .map(|(idx, c)| {
                let coeff = crate::scalar::format_scalar(c);
                if idx.is_empty() {
                    coeff
                } else {
                    let body: String = idx.iter().map(|i| i.to_string()).collect();
                    let sym = if self.dual { "e^" } else { "e_" };
                    format!("{coeff} {sym}{body}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// The fixed volume map: phi(e_{1..n}) = 1.
#[derive(Clone, Copy, Debug)]
pub struct VolumeForm {
    n: u8,
}

impl VolumeForm {
    pub fn standard(n: u8) -> Self {
        VolumeForm { n }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// phi applied to a degree-n multivector.
    pub fn apply(&self, x: &MultiVector) -> Result<Scalar, Error> {
        if x.n() != self.n || x.degree() != self.n || x.dual() {
            return Err(Error::Degree(
                "volume form needs a primal multivector of top degree".into(),
            ));
        }
        Ok(x.coeff(full_mask(self.n)))
    }
}

/// Wedge product. Zero whenever the degrees sum past n.
pub fn wedge(x: &MultiVector, y: &MultiVector) -> Result<MultiVector, Error> {
    if x.n() != y.n() {
        return Err(Error::Dimension("wedge: ambient dimensions differ".into()));
    }
    if x.dual() != y.dual() {
        return Err(Error::Duality(
            "wedge: mixed primal and dual arguments".into(),
        ));
    }
    let n = x.n();
    let deg = x.degree() + y.degree();
    let mut out = MultiVector::zero(n, deg.min(n + 1), x.dual());
    out.degree = deg;
    if deg > n {
        return Ok(MultiVector {
            terms: BTreeMap::new(),
            ..out
        });
    }
    for (&xm, xc) in &x.terms {
        for (&ym, yc) in &y.terms {
            if xm & ym != 0 {
                continue;
            }
            let sign = shuffle_sign(xm, ym);
            out.add_term(xm | ym, xc.clone() * yc.clone() * sign_scalar(sign));
        }
    }
    Ok(out)
}

/// The nondegenerate pairing of Lambda^r V with Lambda^r V*. On blades it is
/// det(phi_i(v_j)), which for ascending index sets is 1 on equal sets and 0
/// otherwise; degree 0 pairs by plain multiplication.
pub fn pairing(x: &MultiVector, a: &MultiVector) -> Result<Scalar, Error> {
    if x.n() != a.n() {
        return Err(Error::Dimension(
            "pairing: ambient dimensions differ".into(),
        ));
    }
    if x.dual() || !a.dual() {
        return Err(Error::Duality("pairing: need (primal, dual)".into()));
    }
    if x.degree() != a.degree() {
        return Err(Error::Degree(format!(
            "pairing: degrees differ ({} vs {})",
            x.degree(),
            a.degree()
        )));
    }
    let mut acc = Scalar::zero();
    for (&xm, xc) in &x.terms {
        if let Some(ac) = a.terms.get(&xm) {
            acc += xc.clone() * ac.clone();
        }
    }
    Ok(acc)
}

/// Volume-form dual: Lambda^{n-r} V -> (Lambda^r V)* determined by
/// <y, tilde(x)> = phi(x wedge y). On a blade it is sgn(sigma) e^{complement}
/// with sigma the permutation (indices, complement ascending).
pub fn tilde(x: &MultiVector) -> Result<MultiVector, Error> {
    if x.dual() {
        return Err(Error::Duality("tilde: argument must be primal".into()));
    }
    let n = x.n();
    let mut out = MultiVector::zero(n, n - x.degree(), true);
    for (&xm, xc) in &x.terms {
        let comp = full_mask(n) & !xm;
        let sign = shuffle_sign(xm, comp);
        out.add_term(comp, xc.clone() * sign_scalar(sign));
    }
    Ok(out)
}

/// Contraction (internal product) of a primal multivector of degree p+q
/// against a dual one of degree p, adjoint to wedging on the dual side:
/// <x contract a, b> = <x, a wedge b>.
pub fn contract(x: &MultiVector, a: &MultiVector) -> Result<MultiVector, Error> {
    if x.n() != a.n() {
        return Err(Error::Dimension(
            "contract: ambient dimensions differ".into(),
        ));
    }
    if x.dual() || !a.dual() {
        return Err(Error::Duality("contract: need (primal, dual)".into()));
    }
    if a.degree() > x.degree() {
        return Err(Error::Degree(format!(
            "contract: dual degree {} exceeds primal degree {}",
            a.degree(),
            x.degree()
        )));
    }
    let n = x.n();
    let mut out = MultiVector::zero(n, x.degree() - a.degree(), false);
    for (&xm, xc) in &x.terms {
        for (&am, ac) in &a.terms {
            if am & !xm != 0 {
                continue;
            }
            let rest = xm & !am;
            let sign = shuffle_sign(am, rest);
            out.add_term(rest, xc.clone() * ac.clone() * sign_scalar(sign));
        }
    }
    Ok(out)
}

/// Star product on the exterior algebra: wedge below total degree n,
/// contraction against the volume-form dual at or above it. The result lives
/// in degree (i+j) mod n.
pub fn star(x: &MultiVector, y: &MultiVector) -> Result<MultiVector, Error> {
    if x.n() != y.n() {
        return Err(Error::Dimension("star: ambient dimensions differ".into()));
    }
    if x.dual() || y.dual() {
        return Err(Error::Duality("star: both arguments must be primal".into()));
    }
    let n = x.n();
    if x.degree() + y.degree() < n {
        wedge(x, y)
    } else {
        contract(x, &tilde(y)?)
    }
}

/// The scalar form (x, y) = x * y = phi(y wedge x) on complementary degrees.
pub fn form(x: &MultiVector, y: &MultiVector) -> Result<Scalar, Error> {
    if x.n() != y.n() {
        return Err(Error::Dimension("form: ambient dimensions differ".into()));
    }
    if x.dual() || y.dual() {
        return Err(Error::Duality("form: both arguments must be primal".into()));
    }
    let n = x.n();
    if x.degree() + y.degree() != n {
        return Err(Error::Degree(format!(
            "form: degrees {} + {} do not sum to {}",
            x.degree(),
            y.degree(),
            n
        )));
    }
    let mut acc = Scalar::zero();
    for (&xm, xc) in &x.terms {
        let ym = full_mask(n) & !xm;
        if let Some(yc) = y.terms.get(&ym) {
            let sign = shuffle_sign(ym, xm);
            acc += yc.clone() * xc.clone() * sign_scalar(sign);
        }
    }
    Ok(acc)
}

/// Traceless n x n matrix, an element of sl(V). Entry (i,j) is the
/// coefficient of e_i^j, the map sending e_j to e_i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SlElement {
    n: u8,
    entries: Vec<Scalar>,
}

impl SlElement {
    pub fn zero(n: u8) -> Self {
        SlElement {
            n,
            entries: vec![Scalar::zero(); (n as usize) * (n as usize)],
        }
    }

    pub fn from_entries(n: u8, entries: Vec<Scalar>) -> Result<Self, Error> {
        if entries.len() != (n as usize) * (n as usize) {
            return Err(Error::Dimension("sl element: wrong entry count".into()));
        }
        let m = SlElement { n, entries };
        if !m.trace().is_zero() {
            return Err(Error::Degree("sl element: nonzero trace".into()));
        }
        Ok(m)
    }

    /// Off-diagonal basis matrix e_i^j (1-based, i != j).
    pub fn e(n: u8, i: u8, j: u8) -> Self {
        assert!(i != j && i >= 1 && j >= 1 && i <= n && j <= n);
        let mut m = SlElement::zero(n);
        *m.entry_mut(i, j) = int(1);
        m
    }

    /// Diagonal basis matrix h_i = e_i^i - e_{i+1}^{i+1} (1 <= i < n).
    pub fn h(n: u8, i: u8) -> Self {
        assert!(i >= 1 && i < n);
        let mut m = SlElement::zero(n);
        *m.entry_mut(i, i) = int(1);
        *m.entry_mut(i + 1, i + 1) = int(-1);
        m
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn entry(&self, i: u8, j: u8) -> &Scalar {
        &self.entries[(i as usize - 1) * self.n as usize + (j as usize - 1)]
    }

    pub fn entry_mut(&mut self, i: u8, j: u8) -> &mut Scalar {
        &mut self.entries[(i as usize - 1) * self.n as usize + (j as usize - 1)]
    }

    pub fn trace(&self) -> Scalar {
        (1..=self.n)
            .map(|i| self.entry(i, i).clone())
            .fold(Scalar::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &SlElement) -> SlElement {
        assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        SlElement { n: self.n, entries }
    }

    pub fn scale(&self, c: &Scalar) -> SlElement {
        SlElement {
            n: self.n,
            entries: self.entries.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn compose(&self, other: &SlElement) -> SlElement {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = SlElement::zero(n);
        for i in 1..=n {
            for j in 1..=n {
                let mut acc = Scalar::zero();
                for k in 1..=n {
                    acc += self.entry(i, k).clone() * other.entry(k, j).clone();
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        out
    }

    /// tr(self . other).
    pub fn trace_product(&self, other: &SlElement) -> Scalar {
        assert_eq!(self.n, other.n);
        let mut acc = Scalar::zero();
        for i in 1..=self.n {
            for j in 1..=self.n {
                acc += self.entry(i, j).clone() * other.entry(j, i).clone();
            }
        }
        acc
    }

    /// Canonical basis of sl(n): e_i^j for i != j in row-major order, then
    /// h_1 .. h_{n-1}.
    pub fn basis(n: u8) -> Vec<SlElement> {
        let mut out = Vec::with_capacity((n as usize) * (n as usize) - 1);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    out.push(SlElement::e(n, i, j));
                }
            }
        }
        for i in 1..n {
            out.push(SlElement::h(n, i));
        }
        out
    }

    pub fn basis_len(n: u8) -> usize {
        (n as usize) * (n as usize) - 1
    }

    pub fn basis_label(n: u8, idx: usize) -> String {
        let off = (n as usize) * (n as usize) - n as usize;
        if idx < off {
            let mut t = 0usize;
            for i in 1..=n {
                for j in 1..=n {
                    if i != j {
                        if t == idx {
                            return format!("E_{i}_{j}");
                        }
                        t += 1;
                    }
                }
            }
            unreachable!()
        }
        format!("H_{}", idx - off + 1)
    }

    /// Coefficients in the canonical basis. Off-diagonal coefficients are the
    /// matching entries; the h-coefficients are the partial sums of the
    /// diagonal.
    pub fn expand_in_basis(&self) -> Vec<Scalar> {
        let n = self.n;
        let mut out = Vec::with_capacity(SlElement::basis_len(n));
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    out.push(self.entry(i, j).clone());
                }
            }
        }
        let mut partial = Scalar::zero();
        for i in 1..n {
            partial += self.entry(i, i).clone();
            out.push(partial.clone());
        }
        out
    }
}

/// Natural action of f in sl(V) on Lambda^k V by the Leibniz rule; on dual
/// multivectors f acts as -transpose, which is what invariance of the
/// pairing forces.
pub fn sl_action(f: &SlElement, x: &MultiVector) -> Result<MultiVector, Error> {
    if f.n() != x.n() {
        return Err(Error::Dimension(
            "sl_action: ambient dimensions differ".into(),
        ));
    }
    let n = x.n();
    let mut out = MultiVector::zero(n, x.degree(), x.dual());
    for (&xm, xc) in &x.terms {
        for i in 1..=n {
            if xm & (1 << (i - 1)) == 0 {
                continue;
            }
            for j in 1..=n {
                let fc = if x.dual() {
                    // -f^T: coefficient of e_j in the image of e_i.
                    -f.entry(i, j).clone()
                } else {
                    f.entry(j, i).clone()
                };
                if fc.is_zero() {
                    continue;
                }
                if j == i {
                    out.add_term(xm, xc.clone() * fc);
                    continue;
                }
                if xm & (1 << (j - 1)) != 0 {
                    continue;
                }
                let new_mask = (xm & !(1 << (i - 1))) | (1 << (j - 1));
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                let between_mask = (full_mask(n) & !((1u16 << lo) - 1)) & ((1u16 << (hi - 1)) - 1);
                let crossings = ((xm & !(1 << (i - 1))) & between_mask).count_ones();
                let sign = if crossings.is_multiple_of(2) { 1 } else { -1 };
                out.add_term(new_mask, xc.clone() * fc * sign_scalar(sign));
            }
        }
    }
    Ok(out)
}

/// The sl(V)-valued bracket on complementary exterior powers, determined by
/// tr(f . \[x,y\]) = (f.x, y) for all traceless f. Computed on blades by the
/// closed forms: full diagonal part on disjoint complementary sets, a single
/// e_c^d when the sets share one index, zero when they share two or more.
pub fn dual_bracket(x: &MultiVector, y: &MultiVector) -> Result<SlElement, Error> {
    if x.n() != y.n() {
        return Err(Error::Dimension(
            "dual_bracket: ambient dimensions differ".into(),
        ));
    }
    if x.dual() || y.dual() {
        return Err(Error::Duality(
            "dual_bracket: both arguments must be primal".into(),
        ));
    }
    let n = x.n();
    if x.degree() + y.degree() != n {
        return Err(Error::Degree(format!(
            "dual_bracket: degrees {} + {} do not sum to {}",
            x.degree(),
            y.degree(),
            n
        )));
    }
    let k = x.degree();
    let mut out = SlElement::zero(n);
    if k == 0 || k == n {
        return Ok(out);
    }
    let outer_sign = if (k as u32 * (n - k) as u32).is_multiple_of(2) {
        1i8
    } else {
        -1
    };
    for (&xm, xc) in &x.terms {
        for (&ym, yc) in &y.terms {
            let inter = xm & ym;
            match inter.count_ones() {
                0 => {
                    // Disjoint sets: sgn(sigma) (sum_{i in x} e_i^i - k/n id).
                    let sign = shuffle_sign(xm, ym) * outer_sign;
                    let c = xc.clone() * yc.clone() * sign_scalar(sign);
                    let shift = c.clone() * rat(k as i64, n as i64);
                    for i in 1..=n {
                        if xm & (1 << (i - 1)) != 0 {
                            *out.entry_mut(i, i) += c.clone() - shift.clone();
                        } else {
                            *out.entry_mut(i, i) -= shift.clone();
                        }
                    }
                }
                1 => {
                    // One shared index: a single e_c^d, with the shared
                    // index brought to the front of both factors.
                    let c_bit = inter.trailing_zeros() as u8;
                    let common = c_bit + 1;
                    let missing_mask = full_mask(n) & !(xm | ym);
                    debug_assert_eq!(missing_mask.count_ones(), 1);
                    let missing = missing_mask.trailing_zeros() as u8 + 1;
                    let p = (xm & ((1u16 << c_bit) - 1)).count_ones();
                    let q = (ym & ((1u16 << c_bit) - 1)).count_ones();
                    let mut seq: Vec<u8> = vec![common];
                    seq.extend((1..=n).filter(|i| xm & !inter & (1 << (i - 1)) != 0));
                    seq.extend((1..=n).filter(|i| ym & !inter & (1 << (i - 1)) != 0));
                    seq.push(missing);
                    let mut swaps = 0usize;
                    for a in 0..seq.len() {
                        for b in a + 1..seq.len() {
                            if seq[a] > seq[b] {
                                swaps += 1;
                            }
                        }
                    }
                    let mut sign = if swaps.is_multiple_of(2) { 1i8 } else { -1 };
                    sign *= outer_sign;
                    if (n + k) % 2 == 1 {
                        sign = -sign;
                    }
                    if (p + q) % 2 == 1 {
                        sign = -sign;
                    }
                    *out.entry_mut(common, missing) += xc.clone() * yc.clone() * sign_scalar(sign);
                }
                _ => {}
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn mv(n: u8, indices: &[u8]) -> MultiVector {
        MultiVector::basis(n, indices).unwrap()
    }

    fn dual_mv(n: u8, indices: &[u8]) -> MultiVector {
        MultiVector::term(n, int(1), indices, true).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let n = 4;
        let w = wedge(&mv(n, &[1]), &mv(n, &[2])).unwrap();
        assert_eq!(w, mv(n, &[1, 2]));
        let w = wedge(&mv(n, &[2]), &mv(n, &[1])).unwrap();
        assert_eq!(w, mv(n, &[1, 2]).neg());
        let w = wedge(&mv(n, &[1, 2]), &mv(n, &[1, 3])).unwrap();
        assert!(w.is_zero());
        let w = wedge(&mv(n, &[1, 2]), &mv(n, &[3, 4])).unwrap();
        assert_eq!(w, mv(n, &[1, 2, 3, 4]));
    }

    #[test]
    fn wedge_rejects_mixed_arguments() {
        assert!(wedge(&mv(4, &[1]), &mv(5, &[2])).is_err());
        assert!(wedge(&mv(4, &[1]), &dual_mv(4, &[2])).is_err());
    }

    #[test]
    fn pairing_basics() {
        let n = 4;
        assert_eq!(
            pairing(&mv(n, &[1, 2]), &dual_mv(n, &[1, 2])).unwrap(),
            int(1)
        );
        assert_eq!(
            pairing(&mv(n, &[1, 2]), &dual_mv(n, &[1, 3])).unwrap(),
            int(0)
        );
        // <e_12 ^ e_3, e^132> = -1, frozen from the S_3 determinant expansion.
        let x = wedge(&mv(n, &[1, 2]), &mv(n, &[3])).unwrap();
        let a = dual_mv(n, &[1, 3, 2]);
        assert_eq!(pairing(&x, &a).unwrap(), int(-1));
        assert!(pairing(&mv(n, &[1]), &dual_mv(n, &[1, 2])).is_err());
    }

    #[test]
    fn pairing_degree_zero_multiplies() {
        let s = MultiVector::term(3, rat(2, 3), &[], false).unwrap();
        let t = MultiVector::term(3, rat(9, 2), &[], true).unwrap();
        assert_eq!(pairing(&s, &t).unwrap(), int(3));
    }

    #[test]
    fn tilde_values() {
        // tilde(e_{1..n}) = 1 in the dual of degree 0.
        let top = mv(5, &[1, 2, 3, 4, 5]);
        let t = tilde(&top).unwrap();
        assert_eq!(t.degree(), 0);
        assert_eq!(t.scalar_part(), int(1));
        // n=5: tilde(e_123) = e^45, tilde(e_13) = -e^245.
        assert_eq!(tilde(&mv(5, &[1, 2, 3])).unwrap(), dual_mv(5, &[4, 5]));
        assert_eq!(
            tilde(&mv(5, &[1, 3])).unwrap(),
            dual_mv(5, &[2, 4, 5]).neg()
        );
    }

    #[test]
    fn contract_values() {
        // Zero when the dual indices are not contained in the primal.
        let r = contract(&mv(5, &[1, 2, 3]), &dual_mv(5, &[4, 5])).unwrap();
        assert!(r.is_zero());
        // q = 0 reduces to the pairing.
        let r = contract(&mv(5, &[1, 2]), &dual_mv(5, &[1, 2])).unwrap();
        assert_eq!(r.scalar_part(), int(1));
        // e_123 contract e^2 = -e_13, frozen from the shuffle sum.
        let r = contract(&mv(5, &[1, 2, 3]), &dual_mv(5, &[2])).unwrap();
        assert_eq!(r, mv(5, &[1, 3]).neg());
        assert!(contract(&mv(5, &[1]), &dual_mv(5, &[1, 2])).is_err());
    }

    #[test]
    fn star_values() {
        // Below top degree it is the wedge.
        assert_eq!(star(&mv(5, &[1]), &mv(5, &[2])).unwrap(), mv(5, &[1, 2]));
        // n=5: e_1 * e_2345 = phi(e_2345 ^ e_1) = 1.
        let r = star(&mv(5, &[1]), &mv(5, &[2, 3, 4, 5])).unwrap();
        assert_eq!(r.degree(), 0);
        assert_eq!(r.scalar_part(), int(1));
        // n=5: e_123 * e_345 = e_3.
        let r = star(&mv(5, &[1, 2, 3]), &mv(5, &[3, 4, 5])).unwrap();
        assert_eq!(r, mv(5, &[3]));
        // Degrees 3+3 > 5: the swap sign is (-1)^{ij+(i+j-n)} = (-1)^10 = +1.
        let s = star(&mv(5, &[3, 4, 5]), &mv(5, &[1, 2, 3])).unwrap();
        assert_eq!(s, mv(5, &[3]));
        // Degrees 2+4 > 5: the swap sign is (-1)^{8+1} = -1.
        let r = star(&mv(5, &[1, 2]), &mv(5, &[2, 3, 4, 5])).unwrap();
        let s = star(&mv(5, &[2, 3, 4, 5]), &mv(5, &[1, 2])).unwrap();
        assert_eq!(r, s.neg());
        assert_eq!(r, mv(5, &[2]));
    }

    #[test]
    fn form_values() {
        // n=5: (e_12, e_345) = sgn(3,4,5,1,2) = +1.
        assert_eq!(form(&mv(5, &[1, 2]), &mv(5, &[3, 4, 5])).unwrap(), int(1));
        // n=2 with phi(e_12)=1: (e_1, e_2) = -1 = -phi_symp(e_1, e_2).
        assert_eq!(form(&mv(2, &[1]), &mv(2, &[2])).unwrap(), int(-1));
        // Overlapping support wedges to zero.
        assert_eq!(form(&mv(5, &[1, 2]), &mv(5, &[2, 4, 5])).unwrap(), int(0));
        assert!(form(&mv(5, &[1]), &mv(5, &[2])).is_err());
    }

    #[test]
    fn dual_bracket_values() {
        // n=5: [e_12, e_345] = e_1^1 + e_2^2 - (2/5) id (disjoint case).
        let b = dual_bracket(&mv(5, &[1, 2]), &mv(5, &[3, 4, 5])).unwrap();
        let mut expected = SlElement::zero(5);
        for i in 1..=5u8 {
            let base = if i <= 2 { int(1) } else { int(0) };
            *expected.entry_mut(i, i) = base - rat(2, 5);
        }
        assert_eq!(b, expected);
        // Overlap of cardinality two kills the bracket.
        let b = dual_bracket(&mv(5, &[1, 2]), &mv(5, &[1, 2, 5])).unwrap();
        assert!(b.is_zero());
        // n=5: [e_12, e_134] = -e_1^5 (one shared index).
        let b = dual_bracket(&mv(5, &[1, 2]), &mv(5, &[1, 3, 4])).unwrap();
        let mut expected = SlElement::zero(5);
        *expected.entry_mut(1, 5) = int(-1);
        assert_eq!(b, expected);
        // n=2: [e_1, e_2] = (1/2)(e_2^2 - e_1^1) = (1/2) phi_{e_1,e_2}.
        let b = dual_bracket(&mv(2, &[1]), &mv(2, &[2])).unwrap();
        let mut expected = SlElement::zero(2);
        *expected.entry_mut(1, 1) = rat(-1, 2);
        *expected.entry_mut(2, 2) = rat(1, 2);
        assert_eq!(b, expected);
    }

    #[test]
    fn dual_bracket_trivial_degrees() {
        let one = MultiVector::term(4, int(1), &[], false).unwrap();
        let top = mv(4, &[1, 2, 3, 4]);
        assert!(dual_bracket(&one, &top).unwrap().is_zero());
        assert!(dual_bracket(&top, &one).unwrap().is_zero());
    }

    #[test]
    fn sl_action_values() {
        // e_1^2 . e_23 = e_13.
        let f = SlElement::e(4, 1, 2);
        assert_eq!(sl_action(&f, &mv(4, &[2, 3])).unwrap(), mv(4, &[1, 3]));
        // Traceless f kills the trivial modules.
        let one = MultiVector::term(4, int(1), &[], false).unwrap();
        assert!(sl_action(&f, &one).unwrap().is_zero());
        let h = SlElement::h(4, 2);
        assert!(sl_action(&h, &mv(4, &[1, 2, 3, 4])).unwrap().is_zero());
        // (e_1^1 - e_2^2) . e_12 = 0: the two Leibniz terms cancel.
        let h = SlElement::h(4, 1);
        assert!(sl_action(&h, &mv(4, &[1, 2])).unwrap().is_zero());
    }

    #[test]
    fn sl_action_reorders_with_sign() {
        // e_3^1 . e_12 = e_3 ^ e_2 = -e_23.
        let f = SlElement::e(4, 3, 1);
        assert_eq!(
            sl_action(&f, &mv(4, &[1, 2])).unwrap(),
            mv(4, &[2, 3]).neg()
        );
    }

    #[test]
    fn blade_constructor_sorts_and_signs() {
        let (sign, b) = Blade::from_indices(5, &[3, 1, 2], false).unwrap().unwrap();
        assert_eq!(sign, 1);
        assert_eq!(b.indices(), vec![1, 2, 3]);
        let (sign, _) = Blade::from_indices(5, &[1, 3, 2], false).unwrap().unwrap();
        assert_eq!(sign, -1);
        assert!(Blade::from_indices(5, &[1, 1], false).unwrap().is_none());
        assert!(Blade::from_indices(5, &[6], false).is_err());
    }

    #[test]
    fn display_format() {
        let mut x = mv(5, &[1, 4]).scale(&rat(-2, 5));
        x = x.add(&mv(5, &[2, 3])).unwrap();
        assert_eq!(x.to_string(), "-2/5 e_14 + 1 e_23");
        let zero = MultiVector::zero(5, 2, false);
        assert_eq!(zero.to_string(), "0");
    }

    #[test]
    fn expand_in_basis_roundtrip() {
        let n = 4u8;
        let mut m = SlElement::e(n, 2, 4).scale(&rat(3, 2));
        m = m.add(&SlElement::h(n, 1).scale(&int(2)));
        m = m.add(&SlElement::h(n, 3).scale(&rat(-1, 3)));
        let coeffs = m.expand_in_basis();
        let basis = SlElement::basis(n);
        let mut rebuilt = SlElement::zero(n);
        for (c, b) in coeffs.iter().zip(&basis) {
            rebuilt = rebuilt.add(&b.scale(c));
        }
        assert_eq!(rebuilt, m);
    }
}
