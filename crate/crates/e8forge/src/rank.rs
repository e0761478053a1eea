//! Exact rank computation: incremental fraction-free Gaussian elimination
//! over the integers (after clearing denominators), plus a fast modular
//! echelon used as a certificate on the full-rank path.
//!
//! The modular rank never overstates the rational rank, so reaching the
//! maximum possible rank mod p proves the exact statement; anything short of
//! that is re-done in exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Incremental row echelon over Z. Rows are combined fraction-free
/// (p_c * r - r_c * p) and stripped of their content, so all arithmetic is
/// exact integer arithmetic.
pub struct IntEchelon {
    width: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntEchelon {
    pub fn new(width: usize) -> Self {
        IntEchelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces the row against the current basis and inserts it if it is
    /// independent. Returns true when the rank grew.
    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.width);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc].is_zero() {
                continue;
            }
            let a = r[pc].clone();
            let b = row[pc].clone();
            for c in 0..self.width {
                row[c] = &row[c] * &a - &r[c] * &b;
            }
            strip_content(&mut row);
        }
        match row.iter().position(|v| !v.is_zero()) {
            None => false,
            Some(pc) => {
                strip_content(&mut row);
                let at = self.pivots.partition_point(|&p| p < pc);
                self.rows.insert(at, row);
                self.pivots.insert(at, pc);
                true
            }
        }
    }

    /// Inserts a rational row after clearing denominators.
    pub fn insert_rational(&mut self, row: &[Scalar]) -> bool {
        self.insert(clear_denominators(row))
    }
}

fn strip_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// Scales a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for v in row {
        l = l.lcm(v.denom());
    }
    row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
}

/// Fraction-free echelon over machine i128 with checked arithmetic. Returns
/// `None` on overflow so the caller can redo the computation in big
/// integers; the structure constants here are small enough that this never
/// happens in practice.
pub struct I128Echelon {
    width: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl I128Echelon {
    pub fn new(width: usize) -> Self {
        I128Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut row: Vec<i128>) -> Option<bool> {
        assert_eq!(row.len(), self.width);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc] == 0 {
                continue;
            }
            let a = r[pc];
            let b = row[pc];
            for c in 0..self.width {
                let x = row[c].checked_mul(a)?;
                let y = r[c].checked_mul(b)?;
                row[c] = x.checked_sub(y)?;
            }
            strip_content_i128(&mut row);
        }
        match row.iter().position(|&v| v != 0) {
            None => Some(false),
            Some(pc) => {
                strip_content_i128(&mut row);
                let at = self.pivots.partition_point(|&p| p < pc);
                self.rows.insert(at, row);
                self.pivots.insert(at, pc);
                Some(true)
            }
        }
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn strip_content_i128(row: &mut [i128]) {
    let mut g: i128 = 0;
    for &v in row.iter() {
        if v != 0 {
            g = gcd_i128(g, v);
            if g == 1 {
                return;
            }
        }
    }
    if g == 0 || g == 1 {
        return;
    }
    for v in row.iter_mut() {
        *v /= g;
    }
}

/// Word-sized prime 2^61 - 1 for the modular certificate.
pub const MODULUS: u64 = (1 << 61) - 1;

pub fn fp_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

pub fn fp_add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

pub fn fp_sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

pub fn fp_pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(acc, base);
        }
        base = fp_mul(base, base);
        exp >>= 1;
    }
    acc
}

pub fn fp_inv(a: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(MODULUS));
    fp_pow(a % MODULUS, MODULUS - 2)
}

/// Image of an exact rational in F_p. Denominators in this crate are tiny,
/// far from the modulus.
pub fn fp_of_scalar(q: &Scalar) -> u64 {
    let p = BigInt::from(MODULUS);
    let num = q.numer().mod_floor(&p);
    let den = q.denom().mod_floor(&p);
    let num: u64 = num.try_into().expect("reduced residue fits u64");
    let den: u64 = den.try_into().expect("reduced residue fits u64");
    fp_mul(num, fp_inv(den))
}

/// Incremental row echelon over F_p, rows kept pivot-normalized.
pub struct FpEchelon {
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl FpEchelon {
    pub fn new(width: usize) -> Self {
        FpEchelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.width);
        for (r, &pc) in self.rows.iter().zip(&self.pivots) {
            if row[pc] == 0 {
                continue;
            }
            let f = row[pc];
            for c in pc..self.width {
                if r[c] != 0 {
                    row[c] = fp_sub(row[c], fp_mul(f, r[c]));
                }
            }
        }
        match row.iter().position(|&v| v != 0) {
            None => false,
            Some(pc) => {
                let inv = fp_inv(row[pc]);
                for v in row.iter_mut() {
                    if *v != 0 {
                        *v = fp_mul(*v, inv);
                    }
                }
                let at = self.pivots.partition_point(|&p| p < pc);
                self.rows.insert(at, row);
                self.pivots.insert(at, pc);
                true
            }
        }
    }

    /// The reduced representative of the last inserted row, as stored.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}

/// Exact rank of a rational matrix given by rows.
pub fn rank_exact<'a>(rows: impl IntoIterator<Item = &'a [Scalar]>, width: usize) -> usize {
    let mut ech = IntEchelon::new(width);
    for row in rows {
        ech.insert_rational(row);
    }
    ech.rank()
}
