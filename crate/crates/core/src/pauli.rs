//! Error weights, error-set enumeration and the `F_2^{2n} → F_4^n` map.

use std::fmt;
use std::ops::{Add, Mul};

use serde::Serialize;

use crate::gf2::SympVector;

pub fn quantum_weight(v: &SympVector) -> usize {
    v.quantum_weight()
}

pub fn hamming_weight(v: &SympVector) -> usize {
    v.hamming_weight()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `Σ_{i=0..t} 3^i · C(n, i)`, the size of `E(t)` up to phase.
pub fn error_count(n: usize, t: usize) -> u128 {
    (0..=t.min(n))
        .map(|i| 3u128.pow(i as u32) * binomial(n, i))
        .sum()
}

/// Calls `f` on every vector of quantum weight exactly `w`, in no particular
/// order. Returns `false` if `f` asked to stop.
pub fn for_each_error_of_weight<F>(n: usize, w: usize, f: &mut F) -> bool
where
    F: FnMut(&SympVector) -> bool,
{
    if w > n {
        return true;
    }
    let mut support: Vec<usize> = (0..w).collect();
    let mut cur = SympVector::zero(n);
    loop {
        // labels[i] in {1: X, 2: Z, 3: Y} for support[i]
        let mut labels = vec![1u8; w];
        for &q in &support {
            cur.set(q, true);
        }
        loop {
            if !f(&cur) {
                return false;
            }
            // odometer over labels, updating `cur` in place
            let mut i = 0;
            loop {
                if i == w {
                    break;
                }
                let q = support[i];
                let next = if labels[i] == 3 { 1 } else { labels[i] + 1 };
                cur.set(q, next & 1 == 1);
                cur.set(n + q, next & 2 == 2);
                labels[i] = next;
                if next != 1 {
                    break;
                }
                i += 1;
            }
            if i == w {
                break;
            }
        }
        for &q in &support {
            cur.set(q, false);
            cur.set(n + q, false);
        }
        if !next_combination(&mut support, n) {
            return true;
        }
    }
}

/// Calls `f` on every vector of quantum weight at most `t`, by increasing
/// weight.
pub fn for_each_error<F>(n: usize, t: usize, mut f: F)
where
    F: FnMut(&SympVector) -> bool,
{
    for w in 0..=t.min(n) {
        if !for_each_error_of_weight(n, w, &mut f) {
            return;
        }
    }
}

/// Calls `f` on every vector of Hamming weight exactly `w` among the `2n`
/// coordinates.
pub fn for_each_of_hamming_weight<F>(n: usize, w: usize, f: &mut F) -> bool
where
    F: FnMut(&SympVector) -> bool,
{
    let len = 2 * n;
    if w > len {
        return true;
    }
    let mut support: Vec<usize> = (0..w).collect();
    loop {
        let mut v = SympVector::zero(n);
        for &j in &support {
            v.set(j, true);
        }
        if !f(&v) {
            return false;
        }
        if !next_combination(&mut support, len) {
            return true;
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every `(a|b)` of quantum weight at most `t`, in weight-then-lexicographic
/// order. Generated one weight level at a time.
pub struct ErrorEnumerator {
    n: usize,
    t: usize,
    weight: usize,
    level: std::vec::IntoIter<SympVector>,
}

impl Iterator for ErrorEnumerator {
    type Item = SympVector;

    fn next(&mut self) -> Option<SympVector> {
        loop {
            if let Some(v) = self.level.next() {
                return Some(v);
            }
            if self.weight > self.t {
                return None;
            }
            let mut level = Vec::new();
            for_each_error_of_weight(self.n, self.weight, &mut |v| {
                level.push(v.clone());
                true
            });
            level.sort();
            self.level = level.into_iter();
            self.weight += 1;
        }
    }
}

pub fn enumerate_errors(n: usize, t: usize) -> ErrorEnumerator {
    ErrorEnumerator {
        n,
        t: t.min(n),
        weight: 0,
        level: Vec::new().into_iter(),
    }
}

/// An element of GF(4) = {0, 1, ω, ω̄}, stored as `x0 + x1·ω` in two bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA_BAR: Gf4 = Gf4(3);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Frobenius conjugate `x^2`.
    pub fn conj(self) -> Gf4 {
        self * self
    }

    /// Absolute trace `x + x^2`, an element of GF(2).
    pub fn trace(self) -> bool {
        let t = self + self.conj();
        debug_assert!(t.0 <= 1);
        t.0 == 1
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    // Characteristic 2: addition is xor.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        // (a0 + a1 ω)(b0 + b1 ω) with ω^2 = ω + 1
        let (a0, a1) = (self.0 & 1, self.0 >> 1);
        let (b0, b1) = (rhs.0 & 1, rhs.0 >> 1);
        let hi = a1 & b1;
        let c0 = (a0 & b0) ^ hi;
        let c1 = (a0 & b1) ^ (a1 & b0) ^ hi;
        Gf4(c0 | (c1 << 1))
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "W",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gf4Vector(pub Vec<Gf4>);

impl Gf4Vector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    /// Trace-Hermitian form `Σ tr(u_i · conj(v_i))`.
    pub fn trace_inner(&self, other: &Gf4Vector) -> bool {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .fold(false, |acc, (&u, &v)| acc ^ (u * v.conj()).trace())
    }
}

impl Add for &Gf4Vector {
    type Output = Gf4Vector;
    fn add(self, rhs: &Gf4Vector) -> Gf4Vector {
        assert_eq!(self.len(), rhs.len());
        Gf4Vector(self.0.iter().zip(&rhs.0).map(|(&x, &y)| x + y).collect())
    }
}

/// `(a_i, b_i) ↦ a_i·ω + b_i·ω̄`. Takes quantum weight to Hamming weight and
/// the symplectic form to the trace-Hermitian form.
pub fn psi_map(v: &SympVector) -> Gf4Vector {
    let n = v.n();
    Gf4Vector(
        (0..n)
            .map(|i| {
                let mut x = Gf4::ZERO;
                if v.x(i) {
                    x = x + Gf4::OMEGA;
                }
                if v.z(i) {
                    x = x + Gf4::OMEGA_BAR;
                }
                x
            })
            .collect(),
    )
}
