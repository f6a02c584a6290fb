//! Bit-packed linear algebra over GF(2) on vectors of length `2n`.
//!
//! A [`SympVector`] stores the `(a|b)` pair of a Pauli error as two packed
//! halves. Coordinate `j < n` is `a_j`, coordinate `n + j` is `b_j`. Subspaces
//! are kept in fully reduced row-echelon form with pivots chosen at the lowest
//! coordinate of each row, so two subspaces are equal iff their bases are
//! bitwise equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// An element `(a|b)` of `F_2^{2n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SympVector {
    n: usize,
    /// `a` in `words[..w]`, `b` in `words[w..]`, `w = ceil(n / 64)`.
    words: Vec<u64>,
}

impl SympVector {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "qubit count must be positive");
        Self {
            n,
            words: vec![0; 2 * words_for(n)],
        }
    }

    /// Builds a vector from explicit `a` and `b` bit slices.
    pub fn from_bits(a: &[bool], b: &[bool]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        if a.is_empty() {
            return Err(Error::EmptyVector);
        }
        let mut v = Self::zero(a.len());
        for (j, (&x, &z)) in a.iter().zip(b).enumerate() {
            v.set(j, x);
            v.set(a.len() + j, z);
        }
        Ok(v)
    }

    /// The vector with a single one at coordinate `j` (of `2n`).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = Self::zero(n);
        v.set(j, true);
        v
    }

    /// Builds `(a|b)` from the low `n` bits of two integers, qubit `i` at bit `i`.
    pub fn from_masks(n: usize, a: u64, b: u64) -> Self {
        assert!(n <= WORD, "mask constructor supports n <= 64");
        let mut v = Self::zero(n);
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        v.words[0] = a & mask;
        v.words[1] = b & mask;
        v
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of coordinates, `2n`.
    #[inline]
    pub fn len(&self) -> usize {
        2 * self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    fn half(&self) -> usize {
        self.words.len() / 2
    }

    #[inline]
    fn locate(&self, j: usize) -> (usize, u32) {
        debug_assert!(j < 2 * self.n);
        if j < self.n {
            (j / WORD, (j % WORD) as u32)
        } else {
            let k = j - self.n;
            (self.half() + k / WORD, (k % WORD) as u32)
        }
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        let (w, bit) = self.locate(j);
        (self.words[w] >> bit) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        let (w, bit) = self.locate(j);
        if value {
            self.words[w] |= 1 << bit;
        } else {
            self.words[w] &= !(1 << bit);
        }
    }

    #[inline]
    pub fn flip(&mut self, j: usize) {
        let (w, bit) = self.locate(j);
        self.words[w] ^= 1 << bit;
    }

    /// X-part bit of qubit `i`.
    #[inline]
    pub fn x(&self, i: usize) -> bool {
        self.get(i)
    }

    /// Z-part bit of qubit `i`.
    #[inline]
    pub fn z(&self, i: usize) -> bool {
        self.get(self.n + i)
    }

    pub fn a_words(&self) -> &[u64] {
        &self.words[..self.half()]
    }

    pub fn b_words(&self) -> &[u64] {
        &self.words[self.half()..]
    }

    /// The `a` half as an integer mask. Only valid for `n <= 64`.
    pub fn a_mask(&self) -> u64 {
        assert!(self.n <= WORD);
        self.words[0]
    }

    /// The `b` half as an integer mask. Only valid for `n <= 64`.
    pub fn b_mask(&self) -> u64 {
        assert!(self.n <= WORD);
        self.words[1]
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of ones among the `2n` coordinates.
    pub fn hamming_weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of qubits where `(a_i, b_i) != (0, 0)`.
    pub fn quantum_weight(&self) -> usize {
        let (a, b) = self.words.split_at(self.half());
        a.iter()
            .zip(b)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// `a·b mod 4`-relevant count: number of qubits carrying a Y.
    pub fn y_count(&self) -> usize {
        let (a, b) = self.words.split_at(self.half());
        a.iter()
            .zip(b)
            .map(|(x, z)| (x & z).count_ones() as usize)
            .sum()
    }

    /// Symplectic form; panics on mismatched `n`. See [`symplectic_inner`]
    /// for the checked variant.
    #[inline]
    pub fn sym(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "symplectic form on mismatched lengths");
        let h = self.half();
        let mut acc = 0u32;
        for i in 0..h {
            acc ^= (self.words[i] & other.words[h + i]).count_ones();
            acc ^= (self.words[h + i] & other.words[i]).count_ones();
        }
        acc & 1 == 1
    }

    /// Ordinary dot product over all `2n` coordinates.
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        let mut acc = 0u32;
        for (x, y) in self.words.iter().zip(&other.words) {
            acc ^= (x & y).count_ones();
        }
        acc & 1 == 1
    }

    /// `(b|a)`: the ordinary dot product with this vector equals the
    /// symplectic form with the original.
    pub fn swapped(&self) -> Self {
        let h = self.half();
        let mut words = Vec::with_capacity(self.words.len());
        words.extend_from_slice(&self.words[h..]);
        words.extend_from_slice(&self.words[..h]);
        Self { n: self.n, words }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x ^= y;
        }
    }

    /// Lowest set coordinate, if any.
    pub fn leading(&self) -> Option<usize> {
        let h = self.half();
        for (i, &w) in self.words[..h].iter().enumerate() {
            if w != 0 {
                return Some(i * WORD + w.trailing_zeros() as usize);
            }
        }
        for (i, &w) in self.words[h..].iter().enumerate() {
            if w != 0 {
                return Some(self.n + i * WORD + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of the nonzero coordinates in increasing order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.get(j)).collect()
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

/// `(u, v)_s = a·b' + a'·b mod 2`.
pub fn symplectic_inner(u: &SympVector, v: &SympVector) -> Result<bool> {
    u.check_same_n(v)?;
    Ok(u.sym(v))
}

impl Add for &SympVector {
    type Output = SympVector;

    fn add(self, rhs: &SympVector) -> SympVector {
        assert_eq!(self.n, rhs.n, "adding vectors of different lengths");
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl Add for SympVector {
    type Output = SympVector;

    fn add(mut self, rhs: SympVector) -> SympVector {
        assert_eq!(self.n, rhs.n, "adding vectors of different lengths");
        self.xor_assign(&rhs);
        self
    }
}

impl AddAssign<&SympVector> for SympVector {
    fn add_assign(&mut self, rhs: &SympVector) {
        assert_eq!(self.n, rhs.n, "adding vectors of different lengths");
        self.xor_assign(rhs);
    }
}

/// Lexicographic order on the printed string `a|b` (shorter `n` first).
impl Ord for SympVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (x, y) in self.words.iter().zip(&other.words) {
                let diff = x ^ y;
                if diff != 0 {
                    let bit = diff.trailing_zeros();
                    return if (x >> bit) & 1 == 1 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SympVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SympVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(2 * self.n + 1);
        for j in 0..self.len() {
            if j == self.n {
                s.push('|');
            }
            s.push(if self.get(j) { '1' } else { '0' });
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for SympVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for SympVector {
    type Err = Error;

    /// Parses `"<n bits>|<n bits>"`, ignoring interior whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut seen_bar = false;
        for (col, ch) in s.chars().enumerate() {
            let bit = match ch {
                '0' => false,
                '1' => true,
                '|' if !seen_bar => {
                    seen_bar = true;
                    continue;
                }
                c if c.is_whitespace() => continue,
                c => {
                    return Err(Error::Syntax {
                        line: 1,
                        col: col + 1,
                        message: format!("unexpected character {c:?}"),
                    })
                }
            };
            if seen_bar {
                b.push(bit);
            } else {
                a.push(bit);
            }
        }
        if !seen_bar {
            return Err(Error::Syntax {
                line: 1,
                col: s.chars().count() + 1,
                message: "missing '|' separator".into(),
            });
        }
        if a.len() != b.len() {
            return Err(Error::InconsistentLength {
                line: 1,
                expected: a.len(),
                found: b.len(),
            });
        }
        SympVector::from_bits(&a, &b)
    }
}

impl Serialize for SympVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SympVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subspace of `F_2^{2n}` held as a canonical reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Subspace {
    n: usize,
    rows: Vec<SympVector>,
    pivots: Vec<usize>,
}

impl Gf2Subspace {
    /// The zero subspace `{0}`.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "qubit count must be positive");
        Self {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// All of `F_2^{2n}`.
    pub fn full(n: usize) -> Self {
        let rows: Vec<_> = (0..2 * n).map(|j| SympVector::unit(n, j)).collect();
        Self {
            n,
            pivots: (0..2 * n).collect(),
            rows,
        }
    }

    /// Span of `vectors` in canonical form.
    pub fn span<'a, I>(n: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a SympVector>,
    {
        let mut out = Self::zero(n);
        for v in vectors {
            if v.n() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: v.n(),
                });
            }
            out.insert(v.clone());
        }
        Ok(out)
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, mut v: SympVector) -> bool {
        assert_eq!(v.n(), self.n, "inserting vector of wrong length");
        self.reduce_in_place(&mut v);
        let Some(p) = v.leading() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        2 * self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SympVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Zeroes every pivot coordinate of `v` by adding basis rows. The result
    /// depends only on the class of `v` modulo this subspace.
    pub fn reduce_in_place(&self, v: &mut SympVector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn reduce(&self, v: &SympVector) -> SympVector {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn contains(&self, v: &SympVector) -> Result<bool> {
        if v.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: v.n(),
            });
        }
        Ok(self.contains_unchecked(v))
    }

    pub(crate) fn contains_unchecked(&self, v: &SympVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// `{w : (w, s)_s = 0 for all s in self}`.
    pub fn symplectic_dual(&self) -> Self {
        let swapped: Vec<_> = self.rows.iter().map(SympVector::swapped).collect();
        self.null_space_of(&swapped)
    }

    /// Kernel of the ordinary dot product against `rows`.
    fn null_space_of(&self, rows: &[SympVector]) -> Self {
        let mut m = Self::zero(self.n);
        for r in rows {
            m.insert(r.clone());
        }
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; 2 * self.n];
            for &p in &m.pivots {
                s[p] = true;
            }
            s
        };
        let mut out = Self::zero(self.n);
        for free in (0..2 * self.n).filter(|&j| !pivot_set[j]) {
            let mut w = SympVector::unit(self.n, free);
            for (row, &p) in m.rows.iter().zip(&m.pivots) {
                if row.get(free) {
                    w.set(p, true);
                }
            }
            out.insert(w);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.n == other.n && self.rows.iter().all(|r| other.contains_unchecked(r))
    }

    /// Sum `self + other`.
    pub fn join(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    /// `self ∩ other`, via `(A⊥ + B⊥)⊥` for the ordinary form.
    pub fn intersection(&self, other: &Self) -> Self {
        let a_perp = self.ordinary_dual();
        let b_perp = other.ordinary_dual();
        a_perp.join(&b_perp).ordinary_dual()
    }

    fn ordinary_dual(&self) -> Self {
        self.null_space_of(&self.rows)
    }

    /// The vector `Σ_j bit_j(index) · basis[j]`.
    pub fn element(&self, index: u64) -> SympVector {
        let mut v = SympVector::zero(self.n);
        for (j, row) in self.rows.iter().enumerate() {
            if (index >> j) & 1 == 1 {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Visits every element of `offset + self` once, in Gray-code order.
    /// Stops early when `f` returns `false`.
    pub fn for_each_in_coset<F>(&self, offset: &SympVector, mut f: F)
    where
        F: FnMut(&SympVector) -> bool,
    {
        assert!(self.dim() < 64, "subspace too large to enumerate");
        let mut cur = offset.clone();
        if !f(&cur) {
            return;
        }
        let total: u64 = 1 << self.dim();
        for i in 1..total {
            cur.xor_assign(&self.rows[i.trailing_zeros() as usize]);
            if !f(&cur) {
                return;
            }
        }
    }

    /// Visits every element of the subspace, starting with zero.
    pub fn for_each_element<F>(&self, f: F)
    where
        F: FnMut(&SympVector) -> bool,
    {
        self.for_each_in_coset(&SympVector::zero(self.n), f)
    }

    /// All elements, in Gray-code order. Intended for small subspaces.
    pub fn elements(&self) -> Vec<SympVector> {
        let mut out = Vec::with_capacity(1 << self.dim());
        self.for_each_element(|v| {
            out.push(v.clone());
            true
        });
        out
    }

    /// Whether every pair of basis rows has vanishing symplectic form.
    pub fn is_symplectic_self_orthogonal(&self) -> bool {
        self.first_non_orthogonal_pair().is_none()
    }

    pub(crate) fn first_non_orthogonal_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if self.rows[i].sym(&self.rows[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl fmt::Debug for Gf2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf2Subspace")
            .field("n", &self.n)
            .field("dim", &self.dim())
            .field("basis", &self.rows)
            .finish()
    }
}

/// Canonical span of `vectors`; the empty list gives the zero subspace.
pub fn rref(n: usize, vectors: &[SympVector]) -> Result<Gf2Subspace> {
    Gf2Subspace::span(n, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn v(s: &str) -> SympVector {
        s.parse().unwrap()
    }

    #[test]
    fn symplectic_inner_single_qubit() {
        assert!(symplectic_inner(&v("1|0"), &v("0|1")).unwrap());
        assert!(!symplectic_inner(&v("1|1"), &v("1|1")).unwrap());
        assert!(matches!(
            symplectic_inner(&v("1|0"), &v("10|00")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn c8_rows_commute() {
        let rows = corpus::c8().rows;
        for x in &rows {
            for y in &rows {
                assert!(!x.sym(y));
            }
        }
    }

    #[test]
    fn rref_dimensions_of_printed_codes() {
        let c8 = corpus::c8();
        assert_eq!(rref(8, &c8.rows).unwrap().dim(), 5);
        let c12 = corpus::c12();
        assert_eq!(rref(12, &c12.rows).unwrap().dim(), 12);
        let x = v("1011|0110");
        assert_eq!(rref(4, &[x.clone(), x]).unwrap().dim(), 1);
        assert_eq!(rref(4, &[]).unwrap().dim(), 0);
    }

    #[test]
    fn rref_is_fully_reduced() {
        let s = rref(8, &corpus::c8().rows).unwrap();
        for (i, &p) in s.pivots().iter().enumerate() {
            for (j, row) in s.basis().iter().enumerate() {
                assert_eq!(row.get(p), i == j);
            }
            assert_eq!(s.basis()[i].leading(), Some(p));
        }
    }

    #[test]
    fn duals_of_printed_codes() {
        assert_eq!(Gf2Subspace::zero(3).symplectic_dual().dim(), 6);
        let c12 = rref(12, &corpus::c12().rows).unwrap();
        assert_eq!(c12.symplectic_dual(), c12);
        let c8 = rref(8, &corpus::c8().rows).unwrap();
        let d8 = c8.symplectic_dual();
        assert_eq!(d8.dim(), 11);
        assert!(c8.is_subspace_of(&d8));
    }

    #[test]
    fn containment() {
        let c8 = rref(8, &corpus::c8().rows).unwrap();
        assert!(c8.contains(&SympVector::zero(8)).unwrap());
        assert!(!c8.contains(&corpus::c8_alphas()[0]).unwrap());
        let g = v("000000000001|000000000000");
        let c12_4 = rref(12, std::slice::from_ref(&g)).unwrap();
        assert!(c12_4.contains(&g).unwrap());
        assert!(c8.contains(&SympVector::zero(9)).is_err());
    }

    #[test]
    fn parse_and_display() {
        let x = v("10100000|11000000");
        assert_eq!(x.to_string(), "10100000|11000000");
        assert_eq!(x.quantum_weight(), 3);
        assert_eq!(x.hamming_weight(), 4);
        assert!("10|0".parse::<SympVector>().is_err());
        assert!("1x|00".parse::<SympVector>().is_err());
    }

    #[test]
    fn lexicographic_order_matches_strings() {
        let mut xs = [v("01|00"), v("10|00"), v("00|01"), v("00|00"), v("11|10")];
        let mut strings: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        xs.sort();
        strings.sort();
        let sorted: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        assert_eq!(sorted, strings);
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let n = 70;
        let mut x = SympVector::zero(n);
        x.set(65, true);
        x.set(n + 65, true);
        x.set(n + 3, true);
        assert_eq!(x.quantum_weight(), 2);
        assert_eq!(x.hamming_weight(), 3);
        let y = SympVector::unit(n, 65);
        assert!(x.sym(&y));
        let parsed: SympVector = x.to_string().parse().unwrap();
        assert_eq!(parsed, x);
        let s = Gf2Subspace::span(n, [&x, &y]).unwrap();
        assert_eq!(s.symplectic_dual().dim(), 2 * n - 2);
    }

    #[test]
    fn intersection_matches_enumeration() {
        let a = Gf2Subspace::span(3, [&v("110|000"), &v("001|100"), &v("000|011")]).unwrap();
        let b = Gf2Subspace::span(3, [&v("110|000"), &v("001|011"), &v("010|000")]).unwrap();
        let i = a.intersection(&b);
        let brute: Vec<_> = a
            .elements()
            .into_iter()
            .filter(|x| b.contains_unchecked(x))
            .collect();
        assert_eq!(1usize << i.dim(), brute.len());
        assert!(brute.iter().all(|x| i.contains_unchecked(x)));
    }
}
