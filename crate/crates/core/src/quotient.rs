//! The normed quotient space `V / H`.
//!
//! A coset is named by its canonical representative: the vector reduced
//! against the RREF basis of `H`, which has zeros at every pivot coordinate.
//! Those representatives live in the span of the non-pivot unit vectors, so
//! the same reduction is the projection onto a complement of `H` and the
//! projection norm is just the Hamming weight of the representative.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Add;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Subspace, SympVector};
use crate::pauli::{for_each_error, for_each_error_of_weight, for_each_of_hamming_weight};

/// Cosets of a modulus up to this dimension are enumerated in full when
/// computing the quotient minimum norm.
pub const COSET_ENUMERATION_DIM: usize = 22;

/// Weight used as the norm on `V`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormMode {
    #[default]
    Quantum,
    Hamming,
}

impl NormMode {
    pub fn weight(self, v: &SympVector) -> usize {
        match self {
            NormMode::Quantum => v.quantum_weight(),
            NormMode::Hamming => v.hamming_weight(),
        }
    }
}

impl fmt::Display for NormMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NormMode::Quantum => "quantum",
            NormMode::Hamming => "hamming",
        })
    }
}

#[derive(Debug)]
struct SpaceInner {
    modulus: Gf2Subspace,
    norm: NormMode,
}

/// `V / H` with a chosen norm. Cheap to clone.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    inner: Arc<SpaceInner>,
}

impl PartialEq for QuotientSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.norm == other.inner.norm && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for QuotientSpace {}

impl QuotientSpace {
    pub fn new(modulus: Gf2Subspace, norm: NormMode) -> Self {
        Self {
            inner: Arc::new(SpaceInner { modulus, norm }),
        }
    }

    pub fn n(&self) -> usize {
        self.inner.modulus.n()
    }

    pub fn modulus(&self) -> &Gf2Subspace {
        &self.inner.modulus
    }

    pub fn norm_mode(&self) -> NormMode {
        self.inner.norm
    }

    /// The same quotient with a different norm.
    pub fn with_norm(&self, norm: NormMode) -> Self {
        if norm == self.inner.norm {
            return self.clone();
        }
        Self::new(self.inner.modulus.clone(), norm)
    }

    /// `dim V/H = 2n - dim H`.
    pub fn dim(&self) -> usize {
        2 * self.n() - self.inner.modulus.dim()
    }

    pub fn coset_count(&self) -> u128 {
        1u128 << self.dim()
    }

    pub fn zero(&self) -> Coset {
        Coset {
            space: self.clone(),
            rep: SympVector::zero(self.n()),
        }
    }

    pub fn canonicalize(&self, v: &SympVector) -> Result<Coset> {
        if v.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: v.n(),
            });
        }
        Ok(self.canonicalize_unchecked(v))
    }

    pub(crate) fn canonicalize_unchecked(&self, v: &SympVector) -> Coset {
        Coset {
            space: self.clone(),
            rep: self.inner.modulus.reduce(v),
        }
    }

    /// Minimum norm over all `2^dim H` elements of the coset.
    pub fn min_norm(&self, x: &Coset) -> usize {
        let h = &self.inner.modulus;
        let mode = self.inner.norm;
        if x.rep.is_zero() {
            return 0;
        }
        if h.dim() <= COSET_ENUMERATION_DIM {
            let mut best = usize::MAX;
            h.for_each_in_coset(&x.rep, |v| {
                let w = mode.weight(v);
                if w < best {
                    best = w;
                }
                best > 1
            });
            return best;
        }
        // search V by increasing weight for an element of the coset
        let n = self.n();
        let limit = match mode {
            NormMode::Quantum => n,
            NormMode::Hamming => 2 * n,
        };
        for w in 1..=limit {
            let mut hit = false;
            let mut test = |v: &SympVector| {
                if h.reduce(v) == x.rep {
                    hit = true;
                    return false;
                }
                true
            };
            match mode {
                NormMode::Quantum => for_each_error_of_weight(n, w, &mut test),
                NormMode::Hamming => for_each_of_hamming_weight(n, w, &mut test),
            };
            if hit {
                return w;
            }
        }
        unreachable!("every coset has an element of weight at most 2n")
    }

    /// `w_H` of the canonical (projected) representative.
    pub fn proj_norm(&self, x: &Coset) -> usize {
        x.rep.hamming_weight()
    }

    /// `d(x̄, ȳ) = ‖x̄ - ȳ‖`.
    pub fn distance(&self, x: &Coset, y: &Coset) -> Result<usize> {
        if x.space != *self || y.space != *self {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.min_norm(&x.add_unchecked(y)))
    }

    /// `λ_i(c) = (-1)^{(i, c)_s}`.
    pub fn character(&self, i: &Coset, c: &SympVector) -> i8 {
        if i.rep.sym(c) {
            -1
        } else {
            1
        }
    }

    /// `|ME(t)|`: the number of distinct cosets that contain a vector of
    /// quantum weight at most `t` lying in `restriction`.
    pub fn me_count(&self, restriction: &Gf2Subspace, t: usize) -> Result<usize> {
        Ok(self.me_set(restriction, t)?.len())
    }

    /// The cosets counted by [`QuotientSpace::me_count`].
    pub fn me_set(&self, restriction: &Gf2Subspace, t: usize) -> Result<HashSet<SympVector>> {
        if restriction.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: restriction.n(),
            });
        }
        if !self.inner.modulus.is_subspace_of(restriction) {
            return Err(Error::InvalidArgument(
                "restriction must contain the modulus".into(),
            ));
        }
        let mut seen = HashSet::new();
        for_each_error(self.n(), t, |v| {
            if restriction.contains_unchecked(v) {
                seen.insert(self.inner.modulus.reduce(v));
            }
            true
        });
        Ok(seen)
    }

    /// All cosets whose representative lies in `sub ⊇ H`, i.e. the
    /// subspace `sub / H`, as a basis of canonical representatives.
    pub fn sub_quotient_basis(&self, sub: &Gf2Subspace) -> Gf2Subspace {
        let mut out = Gf2Subspace::zero(self.n());
        for r in sub.basis() {
            let red = self.inner.modulus.reduce(r);
            if !red.is_zero() {
                out.insert(red);
            }
        }
        out
    }

    /// Every coset of the quotient. Only sensible for small `dim`.
    pub fn cosets(&self) -> Result<Vec<Coset>> {
        let full = Gf2Subspace::full(self.n());
        let basis = self.sub_quotient_basis(&full);
        if basis.dim() > 24 {
            return Err(Error::TooLarge {
                what: "quotient space",
                log2_size: basis.dim(),
                limit: 24,
            });
        }
        Ok(basis
            .elements()
            .into_iter()
            .map(|rep| Coset {
                space: self.clone(),
                rep,
            })
            .collect())
    }
}

/// A coset `v + H`, held by its canonical representative.
#[derive(Clone)]
pub struct Coset {
    space: QuotientSpace,
    rep: SympVector,
}

impl Coset {
    pub fn rep(&self) -> &SympVector {
        &self.rep
    }

    pub fn space(&self) -> &QuotientSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn min_norm(&self) -> usize {
        self.space.min_norm(self)
    }

    pub fn proj_norm(&self) -> usize {
        self.space.proj_norm(self)
    }

    pub fn character(&self, c: &SympVector) -> i8 {
        self.space.character(self, c)
    }

    pub fn distance(&self, other: &Coset) -> Result<usize> {
        self.space.distance(self, other)
    }

    pub fn try_add(&self, other: &Coset) -> Result<Coset> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &Coset) -> Coset {
        // sums of canonical reps are canonical: pivots stay zero
        Coset {
            space: self.space.clone(),
            rep: &self.rep + &other.rep,
        }
    }
}

impl Add for &Coset {
    type Output = Coset;

    fn add(self, rhs: &Coset) -> Coset {
        self.try_add(rhs).expect("cosets of the same space")
    }
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && self.space == other.space
    }
}

impl Eq for Coset {}

impl Hash for Coset {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

impl fmt::Debug for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coset({})", self.rep)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}
