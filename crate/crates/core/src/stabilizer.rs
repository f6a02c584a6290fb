//! Analysis of a symplectic self-orthogonal code `C`: its dual, `d_m`, the
//! low-weight part `C(d-1)` and the additive code containing the QSQC.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{Gf2Subspace, SympVector};
use crate::pauli::for_each_error_of_weight;

/// Subspaces up to this dimension are enumerated element by element; larger
/// ones are searched by increasing error weight.
pub const BRUTE_FORCE_DIM: usize = 20;

/// A minimum weight, or `Infinite` when the minimum is over an empty set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Distance::Infinite)
    }

    /// `self >= d` with infinity above everything.
    pub fn at_least(self, d: usize) -> bool {
        match self {
            Distance::Finite(x) => x >= d,
            Distance::Infinite => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Result of a weight search that may have been cut off.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct WeightSearch {
    pub distance: Distance,
    /// `false` when the search stopped at a weight cap without finding
    /// anything, so `distance` only says "greater than the cap".
    pub exact: bool,
}

/// Smallest weight `w <= cap` such that some error of quantum weight `w`
/// satisfies `pred`.
fn first_weight_matching<F>(n: usize, cap: usize, mut pred: F) -> Option<usize>
where
    F: FnMut(&SympVector) -> bool,
{
    for w in 1..=cap.min(n) {
        let mut hit = false;
        for_each_error_of_weight(n, w, &mut |v| {
            if pred(v) {
                hit = true;
                return false;
            }
            true
        });
        if hit {
            return Some(w);
        }
    }
    None
}

/// Minimum quantum weight over the nonzero elements of `s`.
pub fn min_quantum_weight(s: &Gf2Subspace) -> Distance {
    min_quantum_weight_capped(s, s.n()).distance
}

/// As [`min_quantum_weight`], but the weight-ordered search (used above
/// [`BRUTE_FORCE_DIM`]) gives up after `cap`.
pub fn min_quantum_weight_capped(s: &Gf2Subspace, cap: usize) -> WeightSearch {
    if s.dim() == 0 {
        return WeightSearch {
            distance: Distance::Infinite,
            exact: true,
        };
    }
    if s.dim() <= BRUTE_FORCE_DIM {
        let mut best = usize::MAX;
        s.for_each_element(|v| {
            let w = v.quantum_weight();
            if w > 0 && w < best {
                best = w;
            }
            best > 1
        });
        return WeightSearch {
            distance: Distance::Finite(best),
            exact: true,
        };
    }
    match first_weight_matching(s.n(), cap, |v| s.contains_unchecked(v)) {
        Some(w) => WeightSearch {
            distance: Distance::Finite(w),
            exact: true,
        },
        None => WeightSearch {
            distance: Distance::Infinite,
            exact: cap >= s.n(),
        },
    }
}

/// Minimum quantum weight over `outer \ inner`, for `inner ⊆ outer`.
pub fn min_weight_outside(outer: &Gf2Subspace, inner: &Gf2Subspace) -> Distance {
    debug_assert!(inner.is_subspace_of(outer));
    if outer.dim() == inner.dim() {
        return Distance::Infinite;
    }
    if outer.dim() <= BRUTE_FORCE_DIM {
        // outer = inner ⊕ complement; walk the nonzero complement classes
        let complement = complement_basis(outer, inner);
        let mut best = usize::MAX;
        let mut first = true;
        complement.for_each_element(|u| {
            if first {
                first = false;
                return true;
            }
            inner.for_each_in_coset(u, |x| {
                let w = x.quantum_weight();
                if w < best {
                    best = w;
                }
                best > 1
            });
            best > 1
        });
        return Distance::Finite(best);
    }
    match first_weight_matching(outer.n(), outer.n(), |v| {
        outer.contains_unchecked(v) && !inner.contains_unchecked(v)
    }) {
        Some(w) => Distance::Finite(w),
        None => Distance::Infinite,
    }
}

/// A basis for a complement of `inner` inside `outer`, reduced modulo `inner`.
pub fn complement_basis(outer: &Gf2Subspace, inner: &Gf2Subspace) -> Gf2Subspace {
    let mut out = Gf2Subspace::zero(outer.n());
    for r in outer.basis() {
        let reduced = inner.reduce(r);
        if !reduced.is_zero() {
            out.insert(reduced);
        }
    }
    out
}

/// A symplectic self-orthogonal code `C ⊆ C⊥s` with `dim C = n - k`.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    code: Gf2Subspace,
    dual: Gf2Subspace,
}

impl StabilizerCode {
    /// Validates and canonicalizes the rows of a check matrix.
    pub fn analyze(rows: &[SympVector]) -> Result<Self> {
        let first = rows.first().ok_or(Error::NoVectors)?;
        let n = first.n();
        for (i, u) in rows.iter().enumerate() {
            if u.n() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: u.n(),
                });
            }
            for w in &rows[..i] {
                if u.sym(w) {
                    return Err(Error::NotSelfOrthogonal {
                        left: w.clone(),
                        right: u.clone(),
                    });
                }
            }
        }
        let code = Gf2Subspace::span(n, rows)?;
        Self::from_subspace(code)
    }

    pub fn from_subspace(code: Gf2Subspace) -> Result<Self> {
        if let Some((i, j)) = code.first_non_orthogonal_pair() {
            return Err(Error::NotSelfOrthogonal {
                left: code.basis()[i].clone(),
                right: code.basis()[j].clone(),
            });
        }
        let n = code.n();
        let dual = code.symplectic_dual();
        debug_assert!(code.is_subspace_of(&dual));
        Ok(Self {
            n,
            k: n - code.dim(),
            code,
            dual,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `C` itself.
    pub fn code(&self) -> &Gf2Subspace {
        &self.code
    }

    /// `C⊥s`.
    pub fn dual(&self) -> &Gf2Subspace {
        &self.dual
    }

    pub fn is_self_dual(&self) -> bool {
        self.k == 0
    }

    /// `d_m = min w_Q` over `C⊥s \ C`; infinite when `C` is self-dual.
    pub fn dm(&self) -> Distance {
        min_weight_outside(&self.dual, &self.code)
    }

    /// `d(C)`, the minimum weight of a nonzero stabilizer element.
    pub fn min_weight(&self) -> Distance {
        min_quantum_weight(&self.code)
    }

    /// Nonzero elements of `C` with quantum weight at most `t`, sorted.
    pub fn low_weight_elements(&self, t: usize) -> Vec<SympVector> {
        let mut out = Vec::new();
        if t == 0 {
            return out;
        }
        if self.code.dim() <= BRUTE_FORCE_DIM {
            self.code.for_each_element(|v| {
                let w = v.quantum_weight();
                if w > 0 && w <= t {
                    out.push(v.clone());
                }
                true
            });
        } else {
            for w in 1..=t.min(self.n) {
                for_each_error_of_weight(self.n, w, &mut |v| {
                    if self.code.contains_unchecked(v) {
                        out.push(v.clone());
                    }
                    true
                });
            }
        }
        out.sort();
        out
    }

    pub fn degeneracy_profile(&self, d: usize) -> DegeneracyProfile {
        assert!(d >= 1, "distance must be positive");
        let lowweight = self.low_weight_elements(d - 1);
        let span = Gf2Subspace::span(self.n, &lowweight).expect("same length");
        let span_dual = span.symplectic_dual();
        let d_s = min_weight_outside(&span_dual, &span);
        DegeneracyProfile {
            d,
            s: span.dim(),
            lowweight,
            span,
            span_dual,
            d_s,
        }
    }
}

/// `C(d-1)`, its span, `C(d-1)⊥s`, and the containing additive code.
#[derive(Clone, Debug)]
pub struct DegeneracyProfile {
    pub d: usize,
    /// Nonzero elements of `C` with quantum weight at most `d - 1`.
    pub lowweight: Vec<SympVector>,
    /// Dimension of the span of `lowweight`.
    pub s: usize,
    pub span: Gf2Subspace,
    pub span_dual: Gf2Subspace,
    /// Minimum weight over `span_dual \ span`.
    pub d_s: Distance,
}

impl DegeneracyProfile {
    pub fn is_degenerate(&self) -> bool {
        self.s > 0
    }
}
