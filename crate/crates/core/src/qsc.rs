//! Quotient space codes and their certification as quantum codes.
//!
//! A set `Ω` of `L` cosets of `C⊥s` yields the code `⊕_{ī∈Ω} Q(ī)` with
//! parameters `((n, 2^k·L, d))` when
//!
//! 1. `C` is symplectic self-orthogonal,
//! 2. `d <= d_m` (vacuous when `C` is self-dual),
//! 3. every pair of cosets in `Ω` is at quotient distance at least `d`
//!    (at least `2d - 1` under the Hamming norm), and
//! 4. every difference of two cosets lies in `C(d-1)⊥s`.
//!
//! [`verify`] checks all four and returns a [`QsqcCertificate`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Subspace, SympVector};
use crate::quotient::{Coset, NormMode, QuotientSpace};
use crate::stabilizer::{DegeneracyProfile, Distance, StabilizerCode};

/// Largest `log2 |Ω_*|` the union-code distances will enumerate.
pub const UNION_ENUMERATION_LOG2: usize = 22;

/// A quotient space code: distinct cosets of `C⊥s`.
#[derive(Clone, Debug)]
pub struct QscCode {
    space: QuotientSpace,
    cosets: Vec<Coset>,
    distance: Distance,
    /// Indices of a pair realizing `distance`.
    closest: Option<(usize, usize)>,
}

impl QscCode {
    /// Canonicalizes `reps` modulo `C⊥s` under the quantum norm.
    pub fn build(code: &StabilizerCode, reps: &[SympVector]) -> Result<Self> {
        Self::build_with_norm(code, reps, NormMode::Quantum)
    }

    pub fn build_with_norm(
        code: &StabilizerCode,
        reps: &[SympVector],
        norm: NormMode,
    ) -> Result<Self> {
        let space = QuotientSpace::new(code.dual().clone(), norm);
        let cosets = reps
            .iter()
            .map(|r| space.canonicalize(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cosets(space, cosets)
    }

    /// Builds from cosets of one space, rejecting duplicates.
    pub fn from_cosets(space: QuotientSpace, cosets: Vec<Coset>) -> Result<Self> {
        if cosets.is_empty() {
            return Err(Error::NoVectors);
        }
        let mut seen: HashMap<&SympVector, usize> = HashMap::new();
        for (i, c) in cosets.iter().enumerate() {
            if c.space() != &space {
                return Err(Error::SpaceMismatch);
            }
            if let Some(&j) = seen.get(c.rep()) {
                return Err(Error::DuplicateCoset {
                    first: j,
                    second: i,
                    rep: c.rep().clone(),
                });
            }
            seen.insert(c.rep(), i);
        }
        let (distance, closest) = pairwise_min_distance(&space, &cosets);
        Ok(Self {
            space,
            cosets,
            distance,
            closest,
        })
    }

    /// Trusted constructor for callers that already know the distance.
    pub(crate) fn from_parts(
        space: QuotientSpace,
        cosets: Vec<Coset>,
        distance: Distance,
        closest: Option<(usize, usize)>,
    ) -> Self {
        Self {
            space,
            cosets,
            distance,
            closest,
        }
    }

    pub fn space(&self) -> &QuotientSpace {
        &self.space
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn reps(&self) -> Vec<SympVector> {
        self.cosets.iter().map(|c| c.rep().clone()).collect()
    }

    /// `L = |Ω|`.
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Minimum pairwise coset distance; infinite for `L = 1`.
    pub fn distance(&self) -> Distance {
        self.distance
    }

    pub fn closest_pair(&self) -> Option<(usize, usize)> {
        self.closest
    }

    /// `Ω` with coset `index` removed.
    pub fn without(&self, index: usize) -> Result<Self> {
        if index >= self.len() || self.len() == 1 {
            return Err(Error::InvalidArgument(format!(
                "cannot remove coset {index} from a code with {} cosets",
                self.len()
            )));
        }
        let mut cosets = self.cosets.clone();
        cosets.remove(index);
        Self::from_cosets(self.space.clone(), cosets)
    }

    /// `Ω + z̄`.
    pub fn translated(&self, z: &Coset) -> Result<Self> {
        let cosets = self
            .cosets
            .iter()
            .map(|c| c.try_add(z))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            space: self.space.clone(),
            cosets,
            distance: self.distance,
            closest: self.closest,
        })
    }

    /// `Ω - ω_0`, so the first coset becomes `0̄`; also returns the shift
    /// when it was nonzero.
    pub fn normalized(&self) -> (Self, Option<SympVector>) {
        let first = self.cosets[0].clone();
        if first.is_zero() {
            return (self.clone(), None);
        }
        let shifted = self.translated(&first).expect("same space");
        (shifted, Some(first.rep().clone()))
    }

    /// Same cosets measured with another norm.
    pub fn with_norm(&self, norm: NormMode) -> Result<Self> {
        let space = self.space.with_norm(norm);
        let cosets = self
            .cosets
            .iter()
            .map(|c| space.canonicalize_unchecked(c.rep()))
            .collect();
        Self::from_cosets(space, cosets)
    }
}

fn pairwise_min_distance(
    space: &QuotientSpace,
    cosets: &[Coset],
) -> (Distance, Option<(usize, usize)>) {
    let mut best = Distance::Infinite;
    let mut at = None;
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            let d = Distance::Finite(space.min_norm(&(&cosets[i] + &cosets[j])));
            if d < best {
                best = d;
                at = Some((i, j));
            }
        }
    }
    (best, at)
}

/// The four hypotheses, each evaluated independently.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Conditions {
    pub self_orthogonal: bool,
    pub d_le_dm: bool,
    pub qsc_distance_ok: bool,
    pub measurement_ok: bool,
}

impl Conditions {
    pub fn all(&self) -> bool {
        self.self_orthogonal && self.d_le_dm && self.qsc_distance_ok && self.measurement_ok
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Flags {
    /// `L = 1`.
    pub additive: bool,
    /// `k = 0`.
    pub cws: bool,
    /// `C(d-1) ≠ {0}`.
    pub degenerate: bool,
}

/// The additive code `[[n, n - s, d_s]]` that contains `Q(Ω)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ContainingCode {
    pub n: usize,
    pub k: usize,
    pub d: Distance,
}

/// Why a certificate was rejected, with a witness.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Rejection {
    SelfOrthogonal {
        left: SympVector,
        right: SympVector,
    },
    DLeDm {
        d: usize,
        dm: Distance,
    },
    /// Cosets `first` and `second` are closer than required. Indices refer
    /// to `Ω` as given.
    QscDistance {
        first: usize,
        second: usize,
        distance: usize,
        required: usize,
    },
    /// `rep_first - rep_second` anticommutes with `stabilizer ∈ C(d-1)`.
    Measurement {
        first: usize,
        second: usize,
        difference: SympVector,
        stabilizer: SympVector,
    },
}

impl Rejection {
    pub fn condition(&self) -> &'static str {
        match self {
            Rejection::SelfOrthogonal { .. } => "self_orthogonal",
            Rejection::DLeDm { .. } => "d_le_dm",
            Rejection::QscDistance { .. } => "qsc_distance",
            Rejection::Measurement { .. } => "measurement",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::SelfOrthogonal { left, right } => {
                write!(f, "self_orthogonal: ({left}, {right})_s = 1")
            }
            Rejection::DLeDm { d, dm } => write!(f, "d_le_dm: d = {d} > d_m = {dm}"),
            Rejection::QscDistance {
                first,
                second,
                distance,
                required,
            } => write!(
                f,
                "qsc_distance: cosets {first} and {second} are at distance {distance} < {required}"
            ),
            Rejection::Measurement {
                first,
                second,
                difference,
                stabilizer,
            } => write!(
                f,
                "measurement: cosets {first} and {second} differ by {difference}, which anticommutes with {stabilizer} in C(d-1)"
            ),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Certified,
    /// Every failed condition, in checking order; the first is the reason.
    Rejected { reasons: Vec<Rejection> },
}

/// Outcome of [`verify`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QsqcCertificate {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub claimed_d: usize,
    pub norm: NormMode,
    /// `2^k · L`.
    pub dimension: u128,
    pub dm: Distance,
    pub qsc_distance: Distance,
    /// `d`, or `2d - 1` under the Hamming norm.
    pub required_qsc_distance: usize,
    pub s: usize,
    pub conditions: Conditions,
    pub flags: Flags,
    pub containing_code: ContainingCode,
    /// Representative subtracted from every coset so that `0̄ ∈ Ω`.
    pub translation: Option<SympVector>,
    /// The checked (translated) coset representatives.
    pub omega: Vec<SympVector>,
    #[serde(flatten)]
    pub status: Status,
}

impl QsqcCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self.status, Status::Certified)
    }

    pub fn reasons(&self) -> &[Rejection] {
        match &self.status {
            Status::Certified => &[],
            Status::Rejected { reasons } => reasons,
        }
    }

    /// `((n, 2^k·L, d))`.
    pub fn params(&self) -> String {
        format!("(({}, {}, {}))", self.n, self.dimension, self.claimed_d)
    }

    /// `((n, 2^k·L, d))` with the dimension factored.
    pub fn params_factored(&self) -> String {
        format!(
            "(({}, 2^{}·{}, {}))",
            self.n, self.k, self.l, self.claimed_d
        )
    }
}

/// Checks the four hypotheses for `(C, Ω, d)`.
///
/// Fails only on misuse (`d = 0`, or `Ω` not built over `C⊥s`); a code that
/// does not qualify comes back as a rejected certificate.
pub fn verify(code: &StabilizerCode, qsc: &QscCode, d: usize) -> Result<QsqcCertificate> {
    let profile = code.degeneracy_profile(d.max(1));
    verify_with_profile(code, qsc, d, &profile)
}

pub(crate) fn verify_with_profile(
    code: &StabilizerCode,
    qsc: &QscCode,
    d: usize,
    profile: &DegeneracyProfile,
) -> Result<QsqcCertificate> {
    if d == 0 {
        return Err(Error::InvalidArgument("distance must be at least 1".into()));
    }
    if qsc.space().modulus() != code.dual() {
        return Err(Error::SpaceMismatch);
    }
    let (normalized, translation) = qsc.normalized();
    let mut reasons = Vec::new();

    let self_orthogonal = match code.code().first_non_orthogonal_pair() {
        None => true,
        Some((i, j)) => {
            reasons.push(Rejection::SelfOrthogonal {
                left: code.code().basis()[i].clone(),
                right: code.code().basis()[j].clone(),
            });
            false
        }
    };

    let dm = code.dm();
    let d_le_dm = dm.at_least(d);
    if !d_le_dm {
        reasons.push(Rejection::DLeDm { d, dm });
    }

    let norm = qsc.space().norm_mode();
    let required = match norm {
        NormMode::Quantum => d,
        NormMode::Hamming => 2 * d - 1,
    };
    let qsc_distance_ok = qsc.distance().at_least(required);
    if !qsc_distance_ok {
        let (first, second) = qsc.closest_pair().expect("finite distance has a pair");
        reasons.push(Rejection::QscDistance {
            first,
            second,
            distance: qsc.distance().finite().unwrap_or(0),
            required,
        });
    }

    let measurement_ok = match measurement_witness(qsc, profile) {
        None => true,
        Some(r) => {
            reasons.push(r);
            false
        }
    };

    let conditions = Conditions {
        self_orthogonal,
        d_le_dm,
        qsc_distance_ok,
        measurement_ok,
    };
    debug_assert_eq!(conditions.all(), reasons.is_empty());
    let status = if reasons.is_empty() {
        Status::Certified
    } else {
        Status::Rejected { reasons }
    };
    Ok(QsqcCertificate {
        n: code.n(),
        k: code.k(),
        l: qsc.len(),
        claimed_d: d,
        norm,
        dimension: (1u128 << code.k()) * qsc.len() as u128,
        dm,
        qsc_distance: qsc.distance(),
        required_qsc_distance: required,
        s: profile.s,
        conditions,
        flags: Flags {
            additive: qsc.len() == 1,
            cws: code.k() == 0,
            degenerate: profile.s > 0,
        },
        containing_code: ContainingCode {
            n: code.n(),
            k: code.n() - profile.s,
            d: profile.d_s,
        },
        translation,
        omega: normalized.reps(),
        status,
    })
}

/// First pair whose difference leaves `C(d-1)⊥s`, with the stabilizer in
/// `C(d-1)` that detects it.
fn measurement_witness(qsc: &QscCode, profile: &DegeneracyProfile) -> Option<Rejection> {
    if profile.s == 0 {
        return None;
    }
    let cosets = qsc.cosets();
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            let diff = cosets[i].rep() + cosets[j].rep();
            if !profile.span_dual.contains_unchecked(&diff) {
                let stabilizer = profile
                    .lowweight
                    .iter()
                    .find(|c| c.sym(&diff))
                    .expect("some generator of the span detects the difference")
                    .clone();
                return Some(Rejection::Measurement {
                    first: i,
                    second: j,
                    difference: diff,
                    stabilizer,
                });
            }
        }
    }
    None
}

/// Largest `d` at which `verify` certifies, scanning `d = 1, 2, ...`.
/// Infinite if every `d <= n + 1` certifies (possible only for `L = 1`
/// with `C` self-dual).
pub fn max_certifiable_distance(code: &StabilizerCode, qsc: &QscCode) -> Result<Distance> {
    let mut best = 0;
    for d in 1..=code.n() + 1 {
        if verify(code, qsc, d)?.is_certified() {
            best = d;
        } else {
            break;
        }
    }
    Ok(if best == code.n() + 1 {
        Distance::Infinite
    } else {
        Distance::Finite(best)
    })
}

/// Labels from the special cases of the construction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Additive,
    Cws,
    Degenerate,
    Nondegenerate,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub labels: BTreeSet<Label>,
    pub containing_code: ContainingCode,
}

pub fn classify(cert: &QsqcCertificate) -> Classification {
    let mut labels = BTreeSet::new();
    if cert.flags.additive {
        labels.insert(Label::Additive);
    }
    if cert.flags.cws {
        labels.insert(Label::Cws);
    }
    labels.insert(if cert.flags.degenerate {
        Label::Degenerate
    } else {
        Label::Nondegenerate
    });
    Classification {
        labels,
        containing_code: cert.containing_code,
    }
}

fn check_union_size(code: &StabilizerCode, qsc: &QscCode) -> Result<()> {
    let log2 = code.dual().dim() + (usize::BITS - (qsc.len() - 1).leading_zeros()) as usize;
    if log2 > UNION_ENUMERATION_LOG2 {
        return Err(Error::TooLarge {
            what: "union code",
            log2_size: log2,
            limit: UNION_ENUMERATION_LOG2,
        });
    }
    Ok(())
}

/// Visits every nonzero difference of elements of `Ω_* = ⋃ (ω_i + C⊥s)`,
/// grouped as the cosets `ω_i + ω_j + C⊥s` for `i <= j`.
fn for_each_union_difference<F>(code: &StabilizerCode, qsc: &QscCode, mut f: F)
where
    F: FnMut(&SympVector),
{
    let h = code.dual();
    let reps = qsc.reps();
    for i in 0..reps.len() {
        for j in i..reps.len() {
            let offset = &reps[i] + &reps[j];
            h.for_each_in_coset(&offset, |v| {
                if !v.is_zero() {
                    f(v);
                }
                true
            });
        }
    }
}

/// `δ = d(Ω_*)`: minimum weight of a nonzero difference of two vectors of
/// the union code.
pub fn classical_union_distance(code: &StabilizerCode, qsc: &QscCode) -> Result<usize> {
    check_union_size(code, qsc)?;
    let mut best = usize::MAX;
    for_each_union_difference(code, qsc, |v| {
        best = best.min(v.quantum_weight());
    });
    Ok(best)
}

/// How the exclusion set in the union-stabilizer distance is read.
pub const UST_EXCLUSION_READING: &str =
    "X = { c in C : (c, w)_s = 0 for every w in the union code }";

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct UstReport {
    /// `min w_Q` over `(Ω_* - Ω_*) \ X`, excluding zero.
    pub ust_distance: Distance,
    /// `δ = d(Ω_*)`.
    pub classical_union_distance: usize,
    /// `ust_distance > δ`.
    pub strict: bool,
    pub exclusion_dim: usize,
    pub exclusion_reading: &'static str,
}

/// Union-stabilizer distance of `Ω`.
pub fn ust_distance(code: &StabilizerCode, qsc: &QscCode) -> Result<UstReport> {
    check_union_size(code, qsc)?;
    let n = code.n();
    // C ⊥ C⊥s already, so orthogonality to Ω_* reduces to the representatives
    let reps = qsc.reps();
    let rep_span = Gf2Subspace::span(n, &reps)?;
    let exclusion = code.code().intersection(&rep_span.symplectic_dual());
    let mut best = usize::MAX;
    let mut delta = usize::MAX;
    for_each_union_difference(code, qsc, |v| {
        let w = v.quantum_weight();
        delta = delta.min(w);
        if w < best && !exclusion.contains_unchecked(v) {
            best = w;
        }
    });
    let ust = if best == usize::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(best)
    };
    Ok(UstReport {
        ust_distance: ust,
        classical_union_distance: delta,
        strict: ust > Distance::Finite(delta),
        exclusion_dim: exclusion.dim(),
        exclusion_reading: UST_EXCLUSION_READING,
    })
}
