//! Exact state-space oracle.
//!
//! Stabilizer elements are lifted to Pauli matrices with phase `i^{a·b}`,
//! codespaces are built as explicit Gaussian-integer vectors in `C^{2^n}`
//! and the Knill–Laflamme conditions are checked with exact arithmetic.
//! Amplitudes are kept unnormalized; every comparison that would involve
//! a norm is cross-multiplied instead.

use std::fmt;

use num_complex::Complex;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::SympVector;
use crate::pauli::{enumerate_errors, error_count};
use crate::qsc::QscCode;
use crate::quotient::Coset;
use crate::stabilizer::StabilizerCode;

pub type Gaussian = Complex<i64>;

/// Largest `n` for which codespace bases are built.
pub const BASIS_QUBIT_LIMIT: usize = 14;
/// Largest `n` checked against its full error set without an override.
pub const KL_QUBIT_LIMIT: usize = 12;
/// Largest `n` accepted by [`theorem1_check`].
pub const THEOREM1_QUBIT_LIMIT: usize = 10;
/// Largest `n` accepted by [`projector_check`].
pub const PROJECTOR_QUBIT_LIMIT: usize = 12;
/// Default size of a sampled error set.
pub const DEFAULT_SAMPLE: usize = 5000;
/// Bound on `log2` of the total number of stored amplitudes.
const AMPLITUDE_LIMIT_LOG2: usize = 26;
/// Bound on `log2` of the error set materialized by the KL check.
const ERROR_SET_LIMIT_LOG2: usize = 24;

fn mul_ipow(z: Gaussian, p: u8) -> Gaussian {
    match p & 3 {
        0 => z,
        1 => Complex::new(-z.im, z.re),
        2 => -z,
        _ => Complex::new(z.im, -z.re),
    }
}

/// `i^phase · X(a) Z(b)`, with `v = (a|b)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PauliOperator {
    pub phase: u8,
    pub v: SympVector,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            v: SympVector::zero(n),
        }
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    /// Image of `|x>`: the operator sends it to `i^p |y>`; returns `(y, p)`.
    #[inline]
    pub fn apply_basis(&self, x: u32) -> (u32, u8) {
        let a = self.v.a_mask() as u32;
        let b = self.v.b_mask() as u32;
        let sign = ((b & x).count_ones() & 1) as u8;
        (x ^ a, (self.phase + 2 * sign) & 3)
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let cross = self.v.b_mask() & other.v.a_mask();
        let sign = (cross.count_ones() & 1) as u8;
        Self {
            phase: (self.phase + other.phase + 2 * sign) & 3,
            v: &self.v + &other.v,
        }
    }

    /// `(i^q X(a)Z(b))† = i^{-q} (-1)^{a·b} X(a)Z(b)`.
    pub fn adjoint(&self) -> Self {
        let ab = (self.v.a_mask() & self.v.b_mask()).count_ones() as u8;
        Self {
            phase: (4 - self.phase + 2 * (ab & 1)) & 3,
            v: self.v.clone(),
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        !self.v.sym(&other.v)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = ["", "i·", "-", "-i·"][self.phase as usize];
        write!(f, "{p}{}", self.v)
    }
}

/// The Hermitian lift `i^{a·b} X(a) Z(b)`.
pub fn lift_generator(c: &SympVector) -> PauliOperator {
    let ab = c.a_words().iter().zip(c.b_words()).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
    PauliOperator {
        phase: (ab & 3) as u8,
        v: c.clone(),
    }
}

fn check_qubits(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::StateSpaceTooLarge { n, limit })
    } else {
        Ok(())
    }
}

type Sparse = Vec<(u32, Gaussian)>;

fn normalize_sparse(mut v: Sparse) -> Sparse {
    v.sort_unstable_by_key(|&(x, _)| x);
    let mut out: Sparse = Vec::with_capacity(v.len());
    for (x, z) in v {
        match out.last_mut() {
            Some((y, acc)) if *y == x => *acc += z,
            _ => out.push((x, z)),
        }
    }
    out.retain(|&(_, z)| z != Complex::new(0, 0));
    out
}

fn apply_sparse(op: &PauliOperator, v: &Sparse) -> Sparse {
    normalize_sparse(
        v.iter()
            .map(|&(x, z)| {
                let (y, p) = op.apply_basis(x);
                (y, mul_ipow(z, p))
            })
            .collect(),
    )
}

/// `(1 + s·g) v`.
fn apply_factor(op: &PauliOperator, sign: i8, v: &Sparse) -> Sparse {
    let mut out = v.clone();
    out.extend(v.iter().map(|&(x, z)| {
        let (y, p) = op.apply_basis(x);
        let z = mul_ipow(z, p);
        (y, if sign < 0 { -z } else { z })
    }));
    normalize_sparse(out)
}

/// A vector in `C^{2^n}` with Gaussian-integer amplitudes over the
/// denominator `2^scale_log2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactState {
    n: usize,
    amps: Vec<Gaussian>,
    support: Vec<u32>,
    scale_log2: u32,
}

impl ExactState {
    pub fn new(n: usize, amps: Vec<Gaussian>, scale_log2: u32) -> Result<Self> {
        check_qubits(n, BASIS_QUBIT_LIMIT)?;
        if amps.len() != 1 << n {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes, found {}",
                1usize << n,
                amps.len()
            )));
        }
        let support: Vec<u32> = (0..amps.len() as u32).filter(|&x| amps[x as usize] != Complex::new(0, 0)).collect();
        if support.is_empty() {
            return Err(Error::InvalidArgument("state vector is zero".into()));
        }
        Ok(Self {
            n,
            amps,
            support,
            scale_log2,
        })
    }

    /// The computational basis state `|x>`.
    pub fn basis(n: usize, x: u32) -> Result<Self> {
        check_qubits(n, BASIS_QUBIT_LIMIT)?;
        Self::from_sparse(n, &[(x, Complex::new(1, 0))], 0)
    }

    fn from_sparse(n: usize, v: &[(u32, Gaussian)], scale_log2: u32) -> Result<Self> {
        let mut amps = vec![Complex::new(0, 0); 1 << n];
        for &(x, z) in v {
            amps[x as usize] = z;
        }
        Self::new(n, amps, scale_log2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Gaussian] {
        &self.amps
    }

    /// Indices of the nonzero amplitudes, increasing.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn scale_log2(&self) -> u32 {
        self.scale_log2
    }

    /// `<self|other>` on the raw amplitudes.
    pub fn inner(&self, other: &Self) -> Gaussian {
        let (small, large, flip) = if self.support.len() <= other.support.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Complex::new(0, 0);
        for &x in &small.support {
            acc += small.amps[x as usize].conj() * large.amps[x as usize];
        }
        if flip {
            acc.conj()
        } else {
            acc
        }
    }

    /// `<self|self>` on the raw amplitudes.
    pub fn norm_sqr(&self) -> i64 {
        self.support.iter().map(|&x| self.amps[x as usize].norm_sqr()).sum()
    }

    /// Same ray, possibly different scale.
    pub fn is_parallel(&self, other: &Self) -> bool {
        let ip = self.inner(other);
        // Cauchy–Schwarz with equality
        ip.norm_sqr() as i128 == self.norm_sqr() as i128 * other.norm_sqr() as i128
    }
}

/// Applies a Pauli operator. The result is a signed, phased permutation of
/// the amplitudes.
pub fn apply_error(e: &PauliOperator, psi: &ExactState) -> Result<ExactState> {
    if e.n() != psi.n {
        return Err(Error::DimensionMismatch {
            left: e.n(),
            right: psi.n,
        });
    }
    let mut amps = vec![Complex::new(0, 0); psi.amps.len()];
    for &x in &psi.support {
        let (y, p) = e.apply_basis(x);
        amps[y as usize] = mul_ipow(psi.amps[x as usize], p);
    }
    ExactState::new(psi.n, amps, psi.scale_log2)
}

/// The `2^k` basis states of `Q(0)` as sparse vectors: `Π_j (1 + g_j)|x>`
/// for one `x` in each coset of the `X`-support group that survives.
fn zero_sector(code: &StabilizerCode) -> Result<Vec<Sparse>> {
    let n = code.n();
    check_qubits(n, BASIS_QUBIT_LIMIT)?;
    if code.k() + n > AMPLITUDE_LIMIT_LOG2 {
        return Err(Error::TooLarge {
            what: "codespace basis",
            log2_size: code.k() + n,
            limit: AMPLITUDE_LIMIT_LOG2,
        });
    }
    let gens: Vec<PauliOperator> = code.code().basis().iter().map(lift_generator).collect();
    // every state built from |x> is supported on x + A, A = span of X parts
    let mut a_span: Vec<u32> = vec![0];
    for g in &gens {
        let a = g.v.a_mask() as u32;
        if !a_span.contains(&a) {
            let shifted: Vec<u32> = a_span.iter().map(|&y| y ^ a).collect();
            a_span.extend(shifted);
        }
    }
    let mut covered = vec![false; 1 << n];
    let mut states = Vec::new();
    for x in 0..(1u32 << n) {
        if covered[x as usize] {
            continue;
        }
        for &a in &a_span {
            covered[(x ^ a) as usize] = true;
        }
        let mut v: Sparse = vec![(x, Complex::new(1, 0))];
        for g in &gens {
            v = apply_factor(g, 1, &v);
            if v.is_empty() {
                break;
            }
        }
        if !v.is_empty() {
            states.push(v);
        }
    }
    let expected = 1usize << code.k();
    if states.len() != expected {
        return Err(Error::RankDeficient {
            found: states.len(),
            expected,
        });
    }
    let norm = |v: &Sparse| v.iter().map(|(_, z)| z.norm_sqr()).sum::<i64>();
    let n0 = norm(&states[0]);
    if let Some(bad) = states.iter().position(|v| norm(v) != n0) {
        return Err(Error::RankDeficient {
            found: bad,
            expected,
        });
    }
    Ok(states)
}

fn check_coset(code: &StabilizerCode, coset: &Coset) -> Result<()> {
    if coset.space().modulus() != code.dual() {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

fn translate(code: &StabilizerCode, zero: &[Sparse], coset: &Coset) -> Result<Vec<ExactState>> {
    let shift = lift_generator(coset.rep());
    let scale = (code.n() - code.k()) as u32;
    zero.iter()
        .map(|v| ExactState::from_sparse(code.n(), &apply_sparse(&shift, v), scale))
        .collect()
}

/// An orthogonal basis of `Q(i)` with equal squared norms:
/// `lift(rep) · Π_j (1 + g_j) |x>` over suitable `x`.
pub fn codespace_basis(code: &StabilizerCode, coset: &Coset) -> Result<Vec<ExactState>> {
    check_coset(code, coset)?;
    let zero = zero_sector(code)?;
    translate(code, &zero, coset)
}

/// A coset together with a basis of its codespace.
#[derive(Clone, Debug)]
pub struct CosetBasis {
    pub coset: Coset,
    pub states: Vec<ExactState>,
}

/// Bases of every `Q(i)`, `i` in the code.
pub fn qsqc_basis(code: &StabilizerCode, qsc: &QscCode) -> Result<Vec<CosetBasis>> {
    let zero = zero_sector(code)?;
    qsc.cosets()
        .iter()
        .map(|c| {
            check_coset(code, c)?;
            Ok(CosetBasis {
                coset: c.clone(),
                states: translate(code, &zero, c)?,
            })
        })
        .collect()
}

/// An exact element of `Q(i)`: `re/den + i·im/den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct GaussianRational {
    pub re: i64,
    pub im: i64,
    pub den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl GaussianRational {
    pub fn new(num: Gaussian, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(gcd(num.re, num.im), den) * den.signum();
        Self {
            re: num.re / g,
            im: num.im / g,
            den: den / g,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.re, self.im) {
            (re, 0) => format!("{re}"),
            (0, im) => format!("{im}i"),
            (re, im) if im < 0 => format!("({re}{im}i)"),
            (re, im) => format!("({re}+{im}i)"),
        };
        if self.den == 1 {
            f.write_str(&num)
        } else {
            write!(f, "{num}/{}", self.den)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `<v_i|e|v_j> != 0` for `i != j`.
    OffDiagonal,
    /// `<v_i|e|v_i> / <v_i|v_i>` differs between basis states.
    StateDependent,
}

/// The first violated Knill–Laflamme condition.
#[derive(Clone, Debug, Serialize)]
pub struct KlWitness {
    pub error: SympVector,
    pub weight: usize,
    pub kind: ViolationKind,
    /// Indices into the concatenated basis.
    pub left: usize,
    pub right: usize,
    pub left_coset: SympVector,
    pub right_coset: SympVector,
    pub value: GaussianRational,
    /// For [`ViolationKind::StateDependent`], the value on state 0.
    pub reference: Option<GaussianRational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FEntry {
    pub error: SympVector,
    pub value: GaussianRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct KlReport {
    pub ok: bool,
    pub d: usize,
    pub basis_size: usize,
    /// Nonzero `f(e)`, in error enumeration order.
    pub f_table: Vec<FEntry>,
    pub witness: Option<KlWitness>,
    /// True when only part of the error set was checked.
    pub partial: bool,
    pub errors_checked: usize,
    pub errors_total: u128,
}

impl KlReport {
    /// Nonzero `f(e)` for some `e != I`.
    pub fn degenerate(&self) -> bool {
        self.f_table.iter().any(|f| !f.error.is_zero())
    }

    pub fn f(&self, e: &SympVector) -> Option<GaussianRational> {
        self.f_table.iter().find(|f| &f.error == e).map(|f| f.value)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum KlMode {
    Full,
    /// A uniform sample of `count` errors, seeded.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug)]
pub struct KlOptions {
    pub mode: KlMode,
    /// Allows `n` above [`KL_QUBIT_LIMIT`].
    pub allow_large: bool,
}

impl Default for KlOptions {
    fn default() -> Self {
        Self {
            mode: KlMode::Full,
            allow_large: false,
        }
    }
}

impl KlOptions {
    pub fn sampled(count: usize, seed: u64) -> Self {
        Self {
            mode: KlMode::Sampled { count, seed },
            allow_large: false,
        }
    }
}

struct Flat<'a> {
    states: Vec<&'a ExactState>,
    cosets: Vec<&'a SympVector>,
    norms: Vec<i64>,
    /// `owners[x]` lists the states whose support contains `x`.
    owners: Vec<Vec<u32>>,
}

fn error_set(n: usize, t: usize, mode: KlMode) -> Result<(Vec<SympVector>, u128, bool)> {
    let total = error_count(n, t);
    let log2 = 128 - total.leading_zeros() as usize;
    if log2 > ERROR_SET_LIMIT_LOG2 {
        return Err(Error::TooLarge {
            what: "error set",
            log2_size: log2,
            limit: ERROR_SET_LIMIT_LOG2,
        });
    }
    let all: Vec<SympVector> = enumerate_errors(n, t).collect();
    match mode {
        KlMode::Full => Ok((all, total, false)),
        KlMode::Sampled { count, .. } if count >= all.len() => Ok((all, total, false)),
        KlMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = index::sample(&mut rng, all.len(), count).into_vec();
            picked.sort_unstable();
            Ok((picked.into_iter().map(|i| all[i].clone()).collect(), total, true))
        }
    }
}

type Outcome = std::result::Result<Option<GaussianRational>, Box<KlWitness>>;

fn check_one(flat: &Flat<'_>, e: &SympVector, acc: &mut [Gaussian], touched: &mut Vec<u32>) -> Outcome {
    let op = lift_generator(e);
    let zero = Complex::new(0, 0);
    let mut reference: Option<(Gaussian, i64)> = None;
    for (j, vj) in flat.states.iter().enumerate() {
        for &x in &vj.support {
            let (y, p) = op.apply_basis(x);
            let z = mul_ipow(vj.amps[x as usize], p);
            for &i in &flat.owners[y as usize] {
                if acc[i as usize] == zero && !touched.contains(&i) {
                    touched.push(i);
                }
                acc[i as usize] += flat.states[i as usize].amps[y as usize].conj() * z;
            }
        }
        let mut diag = zero;
        let mut bad = None;
        for &i in touched.iter() {
            let val = acc[i as usize];
            if i as usize == j {
                diag = val;
            } else if val != zero && bad.is_none() {
                bad = Some((i as usize, val));
            }
            acc[i as usize] = zero;
        }
        touched.clear();
        let witness = |left: usize, value: Gaussian, kind, reference| KlWitness {
            error: e.clone(),
            weight: e.quantum_weight(),
            kind,
            left,
            right: j,
            left_coset: flat.cosets[left].clone(),
            right_coset: flat.cosets[j].clone(),
            value: GaussianRational::new(value, flat.norms[j]),
            reference,
        };
        if let Some((i, val)) = bad {
            return Err(Box::new(witness(i, val, ViolationKind::OffDiagonal, None)));
        }
        match reference {
            None => reference = Some((diag, flat.norms[j])),
            Some((r, rn)) => {
                let lhs = (diag.re as i128 * rn as i128, diag.im as i128 * rn as i128);
                let nj = flat.norms[j] as i128;
                let rhs = (r.re as i128 * nj, r.im as i128 * nj);
                if lhs != rhs {
                    return Err(Box::new(witness(
                        j,
                        diag,
                        ViolationKind::StateDependent,
                        Some(GaussianRational::new(r, rn)),
                    )));
                }
            }
        }
    }
    Ok(reference
        .filter(|(r, _)| *r != zero)
        .map(|(r, rn)| GaussianRational::new(r, rn)))
}

/// Checks `<v_i|e|v_j> = f(e) δ_ij` for all errors `e` of quantum weight
/// below `d`, across the concatenation of all given bases.
pub fn kl_check(bases: &[CosetBasis], d: usize, opts: &KlOptions) -> Result<KlReport> {
    let states: Vec<&ExactState> = bases.iter().flat_map(|b| b.states.iter()).collect();
    let Some(first) = states.first() else {
        return Err(Error::NoVectors);
    };
    let n = first.n;
    if let Some(bad) = states.iter().find(|s| s.n != n) {
        return Err(Error::DimensionMismatch { left: n, right: bad.n });
    }
    if n > KL_QUBIT_LIMIT && !opts.allow_large {
        return Err(Error::StateSpaceTooLarge {
            n,
            limit: KL_QUBIT_LIMIT,
        });
    }
    if d == 0 {
        return Err(Error::InvalidArgument("distance must be at least 1".into()));
    }
    let cosets: Vec<&SympVector> = bases
        .iter()
        .flat_map(|b| std::iter::repeat(b.coset.rep()).take(b.states.len()))
        .collect();
    let norms: Vec<i64> = states.iter().map(|s| s.norm_sqr()).collect();
    let mut owners = vec![Vec::new(); 1 << n];
    for (i, s) in states.iter().enumerate() {
        for &x in &s.support {
            owners[x as usize].push(i as u32);
        }
    }
    let flat = Flat {
        states,
        cosets,
        norms,
        owners,
    };
    let (errors, total, partial) = error_set(n, d - 1, opts.mode)?;
    let outcomes: Vec<Outcome> = errors
        .par_iter()
        .map_init(
            || (vec![Complex::new(0, 0); flat.states.len()], Vec::new()),
            |(acc, touched), e| check_one(&flat, e, acc, touched),
        )
        .collect();
    let mut f_table = Vec::new();
    let mut witness = None;
    for (e, outcome) in errors.iter().zip(outcomes) {
        match outcome {
            Ok(Some(value)) => f_table.push(FEntry {
                error: e.clone(),
                value,
            }),
            Ok(None) => {}
            Err(w) => {
                witness = Some(*w);
                break;
            }
        }
    }
    Ok(KlReport {
        ok: witness.is_none(),
        d,
        basis_size: flat.states.len(),
        f_table,
        witness,
        partial,
        errors_checked: errors.len(),
        errors_total: total,
    })
}

/// Builds the codespace of `qsc` and runs [`kl_check`] on it.
pub fn check_qsqc(code: &StabilizerCode, qsc: &QscCode, d: usize, opts: &KlOptions) -> Result<KlReport> {
    if code.n() > KL_QUBIT_LIMIT && !opts.allow_large {
        return Err(Error::StateSpaceTooLarge {
            n: code.n(),
            limit: KL_QUBIT_LIMIT,
        });
    }
    kl_check(&qsqc_basis(code, qsc)?, d, opts)
}

/// `w` lies in the span of the orthogonal, equal-norm `basis`.
fn in_span(basis: &[ExactState], w: &ExactState) -> bool {
    let Some(b0) = basis.first() else {
        return false;
    };
    let nb = b0.norm_sqr() as i128;
    let proj: i128 = basis.iter().map(|b| b.inner(w).norm_sqr() as i128).sum();
    proj == w.norm_sqr() as i128 * nb
}

/// Checks that `e` maps every basis state of `Q(i)` into `Q(i + e)`.
pub fn theorem1_check(code: &StabilizerCode, e: &PauliOperator, coset: &Coset) -> Result<bool> {
    check_qubits(code.n(), THEOREM1_QUBIT_LIMIT)?;
    check_coset(code, coset)?;
    let target = coset.try_add(&coset.space().canonicalize(&e.v)?)?;
    let zero = zero_sector(code)?;
    let source = translate(code, &zero, coset)?;
    let image = translate(code, &zero, &target)?;
    for v in &source {
        if !in_span(&image, &apply_error(e, v)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectorReport {
    pub n: usize,
    pub k: usize,
    /// `P² = P`.
    pub idempotent: bool,
    /// `P† = P`.
    pub hermitian: bool,
    /// `trace(P)`; should be `2^k`.
    pub trace: GaussianRational,
}

impl ProjectorReport {
    pub fn ok(&self) -> bool {
        self.idempotent && self.hermitian && self.trace == GaussianRational::new(Complex::new(1i64 << self.k, 0), 1)
    }
}

/// Checks the projector `P = Π_j (1 + λ_i(c_j) g_j) / 2` of `Q(i)` column by
/// column: idempotence, self-adjointness and trace, all exactly.
pub fn projector_check(code: &StabilizerCode, coset: &Coset) -> Result<ProjectorReport> {
    let n = code.n();
    check_qubits(n, PROJECTOR_QUBIT_LIMIT)?;
    check_coset(code, coset)?;
    let factors: Vec<(PauliOperator, i8)> = code
        .code()
        .basis()
        .iter()
        .map(|c| (lift_generator(c), coset.character(c)))
        .collect();
    let m = factors.len();
    // the adjoint formula against the transposed matrix entries
    for (g, _) in &factors {
        let adj = g.adjoint();
        for x in 0..(1u32 << n) {
            let (y, p) = g.apply_basis(x);
            let (back, q) = adj.apply_basis(y);
            // <y|g|x> = i^p must equal conj(<x|g†|y>) = i^{-q}
            if back != x || (p + q) & 3 != 0 {
                return Ok(ProjectorReport {
                    n,
                    k: code.k(),
                    idempotent: false,
                    hermitian: false,
                    trace: GaussianRational::new(Complex::new(0, 0), 1),
                });
            }
        }
    }
    let adjoints: Vec<(PauliOperator, i8)> = factors.iter().rev().map(|(g, s)| (g.adjoint(), *s)).collect();
    let apply_all = |fs: &[(PauliOperator, i8)], v: Sparse| fs.iter().fold(v, |v, (g, s)| apply_factor(g, *s, &v));
    let scale = 1i64 << m;
    let (idempotent, hermitian, trace) = (0..(1u32 << n))
        .into_par_iter()
        .map(|x| {
            let e = vec![(x, Complex::new(1, 0))];
            let col = apply_all(&factors, e.clone());
            let col2 = apply_all(&factors, col.clone());
            let scaled: Sparse = col.iter().map(|&(y, z)| (y, z * scale)).collect();
            let adj = apply_all(&adjoints, e);
            let diag = col.iter().find(|&&(y, _)| y == x).map_or(Complex::new(0, 0), |&(_, z)| z);
            (col2 == scaled, adj == col, diag)
        })
        .reduce(
            || (true, true, Complex::new(0, 0)),
            |a, b| (a.0 && b.0, a.1 && b.1, a.2 + b.2),
        );
    Ok(ProjectorReport {
        n,
        k: code.k(),
        idempotent,
        hermitian,
        trace: GaussianRational::new(trace, scale),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::qsc::verify;
    use crate::quotient::{NormMode, QuotientSpace};

    fn analyzed(m: corpus::Matrix) -> StabilizerCode {
        StabilizerCode::analyze(&m.rows).unwrap()
    }

    fn v(s: &str) -> SympVector {
        s.parse().unwrap()
    }

    #[test]
    fn lift_examples() {
        let id = lift_generator(&SympVector::zero(3));
        assert_eq!(id, PauliOperator::identity(3));
        let y = lift_generator(&v("1|1"));
        assert_eq!(y.phase, 1);
        let sq = y.compose(&y);
        assert_eq!(sq, PauliOperator::identity(1));
        assert_eq!(y.adjoint(), y);
    }

    #[test]
    fn lifts_are_involutions() {
        for a in 0..16u64 {
            for b in 0..16u64 {
                let g = lift_generator(&SympVector::from_masks(4, a, b));
                assert_eq!(g.compose(&g), PauliOperator::identity(4));
                assert_eq!(g.adjoint(), g);
            }
        }
    }

    #[test]
    fn c8_lifts_commute_as_matrices() {
        let code = analyzed(corpus::c8());
        let gens: Vec<_> = code.code().basis().iter().map(lift_generator).collect();
        for g in &gens {
            for h in &gens {
                assert_eq!(g.compose(h), h.compose(g));
                for x in 0..256u32 {
                    let s = ExactState::basis(8, x).unwrap();
                    let gh = apply_error(g, &apply_error(h, &s).unwrap()).unwrap();
                    let hg = apply_error(h, &apply_error(g, &s).unwrap()).unwrap();
                    assert_eq!(gh, hg);
                }
            }
        }
    }

    #[test]
    fn apply_error_examples() {
        let zero = ExactState::basis(1, 0).unwrap();
        assert_eq!(apply_error(&PauliOperator::identity(1), &zero).unwrap(), zero);
        let x = lift_generator(&v("1|0"));
        assert_eq!(apply_error(&x, &zero).unwrap(), ExactState::basis(1, 1).unwrap());
        let e = lift_generator(&v("110|011"));
        let psi = ExactState::new(3, (0..8).map(|i| Complex::new(i, 1 - i)).collect(), 0).unwrap();
        let twice = apply_error(&e, &apply_error(&e, &psi).unwrap()).unwrap();
        assert_eq!(twice, psi);
        assert!(apply_error(&e, &zero).is_err());
    }

    #[test]
    fn basis_dimensions() {
        let c8 = analyzed(corpus::c8());
        let space = QuotientSpace::new(c8.dual().clone(), NormMode::Quantum);
        let b = codespace_basis(&c8, &space.zero()).unwrap();
        assert_eq!(b.len(), 8);
        assert!(b.iter().all(|s| s.scale_log2() == 5));

        let c12 = analyzed(corpus::c12());
        let space = QuotientSpace::new(c12.dual().clone(), NormMode::Quantum);
        for rep in corpus::omega12() {
            let c = space.canonicalize(&rep).unwrap();
            assert_eq!(codespace_basis(&c12, &c).unwrap().len(), 1);
        }
    }

    #[test]
    fn toy_code_sectors_fill_the_space() {
        let toy = analyzed(corpus::toy2());
        let space = QuotientSpace::new(toy.dual().clone(), NormMode::Quantum);
        let mut all = Vec::new();
        for c in space.cosets().unwrap() {
            all.extend(codespace_basis(&toy, &c).unwrap());
        }
        assert_eq!(all.len(), 4);
        for (i, u) in all.iter().enumerate() {
            for w in &all[i + 1..] {
                assert_eq!(u.inner(w), Complex::new(0, 0));
            }
        }
    }

    #[test]
    fn character_consistency() {
        // exact for generators; for other elements of C the lift differs from
        // the product of lifted generators by a sign that is the same in
        // every sector
        for (m, reps) in [(corpus::c8(), corpus::omega81()), (corpus::c9(), corpus::omega9())] {
            let code = analyzed(m);
            let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
            let zero_basis = codespace_basis(&code, &space.zero()).unwrap();
            for c in code.code().elements() {
                let g = lift_generator(&c);
                let gv = apply_error(&g, &zero_basis[0]).unwrap();
                let base = if gv == zero_basis[0] { 1 } else { -1 };
                if code.code().basis().contains(&c) {
                    assert_eq!(base, 1);
                }
                for rep in &reps {
                    let coset = space.canonicalize(rep).unwrap();
                    let sign = base * coset.character(&c) as i64;
                    for s in codespace_basis(&code, &coset).unwrap() {
                        let gs = apply_error(&g, &s).unwrap();
                        let expected: Vec<Gaussian> = s.amplitudes().iter().map(|z| z * sign).collect();
                        assert_eq!(gs.amplitudes(), &expected[..]);
                    }
                }
            }
        }
    }

    #[test]
    fn cross_sector_orthogonality() {
        let code = analyzed(corpus::c9());
        let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
        let cosets = space.cosets().unwrap();
        let bases: Vec<_> = cosets.iter().map(|c| codespace_basis(&code, c).unwrap()).collect();
        for (i, bi) in bases.iter().enumerate() {
            for bj in &bases[i + 1..] {
                for u in bi {
                    for w in bj {
                        assert_eq!(u.inner(w), Complex::new(0, 0));
                    }
                }
            }
        }
    }

    #[test]
    fn kl_passes_on_c83() {
        let code = analyzed(corpus::c83());
        let q = QscCode::build(&code, &corpus::omega83()).unwrap();
        let r = check_qsqc(&code, &q, 3, &KlOptions::default()).unwrap();
        assert!(r.ok, "{:?}", r.witness);
        assert_eq!(r.errors_checked, 277);
        assert_eq!(r.basis_size, 8);
        assert!(!r.partial);
        assert!(!r.degenerate());
    }

    #[test]
    fn kl_passes_on_c12_sampled() {
        let code = analyzed(corpus::c12());
        let q = QscCode::build(&code, &corpus::omega12()).unwrap();
        let r = check_qsqc(&code, &q, 5, &KlOptions::sampled(DEFAULT_SAMPLE, 1)).unwrap();
        assert!(r.ok);
        assert!(r.partial);
        assert_eq!(r.errors_checked, DEFAULT_SAMPLE);
        assert_eq!(r.errors_total, 46_666);
    }

    #[test]
    fn sabotaged_omega_fails_with_low_weight_witness() {
        let code = analyzed(corpus::c83());
        let mut reps = corpus::omega83();
        // one coset at distance 1 from 0
        reps[1] = v("10000000|00000000");
        let q = QscCode::build(&code, &reps).unwrap();
        assert!(!verify(&code, &q, 2).unwrap().is_certified());
        let r = check_qsqc(&code, &q, 2, &KlOptions::default()).unwrap();
        assert!(!r.ok);
        assert!(r.witness.unwrap().weight <= 1);
    }

    #[test]
    fn oracle_limits() {
        let rows: Vec<SympVector> = (0..13).map(|i| SympVector::unit(13, 13 + i)).collect();
        let code = StabilizerCode::analyze(&rows).unwrap();
        let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
        let q = QscCode::from_cosets(space.clone(), vec![space.zero()]).unwrap();
        assert!(matches!(
            check_qsqc(&code, &q, 2, &KlOptions::default()),
            Err(Error::StateSpaceTooLarge { n: 13, limit: 12 })
        ));
        let opts = KlOptions {
            allow_large: true,
            ..KlOptions::default()
        };
        assert!(check_qsqc(&code, &q, 2, &opts).unwrap().ok);
        assert!(matches!(
            theorem1_check(&code, &PauliOperator::identity(13), &space.zero()),
            Err(Error::StateSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn theorem1_examples() {
        let code = analyzed(corpus::c8());
        let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
        let zero = space.zero();
        assert!(theorem1_check(&code, &PauliOperator::identity(8), &zero).unwrap());
        for row in code.code().basis() {
            assert!(theorem1_check(&code, &lift_generator(row), &zero).unwrap());
        }
        let x0 = lift_generator(&v("10000000|00000000"));
        assert!(theorem1_check(&code, &x0, &zero).unwrap());
        // the image does not stay in Q(0)
        let basis = codespace_basis(&code, &zero).unwrap();
        assert!(!in_span(&basis, &apply_error(&x0, &basis[0]).unwrap()));
    }

    #[test]
    fn projectors_on_small_codes() {
        for m in [corpus::toy2(), corpus::c8(), corpus::c7()] {
            let code = analyzed(m);
            let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
            let r = projector_check(&code, &space.zero()).unwrap();
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn gaussian_rational_display() {
        assert_eq!(GaussianRational::new(Complex::new(4, 0), 8).to_string(), "1/2");
        assert_eq!(GaussianRational::new(Complex::new(0, -3), -3).to_string(), "1i");
        assert_eq!(GaussianRational::new(Complex::new(2, -2), 4).to_string(), "(1-1i)/2");
    }
}
