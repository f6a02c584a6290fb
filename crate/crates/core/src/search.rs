//! Searching for quotient space codes.
//!
//! The candidates are the cosets of `C⊥s` inside `C(d-1)⊥s`; they form a
//! subspace of the quotient, so the compatibility graph (an edge when two
//! cosets are at distance at least `d`) is a Cayley graph: `x ~ y` iff
//! `‖x - y‖ >= d`. With `0̄` pinned, a code of size `L` is a clique of size
//! `L - 1` among the neighbours of `0̄`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Subspace, SympVector};
use crate::qsc::{verify_with_profile, QscCode};
use crate::quotient::{Coset, NormMode, QuotientSpace};
use crate::stabilizer::{Distance, StabilizerCode};

/// Largest `log2` of the candidate count that will be enumerated.
pub const CANDIDATE_LIMIT_LOG2: usize = 16;

/// Largest vertex count handed to the exact clique search.
pub const EXACT_CLIQUE_LIMIT: usize = 1 << 12;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// Stop once this many cosets are found.
    Count(usize),
    Maximize,
}

#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub code: StabilizerCode,
    pub d: usize,
    pub target: Target,
    pub strategy: Strategy,
    /// Greedy only: a nonzero seed shuffles candidates of equal norm.
    pub seed: u64,
    /// Branch-and-bound node limit.
    pub budget: u64,
}

impl SearchProblem {
    pub fn new(code: StabilizerCode, d: usize, target: Target) -> Self {
        Self {
            code,
            d,
            target,
            strategy: Strategy::Exhaustive,
            seed: 0,
            budget: 50_000_000,
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub qsc: QscCode,
    /// Branch-and-bound nodes visited (0 for greedy).
    pub nodes: u64,
    /// Whether the result is proven maximum among the candidates.
    pub optimal: bool,
    pub elapsed_ms: u128,
}

/// The cosets of `C⊥s` lying in `C(d-1)⊥s`, with their quotient norms.
///
/// Candidate `idx` is `Σ_j bit_j(idx)·basis_j`, so candidate sums are index
/// XORs.
pub struct CandidateSet {
    space: QuotientSpace,
    basis: Gf2Subspace,
    reps: Vec<SympVector>,
    norms: Vec<usize>,
    /// Indices sorted by `(norm, rep)`.
    order: Vec<usize>,
    d: usize,
}

impl CandidateSet {
    pub fn new(code: &StabilizerCode, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("distance must be at least 1".into()));
        }
        let profile = code.degeneracy_profile(d);
        let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
        let basis = space.sub_quotient_basis(&profile.span_dual);
        let m = basis.dim();
        if m > CANDIDATE_LIMIT_LOG2 {
            return Err(Error::TooLarge {
                what: "candidate coset set",
                log2_size: m,
                limit: CANDIDATE_LIMIT_LOG2,
            });
        }
        let reps: Vec<SympVector> = (0..1u64 << m).map(|i| basis.element(i)).collect();
        let norms: Vec<usize> = reps
            .par_iter()
            .map(|r| space.min_norm(&space.canonicalize_unchecked(r)))
            .collect();
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by(|&a, &b| norms[a].cmp(&norms[b]).then_with(|| reps[a].cmp(&reps[b])));
        Ok(Self {
            space,
            basis,
            reps,
            norms,
            order,
            d,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn space(&self) -> &QuotientSpace {
        &self.space
    }

    /// Index of a canonical representative inside the candidate subspace.
    fn index_of(&self, rep: &SympVector) -> Option<usize> {
        let mut idx = 0usize;
        for (j, &p) in self.basis.pivots().iter().enumerate() {
            if rep.get(p) {
                idx |= 1 << j;
            }
        }
        (self.reps[idx] == *rep).then_some(idx)
    }

    pub fn cosets(&self) -> Vec<Coset> {
        self.order
            .iter()
            .map(|&i| self.space.canonicalize_unchecked(&self.reps[i]))
            .collect()
    }

    fn far(&self, a: usize, b: usize) -> bool {
        self.norms[a ^ b] >= self.d
    }

    fn qsc_from_indices(&self, members: &[usize]) -> QscCode {
        let mut best = Distance::Infinite;
        let mut at = None;
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                let dist = Distance::Finite(self.norms[members[i] ^ members[j]]);
                if dist < best {
                    best = dist;
                    at = Some((i, j));
                }
            }
        }
        let cosets = members
            .iter()
            .map(|&i| self.space.canonicalize_unchecked(&self.reps[i]))
            .collect();
        QscCode::from_parts(self.space.clone(), cosets, best, at)
    }
}

/// All cosets of `C⊥s` inside `C(d-1)⊥s`, ordered by `(norm, rep)`. There
/// are `2^(n-k-s)` of them and `0̄` comes first.
pub fn candidate_cosets(code: &StabilizerCode, d: usize) -> Result<Vec<Coset>> {
    Ok(CandidateSet::new(code, d)?.cosets())
}

fn check_dm(code: &StabilizerCode, d: usize) -> Result<()> {
    match code.dm() {
        Distance::Finite(dm) if d > dm => Err(Error::TargetExceedsDm { d, dm }),
        _ => Ok(()),
    }
}

/// Finds `Ω ∋ 0̄` inside `C(d-1)⊥s` with pairwise distance at least `d`.
pub fn find_qsc(problem: &SearchProblem) -> Result<SearchResult> {
    let start = Instant::now();
    let d = problem.d;
    if d == 0 {
        return Err(Error::InvalidArgument("distance must be at least 1".into()));
    }
    if let Target::Count(0) = problem.target {
        return Err(Error::InvalidArgument("target count must be at least 1".into()));
    }
    check_dm(&problem.code, d)?;
    let cands = CandidateSet::new(&problem.code, d)?;
    let vertices: Vec<usize> = cands
        .order
        .iter()
        .copied()
        .filter(|&i| i != 0 && cands.norms[i] >= d)
        .collect();
    let want = match problem.target {
        Target::Count(l) => Some(l),
        Target::Maximize => None,
    };

    let (chosen, nodes, complete) = match problem.strategy {
        Strategy::Greedy => {
            let picked = greedy(&cands, &vertices, want, problem.seed);
            (picked, 0, false)
        }
        Strategy::Exhaustive => {
            if vertices.len() > EXACT_CLIQUE_LIMIT {
                return Err(Error::TooLarge {
                    what: "candidate graph for exact search",
                    log2_size: usize::BITS as usize - vertices.len().leading_zeros() as usize,
                    limit: 12,
                });
            }
            let mut bb = CliqueSearch::new(&cands, &vertices, want.map(|l| l - 1), problem.budget);
            bb.run();
            let picked: Vec<usize> = bb.best.iter().map(|&p| vertices[p]).collect();
            (picked, bb.nodes, !bb.exhausted)
        }
    };

    let mut members = vec![0usize];
    members.extend(chosen);
    let found = members.len();
    if let Some(l) = want {
        if found < l {
            if problem.strategy == Strategy::Exhaustive && !complete {
                return Err(Error::BudgetExhausted { nodes, best: found });
            }
            return Err(Error::NotFound {
                target: l,
                best: found,
                exhaustive: problem.strategy == Strategy::Exhaustive,
            });
        }
        members.truncate(l);
    }
    let optimal = problem.strategy == Strategy::Exhaustive && complete && want.is_none();
    let qsc = cands.qsc_from_indices(&members);
    Ok(SearchResult {
        qsc,
        nodes,
        optimal,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn greedy(cands: &CandidateSet, vertices: &[usize], want: Option<usize>, seed: u64) -> Vec<usize> {
    let mut order = vertices.to_vec();
    if seed != 0 {
        // shuffle only within runs of equal norm
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut start = 0;
        while start < order.len() {
            let norm = cands.norms[order[start]];
            let mut end = start;
            while end < order.len() && cands.norms[order[end]] == norm {
                end += 1;
            }
            order[start..end].shuffle(&mut rng);
            start = end;
        }
    }
    let mut picked: Vec<usize> = Vec::new();
    for v in order {
        if want.is_some_and(|l| picked.len() + 1 >= l) {
            break;
        }
        if picked.iter().all(|&u| cands.far(u, v)) {
            picked.push(v);
        }
    }
    picked
}

/// Branch and bound for a maximum clique with a greedy-colouring bound.
struct CliqueSearch {
    adj: Vec<Vec<u64>>,
    words: usize,
    target: Option<usize>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch {
    fn new(cands: &CandidateSet, vertices: &[usize], target: Option<usize>, budget: u64) -> Self {
        let nv = vertices.len();
        let words = nv.div_ceil(64).max(1);
        let adj: Vec<Vec<u64>> = (0..nv)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..nv {
                    if i != j && cands.far(vertices[i], vertices[j]) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Self {
            adj,
            words,
            target,
            budget,
            nodes: 0,
            exhausted: false,
            best: Vec::new(),
            current: Vec::new(),
        }
    }

    fn done(&self) -> bool {
        self.exhausted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    fn run(&mut self) {
        if self.target == Some(0) {
            return;
        }
        let mut all = vec![0u64; self.words];
        for v in 0..self.adj.len() {
            all[v / 64] |= 1 << (v % 64);
        }
        self.expand(all);
    }

    /// Greedy colouring of `p` in vertex order; returns vertices with their
    /// colour numbers, colours nondecreasing.
    fn colour(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut uncoloured = p.to_vec();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = first_bit(&q) {
                clear(&mut uncoloured, v);
                clear(&mut q, v);
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut p: Vec<u64>) {
        let coloured = self.colour(&p);
        for &(v, c) in coloured.iter().rev() {
            if self.done() {
                return;
            }
            if self.current.len() + c <= self.best.len() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            self.current.push(v);
            let next: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            clear(&mut p, v);
        }
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1 << (v % 64));
}

/// Adds one candidate coset at distance at least `d` from every member of a
/// certified `Ω`, taking the first in `(norm, rep)` order.
pub fn extend(code: &StabilizerCode, qsc: &QscCode, d: usize) -> Result<QscCode> {
    let cands = CandidateSet::new(code, d)?;
    extend_with(code, &cands, qsc)
}

/// [`extend`] reusing a prepared candidate set.
pub fn extend_with(code: &StabilizerCode, cands: &CandidateSet, qsc: &QscCode) -> Result<QscCode> {
    let d = cands.d;
    let profile = code.degeneracy_profile(d);
    let cert = verify_with_profile(code, qsc, d, &profile)?;
    if !cert.is_certified() {
        return Err(Error::NotCertified {
            d,
            reason: cert.reasons()[0].to_string(),
        });
    }
    // work relative to the first member so everything is a candidate index
    let shift = qsc.cosets()[0].rep().clone();
    let members: Vec<usize> = qsc
        .cosets()
        .iter()
        .map(|c| {
            cands
                .index_of(&(c.rep() + &shift))
                .expect("certified cosets differ by candidates")
        })
        .collect();
    for &v in &cands.order {
        if members.contains(&v) {
            continue;
        }
        if members.iter().all(|&m| cands.far(m, v)) {
            let mut cosets = qsc.cosets().to_vec();
            let rep = &cands.reps[v] + &shift;
            cosets.push(qsc.space().canonicalize_unchecked(&rep));
            return QscCode::from_cosets(qsc.space().clone(), cosets);
        }
    }
    Err(Error::NotFound {
        target: qsc.len() + 1,
        best: qsc.len(),
        exhaustive: true,
    })
}
