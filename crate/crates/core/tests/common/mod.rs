#![allow(dead_code)]

use qsqc::{
    find_qsc, Gf2Subspace, NormMode, QscCode, QuotientSpace, SearchProblem, StabilizerCode, Strategy,
    SympVector, Target,
};
use rand::Rng;

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> SympVector {
    let mask = (1u64 << n) - 1;
    SympVector::from_masks(n, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask)
}

/// Grows a self-orthogonal subspace one random compatible row at a time.
pub fn random_self_orthogonal<R: Rng>(rng: &mut R, n: usize, rows: usize) -> Gf2Subspace {
    let mut code = Gf2Subspace::zero(n);
    for _ in 0..rows {
        for _ in 0..64 {
            let v = random_vector(rng, n);
            if code.basis().iter().all(|r| !r.sym(&v)) && code.insert(v) {
                break;
            }
        }
    }
    code
}

pub struct Instance {
    pub code: StabilizerCode,
    pub qsc: QscCode,
    pub d: usize,
}

/// A random `(C, Ω, d)` with `n <= 6`, `|Ω| <= 4`, `d <= 3`. Half the time
/// `Ω` comes from a greedy search, so that certified instances are common.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let n = rng.gen_range(2..=6);
    let rows = rng.gen_range(0..=n);
    let code = StabilizerCode::from_subspace(random_self_orthogonal(rng, n, rows)).unwrap();
    let d = rng.gen_range(1..=3);
    let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
    let want = rng.gen_range(1..=4);
    if rng.gen_bool(0.5) {
        let problem = SearchProblem::new(code.clone(), d, Target::Count(want))
            .strategy(Strategy::Greedy)
            .seed(rng.gen());
        if let Ok(found) = find_qsc(&problem) {
            return Instance {
                code,
                qsc: found.qsc,
                d,
            };
        }
    }
    let mut cosets = Vec::new();
    for _ in 0..want {
        let c = space.canonicalize(&random_vector(rng, n)).unwrap();
        if !cosets.contains(&c) {
            cosets.push(c);
        }
    }
    let qsc = QscCode::from_cosets(space, cosets).unwrap();
    Instance { code, qsc, d }
}
