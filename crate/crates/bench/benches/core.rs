use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qsqc::corpus;
use qsqc::{
    check_qsqc, find_qsc, rref, KlOptions, NormMode, QscCode, QuotientSpace, SearchProblem, StabilizerCode, Strategy,
    Target,
};

fn linear_algebra(c: &mut Criterion) {
    let rows = corpus::c12().rows;
    c.bench_function("rref_c12", |b| b.iter(|| rref(12, black_box(&rows)).unwrap()));
    let span = rref(12, &rows).unwrap();
    c.bench_function("symplectic_dual_c12", |b| b.iter(|| black_box(&span).symplectic_dual()));
}

fn min_norm(c: &mut Criterion) {
    let code = StabilizerCode::analyze(&corpus::c12().rows).unwrap();
    let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
    let cosets: Vec<_> = corpus::omega12().iter().map(|v| space.canonicalize(v).unwrap()).collect();
    c.bench_function("min_norm_c12", |b| {
        b.iter(|| cosets.iter().map(|x| space.min_norm(black_box(x))).sum::<usize>())
    });
}

fn search(c: &mut Criterion) {
    let code = StabilizerCode::analyze(&corpus::c9().rows).unwrap();
    c.bench_function("search_c9_d2_exhaustive_16", |b| {
        b.iter(|| {
            let p = SearchProblem::new(code.clone(), 2, Target::Count(16)).strategy(Strategy::Exhaustive);
            find_qsc(&p).unwrap()
        })
    });
    let code = StabilizerCode::analyze(&corpus::c8().rows).unwrap();
    c.bench_function("search_c8_d3_greedy_max", |b| {
        b.iter(|| {
            let p = SearchProblem::new(code.clone(), 3, Target::Maximize).strategy(Strategy::Greedy).seed(7);
            find_qsc(&p).unwrap()
        })
    });
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("kl_oracle");
    group.sample_size(10);
    let code = StabilizerCode::analyze(&corpus::c83().rows).unwrap();
    let qsc = QscCode::build(&code, &corpus::omega83()).unwrap();
    group.bench_function("c83_full", |b| b.iter(|| check_qsqc(&code, &qsc, 3, &KlOptions::default()).unwrap()));
    let code = StabilizerCode::analyze(&corpus::c12().rows).unwrap();
    let qsc = QscCode::build(&code, &corpus::omega12()).unwrap();
    group.bench_function("c12_sampled_2000", |b| {
        b.iter(|| check_qsqc(&code, &qsc, 5, &KlOptions::sampled(2000, 1)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, linear_algebra, min_norm, search, oracle);
criterion_main!(benches);
