mod common;

use proptest::prelude::*;
use qsqc::oracle::{check_qsqc, projector_check, KlOptions};
use qsqc::{corpus, verify, NormMode, QscCode, QuotientSpace, StabilizerCode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn certified_codes_satisfy_kl(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = common::random_instance(&mut rng);
        let cert = verify(&inst.code, &inst.qsc, inst.d).unwrap();
        let kl = check_qsqc(&inst.code, &inst.qsc, inst.d, &KlOptions::default()).unwrap();
        if cert.is_certified() {
            prop_assert!(kl.ok, "{} certified, oracle witness {:?}", cert.params(), kl.witness);
        }
        if !kl.ok {
            prop_assert!(!cert.is_certified());
            prop_assert!(kl.witness.unwrap().weight < inst.d);
        }
    }

    #[test]
    fn random_projectors_are_exact(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = common::random_instance(&mut rng);
        for c in inst.qsc.cosets() {
            let r = projector_check(&inst.code, c).unwrap();
            prop_assert!(r.ok(), "{:?}", r);
        }
    }
}

#[test]
fn bundled_corpus_agrees_with_oracle() {
    for ex in corpus::examples() {
        let code = StabilizerCode::analyze(&ex.code_rows()).unwrap();
        let q = QscCode::build(&code, &ex.omega_reps()).unwrap();
        let cert = verify(&code, &q, ex.d).unwrap();
        assert!(cert.is_certified(), "{}", ex.name);
        let kl = check_qsqc(&code, &q, ex.d, &KlOptions::default()).unwrap();
        assert!(kl.ok, "{}: {:?}", ex.name, kl.witness);
        assert_eq!(kl.degenerate(), cert.flags.degenerate, "{}", ex.name);
    }
}

#[test]
fn projector_identities_on_bundled_codes() {
    for ex in corpus::examples() {
        let code = StabilizerCode::analyze(&ex.code_rows()).unwrap();
        let space = QuotientSpace::new(code.dual().clone(), NormMode::Quantum);
        for rep in ex.omega_reps().iter().take(2) {
            let c = space.canonicalize(rep).unwrap();
            let r = projector_check(&code, &c).unwrap();
            assert!(r.ok(), "{}: {r:?}", ex.name);
        }
    }
}
