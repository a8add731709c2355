use proptest::prelude::*;
use qa_core::decomp::{decompose, is_isomorphic};
use qa_core::homology::syzygy;
use qa_core::morita::{build_cpq, build_fix5, check_hypotheses, cpq_family, verify_lemma_3_1, CpqModule, GluedAlgebra};
use qa_core::repmod::simple;
use qa_core::sample::random_module;
use qa_core::{FieldSpec, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fix5() -> GluedAlgebra {
    build_fix5(FieldSpec::Rationals)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn syzygy_summands_are_one_sided(seed in any::<u64>()) {
        let g = fix5();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&mut rng, &g.c);
        prop_assert_eq!(verify_lemma_3_1(&g, std::slice::from_ref(&m)).unwrap().status, Status::Pass);
        for part in decompose(&syzygy(&m)).unwrap() {
            prop_assert!(g.one_sided(&part).is_some());
        }
    }

    #[test]
    fn restrict_inverts_inflate(seed in any::<u64>(), side in 0usize..2) {
        let g = fix5();
        let b = g.block(side).unwrap().algebra.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&mut rng, &b);
        let up = g.inflate(&m, side).unwrap();
        prop_assert_eq!(g.one_sided(&up), Some(side));
        let down = g.restrict(&up, side).unwrap();
        prop_assert_eq!(down.dims(), m.dims());
        prop_assert_eq!(down.maps(), m.maps());
    }
}

#[test]
fn cpq_hypotheses_and_simple_syzygy() {
    let f = FieldSpec::Rationals;
    let (p, q) = (f.from_i64(2), f.from_i64(3));
    let g = build_cpq(2, &p, &q, f).unwrap();
    let h = check_hypotheses(&g, 10).unwrap();
    assert!(h.h1 && h.h2 && h.h3);
    let c1 = g.c.quiver().vertex_index("c1").unwrap();
    let om = syzygy(&simple(&g.c, c1));
    let m0 = cpq_family(&g, &CpqModule::M0 { lambda: q, mu: f.one(), n: 1 }).unwrap();
    assert!(is_isomorphic(&om, &m0).unwrap());
}

#[test]
fn cpq_distinct_parameters_are_distinct() {
    let f = FieldSpec::Rationals;
    let g = build_cpq(2, &f.from_i64(2), &f.from_i64(3), f).unwrap();
    let a = cpq_family(&g, &CpqModule::M { i: 1, lambda: f.from_i64(1), n: 1 }).unwrap();
    let b = cpq_family(&g, &CpqModule::M { i: 1, lambda: f.from_i64(2), n: 1 }).unwrap();
    assert!(!is_isomorphic(&a, &b).unwrap());
}
