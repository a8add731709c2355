use proptest::prelude::*;
use qa_core::decomp::{decompose, is_indecomposable, is_isomorphic, same_multiset, IsoRegistry};
use qa_core::homology::{inj_dim, proj_dim, projective_cover, syzygy_with_inclusion};
use qa_core::igusa::{phi, phi_characterization_check, phi_eta_oracle, DEFAULT_HORIZON};
use qa_core::sample::{random_bounded_algebra, random_conjugate, random_module};
use qa_core::{DimResult, FieldSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn setup(seed: u64, p: bool) -> (ChaCha8Rng, Arc<qa_core::BoundAlgebra>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = if p { FieldSpec::prime(3).unwrap() } else { FieldSpec::Rationals };
    let a = random_bounded_algebra(&mut rng, f, 4, 6, 6, 24);
    (rng, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cover_and_syzygy_are_exact(seed in any::<u64>(), p in any::<bool>()) {
        let (mut rng, a) = setup(seed, p);
        let m = random_module(&mut rng, &a);
        let c = projective_cover(&m);
        prop_assert!(c.projective.is_morphism(&m, &c.epi));
        let (om, inc) = syzygy_with_inclusion(&m);
        prop_assert!(om.is_morphism(&c.projective, &inc));
        for v in 0..a.vertex_count() {
            prop_assert_eq!(c.epi[v].rank(), m.dim_at(v));
            prop_assert_eq!(c.projective.dim_at(v), m.dim_at(v) + om.dim_at(v));
        }
        prop_assert_eq!(c.summands.len(), m.top().total_dim());
    }

    #[test]
    fn decomposition_is_additive(seed in any::<u64>(), p in any::<bool>()) {
        let (mut rng, a) = setup(seed, p);
        let m = random_module(&mut rng, &a);
        let n = random_module(&mut rng, &a);
        let dm = decompose(&m).unwrap();
        let dn = decompose(&n).unwrap();
        prop_assert_eq!(dm.iter().map(|x| x.total_dim()).sum::<usize>(), m.total_dim());
        for x in &dm {
            prop_assert!(is_indecomposable(x).unwrap());
        }
        let mut both = dm.clone();
        both.extend(dn);
        prop_assert!(same_multiset(&decompose(&m.direct_sum(&n).unwrap()).unwrap(), &both));
    }

    #[test]
    fn conjugates_share_a_class(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed, false);
        let m = random_module(&mut rng, &a);
        let c = random_conjugate(&mut rng, &m);
        prop_assert!(is_isomorphic(&m, &c).unwrap());
        let mut reg = IsoRegistry::new(&a);
        let mut x = reg.classify(&m).unwrap();
        let mut y = reg.classify(&c).unwrap();
        x.sort();
        y.sort();
        prop_assert_eq!(x, y);
        let back = IsoRegistry::from_json(&a, &reg.to_json()).unwrap();
        prop_assert_eq!(back.len(), reg.len());
        prop_assert_eq!(back.to_json(), reg.to_json());
    }

    #[test]
    fn phi_properties(seed in any::<u64>()) {
        let (mut rng, a) = setup(seed, false);
        let mut reg = IsoRegistry::new(&a);
        let m = random_module(&mut rng, &a);
        let n = random_module(&mut rng, &a);
        let pm = phi(&m, &mut reg).unwrap().value;
        if let DimResult::Finite(d) = proj_dim(&m, DEFAULT_HORIZON).unwrap() {
            prop_assert_eq!(pm, d);
        }
        prop_assert!(pm <= phi(&m.direct_sum(&n).unwrap(), &mut reg).unwrap().value);
        prop_assert_eq!(phi(&m.power(2), &mut reg).unwrap().value, pm);
        prop_assert_eq!(phi_eta_oracle(&m, &mut reg, DEFAULT_HORIZON).unwrap(), pm);
        let ch = phi_characterization_check(&m, &mut reg, 2).unwrap();
        prop_assert!(ch.best <= ch.phi);
    }

    #[test]
    fn injective_dimension_of_injectives_is_zero(seed in any::<u64>()) {
        let (_, a) = setup(seed, false);
        let op = Arc::new(a.opposite().unwrap());
        for v in 0..a.vertex_count() {
            let inj = qa_core::repmod::indecomposable_projective(&op, v).dual_over(&a).unwrap();
            prop_assert_eq!(inj_dim(&inj, 10).unwrap(), DimResult::Finite(0));
        }
    }
}

/// X ⊕ X after a change of basis: End/rad ≅ M₂(ℚ) with no rational
/// eigenvalues among the basis elements.
#[test]
fn conjugated_square_still_splits() {
    let mut rng = ChaCha8Rng::seed_from_u64(1765);
    let a = random_bounded_algebra(&mut rng, FieldSpec::Rationals, 4, 6, 6, 24);
    let m = random_module(&mut rng, &a);
    let c = random_conjugate(&mut rng, &m);
    assert_eq!(decompose(&c).unwrap().len(), decompose(&m).unwrap().len());
    let mut reg = IsoRegistry::new(&a);
    reg.classify(&c).unwrap();
}

#[test]
fn registry_file_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_bounded_algebra(&mut rng, FieldSpec::Rationals, 4, 6, 6, 24);
    let mut reg = IsoRegistry::new(&a);
    for _ in 0..5 {
        reg.classify(&random_module(&mut rng, &a)).unwrap();
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("classes.json");
    reg.save(&path).unwrap();
    let back = IsoRegistry::load(&a, &path).unwrap();
    assert_eq!(back.to_json(), reg.to_json());
    let other = random_bounded_algebra(&mut rng, FieldSpec::prime(5).unwrap(), 4, 6, 6, 24);
    assert!(IsoRegistry::load(&other, &path).is_err());
}
