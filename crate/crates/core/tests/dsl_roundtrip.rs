use proptest::prelude::*;
use qa_core::dsl::{elaborate, parse, parse_algebra, parse_module, serialize_algebra, serialize_module};
use qa_core::morita::{build_cpq, build_fix5, cpq_family, CpqModule};
use qa_core::sample::{random_algebra, random_module};
use qa_core::{FieldSpec, Representation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(k: u8) -> FieldSpec {
    match k % 3 {
        0 => FieldSpec::Rationals,
        1 => FieldSpec::prime(5).unwrap(),
        _ => FieldSpec::prime(7).unwrap(),
    }
}

fn same_module(a: &Representation, b: &Representation) -> bool {
    a.dims() == b.dims() && a.maps() == b.maps()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algebra_text_round_trip(seed in any::<u64>(), k in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, field(k), 4, 6);
        let text = serialize_algebra(&a);
        let b = parse_algebra(&text).unwrap();
        prop_assert_eq!(a.canonical_text(), b.canonical_text());
        prop_assert_eq!(a.dim(), b.dim());
        prop_assert_eq!(serialize_algebra(&b), text);
    }

    #[test]
    fn module_text_round_trip(seed in any::<u64>(), k in any::<u8>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, field(k), 3, 4);
        let m = random_module(&mut rng, &a);
        let text = format!("{}\n{}", serialize_algebra(&a), serialize_module("M", a.name(), &m));
        let back = parse_module(&text, &a).unwrap();
        prop_assert!(same_module(&m, &back));
    }

    #[test]
    fn document_print_parse(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_algebra(&mut rng, FieldSpec::Rationals, 3, 5);
        let m = random_module(&mut rng, &a);
        let text = format!("{}\n{}", serialize_algebra(&a), serialize_module("M", a.name(), &m));
        let doc = parse(&text).unwrap();
        let again = parse(&doc.to_string()).unwrap();
        prop_assert_eq!(doc, again);
    }
}

#[test]
fn cpq_module_round_trip() {
    let f = FieldSpec::Rationals;
    let g = build_cpq(2, &f.from_i64(2), &f.from_i64(3), f).unwrap();
    let m = cpq_family(&g, &CpqModule::M0 { lambda: f.from_i64(3), mu: f.from_i64(1), n: 2 }).unwrap();
    let text = format!("{}\n{}", serialize_algebra(&g.c), serialize_module("M", g.c.name(), &m));
    let a = parse_algebra(&text).unwrap();
    assert_eq!(a.canonical_text(), g.c.canonical_text());
    assert!(same_module(&m, &parse_module(&text, &g.c).unwrap()));
}

#[test]
fn fix5_sample_file_matches_builder() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../samples/fix5.qa")).unwrap();
    let env = elaborate(&parse(&text).unwrap()).unwrap();
    let g = env.glued("C").unwrap();
    let built = build_fix5(FieldSpec::Rationals);
    assert_eq!(g.c.dim(), built.c.dim());
    assert_eq!(g.c.basis().len(), 8);
    assert!(env.module("M").is_some());
}

#[test]
fn errors_carry_positions() {
    let e = parse("algebra A over Q {\n  vertices 1 2;\n  arrows a: 1 -> ;\n}").unwrap_err();
    assert_eq!(e.span.line, 3);
    let e = parse_algebra("algebra A over Q { vertices 1; arrows a: 1 -> 2 }").unwrap_err();
    assert!(e.to_string().contains('2'), "{e}");
}
