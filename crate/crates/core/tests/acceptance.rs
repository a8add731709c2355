//! End-to-end acceptance run. Prints one line per criterion.
//!
//! Criteria 4, 6 and the id(S_c1) half of 7 are known to disagree with the
//! stated values (see the README); the run exits nonzero unless exactly
//! those fail, so any other regression, or an unexpected fix, is caught.
//! Runs without the libtest harness so the lines reach `cargo test` output.

use qa_core::decomp::{decompose, IsoRegistry};
use qa_core::homology::{proj_dim, syzygy};
use qa_core::igusa::{default_suite, phi_eta_oracle, phi_lower_bound, phi_with_horizon, DEFAULT_HORIZON};
use qa_core::morita::{
    build_bm1_example, build_cpq, build_fix5, check_hypotheses, cpq_claim1_report, cpq_claim3_report,
    cpq_injective_report, cpq_opposite_report, verify_cpq_syzygy_table, verify_lemma_3_1, verify_prop_3_5_upper,
    GluedAlgebra,
};
use qa_core::repmod::{indecomposable_projective, simple};
use qa_core::sample::{random_bounded_algebra, random_module};
use qa_core::{BoundAlgebra, DimResult, FieldSpec, Presentation, Quiver, Relation, Report, Representation, Scalar, Status};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::Instant;

const Q: FieldSpec = FieldSpec::Rationals;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn from_reports(reports: &[&Report]) -> Outcome {
    let ok = reports.iter().all(|r| r.status == Status::Pass);
    let failing: Vec<String> = reports
        .iter()
        .flat_map(|r| r.details.iter().filter(|d| d.starts_with("fail")).cloned())
        .take(4)
        .collect();
    let detail = if ok {
        reports.iter().map(|r| format!("{}: pass", r.check)).collect::<Vec<_>>().join("; ")
    } else {
        failing.join("; ")
    };
    outcome(ok, detail)
}

fn dual_numbers() -> Arc<BoundAlgebra> {
    let q = Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap();
    let xx = q.path_from_labels(&["x", "x"]).unwrap();
    BoundAlgebra::build(Presentation::new("D", q, vec![Relation::monomial(Q, xx)], Q)).unwrap()
}

fn nakayama3() -> Arc<BoundAlgebra> {
    let q = Quiver::from_strs(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]).unwrap();
    let rels = [["a", "b"], ["b", "c"], ["c", "a"]]
        .iter()
        .map(|p| Relation::monomial(Q, q.path_from_labels(p).unwrap()))
        .collect();
    BoundAlgebra::build(Presentation::new("N3", q, rels, Q)).unwrap()
}

fn criterion_1() -> Outcome {
    let mut values = Vec::new();
    for alg in [dual_numbers(), nakayama3()] {
        let mut reg = IsoRegistry::new(&alg);
        values.push(phi_lower_bound(&default_suite(&alg), &mut reg).unwrap().value);
    }
    outcome(values.iter().all(|&v| v == 0), format!("k[x]/(x²): {}, Nakayama3: {}", values[0], values[1]))
}

fn phi(m: &Representation, reg: &mut IsoRegistry) -> usize {
    phi_with_horizon(m, reg, DEFAULT_HORIZON).unwrap().value
}

/// Items 1-5 and the η oracle on 200 pairs over 10 random algebras.
fn criteria_2_3() -> (Outcome, Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut pairs = 0;
    let mut bad: Vec<String> = Vec::new();
    let mut oracle_checked = 0;
    let mut oracle_bad: Vec<String> = Vec::new();
    for a in 0..10 {
        let alg = random_bounded_algebra(&mut rng, Q, 4, 6, 8, 24);
        let mut reg = IsoRegistry::new(&alg);
        for k in 0..20 {
            let m = random_module(&mut rng, &alg);
            let n = random_module(&mut rng, &alg);
            pairs += 1;
            let tag = format!("alg {a} pair {k}");
            let pm = phi(&m, &mut reg);
            let pn = phi(&n, &mut reg);
            for (x, px) in [(&m, pm), (&n, pn)] {
                if let DimResult::Finite(d) = proj_dim(x, DEFAULT_HORIZON).unwrap() {
                    if px != d {
                        bad.push(format!("{tag}: item 1, φ = {px}, pd = {d}"));
                    }
                }
            }
            for part in decompose(&m).unwrap() {
                if matches!(proj_dim(&part, DEFAULT_HORIZON).unwrap(), DimResult::Infinite { .. }) && phi(&part, &mut reg) != 0 {
                    bad.push(format!("{tag}: item 2"));
                }
            }
            let sum = m.direct_sum(&n).unwrap();
            let ps = phi(&sum, &mut reg);
            if pm > ps || pn > ps {
                bad.push(format!("{tag}: item 3, φ(M) = {pm}, φ(N) = {pn}, φ(M⊕N) = {ps}"));
            }
            for k in [2, 3] {
                if phi(&m.power(k), &mut reg) != pm {
                    bad.push(format!("{tag}: item 4, k = {k}"));
                }
            }
            let po = phi(&syzygy(&m), &mut reg);
            if pm > po + 1 {
                bad.push(format!("{tag}: item 5, φ(M) = {pm}, φ(ΩM) = {po}"));
            }
            for (x, px) in [(&m, pm), (&n, pn), (&sum, ps)] {
                oracle_checked += 1;
                let eta = phi_eta_oracle(x, &mut reg, DEFAULT_HORIZON).unwrap();
                if eta != px {
                    oracle_bad.push(format!("{tag}: φ = {px}, η = {eta}"));
                }
            }
        }
    }
    let c2 = outcome(
        bad.is_empty(),
        if bad.is_empty() { format!("{pairs} pairs over 10 algebras") } else { bad[..bad.len().min(4)].join("; ") },
    );
    let c3 = outcome(
        oracle_bad.is_empty(),
        if oracle_bad.is_empty() {
            format!("{oracle_checked} modules agree")
        } else {
            oracle_bad[..oracle_bad.len().min(4)].join("; ")
        },
    );
    (c2, c3)
}

fn cpq_params() -> (Scalar, Scalar, Vec<Scalar>) {
    (Q.from_i64(2), Q.from_i64(3), (0..3).map(|i| Q.from_i64(i)).collect())
}

fn cpq2() -> GluedAlgebra {
    let (p, q, _) = cpq_params();
    build_cpq(2, &p, &q, Q).unwrap()
}

/// Reports for criteria 4-7, with the C_{p,q} registry used for 5 and 6.
fn cpq_reports() -> (Vec<Report>, String) {
    let (p, q, lambdas) = cpq_params();
    let g = cpq2();
    let mut reg = IsoRegistry::new(&g.c);
    let table = verify_cpq_syzygy_table(&g, &p, &q, &lambdas, 2).unwrap();
    let claim1 = cpq_claim1_report(&g, &lambdas, 2, &mut reg).unwrap();
    let claim3 = cpq_claim3_report(&g, &lambdas, 2, &mut reg).unwrap();
    let id = cpq_injective_report(&[2, 3, 4], &p, &q, Q).unwrap();
    let op = cpq_opposite_report(8, &p, &q, Q, 7).unwrap();
    (vec![table, claim1, claim3, id, op], reg.to_json())
}

fn criterion_8() -> Outcome {
    let g = build_fix5(Q);
    let mut mods: Vec<Representation> = (0..g.c.vertex_count()).map(|v| simple(&g.c, v)).collect();
    for v in 0..g.c.vertex_count() {
        let r = indecomposable_projective(&g.c, v).radical().0;
        if !r.is_zero() {
            mods.push(r);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    mods.extend((0..20).map(|_| random_module(&mut rng, &g.c)));
    let r = verify_lemma_3_1(&g, &mods).unwrap();
    let ok = r.status == Status::Pass;
    outcome(ok, format!("{} modules: {}", mods.len(), r.status))
}

fn criterion_9() -> Outcome {
    let g = build_fix5(Q);
    let mut reg = IsoRegistry::new(&g.c);
    let r = verify_prop_3_5_upper(&g, &default_suite(&g.c), &mut reg, Some((1, 1))).unwrap();
    let dims = (g.block(0).unwrap().algebra.dim(), g.block(1).unwrap().algebra.dim(), g.c.dim());
    let ok = r.status == Status::Pass && dims.2 == dims.0 + dims.1 + 2;
    outcome(ok, format!("suite bound {}; dim C = {} = {} + {} + 2", r.status, dims.2, dims.0, dims.1))
}

fn criterion_10() -> Outcome {
    let g = build_bm1_example(Q);
    let h = check_hypotheses(&g, 20).unwrap();
    let mut reg = IsoRegistry::new(&g.c);
    let phis: Vec<String> = (0..g.c.vertex_count())
        .map(|v| {
            let r = phi_with_horizon(&simple(&g.c, v), &mut reg, 4).unwrap();
            format!("{}{}", r.value, if r.exact { "" } else { "*" })
        })
        .collect();
    outcome(
        h.h1 && h.h2 && !h.h3,
        format!("H1 {} H2 {} H3 {}; φ(simples) = [{}] (* = horizon 4)", h.h1, h.h2, h.h3, phis.join(", ")),
    )
}

fn run(n: usize, results: &mut Vec<(usize, bool)>, f: impl FnOnce() -> Outcome) {
    let t = Instant::now();
    let o = f();
    println!(
        "criterion {n:>2}: {} ({:.1}s) {}",
        if o.ok { "PASS" } else { "FAIL" },
        t.elapsed().as_secs_f64(),
        o.detail
    );
    results.push((n, o.ok));
}

fn main() {
    let mut results = Vec::new();
    run(1, &mut results, criterion_1);
    let t = Instant::now();
    let (c2, c3) = criteria_2_3();
    let secs = t.elapsed().as_secs_f64();
    for (n, o) in [(2, c2), (3, c3)] {
        println!("criterion {n:>2}: {} ({secs:.1}s, shared) {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, o.ok));
    }

    let t = Instant::now();
    let (first, reg_first) = cpq_reports();
    let secs = t.elapsed().as_secs_f64();
    let (table, claim1, claim3, id, op) = (&first[0], &first[1], &first[2], &first[3], &first[4]);
    for (n, o) in [
        (4, from_reports(&[table])),
        (5, from_reports(&[claim1])),
        (6, from_reports(&[claim3])),
        (7, from_reports(&[id, op])),
    ] {
        println!("criterion {n:>2}: {} ({secs:.1}s, shared) {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, o.ok));
    }
    for w in &claim3.witnesses {
        println!("              witness: {w}");
    }

    run(8, &mut results, criterion_8);
    run(9, &mut results, criterion_9);
    run(10, &mut results, criterion_10);
    run(11, &mut results, || {
        let (second, reg_second) = cpq_reports();
        let a: Vec<String> = first.iter().map(Report::to_json).collect();
        let b: Vec<String> = second.iter().map(Report::to_json).collect();
        outcome(a == b && reg_first == reg_second, format!("reports equal: {}, class ids equal: {}", a == b, reg_first == reg_second))
    });

    let failed: Vec<usize> = results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    println!("failed: {failed:?} (expected [4, 6, 7])");
    if failed != [4, 6, 7] {
        std::process::exit(1);
    }
}
