//! Fixtures shared by the benchmarks in `benches/`.

use qa_core::morita::{build_cpq, cpq_family, CpqModule, GluedAlgebra};
use qa_core::{FieldSpec, Representation};

pub fn cpq(m: usize) -> GluedAlgebra {
    let f = FieldSpec::Rationals;
    build_cpq(m, &f.from_i64(2), &f.from_i64(3), f).unwrap()
}

/// M_{0,λ,μ,n} with λ = 1, μ = 2.
pub fn cpq_m0(g: &GluedAlgebra, n: usize) -> Representation {
    let f = g.c.field();
    cpq_family(g, &CpqModule::M0 { lambda: f.from_i64(1), mu: f.from_i64(2), n }).unwrap()
}
