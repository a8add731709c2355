//! Module expressions on the command line: `S1+2P3+M`, where `S`, `P`,
//! `I` and `R` prefix a vertex label (simple, projective, injective,
//! radical of projective) and other names refer to declared modules.

use qa_core::dsl::Env;
use qa_core::repmod::{indecomposable_projective, simple};
use qa_core::{BoundAlgebra, Representation};
use std::sync::Arc;

pub fn injective(alg: &Arc<BoundAlgebra>, v: usize) -> Result<Representation, String> {
    let op = Arc::new(alg.opposite().map_err(|e| e.to_string())?);
    indecomposable_projective(&op, v).dual_over(alg).map_err(|e| e.to_string())
}

fn atom(name: &str, alg: &Arc<BoundAlgebra>, env: &Env) -> Result<Representation, String> {
    if let Some(m) = env.module(name) {
        if !m.algebra().same_as(alg) {
            return Err(format!("module `{name}` is not over the selected algebra"));
        }
        return Ok(m.clone());
    }
    let q = alg.quiver();
    let mut chars = name.chars();
    let kind = chars.next().ok_or("empty module name")?;
    let v = q
        .vertex_index(chars.as_str())
        .map_err(|_| format!("`{name}` is neither a declared module nor S/P/I/R followed by a vertex"))?;
    match kind {
        'S' => Ok(simple(alg, v)),
        'P' => Ok(indecomposable_projective(alg, v)),
        'I' => injective(alg, v),
        'R' => Ok(indecomposable_projective(alg, v).radical().0),
        _ => Err(format!("unknown module `{name}`")),
    }
}

pub fn parse_module_expr(expr: &str, alg: &Arc<BoundAlgebra>, env: &Env) -> Result<Representation, String> {
    let mut parts = Vec::new();
    for term in expr.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(format!("empty summand in `{expr}`"));
        }
        let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
        let k = if digits.is_empty() { 1 } else { digits.parse::<usize>().map_err(|e| e.to_string())? };
        let m = atom(term[digits.len()..].trim(), alg, env)?;
        parts.extend(std::iter::repeat_n(m, k));
    }
    Representation::direct_sum_all(alg, parts.iter()).map_err(|e| e.to_string())
}
