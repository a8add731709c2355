//! Projective covers, syzygies, and projective/injective dimension.

use crate::decomp::{decompose, indecomposable_is_projective, DecompError, IsoRegistry};
use crate::linalg::{Matrix, Scalar};
use crate::repmod::{indecomposable_projective, Morphism, RepError, Representation};
use std::fmt;
use std::sync::Arc;

pub const DEFAULT_CUTOFF: usize = 40;

/// P(M) → M together with the top generators it was built from.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: Representation,
    pub epi: Morphism,
    /// Vertex of each indecomposable summand of `projective`, in order.
    pub summands: Vec<usize>,
}

/// Lifts a basis of top(M) and maps ⊕ P_v onto M.
pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let alg = m.algebra();
    let f = m.field();
    let n = alg.vertex_count();
    let rad = m.radical_subspaces();
    let mut gens: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for v in 0..n {
        let idx = rad[v].complement_indices();
        for i in idx {
            let mut x = vec![f.zero(); m.dim_at(v)];
            x[i] = f.one();
            gens.push((v, x));
        }
    }
    let mut pv_cache: Vec<Option<Representation>> = vec![None; n];
    let mut parts = Vec::new();
    for (v, _) in &gens {
        let p = pv_cache[*v].get_or_insert_with(|| indecomposable_projective(alg, *v)).clone();
        parts.push(p);
    }
    let projective = Representation::direct_sum_all(alg, parts.iter()).expect("same algebra");
    let mut epi: Morphism = (0..n).map(|w| Matrix::zeros(f, m.dim_at(w), projective.dim_at(w))).collect();
    let mut offset = vec![0usize; n];
    for (v, x) in &gens {
        for w in 0..n {
            for b in alg.basis_between(*v, w) {
                let col = m.path_map(&alg.basis()[b]).mul_vec(x);
                for (i, c) in col.into_iter().enumerate() {
                    epi[w].set(i, offset[w], c);
                }
                offset[w] += 1;
            }
        }
    }
    ProjectiveCover { projective, epi, summands: gens.iter().map(|g| g.0).collect() }
}

/// Ω(M) = ker(P(M) → M) with its inclusion into P(M).
pub fn syzygy_with_inclusion(m: &Representation) -> (Representation, Vec<Matrix>) {
    let cover = projective_cover(m);
    let kers: Vec<Matrix> = cover.epi.iter().map(Matrix::kernel_matrix).collect();
    let omega = cover.projective.sub_representation(&kers).expect("kernel is a submodule");
    (omega, kers)
}

pub fn syzygy(m: &Representation) -> Representation {
    syzygy_with_inclusion(m).0
}

/// [M, ΩM, Ω²M, …, ΩᵏM], unreduced.
pub fn syzygy_chain(m: &Representation, k: usize) -> Vec<Representation> {
    let mut out = vec![m.clone()];
    for _ in 0..k {
        let next = syzygy(out.last().unwrap());
        out.push(next);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimResult {
    Finite(usize),
    /// Ωʲ and Ωⁱ (i < j) have the same non-projective summand classes.
    Infinite { i: usize, j: usize },
    /// Neither certificate found within the cutoff.
    Unknown(usize),
}

impl fmt::Display for DimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimResult::Finite(n) => write!(f, "{n}"),
            DimResult::Infinite { i, j } => write!(f, "infinite (Ω^{i} ≅ Ω^{j} up to projectives)"),
            DimResult::Unknown(c) => write!(f, "unknown (cutoff {c})"),
        }
    }
}

/// Projective-free summands of a module, as indecomposables.
pub fn nonprojective_part(m: &Representation) -> Result<Vec<Representation>, DecompError> {
    Ok(decompose(m)?.into_iter().filter(|x| !indecomposable_is_projective(x)).collect())
}

pub fn proj_dim(m: &Representation, cutoff: usize) -> Result<DimResult, DecompError> {
    let mut reg = IsoRegistry::new(m.algebra());
    proj_dim_with(m, cutoff, &mut reg)
}

/// Projective dimension using (and extending) a registry for class
/// comparisons.
pub fn proj_dim_with(m: &Representation, cutoff: usize, reg: &mut IsoRegistry) -> Result<DimResult, DecompError> {
    let mut parts = nonprojective_part(m)?;
    let mut history: Vec<Vec<usize>> = Vec::new();
    for n in 0..=cutoff {
        if parts.is_empty() {
            return Ok(DimResult::Finite(n));
        }
        // pd only depends on the set of classes, and Ω is additive.
        let mut ids: Vec<usize> = Vec::new();
        let mut distinct: Vec<&Representation> = Vec::new();
        for x in &parts {
            let id = reg.register_indecomposable(x).0;
            if !ids.contains(&id) {
                ids.push(id);
                distinct.push(x);
            }
        }
        ids.sort_unstable();
        if let Some(i) = history.iter().position(|h| *h == ids) {
            return Ok(DimResult::Infinite { i, j: n });
        }
        history.push(ids);
        if n == cutoff {
            break;
        }
        let sum = Representation::direct_sum_all(m.algebra(), distinct).expect("same algebra");
        parts = nonprojective_part(&syzygy(&sum))?;
    }
    Ok(DimResult::Unknown(cutoff))
}

/// Injective dimension of M as the projective dimension of D M over the
/// opposite algebra.
pub fn inj_dim(m: &Representation, cutoff: usize) -> Result<DimResult, DecompError> {
    let op = Arc::new(m.algebra().opposite().map_err(|_| DecompError::Rep(RepError::AlgebraMismatch))?);
    proj_dim(&m.dual_over(&op)?, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BoundAlgebra, Presentation, Relation};
    use crate::linalg::FieldSpec;
    use crate::quiver::Quiver;
    use crate::repmod::{hom_space, simple};

    fn a3_rad2() -> Arc<BoundAlgebra> {
        let f = FieldSpec::Rationals;
        let q = Quiver::from_strs(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let ab = q.path_from_labels(&["a", "b"]).unwrap();
        BoundAlgebra::build(Presentation::new("A3", q, vec![Relation::monomial(f, ab)], f)).unwrap()
    }

    #[test]
    fn cover_is_surjective_and_kernel_exact() {
        let a = a3_rad2();
        for v in 0..3 {
            let s = simple(&a, v);
            let c = projective_cover(&s);
            assert!(c.projective.is_morphism(&s, &c.epi));
            for (w, e) in c.epi.iter().enumerate() {
                assert_eq!(e.rank(), s.dim_at(w));
            }
            let (om, inc) = syzygy_with_inclusion(&s);
            assert!(om.is_morphism(&c.projective, &inc));
        }
    }

    #[test]
    fn simple_chain() {
        let a = a3_rad2();
        let chain = syzygy_chain(&simple(&a, 0), 2);
        assert_eq!(chain[1].dims(), &[0, 1, 0]);
        assert_eq!(chain[2].dims(), &[0, 0, 1]);
        assert!(crate::decomp::is_isomorphic(&chain[1], &simple(&a, 1)).unwrap());
        assert_eq!(proj_dim(&simple(&a, 0), 10).unwrap(), DimResult::Finite(2));
        assert_eq!(proj_dim(&simple(&a, 2), 10).unwrap(), DimResult::Finite(0));
        assert_eq!(inj_dim(&simple(&a, 2), 10).unwrap(), DimResult::Finite(2));
        assert_eq!(inj_dim(&simple(&a, 0), 10).unwrap(), DimResult::Finite(0));
    }

    #[test]
    fn dual_numbers_periodic() {
        let f = FieldSpec::Rationals;
        let q = Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap();
        let xx = q.path_from_labels(&["x", "x"]).unwrap();
        let a = BoundAlgebra::build(Presentation::new("D", q, vec![Relation::monomial(f, xx)], f)).unwrap();
        let s = simple(&a, 0);
        assert_eq!(proj_dim(&s, 10).unwrap(), DimResult::Infinite { i: 0, j: 1 });
        assert_eq!(hom_space(&s, &syzygy(&s)).unwrap().len(), 1);
    }
}
