//! Random small algebras and modules for property checks.

use crate::algebra::{BoundAlgebra, Presentation, Relation};
use crate::linalg::{FieldSpec, Matrix};
use crate::quiver::{Path, Quiver};
use crate::homology::syzygy;
use crate::repmod::{indecomposable_projective, simple, Representation};
use rand::seq::SliceRandom;
use rand::Rng;
use std::sync::Arc;

/// A random quiver on at most `max_vertices` vertices and `max_arrows`
/// arrows, with a few random length-2 relations, truncated at J³.
pub fn random_algebra<R: Rng>(rng: &mut R, field: FieldSpec, max_vertices: usize, max_arrows: usize) -> Arc<BoundAlgebra> {
    let n = rng.gen_range(1..=max_vertices);
    let k = rng.gen_range(1..=max_arrows);
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..k)
        .map(|i| {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            (format!("x{i}"), vertices[s].clone(), vertices[t].clone())
        })
        .collect();
    let quiver = Quiver::build(vertices.iter().cloned(), arrows).unwrap();
    let two: Vec<Path> = quiver.paths_up_to(3).into_iter().filter(|p| p.len() == 2).collect();
    let mut relations = Vec::new();
    let count = if two.is_empty() { 0 } else { rng.gen_range(0..=two.len().min(3)) };
    for _ in 0..count {
        let p = two.choose(rng).unwrap().clone();
        let parallel: Vec<&Path> = two.iter().filter(|q| **q != p && q.source == p.source && q.target == p.target).collect();
        if !parallel.is_empty() && rng.gen_bool(0.5) {
            let q = (*parallel.choose(rng).unwrap()).clone();
            let c = field.from_i64(rng.gen_range(1..=3));
            relations.push(Relation::new(vec![(field.one(), p), (c.neg(), q)]));
        } else {
            relations.push(Relation::monomial(field, p));
        }
    }
    let pres = Presentation::new("R", quiver, relations, field).with_jpower(3);
    BoundAlgebra::build(pres).expect("J^3 truncation is admissible")
}

/// Like [`random_algebra`], but redraws until the first `steps` syzygies of
/// every simple module have total dimension at most `cap`. Wild local
/// algebras have exponentially growing syzygies and no finite φ horizon.
pub fn random_bounded_algebra<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    max_vertices: usize,
    max_arrows: usize,
    steps: usize,
    cap: usize,
) -> Arc<BoundAlgebra> {
    loop {
        let alg = random_algebra(rng, field, max_vertices, max_arrows);
        let bounded = (0..alg.vertex_count()).all(|v| {
            let mut x = simple(&alg, v);
            for _ in 0..steps {
                x = syzygy(&x);
                if x.total_dim() > cap {
                    return false;
                }
            }
            true
        });
        if bounded {
            return alg;
        }
    }
}

fn random_vector<R: Rng>(rng: &mut R, field: FieldSpec, d: usize) -> Vec<crate::linalg::Scalar> {
    (0..d).map(|_| field.from_i64(rng.gen_range(-2..=2))).collect()
}

/// A random bound module: a quotient or a submodule of a sum of one or two
/// indecomposable projectives by the submodule generated by random vectors.
pub fn random_module<R: Rng>(rng: &mut R, alg: &Arc<BoundAlgebra>) -> Representation {
    let n = alg.vertex_count();
    let f = alg.field();
    let parts: Vec<Representation> =
        (0..rng.gen_range(1..=2)).map(|_| indecomposable_projective(alg, rng.gen_range(0..n))).collect();
    let p = Representation::direct_sum_all(alg, parts.iter()).unwrap();
    let support = p.support();
    let gens: Vec<(usize, Vec<_>)> = (0..rng.gen_range(1..=2))
        .map(|_| {
            let w = *support.choose(rng).unwrap();
            (w, random_vector(rng, f, p.dim_at(w)))
        })
        .collect();
    let sub = p.generated_subspaces(&gens);
    let m = if rng.gen_bool(0.25) { p.sub_representation(&sub).unwrap() } else { p.quotient(&sub).unwrap().0 };
    if m.is_zero() {
        random_module(rng, alg)
    } else {
        m
    }
}

/// A random change of basis at every vertex (for isomorphic copies).
pub fn random_conjugate<R: Rng>(rng: &mut R, m: &Representation) -> Representation {
    let f = m.field();
    let g: Vec<Matrix> = m
        .dims()
        .iter()
        .map(|&d| loop {
            let data = (0..d * d).map(|_| f.from_i64(rng.gen_range(-2..=2))).collect();
            let x = Matrix::from_vec(f, d, d, data);
            if x.is_invertible() {
                break x;
            }
        })
        .collect();
    m.conjugate(&g)
}
