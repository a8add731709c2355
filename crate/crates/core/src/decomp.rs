//! Krull–Schmidt decomposition, isomorphism testing, and the registry of
//! indecomposable isomorphism classes.
//!
//! Splitting uses Fitting's lemma on candidate endomorphisms. When no
//! candidate splits, indecomposability is certified by computing the
//! Jacobson radical of End(M) and checking that End(M)/rad is a division
//! ring.

use crate::algebra::BoundAlgebra;
use crate::linalg::poly::{charpoly, Poly};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::repmod::{hom_space, indecomposable_projective, morphism_is_iso, Morphism, RepError, Representation};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::path::Path as FsPath;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecompError {
    #[error("could not split the module nor certify that it is indecomposable")]
    CertificationFailed,
    #[error("module is not indecomposable ({0} summands)")]
    NotIndecomposable(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("registry fingerprint {found} does not match algebra {expected}")]
    FingerprintMismatch { expected: String, found: String },
    #[error("malformed registry file: {0}")]
    Malformed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// Endomorphism helpers

fn identity_endo(m: &Representation) -> Morphism {
    m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect()
}

fn endo_add(a: &Morphism, b: &Morphism) -> Morphism {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn endo_mul(a: &Morphism, b: &Morphism) -> Morphism {
    a.iter().zip(b).map(|(x, y)| x.mul(y)).collect()
}

fn endo_sub_scalar(a: &Morphism, r: &Scalar) -> Morphism {
    a.iter()
        .map(|x| x.sub(&Matrix::identity(x.field(), x.rows()).scale(r)))
        .collect()
}

fn flatten(a: &Morphism) -> Vec<Scalar> {
    a.iter().flat_map(|m| m.data().iter().cloned()).collect()
}

fn endo_trace(a: &Morphism) -> Scalar {
    let mut t = a[0].field().zero();
    for m in a {
        t = t.add(&m.trace());
    }
    t
}

/// Eigenvalues in the base field, over all vertices.
fn eigen_roots(f: &Morphism) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::new();
    for m in f.iter().filter(|m| m.rows() > 0) {
        for r in charpoly(m).roots() {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Fitting decomposition M = ker f^∞ ⊕ im f^∞, when both parts are nonzero.
fn fitting_split(m: &Representation, f: &Morphism) -> Option<(Representation, Representation)> {
    let mut kers = Vec::new();
    let mut ims = Vec::new();
    for (v, fv) in f.iter().enumerate() {
        let g = fv.pow(m.dim_at(v) as u64);
        kers.push(g.kernel_matrix());
        ims.push(g.image_basis());
    }
    if kers.iter().all(|k| k.cols() == 0) || ims.iter().all(|i| i.cols() == 0) {
        return None;
    }
    let k = m.sub_representation(&kers).ok()?;
    let i = m.sub_representation(&ims).ok()?;
    Some((k, i))
}

fn try_split(m: &Representation, f: &Morphism) -> Option<(Representation, Representation)> {
    if let Some(s) = fitting_split(m, f) {
        return Some(s);
    }
    for r in eigen_roots(f) {
        if r.is_zero() {
            continue;
        }
        if let Some(s) = fitting_split(m, &endo_sub_scalar(f, &r)) {
            return Some(s);
        }
    }
    None
}

/// Splits by connected components of the support (vertices joined by
/// nonzero arrow maps).
fn support_components(m: &Representation) -> Vec<Vec<usize>> {
    let q = m.algebra().quiver();
    let n = q.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if m.dim_at(start) == 0 || comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        comp[start] = id;
        let mut members = vec![];
        while let Some(v) = stack.pop() {
            members.push(v);
            for (ai, a) in q.arrows().iter().enumerate() {
                if m.map(ai).is_zero() {
                    continue;
                }
                let other = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if comp[other] == usize::MAX {
                    comp[other] = id;
                    stack.push(other);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn restrict_to_vertices(m: &Representation, vs: &[usize]) -> Representation {
    let f = m.field();
    let bases: Vec<Matrix> = (0..m.dims().len())
        .map(|v| {
            if vs.contains(&v) {
                Matrix::identity(f, m.dim_at(v))
            } else {
                Matrix::zeros(f, m.dim_at(v), 0)
            }
        })
        .collect();
    m.sub_representation(&bases).expect("support component is a summand")
}

// ---------------------------------------------------------------------------
// Endomorphism algebra analysis

struct EndAlgebra {
    basis: Vec<Morphism>,
    flat: Matrix,
    field: FieldSpec,
}

impl EndAlgebra {
    fn new(m: &Representation, basis: Vec<Morphism>) -> EndAlgebra {
        let field = m.field();
        let cols: Vec<Vec<Scalar>> = basis.iter().map(flatten).collect();
        let rows = cols.first().map_or(0, Vec::len);
        EndAlgebra { flat: Matrix::from_columns(field, rows, &cols), basis, field }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn element(&self, c: &[Scalar]) -> Morphism {
        crate::repmod::morphism_combination(&self.basis, c)
    }

    /// Coordinates of many endomorphisms at once (as columns).
    fn coords(&self, items: &[Morphism]) -> Matrix {
        let rhs = Matrix::from_columns(self.field, self.flat.rows(), &items.iter().map(flatten).collect::<Vec<_>>());
        self.flat.solve_matrix(&rhs).unwrap().expect("products stay in End(M)")
    }

    /// Jacobson radical, as coefficient vectors.
    fn radical(&self) -> Vec<Vec<Scalar>> {
        let k = self.dim();
        match self.field {
            FieldSpec::Rationals => {
                let mut g = Matrix::zeros(self.field, k, k);
                for i in 0..k {
                    for j in 0..k {
                        g.set(i, j, endo_trace(&endo_mul(&self.basis[i], &self.basis[j])));
                    }
                }
                g.kernel_basis()
            }
            FieldSpec::PrimeField(p) => self.radical_mod_p(p),
        }
    }

    /// Radical over GF(p) via the p-power trace conditions: I_{-1} = E,
    /// I_i = {x ∈ I_{i-1} : g_i(xy) = 0 ∀y}, g_i(x) = Tr(x̂^{p^i})/p^i mod p,
    /// stopping at i = ⌊log_p n⌋.
    fn radical_mod_p(&self, p: u64) -> Vec<Vec<Scalar>> {
        let k = self.dim();
        let n: usize = self.basis[0].iter().map(|m| m.rows()).sum();
        let mut l = 0u32;
        while (p as u128).pow(l + 1) <= n as u128 {
            l += 1;
        }
        let mut current: Vec<Vec<Scalar>> = (0..k)
            .map(|i| (0..k).map(|j| self.field.from_i64((i == j) as i64)).collect())
            .collect();
        for i in 0..=l {
            if current.is_empty() {
                break;
            }
            let modulus = (p as u128).pow(i + 1);
            let pi = (p as u128).pow(i);
            let exp = p.pow(i);
            let mut g = Matrix::zeros(self.field, current.len(), k);
            for (r, c) in current.iter().enumerate() {
                let x = self.element(c);
                for (j, y) in self.basis.iter().enumerate() {
                    let prod = endo_mul(&x, y);
                    let mut tr: u128 = 0;
                    for blk in &prod {
                        tr = (tr + int_trace_power(blk, exp, modulus)) % modulus;
                    }
                    debug_assert_eq!(tr % pi, 0);
                    g.set(r, j, self.field.from_i64(((tr / pi) % p as u128) as i64));
                }
            }
            // x = Σ a_r current_r lies in I_i iff Σ a_r g[r][j] = 0 for all j.
            let sols = g.transpose().kernel_basis();
            current = sols
                .iter()
                .map(|a| {
                    let mut v = vec![self.field.zero(); k];
                    for (ar, c) in a.iter().zip(&current) {
                        for (t, x) in v.iter_mut().zip(c) {
                            *t = t.add(&ar.mul(x));
                        }
                    }
                    v
                })
                .collect();
        }
        current
    }
}

/// Tr(M̂^e) mod `modulus` for an integer lift M̂ of a GF(p) matrix.
fn int_trace_power(m: &Matrix, e: u64, modulus: u128) -> u128 {
    let n = m.rows();
    if n == 0 {
        return 0;
    }
    let lift: Vec<u128> = m
        .data()
        .iter()
        .map(|x| match x {
            Scalar::F { v, .. } => *v as u128 % modulus,
            _ => unreachable!(),
        })
        .collect();
    let mul = |a: &[u128], b: &[u128]| -> Vec<u128> {
        let mut c = vec![0u128; n * n];
        for i in 0..n {
            for kk in 0..n {
                let x = a[i * n + kk];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] = (c[i * n + j] + x * b[kk * n + j]) % modulus;
                }
            }
        }
        c
    };
    let mut r: Vec<u128> = (0..n * n).map(|i| ((i / n == i % n) as u128) % modulus).collect();
    let mut b = lift;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(&r, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul(&b, &b);
        }
    }
    (0..n).map(|i| r[i * n + i]).sum::<u128>() % modulus
}

/// The semisimple quotient S = End(M)/rad as structure constants on a
/// basis of lifts.
struct Semisimple {
    lifts: Vec<Morphism>,
    /// mult[a][b] = coordinates of s_a·s_b in S
    mult: Vec<Vec<Vec<Scalar>>>,
    /// coordinates of the identity
    one: Vec<Scalar>,
    field: FieldSpec,
}

impl Semisimple {
    fn build(e: &EndAlgebra, rad: &[Vec<Scalar>], id: &Morphism) -> Semisimple {
        let k = e.dim();
        let f = e.field;
        let r = Matrix::from_columns(f, k, rad);
        let comp = r.complement_indices();
        let full = r.hstack(&Matrix::identity(f, k).select_columns(&comp));
        let proj = full.inverse().unwrap().submatrix(rad.len()..k, 0..k);
        let lifts: Vec<Morphism> = comp.iter().map(|&c| e.basis[c].clone()).collect();
        let s = lifts.len();
        let mut products = Vec::with_capacity(s * s + 1);
        for a in &lifts {
            for b in &lifts {
                products.push(endo_mul(a, b));
            }
        }
        products.push(id.clone());
        let coords = proj.mul(&e.coords(&products));
        let col = |j: usize| coords.column(j);
        let mult = (0..s).map(|a| (0..s).map(|b| col(a * s + b)).collect()).collect();
        Semisimple { lifts, mult, one: col(s * s), field: f }
    }

    fn dim(&self) -> usize {
        self.lifts.len()
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let s = self.dim();
        let mut out = vec![self.field.zero(); s];
        for a in 0..s {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..s {
                if y[b].is_zero() {
                    continue;
                }
                let c = x[a].mul(&y[b]);
                for (o, m) in out.iter_mut().zip(&self.mult[a][b]) {
                    *o = o.add(&c.mul(m));
                }
            }
        }
        out
    }

    fn is_commutative(&self) -> bool {
        let s = self.dim();
        (0..s).all(|a| (0..s).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    fn lift(&self, x: &[Scalar]) -> Morphism {
        crate::repmod::morphism_combination(&self.lifts, x)
    }

    /// Minimal polynomial of x, from the first linear dependence among its
    /// powers.
    fn minpoly(&self, x: &[Scalar]) -> Poly {
        let s = self.dim();
        let mut powers = vec![self.one.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            let m = Matrix::from_columns(self.field, s, &powers);
            if let Some(c) = m.solve(&next).unwrap() {
                let mut coeffs: Vec<Scalar> = c.iter().map(Scalar::neg).collect();
                coeffs.push(self.field.one());
                return Poly::new(self.field, coeffs);
            }
            powers.push(next);
        }
    }

    fn is_nilpotent(&self, x: &[Scalar]) -> bool {
        let mut p = x.to_vec();
        for _ in 0..=self.dim() {
            if p.iter().all(Scalar::is_zero) {
                return true;
            }
            p = self.mul(&p, x);
        }
        p.iter().all(Scalar::is_zero)
    }

    /// Nonzero elements of S killing some vector of top(M) or soc(M) at a
    /// vertex. Such elements are not invertible; when the summands have a
    /// one-dimensional top or socle somewhere they always exist.
    fn annihilators(&self, m: &Representation) -> Vec<Vec<Scalar>> {
        let s = self.dim();
        let q = m.algebra().quiver();
        let rad = m.radical_subspaces();
        let mut out = Vec::new();
        for v in 0..m.dims().len() {
            let d = m.dim_at(v);
            if d == 0 {
                continue;
            }
            let mut out_maps = Matrix::zeros(self.field, 0, d);
            for (i, a) in q.arrows().iter().enumerate() {
                if a.source == v {
                    out_maps = out_maps.vstack(m.map(i));
                }
            }
            let unit = |i: usize| -> Vec<Scalar> { (0..d).map(|j| self.field.from_i64((i == j) as i64)).collect() };
            let socle = if out_maps.rows() == 0 { (0..d).map(unit).collect() } else { out_maps.kernel_basis() };
            let top: Vec<Vec<Scalar>> = rad[v].complement_indices().into_iter().map(unit).collect();
            for (x, modulo) in top.iter().map(|x| (x, Some(&rad[v]))).chain(socle.iter().map(|x| (x, None))) {
                let cols: Vec<Vec<Scalar>> = self.lifts.iter().map(|f| f[v].mul_vec(x)).collect();
                let mut a = Matrix::from_columns(self.field, d, &cols);
                if let Some(r) = modulo {
                    a = a.hstack(r);
                }
                for k in a.kernel_basis() {
                    let y = k[..s].to_vec();
                    if !y.iter().all(Scalar::is_zero) {
                        out.push(y);
                    }
                }
                if out.len() >= s {
                    return out;
                }
            }
        }
        out
    }

    fn candidates(&self) -> Vec<Vec<Scalar>> {
        let s = self.dim();
        let unit = |i: usize| -> Vec<Scalar> { (0..s).map(|j| self.field.from_i64((i == j) as i64)).collect() };
        let mut out: Vec<Vec<Scalar>> = (0..s).map(unit).collect();
        for i in 0..s {
            for j in i + 1..s {
                out.push(unit(i).iter().zip(unit(j)).map(|(a, b)| a.add(&b)).collect());
            }
        }
        out
    }
}

enum Verdict {
    Indecomposable,
    Split(Representation, Representation),
    Unknown,
}

/// Decides the connected module `m` with endomorphism basis `basis`.
fn analyse(m: &Representation, basis: Vec<Morphism>) -> Verdict {
    let id = identity_endo(m);
    if basis.len() <= 1 {
        return Verdict::Indecomposable;
    }
    for f in &basis {
        if let Some((a, b)) = try_split(m, f) {
            return Verdict::Split(a, b);
        }
    }
    let e = EndAlgebra::new(m, basis);
    let rad = e.radical();
    if e.dim() - rad.len() == 1 {
        return Verdict::Indecomposable;
    }
    for i in 0..e.dim() {
        for j in i + 1..e.dim() {
            let f = endo_add(&e.basis[i], &e.basis[j]);
            if let Some((a, b)) = try_split(m, &f) {
                return Verdict::Split(a, b);
            }
        }
    }
    let s = Semisimple::build(&e, &rad, &id);
    let split_with = |x: &[Scalar]| -> Option<(Representation, Representation)> { fitting_split(m, &s.lift(x)) };
    // A non-invertible, non-nilpotent element of S lifts to a splitting
    // endomorphism.
    let zero_divisor_from = |z: &[Scalar], r: &Scalar| -> Option<Vec<Scalar>> {
        let w: Vec<Scalar> = z.iter().zip(&s.one).map(|(a, o)| a.sub(&o.mul(r))).collect();
        if w.iter().all(Scalar::is_zero) {
            return None;
        }
        if !s.is_nilpotent(&w) {
            return Some(w);
        }
        s.candidates().into_iter().take(s.dim()).map(|y| s.mul(&w, &y)).find(|wy| !s.is_nilpotent(wy))
    };
    let from_annihilators = || -> Verdict {
        for y in s.annihilators(m) {
            if let Some(w) = zero_divisor_from(&y, &s.field.zero()) {
                if let Some((a, b)) = split_with(&w) {
                    return Verdict::Split(a, b);
                }
            }
        }
        Verdict::Unknown
    };
    if s.is_commutative() {
        match s.field {
            FieldSpec::Rationals => {
                for z in s.candidates() {
                    let mp = s.minpoly(&z);
                    for r in mp.roots() {
                        if mp.degree() == Some(1) {
                            break;
                        }
                        if let Some(w) = zero_divisor_from(&z, &r) {
                            if let Some((a, b)) = split_with(&w) {
                                return Verdict::Split(a, b);
                            }
                        }
                    }
                    if mp.degree() == Some(s.dim()) && mp.certified_irreducible_over_q() {
                        return Verdict::Indecomposable;
                    }
                }
                from_annihilators()
            }
            FieldSpec::PrimeField(p) => {
                // Frobenius-fixed subalgebra: one-dimensional iff S is a field.
                let sd = s.dim();
                let mut frob = Matrix::zeros(s.field, sd, sd);
                for a in 0..sd {
                    let mut x: Vec<Scalar> = (0..sd).map(|j| s.field.from_i64((a == j) as i64)).collect();
                    let base = x.clone();
                    let mut acc = s.one.clone();
                    let mut e = p;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = s.mul(&acc, &x);
                        }
                        e >>= 1;
                        if e > 0 {
                            x = s.mul(&x, &x);
                        }
                    }
                    for j in 0..sd {
                        frob.set(j, a, acc[j].sub(&base[j]));
                    }
                }
                let fixed = frob.kernel_basis();
                if fixed.len() == 1 {
                    return Verdict::Indecomposable;
                }
                for z in fixed {
                    for r in s.minpoly(&z).roots() {
                        if let Some(w) = zero_divisor_from(&z, &r) {
                            if let Some((a, b)) = split_with(&w) {
                                return Verdict::Split(a, b);
                            }
                        }
                    }
                }
                from_annihilators()
            }
        }
    } else {
        if let v @ Verdict::Split(..) = from_annihilators() {
            return v;
        }
        for z in s.candidates() {
            for r in s.minpoly(&z).roots() {
                if let Some(w) = zero_divisor_from(&z, &r) {
                    if let Some((a, b)) = split_with(&w) {
                        return Verdict::Split(a, b);
                    }
                }
            }
        }
        Verdict::Unknown
    }
}

/// Decomposes a module into indecomposable summands.
pub fn decompose(m: &Representation) -> Result<Vec<Representation>, DecompError> {
    if m.is_zero() {
        return Ok(vec![]);
    }
    let comps = support_components(m);
    if comps.len() > 1 {
        let mut out = Vec::new();
        for c in comps {
            out.extend(decompose(&restrict_to_vertices(m, &c))?);
        }
        return Ok(out);
    }
    let basis = hom_space(m, m)?;
    match analyse(m, basis) {
        Verdict::Indecomposable => Ok(vec![m.clone()]),
        Verdict::Split(a, b) => {
            let mut out = decompose(&a)?;
            out.extend(decompose(&b)?);
            Ok(out)
        }
        Verdict::Unknown => Err(DecompError::CertificationFailed),
    }
}

/// Whether the module is indecomposable (certified).
pub fn is_indecomposable(m: &Representation) -> Result<bool, DecompError> {
    Ok(decompose(m)?.len() == 1)
}

/// Exact isomorphism test for two indecomposable modules: M ≅ N iff some
/// basis element of Hom(M, N) is invertible (End(M) is local).
pub fn is_isomorphic_indecomposable(m: &Representation, n: &Representation) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    match hom_space(m, n) {
        Ok(h) => h.iter().any(morphism_is_iso),
        Err(_) => false,
    }
}

/// Exact isomorphism test for arbitrary modules.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<bool, DecompError> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(RepError::AlgebraMismatch.into());
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    let h = hom_space(m, n)?;
    if h.is_empty() {
        return Ok(false);
    }
    if h.iter().any(morphism_is_iso) {
        return Ok(true);
    }
    // Bounded sweep over 0/1 combinations of basis morphisms.
    let k = h.len().min(12);
    let limit = if k <= 8 { 1u32 << k } else { 1 + k as u32 + (k * (k - 1) / 2) as u32 };
    let mut tried = 0;
    for mask in 1u32..(1u32 << k) {
        if mask.count_ones() < 2 {
            continue;
        }
        if k > 8 && mask.count_ones() > 2 {
            continue;
        }
        tried += 1;
        if tried > limit {
            break;
        }
        let mut acc = h[0].iter().map(|x| Matrix::zeros(x.field(), x.rows(), x.cols())).collect::<Morphism>();
        for (i, b) in h.iter().enumerate().take(k) {
            if mask & (1 << i) != 0 {
                acc = endo_add(&acc, b);
            }
        }
        if morphism_is_iso(&acc) {
            return Ok(true);
        }
    }
    let (dm, dn) = (decompose(m)?, decompose(n)?);
    Ok(same_multiset(&dm, &dn))
}

/// Multiset equality of indecomposables up to isomorphism.
pub fn same_multiset(a: &[Representation], b: &[Representation]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    'outer: for x in a {
        for (j, y) in b.iter().enumerate() {
            if !used[j] && is_isomorphic_indecomposable(x, y) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Whether an indecomposable module is projective: its top is a simple S_v
/// and it has the dimension vector of P_v.
pub fn indecomposable_is_projective(m: &Representation) -> bool {
    let top = m.top();
    let support = top.support();
    if support.len() != 1 || top.dim_at(support[0]) != 1 {
        return false;
    }
    indecomposable_projective(m.algebra(), support[0]).dims() == m.dims()
}

// ---------------------------------------------------------------------------
// Registry

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassId(pub usize);

#[derive(Clone, Debug)]
pub struct ClassEntry {
    pub id: ClassId,
    pub projective: bool,
    pub rep: Representation,
}

/// Cheap isomorphism invariants used to prune comparisons.
fn invariant_key(m: &Representation) -> Vec<usize> {
    let q = m.algebra().quiver();
    let mut key = m.dims().to_vec();
    key.extend(m.maps().iter().map(Matrix::rank));
    for v in 0..q.vertex_count() {
        let mut out = Matrix::zeros(m.field(), 0, m.dim_at(v));
        for a in q.out_arrows(v) {
            out = out.vstack(m.map(a));
        }
        key.push(out.rank());
    }
    key
}

#[derive(Clone, Debug)]
pub struct IsoRegistry {
    algebra: Arc<BoundAlgebra>,
    classes: Vec<ClassEntry>,
    by_key: HashMap<Vec<usize>, Vec<usize>>,
    pub(crate) omega_cache: HashMap<ClassId, crate::igusa::K0Element>,
}

#[derive(Serialize, Deserialize)]
struct RegistryFile {
    version: u32,
    field: String,
    algebra_fingerprint: String,
    classes: Vec<ClassRecord>,
}

#[derive(Serialize, Deserialize)]
struct ClassRecord {
    id: usize,
    projective: bool,
    dims: Vec<usize>,
    maps: Vec<Vec<serde_json::Value>>,
}

pub const REGISTRY_VERSION: u32 = 1;

pub fn scalar_to_json(x: &Scalar) -> serde_json::Value {
    match x {
        Scalar::Q(r) => serde_json::Value::String(format!("{}/{}", r.numer(), r.denom())),
        Scalar::F { v, .. } => serde_json::Value::from(*v),
    }
}

pub fn scalar_from_json(field: FieldSpec, v: &serde_json::Value) -> Option<Scalar> {
    match (field, v) {
        (FieldSpec::Rationals, serde_json::Value::String(s)) => field.parse_scalar(s),
        (FieldSpec::PrimeField(p), serde_json::Value::Number(n)) => {
            let x = n.as_u64()?;
            (x < p).then(|| field.from_i64(x as i64))
        }
        _ => None,
    }
}

impl IsoRegistry {
    pub fn new(algebra: &Arc<BoundAlgebra>) -> IsoRegistry {
        IsoRegistry { algebra: algebra.clone(), classes: vec![], by_key: HashMap::new(), omega_cache: HashMap::new() }
    }

    pub fn algebra(&self) -> &Arc<BoundAlgebra> {
        &self.algebra
    }

    pub fn fingerprint(&self) -> &str {
        self.algebra.fingerprint()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ClassEntry] {
        &self.classes
    }

    pub fn entry(&self, id: ClassId) -> Option<&ClassEntry> {
        self.classes.get(id.0)
    }

    pub fn representative(&self, id: ClassId) -> Option<&Representation> {
        self.entry(id).map(|e| &e.rep)
    }

    pub fn is_projective(&self, id: ClassId) -> bool {
        self.classes[id.0].projective
    }

    /// Existing class of an indecomposable, if registered.
    pub fn lookup(&self, m: &Representation) -> Option<ClassId> {
        let key = invariant_key(m);
        self.by_key
            .get(&key)?
            .iter()
            .find(|&&i| is_isomorphic_indecomposable(&self.classes[i].rep, m))
            .map(|&i| self.classes[i].id)
    }

    /// Registers a module already known to be indecomposable.
    pub fn register_indecomposable(&mut self, m: &Representation) -> ClassId {
        if let Some(id) = self.lookup(m) {
            return id;
        }
        let id = ClassId(self.classes.len());
        let projective = indecomposable_is_projective(m);
        self.by_key.entry(invariant_key(m)).or_default().push(self.classes.len());
        self.classes.push(ClassEntry { id, projective, rep: m.clone() });
        id
    }

    /// Registers `m`, which must be indecomposable.
    pub fn register(&mut self, m: &Representation) -> Result<ClassId, DecompError> {
        if !m.algebra().same_as(&self.algebra) {
            return Err(RepError::AlgebraMismatch.into());
        }
        let parts = decompose(m)?;
        if parts.len() != 1 {
            return Err(DecompError::NotIndecomposable(parts.len()));
        }
        Ok(self.register_indecomposable(m))
    }

    /// Decomposes and registers every summand, returning ids in summand order.
    pub fn classify(&mut self, m: &Representation) -> Result<Vec<ClassId>, DecompError> {
        Ok(decompose(m)?.iter().map(|x| self.register_indecomposable(x)).collect())
    }

    pub fn to_json(&self) -> String {
        let file = RegistryFile {
            version: REGISTRY_VERSION,
            field: self.algebra.field().to_string(),
            algebra_fingerprint: self.algebra.fingerprint().to_string(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassRecord {
                    id: c.id.0,
                    projective: c.projective,
                    dims: c.rep.dims().to_vec(),
                    maps: c.rep.maps().iter().map(|m| m.data().iter().map(scalar_to_json).collect()).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).unwrap()
    }

    pub fn from_json(algebra: &Arc<BoundAlgebra>, text: &str) -> Result<IsoRegistry, DecompError> {
        let file: RegistryFile = serde_json::from_str(text).map_err(|e| DecompError::Malformed(e.to_string()))?;
        if file.version != REGISTRY_VERSION {
            return Err(DecompError::Malformed(format!("unsupported version {}", file.version)));
        }
        if file.algebra_fingerprint != algebra.fingerprint() {
            return Err(DecompError::FingerprintMismatch {
                expected: algebra.fingerprint().to_string(),
                found: file.algebra_fingerprint,
            });
        }
        let field = algebra.field();
        let q = algebra.quiver();
        let mut reg = IsoRegistry::new(algebra);
        for (pos, rec) in file.classes.into_iter().enumerate() {
            if rec.id != pos {
                return Err(DecompError::Malformed(format!("class ids out of order at {pos}")));
            }
            if rec.dims.len() != q.vertex_count() || rec.maps.len() != q.arrow_count() {
                return Err(DecompError::Malformed(format!("class {pos} has wrong shape")));
            }
            let mut maps = Vec::new();
            for (a, entries) in q.arrows().iter().zip(&rec.maps) {
                let (r, c) = (rec.dims[a.target], rec.dims[a.source]);
                if entries.len() != r * c {
                    return Err(DecompError::Malformed(format!("class {pos}: matrix for {} has wrong size", a.label)));
                }
                let data = entries
                    .iter()
                    .map(|v| scalar_from_json(field, v))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| DecompError::Malformed(format!("class {pos}: bad scalar")))?;
                maps.push(Matrix::from_vec(field, r, c, data));
            }
            let rep = Representation::new(algebra, rec.dims, maps)?;
            reg.by_key.entry(invariant_key(&rep)).or_default().push(pos);
            reg.classes.push(ClassEntry { id: ClassId(pos), projective: rec.projective, rep });
        }
        Ok(reg)
    }

    pub fn save(&self, path: &FsPath) -> Result<(), DecompError> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(algebra: &Arc<BoundAlgebra>, path: &FsPath) -> Result<IsoRegistry, DecompError> {
        IsoRegistry::from_json(algebra, &std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Presentation, Relation};
    use crate::quiver::Quiver;
    use crate::repmod::simple;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn a2(f: FieldSpec) -> Arc<BoundAlgebra> {
        let quiver = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
        BoundAlgebra::build(Presentation::new("A2", quiver, vec![], f)).unwrap()
    }

    fn kronecker(f: FieldSpec) -> Arc<BoundAlgebra> {
        let quiver = Quiver::from_strs(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        BoundAlgebra::build(Presentation::new("K", quiver, vec![], f)).unwrap()
    }

    fn loop_alg(f: FieldSpec, n: usize) -> Arc<BoundAlgebra> {
        let quiver = Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap();
        let p = quiver.path_from_indices(&vec![0; n]).unwrap();
        BoundAlgebra::build(Presentation::new("L", quiver, vec![Relation::monomial(f, p)], f)).unwrap()
    }

    #[test]
    fn semisimple_multiset() {
        let a = a2(q());
        let m = simple(&a, 0).direct_sum(&simple(&a, 1)).unwrap().direct_sum(&simple(&a, 1)).unwrap();
        let parts = decompose(&m).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(same_multiset(&parts, &[simple(&a, 0), simple(&a, 1), simple(&a, 1)]));
    }

    #[test]
    fn projective_indecomposable() {
        let a = a2(q());
        let p1 = indecomposable_projective(&a, 0);
        assert_eq!(decompose(&p1).unwrap().len(), 1);
        assert!(indecomposable_is_projective(&p1));
        assert!(!indecomposable_is_projective(&simple(&a, 0)));
    }

    #[test]
    fn hidden_direct_sum_is_split() {
        // Kronecker module k^2 ⇉ k^2 with T_a = I, T_b = diag(1,2), conjugated
        // by a generic change of basis.
        let k = kronecker(q());
        let m = Representation::new(
            &k,
            vec![2, 2],
            vec![Matrix::identity(q(), 2), Matrix::from_i64(q(), 2, 2, &[1, 0, 0, 2])],
        )
        .unwrap();
        let g = vec![Matrix::from_i64(q(), 2, 2, &[1, 1, 1, 2]), Matrix::from_i64(q(), 2, 2, &[3, 1, 2, 1])];
        let mc = m.conjugate(&g);
        assert_eq!(decompose(&mc).unwrap().len(), 2);
        assert!(is_isomorphic(&m, &mc).unwrap());
    }

    #[test]
    fn jordan_block_is_indecomposable() {
        let k = kronecker(q());
        let m = Representation::new(
            &k,
            vec![2, 2],
            vec![Matrix::identity(q(), 2), Matrix::from_i64(q(), 2, 2, &[1, 1, 0, 1])],
        )
        .unwrap();
        assert_eq!(decompose(&m).unwrap().len(), 1);
    }

    #[test]
    fn field_extension_endomorphisms() {
        // Kronecker module with T_b having irreducible char poly x^2 - 2:
        // End is ℚ(√2), a field, so the module is indecomposable.
        let k = kronecker(q());
        let m = Representation::new(
            &k,
            vec![2, 2],
            vec![Matrix::identity(q(), 2), Matrix::from_i64(q(), 2, 2, &[0, 2, 1, 0])],
        )
        .unwrap();
        assert_eq!(decompose(&m).unwrap().len(), 1);
        // Over GF(5), x^2 - 2 is irreducible too; End is GF(25).
        let f5 = FieldSpec::prime(5).unwrap();
        let k5 = kronecker(f5);
        let m5 = Representation::new(
            &k5,
            vec![2, 2],
            vec![Matrix::identity(f5, 2), Matrix::from_i64(f5, 2, 2, &[0, 2, 1, 0])],
        )
        .unwrap();
        assert_eq!(decompose(&m5).unwrap().len(), 1);
        // Over GF(7), 2 = 3^2 so it splits.
        let f7 = FieldSpec::prime(7).unwrap();
        let k7 = kronecker(f7);
        let m7 = Representation::new(
            &k7,
            vec![2, 2],
            vec![Matrix::identity(f7, 2), Matrix::from_i64(f7, 2, 2, &[0, 2, 1, 0])],
        )
        .unwrap();
        assert_eq!(decompose(&m7).unwrap().len(), 2);
    }

    #[test]
    fn gf2_radical_of_uniserial() {
        let f2 = FieldSpec::prime(2).unwrap();
        let a = loop_alg(f2, 3);
        let p = indecomposable_projective(&a, 0);
        assert_eq!(decompose(&p).unwrap().len(), 1);
        let two = p.direct_sum(&p).unwrap();
        assert_eq!(decompose(&two).unwrap().len(), 2);
    }

    #[test]
    fn registry_ids_and_roundtrip() {
        let a = a2(q());
        let mut reg = IsoRegistry::new(&a);
        let s1 = reg.register(&simple(&a, 0)).unwrap();
        assert_eq!(reg.register(&simple(&a, 0)).unwrap(), s1);
        let p1 = reg.register(&indecomposable_projective(&a, 0)).unwrap();
        assert!(reg.is_projective(p1));
        let sum = simple(&a, 0).direct_sum(&simple(&a, 1)).unwrap();
        assert!(matches!(reg.register(&sum), Err(DecompError::NotIndecomposable(2))));
        let s2 = reg.register(&simple(&a, 1)).unwrap();
        let json = reg.to_json();
        let back = IsoRegistry::from_json(&a, &json).unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(back.lookup(&simple(&a, 1)), Some(s2));
        assert_eq!(back.to_json(), json);
        let other = kronecker(q());
        assert!(matches!(IsoRegistry::from_json(&other, &json), Err(DecompError::FingerprintMismatch { .. })));
        let empty = IsoRegistry::new(&a);
        assert_eq!(IsoRegistry::from_json(&a, &empty.to_json()).unwrap().len(), 0);
    }
}
