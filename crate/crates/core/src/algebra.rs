//! Bound quiver algebras kQ/I with an explicit path-class basis.
//!
//! The ideal is closed degreewise inside the truncation kQ/J^{T+1} for
//! T = 1, 2, ... until every path of length T lies in the closure; that T is
//! the Loewy bound L and the algebra is kQ/(I + J^L). Monomials are ordered
//! longest first and then lexicographically by arrow index, so each
//! relation eliminates its largest monomial.

use crate::linalg::{FieldSpec, Scalar};
use crate::quiver::{Path, Quiver, QuiverError};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;
use thiserror::Error;

pub const DEFAULT_L_MAX: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("ideal is not admissible within truncation L_max = {0}")]
    NotAdmissible(usize),
    #[error("relation {index} contains a path of length {len} >= L_max = {l_max}")]
    RelationTooLong { index: usize, len: usize, l_max: usize },
    #[error("relation {0} is not in J^2 (contains a path of length < 2)")]
    RelationNotInJ2(usize),
    #[error("relation {0} mixes paths with different endpoints")]
    RelationEndpoints(usize),
    #[error("relation {0} has no nonzero coefficient")]
    EmptyRelation(usize),
    #[error("scalar outside the algebra's field in relation {0}")]
    FieldMismatch(usize),
}

/// A linear combination of parallel paths of length at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Relation {
        Relation { terms }
    }

    pub fn monomial(field: FieldSpec, p: Path) -> Relation {
        Relation { terms: vec![(field.one(), p)] }
    }

    /// The same relation with every path read backwards (for A^op).
    pub fn reversed(&self) -> Relation {
        let terms = self
            .terms
            .iter()
            .map(|(c, p)| {
                let mut arrows = p.arrows.clone();
                arrows.reverse();
                (c.clone(), Path { source: p.target, target: p.source, arrows })
            })
            .collect();
        Relation { terms }
    }
}

/// Everything needed to build a [`BoundAlgebra`].
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub field: FieldSpec,
    pub l_max: usize,
    /// When set to k, every path of length k is added to the ideal.
    pub jpower: Option<usize>,
}

impl Presentation {
    pub fn new(name: &str, quiver: Quiver, relations: Vec<Relation>, field: FieldSpec) -> Presentation {
        Presentation { name: name.to_string(), quiver, relations, field, l_max: DEFAULT_L_MAX, jpower: None }
    }

    pub fn with_jpower(mut self, k: usize) -> Presentation {
        self.jpower = Some(k);
        self
    }

    pub fn with_l_max(mut self, l: usize) -> Presentation {
        self.l_max = l;
        self
    }
}

pub type Coeffs = Vec<(usize, Scalar)>;

#[derive(Debug)]
pub struct BoundAlgebra {
    name: String,
    quiver: Quiver,
    field: FieldSpec,
    relations: Vec<Relation>,
    jpower: Option<usize>,
    l_max: usize,
    loewy_bound: usize,
    basis: Vec<Path>,
    basis_index: HashMap<Path, usize>,
    reductions: HashMap<Path, Coeffs>,
    ideal_rows: Vec<Coeffs>,
    ideal_paths: Vec<Path>,
    fingerprint: String,
}

/// Row-echelon span of sparse vectors indexed by monomial position
/// (position 0 is the largest monomial).
struct Echelon {
    rows: HashMap<usize, BTreeMap<usize, Scalar>>,
}

fn axpy(v: &mut BTreeMap<usize, Scalar>, c: &Scalar, row: &BTreeMap<usize, Scalar>) {
    for (k, x) in row {
        let t = c.mul(x);
        match v.get_mut(k) {
            Some(e) => {
                *e = e.add(&t);
                if e.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(*k, t);
                }
            }
        }
    }
}

impl Echelon {
    fn reduce_lead(&self, mut v: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        while let Some((&lead, c)) = v.first_key_value() {
            let Some(row) = self.rows.get(&lead) else { break };
            let c = c.neg();
            axpy(&mut v, &c, row);
        }
        v
    }

    fn full_reduce(&self, mut v: BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        while let Some((pos, c)) = v.pop_first() {
            match self.rows.get(&pos) {
                Some(row) => {
                    let c = c.neg();
                    for (k, x) in row.iter().skip(1) {
                        let t = c.mul(x);
                        match v.get_mut(k) {
                            Some(e) => {
                                *e = e.add(&t);
                                if e.is_zero() {
                                    v.remove(k);
                                }
                            }
                            None => {
                                v.insert(*k, t);
                            }
                        }
                    }
                }
                None => {
                    out.insert(pos, c);
                }
            }
        }
        out
    }

    /// Inserts `v` if independent; returns the inserted (monic) row.
    fn insert(&mut self, v: BTreeMap<usize, Scalar>) -> Option<BTreeMap<usize, Scalar>> {
        let v = self.reduce_lead(v);
        let (&lead, c) = v.first_key_value()?;
        let inv = c.inv().unwrap();
        let row: BTreeMap<usize, Scalar> = v.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
        self.rows.insert(lead, row.clone());
        Some(row)
    }
}

/// Paths of length ≤ T with their monomial positions.
struct Truncation {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    pos_of: Vec<usize>,
    path_at: Vec<usize>,
    t: usize,
}

impl Truncation {
    fn new(q: &Quiver, t: usize) -> Truncation {
        let paths = q.paths_up_to(t + 1);
        let index = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let mut order: Vec<usize> = (0..paths.len()).collect();
        order.sort_by(|&a, &b| paths[b].order_key().cmp(&paths[a].order_key()));
        let mut pos_of = vec![0; paths.len()];
        for (pos, &i) in order.iter().enumerate() {
            pos_of[i] = pos;
        }
        Truncation { paths, index, pos_of, path_at: order, t }
    }

    fn vector(&self, terms: &[(Scalar, Path)]) -> BTreeMap<usize, Scalar> {
        let mut v = BTreeMap::new();
        for (c, p) in terms {
            if p.len() > self.t {
                continue;
            }
            let pos = self.pos_of[self.index[p]];
            axpy(&mut v, c, &BTreeMap::from([(pos, c.field().one())]));
        }
        v
    }

    fn multiply(&self, q: &Quiver, v: &BTreeMap<usize, Scalar>, arrow: usize, on_right: bool) -> BTreeMap<usize, Scalar> {
        let a = q.arrow_path(arrow);
        let mut out = BTreeMap::new();
        for (pos, c) in v {
            let p = &self.paths[self.path_at[*pos]];
            let prod = if on_right { p.concat(&a) } else { a.concat(p) };
            if let Some(prod) = prod {
                if prod.len() <= self.t {
                    out.insert(self.pos_of[self.index[&prod]], c.clone());
                }
            }
        }
        out
    }
}

impl BoundAlgebra {
    pub fn from_presentation(pres: Presentation) -> Result<BoundAlgebra, AlgebraError> {
        let Presentation { name, quiver, relations, field, l_max, jpower } = pres;
        for (i, r) in relations.iter().enumerate() {
            if !r.terms.iter().any(|(c, _)| !c.is_zero()) {
                return Err(AlgebraError::EmptyRelation(i));
            }
            let (s, t) = (r.terms[0].1.source, r.terms[0].1.target);
            for (c, p) in &r.terms {
                if !field.contains(c) {
                    return Err(AlgebraError::FieldMismatch(i));
                }
                if p.source != s || p.target != t {
                    return Err(AlgebraError::RelationEndpoints(i));
                }
                if p.len() < 2 {
                    return Err(AlgebraError::RelationNotInJ2(i));
                }
                if p.len() >= l_max {
                    return Err(AlgebraError::RelationTooLong { index: i, len: p.len(), l_max });
                }
                quiver.path_from_indices(&p.arrows)?;
            }
        }
        for t in 1..=l_max {
            let tr = Truncation::new(&quiver, t);
            let mut ech = Echelon { rows: HashMap::new() };
            let mut queue: VecDeque<BTreeMap<usize, Scalar>> =
                relations.iter().map(|r| tr.vector(&r.terms)).collect();
            if let Some(k) = jpower {
                for p in tr.paths.iter().filter(|p| p.len() == k) {
                    queue.push_back(tr.vector(&[(field.one(), p.clone())]));
                }
            }
            while let Some(v) = queue.pop_front() {
                if let Some(row) = ech.insert(v) {
                    for a in 0..quiver.arrow_count() {
                        queue.push_back(tr.multiply(&quiver, &row, a, true));
                        queue.push_back(tr.multiply(&quiver, &row, a, false));
                    }
                }
            }
            let top_in_ideal = tr
                .paths
                .iter()
                .filter(|p| p.len() == t)
                .all(|p| ech.rows.contains_key(&tr.pos_of[tr.index[p]]));
            if !top_in_ideal {
                continue;
            }
            return Ok(Self::finish(name, quiver, field, relations, jpower, l_max, t, &tr, &ech));
        }
        Err(AlgebraError::NotAdmissible(l_max))
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        name: String,
        quiver: Quiver,
        field: FieldSpec,
        relations: Vec<Relation>,
        jpower: Option<usize>,
        l_max: usize,
        loewy: usize,
        tr: &Truncation,
        ech: &Echelon,
    ) -> BoundAlgebra {
        let basis: Vec<Path> = tr
            .paths
            .iter()
            .enumerate()
            .filter(|(i, p)| p.len() < loewy && !ech.rows.contains_key(&tr.pos_of[*i]))
            .map(|(_, p)| p.clone())
            .collect();
        let basis_index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let to_basis = |v: BTreeMap<usize, Scalar>| -> Coeffs {
            let mut c: Coeffs = v
                .into_iter()
                .map(|(pos, x)| (basis_index[&tr.paths[tr.path_at[pos]]], x))
                .collect();
            c.sort_by_key(|e| e.0);
            c
        };
        let mut reductions = HashMap::new();
        let mut ideal_rows = Vec::new();
        let mut ideal_paths = Vec::new();
        let mut pivots: Vec<usize> = ech.rows.keys().copied().collect();
        pivots.sort_unstable();
        for pos in pivots {
            let path = tr.paths[tr.path_at[pos]].clone();
            if path.len() >= loewy {
                continue;
            }
            let nf = ech.full_reduce(BTreeMap::from([(pos, field.one())]));
            let c = to_basis(nf);
            ideal_rows.push(c.iter().map(|(i, x)| (*i, x.neg())).collect());
            ideal_paths.push(path.clone());
            reductions.insert(path, c);
        }
        let mut alg = BoundAlgebra {
            name,
            quiver,
            field,
            relations,
            jpower,
            l_max,
            loewy_bound: loewy,
            basis,
            basis_index,
            reductions,
            ideal_rows,
            ideal_paths,
            fingerprint: String::new(),
        };
        alg.fingerprint = hex::encode(Sha256::digest(alg.canonical_text().as_bytes()));
        alg
    }

    /// Builds and wraps in an `Arc`, the form every module-level API expects.
    pub fn build(pres: Presentation) -> Result<Arc<BoundAlgebra>, AlgebraError> {
        Self::from_presentation(pres).map(Arc::new)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn jpower(&self) -> Option<usize> {
        self.jpower
    }

    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// L with J^L ⊆ I (minimal).
    pub fn loewy_bound(&self) -> usize {
        self.loewy_bound
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// Non-basis monomials of length < L together with their normal forms,
    /// i.e. the reduced spanning set of I inside kQ/J^L written as
    /// `path − nf(path)`.
    pub fn ideal_basis(&self) -> impl Iterator<Item = (&Path, &Coeffs)> {
        self.ideal_paths.iter().zip(&self.ideal_rows)
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.basis_index.get(p).copied()
    }

    pub fn same_as(&self, other: &BoundAlgebra) -> bool {
        std::ptr::eq(self, other) || self.fingerprint == other.fingerprint
    }

    /// Coordinates of a path in the basis.
    pub fn nf_path(&self, p: &Path) -> Coeffs {
        if p.len() >= self.loewy_bound {
            return vec![];
        }
        if let Some(&i) = self.basis_index.get(p) {
            return vec![(i, self.field.one())];
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    /// Normal form of a formal linear combination of paths.
    pub fn normal_form(&self, element: &[(Scalar, Path)]) -> Result<Coeffs, AlgebraError> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, p) in element {
            if !p.is_trivial() {
                self.quiver.path_from_indices(&p.arrows)?;
            } else if p.source >= self.vertex_count() {
                return Err(QuiverError::UnknownVertex(p.source.to_string()).into());
            }
            let nf: BTreeMap<usize, Scalar> = self.nf_path(p).into_iter().collect();
            axpy(&mut acc, c, &nf);
        }
        Ok(acc.into_iter().collect())
    }

    /// Normal form of the product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> Coeffs {
        match self.basis[i].concat(&self.basis[j]) {
            Some(p) => self.nf_path(&p),
            None => vec![],
        }
    }

    /// Structure constants for all basis × basis products.
    pub fn mult_table(&self) -> Vec<Vec<Coeffs>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.mul_basis(i, j)).collect()).collect()
    }

    /// Basis indices of path classes from `v` to `w`, in basis order.
    pub fn basis_between(&self, v: usize, w: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].source == v && self.basis[i].target == w)
            .collect()
    }

    pub fn opposite(&self) -> Result<BoundAlgebra, AlgebraError> {
        let pres = Presentation {
            name: format!("{}^op", self.name),
            quiver: self.quiver.opposite(),
            relations: self.relations.iter().map(Relation::reversed).collect(),
            field: self.field,
            l_max: self.l_max,
            jpower: self.jpower,
        };
        BoundAlgebra::from_presentation(pres)
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            name: self.name.clone(),
            quiver: self.quiver.clone(),
            relations: self.relations.clone(),
            field: self.field,
            l_max: self.l_max,
            jpower: self.jpower,
        }
    }

    pub fn relation_display(&self, r: &Relation) -> String {
        let mut s = String::new();
        for (k, (c, p)) in r.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if !c.is_one() {
                s.push_str(&format!("{c}*"));
            }
            s.push_str(&self.quiver.path_display(p));
        }
        s
    }

    /// Deterministic text used for fingerprinting.
    pub fn canonical_text(&self) -> String {
        let mut s = format!("field {}\nvertices", self.field);
        for v in self.quiver.vertices() {
            s.push_str(&format!(" {v}"));
        }
        s.push_str("\narrows");
        for a in self.quiver.arrows() {
            s.push_str(&format!(" {}:{}->{}", a.label, a.source, a.target));
        }
        s.push_str("\nrelations");
        for r in &self.relations {
            s.push_str(&format!("\n  {}", self.relation_display(r)));
        }
        s.push_str(&format!("\njpower {:?}\nloewy {}\n", self.jpower, self.loewy_bound));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    pub(crate) fn dual_numbers() -> BoundAlgebra {
        let quiver = Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap();
        let xx = quiver.path_from_labels(&["x", "x"]).unwrap();
        BoundAlgebra::from_presentation(
            Presentation::new("D", quiver, vec![Relation::monomial(q(), xx)], q()).with_l_max(4),
        )
        .unwrap()
    }

    #[test]
    fn dual_numbers_basis() {
        let a = dual_numbers();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.loewy_bound(), 2);
        let xx = a.quiver().path_from_labels(&["x", "x"]).unwrap();
        assert!(a.nf_path(&xx).is_empty());
    }

    #[test]
    fn hereditary_a2() {
        let quiver = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = BoundAlgebra::from_presentation(Presentation::new("A2", quiver, vec![], q()).with_l_max(3)).unwrap();
        assert_eq!(a.dim(), 3);
        let e1 = Path::trivial(0);
        let arrow = a.quiver().arrow_path(0);
        let nf = a.normal_form(&[(q().one(), e1), (q().one(), arrow)]).unwrap();
        assert_eq!(nf.len(), 2);
    }

    #[test]
    fn free_loop_not_admissible() {
        let quiver = Quiver::from_strs(&["v"], &[("x", "v", "v")]).unwrap();
        let err = BoundAlgebra::from_presentation(Presentation::new("L", quiver, vec![], q()).with_l_max(5));
        assert_eq!(err.unwrap_err(), AlgebraError::NotAdmissible(5));
    }

    #[test]
    fn relation_checks() {
        let quiver = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let a = quiver.arrow_path(0);
        let err = BoundAlgebra::from_presentation(Presentation::new("x", quiver, vec![Relation::monomial(q(), a)], q()));
        assert_eq!(err.unwrap_err(), AlgebraError::RelationNotInJ2(0));
    }

    #[test]
    fn commutativity_relation_prefers_larger_monomial() {
        // Square 1 -> 2 -> 4, 1 -> 3 -> 4 with ab = cd.
        let quiver = Quiver::from_strs(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let ab = quiver.path_from_labels(&["a", "b"]).unwrap();
        let cd = quiver.path_from_labels(&["c", "d"]).unwrap();
        let rel = Relation::new(vec![(q().one(), ab.clone()), (q().from_i64(-1), cd.clone())]);
        let a = BoundAlgebra::from_presentation(Presentation::new("sq", quiver, vec![rel], q())).unwrap();
        assert_eq!(a.dim(), 4 + 4 + 1);
        assert!(a.basis_index(&ab).is_some());
        assert_eq!(a.nf_path(&cd), vec![(a.basis_index(&ab).unwrap(), q().one())]);
    }

    #[test]
    fn multiplication_is_associative() {
        let quiver = Quiver::from_strs(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let aba = quiver.path_from_labels(&["a", "b", "a"]).unwrap();
        let bab = quiver.path_from_labels(&["b", "a", "b"]).unwrap();
        let alg = BoundAlgebra::from_presentation(Presentation::new(
            "n",
            quiver,
            vec![Relation::monomial(q(), aba), Relation::monomial(q(), bab)],
            q(),
        ))
        .unwrap();
        let n = alg.dim();
        let mul = |x: &Coeffs, j: usize| -> BTreeMap<usize, Scalar> {
            let mut acc = BTreeMap::new();
            for (i, c) in x {
                let prod: BTreeMap<usize, Scalar> = alg.mul_basis(*i, j).into_iter().collect();
                axpy(&mut acc, c, &prod);
            }
            acc
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = mul(&alg.mul_basis(i, j), k);
                    let jk = alg.mul_basis(j, k);
                    let mut right = BTreeMap::new();
                    for (m, c) in &jk {
                        let prod: BTreeMap<usize, Scalar> = alg.mul_basis(i, *m).into_iter().collect();
                        axpy(&mut right, c, &prod);
                    }
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn opposite_twice_same_shape() {
        let a = dual_numbers();
        let op = a.opposite().unwrap();
        assert_eq!(op.dim(), a.dim());
        assert_eq!(op.opposite().unwrap().mult_table(), a.mult_table());
    }
}
