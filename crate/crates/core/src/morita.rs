//! Gluing bound quiver algebras along connecting arrows (Morita context
//! algebras with zero bimodule maps), hypothesis checks, theorem-bound
//! verifiers, and the two worked example algebras.

use crate::algebra::{AlgebraError, BoundAlgebra, Presentation, Relation};
use crate::decomp::{decompose, same_multiset, DecompError, IsoRegistry};
use crate::homology::{proj_dim, syzygy, DimResult};
use crate::igusa::{phi, phi_lower_bound, syzygy_finite_subgroup, Closure, IgusaError};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::quiver::{Path, Quiver, QuiverError};
use crate::report::{Report, Status};
use crate::repmod::{semisimple, simple, RepError, Representation};
use std::collections::HashSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GlueError {
    #[error("blocks are over different fields")]
    FieldMismatch,
    #[error("label `{0}` is used by more than one block")]
    LabelCollision(String),
    #[error("connector `{label}`: {reason}")]
    BadConnector { label: String, reason: String },
    #[error("extra relation {0} has a term avoiding every connecting arrow")]
    ExtraNotThroughConnector(usize),
    #[error("degenerate parameter: {0}")]
    Degenerate(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("block index {0} out of range")]
    NoSuchBlock(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// A relation written with arrow labels, resolved against the glued quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelRelation {
    pub terms: Vec<(Scalar, Vec<String>)>,
}

impl LabelRelation {
    pub fn new(terms: Vec<(Scalar, Vec<&str>)>) -> LabelRelation {
        LabelRelation { terms: terms.into_iter().map(|(c, p)| (c, p.into_iter().map(String::from).collect())).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealMode {
    /// I_C is exactly the ideal of the hypotheses.
    EqualityIdeal,
    /// That ideal plus extra relations through connecting arrows.
    ExtendedIdeal(Vec<LabelRelation>),
    /// The ideal was given directly (partition metadata only).
    Given,
}

/// A connecting arrow between two blocks, by block index and vertex label.
#[derive(Clone, Debug)]
pub struct ConnectorSpec {
    pub label: String,
    pub from: (usize, String),
    pub to: (usize, String),
}

impl ConnectorSpec {
    pub fn new(label: &str, from: (usize, &str), to: (usize, &str)) -> ConnectorSpec {
        ConnectorSpec { label: label.into(), from: (from.0, from.1.into()), to: (to.0, to.1.into()) }
    }
}

/// Two-block gluing data: forward arrows A → B, backward arrows B → A,
/// each as (label, source label, target label).
#[derive(Clone, Debug)]
pub struct GlueSpec {
    pub name: String,
    pub a: Arc<BoundAlgebra>,
    pub b: Arc<BoundAlgebra>,
    pub forward: Vec<(String, String, String)>,
    pub backward: Vec<(String, String, String)>,
    pub mode: IdealMode,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub algebra: Arc<BoundAlgebra>,
    /// C-vertex of each block vertex.
    pub vertices: Vec<usize>,
    /// C-arrow of each block arrow.
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Connector {
    pub arrow: usize,
    pub from_block: usize,
    pub to_block: usize,
}

#[derive(Clone, Debug)]
pub struct GluedAlgebra {
    pub c: Arc<BoundAlgebra>,
    pub blocks: Vec<Block>,
    pub connectors: Vec<Connector>,
    pub mode: IdealMode,
    /// Named scalar parameters of a generated family (e.g. p, q).
    pub params: Vec<(String, Scalar)>,
}

fn map_path(p: &Path, block: &Block) -> Path {
    Path {
        source: block.vertices[p.source],
        target: block.vertices[p.target],
        arrows: p.arrows.iter().map(|&a| block.arrows[a]).collect(),
    }
}

/// Generators of I_block, as elements of the block path algebra: its
/// relations plus every path of length equal to the Loewy bound.
fn block_ideal_generators(alg: &BoundAlgebra) -> Vec<Vec<(Scalar, Path)>> {
    let mut out: Vec<Vec<(Scalar, Path)>> = alg.relations().iter().map(|r| r.terms.clone()).collect();
    let l = alg.loewy_bound();
    for p in alg.quiver().paths_up_to(l + 1).into_iter().filter(|p| p.len() == l) {
        out.push(vec![(alg.field().one(), p)]);
    }
    out
}

/// Glues several blocks. I_C contains each block's ideal, every product
/// (block arrow)·δ, and every δδ' for connecting arrows δ, δ'.
pub fn glue_multi(
    name: &str,
    blocks: &[Arc<BoundAlgebra>],
    connectors: &[ConnectorSpec],
    mode: IdealMode,
) -> Result<GluedAlgebra, GlueError> {
    let field = blocks.first().map_or(FieldSpec::Rationals, |b| b.field());
    if blocks.iter().any(|b| b.field() != field) {
        return Err(GlueError::FieldMismatch);
    }
    let mut vlabels = HashSet::new();
    let mut alabels = HashSet::new();
    for b in blocks {
        for v in b.quiver().vertices() {
            if !vlabels.insert(v.clone()) {
                return Err(GlueError::LabelCollision(v.clone()));
            }
        }
        for a in b.quiver().arrows() {
            if !alabels.insert(a.label.clone()) {
                return Err(GlueError::LabelCollision(a.label.clone()));
            }
        }
    }
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut meta = Vec::new();
    for b in blocks {
        let q = b.quiver();
        let v0 = vertices.len();
        let a0 = arrows.len();
        vertices.extend(q.vertices().iter().cloned());
        for a in q.arrows() {
            arrows.push((a.label.clone(), q.vertex_label(a.source).into(), q.vertex_label(a.target).into()));
        }
        meta.push(Block {
            algebra: b.clone(),
            vertices: (v0..v0 + q.vertex_count()).collect(),
            arrows: (a0..a0 + q.arrow_count()).collect(),
        });
    }
    let mut conn = Vec::new();
    for c in connectors {
        let bad = |reason: &str| GlueError::BadConnector { label: c.label.clone(), reason: reason.into() };
        if !alabels.insert(c.label.clone()) {
            return Err(GlueError::LabelCollision(c.label.clone()));
        }
        let (fb, tb) = (c.from.0, c.to.0);
        if fb >= blocks.len() || tb >= blocks.len() {
            return Err(bad("block index out of range"));
        }
        if fb == tb {
            return Err(bad("both endpoints lie in the same block"));
        }
        if blocks[fb].quiver().vertex_index(&c.from.1).is_err() {
            return Err(bad(&format!("source `{}` is not a vertex of block {fb}", c.from.1)));
        }
        if blocks[tb].quiver().vertex_index(&c.to.1).is_err() {
            return Err(bad(&format!("target `{}` is not a vertex of block {tb}", c.to.1)));
        }
        conn.push(Connector { arrow: arrows.len(), from_block: fb, to_block: tb });
        arrows.push((c.label.clone(), c.from.1.clone(), c.to.1.clone()));
    }
    let quiver = Quiver::build(vertices, arrows)?;
    let one = field.one();
    let mut relations = Vec::new();
    for blk in &meta {
        for g in block_ideal_generators(&blk.algebra) {
            relations.push(Relation::new(g.iter().map(|(c, p)| (c.clone(), map_path(p, blk))).collect()));
        }
    }
    for c in &conn {
        let s = quiver.arrow(c.arrow).source;
        for &a in &meta[c.from_block].arrows {
            if quiver.arrow(a).target == s {
                relations.push(Relation::monomial(field, quiver.path_from_indices(&[a, c.arrow])?));
            }
        }
        for d in &conn {
            if quiver.arrow(d.arrow).source == quiver.arrow(c.arrow).target {
                relations.push(Relation::monomial(field, quiver.path_from_indices(&[c.arrow, d.arrow])?));
            }
        }
    }
    if let IdealMode::ExtendedIdeal(extra) = &mode {
        let cset: HashSet<usize> = conn.iter().map(|c| c.arrow).collect();
        for (i, r) in extra.iter().enumerate() {
            let mut terms = Vec::new();
            for (c, labels) in &r.terms {
                let p = quiver.path_from_labels(labels)?;
                if !p.arrows.iter().any(|a| cset.contains(a)) {
                    return Err(GlueError::ExtraNotThroughConnector(i));
                }
                terms.push((c.clone(), p));
            }
            relations.push(Relation::new(terms));
        }
    }
    let _ = one;
    let l_max = blocks.iter().map(|b| b.loewy_bound()).sum::<usize>() + blocks.len() + 1;
    let pres = Presentation::new(name, quiver, relations, field).with_l_max(l_max.max(3));
    let c = BoundAlgebra::build(pres)?;
    Ok(GluedAlgebra { c, blocks: meta, connectors: conn, mode, params: vec![] })
}

/// Two-block gluing.
pub fn glue(spec: &GlueSpec) -> Result<GluedAlgebra, GlueError> {
    let mut conns: Vec<ConnectorSpec> = Vec::new();
    for (l, s, t) in &spec.forward {
        conns.push(ConnectorSpec::new(l, (0, s), (1, t)));
    }
    for (l, s, t) in &spec.backward {
        conns.push(ConnectorSpec::new(l, (1, s), (0, t)));
    }
    glue_multi(&spec.name, &[spec.a.clone(), spec.b.clone()], &conns, spec.mode.clone())
}

impl GluedAlgebra {
    pub fn block(&self, i: usize) -> Result<&Block, GlueError> {
        self.blocks.get(i).ok_or(GlueError::NoSuchBlock(i))
    }

    /// Which block a C-vertex belongs to.
    pub fn block_of_vertex(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.vertices.contains(&v))
    }

    /// Π_i: the restriction of a C-module to block i.
    pub fn restrict(&self, m: &Representation, i: usize) -> Result<Representation, GlueError> {
        let b = self.block(i)?;
        Ok(m.restrict_to(&b.algebra, &b.vertices, &b.arrows)?)
    }

    /// A block module viewed as a C-module (zero elsewhere).
    pub fn inflate(&self, m: &Representation, i: usize) -> Result<Representation, GlueError> {
        let b = self.block(i)?;
        let f = self.c.field();
        let q = self.c.quiver();
        let mut dims = vec![0; q.vertex_count()];
        for (bv, &cv) in b.vertices.iter().enumerate() {
            dims[cv] = m.dim_at(bv);
        }
        let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
        for (ba, &ca) in b.arrows.iter().enumerate() {
            maps[ca] = m.map(ba).clone();
        }
        Ok(Representation::new(&self.c, dims, maps)?)
    }

    /// The block containing the support of `m`, if there is exactly one.
    pub fn one_sided(&self, m: &Representation) -> Option<usize> {
        let blocks: HashSet<usize> = m.support().into_iter().filter_map(|v| self.block_of_vertex(v)).collect();
        (blocks.len() == 1).then(|| *blocks.iter().next().unwrap())
    }

    /// ⊕ of the simple C-modules at the vertices of block i.
    pub fn block_top(&self, i: usize) -> Result<Representation, GlueError> {
        let b = self.block(i)?;
        let mut dims = vec![0; self.c.vertex_count()];
        for &v in &b.vertices {
            dims[v] = 1;
        }
        Ok(semisimple(&self.c, &dims))
    }
}

fn is_zero_in(c: &BoundAlgebra, terms: &[(Scalar, Path)]) -> bool {
    c.normal_form(terms).is_ok_and(|nf| nf.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H4Status {
    Holds,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct HypothesesReport {
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    pub h4: H4Status,
    pub report: Report,
}

/// H1–H3 structurally; H4 by orbit enumeration with the given cutoff.
pub fn check_hypotheses(g: &GluedAlgebra, cutoff: usize) -> Result<HypothesesReport, IgusaError> {
    let mut report = Report::new("hypotheses");
    let c = &g.c;
    let q = c.quiver();
    // H1
    let mut seen = vec![0usize; q.vertex_count()];
    for b in &g.blocks {
        for &v in &b.vertices {
            seen[v] += 1;
        }
    }
    let h1 = seen.iter().all(|&k| k == 1);
    report.record(Status::from_bool(h1), "H1: the block vertex sets partition the vertices of C");
    // H2
    let mut owner = vec![None; q.arrow_count()];
    let mut h2 = true;
    for (bi, b) in g.blocks.iter().enumerate() {
        for (ba, &ca) in b.arrows.iter().enumerate() {
            let (ar, cr) = (b.algebra.quiver().arrow(ba), q.arrow(ca));
            h2 &= owner[ca].is_none() && b.vertices[ar.source] == cr.source && b.vertices[ar.target] == cr.target;
            owner[ca] = Some(bi);
        }
    }
    for cn in &g.connectors {
        let a = q.arrow(cn.arrow);
        h2 &= owner[cn.arrow].is_none()
            && cn.from_block != cn.to_block
            && g.block_of_vertex(a.source) == Some(cn.from_block)
            && g.block_of_vertex(a.target) == Some(cn.to_block);
        owner[cn.arrow] = Some(usize::MAX);
    }
    h2 &= owner.iter().all(Option::is_some);
    report.record(Status::from_bool(h2), "H2: every arrow is a block arrow or a connector between distinct blocks");
    // H3
    let mut missing = Vec::new();
    for (bi, b) in g.blocks.iter().enumerate() {
        for gen in block_ideal_generators(&b.algebra) {
            let terms: Vec<(Scalar, Path)> = gen.iter().map(|(k, p)| (k.clone(), map_path(p, b))).collect();
            if !is_zero_in(c, &terms) {
                missing.push(format!("block {bi} relation {}", describe(c, &terms)));
            }
        }
    }
    let one = c.field().one();
    for cn in &g.connectors {
        let s = q.arrow(cn.arrow).source;
        for &a in &g.blocks[cn.from_block].arrows {
            if q.arrow(a).target == s {
                let p = q.path_from_indices(&[a, cn.arrow]).unwrap();
                if !is_zero_in(c, &[(one.clone(), p.clone())]) {
                    missing.push(q.path_display(&p));
                }
            }
        }
        for d in &g.connectors {
            if q.arrow(d.arrow).source == q.arrow(cn.arrow).target {
                let p = q.path_from_indices(&[cn.arrow, d.arrow]).unwrap();
                if !is_zero_in(c, &[(one.clone(), p.clone())]) {
                    missing.push(q.path_display(&p));
                }
            }
        }
    }
    let h3 = missing.is_empty();
    report.record(Status::from_bool(h3), format!("H3: required products lie in I_C ({} missing)", missing.len()));
    for m in missing.iter().take(12) {
        report.witness(format!("not in I_C: {m}"));
    }
    // H4
    let h4 = if h1 && h2 && h3 {
        let h4 = check_h4(g, cutoff, &mut report)?;
        let st = if h4 == H4Status::Holds { Status::Pass } else { Status::Unknown };
        report.record(st, format!("H4: orbit set is syzygy finite (cutoff {cutoff})"));
        h4
    } else {
        report.record(Status::Unknown, "H4: not evaluated since H1-H3 do not all hold");
        H4Status::Unknown
    };
    Ok(HypothesesReport { h1, h2, h3, h4, report })
}

fn describe(c: &BoundAlgebra, terms: &[(Scalar, Path)]) -> String {
    let q = c.quiver();
    terms.iter().map(|(k, p)| format!("{k}·{}", q.path_display(p))).collect::<Vec<_>>().join(" + ")
}

fn check_h4(g: &GluedAlgebra, cutoff: usize, report: &mut Report) -> Result<H4Status, IgusaError> {
    let mut creg = IsoRegistry::new(&g.c);
    let mut inflated = Vec::new();
    let mut holds = true;
    for i in 0..g.blocks.len() {
        // Ω_C of the simples of all other blocks, restricted to block i.
        let mut dims = vec![0; g.c.vertex_count()];
        for (j, b) in g.blocks.iter().enumerate() {
            if j != i {
                for &v in &b.vertices {
                    dims[v] = 1;
                }
            }
        }
        let om = syzygy(&semisimple(&g.c, &dims));
        let pi = g.restrict(&om, i).map_err(|e| IgusaError::Decomp(DecompError::Malformed(e.to_string())))?;
        let mut breg = IsoRegistry::new(&g.blocks[i].algebra);
        match syzygy_finite_subgroup(&[pi], &mut breg, cutoff)? {
            Closure::FiniteClosure(ids) => {
                report.note(format!("H4: block {i} orbit closes with {} non-projective classes", ids.len()));
                for id in ids {
                    let rep = breg.representative(id).unwrap().clone();
                    inflated.push(g.inflate(&rep, i).map_err(|e| IgusaError::Decomp(DecompError::Malformed(e.to_string())))?);
                }
            }
            Closure::Unknown(c) => {
                report.note(format!("H4: block {i} orbit not closed within cutoff {c}"));
                holds = false;
            }
        }
    }
    if !holds {
        return Ok(H4Status::Unknown);
    }
    match syzygy_finite_subgroup(&inflated, &mut creg, cutoff)? {
        Closure::FiniteClosure(ids) => {
            report.note(format!("H4: orbit set generates an Ω̄-closed set of {} classes in K0(C)", ids.len()));
            Ok(H4Status::Holds)
        }
        Closure::Unknown(c) => {
            report.note(format!("H4: closure in K0(C) not reached within cutoff {c}"));
            Ok(H4Status::Unknown)
        }
    }
}

fn block_parts(g: &GluedAlgebra, parts: &[Representation]) -> Option<Vec<Vec<Representation>>> {
    let mut out = vec![Vec::new(); g.blocks.len()];
    for p in parts {
        out[g.one_sided(p)?].push(p.clone());
    }
    Some(out)
}

/// Every indecomposable summand of Ω_C(M) lives on a single block; for
/// one-sided M, the other blocks' parts agree with those of Ω_C(top M).
pub fn verify_lemma_3_1(g: &GluedAlgebra, modules: &[Representation]) -> Result<Report, DecompError> {
    let mut report = Report::new("lemma3.1");
    for (k, m) in modules.iter().enumerate() {
        let parts = decompose(&syzygy(m))?;
        let Some(split) = block_parts(g, &parts) else {
            report.record(Status::Fail, format!("module {k}: a summand of Ω_C(M) meets two blocks"));
            report.witness(format!("module {k} dims {:?}", m.dims()));
            continue;
        };
        let mut line = format!("module {k} dims {:?}: Ω_C splits as {:?}", m.dims(), split.iter().map(Vec::len).collect::<Vec<_>>());
        let mut st = Status::Pass;
        if let Some(side) = g.one_sided(m) {
            let tparts = decompose(&syzygy(&m.top()))?;
            match block_parts(g, &tparts) {
                Some(tsplit) => {
                    for j in (0..g.blocks.len()).filter(|&j| j != side) {
                        if !same_multiset(&split[j], &tsplit[j]) {
                            st = Status::Fail;
                            line.push_str(&format!("; block {j} part differs from that of Ω_C(top M)"));
                        }
                    }
                }
                None => {
                    st = Status::Fail;
                    line.push_str("; Ω_C(top M) does not split");
                }
            }
        }
        report.record(st, line);
    }
    Ok(report)
}

/// Global dimension of a block when every simple has finite projective
/// dimension within the cutoff.
pub fn global_dimension(alg: &Arc<BoundAlgebra>, cutoff: usize) -> Result<Option<usize>, DecompError> {
    let mut best = 0;
    for v in 0..alg.vertex_count() {
        match proj_dim(&simple(alg, v), cutoff)? {
            DimResult::Finite(n) => best = best.max(n),
            _ => return Ok(None),
        }
    }
    Ok(Some(best))
}

/// Checks φ(X) ≤ max{φdim A, φdim B} + |Q_A0| + |Q_B0| + 1 on a suite of
/// C-modules. Block φdims default to the global dimensions when finite.
pub fn verify_prop_3_5_upper(
    g: &GluedAlgebra,
    suite: &[Representation],
    reg: &mut IsoRegistry,
    phidims: Option<(usize, usize)>,
) -> Result<Report, IgusaError> {
    let mut report = Report::new("prop3.5");
    if g.blocks.len() != 2 {
        report.record(Status::Unknown, "needs exactly two blocks");
        return Ok(report);
    }
    if g.mode != IdealMode::EqualityIdeal {
        report.note("ideal is not the equality ideal; the bound is not guaranteed");
    }
    let (a, b) = (&g.blocks[0], &g.blocks[1]);
    let known = match phidims {
        Some(x) => Some(x),
        None => match (global_dimension(&a.algebra, 20)?, global_dimension(&b.algebra, 20)?) {
            (Some(x), Some(y)) => {
                report.note(format!("φdim taken as gldim: A {x}, B {y}"));
                Some((x, y))
            }
            _ => None,
        },
    };
    let extra = a.vertices.len() + b.vertices.len() + 1;
    let dim_sum = a.algebra.dim() + b.algebra.dim() + g.connectors.len();
    report.note(format!(
        "dim C = {}, dim A + dim B + #connectors = {dim_sum}",
        g.c.dim()
    ));
    let bound = known.map(|(x, y)| x.max(y) + extra);
    for (k, m) in suite.iter().enumerate() {
        let r = phi(m, reg)?;
        let exact = if r.exact { "" } else { " (horizon-limited)" };
        match bound {
            Some(bd) => report.record(Status::from_bool(r.value <= bd), format!("suite {k}: φ = {}{exact} ≤ {bd}", r.value)),
            None => report.record(Status::Unknown, format!("suite {k}: φ = {}{exact}; block φdims unknown", r.value)),
        }
    }
    let la = phi_lower_bound(&crate::igusa::default_suite(&a.algebra), &mut IsoRegistry::new(&a.algebra))?;
    let lb = phi_lower_bound(&crate::igusa::default_suite(&b.algebra), &mut IsoRegistry::new(&b.algebra))?;
    report.note(format!("suite lower bounds: A {}, B {}", la.value, lb.value));
    Ok(report)
}

/// For each suite module of finite projective dimension n, checks
/// n ≤ k + 1 + f with k the larger suite finitistic dimension of the
/// blocks and f the largest finite pd over the orbit representatives.
pub fn verify_thm_3_7(
    g: &GluedAlgebra,
    suite: &[Representation],
    cutoff: usize,
) -> Result<Report, IgusaError> {
    let mut report = Report::new("thm3.7");
    let mut k = 0;
    for b in &g.blocks {
        for m in crate::igusa::default_suite(&b.algebra) {
            if let DimResult::Finite(n) = proj_dim(&m, cutoff)? {
                k = k.max(n);
            }
        }
    }
    let mut f = 0;
    let mut orbit_reps = Vec::new();
    for i in 0..g.blocks.len() {
        let mut dims = vec![0; g.c.vertex_count()];
        for (j, b) in g.blocks.iter().enumerate() {
            if j != i {
                for &v in &b.vertices {
                    dims[v] = 1;
                }
            }
        }
        let om = syzygy(&semisimple(&g.c, &dims));
        let pi = g.restrict(&om, i).map_err(|e| IgusaError::Decomp(DecompError::Malformed(e.to_string())))?;
        let mut breg = IsoRegistry::new(&g.blocks[i].algebra);
        match syzygy_finite_subgroup(&[pi], &mut breg, cutoff)? {
            Closure::FiniteClosure(ids) => {
                for id in ids {
                    let rep = breg.representative(id).unwrap().clone();
                    orbit_reps.push(g.inflate(&rep, i).map_err(|e| IgusaError::Decomp(DecompError::Malformed(e.to_string())))?);
                }
            }
            Closure::Unknown(_) => report.record(Status::Unknown, format!("orbit of block {i} not closed")),
        }
    }
    for m in &orbit_reps {
        if let DimResult::Finite(n) = proj_dim(m, cutoff)? {
            f = f.max(n);
        }
    }
    let bound = k + 1 + f;
    report.note(format!("k = {k}, f = {f}, bound = {bound}"));
    for (i, m) in suite.iter().enumerate() {
        match proj_dim(m, cutoff)? {
            DimResult::Finite(n) => report.record(Status::from_bool(n <= bound), format!("suite {i}: pd = {n} ≤ {bound}")),
            DimResult::Infinite { i: a, j: b } => report.note(format!("suite {i}: pd infinite (Ω^{a} ≅ Ω^{b}), excluded")),
            DimResult::Unknown(c) => report.record(Status::Unknown, format!("suite {i}: pd unknown at cutoff {c}")),
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Example algebras

/// The 5-vertex fixture used by the acceptance checks, as a gluing of two
/// A₂ path algebras with one connector each way: A: 1 → 2, B: 3 → 4,
/// α: 2 → 4, β: 4 → 2.
pub fn build_fix5(field: FieldSpec) -> GluedAlgebra {
    let a = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
    let b = Quiver::from_strs(&["3", "4"], &[("b", "3", "4")]).unwrap();
    let spec = GlueSpec {
        name: "FIX5".into(),
        a: BoundAlgebra::build(Presentation::new("A", a, vec![], field)).unwrap(),
        b: BoundAlgebra::build(Presentation::new("B", b, vec![], field)).unwrap(),
        forward: vec![("alpha".into(), "2".into(), "4".into())],
        backward: vec![("beta".into(), "4".into(), "2".into())],
        mode: IdealMode::EqualityIdeal,
    };
    glue(&spec).unwrap()
}

/// The 4-vertex cyclic algebra with doubled arrow pairs and J³ = 0, with
/// blocks {1, 2} and {3, 4}.
pub fn build_bm1_example(field: FieldSpec) -> GluedAlgebra {
    let names = |i: usize| [format!("a{i}"), format!("ab{i}"), format!("b{i}"), format!("bb{i}")];
    let vert = |i: usize| ((i - 1) % 4 + 1).to_string();
    let mut arrows = Vec::new();
    for i in 1..=4 {
        for l in names(i) {
            arrows.push((l, vert(i), vert(i + 1)));
        }
    }
    let quiver = Quiver::build(["1", "2", "3", "4"], arrows).unwrap();
    let p = |x: &str, y: &str| quiver.path_from_labels(&[x, y]).unwrap();
    let one = field.one();
    let mut rels = Vec::new();
    for i in 1..=4 {
        let j = i % 4 + 1;
        let (a, ab, b, bb) = (format!("a{i}"), format!("ab{i}"), format!("b{i}"), format!("bb{i}"));
        let (a2, ab2, b2, bb2) = (format!("a{j}"), format!("ab{j}"), format!("b{j}"), format!("bb{j}"));
        rels.push(Relation::new(vec![(one.clone(), p(&a, &a2)), (one.neg(), p(&ab, &ab2))]));
        rels.push(Relation::new(vec![(one.clone(), p(&b, &b2)), (one.neg(), p(&bb, &bb2))]));
        rels.push(Relation::monomial(field, p(&a, &ab2)));
        rels.push(Relation::monomial(field, p(&ab, &a2)));
        rels.push(Relation::monomial(field, p(&b, &bb2)));
        rels.push(Relation::monomial(field, p(&bb, &b2)));
    }
    let c = BoundAlgebra::build(Presentation::new("BM1", quiver.clone(), rels, field).with_jpower(3)).unwrap();
    let block = |lo: usize| {
        let vs = [lo.to_string(), (lo + 1).to_string()];
        let labels = names(lo);
        let bq = Quiver::build(vs.iter().cloned(), labels.iter().map(|l| (l.clone(), vs[0].clone(), vs[1].clone())))
            .unwrap();
        let alg = BoundAlgebra::build(Presentation::new(&format!("K{lo}"), bq, vec![], field)).unwrap();
        Block {
            algebra: alg,
            vertices: vec![lo - 1, lo],
            arrows: labels.iter().map(|l| quiver.arrow_index(l).unwrap()).collect(),
        }
    };
    let connectors = [(2, 0, 1), (4, 1, 0)]
        .iter()
        .flat_map(|&(i, fb, tb)| {
            names(i).into_iter().map(move |l| (l, fb, tb)).collect::<Vec<_>>()
        })
        .map(|(l, fb, tb)| Connector { arrow: quiver.arrow_index(&l).unwrap(), from_block: fb, to_block: tb })
        .collect();
    GluedAlgebra { c, blocks: vec![block(1), block(3)], connectors, mode: IdealMode::Given, params: vec![] }
}

/// Vertex labels of C_{p,q}: c_{m+1}, …, c_1, c_0, a_1..a_3, b_1..b_3.
fn cpq_chain(m: usize, field: FieldSpec) -> Arc<BoundAlgebra> {
    let vs: Vec<String> = (1..=m + 1).rev().map(|i| format!("c{i}")).collect();
    let arrows: Vec<(String, String, String)> =
        (2..=m + 1).rev().map(|i| (format!("gamma{i}"), format!("c{i}"), format!("c{}", i - 1))).collect();
    let quiver = Quiver::build(vs, arrows).unwrap();
    let rels = (2..=m)
        .rev()
        .map(|i| {
            let p = quiver.path_from_labels(&[format!("gamma{}", i + 1), format!("gamma{i}")]).unwrap();
            Relation::monomial(field, p)
        })
        .collect();
    BoundAlgebra::build(Presentation::new("chain", quiver, rels, field)).unwrap()
}

/// B_{p,q}: the two doubled 4-cycles through c_0.
fn cpq_block(p: &Scalar, field: FieldSpec) -> Arc<BoundAlgebra> {
    let vs = ["c0", "a1", "a2", "a3", "b1", "b2", "b3"];
    let cyc = |x: &str, i: usize| -> String {
        if i == 0 || i == 4 {
            "c0".into()
        } else {
            format!("{x}{i}")
        }
    };
    let mut arrows = Vec::new();
    for (name, v) in [("alpha", "a"), ("beta", "b")] {
        for i in 0..4 {
            for suffix in ["", "p"] {
                arrows.push((format!("{name}{i}{suffix}"), cyc(v, i), cyc(v, i + 1)));
            }
        }
    }
    let quiver = Quiver::build(vs, arrows).unwrap();
    let one = field.one();
    let path = |x: String, y: String| quiver.path_from_labels(&[x, y]).unwrap();
    let mut rels = Vec::new();
    for name in ["alpha", "beta"] {
        for i in 0..4 {
            let j = (i + 1) % 4;
            rels.push(Relation::monomial(field, path(format!("{name}{i}"), format!("{name}{j}"))));
            rels.push(Relation::monomial(field, path(format!("{name}{i}p"), format!("{name}{j}p"))));
        }
    }
    for name in ["alpha", "beta"] {
        for i in 0..4 {
            let j = (i + 1) % 4;
            rels.push(Relation::new(vec![
                (one.clone(), path(format!("{name}{i}p"), format!("{name}{j}"))),
                (one.neg(), path(format!("{name}{i}"), format!("{name}{j}p"))),
            ]));
        }
    }
    let l = |s: &str| s.to_string();
    rels.push(Relation::monomial(field, path(l("alpha3"), l("beta0"))));
    rels.push(Relation::monomial(field, path(l("alpha3p"), l("beta0p"))));
    rels.push(Relation::monomial(field, path(l("beta3"), l("alpha0"))));
    rels.push(Relation::monomial(field, path(l("beta3p"), l("alpha0p"))));
    rels.push(Relation::new(vec![(one.clone(), path(l("alpha3p"), l("beta0"))), (one.neg(), path(l("alpha3"), l("beta0p")))]));
    rels.push(Relation::new(vec![(one.clone(), path(l("beta3p"), l("alpha0"))), (p.neg(), path(l("beta3"), l("alpha0p")))]));
    BoundAlgebra::build(Presentation::new("B", quiver, rels, field)).unwrap()
}

/// The algebra C_{p,q} with chain length m.
pub fn build_cpq(m: usize, p: &Scalar, q: &Scalar, field: FieldSpec) -> Result<GluedAlgebra, GlueError> {
    if m < 1 {
        return Err(GlueError::Degenerate("m must be at least 1".into()));
    }
    for (n, x) in [("p", p), ("q", q)] {
        if !field.contains(x) {
            return Err(GlueError::Degenerate(format!("{n} is not in {field}")));
        }
        if x.is_zero() || x.is_one() {
            return Err(GlueError::Degenerate(format!("{n} = {x}")));
        }
    }
    let one = field.one();
    let extra = vec![
        LabelRelation::new(vec![(one.clone(), vec!["gamma1", "alpha0"]), (q.neg(), vec!["gamma1", "alpha0p"])]),
        LabelRelation::new(vec![(one.clone(), vec!["gamma1", "beta0p"]), (one.neg(), vec!["gamma1", "beta0"])]),
    ];
    let spec = GlueSpec {
        name: format!("C(m={m},p={p},q={q})"),
        a: cpq_chain(m, field),
        b: cpq_block(p, field),
        forward: vec![("gamma1".into(), "c1".into(), "c0".into())],
        backward: vec![],
        mode: IdealMode::ExtendedIdeal(extra),
    };
    let mut g = glue(&spec)?;
    g.params = vec![("m".into(), field.from_i64(m as i64)), ("p".into(), p.clone()), ("q".into(), q.clone())];
    Ok(g)
}

impl GluedAlgebra {
    pub fn param(&self, name: &str) -> Option<&Scalar> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

/// The module families of C_{p,q}. Indices i run over 1..=3 for the
/// cycle families and 0..=3 for the chain families, where index 0 means
/// the c_0-centred member.
#[derive(Clone, Debug, PartialEq)]
pub enum CpqModule {
    M { i: usize, lambda: Scalar, n: usize },
    MPrime { i: usize, lambda: Scalar, n: usize },
    N { i: usize, lambda: Scalar, n: usize },
    NPrime { i: usize, lambda: Scalar, n: usize },
    M0 { lambda: Scalar, mu: Scalar, n: usize },
    M0Prime { lambda: Scalar, mu: Scalar, n: usize },
    /// M_{i,n}: k^n → k^{n+1} by (1,0)ᵗ and (0,1)ᵗ.
    MChain { i: usize, n: usize },
    /// M̄_{i,n}: k^{n+1} → k^n by (1,0) and (0,1).
    MBar { i: usize, n: usize },
    /// N_{0,n} is M_{0,n}.
    NChain { i: usize, n: usize },
    /// N̄_{0,n} is M̄_{0,n} with T_{α'₀} scaled by 1/p.
    NBar { i: usize, n: usize },
    Simple(String),
}

impl std::fmt::Display for CpqModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CpqModule::M { i, lambda, n } => write!(f, "M[{i},{lambda},{n}]"),
            CpqModule::MPrime { i, lambda, n } => write!(f, "M'[{i},{lambda},{n}]"),
            CpqModule::N { i, lambda, n } => write!(f, "N[{i},{lambda},{n}]"),
            CpqModule::NPrime { i, lambda, n } => write!(f, "N'[{i},{lambda},{n}]"),
            CpqModule::M0 { lambda, mu, n } => write!(f, "M[0,{lambda},{mu},{n}]"),
            CpqModule::M0Prime { lambda, mu, n } => write!(f, "M'[0,{lambda},{mu},{n}]"),
            CpqModule::MChain { i, n } => write!(f, "M[{i};{n}]"),
            CpqModule::MBar { i, n } => write!(f, "Mbar[{i};{n}]"),
            CpqModule::NChain { i, n } => write!(f, "N[{i};{n}]"),
            CpqModule::NBar { i, n } => write!(f, "Nbar[{i};{n}]"),
            CpqModule::Simple(v) => write!(f, "S[{v}]"),
        }
    }
}

fn jordan(field: FieldSpec, lambda: &Scalar, n: usize) -> Matrix {
    let mut m = Matrix::identity(field, n).scale(lambda);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, field.one());
    }
    m
}

/// [I; 0] or [0; I] as (n+1) × n, or their transposes.
fn injection(field: FieldSpec, n: usize, top: bool) -> Matrix {
    let mut m = Matrix::zeros(field, n + 1, n);
    for i in 0..n {
        m.set(if top { i } else { i + 1 }, i, field.one());
    }
    m
}

/// Builds a module of C_{p,q}.
pub fn cpq_family(g: &GluedAlgebra, which: &CpqModule) -> Result<Representation, GlueError> {
    let c = &g.c;
    let f = c.field();
    let q = c.quiver();
    let mut dims = vec![0usize; q.vertex_count()];
    let mut set: Vec<(String, Matrix)> = Vec::new();
    let vertex = |x: &str, i: usize| -> String {
        if i == 0 || i == 4 {
            "c0".into()
        } else {
            format!("{x}{i}")
        }
    };
    let idx = |l: &str| q.vertex_index(l).map_err(GlueError::from);
    let bad = |s: &str| GlueError::InvalidFamily(s.to_string());
    let sign = |i: usize| if i % 2 == 1 { f.one().neg() } else { f.one() };
    let check_i = |i: usize, lo: usize| if (lo..=3).contains(&i) { Ok(()) } else { Err(bad(&format!("index {i} out of range"))) };
    match which {
        CpqModule::M { i, lambda, n } | CpqModule::MPrime { i, lambda, n } | CpqModule::N { i, lambda, n } | CpqModule::NPrime { i, lambda, n } => {
            check_i(*i, 1)?;
            let (v, arrow) = match which {
                CpqModule::M { .. } | CpqModule::MPrime { .. } => ("a", "alpha"),
                _ => ("b", "beta"),
            };
            let prime = matches!(which, CpqModule::MPrime { .. } | CpqModule::NPrime { .. });
            dims[idx(&vertex(v, *i))?] = *n;
            dims[idx(&vertex(v, i + 1))?] = *n;
            let j = jordan(f, lambda, *n).scale(&sign(*i));
            let id = Matrix::identity(f, *n);
            let (x, y) = if prime { (id, j) } else { (j, id) };
            set.push((format!("{arrow}{i}"), x));
            set.push((format!("{arrow}{i}p"), y));
        }
        CpqModule::M0 { lambda, mu, n } | CpqModule::M0Prime { lambda, mu, n } => {
            for v in ["c0", "a1", "b1"] {
                dims[idx(v)?] = *n;
            }
            let (jl, jm) = (jordan(f, lambda, *n), jordan(f, mu, *n));
            let id = Matrix::identity(f, *n);
            if matches!(which, CpqModule::M0 { .. }) {
                set.push(("alpha0".into(), jl));
                set.push(("alpha0p".into(), id.clone()));
                set.push(("beta0".into(), jm));
                set.push(("beta0p".into(), id));
            } else {
                set.push(("alpha0".into(), id.clone()));
                set.push(("alpha0p".into(), jl));
                set.push(("beta0".into(), id));
                set.push(("beta0p".into(), jm));
            }
        }
        CpqModule::MChain { i, n } | CpqModule::NChain { i, n } | CpqModule::MBar { i, n } | CpqModule::NBar { i, n } => {
            check_i(*i, 0)?;
            let bar = matches!(which, CpqModule::MBar { .. } | CpqModule::NBar { .. });
            let (s_dim, t_dim) = if bar { (n + 1, *n) } else { (*n, n + 1) };
            let mk = |top: bool| if bar { injection(f, *n, top).transpose() } else { injection(f, *n, top) };
            if *i == 0 {
                dims[idx("c0")?] = s_dim;
                dims[idx("a1")?] = t_dim;
                dims[idx("b1")?] = t_dim;
                let mut a0p = mk(false);
                if matches!(which, CpqModule::NBar { .. }) {
                    let p = g.param("p").ok_or_else(|| bad("N̄[0;n] needs the parameter p"))?;
                    a0p = a0p.scale(&p.inv().ok_or_else(|| bad("p = 0"))?);
                }
                set.push(("alpha0".into(), mk(true)));
                set.push(("alpha0p".into(), a0p));
                set.push(("beta0".into(), mk(true)));
                set.push(("beta0p".into(), mk(false)));
            } else {
                let (v, arrow) = match which {
                    CpqModule::MChain { .. } | CpqModule::MBar { .. } => ("a", "alpha"),
                    _ => ("b", "beta"),
                };
                dims[idx(&vertex(v, *i))?] = s_dim;
                dims[idx(&vertex(v, i + 1))?] = t_dim;
                set.push((format!("{arrow}{i}"), mk(true)));
                set.push((format!("{arrow}{i}p"), mk(false)));
            }
        }
        CpqModule::Simple(v) => {
            dims[idx(v)?] = 1;
        }
    }
    let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
    for (l, m) in set {
        maps[q.arrow_index(&l)?] = m;
    }
    Ok(Representation::new(c, dims, maps)?)
}

/// The family members sampled for the 𝒱 part of the standard suite.
pub fn cpq_v_sample(lambdas: &[Scalar], n_max: usize, field: FieldSpec) -> Vec<CpqModule> {
    let zero = field.zero();
    let mut out = Vec::new();
    for n in 1..=n_max {
        for lambda in lambdas {
            for i in 1..=3 {
                out.push(CpqModule::M { i, lambda: lambda.clone(), n });
                out.push(CpqModule::N { i, lambda: lambda.clone(), n });
            }
            for mu in lambdas {
                out.push(CpqModule::M0 { lambda: lambda.clone(), mu: mu.clone(), n });
            }
        }
        for i in 1..=3 {
            out.push(CpqModule::MPrime { i, lambda: zero.clone(), n });
            out.push(CpqModule::NPrime { i, lambda: zero.clone(), n });
        }
        out.push(CpqModule::M0Prime { lambda: zero.clone(), mu: zero.clone(), n });
    }
    for n in 0..=n_max {
        for i in 0..=3 {
            out.push(CpqModule::MChain { i, n });
            out.push(CpqModule::MBar { i, n });
        }
        for i in 1..=3 {
            out.push(CpqModule::NChain { i, n });
            out.push(CpqModule::NBar { i, n });
        }
    }
    out
}

/// One identity of the syzygy table: Ω(lhs) ≅ ⊕ rhs.
#[derive(Clone, Debug)]
pub struct SyzygyIdentity {
    pub name: &'static str,
    pub lhs: CpqModule,
    pub rhs: Vec<CpqModule>,
}

/// All table identities for the sampled parameters.
pub fn cpq_syzygy_identities(p: &Scalar, q: &Scalar, lambdas: &[Scalar], n_max: usize, field: FieldSpec) -> Vec<SyzygyIdentity> {
    use CpqModule::*;
    let zero = field.zero();
    let one = field.one();
    let mut out = Vec::new();
    let id = |name, lhs, rhs| SyzygyIdentity { name, lhs, rhs };
    for n in 1..=n_max {
        for l in lambdas {
            let l = l.clone();
            out.push(id("Ω(M[1,λ,n]) = M[2,λ,n]", M { i: 1, lambda: l.clone(), n }, vec![M { i: 2, lambda: l.clone(), n }]));
            out.push(id("Ω(M[2,λ,n]) = M[3,λ,n]", M { i: 2, lambda: l.clone(), n }, vec![M { i: 3, lambda: l.clone(), n }]));
            out.push(id("Ω(M[3,λ,n]) = M[0,λ,λ,n]", M { i: 3, lambda: l.clone(), n }, vec![M0 { lambda: l.clone(), mu: l.clone(), n }]));
            for mu in lambdas {
                out.push(id(
                    "Ω(M[0,λ,μ,n]) = M[1,λ,n] ⊕ N[1,μ,n]",
                    M0 { lambda: l.clone(), mu: mu.clone(), n },
                    vec![M { i: 1, lambda: l.clone(), n }, N { i: 1, lambda: mu.clone(), n }],
                ));
            }
            out.push(id("Ω(N[1,λ,n]) = N[2,λ,n]", N { i: 1, lambda: l.clone(), n }, vec![N { i: 2, lambda: l.clone(), n }]));
            out.push(id("Ω(N[2,λ,n]) = N[3,λ,n]", N { i: 2, lambda: l.clone(), n }, vec![N { i: 3, lambda: l.clone(), n }]));
            out.push(id(
                "Ω(N[3,λ,n]) = M[0,pλ,λ,n]",
                N { i: 3, lambda: l.clone(), n },
                vec![M0 { lambda: p.mul(&l), mu: l.clone(), n }],
            ));
            if !l.is_zero() {
                let inv = l.inv().unwrap();
                for i in 1..=3 {
                    out.push(id("M'[i,λ,n] = M[i,1/λ,n]", MPrime { i, lambda: l.clone(), n }, vec![M { i, lambda: inv.clone(), n }]));
                    out.push(id("N'[i,λ,n] = N[i,1/λ,n]", NPrime { i, lambda: l.clone(), n }, vec![N { i, lambda: inv.clone(), n }]));
                }
                for mu in lambdas.iter().filter(|m| !m.is_zero()) {
                    out.push(id(
                        "M'[0,λ,μ,n] = M[0,1/λ,1/μ,n]",
                        M0Prime { lambda: l.clone(), mu: mu.clone(), n },
                        vec![M0 { lambda: inv.clone(), mu: mu.inv().unwrap(), n }],
                    ));
                }
            }
        }
        let z = || zero.clone();
        out.push(id("Ω(M'[1,0,n]) = M'[2,0,n]", MPrime { i: 1, lambda: z(), n }, vec![MPrime { i: 2, lambda: z(), n }]));
        out.push(id("Ω(M'[2,0,n]) = M'[3,0,n]", MPrime { i: 2, lambda: z(), n }, vec![MPrime { i: 3, lambda: z(), n }]));
        out.push(id("Ω(M'[3,0,n]) = M'[0,0,0,n]", MPrime { i: 3, lambda: z(), n }, vec![M0Prime { lambda: z(), mu: z(), n }]));
        out.push(id(
            "Ω(M'[0,0,0,n]) = M'[1,0,n] ⊕ N'[1,0,n]",
            M0Prime { lambda: z(), mu: z(), n },
            vec![MPrime { i: 1, lambda: z(), n }, NPrime { i: 1, lambda: z(), n }],
        ));
        out.push(id("Ω(N'[1,0,n]) = N'[2,0,n]", NPrime { i: 1, lambda: z(), n }, vec![NPrime { i: 2, lambda: z(), n }]));
        out.push(id("Ω(N'[2,0,n]) = N'[3,0,n]", NPrime { i: 2, lambda: z(), n }, vec![NPrime { i: 3, lambda: z(), n }]));
        out.push(id("Ω(N'[3,0,n]) = M'[0,0,0,n]", NPrime { i: 3, lambda: z(), n }, vec![M0Prime { lambda: z(), mu: z(), n }]));
        // Chain families, n ≥ 1.
        out.push(id("Ω(M[1;n]) = M[2;n-1]", MChain { i: 1, n }, vec![MChain { i: 2, n: n - 1 }]));
        out.push(id("Ω(M[2;n]) = M[3;n-1]", MChain { i: 2, n }, vec![MChain { i: 3, n: n - 1 }]));
        out.push(id("Ω(M[3;n]) = M[0;n-1]", MChain { i: 3, n }, vec![MChain { i: 0, n: n - 1 }]));
        out.push(id("Ω(M[0;n]) = M[1;n-1] ⊕ N[1;n-1]", MChain { i: 0, n }, vec![MChain { i: 1, n: n - 1 }, NChain { i: 1, n: n - 1 }]));
        out.push(id("Ω(N[1;n]) = N[2;n-1]", NChain { i: 1, n }, vec![NChain { i: 2, n: n - 1 }]));
        out.push(id("Ω(N[2;n]) = N[3;n-1]", NChain { i: 2, n }, vec![NChain { i: 3, n: n - 1 }]));
        out.push(id("Ω(N[3;n]) = N[0;n-1]", NChain { i: 3, n }, vec![MChain { i: 0, n: n - 1 }]));
    }
    for n in 0..=n_max {
        out.push(id("Ω(Mbar[1;n]) = Mbar[2;n+1]", MBar { i: 1, n }, vec![MBar { i: 2, n: n + 1 }]));
        out.push(id("Ω(Mbar[2;n]) = Mbar[3;n+1]", MBar { i: 2, n }, vec![MBar { i: 3, n: n + 1 }]));
        out.push(id("Ω(Mbar[3;n]) = Mbar[0;n+1]", MBar { i: 3, n }, vec![MBar { i: 0, n: n + 1 }]));
        out.push(id("Ω(Mbar[0;n]) = Mbar[1;n+1] ⊕ Nbar[1;n+1]", MBar { i: 0, n }, vec![MBar { i: 1, n: n + 1 }, NBar { i: 1, n: n + 1 }]));
        out.push(id("Ω(Nbar[1;n]) = Nbar[2;n+1]", NBar { i: 1, n }, vec![NBar { i: 2, n: n + 1 }]));
        out.push(id("Ω(Nbar[2;n]) = Nbar[3;n+1]", NBar { i: 2, n }, vec![NBar { i: 3, n: n + 1 }]));
        out.push(id("Ω(Nbar[3;n]) = Nbar[0;n+1]", NBar { i: 3, n }, vec![NBar { i: 0, n: n + 1 }]));
        out.push(id("Ω(Nbar[0;n]) = Mbar[1;n+1] ⊕ Nbar[1;n+1]", NBar { i: 0, n }, vec![MBar { i: 1, n: n + 1 }, NBar { i: 1, n: n + 1 }]));
    }
    let s = |v: &str| Simple(v.to_string());
    let z = || zero.clone();
    out.push(id("M[1;0] = Mbar[2;0] = S[a2]", MChain { i: 1, n: 0 }, vec![s("a2")]));
    out.push(id("M[1;0] = Mbar[2;0] = S[a2]", MBar { i: 2, n: 0 }, vec![s("a2")]));
    out.push(id("M[2;0] = Mbar[3;0] = S[a3]", MChain { i: 2, n: 0 }, vec![s("a3")]));
    out.push(id("M[2;0] = Mbar[3;0] = S[a3]", MBar { i: 3, n: 0 }, vec![s("a3")]));
    out.push(id("M[3;0] = Mbar[0;0] = S[c0]", MChain { i: 3, n: 0 }, vec![s("c0")]));
    out.push(id("M[3;0] = Mbar[0;0] = S[c0]", MBar { i: 0, n: 0 }, vec![s("c0")]));
    out.push(id("N[1;0] = Nbar[2;0] = S[b2]", NChain { i: 1, n: 0 }, vec![s("b2")]));
    out.push(id("N[1;0] = Nbar[2;0] = S[b2]", NBar { i: 2, n: 0 }, vec![s("b2")]));
    out.push(id("N[2;0] = Nbar[3;0] = S[b3]", NChain { i: 2, n: 0 }, vec![s("b3")]));
    out.push(id("N[2;0] = Nbar[3;0] = S[b3]", NBar { i: 3, n: 0 }, vec![s("b3")]));
    out.push(id("N[3;0] = S[c0]", NChain { i: 3, n: 0 }, vec![s("c0")]));
    out.push(id("M[0;0] = Mbar[1;0] ⊕ Nbar[1;0] = S[a1] ⊕ S[b1]", MChain { i: 0, n: 0 }, vec![s("a1"), s("b1")]));
    out.push(id("M[0;0] = Mbar[1;0] ⊕ Nbar[1;0] = S[a1] ⊕ S[b1]", MChain { i: 0, n: 0 }, vec![MBar { i: 1, n: 0 }, NBar { i: 1, n: 0 }]));
    let _ = z;
    out.push(id("Ω(S[c1]) = M[0,q,1,1]", s("c1"), vec![M0 { lambda: q.clone(), mu: one, n: 1 }]));
    out
}

/// Whether an identity is an equation between modules (rather than a
/// syzygy formula).
fn is_plain_identity(name: &str) -> bool {
    !name.starts_with('Ω')
}

/// Verifies every syzygy-table identity for the sampled parameters.
pub fn verify_cpq_syzygy_table(
    g: &GluedAlgebra,
    p: &Scalar,
    q: &Scalar,
    lambdas: &[Scalar],
    n_max: usize,
) -> Result<Report, GlueError> {
    let mut report = Report::new("cpq-syzygy-table");
    let f = g.c.field();
    report.note(format!("p = {p}, q = {q}, λ ∈ {{{}}}, n ≤ {n_max}, field {f}", lambdas.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
    for ident in cpq_syzygy_identities(p, q, lambdas, n_max, f) {
        let lhs = cpq_family(g, &ident.lhs)?;
        let lhs_mod = if is_plain_identity(ident.name) { lhs } else { syzygy(&lhs) };
        let parts: Vec<Representation> = ident.rhs.iter().map(|x| cpq_family(g, x)).collect::<Result<_, _>>()?;
        let rhs = Representation::direct_sum_all(&g.c, parts.iter())?;
        let ok = crate::decomp::is_isomorphic(&lhs_mod, &rhs).map_err(|e| GlueError::InvalidFamily(e.to_string()))?;
        let rhs_s = ident.rhs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ⊕ ");
        let line = format!("{} [{} ↦ {}]", ident.name, ident.lhs, rhs_s);
        if !ok {
            report.witness(format!("{} has dims {:?}, expected {:?}", ident.lhs, lhs_mod.dims(), rhs.dims()));
        }
        report.record(Status::from_bool(ok), line);
    }
    Ok(report)
}

/// The 𝒱 sample as modules, in sample order.
pub fn cpq_v_modules(g: &GluedAlgebra, lambdas: &[Scalar], n_max: usize) -> Result<Vec<(CpqModule, Representation)>, GlueError> {
    cpq_v_sample(lambdas, n_max, g.c.field())
        .into_iter()
        .map(|k| cpq_family(g, &k).map(|m| (k, m)))
        .collect()
}

fn phi_each(
    mods: &[(String, Representation)],
    reg: &mut IsoRegistry,
    limit: usize,
    report: &mut Report,
) -> Result<(), IgusaError> {
    let mut worst: Option<(usize, &str)> = None;
    let mut inexact = 0;
    for (name, m) in mods {
        let r = phi(m, reg)?;
        inexact += usize::from(!r.exact);
        if r.value > limit {
            report.witness(format!("φ({name}) = {}", r.value));
        }
        if worst.is_none_or(|w| r.value > w.0) {
            worst = Some((r.value, name));
        }
    }
    if let Some((v, name)) = worst {
        report.record(
            Status::from_bool(v <= limit),
            format!("largest single φ over {} modules: {v} at {name} (≤ {limit}); {inexact} horizon-limited", mods.len()),
        );
    }
    Ok(())
}

/// φ(⊕ 𝒱-sample) = 4 with no sampled module above 4.
pub fn cpq_claim1_report(g: &GluedAlgebra, lambdas: &[Scalar], n_max: usize, reg: &mut IsoRegistry) -> Result<Report, GlueError> {
    let mut report = Report::new("cpq-claim1");
    let mods = cpq_v_modules(g, lambdas, n_max)?;
    let to_err = |e: IgusaError| GlueError::InvalidFamily(e.to_string());
    let reps: Vec<Representation> = mods.iter().map(|x| x.1.clone()).collect();
    let lb = phi_lower_bound(&reps, reg).map_err(to_err)?;
    report.note(format!("sample size {}, ranks {:?}", mods.len(), &lb.ranks[..lb.ranks.len().min(8)]));
    report.record(Status::from_bool(lb.value == 4), format!("φ(⊕ 𝒱-sample) = {} (expected 4)", lb.value));
    let named: Vec<(String, Representation)> = mods.into_iter().map(|(k, m)| (k.to_string(), m)).collect();
    phi_each(&named, reg, 4, &mut report).map_err(to_err)?;
    Ok(report)
}

/// The standard suite: 𝒱-sample, the syzygies Ω^i S_{c1} for i ≤ 4 and
/// the simples.
pub fn cpq_standard_suite(g: &GluedAlgebra, lambdas: &[Scalar], n_max: usize) -> Result<Vec<(String, Representation)>, GlueError> {
    let mut out: Vec<(String, Representation)> =
        cpq_v_modules(g, lambdas, n_max)?.into_iter().map(|(k, m)| (k.to_string(), m)).collect();
    let c1 = g.c.quiver().vertex_index("c1")?;
    for (i, m) in crate::homology::syzygy_chain(&simple(&g.c, c1), 4).into_iter().enumerate() {
        if !m.is_zero() {
            out.push((format!("Ω^{i}(S[c1])"), m));
        }
    }
    for v in 0..g.c.vertex_count() {
        out.push((format!("S[{}]", g.c.quiver().vertex_label(v)), simple(&g.c, v)));
    }
    Ok(out)
}

/// φ lower bound over the standard suite equals 5 with a witness.
pub fn cpq_claim3_report(g: &GluedAlgebra, lambdas: &[Scalar], n_max: usize, reg: &mut IsoRegistry) -> Result<Report, GlueError> {
    let mut report = Report::new("cpq-claim3");
    let to_err = |e: IgusaError| GlueError::InvalidFamily(e.to_string());
    let suite = cpq_standard_suite(g, lambdas, n_max)?;
    let reps: Vec<Representation> = suite.iter().map(|x| x.1.clone()).collect();
    let lb = phi_lower_bound(&reps, reg).map_err(to_err)?;
    report.note(format!("suite size {}, ranks {:?}", suite.len(), &lb.ranks[..lb.ranks.len().min(8)]));
    report.record(Status::from_bool(lb.value == 5), format!("φ(⊕ suite) = {} (expected 5)", lb.value));
    // Smallest prefix of the chain-first ordering that attains the bound.
    let mut order: Vec<usize> = (0..suite.len()).filter(|&i| suite[i].0.contains("c1")).collect();
    order.extend((0..suite.len()).filter(|&i| !suite[i].0.contains("c1")));
    let mut gens = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        gens.extend(crate::igusa::add_classes(&suite[i].1, reg).map_err(to_err)?);
        let r = crate::igusa::phi_of_classes(&gens, reg, crate::igusa::DEFAULT_HORIZON).map_err(to_err)?;
        if r.value == lb.value {
            let names: Vec<&str> = order[..=k].iter().map(|&j| suite[j].0.as_str()).collect();
            report.witness(format!("φ = {} attained by ⊕ of {} modules: {}", r.value, names.len(), names.join(", ")));
            break;
        }
    }
    phi_each(&suite, reg, 5, &mut report).map_err(to_err)?;
    Ok(report)
}

/// id(S_{c1}) = m − 1 for each m.
pub fn cpq_injective_report(ms: &[usize], p: &Scalar, q: &Scalar, field: FieldSpec) -> Result<Report, GlueError> {
    let mut report = Report::new("cpq-id-s-c1");
    for &m in ms {
        let g = build_cpq(m, p, q, field)?;
        let s = simple(&g.c, g.c.quiver().vertex_index("c1")?);
        let id = crate::homology::inj_dim(&s, 4 * m + 8).map_err(|e| GlueError::InvalidFamily(e.to_string()))?;
        let ok = id == DimResult::Finite(m - 1);
        report.record(Status::from_bool(ok), format!("m = {m}: id(S[c1]) = {id} (expected {})", m - 1));
    }
    Ok(report)
}

/// φ lower bound of the opposite algebra's default suite, against a
/// threshold.
pub fn cpq_opposite_report(m: usize, p: &Scalar, q: &Scalar, field: FieldSpec, threshold: usize) -> Result<Report, GlueError> {
    let mut report = Report::new("cpq-opposite");
    let g = build_cpq(m, p, q, field)?;
    let op = Arc::new(g.c.opposite()?);
    let mut reg = IsoRegistry::new(&op);
    let lb = phi_lower_bound(&crate::igusa::default_suite(&op), &mut reg).map_err(|e| GlueError::InvalidFamily(e.to_string()))?;
    report.note(format!("m = {m}, ranks {:?}", &lb.ranks[..lb.ranks.len().min(12)]));
    report.record(
        Status::from_bool(lb.value >= threshold && lb.value > 5),
        format!("φ lower bound of C^op suite = {} (needs ≥ {threshold} and > 5)", lb.value),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::inj_dim;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn fix5_dimensions_and_hypotheses() {
        let g = build_fix5(q());
        assert_eq!(g.c.dim(), 8);
        assert_eq!(g.c.vertex_count(), 4);
        let h = check_hypotheses(&g, 10).unwrap();
        assert!(h.h1 && h.h2 && h.h3);
        assert_eq!(h.h4, H4Status::Holds);
    }

    #[test]
    fn block_algebra_without_connectors() {
        let a = Quiver::from_strs(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let b = Quiver::from_strs(&["3"], &[]).unwrap();
        let spec = GlueSpec {
            name: "AxB".into(),
            a: BoundAlgebra::build(Presentation::new("A", a, vec![], q())).unwrap(),
            b: BoundAlgebra::build(Presentation::new("B", b, vec![], q())).unwrap(),
            forward: vec![],
            backward: vec![],
            mode: IdealMode::EqualityIdeal,
        };
        let g = glue(&spec).unwrap();
        assert_eq!(g.c.dim(), 4);
        let h = check_hypotheses(&g, 5).unwrap();
        assert!(h.h1 && h.h2 && h.h3 && h.h4 == H4Status::Holds);
    }

    #[test]
    fn connector_errors() {
        let g = build_fix5(q());
        let spec = GlueSpec {
            name: "bad".into(),
            a: g.blocks[0].algebra.clone(),
            b: g.blocks[1].algebra.clone(),
            forward: vec![("x".into(), "3".into(), "4".into())],
            backward: vec![],
            mode: IdealMode::EqualityIdeal,
        };
        assert!(matches!(glue(&spec), Err(GlueError::BadConnector { .. })));
        let spec2 = GlueSpec { forward: vec![], a: g.blocks[0].algebra.clone(), b: g.blocks[0].algebra.clone(), ..spec };
        assert!(matches!(glue(&spec2), Err(GlueError::LabelCollision(_))));
    }

    #[test]
    fn restriction_and_inflation() {
        let g = build_fix5(q());
        let s1 = simple(&g.c, 0);
        assert_eq!(g.restrict(&s1, 0).unwrap().dims(), &[1, 0]);
        assert!(g.restrict(&s1, 1).unwrap().is_zero());
        let back = g.inflate(&g.restrict(&s1, 0).unwrap(), 0).unwrap();
        assert_eq!(back.dims(), s1.dims());
    }

    #[test]
    fn cpq_shape() {
        let f = q();
        let g = build_cpq(2, &f.from_i64(2), &f.from_i64(3), f).unwrap();
        assert_eq!(g.c.vertex_count(), 10);
        assert_eq!(g.c.loewy_bound(), 3);
        let c = &g.c;
        let qv = c.quiver();
        let one = f.one();
        let r = vec![
            (one.clone(), qv.path_from_labels(&["alpha3p", "beta0"]).unwrap()),
            (one.neg(), qv.path_from_labels(&["alpha3", "beta0p"]).unwrap()),
        ];
        assert!(c.normal_form(&r).unwrap().is_empty());
        assert!(build_cpq(2, &f.one(), &f.from_i64(3), f).is_err());
    }

    #[test]
    fn cpq_small_identities() {
        let f = q();
        let (p, qq) = (f.from_i64(2), f.from_i64(3));
        let g = build_cpq(2, &p, &qq, f).unwrap();
        let m1 = cpq_family(&g, &CpqModule::M { i: 1, lambda: f.from_i64(2), n: 1 }).unwrap();
        let m2 = cpq_family(&g, &CpqModule::M { i: 2, lambda: f.from_i64(2), n: 1 }).unwrap();
        assert!(crate::decomp::is_isomorphic(&syzygy(&m1), &m2).unwrap());
        let sc1 = cpq_family(&g, &CpqModule::Simple("c1".into())).unwrap();
        let m0 = cpq_family(&g, &CpqModule::M0 { lambda: qq.clone(), mu: f.one(), n: 1 }).unwrap();
        assert!(crate::decomp::is_isomorphic(&syzygy(&sc1), &m0).unwrap());
        assert!(matches!(inj_dim(&sc1, 20).unwrap(), DimResult::Finite(_)));
    }

    #[test]
    fn bm1_fails_h3() {
        let g = build_bm1_example(q());
        assert_eq!(g.c.quiver().arrow_count(), 16);
        assert_eq!(g.c.loewy_bound(), 3);
        let h = check_hypotheses(&g, 6).unwrap();
        assert!(h.h1 && h.h2 && !h.h3);
    }

    #[test]
    fn lemma_3_1_on_fix5_simples() {
        let g = build_fix5(q());
        let mods: Vec<Representation> = (0..4).map(|v| simple(&g.c, v)).collect();
        assert_eq!(verify_lemma_3_1(&g, &mods).unwrap().status, Status::Pass);
    }
}
