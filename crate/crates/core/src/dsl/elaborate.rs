use super::ast::*;
use super::parser::parse;
use super::{DslError, Span};
use crate::algebra::{AlgebraError, BoundAlgebra, Presentation, Relation};
use crate::linalg::{FieldSpec, Matrix, Scalar};
use crate::morita::{glue, GlueError, GlueSpec, GluedAlgebra, IdealMode, LabelRelation};
use crate::quiver::{Path, Quiver};
use crate::repmod::Representation;
use std::collections::HashSet;
use std::sync::Arc;

/// Everything declared by a document, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Env {
    /// Parameter values, as rationals.
    pub params: Vec<(String, Scalar)>,
    pub algebras: Vec<(String, Arc<BoundAlgebra>)>,
    pub modules: Vec<(String, Representation)>,
    pub glued: Vec<(String, GluedAlgebra)>,
}

fn find<'a, T>(v: &'a [(String, T)], name: &str) -> Option<&'a T> {
    v.iter().find(|(n, _)| n == name).map(|(_, x)| x)
}

impl Env {
    pub fn algebra(&self, name: &str) -> Option<&Arc<BoundAlgebra>> {
        find(&self.algebras, name)
    }

    pub fn module(&self, name: &str) -> Option<&Representation> {
        find(&self.modules, name)
    }

    pub fn glued(&self, name: &str) -> Option<&GluedAlgebra> {
        find(&self.glued, name)
    }

    pub fn param(&self, name: &str) -> Option<&Scalar> {
        find(&self.params, name)
    }

    fn number(&self, num: &str, den: Option<&str>, field: FieldSpec, span: Span) -> Result<Scalar, DslError> {
        let text = match den {
            Some(d) => format!("{num}/{d}"),
            None => num.to_string(),
        };
        let q = FieldSpec::Rationals
            .parse_scalar(&text)
            .ok_or_else(|| DslError::semantic(span, format!("`{text}` is not a valid number")))?;
        self.in_field(&q, field, span)
    }

    fn in_field(&self, q: &Scalar, field: FieldSpec, span: Span) -> Result<Scalar, DslError> {
        q.as_rat()
            .and_then(|r| field.from_rat(r))
            .ok_or_else(|| DslError::semantic(span, format!("{q} is not an element of {field}")))
    }

    fn atom_scalar(&self, atom: &Atom, field: FieldSpec, span: Span) -> Result<Scalar, DslError> {
        match atom {
            Atom::Num { num, den } => self.number(num, den.as_deref(), field, span),
            Atom::Name(n) => match self.param(&n.text) {
                Some(v) => self.in_field(v, field, n.span),
                None => Err(DslError::semantic(n.span, format!("unknown parameter `{}`", n.text))),
            },
        }
    }

    pub fn scalar(&self, s: &ScalarLit, field: FieldSpec) -> Result<Scalar, DslError> {
        let v = self.atom_scalar(&s.atom, field, s.span)?;
        Ok(if s.negative { v.neg() } else { v })
    }

    /// A term as (coefficient, arrow labels); names in `arrows` are arrows.
    fn term(&self, t: &TermExpr, field: FieldSpec, arrows: &HashSet<&str>) -> Result<(Scalar, Vec<Name>), DslError> {
        let mut c = if t.negative { field.one().neg() } else { field.one() };
        let mut path = Vec::new();
        for f in &t.factors {
            match f {
                Atom::Name(n) if arrows.contains(n.text.as_str()) => path.push(n.clone()),
                Atom::Name(n) if self.param(&n.text).is_none() => {
                    return Err(DslError::semantic(n.span, format!("unknown arrow or parameter `{}`", n.text)));
                }
                _ => c = c.mul(&self.atom_scalar(f, field, t.span)?),
            }
        }
        if path.is_empty() {
            return Err(DslError::semantic(t.span, "term has no arrows"));
        }
        Ok((c, path))
    }

    fn path(q: &Quiver, names: &[Name]) -> Result<Path, DslError> {
        let idx: Vec<usize> = names.iter().map(|n| q.arrow_index(&n.text).unwrap()).collect();
        for w in idx.windows(2).zip(names.windows(2)) {
            let (a, b) = (q.arrow(w.0[0]), q.arrow(w.0[1]));
            if a.target != b.source {
                return Err(DslError::semantic(
                    w.1[0].span.to(w.1[1].span),
                    format!(
                        "path mismatch: `{}` ends at `{}` but `{}` starts at `{}`",
                        a.label,
                        q.vertex_label(a.target),
                        b.label,
                        q.vertex_label(b.source)
                    ),
                ));
            }
        }
        Ok(q.path_from_indices(&idx).unwrap())
    }

    fn fresh(&self, n: &Name) -> Result<(), DslError> {
        if self.algebra(&n.text).is_some() || self.module(&n.text).is_some() {
            return Err(DslError::semantic(n.span, format!("`{}` is already declared", n.text)));
        }
        Ok(())
    }

    pub fn add_item(&mut self, item: &Item) -> Result<(), DslError> {
        match item {
            Item::Params(bs) => {
                for (n, v) in bs {
                    let x = self.scalar(v, FieldSpec::Rationals)?;
                    self.params.retain(|(m, _)| *m != n.text);
                    self.params.push((n.text.clone(), x));
                }
            }
            Item::Algebra(d) => {
                self.fresh(&d.name)?;
                let a = self.build_algebra(d)?;
                self.algebras.push((d.name.text.clone(), a));
            }
            Item::Module(d) => {
                self.fresh(&d.name)?;
                let m = self.build_module(d)?;
                self.modules.push((d.name.text.clone(), m));
            }
            Item::Glue(d) => {
                self.fresh(&d.name)?;
                let g = self.build_glue(d)?;
                self.algebras.push((d.name.text.clone(), g.c.clone()));
                self.glued.push((d.name.text.clone(), g));
            }
        }
        Ok(())
    }

    pub fn presentation(&self, d: &AlgebraDecl) -> Result<Presentation, DslError> {
        let field = match d.field {
            FieldLit::Rationals => FieldSpec::Rationals,
            FieldLit::Prime(p) => FieldSpec::prime(p)
                .ok_or_else(|| DslError::semantic(d.span, format!("{p} is not a prime")))?,
        };
        let mut seen = HashSet::new();
        for v in &d.vertices {
            if !seen.insert(v.text.as_str()) {
                return Err(DslError::semantic(v.span, format!("duplicate vertex `{}`", v.text)));
            }
        }
        let mut labels = HashSet::new();
        for a in &d.arrows {
            for end in [&a.source, &a.target] {
                if !seen.contains(end.text.as_str()) {
                    return Err(DslError::semantic(end.span, format!("unknown vertex `{}` in arrow `{}`", end.text, a.label.text)));
                }
            }
            if !labels.insert(a.label.text.as_str()) {
                return Err(DslError::semantic(a.label.span, format!("duplicate arrow `{}`", a.label.text)));
            }
        }
        let quiver = Quiver::build(
            d.vertices.iter().map(|v| v.text.clone()),
            d.arrows.iter().map(|a| (a.label.text.clone(), a.source.text.clone(), a.target.text.clone())),
        )
        .map_err(|e| DslError::semantic(d.span, e.to_string()))?;
        let mut rels = Vec::new();
        for r in &d.relations {
            let mut terms = Vec::new();
            for t in &r.terms {
                let (c, names) = self.term(t, field, &labels)?;
                terms.push((c, Self::path(&quiver, &names)?));
            }
            rels.push(Relation::new(terms));
        }
        let mut pres = Presentation::new(&d.name.text, quiver, rels, field);
        if let Some(l) = d.truncate {
            pres = pres.with_l_max(l);
        }
        if let Some(k) = d.jpower {
            pres = pres.with_jpower(k);
        }
        Ok(pres)
    }

    fn build_algebra(&self, d: &AlgebraDecl) -> Result<Arc<BoundAlgebra>, DslError> {
        let pres = self.presentation(d)?;
        BoundAlgebra::build(pres).map_err(|e| {
            let span = match &e {
                AlgebraError::RelationTooLong { index, .. }
                | AlgebraError::RelationNotInJ2(index)
                | AlgebraError::RelationEndpoints(index)
                | AlgebraError::EmptyRelation(index)
                | AlgebraError::FieldMismatch(index) => d.relations[*index].span,
                _ => d.span,
            };
            DslError::semantic(span, e.to_string())
        })
    }

    fn build_module(&self, d: &ModuleDecl) -> Result<Representation, DslError> {
        let alg = self
            .algebra(&d.algebra.text)
            .ok_or_else(|| DslError::semantic(d.algebra.span, format!("unknown algebra `{}`", d.algebra.text)))?;
        let q = alg.quiver();
        let f = alg.field();
        if d.dims.len() != q.vertex_count() {
            return Err(DslError::semantic(
                d.span,
                format!("expected {} dimensions, got {}", q.vertex_count(), d.dims.len()),
            ));
        }
        let mut maps: Vec<Option<Matrix>> = vec![None; q.arrow_count()];
        for m in &d.maps {
            let i = q
                .arrow_index(&m.arrow.text)
                .map_err(|_| DslError::semantic(m.arrow.span, format!("unknown arrow `{}`", m.arrow.text)))?;
            if maps[i].is_some() {
                return Err(DslError::semantic(m.arrow.span, format!("map for `{}` given twice", m.arrow.text)));
            }
            let a = q.arrow(i);
            let (r, c) = (d.dims[a.target], d.dims[a.source]);
            let shape_ok = m.rows.len() == r && m.rows.iter().all(|row| row.len() == c);
            // `[]` stands for any matrix with no entries.
            if !shape_ok && !(r * c == 0 && m.rows.iter().all(Vec::is_empty)) {
                let found_c = m.rows.first().map_or(0, Vec::len);
                return Err(DslError::semantic(
                    m.span,
                    format!("map `{}` has shape {}x{}, expected {r}x{c}", m.arrow.text, m.rows.len(), found_c),
                ));
            }
            let mut x = Matrix::zeros(f, r, c);
            for (ri, row) in m.rows.iter().enumerate() {
                for (ci, s) in row.iter().enumerate() {
                    x.set(ri, ci, self.scalar(s, f)?);
                }
            }
            maps[i] = Some(x);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(i, m)| m.unwrap_or_else(|| Matrix::zeros(f, d.dims[q.arrow(i).target], d.dims[q.arrow(i).source])))
            .collect();
        Representation::new(alg, d.dims.clone(), maps).map_err(|e| DslError::semantic(d.span, e.to_string()))
    }

    fn build_glue(&self, d: &GlueDecl) -> Result<GluedAlgebra, DslError> {
        let get = |n: &Name| {
            self.algebra(&n.text)
                .cloned()
                .ok_or_else(|| DslError::semantic(n.span, format!("unknown algebra `{}`", n.text)))
        };
        let (a, b) = (get(&d.a)?, get(&d.b)?);
        let field = a.field();
        let mut labels: HashSet<&str> = HashSet::new();
        for alg in [&a, &b] {
            labels.extend(alg.quiver().arrows().iter().map(|x| x.label.as_str()));
        }
        labels.extend(d.forward.iter().chain(&d.backward).map(|x| x.label.text.as_str()));
        let mut extra = Vec::new();
        for r in &d.extra {
            let mut terms = Vec::new();
            for t in &r.terms {
                let (c, names) = self.term(t, field, &labels)?;
                terms.push((c, names.into_iter().map(|n| n.text).collect()));
            }
            extra.push(LabelRelation { terms });
        }
        let trip = |x: &ArrowDecl| (x.label.text.clone(), x.source.text.clone(), x.target.text.clone());
        let spec = GlueSpec {
            name: d.name.text.clone(),
            a,
            b,
            forward: d.forward.iter().map(trip).collect(),
            backward: d.backward.iter().map(trip).collect(),
            mode: if extra.is_empty() { IdealMode::EqualityIdeal } else { IdealMode::ExtendedIdeal(extra) },
        };
        glue(&spec).map_err(|e| {
            let span = match &e {
                GlueError::ExtraNotThroughConnector(i) => d.extra[*i].span,
                GlueError::BadConnector { label, .. } => d
                    .forward
                    .iter()
                    .chain(&d.backward)
                    .find(|x| &x.label.text == label)
                    .map_or(d.span, |x| x.label.span),
                _ => d.span,
            };
            DslError::semantic(span, e.to_string())
        })
    }
}

pub fn elaborate(doc: &Document) -> Result<Env, DslError> {
    let mut env = Env::default();
    for item in &doc.items {
        env.add_item(item)?;
    }
    Ok(env)
}

/// The first algebra declared in `text`.
pub fn parse_algebra(text: &str) -> Result<Arc<BoundAlgebra>, DslError> {
    let env = elaborate(&parse(text)?)?;
    env.algebras.into_iter().next().map(|x| x.1).ok_or_else(|| DslError::semantic(Span::default(), "no algebra declared"))
}

/// The first module declared in `text`, read over `algebra` whatever
/// name the declaration uses.
pub fn parse_module(text: &str, algebra: &Arc<BoundAlgebra>) -> Result<Representation, DslError> {
    let doc = parse(text)?;
    let mut env = Env::default();
    for item in &doc.items {
        match item {
            Item::Module(d) => {
                env.algebras.retain(|(n, _)| *n != d.algebra.text);
                env.algebras.push((d.algebra.text.clone(), algebra.clone()));
                return env.build_module(d);
            }
            other => env.add_item(other)?,
        }
    }
    Err(DslError::semantic(Span::default(), "no module declared"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::{indecomposable_projective, simple};

    #[test]
    fn a2_over_gf7() {
        let a = parse_algebra("algebra A over Q(7) { vertices 1 2; arrows a:1->2; relations ; truncate 3 }").unwrap();
        assert_eq!(a.field(), FieldSpec::PrimeField(7));
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn dual_numbers() {
        let a = parse_algebra("algebra D over Q { vertices v; arrows x: v -> v; relations x*x; }").unwrap();
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn path_mismatch_has_position() {
        let e = parse_algebra("algebra A over Q {\n vertices 1 2 3;\n arrows a:1->2, b:1->3;\n relations a*b }").unwrap_err();
        assert_eq!(e.kind, super::super::ErrorKind::Semantic);
        assert_eq!((e.span.line, e.span.col), (4, 12));
        assert!(e.message.contains("path mismatch"));
    }

    #[test]
    fn modules() {
        let src = "algebra A over Q { vertices 1 2; arrows a: 1 -> 2 }\nmodule S1 over A { dims 1 0 }\nmodule P1 over A { dims 1 1; map a = [[1]] }";
        let env = elaborate(&parse(src).unwrap()).unwrap();
        let a = env.algebra("A").unwrap();
        let same = |x: &Representation, y: &Representation| x.dims() == y.dims() && x.maps() == y.maps();
        assert!(same(env.module("S1").unwrap(), &simple(a, 0)));
        assert!(same(env.module("P1").unwrap(), &indecomposable_projective(a, 0)));
        let bad = parse_module("module X over A { dims 1 1; map a = [[1, 2]] }", a).unwrap_err();
        assert!(bad.message.contains("shape"));
    }

    #[test]
    fn params_and_glue() {
        let src = "params q = 3/2;\n\
            algebra A over Q { vertices 1 2; arrows a: 1 -> 2 }\n\
            algebra B over Q { vertices 3 4; arrows b: 3 -> 4, c: 3 -> 4 }\n\
            glue C = A + B { forward g: 2 -> 3; extra g*b - q*g*c }";
        let env = elaborate(&parse(src).unwrap()).unwrap();
        let g = env.glued("C").unwrap();
        assert_eq!(g.c.vertex_count(), 4);
        assert_eq!(env.param("q").unwrap(), &FieldSpec::Rationals.parse_scalar("3/2").unwrap());
        let e = elaborate(&parse("params q = 1/7; algebra A over Q(7) { vertices 1; } module M over A { dims 1 }\n").unwrap());
        assert!(e.is_ok());
    }
}
