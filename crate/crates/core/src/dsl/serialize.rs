use super::ast::*;
use super::lexer::{is_ident_char, is_ident_start};
use super::Span;
use crate::algebra::BoundAlgebra;
use crate::linalg::{FieldSpec, Scalar};
use crate::repmod::Representation;
use std::fmt::{self, Display, Write};

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_ident_start) && cs.all(is_ident_char)
}

fn is_int(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A name where integers are allowed (vertices, declarations).
fn name(n: &Name) -> String {
    if is_ident(&n.text) || is_int(&n.text) {
        n.text.clone()
    } else {
        quoted(&n.text)
    }
}

/// A name inside an expression, where integers mean numbers.
fn expr_name(n: &Name) -> String {
    if is_ident(&n.text) {
        n.text.clone()
    } else {
        quoted(&n.text)
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Num { num, den: None } => write!(f, "{num}"),
            Atom::Num { num, den: Some(d) } => write!(f, "{num}/{d}"),
            Atom::Name(n) => write!(f, "{}", expr_name(n)),
        }
    }
}

impl Display for ScalarLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.negative { "-" } else { "" }, self.atom)
    }
}

impl Display for RelationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            match (i, t.negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let fs: Vec<String> = t.factors.iter().map(|a| a.to_string()).collect();
            f.write_str(&fs.join("*"))?;
        }
        Ok(())
    }
}

fn arrow_list(xs: &[ArrowDecl]) -> String {
    xs.iter().map(|a| format!("{}: {} -> {}", name(&a.label), name(&a.source), name(&a.target))).collect::<Vec<_>>().join(", ")
}

fn relation_list(xs: &[RelationExpr]) -> String {
    xs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",\n    ")
}

impl Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Params(bs) => {
                f.write_str("params")?;
                for (n, v) in bs {
                    write!(f, " {} = {v}", expr_name(n))?;
                }
                f.write_str(";\n")
            }
            Item::Algebra(d) => {
                let field = match d.field {
                    FieldLit::Rationals => "Q".to_string(),
                    FieldLit::Prime(p) => format!("Q({p})"),
                };
                writeln!(f, "algebra {} over {field} {{", name(&d.name))?;
                let vs: Vec<String> = d.vertices.iter().map(name).collect();
                writeln!(f, "  vertices {};", vs.join(" "))?;
                writeln!(f, "  arrows {};", arrow_list(&d.arrows))?;
                writeln!(f, "  relations {};", relation_list(&d.relations))?;
                if let Some(l) = d.truncate {
                    writeln!(f, "  truncate {l};")?;
                }
                if let Some(k) = d.jpower {
                    writeln!(f, "  jpower {k};")?;
                }
                f.write_str("}\n")
            }
            Item::Module(d) => {
                writeln!(f, "module {} over {} {{", name(&d.name), name(&d.algebra))?;
                let ds: Vec<String> = d.dims.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  dims {};", ds.join(" "))?;
                for m in &d.maps {
                    let rows: Vec<String> = m
                        .rows
                        .iter()
                        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                        .collect();
                    writeln!(f, "  map {} = [{}];", expr_name(&m.arrow), rows.join(", "))?;
                }
                f.write_str("}\n")
            }
            Item::Glue(d) => {
                writeln!(f, "glue {} = {} + {} {{", name(&d.name), name(&d.a), name(&d.b))?;
                if !d.forward.is_empty() {
                    writeln!(f, "  forward {};", arrow_list(&d.forward))?;
                }
                if !d.backward.is_empty() {
                    writeln!(f, "  backward {};", arrow_list(&d.backward))?;
                }
                if !d.extra.is_empty() {
                    writeln!(f, "  extra {};", relation_list(&d.extra))?;
                }
                f.write_str("}\n")
            }
        }
    }
}

impl Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                f.write_char('\n')?;
            }
            item.fmt(f)?;
        }
        Ok(())
    }
}

fn scalar_lit(x: &Scalar) -> ScalarLit {
    let text = x.to_string();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, text),
    };
    let atom = match body.split_once('/') {
        Some((n, d)) => Atom::Num { num: n.into(), den: Some(d.into()) },
        None => Atom::Num { num: body, den: None },
    };
    ScalarLit { negative, atom, span: Span::default() }
}

pub fn algebra_decl(a: &BoundAlgebra) -> AlgebraDecl {
    let pres = a.presentation();
    let q = &pres.quiver;
    let relations = pres
        .relations
        .iter()
        .map(|r| RelationExpr {
            terms: r
                .terms
                .iter()
                .map(|(c, p)| {
                    let (negative, mut factors) = if c.is_one() {
                        (false, vec![])
                    } else if c.neg().is_one() {
                        (true, vec![])
                    } else {
                        let lit = scalar_lit(c);
                        (lit.negative, vec![lit.atom])
                    };
                    factors.extend(p.arrows.iter().map(|&i| Atom::Name(Name::new(&q.arrow(i).label))));
                    TermExpr { negative, factors, span: Span::default() }
                })
                .collect(),
            span: Span::default(),
        })
        .collect();
    AlgebraDecl {
        name: Name::new(&pres.name),
        field: match pres.field {
            FieldSpec::Rationals => FieldLit::Rationals,
            FieldSpec::PrimeField(p) => FieldLit::Prime(p),
        },
        vertices: q.vertices().iter().map(|v| Name::new(v)).collect(),
        arrows: q
            .arrows()
            .iter()
            .map(|x| ArrowDecl {
                label: Name::new(&x.label),
                source: Name::new(q.vertex_label(x.source)),
                target: Name::new(q.vertex_label(x.target)),
            })
            .collect(),
        relations,
        truncate: Some(pres.l_max),
        jpower: pres.jpower,
        span: Span::default(),
    }
}

/// Nonzero maps only, in arrow order.
pub fn module_decl(name: &str, algebra_name: &str, m: &Representation) -> ModuleDecl {
    let q = m.algebra().quiver();
    let maps = (0..q.arrow_count())
        .filter(|&i| !m.map(i).is_zero())
        .map(|i| {
            let x = m.map(i);
            MapDecl {
                arrow: Name::new(&q.arrow(i).label),
                rows: (0..x.rows()).map(|r| x.row(r).iter().map(scalar_lit).collect()).collect(),
                span: Span::default(),
            }
        })
        .collect();
    ModuleDecl {
        name: Name::new(name),
        algebra: Name::new(algebra_name),
        dims: m.dims().to_vec(),
        maps,
        span: Span::default(),
    }
}

pub fn serialize_algebra(a: &BoundAlgebra) -> String {
    Item::Algebra(algebra_decl(a)).to_string()
}

pub fn serialize_module(name: &str, algebra_name: &str, m: &Representation) -> String {
    Item::Module(module_decl(name, algebra_name, m)).to_string()
}

#[cfg(test)]
mod tests {
    use super::super::{elaborate, parse};
    use super::*;
    use crate::algebra::Presentation;
    use crate::quiver::Quiver;

    #[test]
    fn algebra_round_trip() {
        let f = FieldSpec::Rationals;
        let q = Quiver::from_strs(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        let a = BoundAlgebra::build(Presentation::new("A2", q, vec![], f)).unwrap();
        let text = serialize_algebra(&a);
        let env = elaborate(&parse(&text).unwrap()).unwrap();
        assert_eq!(env.algebra("A2").unwrap().fingerprint(), a.fingerprint());
        let doc = parse(&text).unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc);
    }

    #[test]
    fn quoting_and_negatives() {
        let src = "params \"p q\" = -3/4;\nalgebra \"my alg\" over Q(5) { vertices \"x y\" 1; arrows \"a b\": \"x y\" -> 1; }";
        let doc = parse(src).unwrap();
        let again = parse(&doc.to_string()).unwrap();
        assert_eq!(again, doc);
    }
}
