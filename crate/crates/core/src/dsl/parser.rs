use super::ast::*;
use super::lexer::{lex, Tok};
use super::{DslError, ErrorKind, Span};

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, DslError>;

const NAME: &str = "name";

pub fn parse(src: &str) -> PResult<Document> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    p.document()
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let (tok, span) = &self.toks[self.pos];
        Err(DslError {
            kind: ErrorKind::Parse,
            span: *span,
            message: format!("unexpected {}", tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> PResult<Span> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.error(&[&format!("`{}`", t.symbol())])
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("`{kw}`")])
        }
    }

    fn at_name(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Int(_) | Tok::Str(_))
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Int(s) | Tok::Str(s) => {
                let span = self.bump().1;
                Ok(Name { text: s, span })
            }
            _ => self.error(&[NAME]),
        }
    }

    fn int(&mut self) -> PResult<(usize, Span)> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let span = self.bump().1;
                s.parse().map(|n| (n, span)).map_err(|_| DslError::semantic(span, "integer too large"))
            }
            _ => self.error(&["integer"]),
        }
    }

    fn document(&mut self) -> PResult<Document> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(Document { items }),
                Tok::Ident(s) => {
                    let item = match s.as_str() {
                        "params" => self.params()?,
                        "algebra" => Item::Algebra(self.algebra()?),
                        "module" => Item::Module(self.module()?),
                        "glue" => Item::Glue(self.glue()?),
                        _ => return self.error(&["`params`", "`algebra`", "`module`", "`glue`", "end of input"]),
                    };
                    items.push(item);
                }
                _ => return self.error(&["`params`", "`algebra`", "`module`", "`glue`", "end of input"]),
            }
        }
    }

    fn params(&mut self) -> PResult<Item> {
        self.bump();
        let mut out = Vec::new();
        while !self.eat(&Tok::Semi) {
            if !matches!(self.peek(), Tok::Ident(_) | Tok::Str(_)) {
                return self.error(&[NAME, "`;`"]);
            }
            let n = self.name()?;
            self.expect(Tok::Eq)?;
            out.push((n, self.scalar()?));
        }
        Ok(Item::Params(out))
    }

    fn field(&mut self) -> PResult<FieldLit> {
        if !self.is_kw("Q") {
            return self.error(&["`Q`", "`Q(p)`"]);
        }
        self.bump();
        if self.eat(&Tok::LParen) {
            let (p, _) = self.int()?;
            self.expect(Tok::RParen)?;
            Ok(FieldLit::Prime(p as u64))
        } else {
            Ok(FieldLit::Rationals)
        }
    }

    /// Runs `section` for each `;`-separated section up to the closing brace.
    fn sections(&mut self, mut section: impl FnMut(&mut Parser, &str) -> PResult<bool>, kws: &[&str]) -> PResult<()> {
        self.expect(Tok::LBrace)?;
        loop {
            if self.eat(&Tok::RBrace) {
                return Ok(());
            }
            if self.eat(&Tok::Semi) {
                continue;
            }
            let kw = match self.peek() {
                Tok::Ident(s) => s.clone(),
                _ => String::new(),
            };
            let start = self.pos;
            if !section(self, &kw)? {
                self.pos = start;
                let mut exp: Vec<String> = kws.iter().map(|k| format!("`{k}`")).collect();
                exp.push("`}`".into());
                let exp: Vec<&str> = exp.iter().map(String::as_str).collect();
                return self.error(&exp);
            }
            if !matches!(self.peek(), Tok::Semi | Tok::RBrace) {
                return self.error(&["`;`", "`}`"]);
            }
        }
    }

    fn at_section_end(&self) -> bool {
        matches!(self.peek(), Tok::Semi | Tok::RBrace)
    }

    fn algebra(&mut self) -> PResult<AlgebraDecl> {
        let start = self.bump().1;
        let name = self.name()?;
        self.expect_kw("over")?;
        let field = self.field()?;
        let mut d = AlgebraDecl {
            name,
            field,
            vertices: vec![],
            arrows: vec![],
            relations: vec![],
            truncate: None,
            jpower: None,
            span: start,
        };
        self.sections(
            |p, kw| {
                match kw {
                    "vertices" => {
                        p.bump();
                        while !p.at_section_end() {
                            if !p.at_name() {
                                return p.error(&[NAME, "`;`", "`}`"]);
                            }
                            d.vertices.push(p.name()?);
                        }
                    }
                    "arrows" => {
                        p.bump();
                        d.arrows.extend(p.arrow_list()?);
                    }
                    "relations" => {
                        p.bump();
                        d.relations.extend(p.relation_list()?);
                    }
                    "truncate" | "jpower" => {
                        p.bump();
                        let (n, span) = p.int()?;
                        let slot = if kw == "truncate" { &mut d.truncate } else { &mut d.jpower };
                        if slot.replace(n).is_some() {
                            return Err(DslError::semantic(span, format!("`{kw}` given twice")));
                        }
                    }
                    _ => return Ok(false),
                }
                Ok(true)
            },
            &["vertices", "arrows", "relations", "truncate", "jpower"],
        )?;
        d.span = start.to(self.prev_span());
        Ok(d)
    }

    fn arrow_list(&mut self) -> PResult<Vec<ArrowDecl>> {
        let mut out = Vec::new();
        if self.at_section_end() {
            return Ok(out);
        }
        loop {
            let label = self.name()?;
            self.expect(Tok::Colon)?;
            let source = self.name()?;
            self.expect(Tok::Arrow)?;
            let target = self.name()?;
            out.push(ArrowDecl { label, source, target });
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn relation_list(&mut self) -> PResult<Vec<RelationExpr>> {
        let mut out = Vec::new();
        if self.at_section_end() {
            return Ok(out);
        }
        loop {
            out.push(self.relation()?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn relation(&mut self) -> PResult<RelationExpr> {
        let start = self.span();
        let mut terms = Vec::new();
        let mut negative = self.eat(&Tok::Minus);
        loop {
            let tstart = self.span();
            let mut factors = vec![self.atom()?];
            while self.eat(&Tok::Star) {
                factors.push(self.atom()?);
            }
            terms.push(TermExpr { negative, factors, span: tstart.to(self.prev_span()) });
            if self.eat(&Tok::Plus) {
                negative = false;
            } else if self.eat(&Tok::Minus) {
                negative = true;
            } else {
                break;
            }
        }
        Ok(RelationExpr { terms, span: start.to(self.prev_span()) })
    }

    fn atom(&mut self) -> PResult<Atom> {
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                let den = if self.eat(&Tok::Slash) {
                    match self.bump() {
                        (Tok::Int(d), _) => Some(d),
                        _ => {
                            self.pos -= 1;
                            return self.error(&["integer"]);
                        }
                    }
                } else {
                    None
                };
                Ok(Atom::Num { num, den })
            }
            Tok::Ident(_) | Tok::Str(_) => Ok(Atom::Name(self.name()?)),
            _ => self.error(&["integer", NAME]),
        }
    }

    fn scalar(&mut self) -> PResult<ScalarLit> {
        let start = self.span();
        let negative = self.eat(&Tok::Minus);
        let atom = self.atom()?;
        Ok(ScalarLit { negative, atom, span: start.to(self.prev_span()) })
    }

    fn module(&mut self) -> PResult<ModuleDecl> {
        let start = self.bump().1;
        let name = self.name()?;
        self.expect_kw("over")?;
        let algebra = self.name()?;
        let mut d = ModuleDecl { name, algebra, dims: vec![], maps: vec![], span: start };
        self.sections(
            |p, kw| {
                match kw {
                    "dims" => {
                        p.bump();
                        while !p.at_section_end() {
                            d.dims.push(p.int()?.0);
                        }
                    }
                    "map" => {
                        let s = p.bump().1;
                        let arrow = p.name()?;
                        p.expect(Tok::Eq)?;
                        let rows = p.matrix()?;
                        d.maps.push(MapDecl { arrow, rows, span: s.to(p.prev_span()) });
                    }
                    _ => return Ok(false),
                }
                Ok(true)
            },
            &["dims", "map"],
        )?;
        d.span = start.to(self.prev_span());
        Ok(d)
    }

    fn matrix(&mut self) -> PResult<Vec<Vec<ScalarLit>>> {
        self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(rows);
        }
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = Vec::new();
            if !self.eat(&Tok::RBracket) {
                loop {
                    row.push(self.scalar()?);
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                    if !self.eat(&Tok::Comma) {
                        return self.error(&["`,`", "`]`"]);
                    }
                }
            }
            rows.push(row);
            if self.eat(&Tok::RBracket) {
                return Ok(rows);
            }
            if !self.eat(&Tok::Comma) {
                return self.error(&["`,`", "`]`"]);
            }
        }
    }

    fn glue(&mut self) -> PResult<GlueDecl> {
        let start = self.bump().1;
        let name = self.name()?;
        self.expect(Tok::Eq)?;
        let a = self.name()?;
        self.expect(Tok::Plus)?;
        let b = self.name()?;
        let mut d = GlueDecl { name, a, b, forward: vec![], backward: vec![], extra: vec![], span: start };
        self.sections(
            |p, kw| {
                match kw {
                    "forward" => {
                        p.bump();
                        d.forward.extend(p.arrow_list()?);
                    }
                    "backward" => {
                        p.bump();
                        d.backward.extend(p.arrow_list()?);
                    }
                    "extra" => {
                        p.bump();
                        d.extra.extend(p.relation_list()?);
                    }
                    _ => return Ok(false),
                }
                Ok(true)
            },
            &["forward", "backward", "extra"],
        )?;
        d.span = start.to(self.prev_span());
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_sections() {
        let d = parse("algebra A over Q(7) { vertices 1 2; arrows a:1->2; relations ; truncate 3 }").unwrap();
        let Item::Algebra(a) = &d.items[0] else { panic!() };
        assert_eq!(a.field, FieldLit::Prime(7));
        assert_eq!(a.vertices.len(), 2);
        assert_eq!(a.arrows[0].label.text, "a");
        assert!(a.relations.is_empty());
        assert_eq!(a.truncate, Some(3));
    }

    #[test]
    fn relation_terms() {
        let d = parse("algebra L over Q { vertices v; arrows x: v -> v, y: v -> v; relations x*x - 2*y*y, -x*y }").unwrap();
        let Item::Algebra(a) = &d.items[0] else { panic!() };
        assert_eq!(a.relations.len(), 2);
        assert_eq!(a.relations[0].terms.len(), 2);
        assert!(a.relations[0].terms[1].negative);
        assert!(a.relations[1].terms[0].negative);
    }

    #[test]
    fn error_positions_and_expected() {
        let e = parse("algebra A over Q {\n  vertices 1 2;\n  arows a:1->2 }").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Parse);
        assert_eq!((e.span.line, e.span.col), (3, 3));
        assert!(e.expected.contains(&"`arrows`".to_string()));
        let e = parse("algebra A over R { }").unwrap_err();
        assert!(e.expected.contains(&"`Q`".to_string()));
    }

    #[test]
    fn module_and_glue() {
        let src = "module M over A { dims 1 1; map a = [[1/2]] }\nglue C = A + B { forward g: 2 -> 3; extra q*g*b }";
        let d = parse(src).unwrap();
        assert_eq!(d.items.len(), 2);
        let Item::Module(m) = &d.items[0] else { panic!() };
        assert_eq!(m.maps[0].rows[0][0].atom, Atom::Num { num: "1".into(), den: Some("2".into()) });
    }
}
