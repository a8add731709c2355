use super::Span;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Document {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Params(Vec<(Name, ScalarLit)>),
    Algebra(AlgebraDecl),
    Module(ModuleDecl),
    Glue(GlueDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

impl Name {
    pub fn new(text: &str) -> Name {
        Name { text: text.to_string(), span: Span::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldLit {
    Rationals,
    Prime(u64),
}

/// A number `n` or `n/d`, or a parameter name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Num { num: String, den: Option<String> },
    Name(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarLit {
    pub negative: bool,
    pub atom: Atom,
    pub span: Span,
}

/// One signed product of factors; numeric and parameter factors form the
/// coefficient and arrow names form the path, left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermExpr {
    pub negative: bool,
    pub factors: Vec<Atom>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationExpr {
    pub terms: Vec<TermExpr>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub label: Name,
    pub source: Name,
    pub target: Name,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDecl {
    pub name: Name,
    pub field: FieldLit,
    pub vertices: Vec<Name>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationExpr>,
    /// Ideal-closure cutoff L_max.
    pub truncate: Option<usize>,
    /// Add every path of this length to the ideal.
    pub jpower: Option<usize>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub arrow: Name,
    pub rows: Vec<Vec<ScalarLit>>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: Name,
    pub algebra: Name,
    pub dims: Vec<usize>,
    pub maps: Vec<MapDecl>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueDecl {
    pub name: Name,
    pub a: Name,
    pub b: Name,
    pub forward: Vec<ArrowDecl>,
    pub backward: Vec<ArrowDecl>,
    pub extra: Vec<RelationExpr>,
    pub span: Span,
}
