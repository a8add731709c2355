use super::{DslError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(String),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Colon,
    Comma,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Eq,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::Arrow => "->",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Eq => "=",
            Tok::Ident(_) => "identifier",
            Tok::Int(_) => "integer",
            Tok::Str(_) => "string",
            Tok::Eof => "end of input",
        }
    }
}

pub fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Span)>, DslError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let at = |i: usize| chars.get(i).map(|c| c.1);
    let offset = |i: usize| chars.get(i).map_or(src.len(), |c| c.0);
    while i < chars.len() {
        let c = chars[i].1;
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let (l0, c0) = (line, col);
        let tok = match c {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '=' => Tok::Eq,
            '-' if at(i + 1) == Some('>') => {
                i += 1;
                Tok::Arrow
            }
            '-' => Tok::Minus,
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match at(i) {
                        None | Some('\n') => {
                            let span = Span::new(offset(start), offset(i), l0, c0);
                            return Err(DslError::lex(span, "unterminated string"));
                        }
                        Some('"') => break,
                        Some('\\') => {
                            match at(i + 1) {
                                Some(e @ ('"' | '\\')) => s.push(e),
                                _ => {
                                    let span = Span::new(offset(i), offset(i + 1), l0, c0 + (i - start));
                                    return Err(DslError::lex(span, "invalid escape"));
                                }
                            }
                            i += 2;
                        }
                        Some(ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                Tok::Str(s)
            }
            c if c.is_ascii_digit() => {
                while at(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                }
                Tok::Int(src[offset(start)..offset(i + 1)].to_string())
            }
            c if is_ident_start(c) => {
                while at(i + 1).is_some_and(is_ident_char) {
                    i += 1;
                }
                Tok::Ident(src[offset(start)..offset(i + 1)].to_string())
            }
            other => {
                let span = Span::new(offset(start), offset(start + 1), l0, c0);
                return Err(DslError::lex(span, &format!("unexpected character {other:?}")));
            }
        };
        i += 1;
        col += i - start;
        out.push((tok, Span::new(offset(start), offset(i), l0, c0)));
    }
    out.push((Tok::Eof, Span::new(src.len(), src.len(), line, col)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let toks = lex("algebra A # note\n  a:1->2; x*x - 1/2").unwrap();
        let kinds: Vec<&Tok> = toks.iter().map(|t| &t.0).collect();
        assert_eq!(kinds[0], &Tok::Ident("algebra".into()));
        assert_eq!(kinds[2], &Tok::Ident("a".into()));
        assert_eq!(kinds[5], &Tok::Arrow);
        assert_eq!((toks[2].1.line, toks[2].1.col), (2, 3));
        assert!(kinds.contains(&&Tok::Slash));
        assert_eq!(kinds.last().unwrap(), &&Tok::Eof);
    }

    #[test]
    fn bad_character() {
        let e = lex("vertices 1 $").unwrap_err();
        assert_eq!((e.span.line, e.span.col), (1, 12));
    }
}
