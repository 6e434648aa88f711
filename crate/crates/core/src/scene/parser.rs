//! Lexer and recursive-descent parser for `.scene` scripts.
//!
//! ```text
//! scene     := { statement } EOF
//! statement := "point" NAME "=" "(" NUM "," NUM ")" ";"
//!            | "triangle" NAME "=" "(" NAME "," NAME "," NAME ")" ";"
//!            | "trisector" NAME "=" "(" NAME "," NAME "," ("1" | "2") ")" ";"
//!            | "intersect" NAME "=" "(" NAME "," NAME ")" ";"
//!            | "segment" NAME "=" "(" NAME "," NAME ")" ";"
//!            | "assert" KIND "(" arg { "," arg } ")" [ "within" NUM ] ";"
//! arg       := NAME | NUM [ "deg" ]
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Numbers are
//! decimal literals with an optional sign and exponent.

use std::fmt;

use thiserror::Error;

use super::ast::{Arg, ArgSlot, AssertKind, SceneAst, Span, SpannedStatement, Statement};

pub const KEYWORDS: [&str; 7] = [
    "point",
    "triangle",
    "trisector",
    "intersect",
    "segment",
    "assert",
    "within",
];

const STATEMENT_STARTS: [&str; 6] = ["point", "triangle", "trisector", "intersect", "segment", "assert"];

/// First error found in a script.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number { value: f64, deg: bool, text: String },
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number { text, .. } => write!(f, "number `{text}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn quoted(s: &str) -> String {
    format!("\"{s}\"")
}

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    column: usize,
    /// Location of the last non-whitespace character seen.
    last: (usize, usize),
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            chars: src.char_indices().collect(),
            pos: 0,
            line: 1,
            column: 1,
            last: (1, 1),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            if !c.is_whitespace() {
                self.last = (self.line, self.column);
            }
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, message: String, expected: &[&str]) -> ParseError {
        ParseError {
            line,
            column,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn tokens(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            while let Some(c) = self.peek() {
                if c == '#' {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                } else if c.is_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
            let (line, column, start) = (self.line, self.column, self.offset());
            let Some(c) = self.peek() else {
                // end of input sits on the last visible character
                let (line, column) = self.last;
                let end = self.src.len();
                out.push(Token {
                    tok: Tok::Eof,
                    span: Span {
                        line,
                        column,
                        start: end,
                        end,
                    },
                });
                return Ok(out);
            };
            let tok = if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    s.push(c);
                    self.bump();
                }
                Tok::Ident(s)
            } else if c.is_ascii_digit()
                || ((c == '-' || c == '+' || c == '.')
                    && self.peek_at(1).is_some_and(|d| d.is_ascii_digit() || d == '.'))
            {
                self.number(line, column)?
            } else if "=(),;".contains(c) {
                self.bump();
                Tok::Sym(c)
            } else {
                return Err(self.error(
                    line,
                    column,
                    format!("unexpected character `{c}`"),
                    &["name", "number", "\"=\"", "\"(\"", "\")\"", "\",\"", "\";\""],
                ));
            };
            out.push(Token {
                tok,
                span: Span {
                    line,
                    column,
                    start,
                    end: self.offset(),
                },
            });
        }
    }

    fn number(&mut self, line: usize, column: usize) -> Result<Tok, ParseError> {
        let start = self.offset();
        if matches!(self.peek(), Some('-' | '+')) {
            self.bump();
        }
        let digits = |lx: &mut Self| {
            let mut n = 0;
            while lx.peek().is_some_and(|c| c.is_ascii_digit()) {
                lx.bump();
                n += 1;
            }
            n
        };
        let mut mantissa = digits(self);
        if self.peek() == Some('.') {
            self.bump();
            mantissa += digits(self);
        }
        if mantissa == 0 {
            return Err(self.error(line, column, "malformed number".into(), &["digit"]));
        }
        if matches!(self.peek(), Some('e' | 'E'))
            && (self.peek_at(1).is_some_and(|c| c.is_ascii_digit())
                || (matches!(self.peek_at(1), Some('-' | '+')) && self.peek_at(2).is_some_and(|c| c.is_ascii_digit())))
        {
            self.bump();
            if matches!(self.peek(), Some('-' | '+')) {
                self.bump();
            }
            digits(self);
        }
        let text = self.src[start..self.offset()].to_string();
        let mut deg = false;
        if self.peek() == Some('d')
            && self.peek_at(1) == Some('e')
            && self.peek_at(2) == Some('g')
            && !self.peek_at(3).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            for _ in 0..3 {
                self.bump();
            }
            deg = true;
        }
        if let Some(c) = self
            .peek()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '.')
        {
            return Err(self.error(
                self.line,
                self.column,
                format!("unexpected `{c}` after number `{text}`"),
                &["\"deg\"", "\",\"", "\")\"", "\";\""],
            ));
        }
        let value: f64 = text
            .parse()
            .map_err(|_| self.error(line, column, format!("malformed number `{text}`"), &["number"]))?;
        if !value.is_finite() {
            return Err(self.error(
                line,
                column,
                format!("number `{text}` is out of range"),
                &["finite number"],
            ));
        }
        Ok(Tok::Number { value, deg, text })
    }
}

struct Parser {
    tokens: Vec<Token>,
    cursor: usize,
    /// Names defined so far with their statement keyword.
    defined: Vec<String>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.cursor].clone();
        if !matches!(t.tok, Tok::Eof) {
            self.cursor += 1;
        }
        t
    }

    fn fail<T>(&self, tok: &Token, message: String, expected: Vec<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: tok.span.line,
            column: tok.span.column,
            message,
            expected,
        })
    }

    fn unexpected<T>(&self, expected: &[String]) -> Result<T, ParseError> {
        let tok = self.peek().clone();
        let list = expected.join(" or ");
        self.fail(&tok, format!("expected {list}, found {}", tok.tok), expected.to_vec())
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek().tok == Tok::Sym(c) {
            self.advance();
            Ok(())
        } else {
            self.unexpected(&[quoted(&c.to_string())])
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.advance();
                Ok(())
            }
            _ => self.unexpected(&[quoted(kw)]),
        }
    }

    /// Identifier that is not a keyword.
    fn name(&mut self) -> Result<(String, Token), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                let t = self.advance();
                Ok((s, t))
            }
            _ => self.unexpected(&["name".to_string()]),
        }
    }

    /// A fresh name for a new binding.
    fn new_name(&mut self) -> Result<String, ParseError> {
        let (name, tok) = self.name()?;
        if self.defined.contains(&name) {
            return self.fail(&tok, format!("`{name}` is already defined"), vec!["new name".into()]);
        }
        Ok(name)
    }

    /// A reference to an existing binding.
    fn used_name(&mut self) -> Result<String, ParseError> {
        let (name, tok) = self.name()?;
        if !self.defined.contains(&name) {
            return self.fail(&tok, format!("`{name}` is not defined"), vec!["defined name".into()]);
        }
        Ok(name)
    }

    fn number(&mut self, allow_deg: bool) -> Result<(f64, bool), ParseError> {
        let tok = self.peek().clone();
        match tok.tok {
            Tok::Number { value, deg, .. } => {
                if deg && !allow_deg {
                    return self.fail(
                        &tok,
                        "`deg` is only allowed on angle arguments".into(),
                        vec!["number".into()],
                    );
                }
                self.advance();
                Ok((value, deg))
            }
            _ => self.unexpected(&["number".to_string()]),
        }
    }

    fn scene(&mut self) -> Result<SceneAst, ParseError> {
        let mut statements = Vec::new();
        loop {
            let start = self.peek().clone();
            let kw = match &start.tok {
                Tok::Eof => break,
                Tok::Ident(s) if STATEMENT_STARTS.contains(&s.as_str()) => s.clone(),
                _ => {
                    let mut expected: Vec<String> = STATEMENT_STARTS.iter().map(|s| quoted(s)).collect();
                    expected.push("end of input".into());
                    return self.unexpected(&expected);
                }
            };
            self.advance();
            let statement = self.statement(&kw)?;
            if let Some(name) = statement.defines() {
                self.defined.push(name.to_string());
            }
            let end = self.tokens[self.cursor - 1].span.end;
            statements.push(SpannedStatement {
                statement,
                span: Span { end, ..start.span },
            });
        }
        Ok(SceneAst { statements })
    }

    fn statement(&mut self, kw: &str) -> Result<Statement, ParseError> {
        let stmt = match kw {
            "point" => {
                let name = self.new_name()?;
                self.expect_sym('=')?;
                self.expect_sym('(')?;
                let (x, _) = self.number(false)?;
                self.expect_sym(',')?;
                let (y, _) = self.number(false)?;
                self.expect_sym(')')?;
                Statement::Point { name, x, y }
            }
            "triangle" => {
                let name = self.new_name()?;
                self.expect_sym('=')?;
                self.expect_sym('(')?;
                let a = self.used_name()?;
                self.expect_sym(',')?;
                let b = self.used_name()?;
                self.expect_sym(',')?;
                let c = self.used_name()?;
                self.expect_sym(')')?;
                Statement::Triangle {
                    name,
                    vertices: [a, b, c],
                }
            }
            "trisector" => {
                let name = self.new_name()?;
                self.expect_sym('=')?;
                self.expect_sym('(')?;
                let triangle = self.used_name()?;
                self.expect_sym(',')?;
                let vertex = self.used_name()?;
                self.expect_sym(',')?;
                let tok = self.peek().clone();
                let index = match tok.tok {
                    Tok::Number { value, deg: false, .. } if value == 1.0 || value == 2.0 => {
                        self.advance();
                        value as u8
                    }
                    _ => return self.unexpected(&["\"1\"".into(), "\"2\"".into()]),
                };
                self.expect_sym(')')?;
                Statement::Trisector {
                    name,
                    triangle,
                    vertex,
                    index,
                }
            }
            "intersect" | "segment" => {
                let name = self.new_name()?;
                self.expect_sym('=')?;
                self.expect_sym('(')?;
                let p = self.used_name()?;
                self.expect_sym(',')?;
                let q = self.used_name()?;
                self.expect_sym(')')?;
                if kw == "intersect" {
                    Statement::Intersect { name, rays: [p, q] }
                } else {
                    Statement::Segment { name, ends: [p, q] }
                }
            }
            "assert" => return self.assertion(),
            _ => unreachable!("statement keyword checked by caller"),
        };
        self.expect_sym(';')?;
        Ok(stmt)
    }

    fn assertion(&mut self) -> Result<Statement, ParseError> {
        let tok = self.peek().clone();
        let kind = match &tok.tok {
            Tok::Ident(s) => AssertKind::from_keyword(s),
            _ => None,
        };
        let Some(kind) = kind else {
            let expected: Vec<String> = AssertKind::ALL.iter().map(|k| quoted(k.keyword())).collect();
            return self.unexpected(&expected);
        };
        self.advance();
        self.expect_sym('(')?;
        let signature = kind.signature();
        let mut args = Vec::with_capacity(signature.len());
        for (i, slot) in signature.iter().enumerate() {
            if i > 0 {
                self.expect_sym(',')?;
            }
            let arg = match slot {
                ArgSlot::Number => {
                    let (value, deg) = self.number(kind == AssertKind::AngleEq)?;
                    Arg::Number { value, deg }
                }
                _ => Arg::Name {
                    name: self.used_name()?,
                },
            };
            args.push(arg);
        }
        if self.peek().tok == Tok::Sym(',') {
            let tok = self.peek().clone();
            return self.fail(
                &tok,
                format!("`{kind}` takes {} arguments", signature.len()),
                vec![quoted(")")],
            );
        }
        self.expect_sym(')')?;
        let mut tolerance = None;
        if matches!(&self.peek().tok, Tok::Ident(s) if s == "within") {
            self.expect_keyword("within")?;
            let tok = self.peek().clone();
            let (t, _) = self.number(false)?;
            if !(t > 0.0) {
                return self.fail(
                    &tok,
                    "tolerance must be positive".into(),
                    vec!["positive number".into()],
                );
            }
            tolerance = Some(t);
        }
        self.expect_sym(';')?;
        Ok(Statement::Assert { kind, args, tolerance })
    }
}

/// Parses a whole script, stopping at the first error.
pub fn parse_scene(source: &str) -> Result<SceneAst, ParseError> {
    let tokens = Lexer::new(source).tokens()?;
    Parser {
        tokens,
        cursor: 0,
        defined: Vec::new(),
    }
    .scene()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let ast = parse_scene("point A = (0, 0);").unwrap();
        assert_eq!(
            ast.structure(),
            vec![&Statement::Point {
                name: "A".into(),
                x: 0.0,
                y: 0.0
            }]
        );
        assert_eq!((ast.statements[0].span.line, ast.statements[0].span.column), (1, 1));
    }

    #[test]
    fn missing_comma_points_at_offending_token() {
        let err = parse_scene("point A = (0 0);").unwrap_err();
        assert_eq!((err.line, err.column), (1, 14));
        assert_eq!(err.expected, vec!["\",\"".to_string()]);
        assert!(err.message.contains("found number `0`"), "{}", err.message);
    }

    #[test]
    fn numbers_signs_exponents_degrees() {
        let src = "point A = (-1.5, +2e-3);\npoint B = (.5, 3.);\npoint C = (0, 1);\n\
                   assert angle_eq(A, B, C, 60deg) within 1e-6;";
        let ast = parse_scene(src).unwrap();
        assert_eq!(
            ast.statements[0].statement,
            Statement::Point {
                name: "A".into(),
                x: -1.5,
                y: 0.002
            }
        );
        match &ast.statements[3].statement {
            Statement::Assert { kind, args, tolerance } => {
                assert_eq!(*kind, AssertKind::AngleEq);
                assert_eq!(args[3], Arg::Number { value: 60.0, deg: true });
                assert_eq!(*tolerance, Some(1e-6));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let src = "# header\n\n  point A = (0, 0); # trailing\n# done\n";
        assert_eq!(parse_scene(src).unwrap().len(), 1);
        assert!(parse_scene("").unwrap().is_empty());
        assert!(parse_scene("# only a comment").unwrap().is_empty());
    }

    #[test]
    fn undefined_and_redefined_names() {
        let err = parse_scene("point A = (0, 0);\ntriangle T = (A, B, A);").unwrap_err();
        assert_eq!((err.line, err.column), (2, 18));
        assert!(err.message.contains("`B` is not defined"));
        let err = parse_scene("point A = (0, 0);\npoint A = (1, 0);").unwrap_err();
        assert_eq!((err.line, err.column), (2, 7));
    }

    #[test]
    fn assertion_arity() {
        let base = "point A = (0, 0);\npoint B = (1, 0);\n";
        let err = parse_scene(&format!("{base}assert point_near(A, B, A);")).unwrap_err();
        assert_eq!((err.line, err.column), (3, 23));
        let err = parse_scene(&format!("{base}assert point_near(A);")).unwrap_err();
        assert_eq!(err.expected, vec!["\",\"".to_string()]);
        let err = parse_scene(&format!("{base}assert collinear(A, B);")).unwrap_err();
        assert_eq!((err.line, err.column), (3, 8));
        assert_eq!(err.expected.len(), 5);
    }

    #[test]
    fn bad_tokens() {
        let err = parse_scene("point A = (0, 0) @").unwrap_err();
        assert_eq!((err.line, err.column), (1, 18));
        let err = parse_scene("point A = (1x, 0);").unwrap_err();
        assert_eq!((err.line, err.column), (1, 13));
        let err = parse_scene("point A = (0deg, 0);").unwrap_err();
        assert_eq!((err.line, err.column), (1, 12));
        let err = parse_scene("point A = (1e999, 0);").unwrap_err();
        assert!(err.message.contains("out of range"));
    }

    #[test]
    fn eof_error_lands_on_last_character() {
        let err = parse_scene("point A = (0, 0)\n").unwrap_err();
        assert_eq!((err.line, err.column), (1, 16));
        assert_eq!(err.expected, vec!["\";\"".to_string()]);
    }

    #[test]
    fn trisector_index_must_be_one_or_two() {
        let src = "point A = (0, 0);\npoint B = (1, 0);\npoint C = (0, 1);\ntriangle T = (A, B, C);\n";
        assert!(parse_scene(&format!("{src}trisector t = (T, A, 2);")).is_ok());
        let err = parse_scene(&format!("{src}trisector t = (T, A, 3);")).unwrap_err();
        assert_eq!((err.line, err.column), (5, 22));
    }

    #[test]
    fn keywords_are_not_names() {
        let err = parse_scene("point within = (0, 0);").unwrap_err();
        assert_eq!(err.expected, vec!["name".to_string()]);
    }
}
