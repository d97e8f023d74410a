//! Surface syntax for spaces and split sheaves.
//!
//! ```text
//! SPACE := 'P' INT ('x' 'P' INT)*
//! EXPR  := '0' | TERM ('+' TERM)*
//! TERM  := [INT '*'] PROD
//! PROD  := ATOM ('#' ATOM)*          exactly one atom per factor
//!        | 'O(' INT (',' INT)* ')'   line-bundle shorthand, one entry per factor
//! ATOM  := 'O(' INT ')' | 'Om(' INT ',' INT ')' | 'LT(' INT ',' INT ')'
//! ```

use std::fmt;

use multireg_core::{BoxProduct, FactorSheaf, MultiDegree, SplitSheaf, Space};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub token: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {} (at `{}`)", self.line, self.column, self.message, self.token)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Plus,
    Star,
    Hash,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Kind,
    text: String,
    column: usize,
}

fn tokenize(src: &str, line: usize) -> ParseResult<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Kind::LParen),
            ')' => Some(Kind::RParen),
            ',' => Some(Kind::Comma),
            '+' => Some(Kind::Plus),
            '*' => Some(Kind::Star),
            '#' => Some(Kind::Hash),
            _ => None,
        };
        if let Some(kind) = single {
            out.push(Token { kind, text: c.to_string(), column });
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token { kind: Kind::Ident(text.clone()), text, column });
        } else if c.is_ascii_digit() || c == '-' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let value = text.parse::<i64>().map_err(|_| ParseError {
                line,
                column,
                token: text.clone(),
                message: "malformed integer".into(),
            })?;
            out.push(Token { kind: Kind::Int(value), text, column });
        } else {
            return Err(ParseError { line, column, token: c.to_string(), message: "unexpected character".into() });
        }
    }
    out.push(Token { kind: Kind::End, text: "end of input".into(), column: chars.len() + 1 });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    line: usize,
    space: &'a Space,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != Kind::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column: t.column, token: t.text.clone(), message: message.into() }
    }

    fn expect(&mut self, kind: Kind, what: &str) -> ParseResult<Token> {
        let t = self.bump();
        if t.kind == kind {
            Ok(t)
        } else {
            Err(self.error_at(&t, format!("expected {what}")))
        }
    }

    fn int(&mut self) -> ParseResult<(i64, Token)> {
        let t = self.bump();
        match t.kind {
            Kind::Int(v) => Ok((v, t)),
            _ => Err(self.error_at(&t, "expected integer")),
        }
    }

    fn args(&mut self) -> ParseResult<Vec<(i64, Token)>> {
        self.expect(Kind::LParen, "`(`")?;
        let mut out = vec![self.int()?];
        while self.peek().kind == Kind::Comma {
            self.bump();
            out.push(self.int()?);
        }
        self.expect(Kind::RParen, "`,` or `)`")?;
        Ok(out)
    }

    fn expr(&mut self) -> ParseResult<SplitSheaf> {
        if self.peek().kind == Kind::Int(0) && self.tokens[self.pos + 1].kind == Kind::End {
            self.bump();
            return Ok(SplitSheaf::zero());
        }
        let mut terms = vec![self.term()?];
        while self.peek().kind == Kind::Plus {
            self.bump();
            terms.push(self.term()?);
        }
        let t = self.peek().clone();
        if t.kind != Kind::End {
            return Err(self.error_at(&t, "expected `+` or end of input"));
        }
        Ok(SplitSheaf::from_terms(terms))
    }

    fn term(&mut self) -> ParseResult<(u64, BoxProduct)> {
        let mut mult = 1u64;
        if let Kind::Int(v) = self.peek().kind {
            let t = self.bump();
            if v <= 0 {
                return Err(self.error_at(&t, "multiplicity must be positive"));
            }
            mult = v as u64;
            self.expect(Kind::Star, "`*` after multiplicity")?;
        }
        Ok((mult, self.product()?))
    }

    fn product(&mut self) -> ParseResult<BoxProduct> {
        let r = self.space.r();
        let start = self.peek().clone();
        let (name, args) = self.atom_head()?;
        if name == "O" && args.len() == r && r > 1 {
            if self.peek().kind == Kind::Hash {
                let t = self.peek().clone();
                return Err(self.error_at(&t, "line-bundle shorthand cannot be combined with `#`"));
            }
            let a = MultiDegree(args.iter().map(|(v, _)| *v).collect());
            return BoxProduct::line(self.space, &a).map_err(|e| self.error_at(&start, e.to_string()));
        }
        let mut factors = vec![self.atom(0, &start, &name, &args)?];
        while self.peek().kind == Kind::Hash {
            self.bump();
            let t = self.peek().clone();
            if factors.len() == r {
                return Err(self.error_at(&t, format!("too many factors: the space has {r}")));
            }
            let (name, args) = self.atom_head()?;
            factors.push(self.atom(factors.len(), &t, &name, &args)?);
        }
        if factors.len() != r {
            let t = self.peek().clone();
            return Err(self.error_at(&t, format!("expected {r} factors joined by `#`, found {}", factors.len())));
        }
        Ok(BoxProduct::new(factors))
    }

    fn atom_head(&mut self) -> ParseResult<(String, Vec<(i64, Token)>)> {
        let t = self.bump();
        let Kind::Ident(name) = &t.kind else {
            return Err(self.error_at(&t, "expected `O`, `Om` or `LT`"));
        };
        if !matches!(name.as_str(), "O" | "Om" | "LT") {
            return Err(self.error_at(&t, "expected `O`, `Om` or `LT`"));
        }
        let name = name.clone();
        Ok((name, self.args()?))
    }

    fn atom(&self, factor: usize, at: &Token, name: &str, args: &[(i64, Token)]) -> ParseResult<FactorSheaf> {
        let n = self.space.dims()[factor];
        let r = self.space.r();
        match (name, args) {
            ("O", [(k, _)]) => Ok(FactorSheaf::line(n, *k)),
            ("O", _) => Err(self.error_at(at, format!("`O` takes 1 argument per factor or {r} as shorthand"))),
            ("Om", [(p, pt), (k, _)]) | ("LT", [(p, pt), (k, _)]) => {
                if *p < 0 || *p > n as i64 {
                    return Err(self.error_at(pt, format!("exterior power {p} out of range 0..={n}")));
                }
                let built = if name == "Om" {
                    FactorSheaf::omega(n, *p, *k)
                } else {
                    FactorSheaf::from_wedge_tangent(n, *p, *k)
                };
                built.map_err(|e| self.error_at(at, e.to_string()))
            }
            _ => Err(self.error_at(at, format!("`{name}` takes 2 arguments"))),
        }
    }
}

/// Parses a sheaf expression on `space`. `line` is reported in errors.
pub fn parse_sheaf_at(text: &str, space: &Space, line: usize) -> ParseResult<SplitSheaf> {
    let mut p = Parser { tokens: tokenize(text, line)?, pos: 0, line, space };
    p.expr()
}

pub fn parse_sheaf(text: &str, space: &Space) -> ParseResult<SplitSheaf> {
    parse_sheaf_at(text, space, 1)
}

pub fn parse_space(text: &str) -> ParseResult<Space> {
    let err = |column: usize, token: &str, message: &str| ParseError {
        line: 1,
        column,
        token: token.to_string(),
        message: message.to_string(),
    };
    let mut dims = Vec::new();
    let mut column = 1;
    for part in text.split('x') {
        let Some(digits) = part.strip_prefix('P') else {
            return Err(err(column, part, "expected `P<n>`"));
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(column + 1, digits, "malformed dimension"));
        }
        let n: u32 = digits.parse().map_err(|_| err(column + 1, digits, "malformed dimension"))?;
        if n < 1 {
            return Err(err(column + 1, digits, "dimension must be at least 1"));
        }
        dims.push(n);
        column += part.len() + 1;
    }
    Space::new(dims).map_err(|e| err(1, text, &e.to_string()))
}

/// A comma-separated integer vector, optionally parenthesized: `(1,-2)` or `1,-2`.
pub fn parse_degree(text: &str, space: &Space) -> ParseResult<MultiDegree> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let mut out = Vec::new();
    let mut column = text.find(inner).unwrap_or(0) + 1;
    for part in inner.split(',') {
        let v = part.trim().parse::<i64>().map_err(|_| ParseError {
            line: 1,
            column,
            token: part.to_string(),
            message: "expected integer".into(),
        })?;
        out.push(v);
        column += part.len() + 1;
    }
    if out.len() != space.r() {
        return Err(ParseError {
            line: 1,
            column: 1,
            token: text.to_string(),
            message: format!("expected {} entries, found {}", space.r(), out.len()),
        });
    }
    Ok(MultiDegree(out))
}
