//! Recursive-descent parser producing an unresolved syntax tree.

use num_bigint::BigInt;

use super::lexer::{tokenize, ParseError, Span, Tok};

#[derive(Clone, Debug)]
pub struct Name {
    pub text: String,
    pub quoted: bool,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt, Span),
    Name(Name),
    Neg(Box<Expr>, Span),
    Bin(char, Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, u32, Span),
}

impl Expr {
    pub fn span(&self) -> Span {
        match self {
            Expr::Int(_, s) | Expr::Neg(_, s) | Expr::Bin(_, _, _, s) | Expr::Pow(_, _, s) => *s,
            Expr::Name(n) => n.span,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub args: Vec<Name>,
    pub value: Expr,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub enum Item {
    Meta {
        key: Name,
        value: String,
    },
    Module {
        name: Name,
        basis: Vec<(Name, i32)>,
        graded: bool,
    },
    Map {
        name: Name,
        /// `None` for `bracket` without an explicit module.
        sources: Option<Vec<Name>>,
        target: Option<Name>,
        degree: i32,
        vars: Option<(Vec<Name>, Span)>,
        entries: Vec<Entry>,
    },
    Element {
        name: Name,
        module: Name,
        value: Expr,
    },
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            span: self.span(),
            message: format!("unexpected {}", self.peek()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn eat(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> PResult<Span> {
        if self.is_punct(p) {
            Ok(self.bump().1)
        } else {
            Err(self.error(&[&format!("`{p}`")]))
        }
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let span = self.bump().1;
                Ok(Name { text, quoted: false, span })
            }
            Tok::Quoted(text) => {
                let span = self.bump().1;
                Ok(Name { text, quoted: true, span })
            }
            _ => Err(self.error(&["name"])),
        }
    }

    fn int(&mut self) -> PResult<i32> {
        let neg = self.eat("-");
        match self.peek().clone() {
            Tok::Int(n) => {
                let span = self.bump().1;
                let v: i32 = n
                    .try_into()
                    .map_err(|_| ParseError::new(span, "integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn file(&mut self) -> PResult<Vec<Item>> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => return Ok(items),
                Tok::Ident(k) if k == "module" => items.push(self.module()?),
                Tok::Ident(k) if k == "map" => items.push(self.map()?),
                Tok::Ident(k) if k == "bracket" => items.push(self.bracket()?),
                Tok::Ident(k) if k == "element" => items.push(self.element()?),
                Tok::Ident(k) if k == "meta" => items.push(self.meta()?),
                _ => return Err(self.error(&["`module`", "`map`", "`bracket`", "`element`", "`meta`"])),
            }
        }
    }

    fn meta(&mut self) -> PResult<Item> {
        self.bump();
        let key = self.name()?;
        self.expect("=")?;
        let value = match self.peek().clone() {
            Tok::Ident(s) | Tok::Quoted(s) => s,
            Tok::Int(n) => n.to_string(),
            _ => return Err(self.error(&["name", "integer"])),
        };
        self.bump();
        Ok(Item::Meta { key, value })
    }

    fn module(&mut self) -> PResult<Item> {
        self.bump();
        let name = self.name()?;
        self.expect("{")?;
        let mut basis = Vec::new();
        let mut graded = false;
        if self.is_keyword("basis") {
            self.bump();
            if !self.is_punct("}") {
                loop {
                    let b = self.name()?;
                    let deg = if self.eat(":") {
                        graded = true;
                        self.int()?
                    } else {
                        0
                    };
                    basis.push((b, deg));
                    if !self.eat(",") {
                        break;
                    }
                }
            }
        }
        if !self.is_punct("}") {
            return Err(self.error(if basis.is_empty() { &["`basis`", "`}`"] } else { &["`,`", "`}`"] }));
        }
        self.bump();
        Ok(Item::Module { name, basis, graded })
    }

    fn vars(&mut self) -> PResult<Option<(Vec<Name>, Span)>> {
        if !self.is_keyword("vars") {
            return Ok(None);
        }
        let span = self.bump().1;
        self.expect("(")?;
        let mut names = Vec::new();
        if !self.is_punct(")") {
            loop {
                names.push(self.name()?);
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect(")")?;
        Ok(Some((names, span)))
    }

    fn map(&mut self) -> PResult<Item> {
        self.bump();
        let name = self.name()?;
        self.expect(":")?;
        let mut sources = Vec::new();
        loop {
            sources.push(self.name()?);
            if !self.eat(",") {
                break;
            }
        }
        self.expect("->")?;
        let target = self.name()?;
        let mut degree = 0;
        if self.is_keyword("degree") {
            self.bump();
            degree = self.int()?;
        }
        let vars = self.vars()?;
        let entries = self.entries()?;
        Ok(Item::Map {
            name,
            sources: Some(sources),
            target: Some(target),
            degree,
            vars,
            entries,
        })
    }

    fn bracket(&mut self) -> PResult<Item> {
        let span = self.bump().1;
        let module = if matches!(self.peek(), Tok::Quoted(_))
            || matches!(self.peek(), Tok::Ident(s) if s != "vars")
        {
            Some(self.name()?)
        } else {
            None
        };
        let vars = self.vars()?;
        let entries = self.entries()?;
        Ok(Item::Map {
            name: Name {
                text: "bracket".into(),
                quoted: false,
                span,
            },
            sources: module.clone().map(|m| vec![m.clone(), m]),
            target: module,
            degree: 0,
            vars,
            entries,
        })
    }

    fn element(&mut self) -> PResult<Item> {
        self.bump();
        let name = self.name()?;
        if !self.is_keyword("in") {
            return Err(self.error(&["`in`"]));
        }
        self.bump();
        let module = self.name()?;
        self.expect("{")?;
        let value = self.expr()?;
        self.expect("}")?;
        Ok(Item::Element { name, module, value })
    }

    fn entries(&mut self) -> PResult<Vec<Entry>> {
        self.expect("{")?;
        let mut out = Vec::new();
        loop {
            if self.eat("}") {
                return Ok(out);
            }
            if !self.is_punct("[") {
                return Err(self.error(&["`[`", "`}`"]));
            }
            let span = self.bump().1;
            let mut args = Vec::new();
            loop {
                args.push(self.name()?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("]")?;
            self.expect("=")?;
            let value = self.expr()?;
            self.eat(";");
            out.push(Entry { args, value, span });
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.is_punct("+") {
                '+'
            } else if self.is_punct("-") {
                '-'
            } else {
                return Ok(lhs);
            };
            let span = self.bump().1;
            let rhs = self.product()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), span);
        }
    }

    fn starts_primary(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Quoted(_) | Tok::Int(_)) || self.is_punct("(")
    }

    fn product(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_punct("*") || self.is_punct("/") {
                let op = if self.is_punct("*") { '*' } else { '/' };
                let span = self.bump().1;
                let rhs = self.unary()?;
                lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs), span);
            } else if self.starts_primary() {
                // juxtaposition: `(D + 2*l) L`, `3 x`
                let span = self.span();
                let rhs = self.power()?;
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(rhs), span);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.is_punct("-") {
            let span = self.bump().1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Box::new(inner), span));
        }
        if self.eat("+") {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.primary()?;
        if self.is_punct("^") {
            let span = self.bump().1;
            let e = match self.peek().clone() {
                Tok::Int(n) => {
                    let s = self.bump().1;
                    u32::try_from(n).map_err(|_| ParseError::new(s, "exponent out of range"))?
                }
                _ => return Err(self.error(&["integer"])),
            };
            return Ok(Expr::Pow(Box::new(base), e, span));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let span = self.bump().1;
                Ok(Expr::Int(n, span))
            }
            Tok::Ident(_) | Tok::Quoted(_) => Ok(Expr::Name(self.name()?)),
            Tok::Punct("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            _ => Err(self.error(&["number", "name", "`(`"])),
        }
    }
}

/// Parses a whole file into items.
pub fn parse_items(src: &str) -> Result<Vec<Item>, ParseError> {
    let toks = tokenize(src)?;
    Parser { toks, pos: 0 }.file()
}

/// Parses a standalone expression (used for polynomials on the command line
/// and in tests).
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if !matches!(p.peek(), Tok::Eof) {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}
