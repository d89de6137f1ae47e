//! The construction script language.
//!
//! ```text
//! # circling the square
//! let r = circle-from-square(side: 1)
//! let s = square-from-circle(diameter: r.diameter, method: "fine")
//! render r as circling
//! report r, s.area
//! ```
//!
//! Statements end at a newline or `;`. Arguments are exact expressions over
//! integers with `+ - * /`, `sqrt(..)`, parentheses, points `(x, y)`, quoted
//! text, and earlier bindings (`name` or `name.field`). Decimal literals are
//! rejected so every quantity stays exact.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use sulva_core::registry::{self, RegistryError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    SyntaxError {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: unknown operation `{name}`")]
    UnknownOperation {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: `{name}` is not bound")]
    UnboundName {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: {message}")]
    ArityMismatch {
        line: usize,
        col: usize,
        message: String,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::SyntaxError { line, col, .. }
            | ParseError::UnknownOperation { line, col, .. }
            | ParseError::UnboundName { line, col, .. }
            | ParseError::ArityMismatch { line, col, .. } => (*line, *col),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Integer(BigInt),
    Text(String),
    Name(String),
    Field(String, String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Tuple(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub name: Option<String>,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reference {
    pub name: String,
    pub field: Option<String>,
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => write!(f, "{}.{}", self.name, field),
            None => f.write_str(&self.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Let {
        name: String,
        op: String,
        args: Vec<Arg>,
    },
    Render {
        names: Vec<String>,
        output: String,
    },
    Report {
        items: Vec<Reference>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub kind: StatementKind,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
    bound: Vec<String>,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            line: self.line,
            col: self.col,
            message: message.into(),
        })
    }

    /// Skips blanks and comments; newlines too when `newlines` is set.
    fn skip(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n') {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, nl: bool) -> Result<(), ParseError> {
        self.skip(nl);
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => {
                    self.syntax(format!("expected `{c}`, found `{}`", found.escape_debug()))
                }
                None => self.syntax(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(c) if is_ident_start(c) => {}
            Some(c) => {
                return self.syntax(format!("expected a name, found `{}`", c.escape_debug()))
            }
            None => return self.syntax("expected a name, found end of input"),
        }
        let start = self.pos;
        while self.peek().is_some_and(is_ident_char) {
            self.bump();
        }
        Ok(self.src[start..self.pos].to_string())
    }

    /// Operation names may contain hyphens.
    fn op_name(&mut self) -> Result<String, ParseError> {
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return self.syntax("expected an operation name");
        }
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
        {
            self.bump();
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn keyword(&mut self, word: &str) -> bool {
        let rest = &self.src[self.pos..];
        if rest.starts_with(word) && !rest[word.len()..].chars().next().is_some_and(is_ident_char) {
            for _ in 0..word.chars().count() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn script(&mut self) -> Result<Script, ParseError> {
        let mut statements = Vec::new();
        loop {
            self.skip(true);
            while self.eat(';') {
                self.skip(true);
            }
            if self.peek().is_none() {
                break;
            }
            statements.push(self.statement()?);
            self.skip(false);
            match self.peek() {
                None => break,
                Some('\n') | Some(';') => {
                    self.bump();
                }
                Some(c) => {
                    return self
                        .syntax(format!("unexpected `{}` after statement", c.escape_debug()))
                }
            }
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        let (line, col) = (self.line, self.col);
        let kind = if self.keyword("let") {
            self.let_statement(line, col)?
        } else if self.keyword("render") {
            let mut names = vec![self.bound_name()?];
            loop {
                self.skip(false);
                if !self.eat(',') {
                    break;
                }
                self.skip(false);
                names.push(self.bound_name()?);
            }
            self.skip(false);
            if !self.keyword("as") {
                return self.syntax("expected `as <figure name>`");
            }
            self.skip(false);
            let output = self.ident()?;
            StatementKind::Render { names, output }
        } else if self.keyword("report") {
            let mut items = vec![self.reference()?];
            loop {
                self.skip(false);
                if !self.eat(',') {
                    break;
                }
                items.push(self.reference()?);
            }
            StatementKind::Report { items }
        } else {
            return self.syntax("expected `let`, `render` or `report`");
        };
        Ok(Statement { kind, line, col })
    }

    fn bound_name(&mut self) -> Result<String, ParseError> {
        self.skip(false);
        let (line, col) = (self.line, self.col);
        let name = self.ident()?;
        if !self.bound.contains(&name) {
            return Err(ParseError::UnboundName { line, col, name });
        }
        Ok(name)
    }

    fn reference(&mut self) -> Result<Reference, ParseError> {
        let name = self.bound_name()?;
        let field = if self.peek() == Some('.') {
            self.bump();
            Some(self.ident()?)
        } else {
            None
        };
        Ok(Reference { name, field })
    }

    fn let_statement(&mut self, line: usize, col: usize) -> Result<StatementKind, ParseError> {
        self.skip(false);
        let name = self.ident()?;
        self.expect('=', false)?;
        self.skip(false);
        let (op_line, op_col) = (self.line, self.col);
        let op = self.op_name()?;
        let spec = registry::lookup(&op).map_err(|_| ParseError::UnknownOperation {
            line: op_line,
            col: op_col,
            name: op.clone(),
        })?;
        self.expect('(', false)?;
        let mut args = Vec::new();
        self.skip(true);
        if !self.eat(')') {
            loop {
                self.skip(true);
                args.push(self.arg()?);
                self.skip(true);
                if self.eat(',') {
                    continue;
                }
                self.expect(')', true)?;
                break;
            }
        }
        let names = bind_names(spec, &args).map_err(|message| ParseError::ArityMismatch {
            line,
            col,
            message,
        })?;
        spec.check_arity(&names.iter().map(String::as_str).collect::<Vec<_>>())
            .map_err(|e| ParseError::ArityMismatch {
                line,
                col,
                message: match e {
                    RegistryError::Arity { op, reason } => format!("{op}: {reason}"),
                    other => other.to_string(),
                },
            })?;
        self.bound.push(name.clone());
        Ok(StatementKind::Let { name, op, args })
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        // `name:` introduces a named argument
        let save = (self.pos, self.line, self.col);
        if self.peek().is_some_and(is_ident_start) {
            let name = self.ident()?;
            self.skip(false);
            if self.eat(':') {
                self.skip(true);
                return Ok(Arg {
                    name: Some(name),
                    value: self.expr()?,
                });
            }
            (self.pos, self.line, self.col) = save;
        }
        Ok(Arg {
            name: None,
            value: self.expr()?,
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            self.skip(false);
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek() == Some('-') {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            self.skip(false);
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        self.skip(false);
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        self.skip(false);
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
                    return self.syntax(
                        "decimal literals are not accepted; write the value as a fraction",
                    );
                }
                let digits = &self.src[start..self.pos];
                Ok(Expr::Integer(digits.parse().expect("digits parse")))
            }
            Some('"') => {
                self.bump();
                let start = self.pos;
                while self.peek().is_some_and(|c| c != '"' && c != '\n') {
                    self.bump();
                }
                let text = self.src[start..self.pos].to_string();
                if !self.eat('"') {
                    return self.syntax("unterminated text");
                }
                Ok(Expr::Text(text))
            }
            Some('(') => {
                self.bump();
                self.skip(true);
                let first = self.expr()?;
                self.skip(true);
                if self.eat(')') {
                    return Ok(first);
                }
                let mut items = vec![first];
                while self.eat(',') {
                    self.skip(true);
                    items.push(self.expr()?);
                    self.skip(true);
                }
                self.expect(')', true)?;
                Ok(Expr::Tuple(items))
            }
            Some(c) if is_ident_start(c) => {
                let (line, col) = (self.line, self.col);
                let name = self.ident()?;
                if name == "sqrt" {
                    self.skip(false);
                    if self.peek() == Some('(') {
                        self.bump();
                        self.skip(true);
                        let inner = self.expr()?;
                        self.expect(')', true)?;
                        return Ok(Expr::Sqrt(Box::new(inner)));
                    }
                }
                if !self.bound.contains(&name) {
                    return Err(ParseError::UnboundName { line, col, name });
                }
                if self.peek() == Some('.') {
                    self.bump();
                    let field = self.ident()?;
                    return Ok(Expr::Field(name, field));
                }
                Ok(Expr::Name(name))
            }
            Some(c) => self.syntax(format!("unexpected `{}` in expression", c.escape_debug())),
            None => self.syntax("unexpected end of input in expression"),
        }
    }
}

/// Names each argument: positional ones take the parameters in order.
pub fn bind_names(op: &registry::Operation, args: &[Arg]) -> Result<Vec<String>, String> {
    let mut names = Vec::new();
    let mut seen_named = false;
    for (i, a) in args.iter().enumerate() {
        match &a.name {
            Some(n) => {
                seen_named = true;
                names.push(n.clone());
            }
            None if seen_named => return Err("positional argument after a named one".into()),
            None => match op.params.get(i) {
                Some(p) => names.push(p.name.to_string()),
                None => {
                    return Err(format!(
                        "{} takes {} argument(s), got {}",
                        op.name,
                        op.params.len(),
                        args.len()
                    ))
                }
            },
        }
    }
    Ok(names)
}

pub fn parse_script(source: &str) -> Result<Script, ParseError> {
    Parser {
        src: source,
        pos: 0,
        line: 1,
        col: 1,
        bound: Vec::new(),
    }
    .script()
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        _ => 4,
    }
}

fn write_expr(e: &Expr, out: &mut String) {
    let wrap = |child: &Expr, min: u8, out: &mut String| {
        if precedence(child) < min {
            out.push('(');
            write_expr(child, out);
            out.push(')');
        } else {
            write_expr(child, out);
        }
    };
    match e {
        Expr::Integer(n) => out.push_str(&n.to_string()),
        Expr::Text(t) => {
            out.push('"');
            out.push_str(t);
            out.push('"');
        }
        Expr::Name(n) => out.push_str(n),
        Expr::Field(n, f) => {
            out.push_str(n);
            out.push('.');
            out.push_str(f);
        }
        Expr::Neg(inner) => {
            out.push('-');
            wrap(inner, 3, out);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            wrap(a, 1, out);
            out.push_str(if matches!(e, Expr::Add(..)) {
                " + "
            } else {
                " - "
            });
            wrap(b, 2, out);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            wrap(a, 2, out);
            out.push_str(if matches!(e, Expr::Mul(..)) { "*" } else { "/" });
            wrap(b, 3, out);
        }
        Expr::Sqrt(inner) => {
            out.push_str("sqrt(");
            write_expr(inner, out);
            out.push(')');
        }
        Expr::Tuple(items) => {
            out.push('(');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_expr(item, out);
            }
            out.push(')');
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_expr(self, &mut s);
        f.write_str(&s)
    }
}

/// Canonical source text; parsing it gives back the same statements.
pub fn unparse(script: &Script) -> String {
    let mut out = String::new();
    for st in &script.statements {
        match &st.kind {
            StatementKind::Let { name, op, args } => {
                let args: Vec<String> = args
                    .iter()
                    .map(|a| match &a.name {
                        Some(n) => format!("{n}: {}", a.value),
                        None => a.value.to_string(),
                    })
                    .collect();
                out.push_str(&format!("let {name} = {op}({})\n", args.join(", ")));
            }
            StatementKind::Render { names, output } => {
                out.push_str(&format!("render {} as {output}\n", names.join(", ")));
            }
            StatementKind::Report { items } => {
                let items: Vec<String> = items.iter().map(|r| r.to_string()).collect();
                out.push_str(&format!("report {}\n", items.join(", ")));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(s: &Script) -> Vec<StatementKind> {
        s.statements.iter().map(|s| s.kind.clone()).collect()
    }

    #[test]
    fn single_binding() {
        let s = parse_script("let r = circle-from-square(side: 1)").unwrap();
        assert_eq!(s.statements.len(), 1);
        assert!(
            matches!(&s.statements[0].kind, StatementKind::Let { op, .. } if op == "circle-from-square")
        );
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            parse_script("let x = frobnicate(1)"),
            Err(ParseError::UnknownOperation {
                line: 1,
                col: 9,
                ..
            })
        ));
        assert!(matches!(
            parse_script("let y = sum-of-squares(a: 3)"),
            Err(ParseError::ArityMismatch { .. })
        ));
        assert!(matches!(
            parse_script("report q"),
            Err(ParseError::UnboundName { .. })
        ));
        assert!(matches!(
            parse_script("let y = sqrt-n-altitude(n: 1.5)"),
            Err(ParseError::SyntaxError { line: 1, .. })
        ));
        let err = parse_script("let a = sqrt2-savisesha()\nlet b = sum-of-squares(a: a, b: )")
            .unwrap_err();
        assert_eq!(err.position().0, 2);
    }

    #[test]
    fn expressions_and_separators() {
        let src = "let a = sum-of-squares(3, b: 2*sqrt(2/15) - -1); let b = compare-sqrt2(a) # tail\nreport a, b.agreement_digits";
        let s = parse_script(src).unwrap();
        assert_eq!(s.statements.len(), 3);
        let again = parse_script(&unparse(&s)).unwrap();
        assert_eq!(kinds(&again), kinds(&s));
    }

    #[test]
    fn unparse_keeps_grouping() {
        let s = parse_script("let a = sum-of-squares(a: (1 + 2)*3, b: 1/(2/3))").unwrap();
        let text = unparse(&s);
        assert_eq!(text, "let a = sum-of-squares(a: (1 + 2)*3, b: 1/(2/3))\n");
    }
}
