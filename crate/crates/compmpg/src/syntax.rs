//! Concrete syntax for diagrams: lexer, recursive-descent parser and printer.
//!
//! ```text
//! term  := "let" IDENT "=" term "in" term | sum
//! sum   := seq { "(+)" seq }
//! seq   := atom { ";" atom }
//! atom  := "(" term ")" | "tr" "[" NAT "]" "(" term ")" | const ["^" NAT] | IDENT | leaf
//! leaf  := "game" "(" NAT "," NAT ")" "->" "(" NAT "," NAT ")" "{" { posdecl | edgedecl } "}"
//! posdecl  := "pos" IDENT ":" ("E"|"A") RATIONAL ";"
//! edgedecl := "edge" port "->" port ";"
//! port  := "lhs.r" NAT | "lhs.l" NAT | "rhs.r" NAT | "rhs.l" NAT | IDENT
//! ```
//!
//! `//` starts a comment running to the end of the line.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use compmpg_core::diagram::{resolve_sharing, DiagramError, SharedDag};
use compmpg_core::game::{entrance_port, exit_port, validate_game, GameError, Port, RawEndpoint, RawGame, Target};
use compmpg_core::{Arity, ConstKind, OpenGame, Role, Span, Term, TermKind, Weight};

const KEYWORDS: [&str; 4] = ["let", "in", "tr", "game"];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Syntax { line: usize, col: usize, expected: Vec<String>, found: String },
    #[error("{span}: invalid game: {error}")]
    InvalidGame { span: Span, error: GameError },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::Syntax { line, col, .. } => Span::new(*line, *col),
            ParseError::InvalidGame { span, .. } => *span,
            ParseError::Diagram(e) => e.span(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Colon,
    Eq,
    Arrow,
    Plus,
    Caret,
    Dot,
    Slash,
    Minus,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Num(s) => return write!(f, "`{s}`"),
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Comma => "`,`",
            Tok::Semi => "`;`",
            Tok::Colon => "`:`",
            Tok::Eq => "`=`",
            Tok::Arrow => "`->`",
            Tok::Plus => "`(+)`",
            Tok::Caret => "`^`",
            Tok::Dot => "`.`",
            Tok::Slash => "`/`",
            Tok::Minus => "`-`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let bump = |i: &mut usize, col: &mut usize, n: usize| {
        *i += n;
        *col += n;
    };
    while i < chars.len() {
        let c = chars[i];
        let span = Span::new(line, col);
        let at = |k: usize| chars.get(i + k).copied();
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            bump(&mut i, &mut col, 1);
            continue;
        }
        if c == '/' && at(1) == Some('/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '(' && at(1) == Some('+') && at(2) == Some(')') {
            out.push((Tok::Plus, span));
            bump(&mut i, &mut col, 3);
            continue;
        }
        if c == '-' && at(1) == Some('>') {
            out.push((Tok::Arrow, span));
            bump(&mut i, &mut col, 2);
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), span));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            col += i - start;
            out.push((Tok::Num(chars[start..i].iter().collect()), span));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            '=' => Tok::Eq,
            '^' => Tok::Caret,
            '.' => Tok::Dot,
            '/' => Tok::Slash,
            '-' => Tok::Minus,
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: vec!["a token".into()],
                    found: format!("`{c}`"),
                })
            }
        };
        out.push((tok, span));
        bump(&mut i, &mut col, 1);
    }
    out.push((Tok::Eof, Span::new(line, col)));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn advance(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let span = self.span();
        Err(ParseError::Syntax {
            line: span.line,
            col: span.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.advance().1)
        } else {
            self.error(&[&tok.to_string()])
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn expect_word(&mut self, w: &str) -> Result<Span, ParseError> {
        if self.is_word(w) {
            Ok(self.advance().1)
        } else {
            self.error(&[&format!("`{w}`")])
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.advance();
                Ok(s)
            }
            _ => self.error(&[what]),
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) if !s.contains('.') => match s.parse() {
                Ok(n) => {
                    self.advance();
                    Ok(n)
                }
                Err(_) => self.error(&["a natural number that fits in a machine word"]),
            },
            _ => self.error(&["a natural number"]),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if self.is_word("let") {
            let span = self.advance().1;
            let name = self.variable_name()?;
            self.expect(Tok::Eq)?;
            let bound = self.term()?;
            self.expect_word("in")?;
            let body = self.term()?;
            return Ok(Term::at(TermKind::Let(name, Box::new(bound), Box::new(body)), span));
        }
        self.sum()
    }

    fn variable_name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) && ConstKind::from_name(s).is_none() => {
                self.ident("a variable name")
            }
            _ => self.error(&["a variable name"]),
        }
    }

    fn sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.seq()?;
        while *self.peek() == Tok::Plus {
            let span = self.advance().1;
            let rhs = self.seq()?;
            t = Term::at(TermKind::Sum(Box::new(t), Box::new(rhs)), span);
        }
        Ok(t)
    }

    fn seq(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while *self.peek() == Tok::Semi {
            let span = self.advance().1;
            let rhs = self.atom()?;
            t = Term::at(TermKind::Seq(Box::new(t), Box::new(rhs)), span);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::LParen => {
                self.advance();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(w) if w == "tr" => {
                self.advance();
                self.expect(Tok::LBracket)?;
                let l = self.nat()?;
                self.expect(Tok::RBracket)?;
                self.expect(Tok::LParen)?;
                let body = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::at(TermKind::Trace(l, Box::new(body)), span))
            }
            Tok::Ident(w) if w == "game" => self.leaf(),
            Tok::Ident(w) => {
                if let Some(k) = ConstKind::from_name(&w) {
                    self.advance();
                    let mut n = 1;
                    if *self.peek() == Tok::Caret {
                        self.advance();
                        if matches!(self.peek(), Tok::Num(s) if s == "0") {
                            return self.error(&["a positive wire count"]);
                        }
                        n = self.nat()?;
                    }
                    let mut t = Term::at(TermKind::Const(k), span);
                    for _ in 1..n {
                        t = Term::at(TermKind::Sum(Box::new(t), Box::new(Term::at(TermKind::Const(k), span))), span);
                    }
                    return Ok(t);
                }
                if KEYWORDS.contains(&w.as_str()) {
                    return self.error(&["a term"]);
                }
                self.advance();
                Ok(Term::at(TermKind::Var(w), span))
            }
            _ => self.error(&["`(`", "`tr`", "`game`", "a constant", "a variable"]),
        }
    }

    fn arity(&mut self) -> Result<Arity, ParseError> {
        self.expect(Tok::LParen)?;
        let r = self.nat()?;
        self.expect(Tok::Comma)?;
        let l = self.nat()?;
        self.expect(Tok::RParen)?;
        Ok(Arity::new(r, l))
    }

    fn leaf(&mut self) -> Result<Term, ParseError> {
        let span = self.expect_word("game")?;
        let left = self.arity()?;
        self.expect(Tok::Arrow)?;
        let right = self.arity()?;
        self.expect(Tok::LBrace)?;
        let mut raw = RawGame::new(left, right);
        loop {
            if self.is_word("pos") {
                self.advance();
                let label = self.ident("a position name")?;
                self.expect(Tok::Colon)?;
                let role = match self.peek() {
                    Tok::Ident(s) if s == "E" => Role::Exists,
                    Tok::Ident(s) if s == "A" => Role::Forall,
                    _ => return self.error(&["`E`", "`A`"]),
                };
                self.advance();
                let weight = self.rational()?;
                self.expect(Tok::Semi)?;
                raw = raw.position(&label, role, weight);
            } else if self.is_word("edge") {
                self.advance();
                let from = self.port()?;
                self.expect(Tok::Arrow)?;
                let to = self.port()?;
                self.expect(Tok::Semi)?;
                raw = raw.edge(from, to);
            } else if *self.peek() == Tok::RBrace {
                self.advance();
                break;
            } else {
                return self.error(&["`pos`", "`edge`", "`}`"]);
            }
        }
        let game = validate_game(&raw).map_err(|error| ParseError::InvalidGame { span, error })?;
        Ok(Term::at(TermKind::Leaf(game), span))
    }

    fn rational(&mut self) -> Result<Weight, ParseError> {
        let mut text = String::new();
        if *self.peek() == Tok::Minus {
            self.advance();
            text.push('-');
        }
        match self.peek().clone() {
            Tok::Num(s) => {
                self.advance();
                text.push_str(&s);
            }
            _ => return self.error(&["a rational weight"]),
        }
        if *self.peek() == Tok::Slash {
            self.advance();
            match self.peek().clone() {
                Tok::Num(s) if !s.contains('.') && s.bytes().any(|b| b != b'0') => {
                    self.advance();
                    text.push('/');
                    text.push_str(&s);
                }
                _ => return self.error(&["a positive denominator"]),
            }
        }
        match text.parse() {
            Ok(w) => Ok(w),
            Err(_) => self.error(&["a rational weight"]),
        }
    }

    fn port(&mut self) -> Result<RawEndpoint, ParseError> {
        let side = match self.peek() {
            Tok::Ident(s) if (s == "lhs" || s == "rhs") && *self.peek_at(1) == Tok::Dot => s == "lhs",
            Tok::Ident(_) => return Ok(RawEndpoint::Pos(self.ident("a port")?)),
            _ => return self.error(&["a port"]),
        };
        self.advance();
        self.advance();
        let name = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.error(&["`r<n>`", "`l<n>`"]),
        };
        let (dir, digits) = name.split_at(1);
        let index: usize = match digits.parse() {
            Ok(n) if n >= 1 && (dir == "r" || dir == "l") => n,
            _ => return self.error(&["`r<n>`", "`l<n>` with n >= 1"]),
        };
        self.advance();
        let k = index - 1;
        Ok(RawEndpoint::Port(match (side, dir) {
            (true, "r") => Port::LhsR(k),
            (true, _) => Port::LhsL(k),
            (false, "r") => Port::RhsR(k),
            (false, _) => Port::RhsL(k),
        }))
    }
}

/// Parses a diagram term. Arities are not checked here.
pub fn parse(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.error(&["`;`", "`(+)`", "end of input"]);
    }
    Ok(t)
}

/// Parses, checks arities and resolves sharing.
pub fn parse_diagram(src: &str) -> Result<SharedDag, ParseError> {
    Ok(resolve_sharing(&parse(src)?)?)
}

/// Source text for a term; `parse(&print_term(t)) == Ok(t)`.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    print_at(t, Level::Term, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Atom,
    Seq,
    Sum,
    Term,
}

fn level(t: &Term) -> Level {
    match t.kind {
        TermKind::Let(..) => Level::Term,
        TermKind::Sum(..) => Level::Sum,
        TermKind::Seq(..) => Level::Seq,
        _ => Level::Atom,
    }
}

fn print_at(t: &Term, at: Level, out: &mut String) {
    if level(t) > at {
        out.push('(');
        print_at(t, Level::Term, out);
        out.push(')');
        return;
    }
    match &t.kind {
        TermKind::Let(x, b, body) => {
            // A `let` as the bound term would swallow our `in`.
            let _ = write!(out, "let {x} = ");
            print_at(b, if level(b) == Level::Term { Level::Sum } else { Level::Term }, out);
            out.push_str(" in\n");
            print_at(body, Level::Term, out);
        }
        TermKind::Sum(a, b) => {
            print_at(a, Level::Sum, out);
            out.push_str(" (+) ");
            print_at(b, Level::Seq, out);
        }
        TermKind::Seq(a, b) => {
            print_at(a, Level::Seq, out);
            out.push_str(" ; ");
            print_at(b, Level::Atom, out);
        }
        TermKind::Trace(l, a) => {
            let _ = write!(out, "tr[{l}](");
            print_at(a, Level::Term, out);
            out.push(')');
        }
        TermKind::Const(k) => out.push_str(k.name()),
        TermKind::Var(x) => out.push_str(x),
        TermKind::Leaf(g) => print_game_into(g, out),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if is_ident_start(c)) && cs.all(is_ident_char)
}

/// Position names usable in source: unique identifiers, renamed with a
/// numeric suffix where the stored labels collide or are not identifiers.
pub fn printable_labels(g: &OpenGame) -> Vec<String> {
    let mut taken: HashSet<String> = HashSet::new();
    let wanted: Vec<&str> = g.positions().iter().map(|p| p.label.as_str()).collect();
    let mut counts = std::collections::HashMap::new();
    for w in &wanted {
        *counts.entry(*w).or_insert(0usize) += 1;
    }
    let mut out = Vec::with_capacity(wanted.len());
    // Unique valid labels keep their name; everything else is renamed after.
    for w in &wanted {
        if is_identifier(w) && counts[w] == 1 {
            taken.insert(w.to_string());
        }
    }
    for (q, w) in wanted.iter().enumerate() {
        if is_identifier(w) && counts[w] == 1 {
            out.push(w.to_string());
            continue;
        }
        let base: String = w.chars().map(|c| if is_ident_char(c) { c } else { '_' }).collect();
        let base = if base.starts_with(is_ident_start) { base } else { format!("q{base}") };
        let mut k = q;
        let mut name = format!("{base}_{k}");
        while taken.contains(&name) {
            k += 1;
            name = format!("{base}_{k}");
        }
        taken.insert(name.clone());
        out.push(name);
    }
    out
}

fn print_game_into(g: &OpenGame, out: &mut String) {
    let names = printable_labels(g);
    let (l, r) = (g.left(), g.right());
    let _ = writeln!(out, "game ({},{}) -> ({},{}) {{", l.right, l.left, r.right, r.left);
    for (p, name) in g.positions().iter().zip(&names) {
        let role = match p.role {
            Role::Exists => 'E',
            Role::Forall => 'A',
        };
        let _ = writeln!(out, "  pos {name} : {role} {};", p.weight);
    }
    let ep = |t: Target| match t {
        Target::Exit(j) => exit_port(l, r, j).to_string(),
        Target::Pos(q) => names[q].clone(),
    };
    for (i, t) in g.entrance_targets().iter().enumerate() {
        let _ = writeln!(out, "  edge {} -> {};", entrance_port(l, r, i), ep(*t));
    }
    for q in 0..g.positions().len() {
        for t in g.successors(q) {
            let _ = writeln!(out, "  edge {} -> {};", names[q], ep(*t));
        }
    }
    out.push('}');
}

/// A single game in leaf syntax.
pub fn print_game(g: &OpenGame) -> String {
    let mut out = String::new();
    print_game_into(g, &mut out);
    out.push('\n');
    out
}
