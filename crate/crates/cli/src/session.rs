//! Session files: one `;`-terminated statement per line, `#` comments.
//!
//! ```text
//! ring R = Q[x,y] graded fine;
//! ideal a = (x, y);
//! module M = cyclic (x);
//! module N = cyclic (x) ++ cyclic (y);
//! att-top a=a M=M N=N;
//! ```

use std::fmt;

use fgrad_core::ring::Field;
use fgrad_core::{Grading, MonomialOrder, Polynomial, Ring, RingRef};

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug)]
pub struct RingDecl {
    pub name: String,
    pub ring: RingRef,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CyclicTerm {
    pub gens: Vec<Polynomial>,
    /// generator degree
    pub twist: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModuleExpr {
    /// The free module of rank one, written with the ring's name.
    Ring(String),
    /// Another module binding.
    Name(String),
    /// Cokernel of a matrix whose rows index generators and columns relations.
    Coker { rows: Vec<Vec<Polynomial>>, twists: Option<Vec<Vec<i64>>> },
    Sum(Vec<CyclicTerm>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Ideal(Vec<Polynomial>),
    Sequence(Vec<Polynomial>),
    Module(ModuleExpr),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Ideal(_) => "ideal",
            Value::Sequence(_) => "sequence",
            Value::Module(_) => "module",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Binding {
    pub name: String,
    pub value: Value,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Name(String),
    List(Vec<Polynomial>),
    Int(i64),
    Range(i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Fgrad,
    FilterCheck,
    FindSeq,
    ArtinIndex,
    AllArtinian,
    AttTop,
    AttTopLocal,
    NsVerify,
    NsComposeVerify,
    CechTable,
    Ext,
    Hilbert,
}

impl CommandKind {
    pub const ALL: [CommandKind; 12] = [
        CommandKind::Fgrad,
        CommandKind::FilterCheck,
        CommandKind::FindSeq,
        CommandKind::ArtinIndex,
        CommandKind::AllArtinian,
        CommandKind::AttTop,
        CommandKind::AttTopLocal,
        CommandKind::NsVerify,
        CommandKind::NsComposeVerify,
        CommandKind::CechTable,
        CommandKind::Ext,
        CommandKind::Hilbert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Fgrad => "fgrad",
            CommandKind::FilterCheck => "filter-check",
            CommandKind::FindSeq => "find-seq",
            CommandKind::ArtinIndex => "artin-index",
            CommandKind::AllArtinian => "all-artinian",
            CommandKind::AttTop => "att-top",
            CommandKind::AttTopLocal => "att-top-local",
            CommandKind::NsVerify => "ns-verify",
            CommandKind::NsComposeVerify => "ns-compose-verify",
            CommandKind::CechTable => "cech-table",
            CommandKind::Ext => "ext",
            CommandKind::Hilbert => "hilbert",
        }
    }

    pub fn from_name(s: &str) -> Option<CommandKind> {
        CommandKind::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Accepted argument keys.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            CommandKind::Fgrad => &["a", "b", "M"],
            CommandKind::FilterCheck => &["a", "xs", "M"],
            CommandKind::FindSeq => &["a", "b", "M", "target"],
            CommandKind::ArtinIndex | CommandKind::AllArtinian | CommandKind::AttTop => &["a", "M", "N"],
            CommandKind::AttTopLocal => &["a", "N"],
            CommandKind::NsVerify | CommandKind::NsComposeVerify => &["a", "xs", "M", "N", "window"],
            CommandKind::CechTable => &["a", "M", "N", "window"],
            CommandKind::Ext => &["i", "M", "N"],
            CommandKind::Hilbert => &["M", "window"],
        }
    }
}

#[derive(Clone, Debug)]
pub struct Command {
    pub kind: CommandKind,
    pub args: Vec<(String, Arg, Pos)>,
    pub pos: Pos,
}

impl Command {
    pub fn arg(&self, key: &str) -> Option<(&Arg, Pos)> {
        self.args.iter().find(|(k, _, _)| k == key).map(|(_, a, p)| (a, *p))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    pub ring: Option<RingDecl>,
    pub bindings: Vec<Binding>,
    pub commands: Vec<Command>,
}

impl Session {
    pub fn binding(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().find(|b| b.name == name)
    }
}

pub fn parse_session(text: &str) -> Result<Session, Diagnostic> {
    Parser::new(text).session()
}

struct Parser {
    chars: Vec<char>,
    at: usize,
    line: usize,
    col: usize,
    session: Session,
}

type PResult<T> = Result<T, Diagnostic>;

fn is_word(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), at: 0, line: 1, col: 1, session: Session::default() }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn err<T>(&self, pos: Pos, message: impl Into<String>) -> PResult<T> {
        Err(Diagnostic { pos, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips blanks inside a statement; statements may not span lines.
    fn blanks(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.bump();
        }
    }

    fn between_statements(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while !matches!(self.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.blanks();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.blanks();
        let n = s.chars().count();
        if self.chars[self.at..].iter().take(n).copied().eq(s.chars()) {
            for _ in 0..n {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            self.err(self.pos(), format!("expected `{c}`, found {found}"))
        }
    }

    fn word(&mut self) -> PResult<(String, Pos)> {
        self.blanks();
        let pos = self.pos();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| is_word(c)) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return self.err(pos, "expected a name");
        }
        Ok((s, pos))
    }

    fn peek_word(&mut self) -> String {
        self.blanks();
        self.chars[self.at..].iter().take_while(|&&c| is_word(c) || c == '-').collect()
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if self.peek_word() == kw {
            self.eat_str(kw)
        } else {
            false
        }
    }

    fn int(&mut self) -> PResult<i64> {
        self.blanks();
        let pos = self.pos();
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.bump();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s.parse().or_else(|_| self.err(pos, "expected an integer"))
    }

    fn end(&mut self) -> PResult<()> {
        self.blanks();
        match self.peek() {
            Some(';') => {
                self.bump();
                Ok(())
            }
            Some('#') | Some('\n') | None => self.err(self.pos(), "missing `;` at end of statement"),
            Some(c) => self.err(self.pos(), format!("unexpected `{c}`")),
        }
    }

    fn ring(&self, pos: Pos) -> PResult<RingRef> {
        match &self.session.ring {
            Some(r) => Ok(r.ring.clone()),
            None => self.err(pos, "no ring declared yet"),
        }
    }

    fn session(mut self) -> PResult<Session> {
        loop {
            self.between_statements();
            if self.peek().is_none() {
                return Ok(self.session);
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> PResult<()> {
        let pos = self.pos();
        let head = self.peek_word();
        match head.as_str() {
            "ring" => self.ring_decl(),
            "ideal" | "sequence" | "module" => self.binding(),
            _ => match CommandKind::from_name(&head) {
                Some(kind) => self.command(kind),
                None if head.is_empty() => self.err(pos, format!("unexpected `{}`", self.peek().unwrap_or(' '))),
                None => self.err(pos, format!("unknown statement `{head}`")),
            },
        }
    }

    fn ring_decl(&mut self) -> PResult<()> {
        let pos = self.pos();
        self.eat_str("ring");
        if self.session.ring.is_some() {
            return self.err(pos, "only one ring per session");
        }
        let (name, _) = self.word()?;
        self.expect('=')?;
        self.blanks();
        let fpos = self.pos();
        let field = if self.eat_str("GF(") {
            let p = self.int()?;
            self.expect(')')?;
            u32::try_from(p).ok().and_then(|p| Field::prime(p).ok())
        } else if self.eat_str("ZZ/") {
            let p = self.int()?;
            u32::try_from(p).ok().and_then(|p| Field::prime(p).ok())
        } else if self.eat_str("QQ") || self.eat_str("Q") {
            Some(Field::Rationals)
        } else {
            return self.err(fpos, "expected a field: Q, QQ, GF(p) or ZZ/p");
        };
        let Some(field) = field else { return self.err(fpos, "characteristic must be a prime below 2^31") };
        self.expect('[')?;
        let mut vars = Vec::new();
        if !self.eat(']') {
            loop {
                vars.push(self.word()?.0);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let mut grading = Grading::Standard;
        let mut order = MonomialOrder::DegRevLex;
        loop {
            if self.keyword("graded") {
                let (g, gpos) = self.word()?;
                grading = match g.as_str() {
                    "fine" => Grading::Fine,
                    "standard" => Grading::Standard,
                    _ => return self.err(gpos, "grading must be `fine` or `standard`"),
                };
            } else if self.keyword("order") {
                let (o, opos) = self.word()?;
                order = match o.as_str() {
                    "lex" => MonomialOrder::Lex,
                    "grevlex" => MonomialOrder::DegRevLex,
                    _ => return self.err(opos, "order must be `lex` or `grevlex`"),
                };
            } else {
                break;
            }
        }
        self.end()?;
        let ring = Ring::new(vars, field, grading, order).or_else(|e| self.err(pos, e.to_string()))?;
        self.session.ring = Some(RingDecl { name, ring, pos });
        Ok(())
    }

    fn binding(&mut self) -> PResult<()> {
        let pos = self.pos();
        let (kind, _) = self.word()?;
        let (name, npos) = self.word()?;
        if self.session.binding(&name).is_some() || self.session.ring.as_ref().is_some_and(|r| r.name == name) {
            return self.err(npos, format!("`{name}` is already bound"));
        }
        self.expect('=')?;
        let ring = self.ring(pos)?;
        let value = match kind.as_str() {
            "ideal" => Value::Ideal(self.poly_list(&ring, true)?),
            "sequence" => Value::Sequence(self.poly_list(&ring, true)?),
            _ => Value::Module(self.module(&ring)?),
        };
        self.end()?;
        self.session.bindings.push(Binding { name, value, pos });
        Ok(())
    }

    /// One polynomial, ending before a top-level `,`, `)`, `]` or `;`.
    fn poly(&mut self, ring: &RingRef, homogeneous: bool) -> PResult<Polynomial> {
        self.blanks();
        let pos = self.pos();
        let start = self.at;
        while let Some(c) = self.peek() {
            if matches!(c, ',' | ')' | ']' | ';' | '\n' | '#') {
                break;
            }
            self.bump();
        }
        let text: String = self.chars[start..self.at].iter().collect();
        let text = text.trim_end();
        if text.is_empty() {
            return self.err(pos, "expected a polynomial");
        }
        let f = ring.parse(text).or_else(|e| match e {
            fgrad_core::Error::Parse { offset, message } => {
                let col = pos.col + text.get(..offset).map_or(offset, |s| s.chars().count());
                self.err(Pos { line: pos.line, col }, message)
            }
            e => self.err(pos, e.to_string()),
        })?;
        if homogeneous && !f.is_homogeneous() {
            return self.err(pos, format!("inhomogeneous generator `{text}`"));
        }
        Ok(f)
    }

    fn poly_list(&mut self, ring: &RingRef, homogeneous: bool) -> PResult<Vec<Polynomial>> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.poly(ring, homogeneous)?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn degree(&mut self, ring: &RingRef) -> PResult<Vec<i64>> {
        self.blanks();
        let pos = self.pos();
        let d = if self.eat('(') {
            let mut d = vec![self.int()?];
            while self.eat(',') {
                d.push(self.int()?);
            }
            self.expect(')')?;
            d
        } else {
            vec![self.int()?]
        };
        let want = if ring.grading() == Grading::Fine { ring.nvars() } else { 1 };
        if d.len() != want {
            return self.err(pos, format!("degree needs {want} component(s), found {}", d.len()));
        }
        Ok(d)
    }

    fn module(&mut self, ring: &RingRef) -> PResult<ModuleExpr> {
        if self.keyword("coker") {
            return self.coker(ring);
        }
        if self.peek_word() == "cyclic" {
            let mut terms = Vec::new();
            loop {
                self.blanks();
                let tpos = self.pos();
                if !self.keyword("cyclic") {
                    return self.err(tpos, "expected `cyclic`");
                }
                let gens = self.poly_list(ring, true)?;
                let twist = if self.keyword("twist") { Some(self.degree(ring)?) } else { None };
                terms.push(CyclicTerm { gens, twist });
                if !self.eat_str("++") {
                    return Ok(ModuleExpr::Sum(terms));
                }
            }
        }
        let (name, npos) = self.word()?;
        self.named_module(name, npos)
    }

    fn named_module(&self, name: String, pos: Pos) -> PResult<ModuleExpr> {
        if self.session.ring.as_ref().is_some_and(|r| r.name == name) {
            return Ok(ModuleExpr::Ring(name));
        }
        match self.session.binding(&name) {
            Some(b) if matches!(b.value, Value::Module(_)) => Ok(ModuleExpr::Name(name)),
            Some(b) => self.err(pos, format!("`{name}` is an {}, not a module", b.value.kind())),
            None => self.err(pos, format!("unbound name `{name}`")),
        }
    }

    fn coker(&mut self, ring: &RingRef) -> PResult<ModuleExpr> {
        self.blanks();
        let mpos = self.pos();
        self.expect('[')?;
        let mut rows: Vec<Vec<Polynomial>> = Vec::new();
        if !self.eat(']') {
            loop {
                self.blanks();
                if self.peek() != Some('[') {
                    return self.err(mpos, format!("matrix row {} must be a bracketed list", rows.len() + 1));
                }
                self.bump();
                let mut row = Vec::new();
                loop {
                    row.push(self.poly(ring, false)?);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
                if let Some(first) = rows.first() {
                    if first.len() != row.len() {
                        return self.err(
                            mpos,
                            format!("matrix row {} has {} entries, expected {}", rows.len() + 1, row.len(), first.len()),
                        );
                    }
                }
                rows.push(row);
                if self.eat(']') {
                    break;
                }
                if !self.eat(',') {
                    return self.err(mpos, format!("matrix rows must be separated by `,` after row {}", rows.len()));
                }
            }
        }
        let twists = if self.keyword("twists") {
            self.blanks();
            let tpos = self.pos();
            self.expect('(')?;
            let mut ts = Vec::new();
            if !self.eat(')') {
                loop {
                    ts.push(self.degree(ring)?);
                    if self.eat(')') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            if ts.len() != rows.len() {
                return self.err(tpos, format!("{} twists for {} generators", ts.len(), rows.len()));
            }
            Some(ts)
        } else {
            None
        };
        let degs: Vec<Vec<i64>> = match &twists {
            Some(t) => t.clone(),
            None => vec![ring.zero_degree().0; rows.len()],
        };
        let ncols = rows.first().map_or(0, Vec::len);
        for c in 0..ncols {
            let mut deg: Option<Vec<i64>> = None;
            for (r, row) in rows.iter().enumerate() {
                let f = &row[c];
                let Some(fd) = f.homogeneous_degree() else {
                    if f.is_zero() {
                        continue;
                    }
                    return self.err(mpos, format!("matrix column {} has an inhomogeneous entry", c + 1));
                };
                let total: Vec<i64> = fd.0.iter().zip(&degs[r]).map(|(a, b)| a + b).collect();
                if deg.as_ref().is_some_and(|d| *d != total) {
                    return self.err(mpos, format!("matrix column {} is not homogeneous for these twists", c + 1));
                }
                deg = Some(total);
            }
        }
        Ok(ModuleExpr::Coker { rows, twists })
    }

    fn command(&mut self, kind: CommandKind) -> PResult<()> {
        let pos = self.pos();
        self.eat_str(kind.name());
        let ring = self.ring(pos)?;
        let mut args: Vec<(String, Arg, Pos)> = Vec::new();
        loop {
            self.blanks();
            if matches!(self.peek(), Some(';') | Some('\n') | Some('#') | None) {
                break;
            }
            let (key, kpos) = self.word()?;
            if !kind.keys().contains(&key.as_str()) {
                return self.err(kpos, format!("`{}` takes no argument `{key}`", kind.name()));
            }
            if args.iter().any(|(k, _, _)| *k == key) {
                return self.err(kpos, format!("argument `{key}` given twice"));
            }
            self.expect('=')?;
            self.blanks();
            let vpos = self.pos();
            let arg = match self.peek() {
                Some('(') => Arg::List(self.poly_list(&ring, true)?),
                Some('[') => {
                    self.bump();
                    let lo = self.int()?;
                    if !self.eat_str("..") {
                        return self.err(self.pos(), "expected `..`");
                    }
                    let hi = self.int()?;
                    self.expect(']')?;
                    if lo > hi {
                        return self.err(vpos, "empty range");
                    }
                    Arg::Range(lo, hi)
                }
                Some(c) if c == '-' || c.is_ascii_digit() => Arg::Int(self.int()?),
                _ => {
                    let (name, npos) = self.word()?;
                    let known = self.session.binding(&name).is_some()
                        || self.session.ring.as_ref().is_some_and(|r| r.name == name);
                    if !known {
                        return self.err(npos, format!("unbound name `{name}`"));
                    }
                    Arg::Name(name)
                }
            };
            args.push((key, arg, vpos));
        }
        self.end()?;
        self.session.commands.push(Command { kind, args, pos });
        Ok(())
    }
}

fn list(ps: &[Polynomial]) -> String {
    let s: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    format!("({})", s.join(", "))
}

fn degree(d: &[i64]) -> String {
    if d.len() == 1 {
        d[0].to_string()
    } else {
        let s: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        format!("({})", s.join(","))
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Ring(n) => write!(f, "{n}"),
            ModuleExpr::Name(n) => write!(f, "{n}"),
            ModuleExpr::Coker { rows, twists } => {
                let rs: Vec<String> = rows
                    .iter()
                    .map(|r| format!("[{}]", r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
                    .collect();
                write!(f, "coker [{}]", rs.join(", "))?;
                if let Some(ts) = twists {
                    let ts: Vec<String> = ts.iter().map(|t| degree(t)).collect();
                    write!(f, " twists ({})", ts.join(", "))?;
                }
                Ok(())
            }
            ModuleExpr::Sum(terms) => {
                for (k, t) in terms.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ++ ")?;
                    }
                    write!(f, "cyclic {}", list(&t.gens))?;
                    if let Some(d) = &t.twist {
                        write!(f, " twist {}", degree(d))?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => write!(f, "{n}"),
            Arg::List(ps) => write!(f, "{}", list(ps)),
            Arg::Int(k) => write!(f, "{k}"),
            Arg::Range(lo, hi) => write!(f, "[{lo}..{hi}]"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        for (k, a, _) in &self.args {
            write!(f, " {k}={a}")?;
        }
        write!(f, ";")
    }
}

/// Canonical text: ring, then bindings, then commands.
impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.ring {
            let ring = &r.ring;
            write!(f, "ring {} = {}[{}] graded {}", r.name, ring.field(), ring.variables().join(","), ring.grading())?;
            if ring.order() == MonomialOrder::Lex {
                write!(f, " order lex")?;
            }
            writeln!(f, ";")?;
        }
        for b in &self.bindings {
            let rhs = match &b.value {
                Value::Ideal(ps) | Value::Sequence(ps) => list(ps),
                Value::Module(m) => m.to_string(),
            };
            writeln!(f, "{} {} = {};", b.value.kind(), b.name, rhs)?;
        }
        for c in &self.commands {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
