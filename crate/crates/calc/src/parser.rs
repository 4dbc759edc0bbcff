//! Recursive-descent parser with name resolution and statement-level recovery.
//!
//! Statements end with `;` or a line break outside brackets. A statement that
//! fails to parse or resolve becomes a [`StatementKind::Invalid`] entry and
//! parsing resumes at the next statement.

use std::collections::BTreeMap;

use arthur_core::exms::{ExtMultiSegment, ExtSegment};
use arthur_core::gl::{DerivativeSymbol, Ladder};
use arthur_core::{
    ArthurParam, CuspidalLabel, DualityType, EssSpeh, GroupKind, HalfInt, Segment, Summand, UEssMatrix,
};

use crate::lexer::{tokenize, Token, TokenKind};
use crate::script::{Command, Diagnostic, Script, Statement, StatementKind};

/// Command keywords, in the order they are listed in diagnostics.
pub const COMMANDS: &[&str] = &[
    "adjacent",
    "atobe",
    "bruteforce",
    "chain",
    "classify",
    "connected",
    "contragredient",
    "deform",
    "deriv",
    "dual",
    "frommatrix",
    "induce",
    "irr",
    "langlands",
    "lcrc",
    "linked",
    "matrix",
    "mderiv",
    "mstar",
    "mstarfull",
    "mustar",
    "nec",
    "nuset",
    "orbit",
    "packet",
    "parity",
    "rep",
    "reorder",
    "standardize",
    "tadic",
    "validate",
    "z01",
];

const DECLARATIONS: &[&str] = &["group", "rho", "exms", "speh"];

type PResult<T> = Result<T, Diagnostic>;

/// Parses and resolves a script. Never fails: problems become invalid statements.
pub fn parse(src: &str) -> Script {
    let mut p = Parser { src, toks: tokenize(src), pos: 0, depth: 0, script: Script::default() };
    p.run();
    p.script
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
    script: Script,
}

fn is_open(k: &TokenKind) -> bool {
    matches!(k, TokenKind::Punct('{' | '(' | '['))
}

fn is_close(k: &TokenKind) -> bool {
    matches!(k, TokenKind::Punct('}' | ')' | ']'))
}

fn is_terminator(k: &TokenKind) -> bool {
    matches!(k, TokenKind::Punct(';') | TokenKind::Newline | TokenKind::Eof)
}

fn quoted(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| format!("`{s}`")).collect()
}

/// Source text with comments removed and whitespace runs collapsed.
fn collapse(text: &str) -> String {
    let stripped: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect();
    stripped.join(" ").split_whitespace().collect::<Vec<_>>().join(" ")
}

impl<'a> Parser<'a> {
    fn run(&mut self) {
        loop {
            while matches!(self.peek_raw().kind, TokenKind::Punct(';') | TokenKind::Newline) {
                self.pos += 1;
            }
            if self.peek_raw().kind == TokenKind::Eof {
                break;
            }
            let first = self.pos;
            let (line, col) = (self.toks[first].line, self.toks[first].col);
            let kind = match self.statement().and_then(|k| self.end_of_statement().map(|_| k)) {
                Ok(kind) => kind,
                Err(d) => {
                    self.recover();
                    StatementKind::Invalid(d)
                }
            };
            let last = self.last_consumed(first);
            let text = collapse(&self.src[self.toks[first].start..self.toks[last].end]);
            self.script.statements.push(Statement { line, col, text, kind });
        }
    }

    fn last_consumed(&self, first: usize) -> usize {
        let mut last = self.pos.saturating_sub(1).max(first);
        while last > first && matches!(self.toks[last].kind, TokenKind::Newline) {
            last -= 1;
        }
        last
    }

    fn peek_raw(&self) -> &Token {
        &self.toks[self.pos]
    }

    /// The next token; line breaks are insignificant inside brackets.
    fn peek(&mut self) -> &Token {
        if self.depth > 0 {
            while self.toks[self.pos].kind == TokenKind::Newline {
                self.pos += 1;
            }
        }
        &self.toks[self.pos]
    }

    /// The kind of the `n`-th upcoming token, ignoring line breaks.
    fn peek_nth_kind(&self, n: usize) -> TokenKind {
        self.toks[self.pos..]
            .iter()
            .filter(|t| t.kind != TokenKind::Newline)
            .nth(n)
            .map_or(TokenKind::Eof, |t| t.kind.clone())
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if t.kind != TokenKind::Eof {
            self.pos += 1;
        }
        if is_open(&t.kind) {
            self.depth += 1;
        } else if is_close(&t.kind) {
            self.depth = self.depth.saturating_sub(1);
        }
        t
    }

    fn recover(&mut self) {
        let mut depth = self.depth;
        loop {
            let k = self.toks[self.pos].kind.clone();
            if k == TokenKind::Eof || (depth == 0 && is_terminator(&k)) {
                break;
            }
            if is_open(&k) {
                depth += 1;
            } else if is_close(&k) {
                depth = depth.saturating_sub(1);
            }
            self.pos += 1;
        }
        self.depth = 0;
    }

    fn unexpected(&mut self, expected: Vec<String>) -> Diagnostic {
        let t = self.peek().clone();
        let mut d = Diagnostic::error(t.line, t.col, format!("expected {}, found {}", expected.join(" or "), t.kind));
        d.expected = expected;
        d
    }

    fn error_at(t: &Token, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(t.line, t.col, message)
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        if is_terminator(&self.peek().kind) {
            Ok(())
        } else {
            Err(self.unexpected(quoted(&[";", "end of line"])))
        }
    }

    fn punct(&mut self, c: char) -> PResult<Token> {
        if self.peek().kind == TokenKind::Punct(c) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(vec![format!("`{c}`")]))
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek().kind == TokenKind::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Token)> {
        match self.peek().kind.clone() {
            TokenKind::Ident(s) => Ok((s, self.bump())),
            _ => Err(self.unexpected(vec![what.to_string()])),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Token> {
        match &self.peek().kind {
            TokenKind::Ident(s) if s == kw => Ok(self.bump()),
            _ => Err(self.unexpected(quoted(&[kw]))),
        }
    }

    fn int(&mut self) -> PResult<(i64, Token)> {
        match self.peek().kind {
            TokenKind::Int(n) => Ok((n, self.bump())),
            _ => Err(self.unexpected(vec!["integer".into()])),
        }
    }

    fn small_int<T: TryFrom<i64>>(&mut self, what: &str) -> PResult<T> {
        let (n, t) = self.int()?;
        T::try_from(n).map_err(|_| Self::error_at(&t, format!("{what} out of range: {n}")))
    }

    /// An integer or a fraction `p/2`.
    fn half(&mut self) -> PResult<HalfInt> {
        let (n, _) = self.int()?;
        if !self.eat_punct('/') {
            return Ok(HalfInt::from_int(n));
        }
        let (den, t) = self.int()?;
        if den != 2 {
            return Err(Self::error_at(&t, format!("denominator must be 2, found {den}")));
        }
        Ok(HalfInt::from_twice(n))
    }

    /// `key = value` with the value read by `value`.
    fn field<T>(&mut self, key: &str, value: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.keyword(key)?;
        self.punct('=')?;
        value(self)
    }

    fn declare_name(&self, name: &str, t: &Token) -> PResult<()> {
        let s = &self.script;
        if s.labels.contains_key(name) || s.exms.contains_key(name) || s.spehs.contains_key(name) {
            return Err(Self::error_at(t, format!("duplicate name `{name}`")));
        }
        Ok(())
    }

    fn kind_of(&self, name: &str) -> Option<&'static str> {
        if self.script.labels.contains_key(name) {
            Some("a cuspidal label")
        } else if self.script.exms.contains_key(name) {
            Some("an extended multi-segment")
        } else if self.script.spehs.contains_key(name) {
            Some("a Speh factor")
        } else {
            None
        }
    }

    fn unresolved(&self, name: &str, t: &Token, wanted: &str) -> Diagnostic {
        match self.kind_of(name) {
            Some(kind) => Self::error_at(t, format!("`{name}` is {kind}, expected {wanted}")),
            None => Self::error_at(t, format!("unresolved name `{name}`: expected {wanted}")),
        }
    }

    fn require_group(&self, t: &Token) -> PResult<GroupKind> {
        self.script
            .group
            .ok_or_else(|| Self::error_at(t, "group must be declared before this statement"))
    }

    fn statement(&mut self) -> PResult<StatementKind> {
        let t = self.peek().clone();
        let word = match &t.kind {
            TokenKind::Ident(s) => s.clone(),
            _ => {
                let mut expected = quoted(DECLARATIONS);
                expected.push("command".into());
                return Err(self.unexpected(expected));
            }
        };
        match word.as_str() {
            "group" => self.group_decl(),
            "rho" => self.rho_decl(),
            "exms" => self.exms_decl(),
            "speh" => self.speh_decl(),
            _ if COMMANDS.contains(&word.as_str()) => {
                self.bump();
                Ok(StatementKind::Command(self.command(&word, &t)?))
            }
            _ => {
                let mut d = Self::error_at(&t, format!("unknown command `{word}`"));
                d.expected = quoted(DECLARATIONS).into_iter().chain(quoted(COMMANDS)).collect();
                Err(d)
            }
        }
    }

    fn group_decl(&mut self) -> PResult<StatementKind> {
        let kw = self.bump();
        let group = match &self.peek().kind {
            TokenKind::Ident(s) if s == "SO-odd" => GroupKind::OddOrthogonal,
            TokenKind::Ident(s) if s == "Sp" => GroupKind::Symplectic,
            _ => return Err(self.unexpected(quoted(&["SO-odd", "Sp"]))),
        };
        self.bump();
        if self.script.group.is_some() {
            return Err(Self::error_at(&kw, "group already declared"));
        }
        self.script.group = Some(group);
        Ok(StatementKind::Declaration)
    }

    fn rho_decl(&mut self) -> PResult<StatementKind> {
        self.bump();
        let (name, nt) = self.ident("label name")?;
        if name.ends_with("^v") {
            return Err(Self::error_at(&nt, "declare the label itself; `^v` names its contragredient"));
        }
        let d: u32 = self.field("d", |p| p.small_int("d"))?;
        let ty = self.field("type", |p| match &p.peek().kind {
            TokenKind::Ident(s) if s == "orth" => Ok(DualityType::Orthogonal),
            TokenKind::Ident(s) if s == "symp" => Ok(DualityType::Symplectic),
            TokenKind::Ident(s) if s == "none" => Ok(DualityType::NotSelfDual),
            _ => Err(p.unexpected(quoted(&["orth", "symp", "none"]))),
        })?;
        self.bump();
        self.declare_name(&name, &nt)?;
        let label = CuspidalLabel::new(&name, d, ty).map_err(|e| Self::error_at(&nt, e.to_string()))?;
        self.script.labels.insert(name, label);
        Ok(StatementKind::Declaration)
    }

    fn exms_decl(&mut self) -> PResult<StatementKind> {
        let kw = self.bump();
        let (name, nt) = self.ident("name")?;
        let group = self.require_group(&kw)?;
        let s = self.exms_body(group)?;
        self.declare_name(&name, &nt)?;
        self.script.exms.insert(name, s);
        Ok(StatementKind::Declaration)
    }

    fn speh_decl(&mut self) -> PResult<StatementKind> {
        self.bump();
        let (name, nt) = self.ident("name")?;
        self.punct('=')?;
        let u = self.speh_literal()?;
        self.declare_name(&name, &nt)?;
        self.script.spehs.insert(name, u);
        Ok(StatementKind::Declaration)
    }

    fn label(&mut self) -> PResult<CuspidalLabel> {
        let (name, t) = self.ident("cuspidal label")?;
        if let Some(l) = self.script.labels.get(&name) {
            return Ok(l.clone());
        }
        if let Some(base) = name.strip_suffix("^v") {
            if let Some(l) = self.script.labels.get(base) {
                return Ok(l.dual());
            }
        }
        Err(self.unresolved(&name, &t, "a cuspidal label"))
    }

    /// `{ rho: ([A,B]; mu=m), ... ; rho2: ... }`
    fn exms_body(&mut self, group: GroupKind) -> PResult<ExtMultiSegment> {
        self.punct('{')?;
        let mut s = ExtMultiSegment::new(group);
        while !self.eat_punct('}') {
            let lt = self.peek().clone();
            let rho = self.label()?;
            if s.parts.contains_key(&rho) {
                return Err(Self::error_at(&lt, format!("duplicate part for `{rho}`")));
            }
            self.punct(':')?;
            let mut segs = vec![self.ext_segment()?];
            while self.eat_punct(',') {
                segs.push(self.ext_segment()?);
            }
            s.set_part(rho, segs);
            if !self.eat_punct(';') && self.peek().kind != TokenKind::Punct('}') {
                return Err(self.unexpected(quoted(&[",", ";", "}"])));
            }
        }
        Ok(s)
    }

    /// `([A,B]; mu=m)`
    fn ext_segment(&mut self) -> PResult<ExtSegment> {
        let open = self.punct('(')?;
        self.punct('[')?;
        let a = self.half()?;
        self.punct(',')?;
        let b = self.half()?;
        self.punct(']')?;
        self.punct(';')?;
        let mu = self.field("mu", |p| p.int().map(|(n, _)| n))?;
        self.punct(')')?;
        if !a.same_lattice(b) {
            return Err(Self::error_at(&open, format!("parity mismatch: A = {a} and B = {b} differ by a non-integer")));
        }
        if a < b {
            return Err(Self::error_at(&open, format!("invalid extended segment: A = {a} < B = {b}")));
        }
        let len = (a - b).twice() / 2 + 1;
        if (mu - len).rem_euclid(2) != 0 {
            return Err(Self::error_at(
                &open,
                format!("parity mismatch: mu = {mu} but b = A - B + 1 = {len}; mu must be congruent to b mod 2"),
            ));
        }
        ExtSegment::new(a, b, mu).map_err(|e| Self::error_at(&open, e.to_string()))
    }

    /// `(rho, a=<int>, b=<int>[, s=<half>])`
    fn speh_literal(&mut self) -> PResult<EssSpeh> {
        let open = self.punct('(')?;
        let rho = self.label()?;
        self.punct(',')?;
        let a = self.field("a", |p| p.small_int::<u32>("a"))?;
        self.punct(',')?;
        let b = self.field("b", |p| p.small_int::<u32>("b"))?;
        let s = if self.eat_punct(',') { self.field("s", Self::half)? } else { HalfInt::ZERO };
        self.punct(')')?;
        EssSpeh::new(rho, a, b, s).map_err(|e| Self::error_at(&open, e.to_string()))
    }

    fn exms_ref(&mut self) -> PResult<ExtMultiSegment> {
        let t = self.peek().clone();
        if t.kind == TokenKind::Punct('{') {
            let group = self.require_group(&t)?;
            return self.exms_body(group);
        }
        let (name, t) = self.ident("extended multi-segment")?;
        match self.script.exms.get(&name) {
            Some(s) => Ok(s.clone()),
            None => Err(self.unresolved(&name, &t, "an extended multi-segment")),
        }
    }

    fn speh_ref(&mut self) -> PResult<EssSpeh> {
        if self.peek().kind == TokenKind::Punct('(') {
            return self.speh_literal();
        }
        let (name, t) = self.ident("Speh factor")?;
        match self.script.spehs.get(&name) {
            Some(u) => Ok(u.clone()),
            None => Err(self.unresolved(&name, &t, "a Speh factor")),
        }
    }

    fn at_list_end(&mut self) -> bool {
        let k = self.peek().kind.clone();
        is_terminator(&k) || k == TokenKind::Ident("assert".into())
    }

    fn speh_list(&mut self) -> PResult<Vec<EssSpeh>> {
        let mut out = Vec::new();
        while !self.at_list_end() {
            out.push(self.speh_ref()?);
        }
        Ok(out)
    }

    /// `assert <i>=irr|red ...`
    fn asserts(&mut self) -> PResult<BTreeMap<usize, bool>> {
        let mut out = BTreeMap::new();
        if self.peek().kind != TokenKind::Ident("assert".into()) {
            return Ok(out);
        }
        self.bump();
        loop {
            let i: usize = self.small_int("factor index")?;
            self.punct('=')?;
            let v = match &self.peek().kind {
                TokenKind::Ident(s) if s == "irr" => true,
                TokenKind::Ident(s) if s == "red" => false,
                _ => return Err(self.unexpected(quoted(&["irr", "red"]))),
            };
            self.bump();
            out.insert(i, v);
            if is_terminator(&self.peek().kind) {
                return Ok(out);
            }
        }
    }

    /// `{ rho: (a,b), (a,b); rho2: ... }`
    fn psi_literal(&mut self) -> PResult<ArthurParam> {
        let t = self.peek().clone();
        let group = self.require_group(&t)?;
        self.punct('{')?;
        let mut summands = Vec::new();
        while !self.eat_punct('}') {
            let rho = self.label()?;
            self.punct(':')?;
            loop {
                let open = self.punct('(')?;
                let a: u32 = self.small_int("a")?;
                self.punct(',')?;
                let b: u32 = self.small_int("b")?;
                self.punct(')')?;
                summands.push(Summand::new(rho.clone(), a, b).map_err(|e| Self::error_at(&open, e.to_string()))?);
                if !self.eat_punct(',') {
                    break;
                }
            }
            if !self.eat_punct(';') && self.peek().kind != TokenKind::Punct('}') {
                return Err(self.unexpected(quoted(&[",", ";", "}"])));
            }
        }
        Ok(ArthurParam::new(group, summands))
    }

    /// `rho[x,y]`
    fn segment(&mut self) -> PResult<Segment> {
        let t = self.peek().clone();
        let rho = self.label()?;
        self.punct('[')?;
        let x = self.half()?;
        self.punct(',')?;
        let y = self.half()?;
        self.punct(']')?;
        Segment::new(rho, x, y).map_err(|e| Self::error_at(&t, e.to_string()))
    }

    /// `L(rho; [x,y], ...)`, `L(rho)` for the trivial ladder, or a Speh name.
    fn ladder(&mut self) -> PResult<Ladder> {
        let t = self.peek().clone();
        let literal = t.kind == TokenKind::Ident("L".into()) && self.peek_nth_kind(1) == TokenKind::Punct('(');
        if !literal {
            return Ok(Ladder::from_speh(&self.speh_ref()?));
        }
        self.bump();
        self.punct('(')?;
        let rho = self.label()?;
        let mut segs = Vec::new();
        if self.eat_punct(';') {
            loop {
                self.punct('[')?;
                let x = self.half()?;
                self.punct(',')?;
                let y = self.half()?;
                self.punct(']')?;
                segs.push((x, y));
                if !self.eat_punct(',') {
                    break;
                }
            }
        }
        self.punct(')')?;
        Ladder::new(rho, segs).map_err(|e| Self::error_at(&t, e.to_string()))
    }

    /// `rho^z` or `Z(rho)`.
    fn symbol(&mut self) -> PResult<DerivativeSymbol> {
        let t = self.peek().clone();
        if t.kind == TokenKind::Ident("Z".into()) && self.peek_nth_kind(1) == TokenKind::Punct('(') {
            self.bump();
            self.punct('(')?;
            let rho = self.label()?;
            self.punct(')')?;
            return DerivativeSymbol::z01(rho).map_err(|e| Self::error_at(&t, e.to_string()));
        }
        let rho = self.label()?;
        self.punct('^')?;
        Ok(DerivativeSymbol::cuspidal(rho, self.half()?))
    }

    /// `(tl, tr; bl, br)`
    fn matrix(&mut self) -> PResult<UEssMatrix> {
        self.punct('(')?;
        let tl = self.half()?;
        self.punct(',')?;
        let tr = self.half()?;
        self.punct(';')?;
        let bl = self.half()?;
        self.punct(',')?;
        let br = self.half()?;
        self.punct(')')?;
        Ok(UEssMatrix::new(tl, tr, bl, br))
    }

    fn index(&mut self) -> PResult<usize> {
        self.small_int("index")
    }

    fn command(&mut self, word: &str, kw: &Token) -> PResult<Command> {
        use Command as C;
        Ok(match word {
            "validate" => C::Validate(self.exms_ref()?),
            "standardize" => C::Standardize(self.exms_ref()?),
            "rep" => C::Rep(self.exms_ref()?),
            "bruteforce" => C::Bruteforce(self.exms_ref()?),
            "atobe" => C::Atobe(self.exms_ref()?),
            "nec" => C::Nec(self.exms_ref()?),
            "reorder" => C::Reorder(self.exms_ref()?, self.label()?, self.index()?),
            "connected" => C::Connected(self.exms_ref()?, self.label()?, self.index()?, self.index()?),
            "orbit" => C::Orbit(self.exms_ref()?, self.label()?),
            "dual" => C::Dual(self.exms_ref()?),
            "deform" => C::Deform(self.exms_ref()?, self.label()?, self.index()?),
            "langlands" => C::Langlands(self.exms_ref()?),
            "packet" => C::Packet(self.psi_literal()?),
            "parity" => C::Parity(self.psi_literal()?),
            "nuset" => C::NuSet(self.exms_ref()?, self.speh_ref()?),
            "induce" | "adjacent" | "irr" => {
                let s = self.exms_ref()?;
                let us = self.speh_list()?;
                match word {
                    "induce" => C::Induce(s, us),
                    "adjacent" => C::Adjacent(s, us),
                    _ => C::Irr(s, us, self.asserts()?),
                }
            }
            "tadic" => C::Tadic(self.speh_ref()?, self.speh_ref()?),
            "matrix" => C::Matrix(self.speh_ref()?),
            "classify" => C::Classify(self.speh_ref()?),
            "contragredient" => C::Contragredient(self.speh_ref()?),
            "frommatrix" => C::FromMatrix(self.label()?, self.matrix()?),
            "linked" => C::Linked(self.segment()?, self.segment()?),
            "lcrc" => {
                let d = self.segment()?;
                let mut m = Vec::new();
                while !is_terminator(&self.peek().kind) {
                    m.push(self.segment()?);
                }
                C::Lcrc(d, m)
            }
            "z01" => C::Z01(self.speh_ref()?),
            "mstar" => C::Mstar(self.ladder()?),
            "mustar" => C::Mustar(self.ladder()?),
            "mstarfull" => C::MstarFull(self.ladder()?),
            "deriv" => C::Deriv(self.ladder()?, self.symbol()?),
            "mderiv" => C::MDeriv(self.ladder()?, self.symbol()?),
            "chain" => C::Chain(self.ladder()?, self.speh_ref()?),
            _ => return Err(Self::error_at(kw, format!("unknown command `{word}`"))),
        })
    }
}

/// The declaration `exms <name> { ... }` that parses back to `s`.
pub fn render_exms(name: &str, s: &ExtMultiSegment) -> String {
    let parts: Vec<String> = s
        .parts
        .iter()
        .map(|(rho, part)| {
            let segs: Vec<String> = part.iter().map(|x| format!("([{},{}]; mu={})", x.big_a, x.big_b, x.mu)).collect();
            format!("{rho}: {}", segs.join(", "))
        })
        .collect();
    if parts.is_empty() {
        format!("exms {name} {{}}")
    } else {
        format!("exms {name} {{ {} }}", parts.join("; "))
    }
}
