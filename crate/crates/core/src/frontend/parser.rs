//! Concrete syntax for defeasible knowledge bases.
//!
//! ```text
//! % comment
//! concept Professor.            role hasCourse.        individual alice.
//! Professor [= DeptMember.      PhDStudent [= -exists hasCourse.
//! D(DeptMember [= exists hasCourse).
//! exists hasCourse^- [= Course. R [= S.   Dis(R,S).   Inv(R,S).   Irr(R).
//! Professor(alice).   -A(a).   R(a,b).   -R(a,b).   exists R(a).  -exists R(a).
//! ```
//!
//! Names are sorted by position: the argument of an assertion is an
//! individual, anything after `exists` or inside `Dis`/`Inv`/`Irr` is a role,
//! and an inclusion `X [= Y` is read as a role inclusion when either side is
//! already known to be a role.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::kb::{parse_aux_name, Name, NameKind, Vocabulary};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnknownConstruct,
    ReflexivityRejected,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownConstruct => "unsupported construct",
            ParseErrorKind::ReflexivityRejected => "reflexivity axioms are not supported",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

/// A role occurrence, possibly inverted (`R^-`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceRole {
    Named(Name),
    Inverse(Name),
}

impl SurfaceRole {
    pub fn name(&self) -> &Name {
        match self {
            SurfaceRole::Named(n) | SurfaceRole::Inverse(n) => n,
        }
    }
}

impl fmt::Display for SurfaceRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceRole::Named(n) => write!(f, "{n}"),
            SurfaceRole::Inverse(n) => write!(f, "{n}^-"),
        }
    }
}

/// `C := A | ∃R`
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasicConcept {
    Atomic(Name),
    Exists(SurfaceRole),
}

impl fmt::Display for BasicConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicConcept::Atomic(n) => write!(f, "{n}"),
            BasicConcept::Exists(r) => write!(f, "exists {r}"),
        }
    }
}

/// `D := A | ¬C | ∃R`
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneralConcept {
    Basic(BasicConcept),
    Not(BasicConcept),
}

impl fmt::Display for GeneralConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralConcept::Basic(c) => write!(f, "{c}"),
            GeneralConcept::Not(c) => write!(f, "-{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceAxiom {
    ConceptAssertion {
        concept: BasicConcept,
        individual: Name,
        negated: bool,
    },
    RoleAssertion {
        role: SurfaceRole,
        subject: Name,
        object: Name,
        negated: bool,
    },
    ConceptInclusion {
        sub: BasicConcept,
        sup: GeneralConcept,
    },
    RoleInclusion {
        sub: SurfaceRole,
        sup: SurfaceRole,
    },
    Dis(SurfaceRole, SurfaceRole),
    Inv(SurfaceRole, SurfaceRole),
    Irr(SurfaceRole),
}

impl fmt::Display for SurfaceAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = |b: bool| if b { "-" } else { "" };
        match self {
            SurfaceAxiom::ConceptAssertion {
                concept,
                individual,
                negated,
            } => write!(f, "{}{concept}({individual})", neg(*negated)),
            SurfaceAxiom::RoleAssertion {
                role,
                subject,
                object,
                negated,
            } => write!(f, "{}{role}({subject},{object})", neg(*negated)),
            SurfaceAxiom::ConceptInclusion { sub, sup } => write!(f, "{sub} [= {sup}"),
            SurfaceAxiom::RoleInclusion { sub, sup } => write!(f, "{sub} [= {sup}"),
            SurfaceAxiom::Dis(r, s) => write!(f, "Dis({r},{s})"),
            SurfaceAxiom::Inv(r, s) => write!(f, "Inv({r},{s})"),
            SurfaceAxiom::Irr(r) => write!(f, "Irr({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceStatement {
    pub axiom: SurfaceAxiom,
    pub defeasible: bool,
    pub line: usize,
}

/// A parsed but not yet normalized knowledge base.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceKb {
    /// Explicit declarations plus every name registered by use, in order of
    /// first occurrence.
    pub vocabulary: Vocabulary,
    pub statements: Vec<SurfaceStatement>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Accept `_`-prefixed names, which are otherwise reserved for names
    /// minted by normalization.
    pub allow_reserved: bool,
}

pub fn parse_dkb(text: &str) -> Result<SurfaceKb, ParseError> {
    parse_dkb_with(text, ParseOptions::default())
}

pub fn parse_dkb_with(text: &str, options: ParseOptions) -> Result<SurfaceKb, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        options,
        end: end_position(text),
    };
    let raw = parser.statements()?;
    resolve(raw)
}

// ---------------------------------------------------------------- lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Sub,
    LParen,
    RParen,
    Comma,
    Dot,
    Minus,
    InvMark,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sub => f.write_str("`[=`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::InvMark => f.write_str("`^-`"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (lineno + 1, i + 1);
            let push = |out: &mut Vec<Spanned>, tok| out.push(Spanned { tok, line, column });
            match c {
                '%' => break,
                c if c.is_whitespace() => i += 1,
                '(' => {
                    push(&mut out, Tok::LParen);
                    i += 1;
                }
                ')' => {
                    push(&mut out, Tok::RParen);
                    i += 1;
                }
                ',' => {
                    push(&mut out, Tok::Comma);
                    i += 1;
                }
                '.' => {
                    push(&mut out, Tok::Dot);
                    i += 1;
                }
                '-' | '¬' => {
                    push(&mut out, Tok::Minus);
                    i += 1;
                }
                '⊑' => {
                    push(&mut out, Tok::Sub);
                    i += 1;
                }
                '[' if chars.get(i + 1) == Some(&'=') => {
                    push(&mut out, Tok::Sub);
                    i += 2;
                }
                '^' if chars.get(i + 1) == Some(&'-') => {
                    push(&mut out, Tok::InvMark);
                    i += 2;
                }
                c if is_ident_char(c) => {
                    let start = i;
                    while i < chars.len() && is_ident_char(chars[i]) {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    push(&mut out, Tok::Ident(word));
                }
                other => {
                    return Err(ParseError {
                        line,
                        column,
                        message: format!("unexpected character {other:?}"),
                        kind: ParseErrorKind::Syntax,
                    })
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- parser

/// DL constructors outside DL-Lite_R that get a dedicated diagnostic.
const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "and", "or", "not", "some", "only", "all", "forall", "min", "max", "exactly", "value", "self",
    "Sym", "Asym", "Trans", "Tra", "Fun", "Func", "Funct", "InvFun", "Key",
];

const RESERVED_WORDS: &[&str] = &[
    "D",
    "Dis",
    "Inv",
    "Irr",
    "Ref",
    "exists",
    "concept",
    "role",
    "individual",
];

/// An inclusion whose two sides are plain names: concept or role inclusion
/// is decided once all statements have been seen.
#[derive(Clone, Debug)]
enum RawAxiom {
    Known(SurfaceAxiom),
    NameInclusion { sub: Name, sup: Name },
}

#[derive(Clone, Debug)]
enum RawStatement {
    Declare(NameKind, Name, usize, usize),
    Axiom {
        axiom: RawAxiom,
        defeasible: bool,
        line: usize,
        column: usize,
    },
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    options: ParseOptions,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn error(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError {
            line,
            column,
            message: message.into(),
            kind,
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(Tok::Ident(w)) if UNSUPPORTED_KEYWORDS.contains(&w.as_str()) => self.error(
                ParseErrorKind::UnknownConstruct,
                format!("`{w}` is not part of the supported grammar"),
            ),
            Some(t) => self.error(
                ParseErrorKind::Syntax,
                format!("expected {wanted}, found {t}"),
            ),
            None => self.error(
                ParseErrorKind::Syntax,
                format!("expected {wanted}, found end of input"),
            ),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn is_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(w)) if w == word)
    }

    /// A user name: not reserved, not a keyword.
    fn name(&mut self, what: &str) -> Result<Name, ParseError> {
        let word = match self.peek() {
            Some(Tok::Ident(w)) => w.clone(),
            _ => return Err(self.unexpected(what)),
        };
        if UNSUPPORTED_KEYWORDS.contains(&word.as_str()) {
            return Err(self.unexpected(what));
        }
        if RESERVED_WORDS.contains(&word.as_str()) {
            return Err(self.error(
                ParseErrorKind::Syntax,
                format!("`{word}` is a keyword and cannot be used as a {what}"),
            ));
        }
        if word.starts_with('_') && !self.options.allow_reserved {
            return Err(self.error(
                ParseErrorKind::Syntax,
                format!("names starting with `_` are reserved (`{word}`)"),
            ));
        }
        self.pos += 1;
        Ok(Name::from(word))
    }

    fn individual(&mut self) -> Result<Name, ParseError> {
        let before = self.pos;
        let name = self.name("individual")?;
        if parse_aux_name(&name).is_some() {
            self.pos = before;
            return Err(self.error(
                ParseErrorKind::Syntax,
                format!("`{name}` is reserved for auxiliary constants"),
            ));
        }
        Ok(name)
    }

    fn role(&mut self) -> Result<SurfaceRole, ParseError> {
        let name = self.name("role")?;
        if self.peek() == Some(&Tok::InvMark) {
            self.pos += 1;
            Ok(SurfaceRole::Inverse(name))
        } else {
            Ok(SurfaceRole::Named(name))
        }
    }

    fn statements(&mut self) -> Result<Vec<RawStatement>, ParseError> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            out.push(self.statement()?);
            self.expect(Tok::Dot, "`.`")?;
        }
        Ok(out)
    }

    fn statement(&mut self) -> Result<RawStatement, ParseError> {
        let (line, column) = self.here();
        for (word, kind) in [
            ("concept", NameKind::Concept),
            ("role", NameKind::Role),
            ("individual", NameKind::Individual),
        ] {
            if self.is_keyword(word) && matches!(self.peek_at(1), Some(Tok::Ident(_))) {
                self.pos += 1;
                let name = if kind == NameKind::Individual {
                    self.individual()?
                } else {
                    self.name(word)?
                };
                return Ok(RawStatement::Declare(kind, name, line, column));
            }
        }
        if self.is_keyword("D") && self.peek_at(1) == Some(&Tok::LParen) {
            self.pos += 2;
            let axiom = self.axiom()?;
            self.expect(Tok::RParen, "`)` closing D(...)")?;
            return Ok(RawStatement::Axiom {
                axiom,
                defeasible: true,
                line,
                column,
            });
        }
        let axiom = self.axiom()?;
        Ok(RawStatement::Axiom {
            axiom,
            defeasible: false,
            line,
            column,
        })
    }

    fn axiom(&mut self) -> Result<RawAxiom, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                self.assertion(true)
            }
            Some(Tok::Ident(w)) if w == "Ref" => Err(self.error(
                ParseErrorKind::ReflexivityRejected,
                "reflexivity axioms `Ref(R)` are outside the supported fragment",
            )),
            Some(Tok::Ident(w))
                if (w == "Dis" || w == "Inv") && self.peek_at(1) == Some(&Tok::LParen) =>
            {
                let is_dis = w == "Dis";
                self.pos += 2;
                let r = self.role()?;
                self.expect(Tok::Comma, "`,`")?;
                let s = self.role()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(RawAxiom::Known(if is_dis {
                    SurfaceAxiom::Dis(r, s)
                } else {
                    SurfaceAxiom::Inv(r, s)
                }))
            }
            Some(Tok::Ident(w)) if w == "Irr" && self.peek_at(1) == Some(&Tok::LParen) => {
                self.pos += 2;
                let r = self.role()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(RawAxiom::Known(SurfaceAxiom::Irr(r)))
            }
            Some(Tok::Ident(w)) if w == "exists" => {
                self.pos += 1;
                let role = self.role()?;
                match self.peek() {
                    Some(Tok::LParen) => {
                        self.pos += 1;
                        let individual = self.individual()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(RawAxiom::Known(SurfaceAxiom::ConceptAssertion {
                            concept: BasicConcept::Exists(role),
                            individual,
                            negated: false,
                        }))
                    }
                    Some(Tok::Sub) => {
                        self.pos += 1;
                        let sup = self.general_concept()?;
                        Ok(RawAxiom::Known(SurfaceAxiom::ConceptInclusion {
                            sub: BasicConcept::Exists(role),
                            sup,
                        }))
                    }
                    _ => Err(self.unexpected("`(` or `[=`")),
                }
            }
            Some(Tok::Ident(_)) => {
                let inverse_head =
                    self.peek_at(1) == Some(&Tok::InvMark) && self.peek_at(2) == Some(&Tok::LParen);
                if self.peek_at(1) == Some(&Tok::LParen) || inverse_head {
                    return self.assertion(false);
                }
                let sub = self.role()?;
                self.expect(Tok::Sub, "`[=` or `(`")?;
                if let SurfaceRole::Inverse(_) = sub {
                    let sup = self.role()?;
                    return Ok(RawAxiom::Known(SurfaceAxiom::RoleInclusion { sub, sup }));
                }
                let sub = sub.name().clone();
                match self.peek() {
                    Some(Tok::Ident(w)) if w != "exists" => {
                        let sup = self.role()?;
                        match sup {
                            SurfaceRole::Named(sup) => Ok(RawAxiom::NameInclusion { sub, sup }),
                            inv => Ok(RawAxiom::Known(SurfaceAxiom::RoleInclusion {
                                sub: SurfaceRole::Named(sub),
                                sup: inv,
                            })),
                        }
                    }
                    _ => {
                        let sup = self.general_concept()?;
                        Ok(RawAxiom::Known(SurfaceAxiom::ConceptInclusion {
                            sub: BasicConcept::Atomic(sub),
                            sup,
                        }))
                    }
                }
            }
            _ => Err(self.unexpected("an axiom")),
        }
    }

    fn basic_concept(&mut self) -> Result<BasicConcept, ParseError> {
        if self.is_keyword("exists") {
            self.pos += 1;
            Ok(BasicConcept::Exists(self.role()?))
        } else {
            Ok(BasicConcept::Atomic(self.name("concept")?))
        }
    }

    fn general_concept(&mut self) -> Result<GeneralConcept, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            Ok(GeneralConcept::Not(self.basic_concept()?))
        } else {
            Ok(GeneralConcept::Basic(self.basic_concept()?))
        }
    }

    /// `Name(args)` or, after a leading `-`, its negation; also `-exists R(a)`.
    fn assertion(&mut self, negated: bool) -> Result<RawAxiom, ParseError> {
        if self.is_keyword("exists") {
            self.pos += 1;
            let role = self.role()?;
            self.expect(Tok::LParen, "`(`")?;
            let individual = self.individual()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(RawAxiom::Known(SurfaceAxiom::ConceptAssertion {
                concept: BasicConcept::Exists(role),
                individual,
                negated,
            }));
        }
        let head_at = self.here();
        if let Some(Tok::Ident(w)) = self.peek() {
            if w == "Ref" {
                return Err(self.error(
                    ParseErrorKind::ReflexivityRejected,
                    "reflexivity axioms `Ref(R)` are outside the supported fragment",
                ));
            }
            if UNSUPPORTED_KEYWORDS.contains(&w.as_str()) {
                return Err(self.error(
                    ParseErrorKind::UnknownConstruct,
                    format!("`{w}(...)` is not part of the supported grammar"),
                ));
            }
        }
        let pred = self.role()?;
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        loop {
            args.push(self.individual()?);
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        let mk_err = |message: String| ParseError {
            line: head_at.0,
            column: head_at.1,
            message,
            kind: ParseErrorKind::UnknownConstruct,
        };
        match (pred, args.len()) {
            (SurfaceRole::Named(concept), 1) => {
                Ok(RawAxiom::Known(SurfaceAxiom::ConceptAssertion {
                    concept: BasicConcept::Atomic(concept),
                    individual: args.remove(0),
                    negated,
                }))
            }
            (SurfaceRole::Inverse(r), 1) => {
                Err(mk_err(format!("`{r}^-` applied to a single argument")))
            }
            (role, 2) => {
                let object = args.pop().unwrap();
                let subject = args.pop().unwrap();
                Ok(RawAxiom::Known(SurfaceAxiom::RoleAssertion {
                    role,
                    subject,
                    object,
                    negated,
                }))
            }
            (p, n) => Err(mk_err(format!("`{p}` applied to {n} arguments"))),
        }
    }
}

// ---------------------------------------------------------------- resolution

fn collect_roles(axiom: &SurfaceAxiom, roles: &mut HashSet<Name>) {
    let mut add = |r: &SurfaceRole| {
        roles.insert(r.name().clone());
    };
    match axiom {
        SurfaceAxiom::ConceptAssertion { concept, .. } => {
            if let BasicConcept::Exists(r) = concept {
                add(r)
            }
        }
        SurfaceAxiom::RoleAssertion { role, .. } => add(role),
        SurfaceAxiom::ConceptInclusion { sub, sup } => {
            if let BasicConcept::Exists(r) = sub {
                add(r)
            }
            match sup {
                GeneralConcept::Basic(BasicConcept::Exists(r))
                | GeneralConcept::Not(BasicConcept::Exists(r)) => add(r),
                _ => {}
            }
        }
        SurfaceAxiom::RoleInclusion { sub, sup }
        | SurfaceAxiom::Dis(sub, sup)
        | SurfaceAxiom::Inv(sub, sup) => {
            add(sub);
            add(sup);
        }
        SurfaceAxiom::Irr(r) => add(r),
    }
}

fn surface_names(axiom: &SurfaceAxiom, mut f: impl FnMut(NameKind, &Name)) {
    use NameKind::*;
    let basic = |c: &BasicConcept, f: &mut dyn FnMut(NameKind, &Name)| match c {
        BasicConcept::Atomic(n) => f(Concept, n),
        BasicConcept::Exists(r) => f(Role, r.name()),
    };
    match axiom {
        SurfaceAxiom::ConceptAssertion {
            concept,
            individual,
            ..
        } => {
            basic(concept, &mut f);
            f(Individual, individual);
        }
        SurfaceAxiom::RoleAssertion {
            role,
            subject,
            object,
            ..
        } => {
            f(Role, role.name());
            f(Individual, subject);
            f(Individual, object);
        }
        SurfaceAxiom::ConceptInclusion { sub, sup } => {
            basic(sub, &mut f);
            match sup {
                GeneralConcept::Basic(c) | GeneralConcept::Not(c) => basic(c, &mut f),
            }
        }
        SurfaceAxiom::RoleInclusion { sub, sup }
        | SurfaceAxiom::Dis(sub, sup)
        | SurfaceAxiom::Inv(sub, sup) => {
            f(Role, sub.name());
            f(Role, sup.name());
        }
        SurfaceAxiom::Irr(r) => f(Role, r.name()),
    }
}

fn resolve(raw: Vec<RawStatement>) -> Result<SurfaceKb, ParseError> {
    let mut roles = HashSet::new();
    for st in &raw {
        match st {
            RawStatement::Declare(NameKind::Role, n, ..) => {
                roles.insert(n.clone());
            }
            RawStatement::Axiom {
                axiom: RawAxiom::Known(a),
                ..
            } => collect_roles(a, &mut roles),
            _ => {}
        }
    }

    let mut kb = SurfaceKb::default();
    for st in raw {
        match st {
            RawStatement::Declare(kind, name, line, column) => {
                kb.vocabulary.declare(kind, &name).map_err(|e| ParseError {
                    line,
                    column,
                    message: e.to_string(),
                    kind: ParseErrorKind::Syntax,
                })?;
            }
            RawStatement::Axiom {
                axiom,
                defeasible,
                line,
                column,
            } => {
                let axiom = match axiom {
                    RawAxiom::Known(a) => a,
                    RawAxiom::NameInclusion { sub, sup } => {
                        if roles.contains(&sub) || roles.contains(&sup) {
                            SurfaceAxiom::RoleInclusion {
                                sub: SurfaceRole::Named(sub),
                                sup: SurfaceRole::Named(sup),
                            }
                        } else {
                            SurfaceAxiom::ConceptInclusion {
                                sub: BasicConcept::Atomic(sub),
                                sup: GeneralConcept::Basic(BasicConcept::Atomic(sup)),
                            }
                        }
                    }
                };
                let mut failure = None;
                surface_names(&axiom, |kind, name| {
                    if failure.is_some() {
                        return;
                    }
                    if kind == NameKind::Individual
                        && name.starts_with(|c: char| c.is_uppercase())
                        && !kb.vocabulary.is_individual(name)
                    {
                        failure = Some(ParseError {
                            line,
                            column,
                            message: format!(
                                "`{axiom}`: `{name}` is not an individual (individual names \
                                 start lowercase unless declared)"
                            ),
                            kind: ParseErrorKind::UnknownConstruct,
                        });
                        return;
                    }
                    if let Err(e) = kb.vocabulary.declare(kind, name) {
                        failure = Some(ParseError {
                            line,
                            column,
                            message: e.to_string(),
                            kind: ParseErrorKind::Syntax,
                        });
                    }
                });
                if let Some(e) = failure {
                    return Err(e);
                }
                kb.statements.push(SurfaceStatement {
                    axiom,
                    defeasible,
                    line,
                });
            }
        }
    }
    Ok(kb)
}
