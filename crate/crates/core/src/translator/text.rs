//! ASP text rendering and reading of [`Program`]s.

use std::fmt::Write as _;

use thiserror::Error;

use crate::kb::{parse_aux_name, Name};
use crate::program::{Literal, Program, Rule, Term};

/// Renders facts (sorted) followed by rules (in program order). Labeled rules
/// are preceded by a `% (label)` comment line.
pub fn export_asp_text(p: &Program) -> String {
    let mut facts: Vec<&Literal> = p.facts.iter().collect();
    facts.sort();
    let mut out = String::new();
    for fact in facts {
        writeln!(out, "{fact}.").unwrap();
    }
    for rule in &p.rules {
        if let Some(label) = &rule.label {
            writeln!(out, "% ({label})").unwrap();
        }
        writeln!(out, "{rule}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct AspParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Sym(String),
    Var(String),
    Quoted(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    Minus,
    Not,
    Label(String),
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, AspParseError> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Lexed>, tok| {
                out.push(Lexed {
                    tok,
                    line: ln + 1,
                    column,
                })
            };
            match c {
                c if c.is_whitespace() => i += 1,
                '%' => {
                    let rest: String = chars[i + 1..].iter().collect();
                    let rest = rest.trim();
                    if let Some(label) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                        push(&mut out, Tok::Label(label.to_string()));
                    }
                    break;
                }
                '(' | ')' | ',' | '.' | '-' => {
                    let tok = match c {
                        '(' => Tok::LParen,
                        ')' => Tok::RParen,
                        ',' => Tok::Comma,
                        '.' => Tok::Dot,
                        _ => Tok::Minus,
                    };
                    push(&mut out, tok);
                    i += 1;
                }
                ':' if chars.get(i + 1) == Some(&'-') => {
                    push(&mut out, Tok::Arrow);
                    i += 2;
                }
                '"' => {
                    let mut s = String::new();
                    i += 1;
                    loop {
                        match chars.get(i) {
                            None => {
                                return Err(AspParseError {
                                    line: ln + 1,
                                    column,
                                    message: "unterminated string".into(),
                                })
                            }
                            Some('"') => break,
                            Some('\\') if i + 1 < chars.len() => {
                                s.push(chars[i + 1]);
                                i += 2;
                            }
                            Some(&c) => {
                                s.push(c);
                                i += 1;
                            }
                        }
                    }
                    i += 1;
                    push(&mut out, Tok::Quoted(s));
                }
                c if c.is_alphanumeric() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    let tok = if word == "not" {
                        Tok::Not
                    } else if c.is_uppercase() || c == '_' {
                        Tok::Var(word)
                    } else {
                        Tok::Sym(word)
                    };
                    push(&mut out, tok);
                }
                other => {
                    return Err(AspParseError {
                        line: ln + 1,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        }
    }
    Ok(out)
}

struct Reader {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Reader {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn error(&self, message: impl Into<String>) -> AspParseError {
        let (line, column) = match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        };
        AspParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), AspParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn term(&mut self) -> Result<Term, AspParseError> {
        let t = match self.peek() {
            Some(Tok::Sym(s)) | Some(Tok::Quoted(s)) => Term::Const(Name::from(s.as_str())),
            Some(Tok::Var(v)) => Term::Var(Name::from(v.as_str())),
            _ => return Err(self.error("expected a term")),
        };
        self.pos += 1;
        Ok(t)
    }

    fn literal(&mut self) -> Result<Literal, AspParseError> {
        let negated = self.eat(&Tok::Minus);
        let predicate = match self.peek() {
            Some(Tok::Sym(s)) => Name::from(s.as_str()),
            _ => return Err(self.error("expected a predicate")),
        };
        self.pos += 1;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(Literal {
            predicate,
            negated,
            args,
        })
    }
}

/// Reads a program written by [`export_asp_text`] (or any program in the
/// same plain rule syntax). The constant order is recovered from the
/// `first`/`next` chain when present.
pub fn parse_asp_text(text: &str) -> Result<Program, AspParseError> {
    let mut r = Reader {
        toks: lex(text)?,
        pos: 0,
    };
    let mut program = Program::default();
    let mut label = None;
    while let Some(tok) = r.peek() {
        if let Tok::Label(l) = tok {
            label = Some(l.clone());
            r.pos += 1;
            continue;
        }
        let head = r.literal()?;
        let mut body_pos = Vec::new();
        let mut body_naf = Vec::new();
        if r.eat(&Tok::Arrow) {
            loop {
                if r.eat(&Tok::Not) {
                    body_naf.push(r.literal()?);
                } else {
                    body_pos.push(r.literal()?);
                }
                if !r.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        r.expect(Tok::Dot, "`.`")?;
        if body_pos.is_empty() && body_naf.is_empty() && head.is_ground() && label.is_none() {
            program.facts.push(head);
        } else {
            let mut rule = Rule::new(head, body_pos, body_naf);
            rule.label = label.take();
            program.rules.push(rule);
        }
    }
    program.constants = constant_chain(&program.facts);
    Ok(program)
}

fn constant_chain(facts: &[Literal]) -> Vec<Name> {
    let unary = |pred: &str| {
        facts
            .iter()
            .find_map(|f| match (f.predicate.as_str(), f.args.as_slice()) {
                (p, [Term::Const(c)]) if p == pred && !f.negated => Some(c.clone()),
                _ => None,
            })
    };
    let mut chain = Vec::new();
    let mut current = unary("first");
    while let Some(c) = current.take() {
        if chain.contains(&c) {
            break;
        }
        chain.push(c.clone());
        current = facts
            .iter()
            .find_map(|f| match (f.predicate.as_str(), f.args.as_slice()) {
                ("next", [Term::Const(a), Term::Const(b)]) if *a == c => Some(b.clone()),
                _ => None,
            });
    }
    // Constants outside the chain (fresh successors) keep their index order.
    let mut rest: Vec<Name> = facts
        .iter()
        .filter_map(|f| match (f.predicate.as_str(), f.args.as_slice()) {
            ("const", [Term::Const(c)]) if !f.negated && !chain.contains(c) => Some(c.clone()),
            _ => None,
        })
        .collect();
    rest.sort_by_key(|c| (parse_aux_name(c.as_str()), c.clone()));
    rest.dedup();
    chain.extend(rest);
    chain
}
