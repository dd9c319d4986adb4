//! Non-ground logic programs with strong and default negation.

use std::fmt;

use crate::kb::Name;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(Name),
    Var(Name),
}

impl Term {
    pub fn constant(name: impl Into<Name>) -> Self {
        Term::Const(name.into())
    }

    pub fn var(name: impl Into<Name>) -> Self {
        Term::Var(name.into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

/// `p(t1, ..., tn)`, optionally strongly negated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub predicate: Name,
    pub negated: bool,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(predicate: impl Into<Name>, negated: bool, args: Vec<Term>) -> Self {
        Literal {
            predicate: predicate.into(),
            negated,
            args,
        }
    }

    /// Ground positive literal over constants.
    pub fn fact<I, S>(predicate: &str, args: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Name>,
    {
        Literal::new(
            predicate,
            false,
            args.into_iter().map(|a| Term::Const(a.into())).collect(),
        )
    }

    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    pub fn vars(&self) -> impl Iterator<Item = &Name> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        })
    }
}

/// `head :- body_pos, not body_naf.` with an optional label naming its
/// schema entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub label: Option<String>,
    pub head: Literal,
    pub body_pos: Vec<Literal>,
    pub body_naf: Vec<Literal>,
}

impl Rule {
    pub fn new(head: Literal, body_pos: Vec<Literal>, body_naf: Vec<Literal>) -> Self {
        Rule {
            label: None,
            head,
            body_pos,
            body_naf,
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Variables of the head and of default-negated literals all occur in the
    /// positive body.
    pub fn is_safe(&self) -> bool {
        let bound: Vec<&Name> = self.body_pos.iter().flat_map(Literal::vars).collect();
        self.head
            .vars()
            .chain(self.body_naf.iter().flat_map(Literal::vars))
            .all(|v| bound.contains(&v))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    pub rules: Vec<Rule>,
    pub facts: Vec<Literal>,
    /// Constants in first/next/last chain order.
    pub constants: Vec<Name>,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write_symbol(f, c),
        }
    }
}

/// Writes a constant, quoting it unless it reads as a plain lowercase
/// symbol.
pub(crate) fn write_symbol(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    if is_plain_symbol(s) {
        f.write_str(s)
    } else {
        f.write_char('"')?;
        for c in s.chars() {
            if c == '"' || c == '\\' {
                f.write_char('\\')?;
            }
            f.write_char(c)?;
        }
        f.write_char('"')
    }
}

pub(crate) fn is_plain_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "not"
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        let body: Vec<String> = self
            .body_pos
            .iter()
            .map(ToString::to_string)
            .chain(self.body_naf.iter().map(|l| format!("not {l}")))
            .collect();
        if !body.is_empty() {
            write!(f, " :- {}", body.join(", "))?;
        }
        f.write_str(".")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_quotes_uppercase_constants() {
        let l = Literal::fact("insta", ["a", "A"]).negate();
        assert_eq!(l.to_string(), "-insta(a,\"A\")");
    }

    #[test]
    fn safety() {
        let x = || Term::var("X");
        let y = || Term::var("Y");
        let safe = Rule::new(
            Literal::new("p", false, vec![x()]),
            vec![Literal::new("q", false, vec![x()])],
            vec![],
        );
        assert!(safe.is_safe());
        let unsafe_naf = Rule::new(
            Literal::new("p", false, vec![x()]),
            vec![Literal::new("q", false, vec![x()])],
            vec![Literal::new("r", false, vec![y()])],
        );
        assert!(!unsafe_naf.is_safe());
    }
}
