//! Text format for defeasible knowledge bases and queries.

mod normalize;
mod parser;

pub use normalize::{normalize, to_surface};
pub use parser::{
    parse_dkb, parse_dkb_with, BasicConcept, GeneralConcept, ParseError, ParseErrorKind,
    ParseOptions, SurfaceAxiom, SurfaceKb, SurfaceRole, SurfaceStatement,
};

use thiserror::Error;

use crate::kb::{parse_aux_name, Axiom, Dkb, Name};

/// Parses and normalizes in one step.
pub fn load_dkb(text: &str) -> Result<Dkb, ParseError> {
    Ok(normalize(&parse_dkb(text)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("malformed query `{0}`: expected A(a), R(a,b), -A(a) or -R(a,b)")]
    Malformed(String),
    #[error("unknown concept `{0}`")]
    UnknownConcept(String),
    #[error("unknown role `{0}`")]
    UnknownRole(String),
    #[error("unknown individual `{0}`")]
    UnknownIndividual(String),
}

/// Parses a ground assertion such as `hasCourse(alice, aux_0)` against the
/// signature of `kb`. Auxiliary constants are accepted as role objects.
pub fn parse_query(text: &str, kb: &Dkb) -> Result<Axiom, QueryError> {
    let malformed = || QueryError::Malformed(text.trim().to_string());
    let body = text.trim().trim_end_matches('.').trim();
    let (negated, body) = match body.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, body),
    };
    let open = body.find('(').ok_or_else(malformed)?;
    let inner = body[open + 1..].strip_suffix(')').ok_or_else(malformed)?;
    let pred = body[..open].trim();
    let args: Vec<&str> = inner.split(',').map(str::trim).collect();
    if pred.is_empty() || args.iter().any(|a| a.is_empty()) {
        return Err(malformed());
    }
    let supex_count = kb.supex_axioms().len();
    let individual = |a: &str, allow_aux: bool| -> Result<Name, QueryError> {
        if kb.vocabulary.is_individual(a) {
            return Ok(Name::from(a));
        }
        match parse_aux_name(a) {
            Some(i) if allow_aux && i < supex_count => Ok(Name::from(a)),
            _ => Err(QueryError::UnknownIndividual(a.to_string())),
        }
    };
    match args.as_slice() {
        [a] => {
            if !kb.vocabulary.is_concept(pred) {
                return Err(QueryError::UnknownConcept(pred.to_string()));
            }
            let a = individual(a, false)?;
            Ok(if negated {
                Axiom::neg_concept(pred, a)
            } else {
                Axiom::concept(pred, a)
            })
        }
        [a, b] => {
            if !kb.vocabulary.is_role(pred) {
                return Err(QueryError::UnknownRole(pred.to_string()));
            }
            let a = individual(a, false)?;
            let b = individual(b, true)?;
            Ok(if negated {
                Axiom::neg_role(pred, a, b)
            } else {
                Axiom::role(pred, a, b)
            })
        }
        _ => Err(malformed()),
    }
}
