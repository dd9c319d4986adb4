//! Knowledge bases built from two classic hard problems, together with naive
//! solvers for the originals.
//!
//! * Inconsistency-tolerant (AR) query answering: every ABox assertion of a
//!   plain DL-Lite knowledge base becomes defeasible, so the justified
//!   exception sets are the complements of the maximal consistent repairs.
//! * Circumscription of a positive 2CNF with all variables but `z`
//!   minimized: variables become concepts of one individual `a` that hold
//!   by default, so a concept holding at `a` encodes a false variable.

use std::collections::HashSet;

use thiserror::Error;

use crate::frontend::{load_dkb, ParseError};
use crate::kb::{Axiom, Dkb, KbError, Name};
use crate::oracle::{chase, ChaseOutcome, DEFAULT_DEPTH_CAP};

/// Most assertions [`ar_entails_bruteforce`] will enumerate subsets of.
pub const MAX_AR_ASSERTIONS: usize = 12;

/// Most variables [`circ_entails_bruteforce`] will enumerate models over.
pub const MAX_CIRC_VARIABLES: usize = 20;

/// Concept name prefix for propositional variables.
pub const VARIABLE_PREFIX: &str = "v_";

/// The fixed individual of [`from_2cnf`].
pub const CIRC_INDIVIDUAL: &str = "a";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{found} assertions exceed the repair enumeration limit of {cap}")]
    TooManyAssertions { found: usize, cap: usize },
    #[error("{found} variables exceed the model enumeration limit of {cap}")]
    TooManyVariables { found: usize, cap: usize },
    #[error("existential chase did not terminate within depth {0}")]
    DepthExceeded(usize),
    #[error("`{0}` is not a ground assertion")]
    NotAnAssertion(String),
    #[error("`{0}` is not a TBox axiom")]
    NotATboxAxiom(String),
    #[error("a clause needs two distinct variables, got `{0} | {1}`")]
    DegenerateClause(String, String),
    #[error("missing `%! {0}:` line")]
    MissingPragma(&'static str),
    #[error("input has defeasible axioms")]
    Defeasible,
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A classical DL-Lite knowledge base, possibly inconsistent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FlatKb {
    pub tbox: Vec<Axiom>,
    pub abox: Vec<Axiom>,
}

impl FlatKb {
    pub fn new(tbox: Vec<Axiom>, abox: Vec<Axiom>) -> Result<Self, ReductionError> {
        if let Some(a) = tbox.iter().find(|a| a.is_assertion()) {
            return Err(ReductionError::NotATboxAxiom(a.to_string()));
        }
        if let Some(a) = abox.iter().find(|a| !a.is_assertion()) {
            return Err(ReductionError::NotAnAssertion(a.to_string()));
        }
        Ok(FlatKb { tbox, abox })
    }

    /// Reads a knowledge base without defeasible axioms; its assertions form
    /// the ABox.
    pub fn from_text(text: &str) -> Result<Self, ReductionError> {
        let kb = load_dkb(text)?;
        if !kb.defeasible.is_empty() {
            return Err(ReductionError::Defeasible);
        }
        let (abox, tbox) = kb.strict.into_iter().partition(Axiom::is_assertion);
        Ok(FlatKb { tbox, abox })
    }

    /// The strict knowledge base of the TBox plus the given assertions.
    fn with_assertions<'a>(
        &'a self,
        assertions: impl IntoIterator<Item = &'a Axiom>,
    ) -> Result<Dkb, KbError> {
        let mut kb = Dkb::new();
        for a in self.tbox.iter().chain(assertions) {
            kb.add_strict(a.clone())?;
        }
        Ok(kb)
    }
}

/// Keeps the TBox strict and makes every assertion defeasible.
///
/// With `emulate`, no assertion is defeasible: `A(a)` becomes the strict
/// `A'(a)` with a defeasible `A' [= A` for a fresh `A'`, and likewise
/// `-A(a)` uses `A' [= -A`, `R(a,b)` uses `R' [= R` and `-R(a,b)` uses
/// `Dis(R',R)`.
pub fn from_inconsistent_kb(k: &FlatKb, emulate: bool) -> Result<Dkb, ReductionError> {
    let mut kb = Dkb::new();
    for a in &k.tbox {
        kb.add_strict(a.clone())?;
    }
    if !emulate {
        for a in &k.abox {
            kb.add_defeasible(a.clone())?;
        }
        return Ok(kb);
    }
    // Names in use anywhere, so that fresh ones cannot collide with names
    // that only appear in later assertions.
    let mut taken: HashSet<Name> = HashSet::new();
    for a in k.tbox.iter().chain(&k.abox) {
        a.for_each_name(|_, n| {
            taken.insert(n.clone());
        });
    }
    let mut fresh = |base: &Name, negative: bool| {
        let mut candidate = format!("{base}_{}", if negative { "n" } else { "p" });
        while taken.contains(candidate.as_str()) {
            candidate.push('_');
        }
        let name = Name::from(candidate);
        taken.insert(name.clone());
        name
    };
    let mut sources: Vec<((Name, bool), Name)> = Vec::new();
    let mut source_of = |base: &Name, negative: bool| {
        let key = (base.clone(), negative);
        match sources.iter().find(|(k, _)| *k == key) {
            Some((_, n)) => n.clone(),
            None => {
                let n = fresh(base, negative);
                sources.push((key, n.clone()));
                n
            }
        }
    };
    for a in &k.abox {
        let (strict, defeasible) = match a {
            Axiom::ConceptAssertion {
                concept,
                individual,
            } => {
                let s = source_of(concept, false);
                (
                    Axiom::concept(s.clone(), individual.clone()),
                    Axiom::sub_class(s, concept.clone()),
                )
            }
            Axiom::NegConceptAssertion {
                concept,
                individual,
            } => {
                let s = source_of(concept, true);
                (
                    Axiom::concept(s.clone(), individual.clone()),
                    Axiom::sup_not(s, concept.clone()),
                )
            }
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            } => {
                let s = source_of(role, false);
                (
                    Axiom::role(s.clone(), subject.clone(), object.clone()),
                    Axiom::sub_role(s, role.clone()),
                )
            }
            Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } => {
                let s = source_of(role, true);
                (
                    Axiom::role(s.clone(), subject.clone(), object.clone()),
                    Axiom::dis(s, role.clone()),
                )
            }
            other => return Err(ReductionError::NotAnAssertion(other.to_string())),
        };
        kb.add_strict(strict)?;
        kb.add_defeasible(defeasible)?;
    }
    Ok(kb)
}

fn depth_cap(kb: &Dkb) -> usize {
    DEFAULT_DEPTH_CAP.max(kb.supex_axioms().len() + 1)
}

fn consistent(kb: &Dkb) -> Result<bool, ReductionError> {
    let cap = depth_cap(kb);
    match chase(kb, &[], cap) {
        ChaseOutcome::Model(_) => Ok(true),
        ChaseOutcome::Inconsistent => Ok(false),
        ChaseOutcome::DepthExceeded => Err(ReductionError::DepthExceeded(cap)),
    }
}

/// Maximal subsets of the ABox consistent with the TBox, as bitmasks over
/// `k.abox`.
pub fn repairs(k: &FlatKb) -> Result<Vec<u32>, ReductionError> {
    let n = k.abox.len();
    if n > MAX_AR_ASSERTIONS {
        return Err(ReductionError::TooManyAssertions {
            found: n,
            cap: MAX_AR_ASSERTIONS,
        });
    }
    let mut ok = Vec::new();
    for mask in 0u32..1 << n {
        let subset = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &k.abox[i]);
        if consistent(&k.with_assertions(subset)?)? {
            ok.push(mask);
        }
    }
    Ok(ok
        .iter()
        .copied()
        .filter(|&m| !ok.iter().any(|&o| o != m && o & m == m))
        .collect())
}

/// Whether `query` holds in every repair, decided by refutation: a repair
/// entails `query` iff adding its complement is inconsistent.
pub fn ar_entails_bruteforce(k: &FlatKb, query: &Axiom) -> Result<bool, ReductionError> {
    let negated = query
        .complement()
        .ok_or_else(|| ReductionError::NotAnAssertion(query.to_string()))?;
    for mask in repairs(k)? {
        let subset = (0..k.abox.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &k.abox[i])
            .chain(std::iter::once(&negated));
        if consistent(&k.with_assertions(subset)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A positive 2CNF with a distinguished variable `z` left unminimized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positive2Cnf {
    pub variables: Vec<String>,
    pub clauses: Vec<(String, String)>,
    pub target: String,
}

impl Positive2Cnf {
    /// Variables are those of the clauses, then `target`, then `extra`.
    pub fn new(
        clauses: Vec<(String, String)>,
        target: impl Into<String>,
        extra: &[&str],
    ) -> Result<Self, ReductionError> {
        let target = target.into();
        let mut variables: Vec<String> = Vec::new();
        let mut add = |v: &str| {
            if !variables.iter().any(|x| x == v) {
                variables.push(v.to_string());
            }
        };
        for (x, y) in &clauses {
            if x == y {
                return Err(ReductionError::DegenerateClause(x.clone(), y.clone()));
            }
            add(x);
            add(y);
        }
        add(&target);
        for v in extra {
            add(v);
        }
        Ok(Positive2Cnf {
            variables,
            clauses,
            target,
        })
    }

    /// Reads `%! target: z` and any number of `%! clause: x y` lines.
    pub fn from_pragmas(text: &str) -> Result<Self, ReductionError> {
        let mut target = None;
        let mut clauses = Vec::new();
        for (key, value) in pragmas(text) {
            match key.as_str() {
                "target" => target = Some(value),
                "clause" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    match parts.as_slice() {
                        [x, y] => clauses.push((x.to_string(), y.to_string())),
                        _ => return Err(ReductionError::DegenerateClause(value, String::new())),
                    }
                }
                _ => {}
            }
        }
        let target = target.ok_or(ReductionError::MissingPragma("target"))?;
        Positive2Cnf::new(clauses, target, &[])
    }

    fn index(&self, v: &str) -> usize {
        self.variables.iter().position(|x| x == v).unwrap()
    }
}

/// Concept name of a propositional variable.
pub fn variable_concept(v: &str) -> Name {
    Name::from(format!("{VARIABLE_PREFIX}{v}"))
}

/// For a clause `x | y`: `x [= -y` if neither is `z`, else `x [= z`
/// (or `y [= z`). Every variable but `z` holds at `a` by default.
pub fn from_2cnf(f: &Positive2Cnf) -> Result<Dkb, ReductionError> {
    let mut kb = Dkb::new();
    let z = &f.target;
    for (x, y) in &f.clauses {
        let axiom = if y == z {
            Axiom::sub_class(variable_concept(x), variable_concept(z))
        } else if x == z {
            Axiom::sub_class(variable_concept(y), variable_concept(z))
        } else {
            Axiom::sup_not(variable_concept(x), variable_concept(y))
        };
        kb.add_strict(axiom)?;
    }
    for x in f.variables.iter().filter(|x| *x != z) {
        kb.add_defeasible(Axiom::concept(variable_concept(x), CIRC_INDIVIDUAL))?;
    }
    kb.vocabulary.declare_concept(variable_concept(z))?;
    kb.vocabulary.declare_individual(CIRC_INDIVIDUAL)?;
    Ok(kb)
}

/// Whether `z` is true in every model of `F` whose other true variables form
/// a minimal set among the models of `F`.
pub fn circ_entails_bruteforce(f: &Positive2Cnf) -> Result<bool, ReductionError> {
    let n = f.variables.len();
    if n > MAX_CIRC_VARIABLES {
        return Err(ReductionError::TooManyVariables {
            found: n,
            cap: MAX_CIRC_VARIABLES,
        });
    }
    let clauses: Vec<(usize, usize)> = f
        .clauses
        .iter()
        .map(|(x, y)| (f.index(x), f.index(y)))
        .collect();
    let z = 1u32 << f.index(&f.target);
    let models: Vec<u32> = (0u32..1 << n)
        .filter(|m| {
            clauses
                .iter()
                .all(|&(x, y)| m >> x & 1 == 1 || m >> y & 1 == 1)
        })
        .collect();
    let minimal = models.iter().filter(|&&m| {
        let core = m & !z;
        !models.iter().any(|&o| {
            let other = o & !z;
            other != core && other & core == other
        })
    });
    for m in minimal {
        if m & z == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `%! key: value` lines of a corpus file, in order.
pub fn pragmas(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("%!"))
        .filter_map(|l| l.split_once(':'))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}

/// The value of the first `%! key:` line.
pub fn pragma(text: &str, key: &str) -> Option<String> {
    pragmas(text)
        .into_iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reasoner::entails;

    fn flat(tbox: &[Axiom], abox: &[Axiom]) -> FlatKb {
        FlatKb::new(tbox.to_vec(), abox.to_vec()).unwrap()
    }

    fn disjoint_ab() -> FlatKb {
        flat(
            &[Axiom::sup_not("A", "B")],
            &[Axiom::concept("A", "a"), Axiom::concept("B", "a")],
        )
    }

    #[test]
    fn assertions_become_defeasible() {
        let kb = from_inconsistent_kb(&disjoint_ab(), false).unwrap();
        assert_eq!(kb.strict, vec![Axiom::sup_not("A", "B")]);
        assert_eq!(
            kb.defeasible,
            vec![Axiom::concept("A", "a"), Axiom::concept("B", "a")]
        );
        let empty = from_inconsistent_kb(&flat(&[Axiom::sub_class("A", "B")], &[]), false).unwrap();
        assert!(empty.defeasible.is_empty());
    }

    #[test]
    fn emulation_uses_fresh_sources() {
        let kb = from_inconsistent_kb(&disjoint_ab(), true).unwrap();
        assert_eq!(
            kb.strict,
            vec![
                Axiom::sup_not("A", "B"),
                Axiom::concept("A_p", "a"),
                Axiom::concept("B_p", "a")
            ]
        );
        assert_eq!(
            kb.defeasible,
            vec![Axiom::sub_class("A_p", "A"), Axiom::sub_class("B_p", "B")]
        );
        assert!(kb.defeasible.iter().all(|a| !a.is_assertion()));
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let k = flat(&[Axiom::sub_class("A_p", "C")], &[Axiom::concept("A", "a")]);
        let kb = from_inconsistent_kb(&k, true).unwrap();
        assert_eq!(kb.defeasible, vec![Axiom::sub_class("A_p_", "A")]);
    }

    #[test]
    fn ar_examples() {
        let k = flat(
            &[
                Axiom::sup_not("A", "B"),
                Axiom::sub_class("A", "C"),
                Axiom::sub_class("B", "C"),
            ],
            &[Axiom::concept("A", "a"), Axiom::concept("B", "a")],
        );
        assert_eq!(repairs(&k).unwrap(), vec![0b01, 0b10]);
        assert!(ar_entails_bruteforce(&k, &Axiom::concept("C", "a")).unwrap());
        assert!(!ar_entails_bruteforce(&k, &Axiom::concept("A", "a")).unwrap());
        for emulate in [false, true] {
            let d = from_inconsistent_kb(&k, emulate).unwrap();
            assert!(entails(&d, &Axiom::concept("C", "a")).unwrap().entailed);
            assert!(!entails(&d, &Axiom::concept("A", "a")).unwrap().entailed);
        }
    }

    #[test]
    fn consistent_kb_has_one_repair() {
        let k = flat(&[Axiom::sub_class("A", "B")], &[Axiom::concept("A", "a")]);
        assert_eq!(repairs(&k).unwrap(), vec![0b1]);
        assert!(ar_entails_bruteforce(&k, &Axiom::concept("B", "a")).unwrap());
    }

    #[test]
    fn repair_cap() {
        let abox: Vec<Axiom> = (0..13)
            .map(|i| Axiom::concept("A", format!("a{i}")))
            .collect();
        assert!(matches!(
            ar_entails_bruteforce(&flat(&[], &abox), &Axiom::concept("A", "a0")),
            Err(ReductionError::TooManyAssertions { found: 13, .. })
        ));
    }

    fn cnf(clauses: &[(&str, &str)], z: &str, extra: &[&str]) -> Positive2Cnf {
        Positive2Cnf::new(
            clauses
                .iter()
                .map(|(x, y)| (x.to_string(), y.to_string()))
                .collect(),
            z,
            extra,
        )
        .unwrap()
    }

    #[test]
    fn clause_translation() {
        let kb = from_2cnf(&cnf(&[("x", "y")], "z", &[])).unwrap();
        assert_eq!(kb.strict, vec![Axiom::sup_not("v_x", "v_y")]);
        assert_eq!(
            kb.defeasible,
            vec![Axiom::concept("v_x", "a"), Axiom::concept("v_y", "a")]
        );
        assert!(kb.vocabulary.is_concept("v_z"));
        let kb = from_2cnf(&cnf(&[("x", "z")], "z", &[])).unwrap();
        assert_eq!(kb.strict, vec![Axiom::sub_class("v_x", "v_z")]);
        assert_eq!(kb.defeasible, vec![Axiom::concept("v_x", "a")]);
        let kb = from_2cnf(&cnf(&[], "z", &["x"])).unwrap();
        assert!(kb.strict.is_empty());
        assert_eq!(kb.defeasible, vec![Axiom::concept("v_x", "a")]);
    }

    #[test]
    fn degenerate_clause_is_rejected() {
        assert!(Positive2Cnf::new(vec![("x".into(), "x".into())], "z", &[]).is_err());
    }

    #[test]
    fn circumscription_examples() {
        assert!(circ_entails_bruteforce(&cnf(&[("x", "z")], "z", &[])).unwrap());
        assert!(!circ_entails_bruteforce(&cnf(&[("x", "y")], "z", &[])).unwrap());
        assert!(!circ_entails_bruteforce(&cnf(&[], "z", &[])).unwrap());
    }

    #[test]
    fn pragma_lines() {
        let text = "%! target: z\n%! clause: x y\n% plain comment\nA(a).\n%! clause: y z\n";
        let f = Positive2Cnf::from_pragmas(text).unwrap();
        assert_eq!(f.target, "z");
        assert_eq!(f.clauses.len(), 2);
        assert_eq!(pragma(text, "target").as_deref(), Some("z"));
        assert_eq!(pragma(text, "query"), None);
    }
}
