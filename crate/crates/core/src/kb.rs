//! Vocabularies, normal-form axioms and defeasible knowledge bases.
//!
//! A [`Dkb`] holds a vocabulary of concept, role and individual names plus two
//! ordered axiom lists: the strict axioms and the bodies `α` of the defeasible
//! axioms `D(α)`. Every axiom is in one of the twelve normal-form shapes of
//! [`Axiom`]; surface syntax with negated or inverse existentials is rewritten
//! into these shapes by [`crate::frontend::normalize`].

use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// An interned identifier. Cheap to clone and safe to share between threads.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Self {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Deref for Name {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Name {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Self {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Self {
        Name(Arc::from(s))
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Name {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// The three disjoint name sorts of a vocabulary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NameKind {
    Concept,
    Role,
    Individual,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NameKind::Concept => "concept",
            NameKind::Role => "role",
            NameKind::Individual => "individual",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("`{name}` is already declared as a {existing}, cannot use it as a {requested}")]
    NameClash {
        name: Name,
        existing: NameKind,
        requested: NameKind,
    },
    #[error("invalid identifier {0:?}")]
    InvalidName(String),
}

/// Prefix of the auxiliary constants standing for existential successors.
pub const AUX_PREFIX: &str = "aux_";

/// Name of the auxiliary constant owned by the `index`-th right-existential axiom.
pub fn aux_name(index: usize) -> Name {
    Name::from(format!("{AUX_PREFIX}{index}"))
}

/// Parses `aux_<n>` back into `n`.
pub fn parse_aux_name(name: &str) -> Option<usize> {
    let digits = name.strip_prefix(AUX_PREFIX)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

fn valid_identifier(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(char::is_whitespace)
}

/// Concept, role and individual names. Individuals keep their declaration
/// order, which fixes the order of the constant chain in the translation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    concepts: IndexSet<Name>,
    roles: IndexSet<Name>,
    individuals: IndexSet<Name>,
}

impl Vocabulary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn concepts(&self) -> impl ExactSizeIterator<Item = &Name> {
        self.concepts.iter()
    }

    pub fn roles(&self) -> impl ExactSizeIterator<Item = &Name> {
        self.roles.iter()
    }

    pub fn individuals(&self) -> impl ExactSizeIterator<Item = &Name> {
        self.individuals.iter()
    }

    pub fn individual_count(&self) -> usize {
        self.individuals.len()
    }

    pub fn kind_of(&self, name: &str) -> Option<NameKind> {
        if self.concepts.contains(name) {
            Some(NameKind::Concept)
        } else if self.roles.contains(name) {
            Some(NameKind::Role)
        } else if self.individuals.contains(name) {
            Some(NameKind::Individual)
        } else {
            None
        }
    }

    pub fn is_concept(&self, name: &str) -> bool {
        self.concepts.contains(name)
    }

    pub fn is_role(&self, name: &str) -> bool {
        self.roles.contains(name)
    }

    pub fn is_individual(&self, name: &str) -> bool {
        self.individuals.contains(name)
    }

    pub fn individual_position(&self, name: &str) -> Option<usize> {
        self.individuals.get_index_of(name)
    }

    /// Registers `name` under `kind`; re-declaring with the same kind is a no-op.
    pub fn declare(&mut self, kind: NameKind, name: &Name) -> Result<(), KbError> {
        if !valid_identifier(name) {
            return Err(KbError::InvalidName(name.to_string()));
        }
        match self.kind_of(name) {
            Some(existing) if existing == kind => return Ok(()),
            Some(existing) => {
                return Err(KbError::NameClash {
                    name: name.clone(),
                    existing,
                    requested: kind,
                })
            }
            None => {}
        }
        let set = match kind {
            NameKind::Concept => &mut self.concepts,
            NameKind::Role => &mut self.roles,
            NameKind::Individual => &mut self.individuals,
        };
        set.insert(name.clone());
        Ok(())
    }

    pub fn declare_concept(&mut self, name: impl Into<Name>) -> Result<(), KbError> {
        self.declare(NameKind::Concept, &name.into())
    }

    pub fn declare_role(&mut self, name: impl Into<Name>) -> Result<(), KbError> {
        self.declare(NameKind::Role, &name.into())
    }

    pub fn declare_individual(&mut self, name: impl Into<Name>) -> Result<(), KbError> {
        self.declare(NameKind::Individual, &name.into())
    }
}

/// A normal-form DL-Lite_R axiom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `A(a)`
    ConceptAssertion { concept: Name, individual: Name },
    /// `R(a,b)`
    RoleAssertion {
        role: Name,
        subject: Name,
        object: Name,
    },
    /// `¬A(a)`
    NegConceptAssertion { concept: Name, individual: Name },
    /// `¬R(a,b)`
    NegRoleAssertion {
        role: Name,
        subject: Name,
        object: Name,
    },
    /// `A ⊑ B`
    SubClass { sub: Name, sup: Name },
    /// `A ⊑ ¬C`
    SupNot { sub: Name, disjoint: Name },
    /// `∃R ⊑ B`
    SubEx { role: Name, sup: Name },
    /// `A ⊑ ∃R`
    SupEx { sub: Name, role: Name },
    /// `R ⊑ S`
    SubRole { sub: Name, sup: Name },
    /// `Dis(R,S)`
    Dis { first: Name, second: Name },
    /// `Inv(R,S)`: `S` is the inverse of `R`.
    Inv { role: Name, inverse: Name },
    /// `Irr(R)`
    Irr { role: Name },
}

impl Axiom {
    pub fn concept(concept: impl Into<Name>, individual: impl Into<Name>) -> Self {
        Axiom::ConceptAssertion {
            concept: concept.into(),
            individual: individual.into(),
        }
    }

    pub fn role(role: impl Into<Name>, subject: impl Into<Name>, object: impl Into<Name>) -> Self {
        Axiom::RoleAssertion {
            role: role.into(),
            subject: subject.into(),
            object: object.into(),
        }
    }

    pub fn neg_concept(concept: impl Into<Name>, individual: impl Into<Name>) -> Self {
        Axiom::NegConceptAssertion {
            concept: concept.into(),
            individual: individual.into(),
        }
    }

    pub fn neg_role(
        role: impl Into<Name>,
        subject: impl Into<Name>,
        object: impl Into<Name>,
    ) -> Self {
        Axiom::NegRoleAssertion {
            role: role.into(),
            subject: subject.into(),
            object: object.into(),
        }
    }

    pub fn sub_class(sub: impl Into<Name>, sup: impl Into<Name>) -> Self {
        Axiom::SubClass {
            sub: sub.into(),
            sup: sup.into(),
        }
    }

    pub fn sup_not(sub: impl Into<Name>, disjoint: impl Into<Name>) -> Self {
        Axiom::SupNot {
            sub: sub.into(),
            disjoint: disjoint.into(),
        }
    }

    pub fn sub_ex(role: impl Into<Name>, sup: impl Into<Name>) -> Self {
        Axiom::SubEx {
            role: role.into(),
            sup: sup.into(),
        }
    }

    pub fn sup_ex(sub: impl Into<Name>, role: impl Into<Name>) -> Self {
        Axiom::SupEx {
            sub: sub.into(),
            role: role.into(),
        }
    }

    pub fn sub_role(sub: impl Into<Name>, sup: impl Into<Name>) -> Self {
        Axiom::SubRole {
            sub: sub.into(),
            sup: sup.into(),
        }
    }

    pub fn dis(first: impl Into<Name>, second: impl Into<Name>) -> Self {
        Axiom::Dis {
            first: first.into(),
            second: second.into(),
        }
    }

    pub fn inv(role: impl Into<Name>, inverse: impl Into<Name>) -> Self {
        Axiom::Inv {
            role: role.into(),
            inverse: inverse.into(),
        }
    }

    pub fn irr(role: impl Into<Name>) -> Self {
        Axiom::Irr { role: role.into() }
    }

    /// Number of free variables of the axiom's first-order translation, i.e.
    /// the length of the individual tuple an exception to it ranges over.
    pub fn arity(&self) -> usize {
        match self {
            Axiom::ConceptAssertion { .. }
            | Axiom::RoleAssertion { .. }
            | Axiom::NegConceptAssertion { .. }
            | Axiom::NegRoleAssertion { .. } => 0,
            Axiom::SubClass { .. }
            | Axiom::SupNot { .. }
            | Axiom::SubEx { .. }
            | Axiom::SupEx { .. }
            | Axiom::Irr { .. } => 1,
            Axiom::SubRole { .. } | Axiom::Dis { .. } | Axiom::Inv { .. } => 2,
        }
    }

    /// The opposite assertion; `None` for TBox axioms.
    pub fn complement(&self) -> Option<Axiom> {
        Some(match self.clone() {
            Axiom::ConceptAssertion {
                concept,
                individual,
            } => Axiom::NegConceptAssertion {
                concept,
                individual,
            },
            Axiom::NegConceptAssertion {
                concept,
                individual,
            } => Axiom::ConceptAssertion {
                concept,
                individual,
            },
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            } => Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            },
            Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } => Axiom::RoleAssertion {
                role,
                subject,
                object,
            },
            _ => return None,
        })
    }

    pub fn is_assertion(&self) -> bool {
        self.arity() == 0
    }

    /// Visits every name in the axiom together with its sort.
    pub fn for_each_name(&self, mut f: impl FnMut(NameKind, &Name)) {
        use NameKind::*;
        match self {
            Axiom::ConceptAssertion {
                concept,
                individual,
            }
            | Axiom::NegConceptAssertion {
                concept,
                individual,
            } => {
                f(Concept, concept);
                f(Individual, individual);
            }
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            }
            | Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } => {
                f(Role, role);
                f(Individual, subject);
                f(Individual, object);
            }
            Axiom::SubClass { sub, sup } => {
                f(Concept, sub);
                f(Concept, sup);
            }
            Axiom::SupNot { sub, disjoint } => {
                f(Concept, sub);
                f(Concept, disjoint);
            }
            Axiom::SubEx { role, sup } => {
                f(Role, role);
                f(Concept, sup);
            }
            Axiom::SupEx { sub, role } => {
                f(Concept, sub);
                f(Role, role);
            }
            Axiom::SubRole { sub, sup } => {
                f(Role, sub);
                f(Role, sup);
            }
            Axiom::Dis { first, second } => {
                f(Role, first);
                f(Role, second);
            }
            Axiom::Inv { role, inverse } => {
                f(Role, role);
                f(Role, inverse);
            }
            Axiom::Irr { role } => f(Role, role),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axiom::ConceptAssertion {
                concept,
                individual,
            } => write!(f, "{concept}({individual})"),
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            } => write!(f, "{role}({subject},{object})"),
            Axiom::NegConceptAssertion {
                concept,
                individual,
            } => write!(f, "-{concept}({individual})"),
            Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } => write!(f, "-{role}({subject},{object})"),
            Axiom::SubClass { sub, sup } => write!(f, "{sub} [= {sup}"),
            Axiom::SupNot { sub, disjoint } => write!(f, "{sub} [= -{disjoint}"),
            Axiom::SubEx { role, sup } => write!(f, "exists {role} [= {sup}"),
            Axiom::SupEx { sub, role } => write!(f, "{sub} [= exists {role}"),
            Axiom::SubRole { sub, sup } => write!(f, "{sub} [= {sup}"),
            Axiom::Dis { first, second } => write!(f, "Dis({first},{second})"),
            Axiom::Inv { role, inverse } => write!(f, "Inv({role},{inverse})"),
            Axiom::Irr { role } => write!(f, "Irr({role})"),
        }
    }
}

/// Identifies an axiom inside a [`Dkb`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomRef {
    Strict(usize),
    Defeasible(usize),
}

/// A declared exception `⟨α, e⟩`: defeasible axiom `α` need not hold on the
/// tuple `e` of named individuals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClashingAssumption {
    /// Index into [`Dkb::defeasible`].
    pub axiom: usize,
    pub args: Vec<Name>,
}

impl ClashingAssumption {
    pub fn new(axiom: usize, args: impl IntoIterator<Item = impl Into<Name>>) -> Self {
        ClashingAssumption {
            axiom,
            args: args.into_iter().map(Into::into).collect(),
        }
    }
}

/// A defeasible knowledge base in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dkb {
    pub vocabulary: Vocabulary,
    pub strict: Vec<Axiom>,
    pub defeasible: Vec<Axiom>,
}

impl Dkb {
    pub fn new() -> Self {
        Self::default()
    }

    fn register(&mut self, axiom: &Axiom) -> Result<(), KbError> {
        let mut result = Ok(());
        axiom.for_each_name(|kind, name| {
            if result.is_ok() {
                result = self.vocabulary.declare(kind, name);
            }
        });
        result
    }

    /// Adds a strict axiom, registering its names. Duplicates are dropped.
    pub fn add_strict(&mut self, axiom: Axiom) -> Result<(), KbError> {
        self.register(&axiom)?;
        if !self.strict.contains(&axiom) {
            self.strict.push(axiom);
        }
        Ok(())
    }

    /// Adds the body of a defeasible axiom `D(axiom)`. Duplicates are dropped.
    pub fn add_defeasible(&mut self, axiom: Axiom) -> Result<(), KbError> {
        self.register(&axiom)?;
        if !self.defeasible.contains(&axiom) {
            self.defeasible.push(axiom);
        }
        Ok(())
    }

    pub fn axiom(&self, r: AxiomRef) -> &Axiom {
        match r {
            AxiomRef::Strict(i) => &self.strict[i],
            AxiomRef::Defeasible(i) => &self.defeasible[i],
        }
    }

    /// All axioms, strict first, each tagged with its reference.
    pub fn axioms(&self) -> impl Iterator<Item = (AxiomRef, &Axiom)> {
        let strict = self
            .strict
            .iter()
            .enumerate()
            .map(|(i, a)| (AxiomRef::Strict(i), a));
        let defeasible = self
            .defeasible
            .iter()
            .enumerate()
            .map(|(i, a)| (AxiomRef::Defeasible(i), a));
        strict.chain(defeasible)
    }

    /// Right-existential axioms in aux-numbering order: the `i`-th entry owns
    /// the constant `aux_i`.
    pub fn supex_axioms(&self) -> Vec<AxiomRef> {
        self.axioms()
            .filter(|(_, a)| matches!(a, Axiom::SupEx { .. }))
            .map(|(r, _)| r)
            .collect()
    }

    /// Aux constant index owned by `r`, if it is a right-existential axiom.
    pub fn aux_index(&self, r: AxiomRef) -> Option<usize> {
        self.supex_axioms().iter().position(|x| *x == r)
    }

    /// Every tuple of named individuals of the given length, in
    /// lexicographic order over declaration order.
    pub fn individual_tuples(&self, arity: usize) -> Vec<Vec<Name>> {
        let inds: Vec<&Name> = self.vocabulary.individuals().collect();
        let mut out = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    inds.iter().map(move |i| {
                        let mut t = prefix.clone();
                        t.push((*i).clone());
                        t
                    })
                })
                .collect();
        }
        out
    }

    /// The maximal clashing-assumption set: every defeasible axiom excepted on
    /// every tuple of named individuals of matching arity.
    pub fn ca_candidates(&self) -> Vec<ClashingAssumption> {
        let mut out = Vec::new();
        for (i, axiom) in self.defeasible.iter().enumerate() {
            for args in self.individual_tuples(axiom.arity()) {
                out.push(ClashingAssumption { axiom: i, args });
            }
        }
        out
    }

    /// Number of candidates without materializing them.
    pub fn ca_candidate_count(&self) -> usize {
        let n = self.vocabulary.individual_count();
        self.defeasible
            .iter()
            .map(|a| n.pow(a.arity() as u32))
            .sum()
    }

    /// Renders `⟨α, e⟩` for diagnostics.
    pub fn describe(&self, ca: &ClashingAssumption) -> String {
        let args: Vec<&str> = ca.args.iter().map(Name::as_str).collect();
        format!("<{}, ({})>", self.defeasible[ca.axiom], args.join(","))
    }
}

impl fmt::Display for Dkb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.vocabulary.concepts() {
            writeln!(f, "concept {c}.")?;
        }
        for r in self.vocabulary.roles() {
            writeln!(f, "role {r}.")?;
        }
        for i in self.vocabulary.individuals() {
            writeln!(f, "individual {i}.")?;
        }
        for a in &self.strict {
            writeln!(f, "{a}.")?;
        }
        for a in &self.defeasible {
            writeln!(f, "D({a}).")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dept() -> Dkb {
        let mut kb = Dkb::new();
        kb.add_defeasible(Axiom::sup_ex("DeptMember", "hasCourse"))
            .unwrap();
        kb.add_strict(Axiom::sub_class("Professor", "DeptMember"))
            .unwrap();
        kb.add_strict(Axiom::concept("Professor", "alice")).unwrap();
        kb.add_strict(Axiom::concept("PhDStudent", "bob")).unwrap();
        kb
    }

    #[test]
    fn candidates_of_dept() {
        let kb = dept();
        assert_eq!(
            kb.ca_candidates(),
            vec![
                ClashingAssumption::new(0, ["alice"]),
                ClashingAssumption::new(0, ["bob"]),
            ]
        );
    }

    #[test]
    fn no_defeasible_no_candidates() {
        let mut kb = Dkb::new();
        kb.add_strict(Axiom::concept("A", "a")).unwrap();
        assert!(kb.ca_candidates().is_empty());
    }

    #[test]
    fn binary_axiom_candidates_cover_all_pairs() {
        let mut kb = Dkb::new();
        kb.vocabulary.declare_individual("a").unwrap();
        kb.vocabulary.declare_individual("b").unwrap();
        kb.add_defeasible(Axiom::dis("R", "S")).unwrap();
        let got = kb.ca_candidates();
        let want: Vec<_> = [["a", "a"], ["a", "b"], ["b", "a"], ["b", "b"]]
            .into_iter()
            .map(|t| ClashingAssumption::new(0, t))
            .collect();
        assert_eq!(got, want);
        assert_eq!(kb.ca_candidate_count(), 4);
    }

    #[test]
    fn assertion_defaults_have_one_empty_tuple() {
        let mut kb = Dkb::new();
        kb.add_defeasible(Axiom::concept("A", "a")).unwrap();
        kb.add_defeasible(Axiom::role("R", "a", "b")).unwrap();
        assert_eq!(kb.ca_candidates().len(), 2);
        assert!(kb.ca_candidates().iter().all(|c| c.args.is_empty()));
    }

    #[test]
    fn names_are_disjoint() {
        let mut kb = Dkb::new();
        kb.add_strict(Axiom::concept("A", "a")).unwrap();
        let err = kb.add_strict(Axiom::irr("A")).unwrap_err();
        assert!(matches!(err, KbError::NameClash { .. }));
        assert!(kb.vocabulary.declare_individual("has space").is_err());
        assert!(kb.vocabulary.declare_individual("").is_err());
    }

    #[test]
    fn aux_numbering_strict_first() {
        let mut kb = Dkb::new();
        kb.add_defeasible(Axiom::sup_ex("A", "R")).unwrap();
        kb.add_strict(Axiom::sup_ex("B", "S")).unwrap();
        assert_eq!(kb.aux_index(AxiomRef::Strict(0)), Some(0));
        assert_eq!(kb.aux_index(AxiomRef::Defeasible(0)), Some(1));
        assert_eq!(parse_aux_name("aux_12"), Some(12));
        assert_eq!(parse_aux_name("aux_"), None);
        assert_eq!(parse_aux_name("aux_01"), None);
    }

    #[test]
    fn duplicates_are_dropped() {
        let mut kb = Dkb::new();
        kb.add_strict(Axiom::sub_class("A", "B")).unwrap();
        kb.add_strict(Axiom::sub_class("A", "B")).unwrap();
        assert_eq!(kb.strict.len(), 1);
    }

    #[test]
    fn candidate_count_matches_formula() {
        let mut kb = Dkb::new();
        for i in ["a", "b", "c"] {
            kb.vocabulary.declare_individual(i).unwrap();
        }
        kb.add_defeasible(Axiom::sub_class("A", "B")).unwrap();
        kb.add_defeasible(Axiom::sub_role("R", "S")).unwrap();
        kb.add_defeasible(Axiom::concept("A", "a")).unwrap();
        assert_eq!(kb.ca_candidates().len(), 3 + 9 + 1);
        assert_eq!(kb.ca_candidate_count(), 13);
    }
}
