//! Compilation of a normal-form knowledge base into a logic program whose
//! answer sets correspond to its justified models.

mod schema;
mod text;

pub use schema::{completion_rules, schema_rules, RuleGroup, REPLACED_BY_COMPLETION};
pub use text::{export_asp_text, parse_asp_text, AspParseError};

use thiserror::Error;

use crate::kb::{aux_name, Axiom, ClashingAssumption, Dkb, Name};
use crate::program::{Literal, Program, Term};

/// Predicate carrying exception atoms; the only one under default negation.
pub const OVR: &str = "ovr";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TranslateOptions {
    /// Let overriding rules fire on auxiliary constants too. Off by default,
    /// which restricts exceptions to named individuals.
    pub ovr_on_aux: bool,
    /// Emit only the deduction, overriding and application rules, without
    /// the refutation rules. That program misses negative consequences
    /// that need reasoning by contradiction, such as `¬A(a)` for an
    /// unsatisfiable `A`.
    pub core_only: bool,
    /// Decide every negative instance over named individuals instead of
    /// only those the overriding rules need.
    pub all_negatives: bool,
}

/// Translates with default options.
pub fn translate(kb: &Dkb) -> Program {
    translate_with(kb, TranslateOptions::default())
}

pub fn translate_with(kb: &Dkb, options: TranslateOptions) -> Program {
    let mut facts = Vec::new();
    let voc = &kb.vocabulary;
    for a in voc.individuals() {
        facts.push(Literal::fact("nom", [a.clone()]));
    }
    for c in voc.concepts() {
        facts.push(Literal::fact("cls", [c.clone()]));
    }
    for r in voc.roles() {
        facts.push(Literal::fact("rol", [r.clone()]));
    }
    let mut aux = 0;
    let mut next_aux = |axiom: &Axiom| {
        matches!(axiom, Axiom::SupEx { .. }).then(|| {
            aux += 1;
            aux_name(aux - 1)
        })
    };
    for axiom in &kb.strict {
        let a = next_aux(axiom);
        facts.push(input_fact(axiom, false, a));
    }
    for axiom in &kb.defeasible {
        let a = next_aux(axiom);
        facts.push(input_fact(axiom, true, a));
    }
    let named: Vec<Name> = voc.individuals().cloned().collect();
    let mut constants = named.clone();
    constants.extend((0..aux).map(aux_name));
    let mut rules: Vec<_> = schema_rules(!options.ovr_on_aux)
        .into_iter()
        .map(|(_, r)| r)
        .collect();
    if options.core_only {
        facts.extend(supporting_facts(&constants));
    } else {
        // The successor chain covers named individuals only; fresh
        // successors are handled by the refutation rules.
        facts.extend(supporting_facts(&named));
        facts.extend(
            constants[named.len()..]
                .iter()
                .map(|c| Literal::fact("const", [c.clone()])),
        );
        facts.push(Literal::fact("flip", ["fw", "bw"]));
        facts.push(Literal::fact("flip", ["bw", "fw"]));
        rules.retain(|r| r.label.as_deref() != Some(REPLACED_BY_COMPLETION));
        rules.extend(completion_rules(!options.ovr_on_aux, options.all_negatives));
    }
    facts.sort();
    facts.dedup();
    Program {
        rules,
        facts,
        constants,
    }
}

/// The input fact for one axiom. `aux` is the constant owned by a
/// right-existential axiom.
fn input_fact(axiom: &Axiom, defeasible: bool, aux: Option<Name>) -> Literal {
    let pick = |strict: &str, default: &str| if defeasible { default } else { strict }.to_string();
    let (pred, negated, args): (String, bool, Vec<Name>) = match axiom {
        Axiom::ConceptAssertion {
            concept,
            individual,
        } => (
            pick("insta", "def_insta"),
            false,
            vec![individual.clone(), concept.clone()],
        ),
        Axiom::NegConceptAssertion {
            concept,
            individual,
        } => {
            if defeasible {
                (
                    "def_ninsta".into(),
                    false,
                    vec![individual.clone(), concept.clone()],
                )
            } else {
                (
                    "insta".into(),
                    true,
                    vec![individual.clone(), concept.clone()],
                )
            }
        }
        Axiom::RoleAssertion {
            role,
            subject,
            object,
        } => (
            pick("triplea", "def_triplea"),
            false,
            vec![subject.clone(), role.clone(), object.clone()],
        ),
        Axiom::NegRoleAssertion {
            role,
            subject,
            object,
        } => {
            let args = vec![subject.clone(), role.clone(), object.clone()];
            if defeasible {
                ("def_ntriplea".into(), false, args)
            } else {
                ("triplea".into(), true, args)
            }
        }
        Axiom::SubClass { sub, sup } => (
            pick("subClass", "def_subclass"),
            false,
            vec![sub.clone(), sup.clone()],
        ),
        Axiom::SupNot { sub, disjoint } => (
            pick("supNot", "def_supnot"),
            false,
            vec![sub.clone(), disjoint.clone()],
        ),
        Axiom::SubEx { role, sup } => (
            pick("subEx", "def_subex"),
            false,
            vec![role.clone(), sup.clone()],
        ),
        Axiom::SupEx { sub, role } => (
            pick("supEx", "def_supex"),
            false,
            vec![
                sub.clone(),
                role.clone(),
                aux.expect("right-existential axioms own an aux constant"),
            ],
        ),
        Axiom::SubRole { sub, sup } => (
            pick("subRole", "def_subr"),
            false,
            vec![sub.clone(), sup.clone()],
        ),
        Axiom::Dis { first, second } => (
            pick("dis", "def_dis"),
            false,
            vec![first.clone(), second.clone()],
        ),
        Axiom::Inv { role, inverse } => (
            pick("inv", "def_inv"),
            false,
            vec![role.clone(), inverse.clone()],
        ),
        Axiom::Irr { role } => (pick("irr", "def_irr"), false, vec![role.clone()]),
    };
    Literal::new(pred, negated, args.into_iter().map(Term::Const).collect())
}

/// `const/1` for every constant and the `first`/`next`/`last` chain over
/// them in the given order.
pub fn supporting_facts(constants: &[Name]) -> Vec<Literal> {
    let mut out: Vec<Literal> = constants
        .iter()
        .map(|c| Literal::fact("const", [c.clone()]))
        .collect();
    if let (Some(first), Some(last)) = (constants.first(), constants.last()) {
        out.push(Literal::fact("first", [first.clone()]));
        for w in constants.windows(2) {
            out.push(Literal::fact("next", [w[0].clone(), w[1].clone()]));
        }
        out.push(Literal::fact("last", [last.clone()]));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a ground assertion")]
pub struct NotAnAssertion(pub String);

/// The derived literal deciding an instance query: `instd(a,A)` for `A(a)`,
/// `tripled(a,R,b)` for `R(a,b)`, strongly negated for negative assertions.
pub fn output_atom(query: &Axiom) -> Result<Literal, NotAnAssertion> {
    let (pred, negated, args) = match query {
        Axiom::ConceptAssertion {
            concept,
            individual,
        } => ("instd", false, vec![individual.clone(), concept.clone()]),
        Axiom::NegConceptAssertion {
            concept,
            individual,
        } => ("instd", true, vec![individual.clone(), concept.clone()]),
        Axiom::RoleAssertion {
            role,
            subject,
            object,
        } => (
            "tripled",
            false,
            vec![subject.clone(), role.clone(), object.clone()],
        ),
        Axiom::NegRoleAssertion {
            role,
            subject,
            object,
        } => (
            "tripled",
            true,
            vec![subject.clone(), role.clone(), object.clone()],
        ),
        other => return Err(NotAnAssertion(other.to_string())),
    };
    Ok(Literal::new(
        pred,
        negated,
        args.into_iter().map(Term::Const).collect(),
    ))
}

/// Reads a derived `instd`/`tripled` literal back as an assertion.
pub fn assertion_of(predicate: &str, negated: bool, args: &[Name]) -> Option<Axiom> {
    match (predicate, args) {
        ("instd", [x, c]) => Some(if negated {
            Axiom::neg_concept(c.clone(), x.clone())
        } else {
            Axiom::concept(c.clone(), x.clone())
        }),
        ("tripled", [x, r, y]) => Some(if negated {
            Axiom::neg_role(r.clone(), x.clone(), y.clone())
        } else {
            Axiom::role(r.clone(), x.clone(), y.clone())
        }),
        _ => None,
    }
}

/// Arguments of the `ovr` atom recording that `axiom` is overridden on
/// `args` (empty for assertions). `aux` is the constant of a
/// right-existential axiom.
fn ovr_args(axiom: &Axiom, args: &[Name], aux: Option<&Name>) -> Vec<Name> {
    let tag = |t: &str| Name::from(t);
    let mut out = match axiom {
        Axiom::ConceptAssertion {
            concept,
            individual,
        } => vec![tag("insta"), individual.clone(), concept.clone()],
        Axiom::NegConceptAssertion {
            concept,
            individual,
        } => vec![tag("ninsta"), individual.clone(), concept.clone()],
        Axiom::RoleAssertion {
            role,
            subject,
            object,
        } => vec![
            tag("triplea"),
            subject.clone(),
            role.clone(),
            object.clone(),
        ],
        Axiom::NegRoleAssertion {
            role,
            subject,
            object,
        } => vec![
            tag("ntriplea"),
            subject.clone(),
            role.clone(),
            object.clone(),
        ],
        Axiom::SubClass { sub, sup } => {
            vec![tag("subClass"), args[0].clone(), sub.clone(), sup.clone()]
        }
        Axiom::SupNot { sub, disjoint } => {
            vec![
                tag("supNot"),
                args[0].clone(),
                sub.clone(),
                disjoint.clone(),
            ]
        }
        Axiom::SubEx { role, sup } => {
            vec![tag("subEx"), args[0].clone(), role.clone(), sup.clone()]
        }
        Axiom::SupEx { sub, role } => vec![
            tag("supEx"),
            args[0].clone(),
            sub.clone(),
            role.clone(),
            aux.expect("right-existential axioms own an aux constant")
                .clone(),
        ],
        Axiom::SubRole { sub, sup } => vec![
            tag("subRole"),
            args[0].clone(),
            args[1].clone(),
            sub.clone(),
            sup.clone(),
        ],
        Axiom::Dis { first, second } => vec![
            tag("dis"),
            args[0].clone(),
            args[1].clone(),
            first.clone(),
            second.clone(),
        ],
        Axiom::Inv { role, inverse } => vec![
            tag("inv"),
            args[0].clone(),
            args[1].clone(),
            role.clone(),
            inverse.clone(),
        ],
        Axiom::Irr { role } => vec![tag("irr"), args[0].clone(), role.clone()],
    };
    out.shrink_to_fit();
    out
}

/// Maps clashing assumptions to `ovr` atoms and back.
#[derive(Clone, Debug)]
pub struct OvrCodec {
    by_args: std::collections::HashMap<Vec<Name>, (usize, Vec<usize>)>,
    entries: Vec<(Vec<Name>, Option<Name>)>,
}

impl OvrCodec {
    pub fn new(kb: &Dkb) -> Self {
        let mut entries = Vec::new();
        let mut by_args = std::collections::HashMap::new();
        let supex = kb.supex_axioms();
        for (i, axiom) in kb.defeasible.iter().enumerate() {
            let aux = supex
                .iter()
                .position(|r| *r == crate::kb::AxiomRef::Defeasible(i))
                .map(aux_name);
            // A template with placeholder positions for the tuple arguments.
            let placeholders: Vec<Name> = (0..axiom.arity())
                .map(|k| Name::from(format!("\u{0}{k}")))
                .collect();
            let template = ovr_args(axiom, &placeholders, aux.as_ref());
            let mut key = Vec::new();
            let mut slots = Vec::new();
            for (pos, n) in template.iter().enumerate() {
                if n.starts_with('\u{0}') {
                    slots.push(pos);
                } else {
                    key.push(n.clone());
                }
            }
            by_args.insert(key, (i, slots));
            entries.push((template, aux));
        }
        OvrCodec { by_args, entries }
    }

    /// Arguments of the `ovr` atom for `ca`.
    pub fn encode(&self, kb: &Dkb, ca: &ClashingAssumption) -> Vec<Name> {
        let aux = self.entries[ca.axiom].1.as_ref();
        ovr_args(&kb.defeasible[ca.axiom], &ca.args, aux)
    }

    pub fn encode_literal(&self, kb: &Dkb, ca: &ClashingAssumption) -> Literal {
        Literal::fact(OVR, self.encode(kb, ca))
    }

    /// Decodes `ovr` arguments into the clashing assumption they record.
    pub fn decode(&self, args: &[Name]) -> Option<ClashingAssumption> {
        // The shape tag and the number of tuple positions determine which
        // argument positions are tuple slots.
        let slots: &[usize] = match args.first().map(Name::as_str)? {
            "insta" | "ninsta" | "triplea" | "ntriplea" => &[],
            "subClass" | "supNot" | "subEx" | "supEx" | "irr" => &[1],
            "subRole" | "dis" | "inv" => &[1, 2],
            _ => return None,
        };
        let key: Vec<Name> = args
            .iter()
            .enumerate()
            .filter(|(p, _)| !slots.contains(p))
            .map(|(_, n)| n.clone())
            .collect();
        let (axiom, expected) = self.by_args.get(&key)?;
        debug_assert_eq!(expected.as_slice(), slots);
        Some(ClashingAssumption {
            axiom: *axiom,
            args: slots.iter().map(|&p| args[p].clone()).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load_dkb;

    fn dept() -> Dkb {
        load_dkb(
            "D(DeptMember [= exists hasCourse).\nProfessor [= DeptMember.\n\
             PhDStudent [= DeptMember.\nPhDStudent [= -exists hasCourse.\n\
             Professor(alice).\nPhDStudent(bob).",
        )
        .unwrap()
    }

    fn has_fact(p: &Program, text: &str) -> bool {
        p.facts.iter().any(|f| f.to_string() == text)
    }

    #[test]
    fn input_facts() {
        let p = translate(&dept());
        assert!(has_fact(&p, "subClass(\"Professor\",\"DeptMember\")"));
        assert!(has_fact(&p, "def_supex(\"DeptMember\",hasCourse,aux_0)"));
        assert!(has_fact(&p, "const(aux_0)"));
        assert!(has_fact(&p, "insta(alice,\"Professor\")"));
        assert_eq!(
            p.constants,
            vec![Name::from("alice"), "bob".into(), "aux_0".into()]
        );
    }

    #[test]
    fn negative_assertion_is_strongly_negated() {
        let kb = load_dkb("-A(a).").unwrap();
        let p = translate(&kb);
        assert!(has_fact(&p, "-insta(a,\"A\")"));
    }

    #[test]
    fn empty_kb_has_schema_only() {
        let options = TranslateOptions {
            core_only: true,
            ..Default::default()
        };
        let p = translate_with(&Dkb::new(), options);
        assert!(p.facts.is_empty());
        assert!(p.constants.is_empty());
        assert_eq!(p.rules.len(), 24 + 13 + 21);
        let p = translate(&Dkb::new());
        assert!(p.constants.is_empty());
        assert!(p.facts.iter().all(|f| f.predicate.as_str() == "flip"));
    }

    #[test]
    fn supporting_chain() {
        let cs: Vec<Name> = vec!["alice".into(), "bob".into(), "aux_0".into()];
        let facts: Vec<String> = supporting_facts(&cs)
            .iter()
            .map(|f| f.to_string())
            .collect();
        assert_eq!(
            facts,
            [
                "const(alice)",
                "const(bob)",
                "const(aux_0)",
                "first(alice)",
                "next(alice,bob)",
                "next(bob,aux_0)",
                "last(aux_0)"
            ]
        );
        assert_eq!(supporting_facts(&cs[..1]).len(), 3);
        assert!(supporting_facts(&[]).is_empty());
    }

    #[test]
    fn output_atoms() {
        assert_eq!(
            output_atom(&Axiom::concept("DeptMember", "alice"))
                .unwrap()
                .to_string(),
            "instd(alice,\"DeptMember\")"
        );
        assert_eq!(
            output_atom(&Axiom::role("hasCourse", "alice", "aux_0"))
                .unwrap()
                .to_string(),
            "tripled(alice,hasCourse,aux_0)"
        );
        assert!(output_atom(&Axiom::sub_class("A", "B")).is_err());
    }

    #[test]
    fn export_round_trips() {
        let p = translate(&dept());
        let text = export_asp_text(&p);
        assert_eq!(parse_asp_text(&text).unwrap(), p);
        assert_eq!(export_asp_text(&p), text);
        let rule = p
            .rules
            .iter()
            .find(|r| r.label.as_deref() == Some("app-inst"))
            .unwrap();
        assert_eq!(
            rule.to_string(),
            "instd(X,Z) :- def_insta(X,Z), not ovr(insta,X,Z)."
        );
    }

    #[test]
    fn codec_round_trips() {
        let kb = load_dkb(
            "D(A [= B). D(A [= -B). D(exists R [= B). D(A [= exists R).\n\
             D(R [= S). D(Dis(R,S)). D(Inv(R,S)). D(Irr(R)).\n\
             D(A(a)). D(-A(b)). D(R(a,b)). D(-R(b,a)).",
        )
        .unwrap();
        let codec = OvrCodec::new(&kb);
        let cands = kb.ca_candidates();
        assert!(!cands.is_empty());
        let mut seen = std::collections::HashSet::new();
        for ca in &cands {
            let args = codec.encode(&kb, ca);
            assert!(seen.insert(args.clone()));
            assert_eq!(codec.decode(&args).as_ref(), Some(ca));
        }
        assert_eq!(
            codec
                .encode_literal(&kb, &ClashingAssumption::new(3, ["a"]))
                .to_string(),
            "ovr(supEx,a,\"A\",\"R\",aux_0)"
        );
    }
}
