//! Satisfiability, instance entailment and justified models of a defeasible
//! knowledge base, computed through its translation.

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::asp::{
    ground_checked, AnswerSet, EngineError, GroundLiteral, GroundProgram, Lit, SearchStrategy,
    SolveOptions,
};
use crate::kb::{parse_aux_name, Axiom, ClashingAssumption, Dkb, Name, NameKind};
use crate::program::Program;
use crate::translator::{
    assertion_of, output_atom, translate_with, OvrCodec, TranslateOptions, OVR,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReasonerOptions {
    /// Limit on the number of ground `ovr` atoms the search may guess.
    pub max_ovr: usize,
    pub ovr_on_aux: bool,
    /// Accept negative instance queries.
    pub extended_queries: bool,
    pub strategy: SearchStrategy,
}

impl Default for ReasonerOptions {
    fn default() -> Self {
        ReasonerOptions {
            max_ovr: 20,
            ovr_on_aux: false,
            extended_queries: false,
            strategy: SearchStrategy::Propagating,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("`{0}` is not an instance query")]
    NotAQuery(String),
    #[error("negative query `{0}` needs extended queries enabled")]
    NegativeQuery(String),
    #[error("negative query `{0}` cannot name an auxiliary individual")]
    NegativeAuxQuery(String),
    #[error("query mentions unknown name `{0}`")]
    UnknownName(String),
}

/// Outcome of an instance query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Entailment {
    pub entailed: bool,
    /// No justified model exists, so every query is entailed.
    pub unsat: bool,
}

/// One justified model: its exceptions and the assertions it derives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JustifiedModelReport {
    pub chi: Vec<ClashingAssumption>,
    pub positives: Vec<Axiom>,
    pub negatives: Vec<Axiom>,
}

/// A knowledge base compiled and grounded once, answering any number of
/// queries.
pub struct Reasoner {
    kb: Dkb,
    options: ReasonerOptions,
    program: Program,
    ground: GroundProgram,
    codec: OvrCodec,
    answer_sets: OnceLock<Result<Vec<AnswerSet>, EngineError>>,
}

impl Reasoner {
    pub fn new(kb: Dkb, options: ReasonerOptions) -> Result<Self, ReasonerError> {
        let program = translate_with(
            &kb,
            TranslateOptions {
                ovr_on_aux: options.ovr_on_aux,
                core_only: false,
                all_negatives: options.extended_queries,
            },
        );
        let ground = ground_checked(&program, &[OVR])?;
        let codec = OvrCodec::new(&kb);
        Ok(Reasoner {
            kb,
            options,
            program,
            ground,
            codec,
            answer_sets: OnceLock::new(),
        })
    }

    pub fn kb(&self) -> &Dkb {
        &self.kb
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn ground_program(&self) -> &GroundProgram {
        &self.ground
    }

    /// Decodes an `ovr` literal into the clashing assumption it records.
    fn decode(&self, l: Lit) -> Option<ClashingAssumption> {
        if l.is_negated() || self.ground.predicate(l).as_str() != OVR {
            return None;
        }
        let args: Vec<Name> = self.ground.args(l).cloned().collect();
        self.codec.decode(&args)
    }

    fn is_named_assumption(&self, ca: &ClashingAssumption) -> bool {
        ca.args.iter().all(|a| self.kb.vocabulary.is_individual(a))
    }

    /// Consistency of the least model with every defeasible axiom overridden
    /// on every tuple of named individuals. No answer sets are enumerated.
    pub fn satisfiable(&self) -> bool {
        let mut overridden: Vec<Lit> = self
            .ground
            .rules()
            .iter()
            .flat_map(|r| r.naf.iter().copied())
            .filter(|&l| {
                self.decode(l)
                    .is_some_and(|ca| self.is_named_assumption(&ca))
            })
            .collect();
        overridden.sort();
        overridden.dedup();
        self.ground.closure_assuming(&overridden).consistent
    }

    pub fn answer_sets(&self) -> Result<&[AnswerSet], ReasonerError> {
        let result = self.answer_sets.get_or_init(|| {
            self.ground.answer_sets(SolveOptions {
                max_assumable: self.options.max_ovr,
                strategy: self.options.strategy,
            })
        });
        match result {
            Ok(sets) => Ok(sets),
            Err(e) => Err(e.clone().into()),
        }
    }

    fn check_query(&self, query: &Axiom) -> Result<(), ReasonerError> {
        let negative = matches!(
            query,
            Axiom::NegConceptAssertion { .. } | Axiom::NegRoleAssertion { .. }
        );
        if negative && !self.options.extended_queries {
            return Err(ReasonerError::NegativeQuery(query.to_string()));
        }
        let voc = &self.kb.vocabulary;
        let aux_count = self.kb.supex_axioms().len();
        let unknown = |n: &Name| Err(ReasonerError::UnknownName(n.to_string()));
        match query {
            Axiom::ConceptAssertion {
                concept,
                individual,
            }
            | Axiom::NegConceptAssertion {
                concept,
                individual,
            } => {
                if !voc.is_concept(concept) {
                    return unknown(concept);
                }
                if !voc.is_individual(individual) {
                    return unknown(individual);
                }
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
                if !voc.is_role(role) {
                    return unknown(role);
                }
                if !voc.is_individual(subject) {
                    return unknown(subject);
                }
                let aux_ok = parse_aux_name(object).is_some_and(|k| k < aux_count);
                if !voc.is_individual(object) && !aux_ok {
                    return unknown(object);
                }
                if negative && !voc.is_individual(object) {
                    return Err(ReasonerError::NegativeAuxQuery(query.to_string()));
                }
            }
            other => return Err(ReasonerError::NotAQuery(other.to_string())),
        }
        Ok(())
    }

    /// Whether `query` holds in every answer set. With no answer set at all
    /// the query is entailed and `unsat` is set.
    pub fn entails(&self, query: &Axiom) -> Result<Entailment, ReasonerError> {
        self.check_query(query)?;
        let target = output_atom(query).map_err(|e| ReasonerError::NotAQuery(e.0))?;
        let target = GroundLiteral::from_literal(&target).expect("queries are ground");
        let sets = self.answer_sets()?;
        let lit = self.ground.lookup(&target);
        Ok(Entailment {
            entailed: sets.iter().all(|s| lit.is_some_and(|l| s.contains(l))),
            unsat: sets.is_empty(),
        })
    }

    fn report_for(&self, set: &AnswerSet) -> JustifiedModelReport {
        let mut chi: Vec<ClashingAssumption> =
            set.assumed.iter().filter_map(|&l| self.decode(l)).collect();
        chi.sort();
        let mut derived: Vec<GroundLiteral> = set
            .literals
            .iter()
            .map(|&l| self.ground.literal(l))
            .filter(|g| matches!(g.predicate.as_str(), "instd" | "tripled"))
            .collect();
        derived.sort();
        let mut positives = Vec::new();
        let mut negatives = Vec::new();
        for g in derived {
            if let Some(a) = assertion_of(&g.predicate, g.negated, &g.args) {
                if mentions_helper(&a) {
                    continue;
                }
                if g.negated {
                    negatives.push(a);
                } else {
                    positives.push(a);
                }
            }
        }
        JustifiedModelReport {
            chi,
            positives,
            negatives,
        }
    }

    /// One report per answer set, in answer-set order.
    pub fn justified_models(&self) -> Result<Vec<JustifiedModelReport>, ReasonerError> {
        Ok(self
            .answer_sets()?
            .iter()
            .map(|s| self.report_for(s))
            .collect())
    }

    /// The exception sets of all justified models, sorted.
    pub fn chi_sets(&self) -> Result<Vec<Vec<ClashingAssumption>>, ReasonerError> {
        let mut out: Vec<Vec<ClashingAssumption>> = self
            .answer_sets()?
            .iter()
            .map(|s| {
                let mut chi: Vec<_> = s.assumed.iter().filter_map(|&l| self.decode(l)).collect();
                chi.sort();
                chi
            })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn report(&self) -> Result<Report, ReasonerError> {
        let models = self.justified_models()?;
        Ok(Report {
            satisfiable: self.satisfiable(),
            unsat_flag: models.is_empty(),
            models: models
                .iter()
                .map(|m| ModelJson {
                    chi: m
                        .chi
                        .iter()
                        .map(|ca| ChiJson {
                            axiom: self.kb.defeasible[ca.axiom].to_string(),
                            args: ca.args.iter().map(|a| a.to_string()).collect(),
                        })
                        .collect(),
                    positives: m.positives.iter().map(ToString::to_string).collect(),
                    negatives: m.negatives.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        })
    }
}

/// Whether the assertion uses a concept or role introduced by normalization.
fn mentions_helper(a: &Axiom) -> bool {
    let mut helper = false;
    a.for_each_name(|kind, n| {
        helper |= kind != NameKind::Individual && n.starts_with('_');
    });
    helper
}

/// Serializable summary of all justified models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub satisfiable: bool,
    pub unsat_flag: bool,
    pub models: Vec<ModelJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelJson {
    pub chi: Vec<ChiJson>,
    pub positives: Vec<String>,
    pub negatives: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiJson {
    pub axiom: String,
    pub args: Vec<String>,
}

/// Convenience wrapper compiling with default options.
pub fn satisfiable(kb: &Dkb) -> Result<bool, ReasonerError> {
    Ok(Reasoner::new(kb.clone(), ReasonerOptions::default())?.satisfiable())
}

pub fn entails(kb: &Dkb, query: &Axiom) -> Result<Entailment, ReasonerError> {
    Reasoner::new(kb.clone(), ReasonerOptions::default())?.entails(query)
}

pub fn justified_models(kb: &Dkb) -> Result<Vec<JustifiedModelReport>, ReasonerError> {
    Reasoner::new(kb.clone(), ReasonerOptions::default())?.justified_models()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load_dkb;

    const DEPT: &str = "D(DeptMember [= exists hasCourse).\nProfessor [= DeptMember.\n\
        PhDStudent [= DeptMember.\nPhDStudent [= -exists hasCourse.\n\
        Professor(alice).\nPhDStudent(bob).";

    fn reasoner(text: &str) -> Reasoner {
        Reasoner::new(load_dkb(text).unwrap(), ReasonerOptions::default()).unwrap()
    }

    #[test]
    fn dept_example() {
        let r = reasoner(DEPT);
        assert!(r.satisfiable());
        let models = r.justified_models().unwrap();
        assert_eq!(models.len(), 1);
        assert_eq!(models[0].chi, vec![ClashingAssumption::new(0, ["bob"])]);
        let yes = |q: Axiom| r.entails(&q).unwrap().entailed;
        assert!(yes(Axiom::concept("DeptMember", "alice")));
        assert!(yes(Axiom::concept("DeptMember", "bob")));
        assert!(yes(Axiom::role("hasCourse", "alice", "aux_0")));
        assert!(!yes(Axiom::role("hasCourse", "bob", "aux_0")));
    }

    #[test]
    fn ovr_atoms_stay_on_named_individuals() {
        let r = reasoner(DEPT);
        let gp = r.ground_program();
        let ovr: Vec<String> = gp
            .assumable()
            .iter()
            .map(|l| gp.display_literal(*l))
            .collect();
        assert!(ovr.contains(&"ovr(supEx,bob,\"DeptMember\",hasCourse,aux_0)".to_string()));
        assert!(ovr.iter().all(|s| !s.starts_with("ovr(supEx,aux_0")));
    }

    #[test]
    fn unsatisfiable_kb_entails_everything() {
        let r = reasoner("A(a). A [= -B. B(a).");
        assert!(!r.satisfiable());
        let e = r.entails(&Axiom::concept("A", "a")).unwrap();
        assert!(e.entailed && e.unsat);
        assert!(r.justified_models().unwrap().is_empty());
    }

    #[test]
    fn empty_kb_is_satisfiable() {
        let r = Reasoner::new(Dkb::new(), ReasonerOptions::default()).unwrap();
        assert!(r.satisfiable());
        let models = r.justified_models().unwrap();
        assert_eq!(models.len(), 1);
        assert!(models[0].chi.is_empty());
    }

    #[test]
    fn nixon_diamond_has_two_models() {
        let r = reasoner(
            "D(Quaker [= Pacifist). D(Republican [= NonPacifist).\n\
                          Pacifist [= -NonPacifist.\nQuaker(nixon). Republican(nixon).",
        );
        let chis = r.chi_sets().unwrap();
        assert_eq!(chis.len(), 2);
        assert!(chis.iter().all(|c| c.len() == 1));
        assert_ne!(chis[0], chis[1]);
    }

    #[test]
    fn negative_queries_need_the_extension() {
        let r = reasoner(DEPT);
        let q = Axiom::neg_role("hasCourse", "bob", "alice");
        assert!(matches!(
            r.entails(&q),
            Err(ReasonerError::NegativeQuery(_))
        ));
        let kb = load_dkb(DEPT).unwrap();
        let r = Reasoner::new(
            kb,
            ReasonerOptions {
                extended_queries: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.entails(&q).unwrap().entailed);
        assert!(matches!(
            r.entails(&Axiom::concept("Nobody", "bob")),
            Err(ReasonerError::UnknownName(_))
        ));
    }
}
