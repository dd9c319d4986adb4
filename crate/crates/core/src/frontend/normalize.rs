//! Rewriting of surface axioms into the twelve normal-form shapes.
//!
//! Complex concepts are named by fresh concepts `_N0, _N1, ...` and inverse
//! roles by fresh roles `_R0, _R1, ...` tied to their base role with a strict
//! `Inv(R, _Rk)`. For a defeasible statement only the rewritten user axiom
//! stays defeasible; the naming helpers are strict.

use std::collections::HashMap;

use crate::frontend::parser::{
    BasicConcept, GeneralConcept, SurfaceAxiom, SurfaceKb, SurfaceRole, SurfaceStatement,
};
use crate::kb::{Axiom, Dkb, Name, NameKind};

struct Normalizer {
    kb: Dkb,
    next_concept: usize,
    next_role: usize,
    inverses: HashMap<Name, Name>,
    helpers: Vec<Axiom>,
}

impl Normalizer {
    fn fresh(&mut self, kind: NameKind) -> Name {
        loop {
            let name = match kind {
                NameKind::Role => {
                    self.next_role += 1;
                    Name::from(format!("_R{}", self.next_role - 1))
                }
                _ => {
                    self.next_concept += 1;
                    Name::from(format!("_N{}", self.next_concept - 1))
                }
            };
            if self.kb.vocabulary.kind_of(&name).is_none() {
                self.kb
                    .vocabulary
                    .declare(kind, &name)
                    .expect("fresh name is unused");
                return name;
            }
        }
    }

    fn role(&mut self, role: &SurfaceRole) -> Name {
        match role {
            SurfaceRole::Named(n) => n.clone(),
            SurfaceRole::Inverse(n) => {
                if let Some(inv) = self.inverses.get(n) {
                    return inv.clone();
                }
                let fresh = self.fresh(NameKind::Role);
                self.inverses.insert(n.clone(), fresh.clone());
                self.helpers.push(Axiom::inv(n.clone(), fresh.clone()));
                fresh
            }
        }
    }

    /// Name for a left-hand concept: atomic names stay, `∃R` gets a fresh
    /// `N` with the strict helper `∃R ⊑ N`.
    fn left_name(&mut self, concept: &BasicConcept) -> Name {
        match concept {
            BasicConcept::Atomic(a) => a.clone(),
            BasicConcept::Exists(r) => {
                let r = self.role(r);
                let n = self.fresh(NameKind::Concept);
                self.helpers.push(Axiom::sub_ex(r, n.clone()));
                n
            }
        }
    }

    fn statement(&mut self, axiom: &SurfaceAxiom) -> Axiom {
        match axiom {
            SurfaceAxiom::ConceptAssertion {
                concept: BasicConcept::Atomic(a),
                individual,
                negated,
            } => {
                if *negated {
                    Axiom::neg_concept(a.clone(), individual.clone())
                } else {
                    Axiom::concept(a.clone(), individual.clone())
                }
            }
            SurfaceAxiom::ConceptAssertion {
                concept: BasicConcept::Exists(r),
                individual,
                negated: false,
            } => {
                let r = self.role(r);
                let n = self.fresh(NameKind::Concept);
                self.helpers.push(Axiom::sup_ex(n.clone(), r));
                Axiom::concept(n, individual.clone())
            }
            SurfaceAxiom::ConceptAssertion {
                concept: c @ BasicConcept::Exists(_),
                individual,
                negated: true,
            } => {
                let n = self.left_name(c);
                Axiom::neg_concept(n, individual.clone())
            }
            SurfaceAxiom::RoleAssertion {
                role,
                subject,
                object,
                negated,
            } => {
                let (r, s, o) = match role {
                    SurfaceRole::Named(r) => (r.clone(), subject.clone(), object.clone()),
                    SurfaceRole::Inverse(r) => (r.clone(), object.clone(), subject.clone()),
                };
                if *negated {
                    Axiom::neg_role(r, s, o)
                } else {
                    Axiom::role(r, s, o)
                }
            }
            SurfaceAxiom::ConceptInclusion { sub, sup } => {
                // ∃R ⊑ B is already normal; any other right side needs an
                // atomic left side.
                if let (BasicConcept::Exists(r), GeneralConcept::Basic(BasicConcept::Atomic(b))) =
                    (sub, sup)
                {
                    let r = self.role(r);
                    return Axiom::sub_ex(r, b.clone());
                }
                let a = self.left_name(sub);
                match sup {
                    GeneralConcept::Basic(BasicConcept::Atomic(b)) => {
                        Axiom::sub_class(a, b.clone())
                    }
                    GeneralConcept::Basic(BasicConcept::Exists(r)) => {
                        let r = self.role(r);
                        Axiom::sup_ex(a, r)
                    }
                    GeneralConcept::Not(c) => {
                        let c = self.left_name(c);
                        Axiom::sup_not(a, c)
                    }
                }
            }
            SurfaceAxiom::RoleInclusion { sub, sup } => match (sub, sup) {
                (SurfaceRole::Inverse(r), SurfaceRole::Inverse(s)) => {
                    Axiom::sub_role(r.clone(), s.clone())
                }
                _ => {
                    let r = self.role(sub);
                    let s = self.role(sup);
                    Axiom::sub_role(r, s)
                }
            },
            SurfaceAxiom::Dis(r, s) => match (r, s) {
                (SurfaceRole::Inverse(r), SurfaceRole::Inverse(s)) => {
                    Axiom::dis(r.clone(), s.clone())
                }
                _ => {
                    let r = self.role(r);
                    let s = self.role(s);
                    Axiom::dis(r, s)
                }
            },
            SurfaceAxiom::Inv(r, s) => {
                let r = self.role(r);
                let s = self.role(s);
                Axiom::inv(r, s)
            }
            SurfaceAxiom::Irr(r) => Axiom::irr(r.name().clone()),
        }
    }
}

/// Rewrites a surface knowledge base into normal form.
pub fn normalize(surface: &SurfaceKb) -> Dkb {
    let mut n = Normalizer {
        kb: Dkb {
            vocabulary: surface.vocabulary.clone(),
            ..Dkb::default()
        },
        next_concept: 0,
        next_role: 0,
        inverses: HashMap::new(),
        helpers: Vec::new(),
    };
    for SurfaceStatement {
        axiom, defeasible, ..
    } in &surface.statements
    {
        let top = n.statement(axiom);
        for helper in std::mem::take(&mut n.helpers) {
            n.kb.add_strict(helper)
                .expect("helper names are fresh or already sorted");
        }
        let added = if *defeasible {
            n.kb.add_defeasible(top)
        } else {
            n.kb.add_strict(top)
        };
        added.expect("surface names were sorted by the parser");
    }
    n.kb
}

/// Lifts a normal-form knowledge base back to surface statements, so that
/// normalization can be applied again.
pub fn to_surface(kb: &Dkb) -> SurfaceKb {
    let lift = |a: &Axiom| -> SurfaceAxiom {
        let named = |n: &Name| SurfaceRole::Named(n.clone());
        let atomic = |n: &Name| BasicConcept::Atomic(n.clone());
        match a {
            Axiom::ConceptAssertion {
                concept,
                individual,
            } => SurfaceAxiom::ConceptAssertion {
                concept: atomic(concept),
                individual: individual.clone(),
                negated: false,
            },
            Axiom::NegConceptAssertion {
                concept,
                individual,
            } => SurfaceAxiom::ConceptAssertion {
                concept: atomic(concept),
                individual: individual.clone(),
                negated: true,
            },
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            } => SurfaceAxiom::RoleAssertion {
                role: named(role),
                subject: subject.clone(),
                object: object.clone(),
                negated: false,
            },
            Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } => SurfaceAxiom::RoleAssertion {
                role: named(role),
                subject: subject.clone(),
                object: object.clone(),
                negated: true,
            },
            Axiom::SubClass { sub, sup } => SurfaceAxiom::ConceptInclusion {
                sub: atomic(sub),
                sup: GeneralConcept::Basic(atomic(sup)),
            },
            Axiom::SupNot { sub, disjoint } => SurfaceAxiom::ConceptInclusion {
                sub: atomic(sub),
                sup: GeneralConcept::Not(atomic(disjoint)),
            },
            Axiom::SubEx { role, sup } => SurfaceAxiom::ConceptInclusion {
                sub: BasicConcept::Exists(named(role)),
                sup: GeneralConcept::Basic(atomic(sup)),
            },
            Axiom::SupEx { sub, role } => SurfaceAxiom::ConceptInclusion {
                sub: atomic(sub),
                sup: GeneralConcept::Basic(BasicConcept::Exists(named(role))),
            },
            Axiom::SubRole { sub, sup } => SurfaceAxiom::RoleInclusion {
                sub: named(sub),
                sup: named(sup),
            },
            Axiom::Dis { first, second } => SurfaceAxiom::Dis(named(first), named(second)),
            Axiom::Inv { role, inverse } => SurfaceAxiom::Inv(named(role), named(inverse)),
            Axiom::Irr { role } => SurfaceAxiom::Irr(named(role)),
        }
    };
    let statements = kb
        .strict
        .iter()
        .map(|a| (a, false))
        .chain(kb.defeasible.iter().map(|a| (a, true)))
        .map(|(a, defeasible)| SurfaceStatement {
            axiom: lift(a),
            defeasible,
            line: 0,
        })
        .collect();
    SurfaceKb {
        vocabulary: kb.vocabulary.clone(),
        statements,
    }
}
