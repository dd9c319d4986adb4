//! Direct model construction for defeasible knowledge bases, independent of
//! the translation.
//!
//! For a fixed exception set `chi` every axiom instance is a Horn clause, so
//! the knowledge base has a least Herbrand model over Skolem terms: each
//! right-existential axiom `α` and term `t` give the successor `f_α(t)`,
//! minted when first needed. Negative inclusions, disjointness,
//! irreflexivity and negative assertions are checked against that model.
//! A negated assertion is entailed exactly when adding the assertion makes
//! the model inconsistent, which is how negatives are decided here.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::kb::{parse_aux_name, Axiom, AxiomRef, ClashingAssumption, Dkb, Name};

/// Default bound on Skolem term nesting.
pub const DEFAULT_DEPTH_CAP: usize = 3;

/// Exception sets are enumerated exhaustively; this bounds the candidates.
pub const MAX_ORACLE_CANDIDATES: usize = 20;

pub type TermId = usize;

/// A justified exception set with its least model.
pub type OracleModel = (Vec<ClashingAssumption>, HerbrandModel);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Named(Name),
    /// `f_k(parent)` for the `k`-th right-existential axiom.
    Skolem {
        aux: usize,
        parent: TermId,
    },
    /// A fresh anonymous element introduced to test `∃R(t)`.
    Probe,
}

/// A ground assertion over universe terms. `Exists` only occurs in
/// clashing sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fact {
    Concept {
        concept: Name,
        term: TermId,
    },
    Role {
        role: Name,
        subject: TermId,
        object: TermId,
    },
    Exists {
        role: Name,
        term: TermId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("Skolem terms nest deeper than {cap} under exceptions {chi:?}")]
    DepthExceeded {
        cap: usize,
        chi: Vec<ClashingAssumption>,
    },
    #[error("{found} exception candidates exceed the oracle limit of {cap}")]
    TooManyCandidates { found: usize, cap: usize },
    #[error("{0} is not an exception candidate of this knowledge base")]
    NotACandidate(String),
    #[error("exception set has no consistent model")]
    Inconsistent,
    #[error("`{0}` is not a supported instance query")]
    UnsupportedQuery(String),
}

// Compact positive fact used while chasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum F {
    C { c: u32, t: u32 },
    R { r: u32, s: u32, o: u32 },
}

/// Axioms compiled to name indexes.
#[derive(Clone, Copy, Debug)]
enum Ax {
    C { c: u32, a: u32, neg: bool },
    R { r: u32, a: u32, b: u32, neg: bool },
    SubClass { sub: u32, sup: u32 },
    SupNot { sub: u32, dis: u32 },
    SubEx { role: u32, sup: u32 },
    SupEx { sub: u32, role: u32, aux: usize },
    SubRole { sub: u32, sup: u32 },
    Dis { r: u32, s: u32 },
    Inv { r: u32, s: u32 },
    Irr { r: u32 },
}

/// A knowledge base compiled against a fixed exception set.
struct Context {
    concepts: Vec<Name>,
    roles: Vec<Name>,
    individuals: Vec<Name>,
    /// Each axiom with its defeasible index, if any.
    axioms: Vec<(Ax, Option<usize>)>,
    /// Excepted tuples per defeasible axiom, as named term ids.
    excepted: Vec<HashSet<Vec<u32>>>,
    depth_cap: usize,
    chi: Vec<ClashingAssumption>,
}

fn compile(kb: &Dkb, chi: &[ClashingAssumption], depth_cap: usize) -> Context {
    let concepts: Vec<Name> = kb.vocabulary.concepts().cloned().collect();
    let roles: Vec<Name> = kb.vocabulary.roles().cloned().collect();
    let individuals: Vec<Name> = kb.vocabulary.individuals().cloned().collect();
    let ci = |n: &Name| concepts.iter().position(|x| x == n).unwrap() as u32;
    let ri = |n: &Name| roles.iter().position(|x| x == n).unwrap() as u32;
    let ii = |n: &Name| individuals.iter().position(|x| x == n).unwrap() as u32;
    let supex = kb.supex_axioms();
    let mut axioms = Vec::new();
    for (r, a) in kb.axioms() {
        let def = match r {
            AxiomRef::Defeasible(i) => Some(i),
            AxiomRef::Strict(_) => None,
        };
        let ax = match a {
            Axiom::ConceptAssertion {
                concept,
                individual,
            } => Ax::C {
                c: ci(concept),
                a: ii(individual),
                neg: false,
            },
            Axiom::NegConceptAssertion {
                concept,
                individual,
            } => Ax::C {
                c: ci(concept),
                a: ii(individual),
                neg: true,
            },
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            } => Ax::R {
                r: ri(role),
                a: ii(subject),
                b: ii(object),
                neg: false,
            },
            Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } => Ax::R {
                r: ri(role),
                a: ii(subject),
                b: ii(object),
                neg: true,
            },
            Axiom::SubClass { sub, sup } => Ax::SubClass {
                sub: ci(sub),
                sup: ci(sup),
            },
            Axiom::SupNot { sub, disjoint } => Ax::SupNot {
                sub: ci(sub),
                dis: ci(disjoint),
            },
            Axiom::SubEx { role, sup } => Ax::SubEx {
                role: ri(role),
                sup: ci(sup),
            },
            Axiom::SupEx { sub, role } => Ax::SupEx {
                sub: ci(sub),
                role: ri(role),
                aux: supex.iter().position(|x| *x == r).unwrap(),
            },
            Axiom::SubRole { sub, sup } => Ax::SubRole {
                sub: ri(sub),
                sup: ri(sup),
            },
            Axiom::Dis { first, second } => Ax::Dis {
                r: ri(first),
                s: ri(second),
            },
            Axiom::Inv { role, inverse } => Ax::Inv {
                r: ri(role),
                s: ri(inverse),
            },
            Axiom::Irr { role } => Ax::Irr { r: ri(role) },
        };
        axioms.push((ax, def));
    }
    let mut excepted = vec![HashSet::new(); kb.defeasible.len()];
    for ca in chi {
        let tuple = ca.args.iter().map(&ii).collect();
        excepted[ca.axiom].insert(tuple);
    }
    Context {
        concepts,
        roles,
        individuals,
        axioms,
        excepted,
        depth_cap,
        chi: chi.to_vec(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Inconsistent,
    DepthExceeded,
}

/// Chase state: the universe so far and the positive facts over it.
#[derive(Clone)]
struct State {
    terms: Vec<Term>,
    depth: Vec<usize>,
    skolems: HashMap<(usize, u32), u32>,
    facts: HashSet<F>,
}

impl State {
    fn new(ctx: &Context) -> Self {
        State {
            terms: ctx.individuals.iter().cloned().map(Term::Named).collect(),
            depth: vec![0; ctx.individuals.len()],
            skolems: HashMap::new(),
            facts: HashSet::new(),
        }
    }

    fn named(&self, ctx: &Context, t: u32) -> bool {
        (t as usize) < ctx.individuals.len()
    }

    fn applies(&self, ctx: &Context, def: Option<usize>, tuple: &[u32]) -> bool {
        match def {
            None => true,
            Some(i) => {
                !(tuple.iter().all(|&t| self.named(ctx, t)) && ctx.excepted[i].contains(tuple))
            }
        }
    }

    fn probe(&mut self) -> u32 {
        self.terms.push(Term::Probe);
        self.depth.push(0);
        (self.terms.len() - 1) as u32
    }

    fn skolem(&mut self, ctx: &Context, aux: usize, parent: u32) -> Result<u32, Stop> {
        if let Some(&t) = self.skolems.get(&(aux, parent)) {
            return Ok(t);
        }
        let depth = self.depth[parent as usize] + 1;
        if depth > ctx.depth_cap {
            return Err(Stop::DepthExceeded);
        }
        let t = self.terms.len() as u32;
        self.terms.push(Term::Skolem {
            aux,
            parent: parent as usize,
        });
        self.depth.push(depth);
        self.skolems.insert((aux, parent), t);
        Ok(t)
    }

    /// Adds the facts and everything they entail.
    fn extend(&mut self, ctx: &Context, facts: impl IntoIterator<Item = F>) -> Result<(), Stop> {
        let mut agenda = Vec::new();
        for f in facts {
            self.insert(ctx, f, &mut agenda)?;
        }
        while let Some(f) = agenda.pop() {
            let mut out = Vec::new();
            self.consequences(ctx, f, &mut out)?;
            for g in out {
                self.insert(ctx, g, &mut agenda)?;
            }
        }
        Ok(())
    }

    fn insert(&mut self, ctx: &Context, f: F, agenda: &mut Vec<F>) -> Result<(), Stop> {
        if !self.facts.insert(f) {
            return Ok(());
        }
        if self.violates(ctx, f) {
            return Err(Stop::Inconsistent);
        }
        agenda.push(f);
        Ok(())
    }

    /// Whether the new fact `f` breaks a negative constraint.
    fn violates(&self, ctx: &Context, f: F) -> bool {
        ctx.axioms.iter().any(|&(ax, def)| match (f, ax) {
            (
                F::C { c, t },
                Ax::C {
                    c: c2,
                    a,
                    neg: true,
                },
            ) => c == c2 && t == a && self.applies(ctx, def, &[]),
            (F::C { c, t }, Ax::SupNot { sub, dis }) => {
                let other = if sub == c {
                    dis
                } else if dis == c {
                    sub
                } else {
                    return false;
                };
                self.facts.contains(&F::C { c: other, t }) && self.applies(ctx, def, &[t])
            }
            (
                F::R { r, s, o },
                Ax::R {
                    r: r2,
                    a,
                    b,
                    neg: true,
                },
            ) => r == r2 && s == a && o == b && self.applies(ctx, def, &[]),
            (F::R { r, s, o }, Ax::Dis { r: a, s: b }) => {
                let other = if a == r {
                    b
                } else if b == r {
                    a
                } else {
                    return false;
                };
                self.facts.contains(&F::R { r: other, s, o }) && self.applies(ctx, def, &[s, o])
            }
            (F::R { r, s, o }, Ax::Irr { r: a }) => {
                a == r && s == o && self.applies(ctx, def, &[s])
            }
            _ => false,
        })
    }

    fn consequences(&mut self, ctx: &Context, f: F, out: &mut Vec<F>) -> Result<(), Stop> {
        for &(ax, def) in &ctx.axioms {
            match (f, ax) {
                (F::C { c, t }, Ax::SubClass { sub, sup }) if sub == c => {
                    if self.applies(ctx, def, &[t]) {
                        out.push(F::C { c: sup, t });
                    }
                }
                (F::C { c, t }, Ax::SupEx { sub, role, aux }) if sub == c => {
                    if self.applies(ctx, def, &[t]) {
                        let o = self.skolem(ctx, aux, t)?;
                        out.push(F::R { r: role, s: t, o });
                    }
                }
                (F::R { r, s, .. }, Ax::SubEx { role, sup }) if role == r => {
                    if self.applies(ctx, def, &[s]) {
                        out.push(F::C { c: sup, t: s });
                    }
                }
                (F::R { r, s, o }, Ax::SubRole { sub, sup }) if sub == r => {
                    if self.applies(ctx, def, &[s, o]) {
                        out.push(F::R { r: sup, s, o });
                    }
                }
                // Inv(a,b) at (x,y): a(x,y) iff b(y,x).
                (F::R { r, s, o }, Ax::Inv { r: a, s: b }) => {
                    if a == r && self.applies(ctx, def, &[s, o]) {
                        out.push(F::R { r: b, s: o, o: s });
                    }
                    if b == r && self.applies(ctx, def, &[o, s]) {
                        out.push(F::R { r: a, s: o, o: s });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn initial(&self, ctx: &Context) -> Vec<F> {
        ctx.axioms
            .iter()
            .filter(|(_, def)| self.applies(ctx, *def, &[]))
            .filter_map(|&(ax, _)| match ax {
                Ax::C { c, a, neg: false } => Some(F::C { c, t: a }),
                Ax::R {
                    r,
                    a,
                    b,
                    neg: false,
                } => Some(F::R { r, s: a, o: b }),
                _ => None,
            })
            .collect()
    }
}

/// Least model of a knowledge base under a fixed exception set.
#[derive(Clone)]
pub struct HerbrandModel {
    pub terms: Vec<Term>,
    pub positives: BTreeSet<Fact>,
    ctx: Arc<Context>,
    state: State,
}

impl fmt::Debug for HerbrandModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HerbrandModel")
            .field("chi", &self.ctx.chi)
            .field("positives", &self.positives.len())
            .finish()
    }
}

#[derive(Clone, Debug)]
pub enum ChaseOutcome {
    Model(HerbrandModel),
    Inconsistent,
    DepthExceeded,
}

impl ChaseOutcome {
    pub fn model(&self) -> Option<&HerbrandModel> {
        match self {
            ChaseOutcome::Model(m) => Some(m),
            _ => None,
        }
    }
}

impl HerbrandModel {
    fn depth_error(&self) -> OracleError {
        OracleError::DepthExceeded {
            cap: self.ctx.depth_cap,
            chi: self.ctx.chi.clone(),
        }
    }

    pub fn term_name(&self, t: TermId) -> String {
        match &self.terms[t] {
            Term::Named(n) => n.to_string(),
            Term::Skolem { aux, parent } => format!("f{aux}({})", self.term_name(*parent)),
            Term::Probe => "_p".to_string(),
        }
    }

    pub fn named(&self, n: &str) -> Option<TermId> {
        self.ctx.individuals.iter().position(|x| x.as_str() == n)
    }

    /// Skolem terms minted for the `k`-th right-existential axiom.
    pub fn skolems_of(&self, k: usize) -> impl Iterator<Item = TermId> + '_ {
        self.terms
            .iter()
            .enumerate()
            .filter(move |(_, t)| matches!(t, Term::Skolem { aux, .. } if *aux == k))
            .map(|(i, _)| i)
    }

    fn concept_id(&self, n: &str) -> Option<u32> {
        self.ctx
            .concepts
            .iter()
            .position(|x| x.as_str() == n)
            .map(|i| i as u32)
    }

    fn role_id(&self, n: &str) -> Option<u32> {
        self.ctx
            .roles
            .iter()
            .position(|x| x.as_str() == n)
            .map(|i| i as u32)
    }

    fn has(&self, f: F) -> bool {
        self.state.facts.contains(&f)
    }

    /// Whether adding `facts` (after `setup` extends the universe) makes the
    /// model inconsistent.
    fn refutes(&self, build: impl FnOnce(&mut State) -> Vec<F>) -> Result<bool, OracleError> {
        let mut s = self.state.clone();
        let facts = build(&mut s);
        match s.extend(&self.ctx, facts) {
            Ok(()) => Ok(false),
            Err(Stop::Inconsistent) => Ok(true),
            Err(Stop::DepthExceeded) => Err(self.depth_error()),
        }
    }

    fn not_concept(&self, c: u32, t: u32) -> Result<bool, OracleError> {
        if self.has(F::C { c, t }) {
            return Ok(false);
        }
        self.refutes(|_| vec![F::C { c, t }])
    }

    fn not_role(&self, r: u32, s: u32, o: u32) -> Result<bool, OracleError> {
        if self.has(F::R { r, s, o }) {
            return Ok(false);
        }
        self.refutes(|_| vec![F::R { r, s, o }])
    }

    /// `¬∃r(t)`: no named individual and no fresh element can be an
    /// `r`-successor of `t`.
    fn not_exists(&self, r: u32, t: u32) -> Result<bool, OracleError> {
        for o in 0..self.ctx.individuals.len() as u32 {
            if !self.not_role(r, t, o)? {
                return Ok(false);
            }
        }
        self.refutes(|s| {
            let p = s.probe();
            vec![F::R { r, s: t, o: p }]
        })
    }

    /// Whether a ground instance query holds. An `aux_k` role object stands
    /// for the Skolem successors of axiom `k`: the query holds if one of them
    /// is a successor.
    pub fn holds(&self, query: &Axiom) -> Result<bool, OracleError> {
        let unsupported = || OracleError::UnsupportedQuery(query.to_string());
        let ind = |n: &Name| self.named(n).map(|t| t as u32);
        match query {
            Axiom::ConceptAssertion {
                concept,
                individual,
            } => {
                let t = ind(individual).ok_or_else(unsupported)?;
                Ok(self
                    .concept_id(concept)
                    .is_some_and(|c| self.has(F::C { c, t })))
            }
            Axiom::NegConceptAssertion {
                concept,
                individual,
            } => {
                let t = ind(individual).ok_or_else(unsupported)?;
                match self.concept_id(concept) {
                    Some(c) => self.not_concept(c, t),
                    None => Ok(false),
                }
            }
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            } => {
                let s = ind(subject).ok_or_else(unsupported)?;
                let Some(r) = self.role_id(role) else {
                    return Ok(false);
                };
                if let Some(o) = ind(object) {
                    return Ok(self.has(F::R { r, s, o }));
                }
                let k = parse_aux_name(object).ok_or_else(unsupported)?;
                Ok(self
                    .skolems_of(k)
                    .any(|o| self.has(F::R { r, s, o: o as u32 })))
            }
            Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } => {
                let s = ind(subject).ok_or_else(unsupported)?;
                let o = ind(object).ok_or_else(unsupported)?;
                match self.role_id(role) {
                    Some(r) => self.not_role(r, s, o),
                    None => Ok(false),
                }
            }
            _ => Err(unsupported()),
        }
    }

    /// Every negated assertion over named individuals entailed under this
    /// exception set.
    pub fn negatives(&self) -> Result<BTreeSet<Fact>, OracleError> {
        let n = self.ctx.individuals.len() as u32;
        let mut out = BTreeSet::new();
        for c in 0..self.ctx.concepts.len() as u32 {
            for t in 0..n {
                if self.not_concept(c, t)? {
                    out.insert(self.fact(F::C { c, t }));
                }
            }
        }
        for r in 0..self.ctx.roles.len() as u32 {
            for s in 0..n {
                for o in 0..n {
                    if self.not_role(r, s, o)? {
                        out.insert(self.fact(F::R { r, s, o }));
                    }
                }
            }
        }
        Ok(out)
    }

    fn fact(&self, f: F) -> Fact {
        match f {
            F::C { c, t } => Fact::Concept {
                concept: self.ctx.concepts[c as usize].clone(),
                term: t as usize,
            },
            F::R { r, s, o } => Fact::Role {
                role: self.ctx.roles[r as usize].clone(),
                subject: s as usize,
                object: o as usize,
            },
        }
    }

    pub fn render(&self, f: &Fact, negated: bool) -> String {
        let sign = if negated { "-" } else { "" };
        match f {
            Fact::Concept { concept, term } => {
                format!("{sign}{concept}({})", self.term_name(*term))
            }
            Fact::Role {
                role,
                subject,
                object,
            } => format!(
                "{sign}{role}({},{})",
                self.term_name(*subject),
                self.term_name(*object)
            ),
            Fact::Exists { role, term } => {
                format!("{sign}exists {role}({})", self.term_name(*term))
            }
        }
    }
}

impl fmt::Display for HerbrandModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.positives {
            writeln!(f, "{}", self.render(p, false))?;
        }
        Ok(())
    }
}

/// Least model of `kb` with the defeasible axioms excepted on `chi`.
pub fn chase(kb: &Dkb, chi: &[ClashingAssumption], depth_cap: usize) -> ChaseOutcome {
    chase_in(Arc::new(compile(kb, chi, depth_cap)))
}

fn chase_in(ctx: Arc<Context>) -> ChaseOutcome {
    let mut state = State::new(&ctx);
    let initial = state.initial(&ctx);
    match state.extend(&ctx, initial) {
        Err(Stop::Inconsistent) => ChaseOutcome::Inconsistent,
        Err(Stop::DepthExceeded) => ChaseOutcome::DepthExceeded,
        Ok(()) => {
            let mut m = HerbrandModel {
                terms: state.terms.clone(),
                positives: BTreeSet::new(),
                ctx,
                state,
            };
            m.positives = m.state.facts.iter().map(|&f| m.fact(f)).collect();
            ChaseOutcome::Model(m)
        }
    }
}

/// A set of assertions inconsistent with one instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClashingSet {
    pub positives: Vec<Fact>,
    pub negatives: Vec<Fact>,
}

impl ClashingSet {
    pub fn render(&self, m: &HerbrandModel) -> Vec<String> {
        self.positives
            .iter()
            .map(|f| m.render(f, false))
            .chain(self.negatives.iter().map(|f| m.render(f, true)))
            .collect()
    }
}

/// Looks for a clashing set for `ca` entailed under the model's exceptions.
pub fn clashing_set(
    kb: &Dkb,
    model: &HerbrandModel,
    ca: &ClashingAssumption,
) -> Result<Option<ClashingSet>, OracleError> {
    let Some(axiom) = kb.defeasible.get(ca.axiom) else {
        return Ok(None);
    };
    let arg = |i: usize| model.named(&ca.args[i]).unwrap() as u32;
    let name = |n: &Name| model.named(n).unwrap() as u32;
    let c = |n: &Name| model.concept_id(n).unwrap();
    let r = |n: &Name| model.role_id(n).unwrap();
    let fc = |cn: u32, t: u32| model.fact(F::C { c: cn, t });
    let fr = |rn: u32, s: u32, o: u32| model.fact(F::R { r: rn, s, o });
    let set = |p: Vec<Fact>, n: Vec<Fact>| {
        Some(ClashingSet {
            positives: p,
            negatives: n,
        })
    };
    Ok(match axiom {
        Axiom::ConceptAssertion {
            concept,
            individual,
        } => {
            let (cn, t) = (c(concept), name(individual));
            if model.not_concept(cn, t)? {
                set(vec![], vec![fc(cn, t)])
            } else {
                None
            }
        }
        Axiom::NegConceptAssertion {
            concept,
            individual,
        } => {
            let (cn, t) = (c(concept), name(individual));
            if model.has(F::C { c: cn, t }) {
                set(vec![fc(cn, t)], vec![])
            } else {
                None
            }
        }
        Axiom::RoleAssertion {
            role,
            subject,
            object,
        } => {
            let (rn, s, o) = (r(role), name(subject), name(object));
            if model.not_role(rn, s, o)? {
                set(vec![], vec![fr(rn, s, o)])
            } else {
                None
            }
        }
        Axiom::NegRoleAssertion {
            role,
            subject,
            object,
        } => {
            let (rn, s, o) = (r(role), name(subject), name(object));
            if model.has(F::R { r: rn, s, o }) {
                set(vec![fr(rn, s, o)], vec![])
            } else {
                None
            }
        }
        Axiom::SubClass { sub, sup } => {
            let e = arg(0);
            if model.has(F::C { c: c(sub), t: e }) && model.not_concept(c(sup), e)? {
                set(vec![fc(c(sub), e)], vec![fc(c(sup), e)])
            } else {
                None
            }
        }
        Axiom::SupNot { sub, disjoint } => {
            let e = arg(0);
            if model.has(F::C { c: c(sub), t: e })
                && model.has(F::C {
                    c: c(disjoint),
                    t: e,
                })
            {
                set(vec![fc(c(sub), e), fc(c(disjoint), e)], vec![])
            } else {
                None
            }
        }
        Axiom::SubEx { role, sup } => {
            let e = arg(0);
            let rn = r(role);
            let has_succ =
                (0..model.terms.len() as u32).any(|o| model.has(F::R { r: rn, s: e, o }));
            if has_succ && model.not_concept(c(sup), e)? {
                let exists = Fact::Exists {
                    role: role.clone(),
                    term: e as usize,
                };
                set(vec![exists], vec![fc(c(sup), e)])
            } else {
                None
            }
        }
        Axiom::SupEx { sub, role } => {
            let e = arg(0);
            if model.has(F::C { c: c(sub), t: e }) && model.not_exists(r(role), e)? {
                let exists = Fact::Exists {
                    role: role.clone(),
                    term: e as usize,
                };
                set(vec![fc(c(sub), e)], vec![exists])
            } else {
                None
            }
        }
        Axiom::SubRole { sub, sup } => {
            let (e, f) = (arg(0), arg(1));
            if model.has(F::R {
                r: r(sub),
                s: e,
                o: f,
            }) && model.not_role(r(sup), e, f)?
            {
                set(vec![fr(r(sub), e, f)], vec![fr(r(sup), e, f)])
            } else {
                None
            }
        }
        Axiom::Dis { first, second } => {
            let (e, f) = (arg(0), arg(1));
            if model.has(F::R {
                r: r(first),
                s: e,
                o: f,
            }) && model.has(F::R {
                r: r(second),
                s: e,
                o: f,
            }) {
                set(vec![fr(r(first), e, f), fr(r(second), e, f)], vec![])
            } else {
                None
            }
        }
        Axiom::Inv { role, inverse } => {
            let (e, f) = (arg(0), arg(1));
            let (a, b) = (r(role), r(inverse));
            if model.has(F::R { r: a, s: e, o: f }) && model.not_role(b, f, e)? {
                set(vec![fr(a, e, f)], vec![fr(b, f, e)])
            } else if model.has(F::R { r: b, s: f, o: e }) && model.not_role(a, e, f)? {
                set(vec![fr(b, f, e)], vec![fr(a, e, f)])
            } else {
                None
            }
        }
        Axiom::Irr { role } => {
            let e = arg(0);
            if model.has(F::R {
                r: r(role),
                s: e,
                o: e,
            }) {
                set(vec![fr(r(role), e, e)], vec![])
            } else {
                None
            }
        }
    })
}

/// Whether `ca` is justified under `chi`, with the clashing set that
/// justifies it.
pub fn check_justified(
    kb: &Dkb,
    chi: &[ClashingAssumption],
    ca: &ClashingAssumption,
    depth_cap: usize,
) -> Result<Option<ClashingSet>, OracleError> {
    if !chi.contains(ca) || !kb.ca_candidates().contains(ca) {
        let shown = match kb.defeasible.get(ca.axiom) {
            Some(_) => kb.describe(ca),
            None => format!("{ca:?}"),
        };
        return Err(OracleError::NotACandidate(shown));
    }
    match chase(kb, chi, depth_cap) {
        ChaseOutcome::Model(m) => clashing_set(kb, &m, ca),
        ChaseOutcome::Inconsistent => Err(OracleError::Inconsistent),
        ChaseOutcome::DepthExceeded => Err(OracleError::DepthExceeded {
            cap: depth_cap,
            chi: chi.to_vec(),
        }),
    }
}

/// Every exception set over named individuals whose model is consistent
/// and justifies each of its members, with that model.
pub fn oracle_models(kb: &Dkb, depth_cap: usize) -> Result<Vec<OracleModel>, OracleError> {
    let candidates = kb.ca_candidates();
    if candidates.len() > MAX_ORACLE_CANDIDATES {
        return Err(OracleError::TooManyCandidates {
            found: candidates.len(),
            cap: MAX_ORACLE_CANDIDATES,
        });
    }
    let results: Vec<Result<Option<OracleModel>, OracleError>> = (0u64..1 << candidates.len())
        .into_par_iter()
        .map(|bits| {
            let mut chi: Vec<ClashingAssumption> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, ca)| ca.clone())
                .collect();
            chi.sort();
            match chase(kb, &chi, depth_cap) {
                ChaseOutcome::Inconsistent => Ok(None),
                ChaseOutcome::DepthExceeded => Err(OracleError::DepthExceeded {
                    cap: depth_cap,
                    chi,
                }),
                ChaseOutcome::Model(m) => {
                    for ca in &chi {
                        if clashing_set(kb, &m, ca)?.is_none() {
                            return Ok(None);
                        }
                    }
                    Ok(Some((chi, m)))
                }
            }
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(pair) = r? {
            out.push(pair);
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Whether `query` holds in every justified model; true when there is none.
pub fn oracle_answer(kb: &Dkb, query: &Axiom, depth_cap: usize) -> Result<bool, OracleError> {
    for (_, m) in oracle_models(kb, depth_cap)? {
        if !m.holds(query)? {
            return Ok(false);
        }
    }
    Ok(true)
}
