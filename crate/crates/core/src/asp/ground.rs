//! Relevance-driven grounding.
//!
//! Only rule instances whose positive body can be derived are produced:
//! literals are derived bottom-up while ignoring default negation, which
//! over-approximates every answer set. Each derived literal is processed
//! once; its rule instances are found by joining the remaining body
//! literals against everything derived so far.

use rustc_hash::{FxHashMap as HashMap, FxHashSet as HashSet};

use super::{EngineError, GroundProgram, GroundRule, Lit};
use crate::program::{Literal, Program, Rule, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arg {
    Var(usize),
    Const(u32),
}

#[derive(Clone, Debug)]
struct CLit {
    pred: u32,
    neg: bool,
    args: Vec<Arg>,
}

#[derive(Clone, Debug)]
struct CRule {
    head: CLit,
    pos: Vec<CLit>,
    naf: Vec<CLit>,
    vars: usize,
}

/// Derived literals with per-predicate and per-argument indexes.
#[derive(Default)]
struct Store {
    known: HashSet<Lit>,
    by_pred: HashMap<(u32, bool), Vec<Lit>>,
    by_arg: HashMap<(u32, bool, usize, u32), Vec<Lit>>,
}

impl Store {
    fn insert(&mut self, gp: &GroundProgram, l: Lit) -> bool {
        if !self.known.insert(l) {
            return false;
        }
        let (pred, args) = &gp.atoms[l.atom() as usize];
        let neg = l.is_negated();
        self.by_pred.entry((*pred, neg)).or_default().push(l);
        for (i, &a) in args.iter().enumerate() {
            self.by_arg.entry((*pred, neg, i, a)).or_default().push(l);
        }
        true
    }

    fn candidates(&self, lit: &CLit, binding: &[Option<u32>]) -> &[Lit] {
        let mut best: Option<&[Lit]> = None;
        for (i, a) in lit.args.iter().enumerate() {
            let value = match a {
                Arg::Const(c) => Some(*c),
                Arg::Var(v) => binding[*v],
            };
            if let Some(value) = value {
                let list = self
                    .by_arg
                    .get(&(lit.pred, lit.neg, i, value))
                    .map_or(&[][..], Vec::as_slice);
                if best.is_none_or(|b| list.len() < b.len()) {
                    best = Some(list);
                }
            }
        }
        best.unwrap_or_else(|| {
            self.by_pred
                .get(&(lit.pred, lit.neg))
                .map_or(&[][..], Vec::as_slice)
        })
    }
}

/// Extends `binding` so that `lit` matches the atom `args`; returns the
/// variables newly bound, or `None` on mismatch.
fn unify(lit: &CLit, args: &[u32], binding: &mut [Option<u32>]) -> Option<Vec<usize>> {
    let mut bound = Vec::new();
    for (a, &value) in lit.args.iter().zip(args) {
        match a {
            Arg::Const(c) if *c == value => {}
            Arg::Const(_) => {
                for v in bound {
                    binding[v] = None;
                }
                return None;
            }
            Arg::Var(v) => match binding[*v] {
                Some(b) if b == value => {}
                Some(_) => {
                    for v in bound {
                        binding[v] = None;
                    }
                    return None;
                }
                None => {
                    binding[*v] = Some(value);
                    bound.push(*v);
                }
            },
        }
    }
    Some(bound)
}

struct Grounder {
    gp: GroundProgram,
    rules: Vec<CRule>,
    store: Store,
    facts: HashSet<Lit>,
}

impl Grounder {
    fn compile_lit(&mut self, l: &Literal, vars: &mut Vec<crate::kb::Name>) -> CLit {
        let pred = self.gp.symbol(&l.predicate);
        let args = l
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Arg::Const(self.gp.symbol(c)),
                Term::Var(v) => Arg::Var(match vars.iter().position(|x| x == v) {
                    Some(i) => i,
                    None => {
                        vars.push(v.clone());
                        vars.len() - 1
                    }
                }),
            })
            .collect();
        CLit {
            pred,
            neg: l.negated,
            args,
        }
    }

    fn compile(&mut self, r: &Rule) -> CRule {
        let mut vars = Vec::new();
        let pos = r
            .body_pos
            .iter()
            .map(|l| self.compile_lit(l, &mut vars))
            .collect();
        let head = self.compile_lit(&r.head, &mut vars);
        let naf = r
            .body_naf
            .iter()
            .map(|l| self.compile_lit(l, &mut vars))
            .collect();
        CRule {
            head,
            pos,
            naf,
            vars: vars.len(),
        }
    }

    fn instantiate(&mut self, l: &CLit, binding: &[u32]) -> Lit {
        let args: Vec<u32> = l
            .args
            .iter()
            .map(|a| match a {
                Arg::Const(c) => *c,
                Arg::Var(v) => binding[*v],
            })
            .collect();
        let atom = self.gp.atom(l.pred, &args);
        Lit(atom * 2 + l.neg as u32)
    }

    /// Enumerates complete bindings of `rule` extending `binding`, using the
    /// body literals in `remaining`.
    fn join(
        &self,
        rule: &CRule,
        remaining: &mut Vec<usize>,
        binding: &mut Vec<Option<u32>>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining.is_empty() {
            out.push(binding.iter().map(|b| b.expect("safe rule")).collect());
            return;
        }
        // Most selective literal first.
        let (slot, _) = remaining
            .iter()
            .enumerate()
            .map(|(k, &i)| (k, self.store.candidates(&rule.pos[i], binding).len()))
            .min_by_key(|&(_, n)| n)
            .unwrap();
        let i = remaining.swap_remove(slot);
        let lit = &rule.pos[i];
        for &cand in self.store.candidates(lit, binding) {
            let args = &self.gp.atoms[cand.atom() as usize].1;
            if let Some(bound) = unify(lit, args, binding) {
                self.join(rule, remaining, binding, out);
                for v in bound {
                    binding[v] = None;
                }
            }
        }
        remaining.push(i);
        let last = remaining.len() - 1;
        remaining.swap(slot, last);
    }
}

/// Predicates, with their sign, that facts or rules could produce, ignoring
/// arguments. Rules needing any other predicate never fire.
fn derivable_predicates(p: &Program) -> HashSet<(&str, bool)> {
    let mut live: HashSet<(&str, bool)> = p
        .facts
        .iter()
        .map(|f| (f.predicate.as_str(), f.negated))
        .collect();
    loop {
        let before = live.len();
        for r in &p.rules {
            if r.body_pos
                .iter()
                .all(|l| live.contains(&(l.predicate.as_str(), l.negated)))
            {
                live.insert((r.head.predicate.as_str(), r.head.negated));
            }
        }
        if live.len() == before {
            return live;
        }
    }
}

/// Grounds `p` over the literals derivable from its facts.
pub fn ground(p: &Program) -> Result<GroundProgram, EngineError> {
    for r in &p.rules {
        if !r.is_safe() {
            return Err(EngineError::UnsafeRule(r.to_string()));
        }
    }
    let mut g = Grounder {
        gp: GroundProgram::default(),
        rules: Vec::new(),
        store: Store::default(),
        facts: HashSet::default(),
    };
    for c in &p.constants {
        g.gp.symbol(c);
    }
    let live = derivable_predicates(p);
    let compiled: Vec<CRule> = p
        .rules
        .iter()
        .filter(|r| {
            r.body_pos
                .iter()
                .all(|l| live.contains(&(l.predicate.as_str(), l.negated)))
        })
        .map(|r| g.compile(r))
        .collect();
    g.rules = compiled;

    let mut out_rules: Vec<GroundRule> = Vec::new();
    let mut seen: HashSet<GroundRule> = HashSet::default();
    let mut agenda: Vec<Lit> = Vec::new();

    for f in &p.facts {
        let gl = super::GroundLiteral::from_literal(f)
            .ok_or_else(|| EngineError::UnsafeRule(format!("{f}.")))?;
        let l = g.gp.intern(&gl);
        g.facts.insert(l);
    }
    // Ground rules without positive body are instantiated once up front;
    // NAF-free ones among them are facts as well.
    let mut pending: Vec<(Lit, Vec<Lit>)> = Vec::new();
    for ri in 0..g.rules.len() {
        if g.rules[ri].pos.is_empty() {
            let rule = g.rules[ri].clone();
            let head = g.instantiate(&rule.head, &[]);
            let naf: Vec<Lit> = rule.naf.iter().map(|l| g.instantiate(l, &[])).collect();
            if naf.is_empty() {
                g.facts.insert(head);
            } else {
                pending.push((head, naf));
            }
        }
    }
    let mut facts: Vec<Lit> = g.facts.iter().copied().collect();
    facts.sort();
    for &f in &facts {
        out_rules.push(GroundRule {
            head: f,
            pos: Vec::new(),
            naf: Vec::new(),
        });
        if g.store.insert(&g.gp, f) {
            agenda.push(f);
        }
    }
    for (head, naf) in pending {
        if g.facts.contains(&head) || naf.iter().any(|l| g.facts.contains(l)) {
            continue;
        }
        let rule = GroundRule {
            head,
            pos: Vec::new(),
            naf,
        };
        if seen.insert(rule.clone()) {
            out_rules.push(rule);
        }
        if g.store.insert(&g.gp, head) {
            agenda.push(head);
        }
    }

    let mut triggers: HashMap<(u32, bool), Vec<(usize, usize)>> = HashMap::default();
    for (ri, r) in g.rules.iter().enumerate() {
        for (bi, l) in r.pos.iter().enumerate() {
            triggers.entry((l.pred, l.neg)).or_default().push((ri, bi));
        }
    }

    let mut cursor = 0;
    while cursor < agenda.len() {
        let lit = agenda[cursor];
        cursor += 1;
        let key = (g.gp.atoms[lit.atom() as usize].0, lit.is_negated());
        let Some(trigs) = triggers.get(&key) else {
            continue;
        };
        let mut found: Vec<(usize, Vec<Vec<u32>>)> = Vec::new();
        for &(ri, bi) in trigs {
            let rule = &g.rules[ri];
            let mut binding = vec![None; rule.vars];
            let args = &g.gp.atoms[lit.atom() as usize].1;
            if unify(&rule.pos[bi], args, &mut binding).is_none() {
                continue;
            }
            let mut remaining: Vec<usize> = (0..rule.pos.len()).filter(|&k| k != bi).collect();
            let mut out = Vec::new();
            g.join(rule, &mut remaining, &mut binding, &mut out);
            if !out.is_empty() {
                found.push((ri, out));
            }
        }
        let rules = std::mem::take(&mut g.rules);
        for (ri, bindings) in found {
            let rule = &rules[ri];
            for b in bindings {
                let head = g.instantiate(&rule.head, &b);
                if g.facts.contains(&head) {
                    continue;
                }
                let mut pos: Vec<Lit> = rule.pos.iter().map(|l| g.instantiate(l, &b)).collect();
                pos.retain(|l| !g.facts.contains(l));
                pos.sort();
                pos.dedup();
                let mut naf: Vec<Lit> = rule.naf.iter().map(|l| g.instantiate(l, &b)).collect();
                naf.sort();
                naf.dedup();
                if naf.iter().any(|l| g.facts.contains(l)) {
                    continue;
                }
                let gr = GroundRule { head, pos, naf };
                if seen.insert(gr.clone()) {
                    out_rules.push(gr);
                }
                if g.store.insert(&g.gp, head) {
                    agenda.push(head);
                }
            }
        }
        g.rules = rules;
    }

    let mut gp = g.gp;
    gp.rules = out_rules;
    gp.index();
    Ok(gp)
}

/// Grounds `p` after checking that default negation only occurs on the
/// given predicates.
pub fn ground_checked(p: &Program, naf_predicates: &[&str]) -> Result<GroundProgram, EngineError> {
    for r in &p.rules {
        for l in &r.body_naf {
            if !naf_predicates.contains(&l.predicate.as_str()) {
                return Err(EngineError::NafPredicate {
                    predicate: l.predicate.to_string(),
                    rule: r.to_string(),
                    allowed: naf_predicates.join(", "),
                });
            }
        }
    }
    ground(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::translator::parse_asp_text;

    fn g(text: &str) -> GroundProgram {
        ground(&parse_asp_text(text).unwrap()).unwrap()
    }

    #[test]
    fn one_instance_per_subject() {
        let gp = g(
            "subClass(a_,b_). instd(c1,a_). instd(c2,a_). instd(c3,a_).\n\
                    instd(X,Z) :- subClass(Y,Z), instd(X,Y).",
        );
        let derived = gp
            .rules()
            .iter()
            .filter(|r| {
                gp.display_literal(r.head).starts_with("instd(")
                    && gp.display_literal(r.head).ends_with(",b_)")
            })
            .count();
        assert_eq!(derived, 3);
    }

    #[test]
    fn facts_are_dropped_from_bodies() {
        let gp = g("p(a). q(X) :- p(X). r(X) :- q(X), p(X).");
        for r in gp.rules() {
            for l in &r.pos {
                assert_ne!(gp.display_literal(*l), "p(a)");
            }
        }
        assert_eq!(gp.rules().len(), 3);
    }

    #[test]
    fn underivable_bodies_are_not_instantiated() {
        let gp = g("p(a). q(X) :- p(X), s(X). r :- not t.");
        assert_eq!(gp.rules().len(), 2);
        assert!(gp.assumable().is_empty());
    }

    #[test]
    fn empty_constants_give_facts_only() {
        let gp = g("p(a). q(X) :- r(X).");
        assert_eq!(gp.rules().len(), 1);
    }

    #[test]
    fn assumable_literals_are_derivable_naf_literals() {
        let gp = g("d(a). d(b). o(a). p(X) :- d(X), not o(X). o(X) :- e(X).");
        let names: Vec<String> = gp
            .assumable()
            .iter()
            .map(|l| gp.display_literal(*l))
            .collect();
        assert!(names.is_empty(), "{names:?}");
        let gp = g("d(a). d(b). p(X) :- d(X), not o(X). o(X) :- d(X), not p(X).");
        assert_eq!(gp.assumable().len(), 4);
    }

    #[test]
    fn unsafe_rules_and_foreign_naf_are_rejected() {
        let p = parse_asp_text("p(X) :- q(Y).").unwrap();
        assert!(matches!(ground(&p), Err(EngineError::UnsafeRule(_))));
        let p = parse_asp_text("q(a). p(X) :- q(X), not r(X).").unwrap();
        assert!(matches!(
            ground_checked(&p, &["ovr"]),
            Err(EngineError::NafPredicate { .. })
        ));
        assert!(ground_checked(&p, &["r"]).is_ok());
    }
}
