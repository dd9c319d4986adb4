//! Seeded generators for knowledge bases and queries shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use dkb_core::kb::{aux_name, Axiom, Dkb, Name};
use rand::seq::SliceRandom;
use rand::Rng;

pub const CONCEPTS: [&str; 4] = ["A", "B", "C", "E"];
pub const ROLES: [&str; 3] = ["R", "S", "T"];
pub const INDIVIDUALS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    pub max_individuals: usize,
    pub max_axioms: usize,
    pub max_defeasible: usize,
    /// Upper bound on the number of clashing-assumption candidates, which
    /// both the oracle and the solver enumerate exhaustively.
    pub max_candidates: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_individuals: 8,
            max_axioms: 12,
            max_defeasible: 4,
            max_candidates: 12,
        }
    }
}

fn pick<'a, R: Rng>(rng: &mut R, names: &[&'a str]) -> &'a str {
    names.choose(rng).unwrap()
}

pub fn random_axiom<R: Rng>(rng: &mut R, individuals: &[&str], tbox_only: bool) -> Axiom {
    let c = |rng: &mut R| pick(rng, &CONCEPTS);
    let r = |rng: &mut R| pick(rng, &ROLES);
    let i = |rng: &mut R| pick(rng, individuals);
    let shape = if tbox_only {
        rng.gen_range(4..12)
    } else {
        rng.gen_range(0..16)
    };
    match shape {
        0 | 12 => Axiom::concept(c(rng), i(rng)),
        1 | 13 => Axiom::neg_concept(c(rng), i(rng)),
        2 | 14 => Axiom::role(r(rng), i(rng), i(rng)),
        3 => Axiom::neg_role(r(rng), i(rng), i(rng)),
        4 | 15 => Axiom::sub_class(c(rng), c(rng)),
        5 => Axiom::sup_not(c(rng), c(rng)),
        6 => Axiom::sub_ex(r(rng), c(rng)),
        7 => Axiom::sup_ex(c(rng), r(rng)),
        8 => Axiom::sub_role(r(rng), r(rng)),
        9 => Axiom::dis(r(rng), r(rng)),
        10 => Axiom::inv(r(rng), r(rng)),
        _ => Axiom::irr(r(rng)),
    }
}

/// A random knowledge base within `params` whose existential dependencies
/// are acyclic.
pub fn random_dkb<R: Rng>(rng: &mut R, params: GenParams) -> Dkb {
    loop {
        let n = rng.gen_range(1..=params.max_individuals);
        let individuals = &INDIVIDUALS[..n];
        // Mostly dense knowledge bases with at least one default, so that
        // exceptions actually arise.
        let total = rng.gen_range(params.max_axioms.min(4)..=params.max_axioms);
        let defeasible = if rng.gen_bool(0.1) {
            0
        } else {
            rng.gen_range(1..=params.max_defeasible.min(total))
        };
        let mut kb = Dkb::new();
        for k in 0..total {
            let a = random_axiom(rng, individuals, false);
            if k < defeasible {
                kb.add_defeasible(a).unwrap();
            } else {
                kb.add_strict(a).unwrap();
            }
        }
        if kb.ca_candidate_count() <= params.max_candidates && existentials_acyclic(&kb) {
            return kb;
        }
    }
}

/// Concepts that hold at the successor `y` of any fact `role(x, y)`: role
/// facts are closed under role inclusions and inverses, and those pointing
/// back from `y` to `x` fire domain axioms at `y`.
fn successor_concepts(kb: &Dkb, role: &Name) -> HashSet<Name> {
    let mut facts: HashSet<(Name, bool)> = HashSet::from([(role.clone(), true)]);
    let mut stack: Vec<(Name, bool)> = facts.iter().cloned().collect();
    let axioms: Vec<&Axiom> = kb.axioms().map(|(_, a)| a).collect();
    while let Some((r, forward)) = stack.pop() {
        let mut next = Vec::new();
        for a in &axioms {
            match a {
                Axiom::SubRole { sub, sup } if *sub == r => next.push((sup.clone(), forward)),
                Axiom::Inv { role, inverse } => {
                    if *role == r {
                        next.push((inverse.clone(), !forward));
                    }
                    if *inverse == r {
                        next.push((role.clone(), !forward));
                    }
                }
                _ => {}
            }
        }
        for f in next {
            if facts.insert(f.clone()) {
                stack.push(f);
            }
        }
    }
    let mut out = HashSet::new();
    for a in &axioms {
        if let Axiom::SubEx { role, sup } = a {
            if facts.contains(&(role.clone(), false)) {
                out.insert(sup.clone());
            }
        }
    }
    out
}

/// No chain of inclusions and existential steps leads from a concept back
/// to itself through an existential step. Pure inclusion cycles are also
/// rejected, which only makes the check conservative.
pub fn existentials_acyclic(kb: &Dkb) -> bool {
    let mut edges: HashMap<Name, Vec<Name>> = HashMap::new();
    for (_, a) in kb.axioms() {
        match a {
            Axiom::SubClass { sub, sup } => edges.entry(sub.clone()).or_default().push(sup.clone()),
            Axiom::SupEx { sub, role } => edges
                .entry(sub.clone())
                .or_default()
                .extend(successor_concepts(kb, role)),
            _ => {}
        }
    }
    // Iterative three-colour depth-first search.
    let mut colour: HashMap<Name, u8> = HashMap::new();
    for start in edges.keys() {
        if colour.contains_key(start) {
            continue;
        }
        let mut stack = vec![(start.clone(), 0usize)];
        colour.insert(start.clone(), 1);
        while let Some((node, i)) = stack.pop() {
            let succ = edges.get(&node).map(Vec::as_slice).unwrap_or(&[]);
            if i < succ.len() {
                stack.push((node, i + 1));
                let next = &succ[i];
                match colour.get(next) {
                    Some(1) => return false,
                    Some(_) => {}
                    None => {
                        colour.insert(next.clone(), 1);
                        stack.push((next.clone(), 0));
                    }
                }
            } else {
                colour.insert(node, 2);
            }
        }
    }
    true
}

/// Enough Skolem nesting for any acyclic knowledge base.
pub fn depth_cap(kb: &Dkb) -> usize {
    3.max(kb.supex_axioms().len() + 1)
}

/// Every ground instance query over the signature: concept and role
/// assertions, optionally negated, optionally with auxiliary role objects.
pub fn atomic_queries(kb: &Dkb, negative: bool, aux: bool) -> Vec<Axiom> {
    let inds: Vec<Name> = kb.vocabulary.individuals().cloned().collect();
    let mut objects = inds.clone();
    if aux {
        objects.extend((0..kb.supex_axioms().len()).map(aux_name));
    }
    let mut out = Vec::new();
    for c in kb.vocabulary.concepts() {
        for i in &inds {
            out.push(Axiom::concept(c.clone(), i.clone()));
            if negative {
                out.push(Axiom::neg_concept(c.clone(), i.clone()));
            }
        }
    }
    for r in kb.vocabulary.roles() {
        for s in &inds {
            for o in &objects {
                out.push(Axiom::role(r.clone(), s.clone(), o.clone()));
                if negative {
                    out.push(Axiom::neg_role(r.clone(), s.clone(), o.clone()));
                }
            }
        }
    }
    out
}

pub const DEPT: &str = "\
% Professors and PhD students are department members; members normally
% teach a course, PhD students never do.
D(DeptMember [= exists hasCourse).
Professor [= DeptMember.
PhDStudent [= DeptMember.
PhDStudent [= -exists hasCourse.
Professor(alice).
PhDStudent(bob).
";

/// 100 individuals, 50 strict TBox and role axioms, 10 defeasible axioms
/// and 210 assertions. Each defeasible axiom clashes on one individual only,
/// so the solver guesses few `ovr` atoms.
pub fn scale_kb() -> Dkb {
    let mut kb = Dkb::new();
    let ind = |i: usize| format!("i{i}");
    for k in 0..10 {
        kb.add_strict(Axiom::sub_class(format!("Base{k}"), format!("Mid{k}")))
            .unwrap();
        kb.add_strict(Axiom::sub_class(format!("Mid{k}"), format!("Top{k}")))
            .unwrap();
        kb.add_strict(Axiom::sup_ex(format!("Top{k}"), "linked"))
            .unwrap();
        kb.add_strict(Axiom::sup_not(format!("Odd{k}"), format!("Flag{k}")))
            .unwrap();
        kb.add_defeasible(Axiom::sub_class(format!("Mid{k}"), format!("Flag{k}")))
            .unwrap();
    }
    for a in [
        Axiom::sub_ex("linked", "Linked"),
        Axiom::sub_class("Linked", "Node"),
        Axiom::sup_not("Node", "Isolated"),
        Axiom::sub_role("knows", "linked"),
        Axiom::inv("knows", "knownBy"),
        Axiom::sub_ex("knownBy", "Known"),
        Axiom::sub_class("Known", "Node"),
        Axiom::irr("knows"),
        Axiom::dis("knows", "avoids"),
        Axiom::sup_not("Isolated", "Known"),
    ] {
        kb.add_strict(a).unwrap();
    }
    for i in 0..100 {
        kb.add_strict(Axiom::concept(format!("Base{}", i % 10), ind(i)))
            .unwrap();
        kb.add_strict(Axiom::role("knows", ind(i), ind((i + 1) % 100)))
            .unwrap();
    }
    for k in 0..10 {
        kb.add_strict(Axiom::concept(format!("Odd{k}"), ind(k)))
            .unwrap();
    }
    kb
}
