use std::collections::BTreeSet;

use dkb_core::asp::{ground, GroundProgram, LeastModel, SearchStrategy, SolveOptions};
use dkb_core::translator::parse_asp_text;
use proptest::prelude::*;

fn program(text: &str) -> GroundProgram {
    ground(&parse_asp_text(text).unwrap()).unwrap()
}

fn shown(gp: &GroundProgram, strategy: SearchStrategy) -> BTreeSet<BTreeSet<String>> {
    let options = SolveOptions {
        strategy,
        ..Default::default()
    };
    gp.answer_sets(options)
        .unwrap()
        .iter()
        .map(|a| a.literals.iter().map(|l| gp.display_literal(*l)).collect())
        .collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn transitive_closure_with_variables() {
    let gp = program(
        "edge(a,b). edge(b,c). edge(c,d).\n\
         path(X,Y) :- edge(X,Y).\n\
         path(X,Z) :- path(X,Y), edge(Y,Z).",
    );
    let sets = shown(&gp, SearchStrategy::Propagating);
    assert_eq!(sets.len(), 1);
    let m = sets.into_iter().next().unwrap();
    assert_eq!(m.iter().filter(|l| l.starts_with("path")).count(), 6);
    assert!(m.contains("path(a,d)"));
}

#[test]
fn default_with_exception() {
    let gp = program(
        "bird(tweety). bird(sam). penguin(sam).\n\
         ab(X) :- penguin(X).\n\
         flies(X) :- bird(X), not ab(X).\n\
         -flies(X) :- penguin(X).",
    );
    let sets = shown(&gp, SearchStrategy::Propagating);
    assert_eq!(sets.len(), 1);
    let m = sets.into_iter().next().unwrap();
    assert!(m.contains("flies(tweety)"));
    assert!(m.contains("-flies(sam)"));
    assert!(!m.contains("flies(sam)"));
}

#[test]
fn choice_through_even_loops() {
    let gp = program(
        "item(x). item(y).\n\
         in(X) :- item(X), not out(X).\n\
         out(X) :- item(X), not in(X).",
    );
    let sets = shown(&gp, SearchStrategy::Propagating);
    assert_eq!(sets.len(), 4);
    assert!(sets.contains(&set(&["item(x)", "item(y)", "in(x)", "out(y)"])));
}

#[test]
fn least_model_of_positive_programs() {
    let gp = program("p. q :- p. r :- s.");
    match gp.least_model().unwrap() {
        LeastModel::Model(m) => {
            let names: BTreeSet<String> = m.iter().map(|l| gp.display_literal(*l)).collect();
            assert_eq!(names, set(&["p", "q"]));
        }
        LeastModel::Inconsistent => panic!("consistent program"),
    }
    assert_eq!(
        program("p. -q :- p. q.").least_model().unwrap(),
        LeastModel::Inconsistent
    );
}

#[test]
fn assumable_limit_is_a_resource_error() {
    let text: String = (0..6)
        .map(|i| format!("p{i} :- not q{i}. q{i} :- not p{i}.\n"))
        .collect();
    let gp = program(&text);
    let options = SolveOptions {
        max_assumable: 4,
        ..Default::default()
    };
    assert!(gp.answer_sets(options).is_err());
    assert_eq!(shown(&gp, SearchStrategy::Propagating).len(), 64);
}

fn literal() -> impl Strategy<Value = String> {
    (0u8..6, prop::bool::weighted(0.2)).prop_map(|(a, neg)| {
        if neg {
            format!("-p{a}")
        } else {
            format!("p{a}")
        }
    })
}

fn rule() -> impl Strategy<Value = String> {
    (
        literal(),
        prop::collection::vec(literal(), 0..3),
        prop::collection::vec(literal(), 0..3),
    )
        .prop_map(|(head, pos, naf)| {
            let body: Vec<String> = pos
                .into_iter()
                .chain(naf.into_iter().map(|l| format!("not {l}")))
                .collect();
            if body.is_empty() {
                format!("{head}.")
            } else {
                format!("{head} :- {}.", body.join(", "))
            }
        })
}

/// Whether `m` satisfies every rule of `gp` read classically, with `not l`
/// as absence of `l`.
fn is_model(gp: &GroundProgram, m: &BTreeSet<dkb_core::asp::Lit>) -> bool {
    gp.rules().iter().all(|r| {
        let fires = r.pos.iter().all(|l| m.contains(l)) && !r.naf.iter().any(|l| m.contains(l));
        !fires || m.contains(&r.head)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn answer_sets_are_minimal_models(rules in prop::collection::vec(rule(), 1..10)) {
        let gp = program(&rules.join("\n"));
        let sets = gp.answer_sets(SolveOptions::default()).unwrap();
        for a in &sets {
            let m = a.interpretation();
            prop_assert!(gp.is_answer_set(&m));
            prop_assert!(is_model(&gp, &m));
            let lits: Vec<_> = m.iter().copied().collect();
            for mask in 0u32..(1 << lits.len()) - 1 {
                let smaller: BTreeSet<_> = (0..lits.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| lits[i])
                    .collect();
                prop_assert!(!is_model(&gp, &smaller));
            }
        }
        for a in &sets {
            for b in &sets {
                if a.assumed == b.assumed {
                    prop_assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn strategies_agree(rules in prop::collection::vec(rule(), 1..10)) {
        let gp = program(&rules.join("\n"));
        prop_assert_eq!(
            shown(&gp, SearchStrategy::Propagating),
            shown(&gp, SearchStrategy::Exhaustive)
        );
    }

    #[test]
    fn positive_programs_have_their_least_model(rules in prop::collection::vec(rule(), 1..10)) {
        let positive: Vec<String> = rules
            .iter()
            .map(|r| match r.split_once(" :- ") {
                Some((head, body)) => {
                    let kept: Vec<&str> = body
                        .trim_end_matches('.')
                        .split(", ")
                        .filter(|l| !l.starts_with("not "))
                        .collect();
                    if kept.is_empty() {
                        format!("{head}.")
                    } else {
                        format!("{head} :- {}.", kept.join(", "))
                    }
                }
                None => r.clone(),
            })
            .collect();
        let gp = program(&positive.join("\n"));
        let sets = gp.answer_sets(SolveOptions::default()).unwrap();
        prop_assert!(sets.len() <= 1);
        match gp.least_model().unwrap() {
            LeastModel::Model(m) => prop_assert_eq!(sets[0].interpretation(), m),
            LeastModel::Inconsistent => prop_assert!(sets.is_empty()),
        }
    }
}
