mod common;

use std::collections::BTreeSet;

use common::{atomic_queries, depth_cap, random_dkb, GenParams};
use dkb_core::frontend::{load_dkb, normalize, parse_dkb, to_surface};
use dkb_core::kb::{Axiom, Dkb};
use dkb_core::oracle::{chase, oracle_answer, ChaseOutcome};
use dkb_core::reasoner::{Reasoner, ReasonerOptions};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small() -> GenParams {
    GenParams {
        max_individuals: 4,
        max_axioms: 8,
        max_defeasible: 3,
        max_candidates: 8,
    }
}

fn kb_from(seed: u64, params: GenParams) -> Dkb {
    random_dkb(&mut ChaCha8Rng::seed_from_u64(seed), params)
}

/// Rewrites role assertions and existentials through inverse roles, which
/// the normalizer has to undo.
fn with_inverse_sugar(kb: &Dkb, rng: &mut ChaCha8Rng) -> String {
    let mut out = String::new();
    let write = |a: &Axiom, rng: &mut ChaCha8Rng| -> String {
        match a {
            Axiom::RoleAssertion {
                role,
                subject,
                object,
            } if rng.gen_bool(0.5) => format!("{role}^-({object},{subject})"),
            Axiom::NegRoleAssertion {
                role,
                subject,
                object,
            } if rng.gen_bool(0.5) => format!("-{role}^-({object},{subject})"),
            _ => a.to_string(),
        }
    };
    for c in kb.vocabulary.concepts() {
        out.push_str(&format!("concept {c}.\n"));
    }
    for r in kb.vocabulary.roles() {
        out.push_str(&format!("role {r}.\n"));
    }
    for i in kb.vocabulary.individuals() {
        out.push_str(&format!("individual {i}.\n"));
    }
    for a in &kb.strict {
        out.push_str(&format!("{}.\n", write(a, rng)));
    }
    for a in &kb.defeasible {
        out.push_str(&format!("D({}).\n", write(a, rng)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn candidate_count_formula(seed in any::<u64>()) {
        let kb = kb_from(seed, GenParams::default());
        let n = kb.vocabulary.individual_count();
        let expected: usize = kb.defeasible.iter().map(|a| n.pow(a.arity() as u32)).sum();
        let cands = kb.ca_candidates();
        prop_assert_eq!(cands.len(), expected);
        prop_assert_eq!(kb.ca_candidate_count(), expected);
        prop_assert_eq!(&cands, &kb.clone().ca_candidates());
        for ca in &cands {
            for arg in &ca.args {
                prop_assert!(kb.vocabulary.is_individual(arg));
            }
        }
    }

    #[test]
    fn display_round_trips(seed in any::<u64>()) {
        let kb = kb_from(seed, GenParams::default());
        prop_assert_eq!(load_dkb(&kb.to_string()).unwrap(), kb);
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kb = random_dkb(&mut rng, GenParams::default());
        let once = normalize(&parse_dkb(&with_inverse_sugar(&kb, &mut rng)).unwrap());
        let twice = normalize(&to_surface(&once));
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn normalization_preserves_answers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kb = random_dkb(&mut rng, small());
        let sugared = load_dkb(&with_inverse_sugar(&kb, &mut rng)).unwrap();
        let cap = depth_cap(&kb);
        for q in atomic_queries(&kb, false, false) {
            prop_assert_eq!(
                oracle_answer(&kb, &q, cap).unwrap(),
                oracle_answer(&sugared, &q, cap).unwrap(),
                "{}", q
            );
        }
    }

    #[test]
    fn more_exceptions_keep_consistency(seed in any::<u64>(), picks in any::<u32>()) {
        let kb = kb_from(seed, small());
        let cands = kb.ca_candidates();
        let chi: Vec<_> = cands
            .iter()
            .enumerate()
            .filter(|(i, _)| picks >> (i % 32) & 1 == 1)
            .map(|(_, c)| c.clone())
            .collect();
        let cap = depth_cap(&kb);
        if !matches!(chase(&kb, &chi, cap), ChaseOutcome::Inconsistent) {
            for extra in &cands {
                let mut bigger = chi.clone();
                if !bigger.contains(extra) {
                    bigger.push(extra.clone());
                }
                prop_assert!(!matches!(chase(&kb, &bigger, cap), ChaseOutcome::Inconsistent));
            }
        }
    }

    #[test]
    fn strict_inclusions_carry_entailments(seed in any::<u64>()) {
        let kb = kb_from(seed, small());
        let r = Reasoner::new(kb.clone(), ReasonerOptions::default()).unwrap();
        for a in &kb.strict {
            if let Axiom::SubClass { sub, sup } = a {
                for i in kb.vocabulary.individuals() {
                    if r.entails(&Axiom::concept(sub.clone(), i.clone())).unwrap().entailed {
                        prop_assert!(r.entails(&Axiom::concept(sup.clone(), i.clone())).unwrap().entailed);
                    }
                }
            }
        }
    }

    #[test]
    fn models_are_distinct_and_ordered(seed in any::<u64>()) {
        let kb = kb_from(seed, small());
        let r = Reasoner::new(kb, ReasonerOptions::default()).unwrap();
        let chis = r.chi_sets().unwrap();
        let set: BTreeSet<_> = chis.iter().cloned().collect();
        prop_assert_eq!(set.len(), chis.len());
        prop_assert!(chis.windows(2).all(|w| w[0] < w[1]));
        // Justified exception sets are never nested.
        for a in &chis {
            for b in &chis {
                if a != b {
                    prop_assert!(!a.iter().all(|x| b.contains(x)));
                }
            }
        }
    }
}
