//! Reasoner against oracle on a single knowledge base.

use std::collections::BTreeSet;

use dkb_core::kb::{aux_name, Axiom, ClashingAssumption, Dkb};
use dkb_core::oracle::oracle_models;
use dkb_core::reasoner::{Reasoner, ReasonerOptions};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub satisfiable: bool,
    pub models: usize,
    pub queries: usize,
    /// The first disagreement found, if any.
    pub disagreement: Option<String>,
}

impl Comparison {
    pub fn render(&self) -> String {
        match &self.disagreement {
            None => format!(
                "agree: satisfiable {}, {} justified model(s), {} queries\n",
                self.satisfiable, self.models, self.queries
            ),
            Some(d) => format!("disagree: {d}\n"),
        }
    }
}

/// Positive and negative instance queries over the named individuals, plus
/// positive role queries towards each auxiliary constant.
fn queries(kb: &Dkb) -> Vec<Axiom> {
    let voc = &kb.vocabulary;
    let mut out = Vec::new();
    for c in voc.concepts() {
        for i in voc.individuals() {
            out.push(Axiom::concept(c.clone(), i.clone()));
            out.push(Axiom::neg_concept(c.clone(), i.clone()));
        }
    }
    let aux: Vec<_> = (0..kb.supex_axioms().len()).map(aux_name).collect();
    for r in voc.roles() {
        for s in voc.individuals() {
            for o in voc.individuals() {
                out.push(Axiom::role(r.clone(), s.clone(), o.clone()));
                out.push(Axiom::neg_role(r.clone(), s.clone(), o.clone()));
            }
            for o in &aux {
                out.push(Axiom::role(r.clone(), s.clone(), o.clone()));
            }
        }
    }
    out
}

pub fn compare(
    kb: &Dkb,
    options: ReasonerOptions,
    depth_cap: usize,
) -> Result<Comparison, CliError> {
    let r = Reasoner::new(kb.clone(), options)?;
    let oracle = oracle_models(kb, depth_cap)?;
    let reasoner_chis: BTreeSet<Vec<ClashingAssumption>> = r.chi_sets()?.into_iter().collect();
    let oracle_chis: BTreeSet<Vec<ClashingAssumption>> =
        oracle.iter().map(|(chi, _)| chi.clone()).collect();
    let mut result = Comparison {
        satisfiable: r.satisfiable(),
        models: reasoner_chis.len(),
        queries: 0,
        disagreement: None,
    };
    let show = |chis: &BTreeSet<Vec<ClashingAssumption>>| -> String {
        let sets: Vec<String> = chis
            .iter()
            .map(|chi| {
                let cas: Vec<String> = chi.iter().map(|ca| kb.describe(ca)).collect();
                format!("{{{}}}", cas.join(", "))
            })
            .collect();
        format!("[{}]", sets.join(", "))
    };
    if reasoner_chis != oracle_chis {
        result.disagreement = Some(format!(
            "exception sets: reasoner {}, oracle {}",
            show(&reasoner_chis),
            show(&oracle_chis)
        ));
        return Ok(result);
    }
    if result.satisfiable != !oracle.is_empty() {
        result.disagreement = Some(format!(
            "satisfiability: reasoner {}, oracle finds {} justified model(s)",
            result.satisfiable,
            oracle.len()
        ));
        return Ok(result);
    }
    for q in queries(kb) {
        let mut expected = true;
        for (_, m) in &oracle {
            if !m.holds(&q)? {
                expected = false;
                break;
            }
        }
        let got = r.entails(&q)?.entailed;
        result.queries += 1;
        if got != expected {
            result.disagreement = Some(format!("{q}: reasoner {got}, oracle {expected}"));
            return Ok(result);
        }
    }
    Ok(result)
}
