//! Grounding and answer-set computation for normal programs with strong
//! negation.

mod ground;
mod solve;

pub use ground::{ground, ground_checked};
pub use solve::{AnswerSet, Closure, SearchStrategy, SolveOptions};

use std::collections::BTreeSet;

use rustc_hash::FxHashMap as HashMap;
use std::fmt;

use thiserror::Error;

use crate::kb::Name;
use crate::program::{write_symbol, Literal, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unsafe rule `{0}`: every head and default-negated variable must occur in the positive body")]
    UnsafeRule(String),
    #[error("default negation on predicate `{predicate}` in `{rule}`; only {allowed} may be default-negated")]
    NafPredicate {
        predicate: String,
        rule: String,
        allowed: String,
    },
    #[error("least model requested for a program with default negation")]
    NotNafFree,
    #[error("{found} assumable atoms exceed the limit of {cap}")]
    ResourceLimit { found: usize, cap: usize },
}

/// Ground literal id: `2 * atom + (1 if strongly negated)`. The complement of
/// `l` is `l ^ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(pub u32);

impl Lit {
    pub fn atom(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn complement(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

/// A ground literal spelled out with names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundLiteral {
    pub predicate: Name,
    pub negated: bool,
    pub args: Vec<Name>,
}

impl GroundLiteral {
    /// Converts a ground [`Literal`]; `None` if it has variables.
    pub fn from_literal(l: &Literal) -> Option<Self> {
        let args = l
            .args
            .iter()
            .map(|t| match t {
                Term::Const(c) => Some(c.clone()),
                Term::Var(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(GroundLiteral {
            predicate: l.predicate.clone(),
            negated: l.negated,
            args,
        })
    }
}

impl fmt::Display for GroundLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write_symbol(f, a)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundRule {
    pub head: Lit,
    pub pos: Vec<Lit>,
    pub naf: Vec<Lit>,
}

/// A set of ground literals.
pub type Interpretation = BTreeSet<Lit>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeastModel {
    Model(Interpretation),
    Inconsistent,
}

/// Interned ground program. Atoms are `(predicate, args)` over interned
/// symbols.
#[derive(Clone, Debug, Default)]
pub struct GroundProgram {
    symbols: Vec<Name>,
    symbol_ids: HashMap<Name, u32>,
    atoms: Vec<(u32, Box<[u32]>)>,
    atom_ids: HashMap<(u32, Box<[u32]>), u32>,
    rules: Vec<GroundRule>,
    /// Default-negated literals that head some rule, sorted.
    assumable: Vec<Lit>,
    /// Per literal: rules with it in the positive body.
    pos_occ: Vec<Vec<u32>>,
}

impl GroundProgram {
    fn symbol(&mut self, name: &Name) -> u32 {
        if let Some(&id) = self.symbol_ids.get(name) {
            return id;
        }
        let id = self.symbols.len() as u32;
        self.symbols.push(name.clone());
        self.symbol_ids.insert(name.clone(), id);
        id
    }

    fn atom(&mut self, pred: u32, args: &[u32]) -> u32 {
        if let Some(&id) = self.atom_ids.get(&(pred, args.into())) {
            return id;
        }
        let id = self.atoms.len() as u32;
        let key: (u32, Box<[u32]>) = (pred, args.into());
        self.atoms.push(key.clone());
        self.atom_ids.insert(key, id);
        id
    }

    /// Finalizes indexes after the rule list changes.
    fn index(&mut self) {
        let n = self.atoms.len() * 2;
        self.pos_occ = vec![Vec::new(); n];
        let mut heads = vec![false; n];
        let mut naf = vec![false; n];
        for (i, r) in self.rules.iter().enumerate() {
            heads[r.head.index()] = true;
            for l in &r.pos {
                self.pos_occ[l.index()].push(i as u32);
            }
            for l in &r.naf {
                naf[l.index()] = true;
            }
        }
        self.assumable = (0..n)
            .filter(|&i| heads[i] && naf[i])
            .map(|i| Lit(i as u32))
            .collect();
    }

    /// Builds a program directly from ground rules; used for propositional
    /// fixtures and by [`reduct`](Self::reduct).
    pub fn from_ground_rules(
        rules: impl IntoIterator<Item = (GroundLiteral, Vec<GroundLiteral>, Vec<GroundLiteral>)>,
    ) -> Self {
        let mut gp = GroundProgram::default();
        let mut seen = std::collections::HashSet::new();
        for (head, pos, naf) in rules {
            let head = gp.intern(&head);
            let pos = pos.iter().map(|l| gp.intern(l)).collect();
            let naf = naf.iter().map(|l| gp.intern(l)).collect();
            let rule = GroundRule { head, pos, naf };
            if seen.insert(rule.clone()) {
                gp.rules.push(rule);
            }
        }
        gp.index();
        gp
    }

    /// Interns a ground literal, extending the atom table if needed.
    pub fn intern(&mut self, l: &GroundLiteral) -> Lit {
        let pred = self.symbol(&l.predicate);
        let args: Vec<u32> = l.args.iter().map(|a| self.symbol(a)).collect();
        let atom = self.atom(pred, &args);
        Lit(atom * 2 + l.negated as u32)
    }

    /// Id of a ground literal if its atom occurs in the program.
    pub fn lookup(&self, l: &GroundLiteral) -> Option<Lit> {
        let pred = *self.symbol_ids.get(&l.predicate)?;
        let args = l
            .args
            .iter()
            .map(|a| self.symbol_ids.get(a).copied())
            .collect::<Option<Box<[u32]>>>()?;
        let atom = *self.atom_ids.get(&(pred, args))?;
        Some(Lit(atom * 2 + l.negated as u32))
    }

    pub fn literal(&self, l: Lit) -> GroundLiteral {
        let (pred, args) = &self.atoms[l.atom() as usize];
        GroundLiteral {
            predicate: self.symbols[*pred as usize].clone(),
            negated: l.is_negated(),
            args: args
                .iter()
                .map(|&s| self.symbols[s as usize].clone())
                .collect(),
        }
    }

    /// Predicate name of a literal.
    pub fn predicate(&self, l: Lit) -> &Name {
        &self.symbols[self.atoms[l.atom() as usize].0 as usize]
    }

    /// Argument names of a literal.
    pub fn args(&self, l: Lit) -> impl Iterator<Item = &Name> {
        self.atoms[l.atom() as usize]
            .1
            .iter()
            .map(|&s| &self.symbols[s as usize])
    }

    pub fn rules(&self) -> &[GroundRule] {
        &self.rules
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Default-negated literals that some rule can derive: the only literals
    /// whose truth is guessed during answer-set search.
    pub fn assumable(&self) -> &[Lit] {
        &self.assumable
    }

    pub fn is_naf_free(&self) -> bool {
        self.rules.iter().all(|r| r.naf.is_empty())
    }

    /// Gelfond-Lifschitz reduct: drops rules with a default-negated literal
    /// in `i`, then strips default negation from the rest.
    pub fn reduct(&self, i: &Interpretation) -> GroundProgram {
        let mut gp = self.clone();
        gp.rules = self
            .rules
            .iter()
            .filter(|r| !r.naf.iter().any(|l| i.contains(l)))
            .map(|r| GroundRule {
                head: r.head,
                pos: r.pos.clone(),
                naf: Vec::new(),
            })
            .collect();
        gp.index();
        gp
    }

    /// The least model of a program without default negation.
    pub fn least_model(&self) -> Result<LeastModel, EngineError> {
        if !self.is_naf_free() {
            return Err(EngineError::NotNafFree);
        }
        let c = Closure::compute(self, &[], true);
        Ok(if c.consistent {
            LeastModel::Model(c.literals().collect())
        } else {
            LeastModel::Inconsistent
        })
    }

    /// `i` is a consistent minimal model of the reduct of the program
    /// relative to `i`.
    pub fn is_answer_set(&self, i: &Interpretation) -> bool {
        if i.iter().any(|l| i.contains(&l.complement())) {
            return false;
        }
        match self.reduct(i).least_model() {
            Ok(LeastModel::Model(m)) => &m == i,
            _ => false,
        }
    }

    pub fn display_literal(&self, l: Lit) -> String {
        self.literal(l).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(s: &str) -> GroundLiteral {
        let (negated, s) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        GroundLiteral {
            predicate: s.into(),
            negated,
            args: vec![],
        }
    }

    fn prog(rules: &[(&str, &[&str], &[&str])]) -> GroundProgram {
        GroundProgram::from_ground_rules(rules.iter().map(|(h, p, n)| {
            (
                gl(h),
                p.iter().map(|s| gl(s)).collect(),
                n.iter().map(|s| gl(s)).collect(),
            )
        }))
    }

    fn interp(gp: &GroundProgram, lits: &[&str]) -> Interpretation {
        lits.iter().map(|s| gp.lookup(&gl(s)).unwrap()).collect()
    }

    #[test]
    fn reduct_examples() {
        let gp = prog(&[("p", &[], &["q"]), ("q", &[], &["r"])]);
        let q = interp(&gp, &["q"]);
        let r = gp.reduct(&q);
        assert_eq!(r.rules().len(), 1);
        assert_eq!(r.display_literal(r.rules()[0].head), "q");
        let p = interp(&gp, &["p"]);
        let r = gp.reduct(&p);
        assert_eq!(r.rules().len(), 2);
        assert!(r.is_naf_free());
        assert_eq!(r.reduct(&p).rules(), r.rules());
    }

    #[test]
    fn least_model_examples() {
        let gp = prog(&[("p", &[], &[]), ("q", &["p"], &[])]);
        assert_eq!(
            gp.least_model().unwrap(),
            LeastModel::Model(interp(&gp, &["p", "q"]))
        );
        let gp = prog(&[("p", &[], &[]), ("-p", &[], &[])]);
        assert_eq!(gp.least_model().unwrap(), LeastModel::Inconsistent);
        let gp = prog(&[("p", &[], &["q"])]);
        assert_eq!(gp.least_model(), Err(EngineError::NotNafFree));
    }

    #[test]
    fn answer_set_checks() {
        let gp = prog(&[("p", &[], &[])]);
        assert!(gp.is_answer_set(&interp(&gp, &["p"])));
        let gp = prog(&[("p", &[], &["q"])]);
        assert!(!gp.is_answer_set(&interp(&gp, &["q"])));
        assert!(gp.is_answer_set(&interp(&gp, &["p"])));
        let gp = prog(&[("p", &[], &[]), ("-p", &["p"], &[])]);
        assert!(!gp.is_answer_set(&interp(&gp, &["p"])));
        assert!(!gp.is_answer_set(&interp(&gp, &["p", "-p"])));
        assert!(!gp.is_answer_set(&Interpretation::new()));
    }
}
