//! Answer-set enumeration.
//!
//! A candidate is fixed by the set `X` of assumable literals taken to be
//! true: rules default-negating a literal of `X` are dropped and the least
//! model `M(X)` of what remains is computed. `X` yields an answer set iff
//! `M(X)` is consistent and its assumable literals are exactly `X`. Since
//! `M` is antitone in `X`, bounds `L ⊆ X ⊆ U` tighten to
//! `L ∪ A(M(U))` and `U ∩ A(M(L))`, and an inconsistent `M(U)` rules out
//! every `X ⊆ U`.

use rayon::prelude::*;

use super::{EngineError, GroundProgram, Interpretation, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchStrategy {
    /// Branch over assumable literals with bound propagation.
    #[default]
    Propagating,
    /// Try every subset of the assumable literals.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Upper limit on the number of assumable literals.
    pub max_assumable: usize,
    pub strategy: SearchStrategy,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_assumable: 20,
            strategy: SearchStrategy::Propagating,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerSet {
    /// All true literals, sorted.
    pub literals: Vec<Lit>,
    /// The assumable literals among them, sorted.
    pub assumed: Vec<Lit>,
}

impl AnswerSet {
    pub fn contains(&self, l: Lit) -> bool {
        self.literals.binary_search(&l).is_ok()
    }

    pub fn interpretation(&self) -> Interpretation {
        self.literals.iter().copied().collect()
    }
}

/// Forward-chaining closure of the rules not blocked by the assumed
/// literals.
pub struct Closure {
    truth: Vec<bool>,
    pub consistent: bool,
}

impl Closure {
    /// Computes the closure, treating `assumed` as the set of true
    /// default-negated literals. With `stop_on_conflict` the computation
    /// ends at the first complementary pair.
    pub fn compute(gp: &GroundProgram, assumed: &[Lit], stop_on_conflict: bool) -> Closure {
        let n = gp.atom_count() * 2;
        let mut is_assumed = vec![false; n];
        for l in assumed {
            is_assumed[l.index()] = true;
        }
        Self::with_mask(gp, &is_assumed, stop_on_conflict)
    }

    fn with_mask(gp: &GroundProgram, assumed: &[bool], stop_on_conflict: bool) -> Closure {
        let n = gp.atom_count() * 2;
        let rules = gp.rules();
        let blocked: Vec<bool> = rules
            .iter()
            .map(|r| r.naf.iter().any(|l| assumed[l.index()]))
            .collect();
        let mut missing: Vec<u32> = rules.iter().map(|r| r.pos.len() as u32).collect();
        let mut truth = vec![false; n];
        let mut queue: Vec<Lit> = rules
            .iter()
            .zip(&blocked)
            .filter(|(r, b)| r.pos.is_empty() && !**b)
            .map(|(r, _)| r.head)
            .collect();
        let mut consistent = true;
        while let Some(l) = queue.pop() {
            if truth[l.index()] {
                continue;
            }
            truth[l.index()] = true;
            if truth[l.complement().index()] {
                consistent = false;
                if stop_on_conflict {
                    break;
                }
            }
            for &ri in &gp.pos_occ[l.index()] {
                let ri = ri as usize;
                missing[ri] -= 1;
                if missing[ri] == 0 && !blocked[ri] {
                    queue.push(rules[ri].head);
                }
            }
        }
        Closure { truth, consistent }
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.truth[l.index()]
    }

    pub fn literals(&self) -> impl Iterator<Item = Lit> + '_ {
        self.truth
            .iter()
            .enumerate()
            .filter(|(_, t)| **t)
            .map(|(i, _)| Lit(i as u32))
    }
}

impl GroundProgram {
    /// All answer sets, sorted by their assumed literals.
    pub fn answer_sets(&self, options: SolveOptions) -> Result<Vec<AnswerSet>, EngineError> {
        let found = self.assumable().len();
        if found > options.max_assumable {
            return Err(EngineError::ResourceLimit {
                found,
                cap: options.max_assumable,
            });
        }
        let mut out = match options.strategy {
            SearchStrategy::Propagating => {
                let mut s = Search {
                    gp: self,
                    out: Vec::new(),
                };
                let n = self.assumable().len();
                s.run(vec![false; n], vec![true; n]);
                s.out
            }
            SearchStrategy::Exhaustive => self.exhaustive(),
        };
        out.sort_by(|a, b| a.assumed.cmp(&b.assumed));
        debug_assert!(out.iter().all(|a| self.is_answer_set(&a.interpretation())));
        Ok(out)
    }

    /// Checks a single guess: `x` as a bitmask over [`assumable`](Self::assumable).
    fn candidate(&self, x: &[bool]) -> Option<AnswerSet> {
        let mut mask = vec![false; self.atom_count() * 2];
        let assumed: Vec<Lit> = self
            .assumable()
            .iter()
            .zip(x)
            .filter(|(_, b)| **b)
            .map(|(l, _)| *l)
            .collect();
        for l in &assumed {
            mask[l.index()] = true;
        }
        let c = Closure::with_mask(self, &mask, true);
        if !c.consistent {
            return None;
        }
        let derived: Vec<Lit> = self
            .assumable()
            .iter()
            .copied()
            .filter(|l| c.contains(*l))
            .collect();
        (derived == assumed).then(|| AnswerSet {
            literals: c.literals().collect(),
            assumed,
        })
    }

    fn exhaustive(&self) -> Vec<AnswerSet> {
        let n = self.assumable().len();
        (0u64..1 << n)
            .into_par_iter()
            .filter_map(|bits| {
                let x: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                self.candidate(&x)
            })
            .collect()
    }

    /// The least model obtained by assuming `assumed` true for default
    /// negation, without any search.
    pub fn closure_assuming(&self, assumed: &[Lit]) -> Closure {
        Closure::compute(self, assumed, true)
    }
}

struct Search<'a> {
    gp: &'a GroundProgram,
    out: Vec<AnswerSet>,
}

impl Search<'_> {
    fn assumable_in(&self, c: &Closure) -> Vec<bool> {
        self.gp.assumable().iter().map(|l| c.contains(*l)).collect()
    }

    fn mask(&self, x: &[bool]) -> Vec<bool> {
        let mut mask = vec![false; self.gp.atom_count() * 2];
        for (l, b) in self.gp.assumable().iter().zip(x) {
            if *b {
                mask[l.index()] = true;
            }
        }
        mask
    }

    fn run(&mut self, mut lower: Vec<bool>, mut upper: Vec<bool>) {
        loop {
            let at_upper = Closure::with_mask(self.gp, &self.mask(&upper), true);
            if !at_upper.consistent {
                return;
            }
            let new_lower: Vec<bool> = lower
                .iter()
                .zip(self.assumable_in(&at_upper))
                .map(|(a, b)| *a || b)
                .collect();
            let at_lower = Closure::with_mask(self.gp, &self.mask(&new_lower), false);
            let new_upper: Vec<bool> = upper
                .iter()
                .zip(self.assumable_in(&at_lower))
                .map(|(a, b)| *a && b)
                .collect();
            if new_lower.iter().zip(&new_upper).any(|(l, u)| *l && !*u) {
                return;
            }
            let stable = new_lower == lower && new_upper == upper;
            lower = new_lower;
            upper = new_upper;
            if stable {
                if lower == upper {
                    // Both closures coincide with M(lower), which is consistent
                    // and reproduces exactly `lower`.
                    let assumed = self
                        .gp
                        .assumable()
                        .iter()
                        .zip(&lower)
                        .filter(|(_, b)| **b)
                        .map(|(l, _)| *l)
                        .collect();
                    self.out.push(AnswerSet {
                        literals: at_upper.literals().collect(),
                        assumed,
                    });
                    return;
                }
                break;
            }
        }
        let pick = (0..lower.len()).find(|&i| !lower[i] && upper[i]).unwrap();
        let mut with = lower.clone();
        with[pick] = true;
        self.run(with, upper.clone());
        let mut without = upper;
        without[pick] = false;
        self.run(lower, without);
    }
}
