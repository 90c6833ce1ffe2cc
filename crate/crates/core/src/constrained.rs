//! Greedy approximation for density maximization under upward-monotone
//! constraints: co-matroid (factor 2), knapsack cover (factor 3), and
//! co-matroid combined with a required subset (factor 2).
//!
//! All three share the same chain: `D_1` is the densest set (containing the
//! required subset, if any), and while `D_i` is infeasible the set `H_{i+1}`
//! of best marginal density outside `D_i` is appended. Every prefix `D_i` is
//! then made feasible by a constraint-specific augmentation and the densest
//! augmented prefix is returned.

use serde::Serialize;

use crate::density::{best_marginal_with, densest_subset_with, DensityResult, Engine};
use crate::error::{Error, Result};
use crate::matroid::MatroidOracle;
use crate::rational::Rational;
use crate::setfn::{density, SetFunctionOracle};
use crate::subset::Subset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    /// `H_i`, disjoint from the previous prefix.
    pub added: Subset,
    /// `D_i = D_{i−1} + H_i`.
    pub prefix: Subset,
    /// `(f(D_i) − f(D_{i−1})) / |H_i|`.
    pub marginal_density: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedPrefix {
    /// `D'_i`: the prefix made feasible.
    pub set: Subset,
    pub density: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTrace {
    pub chain: Vec<ChainStep>,
    pub augmented: Vec<AugmentedPrefix>,
    /// Index into `augmented` of the returned set.
    pub chosen_index: usize,
}

impl GreedyTrace {
    /// Checks the structural chain invariants: disjoint growth from the empty
    /// set, non-increasing marginal densities, and `d(D_i) >= marginal_i`.
    pub fn verify(&self, f: &SetFunctionOracle) -> Result<()> {
        let violated = |msg: String| Err(Error::InvariantViolated(msg));
        let mut prev = Subset::empty(f.n());
        let mut prev_marginal: Option<Rational> = None;
        for (i, step) in self.chain.iter().enumerate() {
            let i = i + 1;
            if step.added.is_empty() || !step.added.is_disjoint(&prev) {
                return violated(format!("H_{i} is empty or overlaps D_{}", i - 1));
            }
            if step.prefix != prev.union(&step.added) {
                return violated(format!("D_{i} is not D_{} + H_{i}", i - 1));
            }
            let marginal =
                (f.eval(&step.prefix) - f.eval(&prev)) / Rational::from(step.added.len());
            if marginal != step.marginal_density {
                return violated(format!("recorded marginal density of H_{i} is wrong"));
            }
            if let Some(p) = prev_marginal {
                if marginal > p {
                    return violated(format!(
                        "marginal density increases at step {i}: {p} < {marginal}"
                    ));
                }
            }
            if density(f, &step.prefix)? < marginal {
                return violated(format!("d(D_{i}) is below the marginal density of H_{i}"));
            }
            prev_marginal = Some(marginal);
            prev = step.prefix.clone();
        }
        if self.augmented.len() != self.chain.len() || self.chosen_index >= self.augmented.len() {
            return violated("augmented prefixes do not match the chain".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub result: DensityResult,
    pub trace: GreedyTrace,
}

/// Covering constraint `Σ_{i∈S} w_i >= k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnapsackConstraint {
    pub weights: Vec<u64>,
    pub threshold: u64,
}

impl KnapsackConstraint {
    pub fn new(weights: Vec<u64>, threshold: u64) -> Self {
        KnapsackConstraint { weights, threshold }
    }

    pub fn weight_of(&self, s: &Subset) -> u128 {
        s.iter().map(|i| self.weights[i] as u128).sum()
    }

    pub fn total_weight(&self) -> u128 {
        self.weights.iter().map(|&w| w as u128).sum()
    }

    pub fn is_feasible(&self, s: &Subset) -> bool {
        self.weight_of(s) >= self.threshold as u128
    }

    pub fn instance_feasible(&self) -> bool {
        self.total_weight() >= self.threshold as u128
    }

    /// Adds elements outside `d` by non-increasing weight (ties: lower id
    /// first) until the threshold is met.
    pub fn augment(&self, d: &Subset) -> Subset {
        let mut out = d.clone();
        let mut have = self.weight_of(d);
        let mut rest: Vec<usize> = d.complement().ids();
        rest.sort_by(|&a, &b| self.weights[b].cmp(&self.weights[a]).then(a.cmp(&b)));
        for id in rest {
            if have >= self.threshold as u128 {
                break;
            }
            out.insert(id);
            have += self.weights[id] as u128;
        }
        out
    }
}

fn run_greedy<F, A>(
    f: &SetFunctionOracle,
    forced: &Subset,
    engine: Engine,
    feasible: F,
    augment: A,
) -> Result<GreedyOutcome>
where
    F: Fn(&Subset) -> bool,
    A: Fn(&Subset) -> Subset,
{
    let first = densest_subset_with(f, forced, engine)?;
    let mut chain = vec![ChainStep {
        added: first.best_set.clone(),
        prefix: first.best_set.clone(),
        marginal_density: first.best_density,
    }];
    let mut current = first.best_set;
    while !feasible(&current) {
        // zero marginals are allowed; |D_i| still strictly grows
        let next = best_marginal_with(f, &current, engine)?;
        current = current.union(&next.set);
        chain.push(ChainStep {
            added: next.set,
            prefix: current.clone(),
            marginal_density: next.marginal_density,
        });
    }

    let augmented = chain
        .iter()
        .map(|step| {
            let set = augment(&step.prefix);
            density(f, &set).map(|density| AugmentedPrefix { set, density })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut chosen_index = 0;
    for (i, a) in augmented.iter().enumerate() {
        if a.density > augmented[chosen_index].density {
            chosen_index = i;
        }
    }

    let trace = GreedyTrace {
        chain,
        augmented,
        chosen_index,
    };
    trace.verify(f)?;
    let last = trace.chain.len() - 1;
    for (i, step) in trace.chain.iter().enumerate() {
        if (i == last) != feasible(&step.prefix) {
            return Err(Error::InvariantViolated(format!(
                "prefix D_{} feasibility is out of order",
                i + 1
            )));
        }
    }
    for (i, a) in trace.augmented.iter().enumerate() {
        if !feasible(&a.set) || !forced.is_subset(&a.set) {
            return Err(Error::InvariantViolated(format!(
                "augmented prefix D'_{} is infeasible",
                i + 1
            )));
        }
    }

    let chosen = &trace.augmented[chosen_index];
    let result = DensityResult {
        best_set: chosen.set.clone(),
        best_density: chosen.density,
        engine,
        iterations: trace.chain.len(),
    };
    Ok(GreedyOutcome { result, trace })
}

/// 2-approximation of the densest set whose complement is independent in `m`.
pub fn den_m_greedy(f: &SetFunctionOracle, m: &MatroidOracle) -> Result<GreedyOutcome> {
    den_m_greedy_with(f, m, Engine::auto(f))
}

pub fn den_m_greedy_with(
    f: &SetFunctionOracle,
    m: &MatroidOracle,
    engine: Engine,
) -> Result<GreedyOutcome> {
    den_combo_greedy_with(f, m, &Subset::empty(f.n()), engine)
}

/// 3-approximation of the densest set of total weight at least `c.threshold`.
pub fn den_knapsack_greedy(f: &SetFunctionOracle, c: &KnapsackConstraint) -> Result<GreedyOutcome> {
    den_knapsack_greedy_with(f, c, Engine::auto(f))
}

pub fn den_knapsack_greedy_with(
    f: &SetFunctionOracle,
    c: &KnapsackConstraint,
    engine: Engine,
) -> Result<GreedyOutcome> {
    if c.weights.len() != f.n() {
        return Err(Error::InvalidInput(format!(
            "{} weights for {} elements",
            c.weights.len(),
            f.n()
        )));
    }
    if !c.instance_feasible() {
        return Err(Error::InfeasibleInstance(format!(
            "total weight {} is below the threshold {}",
            c.total_weight(),
            c.threshold
        )));
    }
    run_greedy(
        f,
        &Subset::empty(f.n()),
        engine,
        |s| c.is_feasible(s),
        |d| c.augment(d),
    )
}

/// 2-approximation of the densest set that contains `a` and whose complement
/// is independent in `m`.
pub fn den_combo_greedy(
    f: &SetFunctionOracle,
    m: &MatroidOracle,
    a: &Subset,
) -> Result<GreedyOutcome> {
    den_combo_greedy_with(f, m, a, Engine::auto(f))
}

pub fn den_combo_greedy_with(
    f: &SetFunctionOracle,
    m: &MatroidOracle,
    a: &Subset,
    engine: Engine,
) -> Result<GreedyOutcome> {
    if m.n() != f.n() || a.universe_size() != f.n() {
        return Err(Error::InvalidInput(format!(
            "matroid over {} elements, set function over {}",
            m.n(),
            f.n()
        )));
    }
    run_greedy(
        f,
        a,
        engine,
        |s| m.is_feasible_comatroid(s),
        |d| d.union(&m.solve_extension(d)),
    )
}
