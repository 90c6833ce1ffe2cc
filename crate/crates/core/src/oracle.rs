//! Exhaustive reference solvers. Slow by construction; used as ground truth.

use std::cmp::Ordering;

use crate::closure::DependencyDigraph;
use crate::constrained::KnapsackConstraint;
use crate::error::{Error, Result};
use crate::matroid::MatroidOracle;
use crate::rational::Rational;
use crate::setfn::SetFunctionOracle;
use crate::subset::Subset;

pub const ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, Copy)]
pub enum Constraint<'a> {
    Unconstrained,
    CoMatroid(&'a MatroidOracle),
    Knapsack(&'a KnapsackConstraint),
    Subset(&'a Subset),
    Closure(&'a DependencyDigraph),
    Combo(&'a MatroidOracle, &'a Subset),
}

impl Constraint<'_> {
    pub fn is_feasible(&self, s: &Subset) -> bool {
        match self {
            Constraint::Unconstrained => true,
            Constraint::CoMatroid(m) => m.is_feasible_comatroid(s),
            Constraint::Knapsack(c) => c.is_feasible(s),
            Constraint::Subset(a) => a.is_subset(s),
            Constraint::Closure(d) => d.is_closed(s),
            Constraint::Combo(m, a) => a.is_subset(s) && m.is_feasible_comatroid(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceReport {
    pub opt_set: Subset,
    pub opt_density: Rational,
    pub feasible_count: u64,
    pub enumerated: u64,
}

/// Maximum density over all nonempty feasible sets. Ties go to the larger
/// set, then to the lexicographically smaller id list.
pub fn brute_optimum(
    f: &SetFunctionOracle,
    constraint: Constraint<'_>,
) -> Result<BruteForceReport> {
    let n = f.n();
    if n > ORACLE_CAP {
        return Err(Error::CapExceeded { n, cap: ORACLE_CAP });
    }
    let table = f.value_table(ORACLE_CAP)?;
    let mut best: Option<(u64, Rational)> = None;
    let mut feasible_count = 0u64;
    let mut enumerated = 0u64;
    for mask in 1u64..1 << n {
        enumerated += 1;
        let s = Subset::from_mask(n, mask);
        if !constraint.is_feasible(&s) {
            continue;
        }
        feasible_count += 1;
        let d = table[mask as usize] / Rational::from(mask.count_ones() as usize);
        let wins = match best {
            None => true,
            Some((bm, bd)) => match d.cmp(&bd) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => match mask.count_ones().cmp(&bm.count_ones()) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => s.lex_cmp(&Subset::from_mask(n, bm)) == Ordering::Less,
                },
            },
        };
        if wins {
            best = Some((mask, d));
        }
    }
    let (mask, opt_density) = best.ok_or_else(|| {
        Error::InfeasibleInstance("no nonempty set satisfies the constraint".into())
    })?;
    Ok(BruteForceReport {
        opt_set: Subset::from_mask(n, mask),
        opt_density,
        feasible_count,
        enumerated,
    })
}
