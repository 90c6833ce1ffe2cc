//! Density maximization `max f(S)/|S|` for monotone supermodular set
//! functions, exactly (unconstrained, required subsets, dependency closures)
//! and approximately (co-matroid, knapsack cover, co-matroid plus required
//! subset), with exhaustive reference solvers for verification.

pub mod closure;
pub mod constrained;
pub mod density;
pub mod error;
pub mod flow;
pub mod io;
pub mod matroid;
pub mod oracle;
pub mod rational;
pub mod report;
pub mod setfn;
pub mod subset;

pub mod cli;

pub use closure::{densest_closure, densest_closure_with, is_closed, DependencyDigraph};
pub use constrained::{
    den_combo_greedy, den_combo_greedy_with, den_knapsack_greedy, den_knapsack_greedy_with,
    den_m_greedy, den_m_greedy_with, AugmentedPrefix, ChainStep, GreedyOutcome, GreedyTrace,
    KnapsackConstraint,
};
pub use density::{
    best_marginal, best_marginal_with, densest_subset, densest_subset_with, maximize_excess,
    maximize_excess_with, DensityResult, Engine, Excess, ExcessQuery, Marginal,
};
pub use error::{Error, Result};
pub use flow::{max_weight_closure, Capacity, Closure, ClosureInstance, FlowNetwork, MaxFlow};
pub use matroid::{MatroidOracle, MatroidSpec, RankResult};
pub use oracle::{brute_optimum, BruteForceReport, Constraint};
pub use rational::Rational;
pub use setfn::{
    check_monotone_supermodular, check_monotone_supermodular_with_cap, density,
    lovasz_coefficients, lovasz_extension, FunctionKind, LovaszCoefficients, PropertyReport,
    SetFunctionOracle,
};
pub use subset::{GroundSet, Subset};
