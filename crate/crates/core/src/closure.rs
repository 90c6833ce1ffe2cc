//! Densest subset under dependency constraints.

use std::collections::BTreeSet;

use crate::density::{dinkelbach, maximize_excess_closed, DensityResult, Engine, ExcessQuery};
use crate::error::{Error, Result};
use crate::setfn::{density, SetFunctionOracle};
use crate::subset::{GroundSet, Subset};

/// Arcs `(a, b)` meaning `a ∈ S ⟹ b ∈ S`. Duplicates are collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyDigraph {
    ground: GroundSet,
    arcs: Vec<(usize, usize)>,
}

impl DependencyDigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut uniq = BTreeSet::new();
        for (a, b) in arcs {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "dependency arc ({a}, {b}) outside 0..{n}"
                )));
            }
            uniq.insert((a, b));
        }
        Ok(DependencyDigraph {
            ground,
            arcs: uniq.into_iter().collect(),
        })
    }

    /// Arcs from every element outside `a` to every element of `a`: the closed
    /// nonempty sets are then exactly the nonempty sets containing `a` (plus
    /// nonempty subsets of `a` itself, which only arise when `a` is all of U).
    pub fn requiring(a: &Subset) -> Result<Self> {
        let n = a.universe_size();
        let arcs = (0..n)
            .flat_map(|u| a.iter().filter(move |&v| v != u).map(move |v| (u, v)))
            .collect::<Vec<_>>();
        DependencyDigraph::new(n, arcs)
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn is_closed(&self, s: &Subset) -> bool {
        self.arcs
            .iter()
            .all(|&(a, b)| !s.contains(a) || s.contains(b))
    }
}

pub fn is_closed(d: &DependencyDigraph, s: &Subset) -> bool {
    d.is_closed(s)
}

/// Exact densest nonempty closed set.
pub fn densest_closure(f: &SetFunctionOracle, d: &DependencyDigraph) -> Result<DensityResult> {
    densest_closure_with(f, d, Engine::auto(f))
}

pub fn densest_closure_with(
    f: &SetFunctionOracle,
    d: &DependencyDigraph,
    engine: Engine,
) -> Result<DensityResult> {
    let n = f.n();
    if d.n() != n {
        return Err(Error::InvalidInput(format!(
            "digraph over {} elements, set function over {n}",
            d.n()
        )));
    }
    // U is always closed.
    let (best_set, best_density, iterations) = dinkelbach(
        Subset::full(n),
        |s| density(f, s),
        |alpha| maximize_excess_closed(f, &ExcessQuery::new(n, alpha), d.arcs(), engine),
    )?;
    debug_assert!(d.is_closed(&best_set));
    Ok(DensityResult {
        best_set,
        best_density,
        engine,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::densest_subset;
    use crate::rational::Rational;

    fn set(n: usize, ids: &[usize]) -> Subset {
        Subset::from_ids(n, ids.iter().copied()).unwrap()
    }

    #[test]
    fn closed_examples() {
        let d = DependencyDigraph::new(2, [(0, 1)]).unwrap();
        assert!(d.is_closed(&set(2, &[0, 1])));
        assert!(!d.is_closed(&set(2, &[0])));
        assert!(is_closed(&d, &Subset::empty(2)));
        assert!(is_closed(&d, &Subset::full(2)));
    }

    #[test]
    fn duplicates_collapse_and_range_checked() {
        let d = DependencyDigraph::new(3, [(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(d.arcs(), &[(0, 1), (1, 2)]);
        assert!(DependencyDigraph::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn star_with_dependencies() {
        let f = SetFunctionOracle::graph(3, &[(0, 1), (0, 2)]).unwrap();
        let d = DependencyDigraph::new(3, [(0, 1), (0, 2)]).unwrap();
        for engine in [Engine::Flow, Engine::BruteForce] {
            let res = densest_closure_with(&f, &d, engine).unwrap();
            assert_eq!(res.best_set.ids(), vec![0, 1, 2]);
            assert_eq!(res.best_density, Rational::new(2, 3));
        }
        // closed sets: ∅, {1}, {2}, {1,2}, {0,1,2}
        let closed: Vec<Vec<usize>> = (0u64..8)
            .map(|m| Subset::from_mask(3, m))
            .filter(|s| d.is_closed(s))
            .map(|s| s.ids())
            .collect();
        assert_eq!(closed.len(), 5);
    }

    #[test]
    fn no_arcs_matches_unconstrained() {
        let f = SetFunctionOracle::graph(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let d = DependencyDigraph::new(5, []).unwrap();
        let a = densest_closure(&f, &d).unwrap();
        let b = densest_subset(&f, &Subset::empty(5)).unwrap();
        assert_eq!((a.best_set, a.best_density), (b.best_set, b.best_density));
    }

    #[test]
    fn requiring_reduction_on_pendant_triangle() {
        let f = SetFunctionOracle::graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let a = set(4, &[3]);
        let d = DependencyDigraph::requiring(&a).unwrap();
        let res = densest_closure(&f, &d).unwrap();
        assert_eq!(res.best_density, Rational::ONE);
        assert_eq!(res.best_set.ids(), vec![0, 1, 2, 3]);
        let forced = densest_subset(&f, &a).unwrap();
        assert_eq!(forced.best_density, res.best_density);
    }

    #[test]
    fn cyclic_dependencies() {
        let f = SetFunctionOracle::graph(4, &[(0, 1), (2, 3)]).unwrap();
        // 0 -> 2 -> 0 ties vertices 0 and 2 together
        let d = DependencyDigraph::new(4, [(0, 2), (2, 0)]).unwrap();
        for engine in [Engine::Flow, Engine::BruteForce] {
            let res = densest_closure_with(&f, &d, engine).unwrap();
            assert!(d.is_closed(&res.best_set));
            assert_eq!(res.best_density, Rational::new(1, 2));
        }
    }
}
