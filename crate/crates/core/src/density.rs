//! Exact density maximization.
//!
//! Everything here reduces to the excess problem
//! `max f(S) + bonus(S) − α|S|` over sets that contain a forced set, avoid an
//! excluded set and (optionally) are closed under dependency arcs. For graph
//! oracles the excess problem is a single max-weight closure; otherwise it is
//! enumerated. A Dinkelbach loop on top turns the excess solver into an exact
//! maximizer of `f(S)/|S|`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::{max_weight_closure, ClosureInstance};
use crate::rational::Rational;
use crate::setfn::{density, ones, SetFunctionOracle};
use crate::subset::Subset;

/// Largest number of free elements the enumeration engine will handle.
pub const BRUTE_FORCE_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Flow,
    #[serde(rename = "brute")]
    BruteForce,
}

impl Engine {
    /// Flow for graph oracles, enumeration for everything else.
    pub fn auto(f: &SetFunctionOracle) -> Engine {
        if f.is_graph() {
            Engine::Flow
        } else {
            Engine::BruteForce
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Flow => "flow",
            Engine::BruteForce => "brute",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityResult {
    pub best_set: Subset,
    pub best_density: Rational,
    pub engine: Engine,
    /// Number of excess maximizations performed.
    pub iterations: usize,
}

/// Parameters of one excess maximization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcessQuery {
    pub alpha: Rational,
    pub forced: Subset,
    pub excluded: Subset,
    /// Per-element nonnegative linear bonus added to `f`.
    pub bonuses: Vec<u64>,
}

impl ExcessQuery {
    pub fn new(n: usize, alpha: Rational) -> Self {
        ExcessQuery {
            alpha,
            forced: Subset::empty(n),
            excluded: Subset::empty(n),
            bonuses: vec![0; n],
        }
    }

    pub fn forced(mut self, s: Subset) -> Self {
        self.forced = s;
        self
    }

    pub fn excluded(mut self, s: Subset) -> Self {
        self.excluded = s;
        self
    }

    pub fn bonuses(mut self, b: Vec<u64>) -> Self {
        self.bonuses = b;
        self
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.forced.universe_size() != n
            || self.excluded.universe_size() != n
            || self.bonuses.len() != n
        {
            return Err(Error::InvalidInput(format!(
                "excess query does not match a ground set of {n} elements"
            )));
        }
        if !self.forced.is_disjoint(&self.excluded) {
            return Err(Error::InvalidInput(
                "forced and excluded sets overlap".into(),
            ));
        }
        Ok(())
    }

    fn bonus_of(&self, s: &Subset) -> Rational {
        Rational::from_int(s.iter().map(|v| self.bonuses[v] as i128).sum())
    }
}

/// Maximizer of an excess query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excess {
    pub set: Subset,
    pub value: Rational,
}

/// Maximal maximizer of `f(S) + bonus(S) − α|S|` subject to the query's
/// forced/excluded sets, using the engine picked by [`Engine::auto`].
pub fn maximize_excess(f: &SetFunctionOracle, q: &ExcessQuery) -> Result<Excess> {
    maximize_excess_with(f, q, Engine::auto(f))
}

pub fn maximize_excess_with(
    f: &SetFunctionOracle,
    q: &ExcessQuery,
    engine: Engine,
) -> Result<Excess> {
    maximize_excess_closed(f, q, &[], engine)
}

/// Excess maximization restricted to sets closed under `arcs`
/// (`(a, b)`: `a ∈ S ⟹ b ∈ S`).
pub(crate) fn maximize_excess_closed(
    f: &SetFunctionOracle,
    q: &ExcessQuery,
    arcs: &[(usize, usize)],
    engine: Engine,
) -> Result<Excess> {
    let n = f.n();
    q.validate(n)?;
    let (forced, excluded) = propagate(n, &q.forced, &q.excluded, arcs)?;
    match engine {
        Engine::Flow => excess_by_flow(f, q, &forced, &excluded, arcs),
        Engine::BruteForce => excess_by_enumeration(f, q, &forced, &excluded, arcs),
    }
}

/// Pushes `forced` forward and `excluded` backward along the arcs.
fn propagate(
    n: usize,
    forced: &Subset,
    excluded: &Subset,
    arcs: &[(usize, usize)],
) -> Result<(Subset, Subset)> {
    if let Some(&(a, b)) = arcs.iter().find(|&&(a, b)| a >= n || b >= n) {
        return Err(Error::InvalidInput(format!(
            "dependency arc ({a}, {b}) outside 0..{n}"
        )));
    }
    let mut forced = forced.clone();
    let mut excluded = excluded.clone();
    if arcs.is_empty() {
        return Ok((forced, excluded));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in arcs {
            if forced.contains(a) && !forced.contains(b) {
                forced.insert(b);
                changed = true;
            }
            if excluded.contains(b) && !excluded.contains(a) {
                excluded.insert(a);
                changed = true;
            }
        }
    }
    if !forced.is_disjoint(&excluded) {
        return Err(Error::InfeasibleInstance(
            "dependencies force an excluded element".into(),
        ));
    }
    Ok((forced, excluded))
}

fn excess_by_flow(
    f: &SetFunctionOracle,
    q: &ExcessQuery,
    forced: &Subset,
    excluded: &Subset,
    arcs: &[(usize, usize)],
) -> Result<Excess> {
    let edges = f.edges().ok_or(Error::EngineMismatch)?;
    let n = f.n();
    let (p, den) = (q.alpha.numer(), q.alpha.denom());
    let scale = |x: i128, by: i128| x.checked_mul(by).ok_or(Error::Overflow("excess weights"));

    // Forced elements are contracted into the source: their contribution is a
    // constant, and edges into them become per-vertex bonuses.
    let mut pos = vec![usize::MAX; n];
    let mut free = Vec::new();
    for (v, slot) in pos.iter_mut().enumerate() {
        if !forced.contains(v) && !excluded.contains(v) {
            *slot = free.len();
            free.push(v);
        }
    }
    let mut vertex_gain: Vec<i128> = free.iter().map(|&v| q.bonuses[v] as i128).collect();
    let mut constant_gain = forced.iter().map(|v| q.bonuses[v] as i128).sum::<i128>();
    let mut weights = Vec::with_capacity(free.len() + edges.len());
    let mut closure_arcs = Vec::new();
    let mut edge_nodes = Vec::new();
    for e in edges {
        let w = e.weight as i128;
        match (forced.contains(e.u), forced.contains(e.v)) {
            (true, true) => constant_gain += w,
            (true, false) if pos[e.v] != usize::MAX => vertex_gain[pos[e.v]] += w,
            (false, true) if pos[e.u] != usize::MAX => vertex_gain[pos[e.u]] += w,
            (false, false) if pos[e.u] != usize::MAX && pos[e.v] != usize::MAX => {
                edge_nodes.push((pos[e.u], pos[e.v], w));
            }
            _ => {}
        }
    }
    for g in &vertex_gain {
        weights.push(scale(*g, den)? - p);
    }
    for (k, &(a, b, w)) in edge_nodes.iter().enumerate() {
        let node = free.len() + k;
        weights.push(scale(w, den)?);
        closure_arcs.push((node, a));
        closure_arcs.push((node, b));
    }
    for &(a, b) in arcs {
        if pos[a] != usize::MAX && pos[b] != usize::MAX {
            closure_arcs.push((pos[a], pos[b]));
        }
    }

    let closure = max_weight_closure(&ClosureInstance::new(weights, closure_arcs)?)?;
    let mut set = forced.clone();
    for (k, &v) in free.iter().enumerate() {
        if closure.closed_set[k] {
            set.insert(v);
        }
    }
    let constant = scale(constant_gain, den)? - p * forced.len() as i128;
    let value = Rational::new(constant + closure.weight, den);
    Ok(Excess { set, value })
}

/// Larger value wins, then larger cardinality, then lexicographically smaller.
fn better(value: Rational, set: &Subset, best: &Option<Excess>) -> bool {
    match best {
        None => true,
        Some(b) => match value.cmp(&b.value) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => match set.len().cmp(&b.set.len()) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => set.lex_cmp(&b.set) == Ordering::Less,
            },
        },
    }
}

fn excess_by_enumeration(
    f: &SetFunctionOracle,
    q: &ExcessQuery,
    forced: &Subset,
    excluded: &Subset,
    arcs: &[(usize, usize)],
) -> Result<Excess> {
    let n = f.n();
    let free: Vec<usize> = (0..n)
        .filter(|&v| !forced.contains(v) && !excluded.contains(v))
        .collect();
    if free.len() > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            n: free.len(),
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut best: Option<Excess> = None;
    for local in 0u64..1 << free.len() {
        let mut s = forced.clone();
        for i in ones(local) {
            s.insert(free[i]);
        }
        if !arcs.iter().all(|&(a, b)| !s.contains(a) || s.contains(b)) {
            continue;
        }
        let value = f.eval(&s) + q.bonus_of(&s) - q.alpha * Rational::from(s.len());
        if better(value, &s, &best) {
            best = Some(Excess { set: s, value });
        }
    }
    Ok(best.expect("the forced set itself is always a candidate"))
}

/// Dinkelbach iteration on `ratio`, starting from a nonempty feasible
/// incumbent. `solve(α)` must return the maximal maximizer of
/// `numerator(S) − α|S|` over feasible sets.
pub(crate) fn dinkelbach<R, S>(
    start: Subset,
    ratio: R,
    mut solve: S,
) -> Result<(Subset, Rational, usize)>
where
    R: Fn(&Subset) -> Result<Rational>,
    S: FnMut(Rational) -> Result<Excess>,
{
    let mut incumbent = start;
    let mut alpha = ratio(&incumbent)?;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let step = solve(alpha)?;
        if step.value.is_zero() || step.value.is_negative() {
            if !step.set.is_empty() && step.value.is_zero() {
                incumbent = step.set;
            }
            return Ok((incumbent, alpha, iterations));
        }
        let next = ratio(&step.set)?;
        if next <= alpha {
            // positive excess implies a strictly larger ratio; anything else is a bug
            return Err(Error::InvariantViolated(format!(
                "parametric step did not improve: {next} after {alpha}"
            )));
        }
        incumbent = step.set;
        alpha = next;
    }
}

/// Densest set containing `forced` (any nonempty set when `forced` is empty).
pub fn densest_subset(f: &SetFunctionOracle, forced: &Subset) -> Result<DensityResult> {
    densest_subset_with(f, forced, Engine::auto(f))
}

pub fn densest_subset_with(
    f: &SetFunctionOracle,
    forced: &Subset,
    engine: Engine,
) -> Result<DensityResult> {
    let n = f.n();
    let start = if forced.is_empty() {
        best_singleton(n, |v| Ok(f.eval(&Subset::from_ids(n, [v])?)))?
    } else {
        forced.clone()
    };
    let (best_set, best_density, iterations) = dinkelbach(
        start,
        |s| density(f, s),
        |alpha| {
            let q = ExcessQuery::new(n, alpha).forced(forced.clone());
            maximize_excess_with(f, &q, engine)
        },
    )?;
    Ok(DensityResult {
        best_set,
        best_density,
        engine,
        iterations,
    })
}

/// Lowest-id singleton with the largest score.
fn best_singleton(n: usize, score: impl Fn(usize) -> Result<Rational>) -> Result<Subset> {
    let mut best: Option<(usize, Rational)> = None;
    for v in 0..n {
        let s = score(v)?;
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((v, s));
        }
    }
    let (v, _) = best.ok_or(Error::GroundExhausted)?;
    Subset::from_ids(n, [v])
}

/// The set `X` disjoint from `d` maximizing `(f(d + X) − f(d)) / |X|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marginal {
    pub set: Subset,
    pub marginal_density: Rational,
}

pub fn marginal_density(f: &SetFunctionOracle, d: &Subset, x: &Subset) -> Result<Rational> {
    if x.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok((f.eval(&d.union(x)) - f.eval(d)) / Rational::from(x.len()))
}

pub fn best_marginal(f: &SetFunctionOracle, d: &Subset) -> Result<Marginal> {
    best_marginal_with(f, d, Engine::auto(f))
}

pub fn best_marginal_with(f: &SetFunctionOracle, d: &Subset, engine: Engine) -> Result<Marginal> {
    let n = f.n();
    if d.is_full() {
        return Err(Error::GroundExhausted);
    }
    match engine {
        Engine::Flow => {
            let edges = f.edges().ok_or(Error::EngineMismatch)?;
            // f(d + X) − f(d) = f(X) + Σ_{v∈X} (weight of edges from v into d)
            let mut bonuses = vec![0u64; n];
            for e in edges {
                match (d.contains(e.u), d.contains(e.v)) {
                    (true, false) => bonuses[e.v] += e.weight,
                    (false, true) => bonuses[e.u] += e.weight,
                    _ => {}
                }
            }
            let outside = d.complement();
            let start = best_singleton_in(&outside, |v| Rational::from(bonuses[v]))?;
            let (set, marginal_density, _) = dinkelbach(
                start,
                |x| marginal_density(f, d, x),
                |alpha| {
                    let q = ExcessQuery::new(n, alpha)
                        .excluded(d.clone())
                        .bonuses(bonuses.clone());
                    maximize_excess_with(f, &q, Engine::Flow)
                },
            )?;
            Ok(Marginal {
                set,
                marginal_density,
            })
        }
        Engine::BruteForce => {
            let free = d.complement().ids();
            if free.len() > BRUTE_FORCE_CAP {
                return Err(Error::CapExceeded {
                    n: free.len(),
                    cap: BRUTE_FORCE_CAP,
                });
            }
            let base = f.eval(d);
            let mut best: Option<Excess> = None;
            for local in 1u64..1 << free.len() {
                let mut x = Subset::empty(n);
                for i in ones(local) {
                    x.insert(free[i]);
                }
                let value = (f.eval(&d.union(&x)) - base) / Rational::from(x.len());
                if better(value, &x, &best) {
                    best = Some(Excess { set: x, value });
                }
            }
            let best = best.expect("d is not the whole ground set");
            Ok(Marginal {
                set: best.set,
                marginal_density: best.value,
            })
        }
    }
}

fn best_singleton_in(pool: &Subset, score: impl Fn(usize) -> Rational) -> Result<Subset> {
    let mut best: Option<(usize, Rational)> = None;
    for v in pool.iter() {
        let s = score(v);
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((v, s));
        }
    }
    let (v, _) = best.ok_or(Error::GroundExhausted)?;
    Subset::from_ids(pool.universe_size(), [v])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    fn set(n: usize, ids: &[usize]) -> Subset {
        Subset::from_ids(n, ids.iter().copied()).unwrap()
    }

    fn k(n: usize) -> SetFunctionOracle {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        SetFunctionOracle::graph(n, &e).unwrap()
    }

    fn both_engines(f: &SetFunctionOracle, q: &ExcessQuery) -> Excess {
        let a = maximize_excess_with(f, q, Engine::Flow).unwrap();
        let b = maximize_excess_with(f, q, Engine::BruteForce).unwrap();
        assert_eq!(a, b);
        a
    }

    #[test]
    fn excess_examples() {
        let k3 = k(3);
        let e = both_engines(&k3, &ExcessQuery::new(3, Rational::ONE));
        assert_eq!((e.set.ids(), e.value), (vec![0, 1, 2], Rational::ZERO));

        let e = both_engines(&k3, &ExcessQuery::new(3, Rational::from_int(2)));
        assert!(e.set.is_empty());
        assert_eq!(e.value, Rational::ZERO);

        let path = SetFunctionOracle::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let e = both_engines(&path, &ExcessQuery::new(3, r(1, 2)));
        assert_eq!((e.set.ids(), e.value), (vec![0, 1, 2], r(1, 2)));
    }

    #[test]
    fn path_excess_by_hand_enumeration() {
        // g(1/2, S) = |E(S)| − |S|/2 over the 8 subsets of the path 0–1–2
        let path = SetFunctionOracle::graph(3, &[(0, 1), (1, 2)]).unwrap();
        let best = (0u64..8)
            .map(|m| path.eval_mask(m) - r(1, 2) * Rational::from(m.count_ones() as usize))
            .max()
            .unwrap();
        assert_eq!(best, r(1, 2));
    }

    #[test]
    fn excess_respects_forced_excluded_and_bonuses() {
        let f = SetFunctionOracle::weighted_graph(4, &[(0, 1, 2), (1, 2, 1), (2, 3, 4)]).unwrap();
        let q = ExcessQuery::new(4, r(3, 2))
            .forced(set(4, &[0]))
            .excluded(set(4, &[3]))
            .bonuses(vec![0, 0, 1, 5]);
        let e = both_engines(&f, &q);
        assert!(e.set.contains(0) && !e.set.contains(3));
    }

    #[test]
    fn excess_query_validation() {
        let f = k(3);
        let q = ExcessQuery::new(3, Rational::ONE)
            .forced(set(3, &[0]))
            .excluded(set(3, &[0]));
        assert!(matches!(
            maximize_excess(&f, &q),
            Err(Error::InvalidInput(_))
        ));
        let q = ExcessQuery::new(2, Rational::ONE);
        assert!(maximize_excess(&f, &q).is_err());
    }

    #[test]
    fn flow_engine_rejects_tables() {
        let t = SetFunctionOracle::table(1, vec![Rational::ZERO; 2]).unwrap();
        let q = ExcessQuery::new(1, Rational::ONE);
        assert_eq!(
            maximize_excess_with(&t, &q, Engine::Flow),
            Err(Error::EngineMismatch)
        );
        assert_eq!(
            best_marginal_with(&t, &Subset::empty(1), Engine::Flow),
            Err(Error::EngineMismatch)
        );
    }

    #[test]
    fn brute_cap() {
        let f = SetFunctionOracle::graph(25, &[(0, 1)]).unwrap();
        let q = ExcessQuery::new(25, Rational::ONE);
        assert_eq!(
            maximize_excess_with(&f, &q, Engine::BruteForce),
            Err(Error::CapExceeded { n: 25, cap: 24 })
        );
        // forcing one element brings the free count under the cap
        let q = q.forced(set(25, &[24]));
        assert!(maximize_excess_with(&f, &q, Engine::BruteForce).is_ok());
    }

    #[test]
    fn densest_examples() {
        let res = densest_subset(&k(4), &Subset::empty(4)).unwrap();
        assert_eq!(res.best_density, r(3, 2));
        assert_eq!(res.best_set.ids(), vec![0, 1, 2, 3]);
        assert_eq!(res.engine, Engine::Flow);

        let star = SetFunctionOracle::graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let res = densest_subset(&star, &Subset::empty(4)).unwrap();
        assert_eq!(res.best_density, r(3, 4));
        assert_eq!(res.best_set.ids(), vec![0, 1, 2, 3]);

        let tri_iso = SetFunctionOracle::graph(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let res = densest_subset(&tri_iso, &set(4, &[3])).unwrap();
        assert_eq!(res.best_density, r(3, 4));
        assert_eq!(res.best_set.ids(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn densest_by_enumeration_oracles() {
        // star: max over all 15 nonempty subsets
        let star = SetFunctionOracle::graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let best = (1u64..16)
            .map(|m| density(&star, &Subset::from_mask(4, m)).unwrap())
            .max()
            .unwrap();
        assert_eq!(best, r(3, 4));
        // triangle + isolated vertex 3, sets containing 3
        let tri_iso = SetFunctionOracle::graph(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let best = (1u64..16)
            .filter(|m| m & 0b1000 != 0)
            .map(|m| density(&tri_iso, &Subset::from_mask(4, m)).unwrap())
            .max()
            .unwrap();
        assert_eq!(best, r(3, 4));
    }

    #[test]
    fn densest_engines_agree_on_tables() {
        let f = k(4);
        let table = SetFunctionOracle::table(4, f.value_table(16).unwrap()).unwrap();
        let a = densest_subset(&table, &Subset::empty(4)).unwrap();
        assert_eq!(a.engine, Engine::BruteForce);
        let b = densest_subset(&f, &Subset::empty(4)).unwrap();
        assert_eq!(a.best_set, b.best_set);
        assert_eq!(a.best_density, b.best_density);
    }

    #[test]
    fn edgeless_graph_density_zero_is_whole_set() {
        let f = SetFunctionOracle::graph(3, &[]).unwrap();
        let res = densest_subset(&f, &Subset::empty(3)).unwrap();
        assert_eq!(res.best_density, Rational::ZERO);
        assert!(res.best_set.is_full());
    }

    #[test]
    fn marginal_examples() {
        let k3 = k(3);
        for engine in [Engine::Flow, Engine::BruteForce] {
            let m = best_marginal_with(&k3, &set(3, &[0, 1]), engine).unwrap();
            assert_eq!(
                (m.set.ids(), m.marginal_density),
                (vec![2], Rational::from_int(2))
            );
        }

        let path = SetFunctionOracle::graph(3, &[(0, 1), (1, 2)]).unwrap();
        for engine in [Engine::Flow, Engine::BruteForce] {
            let m = best_marginal_with(&path, &Subset::empty(3), engine).unwrap();
            assert_eq!((m.set.ids(), m.marginal_density), (vec![0, 1, 2], r(2, 3)));
        }

        let two = SetFunctionOracle::graph(4, &[(0, 1), (2, 3)]).unwrap();
        for engine in [Engine::Flow, Engine::BruteForce] {
            let m = best_marginal_with(&two, &set(4, &[0, 1]), engine).unwrap();
            assert_eq!((m.set.ids(), m.marginal_density), (vec![2, 3], r(1, 2)));
        }
        // X ⊆ {2,3}: {2} → 0, {3} → 0, {2,3} → 1/2
        let outs: Vec<Rational> = [0b0100u64, 0b1000, 0b1100]
            .iter()
            .map(|&m| marginal_density(&two, &set(4, &[0, 1]), &Subset::from_mask(4, m)).unwrap())
            .collect();
        assert_eq!(outs, vec![Rational::ZERO, Rational::ZERO, r(1, 2)]);
    }

    #[test]
    fn marginal_on_full_set() {
        assert_eq!(
            best_marginal(&k(3), &Subset::full(3)),
            Err(Error::GroundExhausted)
        );
    }

    #[test]
    fn dinkelbach_certificate_holds() {
        let f = SetFunctionOracle::weighted_graph(
            6,
            &[
                (0, 1, 3),
                (1, 2, 1),
                (0, 2, 2),
                (3, 4, 5),
                (4, 5, 1),
                (2, 3, 1),
            ],
        )
        .unwrap();
        let res = densest_subset(&f, &Subset::empty(6)).unwrap();
        let cert = maximize_excess(&f, &ExcessQuery::new(6, res.best_density)).unwrap();
        assert_eq!(cert.value, Rational::ZERO);
        assert_eq!(cert.set, res.best_set);
    }
}
