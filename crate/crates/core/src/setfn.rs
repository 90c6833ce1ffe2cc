//! Set-function oracles, the density function, validators and the Lovász
//! extension.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::{GroundSet, Subset};

/// Largest ground set an explicit value table may describe.
pub const MAX_TABLE_ELEMENTS: usize = 24;

/// Default element cap for the exhaustive validators.
pub const DEFAULT_VALIDATION_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionKind {
    GraphEdgeCount,
    WeightedGraphEdgeCount,
    ExplicitTable,
}

#[derive(Debug, Clone)]
enum Payload {
    Graph {
        edges: Vec<Edge>,
        weighted: bool,
        /// Per vertex, the bitmask of neighbors (only when n <= 64).
        nbr_masks: Option<Vec<u64>>,
    },
    Table(Vec<Rational>),
}

/// A nonnegative set function `f` with `f(∅) = 0`.
///
/// Graph-backed oracles compute the (weighted) number of edges of the induced
/// subgraph, which is monotone and supermodular. Table-backed oracles are
/// arbitrary and should be validated with [`check_monotone_supermodular`]
/// before they are handed to the solvers.
#[derive(Debug, Clone)]
pub struct SetFunctionOracle {
    ground: GroundSet,
    payload: Payload,
}

impl SetFunctionOracle {
    /// Unweighted graph; `f(S)` counts induced edges.
    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let edges: Vec<Edge> = edges
            .iter()
            .map(|&(u, v)| Edge { u, v, weight: 1 })
            .collect();
        Self::build_graph(n, edges, false)
    }

    /// Weighted graph; `f(S)` sums the weights of induced edges.
    pub fn weighted_graph(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let edges: Vec<Edge> = edges
            .iter()
            .map(|&(u, v, weight)| Edge { u, v, weight })
            .collect();
        Self::build_graph(n, edges, true)
    }

    fn build_graph(n: usize, edges: Vec<Edge>, weighted: bool) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) has an endpoint outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidInput(format!("self-loop on vertex {}", e.u)));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidInput(format!(
                    "duplicate edge ({}, {})",
                    e.u, e.v
                )));
            }
        }
        let nbr_masks = (n <= 64).then(|| {
            let mut masks = vec![0u64; n];
            for e in &edges {
                masks[e.u] |= 1 << e.v;
                masks[e.v] |= 1 << e.u;
            }
            masks
        });
        Ok(SetFunctionOracle {
            ground,
            payload: Payload::Graph {
                edges,
                weighted,
                nbr_masks,
            },
        })
    }

    /// Explicit table indexed by subset bitmask; `values.len()` must be `2^n`.
    pub fn table(n: usize, values: Vec<Rational>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if n > MAX_TABLE_ELEMENTS {
            return Err(Error::CapExceeded {
                n,
                cap: MAX_TABLE_ELEMENTS,
            });
        }
        if values.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "table for n = {n} needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        if !values[0].is_zero() {
            return Err(Error::InvalidInput(format!(
                "f(empty set) must be 0, got {}",
                values[0]
            )));
        }
        if let Some(mask) = values.iter().position(Rational::is_negative) {
            return Err(Error::InvalidInput(format!(
                "table value for mask {mask} is negative"
            )));
        }
        Ok(SetFunctionOracle {
            ground,
            payload: Payload::Table(values),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_mut(&mut self) -> &mut GroundSet {
        &mut self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn kind(&self) -> FunctionKind {
        match &self.payload {
            Payload::Graph {
                weighted: false, ..
            } => FunctionKind::GraphEdgeCount,
            Payload::Graph { weighted: true, .. } => FunctionKind::WeightedGraphEdgeCount,
            Payload::Table(_) => FunctionKind::ExplicitTable,
        }
    }

    pub fn is_graph(&self) -> bool {
        matches!(self.payload, Payload::Graph { .. })
    }

    /// Edges of a graph oracle; `None` for tables.
    pub fn edges(&self) -> Option<&[Edge]> {
        match &self.payload {
            Payload::Graph { edges, .. } => Some(edges),
            Payload::Table(_) => None,
        }
    }

    /// Graph oracles are supermodular and monotone by construction.
    pub fn declares_monotone_supermodular(&self) -> bool {
        self.is_graph()
    }

    pub fn eval(&self, s: &Subset) -> Rational {
        assert_eq!(
            s.universe_size(),
            self.n(),
            "subset over a different universe"
        );
        match &self.payload {
            Payload::Graph { edges, .. } => Rational::from_int(
                edges
                    .iter()
                    .filter(|e| s.contains(e.u) && s.contains(e.v))
                    .map(|e| e.weight as i128)
                    .sum(),
            ),
            Payload::Table(values) => values[s.to_mask() as usize],
        }
    }

    /// Evaluates on a bitmask. Requires `n <= 64`.
    pub fn eval_mask(&self, mask: u64) -> Rational {
        match &self.payload {
            Payload::Graph {
                edges,
                weighted,
                nbr_masks,
            } => {
                let nbr = nbr_masks
                    .as_ref()
                    .expect("bitmask evaluation needs n <= 64");
                if !weighted {
                    let twice: u32 = ones(mask).map(|v| (nbr[v] & mask).count_ones()).sum();
                    return Rational::from_int(twice as i128 / 2);
                }
                Rational::from_int(
                    edges
                        .iter()
                        .filter(|e| mask >> e.u & 1 == 1 && mask >> e.v & 1 == 1)
                        .map(|e| e.weight as i128)
                        .sum(),
                )
            }
            Payload::Table(values) => values[mask as usize],
        }
    }

    /// All `2^n` values indexed by bitmask.
    pub fn value_table(&self, cap: usize) -> Result<Vec<Rational>> {
        let n = self.n();
        if n > cap {
            return Err(Error::CapExceeded { n, cap });
        }
        match &self.payload {
            Payload::Table(values) => Ok(values.clone()),
            Payload::Graph { edges, .. } => {
                // f(mask) = f(mask - v) + weight of edges from v into mask - v,
                // where v is the lowest member.
                let mut wmat = vec![vec![0i128; n]; n];
                for e in edges {
                    wmat[e.u][e.v] = e.weight as i128;
                    wmat[e.v][e.u] = e.weight as i128;
                }
                let mut out = vec![0i128; 1usize << n];
                for mask in 1usize..out.len() {
                    let v = mask.trailing_zeros() as usize;
                    let rest = mask & (mask - 1);
                    let gain: i128 = ones(rest as u64).map(|u| wmat[v][u]).sum();
                    out[mask] = out[rest] + gain;
                }
                Ok(out.into_iter().map(Rational::from_int).collect())
            }
        }
    }
}

pub(crate) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// `d(S) = f(S) / |S|`.
pub fn density(f: &SetFunctionOracle, s: &Subset) -> Result<Rational> {
    if s.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(f.eval(s) / Rational::from(s.len()))
}

/// Outcome of the exhaustive monotonicity/supermodularity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub monotone: bool,
    pub supermodular: bool,
    /// A pair `(S, S + v)` with `f(S) > f(S + v)`.
    pub monotone_witness: Option<(Subset, Subset)>,
    /// A pair `(A, B)` with `f(A) + f(B) > f(A ∪ B) + f(A ∩ B)`.
    pub supermodular_witness: Option<(Subset, Subset)>,
}

impl PropertyReport {
    /// The first violating pair, preferring a supermodularity violation.
    pub fn witness(&self) -> Option<&(Subset, Subset)> {
        self.supermodular_witness
            .as_ref()
            .or(self.monotone_witness.as_ref())
    }

    pub fn is_valid(&self) -> bool {
        self.monotone && self.supermodular
    }
}

pub fn check_monotone_supermodular(f: &SetFunctionOracle) -> Result<PropertyReport> {
    check_monotone_supermodular_with_cap(f, DEFAULT_VALIDATION_CAP)
}

/// Exhaustive check. Supermodularity is tested through the equivalent local
/// condition `f(S+u) + f(S+v) <= f(S+u+v) + f(S)` for all `S` and distinct
/// `u, v` outside `S`; a failing `(S+u, S+v)` is a violating pair.
pub fn check_monotone_supermodular_with_cap(
    f: &SetFunctionOracle,
    cap: usize,
) -> Result<PropertyReport> {
    let n = f.n();
    let table = f.value_table(cap)?;
    let mut monotone_witness = None;
    let mut supermodular_witness = None;
    'outer: for s in 0..table.len() {
        for u in (0..n).filter(|&u| s >> u & 1 == 0) {
            let su = s | 1 << u;
            if monotone_witness.is_none() && table[s] > table[su] {
                monotone_witness = Some((
                    Subset::from_mask(n, s as u64),
                    Subset::from_mask(n, su as u64),
                ));
            }
            if supermodular_witness.is_none() {
                for v in (u + 1..n).filter(|&v| s >> v & 1 == 0) {
                    let sv = s | 1 << v;
                    if table[su] + table[sv] > table[su | sv] + table[s] {
                        supermodular_witness = Some((
                            Subset::from_mask(n, su as u64),
                            Subset::from_mask(n, sv as u64),
                        ));
                        break;
                    }
                }
            }
            if monotone_witness.is_some() && supermodular_witness.is_some() {
                break 'outer;
            }
        }
    }
    Ok(PropertyReport {
        monotone: monotone_witness.is_none(),
        supermodular: supermodular_witness.is_none(),
        monotone_witness,
        supermodular_witness,
    })
}

/// Decomposition `x = Σ λ_i · 1_{S_i}` over the nested level sets of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LovaszCoefficients {
    /// Elements sorted by non-increasing coordinate, ties by id ascending.
    pub order: Vec<usize>,
    /// `λ_0 ..= λ_n`; nonnegative and summing to one.
    pub lambdas: Vec<Rational>,
    /// `S_0 = ∅ ⊂ S_1 ⊂ … ⊂ S_n = U`, where `S_i` holds the first `i` elements of `order`.
    pub prefixes: Vec<Subset>,
}

impl LovaszCoefficients {
    /// Recomputes `Σ λ_i · 1_{S_i}` coordinate-wise.
    pub fn reconstruct(&self) -> Vec<Rational> {
        let n = self.order.len();
        let mut x = vec![Rational::ZERO; n];
        for (lambda, s) in self.lambdas.iter().zip(&self.prefixes) {
            for id in s.iter() {
                x[id] += *lambda;
            }
        }
        x
    }
}

pub fn lovasz_coefficients(x: &[Rational]) -> Result<LovaszCoefficients> {
    let n = x.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty point".into()));
    }
    for (index, xi) in x.iter().enumerate() {
        if xi.is_negative() || *xi > Rational::ONE {
            return Err(Error::CoordinateOutOfRange {
                index,
                value: xi.to_string(),
            });
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[b].cmp(&x[a]).then(a.cmp(&b)));

    let mut lambdas = Vec::with_capacity(n + 1);
    lambdas.push(Rational::ONE - x[order[0]]);
    for w in order.windows(2) {
        lambdas.push(x[w[0]] - x[w[1]]);
    }
    lambdas.push(x[order[n - 1]]);

    let mut prefixes = Vec::with_capacity(n + 1);
    let mut cur = Subset::empty(n);
    prefixes.push(cur.clone());
    for &id in &order {
        cur.insert(id);
        prefixes.push(cur.clone());
    }
    Ok(LovaszCoefficients {
        order,
        lambdas,
        prefixes,
    })
}

/// `L_f(x) = Σ λ_i f(S_i)`.
pub fn lovasz_extension(f: &SetFunctionOracle, x: &[Rational]) -> Result<Rational> {
    if x.len() != f.n() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, ground set has {}",
            x.len(),
            f.n()
        )));
    }
    let c = lovasz_coefficients(x)?;
    Ok(c.lambdas
        .iter()
        .zip(&c.prefixes)
        .filter(|(l, _)| !l.is_zero())
        .map(|(l, s)| *l * f.eval(s))
        .sum())
}
