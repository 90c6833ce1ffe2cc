#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use supdense::{
    DependencyDigraph, KnapsackConstraint, MatroidOracle, Rational, SetFunctionOracle, Subset,
};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with integer weights drawn from `1..=max_w` (unweighted when `max_w == 1`).
pub fn random_graph(rng: &mut TestRng, n: usize, p: f64, max_w: u64) -> SetFunctionOracle {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, rng.gen_range(1..=max_w)));
            }
        }
    }
    if max_w == 1 {
        let plain: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        SetFunctionOracle::graph(n, &plain).unwrap()
    } else {
        SetFunctionOracle::weighted_graph(n, &edges).unwrap()
    }
}

/// Cardinality matroid with `r ∈ 0..=n`, or a partition matroid with at most
/// four blocks and random limits.
pub fn random_matroid(rng: &mut TestRng, n: usize) -> MatroidOracle {
    if rng.gen_bool(0.5) {
        MatroidOracle::cardinality(n, rng.gen_range(0..=n)).unwrap()
    } else {
        random_partition(rng, n)
    }
}

pub fn random_partition(rng: &mut TestRng, n: usize) -> MatroidOracle {
    let k = rng.gen_range(1..=4.min(n));
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let mut blocks = vec![Vec::new(); k];
    // every block gets at least one element
    for (i, id) in ids.into_iter().enumerate() {
        let b = if i < k { i } else { rng.gen_range(0..k) };
        blocks[b].push(id);
    }
    let limits = blocks.iter().map(|b| rng.gen_range(0..=b.len())).collect();
    MatroidOracle::partition(n, blocks, limits).unwrap()
}

pub fn random_subset(rng: &mut TestRng, n: usize, max_size: usize) -> Subset {
    let size = rng.gen_range(0..=max_size.min(n));
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    Subset::from_ids(n, ids.into_iter().take(size)).unwrap()
}

pub fn random_mask_subset(rng: &mut TestRng, n: usize, p: f64) -> Subset {
    Subset::from_ids(n, (0..n).filter(|_| rng.gen_bool(p))).unwrap()
}

pub fn random_knapsack(rng: &mut TestRng, n: usize) -> KnapsackConstraint {
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=7)).collect();
    let total: u64 = weights.iter().sum();
    let k = rng.gen_range(0..=total);
    KnapsackConstraint::new(weights, k)
}

/// Up to `max_arcs` random arcs, optionally acyclic (tail < head).
pub fn random_digraph(
    rng: &mut TestRng,
    n: usize,
    max_arcs: usize,
    acyclic: bool,
) -> DependencyDigraph {
    let m = rng.gen_range(0..=max_arcs);
    let mut arcs = Vec::with_capacity(m);
    while arcs.len() < m && n > 1 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || (acyclic && a > b) {
            continue;
        }
        arcs.push((a, b));
    }
    DependencyDigraph::new(n, arcs).unwrap()
}

/// `f(S) = Σ_{T ⊆ S} c_T` with nonnegative coefficients on a few random sets
/// `T` of size >= 2 (plus small singleton terms): monotone and supermodular.
pub fn random_supermodular_table(rng: &mut TestRng, n: usize) -> SetFunctionOracle {
    let size = 1usize << n;
    let mut coeff = vec![Rational::ZERO; size];
    for v in 0..n {
        if rng.gen_bool(0.3) {
            coeff[1 << v] = Rational::new(rng.gen_range(0..4), rng.gen_range(1..4));
        }
    }
    let terms = if n < 2 {
        0
    } else {
        rng.gen_range(1..=2 * n + 1)
    };
    for _ in 0..terms {
        let mut t = 0usize;
        while (t as u64).count_ones() < 2 {
            t = rng.gen_range(0..size);
        }
        coeff[t] += Rational::new(rng.gen_range(1..6), rng.gen_range(1..4));
    }
    // zeta transform: f(S) = Σ_{T ⊆ S} c_T
    let mut f = coeff;
    for v in 0..n {
        for s in 0..size {
            if s >> v & 1 == 1 {
                let add = f[s ^ (1 << v)];
                f[s] += add;
            }
        }
    }
    SetFunctionOracle::table(n, f).unwrap()
}

pub fn random_point(rng: &mut TestRng, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let q = rng.gen_range(1..=12);
            Rational::new(rng.gen_range(0..=q), q)
        })
        .collect()
}

/// Brute-force minimum `|T|` with `T ∩ a = ∅` and `a ∪ T` co-matroid feasible.
pub fn brute_min_extension(m: &MatroidOracle, a: &Subset) -> usize {
    let n = m.n();
    let a_mask = a.to_mask();
    (0u64..1 << n)
        .filter(|t| t & a_mask == 0)
        .filter(|t| m.is_feasible_comatroid(&Subset::from_mask(n, a_mask | t)))
        .map(|t| t.count_ones() as usize)
        .min()
        .expect("U is always feasible")
}
