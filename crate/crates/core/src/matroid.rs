//! Matroid oracles, rank, co-matroid feasibility and the extension problem.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};

/// Element cap for exhaustive axiom validation of explicit families.
pub const EXPLICIT_MATROID_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Cardinality {
        r: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        limits: Vec<usize>,
        block_of: Vec<usize>,
    },
    Explicit {
        independent: HashSet<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidOracle {
    ground: GroundSet,
    kind: Kind,
}

/// `rank(S)` together with a maximum independent subset of `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub witness: Subset,
}

impl MatroidOracle {
    /// `A` independent iff `|A| <= r`.
    pub fn cardinality(n: usize, r: usize) -> Result<Self> {
        Ok(MatroidOracle {
            ground: GroundSet::new(n)?,
            kind: Kind::Cardinality { r },
        })
    }

    /// `A` independent iff `|A ∩ blocks[i]| <= limits[i]` for every block.
    pub fn partition(n: usize, blocks: Vec<Vec<usize>>, limits: Vec<usize>) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if blocks.len() != limits.len() {
            return Err(Error::InvalidMatroid(format!(
                "{} blocks but {} limits",
                blocks.len(),
                limits.len()
            )));
        }
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &id in block {
                if id >= n {
                    return Err(Error::InvalidMatroid(format!(
                        "block {b} names element {id} outside 0..{n}"
                    )));
                }
                if block_of[id] != usize::MAX {
                    return Err(Error::InvalidMatroid(format!(
                        "element {id} appears in more than one block"
                    )));
                }
                block_of[id] = b;
            }
        }
        if let Some(id) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidMatroid(format!(
                "element {id} belongs to no block"
            )));
        }
        Ok(MatroidOracle {
            ground,
            kind: Kind::Partition {
                blocks,
                limits,
                block_of,
            },
        })
    }

    /// An explicitly listed family of independent sets, validated against the
    /// matroid axioms (requires `n <= 12`).
    pub fn explicit(n: usize, family: &[Vec<usize>]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        if n > EXPLICIT_MATROID_CAP {
            return Err(Error::CapExceeded {
                n,
                cap: EXPLICIT_MATROID_CAP,
            });
        }
        let mut independent = HashSet::with_capacity(family.len());
        for set in family {
            let s = Subset::from_ids(n, set.iter().copied())
                .map_err(|e| Error::InvalidMatroid(e.to_string()))?;
            independent.insert(s.to_mask());
        }
        validate_family(n, &independent)?;
        Ok(MatroidOracle {
            ground,
            kind: Kind::Explicit { independent },
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn is_independent(&self, s: &Subset) -> bool {
        assert_eq!(
            s.universe_size(),
            self.n(),
            "subset over a different universe"
        );
        match &self.kind {
            Kind::Cardinality { r } => s.len() <= *r,
            Kind::Partition {
                limits, block_of, ..
            } => {
                let mut counts = vec![0usize; limits.len()];
                s.iter().all(|id| {
                    let b = block_of[id];
                    counts[b] += 1;
                    counts[b] <= limits[b]
                })
            }
            Kind::Explicit { independent } => independent.contains(&s.to_mask()),
        }
    }

    /// Greedy scan of `s` in ascending id order.
    pub fn rank(&self, s: &Subset) -> RankResult {
        let mut witness = Subset::empty(self.n());
        for id in s.iter() {
            witness.insert(id);
            if !self.is_independent(&witness) {
                witness.remove(id);
            }
        }
        RankResult {
            rank: witness.len(),
            witness,
        }
    }

    /// `S` is feasible iff its complement is independent.
    pub fn is_feasible_comatroid(&self, s: &Subset) -> bool {
        self.is_independent(&s.complement())
    }

    /// Minimum-cardinality `T ⊆ U ∖ a` such that `a ∪ T` is co-matroid feasible:
    /// everything outside a maximum independent subset of `U ∖ a`.
    pub fn solve_extension(&self, a: &Subset) -> Subset {
        let rest = a.complement();
        let keep = self.rank(&rest).witness;
        rest.difference(&keep)
    }

    pub fn spec(&self) -> MatroidSpec {
        match &self.kind {
            Kind::Cardinality { r } => MatroidSpec::Cardinality { r: *r },
            Kind::Partition { blocks, limits, .. } => MatroidSpec::Partition {
                blocks: blocks.clone(),
                limits: limits.clone(),
            },
            Kind::Explicit { independent } => {
                let mut sets: Vec<Vec<usize>> = independent
                    .iter()
                    .map(|&m| Subset::from_mask(self.n(), m).ids())
                    .collect();
                sets.sort();
                MatroidSpec::Explicit { independent: sets }
            }
        }
    }
}

fn validate_family(n: usize, family: &HashSet<u64>) -> Result<()> {
    if !family.contains(&0) {
        return Err(Error::InvalidMatroid("empty set is not independent".into()));
    }
    for &s in family {
        let mut rest = s;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            if !family.contains(&(s ^ bit)) {
                return Err(Error::InvalidMatroid(format!(
                    "hereditary property fails: {} is independent but {} is not",
                    Subset::from_mask(n, s),
                    Subset::from_mask(n, s ^ bit)
                )));
            }
        }
    }
    for &a in family {
        for &b in family {
            if a.count_ones() >= b.count_ones() {
                continue;
            }
            let mut extra = b & !a;
            let mut ok = false;
            while extra != 0 {
                let bit = extra & extra.wrapping_neg();
                extra ^= bit;
                if family.contains(&(a | bit)) {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Err(Error::InvalidMatroid(format!(
                    "exchange property fails for {} and {}",
                    Subset::from_mask(n, a),
                    Subset::from_mask(n, b)
                )));
            }
        }
    }
    Ok(())
}

/// On-disk matroid description (JSON, tagged by `"type"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Cardinality {
        r: usize,
    },
    Partition {
        blocks: Vec<Vec<usize>>,
        limits: Vec<usize>,
    },
    Explicit {
        independent: Vec<Vec<usize>>,
    },
}

impl MatroidSpec {
    pub fn build(&self, n: usize) -> Result<MatroidOracle> {
        match self {
            MatroidSpec::Cardinality { r } => MatroidOracle::cardinality(n, *r),
            MatroidSpec::Partition { blocks, limits } => {
                MatroidOracle::partition(n, blocks.clone(), limits.clone())
            }
            MatroidSpec::Explicit { independent } => MatroidOracle::explicit(n, independent),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, ids: &[usize]) -> Subset {
        Subset::from_ids(n, ids.iter().copied()).unwrap()
    }

    fn brute_min_extension(m: &MatroidOracle, a: &Subset) -> usize {
        let n = m.n();
        let a_mask = a.to_mask();
        (0u64..1 << n)
            .filter(|t| t & a_mask == 0)
            .filter(|t| m.is_feasible_comatroid(&Subset::from_mask(n, a_mask | t)))
            .map(|t| t.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn independence_examples() {
        let c = MatroidOracle::cardinality(4, 2).unwrap();
        assert!(c.is_independent(&set(4, &[0, 1])));
        assert!(!c.is_independent(&set(4, &[0, 1, 2])));

        let p = MatroidOracle::partition(4, vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        assert!(p.is_independent(&set(4, &[0, 2])));
        assert!(!p.is_independent(&set(4, &[0, 1])));
    }

    #[test]
    fn rank_examples() {
        let c = MatroidOracle::cardinality(4, 2).unwrap();
        let r = c.rank(&set(4, &[0, 1, 2, 3]));
        assert_eq!(r.rank, 2);
        assert_eq!(r.witness.ids(), vec![0, 1]);

        let p = MatroidOracle::partition(4, vec![vec![0, 1], vec![2, 3]], vec![1, 1]).unwrap();
        let q = set(4, &[0, 1, 2]);
        let r = p.rank(&q);
        assert_eq!(r.rank, 2);
        assert_eq!(r.witness.ids(), vec![0, 2]);
        // brute-force maximum independent subset of q
        let best = (0u64..16)
            .map(|m| Subset::from_mask(4, m))
            .filter(|s| s.is_subset(&q) && p.is_independent(s))
            .map(|s| s.len())
            .max()
            .unwrap();
        assert_eq!(best, 2);

        assert_eq!(c.rank(&Subset::empty(4)).rank, 0);
        assert!(c.rank(&Subset::empty(4)).witness.is_empty());
    }

    #[test]
    fn comatroid_feasibility_examples() {
        let c = MatroidOracle::cardinality(4, 1).unwrap();
        assert!(c.is_feasible_comatroid(&set(4, &[0, 1, 2])));
        assert!(!c.is_feasible_comatroid(&set(4, &[0, 1])));
        assert!(c.is_feasible_comatroid(&Subset::full(4)));
        let zero = MatroidOracle::cardinality(4, 0).unwrap();
        assert!(zero.is_feasible_comatroid(&Subset::full(4)));
    }

    #[test]
    fn extension_examples() {
        let c = MatroidOracle::cardinality(5, 2).unwrap();
        assert_eq!(c.solve_extension(&set(5, &[0])).len(), 2);

        let p = MatroidOracle::partition(5, vec![vec![0, 1, 2], vec![3, 4]], vec![1, 1]).unwrap();
        let t = p.solve_extension(&Subset::empty(5));
        assert_eq!(t.len(), 3);
        assert_eq!(brute_min_extension(&p, &Subset::empty(5)), 3);
        assert!(p.is_feasible_comatroid(&t));

        let feasible = set(5, &[0, 1, 2, 3]);
        assert!(c.solve_extension(&feasible).is_empty());
    }

    #[test]
    fn partition_validation() {
        assert!(MatroidOracle::partition(3, vec![vec![0, 1]], vec![1]).is_err());
        assert!(MatroidOracle::partition(3, vec![vec![0, 1], vec![1, 2]], vec![1, 1]).is_err());
        assert!(MatroidOracle::partition(3, vec![vec![0, 1, 2]], vec![]).is_err());
        assert!(MatroidOracle::partition(3, vec![vec![0, 1, 5]], vec![1]).is_err());
    }

    #[test]
    fn explicit_matroid_validation() {
        // uniform U(1,2)
        let ok = MatroidOracle::explicit(2, &[vec![], vec![0], vec![1]]).unwrap();
        assert!(ok.is_independent(&set(2, &[1])));
        assert!(!ok.is_independent(&set(2, &[0, 1])));
        // missing empty set
        assert!(MatroidOracle::explicit(2, &[vec![0]]).is_err());
        // not hereditary
        assert!(MatroidOracle::explicit(2, &[vec![], vec![0, 1]]).is_err());
        // exchange fails: {2} vs {0,1}
        assert!(
            MatroidOracle::explicit(3, &[vec![], vec![0], vec![1], vec![2], vec![0, 1]]).is_err()
        );
        assert!(MatroidOracle::explicit(13, &[vec![]]).is_err());
    }

    #[test]
    fn spec_json_shapes() {
        let c: MatroidSpec = serde_json::from_str(r#"{"type":"cardinality","r":2}"#).unwrap();
        assert_eq!(c, MatroidSpec::Cardinality { r: 2 });
        let p: MatroidSpec =
            serde_json::from_str(r#"{"type":"partition","blocks":[[0,1],[2]],"limits":[1,0]}"#)
                .unwrap();
        assert!(p.build(3).is_ok());
        let e: MatroidSpec =
            serde_json::from_str(r#"{"type":"explicit","independent":[[],[0]]}"#).unwrap();
        assert_eq!(e.build(2).unwrap().spec(), e);
        assert!(serde_json::from_str::<MatroidSpec>(r#"{"type":"graphic"}"#).is_err());
    }
}
