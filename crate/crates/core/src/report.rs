//! Run reports printed by the CLI, as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::constrained::GreedyTrace;
use crate::density::Engine;
use crate::rational::Rational;
use crate::subset::{GroundSet, Subset};

pub const DECIMAL_PLACES: u32 = 6;

/// An exact value together with a rounded decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub decimal: String,
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue {
            exact: r.to_string(),
            decimal: r.to_decimal(DECIMAL_PLACES),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetReport {
    pub ids: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl SetReport {
    pub fn new(s: &Subset, ground: &GroundSet) -> Self {
        SetReport {
            ids: s.ids(),
            labels: ground
                .labels()
                .map(|l| s.iter().map(|i| l[i].clone()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorCertificate {
    pub opt_density: ExactValue,
    pub opt_set: Vec<usize>,
    /// `opt / output`; absent when the output density is zero and the optimum is not.
    pub ratio: Option<ExactValue>,
    /// Guaranteed approximation factor of the variant (1 for exact variants).
    pub bound: u32,
    pub within_bound: bool,
}

impl FactorCertificate {
    pub fn new(opt: Rational, opt_set: &Subset, output: Rational, bound: u32) -> Self {
        let ratio = if output.is_zero() {
            opt.is_zero().then_some(Rational::ONE)
        } else {
            Some(opt / output)
        };
        FactorCertificate {
            opt_density: opt.into(),
            opt_set: opt_set.ids(),
            ratio: ratio.map(ExactValue::from),
            bound,
            within_bound: Rational::from_int(bound as i128) * output >= opt,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainStepReport {
    pub added: Vec<usize>,
    pub prefix: Vec<usize>,
    pub marginal_density: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AugmentedReport {
    pub set: Vec<usize>,
    pub density: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub chain: Vec<ChainStepReport>,
    pub augmented: Vec<AugmentedReport>,
    pub chosen_index: usize,
}

impl From<&GreedyTrace> for TraceReport {
    fn from(t: &GreedyTrace) -> Self {
        TraceReport {
            chain: t
                .chain
                .iter()
                .map(|s| ChainStepReport {
                    added: s.added.ids(),
                    prefix: s.prefix.ids(),
                    marginal_density: s.marginal_density.to_string(),
                })
                .collect(),
            augmented: t
                .augmented
                .iter()
                .map(|a| AugmentedReport {
                    set: a.set.ids(),
                    density: a.density.to_string(),
                })
                .collect(),
            chosen_index: t.chosen_index,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Unconstrained densest subset.
    Densest,
    CoMatroid,
    Knapsack,
    Closure,
    /// Required subset, no matroid.
    Subset,
    /// Required subset plus co-matroid.
    Combo,
}

impl Variant {
    pub fn factor(&self) -> u32 {
        match self {
            Variant::Densest | Variant::Closure | Variant::Subset => 1,
            Variant::CoMatroid | Variant::Combo => 2,
            Variant::Knapsack => 3,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Densest => "densest",
            Variant::CoMatroid => "comatroid",
            Variant::Knapsack => "knapsack",
            Variant::Closure => "closure",
            Variant::Subset => "subset",
            Variant::Combo => "combo",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub variant: Variant,
    pub engine: Engine,
    pub n: usize,
    pub best_set: SetReport,
    pub best_density: ExactValue,
    pub iterations: usize,
    pub factor_certificate: Option<FactorCertificate>,
    pub trace: Option<TraceReport>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let set = |ids: &[usize]| {
            let inner: Vec<String> = ids.iter().map(usize::to_string).collect();
            format!("{{{}}}", inner.join(","))
        };
        writeln!(s, "variant: {}", self.variant.as_str()).unwrap();
        writeln!(s, "engine: {}", self.engine.as_str()).unwrap();
        writeln!(s, "best_set: {}", set(&self.best_set.ids)).unwrap();
        if let Some(labels) = &self.best_set.labels {
            writeln!(s, "best_labels: {}", labels.join(",")).unwrap();
        }
        writeln!(
            s,
            "best_density: {} ({})",
            self.best_density.exact, self.best_density.decimal
        )
        .unwrap();
        if let Some(c) = &self.factor_certificate {
            let ratio = c
                .ratio
                .as_ref()
                .map(|r| format!("{} ({})", r.exact, r.decimal))
                .unwrap_or_else(|| "undefined".into());
            writeln!(
                s,
                "verify: opt {} ({}) at {}, ratio {}, bound {}{}",
                c.opt_density.exact,
                c.opt_density.decimal,
                set(&c.opt_set),
                ratio,
                c.bound,
                if c.within_bound { "" } else { " VIOLATED" }
            )
            .unwrap();
        }
        if let Some(t) = &self.trace {
            writeln!(s, "trace:").unwrap();
            for (i, step) in t.chain.iter().enumerate() {
                writeln!(
                    s,
                    "  H_{} = {}  D_{} = {}  marginal {}",
                    i + 1,
                    set(&step.added),
                    i + 1,
                    set(&step.prefix),
                    step.marginal_density
                )
                .unwrap();
            }
            for (i, a) in t.augmented.iter().enumerate() {
                let mark = if i == t.chosen_index { "  *" } else { "" };
                writeln!(
                    s,
                    "  D'_{} = {}  density {}{mark}",
                    i + 1,
                    set(&a.set),
                    a.density
                )
                .unwrap();
            }
        }
        writeln!(s, "wall_time: {} ms", self.wall_time_ms).unwrap();
        s
    }
}
