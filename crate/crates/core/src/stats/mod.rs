//! Signed subgraph statistics.
//!
//! Every statistic here is a sum, over copies of a pattern, of products of
//! centered edge values ā_e = a_e − p. A copy with m of its E edges present
//! contributes (1 − p)^m (−p)^{E−m}, so each statistic reduces to a histogram
//! of present-edge counts. Histograms are exact integers; the trace route and
//! the enumeration route therefore produce bit-identical floating-point values.

mod enumerate;
mod pattern;
mod triangle;

pub use enumerate::{
    for_each_combination, hamilton_cycles, plain_clique_count, signed_clique_stat, signed_cycle_stat, MAX_ORDER,
};
pub use pattern::{q_scaling_difference, signed_pattern_estimate, subgraph_probability_estimate, Pattern};
pub use triangle::{
    signed_triangle_dense, signed_triangle_stat, triangle_histogram_enumeration, triangle_histogram_trace,
};

use crate::error::{Error, Result};
use crate::model::AdjacencySample;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatisticKind {
    SignedTriangle,
    SignedClique,
    SignedCycle,
    /// Number of k-cliques, uncentered.
    PlainCount,
}

impl StatisticKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            StatisticKind::SignedTriangle => "signed-triangle",
            StatisticKind::SignedClique => "signed-clique",
            StatisticKind::SignedCycle => "signed-cycle",
            StatisticKind::PlainCount => "plain-count",
        }
    }
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatisticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "signed-triangle" | "triangle" => Ok(StatisticKind::SignedTriangle),
            "signed-clique" | "clique" => Ok(StatisticKind::SignedClique),
            "signed-cycle" | "cycle" => Ok(StatisticKind::SignedCycle),
            "plain-count" | "count" => Ok(StatisticKind::PlainCount),
            _ => Err(Error::params(format!("unknown statistic '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Trace,
    Enumeration,
}

/// Which statistic to compute: kind plus subgraph order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatisticSpec {
    pub kind: StatisticKind,
    pub k: usize,
}

impl StatisticSpec {
    pub const TRIANGLE: StatisticSpec = StatisticSpec { kind: StatisticKind::SignedTriangle, k: 3 };

    pub fn new(kind: StatisticKind, k: usize) -> Result<Self> {
        if kind == StatisticKind::SignedTriangle && k != 3 {
            return Err(Error::params("signed-triangle has k = 3"));
        }
        if !(3..=MAX_ORDER).contains(&k) {
            return Err(Error::UnsupportedOrder { k, max: MAX_ORDER });
        }
        Ok(Self { kind, k })
    }

    pub fn compute(&self, g: &AdjacencySample, p: f64) -> Result<StatisticValue> {
        match self.kind {
            StatisticKind::SignedTriangle => Ok(signed_triangle_stat(g, p)),
            StatisticKind::SignedClique => signed_clique_stat(g, p, self.k),
            StatisticKind::SignedCycle => signed_cycle_stat(g, p, self.k),
            StatisticKind::PlainCount => plain_clique_count(g, self.k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatisticValue {
    pub kind: StatisticKind,
    pub k: usize,
    pub value: f64,
    pub method: Method,
    /// Set when the graph has fewer than k vertices; the value is then 0.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
}

/// Counts of pattern copies by number of present edges, out of `edges` per copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCountHistogram {
    pub edges: usize,
    pub counts: Vec<u64>,
}

impl EdgeCountHistogram {
    pub fn new(edges: usize) -> Self {
        Self { edges, counts: vec![0; edges + 1] }
    }

    /// Σ_m counts[m]·(1 − p)^m·(−p)^{E−m}
    pub fn signed_sum(&self, p: f64) -> f64 {
        let e = self.edges as i32;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(m, &c)| c as f64 * (1.0 - p).powi(m as i32) * (-p).powi(e - m as i32))
            .sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_value() {
        let mut h = EdgeCountHistogram::new(3);
        h.counts[3] = 1;
        assert_eq!(h.signed_sum(0.5), 0.125);
        let mut h = EdgeCountHistogram::new(3);
        h.counts[0] = 1;
        assert_eq!(h.signed_sum(0.5), -0.125);
    }

    #[test]
    fn spec_validation() {
        assert!(StatisticSpec::new(StatisticKind::SignedClique, 2).is_err());
        assert!(matches!(StatisticSpec::new(StatisticKind::SignedCycle, 9), Err(Error::UnsupportedOrder { k: 9, .. })));
        assert!(StatisticSpec::new(StatisticKind::SignedTriangle, 4).is_err());
        assert!(StatisticSpec::new(StatisticKind::SignedCycle, 8).is_ok());
    }

    #[test]
    fn value_json() {
        let v = StatisticValue {
            kind: StatisticKind::SignedCycle,
            k: 4,
            value: 0.1875,
            method: Method::Enumeration,
            degenerate: false,
        };
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"kind":"signed-cycle","k":4,"value":0.1875,"method":"enumeration"}"#
        );
    }
}
