use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which problem a solution answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemKind {
    /// Maximum distance-d independent set: selected points pairwise at least d hops apart.
    Is,
    /// Minimum distance-d dominating set: every point within d hops of a selected one.
    Ds,
}

impl ProblemKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProblemKind::Is => "is",
            ProblemKind::Ds => "ds",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "is" => Ok(ProblemKind::Is),
            "ds" => Ok(ProblemKind::Ds),
            other => Err(Error::Parameter(format!(
                "unknown problem '{other}', expected 'is' or 'ds'"
            ))),
        }
    }
}

/// Work counters accumulated while solving.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Exact region or square solves performed.
    pub regions: usize,
    /// Search-tree nodes visited across all exact solves.
    pub nodes: u64,
}

impl SolveStats {
    pub fn absorb(&mut self, other: SolveStats) {
        self.regions += other.regions;
        self.nodes += other.nodes;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub kind: ProblemKind,
    pub d: u32,
    pub algorithm: String,
    selected: Vec<usize>,
    pub stats: SolveStats,
}

impl Solution {
    /// Indices are sorted and deduplicated.
    pub fn new(
        kind: ProblemKind,
        d: u32,
        algorithm: impl Into<String>,
        mut selected: Vec<usize>,
    ) -> Self {
        selected.sort_unstable();
        selected.dedup();
        Solution {
            kind,
            d,
            algorithm: algorithm.into(),
            selected,
            stats: SolveStats::default(),
        }
    }

    pub fn empty(kind: ProblemKind, d: u32, algorithm: impl Into<String>) -> Self {
        Self::new(kind, d, algorithm, Vec::new())
    }

    pub fn with_stats(mut self, stats: SolveStats) -> Self {
        self.stats = stats;
        self
    }

    pub fn with_algorithm(mut self, algorithm: impl Into<String>) -> Self {
        self.algorithm = algorithm.into();
        self
    }

    /// Selected point indices, strictly ascending.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn value(&self) -> usize {
        self.selected.len()
    }

    pub fn into_selected(self) -> Vec<usize> {
        self.selected
    }
}

/// Lexicographic order on ascending index sequences. For equal-length sets
/// this is decided by the smallest element of the symmetric difference, so it
/// is preserved under union with a disjoint set.
pub(crate) fn lex_less(a: &[usize], b: &[usize]) -> bool {
    a < b
}
