//! Independent feasibility checks, by bounded breadth-first search on the
//! unit disk graph.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::Instance;
use crate::solution::{ProblemKind, Solution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two selected points closer than `d` hops.
    Conflict { a: usize, b: usize, hops: u32 },
    /// A point with no selected point within `d` hops.
    Undominated { point: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Conflict { a, b, hops } => write!(f, "({a}, {b}) are {hops} hops apart"),
            Violation::Undominated { point } => write!(f, "point {point} is not dominated"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub feasible: bool,
    pub violations: Vec<Violation>,
}

pub fn verify_solution(instance: &Instance, solution: &Solution) -> Result<VerifyReport> {
    let n = instance.len();
    if let Some(&bad) = solution.selected().iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, len: n });
    }
    if solution.d != instance.d() {
        return Err(Error::Parameter(format!(
            "solution was computed for d = {}, instance has d = {}",
            solution.d,
            instance.d()
        )));
    }
    let d = instance.d();
    let g = instance.graph();
    let selected = solution.selected();

    let mut violations = Vec::new();
    match solution.kind {
        ProblemKind::Is => {
            for &s in selected {
                if d < 2 {
                    break;
                }
                let dist = g.bounded_bfs(&[s], d - 1);
                for &t in selected.iter().filter(|&&t| t > s) {
                    if let Some(h) = dist[t] {
                        violations.push(Violation::Conflict {
                            a: s,
                            b: t,
                            hops: h,
                        });
                    }
                }
            }
        }
        ProblemKind::Ds => {
            let dist = g.bounded_bfs(selected, d);
            violations.extend(
                (0..n)
                    .filter(|&v| dist[v].is_none())
                    .map(|point| Violation::Undominated { point }),
            );
        }
    }
    Ok(VerifyReport {
        feasible: violations.is_empty(),
        violations,
    })
}
