//! Algorithm dispatch and the oracle-backed benchmark runner.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use crate::approx_ds::approx4_ddds;
use crate::approx_is::approx4_ddis;
use crate::error::{Error, Result};
use crate::exact::{exact_ddds_region, exact_ddis_region, oracle_ddds_capped, oracle_ddis_capped};
use crate::geometry::{HopMatrix, Instance};
use crate::io::format_instance;
use crate::ptas::{ptas_ddds, ptas_ddis};
use crate::solution::{ProblemKind, Solution};
use crate::verify::verify_solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Exact,
    Approx4,
    Ptas,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Approx4 => "approx4",
            Algorithm::Ptas => "ptas",
        }
    }

    /// Bench label, e.g. `approx4-is`.
    pub fn label(&self, kind: ProblemKind) -> String {
        format!("{}-{}", self.as_str(), kind)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Algorithm::Exact),
            "approx4" => Ok(Algorithm::Approx4),
            "ptas" => Ok(Algorithm::Ptas),
            other => Err(Error::Parameter(format!(
                "unknown algorithm '{other}', expected exact, approx4 or ptas"
            ))),
        }
    }
}

/// Runs one algorithm on a whole instance.
pub fn solve(
    instance: &Instance,
    kind: ProblemKind,
    algorithm: Algorithm,
    k: Option<u32>,
) -> Result<Solution> {
    let d = instance.d();
    if kind == ProblemKind::Is && d < 2 {
        return Err(Error::Parameter(format!(
            "independent set needs d >= 2, got {d}"
        )));
    }
    match algorithm {
        Algorithm::Exact => {
            let hops = HopMatrix::new(&instance.graph());
            let all: Vec<usize> = (0..instance.len()).collect();
            Ok(match kind {
                ProblemKind::Is => exact_ddis_region(&all, &hops, d),
                ProblemKind::Ds => exact_ddds_region(&all, &hops, d),
            })
        }
        Algorithm::Approx4 => match kind {
            ProblemKind::Is => approx4_ddis(instance),
            ProblemKind::Ds => approx4_ddds(instance),
        },
        Algorithm::Ptas => {
            let k = k.ok_or_else(|| Error::Parameter("ptas needs k".into()))?;
            match kind {
                ProblemKind::Is => ptas_ddis(instance, k),
                ProblemKind::Ds => ptas_ddds(instance, k),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub d: u32,
    pub k: Option<u32>,
    pub algorithm: String,
    pub problem: ProblemKind,
    pub value: usize,
    pub oracle: Option<usize>,
    /// `value / oracle`; 1 when both are zero.
    pub ratio: Option<f64>,
    pub wall_ms: f64,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub k: Option<u32>,
    pub oracle_cap: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            k: None,
            oracle_cap: crate::exact::DEFAULT_ORACLE_CAP,
        }
    }
}

/// One record per (instance, algorithm), sorted by instance id then label.
/// Any infeasible output aborts the run with the offending instance attached.
pub fn bench_run(
    instances: &[(String, Instance)],
    algorithms: &[(Algorithm, ProblemKind)],
    config: &BenchConfig,
) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for (id, instance) in instances {
        let mut oracle_is = None;
        let mut oracle_ds = None;
        for &(alg, kind) in algorithms {
            let start = Instant::now();
            let solution = solve(instance, kind, alg, config.k)?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;

            let report = verify_solution(instance, &solution)?;
            if !report.feasible {
                let details = report
                    .violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ");
                return Err(Error::Infeasible {
                    instance: id.clone(),
                    algorithm: alg.label(kind),
                    details: format!("{details}\n{}", format_instance(instance)),
                });
            }

            let oracle = if instance.len() <= config.oracle_cap.min(63) {
                let slot = match kind {
                    ProblemKind::Is => &mut oracle_is,
                    ProblemKind::Ds => &mut oracle_ds,
                };
                if slot.is_none() {
                    let sol = match kind {
                        ProblemKind::Is => oracle_ddis_capped(instance, config.oracle_cap)?,
                        ProblemKind::Ds => oracle_ddds_capped(instance, config.oracle_cap)?,
                    };
                    *slot = Some(sol.value());
                }
                *slot
            } else {
                None
            };
            let ratio = oracle.map(|o| match (solution.value(), o) {
                (0, 0) => 1.0,
                (v, o) => v as f64 / o as f64,
            });

            records.push(BenchRecord {
                instance: id.clone(),
                n: instance.len(),
                d: instance.d(),
                k: (alg == Algorithm::Ptas).then_some(config.k).flatten(),
                algorithm: alg.label(kind),
                problem: kind,
                value: solution.value(),
                oracle,
                ratio,
                wall_ms,
                feasible: report.feasible,
            });
        }
    }
    records.sort_by(|a, b| (&a.instance, &a.algorithm).cmp(&(&b.instance, &b.algorithm)));
    Ok(records)
}

pub const CSV_HEADER: [&str; 11] = [
    "instance",
    "n",
    "d",
    "k",
    "algorithm",
    "problem",
    "value",
    "oracle",
    "ratio",
    "wall_ms",
    "feasible",
];

/// Writes the records as CSV. Without `timing` the `wall_ms` column is left
/// empty so that output is reproducible byte for byte.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W, timing: bool) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.n.to_string(),
            r.d.to_string(),
            opt(r.k.map(|k| k.to_string())),
            r.algorithm.clone(),
            r.problem.to_string(),
            r.value.to_string(),
            opt(r.oracle.map(|o| o.to_string())),
            opt(r.ratio.map(|x| format!("{x:.6}"))),
            if timing {
                format!("{:.3}", r.wall_ms)
            } else {
                String::new()
            },
            r.feasible.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
