//! Instance and solution file formats.
//!
//! Instance files are plain text: `#` comment lines and blank lines are
//! ignored, the first remaining line is `n d`, followed by exactly `n` lines
//! of `x y`. Solutions are a single JSON object.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Instance, Point};
use crate::solution::{ProblemKind, Solution};

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing 'n d' header"))?;
    let [n, d] = two_fields(header_line, header)?;
    let n: usize = n
        .parse()
        .map_err(|_| Error::parse(header_line, format!("invalid point count '{n}'")))?;
    let d: u32 = d
        .parse()
        .map_err(|_| Error::parse(header_line, format!("invalid distance '{d}'")))?;
    if d == 0 {
        return Err(Error::parse(header_line, "d must be at least 1"));
    }

    let mut points = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if points.len() == n {
            return Err(Error::parse(
                line,
                format!("expected {n} points, found more"),
            ));
        }
        let [x, y] = two_fields(line, content)?;
        let coord = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| Error::parse(line, format!("invalid coordinate '{s}'")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::parse(line, format!("non-finite coordinate '{s}'")))
            }
        };
        points.push(Point::new(coord(x)?, coord(y)?));
    }
    if points.len() != n {
        return Err(Error::parse(
            last_line,
            format!("expected {n} points, found {}", points.len()),
        ));
    }
    Instance::new(points, d)
}

fn two_fields(line: usize, content: &str) -> Result<[&str; 2]> {
    let mut it = content.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok([a, b]),
        _ => Err(Error::parse(
            line,
            format!("expected two fields, got '{content}'"),
        )),
    }
}

/// Canonical text form. Coordinates use the shortest decimal that parses
/// back to the same `f64`.
pub fn format_instance(instance: &Instance) -> String {
    let mut out = format!("{} {}\n", instance.len(), instance.d());
    for p in instance.points() {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}

/// On-disk solution schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionFile {
    pub problem: ProblemKind,
    pub d: u32,
    pub algorithm: String,
    pub selected: Vec<usize>,
    pub value: usize,
}

impl From<&Solution> for SolutionFile {
    fn from(s: &Solution) -> Self {
        SolutionFile {
            problem: s.kind,
            d: s.d,
            algorithm: s.algorithm.clone(),
            selected: s.selected().to_vec(),
            value: s.value(),
        }
    }
}

impl TryFrom<SolutionFile> for Solution {
    type Error = Error;

    fn try_from(f: SolutionFile) -> Result<Self> {
        if f.selected.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Solution(
                "selected indices must be strictly ascending".into(),
            ));
        }
        if f.value != f.selected.len() {
            return Err(Error::Solution(format!(
                "value {} does not match {} selected indices",
                f.value,
                f.selected.len()
            )));
        }
        Ok(Solution::new(f.problem, f.d, f.algorithm, f.selected))
    }
}

pub fn solution_to_json(solution: &Solution) -> String {
    let mut s = serde_json::to_string(&SolutionFile::from(solution))
        .expect("solution serialization cannot fail");
    s.push('\n');
    s
}

pub fn solution_from_json(text: &str) -> Result<Solution> {
    let file: SolutionFile =
        serde_json::from_str(text).map_err(|e| Error::Solution(e.to_string()))?;
    file.try_into()
}
