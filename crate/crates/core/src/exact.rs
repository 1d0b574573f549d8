//! Exact solvers.
//!
//! Region solvers split the region into merged components (groups whose
//! members are too close to interact across groups) and run a pruned
//! depth-first search inside each group. Among optimal answers the
//! lexicographically smallest ascending index sequence is returned.
//!
//! The `oracle_*` functions are unpruned brute force over all subsets of a
//! whole instance, with their own Floyd-Warshall hop table. They exist to
//! certify the other solvers on small inputs.

use crate::error::{Error, Result};
use crate::geometry::{ComponentDecomposition, HopMatrix, Instance};
use crate::solution::{lex_less, ProblemKind, Solution, SolveStats};

pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Maximum distance-`d` independent subset of `region`.
pub fn exact_ddis_region(region: &[usize], hops: &HopMatrix, d: u32) -> Solution {
    let mut stats = SolveStats::default();
    let selected = max_independent_grouped(region, hops, d, &mut stats);
    Solution::new(ProblemKind::Is, d, "exact", selected).with_stats(stats)
}

/// Minimum subset of `region` dominating all of `region` within `d` hops.
pub fn exact_ddds_region(region: &[usize], hops: &HopMatrix, d: u32) -> Solution {
    let mut stats = SolveStats::default();
    let selected = min_cover_grouped(region, region, hops, d, &mut stats)
        .expect("every point dominates itself");
    Solution::new(ProblemKind::Ds, d, "exact", selected).with_stats(stats)
}

pub(crate) fn max_independent_grouped(
    region: &[usize],
    hops: &HopMatrix,
    d: u32,
    stats: &mut SolveStats,
) -> Vec<usize> {
    let groups = ComponentDecomposition::from_hops(hops, region, d);
    let mut out = Vec::new();
    for group in groups.components() {
        out.extend(max_independent(group, hops, d, stats));
    }
    out.sort_unstable();
    out
}

/// Per-group minimum cover of `targets` by `candidates`. Groups merge at hop
/// distance `<= d` so no candidate reaches a target in another group.
/// Returns `None` when some target has no candidate within `d` hops.
pub(crate) fn min_cover_grouped(
    targets: &[usize],
    candidates: &[usize],
    hops: &HopMatrix,
    d: u32,
    stats: &mut SolveStats,
) -> Option<Vec<usize>> {
    let mut all: Vec<usize> = targets.iter().chain(candidates).copied().collect();
    all.sort_unstable();
    all.dedup();
    let groups = ComponentDecomposition::from_hops(hops, &all, d.saturating_add(1));
    let is_target = membership(targets, &all);
    let is_candidate = membership(candidates, &all);

    let mut out = Vec::new();
    for group in groups.components() {
        let (mut t, mut c) = (Vec::new(), Vec::new());
        for &v in group {
            let pos = all.binary_search(&v).unwrap();
            if is_target[pos] {
                t.push(v);
            }
            if is_candidate[pos] {
                c.push(v);
            }
        }
        out.extend(min_cover(&t, &c, hops, d, stats)?);
    }
    out.sort_unstable();
    Some(out)
}

fn membership(of: &[usize], all: &[usize]) -> Vec<bool> {
    let mut flags = vec![false; all.len()];
    for v in of {
        flags[all.binary_search(v).unwrap()] = true;
    }
    flags
}

/// Maximum subset of `cands` with pairwise hop distance `>= d`.
pub(crate) fn max_independent(
    cands: &[usize],
    hops: &HopMatrix,
    d: u32,
    stats: &mut SolveStats,
) -> Vec<usize> {
    let mut cands = cands.to_vec();
    cands.sort_unstable();
    cands.dedup();
    let m = cands.len();
    stats.regions += 1;
    if m <= 1 {
        return cands;
    }
    let conflicts: Vec<Vec<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a && !hops.at_least(cands[a], cands[b], d))
                .collect()
        })
        .collect();

    let mut search = IndependentSearch {
        conflicts: &conflicts,
        blocked: vec![0; m],
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
    };
    search.run(0);
    stats.nodes += search.nodes;
    search.best.iter().map(|&l| cands[l]).collect()
}

struct IndependentSearch<'a> {
    conflicts: &'a [Vec<usize>],
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
}

impl IndependentSearch<'_> {
    // Include-before-exclude over ascending candidates visits leaves in
    // lexicographic order, so the first maximum found is the smallest one.
    fn run(&mut self, pos: usize) {
        self.nodes += 1;
        let m = self.blocked.len();
        let open = (pos..m).filter(|&c| self.blocked[c] == 0).count();
        if self.chosen.len() + open <= self.best.len() {
            return;
        }
        let Some(next) = (pos..m).find(|&c| self.blocked[c] == 0) else {
            // open > 0 was required above, so this is unreachable in practice
            return;
        };

        self.chosen.push(next);
        for &c in &self.conflicts[next] {
            self.blocked[c] += 1;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        self.run(next + 1);
        for &c in &self.conflicts[next] {
            self.blocked[c] -= 1;
        }
        self.chosen.pop();

        self.run(next + 1);
    }
}

/// Minimum subset of `candidates` covering every target within `d` hops,
/// lexicographically smallest among minima. `None` if infeasible.
pub(crate) fn min_cover(
    targets: &[usize],
    candidates: &[usize],
    hops: &HopMatrix,
    d: u32,
    stats: &mut SolveStats,
) -> Option<Vec<usize>> {
    stats.regions += 1;
    if targets.is_empty() {
        return Some(Vec::new());
    }
    let mut cands = candidates.to_vec();
    cands.sort_unstable();
    cands.dedup();
    let mut tgts = targets.to_vec();
    tgts.sort_unstable();
    tgts.dedup();

    let dominators: Vec<Vec<usize>> = tgts
        .iter()
        .map(|&t| {
            (0..cands.len())
                .filter(|&c| hops.within(cands[c], t, d))
                .collect()
        })
        .collect();
    if dominators.iter().any(Vec::is_empty) {
        return None;
    }
    let mut covers = vec![Vec::new(); cands.len()];
    for (t, doms) in dominators.iter().enumerate() {
        for &c in doms {
            covers[c].push(t);
        }
    }

    let mut search = CoverSearch {
        cands: &cands,
        dominators: &dominators,
        covers: &covers,
        covered: vec![0; tgts.len()],
        chosen: Vec::new(),
        best: None,
        nodes: 0,
    };
    search.run();
    stats.nodes += search.nodes;
    search.best
}

struct CoverSearch<'a> {
    cands: &'a [usize],
    dominators: &'a [Vec<usize>],
    covers: &'a [Vec<usize>],
    covered: Vec<u32>,
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    nodes: u64,
}

impl CoverSearch<'_> {
    // Branch on the lowest uncovered target: some chosen candidate must cover it.
    fn run(&mut self) {
        self.nodes += 1;
        let Some(target) = self.covered.iter().position(|&c| c == 0) else {
            let mut sol: Vec<usize> = self.chosen.iter().map(|&l| self.cands[l]).collect();
            sol.sort_unstable();
            let better = match &self.best {
                None => true,
                Some(b) => sol.len() < b.len() || (sol.len() == b.len() && lex_less(&sol, b)),
            };
            if better {
                self.best = Some(sol);
            }
            return;
        };
        if let Some(b) = &self.best {
            if self.chosen.len() + 1 > b.len() {
                return;
            }
        }
        for &c in &self.dominators[target] {
            self.chosen.push(c);
            for &t in &self.covers[c] {
                self.covered[t] += 1;
            }
            self.run();
            for &t in &self.covers[c] {
                self.covered[t] -= 1;
            }
            self.chosen.pop();
        }
    }
}

/// Brute-force maximum distance-`d` independent set over every subset.
pub fn oracle_ddis(instance: &Instance) -> Result<Solution> {
    oracle_ddis_capped(instance, DEFAULT_ORACLE_CAP)
}

pub fn oracle_ddis_capped(instance: &Instance, cap: usize) -> Result<Solution> {
    let n = check_cap(instance, cap)?;
    let d = instance.d();
    let hops = floyd_warshall(instance);
    let conflict: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && hops[i][j] < d)
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();

    let mut best = 0u64;
    for mask in 0u64..(1u64 << n) {
        let independent = bits(mask).all(|i| conflict[i] & mask == 0);
        if !independent {
            continue;
        }
        let (c, bc) = (mask.count_ones(), best.count_ones());
        if c > bc || (c == bc && mask_lex_less(mask, best)) {
            best = mask;
        }
    }
    Ok(Solution::new(
        ProblemKind::Is,
        d,
        "oracle",
        bits(best).collect(),
    ))
}

/// Brute-force minimum distance-`d` dominating set, by ascending subset size.
pub fn oracle_ddds(instance: &Instance) -> Result<Solution> {
    oracle_ddds_capped(instance, DEFAULT_ORACLE_CAP)
}

pub fn oracle_ddds_capped(instance: &Instance, cap: usize) -> Result<Solution> {
    let n = check_cap(instance, cap)?;
    let d = instance.d();
    let hops = floyd_warshall(instance);
    let cover: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| hops[i][j] <= d)
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };

    for size in 0..=n as u32 {
        let mut best: Option<u64> = None;
        for mask in masks_of_size(n as u32, size) {
            let reach = bits(mask).fold(0u64, |acc, i| acc | cover[i]);
            if reach == full && best.is_none_or(|b| mask_lex_less(mask, b)) {
                best = Some(mask);
            }
        }
        if let Some(b) = best {
            return Ok(Solution::new(
                ProblemKind::Ds,
                d,
                "oracle",
                bits(b).collect(),
            ));
        }
    }
    unreachable!("the full point set always dominates")
}

fn check_cap(instance: &Instance, cap: usize) -> Result<usize> {
    let n = instance.len();
    if n > cap || n > 63 {
        return Err(Error::OracleCap {
            n,
            cap: cap.min(63),
        });
    }
    Ok(n)
}

/// All-pairs hop counts via Floyd-Warshall on the unit/infinite weighted
/// complete graph. Kept separate from [`HopMatrix`] on purpose.
fn floyd_warshall(instance: &Instance) -> Vec<Vec<u32>> {
    const INF: u32 = u32::MAX / 2;
    let p = instance.points();
    let n = p.len();
    let mut m = vec![vec![INF; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                m[i][j] = 0;
            } else if p[i].dist_sq(&p[j]) <= 1.0 {
                m[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = m[i][k] + m[k][j];
                if via < m[i][j] {
                    m[i][j] = via;
                }
            }
        }
    }
    m
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Lexicographic comparison of the ascending index lists of two equal-size masks.
fn mask_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a & diff & diff.wrapping_neg() != 0
}

/// Every `n`-bit mask with exactly `k` bits set (Gosper's hack).
fn masks_of_size(n: u32, k: u32) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let start = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut cur = if k > n { None } else { Some(start) };
    std::iter::from_fn(move || {
        let m = cur?;
        cur = if m == 0 {
            None
        } else {
            let c = m & m.wrapping_neg();
            let r = m + c;
            let next = (((r ^ m) >> 2) / c) | r;
            (next < limit).then_some(next)
        };
        Some(m)
    })
}
