//! Two-level shifting schemes and the divide-and-conquer square solvers.
//!
//! Independent set: iteration `i` cuts the plane into vertical strips of
//! widths `i, d, k, d, k, ...`. The `d`-wide separator strips are dropped, so
//! the remaining working strips are more than `d` apart and their solutions
//! combine freely. Each working strip is cut horizontally the same way with
//! its own best offset `j`, and every working cell is solved exactly.
//!
//! Dominating set: iteration `(i, j)` cuts horizontal strips `i, k, k, ...`
//! and then cells `j, k, k, ...`; every cell is dominated exactly from its own
//! points and the union is a feasible answer. The smallest union wins.
//!
//! Both square solvers split a square at its center lines. Points close to a
//! line are handled by exhaustive guessing; everything else falls into one of
//! four quadrants that no longer interact and are solved recursively.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::{max_independent_grouped, min_cover_grouped};
use crate::geometry::{HopMatrix, Instance, Point, Rect};
use crate::grid::{CellGrid, CellId, StripAxis, StripPattern};
use crate::solution::{ProblemKind, Solution, SolveStats};

pub const PTAS_LABEL: &str = "ptas";

/// Squares at or below this many points are solved directly.
pub const DEFAULT_BASE_POINTS: usize = 12;

/// Partition parameters for one shifting iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftConfig {
    pub k: u32,
    pub d: u32,
    pub i: u32,
    pub j: u32,
}

impl ShiftConfig {
    pub fn new(k: u32, d: u32, i: u32, j: u32) -> Result<Self> {
        if !(1..=k).contains(&i) || !(1..=k).contains(&j) {
            return Err(Error::parameter(format!(
                "shift offsets ({i}, {j}) must lie in 1..={k}"
            )));
        }
        Ok(ShiftConfig { k, d, i, j })
    }

    /// Widths `offset, d, k, d, k, ...`; even indices are working strips.
    fn separated(&self, offset: u32) -> StripPattern {
        StripPattern::shifted(
            f64::from(offset),
            vec![f64::from(self.d), f64::from(self.k)],
        )
    }

    /// Widths `offset, k, k, ...`.
    fn contiguous(&self, offset: u32) -> StripPattern {
        StripPattern::shifted(f64::from(offset), vec![f64::from(self.k)])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareConfig {
    pub base_points: usize,
}

impl Default for SquareConfig {
    fn default() -> Self {
        SquareConfig {
            base_points: DEFAULT_BASE_POINTS,
        }
    }
}

/// One shifting iteration. For the independent set the second-level offset
/// is chosen per strip, so `j` is `None`.
#[derive(Debug, Clone)]
pub struct Iteration {
    pub i: u32,
    pub j: Option<u32>,
    pub solution: Solution,
}

fn check_is_params(d: u32, k: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::parameter(format!(
            "independent set needs d >= 2, got {d}"
        )));
    }
    if k < d {
        return Err(Error::parameter(format!(
            "need k >= d, got k = {k}, d = {d}"
        )));
    }
    Ok(())
}

fn check_ds_params(d: u32, k: u32) -> Result<()> {
    if k < d.max(2) {
        return Err(Error::parameter(format!(
            "need k >= max(d, 2), got k = {k}, d = {d}"
        )));
    }
    Ok(())
}

pub fn ptas_ddis(instance: &Instance, k: u32) -> Result<Solution> {
    let iterations = ptas_ddis_iterations(instance, k)?;
    Ok(pick(
        iterations,
        |a, b| a > b,
        ProblemKind::Is,
        instance.d(),
    ))
}

pub fn ptas_ddds(instance: &Instance, k: u32) -> Result<Solution> {
    let iterations = ptas_ddds_iterations(instance, k)?;
    Ok(pick(
        iterations,
        |a, b| a < b,
        ProblemKind::Ds,
        instance.d(),
    ))
}

fn pick(
    iterations: Vec<Iteration>,
    better: impl Fn(usize, usize) -> bool,
    kind: ProblemKind,
    d: u32,
) -> Solution {
    let mut stats = SolveStats::default();
    let mut best: Option<Solution> = None;
    for it in iterations {
        stats.absorb(it.solution.stats);
        if best
            .as_ref()
            .is_none_or(|b| better(it.solution.value(), b.value()))
        {
            best = Some(it.solution);
        }
    }
    best.unwrap_or_else(|| Solution::empty(kind, d, PTAS_LABEL))
        .with_stats(stats)
}

/// Every first-level iteration of the independent-set scheme.
pub fn ptas_ddis_iterations(instance: &Instance, k: u32) -> Result<Vec<Iteration>> {
    let d = instance.d();
    check_is_params(d, k)?;
    let Some(bbox) = instance.bounding_box() else {
        return Ok(Vec::new());
    };
    let g = instance.graph();
    let cfg = SquareConfig::default();

    let mut out = Vec::with_capacity(k as usize);
    for i in 1..=k {
        let mut stats = SolveStats::default();
        // working strip -> (chosen cells' union), best over j
        let mut per_strip: HashMap<usize, Vec<usize>> = HashMap::new();
        for j in 1..=k {
            let shift = ShiftConfig::new(k, d, i, j)?;
            let grid = CellGrid::new(
                instance.points(),
                0..instance.len(),
                bbox.min,
                StripAxis::Vertical,
                shift.separated(i),
                shift.separated(j),
            );
            for (strip, cells) in grid.strips() {
                if strip % 2 == 1 {
                    continue;
                }
                let mut union = Vec::new();
                for (cell, members) in cells {
                    if cell % 2 == 1 {
                        continue;
                    }
                    let rect = grid.cell_rect(CellId { strip, cell });
                    let window = instance.points_near(&rect, f64::from(d));
                    let hops = HopMatrix::induced(&g, &window)?;
                    let sol =
                        solve_square_ddis_with(&rect, members, instance.points(), &hops, d, &cfg);
                    stats.absorb(sol.stats);
                    union.extend(sol.into_selected());
                }
                let slot = per_strip.entry(strip).or_default();
                if union.len() > slot.len() {
                    *slot = union;
                }
            }
        }
        let selected: Vec<usize> = per_strip.into_values().flatten().collect();
        out.push(Iteration {
            i,
            j: None,
            solution: Solution::new(ProblemKind::Is, d, PTAS_LABEL, selected).with_stats(stats),
        });
    }
    Ok(out)
}

/// Every `(i, j)` iteration of the dominating-set scheme.
pub fn ptas_ddds_iterations(instance: &Instance, k: u32) -> Result<Vec<Iteration>> {
    let d = instance.d();
    check_ds_params(d, k)?;
    let Some(bbox) = instance.bounding_box() else {
        return Ok(Vec::new());
    };
    let g = instance.graph();
    let cfg = SquareConfig::default();

    let mut out = Vec::with_capacity((k * k) as usize);
    for i in 1..=k {
        for j in 1..=k {
            let shift = ShiftConfig::new(k, d, i, j)?;
            let grid = CellGrid::new(
                instance.points(),
                0..instance.len(),
                bbox.min,
                StripAxis::Horizontal,
                shift.contiguous(i),
                shift.contiguous(j),
            );
            let mut stats = SolveStats::default();
            let mut selected = Vec::new();
            for (id, members) in grid.cells() {
                let rect = grid.cell_rect(id);
                let window = instance.points_near(&rect, f64::from(d));
                let hops = HopMatrix::induced(&g, &window)?;
                let sol = solve_square_ddds_with(&rect, members, instance.points(), &hops, d, &cfg);
                stats.absorb(sol.stats);
                selected.extend(sol.into_selected());
            }
            out.push(Iteration {
                i,
                j: Some(j),
                solution: Solution::new(ProblemKind::Ds, d, PTAS_LABEL, selected).with_stats(stats),
            });
        }
    }
    Ok(out)
}

/// Exact maximum distance-`d` independent subset of `region` (all inside `square`).
pub fn solve_square_ddis(
    square: &Rect,
    region: &[usize],
    points: &[Point],
    hops: &HopMatrix,
    d: u32,
) -> Solution {
    solve_square_ddis_with(square, region, points, hops, d, &SquareConfig::default())
}

pub fn solve_square_ddis_with(
    square: &Rect,
    region: &[usize],
    points: &[Point],
    hops: &HopMatrix,
    d: u32,
    cfg: &SquareConfig,
) -> Solution {
    let mut solver = SquareSolver {
        points,
        hops,
        d,
        cfg: *cfg,
        stats: SolveStats::default(),
    };
    let mut region = region.to_vec();
    region.sort_unstable();
    region.dedup();
    let selected = solver.independent(square, region);
    Solution::new(ProblemKind::Is, d, "square", selected).with_stats(solver.stats)
}

/// Exact minimum distance-`d` dominating subset of `region` (all inside `square`).
pub fn solve_square_ddds(
    square: &Rect,
    region: &[usize],
    points: &[Point],
    hops: &HopMatrix,
    d: u32,
) -> Solution {
    solve_square_ddds_with(square, region, points, hops, d, &SquareConfig::default())
}

pub fn solve_square_ddds_with(
    square: &Rect,
    region: &[usize],
    points: &[Point],
    hops: &HopMatrix,
    d: u32,
    cfg: &SquareConfig,
) -> Solution {
    let mut solver = SquareSolver {
        points,
        hops,
        d,
        cfg: *cfg,
        stats: SolveStats::default(),
    };
    let mut region = region.to_vec();
    region.sort_unstable();
    region.dedup();
    let selected = solver
        .cover(square, region.clone(), region)
        .expect("every point dominates itself");
    Solution::new(ProblemKind::Ds, d, "square", selected).with_stats(solver.stats)
}

struct SquareSolver<'a> {
    points: &'a [Point],
    hops: &'a HopMatrix,
    d: u32,
    cfg: SquareConfig,
    stats: SolveStats,
}

impl SquareSolver<'_> {
    fn is_base(&self, rect: &Rect, size: usize) -> bool {
        rect.side() <= 2.0 * f64::from(self.d) || size <= self.cfg.base_points
    }

    fn band_distance(&self, rect: &Rect, v: usize) -> f64 {
        rect.center_line_distance(&self.points[v])
    }

    // Points within d of a center line are guessed; the guess must be
    // independent. Survivors off the band sit in quadrants that are more than
    // 2d apart from each other, so the quadrants recurse independently.
    fn independent(&mut self, rect: &Rect, region: Vec<usize>) -> Vec<usize> {
        if region.is_empty() {
            return region;
        }
        if self.is_base(rect, region.len()) {
            return max_independent_grouped(&region, self.hops, self.d, &mut self.stats);
        }
        self.stats.regions += 1;
        let reach = f64::from(self.d);
        let (band, rest): (Vec<usize>, Vec<usize>) = region
            .iter()
            .partition(|&&v| self.band_distance(rect, v) <= reach);
        if rest.is_empty() {
            return max_independent_grouped(&band, self.hops, self.d, &mut self.stats);
        }

        let quads = rect.quadrants();
        let mut guess = BandGuess {
            band: &band,
            chosen: Vec::new(),
            best: None,
            memo: HashMap::new(),
        };
        self.guess_independent(&mut guess, 0, &rest, &quads);
        let mut best = guess.best.unwrap_or_default();
        best.sort_unstable();
        best
    }

    fn guess_independent(
        &mut self,
        g: &mut BandGuess<'_, Vec<usize>>,
        pos: usize,
        rest: &[usize],
        quads: &[Rect; 4],
    ) {
        self.stats.nodes += 1;
        let best_len = g.best.as_ref().map_or(0, Vec::len);
        if g.best.is_some() && g.chosen.len() + (g.band.len() - pos) + rest.len() <= best_len {
            return;
        }
        if pos == g.band.len() {
            let d = self.d;
            let survivors: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|&p| g.chosen.iter().all(|&q| self.hops.at_least(q, p, d)))
                .collect();
            if g.best.is_some() && g.chosen.len() + survivors.len() <= best_len {
                return;
            }
            let mut total = g.chosen.clone();
            for (q, part) in split_quadrants(quads, self.points, &survivors) {
                let key = (q, part.clone());
                let sub = match g.memo.get(&key) {
                    Some(s) => s.clone(),
                    None => {
                        let s = self.independent(&quads[q], part);
                        g.memo.insert(key, s.clone());
                        s
                    }
                };
                total.extend(sub);
            }
            if g.best.is_none() || total.len() > best_len {
                g.best = Some(total);
            }
            return;
        }

        let v = g.band[pos];
        if g.chosen.iter().all(|&q| self.hops.at_least(q, v, self.d)) {
            g.chosen.push(v);
            self.guess_independent(g, pos + 1, rest, quads);
            g.chosen.pop();
        }
        self.guess_independent(g, pos + 1, rest, quads);
    }

    // Targets within d of a center line can only be dominated by candidates
    // within 2d of it, so the guess ranges over that wider band. Candidates
    // outside it reach only targets in their own quadrant.
    fn cover(&mut self, rect: &Rect, targets: Vec<usize>, cands: Vec<usize>) -> Option<Vec<usize>> {
        if targets.is_empty() {
            return Some(Vec::new());
        }
        let mut both: Vec<usize> = targets.iter().chain(&cands).copied().collect();
        both.sort_unstable();
        both.dedup();
        if self.is_base(rect, both.len()) {
            return min_cover_grouped(&targets, &cands, self.hops, self.d, &mut self.stats);
        }
        let reach = f64::from(self.d);
        let (wide, outer): (Vec<usize>, Vec<usize>) = cands
            .iter()
            .partition(|&&c| self.band_distance(rect, c) <= 2.0 * reach);
        if outer.is_empty() {
            return min_cover_grouped(&targets, &cands, self.hops, self.d, &mut self.stats);
        }
        self.stats.regions += 1;

        let covers: Vec<Vec<usize>> = wide
            .iter()
            .map(|&c| {
                (0..targets.len())
                    .filter(|&t| self.hops.within(c, targets[t], self.d))
                    .collect()
            })
            .collect();
        // last wide position able to cover each narrow target
        let mut deadline: Vec<Vec<usize>> = vec![Vec::new(); wide.len()];
        for (t, &tv) in targets.iter().enumerate() {
            if self.band_distance(rect, tv) > reach {
                continue;
            }
            let last = (0..wide.len()).rev().find(|&w| covers[w].contains(&t))?;
            deadline[last].push(t);
        }

        let quads = rect.quadrants();
        let mut guess = CoverGuess {
            inner: BandGuess {
                band: &wide,
                chosen: Vec::new(),
                best: None,
                memo: HashMap::new(),
            },
            targets: &targets,
            outer: &outer,
            covers: &covers,
            deadline: &deadline,
            covered: vec![0; targets.len()],
        };
        self.guess_cover(&mut guess, 0, &quads);
        guess.inner.best.map(|mut b| {
            b.sort_unstable();
            b
        })
    }

    fn guess_cover(&mut self, g: &mut CoverGuess<'_>, pos: usize, quads: &[Rect; 4]) {
        self.stats.nodes += 1;
        if let Some(b) = &g.inner.best {
            if g.inner.chosen.len() >= b.len() {
                return;
            }
        }
        if pos == g.inner.band.len() {
            let remaining: Vec<usize> = (0..g.targets.len())
                .filter(|&t| g.covered[t] == 0)
                .map(|t| g.targets[t])
                .collect();
            let mut total: Vec<usize> = g.inner.chosen.clone();
            let target_parts = split_quadrants(quads, self.points, &remaining);
            let cand_parts = split_quadrants(quads, self.points, g.outer);
            for (q, part) in target_parts {
                let key = (q, part.clone());
                let sub = match g.inner.memo.get(&key) {
                    Some(s) => s.clone(),
                    None => {
                        let cands = cand_parts
                            .iter()
                            .find(|(cq, _)| *cq == q)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_default();
                        let s = self.cover(&quads[q], part, cands);
                        g.inner.memo.insert(key, s.clone());
                        s
                    }
                };
                match sub {
                    Some(s) => total.extend(s),
                    None => return,
                }
            }
            if g.inner.best.as_ref().is_none_or(|b| total.len() < b.len()) {
                g.inner.best = Some(total);
            }
            return;
        }

        let c = g.inner.band[pos];
        g.inner.chosen.push(c);
        for &t in &g.covers[pos] {
            g.covered[t] += 1;
        }
        self.guess_cover(g, pos + 1, quads);
        for &t in &g.covers[pos] {
            g.covered[t] -= 1;
        }
        g.inner.chosen.pop();

        // skipping c is only possible if no narrow target loses its last chance
        if g.deadline[pos].iter().all(|&t| g.covered[t] > 0) {
            self.guess_cover(g, pos + 1, quads);
        }
    }
}

struct BandGuess<'a, S> {
    band: &'a [usize],
    chosen: Vec<usize>,
    best: Option<Vec<usize>>,
    memo: HashMap<(usize, Vec<usize>), S>,
}

struct CoverGuess<'a> {
    inner: BandGuess<'a, Option<Vec<usize>>>,
    targets: &'a [usize],
    outer: &'a [usize],
    covers: &'a [Vec<usize>],
    deadline: &'a [Vec<usize>],
    covered: Vec<u32>,
}

/// Non-empty quadrant groups, ascending within each group.
fn split_quadrants(
    quads: &[Rect; 4],
    points: &[Point],
    verts: &[usize],
) -> Vec<(usize, Vec<usize>)> {
    let mut parts: [Vec<usize>; 4] = Default::default();
    // quadrants share the parent's center, so any of them can classify
    let parent = Rect::new(quads[0].min, quads[3].max);
    for &v in verts {
        parts[parent.quadrant_of(&points[v])].push(v);
    }
    parts
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{oracle_ddds, oracle_ddis};

    fn inst(coords: &[(f64, f64)], d: u32) -> Instance {
        Instance::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect(), d).unwrap()
    }

    fn line5(d: u32) -> Instance {
        inst(
            &[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)],
            d,
        )
    }

    fn forced() -> SquareConfig {
        SquareConfig { base_points: 0 }
    }

    #[test]
    fn shift_config_bounds() {
        assert!(ShiftConfig::new(3, 2, 1, 3).is_ok());
        assert!(ShiftConfig::new(3, 2, 0, 1).is_err());
        assert!(ShiftConfig::new(3, 2, 1, 4).is_err());
    }

    #[test]
    fn ptas_parameter_errors() {
        assert!(ptas_ddis(&line5(3), 2).is_err());
        assert!(ptas_ddis(&line5(1), 3).is_err());
        assert!(ptas_ddds(&line5(3), 2).is_err());
        assert!(ptas_ddds(&line5(1), 1).is_err());
        assert!(ptas_ddds(&line5(1), 2).is_ok());
    }

    #[test]
    fn ptas_examples() {
        assert_eq!(ptas_ddis(&inst(&[(1.0, 1.0)], 3), 6).unwrap().value(), 1);
        assert_eq!(ptas_ddis(&line5(3), 6).unwrap().value(), 2);
        assert_eq!(ptas_ddds(&inst(&[(1.0, 1.0)], 3), 3).unwrap().value(), 1);
        assert_eq!(ptas_ddds(&line5(3), 6).unwrap().value(), 1);
        let far = inst(&[(0.0, 0.0), (5.0, 0.0)], 3);
        for k in 3..6 {
            assert_eq!(ptas_ddds(&far, k).unwrap().value(), 2);
        }
        assert_eq!(ptas_ddds(&inst(&[], 2), 2).unwrap().value(), 0);
    }

    #[test]
    fn tiny_cloud_gets_exact_value() {
        let cloud = inst(&[(0.0, 0.0), (0.3, 0.2), (0.5, 0.9), (0.9, 0.1)], 2);
        let opt = oracle_ddis(&cloud).unwrap().value();
        assert_eq!(ptas_ddis(&cloud, 2).unwrap().value(), opt);
        let opt = oracle_ddds(&cloud.with_d(1).unwrap()).unwrap().value();
        assert_eq!(
            ptas_ddds(&cloud.with_d(1).unwrap(), 2).unwrap().value(),
            opt
        );
    }

    #[test]
    fn square_is_line_on_center() {
        // five points along the horizontal center line of a 6x6 square
        let i = inst(
            &[(1.0, 3.0), (2.0, 3.0), (3.0, 3.0), (4.0, 3.0), (5.0, 3.0)],
            3,
        );
        let sq = Rect::square(Point::new(0.0, 0.0), 6.0);
        let h = HopMatrix::new(&i.graph());
        let region: Vec<usize> = (0..5).collect();
        let s = solve_square_ddis_with(&sq, &region, i.points(), &h, 3, &forced());
        assert_eq!(s.value(), 2);
    }

    #[test]
    fn square_is_empty_band_unions_quadrants() {
        // side 12, d = 2: all points more than 2 from the lines at 6
        let i = inst(
            &[
                (1.0, 1.0),
                (1.5, 1.0),
                (10.0, 1.0),
                (1.0, 10.0),
                (10.0, 10.0),
                (10.5, 10.5),
            ],
            2,
        );
        let sq = Rect::square(Point::new(0.0, 0.0), 12.0);
        let h = HopMatrix::new(&i.graph());
        let region: Vec<usize> = (0..6).collect();
        let s = solve_square_ddis_with(&sq, &region, i.points(), &h, 2, &forced());
        assert_eq!(s.selected(), &[0, 2, 3, 4]);
    }

    #[test]
    fn square_ds_line_straddling_vertical() {
        let i = inst(
            &[(2.0, 1.0), (3.0, 1.0), (4.0, 1.0), (5.0, 1.0), (6.0, 1.0)],
            3,
        );
        let sq = Rect::square(Point::new(0.0, 0.0), 8.0);
        let h = HopMatrix::new(&i.graph());
        let region: Vec<usize> = (0..5).collect();
        let s = solve_square_ddds_with(&sq, &region, i.points(), &h, 3, &forced());
        assert_eq!(s.value(), 1);
    }

    #[test]
    fn square_ds_band_target_dominated_from_outside_band() {
        // d = 1, lines at 4. b = (3.2, 1) is in the band; its best dominator
        // q = (2.3, 1) is not, and q also covers (1.5, 1). Eleven isolated
        // points keep the instance above the base-case size.
        let mut coords = vec![(3.2, 1.0), (2.3, 1.0), (1.5, 1.0)];
        let isolated = [
            (0.5, 6.0),
            (2.0, 6.0),
            (0.5, 7.5),
            (2.0, 7.5),
            (6.0, 6.0),
            (7.5, 6.0),
            (6.0, 7.5),
            (7.5, 7.5),
            (6.0, 0.5),
            (7.5, 0.5),
            (6.0, 2.0),
        ];
        coords.extend(isolated);
        let i = inst(&coords, 1);
        assert_eq!(i.len(), 14);
        let sq = Rect::square(Point::new(0.0, 0.0), 8.0);
        let h = HopMatrix::new(&i.graph());
        let region: Vec<usize> = (0..14).collect();
        let s = solve_square_ddds(&sq, &region, i.points(), &h, 1);
        assert_eq!(s.value(), oracle_ddds(&i).unwrap().value());
        assert_eq!(s.value(), 12);
    }

    #[test]
    fn every_iteration_is_reported() {
        let i = line5(2);
        assert_eq!(ptas_ddis_iterations(&i, 3).unwrap().len(), 3);
        assert_eq!(ptas_ddds_iterations(&i, 3).unwrap().len(), 9);
    }
}
