//! Four-factor approximation for the minimum distance-d dominating set.
//!
//! The bounding region is cut into square cells of side `3d / sqrt(2)`. Each
//! cell's points are dominated optimally using dominators from the same cell,
//! with hop counts taken over the cell grown by `d` on every side. The answer
//! is the union over all cells.

use std::f64::consts::SQRT_2;

use crate::error::Result;
use crate::exact::exact_ddds_region;
use crate::geometry::{HopMatrix, Instance};
use crate::grid::{CellGrid, StripAxis, StripPattern};
use crate::solution::{ProblemKind, Solution, SolveStats};

pub const APPROX_LABEL: &str = "approx4";

/// Side length of a dominating-set cell.
pub fn cell_side(d: u32) -> f64 {
    3.0 * f64::from(d) / SQRT_2
}

/// Colors 1..=4 in a repeating 2x2 block. Same-colored distinct cells have a
/// whole cell between them along some axis, and `3d / sqrt(2) > 2d`.
pub fn cell_color(col: usize, row: usize) -> u8 {
    (2 * (row % 2) + col % 2 + 1) as u8
}

pub fn approx4_ddds(instance: &Instance) -> Result<Solution> {
    let d = instance.d();
    let Some(bbox) = instance.bounding_box() else {
        return Ok(Solution::empty(ProblemKind::Ds, d, APPROX_LABEL));
    };

    let g = instance.graph();
    let side = cell_side(d);
    let grid = CellGrid::new(
        instance.points(),
        0..instance.len(),
        bbox.min,
        StripAxis::Horizontal,
        StripPattern::uniform(side),
        StripPattern::uniform(side),
    );

    let mut stats = SolveStats::default();
    let mut selected = Vec::new();
    for (id, members) in grid.cells() {
        let rect = grid.cell_rect(id);
        let window = instance.points_near(&rect, f64::from(d));
        let hops = HopMatrix::induced(&g, &window)?;
        let sol = exact_ddds_region(members, &hops, d);
        debug_assert!(sol.value() >= 1 && sol.value() <= members.len());
        stats.absorb(sol.stats);
        selected.extend(sol.into_selected());
    }
    Ok(Solution::new(ProblemKind::Ds, d, APPROX_LABEL, selected).with_stats(stats))
}
