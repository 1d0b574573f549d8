//! Four-factor approximation for the maximum distance-d independent set.
//!
//! Horizontal strips of height `d` are cut into `d x d` squares. Each square
//! is solved exactly; within a strip the odd-numbered squares are pairwise
//! more than `d` apart, as are the even ones, and likewise for strips. The
//! larger of each odd/even union is kept, first per strip and then across
//! strips.

use crate::error::{Error, Result};
use crate::exact::exact_ddis_region;
use crate::geometry::{HopMatrix, Instance};
use crate::grid::{CellGrid, CellId, StripAxis, StripPattern};
use crate::solution::{ProblemKind, Solution, SolveStats};

pub const APPROX_LABEL: &str = "approx4";

pub fn approx4_ddis(instance: &Instance) -> Result<Solution> {
    let d = instance.d();
    if d < 2 {
        return Err(Error::parameter(format!(
            "independent set needs d >= 2, got {d}"
        )));
    }
    let Some(bbox) = instance.bounding_box() else {
        return Ok(Solution::empty(ProblemKind::Is, d, APPROX_LABEL));
    };

    let g = instance.graph();
    let side = f64::from(d);
    let grid = CellGrid::new(
        instance.points(),
        0..instance.len(),
        bbox.min,
        StripAxis::Horizontal,
        StripPattern::uniform(side),
        StripPattern::uniform(side),
    );

    let mut stats = SolveStats::default();
    let mut odd_strips = Vec::new();
    let mut even_strips = Vec::new();
    for (strip, cells) in grid.strips() {
        let mut odd = Vec::new();
        let mut even = Vec::new();
        for (cell, members) in cells {
            let rect = grid.cell_rect(CellId { strip, cell });
            let window = instance.points_near(&rect, side);
            let hops = HopMatrix::induced(&g, &window)?;
            let sol = exact_ddis_region(members, &hops, d);
            stats.absorb(sol.stats);
            // squares are numbered from 1 at the origin
            if cell % 2 == 0 {
                odd.extend(sol.into_selected());
            } else {
                even.extend(sol.into_selected());
            }
        }
        let best = if even.len() > odd.len() { even } else { odd };
        if strip % 2 == 0 {
            odd_strips.extend(best);
        } else {
            even_strips.extend(best);
        }
    }

    let selected = if even_strips.len() > odd_strips.len() {
        even_strips
    } else {
        odd_strips
    };
    Ok(Solution::new(ProblemKind::Is, d, APPROX_LABEL, selected).with_stats(stats))
}
