//! Strip and cell partitions anchored at a grid origin.
//!
//! Every interval is half-open, `[lo, hi)`, in grid-local coordinates
//! (offsets from the origin). The origin is the bounding-box min corner, so
//! the extreme point of the instance is always interior to the first strip.

use std::collections::BTreeMap;

use crate::geometry::{Point, Rect};

/// A 1-D partition of `[0, inf)`: one leading interval of width `first`
/// followed by `period` repeated forever.
#[derive(Debug, Clone, PartialEq)]
pub struct StripPattern {
    first: f64,
    period: Vec<f64>,
    period_len: f64,
}

impl StripPattern {
    /// Equal widths everywhere.
    pub fn uniform(width: f64) -> Self {
        Self::shifted(width, vec![width])
    }

    pub fn shifted(first: f64, period: Vec<f64>) -> Self {
        assert!(first > 0.0, "leading strip must have positive width");
        assert!(
            !period.is_empty() && period.iter().all(|&w| w > 0.0),
            "strip widths must be positive"
        );
        let period_len = period.iter().sum();
        StripPattern {
            first,
            period,
            period_len,
        }
    }

    pub fn first(&self) -> f64 {
        self.first
    }

    pub fn period(&self) -> &[f64] {
        &self.period
    }

    /// Zero-based index of the interval holding offset `t >= 0`.
    pub fn index_of(&self, t: f64) -> usize {
        if t < self.first {
            return 0;
        }
        if self.period.len() == 1 && self.period[0] == self.first {
            return (t / self.first).floor() as usize;
        }
        let r = t - self.first;
        let q = (r / self.period_len).floor();
        let mut rem = r - q * self.period_len;
        let base = 1 + q as usize * self.period.len();
        for (p, &w) in self.period.iter().enumerate() {
            if rem < w {
                return base + p;
            }
            rem -= w;
        }
        base + self.period.len()
    }

    /// `[lo, hi)` offsets of interval `index`.
    pub fn bounds(&self, index: usize) -> (f64, f64) {
        if index == 0 {
            return (0.0, self.first);
        }
        if self.period.len() == 1 && self.period[0] == self.first {
            let w = self.first;
            return (index as f64 * w, (index + 1) as f64 * w);
        }
        let k = index - 1;
        let (q, p) = (k / self.period.len(), k % self.period.len());
        let lo = self.first + q as f64 * self.period_len + self.period[..p].iter().sum::<f64>();
        (lo, lo + self.period[p])
    }
}

/// Direction the strips run in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripAxis {
    /// Strips stacked along y; cells cut along x.
    Horizontal,
    /// Strips side by side along x; cells cut along y.
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub strip: usize,
    pub cell: usize,
}

/// Strips, cells and the assignment of points to cells.
#[derive(Debug, Clone)]
pub struct CellGrid {
    origin: Point,
    axis: StripAxis,
    strips: StripPattern,
    cells: StripPattern,
    members: BTreeMap<CellId, Vec<usize>>,
}

impl CellGrid {
    /// Assigns the listed point indices. Points are expected to lie at or
    /// beyond the origin on both axes.
    pub fn new(
        points: &[Point],
        subset: impl IntoIterator<Item = usize>,
        origin: Point,
        axis: StripAxis,
        strips: StripPattern,
        cells: StripPattern,
    ) -> Self {
        let mut grid = CellGrid {
            origin,
            axis,
            strips,
            cells,
            members: BTreeMap::new(),
        };
        for i in subset {
            let id = grid.locate(&points[i]);
            grid.members.entry(id).or_default().push(i);
        }
        grid
    }

    fn local(&self, p: &Point) -> (f64, f64) {
        let (dx, dy) = (p.x - self.origin.x, p.y - self.origin.y);
        match self.axis {
            StripAxis::Horizontal => (dy, dx),
            StripAxis::Vertical => (dx, dy),
        }
    }

    pub fn locate(&self, p: &Point) -> CellId {
        let (s, c) = self.local(p);
        CellId {
            strip: self.strips.index_of(s.max(0.0)),
            cell: self.cells.index_of(c.max(0.0)),
        }
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn axis(&self) -> StripAxis {
        self.axis
    }

    /// Non-empty cells in (strip, cell) order; members ascending.
    pub fn cells(&self) -> impl Iterator<Item = (CellId, &[usize])> {
        self.members.iter().map(|(id, v)| (*id, v.as_slice()))
    }

    /// Non-empty cells grouped by strip.
    pub fn strips(&self) -> BTreeMap<usize, Vec<(usize, &[usize])>> {
        let mut out: BTreeMap<usize, Vec<(usize, &[usize])>> = BTreeMap::new();
        for (id, members) in &self.members {
            out.entry(id.strip)
                .or_default()
                .push((id.cell, members.as_slice()));
        }
        out
    }

    pub fn members(&self, id: CellId) -> &[usize] {
        self.members.get(&id).map_or(&[], Vec::as_slice)
    }

    pub fn cell_rect(&self, id: CellId) -> Rect {
        let (s0, s1) = self.strips.bounds(id.strip);
        let (c0, c1) = self.cells.bounds(id.cell);
        let o = self.origin;
        match self.axis {
            StripAxis::Horizontal => Rect::new(
                Point::new(o.x + c0, o.y + s0),
                Point::new(o.x + c1, o.y + s1),
            ),
            StripAxis::Vertical => Rect::new(
                Point::new(o.x + s0, o.y + c0),
                Point::new(o.x + s1, o.y + c1),
            ),
        }
    }
}
