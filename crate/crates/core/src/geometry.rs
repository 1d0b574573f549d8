//! Point sets, unit disk graphs and hop distances.
//!
//! Coordinates are measured in units of the disk diameter, so two points are
//! adjacent exactly when their Euclidean distance is at most 1. Every solver in
//! the crate works on hop counts over this graph; since each edge spans at most
//! one unit, a hop count is never smaller than the rounded-up Euclidean
//! distance. Strip and cell separations rely on that bound.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }
}

/// Axis-aligned box, half-open on the max side: `[min.x, max.x) x [min.y, max.y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Self {
        Rect { min, max }
    }

    pub fn square(min: Point, side: f64) -> Self {
        Rect::new(min, Point::new(min.x + side, min.y + side))
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Length of the longer side.
    pub fn side(&self) -> f64 {
        self.width().max(self.height())
    }

    pub fn center(&self) -> Point {
        Point::new(
            (self.min.x + self.max.x) / 2.0,
            (self.min.y + self.max.y) / 2.0,
        )
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.min.x && p.x < self.max.x && p.y >= self.min.y && p.y < self.max.y
    }

    /// Closed containment test for the box grown by `margin` on every side.
    pub fn contains_within(&self, p: &Point, margin: f64) -> bool {
        p.x >= self.min.x - margin
            && p.x <= self.max.x + margin
            && p.y >= self.min.y - margin
            && p.y <= self.max.y + margin
    }

    /// The four quadrants cut by the center lines, ordered
    /// lower-left, lower-right, upper-left, upper-right.
    pub fn quadrants(&self) -> [Rect; 4] {
        let c = self.center();
        [
            Rect::new(self.min, c),
            Rect::new(Point::new(c.x, self.min.y), Point::new(self.max.x, c.y)),
            Rect::new(Point::new(self.min.x, c.y), Point::new(c.x, self.max.y)),
            Rect::new(c, self.max),
        ]
    }

    /// Index into [`Rect::quadrants`] for a point strictly off the center lines.
    pub fn quadrant_of(&self, p: &Point) -> usize {
        let c = self.center();
        usize::from(p.x >= c.x) + 2 * usize::from(p.y >= c.y)
    }

    /// Euclidean distance from `p` to the nearer of the two center lines.
    pub fn center_line_distance(&self, p: &Point) -> f64 {
        let c = self.center();
        (p.x - c.x).abs().min((p.y - c.y).abs())
    }
}

/// A point set together with the distance parameter `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    points: Vec<Point>,
    d: u32,
}

impl Instance {
    pub fn new(points: Vec<Point>, d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::parameter("d must be at least 1"));
        }
        check_finite(&points)?;
        Ok(Instance { points, d })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same points, different distance parameter.
    pub fn with_d(&self, d: u32) -> Result<Self> {
        Instance::new(self.points.clone(), d)
    }

    /// Tight bounding box; the max corner is exclusive so it is nudged by one ulp.
    pub fn bounding_box(&self) -> Option<Rect> {
        let first = self.points.first()?;
        let (mut min, mut max) = (*first, *first);
        for p in &self.points[1..] {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Some(Rect::new(min, Point::new(next_up(max.x), next_up(max.y))))
    }

    pub fn graph(&self) -> UnitDiskGraph {
        UnitDiskGraph::from_finite(&self.points)
    }

    /// Indices of all points inside `rect` grown by `margin` (closed test).
    pub fn points_near(&self, rect: &Rect, margin: f64) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| rect.contains_within(&self.points[i], margin))
            .collect()
    }
}

fn next_up(v: f64) -> f64 {
    let next = if v == 0.0 {
        f64::from_bits(1)
    } else if v > 0.0 {
        f64::from_bits(v.to_bits() + 1)
    } else {
        f64::from_bits(v.to_bits() - 1)
    };
    if next.is_finite() {
        next
    } else {
        v
    }
}

fn check_finite(points: &[Point]) -> Result<()> {
    match points.iter().position(|p| !p.is_finite()) {
        Some(index) => Err(Error::NonFinite {
            index,
            x: points[index].x,
            y: points[index].y,
        }),
        None => Ok(()),
    }
}

/// Edge `(i, j)` exists iff `|p_i - p_j|^2 <= 1`, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitDiskGraph {
    adjacency: Vec<Vec<usize>>,
}

impl UnitDiskGraph {
    pub fn new(points: &[Point]) -> Result<Self> {
        check_finite(points)?;
        Ok(Self::from_finite(points))
    }

    fn from_finite(points: &[Point]) -> Self {
        let n = points.len();
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if points[i].dist_sq(&points[j]) <= 1.0 {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        // pushes happen in increasing j for both endpoints, so lists are sorted
        UnitDiskGraph { adjacency }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, adj)| adj.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    /// Breadth-first hop counts from `source`, stopping after `max_depth` hops.
    /// Unvisited vertices are `None`.
    pub fn bounded_bfs(&self, sources: &[usize], max_depth: u32) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap_or(0);
            if dv >= max_depth {
                continue;
            }
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

const ABSENT: u32 = u32::MAX;

/// All-pairs hop counts over a vertex set.
///
/// The matrix is either global (every vertex of the graph) or windowed: the
/// distances are taken in the subgraph induced by a chosen vertex set. A window
/// that contains every point within `d` of a region reproduces all global hop
/// counts `<= d` between points of that region, because such a path never
/// strays further than `d / 2` from its endpoints.
#[derive(Debug, Clone)]
pub struct HopMatrix {
    vertices: Vec<usize>,
    slot: Vec<u32>,
    table: Vec<u32>,
}

impl HopMatrix {
    pub const UNREACHABLE: u32 = u32::MAX;

    pub fn new(g: &UnitDiskGraph) -> Self {
        Self::build(g, (0..g.len()).collect())
    }

    /// Hop counts within the subgraph induced by `vertices`.
    pub fn induced(g: &UnitDiskGraph, vertices: &[usize]) -> Result<Self> {
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&bad) = vertices.last().filter(|&&v| v >= g.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: g.len(),
            });
        }
        Ok(Self::build(g, vertices))
    }

    fn build(g: &UnitDiskGraph, vertices: Vec<usize>) -> Self {
        let m = vertices.len();
        let mut slot = vec![ABSENT; g.len()];
        for (local, &v) in vertices.iter().enumerate() {
            slot[v] = local as u32;
        }
        let mut table = vec![Self::UNREACHABLE; m * m];
        let mut queue = VecDeque::with_capacity(m);
        for src in 0..m {
            let row = &mut table[src * m..(src + 1) * m];
            row[src] = 0;
            queue.clear();
            queue.push_back(vertices[src]);
            while let Some(v) = queue.pop_front() {
                let dv = row[slot[v] as usize];
                for &w in g.neighbors(v) {
                    let lw = slot[w];
                    if lw != ABSENT && row[lw as usize] == Self::UNREACHABLE {
                        row[lw as usize] = dv + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        HopMatrix {
            vertices,
            slot,
            table,
        }
    }

    /// Vertices covered by this matrix, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.slot.get(v).is_some_and(|&s| s != ABSENT)
    }

    /// Raw entry; [`HopMatrix::UNREACHABLE`] across components.
    ///
    /// Panics if either vertex is outside the matrix.
    pub fn raw(&self, a: usize, b: usize) -> u32 {
        let (la, lb) = (self.slot[a], self.slot[b]);
        assert!(
            la != ABSENT && lb != ABSENT,
            "vertex pair ({a}, {b}) is outside the hop window"
        );
        self.table[la as usize * self.vertices.len() + lb as usize]
    }

    pub fn hop(&self, a: usize, b: usize) -> Option<u32> {
        match self.raw(a, b) {
            Self::UNREACHABLE => None,
            h => Some(h),
        }
    }

    /// `hop(a, b) <= d`.
    pub fn within(&self, a: usize, b: usize, d: u32) -> bool {
        self.raw(a, b) <= d
    }

    /// `hop(a, b) >= d`, counting unreachable pairs as independent.
    pub fn at_least(&self, a: usize, b: usize, d: u32) -> bool {
        self.raw(a, b) >= d
    }
}

/// A partition of a vertex subset into groups that are pairwise at least
/// `d` hops apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    components: Vec<Vec<usize>>,
    d: u32,
}

impl ComponentDecomposition {
    /// Groups `subset` by the transitive closure of "adjacent or fewer than
    /// `threshold` hops apart". Only the hop matrix is consulted; an edge is a
    /// hop count of 1.
    pub fn from_hops(hops: &HopMatrix, subset: &[usize], threshold: u32) -> Self {
        let mut verts = subset.to_vec();
        verts.sort_unstable();
        verts.dedup();
        let mut dsu = DisjointSets::new(verts.len());
        for a in 0..verts.len() {
            for b in (a + 1)..verts.len() {
                let h = hops.raw(verts[a], verts[b]);
                if h == 1 || h < threshold {
                    dsu.union(a, b);
                }
            }
        }
        Self::collect(&verts, &mut dsu, threshold)
    }

    fn collect(verts: &[usize], dsu: &mut DisjointSets, d: u32) -> Self {
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
        for (local, &v) in verts.iter().enumerate() {
            by_root[dsu.find(local)].push(v);
        }
        let mut components: Vec<Vec<usize>> =
            by_root.into_iter().filter(|c| !c.is_empty()).collect();
        components.sort_unstable_by_key(|c| c[0]);
        ComponentDecomposition { components, d }
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Connected components of the subgraph induced by `subset`, merged
/// transitively while any two groups come within fewer than `d` hops.
pub fn merged_components(
    g: &UnitDiskGraph,
    hops: &HopMatrix,
    subset: &[usize],
    d: u32,
) -> Result<ComponentDecomposition> {
    if d == 0 {
        return Err(Error::parameter("merge distance must be at least 1"));
    }
    let mut verts = subset.to_vec();
    verts.sort_unstable();
    verts.dedup();
    for &v in &verts {
        if v >= g.len() {
            return Err(Error::IndexOutOfRange {
                index: v,
                len: g.len(),
            });
        }
        if !hops.contains(v) {
            return Err(Error::parameter(format!(
                "vertex {v} is not covered by the hop matrix"
            )));
        }
    }

    let mut local = vec![ABSENT; g.len()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i as u32;
    }
    let mut dsu = DisjointSets::new(verts.len());
    for (i, &v) in verts.iter().enumerate() {
        for &w in g.neighbors(v) {
            if local[w] != ABSENT {
                dsu.union(i, local[w] as usize);
            }
        }
    }

    // two groups merge when their closest pair is under d hops
    for a in 0..verts.len() {
        for b in (a + 1)..verts.len() {
            if hops.raw(verts[a], verts[b]) < d {
                dsu.union(a, b);
            }
        }
    }
    Ok(ComponentDecomposition::collect(&verts, &mut dsu, d))
}

#[derive(Debug)]
struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
