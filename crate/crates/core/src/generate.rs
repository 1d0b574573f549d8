//! Seeded random instances.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Instance, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    /// Independent uniform points in `[0, width] x [0, height]`.
    Uniform,
    /// `ceil(n / 10)` uniform centers; points lie within distance 1 of a center.
    Cluster,
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution::Uniform => "uniform",
            Distribution::Cluster => "cluster",
        })
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Distribution::Uniform),
            "cluster" => Ok(Distribution::Cluster),
            other => Err(Error::Parameter(format!(
                "unknown distribution '{other}', expected 'uniform' or 'cluster'"
            ))),
        }
    }
}

pub fn generate_instance(
    n: usize,
    d: u32,
    width: f64,
    height: f64,
    distribution: Distribution,
    seed: u64,
) -> Result<Instance> {
    if !(width.is_finite() && width > 0.0 && height.is_finite() && height > 0.0) {
        return Err(Error::Parameter(format!(
            "width and height must be positive, got {width} x {height}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = match distribution {
        Distribution::Uniform => (0..n)
            .map(|_| Point::new(rng.gen_range(0.0..=width), rng.gen_range(0.0..=height)))
            .collect(),
        Distribution::Cluster => {
            let centers: Vec<Point> = (0..n.div_ceil(10))
                .map(|_| Point::new(rng.gen_range(0.0..=width), rng.gen_range(0.0..=height)))
                .collect();
            (0..n)
                .map(|_| {
                    let c = centers[rng.gen_range(0..centers.len())];
                    // sqrt keeps the offset uniform over the unit disk
                    let r = rng.gen::<f64>().sqrt();
                    let theta = rng.gen_range(0.0..TAU);
                    Point::new(c.x + r * theta.cos(), c.y + r * theta.sin())
                })
                .collect()
        }
    };
    Instance::new(points, d)
}
