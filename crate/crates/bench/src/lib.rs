//! Fixed instance families shared by the criterion benches.

use udgsets::{generate_instance, Distribution, Instance};

/// Uniform points at roughly 0.45 points per unit area.
pub fn uniform(n: usize, d: u32, seed: u64) -> Instance {
    let side = (n as f64).sqrt() * 1.5;
    generate_instance(n, d, side, side, Distribution::Uniform, seed).expect("valid parameters")
}

/// Tight clusters spread over the same area as [`uniform`].
pub fn clustered(n: usize, d: u32, seed: u64) -> Instance {
    let side = (n as f64).sqrt() * 1.5;
    generate_instance(n, d, side, side, Distribution::Cluster, seed).expect("valid parameters")
}
