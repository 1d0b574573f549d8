//! Distance-d independent and dominating sets on unit disk graphs.
//!
//! Exact per-region solvers, four-factor approximations, and two-level
//! shifting schemes for both problems, plus the file formats, generators and
//! verification used by the command-line tool.

pub mod approx_ds;
pub mod approx_is;
pub mod bench;
pub mod error;
pub mod exact;
pub mod generate;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod ptas;
pub mod solution;
pub mod verify;

pub use approx_ds::{approx4_ddds, cell_color, cell_side};
pub use approx_is::approx4_ddis;
pub use bench::{bench_run, solve, write_csv, Algorithm, BenchConfig, BenchRecord};
pub use error::{Error, Result};
pub use exact::{
    exact_ddds_region, exact_ddis_region, oracle_ddds, oracle_ddds_capped, oracle_ddis,
    oracle_ddis_capped, DEFAULT_ORACLE_CAP,
};
pub use generate::{generate_instance, Distribution};
pub use geometry::{
    merged_components, ComponentDecomposition, HopMatrix, Instance, Point, Rect, UnitDiskGraph,
};
pub use grid::{CellGrid, CellId, StripAxis, StripPattern};
pub use io::{format_instance, parse_instance, solution_from_json, solution_to_json, SolutionFile};
pub use ptas::{
    ptas_ddds, ptas_ddds_iterations, ptas_ddis, ptas_ddis_iterations, solve_square_ddds,
    solve_square_ddds_with, solve_square_ddis, solve_square_ddis_with, Iteration, ShiftConfig,
    SquareConfig,
};
pub use solution::{ProblemKind, Solution, SolveStats};
pub use verify::{verify_solution, VerifyReport, Violation};
