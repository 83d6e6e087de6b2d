//! Low-rank separated surrogate models for parameterized static
//! electrothermal problems, built by proper generalized decomposition (PGD)
//! on finite-integration-technique (FIT) tensor grids.
//!
//! The crate is organized along the solver pipeline:
//!
//! * [`linalg`] — compressed sparse rows, banded Cholesky, preconditioned CG;
//! * [`mesh`] — tensor-product grids, FIT metric data, stiffness assembly and
//!   the edge-based Joule-loss right-hand side;
//! * [`separated`] — rank-one-sum representations over space × parameters,
//!   their evaluation, normalization and weighted inner products;
//! * [`pgd`] — the greedy enrichment driver with alternating-direction fixed
//!   point iterations behind an abstract spatial-solver boundary;
//! * [`electrothermal`] — the electrokinetic and thermal subproblems and the
//!   separated Joule coupling between them;
//! * [`oracle`] — closed-form references for the 1D model problem and a
//!   brute-force full parametric sweep.

pub mod electrothermal;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod oracle;
pub mod pgd;
pub mod separated;

pub use error::Error;
