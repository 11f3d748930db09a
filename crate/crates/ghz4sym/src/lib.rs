//! Four-qubit GHZ-symmetric states and their SLOCC class geometry.
//!
//! A GHZ-symmetric four-qubit density matrix is fixed by four real numbers
//! (alpha1, alpha2, alpha3, beta) and lives, after an isometric change of
//! coordinates, inside a tetrahedron in (x, y, z) space. This crate provides:
//!
//! * the state family itself: construction, coordinates, physicality,
//!   the twirl projection of arbitrary pure states, and the mirror symmetry
//!   (`symstate`);
//! * representative pure states of the nine SLOCC classes and local
//!   invertible operations on them (`slocc`);
//! * closed-form boundary surfaces `x_max(y, z)` for the five solved classes,
//!   including the quartic and stationary-system solvers they need
//!   (`boundaries`, `quartic`);
//! * an independent penalty-method maximization oracle that re-derives each
//!   boundary numerically from the class anchors (`oracle`);
//! * region sampling, 3-D convex hulls, and inclusion checks between class
//!   regions (`region`, `hull`);
//! * CSV / OBJ / JSON export and re-import of all sampled geometry
//!   (`export`);
//! * the full verification suite used by `cargo test` and the CLI `verify`
//!   subcommand (`verify`).
//!
//! Grid sweeps and oracle restarts run data-parallel through rayon when the
//! default `parallel` feature is enabled; disabling it swaps in sequential
//! loops with identical results.

pub mod boundaries;
pub mod exec;
pub mod export;
pub mod hull;
pub mod oracle;
pub mod quartic;
pub mod region;
pub mod slocc;
pub mod symstate;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("pure state is not normalized (norm deviation {0:.3e})")]
    NotNormalized(f64),
    #[error("zero state vector")]
    ZeroState,
    #[error("class {0} takes {1} parameters")]
    BadParamCount(&'static str, usize),
    #[error("class {0} has no analytic anchor (unsolved boundary)")]
    NoAnchor(&'static str),
    #[error("class {0} has no analytic boundary (unsolved)")]
    Unsolved(&'static str),
    #[error("local operation is singular (|det| = {0:.3e} on qubit {1})")]
    SingularOp(f64, usize),
    #[error("degenerate polynomial: all coefficients zero")]
    DegeneratePoly,
    #[error("convex hull needs at least {0} points, got {1}")]
    TooFewPoints(usize, usize),
    #[error("unknown class tag `{0}`")]
    UnknownTag(String),
    #[error("malformed {kind} input: {detail}")]
    Parse { kind: &'static str, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use boundaries::{alphas_from_yz, effective_xmax, BoundaryResult};
pub use oracle::{maximize_x, OptimConfig, OracleResult};
pub use slocc::{LocalOp, SloccClass};
pub use symstate::{ParamPoint, PureState, SymmetricState};
