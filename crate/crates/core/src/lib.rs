//! Product-space reformulations and parallel splitting algorithms for finding zeros of
//! sums of maximally monotone operators, and for computing resolvents of such sums.
//!
//! * [`sets`] and [`resolvent`]: projectors and resolvent primitives.
//! * [`lift`]: the standard `H^r` lift and the reduced `H^{r-1}` lift.
//! * [`solvers`]: Reduced-DR, Standard-DR, Ryu, Malitsky–Tam and parallel AAMR.
//! * [`problems`]: generalized Heron and Sudoku benchmark families.

pub mod error;
pub mod lift;
pub mod problems;
pub mod resolvent;
pub mod sets;
pub mod solvers;
pub mod vector;

pub use error::{Result, SplitError};
pub use lift::{
    diagonal_project, project_k_nonconvex, resolvent_sum_reduced, ReducedLift, StandardLift,
};
pub use resolvent::{
    AffineOperator, DistanceSubdifferential, NormalCone, Operator, Resolvent, ZeroOperator,
};
pub use sets::{
    project_basis_set, projection_composition_check, prox_distance, AffineFixSet, AffineSubspace,
    BallSet, BoxSet, FinitePointSet, Projector,
};
pub use solvers::{SolverConfig, SolverTrace, StopReason};
pub use vector::{BlockVector, Vector};
