//! Numerical search for p-periodic billiard trajectories on manifolds
//! embedded in Euclidean space, together with the topological lower
//! bounds on how many such trajectories must exist.
//!
//! A p-periodic billiard trajectory is a closed polygon with vertices on
//! the manifold such that at every vertex the two edges make equal angles
//! with the surface; equivalently, a critical point of the total chord
//! length of the polygon. The crate has two halves that check each other:
//!
//! * the *analytic* side ([`manifold`], [`billiard`], [`search`]) finds
//!   trajectories by multistart Newton iteration on the tangential
//!   gradient of the length functional and classifies them by Morse
//!   index;
//! * the *topological* side ([`homology`], [`catalog`]) computes the
//!   dimension counts (cell complexes over `Z_2` and `Z_3`, Schubert
//!   calculus, transfer inequalities) that force lower bounds on the
//!   number of critical points.
//!
//! The [`experiment`] module ties the two together: a run searches a
//! manifold, evaluates the requested bounds, and cross-validates the
//! observed count against each bound.

pub mod billiard;
pub mod catalog;
pub mod experiment;
pub mod homology;
mod linalg;
pub mod manifold;
pub mod plot;
pub mod search;

pub use billiard::{
    canonical_orbit_representative, morse_index, rotation_number, Configuration,
    CriticalPointReport, DihedralAction, SmoothingParams,
};
pub use experiment::{ExperimentSpec, ResultRecord};
pub use homology::{BettiProfile, ChainComplex, FFMatrix};
pub use manifold::{ChartPoint, Manifold, ManifoldKind};
pub use search::{find_trajectories, SearchConfig, SearchReport};
