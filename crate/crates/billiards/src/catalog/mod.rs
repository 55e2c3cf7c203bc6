//! Concrete topological computations: the permutation cell structure of
//! the torus quotient, the explicit sphere-triple complex, and the
//! Schubert-calculus bookkeeping for the star manifolds `V_{n,p}`.

mod schubert;
mod sphere_triple;
mod torus;

pub use schubert::{
    degree_basis, grassmann_betti, limit_rows, pieri_multiply, sigma2_matrix, vnp_betti_sum,
    RingElement, SchubertClass,
};
pub use sphere_triple::{cells, sphere_triple_complex, sphere_triple_homology};
pub use torus::{
    component_count, torus_betti_profile, torus_components, TorusCell, TorusComponents,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{0:?} is not a permutation of 0..p")]
    NotAPermutation(Vec<usize>),
    #[error("period {0} unsupported: need odd p with 3 <= p <= 9")]
    UnsupportedPeriod(usize),
    #[error("move-closure class is not invariant-homogeneous at p = {0}")]
    InhomogeneousClass(usize),
    #[error("invalid partition {0:?}: parts must be in {{1,2}} and weakly decreasing")]
    InvalidPartition(Vec<u8>),
    #[error("special class index {0} must be 1 or 2")]
    InvalidSpecialClass(u8),
    #[error("sphere dimension {0} unsupported: need n >= 2")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
}
