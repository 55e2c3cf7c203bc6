//! The explicit relative cell complex computing
//! `H_*((S^2)^3 / D_3, Δ; Z_2)`.
//!
//! The sphere is modelled as a square with its boundary collapsed to a
//! point; cells of the cube of spheres are cut out by order relations
//! between the three `φ` and three `ψ` coordinates. After collapsing the
//! diagonal, the surviving cells live in degrees 3 through 6 and degree
//! counts are 2, 8, 12, 6. The boundary maps are fixed data; their
//! `∂∘∂ = 0` and the resulting homology are asserted by tests.

use crate::homology::{ChainComplex, FFMatrix, HomologyError};

/// Index layout inside each degree of [`sphere_triple_complex`].
///
/// * degree 6: `ω_1..ω_6` at 0..6
/// * degree 5: `σ_1..σ_6` at 0..6, `δ_1..δ_6` at 6..12
/// * degree 4: `α_1, α_2` at 0..2, `β_1..β_4` at 2..6, `γ_1, γ_2` at 6..8
/// * degree 3: `κ_1, κ_2` at 0..2
pub mod cells {
    pub const SIGMA: usize = 0;
    pub const DELTA: usize = 6;
    pub const ALPHA: usize = 0;
    pub const BETA: usize = 2;
    pub const GAMMA: usize = 6;
}

const DIM_3: usize = 2;
const DIM_4: usize = 8;
const DIM_5: usize = 12;
const DIM_6: usize = 6;

/// Boundary of each 6-cell as row indices into degree 5.
const BOUNDARY_6: [&[usize]; DIM_6] = [
    // ω1 -> δ1 + δ6 + σ1 + σ6
    &[6, 11, 0, 5],
    // ω2 -> δ3 + δ6 + σ3 + σ6
    &[8, 11, 2, 5],
    // ω3 -> δ1 + δ4 + σ1 + σ4
    &[6, 9, 0, 3],
    // ω4 -> δ2 + δ3 + σ4 + σ5
    &[7, 8, 3, 4],
    // ω5 -> δ4 + δ5 + σ2 + σ3
    &[9, 10, 1, 2],
    // ω6 -> δ2 + δ5 + σ2 + σ5
    &[7, 10, 1, 4],
];

/// Boundary of each 5-cell as row indices into degree 4.
const BOUNDARY_5: [&[usize]; DIM_5] = [
    // σ1 -> α2 + β4
    &[1, 5],
    // σ2 -> α2 + β2
    &[1, 3],
    // σ3 -> α2 + β3 + β4
    &[1, 4, 5],
    // σ4 -> α2 + β1 + β2
    &[1, 2, 3],
    // σ5 -> α2 + β3
    &[1, 4],
    // σ6 -> α2 + β1
    &[1, 2],
    // δ1 -> α1 + β1
    &[0, 2],
    // δ2 -> α1 + β2
    &[0, 3],
    // δ3 -> α1 + β1 + β3
    &[0, 2, 4],
    // δ4 -> α1 + β2 + β4
    &[0, 3, 5],
    // δ5 -> α1 + β3
    &[0, 4],
    // δ6 -> α1 + β4
    &[0, 5],
];

/// Boundary of each 4-cell as row indices into degree 3. The α and β
/// cells are cycles; both γ cells hit κ1 + κ2.
const BOUNDARY_4: [&[usize]; DIM_4] = [&[], &[], &[], &[], &[], &[], &[0, 1], &[0, 1]];

fn boundary_matrix(rows: usize, columns: &[&[usize]]) -> FFMatrix {
    let mut m = FFMatrix::zeros(2, rows, columns.len()).expect("2 is prime");
    for (col, faces) in columns.iter().enumerate() {
        for &row in *faces {
            m.set(row, col, 1);
        }
    }
    m
}

/// Builds the relative complex; degrees 0..=2 are empty.
pub fn sphere_triple_complex() -> ChainComplex {
    let dims = vec![0, 0, 0, DIM_3, DIM_4, DIM_5, DIM_6];
    let mut complex = ChainComplex::with_zero_boundaries(2, dims).expect("2 is prime");
    complex.set_boundary(4, boundary_matrix(DIM_3, &BOUNDARY_4)).expect("static shape");
    complex.set_boundary(5, boundary_matrix(DIM_4, &BOUNDARY_5)).expect("static shape");
    complex.set_boundary(6, boundary_matrix(DIM_5, &BOUNDARY_6)).expect("static shape");
    complex
}

/// Homology of the sphere-triple quotient pair, `(0,0,0,1,1,1,1)`.
pub fn sphere_triple_homology() -> Result<crate::homology::BettiProfile, HomologyError> {
    sphere_triple_complex().homology_dims()
}
