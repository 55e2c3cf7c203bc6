//! Chain complexes over `Z_q` and their homology dimensions.

use serde::{Deserialize, Serialize};

use super::{FFMatrix, HomologyError};

/// A graded sequence of boundary maps `∂_k : C_k -> C_{k-1}`.
///
/// `dims[k]` is the number of cells in degree `k`; `boundaries[k]` is the
/// matrix of `∂_k`, of shape `dims[k-1] x dims[k]` (degree 0 maps to the
/// zero module, so `boundaries[0]` has zero rows).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    q: u32,
    dims: Vec<usize>,
    boundaries: Vec<FFMatrix>,
}

/// Homology dimensions by degree over a fixed prime field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile {
    pub field: u32,
    pub dims: Vec<usize>,
}

impl BettiProfile {
    pub fn new(field: u32, dims: Vec<usize>) -> Self {
        Self { field, dims }
    }

    /// Total dimension `B = Σ_q dim H_q`.
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn top_degree(&self) -> usize {
        self.dims.iter().rposition(|&d| d > 0).unwrap_or(0)
    }
}

impl ChainComplex {
    /// A complex with the given cell counts and all-zero boundary maps.
    pub fn with_zero_boundaries(q: u32, dims: Vec<usize>) -> Result<Self, HomologyError> {
        let mut boundaries = Vec::with_capacity(dims.len());
        for k in 0..dims.len() {
            let rows = if k == 0 { 0 } else { dims[k - 1] };
            boundaries.push(FFMatrix::zeros(q, rows, dims[k])?);
        }
        Ok(Self { q, dims, boundaries })
    }

    pub fn from_boundaries(
        q: u32,
        dims: Vec<usize>,
        boundaries: Vec<FFMatrix>,
    ) -> Result<Self, HomologyError> {
        if boundaries.len() != dims.len() {
            return Err(HomologyError::ShapeMismatch(format!(
                "{} degrees but {} boundary maps",
                dims.len(),
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let rows = if k == 0 { 0 } else { dims[k - 1] };
            if b.rows() != rows || b.cols() != dims[k] {
                return Err(HomologyError::ShapeMismatch(format!(
                    "boundary {k} has shape {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    rows,
                    dims[k]
                )));
            }
            if b.modulus() != q {
                return Err(HomologyError::FieldMismatch { left: q, right: b.modulus() });
            }
        }
        Ok(Self { q, dims, boundaries })
    }

    pub fn field(&self) -> u32 {
        self.q
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, degree: usize) -> &FFMatrix {
        &self.boundaries[degree]
    }

    pub fn set_boundary(&mut self, degree: usize, map: FFMatrix) -> Result<(), HomologyError> {
        let rows = if degree == 0 { 0 } else { self.dims[degree - 1] };
        if map.rows() != rows || map.cols() != self.dims[degree] {
            return Err(HomologyError::ShapeMismatch(format!(
                "boundary {degree} has shape {}x{}, expected {}x{}",
                map.rows(),
                map.cols(),
                rows,
                self.dims[degree]
            )));
        }
        if map.modulus() != self.q {
            return Err(HomologyError::FieldMismatch { left: self.q, right: map.modulus() });
        }
        self.boundaries[degree] = map;
        Ok(())
    }

    /// Checks `∂_{k} ∘ ∂_{k+1} = 0` in every degree.
    pub fn validate(&self) -> Result<(), HomologyError> {
        for k in 1..self.dims.len() {
            let composite = self.boundaries[k - 1].mul(&self.boundaries[k])?;
            if !composite.is_zero() {
                return Err(HomologyError::InvalidComplex { degree: k });
            }
        }
        Ok(())
    }

    /// `dim H_k = dims[k] - rank ∂_k - rank ∂_{k+1}`.
    pub fn homology_dims(&self) -> Result<BettiProfile, HomologyError> {
        self.validate()?;
        let ranks: Vec<usize> = self.boundaries.iter().map(FFMatrix::rank).collect();
        let dims = (0..self.dims.len())
            .map(|k| {
                let outgoing = ranks[k];
                let incoming = if k + 1 < ranks.len() { ranks[k + 1] } else { 0 };
                self.dims[k] - outgoing - incoming
            })
            .collect();
        Ok(BettiProfile::new(self.q, dims))
    }

    /// Alternating sum of cell counts, `Σ (-1)^k dims[k]`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}
