//! Dense matrices over the prime fields `Z_q`.
//!
//! Arithmetic is exact, so rank computations need no pivot-magnitude
//! heuristics: any nonzero entry is a valid pivot.

use serde::{Deserialize, Serialize};

use super::HomologyError;

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse mod `q` (q prime, a nonzero mod q).
fn mod_inv(a: u32, q: u32) -> u32 {
    // Fermat: a^(q-2) mod q. q is small, so repeated squaring is plenty.
    let mut base = u64::from(a % q);
    let mut exp = q - 2;
    let m = u64::from(q);
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u32
}

/// A `rows x cols` matrix with entries in `Z_q`, stored row-major and
/// always reduced mod `q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FFMatrix {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FFMatrix {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Result<Self, HomologyError> {
        if !is_prime(q) {
            return Err(HomologyError::NonPrimeModulus(q));
        }
        Ok(Self { q, rows, cols, data: vec![0; rows * cols] })
    }

    /// Builds a matrix from row-major entries; values are reduced mod `q`.
    pub fn from_entries(
        q: u32,
        rows: usize,
        cols: usize,
        entries: &[i64],
    ) -> Result<Self, HomologyError> {
        if entries.len() != rows * cols {
            return Err(HomologyError::ShapeMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let mut m = Self::zeros(q, rows, cols)?;
        let modulus = i64::from(q);
        for (slot, &v) in m.data.iter_mut().zip(entries) {
            *slot = v.rem_euclid(modulus) as u32;
        }
        Ok(m)
    }

    pub fn identity(q: u32, n: usize) -> Result<Self, HomologyError> {
        let mut m = Self::zeros(q, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u32) {
        self.data[row * self.cols + col] = value % self.q;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t =
            Self { q: self.q, rows: self.cols, cols: self.rows, data: vec![0; self.data.len()] };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, HomologyError> {
        if self.q != other.q {
            return Err(HomologyError::FieldMismatch { left: self.q, right: other.q });
        }
        if self.cols != other.rows {
            return Err(HomologyError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.q, self.rows, other.cols)?;
        let m = u64::from(self.q);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + u64::from(self.get(i, k)) * u64::from(other.get(k, j))) % m;
                }
                out.set(i, j, acc as u32);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over `Z_q`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, HomologyError> {
        if v.len() != self.cols {
            return Err(HomologyError::ShapeMismatch(format!(
                "vector of length {} against a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let m = u64::from(self.q);
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (k, &value) in v.iter().enumerate() {
                    acc = (acc + u64::from(self.get(i, k)) * u64::from(value % self.q)) % m;
                }
                acc as u32
            })
            .collect())
    }

    /// Row rank via Gaussian elimination over `Z_q`.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let q = work.q;
        let mut rank = 0;
        let mut pivot_row = 0;
        for col in 0..work.cols {
            let found = (pivot_row..work.rows).find(|&r| work.get(r, col) != 0);
            let Some(row) = found else { continue };
            work.swap_rows(pivot_row, row);
            let inv = mod_inv(work.get(pivot_row, col), q);
            work.scale_row(pivot_row, inv);
            for r in 0..work.rows {
                if r != pivot_row && work.get(r, col) != 0 {
                    let factor = work.get(r, col);
                    work.add_scaled_row(r, pivot_row, q - factor);
                }
            }
            rank += 1;
            pivot_row += 1;
            if pivot_row == work.rows {
                break;
            }
        }
        rank
    }

    /// Dimension of the kernel (`cols - rank`).
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, row: usize, factor: u32) {
        let m = u64::from(self.q);
        for c in 0..self.cols {
            let idx = row * self.cols + c;
            self.data[idx] = (u64::from(self.data[idx]) * u64::from(factor) % m) as u32;
        }
    }

    /// row[target] += factor * row[source]
    fn add_scaled_row(&mut self, target: usize, source: usize, factor: u32) {
        let m = u64::from(self.q);
        for c in 0..self.cols {
            let s = self.data[source * self.cols + c];
            let idx = target * self.cols + c;
            self.data[idx] =
                ((u64::from(self.data[idx]) + u64::from(s) * u64::from(factor)) % m) as u32;
        }
    }
}
