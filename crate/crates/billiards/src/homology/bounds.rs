//! Dimension-counting lower bounds on the number of periodic billiard
//! trajectories, assembled from Betti profiles.
//!
//! Every calculator here is pure integer bookkeeping; the geometric work
//! of producing the input profiles lives in [`crate::catalog`].

use super::{BettiProfile, HomologyError};

/// Morse-inequality bound: the sum of homology dimensions from
/// `from_degree` up to the top degree of the profile.
pub fn morse_lower_bound(profile: &BettiProfile, from_degree: usize) -> u64 {
    profile.dims.iter().skip(from_degree).map(|&d| d as u64).sum()
}

/// For a long exact sequence `... -> A_q -> B_q -> C_q -> A_{q-1} -> ...`
/// the total dimension of the `C` column is at least `Σ b_q - Σ a_q`.
pub fn exact_sequence_bound(a: &BettiProfile, b: &BettiProfile) -> Result<u64, HomologyError> {
    if a.field != b.field {
        return Err(HomologyError::FieldMismatch { left: a.field, right: b.field });
    }
    let sum_a = a.total() as i64;
    let sum_b = b.total() as i64;
    Ok((sum_b - sum_a).max(0) as u64)
}

/// Smith-theory transfer estimate for a Z_3 action with fixed set `fixed`:
/// per degree, `dim H_q(quotient, fixed) >= (total_q - fixed_q) / 3`.
///
/// Dimensions are integers, so the right-hand side is rounded up; negative
/// values clamp to zero.
pub fn smith_bound(
    total: &BettiProfile,
    fixed: &BettiProfile,
) -> Result<BettiProfile, HomologyError> {
    if total.field != 3 || fixed.field != 3 {
        return Err(HomologyError::FieldMismatch { left: total.field, right: fixed.field });
    }
    let degrees = total.dims.len().max(fixed.dims.len());
    let dims = (0..degrees)
        .map(|q| {
            let diff = total.dim(q) as i64 - fixed.dim(q) as i64;
            (diff.max(0) as usize).div_ceil(3)
        })
        .collect();
    Ok(BettiProfile::new(3, dims))
}

/// Künneth over a field: the Betti polynomial of a product is the product
/// of the factors' Betti polynomials.
pub fn kunneth_dims(factors: &[BettiProfile]) -> Result<BettiProfile, HomologyError> {
    let Some(first) = factors.first() else {
        return Err(HomologyError::ShapeMismatch("kunneth_dims needs at least one factor".into()));
    };
    let field = first.field;
    let mut acc = first.dims.clone();
    for f in &factors[1..] {
        if f.field != field {
            return Err(HomologyError::FieldMismatch { left: field, right: f.field });
        }
        let mut out = vec![0usize; acc.len() + f.dims.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in f.dims.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out;
    }
    Ok(BettiProfile::new(field, acc))
}

/// Profile of the pair (diagonal, small diagonal) inside `M x M`:
/// per degree `dim H_q(M x M) - dim H_q(M)`, which totals `B^2 - B`.
pub fn diagonal_pair_profile(profile: &BettiProfile) -> Result<BettiProfile, HomologyError> {
    let square = kunneth_dims(&[profile.clone(), profile.clone()])?;
    let dims = (0..square.dims.len()).map(|q| square.dim(q) - profile.dim(q)).collect();
    Ok(BettiProfile::new(profile.field, dims))
}

/// Rough bound for 3-periodic trajectories in any closed manifold with
/// `B = Σ dim H_q(M; Z_3)`: the count is at least `(B^3 - 3B^2 + 2B) / 6`,
/// i.e. the number of 3-element subsets of a `B`-element set.
pub fn cubic_bound(b: i64) -> i64 {
    debug_assert!(b >= 0);
    (b * b * b - 3 * b * b + 2 * b) / 6
}

/// The same bound assembled step by step: a transfer estimate totalling
/// `(B^3 - B)/3`, minus the diagonal-pair total `B^2 - B`, halved for the
/// cyclic (rather than dihedral) quotient. Both divisions are exact.
pub fn cubic_bound_pipeline(b: i64) -> i64 {
    debug_assert!(b >= 0);
    let transfer_total = (b * b * b - b) / 3;
    let diagonal_total = b * b - b;
    (transfer_total - diagonal_total) / 2
}

/// Full profile-level version of the cubic-bound pipeline: Smith transfer
/// with per-degree ceilings, exact-sequence subtraction of the diagonal
/// pair, then the halving step (rounded up: counts are integers).
pub fn smith_pipeline_bound(profile: &BettiProfile) -> Result<u64, HomologyError> {
    if profile.field != 3 {
        return Err(HomologyError::FieldMismatch { left: 3, right: profile.field });
    }
    let total = kunneth_dims(&[profile.clone(), profile.clone(), profile.clone()])?;
    let transferred = smith_bound(&total, profile)?;
    let diagonal = diagonal_pair_profile(profile)?;
    let after_subtraction = exact_sequence_bound(&diagonal, &transferred)?;
    Ok(after_subtraction.div_ceil(2))
}
