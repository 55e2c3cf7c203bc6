//! Schubert-cell bookkeeping for the Grassmannian `G_{2,n+1}` of 2-planes
//! in `R^{n+1}`, and the rank computation that yields the total `Z_2`
//! homology of the manifold `V_{n,p}` of regular stars inscribed in great
//! circles of the round n-sphere.
//!
//! Cohomology classes are written in the convention dual to the usual
//! two-row one: partitions with parts in `{1, 2}` and at most `n-1` parts.
//! `V_{n,p}` is a circle bundle over the Grassmannian whose mod-2 Gysin
//! differential is cup product with the degree-2 class `σ_2`; running the
//! two-row rank bookkeeping of that spectral sequence gives total
//! dimension `2n` regardless of `p`.

use std::collections::BTreeSet;

use super::CatalogError;
use crate::homology::FFMatrix;

/// A Schubert class `σ_{2,..,2,1,..,1}`: a weakly decreasing partition
/// with parts in `{1, 2}` and at most `n-1` parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SchubertClass {
    parts: Vec<u8>,
}

impl SchubertClass {
    pub fn new(parts: Vec<u8>) -> Result<Self, CatalogError> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p == 0 || p > 2) {
            return Err(CatalogError::InvalidPartition(parts));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    /// Cohomological degree `Σ parts`.
    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// Valid in `H^*(G_{2,n+1})`: at most `n-1` parts.
    pub fn fits(&self, n: usize) -> bool {
        self.parts.len() <= n.saturating_sub(1)
    }
}

/// Formal `Z_2` sum of Schubert classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingElement {
    terms: BTreeSet<SchubertClass>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_classes(classes: impl IntoIterator<Item = SchubertClass>) -> Self {
        let mut out = Self::zero();
        for c in classes {
            out.toggle(c);
        }
        out
    }

    fn toggle(&mut self, class: SchubertClass) {
        if !self.terms.remove(&class) {
            self.terms.insert(class);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &SchubertClass> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, class: &SchubertClass) -> bool {
        self.terms.contains(class)
    }
}

/// `dim H^q(G_{2,n+1}; Z_2)`: the number of ways to write `q` as an
/// ordered-by-size sum of ones and twos with at most `n-1` summands.
pub fn grassmann_betti(q: usize, n: usize) -> usize {
    let top = 2 * (n - 1);
    if q > top {
        return 0;
    }
    if q < n {
        q / 2 + 1
    } else {
        (top - q) / 2 + 1
    }
}

/// All Schubert classes of a given degree valid in `G_{2,n+1}`, in a
/// deterministic order (most twos first).
pub fn degree_basis(q: usize, n: usize) -> Vec<SchubertClass> {
    let mut out = Vec::new();
    let max_len = n.saturating_sub(1);
    let mut twos = q / 2;
    loop {
        let ones = q - 2 * twos;
        if twos + ones <= max_len {
            let mut parts = vec![2u8; twos];
            parts.extend(std::iter::repeat_n(1u8, ones));
            out.push(SchubertClass { parts });
        }
        if twos == 0 {
            break;
        }
        twos -= 1;
    }
    out
}

/// Pieri product `σ_a ⌣ σ_b` for `a ∈ {1, 2}`: the sum over partitions
/// `c` with `Σc = a + Σb` interlacing `b` (`b_i <= c_i <= b_{i-1}`),
/// truncated to classes valid in `G_{2,n+1}`. Coefficients are mod 2.
pub fn pieri_multiply(a: u8, b: &SchubertClass, n: usize) -> Result<RingElement, CatalogError> {
    if !(1..=2).contains(&a) {
        return Err(CatalogError::InvalidSpecialClass(a));
    }
    let target: usize = a as usize + b.degree();
    let mut out = RingElement::zero();
    let mut candidate: Vec<u8> = Vec::new();
    extend_interlacing(b.parts(), 0, target, &mut candidate, &mut out, n);
    Ok(out)
}

fn extend_interlacing(
    b: &[u8],
    index: usize,
    remaining: usize,
    candidate: &mut Vec<u8>,
    out: &mut RingElement,
    n: usize,
) {
    if remaining == 0 {
        // rows of b below this point would be uncovered, so b must end here
        if index >= b.len() {
            let class = SchubertClass { parts: candidate.clone() };
            if class.fits(n) {
                out.toggle(class);
            }
        }
        return;
    }
    // row bounds: b_i <= c_i <= b_{i-1}, with the first row capped at 2
    // (larger parts leave the cell structure and contribute nothing)
    let hi = if index == 0 {
        remaining.min(2)
    } else if index - 1 < b.len() {
        (b[index - 1] as usize).min(remaining)
    } else {
        0
    };
    let lo = if index < b.len() { b[index] as usize } else { 1 };
    for part in (lo..=hi).rev() {
        candidate.push(part as u8);
        extend_interlacing(b, index + 1, remaining - part, candidate, out, n);
        candidate.pop();
    }
}

/// Matrix of cup product with `σ_2` from degree `q` to degree `q+2`,
/// over `Z_2`, in the `degree_basis` orderings.
pub fn sigma2_matrix(q: usize, n: usize) -> Result<FFMatrix, CatalogError> {
    let domain = degree_basis(q, n);
    let codomain = degree_basis(q + 2, n);
    let mut m = FFMatrix::zeros(2, codomain.len(), domain.len())?;
    for (col, b) in domain.iter().enumerate() {
        let product = pieri_multiply(2, b, n)?;
        for term in product.terms() {
            let row = codomain
                .iter()
                .position(|c| c == term)
                .ok_or_else(|| CatalogError::InvalidPartition(term.parts().to_vec()))?;
            m.set(row, col, 1);
        }
    }
    Ok(m)
}

/// The two rows of the limit term of the circle-bundle spectral sequence:
/// `bottom[q] = dim H^q(G) - rank(σ_2: H^{q-2} -> H^q)` and
/// `top[q] = dim H^q(G) - rank(σ_2: H^q -> H^{q+2})`.
pub fn limit_rows(n: usize) -> Result<(Vec<usize>, Vec<usize>), CatalogError> {
    let top_degree = 2 * (n - 1);
    let mut bottom = Vec::with_capacity(top_degree + 1);
    let mut top = Vec::with_capacity(top_degree + 1);
    for q in 0..=top_degree {
        let betti = grassmann_betti(q, n);
        let incoming = if q >= 2 { sigma2_matrix(q - 2, n)?.rank() } else { 0 };
        let outgoing = sigma2_matrix(q, n)?.rank();
        bottom.push(betti - incoming);
        top.push(betti - outgoing);
    }
    Ok((bottom, top))
}

/// Total `Z_2` homology dimension of `V_{n,p}`; equals `2n`.
pub fn vnp_betti_sum(n: usize) -> Result<usize, CatalogError> {
    if n < 2 {
        return Err(CatalogError::UnsupportedDimension(n));
    }
    let (bottom, top) = limit_rows(n)?;
    Ok(bottom.iter().sum::<usize>() + top.iter().sum::<usize>())
}
