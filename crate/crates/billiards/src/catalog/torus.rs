//! The permutation cell structure of the torus `T^p` and the connected
//! components of its dihedral quotient minus the diagonal.
//!
//! A top-dimensional open cell of `T^p` is an ordering of the `p` cyclic
//! coordinates, `{x_{s(1)} < ... < x_{s(p)}}`, encoded by the permutation
//! `s`. Two cells lie in the same component of `T^p/D_p - Δ` exactly when
//! one is reachable from the other by relabelings, pushing the lowest
//! coordinate past the top of the cyclic interval, or swapping two
//! order-adjacent coordinates whose indices are not cyclically adjacent.

use super::CatalogError;
use crate::homology::BettiProfile;

/// Open top cell of `T^p`: `perm[j]` is the (0-based) index of the
/// coordinate in the `j`-th position of the increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusCell {
    perm: Vec<usize>,
}

impl TorusCell {
    pub fn new(perm: Vec<usize>) -> Result<Self, CatalogError> {
        let p = perm.len();
        let mut seen = vec![false; p];
        for &v in &perm {
            if v >= p || seen[v] {
                return Err(CatalogError::NotAPermutation(perm.clone()));
            }
            seen[v] = true;
        }
        Ok(Self { perm })
    }

    pub fn identity(p: usize) -> Self {
        Self { perm: (0..p).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    fn p(&self) -> usize {
        self.perm.len()
    }

    /// rank[i] = position of coordinate i in the increasing order
    fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![0; self.p()];
        for (pos, &coord) in self.perm.iter().enumerate() {
            ranks[coord] = pos;
        }
        ranks
    }

    /// `I = |#descents - #ascents|` over the p cyclic pairs `(i, i+1)`.
    pub fn invariant(&self) -> usize {
        let p = self.p();
        let ranks = self.ranks();
        let mut ascents = 0i64;
        let mut descents = 0i64;
        for i in 0..p {
            let j = (i + 1) % p;
            if ranks[i] < ranks[j] {
                ascents += 1;
            } else {
                descents += 1;
            }
        }
        (descents - ascents).unsigned_abs() as usize
    }

    /// All cells reachable in a single move.
    pub fn moves(&self) -> Vec<TorusCell> {
        let p = self.p();
        let mut out = Vec::new();

        // (1) dihedral relabelings of the coordinates
        for shift in 0..p {
            for reflect in [false, true] {
                if shift == 0 && !reflect {
                    continue;
                }
                let relabel = |i: usize| {
                    let i = if reflect { p - 1 - i } else { i };
                    (i + shift) % p
                };
                out.push(TorusCell { perm: self.perm.iter().map(|&v| relabel(v)).collect() });
            }
        }

        // (2) the lowest coordinate wraps past the top of the cyclic interval
        let mut rotated = self.perm.clone();
        rotated.rotate_left(1);
        out.push(TorusCell { perm: rotated });

        // (3) order-adjacent swaps, blocked when the two coordinate indices
        // are cyclically adjacent (that face lies on the diagonal)
        for j in 0..p - 1 {
            let a = self.perm[j];
            let b = self.perm[j + 1];
            let gap = a.abs_diff(b);
            if (2..=p - 2).contains(&gap) {
                let mut swapped = self.perm.clone();
                swapped.swap(j, j + 1);
                out.push(TorusCell { perm: swapped });
            }
        }

        out
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// Lehmer rank of a permutation, a bijection onto `0..p!`.
fn perm_rank(perm: &[usize]) -> usize {
    let p = perm.len();
    let mut rank = 0;
    for i in 0..p {
        let smaller_after = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (p - i) + smaller_after;
    }
    rank
}

fn factorial(p: usize) -> usize {
    (1..=p).product()
}

/// Enumerates all permutations of `0..p` in a deterministic order.
fn all_perms(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(factorial(p));
    let mut current: Vec<usize> = (0..p).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..p - 1).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..p).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// The move-closure classes of all `p!` top cells.
#[derive(Debug, Clone)]
pub struct TorusComponents {
    p: usize,
    /// one representative invariant value per class, sorted descending
    class_invariants: Vec<usize>,
}

impl TorusComponents {
    pub fn count(&self) -> usize {
        self.class_invariants.len()
    }

    pub fn invariants(&self) -> &[usize] {
        &self.class_invariants
    }

    pub fn p(&self) -> usize {
        self.p
    }
}

/// Computes the connected components of `T^p/D_p - Δ` through the move
/// closure of the `p!` top cells. Supported for odd `p` with `3 <= p <= 9`
/// (the enumeration is factorial in `p`).
pub fn torus_components(p: usize) -> Result<TorusComponents, CatalogError> {
    if !(3..=9).contains(&p) || p.is_multiple_of(2) {
        return Err(CatalogError::UnsupportedPeriod(p));
    }
    let perms = all_perms(p);
    let n = perms.len();
    let mut uf = UnionFind::new(n);
    for perm in &perms {
        let cell = TorusCell { perm: perm.clone() };
        let from = perm_rank(perm);
        for neighbor in cell.moves() {
            uf.union(from, perm_rank(&neighbor.perm));
        }
    }

    let mut class_of_root: std::collections::HashMap<usize, usize> = Default::default();
    let mut invariants: Vec<Vec<usize>> = Vec::new();
    for perm in &perms {
        let root = uf.find(perm_rank(perm));
        let idx = *class_of_root.entry(root).or_insert_with(|| {
            invariants.push(Vec::new());
            invariants.len() - 1
        });
        invariants[idx].push(TorusCell { perm: perm.clone() }.invariant());
    }

    // classes must be I-homogeneous; report one value per class
    let mut class_invariants = Vec::with_capacity(invariants.len());
    for class in invariants {
        let value = class[0];
        if class.iter().any(|&v| v != value) {
            return Err(CatalogError::InhomogeneousClass(p));
        }
        class_invariants.push(value);
    }
    class_invariants.sort_unstable_by(|a, b| b.cmp(a));
    Ok(TorusComponents { p, class_invariants })
}

/// Number of move-closure classes, expected to be `(p-1)/2`.
pub fn component_count(p: usize) -> Result<usize, CatalogError> {
    Ok(torus_components(p)?.count())
}

/// Betti profile of the pair `(T^p/D_p, Δ)` over `Z_2`: the component
/// count in degrees `p-1` and `p`, zero below.
pub fn torus_betti_profile(p: usize) -> Result<BettiProfile, CatalogError> {
    let components = component_count(p)?;
    let mut dims = vec![0usize; p + 1];
    dims[p - 1] = components;
    dims[p] = components;
    Ok(BettiProfile::new(2, dims))
}
