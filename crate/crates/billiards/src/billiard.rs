//! The length functional on closed polygons inscribed in a manifold, its
//! gradient and tangential residual (the billiard condition), the smoothed
//! functional that flattens the diagonal, Hessian-based index
//! classification, and the dihedral symmetry utilities.
//!
//! A closed polygon `(x_1, .., x_p)` with vertices on `M` is a p-periodic
//! billiard trajectory exactly when, at every vertex, the sum of the two
//! outgoing unit edge vectors is orthogonal to `T_{x_i} M` — equivalently
//! when the configuration is a critical point of the total chord length.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{distance, dot, norm, sub};
use crate::manifold::{ChartPoint, Manifold, ManifoldError};

/// Consecutive points closer than this are treated as coincident when
/// evaluating the gradient.
const COINCIDENCE_EPS: f64 = 1e-13;

/// Finite-difference step for chart-coordinate Hessians.
pub const HESSIAN_STEP: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum BilliardError {
    #[error("consecutive points {i} and {j} coincide (gap {gap:.3e})")]
    Diagonal { i: usize, j: usize, gap: f64 },
    #[error("configuration needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("rotation numbers are defined only for curves (intrinsic dim 1, got {0})")]
    NotACurve(usize),
    #[error("configuration has zero winding; rotation number undefined")]
    ZeroWinding,
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

/// An ordered tuple of `p` points on a fixed manifold: chart coordinates
/// plus cached ambient positions, kept in sync by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    points: Vec<ChartPoint>,
    ambient: Vec<Vec<f64>>,
}

impl Configuration {
    pub fn new(manifold: &dyn Manifold, points: Vec<ChartPoint>) -> Result<Self, BilliardError> {
        if points.len() < 2 {
            return Err(BilliardError::TooFewPoints(points.len()));
        }
        let mut normalized = Vec::with_capacity(points.len());
        let mut ambient = Vec::with_capacity(points.len());
        for point in points {
            let point = manifold.normalize(&point)?;
            ambient.push(manifold.embed(&point)?);
            normalized.push(point);
        }
        Ok(Self { points: normalized, ambient })
    }

    /// Builds a configuration of angles on a curve (single chart).
    pub fn from_angles(manifold: &dyn Manifold, angles: &[f64]) -> Result<Self, BilliardError> {
        Self::new(manifold, angles.iter().map(|&a| ChartPoint::at(vec![a])).collect())
    }

    pub fn p(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ChartPoint] {
        &self.points
    }

    pub fn ambient(&self) -> &[Vec<f64>] {
        &self.ambient
    }

    /// Replaces one vertex, refreshing its cached ambient position.
    pub fn set_point(
        &mut self,
        manifold: &dyn Manifold,
        index: usize,
        point: ChartPoint,
    ) -> Result<(), BilliardError> {
        let point = manifold.normalize(&point)?;
        self.ambient[index] = manifold.embed(&point)?;
        self.points[index] = point;
        Ok(())
    }

    /// Smallest gap between cyclically consecutive vertices.
    pub fn min_gap(&self) -> f64 {
        let p = self.p();
        (0..p)
            .map(|i| distance(&self.ambient[i], &self.ambient[(i + 1) % p]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Total chord length of the closed polygon.
    pub fn length(&self) -> f64 {
        let p = self.p();
        (0..p).map(|i| distance(&self.ambient[i], &self.ambient[(i + 1) % p])).sum()
    }

    /// Ambient gradient of the length: component `i` is the sum of the
    /// two unit vectors pointing from the neighbors toward `x_i`.
    pub fn ambient_gradient(&self) -> Result<Vec<Vec<f64>>, BilliardError> {
        let p = self.p();
        let unit_from = |j: usize, i: usize| -> Result<Vec<f64>, BilliardError> {
            let diff = sub(&self.ambient[i], &self.ambient[j]);
            let len = norm(&diff);
            if len < COINCIDENCE_EPS {
                return Err(BilliardError::Diagonal { i, j, gap: len });
            }
            Ok(diff.iter().map(|v| v / len).collect())
        };
        (0..p)
            .map(|i| {
                let next = (i + 1) % p;
                let prev = (i + p - 1) % p;
                let a = unit_from(next, i)?;
                let b = unit_from(prev, i)?;
                Ok(a.iter().zip(&b).map(|(x, y)| x + y).collect())
            })
            .collect()
    }

    /// The tangential projections of the gradient, stacked over all
    /// vertices and orthonormalized frame directions: an `m·p` vector
    /// that vanishes exactly at billiard trajectories.
    pub fn residual_vector(&self, manifold: &dyn Manifold) -> Result<Vec<f64>, BilliardError> {
        let gradient = self.ambient_gradient()?;
        let mut out = Vec::with_capacity(manifold.intrinsic_dim() * self.p());
        for (point, grad) in self.points.iter().zip(&gradient) {
            let frame = manifold.tangent_frame(point)?;
            let ortho = crate::linalg::orthonormalize(&frame)
                .ok_or(ManifoldError::SingularChart { chart: point.chart, gram: 0.0 })?;
            for direction in &ortho {
                out.push(dot(grad, direction));
            }
        }
        Ok(out)
    }

    /// Euclidean norm of [`Self::residual_vector`].
    pub fn billiard_residual(&self, manifold: &dyn Manifold) -> Result<f64, BilliardError> {
        Ok(norm(&self.residual_vector(manifold)?))
    }

    /// The smoothed length `g = f · Π φ(gap_i)`: zero on the diagonal,
    /// equal to `f` once every gap clears the bump width.
    pub fn smoothed_length(&self, smoothing: &SmoothingParams) -> f64 {
        let p = self.p();
        let mut factor = 1.0;
        for i in 0..p {
            factor *= smoothing.bump(distance(&self.ambient[i], &self.ambient[(i + 1) % p]));
            if factor == 0.0 {
                return 0.0;
            }
        }
        self.length() * factor
    }

    /// Second derivative of the length in chart coordinates by central
    /// finite differences, symmetrized. Index extraction only needs the
    /// sign pattern, so differences are accurate enough.
    pub fn tangential_hessian(
        &self,
        manifold: &dyn Manifold,
    ) -> Result<DMatrix<f64>, BilliardError> {
        let m = manifold.intrinsic_dim();
        let p = self.p();
        let dim = m * p;
        let h = HESSIAN_STEP;

        let eval = |offsets: &[(usize, usize, f64)]| -> Result<f64, BilliardError> {
            let mut shifted = self.clone();
            for &(vertex, axis, delta) in offsets {
                let mut point = shifted.points[vertex].clone();
                point.coords[axis] += delta;
                shifted.set_point(manifold, vertex, point)?;
            }
            Ok(shifted.length())
        };

        let base = self.length();
        let mut hessian = DMatrix::zeros(dim, dim);
        for a in 0..dim {
            let (va, xa) = (a / m, a % m);
            let fp = eval(&[(va, xa, h)])?;
            let fm = eval(&[(va, xa, -h)])?;
            hessian[(a, a)] = (fp - 2.0 * base + fm) / (h * h);
            for b in a + 1..dim {
                let (vb, xb) = (b / m, b % m);
                let fpp = eval(&[(va, xa, h), (vb, xb, h)])?;
                let fpm = eval(&[(va, xa, h), (vb, xb, -h)])?;
                let fmp = eval(&[(va, xa, -h), (vb, xb, h)])?;
                let fmm = eval(&[(va, xa, -h), (vb, xb, -h)])?;
                let mixed = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
                hessian[(a, b)] = mixed;
                hessian[(b, a)] = mixed;
            }
        }
        Ok(hessian)
    }
}

/// Counts of negative and near-zero eigenvalues of a symmetric matrix:
/// `index` is the number of eigenvalues below `-tol`, `null_dim` the
/// number within `tol` of zero.
pub fn morse_index(hessian: &DMatrix<f64>, degeneracy_tol: f64) -> (usize, usize) {
    let eigen = hessian.clone().symmetric_eigen();
    let mut index = 0;
    let mut null_dim = 0;
    for &lambda in eigen.eigenvalues.iter() {
        if lambda < -degeneracy_tol {
            index += 1;
        } else if lambda <= degeneracy_tol {
            null_dim += 1;
        }
    }
    (index, null_dim)
}

/// Relative degeneracy tolerance: `1e-6` of the largest eigenvalue
/// magnitude, which keeps the classification stable across curve sizes.
pub fn relative_degeneracy_tol(hessian: &DMatrix<f64>) -> f64 {
    let eigen = hessian.clone().symmetric_eigen();
    let max_mag = eigen.eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    1e-6 * max_mag.max(1e-30)
}

// ---------------------------------------------------------------------------
// smoothing
// ---------------------------------------------------------------------------

/// A smooth step `φ` with `φ ≡ 0` on `(-∞, 0]`, `φ ≡ 1` on `[ε, ∞)`, and
/// `φ' > 0` strictly inside — the standard `exp(-1/t)` transition scaled
/// to `[0, ε]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothingParams {
    epsilon: f64,
}

impl SmoothingParams {
    pub fn new(epsilon: f64) -> Result<Self, BilliardError> {
        if epsilon <= 0.0 {
            return Err(BilliardError::Manifold(ManifoldError::BadParameter(format!(
                "bump width {epsilon} must be positive"
            ))));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn bump(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t >= self.epsilon {
            return 1.0;
        }
        let s = t / self.epsilon;
        let rise = (-1.0 / s).exp();
        let fall = (-1.0 / (1.0 - s)).exp();
        rise / (rise + fall)
    }
}

// ---------------------------------------------------------------------------
// dihedral symmetry
// ---------------------------------------------------------------------------

/// One of the `2p` symmetries of an ordered cyclic tuple: shift by `k`,
/// optionally preceded by reversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralElement {
    pub shift: usize,
    pub reflect: bool,
}

/// The dihedral group acting on ordered p-tuples by cyclic shifts and
/// reversal; trajectories are counted per orbit of this action.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DihedralAction {
    p: usize,
}

impl DihedralAction {
    pub fn new(p: usize) -> Self {
        Self { p }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        (0..self.p).flat_map(|shift| {
            [DihedralElement { shift, reflect: false }, DihedralElement { shift, reflect: true }]
        })
    }

    /// Index this element sends position `i` to read from.
    fn source_index(&self, element: DihedralElement, i: usize) -> usize {
        let j = (i + element.shift) % self.p;
        if element.reflect {
            self.p - 1 - j
        } else {
            j
        }
    }

    pub fn apply_slice<T: Clone>(&self, element: DihedralElement, items: &[T]) -> Vec<T> {
        (0..self.p).map(|i| items[self.source_index(element, i)].clone()).collect()
    }

    pub fn apply(&self, element: DihedralElement, config: &Configuration) -> Configuration {
        Configuration {
            points: self.apply_slice(element, config.points()),
            ambient: self.apply_slice(element, config.ambient()),
        }
    }
}

/// Comparison tolerance used when picking the lexicographically smallest
/// orbit element; absorbs jitter between independently converged copies.
const ORBIT_COMPARE_TOL: f64 = 1e-7;

fn lex_less(a: &Configuration, b: &Configuration) -> bool {
    for (pa, pb) in a.points().iter().zip(b.points()) {
        if pa.chart != pb.chart {
            return pa.chart < pb.chart;
        }
        for (&ca, &cb) in pa.coords.iter().zip(&pb.coords) {
            if (ca - cb).abs() > ORBIT_COMPARE_TOL {
                return ca < cb;
            }
        }
    }
    false
}

/// The lexicographically smallest element of the `2p`-element dihedral
/// orbit, compared in wrapped chart coordinates with tolerance.
pub fn canonical_orbit_representative(
    config: &Configuration,
    action: &DihedralAction,
) -> Configuration {
    let mut best = config.clone();
    for element in action.elements() {
        let candidate = action.apply(element, config);
        if lex_less(&candidate, &best) {
            best = candidate;
        }
    }
    best
}

/// Signed winding count of a closed polygon inscribed in a curve, folded
/// into `{1, .., (p-1)/2}` by orientation normalization.
pub fn rotation_number(
    config: &Configuration,
    manifold: &dyn Manifold,
) -> Result<usize, BilliardError> {
    if manifold.intrinsic_dim() != 1 {
        return Err(BilliardError::NotACurve(manifold.intrinsic_dim()));
    }
    let domain = manifold.chart_domain();
    let period = domain.period(0);
    let p = config.p();
    let mut winding = 0.0;
    for i in 0..p {
        let a = config.points()[i].coords[0];
        let b = config.points()[(i + 1) % p].coords[0];
        let mut delta = (b - a).rem_euclid(period);
        if delta > period / 2.0 {
            delta -= period;
        }
        winding += delta;
    }
    let turns = (winding / period).round();
    if turns == 0.0 {
        return Err(BilliardError::ZeroWinding);
    }
    Ok(turns.abs() as usize)
}

// ---------------------------------------------------------------------------
// reports
// ---------------------------------------------------------------------------

/// A converged critical configuration with its classification data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPointReport {
    pub config: Configuration,
    pub length: f64,
    pub residual_norm: f64,
    pub morse_index: usize,
    pub null_dim: usize,
    pub rotation_number: Option<usize>,
}

impl CriticalPointReport {
    pub fn is_degenerate(&self) -> bool {
        self.null_dim > 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::add_scaled;
    use crate::manifold::{Ellipse, PerturbedCircle};
    use std::f64::consts::PI;

    fn triangle_angles() -> [f64; 3] {
        [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0]
    }

    #[test]
    fn equilateral_triangle_length() {
        let circle = PerturbedCircle::circle();
        let config = Configuration::from_angles(&circle, &triangle_angles()).unwrap();
        assert!((config.length() - 3.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn pentagon_and_pentagram_lengths() {
        let circle = PerturbedCircle::circle();
        let pentagon: Vec<f64> = (0..5).map(|i| 2.0 * PI * i as f64 / 5.0).collect();
        let config = Configuration::from_angles(&circle, &pentagon).unwrap();
        assert!((config.length() - 10.0 * (PI / 5.0).sin()).abs() < 1e-12);

        let pentagram: Vec<f64> = (0..5).map(|i| 4.0 * PI * i as f64 / 5.0).collect();
        let config = Configuration::from_angles(&circle, &pentagram).unwrap();
        assert!((config.length() - 10.0 * (2.0 * PI / 5.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn triangle_gradient_is_radial() {
        let circle = PerturbedCircle::circle();
        let config = Configuration::from_angles(&circle, &triangle_angles()).unwrap();
        let grad = config.ambient_gradient().unwrap();
        let sqrt3 = 3f64.sqrt();
        for (g, x) in grad.iter().zip(config.ambient()) {
            // each component is sqrt(3) x_i, pointing radially outward
            assert!((g[0] - sqrt3 * x[0]).abs() < 1e-12);
            assert!((g[1] - sqrt3 * x[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn antipodal_pair_gradient() {
        let circle = PerturbedCircle::circle();
        let config = Configuration::from_angles(&circle, &[0.0, PI]).unwrap();
        let grad = config.ambient_gradient().unwrap();
        for (g, x) in grad.iter().zip(config.ambient()) {
            assert!((norm(g) - 2.0).abs() < 1e-12);
            assert!((g[0] - 2.0 * x[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences_on_ellipse() {
        let ellipse = Ellipse::new(1.3, 0.8).unwrap();
        let angles = [0.3, 1.1, 2.7, 4.9];
        let config = Configuration::from_angles(&ellipse, &angles).unwrap();
        let grad = config.ambient_gradient().unwrap();
        // chain rule through the chart: df/dφ_i = <grad_i, dx/dφ_i>
        let h = 1e-6;
        for i in 0..angles.len() {
            let mut plus = angles;
            plus[i] += h;
            let mut minus = angles;
            minus[i] -= h;
            let fp = Configuration::from_angles(&ellipse, &plus).unwrap().length();
            let fm = Configuration::from_angles(&ellipse, &minus).unwrap().length();
            let numeric = (fp - fm) / (2.0 * h);
            let frame = ellipse.tangent_frame(&config.points()[i]).unwrap();
            let analytic = dot(&grad[i], &frame[0]);
            assert!((numeric - analytic).abs() / analytic.abs().max(1.0) < 1e-6);
        }
    }

    #[test]
    fn coincident_points_are_a_diagonal_error() {
        let circle = PerturbedCircle::circle();
        let config = Configuration::from_angles(&circle, &[0.5, 0.5, 2.0]).unwrap();
        assert!(matches!(config.ambient_gradient(), Err(BilliardError::Diagonal { .. })));
    }

    #[test]
    fn triangle_residual_vanishes_on_circle() {
        let circle = PerturbedCircle::circle();
        let config = Configuration::from_angles(&circle, &triangle_angles()).unwrap();
        assert!(config.billiard_residual(&circle).unwrap() < 1e-12);
    }

    #[test]
    fn pentagram_residual_vanishes_on_circle() {
        let circle = PerturbedCircle::circle();
        let pentagram: Vec<f64> = (0..5).map(|i| 4.0 * PI * i as f64 / 5.0).collect();
        let config = Configuration::from_angles(&circle, &pentagram).unwrap();
        assert!(config.billiard_residual(&circle).unwrap() < 1e-12);
    }

    #[test]
    fn symmetric_triangle_is_critical_on_rippled_circle() {
        // (0, 2π/3, 4π/3) stays critical for every ripple amplitude
        let curve = PerturbedCircle::new(0.05, 3).unwrap();
        let config = Configuration::from_angles(&curve, &triangle_angles()).unwrap();
        assert!(config.billiard_residual(&curve).unwrap() < 1e-10);
    }

    #[test]
    fn smoothed_length_contract() {
        let circle = PerturbedCircle::circle();
        let smoothing = SmoothingParams::new(0.1).unwrap();

        // coincident pair: φ(0) = 0 forces g = 0
        let degenerate = Configuration::from_angles(&circle, &[0.2, 0.2, 2.0]).unwrap();
        assert_eq!(degenerate.smoothed_length(&smoothing), 0.0);

        // all gaps clear the bump width: g = f exactly
        let triangle = Configuration::from_angles(&circle, &triangle_angles()).unwrap();
        assert_eq!(triangle.smoothed_length(&smoothing), triangle.length());

        // one gap at ε/2: the symmetric bump gives exactly f/2
        let eps = smoothing.epsilon();
        let tight_angle = 2.0 * (eps / 4.0).asin();
        let squeezed = Configuration::from_angles(&circle, &[0.0, tight_angle, PI]).unwrap();
        let g = squeezed.smoothed_length(&smoothing);
        let f = squeezed.length();
        assert!((squeezed.min_gap() - eps / 2.0).abs() < 1e-12);
        assert!(g > 0.0 && g < f);
        assert!((g - 0.5 * f).abs() < 1e-12);
    }

    #[test]
    fn bump_endpoints_and_monotonicity() {
        let smoothing = SmoothingParams::new(0.25).unwrap();
        assert_eq!(smoothing.bump(0.0), 0.0);
        assert_eq!(smoothing.bump(-1.0), 0.0);
        assert_eq!(smoothing.bump(0.25), 1.0);
        assert_eq!(smoothing.bump(1.0), 1.0);
        // strictly rising where f64 can resolve it; the exp(-1/t) tails
        // saturate to 0 and 1 within machine precision
        let mut prev = smoothing.bump(0.25 * 0.04);
        for k in 5..=95 {
            let t = 0.25 * k as f64 / 100.0;
            let v = smoothing.bump(t);
            assert!(v > prev, "bump must rise strictly on the resolvable interior");
            prev = v;
        }
        let mut prev = 0.0;
        for k in 0..=400 {
            let v = smoothing.bump(0.25 * k as f64 / 400.0);
            assert!(v >= prev, "bump must never decrease");
            prev = v;
        }
        // C1 at the seams: finite-difference slope is tiny near 0 and ε
        let h = 1e-6;
        assert!((smoothing.bump(h) - smoothing.bump(0.0)) / h < 1e-3);
        assert!((smoothing.bump(0.25) - smoothing.bump(0.25 - h)) / h < 1e-3);
    }

    #[test]
    fn morse_index_counts_signs() {
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, -1.0, -1.0]));
        assert_eq!(morse_index(&diag, 1e-6), (3, 0));
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-1.0, -1.0, 1e-9]));
        assert_eq!(morse_index(&diag, 1e-6), (2, 1));
    }

    #[test]
    fn hessian_classifies_rippled_circle_critical_points() {
        let curve = PerturbedCircle::new(0.02, 3).unwrap();

        // maximum at (π/3, π, 5π/3): all three eigenvalues negative
        let max_config =
            Configuration::from_angles(&curve, &[PI / 3.0, PI, 5.0 * PI / 3.0]).unwrap();
        let h = max_config.tangential_hessian(&curve).unwrap();
        let tol = relative_degeneracy_tol(&h);
        assert_eq!(morse_index(&h, tol), (3, 0));

        // (0, 2π/3, 4π/3): exactly two negative eigenvalues
        let saddle = Configuration::from_angles(&curve, &triangle_angles()).unwrap();
        let h = saddle.tangential_hessian(&curve).unwrap();
        let tol = relative_degeneracy_tol(&h);
        assert_eq!(morse_index(&h, tol), (2, 0));
    }

    #[test]
    fn rippled_circle_maximum_has_full_index_at_p5() {
        // the five-point maximum sits on the outward bumps
        let curve = PerturbedCircle::new(0.02, 5).unwrap();
        let angles: Vec<f64> = (0..5).map(|i| PI / 5.0 + 2.0 * PI * i as f64 / 5.0).collect();
        let config = Configuration::from_angles(&curve, &angles).unwrap();
        assert!(config.billiard_residual(&curve).unwrap() < 1e-10);
        let h = config.tangential_hessian(&curve).unwrap();
        let tol = relative_degeneracy_tol(&h);
        assert_eq!(morse_index(&h, tol), (5, 0));
    }

    #[test]
    fn round_circle_triangle_has_one_null_direction() {
        let circle = PerturbedCircle::circle();
        let config = Configuration::from_angles(&circle, &triangle_angles()).unwrap();
        let h = config.tangential_hessian(&circle).unwrap();
        let eigen = h.clone().symmetric_eigen();
        let min_mag = eigen.eigenvalues.iter().fold(f64::INFINITY, |acc, &l| acc.min(l.abs()));
        assert!(min_mag < 1e-6, "rotational family should give a near-zero eigenvalue");
        let tol = relative_degeneracy_tol(&h);
        let (index, null_dim) = morse_index(&h, tol);
        assert_eq!(null_dim, 1);
        assert_eq!(index, 2);
    }

    #[test]
    fn index_null_and_positive_counts_partition_dimensions() {
        let curve = PerturbedCircle::new(0.02, 3).unwrap();
        let config = Configuration::from_angles(&curve, &[0.3, 2.0, 4.4]).unwrap();
        let h = config.tangential_hessian(&curve).unwrap();
        let tol = relative_degeneracy_tol(&h);
        let (index, null_dim) = morse_index(&h, tol);
        let positive = h.clone().symmetric_eigen().eigenvalues.iter().filter(|&&l| l > tol).count();
        assert_eq!(index + null_dim + positive, 3);
    }

    #[test]
    fn dihedral_group_axioms() {
        let action = DihedralAction::new(5);
        assert_eq!(action.elements().count(), 10);
        let items: Vec<usize> = (0..5).collect();

        // shift applied p times is the identity
        let shift = DihedralElement { shift: 1, reflect: false };
        let mut current = items.clone();
        for _ in 0..5 {
            current = action.apply_slice(shift, &current);
        }
        assert_eq!(current, items);

        // reversal is an involution
        let reverse = DihedralElement { shift: 0, reflect: true };
        let once = action.apply_slice(reverse, &items);
        let twice = action.apply_slice(reverse, &once);
        assert_eq!(twice, items);
    }

    #[test]
    fn dihedral_invariance_of_length_and_residual() {
        let curve = PerturbedCircle::new(0.03, 5).unwrap();
        let config = Configuration::from_angles(&curve, &[0.3, 1.2, 2.8, 4.0, 5.5]).unwrap();
        let action = DihedralAction::new(5);
        let f = config.length();
        let r = config.billiard_residual(&curve).unwrap();
        for element in action.elements() {
            let moved = action.apply(element, &config);
            assert!((moved.length() - f).abs() < 1e-12);
            assert!((moved.billiard_residual(&curve).unwrap() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_representative_collapses_the_orbit() {
        let curve = PerturbedCircle::new(0.03, 5).unwrap();
        let config = Configuration::from_angles(&curve, &[0.3, 1.2, 2.8, 4.0, 5.5]).unwrap();
        let action = DihedralAction::new(5);
        let canonical = canonical_orbit_representative(&config, &action);
        for element in action.elements() {
            let moved = action.apply(element, &config);
            let again = canonical_orbit_representative(&moved, &action);
            assert_eq!(again, canonical);
        }
        // idempotent
        assert_eq!(canonical_orbit_representative(&canonical, &action), canonical);
    }

    #[test]
    fn rotation_numbers_of_regular_stars() {
        let circle = PerturbedCircle::circle();
        for (p, step, expected) in [(5, 1, 1), (5, 2, 2), (7, 3, 3)] {
            let angles: Vec<f64> =
                (0..p).map(|i| 2.0 * PI * (step * i) as f64 / p as f64).collect();
            let config = Configuration::from_angles(&circle, &angles).unwrap();
            assert_eq!(rotation_number(&config, &circle).unwrap(), expected);
        }
    }

    #[test]
    fn gradient_descent_direction_lowers_smoothed_length_near_diagonal() {
        // sanity: g is increasing in the tight gap, so critical points of g
        // cannot hide inside the collar
        let circle = PerturbedCircle::circle();
        let smoothing = SmoothingParams::new(0.2).unwrap();
        let tight = Configuration::from_angles(&circle, &[0.0, 0.05, PI]).unwrap();
        let wider = Configuration::from_angles(&circle, &[0.0, 0.06, PI]).unwrap();
        assert!(tight.smoothed_length(&smoothing) < wider.smoothed_length(&smoothing));
    }

    #[test]
    fn set_point_keeps_cache_in_sync() {
        let circle = PerturbedCircle::circle();
        let mut config = Configuration::from_angles(&circle, &[0.0, 2.0, 4.0]).unwrap();
        config.set_point(&circle, 1, ChartPoint::at(vec![2.5])).unwrap();
        let expected = circle.embed(&ChartPoint::at(vec![2.5])).unwrap();
        assert_eq!(config.ambient()[1], expected);
        let mut drifted = config.ambient()[1].clone();
        add_scaled(&mut drifted, &expected, -1.0);
        assert!(norm(&drifted) == 0.0);
    }
}
