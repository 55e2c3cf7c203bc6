//! The catalog of embedded manifolds: closed curves in the plane and
//! spheres (round, stretched, or radially rippled) in `R^{n+1}`.
//!
//! Every manifold is presented through explicit charts with analytic
//! embedding and tangent-frame maps. Curves use a single periodic angular
//! chart. Spheres use two overlapping polar-coordinate charts whose polar
//! axes are orthogonal, so whenever a point drifts into the polar cap of
//! one chart the other chart is comfortable; `rechart` moves a point to
//! whichever chart sees it farther from its pole.

use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use thiserror::Error;

use crate::homology::BettiProfile;
use crate::linalg::{dot, gram_determinant, norm};

/// Points of a polar cap where `|cos θ|` exceeds this level are moved to
/// the other chart before further numerical work.
pub const MAX_POLAR_LEVEL: f64 = 0.95;

const GRAM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum ManifoldError {
    #[error("coordinate {value} on axis {axis} outside [{lo}, {hi}]")]
    OutOfDomain { axis: usize, value: f64, lo: f64, hi: f64 },
    #[error("chart {chart} is singular near the given point (Gram determinant {gram:.3e})")]
    SingularChart { chart: usize, gram: f64 },
    #[error("chart index {0} out of range")]
    NoSuchChart(usize),
    #[error("bad manifold parameter: {0}")]
    BadParameter(String),
    #[error("expected {expected} chart coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
}

/// A point expressed in one chart of a manifold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: usize,
    pub coords: Vec<f64>,
}

impl ChartPoint {
    pub fn new(chart: usize, coords: Vec<f64>) -> Self {
        Self { chart, coords }
    }

    /// Single-chart convenience.
    pub fn at(coords: Vec<f64>) -> Self {
        Self { chart: 0, coords }
    }
}

/// A box in `R^m` with per-axis periodicity flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartDomain {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub periodic: Vec<bool>,
}

impl ChartDomain {
    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn period(&self, axis: usize) -> f64 {
        self.hi[axis] - self.lo[axis]
    }

    /// Wraps periodic axes into `[lo, hi)`; errors if a non-periodic
    /// coordinate falls outside its interval.
    pub fn wrap(&self, coords: &[f64]) -> Result<Vec<f64>, ManifoldError> {
        if coords.len() != self.dim() {
            return Err(ManifoldError::CoordinateCount { expected: self.dim(), got: coords.len() });
        }
        let mut out = Vec::with_capacity(coords.len());
        for (axis, &value) in coords.iter().enumerate() {
            if self.periodic[axis] {
                let period = self.period(axis);
                let wrapped = (value - self.lo[axis]).rem_euclid(period) + self.lo[axis];
                out.push(wrapped);
            } else if value < self.lo[axis] - 1e-12 || value > self.hi[axis] + 1e-12 {
                return Err(ManifoldError::OutOfDomain {
                    axis,
                    value,
                    lo: self.lo[axis],
                    hi: self.hi[axis],
                });
            } else {
                out.push(value.clamp(self.lo[axis], self.hi[axis]));
            }
        }
        Ok(out)
    }
}

/// An `m`-dimensional closed manifold embedded in `R^n` through one or
/// more charts with analytic tangent frames.
pub trait Manifold: Send + Sync {
    fn intrinsic_dim(&self) -> usize;
    fn ambient_dim(&self) -> usize;
    fn chart_count(&self) -> usize;
    fn chart_domain(&self) -> ChartDomain;

    /// Evaluates the embedding. Periodic coordinates are wrapped first;
    /// non-periodic coordinates outside the domain are an error.
    fn embed(&self, point: &ChartPoint) -> Result<Vec<f64>, ManifoldError>;

    /// `m` linearly independent ambient vectors spanning the tangent
    /// space, the partial derivatives of `embed` in chart coordinates.
    fn tangent_frame(&self, point: &ChartPoint) -> Result<Vec<Vec<f64>>, ManifoldError>;

    /// Ambient diameter scale, used to size diagonal collars.
    fn diameter(&self) -> f64;

    /// Brings coordinates back into the chart domain after a step:
    /// periodic axes wrap, polar angles reflect through the poles.
    fn normalize(&self, point: &ChartPoint) -> Result<ChartPoint, ManifoldError> {
        if point.chart >= self.chart_count() {
            return Err(ManifoldError::NoSuchChart(point.chart));
        }
        Ok(ChartPoint::new(point.chart, self.chart_domain().wrap(&point.coords)?))
    }

    /// True when the point sits in a region its chart resolves poorly.
    fn needs_rechart(&self, _point: &ChartPoint) -> bool {
        false
    }

    /// Re-expresses the point in the most comfortable chart.
    fn rechart(&self, point: &ChartPoint) -> Result<ChartPoint, ManifoldError> {
        self.normalize(point)
    }

    /// Re-expresses the point in a specific chart. Fails when that chart
    /// is singular at the point.
    fn express_in_chart(
        &self,
        point: &ChartPoint,
        chart: usize,
    ) -> Result<ChartPoint, ManifoldError> {
        if chart >= self.chart_count() {
            return Err(ManifoldError::NoSuchChart(chart));
        }
        self.normalize(point)
    }
}

fn checked_frame(frame: Vec<Vec<f64>>, chart: usize) -> Result<Vec<Vec<f64>>, ManifoldError> {
    let gram = gram_determinant(&frame);
    if gram <= GRAM_TOLERANCE {
        return Err(ManifoldError::SingularChart { chart, gram });
    }
    Ok(frame)
}

// ---------------------------------------------------------------------------
// closed curves in the plane
// ---------------------------------------------------------------------------

/// The curve `r(φ) = 1 - ε cos(kφ)` in polar coordinates. `ε = 0` is the
/// round unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedCircle {
    epsilon: f64,
    harmonics: u32,
}

impl PerturbedCircle {
    pub fn new(epsilon: f64, harmonics: u32) -> Result<Self, ManifoldError> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(ManifoldError::BadParameter(format!(
                "ripple amplitude {epsilon} must satisfy 0 <= ε < 1"
            )));
        }
        if epsilon > 0.0 && harmonics < 1 {
            return Err(ManifoldError::BadParameter(
                "harmonic count must be at least 1 for a rippled circle".into(),
            ));
        }
        Ok(Self { epsilon, harmonics })
    }

    pub fn circle() -> Self {
        Self { epsilon: 0.0, harmonics: 1 }
    }

    fn radius(&self, phi: f64) -> f64 {
        1.0 - self.epsilon * (self.harmonics as f64 * phi).cos()
    }

    fn radius_derivative(&self, phi: f64) -> f64 {
        let k = self.harmonics as f64;
        self.epsilon * k * (k * phi).sin()
    }
}

impl Manifold for PerturbedCircle {
    fn intrinsic_dim(&self) -> usize {
        1
    }

    fn ambient_dim(&self) -> usize {
        2
    }

    fn chart_count(&self) -> usize {
        1
    }

    fn chart_domain(&self) -> ChartDomain {
        ChartDomain { lo: vec![0.0], hi: vec![TAU], periodic: vec![true] }
    }

    fn embed(&self, point: &ChartPoint) -> Result<Vec<f64>, ManifoldError> {
        let coords = self.chart_domain().wrap(&point.coords)?;
        let phi = coords[0];
        let r = self.radius(phi);
        Ok(vec![r * phi.cos(), r * phi.sin()])
    }

    fn tangent_frame(&self, point: &ChartPoint) -> Result<Vec<Vec<f64>>, ManifoldError> {
        let coords = self.chart_domain().wrap(&point.coords)?;
        let phi = coords[0];
        let r = self.radius(phi);
        let dr = self.radius_derivative(phi);
        let frame = vec![vec![dr * phi.cos() - r * phi.sin(), dr * phi.sin() + r * phi.cos()]];
        checked_frame(frame, point.chart)
    }

    fn diameter(&self) -> f64 {
        2.0 * (1.0 + self.epsilon)
    }
}

/// The ellipse `(a cos φ, b sin φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipse {
    a: f64,
    b: f64,
}

impl Ellipse {
    pub fn new(a: f64, b: f64) -> Result<Self, ManifoldError> {
        if a <= 0.0 || b <= 0.0 {
            return Err(ManifoldError::BadParameter(format!(
                "ellipse semi-axes must be positive, got ({a}, {b})"
            )));
        }
        Ok(Self { a, b })
    }
}

impl Manifold for Ellipse {
    fn intrinsic_dim(&self) -> usize {
        1
    }

    fn ambient_dim(&self) -> usize {
        2
    }

    fn chart_count(&self) -> usize {
        1
    }

    fn chart_domain(&self) -> ChartDomain {
        ChartDomain { lo: vec![0.0], hi: vec![TAU], periodic: vec![true] }
    }

    fn embed(&self, point: &ChartPoint) -> Result<Vec<f64>, ManifoldError> {
        let coords = self.chart_domain().wrap(&point.coords)?;
        let phi = coords[0];
        Ok(vec![self.a * phi.cos(), self.b * phi.sin()])
    }

    fn tangent_frame(&self, point: &ChartPoint) -> Result<Vec<Vec<f64>>, ManifoldError> {
        let coords = self.chart_domain().wrap(&point.coords)?;
        let phi = coords[0];
        checked_frame(vec![vec![-self.a * phi.sin(), self.b * phi.cos()]], point.chart)
    }

    fn diameter(&self) -> f64 {
        2.0 * self.a.max(self.b)
    }
}

// ---------------------------------------------------------------------------
// spherical charts shared by the sphere-like manifolds
// ---------------------------------------------------------------------------

/// Standard polar coordinates on the round unit `S^n`:
/// `u = (θ_1, .., θ_{n-1}, φ)` with the θ's in `[0, π]` and `φ` periodic.
fn sphere_domain(n: usize) -> ChartDomain {
    let mut lo = vec![0.0; n];
    let mut hi = vec![PI; n];
    let mut periodic = vec![false; n];
    lo[n - 1] = 0.0;
    hi[n - 1] = TAU;
    periodic[n - 1] = true;
    ChartDomain { lo, hi, periodic }
}

/// The recursion `z_0 = cos θ_1`, `z_k = cos u_k Π_{i<k} sin u_i`,
/// `z_n = Π sin θ_i sin φ`, then rotated so the polar component sits last
/// (chart 0) or first (chart 1).
fn sphere_unit_point(u: &[f64], chart: usize) -> Vec<f64> {
    let n = u.len();
    let mut z = vec![0.0; n + 1];
    z[0] = u[0].cos();
    let mut sin_prod = 1.0;
    for k in 1..n {
        sin_prod *= u[k - 1].sin();
        z[k] = u[k].cos() * sin_prod;
    }
    z[n] = sin_prod * u[n - 1].sin();
    rotate_from_standard(&z, chart)
}

/// Partial derivatives of `sphere_unit_point` with respect to each chart
/// coordinate.
fn sphere_unit_frame(u: &[f64], chart: usize) -> Vec<Vec<f64>> {
    let n = u.len();
    let prod_sin_except = |upto: usize, skip: Option<usize>| -> f64 {
        (0..upto).map(|i| if Some(i) == skip { u[i].cos() } else { u[i].sin() }).product()
    };
    (0..n)
        .map(|j| {
            let mut dz = vec![0.0; n + 1];
            if j == 0 {
                dz[0] = -u[0].sin();
            }
            for k in 1..n {
                if j == k {
                    dz[k] = -u[k].sin() * prod_sin_except(k, None);
                } else if j < k {
                    dz[k] = u[k].cos() * prod_sin_except(k, Some(j));
                }
            }
            if j == n - 1 {
                dz[n] = u[n - 1].cos() * prod_sin_except(n - 1, None);
            } else {
                dz[n] = u[n - 1].sin() * prod_sin_except(n - 1, Some(j));
            }
            rotate_from_standard(&dz, chart)
        })
        .collect()
}

/// chart 0 sends the polar component (index 0 of the recursion) to the
/// last ambient slot; chart 1 then rotates every index right by one.
fn rotate_from_standard(z: &[f64], chart: usize) -> Vec<f64> {
    let n = z.len() - 1;
    let mut y = vec![0.0; n + 1];
    y[..n].copy_from_slice(&z[1..(n + 1)]);
    y[n] = z[0];
    match chart {
        0 => y,
        _ => {
            let mut rotated = vec![0.0; n + 1];
            rotated[0] = y[n];
            rotated[1..(n + 1)].copy_from_slice(&y[..n]);
            rotated
        }
    }
}

fn rotate_to_standard(y: &[f64], chart: usize) -> Vec<f64> {
    let n = y.len() - 1;
    let y = match chart {
        0 => y.to_vec(),
        _ => {
            let mut unrotated = vec![0.0; n + 1];
            unrotated[..n].copy_from_slice(&y[1..(n + 1)]);
            unrotated[n] = y[0];
            unrotated
        }
    };
    let mut z = vec![0.0; n + 1];
    z[0] = y[n];
    z[1..(n + 1)].copy_from_slice(&y[..n]);
    z
}

/// Chart coordinates of a point on the round unit sphere.
fn sphere_coords_from_unit(y: &[f64], chart: usize) -> Vec<f64> {
    let n = y.len() - 1;
    let z = rotate_to_standard(y, chart);
    let mut u = vec![0.0; n];
    u[0] = z[0].clamp(-1.0, 1.0).acos();
    let mut sin_prod = u[0].sin();
    for k in 1..n - 1 {
        let c = if sin_prod.abs() < 1e-300 { 0.0 } else { (z[k] / sin_prod).clamp(-1.0, 1.0) };
        u[k] = c.acos();
        sin_prod *= u[k].sin();
    }
    u[n - 1] = z[n].atan2(z[n - 1]).rem_euclid(TAU);
    u
}

/// `cos θ_1` in the point's own chart (its distance from the chart poles).
fn polar_level(u: &[f64]) -> f64 {
    u[0].cos()
}

/// Reflects polar angles that left `[0, π]` back inside, applying the
/// antipodal flip to the remaining coordinates; wraps φ.
fn sphere_normalize(domain: &ChartDomain, coords: &[f64]) -> Result<Vec<f64>, ManifoldError> {
    let n = coords.len();
    if n != domain.dim() {
        return Err(ManifoldError::CoordinateCount { expected: domain.dim(), got: n });
    }
    let mut u = coords.to_vec();
    for k in 0..n - 1 {
        // a couple of reflections covers any trust-region sized step
        for _ in 0..2 {
            if u[k] < 0.0 {
                u[k] = -u[k];
                antipode_tail(&mut u, k + 1);
            } else if u[k] > PI {
                u[k] = TAU - u[k];
                antipode_tail(&mut u, k + 1);
            }
        }
        u[k] = u[k].clamp(0.0, PI);
    }
    u[n - 1] = u[n - 1].rem_euclid(TAU);
    Ok(u)
}

fn antipode_tail(u: &mut [f64], from: usize) {
    let n = u.len();
    for v in u.iter_mut().take(n - 1).skip(from) {
        *v = PI - *v;
    }
    u[n - 1] += PI;
}

/// Picks the chart in which the point sits farther from the poles.
fn preferred_chart(unit_point: &[f64]) -> usize {
    let n = unit_point.len() - 1;
    if unit_point[n].abs() <= unit_point[0].abs() {
        0
    } else {
        1
    }
}

/// Coordinates of a unit-sphere point in a *requested* chart, failing if
/// that chart is too close to singular there.
fn sphere_checked_coords(y: &[f64], chart: usize) -> Result<ChartPoint, ManifoldError> {
    let n = y.len() - 1;
    let level = if chart == 0 { y[n] } else { y[0] };
    if level.abs() > 0.999 {
        return Err(ManifoldError::SingularChart { chart, gram: 1.0 - level.abs() });
    }
    Ok(ChartPoint::new(chart, sphere_coords_from_unit(y, chart)))
}

// ---------------------------------------------------------------------------
// sphere-like manifolds
// ---------------------------------------------------------------------------

/// An axis-aligned ellipsoid `Σ (x_i / a_i)^2 = 1`; equal axes give the
/// round sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    semi_axes: Vec<f64>,
}

impl Ellipsoid {
    pub fn new(semi_axes: Vec<f64>) -> Result<Self, ManifoldError> {
        if semi_axes.len() < 3 {
            return Err(ManifoldError::BadParameter(format!(
                "an ellipsoid needs at least 3 semi-axes, got {}",
                semi_axes.len()
            )));
        }
        if semi_axes.iter().any(|&a| a <= 0.0) {
            return Err(ManifoldError::BadParameter("semi-axes must be positive".into()));
        }
        Ok(Self { semi_axes })
    }

    pub fn sphere(dim: usize) -> Result<Self, ManifoldError> {
        if dim < 2 {
            return Err(ManifoldError::BadParameter(format!(
                "sphere dimension {dim} must be at least 2"
            )));
        }
        Self::new(vec![1.0; dim + 1])
    }
}

impl Manifold for Ellipsoid {
    fn intrinsic_dim(&self) -> usize {
        self.semi_axes.len() - 1
    }

    fn ambient_dim(&self) -> usize {
        self.semi_axes.len()
    }

    fn chart_count(&self) -> usize {
        2
    }

    fn chart_domain(&self) -> ChartDomain {
        sphere_domain(self.intrinsic_dim())
    }

    fn embed(&self, point: &ChartPoint) -> Result<Vec<f64>, ManifoldError> {
        if point.chart >= 2 {
            return Err(ManifoldError::NoSuchChart(point.chart));
        }
        let coords = self.chart_domain().wrap(&point.coords)?;
        let y = sphere_unit_point(&coords, point.chart);
        Ok(y.iter().zip(&self.semi_axes).map(|(v, a)| v * a).collect())
    }

    fn tangent_frame(&self, point: &ChartPoint) -> Result<Vec<Vec<f64>>, ManifoldError> {
        if point.chart >= 2 {
            return Err(ManifoldError::NoSuchChart(point.chart));
        }
        let coords = self.chart_domain().wrap(&point.coords)?;
        let frame = sphere_unit_frame(&coords, point.chart)
            .into_iter()
            .map(|row| row.iter().zip(&self.semi_axes).map(|(v, a)| v * a).collect())
            .collect();
        checked_frame(frame, point.chart)
    }

    fn diameter(&self) -> f64 {
        2.0 * self.semi_axes.iter().cloned().fold(0.0, f64::max)
    }

    fn normalize(&self, point: &ChartPoint) -> Result<ChartPoint, ManifoldError> {
        if point.chart >= 2 {
            return Err(ManifoldError::NoSuchChart(point.chart));
        }
        let coords = sphere_normalize(&self.chart_domain(), &point.coords)?;
        Ok(ChartPoint::new(point.chart, coords))
    }

    fn needs_rechart(&self, point: &ChartPoint) -> bool {
        polar_level(&point.coords).abs() > MAX_POLAR_LEVEL
    }

    fn rechart(&self, point: &ChartPoint) -> Result<ChartPoint, ManifoldError> {
        let normalized = self.normalize(point)?;
        let x = self.embed(&normalized)?;
        let y: Vec<f64> = x.iter().zip(&self.semi_axes).map(|(v, a)| v / a).collect();
        let chart = preferred_chart(&y);
        Ok(ChartPoint::new(chart, sphere_coords_from_unit(&y, chart)))
    }

    fn express_in_chart(
        &self,
        point: &ChartPoint,
        chart: usize,
    ) -> Result<ChartPoint, ManifoldError> {
        if chart >= 2 {
            return Err(ManifoldError::NoSuchChart(chart));
        }
        let normalized = self.normalize(point)?;
        let x = self.embed(&normalized)?;
        let y: Vec<f64> = x.iter().zip(&self.semi_axes).map(|(v, a)| v / a).collect();
        sphere_checked_coords(&y, chart)
    }
}

/// The radial graph `x = (1 + ε h(y)) y` over the round unit sphere,
/// where `h` is a fixed traceless quadratic with distinct coefficients,
/// `h(y) = Σ (i - n/2) y_i^2`. A small generic ripple of the sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedSphere {
    dim: usize,
    epsilon: f64,
    weights: Vec<f64>,
}

impl PerturbedSphere {
    pub fn new(dim: usize, epsilon: f64) -> Result<Self, ManifoldError> {
        if dim < 2 {
            return Err(ManifoldError::BadParameter(format!(
                "sphere dimension {dim} must be at least 2"
            )));
        }
        let half = dim as f64 / 2.0;
        let weights: Vec<f64> = (0..=dim).map(|i| i as f64 - half).collect();
        let max_weight = weights.iter().cloned().fold(0.0, |acc: f64, w| acc.max(w.abs()));
        if epsilon < 0.0 || epsilon * max_weight >= 1.0 {
            return Err(ManifoldError::BadParameter(format!(
                "ripple amplitude {epsilon} too large for dimension {dim}"
            )));
        }
        Ok(Self { dim, epsilon, weights })
    }

    fn radial_factor(&self, y: &[f64]) -> f64 {
        1.0 + self.epsilon * dot(&self.weights, &y.iter().map(|v| v * v).collect::<Vec<_>>())
    }
}

impl Manifold for PerturbedSphere {
    fn intrinsic_dim(&self) -> usize {
        self.dim
    }

    fn ambient_dim(&self) -> usize {
        self.dim + 1
    }

    fn chart_count(&self) -> usize {
        2
    }

    fn chart_domain(&self) -> ChartDomain {
        sphere_domain(self.dim)
    }

    fn embed(&self, point: &ChartPoint) -> Result<Vec<f64>, ManifoldError> {
        if point.chart >= 2 {
            return Err(ManifoldError::NoSuchChart(point.chart));
        }
        let coords = self.chart_domain().wrap(&point.coords)?;
        let y = sphere_unit_point(&coords, point.chart);
        let rho = self.radial_factor(&y);
        Ok(y.iter().map(|v| rho * v).collect())
    }

    fn tangent_frame(&self, point: &ChartPoint) -> Result<Vec<Vec<f64>>, ManifoldError> {
        if point.chart >= 2 {
            return Err(ManifoldError::NoSuchChart(point.chart));
        }
        let coords = self.chart_domain().wrap(&point.coords)?;
        let y = sphere_unit_point(&coords, point.chart);
        let rho = self.radial_factor(&y);
        let frame = sphere_unit_frame(&coords, point.chart)
            .into_iter()
            .map(|dy| {
                // d(ρ y) = (ε ∇h · dy) y + ρ dy, with ∇h = 2 w ⊙ y
                let drho: f64 = 2.0
                    * self.epsilon
                    * y.iter()
                        .zip(&self.weights)
                        .zip(&dy)
                        .map(|((v, w), d)| w * v * d)
                        .sum::<f64>();
                y.iter().zip(&dy).map(|(v, d)| drho * v + rho * d).collect()
            })
            .collect();
        checked_frame(frame, point.chart)
    }

    fn diameter(&self) -> f64 {
        2.0 * (1.0 + self.epsilon * self.dim as f64)
    }

    fn normalize(&self, point: &ChartPoint) -> Result<ChartPoint, ManifoldError> {
        if point.chart >= 2 {
            return Err(ManifoldError::NoSuchChart(point.chart));
        }
        let coords = sphere_normalize(&self.chart_domain(), &point.coords)?;
        Ok(ChartPoint::new(point.chart, coords))
    }

    fn needs_rechart(&self, point: &ChartPoint) -> bool {
        polar_level(&point.coords).abs() > MAX_POLAR_LEVEL
    }

    fn rechart(&self, point: &ChartPoint) -> Result<ChartPoint, ManifoldError> {
        let normalized = self.normalize(point)?;
        let x = self.embed(&normalized)?;
        let len = norm(&x);
        let y: Vec<f64> = x.iter().map(|v| v / len).collect();
        let chart = preferred_chart(&y);
        Ok(ChartPoint::new(chart, sphere_coords_from_unit(&y, chart)))
    }

    fn express_in_chart(
        &self,
        point: &ChartPoint,
        chart: usize,
    ) -> Result<ChartPoint, ManifoldError> {
        if chart >= 2 {
            return Err(ManifoldError::NoSuchChart(chart));
        }
        let normalized = self.normalize(point)?;
        let x = self.embed(&normalized)?;
        let len = norm(&x);
        let y: Vec<f64> = x.iter().map(|v| v / len).collect();
        sphere_checked_coords(&y, chart)
    }
}

// ---------------------------------------------------------------------------
// catalog specification
// ---------------------------------------------------------------------------

/// Serializable description of a catalog manifold, as read from the
/// experiment config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ManifoldKind {
    Circle,
    PerturbedCircle { epsilon: f64, harmonics: u32 },
    Ellipse { semi_axes: [f64; 2] },
    Sphere { dim: usize },
    Ellipsoid { semi_axes: Vec<f64> },
    PerturbedSphere { dim: usize, epsilon: f64 },
}

impl ManifoldKind {
    pub fn build(&self) -> Result<Box<dyn Manifold>, ManifoldError> {
        Ok(match self {
            ManifoldKind::Circle => Box::new(PerturbedCircle::circle()),
            ManifoldKind::PerturbedCircle { epsilon, harmonics } => {
                Box::new(PerturbedCircle::new(*epsilon, *harmonics)?)
            }
            ManifoldKind::Ellipse { semi_axes } => {
                Box::new(Ellipse::new(semi_axes[0], semi_axes[1])?)
            }
            ManifoldKind::Sphere { dim } => Box::new(Ellipsoid::sphere(*dim)?),
            ManifoldKind::Ellipsoid { semi_axes } => Box::new(Ellipsoid::new(semi_axes.clone())?),
            ManifoldKind::PerturbedSphere { dim, epsilon } => {
                Box::new(PerturbedSphere::new(*dim, *epsilon)?)
            }
        })
    }

    pub fn intrinsic_dim(&self) -> usize {
        match self {
            ManifoldKind::Circle
            | ManifoldKind::PerturbedCircle { .. }
            | ManifoldKind::Ellipse { .. } => 1,
            ManifoldKind::Sphere { dim } | ManifoldKind::PerturbedSphere { dim, .. } => *dim,
            ManifoldKind::Ellipsoid { semi_axes } => semi_axes.len() - 1,
        }
    }

    pub fn is_sphere_like(&self) -> bool {
        matches!(
            self,
            ManifoldKind::Sphere { .. }
                | ManifoldKind::Ellipsoid { .. }
                | ManifoldKind::PerturbedSphere { .. }
        )
    }

    /// Homology dimensions of the underlying closed manifold (a circle or
    /// a sphere), valid over any prime field.
    pub fn betti_profile(&self, field: u32) -> BettiProfile {
        let m = self.intrinsic_dim();
        let mut dims = vec![0usize; m + 1];
        dims[0] = 1;
        dims[m] += 1;
        BettiProfile::new(field, dims)
    }
}
