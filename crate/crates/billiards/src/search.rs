//! Multistart numerical discovery of periodic billiard trajectories.
//!
//! Starts are drawn from a low-discrepancy sequence over the chart
//! coordinates of all `p` vertices, refined by a damped Newton method on
//! the square tangential-residual system, deduplicated per dihedral
//! orbit, and classified as isolated trajectories or sampled critical
//! families according to the null space of the Hessian.
//!
//! The length functional has saddle points, so descent alone cannot find
//! every trajectory; Newton on the residual system converges to critical
//! points of any index. When the Newton step is unreliable (singular or
//! outside the trust radius) the step blends toward the gradient flow of
//! the squared residual, which also handles the degenerate Jacobians that
//! appear along critical families.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::billiard::{
    canonical_orbit_representative, morse_index, relative_degeneracy_tol, rotation_number,
    BilliardError, Configuration, CriticalPointReport, DihedralAction,
};
use crate::linalg::distance;
use crate::manifold::{ChartPoint, Manifold, ManifoldError};

/// Finite-difference step for residual Jacobians.
const JACOBIAN_STEP: f64 = 1e-6;
/// Largest chart-coordinate step accepted from a raw Newton solve.
const TRUST_RADIUS: f64 = 0.5;
/// Inner damping attempts per iteration before giving up.
const MAX_DAMPING_TRIES: usize = 12;
/// Walk budget when testing whether two degenerate orbits chain together.
const FAMILY_WALK_STEPS: usize = 50;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Billiard(#[from] BilliardError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

/// Tolerances and budgets for one search run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub p: usize,
    pub starts: usize,
    pub seed: u64,
    /// residual level below which the refiner trusts undamped Newton steps
    pub descent_tol: f64,
    /// residual level counted as converged
    pub newton_tol: f64,
    /// collar half-width around the diagonal; `None` resolves to
    /// `1e-3 x` manifold diameter
    pub diagonal_tolerance: Option<f64>,
    pub max_iters: usize,
    /// ambient orbit distance under which two results are one orbit
    pub dedup_tol: f64,
    /// chart-space step used when chaining and sampling families
    pub family_tol: f64,
    /// configurations sampled along each detected family
    pub family_samples: usize,
}

impl SearchConfig {
    pub fn new(p: usize) -> Self {
        Self {
            p,
            starts: 500,
            seed: 1,
            descent_tol: 1e-3,
            newton_tol: 1e-10,
            diagonal_tolerance: None,
            max_iters: 120,
            dedup_tol: 1e-4,
            family_tol: 0.05,
            family_samples: 100,
        }
    }

    pub fn with_starts(mut self, starts: usize) -> Self {
        self.starts = starts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.p < 2 {
            return Err(SearchError::InvalidConfig(format!("p = {} must be at least 2", self.p)));
        }
        let positives = [
            ("descent_tol", self.descent_tol),
            ("newton_tol", self.newton_tol),
            ("dedup_tol", self.dedup_tol),
            ("family_tol", self.family_tol),
        ];
        for (name, value) in positives {
            if value <= 0.0 {
                return Err(SearchError::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if let Some(d) = self.diagonal_tolerance {
            if d <= 0.0 {
                return Err(SearchError::InvalidConfig(
                    "diagonal_tolerance must be positive".into(),
                ));
            }
        }
        if self.newton_tol >= self.descent_tol {
            return Err(SearchError::InvalidConfig("newton_tol must be below descent_tol".into()));
        }
        if self.dedup_tol <= self.newton_tol {
            return Err(SearchError::InvalidConfig("dedup_tol must exceed newton_tol".into()));
        }
        if self.starts == 0 || self.max_iters == 0 {
            return Err(SearchError::InvalidConfig("starts and max_iters must be nonzero".into()));
        }
        Ok(())
    }

    pub fn resolved_diagonal_tolerance(&self, manifold: &dyn Manifold) -> f64 {
        self.diagonal_tolerance.unwrap_or(1e-3 * manifold.diameter())
    }
}

/// A critical family: a connected set of degenerate orbits, with sampled
/// configurations walked along its null directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub representative: CriticalPointReport,
    /// number of deduplicated orbits merged into this family
    pub merged_orbits: usize,
    pub samples: Vec<Configuration>,
}

/// Everything one search run produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    /// isolated orbits (null dimension zero), one representative each,
    /// sorted by length
    pub trajectories: Vec<CriticalPointReport>,
    pub families: Vec<FamilyReport>,
    pub rejected_diagonal: usize,
    pub starts_converged: usize,
    pub starts_attempted: usize,
}

impl SearchReport {
    pub fn isolated_count(&self) -> usize {
        self.trajectories.len()
    }

    pub fn family_count(&self) -> usize {
        self.families.len()
    }
}

// ---------------------------------------------------------------------------
// seeding
// ---------------------------------------------------------------------------

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Additive low-discrepancy sequence: fractional multiples of inverse
/// powers of the generalized golden ratio, offset by a seeded phase.
struct LowDiscrepancy {
    alpha: Vec<f64>,
    phase: Vec<f64>,
    index: u64,
}

impl LowDiscrepancy {
    fn new(dim: usize, seed: u64) -> Self {
        // unique positive root of x^(d+1) = x + 1
        let mut phi = 2.0f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
        }
        let alpha = (1..=dim).map(|j| (1.0 / phi).powi(j as i32)).collect();
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) ^ 0x5851f42d4c957f2d;
        let phase = (0..dim).map(|_| splitmix64(&mut state) as f64 / u64::MAX as f64).collect();
        Self { alpha, phase, index: 0 }
    }

    fn next_point(&mut self) -> Vec<f64> {
        self.index += 1;
        let k = self.index as f64;
        self.alpha.iter().zip(&self.phase).map(|(a, p)| (p + k * a).fract()).collect()
    }
}

fn seed_configurations(
    manifold: &dyn Manifold,
    cfg: &SearchConfig,
    diagonal_tolerance: f64,
) -> Result<Vec<Vec<ChartPoint>>, SearchError> {
    let m = manifold.intrinsic_dim();
    let domain = manifold.chart_domain();
    let dim = m * cfg.p;
    let mut sequence = LowDiscrepancy::new(dim, cfg.seed);
    let mut seeds = Vec::with_capacity(cfg.starts);
    let budget = cfg.starts.saturating_mul(1000).max(10_000);
    for _ in 0..budget {
        if seeds.len() == cfg.starts {
            break;
        }
        let raw = sequence.next_point();
        let mut points = Vec::with_capacity(cfg.p);
        for vertex in 0..cfg.p {
            let coords: Vec<f64> = (0..m)
                .map(|axis| domain.lo[axis] + raw[vertex * m + axis] * domain.period(axis))
                .collect();
            points.push(ChartPoint::new(0, coords));
        }
        // skip polar caps and near-diagonal starts
        if points.iter().any(|pt| manifold.needs_rechart(pt)) {
            continue;
        }
        let Ok(config) = Configuration::new(manifold, points.clone()) else { continue };
        if config.min_gap() < 2.0 * diagonal_tolerance {
            continue;
        }
        seeds.push(points);
    }
    Ok(seeds)
}

// ---------------------------------------------------------------------------
// refinement
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum RefineOutcome {
    Converged(Configuration),
    /// the iterate entered the diagonal collar and was rejected
    Diagonal,
    NotConverged,
}

fn rechart_all(manifold: &dyn Manifold, config: &mut Configuration) -> Result<(), BilliardError> {
    for i in 0..config.p() {
        let point = &config.points()[i];
        if manifold.needs_rechart(point) {
            let moved = manifold.rechart(point)?;
            config.set_point(manifold, i, moved)?;
        }
    }
    Ok(())
}

fn residual_jacobian(
    manifold: &dyn Manifold,
    config: &Configuration,
) -> Result<DMatrix<f64>, BilliardError> {
    let m = manifold.intrinsic_dim();
    let p = config.p();
    let dim = m * p;
    let h = JACOBIAN_STEP;
    let mut jacobian = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let (vertex, axis) = (col / m, col % m);
        let mut plus = config.clone();
        let mut point = plus.points()[vertex].clone();
        point.coords[axis] += h;
        plus.set_point(manifold, vertex, point)?;
        let mut minus = config.clone();
        let mut point = minus.points()[vertex].clone();
        point.coords[axis] -= h;
        minus.set_point(manifold, vertex, point)?;
        let fp = plus.residual_vector(manifold)?;
        let fm = minus.residual_vector(manifold)?;
        for row in 0..dim {
            jacobian[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    Ok(jacobian)
}

fn apply_step(
    manifold: &dyn Manifold,
    config: &Configuration,
    step: &DVector<f64>,
) -> Result<Configuration, BilliardError> {
    let m = manifold.intrinsic_dim();
    let mut moved = config.clone();
    for vertex in 0..config.p() {
        let mut point = moved.points()[vertex].clone();
        for axis in 0..m {
            point.coords[axis] += step[vertex * m + axis];
        }
        moved.set_point(manifold, vertex, point)?;
    }
    Ok(moved)
}

/// Newton corrector for the tangential-residual system: `m·p` equations
/// in `m·p` chart unknowns. Pure Newton steps inside the trust radius,
/// damped least-squares steps otherwise.
pub fn refine(
    manifold: &dyn Manifold,
    start: &Configuration,
    cfg: &SearchConfig,
) -> Result<RefineOutcome, SearchError> {
    let diagonal_tolerance = cfg.resolved_diagonal_tolerance(manifold);
    let mut current = start.clone();
    if current.min_gap() < diagonal_tolerance {
        return Ok(RefineOutcome::Diagonal);
    }
    let mut lambda: f64 = 1e-3;
    for _ in 0..cfg.max_iters {
        rechart_all(manifold, &mut current)?;
        let residual = match current.residual_vector(manifold) {
            Ok(r) => r,
            Err(BilliardError::Diagonal { .. }) => return Ok(RefineOutcome::Diagonal),
            Err(e) => return Err(e.into()),
        };
        let res_norm = crate::linalg::norm(&residual);
        if res_norm < cfg.newton_tol {
            return Ok(RefineOutcome::Converged(current));
        }
        let jacobian = match residual_jacobian(manifold, &current) {
            Ok(j) => j,
            Err(BilliardError::Diagonal { .. }) => return Ok(RefineOutcome::Diagonal),
            Err(BilliardError::Manifold(ManifoldError::SingularChart { .. })) => {
                return Ok(RefineOutcome::NotConverged)
            }
            Err(e) => return Err(e.into()),
        };
        let f = DVector::from_vec(residual);

        // raw Newton steps are trusted only once the residual is below
        // descent_tol; farther out, damped least-squares corrections do
        // the descending
        let mut accepted = false;
        if res_norm < cfg.descent_tol {
            let newton_step = jacobian.clone().lu().solve(&(-&f));
            if let Some(step) = newton_step {
                if step.norm() <= TRUST_RADIUS {
                    if let Ok(candidate) = apply_step(manifold, &current, &step) {
                        if candidate.min_gap() >= diagonal_tolerance {
                            if let Ok(r_new) = candidate.billiard_residual(manifold) {
                                if r_new < res_norm {
                                    current = candidate;
                                    lambda = (lambda / 3.0).max(1e-12);
                                    accepted = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        if !accepted {
            let jt = jacobian.transpose();
            let jtj = &jt * &jacobian;
            let jtf = &jt * &f;
            let mut tries = 0;
            while tries < MAX_DAMPING_TRIES {
                let mut damped = jtj.clone();
                for i in 0..damped.nrows() {
                    damped[(i, i)] += lambda * (jtj[(i, i)].abs() + 1e-12);
                }
                let Some(step) = damped.lu().solve(&(-&jtf)) else {
                    lambda *= 10.0;
                    tries += 1;
                    continue;
                };
                let step = if step.norm() > TRUST_RADIUS {
                    step.scale(TRUST_RADIUS / step.norm())
                } else {
                    step
                };
                match apply_step(manifold, &current, &step) {
                    Ok(candidate) if candidate.min_gap() >= diagonal_tolerance => {
                        match candidate.billiard_residual(manifold) {
                            Ok(r_new) if r_new < res_norm => {
                                current = candidate;
                                lambda = (lambda / 3.0).max(1e-12);
                                accepted = true;
                                break;
                            }
                            _ => {}
                        }
                    }
                    _ => {}
                }
                lambda *= 10.0;
                tries += 1;
            }
        }
        if !accepted {
            return Ok(RefineOutcome::NotConverged);
        }
    }
    // the loop ran out of iterations; accept only a converged residual
    let final_residual = current.billiard_residual(manifold).unwrap_or(f64::INFINITY);
    if final_residual < cfg.newton_tol {
        Ok(RefineOutcome::Converged(current))
    } else {
        Ok(RefineOutcome::NotConverged)
    }
}

// ---------------------------------------------------------------------------
// deduplication and classification
// ---------------------------------------------------------------------------

/// Smallest over the dihedral group of the largest vertex displacement
/// between the two configurations.
pub fn orbit_distance(action: &DihedralAction, a: &Configuration, b: &Configuration) -> f64 {
    action
        .elements()
        .map(|element| {
            let moved = action.apply_slice(element, b.ambient());
            a.ambient().iter().zip(&moved).map(|(x, y)| distance(x, y)).fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

fn lex_key(config: &Configuration) -> Vec<f64> {
    config
        .points()
        .iter()
        .flat_map(|pt| std::iter::once(pt.chart as f64).chain(pt.coords.iter().copied()))
        .collect()
}

fn sort_deterministically(configs: &mut [Configuration]) {
    configs.sort_by(|a, b| {
        a.length().total_cmp(&b.length()).then_with(|| {
            let ka = lex_key(a);
            let kb = lex_key(b);
            for (x, y) in ka.iter().zip(&kb) {
                match x.total_cmp(y) {
                    std::cmp::Ordering::Equal => continue,
                    other => return other,
                }
            }
            std::cmp::Ordering::Equal
        })
    });
}

fn classify(
    manifold: &dyn Manifold,
    config: Configuration,
) -> Result<CriticalPointReport, SearchError> {
    let hessian = config.tangential_hessian(manifold)?;
    let tol = relative_degeneracy_tol(&hessian);
    let (index, null_dim) = morse_index(&hessian, tol);
    let rotation =
        if manifold.intrinsic_dim() == 1 { rotation_number(&config, manifold).ok() } else { None };
    let residual_norm = config.billiard_residual(manifold)?;
    Ok(CriticalPointReport {
        length: config.length(),
        residual_norm,
        morse_index: index,
        null_dim,
        rotation_number: rotation,
        config,
    })
}

/// Attempts to walk from one orbit to another along the critical set:
/// steps of `family_tol` toward the target, re-converged after each step.
fn family_walk(
    manifold: &dyn Manifold,
    cfg: &SearchConfig,
    action: &DihedralAction,
    from: &Configuration,
    to: &Configuration,
) -> bool {
    // align the target to the best dihedral copy
    let mut best: Option<(f64, Configuration)> = None;
    for element in action.elements() {
        let moved = action.apply(element, to);
        let d = from
            .ambient()
            .iter()
            .zip(moved.ambient())
            .map(|(x, y)| distance(x, y))
            .fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, moved));
        }
    }
    let (_, target) = best.expect("dihedral group is nonempty");

    let mut current = from.clone();
    for _ in 0..FAMILY_WALK_STEPS {
        // express the target in the charts the current points use, then
        // measure the remaining chart-space displacement
        let m = manifold.intrinsic_dim();
        let domain = manifold.chart_domain();
        let mut delta = Vec::with_capacity(m * current.p());
        for (cur, tgt) in current.points().iter().zip(target.points()) {
            let Ok(expressed) = manifold.express_in_chart(tgt, cur.chart) else {
                return false;
            };
            for axis in 0..m {
                let mut d = expressed.coords[axis] - cur.coords[axis];
                if domain.periodic[axis] {
                    let period = domain.period(axis);
                    d = d.rem_euclid(period);
                    if d > period / 2.0 {
                        d -= period;
                    }
                }
                delta.push(d);
            }
        }
        let remaining = crate::linalg::norm(&delta);
        if remaining <= 2.0 * cfg.family_tol {
            return true;
        }
        let scale = cfg.family_tol / remaining;
        let step = DVector::from_vec(delta).scale(scale);
        let Ok(stepped) = apply_step(manifold, &current, &step) else { return false };
        match refine(manifold, &stepped, cfg) {
            Ok(RefineOutcome::Converged(next)) => {
                // the walk must stay on the critical set and keep moving
                if orbit_distance(action, &next, &current) > 4.0 * cfg.family_tol {
                    return false;
                }
                current = next;
            }
            _ => return false,
        }
    }
    false
}

/// Walks along the Hessian null directions to sample a family loop.
fn sample_family(
    manifold: &dyn Manifold,
    cfg: &SearchConfig,
    start: &Configuration,
) -> Result<Vec<Configuration>, SearchError> {
    let mut samples = Vec::with_capacity(cfg.family_samples);
    let mut current = start.clone();
    let mut previous_direction: Option<DVector<f64>> = None;
    for _ in 0..cfg.family_samples {
        samples.push(current.clone());
        let hessian = current.tangential_hessian(manifold)?;
        let tol = relative_degeneracy_tol(&hessian);
        let eigen = hessian.symmetric_eigen();
        // choose the null direction most aligned with the previous step
        let mut direction: Option<DVector<f64>> = None;
        let mut best_alignment = -1.0;
        for (i, &lambda) in eigen.eigenvalues.iter().enumerate() {
            if lambda.abs() <= tol {
                let candidate = eigen.eigenvectors.column(i).into_owned();
                let alignment = match &previous_direction {
                    Some(prev) => prev.dot(&candidate).abs(),
                    None => 1.0,
                };
                if alignment > best_alignment {
                    best_alignment = alignment;
                    direction = Some(candidate);
                }
            }
        }
        let Some(mut dir) = direction else { break };
        if let Some(prev) = &previous_direction {
            if prev.dot(&dir) < 0.0 {
                dir = -dir;
            }
        }
        let step = dir.scale(cfg.family_tol);
        let Ok(stepped) = apply_step(manifold, &current, &step) else { break };
        match refine(manifold, &stepped, cfg)? {
            RefineOutcome::Converged(next) => {
                previous_direction = Some(dir);
                current = next;
            }
            _ => break,
        }
    }
    Ok(samples)
}

/// Splits refined orbit representatives into isolated trajectories and
/// chained families.
pub fn classify_families(
    manifold: &dyn Manifold,
    cfg: &SearchConfig,
    reports: Vec<CriticalPointReport>,
) -> Result<(Vec<CriticalPointReport>, Vec<FamilyReport>), SearchError> {
    let action = DihedralAction::new(cfg.p);
    let mut isolated = Vec::new();
    let mut degenerate = Vec::new();
    for report in reports {
        if report.is_degenerate() {
            degenerate.push(report);
        } else {
            isolated.push(report);
        }
    }

    // cluster degenerate orbits: members of one family share their length,
    // so chaining is only attempted between length-compatible orbits
    let n = degenerate.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (degenerate[i].length - degenerate[j].length).abs() > 1e-6 {
                continue;
            }
            let d = orbit_distance(&action, &degenerate[i].config, &degenerate[j].config);
            pairs.push((i, j, d));
        }
    }
    pairs.sort_by(|a, b| a.2.total_cmp(&b.2));
    for (i, j, d) in pairs {
        if find(&mut parent, i) == find(&mut parent, j) {
            continue;
        }
        // nearby degenerate orbits merge immediately; farther ones must be
        // connected by an explicit walk along the critical set
        let connected = d <= 2.0 * cfg.family_tol
            || family_walk(manifold, cfg, &action, &degenerate[i].config, &degenerate[j].config);
        if connected {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[rj] = ri;
        }
    }

    let mut families: Vec<FamilyReport> = Vec::new();
    let mut root_to_family: std::collections::HashMap<usize, usize> = Default::default();
    for (i, report) in degenerate.iter().enumerate() {
        let root = find(&mut parent, i);
        match root_to_family.get(&root) {
            Some(&f) => {
                families[f].merged_orbits += 1;
                // keep the lexicographically smallest representative
                if report.length < families[f].representative.length {
                    families[f].representative = report.clone();
                }
            }
            None => {
                root_to_family.insert(root, families.len());
                families.push(FamilyReport {
                    representative: report.clone(),
                    merged_orbits: 1,
                    samples: Vec::new(),
                });
            }
        }
    }
    for family in &mut families {
        family.samples = sample_family(manifold, cfg, &family.representative.config)?;
    }
    families.sort_by(|a, b| a.representative.length.total_cmp(&b.representative.length));
    isolated.sort_by(|a, b| a.length.total_cmp(&b.length));
    Ok((isolated, families))
}

// ---------------------------------------------------------------------------
// the full search
// ---------------------------------------------------------------------------

/// Runs the multistart search and returns one representative per orbit,
/// families included. Deterministic for a fixed config and seed.
pub fn find_trajectories(
    manifold: &dyn Manifold,
    cfg: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    cfg.validate()?;
    let diagonal_tolerance = cfg.resolved_diagonal_tolerance(manifold);
    let action = DihedralAction::new(cfg.p);
    let seeds = seed_configurations(manifold, cfg, diagonal_tolerance)?;
    let starts_attempted = seeds.len();

    let mut converged = Vec::new();
    let mut rejected_diagonal = 0;
    for seed in seeds {
        let Ok(config) = Configuration::new(manifold, seed) else { continue };
        match refine(manifold, &config, cfg)? {
            RefineOutcome::Converged(result) => converged.push(result),
            RefineOutcome::Diagonal => rejected_diagonal += 1,
            RefineOutcome::NotConverged => {}
        }
    }
    let starts_converged = converged.len();

    // canonicalize, sort, deduplicate per dihedral orbit
    let mut canonical: Vec<Configuration> = Vec::with_capacity(converged.len());
    for config in converged {
        let mut cleaned = config;
        for i in 0..cleaned.p() {
            let preferred = manifold.rechart(&cleaned.points()[i].clone())?;
            cleaned.set_point(manifold, i, preferred)?;
        }
        canonical.push(canonical_orbit_representative(&cleaned, &action));
    }
    sort_deterministically(&mut canonical);
    let mut representatives: Vec<Configuration> = Vec::new();
    for config in canonical {
        let duplicate =
            representatives.iter().any(|rep| orbit_distance(&action, rep, &config) < cfg.dedup_tol);
        if !duplicate {
            representatives.push(config);
        }
    }

    // re-verify every representative independently from its stored points
    let mut reports = Vec::with_capacity(representatives.len());
    for rep in representatives {
        let fresh = Configuration::new(manifold, rep.points().to_vec())?;
        let residual = fresh.billiard_residual(manifold)?;
        if residual >= cfg.newton_tol {
            continue;
        }
        reports.push(classify(manifold, fresh)?);
    }

    let (trajectories, families) = classify_families(manifold, cfg, reports)?;
    Ok(SearchReport {
        trajectories,
        families,
        rejected_diagonal,
        starts_converged,
        starts_attempted,
    })
}
