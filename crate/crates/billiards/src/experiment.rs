//! Experiment orchestration: config ingestion, execution of searches and
//! bound calculators, and count-versus-bound cross-validation.
//!
//! An experiment is described by a TOML config and produces a single
//! self-describing JSON result record plus optional plot files.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{sphere_triple_homology, torus_betti_profile, vnp_betti_sum, CatalogError};
use crate::homology::{
    cubic_bound, morse_lower_bound, smith_pipeline_bound, BettiProfile, HomologyError,
};
use crate::manifold::{ChartPoint, ManifoldError, ManifoldKind};
use crate::search::{find_trajectories, SearchConfig, SearchError, SearchReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config error: {0}")]
    Config(String),
    #[error("config parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("bound '{bound}' is incompatible with this experiment: {reason}")]
    IncompatibleBound { bound: String, reason: String },
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("io error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("result serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

/// The topological lower bounds an experiment can request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Morse inequality over the appropriate quotient complex
    Morse,
    /// torus cell components: `p - 1` trajectories in a closed curve
    Torus,
    /// the explicit sphere-triple complex: 4 triangular trajectories
    S2Complex,
    /// perturbed round spheres: `n(p-1)` via the star-manifold homology
    Schubert,
    /// the closed-form `B(B-1)(B-2)/6` estimate for p = 3
    Cubic,
    /// the profile-level transfer pipeline behind the cubic bound
    Smith,
}

impl BoundKind {
    pub fn name(&self) -> &'static str {
        match self {
            BoundKind::Morse => "morse",
            BoundKind::Torus => "torus",
            BoundKind::S2Complex => "s2_complex",
            BoundKind::Schubert => "schubert",
            BoundKind::Cubic => "cubic",
            BoundKind::Smith => "smith",
        }
    }
}

impl std::str::FromStr for BoundKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "morse" => Ok(BoundKind::Morse),
            "torus" => Ok(BoundKind::Torus),
            "s2_complex" => Ok(BoundKind::S2Complex),
            "schubert" => Ok(BoundKind::Schubert),
            "cubic" => Ok(BoundKind::Cubic),
            "smith" => Ok(BoundKind::Smith),
            other => Err(format!(
                "unknown bound '{other}' (expected morse|torus|s2_complex|schubert|cubic|smith)"
            )),
        }
    }
}

/// Search settings as they appear in the config file; unset fields take
/// the library defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub p: usize,
    pub starts: Option<usize>,
    pub seed: Option<u64>,
    pub descent_tol: Option<f64>,
    pub newton_tol: Option<f64>,
    pub diagonal_tolerance: Option<f64>,
    pub max_iters: Option<usize>,
    pub dedup_tol: Option<f64>,
    pub family_tol: Option<f64>,
    pub family_samples: Option<usize>,
}

impl SearchSection {
    pub fn to_config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::new(self.p);
        if let Some(v) = self.starts {
            cfg.starts = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.descent_tol {
            cfg.descent_tol = v;
        }
        if let Some(v) = self.newton_tol {
            cfg.newton_tol = v;
        }
        if self.diagonal_tolerance.is_some() {
            cfg.diagonal_tolerance = self.diagonal_tolerance;
        }
        if let Some(v) = self.max_iters {
            cfg.max_iters = v;
        }
        if let Some(v) = self.dedup_tol {
            cfg.dedup_tol = v;
        }
        if let Some(v) = self.family_tol {
            cfg.family_tol = v;
        }
        if let Some(v) = self.family_samples {
            cfg.family_samples = v;
        }
        cfg
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct BoundsSection {
    #[serde(default)]
    pub requested: Vec<BoundKind>,
    /// period for bounds-only runs (otherwise taken from the search)
    pub p: Option<usize>,
    /// explicit `B = Σ dim H_q(M; Z_3)` for the cubic bound
    pub betti_total: Option<i64>,
    /// explicit per-degree profile for the transfer pipeline
    pub betti_profile: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    /// result record only
    #[default]
    JsonLike,
    /// record + vertex CSV
    Csv,
    /// record + CSV + SVG overlay (planar manifolds only)
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "json-like" | "json" => Ok(OutputFormat::JsonLike),
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown format '{other}' (expected csv|svg|json-like)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

/// A full experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(default = "default_schema")]
    pub schema: u32,
    pub manifold: Option<ManifoldKind>,
    pub search: Option<SearchSection>,
    #[serde(default)]
    pub bounds: BoundsSection,
    #[serde(default)]
    pub output: OutputSection,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

impl ExperimentSpec {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        let spec = Self::parse_toml(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Parses without validating, so callers can apply overrides first.
    pub fn parse_toml(text: &str) -> Result<Self, ExperimentError> {
        Ok(toml::from_str(text)?)
    }

    pub fn effective_p(&self) -> Option<usize> {
        self.search.as_ref().map(|s| s.p).or(self.bounds.p)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.schema != SCHEMA_VERSION {
            return Err(ExperimentError::Config(format!(
                "unsupported schema version {} (this build writes {SCHEMA_VERSION})",
                self.schema
            )));
        }
        if self.search.is_some() && self.manifold.is_none() {
            return Err(ExperimentError::Config(
                "a [search] section needs a [manifold] section".into(),
            ));
        }
        if self.search.is_none() && self.bounds.requested.is_empty() {
            return Err(ExperimentError::Config(
                "nothing to do: no search and no requested bounds".into(),
            ));
        }
        for &bound in &self.bounds.requested {
            self.check_bound_compatible(bound)?;
        }
        Ok(())
    }

    fn incompatible(&self, bound: BoundKind, reason: &str) -> ExperimentError {
        ExperimentError::IncompatibleBound { bound: bound.name().into(), reason: reason.into() }
    }

    fn check_bound_compatible(&self, bound: BoundKind) -> Result<(), ExperimentError> {
        let p = self.effective_p();
        let dim = self.manifold.as_ref().map(|m| m.intrinsic_dim());
        let sphere_like = self.manifold.as_ref().is_some_and(ManifoldKind::is_sphere_like);
        match bound {
            BoundKind::Torus => {
                if dim != Some(1) {
                    return Err(self.incompatible(bound, "requires a closed curve (m = 1)"));
                }
                match p {
                    Some(p) if (3..=9).contains(&p) && p % 2 == 1 => Ok(()),
                    _ => Err(self.incompatible(bound, "requires odd p with 3 <= p <= 9")),
                }
            }
            BoundKind::S2Complex => {
                if !sphere_like || dim != Some(2) {
                    return Err(self.incompatible(bound, "requires a 2-sphere-like manifold"));
                }
                if p != Some(3) {
                    return Err(self.incompatible(bound, "is specific to p = 3"));
                }
                Ok(())
            }
            BoundKind::Schubert => {
                if !sphere_like {
                    return Err(self.incompatible(bound, "requires a sphere-like manifold"));
                }
                match p {
                    Some(p) if p >= 3 && p % 2 == 1 => Ok(()),
                    _ => Err(self.incompatible(bound, "requires odd p >= 3")),
                }
            }
            BoundKind::Morse => {
                if dim == Some(1) {
                    self.check_bound_compatible(BoundKind::Torus)
                } else if sphere_like && dim == Some(2) && p == Some(3) {
                    Ok(())
                } else {
                    Err(self.incompatible(
                        bound,
                        "no quotient complex available; use a curve or a 2-sphere with p = 3",
                    ))
                }
            }
            BoundKind::Cubic | BoundKind::Smith => {
                if let Some(p) = p {
                    if p != 3 {
                        return Err(self.incompatible(bound, "is specific to p = 3"));
                    }
                }
                if self.manifold.is_none()
                    && self.bounds.betti_total.is_none()
                    && self.bounds.betti_profile.is_none()
                {
                    return Err(self.incompatible(
                        bound,
                        "needs a manifold or an explicit betti_total/betti_profile",
                    ));
                }
                Ok(())
            }
        }
    }

    fn z3_profile(&self) -> Option<BettiProfile> {
        if let Some(dims) = &self.bounds.betti_profile {
            return Some(BettiProfile::new(3, dims.clone()));
        }
        self.manifold.as_ref().map(|m| m.betti_profile(3))
    }

    /// Evaluates one requested bound.
    pub fn compute_bound(&self, bound: BoundKind) -> Result<i64, ExperimentError> {
        self.check_bound_compatible(bound)?;
        let p = self.effective_p();
        match bound {
            BoundKind::Torus => {
                let profile = torus_betti_profile(p.expect("validated"))?;
                Ok(morse_lower_bound(&profile, 1) as i64)
            }
            BoundKind::S2Complex => {
                let profile = sphere_triple_homology()?;
                Ok(morse_lower_bound(&profile, 1) as i64)
            }
            BoundKind::Schubert => {
                let n = self.manifold.as_ref().expect("validated").intrinsic_dim();
                let p = p.expect("validated");
                // (p-1)/2 critical families, each contributing its total
                // Betti count once the symmetry is perturbed away
                Ok((((p - 1) / 2) * vnp_betti_sum(n)?) as i64)
            }
            BoundKind::Morse => {
                if self.manifold.as_ref().map(|m| m.intrinsic_dim()) == Some(1) {
                    self.compute_bound(BoundKind::Torus)
                } else {
                    self.compute_bound(BoundKind::S2Complex)
                }
            }
            BoundKind::Cubic => {
                let b = match self.bounds.betti_total {
                    Some(b) => b,
                    None => self.z3_profile().expect("validated").total() as i64,
                };
                if b < 0 {
                    return Err(ExperimentError::Config("betti_total must be >= 0".into()));
                }
                Ok(cubic_bound(b))
            }
            BoundKind::Smith => {
                let profile = self
                    .z3_profile()
                    .ok_or_else(|| self.incompatible(bound, "needs a manifold or betti_profile"))?;
                Ok(smith_pipeline_bound(&profile)? as i64)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// result records
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub length: f64,
    pub residual: f64,
    pub morse_index: usize,
    pub null_dim: usize,
    pub rotation_number: Option<usize>,
    /// ambient vertex coordinates, one row per vertex
    pub vertices: Vec<Vec<f64>>,
    pub chart_points: Vec<ChartPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub representative: OrbitRecord,
    pub merged_orbits: usize,
    pub sample_count: usize,
    pub sample_residual_max: f64,
    /// ambient vertices of each sampled configuration
    pub samples: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub bound: BoundKind,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub bound: BoundKind,
    pub value: i64,
    pub isolated_count: usize,
    pub pass: bool,
}

/// The single structured result of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema: u32,
    pub manifold: Option<ManifoldKind>,
    pub p: Option<usize>,
    pub isolated_count: usize,
    pub family_count: usize,
    pub orbits: Vec<OrbitRecord>,
    pub families: Vec<FamilyRecord>,
    pub bounds: Vec<BoundRecord>,
    pub checks: Vec<CheckRecord>,
    pub rejected_diagonal: usize,
    pub starts_converged: usize,
    pub starts_attempted: usize,
}

impl ResultRecord {
    pub fn to_json(&self) -> Result<String, ExperimentError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, ExperimentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn orbit_record(report: &crate::billiard::CriticalPointReport) -> OrbitRecord {
    OrbitRecord {
        length: report.length,
        residual: report.residual_norm,
        morse_index: report.morse_index,
        null_dim: report.null_dim,
        rotation_number: report.rotation_number,
        vertices: report.config.ambient().to_vec(),
        chart_points: report.config.points().to_vec(),
    }
}

/// Converts a search report plus computed bounds into the result record.
pub fn assemble_record(
    spec: &ExperimentSpec,
    search: Option<&SearchReport>,
    manifold: Option<&dyn crate::manifold::Manifold>,
    bounds: &[BoundRecord],
) -> ResultRecord {
    let orbits: Vec<OrbitRecord> =
        search.map(|s| s.trajectories.iter().map(orbit_record).collect()).unwrap_or_default();
    let families: Vec<FamilyRecord> = search
        .map(|s| {
            s.families
                .iter()
                .map(|f| {
                    let sample_residual_max = manifold
                        .map(|m| {
                            f.samples
                                .iter()
                                .filter_map(|c| c.billiard_residual(m).ok())
                                .fold(0.0, f64::max)
                        })
                        .unwrap_or(0.0);
                    FamilyRecord {
                        representative: orbit_record(&f.representative),
                        merged_orbits: f.merged_orbits,
                        sample_count: f.samples.len(),
                        sample_residual_max,
                        samples: f.samples.iter().map(|c| c.ambient().to_vec()).collect(),
                    }
                })
                .collect()
        })
        .unwrap_or_default();
    let isolated_count = orbits.len();
    let checks: Vec<CheckRecord> = if search.is_some() {
        bounds
            .iter()
            .map(|b| CheckRecord {
                bound: b.bound,
                value: b.value,
                isolated_count,
                pass: (isolated_count as i64) >= b.value,
            })
            .collect()
    } else {
        Vec::new()
    };
    ResultRecord {
        schema: SCHEMA_VERSION,
        manifold: spec.manifold.clone(),
        p: spec.effective_p(),
        isolated_count,
        family_count: families.len(),
        orbits,
        families,
        bounds: bounds.to_vec(),
        checks,
        rejected_diagonal: search.map(|s| s.rejected_diagonal).unwrap_or(0),
        starts_converged: search.map(|s| s.starts_converged).unwrap_or(0),
        starts_attempted: search.map(|s| s.starts_attempted).unwrap_or(0),
    }
}

/// Executes the experiment: search (when configured), bounds, checks, and
/// file outputs. Returns the record; the caller maps `all_checks_pass`
/// onto its exit code.
pub fn run(spec: &ExperimentSpec) -> Result<ResultRecord, ExperimentError> {
    spec.validate()?;
    let manifold = spec.manifold.as_ref().map(|kind| kind.build()).transpose()?;
    let search_report = match (&spec.search, &manifold) {
        (Some(section), Some(manifold)) => {
            Some(find_trajectories(manifold.as_ref(), &section.to_config())?)
        }
        _ => None,
    };
    let mut bounds = Vec::new();
    for &kind in &spec.bounds.requested {
        bounds.push(BoundRecord { bound: kind, value: spec.compute_bound(kind)? });
    }
    let record = assemble_record(spec, search_report.as_ref(), manifold.as_deref(), &bounds);
    if let Some(dir) = &spec.output.dir {
        write_outputs(&record, spec, dir)?;
    }
    Ok(record)
}

/// Writes `result.json` and any plot files the format requests.
pub fn write_outputs(
    record: &ResultRecord,
    spec: &ExperimentSpec,
    dir: &Path,
) -> Result<Vec<PathBuf>, ExperimentError> {
    std::fs::create_dir_all(dir)
        .map_err(|source| ExperimentError::Io { path: dir.to_path_buf(), source })?;
    let mut written = Vec::new();
    let result_path = dir.join("result.json");
    std::fs::write(&result_path, record.to_json()?)
        .map_err(|source| ExperimentError::Io { path: result_path.clone(), source })?;
    written.push(result_path);
    match spec.output.format {
        OutputFormat::JsonLike => {}
        OutputFormat::Csv => {
            written.extend(crate::plot::emit_plot_data(record, dir, false)?);
        }
        OutputFormat::Svg => {
            written.extend(crate::plot::emit_plot_data(record, dir, true)?);
        }
    }
    Ok(written)
}
