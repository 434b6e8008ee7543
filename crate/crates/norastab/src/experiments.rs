//! Experiment drivers: one function per figure-style study, with seeded
//! determinism, CSV/JSON outputs, and self-contained SVG plots.
//!
//! Every output embeds the full configuration: CSV files start with a
//! single `# {json}` comment line, JSON sidecars carry the config field.
//! Sample-level parallelism uses one derived RNG stream per sample index,
//! and aggregation is order-preserving, so outputs are byte-identical for a
//! fixed (config, seed) under any thread count.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{
    self, monte_carlo_distance, singleton_bound, weight_histogram_by_layer, AnalysisError,
    DistanceEstimate,
};
use crate::nora::{encode_with_reference, NoraError, NoraMode, NoraParams};
use crate::svg::{line_plot, PlotSpec, Series};
use crate::thermo::{
    entropy_continuum, gibbs_entropy_exact, heat_capacity, ThermoError, ThermoParams,
};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Nora(#[from] NoraError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Thermo(#[from] ThermoError),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Thermodynamics sweep: parameters plus a log-spaced temperature grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoGrid {
    pub params: ThermoParams,
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
}

impl Default for ThermoGrid {
    fn default() -> Self {
        Self {
            params: ThermoParams::new(2, 1, 20, 2, 1.0, 0.4, 1.0).expect("valid defaults"),
            t_min: 1e-6,
            t_max: 1e-3,
            points: 61,
        }
    }
}

/// Full configuration for the experiment runner. The `nora` block follows
/// the schema {d, q, r, D, mode: {fixed: {k, L}} | {syk: {a, b}}, seed};
/// `nora.seed` doubles as the master seed all per-sample streams derive
/// from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub nora: NoraParams,
    /// Independent encoder samples (seeds) per data point.
    pub samples: usize,
    /// Regions drawn per size inside one distance sweep.
    pub distance_samples: u64,
    pub out: PathBuf,
    pub plot: bool,
    /// Depth values for distance-vs-depth and weights.
    pub depths: Vec<usize>,
    /// Layer counts L (fixed mode) or `a` values (syk mode) for
    /// distance-scaling.
    pub scaling: Vec<u32>,
    pub k_min: u64,
    pub k_max: u64,
    /// Fixed register size for the growth experiment.
    pub growth_sites: usize,
    pub growth_steps: usize,
    pub growth_samples: usize,
    pub thermo: ThermoGrid,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            nora: NoraParams {
                d: 3,
                q: 2,
                r: 2,
                depth: 4,
                mode: NoraMode::Fixed { k: 2, layers: 7 },
                seed: 7,
            },
            samples: 100,
            distance_samples: 1,
            out: PathBuf::from("out"),
            plot: true,
            depths: vec![1, 2, 3, 4],
            scaling: vec![3, 4, 5, 6, 7],
            k_min: 1,
            k_max: 8,
            growth_sites: 128,
            growth_steps: 30,
            growth_samples: 500,
            thermo: ThermoGrid::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, ExperimentError> {
        let text = fs::read_to_string(path).map_err(|source| ExperimentError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let cfg: Self = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        self.nora
            .validate()
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        if self.samples == 0 {
            return Err(ExperimentError::Config("samples must be >= 1".to_string()));
        }
        if self.distance_samples == 0 {
            return Err(ExperimentError::Config(
                "distance_samples must be >= 1".to_string(),
            ));
        }
        if self.k_min == 0 || self.k_min > self.k_max {
            return Err(ExperimentError::Config(
                "need 1 <= k_min <= k_max".to_string(),
            ));
        }
        self.thermo
            .params
            .validate()
            .map_err(|e| ExperimentError::Config(e.to_string()))?;
        Ok(())
    }

    fn config_line(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// splitmix64, used to derive independent per-sample seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, tags: &[u64]) -> u64 {
    let mut state = splitmix64(master ^ 0xA076_1D64_78BD_642F);
    for &t in tags {
        state = splitmix64(state ^ t.wrapping_mul(0xE703_7ED1_A0B4_28DB));
    }
    state
}

const TAG_DEPTH: u64 = 0x01;
const TAG_SCALING: u64 = 0x02;
const TAG_K: u64 = 0x03;
const TAG_WEIGHTS: u64 = 0x04;
const TAG_GROWTH: u64 = 0x05;

/// Files written by one experiment.
#[derive(Debug, Clone)]
pub struct Outputs {
    pub csv: PathBuf,
    pub json: PathBuf,
    pub svg: Option<PathBuf>,
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExperimentError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| ExperimentError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    let mut f = fs::File::create(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    f.write_all(contents.as_bytes())
        .map_err(|source| ExperimentError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn write_csv(
    cfg: &ExperimentConfig,
    path: &Path,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<(), ExperimentError> {
    let mut text = format!("# {}\n{}\n", cfg.config_line(), header.join(","));
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    write_file(path, &text)
}

fn fmt(x: f64) -> String {
    format!("{x}")
}

/// Mean and error on the mean (sample standard deviation over √n).
pub fn mean_sem(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Least-squares slope of y against x.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let cov = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
    let var = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>();
    cov / var
}

/// Distance runs for one parameter point: `samples` independent encoders,
/// each measured once, in parallel over derived streams.
fn distance_point(
    base: &NoraParams,
    cfg: &ExperimentConfig,
    tags: &[u64],
) -> Result<Vec<DistanceEstimate>, ExperimentError> {
    let master = cfg.nora.seed;
    (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut params = *base;
            let mut t = tags.to_vec();
            t.push(i as u64);
            t.push(0);
            params.seed = derive_seed(master, &t);
            let state = encode_with_reference(&params)?;
            *t.last_mut().expect("nonempty") = 1;
            let est =
                monte_carlo_distance(&state, cfg.distance_samples, None, derive_seed(master, &t))?;
            Ok(est)
        })
        .collect()
}

/// Summary of one point of a distance experiment.
#[derive(Debug, Clone, Serialize)]
pub struct DistancePoint {
    pub label: u64,
    pub n_physical: u64,
    pub mean_delta: f64,
    pub sem_delta: f64,
    pub singleton: u64,
    pub runs: usize,
    pub no_violation_runs: usize,
    pub deltas: Vec<Option<u64>>,
}

fn summarize_point(
    label: u64,
    n_physical: u64,
    k: u64,
    estimates: Vec<DistanceEstimate>,
) -> DistancePoint {
    let found: Vec<f64> = estimates
        .iter()
        .filter_map(|e| e.delta.map(|d| d as f64))
        .collect();
    let (mean, sem) = mean_sem(&found);
    DistancePoint {
        label,
        n_physical,
        mean_delta: mean,
        sem_delta: sem,
        singleton: singleton_bound(n_physical, k),
        runs: estimates.len(),
        no_violation_runs: estimates.iter().filter(|e| !e.found()).count(),
        deltas: estimates.iter().map(|e| e.delta).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceVsDepthResult {
    pub points: Vec<DistancePoint>,
}

pub fn run_distance_vs_depth(
    cfg: &ExperimentConfig,
) -> Result<DistanceVsDepthResult, ExperimentError> {
    cfg.validate()?;
    let n = cfg.nora.total_sites()?;
    let k = cfg.nora.k();
    let mut points = Vec::new();
    for &depth in &cfg.depths {
        let mut base = cfg.nora;
        base.depth = depth;
        let estimates = distance_point(&base, cfg, &[TAG_DEPTH, depth as u64])?;
        points.push(summarize_point(depth as u64, n, k, estimates));
    }
    Ok(DistanceVsDepthResult { points })
}

pub fn cmd_distance_vs_depth(cfg: &ExperimentConfig) -> Result<Outputs, ExperimentError> {
    let result = run_distance_vs_depth(cfg)?;
    let rows: Vec<Vec<String>> = result
        .points
        .iter()
        .map(|p| {
            vec![
                p.label.to_string(),
                fmt(p.mean_delta),
                fmt(p.sem_delta),
                p.singleton.to_string(),
            ]
        })
        .collect();
    let csv = cfg.out.join("distance_vs_depth.csv");
    write_csv(
        cfg,
        &csv,
        &["D", "mean_delta", "sem_delta", "singleton_bound"],
        &rows,
    )?;
    let json = cfg.out.join("distance_vs_depth.json");
    write_file(
        &json,
        &serde_json::to_string_pretty(&serde_json::json!({
            "config": cfg,
            "points": result.points,
        }))?,
    )?;
    let svg = if cfg.plot {
        let series = vec![
            Series {
                label: "mean distance".to_string(),
                points: result
                    .points
                    .iter()
                    .map(|p| (p.label as f64, p.mean_delta))
                    .collect(),
                y_err: Some(result.points.iter().map(|p| p.sem_delta).collect()),
            },
            Series {
                label: "singleton bound".to_string(),
                points: result
                    .points
                    .iter()
                    .map(|p| (p.label as f64, p.singleton as f64))
                    .collect(),
                y_err: None,
            },
        ];
        let path = cfg.out.join("distance_vs_depth.svg");
        write_file(
            &path,
            &line_plot(
                &PlotSpec {
                    title: "Code distance vs circuit depth".to_string(),
                    x_label: "D".to_string(),
                    y_label: "distance".to_string(),
                    log_x: false,
                    log_y: false,
                },
                &series,
            ),
        )?;
        Some(path)
    } else {
        None
    };
    Ok(Outputs { csv, json, svg })
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceScalingResult {
    pub points: Vec<DistancePoint>,
}

pub fn run_distance_scaling(
    cfg: &ExperimentConfig,
) -> Result<DistanceScalingResult, ExperimentError> {
    cfg.validate()?;
    let mut points = Vec::new();
    for &step in &cfg.scaling {
        let mut base = cfg.nora;
        base.mode = match cfg.nora.mode {
            NoraMode::Fixed { k, .. } => NoraMode::Fixed { k, layers: step },
            NoraMode::Syk { b, .. } => NoraMode::Syk { a: step, b },
        };
        let n = base.total_sites()?;
        let estimates = distance_point(&base, cfg, &[TAG_SCALING, step as u64])?;
        points.push(summarize_point(step as u64, n, base.k(), estimates));
    }
    Ok(DistanceScalingResult { points })
}

pub fn cmd_distance_scaling(cfg: &ExperimentConfig) -> Result<Outputs, ExperimentError> {
    let result = run_distance_scaling(cfg)?;
    let rows: Vec<Vec<String>> = result
        .points
        .iter()
        .map(|p| {
            let n = p.n_physical as f64;
            vec![
                p.n_physical.to_string(),
                fmt(1.0 / n),
                fmt(p.mean_delta / n),
                fmt(p.sem_delta / n),
                fmt(p.singleton as f64 / n),
            ]
        })
        .collect();
    let csv = cfg.out.join("distance_scaling.csv");
    write_csv(
        cfg,
        &csv,
        &["N", "inv_N", "mean_rel_delta", "sem", "rel_singleton"],
        &rows,
    )?;
    let json = cfg.out.join("distance_scaling.json");
    write_file(
        &json,
        &serde_json::to_string_pretty(&serde_json::json!({
            "config": cfg,
            "points": result.points,
        }))?,
    )?;
    let svg = if cfg.plot {
        let series = vec![
            Series {
                label: "relative distance".to_string(),
                points: result
                    .points
                    .iter()
                    .map(|p| (1.0 / p.n_physical as f64, p.mean_delta / p.n_physical as f64))
                    .collect(),
                y_err: Some(
                    result
                        .points
                        .iter()
                        .map(|p| p.sem_delta / p.n_physical as f64)
                        .collect(),
                ),
            },
            Series {
                label: "relative singleton".to_string(),
                points: result
                    .points
                    .iter()
                    .map(|p| {
                        (
                            1.0 / p.n_physical as f64,
                            p.singleton as f64 / p.n_physical as f64,
                        )
                    })
                    .collect(),
                y_err: None,
            },
        ];
        let path = cfg.out.join("distance_scaling.svg");
        write_file(
            &path,
            &line_plot(
                &PlotSpec {
                    title: "Relative distance vs inverse size".to_string(),
                    x_label: "1/N".to_string(),
                    y_label: "delta / N".to_string(),
                    log_x: false,
                    log_y: false,
                },
                &series,
            ),
        )?;
        Some(path)
    } else {
        None
    };
    Ok(Outputs { csv, json, svg })
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceVsKResult {
    pub points: Vec<DistancePoint>,
    pub slope: f64,
}

pub fn run_distance_vs_k(cfg: &ExperimentConfig) -> Result<DistanceVsKResult, ExperimentError> {
    cfg.validate()?;
    let NoraMode::Fixed { layers, .. } = cfg.nora.mode else {
        return Err(ExperimentError::Config(
            "distance-vs-k requires fixed mode".to_string(),
        ));
    };
    let mut points = Vec::new();
    for k in cfg.k_min..=cfg.k_max {
        let mut base = cfg.nora;
        base.mode = NoraMode::Fixed { k, layers };
        let n = base.total_sites()?;
        let estimates = distance_point(&base, cfg, &[TAG_K, k])?;
        points.push(summarize_point(k, n, k, estimates));
    }
    let slope = least_squares_slope(
        &points
            .iter()
            .map(|p| (p.label as f64, p.mean_delta))
            .collect::<Vec<_>>(),
    );
    Ok(DistanceVsKResult { points, slope })
}

pub fn cmd_distance_vs_k(cfg: &ExperimentConfig) -> Result<Outputs, ExperimentError> {
    let result = run_distance_vs_k(cfg)?;
    let rows: Vec<Vec<String>> = result
        .points
        .iter()
        .map(|p| vec![p.label.to_string(), fmt(p.mean_delta), fmt(p.sem_delta)])
        .collect();
    let csv = cfg.out.join("distance_vs_k.csv");
    write_csv(cfg, &csv, &["k", "mean_delta", "sem"], &rows)?;
    let json = cfg.out.join("distance_vs_k.json");
    write_file(
        &json,
        &serde_json::to_string_pretty(&serde_json::json!({
            "config": cfg,
            "slope": result.slope,
            "points": result.points,
        }))?,
    )?;
    let svg = if cfg.plot {
        let path = cfg.out.join("distance_vs_k.svg");
        write_file(
            &path,
            &line_plot(
                &PlotSpec {
                    title: "Code distance vs logical qudits".to_string(),
                    x_label: "k".to_string(),
                    y_label: "distance".to_string(),
                    log_x: false,
                    log_y: false,
                },
                &[Series {
                    label: "mean distance".to_string(),
                    points: result
                        .points
                        .iter()
                        .map(|p| (p.label as f64, p.mean_delta))
                        .collect(),
                    y_err: Some(result.points.iter().map(|p| p.sem_delta).collect()),
                }],
            ),
        )?;
        Some(path)
    } else {
        None
    };
    Ok(Outputs { csv, json, svg })
}

/// One long-format weight row.
#[derive(Debug, Clone, Serialize)]
pub struct WeightRow {
    pub layer_or_a: u64,
    pub depth: usize,
    pub weight: usize,
    pub rel_weight: f64,
    pub w_max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightsResult {
    pub rows: Vec<WeightRow>,
}

pub fn run_weights(cfg: &ExperimentConfig) -> Result<WeightsResult, ExperimentError> {
    cfg.validate()?;
    let master = cfg.nora.seed;
    let mut rows = Vec::new();
    for &depth in &cfg.depths {
        let per_sample: Vec<Vec<WeightRow>> = (0..cfg.samples)
            .into_par_iter()
            .map(|i| -> Result<Vec<WeightRow>, ExperimentError> {
                let mut sample_rows = Vec::new();
                match cfg.nora.mode {
                    NoraMode::Fixed { .. } => {
                        let mut params = cfg.nora;
                        params.depth = depth;
                        params.seed =
                            derive_seed(master, &[TAG_WEIGHTS, depth as u64, i as u64]);
                        let records = weight_histogram_by_layer(&params)?;
                        for rec in &records {
                            for &w in &rec.weights {
                                sample_rows.push(WeightRow {
                                    layer_or_a: rec.layer as u64,
                                    depth,
                                    weight: w,
                                    rel_weight: w as f64 / rec.w_max,
                                    w_max: rec.w_max,
                                });
                            }
                        }
                    }
                    NoraMode::Syk { b, .. } => {
                        for &a in &cfg.scaling {
                            let mut params = cfg.nora;
                            params.depth = depth;
                            params.mode = NoraMode::Syk { a, b };
                            params.seed = derive_seed(
                                master,
                                &[TAG_WEIGHTS, depth as u64, a as u64, i as u64],
                            );
                            let records = weight_histogram_by_layer(&params)?;
                            let last = records.last().expect("at least layer 0");
                            for &w in &last.weights {
                                sample_rows.push(WeightRow {
                                    layer_or_a: a as u64,
                                    depth,
                                    weight: w,
                                    rel_weight: w as f64 / last.w_max,
                                    w_max: last.w_max,
                                });
                            }
                        }
                    }
                }
                Ok(sample_rows)
            })
            .collect::<Result<_, _>>()?;
        rows.extend(per_sample.into_iter().flatten());
    }
    Ok(WeightsResult { rows })
}

pub fn cmd_weights(cfg: &ExperimentConfig) -> Result<Outputs, ExperimentError> {
    let result = run_weights(cfg)?;
    let rows: Vec<Vec<String>> = result
        .rows
        .iter()
        .map(|r| {
            vec![
                r.layer_or_a.to_string(),
                r.depth.to_string(),
                r.weight.to_string(),
                fmt(r.rel_weight),
                fmt(r.w_max),
            ]
        })
        .collect();
    let csv = cfg.out.join("weights.csv");
    write_csv(
        cfg,
        &csv,
        &["layer_or_a", "D", "weight", "rel_weight", "w_max"],
        &rows,
    )?;
    // Mean relative weight per (layer, depth) for the sidecar and plot.
    let mut grouped: std::collections::BTreeMap<(u64, usize), (f64, usize)> =
        std::collections::BTreeMap::new();
    for r in &result.rows {
        let e = grouped.entry((r.layer_or_a, r.depth)).or_insert((0.0, 0));
        e.0 += r.rel_weight;
        e.1 += 1;
    }
    let means: Vec<(u64, usize, f64)> = grouped
        .iter()
        .map(|(&(l, d), &(sum, n))| (l, d, sum / n as f64))
        .collect();
    let json = cfg.out.join("weights.json");
    write_file(
        &json,
        &serde_json::to_string_pretty(&serde_json::json!({
            "config": cfg,
            "mean_rel_weight": means
                .iter()
                .map(|(l, d, m)| serde_json::json!({"layer_or_a": l, "D": d, "mean": m}))
                .collect::<Vec<_>>(),
        }))?,
    )?;
    let svg = if cfg.plot {
        let series: Vec<Series> = cfg
            .depths
            .iter()
            .map(|&d| Series {
                label: format!("D={d}"),
                points: means
                    .iter()
                    .filter(|&&(_, dd, _)| dd == d)
                    .map(|&(l, _, m)| (l as f64, m))
                    .collect(),
                y_err: None,
            })
            .collect();
        let path = cfg.out.join("weights.svg");
        write_file(
            &path,
            &line_plot(
                &PlotSpec {
                    title: "Mean relative stabilizer weight".to_string(),
                    x_label: "layer (or a)".to_string(),
                    y_label: "weight / w_max".to_string(),
                    log_x: false,
                    log_y: false,
                },
                &series,
            ),
        )?;
        Some(path)
    } else {
        None
    };
    Ok(Outputs { csv, json, svg })
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthResult {
    pub mean_weights: Vec<f64>,
    pub sems: Vec<f64>,
    pub predicted_g: f64,
    pub d_max_g: f64,
    pub d_max_q: f64,
}

pub fn run_growth(cfg: &ExperimentConfig) -> Result<GrowthResult, ExperimentError> {
    cfg.validate()?;
    let n = cfg.growth_sites;
    let steps = cfg.growth_steps;
    let master = cfg.nora.seed;
    let trajectories: Vec<Vec<usize>> = (0..cfg.growth_samples)
        .into_par_iter()
        .map(|i| {
            analysis::scrambling_weight_trajectory(
                n,
                cfg.nora.d,
                cfg.nora.q,
                steps,
                derive_seed(master, &[TAG_GROWTH, i as u64]),
            )
        })
        .collect::<Result<_, _>>()?;
    let mut mean_weights = Vec::with_capacity(steps);
    let mut sems = Vec::with_capacity(steps);
    for t in 0..steps {
        let values: Vec<f64> = trajectories.iter().map(|w| w[t] as f64).collect();
        let (m, s) = mean_sem(&values);
        mean_weights.push(m);
        sems.push(s);
    }
    let formulas = analysis::growth_formulas(cfg.nora.d, cfg.nora.q, cfg.nora.r, n as u64, 1);
    Ok(GrowthResult {
        mean_weights,
        sems,
        predicted_g: formulas.g,
        d_max_g: formulas.d_max,
        d_max_q: (n as f64).ln() / (cfg.nora.q as f64).ln(),
    })
}

pub fn cmd_growth(cfg: &ExperimentConfig) -> Result<Outputs, ExperimentError> {
    let result = run_growth(cfg)?;
    let rows: Vec<Vec<String>> = result
        .mean_weights
        .iter()
        .zip(&result.sems)
        .enumerate()
        .map(|(i, (m, s))| {
            vec![
                (i + 1).to_string(),
                fmt(*m),
                fmt(*s),
                fmt(result.predicted_g),
                fmt(result.d_max_g),
                fmt(result.d_max_q),
            ]
        })
        .collect();
    let csv = cfg.out.join("growth.csv");
    write_csv(
        cfg,
        &csv,
        &[
            "step",
            "mean_weight",
            "sem",
            "predicted_g",
            "D_max_g",
            "D_max_q",
        ],
        &rows,
    )?;
    let json = cfg.out.join("growth.json");
    write_file(
        &json,
        &serde_json::to_string_pretty(&serde_json::json!({
            "config": cfg,
            "result": result,
        }))?,
    )?;
    let svg = if cfg.plot {
        let plateau = cfg.growth_sites as f64 * analysis::scrambled_site_fraction(cfg.nora.d);
        let path = cfg.out.join("growth.svg");
        write_file(
            &path,
            &line_plot(
                &PlotSpec {
                    title: "Operator weight under random sub-layers".to_string(),
                    x_label: "sub-layer".to_string(),
                    y_label: "mean weight".to_string(),
                    log_x: false,
                    log_y: true,
                },
                &[
                    Series {
                        label: "mean weight".to_string(),
                        points: result
                            .mean_weights
                            .iter()
                            .enumerate()
                            .map(|(i, &m)| ((i + 1) as f64, m))
                            .collect(),
                        y_err: Some(result.sems.clone()),
                    },
                    Series {
                        label: "equilibrium (d^2-1)/d^2 n".to_string(),
                        points: (1..=cfg.growth_steps)
                            .map(|i| (i as f64, plateau))
                            .collect(),
                        y_err: None,
                    },
                ],
            ),
        )?;
        Some(path)
    } else {
        None
    };
    Ok(Outputs { csv, json, svg })
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyRow {
    pub t: f64,
    pub s_exact: f64,
    pub s_integral: f64,
    pub s_gamma_bound: f64,
    pub c_v: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyResult {
    pub rows: Vec<EntropyRow>,
}

pub fn run_entropy(cfg: &ExperimentConfig) -> Result<EntropyResult, ExperimentError> {
    cfg.validate()?;
    let grid = &cfg.thermo;
    if grid.points < 2 || grid.t_min <= 0.0 || grid.t_max <= grid.t_min {
        return Err(ExperimentError::Config(
            "thermo grid needs points >= 2 and 0 < t_min < t_max".to_string(),
        ));
    }
    let rows = (0..grid.points)
        .map(|i| {
            let f = i as f64 / (grid.points - 1) as f64;
            let t = grid.t_min * (grid.t_max / grid.t_min).powf(f);
            let p = grid.params.with_temperature(t);
            let cont = entropy_continuum(&p);
            EntropyRow {
                t,
                s_exact: gibbs_entropy_exact(&p),
                s_integral: cont.integral_form,
                s_gamma_bound: cont.gamma_bound,
                c_v: heat_capacity(&p),
            }
        })
        .collect();
    Ok(EntropyResult { rows })
}

pub fn cmd_entropy(cfg: &ExperimentConfig) -> Result<Outputs, ExperimentError> {
    let result = run_entropy(cfg)?;
    let rows: Vec<Vec<String>> = result
        .rows
        .iter()
        .map(|r| {
            vec![
                fmt(r.t),
                fmt(r.s_exact),
                fmt(r.s_integral),
                fmt(r.s_gamma_bound),
                fmt(r.c_v),
            ]
        })
        .collect();
    let csv = cfg.out.join("entropy.csv");
    write_csv(
        cfg,
        &csv,
        &["T", "S_exact", "S_integral", "S_gamma_bound", "C_V"],
        &rows,
    )?;
    let json = cfg.out.join("entropy.json");
    write_file(
        &json,
        &serde_json::to_string_pretty(&serde_json::json!({
            "config": cfg,
            "rows": result.rows,
        }))?,
    )?;
    let svg = if cfg.plot {
        let path = cfg.out.join("entropy.svg");
        let mk = |label: &str, f: &dyn Fn(&EntropyRow) -> f64| Series {
            label: label.to_string(),
            points: result.rows.iter().map(|r| (r.t, f(r))).collect(),
            y_err: None,
        };
        write_file(
            &path,
            &line_plot(
                &PlotSpec {
                    title: "Gibbs entropy vs temperature".to_string(),
                    x_label: "T / Lambda".to_string(),
                    y_label: "S".to_string(),
                    log_x: true,
                    log_y: true,
                },
                &[
                    mk("exact", &|r| r.s_exact),
                    mk("continuum integral", &|r| r.s_integral),
                    mk("gamma bound", &|r| r.s_gamma_bound),
                ],
            ),
        )?;
        Some(path)
    } else {
        None
    };
    Ok(Outputs { csv, json, svg })
}
