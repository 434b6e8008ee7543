//! Code-property measurement: decoupling distance (exhaustive and Monte
//! Carlo), stabilizer-weight histograms, operator growth, growth-factor
//! formulas, and RREF weight reduction.
//!
//! Distance follows the decoupling picture: with the logical qudits
//! maximally entangled to a reference R, the code distance δ is the size of
//! the smallest physical region A with I(A, R) > 0. Exhaustive enumeration
//! is exact but exponential; random region sampling sweeps sizes upward and
//! early-exits at the first violation, giving an upper-bound estimator δ̂.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{mod_add, mod_mul, FieldMatrix};
use crate::nora::{
    build_layer, encode_with_reference_observed, gate_count, EncodedState, NoraError, NoraMode,
    NoraParams,
};
use crate::stab::{DecouplingProbe, StabError, StabilizerTableau};
use crate::weyl::symplectic_product_raw;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("exhaustive distance is limited to N <= {1}, got N = {0}")]
    TooLargeForExhaustive(usize, usize),
    #[error("operation requires SykScaling mode")]
    NotSykMode,
    #[error(transparent)]
    Nora(#[from] NoraError),
    #[error(transparent)]
    Stab(#[from] StabError),
}

/// Quantum singleton bound δ_qsb = ⌊(N - k)/2⌋ + 1.
pub fn singleton_bound(n_phys: u64, k: u64) -> u64 {
    debug_assert!(n_phys > k);
    (n_phys - k) / 2 + 1
}

/// Per-size tallies from a distance sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SizeTally {
    pub size: u64,
    pub samples: u64,
    pub violations: u64,
    /// Whether every subset of this size was enumerated.
    pub covered: bool,
}

/// Result of a distance measurement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceEstimate {
    /// Smallest region size with nonzero I(A, R); `None` when no violation
    /// was found up to the sweep cap, reported distinctly rather than as a
    /// distance.
    pub delta: Option<u64>,
    pub cap: u64,
    pub samples_per_size: u64,
    pub per_size: Vec<SizeTally>,
    pub is_exhaustive: bool,
    pub seed: u64,
}

impl DistanceEstimate {
    pub fn found(&self) -> bool {
        self.delta.is_some()
    }
}

/// Visit all k-combinations of 0..n in lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial_at_least(n: u64, k: u64, limit: u64) -> bool {
    // Returns true when C(n, k) >= limit, without overflow.
    let k = k.min(n - k);
    let mut acc = 1f64;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
        if acc >= limit as f64 {
            return true;
        }
    }
    acc >= limit as f64
}

/// Exact distance by enumerating regions of ascending size. Guarded to
/// N ≤ 16 physical sites.
pub fn exhaustive_distance(state: &EncodedState) -> Result<DistanceEstimate, AnalysisError> {
    const GUARD: usize = 16;
    let n_phys = state.physical.len();
    if n_phys > GUARD {
        return Err(AnalysisError::TooLargeForExhaustive(n_phys, GUARD));
    }
    let mut probe = DecouplingProbe::new(&state.tableau, &state.reference, &state.physical)?;
    let mut per_size = Vec::new();
    for size in 1..=n_phys {
        let mut samples = 0u64;
        let mut violations = 0u64;
        for_each_combination(n_phys, size, |subset| {
            samples += 1;
            if probe.mutual_information(subset) > 0 {
                violations += 1;
                return false; // existence settled for this size
            }
            true
        });
        per_size.push(SizeTally {
            size: size as u64,
            samples,
            violations,
            covered: true,
        });
        if violations > 0 {
            return Ok(DistanceEstimate {
                delta: Some(size as u64),
                cap: n_phys as u64,
                samples_per_size: 0,
                per_size,
                is_exhaustive: true,
                seed: state.params.seed,
            });
        }
    }
    // With k >= 1 the full physical region always violates, so this is
    // unreachable for valid encoded states; report it honestly anyway.
    Ok(DistanceEstimate {
        delta: None,
        cap: n_phys as u64,
        samples_per_size: 0,
        per_size,
        is_exhaustive: true,
        seed: state.params.seed,
    })
}

/// Upper-bound distance estimate by sampling `samples_per_size` uniform
/// regions per size, sweeping sizes upward with early exit.
///
/// When `samples_per_size` is at least the number of subsets of a size, the
/// sweep enumerates that size completely instead of sampling, so small
/// instances reproduce the exhaustive answer exactly.
pub fn monte_carlo_distance(
    state: &EncodedState,
    samples_per_size: u64,
    cap: Option<u64>,
    seed: u64,
) -> Result<DistanceEstimate, AnalysisError> {
    let n_phys = state.physical.len();
    let default_cap = singleton_bound(n_phys as u64, state.params.k());
    let cap = cap.unwrap_or(default_cap).min(n_phys as u64);
    let mut probe = DecouplingProbe::new(&state.tableau, &state.reference, &state.physical)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_size = Vec::new();
    for size in 1..=cap {
        let covered = !binomial_at_least(n_phys as u64, size, samples_per_size + 1);
        let mut samples = 0u64;
        let mut violations = 0u64;
        if covered {
            for_each_combination(n_phys, size as usize, |subset| {
                samples += 1;
                if probe.mutual_information(subset) > 0 {
                    violations += 1;
                    return false;
                }
                true
            });
        } else {
            for _ in 0..samples_per_size {
                let subset =
                    rand::seq::index::sample(&mut rng, n_phys, size as usize).into_vec();
                samples += 1;
                if probe.mutual_information(&subset) > 0 {
                    violations += 1;
                    break;
                }
            }
        }
        per_size.push(SizeTally {
            size,
            samples,
            violations,
            covered,
        });
        if violations > 0 {
            return Ok(DistanceEstimate {
                delta: Some(size),
                cap,
                samples_per_size,
                per_size,
                is_exhaustive: false,
                seed,
            });
        }
    }
    Ok(DistanceEstimate {
        delta: None,
        cap,
        samples_per_size,
        per_size,
        is_exhaustive: false,
        seed,
    })
}

/// Row weights recorded after each layer of an encoding, together with the
/// expected scrambled maximum w_ℓ^max = (d² - 1)/d² · n_ℓ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LayerWeightRecord {
    pub layer: u32,
    /// Physical sites present at this layer (n_ℓ).
    pub sites: u64,
    /// Full-row weights (reference support included for the Bell rows).
    pub weights: Vec<usize>,
    pub w_max: f64,
    /// Rows present since before layer 1 acted: the 2k Bell rows plus the
    /// Δn₁ first ancillas. These pass through every layer circuit.
    pub core_rows: usize,
}

impl LayerWeightRecord {
    pub fn mean_weight(&self) -> f64 {
        self.weights.iter().sum::<usize>() as f64 / self.weights.len() as f64
    }

    pub fn mean_core_weight(&self) -> f64 {
        let core = &self.weights[..self.core_rows];
        core.iter().sum::<usize>() as f64 / core.len() as f64
    }
}

/// Encode and record row weights after every layer (layer 0 is the
/// pre-encoding tableau of Bell and ancilla rows).
pub fn weight_histogram_by_layer(
    params: &NoraParams,
) -> Result<Vec<LayerWeightRecord>, AnalysisError> {
    let frac = scrambled_site_fraction(params.d);
    let k = params.k();
    let (widths, increments) = params.layer_sizes()?;
    let core_rows = (2 * k + increments.first().copied().unwrap_or(0)) as usize;
    let mut records = Vec::with_capacity(widths.len());
    encode_with_reference_observed(params, |layer, tableau| {
        let sites = widths[layer as usize];
        records.push(LayerWeightRecord {
            layer,
            sites,
            weights: tableau.row_weights(),
            w_max: frac * sites as f64,
            core_rows,
        });
    })?;
    Ok(records)
}

/// Fraction (d² - 1)/d² of sites a fully scrambled string touches.
pub fn scrambled_site_fraction(d: u8) -> f64 {
    let d2 = (d as f64) * (d as f64);
    (d2 - 1.0) / d2
}

/// Weight trajectory of a single Weyl string under repeated random
/// sub-layers on a fixed register of n sites. The string starts as Z on
/// site 0 (weight 1); entry t is its weight after sub-layer t + 1.
pub fn scrambling_weight_trajectory(
    n: usize,
    d: u8,
    q: usize,
    steps: usize,
    seed: u64,
) -> Result<Vec<usize>, AnalysisError> {
    let params = NoraParams {
        d,
        q,
        r: 2,
        depth: 1,
        mode: NoraMode::Fixed { k: 0, layers: 1 },
        seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut components = vec![0u8; 2 * n];
    components[0] = 1;
    let mut weights = Vec::with_capacity(steps);
    for _ in 0..steps {
        let layer = build_layer(n, &params, &mut rng)?;
        apply_layer_to_vector(&layer, &mut components, d);
        weights.push(vector_weight(&components));
    }
    Ok(weights)
}

/// Weight of a single logical-site string after each layer of a growing
/// encoder (the register widens as ancillas arrive).
pub fn nora_weight_trajectory(params: &NoraParams) -> Result<Vec<usize>, AnalysisError> {
    params.validate()?;
    if params.k() == 0 {
        return Err(AnalysisError::Nora(NoraError::NoLogicalQudits));
    }
    let n_phys = params.total_sites()? as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut components = vec![0u8; 2 * n_phys];
    components[0] = 1; // Z on the first logical qudit
    let mut weights = Vec::new();
    for layer in 1..=params.layers() {
        let width = params.layer_width(layer)? as usize;
        let circuit = build_layer(width, params, &mut rng)?;
        apply_layer_to_vector(&circuit, &mut components, params.d);
        weights.push(vector_weight(&components));
    }
    Ok(weights)
}

fn apply_layer_to_vector(layer: &crate::nora::LayerCircuit, components: &mut [u8], d: u8) {
    for sub in &layer.sub_layers {
        for (sites, gate) in &sub.gates {
            let q = sites.len();
            let mut local = vec![0u8; 2 * q];
            for (t, &s) in sites.iter().enumerate() {
                local[2 * t] = components[2 * s];
                local[2 * t + 1] = components[2 * s + 1];
            }
            if local.iter().all(|&x| x == 0) {
                continue;
            }
            let s_small = gate.symplectic();
            for (t, &s) in sites.iter().enumerate() {
                for c in 0..2 {
                    let row = 2 * t + c;
                    let mut acc = 0u32;
                    for (j, &lj) in local.iter().enumerate() {
                        acc += s_small.get(row, j) as u32 * lj as u32;
                    }
                    components[2 * s + c] = (acc % d as u32) as u8;
                }
            }
        }
    }
}

fn vector_weight(components: &[u8]) -> usize {
    components
        .chunks_exact(2)
        .filter(|c| c[0] != 0 || c[1] != 0)
        .count()
}

/// Closed-form growth quantities: the per-sub-layer growth factor
/// g = q(d² - 1)/d², the depth D_max = log_g(n/w₀) at which growth
/// saturates, and the depth D_min = log_g(r) needed to keep up with the
/// register.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GrowthFormulas {
    pub g: f64,
    pub d_max: f64,
    pub d_min: f64,
}

pub fn growth_formulas(d: u8, q: usize, r: u64, n: u64, w0: u64) -> GrowthFormulas {
    let g = q as f64 * scrambled_site_fraction(d);
    GrowthFormulas {
        g,
        d_max: ((n as f64) / (w0 as f64)).ln() / g.ln(),
        d_min: (r as f64).ln() / g.ln(),
    }
}

/// Replace the generator set by the RREF of the stabilizer matrix, tracking
/// phases through the row operations. Row combinations multiply commuting
/// operators, so the χ-exponents combine linearly; commutation of every
/// combined pair is asserted rather than assumed.
pub fn rref_reduce(tableau: &StabilizerTableau) -> StabilizerTableau {
    let d = tableau.modulus();
    let k = tableau.num_generators();
    let cols = 2 * tableau.sites();
    let mut rows: Vec<Vec<u8>> = (0..k).map(|r| tableau.generators().row(r).to_vec()) .collect();
    let mut phases: Vec<u8> = tableau.phases().to_vec();
    let mut prow = 0usize;
    for col in 0..cols {
        if prow == k {
            break;
        }
        let Some(r) = (prow..k).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(prow, r);
        phases.swap(prow, r);
        let inv = crate::field::mod_inv(rows[prow][col], d).expect("nonzero pivot");
        if inv != 1 {
            // Scaling a row raises the operator to a power; the phase
            // scales with it.
            for x in &mut rows[prow] {
                *x = mod_mul(*x, inv, d);
            }
            phases[prow] = mod_mul(phases[prow], inv, d);
        }
        for r2 in 0..k {
            if r2 == prow {
                continue;
            }
            let f = rows[r2][col];
            if f == 0 {
                continue;
            }
            // row_{r2} <- row_{r2} - f * pivot as an operator product:
            // phases add because stabilizer rows commute.
            let m = crate::field::mod_neg(f, d);
            assert_eq!(
                symplectic_product_raw(&rows[r2], &rows[prow], d),
                0,
                "stabilizer rows must commute"
            );
            let (pivot_row, target_row) = if r2 < prow {
                let (a, b) = rows.split_at_mut(prow);
                (&b[0], &mut a[r2])
            } else {
                let (a, b) = rows.split_at_mut(r2);
                (&a[prow], &mut b[0])
            };
            for (x, &p) in target_row.iter_mut().zip(pivot_row) {
                *x = mod_add(*x, mod_mul(m, p, d), d);
            }
            phases[r2] = mod_add(phases[r2], mod_mul(m, phases[prow], d), d);
        }
        prow += 1;
    }
    let rows_i64: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    let gens = FieldMatrix::from_rows(&rows_i64, d).expect("valid rows");
    StabilizerTableau::from_parts(gens, phases).expect("row operations preserve the group")
}

/// Scaling-regime prediction for SykScaling parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub regime: Regime,
    /// Distance-scaling exponent c = ln(g^D)/ln(r) (meaningful in the
    /// dilute regime; equals the capped value 1 when saturating).
    pub c: f64,
    pub g_pow_d: f64,
    /// Qudit-growth ratio at the top layer, R_L = 1 + (r-1)/(1+r^{1-b}).
    pub r_top: f64,
    /// Layer at which operator growth and qudit growth switch dominance,
    /// when g^D < R_L makes one exist.
    pub ell_star: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// g^D ≥ r: operators saturate, distance expected linear in N.
    Saturating,
    /// g^D < r: operators stay dilute, distance expected ∝ N^c.
    Dilute,
}

pub fn syk_regime_classifier(params: &NoraParams) -> Result<RegimeReport, AnalysisError> {
    let NoraMode::Syk { b, .. } = params.mode else {
        return Err(AnalysisError::NotSykMode);
    };
    let r = params.r as f64;
    let g = params.q as f64 * scrambled_site_fraction(params.d);
    let g_pow_d = g.powi(params.depth as i32);
    let r_top = 1.0 + (r - 1.0) / (1.0 + r.powf(1.0 - b as f64));
    let regime = if g_pow_d < r {
        Regime::Dilute
    } else {
        Regime::Saturating
    };
    let c = (g_pow_d.ln() / r.ln()).min(1.0);
    // Solve g^D = R_ℓ = 1 + (r-1)/(1 + k r^{1-ℓ}):
    // k r^{1-ℓ} = (r-1)/(g^D - 1) - 1, requires 1 < g^D < R_L.
    let ell_star = if g_pow_d > 1.0 && g_pow_d < r_top {
        let x = (r - 1.0) / (g_pow_d - 1.0) - 1.0;
        if x > 0.0 {
            let k = params.k() as f64;
            Some(1.0 + (k / x).ln() / r.ln())
        } else {
            None
        }
    } else {
        None
    };
    Ok(RegimeReport {
        regime,
        c,
        g_pow_d,
        r_top,
        ell_star,
    })
}

/// Code summary emitted by the experiment drivers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeReport {
    pub params: NoraParams,
    pub n_physical: u64,
    pub k: u64,
    pub rate: f64,
    pub distance: DistanceEstimate,
    pub relative_distance: Option<f64>,
    pub singleton_bound: u64,
    pub gate_count: u64,
    pub layer_weights: Vec<LayerWeightRecord>,
}

pub fn code_report(
    params: &NoraParams,
    samples_per_size: u64,
    distance_seed: u64,
) -> Result<CodeReport, AnalysisError> {
    let records = weight_histogram_by_layer(params)?;
    let state = crate::nora::encode_with_reference(params)?;
    let n = params.total_sites()?;
    let k = params.k();
    let distance = monte_carlo_distance(&state, samples_per_size, None, distance_seed)?;
    let relative_distance = distance.delta.map(|d| d as f64 / n as f64);
    Ok(CodeReport {
        params: *params,
        n_physical: n,
        k,
        rate: k as f64 / n as f64,
        distance,
        relative_distance,
        singleton_bound: singleton_bound(n, k),
        gate_count: gate_count(params)?,
        layer_weights: records,
    })
}
