//! Layered non-local random-Clifford encoding circuits.
//!
//! The architecture grows a register layer by layer: starting from k
//! "ground-space" (logical) qudits, layer ℓ appends Δn_ℓ fresh |0⟩ ancillas
//! so that n_ℓ = k + r^ℓ sites are present, then scrambles all of them with
//! D sub-layers of random q-site Clifford gates on disjoint random tuples.
//! After L layers the circuit is the encoding map of an [[N, k]] stabilizer
//! code with N = k + r^L. Two parameter modes are supported: fixed (k, L)
//! and the scaling family k = r^a, L = a + b, whose rate 1/(1 + r^b) stays
//! constant as a grows.
//!
//! For distance measurements the logical qudits are first maximally
//! entangled with k untouched reference qudits (generators X_R⊗X_L and
//! Z_R⊗Z_L⁻¹ per pair), so decoupling of a physical region from the
//! reference can be read off mutual information.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clifford::{CliffordError, SymplecticClifford};
use crate::field::is_odd_prime;
use crate::stab::{RegionMask, StabError, StabilizerTableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoraError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("layer sizes overflow a u64 (r^{0})")]
    Overflow(u32),
    #[error("encoding with a reference needs k >= 1")]
    NoLogicalQudits,
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Stab(#[from] StabError),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
}

/// Ground-space sizing: fixed (k, L) or the scaling family k = r^a,
/// L = a + b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoraMode {
    Fixed {
        k: u64,
        #[serde(rename = "L")]
        layers: u32,
    },
    Syk {
        a: u32,
        b: u32,
    },
}

/// Discrete data of one architecture instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoraParams {
    /// Qudit dimension, an odd prime.
    pub d: u8,
    /// Gate arity q.
    pub q: usize,
    /// Growth rate r of the layer sizes.
    pub r: u64,
    /// Sub-layers per layer circuit.
    #[serde(rename = "D")]
    pub depth: usize,
    pub mode: NoraMode,
    pub seed: u64,
}

impl NoraParams {
    pub fn validate(&self) -> Result<(), NoraError> {
        if !is_odd_prime(self.d as u64) {
            return Err(NoraError::InvalidParameter(format!(
                "d = {} must be an odd prime",
                self.d
            )));
        }
        if self.q < 2 {
            return Err(NoraError::InvalidParameter("q must be >= 2".to_string()));
        }
        if self.r < 2 {
            return Err(NoraError::InvalidParameter("r must be >= 2".to_string()));
        }
        if self.depth < 1 {
            return Err(NoraError::InvalidParameter("D must be >= 1".to_string()));
        }
        if self.layers() < 1 {
            return Err(NoraError::InvalidParameter("L must be >= 1".to_string()));
        }
        self.layer_sizes()?;
        Ok(())
    }

    /// Number of logical ("ground-space") qudits.
    pub fn k(&self) -> u64 {
        match self.mode {
            NoraMode::Fixed { k, .. } => k,
            NoraMode::Syk { a, .. } => self.r.pow(a),
        }
    }

    pub fn layers(&self) -> u32 {
        match self.mode {
            NoraMode::Fixed { layers, .. } => layers,
            NoraMode::Syk { a, b } => a + b,
        }
    }

    /// n_ℓ = k + r^ℓ for ℓ ≥ 1, with n₀ ≡ k.
    pub fn layer_width(&self, layer: u32) -> Result<u64, NoraError> {
        if layer == 0 {
            return Ok(self.k());
        }
        let power = self
            .r
            .checked_pow(layer)
            .ok_or(NoraError::Overflow(layer))?;
        self.k()
            .checked_add(power)
            .ok_or(NoraError::Overflow(layer))
    }

    /// Total physical qudits N = n_L.
    pub fn total_sites(&self) -> Result<u64, NoraError> {
        self.layer_width(self.layers())
    }

    /// Code rate k/N.
    pub fn rate(&self) -> Result<f64, NoraError> {
        Ok(self.k() as f64 / self.total_sites()? as f64)
    }

    /// Widths [n₀ … n_L] and increments [Δn₁ … Δn_L]: Δn₁ = r and
    /// Δn_ℓ = r^ℓ - r^{ℓ-1} afterwards.
    pub fn layer_sizes(&self) -> Result<(Vec<u64>, Vec<u64>), NoraError> {
        let l = self.layers();
        let widths: Vec<u64> = (0..=l)
            .map(|layer| self.layer_width(layer))
            .collect::<Result<_, _>>()?;
        let increments = widths.windows(2).map(|w| w[1] - w[0]).collect();
        Ok((widths, increments))
    }
}

/// One sub-layer: a site permutation plus the gates it induces on
/// consecutive q-blocks of the permuted order. `n mod q` tail sites idle.
#[derive(Debug, Clone)]
pub struct SubLayer {
    pub permutation: Vec<usize>,
    pub gates: Vec<(Vec<usize>, SymplecticClifford)>,
}

/// A depth-D layer circuit on n_ℓ sites.
#[derive(Debug, Clone)]
pub struct LayerCircuit {
    pub sites: usize,
    pub sub_layers: Vec<SubLayer>,
}

impl LayerCircuit {
    pub fn gate_count(&self) -> u64 {
        self.sub_layers.iter().map(|s| s.gates.len() as u64).sum()
    }

    /// Apply to the tableau, offsetting gate sites by `offset` global sites.
    pub fn apply(
        &self,
        tableau: &mut StabilizerTableau,
        offset: usize,
    ) -> Result<(), NoraError> {
        for sub in &self.sub_layers {
            for (sites, gate) in &sub.gates {
                let global: Vec<usize> = sites.iter().map(|&s| s + offset).collect();
                tableau.apply_gate_in_place(gate, &global)?;
            }
        }
        Ok(())
    }
}

/// D sub-layers of ⌊n/q⌋ random q-site gates each, grouped by a fresh
/// uniform permutation per sub-layer.
pub fn build_layer(
    n_sites: usize,
    params: &NoraParams,
    rng: &mut impl Rng,
) -> Result<LayerCircuit, NoraError> {
    if n_sites < params.q {
        return Err(NoraError::InvalidParameter(format!(
            "layer width {} below gate arity {}",
            n_sites, params.q
        )));
    }
    let mut sub_layers = Vec::with_capacity(params.depth);
    for _ in 0..params.depth {
        let mut permutation: Vec<usize> = (0..n_sites).collect();
        permutation.shuffle(rng);
        let gates = permutation
            .chunks_exact(params.q)
            .map(|tuple| {
                SymplecticClifford::random(params.q, params.d, rng)
                    .map(|gate| (tuple.to_vec(), gate))
            })
            .collect::<Result<Vec<_>, _>>()?;
        sub_layers.push(SubLayer { permutation, gates });
    }
    Ok(LayerCircuit {
        sites: n_sites,
        sub_layers,
    })
}

/// The full encoder: one layer circuit per layer ℓ = 1…L, deterministic in
/// `params.seed`.
pub fn build_encoder(params: &NoraParams) -> Result<Vec<LayerCircuit>, NoraError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    build_encoder_with(params, &mut rng)
}

pub fn build_encoder_with(
    params: &NoraParams,
    rng: &mut impl Rng,
) -> Result<Vec<LayerCircuit>, NoraError> {
    (1..=params.layers())
        .map(|layer| {
            let width = params.layer_width(layer)? as usize;
            build_layer(width, params, rng)
        })
        .collect()
}

/// Total gates actually placed: Σ_ℓ D·⌊n_ℓ/q⌋.
pub fn gate_count(params: &NoraParams) -> Result<u64, NoraError> {
    let (widths, _) = params.layer_sizes()?;
    Ok(widths[1..]
        .iter()
        .map(|&n| params.depth as u64 * (n / params.q as u64))
        .sum())
}

/// Closed form (D/q)·(L·k + (r^{L+1} - r)/(r - 1)), valid when q divides
/// every layer width; `None` otherwise.
pub fn gate_count_closed_form(params: &NoraParams) -> Result<Option<u64>, NoraError> {
    let (widths, _) = params.layer_sizes()?;
    if widths[1..].iter().any(|&n| n % params.q as u64 != 0) {
        return Ok(None);
    }
    let l = self_layers_u64(params);
    let r = params.r;
    let geo = (r
        .checked_pow(params.layers() + 1)
        .ok_or(NoraError::Overflow(params.layers() + 1))?
        - r)
        / (r - 1);
    let total = params.depth as u64 * (l * params.k() + geo) / params.q as u64;
    Ok(Some(total))
}

fn self_layers_u64(params: &NoraParams) -> u64 {
    params.layers() as u64
}

/// A reference-entangled encoded state: k reference qudits (sites 0..k)
/// hold Bell pairs with the logical qudits, ancillas start in |0⟩, and the
/// encoder acts on physical sites only.
#[derive(Debug, Clone)]
pub struct EncodedState {
    pub tableau: StabilizerTableau,
    pub reference: RegionMask,
    pub physical: RegionMask,
    pub params: NoraParams,
}

impl EncodedState {
    pub fn physical_sites(&self) -> usize {
        self.physical.len()
    }

    pub fn logical_qudits(&self) -> u64 {
        self.params.k()
    }
}

/// Build the encoded state, observing the tableau after each layer
/// (`observer(0, …)` sees the pre-encoding tableau).
pub fn encode_with_reference_observed(
    params: &NoraParams,
    mut observer: impl FnMut(u32, &StabilizerTableau),
) -> Result<EncodedState, NoraError> {
    params.validate()?;
    let k = params.k();
    if k == 0 {
        return Err(NoraError::NoLogicalQudits);
    }
    let n_phys = params.total_sites()? as usize;
    let k = k as usize;
    let n_tot = k + n_phys;
    let d = params.d;
    // Rows: per Bell pair (X_R ⊗ X_L, Z_R ⊗ Z_L⁻¹), then ancilla Z rows.
    let mut gens = crate::field::FieldMatrix::zeros(n_tot, 2 * n_tot, d)?;
    for i in 0..k {
        let reference = i;
        let logical = k + i;
        gens.set(2 * i, 2 * reference + 1, 1);
        gens.set(2 * i, 2 * logical + 1, 1);
        gens.set(2 * i + 1, 2 * reference, 1);
        gens.set(2 * i + 1, 2 * logical, d - 1);
    }
    for j in 0..(n_phys - k) {
        gens.set(2 * k + j, 2 * (2 * k + j), 1);
    }
    let mut tableau = StabilizerTableau::from_parts(gens, vec![0; n_tot])?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    observer(0, &tableau);
    for layer in 1..=params.layers() {
        let width = params.layer_width(layer)? as usize;
        let circuit = build_layer(width, params, &mut rng)?;
        circuit.apply(&mut tableau, k)?;
        observer(layer, &tableau);
    }
    Ok(EncodedState {
        tableau,
        reference: RegionMask::range(0, k),
        physical: RegionMask::range(k, n_tot),
        params: *params,
    })
}

pub fn encode_with_reference(params: &NoraParams) -> Result<EncodedState, NoraError> {
    encode_with_reference_observed(params, |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixed(d: u8, q: usize, r: u64, depth: usize, k: u64, layers: u32, seed: u64) -> NoraParams {
        NoraParams {
            d,
            q,
            r,
            depth,
            mode: NoraMode::Fixed { k, layers },
            seed,
        }
    }

    #[test]
    fn layer_sizes_match_geometry() {
        let p = fixed(3, 2, 2, 1, 2, 7, 0);
        let (widths, increments) = p.layer_sizes().unwrap();
        assert_eq!(widths[0], 2);
        assert_eq!(*widths.last().unwrap(), 130);
        assert_eq!(p.total_sites().unwrap(), 130);
        assert_eq!(increments[0], 2);
        assert_eq!(increments[1..], [2, 4, 8, 16, 32, 64]);
        assert_eq!(increments.iter().sum::<u64>(), 128);

        let p0 = fixed(3, 2, 3, 1, 0, 1, 0);
        assert_eq!(p0.layer_sizes().unwrap().0, vec![0, 3]);
    }

    #[test]
    fn syk_mode_rate() {
        let p = NoraParams {
            d: 3,
            q: 2,
            r: 2,
            depth: 1,
            mode: NoraMode::Syk { a: 2, b: 1 },
            seed: 0,
        };
        assert_eq!(p.k(), 4);
        assert_eq!(p.total_sites().unwrap(), 12);
        assert!((p.rate().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn params_serde_round_trip() {
        let p = NoraParams {
            d: 3,
            q: 2,
            r: 2,
            depth: 4,
            mode: NoraMode::Fixed { k: 2, layers: 7 },
            seed: 11,
        };
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"fixed\""));
        assert!(json.contains("\"L\":7"));
        let back: NoraParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let syk: NoraParams =
            serde_json::from_str(r#"{"d":3,"q":2,"r":2,"D":3,"mode":{"syk":{"a":2,"b":1}},"seed":5}"#)
                .unwrap();
        assert_eq!(syk.mode, NoraMode::Syk { a: 2, b: 1 });
    }

    #[test]
    fn build_layer_structure() {
        let p = fixed(3, 2, 2, 3, 2, 3, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let layer = build_layer(10, &p, &mut rng).unwrap();
        assert_eq!(layer.sub_layers.len(), 3);
        for sub in &layer.sub_layers {
            assert_eq!(sub.gates.len(), 5);
            let mut seen: Vec<usize> = sub
                .gates
                .iter()
                .flat_map(|(sites, _)| sites.iter().copied())
                .collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), 10, "gate tuples must be disjoint");
        }
        // One idle site per sub-layer when q does not divide n.
        let layer5 = build_layer(5, &p, &mut rng).unwrap();
        for sub in &layer5.sub_layers {
            assert_eq!(sub.gates.len(), 2);
        }
        // Single gate covering everything.
        let p1 = fixed(3, 2, 2, 1, 0, 1, 1);
        let tight = build_layer(2, &p1, &mut rng).unwrap();
        assert_eq!(tight.gate_count(), 1);
    }

    #[test]
    fn encoder_is_deterministic_in_the_seed() {
        let p = fixed(3, 2, 2, 2, 1, 3, 42);
        let a = encode_with_reference(&p).unwrap();
        let b = encode_with_reference(&p).unwrap();
        assert_eq!(a.tableau.to_text(), b.tableau.to_text());
        let mut p2 = p;
        p2.seed = 43;
        let c = encode_with_reference(&p2).unwrap();
        assert_ne!(a.tableau.to_text(), c.tableau.to_text());
    }

    #[test]
    fn gate_count_matches_closed_form_and_construction() {
        let p = fixed(3, 2, 2, 1, 2, 2, 9);
        assert_eq!(gate_count(&p).unwrap(), 5);
        assert_eq!(gate_count_closed_form(&p).unwrap(), Some(5));
        let encoder = build_encoder(&p).unwrap();
        let built: u64 = encoder.iter().map(LayerCircuit::gate_count).sum();
        assert_eq!(built, 5);
        // Doubling D doubles the count.
        let mut p2 = p;
        p2.depth = 2;
        assert_eq!(gate_count(&p2).unwrap(), 10);
        // Odd widths fall back to the floor count.
        let p_odd = fixed(3, 2, 2, 1, 1, 2, 9);
        assert_eq!(gate_count_closed_form(&p_odd).unwrap(), None);
        assert_eq!(gate_count(&p_odd).unwrap(), 1 + 2);
    }

    #[test]
    fn reference_entropy_is_k() {
        for (k, layers) in [(1u64, 2u32), (2, 3)] {
            let p = fixed(3, 2, 2, 2, k, layers, 5);
            let e = encode_with_reference(&p).unwrap();
            assert_eq!(
                e.tableau.entropy(&e.reference).unwrap() as u64,
                k,
                "S(R) must stay k"
            );
            assert_eq!(
                e.tableau
                    .mutual_information(&e.physical, &e.reference)
                    .unwrap() as u64,
                2 * k
            );
        }
    }

    #[test]
    fn unencoded_state_leaks_through_logical_site() {
        // L = 0 is outside the validated range, so emulate it by observing
        // layer 0 of any build: Bell pairs plus fresh ancillas.
        let p = fixed(3, 2, 2, 1, 1, 2, 3);
        let mut layer0 = None;
        let _ = encode_with_reference_observed(&p, |layer, t| {
            if layer == 0 {
                layer0 = Some(t.clone());
            }
        })
        .unwrap();
        let t = layer0.unwrap();
        let reference = RegionMask::range(0, 1);
        let logical = RegionMask::new(vec![1]).unwrap();
        let ancilla = RegionMask::new(vec![2]).unwrap();
        assert_eq!(t.mutual_information(&logical, &reference).unwrap(), 2);
        assert_eq!(t.mutual_information(&ancilla, &reference).unwrap(), 0);
    }

    #[test]
    fn untouched_ancilla_rows_stay_local() {
        // Sites beyond the final layer width never exist, but within one
        // build the ancillas added at layer ℓ are untouched by earlier
        // layers: check their rows are still weight 1 right before their
        // first layer acts.
        let p = fixed(3, 2, 2, 1, 1, 3, 8);
        let mut checked = false;
        let _ = encode_with_reference_observed(&p, |layer, t| {
            if layer == 2 {
                // Ancillas of layer 3 occupy the last Δn_3 = 4 sites.
                let weights = t.row_weights();
                for w in &weights[weights.len() - 4..] {
                    assert_eq!(*w, 1);
                }
                checked = true;
            }
        })
        .unwrap();
        assert!(checked);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(fixed(4, 2, 2, 1, 1, 2, 0).validate().is_err());
        assert!(fixed(3, 1, 2, 1, 1, 2, 0).validate().is_err());
        assert!(fixed(3, 2, 1, 1, 1, 2, 0).validate().is_err());
        assert!(fixed(3, 2, 2, 0, 1, 2, 0).validate().is_err());
        assert!(fixed(3, 2, 2, 1, 1, 0, 0).validate().is_err());
        assert!(fixed(3, 2, 2, 1, 1, 64, 0).validate().is_err()); // 2^64 overflows
    }
}
