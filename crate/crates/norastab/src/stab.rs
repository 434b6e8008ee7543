//! Stabilizer tableaus over GF(d): isotropic generator matrices with
//! χ-exponent phases.
//!
//! A tableau holds k_gen independent, pairwise-commuting generator rows in
//! GF(d)^{2n}; k_gen = n describes a pure stabilizer state, k_gen < n a code
//! space (equivalently a maximally mixed state on it). Subsystem entropies
//! come from reduced-group ranks: in units of log d,
//!
//!   S(A) = n_A - k_A,   k_A = log_d |{ m in the group : supp(m) ⊆ A }|,
//!
//! and k_A is computed in polynomial time by gathering the traced-out
//! columns in front and counting where Gaussian-elimination pivots land.
//! The flat entanglement spectrum of stabilizer states makes these integers
//! exact Rényi-independent entropies.

use rand::Rng;

use thiserror::Error;

use crate::clifford::{CliffordError, SymplecticClifford};
use crate::field::{mod_add, FieldError, FieldMatrix};
use crate::weyl::{symplectic_product_raw, WeylError, WeylVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabError {
    #[error("generator rows must commute: rows {0} and {1} do not")]
    NotIsotropic(usize, usize),
    #[error("generator rows are linearly dependent")]
    DependentRows,
    #[error("too many generators: {0} rows on {1} sites")]
    TooManyRows(usize, usize),
    #[error("site count mismatch: {0} vs {1}")]
    SiteMismatch(usize, usize),
    #[error("region index {0} out of range for {1} sites")]
    RegionOutOfRange(usize, usize),
    #[error("duplicate region index {0}")]
    DuplicateIndex(usize),
    #[error("regions overlap at site {0}")]
    OverlappingRegions(usize),
    #[error("cannot parse tableau: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// An explicit subset of site indices; the complement is implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMask {
    indices: Vec<usize>,
}

impl RegionMask {
    /// Indices are deduplicated-checked and stored sorted.
    pub fn new(mut indices: Vec<usize>) -> Result<Self, StabError> {
        indices.sort_unstable();
        for pair in indices.windows(2) {
            if pair[0] == pair[1] {
                return Err(StabError::DuplicateIndex(pair[0]));
            }
        }
        Ok(Self { indices })
    }

    pub fn empty() -> Self {
        Self {
            indices: Vec::new(),
        }
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        Self {
            indices: (lo..hi).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.indices.binary_search(&site).is_ok()
    }

    pub fn complement(&self, n: usize) -> Self {
        Self {
            indices: (0..n).filter(|s| !self.contains(*s)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Result<Self, StabError> {
        for &s in &other.indices {
            if self.contains(s) {
                return Err(StabError::OverlappingRegions(s));
            }
        }
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        Self::new(indices)
    }

    fn check_bounds(&self, n: usize) -> Result<(), StabError> {
        match self.indices.last() {
            Some(&last) if last >= n => Err(StabError::RegionOutOfRange(last, n)),
            _ => Ok(()),
        }
    }
}

/// Generator rows plus per-row χ-exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    gens: FieldMatrix,
    phases: Vec<u8>,
    n: usize,
}

impl StabilizerTableau {
    /// |0…0⟩: one Z generator per site, all phases zero.
    pub fn zero_state(n: usize, modulus: u8) -> Result<Self, StabError> {
        let mut gens = FieldMatrix::zeros(n, 2 * n, modulus)?;
        for i in 0..n {
            gens.set(i, 2 * i, 1);
        }
        Ok(Self {
            gens,
            phases: vec![0; n],
            n,
        })
    }

    /// Build from explicit rows, validating isotropy and independence.
    pub fn from_parts(gens: FieldMatrix, phases: Vec<u8>) -> Result<Self, StabError> {
        if gens.cols() % 2 != 0 {
            return Err(StabError::Parse("odd column count".to_string()));
        }
        let n = gens.cols() / 2;
        if phases.len() != gens.rows() {
            return Err(StabError::Parse(format!(
                "{} phases for {} rows",
                phases.len(),
                gens.rows()
            )));
        }
        let d = gens.modulus();
        for i in 0..gens.rows() {
            for j in (i + 1)..gens.rows() {
                if symplectic_product_raw(gens.row(i), gens.row(j), d) != 0 {
                    return Err(StabError::NotIsotropic(i, j));
                }
            }
        }
        if gens.rank() != gens.rows() {
            return Err(StabError::DependentRows);
        }
        // Independent isotropic rows can never exceed n, so this only
        // triggers on malformed input that slipped past the cheaper checks.
        if gens.rows() > n {
            return Err(StabError::TooManyRows(gens.rows(), n));
        }
        let phases = phases.into_iter().map(|p| p % d).collect();
        Ok(Self { gens, phases, n })
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u8 {
        self.gens.modulus()
    }

    pub fn num_generators(&self) -> usize {
        self.gens.rows()
    }

    /// k_gen = n characterizes a pure state (maximally isotropic group).
    pub fn is_pure(&self) -> bool {
        self.num_generators() == self.n
    }

    pub fn generators(&self) -> &FieldMatrix {
        &self.gens
    }

    pub fn phases(&self) -> &[u8] {
        &self.phases
    }

    /// Generator row i as a Weyl string.
    pub fn row_weyl(&self, i: usize) -> WeylVector {
        WeylVector::from_components(self.gens.row(i).to_vec(), self.phases[i], self.modulus())
            .expect("tableau rows are valid Weyl labels")
    }

    /// Append m fresh |0⟩ sites: old rows padded with identity, one new Z
    /// generator per new site.
    pub fn append_ancillas(&self, m: usize) -> Self {
        let n2 = self.n + m;
        let k = self.num_generators();
        let d = self.modulus();
        let mut gens = FieldMatrix::zeros(k + m, 2 * n2, d).expect("valid modulus");
        for r in 0..k {
            let src = self.gens.row(r);
            for c in 0..2 * self.n {
                gens.set(r, c, src[c]);
            }
        }
        for j in 0..m {
            gens.set(k + j, 2 * (self.n + j), 1);
        }
        let mut phases = self.phases.clone();
        phases.extend(std::iter::repeat(0).take(m));
        Self {
            gens,
            phases,
            n: n2,
        }
    }

    /// Conjugate every generator by a full-width Clifford.
    pub fn apply_clifford(&self, c: &SymplecticClifford) -> Result<Self, StabError> {
        if c.sites() != self.n {
            return Err(StabError::SiteMismatch(self.n, c.sites()));
        }
        if c.modulus() != self.modulus() {
            return Err(StabError::Field(FieldError::ModulusMismatch(
                self.modulus(),
                c.modulus(),
            )));
        }
        let mut out = self.clone();
        for r in 0..self.num_generators() {
            let w = c.apply_to_weyl(&self.row_weyl(r))?;
            out.phases[r] = w.phase_exp();
            let row = out.gens.row_mut(r);
            row.copy_from_slice(w.components());
        }
        Ok(out)
    }

    /// Conjugate in place by a q-site gate at the given (ordered, distinct)
    /// sites. Equivalent to `apply_clifford` with the embedded gate but
    /// touching only 2q columns per row.
    pub fn apply_gate_in_place(
        &mut self,
        gate: &SymplecticClifford,
        sites: &[usize],
    ) -> Result<(), StabError> {
        let q = gate.sites();
        if sites.len() != q {
            return Err(StabError::SiteMismatch(q, sites.len()));
        }
        let d = self.modulus();
        if gate.modulus() != d {
            return Err(StabError::Field(FieldError::ModulusMismatch(
                d,
                gate.modulus(),
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for &s in sites {
            if s >= self.n {
                return Err(StabError::RegionOutOfRange(s, self.n));
            }
            if !seen.insert(s) {
                return Err(StabError::DuplicateIndex(s));
            }
        }
        let s_small = gate.symplectic();
        let a_small = gate.displacement();
        let mut local = vec![0u8; 2 * q];
        let mut image = vec![0u8; 2 * q];
        for r in 0..self.num_generators() {
            let row = self.gens.row_mut(r);
            for (t, &g) in sites.iter().enumerate() {
                local[2 * t] = row[2 * g];
                local[2 * t + 1] = row[2 * g + 1];
            }
            if local.iter().all(|&x| x == 0) {
                continue;
            }
            for (i, img) in image.iter_mut().enumerate() {
                let mut acc: u32 = 0;
                for (j, &lj) in local.iter().enumerate() {
                    acc += s_small.get(i, j) as u32 * lj as u32;
                }
                *img = (acc % d as u32) as u8;
            }
            let dphase = symplectic_product_raw(a_small, &image, d);
            self.phases[r] = mod_add(self.phases[r], dphase, d);
            for (t, &g) in sites.iter().enumerate() {
                row[2 * g] = image[2 * t];
                row[2 * g + 1] = image[2 * t + 1];
            }
        }
        Ok(())
    }

    /// k_A: the log-size of the subgroup supported entirely inside A,
    /// computed by gathering the traced-out columns first and counting the
    /// pivots that fall inside A's column block.
    pub fn reduced_group_rank(&self, region: &RegionMask) -> Result<usize, StabError> {
        region.check_bounds(self.n)?;
        let traced = region.complement(self.n);
        let mut cols = Vec::with_capacity(2 * self.n);
        for &s in traced.indices() {
            cols.push(2 * s);
            cols.push(2 * s + 1);
        }
        let split = cols.len();
        for &s in region.indices() {
            cols.push(2 * s);
            cols.push(2 * s + 1);
        }
        let (_, inside) = self.gens.gathered_block_pivots(&cols, split);
        Ok(inside)
    }

    /// S(A) = n_A - k_A in units of log d; for mixed tableaus this is the
    /// flat-spectrum (all-Rényi) entropy of the reduced projector.
    pub fn entropy(&self, region: &RegionMask) -> Result<usize, StabError> {
        let k_a = self.reduced_group_rank(region)?;
        Ok(region.len() - k_a)
    }

    /// I(A, R) = S(A) + S(R) - S(AR) for disjoint regions, in units of
    /// log d.
    pub fn mutual_information(
        &self,
        a: &RegionMask,
        r: &RegionMask,
    ) -> Result<usize, StabError> {
        let union = a.union(r)?; // checks disjointness
        let s_a = self.entropy(a)?;
        let s_r = self.entropy(r)?;
        let s_ar = self.entropy(&union)?;
        Ok(s_a + s_r - s_ar)
    }

    /// Weight of each generator row, in row order.
    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.num_generators())
            .map(|r| {
                self.gens
                    .row(r)
                    .chunks_exact(2)
                    .filter(|c| c[0] != 0 || c[1] != 0)
                    .count()
            })
            .collect()
    }

    /// Plain-text serialization. First line `d n`, then one generator per
    /// line: the phase exponent followed by the 2n components.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.modulus(), self.n);
        for r in 0..self.num_generators() {
            let mut line = self.phases[r].to_string();
            for &c in self.gens.row(r) {
                line.push(' ');
                line.push_str(&c.to_string());
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, StabError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| StabError::Parse("empty input".to_string()))?;
        let mut head = header.split_whitespace();
        let d: u8 = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| StabError::Parse("bad modulus".to_string()))?;
        let n: usize = head
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| StabError::Parse("bad site count".to_string()))?;
        let mut rows = Vec::new();
        let mut phases = Vec::new();
        for line in lines {
            let fields: Vec<u8> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| StabError::Parse(format!("bad field element {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            if fields.len() != 2 * n + 1 {
                return Err(StabError::Parse(format!(
                    "row has {} entries, expected {}",
                    fields.len(),
                    2 * n + 1
                )));
            }
            phases.push(fields[0]);
            rows.push(fields[1..].iter().map(|&x| x as i64).collect::<Vec<_>>());
        }
        let gens = if rows.is_empty() {
            FieldMatrix::zeros(0, 2 * n, d)?
        } else {
            FieldMatrix::from_rows(&rows, d)?
        };
        Self::from_parts(gens, phases)
    }

    /// A random pure stabilizer state: a uniform Clifford applied to |0…0⟩.
    pub fn random_pure(n: usize, modulus: u8, rng: &mut impl Rng) -> Result<Self, StabError> {
        let c = SymplecticClifford::random(n, modulus, rng)?;
        StabilizerTableau::zero_state(n, modulus)?.apply_clifford(&c)
    }
}

/// Reusable machinery for mutual-information probes of one tableau against a
/// fixed reference region. Each query gathers the columns
/// [complement-of-A | reference] and forward-eliminates once:
///
///   I(A, R) = (pivots in the reference block) - k_R,
///
/// which follows from I = k_{AR} - k_A - k_R with rank differences read off
/// one elimination. Distance sweeps call this thousands of times, so
/// `probe` takes a scratch-free borrowed subset and avoids the full entropy
/// route.
pub struct DecouplingProbe<'a> {
    tableau: &'a StabilizerTableau,
    reference: Vec<usize>,
    physical: Vec<usize>,
    k_r: usize,
    in_a: Vec<bool>,
    cols: Vec<usize>,
}

impl<'a> DecouplingProbe<'a> {
    pub fn new(
        tableau: &'a StabilizerTableau,
        reference: &RegionMask,
        physical: &RegionMask,
    ) -> Result<Self, StabError> {
        reference.check_bounds(tableau.sites())?;
        physical.check_bounds(tableau.sites())?;
        // The rank bookkeeping below needs physical and reference to
        // partition the sites.
        let union = reference.union(physical)?;
        if union.len() != tableau.sites() {
            return Err(StabError::SiteMismatch(union.len(), tableau.sites()));
        }
        let k_r = tableau.reduced_group_rank(reference)?;
        Ok(Self {
            tableau,
            reference: reference.indices().to_vec(),
            physical: physical.indices().to_vec(),
            k_r,
            in_a: vec![false; tableau.sites()],
            cols: Vec::with_capacity(2 * tableau.sites()),
        })
    }

    /// I(A, R) for A given as positions into the physical site list.
    pub fn mutual_information(&mut self, a_positions: &[usize]) -> usize {
        for &p in a_positions {
            self.in_a[self.physical[p]] = true;
        }
        self.cols.clear();
        for &s in &self.physical {
            if !self.in_a[s] {
                self.cols.push(2 * s);
                self.cols.push(2 * s + 1);
            }
        }
        let split = self.cols.len();
        for &s in &self.reference {
            self.cols.push(2 * s);
            self.cols.push(2 * s + 1);
        }
        let (_, in_ref) = self.tableau.generators().gathered_block_pivots(&self.cols, split);
        for &p in a_positions {
            self.in_a[self.physical[p]] = false;
        }
        in_ref - self.k_r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::mod_mul;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bell_pair(d: u8) -> StabilizerTableau {
        // Generators X⊗X and Z⊗Z⁻¹, phase 0.
        let gens = FieldMatrix::from_rows(
            &[vec![0, 1, 0, 1], vec![1, 0, -1, 0]],
            d,
        )
        .unwrap();
        StabilizerTableau::from_parts(gens, vec![0, 0]).unwrap()
    }

    #[test]
    fn zero_state_layout() {
        let t = StabilizerTableau::zero_state(1, 3).unwrap();
        assert_eq!(t.generators().row(0), &[1, 0]);
        assert_eq!(t.phases(), &[0]);
        let t3 = StabilizerTableau::zero_state(3, 3).unwrap();
        for a in [vec![0], vec![1, 2], vec![0, 2]] {
            let region = RegionMask::new(a).unwrap();
            assert_eq!(t3.entropy(&region).unwrap(), 0);
        }
        assert_eq!(t3.row_weights(), vec![1, 1, 1]);
    }

    #[test]
    fn append_ancillas_matches_zero_state() {
        let t = StabilizerTableau::zero_state(1, 3).unwrap();
        assert_eq!(t.append_ancillas(0), t);
        assert_eq!(
            t.append_ancillas(1),
            StabilizerTableau::zero_state(2, 3).unwrap()
        );
        let bell = bell_pair(3).append_ancillas(2);
        let fresh = RegionMask::new(vec![2, 3]).unwrap();
        assert_eq!(bell.entropy(&fresh).unwrap(), 0);
    }

    #[test]
    fn bell_pair_entropies() {
        let t = bell_pair(3);
        let left = RegionMask::new(vec![0]).unwrap();
        assert_eq!(t.reduced_group_rank(&left).unwrap(), 0);
        assert_eq!(t.entropy(&left).unwrap(), 1);
        let right = RegionMask::new(vec![1]).unwrap();
        assert_eq!(t.mutual_information(&left, &right).unwrap(), 2);
    }

    #[test]
    fn product_state_has_zero_mutual_information() {
        let t = StabilizerTableau::zero_state(4, 5).unwrap();
        let a = RegionMask::new(vec![0, 2]).unwrap();
        let r = RegionMask::new(vec![1]).unwrap();
        assert_eq!(t.mutual_information(&a, &r).unwrap(), 0);
        assert!(matches!(
            t.mutual_information(&a, &RegionMask::new(vec![0]).unwrap()),
            Err(StabError::OverlappingRegions(0))
        ));
    }

    #[test]
    fn fourier_like_gate_maps_z_to_x_row() {
        let j = crate::weyl::SymplecticForm::new(1).matrix(3).unwrap();
        let c = SymplecticClifford::from_parts(j, vec![0; 2], 3).unwrap();
        let t = StabilizerTableau::zero_state(1, 3)
            .unwrap()
            .apply_clifford(&c)
            .unwrap();
        // Z = (1,0) maps to (0,-1): an X-type row up to sign.
        assert_eq!(t.generators().row(0), &[0, 2]);
    }

    #[test]
    fn identity_clifford_fixes_tableau() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = StabilizerTableau::random_pure(4, 3, &mut rng).unwrap();
        let id = SymplecticClifford::identity(4, 3).unwrap();
        assert_eq!(t.apply_clifford(&id).unwrap(), t);
    }

    #[test]
    fn local_gate_matches_embedded_clifford() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let t = StabilizerTableau::random_pure(5, 3, &mut rng).unwrap();
            let gate = SymplecticClifford::random(2, 3, &mut rng).unwrap();
            let sites = [4usize, 1];
            let embedded = gate.embed(&sites, 5).unwrap();
            let via_embed = t.apply_clifford(&embedded).unwrap();
            let mut via_local = t.clone();
            via_local.apply_gate_in_place(&gate, &sites).unwrap();
            assert_eq!(via_embed, via_local);
        }
    }

    #[test]
    fn clifford_evolution_preserves_isotropy_and_purity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let t = StabilizerTableau::random_pure(5, 3, &mut rng).unwrap();
            // from_parts re-validates isotropy and independence.
            let rebuilt =
                StabilizerTableau::from_parts(t.generators().clone(), t.phases().to_vec());
            assert!(rebuilt.is_ok());
            // Purity: S(A) = S(complement).
            let a = RegionMask::new(vec![0, 3]).unwrap();
            assert_eq!(
                t.entropy(&a).unwrap(),
                t.entropy(&a.complement(5)).unwrap()
            );
        }
    }

    #[test]
    fn reduced_rank_matches_brute_force_enumeration() {
        // Enumerate all d^{k_gen} group elements and count those supported
        // inside the region.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let t = StabilizerTableau::random_pure(6, 3, &mut rng).unwrap();
            let sites: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.5)).collect();
            let region = RegionMask::new(sites).unwrap();
            let k = t.num_generators();
            let d = 3u32;
            let mut count = 0u64;
            for idx in 0..d.pow(k as u32) {
                let mut coeffs = Vec::with_capacity(k);
                let mut rest = idx;
                for _ in 0..k {
                    coeffs.push((rest % d) as u8);
                    rest /= d;
                }
                let mut elem = vec![0u8; 2 * t.sites()];
                for (r, &c) in coeffs.iter().enumerate() {
                    for (j, &g) in t.generators().row(r).iter().enumerate() {
                        elem[j] = mod_add(elem[j], mod_mul(c, g, 3), 3);
                    }
                }
                let supported = (0..t.sites()).all(|s| {
                    region.contains(s) || (elem[2 * s] == 0 && elem[2 * s + 1] == 0)
                });
                if supported {
                    count += 1;
                }
            }
            let k_a = t.reduced_group_rank(&region).unwrap();
            assert_eq!(3u64.pow(k_a as u32), count);
        }
    }

    #[test]
    fn entropy_bounds_hold_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let t = StabilizerTableau::random_pure(6, 3, &mut rng).unwrap();
            let sites: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.5)).collect();
            let region = RegionMask::new(sites).unwrap();
            let s = t.entropy(&region).unwrap();
            assert!(s <= region.len());
            assert!(s <= 6 - region.len());
            let k_a = t.reduced_group_rank(&region).unwrap();
            assert_eq!(s == region.len(), k_a == 0);
        }
    }

    #[test]
    fn mutual_information_monotone_under_enlargement() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let t = StabilizerTableau::random_pure(6, 3, &mut rng).unwrap();
            let r = RegionMask::new(vec![5]).unwrap();
            let a = RegionMask::new(vec![0, 2]).unwrap();
            let a_big = RegionMask::new(vec![0, 2, 3]).unwrap();
            let i_small = t.mutual_information(&a, &r).unwrap();
            let i_big = t.mutual_information(&a_big, &r).unwrap();
            assert!(i_small <= i_big);
        }
    }

    #[test]
    fn probe_agrees_with_entropy_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let t = StabilizerTableau::random_pure(7, 3, &mut rng).unwrap();
            let reference = RegionMask::new(vec![0, 1]).unwrap();
            let physical = reference.complement(7);
            let mut probe = DecouplingProbe::new(&t, &reference, &physical).unwrap();
            let positions: Vec<usize> = (0..physical.len()).filter(|_| rng.gen_bool(0.4)).collect();
            let a_sites: Vec<usize> =
                positions.iter().map(|&p| physical.indices()[p]).collect();
            let a = RegionMask::new(a_sites).unwrap();
            assert_eq!(
                probe.mutual_information(&positions),
                t.mutual_information(&a, &reference).unwrap()
            );
        }
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let t = StabilizerTableau::random_pure(4, 5, &mut rng).unwrap();
        let text = t.to_text();
        let back = StabilizerTableau::from_text(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn from_parts_rejects_bad_rows() {
        // Z and X on the same site do not commute.
        let gens = FieldMatrix::from_rows(&[vec![1, 0], vec![0, 1]], 3).unwrap();
        assert!(matches!(
            StabilizerTableau::from_parts(gens, vec![0, 0]),
            Err(StabError::NotIsotropic(0, 1))
        ));
        // Dependent rows.
        let gens = FieldMatrix::from_rows(&[vec![1, 0, 0, 0], vec![2, 0, 0, 0]], 3).unwrap();
        assert!(matches!(
            StabilizerTableau::from_parts(gens, vec![0, 0]),
            Err(StabError::DependentRows)
        ));
    }
}
