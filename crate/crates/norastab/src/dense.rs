//! Brute-force dense-matrix oracle for tiny systems.
//!
//! Everything here rebuilds the symplectic bookkeeping from first
//! principles: clock/shift matrices Zᵖ|k⟩ = χ(pk)|k⟩, Xᑫ|k⟩ = |k+q⟩ with
//! χ(k) = exp(2πik/d), single-site Weyl factors χ(-pq/2)ZᵖXᑫ, explicit
//! tensor products, group sums for stabilizer projectors, and partial-trace
//! spectra for entropies. It exists to cross-check the fast integer paths
//! and is capped at d^n ≤ 2187, far past which nothing here should run.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::clifford::SymplecticClifford;
use crate::field::{mod_add, mod_mul, mod_neg};
use crate::stab::{RegionMask, StabilizerTableau};
use crate::weyl::WeylVector;

/// Hard cap on the Hilbert-space dimension.
pub const DENSE_DIM_CAP: usize = 2187;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DenseError {
    #[error("dense dimension {0} exceeds cap {DENSE_DIM_CAP}")]
    DimensionCap(usize),
    #[error("operation needs a pure tableau (k_gen = n)")]
    NotPure,
    #[error("intertwiner came out zero; retry with a different seed matrix")]
    ZeroIntertwiner,
}

/// A complex matrix on n qudits of dimension d.
#[derive(Debug, Clone)]
pub struct DenseOperator {
    pub matrix: DMatrix<Complex64>,
    pub n: usize,
    pub d: u8,
}

fn chi(exp: i64, d: u8) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * (exp.rem_euclid(d as i64) as f64) / d as f64;
    Complex64::new(angle.cos(), angle.sin())
}

fn dim_checked(n: usize, d: u8) -> Result<usize, DenseError> {
    let mut dim = 1usize;
    for _ in 0..n {
        dim = dim.saturating_mul(d as usize);
        if dim > DENSE_DIM_CAP {
            return Err(DenseError::DimensionCap(dim));
        }
    }
    Ok(dim)
}

/// Single-site Weyl factor w(p, q) = χ(-pq/2) Zᵖ Xᑫ as a d×d matrix.
fn single_site_weyl(p: u8, q: u8, d: u8) -> DMatrix<Complex64> {
    let half = crate::field::mod_inv(2, d).expect("odd modulus");
    let front = mod_mul(mod_mul(p, q, d), mod_neg(half, d), d); // -pq/2 mod d
    let mut m = DMatrix::zeros(d as usize, d as usize);
    for k in 0..d {
        let row = mod_add(k, q, d);
        let phase = mod_add(mod_mul(p, row, d), front, d);
        m[(row as usize, k as usize)] = chi(phase as i64, d);
    }
    m
}

impl DenseOperator {
    pub fn identity(n: usize, d: u8) -> Result<Self, DenseError> {
        let dim = dim_checked(n, d)?;
        Ok(Self {
            matrix: DMatrix::identity(dim, dim),
            n,
            d,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix,
            n: self.n,
            d: self.d,
        }
    }

    pub fn dagger(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
            n: self.n,
            d: self.d,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (&self.matrix - &other.matrix).norm() < tol
    }

    /// True when `self = χ^k · other` for some exponent k; returns the k.
    pub fn proportional_by_chi(&self, other: &Self, tol: f64) -> Option<u8> {
        (0..self.d).find(|&k| {
            let scaled = &other.matrix * chi(k as i64, self.d);
            (&self.matrix - scaled).norm() < tol
        })
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = &self.matrix * self.matrix.adjoint();
        (&prod - DMatrix::<Complex64>::identity(self.dim(), self.dim())).norm() < tol
    }
}

/// Dense matrix of a Weyl string, including its χ-exponent.
pub fn dense_weyl(v: &WeylVector) -> Result<DenseOperator, DenseError> {
    let d = v.modulus();
    let dim = dim_checked(v.sites(), d)?;
    let mut matrix = DMatrix::from_element(1, 1, chi(v.phase_exp() as i64, d));
    for i in 0..v.sites() {
        let (p, q) = v.site(i);
        matrix = matrix.kronecker(&single_site_weyl(p, q, d));
    }
    debug_assert_eq!(matrix.nrows(), dim);
    Ok(DenseOperator {
        matrix,
        n: v.sites(),
        d,
    })
}

/// Dense unitary of a Clifford element, unique up to global phase.
///
/// µ(S) is recovered as the nonzero intertwiner T = Σ_v W(Sv) A W(v)†,
/// normalized to a unitary; the displacement multiplies W(a) on the left.
/// Cost grows as d^{3n}·d^{2n}, so this is for the oracle regime only.
pub fn dense_clifford(c: &SymplecticClifford) -> Result<DenseOperator, DenseError> {
    let d = c.modulus();
    let n = c.sites();
    let dim = dim_checked(n, d)?;
    // A fixed, generic seed matrix keeps the construction deterministic;
    // fall back to a shifted seed in the measure-zero failure case.
    for attempt in 0..4u32 {
        let mut seed = DMatrix::zeros(dim, dim);
        for r in 0..dim {
            for col in 0..dim {
                let x = (r * 31 + col * 17 + attempt as usize * 101) % 97;
                let y = (r * 13 + col * 71 + attempt as usize * 57) % 89;
                seed[(r, col)] = Complex64::new(1.0 + x as f64, y as f64 - 44.0);
            }
        }
        let mut t = DMatrix::<Complex64>::zeros(dim, dim);
        let mut counter = vec![0u8; 2 * n];
        loop {
            let v = WeylVector::from_components(counter.clone(), 0, d).expect("valid");
            let sv_comps = c.symplectic().matvec(v.components()).expect("shape");
            let sv = WeylVector::from_components(sv_comps, 0, d).expect("valid");
            let wv = dense_weyl(&v)?;
            let wsv = dense_weyl(&sv)?;
            t += &wsv.matrix * &seed * wv.matrix.adjoint();
            // Odometer over GF(d)^{2n}.
            let mut k = 0;
            while k < counter.len() {
                counter[k] += 1;
                if counter[k] < d {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
            if k == counter.len() {
                break;
            }
        }
        let gram = t.adjoint() * &t;
        let scale = gram.trace().re / dim as f64;
        if scale < 1e-9 {
            continue;
        }
        let mu = t / Complex64::new(scale.sqrt(), 0.0);
        let mut a_comps = c.displacement().to_vec();
        a_comps.iter_mut().for_each(|x| *x %= d);
        let wa = dense_weyl(&WeylVector::from_components(a_comps, 0, d).expect("valid"))?;
        let u = DenseOperator {
            matrix: wa.matrix * mu,
            n,
            d,
        };
        if u.is_unitary(1e-6) {
            return Ok(u);
        }
    }
    Err(DenseError::ZeroIntertwiner)
}

/// Iterate over all d^{k_gen} stabilizer group elements with exact phases.
fn for_each_group_element(
    t: &StabilizerTableau,
    mut f: impl FnMut(&WeylVector),
) {
    let k = t.num_generators();
    let d = t.modulus();
    let mut coeffs = vec![0u8; k];
    loop {
        let mut elem = WeylVector::identity(t.sites(), d).expect("valid");
        for (r, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                elem = elem.multiply(&t.row_weyl(r).pow(c)).expect("same field");
            }
        }
        f(&elem);
        let mut i = 0;
        while i < k {
            coeffs[i] += 1;
            if coeffs[i] < d {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
}

/// Π(M, v) = |M|⁻¹ Σ_m χ(…) w(m): the projector onto the stabilized
/// subspace, with phases taken from the tableau rows.
pub fn dense_projector(t: &StabilizerTableau) -> Result<DenseOperator, DenseError> {
    let d = t.modulus();
    let dim = dim_checked(t.sites(), d)?;
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    let mut err = None;
    for_each_group_element(t, |elem| {
        if err.is_some() {
            return;
        }
        match dense_weyl(elem) {
            Ok(w) => acc += w.matrix,
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let group_size = (d as f64).powi(t.num_generators() as i32);
    Ok(DenseOperator {
        matrix: acc / Complex64::new(group_size, 0.0),
        n: t.sites(),
        d,
    })
}

/// State vector of a pure tableau, recovered from Π|b⟩ for the first basis
/// vector with a nonzero image. Weyl strings act monomially on basis
/// states, so this runs in d^{k_gen}·n time rather than d^{2n}.
pub fn dense_state(t: &StabilizerTableau) -> Result<DVector<Complex64>, DenseError> {
    if !t.is_pure() {
        return Err(DenseError::NotPure);
    }
    let d = t.modulus();
    let n = t.sites();
    let dim = dim_checked(n, d)?;
    let half = crate::field::mod_inv(2, d).expect("odd modulus");
    for basis in 0..dim {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        // Digits of the basis index, site 0 most significant.
        let mut digits = vec![0u8; n];
        let mut rest = basis;
        for i in (0..n).rev() {
            digits[i] = (rest % d as usize) as u8;
            rest /= d as usize;
        }
        for_each_group_element(t, |elem| {
            // w(v)|k⟩: site-wise w(p,q)|k⟩ = χ(-pq/2 + p(k+q)) |k+q⟩.
            let mut phase = elem.phase_exp();
            let mut target = 0usize;
            for (i, &ki) in digits.iter().enumerate() {
                let (p, q) = elem.site(i);
                let shifted = mod_add(ki, q, d);
                let site_phase = mod_add(
                    mod_mul(p, shifted, d),
                    mod_mul(mod_mul(p, q, d), mod_neg(half, d), d),
                    d,
                );
                phase = mod_add(phase, site_phase, d);
                target = target * d as usize + shifted as usize;
            }
            amps[target] += chi(phase as i64, d);
        });
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq > 1e-9 {
            let norm = norm_sq.sqrt();
            let v = DVector::from_vec(amps) / Complex64::new(norm, 0.0);
            return Ok(v);
        }
    }
    unreachable!("a pure stabilizer projector has rank 1, some basis image is nonzero")
}

/// Von Neumann entropy of a region of a pure tableau, in units of log d.
///
/// The state is reshaped into a region × complement matrix whose squared
/// singular values are the reduced spectrum.
pub fn dense_entropy(t: &StabilizerTableau, region: &RegionMask) -> Result<f64, DenseError> {
    let psi = dense_state(t)?;
    let d = t.modulus() as usize;
    let n = t.sites();
    let a_sites: Vec<usize> = region.indices().to_vec();
    let b_sites: Vec<usize> = (0..n).filter(|s| !region.contains(*s)).collect();
    let dim_a = d.pow(a_sites.len() as u32);
    let dim_b = d.pow(b_sites.len() as u32);
    let mut m = DMatrix::<Complex64>::zeros(dim_a, dim_b);
    for (idx, amp) in psi.iter().enumerate() {
        let mut digits = vec![0usize; n];
        let mut rest = idx;
        for i in (0..n).rev() {
            digits[i] = rest % d;
            rest /= d;
        }
        let a_idx = a_sites.iter().fold(0usize, |acc, &s| acc * d + digits[s]);
        let b_idx = b_sites.iter().fold(0usize, |acc, &s| acc * d + digits[s]);
        m[(a_idx, b_idx)] += amp;
    }
    let svd = m.svd(false, false);
    let mut entropy = 0.0;
    for s in svd.singular_values.iter() {
        let lambda = s * s;
        if lambda > 1e-12 {
            entropy -= lambda * lambda.ln();
        }
    }
    Ok(entropy / (d as f64).ln())
}
