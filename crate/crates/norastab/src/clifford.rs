//! Clifford group elements in the projective symplectic representation.
//!
//! Modulo a global phase, a Clifford unitary on n qudits is a pair (S, a)
//! of a symplectic matrix S ∈ Sp(2n, F_d) and a displacement a ∈ GF(d)^{2n},
//! acting on Weyl labels as
//!
//!   U w(v) U† = χ(⟦a, Sv⟧) w(Sv).
//!
//! Uniform sampling works one hyperbolic pair at a time: map the standard
//! pair (e₁, f₁) to a uniformly chosen pair (v, w) with ⟦v,w⟧ = 1 using
//! symplectic transvections T_h(x) = x + λ⟦x,h⟧h, then recurse on the
//! symplectic complement. The pair count per level times the recursion
//! reproduces the group order d^{n²}·∏(d^{2i}-1), and every coset gets the
//! same number of construction paths, so the output is uniform. Only the
//! χ-part of composition phases is tracked; the leftover scalar cocycle of
//! the projective representation never enters stabilizer bookkeeping.

use rand::Rng;

use thiserror::Error;

use crate::field::{mod_add, mod_inv, mod_mul, mod_neg, FieldError, FieldMatrix};
use crate::weyl::{symplectic_product_raw, SymplecticForm, WeylError, WeylVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("site count mismatch: {0} vs {1}")]
    SiteMismatch(usize, usize),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    #[error("gate site {0} out of range for {1} sites")]
    SiteOutOfRange(usize, usize),
    #[error("duplicate gate site {0}")]
    DuplicateSite(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A Clifford element modulo global phase: symplectic matrix plus
/// displacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticClifford {
    s: FieldMatrix,
    a: Vec<u8>,
    n: usize,
    modulus: u8,
}

impl SymplecticClifford {
    pub fn identity(n: usize, modulus: u8) -> Result<Self, CliffordError> {
        Ok(Self {
            s: FieldMatrix::identity(2 * n, modulus)?,
            a: vec![0; 2 * n],
            n,
            modulus,
        })
    }

    pub fn from_parts(s: FieldMatrix, a: Vec<u8>, modulus: u8) -> Result<Self, CliffordError> {
        if s.rows() != s.cols() || s.rows() % 2 != 0 || a.len() != s.rows() {
            return Err(CliffordError::Field(FieldError::DimensionMismatch(
                format!("S is {}x{}, a has {}", s.rows(), s.cols(), a.len()),
            )));
        }
        if s.modulus() != modulus {
            return Err(CliffordError::ModulusMismatch(s.modulus(), modulus));
        }
        let n = s.rows() / 2;
        let a = a.into_iter().map(|x| x % modulus).collect();
        Ok(Self { s, a, n, modulus })
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn symplectic(&self) -> &FieldMatrix {
        &self.s
    }

    pub fn displacement(&self) -> &[u8] {
        &self.a
    }

    /// Check the symplectic condition SᵀJS = J.
    pub fn validate(&self) -> bool {
        let form = SymplecticForm::new(self.n);
        let j = match form.matrix(self.modulus) {
            Ok(j) => j,
            Err(_) => return false,
        };
        let st = self.s.transpose();
        match st.matmul(&j).and_then(|m| m.matmul(&self.s)) {
            Ok(stjs) => stjs == j,
            Err(_) => false,
        }
    }

    /// Conjugation action on a Weyl label: components S·v, phase picks up
    /// χ(⟦a, Sv⟧).
    pub fn apply_to_weyl(&self, v: &WeylVector) -> Result<WeylVector, CliffordError> {
        if v.sites() != self.n {
            return Err(CliffordError::SiteMismatch(self.n, v.sites()));
        }
        if v.modulus() != self.modulus {
            return Err(CliffordError::ModulusMismatch(self.modulus, v.modulus()));
        }
        let d = self.modulus;
        let sv = self.s.matvec(v.components())?;
        let phase = mod_add(
            v.phase_exp(),
            symplectic_product_raw(&self.a, &sv, d),
            d,
        );
        Ok(WeylVector::from_components(sv, phase, d)?)
    }

    /// Uniformly random Clifford: S uniform over Sp(2n, F_d), displacement
    /// uniform over GF(d)^{2n}.
    pub fn random(n: usize, modulus: u8, rng: &mut impl Rng) -> Result<Self, CliffordError> {
        let s = random_symplectic_matrix(n, modulus, rng)?;
        let a = (0..2 * n).map(|_| rng.gen_range(0..modulus)).collect();
        Ok(Self {
            s,
            a,
            n,
            modulus,
        })
    }

    /// Embed a q-site element into `n` sites, acting on the given (ordered,
    /// distinct) site indices and as the identity elsewhere.
    pub fn embed(&self, sites: &[usize], n: usize) -> Result<Self, CliffordError> {
        if sites.len() != self.n {
            return Err(CliffordError::SiteMismatch(self.n, sites.len()));
        }
        let mut seen = vec![false; n];
        for &s in sites {
            if s >= n {
                return Err(CliffordError::SiteOutOfRange(s, n));
            }
            if seen[s] {
                return Err(CliffordError::DuplicateSite(s));
            }
            seen[s] = true;
        }
        let mut s_emb = FieldMatrix::identity(2 * n, self.modulus)?;
        let mut a_emb = vec![0u8; 2 * n];
        for (ti, &gi) in sites.iter().enumerate() {
            for c in 0..2 {
                a_emb[2 * gi + c] = self.a[2 * ti + c];
                for (tj, &gj) in sites.iter().enumerate() {
                    for r in 0..2 {
                        s_emb.set(2 * gi + c, 2 * gj + r, self.s.get(2 * ti + c, 2 * tj + r));
                    }
                }
            }
        }
        Ok(Self {
            s: s_emb,
            a: a_emb,
            n,
            modulus: self.modulus,
        })
    }

    /// Compose so that `compose(c2, c1)` acts like "c1 first, then c2":
    /// S = S₂S₁ and a = S₂a₁ + a₂, which matches sequential application on
    /// every Weyl label exactly (the residual global phase is dropped).
    pub fn compose(c2: &Self, c1: &Self) -> Result<Self, CliffordError> {
        if c1.n != c2.n {
            return Err(CliffordError::SiteMismatch(c2.n, c1.n));
        }
        if c1.modulus != c2.modulus {
            return Err(CliffordError::ModulusMismatch(c2.modulus, c1.modulus));
        }
        let d = c1.modulus;
        let s = c2.s.matmul(&c1.s)?;
        let s2a1 = c2.s.matvec(&c1.a)?;
        let a = s2a1
            .iter()
            .zip(&c2.a)
            .map(|(&x, &y)| mod_add(x, y, d))
            .collect();
        Ok(Self {
            s,
            a,
            n: c1.n,
            modulus: d,
        })
    }

    /// Inverse via S⁻¹ = -J Sᵀ J (no general matrix inversion needed).
    pub fn inverse(&self) -> Result<Self, CliffordError> {
        let d = self.modulus;
        let j = SymplecticForm::new(self.n).matrix(d)?;
        let s_inv = j
            .matmul(&self.s.transpose())?
            .matmul(&j)?
            .scale(d - 1);
        let a_inv: Vec<u8> = s_inv
            .matvec(&self.a)?
            .into_iter()
            .map(|x| mod_neg(x, d))
            .collect();
        Ok(Self {
            s: s_inv,
            a: a_inv,
            n: self.n,
            modulus: d,
        })
    }
}

/// A symplectic transvection x ↦ x + λ⟦x,h⟧h.
#[derive(Debug, Clone)]
struct Transvection {
    h: Vec<u8>,
    lambda: u8,
}

impl Transvection {
    fn apply(&self, x: &mut [u8], d: u8) {
        let c = mod_mul(symplectic_product_raw(x, &self.h, d), self.lambda, d);
        if c == 0 {
            return;
        }
        for (xi, &hi) in x.iter_mut().zip(&self.h) {
            *xi = mod_add(*xi, mod_mul(c, hi, d), d);
        }
    }
}

/// A unit vector with nonzero symplectic product against `x`: the conjugate
/// partner of the first nonzero coordinate.
fn conjugate_unit(x: &[u8]) -> Vec<u8> {
    let j = x.iter().position(|&c| c != 0).expect("nonzero vector");
    let mut u = vec![0u8; x.len()];
    u[j ^ 1] = 1;
    u
}

fn vec_add(a: &[u8], b: &[u8], d: u8) -> Vec<u8> {
    a.iter().zip(b).map(|(&x, &y)| mod_add(x, y, d)).collect()
}

/// Transvections mapping x to y (both nonzero); at most two are needed.
fn transvections_between(x: &[u8], y: &[u8], d: u8) -> Vec<Transvection> {
    if x == y {
        return Vec::new();
    }
    let sp = symplectic_product_raw(x, y, d);
    if sp != 0 {
        let h: Vec<u8> = y.iter().zip(x).map(|(&a, &b)| crate::field::mod_sub(a, b, d)).collect();
        return vec![Transvection {
            h,
            lambda: mod_inv(sp, d).expect("nonzero product"),
        }];
    }
    // ⟦x,y⟧ = 0: route through z with ⟦x,z⟧ ≠ 0 ≠ ⟦z,y⟧.
    let u = conjugate_unit(x);
    let v = conjugate_unit(y);
    let z = if symplectic_product_raw(x, &v, d) != 0 {
        v
    } else if symplectic_product_raw(y, &u, d) != 0 {
        u
    } else {
        vec_add(&u, &v, d)
    };
    let mut out = transvections_between(x, &z, d);
    let mut mid = x.to_vec();
    for t in &out {
        t.apply(&mut mid, d);
    }
    out.extend(transvections_between(&mid, y, d));
    out
}

/// Transvections fixing `v` that map x to w, where ⟦v,x⟧ = ⟦v,w⟧ = 1.
fn transvections_fixing(v: &[u8], x: &[u8], w: &[u8], d: u8) -> Vec<Transvection> {
    if x == w {
        return Vec::new();
    }
    let sp = symplectic_product_raw(x, w, d);
    if sp != 0 {
        // h = w - x has ⟦v,h⟧ = 1 - 1 = 0, so v is fixed.
        let h: Vec<u8> = w.iter().zip(x).map(|(&a, &b)| crate::field::mod_sub(a, b, d)).collect();
        return vec![Transvection {
            h,
            lambda: mod_inv(sp, d).expect("nonzero product"),
        }];
    }
    // Route through z = x + v: ⟦x,z⟧ = ⟦x,v⟧ = -1 ≠ 0, ⟦z,w⟧ = ⟦x,w⟧ + ⟦v,w⟧
    // = 1 ≠ 0, and both hops keep ⟦v,·⟧ differences zero.
    let z = vec_add(x, v, d);
    let mut out = transvections_fixing(v, x, &z, d);
    let mut mid = x.to_vec();
    for t in &out {
        t.apply(&mut mid, d);
    }
    out.extend(transvections_fixing(v, &mid, w, d));
    out
}

/// Uniform element of Sp(2n, F_d).
pub fn random_symplectic_matrix(
    n: usize,
    modulus: u8,
    rng: &mut impl Rng,
) -> Result<FieldMatrix, CliffordError> {
    let d = modulus;
    let mut m = FieldMatrix::identity(2 * n, d)?;
    // Level i chooses the images of (e_{2i}, e_{2i+1}) inside the subspace
    // supported on coordinates [2i, 2n); the transvections at that level are
    // the coset representative, applied to the already-built inner block.
    let mut levels: Vec<Vec<Transvection>> = Vec::with_capacity(n);
    for i in 0..n {
        let offset = 2 * i;
        // Uniform nonzero v in the subspace.
        let mut v = vec![0u8; 2 * n];
        loop {
            for c in &mut v[offset..] {
                *c = rng.gen_range(0..d);
            }
            if v[offset..].iter().any(|&c| c != 0) {
                break;
            }
        }
        // w0 with ⟦v,w0⟧ = 1, then a uniform shift along ker⟦v,·⟧ picks w
        // uniformly among the d^{2(n-i)-1} valid partners.
        let mut w0 = vec![0u8; 2 * n];
        {
            let unit = conjugate_unit(&v[offset..]);
            w0[offset..].copy_from_slice(&unit);
            let sp = symplectic_product_raw(&v, &w0, d);
            let inv = mod_inv(sp, d).expect("conjugate unit has nonzero product");
            for c in &mut w0[offset..] {
                *c = mod_mul(*c, inv, d);
            }
        }
        debug_assert_eq!(symplectic_product_raw(&v, &w0, d), 1);
        let mut t = vec![0u8; 2 * n];
        for c in &mut t[offset..] {
            *c = rng.gen_range(0..d);
        }
        // w = w0 + (t - ⟦v,t⟧ w0)
        let coeff = symplectic_product_raw(&v, &t, d);
        let w: Vec<u8> = (0..2 * n)
            .map(|j| {
                let shift = mod_mul(coeff, w0[j], d);
                mod_add(w0[j], mod_add(t[j], mod_neg(shift, d), d), d)
            })
            .collect();
        debug_assert_eq!(symplectic_product_raw(&v, &w, d), 1);

        let mut e1 = vec![0u8; 2 * n];
        e1[offset] = 1;
        let mut chain = transvections_between(&e1, &v, d);
        let mut f_img = vec![0u8; 2 * n];
        f_img[offset + 1] = 1;
        for tv in &chain {
            tv.apply(&mut f_img, d);
        }
        chain.extend(transvections_fixing(&v, &f_img, &w, d));
        levels.push(chain);
    }
    // Compose levels innermost-first so each chain multiplies on the left.
    for i in (0..n).rev() {
        for col in 0..2 * n {
            let mut column: Vec<u8> = (0..2 * n).map(|r| m.get(r, col)).collect();
            for tv in &levels[i] {
                tv.apply(&mut column, d);
            }
            for (r, &val) in column.iter().enumerate() {
                m.set(r, col, val);
            }
        }
    }
    Ok(m)
}

/// |Sp(2n, F_d)| = d^{n²} ∏_{i=1..n} (d^{2i} - 1).
pub fn symplectic_group_order(n: u32, d: u64) -> u128 {
    let mut order: u128 = (d as u128).pow(n * n);
    for i in 1..=n {
        order *= (d as u128).pow(2 * i) - 1;
    }
    order
}
