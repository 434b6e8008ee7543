//! Generalized Pauli (Weyl) strings in the symplectic vector picture.
//!
//! A Weyl operator on n qudits of odd prime dimension d is labeled by a
//! vector v ∈ GF(d)^{2n} laid out as (p₁, q₁, …, pₙ, qₙ): the pᵢ are clock
//! (Z) exponents and the qᵢ shift (X) exponents. With the symmetric phase
//! convention w(p, q) = χ(-p·q/2) Zᵖ Xᑫ, where χ(k) = exp(2πik/d), products
//! close up to powers of χ:
//!
//!   w(v) w(u) = χ(⟦v,u⟧/2) w(v + u),
//!
//! with ⟦v,u⟧ = vᵀJu the symplectic product for J = ⊕ₙ [[0,1],[-1,0]].
//! Two Weyl operators commute exactly when their symplectic product
//! vanishes. A `WeylVector` carries the label v together with a χ-exponent,
//! which is all the phase bookkeeping stabilizer calculations need for odd d.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{
    mod_add, mod_inv, mod_mul, mod_neg, mod_sub, FieldError, FieldMatrix, FieldScalar,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("site count mismatch: {0} vs {1}")]
    SiteMismatch(usize, usize),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("cannot parse Weyl string: {0}")]
    Parse(String),
}

/// The standard symplectic form J = ⊕ₙ [[0,1],[-1,0]] on GF(d)^{2n}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn sites(&self) -> usize {
        self.n
    }

    /// J as an explicit matrix.
    pub fn matrix(&self, modulus: u8) -> Result<FieldMatrix, FieldError> {
        let mut j = FieldMatrix::zeros(2 * self.n, 2 * self.n, modulus)?;
        for i in 0..self.n {
            j.set(2 * i, 2 * i + 1, 1);
            j.set(2 * i + 1, 2 * i, modulus - 1);
        }
        Ok(j)
    }

    /// ⟦v, u⟧ = vᵀJu on raw component slices.
    pub fn product_raw(&self, v: &[u8], u: &[u8], d: u8) -> u8 {
        debug_assert_eq!(v.len(), 2 * self.n);
        debug_assert_eq!(u.len(), 2 * self.n);
        let mut acc = 0u8;
        for i in 0..self.n {
            let t = mod_sub(
                mod_mul(v[2 * i], u[2 * i + 1], d),
                mod_mul(v[2 * i + 1], u[2 * i], d),
                d,
            );
            acc = mod_add(acc, t, d);
        }
        acc
    }
}

/// Convenience for ⟦v, u⟧ on raw slices of length 2n.
pub(crate) fn symplectic_product_raw(v: &[u8], u: &[u8], d: u8) -> u8 {
    SymplecticForm::new(v.len() / 2).product_raw(v, u, d)
}

/// A Weyl string: components in GF(d)^{2n} plus a χ-exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylVector {
    components: Vec<u8>,
    phase_exp: u8,
    modulus: u8,
}

impl WeylVector {
    /// The identity string on n sites.
    pub fn identity(n: usize, modulus: u8) -> Result<Self, WeylError> {
        Self::from_components(vec![0; 2 * n], 0, modulus)
    }

    pub fn from_components(
        components: Vec<u8>,
        phase_exp: u8,
        modulus: u8,
    ) -> Result<Self, WeylError> {
        FieldScalar::new(0, modulus)?; // validates the modulus
        if components.len() % 2 != 0 {
            return Err(WeylError::Parse(
                "component vector must have even length".to_string(),
            ));
        }
        let d = modulus;
        Ok(Self {
            components: components.into_iter().map(|x| x % d).collect(),
            phase_exp: phase_exp % d,
            modulus,
        })
    }

    /// A single-site factor Zᵖ Xᑫ at `site`, identity elsewhere.
    pub fn single_site(
        n: usize,
        site: usize,
        p: i64,
        q: i64,
        modulus: u8,
    ) -> Result<Self, WeylError> {
        let mut components = vec![0u8; 2 * n];
        let d = modulus as i64;
        components[2 * site] = p.rem_euclid(d) as u8;
        components[2 * site + 1] = q.rem_euclid(d) as u8;
        Self::from_components(components, 0, modulus)
    }

    pub fn sites(&self) -> usize {
        self.components.len() / 2
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    pub fn components(&self) -> &[u8] {
        &self.components
    }

    /// Clock/shift exponents (p, q) at one site.
    pub fn site(&self, i: usize) -> (u8, u8) {
        (self.components[2 * i], self.components[2 * i + 1])
    }

    pub fn with_phase(mut self, phase_exp: u8) -> Self {
        self.phase_exp = phase_exp % self.modulus;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|&x| x == 0)
    }

    fn compatible(&self, other: &Self) -> Result<(), WeylError> {
        if self.modulus != other.modulus {
            return Err(WeylError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.sites() != other.sites() {
            return Err(WeylError::SiteMismatch(self.sites(), other.sites()));
        }
        Ok(())
    }

    /// ⟦v, w⟧ = vᵀJw; antisymmetric, zero iff the operators commute.
    pub fn symplectic_product(&self, other: &Self) -> Result<FieldScalar, WeylError> {
        self.compatible(other)?;
        let value = symplectic_product_raw(&self.components, &other.components, self.modulus);
        Ok(FieldScalar::new(value as i64, self.modulus)?)
    }

    /// Operator product: components add, phases pick up χ(⟦v,w⟧/2).
    pub fn multiply(&self, other: &Self) -> Result<Self, WeylError> {
        self.compatible(other)?;
        let d = self.modulus;
        let sp = symplectic_product_raw(&self.components, &other.components, d);
        let half = mod_inv(2, d).expect("odd modulus");
        let phase_exp = mod_add(
            mod_add(self.phase_exp, other.phase_exp, d),
            mod_mul(half, sp, d),
            d,
        );
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(&a, &b)| mod_add(a, b, d))
            .collect();
        Ok(Self {
            components,
            phase_exp,
            modulus: d,
        })
    }

    /// The operator inverse w(v)⁻¹ = w(-v) with the opposite phase.
    pub fn inverse(&self) -> Self {
        let d = self.modulus;
        Self {
            components: self.components.iter().map(|&x| mod_neg(x, d)).collect(),
            phase_exp: mod_neg(self.phase_exp, d),
            modulus: d,
        }
    }

    /// Integer power of the operator; the symplectic correction vanishes
    /// against itself, so components and phase just scale.
    pub fn pow(&self, e: u8) -> Self {
        let d = self.modulus;
        let e = e % d;
        Self {
            components: self.components.iter().map(|&x| mod_mul(x, e, d)).collect(),
            phase_exp: mod_mul(self.phase_exp, e, d),
            modulus: d,
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, WeylError> {
        Ok(self.symplectic_product(other)?.is_zero())
    }

    /// Number of sites carrying a non-identity factor. Phase-only operators
    /// have weight 0.
    pub fn weight(&self) -> usize {
        self.components
            .chunks_exact(2)
            .filter(|c| c[0] != 0 || c[1] != 0)
            .count()
    }
}

impl fmt::Display for WeylVector {
    /// Renders e.g. `Z^1X^2 ⊗ I ⊗ X^1`, with a `χ^k·` prefix for a
    /// nontrivial phase exponent. `FromStr` accepts the same format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase_exp != 0 {
            write!(f, "χ^{}·", self.phase_exp)?;
        }
        for i in 0..self.sites() {
            if i > 0 {
                write!(f, " ⊗ ")?;
            }
            let (p, q) = self.site(i);
            match (p, q) {
                (0, 0) => write!(f, "I")?,
                (p, 0) => write!(f, "Z^{p}")?,
                (0, q) => write!(f, "X^{q}")?,
                (p, q) => write!(f, "Z^{p}X^{q}")?,
            }
        }
        Ok(())
    }
}

/// Parsing needs the modulus, which the display form does not carry; strings
/// round-trip through [`WeylVector::parse`].
impl WeylVector {
    pub fn parse(text: &str, modulus: u8) -> Result<Self, WeylError> {
        let text = text.trim();
        let (phase, rest) = match text.split_once('·') {
            Some((head, rest)) => {
                let exp = head
                    .trim()
                    .strip_prefix("χ^")
                    .ok_or_else(|| WeylError::Parse(format!("bad phase prefix in {text:?}")))?;
                let exp: u8 = exp
                    .parse()
                    .map_err(|_| WeylError::Parse(format!("bad phase exponent in {text:?}")))?;
                (exp, rest)
            }
            None => (0, text),
        };
        let mut components = Vec::new();
        for factor in rest.split('⊗') {
            let factor = factor.trim();
            let (p, q) = parse_site(factor)?;
            components.push(p);
            components.push(q);
        }
        Self::from_components(components, phase, modulus)
    }
}

fn parse_site(factor: &str) -> Result<(u8, u8), WeylError> {
    if factor == "I" {
        return Ok((0, 0));
    }
    let err = || WeylError::Parse(format!("bad site factor {factor:?}"));
    let mut p = 0u8;
    let mut q = 0u8;
    let mut rest = factor;
    if let Some(tail) = rest.strip_prefix("Z^") {
        let end = tail.find('X').unwrap_or(tail.len());
        p = tail[..end].parse().map_err(|_| err())?;
        rest = &tail[end..];
    }
    if let Some(tail) = rest.strip_prefix("X^") {
        q = tail.parse().map_err(|_| err())?;
        rest = "";
    }
    if !rest.is_empty() || (p == 0 && q == 0) {
        return Err(err());
    }
    Ok((p, q))
}

impl FromStr for WeylVector {
    type Err = WeylError;

    /// Parses with the smallest modulus that fits the exponents is not
    /// well-defined, so `from_str` defaults to d = 3; prefer
    /// [`WeylVector::parse`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, 3)
    }
}

/// Uniformly random Weyl string (components and phase), for tests.
#[cfg(test)]
pub(crate) fn random_weyl(n: usize, d: u8, rng: &mut impl rand::Rng) -> WeylVector {
    let components = (0..2 * n).map(|_| rng.gen_range(0..d)).collect();
    WeylVector::from_components(components, rng.gen_range(0..d), d).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zvec(d: u8) -> WeylVector {
        WeylVector::single_site(1, 0, 1, 0, d).unwrap()
    }

    fn xvec(d: u8) -> WeylVector {
        WeylVector::single_site(1, 0, 0, 1, d).unwrap()
    }

    #[test]
    fn canonical_pair_has_unit_product() {
        let z = zvec(3);
        let x = xvec(3);
        assert_eq!(z.symplectic_product(&x).unwrap().value(), 1);
        assert_eq!(x.symplectic_product(&z).unwrap().value(), 2); // -1 mod 3
        assert_eq!(z.symplectic_product(&z).unwrap().value(), 0);
    }

    #[test]
    fn disjoint_support_commutes() {
        let z1 = WeylVector::single_site(2, 0, 1, 0, 3).unwrap();
        let x2 = WeylVector::single_site(2, 1, 0, 1, 3).unwrap();
        assert_eq!(z1.symplectic_product(&x2).unwrap().value(), 0);
        assert!(z1.commutes(&x2).unwrap());
        assert!(!zvec(3).commutes(&xvec(3)).unwrap());
        let id = WeylVector::identity(1, 3).unwrap();
        assert!(zvec(3).commutes(&id).unwrap());
    }

    #[test]
    fn z_times_x_in_dimension_three() {
        // Components add; phase is (d+1)/2 * ⟦v,w⟧ = 2 * 1 mod 3.
        let prod = zvec(3).multiply(&xvec(3)).unwrap();
        assert_eq!(prod.components(), &[1, 1]);
        assert_eq!(prod.phase_exp(), 2);
    }

    #[test]
    fn inverse_cancels() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let v = random_weyl(3, 5, &mut rng);
            let prod = v.multiply(&v.inverse()).unwrap();
            assert!(prod.is_identity());
            assert_eq!(prod.phase_exp(), 0);
        }
    }

    #[test]
    fn weight_counts_nontrivial_sites() {
        assert_eq!(WeylVector::identity(4, 3).unwrap().weight(), 0);
        let v = WeylVector::from_components(vec![1, 0, 0, 0, 0, 1], 0, 3).unwrap();
        assert_eq!(v.weight(), 2); // Z ⊗ I ⊗ X
        let phase_only = WeylVector::identity(2, 3).unwrap().with_phase(1);
        assert_eq!(phase_only.weight(), 0);
    }

    #[test]
    fn random_single_site_factor_nontrivial_with_probability_eight_ninths() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let samples = 40_000;
        let nontrivial = (0..samples)
            .filter(|_| random_weyl(1, 3, &mut rng).weight() == 1)
            .count();
        let p = nontrivial as f64 / samples as f64;
        assert!((p - 8.0 / 9.0).abs() < 0.01, "p = {p}");
    }

    #[test]
    fn form_matrix_squares_to_minus_identity() {
        for d in [3u8, 7] {
            let form = SymplecticForm::new(3);
            let j = form.matrix(d).unwrap();
            let j2 = j.matmul(&j).unwrap();
            let minus_i = FieldMatrix::identity(6, d).unwrap().scale(d - 1);
            assert_eq!(j2, minus_i);
            assert_eq!(j.transpose(), j.scale(d - 1));
        }
    }

    #[test]
    fn display_round_trips() {
        let v = WeylVector::from_components(vec![1, 2, 0, 0, 0, 1], 2, 3).unwrap();
        let text = v.to_string();
        assert_eq!(text, "χ^2·Z^1X^2 ⊗ I ⊗ X^1");
        assert_eq!(WeylVector::parse(&text, 3).unwrap(), v);
    }

    #[test]
    fn mismatched_operands_error() {
        let a = WeylVector::identity(2, 3).unwrap();
        let b = WeylVector::identity(3, 3).unwrap();
        assert!(matches!(a.multiply(&b), Err(WeylError::SiteMismatch(2, 3))));
        let c = WeylVector::identity(2, 5).unwrap();
        assert!(matches!(
            a.symplectic_product(&c),
            Err(WeylError::ModulusMismatch(3, 5))
        ));
    }

    proptest! {
        #[test]
        fn product_is_bilinear_and_antisymmetric(seed in 0u64..300) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = [3u8, 5, 7][(seed % 3) as usize];
            let u = random_weyl(4, d, &mut rng);
            let v = random_weyl(4, d, &mut rng);
            let w = random_weyl(4, d, &mut rng);
            let uv = u.multiply(&v).unwrap();
            // ⟦u+v, w⟧ = ⟦u,w⟧ + ⟦v,w⟧ (components of uv are u+v).
            let lhs = uv.symplectic_product(&w).unwrap();
            let rhs = u
                .symplectic_product(&w)
                .unwrap()
                .add(&v.symplectic_product(&w).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
            let vw = v.symplectic_product(&w).unwrap();
            let wv = w.symplectic_product(&v).unwrap();
            prop_assert_eq!(vw, wv.neg());
        }

        #[test]
        fn multiplication_is_associative(seed in 0u64..300) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = random_weyl(3, 5, &mut rng);
            let v = random_weyl(3, 5, &mut rng);
            let w = random_weyl(3, 5, &mut rng);
            let left = u.multiply(&v).unwrap().multiply(&w).unwrap();
            let right = u.multiply(&v.multiply(&w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn display_round_trips_randomly(seed in 0u64..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = [3u8, 5, 11][(seed % 3) as usize];
            let v = random_weyl(4, d, &mut rng);
            let text = v.to_string();
            prop_assert_eq!(WeylVector::parse(&text, d).unwrap(), v);
        }
    }
}
