//! Exact arithmetic and linear algebra over the prime field GF(d) for odd
//! prime d.
//!
//! Everything downstream (Weyl strings, symplectic matrices, stabilizer
//! tableaus) is built on matrices over GF(d). Scalars are stored as machine
//! integers already reduced mod d; the modulus is carried once per matrix so
//! the elimination kernels stay tight. The characteristic-2 case is rejected
//! on construction: the phase conventions used by the rest of the crate need
//! an invertible 2, i.e. 1/2 = (d + 1)/2.

use thiserror::Error;

/// Errors from field arithmetic and matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    /// The modulus is not an odd prime.
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u64),
    /// Two operands live over different fields.
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u8, u8),
    /// Zero has no multiplicative inverse.
    #[error("zero is not invertible")]
    NotInvertible,
    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Trial-division primality check; moduli are small (a machine byte).
pub fn is_odd_prime(d: u64) -> bool {
    if d < 3 || d % 2 == 0 {
        return false;
    }
    let mut f = 3;
    while f * f <= d {
        if d % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

fn check_modulus(d: u8) -> Result<(), FieldError> {
    if is_odd_prime(d as u64) {
        Ok(())
    } else {
        Err(FieldError::InvalidModulus(d as u64))
    }
}

/// An element of GF(d), always reduced to `[0, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u8,
    modulus: u8,
}

impl FieldScalar {
    /// Reduce an arbitrary signed integer into GF(d).
    pub fn new(value: i64, modulus: u8) -> Result<Self, FieldError> {
        check_modulus(modulus)?;
        let d = modulus as i64;
        Ok(Self {
            value: value.rem_euclid(d) as u8,
            modulus,
        })
    }

    pub fn value(&self) -> u8 {
        self.value
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(FieldError::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(Self {
            value: mod_add(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(Self {
            value: mod_sub(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(Self {
            value: mod_mul(self.value, other.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            value: mod_neg(self.value, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn mul_inv(&self) -> Result<Self, FieldError> {
        Ok(Self {
            value: mod_inv(self.value, self.modulus)?,
            modulus: self.modulus,
        })
    }
}

// Raw mod-d helpers on reduced u8 values. The add/sub paths avoid division so
// they vectorize inside the elimination kernels.

#[inline]
pub(crate) fn mod_add(a: u8, b: u8, d: u8) -> u8 {
    let t = a + b;
    if t >= d {
        t - d
    } else {
        t
    }
}

#[inline]
pub(crate) fn mod_sub(a: u8, b: u8, d: u8) -> u8 {
    if a >= b {
        a - b
    } else {
        a + d - b
    }
}

#[inline]
pub(crate) fn mod_neg(a: u8, d: u8) -> u8 {
    if a == 0 {
        0
    } else {
        d - a
    }
}

#[inline]
pub(crate) fn mod_mul(a: u8, b: u8, d: u8) -> u8 {
    ((a as u16 * b as u16) % d as u16) as u8
}

/// Inverse by Fermat exponentiation; d is prime and tiny.
pub(crate) fn mod_inv(a: u8, d: u8) -> Result<u8, FieldError> {
    if a == 0 {
        return Err(FieldError::NotInvertible);
    }
    let mut acc: u8 = 1;
    let mut base = a;
    let mut exp = d - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, d);
        }
        base = mod_mul(base, base, d);
        exp >>= 1;
    }
    Ok(acc)
}

/// `dst += src` elementwise mod d; both rows already reduced.
#[inline]
fn row_add_assign(dst: &mut [u8], src: &[u8], d: u8) {
    for (x, &s) in dst.iter_mut().zip(src) {
        let t = *x + s;
        *x = if t >= d { t - d } else { t };
    }
}

/// Dense row-major matrix over GF(d) with one shared modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    modulus: u8,
    data: Vec<u8>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u8) -> Result<Self, FieldError> {
        check_modulus(modulus)?;
        Ok(Self {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(n: usize, modulus: u8) -> Result<Self, FieldError> {
        let mut m = Self::zeros(n, n, modulus)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    /// Build from rows of arbitrary integers, reducing each entry mod d.
    pub fn from_rows(rows: &[Vec<i64>], modulus: u8) -> Result<Self, FieldError> {
        check_modulus(modulus)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(FieldError::DimensionMismatch(
                "ragged rows".to_string(),
            ));
        }
        let d = modulus as i64;
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| x.rem_euclid(d) as u8))
            .collect();
        Ok(Self {
            rows: nrows,
            cols: ncols,
            modulus,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u8) {
        self.data[r * self.cols + c] = value % self.modulus;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u8] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self {
            rows: self.cols,
            cols: self.rows,
            modulus: self.modulus,
            data: vec![0; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, FieldError> {
        if self.modulus != other.modulus {
            return Err(FieldError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let d = self.modulus as u64;
        let mut out = Self::zeros(self.rows, other.cols, self.modulus)?;
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: u64 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as u64 * other.get(k, c) as u64;
                }
                out.data[r * other.cols + c] = (acc % d) as u8;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over GF(d).
    pub fn matvec(&self, v: &[u8]) -> Result<Vec<u8>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "{}x{} * vec[{}]",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let d = self.modulus as u64;
        Ok((0..self.rows)
            .map(|r| {
                let acc: u64 = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (acc % d) as u8
            })
            .collect())
    }

    pub fn scale(&self, c: u8) -> Self {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = mod_mul(*x, c, self.modulus);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        if self.modulus != other.modulus {
            return Err(FieldError::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FieldError::DimensionMismatch("matrix add".to_string()));
        }
        let mut out = self.clone();
        row_add_assign(&mut out.data, &other.data, self.modulus);
        Ok(out)
    }

    /// Reduced row echelon form and rank.
    ///
    /// Pivots are the first nonzero entry scanning rows top to bottom within
    /// each column, normalized to 1, with the pivot column cleared above and
    /// below, so the output is the unique RREF of the row space.
    pub fn rref(&self) -> (Self, usize) {
        let mut out = self.clone();
        let pivots = eliminate(
            &mut out.data,
            out.rows,
            out.cols,
            out.cols,
            out.modulus,
            true,
        );
        let rank = pivots.len();
        (out, rank)
    }

    /// Rank by forward elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut scratch = self.data.clone();
        eliminate(
            &mut scratch,
            self.rows,
            self.cols,
            self.cols,
            self.modulus,
            false,
        )
        .len()
    }

    /// Coefficients `c` with `c * self = v`, or `None` when `v` is outside
    /// the row space.
    pub fn solve_in_rowspace(&self, v: &[u8]) -> Result<Option<Vec<u8>>, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::DimensionMismatch(format!(
                "row length {} vs vector {}",
                self.cols,
                v.len()
            )));
        }
        let d = self.modulus;
        let k = self.rows;
        let n = self.cols;
        // Augment with the identity to track the row transform, then reduce
        // with pivots restricted to the original columns.
        let width = n + k;
        let mut aug = vec![0u8; k * width];
        for r in 0..k {
            aug[r * width..r * width + n].copy_from_slice(self.row(r));
            aug[r * width + n + r] = 1;
        }
        let pivots = eliminate(&mut aug, k, width, n, d, true);

        let mut residue: Vec<u8> = v.iter().map(|&x| x % d).collect();
        let mut coeffs = vec![0u8; k];
        for (row, &pcol) in pivots.iter().enumerate() {
            let c = residue[pcol];
            if c == 0 {
                continue;
            }
            let m = mod_neg(c, d); // residue -= c * row
            let r = &aug[row * width..(row + 1) * width];
            for j in 0..n {
                residue[j] = mod_add(residue[j], mod_mul(m, r[j], d), d);
            }
            for (cj, &tj) in coeffs.iter_mut().zip(&r[n..]) {
                *cj = mod_add(*cj, mod_mul(c, tj, d), d);
            }
        }
        if residue.iter().all(|&x| x == 0) {
            Ok(Some(coeffs))
        } else {
            Ok(None)
        }
    }

    /// Forward-eliminate the submatrix formed by gathering `cols` (in the
    /// given order) and report how many pivots land strictly before `split`
    /// and from `split` onward. Used for reduced-group ranks, where column
    /// blocks are "traced out sites first".
    pub fn gathered_block_pivots(&self, cols: &[usize], split: usize) -> (usize, usize) {
        let ncols = cols.len();
        let mut scratch = vec![0u8; self.rows * ncols];
        for r in 0..self.rows {
            let src = self.row(r);
            let dst = &mut scratch[r * ncols..(r + 1) * ncols];
            for (j, &c) in cols.iter().enumerate() {
                dst[j] = src[c];
            }
        }
        let pivots = eliminate(&mut scratch, self.rows, ncols, ncols, self.modulus, false);
        let head = pivots.iter().filter(|&&p| p < split).count();
        (head, pivots.len() - head)
    }
}

/// Gaussian elimination over GF(d) on a row-major buffer.
///
/// Pivot search runs over `pivot_cols` columns only; `full` additionally
/// normalizes pivots to 1 and clears above, producing RREF. Returns the
/// pivot column indices in order. Row updates go through pre-scaled copies
/// of the pivot row so the inner loop is a reduced add with no division.
pub(crate) fn eliminate(
    data: &mut [u8],
    rows: usize,
    cols: usize,
    pivot_cols: usize,
    d: u8,
    full: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut scaled: Vec<Vec<u8>> = vec![Vec::new(); d as usize];
    let mut prow = 0usize;
    for col in 0..pivot_cols {
        if prow == rows {
            break;
        }
        let Some(r) = (prow..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if r != prow {
            let (a, b) = data.split_at_mut(r * cols);
            a[prow * cols..prow * cols + cols].swap_with_slice(&mut b[..cols]);
        }
        // Normalize the pivot to 1.
        let p = data[prow * cols + col];
        if p != 1 {
            let inv = mod_inv(p, d).expect("nonzero pivot");
            for x in &mut data[prow * cols + col..(prow + 1) * cols] {
                *x = mod_mul(*x, inv, d);
            }
        }
        // Pre-scale (d - f) * pivot_row lazily per factor f.
        for s in &mut scaled {
            s.clear();
        }
        let lo = if full { 0 } else { prow + 1 };
        for r2 in lo..rows {
            if r2 == prow {
                continue;
            }
            let f = data[r2 * cols + col];
            if f == 0 {
                continue;
            }
            if scaled[f as usize].is_empty() {
                let m = mod_neg(f, d);
                let src = &data[prow * cols + col..(prow + 1) * cols];
                scaled[f as usize] = src.iter().map(|&x| mod_mul(x, m, d)).collect();
            }
            let dst = &mut data[r2 * cols + col..(r2 + 1) * cols];
            row_add_assign(dst, &scaled[f as usize], d);
        }
        pivots.push(col);
        prow += 1;
    }
    pivots
}
