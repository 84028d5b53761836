//! Exact linear algebra over the integers and rationals.
//!
//! Everything here is arbitrary precision: Smith normal form with
//! transformation matrices, Bareiss determinants, unimodularity tests
//! and Pfaffians of skew-symmetric rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Convenience constructor from machine-integer rows; used heavily in tests.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_bigint_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if !rows.iter().all(|row| row.len() == c) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix-vector product over the integers.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] += self.get(i, j) * &v[j];
            }
        }
        Ok(out)
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(src, j);
            let v = self.get(dst, j) + delta;
            self.set(dst, j, v);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let delta = q * self.get(i, src);
            let v = self.get(i, dst) + delta;
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// Dense rational matrix; entries are always reduced with positive denominator
/// (that is `BigRational`'s own normal form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_skew_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if *self.get(i, j) != -self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// True if every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.denom().is_one())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigRational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        RatMatrix::new(self.rows, self.cols, entries)
    }
}

/// Smith normal form `u * input * v = s` with `u`, `v` unimodular,
/// `s` diagonal, diagonal entries nonnegative and each dividing the next
/// (`d | 0` for every `d`, so zeros sort last).
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `s` as a vector of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Smith normal form by repeated row/column Euclidean reduction.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    for t in 0..n {
        if !move_min_pivot(&mut s, &mut u, &mut v, t) {
            break; // remaining submatrix is zero
        }
        loop {
            // make the pivot positive
            if s.get(t, t).is_negative() {
                s.negate_row(t);
                u.negate_row(t);
            }
            // clear column t below the pivot
            let mut dirty = false;
            for i in t + 1..s.rows() {
                if !s.get(i, t).is_zero() {
                    let (q, r) = s.get(i, t).div_mod_floor(s.get(t, t));
                    let nq = -q;
                    s.add_row_multiple(i, t, &nq);
                    u.add_row_multiple(i, t, &nq);
                    if !r.is_zero() {
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                        dirty = true;
                        break;
                    }
                }
            }
            if dirty {
                continue;
            }
            // clear row t right of the pivot
            for j in t + 1..s.cols() {
                if !s.get(t, j).is_zero() {
                    let (q, r) = s.get(t, j).div_mod_floor(s.get(t, t));
                    let nq = -q;
                    s.add_col_multiple(j, t, &nq);
                    v.add_col_multiple(j, t, &nq);
                    if !r.is_zero() {
                        s.swap_cols(t, j);
                        v.swap_cols(t, j);
                        dirty = true;
                        break;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the submatrix
            let mut fixed = true;
            'outer: for i in t + 1..s.rows() {
                for j in t + 1..s.cols() {
                    if !s.get(i, j).mod_floor(s.get(t, t)).is_zero() {
                        let one = BigInt::one();
                        s.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    SnfResult { s, u, v }
}

/// Move the nonzero entry of smallest magnitude in the trailing submatrix
/// to position (t, t). Returns false if the submatrix is zero.
fn move_min_pivot(s: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if !s.get(i, j).is_zero()
                && best.is_none_or(|(bi, bj)| s.get(i, j).abs() < s.get(bi, bj).abs())
            {
                best = Some((i, j));
            }
        }
    }
    match best {
        Some((i, j)) => {
            s.swap_rows(t, i);
            u.swap_rows(t, i);
            s.swap_cols(t, j);
            v.swap_cols(t, j);
            true
        }
        None => false,
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let swap = (k + 1..n).find(|&i| !a.get(i, k).is_zero());
            match swap {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                a.set(i, j, num / &prev); // exact by Bareiss
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if sign < 0 { -d } else { d })
}

/// True iff `det(m) = ±1`.
pub fn is_unimodular(m: &IntMatrix) -> Result<bool> {
    Ok(det(m)?.abs().is_one())
}

/// Pfaffian of a skew-symmetric rational matrix, normalized so that
/// `Pf([[0, a], [-a, 0]]) = a`. Satisfies `Pf(m)^2 = det(m)`.
pub fn pfaffian(m: &RatMatrix) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() % 2 != 0 {
        return Err(Error::OddDimension(m.rows()));
    }
    if !m.is_skew_symmetric() {
        return Err(Error::NotSkewSymmetric);
    }
    let indices: Vec<usize> = (0..m.rows()).collect();
    Ok(pfaffian_rec(m, &indices))
}

fn pfaffian_rec(m: &RatMatrix, indices: &[usize]) -> BigRational {
    if indices.is_empty() {
        return BigRational::one();
    }
    let i0 = indices[0];
    let mut acc = BigRational::zero();
    for (k, &j) in indices[1..].iter().enumerate() {
        let a = m.get(i0, j);
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = indices[1..]
            .iter()
            .copied()
            .filter(|&x| x != j)
            .collect();
        let term = a * pfaffian_rec(m, &rest);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The block-diagonal Gram matrix `J` of the standard symplectic form on
/// `(Z/n_1 x ... x Z/n_r)^2`, with 2x2 blocks `[[0, 1/n_i], [-1/n_i, 0]]`.
pub fn standard_gram(degrees: &[BigInt]) -> RatMatrix {
    let r = degrees.len();
    let mut j = RatMatrix::zero(2 * r, 2 * r);
    for (i, n) in degrees.iter().enumerate() {
        let inv = BigRational::new(BigInt::one(), n.clone());
        j.set(2 * i, 2 * i + 1, inv.clone());
        j.set(2 * i + 1, 2 * i, -inv);
    }
    j
}

/// Determinant of a form-preserving matrix `c` modulo `n_1`, computed along
/// the Pfaffian route: `Pf(c J c^t) = det(c) Pf(J)` and `c J c^t - J`
/// integral force `det(c) = 1 (mod n_1)`.
///
/// `degrees = (n_1, ..., n_r)` must be a divisibility chain with `n_1 >= 2`,
/// and `c` must be `2r x 2r` and satisfy the preservation equation.
pub fn pfaffian_congruence_check(c: &IntMatrix, degrees: &[BigInt]) -> Result<BigInt> {
    validate_degrees(degrees)?;
    let r = degrees.len();
    if c.rows() != 2 * r || c.cols() != 2 * r {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x{} matrix, got {}x{}",
            2 * r,
            2 * r,
            c.rows(),
            c.cols()
        )));
    }
    let j = standard_gram(degrees);
    let cr = c.to_rational();
    let cjct = cr.mul(&j)?.mul(&transpose_rat(&cr))?;
    if !cjct.sub(&j)?.is_integral() {
        return Err(Error::InvalidInput(
            "matrix does not satisfy the form-preservation equation".into(),
        ));
    }
    let pf_j = pfaffian(&j)?;
    let pf_cjct = pfaffian(&cjct)?;
    let ratio = pf_cjct / pf_j;
    if !ratio.denom().is_one() {
        return Err(Error::Internal(
            "pfaffian ratio is not an integer".into(),
        ));
    }
    Ok(ratio.numer().mod_floor(&degrees[0]))
}

pub(crate) fn validate_degrees(degrees: &[BigInt]) -> Result<()> {
    if degrees.is_empty() {
        return Ok(());
    }
    if degrees[0] < BigInt::from(2) {
        return Err(Error::InvalidInput("degrees must start at n_1 >= 2".into()));
    }
    for w in degrees.windows(2) {
        if !w[1].mod_floor(&w[0]).is_zero() {
            return Err(Error::InvalidInput(
                "degrees must form a divisibility chain".into(),
            ));
        }
    }
    Ok(())
}

fn transpose_rat(m: &RatMatrix) -> RatMatrix {
    let mut t = RatMatrix::zero(m.cols(), m.rows());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            t.set(j, i, m.get(i, j).clone());
        }
    }
    t
}

/// Solve `a x = b` over the integers. Returns `None` when no integral
/// solution exists.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} rows but rhs has length {}",
            a.rows(),
            b.len()
        )));
    }
    let f = snf(a);
    let c = f.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    let diag = f.diagonal();
    for (i, ci) in c.iter().enumerate() {
        let s_i = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if s_i.is_zero() {
            if !ci.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = ci.div_mod_floor(&s_i);
            if !r.is_zero() {
                return Ok(None);
            }
            if i < y.len() {
                y[i] = q;
            } else {
                return Err(Error::Internal("snf shape mismatch in solver".into()));
            }
        }
    }
    Ok(Some(f.v.mul_vec(&y)?))
}
