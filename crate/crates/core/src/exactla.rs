//! Exact scalars over ℚ or a prime field, and dense matrices over them.
//!
//! Every dimension count in the crate bottoms out in [`Matrix::rref`]. There
//! is no floating point anywhere: rationals are arbitrary precision and prime
//! field residues are reduced after every operation.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Modulus used when no field is requested explicitly.
pub const DEFAULT_PRIME: u64 = 101;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("field context mismatch: {left} vs {right}")]
    ContextMismatch { left: FieldCtx, right: FieldCtx },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} outside [2, 2^31)")]
    ModulusOutOfRange(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
}

/// The ground field: ℚ or `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    Rationals,
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx::Rationals
    }

    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        if !(2..MAX_MODULUS).contains(&p) {
            return Err(LinAlgError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(FieldCtx::Prime(p))
    }

    pub fn default_prime() -> Self {
        FieldCtx::Prime(DEFAULT_PRIME)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldCtx::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldCtx::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Reduces an exact rational into this field. Fails only when the
    /// denominator vanishes mod `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar, LinAlgError> {
        match *self {
            FieldCtx::Rationals => Ok(Scalar::Rational(q.clone())),
            FieldCtx::Prime(p) => {
                let modulus = BigInt::from(p);
                let num = q.numer().mod_floor(&modulus).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&modulus).to_u64().unwrap_or(0);
                let den = Scalar::Residue {
                    value: den,
                    modulus: p,
                };
                let num = Scalar::Residue {
                    value: num,
                    modulus: p,
                };
                Ok(&num * &den.inv()?)
            }
        }
    }

    /// Parses `"n"` or `"n/d"` (decimal, optional sign on the numerator).
    pub fn parse(&self, s: &str) -> Result<Scalar, LinAlgError> {
        let bad = || LinAlgError::Parse(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        self.from_rational(&BigRational::new(num, den))
            .map_err(|_| bad())
    }

    fn check(&self, other: &FieldCtx) -> Result<(), LinAlgError> {
        if self == other {
            Ok(())
        } else {
            Err(LinAlgError::ContextMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Rationals => write!(f, "q"),
            FieldCtx::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// A field element tagged with its field.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; fallible entry points ([`Matrix::new`], [`Matrix::mul`], ...)
/// check contexts before any arithmetic happens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ctx(&self) -> FieldCtx {
        match self {
            Scalar::Rational(_) => FieldCtx::Rationals,
            Scalar::Residue { modulus, .. } => FieldCtx::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, LinAlgError> {
        if self.is_zero() {
            return Err(LinAlgError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                let (mut base, mut exp, mut acc) = (*value, *modulus - 2, 1u64);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = mul_mod(acc, base, *modulus);
                    }
                    base = mul_mod(base, base, *modulus);
                    exp >>= 1;
                }
                Scalar::Residue {
                    value: acc,
                    modulus: *modulus,
                }
            }
        })
    }

    fn assert_same_field(&self, rhs: &Scalar, op: &'static str) {
        assert_eq!(self.ctx(), rhs.ctx(), "scalar {op} across field contexts");
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs, "add");
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs, "mul");
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Scalar {
    /// Numerator and denominator of a rational scalar; residues report
    /// denominator 1.
    pub fn as_fraction(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Residue { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

/// Dense row-major matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    ctx: FieldCtx,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(
        ctx: FieldCtx,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::ShapeMismatch {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        for s in &data {
            ctx.check(&s.ctx())?;
        }
        Ok(Matrix {
            rows,
            cols,
            ctx,
            data,
        })
    }

    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            ctx,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_i64(ctx: FieldCtx, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&v| ctx.from_i64(v)));
        }
        Matrix {
            rows: r,
            cols: c,
            ctx,
            data,
        }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(
        ctx: FieldCtx,
        rows: usize,
        columns: &[Vec<Scalar>],
    ) -> Result<Self, LinAlgError> {
        let mut m = Matrix::zeros(ctx, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinAlgError::ShapeMismatch {
                    op: "from_columns",
                    left: (rows, columns.len()),
                    right: (col.len(), 1),
                });
            }
            for (i, s) in col.iter().enumerate() {
                ctx.check(&s.ctx())?;
                m.set(i, j, s.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.ctx(), self.ctx, "entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|s| !s.is_zero())
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        self.ctx.check(&rhs.ctx)?;
        if self.cols != rhs.rows {
            return Err(LinAlgError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Matrix::zeros(self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        self.ctx.check(&rhs.ctx)?;
        if self.shape() != rhs.shape() {
            return Err(LinAlgError::ShapeMismatch {
                op: "add",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            data,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            ctx: self.ctx,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `[self | rhs]`.
    pub fn hcat(&self, rhs: &Matrix) -> Result<Matrix, LinAlgError> {
        self.ctx.check(&rhs.ctx)?;
        if self.rows != rhs.rows {
            return Err(LinAlgError::ShapeMismatch {
                op: "hcat",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&rhs.data[i * rhs.cols..(i + 1) * rhs.cols]);
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            ctx: self.ctx,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ctx, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            ctx: self.ctx,
            data,
        }
    }

    /// Block-diagonal matrix with the given blocks along the diagonal.
    pub fn block_diagonal(ctx: FieldCtx, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ctx, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &(&factor * m.get(row, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.ctx, self.cols, free.len());
        for (jj, &f) in free.iter().enumerate() {
            k.set(f, jj, self.ctx.one());
            for (row, &p) in pivots.iter().enumerate() {
                k.set(p, jj, -r.get(row, f));
            }
        }
        k
    }

    /// Pivot columns of `self`; they span the column space.
    pub fn image_basis(&self) -> Matrix {
        self.select_columns(&self.rref().pivots)
    }

    pub fn inverse(&self) -> Result<Matrix, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::ShapeMismatch {
                op: "inverse",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let n = self.rows;
        let aug = self.hcat(&Matrix::identity(self.ctx, n))?;
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p >= n) {
            return Err(LinAlgError::Singular);
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(matrix.select_columns(&right))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Whether the column span of `a` lies inside the column span of `b`.
pub fn subspace_leq(a: &Matrix, b: &Matrix) -> Result<bool, LinAlgError> {
    if a.cols == 0 {
        a.ctx.check(&b.ctx)?;
        return Ok(true);
    }
    let joined = b.hcat(a)?;
    Ok(joined.rank() == b.rank())
}

/// Mutual containment of column spans.
pub fn same_span(a: &Matrix, b: &Matrix) -> Result<bool, LinAlgError> {
    Ok(subspace_leq(a, b)? && subspace_leq(b, a)?)
}
