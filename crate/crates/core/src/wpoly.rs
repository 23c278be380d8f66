//! Sparse multivariate polynomials with a positive weight per variable.
//!
//! Polynomials do not own their variable table; anything that needs weights
//! or names takes a `&VarTable`. Variables are table indices, so a table may
//! keep growing after polynomials over its earlier variables exist.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::artin::{AlgebraElement, ArtinAlgebra};
use crate::exactla::{FieldCtx, LinAlgError, Scalar};
use crate::homcx::AlgebraMatrix;

pub type VarId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("variable {0:?} already exists")]
    NameCollision(String),
    #[error("variable {0:?} needs a positive weight")]
    ZeroWeight(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("bad minor indices: rows {rows:?}, cols {cols:?}")]
    BadIndices { rows: Vec<usize>, cols: Vec<usize> },
    #[error("minor size {size} exceeds matrix {rows}x{cols}")]
    MinorTooLarge {
        size: usize,
        rows: usize,
        cols: usize,
    },
    #[error("zero polynomial has no factor count")]
    ZeroPolynomial,
    #[error("variable {0} has no assigned image")]
    Unassigned(VarId),
    #[error("assignment targets a different algebra or field")]
    AlgebraMismatch,
}

/// Ordered list of named, weighted variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarTable {
    vars: Vec<(String, u32)>,
    index: HashMap<String, VarId>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, weight: u32) -> Result<VarId, PolyError> {
        if weight == 0 {
            return Err(PolyError::ZeroWeight(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(PolyError::NameCollision(name.to_string()));
        }
        let id = self.vars.len();
        self.vars.push((name.to_string(), weight));
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.vars[id].0
    }

    pub fn weight(&self, id: VarId) -> u32 {
        self.vars[id].1
    }

    pub fn set_weight(&mut self, id: VarId, weight: u32) -> Result<(), PolyError> {
        if weight == 0 {
            return Err(PolyError::ZeroWeight(self.vars[id].0.clone()));
        }
        self.vars[id].1 = weight;
        Ok(())
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &str, u32)> {
        self.vars
            .iter()
            .enumerate()
            .map(|(i, (n, w))| (i, n.as_str(), *w))
    }
}

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// exponents positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(id: VarId) -> Self {
        Monomial(vec![(id, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut acc: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of variable factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn weighted_degree(&self, table: &VarTable) -> u32 {
        self.0.iter().map(|&(v, e)| table.weight(v) * e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(&other.0).copied())
    }
}

/// Outcome of a weighted homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPoly {
    ctx: FieldCtx,
    terms: BTreeMap<Monomial, Scalar>,
}

impl WeightedPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        WeightedPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Self::zero(c.ctx());
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(ctx: FieldCtx, id: VarId) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::var(id), ctx.one());
        p
    }

    pub fn from_terms(
        ctx: FieldCtx,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            if c.ctx() != ctx {
                return Err(LinAlgError::ContextMismatch {
                    left: ctx,
                    right: c.ctx(),
                }
                .into());
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn add(&self, other: &WeightedPoly) -> WeightedPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> WeightedPoly {
        WeightedPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &WeightedPoly) -> WeightedPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &WeightedPoly) -> WeightedPoly {
        let mut out = Self::zero(self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> WeightedPoly {
        let mut out = Self::zero(self.ctx);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn weighted_degree(&self, table: &VarTable) -> Degree {
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(table));
        let Some(first) = degrees.next() else {
            return Degree::Zero;
        };
        if degrees.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Inhomogeneous
        }
    }

    /// Smallest weighted degree among the terms; `None` for zero.
    pub fn min_weighted_degree(&self, table: &VarTable) -> Option<u32> {
        self.terms.keys().map(|m| m.weighted_degree(table)).min()
    }

    /// Minimum number of variable factors over all terms.
    pub fn min_factor_count(&self) -> Result<u32, PolyError> {
        self.terms
            .keys()
            .map(Monomial::factor_count)
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Evaluates the polynomial in an algebra by sending each variable to its
    /// assigned element.
    pub fn substitute(&self, assignment: &Assignment) -> Result<AlgebraElement, PolyError> {
        let alg = assignment.algebra();
        if alg.ctx() != self.ctx {
            return Err(PolyError::AlgebraMismatch);
        }
        let mut acc = AlgebraElement::zero(alg);
        for (m, c) in &self.terms {
            let mut term = AlgebraElement::scalar(alg, c.clone());
            for &(v, e) in m.factors() {
                let image = assignment.get(v).ok_or(PolyError::Unassigned(v))?;
                for _ in 0..e {
                    term = &term * image;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    pub fn display<'a>(&'a self, table: &'a VarTable) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, table }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a WeightedPoly,
    table: &'a VarTable,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative()
                || matches!(c, Scalar::Residue { value, modulus } if *value > modulus / 2);
            let magnitude = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !magnitude.is_one() || m.is_one() {
                factors.push(magnitude.to_string());
            }
            for &(v, e) in m.factors() {
                let name = self.table.name(v);
                factors.push(if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Images of variables in a fixed algebra.
#[derive(Debug, Clone)]
pub struct Assignment {
    algebra: Arc<ArtinAlgebra>,
    images: BTreeMap<VarId, AlgebraElement>,
}

impl Assignment {
    pub fn new(algebra: &Arc<ArtinAlgebra>) -> Self {
        Assignment {
            algebra: Arc::clone(algebra),
            images: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, var: VarId, image: AlgebraElement) -> Result<(), PolyError> {
        if !Arc::ptr_eq(image.algebra(), &self.algebra) && **image.algebra() != *self.algebra {
            return Err(PolyError::AlgebraMismatch);
        }
        self.images.insert(var, image);
        Ok(())
    }

    pub fn get(&self, var: VarId) -> Option<&AlgebraElement> {
        self.images.get(&var)
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &AlgebraElement)> {
        self.images.iter().map(|(&v, e)| (v, e))
    }
}

/// Matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    ctx: FieldCtx,
    entries: Vec<WeightedPoly>,
}

/// One minor together with the row and column indices that select it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: WeightedPoly,
}

impl PolyMatrix {
    pub fn new(
        ctx: FieldCtx,
        rows: usize,
        cols: usize,
        entries: Vec<WeightedPoly>,
    ) -> Result<Self, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::ShapeMismatch {
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.ctx() != ctx) {
            return Err(LinAlgError::ContextMismatch {
                left: ctx,
                right: bad.ctx(),
            }
            .into());
        }
        Ok(PolyMatrix {
            rows,
            cols,
            ctx,
            entries,
        })
    }

    pub fn zeros(ctx: FieldCtx, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            ctx,
            entries: vec![WeightedPoly::zero(ctx); rows * cols],
        }
    }

    /// Matrix of fresh variables `prefix_i_j` (1-based indices), all of the
    /// given weight, appended to `table`.
    pub fn generic(
        table: &mut VarTable,
        ctx: FieldCtx,
        prefix: &str,
        rows: usize,
        cols: usize,
        weight: u32,
    ) -> Result<Self, PolyError> {
        let names: Vec<String> = (1..=rows)
            .flat_map(|i| (1..=cols).map(move |j| format!("{prefix}_{i}_{j}")))
            .collect();
        if let Some(taken) = names.iter().find(|n| table.lookup(n).is_some()) {
            return Err(PolyError::NameCollision(taken.clone()));
        }
        let mut entries = Vec::with_capacity(names.len());
        for name in &names {
            let id = table.push(name, weight)?;
            entries.push(WeightedPoly::var(ctx, id));
        }
        Ok(PolyMatrix {
            rows,
            cols,
            ctx,
            entries,
        })
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

    pub fn get(&self, i: usize, j: usize) -> &WeightedPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: WeightedPoly) {
        assert_eq!(p.ctx(), self.ctx);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[WeightedPoly] {
        &self.entries
    }

    pub fn mat_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != other.rows || self.ctx != other.ctx {
            return Err(PolyError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = PolyMatrix::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let mut acc = WeightedPoly::zero(self.ctx);
                for j in 0..self.cols {
                    acc = acc.add(&self.get(i, j).mul(other.get(j, k)));
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }

    /// Determinant of the submatrix on the given rows and columns, taken in
    /// increasing order, by cofactor expansion along the first row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<WeightedPoly, PolyError> {
        let increasing = |v: &[usize], bound: usize| {
            v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| x < bound)
        };
        if rows.is_empty()
            || rows.len() != cols.len()
            || !increasing(rows, self.rows)
            || !increasing(cols, self.cols)
        {
            return Err(PolyError::BadIndices {
                rows: rows.to_vec(),
                cols: cols.to_vec(),
            });
        }
        Ok(self.cofactor(rows, cols))
    }

    fn cofactor(&self, rows: &[usize], cols: &[usize]) -> WeightedPoly {
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]).clone();
        }
        let mut acc = WeightedPoly::zero(self.ctx);
        let rest_rows = &rows[1..];
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry.mul(&self.cofactor(rest_rows, &rest_cols));
            acc = if k % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    /// Every `size x size` minor, ordered lexicographically by row subset and
    /// then by column subset.
    pub fn all_minors(&self, size: usize) -> Result<Vec<Minor>, PolyError> {
        if size == 0 || size > self.rows.min(self.cols) {
            return Err(PolyError::MinorTooLarge {
                size,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Vec::new();
        for rows in subsets(self.rows, size) {
            for cols in subsets(self.cols, size) {
                let value = self.cofactor(&rows, &cols);
                out.push(Minor {
                    rows: rows.clone(),
                    cols,
                    value,
                });
            }
        }
        Ok(out)
    }

    pub fn substitute(&self, assignment: &Assignment) -> Result<AlgebraMatrix, PolyError> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.substitute(assignment))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(
            AlgebraMatrix::new(assignment.algebra(), self.rows, self.cols, entries)
                .expect("entries come from the assignment's algebra"),
        )
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::monomial_square_zero_algebra;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    #[test]
    fn generic_matrices() {
        let mut t = VarTable::new();
        let x = PolyMatrix::generic(&mut t, q(), "x", 2, 4, 2).unwrap();
        assert_eq!(x.shape(), (2, 4));
        let y = PolyMatrix::generic(&mut t, q(), "y", 4, 8, 3).unwrap();
        assert_eq!(y.shape(), (4, 8));
        assert_eq!(t.len(), 40);
        let u = PolyMatrix::generic(&mut t, q(), "u", 1, 1, 2).unwrap();
        assert_eq!(u.get(0, 0).weighted_degree(&t), Degree::Homogeneous(2));
        assert_eq!(t.name(0), "x_1_1");
        assert_eq!(
            PolyMatrix::generic(&mut t, q(), "x", 1, 1, 2),
            Err(PolyError::NameCollision("x_1_1".into()))
        );
    }

    #[test]
    fn products() {
        let mut t = VarTable::new();
        let x = PolyMatrix::generic(&mut t, q(), "x", 2, 4, 2).unwrap();
        let y = PolyMatrix::generic(&mut t, q(), "y", 4, 8, 3).unwrap();
        let xy = x.mat_mul(&y).unwrap();
        assert_eq!(xy.shape(), (2, 8));
        assert_eq!(xy.get(0, 0).num_terms(), 4);
        assert_eq!(
            xy.get(0, 0).display(&t).to_string(),
            "x_1_1*y_1_1 + x_1_2*y_2_1 + x_1_3*y_3_1 + x_1_4*y_4_1"
        );

        let mut id = PolyMatrix::zeros(q(), 4, 4);
        for i in 0..4 {
            id.set(i, i, WeightedPoly::constant(q().one()));
        }
        assert_eq!(x.mat_mul(&id).unwrap(), x);
        assert!(PolyMatrix::zeros(q(), 3, 2)
            .mat_mul(&x)
            .unwrap()
            .entries()
            .iter()
            .all(WeightedPoly::is_zero));
        assert!(y.mat_mul(&x).is_err());
    }

    #[test]
    fn minors() {
        let mut t = VarTable::new();
        let x = PolyMatrix::generic(&mut t, q(), "x", 2, 4, 2).unwrap();
        let f = x.minor(&[0, 1], &[2, 3]).unwrap();
        assert_eq!(f.display(&t).to_string(), "x_1_3*x_2_4 - x_1_4*x_2_3");
        assert!(x.minor(&[0, 1], &[2, 2]).is_err());
        assert!(x.minor(&[0, 1], &[3, 2]).is_err());
        assert!(x.minor(&[0], &[4]).is_err());
        assert_eq!(&x.minor(&[1], &[2]).unwrap(), x.get(1, 2));
    }

    #[test]
    fn minor_counts() {
        let mut t = VarTable::new();
        let y = PolyMatrix::generic(&mut t, q(), "y", 4, 8, 3).unwrap();
        assert_eq!(y.all_minors(3).unwrap().len(), 224);
        let top = PolyMatrix::new(q(), 2, 8, y.entries()[..16].to_vec()).unwrap();
        let g = top.all_minors(2).unwrap();
        assert_eq!(g.len(), 28);
        assert_eq!(
            (g[0].cols.clone(), g[27].cols.clone()),
            (vec![0, 1], vec![6, 7])
        );
        assert!(y.all_minors(5).is_err());

        let mut s = VarTable::new();
        let sq = PolyMatrix::generic(&mut s, q(), "a", 3, 3, 1).unwrap();
        let dets = sq.all_minors(3).unwrap();
        assert_eq!(dets.len(), 1);
        assert_eq!(dets[0].value.num_terms(), 6);
    }

    #[test]
    fn degrees() {
        let mut t = VarTable::new();
        let x = PolyMatrix::generic(&mut t, q(), "x", 2, 4, 2).unwrap();
        let y = PolyMatrix::generic(&mut t, q(), "y", 4, 8, 3).unwrap();
        let xy = x.mat_mul(&y).unwrap();
        for e in xy.entries() {
            assert_eq!(e.weighted_degree(&t), Degree::Homogeneous(5));
            assert_eq!(e.min_factor_count().unwrap(), 2);
        }
        let mixed = x.get(0, 0).add(y.get(0, 0));
        assert_eq!(mixed.weighted_degree(&t), Degree::Inhomogeneous);
        assert_eq!(WeightedPoly::zero(q()).weighted_degree(&t), Degree::Zero);
        assert_eq!(
            WeightedPoly::zero(q()).min_factor_count(),
            Err(PolyError::ZeroPolynomial)
        );
        assert_eq!(x.get(1, 1).min_factor_count().unwrap(), 1);
    }

    #[test]
    fn substitution_into_s() {
        let s = monomial_square_zero_algebra(q(), &["s", "t"]).unwrap();
        let es = AlgebraElement::named(&s, "s").unwrap();
        let mut t = VarTable::new();
        let x = PolyMatrix::generic(&mut t, q(), "x", 2, 4, 2).unwrap();
        let mut a = Assignment::new(&s);
        a.set(0, es.clone()).unwrap();
        let p = x.get(0, 0).mul(x.get(0, 0));
        assert!(p.substitute(&a).unwrap().is_zero());
        assert_eq!(x.get(0, 0).substitute(&a).unwrap(), es);
        assert_eq!(x.get(0, 1).substitute(&a), Err(PolyError::Unassigned(1)));

        let c = WeightedPoly::constant(q().from_i64(7));
        assert_eq!(
            c.substitute(&a).unwrap(),
            AlgebraElement::scalar(&s, q().from_i64(7))
        );
    }
}
