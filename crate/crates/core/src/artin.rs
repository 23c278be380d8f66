//! Finite-dimensional commutative local algebras given by structure
//! constants, their elements, and modules over them.
//!
//! A module is a K-vector space together with one operator per algebra basis
//! element. Operators act on column vectors. Every algebra here is local with
//! residue field K, so the length of a module is its K-dimension.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::exactla::{same_span, subspace_leq, FieldCtx, LinAlgError, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("algebra needs at least one generator")]
    NoGenerators,
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("basis element 0 must be named \"1\"")]
    UnitName,
    #[error("structure constants have the wrong shape")]
    BadShape,
    #[error("e_0 is not a two-sided unit")]
    NotUnital,
    #[error("e_{0} * e_{1} != e_{1} * e_{0}")]
    NotCommutative(usize, usize),
    #[error("(e_{0} e_{1}) e_{2} != e_{0} (e_{1} e_{2})")]
    NotAssociative(usize, usize, usize),
    #[error("radical must consist of every basis index except 0")]
    NotLocal,
    #[error("radical span is not an ideal")]
    RadicalNotIdeal,
    #[error("radical span is not nilpotent")]
    RadicalNotNilpotent,
    #[error("module needs {expected} action operators, got {got}")]
    ActionCount { expected: usize, got: usize },
    #[error("module axiom fails for basis pair ({0}, {1})")]
    ModuleAxiom(usize, usize),
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("subspace is not closed under the algebra action")]
    NotActionClosed,
    #[error("objects live over different algebras")]
    AlgebraMismatch,
}

/// A commutative local algebra with basis `e_0 = 1, e_1, ..., e_{n-1}` and
/// radical spanned by `e_1, ..., e_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinAlgebra {
    ctx: FieldCtx,
    names: Vec<String>,
    // constants[i][j] = coordinates of e_i * e_j
    constants: Vec<Vec<Vec<Scalar>>>,
    radical: Vec<usize>,
}

impl ArtinAlgebra {
    /// Validates every algebra axiom by brute force over basis triples.
    pub fn new(
        ctx: FieldCtx,
        names: Vec<String>,
        constants: Vec<Vec<Vec<Scalar>>>,
        radical: Vec<usize>,
    ) -> Result<Arc<Self>, AlgebraError> {
        let n = names.len();
        if n == 0 {
            return Err(AlgebraError::NoGenerators);
        }
        if names[0] != "1" {
            return Err(AlgebraError::UnitName);
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        if constants.len() != n
            || constants
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(AlgebraError::BadShape);
        }
        for s in constants.iter().flatten().flatten() {
            if s.ctx() != ctx {
                return Err(LinAlgError::ContextMismatch {
                    left: ctx,
                    right: s.ctx(),
                }
                .into());
            }
        }
        let alg = ArtinAlgebra {
            ctx,
            names,
            constants,
            radical,
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        let unit = |j: usize| -> Vec<Scalar> {
            (0..n)
                .map(|k| {
                    if k == j {
                        self.ctx.one()
                    } else {
                        self.ctx.zero()
                    }
                })
                .collect()
        };
        for j in 0..n {
            if self.constants[0][j] != unit(j) || self.constants[j][0] != unit(j) {
                return Err(AlgebraError::NotUnital);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.constants[i][j] != self.constants[j][i] {
                    return Err(AlgebraError::NotCommutative(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_coords(&self.constants[i][j], &unit(k));
                    let right = self.mul_coords(&unit(i), &self.constants[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        if self.radical != (1..n).collect::<Vec<_>>() {
            return Err(AlgebraError::NotLocal);
        }
        for i in 0..n {
            for &r in &self.radical {
                if !self.constants[i][r][0].is_zero() {
                    return Err(AlgebraError::RadicalNotIdeal);
                }
            }
        }
        // Powers of the radical must reach zero within n steps.
        let mut power: Vec<Vec<Scalar>> = self.radical.iter().map(|&r| unit(r)).collect();
        for _ in 0..=n {
            let span = Matrix::from_columns(self.ctx, n, &power)?.image_basis();
            if span.cols() == 0 {
                return Ok(());
            }
            power = Vec::new();
            for &r in &self.radical {
                for c in 0..span.cols() {
                    power.push(self.mul_coords(&unit(r), &span.column(c)));
                }
            }
        }
        Err(AlgebraError::RadicalNotNilpotent)
    }

    fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.ctx.zero(); self.dim()];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let coef = ai * bj;
                for (k, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&coef * c);
                    }
                }
            }
        }
        out
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn radical_indices(&self) -> &[usize] {
        &self.radical
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product_coords(&self, i: usize, j: usize) -> &[Scalar] {
        &self.constants[i][j]
    }

    /// Matrix of multiplication by `e_i` on the algebra itself.
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.ctx, n, n);
        for j in 0..n {
            for k in 0..n {
                m.set(k, j, self.constants[i][j][k].clone());
            }
        }
        m
    }
}

/// `K[g_1, ..., g_m] / (g_i g_j : all i, j)`, basis `1, g_1, ..., g_m`.
pub fn monomial_square_zero_algebra(
    ctx: FieldCtx,
    generators: &[&str],
) -> Result<Arc<ArtinAlgebra>, AlgebraError> {
    if generators.is_empty() {
        return Err(AlgebraError::NoGenerators);
    }
    let n = generators.len() + 1;
    let mut names = vec!["1".to_string()];
    names.extend(generators.iter().map(|g| g.to_string()));
    let mut constants = vec![vec![vec![ctx.zero(); n]; n]; n];
    for (j, plane) in constants.iter_mut().enumerate() {
        plane[0][j] = ctx.one();
    }
    for (j, products) in constants[0].iter_mut().enumerate() {
        products[j] = ctx.one();
    }
    ArtinAlgebra::new(ctx, names, constants, (1..n).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: Arc<ArtinAlgebra>,
    coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn new(algebra: &Arc<ArtinAlgebra>, coords: Vec<Scalar>) -> Result<Self, AlgebraError> {
        if coords.len() != algebra.dim() {
            return Err(AlgebraError::VectorLength {
                expected: algebra.dim(),
                got: coords.len(),
            });
        }
        for c in &coords {
            if c.ctx() != algebra.ctx() {
                return Err(LinAlgError::ContextMismatch {
                    left: algebra.ctx(),
                    right: c.ctx(),
                }
                .into());
            }
        }
        Ok(AlgebraElement {
            algebra: Arc::clone(algebra),
            coords,
        })
    }

    pub fn zero(algebra: &Arc<ArtinAlgebra>) -> Self {
        AlgebraElement {
            algebra: Arc::clone(algebra),
            coords: vec![algebra.ctx().zero(); algebra.dim()],
        }
    }

    pub fn basis(algebra: &Arc<ArtinAlgebra>, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coords[i] = algebra.ctx().one();
        e
    }

    pub fn one(algebra: &Arc<ArtinAlgebra>) -> Self {
        Self::basis(algebra, 0)
    }

    pub fn scalar(algebra: &Arc<ArtinAlgebra>, c: Scalar) -> Self {
        let mut e = Self::zero(algebra);
        e.coords[0] = c;
        e
    }

    /// Basis element by name, e.g. `"s"`.
    pub fn named(algebra: &Arc<ArtinAlgebra>, name: &str) -> Option<Self> {
        algebra
            .names
            .iter()
            .position(|n| n == name)
            .map(|i| Self::basis(algebra, i))
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn in_radical(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn same_algebra(&self, other: &AlgebraElement) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    fn assert_same_algebra(&self, other: &AlgebraElement) {
        assert!(self.same_algebra(other), "elements of different algebras");
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (c, name) in self.coords.iter().zip(&self.algebra.names) {
            if c.is_zero() {
                continue;
            }
            parts.push(match (c.is_one(), name.as_str()) {
                (_, "1") => c.to_string(),
                (true, _) => name.clone(),
                (false, _) => format!("{c}*{name}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.assert_same_algebra(rhs);
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.assert_same_algebra(rhs);
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.mul_coords(&self.coords, &rhs.coords),
        }
    }
}

/// A subspace of a module's underlying K-space, stored as a matrix with
/// independent columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of the columns of `m`.
    pub fn span(m: &Matrix) -> Self {
        Subspace {
            basis: m.image_basis(),
        }
    }

    pub fn zero(ctx: FieldCtx, ambient_dim: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(ctx, ambient_dim, 0),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_within(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        subspace_leq(&self.basis, &other.basis)
    }

    /// Equality as sets, by mutual containment.
    pub fn same_as(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        same_span(&self.basis, &other.basis)
    }
}

/// A module over an [`ArtinAlgebra`], given by its action operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDModule {
    algebra: Arc<ArtinAlgebra>,
    dim: usize,
    actions: Vec<Matrix>,
}

/// Result of [`FDModule::quotient`].
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: FDModule,
    /// Surjection from the ambient module, kernel exactly the subspace.
    pub projection: Matrix,
}

impl FDModule {
    pub fn new(
        algebra: &Arc<ArtinAlgebra>,
        dim: usize,
        actions: Vec<Matrix>,
    ) -> Result<Self, AlgebraError> {
        let n = algebra.dim();
        let ctx = algebra.ctx();
        if actions.len() != n {
            return Err(AlgebraError::ActionCount {
                expected: n,
                got: actions.len(),
            });
        }
        for a in &actions {
            if a.ctx() != ctx {
                return Err(LinAlgError::ContextMismatch {
                    left: ctx,
                    right: a.ctx(),
                }
                .into());
            }
            if a.shape() != (dim, dim) {
                return Err(LinAlgError::ShapeMismatch {
                    op: "module action",
                    left: (dim, dim),
                    right: a.shape(),
                }
                .into());
            }
        }
        if actions[0] != Matrix::identity(ctx, dim) {
            return Err(AlgebraError::ModuleAxiom(0, 0));
        }
        let module = FDModule {
            algebra: Arc::clone(algebra),
            dim,
            actions,
        };
        for i in 0..n {
            for j in 0..n {
                let lhs = module.actions[i].mul(&module.actions[j])?;
                let rhs = module.combine(algebra.product_coords(i, j));
                if lhs != rhs {
                    return Err(AlgebraError::ModuleAxiom(i, j));
                }
            }
        }
        Ok(module)
    }

    fn combine(&self, coords: &[Scalar]) -> Matrix {
        let ctx = self.algebra.ctx();
        let mut out = Matrix::zeros(ctx, self.dim, self.dim);
        for (c, a) in coords.iter().zip(&self.actions) {
            if !c.is_zero() {
                out = out.add(&a.scale(c)).expect("same shape");
            }
        }
        out
    }

    pub fn zero(algebra: &Arc<ArtinAlgebra>) -> Self {
        Self::free(algebra, 0)
    }

    /// `A^r` with the regular action on each summand.
    pub fn free(algebra: &Arc<ArtinAlgebra>, rank: usize) -> Self {
        let ctx = algebra.ctx();
        let actions = (0..algebra.dim())
            .map(|i| {
                let block = algebra.left_mult_matrix(i);
                Matrix::block_diagonal(ctx, &vec![&block; rank])
            })
            .collect();
        FDModule {
            algebra: Arc::clone(algebra),
            dim: rank * algebra.dim(),
            actions,
        }
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
    }

    pub fn ctx(&self) -> FieldCtx {
        self.algebra.ctx()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Composition length; equals the K-dimension because the residue field
    /// of every [`ArtinAlgebra`] is K.
    pub fn length(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    /// Operator of an arbitrary algebra element.
    pub fn act(&self, a: &AlgebraElement) -> Result<Matrix, AlgebraError> {
        if !Arc::ptr_eq(a.algebra(), &self.algebra) && **a.algebra() != *self.algebra {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(self.combine(a.coords()))
    }

    pub fn same_algebra(&self, other: &FDModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    /// `M^k`, block-diagonal actions.
    pub fn direct_sum_power(&self, k: usize) -> FDModule {
        let ctx = self.ctx();
        let actions = self
            .actions
            .iter()
            .map(|a| Matrix::block_diagonal(ctx, &vec![a; k]))
            .collect();
        FDModule {
            algebra: Arc::clone(&self.algebra),
            dim: k * self.dim,
            actions,
        }
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::VectorLength {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Smallest submodule containing the given coordinate vectors.
    pub fn submodule_generated(&self, gens: &[Vec<Scalar>]) -> Result<Subspace, AlgebraError> {
        for g in gens {
            self.check_vector(g)?;
        }
        let g = Matrix::from_columns(self.ctx(), self.dim, gens)?;
        let mut all = Matrix::zeros(self.ctx(), self.dim, 0);
        for a in &self.actions {
            all = all.hcat(&a.mul(&g)?)?;
        }
        Ok(Subspace::span(&all))
    }

    /// `rad(A) · M`.
    pub fn radical_submodule(&self) -> Subspace {
        let mut all = Matrix::zeros(self.ctx(), self.dim, 0);
        for &r in self.algebra.radical_indices() {
            all = all.hcat(&self.actions[r]).expect("square actions");
        }
        Subspace::span(&all)
    }

    pub fn is_closed(&self, w: &Subspace) -> Result<bool, AlgebraError> {
        self.check_ambient(w)?;
        for a in &self.actions {
            if !subspace_leq(&a.mul(w.basis())?, w.basis())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, w: &Subspace) -> Result<(), AlgebraError> {
        if w.ambient_dim() != self.dim {
            return Err(AlgebraError::VectorLength {
                expected: self.dim,
                got: w.ambient_dim(),
            });
        }
        Ok(())
    }

    /// `M / W`. The basis of `W` is completed greedily by standard basis
    /// vectors in index order; the quotient inherits that complement as its
    /// basis.
    pub fn quotient(&self, w: &Subspace) -> Result<Quotient, AlgebraError> {
        if !self.is_closed(w)? {
            return Err(AlgebraError::NotActionClosed);
        }
        let ctx = self.ctx();
        let mut basis = w.basis().clone();
        let mut rank = basis.cols();
        let mut complement = Vec::new();
        for i in 0..self.dim {
            if rank == self.dim {
                break;
            }
            let mut e = Matrix::zeros(ctx, self.dim, 1);
            e.set(i, 0, ctx.one());
            let candidate = basis.hcat(&e)?;
            let r = candidate.rank();
            if r > rank {
                basis = candidate;
                rank = r;
                complement.push(i);
            }
        }
        let k = w.dim();
        let q = self.dim - k;
        let inverse = basis.inverse()?;
        let projection = inverse.select_rows(&(k..self.dim).collect::<Vec<_>>());
        let lift = basis.select_columns(&(k..self.dim).collect::<Vec<_>>());
        let mut actions = Vec::with_capacity(self.actions.len());
        for a in &self.actions {
            actions.push(projection.mul(&a.mul(&lift)?)?);
        }
        let module = FDModule {
            algebra: Arc::clone(&self.algebra),
            dim: q,
            actions,
        };
        Ok(Quotient { module, projection })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s_alg() -> Arc<ArtinAlgebra> {
        monomial_square_zero_algebra(FieldCtx::rationals(), &["s", "t"]).unwrap()
    }

    fn vec_of(ctx: FieldCtx, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| ctx.from_i64(x)).collect()
    }

    #[test]
    fn square_zero_algebras() {
        let s = s_alg();
        assert_eq!(s.dim(), 3);
        let one_gen = monomial_square_zero_algebra(FieldCtx::rationals(), &["s"]).unwrap();
        assert_eq!(one_gen.dim(), 2);
        assert_eq!(
            monomial_square_zero_algebra(FieldCtx::rationals(), &[]),
            Err(AlgebraError::NoGenerators)
        );
        assert_eq!(
            monomial_square_zero_algebra(FieldCtx::rationals(), &["s", "s"]),
            Err(AlgebraError::DuplicateName("s".into()))
        );
    }

    #[test]
    fn radical_squares_to_zero_in_s() {
        let s = s_alg();
        for &i in s.radical_indices() {
            for &j in s.radical_indices() {
                let p = &AlgebraElement::basis(&s, i) * &AlgebraElement::basis(&s, j);
                assert!(p.is_zero());
            }
        }
    }

    #[test]
    fn rejects_non_nilpotent_radical() {
        // K[x]/(x^2 - x) with "radical" x: x is idempotent.
        let q = FieldCtx::rationals();
        let (z, o) = (q.zero(), q.one());
        let c = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), o.clone()]],
        ];
        let err = ArtinAlgebra::new(q, vec!["1".into(), "x".into()], c, vec![1]).unwrap_err();
        assert_eq!(err, AlgebraError::RadicalNotNilpotent);
    }

    #[test]
    fn rejects_radical_leaking_into_unit() {
        // x^2 = 1
        let q = FieldCtx::rationals();
        let (z, o) = (q.zero(), q.one());
        let c = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![o.clone(), z.clone()]],
        ];
        let err = ArtinAlgebra::new(q, vec!["1".into(), "x".into()], c, vec![1]).unwrap_err();
        assert_eq!(err, AlgebraError::RadicalNotIdeal);
    }

    #[test]
    fn free_modules() {
        let s = s_alg();
        assert_eq!(FDModule::free(&s, 2).dim(), 6);
        assert_eq!(FDModule::free(&s, 0).dim(), 0);
        let f8 = FDModule::free(&s, 8);
        assert_eq!(f8.dim(), 24);
        // the free module satisfies the module axioms
        FDModule::new(&s, 24, f8.actions().to_vec()).unwrap();
    }

    #[test]
    fn submodules() {
        let s = s_alg();
        let q = s.ctx();
        let f2 = FDModule::free(&s, 2);
        // S^2 coordinates: (1, s, t) for each summand
        let gens = vec![
            vec_of(q, &[0, 0, 1, 0, 0, 0]), // (t, 0)
            vec_of(q, &[0, 0, 0, 0, 1, 0]), // (0, s)
            vec_of(q, &[0, 1, 0, 0, 0, 1]), // (s, t)
        ];
        let w = f2.submodule_generated(&gens).unwrap();
        assert_eq!(w.dim(), 3);
        assert!(f2.is_closed(&w).unwrap());

        assert_eq!(
            f2.submodule_generated(&[vec_of(q, &[0; 6])]).unwrap().dim(),
            0
        );

        let regular = FDModule::free(&s, 1);
        assert_eq!(
            regular
                .submodule_generated(&[vec_of(q, &[1, 0, 0])])
                .unwrap()
                .dim(),
            3
        );

        assert!(matches!(
            regular.submodule_generated(&[vec_of(q, &[1, 0])]),
            Err(AlgebraError::VectorLength {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn quotients() {
        let s = s_alg();
        let q = s.ctx();
        let f2 = FDModule::free(&s, 2);
        let gens = vec![
            vec_of(q, &[0, 0, 1, 0, 0, 0]),
            vec_of(q, &[0, 0, 0, 0, 1, 0]),
            vec_of(q, &[0, 1, 0, 0, 0, 1]),
        ];
        let w = f2.submodule_generated(&gens).unwrap();
        let quot = f2.quotient(&w).unwrap();
        assert_eq!(quot.module.dim(), 3);
        assert_eq!(quot.module.length(), 3);
        assert_eq!(quot.module.radical_submodule().dim(), 1);
        // projection kills exactly W
        let ker = Subspace::span(&quot.projection.kernel_basis());
        assert!(ker.same_as(&w).unwrap());
        // quotient satisfies module axioms
        FDModule::new(&s, 3, quot.module.actions().to_vec()).unwrap();

        let by_zero = f2.quotient(&Subspace::zero(q, 6)).unwrap();
        assert_eq!(by_zero.module.dim(), 6);
        assert_eq!(by_zero.projection, Matrix::identity(q, 6));

        let all = Subspace::span(&Matrix::identity(q, 6));
        assert_eq!(f2.quotient(&all).unwrap().module.dim(), 0);

        // span of (1, 0) in S^2 is not closed
        let mut e = Matrix::zeros(q, 6, 1);
        e.set(0, 0, q.one());
        assert_eq!(
            f2.quotient(&Subspace::span(&e)).unwrap_err(),
            AlgebraError::NotActionClosed
        );
    }

    #[test]
    fn radicals_and_lengths() {
        let s = s_alg();
        assert_eq!(FDModule::free(&s, 4).radical_submodule().dim(), 8);
        assert_eq!(FDModule::zero(&s).radical_submodule().dim(), 0);
        assert_eq!(FDModule::zero(&s).length(), 0);
        let m = FDModule::free(&s, 1).direct_sum_power(0);
        assert_eq!(m.dim(), 0);
    }

    #[test]
    fn module_axioms_enforced() {
        let s = s_alg();
        let q = s.ctx();
        let mut actions = FDModule::free(&s, 1).actions().to_vec();
        actions[1] = Matrix::identity(q, 3);
        assert_eq!(
            FDModule::new(&s, 3, actions).unwrap_err(),
            AlgebraError::ModuleAxiom(1, 1)
        );
    }

    #[test]
    fn element_display() {
        let s = s_alg();
        let q = s.ctx();
        let e = AlgebraElement::new(&s, vec_of(q, &[2, 1, -1])).unwrap();
        assert_eq!(e.to_string(), "2 + s + -1*t");
        assert_eq!(AlgebraElement::zero(&s).to_string(), "0");
    }
}
