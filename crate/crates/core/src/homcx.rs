//! Module maps, chain complexes and Tor over an [`ArtinAlgebra`].
//!
//! Row-vector convention throughout: a `p x q` matrix over the algebra is a
//! map `A^p -> A^q` sending the row `(a_1, ..., a_p)` to `(a_1, ..., a_p) · M`.
//! Tensoring with a module `N` turns it into `N^p -> N^q`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::artin::{AlgebraElement, AlgebraError, ArtinAlgebra, FDModule, Subspace};
use crate::exactla::{LinAlgError, Matrix};
use crate::wpoly::{Assignment, PolyError, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix does not commute with the action of basis element {0}")]
    NotAModuleMap(usize),
    #[error("maps do not compose: target of the first is not the source of the second")]
    NotComposable,
    #[error(
        "not a complex: d∘d is nonzero at degree {degree}, entry ({row}, {col}) of the composite"
    )]
    NotAComplex {
        degree: usize,
        row: usize,
        col: usize,
    },
    #[error("homology subquotient at degree {0} is not a submodule")]
    NotClosed(usize),
}

/// Matrix with entries in an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMatrix {
    algebra: Arc<ArtinAlgebra>,
    rows: usize,
    cols: usize,
    entries: Vec<AlgebraElement>,
}

impl AlgebraMatrix {
    pub fn new(
        algebra: &Arc<ArtinAlgebra>,
        rows: usize,
        cols: usize,
        entries: Vec<AlgebraElement>,
    ) -> Result<Self, ComplexError> {
        if entries.len() != rows * cols {
            return Err(ComplexError::ShapeMismatch {
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        if entries
            .iter()
            .any(|e| !Arc::ptr_eq(e.algebra(), algebra) && **e.algebra() != **algebra)
        {
            return Err(AlgebraError::AlgebraMismatch.into());
        }
        Ok(AlgebraMatrix {
            algebra: Arc::clone(algebra),
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(algebra: &Arc<ArtinAlgebra>, rows: usize, cols: usize) -> Self {
        AlgebraMatrix {
            algebra: Arc::clone(algebra),
            rows,
            cols,
            entries: vec![AlgebraElement::zero(algebra); rows * cols],
        }
    }

    pub fn identity(algebra: &Arc<ArtinAlgebra>, n: usize) -> Self {
        let mut m = Self::zeros(algebra, n, n);
        for i in 0..n {
            m.set(i, i, AlgebraElement::one(algebra));
        }
        m
    }

    pub fn algebra(&self) -> &Arc<ArtinAlgebra> {
        &self.algebra
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

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: AlgebraElement) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn entries_in_radical(&self) -> bool {
        self.entries.iter().all(AlgebraElement::in_radical)
    }

    pub fn mul(&self, other: &AlgebraMatrix) -> Result<AlgebraMatrix, ComplexError> {
        if self.cols != other.rows {
            return Err(ComplexError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = AlgebraMatrix::zeros(&self.algebra, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                let mut acc = AlgebraElement::zero(&self.algebra);
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * other.get(j, k));
                }
                out.set(i, k, acc);
            }
        }
        Ok(out)
    }
}

/// A K-linear map between modules that commutes with the algebra action.
/// The matrix acts on column coordinate vectors: `target.dim x source.dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FDModule,
    target: FDModule,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: FDModule, target: FDModule, matrix: Matrix) -> Result<Self, ComplexError> {
        if !source.same_algebra(&target) {
            return Err(AlgebraError::AlgebraMismatch.into());
        }
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(ComplexError::ShapeMismatch {
                left: (target.dim(), source.dim()),
                right: matrix.shape(),
            });
        }
        for (k, (a_src, a_tgt)) in source.actions().iter().zip(target.actions()).enumerate() {
            if matrix.mul(a_src)? != a_tgt.mul(&matrix)? {
                return Err(ComplexError::NotAModuleMap(k));
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn zero(source: FDModule, target: FDModule) -> Self {
        let matrix = Matrix::zeros(source.ctx(), target.dim(), source.dim());
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(module: FDModule) -> Self {
        let matrix = Matrix::identity(module.ctx(), module.dim());
        ModuleMap {
            source: module.clone(),
            target: module,
            matrix,
        }
    }

    pub fn source(&self) -> &FDModule {
        &self.source
    }

    pub fn target(&self) -> &FDModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::span(&self.matrix.kernel_basis())
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(&self.matrix)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &ModuleMap) -> Result<ModuleMap, ComplexError> {
        compose(self, inner)
    }
}

/// `f ∘ g`; requires `target(g) = source(f)`.
pub fn compose(f: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap, ComplexError> {
    if g.target != f.source {
        return Err(ComplexError::NotComposable);
    }
    Ok(ModuleMap {
        source: g.source.clone(),
        target: f.target.clone(),
        matrix: f.matrix.mul(&g.matrix)?,
    })
}

/// The map `N^p -> N^q` induced by a `p x q` algebra matrix.
pub fn induced_map(a: &AlgebraMatrix, n: &FDModule) -> Result<ModuleMap, ComplexError> {
    if !Arc::ptr_eq(a.algebra(), n.algebra()) && **a.algebra() != **n.algebra() {
        return Err(AlgebraError::AlgebraMismatch.into());
    }
    let d = n.dim();
    let (p, q) = a.shape();
    let mut m = Matrix::zeros(n.ctx(), q * d, p * d);
    for i in 0..p {
        for j in 0..q {
            let block = n.act(a.get(i, j))?;
            for r in 0..d {
                for c in 0..d {
                    let v = block.get(r, c);
                    if !v.is_zero() {
                        m.set(j * d + r, i * d + c, v.clone());
                    }
                }
            }
        }
    }
    ModuleMap::new(n.direct_sum_power(p), n.direct_sum_power(q), m)
}

/// Homology of `C_{i+1} -> C_i -> C_{i-1}` at the middle term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub length: usize,
    pub ker_dim: usize,
    pub im_dim: usize,
}

pub fn homology_at(incoming: &ModuleMap, outgoing: &ModuleMap) -> Result<Homology, ComplexError> {
    homology_at_degree(incoming, outgoing, 0)
}

fn homology_at_degree(
    incoming: &ModuleMap,
    outgoing: &ModuleMap,
    degree: usize,
) -> Result<Homology, ComplexError> {
    let composite = compose(outgoing, incoming)?;
    if let Some((row, col)) = composite.matrix.first_nonzero() {
        return Err(ComplexError::NotAComplex { degree, row, col });
    }
    let middle = outgoing.source();
    let kernel = outgoing.kernel();
    let image = incoming.image();
    if !middle.is_closed(&kernel)? || !middle.is_closed(&image)? {
        return Err(ComplexError::NotClosed(degree));
    }
    Ok(Homology {
        length: kernel.dim() - image.dim(),
        ker_dim: kernel.dim(),
        im_dim: image.dim(),
    })
}

/// Whether the image of `f` is exactly `rad(A) · target(f)`.
pub fn image_equals_radical(f: &ModuleMap) -> bool {
    let radical = f.target().radical_submodule();
    f.image().same_as(&radical).unwrap_or(false)
}

/// Bounded complex `0 -> C_k -> ... -> C_0 -> 0`, stored by degree.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    modules: Vec<FDModule>,
    // differentials[i]: C_{i+1} -> C_i
    differentials: Vec<ModuleMap>,
}

impl ChainComplex {
    /// `differentials[i]` must map degree `i + 1` to degree `i`; the modules
    /// are read off the maps. With no maps, `bottom` is the lone module.
    pub fn new(differentials: Vec<ModuleMap>, bottom: FDModule) -> Result<Self, ComplexError> {
        let mut modules = vec![bottom];
        for (i, d) in differentials.iter().enumerate() {
            if *d.target() != modules[i] {
                return Err(ComplexError::NotComposable);
            }
            modules.push(d.source().clone());
        }
        for i in 1..differentials.len() {
            let composite = compose(&differentials[i - 1], &differentials[i])?;
            if let Some((row, col)) = composite.matrix.first_nonzero() {
                return Err(ComplexError::NotAComplex {
                    degree: i,
                    row,
                    col,
                });
            }
        }
        Ok(ChainComplex {
            modules,
            differentials,
        })
    }

    pub fn top_degree(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn module(&self, degree: usize) -> &FDModule {
        &self.modules[degree]
    }

    pub fn differential(&self, from_degree: usize) -> &ModuleMap {
        &self.differentials[from_degree - 1]
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.differentials
    }

    /// Homology at every degree, index = degree.
    pub fn homology(&self) -> Result<Vec<Homology>, ComplexError> {
        let algebra = self.modules[0].algebra();
        let zero = FDModule::zero(algebra);
        (0..self.modules.len())
            .map(|i| {
                let incoming = match self.differentials.get(i) {
                    Some(d) => d.clone(),
                    None => ModuleMap::zero(zero.clone(), self.modules[i].clone()),
                };
                let outgoing = match i {
                    0 => ModuleMap::zero(self.modules[0].clone(), zero.clone()),
                    _ => self.differentials[i - 1].clone(),
                };
                homology_at_degree(&incoming, &outgoing, i)
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.modules.iter().map(FDModule::length))
    }
}

fn alternating(values: impl Iterator<Item = usize>) -> i64 {
    values
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// A finite free resolution `0 -> R^{b_k} -> ... -> R^{b_0}` given by its
/// matrices, leftmost (highest degree) first.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    matrices: Vec<PolyMatrix>,
    tail_rank: usize,
}

impl FreeResolution {
    pub fn new(matrices: Vec<PolyMatrix>) -> Result<Self, ComplexError> {
        let Some(last) = matrices.last() else {
            return Ok(Self::free(0));
        };
        for w in matrices.windows(2) {
            if w[0].cols() != w[1].rows() {
                return Err(ComplexError::ShapeMismatch {
                    left: w[0].shape(),
                    right: w[1].shape(),
                });
            }
        }
        let tail_rank = last.cols();
        Ok(FreeResolution {
            matrices,
            tail_rank,
        })
    }

    /// The resolution of a free module of the given rank: no maps.
    pub fn free(rank: usize) -> Self {
        FreeResolution {
            matrices: Vec::new(),
            tail_rank: rank,
        }
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.matrices
    }

    /// Ranks of the free modules by homological degree.
    pub fn ranks(&self) -> Vec<usize> {
        let mut ranks = vec![self.tail_rank];
        ranks.extend(self.matrices.iter().rev().map(PolyMatrix::rows));
        ranks
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorDegree {
    pub degree: usize,
    /// Length of `F_i ⊗ N`.
    pub chain_length: usize,
    pub length: usize,
    pub ker_dim: usize,
    pub im_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorReport {
    pub degrees: Vec<TorDegree>,
    /// Entry `i` tells whether the image of the differential out of degree
    /// `i + 1` is the radical of its target.
    pub image_is_radical: Vec<bool>,
}

impl TorReport {
    pub fn length(&self, degree: usize) -> Option<usize> {
        self.degrees.get(degree).map(|d| d.length)
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.length).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.degrees.iter().map(|d| d.length))
    }

    pub fn chain_euler_characteristic(&self) -> i64 {
        alternating(self.degrees.iter().map(|d| d.chain_length))
    }
}

/// Specializes each matrix of the resolution, tensors with `n`, and measures
/// homology at every degree.
pub fn specialize_complex(
    resolution: &FreeResolution,
    assignment: &Assignment,
    n: &FDModule,
) -> Result<ChainComplex, ComplexError> {
    let mut maps = Vec::with_capacity(resolution.matrices.len());
    // leftmost matrix is the highest differential; store by source degree
    for m in resolution.matrices.iter().rev() {
        let specialized = m.substitute(assignment)?;
        maps.push(induced_map(&specialized, n)?);
    }
    ChainComplex::new(maps, n.direct_sum_power(resolution.tail_rank))
}

pub fn tor_from_resolution(
    resolution: &FreeResolution,
    assignment: &Assignment,
    n: &FDModule,
) -> Result<TorReport, ComplexError> {
    tor_of_complex(&specialize_complex(resolution, assignment, n)?)
}

/// Homology lengths of an already specialized complex.
pub fn tor_of_complex(complex: &ChainComplex) -> Result<TorReport, ComplexError> {
    let homology = complex.homology()?;
    let degrees = homology
        .iter()
        .enumerate()
        .map(|(i, h)| TorDegree {
            degree: i,
            chain_length: complex.module(i).length(),
            length: h.length,
            ker_dim: h.ker_dim,
            im_dim: h.im_dim,
        })
        .collect();
    let image_is_radical = complex
        .differentials()
        .iter()
        .map(image_equals_radical)
        .collect();
    Ok(TorReport {
        degrees,
        image_is_radical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::monomial_square_zero_algebra;
    use crate::exactla::FieldCtx;

    fn setup() -> (Arc<ArtinAlgebra>, FDModule) {
        let s = monomial_square_zero_algebra(FieldCtx::rationals(), &["s", "t"]).unwrap();
        let q = s.ctx();
        let f2 = FDModule::free(&s, 2);
        let v = |xs: [i64; 6]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let w = f2
            .submodule_generated(&[
                v([0, 0, 1, 0, 0, 0]),
                v([0, 0, 0, 0, 1, 0]),
                v([0, 1, 0, 0, 0, 1]),
            ])
            .unwrap();
        let n = f2.quotient(&w).unwrap().module;
        (s, n)
    }

    fn xbar(s: &Arc<ArtinAlgebra>) -> AlgebraMatrix {
        let e = |name: &str| AlgebraElement::named(s, name).unwrap();
        let z = AlgebraElement::zero(s);
        AlgebraMatrix::new(
            s,
            2,
            4,
            vec![
                e("s"),
                z.clone(),
                e("t"),
                z.clone(),
                z.clone(),
                e("s"),
                z,
                e("t"),
            ],
        )
        .unwrap()
    }

    fn ybar(s: &Arc<ArtinAlgebra>) -> AlgebraMatrix {
        let mut m = AlgebraMatrix::zeros(s, 4, 8);
        for i in 0..4 {
            m.set(i, i, AlgebraElement::named(s, "s").unwrap());
            m.set(i, i + 4, AlgebraElement::named(s, "t").unwrap());
        }
        m
    }

    #[test]
    fn induced_map_follows_row_convention() {
        let (s, n) = setup();
        let f = induced_map(&xbar(&s), &n).unwrap();
        assert_eq!(f.matrix().shape(), (12, 6));
        let es = n.act(&AlgebraElement::named(&s, "s").unwrap()).unwrap();
        let et = n.act(&AlgebraElement::named(&s, "t").unwrap()).unwrap();
        // (n1, n2) -> (s n1, s n2, t n1, t n2)
        let q = s.ctx();
        let zero = Matrix::zeros(q, 3, 3);
        let expected_blocks = [[&es, &zero], [&zero, &es], [&et, &zero], [&zero, &et]];
        for (j, row) in expected_blocks.iter().enumerate() {
            for (i, block) in row.iter().enumerate() {
                for r in 0..3 {
                    for c in 0..3 {
                        assert_eq!(f.matrix().get(3 * j + r, 3 * i + c), block.get(r, c));
                    }
                }
            }
        }

        assert!(induced_map(&AlgebraMatrix::zeros(&s, 2, 3), &n)
            .unwrap()
            .is_zero());
        let id = induced_map(&AlgebraMatrix::identity(&s, 1), &n).unwrap();
        assert_eq!(id, ModuleMap::identity(n.clone()));
    }

    #[test]
    fn paper_complex_composes_to_zero() {
        let (s, n) = setup();
        let fx = induced_map(&xbar(&s), &n).unwrap();
        let fy = induced_map(&ybar(&s), &n).unwrap();
        assert!(compose(&fy, &fx).unwrap().is_zero());
        assert_eq!(
            compose(&fx, &ModuleMap::identity(fx.source().clone())).unwrap(),
            fx
        );
        let z = ModuleMap::zero(fx.target().clone(), fx.target().clone());
        assert!(compose(&z, &fx).unwrap().is_zero());
        assert_eq!(compose(&fx, &fy), Err(ComplexError::NotComposable));
    }

    #[test]
    fn homology_of_paper_complex() {
        let (s, n) = setup();
        let fx = induced_map(&xbar(&s), &n).unwrap();
        let fy = induced_map(&ybar(&s), &n).unwrap();
        let h1 = homology_at(&fx, &fy).unwrap();
        assert_eq!(
            h1,
            Homology {
                length: 0,
                ker_dim: 4,
                im_dim: 4
            }
        );
        let zero_in = ModuleMap::zero(FDModule::zero(&s), fx.source().clone());
        let h2 = homology_at(&zero_in, &fx).unwrap();
        assert_eq!(h2.length, 2);
        assert!(fx
            .kernel()
            .same_as(&fx.source().radical_submodule())
            .unwrap());
        assert!(image_equals_radical(&fx));
        assert!(image_equals_radical(&fy));
        let zero_out = ModuleMap::zero(fx.source().clone(), fx.target().clone());
        assert!(!image_equals_radical(&zero_out));

        let id = ModuleMap::identity(n.clone());
        assert_eq!(
            homology_at(&id, &ModuleMap::zero(n.clone(), n.clone()))
                .unwrap()
                .length,
            0
        );
    }

    #[test]
    fn non_complex_is_reported() {
        let (s, n) = setup();
        let id = ModuleMap::identity(n.clone());
        assert!(matches!(
            homology_at(&id, &id),
            Err(ComplexError::NotAComplex { .. })
        ));
        let err = ChainComplex::new(vec![id.clone(), id], n.clone()).unwrap_err();
        assert_eq!(
            err,
            ComplexError::NotAComplex {
                degree: 1,
                row: 0,
                col: 0
            }
        );
        let _ = s;
    }

    #[test]
    fn non_equivariant_matrix_rejected() {
        let (s, n) = setup();
        let mut m = Matrix::zeros(s.ctx(), 3, 3);
        m.set(0, 0, s.ctx().one());
        assert!(matches!(
            ModuleMap::new(n.clone(), n, m),
            Err(ComplexError::NotAModuleMap(_))
        ));
    }

    #[test]
    fn complex_homology_and_euler() {
        let (s, n) = setup();
        let fx = induced_map(&xbar(&s), &n).unwrap();
        let fy = induced_map(&ybar(&s), &n).unwrap();
        let c = ChainComplex::new(vec![fy, fx], n.direct_sum_power(8)).unwrap();
        let lengths: Vec<usize> = c.homology().unwrap().iter().map(|h| h.length).collect();
        assert_eq!(lengths, vec![16, 0, 2]);
        assert_eq!(c.euler_characteristic(), 24 - 12 + 6);
    }
}
