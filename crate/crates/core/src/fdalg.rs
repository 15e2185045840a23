//! Finite-dimensional C*-algebra arithmetic.
//!
//! An algebra here is a finite direct sum of complex matrix blocks
//! `M_{n_1} ⊕ … ⊕ M_{n_r}`, described by its [`AlgebraShape`]. Elements are
//! lists of complex blocks, and all structural predicates (projection,
//! normal, commuting) are tolerance-based so that they survive eigensolver
//! round-off.
//!
//! The `M_n(A)` construction scales every block size by `n`; a block of
//! `M_n(A)` is laid out as an `n x n` grid of `A`-sized tiles, so the
//! `A`-entry at grid position `(i, j)` of block `k` is the tile
//! `(i, j)` of that block. [`a_entry`] and [`assemble`] convert between the
//! two views losslessly.

use crate::linalg::CMat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FdalgError {
    #[error("algebra shape must have at least one block, all of positive size")]
    InvalidShape,
    #[error("shape mismatch: {0:?} vs {1:?}")]
    ShapeMismatch(Vec<usize>, Vec<usize>),
    #[error("block {block} has size {got}, expected {want}")]
    BlockSizeMismatch {
        block: usize,
        got: usize,
        want: usize,
    },
    #[error("entry index ({i}, {j}) out of range for M_{n}(A)")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("shape {0:?} is not an M_{1}(A) amplification")]
    NotAmplified(Vec<usize>, usize),
    #[error("expected {want} grid entries, got {got}")]
    GridSizeMismatch { got: usize, want: usize },
}

/// Block sizes of a finite direct sum of matrix algebras.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraShape {
    blocks: Vec<usize>,
}

impl AlgebraShape {
    pub fn new(blocks: Vec<usize>) -> Result<Self, FdalgError> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(FdalgError::InvalidShape);
        }
        Ok(AlgebraShape { blocks })
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self, k: usize) -> usize {
        self.blocks[k]
    }

    /// Shape of `M_n(A)`: every block size multiplied by `n`.
    pub fn matrix_algebra(&self, n: usize) -> AlgebraShape {
        assert!(n >= 1, "matrix algebra needs n >= 1");
        AlgebraShape {
            blocks: self.blocks.iter().map(|&m| m * n).collect(),
        }
    }

    /// Inverse of [`AlgebraShape::matrix_algebra`] when it applies.
    pub fn base_of_amplification(&self, n: usize) -> Result<AlgebraShape, FdalgError> {
        if n == 0 || self.blocks.iter().any(|&m| m % n != 0) {
            return Err(FdalgError::NotAmplified(self.blocks.clone(), n));
        }
        Ok(AlgebraShape {
            blocks: self.blocks.iter().map(|&m| m / n).collect(),
        })
    }
}

/// Numerical tolerances for structural checks.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tolerance {
    /// Structural predicates: projection, unitarity, commutation.
    pub eps_struct: f64,
    /// Eigenvalue clustering gap.
    pub eps_cluster: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            eps_struct: 1e-9,
            eps_cluster: 1e-8,
        }
    }
}

/// An element of `⊕_k M_{n_k}(ℂ)`: one complex matrix per block.
#[derive(Clone, PartialEq, Debug)]
pub struct Element {
    shape: AlgebraShape,
    blocks: Vec<CMat>,
}

impl Element {
    pub fn from_blocks(shape: AlgebraShape, blocks: Vec<CMat>) -> Result<Self, FdalgError> {
        if blocks.len() != shape.num_blocks() {
            return Err(FdalgError::BlockSizeMismatch {
                block: blocks.len().min(shape.num_blocks()),
                got: blocks.len(),
                want: shape.num_blocks(),
            });
        }
        for (k, b) in blocks.iter().enumerate() {
            let n = shape.block_size(k);
            if b.rows() != n || b.cols() != n {
                return Err(FdalgError::BlockSizeMismatch {
                    block: k,
                    got: b.rows(),
                    want: n,
                });
            }
        }
        Ok(Element { shape, blocks })
    }

    pub fn zero(shape: &AlgebraShape) -> Self {
        let blocks = shape.blocks().iter().map(|&n| CMat::zeros(n, n)).collect();
        Element {
            shape: shape.clone(),
            blocks,
        }
    }

    pub fn identity(shape: &AlgebraShape) -> Self {
        let blocks = shape.blocks().iter().map(|&n| CMat::identity(n)).collect();
        Element {
            shape: shape.clone(),
            blocks,
        }
    }

    /// Matrix unit: 1 at entry `(i, j)` of block `k`, 0 elsewhere.
    pub fn matrix_unit(shape: &AlgebraShape, k: usize, i: usize, j: usize) -> Self {
        let mut e = Element::zero(shape);
        e.blocks[k][(i, j)] = Complex64::ONE;
        e
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn block(&self, k: usize) -> &CMat {
        &self.blocks[k]
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block_mut(&mut self, k: usize) -> &mut CMat {
        &mut self.blocks[k]
    }

    fn check_shape(&self, other: &Element) -> Result<(), FdalgError> {
        if self.shape != other.shape {
            return Err(FdalgError::ShapeMismatch(
                self.shape.blocks.clone(),
                other.shape.blocks.clone(),
            ));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Element) -> Result<Element, FdalgError> {
        self.check_shape(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(Element {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Element) -> Result<Element, FdalgError> {
        self.check_shape(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Element {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, FdalgError> {
        self.check_shape(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(Element {
            shape: self.shape.clone(),
            blocks,
        })
    }

    pub fn adjoint(&self) -> Element {
        let blocks = self.blocks.iter().map(|b| b.adjoint()).collect();
        Element {
            shape: self.shape.clone(),
            blocks,
        }
    }

    pub fn scale(&self, c: Complex64) -> Element {
        let blocks = self.blocks.iter().map(|b| b.scale(c)).collect();
        Element {
            shape: self.shape.clone(),
            blocks,
        }
    }

    /// Operator norm: the largest singular value over all blocks.
    pub fn op_norm(&self) -> f64 {
        self.blocks.iter().map(|b| b.op_norm()).fold(0.0, f64::max)
    }

    /// Distance in operator norm; shapes must match.
    pub fn dist(&self, other: &Element) -> f64 {
        self.sub(other)
            .map(|d| d.op_norm())
            .unwrap_or(f64::INFINITY)
    }

    /// `p = p* = p²` up to `eps_struct`.
    pub fn is_projection(&self, tol: &Tolerance) -> bool {
        let sa = self.sub(&self.adjoint()).unwrap().op_norm();
        let idem = self.mul(self).unwrap().sub(self).unwrap().op_norm();
        sa <= tol.eps_struct && idem <= tol.eps_struct
    }

    /// `x x* = x* x` up to `eps_struct · (1 + ‖x‖)²`.
    pub fn is_normal(&self, tol: &Tolerance) -> bool {
        let adj = self.adjoint();
        let defect = self
            .mul(&adj)
            .unwrap()
            .sub(&adj.mul(self).unwrap())
            .unwrap()
            .op_norm();
        let scale = 1.0 + self.op_norm();
        defect <= tol.eps_struct * scale * scale
    }

    /// Norm of the self-commutator `x x* − x* x`.
    pub fn normality_defect(&self) -> f64 {
        let adj = self.adjoint();
        self.mul(&adj)
            .unwrap()
            .sub(&adj.mul(self).unwrap())
            .unwrap()
            .op_norm()
    }

    /// Norm of the commutator `[x, y]`; shapes must match.
    pub fn commutator_norm(&self, other: &Element) -> Result<f64, FdalgError> {
        let xy = self.mul(other)?;
        let yx = other.mul(self)?;
        Ok(xy.sub(&yx)?.op_norm())
    }

    /// `[x, y] = 0` up to `eps_struct · (1 + ‖x‖)(1 + ‖y‖)`.
    pub fn commutes(&self, other: &Element, tol: &Tolerance) -> Result<bool, FdalgError> {
        let defect = self.commutator_norm(other)?;
        let scale = (1.0 + self.op_norm()) * (1.0 + other.op_norm());
        Ok(defect <= tol.eps_struct * scale)
    }
}

/// The `A`-entry at grid position `(i, j)` of an element of `M_n(A)`:
/// per block, the tile at block-row `i`, block-column `j`.
pub fn a_entry(x: &Element, n: usize, i: usize, j: usize) -> Result<Element, FdalgError> {
    if i >= n || j >= n {
        return Err(FdalgError::IndexOutOfRange { i, j, n });
    }
    let base = x.shape().base_of_amplification(n)?;
    let blocks = base
        .blocks()
        .iter()
        .enumerate()
        .map(|(k, &m)| x.block(k).tile(m, i, j))
        .collect();
    Ok(Element {
        shape: base,
        blocks,
    })
}

/// Assemble an element of `M_n(A)` from its `n x n` grid of `A`-entries
/// (row-major). Inverse of [`a_entry`].
pub fn assemble(base: &AlgebraShape, n: usize, grid: &[Element]) -> Result<Element, FdalgError> {
    if grid.len() != n * n {
        return Err(FdalgError::GridSizeMismatch {
            got: grid.len(),
            want: n * n,
        });
    }
    let shape = base.matrix_algebra(n);
    let mut out = Element::zero(&shape);
    for i in 0..n {
        for j in 0..n {
            let entry = &grid[i * n + j];
            if entry.shape() != base {
                return Err(FdalgError::ShapeMismatch(
                    entry.shape().blocks.clone(),
                    base.blocks.clone(),
                ));
            }
            for (k, &m) in base.blocks().iter().enumerate() {
                out.blocks[k].set_tile(m, i, j, entry.block(k));
            }
        }
    }
    Ok(out)
}

// --- JSON encoding -------------------------------------------------------
//
// {"shape": [n1, ...], "blocks": [[[ [re, im], ... ]]]} with row-major
// complex matrices.

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            shape: &'a AlgebraShape,
            blocks: Vec<Vec<Vec<[f64; 2]>>>,
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (0..b.rows())
                    .map(|i| {
                        (0..b.cols())
                            .map(|j| [b[(i, j)].re, b[(i, j)].im])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Wire {
            shape: &self.shape,
            blocks,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            shape: AlgebraShape,
            blocks: Vec<Vec<Vec<[f64; 2]>>>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.blocks.len() != wire.shape.num_blocks() {
            return Err(serde::de::Error::custom("block count does not match shape"));
        }
        let mut blocks = Vec::with_capacity(wire.blocks.len());
        for (k, rows) in wire.blocks.iter().enumerate() {
            let n = wire.shape.block_size(k);
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(serde::de::Error::custom(format!(
                    "block {k} is not {n}x{n}"
                )));
            }
            let flat: Vec<[f64; 2]> = rows.iter().flatten().copied().collect();
            blocks.push(CMat::from_pairs(n, n, &flat));
        }
        Element::from_blocks(wire.shape, blocks).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn shape(blocks: &[usize]) -> AlgebraShape {
        AlgebraShape::new(blocks.to_vec()).unwrap()
    }

    #[test]
    fn shape_validation() {
        assert!(AlgebraShape::new(vec![]).is_err());
        assert!(AlgebraShape::new(vec![2, 0]).is_err());
        assert!(AlgebraShape::new(vec![2, 3]).is_ok());
    }

    #[test]
    fn adjoint_involution_and_identity() {
        let s = shape(&[2, 3]);
        let id = Element::identity(&s);
        assert_eq!(id.adjoint(), id);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let x = gen::random_element(&s, &mut rng);
        assert!(x.adjoint().adjoint().dist(&x) == 0.0);
        // Scaling is blockwise and interacts with the adjoint by
        // conjugation.
        let c = Complex64::new(2.0, -1.0);
        let scaled = x.scale(c);
        assert!((scaled.op_norm() - c.norm() * x.op_norm()).abs() < 1e-12 * x.op_norm());
        assert!(scaled.adjoint().dist(&x.adjoint().scale(c.conj())) == 0.0);
    }

    #[test]
    fn op_norm_examples() {
        let s = shape(&[2]);
        assert_eq!(Element::identity(&s).op_norm(), 1.0);
        assert_eq!(Element::zero(&s).op_norm(), 0.0);
        let mut d = Element::zero(&s);
        d.block_mut(0)[(0, 0)] = Complex64::new(3.0, 0.0);
        d.block_mut(0)[(1, 1)] = Complex64::new(-4.0, 0.0);
        assert!((d.op_norm() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn projection_examples() {
        let tol = Tolerance::default();
        let s = shape(&[2]);
        assert!(Element::identity(&s).is_projection(&tol));

        let mut bad = Element::zero(&s);
        bad.block_mut(0)[(0, 0)] = Complex64::ONE;
        bad.block_mut(0)[(1, 1)] = Complex64::new(0.5, 0.0);
        assert!(!bad.is_projection(&tol));

        // (1/2)[[1,1],[1,1]] is a rank-1 projection.
        let mut p = Element::zero(&s);
        for i in 0..2 {
            for j in 0..2 {
                p.block_mut(0)[(i, j)] = Complex64::new(0.5, 0.0);
            }
        }
        assert!(p.is_projection(&tol));
        assert!(p.mul(&p).unwrap().dist(&p) < 1e-15);
    }

    #[test]
    fn normality_examples() {
        let tol = Tolerance::default();
        let s = shape(&[2]);
        // Self-adjoint elements are normal.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let x = gen::random_element(&s, &mut rng);
        let sa = x.add(&x.adjoint()).unwrap();
        assert!(sa.is_normal(&tol));
        // The nilpotent shift is not: x x* - x* x = diag(1, -1).
        let shift = Element::matrix_unit(&s, 0, 0, 1);
        assert!(!shift.is_normal(&tol));
        assert!((shift.normality_defect() - 1.0).abs() < 1e-12);
        // Everything commutes with the identity.
        assert!(x.commutes(&Element::identity(&s), &tol).unwrap());
    }

    #[test]
    fn matrix_algebra_examples() {
        assert_eq!(shape(&[2, 3]).matrix_algebra(2), shape(&[4, 6]));
        assert_eq!(shape(&[1]).matrix_algebra(3), shape(&[3]));
        assert_eq!(shape(&[2]).matrix_algebra(1), shape(&[2]));
    }

    #[test]
    fn a_entry_examples() {
        let base = shape(&[2, 3]);
        let amp = base.matrix_algebra(2);
        let id = Element::identity(&amp);
        assert_eq!(a_entry(&id, 2, 0, 1).unwrap(), Element::zero(&base));
        assert_eq!(a_entry(&id, 2, 0, 0).unwrap(), Element::identity(&base));
        assert!(a_entry(&id, 2, 0, 2).is_err());

        // e_{01} matrix unit of M_2(A): identity of A at grid (0, 1).
        let grid = vec![
            Element::zero(&base),
            Element::identity(&base),
            Element::zero(&base),
            Element::zero(&base),
        ];
        let e01 = assemble(&base, 2, &grid).unwrap();
        assert_eq!(a_entry(&e01, 2, 0, 1).unwrap(), Element::identity(&base));
    }

    #[test]
    fn json_round_trip() {
        let s = shape(&[2, 1]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let x = gen::random_element(&s, &mut rng);
        let js = serde_json::to_string(&x).unwrap();
        let back: Element = serde_json::from_str(&js).unwrap();
        assert_eq!(x, back);
    }

    proptest! {
        #[test]
        fn cstar_identity(seed in 0u64..50) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = shape(&[2, 3]);
            let x = gen::random_element(&s, &mut rng);
            let lhs = x.adjoint().mul(&x).unwrap().op_norm();
            let rhs = x.op_norm().powi(2);
            let scale = (1.0 + x.op_norm()).powi(2);
            prop_assert!((lhs - rhs).abs() <= 1e-6 * scale);
        }

        #[test]
        fn a_entry_assemble_round_trip(seed in 0u64..50, n in 1usize..4) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let base = shape(&[2, 1]);
            let x = gen::random_element(&base.matrix_algebra(n), &mut rng);
            let mut grid = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    grid.push(a_entry(&x, n, i, j).unwrap());
                }
            }
            let back = assemble(&base, n, &grid).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn orthogonal_projections_sum(seed in 0u64..50) {
            let tol = Tolerance::default();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = shape(&[3, 2]);
            // Conjugated complementary diagonal projections are orthogonal.
            let u = gen::random_unitary_element(&s, &mut rng);
            let mut p = Element::zero(&s);
            p.block_mut(0)[(0, 0)] = Complex64::ONE;
            p.block_mut(1)[(1, 1)] = Complex64::ONE;
            let mut q = Element::zero(&s);
            q.block_mut(0)[(2, 2)] = Complex64::ONE;
            let p = u.mul(&p).unwrap().mul(&u.adjoint()).unwrap();
            let q = u.mul(&q).unwrap().mul(&u.adjoint()).unwrap();
            prop_assert!(p.is_projection(&tol));
            prop_assert!(q.is_projection(&tol));
            prop_assert!(p.mul(&q).unwrap().op_norm() < 1e-12);
            prop_assert!(p.add(&q).unwrap().is_projection(&tol));
        }
    }
}
