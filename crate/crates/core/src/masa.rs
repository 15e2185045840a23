//! Maximal abelian subalgebras containing a commuting normal family.
//!
//! In a matrix block every masa is unitarily conjugate to the diagonal
//! algebra, so a masa is stored as one unitary frame per block: the columns
//! are an orthonormal eigenbasis and the minimal projections are the
//! rank-1 column projections.
//!
//! [`joint_spectral`] builds such a frame by recursive eigenspace
//! refinement. Each normal member contributes two commuting Hermitian
//! parts; for every current joint eigenspace the next part is compressed,
//! eigendecomposed, and the eigenvalues merged into clusters
//! (single-linkage with an absolute gap). Joint eigenspaces of multiplicity
//! above one that survive the whole family are kept with their current
//! basis, which completes the frame to a masa.

use crate::fdalg::{AlgebraShape, Element, FdalgError, Tolerance};
use crate::linalg::{hermitian_eigen, CMat};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MasaError {
    #[error("family member {index} is not normal (self-commutator norm {defect:.3e})")]
    NotNormal { index: usize, defect: f64 },
    #[error("family members {i} and {j} do not commute (commutator norm {defect:.3e})")]
    NotCommuting { i: usize, j: usize, defect: f64 },
    #[error("block {block} has size {size}, not divisible by {n}")]
    NotDivisible { block: usize, size: usize, n: usize },
    #[error("block {block} is an abelian central summand (size 1)")]
    AbelianSummand { block: usize },
    #[error(transparent)]
    Fdalg(#[from] FdalgError),
}

/// A maximal abelian subalgebra: per block, a unitary whose columns are an
/// orthonormal eigenbasis, plus the joint eigenvalue label of each column.
#[derive(Clone, Debug)]
pub struct Masa {
    shape: AlgebraShape,
    frames: Vec<CMat>,
    /// `labels[block][column][member]`.
    labels: Vec<Vec<Vec<Complex64>>>,
}

/// A rank-1 minimal projection of a masa.
#[derive(Clone, Debug)]
pub struct MinimalProjection {
    pub block: usize,
    pub column: usize,
    pub projection: Element,
    pub label: Vec<Complex64>,
}

impl Masa {
    /// The standard diagonal masa (identity frames, empty labels).
    pub fn diagonal(shape: &AlgebraShape) -> Masa {
        let frames = shape.blocks().iter().map(|&m| CMat::identity(m)).collect();
        let labels = shape
            .blocks()
            .iter()
            .map(|&m| vec![Vec::new(); m])
            .collect();
        Masa {
            shape: shape.clone(),
            frames,
            labels,
        }
    }

    pub fn shape(&self) -> &AlgebraShape {
        &self.shape
    }

    pub fn frame(&self, block: usize) -> &CMat {
        &self.frames[block]
    }

    pub fn labels(&self, block: usize) -> &[Vec<Complex64>] {
        &self.labels[block]
    }

    /// The rank-1 projection onto column `column` of block `block`,
    /// embedded as an element (zero in the other blocks).
    pub fn minimal_projection(&self, block: usize, column: usize) -> Element {
        let mut e = Element::zero(&self.shape);
        let col = self.frames[block].col(column);
        *e.block_mut(block) = col.mul(&col.adjoint());
        e
    }

    /// All minimal projections with their labels, blocks in order, columns
    /// in frame order. Within each block they are orthogonal, rank 1, and
    /// sum to the block identity.
    pub fn abelian_frame(&self) -> Vec<MinimalProjection> {
        let mut out = Vec::new();
        for k in 0..self.shape.num_blocks() {
            for c in 0..self.shape.block_size(k) {
                out.push(MinimalProjection {
                    block: k,
                    column: c,
                    projection: self.minimal_projection(k, c),
                    label: self.labels[k][c].clone(),
                });
            }
        }
        out
    }

    /// Column indices of each block sorted by label, lexicographically on
    /// (re, im) pairs coordinate by coordinate, ties broken by column index.
    pub fn sorted_columns(&self, block: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.shape.block_size(block)).collect();
        let labels = &self.labels[block];
        idx.sort_by(|&a, &b| label_cmp(&labels[a], &labels[b]).then(a.cmp(&b)));
        idx
    }
}

fn label_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    a.len().cmp(&b.len())
}

impl Serialize for Masa {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let frames: Vec<Vec<Vec<[f64; 2]>>> = self
            .frames
            .iter()
            .map(|f| {
                (0..f.rows())
                    .map(|i| {
                        (0..f.cols())
                            .map(|j| [f[(i, j)].re, f[(i, j)].im])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let labels: Vec<Vec<Vec<[f64; 2]>>> = self
            .labels
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|lab| lab.iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            })
            .collect();
        let mut st = serializer.serialize_struct("Masa", 3)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("frames", &frames)?;
        st.serialize_field("labels", &labels)?;
        st.end()
    }
}

/// Build a masa containing the given commuting family of normal elements,
/// labelling each minimal projection with its joint eigenvalue tuple.
pub fn joint_spectral(
    shape: &AlgebraShape,
    family: &[Element],
    tol: &Tolerance,
) -> Result<Masa, MasaError> {
    for (i, x) in family.iter().enumerate() {
        if x.shape() != shape {
            return Err(FdalgError::ShapeMismatch(
                x.shape().blocks().to_vec(),
                shape.blocks().to_vec(),
            )
            .into());
        }
        if !x.is_normal(tol) {
            return Err(MasaError::NotNormal {
                index: i,
                defect: x.normality_defect(),
            });
        }
    }
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            if !family[i].commutes(&family[j], tol)? {
                return Err(MasaError::NotCommuting {
                    i,
                    j,
                    defect: family[i].commutator_norm(&family[j])?,
                });
            }
        }
    }

    let scale = 1.0 + family.iter().map(|x| x.op_norm()).fold(0.0, f64::max);
    let gap = tol.eps_cluster * scale;

    let mut frames = Vec::with_capacity(shape.num_blocks());
    let mut labels = Vec::with_capacity(shape.num_blocks());
    for k in 0..shape.num_blocks() {
        let m = shape.block_size(k);
        // Orthonormal bases of the current joint eigenspaces.
        let mut spaces: Vec<CMat> = vec![CMat::identity(m)];
        for x in family {
            let b = x.block(k);
            let re = b.add(&b.adjoint()).scale(Complex64::new(0.5, 0.0));
            let im = b.sub(&b.adjoint()).scale(Complex64::new(0.0, -0.5));
            for h in [re, im] {
                let mut next = Vec::with_capacity(spaces.len());
                for basis in spaces {
                    if basis.cols() <= 1 {
                        next.push(basis);
                        continue;
                    }
                    let compressed = basis.adjoint().mul(&h).mul(&basis);
                    let (vals, vecs) = hermitian_eigen(&compressed);
                    let mut start = 0;
                    for idx in 1..=vals.len() {
                        let split = idx == vals.len() || vals[idx] - vals[idx - 1] > gap;
                        if split {
                            let cols: Vec<usize> = (start..idx).collect();
                            next.push(basis.mul(&vecs.select_cols(&cols)));
                            start = idx;
                        }
                    }
                }
                spaces = next;
            }
        }
        let frame = CMat::hconcat(&spaces);
        let mut block_labels = Vec::with_capacity(m);
        for c in 0..m {
            let col = frame.col(c);
            let label = family
                .iter()
                .map(|x| {
                    let xc = x.block(k).mul(&col);
                    let mut s = Complex64::ZERO;
                    for i in 0..m {
                        s += col[(i, 0)].conj() * xc[(i, 0)];
                    }
                    s
                })
                .collect();
            block_labels.push(label);
        }
        frames.push(frame);
        labels.push(block_labels);
    }
    Ok(Masa {
        shape: shape.clone(),
        frames,
        labels,
    })
}

/// Whether `n` divides every block size of `shape`.
pub fn divisibility_check(shape: &AlgebraShape, n: usize) -> bool {
    shape.blocks().iter().all(|&m| m % n == 0)
}

/// Column assignment behind [`equipartition`]: `result[group][block]` lists
/// the masa columns given to that group, in label-sorted order.
#[allow(clippy::needless_range_loop)] // the block index addresses every group
pub fn equipartition_columns(masa: &Masa, n: usize) -> Result<Vec<Vec<Vec<usize>>>, MasaError> {
    assert!(n >= 1);
    let shape = masa.shape();
    for (k, &m) in shape.blocks().iter().enumerate() {
        if m % n != 0 {
            return Err(MasaError::NotDivisible {
                block: k,
                size: m,
                n,
            });
        }
    }
    let mut groups = vec![vec![Vec::new(); shape.num_blocks()]; n];
    for block in 0..shape.num_blocks() {
        for (pos, col) in masa.sorted_columns(block).into_iter().enumerate() {
            groups[pos % n][block].push(col);
        }
    }
    Ok(groups)
}

/// Split the identity into `n` orthogonal projections in the masa with
/// equal rank vectors: per block, the minimal projections are sorted by
/// label and dealt round-robin into `n` groups. Requires `n` to divide
/// every block size.
pub fn equipartition(masa: &Masa, n: usize) -> Result<Vec<Element>, MasaError> {
    let groups = equipartition_columns(masa, n)?;
    Ok(groups
        .iter()
        .map(|blocks| {
            let mut e = Element::zero(masa.shape());
            for (k, cols) in blocks.iter().enumerate() {
                for &c in cols {
                    let col = masa.frame(k).col(c);
                    let p = col.mul(&col.adjoint());
                    *e.block_mut(k) = e.block(k).add(&p);
                }
            }
            e
        })
        .collect())
}

/// A projection `e` in the masa with `rank_k = ⌊m_k/2⌋` per block, so that
/// both `e` and `1−e` have full central cover and `e ≾ 1−e`. Fails when
/// some block is abelian (size 1).
pub fn halving(masa: &Masa) -> Result<Element, MasaError> {
    let shape = masa.shape();
    for (k, &m) in shape.blocks().iter().enumerate() {
        if m < 2 {
            return Err(MasaError::AbelianSummand { block: k });
        }
    }
    let mut e = Element::zero(shape);
    for k in 0..shape.num_blocks() {
        let cols = masa.sorted_columns(k);
        for &c in cols.iter().take(shape.block_size(k) / 2) {
            let col = masa.frame(k).col(c);
            *e.block_mut(k) = e.block(k).add(&col.mul(&col.adjoint()));
        }
    }
    Ok(e)
}

/// Maximum off-diagonal magnitude of every family member in the masa frame;
/// the operational check that the frame diagonalizes the family.
pub fn diagonalization_residual(masa: &Masa, family: &[Element]) -> f64 {
    let mut worst = 0.0f64;
    for x in family {
        for k in 0..masa.shape().num_blocks() {
            let u = masa.frame(k);
            let d = u.adjoint().mul(x.block(k)).mul(u);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    if i != j {
                        worst = worst.max(d[(i, j)].norm());
                    }
                }
            }
        }
    }
    worst
}
