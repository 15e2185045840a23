//! Simultaneous diagonalization of commuting normal families in `M_n(A)`.
//!
//! The algorithm follows the masa route: build a masa containing the
//! family, split the identity into `n` equivalent projections from the
//! masa, match them to the standard diagonal units, and sum the matching
//! partial isometries into a unitary `u`. Conjugation by `u` then maps the
//! family into the diagonal `A`-entries.
//!
//! The unitary produced here is in fact stronger than required: it is built
//! from the masa's eigencolumns, so `u x u*` comes out scalar-diagonal per
//! block. The contract and the checks below only assert `A`-diagonality
//! (vanishing off-diagonal `A`-entries).

use crate::fdalg::{a_entry, AlgebraShape, Element, FdalgError, Tolerance};
use crate::masa::{equipartition_columns, joint_spectral, MasaError};
use crate::projlat::{equivalent, ProjlatError};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagError {
    #[error(transparent)]
    Masa(#[from] MasaError),
    #[error(transparent)]
    Fdalg(#[from] FdalgError),
    #[error(transparent)]
    Projlat(#[from] ProjlatError),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

/// Per-run quality numbers.
#[derive(Clone, Debug, Serialize)]
pub struct DiagReport {
    /// Per member, the largest off-diagonal `A`-entry norm of `u x u*`.
    pub residuals: Vec<f64>,
    /// `max(‖u u* − 1‖, ‖u* u − 1‖)`.
    pub unitarity_defect: f64,
    /// `1 + max ‖x‖` over the family; residual bounds scale with this.
    pub scale: f64,
}

#[derive(Clone, Debug)]
pub struct DiagonalizationResult {
    pub u: Element,
    pub diagonalized: Vec<Element>,
    pub report: DiagReport,
}

/// The standard diagonal `A`-units of `M_n(A)`: the `j`-th is the identity
/// on tile `(j, j)` and zero elsewhere.
pub fn standard_diagonal_units(base: &AlgebraShape, n: usize) -> Vec<Element> {
    let shape = base.matrix_algebra(n);
    (0..n)
        .map(|j| {
            let mut e = Element::zero(&shape);
            for (k, &m) in base.blocks().iter().enumerate() {
                for i in 0..m {
                    e.block_mut(k)[(j * m + i, j * m + i)] = Complex64::ONE;
                }
            }
            e
        })
        .collect()
}

/// Whether the off-diagonal `A`-entries of `x ∈ M_n(A)` vanish, together
/// with the largest off-diagonal entry norm.
pub fn is_a_diagonal(x: &Element, n: usize, tol: &Tolerance) -> Result<(bool, f64), FdalgError> {
    let mut residual = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                residual = residual.max(a_entry(x, n, i, j)?.op_norm());
            }
        }
    }
    Ok((residual <= tol.eps_struct * (1.0 + x.op_norm()), residual))
}

/// Simultaneously diagonalize a commuting family of normal elements of
/// `M_n(A)` by one unitary of `M_n(A)`.
pub fn simultaneous_diagonalize(
    base: &AlgebraShape,
    n: usize,
    family: &[Element],
    tol: &Tolerance,
) -> Result<DiagonalizationResult, DiagError> {
    assert!(n >= 1);
    let shape = base.matrix_algebra(n);
    for x in family {
        if x.shape() != &shape {
            return Err(DiagError::Fdalg(FdalgError::ShapeMismatch(
                x.shape().blocks().to_vec(),
                shape.blocks().to_vec(),
            )));
        }
    }

    // Masa containing the family, then n equivalent orthogonal projections
    // from it.
    let masa = joint_spectral(&shape, family, tol)?;
    let groups = equipartition_columns(&masa, n)?;

    // Match each group against the standard diagonal unit of the same slot
    // and accumulate the partial isometries into u. The isometry for group
    // j sends its i-th assigned eigencolumn to the i-th basis vector of
    // tile (j, j).
    let units = standard_diagonal_units(base, n);
    let mut u = Element::zero(&shape);
    for (j, group) in groups.iter().enumerate() {
        let mut v = Element::zero(&shape);
        for (k, &m) in base.blocks().iter().enumerate() {
            if group[k].len() != m {
                return Err(DiagError::Internal(format!(
                    "equipartition rank mismatch: group {j} has {} columns in block {k}, expected {m}",
                    group[k].len()
                )));
            }
            for (i, &col) in group[k].iter().enumerate() {
                let target = j * m + i;
                let source = masa.frame(k).col(col);
                let vb = v.block_mut(k);
                for row in 0..source.rows() {
                    vb[(target, row)] += source[(row, 0)].conj();
                }
            }
        }
        // v v* must be the diagonal unit and v* v the masa projection.
        let vvs = v.mul(&v.adjoint())?;
        if vvs.dist(&units[j]) > 1e-8 {
            return Err(DiagError::Internal(format!(
                "partial isometry for slot {j} has wrong range projection"
            )));
        }
        let f_j = v.adjoint().mul(&v)?;
        if !equivalent(&f_j, &units[j], tol)? {
            return Err(DiagError::Internal(format!(
                "masa projection {j} is not equivalent to its diagonal unit"
            )));
        }
        u = u.add(&v)?;
    }

    let one = Element::identity(&shape);
    let unitarity_defect = u
        .mul(&u.adjoint())?
        .dist(&one)
        .max(u.adjoint().mul(&u)?.dist(&one));

    let scale = 1.0 + family.iter().map(|x| x.op_norm()).fold(0.0, f64::max);
    let mut diagonalized = Vec::with_capacity(family.len());
    let mut residuals = Vec::with_capacity(family.len());
    for x in family {
        let d = u.mul(x)?.mul(&u.adjoint())?;
        let (_, residual) = is_a_diagonal(&d, n, tol)?;
        diagonalized.push(d);
        residuals.push(residual);
    }

    Ok(DiagonalizationResult {
        u,
        diagonalized,
        report: DiagReport {
            residuals,
            unitarity_defect,
            scale,
        },
    })
}

/// Eigenvalues of each block of a normal element, sorted by real then
/// imaginary part. Computed from the labels of a masa containing the
/// element.
pub fn normal_block_eigenvalues(
    x: &Element,
    tol: &Tolerance,
) -> Result<Vec<Vec<Complex64>>, MasaError> {
    let masa = joint_spectral(x.shape(), std::slice::from_ref(x), tol)?;
    let mut out = Vec::with_capacity(x.shape().num_blocks());
    for k in 0..x.shape().num_blocks() {
        let mut vals: Vec<Complex64> = masa.labels(k).iter().map(|l| l[0]).collect();
        vals.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        out.push(vals);
    }
    Ok(out)
}
