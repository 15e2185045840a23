//! Unital *-homomorphisms between finite-dimensional algebras and the
//! induced maps on `M_n`.
//!
//! Every unital *-homomorphism between finite direct sums of matrix blocks
//! is, up to a unitary per codomain block, a multiplicity embedding: block
//! `l` of the image stacks `mult[l][k]` copies of each domain block `k` on
//! the diagonal and conjugates. Storing the multiplicity matrix and the
//! conjugating unitaries guarantees well-formed *-homomorphisms by
//! construction.
//!
//! Applying a homomorphism entrywise to `M_n(A)` is again of this form;
//! [`StarHom::lift`] computes the amplified conjugators, which pick up a
//! permutation reconciling the copy-major layout of the embedding with the
//! tile-major layout of `M_n`.

use crate::fdalg::{AlgebraShape, Element, FdalgError, Tolerance};
use crate::linalg::CMat;
use crate::projlat::{proj_sup, rank_vector, CentralProjection, ProjlatError, RankVector};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FunctorError {
    #[error("multiplicity matrix must be {rows} x {cols}")]
    BadMultShape { rows: usize, cols: usize },
    #[error("not unital on codomain block {block}: sum of multiplicities gives {got}, block size is {want}")]
    NotUnital {
        block: usize,
        got: usize,
        want: usize,
    },
    #[error("conjugator {block} is not a unitary of size {size} (defect {defect:.3e})")]
    BadConjugator {
        block: usize,
        size: usize,
        defect: f64,
    },
    #[error("element is over the wrong algebra: {0:?}, expected {1:?}")]
    WrongDomain(Vec<usize>, Vec<usize>),
    #[error("homomorphisms are not composable")]
    NotComposable,
    #[error("family members {i} and {j} are not orthogonal (product norm {defect:.3e})")]
    NotOrthogonal { i: usize, j: usize, defect: f64 },
    #[error(transparent)]
    Fdalg(#[from] FdalgError),
    #[error(transparent)]
    Projlat(#[from] ProjlatError),
}

/// A unital *-homomorphism given by multiplicity and conjugator data.
#[derive(Clone, Debug)]
pub struct StarHom {
    domain: AlgebraShape,
    codomain: AlgebraShape,
    /// `mult[l][k]`: copies of domain block `k` inside codomain block `l`.
    mult: Vec<Vec<usize>>,
    /// One unitary per codomain block.
    conjugators: Vec<CMat>,
}

impl StarHom {
    pub fn new(
        domain: AlgebraShape,
        codomain: AlgebraShape,
        mult: Vec<Vec<usize>>,
        conjugators: Vec<CMat>,
    ) -> Result<Self, FunctorError> {
        let rows = codomain.num_blocks();
        let cols = domain.num_blocks();
        if mult.len() != rows || mult.iter().any(|r| r.len() != cols) {
            return Err(FunctorError::BadMultShape { rows, cols });
        }
        for (l, row) in mult.iter().enumerate() {
            let total: usize = row
                .iter()
                .zip(domain.blocks())
                .map(|(&c, &nk)| c * nk)
                .sum();
            if total != codomain.block_size(l) {
                return Err(FunctorError::NotUnital {
                    block: l,
                    got: total,
                    want: codomain.block_size(l),
                });
            }
        }
        if conjugators.len() != rows {
            return Err(FunctorError::BadMultShape { rows, cols });
        }
        for (l, u) in conjugators.iter().enumerate() {
            let m = codomain.block_size(l);
            if u.rows() != m || u.cols() != m {
                return Err(FunctorError::BadConjugator {
                    block: l,
                    size: m,
                    defect: f64::NAN,
                });
            }
            let defect = u.adjoint().mul(u).sub(&CMat::identity(m)).max_abs();
            if defect > 1e-8 {
                return Err(FunctorError::BadConjugator {
                    block: l,
                    size: m,
                    defect,
                });
            }
        }
        Ok(StarHom {
            domain,
            codomain,
            mult,
            conjugators,
        })
    }

    pub fn identity(shape: &AlgebraShape) -> StarHom {
        let r = shape.num_blocks();
        let mult = (0..r)
            .map(|l| (0..r).map(|k| usize::from(l == k)).collect())
            .collect();
        let conjugators = shape.blocks().iter().map(|&m| CMat::identity(m)).collect();
        StarHom {
            domain: shape.clone(),
            codomain: shape.clone(),
            mult,
            conjugators,
        }
    }

    pub fn domain(&self) -> &AlgebraShape {
        &self.domain
    }

    pub fn codomain(&self) -> &AlgebraShape {
        &self.codomain
    }

    pub fn mult(&self) -> &[Vec<usize>] {
        &self.mult
    }

    /// Apply to an element of the domain.
    pub fn apply(&self, x: &Element) -> Result<Element, FunctorError> {
        if x.shape() != &self.domain {
            return Err(FunctorError::WrongDomain(
                x.shape().blocks().to_vec(),
                self.domain.blocks().to_vec(),
            ));
        }
        let mut blocks = Vec::with_capacity(self.codomain.num_blocks());
        for (l, row) in self.mult.iter().enumerate() {
            let m = self.codomain.block_size(l);
            let mut d = CMat::zeros(m, m);
            let mut off = 0;
            for (k, &copies) in row.iter().enumerate() {
                let nk = self.domain.block_size(k);
                for _ in 0..copies {
                    for i in 0..nk {
                        for j in 0..nk {
                            d[(off + i, off + j)] = x.block(k)[(i, j)];
                        }
                    }
                    off += nk;
                }
            }
            let u = &self.conjugators[l];
            blocks.push(u.mul(&d).mul(&u.adjoint()));
        }
        Ok(Element::from_blocks(self.codomain.clone(), blocks)?)
    }

    /// The central projection generating the kernel: flags the domain
    /// blocks that appear in no codomain block.
    pub fn kernel_projection(&self) -> CentralProjection {
        let flags = (0..self.domain.num_blocks())
            .map(|k| self.mult.iter().all(|row| row[k] == 0))
            .collect();
        CentralProjection::new(flags)
    }

    /// The entrywise map `M_n(A) → M_n(B)`: same multiplicities over the
    /// amplified shapes, conjugators amplified tile-wise.
    pub fn lift(&self, n: usize) -> StarHom {
        assert!(n >= 1);
        let domain = self.domain.matrix_algebra(n);
        let codomain = self.codomain.matrix_algebra(n);
        let mut conjugators = Vec::with_capacity(self.codomain.num_blocks());
        for (l, row) in self.mult.iter().enumerate() {
            let m = self.codomain.block_size(l);
            let big = m * n;
            // Permutation from the copy-major embedding of the amplified
            // blocks to the tile-major layout of M_n: the source index
            // walks (block k, copy, tile i, inner s), the target index is
            // tile-major (tile i, then the embedding offset of (k, copy)).
            let mut perm = CMat::zeros(big, big);
            let mut src = 0;
            let mut emb_off = 0;
            for (k, &copies) in row.iter().enumerate() {
                let nk = self.domain.block_size(k);
                for _ in 0..copies {
                    for tile_i in 0..n {
                        for s in 0..nk {
                            let target = tile_i * m + emb_off + s;
                            perm[(target, src)] = num_complex::Complex64::ONE;
                            src += 1;
                        }
                    }
                    emb_off += nk;
                }
            }
            // n diagonal copies of the original conjugator, in tile layout.
            let mut amp = CMat::zeros(big, big);
            for t in 0..n {
                amp.set_tile(m, t, t, &self.conjugators[l]);
            }
            conjugators.push(amp.mul(&perm));
        }
        StarHom {
            domain,
            codomain,
            mult: self.mult.clone(),
            conjugators,
        }
    }

    /// `self ∘ inner`: multiplicity matrices multiply, conjugators compose
    /// with the embedding of the inner conjugators and a layout
    /// permutation.
    #[allow(clippy::needless_range_loop)] // offset bookkeeping over several arrays
    pub fn compose(&self, inner: &StarHom) -> Result<StarHom, FunctorError> {
        if inner.codomain != self.domain {
            return Err(FunctorError::NotComposable);
        }
        let a = &inner.domain;
        let mid = &self.domain;
        let out = &self.codomain;
        let mut mult = Vec::with_capacity(out.num_blocks());
        for l in 0..out.num_blocks() {
            let row: Vec<usize> = (0..a.num_blocks())
                .map(|k| {
                    (0..mid.num_blocks())
                        .map(|m| self.mult[l][m] * inner.mult[m][k])
                        .sum()
                })
                .collect();
            mult.push(row);
        }
        let mut conjugators = Vec::with_capacity(out.num_blocks());
        for l in 0..out.num_blocks() {
            let p_l = out.block_size(l);
            // Diagonal embedding of the inner conjugators, copy-major over
            // (mid block m, copy).
            let mut inner_diag = CMat::zeros(p_l, p_l);
            let mut off = 0;
            for (m, &copies) in self.mult[l].iter().enumerate() {
                let bm = mid.block_size(m);
                for _ in 0..copies {
                    for i in 0..bm {
                        for j in 0..bm {
                            inner_diag[(off + i, off + j)] = inner.conjugators[m][(i, j)];
                        }
                    }
                    off += bm;
                }
            }
            // Permutation from the composite's k-major canonical embedding
            // to the (m, c2, k, c1) order produced by nesting.
            let mut perm = CMat::zeros(p_l, p_l);
            // Target offsets: walk (m, c2, k, c1, s).
            let mut target = 0;
            for (m, &copies2) in self.mult[l].iter().enumerate() {
                for c2 in 0..copies2 {
                    for k in 0..a.num_blocks() {
                        let nk = a.block_size(k);
                        for c1 in 0..inner.mult[m][k] {
                            // Composite canonical index of copy (m, c2, c1)
                            // of block k: k-major, copies enumerated
                            // m-major then c2 then c1.
                            let mut j = 0;
                            for m2 in 0..m {
                                j += self.mult[l][m2] * inner.mult[m2][k];
                            }
                            j += c2 * inner.mult[m][k] + c1;
                            let mut coff = 0;
                            for k2 in 0..k {
                                coff += mult[l][k2] * a.block_size(k2);
                            }
                            let source_base = coff + j * nk;
                            for s in 0..nk {
                                perm[(target + s, source_base + s)] = num_complex::Complex64::ONE;
                            }
                            target += nk;
                        }
                    }
                }
            }
            conjugators.push(self.conjugators[l].mul(&inner_diag).mul(&perm));
        }
        StarHom::new(a.clone(), out.clone(), mult, conjugators)
    }
}

impl Serialize for StarHom {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let conjugators: Vec<Vec<Vec<[f64; 2]>>> = self
            .conjugators
            .iter()
            .map(|u| {
                (0..u.rows())
                    .map(|i| {
                        (0..u.cols())
                            .map(|j| [u[(i, j)].re, u[(i, j)].im])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut st = serializer.serialize_struct("StarHom", 4)?;
        st.serialize_field("domain", &self.domain)?;
        st.serialize_field("codomain", &self.codomain)?;
        st.serialize_field("mult", &self.mult)?;
        st.serialize_field("conjugators", &conjugators)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for StarHom {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            domain: AlgebraShape,
            codomain: AlgebraShape,
            mult: Vec<Vec<usize>>,
            conjugators: Vec<Vec<Vec<[f64; 2]>>>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let mut conjugators = Vec::with_capacity(wire.conjugators.len());
        for (l, rows) in wire.conjugators.iter().enumerate() {
            let m = rows.len();
            if rows.iter().any(|r| r.len() != m) {
                return Err(serde::de::Error::custom(format!(
                    "conjugator {l} is not square"
                )));
            }
            let flat: Vec<[f64; 2]> = rows.iter().flatten().copied().collect();
            conjugators.push(CMat::from_pairs(m, m, &flat));
        }
        StarHom::new(wire.domain, wire.codomain, wire.mult, conjugators)
            .map_err(serde::de::Error::custom)
    }
}

/// Result of checking that a homomorphism preserves a projection supremum.
#[derive(Clone, Debug, Serialize)]
pub struct SupPreservationReport {
    pub orthogonal_only: bool,
    pub rank_image_of_sup: RankVector,
    pub rank_sup_of_images: RankVector,
    pub defect: f64,
    pub passed: bool,
}

/// Compare `h(sup family)` with `sup h(family)`.
pub fn check_sup_preservation(
    h: &StarHom,
    family: &[Element],
    orthogonal_only: bool,
    tol: &Tolerance,
) -> Result<SupPreservationReport, FunctorError> {
    if orthogonal_only {
        for (i, p) in family.iter().enumerate() {
            for (dj, q) in family[i + 1..].iter().enumerate() {
                let prod = p.mul(q)?.op_norm();
                if prod > tol.eps_struct * 10.0 {
                    return Err(FunctorError::NotOrthogonal {
                        i,
                        j: i + 1 + dj,
                        defect: prod,
                    });
                }
            }
        }
    }
    let sup = proj_sup(family, tol)?;
    let image_of_sup = h.apply(&sup)?;
    let images: Vec<Element> = family
        .iter()
        .map(|p| h.apply(p))
        .collect::<Result<_, _>>()?;
    let sup_of_images = proj_sup(&images, tol)?;
    let defect = image_of_sup.dist(&sup_of_images);
    Ok(SupPreservationReport {
        orthogonal_only,
        rank_image_of_sup: rank_vector(&image_of_sup, tol)?,
        rank_sup_of_images: rank_vector(&sup_of_images, tol)?,
        defect,
        passed: defect <= tol.eps_struct,
    })
}
