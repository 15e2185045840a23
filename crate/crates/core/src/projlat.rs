//! Projection lattice and comparison theory.
//!
//! In a finite direct sum of matrix blocks, the per-block rank is a complete
//! invariant for Murray-von Neumann equivalence, so every comparison
//! decision here is made on exact integers extracted once from the
//! numerics. Partial isometries witnessing an equivalence are constructed
//! afterwards from orthonormal range bases.

use crate::fdalg::{AlgebraShape, Element, FdalgError, Tolerance};
use crate::linalg::{projection_range_basis, span_projector, CMat};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

/// Eigenvalue cutoff for span computations in [`proj_sup`].
const SPAN_CUTOFF: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum ProjlatError {
    #[error("element is not a projection (defect {defect:.3e})")]
    NotProjection { defect: f64 },
    #[error("projections are not equivalent: ranks {0:?} vs {1:?}")]
    NotEquivalent(RankVector, RankVector),
    #[error(transparent)]
    Fdalg(#[from] FdalgError),
}

/// Per-block ranks of a projection.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankVector(pub Vec<usize>);

impl RankVector {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }
}

/// A central projection: per block, the zero or identity matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CentralProjection {
    flags: Vec<bool>,
}

impl CentralProjection {
    pub fn new(flags: Vec<bool>) -> Self {
        CentralProjection { flags }
    }

    pub fn full(num_blocks: usize) -> Self {
        CentralProjection {
            flags: vec![true; num_blocks],
        }
    }

    pub fn empty(num_blocks: usize) -> Self {
        CentralProjection {
            flags: vec![false; num_blocks],
        }
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn is_zero(&self) -> bool {
        self.flags.iter().all(|&f| !f)
    }

    pub fn complement(&self) -> Self {
        CentralProjection {
            flags: self.flags.iter().map(|f| !f).collect(),
        }
    }

    /// Realize as an element: identity on flagged blocks, zero elsewhere.
    pub fn to_element(&self, shape: &AlgebraShape) -> Element {
        assert_eq!(self.flags.len(), shape.num_blocks());
        let mut e = Element::zero(shape);
        for (k, &f) in self.flags.iter().enumerate() {
            if f {
                *e.block_mut(k) = CMat::identity(shape.block_size(k));
            }
        }
        e
    }

    /// Cut a projection by this central projection: zero out the blocks
    /// off the support.
    pub fn cut(&self, p: &Element) -> Element {
        assert_eq!(self.flags.len(), p.shape().num_blocks());
        let mut out = p.clone();
        for (k, &f) in self.flags.iter().enumerate() {
            if !f {
                *out.block_mut(k) = CMat::zeros(p.shape().block_size(k), p.shape().block_size(k));
            }
        }
        out
    }
}

fn ensure_projection(p: &Element, tol: &Tolerance) -> Result<(), ProjlatError> {
    if !p.is_projection(tol) {
        let defect = p
            .sub(&p.adjoint())
            .unwrap()
            .op_norm()
            .max(p.mul(p).unwrap().sub(p).unwrap().op_norm());
        return Err(ProjlatError::NotProjection { defect });
    }
    Ok(())
}

fn ensure_same_shape(p: &Element, q: &Element) -> Result<(), ProjlatError> {
    if p.shape() != q.shape() {
        return Err(FdalgError::ShapeMismatch(
            p.shape().blocks().to_vec(),
            q.shape().blocks().to_vec(),
        )
        .into());
    }
    Ok(())
}

/// Per-block numerical rank: the number of eigenvalues above 1/2. For a
/// projection the spectrum clusters at {0, 1}, so 1/2 is the maximally
/// robust cut.
pub fn rank_vector(p: &Element, tol: &Tolerance) -> Result<RankVector, ProjlatError> {
    ensure_projection(p, tol)?;
    Ok(RankVector(
        p.blocks()
            .iter()
            .map(|b| {
                let (vals, _) = crate::linalg::hermitian_eigen(b);
                vals.iter().filter(|&&v| v > 0.5).count()
            })
            .collect(),
    ))
}

pub fn equivalent(p: &Element, q: &Element, tol: &Tolerance) -> Result<bool, ProjlatError> {
    ensure_same_shape(p, q)?;
    Ok(rank_vector(p, tol)? == rank_vector(q, tol)?)
}

pub fn subequiv(p: &Element, q: &Element, tol: &Tolerance) -> Result<bool, ProjlatError> {
    ensure_same_shape(p, q)?;
    let rp = rank_vector(p, tol)?;
    let rq = rank_vector(q, tol)?;
    Ok(rp.0.iter().zip(&rq.0).all(|(a, b)| a <= b))
}

/// Strict subequivalence `p ≺ q`, with the convention that `0 ≺ 0` holds.
pub fn strict_subequiv(p: &Element, q: &Element, tol: &Tolerance) -> Result<bool, ProjlatError> {
    ensure_same_shape(p, q)?;
    let rp = rank_vector(p, tol)?;
    let rq = rank_vector(q, tol)?;
    if rp.is_zero() && rq.is_zero() {
        return Ok(true);
    }
    Ok(rp.0.iter().zip(&rq.0).all(|(a, b)| a <= b) && rp != rq)
}

/// A partial isometry `v` with `v*v = p` and `vv* = q`.
///
/// Per block, `v = B_q B_p*` where `B_p`, `B_q` are the pivoted
/// orthonormal range bases of the two blocks; the construction is
/// deterministic given the inputs.
pub fn partial_isometry(
    p: &Element,
    q: &Element,
    tol: &Tolerance,
) -> Result<Element, ProjlatError> {
    ensure_same_shape(p, q)?;
    let rp = rank_vector(p, tol)?;
    let rq = rank_vector(q, tol)?;
    if rp != rq {
        return Err(ProjlatError::NotEquivalent(rp, rq));
    }
    let blocks = p
        .blocks()
        .iter()
        .zip(q.blocks())
        .zip(&rp.0)
        .map(|((bp, bq), &r)| {
            let basis_p = projection_range_basis(bp, r);
            let basis_q = projection_range_basis(bq, r);
            basis_q.mul(&basis_p.adjoint())
        })
        .collect();
    Ok(Element::from_blocks(p.shape().clone(), blocks)?)
}

/// Least central projection above `p`: flags exactly the blocks where `p`
/// has nonzero rank.
pub fn central_cover(p: &Element, tol: &Tolerance) -> Result<CentralProjection, ProjlatError> {
    let r = rank_vector(p, tol)?;
    Ok(CentralProjection::new(r.0.iter().map(|&x| x > 0).collect()))
}

/// Central decomposition comparing two projections: orthogonal central
/// `(x, y, z)` summing to 1 with `xe ≺ xf`, `ye ∼ yf`, `ze ≻ zf`.
pub fn comparison_decomposition(
    e: &Element,
    f: &Element,
    tol: &Tolerance,
) -> Result<(CentralProjection, CentralProjection, CentralProjection), ProjlatError> {
    ensure_same_shape(e, f)?;
    let re = rank_vector(e, tol)?;
    let rf = rank_vector(f, tol)?;
    let mut x = Vec::with_capacity(re.0.len());
    let mut y = Vec::with_capacity(re.0.len());
    let mut z = Vec::with_capacity(re.0.len());
    for (&a, &b) in re.0.iter().zip(&rf.0) {
        x.push(a < b);
        y.push(a == b);
        z.push(a > b);
    }
    Ok((
        CentralProjection::new(x),
        CentralProjection::new(y),
        CentralProjection::new(z),
    ))
}

/// Supremum of a family of projections: per block, the projector onto the
/// span of the ranges. For an orthogonal family this equals the matrix sum.
pub fn proj_sup(family: &[Element], tol: &Tolerance) -> Result<Element, ProjlatError> {
    assert!(!family.is_empty(), "projection supremum of an empty family");
    let shape = family[0].shape().clone();
    for p in family {
        ensure_projection(p, tol)?;
    }
    let mut sum = Element::zero(&shape);
    for p in family {
        sum = sum.add(p)?;
    }
    let blocks = sum
        .blocks()
        .iter()
        .map(|b| span_projector(b, SPAN_CUTOFF))
        .collect();
    Ok(Element::from_blocks(shape, blocks)?)
}

/// Infimum of two projections: the projector onto the intersection of the
/// ranges, computed as the complement of the join of the complements.
pub fn proj_inf(p: &Element, q: &Element, tol: &Tolerance) -> Result<Element, ProjlatError> {
    let one = Element::identity(p.shape());
    let pc = one.sub(p)?;
    let qc = one.sub(q)?;
    let join = proj_sup(&[pc, qc], tol)?;
    Ok(one.sub(&join)?)
}

/// Corner compression `x ↦ e x e`.
pub fn compress(e: &Element, x: &Element) -> Result<Element, ProjlatError> {
    Ok(e.mul(x)?.mul(e)?)
}

/// Whether `p` lies in the corner `eAe`, i.e. `p = e p e` up to tolerance.
pub fn in_corner(e: &Element, p: &Element, tol: &Tolerance) -> Result<bool, ProjlatError> {
    let epe = compress(e, p)?;
    Ok(p.dist(&epe) <= tol.eps_struct)
}

/// Group blocks by size: for each occurring size `m`, the central
/// projection selecting exactly the blocks of that size. The resulting
/// projections partition the identity.
pub fn type_decomposition(shape: &AlgebraShape) -> BTreeMap<usize, CentralProjection> {
    let mut out: BTreeMap<usize, Vec<bool>> = BTreeMap::new();
    for &m in shape.blocks() {
        out.entry(m)
            .or_insert_with(|| vec![false; shape.num_blocks()]);
    }
    for (k, &m) in shape.blocks().iter().enumerate() {
        out.get_mut(&m).unwrap()[k] = true;
    }
    out.into_iter()
        .map(|(m, flags)| (m, CentralProjection::new(flags)))
        .collect()
}

/// Diagonal projection with the given per-block ranks: 1 on the first
/// `rank_k` diagonal entries of each block.
pub fn diagonal_projection(shape: &AlgebraShape, ranks: &[usize]) -> Element {
    assert_eq!(ranks.len(), shape.num_blocks());
    let mut e = Element::zero(shape);
    for (k, &r) in ranks.iter().enumerate() {
        assert!(r <= shape.block_size(k));
        for i in 0..r {
            e.block_mut(k)[(i, i)] = Complex64::ONE;
        }
    }
    e
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

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn rank_vector_examples() {
        let s = shape(&[2, 3]);
        assert_eq!(
            rank_vector(&Element::identity(&s), &tol()).unwrap(),
            RankVector(vec![2, 3])
        );
        assert_eq!(
            rank_vector(&Element::zero(&s), &tol()).unwrap(),
            RankVector(vec![0, 0])
        );
        // (1/2)[[1,1],[1,1]] ⊕ 0 has rank (1, 0).
        let mut p = Element::zero(&s);
        for i in 0..2 {
            for j in 0..2 {
                p.block_mut(0)[(i, j)] = Complex64::new(0.5, 0.0);
            }
        }
        assert_eq!(rank_vector(&p, &tol()).unwrap(), RankVector(vec![1, 0]));

        let mut not_proj = Element::zero(&s);
        not_proj.block_mut(0)[(0, 0)] = Complex64::new(0.5, 0.0);
        assert!(rank_vector(&not_proj, &tol()).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let s = shape(&[2]);
        let p = diagonal_projection(&s, &[1]);
        let mut q = Element::zero(&s);
        q.block_mut(0)[(1, 1)] = Complex64::ONE;
        assert!(equivalent(&p, &q, &tol()).unwrap());
        assert!(equivalent(&p, &p, &tol()).unwrap());

        // The explicit witness v = e_21 satisfies v*v = p, vv* = q.
        let v = Element::matrix_unit(&s, 0, 1, 0);
        assert!(v.adjoint().mul(&v).unwrap().dist(&p) < 1e-15);
        assert!(v.mul(&v.adjoint()).unwrap().dist(&q) < 1e-15);

        // And partial_isometry reproduces it.
        let w = partial_isometry(&p, &q, &tol()).unwrap();
        assert!(w.dist(&v) < 1e-12);

        // 0 ≺ 0 by convention.
        let zero = Element::zero(&s);
        assert!(strict_subequiv(&zero, &zero, &tol()).unwrap());

        // Projections over different algebras do not compare.
        let other = Element::identity(&shape(&[2, 3]));
        assert!(matches!(
            subequiv(&p, &other, &tol()),
            Err(ProjlatError::Fdalg(FdalgError::ShapeMismatch(_, _)))
        ));
    }

    #[test]
    fn partial_isometry_identity_case() {
        let s = shape(&[2, 1]);
        let p = diagonal_projection(&s, &[1, 1]);
        let v = partial_isometry(&p, &p, &tol()).unwrap();
        assert!(v.dist(&p) < 1e-12);
    }

    #[test]
    fn central_cover_examples() {
        let s = shape(&[2, 3]);
        assert!(central_cover(&Element::zero(&s), &tol()).unwrap().is_zero());
        assert_eq!(
            central_cover(&Element::identity(&s), &tol()).unwrap(),
            CentralProjection::full(2)
        );
        let p = diagonal_projection(&s, &[1, 0]);
        assert_eq!(
            central_cover(&p, &tol()).unwrap(),
            CentralProjection::new(vec![true, false])
        );
    }

    #[test]
    fn comparison_examples() {
        let s = shape(&[2, 2]);
        let e = diagonal_projection(&s, &[1, 2]);
        let f = diagonal_projection(&s, &[2, 1]);
        let (x, y, z) = comparison_decomposition(&e, &f, &tol()).unwrap();
        assert_eq!(x, CentralProjection::new(vec![true, false]));
        assert_eq!(y, CentralProjection::new(vec![false, false]));
        assert_eq!(z, CentralProjection::new(vec![false, true]));

        let (x, y, z) = comparison_decomposition(&e, &e, &tol()).unwrap();
        assert!(x.is_zero());
        assert_eq!(y, CentralProjection::full(2));
        assert!(z.is_zero());

        let (x, y, z) =
            comparison_decomposition(&Element::zero(&s), &Element::identity(&s), &tol()).unwrap();
        assert_eq!(x, CentralProjection::full(2));
        assert!(y.is_zero() && z.is_zero());
    }

    #[test]
    fn sup_inf_examples() {
        let s = shape(&[2]);
        let p = diagonal_projection(&s, &[1]);
        let zero = Element::zero(&s);
        assert!(proj_sup(&[p.clone(), zero], &tol()).unwrap().dist(&p) < 1e-12);

        let mut q = Element::zero(&s);
        q.block_mut(0)[(1, 1)] = Complex64::ONE;
        let sup = proj_sup(&[p.clone(), q], &tol()).unwrap();
        assert!(sup.dist(&Element::identity(&s)) < 1e-12);

        let inf = proj_inf(&p, &p, &tol()).unwrap();
        assert!(inf.dist(&p) < 1e-12);
    }

    #[test]
    fn corner_examples() {
        let s = shape(&[3]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let x = gen::random_element(&s, &mut rng);
        let one = Element::identity(&s);
        assert!(compress(&one, &x).unwrap().dist(&x) < 1e-12);

        let e = gen::random_projection(&s, &[2], &mut rng);
        assert!(compress(&e, &e).unwrap().dist(&e) < 1e-12);
    }

    #[test]
    fn type_decomposition_examples() {
        let d = type_decomposition(&shape(&[2, 3, 2]));
        assert_eq!(d.len(), 2);
        assert_eq!(d[&2], CentralProjection::new(vec![true, false, true]));
        assert_eq!(d[&3], CentralProjection::new(vec![false, true, false]));

        let d = type_decomposition(&shape(&[5]));
        assert_eq!(d[&5], CentralProjection::full(1));

        let d = type_decomposition(&shape(&[2, 3]).matrix_algebra(2));
        assert_eq!(d[&4], CentralProjection::new(vec![true, false]));
        assert_eq!(d[&6], CentralProjection::new(vec![false, true]));
    }

    proptest! {
        /// Schröder-Bernstein on rank data: mutual subequivalence implies
        /// equivalence.
        #[test]
        fn schroeder_bernstein(seed in 0u64..40) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = shape(&[2, 3]);
            let ranks = gen::random_rank_vector(&s, &mut rng);
            let p = gen::random_projection(&s, &ranks, &mut rng);
            let q = gen::random_projection(&s, &ranks, &mut rng);
            prop_assert!(subequiv(&p, &q, &tol()).unwrap());
            prop_assert!(subequiv(&q, &p, &tol()).unwrap());
            prop_assert!(equivalent(&p, &q, &tol()).unwrap());
        }

        /// Orthogonal sums of equivalent pairs are equivalent.
        #[test]
        fn additivity(seed in 0u64..40) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = shape(&[4, 3]);
            // Build two orthogonal pairs from a common unitary.
            let u = gen::random_unitary_element(&s, &mut rng);
            let e1 = diagonal_projection(&s, &[1, 1]);
            let e2 = diagonal_projection(&s, &[2, 2]).sub(&e1).unwrap();
            let f1 = diagonal_projection(&s, &[3, 2]).sub(&diagonal_projection(&s, &[2, 1])).unwrap();
            let f2 = diagonal_projection(&s, &[4, 3]).sub(&diagonal_projection(&s, &[3, 2])).unwrap();
            let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
            let (e1, e2, f1, f2) = (conj(&e1), conj(&e2), conj(&f1), conj(&f2));
            prop_assert!(equivalent(&e1, &f1, &tol()).unwrap());
            prop_assert!(equivalent(&e2, &f2, &tol()).unwrap());
            let se = proj_sup(&[e1, e2], &tol()).unwrap();
            let sf = proj_sup(&[f1, f2], &tol()).unwrap();
            prop_assert!(equivalent(&se, &sf, &tol()).unwrap());
        }

        /// Central cuts preserve equivalence.
        #[test]
        fn central_multiplication(seed in 0u64..40, zflags in prop::collection::vec(any::<bool>(), 2)) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = shape(&[3, 2]);
            let ranks = gen::random_rank_vector(&s, &mut rng);
            let p = gen::random_projection(&s, &ranks, &mut rng);
            let q = gen::random_projection(&s, &ranks, &mut rng);
            let z = CentralProjection::new(zflags);
            prop_assert!(equivalent(&z.cut(&p), &z.cut(&q), &tol()).unwrap());
        }

        /// Partial isometries stay in the corner: v = q v p.
        #[test]
        fn corner_equivalence_witness(seed in 0u64..40) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = shape(&[4]);
            // p, q under a common projection e of rank 3.
            let u = gen::random_unitary_element(&s, &mut rng);
            let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
            let e = conj(&diagonal_projection(&s, &[3]));
            let p = conj(&diagonal_projection(&s, &[1]));
            let q = conj(&diagonal_projection(&s, &[2]).sub(&diagonal_projection(&s, &[1])).unwrap());
            prop_assert!(in_corner(&e, &p, &tol()).unwrap());
            prop_assert!(in_corner(&e, &q, &tol()).unwrap());
            let v = partial_isometry(&p, &q, &tol()).unwrap();
            let qvp = q.mul(&v).unwrap().mul(&p).unwrap();
            prop_assert!(v.dist(&qvp) < 1e-10);
        }

        /// p ≤ e implies p lies in the corner eAe.
        #[test]
        fn under_implies_in_corner(seed in 0u64..40) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = shape(&[4, 2]);
            let u = gen::random_unitary_element(&s, &mut rng);
            let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
            let e = conj(&diagonal_projection(&s, &[3, 1]));
            let p = conj(&diagonal_projection(&s, &[2, 1]));
            prop_assert!(in_corner(&e, &p, &tol()).unwrap());
        }
    }

    /// The cover of f computed in the corner eAe equals c(f)·e.
    #[test]
    fn central_cover_in_corners() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let s = shape(&[3, 2, 2]);
        let u = gen::random_unitary_element(&s, &mut rng);
        let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
        let e = conj(&diagonal_projection(&s, &[2, 1, 2]));
        let f = conj(&diagonal_projection(&s, &[1, 0, 1]));
        // f ≤ e by construction. In the corner, the central projections are
        // z·e for central z; the least one above f flags the blocks where f
        // is nonzero.
        let cover_f = central_cover(&f, &tol()).unwrap();
        let corner_cover = compress(&cover_f.to_element(&s), &e).unwrap();
        // c_{eAe}(f) realized directly: e restricted to blocks where f ≠ 0.
        let direct = cover_f.cut(&e);
        assert!(corner_cover.dist(&direct) < 1e-12);
    }
}
