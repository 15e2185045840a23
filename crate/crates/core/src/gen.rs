//! Seeded random instance generators.
//!
//! Every generator takes an explicit RNG so that instances are reproducible
//! from a seed; the CLI `gen` command and the property suites both go
//! through these. Commuting families are built from a known conjugating
//! unitary and diagonal data, which doubles as the test oracle: the
//! generator knows a diagonalizing unitary exists because it constructed
//! one.

use crate::cardinal::Cardinal;
use crate::dimension::{AtomicModel, CProjection};
use crate::fdalg::{AlgebraShape, Element};
use crate::functor::StarHom;
use crate::linalg::CMat;
use num_complex::Complex64;
use rand::{Rng, RngExt};

/// Standard normal via Box-Muller.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-12);
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

pub fn random_cmat<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    CMat::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Haar-ish unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary<R: Rng>(m: usize, rng: &mut R) -> CMat {
    let g = random_cmat(m, m, rng);
    let mut cols: Vec<CMat> = Vec::with_capacity(m);
    for j in 0..m {
        let mut v = g.col(j);
        for _ in 0..2 {
            for u in &cols {
                let mut proj = Complex64::ZERO;
                for i in 0..m {
                    proj += u[(i, 0)].conj() * v[(i, 0)];
                }
                v = v.sub(&u.scale(proj));
            }
        }
        let nrm = v.frob_norm();
        cols.push(v.scale(Complex64::new(1.0 / nrm, 0.0)));
    }
    CMat::hconcat(&cols)
}

pub fn random_element<R: Rng>(shape: &AlgebraShape, rng: &mut R) -> Element {
    let blocks = shape
        .blocks()
        .iter()
        .map(|&n| random_cmat(n, n, rng))
        .collect();
    Element::from_blocks(shape.clone(), blocks).unwrap()
}

pub fn random_unitary_element<R: Rng>(shape: &AlgebraShape, rng: &mut R) -> Element {
    let blocks = shape
        .blocks()
        .iter()
        .map(|&n| random_unitary(n, rng))
        .collect();
    Element::from_blocks(shape.clone(), blocks).unwrap()
}

/// Random diagonal element with complex Gaussian entries. Diagonal elements
/// are normal and any two of them commute.
pub fn random_diagonal<R: Rng>(shape: &AlgebraShape, rng: &mut R) -> Element {
    let blocks = shape
        .blocks()
        .iter()
        .map(|&n| {
            let mut b = CMat::zeros(n, n);
            for i in 0..n {
                b[(i, i)] = random_complex(rng);
            }
            b
        })
        .collect();
    Element::from_blocks(shape.clone(), blocks).unwrap()
}

/// Random projection with the given per-block ranks, as a conjugated
/// diagonal 0/1 projection.
pub fn random_projection<R: Rng>(shape: &AlgebraShape, ranks: &[usize], rng: &mut R) -> Element {
    assert_eq!(ranks.len(), shape.num_blocks());
    let blocks = shape
        .blocks()
        .iter()
        .zip(ranks)
        .map(|(&n, &r)| {
            assert!(r <= n);
            let u = random_unitary(n, rng);
            let mut d = CMat::zeros(n, n);
            for i in 0..r {
                d[(i, i)] = Complex64::ONE;
            }
            u.mul(&d).mul(&u.adjoint())
        })
        .collect();
    Element::from_blocks(shape.clone(), blocks).unwrap()
}

pub fn random_rank_vector<R: Rng>(shape: &AlgebraShape, rng: &mut R) -> Vec<usize> {
    shape
        .blocks()
        .iter()
        .map(|&n| rng.random_range(0..=n))
        .collect()
}

/// A commuting family of normal elements of `M_n(A)` together with the
/// unitary witness that diagonalizes it.
pub struct CommutingFamily {
    pub base_shape: AlgebraShape,
    pub n: usize,
    pub shape: AlgebraShape,
    pub family: Vec<Element>,
    /// `family[i] = witness · d_i · witness*` for diagonal `d_i`.
    pub witness: Element,
}

pub fn random_commuting_family<R: Rng>(
    base: &AlgebraShape,
    n: usize,
    members: usize,
    rng: &mut R,
) -> CommutingFamily {
    let shape = base.matrix_algebra(n);
    let w = random_unitary_element(&shape, rng);
    let family = (0..members)
        .map(|_| {
            let d = random_diagonal(&shape, rng);
            w.mul(&d).unwrap().mul(&w.adjoint()).unwrap()
        })
        .collect();
    CommutingFamily {
        base_shape: base.clone(),
        n,
        shape,
        family,
        witness: w,
    }
}

/// Random unital *-homomorphism out of `domain`. Multiplicities are sampled
/// first and the codomain block sizes derived from them, so unitality holds
/// by construction; conjugators are random unitaries.
pub fn random_star_hom<R: Rng>(
    domain: &AlgebraShape,
    codomain_blocks: usize,
    max_mult: usize,
    rng: &mut R,
) -> StarHom {
    let r = domain.num_blocks();
    let mut mult = Vec::with_capacity(codomain_blocks);
    for _ in 0..codomain_blocks {
        loop {
            let row: Vec<usize> = (0..r).map(|_| rng.random_range(0..=max_mult)).collect();
            if row.iter().any(|&c| c > 0) {
                mult.push(row);
                break;
            }
        }
    }
    let sizes: Vec<usize> = mult
        .iter()
        .map(|row| {
            row.iter()
                .zip(domain.blocks())
                .map(|(&c, &nk)| c * nk)
                .sum()
        })
        .collect();
    let codomain = AlgebraShape::new(sizes.clone()).unwrap();
    let conjugators = sizes.iter().map(|&m| random_unitary(m, rng)).collect();
    StarHom::new(domain.clone(), codomain, mult, conjugators).unwrap()
}

pub fn random_atomic_model<R: Rng>(max_atoms: usize, max_index: u32, rng: &mut R) -> AtomicModel {
    let count = rng.random_range(1..=max_atoms);
    let atoms = (0..count)
        .map(|_| Cardinal::Aleph(rng.random_range(0..=max_index)))
        .collect();
    AtomicModel::new(atoms).unwrap()
}

/// Random properly infinite (or zero) projection: per atom, the range
/// dimension is either 0 or an infinite cardinal at most the atom dimension.
pub fn random_cprojection<R: Rng>(model: &AtomicModel, rng: &mut R) -> CProjection {
    let mu: Vec<Cardinal> = model
        .atoms()
        .iter()
        .map(|&kappa| {
            let Cardinal::Aleph(top) = kappa else {
                unreachable!()
            };
            let choice = rng.random_range(0..=(top as i64 + 1));
            if choice == 0 {
                Cardinal::ZERO
            } else {
                Cardinal::Aleph((choice - 1) as u32)
            }
        })
        .collect();
    let nu = model
        .atoms()
        .iter()
        .zip(&mu)
        .map(|(&kappa, &m)| {
            if m == kappa && rng.random_bool(0.5) {
                kappa
            } else if m == kappa {
                Cardinal::ZERO
            } else {
                kappa
            }
        })
        .collect();
    CProjection::new(model.clone(), mu, nu).unwrap()
}
