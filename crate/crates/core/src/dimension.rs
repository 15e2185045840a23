//! Cardinal-valued dimension theory on atomic models.
//!
//! An [`AtomicModel`] is a finite direct sum of type-I factors `⊕_i B(H_i)`
//! with infinite dimensions `κ_i`; its center is atomic, so central
//! projections are subsets of atoms. A projection is recorded per atom as a
//! pair of cardinals: range dimension `mu_i` and corange dimension `nu_i`
//! with `mu_i + nu_i = κ_i`. Keeping both sides avoids cardinal
//! subtraction, which is not well defined.
//!
//! On one atom with infinite range dimension `mu`, the orthogonal families
//! of copies of the projection summing to it have exactly the cardinalities
//! up to `mu` (splitting uses `α·mu = mu`), so the local dimension is
//! `mu⁺`. Globally the dimension is the minimum over the atoms of the
//! central cover, and the sup-variant is the maximum; these closed forms
//! are cross-checked against the definitional route through family sizes.

use crate::cardinal::Cardinal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimensionError {
    #[error("atomic model needs at least one atom, all infinite")]
    InvalidModel,
    #[error("projection data does not match the model: {0}")]
    InvalidProjection(String),
    #[error("projections live on different models")]
    ModelMismatch,
    #[error("projection is not properly infinite (atom {atom} has finite nonzero dimension)")]
    NotProperlyInfinite { atom: usize },
    #[error("projection is zero")]
    ZeroProjection,
    #[error("matrix unit count must be a positive integer or aleph_0")]
    BadUnitCount,
    #[error("unit count beyond model certification")]
    BeyondCertification,
}

/// `⊕_i B(H_i)` with infinite `dim H_i = κ_i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AtomicModel {
    atoms: Vec<Cardinal>,
}

impl AtomicModel {
    pub fn new(atoms: Vec<Cardinal>) -> Result<Self, DimensionError> {
        if atoms.is_empty() || atoms.iter().any(|k| k.is_finite()) {
            return Err(DimensionError::InvalidModel);
        }
        Ok(AtomicModel { atoms })
    }

    pub fn atoms(&self) -> &[Cardinal] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }
}

/// A projection in an atomic model: per atom, range and corange dimension.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CProjection {
    #[serde(skip)]
    model: AtomicModel,
    mu: Vec<Cardinal>,
    nu: Vec<Cardinal>,
}

impl CProjection {
    pub fn new(
        model: AtomicModel,
        mu: Vec<Cardinal>,
        nu: Vec<Cardinal>,
    ) -> Result<Self, DimensionError> {
        if mu.len() != model.num_atoms() || nu.len() != model.num_atoms() {
            return Err(DimensionError::InvalidProjection(format!(
                "expected {} atoms, got mu: {}, nu: {}",
                model.num_atoms(),
                mu.len(),
                nu.len()
            )));
        }
        for (i, ((&m, &n), &k)) in mu.iter().zip(&nu).zip(&model.atoms).enumerate() {
            if m + n != k {
                return Err(DimensionError::InvalidProjection(format!(
                    "atom {i}: {m} + {n} != {k}"
                )));
            }
        }
        Ok(CProjection { model, mu, nu })
    }

    /// Projection with the given range dimensions and the canonical
    /// corange: `κ_i` when `mu_i < κ_i`, zero when `mu_i = κ_i`.
    pub fn from_mu(model: AtomicModel, mu: Vec<Cardinal>) -> Result<Self, DimensionError> {
        let nu = mu
            .iter()
            .zip(&model.atoms)
            .map(|(&m, &k)| if m == k { Cardinal::ZERO } else { k })
            .collect();
        CProjection::new(model, mu, nu)
    }

    pub fn zero(model: &AtomicModel) -> Self {
        CProjection {
            model: model.clone(),
            mu: vec![Cardinal::ZERO; model.num_atoms()],
            nu: model.atoms.clone(),
        }
    }

    pub fn identity(model: &AtomicModel) -> Self {
        CProjection {
            model: model.clone(),
            mu: model.atoms.clone(),
            nu: vec![Cardinal::ZERO; model.num_atoms()],
        }
    }

    pub fn model(&self) -> &AtomicModel {
        &self.model
    }

    pub fn mu(&self) -> &[Cardinal] {
        &self.mu
    }

    pub fn nu(&self) -> &[Cardinal] {
        &self.nu
    }

    pub fn is_zero(&self) -> bool {
        self.mu.iter().all(|m| m.is_zero())
    }

    /// `1 − e`: swap range and corange.
    pub fn complement(&self) -> CProjection {
        CProjection {
            model: self.model.clone(),
            mu: self.nu.clone(),
            nu: self.mu.clone(),
        }
    }
}

/// Per-atom values of the dimension function `D_e`: the successor of the
/// local dimension on the central cover, zero off it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimensionFunction(pub Vec<Cardinal>);

fn check_same_model(e: &CProjection, f: &CProjection) -> Result<(), DimensionError> {
    if e.model != f.model {
        return Err(DimensionError::ModelMismatch);
    }
    Ok(())
}

/// A nonzero projection is properly infinite exactly when each central cut
/// is zero or infinite; on an atomic model that means every `mu_i` is zero
/// or infinite.
pub fn is_properly_infinite(e: &CProjection) -> bool {
    !e.is_zero() && e.mu.iter().all(|m| m.is_zero() || m.is_infinite())
}

fn ensure_properly_infinite(e: &CProjection) -> Result<(), DimensionError> {
    if e.is_zero() {
        return Err(DimensionError::ZeroProjection);
    }
    for (i, m) in e.mu.iter().enumerate() {
        if m.is_finite() && !m.is_zero() {
            return Err(DimensionError::NotProperlyInfinite { atom: i });
        }
    }
    Ok(())
}

/// Murray-von Neumann equivalence: equal range dimension per atom.
pub fn equivalent(e: &CProjection, f: &CProjection) -> Result<bool, DimensionError> {
    check_same_model(e, f)?;
    Ok(e.mu == f.mu)
}

/// `e ≾ f`: range dimension at most that of `f` on every atom.
pub fn subequiv(e: &CProjection, f: &CProjection) -> Result<bool, DimensionError> {
    check_same_model(e, f)?;
    Ok(e.mu.iter().zip(&f.mu).all(|(a, b)| a <= b))
}

/// Atoms on which `e` does not vanish.
pub fn central_cover(e: &CProjection) -> Vec<bool> {
    e.mu.iter().map(|m| !m.is_zero()).collect()
}

/// Cut by a central projection: zero the range outside `z`.
pub fn cut(z: &[bool], e: &CProjection) -> CProjection {
    assert_eq!(z.len(), e.model.num_atoms());
    let mu =
        e.mu.iter()
            .zip(z)
            .map(|(&m, &f)| if f { m } else { Cardinal::ZERO })
            .collect();
    let nu =
        e.nu.iter()
            .zip(&e.model.atoms)
            .zip(z)
            .map(|((&n, &k), &f)| if f { n } else { k })
            .collect();
    CProjection {
        model: e.model.clone(),
        mu,
        nu,
    }
}

/// The dimension `d(e)`: zero for `e = 0`, otherwise the successor of the
/// smallest range dimension over the atoms of the cover.
pub fn dim_d(e: &CProjection) -> Result<Cardinal, DimensionError> {
    if e.is_zero() {
        return Ok(Cardinal::ZERO);
    }
    ensure_properly_infinite(e)?;
    let min = e.mu.iter().filter(|m| !m.is_zero()).min().unwrap();
    Ok(min.succ())
}

/// The sup-variant `d̄(e)`: the supremum of `d(ze)` over nonzero central
/// `z ≤ c(e)`, attained at single atoms.
pub fn dim_dbar(e: &CProjection) -> Result<Cardinal, DimensionError> {
    if e.is_zero() {
        return Ok(Cardinal::ZERO);
    }
    ensure_properly_infinite(e)?;
    let max = e.mu.iter().filter(|m| !m.is_zero()).max().unwrap();
    Ok(max.succ())
}

/// The set of cardinalities of orthogonal families of copies of `e`
/// summing to `e`, restricted to its infinite members: the downward-closed
/// set of infinite cardinals below `d(e)`.
pub fn gamma_sizes(e: &CProjection) -> Result<Vec<Cardinal>, DimensionError> {
    ensure_properly_infinite(e)?;
    let d = dim_d(e)?;
    let Cardinal::Aleph(top) = d else {
        unreachable!("dimension of a properly infinite projection is an aleph");
    };
    Ok((0..top).map(Cardinal::Aleph).collect())
}

/// `δ(e) = sup Δ(e)`, with the flag recording whether the supremum is a
/// member of `Δ(e)`. In this representation no weakly inaccessible cardinal
/// exists, so the supremum is always achieved.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Delta {
    pub value: Cardinal,
    pub achieved: bool,
}

pub fn delta(e: &CProjection) -> Result<Delta, DimensionError> {
    let sizes = gamma_sizes(e)?;
    let value = *sizes.last().expect("gamma_sizes always contains aleph_0");
    Ok(Delta {
        value,
        achieved: true,
    })
}

/// Whether every nonzero central cut has the same dimension. The zero
/// projection counts as equidimensional.
pub fn is_equidimensional(e: &CProjection) -> bool {
    if e.is_zero() {
        return true;
    }
    if !is_properly_infinite(e) {
        return false;
    }
    let mut seen = None;
    for m in e.mu.iter().filter(|m| !m.is_zero()) {
        match seen {
            None => seen = Some(m),
            Some(prev) if prev == m => {}
            Some(_) => return false,
        }
    }
    true
}

/// Decompose the cover of `e` into the largest central pieces on which `e`
/// is equidimensional: atoms grouped by range dimension, reported in
/// ascending dimension order as `(central flags, α)` with `α` the dimension
/// of the piece.
pub fn equidim_decomposition(
    e: &CProjection,
) -> Result<Vec<(Vec<bool>, Cardinal)>, DimensionError> {
    ensure_properly_infinite(e)?;
    let mut values: Vec<Cardinal> = e.mu.iter().copied().filter(|m| !m.is_zero()).collect();
    values.sort();
    values.dedup();
    Ok(values
        .into_iter()
        .map(|v| {
            let flags: Vec<bool> = e.mu.iter().map(|&m| m == v).collect();
            (flags, v.succ())
        })
        .collect())
}

/// The dimension function `D_e`: per atom, `mu_i⁺` on the cover and zero
/// off it.
pub fn dimension_function(e: &CProjection) -> DimensionFunction {
    DimensionFunction(
        e.mu.iter()
            .map(|&m| {
                if m.is_zero() {
                    Cardinal::ZERO
                } else {
                    m.succ()
                }
            })
            .collect(),
    )
}

/// Pointwise comparison of dimension functions; for properly infinite
/// projections on the same model this coincides with subequivalence.
pub fn compare_by_dimension(e: &CProjection, f: &CProjection) -> Result<bool, DimensionError> {
    check_same_model(e, f)?;
    let de = dimension_function(e);
    let df = dimension_function(f);
    Ok(de.0.iter().zip(&df.0).all(|(a, b)| a <= b))
}

/// A projection `e` with `e ∼ 1 ∼ 1 − e`: full range and corange on every
/// atom.
pub fn halving(model: &AtomicModel) -> CProjection {
    CProjection {
        model: model.clone(),
        mu: model.atoms.clone(),
        nu: model.atoms.clone(),
    }
}

/// Join along ranges: pointwise maximum of the range dimensions. The
/// corange is the canonical one for the new range, except that when the
/// range is already full the smaller corange is kept.
pub fn join(e: &CProjection, f: &CProjection) -> Result<CProjection, DimensionError> {
    check_same_model(e, f)?;
    let mu: Vec<Cardinal> = e.mu.iter().zip(&f.mu).map(|(&a, &b)| a.max(b)).collect();
    let nu = mu
        .iter()
        .zip(e.nu.iter().zip(&f.nu))
        .zip(&e.model.atoms)
        .map(|((&m, (&ne, &nf)), &k)| if m == k { ne.min(nf) } else { k })
        .collect();
    Ok(CProjection {
        model: e.model.clone(),
        mu,
        nu,
    })
}

/// A family of orthogonal projections summing to 1 with every member
/// equivalent to 1.
#[derive(Clone, Debug, Serialize)]
pub enum MatrixUnits {
    /// Finitely many units, listed explicitly. Orthogonality is certified
    /// by `n · κ_i = κ_i` per atom.
    Finite(Vec<CProjection>),
    /// A countable family exists; per atom, the certificate
    /// `ℵ₀ · κ_i = κ_i`.
    Countable {
        certificates: Vec<(Cardinal, Cardinal)>,
    },
}

/// Split the identity into `n` equivalent orthogonal projections, `n` a
/// positive integer or `ℵ₀`.
pub fn matrix_units(model: &AtomicModel, n: Cardinal) -> Result<MatrixUnits, DimensionError> {
    match n {
        Cardinal::Finite(0) => Err(DimensionError::BadUnitCount),
        Cardinal::Finite(1) => Ok(MatrixUnits::Finite(vec![CProjection::identity(model)])),
        Cardinal::Finite(k) => {
            // Each unit has full range; arithmetic certificate: summing k
            // copies of κ gives κ back.
            for &kappa in model.atoms() {
                debug_assert_eq!((0..k).fold(Cardinal::ZERO, |acc, _| acc + kappa), kappa);
            }
            Ok(MatrixUnits::Finite(vec![halving(model); k as usize]))
        }
        Cardinal::Aleph(0) => Ok(MatrixUnits::Countable {
            certificates: model
                .atoms()
                .iter()
                .map(|&kappa| {
                    let prod = Cardinal::ALEPH0 * kappa;
                    debug_assert_eq!(prod, kappa);
                    (kappa, prod)
                })
                .collect(),
        }),
        Cardinal::Aleph(_) => Err(DimensionError::BeyondCertification),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aleph(k: u32) -> Cardinal {
        Cardinal::Aleph(k)
    }

    fn fin(n: u64) -> Cardinal {
        Cardinal::Finite(n)
    }

    fn model(atoms: &[Cardinal]) -> AtomicModel {
        AtomicModel::new(atoms.to_vec()).unwrap()
    }

    fn proj(m: &AtomicModel, mu: &[Cardinal]) -> CProjection {
        CProjection::from_mu(m.clone(), mu.to_vec()).unwrap()
    }

    #[test]
    fn model_validation() {
        assert!(AtomicModel::new(vec![]).is_err());
        assert!(AtomicModel::new(vec![fin(3)]).is_err());
        assert!(AtomicModel::new(vec![aleph(0), aleph(2)]).is_ok());
        let m = model(&[aleph(0)]);
        assert!(CProjection::new(m.clone(), vec![fin(1)], vec![fin(1)]).is_err());
        assert!(CProjection::new(m, vec![fin(1)], vec![aleph(0)]).is_ok());
    }

    #[test]
    fn properly_infinite_examples() {
        let m = model(&[aleph(0), aleph(1)]);
        assert!(is_properly_infinite(&proj(&m, &[aleph(0), aleph(1)])));
        let mixed =
            CProjection::new(m.clone(), vec![fin(3), aleph(1)], vec![aleph(0), aleph(1)]).unwrap();
        assert!(!is_properly_infinite(&mixed));
        assert!(!is_properly_infinite(&CProjection::zero(&m)));
    }

    #[test]
    fn comparison_examples() {
        let m = model(&[aleph(0), aleph(1)]);
        let e = proj(&m, &[Cardinal::ZERO, aleph(1)]);
        let f = proj(&m, &[aleph(0), aleph(1)]);
        assert!(equivalent(&e, &e).unwrap());
        assert!(subequiv(&e, &f).unwrap());
        let m1 = model(&[aleph(1), aleph(1)]);
        assert!(!subequiv(
            &proj(&m1, &[aleph(1), Cardinal::ZERO]),
            &proj(&m1, &[aleph(0), Cardinal::ZERO])
        )
        .unwrap());

        let other = model(&[aleph(0)]);
        assert_eq!(
            equivalent(&e, &CProjection::identity(&other)),
            Err(DimensionError::ModelMismatch)
        );
    }

    #[test]
    fn cover_and_cut_examples() {
        let m = model(&[aleph(0), aleph(1)]);
        let e = proj(&m, &[aleph(0), Cardinal::ZERO]);
        assert_eq!(central_cover(&e), vec![true, false]);

        let f = proj(&m, &[aleph(0), aleph(1)]);
        assert_eq!(cut(&[true, true], &f), f);
        let g = cut(&[false, true], &f);
        assert_eq!(g.mu(), &[Cardinal::ZERO, aleph(1)]);
        assert_eq!(g.nu()[0], aleph(0));
    }

    #[test]
    fn dim_d_examples() {
        let m = model(&[aleph(0), aleph(1)]);
        assert_eq!(dim_d(&proj(&m, &[aleph(0), aleph(1)])).unwrap(), aleph(1));
        assert_eq!(
            dim_d(&proj(&m, &[Cardinal::ZERO, aleph(1)])).unwrap(),
            aleph(2)
        );
        assert_eq!(dim_d(&CProjection::zero(&m)).unwrap(), Cardinal::ZERO);
        let mixed = CProjection::new(m, vec![fin(2), aleph(1)], vec![aleph(0), aleph(1)]).unwrap();
        assert_eq!(
            dim_d(&mixed),
            Err(DimensionError::NotProperlyInfinite { atom: 0 })
        );
    }

    #[test]
    fn dim_dbar_examples() {
        let m = model(&[aleph(0), aleph(1)]);
        let e = proj(&m, &[aleph(0), aleph(1)]);
        // Oracle: enumerate all three nonzero central cuts and take the sup.
        let zs: [[bool; 2]; 3] = [[true, false], [false, true], [true, true]];
        let sup = zs
            .iter()
            .map(|z| dim_d(&cut(z, &e)).unwrap())
            .max()
            .unwrap();
        assert_eq!(dim_dbar(&e).unwrap(), sup);
        assert_eq!(dim_dbar(&e).unwrap(), aleph(2));

        let single = model(&[aleph(0)]);
        let e = CProjection::identity(&single);
        assert_eq!(dim_dbar(&e).unwrap(), dim_d(&e).unwrap());
        assert_eq!(
            dim_dbar(&CProjection::zero(&single)).unwrap(),
            Cardinal::ZERO
        );
    }

    #[test]
    fn gamma_sizes_examples() {
        let m1 = model(&[aleph(1)]);
        assert_eq!(
            gamma_sizes(&CProjection::identity(&m1)).unwrap(),
            vec![aleph(0), aleph(1)]
        );
        let m0 = model(&[aleph(0)]);
        assert_eq!(
            gamma_sizes(&CProjection::identity(&m0)).unwrap(),
            vec![aleph(0)]
        );
    }

    #[test]
    fn delta_examples() {
        let m = model(&[aleph(1)]);
        let d = delta(&CProjection::identity(&m)).unwrap();
        assert_eq!(d.value, aleph(1));
        assert!(d.achieved);

        let m2 = model(&[aleph(0), aleph(2)]);
        let d = delta(&CProjection::identity(&m2)).unwrap();
        assert_eq!(d.value, aleph(0));
        assert!(d.achieved);

        let m0 = model(&[aleph(0)]);
        let d = delta(&CProjection::identity(&m0)).unwrap();
        assert_eq!(d.value, aleph(0));
        assert!(d.achieved);
    }

    #[test]
    fn equidimensional_examples() {
        let m = model(&[aleph(0), aleph(0), aleph(1)]);
        assert!(is_equidimensional(&proj(
            &m,
            &[aleph(0), aleph(0), Cardinal::ZERO]
        )));
        assert!(!is_equidimensional(&proj(
            &m,
            &[aleph(0), Cardinal::ZERO, aleph(1)]
        )));
        assert!(is_equidimensional(&CProjection::zero(&m)));
    }

    #[test]
    fn equidim_decomposition_examples() {
        let m = model(&[aleph(0), aleph(1), aleph(0)]);
        let e = CProjection::identity(&m);
        let dec = equidim_decomposition(&e).unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (vec![true, false, true], aleph(1)));
        assert_eq!(dec[1], (vec![false, true, false], aleph(2)));
        // Pieces are orthogonal, sum to the cover, and each cut is
        // equidimensional and maximal.
        for (z, alpha) in &dec {
            let piece = cut(z, &e);
            assert!(is_equidimensional(&piece));
            assert_eq!(dim_d(&piece).unwrap(), *alpha);
            // Adding any other cover atom breaks equidimensionality.
            for i in 0..m.num_atoms() {
                if !z[i] && !e.mu()[i].is_zero() {
                    let mut bigger = z.clone();
                    bigger[i] = true;
                    assert!(!is_equidimensional(&cut(&bigger, &e)));
                }
            }
        }

        // Equidimensional input: one piece, the cover.
        let m2 = model(&[aleph(1), aleph(1), aleph(2)]);
        let eq = proj(&m2, &[aleph(1), aleph(1), Cardinal::ZERO]);
        let dec = equidim_decomposition(&eq).unwrap();
        assert_eq!(dec, vec![(vec![true, true, false], aleph(2))]);

        // All distinct: one piece per cover atom.
        let m3 = model(&[aleph(0), aleph(1), aleph(2)]);
        let all = CProjection::identity(&m3);
        assert_eq!(equidim_decomposition(&all).unwrap().len(), 3);
    }

    #[test]
    fn dimension_function_examples() {
        let m = model(&[aleph(0), aleph(1)]);
        assert_eq!(
            dimension_function(&proj(&m, &[aleph(0), aleph(1)])),
            DimensionFunction(vec![aleph(1), aleph(2)])
        );
        assert_eq!(
            dimension_function(&CProjection::zero(&m)),
            DimensionFunction(vec![Cardinal::ZERO, Cardinal::ZERO])
        );
        assert_eq!(
            dimension_function(&proj(&m, &[Cardinal::ZERO, aleph(0)])),
            DimensionFunction(vec![Cardinal::ZERO, aleph(1)])
        );
    }

    #[test]
    fn compare_by_dimension_examples() {
        let m = model(&[aleph(1), aleph(1)]);
        let e = proj(&m, &[aleph(0), aleph(1)]);
        let f = proj(&m, &[aleph(1), aleph(1)]);
        assert!(compare_by_dimension(&e, &f).unwrap());
        assert!(subequiv(&e, &f).unwrap());
        assert!(compare_by_dimension(&e, &e).unwrap());

        let m3 = model(&[aleph(1), aleph(2)]);
        let e = proj(&m3, &[aleph(1), Cardinal::ZERO]);
        let f = proj(&m3, &[aleph(0), aleph(2)]);
        assert!(!compare_by_dimension(&e, &f).unwrap());
        assert!(!subequiv(&e, &f).unwrap());
    }

    #[test]
    fn halving_examples() {
        let m = model(&[aleph(0), aleph(2)]);
        let e = halving(&m);
        assert_eq!(e.mu(), m.atoms());
        assert_eq!(e.nu(), m.atoms());
        let one = CProjection::identity(&m);
        assert!(equivalent(&e, &one).unwrap());
        assert!(equivalent(&e.complement(), &one).unwrap());
    }

    #[test]
    fn matrix_units_examples() {
        let m = model(&[aleph(0)]);
        match matrix_units(&m, fin(2)).unwrap() {
            MatrixUnits::Finite(units) => {
                assert_eq!(units.len(), 2);
                let one = CProjection::identity(&m);
                for u in &units {
                    assert!(equivalent(u, &one).unwrap());
                }
            }
            other => panic!("expected finite units, got {other:?}"),
        }

        let m1 = model(&[aleph(1)]);
        match matrix_units(&m1, Cardinal::ALEPH0).unwrap() {
            MatrixUnits::Countable { certificates } => {
                assert_eq!(certificates, vec![(aleph(1), aleph(1))]);
            }
            other => panic!("expected countable descriptor, got {other:?}"),
        }

        assert!(matches!(
            matrix_units(&m, fin(0)),
            Err(DimensionError::BadUnitCount)
        ));
        assert!(matches!(
            matrix_units(&m, aleph(1)),
            Err(DimensionError::BeyondCertification)
        ));
    }

    #[test]
    fn section5_counterexample_regression() {
        // A = B(H) ⊕ B(K) with dim H = aleph_0 < aleph_1 = dim K.
        let m = model(&[aleph(0), aleph(1)]);
        let e = proj(&m, &[Cardinal::ZERO, aleph(1)]); // (0, 1)
        let f = CProjection::identity(&m); // (1, 1)
        assert!(subequiv(&e, &f).unwrap());
        assert!(!equivalent(&e, &f).unwrap());
        assert!(dim_d(&e).unwrap() > dim_d(&f).unwrap());

        // (1, p) with p of dimension dim H: same d as (1, 1), different
        // projection.
        let p = proj(&m, &[aleph(0), aleph(0)]);
        assert_eq!(dim_d(&p).unwrap(), dim_d(&f).unwrap());
        assert!(!equivalent(&p, &f).unwrap());
    }

    #[test]
    fn join_absorbs_subequivalent() {
        let m = model(&[aleph(0), aleph(2)]);
        let e = CProjection::identity(&m);
        let f = proj(&m, &[aleph(0), aleph(1)]);
        assert!(subequiv(&f, &e).unwrap());
        let j = join(&e, &f).unwrap();
        assert!(equivalent(&j, &e).unwrap());
    }
}
