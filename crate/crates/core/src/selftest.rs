//! Named property checks over every engine, runnable at desk scale.
//!
//! Each case exercises one law from the comparison, diagonalization,
//! dimension, or functor theory and reports a short detail string. The CLI
//! `selftest` command runs the whole registry; the acceptance suite drives
//! the same check functions at its own (larger) parameters.

use crate::cardinal::{self, Cardinal};
use crate::diag::{normal_block_eigenvalues, simultaneous_diagonalize};
use crate::dimension::{
    self, central_cover, compare_by_dimension, cut, delta, dim_d, dim_dbar, equidim_decomposition,
    gamma_sizes, is_equidimensional, is_properly_infinite, join, AtomicModel, CProjection,
};
use crate::fdalg::{AlgebraShape, Element, Tolerance};
use crate::functor::check_sup_preservation;
use crate::gen;
use crate::masa::{self, equipartition, joint_spectral, Masa, MasaError};
use crate::projlat::{
    central_cover as proj_central_cover, comparison_decomposition, compress, diagonal_projection,
    equivalent, in_corner, partial_isometry, proj_sup, rank_vector, strict_subequiv, subequiv,
};
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&mut ChaCha8Rng, &Tolerance) -> Result<String, String>;

fn rng_for(seed: u64, case: &str) -> ChaCha8Rng {
    // Stable per-case stream: the case name is folded into the seed so
    // cases can run in any order (or in parallel) with identical results.
    let mut h: u64 = 0xcbf29ce484222325;
    for b in case.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Run every registered case, sorted by name.
pub fn run_all(seed: u64, tol: &Tolerance) -> Vec<CaseResult> {
    let mut cases = registry();
    cases.sort_by(|a, b| a.0.cmp(b.0));
    cases
        .into_iter()
        .map(|(name, check)| {
            let mut rng = rng_for(seed, name);
            match check(&mut rng, tol) {
                Ok(detail) => CaseResult {
                    name: name.to_string(),
                    passed: true,
                    detail,
                },
                Err(detail) => CaseResult {
                    name: name.to_string(),
                    passed: false,
                    detail,
                },
            }
        })
        .collect()
}

fn registry() -> Vec<(&'static str, Check)> {
    vec![
        ("cardinal-total-order", check_cardinal_total_order),
        ("cardinal-infinite-square", check_cardinal_infinite_square),
        ("cardinal-absorption", check_cardinal_absorption),
        ("cardinal-sup-plus", check_cardinal_sup_plus),
        ("cardinal-succ-monotone", check_cardinal_succ_monotone),
        ("fdalg-cstar-identity", check_cstar_identity),
        ("fdalg-entry-round-trip", check_entry_round_trip),
        ("fdalg-projection-sum", check_projection_sum),
        ("projlat-comparison-exhaustive", check_comparison_small),
        ("projlat-schroeder-bernstein", check_schroeder_bernstein),
        ("projlat-additivity", check_additivity),
        (
            "projlat-central-multiplication",
            check_central_multiplication,
        ),
        ("projlat-corner-equivalence", check_corner_equivalence),
        ("projlat-corner-central-cover", check_corner_central_cover),
        ("masa-diagonalizes", check_masa_diagonalizes),
        ("masa-maximality", check_masa_maximality),
        ("masa-corner-maximality", check_masa_corner_maximality),
        ("masa-equipartition-units", check_equipartition_units),
        ("masa-divisibility", check_divisibility),
        ("masa-halving", check_masa_halving),
        ("diag-random-instances", check_diag_small),
        ("diag-spectrum-preservation", check_diag_spectrum),
        ("diag-commutativity-preservation", check_diag_commutativity),
        ("diag-scalar-diagonal-output", check_diag_scalar_output),
        ("dimension-exhaustive", check_dimension_small),
        ("dimension-closed-form", check_dim_closed_form_small),
        ("dimension-section5-regression", check_section5_regression),
        ("dimension-halving", check_dimension_halving),
        ("dimension-matrix-units", check_matrix_units),
        ("functor-hom-laws", check_functor_laws),
        ("functor-composition", check_functor_composition),
        ("functor-lift-entrywise", check_functor_lift),
        ("functor-sup-preservation", check_functor_sup_small),
        ("oracle-partial-isometry", check_partial_isometry_small),
    ]
}

// --- shared enumeration helpers -------------------------------------------

/// Every atomic model with up to `max_atoms` atoms and aleph indices up to
/// `max_index`.
pub fn enumerate_models(max_atoms: usize, max_index: u32) -> Vec<AtomicModel> {
    let mut out = Vec::new();
    for count in 1..=max_atoms {
        let mut idx = vec![0u32; count];
        loop {
            out.push(AtomicModel::new(idx.iter().map(|&a| Cardinal::Aleph(a)).collect()).unwrap());
            let mut pos = count;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if idx[pos] < max_index {
                    idx[pos] += 1;
                    for slot in idx.iter_mut().skip(pos + 1) {
                        *slot = 0;
                    }
                    break;
                }
                if pos == 0 {
                    idx.clear();
                    break;
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    out
}

/// Every properly-infinite-or-zero projection of the model: per atom the
/// range dimension is 0 or an infinite cardinal at most the atom dimension.
pub fn enumerate_projections(model: &AtomicModel) -> Vec<CProjection> {
    let choices: Vec<Vec<Cardinal>> = model
        .atoms()
        .iter()
        .map(|&kappa| {
            let Cardinal::Aleph(top) = kappa else {
                unreachable!()
            };
            let mut v = vec![Cardinal::ZERO];
            v.extend((0..=top).map(Cardinal::Aleph));
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; model.num_atoms()];
    loop {
        let mu: Vec<Cardinal> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        out.push(CProjection::from_mu(model.clone(), mu).unwrap());
        let mut pos = model.num_atoms();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if pick[pos] + 1 < choices[pos].len() {
                pick[pos] += 1;
                for slot in pick.iter_mut().skip(pos + 1) {
                    *slot = 0;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}

fn enumerate_shapes(max_blocks: usize, max_size: usize) -> Vec<AlgebraShape> {
    let mut out = Vec::new();
    for count in 1..=max_blocks {
        let mut sizes = vec![1usize; count];
        loop {
            out.push(AlgebraShape::new(sizes.clone()).unwrap());
            let mut pos = count;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                if sizes[pos] < max_size {
                    sizes[pos] += 1;
                    for slot in sizes.iter_mut().skip(pos + 1) {
                        *slot = 1;
                    }
                    break;
                }
                if pos == 0 {
                    sizes.clear();
                    break;
                }
            }
            if sizes.is_empty() {
                break;
            }
        }
    }
    out
}

fn enumerate_rank_vectors(shape: &AlgebraShape) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut ranks = vec![0usize; shape.num_blocks()];
    loop {
        out.push(ranks.clone());
        let mut pos = shape.num_blocks();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if ranks[pos] < shape.block_size(pos) {
                ranks[pos] += 1;
                for slot in ranks.iter_mut().skip(pos + 1) {
                    *slot = 0;
                }
                break;
            }
            if pos == 0 {
                return out;
            }
        }
    }
}

fn random_small_shape<R: Rng>(rng: &mut R, max_blocks: usize, max_size: usize) -> AlgebraShape {
    let count = rng.random_range(1..=max_blocks);
    AlgebraShape::new((0..count).map(|_| rng.random_range(1..=max_size)).collect()).unwrap()
}

// --- acceptance-grade checks (parameterized) ------------------------------

/// Random diagonalization instances built from a known witness; checks the
/// stated unitarity, residual, and round-trip bounds.
pub fn check_diagonalization(
    instances: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<String, String> {
    let mut worst_unitarity = 0.0f64;
    let mut worst_residual = 0.0f64;
    let mut worst_roundtrip = 0.0f64;
    for run in 0..instances {
        let base = random_small_shape(rng, 3, 3);
        let n = rng.random_range(1..=3);
        let members = rng.random_range(1..=4);
        let fam = gen::random_commuting_family(&base, n, members, rng);
        let result = simultaneous_diagonalize(&base, n, &fam.family, tol)
            .map_err(|e| format!("run {run}: {e}"))?;
        let scale = result.report.scale;
        worst_unitarity = worst_unitarity.max(result.report.unitarity_defect);
        if result.report.unitarity_defect > 1e-10 {
            return Err(format!(
                "run {run}: unitarity defect {} > 1e-10",
                result.report.unitarity_defect
            ));
        }
        for &r in &result.report.residuals {
            worst_residual = worst_residual.max(r / scale);
            if r > 1e-8 * scale {
                return Err(format!("run {run}: residual {r} > 1e-8 * {scale}"));
            }
        }
        for (x, d) in fam.family.iter().zip(&result.diagonalized) {
            let back = result
                .u
                .adjoint()
                .mul(d)
                .and_then(|m| m.mul(&result.u))
                .map_err(|e| e.to_string())?;
            let err = back.dist(x);
            worst_roundtrip = worst_roundtrip.max(err / scale);
            if err > 1e-10 * scale {
                return Err(format!("run {run}: round trip {err} > 1e-10 * {scale}"));
            }
        }
    }
    Ok(format!(
        "{instances} instances; worst unitarity {worst_unitarity:.2e}, residual/scale {worst_residual:.2e}, round-trip/scale {worst_roundtrip:.2e}"
    ))
}

/// Divisibility obstruction and its absence on amplified shapes.
pub fn check_equipartition_divisibility(
    draws: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<String, String> {
    // Shape (3) with n = 2 must fail.
    let bad = Masa::diagonal(&AlgebraShape::new(vec![3]).unwrap());
    match equipartition(&bad, 2) {
        Err(MasaError::NotDivisible { size: 3, n: 2, .. }) => {}
        other => {
            return Err(format!(
                "expected divisibility failure on (3)/2, got {other:?}"
            ))
        }
    }
    // Amplified shapes always succeed.
    for run in 0..draws {
        let base = random_small_shape(rng, 3, 3);
        let n = rng.random_range(1..=4);
        let fam = gen::random_commuting_family(&base, n, 2, rng);
        let masa = joint_spectral(&fam.shape, &fam.family, tol).map_err(|e| e.to_string())?;
        let parts = equipartition(&masa, n)
            .map_err(|e| format!("run {run} on {:?}: {e}", fam.shape.blocks()))?;
        let want: Vec<usize> = base.blocks().to_vec();
        let mut sum = Element::zero(&fam.shape);
        for p in &parts {
            let ranks = rank_vector(p, tol).map_err(|e| e.to_string())?;
            if ranks.0 != want {
                return Err(format!("run {run}: ranks {ranks:?} != {want:?}"));
            }
            sum = sum.add(p).map_err(|e| e.to_string())?;
        }
        if sum.dist(&Element::identity(&fam.shape)) > 1e-10 {
            return Err(format!("run {run}: parts do not sum to 1"));
        }
    }
    Ok(format!(
        "(3)/2 obstructed; {draws} amplified instances partitioned"
    ))
}

/// Exhaustive comparison decomposition check over all projection rank pairs
/// on shapes with at most `max_blocks` blocks of size at most `max_size`.
pub fn check_comparison_exhaustive(
    max_blocks: usize,
    max_size: usize,
    tol: &Tolerance,
) -> Result<String, String> {
    let mut cases = 0u64;
    for shape in enumerate_shapes(max_blocks, max_size) {
        let rank_vectors = enumerate_rank_vectors(&shape);
        for re in &rank_vectors {
            let e = diagonal_projection(&shape, re);
            for rf in &rank_vectors {
                let f = diagonal_projection(&shape, rf);
                let (x, y, z) = comparison_decomposition(&e, &f, tol).map_err(|e| e.to_string())?;
                // Partition of the identity.
                for k in 0..shape.num_blocks() {
                    let set = [x.flags()[k], y.flags()[k], z.flags()[k]];
                    if set.iter().filter(|&&b| b).count() != 1 {
                        return Err(format!("not a partition at block {k} ({re:?}, {rf:?})"));
                    }
                }
                let ok = strict_subequiv(&x.cut(&e), &x.cut(&f), tol).map_err(|e| e.to_string())?
                    && equivalent(&y.cut(&e), &y.cut(&f), tol).map_err(|e| e.to_string())?
                    && strict_subequiv(&z.cut(&f), &z.cut(&e), tol).map_err(|e| e.to_string())?;
                if !ok {
                    return Err(format!(
                        "clause failure on shape {:?}, ranks {re:?} vs {rf:?}",
                        shape.blocks()
                    ));
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

/// Exhaustive dimension-theory sweep over all atomic models with at most
/// `max_atoms` atoms and aleph indices at most `max_index`.
pub fn check_dimension_exhaustive(max_atoms: usize, max_index: u32) -> Result<String, String> {
    let mut pair_cases = 0u64;
    let mut proj_cases = 0u64;
    for model in enumerate_models(max_atoms, max_index) {
        let projections = enumerate_projections(&model);
        let atoms = model.num_atoms();

        // Per-projection data and laws.
        struct Info {
            cover: Vec<bool>,
            d: Cardinal,
            equidim: bool,
            pi: bool,
        }
        let mut infos = Vec::with_capacity(projections.len());
        for e in &projections {
            let pi = is_properly_infinite(e);
            let d = dim_d(e).map_err(|err| err.to_string())?;
            let cover = central_cover(e);
            let equidim = is_equidimensional(e);
            proj_cases += 1;

            if pi {
                // Downward closure and the closed-form cross-check.
                let sizes = gamma_sizes(e).map_err(|err| err.to_string())?;
                for (i, s) in sizes.iter().enumerate() {
                    if *s != Cardinal::Aleph(i as u32) {
                        return Err(format!("gamma sizes not downward closed: {sizes:?}"));
                    }
                }
                if cardinal::sup_plus(&sizes) != d {
                    return Err(format!("closed form mismatch: sup_plus({sizes:?}) != {d}"));
                }
                let dl = delta(e).map_err(|err| err.to_string())?;
                if !dl.achieved || Some(&dl.value) != sizes.last() {
                    return Err("delta not achieved at max of gamma sizes".into());
                }

                // Monotonicity under central cuts.
                for mask in 1u32..(1 << atoms) {
                    let z: Vec<bool> = (0..atoms).map(|i| mask & (1 << i) != 0).collect();
                    let ze = cut(&z, e);
                    if ze.is_zero() {
                        continue;
                    }
                    let under_cover = z.iter().zip(&cover).all(|(&zi, &ci)| !zi || ci);
                    if under_cover {
                        let dze = dim_d(&ze).map_err(|err| err.to_string())?;
                        if d > dze {
                            return Err(format!("d(e) > d(ze) for z {z:?}"));
                        }
                    }
                    let dbar_ze = dim_dbar(&ze).map_err(|err| err.to_string())?;
                    let dbar_e = dim_dbar(e).map_err(|err| err.to_string())?;
                    if dbar_ze > dbar_e {
                        return Err(format!("dbar(ze) > dbar(e) for z {z:?}"));
                    }
                }

                // Equidimensional decomposition: orthogonal, sums to the
                // cover, pieces equidimensional of the stated dimension and
                // maximal.
                let dec = equidim_decomposition(e).map_err(|err| err.to_string())?;
                let mut seen = vec![false; atoms];
                for (zflags, alpha) in &dec {
                    for (i, &f) in zflags.iter().enumerate() {
                        if f {
                            if seen[i] {
                                return Err("decomposition pieces overlap".into());
                            }
                            seen[i] = true;
                        }
                    }
                    let piece = cut(zflags, e);
                    if !is_equidimensional(&piece) {
                        return Err("decomposition piece not equidimensional".into());
                    }
                    if dim_d(&piece).map_err(|err| err.to_string())? != *alpha {
                        return Err("decomposition piece has wrong dimension".into());
                    }
                    for i in 0..atoms {
                        if !zflags[i] && cover[i] {
                            let mut bigger = zflags.clone();
                            bigger[i] = true;
                            if is_equidimensional(&cut(&bigger, e)) {
                                return Err("decomposition piece not maximal".into());
                            }
                        }
                    }
                }
                if seen != cover {
                    return Err("decomposition does not sum to the cover".into());
                }
            }
            infos.push(Info {
                cover,
                d,
                equidim,
                pi,
            });
        }

        // Pairwise laws.
        for (i, e) in projections.iter().enumerate() {
            for (j, f) in projections.iter().enumerate() {
                pair_cases += 1;
                let le = dimension::subequiv(e, f).map_err(|err| err.to_string())?;
                let cmp = compare_by_dimension(e, f).map_err(|err| err.to_string())?;
                if cmp != le {
                    return Err(format!(
                        "dimension-function comparison disagrees with subequivalence: {:?} vs {:?}",
                        e.mu(),
                        f.mu()
                    ));
                }
                let (ie, jf) = (&infos[i], &infos[j]);
                if ie.pi && jf.pi && ie.cover == jf.cover && le && ie.d > jf.d {
                    return Err(format!(
                        "monotonicity failure: {:?} under {:?}",
                        e.mu(),
                        f.mu()
                    ));
                }
                if ie.pi
                    && jf.pi
                    && ie.cover == jf.cover
                    && ie.equidim
                    && jf.equidim
                    && le
                    && e.mu() != f.mu()
                    && ie.d >= jf.d
                {
                    return Err(format!(
                        "strict monotonicity failure: {:?} under {:?}",
                        e.mu(),
                        f.mu()
                    ));
                }
                if ie.pi && jf.pi && ie.equidim && jf.equidim {
                    let eq = dimension::equivalent(e, f).map_err(|err| err.to_string())?;
                    let by_data = ie.cover == jf.cover && ie.d == jf.d;
                    if eq != by_data {
                        return Err(format!(
                            "cover+dimension does not classify equivalence: {:?} vs {:?}",
                            e.mu(),
                            f.mu()
                        ));
                    }
                    let cover_leq = ie.cover.iter().zip(&jf.cover).all(|(&ce, &cf)| !ce || cf);
                    let le_by_data = cover_leq && ie.d <= jf.d;
                    if le != le_by_data {
                        return Err(format!(
                            "cover+dimension does not classify subequivalence: {:?} vs {:?}",
                            e.mu(),
                            f.mu()
                        ));
                    }
                }
                // Join absorption: f ≾ e with e properly infinite gives
                // e ∨ f ∼ e.
                if ie.pi && dimension::subequiv(f, e).map_err(|err| err.to_string())? {
                    let jn = join(e, f).map_err(|err| err.to_string())?;
                    if !dimension::equivalent(&jn, e).map_err(|err| err.to_string())? {
                        return Err("join absorption failure".into());
                    }
                }
            }
        }

        // Halving per model.
        let h = dimension::halving(&model);
        let one = CProjection::identity(&model);
        if !dimension::equivalent(&h, &one).map_err(|err| err.to_string())?
            || !dimension::equivalent(&h.complement(), &one).map_err(|err| err.to_string())?
        {
            return Err("halving projection not equivalent to 1 and its complement".into());
        }
    }
    Ok(format!(
        "{proj_cases} projections, {pair_cases} ordered pairs"
    ))
}

/// The closed-form dimension agrees with the definitional route on every
/// in-scope model.
pub fn check_dim_closed_form(max_atoms: usize, max_index: u32) -> Result<String, String> {
    let mut cases = 0u64;
    for model in enumerate_models(max_atoms, max_index) {
        for e in enumerate_projections(&model) {
            if !is_properly_infinite(&e) {
                continue;
            }
            let sizes = gamma_sizes(&e).map_err(|err| err.to_string())?;
            let via_sizes = cardinal::sup_plus(&sizes);
            let direct = dim_d(&e).map_err(|err| err.to_string())?;
            if via_sizes != direct {
                return Err(format!(
                    "mismatch on {:?}: sup_plus(gamma) = {via_sizes}, d = {direct}",
                    e.mu()
                ));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} projections cross-checked"))
}

/// Random equivalent pairs: the rank decision agrees with an explicit
/// partial isometry, and inequivalent pairs are refused.
pub fn check_partial_isometry(
    pairs: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<String, String> {
    let mut worst = 0.0f64;
    for run in 0..pairs {
        let shape = random_small_shape(rng, 3, 4);
        let ranks = gen::random_rank_vector(&shape, rng);
        let p = gen::random_projection(&shape, &ranks, rng);
        let q = gen::random_projection(&shape, &ranks, rng);
        if !equivalent(&p, &q, tol).map_err(|e| e.to_string())? {
            return Err(format!("run {run}: equal-rank pair not equivalent"));
        }
        let v = partial_isometry(&p, &q, tol).map_err(|e| format!("run {run}: {e}"))?;
        let d1 = v.adjoint().mul(&v).map_err(|e| e.to_string())?.dist(&p);
        let d2 = v.mul(&v.adjoint()).map_err(|e| e.to_string())?.dist(&q);
        worst = worst.max(d1).max(d2);
        if d1 > 1e-9 || d2 > 1e-9 {
            return Err(format!("run {run}: witness defect {d1:.3e}/{d2:.3e}"));
        }
        // Perturb one rank when possible: must be refused.
        if let Some(k) = (0..shape.num_blocks()).find(|&k| ranks[k] < shape.block_size(k)) {
            let mut other = ranks.clone();
            other[k] += 1;
            let q2 = gen::random_projection(&shape, &other, rng);
            if equivalent(&p, &q2, tol).map_err(|e| e.to_string())? {
                return Err(format!("run {run}: different ranks reported equivalent"));
            }
            if partial_isometry(&p, &q2, tol).is_ok() {
                return Err(format!("run {run}: witness built for inequivalent pair"));
            }
        }
    }
    Ok(format!("{pairs} pairs, worst witness defect {worst:.2e}"))
}

/// Random homomorphisms preserve projection suprema (orthogonal and not)
/// and satisfy the composition law; the diagonal route recomputes the
/// orthogonal supremum entrywise.
pub fn check_functor_suite(
    homs: usize,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<String, String> {
    let mut worst_defect = 0.0f64;
    for run in 0..homs {
        let dom = random_small_shape(rng, 2, 2);
        let h = gen::random_star_hom(&dom, rng.random_range(1..=2), 2, rng);
        let n = rng.random_range(1..=3);
        let lifted = h.lift(n);
        let amp = dom.matrix_algebra(n);

        // Orthogonal family: conjugated complementary diagonal projections.
        let u = gen::random_unitary_element(&amp, rng);
        let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
        let total: Vec<usize> = amp.blocks().to_vec();
        let cut1: Vec<usize> = total.iter().map(|&m| m / 2).collect();
        let p1 = conj(&diagonal_projection(&amp, &cut1));
        let p2 = conj(
            &diagonal_projection(&amp, &total)
                .sub(&diagonal_projection(&amp, &cut1))
                .unwrap(),
        );
        let family = vec![p1, p2];
        let report = check_sup_preservation(&lifted, &family, true, tol)
            .map_err(|e| format!("run {run}: {e}"))?;
        worst_defect = worst_defect.max(report.defect);
        if !report.passed {
            return Err(format!("run {run}: orthogonal defect {}", report.defect));
        }

        // The same supremum through the diagonal route: diagonalize the
        // orthogonal family, sum the diagonal images entrywise, undo the
        // conjugation.
        let diag = simultaneous_diagonalize(&dom, n, &family, tol)
            .map_err(|e| format!("run {run}: {e}"))?;
        let mut entrywise = Element::zero(&amp);
        for d in &diag.diagonalized {
            entrywise = entrywise.add(d).map_err(|e| e.to_string())?;
        }
        let via_diag = diag
            .u
            .adjoint()
            .mul(&entrywise)
            .and_then(|m| m.mul(&diag.u))
            .map_err(|e| e.to_string())?;
        let sup = proj_sup(&family, tol).map_err(|e| e.to_string())?;
        if via_diag.dist(&sup) > 1e-9 {
            return Err(format!(
                "run {run}: entrywise supremum after diagonalization deviates by {}",
                via_diag.dist(&sup)
            ));
        }

        // Arbitrary (generically non-orthogonal) family.
        let r1 = gen::random_rank_vector(&amp, rng);
        let r2 = gen::random_rank_vector(&amp, rng);
        let q1 = gen::random_projection(&amp, &r1, rng);
        let q2 = gen::random_projection(&amp, &r2, rng);
        let report = check_sup_preservation(&lifted, &[q1, q2], false, tol)
            .map_err(|e| format!("run {run}: {e}"))?;
        worst_defect = worst_defect.max(report.defect);
        if !report.passed {
            return Err(format!("run {run}: arbitrary defect {}", report.defect));
        }

        // Composition law on random elements.
        let outer = gen::random_star_hom(h.codomain(), rng.random_range(1..=2), 2, rng);
        let comp = outer.compose(&h).map_err(|e| e.to_string())?;
        let x = gen::random_element(&dom, rng);
        let seq = outer
            .apply(&h.apply(&x).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let direct = comp.apply(&x).map_err(|e| e.to_string())?;
        if direct.dist(&seq) > 1e-10 * (1.0 + x.op_norm()) {
            return Err(format!(
                "run {run}: composition law defect {}",
                direct.dist(&seq)
            ));
        }
    }
    Ok(format!(
        "{homs} homomorphisms, worst sup defect {worst_defect:.2e}"
    ))
}

// --- registry cases --------------------------------------------------------

fn small_cardinals() -> Vec<Cardinal> {
    let mut v: Vec<Cardinal> = (0..6).map(Cardinal::Finite).collect();
    v.extend((0..5).map(Cardinal::Aleph));
    v
}

fn check_cardinal_total_order(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    let values = small_cardinals();
    for &a in &values {
        for &b in &values {
            let hits = [a < b, a == b, a > b].iter().filter(|&&x| x).count();
            if hits != 1 {
                return Err(format!("trichotomy fails on {a}, {b}"));
            }
        }
    }
    Ok(format!("{} pairs", values.len() * values.len()))
}

fn check_cardinal_infinite_square(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for k in 0..8 {
        let a = Cardinal::Aleph(k);
        if a * a != a {
            return Err(format!("{a}^2 != {a}"));
        }
    }
    Ok("aleph_0..aleph_7".into())
}

fn check_cardinal_absorption(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    let values = small_cardinals();
    for &a in &values {
        for &b in &values {
            let applicable = b.is_infinite() && !a.is_zero() && a <= b;
            if applicable && (a * b != b || a + b != b) {
                return Err(format!("absorption fails on {a}, {b}"));
            }
        }
    }
    Ok("all small pairs".into())
}

fn check_cardinal_sup_plus(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    if cardinal::sup_plus(&[]) != Cardinal::ZERO {
        return Err("empty sup_plus is not 0".into());
    }
    if cardinal::sup(&[]).is_ok() {
        return Err("empty sup did not error".into());
    }
    let values = small_cardinals();
    for &a in &values {
        for &b in &values {
            let sp = cardinal::sup_plus(&[a, b]);
            if sp <= a || sp <= b {
                return Err(format!("sup_plus not strict on {a}, {b}"));
            }
            if a.max(b).succ() != sp {
                return Err(format!("sup_plus not tight on {a}, {b}"));
            }
        }
    }
    Ok("strict and tight".into())
}

fn check_cardinal_succ_monotone(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    let values = small_cardinals();
    for &a in &values {
        for &b in &values {
            if a < b && a.succ() >= b.succ() {
                return Err(format!("succ not monotone at {a}, {b}"));
            }
        }
    }
    Ok("monotone".into())
}

fn check_cstar_identity(rng: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for _ in 0..50 {
        let shape = random_small_shape(rng, 3, 3);
        let x = gen::random_element(&shape, rng);
        let lhs = x.adjoint().mul(&x).map_err(|e| e.to_string())?.op_norm();
        let rhs = x.op_norm().powi(2);
        let defect = (lhs - rhs).abs();
        if defect > 1e-6 * (1.0 + x.op_norm()).powi(2) {
            return Err(format!("C*-identity defect {defect:e}"));
        }
    }
    Ok("50 random elements".into())
}

fn check_entry_round_trip(rng: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for _ in 0..20 {
        let base = random_small_shape(rng, 2, 3);
        let n = rng.random_range(1..=3);
        let x = gen::random_element(&base.matrix_algebra(n), rng);
        let mut grid = Vec::new();
        for i in 0..n {
            for j in 0..n {
                grid.push(crate::fdalg::a_entry(&x, n, i, j).map_err(|e| e.to_string())?);
            }
        }
        let back = crate::fdalg::assemble(&base, n, &grid).map_err(|e| e.to_string())?;
        if back != x {
            return Err("grid round trip not bit-identical".into());
        }
    }
    Ok("20 round trips".into())
}

fn check_projection_sum(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..20 {
        let shape = random_small_shape(rng, 2, 4);
        let total: Vec<usize> = shape.blocks().to_vec();
        let half: Vec<usize> = total.iter().map(|&m| m / 2).collect();
        let u = gen::random_unitary_element(&shape, rng);
        let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
        let p = conj(&diagonal_projection(&shape, &half));
        let q = conj(
            &diagonal_projection(&shape, &total)
                .sub(&diagonal_projection(&shape, &half))
                .unwrap(),
        );
        if !p.add(&q).map_err(|e| e.to_string())?.is_projection(tol) {
            return Err("orthogonal sum is not a projection".into());
        }
    }
    Ok("20 orthogonal sums".into())
}

fn check_comparison_small(_: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    check_comparison_exhaustive(2, 3, tol)
}

fn check_schroeder_bernstein(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..25 {
        let shape = random_small_shape(rng, 3, 3);
        let ranks = gen::random_rank_vector(&shape, rng);
        let p = gen::random_projection(&shape, &ranks, rng);
        let q = gen::random_projection(&shape, &ranks, rng);
        let mutual = subequiv(&p, &q, tol).map_err(|e| e.to_string())?
            && subequiv(&q, &p, tol).map_err(|e| e.to_string())?;
        if !mutual || !equivalent(&p, &q, tol).map_err(|e| e.to_string())? {
            return Err("mutual subequivalence without equivalence".into());
        }
    }
    Ok("25 pairs".into())
}

fn check_additivity(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..20 {
        let shape = AlgebraShape::new(vec![4, 4]).unwrap();
        let u = gen::random_unitary_element(&shape, rng);
        let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
        let e1 = conj(&diagonal_projection(&shape, &[1, 1]));
        let e2 = conj(
            &diagonal_projection(&shape, &[2, 2])
                .sub(&diagonal_projection(&shape, &[1, 1]))
                .unwrap(),
        );
        let f1 = conj(
            &diagonal_projection(&shape, &[3, 3])
                .sub(&diagonal_projection(&shape, &[2, 2]))
                .unwrap(),
        );
        let f2 = conj(
            &diagonal_projection(&shape, &[4, 4])
                .sub(&diagonal_projection(&shape, &[3, 3]))
                .unwrap(),
        );
        let se = proj_sup(&[e1, e2], tol).map_err(|e| e.to_string())?;
        let sf = proj_sup(&[f1, f2], tol).map_err(|e| e.to_string())?;
        if !equivalent(&se, &sf, tol).map_err(|e| e.to_string())? {
            return Err("orthogonal sums of equivalent pairs not equivalent".into());
        }
    }
    Ok("20 families".into())
}

fn check_central_multiplication(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..25 {
        let shape = random_small_shape(rng, 3, 3);
        let ranks = gen::random_rank_vector(&shape, rng);
        let p = gen::random_projection(&shape, &ranks, rng);
        let q = gen::random_projection(&shape, &ranks, rng);
        let flags: Vec<bool> = (0..shape.num_blocks())
            .map(|_| rng.random::<bool>())
            .collect();
        let z = crate::projlat::CentralProjection::new(flags);
        if !equivalent(&z.cut(&p), &z.cut(&q), tol).map_err(|e| e.to_string())? {
            return Err("central cut broke equivalence".into());
        }
    }
    Ok("25 cuts".into())
}

fn check_corner_equivalence(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..20 {
        let shape = AlgebraShape::new(vec![4]).unwrap();
        let u = gen::random_unitary_element(&shape, rng);
        let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
        let e = conj(&diagonal_projection(&shape, &[3]));
        let p = conj(&diagonal_projection(&shape, &[1]));
        let q = conj(
            &diagonal_projection(&shape, &[2])
                .sub(&diagonal_projection(&shape, &[1]))
                .unwrap(),
        );
        if !in_corner(&e, &p, tol).map_err(|e| e.to_string())? {
            return Err("p not in corner".into());
        }
        let v = partial_isometry(&p, &q, tol).map_err(|e| e.to_string())?;
        let qvp = q
            .mul(&v)
            .and_then(|m| m.mul(&p))
            .map_err(|e| e.to_string())?;
        if v.dist(&qvp) > 1e-9 {
            return Err(format!("witness leaves the corner by {}", v.dist(&qvp)));
        }
    }
    Ok("20 corners".into())
}

fn check_corner_central_cover(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..20 {
        let shape = AlgebraShape::new(vec![3, 2, 2]).unwrap();
        let u = gen::random_unitary_element(&shape, rng);
        let conj = |p: &Element| u.mul(p).unwrap().mul(&u.adjoint()).unwrap();
        let e = conj(&diagonal_projection(&shape, &[2, 1, 2]));
        let f = conj(&diagonal_projection(&shape, &[1, 0, 1]));
        let cover_f = proj_central_cover(&f, tol).map_err(|e| e.to_string())?;
        let lhs = compress(&cover_f.to_element(&shape), &e).map_err(|e| e.to_string())?;
        let rhs = cover_f.cut(&e);
        if lhs.dist(&rhs) > 1e-10 {
            return Err("corner cover identity failed".into());
        }
    }
    Ok("20 corners".into())
}

fn check_masa_diagonalizes(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..15 {
        let base = random_small_shape(rng, 2, 2);
        let n = rng.random_range(1..=3);
        let fam = gen::random_commuting_family(&base, n, 3, rng);
        let masa = joint_spectral(&fam.shape, &fam.family, tol).map_err(|e| e.to_string())?;
        let scale = 1.0 + fam.family.iter().map(|x| x.op_norm()).fold(0.0, f64::max);
        let res = masa::diagonalization_residual(&masa, &fam.family);
        if res > tol.eps_struct * scale {
            return Err(format!("residual {res:.3e} above bound"));
        }
    }
    Ok("15 families".into())
}

fn check_masa_maximality(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let base = random_small_shape(rng, 2, 2);
        let fam = gen::random_commuting_family(&base, 2, 2, rng);
        let masa = joint_spectral(&fam.shape, &fam.family, tol).map_err(|e| e.to_string())?;
        let y = gen::random_element(&fam.shape, rng);
        let mut x = Element::zero(&fam.shape);
        for min in masa.abelian_frame() {
            let term = min
                .projection
                .mul(&y)
                .and_then(|m| m.mul(&min.projection))
                .map_err(|e| e.to_string())?;
            x = x.add(&term).map_err(|e| e.to_string())?;
        }
        if masa::diagonalization_residual(&masa, &[x]) > 1e-9 {
            return Err("commutant element not diagonal in frame".into());
        }
    }
    Ok("10 commutant samples".into())
}

fn check_masa_corner_maximality(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let base = AlgebraShape::new(vec![1]).unwrap();
        let fam = gen::random_commuting_family(&base, 3, 2, rng);
        let masa = joint_spectral(&fam.shape, &fam.family, tol).map_err(|e| e.to_string())?;
        let mins = masa.abelian_frame();
        let e = mins[0]
            .projection
            .add(&mins[1].projection)
            .map_err(|e| e.to_string())?;
        let y0 = gen::random_element(&fam.shape, rng);
        let y = e
            .mul(&y0)
            .and_then(|m| m.mul(&e))
            .map_err(|e| e.to_string())?;
        let mut x = Element::zero(&fam.shape);
        for min in &mins[..2] {
            let term = min
                .projection
                .mul(&y)
                .and_then(|m| m.mul(&min.projection))
                .map_err(|e| e.to_string())?;
            x = x.add(&term).map_err(|e| e.to_string())?;
        }
        if masa::diagonalization_residual(&masa, &[x.clone()]) > 1e-9 {
            return Err("corner commutant element not diagonal".into());
        }
        let exe = e
            .mul(&x)
            .and_then(|m| m.mul(&e))
            .map_err(|e| e.to_string())?;
        if x.dist(&exe) > 1e-10 {
            return Err("corner commutant element leaves the corner".into());
        }
    }
    Ok("10 corner samples".into())
}

fn check_equipartition_units(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let base = random_small_shape(rng, 2, 2);
        let n = rng.random_range(1..=3);
        let fam = gen::random_commuting_family(&base, n, 2, rng);
        let masa = joint_spectral(&fam.shape, &fam.family, tol).map_err(|e| e.to_string())?;
        let parts = equipartition(&masa, n).map_err(|e| e.to_string())?;
        let units = crate::diag::standard_diagonal_units(&base, n);
        for (p, u) in parts.iter().zip(&units) {
            if !equivalent(p, u, tol).map_err(|e| e.to_string())? {
                return Err("equipartition piece not equivalent to its diagonal unit".into());
            }
        }
    }
    Ok("10 partitions".into())
}

fn check_divisibility(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    check_equipartition_divisibility(10, rng, tol)
}

fn check_masa_halving(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let count = rng.random_range(1..=2);
        let shape =
            AlgebraShape::new((0..count).map(|_| rng.random_range(2..=4)).collect()).unwrap();
        let fam = gen::random_commuting_family(&shape, 1, 2, rng);
        let masa = joint_spectral(&fam.shape, &fam.family, tol).map_err(|e| e.to_string())?;
        let e = masa::halving(&masa).map_err(|e| e.to_string())?;
        let rest = Element::identity(&shape)
            .sub(&e)
            .map_err(|e| e.to_string())?;
        let ce = proj_central_cover(&e, tol).map_err(|e| e.to_string())?;
        let cr = proj_central_cover(&rest, tol).map_err(|e| e.to_string())?;
        if ce.flags().contains(&false) || cr.flags().contains(&false) {
            return Err("halving lost full central cover".into());
        }
        if !subequiv(&e, &rest, tol).map_err(|e| e.to_string())? {
            return Err("halving piece not below its complement".into());
        }
    }
    // Abelian summand refusal.
    match masa::halving(&Masa::diagonal(&AlgebraShape::new(vec![1, 3]).unwrap())) {
        Err(MasaError::AbelianSummand { block: 0 }) => {}
        other => return Err(format!("expected abelian summand error, got {other:?}")),
    }
    Ok("10 halvings, abelian refusal".into())
}

fn check_diag_small(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    check_diagonalization(25, rng, tol)
}

fn check_diag_spectrum(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let base = random_small_shape(rng, 2, 2);
        let n = rng.random_range(1..=2);
        let fam = gen::random_commuting_family(&base, n, 2, rng);
        let result =
            simultaneous_diagonalize(&base, n, &fam.family, tol).map_err(|e| e.to_string())?;
        let scale = result.report.scale;
        for (x, d) in fam.family.iter().zip(&result.diagonalized) {
            let ex = normal_block_eigenvalues(x, tol).map_err(|e| e.to_string())?;
            let ed = normal_block_eigenvalues(d, tol).map_err(|e| e.to_string())?;
            for (a, b) in ex.iter().zip(&ed) {
                for (za, zb) in a.iter().zip(b) {
                    if (za - zb).norm() > 1e-8 * scale {
                        return Err("spectrum changed under conjugation".into());
                    }
                }
            }
        }
    }
    Ok("10 instances".into())
}

fn check_diag_commutativity(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let base = random_small_shape(rng, 2, 2);
        let fam = gen::random_commuting_family(&base, 2, 3, rng);
        let result =
            simultaneous_diagonalize(&base, 2, &fam.family, tol).map_err(|e| e.to_string())?;
        for a in &result.diagonalized {
            for b in &result.diagonalized {
                if !a.commutes(b, tol).map_err(|e| e.to_string())? {
                    return Err("diagonalized family stopped commuting".into());
                }
            }
        }
    }
    Ok("10 instances".into())
}

fn check_diag_scalar_output(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let base = random_small_shape(rng, 2, 2);
        let fam = gen::random_commuting_family(&base, 2, 2, rng);
        let result =
            simultaneous_diagonalize(&base, 2, &fam.family, tol).map_err(|e| e.to_string())?;
        let scale = result.report.scale;
        for d in &result.diagonalized {
            for b in d.blocks() {
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        if i != j && b[(i, j)].norm() > 1e-8 * scale {
                            return Err("output not scalar diagonal".into());
                        }
                    }
                }
            }
        }
    }
    Ok("10 instances".into())
}

fn check_dimension_small(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    check_dimension_exhaustive(3, 3)
}

fn check_dim_closed_form_small(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    check_dim_closed_form(3, 3)
}

fn check_section5_regression(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    let model = AtomicModel::new(vec![Cardinal::Aleph(0), Cardinal::Aleph(1)]).unwrap();
    let e = CProjection::from_mu(model.clone(), vec![Cardinal::ZERO, Cardinal::Aleph(1)])
        .map_err(|e| e.to_string())?;
    let f = CProjection::identity(&model);
    let le = dimension::subequiv(&e, &f).map_err(|e| e.to_string())?;
    let eq = dimension::equivalent(&e, &f).map_err(|e| e.to_string())?;
    let de = dim_d(&e).map_err(|e| e.to_string())?;
    let df = dim_d(&f).map_err(|e| e.to_string())?;
    if !(le && !eq && de > df) {
        return Err(format!(
            "expected (0,1) < (1,1) with d((0,1)) > d((1,1)); got d = {de}, {df}"
        ));
    }
    if de != Cardinal::Aleph(2) || df != Cardinal::Aleph(1) {
        return Err(format!("dimensions off: {de}, {df}"));
    }
    // (1, p) with dim p = dim H: same dimension as (1, 1), different
    // projection.
    let p = CProjection::from_mu(model, vec![Cardinal::Aleph(0), Cardinal::Aleph(0)])
        .map_err(|e| e.to_string())?;
    let dp = dim_d(&p).map_err(|e| e.to_string())?;
    if dp != df || dimension::equivalent(&p, &f).map_err(|e| e.to_string())? {
        return Err("the (1, p) pathology did not reproduce".into());
    }
    Ok("d((0,1)) = aleph_2 > aleph_1 = d((1,1)); d((1,p)) = d((1,1))".into())
}

fn check_dimension_halving(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for model in enumerate_models(3, 3) {
        let h = dimension::halving(&model);
        let one = CProjection::identity(&model);
        if !dimension::equivalent(&h, &one).map_err(|e| e.to_string())?
            || !dimension::equivalent(&h.complement(), &one).map_err(|e| e.to_string())?
        {
            return Err("halving failed".into());
        }
    }
    Ok("all models with <=3 atoms".into())
}

fn check_matrix_units(_: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for model in enumerate_models(2, 3) {
        for k in 1..=4u64 {
            match dimension::matrix_units(&model, Cardinal::Finite(k)) {
                Ok(dimension::MatrixUnits::Finite(units)) => {
                    let one = CProjection::identity(&model);
                    if units.len() != k as usize {
                        return Err("wrong unit count".into());
                    }
                    for u in &units {
                        if !dimension::equivalent(u, &one).map_err(|e| e.to_string())? {
                            return Err("unit not equivalent to 1".into());
                        }
                    }
                }
                other => return Err(format!("expected finite units, got {other:?}")),
            }
        }
        match dimension::matrix_units(&model, Cardinal::ALEPH0) {
            Ok(dimension::MatrixUnits::Countable { certificates }) => {
                for (kappa, prod) in certificates {
                    if kappa != prod {
                        return Err("countable certificate failed".into());
                    }
                }
            }
            other => return Err(format!("expected countable descriptor, got {other:?}")),
        }
        if dimension::matrix_units(&model, Cardinal::Finite(0)).is_ok()
            || dimension::matrix_units(&model, Cardinal::Aleph(1)).is_ok()
        {
            return Err("invalid unit counts accepted".into());
        }
    }
    Ok("models with <=2 atoms, n in 1..=4 and aleph_0".into())
}

fn check_functor_laws(rng: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for _ in 0..15 {
        let dom = random_small_shape(rng, 2, 2);
        let h = gen::random_star_hom(&dom, 2, 2, rng);
        let x = gen::random_element(&dom, rng);
        let y = gen::random_element(&dom, rng);
        let unit = h
            .apply(&Element::identity(&dom))
            .map_err(|e| e.to_string())?;
        if unit.dist(&Element::identity(h.codomain())) > 1e-10 {
            return Err("unit not preserved".into());
        }
        let lhs = h
            .apply(&x.mul(&y).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let rhs = h
            .apply(&x)
            .map_err(|e| e.to_string())?
            .mul(&h.apply(&y).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        if lhs.dist(&rhs) > 1e-10 * (1.0 + x.op_norm()) * (1.0 + y.op_norm()) {
            return Err("multiplicativity failed".into());
        }
        let adj = h.apply(&x.adjoint()).map_err(|e| e.to_string())?;
        if adj.dist(&h.apply(&x).map_err(|e| e.to_string())?.adjoint()) > 1e-10 {
            return Err("adjoint not preserved".into());
        }
    }
    Ok("15 homomorphisms".into())
}

fn check_functor_composition(rng: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let a = random_small_shape(rng, 2, 2);
        let inner = gen::random_star_hom(&a, 2, 2, rng);
        let outer = gen::random_star_hom(inner.codomain(), 1, 2, rng);
        let comp = outer.compose(&inner).map_err(|e| e.to_string())?;
        let n = rng.random_range(1..=2);
        let lifted_comp = comp.lift(n);
        let comp_lifted = outer
            .lift(n)
            .compose(&inner.lift(n))
            .map_err(|e| e.to_string())?;
        let x = gen::random_element(&a.matrix_algebra(n), rng);
        let u = lifted_comp.apply(&x).map_err(|e| e.to_string())?;
        let v = comp_lifted.apply(&x).map_err(|e| e.to_string())?;
        if u.dist(&v) > 1e-9 {
            return Err("lift does not commute with composition".into());
        }
        // Lift of the identity is the identity.
        let idl = crate::functor::StarHom::identity(&a).lift(n);
        if idl.apply(&x).map_err(|e| e.to_string())?.dist(&x) > 1e-12 {
            return Err("lift of identity is not identity".into());
        }
    }
    Ok("10 compositions".into())
}

fn check_functor_lift(rng: &mut ChaCha8Rng, _: &Tolerance) -> Result<String, String> {
    for _ in 0..10 {
        let dom = random_small_shape(rng, 2, 2);
        let h = gen::random_star_hom(&dom, 2, 2, rng);
        let n = rng.random_range(2..=3);
        let lifted = h.lift(n);
        let grid: Vec<Element> = (0..n * n).map(|_| gen::random_element(&dom, rng)).collect();
        let x = crate::fdalg::assemble(&dom, n, &grid).map_err(|e| e.to_string())?;
        let y = lifted.apply(&x).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                let got = crate::fdalg::a_entry(&y, n, i, j).map_err(|e| e.to_string())?;
                let want = h.apply(&grid[i * n + j]).map_err(|e| e.to_string())?;
                if got.dist(&want) > 1e-9 {
                    return Err(format!("lift not entrywise at tile ({i},{j})"));
                }
            }
        }
    }
    Ok("10 lifts".into())
}

fn check_functor_sup_small(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    check_functor_suite(10, rng, tol)
}

fn check_partial_isometry_small(rng: &mut ChaCha8Rng, tol: &Tolerance) -> Result<String, String> {
    check_partial_isometry(50, rng, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_models(1, 4).len(), 5);
        assert_eq!(enumerate_models(2, 4).len(), 30);
        let m = AtomicModel::new(vec![Cardinal::Aleph(1), Cardinal::Aleph(0)]).unwrap();
        // (0, aleph_0, aleph_1) x (0, aleph_0) = 6 assignments.
        assert_eq!(enumerate_projections(&m).len(), 6);
        assert_eq!(enumerate_shapes(2, 3).len(), 12);
    }

    #[test]
    fn registry_runs_clean() {
        let results = run_all(0xA17, &Tolerance::default());
        let failed: Vec<&CaseResult> = results.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "failed cases: {failed:?}");
        // Names are sorted and unique.
        for w in results.windows(2) {
            assert!(w[0].name < w[1].name);
        }
    }
}
