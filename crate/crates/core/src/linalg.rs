//! Dense complex matrices and the small eigensolvers everything else is
//! built on.
//!
//! Matrices here are tiny (block sizes rarely exceed 10), so we favor
//! deterministic, high-accuracy algorithms over scalable ones: a cyclic
//! Jacobi sweep for Hermitian eigenproblems and pivoted Gram-Schmidt for
//! range bases. Both are accurate to a few ulps at these sizes and produce
//! the same output for the same input on every run.

use num_complex::Complex64;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl std::fmt::Debug for CMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from row-major real/imaginary pairs; panics if the data length
    /// does not match.
    pub fn from_pairs(rows: usize, cols: usize, pairs: &[[f64; 2]]) -> Self {
        assert_eq!(pairs.len(), rows * cols, "matrix data length mismatch");
        CMat {
            rows,
            cols,
            data: pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Column `j` as an `rows x 1` matrix.
    pub fn col(&self, j: usize) -> CMat {
        CMat::from_fn(self.rows, 1, |i, _| self[(i, j)])
    }

    /// Horizontal concatenation of columns taken from `self` at `indices`.
    pub fn select_cols(&self, indices: &[usize]) -> CMat {
        CMat::from_fn(self.rows, indices.len(), |i, j| self[(i, indices[j])])
    }

    pub fn hconcat(parts: &[CMat]) -> CMat {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = CMat::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for i in 0..rows {
                for j in 0..p.cols {
                    out[(i, off + j)] = p[(i, j)];
                }
            }
            off += p.cols;
        }
        out
    }

    /// The `size x size` submatrix at tile position `(ti, tj)` of a matrix
    /// viewed as a grid of `size x size` tiles.
    pub fn tile(&self, size: usize, ti: usize, tj: usize) -> CMat {
        CMat::from_fn(size, size, |i, j| self[(ti * size + i, tj * size + j)])
    }

    pub fn set_tile(&mut self, size: usize, ti: usize, tj: usize, t: &CMat) {
        for i in 0..size {
            for j in 0..size {
                self[(ti * size + i, tj * size + j)] = t[(i, j)];
            }
        }
    }

    /// Largest singular value, computed from the spectrum of `A*A`.
    pub fn op_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let gram = self.adjoint().mul(self);
        let (vals, _) = hermitian_eigen(&gram);
        vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order together with a unitary whose
/// columns are the matching eigenvectors, so `a = v diag(vals) v*`. The
/// input is symmetrized first; callers are expected to pass matrices that
/// are Hermitian up to round-off.
pub fn hermitian_eigen(a: &CMat) -> (Vec<f64>, CMat) {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.rows;
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    // Work on the Hermitian part so round-off in the input cannot push the
    // iteration off the Hermitian manifold.
    let mut m = CMat::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = CMat::identity(n);
    if n == 1 {
        return (vec![m[(0, 0)].re], v);
    }

    let scale = m.frob_norm().max(1.0);
    let tol = 1e-15 * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Plane rotation G on columns (p, q):
                //   G[p][p] = c           G[p][q] = s
                //   G[q][p] = -s*conj(ph) G[q][q] = c*conj(ph)
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                // m <- G* m G
                for k in 0..n {
                    let mk_p = m[(k, p)];
                    let mk_q = m[(k, q)];
                    m[(k, p)] = mk_p * gpp + mk_q * gqp;
                    m[(k, q)] = mk_p * gpq + mk_q * gqq;
                }
                for k in 0..n {
                    let mp_k = m[(p, k)];
                    let mq_k = m[(q, k)];
                    m[(p, k)] = gpp.conj() * mp_k + gqp.conj() * mq_k;
                    m[(q, k)] = gpq.conj() * mp_k + gqq.conj() * mq_k;
                }
                // Clamp the entry we just annihilated.
                m[(p, q)] = Complex64::ZERO;
                m[(q, p)] = Complex64::ZERO;
                // v <- v G
                for k in 0..n {
                    let vk_p = v[(k, p)];
                    let vk_q = v[(k, q)];
                    v[(k, p)] = vk_p * gpp + vk_q * gqp;
                    v[(k, q)] = vk_p * gpq + vk_q * gqq;
                }
            }
        }
    }

    let mut vals: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    // Ascending eigenvalues; ties keep the iteration's column order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
    let sorted_v = v.select_cols(&order);
    vals = order.iter().map(|&i| m[(i, i)].re).collect();
    (vals, sorted_v)
}

/// Orthonormal basis for the range of a (numerical) projection of known
/// rank, as the columns of an `n x rank` matrix.
///
/// Columns of `p` are orthogonalized by modified Gram-Schmidt with full
/// pivoting: at each step the remaining column of largest norm is chosen,
/// ties broken by lowest index. On an exactly diagonal 0/1 projection this
/// returns standard basis vectors in index order.
pub fn projection_range_basis(p: &CMat, rank: usize) -> CMat {
    let n = p.rows();
    assert!(p.is_square());
    assert!(rank <= n);
    let mut cols: Vec<CMat> = (0..n).map(|j| p.col(j)).collect();
    let mut picked: Vec<CMat> = Vec::with_capacity(rank);
    let mut used = vec![false; n];
    for _ in 0..rank {
        let mut best = usize::MAX;
        let mut best_norm = -1.0;
        for (j, c) in cols.iter().enumerate() {
            if used[j] {
                continue;
            }
            let nrm = c.frob_norm();
            if nrm > best_norm + 1e-14 {
                best_norm = nrm;
                best = j;
            }
        }
        assert!(
            best != usize::MAX && best_norm > 1e-8,
            "projection rank deficient"
        );
        used[best] = true;
        let mut v = cols[best].clone();
        let nrm = v.frob_norm();
        v = v.scale(Complex64::new(1.0 / nrm, 0.0));
        // Re-orthogonalize once for accuracy.
        for u in &picked {
            let proj = inner(u, &v);
            v = v.sub(&u.scale(proj));
        }
        let nrm2 = v.frob_norm();
        v = v.scale(Complex64::new(1.0 / nrm2, 0.0));
        // Deflate the remaining columns.
        for (j, c) in cols.iter_mut().enumerate() {
            if !used[j] {
                let proj = inner(&v, c);
                *c = c.sub(&v.scale(proj));
            }
        }
        picked.push(v);
    }
    if picked.is_empty() {
        CMat::zeros(n, 0)
    } else {
        CMat::hconcat(&picked)
    }
}

/// `<u, w> = u* w` for column vectors.
fn inner(u: &CMat, w: &CMat) -> Complex64 {
    debug_assert_eq!(u.cols(), 1);
    debug_assert_eq!(w.cols(), 1);
    let mut s = Complex64::ZERO;
    for i in 0..u.rows() {
        s += u[(i, 0)].conj() * w[(i, 0)];
    }
    s
}

/// Spectral projector of a Hermitian PSD matrix onto eigenvalues above
/// `cutoff`. Used for stable span computations: the range of a sum of
/// projections is the span of their ranges.
pub fn span_projector(sum: &CMat, cutoff: f64) -> CMat {
    let (vals, vecs) = hermitian_eigen(sum);
    let n = sum.rows();
    let mut out = CMat::zeros(n, n);
    for (k, &val) in vals.iter().enumerate() {
        if val > cutoff {
            let col = vecs.col(k);
            out = out.add(&col.mul(&col.adjoint()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigen_of_diagonal_is_exact() {
        let a = CMat::from_fn(3, 3, |i, j| {
            if i == j {
                c((i + 1) as f64, 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let (vals, v) = hermitian_eigen(&a);
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
        assert!(v.sub(&CMat::identity(3)).max_abs() == 0.0);
    }

    #[test]
    fn eigen_of_pauli_x() {
        let a = CMat::from_pairs(2, 2, &[[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]]);
        let (vals, v) = hermitian_eigen(&a);
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        // Reconstruct.
        let d = CMat::from_fn(2, 2, |i, j| {
            if i == j {
                c(vals[i], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        let rec = v.mul(&d).mul(&v.adjoint());
        assert!(rec.sub(&a).max_abs() < 1e-14);
    }

    #[test]
    fn op_norm_of_diagonal() {
        let a = CMat::from_pairs(2, 2, &[[3.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-4.0, 0.0]]);
        assert!((a.op_norm() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn range_basis_of_diagonal_projection_is_standard() {
        let p = CMat::from_fn(3, 3, |i, j| {
            if i == j && i != 1 {
                Complex64::ONE
            } else {
                Complex64::ZERO
            }
        });
        let b = projection_range_basis(&p, 2);
        assert_eq!(b.cols(), 2);
        assert_eq!(b[(0, 0)], Complex64::ONE);
        assert_eq!(b[(2, 1)], Complex64::ONE);
    }

    proptest! {
        #[test]
        fn eigen_reconstructs_random_hermitian(seed in 0u64..200, n in 1usize..7) {
            use rand::SeedableRng;
            use rand::RngExt;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let raw = CMat::from_fn(n, n, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let a = raw.add(&raw.adjoint()).scale(c(0.5, 0.0));
            let (vals, v) = hermitian_eigen(&a);
            // Unitary
            prop_assert!(v.adjoint().mul(&v).sub(&CMat::identity(n)).max_abs() < 1e-13);
            // Sorted
            for w in vals.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            // Reconstructs
            let d = CMat::from_fn(n, n, |i, j| if i == j { c(vals[i], 0.0) } else { Complex64::ZERO });
            let rec = v.mul(&d).mul(&v.adjoint());
            prop_assert!(rec.sub(&a).max_abs() < 1e-12 * (1.0 + a.frob_norm()));
        }

        #[test]
        fn span_projector_is_projection(seed in 0u64..100) {
            use rand::SeedableRng;
            use rand::RngExt;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 4;
            let raw = CMat::from_fn(n, 2, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
            let psd = raw.mul(&raw.adjoint());
            let p = span_projector(&psd, 1e-8);
            prop_assert!(p.mul(&p).sub(&p).max_abs() < 1e-12);
            prop_assert!(p.adjoint().sub(&p).max_abs() < 1e-12);
        }
    }
}
