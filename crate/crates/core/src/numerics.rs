//! Deterministic dense linear-algebra kernels: SPD solves, smallest-p
//! symmetric eigenpairs, and minimum-norm least squares.
//!
//! Everything here is dense. The problem sizes this crate targets stay below
//! n = 2000, where a dense Householder tridiagonalization followed by
//! implicit-shift QL iteration is simpler and more reproducible than an
//! iterative sparse solver.

use crate::mat::Mat;
use crate::{Error, Result, Scalar};

/// Relative tolerance for the eigenpair residual and orthonormality checks.
///
/// For `f64` this is the contractual 1e-8; wider scalar types fall back to a
/// multiple of their machine epsilon so the check stays meaningful.
fn eigen_check_tol<S: Scalar>() -> S {
    S::of_f64(1e-8).max(S::epsilon() * S::of_f64(64.0))
}

// ---------------------------------------------------------------------------
// Cholesky
// ---------------------------------------------------------------------------

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
///
/// The factor is reusable, so callers that solve against the same matrix many
/// times (fixed-point solvers, greedy loops, experiment grids) pay the O(n³)
/// factorization once.
#[derive(Debug, Clone)]
pub struct CholeskyFactor<S> {
    lower: Mat<S>,
}

impl<S: Scalar> CholeskyFactor<S> {
    /// Factor `a = L Lᵀ`. Fails with the offending pivot index if `a` is not
    /// positive definite.
    pub fn new(a: &Mat<S>) -> Result<Self> {
        let n = a.rows();
        assert_eq!(n, a.cols(), "Cholesky needs a square matrix");
        let mut l = Mat::zeros(n, n);
        for j in 0..n {
            let mut diag = a[(j, j)];
            for k in 0..j {
                diag -= l[(j, k)] * l[(j, k)];
            }
            if diag <= S::zero() {
                return Err(Error::Singular { pivot: j });
            }
            let djj = diag.sqrt();
            l[(j, j)] = djj;
            for i in j + 1..n {
                let mut v = a[(i, j)];
                for k in 0..j {
                    v -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = v / djj;
            }
        }
        Ok(CholeskyFactor { lower: l })
    }

    pub fn dim(&self) -> usize {
        self.lower.rows()
    }

    /// Solve `A x = b` for a single right-hand side.
    pub fn solve_vec(&self, b: &[S]) -> Vec<S> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let l = &self.lower;
        // forward: L y = b
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                let lik = l[(i, k)];
                y[i] = y[i] - lik * y[k];
            }
            y[i] /= l[(i, i)];
        }
        // backward: Lᵀ x = y
        for i in (0..n).rev() {
            for k in i + 1..n {
                let lki = l[(k, i)];
                y[i] = y[i] - lki * y[k];
            }
            y[i] /= l[(i, i)];
        }
        y
    }

    /// Solve `A X = B` column by column.
    pub fn solve_mat(&self, b: &Mat<S>) -> Mat<S> {
        let n = self.dim();
        assert_eq!(b.rows(), n);
        let mut out = Mat::zeros(n, b.cols());
        for j in 0..b.cols() {
            let col = self.solve_vec(&b.column(j));
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        out
    }

    /// Dense inverse, computed column by column from the factor.
    pub fn inverse(&self) -> Mat<S> {
        let n = self.dim();
        let mut e = vec![S::zero(); n];
        let mut inv = Mat::zeros(n, n);
        for j in 0..n {
            e[j] = S::one();
            let col = self.solve_vec(&e);
            e[j] = S::zero();
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        inv
    }
}

/// Solve `A X = B` for symmetric positive-definite `A`.
pub fn solve_spd<S: Scalar>(a: &Mat<S>, b: &Mat<S>) -> Result<Mat<S>> {
    let factor = CholeskyFactor::new(a)?;
    Ok(factor.solve_mat(b))
}

// ---------------------------------------------------------------------------
// Symmetric eigenpairs
// ---------------------------------------------------------------------------

/// The `p` algebraically smallest eigenvalues of a symmetric matrix with
/// orthonormal eigenvectors as columns.
///
/// Values are sorted ascending and each vector's first non-negligible
/// component is positive, which pins down an otherwise arbitrary sign.
#[derive(Debug, Clone)]
pub struct EigenPairs<S> {
    pub values: Vec<S>,
    pub vectors: Mat<S>,
}

impl<S: Scalar> EigenPairs<S> {
    /// Number of pairs held.
    pub fn count(&self) -> usize {
        self.values.len()
    }
}

/// Compute the `p` smallest eigenpairs of symmetric `a` by dense Householder
/// tridiagonalization followed by implicit-shift QL iteration.
///
/// The residual `‖A v − λ v‖` and pairwise orthonormality are verified on
/// every return; a violation is reported as a convergence error carrying the
/// achieved residual.
pub fn smallest_eigenpairs<S: Scalar>(a: &Mat<S>, p: usize) -> Result<EigenPairs<S>> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "eigensolver needs a square matrix");
    if p < 1 || p > n {
        return Err(Error::invalid(format!("p = {p} out of range 1..={n}")));
    }
    let (mut d, mut z) = {
        let mut work = a.clone();
        let (d, e) = tridiagonalize(&mut work);
        ql_implicit_shift(d, e, work)?
    };

    // Sort ascending, permuting eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let sorted_vals: Vec<S> = order.iter().map(|&i| d[i]).collect();
    let sorted_vecs = Mat::from_fn(n, p, |i, j| z[(i, order[j])]);
    d = sorted_vals[..p].to_vec();
    z = sorted_vecs;

    // Sign convention: first component of non-negligible magnitude positive.
    for j in 0..p {
        let col = z.column(j);
        let maxabs = col.iter().fold(S::zero(), |m, &v| m.max(v.abs()));
        let thresh = maxabs * S::of_f64(1e-12);
        if let Some(&lead) = col.iter().find(|v| v.abs() > thresh) {
            if lead < S::zero() {
                for i in 0..n {
                    z[(i, j)] = -z[(i, j)];
                }
            }
        }
    }

    let pairs = EigenPairs { values: d, vectors: z };
    verify_eigenpairs(a, &pairs)?;
    Ok(pairs)
}

fn verify_eigenpairs<S: Scalar>(a: &Mat<S>, pairs: &EigenPairs<S>) -> Result<()> {
    let n = a.rows();
    let p = pairs.count();
    let tol = eigen_check_tol::<S>();
    let scale = a.frobenius_norm().max(S::one());

    let mut worst = S::zero();
    for j in 0..p {
        let v = pairs.vectors.column(j);
        let av = a.mul_vec(&v);
        let lam = pairs.values[j];
        let resid = av
            .iter()
            .zip(&v)
            .map(|(&avi, &vi)| {
                let r = avi - lam * vi;
                r * r
            })
            .sum::<S>()
            .sqrt();
        worst = worst.max(resid / scale);
    }
    for j in 0..p {
        for k in j..p {
            let dot: S = (0..n).map(|i| pairs.vectors[(i, j)] * pairs.vectors[(i, k)]).sum();
            let target = if j == k { S::one() } else { S::zero() };
            worst = worst.max((dot - target).abs());
        }
    }
    if worst > tol {
        return Err(Error::NoConvergence { residual: worst.into_f64() });
    }
    Ok(())
}

/// Householder reduction of a symmetric matrix to tridiagonal form, with the
/// orthogonal transform accumulated in place of the input.
///
/// Returns `(diagonal, subdiagonal)`; `subdiagonal[0]` is unused.
fn tridiagonalize<S: Scalar>(a: &mut Mat<S>) -> (Vec<S>, Vec<S>) {
    let n = a.rows();
    let mut d = vec![S::zero(); n];
    let mut e = vec![S::zero(); n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = S::zero();
        if l > 0 {
            let scale = (0..=l).map(|k| a[(i, k)].abs()).sum::<S>();
            if scale == S::zero() {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= S::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = S::zero();
                for j in 0..=l {
                    a[(j, i)] = a[(i, j)] / h;
                    let mut g_acc = S::zero();
                    for k in 0..=j {
                        g_acc += a[(j, k)] * a[(i, k)];
                    }
                    for k in j + 1..=l {
                        g_acc += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let gj = e[j] - hh * f;
                    e[j] = gj;
                    for k in 0..=j {
                        let delta = f * e[k] + gj * a[(i, k)];
                        a[(j, k)] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }

    // Accumulate the orthogonal transform.
    d[0] = S::zero();
    e[0] = S::zero();
    for i in 0..n {
        if d[i] != S::zero() {
            for j in 0..i {
                let mut g = S::zero();
                for k in 0..i {
                    g += a[(i, k)] * a[(k, j)];
                }
                for k in 0..i {
                    let delta = g * a[(k, i)];
                    a[(k, j)] -= delta;
                }
            }
        }
        d[i] = a[(i, i)];
        a[(i, i)] = S::one();
        for j in 0..i {
            a[(j, i)] = S::zero();
            a[(i, j)] = S::zero();
        }
    }
    (d, e)
}

/// QL iteration with implicit shifts on a tridiagonal matrix, rotating the
/// accumulated transform `z` so its columns become eigenvectors.
fn ql_implicit_shift<S: Scalar>(
    mut d: Vec<S>,
    mut e: Vec<S>,
    mut z: Mat<S>,
) -> Result<(Vec<S>, Mat<S>)> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = S::zero();

    let eps = S::epsilon();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == 50 {
                return Err(Error::NoConvergence { residual: e[m].abs().into_f64() });
            }
            iter += 1;

            let mut g = (d[l + 1] - d[l]) / (e[l] + e[l]);
            let mut r = g.hypot(S::one());
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = S::one();
            let mut c = S::one();
            let mut p = S::zero();
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == S::zero() {
                    // Rotation underflow: drop the shift and restart this row.
                    d[i + 1] -= p;
                    e[m] = S::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + (c + c) * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    f = z[(k, i + 1)];
                    z[(k, i + 1)] = s * z[(k, i)] + c * f;
                    z[(k, i)] = c * z[(k, i)] - s * f;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = S::zero();
        }
    }
    Ok((d, z))
}

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

/// Minimize `‖targets − design · coeffs‖²` column-wise, returning the
/// minimum-norm solution when the design is rank deficient.
///
/// Works through the eigendecomposition of the Gram matrix, dropping
/// directions whose eigenvalue falls below `p · ε · λ_max`.
pub fn least_squares<S: Scalar>(design: &Mat<S>, targets: &Mat<S>) -> Result<Mat<S>> {
    let l = design.rows();
    let p = design.cols();
    assert_eq!(targets.rows(), l, "row mismatch between design and targets");
    if l < 1 || p < 1 {
        return Err(Error::invalid("least_squares needs at least one row and one column"));
    }

    let gram = design.transpose_matmul(design); // p×p
    let rhs = design.transpose_matmul(targets); // p×c
    let eig = smallest_eigenpairs(&gram, p)?;

    let lam_max = eig.values.iter().fold(S::zero(), |m, &v| m.max(v.abs()));
    let cut = lam_max * S::of_usize(p) * S::epsilon();

    let c = targets.cols();
    let mut coeffs = Mat::zeros(p, c);
    for (j, &lam) in eig.values.iter().enumerate() {
        if lam <= cut {
            continue;
        }
        let v = eig.vectors.column(j);
        for col in 0..c {
            let mut proj = S::zero();
            for i in 0..p {
                proj += v[i] * rhs[(i, col)];
            }
            let w = proj / lam;
            for i in 0..p {
                coeffs[(i, col)] += w * v[i];
            }
        }
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat<f64> {
        Mat::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
    }

    fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Mat<f64> {
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = rng.random_range(-1.0..1.0);
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        a
    }

    /// Test-side oracle: full spectrum of a symmetric matrix by cyclic Jacobi
    /// rotations. Independent of the tridiagonalization path under test.
    fn jacobi_eigenvalues(a: &Mat<f64>) -> Vec<f64> {
        let n = a.rows();
        let mut m = a.clone();
        for _ in 0..200 {
            let mut off = 0.0;
            for i in 0..n {
                for j in i + 1..n {
                    off += m[(i, j)] * m[(i, j)];
                }
            }
            if off < 1e-24 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if m[(p, q)].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * m[(p, q)]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let mkp = m[(k, p)];
                        let mkq = m[(k, q)];
                        m[(k, p)] = c * mkp - s * mkq;
                        m[(k, q)] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let mpk = m[(p, k)];
                        let mqk = m[(q, k)];
                        m[(p, k)] = c * mpk - s * mqk;
                        m[(q, k)] = s * mpk + c * mqk;
                    }
                }
            }
        }
        let mut vals: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// Test-side oracle: Gaussian elimination with partial pivoting.
    fn gauss_solve(a: &Mat<f64>, b: &[f64]) -> Vec<f64> {
        let n = a.rows();
        let mut m = a.clone();
        let mut x = b.to_vec();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&i, &j| m[(i, col)].abs().partial_cmp(&m[(j, col)].abs()).unwrap())
                .unwrap();
            if piv != col {
                for k in 0..n {
                    let tmp = m[(col, k)];
                    m[(col, k)] = m[(piv, k)];
                    m[(piv, k)] = tmp;
                }
                x.swap(col, piv);
            }
            for row in col + 1..n {
                let f = m[(row, col)] / m[(col, col)];
                for k in col..n {
                    m[(row, k)] -= f * m[(col, k)];
                }
                x[row] -= f * x[col];
            }
        }
        for row in (0..n).rev() {
            for k in row + 1..n {
                x[row] -= m[(row, k)] * x[k];
            }
            x[row] /= m[(row, row)];
        }
        x
    }

    #[test]
    fn spd_identity_returns_rhs() {
        let a = Mat::<f64>::identity(4);
        let b = Mat::from_fn(4, 2, |i, j| (i + j) as f64);
        let x = solve_spd(&a, &b).unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn spd_diagonal_system() {
        let mut a = Mat::<f64>::zeros(2, 2);
        a[(0, 0)] = 2.0;
        a[(1, 1)] = 4.0;
        let b = Mat::<f64>::from_rows(vec![vec![2.0], vec![4.0]]);
        let x = solve_spd(&a, &b).unwrap();
        assert!((x[(0, 0)] - 1.0).abs() <= f64::EPSILON);
        assert!((x[(1, 0)] - 1.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn spd_random_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let m = random_mat(&mut rng, 8, 8);
            let mut a = m.transpose_matmul(&m);
            for i in 0..8 {
                a[(i, i)] += 1.0;
            }
            let b = random_mat(&mut rng, 8, 3);
            let x = solve_spd(&a, &b).unwrap();
            // Residual oracle: recompute A·X by plain multiplication.
            let resid = a.matmul(&x).sub(&b);
            for j in 0..3 {
                let rnorm: f64 =
                    (0..8).map(|i| resid[(i, j)] * resid[(i, j)]).sum::<f64>().sqrt();
                let bnorm: f64 = (0..8).map(|i| b[(i, j)] * b[(i, j)]).sum::<f64>().sqrt();
                assert!(rnorm <= 1e-8 * bnorm.max(1.0));
            }
        }
    }

    #[test]
    fn spd_rejects_indefinite_naming_pivot() {
        let a = Mat::<f64>::from_rows(vec![vec![1.0, 2.0], vec![2.0, 1.0]]);
        let b = Mat::<f64>::from_rows(vec![vec![1.0], vec![1.0]]);
        match solve_spd(&a, &b) {
            Err(Error::Singular { pivot }) => assert_eq!(pivot, 1),
            other => panic!("expected singularity error, got {other:?}"),
        }
    }

    #[test]
    fn eigen_diagonal_smallest_two() {
        let a = Mat::<f64>::from_rows(vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ]);
        let pairs = smallest_eigenpairs(&a, 2).unwrap();
        assert!((pairs.values[0] - 1.0).abs() < 1e-12);
        assert!((pairs.values[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_matches_jacobi_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = random_symmetric(&mut rng, 10);
            let pairs = smallest_eigenpairs(&a, 10).unwrap();
            let oracle = jacobi_eigenvalues(&a);
            for (got, want) in pairs.values.iter().zip(&oracle) {
                assert!((got - want).abs() <= 1e-8, "eigenvalue {got} vs oracle {want}");
            }
        }
    }

    #[test]
    fn eigen_two_component_laplacian_kernel() {
        // Two disjoint triangles with unit weights: block-diagonal Laplacian.
        let mut l = Mat::<f64>::zeros(6, 6);
        for block in 0..2 {
            let base = block * 3;
            for i in 0..3 {
                l[(base + i, base + i)] = 2.0;
                for j in 0..3 {
                    if i != j {
                        l[(base + i, base + j)] = -1.0;
                    }
                }
            }
        }
        let pairs = smallest_eigenpairs(&l, 2).unwrap();
        assert!(pairs.values[0].abs() <= 1e-8);
        assert!(pairs.values[1].abs() <= 1e-8);

        // The kernel must equal the span of the two component indicators:
        // compare orthogonal projectors, not the (degenerate) vectors.
        let mut expected = Mat::<f64>::zeros(6, 6);
        for block in 0..2 {
            let base = block * 3;
            for i in 0..3 {
                for j in 0..3 {
                    expected[(base + i, base + j)] = 1.0 / 3.0;
                }
            }
        }
        let got = pairs.vectors.matmul(&pairs.vectors.transpose());
        assert!(got.max_abs_diff(&expected) <= 1e-8);
    }

    #[test]
    fn eigen_sign_convention_and_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let a = random_symmetric(&mut rng, 8);
        let pairs = smallest_eigenpairs(&a, 8).unwrap();
        for w in pairs.values.windows(2) {
            assert!(w[0] <= w[1] + 1e-14);
        }
        for j in 0..8 {
            let col = pairs.vectors.column(j);
            let maxabs = col.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let lead = col.iter().find(|v| v.abs() > 1e-12 * maxabs).unwrap();
            assert!(*lead > 0.0, "column {j} leads with {lead}");
        }
    }

    #[test]
    fn least_squares_identity_design() {
        let design = Mat::<f64>::identity(4);
        let targets = Mat::from_fn(4, 2, |i, j| (2 * i + j) as f64);
        let coeffs = least_squares(&design, &targets).unwrap();
        assert!(coeffs.max_abs_diff(&targets) <= 1e-10);
    }

    #[test]
    fn least_squares_column_of_ones_is_mean() {
        let design = Mat::<f64>::from_rows(vec![vec![1.0], vec![1.0]]);
        let targets = Mat::<f64>::from_rows(vec![vec![0.0], vec![2.0]]);
        let coeffs = least_squares(&design, &targets).unwrap();
        assert!((coeffs[(0, 0)] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn least_squares_matches_normal_equations_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let design = random_mat(&mut rng, 12, 3);
            let targets = random_mat(&mut rng, 12, 2);
            let coeffs = least_squares(&design, &targets).unwrap();

            let gram = design.transpose_matmul(&design);
            let rhs = design.transpose_matmul(&targets);
            for col in 0..2 {
                let oracle = gauss_solve(&gram, &rhs.column(col));
                for i in 0..3 {
                    assert!((coeffs[(i, col)] - oracle[i]).abs() <= 1e-8);
                }
            }
        }
    }

    #[test]
    fn least_squares_residual_orthogonal_to_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let design = random_mat(&mut rng, 10, 4);
        let targets = random_mat(&mut rng, 10, 2);
        let coeffs = least_squares(&design, &targets).unwrap();
        let resid = targets.sub(&design.matmul(&coeffs));
        let proj = design.transpose_matmul(&resid);
        assert!(proj.max_abs() <= 1e-8);
    }

    #[test]
    fn least_squares_rank_deficient_minimum_norm() {
        // Duplicated column: solutions satisfy x0 + x1 = 1; minimum norm
        // splits the weight evenly.
        let design = Mat::<f64>::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]]);
        let targets = Mat::<f64>::from_rows(vec![vec![0.0], vec![2.0]]);
        let coeffs = least_squares(&design, &targets).unwrap();
        assert!((coeffs[(0, 0)] - 0.5).abs() <= 1e-10);
        assert!((coeffs[(1, 0)] - 0.5).abs() <= 1e-10);
    }
}
