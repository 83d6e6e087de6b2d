//! Minimal sparse/dense linear algebra: compressed sparse rows, a banded
//! Cholesky direct solve and Jacobi-preconditioned conjugate gradients.
//!
//! Everything here is deterministic and allocation-explicit; matrices and
//! vectors are immutable after assembly and safe to share across threads.

use crate::error::Error;

/// Nodal vectors are plain `Vec<f64>`; helpers below supply the kernels.
pub type DenseVector = Vec<f64>;

/// Euclidean dot product. Panics on length mismatch.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean norm.
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Maximum absolute entry.
pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// y += alpha * x. Panics on length mismatch.
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    assert_eq!(x.len(), y.len(), "axpy: length mismatch");
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Square sparse matrix in compressed-sparse-row form.
///
/// Column indices are strictly increasing within each row. The stiffness
/// operators assembled on tensor grids are symmetric; `is_structurally_symmetric`
/// checks the pattern required by [`cg_solve`] and [`direct_solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds a matrix from (row, col, value) triplets. Duplicates are summed
    /// in their sorted order; explicit zeros are kept so that matrices built
    /// from the same index set share one sparsity pattern.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        mut triplets: Vec<(usize, usize, f64)>,
    ) -> Self {
        for &(r, c, _) in &triplets {
            assert!(r < n_rows && c < n_cols, "triplet ({r},{c}) out of bounds");
        }
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; n_rows + 1];
        let mut col_idx = Vec::with_capacity(triplets.len());
        let mut values = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                values.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n_rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        SparseMatrix {
            n_rows,
            n_cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn identity(n: usize) -> Self {
        let triplets = (0..n).map(|i| (i, i, 1.0)).collect();
        Self::from_triplets(n, n, triplets)
    }

    /// Symmetric tridiagonal matrix with constant bands, e.g. tridiag(-1, 2, -1).
    pub fn tridiagonal(n: usize, lower: f64, diag: f64, upper: f64) -> Self {
        let mut t = Vec::with_capacity(3 * n);
        for i in 0..n {
            if i > 0 {
                t.push((i, i - 1, lower));
            }
            t.push((i, i, diag));
            if i + 1 < n {
                t.push((i, i + 1, upper));
            }
        }
        Self::from_triplets(n, n, t)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.col_idx[lo..hi], &self.values[lo..hi])
    }

    /// y = A x with each row accumulated left to right.
    pub fn spmv(&self, x: &[f64]) -> DenseVector {
        assert_eq!(self.n_cols, x.len(), "spmv: dimension mismatch");
        let mut y = vec![0.0; self.n_rows];
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (c, v) in cols.iter().zip(vals) {
                acc += v * x[*c];
            }
            y[i] = acc;
        }
        y
    }

    /// uᵀ A v without allocating the intermediate product.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> f64 {
        assert_eq!(self.n_rows, u.len(), "bilinear: row dimension mismatch");
        assert_eq!(self.n_cols, v.len(), "bilinear: col dimension mismatch");
        let mut acc = 0.0;
        for i in 0..self.n_rows {
            if u[i] == 0.0 {
                continue;
            }
            let (cols, vals) = self.row(i);
            let mut row_acc = 0.0;
            for (c, val) in cols.iter().zip(vals) {
                row_acc += val * v[*c];
            }
            acc += u[i] * row_acc;
        }
        acc
    }

    /// True if for every stored (i, j) the entry (j, i) is stored as well.
    pub fn is_structurally_symmetric(&self) -> bool {
        if self.n_rows != self.n_cols {
            return false;
        }
        for i in 0..self.n_rows {
            let (cols, _) = self.row(i);
            for &j in cols {
                let (jc, _) = self.row(j);
                if jc.binary_search(&i).is_err() {
                    return false;
                }
            }
        }
        true
    }

    pub fn diagonal(&self) -> Vec<f64> {
        assert_eq!(self.n_rows, self.n_cols);
        let mut d = vec![0.0; self.n_rows];
        for i in 0..self.n_rows {
            let (cols, vals) = self.row(i);
            if let Ok(k) = cols.binary_search(&i) {
                d[i] = vals[k];
            }
        }
        d
    }

    /// Half bandwidth: max |i - j| over stored entries.
    pub fn bandwidth(&self) -> usize {
        let mut bw = 0usize;
        for i in 0..self.n_rows {
            let (cols, _) = self.row(i);
            for &j in cols {
                bw = bw.max(i.abs_diff(j));
            }
        }
        bw
    }

    /// Σ_q w_q A_q for matrices sharing one sparsity pattern.
    pub fn linear_combination(mats: &[SparseMatrix], weights: &[f64]) -> SparseMatrix {
        assert!(!mats.is_empty(), "linear_combination: no matrices");
        assert_eq!(mats.len(), weights.len(), "linear_combination: weight count");
        let first = &mats[0];
        for m in &mats[1..] {
            assert!(
                m.row_ptr == first.row_ptr && m.col_idx == first.col_idx,
                "linear_combination: sparsity patterns differ"
            );
        }
        let mut values = vec![0.0; first.values.len()];
        for (m, w) in mats.iter().zip(weights) {
            if *w == 0.0 {
                continue;
            }
            for (out, v) in values.iter_mut().zip(&m.values) {
                *out += w * v;
            }
        }
        SparseMatrix {
            n_rows: first.n_rows,
            n_cols: first.n_cols,
            row_ptr: first.row_ptr.clone(),
            col_idx: first.col_idx.clone(),
            values,
        }
    }
}

/// Direct solve of a symmetric positive definite system via banded Cholesky.
///
/// The FIT operators reduced by Dirichlet elimination are SPD with moderate
/// bandwidth on tensor grids, so no pivoting is needed; a non-positive pivot
/// means the reduced operator is singular (e.g. zero material on a component
/// without Dirichlet nodes).
pub fn direct_solve(a: &SparseMatrix, b: &[f64]) -> Result<DenseVector, Error> {
    assert_eq!(a.n_rows(), a.n_cols(), "direct_solve: matrix not square");
    assert_eq!(a.n_rows(), b.len(), "direct_solve: dimension mismatch");
    let n = a.n_rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let bw = a.bandwidth();

    // Lower band storage: band[i][d] = L[i][i - bw + d], d in 0..=bw.
    let stride = bw + 1;
    let mut band = vec![0.0f64; n * stride];
    for i in 0..n {
        let (cols, vals) = a.row(i);
        for (c, v) in cols.iter().zip(vals) {
            if *c <= i {
                band[i * stride + (bw - (i - c))] = *v;
            }
        }
    }

    // In-place Cholesky on the band: A = L Lᵀ.
    for j in 0..n {
        let mut d = band[j * stride + bw];
        let k0 = j.saturating_sub(bw);
        for k in k0..j {
            let l_jk = band[j * stride + (bw - (j - k))];
            d -= l_jk * l_jk;
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::SingularSystem(format!(
                "non-positive pivot {d:e} at row {j}"
            )));
        }
        let l_jj = d.sqrt();
        band[j * stride + bw] = l_jj;
        let i_hi = (j + bw).min(n - 1);
        for i in (j + 1)..=i_hi {
            let mut s = band[i * stride + (bw - (i - j))];
            let k0 = i.saturating_sub(bw).max(j.saturating_sub(bw));
            for k in k0..j {
                s -= band[i * stride + (bw - (i - k))] * band[j * stride + (bw - (j - k))];
            }
            band[i * stride + (bw - (i - j))] = s / l_jj;
        }
    }

    // Forward substitution L y = b.
    let mut x = b.to_vec();
    for i in 0..n {
        let k0 = i.saturating_sub(bw);
        let mut s = x[i];
        for k in k0..i {
            s -= band[i * stride + (bw - (i - k))] * x[k];
        }
        x[i] = s / band[i * stride + bw];
    }
    // Back substitution Lᵀ x = y.
    for i in (0..n).rev() {
        let i_hi = (i + bw).min(n - 1);
        let mut s = x[i];
        for k in (i + 1)..=i_hi {
            s -= band[k * stride + (bw - (k - i))] * x[k];
        }
        x[i] = s / band[i * stride + bw];
        if !x[i].is_finite() {
            return Err(Error::SingularSystem(format!(
                "non-finite solution entry at row {i}"
            )));
        }
    }
    Ok(x)
}

/// Default relative residual tolerance for [`cg_solve`]: the spatial solve
/// error must sit far below the fixed-point tolerance so that stagnation is
/// attributable to the outer iteration, not the inner solver.
pub const CG_DEFAULT_TOL: f64 = 1e-12;

/// Jacobi-preconditioned conjugate gradients for symmetric positive definite
/// systems. Stops when the true residual satisfies norm(Ax-b) <= tol * norm(b).
pub fn cg_solve(
    a: &SparseMatrix,
    b: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<DenseVector, Error> {
    assert_eq!(a.n_rows(), a.n_cols(), "cg_solve: matrix not square");
    assert_eq!(a.n_rows(), b.len(), "cg_solve: dimension mismatch");
    debug_assert!(a.is_structurally_symmetric(), "cg_solve: pattern not symmetric");

    let n = b.len();
    let b_norm = norm2(b);
    if b_norm == 0.0 {
        return Ok(vec![0.0; n]);
    }
    let diag = a.diagonal();
    let inv_diag: Vec<f64> = diag
        .iter()
        .map(|&d| if d != 0.0 { 1.0 / d } else { 1.0 })
        .collect();

    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut trace = Vec::new();

    for it in 0..max_iter {
        let ap = a.spmv(&p);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(Error::SingularSystem(format!(
                "cg: non-positive curvature {pap:e} at iteration {it}"
            )));
        }
        let alpha = rz / pap;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &ap, &mut r);
        let rel = norm2(&r) / b_norm;
        trace.push(rel);
        if rel <= tol {
            if x.iter().any(|v| !v.is_finite()) {
                return Err(Error::SingularSystem("cg: non-finite solution".into()));
            }
            return Ok(x);
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::MaxIterations {
        iterations: max_iter,
        last_residual: *trace.last().unwrap_or(&f64::NAN),
        residual_trace: trace,
    })
}
