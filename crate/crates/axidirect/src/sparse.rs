//! Minimal sparse linear algebra: CSR matrices, CG for SPD systems, and
//! ILU(0)-preconditioned BiCGStab for the nonsymmetric divergence-form
//! systems. Sizes here are a few 10^4 unknowns with 5-point stencils, which
//! these kernels handle comfortably.

use crate::scalar::{c, Real};

#[derive(Debug, thiserror::Error)]
pub enum SparseError {
    #[error("linear solve stagnated: residual {residual:.3e} after {iters} iterations")]
    Stagnated { residual: f64, iters: usize },
    #[error("matrix breakdown: {0}")]
    Breakdown(String),
}

/// Compressed sparse row matrix.
#[derive(Debug, Clone)]
pub struct Csr<F> {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<F>,
}

/// Triplet accumulator; duplicate entries are summed.
#[derive(Debug, Clone)]
pub struct Triplets<F> {
    n: usize,
    entries: Vec<(usize, usize, F)>,
}

impl<F: Real> Triplets<F> {
    pub fn new(n: usize) -> Self {
        Self { n, entries: Vec::new() }
    }

    #[inline]
    pub fn push(&mut self, row: usize, col: usize, value: F) {
        debug_assert!(row < self.n && col < self.n);
        if value != F::zero() {
            self.entries.push((row, col, value));
        }
    }

    pub fn to_csr(&self) -> Csr<F> {
        let n = self.n;
        let mut counts = vec![0usize; n + 1];
        for &(r, _, _) in &self.entries {
            counts[r + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut col_idx = vec![0usize; self.entries.len()];
        let mut values = vec![F::zero(); self.entries.len()];
        let mut cursor = counts.clone();
        for &(r, col, v) in &self.entries {
            let k = cursor[r];
            col_idx[k] = col;
            values[k] = v;
            cursor[r] += 1;
        }
        // sort each row and merge duplicates
        let mut out_ptr = vec![0usize; n + 1];
        let mut out_col = Vec::with_capacity(col_idx.len());
        let mut out_val = Vec::with_capacity(values.len());
        for i in 0..n {
            let (lo, hi) = (counts[i], counts[i + 1]);
            let mut row: Vec<(usize, F)> =
                col_idx[lo..hi].iter().copied().zip(values[lo..hi].iter().copied()).collect();
            row.sort_by_key(|&(col, _)| col);
            let mut k = 0;
            while k < row.len() {
                let col = row[k].0;
                let mut v = row[k].1;
                let mut m = k + 1;
                while m < row.len() && row[m].0 == col {
                    v += row[m].1;
                    m += 1;
                }
                out_col.push(col);
                out_val.push(v);
                k = m;
            }
            out_ptr[i + 1] = out_col.len();
        }
        Csr { n, row_ptr: out_ptr, col_idx: out_col, values: out_val }
    }
}

impl<F: Real> Csr<F> {
    pub fn matvec(&self, x: &[F], y: &mut [F]) {
        debug_assert_eq!(x.len(), self.n);
        for i in 0..self.n {
            let mut acc = F::zero();
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            y[i] = acc;
        }
    }

    pub fn matvec_alloc(&self, x: &[F]) -> Vec<F> {
        let mut y = vec![F::zero(); self.n];
        self.matvec(x, &mut y);
        y
    }

    pub fn diagonal(&self) -> Vec<F> {
        let mut d = vec![F::zero(); self.n];
        for i in 0..self.n {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                if self.col_idx[k] == i {
                    d[i] = self.values[k];
                }
            }
        }
        d
    }
}

pub fn dot<F: Real>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (&x, &y)| acc + x * y)
}

pub fn norm2<F: Real>(a: &[F]) -> F {
    dot(a, a).sqrt()
}

/// Conjugate gradients for SPD systems, Jacobi-preconditioned.
pub fn cg<F: Real>(
    a: &Csr<F>,
    b: &[F],
    x0: Option<&[F]>,
    rel_tol: F,
    max_iter: usize,
) -> Result<Vec<F>, SparseError> {
    let n = a.n;
    let mut x = x0.map_or(vec![F::zero(); n], |v| v.to_vec());
    let b_norm = norm2(b);
    if b_norm == F::zero() {
        return Ok(vec![F::zero(); n]);
    }
    let diag = a.diagonal();
    for (i, &d) in diag.iter().enumerate() {
        if !(d > F::zero()) {
            return Err(SparseError::Breakdown(format!(
                "non-positive diagonal {d} at row {i}"
            )));
        }
    }
    let mut r = b.to_vec();
    if x0.is_some() {
        let ax = a.matvec_alloc(&x);
        for i in 0..n {
            r[i] -= ax[i];
        }
    }
    let mut z: Vec<F> = r.iter().zip(&diag).map(|(&ri, &di)| ri / di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for iters in 0..max_iter {
        if norm2(&r) <= rel_tol * b_norm {
            return Ok(x);
        }
        let ap = a.matvec_alloc(&p);
        let pap = dot(&p, &ap);
        if !(pap > F::zero()) {
            return Err(SparseError::Breakdown(format!("p^T A p = {pap} at iter {iters}")));
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] / diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    let res = norm2(&r) / b_norm;
    if res <= rel_tol * c(10.0) {
        Ok(x)
    } else {
        Err(SparseError::Stagnated { residual: res.f64(), iters: max_iter })
    }
}

/// Zero-fill incomplete LU factorization of a CSR matrix.
pub struct Ilu0<F> {
    csr: Csr<F>,
    diag_ptr: Vec<usize>,
}

impl<F: Real> Ilu0<F> {
    pub fn new(a: &Csr<F>) -> Result<Self, SparseError> {
        let n = a.n;
        let mut csr = a.clone();
        let mut diag_ptr = vec![usize::MAX; n];
        for i in 0..n {
            for k in csr.row_ptr[i]..csr.row_ptr[i + 1] {
                if csr.col_idx[k] == i {
                    diag_ptr[i] = k;
                }
            }
            if diag_ptr[i] == usize::MAX {
                return Err(SparseError::Breakdown(format!("missing diagonal in row {i}")));
            }
        }
        // ikj variant restricted to the sparsity pattern
        for i in 1..n {
            let row_start = csr.row_ptr[i];
            let row_end = csr.row_ptr[i + 1];
            for kk in row_start..row_end {
                let k = csr.col_idx[kk];
                if k >= i {
                    break;
                }
                let pivot = csr.values[diag_ptr[k]];
                if pivot.abs() < F::min_positive_value() {
                    return Err(SparseError::Breakdown(format!("zero pivot at {k}")));
                }
                let lik = csr.values[kk] / pivot;
                csr.values[kk] = lik;
                // subtract lik * U(k, j) for j in row i's pattern, j > k
                for jj in (kk + 1)..row_end {
                    let j = csr.col_idx[jj];
                    // find (k, j) in row k
                    let (ks, ke) = (csr.row_ptr[k], csr.row_ptr[k + 1]);
                    if let Ok(pos) = csr.col_idx[ks..ke].binary_search(&j) {
                        let ukj = csr.values[ks + pos];
                        csr.values[jj] = csr.values[jj] - lik * ukj;
                    }
                }
            }
        }
        Ok(Self { csr, diag_ptr })
    }

    /// Solve `LU z = r` in place of the returned vector.
    pub fn apply(&self, r: &[F]) -> Vec<F> {
        let n = self.csr.n;
        let mut z = r.to_vec();
        // forward: L has unit diagonal
        for i in 0..n {
            let mut acc = z[i];
            for k in self.csr.row_ptr[i]..self.diag_ptr[i] {
                acc -= self.csr.values[k] * z[self.csr.col_idx[k]];
            }
            z[i] = acc;
        }
        // backward
        for i in (0..n).rev() {
            let mut acc = z[i];
            for k in self.diag_ptr[i] + 1..self.csr.row_ptr[i + 1] {
                acc -= self.csr.values[k] * z[self.csr.col_idx[k]];
            }
            z[i] = acc / self.csr.values[self.diag_ptr[i]];
        }
        z
    }
}

/// ILU(0)-preconditioned BiCGStab for general sparse systems.
pub fn bicgstab<F: Real>(
    a: &Csr<F>,
    b: &[F],
    x0: Option<&[F]>,
    rel_tol: F,
    max_iter: usize,
) -> Result<Vec<F>, SparseError> {
    let n = a.n;
    let b_norm = norm2(b);
    if b_norm == F::zero() {
        return Ok(vec![F::zero(); n]);
    }
    let precond = Ilu0::new(a)?;
    let mut x = x0.map_or(vec![F::zero(); n], |v| v.to_vec());
    let mut r = b.to_vec();
    if x0.is_some() {
        let ax = a.matvec_alloc(&x);
        for i in 0..n {
            r[i] -= ax[i];
        }
    }
    let r_hat = r.clone();
    let mut rho = F::one();
    let mut alpha = F::one();
    let mut omega = F::one();
    let mut v = vec![F::zero(); n];
    let mut p = vec![F::zero(); n];
    let tiny = F::min_positive_value();
    for iters in 0..max_iter {
        if norm2(&r) <= rel_tol * b_norm {
            return Ok(x);
        }
        let rho_new = dot(&r_hat, &r);
        if rho_new.abs() < tiny {
            return Err(SparseError::Breakdown(format!("rho breakdown at iter {iters}")));
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        let y = precond.apply(&p);
        a.matvec(&y, &mut v);
        let denom = dot(&r_hat, &v);
        if denom.abs() < tiny {
            return Err(SparseError::Breakdown(format!("alpha breakdown at iter {iters}")));
        }
        alpha = rho / denom;
        let mut s = r.clone();
        for i in 0..n {
            s[i] -= alpha * v[i];
        }
        if norm2(&s) <= rel_tol * b_norm {
            for i in 0..n {
                x[i] += alpha * y[i];
            }
            return Ok(x);
        }
        let z = precond.apply(&s);
        let t = a.matvec_alloc(&z);
        let tt = dot(&t, &t);
        if tt.abs() < tiny {
            return Err(SparseError::Breakdown(format!("omega breakdown at iter {iters}")));
        }
        omega = dot(&t, &s) / tt;
        for i in 0..n {
            x[i] += alpha * y[i] + omega * z[i];
            r[i] = s[i] - omega * t[i];
        }
        if omega.abs() < tiny {
            return Err(SparseError::Breakdown(format!("omega underflow at iter {iters}")));
        }
    }
    let res = norm2(&r) / b_norm;
    Err(SparseError::Stagnated { residual: res.f64(), iters: max_iter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::SplitMix64;

    fn laplacian_1d(n: usize) -> Csr<f64> {
        let mut t = Triplets::new(n);
        for i in 0..n {
            t.push(i, i, 2.0);
            if i > 0 {
                t.push(i, i - 1, -1.0);
            }
            if i + 1 < n {
                t.push(i, i + 1, -1.0);
            }
        }
        t.to_csr()
    }

    #[test]
    fn triplets_merge_duplicates_sorted() {
        let mut t = Triplets::new(3);
        t.push(0, 2, 1.0);
        t.push(0, 0, 2.0);
        t.push(0, 2, 3.0);
        t.push(1, 1, 1.0);
        t.push(2, 2, 1.0);
        let m = t.to_csr();
        assert_eq!(m.col_idx[..2], [0, 2]);
        assert_eq!(m.values[..2], [2.0, 4.0]);
    }

    #[test]
    fn cg_solves_spd_system() {
        let n = 200;
        let a = laplacian_1d(n);
        let x_true: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.1).sin()).collect();
        let b = a.matvec_alloc(&x_true);
        let x = cg(&a, &b, None, 1e-12, 2000).unwrap();
        let err: f64 = x
            .iter()
            .zip(&x_true)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-8, "err = {err}");
    }

    #[test]
    fn bicgstab_solves_nonsymmetric_system() {
        // 2D 5-point Laplacian plus a skew convection term
        let n1 = 24;
        let n = n1 * n1;
        let mut t = Triplets::new(n);
        let idx = |i: usize, j: usize| i * n1 + j;
        for i in 0..n1 {
            for j in 0..n1 {
                let me = idx(i, j);
                t.push(me, me, 4.0);
                let conv = 0.6;
                if i > 0 {
                    t.push(me, idx(i - 1, j), -1.0 - conv);
                }
                if i + 1 < n1 {
                    t.push(me, idx(i + 1, j), -1.0 + conv);
                }
                if j > 0 {
                    t.push(me, idx(i, j - 1), -1.0 - 0.5 * conv);
                }
                if j + 1 < n1 {
                    t.push(me, idx(i, j + 1), -1.0 + 0.5 * conv);
                }
            }
        }
        let a = t.to_csr();
        let mut rng = SplitMix64::new(5);
        let x_true: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
        let b = a.matvec_alloc(&x_true);
        let x = bicgstab(&a, &b, None, 1e-12, 4000).unwrap();
        let mut r = b.clone();
        let ax = a.matvec_alloc(&x);
        for i in 0..n {
            r[i] -= ax[i];
        }
        assert!(norm2(&r) / norm2(&b) < 1e-10);
    }

    #[test]
    fn zero_rhs_returns_zero_exactly() {
        let a = laplacian_1d(10);
        let b = vec![0.0; 10];
        assert!(cg(&a, &b, None, 1e-12, 10).unwrap().iter().all(|&v| v == 0.0));
        assert!(bicgstab(&a, &b, None, 1e-12, 10).unwrap().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn ilu0_is_exact_for_triangular_patterns() {
        // tridiagonal: ILU(0) equals full LU, so one apply solves exactly
        let a = laplacian_1d(50);
        let ilu = Ilu0::new(&a).unwrap();
        let x_true: Vec<f64> = (0..50).map(|i| (i as f64).cos()).collect();
        let b = a.matvec_alloc(&x_true);
        let x = ilu.apply(&b);
        let err: f64 = x.iter().zip(&x_true).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10, "err = {err}");
    }
}
