//! Dense and tridiagonal symmetric eigensolvers for the oracle layer.
//!
//! The radial solver needs selective eigenvalues of large symmetric
//! tridiagonal matrices (Sturm bisection plus inverse iteration); the toy
//! decoupling model needs the lowest eigenvalue of a dense symmetric
//! matrix (Householder tridiagonalization feeding the same bisection).

/// Symmetric tridiagonal matrix: `diag` of length n, `offdiag` of length n-1.
#[derive(Clone, Debug)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via LDL^T).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0usize;
        let mut d = 1.0f64;
        for i in 0..self.n() {
            let off2 = if i > 0 {
                let e = self.offdiag[i - 1];
                e * e
            } else {
                0.0
            };
            d = self.diag[i] - x - off2 / d;
            if d < 0.0 {
                count += 1;
            } else if d == 0.0 {
                d = -f64::MIN_POSITIVE;
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// k-th eigenvalue in ascending order (0-based), by bisection.
    ///
    /// The log-grid matrices have Gershgorin ranges tens of orders wider
    /// than the eigenvalues of interest, so the stopping rule must track
    /// the shrinking bracket, not the initial range.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.n());
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if self.count_below(mid) >= k + 1 {
                hi = mid;
            } else {
                lo = mid;
            }
            let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
            if hi - lo <= 4.0 * f64::EPSILON * scale {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for an eigenvalue estimate, by inverse iteration with a
    /// deterministic start. Returned with unit Euclidean norm.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.n();
        // Small shift relative to the eigenvalue keeps the factorization
        // nonsingular without moving the converged direction.
        let shifted = lambda + lambda.abs() * 1e-12 + 1e-300;
        let mut v = vec![1.0; n];
        normalize(&mut v);
        for _ in 0..4 {
            let mut w = v.clone();
            solve_shifted_tridiag(&self.diag, &self.offdiag, shifted, &mut w);
            if w.iter().any(|x| !x.is_finite()) {
                break;
            }
            normalize(&mut w);
            v = w;
        }
        v
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Solves (T - lambda I) x = b in place for symmetric tridiagonal T,
/// Gaussian elimination with partial pivoting (one superdiagonal of
/// fill-in).
fn solve_shifted_tridiag(diag: &[f64], offdiag: &[f64], lambda: f64, b: &mut [f64]) {
    let n = diag.len();
    let tiny = 1e-300;
    let mut d: Vec<f64> = diag.iter().map(|v| v - lambda).collect();
    let mut du: Vec<f64> = offdiag.to_vec();
    du.push(0.0);
    let mut du2 = vec![0.0f64; n];
    let dl: Vec<f64> = offdiag.to_vec();

    for k in 0..n.saturating_sub(1) {
        if d[k].abs() >= dl[k].abs() {
            let pivot = if d[k] != 0.0 { d[k] } else { tiny };
            d[k] = pivot;
            let mult = dl[k] / pivot;
            d[k + 1] -= mult * du[k];
            b[k + 1] -= mult * b[k];
        } else {
            let mult = d[k] / dl[k];
            d[k] = dl[k];
            let temp = d[k + 1];
            d[k + 1] = du[k] - mult * temp;
            du[k] = temp;
            if k + 2 < n {
                du2[k] = du[k + 1];
                du[k + 1] = -mult * du2[k];
            }
            let tb = b[k];
            b[k] = b[k + 1];
            b[k + 1] = tb - mult * b[k];
        }
    }
    if d[n - 1] == 0.0 {
        d[n - 1] = tiny;
    }
    b[n - 1] /= d[n - 1];
    if n >= 2 {
        let k = n - 2;
        if d[k] == 0.0 {
            d[k] = tiny;
        }
        b[k] = (b[k] - du[k] * b[k + 1]) / d[k];
    }
    for k in (0..n.saturating_sub(2)).rev() {
        if d[k] == 0.0 {
            d[k] = tiny;
        }
        b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
    }
}

/// Householder reduction of a symmetric matrix (flat row-major) to
/// tridiagonal form; transforms are not accumulated.
pub fn householder_tridiagonalize(a: &mut [f64], n: usize) -> SymTridiag {
    assert_eq!(a.len(), n * n);
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0f64;
        if l > 0 {
            let mut scale = 0.0f64;
            for k in 0..=l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f_acc = 0.0f64;
                for j in 0..=l {
                    let mut g = 0.0f64;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    SymTridiag { diag: d, offdiag: e[1..].to_vec() }
}

/// Lowest eigenvalue of a dense symmetric matrix (flat row-major;
/// destroyed in the process).
pub fn symmetric_lowest_eigenvalue(a: &mut [f64], n: usize) -> f64 {
    householder_tridiagonalize(a, n).eigenvalue(0)
}

/// All eigenvalues of a small dense symmetric matrix by cyclic Jacobi
/// rotations, ascending. Quadratic convergence; intended for modest n.
pub fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = 1e-15 * norm.max(1.0);
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    vals
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn laplacian(n: usize) -> SymTridiag {
        SymTridiag { diag: vec![2.0; n], offdiag: vec![-1.0; n - 1] }
    }

    #[test]
    fn tridiag_eigenvalues_of_discrete_laplacian() {
        // lambda_k = 2 - 2 cos(k pi / (n+1)), a classic closed form
        let n = 50;
        let t = laplacian(n);
        for k in [0usize, 1, 24, 49] {
            let expect = 2.0 - 2.0 * ((k as f64 + 1.0) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert_relative_eq!(t.eigenvalue(k), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn tridiag_eigenvector_satisfies_equation() {
        let n = 80;
        let t = laplacian(n);
        let lam = t.eigenvalue(3);
        let v = t.eigenvector(lam);
        // residual ||Tv - lam v||
        let mut res = 0.0f64;
        for i in 0..n {
            let mut tv = t.diag[i] * v[i];
            if i > 0 {
                tv += t.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                tv += t.offdiag[i] * v[i + 1];
            }
            res += (tv - lam * v[i]) * (tv - lam * v[i]);
        }
        assert!(res.sqrt() < 1e-10, "residual {}", res.sqrt());
        // eigenvector of index k has k sign changes
        let changes = v.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        assert_eq!(changes, 3);
    }

    #[test]
    fn householder_matches_jacobi_on_random_symmetric() {
        // deterministic pseudo-random symmetric matrix
        let n = 24;
        let mut a = vec![0.0f64; n * n];
        let mut seed = 123456789u64;
        let mut rand = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for i in 0..n {
            for j in 0..=i {
                let v = rand();
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        let mut a2 = a.clone();
        let tri = householder_tridiagonalize(&mut a, n);
        let jac = jacobi_eigenvalues(&mut a2, n);
        for k in 0..n {
            assert_relative_eq!(tri.eigenvalue(k), jac[k], epsilon = 1e-10, max_relative = 1e-10);
        }
    }

    #[test]
    fn lowest_eigenvalue_shortcut() {
        let mut a = vec![4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let got = symmetric_lowest_eigenvalue(&mut a, 3);
        let mut b = vec![4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let all = jacobi_eigenvalues(&mut b, 3);
        assert_relative_eq!(got, all[0], max_relative = 1e-12);
    }
}
