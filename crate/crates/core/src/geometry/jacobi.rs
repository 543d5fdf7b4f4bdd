//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Intended for the small matrices (order <= 8) that back the vectorized
//! positive-semidefinite cone. Each sweep visits all off-diagonal pairs and
//! annihilates entries above a shrinking threshold; convergence is quadratic
//! once the off-diagonal mass is small.

use crate::error::{Error, Result};
use crate::tol::TOL;

/// Eigenvalues and eigenvectors of a symmetric matrix.
///
/// `values[j]` pairs with the eigenvector stored in column `j` of `vectors`
/// (row-major, `order x order`). Eigenvalues are sorted ascending.
#[derive(Clone, Debug)]
pub struct SymEigen {
    pub order: usize,
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
}

impl SymEigen {
    /// Reconstructs `Q diag(values) Q^T`, row-major.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.order;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut sum = 0.0;
                for k in 0..n {
                    sum += self.vectors[i * n + k] * self.values[k] * self.vectors[j * n + k];
                }
                out[i * n + j] = sum;
            }
        }
        out
    }
}

/// Computes the eigendecomposition of a symmetric matrix given row-major.
///
/// Only the values on and above the diagonal are read. Errors if `order`
/// exceeds 8 or if the rotations fail to drive the off-diagonal norm below
/// the global target within the sweep budget.
pub fn sym_eigen(matrix: &[f64], order: usize) -> Result<SymEigen> {
    if order == 0 || order > 8 {
        return Err(Error::Unsupported(format!(
            "eigensolver handles orders 1..=8, got {order}"
        )));
    }
    if matrix.len() != order * order {
        return Err(Error::DimensionMismatch {
            expected: order * order,
            got: matrix.len(),
        });
    }

    let n = order;
    let mut a = vec![0.0; n * n];
    // Symmetrize from the upper triangle so callers may pass either triangle
    // filled; the iteration below maintains exact symmetry.
    for i in 0..n {
        for j in i..n {
            let v = matrix[i * n + j];
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    let mut q = vec![0.0; n * n];
    for i in 0..n {
        q[i * n + i] = 1.0;
    }

    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = TOL.eigen_off * (1.0 + frob);

    let mut last_off = f64::INFINITY;
    for _sweep in 0..TOL.eigen_max_sweeps {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for r in (p + 1)..n {
                    s += 2.0 * a[p * n + r] * a[p * n + r];
                }
            }
            s.sqrt()
        };
        last_off = off;
        if off <= target {
            let (values, vectors) = sort_pairs(a, q, n);
            return Ok(SymEigen {
                order: n,
                values,
                vectors,
            });
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = a[p * n + r];
                if apr.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                // Classic two-sided rotation choosing the smaller angle.
                let theta = (a[r * n + r] - a[p * n + p]) / (2.0 * apr);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[p * n + p];
                let arr = a[r * n + r];
                a[p * n + p] = app - t * apr;
                a[r * n + r] = arr + t * apr;
                a[p * n + r] = 0.0;
                a[r * n + p] = 0.0;
                for k in 0..n {
                    if k != p && k != r {
                        let akp = a[k * n + p];
                        let akr = a[k * n + r];
                        a[k * n + p] = akp - s * (akr + tau * akp);
                        a[k * n + r] = akr + s * (akp - tau * akr);
                        a[p * n + k] = a[k * n + p];
                        a[r * n + k] = a[k * n + r];
                    }
                }
                for k in 0..n {
                    let qkp = q[k * n + p];
                    let qkr = q[k * n + r];
                    q[k * n + p] = qkp - s * (qkr + tau * qkp);
                    q[k * n + r] = qkr + s * (qkp - tau * qkr);
                }
            }
        }
    }
    Err(Error::EigenNoConvergence {
        sweeps: TOL.eigen_max_sweeps,
        off_norm: last_off,
    })
}

fn sort_pairs(a: Vec<f64>, q: Vec<f64>, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let values: Vec<f64> = idx.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_col, &old_col) in idx.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + new_col] = q[row * n + old_col];
        }
    }
    (values, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(m: &[f64], n: usize) {
        let eig = sym_eigen(m, n).unwrap();
        let frob = m.iter().map(|x| x * x).sum::<f64>().sqrt();
        let rec = eig.reconstruct();
        let err: f64 = rec
            .iter()
            .zip(m)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        assert!(
            err <= 1e-10 * (1.0 + frob),
            "reconstruction error {err:.3e} too large"
        );
        // Columns of Q orthonormal.
        for i in 0..n {
            for j in 0..n {
                let mut d = 0.0;
                for k in 0..n {
                    d += eig.vectors[k * n + i] * eig.vectors[k * n + j];
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() <= 1e-10, "Q^T Q [{i},{j}] = {d}");
            }
        }
        for w in eig.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn diagonal_matrix_is_fixed_point() {
        let m = [3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0];
        let eig = sym_eigen(&m, 3).unwrap();
        assert_eq!(eig.values, vec![-1.0, 2.0, 3.0]);
        check_decomposition(&m, 3);
    }

    #[test]
    fn two_by_two_closed_form() {
        // Eigenvalues of [[2,1],[1,2]] are 1 and 3.
        let m = [2.0, 1.0, 1.0, 2.0];
        let eig = sym_eigen(&m, 2).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        check_decomposition(&m, 2);
    }

    #[test]
    fn recovers_known_spectrum() {
        // Tridiagonal (-1, 2, -1) of order 4: eigenvalues 2 - 2 cos(k pi / 5).
        let m = [
            2.0, -1.0, 0.0, 0.0, //
            -1.0, 2.0, -1.0, 0.0, //
            0.0, -1.0, 2.0, -1.0, //
            0.0, 0.0, -1.0, 2.0,
        ];
        let eig = sym_eigen(&m, 4).unwrap();
        for (k, v) in eig.values.iter().enumerate() {
            let expect = 2.0 - 2.0 * (std::f64::consts::PI * (k as f64 + 1.0) / 5.0).cos();
            assert!((v - expect).abs() < 1e-12, "value {k}: {v} vs {expect}");
        }
        check_decomposition(&m, 4);
    }

    #[test]
    fn order_limit_enforced() {
        let m = vec![0.0; 81];
        assert!(matches!(sym_eigen(&m, 9), Err(Error::Unsupported(_))));
    }

    #[test]
    fn random_dense_decompositions() {
        // Deterministic congruential fill; checks the full postcondition set
        // on a spread of dense symmetric matrices up to the order cap.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 4.0 - 2.0
        };
        for n in 1..=8 {
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for j in i..n {
                    let v = next();
                    m[i * n + j] = v;
                    m[j * n + i] = v;
                }
            }
            check_decomposition(&m, n);
        }
    }
}
