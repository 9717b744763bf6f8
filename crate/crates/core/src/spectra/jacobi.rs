//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Each sweep visits every off-diagonal pair `(p, q)` in row order and applies
//! the plane rotation that zeroes `a(p,q)`. Iteration stops once the
//! off-diagonal Frobenius norm drops to `1e-12·(1 + ‖A‖_F)`.

use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Eigenvalues sorted descending with the matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

pub(crate) fn decompose(m: &SymmetricMatrix, want_vectors: bool) -> Result<Eigenpairs> {
    let n = m.dim();
    let mut a = m.entries().to_vec();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        id
    } else {
        Vec::new()
    };

    let tol = RELATIVE_TOLERANCE * (1.0 + m.frobenius_norm());
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off <= tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[p * n + p], a[q * n + q], apq);
                rotate(&mut a, n, p, q, c, s);
                if want_vectors {
                    rotate_columns(&mut v, n, p, q, c, s);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable: equal eigenvalues keep their diagonal order.
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = if want_vectors {
        order
            .iter()
            .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
            .collect()
    } else {
        Vec::new()
    };
    Ok(Eigenpairs { values, vectors })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Cosine and sine of the rotation that annihilates `a(p,q)` in the 2×2
/// block `[[app, apq], [apq, aqq]]`.
fn rotation(app: f64, aqq: f64, apq: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * apq);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

/// `A ← Jᵀ A J` for the rotation `J` in the `(p, q)` plane.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    rotate_columns(a, n, p, q, c, s);
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

fn rotate_columns(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(m: &SymmetricMatrix, lambda: f64, v: &[f64]) -> f64 {
        m.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(av, x)| (av - lambda * x).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = SymmetricMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = decompose(&m, true).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        for (l, v) in e.values.iter().zip(&e.vectors) {
            assert!(residual(&m, *l, v) < 1e-13);
        }
    }

    #[test]
    fn empty_and_diagonal() {
        assert!(decompose(&SymmetricMatrix::zeros(0), true)
            .unwrap()
            .values
            .is_empty());
        let m = SymmetricMatrix::from_lower_fn(3, |i, j| if i == j { i as f64 } else { 0.0 });
        assert_eq!(decompose(&m, false).unwrap().values, vec![2.0, 1.0, 0.0]);
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let m = SymmetricMatrix::from_lower_fn(6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0);
        let e = decompose(&m, true).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let dot: f64 = e.vectors[a]
                    .iter()
                    .zip(&e.vectors[b])
                    .map(|(x, y)| x * y)
                    .sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nan_input_fails_to_converge() {
        let m = SymmetricMatrix::from_lower_fn(2, |i, j| if i != j { f64::NAN } else { 0.0 });
        // NaN off-diagonal never passes the convergence test.
        assert!(matches!(
            decompose(&m, false),
            Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                ..
            })
        ));
    }
}
