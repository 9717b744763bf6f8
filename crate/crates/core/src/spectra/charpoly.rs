//! Exact characteristic polynomials of integer matrices.
//!
//! Faddeev–LeVerrier recurrence in `i128`:
//!
//! ```text
//! M_1 = I,                c_1 = -tr(A)
//! M_k = A·M_{k-1} + c_{k-1}·I,  c_k = -tr(A·M_k) / k
//! ```
//!
//! Every division by `k` is exact for integer `A`, so the coefficients are the
//! exact integers of `det(xI - A)`.

use std::fmt;

use super::matrix::SymmetricMatrix;
use crate::error::{Error, Result};

/// Monic `φ(x) = xⁿ + c₁xⁿ⁻¹ + … + cₙ`, highest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coefficients: Vec<i128>,
}

impl CharPoly {
    /// Builds from highest-degree-first coefficients. The leading one must be 1.
    pub fn from_coefficients(coefficients: Vec<i128>) -> Option<Self> {
        (coefficients.first() == Some(&1)).then_some(CharPoly { coefficients })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// `[1, c₁, …, cₙ]`.
    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: i128) -> Option<i128> {
        self.coefficients
            .iter()
            .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (k, &c) in self.coefficients.iter().enumerate() {
            let power = n - k;
            if c == 0 && !(first && power == 0) {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            if mag != 1 || power == 0 {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

/// Characteristic polynomial of a matrix with integer entries.
///
/// Fails with [`Error::NonIntegerEntry`] if any entry is not an integer and
/// with [`Error::Overflow`] if an intermediate leaves the `i128` range.
pub fn char_poly(m: &SymmetricMatrix) -> Result<CharPoly> {
    let n = m.dim();
    let mut a = vec![0i128; n * n];
    for i in 0..n {
        for j in 0..n {
            let x = m.get(i, j);
            if x.fract() != 0.0 || !x.is_finite() || x.abs() > 1e15 {
                return Err(Error::NonIntegerEntry {
                    row: i,
                    col: j,
                    value: x,
                });
            }
            a[i * n + j] = x as i128;
        }
    }

    let mut coefficients = Vec::with_capacity(n + 1);
    coefficients.push(1i128);
    let mut mk = vec![0i128; n * n];
    for i in 0..n {
        mk[i * n + i] = 1;
    }
    for k in 1..=n {
        let am = mat_mul(&a, &mk, n)?;
        let mut tr = 0i128;
        for i in 0..n {
            tr = tr.checked_add(am[i * n + i]).ok_or(Error::Overflow)?;
        }
        debug_assert_eq!(tr % k as i128, 0);
        let ck = -(tr / k as i128);
        coefficients.push(ck);
        if k < n {
            mk = am;
            for i in 0..n {
                mk[i * n + i] = mk[i * n + i].checked_add(ck).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(CharPoly { coefficients })
}

fn mat_mul(a: &[i128], b: &[i128], n: usize) -> Result<Vec<i128>> {
    let mut out = vec![0i128; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let t = aik.checked_mul(b[k * n + j]).ok_or(Error::Overflow)?;
                out[i * n + j] = out[i * n + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(out)
}
