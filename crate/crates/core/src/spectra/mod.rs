//! Eigenvalues of symmetric matrices and the exact characteristic-polynomial
//! oracle used to cross-check them.

mod charpoly;
pub mod exact;
mod jacobi;
mod matrix;

pub use charpoly::{char_poly, CharPoly};
pub use jacobi::{Eigenpairs, MAX_SWEEPS, RELATIVE_TOLERANCE};
pub use matrix::SymmetricMatrix;

use serde::Serialize;

use crate::error::Result;

/// Real eigenvalues with multiplicity, sorted descending.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts descending; equal values keep their input order.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Spectrum of `A + c·I`.
    pub fn shifted(&self, c: f64) -> Spectrum {
        Spectrum::from_values(self.values.iter().map(|x| x + c).collect())
    }

    /// Spectrum of a block-diagonal matrix with the given block spectra.
    pub fn union<'a, I>(parts: I) -> Spectrum
    where
        I: IntoIterator<Item = &'a Spectrum>,
    {
        Spectrum::from_values(
            parts
                .into_iter()
                .flat_map(|s| s.values.iter().copied())
                .collect(),
        )
    }

    /// `Σ |λ_i − centre|`.
    pub fn deviation_sum(&self, centre: f64) -> f64 {
        self.values.iter().map(|x| (x - centre).abs()).sum()
    }

    /// Eigenvalue of least magnitude (the first such in descending order).
    pub fn min_abs(&self) -> Option<f64> {
        self.values
            .iter()
            .copied()
            .reduce(|best, x| if x.abs() < best.abs() { x } else { best })
    }

    /// Largest elementwise difference against `other` after sorted pairing;
    /// infinite when the lengths differ.
    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues of `m` by cyclic Jacobi rotations.
pub fn eigenvalues(m: &SymmetricMatrix) -> Result<Spectrum> {
    let e = jacobi::decompose(m, false)?;
    Ok(Spectrum { values: e.values })
}

/// Eigenvalues together with unit eigenvectors. Only meant for residual checks.
#[doc(hidden)]
pub fn eigenpairs(m: &SymmetricMatrix) -> Result<Eigenpairs> {
    jacobi::decompose(m, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, LoopedGraph};

    fn assert_spectrum(s: &Spectrum, want: &[f64], tol: f64) {
        assert_eq!(s.len(), want.len());
        for (a, b) in s.values().iter().zip(want) {
            assert!((a - b).abs() <= tol, "{:?} vs {:?}", s.values(), want);
        }
    }

    #[test]
    fn complete_graph_spectrum() {
        let s = eigenvalues(&Graph::complete(3).unwrap().adjacency_matrix()).unwrap();
        assert_spectrum(&s, &[2.0, -1.0, -1.0], 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let s = eigenvalues(&SymmetricMatrix::zeros(4)).unwrap();
        assert_eq!(s.values(), &[0.0; 4]);
    }

    #[test]
    fn looped_triangle_union_spectrum() {
        let k3 = Graph::complete(3).unwrap();
        let h3 = LoopedGraph::union([&k3.without_loops(), &k3.with_all_loops()]);
        let s = eigenvalues(&h3.adjacency_matrix()).unwrap();
        assert_spectrum(&s, &[3.0, 2.0, 0.0, 0.0, -1.0, -1.0], 1e-12);
    }

    #[test]
    fn path_spectrum_closed_form() {
        // P_n eigenvalues are 2cos(πj/(n+1)), j = 1..n.
        for n in 1..=8 {
            let s = eigenvalues(&Graph::path(n).unwrap().adjacency_matrix()).unwrap();
            let want: Vec<f64> = (1..=n)
                .map(|j| 2.0 * (std::f64::consts::PI * j as f64 / (n + 1) as f64).cos())
                .collect();
            assert_spectrum(&s, &want, 1e-12);
        }
    }

    #[test]
    fn shift_and_union() {
        let s = Spectrum::from_values(vec![2.0, -1.0, -1.0]);
        assert_eq!(s.shifted(1.0).values(), &[3.0, 0.0, 0.0]);
        assert_eq!(s.shifted(0.0), s);
        let r2 = 2f64.sqrt();
        let p3 = Spectrum::from_values(vec![r2, 0.0, -r2]).shifted(1.0);
        assert_spectrum(&p3, &[1.0 + r2, 1.0, 1.0 - r2], 1e-15);

        let u = Spectrum::union([&s, &s.shifted(1.0)]);
        assert_eq!(u.values(), &[3.0, 2.0, 0.0, 0.0, -1.0, -1.0]);
        assert_eq!(Spectrum::union([&s]), s);

        let (p, q) = (2, 3);
        let base = Spectrum::from_values(vec![1.0, -1.0]);
        let shifted = base.shifted(1.0);
        let parts: Vec<&Spectrum> = std::iter::repeat_n(&base, p)
            .chain(std::iter::repeat_n(&shifted, q))
            .collect();
        let fam = Spectrum::union(parts);
        let count = |x: f64| fam.values().iter().filter(|&&v| v == x).count();
        assert_eq!(
            (count(1.0), count(-1.0), count(2.0), count(0.0)),
            (2, 2, 3, 3)
        );
    }

    #[test]
    fn min_abs_reports_first_smallest() {
        let s = Spectrum::from_values(vec![2.0f64.sqrt(), 0.0, -(2.0f64.sqrt())]);
        assert_eq!(s.min_abs(), Some(0.0));
        assert_eq!(Spectrum::default().min_abs(), None);
    }
}
