//! Random test states: Hilbert-Schmidt mixed states, Haar-ish pure states
//! and single-qubit unitaries.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G^dagger / tr(G G^dagger)` for a complex Gaussian `G`.
pub fn hilbert_schmidt_state<R: Rng + ?Sized>(rng: &mut R, labels: &[&str]) -> DensityMatrix {
    let dim = 1 << labels.len();
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng));
    let gg = &g * g.adjoint();
    let tr = gg.trace();
    DensityMatrix::new(gg / tr, labels.iter().map(|s| s.to_string()).collect())
        .expect("dimension fixed by labels")
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, labels: &[&str]) -> DensityMatrix {
    let dim = 1 << labels.len();
    let psi: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
    DensityMatrix::pure(&psi, labels).expect("non-zero with probability one")
}

/// Uniformly random SU(2) element from a unit quaternion.
pub fn su2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<Complex64> {
    let mut q = [0.0f64; 4];
    for x in q.iter_mut() {
        *x = rng.sample(StandardNormal);
    }
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    let alpha = Complex64::new(a, b);
    let beta = Complex64::new(c, d);
    Matrix2::new(alpha, -beta.conj(), beta, alpha.conj())
}

/// `U_A (x) U_B` as a 4x4 matrix.
pub fn local_unitary(ua: &Matrix2<Complex64>, ub: &Matrix2<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(4, 4, |r, c| ua[(r / 2, c / 2)] * ub[(r % 2, c % 2)])
}
