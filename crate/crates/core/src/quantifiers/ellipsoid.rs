//! Steering ellipsoid of the first qubit induced by measurements on the
//! second.

use std::f64::consts::PI;

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use serde::Serialize;

use crate::density::{bloch_decompose, DensityMatrix};
use crate::error::{Error, Result};

/// `|w|` must stay below `1 - POLE_MARGIN`.
pub const POLE_MARGIN: f64 = 1e-9;
const Q_CLAMP_TOL: f64 = 1e-10;
const Q_ASYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SteeringEllipsoid {
    pub center: Vector3<f64>,
    /// Descending `s_1 >= s_2 >= s_3 >= 0`.
    pub semi_axes: Vector3<f64>,
    /// Column `i` is the direction of `semi_axes[i]`.
    pub axes: Matrix3<f64>,
    pub gamma_b: f64,
    /// Eigenvalues of `Q_A` after clamping, descending.
    pub q_eigenvalues: Vector3<f64>,
}

impl SteeringEllipsoid {
    pub fn volume(&self) -> f64 {
        4.0 * PI / 3.0 * self.semi_axes.iter().product::<f64>()
    }

    /// `center + axes * diag(s) * unit`.
    pub fn surface_point(&self, unit: &Vector3<f64>) -> Vector3<f64> {
        self.center + self.axes * self.semi_axes.component_mul(unit)
    }

    pub fn summary(&self) -> EllipsoidSummary {
        EllipsoidSummary {
            center: self.center.into(),
            semi_axes: self.semi_axes.into(),
            axes: [0, 1, 2].map(|c| self.axes.column(c).into_owned().into()),
            gamma_b: self.gamma_b,
            q_eigenvalues: self.q_eigenvalues.into(),
            volume: self.volume(),
        }
    }
}

/// Plain-array view for reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipsoidSummary {
    pub center: [f64; 3],
    pub semi_axes: [f64; 3],
    /// Principal directions, one per semi-axis.
    pub axes: [[f64; 3]; 3],
    pub gamma_b: f64,
    pub q_eigenvalues: [f64; 3],
    pub volume: f64,
}

pub fn steering_ellipsoid(rho: &DensityMatrix) -> Result<SteeringEllipsoid> {
    let f = bloch_decompose(rho)?;
    let (v, w, theta) = (f.v(), f.w(), f.theta());
    let w_norm = w.norm();
    if w_norm >= 1.0 - POLE_MARGIN {
        return Err(Error::PureMarginalPole { norm: w_norm });
    }
    let gamma = 1.0 / (1.0 - w_norm * w_norm);
    let center = gamma * (v - theta * w);

    let left = theta - v * w.transpose();
    let middle = Matrix3::identity() + gamma * w * w.transpose();
    let q = gamma * left * middle * left.transpose();

    let scale = q.norm().max(1.0);
    let asym = (q - q.transpose()).abs().max();
    if asym > Q_ASYMMETRY_TOL * scale {
        return Err(Error::Internal(format!("Q_A asymmetry {asym:e}")));
    }
    let q = (q + q.transpose()) * 0.5;

    let eig = SymmetricEigen::new(q);
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut q_eigenvalues = Vector3::zeros();
    let mut axes = Matrix3::zeros();
    for (slot, &k) in order.iter().enumerate() {
        let qk = eig.eigenvalues[k];
        if qk < -Q_CLAMP_TOL {
            return Err(Error::Internal(format!("Q_A eigenvalue {qk:e} is negative")));
        }
        q_eigenvalues[slot] = qk.max(0.0);
        axes.set_column(slot, &eig.eigenvectors.column(k));
    }
    let semi_axes = q_eigenvalues.map(f64::sqrt);
    Ok(SteeringEllipsoid { center, semi_axes, axes, gamma_b: gamma, q_eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn bell() -> DensityMatrix {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        DensityMatrix::pure(&[z, s, s, z], &["A", "B"]).unwrap()
    }

    #[test]
    fn bell_gives_bloch_sphere() {
        let e = steering_ellipsoid(&bell()).unwrap();
        assert_abs_diff_eq!(e.center.norm(), 0.0, epsilon = 1e-12);
        for s in e.semi_axes.iter() {
            assert_abs_diff_eq!(*s, 1.0, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(e.gamma_b, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.volume(), 4.0 * PI / 3.0, epsilon = 1e-8);
    }

    #[test]
    fn classical_mixture_gives_z_needle() {
        let mut v = [0.0; 16];
        v[0] = 0.5;
        v[15] = 0.5;
        let rho = DensityMatrix::from_real(4, &v, &["A", "B"]).unwrap();
        let e = steering_ellipsoid(&rho).unwrap();
        assert_abs_diff_eq!(e.semi_axes[0], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(e.semi_axes[1], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(e.semi_axes[2], 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(e.axes.column(0).z.abs(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn product_state_collapses_to_point_at_own_bloch_vector() {
        // (0.8|0><0| + 0.2|1><1|) (x) (0.6|0><0| + 0.4|1><1|)
        let a = [0.8, 0.2];
        let b = [0.6, 0.4];
        let mut vals = [0.0; 16];
        for i in 0..4 {
            vals[i * 5] = a[i / 2] * b[i % 2];
        }
        let rho = DensityMatrix::from_real(4, &vals, &["A", "B"]).unwrap();
        let e = steering_ellipsoid(&rho).unwrap();
        assert_abs_diff_eq!(e.semi_axes.norm(), 0.0, epsilon = 1e-7);
        assert_abs_diff_eq!((e.center - Vector3::new(0.0, 0.0, 0.6)).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e.gamma_b, 1.0 / (1.0 - 0.04), epsilon = 1e-12);
    }

    #[test]
    fn pure_marginal_is_a_pole() {
        // |0><0| (x) |0><0|
        let mut v = [0.0; 16];
        v[0] = 1.0;
        let rho = DensityMatrix::from_real(4, &v, &["A", "B"]).unwrap();
        assert!(matches!(steering_ellipsoid(&rho), Err(Error::PureMarginalPole { .. })));
    }

    #[test]
    fn axes_are_orthonormal() {
        let rho = DensityMatrix::from_real(
            4,
            &[0.4, 0., 0., 0.1, 0., 0.2, 0.05, 0., 0., 0.05, 0.1, 0., 0.1, 0., 0., 0.3],
            &["A", "B"],
        )
        .unwrap();
        let e = steering_ellipsoid(&rho).unwrap();
        assert_abs_diff_eq!((e.axes.transpose() * e.axes - Matrix3::identity()).norm(), 0.0, epsilon = 1e-10);
        assert!(e.semi_axes[0] >= e.semi_axes[1] && e.semi_axes[1] >= e.semi_axes[2]);
    }
}
