use crate::density::{bloch_decompose, DensityMatrix};
use crate::error::{Error, Result};

/// Largest magnitude tolerated outside the diagonal and anti-diagonal.
pub const X_SPARSITY_TOL: f64 = 1e-12;

/// Fails with [`Error::NotXState`] if any of `eta_12, eta_13, eta_24,
/// eta_34` (or their transposes) is non-zero.
pub fn check_x_sparsity(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!("expected a two-qubit state, got dimension {}", rho.dim())));
    }
    const OFF_X: [(usize, usize, &str); 8] = [
        (0, 1, "eta_12"),
        (0, 2, "eta_13"),
        (1, 3, "eta_24"),
        (2, 3, "eta_34"),
        (1, 0, "eta_21"),
        (2, 0, "eta_31"),
        (3, 1, "eta_42"),
        (3, 2, "eta_43"),
    ];
    for (r, c, name) in OFF_X {
        let magnitude = rho.get(r, c).norm();
        if magnitude > X_SPARSITY_TOL {
            return Err(Error::NotXState { element: name, magnitude });
        }
    }
    Ok(())
}

pub fn is_x_state(rho: &DensityMatrix) -> bool {
    check_x_sparsity(rho).is_ok()
}

/// `|det R|^(1/4)` of the full correlation matrix.
pub fn obesity(rho: &DensityMatrix) -> Result<f64> {
    let f = bloch_decompose(rho)?;
    Ok(f.r_full().determinant().abs().powf(0.25))
}

/// Closed form for X states:
/// `2 |(|eta_23|^2 - |eta_14|^2)(eta_22 eta_33 - eta_11 eta_44)|^(1/4)`.
pub fn obesity_x(rho: &DensityMatrix) -> Result<f64> {
    check_x_sparsity(rho)?;
    let e = |r: usize, c: usize| rho.get(r, c);
    let coherence = e(1, 2).norm_sqr() - e(0, 3).norm_sqr();
    let population = e(1, 1).re * e(2, 2).re - e(0, 0).re * e(3, 3).re;
    Ok(2.0 * (coherence * population).abs().powf(0.25))
}
