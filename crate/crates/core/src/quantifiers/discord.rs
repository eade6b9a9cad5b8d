//! Quantum discord with the measurement on the second qubit.
//!
//! [`discord_x`] is the two-branch closed form for X states: `O_1` is the
//! σ_z measurement and `O_2` the best transverse one. [`discord_numeric`]
//! minimises the post-measurement conditional entropy over all projective
//! measurements on a grid and is used to cross-check the closed form.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Matrix2;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::density::{partial_trace, von_neumann_entropy, xlog2x, DensityMatrix};
use crate::error::{Error, Result};

use super::obesity::check_x_sparsity;

/// Marginal entropy used in `O_k = S(marginal) - S(AB) - H_k`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MarginalConvention {
    /// `S(eta_B)`, the measured qubit.
    #[default]
    MeasuredB,
    /// `S(eta_A)`; exploratory only.
    UnmeasuredA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscordBreakdown {
    /// Entropy of the marginal selected by the convention (`S(eta_B)` by default).
    pub s_b: f64,
    pub s_ab: f64,
    pub h1: f64,
    pub h2: f64,
    pub o1: f64,
    pub o2: f64,
    pub discord: f64,
    pub iota: f64,
    pub beta: f64,
    pub eps_pop: f64,
    pub tau: f64,
    pub varsigma: f64,
}

/// `weight * sum p log2 p` over `p = (1 +- bias) / 2`. A zero weight
/// contributes nothing even when `bias` is undefined.
fn weighted_binary(weight: f64, bias: f64) -> f64 {
    if weight <= 0.0 {
        return 0.0;
    }
    weight * (xlog2x((1.0 - bias) / 2.0) + xlog2x((1.0 + bias) / 2.0))
}

fn population_bias(a: f64, b: f64) -> f64 {
    let total = a + b;
    if total <= 0.0 {
        0.0
    } else {
        ((a - b).abs() / total).min(1.0)
    }
}

pub fn discord_x(rho: &DensityMatrix) -> Result<DiscordBreakdown> {
    discord_x_with(rho, MarginalConvention::MeasuredB)
}

pub fn discord_x_with(rho: &DensityMatrix, convention: MarginalConvention) -> Result<DiscordBreakdown> {
    check_x_sparsity(rho)?;
    let d = |i: usize| rho.get(i, i).re;
    let (e11, e22, e33, e44) = (d(0), d(1), d(2), d(3));
    let e14 = rho.get(0, 3).norm();
    let e23 = rho.get(1, 2).norm();

    let iota = e11 + e33;
    let eps_pop = e22 + e44;
    let beta = population_bias(e11, e33);
    let tau = population_bias(e22, e44);
    let varsigma = ((e11 + e22 - e33 - e44).powi(2) + 4.0 * (e14 + e23).powi(2)).sqrt();

    let h1 = weighted_binary(iota, beta) + weighted_binary(eps_pop, tau);
    let h2 = weighted_binary(1.0, varsigma.min(1.0));

    let keep = match convention {
        MarginalConvention::MeasuredB => 1,
        MarginalConvention::UnmeasuredA => 0,
    };
    let s_b = von_neumann_entropy(&partial_trace(rho, &[keep])?)?;
    let s_ab = von_neumann_entropy(rho)?;
    let o1 = s_b - s_ab - h1;
    let o2 = s_b - s_ab - h2;
    Ok(DiscordBreakdown {
        s_b,
        s_ab,
        h1,
        h2,
        o1,
        o2,
        discord: o1.min(o2),
        iota,
        beta,
        eps_pop,
        tau,
        varsigma,
    })
}

pub const MIN_GRID_STEPS: usize = 32;

/// Result of the grid minimisation, with the optimal measurement axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericDiscord {
    pub discord: f64,
    /// `sum_k p_k S(rho_A|k)` at the optimum.
    pub conditional_entropy: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Projector `(1 + sign n.sigma) / 2`.
fn projector(theta: f64, phi: f64, sign: f64) -> Matrix2<Complex64> {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (nx, ny, nz) = (st * cp, st * sp, ct);
    let h = 0.5 * sign;
    Matrix2::new(
        Complex64::new(0.5 + h * nz, 0.0),
        Complex64::new(h * nx, -h * ny),
        Complex64::new(h * nx, h * ny),
        Complex64::new(0.5 - h * nz, 0.0),
    )
}

/// `p S(rho_A|outcome)` for one projector on the second qubit, computed
/// as `-sum mu log2(mu / p)` over the eigenvalues `mu` of the unnormalised
/// conditional state.
fn branch_entropy(rho: &DensityMatrix, proj: &Matrix2<Complex64>) -> f64 {
    // M_{a a'} = sum_{b, b''} rho_{(a b), (a' b'')} P_{b'' b}
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (a, row) in m.iter_mut().enumerate() {
        for (ap, slot) in row.iter_mut().enumerate() {
            for b in 0..2 {
                for bpp in 0..2 {
                    *slot += rho.get(2 * a + b, 2 * ap + bpp) * proj[(bpp, b)];
                }
            }
        }
    }
    let (x, y, off) = (m[0][0].re, m[1][1].re, m[0][1]);
    let p = x + y;
    if p <= 0.0 {
        return 0.0;
    }
    let disc = ((x - y).powi(2) + 4.0 * off.norm_sqr()).sqrt();
    [(p + disc) / 2.0, (p - disc) / 2.0]
        .into_iter()
        .filter(|&mu| mu > 0.0)
        .map(|mu| -mu * (mu / p).log2())
        .sum()
}

fn conditional_entropy(rho: &DensityMatrix, theta: f64, phi: f64) -> f64 {
    branch_entropy(rho, &projector(theta, phi, 1.0)) + branch_entropy(rho, &projector(theta, phi, -1.0))
}

/// Minimum over a `steps x steps` grid; ties resolve to the lowest index so
/// the answer does not depend on the thread schedule.
fn grid_min(rho: &DensityMatrix, thetas: &[f64], phis: &[f64]) -> (f64, f64, f64) {
    let rows: Vec<(f64, usize)> = thetas
        .par_iter()
        .map(|&t| {
            let mut best = (f64::INFINITY, 0);
            for (j, &p) in phis.iter().enumerate() {
                let val = conditional_entropy(rho, t, p);
                if val < best.0 {
                    best = (val, j);
                }
            }
            best
        })
        .collect();
    let mut best = (f64::INFINITY, 0, 0);
    for (i, &(val, j)) in rows.iter().enumerate() {
        if val < best.0 {
            best = (val, i, j);
        }
    }
    (best.0, thetas[best.1], phis[best.2])
}

/// Discord by brute-force search over projective measurements on qubit B.
pub fn discord_numeric(rho: &DensityMatrix, grid_steps: usize) -> Result<f64> {
    discord_numeric_detail(rho, grid_steps).map(|r| r.discord)
}

/// Grid over `theta in [0, pi/2]` (inclusive) and `phi in [0, 2 pi)`, then
/// one pass on a grid ten times narrower around the best point.
pub fn discord_numeric_detail(rho: &DensityMatrix, grid_steps: usize) -> Result<NumericDiscord> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!("expected a two-qubit state, got dimension {}", rho.dim())));
    }
    if grid_steps < MIN_GRID_STEPS {
        return Err(Error::Argument(format!(
            "grid_steps must be at least {MIN_GRID_STEPS}, got {grid_steps}"
        )));
    }
    let n = grid_steps;
    let theta_span = FRAC_PI_2;
    let phi_span = 2.0 * PI;
    let thetas: Vec<f64> = (0..n).map(|i| theta_span * i as f64 / (n - 1) as f64).collect();
    let phis: Vec<f64> = (0..n).map(|j| phi_span * j as f64 / n as f64).collect();
    let (coarse, t0, p0) = grid_min(rho, &thetas, &phis);

    let (tw, pw) = (theta_span / 10.0, phi_span / 10.0);
    let fine_thetas: Vec<f64> = (0..n).map(|i| t0 - tw / 2.0 + tw * i as f64 / (n - 1) as f64).collect();
    let fine_phis: Vec<f64> = (0..n).map(|j| p0 - pw / 2.0 + pw * j as f64 / (n - 1) as f64).collect();
    let (fine, t1, p1) = grid_min(rho, &fine_thetas, &fine_phis);
    let (cond, theta, phi) = if fine < coarse { (fine, t1, p1) } else { (coarse, t0, p0) };

    let s_b = von_neumann_entropy(&partial_trace(rho, &[1])?)?;
    let s_ab = von_neumann_entropy(rho)?;
    Ok(NumericDiscord { discord: s_b - s_ab + cond, conditional_entropy: cond, theta, phi })
}
