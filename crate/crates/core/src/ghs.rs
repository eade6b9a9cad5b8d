//! Gisin states shared between an inertial observer and one hovering near
//! the horizon of a Garfinkle-Horowitz-Strominger dilaton black hole.
//!
//! Bob's Minkowski mode splits into an exterior (`B_I`) and interior
//! (`B_II`) mode. The Kruskal vacuum maps to
//! `eps1 |0>_I |0>_II + eps2 |1>_I |1>_II` and the one-particle state to
//! `|1>_I |0>_II`, which is all the field theory the constructions below
//! need.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};

/// Black-hole and field parameters together with the derived Bogoliubov
/// amplitudes and Hawking temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GhsParams {
    pub mass: f64,
    pub dilation: f64,
    pub omega: f64,
    /// `mass - dilation`
    pub lambda: f64,
    pub eps1: f64,
    pub eps2: f64,
    /// `1 / (8 pi lambda)`; `f64::INFINITY` when `lambda == 0`.
    pub temperature: f64,
}

impl GhsParams {
    pub fn new(mass: f64, dilation: f64, omega: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        if !(dilation.is_finite() && (0.0..=mass).contains(&dilation)) {
            return Err(Error::Domain(format!(
                "dilation must lie in [0, mass = {mass}], got {dilation}"
            )));
        }
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Domain(format!("omega must be positive, got {omega}")));
        }
        let lambda = mass - dilation;
        let x = 8.0 * lambda * PI * omega;
        let eps1 = (1.0 + (-x).exp()).powf(-0.5);
        let eps2 = (1.0 + x.exp()).powf(-0.5);
        let temperature = if lambda == 0.0 {
            f64::INFINITY
        } else {
            1.0 / (8.0 * PI * lambda)
        };
        Ok(Self { mass, dilation, omega, lambda, eps1, eps2, temperature })
    }

    /// Black-hole charge recovered from `D = Q^2 / 2M`.
    pub fn charge(&self) -> f64 {
        (2.0 * self.mass * self.dilation).sqrt()
    }
}

pub fn ghs_params(mass: f64, dilation: f64, omega: f64) -> Result<GhsParams> {
    GhsParams::new(mass, dilation, omega)
}

/// Mixing weight `g` and Bell angle `alpha` of
/// `g |xi><xi| + (1-g)/2 (|00><00| + |11><11|)`,
/// `|xi> = sin(alpha)|01> + cos(alpha)|10>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GisinParams {
    pub g: f64,
    pub alpha: f64,
}

impl GisinParams {
    pub fn new(g: f64, alpha: f64) -> Result<Self> {
        if !(g.is_finite() && (0.0..=1.0).contains(&g)) {
            return Err(Error::Domain(format!("g must lie in [0, 1], got {g}")));
        }
        if !(alpha.is_finite() && (0.0..=FRAC_PI_2).contains(&alpha)) {
            return Err(Error::Domain(format!("alpha must lie in [0, pi/2], got {alpha}")));
        }
        Ok(Self { g, alpha })
    }

    fn weights(&self) -> Weights {
        let (s, c) = self.alpha.sin_cos();
        Weights {
            mixed: (1.0 - self.g) / 2.0,
            cos2: self.g * c * c,
            sin2: self.g * s * s,
            cross: self.g * s * c,
        }
    }
}

struct Weights {
    mixed: f64,
    cos2: f64,
    sin2: f64,
    cross: f64,
}

/// Which pair of modes survives the partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Alice with Bob's exterior mode (physically accessible).
    #[serde(rename = "AB_I", alias = "ab1", alias = "AB1")]
    AbI,
    /// Alice with Bob's interior mode.
    #[serde(rename = "AB_II", alias = "ab2", alias = "AB2")]
    AbII,
    /// Bob's exterior and interior modes.
    #[serde(rename = "B_I_B_II", alias = "b1b2", alias = "B1B2")]
    BIBII,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::AbI, Region::AbII, Region::BIBII];

    /// Qubits of the tripartite state kept by this region.
    pub fn keep(self) -> [usize; 2] {
        match self {
            Region::AbI => [0, 1],
            Region::AbII => [0, 2],
            Region::BIBII => [1, 2],
        }
    }

    pub fn labels(self) -> [&'static str; 2] {
        match self {
            Region::AbI => ["A", "B_I"],
            Region::AbII => ["A", "B_II"],
            Region::BIBII => ["B_I", "B_II"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::AbI => "AB_I",
            Region::AbII => "AB_II",
            Region::BIBII => "B_I_B_II",
        }
    }

    /// Closed-form reduced state for this region.
    pub fn reduced_state(self, p: &GisinParams, q: &GhsParams) -> DensityMatrix {
        match self {
            Region::AbI => reduce_ab1(p, q),
            Region::AbII => reduce_ab2(p, q),
            Region::BIBII => reduce_b1b2(p, q),
        }
    }
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Region {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "AB_I" | "AB1" => Ok(Region::AbI),
            "AB_II" | "AB2" => Ok(Region::AbII),
            "B_I_B_II" | "B1B2" | "BIBII" => Ok(Region::BIBII),
            _ => Err(Error::Argument(format!(
                "unknown region {s:?}; expected AB_I, AB_II or B_I_B_II"
            ))),
        }
    }
}

fn real_matrix(dim: usize, entries: &[(usize, usize, f64)], labels: &[&str]) -> DensityMatrix {
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for &(r, c, x) in entries {
        m[(r, c)] += Complex64::new(x, 0.0);
    }
    DensityMatrix::new(m, labels.iter().map(|s| s.to_string()).collect())
        .expect("dimension matches labels")
}

pub fn gisin_state(p: &GisinParams) -> DensityMatrix {
    let w = p.weights();
    real_matrix(
        4,
        &[
            (0, 0, w.mixed),
            (1, 1, w.sin2),
            (2, 2, w.cos2),
            (1, 2, w.cross),
            (2, 1, w.cross),
            (3, 3, w.mixed),
        ],
        &["A", "B"],
    )
}

/// The Gisin state after Bob's mode is expanded over both sides of the
/// horizon, on qubits `["A", "B_I", "B_II"]`.
pub fn evolve_tripartite(p: &GisinParams, q: &GhsParams) -> DensityMatrix {
    let w = p.weights();
    let (e1, e2) = (q.eps1, q.eps2);
    // |a b_I b_II> has index 4a + 2b_I + b_II
    const S000: usize = 0b000;
    const S011: usize = 0b011;
    const S010: usize = 0b010;
    const S100: usize = 0b100;
    const S110: usize = 0b110;
    const S111: usize = 0b111;
    real_matrix(
        8,
        &[
            // (1-g)/2 (|00><00| + |11><11|)
            (S000, S000, w.mixed * e1 * e1),
            (S000, S011, w.mixed * e1 * e2),
            (S011, S000, w.mixed * e1 * e2),
            (S011, S011, w.mixed * e2 * e2),
            (S110, S110, w.mixed),
            // g cos^2(alpha) |10><10|
            (S100, S100, w.cos2 * e1 * e1),
            (S100, S111, w.cos2 * e1 * e2),
            (S111, S100, w.cos2 * e1 * e2),
            (S111, S111, w.cos2 * e2 * e2),
            // g sin^2(alpha) |01><01|
            (S010, S010, w.sin2),
            // coherences of |xi>
            (S010, S100, w.cross * e1),
            (S100, S010, w.cross * e1),
            (S010, S111, w.cross * e2),
            (S111, S010, w.cross * e2),
        ],
        &["A", "B_I", "B_II"],
    )
}

/// Alice and Bob's exterior mode.
pub fn reduce_ab1(p: &GisinParams, q: &GhsParams) -> DensityMatrix {
    let w = p.weights();
    let (e1, e2) = (q.eps1, q.eps2);
    real_matrix(
        4,
        &[
            (0, 0, w.mixed * e1 * e1),
            (1, 1, w.mixed * e2 * e2 + w.sin2),
            (2, 2, w.cos2 * e1 * e1),
            (3, 3, w.mixed + w.cos2 * e2 * e2),
            (1, 2, w.cross * e1),
            (2, 1, w.cross * e1),
        ],
        &Region::AbI.labels(),
    )
}

/// Alice and Bob's interior mode.
pub fn reduce_ab2(p: &GisinParams, q: &GhsParams) -> DensityMatrix {
    let w = p.weights();
    let (e1, e2) = (q.eps1, q.eps2);
    real_matrix(
        4,
        &[
            (0, 0, w.mixed * e1 * e1 + w.sin2),
            (1, 1, w.mixed * e2 * e2),
            (2, 2, w.mixed + w.cos2 * e1 * e1),
            (3, 3, w.cos2 * e2 * e2),
            (0, 3, w.cross * e2),
            (3, 0, w.cross * e2),
        ],
        &Region::AbII.labels(),
    )
}

/// Bob's exterior and interior modes.
pub fn reduce_b1b2(p: &GisinParams, q: &GhsParams) -> DensityMatrix {
    let w = p.weights();
    let (e1, e2) = (q.eps1, q.eps2);
    let a_plus = w.mixed + w.cos2;
    let a_minus = w.mixed + w.sin2;
    real_matrix(
        4,
        &[
            (0, 0, a_plus * e1 * e1),
            (0, 3, a_plus * e1 * e2),
            (3, 0, a_plus * e1 * e2),
            (2, 2, a_minus),
            (3, 3, a_plus * e2 * e2),
        ],
        &Region::BIBII.labels(),
    )
}
