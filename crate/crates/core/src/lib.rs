//! Quantum obesity, discord and steering ellipsoids of two-qubit states,
//! and the Gisin-state model of a detector hovering near a
//! Garfinkle-Horowitz-Strominger dilaton black hole.
//!
//! ```
//! use qcorr_core::{ghs_params, reduce_ab1, obesity, GisinParams};
//!
//! let gisin = GisinParams::new(1.0, std::f64::consts::FRAC_PI_4).unwrap();
//! let horizon = ghs_params(1.0, 1.0, 0.5).unwrap();
//! let rho = reduce_ab1(&gisin, &horizon);
//! assert!((obesity(&rho).unwrap() - 0.5f64.sqrt()).abs() < 1e-9);
//! ```

pub mod density;
pub mod error;
pub mod ghs;
pub mod numfmt;
pub mod quantifiers;
pub mod random;
pub mod report;
pub mod sweep;

pub use density::{
    bloch_decompose, fano_compose, partial_trace, validate_state, von_neumann_entropy, DensityMatrix,
    FanoForm, InvariantCheck, ValidationReport,
};
pub use error::{Error, Result};
pub use ghs::{
    evolve_tripartite, ghs_params, gisin_state, reduce_ab1, reduce_ab2, reduce_b1b2, GhsParams,
    GisinParams, Region,
};
pub use quantifiers::{
    discord_numeric, discord_x, ellipsoid_mesh, obesity, obesity_x, steering_ellipsoid, DiscordBreakdown,
    SteeringEllipsoid, TriangleMesh,
};
pub use report::{Outputs, Quantities, QuantifyReport, DEFAULT_GRID_STEPS};
pub use sweep::{run_sweep, write_csv, ModelParams, SweepConfig, SweepParam, SweepRow, SweepSpec};
