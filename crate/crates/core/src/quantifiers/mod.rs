//! Correlation quantifiers for two-qubit states.

mod discord;
mod ellipsoid;
mod mesh;
mod obesity;

pub use discord::{
    discord_numeric, discord_numeric_detail, discord_x, discord_x_with, DiscordBreakdown,
    MarginalConvention, NumericDiscord, MIN_GRID_STEPS,
};
pub use ellipsoid::{steering_ellipsoid, EllipsoidSummary, SteeringEllipsoid, POLE_MARGIN};
pub use mesh::{ellipsoid_mesh, TriangleMesh};
pub use obesity::{check_x_sparsity, is_x_state, obesity, obesity_x, X_SPARSITY_TOL};
