//! Bundles of quantifier results for a single state, shared by the sweep
//! engine and the `quantify` report so both produce identical numbers.

use serde::Serialize;

use crate::density::{validate_state, DensityMatrix, ValidationReport};
use crate::error::{Error, Result};
use crate::ghs::{GhsParams, GisinParams, Region};
use crate::quantifiers::{
    discord_numeric, discord_x, is_x_state, obesity, obesity_x, steering_ellipsoid, DiscordBreakdown,
    EllipsoidSummary,
};

pub const DEFAULT_GRID_STEPS: usize = 64;

/// Which quantifiers to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outputs {
    pub obesity: bool,
    pub discord: bool,
    pub discord_numeric: bool,
    pub ellipsoid: bool,
}

impl Outputs {
    pub const ALL: Outputs = Outputs { obesity: true, discord: true, discord_numeric: true, ellipsoid: true };

    pub fn none() -> Self {
        Outputs { obesity: false, discord: false, discord_numeric: false, ellipsoid: false }
    }

    /// Parses a comma-separated list such as `obesity,discord-numeric`.
    pub fn parse_list(list: &str) -> Result<Self> {
        let mut out = Outputs::none();
        for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            out.enable(tok)?;
        }
        if out == Outputs::none() {
            return Err(Error::Argument("no outputs requested".into()));
        }
        Ok(out)
    }

    pub fn enable(&mut self, name: &str) -> Result<()> {
        match name.to_ascii_lowercase().replace('_', "-").as_str() {
            "obesity" => self.obesity = true,
            "discord" => self.discord = true,
            "discord-numeric" => self.discord_numeric = true,
            "ellipsoid" => self.ellipsoid = true,
            "all" => *self = Outputs::ALL,
            other => {
                return Err(Error::Argument(format!(
                    "unknown output {other:?}; expected obesity, discord, discord-numeric or ellipsoid"
                )))
            }
        }
        Ok(())
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.obesity {
            v.push("obesity");
        }
        if self.discord {
            v.push("discord");
        }
        if self.discord_numeric {
            v.push("discord-numeric");
        }
        if self.ellipsoid {
            v.push("ellipsoid");
        }
        v
    }
}

/// Quantifier values for one two-qubit state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quantities {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obesity: Option<f64>,
    /// Closed-form obesity, present for X states.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obesity_x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discord: Option<DiscordBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discord_numeric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ellipsoid: Option<EllipsoidSummary>,
    /// Why the ellipsoid is missing when it was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ellipsoid_error: Option<String>,
}

impl Quantities {
    /// Evaluates the requested quantifiers. A pole in the steering map is
    /// recorded in `ellipsoid_error` rather than failing the whole call.
    /// Non-X states get discord only from the numeric search.
    pub fn compute(rho: &DensityMatrix, outputs: Outputs, grid_steps: usize) -> Result<Self> {
        let x_state = is_x_state(rho);
        let mut q = Quantities {
            obesity: None,
            obesity_x: None,
            discord: None,
            discord_numeric: None,
            ellipsoid: None,
            ellipsoid_error: None,
        };
        if outputs.obesity {
            q.obesity = Some(obesity(rho)?);
            if x_state {
                q.obesity_x = Some(obesity_x(rho)?);
            }
        }
        if outputs.discord && x_state {
            q.discord = Some(discord_x(rho)?);
        }
        if outputs.discord_numeric || (outputs.discord && !x_state) {
            q.discord_numeric = Some(discord_numeric(rho, grid_steps)?);
        }
        if outputs.ellipsoid {
            match steering_ellipsoid(rho) {
                Ok(e) => q.ellipsoid = Some(e.summary()),
                Err(err @ Error::PureMarginalPole { .. }) => q.ellipsoid_error = Some(err.to_string()),
                Err(err) => return Err(err),
            }
        }
        Ok(q)
    }
}

/// Model inputs echoed in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub region: Region,
    pub gisin: GisinParams,
    pub ghs: GhsParams,
    pub charge: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantifyReport {
    pub labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelReport>,
    pub validation: ValidationReport,
    #[serde(flatten)]
    pub quantities: Quantities,
}

impl QuantifyReport {
    /// Validates `rho` and evaluates `outputs`; an invalid state is an error
    /// naming the violated invariant.
    pub fn build(
        rho: &DensityMatrix,
        model: Option<ModelReport>,
        outputs: Outputs,
        grid_steps: usize,
    ) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::Dimension(format!(
                "quantifiers need a two-qubit state, got dimension {}",
                rho.dim()
            )));
        }
        let validation = validate_state(rho);
        if let Some(check) = validation.first_failure() {
            return Err(Error::Domain(format!(
                "invalid state: {} violated by {:e} (tolerance {:e})",
                check.name, check.violation, check.tolerance
            )));
        }
        let quantities = Quantities::compute(rho, outputs, grid_steps)?;
        Ok(QuantifyReport { labels: rho.labels().to_vec(), model, validation, quantities })
    }
}
