//! Parameter sweeps over the GHS model and their CSV form.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Deserialize;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::ghs::{GhsParams, GisinParams, Region};
use crate::numfmt::format_sig;
use crate::report::{ModelReport, Outputs, Quantities, DEFAULT_GRID_STEPS};

/// Significant digits of every CSV number.
pub const CSV_DIGITS: usize = 12;

/// Parses a real number or a multiple of pi: `0.3`, `pi`, `pi/4`,
/// `3pi/8`, `3*pi/8`, `-pi/2`.
pub fn parse_value(text: &str) -> Result<f64> {
    let t = text.trim();
    let bad = || Error::Argument(format!("cannot parse number {text:?}"));
    if !t.to_ascii_lowercase().contains("pi") {
        return t.parse::<f64>().map_err(|_| bad());
    }
    let lower = t.to_ascii_lowercase().replace(' ', "");
    let (num, den) = match lower.split_once('/') {
        Some((n, d)) => (n.to_string(), d.parse::<f64>().map_err(|_| bad())?),
        None => (lower.clone(), 1.0),
    };
    let coef = num.strip_suffix("pi").ok_or_else(bad)?;
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let k = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(k * PI / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SweepParam {
    Dilation,
    G,
    Alpha,
    Omega,
    Mass,
}

impl SweepParam {
    /// CSV column name.
    pub fn column(self) -> &'static str {
        match self {
            SweepParam::Dilation => "dilation",
            SweepParam::G => "g",
            SweepParam::Alpha => "alpha",
            SweepParam::Omega => "omega",
            SweepParam::Mass => "mass",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.trim() {
            "D" | "d" | "dilation" => Ok(SweepParam::Dilation),
            "g" | "G" => Ok(SweepParam::G),
            "alpha" => Ok(SweepParam::Alpha),
            "omega" | "w" => Ok(SweepParam::Omega),
            "M" | "m" | "mass" => Ok(SweepParam::Mass),
            other => Err(Error::Argument(format!("unknown parameter {other:?}"))),
        }
    }
}

/// Everything needed to build one model state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub region: Region,
    pub g: f64,
    pub alpha: f64,
    pub mass: f64,
    pub dilation: f64,
    pub omega: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams { region: Region::AbI, g: 1.0, alpha: FRAC_PI_4, mass: 1.0, dilation: 0.0, omega: 0.5 }
    }
}

impl ModelParams {
    pub fn get(&self, p: SweepParam) -> f64 {
        match p {
            SweepParam::Dilation => self.dilation,
            SweepParam::G => self.g,
            SweepParam::Alpha => self.alpha,
            SweepParam::Omega => self.omega,
            SweepParam::Mass => self.mass,
        }
    }

    pub fn set(&mut self, p: SweepParam, value: f64) {
        match p {
            SweepParam::Dilation => self.dilation = value,
            SweepParam::G => self.g = value,
            SweepParam::Alpha => self.alpha = value,
            SweepParam::Omega => self.omega = value,
            SweepParam::Mass => self.mass = value,
        }
    }

    pub fn build(&self) -> Result<(GisinParams, GhsParams, DensityMatrix)> {
        let p = GisinParams::new(self.g, self.alpha)?;
        let q = GhsParams::new(self.mass, self.dilation, self.omega)?;
        let rho = self.region.reduced_state(&p, &q);
        Ok((p, q, rho))
    }

    pub fn model_report(&self) -> Result<ModelReport> {
        let (gisin, ghs, _) = self.build()?;
        Ok(ModelReport { region: self.region, gisin, ghs, charge: ghs.charge() })
    }
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub region: Region,
    /// Explicitly fixed parameters; the rest take [`ModelParams::default`].
    pub fixed: BTreeMap<SweepParam, f64>,
    pub sweep_param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub outputs: Outputs,
    pub grid_steps: usize,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Domain(format!("steps must be at least 2, got {}", self.steps)));
        }
        if !(self.from < self.to) {
            return Err(Error::Domain(format!(
                "sweep range must satisfy from < to, got {} .. {}",
                self.from, self.to
            )));
        }
        if self.fixed.contains_key(&self.sweep_param) {
            return Err(Error::Domain(format!(
                "{} is swept and cannot also be fixed",
                self.sweep_param.column()
            )));
        }
        for x in [self.from, self.to] {
            self.params_at(x).build()?;
        }
        Ok(())
    }

    pub fn base_params(&self) -> ModelParams {
        let mut m = ModelParams { region: self.region, ..ModelParams::default() };
        for (&k, &v) in &self.fixed {
            m.set(k, v);
        }
        m
    }

    pub fn params_at(&self, value: f64) -> ModelParams {
        let mut m = self.base_params();
        m.set(self.sweep_param, value);
        m
    }

    /// Swept values in ascending order, with exact endpoints.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.to
                } else {
                    self.from + (self.to - self.from) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub ghs: GhsParams,
    pub quantities: Quantities,
}

/// Evaluates every row; rows may run in parallel but come back in order.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.values()
        .into_par_iter()
        .map(|value| {
            let (_, ghs, rho) = spec.params_at(value).build()?;
            let quantities = Quantities::compute(&rho, spec.outputs, spec.grid_steps)?;
            Ok(SweepRow { value, ghs, quantities })
        })
        .collect()
}

pub fn csv_header(spec: &SweepSpec) -> Vec<&'static str> {
    let mut cols = vec![spec.sweep_param.column(), "eps1", "eps2", "temperature"];
    let o = spec.outputs;
    if o.obesity {
        cols.push("obesity");
    }
    if o.discord {
        cols.extend(["discord", "o1", "o2"]);
    }
    if o.discord_numeric {
        cols.push("discord_numeric");
    }
    if o.ellipsoid {
        cols.extend([
            "center_x",
            "center_y",
            "center_z",
            "semi_axis_1",
            "semi_axis_2",
            "semi_axis_3",
            "volume",
        ]);
    }
    cols
}

/// CSV text: `#` metadata lines, a header, then one line per row.
/// Ellipsoid columns are `nan` where the steering map has a pole.
pub fn write_csv(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let f = |x: f64| format_sig(x, CSV_DIGITS);
    let base = spec.base_params();
    let mut out = String::new();
    let _ = writeln!(out, "# qcorr sweep");
    let _ = writeln!(out, "# region: {}", spec.region);
    let fixed: Vec<String> = [SweepParam::G, SweepParam::Alpha, SweepParam::Mass, SweepParam::Dilation, SweepParam::Omega]
        .into_iter()
        .filter(|&p| p != spec.sweep_param)
        .map(|p| format!("{}={}", p.column(), f(base.get(p))))
        .collect();
    let _ = writeln!(out, "# fixed: {}", fixed.join(" "));
    let _ = writeln!(
        out,
        "# sweep: {} from {} to {} in {} steps",
        spec.sweep_param.column(),
        f(spec.from),
        f(spec.to),
        spec.steps
    );
    let _ = writeln!(out, "{}", csv_header(spec).join(","));

    let o = spec.outputs;
    for row in rows {
        let q = &row.quantities;
        let mut cells = vec![f(row.value), f(row.ghs.eps1), f(row.ghs.eps2), f(row.ghs.temperature)];
        if o.obesity {
            cells.push(f(q.obesity.unwrap_or(f64::NAN)));
        }
        if o.discord {
            match &q.discord {
                Some(d) => cells.extend([f(d.discord), f(d.o1), f(d.o2)]),
                None => cells.extend([f(q.discord_numeric.unwrap_or(f64::NAN)), f(f64::NAN), f(f64::NAN)]),
            }
        }
        if o.discord_numeric {
            cells.push(f(q.discord_numeric.unwrap_or(f64::NAN)));
        }
        if o.ellipsoid {
            match &q.ellipsoid {
                Some(e) => {
                    cells.extend(e.center.map(f));
                    cells.extend(e.semi_axes.map(f));
                    cells.push(f(e.volume));
                }
                None => cells.extend(std::iter::repeat_n(f(f64::NAN), 7)),
            }
        }
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// A number given either as JSON number or as an expression like `"pi/4"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ValueExpr {
    Number(f64),
    Text(String),
}

impl ValueExpr {
    pub fn resolve(&self) -> Result<f64> {
        match self {
            ValueExpr::Number(x) => Ok(*x),
            ValueExpr::Text(s) => parse_value(s),
        }
    }
}

/// Sweep description as read from a JSON config file; every field is
/// optional so command-line flags can fill or override it.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub region: Option<Region>,
    #[serde(default)]
    pub fixed: BTreeMap<String, ValueExpr>,
    pub sweep_param: Option<String>,
    pub from: Option<ValueExpr>,
    pub to: Option<ValueExpr>,
    pub steps: Option<usize>,
    pub outputs: Option<Vec<String>>,
    pub grid_steps: Option<usize>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Resolves to a validated spec; missing range defaults to `D` over
    /// `[0, 0.99]` in 100 steps with obesity and discord outputs.
    pub fn into_spec(self) -> Result<SweepSpec> {
        let mut fixed = BTreeMap::new();
        for (k, v) in &self.fixed {
            fixed.insert(SweepParam::parse(k)?, v.resolve()?);
        }
        let outputs = match &self.outputs {
            Some(list) => Outputs::parse_list(&list.join(","))?,
            None => Outputs { obesity: true, discord: true, discord_numeric: false, ellipsoid: false },
        };
        let spec = SweepSpec {
            region: self.region.unwrap_or(Region::AbI),
            fixed,
            sweep_param: SweepParam::parse(self.sweep_param.as_deref().unwrap_or("D"))?,
            from: self.from.as_ref().map(ValueExpr::resolve).transpose()?.unwrap_or(0.0),
            to: self.to.as_ref().map(ValueExpr::resolve).transpose()?.unwrap_or(0.99),
            steps: self.steps.unwrap_or(100),
            outputs,
            grid_steps: self.grid_steps.unwrap_or(DEFAULT_GRID_STEPS),
        };
        spec.validate()?;
        Ok(spec)
    }
}
