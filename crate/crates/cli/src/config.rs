//! Run configuration shared by all subcommands.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use compospline::{Domain, KnotConfig, SmoothingParams};
use serde::Deserialize;

/// Where smoothing weights come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightsPolicy {
    /// Use the `weight` column of the input table.
    #[default]
    FromInput,
    /// Ignore the input column and weight every observation equally.
    Ones,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Support `[a, b]` of the densities.
    pub domain: [f64; 2],
    /// Interior knots, strictly increasing inside the domain.
    #[serde(default)]
    pub knots: Vec<f64>,
    /// Spline degree `k`.
    pub degree: usize,
    /// Penalty derivative order `l`; required by `smooth` and `sfpca`.
    #[serde(default)]
    pub penalty_order: Option<usize>,
    /// Fit/smoothness trade-off in (0, 1); required by `smooth` and `sfpca`.
    #[serde(default)]
    pub alpha: Option<f64>,
    /// Equispaced output samples per curve, boundaries included.
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default)]
    pub weights: WeightsPolicy,
}

fn default_grid_points() -> usize {
    512
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("parsing config {}", path.display()))?;
        if config.grid_points < 2 {
            bail!("config: grid_points must be at least 2");
        }
        Ok(config)
    }

    pub fn domain(&self) -> Result<Domain> {
        Ok(Domain::new(self.domain[0], self.domain[1])?)
    }

    pub fn knot_config(&self) -> Result<KnotConfig> {
        Ok(KnotConfig::new(self.degree, self.knots.clone(), self.domain()?)
            .context("invalid knot configuration")?)
    }

    pub fn smoothing_params(&self) -> Result<SmoothingParams> {
        let order = self
            .penalty_order
            .context("config: `penalty_order` is required for smoothing")?;
        let alpha = self
            .alpha
            .context("config: `alpha` is required for smoothing")?;
        Ok(SmoothingParams::new(order, alpha)?)
    }

    /// Equispaced abscissas over the domain, endpoint clamped so the last
    /// sample is exactly the upper bound.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let domain = self.domain()?;
        let n = self.grid_points;
        let length = domain.length();
        Ok((0..n)
            .map(|i| {
                (domain.lower() + length * i as f64 / (n - 1) as f64).min(domain.upper())
            })
            .collect())
    }
}
