//! `smooth`: fit one zero-integral spline per group and emit the spline
//! records plus clr/density curves sampled on the output grid.

use std::path::Path;

use anyhow::{Context, Result};
use compospline::bayes::CompositionalSpline;
use compospline::ingest::tables;
use compospline::smoothing::{fit_smoothing_spline, ClrSample};
use compospline::zbspline::{SplineRecord, ZBSplineFn};
use serde::Serialize;

use crate::config::{RunConfig, WeightsPolicy};

pub struct FittedGroup {
    pub id: String,
    pub spline: ZBSplineFn,
}

#[derive(Serialize)]
struct GroupSplineRecord {
    group_id: String,
    #[serde(flatten)]
    spline: SplineRecord,
}

/// Reads the clr table and fits every group with the configured knots and
/// smoothing parameters; errors name the failing group.
pub fn fit_groups(config: &RunConfig, input: &Path) -> Result<Vec<FittedGroup>> {
    let records = tables::read_clr(input)?;
    let groups = tables::group_clr_samples(&records)?;
    let knots = config.knot_config()?;
    let params = config.smoothing_params()?;
    groups
        .into_iter()
        .map(|(id, sample)| {
            let sample = match config.weights {
                WeightsPolicy::FromInput => sample,
                WeightsPolicy::Ones => ClrSample::with_unit_weights(
                    sample.abscissas().to_vec(),
                    sample.values().iter().copied().collect(),
                )?,
            };
            let spline = fit_smoothing_spline(&sample, &knots, &params)
                .with_context(|| format!("group '{id}'"))?;
            Ok(FittedGroup { id, spline })
        })
        .collect()
}

#[derive(Serialize)]
struct GridRow<'a> {
    group_id: &'a str,
    x: f64,
    clr_value: f64,
    density_value: f64,
}

pub fn run(config: &RunConfig, input: &Path, out_dir: &Path) -> Result<()> {
    super::create_out_dir(out_dir)?;
    let fits = fit_groups(config, input)?;
    let grid = config.grid()?;

    let records: Vec<GroupSplineRecord> = fits
        .iter()
        .map(|group| GroupSplineRecord {
            group_id: group.id.clone(),
            spline: SplineRecord::from_spline(&group.spline),
        })
        .collect();
    super::write_json(&out_dir.join("splines.json"), &records)?;

    let mut writer = super::csv_writer(&out_dir.join("grid.csv"))?;
    for group in &fits {
        let density = CompositionalSpline::from_clr(group.spline.clone());
        for &x in &grid {
            writer.serialize(GridRow {
                group_id: &group.id,
                x,
                clr_value: group.spline.eval(x)?,
                density_value: density.density(x)?,
            })?;
        }
    }
    writer.flush()?;
    Ok(())
}
