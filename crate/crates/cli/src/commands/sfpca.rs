//! `sfpca`: fit all groups, run simplicial functional PCA, and emit the
//! model, scores, scree, and mean-perturbation curves.

use std::path::Path;

use anyhow::{bail, Result};
use compospline::bayes::CompositionalSpline;
use compospline::sfpca::SfpcaModel;
use serde::Serialize;

use crate::config::RunConfig;

/// Factor applied to the component standard deviation for the
/// mean-perturbation curves.
const PERTURBATION_FACTOR: f64 = 2.0;

#[derive(Serialize)]
struct ModelJson {
    group_ids: Vec<String>,
    domain: [f64; 2],
    degree: usize,
    interior_knots: Vec<f64>,
    mean_zb_coefficients: Vec<f64>,
    eigenvalues: Vec<f64>,
    /// Empty when the spectrum is all zero; see `degenerate`.
    explained_fractions: Vec<f64>,
    /// True when every eigenvalue is zero (all groups identical).
    degenerate: bool,
    /// Row `kappa` holds the ZB coefficients of component `kappa`.
    component_zb_coefficients: Vec<Vec<f64>>,
    /// Row `i` holds the scores of group `i` across components.
    scores: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct ScreeRow {
    component: usize,
    fraction: f64,
    cumulative: f64,
}

#[derive(Serialize)]
struct PerturbationRow<'a> {
    component: usize,
    curve: &'a str,
    x: f64,
    clr_value: f64,
    density_value: f64,
}

pub fn run(config: &RunConfig, input: &Path, out_dir: &Path) -> Result<()> {
    super::create_out_dir(out_dir)?;
    let fits = super::smooth::fit_groups(config, input)?;
    if fits.len() < 2 {
        bail!("sfpca needs at least 2 groups, found {}", fits.len());
    }
    let group_ids: Vec<String> = fits.iter().map(|g| g.id.clone()).collect();
    let densities: Vec<CompositionalSpline> = fits
        .iter()
        .map(|g| CompositionalSpline::from_clr(g.spline.clone()))
        .collect();
    let model = SfpcaModel::fit(&densities)?;
    let dim = model.num_components();
    let fractions = model.explained_variance();
    let degenerate = fractions.is_empty();

    let knots = model.knots();
    let model_json = ModelJson {
        group_ids: group_ids.clone(),
        domain: [knots.domain().lower(), knots.domain().upper()],
        degree: knots.degree(),
        interior_knots: knots.interior().to_vec(),
        mean_zb_coefficients: model.mean_coefficients().iter().copied().collect(),
        eigenvalues: model.eigenvalues().to_vec(),
        explained_fractions: fractions.clone(),
        degenerate,
        component_zb_coefficients: (0..dim)
            .map(|kappa| {
                let component = model.component(kappa)?;
                Ok(component.coefficients().iter().copied().collect())
            })
            .collect::<Result<_>>()?,
        scores: (0..group_ids.len())
            .map(|i| model.scores().row(i).iter().copied().collect())
            .collect(),
    };
    super::write_json(&out_dir.join("model.json"), &model_json)?;

    let mut writer = super::csv_writer(&out_dir.join("scores.csv"))?;
    let mut header = vec!["group_id".to_string()];
    header.extend((1..=dim).map(|kappa| format!("pc{kappa}")));
    writer.write_record(&header)?;
    for (i, id) in group_ids.iter().enumerate() {
        let mut row = vec![id.clone()];
        row.extend((0..dim).map(|kappa| model.scores()[(i, kappa)].to_string()));
        writer.write_record(&row)?;
    }
    writer.flush()?;

    let mut writer = super::csv_writer(&out_dir.join("scree.csv"))?;
    let mut cumulative = 0.0;
    for (kappa, fraction) in fractions.iter().enumerate() {
        cumulative += fraction;
        writer.serialize(ScreeRow {
            component: kappa + 1,
            fraction: *fraction,
            cumulative,
        })?;
    }
    writer.flush()?;

    let grid = config.grid()?;
    let mut writer = super::csv_writer(&out_dir.join("perturbation.csv"))?;
    let mean = model.mean_density();
    let mean_clr = mean.clr_spline().clone();
    for kappa in 0..dim.min(2) {
        let (plus, minus) = model.perturb_mean(kappa, PERTURBATION_FACTOR)?;
        for (curve, density) in [("mean", &mean), ("plus", &plus), ("minus", &minus)] {
            for &x in &grid {
                writer.serialize(PerturbationRow {
                    component: kappa + 1,
                    curve,
                    x,
                    clr_value: if curve == "mean" {
                        mean_clr.eval(x)?
                    } else {
                        density.clr_spline().eval(x)?
                    },
                    density_value: density.density(x)?,
                })?;
            }
        }
    }
    writer.flush()?;
    Ok(())
}
