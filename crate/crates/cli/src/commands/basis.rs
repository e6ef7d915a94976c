//! `basis`: sample the zero-integral, orthonormal, and compositional basis
//! functions on the output grid, one long-format CSV for plotting.

use std::path::Path;

use anyhow::Result;
use compospline::bayes::CbBasis;
use compospline::ortho::OrthoBasis;
use compospline::zbspline::eval_zb_basis;
use serde::Serialize;

use crate::config::RunConfig;

#[derive(Serialize)]
struct BasisRow<'a> {
    basis_kind: &'a str,
    index: usize,
    x: f64,
    value: f64,
}

pub fn run(config: &RunConfig, out_dir: &Path) -> Result<()> {
    super::create_out_dir(out_dir)?;
    let knots = config.knot_config()?;
    let grid = config.grid()?;
    let ortho = OrthoBasis::new(&knots)?;
    let cb = CbBasis::new(&knots);
    let dim = knots.dim_zero_integral();

    let mut writer = super::csv_writer(&out_dir.join("basis.csv"))?;
    for &x in &grid {
        let zb = eval_zb_basis(&knots, x)?;
        let ortho_values = ortho.eval(x)?;
        let cb_values = cb.eval(x)?;
        for index in 0..dim {
            writer.serialize(BasisRow {
                basis_kind: "zb",
                index,
                x,
                value: zb[index],
            })?;
        }
        for index in 0..dim {
            writer.serialize(BasisRow {
                basis_kind: "ortho",
                index,
                x,
                value: ortho_values[index],
            })?;
        }
        for index in 0..dim {
            writer.serialize(BasisRow {
                basis_kind: "cb",
                index,
                x,
                value: cb_values[index],
            })?;
        }
    }
    writer.flush()?;
    Ok(())
}
