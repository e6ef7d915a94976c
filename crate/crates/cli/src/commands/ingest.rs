//! `ingest`: raw per-group measurements to a smoothing-ready clr table.
//! Class counts follow the Sturges rule per group; empty classes are
//! imputed before the clr transform.

use std::path::Path;

use anyhow::{bail, Context, Result};
use compospline::ingest::tables::{self, ClrRecord};
use compospline::ingest::{build_histogram, sturges_classes};
use compospline::Domain;

/// Parses a `lo:hi` range argument.
pub fn parse_range(text: &str) -> Result<Domain> {
    let (lo, hi) = text
        .split_once(':')
        .with_context(|| format!("range '{text}' must look like 40:110"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .with_context(|| format!("range lower bound '{lo}' is not a number"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .with_context(|| format!("range upper bound '{hi}' is not a number"))?;
    Ok(Domain::new(lo, hi)?)
}

pub fn run(raw: &Path, range: Domain, out: &Path) -> Result<()> {
    let records = tables::read_raw_values(raw)?;
    let groups = tables::group_raw_values(&records);
    if groups.is_empty() {
        bail!("no groups in {}", raw.display());
    }
    let mut output = Vec::new();
    for (id, values) in groups {
        let classes = sturges_classes(values.len() as u64)
            .with_context(|| format!("group '{id}'"))?;
        let histogram = build_histogram(&values, range, classes)
            .with_context(|| format!("group '{id}'"))?
            .impute_zeros();
        let sample = histogram
            .to_clr_sample(None)
            .with_context(|| format!("group '{id}'"))?;
        for (t, clr_value) in sample.abscissas().iter().zip(sample.values().iter()) {
            output.push(ClrRecord {
                group_id: id.clone(),
                t: *t,
                clr_value: *clr_value,
                weight: 1.0,
            });
        }
    }
    tables::write_clr(out, &output)?;
    Ok(())
}
