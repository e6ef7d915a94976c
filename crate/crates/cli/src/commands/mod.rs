pub mod basis;
pub mod ingest;
pub mod sfpca;
pub mod smooth;

use std::fs::File;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

fn create_out_dir(out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file =
        File::create(path).with_context(|| format!("writing {}", path.display()))?;
    serde_json::to_writer_pretty(file, value)
        .with_context(|| format!("serializing {}", path.display()))?;
    Ok(())
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    let file =
        File::create(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(csv::Writer::from_writer(file))
}
