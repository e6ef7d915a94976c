//! From raw measurements to smoothing-ready clr samples: Sturges binning,
//! proportions and raw densities, zero-count imputation, and the CSV
//! schemas the pipeline exchanges.
//!
//! Imputed proportions are deliberately not renormalized: the clr transform
//! is scale invariant, so only the ratios matter downstream.

use crate::bayes::DiscreteComposition;
use crate::error::{Error, Result};
use crate::knots::Domain;
use crate::smoothing::ClrSample;

/// Class-count heuristic `ceil(log2(n) + 1)`.
pub fn sturges_classes(n: u64) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroObservations);
    }
    Ok(((n as f64).log2() + 1.0).ceil() as usize)
}

/// Counts over equally spaced classes, with proportions that may carry
/// imputed values for empty classes.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramData {
    edges: Vec<f64>,
    counts: Vec<u64>,
    proportions: Vec<f64>,
    n_obs: u64,
}

impl HistogramData {
    /// Builds from per-class counts; proportions start as count ratios.
    pub fn from_counts(range: Domain, counts: Vec<u64>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::ZeroClasses);
        }
        let n_obs: u64 = counts.iter().sum();
        if n_obs == 0 {
            return Err(Error::ZeroObservations);
        }
        let classes = counts.len();
        let width = range.length() / classes as f64;
        let mut edges: Vec<f64> = (0..=classes)
            .map(|i| range.lower() + width * i as f64)
            .collect();
        edges[classes] = range.upper();
        let proportions = counts.iter().map(|&c| c as f64 / n_obs as f64).collect();
        Ok(Self {
            edges,
            counts,
            proportions,
            n_obs,
        })
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn proportions(&self) -> &[f64] {
        &self.proportions
    }

    pub fn n_obs(&self) -> u64 {
        self.n_obs
    }

    pub fn num_classes(&self) -> usize {
        self.counts.len()
    }

    pub fn class_width(&self) -> f64 {
        (self.edges[self.edges.len() - 1] - self.edges[0]) / self.num_classes() as f64
    }

    /// Class midpoints, the smoothing abscissas.
    pub fn midpoints(&self) -> Vec<f64> {
        self.edges
            .windows(2)
            .map(|pair| 0.5 * (pair[0] + pair[1]))
            .collect()
    }

    /// Raw density values: proportions over the class width.
    pub fn densities(&self) -> Vec<f64> {
        let width = self.class_width();
        self.proportions.iter().map(|p| p / width).collect()
    }

    /// Replaces each zero proportion by `(2/3) / n_obs`, leaving the others
    /// untouched; idempotent.
    pub fn impute_zeros(&self) -> HistogramData {
        let fill = 2.0 / (3.0 * self.n_obs as f64);
        let proportions = self
            .proportions
            .iter()
            .map(|&p| if p == 0.0 { fill } else { p })
            .collect();
        HistogramData {
            edges: self.edges.clone(),
            counts: self.counts.clone(),
            proportions,
            n_obs: self.n_obs,
        }
    }

    /// Discrete clr of the raw densities at the class midpoints. For
    /// equal-width classes this equals the clr of the proportions by scale
    /// invariance. Fails on any zero proportion; impute first.
    pub fn to_clr_sample(&self, weights: Option<&[f64]>) -> Result<ClrSample> {
        let densities = DiscreteComposition::new(self.densities())?;
        let values = densities.clr();
        let midpoints = self.midpoints();
        match weights {
            Some(w) => ClrSample::new(midpoints, values, w.to_vec()),
            None => ClrSample::with_unit_weights(midpoints, values),
        }
    }
}

/// Bins values into `classes` half-open classes over `range`, the last class
/// closed so the maximum lands inside.
pub fn build_histogram(values: &[f64], range: Domain, classes: usize) -> Result<HistogramData> {
    if classes == 0 {
        return Err(Error::ZeroClasses);
    }
    if values.is_empty() {
        return Err(Error::ZeroObservations);
    }
    let width = range.length() / classes as f64;
    let mut counts = vec![0u64; classes];
    for &value in values {
        if !range.contains(value) || value.is_nan() {
            return Err(Error::ValueOutOfRange {
                value,
                a: range.lower(),
                b: range.upper(),
            });
        }
        let mut index = ((value - range.lower()) / width) as usize;
        if index >= classes {
            index = classes - 1;
        }
        counts[index] += 1;
    }
    HistogramData::from_counts(range, counts)
}

pub mod tables {
    //! CSV schemas exchanged by the pipeline: raw values, histograms, and
    //! clr samples, each with a `group_id` column. Reads are strict: parse
    //! failures carry the offending line number and a file without data rows
    //! is an error, not an empty list.

    use std::fs::File;
    use std::path::Path;

    use serde::{Deserialize, Serialize};

    use super::*;

    /// `group_id,value`
    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    pub struct RawRecord {
        pub group_id: String,
        pub value: f64,
    }

    /// `group_id,midpoint,count`
    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    pub struct HistogramRecord {
        pub group_id: String,
        pub midpoint: f64,
        pub count: u64,
    }

    /// `group_id,t,clr_value,weight`
    #[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
    pub struct ClrRecord {
        pub group_id: String,
        pub t: f64,
        pub clr_value: f64,
        pub weight: f64,
    }

    fn path_str(path: &Path) -> String {
        path.display().to_string()
    }

    fn read_records<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
        let file = File::open(path).map_err(|source| Error::Io {
            path: path_str(path),
            source,
        })?;
        let mut reader = csv::Reader::from_reader(file);
        let mut records = Vec::new();
        for row in reader.deserialize::<T>() {
            match row {
                Ok(record) => records.push(record),
                Err(err) => {
                    let line = err.position().map(|p| p.line()).unwrap_or(0);
                    return Err(Error::Table {
                        path: path_str(path),
                        line,
                        message: err.to_string(),
                    });
                }
            }
        }
        if records.is_empty() {
            return Err(Error::EmptyTable {
                path: path_str(path),
            });
        }
        Ok(records)
    }

    fn write_records<T: Serialize>(path: &Path, records: &[T]) -> Result<()> {
        let file = File::create(path).map_err(|source| Error::Io {
            path: path_str(path),
            source,
        })?;
        let mut writer = csv::Writer::from_writer(file);
        for record in records {
            writer.serialize(record).map_err(|err| Error::Table {
                path: path_str(path),
                line: 0,
                message: err.to_string(),
            })?;
        }
        writer.flush().map_err(|source| Error::Io {
            path: path_str(path),
            source,
        })
    }

    pub fn read_raw_values(path: &Path) -> Result<Vec<RawRecord>> {
        read_records(path)
    }

    pub fn write_raw_values(path: &Path, records: &[RawRecord]) -> Result<()> {
        write_records(path, records)
    }

    pub fn read_histogram(path: &Path) -> Result<Vec<HistogramRecord>> {
        read_records(path)
    }

    pub fn write_histogram(path: &Path, records: &[HistogramRecord]) -> Result<()> {
        write_records(path, records)
    }

    pub fn read_clr(path: &Path) -> Result<Vec<ClrRecord>> {
        read_records(path)
    }

    pub fn write_clr(path: &Path, records: &[ClrRecord]) -> Result<()> {
        write_records(path, records)
    }

    /// Groups clr records by `group_id` in first-appearance order and
    /// validates each group into a [`ClrSample`].
    pub fn group_clr_samples(records: &[ClrRecord]) -> Result<Vec<(String, ClrSample)>> {
        let mut groups: Vec<(String, Vec<&ClrRecord>)> = Vec::new();
        for record in records {
            match groups.iter_mut().find(|(id, _)| *id == record.group_id) {
                Some((_, rows)) => rows.push(record),
                None => groups.push((record.group_id.clone(), vec![record])),
            }
        }
        groups
            .into_iter()
            .map(|(id, mut rows)| {
                rows.sort_by(|a, b| a.t.partial_cmp(&b.t).expect("abscissas are finite"));
                let sample = ClrSample::new(
                    rows.iter().map(|r| r.t).collect(),
                    rows.iter().map(|r| r.clr_value).collect(),
                    rows.iter().map(|r| r.weight).collect(),
                )?;
                Ok((id, sample))
            })
            .collect()
    }

    /// Groups raw-value records by `group_id` in first-appearance order.
    pub fn group_raw_values(records: &[RawRecord]) -> Vec<(String, Vec<f64>)> {
        let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
        for record in records {
            match groups.iter_mut().find(|(id, _)| *id == record.group_id) {
                Some((_, values)) => values.push(record.value),
                None => groups.push((record.group_id.clone(), vec![record.value])),
            }
        }
        groups
    }
}
