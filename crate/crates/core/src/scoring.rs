//! Indicator compression, composite scores and PageRank score
//! normalization.

use std::io::{Read, Write};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::fmt_num;
use crate::pagerank::PageRankResult;
use crate::profile::{Indicator, SubjectProfile};

/// The value the largest raw indicator is scaled to before compression.
pub const SCALE_TOP: f64 = 10_000.0;

/// Raw indicator columns that must not hold negative values.
const RAW_COLUMNS: [&str; 7] = ["PUB", "CNCI", "IC", "TOP", "AWD", "CIT", "hindex"];

/// Per-institution named score columns for one subject.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub subject: String,
    institutions: Vec<String>,
    columns: IndexMap<String, Vec<f64>>,
}

impl ScoreTable {
    pub fn new(subject: impl Into<String>, institutions: Vec<String>) -> Self {
        Self {
            subject: subject.into(),
            institutions,
            columns: IndexMap::new(),
        }
    }

    pub fn institutions(&self) -> &[String] {
        &self.institutions
    }

    pub fn len(&self) -> usize {
        self.institutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.institutions.is_empty()
    }

    pub fn column_names(&self) -> impl Iterator<Item = &str> {
        self.columns.keys().map(String::as_str)
    }

    /// Inserts or replaces a column.
    pub fn insert(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if values.len() != self.institutions.len() {
            return Err(Error::LengthMismatch {
                left: self.institutions.len(),
                right: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Table(format!("column `{name}` holds non-finite value {v}")));
        }
        if RAW_COLUMNS.iter().any(|c| c.eq_ignore_ascii_case(&name)) {
            if let Some(&value) = values.iter().find(|&&v| v < 0.0) {
                return Err(Error::NegativeValue { column: name, value });
            }
        }
        self.columns.insert(name, values);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.columns
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }

    /// Reads `institution,<column>...` CSV. Every cell must hold a number.
    pub fn read_csv<R: Read>(reader: R, subject: impl Into<String>) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.get(0).map(str::trim) != Some("institution") {
            return Err(Error::Table("first column must be `institution`".into()));
        }
        let names: Vec<String> = headers.iter().skip(1).map(|h| h.trim().to_string()).collect();
        let mut institutions = Vec::new();
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            institutions.push(rec[0].trim().to_string());
            for (c, name) in names.iter().enumerate() {
                let cell = rec.get(c + 1).map(str::trim).unwrap_or("");
                let value: f64 = cell.parse().map_err(|_| {
                    Error::Table(format!("row {}: column `{name}` has non-numeric value `{cell}`", row + 2))
                })?;
                cols[c].push(value);
            }
        }
        let mut table = Self::new(subject, institutions);
        for (name, values) in names.into_iter().zip(cols) {
            table.insert(name, values)?;
        }
        Ok(table)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["institution"];
        header.extend(self.column_names());
        w.write_record(&header)?;
        for (i, inst) in self.institutions.iter().enumerate() {
            let mut row = vec![inst.clone()];
            row.extend(self.columns.values().map(|c| fmt_num(c[i])));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Scales `raw` so its maximum is 10000, then takes square roots. The
/// largest entry maps to exactly 100.
pub fn compress(raw: &[f64]) -> Result<Vec<f64>> {
    if raw.is_empty() {
        return Err(Error::TooFewObservations { needed: 1, got: 0 });
    }
    if let Some(&value) = raw.iter().find(|&&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::NegativeValue { column: "raw".into(), value });
    }
    let max = raw.iter().copied().fold(0.0, f64::max);
    if max <= 0.0 {
        return Err(Error::AllZero);
    }
    Ok(raw
        .iter()
        .map(|&v| if v == max { 100.0 } else { (v * SCALE_TOP / max).sqrt() })
        .collect())
}

/// Adds an `<IND>_score` column for every positively weighted indicator
/// whose raw column is present.
pub fn compress_indicators(table: &mut ScoreTable, profile: &SubjectProfile) -> Result<()> {
    for ind in Indicator::ALL {
        if profile.weight(ind) == 0 {
            continue;
        }
        let scores = compress(table.column(ind.name())?)?;
        table.insert(ind.score_column(), scores)?;
    }
    Ok(())
}

/// Weighted mean of the `<IND>_score` columns with the profile's weights.
pub fn composite_score(table: &ScoreTable, profile: &SubjectProfile) -> Result<Vec<f64>> {
    let total = f64::from(profile.total_weight());
    if total == 0.0 {
        return Err(Error::InvalidConfig(format!("{}: all indicator weights are zero", profile.name)));
    }
    let mut out = vec![0.0; table.len()];
    for ind in Indicator::ALL {
        let w = f64::from(profile.weight(ind));
        if w == 0.0 {
            continue;
        }
        let col = table.column(&ind.score_column())?;
        for (acc, s) in out.iter_mut().zip(col) {
            *acc += w * s;
        }
    }
    Ok(out.into_iter().map(|s| s / total).collect())
}

/// `sqrt(π / max π) · 100`; the top institution scores exactly 100.
pub fn normalize_pagerank(pr: &PageRankResult) -> Vec<f64> {
    normalize_scores(&pr.scores)
}

pub fn normalize_scores(scores: &[f64]) -> Vec<f64> {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    scores
        .iter()
        .map(|&p| if p == max { 100.0 } else { (p / max).sqrt() * 100.0 })
        .collect()
}
