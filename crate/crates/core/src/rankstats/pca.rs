//! Principal components of a correlation matrix and varimax rotation of the
//! retained loadings.

use std::io::{Read, Write};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmt::fmt_num;
use crate::rankstats::correlation::pearson_r;

/// Convergence threshold on the largest pairwise rotation angle.
pub const VARIMAX_TOLERANCE: f64 = 1e-10;
const VARIMAX_MAX_SWEEPS: usize = 1000;
const MATRIX_TOLERANCE: f64 = 1e-9;
const NEGATIVE_EIGEN_TOLERANCE: f64 = 1e-10;

/// A labelled square correlation matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub variables: Vec<String>,
    /// Row-major entries.
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn new(variables: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        let m = Self { variables, values };
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn identity(variables: Vec<String>) -> Self {
        let p = variables.len();
        let values = (0..p)
            .map(|i| (0..p).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self { variables, values }
    }

    /// Pearson correlations among named, equal-length columns.
    pub fn from_columns(names: Vec<String>, columns: &[&[f64]]) -> Result<Self> {
        let p = columns.len();
        let mut values = vec![vec![1.0; p]; p];
        for i in 0..p {
            for j in (i + 1)..p {
                if columns[i].len() != columns[j].len() {
                    return Err(Error::LengthMismatch { left: columns[i].len(), right: columns[j].len() });
                }
                let r = pearson_r(columns[i], columns[j])?;
                values[i][j] = r;
                values[j][i] = r;
            }
        }
        Self::new(names, values)
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.variables.len();
        if p == 0 {
            return Err(Error::InvalidCorrelationMatrix("empty matrix".into()));
        }
        if self.values.len() != p || self.values.iter().any(|r| r.len() != p) {
            return Err(Error::InvalidCorrelationMatrix(format!("expected a {p} x {p} matrix")));
        }
        for i in 0..p {
            if (self.values[i][i] - 1.0).abs() > MATRIX_TOLERANCE {
                return Err(Error::InvalidCorrelationMatrix(format!(
                    "diagonal entry {} is {}, not 1",
                    self.variables[i], self.values[i][i]
                )));
            }
            for j in 0..p {
                let v = self.values[i][j];
                if !v.is_finite() || v.abs() > 1.0 + MATRIX_TOLERANCE {
                    return Err(Error::InvalidCorrelationMatrix(format!("entry ({i}, {j}) = {v}")));
                }
                if (v - self.values[j][i]).abs() > MATRIX_TOLERANCE {
                    return Err(Error::InvalidCorrelationMatrix(format!(
                        "not symmetric at ({i}, {j}): {v} vs {}",
                        self.values[j][i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reads a `variable,<name>...` CSV whose rows repeat the header order.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers()?.clone();
        let variables: Vec<String> = headers.iter().skip(1).map(|h| h.trim().to_string()).collect();
        let mut values = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let name = rec.get(0).unwrap_or("").trim();
            if variables.get(row).map(String::as_str) != Some(name) {
                return Err(Error::InvalidCorrelationMatrix(format!(
                    "row {} is `{name}`, expected `{}`",
                    row + 1,
                    variables.get(row).map(String::as_str).unwrap_or("<none>")
                )));
            }
            let parsed: std::result::Result<Vec<f64>, _> =
                rec.iter().skip(1).map(|c| c.trim().parse::<f64>()).collect();
            values.push(parsed.map_err(|e| {
                Error::InvalidCorrelationMatrix(format!("row `{name}`: {e}"))
            })?);
        }
        Self::new(variables, values)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["variable".to_string()];
        header.extend(self.variables.iter().cloned());
        w.write_record(&header)?;
        for (name, row) in self.variables.iter().zip(&self.values) {
            let mut rec = vec![name.clone()];
            rec.extend(row.iter().map(|&v| fmt_num(v)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaResult {
    pub variables: Vec<String>,
    /// All eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    /// `λ_k / p` for every component.
    pub explained_share: Vec<f64>,
    /// Unrotated loadings, one row per variable, one column per retained
    /// component.
    pub loadings: Vec<Vec<f64>>,
    pub rotated_loadings: Vec<Vec<f64>>,
    pub rotated_variance_share: Vec<f64>,
    pub varimax_sweeps: usize,
}

impl PcaResult {
    pub fn retained(&self) -> usize {
        self.loadings.first().map_or(0, Vec::len)
    }

    pub fn retained_share(&self) -> f64 {
        self.explained_share[..self.retained()].iter().sum()
    }

    /// Writes `variable,component1,...` rows for the given loading matrix.
    pub fn write_loadings_csv<W: Write>(&self, rotated: bool, writer: W) -> Result<()> {
        let loadings = if rotated { &self.rotated_loadings } else { &self.loadings };
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["variable".to_string()];
        header.extend((1..=self.retained()).map(|k| format!("component{k}")));
        w.write_record(&header)?;
        for (name, row) in self.variables.iter().zip(loadings) {
            let mut rec = vec![name.clone()];
            rec.extend(row.iter().map(|&v| fmt_num(v)));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `component,eigenvalue,explained_share,rotated_variance_share`;
    /// the last column is empty beyond the retained components.
    pub fn write_eigen_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["component", "eigenvalue", "explained_share", "rotated_variance_share"])?;
        for (k, (lambda, share)) in self.eigenvalues.iter().zip(&self.explained_share).enumerate() {
            let rotated = self.rotated_variance_share.get(k).map(|&v| fmt_num(v)).unwrap_or_default();
            w.write_record([(k + 1).to_string(), fmt_num(*lambda), fmt_num(*share), rotated])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Flips `col` so its entries sum to a non-negative value (largest entry
/// positive when the sum is zero).
fn orient(col: &mut [f64]) {
    let sum: f64 = col.iter().sum();
    let flip = if sum.abs() > 1e-12 {
        sum < 0.0
    } else {
        col.iter().copied().fold(0.0, |m: f64, v| if v.abs() > m.abs() { v } else { m }) < 0.0
    };
    if flip {
        col.iter_mut().for_each(|v| *v = -*v);
    }
}

pub fn pca(corr: &CorrelationMatrix, retain: usize) -> Result<PcaResult> {
    corr.validate()?;
    let p = corr.dim();
    if retain == 0 || retain > p {
        return Err(Error::InvalidConfig(format!("retain = {retain} must lie in 1..={p}")));
    }
    let m = DMatrix::from_fn(p, p, |i, j| corr.values[i][j]);
    let eig = SymmetricEigen::new(m);

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]).then(a.cmp(&b)));
    let mut eigenvalues = Vec::with_capacity(p);
    for &k in &order {
        let lambda = eig.eigenvalues[k];
        if lambda < -NEGATIVE_EIGEN_TOLERANCE {
            return Err(Error::InvalidCorrelationMatrix(format!(
                "negative eigenvalue {lambda}; matrix is not positive semi-definite"
            )));
        }
        eigenvalues.push(lambda.max(0.0));
    }
    let explained_share: Vec<f64> = eigenvalues.iter().map(|l| l / p as f64).collect();

    let mut loadings = vec![vec![0.0; retain]; p];
    for (c, &k) in order.iter().take(retain).enumerate() {
        let mut v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        orient(&mut v);
        let scale = eigenvalues[c].sqrt();
        for (i, x) in v.into_iter().enumerate() {
            loadings[i][c] = x * scale;
        }
    }

    let (mut rotated, sweeps) = varimax(&loadings)?;
    let mut rotated_variance_share: Vec<f64> = (0..retain)
        .map(|c| rotated.iter().map(|row| row[c] * row[c]).sum::<f64>() / p as f64)
        .collect();

    // order rotated components by explained variance
    let mut cols: Vec<usize> = (0..retain).collect();
    cols.sort_by(|&a, &b| rotated_variance_share[b].total_cmp(&rotated_variance_share[a]).then(a.cmp(&b)));
    rotated = rotated
        .iter()
        .map(|row| cols.iter().map(|&c| row[c]).collect())
        .collect();
    rotated_variance_share = cols.iter().map(|&c| rotated_variance_share[c]).collect();
    for c in 0..retain {
        let mut col: Vec<f64> = rotated.iter().map(|r| r[c]).collect();
        orient(&mut col);
        for (row, v) in rotated.iter_mut().zip(col) {
            row[c] = v;
        }
    }

    Ok(PcaResult {
        variables: corr.variables.clone(),
        eigenvalues,
        explained_share,
        loadings,
        rotated_loadings: rotated,
        rotated_variance_share,
        varimax_sweeps: sweeps,
    })
}

/// Kaiser-normalized varimax by successive pairwise planar rotations.
///
/// Returns the rotated loadings and the number of sweeps over all column
/// pairs. Rows with zero communality are left untouched.
pub fn varimax(loadings: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, usize)> {
    let p = loadings.len();
    let k = loadings.first().map_or(0, Vec::len);
    let h: Vec<f64> = loadings
        .iter()
        .map(|row| row.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let mut a: Vec<Vec<f64>> = loadings
        .iter()
        .zip(&h)
        .map(|(row, &hi)| row.iter().map(|v| if hi > 0.0 { v / hi } else { 0.0 }).collect())
        .collect();
    if k < 2 {
        return Ok((loadings.to_vec(), 0));
    }
    let pf = p as f64;

    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut largest_angle: f64 = 0.0;
        for j in 0..k - 1 {
            for l in (j + 1)..k {
                let (mut sa, mut sb, mut sc, mut sd) = (0.0, 0.0, 0.0, 0.0);
                for row in &a {
                    let (x, y) = (row[j], row[l]);
                    let u = x * x - y * y;
                    let v = 2.0 * x * y;
                    sa += u;
                    sb += v;
                    sc += u * u - v * v;
                    sd += 2.0 * u * v;
                }
                let num = sd - 2.0 * sa * sb / pf;
                let den = sc - (sa * sa - sb * sb) / pf;
                let phi = 0.25 * num.atan2(den);
                largest_angle = largest_angle.max(phi.abs());
                let (s, c) = phi.sin_cos();
                for row in a.iter_mut() {
                    let (x, y) = (row[j], row[l]);
                    row[j] = x * c + y * s;
                    row[l] = -x * s + y * c;
                }
            }
        }
        if !largest_angle.is_finite() {
            return Err(Error::NumericFailure("varimax produced a non-finite angle".into()));
        }
        if largest_angle < VARIMAX_TOLERANCE || sweeps >= VARIMAX_MAX_SWEEPS {
            break;
        }
    }
    let rotated = a
        .into_iter()
        .zip(&h)
        .map(|(row, &hi)| row.into_iter().map(|v| v * hi).collect())
        .collect();
    Ok((rotated, sweeps))
}
