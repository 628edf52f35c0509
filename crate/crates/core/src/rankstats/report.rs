use std::io::Write;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fmt::fmt_num;
use crate::rankstats::{
    kendall_w, partial_correlation, pearson, rank_displacement, spearman, Correlation, Displacement,
};
use crate::scoring::ScoreTable;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub column_a: String,
    pub column_b: String,
    pub n: usize,
    pub pearson: Correlation,
    pub spearman: Correlation,
    pub kendall_w: f64,
    /// Partial correlation of the two columns per control column, in the
    /// order requested.
    pub partial: IndexMap<String, Correlation>,
    pub displacement: Displacement,
}

impl ComparisonReport {
    /// Writes `statistic,control,value,p_value` rows.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["statistic", "control", "value", "p_value"])?;
        let mut row = |stat: &str, control: &str, value: f64, p: Option<f64>| {
            w.write_record([stat, control, &fmt_num(value), &p.map(fmt_num).unwrap_or_default()])
        };
        row("n", "", self.n as f64, None)?;
        row("pearson", "", self.pearson.r, Some(self.pearson.p))?;
        row("spearman", "", self.spearman.r, Some(self.spearman.p))?;
        row("kendall_w", "", self.kendall_w, None)?;
        for (control, c) in &self.partial {
            row("partial", control, c.r, Some(c.p))?;
        }
        let d = &self.displacement;
        row("displacement_mean", "", d.mean, None)?;
        row("displacement_std", "", d.std, None)?;
        row("displacement_p50", "", d.p50, None)?;
        row("displacement_p75", "", d.p75, None)?;
        row("displacement_p90", "", d.p90, None)?;
        w.flush()?;
        Ok(())
    }
}

/// Runs the whole battery on two columns of `table`, with one partial
/// correlation per control column.
pub fn compare(table: &ScoreTable, column_a: &str, column_b: &str, controls: &[String]) -> Result<ComparisonReport> {
    let a = table.column(column_a)?;
    let b = table.column(column_b)?;
    let mut partial = IndexMap::new();
    for control in controls {
        let z = table.column(control)?;
        partial.insert(control.clone(), partial_correlation(a, b, z)?);
    }
    Ok(ComparisonReport {
        column_a: column_a.to_string(),
        column_b: column_b.to_string(),
        n: a.len(),
        pearson: pearson(a, b)?,
        spearman: spearman(a, b)?,
        kendall_w: kendall_w(&[a.to_vec(), b.to_vec()])?,
        partial,
        displacement: rank_displacement(a, b)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn table() -> ScoreTable {
        let mut t = ScoreTable::new("T", (0..5).map(|i| format!("u{i}")).collect());
        t.insert("a", vec![5.0, 3.0, 4.0, 1.0, 2.0]).unwrap();
        t.insert("rev", vec![-5.0, -3.0, -4.0, -1.0, -2.0]).unwrap();
        t.insert("z", vec![1.0, 7.0, 2.0, 2.0, 9.0]).unwrap();
        t
    }

    #[test]
    fn self_comparison() {
        let r = compare(&table(), "a", "a", &[]).unwrap();
        assert_eq!(r.pearson.r, 1.0);
        assert_eq!(r.spearman.r, 1.0);
        assert_eq!(r.kendall_w, 1.0);
        assert_eq!(r.displacement.mean, 0.0);
        assert_eq!(r.displacement.p90, 0.0);
    }

    #[test]
    fn reversed_column() {
        let r = compare(&table(), "a", "rev", &["z".to_string()]).unwrap();
        assert_eq!(r.pearson.r, -1.0);
        assert_eq!(r.kendall_w, 0.0);
        assert_eq!(r.partial.len(), 1);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("statistic,control,value,p_value\nn,,5,\npearson,,-1,0\n"));
        assert!(text.contains("\npartial,z,"));
    }

    #[test]
    fn missing_column_is_named() {
        match compare(&table(), "a", "nope", &[]) {
            Err(Error::MissingColumn(c)) => assert_eq!(c, "nope"),
            other => panic!("{other:?}"),
        }
    }
}
