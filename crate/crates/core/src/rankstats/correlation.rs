use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};
use crate::rankstats::ranks::average_ranks;

/// A correlation coefficient with its two-sided p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub r: f64,
    pub p: f64,
}

/// Two-sided p-value of `r` under a Student t with `df` degrees of freedom,
/// using `t = r·sqrt(df / (1 − r²))`.
pub fn t_test_p(r: f64, df: f64) -> f64 {
    if r.abs() >= 1.0 {
        return 0.0;
    }
    let t = r * (df / (1.0 - r * r)).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("positive degrees of freedom");
    (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
}

fn check_pair(x: &[f64], y: &[f64], min_len: usize) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.len() < min_len {
        return Err(Error::TooFewObservations { needed: min_len, got: x.len() });
    }
    Ok(())
}

/// Sample Pearson coefficient without the p-value.
pub(crate) fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("zero variance".into()));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<Correlation> {
    check_pair(x, y, 3)?;
    let r = pearson_r(x, y)?;
    Ok(Correlation { r, p: t_test_p(r, x.len() as f64 - 2.0) })
}

/// Pearson correlation of average ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Correlation> {
    check_pair(x, y, 3)?;
    let r = pearson_r(&average_ranks(x), &average_ranks(y))
        .map_err(|_| Error::UndefinedCorrelation("all values tied".into()))?;
    Ok(Correlation { r, p: t_test_p(r, x.len() as f64 - 2.0) })
}

/// Controls whose |r| with an input comes this close to 1 are rejected.
const DEGENERATE_EPS: f64 = 1e-12;

/// First-order partial correlation from the three pairwise coefficients.
pub fn partial_from_pairwise(r_xy: f64, r_xz: f64, r_yz: f64) -> Result<f64> {
    if r_xz.abs() >= 1.0 - DEGENERATE_EPS || r_yz.abs() >= 1.0 - DEGENERATE_EPS {
        return Err(Error::DegenerateControl);
    }
    let r = (r_xy - r_xz * r_yz) / ((1.0 - r_xz * r_xz) * (1.0 - r_yz * r_yz)).sqrt();
    Ok(r.clamp(-1.0, 1.0))
}

/// Correlation of `x` and `y` with the linear influence of `z` removed;
/// the p-value uses `n − 3` degrees of freedom.
pub fn partial_correlation(x: &[f64], y: &[f64], z: &[f64]) -> Result<Correlation> {
    check_pair(x, y, 4)?;
    check_pair(x, z, 4)?;
    let r = partial_from_pairwise(pearson_r(x, y)?, pearson_r(x, z)?, pearson_r(y, z)?)?;
    Ok(Correlation { r, p: t_test_p(r, x.len() as f64 - 3.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pearson_examples() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        assert_abs_diff_eq!(pearson(&x, &y).unwrap().r, 1.0, epsilon = 1e-15);
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert_abs_diff_eq!(pearson(&x, &neg).unwrap().r, -1.0, epsilon = 1e-15);
        // cov = 1.0, var = 1.25 each → 1.0 / 1.25
        let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap().r;
        assert_abs_diff_eq!(r, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn pearson_errors() {
        assert!(matches!(
            pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(pearson(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(matches!(pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn p_values() {
        // r = 0.8, n = 4: t = 0.8·sqrt(2/0.36) = 1.8856, two-sided p with 2 df
        // = 1 − t/sqrt(2 + t²) = 0.2
        let c = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert_abs_diff_eq!(c.p, 0.2, epsilon = 1e-9);
        assert_eq!(t_test_p(1.0, 5.0), 0.0);
        assert_abs_diff_eq!(t_test_p(0.0, 5.0), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn spearman_examples() {
        let x = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(spearman(&x, &[10.0, 20.0, 30.0, 40.0]).unwrap().r, 1.0);
        assert_eq!(spearman(&x, &[4.0, 3.0, 2.0, 1.0]).unwrap().r, -1.0);
        assert_abs_diff_eq!(spearman(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap().r, 0.5, epsilon = 1e-15);
        assert!(spearman(&[2.0; 3], &x[..3]).is_err());
    }

    #[test]
    fn partial_examples() {
        assert_abs_diff_eq!(partial_from_pairwise(0.9, 0.8, 0.8).unwrap(), 0.26 / 0.36, epsilon = 1e-15);
        assert_eq!(format!("{:.4}", partial_from_pairwise(0.9, 0.8, 0.8).unwrap()), "0.7222");
        assert_eq!(partial_from_pairwise(0.3, 0.0, 0.0).unwrap(), 0.3);
        assert!(matches!(partial_from_pairwise(0.5, 1.0, 0.2), Err(Error::DegenerateControl)));

        let x = [1.0, 4.0, 2.0, 8.0, 5.0];
        let z = [3.0, 1.0, 4.0, 1.0, 5.0];
        assert_abs_diff_eq!(partial_correlation(&x, &x, &z).unwrap().r, 1.0, epsilon = 1e-12);
        let z_lin: Vec<f64> = x.iter().map(|v| 3.0 * v - 2.0).collect();
        assert!(matches!(partial_correlation(&x, &z, &z_lin), Err(Error::DegenerateControl)));
    }
}
