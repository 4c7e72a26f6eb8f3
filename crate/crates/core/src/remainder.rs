//! Remainders `E(λ) = N(λ) − prediction` over geometric λ-grids and
//! log-log fits of their growth.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::TermExpansion;
use crate::error::{Error, Result};
use crate::lattice::{count_recursive, ProductSpec};

pub const MAX_GRID_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    lambda_min: f64,
    lambda_max: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(lambda_min: f64, lambda_max: f64, points: usize) -> Result<Self> {
        if !(lambda_min > 0.0 && lambda_max.is_finite() && lambda_min < lambda_max) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < min < max, got [{lambda_min}, {lambda_max}]"
            )));
        }
        if !(2..=MAX_GRID_POINTS).contains(&points) {
            return Err(Error::InvalidGrid(format!(
                "points must lie in 2..={MAX_GRID_POINTS}, got {points}"
            )));
        }
        Ok(Self {
            lambda_min,
            lambda_max,
            points,
        })
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

/// `λ_i = λ_min (λ_max/λ_min)^{i/(n−1)}`, hitting both endpoints exactly.
pub fn geometric_grid(grid: &GridSpec) -> Vec<f64> {
    let n = grid.points - 1;
    let ratio = grid.lambda_max / grid.lambda_min;
    (0..=n)
        .map(|i| match i {
            0 => grid.lambda_min,
            i if i == n => grid.lambda_max,
            i => grid.lambda_min * ratio.powf(i as f64 / n as f64),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderRow {
    pub lambda: f64,
    pub exact_count: u64,
    pub prediction: f64,
    pub remainder: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RemainderTable {
    pub rows: Vec<RemainderRow>,
}

impl RemainderTable {
    /// Writes `lambda,count_exact,prediction,remainder` rows. Floats use the
    /// shortest representation that parses back to the same value.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "lambda,count_exact,prediction,remainder")?;
        for r in &self.rows {
            writeln!(
                out,
                "{:?},{},{:?},{:?}",
                r.lambda, r.exact_count, r.prediction, r.remainder
            )?;
        }
        Ok(())
    }
}

/// Exact counts against `expansion` on every grid point.
pub fn evaluate_remainder(
    spec: &ProductSpec,
    expansion: &TermExpansion,
    grid: &GridSpec,
) -> Result<RemainderTable> {
    evaluate_remainder_with(spec, grid, |lambda| expansion.evaluate(lambda))
}

/// Exact counts against an arbitrary prediction. Grid points are evaluated
/// in parallel; the table does not depend on the schedule.
pub fn evaluate_remainder_with<F>(
    spec: &ProductSpec,
    grid: &GridSpec,
    predict: F,
) -> Result<RemainderTable>
where
    F: Fn(f64) -> f64 + Sync,
{
    let rows = geometric_grid(grid)
        .into_par_iter()
        .map(|lambda| {
            let exact_count = count_recursive(spec, lambda)?.count;
            let prediction = predict(lambda);
            Ok(RemainderRow {
                lambda,
                exact_count,
                prediction,
                remainder: exact_count as f64 - prediction,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RemainderTable { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub points_used: usize,
    /// Rows below the floor or with zero remainder.
    pub points_dropped: usize,
}

pub const MIN_FIT_POINTS: usize = 5;

/// Least-squares line through `(log λ, log |E(λ)|)` over rows with
/// `λ ≥ lambda_floor` and `E ≠ 0`.
pub fn fit_exponent(table: &RemainderTable, lambda_floor: f64) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter(|r| r.lambda >= lambda_floor && r.remainder != 0.0 && r.remainder.is_finite())
        .map(|r| (r.lambda.ln(), r.remainder.abs().ln()))
        .collect();
    let n = pts.len();
    if n < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            found: n,
        });
    }
    let nf = n as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData {
            needed: 2,
            found: 1,
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let stderr = (rss / (nf - 2.0) / sxx).sqrt();
    Ok(FitResult {
        slope,
        intercept,
        stderr,
        points_used: n,
        points_dropped: table.rows.len() - n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{full_expansion, hermite_expansion};
    use crate::lattice::dirichlet_divisor;
    use crate::sequence::SequenceSpec;
    use crate::zeta::EULER_GAMMA;

    fn ap(c: f64, b: f64, beta: f64) -> SequenceSpec {
        SequenceSpec::affine_power(c, b, beta).unwrap()
    }

    fn synthetic(f: impl Fn(f64) -> f64, points: usize) -> RemainderTable {
        let grid = GridSpec::new(10.0, 1e6, points).unwrap();
        RemainderTable {
            rows: geometric_grid(&grid)
                .into_iter()
                .map(|lambda| RemainderRow {
                    lambda,
                    exact_count: 0,
                    prediction: -f(lambda),
                    remainder: f(lambda),
                })
                .collect(),
        }
    }

    #[test]
    fn grid_examples() {
        let g = geometric_grid(&GridSpec::new(1.0, 100.0, 3).unwrap());
        assert_eq!(g[0], 1.0);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert_eq!(g[2], 100.0);
        let g = geometric_grid(&GridSpec::new(1.0, 8.0, 4).unwrap());
        for (x, want) in g.iter().zip([1.0, 2.0, 4.0, 8.0]) {
            assert!((x - want).abs() < 1e-12);
        }
        assert!(GridSpec::new(2.0, 2.0, 5).is_err());
        assert!(GridSpec::new(1.0, 2.0, 1).is_err());
        assert!(GridSpec::new(1.0, 2.0, 10_001).is_err());
        assert!(GridSpec::new(0.0, 2.0, 3).is_err());
    }

    #[test]
    fn grid_is_increasing() {
        let g = geometric_grid(&GridSpec::new(3.0, 3.5, 10_000).unwrap());
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn fits_exact_power_laws() {
        let f = fit_exponent(&synthetic(|l| l.sqrt(), 20), 0.0).unwrap();
        assert!((f.slope - 0.5).abs() < 1e-9);
        assert_eq!((f.points_used, f.points_dropped), (20, 0));
        let f = fit_exponent(&synthetic(|l| 3.0 * l.powf(0.25), 20), 0.0).unwrap();
        assert!((f.slope - 0.25).abs() < 1e-9);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-9);
        assert!(f.stderr < 1e-9);
    }

    #[test]
    fn fit_scale_covariance() {
        let base = synthetic(|l| l.powf(0.4) * (1.0 + 0.3 * l.ln().sin()), 30);
        let scaled = RemainderTable {
            rows: base
                .rows
                .iter()
                .map(|r| RemainderRow {
                    remainder: 7.5 * r.remainder,
                    ..*r
                })
                .collect(),
        };
        let a = fit_exponent(&base, 0.0).unwrap();
        let b = fit_exponent(&scaled, 0.0).unwrap();
        assert!((a.slope - b.slope).abs() < 1e-12);
        assert!((b.intercept - a.intercept - 7.5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn fit_drops_zero_and_low_rows() {
        let mut t = synthetic(|l| l, 10);
        t.rows[9].remainder = 0.0;
        let f = fit_exponent(&t, 100.0).unwrap();
        assert_eq!(f.points_used + f.points_dropped, 10);
        assert_eq!(f.points_dropped, 3);
        assert!(matches!(
            fit_exponent(&t, 1e5),
            Err(Error::InsufficientData {
                needed: 5,
                found: 1
            })
        ));
    }

    #[test]
    fn self_comparison_is_zero() {
        let id = ap(1.0, 1.0, 1.0);
        let spec = ProductSpec::new(vec![id.clone(), id]).unwrap();
        let grid = GridSpec::new(1.0, 1e5, 40).unwrap();
        let t =
            evaluate_remainder_with(&spec, &grid, |l| dirichlet_divisor(l).unwrap().count as f64)
                .unwrap();
        assert!(t.rows.iter().all(|r| r.remainder == 0.0));
    }

    #[test]
    fn divisor_remainder_at_100() {
        let id = ap(1.0, 1.0, 1.0);
        let spec = ProductSpec::new(vec![id.clone(), id.clone()]).unwrap();
        let (_, expansion) = full_expansion(&[id.clone(), id]).unwrap();
        let grid = GridSpec::new(100.0, 1000.0, 2).unwrap();
        let t = evaluate_remainder(&spec, &expansion, &grid).unwrap();
        let want = 482.0 - (100.0 * 100f64.ln() + (2.0 * EULER_GAMMA - 1.0) * 100.0);
        assert_eq!(t.rows[0].exact_count, 482);
        assert!((t.rows[0].remainder - want).abs() < 1e-5);
    }

    #[test]
    fn hermite_remainder_at_100() {
        let spec = ProductSpec::new(vec![ap(1.0, 1.0, 1.0), ap(1.0, 1.0, 2.0)]).unwrap();
        let e = hermite_expansion(&[1.0; 2], &[1.0; 2], &[1.0, 2.0]).unwrap();
        let t = evaluate_remainder(&spec, &e, &GridSpec::new(100.0, 200.0, 2).unwrap()).unwrap();
        let want = 153.0 - (1.644_934_066_848_226_4 * 100.0 - 1.460_354_508_809_586_8 * 10.0);
        assert_eq!(t.rows[0].exact_count, 153);
        assert!((t.rows[0].remainder - want).abs() < 1e-10);
    }

    #[test]
    fn evaluation_is_deterministic() {
        let spec = ProductSpec::new(vec![
            ap(1.0, 1.0, 1.0),
            ap(1.0, 2.0, 2.0),
            ap(2.0, 1.0, 1.0),
        ])
        .unwrap();
        let grid = GridSpec::new(10.0, 1e5, 60).unwrap();
        let a = evaluate_remainder_with(&spec, &grid, |l| l.sqrt()).unwrap();
        let b = evaluate_remainder_with(&spec, &grid, |l| l.sqrt()).unwrap();
        assert_eq!(a, b);
        let serial: Vec<u64> = geometric_grid(&grid)
            .into_iter()
            .map(|l| count_recursive(&spec, l).unwrap().count)
            .collect();
        assert_eq!(
            a.rows.iter().map(|r| r.exact_count).collect::<Vec<_>>(),
            serial
        );
    }

    #[test]
    fn csv_layout() {
        let t = RemainderTable {
            rows: vec![RemainderRow {
                lambda: 100.0,
                exact_count: 482,
                prediction: 475.5,
                remainder: 6.5,
            }],
        };
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "lambda,count_exact,prediction,remainder\n100.0,482,475.5,6.5\n"
        );
    }
}
