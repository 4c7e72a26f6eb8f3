//! Taylor data of pole-cancelled Dirichlet-series products.
//!
//! For `F(z) = ∏_j F_j(z)` with a pole of order `ν` at `z = α`, the function
//! `g(z) = (z−α)^ν F(z)` is analytic at `α`. Its Taylor coefficients
//! `T_m = g^{(m)}(α)/m!` are recovered from samples on the symmetric stencil
//! `α ± h/2^j` (`j = 0..4`, never `α` itself): the even part
//! `(g(α+h)+g(α−h))/2 = Σ T_{2i} h^{2i}` and the odd part
//! `(g(α+h)−g(α−h))/(2h) = Σ T_{2i+1} h^{2i}` are polynomials in `h²`,
//! and interpolating them through the four step sizes is Richardson
//! extrapolation to all orders at once.

use crate::error::{Error, Result};
use crate::sequence::SequenceSpec;

const LEVELS: usize = 4;

/// Highest Taylor order the stencil resolves.
pub const MAX_ORDER: usize = 2 * LEVELS - 1;

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentCoefficients {
    pub alpha: f64,
    pub nu: u32,
    /// `T_0..=T_order`.
    pub coeffs: Vec<f64>,
    pub step: f64,
    /// Per coefficient: difference between the four-level and the
    /// three-level extrapolant.
    pub error_estimate: Vec<f64>,
}

/// Solves the Vandermonde system `Σ_i c_i u_j^i = y_j` by Gaussian
/// elimination with partial pivoting.
fn fit_polynomial(u: &[f64], y: &[f64]) -> Vec<f64> {
    let n = u.len();
    let mut m: Vec<Vec<f64>> = u
        .iter()
        .zip(y)
        .map(|(&uj, &yj)| {
            let mut row: Vec<f64> = (0..n).map(|i| uj.powi(i as i32)).collect();
            row.push(yj);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap();
        m.swap(col, pivot);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
        }
    }
    let mut c = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| m[row][k] * c[k]).sum();
        c[row] = (m[row][n] - tail) / m[row][row];
    }
    c
}

/// Extrapolated coefficients of a polynomial in `h²` sampled at `h/2^j`,
/// in units of the initial step, with error estimates.
fn extrapolate(samples: &[f64; LEVELS]) -> (Vec<f64>, Vec<f64>) {
    let u: Vec<f64> = (0..LEVELS).map(|j| 0.25f64.powi(j as i32)).collect();
    let full = fit_polynomial(&u, samples);
    let coarse = fit_polynomial(&u[1..], &samples[1..]);
    let err = (0..LEVELS)
        .map(|i| match coarse.get(i) {
            Some(c) => (full[i] - c).abs(),
            None => full[i].abs(),
        })
        .collect();
    (full, err)
}

fn same_point(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(1.0)
}

/// Taylor coefficients `T_0..=T_order` of `(z−α)^ν ∏_j F_j(z)` at `z = α`,
/// where `F_j` is the Dirichlet series of `specs[j]`.
pub fn laurent_coefficients(
    specs: &[SequenceSpec],
    alpha: f64,
    nu: u32,
    order: usize,
) -> Result<LaurentCoefficients> {
    if specs.is_empty() {
        return Err(Error::InvalidParameter("no factors".into()));
    }
    if nu == 0 {
        return Err(Error::InvalidParameter(
            "pole order must be positive".into(),
        ));
    }
    if order > nu as usize || order > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "order {order} exceeds the pole order {nu} or the stencil limit {MAX_ORDER}"
        )));
    }
    let step = 1e-2 * alpha.abs().max(1.0);

    let mut poles_at_alpha = 0;
    for spec in specs {
        if let Some(p) = spec.pole() {
            if same_point(p, alpha) {
                poles_at_alpha += 1;
            } else if (p - alpha).abs() <= 1.5 * step {
                return Err(Error::Pole(format!(
                    "stencil around {alpha} of half-width {step} meets the pole at {p}"
                )));
            }
        }
    }
    if poles_at_alpha != nu {
        return Err(Error::PoleOrderMismatch(format!(
            "{poles_at_alpha} factors have a simple pole at {alpha}, but ν = {nu}"
        )));
    }

    let g = |z: f64| -> Result<f64> {
        let mut v = (z - alpha).powi(nu as i32);
        for spec in specs {
            v *= spec.dirichlet_series_continued(z)?;
        }
        Ok(v)
    };

    let mut even = [0.0; LEVELS];
    let mut odd = [0.0; LEVELS];
    for j in 0..LEVELS {
        let h = step / (1u32 << j) as f64;
        let (plus, minus) = (g(alpha + h)?, g(alpha - h)?);
        even[j] = 0.5 * (plus + minus);
        odd[j] = 0.5 * (plus - minus) / h;
    }
    if even.iter().chain(&odd).any(|v| !v.is_finite())
        || even[LEVELS - 1].abs() > 16.0 * even[0].abs().max(f64::MIN_POSITIVE)
    {
        return Err(Error::PoleOrderMismatch(format!(
            "(z−α)^{nu} F(z) does not stay bounded near α = {alpha}"
        )));
    }

    let (even_c, even_err) = extrapolate(&even);
    let (odd_c, odd_err) = extrapolate(&odd);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut error_estimate = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let (c, e) = if m % 2 == 0 {
            (even_c[m / 2], even_err[m / 2])
        } else {
            (odd_c[m / 2], odd_err[m / 2])
        };
        let scale = step.powi(2 * (m / 2) as i32);
        coeffs.push(c / scale);
        error_estimate.push(e / scale);
    }
    Ok(LaurentCoefficients {
        alpha,
        nu,
        coeffs,
        step,
        error_estimate,
    })
}
