//! Real-axis Hurwitz zeta function.
//!
//! `ζ(s; a) = Σ_{k≥0} (k+a)^{−s}` is evaluated by Euler–Maclaurin summation:
//!
//! ```text
//! ζ(s; a) ≈ Σ_{k<K} (k+a)^{−s} + (K+a)^{1−s}/(s−1) + (K+a)^{−s}/2
//!           + Σ_{r=1}^{R} B_{2r}/(2r)! · s(s+1)⋯(s+2r−2) · (K+a)^{−s−2r+1}
//! ```
//!
//! which continues the series to every `s ≠ 1`. `K` and `R` grow until the
//! first omitted correction falls below `1e-14` (relative to `max(|ζ|, 1)`).

mod laurent;

pub use laurent::{laurent_coefficients, LaurentCoefficients};

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest `|s|` accepted by [`hurwitz_zeta`].
pub const MAX_ABS_S: f64 = 200.0;

/// `B_{2r}/(2r)!` for `r = 1..=30`.
const BERNOULLI_OVER_FACTORIAL: [f64; 30] = [
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.6859949406653103e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.5174548844682903e-35,
    3.843758125454189e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.247076741820743e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569557e-46,
    -2.5718041582418717e-48,
];

const INITIAL_ORDER: usize = 15;
const CONVERGENCE: f64 = 1e-14;

/// Neumaier-compensated sum.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// One Euler–Maclaurin evaluation with `shift` summed terms and `order`
/// Bernoulli corrections. Returns the value and the first omitted correction.
fn euler_maclaurin(s: f64, a: f64, shift: u64, order: usize) -> (f64, f64) {
    let mut acc = CompensatedSum::default();
    for k in (0..shift).rev() {
        acc.add((k as f64 + a).powf(-s));
    }
    let x = shift as f64 + a;
    let x_pow = x.powf(-s);
    acc.add(x * x_pow / (s - 1.0));
    acc.add(0.5 * x_pow);

    // poch = s(s+1)⋯(s+2r−2), power = x^{−s−2r+1}
    let mut poch = s;
    let mut power = x_pow / x;
    let inv_x2 = 1.0 / (x * x);
    let mut omitted = 0.0;
    for (r, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coeff * poch * power;
        if r == order {
            omitted = term;
            break;
        }
        acc.add(term);
        let m = 2.0 * r as f64;
        poch *= (s + m + 1.0) * (s + m + 2.0);
        power *= inv_x2;
    }
    (acc.value(), omitted)
}

fn initial_shift(s: f64, a: f64) -> u64 {
    if s < 0.0 {
        // Terms grow like (k+a)^{|s|}; keep the summed range short so that
        // cancellation does not swamp the result.
        (7.0 - a).ceil().max(0.0) as u64
    } else {
        10u64.max(s.abs().ceil() as u64 + a.ceil() as u64)
    }
}

/// Hurwitz zeta `ζ(s; a)` for real `s ≠ 1`, `|s| ≤ 200` and `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!(
            "Hurwitz zeta needs a > 0, got a = {a}"
        )));
    }
    if s == 1.0 {
        return Err(Error::Pole("ζ(s; a) has a pole at s = 1".into()));
    }
    if !(s.abs() <= MAX_ABS_S) {
        return Err(Error::Domain(format!(
            "|s| must not exceed {MAX_ABS_S}, got s = {s}"
        )));
    }
    let mut shift = initial_shift(s, a);
    let mut order = INITIAL_ORDER;
    let mut best = euler_maclaurin(s, a, shift, order);
    for _ in 0..8 {
        let (value, omitted) = best;
        if omitted.abs() <= CONVERGENCE * value.abs().max(1.0) {
            break;
        }
        if order < BERNOULLI_OVER_FACTORIAL.len() - 1 {
            order = (2 * order).min(BERNOULLI_OVER_FACTORIAL.len() - 1);
        } else {
            shift = 2 * shift.max(4);
        }
        best = euler_maclaurin(s, a, shift, order);
    }
    let (value, omitted) = best;
    if omitted.abs() > CONVERGENCE * value.abs().max(1.0) {
        log::debug!("ζ({s}; {a}): Euler-Maclaurin tail {omitted:e} above target");
    }
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("ζ({s}; {a}) overflows binary64")))
    }
}

/// Riemann zeta `ζ(s) = ζ(s; 1)`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// Finite sum `Σ_{0≤k≤X} (k+a)^{−s}` against its Euler–Maclaurin prediction
/// `(X+a)^{1−s}/(1−s) + ζ(s; a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSumCheck {
    pub partial_sum: f64,
    pub predicted: f64,
    /// `|partial_sum − predicted| · max(X, 1)^s`, the empirical constant in
    /// the `O(X^{−s})` bound.
    pub constant: f64,
}

pub fn euler_maclaurin_partial(s: f64, a: f64, x: f64) -> Result<PartialSumCheck> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!(
            "partial-sum check needs s > 0, got {s}"
        )));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "partial-sum check needs X ≥ 0, got {x}"
        )));
    }
    let zeta = hurwitz_zeta(s, a)?;
    let mut acc = CompensatedSum::default();
    for k in (0..=x.floor() as u64).rev() {
        acc.add((k as f64 + a).powf(-s));
    }
    let partial_sum = acc.value();
    let predicted = (x + a).powf(1.0 - s) / (1.0 - s) + zeta;
    Ok(PartialSumCheck {
        partial_sum,
        predicted,
        constant: (partial_sum - predicted).abs() * x.max(1.0).powf(s),
    })
}

/// `γ` from the harmonic-number limit `H_n − log n`, accelerated by the
/// Euler–Maclaurin corrections `−1/(2n) + 1/(12n²) − 1/(120n⁴) + 1/(252n⁶)`.
///
/// Independent of the zeta machinery; used to check Laurent coefficients.
pub fn euler_gamma_from_harmonic(n: u64) -> f64 {
    let mut acc = CompensatedSum::default();
    for k in (1..=n).rev() {
        acc.add(1.0 / k as f64);
    }
    let nf = n as f64;
    let n2 = nf * nf;
    acc.add(-nf.ln());
    acc.add(-0.5 / nf);
    acc.add(1.0 / (12.0 * n2));
    acc.add(-1.0 / (120.0 * n2 * n2));
    acc.add(1.0 / (252.0 * n2 * n2 * n2));
    acc.value()
}
