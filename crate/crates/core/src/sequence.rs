//! Factor eigenvalue sequences.
//!
//! A factor is a non-decreasing sequence of positive reals `λ_1 ≤ λ_2 ≤ …`
//! indexed from `k = 1`. Three models are supported:
//!
//! - [`AffinePower`]: `λ_k = (c(k−1) + b)^β`, the spectrum of a shifted and
//!   rescaled one-dimensional Hermite operator raised to the power `β`;
//! - [`PowerLaw`]: `λ_k = (k/A)^{1/α}`, so that `N(λ) = ⌊A·λ^α⌋` exactly;
//! - [`Explicit`]: a finite list of values.
//!
//! Counting is inclusive (`λ_k ≤ λ`). Floating-point comparisons are made in
//! log space with a relative tolerance of `1e-12`, and values within the
//! tolerance count as `≤`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::hurwitz_zeta;

/// Relative tolerance applied to `log λ` in floating-point comparisons.
pub const LOG_TOLERANCE: f64 = 1e-12;

/// Tolerance used when comparing a sum of logarithms against `ln_lambda`.
pub(crate) fn log_tolerance(ln_lambda: f64) -> f64 {
    LOG_TOLERANCE * (1.0 + ln_lambda.abs())
}

/// Largest integer `n` with `n ≤ λ`, where an integer within the log-space
/// tolerance above `λ` also counts. `None` if `λ` does not fit 64 bits.
pub(crate) fn integer_bound(lambda: f64) -> Option<u128> {
    if !(lambda >= 0.0) {
        return Some(0);
    }
    if lambda >= 18_446_744_073_709_551_615.0 {
        return None;
    }
    let ceil = lambda.ceil();
    if ceil > lambda && lambda > 0.0 && ceil.ln() - lambda.ln() <= log_tolerance(lambda.ln()) {
        Some(ceil as u128)
    } else {
        Some(lambda.floor() as u128)
    }
}

/// Largest `r` with `r^e ≤ n`.
pub(crate) fn integer_root(n: u128, e: u32) -> u128 {
    match e {
        0 => panic!("integer_root: zero exponent"),
        1 => return n,
        _ => {}
    }
    let fits = |r: u128| r.checked_pow(e).is_some_and(|v| v <= n);
    let mut r = (n as f64).powf(1.0 / e as f64) as u128;
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

/// A positive exponent, optionally carrying an exact rational value.
///
/// Integer-valued floats and `"p/q"` strings are stored exactly, which lets
/// growth exponents be grouped without floating-point guesswork.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    value: f64,
    exact: Option<Ratio<i64>>,
}

impl Exponent {
    pub fn new(value: f64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "exponent must be positive and finite, got {value}"
            )));
        }
        let exact =
            (value.fract() == 0.0 && value < 9.0e15).then(|| Ratio::from_integer(value as i64));
        Ok(Self { value, exact })
    }

    pub fn rational(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 || numer == 0 || (numer < 0) != (denom < 0) {
            return Err(Error::InvalidParameter(format!(
                "exponent must be a positive rational, got {numer}/{denom}"
            )));
        }
        let r = Ratio::new(numer, denom);
        Ok(Self {
            value: *r.numer() as f64 / *r.denom() as f64,
            exact: Some(r),
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<Ratio<i64>> {
        self.exact
    }

    pub fn recip(&self) -> Self {
        Self {
            value: 1.0 / self.value,
            exact: self.exact.map(|r| r.recip()),
        }
    }

    /// The exponent as a positive integer, if it is one.
    pub fn as_integer(&self) -> Option<u32> {
        self.exact
            .filter(|r| r.is_integer() && *r.numer() <= u32::MAX as i64)
            .map(|r| *r.numer() as u32)
    }

    /// Compares two exponents. Exact rationals compare exactly; otherwise
    /// distinct floats closer than `1e-12` are reported as ambiguous.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        if let (Some(a), Some(b)) = (self.exact, other.exact) {
            return Ok(a.cmp(&b));
        }
        if self.value == other.value {
            return Ok(Ordering::Equal);
        }
        if (self.value - other.value).abs() < 1e-12 {
            return Err(Error::AmbiguousMultiplicity(self.value, other.value));
        }
        Ok(self.value.total_cmp(&other.value))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) if !r.is_integer() => write!(f, "{}/{}", r.numer(), r.denom()),
            _ => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse exponent {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Self::rational(n, d)
            }
            None => Self::new(s.trim().parse().map_err(|_| bad())?),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawExponent {
    Number(f64),
    Text(String),
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self.exact {
            Some(r) if !r.is_integer() => RawExponent::Text(self.to_string()),
            _ => RawExponent::Number(self.value),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        match RawExponent::deserialize(deserializer)? {
            RawExponent::Number(v) => Exponent::new(v),
            RawExponent::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// `λ_k = (c(k−1) + b)^β`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinePower {
    c: f64,
    b: f64,
    beta: Exponent,
}

impl AffinePower {
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn beta(&self) -> Exponent {
        self.beta
    }

    /// Integer `c`, `b` and `β`: every value is an integer and products can
    /// be compared exactly.
    pub fn is_integer_exact(&self) -> bool {
        let int = |x: f64| x.fract() == 0.0 && x < 9.0e15;
        int(self.c) && int(self.b) && self.beta.as_integer().is_some()
    }

    fn base(&self, k: u64) -> f64 {
        self.c * (k - 1) as f64 + self.b
    }

    fn value(&self, k: u64) -> f64 {
        match self.beta.as_integer() {
            Some(e) if e <= i32::MAX as u32 => self.base(k).powi(e as i32),
            _ => self.base(k).powf(self.beta.value),
        }
    }

    fn int_value(&self, k: u64) -> Option<u128> {
        let base = (self.c as u128)
            .checked_mul(u128::from(k - 1))?
            .checked_add(self.b as u128)?;
        base.checked_pow(self.beta.as_integer()?)
    }

    fn count_int(&self, bound: u128) -> u64 {
        let root = integer_root(bound, self.beta.as_integer().expect("integer exponent"));
        let (c, b) = (self.c as u128, self.b as u128);
        if root < b {
            0
        } else {
            u64::try_from((root - b) / c + 1).unwrap_or(u64::MAX)
        }
    }

    fn count_ln(&self, log_bound: f64, tol: f64) -> u64 {
        let fits = |k: u64| self.beta.value * self.base(k).ln() <= log_bound + tol;
        let x = (log_bound / self.beta.value).exp();
        let estimate = if x < self.b {
            0.0
        } else {
            ((x - self.b) / self.c).floor() + 1.0
        };
        if estimate >= 9.0e15 {
            return if estimate >= u64::MAX as f64 {
                u64::MAX
            } else {
                estimate as u64
            };
        }
        correct_estimate(estimate as u64, fits)
    }
}

/// `λ_k = (k/A)^{1/α}`, whose counting function is `⌊A·λ^α⌋`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLaw {
    amplitude: f64,
    alpha: Exponent,
}

impl PowerLaw {
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn alpha(&self) -> Exponent {
        self.alpha
    }

    fn ln_value(&self, k: u64) -> f64 {
        ((k as f64).ln() - self.amplitude.ln()) / self.alpha.value
    }

    fn count_ln(&self, log_bound: f64, tol: f64) -> u64 {
        let fits = |k: u64| k == 0 || self.ln_value(k) <= log_bound + tol;
        let estimate = (self.amplitude * (self.alpha.value * log_bound).exp()).floor();
        if estimate >= 9.0e15 {
            return if estimate >= u64::MAX as f64 {
                u64::MAX
            } else {
                estimate as u64
            };
        }
        correct_estimate(estimate as u64, fits)
    }
}

/// Moves a closed-form estimate onto the exact boundary of a monotone predicate.
fn correct_estimate(mut k: u64, fits: impl Fn(u64) -> bool) -> u64 {
    while k > 0 && !fits(k) {
        k -= 1;
    }
    while fits(k + 1) {
        k += 1;
    }
    k
}

/// A finite sorted list of eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct Explicit {
    values: Vec<f64>,
}

impl Explicit {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Growth data `N(λ) ∼ A·λ^α` of a factor, with the exponent `τ` of a known
/// `O(λ^τ)` remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylData {
    pub amplitude: f64,
    pub alpha: f64,
    pub remainder_exponent: Option<f64>,
}

impl WeylData {
    pub fn new(amplitude: f64, alpha: f64, remainder_exponent: Option<f64>) -> Result<Self> {
        if !(amplitude > 0.0 && amplitude.is_finite()) || !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Weyl data needs A > 0 and α > 0, got A = {amplitude}, α = {alpha}"
            )));
        }
        if let Some(tau) = remainder_exponent {
            if !(tau < alpha) {
                return Err(Error::InvalidParameter(format!(
                    "remainder exponent {tau} must be below α = {alpha}"
                )));
            }
        }
        Ok(Self {
            amplitude,
            alpha,
            remainder_exponent,
        })
    }
}

/// One factor's eigenvalue sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSequence", into = "RawSequence")]
pub enum SequenceSpec {
    AffinePower(AffinePower),
    PowerLaw(PowerLaw),
    Explicit(Explicit),
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

impl SequenceSpec {
    pub fn affine_power(c: f64, b: f64, beta: f64) -> Result<Self> {
        Self::affine_power_exact(c, b, Exponent::new(beta)?)
    }

    pub fn affine_power_exact(c: f64, b: f64, beta: Exponent) -> Result<Self> {
        Ok(Self::AffinePower(AffinePower {
            c: positive("c", c)?,
            b: positive("b", b)?,
            beta,
        }))
    }

    pub fn power_law(amplitude: f64, alpha: f64) -> Result<Self> {
        Self::power_law_exact(amplitude, Exponent::new(alpha)?)
    }

    pub fn power_law_exact(amplitude: f64, alpha: Exponent) -> Result<Self> {
        Ok(Self::PowerLaw(PowerLaw {
            amplitude: positive("A", amplitude)?,
            alpha,
        }))
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("explicit sequence is empty".into()));
        }
        for &v in &values {
            positive("explicit value", v)?;
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(
                "explicit sequence is not sorted".into(),
            ));
        }
        Ok(Self::Explicit(Explicit { values }))
    }

    pub fn is_integer_exact(&self) -> bool {
        matches!(self, Self::AffinePower(f) if f.is_integer_exact())
    }

    /// Number of terms for finite sequences.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            Self::Explicit(e) => Some(e.values.len()),
            _ => None,
        }
    }

    /// Growth exponent `α` of `N(λ) ∼ A λ^α`, when the model has one.
    pub fn growth_exponent(&self) -> Option<Exponent> {
        match self {
            Self::AffinePower(f) => Some(f.beta.recip()),
            Self::PowerLaw(f) => Some(f.alpha),
            Self::Explicit(_) => None,
        }
    }

    /// `N(λ) = #{k ≥ 1 : λ_k ≤ λ}`.
    pub fn count(&self, lambda: f64) -> u64 {
        if !(lambda > 0.0) {
            return 0;
        }
        if let Self::AffinePower(f) = self {
            if f.is_integer_exact() {
                if let Some(bound) = integer_bound(lambda) {
                    return f.count_int(bound);
                }
            }
        }
        let ln = lambda.ln();
        self.count_ln(ln, log_tolerance(ln))
    }

    /// Count of `k` with `ln λ_k ≤ log_bound + tol`.
    pub(crate) fn count_ln(&self, log_bound: f64, tol: f64) -> u64 {
        match self {
            Self::AffinePower(f) => f.count_ln(log_bound, tol),
            Self::PowerLaw(f) => f.count_ln(log_bound, tol),
            Self::Explicit(e) => e.values.partition_point(|v| v.ln() <= log_bound + tol) as u64,
        }
    }

    /// `ln λ_k`; `+∞` past the end of a finite sequence.
    pub(crate) fn ln_value(&self, k: u64) -> f64 {
        match self {
            Self::AffinePower(f) => f.beta.value * f.base(k).ln(),
            Self::PowerLaw(f) => f.ln_value(k),
            Self::Explicit(e) => match e.values.get((k - 1) as usize) {
                Some(v) => v.ln(),
                None => f64::INFINITY,
            },
        }
    }

    /// `λ_k` as an exact integer. Only meaningful for integer-exact factors;
    /// `None` when the value overflows 128 bits.
    pub(crate) fn int_value(&self, k: u64) -> Option<u128> {
        match self {
            Self::AffinePower(f) => f.int_value(k),
            _ => None,
        }
    }

    /// Exact count of `k` with `λ_k ≤ bound`. Only for integer-exact factors.
    pub(crate) fn count_int(&self, bound: u128) -> u64 {
        match self {
            Self::AffinePower(f) => f.count_int(bound),
            _ => unreachable!("integer counting on a non-integer factor"),
        }
    }

    /// `λ_k` for `k ≥ 1`.
    pub fn kth_value(&self, k: u64) -> Result<f64> {
        if k == 0 {
            return Err(Error::InvalidParameter("sequence index starts at 1".into()));
        }
        match self {
            Self::AffinePower(f) => Ok(f.value(k)),
            Self::PowerLaw(f) => Ok((k as f64 / f.amplitude).powf(1.0 / f.alpha.value)),
            Self::Explicit(e) => {
                e.values
                    .get((k - 1) as usize)
                    .copied()
                    .ok_or(Error::IndexOutOfRange {
                        index: k,
                        len: e.values.len(),
                    })
            }
        }
    }

    /// Abscissa of convergence of `Σ λ_k^{−z}`.
    pub fn abscissa(&self) -> f64 {
        match self.growth_exponent() {
            Some(alpha) => alpha.value(),
            None => f64::NEG_INFINITY,
        }
    }

    /// Location of the single pole of the continued Dirichlet series.
    pub fn pole(&self) -> Option<f64> {
        self.growth_exponent().map(|a| a.value())
    }

    /// `Σ_k λ_k^{−z}` for `z` above the abscissa of convergence.
    pub fn dirichlet_series(&self, z: f64) -> Result<f64> {
        let abscissa = self.abscissa();
        if z == abscissa {
            return Err(Error::Pole(format!(
                "Dirichlet series has a pole at z = {z}"
            )));
        }
        if !(z > abscissa) {
            return Err(Error::Divergent { z, abscissa });
        }
        self.dirichlet_series_continued(z)
    }

    /// The Dirichlet series continued meromorphically through Hurwitz zeta.
    ///
    /// `(c(k−1)+b)^{−βz}` sums to `c^{−βz} ζ(βz; b/c)` and `(k/A)^{−z/α}` to
    /// `A^{z/α} ζ(z/α)`.
    pub(crate) fn dirichlet_series_continued(&self, z: f64) -> Result<f64> {
        let value = match self {
            Self::AffinePower(f) => {
                let s = f.beta.value * z;
                f.c.powf(-s) * hurwitz_zeta(s, f.b / f.c)?
            }
            Self::PowerLaw(f) => {
                let s = z / f.alpha.value;
                f.amplitude.powf(s) * hurwitz_zeta(s, 1.0)?
            }
            Self::Explicit(e) => e.values.iter().map(|v| v.powf(-z)).sum(),
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite(format!("Dirichlet series at z = {z}")))
        }
    }

    pub fn weyl_data(&self) -> Result<WeylData> {
        match self {
            Self::AffinePower(f) => WeylData::new(1.0 / f.c, 1.0 / f.beta.value, Some(0.0)),
            Self::PowerLaw(f) => WeylData::new(f.amplitude, f.alpha.value, Some(0.0)),
            Self::Explicit(_) => Err(Error::UnsupportedVariant(
                "explicit sequences have no asymptotic model".into(),
            )),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawSequence {
    AffinePower {
        c: f64,
        b: f64,
        beta: Exponent,
    },
    PowerLaw {
        #[serde(rename = "A")]
        amplitude: f64,
        alpha: Exponent,
    },
    Explicit {
        values: Vec<f64>,
    },
}

impl TryFrom<RawSequence> for SequenceSpec {
    type Error = Error;

    fn try_from(raw: RawSequence) -> Result<Self> {
        match raw {
            RawSequence::AffinePower { c, b, beta } => Self::affine_power_exact(c, b, beta),
            RawSequence::PowerLaw { amplitude, alpha } => Self::power_law_exact(amplitude, alpha),
            RawSequence::Explicit { values } => Self::explicit(values),
        }
    }
}

impl From<SequenceSpec> for RawSequence {
    fn from(spec: SequenceSpec) -> Self {
        match spec {
            SequenceSpec::AffinePower(f) => Self::AffinePower {
                c: f.c,
                b: f.b,
                beta: f.beta,
            },
            SequenceSpec::PowerLaw(f) => Self::PowerLaw {
                amplitude: f.amplitude,
                alpha: f.alpha,
            },
            SequenceSpec::Explicit(e) => Self::Explicit { values: e.values },
        }
    }
}
