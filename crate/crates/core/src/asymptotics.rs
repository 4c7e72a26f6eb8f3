//! Asymptotic expansions of tensor-product counting functions.
//!
//! Every expansion is a finite sum of terms `C λ^a (log λ)^m` together with
//! an error order `λ^η (log λ)^μ`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{Exponent, SequenceSpec, WeylData};
use crate::zeta::{hurwitz_zeta, laurent_coefficients};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionTerm {
    #[serde(rename = "coeff")]
    pub coefficient: f64,
    pub power: f64,
    #[serde(rename = "logPower")]
    pub log_power: u32,
}

impl ExpansionTerm {
    pub fn new(coefficient: f64, power: f64, log_power: u32) -> Self {
        Self {
            coefficient,
            power,
            log_power,
        }
    }

    pub fn evaluate(&self, lambda: f64) -> f64 {
        let log = if self.log_power == 0 {
            1.0
        } else {
            lambda.ln().powi(self.log_power as i32)
        };
        self.coefficient * lambda.powf(self.power) * log
    }

    fn order(&self) -> (f64, u32) {
        (self.power, self.log_power)
    }
}

/// Whether the error order is an upper bound (`O`) or only asserts that
/// the remainder is of strictly smaller order (`o`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    BigO,
    LittleO,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TermExpansion {
    pub terms: Vec<ExpansionTerm>,
    pub error_exponent: f64,
    pub error_log_power: u32,
    pub error_kind: ErrorKind,
    /// False when the error exponent is a safe choice rather than the best
    /// one available.
    pub sharp: bool,
}

fn cmp_order(a: (f64, u32), b: (f64, u32)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

impl TermExpansion {
    /// Drops zero terms, sorts by decreasing order and checks that every
    /// term dominates the error. Under [`ErrorKind::LittleO`] a term of the
    /// same order as the error is allowed.
    pub fn new(
        terms: Vec<ExpansionTerm>,
        error_exponent: f64,
        error_log_power: u32,
        error_kind: ErrorKind,
        sharp: bool,
    ) -> Result<Self> {
        let mut terms: Vec<_> = terms.into_iter().filter(|t| t.coefficient != 0.0).collect();
        if let Some(t) = terms
            .iter()
            .find(|t| !t.coefficient.is_finite() || !t.power.is_finite())
        {
            return Err(Error::NonFinite(format!("expansion term {t:?}")));
        }
        terms.sort_by(|a, b| cmp_order(b.order(), a.order()));
        let error = (error_exponent, error_log_power);
        for t in &terms {
            let ok = match cmp_order(t.order(), error) {
                Ordering::Greater => true,
                Ordering::Equal => error_kind == ErrorKind::LittleO,
                Ordering::Less => false,
            };
            if !ok {
                return Err(Error::DominanceViolation(format!(
                    "term λ^{} log^{} λ does not dominate the error λ^{error_exponent} log^{error_log_power} λ",
                    t.power, t.log_power
                )));
            }
        }
        Ok(Self {
            terms,
            error_exponent,
            error_log_power,
            error_kind,
            sharp,
        })
    }

    pub fn evaluate(&self, lambda: f64) -> f64 {
        self.terms.iter().map(|t| t.evaluate(lambda)).sum()
    }

    pub fn leading(&self) -> Option<&ExpansionTerm> {
        self.terms.first()
    }
}

/// Principal part `Σ_q B_q (z−α)^{−q}` of `∏_j F_j(z)` at its rightmost pole.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BCoefficients {
    pub alpha: f64,
    pub nu: u32,
    /// `B_1..=B_ν`.
    pub b: Vec<f64>,
}

struct Factor<'a> {
    spec: &'a SequenceSpec,
    alpha: Exponent,
    weyl: WeylData,
}

fn factors(specs: &[SequenceSpec]) -> Result<Vec<Factor<'_>>> {
    if specs.is_empty() {
        return Err(Error::InvalidParameter("no factors".into()));
    }
    specs
        .iter()
        .map(|spec| {
            let weyl = spec.weyl_data()?;
            let alpha = spec.growth_exponent().ok_or_else(|| {
                Error::UnsupportedVariant("factor without growth exponent".into())
            })?;
            Ok(Factor { spec, alpha, weyl })
        })
        .collect()
}

/// The maximal growth exponent and the indices attaining it.
struct Grouping {
    alpha: Exponent,
    maximal: Vec<usize>,
    others: Vec<usize>,
}

fn group(factors: &[Factor<'_>]) -> Result<Grouping> {
    let mut alpha = factors[0].alpha;
    for f in &factors[1..] {
        if f.alpha.compare(&alpha)? == Ordering::Greater {
            alpha = f.alpha;
        }
    }
    let mut maximal = Vec::new();
    let mut others = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        if f.alpha.compare(&alpha)? == Ordering::Equal {
            maximal.push(i);
        } else {
            others.push(i);
        }
    }
    Ok(Grouping {
        alpha,
        maximal,
        others,
    })
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k)
        .map(|i| f64::from(n - i) / f64::from(i + 1))
        .product()
}

/// `A = ∏_{maximal} A_j · ∏_{others} F_j(α)`.
fn leading_amplitude(factors: &[Factor<'_>], g: &Grouping) -> Result<f64> {
    let mut a: f64 = g
        .maximal
        .iter()
        .map(|&i| factors[i].weyl.amplitude)
        .product();
    for &i in &g.others {
        a *= factors[i].spec.dirichlet_series(g.alpha.value())?;
    }
    Ok(a)
}

/// `N(λ) ∼ A α^{ν−1}/(ν−1)! · λ^α (log λ)^{ν−1}`, where `α` is the largest
/// growth exponent, `ν` its multiplicity, and the remaining factors enter
/// through their Dirichlet series at `α`.
///
/// Only the leading order is asserted, so the error is reported as `o` of
/// the leading term itself.
pub fn leading_term(specs: &[SequenceSpec]) -> Result<TermExpansion> {
    let factors = factors(specs)?;
    let g = group(&factors)?;
    let alpha = g.alpha.value();
    let nu = g.maximal.len() as u32;
    let a = leading_amplitude(&factors, &g)?;
    let coefficient = a * alpha.powi(nu as i32 - 1) / factorial(nu - 1);
    TermExpansion::new(
        vec![ExpansionTerm::new(coefficient, alpha, nu - 1)],
        alpha,
        nu - 1,
        ErrorKind::LittleO,
        false,
    )
}

/// `N(λ) = A_l F̃(α_l) λ^{α_l} + O(λ^η)` when factor `l` (1-based) grows
/// strictly faster than all others. `η` defaults to the factor's own
/// remainder exponent and is raised to the largest companion exponent.
pub fn dominant_remainder_expansion(
    specs: &[SequenceSpec],
    l: usize,
    eta: Option<f64>,
) -> Result<TermExpansion> {
    let factors = factors(specs)?;
    if l == 0 || l > factors.len() {
        return Err(Error::InvalidParameter(format!(
            "index {l} outside 1..={}",
            factors.len()
        )));
    }
    let dominant = &factors[l - 1];
    let alpha = dominant.alpha.value();
    let mut error = match eta.or(dominant.weyl.remainder_exponent) {
        Some(e) => e,
        None => {
            return Err(Error::InvalidParameter(format!(
                "factor {l} has no remainder exponent; supply one"
            )))
        }
    };
    if !(error < alpha) {
        return Err(Error::InvalidParameter(format!(
            "remainder exponent {error} must be below the growth exponent {alpha}"
        )));
    }
    let mut a = dominant.weyl.amplitude;
    for (j, f) in factors.iter().enumerate() {
        if j == l - 1 {
            continue;
        }
        if f.alpha.compare(&dominant.alpha)? != Ordering::Less {
            return Err(Error::DominanceViolation(format!(
                "factor {} grows at least as fast as factor {l}",
                j + 1
            )));
        }
        a *= f.spec.dirichlet_series(alpha)?;
        error = error.max(f.alpha.value());
    }
    TermExpansion::new(
        vec![ExpansionTerm::new(a, alpha, 0)],
        error,
        0,
        ErrorKind::BigO,
        true,
    )
}

/// `(d/dz)^m (λ^z/z)` at `z = α`, as coefficients of `λ^α (log λ)^i`.
fn derivative_coefficients(m: u32, alpha: f64) -> Vec<f64> {
    (0..=m)
        .map(|i| {
            let sign = if (m - i) % 2 == 0 { 1.0 } else { -1.0 };
            binomial(m, i) * sign * factorial(m - i) * alpha.powi(-((m - i + 1) as i32))
        })
        .collect()
}

/// `N(λ) = λ^α Σ_{i<ν} C_i (log λ)^i + O(λ^η)`, from the principal part of
/// `∏_j F_j(z)` at `α`. `B_q` is read off the Taylor data of
/// `(z−α)^ν ∏_j F_j(z)` and each `B_q (z−α)^{−q}` contributes the residue
/// of `B_q (z−α)^{−q} λ^z/z`.
///
/// Only the existence of some `η < α` is known; the reported `η` is the
/// midpoint between `α` and the next exponent in play (companion growth
/// exponents and the factors' own remainder exponents), and is marked not
/// sharp.
pub fn full_expansion(specs: &[SequenceSpec]) -> Result<(BCoefficients, TermExpansion)> {
    let factors = factors(specs)?;
    let g = group(&factors)?;
    let alpha = g.alpha.value();
    let nu = g.maximal.len() as u32;
    let laurent = laurent_coefficients(specs, alpha, nu, nu as usize - 1)?;
    // B_q = T_{ν−q}
    let b: Vec<f64> = (1..=nu)
        .map(|q| laurent.coeffs[(nu - q) as usize])
        .collect();
    let top = b[nu as usize - 1];
    if !top.is_finite()
        || top.abs() <= 1e-12 * b.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300)
    {
        return Err(Error::PoleOrderMismatch(format!(
            "B_{nu} vanishes at α = {alpha}"
        )));
    }

    let mut c = vec![0.0; nu as usize];
    for q in 1..=nu {
        let m = q - 1;
        let scale = b[m as usize] / factorial(m);
        for (i, d) in derivative_coefficients(m, alpha).into_iter().enumerate() {
            c[i] += scale * d;
        }
    }

    let next = g
        .others
        .iter()
        .map(|&i| factors[i].alpha.value())
        .chain(
            factors
                .iter()
                .map(|f| f.weyl.remainder_exponent.unwrap_or(0.0)),
        )
        .fold(f64::NEG_INFINITY, f64::max);
    let eta = 0.5 * (alpha + next.min(alpha));
    let terms = c
        .iter()
        .enumerate()
        .map(|(i, &ci)| ExpansionTerm::new(ci, alpha, i as u32))
        .collect();
    let expansion = TermExpansion::new(terms, eta, 0, ErrorKind::BigO, false)?;
    Ok((BCoefficients { alpha, nu, b }, expansion))
}

fn check_hermite(c: &[f64], b: &[f64], beta: &[f64]) -> Result<()> {
    if c.is_empty() || c.len() != b.len() || c.len() != beta.len() {
        return Err(Error::InvalidParameter(
            "c, b and beta must be nonempty and of equal length".into(),
        ));
    }
    if c.iter()
        .chain(b)
        .chain(beta)
        .any(|x| !(x.is_finite() && *x > 0.0))
    {
        return Err(Error::InvalidParameter(
            "c, b and beta must be positive".into(),
        ));
    }
    if beta.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::HypothesisViolation(format!(
            "beta must be strictly increasing, got {beta:?}"
        )));
    }
    Ok(())
}

/// All `p` terms `A_j λ^{1/β_j}` of the product of the sequences
/// `(c_j(k−1)+b_j)^{β_j}`, with
/// `A_j = c_j^{−1} ∏_{ν≠j} c_ν^{−β_ν/β_j} ζ(β_ν/β_j; b_ν/c_ν)`, whether or
/// not they exceed the error order.
pub fn hermite_coefficients(c: &[f64], b: &[f64], beta: &[f64]) -> Result<Vec<ExpansionTerm>> {
    check_hermite(c, b, beta)?;
    (0..c.len())
        .map(|j| {
            let mut a = 1.0 / c[j];
            for v in (0..c.len()).filter(|&v| v != j) {
                let s = beta[v] / beta[j];
                assert!(s != 1.0, "strictly increasing exponents never give ratio 1");
                a *= c[v].powf(-s) * hurwitz_zeta(s, b[v] / c[v])?;
            }
            Ok(ExpansionTerm::new(a, 1.0 / beta[j], 0))
        })
        .collect()
}

/// `N(λ) = Σ_j A_j λ^{1/β_j} + O(λ^{(p−1)/(β_1+…+β_p)})` for strictly
/// increasing `β`. Terms whose order does not exceed the error, that is
/// `(p−1)β_j ≥ Σβ`, are absorbed.
pub fn hermite_expansion(c: &[f64], b: &[f64], beta: &[f64]) -> Result<TermExpansion> {
    let all = hermite_coefficients(c, b, beta)?;
    let p = beta.len() as f64;
    let total: f64 = beta.iter().sum();
    let error = (p - 1.0) / total;
    let kept = all
        .into_iter()
        .zip(beta)
        .filter(|(_, &bj)| (p - 1.0) * bj < total * (1.0 - 1e-12))
        .map(|(t, _)| t)
        .collect();
    TermExpansion::new(kept, error, 0, ErrorKind::BigO, false)
}

/// The two coefficients of the two-factor hyperbola expansion,
/// `ζ(β₂/β₁; b₂/c₂)/(c₁ c₂^{β₂/β₁})` and `ζ(β₁/β₂; b₁/c₁)/(c₂ c₁^{β₁/β₂})`.
pub fn two_factor_hyperbola_coefficients(
    c: [f64; 2],
    b: [f64; 2],
    beta: [f64; 2],
) -> Result<[f64; 2]> {
    check_hermite(&c, &b, &beta)?;
    let r = beta[1] / beta[0];
    let first = hurwitz_zeta(r, b[1] / c[1])? / (c[0] * c[1].powf(r));
    let second = hurwitz_zeta(1.0 / r, b[0] / c[0])? / (c[1] * c[0].powf(1.0 / r));
    Ok([first, second])
}

/// Phase-space volume `(2π)^{−n} vol{z ∈ ℝ^{2n} : κ|z|^m ≤ 1}`, the Weyl
/// coefficient of an operator with radial symbol `κ|z|^m`.
pub fn weyl_coefficient_radial(n: u32, m: f64, kappa: f64) -> Result<f64> {
    if n == 0 || !(m > 0.0) || !(kappa > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need n ≥ 1, m > 0, κ > 0; got n = {n}, m = {m}, κ = {kappa}"
        )));
    }
    let n_f = f64::from(n);
    // π^n/n! over (2π)^n
    Ok(0.5f64.powi(n as i32) / factorial(n) * kappa.powf(-2.0 * n_f / m))
}

/// The `k`-th eigenvalue `μ_k` of a sequence whose counting function is
/// `N(μ) ∼ r μ^α (log μ)^s`:
/// `μ_k ∼ (α^s/r)^{1/α} k^{1/α} (log k)^{−s/α}`.
pub fn eigenvalue_from_counting(r: f64, alpha: f64, s: f64, k: u64) -> Result<f64> {
    if !(r > 0.0) || !(alpha > 0.0) || !(s >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need r > 0, α > 0, s ≥ 0; got r = {r}, α = {alpha}, s = {s}"
        )));
    }
    if k == 0 || (k == 1 && s > 0.0) {
        return Err(Error::Domain(format!(
            "log k must be positive for s > 0, got k = {k}"
        )));
    }
    let kf = k as f64;
    let log_factor = if s == 0.0 {
        1.0
    } else {
        kf.ln().powf(-s / alpha)
    };
    Ok((alpha.powf(s) / r).powf(1.0 / alpha) * kf.powf(1.0 / alpha) * log_factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::euler_gamma_from_harmonic;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const ZETA_2: f64 = 1.644_934_066_848_226_4;
    const ZETA_3: f64 = 1.202_056_903_159_594_3;
    const ZETA_HALF: f64 = -1.460_354_508_809_586_8;
    const ZETA_3_HALVES: f64 = 2.612_375_348_685_488;

    fn ap(c: f64, b: f64, beta: f64) -> SequenceSpec {
        SequenceSpec::affine_power(c, b, beta).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn single(e: &TermExpansion) -> ExpansionTerm {
        assert_eq!(e.terms.len(), 1, "{e:?}");
        e.terms[0]
    }

    #[test]
    fn leading_term_examples() {
        let id = ap(1.0, 1.0, 1.0);
        let sq = ap(1.0, 1.0, 2.0);
        let t = single(&leading_term(&[id.clone(), id.clone()]).unwrap());
        assert!(close(t.coefficient, 1.0, 1e-15));
        assert_eq!((t.power, t.log_power), (1.0, 1));

        let t = single(&leading_term(&[id.clone(), sq.clone()]).unwrap());
        assert!(close(t.coefficient, ZETA_2, 1e-13));
        assert_eq!((t.power, t.log_power), (1.0, 0));

        let e = leading_term(&[id.clone(), id, sq]).unwrap();
        let t = single(&e);
        assert!(close(t.coefficient, ZETA_2, 1e-13));
        assert_eq!((t.power, t.log_power), (1.0, 1));
        assert_eq!(e.error_kind, ErrorKind::LittleO);
        assert_eq!((e.error_exponent, e.error_log_power), (1.0, 1));
    }

    #[test]
    fn leading_term_with_triple_multiplicity() {
        let id = ap(1.0, 1.0, 1.0);
        let t = single(&leading_term(&[id.clone(), id.clone(), id]).unwrap());
        assert!(close(t.coefficient, 0.5, 1e-15));
        assert_eq!(t.log_power, 2);
        // Three factors of √k-growth: α = 1/2, A = 1, coefficient α²/2!.
        let h = ap(1.0, 1.0, 2.0);
        let t = single(&leading_term(&[h.clone(), h.clone(), h]).unwrap());
        assert!(close(t.coefficient, 0.125, 1e-15));
    }

    #[test]
    fn leading_term_refuses_near_ties() {
        let a = ap(1.0, 1.0, 1.0);
        let b = SequenceSpec::power_law(1.0, 1.0 + 1e-13).unwrap();
        assert!(matches!(
            leading_term(&[a, b]),
            Err(Error::AmbiguousMultiplicity(..))
        ));
        let e = SequenceSpec::explicit(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            leading_term(&[e]),
            Err(Error::UnsupportedVariant(_))
        ));
    }

    #[test]
    fn exact_exponents_group_exactly() {
        let a =
            SequenceSpec::affine_power_exact(1.0, 1.0, Exponent::rational(3, 2).unwrap()).unwrap();
        let b = SequenceSpec::power_law_exact(1.0, Exponent::rational(2, 3).unwrap()).unwrap();
        let t = single(&leading_term(&[a, b]).unwrap());
        assert_eq!(t.log_power, 1);
    }

    #[test]
    fn dominant_examples() {
        let specs = [ap(1.0, 1.0, 1.0), ap(1.0, 1.0, 2.0), ap(1.0, 1.0, 3.0)];
        let e = dominant_remainder_expansion(&specs, 1, None).unwrap();
        let t = single(&e);
        assert!(close(t.coefficient, ZETA_2 * ZETA_3, 1e-12));
        assert_eq!(e.error_exponent, 0.5);

        let specs = [
            SequenceSpec::power_law(1.0, 1.0).unwrap(),
            SequenceSpec::power_law(1.0, 0.5).unwrap(),
        ];
        let direct: f64 = (1..=2_000_000u64)
            .rev()
            .map(|k| (k as f64).powi(-2))
            .sum::<f64>()
            + 1.0 / 2_000_000.5;
        let e = dominant_remainder_expansion(&specs, 1, None).unwrap();
        assert!(close(single(&e).coefficient, direct, 1e-12));
        assert_eq!(e.error_exponent, 0.5);

        let e = dominant_remainder_expansion(&[ap(2.0, 1.0, 1.0)], 1, None).unwrap();
        assert!(close(single(&e).coefficient, 0.5, 1e-15));
        assert_eq!(e.error_exponent, 0.0);
    }

    #[test]
    fn dominant_validates() {
        let id = ap(1.0, 1.0, 1.0);
        assert!(matches!(
            dominant_remainder_expansion(&[id.clone(), id.clone()], 1, None),
            Err(Error::DominanceViolation(_))
        ));
        assert!(dominant_remainder_expansion(&[id.clone(), ap(1.0, 1.0, 2.0)], 2, None).is_err());
        assert!(dominant_remainder_expansion(std::slice::from_ref(&id), 2, None).is_err());
        assert!(dominant_remainder_expansion(std::slice::from_ref(&id), 1, Some(1.0)).is_err());
        let e = dominant_remainder_expansion(&[id, ap(1.0, 1.0, 3.0)], 1, Some(0.2)).unwrap();
        assert_eq!(e.error_exponent, 1.0 / 3.0);
    }

    #[test]
    fn full_expansion_reproduces_divisor_terms() {
        let id = ap(1.0, 1.0, 1.0);
        let (b, e) = full_expansion(&[id.clone(), id]).unwrap();
        let gamma = euler_gamma_from_harmonic(100_000);
        assert_eq!(b.nu, 2);
        assert!((b.b[1] - 1.0).abs() < 1e-6);
        assert!((b.b[0] - 2.0 * gamma).abs() < 1e-6);
        assert_eq!(e.terms.len(), 2);
        assert_eq!((e.terms[0].power, e.terms[0].log_power), (1.0, 1));
        assert!((e.terms[0].coefficient - 1.0).abs() < 1e-8);
        assert!((e.terms[1].coefficient - (2.0 * gamma - 1.0)).abs() < 1e-8);
        assert_eq!(e.error_exponent, 0.5);
        assert!(!e.sharp);
    }

    #[test]
    fn full_expansion_simple_cases() {
        let (b, e) = full_expansion(&[ap(1.0, 1.0, 1.0)]).unwrap();
        assert!((b.b[0] - 1.0).abs() < 1e-9);
        let t = single(&e);
        assert_eq!((t.power, t.log_power), (1.0, 0));

        let (_, e) = full_expansion(&[ap(1.0, 1.0, 1.0), ap(1.0, 1.0, 2.0)]).unwrap();
        assert!((single(&e).coefficient - ZETA_2).abs() < 1e-8);
        assert_eq!(e.error_exponent, 0.75);
    }

    #[test]
    fn derivative_formula() {
        // d/dz (λ^z/z) = λ^z (log λ/z − 1/z²); second derivative adds 2/z³.
        let a = 1.7;
        let d1 = derivative_coefficients(1, a);
        assert!(close(d1[0], -1.0 / (a * a), 1e-15) && close(d1[1], 1.0 / a, 1e-15));
        let d2 = derivative_coefficients(2, a);
        assert!(close(d2[0], 2.0 / a.powi(3), 1e-15));
        assert!(close(d2[1], -2.0 / (a * a), 1e-15));
        assert!(close(d2[2], 1.0 / a, 1e-15));
    }

    #[test]
    fn top_coefficient_matches_leading_amplitude() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let nu = rng.random_range(1..=3);
            let beta = [1.0, 2.0, 0.5][rng.random_range(0..3)];
            let mut specs: Vec<_> = (0..nu)
                .map(|_| {
                    ap(
                        rng.random_range(1..=4) as f64,
                        rng.random_range(1..=4) as f64,
                        beta,
                    )
                })
                .collect();
            if rng.random_bool(0.5) {
                specs.push(ap(1.0, rng.random_range(1..=3) as f64, 3.0 * beta));
            }
            let (b, _) = full_expansion(&specs).unwrap();
            let factors = factors(&specs).unwrap();
            let g = group(&factors).unwrap();
            let a = leading_amplitude(&factors, &g).unwrap();
            let want = a * (1.0 / beta).powi(nu);
            let got = b.b[nu as usize - 1];
            assert!(
                ((got - want) / want).abs() < 1e-6,
                "{specs:?}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn hermite_examples() {
        let e = hermite_expansion(&[1.0, 1.0], &[1.0, 1.0], &[1.0, 2.0]).unwrap();
        assert_eq!(e.terms.len(), 2);
        assert!(close(e.terms[0].coefficient, ZETA_2, 1e-13));
        assert_eq!(e.terms[0].power, 1.0);
        assert!(close(e.terms[1].coefficient, ZETA_HALF, 1e-13));
        assert_eq!(e.terms[1].power, 0.5);
        assert!(close(e.error_exponent, 1.0 / 3.0, 1e-15));

        let e = hermite_expansion(&[1.0; 3], &[1.0; 3], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(e.terms.len(), 2);
        assert!(close(e.terms[0].coefficient, ZETA_2 * ZETA_3, 1e-12));
        assert!(close(
            e.terms[1].coefficient,
            ZETA_HALF * ZETA_3_HALVES,
            1e-12
        ));
        assert!(close(e.error_exponent, 1.0 / 3.0, 1e-15));
        assert_eq!(
            hermite_coefficients(&[1.0; 3], &[1.0; 3], &[1.0, 2.0, 3.0])
                .unwrap()
                .len(),
            3
        );

        let e = hermite_expansion(&[1.0], &[1.0], &[2.0]).unwrap();
        assert_eq!(single(&e), ExpansionTerm::new(1.0, 0.5, 0));
        assert_eq!(e.error_exponent, 0.0);
    }

    #[test]
    fn hermite_requires_increasing_exponents() {
        for beta in [[2.0, 1.0], [1.0, 1.0]] {
            assert!(matches!(
                hermite_expansion(&[1.0; 2], &[1.0; 2], &beta),
                Err(Error::HypothesisViolation(_))
            ));
        }
        assert!(hermite_expansion(&[1.0; 2], &[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn hermite_agrees_with_two_factor_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let c = [rng.random_range(0.3..4.0), rng.random_range(0.3..4.0)];
            let b = [rng.random_range(0.3..4.0), rng.random_range(0.3..4.0)];
            let b1: f64 = rng.random_range(0.3..3.0);
            let beta = [b1, b1 + rng.random_range(0.05..3.0)];
            let terms = hermite_coefficients(&c, &b, &beta).unwrap();
            let direct = two_factor_hyperbola_coefficients(c, b, beta).unwrap();
            for (t, d) in terms.iter().zip(direct) {
                assert!(close(t.coefficient, d, 1e-10), "{t:?} vs {d}");
            }
        }
    }

    #[test]
    fn all_routes_share_the_leading_term() {
        let specs = [ap(1.0, 1.0, 1.0), ap(1.0, 1.0, 2.0)];
        let lead = single(&leading_term(&specs).unwrap()).coefficient;
        let dom = single(&dominant_remainder_expansion(&specs, 1, None).unwrap()).coefficient;
        let full = full_expansion(&specs).unwrap().1.terms[0].coefficient;
        let herm = hermite_expansion(&[1.0; 2], &[1.0; 2], &[1.0, 2.0])
            .unwrap()
            .terms[0]
            .coefficient;
        for x in [dom, full, herm] {
            assert!(close(x, lead, 1e-8), "{x} vs {lead}");
        }
    }

    #[test]
    fn weyl_radial_examples() {
        assert!(close(
            weyl_coefficient_radial(1, 2.0, 0.5).unwrap(),
            1.0,
            1e-15
        ));
        assert!(close(
            weyl_coefficient_radial(1, 2.0, 1.0).unwrap(),
            0.5,
            1e-15
        ));
        assert!(close(
            weyl_coefficient_radial(2, 2.0, 1.0).unwrap(),
            0.125,
            1e-15
        ));
        assert!(weyl_coefficient_radial(0, 2.0, 1.0).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        assert!(close(
            eigenvalue_from_counting(1.0, 1.0, 0.0, 100).unwrap(),
            100.0,
            1e-14
        ));
        assert!(close(
            eigenvalue_from_counting(1.0, 2.0, 0.0, 100).unwrap(),
            10.0,
            1e-14
        ));
        let k = 1.0f64.exp().powi(10).round() as u64;
        let want = k as f64 / (k as f64).ln();
        assert!(close(
            eigenvalue_from_counting(1.0, 1.0, 1.0, k).unwrap(),
            want,
            1e-14
        ));
        assert!(matches!(
            eigenvalue_from_counting(1.0, 1.0, 1.0, 1),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn eigenvalue_inverts_counting() {
        let spec = SequenceSpec::power_law(2.0, 1.5).unwrap();
        for k in 1..=10_000u64 {
            let mu = eigenvalue_from_counting(2.0, 1.5, 0.0, k).unwrap();
            assert!(spec.count(mu).abs_diff(k) <= 1, "k = {k}");
        }
    }

    #[test]
    fn expansion_validates_dominance() {
        let bad = TermExpansion::new(
            vec![ExpansionTerm::new(1.0, 0.3, 0)],
            0.5,
            0,
            ErrorKind::BigO,
            true,
        );
        assert!(matches!(bad, Err(Error::DominanceViolation(_))));
        let e = TermExpansion::new(
            vec![
                ExpansionTerm::new(0.0, 2.0, 0),
                ExpansionTerm::new(1.0, 0.5, 0),
                ExpansionTerm::new(2.0, 1.0, 0),
            ],
            0.25,
            0,
            ErrorKind::BigO,
            true,
        )
        .unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.terms[0].power, 1.0);
        assert!(close(e.evaluate(4.0), 10.0, 1e-15));
    }
}
