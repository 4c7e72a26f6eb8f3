//! Exact counting of tensor-product spectra.
//!
//! `N(λ) = #{(k_1, …, k_p) : λ_{k_1}^{(1)} ⋯ λ_{k_p}^{(p)} ≤ λ}` is computed
//! by depth-first enumeration ([`count_naive`]), by peeling one factor at a
//! time down to a closed-form single-factor count ([`count_recursive`]), by
//! the hyperbola method for two factors ([`count_hyperbola2`]), and for the
//! classical divisor sum `D(λ) = Σ_{n≤λ} d(n)` by [`dirichlet_divisor`].
//!
//! Two arithmetic modes are available. [`ArithmeticMode::IntegerExact`]
//! forms products of integer eigenvalues in 128-bit integers against
//! `⌊λ⌋`; [`ArithmeticMode::FloatLog`] compares `Σ log λ_{k_j}^{(j)}` with
//! `log λ` up to a relative tolerance of `1e-12`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{integer_bound, log_tolerance, SequenceSpec};

/// Default iteration budget of [`count_naive`].
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    IntegerExact,
    FloatLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    Naive,
    Recursive,
    Hyperbola2,
    DirichletFast,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Naive => "naive",
            Self::Recursive => "recursive",
            Self::Hyperbola2 => "hyperbola",
            Self::DirichletFast => "dirichlet",
        })
    }
}

/// The factors of `P_1 ⊗ … ⊗ P_p` together with the arithmetic mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpec {
    factors: Vec<SequenceSpec>,
    mode: ArithmeticMode,
}

impl ProductSpec {
    /// Uses exact integer arithmetic whenever every factor permits it.
    pub fn new(factors: Vec<SequenceSpec>) -> Result<Self> {
        let mode = if factors.iter().all(SequenceSpec::is_integer_exact) {
            ArithmeticMode::IntegerExact
        } else {
            ArithmeticMode::FloatLog
        };
        Self::with_mode(factors, mode)
    }

    pub fn with_mode(factors: Vec<SequenceSpec>, mode: ArithmeticMode) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter(
                "a product needs at least one factor".into(),
            ));
        }
        if mode == ArithmeticMode::IntegerExact
            && !factors.iter().all(SequenceSpec::is_integer_exact)
        {
            return Err(Error::InvalidParameter(
                "integer_exact mode needs every factor to be an affine_power with integer c, b and beta".into(),
            ));
        }
        Ok(Self { factors, mode })
    }

    pub fn factors(&self) -> &[SequenceSpec] {
        &self.factors
    }

    pub fn mode(&self) -> ArithmeticMode {
        self.mode
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountResult {
    pub lambda: f64,
    pub count: u64,
    pub method: CountMethod,
    pub mode: ArithmeticMode,
}

/// Arithmetic on eigenvalue bounds. A bound `B` stands for "product ≤ B";
/// dividing it by a factor value yields the bound for the remaining factors.
trait Domain {
    type Bound: Copy;

    /// `λ_k` of `factor`, or the domain's infinity past a finite sequence.
    fn value(&self, factor: &SequenceSpec, k: u64) -> Self::Bound;
    fn unit(&self) -> Self::Bound;
    fn mul(&self, a: Self::Bound, b: Self::Bound) -> Self::Bound;
    fn fits(&self, value: Self::Bound, bound: Self::Bound) -> bool;
    fn quotient(&self, bound: Self::Bound, value: Self::Bound) -> Self::Bound;
    /// Closed-form `#{k : λ_k ≤ bound}`.
    fn count(&self, factor: &SequenceSpec, bound: Self::Bound) -> u64;
}

/// Exact products of integer eigenvalues; the bound is `⌊λ⌋`.
struct IntegerDomain;

impl Domain for IntegerDomain {
    type Bound = u128;

    fn value(&self, factor: &SequenceSpec, k: u64) -> u128 {
        factor.int_value(k).unwrap_or(u128::MAX)
    }

    fn unit(&self) -> u128 {
        1
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        a.saturating_mul(b)
    }

    fn fits(&self, value: u128, bound: u128) -> bool {
        value <= bound
    }

    fn quotient(&self, bound: u128, value: u128) -> u128 {
        bound / value
    }

    fn count(&self, factor: &SequenceSpec, bound: u128) -> u64 {
        factor.count_int(bound)
    }
}

/// Sums of logarithms compared against `log λ` with a fixed tolerance.
struct LogDomain {
    tol: f64,
}

impl Domain for LogDomain {
    type Bound = f64;

    fn value(&self, factor: &SequenceSpec, k: u64) -> f64 {
        factor.ln_value(k)
    }

    fn unit(&self) -> f64 {
        0.0
    }

    fn mul(&self, a: f64, b: f64) -> f64 {
        a + b
    }

    fn fits(&self, value: f64, bound: f64) -> bool {
        value <= bound + self.tol
    }

    fn quotient(&self, bound: f64, value: f64) -> f64 {
        bound - value
    }

    fn count(&self, factor: &SequenceSpec, bound: f64) -> u64 {
        factor.count_ln(bound, self.tol)
    }
}

fn add_count(total: u64, n: u64) -> Result<u64> {
    total.checked_add(n).ok_or(Error::Overflow)
}

/// `suffix[i] = λ_1^{(i)} ⋯ λ_1^{(p)}`, with `suffix[p]` the unit.
fn suffix_minima<D: Domain>(d: &D, factors: &[SequenceSpec]) -> Vec<D::Bound> {
    let mut suffix = vec![d.unit(); factors.len() + 1];
    for i in (0..factors.len()).rev() {
        suffix[i] = d.mul(d.value(&factors[i], 1), suffix[i + 1]);
    }
    suffix
}

struct Enumeration<'a, D: Domain> {
    domain: &'a D,
    factors: &'a [SequenceSpec],
    suffix: Vec<D::Bound>,
    iterations: u64,
    budget: u64,
}

impl<D: Domain> Enumeration<'_, D> {
    fn walk(&mut self, depth: usize, bound: D::Bound) -> Result<u64> {
        let factor = &self.factors[depth];
        let rest = self.suffix[depth + 1];
        let last = depth + 1 == self.factors.len();
        let mut total = 0u64;
        for k in 1.. {
            self.iterations += 1;
            if self.iterations > self.budget {
                return Err(Error::BudgetExceeded {
                    budget: self.budget,
                });
            }
            let value = self.domain.value(factor, k);
            if !self.domain.fits(self.domain.mul(value, rest), bound) {
                break;
            }
            let n = if last {
                1
            } else {
                self.walk(depth + 1, self.domain.quotient(bound, value))?
            };
            total = add_count(total, n)?;
        }
        Ok(total)
    }
}

fn naive_in<D: Domain>(
    d: &D,
    factors: &[SequenceSpec],
    bound: D::Bound,
    budget: u64,
) -> Result<u64> {
    let suffix = suffix_minima(d, factors);
    if !d.fits(suffix[0], bound) {
        return Ok(0);
    }
    Enumeration {
        domain: d,
        factors,
        suffix,
        iterations: 0,
        budget,
    }
    .walk(0, bound)
}

/// `factors[0]` is evaluated in closed form; the remaining factors are
/// peeled from the back, `N(λ) = Σ_k Ñ(λ/λ_k)`.
fn recursive_in<D: Domain>(
    d: &D,
    factors: &[SequenceSpec],
    suffix: &[D::Bound],
    bound: D::Bound,
) -> Result<u64> {
    let p = factors.len();
    if p == 1 {
        return Ok(d.count(&factors[0], bound));
    }
    // suffix here holds prefix minima of the remaining factors.
    let inner_min = suffix[p - 1];
    let outer = &factors[p - 1];
    let mut total = 0u64;
    for k in 1.. {
        let value = d.value(outer, k);
        if !d.fits(d.mul(value, inner_min), bound) {
            break;
        }
        let n = recursive_in(d, &factors[..p - 1], suffix, d.quotient(bound, value))?;
        total = add_count(total, n)?;
    }
    Ok(total)
}

/// `prefix[i] = λ_1^{(0)} ⋯ λ_1^{(i−1)}`.
fn prefix_minima<D: Domain>(d: &D, factors: &[SequenceSpec]) -> Vec<D::Bound> {
    let mut prefix = vec![d.unit(); factors.len() + 1];
    for i in 0..factors.len() {
        prefix[i + 1] = d.mul(prefix[i], d.value(&factors[i], 1));
    }
    prefix
}

/// Orders factors so the fastest-growing count is the closed-form base case
/// and finite sequences are outer loops.
fn recursion_order(factors: &[SequenceSpec]) -> Vec<SequenceSpec> {
    let mut sorted = factors.to_vec();
    let key = |f: &SequenceSpec| f.growth_exponent().map_or(0.0, |a| a.value());
    sorted.sort_by(|a, b| key(b).total_cmp(&key(a)));
    sorted
}

fn hyperbola_in<D: Domain>(
    d: &D,
    f1: &SequenceSpec,
    f2: &SequenceSpec,
    bound: D::Bound,
    split: u64,
) -> Result<u64> {
    // Pairs with k1 ≤ split, counted along f2.
    let mut total = 0u64;
    for k1 in 1..=split {
        let v1 = d.value(f1, k1);
        if !d.fits(v1, bound) {
            break;
        }
        total = add_count(total, d.count(f2, d.quotient(bound, v1)))?;
    }
    // Pairs with k1 > split, counted along f1. This equals the symmetric sum
    // minus the split × k2-range rectangle, with the k2 range chosen on the
    // same comparison as the inner counts.
    for k2 in 1.. {
        let v2 = d.value(f2, k2);
        if !d.fits(v2, bound) {
            break;
        }
        let n1 = d.count(f1, d.quotient(bound, v2));
        if n1 <= split {
            break;
        }
        total = add_count(total, n1 - split)?;
    }
    Ok(total)
}

fn float_setup(lambda: f64) -> (LogDomain, f64) {
    let ln = lambda.ln();
    (
        LogDomain {
            tol: log_tolerance(ln),
        },
        ln,
    )
}

fn int_setup(lambda: f64) -> Result<u128> {
    integer_bound(lambda).ok_or(Error::Overflow)
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "λ must be positive and finite, got {lambda}"
        )))
    }
}

/// Depth-first enumeration of every lattice point, pruned by the minimum of
/// the remaining factors. Fails with [`Error::BudgetExceeded`] once more than
/// `budget` candidate tuples have been visited.
pub fn count_naive(spec: &ProductSpec, lambda: f64, budget: u64) -> Result<CountResult> {
    check_lambda(lambda)?;
    let count = match spec.mode {
        ArithmeticMode::IntegerExact => {
            naive_in(&IntegerDomain, &spec.factors, int_setup(lambda)?, budget)?
        }
        ArithmeticMode::FloatLog => {
            let (d, ln) = float_setup(lambda);
            naive_in(&d, &spec.factors, ln, budget)?
        }
    };
    Ok(CountResult {
        lambda,
        count,
        method: CountMethod::Naive,
        mode: spec.mode,
    })
}

/// Recursion on the number of factors down to the closed-form single-factor
/// count. Cost is the number of lattice points of the `p − 1` outer factors.
pub fn count_recursive(spec: &ProductSpec, lambda: f64) -> Result<CountResult> {
    check_lambda(lambda)?;
    let factors = recursion_order(&spec.factors);
    let count = match spec.mode {
        ArithmeticMode::IntegerExact => {
            let prefix = prefix_minima(&IntegerDomain, &factors);
            recursive_in(&IntegerDomain, &factors, &prefix, int_setup(lambda)?)?
        }
        ArithmeticMode::FloatLog => {
            let (d, ln) = float_setup(lambda);
            let prefix = prefix_minima(&d, &factors);
            recursive_in(&d, &factors, &prefix, ln)?
        }
    };
    Ok(CountResult {
        lambda,
        count,
        method: CountMethod::Recursive,
        mode: spec.mode,
    })
}

/// Two-factor hyperbola method, splitting `λ_{k_1}^{(1)} λ_{k_2}^{(2)} ≤ λ`
/// at `λ_{k_1}^{(1)} ≤ λ^{β_1/(β_1+β_2)}`. Uses exact integers when both
/// factors permit it.
pub fn count_hyperbola2(f1: &SequenceSpec, f2: &SequenceSpec, lambda: f64) -> Result<CountResult> {
    let mode = if f1.is_integer_exact() && f2.is_integer_exact() {
        ArithmeticMode::IntegerExact
    } else {
        ArithmeticMode::FloatLog
    };
    hyperbola_with_mode(f1, f2, lambda, mode)
}

fn hyperbola_with_mode(
    f1: &SequenceSpec,
    f2: &SequenceSpec,
    lambda: f64,
    mode: ArithmeticMode,
) -> Result<CountResult> {
    check_lambda(lambda)?;
    let (beta1, beta2) = match (f1, f2) {
        (SequenceSpec::AffinePower(a), SequenceSpec::AffinePower(b)) => {
            (a.beta().value(), b.beta().value())
        }
        _ => {
            return Err(Error::UnsupportedVariant(
                "the hyperbola method needs two affine_power factors".into(),
            ))
        }
    };
    let split = f1.count((lambda.ln() * beta1 / (beta1 + beta2)).exp());
    let count = match mode {
        ArithmeticMode::IntegerExact => {
            hyperbola_in(&IntegerDomain, f1, f2, int_setup(lambda)?, split)?
        }
        ArithmeticMode::FloatLog => {
            let (d, ln) = float_setup(lambda);
            hyperbola_in(&d, f1, f2, ln, split)?
        }
    };
    Ok(CountResult {
        lambda,
        count,
        method: CountMethod::Hyperbola2,
        mode,
    })
}

/// `D(λ) = Σ_{n≤λ} d(n) = 2 Σ_{n≤√λ} ⌊λ/n⌋ − ⌊√λ⌋²`, in integer arithmetic.
pub fn dirichlet_divisor(lambda: f64) -> Result<CountResult> {
    check_lambda(lambda)?;
    let n = u64::try_from(int_setup(lambda)?).map_err(|_| Error::Overflow)?;
    let root = n.isqrt();
    let sum: u128 = (1..=root).map(|i| u128::from(n / i)).sum();
    let total = 2 * sum - u128::from(root) * u128::from(root);
    Ok(CountResult {
        lambda,
        count: u64::try_from(total).map_err(|_| Error::Overflow)?,
        method: CountMethod::DirichletFast,
        mode: ArithmeticMode::IntegerExact,
    })
}

fn is_identity(f: &SequenceSpec) -> bool {
    matches!(f, SequenceSpec::AffinePower(a)
        if a.c() == 1.0 && a.b() == 1.0 && a.beta().as_integer() == Some(1))
}

/// Dispatches to the requested method, checking that it applies to `spec`.
pub fn count(
    spec: &ProductSpec,
    lambda: f64,
    method: CountMethod,
    budget: u64,
) -> Result<CountResult> {
    match method {
        CountMethod::Naive => count_naive(spec, lambda, budget),
        CountMethod::Recursive => count_recursive(spec, lambda),
        CountMethod::Hyperbola2 => match spec.factors() {
            [f1, f2] => hyperbola_with_mode(f1, f2, lambda, spec.mode),
            _ => Err(Error::InvalidParameter(
                "the hyperbola method needs exactly two factors".into(),
            )),
        },
        CountMethod::DirichletFast => match spec.factors() {
            [f1, f2] if is_identity(f1) && is_identity(f2) => dirichlet_divisor(lambda),
            _ => Err(Error::InvalidParameter(
                "the divisor fast path needs exactly two identity factors (c = b = beta = 1)"
                    .into(),
            )),
        },
    }
}
