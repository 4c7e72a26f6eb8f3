//! Spec fixtures shared by the benchmarks.

use wdc_core::{ProductSpec, SequenceSpec};

pub fn affine(c: f64, b: f64, beta: f64) -> SequenceSpec {
    SequenceSpec::affine_power(c, b, beta).expect("valid affine power")
}

/// Two identity factors: the divisor sum `Σ_{n≤λ} d(n)`.
pub fn divisor_pair() -> ProductSpec {
    ProductSpec::new(vec![affine(1.0, 1.0, 1.0), affine(1.0, 1.0, 1.0)]).expect("valid spec")
}

/// Harmonic-oscillator-like factors with exponents 1, 2 and 3.
pub fn hermite_triple() -> ProductSpec {
    ProductSpec::new(vec![
        affine(1.0, 1.0, 1.0),
        affine(1.0, 1.0, 2.0),
        affine(1.0, 1.0, 3.0),
    ])
    .expect("valid spec")
}

/// The divisor pair counted with logarithms instead of integers.
pub fn divisor_pair_float() -> ProductSpec {
    ProductSpec::with_mode(
        divisor_pair().factors().to_vec(),
        wdc_core::ArithmeticMode::FloatLog,
    )
    .expect("valid spec")
}
