//! Floating-point ground truth, independent of the Ramanujan-sum path.
//!
//! Nothing here calls [`crate::numtheory::ramanujan`]; the only shared
//! primitive is `gcd`. Spectra are plain cosine sums over the connection
//! set read off the first adjacency row.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::icg::IcgSpec;
use crate::numtheory::{gcd, proper_divisors};
use crate::spectrum::full_spectrum;

/// Residuals above this are treated as a broken oracle rather than a
/// tolerance question.
pub const DRIFT_LIMIT: f64 = 1e-3;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloatSpectrum {
    pub n: u64,
    pub values: Vec<f64>,
}

/// Row 0 of the circulant adjacency matrix: entry `s` is set iff
/// `gcd(s, n) ∈ D`. Entry 0 is always clear.
pub fn adjacency_row(spec: &IcgSpec) -> Vec<bool> {
    let n = spec.n();
    (0..n).map(|s| s != 0 && spec.contains(gcd(s, n))).collect()
}

fn cos_frac(num: u64, den: u64) -> f64 {
    (TAU * (num % den) as f64 / den as f64).cos()
}

/// `λ_j = Σ_{s ∈ S} cos(2π js / n)` with `S` taken from [`adjacency_row`].
pub fn dft_spectrum(spec: &IcgSpec) -> FloatSpectrum {
    let n = spec.n();
    let symbol: Vec<u64> = adjacency_row(spec)
        .iter()
        .enumerate()
        .filter(|(_, &bit)| bit)
        .map(|(s, _)| s as u64)
        .collect();
    let values = (0..n)
        .map(|j| symbol.iter().map(|&s| cos_frac(j * s, n)).sum())
        .collect();
    FloatSpectrum { n, values }
}

/// `Σ_{1 ≤ k ≤ n, gcd(k, n) = 1} cos(2π jk / n)`. For `n = 1` the single
/// unit `k = 1` gives 1.
///
/// Panics if `n == 0`.
pub fn ramanujan_direct(j: u64, n: u64) -> f64 {
    assert!(n >= 1, "ramanujan_direct requires n >= 1");
    (1..=n)
        .filter(|&k| gcd(k, n) == 1)
        .map(|k| cos_frac((j % n) * k, n))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OracleMismatch {
    Eigenvalue {
        n: u64,
        divisors: Vec<u64>,
        j: u64,
        exact: i64,
        approx: f64,
        residual: f64,
    },
    SymbolSet {
        n: u64,
        divisors: Vec<u64>,
        s: u64,
    },
}

impl std::fmt::Display for OracleMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleMismatch::Eigenvalue {
                n,
                divisors,
                j,
                exact,
                approx,
                residual,
            } => write!(
                f,
                "n = {n}, D = {divisors:?}, j = {j}: exact {exact}, dft {approx} (residual {residual:e})"
            ),
            OracleMismatch::SymbolSet { n, divisors, s } => write!(
                f,
                "n = {n}, D = {divisors:?}: symbol set and adjacency row disagree at s = {s}"
            ),
        }
    }
}

/// Compares the exact spectrum with [`dft_spectrum`] and the symbol set
/// with [`adjacency_row`]. Returns the largest residual on success, the
/// first offending index otherwise.
pub fn check_spec_against_oracle(spec: &IcgSpec, tol: f64) -> Result<f64, OracleMismatch> {
    let n = spec.n();
    let row = adjacency_row(spec);
    let symbol = spec.symbol_set();
    for s in 0..n {
        if row[s as usize] != symbol.contains(s) {
            return Err(OracleMismatch::SymbolSet {
                n,
                divisors: spec.divisors().to_vec(),
                s,
            });
        }
    }
    let exact = full_spectrum(spec);
    let approx = dft_spectrum(spec);
    let mut max_residual = 0f64;
    for (j, (&e, &a)) in exact.values.iter().zip(&approx.values).enumerate() {
        let residual = (e as f64 - a).abs();
        if !(residual < tol && residual < DRIFT_LIMIT) {
            return Err(OracleMismatch::Eigenvalue {
                n,
                divisors: spec.divisors().to_vec(),
                j: j as u64,
                exact: e,
                approx: a,
                residual,
            });
        }
        max_residual = max_residual.max(residual);
    }
    Ok(max_residual)
}

/// Draws `count` specs with `n` uniform in `n_range` and a uniformly random
/// nonempty divisor subset. Same seed, same sequence.
pub fn sample_specs(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<u64>,
) -> Vec<IcgSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_range.clone());
            let divisors = proper_divisors(n).expect("sample range starts at 2 or more");
            let mask = rng.gen_range(1u64..(1u64 << divisors.len()));
            let chosen = divisors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &d)| d);
            IcgSpec::new(n, chosen).expect("subset of proper divisors")
        })
        .collect()
}
