//! Exact integer spectra: `λ_j(n, D) = Σ_{d ∈ D} c(j, n/d)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::icg::IcgSpec;
use crate::numtheory::{proper_divisors, ramanujan};

/// Eigenvalues `λ_0..λ_{n-1}` of one graph, in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub n: u64,
    pub divisors: Vec<u64>,
    #[serde(rename = "lambda")]
    pub values: Vec<i64>,
}

/// The smallest eigenvalue over `j = 1..n-1` and every index attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeastEigenvalue {
    pub value: i64,
    pub witnesses: Vec<u64>,
}

impl Spectrum {
    /// `λ_0`, the degree.
    pub fn index(&self) -> i64 {
        self.values[0]
    }

    pub fn least(&self) -> LeastEigenvalue {
        least_of(&self.values)
    }

    /// `λ_0 - min_{j ≥ 1} λ_j`.
    pub fn spread(&self) -> u64 {
        (self.index() - self.least().value) as u64
    }
}

pub(crate) fn least_of(values: &[i64]) -> LeastEigenvalue {
    let value = values[1..].iter().copied().min().expect("n >= 2");
    let witnesses = (1..values.len())
        .filter(|&j| values[j] == value)
        .map(|j| j as u64)
        .collect();
    LeastEigenvalue { value, witnesses }
}

pub fn eigenvalue(spec: &IcgSpec, j: u64) -> Result<i64> {
    let n = spec.n();
    if j >= n {
        return Err(Error::IndexOutOfRange { n, j });
    }
    Ok(spec.divisors().iter().map(|&d| ramanujan(j, n / d)).sum())
}

pub fn full_spectrum(spec: &IcgSpec) -> Spectrum {
    let n = spec.n();
    let values = (0..n)
        .map(|j| spec.divisors().iter().map(|&d| ramanujan(j, n / d)).sum())
        .collect();
    Spectrum {
        n,
        divisors: spec.divisors().to_vec(),
        values,
    }
}

pub fn least_eigenvalue(spec: &IcgSpec) -> LeastEigenvalue {
    full_spectrum(spec).least()
}

pub fn spread(spec: &IcgSpec) -> u64 {
    full_spectrum(spec).spread()
}

/// Spectrum of `ICG_n(D_n \ D)` from that of `ICG_n(D)`:
/// `μ_0 = n - 1 - λ_0` and `μ_j = -1 - λ_j` for `j ≥ 1`.
pub fn complement_spectrum(spec: &IcgSpec) -> Spectrum {
    let own = full_spectrum(spec);
    let n = spec.n() as i64;
    let values = own
        .values
        .iter()
        .enumerate()
        .map(|(j, &l)| if j == 0 { n - 1 - l } else { -1 - l })
        .collect();
    Spectrum {
        n: spec.n(),
        divisors: spec.complement().divisors().to_vec(),
        values,
    }
}

/// `c(j, n/d)` for every proper divisor `d` of a fixed `n` and every `j`.
///
/// Divisor `i` (ascending) occupies bit `i` of a subset mask, so the
/// spectrum of any `D ⊆ D_n` is a sum of rows.
#[derive(Debug, Clone)]
pub struct RamanujanTable {
    n: u64,
    divisors: Vec<u64>,
    rows: Vec<Vec<i64>>,
}

impl RamanujanTable {
    pub fn new(n: u64) -> Result<Self> {
        let divisors = proper_divisors(n)?;
        let rows = divisors
            .iter()
            .map(|&d| (0..n).map(|j| ramanujan(j, n / d)).collect())
            .collect();
        Ok(Self { n, divisors, rows })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn row(&self, index: usize) -> &[i64] {
        &self.rows[index]
    }

    pub fn spec_for_mask(&self, mask: u64) -> IcgSpec {
        IcgSpec::from_sorted_unchecked(self.n, self.subset(mask))
    }

    pub fn subset(&self, mask: u64) -> Vec<u64> {
        self.divisors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &d)| d)
            .collect()
    }

    pub fn mask_of(&self, divisors: &[u64]) -> Option<u64> {
        divisors.iter().try_fold(0u64, |mask, d| {
            self.divisors.binary_search(d).ok().map(|i| mask | 1 << i)
        })
    }

    /// Writes `λ_j` for the subset `mask` into `out` (length `n`).
    pub fn spectrum_into(&self, mask: u64, out: &mut [i64]) {
        out.fill(0);
        for (i, row) in self.rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (o, &c) in out.iter_mut().zip(row) {
                    *o += c;
                }
            }
        }
    }

    pub fn spectrum(&self, mask: u64) -> Spectrum {
        let mut values = vec![0; self.n as usize];
        self.spectrum_into(mask, &mut values);
        Spectrum {
            n: self.n,
            divisors: self.subset(mask),
            values,
        }
    }
}
