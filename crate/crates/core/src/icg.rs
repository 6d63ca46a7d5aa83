//! The graph model. `ICG_n(D)` lives on `Z_n` with `a ~ b` iff
//! `gcd(a - b, n) ∈ D`, where `D` is a set of proper divisors of `n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, factorize, gcd, gcd_all, proper_divisors};

/// A validated order and divisor set.
///
/// Ordinary constructors reject an empty divisor set. The only way to get
/// one is [`IcgSpec::complement`], whose result for `K_n` is edgeless.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IcgSpec {
    n: u64,
    divisors: Vec<u64>,
}

impl IcgSpec {
    /// Sorts, dedups and validates `divisors` against `n`.
    pub fn new(n: u64, divisors: impl IntoIterator<Item = u64>) -> Result<Self> {
        let spec = Self::new_allow_empty(n, divisors)?;
        if spec.divisors.is_empty() {
            return Err(Error::EmptyDivisorSet);
        }
        Ok(spec)
    }

    /// Same as [`IcgSpec::new`] but accepts `D = ∅`.
    pub fn new_allow_empty(n: u64, divisors: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        let mut divisors: Vec<u64> = divisors.into_iter().collect();
        for &d in &divisors {
            if d < 1 || d >= n {
                return Err(Error::OutOfRange { n, d });
            }
            if !n.is_multiple_of(d) {
                return Err(Error::NonDivisor { n, d });
            }
        }
        divisors.sort_unstable();
        divisors.dedup();
        Ok(Self { n, divisors })
    }

    /// `D` given as already-sorted proper divisors; only checked in debug builds.
    pub(crate) fn from_sorted_unchecked(n: u64, divisors: Vec<u64>) -> Self {
        debug_assert!(divisors.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(divisors.iter().all(|&d| d < n && n.is_multiple_of(d)));
        Self { n, divisors }
    }

    /// The complete graph `K_n = ICG_n(D_n)`.
    pub fn complete(n: u64) -> Result<Self> {
        Ok(Self {
            n,
            divisors: proper_divisors(n)?,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.divisors.binary_search(&d).is_ok()
    }

    /// Vertex degree, `Σ_{d ∈ D} φ(n/d)`; this is also `λ_0`.
    pub fn degree(&self) -> u64 {
        self.divisors
            .iter()
            .map(|&d| euler_phi(self.n / d).expect("n/d >= 1"))
            .sum()
    }

    /// Connected iff `gcd(D) = 1`.
    pub fn is_connected(&self) -> bool {
        gcd_all(&self.divisors) == 1
    }

    /// `ICG_n(D_n \ D)`, which may have an empty divisor set.
    pub fn complement(&self) -> Self {
        let divisors = proper_divisors(self.n)
            .expect("n >= 2")
            .into_iter()
            .filter(|&d| !self.contains(d))
            .collect();
        Self::from_sorted_unchecked(self.n, divisors)
    }

    /// True iff `D_n \ D` is nonempty and has gcd 1.
    pub fn is_coconnected(&self) -> bool {
        let complement = self.complement();
        !complement.is_empty() && complement.is_connected()
    }

    pub fn symbol_set(&self) -> SymbolSet {
        let members = (1..self.n)
            .filter(|&k| self.contains(gcd(k, self.n)))
            .collect();
        SymbolSet { n: self.n, members }
    }
}

impl fmt::Display for IcgSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, d) in self.divisors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Parses `n:d1,d2,...` (ASCII digits, no whitespace).
impl FromStr for IcgSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let number = |tok: &str| -> Result<u64> {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                return Err(parse_err(&format!("{tok:?} is not a decimal integer")));
            }
            tok.parse::<u64>()
                .map_err(|_| parse_err(&format!("{tok:?} does not fit in 64 bits")))
        };
        let (n, rest) = s
            .split_once(':')
            .ok_or_else(|| parse_err("expected `n:d1,d2,...`"))?;
        let n = number(n)?;
        let divisors = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(',').map(number).collect::<Result<Vec<_>>>()?
        };
        IcgSpec::new(n, divisors)
    }
}

/// The symbol (connection set) `S = ⋃_{d ∈ D} G_n(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolSet {
    n: u64,
    members: Vec<u64>,
}

impl SymbolSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: u64) -> bool {
        self.members.binary_search(&s).is_ok()
    }
}

/// `G_n(d) = { 1 ≤ k ≤ n-1 : gcd(k, n) = d }`.
pub fn gcd_class(n: u64, d: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    if d < 1 || d >= n {
        return Err(Error::OutOfRange { n, d });
    }
    if !n.is_multiple_of(d) {
        return Err(Error::NonDivisor { n, d });
    }
    Ok((1..n).filter(|&k| gcd(k, n) == d).collect())
}

/// Proper divisors of `n` not divisible by its smallest prime `p₁`.
pub fn bar_d_p1(n: u64) -> Result<IcgSpec> {
    let divisors = proper_divisors(n)?;
    let p1 = smallest_prime(n)?;
    Ok(IcgSpec::from_sorted_unchecked(
        n,
        divisors.into_iter().filter(|d| d % p1 != 0).collect(),
    ))
}

/// The chain `{ p₁^b · d0 : 0 ≤ b ≤ α₁ }`, ascending. Contains `n` itself
/// when `d0 = n / p₁^α₁`.
pub fn divisor_chain(n: u64, d0: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    let fac = factorize(n)?;
    let p1 = fac.smallest().expect("n >= 2");
    if d0 == 0 || !n.is_multiple_of(d0) || d0.is_multiple_of(p1.prime) {
        return Err(Error::InvalidChainBase { n, d0 });
    }
    let mut chain = Vec::with_capacity(p1.exponent as usize + 1);
    let mut d = d0;
    for _ in 0..=p1.exponent {
        chain.push(d);
        d *= p1.prime;
    }
    Ok(chain)
}

pub(crate) fn smallest_prime(n: u64) -> Result<u64> {
    factorize(n)?
        .smallest()
        .map(|p| p.prime)
        .ok_or(Error::OrderTooSmall(n))
}
