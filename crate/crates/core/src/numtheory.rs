//! Elementary number theory on `u64`: factorization, Euler's totient,
//! the Möbius function, proper divisors, valuations and the Ramanujan sum
//! `c(j, n) = μ(t)·φ(n)/φ(t)` with `t = n / gcd(n, j)`.
//!
//! Everything here is exact integer arithmetic. Factorization is plain
//! trial division, which is more than enough for the orders the rest of
//! the crate works with.

use serde::Serialize;

use crate::error::{Error, Result};

/// Greatest common divisor, with `gcd(n, 0) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `gcd` folded over a slice. The empty slice yields 0.
pub fn gcd_all(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| gcd(acc, v))
}

/// One prime-power factor `prime^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

/// Prime factorization of `n`, primes in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// The smallest prime factor and its exponent, `(p₁, α₁)`. `None` for `n = 1`.
    pub fn smallest(&self) -> Option<PrimePower> {
        self.factors.first().copied()
    }

    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [PrimePower { exponent: 1, .. }])
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn is_composite(&self) -> bool {
        self.n > 1 && !self.is_prime()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|f| f.exponent == 1)
    }

    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| f.prime.pow(f.exponent - 1) * (f.prime - 1))
            .product()
    }

    pub fn moebius(&self) -> i64 {
        if !self.is_squarefree() {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut exponent = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                exponent += 1;
            }
            factors.push(PrimePower { prime: p, exponent });
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push(PrimePower {
            prime: rest,
            exponent: 1,
        });
    }
    Ok(Factorization { n, factors })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.phi())
}

pub fn moebius(n: u64) -> Result<i64> {
    Ok(factorize(n)?.moebius())
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.is_prime()).unwrap_or(false)
}

/// All divisors `d` of `n` with `1 ≤ d < n`, ascending.
pub fn proper_divisors(n: u64) -> Result<Vec<u64>> {
    if n <= 1 {
        return Err(Error::OrderTooSmall(n));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            let q = n / d;
            if q != d && q != n {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// Largest `α` with `p^α | n`.
pub fn p_adic_valuation(p: u64, n: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    Ok(valuation_unchecked(p, n))
}

pub(crate) fn valuation_unchecked(p: u64, mut n: u64) -> u32 {
    let mut alpha = 0;
    while n.is_multiple_of(p) {
        n /= p;
        alpha += 1;
    }
    alpha
}

/// `t_{n,j} = n / gcd(n, j)`.
///
/// Panics if `n == 0`.
pub fn t_index(n: u64, j: u64) -> u64 {
    assert!(n >= 1, "t_index requires n >= 1");
    n / gcd(n, j)
}

/// Ramanujan sum `c(j, n)`: the sum of the `j`-th powers of the primitive
/// `n`-th roots of unity. `j` is reduced mod `n` first.
///
/// Panics if `n == 0`.
pub fn ramanujan(j: u64, n: u64) -> i64 {
    assert!(n >= 1, "ramanujan requires n >= 1");
    let t = t_index(n, j % n);
    let ft = factorize(t).expect("t >= 1");
    let mu = ft.moebius();
    if mu == 0 {
        return 0;
    }
    let phi_n = euler_phi(n).expect("n >= 1");
    mu * (phi_n / ft.phi()) as i64
}
