//! Exhaustive search over divisor sets and closed-form checks of the
//! extremal least-eigenvalue and spread results.
//!
//! A subset `D ⊆ D_n` is a bit mask over the ascending proper divisors of
//! `n` (see [`RamanujanTable`]). Searches walk every mask in parallel and
//! merge partial optima; achiever lists are sorted at the end, so results
//! do not depend on the number of worker threads.

use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::icg::{bar_d_p1, divisor_chain, IcgSpec};
use crate::numtheory::{
    euler_phi, factorize, gcd, proper_divisors, valuation_unchecked, Factorization,
};
use crate::spectrum::{least_of, RamanujanTable};

/// Default cap on the number of subsets a single search may visit.
pub const DEFAULT_MAX_SUBSETS: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_subsets: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_subsets: DEFAULT_MAX_SUBSETS,
        }
    }
}

impl SearchLimits {
    fn check(&self, n: u64, count: usize) -> Result<()> {
        let subsets = if count >= 64 { u64::MAX } else { 1u64 << count };
        if subsets > self.max_subsets {
            return Err(Error::TooManyDivisors {
                n,
                count,
                subsets,
                limit: self.max_subsets,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GraphClass {
    All,
    Connected,
    ConnectedCoconnected,
    #[serde(rename = "CONNECTED_EXCLUDING_BARDP1")]
    ConnectedExcludingBarDp1,
}

impl GraphClass {
    pub fn contains(&self, spec: &IcgSpec) -> bool {
        match self {
            GraphClass::All => !spec.is_empty(),
            GraphClass::Connected => spec.is_connected(),
            GraphClass::ConnectedCoconnected => spec.is_connected() && spec.is_coconnected(),
            GraphClass::ConnectedExcludingBarDp1 => {
                spec.is_connected()
                    && bar_d_p1(spec.n())
                        .map(|bar| bar.divisors() != spec.divisors())
                        .unwrap_or(false)
            }
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::All => "ALL",
            GraphClass::Connected => "CONNECTED",
            GraphClass::ConnectedCoconnected => "CONNECTED_COCONNECTED",
            GraphClass::ConnectedExcludingBarDp1 => "CONNECTED_EXCLUDING_BARDP1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Objective {
    MinLeastEig,
    MaxSpread,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::MinLeastEig => "MIN_LEAST_EIG",
            Objective::MaxSpread => "MAX_SPREAD",
        })
    }
}

/// A divisor set together with the indices `j ≥ 1` at which its least
/// eigenvalue is attained.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Achiever {
    pub divisors: Vec<u64>,
    pub witness_j: Vec<u64>,
}

impl fmt::Display for Achiever {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D={:?} J={:?}", self.divisors, self.witness_j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: u64,
    pub class: GraphClass,
    pub objective: Objective,
    pub value: Option<i64>,
    pub class_empty: bool,
    pub achievers: Vec<Achiever>,
}

/// Precomputed view of `D_n` as bit masks, shared by the class predicates.
struct Lattice {
    table: RamanujanTable,
    full: u64,
    bar: u64,
}

impl Lattice {
    fn new(n: u64, limits: &SearchLimits) -> Result<Self> {
        limits.check(n, proper_divisors(n)?.len())?;
        let table = RamanujanTable::new(n)?;
        let full = (1u64 << table.divisors().len()) - 1;
        let bar = table
            .mask_of(bar_d_p1(n)?.divisors())
            .expect("bar_d_p1 is a subset of D_n");
        Ok(Self { table, full, bar })
    }

    fn gcd_of(&self, mask: u64) -> u64 {
        self.table
            .divisors()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0, |g, (_, &d)| gcd(g, d))
    }

    fn admits(&self, class: GraphClass, mask: u64) -> bool {
        match class {
            GraphClass::All => mask != 0,
            GraphClass::Connected => self.gcd_of(mask) == 1,
            GraphClass::ConnectedCoconnected => {
                let rest = self.full & !mask;
                self.gcd_of(mask) == 1 && rest != 0 && self.gcd_of(rest) == 1
            }
            GraphClass::ConnectedExcludingBarDp1 => mask != self.bar && self.gcd_of(mask) == 1,
        }
    }

    fn masks(&self) -> RangeInclusive<u64> {
        1..=self.full
    }
}

/// Every nonempty `D ⊆ D_n` in `class`, in increasing mask order.
pub fn enumerate_class(
    n: u64,
    class: GraphClass,
    limits: &SearchLimits,
) -> Result<impl Iterator<Item = IcgSpec>> {
    let lattice = Lattice::new(n, limits)?;
    let masks: Vec<u64> = lattice
        .masks()
        .filter(|&m| lattice.admits(class, m))
        .collect();
    let table = lattice.table;
    Ok(masks.into_iter().map(move |m| table.spec_for_mask(m)))
}

#[derive(Default)]
struct Best {
    value: Option<i64>,
    achievers: Vec<Achiever>,
}

impl Best {
    fn offer(mut self, value: i64, make: impl FnOnce() -> Achiever) -> Self {
        match self.value {
            Some(v) if v < value => {}
            Some(v) if v == value => self.achievers.push(make()),
            _ => {
                self.value = Some(value);
                self.achievers.clear();
                self.achievers.push(make());
            }
        }
        self
    }

    fn merge(mut self, mut other: Self) -> Self {
        match (self.value, other.value) {
            (None, _) => other,
            (_, None) => self,
            (Some(a), Some(b)) if a < b => self,
            (Some(a), Some(b)) if a > b => other,
            _ => {
                self.achievers.append(&mut other.achievers);
                self
            }
        }
    }
}

/// Exact optimum of `objective` over `class` with every achieving set.
///
/// Values are minimized internally; `MAX_SPREAD` negates the spread on
/// the way in and back out.
pub fn extremal_search(
    n: u64,
    class: GraphClass,
    objective: Objective,
    limits: &SearchLimits,
) -> Result<ExtremalRecord> {
    let lattice = Lattice::new(n, limits)?;
    let len = n as usize;
    let best = lattice
        .masks()
        .into_par_iter()
        .filter(|&m| lattice.admits(class, m))
        .fold(
            || (Best::default(), vec![0i64; len]),
            |(best, mut buf), mask| {
                lattice.table.spectrum_into(mask, &mut buf);
                let least = least_of(&buf);
                let key = match objective {
                    Objective::MinLeastEig => least.value,
                    Objective::MaxSpread => least.value - buf[0],
                };
                let best = best.offer(key, || Achiever {
                    divisors: lattice.table.subset(mask),
                    witness_j: least.witnesses,
                });
                (best, buf)
            },
        )
        .map(|(best, _)| best)
        .reduce(Best::default, Best::merge);

    let mut achievers = best.achievers;
    achievers.sort();
    let value = best.value.map(|v| match objective {
        Objective::MinLeastEig => v,
        Objective::MaxSpread => -v,
    });
    Ok(ExtremalRecord {
        n,
        class,
        objective,
        value,
        class_empty: value.is_none(),
        achievers,
    })
}

/// Smallest least eigenvalue over connected graphs other than
/// `ICG_n(D̄_{p₁})`; undefined for prime `n`.
pub fn second_min_least(n: u64, limits: &SearchLimits) -> Result<ExtremalRecord> {
    let fac = order_factorization(n)?;
    if fac.is_prime() {
        return Err(Error::PrimeOrder(n));
    }
    extremal_search(
        n,
        GraphClass::ConnectedExcludingBarDp1,
        Objective::MinLeastEig,
        limits,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Theorem {
    Lemma1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
}

impl Theorem {
    pub const ALL: [Theorem; 5] = [
        Theorem::Lemma1,
        Theorem::Thm2,
        Theorem::Thm3,
        Theorem::Thm4,
        Theorem::Thm5,
    ];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Lemma1 => "LEMMA1",
            Theorem::Thm2 => "THM2",
            Theorem::Thm3 => "THM3",
            Theorem::Thm4 => "THM4",
            Theorem::Thm5 => "THM5",
        })
    }
}

fn order_factorization(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    factorize(n)
}

fn multiples_below(n: u64, step: u64) -> Vec<u64> {
    (1..n).filter(|j| j % step == 0).collect()
}

/// The closed-form value each theorem assigns to `n`; `None` where the
/// class is empty or the statement does not apply.
pub fn predicted_value(n: u64, theorem: Theorem) -> Result<Option<i64>> {
    let fac = order_factorization(n)?;
    let p1 = fac.smallest().expect("n >= 2");
    let (p, a) = (p1.prime as i64, p1.exponent);
    let base = -(n as i64) / p;
    Ok(match theorem {
        Theorem::Lemma1 => None,
        Theorem::Thm2 => Some(base),
        Theorem::Thm3 => Some(n as i64),
        Theorem::Thm4 if fac.is_prime_power() => None,
        Theorem::Thm4 => Some(base + p.pow(a - 1)),
        Theorem::Thm5 if fac.is_prime() => None,
        Theorem::Thm5 if a > 1 => Some(base + p - 1),
        Theorem::Thm5 => Some(base + 1),
    })
}

/// The achiever list the closed-form characterizations predict, with
/// witness sets expanded to explicit indices and sorted canonically.
///
/// * `THM2`: `D̄_{p₁}` at the multiples of `n/p₁`.
/// * `THM3`: every `D` whose complement is disconnected (including
///   `D = D_n`), witnessed at the multiples of `n / gcd(D_n \ D)`, or at
///   every index for `K_n`.
/// * `THM4`: `D̄_{p₁} \ {n/p₁^α₁}` at the multiples of `n/p₁`; and for
///   `n = 2^α·3` also `{2, 4, …, 2^α, 3}` at the `j` with `2^(α-1) ∥ j`
///   and `3 ∤ j`. Empty for prime powers.
/// * `THM5`: `D̄_{p₁} ∪ {n/p₁}` (`α₁ > 1`) or `D̄_{p₁} \ {n/p₁}`
///   (`α₁ = 1`) at the multiples of `n/p₁`, plus the three sporadic pairs
///   at `n = 6`.
/// * `LEMMA1` has no achievers; the list is empty.
pub fn predicted_achievers(n: u64, theorem: Theorem) -> Result<Vec<Achiever>> {
    let fac = order_factorization(n)?;
    let p1 = fac.smallest().expect("n >= 2");
    let (p, a) = (p1.prime, p1.exponent);
    let step = n / p;
    let n1 = n / p.pow(a);
    let bar = bar_d_p1(n)?.divisors().to_vec();
    let mut out = match theorem {
        Theorem::Lemma1 => Vec::new(),
        Theorem::Thm2 => vec![Achiever {
            divisors: bar,
            witness_j: multiples_below(n, step),
        }],
        Theorem::Thm3 => {
            let table = RamanujanTable::new(n)?;
            let full = (1u64 << table.divisors().len()) - 1;
            (1..=full)
                .filter_map(|mask| {
                    let rest = table.subset(full & !mask);
                    let g = rest.iter().fold(0, |g, &d| gcd(g, d));
                    (g != 1).then(|| Achiever {
                        divisors: table.subset(mask),
                        witness_j: match n.checked_div(g) {
                            Some(step) => multiples_below(n, step),
                            None => (1..n).collect(),
                        },
                    })
                })
                .collect()
        }
        Theorem::Thm4 if fac.is_prime_power() => Vec::new(),
        Theorem::Thm4 => {
            let mut v = vec![Achiever {
                divisors: bar.iter().copied().filter(|&d| d != n1).collect(),
                witness_j: multiples_below(n, step),
            }];
            if p == 2 && n1 == 3 {
                let mut divisors: Vec<u64> = (1..=a).map(|b| 2u64.pow(b)).collect();
                divisors.push(3);
                divisors.sort_unstable();
                let witness_j = (1..n)
                    .filter(|&j| valuation_unchecked(2, j) == a - 1 && j % 3 != 0)
                    .collect();
                v.push(Achiever {
                    divisors,
                    witness_j,
                });
            }
            v
        }
        Theorem::Thm5 => {
            if fac.is_prime() {
                return Err(Error::PrimeOrder(n));
            }
            let divisors = if a > 1 {
                let mut d = bar.clone();
                d.push(step);
                d.sort_unstable();
                d
            } else {
                bar.iter().copied().filter(|&d| d != step).collect()
            };
            let mut v = vec![Achiever {
                divisors,
                witness_j: multiples_below(n, step),
            }];
            if n == 6 {
                for (d, j) in [
                    (vec![1], vec![3]),
                    (vec![1, 2], vec![2, 4]),
                    (vec![2, 3], vec![1, 5]),
                ] {
                    v.push(Achiever {
                        divisors: d,
                        witness_j: j,
                    });
                }
            }
            v
        }
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// One counterexample. `check` names what was compared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: u64,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divisors: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<u64>,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub n_from: u64,
    pub n_to: u64,
    pub passed: bool,
    pub failures: Vec<Failure>,
    /// Orders where the searched class was empty, as predicted.
    pub class_empty: Vec<u64>,
    /// Orders the statement does not cover.
    pub skipped: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Default)]
struct Outcome {
    failures: Vec<Failure>,
    class_empty: bool,
    skipped: bool,
}

fn render_list(achievers: &[Achiever]) -> String {
    let items: Vec<String> = achievers.iter().map(|a| a.to_string()).collect();
    format!("[{}]", items.join("; "))
}

fn fmt_opt(v: Option<i64>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// Compares a search record with the closed forms for `theorem`.
fn compare(n: u64, record: &ExtremalRecord, theorem: Theorem) -> Result<Vec<Failure>> {
    let mut failures = Vec::new();
    let expected = predicted_value(n, theorem)?;
    if record.value != expected {
        failures.push(Failure {
            n,
            check: "value".into(),
            divisors: None,
            j: None,
            expected: fmt_opt(expected),
            got: fmt_opt(record.value),
        });
    }
    let predicted = predicted_achievers(n, theorem)?;
    if record.achievers != predicted {
        failures.push(Failure {
            n,
            check: "achievers".into(),
            divisors: None,
            j: None,
            expected: render_list(&predicted),
            got: render_list(&record.achievers),
        });
    }
    Ok(failures)
}

fn verify_order(theorem: Theorem, n: u64, limits: &SearchLimits) -> Result<Outcome> {
    let fac = order_factorization(n)?;
    let mut out = Outcome::default();
    match theorem {
        Theorem::Lemma1 => out.failures = lemma1_violations(n, limits)?,
        Theorem::Thm2 => {
            let rec = extremal_search(n, GraphClass::All, Objective::MinLeastEig, limits)?;
            out.failures = compare(n, &rec, theorem)?;
        }
        Theorem::Thm3 => {
            let rec = extremal_search(n, GraphClass::All, Objective::MaxSpread, limits)?;
            if rec.value.is_none_or(|v| v > n as i64) {
                out.failures.push(Failure {
                    n,
                    check: "spread_bound".into(),
                    divisors: None,
                    j: None,
                    expected: format!("<= {n}"),
                    got: fmt_opt(rec.value),
                });
            }
            out.failures.extend(compare(n, &rec, theorem)?);
        }
        Theorem::Thm4 => {
            let rec = extremal_search(
                n,
                GraphClass::ConnectedCoconnected,
                Objective::MinLeastEig,
                limits,
            )?;
            out.class_empty = rec.class_empty;
            if rec.class_empty != fac.is_prime_power() {
                out.failures.push(Failure {
                    n,
                    check: "class_empty".into(),
                    divisors: None,
                    j: None,
                    expected: fac.is_prime_power().to_string(),
                    got: rec.class_empty.to_string(),
                });
            } else {
                out.failures = compare(n, &rec, theorem)?;
            }
        }
        Theorem::Thm5 if fac.is_prime() => out.skipped = true,
        Theorem::Thm5 => {
            let rec = second_min_least(n, limits)?;
            out.failures = compare(n, &rec, theorem)?;
            let minimum = predicted_value(n, Theorem::Thm2)?.expect("defined for n >= 2");
            if rec.value.is_none_or(|v| v <= minimum) {
                out.failures.push(Failure {
                    n,
                    check: "strictly_above_minimum".into(),
                    divisors: None,
                    j: None,
                    expected: format!("> {minimum}"),
                    got: fmt_opt(rec.value),
                });
            }
        }
    }
    Ok(out)
}

/// Checks `(Σ_{d ∈ D} c(j, n/d))·(p₁ - 1) ≥ -φ(n/d0)` for every base
/// `d0 ∈ D̄_{p₁}`, every nonempty `D` inside its chain (proper divisors
/// only) and every `0 ≤ j < n`.
pub fn lemma1_violations(n: u64, limits: &SearchLimits) -> Result<Vec<Failure>> {
    let lattice = Lattice::new(n, limits)?;
    let table = &lattice.table;
    let p1 = factorize(n)?.smallest().expect("n >= 2").prime as i64;
    let mut failures = Vec::new();
    for &d0 in bar_d_p1(n)?.divisors() {
        let chain: Vec<u64> = divisor_chain(n, d0)?
            .into_iter()
            .filter(|&d| d < n)
            .collect();
        let chain_mask = table.mask_of(&chain).expect("chain lies in D_n");
        let rhs = -(euler_phi(n / d0)? as i64);
        let mut buf = vec![0i64; n as usize];
        // nonempty submasks of chain_mask
        let mut sub = chain_mask;
        while sub != 0 {
            table.spectrum_into(sub, &mut buf);
            for (j, &sum) in buf.iter().enumerate() {
                if sum * (p1 - 1) < rhs {
                    failures.push(Failure {
                        n,
                        check: format!("chain_bound d0={d0}"),
                        divisors: Some(table.subset(sub)),
                        j: Some(j as u64),
                        expected: format!(">= {rhs}/{}", p1 - 1),
                        got: sum.to_string(),
                    });
                }
            }
            sub = (sub - 1) & chain_mask;
        }
    }
    Ok(failures)
}

/// Runs `theorem` for every order in `n_from..=n_to` (orders below 2 are
/// ignored). Orders are processed in parallel and reported in ascending
/// order.
pub fn verify_theorem(
    theorem: Theorem,
    n_from: u64,
    n_to: u64,
    limits: &SearchLimits,
) -> Result<VerificationReport> {
    verify_theorem_observed(theorem, n_from, n_to, limits, &|_, _| {})
}

/// [`verify_theorem`] that calls `observe(n, failures_at_n)` as each order
/// finishes. Calls arrive in completion order, not ascending order.
pub fn verify_theorem_observed(
    theorem: Theorem,
    n_from: u64,
    n_to: u64,
    limits: &SearchLimits,
    observe: &(dyn Fn(u64, usize) + Sync),
) -> Result<VerificationReport> {
    let start = n_from.max(2);
    let outcomes: Vec<(u64, Outcome)> = (start..=n_to)
        .into_par_iter()
        .map(|n| {
            let outcome = verify_order(theorem, n, limits)?;
            observe(n, outcome.failures.len());
            Ok((n, outcome))
        })
        .collect::<Result<_>>()?;
    let mut report = VerificationReport {
        theorem,
        n_from,
        n_to,
        passed: true,
        failures: Vec::new(),
        class_empty: Vec::new(),
        skipped: Vec::new(),
        elapsed_ms: None,
    };
    for (n, outcome) in outcomes {
        report.failures.extend(outcome.failures);
        if outcome.class_empty {
            report.class_empty.push(n);
        }
        if outcome.skipped {
            report.skipped.push(n);
        }
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}
