//! Integral circulant graphs `ICG_n(D)`: exact spectra through Ramanujan
//! sums, least eigenvalues and spread, exhaustive extremal search over
//! divisor sets, and an independent floating-point oracle.
//!
//! ```
//! use icg_core::{full_spectrum, IcgSpec};
//!
//! let g: IcgSpec = "6:1,3".parse().unwrap();
//! let s = full_spectrum(&g);
//! assert_eq!(s.values, vec![3, 0, 0, -3, 0, 0]);
//! assert_eq!(s.spread(), 6);
//! ```

pub mod error;
pub mod extremal;
pub mod icg;
pub mod numtheory;
pub mod oracle;
pub mod spectrum;

pub use error::{Error, Result};
pub use extremal::{
    enumerate_class, extremal_search, predicted_achievers, predicted_value, second_min_least,
    verify_theorem, verify_theorem_observed, Achiever, ExtremalRecord, Failure, GraphClass,
    Objective, SearchLimits, Theorem, VerificationReport,
};
pub use icg::{bar_d_p1, divisor_chain, gcd_class, IcgSpec, SymbolSet};
pub use numtheory::{
    euler_phi, factorize, moebius, p_adic_valuation, proper_divisors, ramanujan, t_index,
    Factorization, PrimePower,
};
pub use oracle::{check_spec_against_oracle, dft_spectrum, FloatSpectrum};
pub use spectrum::{
    complement_spectrum, eigenvalue, full_spectrum, least_eigenvalue, spread, LeastEigenvalue,
    RamanujanTable, Spectrum,
};
