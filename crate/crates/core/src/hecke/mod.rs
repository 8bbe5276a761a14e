//! Cohomology of the arithmetic torus with `F_p` coefficients and its
//! derived Hecke operators.

pub mod functional;
pub mod level;
pub mod operators;
pub mod psi;

pub use functional::{
    compute_tp, degree_two_pullback, scan_t1, spanning_set, unit_functional, Functional, SpanningSet, T1Primes,
    TpResult, DEFAULT_BUDGET,
};
pub use level::Level;
pub use operators::{CohomologyClass, HeckeElement, ShiftGroup};
pub use psi::{eigensystem_report, psi_report, EigenReport, PsiReport};
