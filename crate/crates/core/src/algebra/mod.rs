//! Exact arithmetic kernel: integer matrices, prime fields and their
//! extensions, polynomial factorization, exterior algebra.

pub mod abelian;
pub mod exterior;
pub mod fp;
pub mod fq;
pub mod intmat;
pub mod polyfp;

pub use exterior::{wedge, MultiVector};
pub use fq::{pth_character, FiniteField, FqElement};
pub use intmat::{smith_normal_form, IntMatrix};
