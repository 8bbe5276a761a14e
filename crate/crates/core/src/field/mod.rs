//! Number fields given by a monic minimal polynomial: elements of `Z[θ]`,
//! exact signs, ideals, primes and principal generators.

pub mod descriptor;
pub mod element;
pub mod ideal;
pub mod primes;
pub mod principal;
pub mod sturm;

pub use descriptor::{DescriptorFile, FieldDescriptor, Provenance};
pub use element::Element;
pub use ideal::IdealHNF;
pub use primes::PrimeIdeal;
pub use principal::{PrincipalSearch, SearchConfig};
