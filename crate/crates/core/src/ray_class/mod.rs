pub mod class_group;
pub mod csg;
pub mod forms;
pub mod ray;

pub use class_group::{minkowski_bound, ClassGroup};
pub use csg::{CongruenceSignGroup, ResidueRing, RESIDUE_CAP};
pub use forms::hplus_form_cycles;
pub use ray::{RayClassGroup, RayClassReport, HPLUS_CAP};
