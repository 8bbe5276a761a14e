use num_traits::ToPrimitive;

use super::operators::ShiftGroup;
use crate::error::Result;
use crate::field::{FieldDescriptor, IdealHNF};
use crate::ray_class::{ClassGroup, CongruenceSignGroup, RayClassGroup};
use crate::units::EUnits;

/// A field together with a modulus: ray classes, `E(𝔑)` and the shift table.
#[derive(Debug, Clone)]
pub struct Level {
    field: FieldDescriptor,
    ray: RayClassGroup,
    shifts: ShiftGroup,
}

impl Level {
    pub fn new(field: &FieldDescriptor, classes: &ClassGroup, modulus: &IdealHNF, cap_residue: u64) -> Result<Self> {
        let csg = CongruenceSignGroup::new(field, modulus, cap_residue)?;
        let eunits = EUnits::compute(field, &csg)?;
        let ray = RayClassGroup::new(field, classes, csg, eunits)?;
        let shifts = ShiftGroup::from_ray(&ray);
        Ok(Level {
            field: field.clone(),
            ray,
            shifts,
        })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn ray(&self) -> &RayClassGroup {
        &self.ray
    }

    pub fn eunits(&self) -> &EUnits {
        self.ray.eunits()
    }

    pub fn shifts(&self) -> &ShiftGroup {
        &self.shifts
    }

    pub fn modulus(&self) -> &IdealHNF {
        self.ray.modulus()
    }

    pub fn modulus_norm(&self) -> u64 {
        self.modulus().norm().to_u64().expect("modulus norm below the residue cap")
    }

    pub fn h_plus(&self) -> usize {
        self.ray.order()
    }

    /// Rank `r` of `E(𝔑)`.
    pub fn rank(&self) -> usize {
        self.eunits().rank()
    }
}
