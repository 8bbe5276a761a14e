//! Cohomology of a disjoint union of tori and shift-and-wedge operators.
//!
//! `H^j = ⊕_a Λ^j(F_p^r)` over the ray classes `a`. An operator is a finite
//! sum of terms `(g, ω)` acting by `(H c)|_a = Σ_g ω_g ∧ c|_{g a}`.

use std::collections::BTreeMap;

use crate::algebra::exterior::MultiVector;
use crate::ray_class::RayClassGroup;

/// Multiplication table of a finite abelian group with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl ShiftGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Self {
        let n = table.len();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("group table"))
            .collect();
        ShiftGroup { table, inverse }
    }

    pub fn from_ray(ray: &RayClassGroup) -> Self {
        let n = ray.order();
        Self::from_table((0..n).map(|a| (0..n).map(|b| ray.mul(a, b)).collect()).collect())
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// Homogeneous class in `H^degree`, one multivector per ray class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    p: u64,
    rank: usize,
    degree: usize,
    components: Vec<MultiVector>,
}

impl CohomologyClass {
    pub fn zero(p: u64, rank: usize, degree: usize, classes: usize) -> Self {
        CohomologyClass {
            p,
            rank,
            degree,
            components: vec![MultiVector::zero(p, rank, degree); classes],
        }
    }

    /// The degree-0 indicator `1_a`.
    pub fn indicator(p: u64, rank: usize, classes: usize, a: usize) -> Self {
        let mut c = Self::zero(p, rank, 0, classes);
        c.components[a] = MultiVector::one(p, rank);
        c
    }

    pub fn from_components(p: u64, rank: usize, degree: usize, components: Vec<MultiVector>) -> Self {
        for m in &components {
            assert_eq!((m.modulus(), m.rank(), m.degree()), (p, rank, degree), "component shape");
        }
        CohomologyClass {
            p,
            rank,
            degree,
            components,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn classes(&self) -> usize {
        self.components.len()
    }

    /// The restriction to the torus indexed by `a`.
    pub fn component(&self, a: usize) -> &MultiVector {
        &self.components[a]
    }

    pub fn components(&self) -> &[MultiVector] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|m| m.is_zero())
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        assert_eq!(self.degree, other.degree);
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        CohomologyClass {
            components,
            ..self.clone()
        }
    }

    pub fn scale(&self, s: u64) -> CohomologyClass {
        CohomologyClass {
            components: self.components.iter().map(|m| m.scale(s)).collect(),
            ..self.clone()
        }
    }

    /// All coordinates, component by component.
    pub fn flatten(&self) -> Vec<u64> {
        self.components.iter().flat_map(|m| m.coords().iter().copied()).collect()
    }
}

/// Homogeneous operator `Σ (g, ω_g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    p: u64,
    rank: usize,
    degree: usize,
    terms: BTreeMap<usize, MultiVector>,
}

impl HeckeElement {
    pub fn zero(p: u64, rank: usize, degree: usize) -> Self {
        HeckeElement {
            p,
            rank,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(p: u64, rank: usize) -> Self {
        Self::shift(p, rank, 0)
    }

    /// `(g, 1)`, the pullback along multiplication by the class `g`.
    pub fn shift(p: u64, rank: usize, g: usize) -> Self {
        Self::term(g, MultiVector::one(p, rank))
    }

    pub fn term(g: usize, omega: MultiVector) -> Self {
        let mut h = HeckeElement::zero(omega.modulus(), omega.rank(), omega.degree());
        if !omega.is_zero() {
            h.terms.insert(g, omega);
        }
        h
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<usize, MultiVector> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        assert_eq!(self.degree, other.degree, "adding operators of different degree");
        let mut out = self.clone();
        for (&g, w) in &other.terms {
            out.add_term(g, w.clone());
        }
        out
    }

    fn add_term(&mut self, g: usize, w: MultiVector) {
        let sum = match self.terms.remove(&g) {
            Some(v) => v.add(&w),
            None => w,
        };
        if !sum.is_zero() {
            self.terms.insert(g, sum);
        }
    }

    pub fn scale(&self, s: u64) -> HeckeElement {
        let mut out = HeckeElement::zero(self.p, self.rank, self.degree);
        for (&g, w) in &self.terms {
            out.add_term(g, w.scale(s));
        }
        out
    }

    /// `(g, ω)(g', ω') = (g g', ω ∧ ω')`.
    pub fn compose(&self, other: &HeckeElement, group: &ShiftGroup) -> HeckeElement {
        let degree = self.degree + other.degree;
        let mut out = HeckeElement::zero(self.p, self.rank, degree);
        if degree > self.rank {
            return out;
        }
        for (&g, w) in &self.terms {
            for (&h, v) in &other.terms {
                out.add_term(group.mul(g, h), w.wedge(v));
            }
        }
        out
    }

    /// `(H c)|_a = Σ_g ω_g ∧ c|_{g a}`; degrees past the rank give zero.
    pub fn apply(&self, c: &CohomologyClass, group: &ShiftGroup) -> CohomologyClass {
        assert_eq!((self.p, self.rank), (c.p, c.rank), "operator and class over different data");
        let degree = self.degree + c.degree;
        let mut out = CohomologyClass::zero(self.p, self.rank, degree, c.classes());
        if degree > self.rank {
            return out;
        }
        for a in 0..c.classes() {
            let mut acc = MultiVector::zero(self.p, self.rank, degree);
            for (&g, w) in &self.terms {
                acc = acc.add(&w.wedge(c.component(group.mul(g, a))));
            }
            out.components[a] = acc;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::exterior::binomial;
    use proptest::prelude::*;

    fn mv(p: u64, rank: usize, degree: usize, seed: &[u64]) -> MultiVector {
        let n = binomial(rank, degree);
        MultiVector::from_coords(p, rank, degree, (0..n).map(|i| seed[i % seed.len()]).collect())
    }

    #[test]
    fn shift_moves_indicators_backwards() {
        let g = ShiftGroup::cyclic(5);
        let one_2 = CohomologyClass::indicator(7, 1, 5, 2);
        let h = HeckeElement::shift(7, 1, 1);
        // h_z 1_a = 1_{z^{-1} a}
        assert_eq!(h.apply(&one_2, &g), CohomologyClass::indicator(7, 1, 5, 1));
        assert_eq!(HeckeElement::identity(7, 1).apply(&one_2, &g), one_2);
    }

    #[test]
    fn wedge_term_on_unit_class() {
        let g = ShiftGroup::cyclic(3);
        let phi = MultiVector::vector(5, &[4, 1]);
        let h = HeckeElement::term(0, phi.clone());
        let out = h.apply(&CohomologyClass::indicator(5, 2, 3, 0), &g);
        assert_eq!(out.component(0), &phi);
        assert!(out.component(1).is_zero() && out.component(2).is_zero());
    }

    #[test]
    fn overflow_is_zero() {
        let g = ShiftGroup::cyclic(2);
        let h = HeckeElement::term(1, MultiVector::vector(3, &[1]));
        let c = h.apply(&CohomologyClass::indicator(3, 1, 2, 0), &g);
        let cc = h.apply(&c, &g);
        assert_eq!(cc.degree(), 2);
        assert!(cc.is_zero());
        assert!(h.compose(&h, &g).is_zero());
    }

    proptest! {
        #[test]
        fn composition_matches_application(
            a in prop::collection::vec(0u64..5, 1..4),
            b in prop::collection::vec(0u64..5, 1..4),
            c in prop::collection::vec(0u64..5, 1..4),
            g1 in 0usize..4, g2 in 0usize..4, cls in 0usize..4,
            d1 in 0usize..3, d2 in 0usize..3,
        ) {
            let g = ShiftGroup::cyclic(4);
            let h1 = HeckeElement::term(g1, mv(5, 3, d1, &a));
            let h2 = HeckeElement::term(g2, mv(5, 3, d2, &b));
            let x = HeckeElement::term(0, mv(5, 3, 0, &c)).apply(&CohomologyClass::indicator(5, 3, 4, cls), &g);
            let lhs = h1.apply(&h2.apply(&x, &g), &g);
            let rhs = h1.compose(&h2, &g).apply(&x, &g);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn graded_commutative(
            a in prop::collection::vec(0u64..7, 1..6),
            b in prop::collection::vec(0u64..7, 1..6),
            g1 in 0usize..6, g2 in 0usize..6,
            d1 in 0usize..4, d2 in 0usize..4,
        ) {
            let g = ShiftGroup::cyclic(6);
            let h1 = HeckeElement::term(g1, mv(7, 3, d1.min(3), &a));
            let h2 = HeckeElement::term(g2, mv(7, 3, d2.min(3), &b));
            let sign = if d1.min(3) * d2.min(3) % 2 == 1 { 6 } else { 1 };
            prop_assert_eq!(h1.compose(&h2, &g), h2.compose(&h1, &g).scale(sign));
        }
    }
}
