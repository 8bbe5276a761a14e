//! The narrow ray class group `Cl⁺(𝔑)`.
//!
//! Each ideal `a` coprime to `𝔑` gets a key `(k, q)`: `k` is its ordinary
//! class, and writing `a = β c_k` for the fixed representative `c_k`, `q` is
//! the image of `β` in `(congruence-sign group)/(image of O^×)`. Keys are in
//! bijection with ray classes.

use std::collections::HashMap;

use serde::Serialize;

use super::class_group::ClassGroup;
use super::csg::CongruenceSignGroup;
use crate::algebra::abelian::{EnumeratedGroup, Quotient};
use crate::error::{Error, Result};
use crate::field::{Element, FieldDescriptor, IdealHNF, PrincipalSearch, SearchConfig};
use crate::units::EUnits;

/// Default cap on `h⁺(𝔑)`.
pub const HPLUS_CAP: u64 = 10_000;

pub type ClassKey = (usize, Vec<u64>);

#[derive(Debug, Clone)]
struct OrdinaryRep {
    ideal: IdealHNF,
    delta: Element,
    // (δ : c), equal to δ c^{-1}
    co: IdealHNF,
}

#[derive(Debug, Clone)]
pub struct RayClassGroup {
    csg: CongruenceSignGroup,
    eunits: EUnits,
    cokernel: Quotient,
    ordinary: Vec<OrdinaryRep>,
    // key of c_i c_j
    corrections: Vec<Vec<ClassKey>>,
    search: SearchConfig,
    reps: Vec<IdealHNF>,
    keys: Vec<ClassKey>,
    index: HashMap<ClassKey, usize>,
    structure: EnumeratedGroup<ClassKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepresentativeReport {
    pub hnf: Vec<Vec<i64>>,
    pub norm: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayClassReport {
    pub h_plus: u64,
    pub invariant_factors: Vec<u64>,
    pub representatives: Vec<RepresentativeReport>,
}

impl RayClassGroup {
    pub fn new(
        field: &FieldDescriptor,
        classes: &ClassGroup,
        csg: CongruenceSignGroup,
        eunits: EUnits,
    ) -> Result<Self> {
        let search = SearchConfig::default();
        let cokernel = eunits.cokernel()?;
        let hplus = classes.order() as u128 * cokernel.order();
        if hplus > HPLUS_CAP as u128 {
            return Err(Error::CapExceeded {
                what: "h_plus",
                value: hplus,
                cap: HPLUS_CAP as u128,
            });
        }
        let modulus = csg.modulus().clone();
        let mut g = RayClassGroup {
            csg,
            eunits,
            cokernel,
            ordinary: Vec::new(),
            corrections: Vec::new(),
            search,
            reps: Vec::new(),
            keys: Vec::new(),
            index: HashMap::new(),
            structure: EnumeratedGroup::build((0, Vec::new()), Vec::new(), None, |a: &ClassKey, _| a.clone())?,
        };
        g.ordinary = ordinary_reps(field, classes, &g.csg, &modulus)?;
        let h = g.ordinary.len();
        let mut corrections = vec![vec![(0, g.cokernel.zero()); h]; h];
        for i in 0..h {
            for j in 0..h {
                let prod = field.ideal_product(&g.ordinary[i].ideal, &g.ordinary[j].ideal);
                corrections[i][j] = g.key(field, &prod)?;
            }
        }
        g.corrections = corrections;
        g.discover(field, hplus as usize)?;
        let structure = {
            let keys = g.keys.clone();
            let this = &g;
            EnumeratedGroup::build(keys[0].clone(), keys.clone(), Some(keys.len()), |a, b| this.key_mul(a, b))?
        };
        g.structure = structure;
        Ok(g)
    }

    /// Representatives: `(1)` first, then products with primes in ascending
    /// norm until every key has appeared.
    fn discover(&mut self, field: &FieldDescriptor, hplus: usize) -> Result<()> {
        let one = field.unit_ideal();
        let k0 = self.key(field, &one)?;
        self.push(one, k0);
        let mut bound = 50u64;
        let mut used = 0usize;
        while self.reps.len() < hplus {
            let primes: Vec<_> = field
                .primes_up_to_norm(bound)
                .into_iter()
                .filter(|p| field.is_coprime(p.ideal(), self.csg.modulus()))
                .collect();
            for p in primes.iter().skip(used) {
                let kp = self.key(field, p.ideal())?;
                let mut i = 0;
                while i < self.reps.len() && self.reps.len() < hplus {
                    let k = self.key_mul(&self.keys[i], &kp);
                    if !self.index.contains_key(&k) {
                        let prod = field.ideal_product(&self.reps[i], p.ideal());
                        self.push(prod, k);
                    }
                    i += 1;
                }
                if self.reps.len() >= hplus {
                    break;
                }
            }
            used = primes.len();
            bound *= 4;
            if bound > 1 << 40 {
                return Err(Error::Inconclusive("ray class representatives not found".into()));
            }
        }
        Ok(())
    }

    fn push(&mut self, ideal: IdealHNF, key: ClassKey) {
        self.index.insert(key.clone(), self.reps.len());
        self.reps.push(ideal);
        self.keys.push(key);
    }

    /// Key of an ideal coprime to the modulus.
    pub fn key(&self, field: &FieldDescriptor, a: &IdealHNF) -> Result<ClassKey> {
        if !field.is_coprime(a, self.csg.modulus()) {
            return Err(Error::NotCoprime);
        }
        for (k, rep) in self.ordinary.iter().enumerate() {
            let prod = field.ideal_product(a, &rep.co);
            match field.principal_generator(&prod, &self.search) {
                PrincipalSearch::Found(gamma) => {
                    let lg = self.csg.dlog(field, &gamma)?;
                    let ld = self.csg.dlog(field, &rep.delta)?;
                    let diff: Vec<i64> = lg.iter().zip(&ld).map(|(x, y)| x - y).collect();
                    return Ok((k, self.cokernel.project(&diff)));
                }
                PrincipalSearch::NotFound => continue,
                PrincipalSearch::Inconclusive(m) => {
                    return Err(Error::Inconclusive(format!(
                        "principality of {:?} undecided against class {k}: {m}",
                        a.rows_i64()
                    )))
                }
            }
        }
        Err(Error::Inconclusive("ideal matches no ordinary class".into()))
    }

    pub fn key_mul(&self, a: &ClassKey, b: &ClassKey) -> ClassKey {
        let (k, corr) = &self.corrections[a.0][b.0];
        let q = self.cokernel.add(&self.cokernel.add(&a.1, &b.1), corr);
        (*k, q)
    }

    /// Index of the ray class of `a`.
    pub fn class_of(&self, field: &FieldDescriptor, a: &IdealHNF) -> Result<usize> {
        let k = self.key(field, a)?;
        Ok(self.index[&k])
    }

    /// `h⁺(𝔑)`.
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[IdealHNF] {
        &self.reps
    }

    pub fn modulus(&self) -> &IdealHNF {
        self.csg.modulus()
    }

    pub fn csg(&self) -> &CongruenceSignGroup {
        &self.csg
    }

    pub fn eunits(&self) -> &EUnits {
        &self.eunits
    }

    pub fn cokernel(&self) -> &Quotient {
        &self.cokernel
    }

    pub fn ordinary_class_number(&self) -> usize {
        self.ordinary.len()
    }

    /// Index of the product class.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.key_mul(&self.keys[i], &self.keys[j])]
    }

    pub fn inverse(&self, i: usize) -> usize {
        let c = self.structure.quotient().neg(self.coordinates(i));
        self.element_at(&c)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.structure.invariants()
    }

    /// Coordinates of class `i` in `⊕ Z/d_j` over the invariant factors.
    pub fn coordinates(&self, i: usize) -> &[u64] {
        self.structure.dlog(&self.keys[i]).expect("enumerated key")
    }

    /// Class index with the given coordinates.
    pub fn element_at(&self, coords: &[u64]) -> usize {
        self.index[self.structure.element(coords).expect("valid coordinates")]
    }

    pub fn report(&self) -> RayClassReport {
        RayClassReport {
            h_plus: self.order() as u64,
            invariant_factors: self.invariant_factors().to_vec(),
            representatives: self
                .reps
                .iter()
                .map(|r| RepresentativeReport {
                    hnf: r.rows_i64().unwrap_or_default(),
                    norm: num_traits::ToPrimitive::to_u64(r.norm()).unwrap_or(u64::MAX),
                })
                .collect(),
        }
    }
}

/// For each ordinary class a representative coprime to the modulus with an
/// element `δ` of it that is a unit mod the modulus.
fn ordinary_reps(
    field: &FieldDescriptor,
    classes: &ClassGroup,
    csg: &CongruenceSignGroup,
    modulus: &IdealHNF,
) -> Result<Vec<OrdinaryRep>> {
    let h = classes.order();
    let mut reps: Vec<Option<OrdinaryRep>> = vec![None; h];
    reps[0] = Some(OrdinaryRep {
        ideal: field.unit_ideal(),
        delta: field.one(),
        co: field.unit_ideal(),
    });
    let mut bound = 50u64;
    while reps.iter().any(|r| r.is_none()) {
        for p in field.primes_up_to_norm(bound) {
            if !field.is_coprime(p.ideal(), modulus) {
                continue;
            }
            let k = classes.class_index(field, p.ideal())?;
            if reps[k].is_some() {
                continue;
            }
            let delta = coprime_element(field, p.ideal(), csg)?;
            let co = field.ideal_quotient(&delta, p.ideal());
            reps[k] = Some(OrdinaryRep {
                ideal: p.ideal().clone(),
                delta,
                co,
            });
        }
        bound *= 4;
        if bound > 1 << 40 {
            return Err(Error::Inconclusive("no prime found in some ideal class".into()));
        }
    }
    Ok(reps.into_iter().map(|r| r.unwrap()).collect())
}

/// Small element of `c` that is a unit modulo the modulus.
fn coprime_element(field: &FieldDescriptor, c: &IdealHNF, csg: &CongruenceSignGroup) -> Result<Element> {
    let basis = c.basis();
    let n = basis.len();
    for radius in 1i64..64 {
        let mut coef = vec![-radius; n];
        loop {
            let mut x = field.zero();
            for (cj, bj) in coef.iter().zip(&basis) {
                x = field.add(&x, &field.scale(bj, &(*cj).into()));
            }
            if !x.is_zero() && csg.is_unit(&x) {
                return Ok(x);
            }
            let mut i = 0;
            while i < n && coef[i] == radius {
                coef[i] = -radius;
                i += 1;
            }
            if i == n {
                break;
            }
            coef[i] += 1;
        }
    }
    Err(Error::Inconclusive("no element coprime to the modulus found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ray_class::csg::RESIDUE_CAP;
    use num_bigint::BigInt;

    fn group(d: u64, m: i64) -> (FieldDescriptor, RayClassGroup) {
        let f = FieldDescriptor::real_quadratic(d).unwrap();
        let n = f.ideal_from_int(&BigInt::from(m));
        let cg = ClassGroup::compute(&f).unwrap();
        let csg = CongruenceSignGroup::new(&f, &n, RESIDUE_CAP).unwrap();
        let e = EUnits::compute(&f, &csg).unwrap();
        let g = RayClassGroup::new(&f, &cg, csg, e).unwrap();
        (f, g)
    }

    #[test]
    fn orders() {
        assert_eq!(group(2, 1).1.order(), 1);
        assert_eq!(group(3, 1).1.order(), 2);
        assert_eq!(group(2, 7).1.order(), 12);
        assert_eq!(group(10, 1).1.order(), 2);
        assert_eq!(group(15, 1).1.order(), 4);
    }

    #[test]
    fn class_of_examples() {
        let (f, g) = group(3, 1);
        let v11 = &f.factor_prime(11).unwrap()[0];
        assert_eq!(g.class_of(&f, v11.ideal()).unwrap(), 1);
        assert!(g.representatives()[0].is_unit_ideal());
        let (f, g) = group(2, 7);
        let a = f.principal_ideal(&f.element(&[99, 70]));
        assert_eq!(g.class_of(&f, &a).unwrap(), 0);
        let b = f.principal_ideal(&f.element(&[3, 2]));
        assert_eq!(g.class_of(&f, &b).unwrap(), 0);
        // 8 is totally positive and 1 mod 7
        assert_eq!(g.class_of(&f, &f.ideal_from_int(&BigInt::from(8))).unwrap(), 0);
        // no unit times ±3 is 1 mod 7
        let three = f.ideal_from_int(&BigInt::from(3));
        assert_ne!(g.class_of(&f, &three).unwrap(), 0);
        assert_eq!(g.class_of(&f, &f.ideal_from_int(&BigInt::from(7))), Err(Error::NotCoprime));
    }

    #[test]
    fn multiplicative_and_permutations() {
        for (d, m) in [(2u64, 7i64), (10, 3), (15, 2), (5, 11)] {
            let (f, g) = group(d, m);
            let primes: Vec<_> = f
                .primes_up_to_norm(60)
                .into_iter()
                .filter(|p| f.is_coprime(p.ideal(), g.modulus()))
                .take(6)
                .collect();
            for p in &primes {
                for q in &primes {
                    let pq = f.ideal_product(p.ideal(), q.ideal());
                    let lhs = g.class_of(&f, &pq).unwrap();
                    let rhs = g.mul(g.class_of(&f, p.ideal()).unwrap(), g.class_of(&f, q.ideal()).unwrap());
                    assert_eq!(lhs, rhs);
                }
                // a -> class_of(z a) permutes the classes
                let z = g.class_of(&f, p.ideal()).unwrap();
                let mut img: Vec<usize> = (0..g.order()).map(|a| g.mul(z, a)).collect();
                img.sort();
                assert_eq!(img, (0..g.order()).collect::<Vec<_>>());
            }
            for (i, r) in g.representatives().iter().enumerate() {
                assert_eq!(g.class_of(&f, r).unwrap(), i);
                assert_eq!(g.mul(i, g.inverse(i)), 0);
            }
        }
    }

    #[test]
    fn order_bookkeeping() {
        for (d, m) in [(2u64, 7i64), (3, 5), (10, 3), (6, 4)] {
            let (f, g) = group(d, m);
            let lhs = g.order() as u128 * g.eunits().index();
            let rhs = f.class_number() as u128 * g.csg().order();
            assert_eq!(lhs, rhs);
            let inv_prod: u64 = g.invariant_factors().iter().product();
            assert_eq!(inv_prod as usize, g.order());
        }
    }
}
