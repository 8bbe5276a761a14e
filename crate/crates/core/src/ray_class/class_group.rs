//! Ordinary ideal class group by closure over primes below the Minkowski bound.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, IdealHNF, PrincipalSearch, SearchConfig};

#[derive(Debug, Clone)]
pub struct ClassGroup {
    reps: Vec<IdealHNF>,
    search: SearchConfig,
}

/// `⌈(n!/n^n)(4/π)^{r2} sqrt|D|⌉`, with `4/π < 12733/10000`.
pub fn minkowski_bound(field: &FieldDescriptor) -> u64 {
    let n = field.degree() as u32;
    let r2 = field.signature().1 as u32;
    let fact: u64 = (1..=n as u64).product();
    let num = BigInt::from(fact) * BigInt::from(12733u32).pow(r2);
    let den = BigInt::from(n as u64).pow(n) * BigInt::from(10000u32).pow(r2);
    // (num/den)^2 |D| then square root
    let sq = &num * &num * field.discriminant().abs() / (&den * &den);
    (sq.sqrt() + 1u32).to_u64().unwrap_or(u64::MAX)
}

impl ClassGroup {
    /// Closure of `{(1)}` under multiplication by primes up to the Minkowski
    /// bound, stopping early once a descriptor-supplied class number is hit.
    pub fn compute(field: &FieldDescriptor) -> Result<Self> {
        Self::compute_with(field, SearchConfig::default())
    }

    pub fn compute_with(field: &FieldDescriptor, search: SearchConfig) -> Result<Self> {
        let mut g = ClassGroup {
            reps: vec![field.unit_ideal()],
            search,
        };
        let target = match field.provenance() {
            crate::field::Provenance::Ingested => Some(field.class_number() as usize),
            crate::field::Provenance::Native => None,
        };
        if target == Some(1) {
            return Ok(g);
        }
        let primes = field.primes_up_to_norm(minkowski_bound(field));
        let mut i = 0;
        while i < g.reps.len() {
            for p in &primes {
                if target.is_some_and(|t| g.reps.len() >= t) {
                    return Ok(g);
                }
                let cand = field.ideal_product(&g.reps[i], p.ideal());
                if g.find(field, &cand)?.is_none() {
                    g.reps.push(cand);
                }
            }
            i += 1;
        }
        if let Some(t) = target {
            if g.reps.len() != t {
                return Err(Error::ValidationError(format!(
                    "class number {t} claimed, closure found {}",
                    g.reps.len()
                )));
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[IdealHNF] {
        &self.reps
    }

    /// `a ~ b` iff `a (N(b) : b)` is principal.
    pub fn equivalent(&self, field: &FieldDescriptor, a: &IdealHNF, b: &IdealHNF) -> Result<bool> {
        let delta = field.from_int(b.norm().clone());
        let prod = field.ideal_product(a, &field.ideal_quotient(&delta, b));
        match field.principal_generator(&prod, &self.search) {
            PrincipalSearch::Found(_) => Ok(true),
            PrincipalSearch::NotFound => Ok(false),
            PrincipalSearch::Inconclusive(m) => Err(Error::Inconclusive(m)),
        }
    }

    fn find(&self, field: &FieldDescriptor, a: &IdealHNF) -> Result<Option<usize>> {
        for (k, r) in self.reps.iter().enumerate() {
            if self.equivalent(field, a, r)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Index of the representative equivalent to `a`.
    pub fn class_index(&self, field: &FieldDescriptor, a: &IdealHNF) -> Result<usize> {
        self.find(field, a)?
            .ok_or_else(|| Error::Inconclusive("ideal matches no class representative".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        for (d, h) in [(2u64, 1usize), (3, 1), (5, 1), (10, 2), (15, 2), (79, 3), (82, 4), (229, 3)] {
            let f = FieldDescriptor::real_quadratic(d).unwrap();
            assert_eq!(ClassGroup::compute(&f).unwrap().order(), h, "d = {d}");
            assert_eq!(f.class_number(), h as u64);
        }
    }

    #[test]
    fn minkowski() {
        let f = FieldDescriptor::real_quadratic(10).unwrap();
        // sqrt(40)/2 ≈ 3.16
        assert_eq!(minkowski_bound(&f), 4);
    }
}
