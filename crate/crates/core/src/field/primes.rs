//! Prime ideals over rational primes not dividing the index, by Dedekind's
//! criterion, and reduction maps to their residue fields.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::descriptor::FieldDescriptor;
use super::element::Element;
use super::ideal::IdealHNF;
use crate::algebra::fp::primes;
use crate::algebra::polyfp::{factor_poly_mod_ell, FpPoly};
use crate::algebra::{FiniteField, FqElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdeal {
    ell: u64,
    f: usize,
    e: u32,
    g_poly: FpPoly,
    ideal: IdealHNF,
    residue_field: FiniteField,
}

impl PrimeIdeal {
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn residue_degree(&self) -> usize {
        self.f
    }

    pub fn ramification(&self) -> u32 {
        self.e
    }

    pub fn g_poly(&self) -> &FpPoly {
        &self.g_poly
    }

    pub fn ideal(&self) -> &IdealHNF {
        &self.ideal
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.residue_field
    }

    /// `N(v) = ell^f`.
    pub fn norm(&self) -> u64 {
        self.residue_field.order()
    }

    /// Image in `κ_v = F_ell[t]/(g)`.
    pub fn residue_image(&self, x: &Element) -> FqElement {
        let fp = FpPoly::from_bigint(self.ell, &x.0);
        self.residue_field.from_poly(&fp)
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.residue_image(x).is_zero()
    }

    /// Short label such as `(31, θ+23)`.
    pub fn describe(&self) -> String {
        let mut terms = Vec::new();
        for (k, &c) in self.g_poly.coeffs().iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match k {
                0 => format!("{c}"),
                1 if c == 1 => "θ".to_string(),
                1 => format!("{c}θ"),
                _ if c == 1 => format!("θ^{k}"),
                _ => format!("{c}θ^{k}"),
            };
            terms.push(mon);
        }
        format!("({}, {})", self.ell, terms.join("+"))
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn lift(g: &FpPoly) -> Vec<BigInt> {
    g.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

impl FieldDescriptor {
    /// True when `ell` divides `[O_F : Z[θ]]`, decided by Dedekind's criterion.
    pub fn is_index_prime(&self, ell: u64) -> bool {
        if !(self.discriminant() % BigInt::from(ell)).is_zero() {
            return false;
        }
        let fac = factor_poly_mod_ell(&self.min_poly_i64(), ell);
        let one = FpPoly::one(ell);
        let g = fac.iter().fold(one.clone(), |acc, (p, _)| acc.mul(p));
        let h = fac.iter().fold(one, |acc, (p, e)| {
            (1..*e).fold(acc, |a, _| a.mul(p))
        });
        let gh = poly_mul(&lift(&g), &lift(&h));
        let f = self.min_poly();
        let len = gh.len().max(f.len());
        let ellb = BigInt::from(ell);
        let t: Vec<BigInt> = (0..len)
            .map(|i| {
                let a = gh.get(i).cloned().unwrap_or_default();
                let b = f.get(i).cloned().unwrap_or_default();
                (a - b) / &ellb
            })
            .collect();
        let tbar = FpPoly::from_bigint(ell, &t);
        let d = tbar.gcd(&g).gcd(&h);
        d.degree() > 0
    }

    /// All primes over `ell` with their ramification indices, ordered by
    /// residue degree then by the canonical order of `g_poly`.
    pub fn decompose(&self, ell: u64) -> Result<Vec<PrimeIdeal>> {
        if self.is_index_prime(ell) {
            return Err(Error::IndexPrime(ell));
        }
        let mut fac = factor_poly_mod_ell(&self.min_poly_i64(), ell);
        fac.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let ellb = BigInt::from(ell);
        fac.into_iter()
            .map(|(g, e)| {
                let gtheta = self.reduce_poly(lift(&g));
                let ideal = self.ideal_from_generators(&[self.from_int(ellb.clone()), gtheta]);
                let residue_field = FiniteField::new(g.clone())?;
                Ok(PrimeIdeal {
                    ell,
                    f: g.degree(),
                    e,
                    g_poly: g,
                    ideal,
                    residue_field,
                })
            })
            .collect()
    }

    /// Primes over an unramified `ell`; ramified and index primes are refused.
    pub fn factor_prime(&self, ell: u64) -> Result<Vec<PrimeIdeal>> {
        if (self.discriminant() % BigInt::from(ell)).is_zero() {
            return Err(Error::RamifiedOrIndexPrime(ell));
        }
        self.decompose(ell)
    }

    /// Every prime ideal of norm at most `bound` (index primes skipped),
    /// ordered by norm, then `ell`, then canonical `g_poly`.
    pub fn primes_up_to_norm(&self, bound: u64) -> Vec<PrimeIdeal> {
        let mut out: Vec<PrimeIdeal> = primes()
            .take_while(|&ell| ell <= bound)
            .filter_map(|ell| self.decompose(ell).ok())
            .flatten()
            .filter(|p| p.norm() <= bound)
            .collect();
        out.sort_by(|a, b| {
            (a.norm(), a.ell)
                .cmp(&(b.norm(), b.ell))
                .then_with(|| a.g_poly.canonical_cmp(&b.g_poly))
        });
        out
    }

    /// Prime ideals dividing `a`, with exponents.
    pub fn factor_ideal(&self, a: &IdealHNF) -> Result<Vec<(PrimeIdeal, u32)>> {
        let mut out = Vec::new();
        let mut rest = a.clone();
        let n = a.norm().to_u64().ok_or(Error::CapExceeded {
            what: "ideal norm",
            value: u128::MAX,
            cap: u64::MAX as u128,
        })?;
        for (ell, _) in crate::algebra::fp::factor_u64(n) {
            for p in self.decompose(ell)? {
                let mut k = 0;
                while p.ideal().divides(&rest) && !rest.is_unit_ideal() {
                    // divide: rest = (N(p) : p) rest / N(p)
                    rest = self.divide_by_prime(&rest, &p);
                    k += 1;
                }
                if k > 0 {
                    out.push((p, k));
                }
            }
        }
        if !rest.is_unit_ideal() {
            return Err(Error::InvalidInput("ideal factorization did not terminate".into()));
        }
        Ok(out)
    }

    /// `a p^{-1}` for a prime `p` dividing `a`.
    pub fn divide_by_prime(&self, a: &IdealHNF, p: &PrimeIdeal) -> IdealHNF {
        // a p^{-1} = { x : x p ⊆ a }, computed as (ℓ a : p) / ℓ
        let ell = BigInt::from(p.ell);
        let q = self.ideal_quotient(&self.from_int(ell.clone()), p.ideal());
        let prod = self.ideal_product(a, &q);
        let cols: Vec<Vec<BigInt>> = prod
            .basis()
            .into_iter()
            .map(|e| e.0.into_iter().map(|c| c / &ell).collect())
            .collect();
        self.hnf_of_columns(&cols)
    }
}
