//! `(O/N)^× × {±1}^{r1}` by enumeration of canonical residues.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::abelian::EnumeratedGroup;
use crate::algebra::polyfp::FpPoly;
use crate::error::{Error, Result};
use crate::field::{Element, FieldDescriptor, IdealHNF, PrimeIdeal};

/// Default cap on `N(𝔑)` for residue enumeration.
pub const RESIDUE_CAP: u64 = 100_000;

/// `Z[θ]/𝔑` with canonical residues `0 <= x_i < h_ii`, small-integer arithmetic.
#[derive(Debug, Clone)]
pub struct ResidueRing {
    n: usize,
    hnf: Vec<Vec<i128>>,
    min_poly: Vec<i128>,
}

impl ResidueRing {
    pub fn new(field: &FieldDescriptor, modulus: &IdealHNF) -> Self {
        let hnf = modulus
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| c.to_i128().expect("small modulus")).collect())
            .collect();
        let min_poly = field.min_poly().iter().map(|c| c.to_i128().expect("small coefficients")).collect();
        ResidueRing {
            n: field.degree(),
            hnf,
            min_poly,
        }
    }

    pub fn reduce(&self, x: &mut [i128]) {
        for i in (0..self.n).rev() {
            let q = x[i].div_euclid(self.hnf[i][i]);
            if q != 0 {
                for k in 0..=i {
                    x[k] -= q * self.hnf[k][i];
                }
            }
        }
    }

    pub fn canonical(&self, x: &Element) -> Vec<i64> {
        // reduce big coordinates first through the last diagonal entry's multiple
        let nrm: BigInt = (0..self.n).map(|i| BigInt::from(self.hnf[i][i])).product();
        let mut v: Vec<i128> = x
            .0
            .iter()
            .map(|c| {
                let r = c % &nrm;
                r.to_i128().unwrap()
            })
            .collect();
        self.reduce(&mut v);
        v.into_iter().map(|c| c as i64).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.n;
        let mut r = vec![0i128; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] += x as i128 * y as i128;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for i in 0..n {
                r[k - n + i] -= c * self.min_poly[i];
            }
            r[k] = 0;
            // keep the lower coefficients bounded
            let mut low = r[..n].to_vec();
            self.reduce(&mut low);
            r[..n].copy_from_slice(&low);
        }
        r.truncate(n);
        self.reduce(&mut r);
        r.into_iter().map(|c| c as i64).collect()
    }

    pub fn pow(&self, a: &[i64], mut e: u64) -> Vec<i64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn one(&self) -> Vec<i64> {
        let mut v = vec![0i128; self.n];
        v[0] = 1;
        self.reduce(&mut v);
        v.into_iter().map(|c| c as i64).collect()
    }

    /// All canonical residues in lexicographic order of the reversed coordinates.
    pub fn residues(&self) -> Vec<Vec<i64>> {
        let diag: Vec<i64> = (0..self.n).map(|i| self.hnf[i][i] as i64).collect();
        let mut out = vec![Vec::new()];
        for &d in &diag {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }
}

/// The congruence-sign group of a modulus.
#[derive(Debug, Clone)]
pub struct CongruenceSignGroup {
    modulus: IdealHNF,
    ring: ResidueRing,
    primes: Vec<PrimeIdeal>,
    residues: EnumeratedGroup<Vec<i64>>,
    r1: usize,
}

impl CongruenceSignGroup {
    pub fn new(field: &FieldDescriptor, modulus: &IdealHNF, cap: u64) -> Result<Self> {
        let norm = modulus.norm().to_u64().unwrap_or(u64::MAX);
        if norm > cap {
            return Err(Error::CapExceeded {
                what: "modulus norm",
                value: norm as u128,
                cap: cap as u128,
            });
        }
        let primes: Vec<PrimeIdeal> = field.factor_ideal(modulus)?.into_iter().map(|(p, _)| p).collect();
        let ring = ResidueRing::new(field, modulus);
        let is_unit = |x: &[i64]| {
            primes.iter().all(|p| {
                let fp = FpPoly::from_i64(p.ell(), x);
                !p.residue_field().from_poly(&fp).is_zero()
            })
        };
        let units: Vec<Vec<i64>> = ring.residues().into_iter().filter(|x| is_unit(x)).collect();
        let count = units.len();
        let residues = EnumeratedGroup::build(ring.one(), units, Some(count), |a, b| ring.mul(a, b))?;
        Ok(CongruenceSignGroup {
            modulus: modulus.clone(),
            ring,
            primes,
            residues,
            r1: field.signature().0,
        })
    }

    pub fn modulus(&self) -> &IdealHNF {
        &self.modulus
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    /// Prime ideals dividing the modulus.
    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn residue_group(&self) -> &EnumeratedGroup<Vec<i64>> {
        &self.residues
    }

    pub fn residue_order(&self) -> usize {
        self.residues.order()
    }

    pub fn order(&self) -> u128 {
        self.residues.order() as u128 * (1u128 << self.r1)
    }

    /// Cyclic orders of the coordinates: residue invariants then one 2 per real place.
    pub fn moduli(&self) -> Vec<u64> {
        let mut m = self.residues.invariants().to_vec();
        m.extend(std::iter::repeat_n(2, self.r1));
        m
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        let rows: Vec<Vec<i64>> = Vec::new();
        crate::algebra::abelian::Quotient::of_cyclic_product(&self.moduli(), &rows)
            .map(|q| q.invariants().to_vec())
            .unwrap_or_default()
    }

    pub fn is_unit(&self, x: &Element) -> bool {
        self.primes.iter().all(|p| !p.contains(x))
    }

    /// Coordinates of the image of `x`: residue discrete log, then sign bits
    /// (1 for a negative embedding).
    pub fn dlog(&self, field: &FieldDescriptor, x: &Element) -> Result<Vec<i64>> {
        if x.is_zero() || !self.is_unit(x) {
            return Err(Error::NotCoprime);
        }
        let res = self.ring.canonical(x);
        let mut out: Vec<i64> = self
            .residues
            .dlog(&res)
            .expect("unit residues are enumerated")
            .iter()
            .map(|&c| c as i64)
            .collect();
        out.extend(field.real_signs(x).iter().map(|&s| i64::from(s < 0)));
        Ok(out)
    }
}
