//! Finite fields `F_q = F_ell[t]/(g)` and power-residue characters.

use num_bigint::BigUint;

use super::fp::{factor_u64, mul_mod};
use super::polyfp::{is_irreducible, FpPoly};
use crate::error::{Error, Result};

/// Largest field size for which generators are verified by factoring `q - 1`.
pub const MAX_FIELD_SIZE: u64 = 1_000_000_000;

/// Conway polynomials for p in {2,3,5,7}, k <= 4, little-endian coefficients.
const CONWAY: &[(u64, &[u64])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (3, &[1, 1]),
    (3, &[2, 2, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 0, 0, 2, 1]),
    (5, &[3, 1]),
    (5, &[2, 4, 1]),
    (5, &[3, 3, 0, 1]),
    (5, &[2, 4, 4, 0, 1]),
    (7, &[4, 1]),
    (7, &[3, 6, 1]),
    (7, &[4, 0, 6, 1]),
    (7, &[3, 4, 5, 0, 1]),
];

/// Element of a finite field, coordinates w.r.t. `1, t, .., t^(f-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqElement {
    coords: Vec<u64>,
}

impl FqElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// The field `F_ell[t]/(modulus)` with `modulus` monic irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    ell: u64,
    modulus: FpPoly,
    order: u64,
}

impl FiniteField {
    pub fn new(modulus: FpPoly) -> Result<Self> {
        let ell = modulus.modulus();
        if !is_irreducible(&modulus) || modulus.leading() != 1 {
            return Err(Error::InvalidInput(format!(
                "modulus {:?} is not monic irreducible over F_{ell}",
                modulus.coeffs()
            )));
        }
        let order = (ell as u128)
            .checked_pow(modulus.degree() as u32)
            .filter(|&q| q <= u64::MAX as u128)
            .ok_or(Error::CapExceeded {
                what: "field size",
                value: u128::MAX,
                cap: u64::MAX as u128,
            })? as u64;
        Ok(FiniteField {
            ell,
            modulus,
            order,
        })
    }

    pub fn prime(ell: u64) -> Self {
        FiniteField {
            ell,
            modulus: FpPoly::x(ell),
            order: ell,
        }
    }

    /// `F_{p^k}`: the Conway polynomial where tabulated, otherwise the first
    /// monic irreducible of degree `k` in lexicographic coefficient order.
    pub fn extension(p: u64, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("extension degree 0".into()));
        }
        if let Some((_, c)) = CONWAY
            .iter()
            .filter(|(q, _)| *q == p)
            .find(|(_, c)| c.len() == k + 1)
        {
            return Self::new(FpPoly::new(p, c.to_vec()));
        }
        let total = (p as u128).pow(k as u32);
        for code in 0..total {
            let mut c = Vec::with_capacity(k + 1);
            let mut x = code;
            for _ in 0..k {
                c.push((x % p as u128) as u64);
                x /= p as u128;
            }
            c.push(1);
            let f = FpPoly::new(p, c);
            if is_irreducible(&f) {
                return Self::new(f);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u64 {
        self.ell
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    fn wrap(&self, f: FpPoly) -> FqElement {
        let mut coords = f.coeffs().to_vec();
        coords.resize(self.degree(), 0);
        FqElement { coords }
    }

    fn poly(&self, x: &FqElement) -> FpPoly {
        FpPoly::new(self.ell, x.coords.clone())
    }

    pub fn element(&self, coords: &[u64]) -> FqElement {
        self.wrap(FpPoly::new(self.ell, coords.to_vec()).rem(&self.modulus))
    }

    pub fn from_poly(&self, f: &FpPoly) -> FqElement {
        assert_eq!(f.modulus(), self.ell);
        self.wrap(f.rem(&self.modulus))
    }

    pub fn from_u64(&self, c: u64) -> FqElement {
        self.element(&[c % self.ell])
    }

    /// The element whose coordinates are the base-`ell` digits of `code`.
    pub fn from_code(&self, mut code: u64) -> FqElement {
        let mut c = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            c.push(code % self.ell);
            code /= self.ell;
        }
        FqElement { coords: c }
    }

    pub fn zero(&self) -> FqElement {
        FqElement {
            coords: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FqElement {
        self.from_u64(1)
    }

    pub fn add(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.wrap(self.poly(a).add(&self.poly(b)))
    }

    pub fn sub(&self, a: &FqElement, b: &FqElement) -> FqElement {
        self.wrap(self.poly(a).sub(&self.poly(b)))
    }

    pub fn mul(&self, a: &FqElement, b: &FqElement) -> FqElement {
        if self.degree() == 1 {
            return FqElement {
                coords: vec![mul_mod(a.coords[0], b.coords[0], self.ell)],
            };
        }
        self.wrap(self.poly(a).mul_mod(&self.poly(b), &self.modulus))
    }

    pub fn pow(&self, a: &FqElement, exp: u64) -> FqElement {
        if self.degree() == 1 {
            return FqElement {
                coords: vec![super::fp::pow_mod(a.coords[0], exp, self.ell)],
            };
        }
        self.wrap(self.poly(a).pow_mod(&BigUint::from(exp), &self.modulus))
    }

    pub fn inv(&self, a: &FqElement) -> Result<FqElement> {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn neg(&self, a: &FqElement) -> FqElement {
        self.sub(&self.zero(), a)
    }

    fn check_size(&self) -> Result<()> {
        if self.order > MAX_FIELD_SIZE {
            return Err(Error::CapExceeded {
                what: "residue field size",
                value: self.order as u128,
                cap: MAX_FIELD_SIZE as u128,
            });
        }
        Ok(())
    }

    /// True when `g` generates the multiplicative group.
    pub fn is_generator(&self, g: &FqElement) -> Result<bool> {
        self.check_size()?;
        if g.is_zero() {
            return Ok(false);
        }
        let n = self.order - 1;
        Ok(factor_u64(n)
            .iter()
            .all(|&(r, _)| self.pow(g, n / r) != self.one()))
    }

    /// Generators in ascending code order starting from code 2.
    pub fn generators(&self) -> impl Iterator<Item = FqElement> + '_ {
        let factors = factor_u64(self.order - 1);
        let n = self.order - 1;
        (2..self.order.max(3))
            .map(|c| self.from_code(c))
            .chain(std::iter::once(self.one()).filter(|_| self.order == 2))
            .filter(move |g| !g.is_zero() && factors.iter().all(|&(r, _)| self.pow(g, n / r) != self.one()))
    }

    /// The first generator of the multiplicative group in code order.
    pub fn generator(&self) -> Result<FqElement> {
        self.check_size()?;
        Ok(self
            .generators()
            .next()
            .expect("the multiplicative group of a finite field is cyclic"))
    }
}

/// Discrete log base `g^((q-1)/p)` of `x^((q-1)/p)`: the value at `x` of the
/// order-`p` character of `F_q^×` pinned by the generator `g`.
pub fn pth_character(field: &FiniteField, x: &FqElement, p: u64, g: &FqElement) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let q = field.order();
    if !field.is_generator(g)? {
        return Err(Error::GeneratorError { q });
    }
    if (q - 1) % p != 0 {
        return Err(Error::CharacterUndefined { p, q });
    }
    Ok(pth_character_unchecked(field, x, p, g))
}

/// As [`pth_character`] with the generator and divisibility already verified.
pub fn pth_character_unchecked(field: &FiniteField, x: &FqElement, p: u64, g: &FqElement) -> u64 {
    let e = (field.order() - 1) / p;
    let zeta = field.pow(g, e);
    let y = field.pow(x, e);
    let mut acc = field.one();
    for k in 0..p {
        if acc == y {
            return k;
        }
        acc = field.mul(&acc, &zeta);
    }
    unreachable!("x^((q-1)/p) is a p-th root of unity")
}
