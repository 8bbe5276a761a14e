//! Univariate polynomials over a prime field and their factorization.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::{add_mod, factor_u64, inv_mod, mul_mod, sub_mod};

/// Below this field size linear factors are found by scanning every residue.
const ROOT_SCAN_LIMIT: u64 = 1_000_000;

/// Polynomial over F_p, coefficients little-endian and trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        Self::new(
            p,
            coeffs
                .iter()
                .map(|&c| (c as i128).rem_euclid(p as i128) as u64)
                .collect(),
        )
    }

    pub fn from_bigint(p: u64, coeffs: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            coeffs
                .iter()
                .map(|c| {
                    let r = ((c % &pb) + &pb) % &pb;
                    u64::try_from(&r).expect("reduced residue fits")
                })
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| add_mod(self.coeff(i), o.coeff(i), self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| sub_mod(self.coeff(i), o.coeff(i), self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn scale(&self, s: u64) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod(c, s, self.p)).collect(),
        )
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, p), p);
            }
        }
        FpPoly::new(p, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        if self.coeffs.len() < d.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p).expect("unit leading coefficient");
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dl - 1], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = sub_mod(r[k + j], mul_mod(c, dj, p), p);
                }
            }
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
            .collect();
        FpPoly::new(p, c)
    }

    pub fn mul_mod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, exp: &BigUint, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if exp.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, exp: u64, m: &FpPoly) -> FpPoly {
        self.pow_mod(&BigUint::from(exp), m)
    }

    /// Lexicographic-by-degree comparison used for deterministic output:
    /// degree first, then the root for linear polynomials, then coefficients
    /// from the constant term upward.
    pub fn canonical_cmp(&self, o: &FpPoly) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| match (self.linear_root(), o.linear_root()) {
                (Some(a), Some(b)) => a.cmp(&b),
                _ => self.coeffs.cmp(&o.coeffs),
            })
    }

    /// The root of a monic linear polynomial.
    pub fn linear_root(&self) -> Option<u64> {
        if self.degree() == 1 && self.leading() == 1 {
            Some(sub_mod(0, self.coeff(0), self.p))
        } else {
            None
        }
    }
}

/// `x^(p^k)` reduced modulo `m`, by `k` successive Frobenius steps.
fn frobenius_power(m: &FpPoly, k: usize) -> FpPoly {
    let p = m.modulus();
    let mut r = FpPoly::x(p).rem(m);
    for _ in 0..k {
        r = r.pow_mod_u64(p, m);
    }
    r
}

/// Rabin irreducibility test for polynomials of positive degree.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let n = f.degree();
    if f.is_zero() || n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = f.monic();
    let p = f.modulus();
    let x = FpPoly::x(p);
    if frobenius_power(&f, n) != x.rem(&f) {
        return false;
    }
    factor_u64(n as u64).iter().all(|&(r, _)| {
        let h = frobenius_power(&f, n / r as usize).sub(&x);
        f.gcd(&h).is_one()
    })
}

/// Square-free decomposition of a monic polynomial: `(g, e)` with
/// `f = prod g^e`, each `g` square-free and the `g` pairwise coprime.
fn square_free(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p) = g(x)^p over F_p
        let g = FpPoly::new(p, f.coeffs().iter().step_by(p as usize).copied().collect());
        for (h, e) in square_free(&g) {
            out.push((h, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree() > 0 {
        for (h, e) in square_free(&c) {
            out.push((h, e));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<(usize, FpPoly)> {
    let p = f.modulus();
    let x = FpPoly::x(p);
    let mut out = Vec::new();
    let mut h = f.clone();
    let mut xp = x.clone();
    let mut d = 0;
    while h.degree() >= 2 * (d + 1) {
        d += 1;
        xp = xp.pow_mod_u64(p, &h);
        let g = h.gcd(&xp.sub(&x));
        if g.degree() > 0 {
            h = h.div_rem(&g).0;
            xp = xp.rem(&h);
            out.push((d, g));
        }
    }
    if h.degree() > 0 {
        out.push((h.degree(), h));
    }
    out
}

/// Splits a product of distinct degree-`d` irreducibles.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let p = f.modulus();
    let n = f.degree();
    if n == d {
        return vec![f.monic()];
    }
    if d == 1 && p < ROOT_SCAN_LIMIT {
        return (0..p)
            .filter(|&a| f.eval(a) == 0)
            .map(|a| FpPoly::new(p, vec![sub_mod(0, a, p), 1]))
            .collect();
    }
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(d-1))
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            f.gcd(&acc)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            let b = a.pow_mod(&e, f).sub(&FpPoly::one(p));
            f.gcd(&b)
        };
        if g.degree() > 0 && g.degree() < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Factorization of a nonzero polynomial over F_p into monic irreducibles
/// with multiplicities, sorted by [`FpPoly::canonical_cmp`].
pub fn factor(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let f = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ f.modulus());
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (g, e) in square_free(&f) {
        for (d, part) in distinct_degree(&g) {
            for h in equal_degree(&part, d, &mut rng) {
                match out.iter_mut().find(|(k, _)| *k == h) {
                    Some((_, m)) => *m += e,
                    None => out.push((h, e)),
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    out
}

/// Factorization of a monic integer polynomial modulo a prime.
pub fn factor_poly_mod_ell(f: &[i64], ell: u64) -> Vec<(FpPoly, u32)> {
    factor(&FpPoly::from_i64(ell, f))
}
