//! Elements of `Z[θ]` in the power basis and their arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::descriptor::FieldDescriptor;
use super::sturm::sign_at_root;
use crate::algebra::IntMatrix;

/// Coordinates w.r.t. `1, θ, .., θ^(n-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(pub Vec<BigInt>);

impl Element {
    pub fn from_i64(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

impl FieldDescriptor {
    pub fn element(&self, coords: &[i64]) -> Element {
        let mut c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        assert!(c.len() <= self.degree(), "too many coordinates");
        c.resize(self.degree(), BigInt::zero());
        Element(c)
    }

    pub fn from_int(&self, a: impl Into<BigInt>) -> Element {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[0] = a.into();
        Element(c)
    }

    pub fn zero(&self) -> Element {
        self.from_int(0)
    }

    pub fn one(&self) -> Element {
        self.from_int(1)
    }

    pub fn theta(&self) -> Element {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[1 % self.degree()] += 1;
        Element(c)
    }

    pub fn add(&self, x: &Element, y: &Element) -> Element {
        Element(x.0.iter().zip(&y.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Element {
        Element(x.0.iter().zip(&y.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self, x: &Element) -> Element {
        Element(x.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, x: &Element, s: &BigInt) -> Element {
        Element(x.0.iter().map(|a| a * s).collect())
    }

    /// Reduces a polynomial of any degree modulo the minimal polynomial.
    pub fn reduce_poly(&self, mut r: Vec<BigInt>) -> Element {
        let n = self.degree();
        let f = self.min_poly();
        while r.len() > n {
            let c = r.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let k = r.len() - n;
            for i in 0..n {
                r[k + i] -= &c * &f[i];
            }
        }
        r.resize(n, BigInt::zero());
        Element(r)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let n = self.degree();
        let mut r = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in x.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.0.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        self.reduce_poly(r)
    }

    pub fn pow(&self, x: &Element, mut e: u64) -> Element {
        let mut base = x.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x^e` for a unit `x`, negative exponents through the inverse.
    pub fn unit_pow(&self, x: &Element, e: i64) -> Element {
        if e >= 0 {
            self.pow(x, e as u64)
        } else {
            let inv = self.unit_inverse(x).expect("not a unit");
            self.pow(&inv, e.unsigned_abs())
        }
    }

    /// Matrix of multiplication by `x`; column `j` holds `x·θ^j`.
    pub fn mult_matrix(&self, x: &Element) -> IntMatrix {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = x.clone();
        let theta = self.theta();
        for j in 0..n {
            cols.push(cur.0.clone());
            if j + 1 < n {
                cur = self.mul(&cur, &theta);
            }
        }
        IntMatrix::from_columns(n, &cols)
    }

    pub fn norm(&self, x: &Element) -> BigInt {
        if self.degree() == 2 {
            // x0^2 - a1 x0 x1 + a0 x1^2
            let f = self.min_poly();
            let (a, b) = (&x.0[0], &x.0[1]);
            return a * a - &f[1] * a * b + &f[0] * b * b;
        }
        self.mult_matrix(x).determinant()
    }

    pub fn trace(&self, x: &Element) -> BigInt {
        let m = self.mult_matrix(x);
        (0..self.degree()).map(|i| m[(i, i)].clone()).sum()
    }

    /// Inverse of an element of norm ±1.
    pub fn unit_inverse(&self, x: &Element) -> Option<Element> {
        let nrm = self.norm(x);
        if !nrm.abs().is_one() {
            return None;
        }
        if self.degree() == 2 {
            // conjugate is trace - x
            let f = self.min_poly();
            let conj = Element(vec![&x.0[0] - &f[1] * &x.0[1], -&x.0[1]]);
            return Some(self.scale(&conj, &nrm));
        }
        // solve M y = e_0 by adjugate: det = ±1
        let m = self.mult_matrix(x);
        let n = self.degree();
        let det = m.determinant();
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            // Cramer: replace column i by e_0
            let mut mi = m.clone();
            for r in 0..n {
                mi[(r, i)] = if r == 0 { BigInt::one() } else { BigInt::zero() };
            }
            y.push(mi.determinant() * &det);
        }
        let inv = Element(y);
        debug_assert_eq!(self.mul(x, &inv), self.one());
        Some(inv)
    }

    /// Exact signs (+1/-1) of `x` under the real embeddings, ordered by
    /// descending root. Zero is reported as 0.
    pub fn real_signs(&self, x: &Element) -> Vec<i8> {
        if self.degree() == 2 && self.signature().0 == 2 {
            return self.quadratic_signs(x);
        }
        self.sturm_signs(x)
    }

    /// Signs through Sturm-Tarski queries only.
    pub fn sturm_signs(&self, x: &Element) -> Vec<i8> {
        self.root_intervals()
            .iter()
            .map(|iv| sign_at_root(self.min_poly(), iv, &x.0))
            .collect()
    }

    // x0 + x1 θ with θ = (-a1 ± sqrt(D)) / 2: sign of (2 x0 - a1 x1) ± x1 sqrt(D)
    fn quadratic_signs(&self, x: &Element) -> Vec<i8> {
        let f = self.min_poly();
        let disc = &f[1] * &f[1] - BigInt::from(4) * &f[0];
        let u = BigInt::from(2) * &x.0[0] - &f[1] * &x.0[1];
        let y = &x.0[1];
        let sgn = |w_sign: i8| -> i8 {
            let us = sign_of(&u);
            if y.is_zero() {
                return us;
            }
            if us == 0 || us == w_sign {
                return w_sign;
            }
            // opposite signs: compare u^2 with y^2 D
            match (&u * &u).cmp(&(y * y * &disc)) {
                std::cmp::Ordering::Greater => us,
                std::cmp::Ordering::Less => w_sign,
                std::cmp::Ordering::Equal => 0,
            }
        };
        let ys = sign_of(y);
        vec![sgn(ys), sgn(-ys)]
    }

    pub fn is_totally_positive(&self, x: &Element) -> bool {
        self.real_signs(x).iter().all(|&s| s > 0)
    }

    /// Reduction of the coordinates of `x` into `[0, m)`.
    pub fn coords_mod(&self, x: &Element, m: &BigInt) -> Vec<BigInt> {
        x.0.iter().map(|c| c.mod_floor(m)).collect()
    }
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
