//! Finite abelian groups: quotients of `Z^n` by a full-rank lattice, and
//! groups given by enumeration with a multiplication closure.

use std::collections::HashMap;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::intmat::IntMatrix;
use crate::error::{Error, Result};

/// `Z^n / L` for a full-rank lattice `L` spanned by the given rows, in
/// Smith form `⊕ Z/d_i` with every `d_i > 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    n: usize,
    invariants: Vec<u64>,
    // columns of V reduced mod d_i, only for d_i > 1
    proj: Vec<Vec<u64>>,
}

impl Quotient {
    pub fn new(n: usize, relations: &[Vec<BigInt>]) -> Result<Self> {
        if n == 0 {
            return Ok(Quotient {
                n,
                invariants: Vec::new(),
                proj: Vec::new(),
            });
        }
        if relations.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("relation length mismatch".into()));
        }
        let m = IntMatrix::from_rows(relations);
        let (_, d, v) = m.smith_normal_form();
        let mut invariants = Vec::new();
        let mut proj = Vec::new();
        for i in 0..n {
            let di = if i < d.rows() { d[(i, i)].abs() } else { BigInt::zero() };
            if di.is_zero() {
                return Err(Error::InvalidInput("relation lattice is not of full rank".into()));
            }
            let di = di.to_u64().ok_or(Error::CapExceeded {
                what: "invariant factor",
                value: u128::MAX,
                cap: u64::MAX as u128,
            })?;
            if di == 1 {
                continue;
            }
            let bd = BigInt::from(di);
            proj.push((0..n).map(|j| v[(j, i)].mod_floor(&bd).to_u64().unwrap()).collect());
            invariants.push(di);
        }
        Ok(Quotient { n, invariants, proj })
    }

    pub fn from_i64(n: usize, relations: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = relations
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(n, &rows)
    }

    /// `Z^n / (⊕ m_i Z + <extra>)`.
    pub fn of_cyclic_product(moduli: &[u64], extra: &[Vec<i64>]) -> Result<Self> {
        let n = moduli.len();
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0i64; n];
                r[i] = moduli[i] as i64;
                r
            })
            .collect();
        rows.extend(extra.iter().cloned());
        Self::from_i64(n, &rows)
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    pub fn project(&self, x: &[i64]) -> Vec<u64> {
        assert_eq!(x.len(), self.n);
        self.proj
            .iter()
            .zip(&self.invariants)
            .map(|(col, &d)| {
                let d = d as i128;
                let s = x
                    .iter()
                    .zip(col)
                    .fold(0i128, |acc, (&a, &c)| (acc + (a as i128 % d) * c as i128) % d);
                s.rem_euclid(d) as u64
            })
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.invariants)
            .map(|((&x, &y), &d)| ((x as u128 + y as u128) % d as u128) as u64)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.invariants)
            .map(|(&x, &d)| (d - x % d) % d)
            .collect()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.invariants.len()]
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariants {
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

/// A finite abelian group built by greedy generation from a candidate list.
#[derive(Debug, Clone)]
pub struct EnumeratedGroup<T> {
    quotient: Quotient,
    elements: Vec<T>,
    coords: Vec<Vec<u64>>,
    index: HashMap<T, usize>,
    by_coords: HashMap<Vec<u64>, usize>,
}

impl<T: Clone + Eq + Hash> EnumeratedGroup<T> {
    /// Candidates must cover the group. Enumeration stops early once
    /// `order_hint` elements have been reached.
    pub fn build<I, F>(identity: T, candidates: I, order_hint: Option<usize>, mul: F) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        F: Fn(&T, &T) -> T,
    {
        let mut elems: Vec<T> = vec![identity.clone()];
        let mut exps: Vec<Vec<i64>> = vec![Vec::new()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut relations: Vec<Vec<i64>> = Vec::new();
        for x in candidates {
            if order_hint.is_some_and(|n| elems.len() >= n) {
                break;
            }
            if index.contains_key(&x) {
                continue;
            }
            let g = relations.len();
            for e in exps.iter_mut() {
                e.push(0);
            }
            for r in relations.iter_mut() {
                r.push(0);
            }
            // smallest m with x^m in H
            let mut y = x.clone();
            let mut m = 1i64;
            let mut powers = vec![x.clone()];
            while !index.contains_key(&y) {
                y = mul(&y, &x);
                powers.push(y.clone());
                m += 1;
            }
            powers.pop();
            let mut rel: Vec<i64> = exps[index[&y]].iter().map(|&a| -a).collect();
            rel[g] += m;
            relations.push(rel);
            let base = elems.len();
            for (k, xk) in powers.iter().enumerate() {
                for h in 0..base {
                    let z = mul(xk, &elems[h]);
                    let mut e = exps[h].clone();
                    e[g] = k as i64 + 1;
                    index.insert(z.clone(), elems.len());
                    elems.push(z);
                    exps.push(e);
                }
            }
        }
        if let Some(n) = order_hint {
            if elems.len() != n {
                return Err(Error::InvalidInput(format!(
                    "enumeration reached {} elements, expected {n}",
                    elems.len()
                )));
            }
        }
        let quotient = Quotient::from_i64(relations.len(), &relations)?;
        debug_assert_eq!(quotient.order(), elems.len() as u128);
        let coords: Vec<Vec<u64>> = exps.iter().map(|e| quotient.project(e)).collect();
        let by_coords = coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Ok(EnumeratedGroup {
            quotient,
            elements: elems,
            coords,
            index,
            by_coords,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn invariants(&self) -> &[u64] {
        self.quotient.invariants()
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn dlog(&self, x: &T) -> Option<&[u64]> {
        self.index.get(x).map(|&i| self.coords[i].as_slice())
    }

    pub fn element(&self, coords: &[u64]) -> Option<&T> {
        self.by_coords.get(coords).map(|&i| &self.elements[i])
    }
}
