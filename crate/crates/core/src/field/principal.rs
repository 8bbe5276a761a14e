//! Deciding principality and finding generators.
//!
//! Real quadratic fields: some generator `α = x + yθ` of `a` can be moved by
//! a power of `ε` to `1 <= |α/α'| < ε^2`, which gives
//! `|y| sqrt(D) <= (ε + 1) sqrt(N a)`. Every such `y` (a multiple of the
//! second diagonal entry) is tried, solving `N(x + yθ) = ±N a` for `x`.
//! Other degrees fall back to a bounded box search that can only succeed or
//! give up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::descriptor::FieldDescriptor;
use super::element::Element;
use super::ideal::IdealHNF;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrincipalSearch {
    Found(Element),
    NotFound,
    Inconclusive(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Most values of `y` tried in the quadratic search.
    pub max_steps: u64,
    /// Most lattice points visited by the box search.
    pub max_box: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_steps: 10_000_000,
            max_box: 2_000_000,
        }
    }
}

impl FieldDescriptor {
    pub fn principal_generator(&self, a: &IdealHNF, cfg: &SearchConfig) -> PrincipalSearch {
        if a.is_unit_ideal() {
            return PrincipalSearch::Found(self.one());
        }
        let found = if self.degree() == 2 && self.signature().0 == 2 {
            self.quadratic_search(a, cfg)
        } else {
            self.box_search(a, cfg)
        };
        if let PrincipalSearch::Found(x) = &found {
            assert_eq!(&self.principal_ideal(x), a, "generator failed HNF verification");
        }
        found
    }

    /// Integer upper bound for `max(|ε|, |ε'|) + 1`.
    fn unit_size_bound(&self) -> BigInt {
        let f = self.min_poly();
        let d = &f[1] * &f[1] - BigInt::from(4) * &f[0];
        let eps = &self.fundamental_units()[0];
        let u = (BigInt::from(2) * &eps.0[0] - &f[1] * &eps.0[1]).abs();
        let v = eps.0[1].abs();
        (u + v * (d.sqrt() + 1)) / 2 + 2
    }

    fn quadratic_search(&self, a: &IdealHNF, cfg: &SearchConfig) -> PrincipalSearch {
        let f = self.min_poly();
        let a1 = &f[1];
        let disc = a1 * a1 - BigInt::from(4) * &f[0];
        let n = a.norm().clone();
        let step = a.entry(1, 1).clone();
        let e = self.unit_size_bound();
        let ymax: BigInt = (&e * &e * &n / &disc).sqrt() + 1;
        let steps = (&ymax / &step).to_u64().unwrap_or(u64::MAX);
        if steps > cfg.max_steps {
            return PrincipalSearch::Inconclusive(format!(
                "quadratic search needs {steps} steps (cap {})",
                cfg.max_steps
            ));
        }
        let four_n = BigInt::from(4) * &n;
        let mut y = BigInt::zero();
        while y <= ymax {
            for ys in [y.clone(), -y.clone()] {
                for s in [1i32, -1] {
                    let delta = &disc * &ys * &ys + if s > 0 { four_n.clone() } else { -four_n.clone() };
                    if delta.is_negative() {
                        continue;
                    }
                    let t = delta.sqrt();
                    if &t * &t != delta {
                        continue;
                    }
                    for tt in [t.clone(), -t.clone()] {
                        let num = a1 * &ys + tt;
                        if num.is_odd() {
                            continue;
                        }
                        let cand = Element(vec![num / 2, ys.clone()]);
                        if a.contains(&cand) {
                            return PrincipalSearch::Found(cand);
                        }
                    }
                }
                if y.is_zero() {
                    break;
                }
            }
            y += &step;
        }
        PrincipalSearch::NotFound
    }

    fn box_search(&self, a: &IdealHNF, cfg: &SearchConfig) -> PrincipalSearch {
        let n = self.degree();
        let basis = a.basis();
        let target = a.norm().clone();
        let mut visited = 0u64;
        // shells of growing sup-norm
        for radius in 1i64.. {
            let side = (2 * radius + 1) as u64;
            if side.checked_pow(n as u32).is_none_or(|t| t > cfg.max_box) {
                break;
            }
            let mut c = vec![-radius; n];
            loop {
                if c.iter().any(|x| x.abs() == radius) {
                    visited += 1;
                    let mut x = self.zero();
                    for (cj, bj) in c.iter().zip(&basis) {
                        x = self.add(&x, &self.scale(bj, &BigInt::from(*cj)));
                    }
                    if self.norm(&x).abs() == target {
                        return PrincipalSearch::Found(x);
                    }
                }
                let mut i = 0;
                while i < n && c[i] == radius {
                    c[i] = -radius;
                    i += 1;
                }
                if i == n {
                    break;
                }
                c[i] += 1;
            }
        }
        PrincipalSearch::Inconclusive(format!("no generator among {visited} lattice points"))
    }
}
