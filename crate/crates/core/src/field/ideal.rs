//! Integral ideals of `Z[θ]` as Hermite normal forms.
//!
//! Basis vectors are the columns of an upper triangular matrix with positive
//! diagonal; entries right of a diagonal entry are reduced modulo it. The
//! ideal `(31, θ - 8)` of `Z[sqrt 2]` is `[[31, 23], [0, 1]]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::descriptor::FieldDescriptor;
use super::element::Element;
use crate::algebra::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealHNF {
    rows: Vec<Vec<BigInt>>,
    norm: BigInt,
}

impl Serialize for IdealHNF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl IdealHNF {
    fn from_matrix(h: &IntMatrix) -> Self {
        let norm = (0..h.rows()).map(|i| h[(i, i)].clone()).product();
        IdealHNF {
            rows: h.to_rows(),
            norm,
        }
    }

    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn degree(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.degree()).map(|i| self.rows[i][i].clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm.is_one()
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.rows)
    }

    /// Basis elements (the columns).
    pub fn basis(&self) -> Vec<Element> {
        let n = self.degree();
        (0..n)
            .map(|j| Element((0..n).map(|i| self.rows[i][j].clone()).collect()))
            .collect()
    }

    /// Entries as small integers, for display.
    pub fn rows_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_i64()).collect())
            .collect()
    }

    /// Canonical representative of `x` modulo the lattice: coordinates in
    /// `[0, h_ii)`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        let mut v = x.to_vec();
        for i in (0..n).rev() {
            let q = v[i].div_floor(&self.rows[i][i]);
            if q.is_zero() {
                continue;
            }
            for k in 0..=i {
                v[k] -= &q * &self.rows[k][i];
            }
        }
        v
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.reduce(&x.0).iter().all(|c| c.is_zero())
    }

    /// True when `self ⊇ other`.
    pub fn divides(&self, other: &IdealHNF) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }
}

impl FieldDescriptor {
    /// HNF of the lattice spanned by the given coordinate columns, which must
    /// have full rank.
    pub fn hnf_of_columns(&self, cols: &[Vec<BigInt>]) -> IdealHNF {
        let n = self.degree();
        let m = IntMatrix::from_columns(n, cols);
        let h = m.hermite_basis().expect("ideal lattice of full rank");
        IdealHNF::from_matrix(&h)
    }

    pub fn unit_ideal(&self) -> IdealHNF {
        IdealHNF::from_matrix(&IntMatrix::identity(self.degree()))
    }

    pub fn ideal_from_int(&self, m: &BigInt) -> IdealHNF {
        let m = m.abs();
        assert!(!m.is_zero(), "zero ideal");
        let n = self.degree();
        let mut h = IntMatrix::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = m.clone();
        }
        IdealHNF::from_matrix(&h)
    }

    /// Ideal generated by the given nonzero elements.
    pub fn ideal_from_generators(&self, gens: &[Element]) -> IdealHNF {
        let n = self.degree();
        let mut cols = Vec::new();
        let theta = self.theta();
        for g in gens {
            let mut cur = g.clone();
            for k in 0..n {
                cols.push(cur.0.clone());
                if k + 1 < n {
                    cur = self.mul(&cur, &theta);
                }
            }
        }
        self.hnf_of_columns(&cols)
    }

    pub fn principal_ideal(&self, x: &Element) -> IdealHNF {
        let nrm = self.norm(x).abs();
        let mut cols: Vec<Vec<BigInt>> = self.mult_matrix(x).columns();
        // the norm lies in (x); adding it keeps entries small
        for i in 0..self.degree() {
            let mut c = vec![BigInt::zero(); self.degree()];
            c[i] = nrm.clone();
            cols.push(c);
        }
        self.hnf_of_columns(&cols)
    }

    pub fn ideal_product(&self, a: &IdealHNF, b: &IdealHNF) -> IdealHNF {
        if a.is_unit_ideal() {
            return b.clone();
        }
        if b.is_unit_ideal() {
            return a.clone();
        }
        let n = self.degree();
        let ab = a.basis();
        let bb = b.basis();
        let mut cols = Vec::with_capacity(n * n + n);
        for x in &ab {
            for y in &bb {
                cols.push(self.mul(x, y).0);
            }
        }
        let nn = a.norm() * b.norm();
        for i in 0..n {
            let mut c = vec![BigInt::zero(); n];
            c[i] = nn.clone();
            cols.push(c);
        }
        self.hnf_of_columns(&cols)
    }

    pub fn ideal_pow(&self, a: &IdealHNF, e: u32) -> IdealHNF {
        (0..e).fold(self.unit_ideal(), |acc, _| self.ideal_product(&acc, a))
    }

    pub fn ideal_sum(&self, a: &IdealHNF, b: &IdealHNF) -> IdealHNF {
        let mut cols = a.basis();
        cols.extend(b.basis());
        let cols: Vec<Vec<BigInt>> = cols.into_iter().map(|e| e.0).collect();
        self.hnf_of_columns(&cols)
    }

    pub fn is_coprime(&self, a: &IdealHNF, b: &IdealHNF) -> bool {
        self.ideal_sum(a, b).is_unit_ideal()
    }

    /// `(δ : b) = {x : x b ⊆ (δ)}`; equal to `δ b^{-1}` for invertible `b`.
    pub fn ideal_quotient(&self, delta: &Element, b: &IdealHNF) -> IdealHNF {
        let n = self.degree();
        let m = self.mult_matrix(delta);
        let det = m.determinant();
        let d = det.abs();
        // adj(M) = det · M^{-1}; y ∈ (δ) iff adj(M) y ≡ 0 mod det
        let adj = adjugate(&m);
        let mut stacked: Vec<Vec<BigInt>> = Vec::with_capacity(n * n);
        for bj in b.basis() {
            let prod = adj.mul(&self.mult_matrix(&bj));
            stacked.extend(prod.to_rows());
        }
        let rows = stacked.len();
        let mut big = IntMatrix::zeros(rows, n + rows);
        for (i, r) in stacked.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                big[(i, j)] = c.clone();
            }
            big[(i, n + i)] = d.clone();
        }
        let cols: Vec<Vec<BigInt>> = big.kernel().into_iter().map(|k| k[..n].to_vec()).collect();
        self.hnf_of_columns(&cols)
    }
}

/// Adjugate of a square integer matrix.
pub fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, n);
    if n == 1 {
        out[(0, 0)] = BigInt::one();
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            let mut minor = IntMatrix::zeros(n - 1, n - 1);
            for (ri, r) in (0..n).filter(|&r| r != j).enumerate() {
                for (ci, c) in (0..n).filter(|&c| c != i).enumerate() {
                    minor[(ri, ci)] = m[(r, c)].clone();
                }
            }
            let det = minor.determinant();
            out[(i, j)] = if (i + j) % 2 == 0 { det } else { -det };
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q2() -> FieldDescriptor {
        FieldDescriptor::real_quadratic(2).unwrap()
    }

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn prime_over_31() {
        let f = q2();
        let v = f.ideal_from_generators(&[f.from_int(31), f.element(&[-8, 1])]);
        assert_eq!(v.rows(), big(&[&[31, 23], &[0, 1]]).as_slice());
        assert_eq!(v.norm(), &BigInt::from(31));
        let vbar = f.ideal_from_generators(&[f.from_int(31), f.element(&[8, 1])]);
        assert_eq!(f.ideal_product(&v, &vbar), f.ideal_from_int(&BigInt::from(31)));
        assert_eq!(f.ideal_product(&v, &f.unit_ideal()), v);
        let seven = f.ideal_from_int(&BigInt::from(7));
        assert_eq!(f.ideal_product(&seven, &f.unit_ideal()), seven);
        assert!(v.contains(&f.element(&[7, 3])));
        assert_eq!(f.principal_ideal(&f.element(&[7, 3])), v);
    }

    #[test]
    fn adjugate_identity() {
        let m = IntMatrix::from_rows(&[vec![2i64, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let prod = m.mul(&adjugate(&m));
        let d = m.determinant();
        assert_eq!(prod, IntMatrix::diagonal(&[d.clone(), d.clone(), d]));
    }

    #[test]
    fn coprimality() {
        let f = q2();
        let v = f.ideal_from_generators(&[f.from_int(31), f.element(&[-8, 1])]);
        assert!(f.is_coprime(&v, &f.ideal_from_int(&BigInt::from(7))));
        assert!(!f.is_coprime(&v, &f.ideal_from_int(&BigInt::from(31))));
    }

    fn gen_ideal(f: &FieldDescriptor, c: &[i64], m: i64) -> Option<IdealHNF> {
        let x = f.element(c);
        if f.norm(&x).is_zero() {
            return None;
        }
        Some(f.ideal_from_generators(&[x, f.from_int(m)]))
    }

    proptest! {
        #[test]
        fn product_laws(
            d in prop::sample::select(vec![2u64, 3, 5, 6, 15]),
            cs in prop::collection::vec((prop::collection::vec(-12i64..12, 2), 1i64..15), 3),
        ) {
            let f = FieldDescriptor::real_quadratic(d).unwrap();
            let ids: Vec<IdealHNF> = cs.iter().filter_map(|(c, m)| gen_ideal(&f, c, *m)).collect();
            prop_assume!(ids.len() == 3);
            let (a, b, c) = (&ids[0], &ids[1], &ids[2]);
            let ab = f.ideal_product(a, b);
            prop_assert_eq!(&ab, &f.ideal_product(b, a));
            prop_assert_eq!(ab.norm(), &(a.norm() * b.norm()));
            prop_assert_eq!(f.ideal_product(&ab, c), f.ideal_product(a, &f.ideal_product(b, c)));
        }

        #[test]
        fn quotient_matches_conjugate_formula(
            d in prop::sample::select(vec![2u64, 3, 5, 7, 10]),
            c in prop::collection::vec(-9i64..9, 2),
            m in 1i64..12,
        ) {
            let f = FieldDescriptor::real_quadratic(d).unwrap();
            let x = f.element(&c);
            prop_assume!(!f.norm(&x).is_zero());
            let b = f.ideal_from_generators(&[x, f.from_int(m)]);
            let delta = f.from_int(b.norm().clone());
            // over the maximal order (N(b) : b) = conj(b)
            let conj_gens: Vec<Element> = b.basis().iter().map(|e| {
                let fp = f.min_poly();
                Element(vec![&e.0[0] - &fp[1] * &e.0[1], -&e.0[1]])
            }).collect();
            let bbar = f.ideal_from_generators(&conj_gens);
            prop_assert_eq!(f.ideal_quotient(&delta, &b), bbar.clone());
            prop_assert_eq!(f.ideal_product(&b, &bbar), f.ideal_from_int(b.norm()));
        }
    }
}
