//! Exterior algebra of F_p^r.
//!
//! A degree-`j` multivector stores one coordinate per `j`-subset of
//! `{0, .., r-1}`. Subsets are indexed in colexicographic order through the
//! combinatorial number system: `{s_0 < s_1 < ..}` has index `sum C(s_i, i+1)`.
//! Serialized coordinate vectors depend on this order.

use super::fp::{add_mod, mul_mod, sub_mod};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Bitmask of the subset at colex position `index` among `degree`-subsets.
pub fn subset_at(mut index: usize, degree: usize) -> u64 {
    let mut mask = 0u64;
    for i in (1..=degree).rev() {
        // largest c with C(c, i) <= index
        let mut c = i - 1;
        while binomial(c + 1, i) <= index {
            c += 1;
        }
        index -= binomial(c, i);
        mask |= 1 << c;
    }
    mask
}

/// Colex position of a subset given as a bitmask.
pub fn subset_index(mask: u64) -> usize {
    let mut idx = 0;
    let mut i = 0;
    let mut m = mask;
    while m != 0 {
        let s = m.trailing_zeros() as usize;
        i += 1;
        idx += binomial(s, i);
        m &= m - 1;
    }
    idx
}

/// Sign of `e_a ∧ e_b` relative to `e_{a ∪ b}`; `None` when the subsets meet.
fn merge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some(inversions % 2 == 1)
}

/// Homogeneous element of `Λ^degree(F_p^rank)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiVector {
    p: u64,
    rank: usize,
    degree: usize,
    coords: Vec<u64>,
}

impl MultiVector {
    pub fn zero(p: u64, rank: usize, degree: usize) -> Self {
        let len = binomial(rank, degree);
        MultiVector {
            p,
            rank,
            degree,
            coords: vec![0; len],
        }
    }

    /// The unit `1 ∈ Λ^0`.
    pub fn one(p: u64, rank: usize) -> Self {
        MultiVector {
            p,
            rank,
            degree: 0,
            coords: vec![1 % p],
        }
    }

    pub fn from_coords(p: u64, rank: usize, degree: usize, coords: Vec<u64>) -> Self {
        assert!(degree <= rank, "degree {degree} exceeds rank {rank}");
        assert_eq!(coords.len(), binomial(rank, degree), "coordinate count");
        MultiVector {
            p,
            rank,
            degree,
            coords: coords.into_iter().map(|c| c % p).collect(),
        }
    }

    /// Degree-one vector with the given coordinates.
    pub fn vector(p: u64, coords: &[u64]) -> Self {
        Self::from_coords(p, coords.len(), 1, coords.to_vec())
    }

    /// Basis blade `e_{i_1} ∧ ... ∧ e_{i_j}` for sorted distinct indices.
    pub fn basis(p: u64, rank: usize, indices: &[usize]) -> Self {
        let mut mask = 0u64;
        for &i in indices {
            assert!(i < rank && mask & (1 << i) == 0, "bad basis index list");
            mask |= 1 << i;
        }
        let mut v = Self::zero(p, rank, indices.len());
        v.coords[subset_index(mask)] = 1 % p;
        v
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &MultiVector) -> MultiVector {
        self.check_compatible(other);
        assert_eq!(self.degree, other.degree, "adding different degrees");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| add_mod(a, b, self.p))
            .collect();
        MultiVector {
            coords,
            ..self.clone()
        }
    }

    pub fn neg(&self) -> MultiVector {
        MultiVector {
            coords: self.coords.iter().map(|&a| sub_mod(0, a, self.p)).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, s: u64) -> MultiVector {
        MultiVector {
            coords: self.coords.iter().map(|&a| mul_mod(a, s % self.p, self.p)).collect(),
            ..self.clone()
        }
    }

    fn check_compatible(&self, other: &MultiVector) {
        assert_eq!(self.p, other.p, "multivectors over different fields");
        assert_eq!(self.rank, other.rank, "multivectors of different rank");
    }

    /// Exterior product. Degrees above the rank give the empty (zero) vector
    /// of that degree.
    pub fn wedge(&self, other: &MultiVector) -> MultiVector {
        self.check_compatible(other);
        let p = self.p;
        let degree = self.degree + other.degree;
        if degree > self.rank {
            return MultiVector {
                p,
                rank: self.rank,
                degree,
                coords: Vec::new(),
            };
        }
        let mut out = Self::zero(p, self.rank, degree);
        for (i, &a) in self.coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let ma = subset_at(i, self.degree);
            for (j, &b) in other.coords.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let mb = subset_at(j, other.degree);
                if let Some(negative) = merge_sign(ma, mb) {
                    let k = subset_index(ma | mb);
                    let t = mul_mod(a, b, p);
                    out.coords[k] = if negative {
                        sub_mod(out.coords[k], t, p)
                    } else {
                        add_mod(out.coords[k], t, p)
                    };
                }
            }
        }
        out
    }
}

/// Free-function form of [`MultiVector::wedge`].
pub fn wedge(u: &MultiVector, w: &MultiVector) -> MultiVector {
    u.wedge(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn colex_order_rank3_degree2() {
        let masks: Vec<u64> = (0..3).map(|i| subset_at(i, 2)).collect();
        assert_eq!(masks, vec![0b011, 0b101, 0b110]);
        for (i, &m) in masks.iter().enumerate() {
            assert_eq!(subset_index(m), i);
        }
    }

    #[test]
    fn subset_index_roundtrip() {
        for rank in 0..7usize {
            for degree in 0..=rank {
                for i in 0..binomial(rank, degree) {
                    let m = subset_at(i, degree);
                    assert_eq!(m.count_ones() as usize, degree);
                    assert!(m < 1 << rank);
                    assert_eq!(subset_index(m), i);
                }
            }
        }
    }

    #[test]
    fn wedge_examples() {
        let p = 5;
        let e1 = MultiVector::basis(p, 2, &[0]);
        let e2 = MultiVector::basis(p, 2, &[1]);
        let e12 = MultiVector::basis(p, 2, &[0, 1]);
        assert_eq!(e1.wedge(&e2), e12);
        assert!(e1.wedge(&e1).is_zero());
        assert_eq!(e1.add(&e2).wedge(&e2), e12);
        assert_eq!(e2.wedge(&e1), e12.neg());
    }

    #[test]
    fn wedge_past_rank_is_zero() {
        let e = MultiVector::basis(7, 1, &[0]);
        let w = e.wedge(&e);
        assert_eq!(w.degree(), 2);
        assert!(w.is_zero());
    }

    fn mv(p: u64, rank: usize, degree: usize) -> impl Strategy<Value = MultiVector> {
        proptest::collection::vec(0..p, binomial(rank, degree))
            .prop_map(move |c| MultiVector::from_coords(p, rank, degree, c))
    }

    proptest! {
        #[test]
        fn graded_anticommutative(
            (a, b) in (0usize..=4, 0usize..=4).prop_flat_map(|(i, j)| (mv(7, 4, i), mv(7, 4, j)))
        ) {
            let ab = a.wedge(&b);
            let ba = b.wedge(&a);
            if (a.degree() * b.degree()) % 2 == 1 {
                prop_assert_eq!(ab, ba.neg());
            } else {
                prop_assert_eq!(ab, ba);
            }
        }

        #[test]
        fn associative(
            (a, b, c) in (0usize..=2, 0usize..=2, 0usize..=2)
                .prop_flat_map(|(i, j, k)| (mv(5, 5, i), mv(5, 5, j), mv(5, 5, k)))
        ) {
            prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        }

        #[test]
        fn odd_square_vanishes(a in mv(3, 4, 1)) {
            prop_assert!(a.wedge(&a).is_zero());
        }
    }
}
