//! The map `T¹ ⊗ H⁰ → H¹` and matching of Hecke eigensystems across degrees.

use serde::Serialize;

use super::functional::TpResult;
use super::level::Level;
use super::operators::{CohomologyClass, HeckeElement};
use crate::algebra::exterior::MultiVector;
use crate::algebra::fp::{inv_mod, RowSpace};
use crate::algebra::fq::{FiniteField, FqElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub hypothesis_holds: bool,
    pub dim_h0: usize,
    pub dim_h1: usize,
    pub dim_domain: usize,
    pub dim_image: usize,
    pub is_isomorphism: bool,
}

/// Dimensions of domain and image of `Ψ`, by explicit ranks over the
/// certificate functionals.
pub fn psi_report(level: &Level, p: u64, tp: &TpResult) -> PsiReport {
    let h = level.h_plus();
    let r = level.rank();
    let group = level.shifts();
    let one = CohomologyClass::indicator(p, r, h, 0);

    let mut h0 = RowSpace::new(p, h);
    for g in 0..h {
        h0.insert(&HeckeElement::shift(p, r, g).apply(&one, group).flatten());
    }

    let mut domain = RowSpace::new(p, h * r);
    let mut image = RowSpace::new(p, h * r);
    for f in &tp.certificate {
        let phi = f.as_multivector(p);
        for g in 0..h {
            let mut coeffs = vec![0u64; h * r];
            coeffs[g * r..(g + 1) * r].copy_from_slice(phi.coords());
            domain.insert(&coeffs);
            // H^0 is the orbit span of 1_1, so H·1_1 over all g covers H·1_a
            let op = HeckeElement::term(g, phi.clone());
            image.insert(&op.apply(&one, group).flatten());
        }
    }
    let dim_h1 = h * r;
    PsiReport {
        hypothesis_holds: level.eunits().index() % p as u128 != 0,
        dim_h0: h0.rank(),
        dim_h1,
        dim_domain: domain.rank(),
        dim_image: image.rank(),
        is_isomorphism: image.rank() == dim_h1 && domain.rank() == image.rank(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterOccurrence {
    /// Exponents on the cyclic factors of the prime-to-`p` quotient.
    pub exponents: Vec<u64>,
    pub in_h0: bool,
    pub in_h1: bool,
    /// A degree-one operator keeps the eigenvector nonzero; `None` when `t_p = 0`.
    pub witness: Option<bool>,
    /// Dimension of the isotypic part of `H⁰`, for small groups.
    pub isotypic_dim_h0: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenReport {
    pub extension_degree: usize,
    pub characters: Vec<CharacterOccurrence>,
    pub matched_both_degrees: bool,
}

impl EigenReport {
    pub fn count(&self) -> usize {
        self.characters.len()
    }
}

/// Largest group for which isotypic dimensions are computed by rank.
pub const RANK_CHECK_LIMIT: usize = 128;

fn strip(mut d: u64, p: u64) -> (u64, u64) {
    let mut pp = 1;
    while d % p == 0 {
        d /= p;
        pp *= p;
    }
    (d, pp)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn multiplicative_order(p: u64, n: u64) -> usize {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * p as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

/// An element of exact order `n` in `F_q^×`, `n | q - 1`.
fn root_of_unity(fq: &FiniteField, n: u64) -> Result<FqElement> {
    let q = fq.order();
    let prime_factors: Vec<u64> = crate::algebra::fp::factor_u64(n).into_iter().map(|(r, _)| r).collect();
    for code in 1..q {
        let x = fq.from_code(code);
        if x.is_zero() {
            continue;
        }
        let y = fq.pow(&x, (q - 1) / n);
        if prime_factors.iter().all(|&r| fq.pow(&y, n / r) != fq.one()) {
            return Ok(y);
        }
    }
    Err(Error::InvalidInput(format!("no element of order {n} in F_{q}")))
}

/// Class with coefficients in `F_q`: per ray class, coordinates of a multivector.
type FqClass = Vec<Vec<FqElement>>;

fn lift(fq: &FiniteField, c: &CohomologyClass) -> FqClass {
    c.components()
        .iter()
        .map(|m| m.coords().iter().map(|&x| fq.from_u64(x)).collect())
        .collect()
}

fn is_zero_class(c: &FqClass) -> bool {
    c.iter().all(|v| v.iter().all(|x| x.is_zero()))
}

fn fq_rank(fq: &FiniteField, mut rows: Vec<Vec<FqElement>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, |r| r.len());
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = fq.inv(&rows[rank][col]).expect("nonzero pivot");
        let pivot_row: Vec<FqElement> = rows[rank].iter().map(|x| fq.mul(x, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = fq.sub(x, &fq.mul(&f, y));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Characters of the prime-to-`p` quotient of the ray class group with
/// values in `F_{p^k}`, their isotypic projectors on `H⁰` and `H¹`, and a
/// degree-one witness carrying each eigenvector from `H⁰` into `H¹`.
pub fn eigensystem_report(level: &Level, p: u64, tp: &TpResult) -> Result<EigenReport> {
    let ray = level.ray();
    let h = level.h_plus();
    let r = level.rank();
    let group = level.shifts();
    let d = ray.invariant_factors().to_vec();
    let split: Vec<(u64, u64)> = d.iter().map(|&di| strip(di, p)).collect();
    let m: Vec<u64> = split.iter().map(|s| s.0).collect();
    let e = m.iter().fold(1u64, |a, &b| a / gcd(a, b) * b);
    let k = multiplicative_order(p, e);
    let fq = if k == 1 {
        FiniteField::prime(p)
    } else {
        FiniteField::extension(p, k)?
    };
    let zeta = root_of_unity(&fq, e)?;
    let powers: Vec<FqElement> = std::iter::successors(Some(fq.one()), |x| Some(fq.mul(x, &zeta)))
        .take(e as usize)
        .collect();

    let coords: Vec<Vec<u64>> = (0..h).map(|i| ray.coordinates(i).to_vec()).collect();
    // elements of order prime to p
    let pprime: Vec<usize> = (0..h)
        .filter(|&i| coords[i].iter().zip(&split).all(|(&x, &(_, pp))| x % pp == 0))
        .collect();
    let n = pprime.len() as u64;
    let n_inv = fq.from_u64(inv_mod(n % p, p).expect("prime-to-p subgroup order"));

    let one = CohomologyClass::indicator(p, r, h, 0);
    let h1_gens: Vec<CohomologyClass> = (0..r)
        .map(|i| HeckeElement::term(0, MultiVector::basis(p, r, &[i])).apply(&one, group))
        .collect();
    let witness_op = tp.certificate.first().map(|f| HeckeElement::term(0, f.as_multivector(p)));

    let mut characters = Vec::new();
    let total: u64 = m.iter().product();
    for code in 0..total {
        let mut c = Vec::with_capacity(m.len());
        let mut x = code;
        for &mi in &m {
            c.push(x % mi);
            x /= mi;
        }
        // χ(g)^{-1} as a power of ζ
        let inv_chi = |g: usize| -> &FqElement {
            let s: u64 = c
                .iter()
                .zip(&coords[g])
                .zip(&m)
                .map(|((&ci, &xi), &mi)| ci * (xi % mi) % mi * (e / mi))
                .sum::<u64>()
                % e;
            &powers[((e - s) % e) as usize]
        };
        let project = |cls: &FqClass| -> FqClass {
            (0..h)
                .map(|a| {
                    let len = cls[0].len();
                    let mut acc = vec![fq.zero(); len];
                    for &g in &pprime {
                        let w = inv_chi(g);
                        for (t, x) in acc.iter_mut().zip(&cls[group.mul(g, a)]) {
                            *t = fq.add(t, &fq.mul(w, x));
                        }
                    }
                    acc.iter().map(|t| fq.mul(t, &n_inv)).collect()
                })
                .collect()
        };
        let e0 = project(&lift(&fq, &one));
        let in_h0 = !is_zero_class(&e0);
        let in_h1 = h1_gens.iter().any(|x| !is_zero_class(&project(&lift(&fq, x))));
        let witness = witness_op.as_ref().map(|op| {
            // (e, φ) acts on a degree-0 class by scaling each component by φ
            let phi: Vec<FqElement> = op.terms()[&0].coords().iter().map(|&x| fq.from_u64(x)).collect();
            let out: FqClass = e0
                .iter()
                .map(|v| phi.iter().map(|f| fq.mul(f, &v[0])).collect())
                .collect();
            !is_zero_class(&out)
        });
        let isotypic_dim_h0 = (h <= RANK_CHECK_LIMIT).then(|| {
            let rows: Vec<Vec<FqElement>> = (0..h)
                .map(|a| {
                    let ind = CohomologyClass::indicator(p, r, h, a);
                    project(&lift(&fq, &ind)).into_iter().flatten().collect()
                })
                .collect();
            fq_rank(&fq, rows)
        });
        characters.push(CharacterOccurrence {
            exponents: c,
            in_h0,
            in_h1,
            witness,
            isotypic_dim_h0,
        });
    }
    let matched_both_degrees = characters
        .iter()
        .all(|c| c.in_h0 && c.in_h1 && c.witness.unwrap_or(true));
    Ok(EigenReport {
        extension_degree: k,
        characters,
        matched_both_degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::hecke::functional::{compute_tp, DEFAULT_BUDGET};
    use crate::ray_class::{ClassGroup, RESIDUE_CAP};
    use num_bigint::BigInt;

    fn level(d: u64, m: i64) -> Level {
        let f = FieldDescriptor::real_quadratic(d).unwrap();
        let cg = ClassGroup::compute(&f).unwrap();
        Level::new(&f, &cg, &f.ideal_from_int(&BigInt::from(m)), RESIDUE_CAP).unwrap()
    }

    fn dims(r: &PsiReport) -> (usize, usize, usize) {
        (r.dim_domain, r.dim_image, r.dim_h1)
    }

    #[test]
    fn psi_examples() {
        let l = level(2, 1);
        let t = compute_tp(&l, 5, DEFAULT_BUDGET).unwrap();
        let r = psi_report(&l, 5, &t);
        assert_eq!(dims(&r), (1, 1, 1));
        assert!(r.is_isomorphism && r.hypothesis_holds);

        let l = level(2, 7);
        let t = compute_tp(&l, 3, DEFAULT_BUDGET).unwrap();
        let r = psi_report(&l, 3, &t);
        assert_eq!(dims(&r), (0, 0, 12));
        assert!(!r.is_isomorphism && !r.hypothesis_holds);
        assert_eq!(r.dim_h0, 12);

        let t = compute_tp(&l, 5, DEFAULT_BUDGET).unwrap();
        let r = psi_report(&l, 5, &t);
        assert_eq!(dims(&r), (12, 12, 12));
        assert!(r.is_isomorphism);
    }

    #[test]
    fn eigen_examples() {
        let l = level(3, 1);
        let t = compute_tp(&l, 5, DEFAULT_BUDGET).unwrap();
        let e = eigensystem_report(&l, 5, &t).unwrap();
        assert_eq!((e.count(), e.extension_degree), (2, 1));
        assert!(e.matched_both_degrees);

        let l = level(2, 1);
        let t = compute_tp(&l, 5, DEFAULT_BUDGET).unwrap();
        let e = eigensystem_report(&l, 5, &t).unwrap();
        assert_eq!(e.count(), 1);
        assert!(e.matched_both_degrees);

        let l = level(2, 7);
        let t = compute_tp(&l, 5, DEFAULT_BUDGET).unwrap();
        let e = eigensystem_report(&l, 5, &t).unwrap();
        assert_eq!((e.count(), e.extension_degree), (12, 2));
        assert!(e.matched_both_degrees);
        assert!(e.characters.iter().all(|c| c.isotypic_dim_h0 == Some(1)));
    }

    #[test]
    fn isotypic_parts_fill_h0_with_p_part() {
        // p = 3 divides h⁺ = 12: characters of the 3'-quotient, each isotypic
        // part carries the 3-part of the group
        let l = level(2, 7);
        let t = compute_tp(&l, 3, DEFAULT_BUDGET).unwrap();
        let e = eigensystem_report(&l, 3, &t).unwrap();
        assert_eq!(e.count(), 4);
        let total: usize = e.characters.iter().map(|c| c.isotypic_dim_h0.unwrap()).sum();
        assert_eq!(total, 12);
        assert!(e.characters.iter().all(|c| c.witness.is_none()));
    }
}
