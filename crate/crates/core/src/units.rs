//! Unit groups: fundamental units of real quadratic fields, the subgroup
//! `E(𝔑)` of totally positive units `≡ 1 mod 𝔑`, and the invariants
//! `r_p`, `δ_p` and the index `[O^× : E(𝔑)]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::abelian::Quotient;
use crate::algebra::IntMatrix;
use crate::error::{Error, Result};
use crate::field::{Element, FieldDescriptor};
use crate::ray_class::csg::CongruenceSignGroup;

/// Fundamental unit `ε > 1` of the maximal order of `Q(sqrt d)`, in the
/// native basis `1, θ`.
///
/// Units `x + yθ` with `y > 0` and small conjugate satisfy `x/y ≈ -θ'`, so
/// they show up among the convergents of `ω = -θ' = (a1 + sqrt D)/2`.
pub fn fundamental_unit_real_quadratic(d: u64) -> Result<Element> {
    if d < 2 || !crate::field::descriptor::is_squarefree(d) {
        return Err(Error::InvalidInput(format!("d = {d} is not a squarefree integer > 1")));
    }
    let (a1, a0, disc) = if d % 4 == 1 {
        (BigInt::from(-1), BigInt::from(-((d as i64 - 1) / 4)), BigInt::from(d))
    } else {
        (BigInt::zero(), BigInt::from(-(d as i64)), BigInt::from(4 * d))
    };
    let s = disc.sqrt();
    // ω = (P + sqrt D) / Q
    let mut pp = a1.clone();
    let mut qq = BigInt::from(2);
    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());
    let norm = |x: &BigInt, y: &BigInt| x * x - &a1 * x * y + &a0 * y * y;
    for _ in 0..100_000 {
        let a = if qq.is_positive() {
            (&pp + &s).div_floor(&qq)
        } else {
            -((&pp + &s).div_floor(&(-&qq))) - 1
        };
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        if norm(&p_cur, &q_cur).abs().is_one() {
            return Ok(Element(vec![p_cur, q_cur]));
        }
        pp = &a * &qq - &pp;
        qq = (&disc - &pp * &pp) / &qq;
    }
    Err(Error::Inconclusive(format!("continued fraction for d = {d} did not close")))
}

/// `O^× = <ζ> × <ε_1, .., ε_r>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    pub torsion_order: u64,
    pub torsion_generator: Element,
    pub fundamental_units: Vec<Element>,
}

impl UnitGroup {
    pub fn of(field: &FieldDescriptor) -> Self {
        UnitGroup {
            torsion_order: field.torsion_order(),
            torsion_generator: field.torsion_generator().clone(),
            fundamental_units: field.fundamental_units().to_vec(),
        }
    }

    /// Generators in exponent order `ζ, ε_1, .., ε_r`.
    pub fn generators(&self) -> Vec<Element> {
        let mut g = vec![self.torsion_generator.clone()];
        g.extend(self.fundamental_units.iter().cloned());
        g
    }

    /// `ζ^{e_0} ε_1^{e_1} ..`.
    pub fn evaluate(&self, field: &FieldDescriptor, exps: &[i64]) -> Element {
        let w = self.torsion_order as i64;
        let mut acc = field.pow(&self.torsion_generator, exps[0].rem_euclid(w) as u64);
        for (e, u) in exps[1..].iter().zip(&self.fundamental_units) {
            acc = field.mul(&acc, &field.unit_pow(u, *e));
        }
        acc
    }
}

/// `r + 1` when `p | w`, else `r`.
pub fn compute_rp(field: &FieldDescriptor, p: u64) -> usize {
    field.unit_rank() + usize::from(field.torsion_order() % p == 0)
}

/// `E(𝔑)` with the image of `O^×` in the congruence-sign group.
#[derive(Debug, Clone)]
pub struct EUnits {
    /// Exponent vectors over `(ζ; ε_1..ε_r)` of the free generators `η_i`.
    generators: Vec<Vec<i64>>,
    /// `E(𝔑) ∩ <ζ> = <ζ^c>`.
    torsion_exponent: u64,
    torsion_order: u64,
    index: u128,
    image_invariant_factors: Vec<u64>,
    /// Images of `ζ, ε_1, ..` in the congruence-sign group.
    unit_images: Vec<Vec<i64>>,
    csg_moduli: Vec<u64>,
}

impl EUnits {
    pub fn compute(field: &FieldDescriptor, csg: &CongruenceSignGroup) -> Result<Self> {
        let units = UnitGroup::of(field);
        let moduli = csg.moduli();
        let unit_images = units
            .generators()
            .iter()
            .map(|u| csg.dlog(field, u))
            .collect::<Result<Vec<_>>>()?;
        let m = 1 + field.unit_rank();
        let k = moduli.len();
        // kernel of (e, t) -> Σ e_j img_j + Σ t_i m_i e_i
        let mut a = IntMatrix::zeros(k, m + k);
        for (j, img) in unit_images.iter().enumerate() {
            for i in 0..k {
                a[(i, j)] = BigInt::from(img[i]);
            }
        }
        for i in 0..k {
            a[(i, m + i)] = BigInt::from(moduli[i]);
        }
        let kernel_cols: Vec<Vec<BigInt>> = if k == 0 {
            (0..m)
                .map(|i| (0..m).map(|j| BigInt::from(u8::from(i == j))).collect())
                .collect()
        } else {
            a.kernel().into_iter().map(|v| v[..m].to_vec()).collect()
        };
        let hnf = IntMatrix::from_columns(m, &kernel_cols)
            .hermite_basis()
            .expect("unit kernel has full rank");
        let small = |x: &BigInt| -> Result<i64> {
            x.to_i64().ok_or(Error::CapExceeded {
                what: "unit exponent",
                value: u128::MAX,
                cap: i64::MAX as u128,
            })
        };
        let torsion_exponent = small(&hnf[(0, 0)])? as u64;
        let generators = (1..m)
            .map(|j| (0..m).map(|i| small(&hnf[(i, j)])).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let index: u128 = (0..m)
            .map(|i| hnf[(i, i)].to_u128().expect("positive diagonal"))
            .product();
        let image_invariant_factors: Vec<u64> = hnf
            .invariant_factors()
            .into_iter()
            .map(|d| d.to_u64().expect("index fits u64"))
            .filter(|&d| d > 1)
            .collect();
        Ok(EUnits {
            generators,
            torsion_exponent,
            torsion_order: field.torsion_order() / torsion_exponent,
            index,
            image_invariant_factors,
            unit_images,
            csg_moduli: moduli,
        })
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn torsion_exponent(&self) -> u64 {
        self.torsion_exponent
    }

    /// Order of the torsion subgroup of `E(𝔑)`.
    pub fn torsion_order(&self) -> u64 {
        self.torsion_order
    }

    /// `[O^× : E(𝔑)]`.
    pub fn index(&self) -> u128 {
        self.index
    }

    /// Invariant factors (> 1) of `O^×/E(𝔑)`.
    pub fn image_invariant_factors(&self) -> &[u64] {
        &self.image_invariant_factors
    }

    pub fn unit_images(&self) -> &[Vec<i64>] {
        &self.unit_images
    }

    /// Number of invariant factors of `O^×/E(𝔑)` divisible by `p`.
    pub fn delta_p(&self, p: u64) -> usize {
        self.image_invariant_factors.iter().filter(|&&d| d % p == 0).count()
    }

    /// Refuses moduli where `E(𝔑)` has `p`-torsion.
    pub fn check_torsion(&self, p: u64) -> Result<()> {
        if self.torsion_order % p == 0 {
            return Err(Error::TorsionObstruction {
                order: self.torsion_order,
                p,
            });
        }
        Ok(())
    }

    /// `(congruence-sign group) / (image of O^×)`.
    pub fn cokernel(&self) -> Result<Quotient> {
        Quotient::of_cyclic_product(&self.csg_moduli, &self.unit_images)
    }

    /// The generators `η_i` as field elements.
    pub fn elements(&self, field: &FieldDescriptor) -> Vec<Element> {
        let units = UnitGroup::of(field);
        self.generators.iter().map(|e| units.evaluate(field, e)).collect()
    }

    /// Checks each `η_i` is totally positive and `≡ 1 mod 𝔑` by residue
    /// powering and sign products, independently of the discrete logs.
    pub fn verify(&self, field: &FieldDescriptor, csg: &CongruenceSignGroup) -> bool {
        let units = UnitGroup::of(field);
        let ring = csg.ring();
        let gens = units.generators();
        let w = field.torsion_order() as i64;
        let residues: Vec<Vec<i64>> = gens.iter().map(|u| ring.canonical(u)).collect();
        let inverses: Vec<Vec<i64>> = gens
            .iter()
            .map(|u| ring.canonical(&field.unit_inverse(u).expect("unit")))
            .collect();
        let signs: Vec<Vec<i8>> = gens.iter().map(|u| field.real_signs(u)).collect();
        self.generators.iter().all(|exps| {
            let mut acc = ring.one();
            let mut sg = vec![1i8; field.signature().0];
            for (j, &e) in exps.iter().enumerate() {
                let e = if j == 0 { e.rem_euclid(w) } else { e };
                let base = if e >= 0 { &residues[j] } else { &inverses[j] };
                acc = ring.mul(&acc, &ring.pow(base, e.unsigned_abs()));
                if e.rem_euclid(2) == 1 {
                    for (s, t) in sg.iter_mut().zip(&signs[j]) {
                        *s *= t;
                    }
                }
            }
            acc == ring.one() && sg.iter().all(|&s| s > 0)
        })
    }
}

/// Per-configuration invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantsRecord {
    pub p: u64,
    pub r: usize,
    pub r_p: usize,
    pub delta_p: usize,
    pub index: u128,
    pub t_p: Option<usize>,
    pub h_plus: Option<u64>,
}

impl InvariantsRecord {
    pub fn new(field: &FieldDescriptor, e: &EUnits, p: u64) -> Self {
        InvariantsRecord {
            p,
            r: field.unit_rank(),
            r_p: compute_rp(field, p),
            delta_p: e.delta_p(p),
            index: e.index(),
            t_p: None,
            h_plus: None,
        }
    }

    /// `r_p - δ_p`.
    pub fn expected_tp(&self) -> usize {
        self.r_p.saturating_sub(self.delta_p)
    }

    pub fn is_consistent(&self) -> bool {
        (self.r..=self.r + 1).contains(&self.r_p)
            && self.delta_p <= self.r_p
            && self.t_p.is_none_or(|t| t == self.expected_tp())
    }
}
