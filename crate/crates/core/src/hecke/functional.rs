//! Reduction functionals `E(𝔑) → F_p` at primes of `T₁`, the invariant
//! `t_p`, and spanning sets for `Hom(O^×, F_p)`.

use num_traits::Zero;

use super::level::Level;
use crate::algebra::exterior::MultiVector;
use crate::algebra::fp::{primes, reduce_i64, FpMatrix, RowSpace};
use crate::algebra::fq::{pth_character, pth_character_unchecked, FqElement, MAX_FIELD_SIZE};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, PrimeIdeal};
use crate::units::{compute_rp, EUnits, UnitGroup};

/// Rational primes scanned before giving up on finding more of `T₁`.
pub const ELL_LIMIT: u64 = 10_000_000;

/// Default number of `T₁` primes visited.
pub const DEFAULT_BUDGET: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    prime: PrimeIdeal,
    generator: FqElement,
    values: Vec<u64>,
}

impl Functional {
    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn generator(&self) -> &FqElement {
        &self.generator
    }

    /// Values on `η_1, .., η_r`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn as_multivector(&self, p: u64) -> MultiVector {
        MultiVector::vector(p, &self.values)
    }
}

/// `χ_v` on `ζ, ε_1, .., ε_r`, the character pinned by `g`.
pub fn unit_characters(field: &FieldDescriptor, v: &PrimeIdeal, p: u64, g: &FqElement) -> Result<Vec<u64>> {
    let kf = v.residue_field();
    let gens = UnitGroup::of(field).generators();
    let first = pth_character(kf, &v.residue_image(&gens[0]), p, g)?;
    let mut out = vec![first];
    out.extend(gens[1..].iter().map(|u| pth_character_unchecked(kf, &v.residue_image(u), p, g)));
    Ok(out)
}

fn check_t1(v: &PrimeIdeal, p: u64) -> Result<()> {
    if v.ell() == p || (v.norm() - 1) % p != 0 {
        return Err(Error::InvalidInput(format!("{} is not in T1 for p = {p}", v.describe())));
    }
    Ok(())
}

/// The functional at `v` with the first generator of the residue field.
pub fn unit_functional(field: &FieldDescriptor, v: &PrimeIdeal, e: &EUnits, p: u64) -> Result<Functional> {
    let g = v.residue_field().generator()?;
    unit_functional_with(field, v, e, p, &g)
}

pub fn unit_functional_with(
    field: &FieldDescriptor,
    v: &PrimeIdeal,
    e: &EUnits,
    p: u64,
    g: &FqElement,
) -> Result<Functional> {
    check_t1(v, p)?;
    let chars = unit_characters(field, v, p, g)?;
    let values = e
        .generators()
        .iter()
        .map(|exps| {
            exps.iter()
                .zip(&chars)
                .fold(0u64, |acc, (&x, &c)| (acc + reduce_i64(x, p) * c) % p)
        })
        .collect();
    Ok(Functional {
        prime: v.clone(),
        generator: g.clone(),
        values,
    })
}

/// Primes `v` with `p | N(v) - 1`, `ℓ ≠ p`, `ℓ` unramified and prime to
/// `N(𝔑)`, in ascending `(ℓ, g_poly)` order.
pub struct T1Primes<'a> {
    field: &'a FieldDescriptor,
    p: u64,
    modulus_norm: u64,
    ells: Box<dyn Iterator<Item = u64>>,
    pending: std::vec::IntoIter<PrimeIdeal>,
}

impl<'a> T1Primes<'a> {
    pub fn new(field: &'a FieldDescriptor, p: u64, modulus_norm: u64) -> Self {
        T1Primes {
            field,
            p,
            modulus_norm,
            ells: Box::new(primes().take_while(|&l| l <= ELL_LIMIT)),
            pending: Vec::new().into_iter(),
        }
    }
}

impl Iterator for T1Primes<'_> {
    type Item = PrimeIdeal;

    fn next(&mut self) -> Option<PrimeIdeal> {
        loop {
            if let Some(v) = self.pending.next() {
                return Some(v);
            }
            let ell = self.ells.next()?;
            if ell == self.p || self.modulus_norm % ell == 0 || (self.field.discriminant() % ell).is_zero() {
                continue;
            }
            let Ok(list) = self.field.factor_prime(ell) else {
                continue;
            };
            let p = self.p;
            self.pending = list
                .into_iter()
                .filter(|v| v.norm() <= MAX_FIELD_SIZE && (v.norm() - 1) % p == 0)
                .collect::<Vec<_>>()
                .into_iter();
        }
    }
}

/// The first `budget` primes of `T₁` with their functionals.
pub fn scan_t1(level: &Level, p: u64, budget: usize) -> Result<Vec<Functional>> {
    T1Primes::new(level.field(), p, level.modulus_norm())
        .take(budget)
        .map(|v| unit_functional(level.field(), &v, level.eunits(), p))
        .collect()
}

/// Accumulated span of functionals in scan order.
#[derive(Debug, Clone)]
pub struct ScanState {
    p: u64,
    visited: Vec<PrimeIdeal>,
    space: RowSpace,
    certificate: Vec<Functional>,
}

impl ScanState {
    pub fn new(p: u64, rank: usize) -> Self {
        ScanState {
            p,
            visited: Vec::new(),
            space: RowSpace::new(p, rank),
            certificate: Vec::new(),
        }
    }

    /// Records `f`; true when it raised the rank.
    pub fn absorb(&mut self, f: Functional) -> bool {
        self.visited.push(f.prime.clone());
        let up = self.space.insert(&f.values);
        if up {
            self.certificate.push(f);
        }
        up
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn visited(&self) -> &[PrimeIdeal] {
        &self.visited
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

#[derive(Debug, Clone)]
pub struct TpResult {
    pub t_p: usize,
    /// `r_p - δ_p`.
    pub expected: usize,
    /// Functionals that raised the rank, in scan order.
    pub certificate: Vec<Functional>,
    pub scanned: usize,
    pub shortfall: bool,
}

impl TpResult {
    /// Rational primes under the certificate.
    pub fn certificate_primes(&self) -> Vec<u64> {
        self.certificate.iter().map(|f| f.prime().ell()).collect()
    }
}

/// Rank of the span of the functionals over the first `budget` primes of
/// `T₁`, stopping early at full rank.
pub fn compute_tp(level: &Level, p: u64, budget: usize) -> Result<TpResult> {
    let e = level.eunits();
    e.check_torsion(p)?;
    let field = level.field();
    let r = e.rank();
    let expected = compute_rp(field, p).saturating_sub(e.delta_p(p));
    let mut state = ScanState::new(p, r);
    if r > 0 {
        for v in T1Primes::new(field, p, level.modulus_norm()).take(budget) {
            state.absorb(unit_functional(field, &v, e, p)?);
            if state.rank() == r {
                break;
            }
        }
    }
    let t_p = state.rank();
    Ok(TpResult {
        t_p,
        expected,
        scanned: state.visited.len(),
        certificate: state.certificate,
        shortfall: t_p < expected,
    })
}

/// Primes whose functionals on all of `O^×` form an invertible matrix.
#[derive(Debug, Clone)]
pub struct SpanningSet {
    pub primes: Vec<PrimeIdeal>,
    /// Row `i`: values at `primes[i]` on `ε_1, .., ε_r` then `ζ` when `p | w`.
    pub matrix: Vec<Vec<u64>>,
}

impl SpanningSet {
    pub fn is_invertible(&self, p: u64) -> bool {
        let n = self.matrix.len();
        self.matrix.iter().all(|row| row.len() == n)
            && FpMatrix::from_residue_rows(p, n, &self.matrix).rank() == n
    }
}

/// Values of `χ_v` on `ε_1, .., ε_r`, then on `ζ` when `p | w`.
pub fn full_unit_functional(field: &FieldDescriptor, v: &PrimeIdeal, p: u64, g: &FqElement) -> Result<Vec<u64>> {
    check_t1(v, p)?;
    let chars = unit_characters(field, v, p, g)?;
    let mut row = chars[1..].to_vec();
    if field.torsion_order() % p == 0 {
        row.push(chars[0]);
    }
    Ok(row)
}

/// Greedy selection in scan order of `r_p` primes of `T₁` (for `𝔑 = (1)`)
/// detecting `Hom(O^×, F_p)`.
pub fn spanning_set(field: &FieldDescriptor, p: u64, budget: usize) -> Result<SpanningSet> {
    let rp = compute_rp(field, p);
    let mut space = RowSpace::new(p, rp);
    let mut set = SpanningSet {
        primes: Vec::new(),
        matrix: Vec::new(),
    };
    if rp == 0 {
        return Ok(set);
    }
    for v in T1Primes::new(field, p, 1).take(budget) {
        let g = v.residue_field().generator()?;
        let row = full_unit_functional(field, &v, p, &g)?;
        if space.insert(&row) {
            set.primes.push(v);
            set.matrix.push(row);
            if space.rank() == rp {
                return Ok(set);
            }
        }
    }
    Err(Error::BudgetShortfall {
        reached: space.rank(),
        expected: rp,
    })
}

/// Pullback of the degree-two generator of `H^2(κ_v^×, F_p)` to `E(𝔑)`.
/// `E(𝔑)` is free modulo torsion prime to `p`, and any map from a free group
/// to a cyclic group factors through `Z` after a change of basis, where
/// `H^2(Z, F_p) = 0`.
pub fn degree_two_pullback(_v: &PrimeIdeal, e: &EUnits, p: u64) -> MultiVector {
    MultiVector::zero(p, e.rank(), 2)
}
