//! Field descriptors: minimal polynomial, signature and unit data, either
//! built natively for real quadratic fields or read from JSON.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::element::Element;
use super::sturm::isolate_real_roots;
use crate::algebra::fp::{factor_u64, primes};
use crate::algebra::polyfp::factor_poly_mod_ell;
use crate::algebra::IntMatrix;
use crate::error::{Error, Result};

/// Largest `d` accepted for native real quadratic fields.
pub const NATIVE_D_CAP: u64 = 250_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Native,
    Ingested,
}

#[derive(Debug, Clone)]
pub struct FieldDescriptor {
    label: String,
    min_poly: Vec<BigInt>,
    signature: (usize, usize),
    torsion_order: u64,
    torsion_generator: Element,
    fundamental_units: Vec<Element>,
    class_number: u64,
    provenance: Provenance,
    disc: BigInt,
    root_intervals: Vec<(BigRational, BigRational)>,
    quadratic_d: Option<u64>,
    warnings: Vec<String>,
}

/// On-disk form of a descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub label: String,
    pub min_poly: Vec<i64>,
    pub signature: [usize; 2],
    pub torsion: TorsionFile,
    pub fundamental_units: Vec<Vec<i64>>,
    pub class_number: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionFile {
    pub order: u64,
    pub generator: Vec<i64>,
}

pub fn is_squarefree(d: u64) -> bool {
    d > 0 && factor_u64(d).iter().all(|&(_, e)| e == 1)
}

/// Discriminant of a monic polynomial, via the Sylvester resultant with `f'`.
pub fn poly_discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let df: Vec<BigInt> = (1..=n).map(|i| &f[i] * BigInt::from(i)).collect();
    let m = n - 1;
    let size = n + m;
    let mut s = IntMatrix::zeros(size, size);
    // rows 0..m: shifts of f; rows m..: shifts of f' (coefficients high to low)
    for i in 0..m {
        for (k, c) in f.iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..n {
        for (k, c) in df.iter().rev().enumerate() {
            s[(m + i, i + k)] = c.clone();
        }
    }
    let res = s.determinant();
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Degrees of possible factors of `f` over Z, intersected over the
/// factorization patterns modulo the first primes not dividing `disc`.
/// Returns true when only the trivial degrees survive.
pub fn irreducibility_certified(f: &[i64], disc: &BigInt) -> bool {
    let n = f.len() - 1;
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    for ell in primes().take(60) {
        if (disc % BigInt::from(ell)).is_zero() {
            continue;
        }
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for (g, e) in factor_poly_mod_ell(f, ell) {
            for _ in 0..e {
                let shifted: Vec<usize> = sums.iter().map(|s| s + g.degree()).collect();
                sums.extend(shifted);
            }
        }
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() == 2 {
            return true;
        }
    }
    false
}

impl FieldDescriptor {
    /// `Q(sqrt(d))` with the maximal order: basis `1, θ` where `θ = sqrt(d)`
    /// or `(1 + sqrt(d))/2` when `d ≡ 1 mod 4`.
    pub fn real_quadratic(d: u64) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidInput(format!("d = {d} is not a squarefree integer > 1")));
        }
        if d > NATIVE_D_CAP {
            return Err(Error::CapExceeded {
                what: "native discriminant parameter d",
                value: d as u128,
                cap: NATIVE_D_CAP as u128,
            });
        }
        let d_i = d as i64;
        let min_poly = if d % 4 == 1 {
            vec![-(d_i - 1) / 4, -1, 1]
        } else {
            vec![-d_i, 0, 1]
        };
        let mut desc = Self::assemble(
            format!("Q(sqrt({d}))"),
            min_poly.iter().map(|&c| BigInt::from(c)).collect(),
            (2, 0),
            2,
            Element::from_i64(&[-1, 0]),
            Vec::new(),
            1,
            Provenance::Native,
        );
        desc.quadratic_d = Some(d);
        let eps = crate::units::fundamental_unit_real_quadratic(d)?;
        desc.fundamental_units = vec![eps];
        desc.class_number = crate::ray_class::class_group::ClassGroup::compute(&desc)?.order() as u64;
        Ok(desc)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        label: String,
        min_poly: Vec<BigInt>,
        signature: (usize, usize),
        torsion_order: u64,
        torsion_generator: Element,
        fundamental_units: Vec<Element>,
        class_number: u64,
        provenance: Provenance,
    ) -> Self {
        let disc = poly_discriminant(&min_poly);
        let root_intervals = isolate_real_roots(&min_poly);
        FieldDescriptor {
            label,
            min_poly,
            signature,
            torsion_order,
            torsion_generator,
            fundamental_units,
            class_number,
            provenance,
            disc,
            root_intervals,
            quadratic_d: None,
            warnings: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DescriptorFile =
            serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ParseError(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Validates a parsed descriptor; the first failing invariant is named.
    pub fn from_file(file: &DescriptorFile) -> Result<Self> {
        let bad = |m: String| Err(Error::ValidationError(m));
        let f = &file.min_poly;
        if f.len() < 2 {
            return bad("min_poly must have degree >= 1".into());
        }
        if *f.last().unwrap() != 1 {
            return bad("min_poly is not monic".into());
        }
        let n = f.len() - 1;
        let (r1, r2) = (file.signature[0], file.signature[1]);
        if r1 + 2 * r2 != n {
            return bad(format!("signature ({r1},{r2}) inconsistent with degree {n}"));
        }
        if (r1, r2) == (1, 0) || (r1, r2) == (0, 1) {
            return bad("F must be neither Q nor imaginary quadratic".into());
        }
        let big: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
        let disc = poly_discriminant(&big);
        if disc.is_zero() {
            return bad("min_poly is not squarefree".into());
        }
        if !irreducibility_certified(f, &disc) {
            return bad("min_poly irreducibility not certified by reduction patterns".into());
        }
        let real_roots = isolate_real_roots(&big).len();
        if real_roots != r1 {
            return bad(format!("min_poly has {real_roots} real roots, signature claims {r1}"));
        }
        let check_len = |v: &Vec<i64>, what: &str| -> Result<Element> {
            if v.len() > n {
                return Err(Error::ValidationError(format!("{what} has more than {n} coordinates")));
            }
            let mut c = v.clone();
            c.resize(n, 0);
            Ok(Element::from_i64(&c))
        };
        let zeta = check_len(&file.torsion.generator, "torsion generator")?;
        let units = file
            .fundamental_units
            .iter()
            .map(|u| check_len(u, "fundamental unit"))
            .collect::<Result<Vec<_>>>()?;
        if units.len() != r1 + r2 - 1 {
            return bad(format!("expected {} fundamental units, got {}", r1 + r2 - 1, units.len()));
        }
        if file.class_number == 0 {
            return bad("class_number must be positive".into());
        }
        let mut desc = Self::assemble(
            file.label.clone(),
            big,
            (r1, r2),
            file.torsion.order,
            zeta.clone(),
            units.clone(),
            file.class_number,
            Provenance::Ingested,
        );
        let w = file.torsion.order;
        if w < 2 || w % 2 == 1 {
            return bad(format!("torsion order {w} must be even"));
        }
        if r1 > 0 && (w != 2 || zeta != desc.from_int(-1)) {
            return bad("fields with a real place have torsion {±1} generated by -1".into());
        }
        if desc.pow(&zeta, w) != desc.one() {
            return bad(format!("torsion generator does not satisfy ζ^{w} = 1"));
        }
        for (q, _) in factor_u64(w) {
            if desc.pow(&zeta, w / q) == desc.one() {
                return bad(format!("torsion generator has order dividing {}", w / q));
            }
        }
        for (i, u) in units.iter().enumerate() {
            if !desc.norm(u).abs().is_one() {
                return bad(format!("fundamental unit {i} does not have norm ±1"));
            }
        }
        desc.quadratic_cross_check();
        Ok(desc)
    }

    // Flags an ingested real quadratic unit that is not ±ε^{±1} for the
    // native fundamental unit.
    fn quadratic_cross_check(&mut self) {
        if self.degree() != 2 || self.signature.0 != 2 {
            return;
        }
        let f = &self.min_poly;
        let d_full = &f[1] * &f[1] - BigInt::from(4) * &f[0];
        // d_full = s^2 d with d squarefree; the native order is maximal
        let Some(d_full) = d_full.to_u64() else { return };
        let d: u64 = factor_u64(d_full)
            .iter()
            .filter(|&&(_, e)| e % 2 == 1)
            .map(|&(q, _)| q)
            .product();
        if d < 2 || d_full != d && d_full != 4 * d || d > NATIVE_D_CAP {
            return;
        }
        let Ok(native) = crate::units::fundamental_unit_real_quadratic(d) else { return };
        // compare through the ratio of norms of traces: both are units of the
        // same maximal order; map native eps into this basis via its trace.
        let claimed = &self.fundamental_units[0];
        let native_tr = native_trace_and_norm(d, &native);
        let claimed_tr = (self.trace(claimed).abs(), self.norm(claimed));
        if native_tr != claimed_tr {
            self.warnings.push(format!(
                "fundamental unit is not ±ε^±1 for the native ε of Q(sqrt({d}))"
            ));
        }
    }

    pub fn to_file(&self) -> Option<DescriptorFile> {
        let small = |e: &Element| -> Option<Vec<i64>> { e.0.iter().map(|c| c.to_i64()).collect() };
        Some(DescriptorFile {
            label: self.label.clone(),
            min_poly: self.min_poly.iter().map(|c| c.to_i64()).collect::<Option<_>>()?,
            signature: [self.signature.0, self.signature.1],
            torsion: TorsionFile {
                order: self.torsion_order,
                generator: small(&self.torsion_generator)?,
            },
            fundamental_units: self.fundamental_units.iter().map(small).collect::<Option<_>>()?,
            class_number: self.class_number,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn min_poly_i64(&self) -> Vec<i64> {
        self.min_poly
            .iter()
            .map(|c| c.to_i64().expect("min_poly coefficient fits i64"))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// Unit rank `r = r1 + r2 - 1`.
    pub fn unit_rank(&self) -> usize {
        self.signature.0 + self.signature.1 - 1
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion_order
    }

    pub fn torsion_generator(&self) -> &Element {
        &self.torsion_generator
    }

    pub fn fundamental_units(&self) -> &[Element] {
        &self.fundamental_units
    }

    pub fn class_number(&self) -> u64 {
        self.class_number
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn root_intervals(&self) -> &[(BigRational, BigRational)] {
        &self.root_intervals
    }

    /// `Some(d)` for natively built `Q(sqrt(d))`.
    pub fn quadratic_d(&self) -> Option<u64> {
        self.quadratic_d
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }
}

fn native_trace_and_norm(d: u64, eps: &Element) -> (BigInt, BigInt) {
    // in the native basis: trace = 2 x0 + x1 (d ≡ 1 mod 4) or 2 x0
    let (x0, x1) = (&eps.0[0], &eps.0[1]);
    let (tr, nrm) = if d % 4 == 1 {
        let c = BigInt::from((d - 1) / 4);
        (BigInt::from(2) * x0 + x1, x0 * x0 + x0 * x1 - c * x1 * x1)
    } else {
        (BigInt::from(2) * x0, x0 * x0 - BigInt::from(d) * x1 * x1)
    };
    (tr.abs(), nrm)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q2: &str = r#"{"label":"Q(sqrt(2))","min_poly":[-2,0,1],"signature":[2,0],
        "torsion":{"order":2,"generator":[-1,0]},"fundamental_units":[[1,1]],"class_number":1}"#;

    #[test]
    fn discriminants() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(poly_discriminant(&b(&[-2, 0, 1])), BigInt::from(8));
        assert_eq!(poly_discriminant(&b(&[-1, -1, 1])), BigInt::from(5));
        // x^3 - 2: -27 * 4 = -108
        assert_eq!(poly_discriminant(&b(&[-2, 0, 0, 1])), BigInt::from(-108));
    }

    #[test]
    fn native_quadratics() {
        let f = FieldDescriptor::real_quadratic(5).unwrap();
        assert_eq!(f.min_poly_i64(), vec![-1, -1, 1]);
        assert_eq!(f.discriminant(), &BigInt::from(5));
        assert_eq!(f.fundamental_units()[0], Element::from_i64(&[0, 1]));
        let f = FieldDescriptor::real_quadratic(2).unwrap();
        assert_eq!(f.label(), "Q(sqrt(2))");
        assert_eq!(f.class_number(), 1);
        assert!(FieldDescriptor::real_quadratic(12).is_err());
        assert!(FieldDescriptor::real_quadratic(1).is_err());
    }

    #[test]
    fn accepts_q2_descriptor() {
        let f = FieldDescriptor::from_json(Q2).unwrap();
        assert_eq!(f.provenance(), Provenance::Ingested);
        assert!(f.warnings().is_empty());
        assert_eq!(f.to_file().unwrap(), serde_json::from_str::<DescriptorFile>(Q2).unwrap());
    }

    #[test]
    fn rejects_bad_descriptors() {
        let non_monic = Q2.replace("[-2,0,1]", "[-2,0,2]");
        assert!(matches!(FieldDescriptor::from_json(&non_monic), Err(Error::ValidationError(m)) if m.contains("monic")));
        let reducible = Q2.replace("[-2,0,1]", "[-4,0,1]");
        assert!(matches!(FieldDescriptor::from_json(&reducible), Err(Error::ValidationError(_))));
        let bad_unit = Q2.replace("[[1,1]]", "[[2,1]]");
        assert!(matches!(FieldDescriptor::from_json(&bad_unit), Err(Error::ValidationError(m)) if m.contains("norm")));
        let imag = r#"{"label":"i","min_poly":[1,0,1],"signature":[0,1],
            "torsion":{"order":4,"generator":[0,1]},"fundamental_units":[],"class_number":1}"#;
        assert!(matches!(FieldDescriptor::from_json(imag), Err(Error::ValidationError(_))));
        assert!(matches!(FieldDescriptor::from_json("{"), Err(Error::ParseError(_))));
        let wrong_sig = Q2.replace("[2,0]", "[0,1]");
        assert!(FieldDescriptor::from_json(&wrong_sig).is_err());
    }

    #[test]
    fn non_fundamental_unit_is_flagged() {
        let f = FieldDescriptor::from_json(&Q2.replace("[[1,1]]", "[[3,2]]")).unwrap();
        assert_eq!(f.warnings().len(), 1);
    }

    #[test]
    fn cubic_descriptor() {
        // x^3 - 2: signature (1,1), unit 1 + θ + θ^2 has norm 1 (θ^3 = 2: (θ - 1)^{-1})
        let text = r#"{"label":"Q(2^(1/3))","min_poly":[-2,0,0,1],"signature":[1,1],
            "torsion":{"order":2,"generator":[-1,0,0]},"fundamental_units":[[1,1,1]],"class_number":1}"#;
        let f = FieldDescriptor::from_json(text).unwrap();
        assert_eq!(f.unit_rank(), 1);
        assert_eq!(f.norm(&f.element(&[1, 1, 1])), BigInt::from(1));
    }
}
