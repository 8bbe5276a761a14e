use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_hecke::algebra::exterior::{binomial, MultiVector};
use torus_hecke::algebra::fp::RowSpace;
use torus_hecke::field::sturm::{isolate_real_roots, sign_at_root};
use torus_hecke::field::{Element, FieldDescriptor, IdealHNF};
use torus_hecke::hecke::functional::{unit_functional_with, T1Primes};
use torus_hecke::hecke::{
    compute_tp, degree_two_pullback, eigensystem_report, spanning_set, unit_functional, CohomologyClass, HeckeElement,
    Level, ShiftGroup, DEFAULT_BUDGET,
};
use torus_hecke::ray_class::{hplus_form_cycles, ClassGroup, CongruenceSignGroup, RESIDUE_CAP};
use torus_hecke::units::compute_rp;
use torus_hecke::verifier::{self, FieldSource, Status, SweepConfig};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q<T>(r: torus_hecke::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn field(d: u64) -> Result<FieldDescriptor, String> {
    q(FieldDescriptor::real_quadratic(d))
}

fn level_of(f: &FieldDescriptor, modulus: &IdealHNF) -> Result<Level, String> {
    let cg = q(ClassGroup::compute(f))?;
    q(Level::new(f, &cg, modulus, RESIDUE_CAP))
}

fn level(d: u64, m: i64) -> Result<Level, String> {
    let f = field(d)?;
    let n = f.ideal_from_int(&BigInt::from(m));
    level_of(&f, &n)
}

const SWEEP_FIELDS: [u64; 8] = [2, 3, 5, 6, 7, 10, 11, 13];

fn q2_golden() -> Check {
    let f = field(2)?;
    let u = &f.fundamental_units()[0];
    ensure!(*u == Element::from_i64(&[1, 1]), "fundamental unit {:?}", u.coords());
    ensure!(f.norm(u) == BigInt::from(-1), "unit norm {}", f.norm(u));
    let l = level_of(&f, &f.unit_ideal())?;
    ensure!(l.h_plus() == 1, "h+ = {}", l.h_plus());
    ensure!(l.eunits().index() == 4, "index = {}", l.eunits().index());

    let ev = q(verifier::run_invariants(&l, 5, DEFAULT_BUDGET))?;
    let r = &ev.report;
    ensure!((r.delta_p, r.r_p, r.t_p) == (0, 1, 1), "(delta, r_p, t_p) = {:?}", (r.delta_p, r.r_p, r.t_p));
    ensure!(
        (r.dim_h0, r.dim_psi_domain, r.dim_psi_image, r.dim_h1) == (1, 1, 1, 1),
        "psi dims {:?}",
        (r.dim_h0, r.dim_psi_domain, r.dim_psi_image, r.dim_h1)
    );
    ensure!(r.psi_isomorphism, "psi not an isomorphism");
    ensure!(verifier::check(&ev).is_empty(), "{:?}", verifier::check(&ev));

    let v = q(f.factor_prime(31))?[0].clone();
    ensure!(
        T1Primes::new(&f, 5, 1).take(DEFAULT_BUDGET).any(|w| w.ideal() == v.ideal()),
        "v|31 not in the scanned part of T1"
    );
    let phi = q(unit_functional(&f, &v, l.eunits(), 5))?;
    ensure!(phi.generator().coords() == [3], "generator {:?}", phi.generator().coords());
    ensure!(phi.values() == [4], "value {:?}", phi.values());
    let mut span = RowSpace::new(5, l.rank());
    span.insert(phi.values());
    ensure!(span.rank() == r.t_p, "v|31 alone spans rank {}", span.rank());
    Ok(format!(
        "t5=1, v|31 value 4 under g=3 certifies rank 1; scan-order certificate {:?}",
        r.certificate_primes
    ))
}

fn q3_suite() -> Check {
    let l = level(3, 1)?;
    let f = l.field();
    ensure!(l.h_plus() == 2, "h+ = {}", l.h_plus());
    let v = q(f.factor_prime(11))?[0].clone();
    let z = q(l.ray().class_of(f, v.ideal()))?;
    ensure!(z != 0, "class of v|11 is trivial");
    let (p, r, h) = (5, l.rank(), l.h_plus());
    let g = l.shifts();
    let op = HeckeElement::shift(p, r, z);
    for a in 0..h {
        let got = op.apply(&CohomologyClass::indicator(p, r, h, a), g);
        let want = CohomologyClass::indicator(p, r, h, g.mul(g.inverse(z), a));
        ensure!(got == want, "h_z 1_{a} is not 1_(z^-1 a)");
        ensure!(got == CohomologyClass::indicator(p, r, h, 1 - a), "shift does not swap components");
    }
    let tp = q(compute_tp(&l, p, DEFAULT_BUDGET))?;
    let eig = q(eigensystem_report(&l, p, &tp))?;
    ensure!(eig.count() == 2, "{} characters", eig.count());
    ensure!(eig.matched_both_degrees, "not matched");
    ensure!(
        eig.characters.iter().all(|c| c.in_h0 && c.in_h1 && c.witness == Some(true)),
        "{:?}",
        eig.characters
    );
    Ok("h+=2, [v|11] swaps 1_0 and 1_1, 2 characters in H0 and H1".into())
}

fn q2_level7() -> Check {
    let l = level(2, 7)?;
    ensure!(l.h_plus() == 12, "h+ = {}", l.h_plus());
    ensure!(l.eunits().index() == 12, "index = {}", l.eunits().index());

    let ev = q(verifier::run_invariants(&l, 5, DEFAULT_BUDGET))?;
    let r = &ev.report;
    ensure!(r.t_p == 1, "t5 = {}", r.t_p);
    ensure!(
        (r.dim_h0, r.dim_psi_domain, r.dim_psi_image) == (12, 12, 12),
        "dims {:?}",
        (r.dim_h0, r.dim_psi_domain, r.dim_psi_image)
    );
    ensure!(r.psi_isomorphism, "p=5 not an isomorphism");
    ensure!(verifier::check(&ev).is_empty(), "{:?}", verifier::check(&ev));

    let ev = q(verifier::run_invariants(&l, 3, DEFAULT_BUDGET))?;
    let r = &ev.report;
    ensure!((r.delta_p, r.t_p) == (1, 0), "(delta3, t3) = {:?}", (r.delta_p, r.t_p));
    ensure!(r.dim_psi_image == 0, "image dim {}", r.dim_psi_image);
    ensure!(!r.hypothesis_a, "hypothesis holds");
    ensure!(r.t_p + r.delta_p == r.r_p && !ev.shortfall, "t3 != r3 - delta3");
    ensure!(verifier::check(&ev).is_empty(), "{:?}", verifier::check(&ev));
    Ok("h+=12, index 12; p=5 iso (12,12,12); p=3 t=0=r-delta".into())
}

fn sweep() -> Check {
    let cfg = SweepConfig {
        fields: SWEEP_FIELDS.iter().map(|&d| FieldSource::Native(d)).collect(),
        modulus_norm_bound: 50,
        primes: vec![3, 5, 7],
        budget: 50,
        cap_residue: RESIDUE_CAP,
        coprime_only: true,
    };
    let out = q(verifier::run_verify(&cfg))?;
    for e in &out.entries {
        let ok = matches!(e.status, Status::Pass)
            && e.report.as_ref().is_some_and(|r| r.t_p + r.delta_p == r.r_p);
        ensure!(ok, "{} N={} p={}: {:?}", e.field, e.modulus_norm, e.p, e.messages);
    }
    ensure!(out.exit_code == 0, "exit code {}", out.exit_code);
    Ok(format!("{} configurations, t_p = r_p - delta_p in all", out.entries.len()))
}

fn element_order(csg: &CongruenceSignGroup, x: &[i64]) -> u64 {
    let ring = csg.ring();
    let one = ring.one();
    let mut y = x.to_vec();
    let mut n = 1;
    while y != one {
        y = ring.mul(&y, x);
        n += 1;
    }
    n
}

fn cyclic_product_orders(moduli: &[u64]) -> BTreeMap<u64, usize> {
    let mut hist = BTreeMap::new();
    let total: u64 = moduli.iter().product();
    for mut code in 0..total {
        let mut ord = 1u64;
        for &m in moduli {
            let x = code % m;
            code /= m;
            ord = ord.lcm(&(m / x.gcd(&m)));
        }
        *hist.entry(ord).or_insert(0) += 1;
    }
    hist
}

// invariant factors from elementary divisors
fn invariant_factors(moduli: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &m in moduli {
        let mut n = m;
        let mut ell = 2;
        while n > 1 {
            if n % ell == 0 {
                let mut pw = 1;
                while n % ell == 0 {
                    n /= ell;
                    pw *= ell;
                }
                by_prime.entry(ell).or_default().push(pw);
            }
            ell += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for pws in by_prime.values_mut() {
        pws.sort_unstable_by(|a, b| b.cmp(a));
        for (i, pw) in pws.iter().enumerate() {
            out[len - 1 - i] *= pw;
        }
    }
    out
}

fn split_products(f: &FieldDescriptor, bound: u64) -> Vec<(IdealHNF, Vec<u64>)> {
    let primes: Vec<_> = f
        .primes_up_to_norm(bound)
        .into_iter()
        .filter(|v| v.residue_degree() == 1 && v.ramification() == 1)
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, f.unit_ideal(), 1u64, Vec::new())];
    while let Some((start, ideal, norm, locals)) = stack.pop() {
        if !locals.is_empty() {
            out.push((ideal.clone(), locals.clone()));
        }
        for (i, v) in primes.iter().enumerate().skip(start) {
            let n = norm * v.norm();
            if n > bound {
                continue;
            }
            let mut next = locals.clone();
            next.push(v.norm() - 1);
            stack.push((i + 1, f.ideal_product(&ideal, v.ideal()), n, next));
        }
    }
    out
}

fn oracles() -> Check {
    for (disc, d, want) in [(8, 2, 1), (12, 3, 2), (40, 10, 2), (60, 15, 4)] {
        let forms = hplus_form_cycles(disc);
        let ideals = level(d, 1)?.h_plus();
        ensure!(forms == ideals && ideals == want, "D={disc}: forms {forms}, ideals {ideals}");
    }
    let mut count = 0;
    for d in [2, 3, 5] {
        let f = field(d)?;
        for (m, locals) in split_products(&f, 1000) {
            let csg = q(CongruenceSignGroup::new(&f, &m, RESIDUE_CAP))?;
            let mut hist = BTreeMap::new();
            for x in csg.residue_group().elements() {
                *hist.entry(element_order(&csg, x)).or_insert(0usize) += 1;
            }
            ensure!(
                hist == cyclic_product_orders(&locals),
                "d={d} N={}: order statistics differ",
                m.norm()
            );
            let mut inv: Vec<u64> = csg.residue_group().invariants().iter().copied().filter(|&x| x > 1).collect();
            inv.sort_unstable();
            ensure!(
                inv == invariant_factors(&locals),
                "d={d} N={}: invariants {inv:?} vs {:?}",
                m.norm(),
                invariant_factors(&locals)
            );
            count += 1;
        }
    }
    Ok(format!("forms = ideals for D in 8,12,40,60; {count} split moduli match CRT"))
}

fn spanning() -> Check {
    let mut singles = 0;
    for d in SWEEP_FIELDS {
        let f = field(d)?;
        for p in [3, 5, 7] {
            if compute_rp(&f, p) != 1 {
                continue;
            }
            let s = q(spanning_set(&f, p, 25))?;
            ensure!(s.primes.len() == 1, "d={d} p={p}: {} primes", s.primes.len());
            ensure!(s.matrix[0][0] != 0 && s.is_invertible(p), "d={d} p={p}: zero matrix");
            singles += 1;
        }
    }
    let f = field(2)?;
    ensure!(compute_rp(&f, 2) == 2, "r_2 = {}", compute_rp(&f, 2));
    let s = q(spanning_set(&f, 2, 25))?;
    ensure!(s.primes.len() == 2 && s.matrix.iter().all(|row| row.len() == 2), "{:?}", s.matrix);
    ensure!(s.is_invertible(2), "2x2 matrix singular: {:?}", s.matrix);
    Ok(format!("{singles} singletons; p=2 on Q(sqrt 2): {:?}", s.matrix))
}

fn random_multivector(rng: &mut ChaCha8Rng, p: u64, rank: usize, degree: usize) -> MultiVector {
    let coords = (0..binomial(rank, degree)).map(|_| rng.gen_range(0..p)).collect();
    MultiVector::from_coords(p, rank, degree, coords)
}

fn random_operator(rng: &mut ChaCha8Rng, p: u64, rank: usize, degree: usize, order: usize) -> HeckeElement {
    let mut h = HeckeElement::zero(p, rank, degree);
    for _ in 0..rng.gen_range(1..=3) {
        let omega = random_multivector(rng, p, rank, degree);
        h = h.add(&HeckeElement::term(rng.gen_range(0..order), omega));
    }
    h
}

fn properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    let primes = [2u64, 3, 5, 7, 11, 13];
    for _ in 0..1000 {
        let p = primes[rng.gen_range(0..primes.len())];
        let rank = rng.gen_range(1..=6);
        let u = random_multivector(&mut rng, p, rank, 1);
        let v = random_multivector(&mut rng, p, rank, 1);
        ensure!(u.wedge(&u).is_zero(), "u^u != 0");
        ensure!(u.wedge(&v) == v.wedge(&u).neg(), "u^v != -v^u");
        let j = rng.gen_range(0..=rank);
        let k = rng.gen_range(0..=rank - j);
        let a = random_multivector(&mut rng, p, rank, j);
        let b = random_multivector(&mut rng, p, rank, k);
        let ba = b.wedge(&a);
        ensure!(a.wedge(&b) == if j * k % 2 == 1 { ba.neg() } else { ba }, "graded sign fails");
    }

    let levels = [level(2, 7)?, level(15, 1)?, level(10, 1)?, level(2, 1)?, level(3, 1)?, level(5, 11)?];
    let mut groups: Vec<ShiftGroup> = levels.iter().map(|l| l.shifts().clone()).collect();
    groups.push(ShiftGroup::cyclic(6));
    for _ in 0..100 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let p = primes[rng.gen_range(1..primes.len())];
        let rank = rng.gen_range(1..=5);
        let j = rng.gen_range(0..=rank);
        let k = rng.gen_range(0..=rank - j);
        let h = random_operator(&mut rng, p, rank, j, g.order());
        let h2 = random_operator(&mut rng, p, rank, k, g.order());
        let sign = if j * k % 2 == 1 { p - 1 } else { 1 };
        ensure!(h.compose(&h2, g) == h2.compose(&h, g).scale(sign), "graded commutativity fails");
    }

    for l in &levels {
        let (p, r, n) = (5, l.rank(), l.h_plus());
        let one = CohomologyClass::indicator(p, r, n, 0);
        let orbit: HashSet<Vec<u64>> =
            (0..n).map(|z| HeckeElement::shift(p, r, z).apply(&one, l.shifts()).flatten()).collect();
        ensure!(orbit.len() == n, "orbit size {} vs h+ {n}", orbit.len());
    }

    for _ in 0..10 {
        let l = &levels[rng.gen_range(0..levels.len())];
        let (p, r, n) = (7, l.rank(), l.h_plus());
        let z = rng.gen_range(0..n);
        let op = HeckeElement::shift(p, r, z);
        let mut hit = vec![false; n];
        for a in 0..n {
            let img = op.apply(&CohomologyClass::indicator(p, r, n, a), l.shifts());
            let b = (0..n).find(|&b| img == CohomologyClass::indicator(p, r, n, b));
            let Some(b) = b else {
                return Err(format!("shift {z} sends 1_{a} off the indicator basis"));
            };
            ensure!(!hit[b], "shift {z} is not injective");
            hit[b] = true;
        }
    }

    let mut checked = 0;
    for (d, m, p) in [(2, 7, 5), (3, 1, 5), (5, 1, 3), (13, 3, 7)] {
        let l = level(d, m)?;
        let mut primes_used = 0;
        for v in T1Primes::new(l.field(), p, l.modulus_norm()).take(DEFAULT_BUDGET) {
            let base = q(unit_functional(l.field(), &v, l.eunits(), p))?;
            let mut pool: Vec<_> = v.residue_field().generators().skip(1).take(20).collect();
            if pool.len() < 3 {
                continue;
            }
            let mut alts = Vec::new();
            for _ in 0..3 {
                alts.push(pool.swap_remove(rng.gen_range(0..pool.len())));
            }
            primes_used += 1;
            if primes_used > 5 {
                break;
            }
            for g in &alts {
                let alt = q(unit_functional_with(l.field(), &v, l.eunits(), p, g))?;
                let mut a = RowSpace::new(p, l.rank());
                a.insert(base.values());
                let mut b = RowSpace::new(p, l.rank());
                b.insert(alt.values());
                ensure!(
                    a.rank() == b.rank() && a.contains(alt.values()) && b.contains(base.values()),
                    "span changes with the generator at {}",
                    v.describe()
                );
                checked += 1;
            }
        }
    }
    Ok(format!("1000 wedge, 100 operator cases; {checked} generator swaps"))
}

/// Incremental row reduction of an augmented system over `F_p`.
struct Solver {
    p: u64,
    pivots: Vec<(usize, Vec<u64>)>,
    consistent: bool,
}

impl Solver {
    fn new(p: u64) -> Self {
        Solver {
            p,
            pivots: Vec::new(),
            consistent: true,
        }
    }

    // row has the right-hand side in its last slot
    fn push(&mut self, mut row: Vec<u64>) {
        let p = self.p;
        for (c, piv) in &self.pivots {
            let k = row[*c];
            if k != 0 {
                for (x, y) in row.iter_mut().zip(piv) {
                    *x = (*x + (p - k) * y) % p;
                }
            }
        }
        let n = row.len() - 1;
        match (0..n).find(|&i| row[i] != 0) {
            None => self.consistent &= row[n] == 0,
            Some(c) => {
                let inv = (1..p).find(|i| i * row[c] % p == 1).unwrap();
                for x in row.iter_mut() {
                    *x = *x * inv % p;
                }
                for (_, piv) in self.pivots.iter_mut() {
                    let k = piv[c];
                    if k != 0 {
                        for (x, y) in piv.iter_mut().zip(&row) {
                            *x = (*x + (p - k) * y) % p;
                        }
                    }
                }
                self.pivots.push((c, row));
            }
        }
    }
}

/// Is `c` (a function on pairs) a coboundary `φ(x) + φ(y) - φ(x+y)` on the
/// given elements? `add` returns `None` when a sum leaves the set.
fn is_coboundary(p: u64, elems: &[i64], add: impl Fn(i64, i64) -> Option<i64>, c: impl Fn(i64, i64) -> u64) -> bool {
    let index: BTreeMap<i64, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let n = elems.len();
    let mut s = Solver::new(p);
    for &x in elems {
        for &y in elems {
            let Some(z) = add(x, y) else { continue };
            let mut row = vec![0u64; n + 1];
            row[index[&x]] = (row[index[&x]] + 1) % p;
            row[index[&y]] = (row[index[&y]] + 1) % p;
            row[index[&z]] = (row[index[&z]] + p - 1) % p;
            row[n] = c(x, y) % p;
            s.push(row);
            if !s.consistent {
                return false;
            }
        }
    }
    true
}

fn bar_oracle(n: i64, p: u64) -> Result<(), String> {
    let carry = |a: i64, b: i64| u64::from(a.rem_euclid(n) + b.rem_euclid(n) >= n);
    let g: Vec<i64> = (0..n).collect();
    for &a in &g {
        for &b in &g {
            for &c in &g {
                let d = carry(b, c) + carry(a, (b + c) % n) + 2 * p - carry((a + b) % n, c) - carry(a, b);
                ensure!(d % p == 0, "carry is not a cocycle at ({a},{b},{c})");
            }
        }
    }
    ensure!(
        !is_coboundary(p, &g, |a, b| Some((a + b) % n), carry),
        "carry class vanishes on Z/{n}"
    );
    let w = 2 * n;
    let window: Vec<i64> = (-w..=w).collect();
    ensure!(
        is_coboundary(p, &window, |x, y| Some(x + y).filter(|z| z.abs() <= w), carry),
        "restriction to Z is not a coboundary for n={n}"
    );
    Ok(())
}

fn structural_zero() -> Check {
    let mut count = 0;
    for (d, m, p) in [(2, 1, 5), (3, 1, 7), (2, 7, 5), (5, 1, 3)] {
        let l = level(d, m)?;
        for v in T1Primes::new(l.field(), p, l.modulus_norm()).take(5) {
            let b = degree_two_pullback(&v, l.eunits(), p);
            ensure!(b.is_zero() && b.degree() == 2, "nonzero pullback at {}", v.describe());
            count += 1;
        }
    }
    ensure!(count == 20, "{count} primes sampled");
    bar_oracle(10, 5)?;
    bar_oracle(22, 11)?;
    Ok("20 zero pullbacks; carry cocycle nontrivial on Z/n, coboundary on Z for (10,5), (22,11)".into())
}

fn scan_float_tokens(dir: &Path, hits: &mut Vec<String>) {
    let Ok(entries) = std::fs::read_dir(dir) else { return };
    for e in entries.flatten() {
        let path = e.path();
        if path.is_dir() {
            scan_float_tokens(&path, hits);
        } else if path.extension().is_some_and(|x| x == "rs") {
            let text = std::fs::read_to_string(&path).unwrap_or_default();
            for (i, line) in text.lines().enumerate() {
                let bad = line
                    .split(|c: char| !(c.is_alphanumeric() || c == '_'))
                    .any(|t| t == "f32" || t == "f64");
                if bad {
                    hits.push(format!("{}:{}", path.display(), i + 1));
                }
            }
        }
    }
}

type Interval = (BigRational, BigRational);

fn eval(f: &[BigInt], x: &BigRational) -> BigRational {
    f.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

fn imul(a: &Interval, b: &Interval) -> Interval {
    let c = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = c.iter().min().unwrap().clone();
    let hi = c.iter().max().unwrap().clone();
    (lo, hi)
}

/// Real roots of `f` in ascending order, each in an interval of width below
/// `10^-50`, from a grid scan and bisection.
fn roots_50_digits(f: &[BigInt]) -> Vec<Interval> {
    let bound = f.iter().map(|c| c.abs()).max().unwrap() + BigInt::one();
    let step = BigRational::new(BigInt::one(), BigInt::from(64));
    let eps = BigRational::new(BigInt::one(), BigInt::from(10).pow(50));
    let mut x = -BigRational::from_integer(bound.clone());
    let end = BigRational::from_integer(bound);
    let mut out = Vec::new();
    while x < end {
        let y = &x + &step;
        let (fa, fb) = (eval(f, &x), eval(f, &y));
        if fa.is_zero() {
            out.push((x.clone(), x.clone()));
        } else if (fa.is_negative() && fb.is_positive()) || (fa.is_positive() && fb.is_negative()) {
            let (mut lo, mut hi) = (x.clone(), y.clone());
            let neg_lo = fa.is_negative();
            while &hi - &lo >= eps {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                let fm = eval(f, &mid);
                if fm.is_zero() {
                    lo = mid.clone();
                    hi = mid;
                    break;
                }
                if fm.is_negative() == neg_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push((lo, hi));
        }
        x = y;
    }
    out
}

fn interval_sign(g: &[BigInt], root: &Interval) -> Option<i8> {
    let mut acc = (BigRational::zero(), BigRational::zero());
    for c in g.iter().rev() {
        let c = BigRational::from_integer(c.clone());
        let m = imul(&acc, root);
        acc = (m.0 + &c, m.1 + &c);
    }
    if acc.0.is_positive() {
        Some(1)
    } else if acc.1.is_negative() {
        Some(-1)
    } else {
        None
    }
}

const CUBICS: [&str; 2] = [
    r#"{"label":"Q(2^(1/3))","min_poly":[-2,0,0,1],"signature":[1,1],
        "torsion":{"order":2,"generator":[-1,0,0]},"fundamental_units":[[1,1,1]],"class_number":1}"#,
    r#"{"label":"x^3-3x+1","min_poly":[1,-3,0,1],"signature":[3,0],
        "torsion":{"order":2,"generator":[-1,0,0]},"fundamental_units":[[0,1,0],[-1,1,0]],"class_number":1}"#,
];

fn exactness() -> Check {
    let mut hits = Vec::new();
    scan_float_tokens(&Path::new(env!("CARGO_MANIFEST_DIR")).join("src"), &mut hits);
    ensure!(hits.is_empty(), "floating-point tokens at {hits:?}");

    let mut fields = Vec::new();
    for d in [2, 3, 5, 7, 13] {
        fields.push(field(d)?);
    }
    for text in CUBICS {
        fields.push(q(FieldDescriptor::from_json(text))?);
    }
    let roots: Vec<Vec<Interval>> = fields
        .iter()
        .map(|f| {
            let mut r = roots_50_digits(f.min_poly());
            r.reverse();
            r
        })
        .collect();
    for (f, r) in fields.iter().zip(&roots) {
        ensure!(r.len() == f.signature().0, "{}: found {} real roots", f.label(), r.len());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for case in 0..1000 {
        let i = rng.gen_range(0..fields.len());
        let f = &fields[i];
        let n = f.degree();
        let x = if case % 10 == 0 {
            let u = &f.fundamental_units()[rng.gen_range(0..f.unit_rank())];
            let s = f.from_int(rng.gen_range(1..50) * if rng.gen_bool(0.5) { 1 } else { -1 });
            f.mul(&f.unit_pow(u, rng.gen_range(-15..=15)), &s)
        } else {
            let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-10_000..=10_000)).collect();
            if c.iter().all(|&v| v == 0) {
                continue;
            }
            Element::from_i64(&c)
        };
        let want: Option<Vec<i8>> = roots[i].iter().map(|r| interval_sign(x.coords(), r)).collect();
        let Some(want) = want else {
            return Err(format!("{}: interval evaluation undecided for {:?}", f.label(), x.coords()));
        };
        ensure!(f.sturm_signs(&x) == want, "{}: sturm signs differ at {:?}", f.label(), x.coords());
        ensure!(f.real_signs(&x) == want, "{}: signs differ at {:?}", f.label(), x.coords());
    }

    let quartic: Vec<BigInt> = [1, 0, -10, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
    let mut iso = isolate_real_roots(&quartic);
    iso.sort_by(|a, b| a.0.cmp(&b.0));
    let oracle = roots_50_digits(&quartic);
    ensure!(iso.len() == 4 && oracle.len() == 4, "quartic root count");
    for _ in 0..100 {
        let g: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-1000..=1000))).collect();
        for (a, b) in iso.iter().zip(&oracle) {
            ensure!(Some(sign_at_root(&quartic, a, &g)) == interval_sign(&g, b), "quartic sign differs");
        }
    }
    Ok("no float tokens in src; 1000 field elements and 100 quartic values agree".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Check); 9] = [
        ("Q(sqrt 2) golden suite", Some(1), q2_golden),
        ("Q(sqrt 3) suite", Some(1), q3_suite),
        ("Q(sqrt 2), N=(7)", Some(5), q2_level7),
        ("t_p sweep", Some(120), sweep),
        ("oracle equivalences", None, oracles),
        ("spanning sets", None, spanning),
        ("property suites", None, properties),
        ("structural zero", None, structural_zero),
        ("exactness", None, exactness),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let late = limit.is_some_and(|s| took > Duration::from_secs(s));
        let (status, detail) = match result {
            Ok(d) if !late => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {}s limit", limit.unwrap())),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {} [{name}] {status} ({:.2?}): {detail}", i + 1, took);
    }
    if failed > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
