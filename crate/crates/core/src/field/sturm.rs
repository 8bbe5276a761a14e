//! Real root isolation and exact sign queries by Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type RatPoly = Vec<BigRational>;

fn trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn to_rat(f: &[BigInt]) -> RatPoly {
    trim(f.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

fn derivative(f: &RatPoly) -> RatPoly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

fn mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let q = &r[r.len() - 1] / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + k] -= &q * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn eval(f: &RatPoly, x: &BigRational) -> BigRational {
    f.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Signed remainder sequence `f, g, -rem(f, g), ...`.
fn remainder_sequence(f: RatPoly, g: RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![f, g];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r: RatPoly = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn variations(seq: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign(&eval(p, x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Isolating intervals `(a, b)` with rational endpoints, one real root of the
/// squarefree integer polynomial `f` strictly inside each, endpoints never
/// roots. Sorted by descending root.
pub fn isolate_real_roots(f: &[BigInt]) -> Vec<(BigRational, BigRational)> {
    let fr = to_rat(f);
    let seq = remainder_sequence(fr.clone(), derivative(&fr));
    // Cauchy bound 1 + max |a_i / a_n|
    let lead = fr.last().expect("nonzero polynomial").abs();
    let bound = fr[..fr.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
        + BigRational::one();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let count = variations(&seq, &a) - variations(&seq, &b);
        match count {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mut mid = (&a + &b) / BigRational::from_integer(2.into());
                // nudge off a rational root
                while eval(&fr, &mid).is_zero() {
                    mid = (&mid + &b) / BigRational::from_integer(2.into());
                }
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| y.0.cmp(&x.0));
    out
}

/// Number of distinct real roots of `f`.
pub fn count_real_roots(f: &[BigInt]) -> usize {
    isolate_real_roots(f).len()
}

/// Sign of `g(α)` for the unique root `α` of `f` in `(a, b)`, by a
/// Sturm-Tarski query on the sequence of `f` and `f'·g`.
pub fn sign_at_root(f: &[BigInt], interval: &(BigRational, BigRational), g: &[BigInt]) -> i8 {
    let fr = to_rat(f);
    let gr = to_rat(g);
    if gr.is_empty() {
        return 0;
    }
    let h = rem(&mul(&derivative(&fr), &gr), &fr);
    if h.is_empty() {
        return 0;
    }
    let seq = remainder_sequence(fr, h);
    let va = variations(&seq, &interval.0) as i64;
    let vb = variations(&seq, &interval.1) as i64;
    (va - vb) as i8
}
