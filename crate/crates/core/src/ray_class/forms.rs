//! Cycles of reduced indefinite binary quadratic forms.

use std::collections::HashSet;

use num_integer::Roots;

type Form = (i64, i64, i64);

fn is_reduced(f: Form, disc: i64, s: i64) -> bool {
    let (a, b, _) = f;
    // 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b
    if b <= 0 || b > s {
        return false;
    }
    let t = 2 * a.abs();
    let lower = (t + b) * (t + b) > disc;
    let upper = t - b <= 0 || (t - b) * (t - b) < disc;
    lower && upper
}

/// `ρ(a, b, c) = (c, b', (b'^2 - D)/4c)` with `b' ≡ -b mod 2c` maximal below `sqrt D`.
fn rho(f: Form, disc: i64, s: i64) -> Form {
    let (_, b, c) = f;
    let m = 2 * c.abs();
    let b2 = s - (s + b).rem_euclid(m);
    (c, b2, (b2 * b2 - disc) / (4 * c))
}

/// Reduced forms of discriminant `disc > 0`, non-square.
pub fn reduced_forms(disc: i64) -> Vec<Form> {
    let s = disc.sqrt();
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - disc).rem_euclid(2) != 0 {
            continue;
        }
        let ac = (b * b - disc) / 4;
        for a in 1..=ac.abs() {
            if ac % a != 0 {
                continue;
            }
            for sa in [a, -a] {
                let f = (sa, b, ac / sa);
                if is_reduced(f, disc, s) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Number of `ρ`-cycles of reduced forms of discriminant `disc`; for a
/// fundamental discriminant this is the narrow class number.
pub fn hplus_form_cycles(disc: i64) -> usize {
    let s = disc.sqrt();
    assert!(s * s != disc && disc > 0, "discriminant must be a positive non-square");
    let forms = reduced_forms(disc);
    let mut seen: HashSet<Form> = HashSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        while seen.insert(g) {
            g = rho(g, disc, s);
            debug_assert!(is_reduced(g, disc, s));
        }
    }
    cycles
}
