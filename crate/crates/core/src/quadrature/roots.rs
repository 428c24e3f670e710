//! Real roots of low-degree `f64` polynomials by derivative-sequence isolation.
//!
//! The real roots of `f'` split the line into intervals on which `f` is monotone, so each
//! interval holds at most one root and a sign change brackets it. A critical point where
//! `f` vanishes to rounding is a multiple root.

use crate::poly::{newton_polish, Polynomial, RealRoot};

/// Relative threshold on `|f^(k)(x)|` below which a derivative counts as vanishing.
const MULTIPLICITY_TOL: f64 = 1e-8;

/// Fujiwara's bound: every complex root has modulus at most this value.
pub fn root_modulus_bound(poly: &Polynomial<f64>) -> f64 {
    let c = poly.coeffs();
    let n = poly.degree();
    if n == 0 {
        return 0.0;
    }
    let lead = c[0].abs();
    (1..=n)
        .map(|i| {
            let ratio = c[i].abs() / lead;
            let ratio = if i == n { ratio / 2.0 } else { ratio };
            ratio.powf(1.0 / i as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
}

fn vanishes(poly: &Polynomial<f64>, x: f64, rel: f64) -> bool {
    poly.eval_f64(x).abs() <= rel * poly.eval_magnitude(x)
}

/// Multiplicity of `x` as a root of `poly`: one plus the number of leading derivatives
/// that vanish at `x` to [`MULTIPLICITY_TOL`].
pub fn multiplicity_at(poly: &Polynomial<f64>, x: f64) -> u32 {
    let mut m = 1;
    let mut d = poly.derivative();
    while d.degree() > 0 && vanishes(&d, x, MULTIPLICITY_TOL) {
        m += 1;
        d = d.derivative();
    }
    m
}

/// Real roots in ascending order with multiplicities.
pub fn real_roots(poly: &Polynomial<f64>) -> Vec<RealRoot> {
    let n = poly.degree();
    if poly.is_zero() || n == 0 {
        return Vec::new();
    }
    let c = poly.coeffs();
    if n == 1 {
        return vec![RealRoot {
            value: -c[1] / c[0],
            multiplicity: 1,
        }];
    }

    let critical = real_roots(&poly.derivative());
    let mut roots = Vec::new();
    let mut on_critical = Vec::with_capacity(critical.len());
    for cp in &critical {
        let is_root = vanishes(poly, cp.value, 8.0 * f64::EPSILON);
        on_critical.push(is_root);
        if is_root {
            roots.push(RealRoot {
                value: cp.value,
                multiplicity: cp.multiplicity + 1,
            });
        }
    }

    let bound = root_modulus_bound(poly) * 1.0625 + f64::MIN_POSITIVE;
    let mut edges = vec![(-bound, false)];
    edges.extend(critical.iter().zip(&on_critical).map(|(cp, &z)| (cp.value, z)));
    edges.push((bound, false));

    for pair in edges.windows(2) {
        let ((lo, lo_root), (hi, hi_root)) = (pair[0], pair[1]);
        if lo_root || hi_root || lo >= hi {
            continue;
        }
        let (flo, fhi) = (poly.eval_f64(lo), poly.eval_f64(hi));
        if flo == 0.0 || fhi == 0.0 || flo.signum() == fhi.signum() {
            continue;
        }
        let r = newton_polish(poly, bisect(poly, lo, hi, flo));
        roots.push(RealRoot {
            value: r,
            multiplicity: multiplicity_at(poly, r),
        });
    }
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    roots.dedup_by(|a, b| a.value == b.value);
    roots
}

fn bisect(poly: &Polynomial<f64>, mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let lo_sign = flo.signum();
    for _ in 0..2200 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = poly.eval_f64(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo + 0.5 * (hi - lo)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Polynomial<f64> {
        Polynomial::new(c.to_vec())
    }

    fn values(roots: &[RealRoot]) -> Vec<f64> {
        roots.iter().map(|r| r.value).collect()
    }

    #[test]
    fn quartic_minus_one() {
        let roots = real_roots(&p(&[1.0, 0.0, 0.0, 0.0, -1.0]));
        assert_eq!(values(&roots), vec![-1.0, 1.0]);
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&p(&[1.0, 0.0, 0.0, 0.0, 1.0])).is_empty());
        assert!(real_roots(&p(&[1.0, 0.0, 1.0])).is_empty());
    }

    #[test]
    fn quintic_plus_one() {
        let roots = real_roots(&p(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]));
        assert_eq!(values(&roots), vec![-1.0]);
    }

    #[test]
    fn detects_multiplicity() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let roots = real_roots(&p(&[1.0, 0.0, -3.0, 2.0]));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1].value, 1.0);
        assert_eq!(roots[1].multiplicity, 2);
        // (x - 1)^3
        let roots = real_roots(&p(&[1.0, -3.0, 3.0, -1.0]));
        assert_eq!(roots, vec![RealRoot { value: 1.0, multiplicity: 3 }]);
    }

    #[test]
    fn spread_simple_roots() {
        // (x + 3)(x - 0.5)(x - 2)(x - 7)
        let f = p(&[1.0, -6.5, -10.0, 48.5, -21.0]);
        let roots = real_roots(&f);
        let want = [-3.0, 0.5, 2.0, 7.0];
        assert_eq!(roots.len(), 4);
        for (r, w) in roots.iter().zip(want) {
            assert!((r.value - w).abs() < 1e-13, "{} vs {w}", r.value);
            assert_eq!(r.multiplicity, 1);
        }
    }

    #[test]
    fn fujiwara_bounds_roots() {
        let f = p(&[1.0, -6.5, -10.0, 48.5, -21.0]);
        assert!(root_modulus_bound(&f) >= 7.0);
    }
}
