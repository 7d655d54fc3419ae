//! Shared test oracles, independent of the library's computation paths:
//! a cofactor-expansion determinant, a Durand–Kerner polynomial root
//! finder, and multiset matching helpers.

use eigencharge::linalg::DMat;
use eigencharge::scalar::{Coeff, Rational};
use num_complex::Complex64;
use num_traits::Zero;

/// Determinant by full cofactor expansion along the first row. Exponential
/// and proud of it: this is the brute-force cross-check for the band
/// recurrences.
pub fn cofactor_det<T: Coeff>(m: &DMat<T>) -> T {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = T::zero();
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let mut minor = DMat::<T>::zeros(n - 1, n - 1);
        for r in 1..n {
            let mut cc = 0;
            for c in 0..n {
                if c == j {
                    continue;
                }
                minor[(r - 1, cc)] = m[(r, c)].clone();
                cc += 1;
            }
        }
        let term = m[(0, j)].clone() * cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// All complex roots of a real-coefficient polynomial by the Durand–Kerner
/// fixed point, from the standard spiral start. Deterministic; degree is
/// small here so plain iteration is plenty.
pub fn polynomial_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1, "constant polynomial");
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs
        .iter()
        .map(|&c| Complex64::new(c / lead, 0.0))
        .collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    // Fujiwara bound keeps every root inside |z| <= radius without the
    // overflow the plain Cauchy bound invites for large coefficients
    let radius = 2.0
        * monic[..deg]
            .iter()
            .enumerate()
            .map(|(i, c)| c.norm().powf(1.0 / (deg - i) as f64))
            .fold(0.0, f64::max);
    let radius = radius.max(1.0);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| seed.powu(k as u32 + 1) * radius)
        .collect();
    for _ in 0..600 {
        let mut moved: f64 = 0.0;
        for k in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Greedy nearest matching of two complex multisets; returns the largest
/// relative deviation, or `None` when the sizes differ.
pub fn match_multisets(xs: &[Complex64], ys: &[Complex64]) -> Option<f64> {
    if xs.len() != ys.len() {
        return None;
    }
    let mut remaining: Vec<Complex64> = ys.to_vec();
    let mut worst: f64 = 0.0;
    for &x in xs {
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| {
                (x - *p).norm().partial_cmp(&(x - *q).norm()).unwrap()
            })?;
        let y = remaining.swap_remove(idx);
        worst = worst.max((x - y).norm() / (1.0 + x.norm()));
    }
    Some(worst)
}

/// Random rational on a 1/64 grid in `[-bound, bound]`.
pub fn random_rational(rng: &mut impl rand::Rng, bound: i64) -> Rational {
    let num = rng.random_range(-bound * 64..=bound * 64);
    Rational::new(num.into(), 64.into())
}

#[allow(dead_code)]
pub fn to_complex_vec(values: &[f64]) -> Vec<Complex64> {
    values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
}
