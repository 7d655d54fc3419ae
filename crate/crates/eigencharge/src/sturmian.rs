//! Sturmian eigenvectors from the closed determinant formulas, wavefunction
//! evaluation, and the exact ODE-residual certificate.
//!
//! The residual certificate is the crate's primary anti-bug oracle: it
//! substitutes the full ansatz back into the differential equation with
//! exact complex-rational arithmetic and returns the leftover polynomial.
//! A zero polynomial certifies a quasi-exact solution; anything else
//! pinpoints a transcription error long before any float test would.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::model::{build_q, ModelParams};
use crate::poly::Polynomial;
use crate::scalar::{rat, Coeff, GaussianRational, Rational};

/// Right coefficient vector `h` with the normalization `h_N = 1`.
///
/// `h_{N-k-1} = det(trailing block of Q(f) from row N-k) / (2^{k+1} (k+1)!)`
/// for `k = 0..N-1`. The formula is total in `f`; the Sturmian property
/// `Q(f) h = 0` holds exactly when `f` is an eigencharge, and the whole
/// residual concentrates in row 0 otherwise.
pub fn right_coefficients<T: Coeff>(params: &ModelParams, f: &T) -> Vec<T> {
    let n = params.n();
    let q = build_q(params, f);
    let trailing = q.trailing_minors();
    let mut h = vec![T::zero(); n + 1];
    h[n] = T::one();
    let mut denom = Rational::one();
    for k in 0..n {
        // denom = 2^{k+1} (k+1)!
        denom *= rat(2) * rat(k as i64 + 1);
        h[n - k - 1] = trailing[n - k].clone() * T::from_rational(&denom.recip());
    }
    h
}

/// Left coefficient vector `g`, from the mirrored closed formula
/// `g_{k+1} = (N-k-1)!/(2^{k+1}(k+1)!) det(leading block of Q(f) to row k)`.
///
/// The overall scale is pinned by extending the same pattern to the empty
/// determinant: `g_0 = N!`. Only the direction (and the overlaps it enters)
/// is meaningful.
pub fn left_coefficients<T: Coeff>(params: &ModelParams, f: &T) -> Vec<T> {
    let n = params.n();
    let q = build_q(params, f);
    let leading = q.leading_minors();
    let mut factorial = Rational::one(); // running (N-k-1)!
    for m in 1..=n {
        factorial *= rat(m as i64);
    }
    let mut g = vec![T::zero(); n + 1];
    g[0] = T::from_rational(&factorial);
    let mut denom = Rational::one();
    for k in 0..n {
        factorial /= rat((n - k) as i64); // now (N-k-1)!
        denom *= rat(2) * rat(k as i64 + 1); // 2^{k+1} (k+1)!
        g[k + 1] = leading[k].clone() * T::from_rational(&(&factorial / &denom));
    }
    g
}

/// One Sturmian solution in floating point: eigencharge, energy and the two
/// coefficient vectors.
#[derive(Clone, Debug)]
pub struct SturmianSolution {
    pub params: ModelParams,
    pub f: Complex64,
    pub energy: f64,
    pub h: Vec<Complex64>,
    pub g: Vec<Complex64>,
}

impl SturmianSolution {
    pub fn new(params: ModelParams, f: Complex64) -> Self {
        let h = right_coefficients(&params, &f);
        let g = left_coefficients(&params, &f);
        let energy = params.energy_f64();
        Self { params, f, energy, h, g }
    }

    /// `max |Q(f) h| / max |h|`; near zero exactly at eigencharges.
    pub fn residual_norm(&self) -> f64 {
        let q = build_q(&self.params, &self.f);
        let r = q.matvec(&self.h);
        let rn = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let hn = self.h.iter().map(|z| z.norm()).fold(0.0, f64::max);
        rn / hn
    }

    /// `max |g Q(f)| / max |g|` for the left vector.
    pub fn left_residual_norm(&self) -> f64 {
        let q = build_q(&self.params, &self.f);
        let r = q.vecmat(&self.g);
        let rn = r.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let gn = self.g.iter().map(|z| z.norm()).fold(0.0, f64::max);
        rn / gn
    }

    /// `psi(x) = (c + ix) exp(-x^2/2 - iax) sum_n h_n (ix)^n`.
    pub fn wavefunction(&self, x: f64) -> Complex64 {
        let a = self.params.a_f64();
        let c = self.params.c_f64();
        let ix = Complex64::new(0.0, x);
        let mut phi = Complex64::ZERO;
        for h in self.h.iter().rev() {
            phi = phi * ix + h;
        }
        (ix + c) * (Complex64::new(-x * x / 2.0, -a * x)).exp() * phi
    }

    pub fn wavefunction_eval(&self, xs: &[f64]) -> Vec<Complex64> {
        xs.iter().map(|&x| self.wavefunction(x)).collect()
    }
}

/// The polynomial factor `phi(x) = sum_n h_n (ix)^n` with exact complex
/// rational coefficients, for a rational charge.
fn phi_polynomial(h: &[Rational]) -> Polynomial<GaussianRational> {
    // (ix)^n = i^n x^n; i^n cycles 1, i, -1, -i.
    let coeffs = h
        .iter()
        .enumerate()
        .map(|(n, hn)| {
            let (re, im) = match n % 4 {
                0 => (hn.clone(), Rational::zero()),
                1 => (Rational::zero(), hn.clone()),
                2 => (-hn.clone(), Rational::zero()),
                _ => (Rational::zero(), -hn.clone()),
            };
            GaussianRational::new(re, im)
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Exact residual polynomial of the full Schrödinger form.
///
/// With `u(x) = (c + ix) phi(x)` and the Gaussian factor stripped, the
/// operator `-d^2/dx^2 + x^2 + 2iax + if/(x - ic) - E` applied to the ansatz
/// leaves `(x - ic) [-u'' + 2(x + ia) u' + (1 + a^2 - E) u] + i f u`, a plain
/// polynomial because `(c + ix) = i (x - ic)` makes the Coulomb term
/// polynomial as well. This routine builds that polynomial exactly; the zero
/// polynomial certifies a quasi-exact solution.
pub fn ode_residual_with_energy(
    params: &ModelParams,
    f: &Rational,
    energy: &Rational,
) -> Polynomial<GaussianRational> {
    let h = right_coefficients::<Rational>(params, f);
    let phi = phi_polynomial(&h);
    let i = GaussianRational::i();
    let c = GaussianRational::from_real(params.c().clone());

    // u = (c + ix) phi
    let x = Polynomial::<GaussianRational>::var();
    let c_plus_ix = Polynomial::new(vec![c, i.clone()]);
    let u = c_plus_ix * phi.clone();
    let du = u.derivative();
    let ddu = du.derivative();

    // bracket = -u'' + 2 (x + ia) u' + (1 + a^2 - E) u
    let x_plus_ia = Polynomial::new(vec![
        i.clone() * GaussianRational::from_real(params.a().clone()),
        GaussianRational::one(),
    ]);
    let const_term = GaussianRational::from_real(
        Rational::one() + params.a() * params.a() - energy.clone(),
    );
    let bracket = -ddu
        + x_plus_ia.scale(&GaussianRational::from_int(2)) * du
        + u.scale(&const_term);

    // (x - ic) bracket + i f u
    let x_minus_ic = x - Polynomial::constant(i.clone() * GaussianRational::from_real(params.c().clone()));
    let coulomb = u.scale(&(i * GaussianRational::from_real(f.clone())));
    x_minus_ic * bracket + coulomb
}

/// Residual at the multiplet energy `E = 2N + a^2 + 3`.
pub fn ode_residual(params: &ModelParams, f: &Rational) -> Polynomial<GaussianRational> {
    ode_residual_with_energy(params, f, &params.energy())
}

/// Float fallback for non-rational charges: the same construction over
/// `Complex64`, reported through the largest coefficient magnitude instead
/// of exact zero-ness.
pub fn ode_residual_f64(params: &ModelParams, f: Complex64, energy: f64) -> Polynomial<Complex64> {
    let h = right_coefficients::<Complex64>(params, &f);
    let i = Complex64::I;
    let a = params.a_f64();
    let c = params.c_f64();
    let phi = Polynomial::new(h.iter().enumerate().map(|(n, hn)| hn * i.powu(n as u32)).collect());
    let u = Polynomial::new(vec![Complex64::new(c, 0.0), i]) * phi;
    let du = u.derivative();
    let ddu = du.derivative();
    let x_plus_ia = Polynomial::new(vec![Complex64::new(0.0, a), Complex64::ONE]);
    let bracket = -ddu
        + x_plus_ia.scale(&Complex64::new(2.0, 0.0)) * du
        + u.scale(&Complex64::new(1.0 + a * a - energy, 0.0));
    let x_minus_ic = Polynomial::new(vec![Complex64::new(0.0, -c), Complex64::ONE]);
    x_minus_ic * bracket + u.scale(&(i * f))
}

/// Largest coefficient magnitude, the report for the float fallback.
pub fn residual_magnitude(p: &Polynomial<Complex64>) -> f64 {
    p.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_traits::Zero;

    #[test]
    fn right_vector_closed_form() {
        // N = 1, a = 0, c = 5/2: rational eigencharges f = -6 and f = -9.
        let p = ModelParams::new(1, rat(0), ratio(5, 2));
        let h = right_coefficients::<Rational>(&p, &rat(-6));
        assert_eq!(h, vec![ratio(1, 2), rat(1)]);
        let q = build_q(&p, &rat(-6));
        assert!(q.matvec(&h).iter().all(Zero::is_zero));

        let h = right_coefficients::<Rational>(&p, &rat(-9));
        assert_eq!(h, vec![rat(2), rat(1)]);
        let q = build_q(&p, &rat(-9));
        assert!(q.matvec(&h).iter().all(Zero::is_zero));

        // N = 0: normalization only.
        let p = ModelParams::new(0, rat(0), rat(1));
        assert_eq!(right_coefficients::<Rational>(&p, &ratio(13, 7)), vec![rat(1)]);
    }

    #[test]
    fn left_vector_annihilates() {
        let p = ModelParams::new(1, rat(0), ratio(5, 2));
        let g = left_coefficients::<Rational>(&p, &rat(-6));
        assert_eq!(g, vec![rat(1), rat(-2)]);
        let q = build_q(&p, &rat(-6));
        assert!(q.vecmat(&g).iter().all(Zero::is_zero));

        // N = 0: g = (0!) = (1)
        let p0 = ModelParams::new(0, rat(0), rat(4));
        assert_eq!(left_coefficients::<Rational>(&p0, &rat(-8)), vec![rat(1)]);
    }

    #[test]
    fn residual_row_zero_identity() {
        // For any f, Q(f) h(f) = (det Q(f) / (2^N N!)) e_0 exactly.
        use crate::poly::Polynomial;
        for (n, a, c, f) in [
            (1usize, ratio(1, 3), ratio(5, 2), ratio(-7, 2)),
            (2, rat(0), rat(1), ratio(3, 4)),
            (3, ratio(-1, 2), ratio(7, 3), rat(2)),
            (4, rat(1), rat(-2), ratio(-11, 6)),
        ] {
            let p = ModelParams::new(n, a, c);
            let h = right_coefficients::<Rational>(&p, &f);
            let q = build_q(&p, &f);
            let r = q.matvec(&h);
            let charpoly: Polynomial<Rational> =
                build_q(&p, &Polynomial::var()).determinant();
            let mut scale = Rational::one();
            for k in 1..=n {
                scale *= rat(2) * rat(k as i64);
            }
            assert_eq!(r[0], charpoly.eval(&f) / scale);
            for entry in &r[1..] {
                assert!(entry.is_zero());
            }
        }
    }

    #[test]
    fn ode_residual_certifies_quasi_exact_solutions() {
        // N = 0: f = -2c solves exactly, for several rational c.
        for c in [rat(1), ratio(1, 3), ratio(7, 2), rat(-2)] {
            let p = ModelParams::new(0, rat(0), c.clone());
            let f = rat(-2) * c;
            assert!(ode_residual(&p, &f).is_zero());
        }

        // N = 1, c = 5/2: both rational charges solve.
        let p = ModelParams::new(1, rat(0), ratio(5, 2));
        assert!(ode_residual(&p, &rat(-6)).is_zero());
        assert!(ode_residual(&p, &rat(-9)).is_zero());

        // a non-eigencharge must not solve the equation
        assert!(!ode_residual(&p, &rat(-5)).is_zero());

        // the right charge at the wrong energy must not solve it either
        let wrong = p.energy() + rat(1);
        assert!(!ode_residual_with_energy(&p, &rat(-6), &wrong).is_zero());
    }

    #[test]
    fn ode_residual_with_tilt() {
        // shift invariance: a = 1, c = 3/2 has d = 5/2, same charges.
        let p = ModelParams::new(1, rat(1), ratio(3, 2));
        assert!(ode_residual(&p, &rat(-6)).is_zero());
        assert!(ode_residual(&p, &rat(-9)).is_zero());
        assert!(!ode_residual(&p, &rat(-8)).is_zero());
    }

    #[test]
    fn float_fallback_magnitudes() {
        let p = ModelParams::new(1, rat(0), ratio(5, 2));
        let good = ode_residual_f64(&p, Complex64::new(-6.0, 0.0), 5.0);
        assert!(residual_magnitude(&good) < 1e-12);
        let bad = ode_residual_f64(&p, Complex64::new(-5.0, 0.0), 5.0);
        assert!(residual_magnitude(&bad) > 1e-2);
    }

    #[test]
    fn wavefunction_values() {
        // N = 0, a = 0, c = 1, f = -2: psi(0) = c = 1.
        let p = ModelParams::new(0, rat(0), rat(1));
        let sol = SturmianSolution::new(p, Complex64::new(-2.0, 0.0));
        let psi0 = sol.wavefunction(0.0);
        assert!((psi0 - Complex64::ONE).norm() < 1e-15);

        // PT symmetry with real h: psi(-x) = conj(psi(x)).
        let p = ModelParams::new(1, rat(0), ratio(5, 2));
        let sol = SturmianSolution::new(p, Complex64::new(-6.0, 0.0));
        for x in [0.3, 1.7, 4.2] {
            let l = sol.wavefunction(-x);
            let r = sol.wavefunction(x).conj();
            assert!((l - r).norm() < 1e-12);
        }
        assert!(sol.residual_norm() < 1e-14);
        assert!(sol.left_residual_norm() < 1e-14);
    }

    #[test]
    fn wavefunction_growth_bound() {
        let p = ModelParams::new(2, rat(1), rat(4));
        let f = Complex64::new(-10.0, 0.0); // not an eigencharge; bound is structural
        let sol = SturmianSolution::new(p.clone(), f);
        let a = p.a_f64().abs();
        let hmax: f64 = sol.h.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let cmag = p.c_f64().abs();
        for k in 0..=100 {
            let x = -10.0 + 0.2 * k as f64;
            let bound = (cmag + x.abs())
                * (x.abs() + 1.0).powi(p.n() as i32 + 1)
                * ((a * x.abs()) - x * x / 2.0).exp()
                * (hmax * (p.n() as f64 + 1.0));
            assert!(sol.wavefunction(x).norm() <= bound * (1.0 + 1e-12));
        }
    }
}
