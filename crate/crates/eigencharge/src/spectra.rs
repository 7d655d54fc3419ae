//! Numeric eigencharges, reality classification, critical-screening search
//! and large-screening asymptotics.
//!
//! The primary numeric path is a dense eigensolve of the small band matrix
//! `Q(0)`; the exact secular polynomial is the cross-check, and also powers
//! a rational Newton refinement used when float precision is not enough.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{build_q, ModelParams};
use crate::poly::Polynomial;
use crate::scalar::{rational_to_f64, round_dyadic, GaussianRational, Rational};
use crate::secular::char_poly_f;

/// One eigencharge with its reality flag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigencharge {
    pub value: Complex64,
    /// `|Im f| <= tol (1 + |f|)`.
    pub is_real: bool,
}

/// The full `(N+1)`-plet for one parameter set, sorted by real part, then
/// imaginary part. Complex charges occur in conjugate pairs because the
/// secular polynomial has real coefficients.
#[derive(Clone, Debug)]
pub struct EigenchargeSet {
    pub params: ModelParams,
    pub tol: f64,
    pub charges: Vec<Eigencharge>,
}

impl EigenchargeSet {
    pub fn all_real(&self) -> bool {
        self.charges.iter().all(|c| c.is_real)
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.charges.iter().map(|c| c.value).collect()
    }
}

/// Eigenvalues of the float `Q(0)`, refined by one guarded Newton step on
/// the exact characteristic polynomial, then flagged real with the relative
/// tolerance `tol (1 + |f|)`.
pub fn eigencharges(params: &ModelParams, tol: f64) -> Result<EigenchargeSet> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol = {tol} must be positive")));
    }
    let n = params.size();
    let q = build_q::<f64>(params, &0.0);
    let dense = q.to_dense();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = dense[(i, j)];
        }
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| Error::Eigensolver {
            size: n,
            matrix: m.iter().copied().collect(),
        })?;
    let raw = schur.complex_eigenvalues();

    // One Newton step on the exact secular polynomial, in exact complex
    // rational arithmetic: float evaluation of these large-coefficient
    // polynomials is too noisy to improve an eigenvalue that is already
    // correct to machine precision, while one exact step lands on the
    // correctly rounded root. The step is kept only if it reduces |p|.
    let cp = char_poly_f(params);
    let cpg = cp.map(|q| GaussianRational::from_real(q.clone()));
    let dpg = cpg.derivative();
    let mut values: Vec<Complex64> = raw
        .iter()
        .map(|&z| {
            let (Some(re), Some(im)) = (Rational::from_float(z.re), Rational::from_float(z.im))
            else {
                return z;
            };
            let fz = GaussianRational::new(re, im);
            let pv = cpg.eval(&fz);
            let dv = dpg.eval(&fz);
            if dv.is_zero() {
                return z;
            }
            let step = pv.clone() / dv;
            let next = GaussianRational::new(
                round_dyadic(&(&fz.re - &step.re), 128),
                round_dyadic(&(&fz.im - &step.im), 128),
            );
            if cpg.eval(&next).norm_sqr() <= pv.norm_sqr() {
                next.to_complex64()
            } else {
                z
            }
        })
        .collect();

    values.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite eigenvalues")
    });
    let charges = values
        .into_iter()
        .map(|value| Eigencharge {
            value,
            is_real: value.im.abs() <= tol * (1.0 + value.norm()),
        })
        .collect();
    Ok(EigenchargeSet { params: params.clone(), tol, charges })
}

/// Result of the critical-screening bisection, with the probe trace kept so
/// non-monotone reality patterns are visible rather than silently absorbed.
#[derive(Clone, Debug)]
pub struct CriticalScreening {
    pub n: usize,
    pub d_critical: f64,
    pub tol: f64,
    pub trace: Vec<(f64, bool)>,
}

const REALITY_TOL: f64 = 1e-9;

/// Smallest screening `d*` such that all `N+1` eigencharges are real for
/// `d > d*` (at `a = 0`, without loss of generality). Bisection on the
/// all-real predicate over a bracket grown geometrically from `[1, 8]`,
/// converged to width `tol`.
pub fn critical_d(n: usize, tol: f64) -> Result<CriticalScreening> {
    if n < 1 {
        return Err(Error::InvalidParameter(
            "critical screening needs N >= 1 (N = 0 has a single real charge)".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol = {tol} must be positive")));
    }
    let mut trace: Vec<(f64, bool)> = Vec::new();
    let probe = |d: f64, trace: &mut Vec<(f64, bool)>| -> Result<bool> {
        let params = ModelParams::from_f64(n, 0.0, d)?;
        let all = eigencharges(&params, REALITY_TOL)?.all_real();
        trace.push((d, all));
        Ok(all)
    };

    let mut lo = 1.0;
    let mut hi = 8.0;
    let mut lo_real = probe(lo, &mut trace)?;
    let mut hi_real = probe(hi, &mut trace)?;
    // grow the bracket geometrically until it straddles the boundary
    while lo_real {
        lo /= 2.0;
        if lo < 1e-12 {
            return Err(Error::BracketFailure { trace });
        }
        lo_real = probe(lo, &mut trace)?;
    }
    while !hi_real {
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::BracketFailure { trace });
        }
        hi_real = probe(hi, &mut trace)?;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if probe(mid, &mut trace)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(CriticalScreening { n, d_critical: 0.5 * (lo + hi), tol, trace })
}

/// Leading-order eigencharge estimates at large screening:
/// `f_n ~ c (Y0_n - N - 2)` with `Y0_n = N - 2n`, i.e. `|f_n| ~ 2(n+1)|c|`.
/// Useful as starting points for root tracking.
pub fn asymptotic_charges(n: usize, c: f64) -> Vec<f64> {
    (0..=n).map(|k| -2.0 * (k as f64 + 1.0) * c).collect()
}

/// Rational Newton refinement of a simple real eigencharge of the exact
/// secular polynomial, starting from `start`.
///
/// Iterates `f <- f - p(f)/p'(f)` in exact arithmetic, rounding each iterate
/// to a dyadic with `precision_bits` fractional bits so the representation
/// stays bounded while quadratic convergence runs far below any float
/// tolerance. Returns the refined rational charge.
pub fn refine_eigencharge_exact(
    params: &ModelParams,
    start: &Rational,
    precision_bits: u32,
) -> Rational {
    refine_polynomial_root_exact(&char_poly_f(params), start, precision_bits)
}

/// The same rational Newton iteration for an arbitrary polynomial, so
/// callers holding the secular polynomial already do not rebuild it per
/// root.
pub fn refine_polynomial_root_exact(
    p: &Polynomial<Rational>,
    start: &Rational,
    precision_bits: u32,
) -> Rational {
    let dp = p.derivative();
    let round = |q: &Rational| -> Rational { round_dyadic(q, precision_bits) };
    let mut f = round(start);
    let mut residual = p.eval(&f).abs();
    // quadratic convergence: a handful of steps reach the dyadic floor
    for _ in 0..64 {
        let slope = dp.eval(&f);
        if slope.is_zero() {
            break;
        }
        let next = round(&(&f - p.eval(&f) / slope));
        let next_residual = p.eval(&next).abs();
        if next_residual >= residual {
            break;
        }
        f = next;
        residual = next_residual;
    }
    f
}

/// Exact count of distinct real roots of the secular polynomial via a Sturm
/// chain, for rational parameters. Complements the float reality flags.
pub fn real_root_count(params: &ModelParams) -> usize {
    let p = char_poly_f(params);
    sturm_real_roots(&p)
}

fn sturm_real_roots(p: &Polynomial<Rational>) -> usize {
    // Sturm chain by repeated negated remainders.
    let mut chain: Vec<Polynomial<Rational>> = vec![p.clone(), p.derivative()];
    loop {
        let last = &chain[chain.len() - 1];
        if last.is_zero() {
            chain.pop();
            break;
        }
        let prev = &chain[chain.len() - 2];
        let rem = poly_rem(prev, last);
        if rem.is_zero() {
            break;
        }
        chain.push(-rem);
    }
    let signs_at_infinity = |sign: i64| -> usize {
        // sign of leading term at +/- infinity; count sign alternations
        let mut changes = 0usize;
        let mut prev: Option<bool> = None;
        for q in &chain {
            let Some(deg) = q.degree() else { continue };
            let lead = q.leading().expect("nonzero");
            let mut positive = lead.is_positive();
            if sign < 0 && deg % 2 == 1 {
                positive = !positive;
            }
            if let Some(pv) = prev {
                if pv != positive {
                    changes += 1;
                }
            }
            prev = Some(positive);
        }
        changes
    };
    signs_at_infinity(-1) - signs_at_infinity(1)
}

fn poly_rem(a: &Polynomial<Rational>, b: &Polynomial<Rational>) -> Polynomial<Rational> {
    let mut r = a.clone();
    let db = b.degree().expect("nonzero divisor");
    let lb = b.leading().expect("nonzero divisor").clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.leading().expect("nonzero").clone();
        let factor = lr / lb.clone();
        // r -= factor x^{dr-db} b
        let mut shifted = vec![Rational::zero(); dr - db];
        shifted.extend(b.coeffs().iter().map(|c| c * &factor));
        r = r - Polynomial::new(shifted);
    }
    r
}
