//! The `lambda = 1/c` rescaled eigenproblem, its triangular `lambda -> 0`
//! limit, exact Rayleigh–Schrödinger corrections and spectral projectors.
//!
//! Everything here runs in exact rational arithmetic by default: the
//! unperturbed spectra are integer-valued, and all the worked numbers they
//! produce must match exactly, not to a tolerance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::DMat;
use crate::scalar::{rat, Coeff, Rational};

/// The `lambda -> 0` part of the rescaled pencil: upper triangular, with
/// diagonal `-N + 2n` and second superdiagonal `(n+1)(n+2)`.
pub fn h0_matrix(n: usize) -> DMat<Rational> {
    let size = n + 1;
    let mut m = DMat::zeros(size, size);
    for i in 0..size {
        m[(i, i)] = rat(2 * i as i64 - n as i64);
        if i + 2 < size {
            m[(i, i + 2)] = rat(((i + 1) * (i + 2)) as i64);
        }
    }
    m
}

/// The first-order part: subdiagonal `-2(N+1-n)` and first superdiagonal
/// `(n+1)(n+2)`. Both bands flip index parity, which is what decouples the
/// even and odd components at `lambda = 0` and kills every odd-order energy
/// correction.
pub fn h1_matrix(n: usize) -> DMat<Rational> {
    let size = n + 1;
    let mut m = DMat::zeros(size, size);
    for i in 0..size {
        if i >= 1 {
            m[(i, i - 1)] = rat(-2 * (n + 1 - i) as i64);
        }
        if i + 1 < size {
            m[(i, i + 1)] = rat(((i + 1) * (i + 2)) as i64);
        }
    }
    m
}

/// The rescaled matrix `M(Y, lambda) = H0 + lambda H1 - Y I`, over any
/// scalar. `c * M(X/c, 1/c)` reproduces `Q(f)` entrywise under
/// `X = f + (N+2)(a+c)` at `a = 0`.
pub fn rescaled_matrix<T: Coeff>(n: usize, lambda: &T, y: &T) -> DMat<T> {
    let h0 = h0_matrix(n);
    let h1 = h1_matrix(n);
    let size = n + 1;
    let mut m = DMat::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            let mut e = T::from_rational(&h0[(i, j)])
                + lambda.clone() * T::from_rational(&h1[(i, j)]);
            if i == j {
                e = e - y.clone();
            }
            m[(i, j)] = e;
        }
    }
    m
}

/// One unperturbed level: integer eigenvalue `Y0 = N - 2 alpha`, its pivot
/// index `N - alpha`, and primitive integer-valued left/right vectors
/// supported on one parity class, normalized with a positive pivot entry.
#[derive(Clone, Debug, PartialEq)]
pub struct UnperturbedLevel {
    pub alpha: usize,
    pub y0: i64,
    pub pivot: usize,
    pub h0: Vec<Rational>,
    pub g0: Vec<Rational>,
}

impl UnperturbedLevel {
    /// Overlap `g0 . h0`; strictly positive for these levels.
    pub fn overlap(&self) -> Rational {
        self.h0
            .iter()
            .zip(&self.g0)
            .fold(Rational::zero(), |acc, (h, g)| acc + h * g)
    }

    /// The entries on the level's own parity class, as plain integers
    /// (these are the tabulated triples).
    pub fn h0_block(&self) -> Vec<i64> {
        block_of(&self.h0, self.pivot)
    }

    pub fn g0_block(&self) -> Vec<i64> {
        block_of(&self.g0, self.pivot)
    }
}

fn block_of(v: &[Rational], pivot: usize) -> Vec<i64> {
    let start = pivot % 2;
    v.iter()
        .skip(start)
        .step_by(2)
        .map(|q| {
            debug_assert!(q.is_integer());
            let i = q.to_integer();
            i64::try_from(&i).expect("block entry fits i64")
        })
        .collect()
}

/// Scale a rational vector to primitive integers with `v[pivot] > 0`.
fn canonical_integer_vector(v: &mut [Rational], pivot: usize) {
    let mut lcm = BigInt::one();
    for q in v.iter() {
        lcm = lcm.lcm(q.denom());
    }
    let mut gcd = BigInt::zero();
    for q in v.iter_mut() {
        *q *= Rational::from_integer(lcm.clone());
        gcd = gcd.gcd(&q.to_integer());
    }
    if !gcd.is_zero() {
        for q in v.iter_mut() {
            *q /= Rational::from_integer(gcd.clone());
        }
    }
    if v[pivot].is_negative() {
        for q in v.iter_mut() {
            *q = -q.clone();
        }
    }
}

/// The full `lambda = 0` spectrum: `Y0 in {N, N-2, ..., -N}` with exact
/// integer eigenvectors obtained by back-substitution inside each parity
/// block of the triangular pencil.
pub fn unperturbed_spectrum(n: usize) -> Vec<UnperturbedLevel> {
    (0..=n)
        .map(|alpha| {
            let y0 = n as i64 - 2 * alpha as i64;
            let pivot = n - alpha;
            let size = n + 1;
            // right vector: rows i < pivot of (H0 - Y0 I) h = 0 give
            // h_i = (i+1)(i+2) h_{i+2} / (2 (pivot - i)); support i <= pivot.
            let mut h = vec![Rational::zero(); size];
            h[pivot] = Rational::one();
            let mut i = pivot;
            while i >= 2 {
                i -= 2;
                let up = h[i + 2].clone() * rat(((i + 1) * (i + 2)) as i64);
                h[i] = up / rat(2 * (pivot - i) as i64);
            }
            // left vector: columns j > pivot of g (H0 - Y0 I) = 0 give
            // g_j = (j-1) j g_{j-2} / (2 (pivot - j)); support j >= pivot.
            let mut g = vec![Rational::zero(); size];
            g[pivot] = Rational::one();
            let mut j = pivot;
            while j + 2 <= n {
                j += 2;
                let down = g[j - 2].clone() * rat(((j - 1) * j) as i64);
                g[j] = down / rat(2 * (pivot as i64 - j as i64));
            }
            canonical_integer_vector(&mut h, pivot);
            canonical_integer_vector(&mut g, pivot);
            UnperturbedLevel { alpha, y0, pivot, h0: h, g0: g }
        })
        .collect()
}

/// Level lookup by unperturbed eigenvalue.
pub fn level_by_y0(n: usize, y0: i64) -> Option<usize> {
    let num = n as i64 - y0;
    if num < 0 || num % 2 != 0 {
        return None;
    }
    let alpha = (num / 2) as usize;
    (alpha <= n).then_some(alpha)
}

/// A truncated perturbation series for one level: eigenvalue corrections
/// `Y^[0..=K]` and coefficient-vector corrections `h^[0..=K]`, all exact.
///
/// Corrections beyond zeroth order are normalized by a vanishing pivot
/// component, `h^[k]_{N-alpha} = 0`; for the top level (`alpha = 0`) this is
/// the same as fixing the last component, which is the convention the
/// worked first-order numbers use.
#[derive(Clone, Debug)]
pub struct PerturbationSeries {
    pub n: usize,
    pub alpha: usize,
    pub y0: i64,
    pub pivot: usize,
    pub y_corrections: Vec<Rational>,
    pub h_corrections: Vec<Vec<Rational>>,
}

impl PerturbationSeries {
    /// `sum_k Y^[k] lambda^k`, exact.
    pub fn partial_sum(&self, lambda: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for y in self.y_corrections.iter().rev() {
            acc = acc * lambda + y;
        }
        acc
    }

    /// `sum_{k <= order} Y^[k] lambda^k`, exact, for `order < K`.
    pub fn partial_sum_to(&self, lambda: &Rational, order: usize) -> Rational {
        let mut acc = Rational::zero();
        for y in self.y_corrections[..=order.min(self.y_corrections.len() - 1)]
            .iter()
            .rev()
        {
            acc = acc * lambda + y;
        }
        acc
    }

    /// Cumulative partial sums order by order, in floats (for reports).
    pub fn partial_sums_f64(&self, lambda: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.y_corrections.len());
        let mut acc = 0.0;
        let mut lp = 1.0;
        for y in &self.y_corrections {
            acc += crate::scalar::rational_to_f64(y) * lp;
            lp *= lambda;
            out.push(acc);
        }
        out
    }

    /// Ratio-test estimate of the convergence radius in `lambda`, from the
    /// last two nonzero even-order corrections. Diagnostic only.
    pub fn radius_estimate(&self) -> Option<f64> {
        let even: Vec<&Rational> = self
            .y_corrections
            .iter()
            .step_by(2)
            .filter(|y| !y.is_zero())
            .collect();
        if even.len() < 2 {
            return None;
        }
        let a = even[even.len() - 2];
        let b = even[even.len() - 1];
        let ratio = crate::scalar::rational_to_f64(&(a / b).abs());
        Some(ratio.sqrt())
    }
}

/// Exact Rayleigh–Schrödinger corrections for level `alpha`, through order
/// `k_max`.
///
/// Order `k` solves
/// `(H0 - Y0 I) h^[k] + (H1 - Y^[1] I) h^[k-1] - Y^[2] h^[k-2] - ... - Y^[k] h^[0] = 0`,
/// extracting `Y^[k]` by contraction with the zeroth-order left vector and
/// back-substituting `h^[k]` with the pivot component pinned to zero.
pub fn rs_corrections(n: usize, alpha: usize, k_max: usize) -> Result<PerturbationSeries> {
    if alpha > n {
        return Err(Error::IndexOutOfRange { index: alpha, n });
    }
    let levels = unperturbed_spectrum(n);
    let level = &levels[alpha];
    let overlap = level.overlap();
    if overlap.is_zero() {
        return Err(Error::DegenerateNormalization { level: alpha });
    }
    let h1 = h1_matrix(n);
    let pivot = level.pivot;
    let y0 = level.y0;

    let mut y_corr: Vec<Rational> = vec![rat(y0)];
    let mut h_corr: Vec<Vec<Rational>> = vec![level.h0.clone()];

    for k in 1..=k_max {
        // s = -H1 h^[k-1] + sum_{j=1}^{k-1} Y^[j] h^[k-j]
        let mut s: Vec<Rational> = h1
            .matvec(&h_corr[k - 1])
            .into_iter()
            .map(|v| -v)
            .collect();
        for j in 1..k {
            if y_corr[j].is_zero() {
                continue;
            }
            for (si, hi) in s.iter_mut().zip(&h_corr[k - j]) {
                *si += &y_corr[j] * hi;
            }
        }
        // solvability fixes Y^[k]: g0 . (s + Y^[k] h0) = 0
        let gs = level
            .g0
            .iter()
            .zip(&s)
            .fold(Rational::zero(), |acc, (g, v)| acc + g * v);
        let yk = -gs / &overlap;
        // r = s + Y^[k] h0
        let r: Vec<Rational> = s
            .iter()
            .zip(&level.h0)
            .map(|(si, hi)| si + &yk * hi)
            .collect();
        // back-substitute (H0 - Y0 I) h = r; diagonal entry at row i is
        // 2 (i - pivot), zero exactly at the pivot row
        let mut h = vec![Rational::zero(); n + 1];
        for i in (0..=n).rev() {
            let upper = if i + 2 <= n {
                h[i + 2].clone() * rat(((i + 1) * (i + 2)) as i64)
            } else {
                Rational::zero()
            };
            if i == pivot {
                // consistency row: guaranteed by the choice of Y^[k]
                debug_assert_eq!(upper, r[i]);
                continue;
            }
            h[i] = (r[i].clone() - upper) / rat(2 * (i as i64 - pivot as i64));
        }
        y_corr.push(yk);
        h_corr.push(h);
    }

    Ok(PerturbationSeries {
        n,
        alpha,
        y0,
        pivot,
        y_corrections: y_corr,
        h_corrections: h_corr,
    })
}

/// Rank-one oblique projectors `P_alpha = h0_alpha^T F_aa g0_alpha` with
/// `F = G^{-1}`, `G_ab = g0_a . h0_b`. They sum to the identity and satisfy
/// `P_a P_b = delta_ab P_a`, all exactly.
pub fn projectors(n: usize) -> Result<Vec<DMat<Rational>>> {
    let levels = unperturbed_spectrum(n);
    let size = n + 1;
    let mut overlap = DMat::<Rational>::zeros(size, size);
    for (i, li) in levels.iter().enumerate() {
        for (j, lj) in levels.iter().enumerate() {
            overlap[(i, j)] = li
                .g0
                .iter()
                .zip(&lj.h0)
                .fold(Rational::zero(), |acc, (g, h)| acc + g * h);
        }
    }
    let f = overlap.inverse().map_err(|_| Error::SingularOverlap)?;
    Ok(levels
        .iter()
        .enumerate()
        .map(|(i, l)| DMat::outer(&l.h0, &l.g0).scale(&f[(i, i)]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_q, ModelParams};
    use crate::poly::Bivar;
    use crate::scalar::ratio;

    #[test]
    fn rescaled_matrix_symbolic_pattern() {
        // N = 2 over formal (lambda, Y):
        // [[-Y-2, 2 lam, 2], [-4 lam, -Y, 6 lam], [0, -2 lam, -Y+2]]
        let lam = Bivar::var0();
        let y = Bivar::var1();
        let m = rescaled_matrix(2, &lam, &y);
        let c = |v: i64| Bivar::constant(rat(v));
        assert_eq!(m[(0, 0)], -y.clone() - c(2));
        assert_eq!(m[(0, 1)], c(2) * lam.clone());
        assert_eq!(m[(0, 2)], c(2));
        assert_eq!(m[(1, 0)], c(-4) * lam.clone());
        assert_eq!(m[(1, 1)], -y.clone());
        assert_eq!(m[(1, 2)], c(6) * lam.clone());
        assert_eq!(m[(2, 0)], Bivar::zero());
        assert_eq!(m[(2, 1)], c(-2) * lam.clone());
        assert_eq!(m[(2, 2)], -y.clone() + c(2));
    }

    #[test]
    fn even_block_at_lambda_zero() {
        // N = 4 even-index block of H0 - Y I:
        // [[-Y-4, 2, 0], [0, -Y, 12], [0, 0, -Y+4]]
        let h0 = h0_matrix(4);
        let even = [0usize, 2, 4];
        let expect = [
            [rat(-4), rat(2), rat(0)],
            [rat(0), rat(0), rat(12)],
            [rat(0), rat(0), rat(4)],
        ];
        for (bi, &i) in even.iter().enumerate() {
            for (bj, &j) in even.iter().enumerate() {
                assert_eq!(h0[(i, j)], expect[bi][bj]);
            }
        }
    }

    #[test]
    fn rescaled_consistent_with_q() {
        // c * M(X/c, 1/c) = Q(f) entrywise with X = f + (N+2) c, a = 0
        for n in 0..=6usize {
            for c in [rat(3), ratio(7, 2), ratio(-5, 3)] {
                let f = ratio(9, 4);
                let params = ModelParams::new(n, rat(0), c.clone());
                let q = build_q(&params, &f).to_dense();
                let x = &f + rat(n as i64 + 2) * &c;
                let y = &x / &c;
                let lambda = c.recip();
                let m = rescaled_matrix(n, &lambda, &y).scale(&c);
                assert_eq!(m, q);
            }
        }
    }

    #[test]
    fn integer_spectrum_worked_values() {
        // N = 4: eigenvalues {4, 2, 0, -2, -4}; the even-block triples and
        // the matching left vectors, all primitive integers.
        let levels = unperturbed_spectrum(4);
        let by_y0 = |y: i64| levels.iter().find(|l| l.y0 == y).unwrap();
        assert_eq!(by_y0(-4).h0_block(), vec![1, 0, 0]);
        assert_eq!(by_y0(0).h0_block(), vec![1, 2, 0]);
        assert_eq!(by_y0(4).h0_block(), vec![3, 12, 4]);
        assert_eq!(by_y0(-4).g0_block(), vec![4, -2, 3]);
        assert_eq!(by_y0(0).g0_block(), vec![0, 1, -3]);
        assert_eq!(by_y0(4).g0_block(), vec![0, 0, 1]);
        assert_eq!(by_y0(-4).overlap(), rat(4));
        assert_eq!(by_y0(0).overlap(), rat(2));
        assert_eq!(by_y0(4).overlap(), rat(4));

        // N = 2, level Y0 = 2: h0 = (1, 0, 2)
        let levels = unperturbed_spectrum(2);
        let top = levels.iter().find(|l| l.y0 == 2).unwrap();
        assert_eq!(top.h0, vec![rat(1), rat(0), rat(2)]);
    }

    #[test]
    fn levels_annihilate_pencil() {
        for n in 0..=8usize {
            let h0m = h0_matrix(n);
            for level in unperturbed_spectrum(n) {
                let shifted = h0m.sub(&DMat::identity(n + 1).scale(&rat(level.y0)));
                assert!(shifted.matvec(&level.h0).iter().all(Zero::is_zero));
                assert!(shifted.vecmat(&level.g0).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn overlaps_are_diagonal() {
        for n in 0..=8usize {
            let levels = unperturbed_spectrum(n);
            for (i, li) in levels.iter().enumerate() {
                for (j, lj) in levels.iter().enumerate() {
                    let dot = li
                        .g0
                        .iter()
                        .zip(&lj.h0)
                        .fold(Rational::zero(), |acc, (g, h)| acc + g * h);
                    if i == j {
                        assert!(dot.is_positive());
                    } else {
                        assert!(dot.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn first_order_worked_example() {
        // N = 2, Y0 = 2: Y^[1] = 0 and h^[1] = (0, 4, 0)
        let alpha = level_by_y0(2, 2).unwrap();
        let series = rs_corrections(2, alpha, 1).unwrap();
        assert_eq!(series.y_corrections[1], rat(0));
        assert_eq!(series.h_corrections[1], vec![rat(0), rat(4), rat(0)]);
    }

    #[test]
    fn odd_orders_vanish() {
        for n in 1..=4usize {
            for alpha in 0..=n {
                let series = rs_corrections(n, alpha, 7).unwrap();
                for k in (1..=7).step_by(2) {
                    assert!(series.y_corrections[k].is_zero(), "N={n} alpha={alpha} k={k}");
                }
            }
        }
    }

    #[test]
    fn odd_corrections_live_on_opposite_parity() {
        for n in 2..=5usize {
            for alpha in 0..=n {
                let series = rs_corrections(n, alpha, 5).unwrap();
                let pivot_parity = series.pivot % 2;
                for (k, h) in series.h_corrections.iter().enumerate() {
                    for (idx, v) in h.iter().enumerate() {
                        let same_parity = idx % 2 == pivot_parity;
                        // order k lives on pivot parity for even k,
                        // opposite parity for odd k
                        if same_parity != (k % 2 == 0) && !v.is_zero() {
                            panic!("N={n} alpha={alpha} k={k} idx={idx} leaks parity");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn n1_series_matches_closed_form() {
        // N = 1: Y(lambda) = +/- sqrt(1 - 4 lambda^2); level alpha = 0 is
        // the + branch with expansion 1 - 2 l^2 - 2 l^4 - 4 l^6 - ...
        let series = rs_corrections(1, 0, 6).unwrap();
        assert_eq!(
            series.y_corrections,
            vec![rat(1), rat(0), rat(-2), rat(0), rat(-2), rat(0), rat(-4)]
        );
        // alpha = 1 mirrors it
        let series = rs_corrections(1, 1, 6).unwrap();
        assert_eq!(
            series.y_corrections,
            vec![rat(-1), rat(0), rat(2), rat(0), rat(2), rat(0), rat(4)]
        );
    }

    #[test]
    fn projector_algebra() {
        for n in 1..=6usize {
            let ps = projectors(n).unwrap();
            let size = n + 1;
            let mut sum = DMat::<Rational>::zeros(size, size);
            for p in &ps {
                sum = sum.add(p);
                assert_eq!(p.trace(), rat(1));
            }
            assert_eq!(sum, DMat::identity(size));
            for (i, pi) in ps.iter().enumerate() {
                for (j, pj) in ps.iter().enumerate() {
                    let prod = pi.matmul(pj);
                    if i == j {
                        assert_eq!(prod, pi.clone());
                    } else {
                        assert!(prod.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn transposed_pencil_differs() {
        // The pencil is genuinely asymmetric for N >= 1 through its
        // first-order part; the triangular limit itself only becomes
        // asymmetric once the second superdiagonal exists (N >= 2, where
        // N = 1 degenerates to a plain diagonal).
        for n in 1..=5usize {
            let h1 = h1_matrix(n);
            assert_ne!(h1, h1.transpose());
        }
        for n in 2..=5usize {
            let h0 = h0_matrix(n);
            assert_ne!(h0, h0.transpose());
        }
    }
}
