//! Model parameters and the quadridiagonal recurrence matrix.
//!
//! The potential is a harmonic well with an imaginary linear tilt `2iax` and
//! a Coulomb-like core `if/(x - ic)` whose pole sits off the real axis. A
//! terminating power-series solution of multiplet size `N + 1` pins the
//! energy to `E = 2N + a^2 + 3` and turns the differential equation into the
//! band-matrix problem `Q(f) h^T = 0`, with the effective charge `f` playing
//! the role of the eigenvalue.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::DMat;
use crate::scalar::{rat, rational_from_f64, rational_to_f64, Coeff, Rational};

/// The triple `(N, a, c)` fixing one quasi-exact sector.
///
/// `d = a + c` and `lambda = 1/c` are always derived, never stored: two
/// parameter sets with equal `N` and equal `d` produce identical eigencharge
/// sets, and the accessors keep that invariant impossible to violate.
#[derive(Clone, PartialEq, Debug)]
pub struct ModelParams {
    n: usize,
    a: Rational,
    c: Rational,
}

impl ModelParams {
    pub fn new(n: usize, a: Rational, c: Rational) -> Self {
        Self { n, a, c }
    }

    /// Exact construction from doubles (every finite double is a rational).
    pub fn from_f64(n: usize, a: f64, c: f64) -> Result<Self> {
        let a = rational_from_f64(a)
            .ok_or_else(|| Error::InvalidParameter(format!("a = {a} is not finite")))?;
        let c = rational_from_f64(c)
            .ok_or_else(|| Error::InvalidParameter(format!("c = {c} is not finite")))?;
        Ok(Self { n, a, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix dimension `N + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// The sole spectral parameter `d = a + c`.
    pub fn d(&self) -> Rational {
        &self.a + &self.c
    }

    /// Inverse screening `lambda = 1/c`; an error when the pole sits on the
    /// real axis (`c = 0`), where the rescaled picture does not exist.
    pub fn lambda(&self) -> Result<Rational> {
        if self.c.is_zero() {
            return Err(Error::LambdaUndefined);
        }
        Ok(self.c.recip())
    }

    /// Multiplet energy `E = 2N + a^2 + 3`, exact.
    pub fn energy(&self) -> Rational {
        rat(2 * self.n as i64) + &self.a * &self.a + rat(3)
    }

    pub fn a_f64(&self) -> f64 {
        rational_to_f64(&self.a)
    }

    pub fn c_f64(&self) -> f64 {
        rational_to_f64(&self.c)
    }

    pub fn d_f64(&self) -> f64 {
        rational_to_f64(&self.d())
    }

    pub fn energy_f64(&self) -> f64 {
        rational_to_f64(&self.energy())
    }

    pub fn lambda_f64(&self) -> Result<f64> {
        Ok(rational_to_f64(&self.lambda()?))
    }
}

/// The four closed-form band coefficients at row `n`, with the charge
/// dependence folded into the diagonal: `B_n(f) = B_n(0) - f`.
///
/// All four are total functions of the row index; the predicates report
/// whether each one actually lands inside the `(N+1) x (N+1)` matrix
/// (`A_0` multiplies the identically-zero `h_{-1}`, and the uppermost
/// superdiagonal slots fall off the right edge).
#[derive(Clone, PartialEq, Debug)]
pub struct RecurrenceCoefficients {
    /// Subdiagonal `A_n = -2(N + 1 - n)`.
    pub sub: Rational,
    /// Diagonal `B_n(f) = -2a(n+1) - 2c(N+1-n) - f`.
    pub diag: Rational,
    /// First superdiagonal `C_n = (n+1)(n+2-2ac)`.
    pub sup1: Rational,
    /// Second superdiagonal `D_n = c(n+1)(n+2)`.
    pub sup2: Rational,
    row: usize,
    n: usize,
}

impl RecurrenceCoefficients {
    pub fn sub_in_matrix(&self) -> bool {
        self.row >= 1
    }

    pub fn sup1_in_matrix(&self) -> bool {
        self.row + 1 <= self.n
    }

    pub fn sup2_in_matrix(&self) -> bool {
        self.row + 2 <= self.n
    }
}

/// Closed-form recurrence coefficients at row `row`, `0 <= row <= N`.
pub fn recurrence_coefficients(
    params: &ModelParams,
    f: &Rational,
    row: usize,
) -> Result<RecurrenceCoefficients> {
    let n = params.n();
    if row > n {
        return Err(Error::IndexOutOfRange { index: row, n });
    }
    let (a, c) = (params.a(), params.c());
    let np1mn = rat((n + 1 - row) as i64);
    let rp1 = rat(row as i64 + 1);
    let rp2 = rat(row as i64 + 2);
    Ok(RecurrenceCoefficients {
        sub: rat(-2) * &np1mn,
        diag: rat(-2) * a * &rp1 + rat(-2) * c * &np1mn - f,
        sup1: &rp1 * (&rp2 - rat(2) * a * c),
        sup2: c * &rp1 * &rp2,
        row,
        n,
    })
}

/// `(N+1) x (N+1)` band matrix with one subdiagonal and two superdiagonals.
///
/// Bands are stored densely; every entry outside the four bands is
/// identically zero. The scalar type is chosen by the caller: exact
/// rationals for the symbolic paths, floats for the eigensolves, and
/// polynomial entries for the secular determinants.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadridiagonalMatrix<T> {
    /// `diag[i]` at `(i, i)`.
    diag: Vec<T>,
    /// `sub[i]` at `(i + 1, i)`.
    sub: Vec<T>,
    /// `sup1[i]` at `(i, i + 1)`.
    sup1: Vec<T>,
    /// `sup2[i]` at `(i, i + 2)`.
    sup2: Vec<T>,
}

/// Build `Q(f) = Q(0) - f I` for the given parameters.
///
/// The bands are evaluated exactly in rational arithmetic and converted into
/// the target scalar entry by entry, so the float construction is the
/// correctly rounded image of the exact one.
pub fn build_q<T: Coeff>(params: &ModelParams, f: &T) -> QuadridiagonalMatrix<T> {
    let n = params.n();
    let mut diag = Vec::with_capacity(n + 1);
    let mut sub = Vec::with_capacity(n);
    let mut sup1 = Vec::with_capacity(n);
    let mut sup2 = Vec::with_capacity(n.saturating_sub(1));
    let zero = Rational::zero();
    for row in 0..=n {
        let coeffs = recurrence_coefficients(params, &zero, row).expect("row in range");
        diag.push(T::from_rational(&coeffs.diag) - f.clone());
        if coeffs.sub_in_matrix() {
            sub.push(T::from_rational(&coeffs.sub));
        }
        if coeffs.sup1_in_matrix() {
            sup1.push(T::from_rational(&coeffs.sup1));
        }
        if coeffs.sup2_in_matrix() {
            sup2.push(T::from_rational(&coeffs.sup2));
        }
    }
    QuadridiagonalMatrix { diag, sub, sup1, sup2 }
}

impl<T: Coeff> QuadridiagonalMatrix<T> {
    /// Assemble from explicit bands (`diag` of length `n`, `sub`/`sup1` of
    /// `n - 1`, `sup2` of `n - 2`).
    pub fn from_bands(diag: Vec<T>, sub: Vec<T>, sup1: Vec<T>, sup2: Vec<T>) -> Self {
        let n = diag.len();
        assert!(n >= 1, "empty matrix");
        assert_eq!(sub.len(), n - 1);
        assert_eq!(sup1.len(), n - 1);
        assert_eq!(sup2.len(), n.saturating_sub(2));
        Self { diag, sub, sup1, sup2 }
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Entry `(i, j)`, zero outside the four bands.
    pub fn get(&self, i: usize, j: usize) -> T {
        let n = self.size();
        assert!(i < n && j < n, "index out of bounds");
        if j + 1 == i {
            self.sub[j].clone()
        } else if j == i {
            self.diag[i].clone()
        } else if j == i + 1 {
            self.sup1[i].clone()
        } else if j == i + 2 {
            self.sup2[i].clone()
        } else {
            T::zero()
        }
    }

    /// Subtract `f` from the diagonal: `Q(f0) -> Q(f0 + f)`.
    pub fn shift_charge(&self, f: &T) -> Self {
        let mut out = self.clone();
        for d in &mut out.diag {
            *d = d.clone() - f.clone();
        }
        out
    }

    pub fn to_dense(&self) -> DMat<T> {
        let n = self.size();
        let mut m = DMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.get(i, j);
            }
        }
        m
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        let n = self.size();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i].clone() * v[i].clone();
                if i >= 1 {
                    acc = acc + self.sub[i - 1].clone() * v[i - 1].clone();
                }
                if i + 1 < n {
                    acc = acc + self.sup1[i].clone() * v[i + 1].clone();
                }
                if i + 2 < n {
                    acc = acc + self.sup2[i].clone() * v[i + 2].clone();
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix, for the left eigenvector checks.
    pub fn vecmat(&self, v: &[T]) -> Vec<T> {
        let n = self.size();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|j| {
                let mut acc = self.diag[j].clone() * v[j].clone();
                if j + 1 < n {
                    acc = acc + self.sub[j].clone() * v[j + 1].clone();
                }
                if j >= 1 {
                    acc = acc + self.sup1[j - 1].clone() * v[j - 1].clone();
                }
                if j >= 2 {
                    acc = acc + self.sup2[j - 2].clone() * v[j - 2].clone();
                }
                acc
            })
            .collect()
    }

    /// All leading principal minors `det_0, ..., det_{n-1}` (so the last one
    /// is the full determinant), by the three-term recurrence
    /// `det_k = B_k det_{k-1} - A_k C_{k-1} det_{k-2} + A_k A_{k-1} D_{k-2} det_{k-3}`
    /// valid for lower bandwidth one.
    pub fn leading_minors(&self) -> Vec<T> {
        let n = self.size();
        let mut out = Vec::with_capacity(n);
        let mut d3 = T::zero();
        let mut d2 = T::zero();
        let mut d1 = T::one();
        for k in 0..n {
            let mut det = self.diag[k].clone() * d1.clone();
            if k >= 1 {
                det = det - self.sub[k - 1].clone() * self.sup1[k - 1].clone() * d2.clone();
            }
            if k >= 2 {
                det = det
                    + self.sub[k - 1].clone()
                        * self.sub[k - 2].clone()
                        * self.sup2[k - 2].clone()
                        * d3.clone();
            }
            out.push(det.clone());
            d3 = d2;
            d2 = d1;
            d1 = det;
        }
        out
    }

    /// All trailing principal minors `M_j = det(rows/cols j..n)`, by the
    /// mirrored recurrence
    /// `M_j = B_j M_{j+1} - A_{j+1} C_j M_{j+2} + A_{j+1} A_{j+2} D_j M_{j+3}`.
    pub fn trailing_minors(&self) -> Vec<T> {
        let n = self.size();
        let mut out = vec![T::zero(); n];
        let mut m3 = T::zero();
        let mut m2 = T::zero();
        let mut m1 = T::one();
        for j in (0..n).rev() {
            let mut det = self.diag[j].clone() * m1.clone();
            if j + 1 < n {
                det = det - self.sub[j].clone() * self.sup1[j].clone() * m2.clone();
            }
            if j + 2 < n {
                det = det
                    + self.sub[j].clone()
                        * self.sub[j + 1].clone()
                        * self.sup2[j].clone()
                        * m3.clone();
            }
            out[j] = det.clone();
            m3 = m2;
            m2 = m1;
            m1 = det;
        }
        out
    }

    pub fn determinant(&self) -> T {
        self.leading_minors().pop().expect("nonempty matrix")
    }
}
