//! First-order differential operators on bounded-degree polynomials, the
//! sl(2) commutation relations they satisfy, and the exact decomposition of
//! the recurrence operator over a generator set.
//!
//! Operators are represented as exact rational matrices in the monomial
//! basis `{y^0, ..., y^D}`. Multiplication by `y + c` raises degree, so
//! a composition is only faithful where the cutoff does not truncate;
//! comparisons are therefore restricted to input degrees `<= D - 2`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::DMat;
use crate::model::{build_q, ModelParams};
use crate::scalar::{rat, ratio, Rational};

/// A linear operator on polynomials of degree at most `cutoff`, as a matrix
/// in the monomial basis: column `m` holds the coefficients of the image of
/// `y^m`, truncated to degree `cutoff`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyOperator {
    cutoff: usize,
    mat: DMat<Rational>,
}

impl PolyOperator {
    pub fn zero(cutoff: usize) -> Self {
        Self { cutoff, mat: DMat::zeros(cutoff + 1, cutoff + 1) }
    }

    pub fn identity(cutoff: usize) -> Self {
        Self { cutoff, mat: DMat::identity(cutoff + 1) }
    }

    /// `d/dy`.
    pub fn diff(cutoff: usize) -> Self {
        let mut m = DMat::zeros(cutoff + 1, cutoff + 1);
        for j in 1..=cutoff {
            m[(j - 1, j)] = rat(j as i64);
        }
        Self { cutoff, mat: m }
    }

    /// Multiplication by `y + c`; the `y^{cutoff+1}` image component is
    /// truncated away, which is exactly what the degree restriction below
    /// accounts for.
    pub fn mul_y_plus_c(c: &Rational, cutoff: usize) -> Self {
        let mut m = DMat::zeros(cutoff + 1, cutoff + 1);
        for j in 0..=cutoff {
            m[(j, j)] = c.clone();
            if j + 1 <= cutoff {
                m[(j + 1, j)] = rat(1);
            }
        }
        Self { cutoff, mat: m }
    }

    /// Multiplication by `y` alone.
    pub fn mul_y(cutoff: usize) -> Self {
        Self::mul_y_plus_c(&rat(0), cutoff)
    }

    pub fn scalar(q: &Rational, cutoff: usize) -> Self {
        Self::identity(cutoff).scale(q)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn matrix(&self) -> &DMat<Rational> {
        &self.mat
    }

    /// Operator composition `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(self.cutoff, rhs.cutoff);
        Self { cutoff: self.cutoff, mat: self.mat.matmul(&rhs.mat) }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.cutoff, rhs.cutoff);
        Self { cutoff: self.cutoff, mat: self.mat.add(&rhs.mat) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.cutoff, rhs.cutoff);
        Self { cutoff: self.cutoff, mat: self.mat.sub(&rhs.mat) }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { cutoff: self.cutoff, mat: self.mat.scale(q) }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    /// Apply to a coefficient vector (degree `<= cutoff`).
    pub fn apply(&self, coeffs: &[Rational]) -> Vec<Rational> {
        assert!(coeffs.len() <= self.cutoff + 1, "input degree beyond cutoff");
        let mut padded = coeffs.to_vec();
        padded.resize(self.cutoff + 1, Rational::zero());
        self.mat.matvec(&padded)
    }

    /// Equality of the images of `y^0..y^max_input` (where truncation plays
    /// no role if `max_input` is chosen with enough headroom).
    pub fn agrees_with(&self, rhs: &Self, max_input: usize) -> bool {
        assert_eq!(self.cutoff, rhs.cutoff);
        for j in 0..=max_input {
            for i in 0..=self.cutoff {
                if self.mat[(i, j)] != rhs.mat[(i, j)] {
                    return false;
                }
            }
        }
        true
    }

    /// Leading `(n+1) x (n+1)` block, for comparisons against band matrices.
    pub fn leading_block(&self, n: usize) -> DMat<Rational> {
        let mut out = DMat::zeros(n + 1, n + 1);
        for i in 0..=n {
            for j in 0..=n {
                out[(i, j)] = self.mat[(i, j)].clone();
            }
        }
        out
    }

    fn nonzero_entries(&self) -> Vec<(usize, usize, String)> {
        let mut out = Vec::new();
        for i in 0..=self.cutoff {
            for j in 0..=self.cutoff {
                if !self.mat[(i, j)].is_zero() {
                    out.push((i, j, format!("{}", self.mat[(i, j)])));
                }
            }
        }
        out
    }
}

/// Which normalization of the three generators to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorSet {
    /// `J- = d/dy`, `J0 = (y+c) d/dy - N`, `J+ = (y+c)^2 d/dy - 2N (y+c)`:
    /// the combination printed alongside the commutation relations.
    Printed,
    /// Spin-normalized: `J0 = (y+c) d/dy - N/2`, `J+ = (y+c)^2 d/dy - N (y+c)`.
    /// In this basis the recurrence operator has an exact decomposition.
    SpinStandard,
}

/// The triple `(J-, J0, J+)` on cutoff `D`.
pub fn generators(
    set: GeneratorSet,
    n: usize,
    c: &Rational,
    cutoff: usize,
) -> (PolyOperator, PolyOperator, PolyOperator) {
    let d = PolyOperator::diff(cutoff);
    let m = PolyOperator::mul_y_plus_c(c, cutoff);
    let j_minus = d.clone();
    match set {
        GeneratorSet::Printed => {
            let j_zero = m.compose(&d).sub(&PolyOperator::scalar(&rat(n as i64), cutoff));
            let j_plus = m
                .compose(&m)
                .compose(&d)
                .sub(&m.scale(&rat(2 * n as i64)));
            (j_minus, j_zero, j_plus)
        }
        GeneratorSet::SpinStandard => {
            let j_zero = m
                .compose(&d)
                .sub(&PolyOperator::scalar(&ratio(n as i64, 2), cutoff));
            let j_plus = m.compose(&m).compose(&d).sub(&m.scale(&rat(n as i64)));
            (j_minus, j_zero, j_plus)
        }
    }
}

/// Verify the three printed commutation relations
/// `[J-, J0] = J-`, `[J-, J+] = 2 J0`, `[J0, J+] = J+`
/// as exact matrix identities on monomials of degree `<= cutoff - 2`.
pub fn sl2_commutator_check(n: usize, c: &Rational, cutoff: usize) -> Result<bool> {
    if cutoff < n + 3 {
        return Err(Error::InvalidParameter(format!(
            "cutoff {cutoff} leaves no headroom: need at least N + 3 = {}",
            n + 3
        )));
    }
    let (jm, jz, jp) = generators(GeneratorSet::Printed, n, c, cutoff);
    let max_input = cutoff - 2;
    let ok = jm.commutator(&jz).agrees_with(&jm, max_input)
        && jm.commutator(&jp).agrees_with(&jz.scale(&rat(2)), max_input)
        && jz.commutator(&jp).agrees_with(&jp, max_input);
    Ok(ok)
}

/// The operator encoded by the recurrences at `a = 0`:
/// `T = (y+c) d^2/dy^2 + 2 d/dy + 2 y (y+c) d/dy - 2 N y - 2 c (N+1)`.
///
/// Its matrix in the monomial basis, restricted to degrees `<= N`, is
/// exactly `Q(0)`; consequently `T phi = f phi` for every Sturmian pair
/// `(f, h)` with `phi(y) = sum h_n y^n`.
pub fn recurrence_operator(n: usize, c: &Rational, cutoff: usize) -> PolyOperator {
    let d = PolyOperator::diff(cutoff);
    let m = PolyOperator::mul_y_plus_c(c, cutoff);
    let y = PolyOperator::mul_y(cutoff);
    m.compose(&d).compose(&d)
        .add(&d.scale(&rat(2)))
        .add(&y.compose(&m).compose(&d).scale(&rat(2)))
        .sub(&y.scale(&rat(2 * n as i64)))
        .sub(&PolyOperator::scalar(&(rat(2 * (n as i64 + 1)) * c), cutoff))
}

/// The quadratic generator combination printed next to the relations:
/// `J0 J- + 2 J+ - 2c J0 + (N+2) J- - 2(N+c)`, over the printed generators.
/// Kept for comparison; it reproduces the recurrence operator only at
/// `N = 0` (the difference is `-2N(y+1)`).
pub fn paper_hamiltonian(n: usize, c: &Rational, cutoff: usize) -> PolyOperator {
    let (jm, jz, jp) = generators(GeneratorSet::Printed, n, c, cutoff);
    jz.compose(&jm)
        .add(&jp.scale(&rat(2)))
        .sub(&jz.scale(&(rat(2) * c)))
        .add(&jm.scale(&rat(n as i64 + 2)))
        .sub(&PolyOperator::scalar(&(rat(2) * (rat(n as i64) + c)), cutoff))
}

/// Coefficients of `alpha J0 J- + beta J+ + gamma J0 + delta J- + eps`.
#[derive(Clone, PartialEq, Debug)]
pub struct LieCoefficients {
    pub j0_jm: Rational,
    pub jp: Rational,
    pub j0: Rational,
    pub jm: Rational,
    pub constant: Rational,
}

/// Solve exactly for the scalars expressing the recurrence operator as a
/// quadratic combination over the chosen generator set. Fails with the
/// residual when the operator lies outside the span (which is the case for
/// the printed set at `N >= 1`).
pub fn lie_decompose(n: usize, c: &Rational, set: GeneratorSet) -> Result<LieCoefficients> {
    let cutoff = n + 4;
    let (jm, jz, jp) = generators(set, n, c, cutoff);
    let target = recurrence_operator(n, c, cutoff);
    let basis = [
        jz.compose(&jm),
        jp.clone(),
        jz.clone(),
        jm.clone(),
        PolyOperator::identity(cutoff),
    ];
    let max_input = cutoff - 2;

    // stack the entries with input degree <= max_input into an
    // overdetermined exact linear system
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for j in 0..=max_input {
        for i in 0..=cutoff {
            let row: Vec<Rational> = basis.iter().map(|b| b.matrix()[(i, j)].clone()).collect();
            if row.iter().all(Zero::is_zero) && target.matrix()[(i, j)].is_zero() {
                continue;
            }
            rows.push(row);
            rhs.push(target.matrix()[(i, j)].clone());
        }
    }
    // pick five independent rows by elimination, solve, then verify all
    let solution = solve_overdetermined(&rows, &rhs);
    let coeffs = match solution {
        Some(c5) => c5,
        None => {
            return Err(Error::NotInSpan { residual_entries: target.nonzero_entries() });
        }
    };
    // residual over the reliable block
    let mut combo = PolyOperator::zero(cutoff);
    for (b, q) in basis.iter().zip(&coeffs) {
        combo = combo.add(&b.scale(q));
    }
    if !combo.agrees_with(&target, max_input) {
        let residual = target.sub(&combo);
        return Err(Error::NotInSpan { residual_entries: residual.nonzero_entries() });
    }
    Ok(LieCoefficients {
        j0_jm: coeffs[0].clone(),
        jp: coeffs[1].clone(),
        j0: coeffs[2].clone(),
        jm: coeffs[3].clone(),
        constant: coeffs[4].clone(),
    })
}

/// Least-squares-free exact solve of a tall system with five unknowns:
/// eliminate to find pivot rows, back-substitute, and leave verification of
/// the remaining equations to the caller.
fn solve_overdetermined(rows: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let unknowns = 5usize;
    let mut work: Vec<(Vec<Rational>, Rational)> =
        rows.iter().cloned().zip(rhs.iter().cloned()).collect();
    let mut pivots: Vec<(usize, Vec<Rational>, Rational)> = Vec::new();
    for col in 0..unknowns {
        // reduce all rows by current pivots, then pick one with a nonzero
        // entry in `col`
        let mut found = None;
        for (row, b) in work.iter() {
            let mut r = row.clone();
            let mut v = b.clone();
            for (pc, pr, pb) in &pivots {
                if r[*pc].is_zero() {
                    continue;
                }
                let factor = r[*pc].clone() / pr[*pc].clone();
                for k in 0..unknowns {
                    r[k] = r[k].clone() - factor.clone() * pr[k].clone();
                }
                v = v - factor * pb.clone();
            }
            if !r[col].is_zero() {
                found = Some((r, v));
                break;
            }
        }
        let (r, v) = found?;
        pivots.push((col, r, v));
        work.retain(|(row, _)| !row.iter().all(Zero::is_zero));
    }
    // back-substitute the triangular pivot set
    let mut x = vec![Rational::zero(); unknowns];
    for (col, r, v) in pivots.iter().rev() {
        let mut acc = v.clone();
        for k in col + 1..unknowns {
            acc = acc - r[k].clone() * x[k].clone();
        }
        x[*col] = acc / r[*col].clone();
    }
    Some(x)
}

/// Convenience: the recurrence operator's leading block equals `Q(0)`.
pub fn recurrence_operator_matches_q(n: usize, c: &Rational) -> bool {
    let cutoff = n + 4;
    let t = recurrence_operator(n, c, cutoff);
    let params = ModelParams::new(n, rat(0), c.clone());
    let q = build_q::<Rational>(&params, &Rational::zero()).to_dense();
    t.leading_block(n) == q
}
