//! Exact secular determinants: the univariate characteristic polynomial in
//! the charge `f` for numeric parameters, and the reduced bivariate form in
//! the shifted variable `X = f + (N+2)d` that depends on `d = a + c` alone.
//!
//! The determinant is expanded symbolically through the same three-term
//! band recurrence used for numeric minors, with polynomial entries; no
//! interpolation, no rounding.

use num_traits::{One, Zero};

use crate::model::{build_q, ModelParams, QuadridiagonalMatrix};
use crate::poly::{Bivar, Polynomial};
use crate::scalar::{rat, Rational};

/// `det[Q(0) - f I]` as an exact degree-`N+1` polynomial in `f`.
///
/// The leading coefficient is `(-1)^{N+1}`; the roots are the eigencharges.
pub fn char_poly_f(params: &ModelParams) -> Polynomial<Rational> {
    build_q(params, &Polynomial::var()).determinant()
}

/// The reduced secular polynomial in `(X, d)`.
///
/// Computed with symbolic `a = 0`, `c = d`, then shifted by
/// `f = X - (N+2) d`. The shift direction is fixed by exact reproduction of
/// the six tabulated rows; with it, the whole polynomial collapses onto the
/// two variables `(X, d)` even though the unshifted determinant mixes `f`
/// and `d` freely.
pub fn reduced_secular(n: usize) -> Bivar {
    // bands over (f, d): diag = -2(N+1-row) d - f, sub = -2(N+1-row),
    // sup1 = (row+1)(row+2), sup2 = (row+1)(row+2) d.
    let f = Bivar::var0();
    let d = Bivar::var1();
    let mut diag = Vec::new();
    let mut sub = Vec::new();
    let mut sup1 = Vec::new();
    let mut sup2 = Vec::new();
    for row in 0..=n {
        let np1mr = rat((n + 1 - row) as i64);
        let rp1 = rat(row as i64 + 1);
        let rp2 = rat(row as i64 + 2);
        diag.push(Bivar::constant(rat(-2) * &np1mr) * d.clone() - f.clone());
        if row >= 1 {
            sub.push(Bivar::constant(rat(-2) * np1mr));
        }
        if row + 1 <= n {
            sup1.push(Bivar::constant(&rp1 * &rp2));
        }
        if row + 2 <= n {
            sup2.push(Bivar::constant(rp1 * rp2) * d.clone());
        }
    }
    let det = QuadridiagonalMatrix::from_bands(diag, sub, sup1, sup2).determinant();
    // f -> X - (N+2) d
    det.substitute0_linear(&rat(-(n as i64 + 2)))
}

/// The six tabulated reduced secular polynomials, `N = 0..=5`, expanded from
/// their printed `(X, h, d)` form with `h = d^2 - N - 3`. `None` beyond the
/// tabulated range.
pub fn table1_reference(n: usize) -> Option<Bivar> {
    let x = Bivar::var0();
    let d = Bivar::var1();
    let h = d.clone() * d.clone() - Bivar::constant(rat(n as i64 + 3));
    let c = |v: i64| Bivar::constant(rat(v));
    let row = match n {
        0 => -x,
        1 => x.pow(2) - h,
        2 => -x.pow(3) + c(4) * h * x.clone() + c(8) * d,
        3 => {
            x.pow(4) - c(10) * h.clone() * x.pow(2) - c(48) * d * x.clone()
                + c(9) * h.pow(2)
                - c(36)
        }
        4 => {
            -x.pow(5) + c(20) * h.clone() * x.pow(3) + c(168) * d.clone() * x.pow(2)
                - c(32) * (c(2) * h.pow(2) - c(9)) * x.clone()
                - c(384) * h * d
        }
        5 => {
            x.pow(6) - c(35) * h.clone() * x.pow(4) - c(448) * d.clone() * x.pow(3)
                + (c(259) * h.pow(2) - c(1296)) * x.pow(2)
                + c(3520) * h.clone() * d * x.clone()
                - c(225) * h.pow(3)
                + c(10000) * h
                + c(51200)
        }
        _ => return None,
    };
    Some(row)
}

/// Outcome of comparing one computed row against the tabulated one.
#[derive(Clone, Debug)]
pub struct Table1Row {
    pub n: usize,
    pub matches: bool,
    pub computed: Bivar,
    pub expected: Bivar,
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub pass: bool,
}

/// Exact identity check of `reduced_secular` against all six tabulated rows.
pub fn table1_check() -> Table1Report {
    let rows: Vec<Table1Row> = (0..=5)
        .map(|n| {
            let computed = reduced_secular(n);
            let expected = table1_reference(n).expect("tabulated range");
            let matches = computed == expected;
            Table1Row { n, matches, computed, expected }
        })
        .collect();
    let pass = rows.iter().all(|r| r.matches);
    Table1Report { rows, pass }
}

/// Render a reduced secular polynomial in the tabulated layout: powers of
/// `X` descending, even powers of `d` folded into `h = d^2 - N - 3`, at most
/// a single bare `d` per term.
pub fn table1_style_string(p: &Bivar, n: usize) -> String {
    use num_traits::Signed;
    use std::collections::BTreeMap;

    // rewrite d^(2q + r) = (h + s)^q d^r with s = N + 3
    let s = rat(n as i64 + 3);
    let mut terms: BTreeMap<(u32, u32, u32), Rational> = BTreeMap::new(); // (x, h, d<=1)
    for (&(i, j), coeff) in p.terms() {
        let q = j / 2;
        let r = j % 2;
        // (h + s)^q expanded binomially
        let mut binom = Rational::one();
        let mut spow = Rational::one();
        for m in 0..=q {
            if m > 0 {
                binom = binom * rat((q - m + 1) as i64) / rat(m as i64);
                spow *= s.clone();
            }
            let key = (i, q - m, r);
            let add = coeff.clone() * &binom * &spow;
            let entry = terms.entry(key).or_insert_with(Rational::zero);
            *entry += add;
            if entry.is_zero() {
                terms.remove(&key);
            }
        }
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut keys: Vec<(u32, u32, u32)> = terms.keys().cloned().collect();
    keys.sort_by(|a, b| (b.0, b.1, b.2).cmp(&(a.0, a.1, a.2)));
    let mut out = String::new();
    for key in keys {
        let coeff = &terms[&key];
        let mag = coeff.abs();
        if out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if coeff.is_negative() { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || key == (0, 0, 0) {
            factors.push(format!("{mag}"));
        }
        for (name, e) in [("h", key.1), ("d", key.2), ("X", key.0)] {
            match e {
                0 => {}
                1 => factors.push(name.to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}
