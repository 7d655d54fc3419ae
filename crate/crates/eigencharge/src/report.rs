//! Machine-readable reports and their canonical serialization.
//!
//! JSON is the canonical format: floats are written with 17 significant
//! digits (lossless for doubles), exact rationals as `{num, den}` strings,
//! and field order is fixed by the struct declarations, so parsing a report
//! and re-serializing it reproduces the bytes.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::{Bivar, Polynomial};
use crate::scalar::Rational;

/// Compact JSON formatter that pins `f64` output to 17 significant digits.
struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Canonical JSON bytes for any report.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
    value.serialize(&mut ser).expect("report serialization");
    String::from_utf8(out).expect("json is utf-8")
}

/// Exact rational as numerator/denominator strings.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalJson {
    fn from(q: &Rational) -> Self {
        Self { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
pub struct ChargeJson {
    pub re: f64,
    pub im: f64,
    pub real: bool,
}

/// `spectrum` subcommand payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SpectrumReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub a: f64,
    pub c: f64,
    pub d: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub charges: Vec<ChargeJson>,
    pub tol: f64,
}

/// `critical-d` subcommand payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CriticalDReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub d_critical: f64,
    pub tol: f64,
    pub probes: usize,
}

/// One term `[[exponents...], num, den]` of a serialized polynomial.
pub type TermJson = (Vec<u32>, String, String);

/// `{variable(s), terms}` form shared by the univariate and bivariate
/// polynomials; terms are ordered by descending exponent tuple.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub variables: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn from_univariate(p: &Polynomial<Rational>, var: &str) -> Self {
        let mut terms: Vec<TermJson> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| (vec![k as u32], c.numer().to_string(), c.denom().to_string()))
            .collect();
        terms.reverse();
        Self { variables: vec![var.to_string()], terms }
    }

    pub fn from_bivariate(p: &Bivar, v0: &str, v1: &str) -> Self {
        let mut keys: Vec<(u32, u32)> = p.terms().map(|(k, _)| *k).collect();
        keys.sort_by(|a, b| b.cmp(a));
        let terms = keys
            .into_iter()
            .map(|(i, j)| {
                let c = p.coeff(i, j);
                (vec![i, j], c.numer().to_string(), c.denom().to_string())
            })
            .collect();
        Self { variables: vec![v0.to_string(), v1.to_string()], terms }
    }
}

/// `secular` subcommand payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SecularReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub polynomial: PolynomialJson,
    pub pretty: String,
}

/// `sturmian` subcommand payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SturmianReport {
    pub f: ComplexJson,
    #[serde(rename = "E")]
    pub energy: f64,
    pub h: Vec<ComplexJson>,
    pub g: Vec<ComplexJson>,
    pub residual_norm: f64,
}

/// `perturb` subcommand payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PerturbReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub level: i64,
    pub alpha: usize,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(rename = "Y_corrections")]
    pub y_corrections: Vec<RationalJson>,
    pub h_corrections: Vec<Vec<RationalJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partial_sums: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius_estimate: Option<f64>,
}

/// `table1` subcommand payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Table1RowJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub polynomial: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Table1ReportJson {
    pub rows: Vec<Table1RowJson>,
    pub pass: bool,
}

/// `verify shift` payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerifyShiftReport {
    pub mode: String,
    pub inputs: ShiftInputs,
    pub pass: bool,
    pub metrics: ShiftMetrics,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ShiftInputs {
    #[serde(rename = "N")]
    pub n: usize,
    pub a: f64,
    pub c: f64,
    pub delta: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ShiftMetrics {
    pub max_deviation: f64,
    pub energy_shift_consistent: bool,
}

/// `verify sl2` payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerifySl2Report {
    pub mode: String,
    pub inputs: Sl2Inputs,
    pub pass: bool,
    pub metrics: Sl2Metrics,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Sl2Inputs {
    #[serde(rename = "N")]
    pub n: usize,
    pub c: RationalJson,
    pub cutoff: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Sl2Metrics {
    pub commutators_exact: bool,
    pub recurrence_matches_q: bool,
    pub spin_decomposition: Vec<RationalJson>,
}

/// `verify ode` payload.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerifyOdeReport {
    pub mode: String,
    pub inputs: OdeInputs,
    pub pass: bool,
    pub metrics: OdeMetrics,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct OdeInputs {
    #[serde(rename = "N")]
    pub n: usize,
    pub a: f64,
    pub c: f64,
    pub f: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub x_max: f64,
    pub steps: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct OdeMetrics {
    pub defect: ComplexJson,
    pub defect_magnitude: f64,
    pub richardson_error: f64,
}
