//! Isoperimetric constants in exact form.
//!
//! Every constant is `coeff · κ + constant` with rational coefficients and
//! `κ = 1/(√3·π)`. Comparisons go through certified rational enclosures of `κ`
//! (Machin's formula for `π` and an integer square root for `√3`, both in
//! fixed-point big integers with explicit error bounds).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::MetricError;

/// Digits used for the first enclosure of `κ`; comparisons refine on demand.
pub const DEFAULT_DIGITS: u32 = 45;
const MAX_DIGITS: u32 = 1200;

fn pow10(d: u32) -> BigInt {
    BigInt::from(10u32).pow(d)
}

/// `scale · atan(1/x)` truncated, with the number of truncation steps.
fn atan_inv(x: u32, scale: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = scale / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    let mut steps = 1u64;
    loop {
        let term = &power / BigInt::from(2 * k + 1);
        steps += 1;
        if term.is_zero() {
            break;
        }
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        power /= &x2;
        steps += 1;
        k += 1;
    }
    (sum, steps)
}

/// Rational enclosure `lo ≤ π ≤ hi` with about `digits` correct digits.
pub fn pi_bounds(digits: u32) -> (BigRational, BigRational) {
    let scale = pow10(digits + 10);
    let (a5, s5) = atan_inv(5, &scale);
    let (a239, s239) = atan_inv(239, &scale);
    let p = BigInt::from(16) * a5 - BigInt::from(4) * a239;
    // each truncated step and the alternating tail cost at most one unit
    let err = BigInt::from(16 * (s5 + 1) + 4 * (s239 + 1));
    (
        BigRational::new(&p - &err, scale.clone()),
        BigRational::new(&p + &err, scale),
    )
}

/// Rational enclosure `lo ≤ √3 ≤ hi`.
pub fn sqrt3_bounds(digits: u32) -> (BigRational, BigRational) {
    let scale = pow10(digits + 10);
    let r = (BigInt::from(3) * &scale * &scale).sqrt();
    (
        BigRational::new(r.clone(), scale.clone()),
        BigRational::new(r + 1, scale),
    )
}

/// Rational enclosure of `κ = 1/(√3·π)`.
pub fn kappa_bounds(digits: u32) -> (BigRational, BigRational) {
    let (plo, phi) = pi_bounds(digits);
    let (slo, shi) = sqrt3_bounds(digits);
    ((shi * phi).recip(), (slo * plo).recip())
}

/// `coeff / (√3·π) + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactForm {
    pub coeff: BigRational,
    pub constant: BigRational,
}

impl ExactForm {
    pub fn new(coeff: BigRational, constant: BigRational) -> Self {
        ExactForm { coeff, constant }
    }

    pub fn rational(c: BigRational) -> Self {
        ExactForm {
            coeff: BigRational::zero(),
            constant: c,
        }
    }

    pub fn enclosure(&self, digits: u32) -> (BigRational, BigRational) {
        let (klo, khi) = kappa_bounds(digits);
        let (a, b) = (&self.coeff * &klo, &self.coeff * &khi);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        (lo + &self.constant, hi + &self.constant)
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(30);
        ((lo + hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    fn sub(&self, other: &ExactForm) -> ExactForm {
        ExactForm {
            coeff: &self.coeff - &other.coeff,
            constant: &self.constant - &other.constant,
        }
    }

    /// Certified sign; `κ` is irrational, so zero only for the zero form.
    pub fn signum(&self) -> Ordering {
        if self.coeff.is_zero() {
            return self.constant.cmp(&BigRational::zero());
        }
        let mut digits = DEFAULT_DIGITS;
        loop {
            let (lo, hi) = self.enclosure(digits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            assert!(digits < MAX_DIGITS, "sign undecided at {digits} digits");
            digits *= 2;
        }
    }

    /// Certified comparison of `self` against another exact form.
    pub fn cmp_form(&self, other: &ExactForm) -> Ordering {
        self.sub(other).signum()
    }

    /// Certified comparison of `self` against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.sub(&ExactForm::rational(r.clone())).signum()
    }

    pub fn cmp_integer(&self, v: u64) -> Ordering {
        self.cmp_rational(&BigRational::from_integer(v.into()))
    }
}

impl fmt::Display for ExactForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff.is_zero(), self.constant.is_zero()) {
            (true, _) => write!(f, "{}", self.constant),
            (false, true) => write!(f, "{}/(√3·π)", self.coeff),
            (false, false) => write!(f, "{}/(√3·π) + {}", self.coeff, self.constant),
        }
    }
}

/// Serialised exact form with a decimal rendering and a certified enclosure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactFormJson {
    /// Coefficient of `1/(√3·π)`.
    pub coeff: String,
    pub constant: String,
    pub approx: String,
    pub lower: String,
    pub upper: String,
}

impl ExactForm {
    pub fn to_json(&self) -> ExactFormJson {
        let (lo, hi) = self.enclosure(DEFAULT_DIGITS);
        ExactFormJson {
            coeff: self.coeff.to_string(),
            constant: self.constant.to_string(),
            approx: format_sig(self.to_f64(), 10),
            lower: decimal_floor(&lo, 12),
            upper: decimal_ceil(&hi, 12),
        }
    }

    pub fn from_json(doc: &ExactFormJson) -> Result<Self, MetricError> {
        Ok(ExactForm {
            coeff: parse_rational(&doc.coeff)?,
            constant: parse_rational(&doc.constant)?,
        })
    }
}

/// Formats with `sig` significant digits.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

fn decimal_round(r: &BigRational, places: u32, up: bool) -> String {
    let scale = pow10(places);
    let scaled = r * BigRational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    let places = places as usize;
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

pub fn decimal_floor(r: &BigRational, places: u32) -> String {
    decimal_round(r, places, false)
}

pub fn decimal_ceil(r: &BigRational, places: u32) -> String {
    decimal_round(r, places, true)
}

/// Parses `"p/q"`, integers and finite decimals (`"0.3333"`) exactly.
pub fn parse_rational(text: &str) -> Result<BigRational, MetricError> {
    let t = text.trim();
    let bad = || MetricError::InvalidParams(format!("cannot parse {text:?} as a rational"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigUint = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let den = pow10(frac.len() as u32 + 1);
    let v = BigRational::new(BigInt::from(digits), den);
    Ok(if neg { -v } else { v })
}

/// `A = 4N²c₂²/(√3·π·c₃)`, `B = 2(N−2)`, `threshold = max(AB+N, 2A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoperimetricConstants {
    pub n: u64,
    pub c2: BigRational,
    pub c3: BigRational,
    pub a: ExactForm,
    pub b: u64,
    pub threshold: ExactForm,
    /// `"AB+N"` or `"2A"`, whichever realises the maximum.
    pub branch: &'static str,
}

pub fn isoperimetric_constants(
    n: u64,
    c2: &BigRational,
    c3: &BigRational,
) -> Result<IsoperimetricConstants, MetricError> {
    if n < 3 {
        return Err(MetricError::InvalidParams(format!("N = {n} < 3")));
    }
    if !c2.is_positive() || !c3.is_positive() {
        return Err(MetricError::InvalidParams(
            "c2 and c3 must be positive".into(),
        ));
    }
    let nn = BigRational::from_integer(n.into());
    let a_coeff = BigRational::from_integer(4.into()) * &nn * &nn * c2 * c2 / c3;
    let a = ExactForm::new(a_coeff.clone(), BigRational::zero());
    let b = 2 * (n - 2);
    let ab_n = ExactForm::new(&a_coeff * BigRational::from_integer(b.into()), nn);
    let two_a = ExactForm::new(
        &a_coeff * BigRational::from_integer(2.into()),
        BigRational::zero(),
    );
    let (threshold, branch) = if ab_n.cmp_form(&two_a) != Ordering::Less {
        (ab_n, "AB+N")
    } else {
        (two_a, "2A")
    };
    Ok(IsoperimetricConstants {
        n,
        c2: c2.clone(),
        c3: c3.clone(),
        a,
        b,
        threshold,
        branch,
    })
}

impl IsoperimetricConstants {
    /// `c₂ = 3`, `c₃ = 1/3`, the extremes of the central projection of `L_(q)`.
    pub fn standard(n: u64) -> Result<Self, MetricError> {
        isoperimetric_constants(
            n,
            &BigRational::from_integer(3.into()),
            &BigRational::new(1.into(), 3.into()),
        )
    }

    /// Whether `vertex_count > threshold`, decided exactly.
    pub fn exceeded_by(&self, vertex_count: u64) -> bool {
        self.threshold.cmp_integer(vertex_count) == Ordering::Less
    }

    /// Smallest `q ≥ 1` with `2q² + 2 > threshold`.
    pub fn minimal_q(&self) -> u64 {
        let approx = ((self.threshold.to_f64() - 2.0).max(0.0) / 2.0)
            .sqrt()
            .floor() as u64;
        let mut q = approx.saturating_sub(2).max(1);
        while !self.exceeded_by(2 * q * q + 2) {
            q += 1;
        }
        while q > 1 && self.exceeded_by(2 * (q - 1) * (q - 1) + 2) {
            q -= 1;
        }
        q
    }

    pub fn to_json(&self) -> ConstantsJson {
        ConstantsJson {
            n: self.n,
            c2: self.c2.to_string(),
            c3: self.c3.to_string(),
            a: self.a.to_json(),
            b: self.b,
            threshold: self.threshold.to_json(),
            branch: self.branch.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsJson {
    #[serde(rename = "N")]
    pub n: u64,
    pub c2: String,
    pub c3: String,
    #[serde(rename = "A")]
    pub a: ExactFormJson,
    #[serde(rename = "B")]
    pub b: u64,
    pub threshold: ExactFormJson,
    pub branch: String,
}
