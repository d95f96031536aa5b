//! Floating-point evaluation of eta quotients from the product expansion.
//!
//! Points are first moved into the standard fundamental domain using only
//! `eta(tau + 1) = e^{pi i/12} eta(tau)` and `eta(-1/tau) = sqrt(tau/i) eta(tau)`,
//! so this path never touches the general multiplier. The real part of
//! `tau` and the exponent `2 pi i tau/24` are tracked as exact rationals;
//! near a cusp they are huge and cancel against the `q^{-ord}` normalization.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::SigmaMatrix;
use crate::error::{Error, Result};
use crate::eta::EtaQuotient;
use crate::linalg::Rational;

use std::f64::consts::PI;

pub const NUMERIC_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericParams {
    /// Evaluate at `tau = i * height` in the local variable.
    pub height: f64,
    /// Number of factors kept in `prod (1 - q^k)`.
    pub terms: usize,
}

impl Default for NumericParams {
    fn default() -> Self {
        NumericParams { height: 8.0, terms: 200 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericLeadingCoeff {
    pub value: Complex64,
    /// Size of the first omitted term of the local expansion, relative to
    /// `value`, plus the product truncation error.
    pub error_estimate: f64,
}

/// `log eta(tau) = 2 pi i * exact + float`.
struct LogEta {
    exact_re: Rational,
    exact_im: Rational,
    float: Complex64,
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn log_product(x: f64, y: f64, terms: usize) -> Complex64 {
    let q = Complex64::from_polar((-2.0 * PI * y).exp(), 2.0 * PI * x);
    let mut qk = Complex64::one();
    let mut s = Complex64::zero();
    for _ in 0..terms {
        qk *= q;
        s += (Complex64::one() - qk).ln();
    }
    s
}

fn log_eta_exact(mut x: Rational, mut y: Rational, terms: usize) -> LogEta {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut exact_re = Rational::zero();
    let mut float = Complex64::zero();
    loop {
        let shift = (&x + &half).floor();
        x -= &shift;
        // eta(tau + n) = e(n/24) eta(tau)
        exact_re += &shift / Rational::from_integer(BigInt::from(24));
        let r2 = &x * &x + &y * &y;
        if r2 >= Rational::one() {
            break;
        }
        // eta(tau) = eta(-1/tau) / sqrt(tau/i)
        float -= 0.5 * Complex64::new(to_f64(&y), -to_f64(&x)).ln();
        x = -&x / &r2;
        y = &y / &r2;
    }
    let c24 = Rational::from_integer(BigInt::from(24));
    exact_re += &x / &c24;
    let exact_im = &y / &c24;
    float += log_product(to_f64(&x), to_f64(&y), terms);
    LogEta { exact_re, exact_im, float }
}

/// `eta(tau)` for `tau` in the upper half-plane, by reduction to the
/// fundamental domain and the truncated product.
pub fn eta_numeric(tau: Complex64, terms: usize) -> Complex64 {
    assert!(tau.im > 0.0, "tau must lie in the upper half-plane");
    let mut t = tau;
    let mut log = Complex64::zero();
    loop {
        let n = (t.re + 0.5).floor();
        t.re -= n;
        log += Complex64::new(0.0, 2.0 * PI * n / 24.0);
        if t.norm_sqr() >= 1.0 {
            break;
        }
        log -= 0.5 * (t / Complex64::i()).ln();
        t = -t.inv();
    }
    log += Complex64::new(0.0, 2.0 * PI) * t / 24.0;
    log += log_product(t.re, t.im, terms);
    log.exp()
}

/// Approximates `h(sigma(iY)) * e^{2 pi Y ord}`, which tends to the leading
/// coefficient of `h` in `e^{2 pi i sigma^{-1} tau}` as `Y` grows.
pub fn numeric_leading_coefficient(
    h: &EtaQuotient,
    sigma: &SigmaMatrix,
    ord: &Rational,
    params: NumericParams,
) -> Result<NumericLeadingCoeff> {
    if !(params.height >= 4.0) || params.terms < 50 {
        return Err(Error::InvalidInput("numeric evaluation needs height >= 4 and at least 50 terms".into()));
    }
    let y = Rational::from_f64(params.height).ok_or_else(|| Error::InvalidInput("bad height".into()))?;
    let y2 = &y * &y;
    let mut re = Rational::zero();
    let mut im = -ord * &y;
    let mut float = Complex64::zero();
    let mut worst_q: f64 = 0.0;
    for (delta, r) in h.terms() {
        let delta = BigInt::from(delta);
        let (x11, x12) = (Rational::from_integer(&delta * &sigma.a), Rational::from_integer(&delta * &sigma.b));
        let (x21, x22) = (Rational::from_integer(sigma.c.clone()), Rational::from_integer(sigma.d.clone()));
        // (x11 iY + x12)/(x21 iY + x22)
        let den = &x22 * &x22 + &x21 * &x21 * &y2;
        let tx = (&x12 * &x22 + &x11 * &x21 * &y2) / &den;
        let ty = (&x11 * &x22 - &x12 * &x21) * &y / &den;
        let l = log_eta_exact(tx, ty, params.terms);
        let rr = Rational::from_integer(BigInt::from(r));
        re += &l.exact_re * &rr;
        im += &l.exact_im * &rr;
        float += l.float * r as f64;
        worst_q = worst_q.max((-2.0 * PI * 24.0 * to_f64(&l.exact_im)).exp());
    }
    let frac = &re - re.floor();
    let angle = 2.0 * PI * to_f64(&frac);
    let log_modulus = -2.0 * PI * to_f64(&im);
    let value = Complex64::from_polar(log_modulus.exp(), angle) * float.exp();
    let next_term = (-2.0 * PI * params.height).exp();
    let truncation = worst_q.powi(params.terms as i32 + 1);
    Ok(NumericLeadingCoeff { value, error_estimate: value.norm() * (next_term + truncation) })
}
