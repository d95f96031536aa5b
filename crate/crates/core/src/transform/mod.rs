//! Exact leading Fourier coefficients of eta quotients at cusps.
//!
//! Each factor `eta(delta sigma tau)` is rewritten as `eta(gamma T tau)` with
//! `gamma` in SL2(Z) and `T` upper triangular, then expanded with the Weber
//! multiplier. The `sqrt((c tau + d)/i)` factors are common to all factors and
//! cancel in weight zero, so every coefficient is a root of unity times a
//! product of prime square roots.

mod numeric;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{factorize, gcd, pow, prime_power};
use crate::error::{Error, Result};
use crate::eta::{f_exponent, pq_generators, prime_power_generators, require_pq, require_prime_at_least_5, EtaQuotient};
use crate::linalg::{Integer, QmodZ, Rational};

pub use numeric::{eta_numeric, numeric_leading_coefficient, NumericLeadingCoeff, NumericParams, NUMERIC_TOLERANCE};

/// `e^{2 pi i x}` for `x` in Q/Z.
pub type UnitPhase = QmodZ;

/// Jacobi symbol `(a/b)` for odd positive `b`.
pub fn jacobi_symbol(a: &Integer, b: &Integer) -> Result<i32> {
    if !b.is_positive() || b.is_even() {
        return Err(Error::InvalidInput(format!("Jacobi symbol needs an odd positive modulus, got {b}")));
    }
    let mut a = a.mod_floor(b);
    let mut b = b.clone();
    let mut s = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = b.mod_floor(&eight);
            if r == three || r == five {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut b);
        if a.mod_floor(&four) == three && b.mod_floor(&four) == three {
            s = -s;
        }
        a = a.mod_floor(&b);
    }
    Ok(if b.is_one() { s } else { 0 })
}

fn symbol_phase(s: i32) -> QmodZ {
    if s == -1 {
        QmodZ::from_ratio(1, 2)
    } else {
        QmodZ::zero()
    }
}

/// `epsilon(a,b,c,d)` in `eta(gamma tau) = epsilon sqrt((c tau + d)/i) eta(tau)`,
/// principal branch. For `c = 0` returns the phase of `eta(tau + b) = e^{pi i b/12} eta(tau)`
/// (with `a = d = 1`). Matrices with `c < 0` are replaced by `-gamma`, which
/// acts identically on the upper half-plane.
pub fn eta_multiplier(a: &Integer, b: &Integer, c: &Integer, d: &Integer) -> Result<UnitPhase> {
    if a * d - b * c != BigInt::one() {
        return Err(Error::InvalidInput("matrix is not in SL2(Z)".into()));
    }
    if c.is_negative() || (c.is_zero() && d.is_negative()) {
        return eta_multiplier(&-a, &-b, &-c, &-d);
    }
    let r24 = |x: Integer| QmodZ::new(Rational::new(x, BigInt::from(24)));
    if c.is_zero() {
        return Ok(r24(b.clone()));
    }
    if c.is_odd() {
        let s = jacobi_symbol(d, c)?;
        let i_pow = QmodZ::new(Rational::new(BigInt::one() - c, BigInt::from(8)));
        let e = b * d * (BigInt::one() - c * c) + c * (a + d);
        return Ok(symbol_phase(s) + i_pow + r24(e));
    }
    assert!(d.is_odd(), "c and d both even in SL2(Z)");
    if d.is_negative() {
        // eps(gamma T^t) = eps(gamma) e(t/24), with d + c t > 0
        let t = (-d).div_floor(c) + 1;
        let shifted = eta_multiplier(a, &(b + a * &t), c, &(d + c * &t))?;
        return Ok(shifted - r24(t));
    }
    let s = jacobi_symbol(c, d)?;
    let e = a * c * (BigInt::one() - d * d) + d * (b - c + 3);
    Ok(symbol_phase(s) + r24(e))
}

/// A matrix in `GL2+(Q) cap M2(Z)` carrying infinity to a chosen cusp
/// representative; the local uniformizer there is `e^{2 pi i sigma^{-1} tau}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaMatrix {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub d: Integer,
}

impl SigmaMatrix {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>, c: impl Into<Integer>, d: impl Into<Integer>) -> Result<Self> {
        let s = SigmaMatrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        if !s.det().is_positive() {
            return Err(Error::InvalidInput(format!("{s} has non-positive determinant")));
        }
        Ok(s)
    }

    pub fn det(&self) -> Integer {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `sigma(infinity) = a/c`, or `None` for infinity itself.
    pub fn image_of_infinity(&self) -> Option<Rational> {
        (!self.c.is_zero()).then(|| Rational::new(self.a.clone(), self.c.clone()))
    }

    /// Least `h > 0` with `sigma [[1,h],[0,1]] sigma^{-1}` in Gamma0(level).
    pub fn width(&self, level: u64) -> Integer {
        let det = self.det();
        let need = |x: Integer, m: &Integer| m / m.gcd(&x);
        let n_det = &det * BigInt::from(level);
        let h1 = need(&self.a * &self.c, &det);
        let h2 = need(&self.a * &self.a, &det);
        let h3 = need(&self.c * &self.c, &n_det);
        h1.lcm(&h2).lcm(&h3)
    }

    fn normalized(&self) -> SigmaMatrix {
        if self.c.is_negative() || (self.c.is_zero() && self.d.is_negative()) {
            SigmaMatrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for SigmaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// The uniformizing matrix at the cusp of level `p^m` on X0(p^n):
/// `[[1,0],[p^m,1]]` when `2m >= n`, else `[[-p^{n-m},-1],[p^n,0]]`.
pub fn sigma_matrix(p: u64, n: u32, m: u32) -> Result<SigmaMatrix> {
    if m > n {
        return Err(Error::InvalidInput(format!("cusp index {m} out of range 0..={n}")));
    }
    if 2 * m >= n {
        SigmaMatrix::new(1, 0, pow(p, m), 1)
    } else {
        SigmaMatrix::new(-BigInt::from(pow(p, n - m)), -1, pow(p, n), 0)
    }
}

/// The uniformizing matrix `[[m', -b],[pq, d m']]` at the cusp of level `m`
/// on X0(pq), `m m' = pq`, with `d m' + b m = 1` so that the determinant is
/// `m'` (an Atkin-Lehner matrix). `d` is taken in `[0, m)`.
pub fn pq_sigma(p: u64, q: u64, m: u64) -> Result<SigmaMatrix> {
    let n = p * q;
    if ![1, p, q, n].contains(&m) {
        return Err(Error::InvalidInput(format!("{m} is not a cusp level of X0({n})")));
    }
    let mm = n / m;
    let e = BigInt::from(mm).extended_gcd(&BigInt::from(m));
    debug_assert!(e.gcd.is_one());
    let d = e.x.mod_floor(&BigInt::from(m));
    let b = (BigInt::one() - &d * mm) / m;
    SigmaMatrix::new(mm, -b, n, d * mm)
}

/// An exact value `e^{2 pi i phase} * prod_l l^{v_l/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeadingCoeff {
    pub phase: UnitPhase,
    /// Prime to half-exponent; zero entries are never stored.
    pub half_exponents: BTreeMap<u64, i64>,
}

impl LeadingCoeff {
    pub fn one() -> Self {
        LeadingCoeff { phase: QmodZ::zero(), half_exponents: BTreeMap::new() }
    }

    pub fn root_of_unity(phase: UnitPhase) -> Self {
        LeadingCoeff { phase, half_exponents: BTreeMap::new() }
    }

    /// `e(phase) * p^{v/2}`.
    pub fn new(phase: UnitPhase, p: u64, v: i64) -> Self {
        let mut c = Self::root_of_unity(phase);
        c.add_half_exponent(p, v);
        c
    }

    fn add_half_exponent(&mut self, p: u64, v: i64) {
        let e = self.half_exponents.entry(p).or_insert(0);
        *e += v;
        if *e == 0 {
            self.half_exponents.remove(&p);
        }
    }

    pub fn half_exponent(&self, p: u64) -> i64 {
        self.half_exponents.get(&p).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &LeadingCoeff) -> LeadingCoeff {
        let mut out = self.clone();
        out.phase += other.phase.clone();
        for (&p, &v) in &other.half_exponents {
            out.add_half_exponent(p, v);
        }
        out
    }

    pub fn inv(&self) -> LeadingCoeff {
        self.pow(-1)
    }

    pub fn pow(&self, k: i64) -> LeadingCoeff {
        LeadingCoeff {
            phase: &self.phase * k,
            half_exponents: if k == 0 {
                BTreeMap::new()
            } else {
                self.half_exponents.iter().map(|(&p, &v)| (p, v * k)).collect()
            },
        }
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.half_exponents.is_empty()
    }

    /// Equality after discarding roots of unity.
    pub fn same_magnitude(&self, other: &LeadingCoeff) -> bool {
        self.half_exponents == other.half_exponents
    }

    pub fn to_complex(&self) -> Complex64 {
        let modulus: f64 = self
            .half_exponents
            .iter()
            .map(|(&p, &v)| (p as f64).powf(v as f64 / 2.0))
            .product();
        Complex64::from_polar(modulus, 2.0 * std::f64::consts::PI * self.phase.to_f64())
    }
}

impl fmt::Display for LeadingCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.phase.is_zero() {
            parts.push(format!("e({})", self.phase));
        }
        for (&p, &v) in &self.half_exponents {
            if v % 2 == 0 {
                parts.push(format!("{p}^({})", v / 2));
            } else {
                parts.push(format!("{p}^({v}/2)"));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// The generators `f`, `g_k` of the principal cuspidal divisors on X0(p^n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    F,
    G(u32),
}

impl Generator {
    pub fn all(n: u32) -> Vec<Generator> {
        std::iter::once(Generator::F).chain((0..n.saturating_sub(1)).map(Generator::G)).collect()
    }

    pub fn eta_quotient(self, p: u64, n: u32) -> Result<EtaQuotient> {
        let gens = prime_power_generators(p, n)?;
        let idx = match self {
            Generator::F => 0,
            Generator::G(k) => k as usize + 1,
        };
        gens.get(idx)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("{self} does not exist for n = {n}")))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::F => write!(f, "f"),
            Generator::G(k) => write!(f, "g_{k}"),
        }
    }
}

/// Leading coefficient and order of `h(sigma tau)` in `q = e^{2 pi i tau}`.
pub fn leading_coefficient_at(h: &EtaQuotient, sigma: &SigmaMatrix) -> Result<(LeadingCoeff, Rational)> {
    let s = sigma.normalized();
    if !s.c.is_zero() && h.exponent_sum() != 0 {
        return Err(Error::InvalidInput(format!("{h} does not have weight zero")));
    }
    let det = s.det();
    let mut lc = LeadingCoeff::one();
    let mut ord = Rational::zero();
    for (delta, r) in h.terms() {
        let delta = BigInt::from(delta);
        let (x11, x12, x21, x22) = (&delta * &s.a, &delta * &s.b, s.c.clone(), s.d.clone());
        let (eps, big_a, big_b, big_d) = if x21.is_zero() {
            (QmodZ::zero(), x11, x12, x22)
        } else {
            let g = x11.gcd(&x21);
            let (a1, c1) = (&x11 / &g, &x21 / &g);
            let e = a1.extended_gcd(&c1);
            // a1 d1 - b1 c1 = 1, then shift so that d1 > 0
            let (mut b1, mut d1) = (-e.y, e.x);
            if !d1.is_positive() {
                let t = (-&d1).div_floor(&c1) + 1;
                b1 += &a1 * &t;
                d1 += &c1 * &t;
            }
            let eps = eta_multiplier(&a1, &b1, &c1, &d1)?;
            let big_b = &d1 * &x12 - &b1 * &x22;
            let big_d = &delta * &det / &g;
            let d_u64 = big_d.to_u64().ok_or_else(|| Error::Internal("denominator overflow".into()))?;
            for (l, e) in factorize(d_u64) {
                lc.add_half_exponent(l, -r * i64::from(e));
            }
            (eps, g, big_b, big_d)
        };
        let r_big = BigInt::from(r);
        let phase = eps + QmodZ::new(Rational::new(big_b, BigInt::from(24) * &big_d));
        lc.phase += &phase * &r_big;
        ord += Rational::new(r_big * big_a, BigInt::from(24) * big_d);
    }
    Ok((lc, ord))
}

fn prime_power_level(h: &EtaQuotient) -> Result<(u64, u32)> {
    let (p, n) = prime_power(h.level())
        .ok_or_else(|| Error::InvalidInput(format!("level {} is not a prime power", h.level())))?;
    require_prime_at_least_5(p)?;
    Ok((p, n))
}

/// Leading coefficient of `h` on X0(p^n) at the cusp of level `p^m`,
/// with respect to the uniformizer of [`sigma_matrix`].
pub fn leading_coefficient(h: &EtaQuotient, m: u32) -> Result<LeadingCoeff> {
    let (p, n) = prime_power_level(h)?;
    Ok(leading_coefficient_at(h, &sigma_matrix(p, n, m)?)?.0)
}

/// The closed-form table entry for a generator at the cusp `p^m`.
pub fn tabulated_leading_coefficient(p: u64, n: u32, m: u32, generator: Generator) -> Result<LeadingCoeff> {
    require_prime_at_least_5(p)?;
    if m > n {
        return Err(Error::InvalidInput(format!("cusp index {m} out of range 0..={n}")));
    }
    if let Generator::G(k) = generator {
        if k + 2 > n {
            return Err(Error::InvalidInput(format!("{generator} does not exist for n = {n}")));
        }
    }
    let pi = p as i64;
    let ab = (pi * pi - 1) / 24;
    let e = |num: i64, den: i64| QmodZ::from_ratio(num, den);
    let p_pow = |k: u32| pow(p, k) as i64;
    let sqrt_p_star_phase = e(pi - 1, 8);
    let one = LeadingCoeff::one();
    let value = if 2 * m >= n {
        match generator {
            Generator::F => one,
            Generator::G(k) if k + 2 <= m => one,
            Generator::G(k) if k + 1 == m => {
                LeadingCoeff::new(e(pi - 1, 4) + e(-ab, pi) - sqrt_p_star_phase, p, -1)
            }
            Generator::G(k) => LeadingCoeff::new(e(-ab, p_pow(k + 2 - m)), p, -2),
        }
    } else {
        match generator {
            Generator::F if m == 0 => LeadingCoeff::new(QmodZ::zero(), p, -(f_exponent(p) as i64)),
            Generator::F => LeadingCoeff::root_of_unity(e(((p - 1) / gcd(p - 1, 12)) as i64, p_pow(m))),
            Generator::G(k) if k >= m => LeadingCoeff::new(QmodZ::zero(), p, -2),
            Generator::G(k) if k + 1 == m => LeadingCoeff::new(e(ab, pi) - sqrt_p_star_phase, p, -1),
            Generator::G(k) => LeadingCoeff::root_of_unity(e(ab, p_pow(m - k))),
        }
    };
    Ok(value)
}

/// Leading coefficient of a generator at the cusp `p^m`, computed from the
/// transformation law (not from the table).
pub fn generator_leading_coefficient(p: u64, n: u32, m: u32, generator: Generator) -> Result<LeadingCoeff> {
    leading_coefficient(&generator.eta_quotient(p, n)?, m)
}

/// `sqrt(p*) = e^{2 pi i (p-1)/8} sqrt(p)`.
pub fn sqrt_p_star(p: u64) -> LeadingCoeff {
    LeadingCoeff::new(QmodZ::from_ratio(p as i64 - 1, 8), p, 1)
}

/// Cusp levels of X0(pq) in the order `P0, P1, P2, P3 = 1, p, q, pq`.
pub fn pq_cusp_levels(p: u64, q: u64) -> [u64; 4] {
    [1, p, q, p * q]
}

/// Leading coefficients of `f1, f2, f3` (rows) at `P0..P3` (columns).
pub fn pq_leading_coefficients(p: u64, q: u64) -> Result<Vec<Vec<LeadingCoeff>>> {
    require_pq(p, q)?;
    let sigmas: Vec<SigmaMatrix> =
        pq_cusp_levels(p, q).iter().map(|&m| pq_sigma(p, q, m)).collect::<Result<_>>()?;
    pq_generators(p, q)?
        .iter()
        .map(|h| sigmas.iter().map(|s| Ok(leading_coefficient_at(h, s)?.0)).collect())
        .collect()
}

/// Magnitudes of the `f1, f2, f3` leading coefficients up to roots of
/// unity: rows `(p,1,p,1)`, `(q,q,1,1)`, `(1,1,1,1)`.
pub fn pq_expected_magnitudes(p: u64, q: u64) -> Vec<Vec<LeadingCoeff>> {
    let one = LeadingCoeff::one;
    let pp = || LeadingCoeff::new(QmodZ::zero(), p, 2);
    let qq = || LeadingCoeff::new(QmodZ::zero(), q, 2);
    vec![vec![pp(), one(), pp(), one()], vec![qq(), qq(), one(), one()], vec![one(), one(), one(), one()]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_symbol(&big(1), &big(1)).unwrap(), 1);
        assert_eq!(jacobi_symbol(&big(3), &big(7)).unwrap(), -1);
        assert_eq!(jacobi_symbol(&big(2), &big(15)).unwrap(), 1);
        assert_eq!(jacobi_symbol(&big(5), &big(15)).unwrap(), 0);
        assert_eq!(jacobi_symbol(&big(-1), &big(7)).unwrap(), -1);
        assert!(jacobi_symbol(&big(3), &big(8)).is_err());
        assert!(jacobi_symbol(&big(3), &big(-7)).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in [3i64, 5, 7, 11, 13, 97] {
            for a in 0..p {
                let e = BigInt::from(a).modpow(&big((p - 1) / 2), &big(p));
                let expected = if a == 0 { 0 } else if e.is_one() { 1 } else { -1 };
                assert_eq!(jacobi_symbol(&big(a), &big(p)).unwrap(), expected, "({a}/{p})");
            }
        }
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(eta_multiplier(&big(1), &big(1), &big(0), &big(1)).unwrap(), QmodZ::from_ratio(1, 24));
        assert!(eta_multiplier(&big(0), &big(-1), &big(1), &big(0)).unwrap().is_zero());
        assert!(eta_multiplier(&big(1), &big(1), &big(1), &big(1)).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_matrix(5, 2, 1).unwrap(), SigmaMatrix::new(1, 0, 5, 1).unwrap());
        assert_eq!(sigma_matrix(5, 2, 0).unwrap(), SigmaMatrix::new(-25, -1, 25, 0).unwrap());
        assert!(sigma_matrix(5, 2, 3).is_err());
        for p in [5, 13] {
            for n in 1..=5 {
                for m in 0..=n {
                    let s = sigma_matrix(p, n, m).unwrap();
                    let alpha = Rational::new(big(if 2 * m >= n { 1 } else { -1 }), BigInt::from(pow(p, m)));
                    assert_eq!(s.image_of_infinity(), Some(alpha));
                    assert!(s.width(pow(p, n)).is_one(), "p={p} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn pq_sigmas() {
        let (p, q) = (13, 37);
        assert_eq!(pq_sigma(p, q, p * q).unwrap(), SigmaMatrix::new(1, 0, p * q, 1).unwrap());
        assert_eq!(pq_sigma(p, q, 1).unwrap(), SigmaMatrix::new(p * q, -1, p * q, 0).unwrap());
        for m in pq_cusp_levels(p, q) {
            let s = pq_sigma(p, q, m).unwrap();
            assert_eq!(s.det(), BigInt::from(p * q / m));
            assert_eq!(s.image_of_infinity(), Some(Rational::new(big(1), BigInt::from(m))));
            assert!(s.width(p * q).is_one());
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(LeadingCoeff::one().to_string(), "1");
        assert_eq!(LeadingCoeff::new(QmodZ::from_ratio(3, 8), 5, -1).to_string(), "e(3/8)*5^(-1/2)");
        assert_eq!(LeadingCoeff::new(QmodZ::zero(), 5, -6).to_string(), "5^(-3)");
        assert_eq!(sqrt_p_star(5).to_string(), "e(1/2)*5^(1/2)");
    }

    #[test]
    fn table_spot_values() {
        // f at m = 0 for p = 5 is 5^{-3}
        assert_eq!(tabulated_leading_coefficient(5, 2, 0, Generator::F).unwrap().to_string(), "5^(-3)");
        assert_eq!(generator_leading_coefficient(5, 2, 0, Generator::F).unwrap().to_string(), "5^(-3)");
        // g_0 at m = 1 (n = 2): e(-1/5) / sqrt(5*) with sqrt(5*) = -sqrt(5)
        let expected = LeadingCoeff::new(QmodZ::from_ratio(-1, 5), 5, 0).mul(&sqrt_p_star(5).inv());
        assert_eq!(tabulated_leading_coefficient(5, 2, 1, Generator::G(0)).unwrap(), expected);
    }

    #[test]
    fn computed_matches_table() {
        for p in [5, 7, 11, 13, 17] {
            for n in 1..=4 {
                for m in 0..=n {
                    for g in Generator::all(n) {
                        assert_eq!(
                            generator_leading_coefficient(p, n, m, g).unwrap(),
                            tabulated_leading_coefficient(p, n, m, g).unwrap(),
                            "p={p} n={n} m={m} {g}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn orders_agree_with_cusp_orders() {
        for p in [5, 13] {
            for n in 1..=4 {
                let level = pow(p, n);
                for h in prime_power_generators(p, n).unwrap() {
                    for m in 0..=n {
                        let (_, ord) = leading_coefficient_at(&h, &sigma_matrix(p, n, m).unwrap()).unwrap();
                        assert_eq!(ord, crate::eta::order_at_cusp(&h, pow(p, m)).unwrap(), "{h} at {m} on {level}");
                    }
                }
            }
        }
    }

    #[test]
    fn pq_table_magnitudes() {
        for (p, q) in [(13, 37), (13, 61), (37, 61)] {
            let table = pq_leading_coefficients(p, q).unwrap();
            let expected = pq_expected_magnitudes(p, q);
            for (row, exp_row) in table.iter().zip(&expected) {
                for (x, y) in row.iter().zip(exp_row) {
                    assert!(x.same_magnitude(y), "({p},{q}): {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn multiplicative() {
        let gens = prime_power_generators(7, 3).unwrap();
        let h = gens[0].mul(&gens[1].pow(2)).mul(&gens[2].pow(-3));
        for m in 0..=3 {
            let lhs = leading_coefficient(&h, m).unwrap();
            let rhs = leading_coefficient(&gens[0], m)
                .unwrap()
                .mul(&leading_coefficient(&gens[1], m).unwrap().pow(2))
                .mul(&leading_coefficient(&gens[2], m).unwrap().pow(-3));
            assert_eq!(lhs, rhs);
        }
    }
}
