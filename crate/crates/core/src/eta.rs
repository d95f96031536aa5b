//! Eta quotients `prod_{delta | N} eta(delta tau)^{r_delta}` on X0(N):
//! Ligozat's modularity test, orders at cusps, divisors, and the explicit
//! generator families for levels `p^n` and `pq`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{divisors, factorize, gcd, is_prime, pow};
use crate::curve::{cusps, CuspDivisor};
use crate::error::{Error, Result};
use crate::linalg::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaQuotient {
    level: u64,
    /// Nonzero exponents only.
    exponents: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    /// The empty product (the constant function 1).
    pub fn one(level: u64) -> Self {
        assert!(level >= 1);
        EtaQuotient { level, exponents: BTreeMap::new() }
    }

    pub fn from_exponents(level: u64, terms: &[(u64, i64)]) -> Result<Self> {
        let mut h = Self::one(level);
        for &(delta, r) in terms {
            if delta == 0 || !level.is_multiple_of(delta) {
                return Err(Error::InvalidInput(format!("eta({delta}) is not defined on X0({level})")));
            }
            h.set(delta, h.exponent(delta) + r);
        }
        Ok(h)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponent(&self, delta: u64) -> i64 {
        self.exponents.get(&delta).copied().unwrap_or(0)
    }

    fn set(&mut self, delta: u64, r: i64) {
        if r == 0 {
            self.exponents.remove(&delta);
        } else {
            self.exponents.insert(delta, r);
        }
    }

    /// Nonzero `(delta, r_delta)` pairs, ascending in `delta`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&d, &r)| (d, r))
    }

    /// Exponent vector indexed by all divisors of N, ascending.
    pub fn exponent_vector(&self) -> Vec<i64> {
        divisors(self.level).into_iter().map(|d| self.exponent(d)).collect()
    }

    pub fn mul(&self, other: &EtaQuotient) -> EtaQuotient {
        assert_eq!(self.level, other.level, "eta quotients of different levels");
        let mut out = self.clone();
        for (d, r) in other.terms() {
            out.set(d, out.exponent(d) + r);
        }
        out
    }

    pub fn pow(&self, k: i64) -> EtaQuotient {
        let mut out = Self::one(self.level);
        for (d, r) in self.terms() {
            out.set(d, r * k);
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `sum r_delta`; twice the weight.
    pub fn exponent_sum(&self) -> i64 {
        self.exponents.values().sum()
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.terms().map(|(d, r)| format!("eta({d})^{r}")).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Parses `eta(d)^r * eta(d')^r' ...` at level `level`. Exponents may be
/// omitted (meaning 1) or parenthesized; `1` is the empty product.
pub fn parse_eta_quotient(text: &str, level: u64) -> Result<EtaQuotient> {
    let raw = RawEta::from_str(text)?;
    EtaQuotient::from_exponents(level, &raw.0)
}

struct RawEta(Vec<(u64, i64)>);

impl FromStr for RawEta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "1" {
            return Ok(RawEta(Vec::new()));
        }
        if compact.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let bad = |t: &str| Error::Parse(format!("malformed factor `{t}`; expected eta(d)^r"));
        let mut terms = Vec::new();
        for tok in compact.split('*') {
            let rest = tok.strip_prefix("eta(").ok_or_else(|| bad(tok))?;
            let (delta, rest) = rest.split_once(')').ok_or_else(|| bad(tok))?;
            let delta: u64 = delta.parse().map_err(|_| bad(tok))?;
            let r: i64 = if rest.is_empty() {
                1
            } else {
                let e = rest.strip_prefix('^').ok_or_else(|| bad(tok))?;
                let e = e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e);
                e.parse().map_err(|_| bad(tok))?
            };
            terms.push((delta, r));
        }
        Ok(RawEta(terms))
    }
}

/// Outcome of the four Ligozat conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LigozatReport {
    /// `sum r_delta = 0`
    pub exponent_sum_zero: bool,
    /// `prod delta^{r_delta}` is a rational square
    pub product_is_square: bool,
    /// `sum r_delta delta = 0 mod 24`
    pub order_at_infinity_integral: bool,
    /// `sum r_delta N/delta = 0 mod 24`
    pub order_at_zero_integral: bool,
}

impl LigozatReport {
    pub fn is_modular_function(&self) -> bool {
        self.exponent_sum_zero
            && self.product_is_square
            && self.order_at_infinity_integral
            && self.order_at_zero_integral
    }
}

impl fmt::Display for LigozatReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAILS" };
        write!(
            f,
            "sum r = 0: {}; prod delta^r square: {}; sum r*delta = 0 mod 24: {}; sum r*N/delta = 0 mod 24: {}",
            mark(self.exponent_sum_zero),
            mark(self.product_is_square),
            mark(self.order_at_infinity_integral),
            mark(self.order_at_zero_integral),
        )
    }
}

pub fn check_modular_function(h: &EtaQuotient) -> LigozatReport {
    let n = h.level();
    let mut prime_exponents: BTreeMap<u64, i64> = BTreeMap::new();
    let mut at_inf = BigInt::zero();
    let mut at_zero = BigInt::zero();
    for (delta, r) in h.terms() {
        for (q, e) in factorize(delta) {
            *prime_exponents.entry(q).or_default() += r * e as i64;
        }
        at_inf += BigInt::from(r) * delta;
        at_zero += BigInt::from(r) * (n / delta);
    }
    let m24 = BigInt::from(24);
    LigozatReport {
        exponent_sum_zero: h.exponent_sum() == 0,
        product_is_square: prime_exponents.values().all(|e| e % 2 == 0),
        order_at_infinity_integral: (at_inf % &m24).is_zero(),
        order_at_zero_integral: (at_zero % &m24).is_zero(),
    }
}

/// `24 *` (order of `eta(delta tau)` at a cusp of level `d` on X0(N)),
/// `N / gcd(d, N/d) * gcd(d, delta)^2 / (d delta)`.
pub fn ligozat_order_numerator(n: u64, d: u64, delta: u64) -> Rational {
    let g = gcd(d, delta);
    Rational::new(
        BigInt::from(n / gcd(d, n / d)) * BigInt::from(g) * BigInt::from(g),
        BigInt::from(d) * BigInt::from(delta),
    )
}

/// Order of `h` at the cusps of level `d`, in the local parameter there.
pub fn order_at_cusp(h: &EtaQuotient, d: u64) -> Result<Rational> {
    let n = h.level();
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::InvalidInput(format!("{d} is not a cusp level of X0({n})")));
    }
    let total: Rational = h
        .terms()
        .map(|(delta, r)| ligozat_order_numerator(n, d, delta) * Rational::from_integer(r.into()))
        .sum();
    Ok(total / Rational::from_integer(24.into()))
}

/// Divisor of a Ligozat-valid eta quotient.
pub fn divisor(h: &EtaQuotient) -> Result<CuspDivisor> {
    let report = check_modular_function(h);
    if !report.is_modular_function() {
        return Err(Error::NotModular(report));
    }
    let mut e = CuspDivisor::zero(h.level());
    for c in cusps(h.level()) {
        let ord = order_at_cusp(h, c.level)?;
        if !ord.is_integer() {
            return Err(Error::Internal(format!(
                "order {ord} of {h} at level {} is not integral",
                c.level
            )));
        }
        e.set(c.level, ord);
    }
    if !e.degree().is_zero() {
        return Err(Error::Internal(format!("divisor of {h} has nonzero degree")));
    }
    Ok(e)
}

/// `24 / gcd(p - 1, 12)`, the exponent in `f = (eta(p tau)/eta(tau))^c`.
pub fn f_exponent(p: u64) -> u64 {
    24 / gcd(p - 1, 12)
}

pub(crate) fn require_prime_at_least_5(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if p < 5 {
        return Err(Error::Scope(format!("p = {p}: the prime-power constructions require p >= 5")));
    }
    Ok(())
}

/// `f = (eta(p tau)/eta(tau))^{24/(p-1,12)}` followed by
/// `g_k = eta(p^{k+2} tau)/eta(p^k tau)`, `k = 0..n-2`, on X0(p^n).
/// Their divisors form a basis of the principal cuspidal divisors.
pub fn prime_power_generators(p: u64, n: u32) -> Result<Vec<EtaQuotient>> {
    require_prime_at_least_5(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let level = pow(p, n);
    let c = f_exponent(p) as i64;
    let mut out = vec![EtaQuotient::from_exponents(level, &[(1, -c), (p, c)])?];
    for k in 0..n.saturating_sub(1) {
        out.push(EtaQuotient::from_exponents(level, &[(pow(p, k), -1), (pow(p, k + 2), 1)])?);
    }
    Ok(out)
}

/// Checks `p`, `q` distinct primes, both `1 mod 12`.
pub fn require_pq(p: u64, q: u64) -> Result<()> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err(Error::InvalidInput(format!("{p}, {q} must be distinct primes")));
    }
    if p % 12 != 1 || q % 12 != 1 {
        return Err(Error::Scope(format!("level {p}*{q}: both primes must be 1 mod 12")));
    }
    Ok(())
}

/// The units `f1, f2, f3` on X0(pq):
/// `eta(1)eta(q)/(eta(p)eta(pq))`, `eta(1)eta(p)/(eta(q)eta(pq))`,
/// `eta(1)eta(pq)/(eta(p)eta(q))`.
pub fn pq_generators(p: u64, q: u64) -> Result<Vec<EtaQuotient>> {
    require_pq(p, q)?;
    let n = p * q;
    Ok(vec![
        EtaQuotient::from_exponents(n, &[(1, 1), (q, 1), (p, -1), (n, -1)])?,
        EtaQuotient::from_exponents(n, &[(1, 1), (p, 1), (q, -1), (n, -1)])?,
        EtaQuotient::from_exponents(n, &[(1, 1), (n, 1), (p, -1), (q, -1)])?,
    ])
}

/// Gcd of the cusp multiplicities of `div h`.
pub fn gcd_of_divisor_coefficients(h: &EtaQuotient) -> Result<Integer> {
    divisor(h)?
        .content()
        .ok_or_else(|| Error::Internal("non-integral divisor".into()))
}
