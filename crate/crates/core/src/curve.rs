//! Cusps of X0(N) and cuspidal divisors.
//!
//! The cusps of a given level `d | N` form one closed point `Q_d` with
//! residue field `Q(zeta_m)`, `m = gcd(d, N/d)`; it is recorded once, with
//! its degree `phi(m)`, rather than as individual Galois-conjugate points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, euler_phi, gcd, is_prime, pow};
use crate::error::{Error, Result};
use crate::linalg::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    /// Level `N` of the curve.
    pub curve_level: u64,
    /// Level `d | N` of the cusp.
    pub level: u64,
    /// `gcd(d, N/d)`; the residue field is `Q(zeta_m)`.
    pub residue_conductor: u64,
    /// `phi(residue_conductor)`, the number of geometric cusps of this level.
    pub degree: u64,
    /// `N / gcd(d^2, N)`.
    pub width: u64,
}

impl Cusp {
    pub fn new(curve_level: u64, level: u64) -> Self {
        assert!(level > 0 && curve_level.is_multiple_of(level), "{level} does not divide {curve_level}");
        let m = gcd(level, curve_level / level);
        Cusp {
            curve_level,
            level,
            residue_conductor: m,
            degree: euler_phi(m),
            width: curve_level / gcd(level * level, curve_level),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }
}

/// One record per positive divisor of `n`, ascending by level.
pub fn cusps(n: u64) -> Vec<Cusp> {
    assert!(n >= 1);
    divisors(n).into_iter().map(|d| Cusp::new(n, d)).collect()
}

/// Degree of the closed point `Q_d` on X0(n).
pub fn cusp_degree(n: u64, d: u64) -> u64 {
    euler_phi(gcd(d, n / d))
}

/// A divisor supported on the cusps of X0(N), with rational coefficients
/// indexed by cusp level.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CuspDivisor {
    level: u64,
    coeffs: BTreeMap<u64, Rational>,
}

impl CuspDivisor {
    pub fn zero(level: u64) -> Self {
        CuspDivisor { level, coeffs: BTreeMap::new() }
    }

    /// The divisor `Q_d` (one copy of the closed point of level `d`).
    pub fn point(level: u64, d: u64) -> Self {
        let mut e = Self::zero(level);
        e.set(d, Rational::one());
        e
    }

    pub fn from_integers(level: u64, terms: &[(u64, i64)]) -> Self {
        let mut e = Self::zero(level);
        for &(d, c) in terms {
            let prev = e.coeff(d);
            e.set(d, prev + Rational::from_integer(c.into()));
        }
        e
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeff(&self, d: u64) -> Rational {
        self.coeffs.get(&d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, d: u64, c: Rational) {
        assert!(d > 0 && self.level.is_multiple_of(d), "{d} is not a cusp level of X0({})", self.level);
        if c.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, c);
        }
    }

    /// Nonzero terms, ascending by level.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Rational {
        self.terms()
            .map(|(d, c)| c * Rational::from_integer(cusp_degree(self.level, d).into()))
            .sum()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Rational::is_integer)
    }

    /// Integral and of degree zero, i.e. an element of D(N).
    pub fn is_in_degree_zero_group(&self) -> bool {
        self.is_integral() && self.degree().is_zero()
    }

    pub fn integer_coeff(&self, d: u64) -> Option<Integer> {
        let c = self.coeff(d);
        c.is_integer().then(|| c.to_integer())
    }

    /// Gcd of the (integral) coefficients; zero for the zero divisor.
    pub fn content(&self) -> Option<Integer> {
        let mut g = Integer::zero();
        for c in self.coeffs.values() {
            if !c.is_integer() {
                return None;
            }
            g = num_integer::Integer::gcd(&g, &c.to_integer());
        }
        Some(g)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(self.level);
        for (d, c) in self.terms() {
            out.set(d, c * k);
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    pub fn add(&self, other: &CuspDivisor) -> Self {
        assert_eq!(self.level, other.level, "divisors on different curves");
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.set(d, out.coeff(d) + c);
        }
        out
    }

    pub fn sub(&self, other: &CuspDivisor) -> Self {
        self.add(&other.scale_int(-1))
    }

    /// Coordinates of an element of D(N) in the basis
    /// `Q_d - phi(gcd(d, N/d)) Q_N`, `d` running over `levels`, which must
    /// list every proper divisor of N (in any order).
    pub fn coordinates(&self, levels: &[u64]) -> Result<Vec<Integer>> {
        if !self.is_in_degree_zero_group() {
            return Err(Error::InvalidInput(format!("{self} is not an integral degree-zero divisor")));
        }
        let mut sorted: Vec<u64> = levels.to_vec();
        sorted.push(self.level);
        sorted.sort_unstable();
        if sorted != divisors(self.level) {
            return Err(Error::InvalidInput("coordinate levels must be the proper divisors of N".into()));
        }
        Ok(levels.iter().map(|&d| self.coeff(d).to_integer()).collect())
    }

    /// Inverse of [`CuspDivisor::coordinates`].
    pub fn from_coordinates(level: u64, levels: &[u64], coords: &[Integer]) -> Self {
        assert_eq!(levels.len(), coords.len());
        let mut e = Self::zero(level);
        let mut top = Integer::zero();
        for (&d, x) in levels.iter().zip(coords) {
            e.set(d, Rational::from_integer(x.clone()));
            top -= x * BigInt::from(cusp_degree(level, d));
        }
        e.set(level, Rational::from_integer(top));
        e
    }
}

/// Proper divisors of `n`, ascending: the default coordinate order on D(n).
pub fn standard_levels(n: u64) -> Vec<u64> {
    divisors(n).into_iter().filter(|&d| d != n).collect()
}

impl fmt::Display for CuspDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "Q({d})")?;
            } else {
                write!(f, "{a}*Q({d})")?;
            }
        }
        Ok(())
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{p} is not prime")))
    }
}

/// `phi(gcd(p^i, p^{n-i}))`, the degree of the cusp `P_i` on X0(p^n).
pub fn prime_power_cusp_degree(p: u64, n: u32, i: u32) -> u64 {
    euler_phi(pow(p, i.min(n - i)))
}

/// The basis `D_i = P_i - phi((p^i, p^{n-i})) P_n`, `i = 0..n-1`, of D(p^n),
/// where `P_i` is the cusp of level `p^i`.
pub fn divisor_basis(p: u64, n: u32) -> Result<Vec<CuspDivisor>> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let level = pow(p, n);
    Ok((0..n)
        .map(|i| {
            let phi = prime_power_cusp_degree(p, n, i) as i64;
            CuspDivisor::from_integers(level, &[(pow(p, i), 1), (level, -phi)])
        })
        .collect())
}

/// The embedding `D(p^n) -> Z^{n+1}` sending `D_i` to
/// `phi_i (e_{i+1} - e_0)`, `phi_i = phi((p^i, p^{n-i}))`.
pub fn lambda_embedding(e: &CuspDivisor, p: u64, n: u32) -> Result<Vec<Integer>> {
    require_prime(p)?;
    if e.level() != pow(p, n) {
        return Err(Error::InvalidInput(format!("divisor lives on X0({}), not X0({p}^{n})", e.level())));
    }
    let levels: Vec<u64> = (0..n).map(|i| pow(p, i)).collect();
    let x = e.coordinates(&levels)?;
    let mut out = vec![Integer::zero(); n as usize + 1];
    for (i, xi) in x.iter().enumerate() {
        let phi = BigInt::from(prime_power_cusp_degree(p, n, i as u32));
        let v = xi * &phi;
        out[0] -= &v;
        out[i + 1] += v;
    }
    Ok(out)
}
