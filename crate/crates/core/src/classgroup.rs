//! The cuspidal divisor class group `C(N) = D(N)/P(N)`: computed from
//! lattices of eta-unit divisors, with the closed forms for `N = p^n` and
//! the order matrices behind the prime-power index computation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, factorize, gcd, pow, prime_power, valuation};
use crate::curve::{
    divisor_basis, lambda_embedding, prime_power_cusp_degree, standard_levels,
    CuspDivisor,
};
use crate::error::{Error, Result};
use crate::eta::{
    divisor, ligozat_order_numerator, pq_generators, prime_power_generators,
    require_pq, require_prime_at_least_5, EtaQuotient,
};
use crate::linalg::{
    bordered_lattice_index, congruence_lattice, hermite_basis, quotient_structure, AbelianGroup,
    IntMatrix, Integer, Rational,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupResult {
    pub level: u64,
    pub group: AbelianGroup,
    pub order: Integer,
    /// Divisors spanning the lattice that was quotiented out.
    pub generator_divisors: Vec<CuspDivisor>,
    /// True when the eta-unit lattice is known to be all of `P(N)`.
    pub certified: bool,
}

impl ClassGroupResult {
    fn new(level: u64, group: AbelianGroup, generator_divisors: Vec<CuspDivisor>, certified: bool) -> Self {
        ClassGroupResult { level, order: group.order(), group, generator_divisors, certified }
    }
}

/// `a = (p-1)/(p-1,12)`.
pub fn ling_a(p: u64) -> u64 {
    (p - 1) / gcd(p - 1, 12)
}

/// `b = (p+1)/(p+1,12)`.
pub fn ling_b(p: u64) -> u64 {
    (p + 1) / gcd(p + 1, 12)
}

/// Exponent `k_n` of `p` in `|C(p^n)|`.
pub fn ling_p_exponent(n: u32) -> u32 {
    if n.is_multiple_of(2) {
        (n - 2) * (3 * n - 2) / 4
    } else {
        (n - 1) * (3 * n - 5) / 4
    }
}

/// Closed form `(Z/a)^n x (Z/b)^{n-1} x (p-part)` for `C(p^n)`.
pub fn ling_structure(p: u64, n: u32) -> Result<AbelianGroup> {
    require_prime_at_least_5(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let a = BigInt::from(ling_a(p));
    let b = BigInt::from(ling_b(p));
    let mut orders: Vec<Integer> = Vec::new();
    orders.extend(std::iter::repeat_n(a, n as usize));
    orders.extend(std::iter::repeat_n(b, n as usize - 1));
    let lo = n.div_ceil(2);
    let pp = |i: u32| BigInt::from(p).pow(i);
    // n even: i = n/2..n-2 and n/2+1..n-1; n odd: (n+1)/2..n-2 and (n+1)/2..n-1
    let first_start = lo;
    let second_start = if n.is_multiple_of(2) { lo + 1 } else { lo };
    orders.extend((first_start..=n.saturating_sub(2)).map(pp));
    orders.extend((second_start..n).map(pp));
    Ok(AbelianGroup::from_cyclic_orders(orders))
}

fn lambda_rows(divs: &[CuspDivisor], p: u64, n: u32) -> Result<Vec<Vec<Integer>>> {
    divs.iter().map(|e| lambda_embedding(e, p, n)).collect()
}

/// `C(p^n)` as `lambda(D(p^n)) / lambda(span(div f, div g_k))`.
pub fn class_group(p: u64, n: u32) -> Result<ClassGroupResult> {
    let gens = prime_power_generators(p, n)?;
    let divs: Vec<CuspDivisor> = gens.iter().map(divisor).collect::<Result<_>>()?;
    let ambient = lambda_rows(&divisor_basis(p, n)?, p, n)?;
    let sub = lambda_rows(&divs, p, n)?;
    let group = quotient_structure(&ambient, &sub)?;
    Ok(ClassGroupResult::new(pow(p, n), group, divs, true))
}

/// `C(pq)` for primes `p, q = 1 mod 12`, from the divisors of `f1, f2, f3`.
pub fn class_group_pq(p: u64, q: u64) -> Result<ClassGroupResult> {
    require_pq(p, q)?;
    let divs: Vec<CuspDivisor> = pq_generators(p, q)?.iter().map(divisor).collect::<Result<_>>()?;
    let group = quotient_in_standard_coordinates(p * q, &divs)?;
    Ok(ClassGroupResult::new(p * q, group, divs, true))
}

fn quotient_in_standard_coordinates(n: u64, divs: &[CuspDivisor]) -> Result<AbelianGroup> {
    let levels = standard_levels(n);
    let ambient = IntMatrix::identity(levels.len()).to_rows();
    let sub: Vec<Vec<Integer>> = divs.iter().map(|e| e.coordinates(&levels)).collect::<Result<_>>()?;
    if ambient.is_empty() {
        return Ok(AbelianGroup::trivial());
    }
    quotient_structure(&ambient, &sub)
}

/// Whether the eta-unit lattice is known to equal `P(N)`.
pub fn is_certified_level(n: u64) -> bool {
    if let Some((p, _)) = prime_power(n) {
        return p >= 5;
    }
    match factorize(n).as_slice() {
        [(p, 1), (q, 1)] => p % 12 == 1 && q % 12 == 1,
        _ => false,
    }
}

/// `D(N)` modulo the divisors of all Ligozat-valid eta quotients. Exact
/// when [`is_certified_level`] holds; otherwise an upper bound for `C(N)`.
pub fn class_group_for_level(n: u64) -> Result<ClassGroupResult> {
    let divs = eta_unit_divisor_lattice(n)?;
    let group = quotient_in_standard_coordinates(n, &divs)?;
    Ok(ClassGroupResult::new(n, group, divs, is_certified_level(n)))
}

/// Exponent vectors (indexed by the divisors of `n`, ascending) of all
/// eta quotients satisfying Ligozat's four conditions, as a lattice basis.
pub fn ligozat_exponent_lattice(n: u64) -> Result<Vec<Vec<Integer>>> {
    if n == 0 {
        return Err(Error::InvalidInput("level must be positive".into()));
    }
    let ds = divisors(n);
    let k = ds.len();
    let col = |f: &dyn Fn(u64) -> u64| ds.iter().map(|&d| BigInt::from(f(d))).collect::<Vec<_>>();
    let mut constraints = vec![
        (vec![BigInt::one(); k], BigInt::zero()),
        (col(&|d| d), BigInt::from(24)),
        (col(&|d| n / d), BigInt::from(24)),
    ];
    for (l, _) in factorize(n) {
        constraints.push((col(&|d| u64::from(valuation(d, l))), BigInt::from(2)));
    }
    Ok(congruence_lattice(k, &constraints))
}

/// Basis (Hermite-reduced in the standard coordinates of `D(N)`) of the
/// lattice of divisors of Ligozat-valid eta quotients on X0(N).
pub fn eta_unit_divisor_lattice(n: u64) -> Result<Vec<CuspDivisor>> {
    let ds = divisors(n);
    let levels = standard_levels(n);
    let mut coords = Vec::new();
    for r in ligozat_exponent_lattice(n)? {
        let terms: Vec<(u64, i64)> = ds
            .iter()
            .zip(&r)
            .map(|(&d, x)| {
                i64::try_from(x).map(|x| (d, x)).map_err(|_| Error::Internal("exponent overflow".into()))
            })
            .collect::<Result<_>>()?;
        let h = EtaQuotient::from_exponents(n, &terms)?;
        coords.push(divisor(&h)?.coordinates(&levels)?);
    }
    Ok(hermite_basis(&coords, levels.len())
        .iter()
        .map(|c| CuspDivisor::from_coordinates(n, &levels, c))
        .collect())
}

/// The matrices `M`, `U`, `V` of dimension `n+1` for level `p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderMatrices {
    pub p: u64,
    pub n: u32,
    /// `24 M`, where `M_ij` is the order of `eta(p^i tau)` at cusps of level `p^j`.
    pub m24: IntMatrix,
    /// `diag(phi((p^i, p^{n-i})))`.
    pub u: IntMatrix,
    /// Exponent vectors of `f`, `g_0..g_{n-2}`, then a row of ones.
    pub v: IntMatrix,
}

pub fn order_matrices(p: u64, n: u32) -> Result<OrderMatrices> {
    require_prime_at_least_5(p)?;
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let dim = n as usize + 1;
    let level = pow(p, n);
    let mut m24 = IntMatrix::zeros(dim, dim);
    let mut u = IntMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let a = ligozat_order_numerator(level, pow(p, j as u32), pow(p, i as u32));
            debug_assert!(a.is_integer());
            m24[(i, j)] = a.to_integer();
        }
        u[(i, i)] = BigInt::from(prime_power_cusp_degree(p, n, i as u32));
    }
    let mut v = IntMatrix::zeros(dim, dim);
    for (k, h) in prime_power_generators(p, n)?.iter().enumerate() {
        for i in 0..dim {
            v[(k, i)] = BigInt::from(h.exponent(pow(p, i as u32)));
        }
    }
    for i in 0..dim {
        v[(dim - 1, i)] = BigInt::one();
    }
    Ok(OrderMatrices { p, n, m24, u, v })
}

impl OrderMatrices {
    /// `24 VMU`; its first `n` rows are `24` times the vectors
    /// `(s_j phi_j)_j` of the generator divisors.
    pub fn vmu24(&self) -> IntMatrix {
        &(&self.v * &self.m24) * &self.u
    }

    /// `det M` as an exact rational.
    pub fn det_m(&self) -> Rational {
        Rational::new(self.m24.determinant(), BigInt::from(24).pow(self.n + 1))
    }

    /// Sum of the last row of `VMU` (not `24 VMU`).
    pub fn last_row_sum(&self) -> Rational {
        let s: Integer = self.vmu24().row(self.n as usize).iter().sum();
        Rational::new(s, BigInt::from(24))
    }

    /// `(L0 : L2)` by the bordered-determinant formula, with the generator
    /// rows of `VMU` and its last row as border.
    pub fn bordered_index(&self) -> Result<Integer> {
        let w = self.vmu24();
        let n = self.n as usize;
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let r: Vec<Integer> = w.row(i).to_vec();
            if r.iter().any(|x| !(x % 24u32).is_zero()) {
                return Err(Error::Internal(format!("row {i} of VMU is not integral")));
            }
            rows.push(r.into_iter().map(|x| x / 24u32).collect());
        }
        bordered_lattice_index(&rows, w.row(n))
    }

    /// `24(n+1)/(p-1,12)`; the actual determinant carries the sign `(-1)^n`.
    pub fn expected_det_v(&self) -> Integer {
        BigInt::from(24 * (u64::from(self.n) + 1) / gcd(self.p - 1, 12))
    }

    /// `(ab)^n p^e / 24` with `e = (n-1)(3n-1)/4` (n odd) or `n(3n-4)/4` (n even).
    pub fn expected_det_m(&self) -> Rational {
        let n = self.n;
        let e = if n % 2 == 1 { (n - 1) * (3 * n - 1) / 4 } else { n * (3 * n - 4) / 4 };
        let ab = BigInt::from(ling_a(self.p) * ling_b(self.p));
        Rational::new(ab.pow(n) * BigInt::from(self.p).pow(e), BigInt::from(24))
    }

    pub fn expected_det_u(&self) -> Integer {
        (0..=self.n).map(|i| BigInt::from(prime_power_cusp_degree(self.p, self.n, i))).product()
    }

    /// `(n+1) p^{n-1} (p+1) / 24`.
    pub fn expected_last_row_sum(&self) -> Rational {
        let num = BigInt::from(u64::from(self.n) + 1) * BigInt::from(self.p).pow(self.n - 1) * (self.p + 1);
        Rational::new(num, BigInt::from(24))
    }

    /// Outcomes of the four determinant/sum identities and of
    /// `(L0:L2) = (L0:L1)(L1:L2)`, in that order.
    pub fn check_claims(&self) -> Result<[bool; 5]> {
        let order = class_group(self.p, self.n)?.order;
        Ok([
            self.v.determinant().abs() == self.expected_det_v(),
            self.det_m() == self.expected_det_m(),
            self.u.determinant() == self.expected_det_u(),
            self.last_row_sum() == self.expected_last_row_sum(),
            self.bordered_index()? == order * self.expected_det_u(),
        ])
    }
}
