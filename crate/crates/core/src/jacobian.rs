//! Torsion of the generalized Jacobian of X0(N) with cuspidal modulus.
//!
//! Leading coefficients of the eta units give the map `Delta` from
//! principal cuspidal divisors into the lattice `Lambda` spanned by prime
//! (square-root) values at the non-base cusps. Its rational extension to
//! all cuspidal divisors decides which cuspidal classes die under the
//! connecting map; the residue-field roots of unity supply the rest.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{divisors, euler_phi, gcd, is_prime, pow};
use crate::classgroup::class_group;
use crate::curve::CuspDivisor;
use crate::error::{Error, Result};
use crate::eta::{
    divisor, gcd_of_divisor_coefficients, pq_generators, prime_power_generators, require_pq,
    require_prime_at_least_5, EtaQuotient,
};
use crate::linalg::{
    congruence_lattice, quotient_structure, rational_inverse, smith_normal_form, AbelianGroup, IntMatrix,
    Integer, QmodZ, Rational,
};
use crate::transform::{
    jacobi_symbol, leading_coefficient, pq_cusp_levels, pq_leading_coefficients, sqrt_p_star, LeadingCoeff,
};

/// `a' = 12/(p-1,12)`.
pub fn a_prime(p: u64) -> u64 {
    12 / gcd(p - 1, 12)
}

/// How each non-base cusp's part of `Lambda` is coordinatized: a list of
/// `(prime l, unit)`, the coordinate being `v_l / unit` where `v_l` is the
/// half-exponent of `l` (unit 2 for the generator `l`, unit 1 for `sqrt(l*)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaBasis {
    pub cusps: Vec<Vec<(u64, i64)>>,
}

impl LambdaBasis {
    /// `p` at `P_0`, `sqrt(p*)` at `P_1..P_{n-1}`.
    pub fn prime_power(p: u64, n: u32) -> Self {
        let mut cusps = vec![vec![(p, 2)]];
        cusps.extend((1..n).map(|_| vec![(p, 1)]));
        LambdaBasis { cusps }
    }

    /// `p` and `q` at each of the three rational non-base cusps of X0(pq).
    pub fn pq(p: u64, q: u64) -> Self {
        LambdaBasis { cusps: vec![vec![(p, 2), (q, 2)]; 3] }
    }

    pub fn rank(&self) -> usize {
        self.cusps.iter().map(Vec::len).sum()
    }

    /// Coordinates of `(x_i)_i` (one value per non-base cusp) after
    /// discarding roots of unity; errors if some `x_i` is not in `Lambda`.
    pub fn coordinates(&self, values: &[LeadingCoeff]) -> Result<Vec<Integer>> {
        if values.len() != self.cusps.len() {
            return Err(Error::InvalidInput("one value per non-base cusp expected".into()));
        }
        let mut out = Vec::with_capacity(self.rank());
        for (x, gens) in values.iter().zip(&self.cusps) {
            if x.half_exponents.keys().any(|l| !gens.iter().any(|(g, _)| g == l)) {
                return Err(Error::Internal(format!("{x} involves primes outside the lattice")));
            }
            for &(l, unit) in gens {
                let v = x.half_exponent(l);
                if v % unit != 0 {
                    return Err(Error::Internal(format!("{x} is not in the lattice")));
                }
                out.push(BigInt::from(v / unit));
            }
        }
        Ok(out)
    }
}

/// `(LC_i / LC_base)_i` for leading coefficients listed base cusp last.
fn ratios_to_base(lcs: &[LeadingCoeff]) -> Vec<LeadingCoeff> {
    let (base, rest) = lcs.split_last().expect("at least one cusp");
    let inv = base.inv();
    rest.iter().map(|x| x.mul(&inv)).collect()
}

fn prime_power_leading_coefficients(h: &EtaQuotient, n: u32) -> Result<Vec<LeadingCoeff>> {
    (0..=n).map(|m| leading_coefficient(h, m)).collect()
}

/// The matrix of `Delta` on the basis `div f, div g_0, ..., div g_{n-2}`
/// (rows) into `p, sqrt(p*), ..., sqrt(p*)` (columns), read off from the
/// leading coefficients as `LC_i / LC_n`.
pub fn delta_matrix(p: u64, n: u32) -> Result<IntMatrix> {
    let basis = LambdaBasis::prime_power(p, n);
    let rows = prime_power_generators(p, n)?
        .iter()
        .map(|h| basis.coordinates(&ratios_to_base(&prime_power_leading_coefficients(h, n)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(rows, n as usize))
}

/// `-[[a',0,...],[1,1,0,...],[1,2,1,0,...],...,[1,2,...,2,1]]`.
pub fn delta_closed_form(p: u64, n: u32) -> IntMatrix {
    let n = n as usize;
    let mut m = IntMatrix::zeros(n, n);
    m[(0, 0)] = -BigInt::from(a_prime(p));
    for k in 1..n {
        m[(k, 0)] = BigInt::from(-1);
        for i in 1..k {
            m[(k, i)] = BigInt::from(-2);
        }
        m[(k, k)] = BigInt::from(-1);
    }
    m
}

fn cokernel(m: &IntMatrix) -> Result<AbelianGroup> {
    let snf = smith_normal_form(m);
    if snf.rank() < m.cols() {
        return Err(Error::RankMismatch { ambient: m.cols(), sub: snf.rank() });
    }
    Ok(AbelianGroup::from_cyclic_orders(snf.diagonal().into_iter().map(|d| d.abs())))
}

/// `Lambda / Delta(P(p^n))`.
pub fn delta_cokernel(p: u64, n: u32) -> Result<AbelianGroup> {
    cokernel(&delta_matrix(p, n)?)
}

fn prime_power_levels(p: u64, n: u32) -> Vec<u64> {
    (0..n).map(|i| pow(p, i)).collect()
}

/// Coordinates of the generator divisors in the basis `Q_d - phi Q_N`.
fn generator_coordinates(gens: &[EtaQuotient], levels: &[u64]) -> Result<Vec<Vec<Integer>>> {
    gens.iter().map(|h| divisor(h)?.coordinates(levels)).collect()
}

/// `S^{-1} Delta` over Q: the extension of `Delta` to all of `D(N)`.
fn extended_delta(s: &IntMatrix, delta: &IntMatrix) -> Result<Vec<Vec<Rational>>> {
    let s_inv = rational_inverse(s).ok_or_else(|| Error::Internal("generator divisors are dependent".into()))?;
    Ok(s_inv
        .iter()
        .map(|row| {
            (0..delta.cols())
                .map(|j| row.iter().enumerate().map(|(k, x)| x * Rational::from_integer(delta[(k, j)].clone())).sum())
                .collect()
        })
        .collect())
}

/// Sublattice `K` of `D(N)` (standard coordinates) where the extended map
/// takes integral values, i.e. the preimage of `Lambda`.
fn integral_preimage(w: &[Vec<Rational>]) -> Vec<Vec<Integer>> {
    let dim = w.len();
    let cols = w.first().map_or(0, Vec::len);
    let l = w.iter().flatten().fold(Integer::one(), |acc, x| acc.lcm(x.denom()));
    let constraints: Vec<(Vec<Integer>, Integer)> = (0..cols)
        .map(|j| ((0..dim).map(|i| (&w[i][j] * Rational::from_integer(l.clone())).to_integer()).collect(), l.clone()))
        .collect();
    congruence_lattice(dim, &constraints)
}

/// Everything the connecting-map computation produces for `N = p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeAnalysis {
    pub p: u64,
    pub n: u32,
    pub delta: IntMatrix,
    pub cokernel: AbelianGroup,
    /// Least `b | a'` with `b * lambda` in the image of `D(p^n)`.
    pub least_multiple: u64,
    /// Exponents `(e_f, c_0, ..., c_{n-2})` with `Delta(div(f^{e_f} prod g_k^{c_k})) = a' lambda`.
    pub relation: Vec<Integer>,
    /// Gcd of the cusp multiplicities of that unit's divisor.
    pub relation_gcd: Integer,
    /// Kernel of the restricted connecting map on `C(p^n)`.
    pub kernel: AbelianGroup,
    /// Image of `C(p^n)`; `|kernel| |image| = |C(p^n)|`.
    pub image: AbelianGroup,
    pub class_group_order: Integer,
}

/// Both computations of the kernel on `C(p^n)`: divisor testing of
/// `b lambda` for `b | a'`, and the preimage lattice of `Lambda`. They
/// must agree.
pub fn snake_analysis(p: u64, n: u32) -> Result<SnakeAnalysis> {
    let gens = prime_power_generators(p, n)?;
    let levels = prime_power_levels(p, n);
    let s = IntMatrix::from_rows(generator_coordinates(&gens, &levels)?, n as usize);
    let delta = delta_matrix(p, n)?;
    let coker = cokernel(&delta)?;
    let ap = a_prime(p);
    let nn = n as usize;

    // route 1: b lambda = x S^{-1} Delta with x integral  <=>  b e_0 Delta^{-1} S integral
    let d_inv = rational_inverse(&delta).ok_or_else(|| Error::Internal("Delta is singular".into()))?;
    let first_row_times_s = |b: u64| -> Vec<Rational> {
        (0..nn)
            .map(|j| {
                (0..nn)
                    .map(|k| &d_inv[0][k] * Rational::from_integer(s[(k, j)].clone()) * Rational::from_integer(b.into()))
                    .sum()
            })
            .collect()
    };
    let least_multiple = divisors(ap)
        .into_iter()
        .find(|&b| first_row_times_s(b).iter().all(Rational::is_integer))
        .ok_or_else(|| Error::Internal("a' lambda is not in the image".into()))?;
    let kernel_order_1 = BigInt::from(ap / least_multiple);

    // a' lambda = y Delta with y integral; the unit f^{y_0} prod g_k^{y_{k+1}}
    let relation: Vec<Integer> = (0..nn)
        .map(|k| {
            let y = &d_inv[0][k] * Rational::from_integer(ap.into());
            if y.is_integer() { Ok(y.to_integer()) } else { Err(Error::Internal("a' lambda not in Delta(P)".into())) }
        })
        .collect::<Result<_>>()?;
    let mut unit = EtaQuotient::one(pow(p, n));
    for (h, y) in gens.iter().zip(&relation) {
        let y = y.to_i64().ok_or_else(|| Error::Internal("relation exponent overflow".into()))?;
        unit = unit.mul(&h.pow(y));
    }
    let relation_gcd = gcd_of_divisor_coefficients(&unit)?;

    // route 2: K = {x : x S^{-1} Delta integral}, kernel = K / P
    let w = extended_delta(&s, &delta)?;
    let k_basis = integral_preimage(&w);
    let kernel = quotient_structure(&k_basis, &s.to_rows())?;
    let image = quotient_structure(&IntMatrix::identity(nn).to_rows(), &k_basis)?;
    if kernel.order() != kernel_order_1 {
        return Err(Error::Internal(format!(
            "kernel orders disagree: {} by divisor testing, {} by lattice",
            kernel_order_1,
            kernel.order()
        )));
    }
    let class_group_order = class_group(p, n)?.order;
    if kernel.order() * image.order() != class_group_order {
        return Err(Error::Internal("kernel and image orders do not multiply to |C|".into()));
    }
    Ok(SnakeAnalysis {
        p,
        n,
        delta,
        cokernel: coker,
        least_multiple,
        relation,
        relation_gcd,
        kernel,
        image,
        class_group_order,
    })
}

/// Kernel of the connecting map restricted to `C(p^n)`.
pub fn delta_kernel_on_cuspidal(p: u64, n: u32) -> Result<AbelianGroup> {
    Ok(snake_analysis(p, n)?.kernel)
}

/// Roots of unity at the non-base cusps: `sum_{i<n} Z/(2 p^{min(i,n-i)})`.
pub fn mu_contribution(p: u64, n: u32) -> Result<AbelianGroup> {
    if !is_prime(p) || p == 2 {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    Ok(AbelianGroup::from_cyclic_orders((0..n).map(|i| BigInt::from(2 * pow(p, i.min(n - i))))))
}

/// Product formula for the torsion when `C(p^n)` injects: for `n` even
/// `prod_{i=0}^{n/2-1} Z/2p^i x prod_{i=1}^{n/2} Z/2p^i`, for `n` odd
/// `prod_{i=0}^{(n-1)/2} Z/2p^i x prod_{i=1}^{(n-1)/2} Z/2p^i`.
pub fn torsion_closed_form(p: u64, n: u32) -> AbelianGroup {
    let t = |i: u32| BigInt::from(2 * pow(p, i));
    let (first, second) = if n.is_multiple_of(2) { (0..n / 2, 1..=n / 2) } else { (0..n.div_ceil(2), 1..=(n - 1) / 2) };
    AbelianGroup::from_cyclic_orders(first.map(t).chain(second.map(t)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// The group structure is determined.
    Exact,
    /// Only the order and the odd part are determined.
    UpToTwoTorsion,
    /// Kernel and roots of unity are known but not the extension; the
    /// group is reported as their direct sum.
    ExtensionUnresolved,
}

impl fmt::Display for Resolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Resolution::Exact => "exact",
            Resolution::UpToTwoTorsion => "up to 2-torsion",
            Resolution::ExtensionUnresolved => "extension unresolved",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionResult {
    pub group: AbelianGroup,
    pub order: Integer,
    /// True when the result assumes `J0(N)(Q)_tors = C(N)`.
    pub conditional: bool,
    pub kernel: AbelianGroup,
    pub mu_part: AbelianGroup,
    pub resolution: Resolution,
}

/// Rational torsion of the generalized Jacobian of X0(p^n).
pub fn generalized_torsion(p: u64, n: u32) -> Result<TorsionResult> {
    require_prime_at_least_5(p)?;
    let kernel = delta_kernel_on_cuspidal(p, n)?;
    let mu_part = mu_contribution(p, n)?;
    let (group, resolution) = if kernel.is_trivial() {
        (mu_part.clone(), Resolution::Exact)
    } else {
        (mu_part.direct_sum(&kernel), Resolution::ExtensionUnresolved)
    };
    Ok(TorsionResult {
        order: mu_part.order() * kernel.order(),
        group,
        conditional: n >= 2,
        kernel,
        mu_part,
        resolution,
    })
}

/// Output of the divisor-class evaluation: `E (x) 1/m` in `Lambda (x) Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaClass {
    /// Coordinates of `E` in `Lambda`.
    pub exponents: Vec<Integer>,
    /// `exponents / m` modulo 1.
    pub class: Vec<QmodZ>,
    /// Root-of-unity parts dropped when reducing to `Lambda`.
    pub discarded_phases: Vec<QmodZ>,
}

impl DeltaClass {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(QmodZ::is_zero)
    }
}

/// Evaluates the connecting map on the class of `e` on X0(p^n): given `h`
/// with `div h = m e` and its leading coefficients `coeffs` at `P_0..P_n`,
/// returns `((h/t^{m a_n})(P_n) (t^{m a_i}/h)(P_i))_i (x) 1/m`.
pub fn evaluate_delta_class(
    e: &CuspDivisor,
    m: &Integer,
    h: &EtaQuotient,
    coeffs: &[LeadingCoeff],
    basis: &LambdaBasis,
) -> Result<DeltaClass> {
    if !m.is_positive() {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let scaled = e.scale(&Rational::from_integer(m.clone()));
    if divisor(h)? != scaled {
        return Err(Error::InvalidInput(format!("div({h}) is not {m} times the given divisor")));
    }
    let values: Vec<LeadingCoeff> = ratios_to_base(coeffs).iter().map(LeadingCoeff::inv).collect();
    let exponents = basis.coordinates(&values)?;
    let class = exponents.iter().map(|x| QmodZ::new(Rational::new(x.clone(), m.clone()))).collect();
    Ok(DeltaClass { exponents, class, discarded_phases: values.into_iter().map(|v| v.phase).collect() })
}

/// The connecting map on the class of `e` in `C(p^n)`: finds the order
/// `m` of the class and a unit `h` with `div h = m e`, then evaluates.
pub fn delta_class_of(e: &CuspDivisor, p: u64, n: u32) -> Result<(Integer, DeltaClass)> {
    let gens = prime_power_generators(p, n)?;
    let levels = prime_power_levels(p, n);
    let s = IntMatrix::from_rows(generator_coordinates(&gens, &levels)?, n as usize);
    let s_inv = rational_inverse(&s).ok_or_else(|| Error::Internal("generator divisors are dependent".into()))?;
    let x = e.coordinates(&levels)?;
    let coeffs: Vec<Rational> = (0..n as usize)
        .map(|j| x.iter().enumerate().map(|(k, xk)| Rational::from_integer(xk.clone()) * &s_inv[k][j]).sum())
        .collect();
    let m = coeffs.iter().fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
    let mut h = EtaQuotient::one(pow(p, n));
    for (g, c) in gens.iter().zip(&coeffs) {
        let y = (c * Rational::from_integer(m.clone())).to_integer();
        let y = y.to_i64().ok_or_else(|| Error::Internal("exponent overflow".into()))?;
        h = h.mul(&g.pow(y));
    }
    let lcs = prime_power_leading_coefficients(&h, n)?;
    let class = evaluate_delta_class(e, &m, &h, &lcs, &LambdaBasis::prime_power(p, n))?;
    Ok((m, class))
}

/// The computation for X0(pq).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqAnalysis {
    pub p: u64,
    pub q: u64,
    /// Rows `f1, f2, f3`; columns `(p, q)` at `P0`, `P1`, `P2`.
    pub delta: IntMatrix,
    pub kernel: AbelianGroup,
    /// Order of the class of `D1 - D2 - D3` in `C(pq)`; it lies in the kernel.
    pub generator_order: Integer,
    pub generator_in_kernel: bool,
    pub torsion: TorsionResult,
}

/// `c = (p-1)(q-1)/24`.
pub fn pq_c(p: u64, q: u64) -> u64 {
    (p - 1) * (q - 1) / 24
}

pub fn pq_analysis(p: u64, q: u64) -> Result<PqAnalysis> {
    require_pq(p, q)?;
    let levels = &pq_cusp_levels(p, q)[..3];
    let gens = pq_generators(p, q)?;
    let s = IntMatrix::from_rows(generator_coordinates(&gens, levels)?, 3);
    let basis = LambdaBasis::pq(p, q);
    let rows = pq_leading_coefficients(p, q)?
        .iter()
        .map(|lcs| basis.coordinates(&ratios_to_base(lcs)))
        .collect::<Result<Vec<_>>>()?;
    let delta = IntMatrix::from_rows(rows, basis.rank());
    let w = extended_delta(&s, &delta)?;
    let k_basis = integral_preimage(&w);
    let kernel = quotient_structure(&k_basis, &s.to_rows())?;

    let gen: Vec<Integer> = [1, -1, -1].iter().map(|&x| BigInt::from(x)).collect();
    let gen_image: Vec<Rational> = (0..basis.rank())
        .map(|j| gen.iter().enumerate().map(|(k, x)| Rational::from_integer(x.clone()) * &w[k][j]).sum())
        .collect();
    let generator_in_kernel = gen_image.iter().all(Rational::is_integer);
    let s_inv = rational_inverse(&s).ok_or_else(|| Error::Internal("generator divisors are dependent".into()))?;
    let generator_order = (0..3)
        .map(|j| gen.iter().enumerate().map(|(k, x)| Rational::from_integer(x.clone()) * &s_inv[k][j]).sum::<Rational>())
        .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));

    let mu_part = AbelianGroup::from_cyclic_orders(vec![BigInt::from(2); 3]);
    let order = mu_part.order() * kernel.order();
    let torsion = TorsionResult {
        group: AbelianGroup::cyclic(order.clone()),
        order,
        conditional: true,
        kernel: kernel.clone(),
        mu_part,
        resolution: Resolution::UpToTwoTorsion,
    };
    Ok(PqAnalysis { p, q, delta, kernel, generator_order, generator_in_kernel, torsion })
}

pub fn pq_delta_kernel(p: u64, q: u64) -> Result<TorsionResult> {
    Ok(pq_analysis(p, q)?.torsion)
}

/// What the reduction to `Lambda` relies on for the prime `p` and the
/// residue field `Q(zeta_{p^m})`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitInjectionReport {
    pub p: u64,
    pub m: u32,
    /// The only maps used to reduce classes.
    pub maps: Vec<String>,
    /// Kernel of `Q^x (x) Q/Z -> Q(zeta_{p^m})^x (x) Q/Z`.
    pub kernel: String,
    pub sqrt_p_star: LeadingCoeff,
    /// `sqrt(p*)` divided by the quadratic Gauss sum, as a phase: 0 or 1/2.
    pub gauss_sum_phase: QmodZ,
    /// Degree `[Q(zeta_{p^m}) : Q]`.
    pub field_degree: u64,
    /// Conclusions about 2-torsion depend on the sign convention for `sqrt(p*)`.
    pub two_torsion_caveat: bool,
}

pub fn split_injection_scope(p: u64, m: u32) -> Result<SplitInjectionReport> {
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidInput(format!("{p} is not an odd prime")));
    }
    if m == 0 {
        return Err(Error::InvalidInput("m must be positive".into()));
    }
    let root = sqrt_p_star(p);
    let mut gauss = Complex64::zero();
    for a in 1..p {
        let s = jacobi_symbol(&BigInt::from(a), &BigInt::from(p))? as f64;
        gauss += Complex64::from_polar(s, 2.0 * std::f64::consts::PI * a as f64 / p as f64);
    }
    let ratio = root.to_complex() / gauss;
    let gauss_sum_phase = if ratio.re > 0.0 { QmodZ::zero() } else { QmodZ::from_ratio(1, 2) };
    if (ratio.norm() - 1.0).abs() > 1e-9 || ratio.im.abs() > 1e-9 {
        return Err(Error::Internal(format!("sqrt({p}*) is not +-(Gauss sum)")));
    }
    Ok(SplitInjectionReport {
        p,
        m,
        maps: vec![format!("x -> {p} (x) x into Q^x (x) Q/Z"), format!("x -> sqrt({p}*) (x) x into Q(zeta_{p}^{m})^x (x) Q/Z")],
        kernel: format!("{{0, {p}* (x) 1/2}}"),
        sqrt_p_star: root,
        gauss_sum_phase,
        field_degree: euler_phi(pow(p, m)),
        two_torsion_caveat: true,
    })
}
