//! Acceptance suite. Each test prints one PASS/FAIL line on stderr and
//! then asserts, so `cargo test -- --nocapture` is not needed to see the
//! verdicts. Expected values are computed locally from the closed forms.

use std::io::Write;
use std::time::{Duration, Instant};

use modunits_core::arith::{euler_phi, gcd, is_prime, pow};
use modunits_core::classgroup::ling_structure;
use modunits_core::transform::{
    generator_leading_coefficient, numeric_leading_coefficient, pq_cusp_levels, pq_leading_coefficients, pq_sigma,
    NumericParams,
};
use modunits_core::{
    class_group, class_group_pq, delta_cokernel, delta_kernel_on_cuspidal, delta_matrix, generalized_torsion,
    leading_coefficient_at, order_matrices, pq_delta_kernel, sigma_matrix, AbelianGroup, EtaQuotient, Generator,
    IntMatrix, LeadingCoeff, QmodZ, Rational,
};
use num_bigint::BigInt;
use num_traits::Signed;

const NUMERIC_TOL: f64 = 1e-8;

fn verdict(number: u32, title: &str, failures: &[String], elapsed: Duration) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "criterion {number} {status}: {title} ({:.2}s)", elapsed.as_secs_f64());
    for f in failures.iter().take(12) {
        let _ = writeln!(err, "    {f}");
    }
    if failures.len() > 12 {
        let _ = writeln!(err, "    ... {} more", failures.len() - 12);
    }
}

fn finish(number: u32, title: &str, failures: Vec<String>, start: Instant) {
    verdict(number, title, &failures, start.elapsed());
    assert!(failures.is_empty(), "criterion {number} failed: {}", failures.join("; "));
}

fn groups(orders: impl IntoIterator<Item = u64>) -> AbelianGroup {
    AbelianGroup::from_cyclic_orders(orders.into_iter().map(BigInt::from))
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn criterion_1_class_group_structure() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [5, 7, 11, 13, 17, 19] {
        for n in 1..=5 {
            let computed = class_group(p, n).unwrap().group;
            let expected = ling_structure(p, n).unwrap();
            if computed != expected {
                failures.push(format!("p={p} n={n}: computed {computed}, closed form {expected}"));
            }
        }
    }
    if start.elapsed() > Duration::from_secs(5) {
        failures.push(format!("runtime {:.2}s exceeds 5s", start.elapsed().as_secs_f64()));
    }
    finish(1, "class group structure for p in {5..19}, n <= 5", failures, start);
}

#[test]
fn criterion_2_prime_level_order() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in (5..200).filter(|&p| is_prime(p)) {
        let g = class_group(p, 1).unwrap().group;
        let a = (p - 1) / gcd(p - 1, 12);
        if g != AbelianGroup::cyclic(a) || !g.is_cyclic() {
            failures.push(format!("p={p}: {g}, expected cyclic of order {a}"));
        }
    }
    finish(2, "C(p) cyclic of order (p-1)/(p-1,12) for primes 5 <= p < 200", failures, start);
}

#[test]
fn criterion_3_determinant_claims() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [5u64, 7, 13] {
        let a = (p - 1) / gcd(p - 1, 12);
        let b = (p + 1) / gcd(p + 1, 12);
        for n in 1..=6u32 {
            let m = order_matrices(p, n).unwrap();
            let det_v = m.v.determinant();
            let want_v = big(24 * (u64::from(n) + 1) / gcd(p - 1, 12));
            if det_v != want_v {
                failures.push(format!("p={p} n={n}: det V = {det_v}, stated {want_v}"));
            }
            let det_m24 = m.m24.determinant();
            let e = if n % 2 == 1 { (n - 1) * (3 * n - 1) / 4 } else { n * (3 * n - 4) / 4 };
            let want_24m = big(a * b).pow(n) * big(p).pow(e);
            let got_24m = Rational::new(det_m24, BigInt::from(24).pow(n));
            if got_24m != Rational::from_integer(want_24m.clone()) {
                failures.push(format!("p={p} n={n}: 24 det M = {got_24m}, stated {want_24m}"));
            }
            let det_u = m.u.determinant();
            let want_u: BigInt = (0..=n).map(|i| big(euler_phi(gcd(pow(p, i), pow(p, n - i))))).product();
            if det_u != want_u {
                failures.push(format!("p={p} n={n}: det U = {det_u}, stated {want_u}"));
            }
            let sum = m.last_row_sum();
            let want_sum =
                Rational::new(big(u64::from(n) + 1) * big(p).pow(n - 1) * big(p + 1), BigInt::from(24));
            if sum != want_sum {
                failures.push(format!("p={p} n={n}: last row sum {sum}, stated {want_sum}"));
            }
        }
    }
    finish(3, "det V, det M, det U and last-row sum for p in {5,7,13}, n <= 6", failures, start);
}

fn e(num: i64, den: i64) -> QmodZ {
    QmodZ::from_ratio(num, den)
}

/// The stated case table, entry by entry.
fn stated_leading_coefficient(p: u64, n: u32, m: u32, g: Generator) -> LeadingCoeff {
    let pi = p as i64;
    let a = (pi - 1) / gcd(p - 1, 12) as i64;
    let ab = (pi * pi - 1) / 24;
    let pm = |k: u32| pow(p, k) as i64;
    let root_inv = LeadingCoeff::new(e(pi - 1, 8), p, 1).inv();
    let sign = e(pi - 1, 4);
    if 2 * m >= n {
        match g {
            Generator::F => LeadingCoeff::one(),
            Generator::G(k) if k + 2 <= m => LeadingCoeff::one(),
            Generator::G(k) if k + 1 == m => LeadingCoeff::root_of_unity(sign + e(-ab, pi)).mul(&root_inv),
            Generator::G(k) => LeadingCoeff::new(e(-ab, pm(k + 2 - m)), p, -2),
        }
    } else {
        match g {
            Generator::F if m == 0 => LeadingCoeff::new(QmodZ::zero(), p, -24 / gcd(p - 1, 12) as i64),
            Generator::F => LeadingCoeff::root_of_unity(e(-a, pm(m))),
            Generator::G(k) if k >= m => LeadingCoeff::new(QmodZ::zero(), p, -2),
            Generator::G(k) if k + 1 == m => LeadingCoeff::root_of_unity(e(ab, pi)).mul(&root_inv),
            Generator::G(k) => LeadingCoeff::root_of_unity(e(ab, pm(m - k))),
        }
    }
}

fn relative_error(x: num_complex::Complex64, y: num_complex::Complex64) -> f64 {
    (x - y).norm() / y.norm()
}

#[test]
fn criterion_4_leading_coefficient_tables() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let params = NumericParams { height: 8.0, terms: 200 };
    for p in [5u64, 13] {
        for n in [2u32, 3] {
            for g in Generator::all(n) {
                let h = g.eta_quotient(p, n).unwrap();
                for m in 0..=n {
                    let computed = generator_leading_coefficient(p, n, m, g).unwrap();
                    let stated = stated_leading_coefficient(p, n, m, g);
                    let sigma = sigma_matrix(p, n, m).unwrap();
                    let (_, ord) = leading_coefficient_at(&h, &sigma).unwrap();
                    let num = numeric_leading_coefficient(&h, &sigma, &ord, params).unwrap();
                    if computed != stated {
                        failures.push(format!(
                            "p={p} n={n} m={m} {g}: computed {computed}, stated {stated} (numeric residual vs stated {:.3e})",
                            relative_error(num.value, stated.to_complex())
                        ));
                    }
                    let err = relative_error(num.value, computed.to_complex());
                    if !(err <= NUMERIC_TOL) {
                        failures.push(format!("p={p} n={n} m={m} {g}: numeric residual {err:.3e}"));
                    }
                }
            }
        }
    }
    finish(4, "leading coefficients equal the case table, numeric residual <= 1e-8", failures, start);
}

fn stated_delta(p: u64, n: u32) -> IntMatrix {
    let a_prime = (12 / gcd(p - 1, 12)) as i64;
    let n = n as usize;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| match (k, i) {
                    (0, 0) => -a_prime,
                    (0, _) => 0,
                    (_, 0) => -1,
                    _ if i < k => -2,
                    _ if i == k => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

#[test]
fn criterion_5_delta_matrix_and_cokernel() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [5u64, 7, 11, 13] {
        let a_prime = 12 / gcd(p - 1, 12);
        for n in 1..=5 {
            let d = delta_matrix(p, n).unwrap();
            if d != stated_delta(p, n) {
                failures.push(format!("p={p} n={n}: Delta =\n{d}"));
            }
            let c = delta_cokernel(p, n).unwrap();
            if c != AbelianGroup::cyclic(a_prime) || !c.is_cyclic() {
                failures.push(format!("p={p} n={n}: cokernel {c}, expected Z/{a_prime}"));
            }
        }
    }
    finish(5, "Delta from leading coefficients equals the closed form, cokernel Z/a'", failures, start);
}

#[test]
fn criterion_6_injectivity_on_cuspidal_group() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in [5u64, 7, 11, 13] {
        for n in 1..=5 {
            let k = delta_kernel_on_cuspidal(p, n).unwrap();
            if !k.is_trivial() {
                failures.push(format!("p={p} n={n}: kernel {k}"));
            }
        }
    }
    finish(6, "kernel of the connecting map on C(p^n) is trivial", failures, start);
}

fn product_formula(p: u64, n: u32) -> AbelianGroup {
    let t = |i: u32| 2 * pow(p, i);
    if n.is_multiple_of(2) {
        groups((0..n / 2).map(t).chain((1..=n / 2).map(t)))
    } else {
        groups((0..=(n - 1) / 2).map(t).chain((1..=(n - 1) / 2).map(t)))
    }
}

#[test]
fn criterion_7_generalized_torsion() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in (5..=19).filter(|&p| is_prime(p)) {
        let t = generalized_torsion(p, 1).unwrap();
        if t.group != groups([2]) || t.conditional {
            failures.push(format!("p={p} n=1: {} conditional={}", t.group, t.conditional));
        }
        for n in 2..=5 {
            let t = generalized_torsion(p, n).unwrap();
            let want = product_formula(p, n);
            if t.group != want || !t.conditional {
                failures.push(format!("p={p} n={n}: {} (conditional={}), expected {want}", t.group, t.conditional));
            }
            if t.order != t.kernel.order() * t.mu_part.order() {
                failures.push(format!("p={p} n={n}: orders do not multiply"));
            }
        }
    }
    finish(7, "generalized Jacobian torsion matches the product formulas", failures, start);
}

fn pq_stated_magnitudes(p: u64, q: u64) -> [[u64; 4]; 3] {
    [[p, 1, p, 1], [q, q, 1, 1], [1, 1, 1, 1]]
}

#[test]
fn criterion_8_pq_case() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let params = NumericParams::default();
    for (p, q) in [(13u64, 37u64), (13, 61), (37, 61)] {
        let a = (p - 1) * (q + 1) / 24;
        let b = (p + 1) * (q - 1) / 24;
        let c = (p - 1) * (q - 1) / 24;
        let order = class_group_pq(p, q).unwrap().order;
        if order != big(4 * a * b * c) {
            failures.push(format!("({p},{q}): |C| = {order}, expected {}", 4 * a * b * c));
        }
        let t = pq_delta_kernel(p, q).unwrap();
        if t.kernel != AbelianGroup::cyclic(c) || !t.kernel.is_cyclic() {
            failures.push(format!("({p},{q}): kernel {}, expected Z/{c}", t.kernel));
        }
        let table = pq_leading_coefficients(p, q).unwrap();
        let gens = modunits_core::eta::pq_generators(p, q).unwrap();
        let stated = pq_stated_magnitudes(p, q);
        for (row, (h, want_row)) in gens.iter().zip(&stated).enumerate() {
            for (col, (&level, &want)) in pq_cusp_levels(p, q).iter().zip(want_row).enumerate() {
                let lc = &table[row][col];
                let magnitude = if want == 1 { LeadingCoeff::one() } else { LeadingCoeff::new(QmodZ::zero(), want, 2) };
                if !lc.same_magnitude(&magnitude) {
                    failures.push(format!("({p},{q}) f{} at P{col}: {lc}, stated magnitude {want}", row + 1));
                }
                let sigma = pq_sigma(p, q, level).unwrap();
                let (_, ord) = leading_coefficient_at(h, &sigma).unwrap();
                let num = numeric_leading_coefficient(h, &sigma, &ord, params).unwrap();
                let err = (num.value.norm() - want as f64).abs() / want as f64;
                if !(err <= NUMERIC_TOL) {
                    failures.push(format!("({p},{q}) f{} at P{col}: |numeric| residual {err:.3e}", row + 1));
                }
                let phase_err = relative_error(num.value, lc.to_complex());
                if !(phase_err <= NUMERIC_TOL) {
                    failures.push(format!("({p},{q}) f{} at P{col}: numeric vs exact {phase_err:.3e}", row + 1));
                }
            }
        }
    }
    if start.elapsed() > Duration::from_secs(10) {
        failures.push(format!("runtime {:.2}s exceeds 10s", start.elapsed().as_secs_f64()));
    }
    finish(8, "X0(pq): |C| = 4abc, kernel Z/c, leading-coefficient magnitudes", failures, start);
}

/// Random samples of the four property families, with a fixed seed.
#[test]
fn criterion_9_property_suites() {
    use modunits_core::arith::divisors;
    use modunits_core::eta::{check_modular_function, divisor, ligozat_order_numerator, order_at_cusp};
    use modunits_core::linalg::smith_normal_form;
    use modunits_core::transform::{eta_multiplier, eta_numeric};
    use num_complex::Complex64;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Smith normal form
    for case in 0..200 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let data: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000))).collect())
            .collect();
        let a = IntMatrix::from_rows(data, cols);
        let s = smith_normal_form(&a);
        let pad = &(&s.p * &a) * &s.q;
        let diag = s.diagonal();
        let chain = diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() });
        if pad != s.d
            || !s.d.is_diagonal()
            || !chain
            || diag.iter().any(|x| x.is_negative())
            || !s.p.determinant().abs().is_one()
            || !s.q.determinant().abs().is_one()
        {
            failures.push(format!("SNF case {case} ({rows}x{cols}) fails"));
        }
    }

    // degree zero of Ligozat-valid divisors
    let mut valid = 0;
    while valid < 100 {
        let n = rng.gen_range(1..=100u64);
        let ds = divisors(n);
        let terms: Vec<(u64, i64)> = ds.iter().map(|&d| (d, rng.gen_range(-6..=6))).collect();
        let h = EtaQuotient::from_exponents(n, &terms).unwrap();
        if !check_modular_function(&h).is_modular_function() {
            continue;
        }
        valid += 1;
        match divisor(&h) {
            Ok(d) if d.degree().is_zero() => {}
            other => failures.push(format!("{h} on X0({n}): {other:?}")),
        }
    }

    // order formula at prime-power level against the piecewise closed form
    for p in [5u64, 7, 11, 13] {
        for n in 1..=6u32 {
            let level = pow(p, n);
            for k in 0..=n {
                for m in 0..=n {
                    let closed = if 2 * m >= n {
                        if k <= m { Rational::new(big(pow(p, k)), big(24)) } else { Rational::new(big(pow(p, 2 * m - k)), big(24)) }
                    } else if m <= k {
                        Rational::new(big(pow(p, n - k)), big(24))
                    } else {
                        Rational::new(big(pow(p, n + k - 2 * m)), big(24))
                    };
                    let general = ligozat_order_numerator(level, pow(p, m), pow(p, k)) / Rational::from_integer(big(24));
                    let h = EtaQuotient::from_exponents(level, &[(pow(p, k), 1)]).unwrap();
                    let via_cusp = order_at_cusp(&h, pow(p, m)).unwrap();
                    if closed != general || closed != via_cusp {
                        failures.push(format!("p={p} n={n} k={k} m={m}: {closed} vs {general}"));
                    }
                }
            }
        }
    }

    // eta(g tau) = e(eps) sqrt((c tau + d)/i) eta(tau)
    let mut checked = 0;
    while checked < 100 {
        let c: i64 = rng.gen_range(-60..=60);
        let d: i64 = rng.gen_range(-60..=60);
        let g = num_integer::Integer::extended_gcd(&c, &d);
        if g.gcd != 1 {
            continue;
        }
        // a d - b c = 1
        let (a, b) = (g.y, -g.x);
        let (a, b) = if a * d - b * c == 1 { (a, b) } else { (-a, -b) };
        assert_eq!(a * d - b * c, 1);
        // the identity holds for the representative with c > 0, or c = 0 and d > 0
        let (a, b, c, d) = if c < 0 || (c == 0 && d < 0) { (-a, -b, -c, -d) } else { (a, b, c, d) };
        checked += 1;
        let tau = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..1.5));
        let gtau = (tau * a as f64 + b as f64) / (tau * c as f64 + d as f64);
        let eps = eta_multiplier(&big_i(a), &big_i(b), &big_i(c), &big_i(d)).unwrap();
        let factor = if c == 0 { Complex64::one() } else { ((tau * c as f64 + d as f64) / Complex64::i()).sqrt() };
        let lhs = eta_numeric(gtau, 200);
        let rhs = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * eps.to_f64()) * factor * eta_numeric(tau, 200);
        let err = (lhs - rhs).norm() / rhs.norm();
        if !(err <= 1e-10) {
            failures.push(format!("gamma=({a} {b}; {c} {d}) tau={tau}: residual {err:.3e}"));
        }
    }
    finish(9, "SNF, degree zero, order formula and eta transformation sweeps", failures, start);
}

fn big_i(x: i64) -> BigInt {
    BigInt::from(x)
}
