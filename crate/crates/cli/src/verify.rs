use modunits_core::arith::{is_prime, pow};
use modunits_core::classgroup::ling_structure;
use modunits_core::jacobian::{a_prime, delta_class_of, torsion_closed_form};
use modunits_core::linalg::smith_normal_form;
use modunits_core::transform::{eta_numeric, NumericParams, NUMERIC_TOLERANCE};
use modunits_core::{
    class_group, eta_multiplier, generalized_torsion, AbelianGroup, CuspDivisor, IntMatrix, Integer, Resolution,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::commands::{delta_output, leading_coeffs_output, matrices_output, pq_output};
use crate::report::{CaseResult, SuiteResult};

pub const SUITES: &[&str] =
    &["class-groups", "mazur", "determinants", "leading-coeffs", "delta", "injectivity", "torsion", "pq", "properties"];

const PROPERTY_SEED: u64 = 0x5eed;

type Case = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

fn case(name: String, f: impl Fn() -> Result<(), String> + Send + Sync + 'static) -> (String, Case) {
    (name, Box::new(f))
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi).filter(|&p| is_prime(p)).collect()
}

fn cases(suite: &str) -> Option<Vec<(String, Case)>> {
    let mut out = Vec::new();
    match suite {
        "class-groups" => {
            for p in [5u64, 7, 11, 13, 17, 19] {
                for n in 1..=5u32 {
                    out.push(case(format!("p={p} n={n}"), move || {
                        let r = class_group(p, n).map_err(|e| e.to_string())?;
                        let want = ling_structure(p, n).map_err(|e| e.to_string())?;
                        ensure(r.group == want && r.certified, || format!("computed {}, closed form {want}", r.group))
                    }));
                }
            }
        }
        "mazur" => {
            for p in primes_in(5, 200) {
                out.push(case(format!("p={p}"), move || {
                    let r = class_group(p, 1).map_err(|e| e.to_string())?;
                    let a = (p - 1) / modunits_core::arith::gcd(p - 1, 12);
                    ensure(r.group == AbelianGroup::cyclic(a), || format!("computed {}, expected Z/{a}", r.group))
                }));
            }
        }
        "determinants" => {
            for p in [5u64, 7, 13] {
                for n in 1..=6u32 {
                    out.push(case(format!("p={p} n={n}"), move || {
                        let m = matrices_output(p, n).map_err(|e| e.to_string())?;
                        let bad: Vec<String> = m
                            .claims
                            .iter()
                            .filter(|c| !c.holds)
                            .map(|c| format!("{}: {} vs {}", c.claim, c.computed, c.expected))
                            .collect();
                        ensure(bad.is_empty(), || bad.join("; "))
                    }));
                }
            }
        }
        "leading-coeffs" => {
            for p in [5u64, 13] {
                for n in 2..=3u32 {
                    out.push(case(format!("p={p} n={n}"), move || {
                        let t = leading_coeffs_output(p, n, NumericParams::default()).map_err(|e| e.to_string())?;
                        let mut bad = Vec::new();
                        for (row, entries) in t.rows.iter().zip(&t.entries) {
                            for (col, e) in t.columns.iter().zip(entries) {
                                if !e.matches_closed_form || !(e.numeric_residual <= NUMERIC_TOLERANCE) {
                                    bad.push(format!("{row} at {col}: {} residual {:e}", e.exact, e.numeric_residual));
                                }
                            }
                        }
                        ensure(bad.is_empty(), || bad.join("; "))
                    }));
                }
            }
        }
        "delta" => {
            for p in [5u64, 7, 11, 13] {
                for n in 1..=5u32 {
                    out.push(case(format!("p={p} n={n}"), move || {
                        let d = delta_output(p, n).map_err(|e| e.to_string())?;
                        let want = a_prime(p).to_string();
                        let cyclic = d.cokernel.invariant_factors.len() <= 1;
                        ensure(d.matches_closed_form && cyclic && d.cokernel.order == want, || {
                            format!("closed form {}, cokernel {:?}", d.matches_closed_form, d.cokernel.invariant_factors)
                        })
                    }));
                }
            }
        }
        "injectivity" => {
            for p in [5u64, 7, 11, 13] {
                for n in 1..=5u32 {
                    out.push(case(format!("p={p} n={n}"), move || injectivity_case(p, n)));
                }
            }
        }
        "torsion" => {
            for p in primes_in(5, 20) {
                for n in 1..=5u32 {
                    out.push(case(format!("p={p} n={n}"), move || {
                        let t = generalized_torsion(p, n).map_err(|e| e.to_string())?;
                        let want = if n == 1 { AbelianGroup::cyclic(2) } else { torsion_closed_form(p, n) };
                        ensure(
                            t.group == want && t.conditional == (n >= 2) && t.resolution == Resolution::Exact,
                            || format!("computed {} (conditional {}), expected {want}", t.group, t.conditional),
                        )
                    }));
                }
            }
        }
        "pq" => {
            for (p, q) in [(13u64, 37u64), (13, 61), (37, 61)] {
                out.push(case(format!("p={p} q={q}"), move || {
                    let r = pq_output(p, q).map_err(|e| e.to_string())?;
                    let magnitudes = r.leading_coefficients.iter().flatten().all(|e| e.magnitude_matches);
                    let kernel_ok =
                        r.kernel.invariant_factors.len() <= 1 && r.kernel.order == r.c.to_string() && r.generator_in_kernel;
                    ensure(r.order_matches_4abc && kernel_ok && magnitudes, || {
                        format!(
                            "order 4abc {}, kernel {:?}, magnitudes {magnitudes}",
                            r.order_matches_4abc, r.kernel.invariant_factors
                        )
                    })
                }));
            }
        }
        "properties" => {
            out.push(case("smith normal form on 200 random matrices".into(), snf_property));
            out.push(case("eta transformation on 100 random matrices".into(), eta_transformation_property));
        }
        _ => return None,
    }
    Some(out)
}

fn injectivity_case(p: u64, n: u32) -> Result<(), String> {
    let kernel = modunits_core::delta_kernel_on_cuspidal(p, n).map_err(|e| e.to_string())?;
    ensure(kernel.is_trivial(), || format!("kernel {kernel}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED ^ (p << 8) ^ u64::from(n));
    let levels: Vec<u64> = (0..n).map(|i| pow(p, i)).collect();
    for _ in 0..20 {
        let coords: Vec<Integer> = (0..n).map(|_| BigInt::from(rng.gen_range(-30i64..=30))).collect();
        let e = CuspDivisor::from_coordinates(pow(p, n), &levels, &coords);
        let (m, class) = delta_class_of(&e, p, n).map_err(|e| e.to_string())?;
        ensure(class.is_zero() == m.is_one(), || format!("divisor {e}: order {m}, class zero {}", class.is_zero()))?;
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=8);
    let cols = rng.gen_range(1..=8);
    let data = (0..rows).map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000))).collect()).collect();
    IntMatrix::from_rows(data, cols)
}

fn snf_property() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    for i in 0..200 {
        let a = random_matrix(&mut rng);
        let s = smith_normal_form(&a);
        let pa = &(&s.p * &a) * &s.q;
        let diag = s.diagonal();
        let chain = diag.windows(2).all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        let ok = pa == s.d
            && s.d.is_diagonal()
            && s.p.is_unimodular()
            && s.q.is_unimodular()
            && diag.iter().all(|d| !d.is_negative())
            && chain;
        ensure(ok, || format!("matrix {i}: {a}"))?;
    }
    Ok(())
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> (i64, i64, i64, i64) {
    loop {
        let c = rng.gen_range(-40i64..=40);
        let d = rng.gen_range(-40i64..=40);
        let (g, x, y) = ext_gcd(c, d);
        if g != 1 {
            continue;
        }
        // a d - b c = 1 with a = y, b = -x
        let t = rng.gen_range(-5i64..=5);
        return (y + t * c, -x + t * d, c, d);
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

fn eta_transformation_property() -> Result<(), String> {
    use num_complex::Complex64;
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED + 1);
    for _ in 0..100 {
        let (mut a, mut b, mut c, mut d) = random_unimodular(&mut rng);
        if c < 0 || (c == 0 && d < 0) {
            (a, b, c, d) = (-a, -b, -c, -d);
        }
        let tau = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.2..1.5));
        let eps = eta_multiplier(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c), &BigInt::from(d))
            .map_err(|e| e.to_string())?;
        let ctd = tau * c as f64 + d as f64;
        let factor = if c == 0 { Complex64::new(1.0, 0.0) } else { (ctd / Complex64::i()).sqrt() };
        let lhs = eta_numeric((tau * a as f64 + b as f64) / ctd, 200);
        let rhs = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * eps.to_f64()) * factor * eta_numeric(tau, 200);
        let err = (lhs - rhs).norm() / rhs.norm();
        ensure(err <= 1e-10, || format!("({a} {b}; {c} {d}) at {tau}: residual {err:e}"))?;
    }
    Ok(())
}

/// Runs the named suite (or every suite for `all`); `None` for unknown names.
pub fn run_suites(name: &str) -> Option<Vec<SuiteResult>> {
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let mut out = Vec::with_capacity(names.len());
    for suite in names {
        let results: Vec<CaseResult> = cases(suite)?
            .par_iter()
            .map(|(name, f)| match f() {
                Ok(()) => CaseResult { case: name.clone(), passed: true, detail: String::new() },
                Err(detail) => CaseResult { case: name.clone(), passed: false, detail },
            })
            .collect();
        out.push(SuiteResult { suite: suite.to_string(), passed: results.iter().all(|c| c.passed), cases: results });
    }
    Some(out)
}
