use modunits_core::arith::pow;
use modunits_core::classgroup::{class_group_for_level, ling_structure};
use modunits_core::jacobian::{
    delta_closed_form, pq_analysis, pq_c, snake_analysis, split_injection_scope, TorsionResult,
};
use modunits_core::transform::{
    numeric_leading_coefficient, pq_cusp_levels, pq_expected_magnitudes, pq_leading_coefficients, pq_sigma,
    sqrt_p_star, tabulated_leading_coefficient, NumericParams,
};
use modunits_core::{
    check_modular_function, class_group, class_group_pq, cusps, divisor, generalized_torsion, leading_coefficient_at,
    order_matrices, parse_eta_quotient, sigma_matrix, Error, Generator, IntMatrix, Result,
};
use num_traits::ToPrimitive;

use crate::report::*;

fn matrix_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

pub fn cusps_output(n: u64) -> Result<CuspsOutput> {
    if n == 0 {
        return Err(Error::InvalidInput("level must be positive".into()));
    }
    let cs: Vec<CuspJson> = cusps(n)
        .into_iter()
        .map(|c| CuspJson {
            level: c.level,
            degree: c.degree,
            width: c.width,
            residue_conductor: c.residue_conductor,
            rational: c.is_rational(),
        })
        .collect();
    Ok(CuspsOutput { level: n, cusp_count: cs.iter().map(|c| c.degree).sum(), cusps: cs })
}

pub fn eta_check_output(expr: &str, level: u64) -> Result<EtaCheckOutput> {
    let h = parse_eta_quotient(expr, level)?;
    let r = check_modular_function(&h);
    Ok(EtaCheckOutput {
        expression: h.to_string(),
        exponent_sum_zero: r.exponent_sum_zero,
        product_is_square: r.product_is_square,
        order_at_infinity_integral: r.order_at_infinity_integral,
        order_at_zero_integral: r.order_at_zero_integral,
        modular_function: r.is_modular_function(),
    })
}

pub fn divisor_output(expr: &str, level: u64) -> Result<DivisorOutput> {
    let h = parse_eta_quotient(expr, level)?;
    let e = divisor(&h)?;
    let terms = cusps(level)
        .into_iter()
        .map(|c| DivisorTerm { level: c.level, degree: c.degree, multiplicity: e.coeff(c.level).to_string() })
        .collect();
    Ok(DivisorOutput { expression: h.to_string(), terms, degree: e.degree().to_string() })
}

pub fn class_group_output(p: Option<u64>, n: Option<u32>, level: Option<u64>) -> Result<ClassGroupOutput> {
    let (result, closed) = match (p, n, level) {
        (Some(p), Some(n), None) => (class_group(p, n)?, Some(ling_structure(p, n)?)),
        (None, None, Some(level)) => (class_group_for_level(level)?, None),
        _ => return Err(Error::InvalidInput("give either --p and --n, or --N".into())),
    };
    let invariant_factors = result
        .group
        .invariant_factors()
        .iter()
        .map(|x| x.to_u64().ok_or_else(|| Error::Internal(format!("invariant factor {x} exceeds 64 bits"))))
        .collect::<Result<_>>()?;
    Ok(ClassGroupOutput {
        level: result.level,
        invariant_factors,
        order: result.order.to_string(),
        certified: result.certified,
        matches_closed_form: closed.as_ref().map(|c| *c == result.group),
        closed_form: closed.as_ref().map(GroupJson::from),
    })
}

pub fn matrices_output(p: u64, n: u32) -> Result<MatricesOutput> {
    let m = order_matrices(p, n)?;
    let holds = m.check_claims()?;
    let det_v = m.v.determinant();
    let signed_det_v = if n.is_multiple_of(2) { m.expected_det_v() } else { -m.expected_det_v() };
    let claims = vec![
        ClaimCheck {
            claim: "det V = (-1)^n 24(n+1)/(p-1,12)".into(),
            holds: holds[0] && det_v == signed_det_v,
            computed: det_v.to_string(),
            expected: signed_det_v.to_string(),
        },
        ClaimCheck {
            claim: "det M = (ab)^n p^e / 24".into(),
            computed: m.det_m().to_string(),
            expected: m.expected_det_m().to_string(),
            holds: holds[1],
        },
        ClaimCheck {
            claim: "det U = prod phi((p^i, p^(n-i)))".into(),
            computed: m.u.determinant().to_string(),
            expected: m.expected_det_u().to_string(),
            holds: holds[2],
        },
        ClaimCheck {
            claim: "last row sum of VMU = (n+1)p^(n-1)(p+1)/24".into(),
            computed: m.last_row_sum().to_string(),
            expected: m.expected_last_row_sum().to_string(),
            holds: holds[3],
        },
        ClaimCheck {
            claim: "bordered index = |C| det U".into(),
            computed: m.bordered_index()?.to_string(),
            expected: (class_group(p, n)?.order * m.expected_det_u()).to_string(),
            holds: holds[4],
        },
    ];
    Ok(MatricesOutput {
        p,
        n,
        m24: matrix_strings(&m.m24),
        u: matrix_strings(&m.u),
        v: matrix_strings(&m.v),
        claims,
    })
}

pub fn leading_coeffs_output(p: u64, n: u32, params: NumericParams) -> Result<LeadingCoeffsOutput> {
    let gens = Generator::all(n);
    let sigmas = (0..=n).map(|m| sigma_matrix(p, n, m)).collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::with_capacity(gens.len());
    for &g in &gens {
        let h = g.eta_quotient(p, n)?;
        let mut row = Vec::with_capacity(sigmas.len());
        for (m, sigma) in sigmas.iter().enumerate() {
            let (lc, ord) = leading_coefficient_at(&h, sigma)?;
            let num = numeric_leading_coefficient(&h, sigma, &ord, params)?;
            let exact = lc.to_complex();
            row.push(TableEntry {
                exact: lc.to_string(),
                order: ord.to_string(),
                matches_closed_form: lc == tabulated_leading_coefficient(p, n, m as u32, g)?,
                numeric_residual: round12((num.value - exact).norm() / exact.norm()),
            });
        }
        entries.push(row);
    }
    Ok(LeadingCoeffsOutput {
        p,
        n,
        sqrt_p_star: sqrt_p_star(p).to_string(),
        rows: gens.iter().map(ToString::to_string).collect(),
        columns: (0..=n).map(|m| format!("P{m} (level {})", pow(p, m))).collect(),
        sigma: sigmas.iter().map(ToString::to_string).collect(),
        entries,
    })
}

pub fn delta_output(p: u64, n: u32) -> Result<DeltaOutput> {
    let a = snake_analysis(p, n)?;
    Ok(DeltaOutput {
        p,
        n,
        matches_closed_form: a.delta == delta_closed_form(p, n),
        delta: matrix_strings(&a.delta),
        cokernel: (&a.cokernel).into(),
        least_multiple: a.least_multiple,
        kernel_on_cuspidal: (&a.kernel).into(),
        image_of_cuspidal: (&a.image).into(),
    })
}

fn torsion_json(level: String, t: &TorsionResult, notes: Vec<String>) -> TorsionOutput {
    TorsionOutput {
        level,
        group: (&t.group).into(),
        conditional: t.conditional,
        resolution: t.resolution.to_string(),
        kernel: (&t.kernel).into(),
        mu_part: (&t.mu_part).into(),
        notes,
    }
}

fn split_notes(p: u64, m: u32) -> Result<Vec<String>> {
    let r = split_injection_scope(p, m)?;
    let mut notes = vec![format!(
        "classes are reduced only along {}; kernel {}",
        r.maps.join(" and "),
        r.kernel
    )];
    if r.two_torsion_caveat {
        notes.push(format!(
            "sqrt({p}*) = {} differs from the Gauss sum by e({}); 2-torsion conclusions depend on this convention",
            r.sqrt_p_star, r.gauss_sum_phase
        ));
    }
    Ok(notes)
}

pub fn torsion_output(p: u64, n: u32) -> Result<TorsionOutput> {
    let t = generalized_torsion(p, n)?;
    let mut notes = Vec::new();
    if t.conditional {
        notes.push(format!("assumes J0({p}^{n})(Q)_tors = C({p}^{n})"));
    }
    notes.extend(split_notes(p, n.div_ceil(2).max(1))?);
    Ok(torsion_json(format!("{p}^{n}"), &t, notes))
}

pub fn pq_torsion_output(p: u64, q: u64) -> Result<TorsionOutput> {
    Ok(pq_output(p, q)?.torsion)
}

pub fn pq_output(p: u64, q: u64) -> Result<PqOutput> {
    let a_val = (p - 1) * (q + 1) / 24;
    let b_val = (p + 1) * (q - 1) / 24;
    let c_val = pq_c(p, q);
    let cg = class_group_pq(p, q)?;
    let analysis = pq_analysis(p, q)?;
    let table = pq_leading_coefficients(p, q)?;
    let expected = pq_expected_magnitudes(p, q);
    let leading_coefficients = table
        .iter()
        .zip(&expected)
        .map(|(row, exp)| {
            row.iter()
                .zip(exp)
                .map(|(x, y)| PqEntry {
                    exact: x.to_string(),
                    expected_magnitude: y.to_string(),
                    magnitude_matches: x.same_magnitude(y),
                })
                .collect()
        })
        .collect();
    let levels = pq_cusp_levels(p, q);
    let sigma = levels.iter().map(|&m| pq_sigma(p, q, m).map(|s| s.to_string())).collect::<Result<_>>()?;
    let notes = vec![
        format!("assumes J0({0})(Q)_tors = C({0}) up to 2-torsion", p * q),
        "extension of the kernel by the roots of unity is not resolved; only the order and odd part are determined"
            .into(),
        "leading coefficients are certified up to sign and roots of unity".into(),
    ];
    Ok(PqOutput {
        p,
        q,
        a: a_val,
        b: b_val,
        c: c_val,
        order_matches_4abc: cg.order == (4 * a_val * b_val * c_val).into(),
        class_group: (&cg.group).into(),
        columns: levels.iter().enumerate().map(|(i, l)| format!("P{i} (level {l})")).collect(),
        sigma,
        leading_coefficients,
        delta: matrix_strings(&analysis.delta),
        kernel: (&analysis.kernel).into(),
        generator_order: analysis.generator_order.to_string(),
        generator_in_kernel: analysis.generator_in_kernel,
        torsion: torsion_json(format!("{p}*{q}"), &analysis.torsion, notes),
    })
}
