//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::report::*;

fn group(g: &GroupJson) -> String {
    if g.invariant_factors.is_empty() {
        "trivial".into()
    } else {
        g.invariant_factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for r in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let line: Vec<String> = (0..cols).map(|j| format!("{:<w$}", r.get(j).map_or("", String::as_str), w = widths[j])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn matrix(m: &[Vec<String>]) -> String {
    let w = m.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for r in m {
        let cells: Vec<String> = r.iter().map(|x| format!("{x:>w$}")).collect();
        let _ = writeln!(out, "  [{}]", cells.join(" "));
    }
    out
}

fn torsion(t: &TorsionOutput) -> String {
    let mut out = String::new();
    let cond = if t.conditional { "conditional" } else { "unconditional" };
    let _ = writeln!(out, "{} ({cond})", group(&t.group));
    let _ = writeln!(out, "level: {}", t.level);
    let _ = writeln!(out, "resolution: {}", t.resolution);
    let _ = writeln!(out, "kernel of delta on C: {}", group(&t.kernel));
    let _ = writeln!(out, "roots of unity part: {}", group(&t.mu_part));
    for n in &t.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    match &report.output {
        Output::Cusps(c) => {
            let _ = writeln!(out, "X0({}): number of cusps {}", c.level, c.cusp_count);
            let rows: Vec<Vec<String>> = c
                .cusps
                .iter()
                .map(|x| {
                    vec![
                        x.level.to_string(),
                        x.degree.to_string(),
                        x.width.to_string(),
                        format!("Q(zeta_{})", x.residue_conductor),
                        flag(x.rational).into(),
                    ]
                })
                .collect();
            let header = ["level", "degree", "width", "field", "rational"].map(String::from);
            out.push_str(&table(&header, &rows));
        }
        Output::EtaCheck(e) => {
            let _ = writeln!(out, "{}", e.expression);
            let _ = writeln!(out, "exponent sum zero: {}", flag(e.exponent_sum_zero));
            let _ = writeln!(out, "product is a square: {}", flag(e.product_is_square));
            let _ = writeln!(out, "order at infinity integral: {}", flag(e.order_at_infinity_integral));
            let _ = writeln!(out, "order at 0 integral: {}", flag(e.order_at_zero_integral));
            let _ = writeln!(out, "modular function: {}", flag(e.modular_function));
        }
        Output::Divisor(d) => {
            let _ = writeln!(out, "div {}", d.expression);
            let rows: Vec<Vec<String>> =
                d.terms.iter().map(|t| vec![t.level.to_string(), t.degree.to_string(), t.multiplicity.clone()]).collect();
            out.push_str(&table(&["level", "degree", "multiplicity"].map(String::from), &rows));
            let _ = writeln!(out, "degree: {}", d.degree);
        }
        Output::ClassGroup(c) => {
            let g = if c.invariant_factors.is_empty() {
                "trivial".to_string()
            } else {
                c.invariant_factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
            };
            let cert = if c.certified { "certified" } else { "uncertified" };
            let _ = writeln!(out, "C({}) = {g} (order {}, {cert})", c.level, c.order);
            if let (Some(cf), Some(m)) = (&c.closed_form, c.matches_closed_form) {
                let _ = writeln!(out, "closed form: {} (match: {})", group(cf), flag(m));
            }
        }
        Output::Matrices(m) => {
            let _ = writeln!(out, "p = {}, n = {}", m.p, m.n);
            let _ = write!(out, "24 M:\n{}U:\n{}V:\n{}", matrix(&m.m24), matrix(&m.u), matrix(&m.v));
            let rows: Vec<Vec<String>> = m
                .claims
                .iter()
                .map(|c| vec![c.claim.clone(), c.computed.clone(), c.expected.clone(), flag(c.holds).into()])
                .collect();
            out.push_str(&table(&["claim", "computed", "expected", "holds"].map(String::from), &rows));
        }
        Output::LeadingCoeffs(t) => {
            let _ = writeln!(out, "p = {}, n = {}, sqrt(p*) = {}", t.p, t.n, t.sqrt_p_star);
            for (c, s) in t.columns.iter().zip(&t.sigma) {
                let _ = writeln!(out, "{c}: sigma = {s}");
            }
            let mut header = vec![String::new()];
            header.extend(t.columns.iter().cloned());
            let rows: Vec<Vec<String>> = t
                .rows
                .iter()
                .zip(&t.entries)
                .map(|(r, es)| {
                    let mut row = vec![r.clone()];
                    row.extend(es.iter().map(|e| {
                        let mark = if e.matches_closed_form { "" } else { " !" };
                        format!("{} [ord {}, res {:.1e}]{mark}", e.exact, e.order, e.numeric_residual)
                    }));
                    row
                })
                .collect();
            out.push_str(&table(&header, &rows));
        }
        Output::Delta(d) => {
            let _ = write!(out, "Delta for p = {}, n = {}:\n{}", d.p, d.n, matrix(&d.delta));
            let _ = writeln!(out, "matches closed form: {}", flag(d.matches_closed_form));
            let _ = writeln!(out, "cokernel: {}", group(&d.cokernel));
            let _ = writeln!(out, "least multiple with integral preimage: {}", d.least_multiple);
            let _ = writeln!(out, "kernel on C: {}", group(&d.kernel_on_cuspidal));
            let _ = writeln!(out, "image of C: {}", group(&d.image_of_cuspidal));
        }
        Output::Torsion(t) => out.push_str(&torsion(t)),
        Output::Pq(r) => {
            let _ = writeln!(out, "p = {}, q = {}: a = {}, b = {}, c = {}", r.p, r.q, r.a, r.b, r.c);
            let _ = writeln!(out, "C(pq) = {} (order 4abc: {})", group(&r.class_group), flag(r.order_matches_4abc));
            for (c, s) in r.columns.iter().zip(&r.sigma) {
                let _ = writeln!(out, "{c}: sigma = {s}");
            }
            let mut header = vec![String::new()];
            header.extend(r.columns.iter().cloned());
            let rows: Vec<Vec<String>> = r
                .leading_coefficients
                .iter()
                .enumerate()
                .map(|(i, es)| {
                    let mut row = vec![format!("f{}", i + 1)];
                    row.extend(es.iter().map(|e| {
                        let mark = if e.magnitude_matches { "" } else { " !" };
                        format!("{}{mark}", e.exact)
                    }));
                    row
                })
                .collect();
            out.push_str(&table(&header, &rows));
            let _ = write!(out, "Delta:\n{}", matrix(&r.delta));
            let _ = writeln!(out, "kernel on C: {}", group(&r.kernel));
            let _ = writeln!(
                out,
                "D1 - D2 - D3 has order {} (in kernel: {})",
                r.generator_order,
                flag(r.generator_in_kernel)
            );
            out.push_str(&torsion(&r.torsion));
        }
        Output::Verify(v) => {
            for s in &v.suites {
                let passed = s.cases.iter().filter(|c| c.passed).count();
                let status = if s.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status} {} ({passed}/{})", s.suite, s.cases.len());
                for c in s.cases.iter().filter(|c| !c.passed) {
                    let _ = writeln!(out, "  FAIL {}: {}", c.case, c.detail);
                }
            }
            let _ = writeln!(out, "{}", if v.passed { "all suites passed" } else { "some suites failed" });
        }
    }
    if let Some(t) = report.timing_ms {
        let _ = writeln!(out, "time: {t:.3} ms");
    }
    out
}
