use modunits_cli::report::{Output, Report};
use modunits_cli::{run_with, SUITES};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("modunits").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Report {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn torsion_at_level_5_is_unconditional_z2() {
    let (code, out, _) = run(&["torsion", "--p", "5", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("Z/2 (unconditional)"));
}

#[test]
fn class_group_json_for_level_11() {
    let (code, out, _) = run(&["class-group", "--p", "11", "--n", "1", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["invariant_factors"], serde_json::json!([5]));
    assert_eq!(v["order"], "5");
    assert_eq!(v["certified"], true);
}

#[test]
fn level_one_has_one_cusp() {
    let r = json(&["cusps", "1"]);
    let Output::Cusps(c) = r.output else { panic!("wrong kind") };
    assert_eq!(c.cusp_count, 1);
    assert_eq!(c.cusps.len(), 1);
    assert_eq!(c.cusps[0].level, 1);
}

#[test]
fn small_primes_are_rejected() {
    for p in ["2", "3"] {
        for cmd in [&["class-group", "--p", p, "--n", "1"][..], &["torsion", "--p", p, "--n", "2"], &["delta", "--p", p, "--n", "1"]] {
            let (code, out, err) = run(cmd);
            assert_eq!(code, 2, "{cmd:?}");
            assert!(out.is_empty());
            assert!(err.contains("p >= 5"), "{err}");
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["eta-check", "eta(5)^6/eta(1)^6", "--level", "5"]).0, 2);
    assert_eq!(run(&["divisor", "eta(7)^2", "--level", "5"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "nope"]).0, 2);
    assert_eq!(run(&["torsion", "--pq", "13"]).0, 2);
    assert_eq!(run(&["pq", "5", "13"]).0, 2);
    assert_eq!(run(&["cusps", "0"]).0, 2);
}

#[test]
fn help_exits_0() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("class-group"));
}

fn sample_commands() -> Vec<Vec<&'static str>> {
    vec![
        vec!["cusps", "60"],
        vec!["eta-check", "eta(5)^6 * eta(1)^-6", "--level", "5"],
        vec!["divisor", "eta(1)^-2 * eta(49)^2", "--level", "49"],
        vec!["class-group", "--p", "7", "--n", "3"],
        vec!["class-group", "--N", "35"],
        vec!["matrices", "--p", "13", "--n", "4"],
        vec!["leading-coeffs", "--p", "5", "--n", "3"],
        vec!["delta", "--p", "7", "--n", "4"],
        vec!["torsion", "--p", "11", "--n", "3"],
        vec!["torsion", "--pq", "13", "37"],
        vec!["pq", "13", "61"],
        vec!["verify", "--suite", "delta"],
    ]
}

#[test]
fn json_round_trips() {
    for cmd in sample_commands() {
        let mut full = vec!["--json"];
        full.extend(&cmd);
        let (_, out, _) = run(&full);
        let r: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(modunits_cli::to_json(&r), out, "{cmd:?}");
        let again: Report = serde_json::from_str(&modunits_cli::to_json(&r)).unwrap();
        assert_eq!(again, r);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for cmd in sample_commands() {
        for json in [false, true] {
            let mut full = if json { vec!["--json"] } else { vec![] };
            full.extend(&cmd);
            let first = run(&full);
            let second = run(&full);
            assert_eq!(first, second, "{full:?}");
        }
    }
}

#[test]
fn timing_only_when_requested() {
    assert!(json(&["cusps", "5"]).timing_ms.is_none());
    assert!(json(&["--timing", "cusps", "5"]).timing_ms.is_some());
}

#[test]
fn tables_are_strings_in_canonical_form() {
    let r = json(&["leading-coeffs", "--p", "13", "--n", "2"]);
    let Output::LeadingCoeffs(t) = r.output else { panic!("wrong kind") };
    assert_eq!(t.sqrt_p_star, "e(1/2)*13^(1/2)");
    assert_eq!(t.rows, ["f", "g_0"]);
    assert_eq!(t.columns.len(), 3);
    for e in t.entries.iter().flatten() {
        assert!(e.numeric_residual < 1e-8);
    }
}

#[test]
fn pq_reports_the_kernel() {
    let r = json(&["pq", "13", "37"]);
    let Output::Pq(p) = r.output else { panic!("wrong kind") };
    assert_eq!(p.c, 18);
    assert_eq!(p.kernel.invariant_factors, ["18"]);
    assert!(p.order_matches_4abc && p.generator_in_kernel);
    assert_eq!(p.torsion.resolution, "up to 2-torsion");
}

#[test]
fn every_verify_suite_passes() {
    for suite in SUITES {
        let (code, out, err) = run(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
        assert!(out.starts_with(&format!("PASS {suite}")), "{out}");
    }
}
