//! Serializable reports. Exact values are strings; the only floats are
//! numeric residuals (rounded to 12 significant digits) and timings.

use std::collections::BTreeMap;

use modunits_core::{AbelianGroup, Integer};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    #[serde(flatten)]
    pub output: Output,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Output {
    Cusps(CuspsOutput),
    EtaCheck(EtaCheckOutput),
    Divisor(DivisorOutput),
    ClassGroup(ClassGroupOutput),
    Matrices(MatricesOutput),
    LeadingCoeffs(LeadingCoeffsOutput),
    Delta(DeltaOutput),
    Torsion(TorsionOutput),
    Pq(PqOutput),
    Verify(VerifyOutput),
}

/// A finite abelian group as its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub invariant_factors: Vec<String>,
    pub order: String,
}

impl From<&AbelianGroup> for GroupJson {
    fn from(g: &AbelianGroup) -> Self {
        GroupJson {
            invariant_factors: g.invariant_factors().iter().map(Integer::to_string).collect(),
            order: g.order().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspJson {
    pub level: u64,
    pub degree: u64,
    pub width: u64,
    pub residue_conductor: u64,
    pub rational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspsOutput {
    pub level: u64,
    pub cusp_count: u64,
    pub cusps: Vec<CuspJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaCheckOutput {
    pub expression: String,
    pub exponent_sum_zero: bool,
    pub product_is_square: bool,
    pub order_at_infinity_integral: bool,
    pub order_at_zero_integral: bool,
    pub modular_function: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub level: u64,
    pub degree: u64,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorOutput {
    pub expression: String,
    pub terms: Vec<DivisorTerm>,
    pub degree: String,
}

/// `invariant_factors` are JSON integers here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupOutput {
    pub level: u64,
    pub invariant_factors: Vec<u64>,
    pub order: String,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matches_closed_form: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatricesOutput {
    pub p: u64,
    pub n: u32,
    /// `24 M`.
    pub m24: Vec<Vec<String>>,
    pub u: Vec<Vec<String>>,
    pub v: Vec<Vec<String>>,
    pub claims: Vec<ClaimCheck>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub exact: String,
    pub order: String,
    pub matches_closed_form: bool,
    pub numeric_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeadingCoeffsOutput {
    pub p: u64,
    pub n: u32,
    pub sqrt_p_star: String,
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    pub sigma: Vec<String>,
    pub entries: Vec<Vec<TableEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaOutput {
    pub p: u64,
    pub n: u32,
    pub delta: Vec<Vec<String>>,
    pub matches_closed_form: bool,
    pub cokernel: GroupJson,
    pub least_multiple: u64,
    pub kernel_on_cuspidal: GroupJson,
    pub image_of_cuspidal: GroupJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionOutput {
    pub level: String,
    pub group: GroupJson,
    pub conditional: bool,
    pub resolution: String,
    pub kernel: GroupJson,
    pub mu_part: GroupJson,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqEntry {
    pub exact: String,
    pub expected_magnitude: String,
    pub magnitude_matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqOutput {
    pub p: u64,
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub class_group: GroupJson,
    pub order_matches_4abc: bool,
    pub columns: Vec<String>,
    pub sigma: Vec<String>,
    pub leading_coefficients: Vec<Vec<PqEntry>>,
    pub delta: Vec<Vec<String>>,
    pub kernel: GroupJson,
    pub generator_order: String,
    pub generator_in_kernel: bool,
    pub torsion: TorsionOutput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub passed: bool,
    pub cases: Vec<CaseResult>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}
