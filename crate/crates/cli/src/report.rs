//! Serializable report documents. Field order is fixed by declaration and
//! every map is ordered, so reports are byte-identical across runs.

use harmful_rum::{render_rational, GroundSet, Rational};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

/// Renders a rational canonically (`a/b`), or as a rounded decimal with
/// `decimals` places when requested.
pub fn fmt_rational(r: &Rational, decimals: Option<u32>) -> String {
    let Some(k) = decimals else {
        return render_rational(r);
    };
    let scale = BigInt::from(10u32).pow(k);
    let scaled = r * Rational::from_integer(scale.clone());
    let rounded = scaled.round().to_integer(); // half away from zero
    let negative = rounded.is_negative();
    let magnitude = if negative { -rounded } else { rounded };
    let int_part = &magnitude / &scale;
    let frac_part = &magnitude % &scale;
    let sign = if negative { "-" } else { "" };
    if k == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = k as usize
        )
    }
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub items: Vec<String>,
    pub menu_count: usize,
    pub support: Vec<String>,
    pub regular: bool,
}

#[derive(Serialize)]
pub struct CheckLine {
    pub menu: String,
    pub item: String,
    pub rank: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Serialize)]
pub struct WitnessDoc {
    pub order: String,
    pub checks: Vec<CheckLine>,
}

#[derive(Serialize)]
pub struct DetectReport {
    pub harmful: bool,
    pub composing_orders: Vec<String>,
    pub witness: Option<WitnessDoc>,
}

#[derive(Serialize)]
pub struct JustificationDoc {
    pub order: String,
    pub weights: Vec<String>,
}

#[derive(Serialize)]
pub struct ClassDoc {
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

#[derive(Serialize)]
pub struct IdentifyReport {
    pub identification: ClassDoc,
    pub justifications: Vec<JustificationDoc>,
}

#[derive(Serialize)]
pub struct DegreeDoc {
    pub degree: usize,
    pub witness_order: String,
    pub method_agreement: bool,
}

#[derive(Serialize)]
pub struct CorrelationDoc {
    pub order: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct LotteryEntryDoc {
    pub order: String,
    pub weight: String,
}

#[derive(Serialize)]
pub struct RumDoc {
    pub feasible: bool,
    pub witness: Option<Vec<LotteryEntryDoc>>,
}

#[derive(Serialize)]
pub struct ClassifyReport {
    pub harmful: bool,
    pub rum: bool,
    pub correlation_max: Option<CorrelationDoc>,
    pub single_peaked: Option<bool>,
}

#[derive(Serialize)]
pub struct ProbesDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rum: Option<RumDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlation_max: Option<CorrelationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub single_peaked: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub digest: String,
    pub mode: String,
    pub items: Vec<String>,
    pub harmful: bool,
    pub composing_orders: Vec<String>,
    pub justifications: Vec<JustificationDoc>,
    pub identification: ClassDoc,
    pub degree: Option<DegreeDoc>,
    pub probes: ProbesDoc,
}

pub fn labels_of(ground: &GroundSet, items: &[usize]) -> Vec<String> {
    items.iter().map(|&i| ground.label(i).to_owned()).collect()
}

pub fn print_json<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("report serializes"));
}
