use std::fmt::Display;

use serde::Serialize;
use serde_json::Value;

use tanglekit::coloring::{self, ColorMatrix};
use tanglekit::tangle::{self, CanonicalTangle};
use tanglekit::{print_tangle, TangleExpr};

/// Everything the engine knows about one expression.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub expr: String,
    pub fraction: Option<String>,
    pub rational: bool,
    pub canonical: Option<CanonicalTangle>,
    pub crossings: Option<Value>,
    pub color_matrix: Option<ColorMatrix>,
    pub det: Option<Value>,
}

/// Integer as a plain JSON number of any size.
pub fn int_json(n: impl Display) -> Value {
    Value::Number(n.to_string().parse().expect("integer literal"))
}

pub fn analyze(t: &TangleExpr) -> AnalysisReport {
    let expr = print_tangle(t);
    let fraction = tangle::fraction_of(t).ok();
    let canonical = tangle::canonical_form(t).ok();
    let mut report = AnalysisReport {
        expr,
        fraction: fraction.as_ref().map(ToString::to_string),
        rational: canonical.is_some(),
        canonical: None,
        crossings: None,
        color_matrix: None,
        det: None,
    };
    let Some(canonical) = canonical else {
        return report;
    };
    match &canonical {
        CanonicalTangle::Infinity => {
            report.crossings = Some(int_json(0));
            report.det = Some(int_json(1));
        }
        CanonicalTangle::Vector(v) => {
            let colored = coloring::color_tangle(v, 1, 0).expect("canonical vectors color");
            let det = coloring::closure_determinant(&colored).expect("unit start colors");
            report.crossings = Some(int_json(v.weight()));
            report.det = Some(int_json(det));
            report.color_matrix = Some(colored.matrix);
        }
    }
    report.canonical = Some(canonical);
    report
}
