//! Machine- and human-readable reports.
//!
//! Every result is first turned into a JSON value. JSON output is that value
//! with sorted keys; text output walks the same value, preferring the `text`
//! fields that carry the ring notation (α, x², √-3).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::division::{CandidateDivision, Decomposition, EnumerationResult};
use crate::lab::{MatrixReport, UnitLemmaReport};
use crate::refine::{CertifiedValue, RefinementCheck, RefinementTable};
use crate::ring::{Domain, Element, Window};
use crate::search::{Candidate, Rejection, SearchReport};
use crate::verdict::{paren, PropertyReport, Verdict, Witness};

pub const SCHEMA: &str = "euclid-lab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    /// The invocation: subcommand, domain, function, window and operands.
    pub command: Value,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
}

impl Report {
    pub fn new(command: Value, result: Value) -> Report {
        Report {
            schema: SCHEMA.to_string(),
            command,
            result,
            timing: None,
        }
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            // serde_json maps are ordered by key, so this is stable
            let mut s = serde_json::to_string_pretty(report).expect("reports are plain JSON");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            let cmd = report
                .command
                .get("command")
                .and_then(Value::as_str)
                .unwrap_or("report");
            let _ = writeln!(out, "{cmd}");
            if let Value::Object(m) = &report.command {
                for (k, v) in m.iter().filter(|(k, _)| *k != "command") {
                    let _ = writeln!(out, "  {k}: {}", scalar(v));
                }
            }
            match &report.result {
                Value::Object(m) if m.contains_key("text") => {
                    // top level: the summary line, then the remaining fields
                    let _ = writeln!(out, "{}", scalar(&m["text"]));
                    let mut rest = m.clone();
                    rest.remove("text");
                    render(&mut out, &Value::Object(rest), 0);
                }
                other => render(&mut out, other, 0),
            }
            if let Some(t) = &report.timing {
                let _ = writeln!(out, "timing: {}", scalar(t));
            }
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            if let Some(Value::String(t)) = m.get("text") {
                let _ = writeln!(out, "{pad}{t}");
                return;
            }
            for (k, x) in m {
                match x {
                    Value::Object(inner) if inner.get("text").is_some_and(Value::is_string) => {
                        let _ = writeln!(out, "{pad}{k}: {}", inner["text"].as_str().unwrap());
                    }
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render(out, x, depth + 1);
                    }
                    Value::Array(a) if a.iter().any(|y| y.is_object() || y.is_array()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        for y in a {
                            let mut item = String::new();
                            render(&mut item, y, 0);
                            for (i, line) in item.lines().enumerate() {
                                let bullet = if i == 0 { "- " } else { "  " };
                                let _ = writeln!(out, "{pad}  {bullet}{line}");
                            }
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}

pub fn element(e: &Element) -> Value {
    Value::String(e.to_syntax())
}

pub fn domain(d: Domain) -> Value {
    Value::String(d.to_string())
}

pub fn window(w: Window) -> Value {
    Value::String(w.to_string())
}

/// `a = q·b + r` in the ring's notation.
pub fn division_text(a: &Element, b: &Element, q: &Element, r: &Element) -> String {
    format!("{a} = {}·{} + {}", paren(q), paren(b), paren(r))
}

pub fn division(d: &CandidateDivision) -> Value {
    json!({
        "q": element(&d.q),
        "r": element(&d.r),
        "valid": d.valid,
        "text": division_text(&d.a, &d.b, &d.q, &d.r),
    })
}

pub fn enumeration(res: &EnumerationResult) -> Value {
    json!({
        "count": res.divisions.len(),
        "complete": res.complete,
        "skipped": res.skipped,
        "divisions": res.divisions.iter().map(division).collect::<Vec<_>>(),
    })
}

pub fn decomposition(d: &Decomposition) -> Value {
    let terms: Vec<String> = d
        .coefficients
        .iter()
        .enumerate()
        .rev()
        .map(|(i, c)| match i {
            0 => paren(c),
            1 => format!("{}·{}", paren(c), paren(&d.base)),
            _ => format!("{}·{}^{i}", paren(c), paren(&d.base)),
        })
        .collect();
    json!({
        "base": element(&d.base),
        "coefficients": d.coefficients.iter().map(element).collect::<Vec<_>>(),
        "reconstruction": element(&d.reconstruct()),
        "expansion": terms.join(" + "),
    })
}

pub fn witness(w: &Witness) -> Value {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    match w {
        Witness::Strongly {
            a,
            b,
            product,
            f_a,
            f_product,
        } => {
            put("kind", "strongly".into());
            put("a", element(a));
            put("b", element(b));
            put("product", element(product));
            put("f_a", f_a.get().into());
            put("f_product", f_product.get().into());
        }
        Witness::Ultra {
            a,
            b,
            sum,
            f_a,
            f_b,
            f_sum,
        } => {
            put("kind", "ultra".into());
            put("a", element(a));
            put("b", element(b));
            put("sum", element(sum));
            put("f_a", f_a.get().into());
            put("f_b", f_b.get().into());
            put("f_sum", f_sum.get().into());
        }
        Witness::NoDivision { a, b } => {
            put("kind", "no_division".into());
            put("a", element(a));
            put("b", element(b));
        }
        Witness::Divisions { a, b, divisions } => {
            put("kind", "divisions".into());
            put("a", element(a));
            put("b", element(b));
            let ds = divisions
                .iter()
                .map(|(q, r)| json!({"q": element(q), "r": element(r)}))
                .collect::<Vec<_>>();
            put("divisions", Value::Array(ds));
        }
        Witness::UnitEquality {
            a,
            b,
            f_a,
            f_product,
            b_is_unit,
        } => {
            put("kind", "unit_equality".into());
            put("a", element(a));
            put("b", element(b));
            put("f_a", f_a.get().into());
            put("f_product", f_product.get().into());
            put("b_is_unit", (*b_is_unit).into());
        }
        Witness::MinAtUnits {
            element: e,
            value,
            min,
            is_unit,
        } => {
            put("kind", "min_at_units".into());
            put("element", element(e));
            put("value", value.get().into());
            put("min", min.get().into());
            put("is_unit", (*is_unit).into());
        }
        Witness::UnitSum { u, v, sum } => {
            put("kind", "unit_sum".into());
            put("u", element(u));
            put("v", element(v));
            put("sum", element(sum));
        }
    }
    put("text", w.to_string().into());
    Value::Object(m)
}

pub fn verdict_witnesses(v: &Verdict) -> Value {
    Value::Array(v.witnesses().iter().map(witness).collect())
}

pub fn property_report(r: &PropertyReport) -> Value {
    json!({
        "property": r.property.name(),
        "function": r.function,
        "window": window(r.window),
        "verdict": r.verdict.name(),
        "witnesses": verdict_witnesses(&r.verdict),
        "pairs_checked": r.pairs_checked,
        "pairs_skipped": r.pairs_skipped,
    })
}

pub fn unit_lemmas(r: &UnitLemmaReport) -> Value {
    json!({
        "strongly": property_report(&r.strongly),
        "unit_equality": property_report(&r.unit_equality),
        "min_at_units": property_report(&r.min_at_units),
        "min_value": r.min_value.map(|v| v.get()),
    })
}

pub fn matrix(m: &MatrixReport) -> Value {
    let names = |ps: &[crate::verdict::Property]| ps.iter().map(|p| p.name()).collect::<Vec<_>>();
    json!({
        "euclidean": m.euclidean.verdict.name(),
        "strongly": m.strongly.verdict.name(),
        "ultra": m.ultra.verdict.name(),
        "uniquely": m.uniquely.verdict.name(),
        "status": m.status.name(),
        "explained_by": names(&m.explained_by),
        "inconclusive": names(&m.inconclusive),
        "contradictions": m.contradictions,
        "details": {
            "euclidean": property_report(&m.euclidean),
            "strongly": property_report(&m.strongly),
            "ultra": property_report(&m.ultra),
            "uniquely": property_report(&m.uniquely),
        },
    })
}

pub fn certified(v: &CertifiedValue) -> Value {
    json!({
        "value": v.value.get(),
        "certainty": v.certainty.name(),
        "reason": v.reason.name(),
    })
}

pub fn refinement_table(t: &RefinementTable) -> Value {
    Value::Array(
        t.entries
            .iter()
            .map(|(a, v)| {
                let mut o = certified(v);
                o["element"] = element(a);
                o
            })
            .collect(),
    )
}

pub fn refinement_check(c: &RefinementCheck) -> Value {
    json!({
        "all_exact": c.table.all_exact(),
        "values": refinement_table(&c.table),
        "refinement_strongly": property_report(&c.strongly),
        "refinement_ultra": property_report(&c.ultra),
        "function_strongly": property_report(&c.f_strongly),
        "fixed_point_on_window": c.fixed_point_on_window(),
        "first_difference": c.first_difference.as_ref().map(|(a, ft, fa)| json!({
            "element": element(a),
            "refined": ft.get(),
            "original": fa.get(),
            "text": format!("f̃({a}) = {ft} < f({a}) = {fa}"),
        })),
        "consistent": c.consistent,
    })
}

fn candidate(c: &Candidate) -> Value {
    json!({
        "index": c.index,
        "function": c.function.to_string(),
        "ultra": c.ultra.name(),
        "strongly": c.strongly.name(),
        "strongly_witness": c.strongly.first_witness().map(witness),
        "refinement_ultra": c.refinement_ultra.name(),
        "refinement_ultra_witness": c.refinement_ultra.first_witness().map(witness),
        "refinement_exact": c.refinement_exact,
        "refinement_pairs_skipped": c.refinement_pairs_skipped,
    })
}

fn rejection(r: &Rejection) -> Value {
    json!({
        "index": r.index,
        "function": r.function.to_string(),
        "stage": r.stage.name(),
        "witness": r.witness.as_ref().map(witness),
    })
}

/// Per-function rejections are listed only when asked for; campaigns
/// report counts by stage.
pub fn search(r: &SearchReport, with_rejections: bool) -> Value {
    let mut v = json!({
        "domain": domain(r.domain),
        "window": window(r.window),
        "functions_examined": r.functions_examined,
        "rejected_by_stage": r.rejection_counts(),
        "stage_two": r.stage_two.iter().map(candidate).collect::<Vec<_>>(),
        "candidates": r.candidates.iter().map(candidate).collect::<Vec<_>>(),
    });
    if with_rejections {
        v["rejections"] = r.rejections.iter().map(rejection).collect();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::EuclideanFn;
    use crate::lab::{theorem_matrix, CheckOptions};

    #[test]
    fn json_round_trip_and_key_order() {
        let m = theorem_matrix(
            &EuclideanFn::AbsValue,
            Domain::integers(),
            Window::Magnitude(10),
            CheckOptions::default(),
        )
        .unwrap();
        let r = Report::new(json!({"command": "matrix", "domain": "Z"}), matrix(&m));
        let s = emit_report(&r, Format::Json);
        assert!(s.ends_with("}\n"));
        let back: Report = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.result["strongly"], "no_violation_found");
        assert_eq!(back.result["ultra"], "violated");
        assert!(s.find("\"command\"").unwrap() < s.find("\"result\"").unwrap());
        assert_eq!(emit_report(&r, Format::Json), s);
    }

    #[test]
    fn text_uses_ring_notation() {
        let f4 = Domain::field(4).unwrap();
        let f = EuclideanFn::field_table(f4, &[0, 1, 1]).unwrap();
        let m = theorem_matrix(&f, f4, Window::WholeField, CheckOptions::default()).unwrap();
        let r = Report::new(json!({"command": "matrix"}), matrix(&m));
        let text = emit_report(&r, Format::Text);
        assert!(
            text.contains("1 ÷ α has 2 valid divisions: 1 = β·α + 0; 1 = 0·α + 1;"),
            "{text}"
        );
    }
}
