//! Output formats for series.

use clap::ValueEnum;
use cosetq::{ExactRational, QSeries};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
    Latex,
}

fn exponent_text(e: &ExactRational) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

fn latex_exponent(e: &ExactRational) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        let sign = if e.numer().sign() == num_bigint::Sign::Minus { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", e.numer().magnitude(), e.denom())
    }
}

/// `1 + q^{2} + 2q^{4} + O(q^{7})`.
pub fn latex(s: &QSeries) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if e == ExactRational::from_integer(0.into()) {
            out.push_str(&mag);
            continue;
        }
        if mag != "1" {
            out.push_str(&mag);
        }
        if e == ExactRational::from_integer(1.into()) {
            out.push('q');
        } else {
            out.push_str(&format!("q^{{{}}}", latex_exponent(&e)));
        }
    }
    match s.validity_bound() {
        Some(b) => {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            out.push_str(&format!("O(q^{{{}}})", latex_exponent(&b)));
        }
        None if out.is_empty() => out.push('0'),
        None => {}
    }
    out
}

fn csv_rows(s: &QSeries, name: Option<&str>) -> Vec<String> {
    let lead = |x: String| match name {
        Some(n) => format!("{n},{x}"),
        None => x,
    };
    let mut rows: Vec<String> = s
        .terms()
        .map(|(e, c)| lead(format!("{},{}", exponent_text(&e), c)))
        .collect();
    let bound = s.validity_bound().map_or("inf".to_string(), |b| exponent_text(&b));
    rows.push(lead(format!("order,{bound}")));
    rows
}

pub fn series(s: &QSeries, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Plain => s.to_string(),
        OutputFormat::Json => s.to_json_string(),
        OutputFormat::Latex => latex(s),
        OutputFormat::Csv => {
            let mut rows = vec!["exponent,coefficient".to_string()];
            rows.extend(csv_rows(s, None));
            rows.join("\n")
        }
    }
}

/// Several labelled series, e.g. one per method.
pub fn named(items: &[(&str, &QSeries)], fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => {
            let mut map = serde_json::Map::new();
            for (name, s) in items {
                map.insert(name.to_string(), serde_json::to_value(s.to_json()).expect("series JSON"));
            }
            serde_json::Value::Object(map).to_string()
        }
        OutputFormat::Csv => {
            let mut rows = vec!["name,exponent,coefficient".to_string()];
            for (name, s) in items {
                rows.extend(csv_rows(s, Some(name)));
            }
            rows.join("\n")
        }
        OutputFormat::Plain | OutputFormat::Latex => items
            .iter()
            .map(|(name, s)| format!("{name}: {}", series(s, fmt)))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}
